use butterfly_core::bijections::*;
use butterfly_core::lattice_paths::{
    classify, decompose, enumerate_paths, Alphabet, Constraint, PathTag, SegmentKind, Step,
};
use butterfly_core::trees::{
    enumerate_colored_chains, enumerate_doubly_rooted, enumerate_kcolored, enumerate_leaf_colored,
    enumerate_leaf_colored_doubly_rooted, BLACK, RED, WHITE,
};
use butterfly_core::verify::{verify_bijection_with_palette, BijectionName};
use butterfly_core::Limits;

#[test]
fn direct_bicolored_map_is_the_path_route_with_colors_swapped() {
    for n in 0..=6 {
        for drt in enumerate_doubly_rooted(n).unwrap() {
            let via_path = free_dyck_to_bicolored(&drt_to_free_dyck(&drt)).unwrap();
            assert_eq!(drt_to_bicolored(&drt), complement_bicolored(&via_path));
        }
    }
}

#[test]
fn white_children_count_the_stem() {
    for n in 0..=6 {
        for drt in enumerate_doubly_rooted(n).unwrap() {
            let colored = drt_to_bicolored(&drt);
            assert_eq!(colored.count_color(WHITE), stem_size(&drt));
        }
    }
}

#[test]
fn black_children_are_the_negative_segments() {
    for n in 0..=6 {
        for t in enumerate_kcolored(n, 2).unwrap() {
            let path = bicolored_to_free_dyck(&t).unwrap();
            let negative = decompose(&path)
                .unwrap()
                .segments()
                .iter()
                .filter(|s| s.kind == SegmentKind::Negative)
                .count();
            assert_eq!(negative, t.count_color(BLACK));
        }
    }
}

#[test]
fn glove_image_is_nonnegative() {
    for drt in enumerate_doubly_rooted(5).unwrap() {
        let path = glove_tree_to_dyck(drt.tree());
        assert!(classify(&path).contains(&PathTag::Dyck));
        assert_eq!(glove_dyck_to_tree(&path).unwrap(), *drt.tree());
    }
}

#[test]
fn leaf_colors_become_peaks_and_level_steps() {
    for n in 1..=5 {
        for t in enumerate_leaf_colored(n).unwrap() {
            let path = leafcolored_to_schroder(&t).unwrap();
            let blue = t
                .color_sequence()
                .iter()
                .filter(|c| c.symbol() == 'B')
                .count();
            assert_eq!(path.count(Step::Horiz), blue);
            assert_eq!(path.count(Step::Up), n - blue);
            assert!(path.is_nonnegative());
        }
    }
}

#[test]
fn leaf_colored_doubly_rooted_images_are_free_schroder_paths() {
    for n in 0..=5 {
        for t in enumerate_leaf_colored_doubly_rooted(n).unwrap() {
            let path = leafcolored_drt_to_free_schroder(&t).unwrap();
            assert!(path.is_free());
            assert_eq!(path.semilength(), n);
            let drt = t.doubly_rooted().unwrap();
            assert_eq!(decompose(&path).unwrap().flaw_blocks(), stem_size(&drt));
        }
    }
}

#[test]
fn label_image_has_requested_flaws() {
    for n in 1..=4 {
        for t in enumerate_leaf_colored(n).unwrap() {
            for m in 0..=n {
                let path = leafcolored_label_image(&t, m).unwrap();
                assert_eq!(decompose(&path).unwrap().flaws(), m);
            }
        }
    }
}

#[test]
fn chain_size_is_white_count_plus_one() {
    for n in 0..=5 {
        for t in enumerate_kcolored(n, 3).unwrap() {
            let chain = tricolored_to_chain(&t).unwrap();
            assert_eq!(chain.size(), t.count_color(WHITE) + 1);
            if chain.deepest().is_root() {
                assert_eq!(t.count_color(RED), t.tree().children().len());
            }
        }
    }
}

#[test]
fn colored_chains_for_several_palettes() {
    let limits = Limits::default();
    for palette in 1..=3 {
        for n in 0..=4 {
            let report = verify_bijection_with_palette(
                BijectionName::ColoredChainKcolored,
                n,
                palette,
                &limits,
            )
            .unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }
}

#[test]
fn colored_chain_colors_shift_by_one() {
    for c in enumerate_colored_chains(3, 2).unwrap() {
        let k = colored_chain_to_kcolored(&c);
        assert_eq!(k.k(), 4);
        let colored_members = c.chain().size() - 1;
        let middle: usize = (1..=2).map(|color| k.count_color(color)).sum();
        assert_eq!(middle, colored_members);
        for (v, color) in c
            .chain()
            .members()
            .iter()
            .filter_map(|v| c.color(v).map(|x| (v, x)))
        {
            assert!(color < 2, "{v}");
        }
    }
}

#[test]
fn schroder_words_without_horizontal_steps_are_dyck_words() {
    for path in enumerate_paths(Alphabet::Schroder, 4, Constraint::NonNegative).unwrap() {
        let t = schroder_to_leafcolored(&path).unwrap();
        if !path.has_horiz() {
            assert!(t.color_sequence().iter().all(|c| c.symbol() == 'R'));
            assert_eq!(glove_tree_to_dyck(t.tree()), path);
        }
    }
}
