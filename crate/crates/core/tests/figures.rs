//! The worked examples: a doubly rooted tree with thirteen edges, its labels,
//! its leaf-colored variant, and a chain of three vertices.

use butterfly_core::bijections::*;
use butterfly_core::lattice_paths::{decompose, flaw_blocks, flaws, LatticePath};
use butterfly_core::trees::{
    distinguish_by_label, rl_preorder, Chain, DoublyRootedTree, KColoredTree, LeafColoredTree,
    PlaneTree, VertexId,
};

const TREE: &str = "(())((()(()))(()))(()())()";

fn tree() -> PlaneTree {
    TREE.parse().unwrap()
}

fn v(s: &str) -> VertexId {
    s.parse().unwrap()
}

fn p(s: &str) -> LatticePath {
    s.parse().unwrap()
}

fn worked_drt() -> DoublyRootedTree {
    DoublyRootedTree::new(tree(), v("1/0")).unwrap()
}

#[test]
fn worked_tree_decomposes_into_two_butterflies() {
    let d = butterfly_decompose(&worked_drt());
    let pieces: Vec<(String, String)> = d
        .butterflies
        .iter()
        .map(|b| (b.left.to_parens(), b.right.to_parens()))
        .collect();
    assert_eq!(
        pieces,
        vec![
            ("(())".to_string(), "(()())()".to_string()),
            (String::new(), "(())".to_string()),
        ]
    );
    assert_eq!(d.tail.to_parens(), "()(())");
    assert_eq!(butterfly_compose(&d), worked_drt());
}

#[test]
fn worked_tree_maps_to_free_dyck_path() {
    let path = drt_to_free_dyck(&worked_drt());
    assert_eq!(path, p("UUDDDDDUDUUDUUDDDUUUUDUUDD"));
    assert_eq!(flaws(&path).unwrap(), 8);
    assert_eq!(flaw_blocks(&path).unwrap(), 2);
    assert_eq!(free_dyck_to_drt(&path).unwrap(), worked_drt());
    assert_eq!(stem_size(&worked_drt()), 2);
}

#[test]
fn right_to_left_labels() {
    let expected = [
        "ε", "3", "2", "2/1", "2/0", "1", "1/1", "1/1/0", "1/0", "1/0/1", "1/0/1/0", "1/0/0", "0",
        "0/0",
    ];
    let order = rl_preorder(&tree());
    let got: Vec<String> = order.iter().map(|x| x.to_string()).collect();
    assert_eq!(got, expected);
}

#[test]
fn prefix_edges_of_the_labelled_tree() {
    assert_eq!(prefix_edge_count(&worked_drt()), 8);
    assert_eq!(prefix_edge_count_by_label(&worked_drt()), 8);
    for m in 0..=13 {
        let drt = distinguish_by_label(&tree(), m).unwrap();
        assert_eq!(prefix_edge_count(&drt), m);
        assert_eq!(flaws(&drt_to_free_dyck(&drt)).unwrap(), m);
    }
    assert_eq!(distinguish_by_label(&tree(), 8).unwrap(), worked_drt());
    assert!(distinguish_by_label(&tree(), 14).is_err());
}

#[test]
fn leaf_colored_worked_tree() {
    let lc: LeafColoredTree = format!("{TREE};BBRBBRB;1/0").parse().unwrap();
    let path = leafcolored_drt_to_free_schroder(&lc).unwrap();
    assert_eq!(path, p("UHDDDHDUUHUDDHUUHUUDD"));
    assert_eq!(free_schroder_to_leafcolored_drt(&path).unwrap(), lc);
    // The flaws are still the eight prefix edges.
    assert_eq!(decompose(&path).unwrap().flaws(), 8);
}

#[test]
fn chain_of_three_vertices() {
    let v4 = "(((()())())(()(()))(()))";
    let v3 = format!("({v4})");
    let v2 = format!("((()){v3})");
    let tree = format!("(){v2}");
    let chain: Chain = format!("{tree};1,1/1/0,1/1/0/1").parse().unwrap();
    assert_eq!(chain.size(), 3);

    let colored = chain_to_tricolored(&chain);
    let children: Vec<String> = colored
        .tree()
        .children()
        .iter()
        .map(|c| PlaneTree::from_children(vec![c.clone()]).to_parens())
        .collect();
    assert_eq!(
        children,
        vec![
            "()",
            "()",
            "(())",
            "()",
            "()",
            "((()())())",
            "((()))",
            "()",
            "(())"
        ]
    );
    assert_eq!(colored.root_child_colors(), &[2, 0, 2, 1, 0, 2, 1, 2, 2]);
    assert_eq!(colored.edge_count(), chain.tree().edge_count());
    assert_eq!(tricolored_to_chain(&colored).unwrap(), chain);

    let parsed = KColoredTree::parse(&colored.to_string(), 3).unwrap();
    assert_eq!(parsed, colored);
}
