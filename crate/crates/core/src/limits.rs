use crate::error::{ButterflyError, Result};

/// Caps on the size of exhaustive enumerations.
///
/// Plain tree streams grow like the Catalan numbers; path-sized domains
/// (free paths, doubly rooted and leaf-colored trees) grow like the central
/// binomial coefficients or faster; chain domains grow like `(9/2)^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_tree_edges: usize,
    pub max_path_semilength: usize,
    pub max_chain_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tree_edges: 14,
            max_path_semilength: 10,
            max_chain_edges: 8,
        }
    }
}

impl Limits {
    /// The same cap for every domain.
    pub fn uniform(max: usize) -> Self {
        Limits {
            max_tree_edges: max,
            max_path_semilength: max,
            max_chain_edges: max,
        }
    }

    pub fn check_trees(&self, n: usize) -> Result<()> {
        check(n, self.max_tree_edges)
    }

    pub fn check_paths(&self, n: usize) -> Result<()> {
        check(n, self.max_path_semilength)
    }

    pub fn check_chains(&self, n: usize) -> Result<()> {
        check(n, self.max_chain_edges)
    }
}

fn check(requested: usize, max: usize) -> Result<()> {
    if requested > max {
        Err(ButterflyError::Capacity { requested, max })
    } else {
        Ok(())
    }
}
