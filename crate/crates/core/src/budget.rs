//! Resource limits shared by the expensive operations.

use crate::groebner::GbLimits;

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub gb: GbLimits,
    /// Maximum number of projective points enumerated in one scan.
    pub enumeration: u64,
    /// Largest extension degree used by point searches.
    pub extension_bound: u32,
    /// Maximum candidate tuples tried when solving zero-dimensional systems.
    pub candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { gb: GbLimits::default(), enumeration: 2_000_000, extension_bound: 3, candidates: 1_000_000 }
    }
}
