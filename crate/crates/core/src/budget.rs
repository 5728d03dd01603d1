use serde::{Deserialize, Serialize};

/// Size limits applied while materialising rings, ideals, generator lists and
/// closures. Exceeding a closure budget is reported, never fatal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub ring: usize,
    pub ideal: usize,
    pub generators: usize,
    pub closure: usize,
    /// Candidate count for brute-force congruence subgroup enumeration.
    pub enumerate: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            ring: 1 << 20,
            ideal: 1 << 20,
            generators: 1 << 16,
            closure: 1 << 21,
            enumerate: 1 << 20,
        }
    }
}
