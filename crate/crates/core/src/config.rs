//! Search caps and engine options.

/// Environment variable overriding [`Caps::group_order`].
pub const CAP_ENV: &str = "EXTISO_CAP";

/// Limits on exhaustive searches. Exceeding one yields `CapExceeded`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order for which automorphism enumeration and brute-force
    /// isomorphism search are attempted.
    pub group_order: usize,
    /// Largest number of automorphisms collected by one enumeration.
    pub aut_count: usize,
    /// Largest number of candidate matrices scanned for `Aut(A)`.
    pub abelian_aut_candidates: u128,
    /// Largest `p^dim V` scanned by the cyclicity test.
    pub cyclicity: u128,
    /// Largest number of search nodes in code equivalence.
    pub code_nodes: u128,
    /// Largest number of elements enumerated from a permutation coset.
    pub coset_elements: usize,
    /// Largest group order cross-checked against brute force.
    pub oracle_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            group_order: 4000,
            aut_count: 500_000,
            abelian_aut_candidates: 1 << 24,
            cyclicity: 1_000_000,
            code_nodes: 10_000_000,
            coset_elements: 1_000_000,
            oracle_order: 400,
        }
    }
}

impl Caps {
    /// Defaults, with `group_order` replaced by `EXTISO_CAP` when it parses.
    pub fn from_env() -> Self {
        let mut caps = Self::default();
        if let Some(n) = std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            caps.group_order = n;
        }
        caps
    }
}

/// Options for the isomorphism engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub caps: Caps,
    /// Loop over automorphisms of the quotient modulo inner automorphisms.
    /// Inner automorphisms act trivially on second cohomology with trivial
    /// action, so the verdicts are unchanged.
    pub reduce_inner: bool,
    /// Cross-check every verdict against brute force when the order is at
    /// most `caps.oracle_order`.
    pub oracle_check: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { caps: Caps::from_env(), reduce_inner: true, oracle_check: false }
    }
}
