//! The reference corpus: builtin algebras with the bounds they are
//! analysed at and the least levels their counterexamples live at.

use crate::algebra::FiniteAlgebra;
use crate::builtin::parse_builtin;
use crate::decide::DecideOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: &'static str,
    pub max_power: usize,
    pub max_arity: usize,
    /// Least `k` with a non-extendable homomorphism from a subuniverse of
    /// `A^k`, or `None` when there is none up to `max_power`.
    pub pol_hom_witness_power: Option<usize>,
    /// Least arity of a centralizer-closed non-algebraic set, or `None`
    /// when there is none up to `max_arity`.
    pub sdc_witness_arity: Option<usize>,
}

impl CorpusEntry {
    pub fn algebra(&self) -> FiniteAlgebra {
        parse_builtin(self.spec).expect("corpus specs parse")
    }

    pub fn options(&self) -> DecideOptions {
        DecideOptions::new(self.max_power, self.max_arity)
    }
}

const fn entry(
    spec: &'static str,
    max_power: usize,
    max_arity: usize,
    pol_hom_witness_power: Option<usize>,
    sdc_witness_arity: Option<usize>,
) -> CorpusEntry {
    CorpusEntry {
        spec,
        max_power,
        max_arity,
        pol_hom_witness_power,
        sdc_witness_arity,
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    entry("chain-semilattice:2", 3, 3, None, None),
    entry("chain-semilattice:3", 2, 2, None, None),
    entry("fork-semilattice", 2, 2, Some(2), Some(2)),
    entry("chain-lattice:2", 3, 4, None, None),
    entry("chain-lattice:3", 3, 3, Some(2), Some(3)),
    entry("boolean-lattice:2", 2, 2, None, None),
    entry("cyclic:2", 2, 3, None, None),
    entry("cyclic:3", 2, 2, None, None),
    entry("product:cyclic:2,cyclic:2", 2, 2, None, None),
    entry("cyclic:4", 2, 2, None, None),
    entry("cyclic:5", 2, 2, None, None),
    entry("cyclic:6", 2, 2, None, None),
    entry("cyclic:7", 2, 2, None, None),
    entry("cyclic:8", 2, 2, None, None),
    entry("product:cyclic:2,cyclic:4", 2, 2, Some(1), Some(1)),
    entry("product:cyclic:2,product:cyclic:2,cyclic:2", 1, 1, None, None),
    entry("monounary:0", 2, 3, None, None),
    entry("monounary:1,0", 2, 3, None, None),
    entry("monounary:0,0", 2, 3, None, None),
    entry("monounary:1,2,0", 2, 2, None, None),
    entry("monounary:1,0,0", 2, 2, None, None),
    entry("monounary:0,0,1", 2, 2, None, None),
    entry("monounary:0,0,1,0", 2, 2, Some(1), Some(1)),
    entry("monounary:1,2,0,0", 2, 2, None, None),
    entry("monounary:0,0,1,2", 2, 2, None, None),
];

/// Looks an entry up by its builtin spec.
pub fn find(spec: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.spec == spec)
}
