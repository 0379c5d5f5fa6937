//! Minimization of deterministic Kripke structures.
//!
//! A deterministic Kripke structure is a finite automaton whose states
//! carry fixed-width bit labels instead of accept flags: every input word
//! yields a trace of labels, and two structures are equivalent when their
//! initial states yield the same trace for every word. This crate computes
//! the unique smallest equivalent structure.
//!
//! The workhorse is [`engine`], a partition refinement over predecessor
//! subsets with waiting sets, running in `O(k · n · log n)` for `n` states
//! and `k` symbols. Everything around it supports using and checking that
//! engine:
//!
//! * [`model`]: the structure type, validation, reachability trimming;
//! * [`partition`]: canonical partition values;
//! * [`quotient`]: quotient construction, language equivalence with
//!   shortest witnesses, canonical (BFS) forms, the top-level
//!   [`minimize`](quotient::minimize);
//! * [`oracles`]: independent quadratic/cubic reference algorithms used to
//!   cross-check the engine;
//! * [`io`]: the `.kts` text format and Graphviz export;
//! * [`generate`]: seeded instance generators;
//! * [`bench`]: counter-based measurement harness.

pub mod bench;
pub mod engine;
pub mod generate;
pub mod io;
pub mod model;
pub mod oracles;
pub mod partition;
pub mod quotient;

pub use bench::{run_bench, BenchPoint, BenchReport};
pub use engine::{
    initial_partition, minimize_partition, EngineError, InverseTransitions, Minimization,
    RefinementStats, Refiner, SplitterAudit,
};
pub use generate::{gen_cycle_random, gen_random, gen_redundant, symbol_name, GenSpec};
pub use io::{export_dot, parse_kts, serialize_kts, ParseError, ParseErrorKind};
pub use model::{
    trim_unreachable, validate, Issue, IssueKind, KripkeStructure, Label, ModelError, StateId,
    Strictness, ValidationReport,
};
pub use oracles::{
    distinguishing_word, moore_refinement, nerode_table_filling, DistinguishingResult,
};
pub use partition::Partition;
pub use quotient::{
    build_quotient, canonical_form, is_minimal, language_equivalent, minimize, Canonicalized,
    EquivError, EquivalenceVerdict, Minimized, QuotientError,
};

/// Shared test fixtures.
#[cfg(test)]
pub(crate) mod testkit {
    use crate::model::{KripkeStructure, Label};

    /// Six-state worked example: states q0..q5 with 3-bit labels, two
    /// symbols. q0 and q5 share a label but are separated by the word "a";
    /// q1 and q2 are genuinely equivalent, so the minimal form has five
    /// states. Mirrors `fixtures/kex.kts`.
    pub fn kex() -> KripkeStructure {
        let labels = ["000", "001", "001", "010", "011", "000"]
            .iter()
            .map(|s| Label::from_bitstring(s).unwrap())
            .collect();
        let mut k = KripkeStructure::new(
            3,
            vec!["a".to_string(), "b".to_string()],
            0,
            labels,
        );
        let edges = [
            (0, 0, 1),
            (0, 1, 2),
            (1, 0, 0),
            (1, 1, 5),
            (2, 0, 0),
            (2, 1, 5),
            (3, 0, 3),
            (3, 1, 3),
            (4, 0, 3),
            (4, 1, 4),
            (5, 0, 4),
            (5, 1, 1),
        ];
        for (q, s, t) in edges {
            k.set_transition(q, s, t);
        }
        k
    }
}
