//! Quotient construction, language equivalence and canonical forms.
//!
//! The quotient of a structure by the congruence computed in
//! [`crate::engine`] is the unique smallest structure with the same label
//! language. Uniqueness is up to state numbering, so [`canonical_form`]
//! additionally renumbers states in breadth-first order from the initial
//! state (edges in alphabet order), giving a representation that is
//! byte-stable under serialization.

use thiserror::Error;

use crate::engine::{minimize_partition, EngineError, RefinementStats, SplitterAudit};
use crate::model::{trim_unreachable, KripkeStructure, Label, StateId};
use crate::partition::Partition;

#[derive(Debug, Error, PartialEq)]
pub enum QuotientError {
    /// The partition does not respect the transition function: two states
    /// of one block step to different blocks under the same symbol.
    #[error(
        "partition is not a congruence: states {p} and {q} share a block \
         but step to different blocks under symbol {symbol}"
    )]
    NotACongruence { p: StateId, q: StateId, symbol: String },
    /// Two states of one block carry different labels.
    #[error("partition is not label-respecting: states {p} and {q} share a block")]
    LabelMismatch { p: StateId, q: StateId },
}

/// Collapses every block of `partition` to one state. Block numbering is
/// the partition's own; the initial state is the block of the original
/// initial state. Fails if the partition is not a label-respecting
/// congruence. Requires a total table.
pub fn build_quotient(
    k: &KripkeStructure,
    partition: &Partition,
) -> Result<KripkeStructure, QuotientError> {
    assert_eq!(partition.state_count(), k.state_count());
    let blocks = partition.blocks();
    let mut labels = Vec::with_capacity(blocks.len());
    for block in blocks {
        let rep = block[0];
        for &q in &block[1..] {
            if k.label(q) != k.label(rep) {
                return Err(QuotientError::LabelMismatch { p: rep, q });
            }
        }
        labels.push(k.label(rep).clone());
    }
    let mut quotient = KripkeStructure::new(
        k.bits,
        k.alphabet.clone(),
        partition.block_of(k.initial),
        labels,
    );
    for (b, block) in blocks.iter().enumerate() {
        let rep = block[0];
        for s in 0..k.alphabet_size() {
            let target = partition.block_of(k.step(rep, s).expect("total transition table"));
            for &q in &block[1..] {
                let got = partition.block_of(k.step(q, s).unwrap());
                if got != target {
                    return Err(QuotientError::NotACongruence {
                        p: rep,
                        q,
                        symbol: k.alphabet[s].clone(),
                    });
                }
            }
            quotient.set_transition(b, s, target);
        }
    }
    Ok(quotient)
}

#[derive(Debug, Error, PartialEq)]
pub enum EquivError {
    /// The two structures do not use the same symbol set.
    #[error("alphabets differ: left {left:?}, right {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },
    /// The two structures label states with different widths.
    #[error("label widths differ: left {left}, right {right}")]
    LabelWidthMismatch { left: usize, right: usize },
}

/// Outcome of a language comparison. A negative verdict carries a shortest
/// witness: a word whose label traces diverge, together with the two labels
/// reached at its end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Equivalent,
    NotEquivalent {
        word: Vec<String>,
        left: Label,
        right: Label,
    },
}

/// Compares the label languages of two structures from their initial
/// states. Alphabets must be equal as sets (order may differ) and label
/// widths must match; transition tables must be total. Unreachable states
/// never influence the verdict. The search is breadth-first with symbols
/// in `a`'s alphabet order, so a returned witness is length-minimal.
pub fn language_equivalent(
    a: &KripkeStructure,
    b: &KripkeStructure,
) -> Result<EquivalenceVerdict, EquivError> {
    if a.bits != b.bits {
        return Err(EquivError::LabelWidthMismatch { left: a.bits, right: b.bits });
    }
    let mut left_sorted = a.alphabet.clone();
    let mut right_sorted = b.alphabet.clone();
    left_sorted.sort();
    right_sorted.sort();
    if left_sorted != right_sorted {
        return Err(EquivError::AlphabetMismatch {
            left: a.alphabet.clone(),
            right: b.alphabet.clone(),
        });
    }
    // Map a's symbol indices onto b's.
    let sym_map: Vec<usize> = a
        .alphabet
        .iter()
        .map(|s| b.symbol_index(s).unwrap())
        .collect();

    let mut visited = vec![false; a.state_count() * b.state_count()];
    let key = |p: StateId, q: StateId| p * b.state_count() + q;
    let mut queue = std::collections::VecDeque::new();
    // Parent pointers reconstruct the witness from its endpoint.
    let mut parent: std::collections::HashMap<usize, (usize, usize)> =
        std::collections::HashMap::new();
    visited[key(a.initial, b.initial)] = true;
    queue.push_back((a.initial, b.initial));
    while let Some((p, q)) = queue.pop_front() {
        if a.label(p) != b.label(q) {
            let mut word_rev = Vec::new();
            let mut cur = key(p, q);
            while let Some(&(prev, sym)) = parent.get(&cur) {
                word_rev.push(a.alphabet[sym].clone());
                cur = prev;
            }
            word_rev.reverse();
            return Ok(EquivalenceVerdict::NotEquivalent {
                word: word_rev,
                left: a.label(p).clone(),
                right: b.label(q).clone(),
            });
        }
        for s in 0..a.alphabet_size() {
            let np = a.step(p, s).expect("total transition table");
            let nq = b.step(q, sym_map[s]).expect("total transition table");
            if !visited[key(np, nq)] {
                visited[key(np, nq)] = true;
                parent.insert(key(np, nq), (key(p, q), s));
                queue.push_back((np, nq));
            }
        }
    }
    Ok(EquivalenceVerdict::Equivalent)
}

/// A structure together with how many unreachable states canonicalization
/// dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonicalized {
    pub structure: KripkeStructure,
    pub removed_unreachable: usize,
}

/// Renumbers states in breadth-first order from the initial state, taking
/// edges in alphabet order, after dropping unreachable states. Two
/// isomorphic reachable structures canonicalize to identical values.
pub fn canonical_form(k: &KripkeStructure) -> Canonicalized {
    let (trimmed, removed_unreachable) = trim_unreachable(k);
    let n = trimmed.state_count();
    let mut order = vec![usize::MAX; n];
    let mut bfs = Vec::with_capacity(n);
    order[trimmed.initial] = 0;
    bfs.push(trimmed.initial);
    let mut head = 0;
    while head < bfs.len() {
        let q = bfs[head];
        head += 1;
        for s in 0..trimmed.alphabet_size() {
            let t = trimmed.step(q, s).expect("total transition table");
            if order[t] == usize::MAX {
                order[t] = bfs.len();
                bfs.push(t);
            }
        }
    }
    debug_assert_eq!(bfs.len(), n);
    let labels = bfs.iter().map(|&q| trimmed.label(q).clone()).collect();
    let mut out = KripkeStructure::new(trimmed.bits, trimmed.alphabet.clone(), 0, labels);
    for (new_q, &old_q) in bfs.iter().enumerate() {
        for s in 0..trimmed.alphabet_size() {
            out.set_transition(new_q, s, order[trimmed.step(old_q, s).unwrap()]);
        }
    }
    Canonicalized { structure: out, removed_unreachable }
}

/// A minimized structure with the refinement counters of the run that
/// produced it.
#[derive(Debug)]
pub struct Minimized {
    pub structure: KripkeStructure,
    pub stats: RefinementStats,
    pub audit: SplitterAudit,
}

/// Minimizes `k`: refines to the coarsest congruence and collapses it.
/// Input must be total and fully reachable (trim first if needed). The
/// output keeps the engine's block numbering; apply [`canonical_form`] for
/// a numbering-independent representation.
pub fn minimize(k: &KripkeStructure) -> Result<Minimized, EngineError> {
    let out = minimize_partition(k)?;
    let structure = build_quotient(k, &out.partition)
        .expect("the refined partition is a congruence");
    Ok(Minimized { structure, stats: out.stats, audit: out.audit })
}

/// True when no two distinct states of `k` are language-equivalent, i.e.
/// minimization would change nothing. Same input requirements as
/// [`minimize`].
pub fn is_minimal(k: &KripkeStructure) -> Result<bool, EngineError> {
    Ok(minimize_partition(k)?.partition.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Label;
    use crate::testkit::kex;

    fn minimized_kex() -> KripkeStructure {
        minimize(&kex()).unwrap().structure
    }

    #[test]
    fn kex_quotient_merges_exactly_the_twin_states() {
        let q = minimized_kex();
        assert_eq!(q.state_count(), 5);
        assert!(is_minimal(&q).unwrap());
        assert_eq!(
            language_equivalent(&kex(), &q).unwrap(),
            EquivalenceVerdict::Equivalent
        );
    }

    #[test]
    fn minimization_is_idempotent() {
        let once = minimized_kex();
        let twice = minimize(&once).unwrap().structure;
        assert_eq!(once.state_count(), twice.state_count());
        assert_eq!(canonical_form(&once), canonical_form(&twice));
    }

    #[test]
    fn quotient_rejects_non_congruences() {
        // q3 and q4 carry different labels, so merging them is rejected
        // before any transition is examined.
        let bad = Partition::from_blocks(
            vec![vec![0], vec![1, 2], vec![3, 4], vec![5]],
            6,
        )
        .unwrap();
        let err = build_quotient(&kex(), &bad).unwrap_err();
        assert_eq!(err, QuotientError::LabelMismatch { p: 3, q: 4 });

        // Same labels, broken steps: q1 and q5 both carry 001 but step
        // apart under a.
        let mut k = kex();
        k.labels[5] = Label::from_bitstring("001").unwrap();
        let bad = Partition::from_blocks(
            vec![vec![0], vec![1, 5], vec![2], vec![3], vec![4]],
            6,
        )
        .unwrap();
        let err = build_quotient(&k, &bad).unwrap_err();
        assert_eq!(
            err,
            QuotientError::NotACongruence { p: 1, q: 5, symbol: "a".to_string() }
        );
    }

    #[test]
    fn equivalence_accepts_renamed_and_reordered_structures() {
        let k = kex();
        let canon = canonical_form(&k).structure;
        assert_eq!(
            language_equivalent(&k, &canon).unwrap(),
            EquivalenceVerdict::Equivalent
        );

        // Same structure with the alphabet listed in the other order.
        let mut flipped = KripkeStructure::new(
            k.bits,
            vec!["b".to_string(), "a".to_string()],
            k.initial,
            k.labels.clone(),
        );
        for q in 0..k.state_count() {
            flipped.set_transition(q, 0, k.step(q, 1).unwrap());
            flipped.set_transition(q, 1, k.step(q, 0).unwrap());
        }
        assert_eq!(
            language_equivalent(&k, &flipped).unwrap(),
            EquivalenceVerdict::Equivalent
        );
    }

    #[test]
    fn equivalence_reports_a_shortest_witness() {
        let k = kex();
        let mut tweaked = kex();
        // Flip one bit on q2; the empty word and "a" still agree, "b"
        // diverges at its first step.
        tweaked.labels[2] = Label::from_bitstring("011").unwrap();
        match language_equivalent(&k, &tweaked).unwrap() {
            EquivalenceVerdict::NotEquivalent { word, left, right } => {
                assert_eq!(word, vec!["b".to_string()]);
                assert_eq!(left.to_string(), "001");
                assert_eq!(right.to_string(), "011");
            }
            EquivalenceVerdict::Equivalent => panic!("expected a witness"),
        }
    }

    #[test]
    fn equivalence_rejects_mismatched_shapes() {
        let k = kex();
        let mut other = kex();
        other.alphabet = vec!["a".to_string(), "c".to_string()];
        assert!(matches!(
            language_equivalent(&k, &other),
            Err(EquivError::AlphabetMismatch { .. })
        ));

        let narrow = KripkeStructure::new(
            1,
            k.alphabet.clone(),
            0,
            vec![Label::from_bitstring("0").unwrap()],
        );
        assert!(matches!(
            language_equivalent(&k, &narrow),
            Err(EquivError::LabelWidthMismatch { left: 3, right: 1 })
        ));
    }

    #[test]
    fn canonical_form_drops_unreachable_states_and_renumbers() {
        let k = kex();
        let canon = canonical_form(&k);
        assert_eq!(canon.removed_unreachable, 0);
        assert_eq!(canon.structure.initial, 0);

        // Canonical numbering is BFS order: q0, then its a-target, ...
        assert_eq!(canon.structure.label(0).to_string(), "000");
        assert_eq!(canon.structure.label(1).to_string(), "001");

        // Canonicalizing twice is the identity.
        assert_eq!(canonical_form(&canon.structure).structure, canon.structure);
    }

    #[test]
    fn random_minimization_results_are_minimal_and_equivalent() {
        use crate::generate::{gen_random, GenSpec};
        use crate::model::trim_unreachable;
        for seed in 0..40u64 {
            let spec = GenSpec {
                states: 1 + (seed as usize * 13) % 60,
                bits: 1 + (seed as usize) % 3,
                alphabet_size: 1 + (seed as usize) % 4,
                seed: seed.wrapping_mul(0x51_7c_c1_b7),
                label_collision: [0.0, 0.5, 0.9][(seed % 3) as usize],
            };
            let (k, _) = trim_unreachable(&gen_random(&spec));
            let min = minimize(&k).unwrap().structure;
            assert!(is_minimal(&min).unwrap(), "seed {}", seed);
            assert_eq!(
                language_equivalent(&k, &min).unwrap(),
                EquivalenceVerdict::Equivalent,
                "seed {}",
                seed
            );
            assert!(min.state_count() <= k.state_count());
        }
    }
}
