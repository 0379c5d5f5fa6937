//! Reference implementations used to cross-check the refinement engine.
//!
//! Everything here favors the most obvious formulation over speed: the
//! table-filling oracle is the quadratic pairwise-marking fixpoint, the
//! Moore oracle regroups full successor signatures each round, and the
//! witness search is a breadth-first walk over state pairs. None of it
//! shares code with the engine beyond the structure accessors and the
//! partition value type, which is the point: agreement between independent
//! computations is the evidence.

use std::collections::{HashMap, VecDeque};

use crate::model::{KripkeStructure, Label, StateId};
use crate::partition::Partition;

/// Returns the coarsest partition in which two states share a block exactly
/// when no word tells their label traces apart. Pairwise marking: seed with
/// label mismatches, then propagate backwards over the transition table
/// until nothing changes.
pub fn nerode_table_filling(k: &KripkeStructure) -> Partition {
    let n = k.state_count();
    let m = k.alphabet_size();
    let mut marked = vec![false; n * n];
    for p in 0..n {
        for q in 0..n {
            if k.label(p) != k.label(q) {
                marked[p * n + q] = true;
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..n {
            for q in (p + 1)..n {
                if marked[p * n + q] {
                    continue;
                }
                for s in 0..m {
                    let tp = k.step(p, s).expect("total transition table");
                    let tq = k.step(q, s).expect("total transition table");
                    if marked[tp * n + tq] {
                        marked[p * n + q] = true;
                        marked[q * n + p] = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    // Unmarked-ness is transitive at the fixpoint; the first unmarked
    // partner of each state names its class.
    let mut assignment = vec![0usize; n];
    for q in 0..n {
        assignment[q] = (0..=q).find(|&p| !marked[p * n + q]).unwrap();
    }
    Partition::from_assignment(&assignment)
}

/// Same congruence by forward refinement: start from the label classes and
/// repeatedly regroup states by (class, successor classes) signatures until
/// the class count stops growing.
pub fn moore_refinement(k: &KripkeStructure) -> Partition {
    let n = k.state_count();
    let m = k.alphabet_size();
    let mut class: Vec<usize> = {
        let mut by_label: HashMap<&Label, usize> = HashMap::new();
        (0..n)
            .map(|q| {
                let next = by_label.len();
                *by_label.entry(k.label(q)).or_insert(next)
            })
            .collect()
    };
    let mut count = class.iter().copied().max().map_or(0, |c| c + 1);
    loop {
        let mut by_sig: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next_class = vec![0usize; n];
        for q in 0..n {
            let mut sig = Vec::with_capacity(m + 1);
            sig.push(class[q]);
            for s in 0..m {
                sig.push(class[k.step(q, s).expect("total transition table")]);
            }
            let next = by_sig.len();
            next_class[q] = *by_sig.entry(sig).or_insert(next);
        }
        let next_count = by_sig.len();
        class = next_class;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    Partition::from_assignment(&class)
}

/// Outcome of a distinguishing-word search between two states of one
/// structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinguishingResult {
    Equivalent,
    Distinguished {
        /// Shortest word whose label traces differ, alphabet order breaking
        /// ties; empty when the states' own labels already differ.
        word: Vec<String>,
        /// Labels observed after the word, first for the first queried state.
        labels: (Label, Label),
    },
}

/// Breadth-first search over the pair graph from `(p, q)` for the shortest
/// word under which the two label traces diverge.
pub fn distinguishing_word(k: &KripkeStructure, p: StateId, q: StateId) -> DistinguishingResult {
    let n = k.state_count();
    let m = k.alphabet_size();
    let norm = |a: StateId, b: StateId| if a <= b { (a, b) } else { (b, a) };

    if p == q {
        return DistinguishingResult::Equivalent;
    }
    // Parent chain per visited pair for word reconstruction.
    let mut parent: HashMap<(StateId, StateId), ((StateId, StateId), usize)> = HashMap::new();
    let mut seen = vec![false; n * n];
    let start = norm(p, q);
    seen[start.0 * n + start.1] = true;
    let mut queue = VecDeque::new();
    queue.push_back(start);

    while let Some(pair) = queue.pop_front() {
        if k.label(pair.0) != k.label(pair.1) {
            // Rebuild the word, then replay it from the original states so
            // the reported labels keep the caller's argument order.
            let mut word = Vec::new();
            let mut cur = pair;
            while cur != start {
                let (prev, sym) = parent[&cur];
                word.push(k.alphabet[sym].clone());
                cur = prev;
            }
            word.reverse();
            let refs: Vec<&str> = word.iter().map(|w| w.as_str()).collect();
            let lp = k.lambda_star(p, &refs).expect("word uses alphabet symbols").clone();
            let lq = k.lambda_star(q, &refs).expect("word uses alphabet symbols").clone();
            return DistinguishingResult::Distinguished {
                word,
                labels: (lp, lq),
            };
        }
        for s in 0..m {
            let next = norm(
                k.step(pair.0, s).expect("total transition table"),
                k.step(pair.1, s).expect("total transition table"),
            );
            if next.0 != next.1 && !seen[next.0 * n + next.1] {
                seen[next.0 * n + next.1] = true;
                parent.insert(next, (pair, s));
                queue.push_back(next);
            }
        }
    }
    DistinguishingResult::Equivalent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_random, GenSpec};
    use crate::model::trim_unreachable;
    use crate::testkit::kex;

    #[test]
    fn table_filling_finds_the_five_kex_classes() {
        let p = nerode_table_filling(&kex());
        let expected =
            Partition::from_blocks(vec![vec![0], vec![1, 2], vec![3], vec![4], vec![5]], 6)
                .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn moore_agrees_on_kex() {
        assert_eq!(moore_refinement(&kex()), nerode_table_filling(&kex()));
    }

    #[test]
    fn all_distinct_labels_give_singletons() {
        let mut k = kex();
        for (q, s) in ["000", "001", "010", "011", "100", "101"].iter().enumerate() {
            k.labels[q] = crate::model::Label::from_bitstring(s).unwrap();
        }
        assert!(nerode_table_filling(&k).is_identity());
        assert!(moore_refinement(&k).is_identity());
    }

    #[test]
    fn oracles_agree_on_random_structures() {
        for seed in 0..60u64 {
            let spec = GenSpec {
                states: 1 + (seed as usize * 13) % 30,
                bits: 1 + (seed as usize) % 3,
                alphabet_size: 1 + (seed as usize) % 3,
                seed,
                label_collision: 0.7,
            };
            let (k, _) = trim_unreachable(&gen_random(&spec));
            assert_eq!(
                nerode_table_filling(&k),
                moore_refinement(&k),
                "seed {}",
                seed
            );
        }
    }

    #[test]
    fn kex_witness_for_q0_q5_is_a() {
        match distinguishing_word(&kex(), 0, 5) {
            DistinguishingResult::Distinguished { word, labels } => {
                assert_eq!(word, vec!["a".to_string()]);
                assert_eq!(labels.0.to_string(), "001");
                assert_eq!(labels.1.to_string(), "011");
            }
            other => panic!("expected a witness, got {:?}", other),
        }
    }

    #[test]
    fn kex_q1_q2_are_equivalent() {
        assert_eq!(distinguishing_word(&kex(), 1, 2), DistinguishingResult::Equivalent);
        assert_eq!(distinguishing_word(&kex(), 3, 3), DistinguishingResult::Equivalent);
    }

    #[test]
    fn empty_word_when_labels_differ() {
        match distinguishing_word(&kex(), 0, 3) {
            DistinguishingResult::Distinguished { word, labels } => {
                assert!(word.is_empty());
                assert_eq!(labels.0.to_string(), "000");
                assert_eq!(labels.1.to_string(), "010");
            }
            other => panic!("expected a witness, got {:?}", other),
        }
    }

    /// The BFS must return a genuinely shortest word: compare against brute
    /// enumeration of all words up to the returned length.
    #[test]
    fn witnesses_are_shortest_on_small_structures() {
        for seed in 0..40u64 {
            let spec = GenSpec {
                states: 2 + (seed as usize) % 9,
                bits: 1,
                alphabet_size: 1 + (seed as usize) % 3,
                seed: seed.wrapping_mul(977),
                label_collision: 0.8,
            };
            let (k, _) = trim_unreachable(&gen_random(&spec));
            let n = k.state_count();
            for p in 0..n {
                for q in (p + 1)..n {
                    if let DistinguishingResult::Distinguished { word, labels } =
                        distinguishing_word(&k, p, q)
                    {
                        let refs: Vec<&str> = word.iter().map(|w| w.as_str()).collect();
                        assert_eq!(k.lambda_star(p, &refs).unwrap(), &labels.0);
                        assert_eq!(k.lambda_star(q, &refs).unwrap(), &labels.1);
                        assert_ne!(labels.0, labels.1);
                        assert!(
                            no_shorter_witness(&k, p, q, word.len()),
                            "shorter witness than {:?} exists for ({}, {})",
                            word,
                            p,
                            q
                        );
                    }
                }
            }
        }
    }

    fn no_shorter_witness(k: &KripkeStructure, p: StateId, q: StateId, len: usize) -> bool {
        // Enumerate every word strictly shorter than `len`.
        let m = k.alphabet_size();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..len {
            for word in std::mem::take(&mut words) {
                let refs: Vec<&str> = word.iter().map(|&s| k.alphabet[s].as_str()).collect();
                if k.lambda_star(p, &refs).unwrap() != k.lambda_star(q, &refs).unwrap() {
                    return false;
                }
                for s in 0..m {
                    let mut next = word.clone();
                    next.push(s);
                    words.push(next);
                }
            }
        }
        true
    }
}
