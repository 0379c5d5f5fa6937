//! Seeded instance generators.
//!
//! Everything here is deterministic in the seed: one `GenSpec` value always
//! produces the same structure, on every platform, so test corpora can be
//! referenced by seed instead of by fixture file. The draw order is part of
//! that contract: labels first (state-major), then transitions (state-major,
//! symbol-minor). Changing it invalidates seed-pinned expectations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{trim_unreachable, KripkeStructure, Label, StateId};

/// Canonical generated symbol names: one letter while the alphabet fits,
/// `x26`, `x27`, ... beyond.
pub fn symbol_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i)
    }
}

/// Parameters for one generated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub states: usize,
    pub bits: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    /// Probability that a state reuses the label of an earlier state
    /// instead of drawing fresh bits. Higher values leave fewer label
    /// classes, so refinement has more work to do.
    pub label_collision: f64,
}

fn gen_labels(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Vec<Label> {
    let mut labels: Vec<Label> = Vec::with_capacity(spec.states);
    for q in 0..spec.states {
        if q > 0 && rng.gen::<f64>() < spec.label_collision {
            let donor = rng.gen_range(0..q);
            labels.push(labels[donor].clone());
        } else {
            labels.push(Label::new(
                (0..spec.bits).map(|_| rng.gen_bool(0.5)).collect(),
            ));
        }
    }
    labels
}

/// Uniform random structure: every transition target drawn independently,
/// state 0 initial. The result is total but not necessarily reachable;
/// trim before feeding it to the refinement engine.
pub fn gen_random(spec: &GenSpec) -> KripkeStructure {
    assert!(spec.states > 0 && spec.bits > 0 && spec.alphabet_size > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let labels = gen_labels(spec, &mut rng);
    let alphabet = (0..spec.alphabet_size).map(symbol_name).collect();
    let mut k = KripkeStructure::new(spec.bits, alphabet, 0, labels);
    for q in 0..spec.states {
        for s in 0..spec.alphabet_size {
            let t = rng.gen_range(0..spec.states);
            k.set_transition(q, s, t);
        }
    }
    k
}

/// Like [`gen_random`], but the first symbol steps around the cycle
/// `q → q+1 (mod n)`, which makes every state reachable by construction.
/// Useful for large timing instances where a trim pass would only add
/// noise.
pub fn gen_cycle_random(spec: &GenSpec) -> KripkeStructure {
    assert!(spec.states > 0 && spec.bits > 0 && spec.alphabet_size > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let labels = gen_labels(spec, &mut rng);
    let alphabet = (0..spec.alphabet_size).map(symbol_name).collect();
    let mut k = KripkeStructure::new(spec.bits, alphabet, 0, labels);
    for q in 0..spec.states {
        k.set_transition(q, 0, (q + 1) % spec.states);
        for s in 1..spec.alphabet_size {
            let t = rng.gen_range(0..spec.states);
            k.set_transition(q, s, t);
        }
    }
    k
}

/// Blows `k` up with `copies` interchangeable clones of every state and
/// rewires each transition to a seeded-random clone of its target. Every
/// clone of a state is language-equivalent to the original, so minimizing
/// the result recovers (at most) the original's classes; the point is to
/// produce structures with a known amount of redundancy. Requires a total
/// table. The result is trimmed, so all of its states are reachable.
/// `copies = 1` returns the trimmed input unchanged.
pub fn gen_redundant(k: &KripkeStructure, copies: usize, seed: u64) -> KripkeStructure {
    assert!(copies > 0);
    let n = k.state_count();
    let m = k.alphabet_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = (0..n * copies)
        .map(|id| k.label(id / copies).clone())
        .collect();
    let mut big = KripkeStructure::new(
        k.bits,
        k.alphabet.clone(),
        k.initial * copies,
        labels,
    );
    for q in 0..n {
        for c in 0..copies {
            for s in 0..m {
                let t = k.step(q, s).expect("total transition table");
                let clone: StateId = rng.gen_range(0..copies);
                big.set_transition(q * copies + c, s, t * copies + clone);
            }
        }
    }
    trim_unreachable(&big).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, Strictness};
    use crate::oracles::nerode_table_filling;

    fn spec(seed: u64) -> GenSpec {
        GenSpec {
            states: 30,
            bits: 2,
            alphabet_size: 2,
            seed,
            label_collision: 0.5,
        }
    }

    #[test]
    fn symbol_names_are_letters_then_numbered() {
        assert_eq!(symbol_name(0), "a");
        assert_eq!(symbol_name(25), "z");
        assert_eq!(symbol_name(26), "x26");
    }

    #[test]
    fn same_seed_same_structure() {
        assert_eq!(gen_random(&spec(7)), gen_random(&spec(7)));
        let k = gen_random(&spec(7));
        assert_eq!(gen_redundant(&k, 3, 11), gen_redundant(&k, 3, 11));
    }

    #[test]
    fn different_seeds_differ() {
        assert_ne!(gen_random(&spec(1)), gen_random(&spec(2)));
    }

    #[test]
    fn generated_structures_are_total_and_well_formed() {
        for seed in 0..20 {
            let k = gen_random(&spec(seed));
            assert!(validate(&k, Strictness::AllowUnreachable).ok);
            assert_eq!(k.state_count(), 30);
            assert_eq!(k.alphabet, vec!["a", "b"]);
        }
    }

    #[test]
    fn single_state_structures_self_loop() {
        let k = gen_random(&GenSpec {
            states: 1,
            ..spec(4)
        });
        for s in 0..k.alphabet_size() {
            assert_eq!(k.step(0, s), Some(0));
        }
    }

    #[test]
    fn full_collision_copies_the_first_label() {
        let k = gen_random(&GenSpec {
            label_collision: 1.0,
            ..spec(3)
        });
        for q in 0..k.state_count() {
            assert_eq!(k.label(q), k.label(0));
        }
    }

    #[test]
    fn cycle_generator_reaches_every_state() {
        for seed in 0..10 {
            let k = gen_cycle_random(&spec(seed));
            let (trimmed, removed) = trim_unreachable(&k);
            assert_eq!(removed, 0);
            assert_eq!(trimmed, k);
        }
    }

    #[test]
    fn one_copy_is_the_trimmed_input() {
        let k = gen_random(&spec(9));
        let (trimmed, _) = trim_unreachable(&k);
        assert_eq!(gen_redundant(&k, 1, 42), trimmed);
    }

    #[test]
    fn clones_do_not_add_language_classes() {
        for seed in 0..15u64 {
            let base = trim_unreachable(&gen_random(&spec(seed))).0;
            let inflated = gen_redundant(&base, 4, seed ^ 0xabcd);
            assert!(inflated.state_count() >= base.state_count());
            assert_eq!(
                nerode_table_filling(&inflated).num_blocks(),
                nerode_table_filling(&base).num_blocks(),
                "seed {}",
                seed
            );
        }
    }
}
