mod common;

use std::collections::BTreeSet;

use common::{fixture, random_irreducible, random_type_a};
use mgs_core::assoc::{associated_sequence, mu, mu_parts, part_bounds};
use mgs_core::direct_sum::{alpha, concat_mgs, direct_sum, Decomposition, GluingSpec};
use mgs_core::embedding::embed;
use mgs_core::green::{census, enumerate_mgs, exchange_graph, induced_permutation, is_maximal_green, verify_green};
use mgs_core::type_a::{cycle_tree, is_type_a, leaf_cycles};
use mgs_core::{Color, ExtMatrix, MutationSequence, Quiver};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_quiver<R: Rng>(rng: &mut R, n: usize, max_mult: i64) -> Quiver {
    let mut arrows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let m = rng.gen_range(-max_mult..=max_mult);
            if m > 0 {
                arrows.push((i, j, m));
            } else if m < 0 {
                arrows.push((j, i, -m));
            }
        }
    }
    Quiver::from_weighted(n, &arrows).unwrap()
}

fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| random_quiver(&mut ChaCha8Rng::seed_from_u64(seed), n, 2))
}

proptest! {
    #[test]
    fn mutation_is_an_involution(q in arb_quiver(), k in 0usize..8) {
        let k = 1 + k % q.n();
        prop_assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q.clone());
        let m = ExtMatrix::frame(&q);
        prop_assert_eq!(m.mutate(k).unwrap().mutate(k).unwrap(), m);
    }

    #[test]
    fn text_round_trip(q in arb_quiver()) {
        let text = q.to_text();
        let back = Quiver::parse(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(back.to_text(), text);
    }
}

#[test]
fn matrix_and_quiver_mutation_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=12);
        let q = random_quiver(&mut rng, n, 2);
        let k = rng.gen_range(1..=n);
        assert_eq!(ExtMatrix::frame(&q).mutate(k).unwrap().principal_quiver(), q.mutate(k).unwrap());
    }
}

#[test]
fn frozen_rows_stay_sign_coherent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..2_000 {
        let n = rng.gen_range(1..=7);
        let q = if trial % 2 == 0 { random_type_a(&mut rng, n, 10) } else { random_quiver(&mut rng, n, 1) };
        let mut m = ExtMatrix::frame(&q);
        for _ in 0..8 {
            m = m.mutate(rng.gen_range(1..=n)).unwrap();
            assert!(m.colors().is_ok(), "{}", q.to_text());
        }
    }
}

#[test]
fn type_a_degree_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let n = rng.gen_range(2..=14);
        let q = random_type_a(&mut rng, n, 30);
        let (mut out, mut inn) = (vec![0i64; n + 1], vec![0i64; n + 1]);
        for (i, j, m) in q.arrows() {
            out[i] += m;
            inn[j] += m;
        }
        assert!((1..=n).all(|v| out[v] <= 2 && inn[v] <= 2), "{}", q.to_text());
        assert!(is_type_a(&q).verdict);
    }
}

fn small_cases() -> Vec<Quiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut qs = vec![fixture("triangle"), fixture("linear_a3")];
    qs.extend((0..25).map(|i| random_type_a(&mut rng, 2 + i % 4, 12)));
    qs
}

#[test]
fn enumerated_sequences_are_maximal_green() {
    for q in small_cases() {
        for s in enumerate_mgs(&q, None).unwrap() {
            let report = is_maximal_green(&q, &s).unwrap();
            assert!(report.is_maximal);
            // the final exchangeable block is B permuted by σ
            assert_eq!(induced_permutation(&q, &s).unwrap(), report.induced.unwrap());
            // every proper prefix leaves a green vertex
            for len in 0..s.len() {
                let prefix = MutationSequence(s.steps()[..len].to_vec());
                let t = verify_green(&q, &prefix).unwrap();
                assert!(t.final_colors.contains(&Color::Green));
            }
        }
    }
}

#[test]
fn chains_match_census() {
    for q in small_cases() {
        let g = exchange_graph(&q, 10_000).unwrap();
        assert_eq!(g.count_maximal_chains(), enumerate_mgs(&q, None).unwrap().len() as u128, "{}", q.to_text());
    }
}

/// A colored sum of two small type-A quivers: each gluing source gets its own
/// set of targets, all targets distinct.
fn random_colored_sum<R: Rng>(rng: &mut R) -> (Quiver, Quiver, GluingSpec) {
    let n1 = rng.gen_range(1..=5);
    let n2 = rng.gen_range(1..=5);
    let q1 = random_type_a(rng, n1, 10);
    let q2 = random_type_a(rng, n2, 10);
    let colors = rng.gen_range(1..=n1.min(3));
    let mut sources: Vec<usize> = (1..=n1).collect();
    sources.shuffle(rng);
    let mut targets: Vec<usize> = (1..=n2).collect();
    targets.shuffle(rng);
    let mut pairs = Vec::new();
    let mut t = targets.into_iter();
    for &a in &sources[..colors] {
        for _ in 0..rng.gen_range(1..=2) {
            if let Some(b) = t.next() {
                pairs.push((a, b));
            }
        }
    }
    (q1, q2, GluingSpec::new(pairs))
}

/// Along any mutation sequence supported on the first summand, `x` sees all
/// targets of one color alike, and its frozen arrow to the color's source
/// agrees with them.
#[test]
fn junction_arrows_move_together() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let (q1, q2, g) = random_colored_sum(&mut rng);
        let q = direct_sum(&q1, &q2, &g).unwrap();
        let n1 = q1.n();
        let sources: BTreeSet<usize> = g.pairs.iter().map(|p| p.0).collect();
        let mut m = ExtMatrix::frame(&q);
        let mut mq = q.clone();
        for _ in 0..12 {
            let y = rng.gen_range(1..=n1);
            m = m.mutate(y).unwrap();
            mq = mq.mutate(y).unwrap();
            for x in 1..=n1 {
                for &a in &sources {
                    let bs: Vec<usize> = g.pairs.iter().filter(|p| p.0 == a).map(|p| n1 + p.1).collect();
                    let first = alpha(&mq, x, bs[0]).unwrap();
                    assert!(bs.iter().all(|&b| alpha(&mq, x, b).unwrap() == first));
                    assert_eq!(m.alpha(x, q.n() + a).unwrap(), first, "{}", q.to_text());
                }
            }
        }
    }
}

#[test]
fn colored_sums_concatenate() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let (q1, q2, g) = random_colored_sum(&mut rng);
        let q = direct_sum(&q1, &q2, &g).unwrap();
        let n1 = q1.n();
        let s1 = census(&q1, Some(20)).sequences.choose(&mut rng).unwrap().clone();
        let s2 = census(&q2, Some(20)).sequences.choose(&mut rng).unwrap().clone();
        let s2 = MutationSequence(s2.steps().iter().map(|v| v + n1).collect());
        let d = Decomposition::from_parts(&q, vec![(1..=n1).collect(), (n1 + 1..=q.n()).collect()]).unwrap();
        let whole = concat_mgs(&q, &d, &[s1, s2]).unwrap();
        assert!(is_maximal_green(&q, &whole).unwrap().is_maximal);
    }
}

#[test]
fn embeddings_are_reproducible_and_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let c = rng.gen_range(1..=12);
        let q = random_irreducible(&mut rng, c);
        for root in leaf_cycles(&cycle_tree(&q).unwrap()) {
            let e = embed(&q, Some(root)).unwrap();
            e.validate().unwrap();
            assert_eq!(embed(e.quiver(), Some(e.root())).unwrap(), e);
            for k in 1..=e.len() {
                assert!([2, 4].contains(&e.deg_y(k)));
                // the B part is shared along the path and with r(k)
                let b = mu_parts(&e, k).unwrap().b;
                for j in e.path(k).into_iter().chain([e.r(k)]) {
                    assert_eq!(mu_parts(&e, j).unwrap().b, b);
                }
                // μ_k only touches vertices of T_1 … T_k
                let prefix: BTreeSet<usize> = e.standard_order(k).into_iter().collect();
                assert!(mu(&e, k).unwrap().iter().all(|v| prefix.contains(v)));
            }
        }
    }
}

#[test]
fn associated_sequences_are_maximal_green() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let c = rng.gen_range(1..=12);
        let q = random_irreducible(&mut rng, c);
        let root = *leaf_cycles(&cycle_tree(&q).unwrap()).choose(&mut rng).unwrap();
        let e = embed(&q, Some(root)).unwrap();
        let s = associated_sequence(&e);
        let trace = verify_green(&q, &s).unwrap();
        // each D part is mutated at green vertices, read off positionally
        let bounds = part_bounds(&e);
        for k in 1..=e.len() {
            for pos in bounds[k]..bounds[k] + 2 {
                assert_eq!(trace.steps[pos].color, Color::Green);
            }
        }
        assert!(is_maximal_green(&q, &s).unwrap().is_maximal);
    }
}
