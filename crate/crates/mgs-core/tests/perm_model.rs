mod common;

use common::{fixture, random_irreducible};
use mgs_core::assoc::{associated_sequence, part_bounds};
use mgs_core::embedding::embed;
use mgs_core::green::induced_permutation;
use mgs_core::perm_model::{check_sigma_identities, sigma_table, tau};
use mgs_core::type_a::{cycle_tree, leaf_cycles};
use mgs_core::{MutationSequence, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIXTURES: [&str; 6] = ["triangle", "zigzag7", "branched31", "outlets21", "outlets23", "twigs33"];

#[test]
fn tau_of_a_printed_part() {
    let e = embed(&fixture("branched31"), None).unwrap();
    assert_eq!(tau(&e, 5).unwrap(), Permutation::cycle(31, &[11, 4, 8]));
}

#[test]
fn identities_hold_on_fixtures() {
    for name in FIXTURES {
        let q = fixture(name);
        for root in leaf_cycles(&cycle_tree(&q).unwrap()) {
            let e = embed(&q, Some(root)).unwrap();
            let report = check_sigma_identities(&e);
            println!("{name} {root:?}\n{}", report.to_text());
            assert!(report.ok(), "{name} {root:?}\n{}", report.to_text());
        }
    }
}

/// σ_k is the permutation induced by the prefix μ_k ∘ ⋯ ∘ μ₀ on the full
/// subquiver of T_1 … T_k.
#[test]
fn sigma_prefixes_match_ground_truth() {
    for name in FIXTURES {
        let q = fixture(name);
        for root in leaf_cycles(&cycle_tree(&q).unwrap()) {
            let e = embed(&q, Some(root)).unwrap();
            let table = sigma_table(&e);
            let s = associated_sequence(&e);
            let bounds = part_bounds(&e);
            for k in 1..=e.len() {
                let mut verts: Vec<usize> = e.standard_order(k);
                verts.sort_unstable();
                let local = |v: usize| verts.binary_search(&v).unwrap() + 1;
                let sub = e.quiver().induced(&verts);
                let prefix = MutationSequence(s.steps()[..bounds[k + 1]].iter().map(|&v| local(v)).collect());
                let got = induced_permutation(&sub, &prefix).unwrap();
                for &v in &verts {
                    assert_eq!(local(table.sigma[k].apply(v)), got.apply(local(v)), "{name} k={k} v={v}");
                }
            }
        }
    }
}

/// When both y and z of a path cycle have degree 4 but the y-child carries no
/// downward cycle, y·σ⁻¹_{k−1} need not be an x-vertex.
#[test]
fn y_inverse_outside_the_x_k_case() {
    let e = embed(&fixture("twigs33"), Some([9, 32, 33])).unwrap();
    assert_eq!(e.path(13), vec![13, 6, 2]);
    assert_eq!((e.degree_within(e.y(6), 13), e.degree_within(e.z(6), 13)), (4, 4));
    assert!(e.cycle(7).z_child.is_none());
    let inv = sigma_table(&e).sigma[12].inverse();
    let got = inv.apply(e.y(6));
    assert_eq!(got, e.z(5));
    assert!((1..=e.len()).all(|j| e.x(j) != got));
}

#[test]
fn random_embeddings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total = 0;
    for _ in 0..150 {
        let cycles = 1 + (rand::Rng::gen_range(&mut rng, 0..12));
        let q = random_irreducible(&mut rng, cycles);
        for root in leaf_cycles(&cycle_tree(&q).unwrap()) {
            let e = embed(&q, Some(root)).unwrap();
            let want = induced_permutation(&q, &associated_sequence(&e)).unwrap();
            assert_eq!(sigma_table(&e).sigma[e.len()], want);
            let report = check_sigma_identities(&e);
            assert!(report.ok(), "{}\n{}", q.to_text(), report.to_text());
            total += 1;
        }
    }
    assert!(total >= 150);
}
