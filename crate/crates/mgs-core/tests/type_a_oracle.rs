//! Type-A recognition against the mutation class of the linear quiver,
//! generated by closure under mutation up to isomorphism.

mod common;

use common::{canonical_key, fixture, mutation_class, permutations, random_irreducible};
use mgs_core::type_a::{cycle_tree, is_type_a};
use mgs_core::Quiver;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn linear(n: usize) -> Quiver {
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    Quiver::from_arrows(n, &arrows).unwrap()
}

#[test]
fn class_sizes_match_known_counts() {
    // cluster-tilted algebras of type A_n counted up to isomorphism
    let want = [1, 4, 6, 19, 49];
    for (n, &count) in (2..=6).zip(&want) {
        let class = mutation_class(&linear(n));
        assert_eq!(class.len(), count, "A_{n}");
        for q in class.values() {
            assert!(is_type_a(q).verdict, "{}", q.to_text());
        }
    }
}

/// Adding an arrow between two vertices of a class member gives a quiver
/// that is of type A exactly when it lands back in the class.
#[test]
fn perturbations_agree_with_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rejected = 0;
    let mut trials = 0;
    for n in 3..=6 {
        let perms = permutations(n);
        let class = mutation_class(&linear(n));
        let members: Vec<&Quiver> = class.values().collect();
        while trials < 300 * (n - 2) {
            let q = members.choose(&mut rng).unwrap();
            let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            if i == j || q.b(j, i) > 0 {
                continue;
            }
            let mut arrows: Vec<(usize, usize, i64)> = q.arrows().collect();
            arrows.push((i, j, 1));
            let p = Quiver::from_weighted(n, &arrows).unwrap();
            let in_class = class.contains_key(&canonical_key(&p, &perms));
            let verdict = is_type_a(&p).verdict;
            assert_eq!(verdict, in_class, "{}", p.to_text());
            rejected += usize::from(!verdict);
            trials += 1;
        }
    }
    assert!(rejected >= 1000, "only {rejected} rejections in {trials} trials");
}

#[test]
fn cycle_tree_vertex_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut quivers: Vec<Quiver> =
        ["triangle", "zigzag7", "branched31", "outlets21", "outlets23", "twigs33"].into_iter().map(fixture).collect();
    quivers.extend((0..50).map(|_| {
        let c = rng.gen_range(1..15);
        random_irreducible(&mut rng, c)
    }));
    for q in quivers {
        let t = cycle_tree(&q).unwrap();
        assert_eq!(3 * t.cycles.len() - (t.cycles.len() - 1), q.n());
        assert_eq!(t.edges.len(), t.cycles.len() - 1);
    }
}
