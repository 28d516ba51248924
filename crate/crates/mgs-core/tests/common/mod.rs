#![allow(dead_code)]

use std::path::PathBuf;

use mgs_core::Quiver;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.quiver"))
}

pub fn fixture(name: &str) -> Quiver {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    Quiver::parse(&text).expect("fixture parses")
}

/// Irreducible type-A quiver with `cycles` oriented 3-cycles, grown by
/// attaching each new cycle at a vertex that lies on exactly one cycle, then
/// randomly relabeled.
pub fn random_irreducible<R: Rng>(rng: &mut R, cycles: usize) -> Quiver {
    let mut arrows = vec![(1, 2), (2, 3), (3, 1)];
    let mut on_cycles = vec![0usize, 1, 1, 1];
    let mut n = 3;
    for _ in 1..cycles {
        let free: Vec<usize> = (1..=n).filter(|&v| on_cycles[v] == 1).collect();
        let v = *free.choose(rng).expect("a tree of cycles always has a free vertex");
        let (a, b) = (n + 1, n + 2);
        arrows.extend([(v, a), (a, b), (b, v)]);
        on_cycles[v] += 1;
        on_cycles.extend([1, 1]);
        n += 2;
    }
    relabel_randomly(rng, &Quiver::from_arrows(n, &arrows).expect("valid"))
}

pub fn relabel_randomly<R: Rng>(rng: &mut R, q: &Quiver) -> Quiver {
    let mut perm: Vec<usize> = (1..=q.n()).collect();
    perm.shuffle(rng);
    q.relabel(&perm)
}

/// Random orientation of the path `1 - 2 - … - n`.
pub fn random_linear<R: Rng>(rng: &mut R, n: usize) -> Quiver {
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| if rng.gen_bool(0.5) { (i, i + 1) } else { (i + 1, i) }).collect();
    Quiver::from_arrows(n, &arrows).expect("valid")
}

/// A type-A quiver reached by a random walk in the mutation class of `A_n`.
pub fn random_type_a<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Quiver {
    let mut q = random_linear(rng, n);
    for _ in 0..steps {
        q = q.mutate(rng.gen_range(1..=n)).expect("in range");
    }
    q
}

/// All permutations of `1..=n` as image vectors.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, cur, out);
        let j = if k % 2 == 0 { i } else { 0 };
        cur.swap(j, k - 1);
    }
    heap(k - 1, cur, out);
}

/// Lexicographically least exchange matrix over all relabelings; equal keys
/// mean isomorphic quivers. Exhaustive, so only for small `n`.
pub fn canonical_key(q: &Quiver, perms: &[Vec<usize>]) -> Vec<i64> {
    perms.iter().map(|p| q.relabel(p).b_matrix().concat()).min().expect("at least one permutation")
}

/// Isomorphism classes of the mutation class of `q`, by closure under
/// mutation.
pub fn mutation_class(q: &Quiver) -> std::collections::BTreeMap<Vec<i64>, Quiver> {
    let perms = permutations(q.n());
    let mut seen = std::collections::BTreeMap::new();
    let mut stack = vec![q.clone()];
    seen.insert(canonical_key(q, &perms), q.clone());
    while let Some(p) = stack.pop() {
        for k in 1..=p.n() {
            let m = p.mutate(k).expect("in range");
            let key = canonical_key(&m, &perms);
            if !seen.contains_key(&key) {
                seen.insert(key, m.clone());
                stack.push(m);
            }
        }
    }
    seen
}
