//! Structural recognition of type-A quivers and the tree of 3-cycles of an
//! irreducible one.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::direct_sum::is_irreducible;
use crate::error::{Error, Result};
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    /// `"i"` … `"iv"`.
    pub id: &'static str,
    pub description: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAReport {
    pub verdict: bool,
    pub conditions: Vec<ConditionResult>,
}

/// Oriented 3-cycles `a→b→c→a`, each rotated to start at its smallest vertex.
pub fn oriented_triangles(q: &Quiver) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b, _) in q.arrows() {
        for c in q.successors(b) {
            if q.b(c, a) > 0 && a < b && a < c {
                out.push([a, b, c]);
            }
        }
    }
    out.sort_unstable();
    out
}

fn undirected_triangles(adj: &[Vec<usize>]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for u in 1..adj.len() {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            for &w in adj[v].iter().filter(|&&w| w > v) {
                if adj[u].binary_search(&w).is_ok() {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

/// Rotates to start at the smallest vertex, then picks the direction whose
/// second vertex is smaller.
fn fmt_cycle(c: &[usize]) -> String {
    let start = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
    let mut v: Vec<usize> = c[start..].iter().chain(&c[..start]).copied().collect();
    if v.len() > 2 && v[v.len() - 1] < v[1] {
        v[1..].reverse();
    }
    let parts: Vec<String> = v.iter().map(|v| v.to_string()).collect();
    format!("cycle {}", parts.join("-"))
}

fn condition_i(q: &Quiver, adj: &[Vec<usize>], tris: &[[usize; 3]]) -> Option<String> {
    if let Some((a, b, m)) = q.arrows().find(|&(_, _, m)| m >= 2) {
        return Some(format!("double arrow {a}->{b} (multiplicity {m})"));
    }
    let mut on_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for t in tris {
        for (a, b, c) in [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[2], t[0])] {
            on_edge.entry((a, b)).or_default().push(c);
        }
    }
    for (&(a, b), apexes) in &on_edge {
        if apexes.len() >= 2 {
            return Some(fmt_cycle(&[a, apexes[0], b, apexes[1]]));
        }
    }
    for t in tris {
        let oriented = (q.b(t[0], t[1]) > 0 && q.b(t[1], t[2]) > 0 && q.b(t[2], t[0]) > 0)
            || (q.b(t[1], t[0]) > 0 && q.b(t[2], t[1]) > 0 && q.b(t[0], t[2]) > 0);
        if !oriented {
            return Some(format!("{} is not oriented", fmt_cycle(t)));
        }
    }
    // Edge-disjoint triangles are independent in the cycle space; if they do
    // not span it, some fundamental cycle of a BFS forest is longer than 3.
    let n = q.n();
    let edges = q.arrow_count();
    let mut parent = vec![0usize; n + 1];
    let mut depth = vec![usize::MAX; n + 1];
    let mut components = 0;
    for s in 1..=n {
        if depth[s] != usize::MAX {
            continue;
        }
        components += 1;
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
    }
    if tris.len() + n >= edges + components {
        return None;
    }
    for u in 1..=n {
        for &w in adj[u].iter().filter(|&&w| w > u) {
            if parent[w] == u || parent[u] == w {
                continue;
            }
            let (mut a, mut b) = (u, w);
            let (mut left, mut right) = (vec![a], vec![b]);
            while a != b {
                if depth[a] >= depth[b] {
                    a = parent[a];
                    left.push(a);
                } else {
                    b = parent[b];
                    right.push(b);
                }
            }
            right.pop();
            right.reverse();
            left.extend(right);
            if left.len() > 3 {
                return Some(fmt_cycle(&left));
            }
        }
    }
    None
}

/// Checks the four local conditions characterizing type-A quivers:
/// (i) every cycle of the underlying graph is an oriented 3-cycle,
/// (ii) every vertex has at most four neighbors,
/// (iii) a vertex with four neighbors lies on two 3-cycles,
/// (iv) a vertex with three neighbors lies on exactly one 3-cycle.
pub fn is_type_a(q: &Quiver) -> TypeAReport {
    let adj = q.neighbors();
    let tris = undirected_triangles(&adj);
    let mut per_vertex = vec![0usize; q.n() + 1];
    for t in &tris {
        for &v in t {
            per_vertex[v] += 1;
        }
    }
    let first_vertex = |pred: &dyn Fn(usize) -> bool| (1..=q.n()).find(|&v| pred(v)).map(|v| format!("vertex {v}"));
    let w1 = condition_i(q, &adj, &tris);
    let w2 = first_vertex(&|v| adj[v].len() > 4);
    let w3 = first_vertex(&|v| adj[v].len() == 4 && per_vertex[v] != 2);
    let w4 = first_vertex(&|v| adj[v].len() == 3 && per_vertex[v] != 1);
    let mk = |id, description, witness: Option<String>| ConditionResult {
        id,
        description,
        holds: witness.is_none(),
        witness,
    };
    let conditions = vec![
        mk("i", "all cycles are oriented 3-cycles", w1),
        mk("ii", "at most four neighbors", w2),
        mk("iii", "degree-4 vertices lie on two 3-cycles", w3),
        mk("iv", "degree-3 vertices lie on one 3-cycle", w4),
    ];
    TypeAReport { verdict: conditions.iter().all(|c| c.holds), conditions }
}

impl TypeAReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.conditions {
            let status = if c.holds { "PASS" } else { "FAIL" };
            s += &format!("condition ({}) {}: {}", c.id, c.description, status);
            if let Some(w) = &c.witness {
                s += &format!(" [{w}]");
            }
            s.push('\n');
        }
        s += &format!("type A: {}\n", self.verdict);
        s
    }
}

/// The oriented 3-cycles of an irreducible type-A quiver and the pairs of
/// cycles sharing a vertex. For such quivers every arrow lies on exactly one
/// 3-cycle, so there are no dangling arrows or isolated vertices to record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTree {
    /// `[a, b, c]` with arrows `a→b→c→a`, `a` the smallest vertex; sorted.
    pub cycles: Vec<[usize; 3]>,
    /// `(i, j, v)`: cycles `i < j` (0-based) share vertex `v`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CycleTree {
    pub fn degree(&self, c: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == c || e.1 == c).count()
    }

    pub fn find(&self, vertices: [usize; 3]) -> Option<usize> {
        let mut want = vertices;
        want.sort_unstable();
        self.cycles.iter().position(|c| {
            let mut s = *c;
            s.sort_unstable();
            s == want
        })
    }
}

pub fn cycle_tree(q: &Quiver) -> Result<CycleTree> {
    let report = is_type_a(q);
    if !report.verdict {
        let bad = report.conditions.iter().find(|c| !c.holds).expect("a failing condition");
        return Err(Error::NotTypeA(format!(
            "condition ({}) fails: {}",
            bad.id,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    if !is_irreducible(q) {
        return Err(Error::NotIrreducible("the quiver splits as a direct sum".into()));
    }
    let cycles = oriented_triangles(q);
    if cycles.is_empty() {
        return Err(Error::NoThreeCycle);
    }
    let mut covered = BTreeSet::new();
    for c in &cycles {
        covered.extend([(c[0], c[1]), (c[1], c[2]), (c[2], c[0])]);
    }
    if let Some((a, b, _)) = q.arrows().find(|&(a, b, _)| !covered.contains(&(a, b))) {
        return Err(Error::NotIrreducible(format!("arrow {a}->{b} lies on no 3-cycle")));
    }
    let mut edges = Vec::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if let Some(&v) = cycles[i].iter().find(|v| cycles[j].contains(v)) {
                edges.push((i, j, v));
            }
        }
    }
    Ok(CycleTree { cycles, edges })
}

/// Cycles of tree degree at most one, sorted by smallest vertex.
pub fn leaf_cycles(t: &CycleTree) -> Vec<[usize; 3]> {
    (0..t.cycles.len()).filter(|&c| t.degree(c) <= 1).map(|c| t.cycles[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::from_arrows(n, arrows).unwrap()
    }

    #[test]
    fn triangle_is_type_a() {
        let t = q(3, &[(1, 2), (2, 3), (3, 1)]);
        assert!(is_type_a(&t).verdict);
        let tree = cycle_tree(&t).unwrap();
        assert_eq!(tree.cycles, vec![[1, 2, 3]]);
        assert!(tree.edges.is_empty());
        assert_eq!(leaf_cycles(&tree), vec![[1, 2, 3]]);
    }

    #[test]
    fn four_cycle_fails_condition_one() {
        let r = is_type_a(&q(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]));
        assert!(!r.verdict);
        assert!(!r.conditions[0].holds);
        assert_eq!(r.conditions[0].witness.as_deref(), Some("cycle 1-2-3-4"));
    }

    #[test]
    fn acyclic_triangle_fails() {
        let r = is_type_a(&q(3, &[(1, 2), (2, 3), (1, 3)]));
        assert!(r.conditions[0].witness.as_deref().unwrap().contains("not oriented"));
    }

    #[test]
    fn two_triangles_on_an_edge() {
        let r = is_type_a(&q(4, &[(1, 2), (2, 3), (3, 1), (2, 4), (4, 1)]));
        assert!(!r.conditions[0].holds);
    }

    #[test]
    fn double_arrow_and_star() {
        let r = is_type_a(&Quiver::from_weighted(2, &[(1, 2, 2)]).unwrap());
        assert!(!r.conditions[0].holds);
        let star = q(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]);
        let r = is_type_a(&star);
        assert!(r.conditions[0].holds && r.conditions[1].holds);
        assert!(!r.conditions[2].holds);
        let claw = q(4, &[(1, 2), (1, 3), (1, 4)]);
        assert!(!is_type_a(&claw).conditions[3].holds);
    }

    #[test]
    fn cycle_tree_rejects_reducible_input() {
        assert!(matches!(cycle_tree(&q(3, &[(1, 2), (2, 3)])), Err(Error::NotIrreducible(_))));
        assert_eq!(cycle_tree(&Quiver::new(1)), Err(Error::NoThreeCycle));
    }
}
