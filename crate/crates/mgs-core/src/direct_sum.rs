//! Direct sums along forward gluing arrows, decomposition into summands, and
//! concatenation of per-summand maximal green sequences.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::green::is_maximal_green;
use crate::quiver::{check_vertex, MutationSequence, Quiver};

/// Gluing pairs `(a_i, b_i)`: `a_i` a vertex of the first summand, `b_i` a
/// vertex of the second (in its own numbering).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GluingSpec {
    pub pairs: Vec<(usize, usize)>,
}

impl GluingSpec {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        GluingSpec { pairs }
    }
}

fn check_gluing(n1: usize, n2: usize, g: &GluingSpec) -> Result<()> {
    for &(a, b) in &g.pairs {
        if a == 0 || a > n1 {
            return Err(Error::Gluing(format!("source {a} is not a vertex of the first summand")));
        }
        if b == 0 || b > n2 {
            return Err(Error::Gluing(format!("target {b} is not a vertex of the second summand")));
        }
    }
    Ok(())
}

/// `q1 ⊕_g q2`: vertices of `q2` are shifted by `q1.n()`, and each pair adds
/// an arrow `a → n1 + b`.
pub fn direct_sum(q1: &Quiver, q2: &Quiver, g: &GluingSpec) -> Result<Quiver> {
    let n1 = q1.n();
    check_gluing(n1, q2.n(), g)?;
    let mut arrows: Vec<(usize, usize, i64)> = q1.arrows().collect();
    arrows.extend(q2.arrows().map(|(i, j, m)| (i + n1, j + n1, m)));
    arrows.extend(g.pairs.iter().map(|&(a, b)| (a, b + n1, 1)));
    Quiver::from_weighted(n1 + q2.n(), &arrows)
}

/// Number of distinct sources `a_i`; fails if a pair repeats (a double arrow
/// across the junction is not a colored sum).
pub fn color_count(q1: &Quiver, q2: &Quiver, g: &GluingSpec) -> Result<usize> {
    check_gluing(q1.n(), q2.n(), g)?;
    let mut seen = BTreeSet::new();
    for &p in &g.pairs {
        if !seen.insert(p) {
            return Err(Error::Gluing(format!("pair ({}, {}) has multiplicity at least 2", p.0, p.1)));
        }
    }
    Ok(g.pairs.iter().map(|p| p.0).collect::<BTreeSet<_>>().len())
}

/// Signed arrow count between two vertices of a quiver.
pub fn alpha(q: &Quiver, x: usize, y: usize) -> Result<i64> {
    check_vertex(x, q.n())?;
    check_vertex(y, q.n())?;
    Ok(q.b(x, y))
}

/// A quiver admits no split `Q₁ ⊕ Q₂` iff it is strongly connected.
pub fn is_irreducible(q: &Quiver) -> bool {
    q.n() <= 1 || sccs(q, false).len() == 1
}

fn sccs(q: &Quiver, fuse_double: bool) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..q.n()).map(|_| g.add_node(())).collect();
    for (i, j, m) in q.arrows() {
        g.add_edge(nodes[i - 1], nodes[j - 1], ());
        if fuse_double && m >= 2 {
            g.add_edge(nodes[j - 1], nodes[i - 1], ());
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index() + 1).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Ordered summands with all cross arrows pointing forward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Sorted vertex lists.
    pub summands: Vec<Vec<usize>>,
    /// `(a, b, multiplicity)` for arrows between distinct summands.
    pub cross: Vec<(usize, usize, i64)>,
    /// `colors[p]`: distinct sources of arrows from summand `p` to later ones.
    pub colors: Vec<usize>,
}

impl Decomposition {
    /// Validates a user-chosen ordered partition: every cross arrow must point
    /// forward and carry multiplicity one.
    pub fn from_parts(q: &Quiver, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; q.n() + 1];
        for (p, part) in parts.iter().enumerate() {
            for &v in part {
                check_vertex(v, q.n())?;
                if owner[v] != usize::MAX {
                    return Err(Error::Gluing(format!("vertex {v} appears in two summands")));
                }
                owner[v] = p;
            }
        }
        if let Some(v) = (1..=q.n()).find(|&v| owner[v] == usize::MAX) {
            return Err(Error::Gluing(format!("vertex {v} is in no summand")));
        }
        let mut cross = Vec::new();
        for (a, b, m) in q.arrows() {
            if owner[a] == owner[b] {
                continue;
            }
            if owner[a] > owner[b] {
                return Err(Error::Gluing(format!("arrow {a}->{b} points backwards")));
            }
            if m >= 2 {
                return Err(Error::Gluing(format!("junction pair ({a}, {b}) has multiplicity {m}")));
            }
            cross.push((a, b, m));
        }
        let mut sources: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); parts.len()];
        for &(a, _, _) in &cross {
            sources[owner[a]].insert(a);
        }
        let summands = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        Ok(Decomposition { summands, cross, colors: sources.iter().map(|s| s.len()).collect() })
    }

    fn owner(&self, v: usize) -> usize {
        self.summands.iter().position(|s| s.contains(&v)).expect("vertex in some summand")
    }

    /// Color index (1-based) of each cross arrow: rank of its source among the
    /// distinct sources of its summand's junction.
    pub fn junction_colors(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = Vec::new();
        let mut by_part: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &(a, b, _) in &self.cross {
            by_part.entry(self.owner(a)).or_default().push((a, b));
        }
        for (_, mut arrows) in by_part {
            arrows.sort_unstable();
            let srcs: Vec<usize> = arrows.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
            for (a, b) in arrows {
                out.push((a, b, srcs.binary_search(&a).expect("source listed") + 1));
            }
        }
        out
    }

    pub fn to_text(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (p, part) in self.summands.iter().enumerate() {
            let verts: Vec<String> = part.iter().map(|v| v.to_string()).collect();
            let kind = if is_irreducible(&q.induced(part)) { "irreducible" } else { "fused" };
            s += &format!("summand {}: vertices {{{}}} {kind}\n", p + 1, verts.join(","));
        }
        for (a, b, c) in self.junction_colors() {
            s += &format!("junction {a} -> {b} color f{c}\n");
        }
        s
    }
}

/// Splits along strongly connected components, fusing components joined by a
/// junction pair of multiplicity ≥ 2; summands follow a topological order of
/// the condensation with the smallest minimum vertex first among ties.
pub fn decompose(q: &Quiver) -> Decomposition {
    let comps = sccs(q, true);
    let mut owner = vec![0usize; q.n() + 1];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            owner[v] = c;
        }
    }
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps.len()];
    let mut indeg = vec![0usize; comps.len()];
    for (a, b, _) in q.arrows() {
        let (ca, cb) = (owner[a], owner[b]);
        if ca != cb && succ[ca].insert(cb) {
            indeg[cb] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..comps.len()).filter(|&c| indeg[c] == 0).map(|c| Reverse((comps[c][0], c))).collect();
    let mut order = Vec::with_capacity(comps.len());
    while let Some(Reverse((_, c))) = heap.pop() {
        order.push(comps[c].clone());
        for &d in &succ[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                heap.push(Reverse((comps[d][0], d)));
            }
        }
    }
    Decomposition::from_parts(q, order).expect("condensation order is forward and colored")
}

/// Concatenates per-summand sequences (global vertex ids, first summand
/// applied first) after checking each is an MGS of its summand.
pub fn concat_mgs(q: &Quiver, d: &Decomposition, per_summand: &[MutationSequence]) -> Result<MutationSequence> {
    if per_summand.len() != d.summands.len() {
        return Err(Error::Precondition(format!("{} sequences for {} summands", per_summand.len(), d.summands.len())));
    }
    let mut out = Vec::new();
    for (p, (part, seq)) in d.summands.iter().zip(per_summand).enumerate() {
        let local: Vec<usize> = seq
            .steps()
            .iter()
            .map(|v| part.binary_search(v).map(|i| i + 1))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::NotMaximalGreen(format!("sequence {} leaves summand {}", p + 1, p + 1)))?;
        let report = is_maximal_green(&q.induced(part), &MutationSequence(local))?;
        if !report.is_maximal {
            return Err(Error::NotMaximalGreen(format!("sequence for summand {} is not an MGS", p + 1)));
        }
        out.extend_from_slice(seq.steps());
    }
    let seq = MutationSequence(out);
    if !is_maximal_green(q, &seq)?.is_maximal {
        return Err(Error::NotMaximalGreen("concatenation does not verify".into()));
    }
    Ok(seq)
}
