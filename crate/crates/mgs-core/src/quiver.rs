//! Quivers without loops or 2-cycles, permutations with a right action, and
//! mutation sequences stored in application order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A loop-free, 2-cycle-free multidigraph on the vertices `1..=n`.
///
/// Arrows are kept as net positive multiplicities on ordered pairs, so the
/// no-2-cycle invariant is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: BTreeMap<(usize, usize), i64>,
}

impl Quiver {
    pub fn new(n: usize) -> Self {
        Quiver { n, arrows: BTreeMap::new() }
    }

    /// Builds a quiver from `(tail, head)` pairs; repeated pairs add up.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = arrows.iter().map(|&(i, j)| (i, j, 1)).collect();
        Self::from_weighted(n, &weighted)
    }

    pub fn from_weighted(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(i, j, m) in arrows {
            check_vertex(i, n)?;
            check_vertex(j, n)?;
            if i == j {
                return Err(Error::Loop(i));
            }
            if m < 1 {
                return Err(Error::Precondition(format!("multiplicity {m} on {i}->{j}")));
            }
            *acc.entry((i, j)).or_insert(0) += m;
        }
        for &(i, j) in acc.keys() {
            if acc.contains_key(&(j, i)) {
                return Err(Error::TwoCycle(i.min(j), i.max(j)));
            }
        }
        Ok(Quiver { n, arrows: acc })
    }

    /// Builds the quiver of a skew-symmetric `n × n` matrix (0-based rows).
    pub fn from_b(b: &[Vec<i64>]) -> Self {
        let n = b.len();
        let mut arrows = BTreeMap::new();
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > 0 {
                    arrows.insert((i + 1, j + 1), v);
                }
            }
        }
        Quiver { n, arrows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arrows as `(tail, head, multiplicity)` in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.arrows.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Signed arrow count `#(i→j) − #(j→i)`.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.arrows.get(&(i, j)).copied().unwrap_or(0) - self.arrows.get(&(j, i)).copied().unwrap_or(0)
    }

    pub fn b_matrix(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0; self.n]; self.n];
        for (&(i, j), &m) in &self.arrows {
            b[i - 1][j - 1] = m;
            b[j - 1][i - 1] = -m;
        }
        b
    }

    /// Underlying simple graph: sorted neighbor lists, 1-based.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(i, j) in self.arrows.keys() {
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.range((i, 0)..(i + 1, 0)).map(|(&(_, j), _)| j)
    }

    /// Three-step mutation at `k`: add composites of 2-paths through `k`,
    /// reverse the arrows at `k`, cancel 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        check_vertex(k, self.n)?;
        let ins: Vec<(usize, i64)> =
            self.arrows.iter().filter(|(&(_, j), _)| j == k).map(|(&(i, _), &m)| (i, m)).collect();
        let outs: Vec<(usize, i64)> = self.successors(k).map(|j| (j, self.arrows[&(k, j)])).collect();

        let mut signed: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let mut add = |i: usize, j: usize, m: i64| {
            let (key, v) = if i < j { ((i, j), m) } else { ((j, i), -m) };
            let e = signed.entry(key).or_insert(0);
            *e = e.checked_add(v).expect("arrow multiplicity overflow");
        };
        for (&(i, j), &m) in &self.arrows {
            if i == k || j == k {
                add(j, i, m);
            } else {
                add(i, j, m);
            }
        }
        for &(i, mi) in &ins {
            for &(j, mj) in &outs {
                add(i, j, mi.checked_mul(mj).expect("arrow multiplicity overflow"));
            }
        }
        let mut arrows = BTreeMap::new();
        for ((i, j), v) in signed {
            match v.cmp(&0) {
                std::cmp::Ordering::Greater => {
                    arrows.insert((i, j), v);
                }
                std::cmp::Ordering::Less => {
                    arrows.insert((j, i), -v);
                }
                std::cmp::Ordering::Equal => {}
            }
        }
        Ok(Quiver { n: self.n, arrows })
    }

    /// Full subquiver on `vertices`, relabeled `1..` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let mut pos = vec![0usize; self.n + 1];
        for (p, &v) in vertices.iter().enumerate() {
            pos[v] = p + 1;
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|(&(i, j), _)| pos[i] > 0 && pos[j] > 0)
            .map(|(&(i, j), &m)| ((pos[i], pos[j]), m))
            .collect();
        Quiver { n: vertices.len(), arrows }
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        let arrows = self.arrows.iter().map(|(&(i, j), &m)| ((perm[i - 1], perm[j - 1]), m)).collect();
        Quiver { n: self.n, arrows }
    }

    /// Parses the line-based text format (`quiver N`, `arrow i j [mult]`, `#` comments).
    pub fn parse(text: &str) -> Result<Quiver> {
        let mut n: Option<usize> = None;
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let mut first_line: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (toks[0], n) {
                ("quiver", None) => {
                    if toks.len() != 2 {
                        return Err(err("expected `quiver <N>`".into()));
                    }
                    let v: usize = toks[1].parse().map_err(|_| err(format!("bad vertex count `{}`", toks[1])))?;
                    if v == 0 {
                        return Err(err("vertex count must be positive".into()));
                    }
                    n = Some(v);
                }
                ("quiver", Some(_)) => return Err(err("duplicate `quiver` directive".into())),
                ("arrow", None) => return Err(err("`arrow` before `quiver`".into())),
                ("arrow", Some(nv)) => {
                    if !(3..=4).contains(&toks.len()) {
                        return Err(err("expected `arrow <i> <j> [<mult>]`".into()));
                    }
                    let num = |s: &str| s.parse::<i64>().map_err(|_| err(format!("bad integer `{s}`")));
                    let i = num(toks[1])?;
                    let j = num(toks[2])?;
                    let m = if toks.len() == 4 { num(toks[3])? } else { 1 };
                    for v in [i, j] {
                        if v < 1 || v as usize > nv {
                            return Err(err(format!("vertex {v} out of range 1..={nv}")));
                        }
                    }
                    if m < 1 {
                        return Err(err(format!("multiplicity must be positive, got {m}")));
                    }
                    if i == j {
                        return Err(err(format!("loop at vertex {i}")));
                    }
                    let key = (i as usize, j as usize);
                    first_line.entry(key).or_insert(line_no);
                    let e = acc.entry(key).or_insert(0);
                    *e = e.checked_add(m).ok_or_else(|| err("multiplicity overflow".into()))?;
                }
                (other, _) => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `quiver <N>` directive".into() })?;
        for &(i, j) in acc.keys() {
            if i < j && acc.contains_key(&(j, i)) {
                let line = first_line[&(i, j)].max(first_line[&(j, i)]);
                return Err(Error::Parse { line, msg: format!("2-cycle between {i} and {j}") });
            }
        }
        Ok(Quiver { n, arrows: acc })
    }

    /// Normalized text form; `parse(to_text(q)) == q`.
    pub fn to_text(&self) -> String {
        let mut s = format!("quiver {}\n", self.n);
        for (i, j, m) in self.arrows() {
            if m == 1 {
                s += &format!("arrow {i} {j}\n");
            } else {
                s += &format!("arrow {i} {j} {m}\n");
            }
        }
        s
    }
}

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v == 0 || v > n {
        Err(Error::VertexOutOfRange(v, n))
    } else {
        Ok(())
    }
}

/// A bijection of `1..=n` acting on the right: `i·σ = σ.apply(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Precondition(format!("not a bijection: {images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// The cycle `(c₀ c₁ … c_{l−1})`: `c_i ↦ c_{i+1}`, last back to first.
    pub fn cycle(n: usize, elems: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for w in 0..elems.len() {
            p.images[elems[w] - 1] = elems[(w + 1) % elems.len()];
        }
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Right-action product `self · other`: apply `self` first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&v| other.apply(v)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len() + 1];
        let mut out = Vec::new();
        for start in 1..=self.images.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                c.push(v);
                v = self.apply(v);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Mutable vertices in application order (first applied first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationSequence(pub Vec<usize>);

impl MutationSequence {
    pub fn new(steps: Vec<usize>) -> Self {
        MutationSequence(steps)
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Accepts whitespace- or comma-separated vertex ids.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse { line: 0, msg: format!("bad vertex `{t}` in sequence") })
            })
            .collect::<Result<Vec<_>>>()
            .map(MutationSequence)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        self.0.iter().try_for_each(|&v| check_vertex(v, n))
    }

    /// Right-to-left composition `μ_{i_d}∘⋯∘μ_{i_1}`.
    pub fn paper_order(&self) -> String {
        let parts: Vec<String> = self.0.iter().rev().map(|v| format!("μ{v}")).collect();
        parts.join("∘")
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl From<Vec<usize>> for MutationSequence {
    fn from(v: Vec<usize>) -> Self {
        MutationSequence(v)
    }
}
