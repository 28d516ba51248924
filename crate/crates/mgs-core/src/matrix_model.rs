//! Closed-form model of the extended exchange matrix after each stage
//! `μ_k ∘ ⋯ ∘ μ₀` of the associated sequence, and its comparison with direct
//! mutation.
//!
//! After stage `k` the vertices split into `A` (the part `x₁, y_i, z_i` with
//! `i ≤ k`, all red), `B` (the `y, z` of the half-mutated cycles `𝔗_k` and of
//! `T_{k+1}`) and `C` (the `y, z` of the untouched cycles).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::assoc::{associated_sequence, mu_parts, part_bounds};
use crate::embedding::{EmbeddedQuiver, Role};
use crate::error::{Error, Result};
use crate::matrix::ExtMatrix;
use crate::perm_model::sigma_table;
use crate::quiver::Permutation;

/// How far the twig above a half-mutated cycle has been mutated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwigCase {
    /// Partially.
    Partial,
    /// Completely.
    Full,
    /// Not at all (`b(m) = k`).
    Untouched,
}

impl TwigCase {
    pub fn number(self) -> u8 {
        match self {
            TwigCase::Partial => 1,
            TwigCase::Full => 2,
            TwigCase::Untouched => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TkEntry {
    pub m: usize,
    /// The branching cycle with `z_b = x_m`.
    pub b: usize,
    pub twig: Vec<usize>,
    /// Number of twig cycles already mutated (`None` when zero).
    pub progress: Option<usize>,
    pub case: TwigCase,
}

/// Downward cycles hanging from the `z` of a branching cycle.
pub fn frak_t(e: &EmbeddedQuiver) -> Vec<usize> {
    (2..=e.len()).filter(|&m| matches!(e.parent(m), Some((b, Role::Z)) if e.is_branching(b))).collect()
}

/// Vertices mutated by `μ_k ∘ ⋯ ∘ μ₀`.
fn support_upto(e: &EmbeddedQuiver, k: usize) -> BTreeSet<usize> {
    let bounds = part_bounds(e);
    associated_sequence(e).steps()[..bounds[k + 1]].iter().copied().collect()
}

/// `𝔗_k`: members of `𝔗` whose `x` has been mutated by stage `k` but whose
/// `y` and `z` have not.
pub fn frak_t_k(e: &EmbeddedQuiver, k: usize) -> Result<Vec<TkEntry>> {
    if k > e.len() {
        return Err(Error::IndexOutOfRange(k));
    }
    let supp = support_upto(e, k);
    let mut out = Vec::new();
    for m in frak_t(e) {
        if !supp.contains(&e.x(m)) || supp.contains(&e.y(m)) || supp.contains(&e.z(m)) {
            continue;
        }
        let b = e.parent(m).expect("members of 𝔗 have parents").0;
        let twig = e.twig(m);
        let done = twig.iter().filter(|&&s| s <= k).count();
        let case = if done == 0 {
            TwigCase::Untouched
        } else if done == twig.len() {
            TwigCase::Full
        } else {
            TwigCase::Partial
        };
        out.push(TkEntry { m, b, twig, progress: (done > 0).then_some(done), case });
    }
    Ok(out)
}

/// The `𝔗_k`-matrix as a sparse antisymmetric relation on mutable vertices:
/// only the defining entries are stored, mirrors are implied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TkMatrix {
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl TkMatrix {
    fn put(&mut self, i: usize, j: usize, v: i64) {
        self.entries.insert((i, j), v);
    }

    /// Entry `(i, j)`, reading mirrors as negatives.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&(i, j)).copied().or_else(|| self.entries.get(&(j, i)).map(|v| -v)).unwrap_or(0)
    }
}

pub fn tk_matrix(e: &EmbeddedQuiver, k: usize) -> Result<TkMatrix> {
    let mut t = TkMatrix::default();
    for entry in frak_t_k(e, k)? {
        let TkEntry { m, b, ref twig, progress, case } = entry;
        // the printed entry reads v(b) in 𝒬_k; it is v(m) seen from 𝒬_k: the
        // z of the last mutated twig cycle, or x_{r(m)} before the twig starts
        t.put(e.y(m), e.v_restricted(m, k), 1);
        t.put(e.z(m), e.x(m), -1);
        match case {
            TwigCase::Partial => t.put(e.y(m), e.z(twig[progress.expect("partial progress")]), -1),
            TwigCase::Untouched => t.put(e.y(m), e.z(b + 1), -1),
            TwigCase::Full => {}
        }
    }
    let next = k + 1;
    if next <= e.len() {
        t.put(e.y(next), e.v(next), 1);
        if e.is_up(next) {
            // also for r(k + 1) = 1, reading v(0) as x₁
            t.put(e.z(next), e.v(k), -1);
        } else {
            t.put(e.z(next), e.x(next), -1);
        }
    }
    Ok(t)
}

/// Frozen part `c̃(v)` of a `B`-block row at stage `k`, indexed by vertex
/// (entry `0` unused).
pub fn c_tilde(e: &EmbeddedQuiver, k: usize, v: usize) -> Result<Vec<i64>> {
    let b_cycles = b_block_cycles(e, k)?;
    let n = e.quiver().n();
    let mut c = vec![0i64; n + 1];
    for i in b_cycles {
        if v == e.y(i) {
            return Ok(c);
        }
        if v == e.z(i) {
            let r = e.r(i);
            c[e.x(r)] += 1;
            if r > 1 {
                c[e.z(r - 1)] += 1;
            }
            for u in mu_parts(e, i)?.c {
                c[u] += 1;
            }
            return Ok(c);
        }
    }
    Err(Error::Precondition(format!("vertex {v} is not in the B block at stage {k}")))
}

fn b_block_cycles(e: &EmbeddedQuiver, k: usize) -> Result<Vec<usize>> {
    let mut cycles: Vec<usize> = frak_t_k(e, k)?.into_iter().map(|t| t.m).collect();
    if k < e.len() && !cycles.contains(&(k + 1)) {
        cycles.push(k + 1);
    }
    cycles.sort_unstable();
    Ok(cycles)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelMatrix {
    pub k: usize,
    /// Block index sets, each in standard order.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    /// The model in vertex coordinates (row `v`, column `v` or `n + v` for `v′`).
    pub matrix: ExtMatrix,
}

impl ModelMatrix {
    /// Rows and columns reordered as `A, B, C`, frozen columns likewise.
    pub fn blocked(&self) -> ExtMatrix {
        let order: Vec<usize> = self.a.iter().chain(&self.b).chain(&self.c).copied().collect();
        let n = self.matrix.n();
        let mut out = ExtMatrix::zeros(n, n);
        for (ri, &r) in order.iter().enumerate() {
            for (ci, &c) in order.iter().enumerate() {
                out.set(ri + 1, ci + 1, self.matrix.get(r, c));
                out.set(ri + 1, n + ci + 1, self.matrix.get(r, n + c));
            }
        }
        out
    }
}

pub fn model_matrix(e: &EmbeddedQuiver, k: usize) -> Result<ModelMatrix> {
    if k > e.len() {
        return Err(Error::IndexOutOfRange(k));
    }
    let q = e.quiver();
    let n = q.n();
    let pos = e.standard_positions();
    let by_pos = |mut v: Vec<usize>| {
        v.sort_by_key(|&u| pos[u]);
        v
    };
    let a = e.standard_order(k.max(1)).into_iter().take(1 + 2 * k).collect::<Vec<_>>();
    let b_cycles = b_block_cycles(e, k)?;
    let b = by_pos(b_cycles.iter().flat_map(|&i| [e.y(i), e.z(i)]).collect());
    let c_cycles: Vec<usize> = (k + 2..=e.len()).filter(|i| !b_cycles.contains(i)).collect();
    let c = by_pos(c_cycles.iter().flat_map(|&i| [e.y(i), e.z(i)]).collect());

    let sigma: Permutation = sigma_table(e).sigma[k].clone();
    let mut m = ExtMatrix::zeros(n, n);
    for &u in &a {
        for &w in &a {
            m.set(u, w, q.b(sigma.apply(u), sigma.apply(w)));
        }
        m.set(u, n + sigma.apply(u), -1);
    }
    for &u in &b {
        let ct = c_tilde(e, k, u)?;
        for f in 1..=n {
            m.set(u, n + f, ct[f]);
        }
        m.set(u, n + u, m.get(u, n + u) + 1);
    }
    for &u in &c {
        m.set(u, n + u, 1);
    }
    // arrows of the remaining cycles; their x's may sit in B
    let in_bc: BTreeSet<usize> = b.iter().chain(&c).copied().collect();
    for &i in &c_cycles {
        let (x, y, z) = (e.x(i), e.y(i), e.z(i));
        for (u, w) in [(x, y), (y, z), (z, x)] {
            if in_bc.contains(&u) && in_bc.contains(&w) {
                m.set(u, w, q.b(u, w));
                m.set(w, u, q.b(w, u));
            }
        }
    }
    for (&(i, j), &v) in &tk_matrix(e, k)?.entries {
        m.set(i, j, v);
        m.set(j, i, -v);
    }
    Ok(ModelMatrix { k, a, b, c, matrix: m })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub k: usize,
    /// First differing entry `(row, col, model, actual)`; `col > n` is frozen.
    pub diff: Option<(usize, usize, i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelReport {
    pub n: usize,
    pub stages: Vec<StageReport>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.stages.iter().all(|s| s.diff.is_none())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for st in &self.stages {
            match st.diff {
                None => {
                    let _ = writeln!(s, "k={} model==actual: true", st.k);
                }
                Some((r, c, model, actual)) => {
                    let col = if c > self.n { format!("{}'", c - self.n) } else { c.to_string() };
                    let _ = writeln!(s, "k={} model==actual: false", st.k);
                    let _ = writeln!(s, "({r}, {col}): model={model} actual={actual}");
                }
            }
        }
        s
    }
}

/// Compares `model_matrix(e, k)` with direct mutation of `[B | I]` for every
/// stage.
pub fn verify_model(e: &EmbeddedQuiver) -> Result<ModelReport> {
    let n = e.quiver().n();
    let seq = associated_sequence(e);
    let bounds = part_bounds(e);
    let mut state = ExtMatrix::frame(e.quiver());
    let mut stages = Vec::with_capacity(e.len() + 1);
    for k in 0..=e.len() {
        for &v in &seq.steps()[bounds[k]..bounds[k + 1]] {
            state.mutate_in_place(v);
        }
        let model = model_matrix(e, k)?.matrix;
        let mut diff = None;
        'rows: for i in 1..=n {
            for j in 1..=2 * n {
                if model.get(i, j) != state.get(i, j) {
                    diff = Some((i, j, model.get(i, j), state.get(i, j)));
                    break 'rows;
                }
            }
        }
        stages.push(StageReport { k, diff });
    }
    Ok(ModelReport { n, stages })
}
