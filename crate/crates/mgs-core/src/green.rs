//! Green sequences: verification, induced permutations, exhaustive search and
//! the oriented exchange graph.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::{Color, ExtMatrix};
use crate::quiver::{MutationSequence, Permutation, Quiver};
use crate::type_a::is_type_a;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based position in the sequence.
    pub index: usize,
    pub vertex: usize,
    /// Color of `vertex` just before it was mutated.
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    AllGreen,
    /// First step (1-based) that mutates a red vertex.
    Violation {
        step: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenTrace {
    pub steps: Vec<StepRecord>,
    pub verdict: Verdict,
    /// Colors of the last state reached (before the violating step, if any).
    pub final_colors: Vec<Color>,
}

impl GreenTrace {
    pub fn all_green(&self) -> bool {
        self.verdict == Verdict::AllGreen
    }
}

/// Applies `s` to `start`, recording colors and stopping at the first red step.
pub fn trace_from(start: &ExtMatrix, s: &MutationSequence) -> Result<(GreenTrace, ExtMatrix)> {
    s.validate(start.n())?;
    let mut state = start.clone();
    let mut steps = Vec::with_capacity(s.len());
    for (idx, &k) in s.steps().iter().enumerate() {
        let color = state.vertex_color(k)?;
        steps.push(StepRecord { index: idx + 1, vertex: k, color });
        if color == Color::Red {
            let trace =
                GreenTrace { steps, verdict: Verdict::Violation { step: idx + 1 }, final_colors: state.colors()? };
            return Ok((trace, state));
        }
        state.mutate_in_place(k);
    }
    let trace = GreenTrace { steps, verdict: Verdict::AllGreen, final_colors: state.colors()? };
    Ok((trace, state))
}

pub fn verify_green(q: &Quiver, s: &MutationSequence) -> Result<GreenTrace> {
    trace_from(&ExtMatrix::frame(q), s).map(|(t, _)| t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgsReport {
    pub is_green_sequence: bool,
    pub is_maximal: bool,
    /// Present iff `is_maximal`.
    pub induced: Option<Permutation>,
}

pub fn is_maximal_green(q: &Quiver, s: &MutationSequence) -> Result<MgsReport> {
    let (trace, state) = trace_from(&ExtMatrix::frame(q), s)?;
    if !trace.all_green() {
        return Ok(MgsReport { is_green_sequence: false, is_maximal: false, induced: None });
    }
    let induced = state.frozen_permutation();
    Ok(MgsReport { is_green_sequence: true, is_maximal: induced.is_some(), induced })
}

/// `σ` with final matrix `[B_Q σ | −M(σ)]`, where `(Bσ)_{ij} = B_{i·σ, j·σ}`.
pub fn induced_permutation(q: &Quiver, s: &MutationSequence) -> Result<Permutation> {
    let (trace, state) = trace_from(&ExtMatrix::frame(q), s)?;
    if let Verdict::Violation { step } = trace.verdict {
        return Err(Error::NotMaximalGreen(format!("step {step} mutates a red vertex")));
    }
    let sigma = state
        .frozen_permutation()
        .ok_or_else(|| Error::NotMaximalGreen("final frozen block is not a negated permutation matrix".into()))?;
    for i in 1..=q.n() {
        for j in 1..=q.n() {
            if state.get(i, j) != q.b(sigma.apply(i), sigma.apply(j)) {
                return Err(Error::NotMaximalGreen(format!("exchangeable block differs from B·σ at ({i}, {j})")));
            }
        }
    }
    Ok(sigma)
}

/// Mutates at sources, smallest index first.
pub fn acyclic_mgs(q: &Quiver) -> Result<MutationSequence> {
    let n = q.n();
    let mut indeg = vec![0usize; n + 1];
    for (_, j, _) in q.arrows() {
        indeg[j] += 1;
    }
    let mut done = vec![false; n + 1];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (1..=n).find(|&v| !done[v] && indeg[v] == 0);
        let Some(v) = next else {
            let stuck = (1..=n).find(|&v| !done[v]).unwrap_or(1);
            return Err(Error::Cyclic(stuck));
        };
        done[v] = true;
        out.push(v);
        for w in q.successors(v) {
            indeg[w] -= 1;
        }
    }
    Ok(MutationSequence(out))
}

/// Result of a possibly truncated search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub sequences: Vec<MutationSequence>,
    /// Some branch was still green at the length bound.
    pub truncated: bool,
}

/// Every maximal green sequence, sorted lexicographically. Without a bound the
/// quiver must be of type A (finite type, so the search terminates).
pub fn enumerate_mgs(q: &Quiver, max_len: Option<usize>) -> Result<Vec<MutationSequence>> {
    if max_len.is_none() && !is_type_a(q).verdict {
        return Err(Error::MissingDepthGuard);
    }
    let census = census(q, max_len);
    if census.truncated {
        return Err(Error::DepthExceeded { max_len: max_len.unwrap_or(0), found: census.sequences.len() });
    }
    Ok(census.sequences)
}

/// Depth-first search over green moves; never fails, reports truncation.
pub fn census(q: &Quiver, max_len: Option<usize>) -> Census {
    let limit = max_len.unwrap_or(usize::MAX);
    let root = ExtMatrix::frame(q);
    let first = greens(&root);
    let parts: Vec<(Vec<Vec<usize>>, bool)> = first
        .par_iter()
        .map(|&k| {
            let mut found = Vec::new();
            let mut truncated = false;
            if limit == 0 {
                return (found, true);
            }
            let mut state = root.clone();
            state.mutate_in_place(k);
            let mut path = vec![k];
            dfs(&mut state, &mut path, limit, &mut found, &mut truncated);
            (found, truncated)
        })
        .collect();
    let mut sequences: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    if first.is_empty() {
        sequences.push(Vec::new());
    }
    for (f, t) in parts {
        sequences.extend(f);
        truncated |= t;
    }
    sequences.sort();
    Census { sequences: sequences.into_iter().map(MutationSequence).collect(), truncated }
}

fn greens(e: &ExtMatrix) -> Vec<usize> {
    e.green_vertices().expect("sign-coherence violated during search")
}

fn dfs(state: &mut ExtMatrix, path: &mut Vec<usize>, limit: usize, found: &mut Vec<Vec<usize>>, truncated: &mut bool) {
    let g = greens(state);
    if g.is_empty() {
        found.push(path.clone());
        return;
    }
    if path.len() >= limit {
        *truncated = true;
        return;
    }
    for k in g {
        state.mutate_in_place(k);
        path.push(k);
        dfs(state, path, limit, found, truncated);
        path.pop();
        state.mutate_in_place(k);
    }
}

/// Green-move closure of `frame(q)`. Nodes are extended matrices taken up to
/// simultaneous relabeling of mutable vertices (rows sorted by c-vector), so
/// each node is one seed; edges carry the mutated row of the source node.
#[derive(Clone, Debug)]
pub struct ExchangeGraphSlice {
    pub nodes: Vec<ExtMatrix>,
    pub edges: Vec<(usize, usize, usize)>,
    pub source: usize,
    pub sinks: Vec<usize>,
}

fn canonical(e: &ExtMatrix) -> ExtMatrix {
    let mut order: Vec<usize> = (1..=e.n()).collect();
    order.sort_by(|&a, &b| e.c_vector(a).cmp(e.c_vector(b)));
    e.permute_mutable(&order)
}

pub fn exchange_graph(q: &Quiver, max_nodes: usize) -> Result<ExchangeGraphSlice> {
    let start = canonical(&ExtMatrix::frame(q));
    let mut index: HashMap<ExtMatrix, usize> = HashMap::new();
    let mut nodes = vec![start.clone()];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut sinks = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        let g = greens(&nodes[head]);
        if g.is_empty() {
            sinks.push(head);
        }
        for k in g {
            let next = canonical(&nodes[head].mutate(k)?);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if nodes.len() >= max_nodes {
                        return Err(Error::NodeBound(max_nodes));
                    }
                    nodes.push(next.clone());
                    index.insert(next, nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            edges.push((head, k, id));
        }
        head += 1;
    }
    Ok(ExchangeGraphSlice { nodes, edges, source: 0, sinks })
}

impl ExchangeGraphSlice {
    /// Number of source-to-sink directed paths.
    pub fn count_maximal_chains(&self) -> u128 {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for &(a, _, b) in &self.edges {
            out[a].push(b);
        }
        let mut memo: Vec<Option<u128>> = vec![None; self.nodes.len()];
        // Reverse BFS order is not necessarily topological; use explicit DFS.
        let mut stack = vec![(self.source, false)];
        while let Some((v, expanded)) = stack.pop() {
            if memo[v].is_some() {
                continue;
            }
            if out[v].is_empty() {
                memo[v] = Some(1);
            } else if expanded {
                let total = out[v].iter().map(|&w| memo[w].expect("successor resolved")).sum();
                memo[v] = Some(total);
            } else {
                stack.push((v, true));
                for &w in &out[v] {
                    if memo[w].is_none() {
                        stack.push((w, false));
                    }
                }
            }
        }
        memo[self.source].unwrap_or(0)
    }

    /// Stable 16-hex-digit content hash of node `i`.
    pub fn node_hash(&self, i: usize) -> String {
        let digest = Sha256::digest(self.nodes[i].to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph exchange_graph {\n");
        for i in 0..self.nodes.len() {
            let h = self.node_hash(i);
            let mut label = h.clone();
            if i == self.source {
                label += "\\nsource";
            }
            if self.sinks.contains(&i) {
                label += "\\nsink";
            }
            let _ = writeln!(s, "  \"{h}\" [label=\"{label}\"];");
        }
        for &(a, k, b) in &self.edges {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{k}\"];", self.node_hash(a), self.node_hash(b));
        }
        s.push_str("}\n");
        s
    }
}
