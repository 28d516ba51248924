//! Rooted planar embedding of an irreducible type-A quiver as a labeled tree
//! of 3-cycles.
//!
//! Every cycle is oriented `x → y → z → x`. A child cycle shares its `x` with
//! the parent's `y` (the child points up) or the parent's `z` (it points
//! down). Labels come from a depth-first walk that finishes the subtree at `y`
//! before the one at `z`: continuing a branch is preferred, and new branches
//! are opened at the most northeast live outlet first.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::type_a::{cycle_tree, leaf_cycles, CycleTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedCycle {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub orientation: Orientation,
    /// Parent label and the parent's vertex (`Y` or `Z`) this cycle hangs from.
    pub parent: Option<(usize, Role)>,
    pub y_child: Option<usize>,
    pub z_child: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    Leaf,
    Branching,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Consecutive labels.
    pub labels: Vec<usize>,
    pub terminal: Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedQuiver {
    quiver: Quiver,
    cycles: Vec<EmbeddedCycle>,
}

/// The leaf cycle with the smallest minimum vertex.
pub fn default_root(q: &Quiver) -> Result<[usize; 3]> {
    let tree = cycle_tree(q)?;
    Ok(leaf_cycles(&tree)[0])
}

pub fn embed(q: &Quiver, root: Option<[usize; 3]>) -> Result<EmbeddedQuiver> {
    let tree = cycle_tree(q)?;
    let root_idx = match root {
        Some(r) => tree.find(r).ok_or(Error::BadRoot(r))?,
        None => tree.find(leaf_cycles(&tree)[0]).expect("leaf is a cycle"),
    };
    if tree.degree(root_idx) > 1 {
        return Err(Error::BadRoot(root.unwrap_or(tree.cycles[root_idx])));
    }
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); q.n() + 1];
    for (c, cyc) in tree.cycles.iter().enumerate() {
        for &v in cyc {
            at_vertex[v].push(c);
        }
    }
    let succ = |c: usize, v: usize| {
        let t = tree.cycles[c];
        let i = t.iter().position(|&u| u == v).expect("vertex on cycle");
        t[(i + 1) % 3]
    };
    let (x1, y1, z1) = if tree.cycles.len() == 1 {
        let x = tree.cycles[0][0];
        (x, succ(0, x), succ(0, succ(0, x)))
    } else {
        let (_, _, shared) = *tree.edges.iter().find(|e| e.0 == root_idx || e.1 == root_idx).expect("leaf edge");
        let x = succ(root_idx, shared);
        (x, succ(root_idx, x), shared)
    };

    struct Walk<'a> {
        tree: &'a CycleTree,
        at_vertex: &'a [Vec<usize>],
        cycles: Vec<EmbeddedCycle>,
    }
    impl Walk<'_> {
        fn other_cycle(&self, v: usize, not: usize) -> Option<usize> {
            self.at_vertex[v].iter().copied().find(|&c| c != not)
        }
        fn visit(&mut self, c: usize, x: usize, orientation: Orientation, parent: Option<(usize, Role)>) -> usize {
            let t = self.tree.cycles[c];
            let i = t.iter().position(|&u| u == x).expect("x on cycle");
            let (y, z) = (t[(i + 1) % 3], t[(i + 2) % 3]);
            self.cycles.push(EmbeddedCycle { x, y, z, orientation, parent, y_child: None, z_child: None });
            let label = self.cycles.len();
            if let Some(child) = self.other_cycle(y, c) {
                let l = self.visit(child, y, Orientation::Up, Some((label, Role::Y)));
                self.cycles[label - 1].y_child = Some(l);
            }
            if let Some(child) = self.other_cycle(z, c) {
                let l = self.visit(child, z, Orientation::Down, Some((label, Role::Z)));
                self.cycles[label - 1].z_child = Some(l);
            }
            label
        }
    }
    let mut walk = Walk { tree: &tree, at_vertex: &at_vertex, cycles: Vec::with_capacity(tree.cycles.len()) };
    walk.visit(root_idx, x1, Orientation::Up, None);
    debug_assert_eq!(walk.cycles[0].y, y1);
    debug_assert_eq!(walk.cycles[0].z, z1);
    let e = EmbeddedQuiver { quiver: q.clone(), cycles: walk.cycles };
    e.validate()?;
    Ok(e)
}

impl EmbeddedQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Number of 3-cycles.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycle(&self, k: usize) -> &EmbeddedCycle {
        &self.cycles[k - 1]
    }

    pub fn cycles(&self) -> &[EmbeddedCycle] {
        &self.cycles
    }

    pub fn x(&self, k: usize) -> usize {
        self.cycles[k - 1].x
    }

    pub fn y(&self, k: usize) -> usize {
        self.cycles[k - 1].y
    }

    pub fn z(&self, k: usize) -> usize {
        self.cycles[k - 1].z
    }

    pub fn is_up(&self, k: usize) -> bool {
        self.cycles[k - 1].orientation == Orientation::Up
    }

    pub fn parent(&self, k: usize) -> Option<(usize, Role)> {
        self.cycles[k - 1].parent
    }

    pub fn root(&self) -> [usize; 3] {
        [self.x(1), self.y(1), self.z(1)]
    }

    /// `y_child` restricted to labels `≤ limit`.
    fn y_child_within(&self, k: usize, limit: usize) -> Option<usize> {
        self.cycles[k - 1].y_child.filter(|&c| c <= limit)
    }

    fn z_child_within(&self, k: usize, limit: usize) -> Option<usize> {
        self.cycles[k - 1].z_child.filter(|&c| c <= limit)
    }

    /// Degree of `y_k` (2 or 4) in the full quiver.
    pub fn deg_y(&self, k: usize) -> usize {
        if self.cycles[k - 1].y_child.is_some() {
            4
        } else {
            2
        }
    }

    pub fn deg_z(&self, k: usize) -> usize {
        if self.cycles[k - 1].z_child.is_some() {
            4
        } else {
            2
        }
    }

    /// Number of neighbors of `v` in the full subquiver on `T_1 … T_limit`.
    pub fn degree_within(&self, v: usize, limit: usize) -> usize {
        2 * self.cycles[..limit.min(self.len())].iter().filter(|c| c.x == v || c.y == v || c.z == v).count()
    }

    pub fn is_branching(&self, k: usize) -> bool {
        let c = &self.cycles[k - 1];
        c.y_child.is_some() && c.z_child.is_some()
    }

    /// Vertices of `T_1 … T_k` in the standard ordering: `x₁ < y₁ < z₁`, then
    /// `y_j < z_j` for upward and `z_j < y_j` for downward `T_j`.
    pub fn standard_order(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * k + 1);
        if k == 0 {
            return out;
        }
        out.push(self.x(1));
        for j in 1..=k {
            if self.is_up(j) {
                out.extend([self.y(j), self.z(j)]);
            } else {
                out.extend([self.z(j), self.y(j)]);
            }
        }
        out
    }

    /// Position of every vertex in the standard ordering (index `v`).
    pub fn standard_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.quiver.n() + 1];
        for (i, v) in self.standard_order(self.len()).into_iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Labels `m` whose `z_m` is a live outlet of the sub-embedding `T_1 … T_k`
    /// (excluding `T_k` itself). Errors if a later cycle hangs from a vertex
    /// that was not an outlet at the time.
    fn live_z_outlets(&self, k: usize) -> Result<Vec<usize>> {
        let mut alive: Vec<usize> = Vec::new();
        for j in 2..=k {
            let (p, role) = self.parent(j).expect("non-root has a parent");
            if p == j - 1 {
                if role == Role::Y {
                    alive.push(p);
                }
            } else {
                if role != Role::Z || !alive.contains(&p) {
                    return Err(Error::Precondition(format!(
                        "T{j} hangs from {}, which is not an outlet of T1..T{}",
                        self.x(j),
                        j - 1
                    )));
                }
                alive.retain(|&q| q < p);
            }
        }
        Ok(alive)
    }

    /// Outlets of `T_1 … T_k`, ordered northeast first: `z_k, y_k` (upward) or
    /// `y_k, z_k` (downward), then the live degree-2 `z` vertices.
    pub fn outlets_prefix(&self, k: usize) -> Vec<usize> {
        let alive = self.live_z_outlets(k).expect("validated labeling");
        let mut out = if self.is_up(k) { vec![self.z(k), self.y(k)] } else { vec![self.y(k), self.z(k)] };
        out.extend(alive.iter().rev().map(|&m| self.z(m)));
        out
    }

    pub fn outlets(&self) -> Vec<usize> {
        self.outlets_prefix(self.len())
    }

    /// Replays the construction: roles and orientations agree with the
    /// attachment vertex, and each cycle attaches at an outlet of its prefix.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if n == 0 || !self.is_up(1) || self.parent(1).is_some() {
            return Err(Error::Precondition("T1 must be an upward root".into()));
        }
        for k in 1..=n {
            let (x, y, z) = (self.x(k), self.y(k), self.z(k));
            if !(self.quiver.b(x, y) > 0 && self.quiver.b(y, z) > 0 && self.quiver.b(z, x) > 0) {
                return Err(Error::Precondition(format!("T{k} is not oriented x→y→z→x")));
            }
            if k >= 2 {
                let (p, role) = self.parent(k).ok_or_else(|| Error::Precondition(format!("T{k} has no parent")))?;
                let (want_x, want_o) = match role {
                    Role::Y => (self.y(p), Orientation::Up),
                    Role::Z => (self.z(p), Orientation::Down),
                    Role::X => return Err(Error::Precondition(format!("T{k} hangs from x{p}"))),
                };
                if p >= k || x != want_x || self.cycle(k).orientation != want_o {
                    return Err(Error::Precondition(format!("T{k} is attached inconsistently")));
                }
                if !self.outlets_prefix(k - 1).contains(&x) {
                    return Err(Error::Precondition(format!("T{k} attaches at {x}, not an outlet")));
                }
            }
        }
        if n >= 2 && (self.parent(2) != Some((1, Role::Z))) {
            return Err(Error::Precondition("T2 must hang from z1".into()));
        }
        self.live_z_outlets(n).map(|_| ())
    }

    /// Maximal runs of consecutive labels; a run ends at a branching cycle or
    /// where the next label opens a new branch.
    pub fn branches(&self) -> Vec<Branch> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        for k in 1..=self.len() {
            cur.push(k);
            let ends = k == self.len() || self.is_branching(k) || self.parent(k + 1).map(|p| p.0) != Some(k);
            if ends {
                let terminal = if self.is_branching(k) { Terminal::Branching } else { Terminal::Leaf };
                out.push(Branch { labels: std::mem::take(&mut cur), terminal });
            }
        }
        out
    }

    /// Chain of downward cycles from `T_k` to (excluding) `T_{r(k)}`; empty if
    /// `T_k` points up.
    pub fn path(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = k;
        while !self.is_up(cur) {
            out.push(cur);
            cur = self.parent(cur).expect("downward cycles have parents").0;
        }
        out
    }

    /// The first upward cycle reached from `T_k` by descending its path.
    pub fn r(&self, k: usize) -> usize {
        let mut cur = k;
        while !self.is_up(cur) {
            cur = self.parent(cur).expect("downward cycles have parents").0;
        }
        cur
    }

    /// Twig above `T_k` within `T_1 … T_limit`.
    fn twig_within(&self, k: usize, limit: usize) -> Vec<usize> {
        if self.is_up(k) {
            return Vec::new();
        }
        let path = self.path(k);
        let mut candidates: Vec<usize> = path[1..].to_vec();
        candidates.push(self.r(k));
        let s = candidates.into_iter().filter(|&j| self.y_child_within(j, limit).is_some()).max();
        let Some(s) = s else {
            return Vec::new();
        };
        let mut twig = vec![self.y_child_within(s, limit).expect("chosen for its y-child")];
        while let Some(next) = self.z_child_within(*twig.last().expect("nonempty"), limit) {
            twig.push(next);
        }
        twig
    }

    pub fn twig(&self, k: usize) -> Vec<usize> {
        self.twig_within(k, self.len())
    }

    fn v_within(&self, k: usize, limit: usize) -> usize {
        if self.is_up(k) {
            return self.x(k);
        }
        match self.twig_within(k, limit).last() {
            Some(&t) => self.z(t),
            None => self.x(self.r(k)),
        }
    }

    /// `v(k)`; `v(0) = x₁` by convention.
    pub fn v(&self, k: usize) -> usize {
        if k == 0 {
            self.x(1)
        } else {
            self.v_within(k, self.len())
        }
    }

    /// `v(k)` computed with only `T_k` and `T_1 … T_limit` present.
    pub fn v_restricted(&self, k: usize, limit: usize) -> usize {
        self.v_within(k, limit)
    }

    /// Labels `s > k` reachable from the path of `T_k` or from `T_{r(k)}` by a
    /// run of consecutive labels whose 3-cycles form a connected union. (The
    /// full subquiver on the run's vertices can be connected through an arrow
    /// of an earlier cycle, which would admit cycles southwest of the path.) Labels
    /// `≤ k` are left out: every use joins this set with `[k]`.
    pub fn region_a(&self, k: usize) -> Result<BTreeSet<usize>> {
        if self.deg_z(k) != 2 {
            return Err(Error::Precondition(format!("deg(z{k}) = 4")));
        }
        Ok(self.region_a_scan(k))
    }

    /// The connectivity scan behind [`region_a`](Self::region_a), without the
    /// degree precondition.
    pub fn region_a_scan(&self, k: usize) -> BTreeSet<usize> {
        let mut starts = self.path(k);
        starts.push(self.r(k));
        let mut out = BTreeSet::new();
        for a in starts {
            for s in a.max(k + 1)..=self.len() {
                if self.run_connected(a, s) {
                    out.insert(s);
                }
            }
        }
        out
    }

    /// The cycles `T_a … T_s` form a connected union. Parents carry smaller
    /// labels, so this holds iff every `T_j`, `a < j ≤ s`, hangs from a cycle
    /// of the run.
    fn run_connected(&self, a: usize, s: usize) -> bool {
        (a + 1..=s).all(|j| self.parent(j).is_some_and(|(p, _)| p >= a))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.cycles.iter().enumerate() {
            let o = if c.orientation == Orientation::Up { "up" } else { "down" };
            let parent = match c.parent {
                Some((p, Role::Y)) => format!("T{p}@y"),
                Some((p, _)) => format!("T{p}@z"),
                None => "none".into(),
            };
            let _ = writeln!(s, "T{} {o} x={} y={} z={} parent={parent}", i + 1, c.x, c.y, c.z);
        }
        let outs: Vec<String> = self.outlets().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "outlets: {}", outs.join(" "));
        for (i, b) in self.branches().iter().enumerate() {
            let _ = writeln!(s, "branch S({}): T{}..T{}", i + 1, b.labels[0], b.labels[b.labels.len() - 1]);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag() -> Quiver {
        Quiver::from_arrows(7, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (7, 5)]).unwrap()
    }

    #[test]
    fn single_cycle() {
        let q = Quiver::from_arrows(3, &[(2, 3), (3, 1), (1, 2)]).unwrap();
        let e = embed(&q, None).unwrap();
        assert_eq!(e.root(), [1, 2, 3]);
        assert_eq!(e.outlets(), vec![3, 2]);
        assert_eq!(e.v(1), 1);
        assert_eq!(e.branches().len(), 1);
    }

    #[test]
    fn zigzag_roles() {
        let e = embed(&zigzag(), Some([1, 2, 3])).unwrap();
        assert_eq!((e.x(1), e.y(1), e.z(1)), (1, 2, 3));
        assert_eq!((e.x(2), e.y(2), e.z(2), e.is_up(2)), (3, 4, 5, false));
        assert_eq!((e.x(3), e.y(3), e.z(3), e.is_up(3)), (5, 6, 7, false));
        assert_eq!(e.r(2), 1);
        assert_eq!(e.path(2), vec![2]);
        assert_eq!(e.v(2), 1);
        assert_eq!(e.path(3), vec![3, 2]);
        // z2 carries T3, so only the raw scan applies at k = 2
        assert!(e.region_a(2).is_err());
        assert_eq!(e.region_a_scan(2), BTreeSet::from([3]));
        assert_eq!(e.region_a(3).unwrap(), BTreeSet::new());
        assert_eq!(e.branches(), vec![Branch { labels: vec![1, 2, 3], terminal: Terminal::Leaf }]);
    }

    #[test]
    fn non_leaf_root_is_rejected() {
        assert!(matches!(embed(&zigzag(), Some([3, 4, 5])), Err(Error::BadRoot(_))));
        assert!(matches!(embed(&zigzag(), Some([1, 2, 4])), Err(Error::BadRoot(_))));
    }
}
