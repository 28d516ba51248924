//! Extended exchange matrices `[B | C]` and matrix mutation.

use std::fmt;
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};
use crate::quiver::{check_vertex, MutationSequence, Permutation, Quiver};

/// Scalar type of an exchange matrix: any signed primitive integer.
/// Arithmetic is checked; overflow panics rather than wrapping.
pub trait Entry: PrimInt + Signed + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> Entry for T where T: PrimInt + Signed + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Green,
    Red,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Green => "green",
            Color::Red => "red",
        })
    }
}

/// `n × (n + m)` integer matrix: rows are mutable vertices, columns are the
/// mutable vertices followed by the frozen ones. Vertex arguments are 1-based;
/// column `n + i` is the frozen vertex `i'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedQuiver<T = i64> {
    n: usize,
    m: usize,
    data: Vec<T>,
}

impl<T: Entry> ExtendedQuiver<T> {
    pub fn zeros(n: usize, m: usize) -> Self {
        ExtendedQuiver { n, m, data: vec![T::zero(); n * (n + m)] }
    }

    fn from_quiver(q: &Quiver, diag: T) -> Self {
        let n = q.n();
        let mut eq = Self::zeros(n, n);
        for (i, j, mult) in q.arrows() {
            let v = T::from(mult).expect("multiplicity does not fit the entry type");
            eq.set(i, j, v);
            eq.set(j, i, -v);
        }
        for i in 1..=n {
            eq.set(i, n + i, diag);
        }
        eq
    }

    /// `[B_Q | I]`.
    pub fn frame(q: &Quiver) -> Self {
        Self::from_quiver(q, T::one())
    }

    /// `[B_Q | −I]`.
    pub fn coframe(q: &Quiver) -> Self {
        Self::from_quiver(q, -T::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n + self.m
    }

    pub fn get(&self, i: usize, col: usize) -> T {
        self.data[(i - 1) * self.cols() + col - 1]
    }

    pub fn set(&mut self, i: usize, col: usize, v: T) {
        let c = self.cols();
        self.data[(i - 1) * c + col - 1] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        let c = self.cols();
        &self.data[(i - 1) * c..i * c]
    }

    /// Frozen part of row `i` (its c-vector).
    pub fn c_vector(&self, i: usize) -> &[T] {
        &self.row(i)[self.n..]
    }

    /// Signed arrow count from mutable `x` to column `col` (frozen if `col > n`).
    pub fn alpha(&self, x: usize, col: usize) -> Result<T> {
        check_vertex(x, self.n)?;
        check_vertex(col, self.cols())?;
        Ok(self.get(x, col))
    }

    /// The exchangeable block as a quiver.
    pub fn principal_quiver(&self) -> Quiver {
        let b: Vec<Vec<i64>> = (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j).to_i64().expect("entry exceeds i64")).collect())
            .collect();
        Quiver::from_b(&b)
    }

    /// `b'_ij = −b_ij` if `k ∈ {i, j}`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        check_vertex(k, self.n)?;
        let mut out = self.clone();
        out.mutate_in_place(k);
        Ok(out)
    }

    pub(crate) fn mutate_in_place(&mut self, k: usize) {
        let c = self.cols();
        let k0 = k - 1;
        let krow: Vec<T> = self.data[k0 * c..(k0 + 1) * c].to_vec();
        for i in 0..self.n {
            if i == k0 {
                continue;
            }
            let bik = self.data[i * c + k0];
            if bik.is_zero() {
                continue;
            }
            for (j, &bkj) in krow.iter().enumerate() {
                if j == k0 {
                    continue;
                }
                let prod = if bik > T::zero() && bkj > T::zero() {
                    bik.checked_mul(&bkj)
                } else if bik < T::zero() && bkj < T::zero() {
                    bik.checked_mul(&bkj).map(|p| -p)
                } else {
                    continue;
                }
                .expect("exchange matrix entry overflow");
                let e = &mut self.data[i * c + j];
                *e = e.checked_add(&prod).expect("exchange matrix entry overflow");
            }
            self.data[i * c + k0] = -bik;
        }
        for j in 0..c {
            self.data[k0 * c + j] = -self.data[k0 * c + j];
        }
    }

    pub fn apply_sequence(&self, s: &MutationSequence) -> Result<Self> {
        s.validate(self.n)?;
        let mut out = self.clone();
        for &k in s.steps() {
            out.mutate_in_place(k);
        }
        Ok(out)
    }

    /// Green iff the c-vector is `≥ 0` with a positive entry; red iff `≤ 0`
    /// with a negative entry; anything else is a sign-coherence violation.
    pub fn vertex_color(&self, i: usize) -> Result<Color> {
        check_vertex(i, self.n)?;
        let c = self.c_vector(i);
        let pos = c.iter().any(|v| *v > T::zero());
        let neg = c.iter().any(|v| *v < T::zero());
        match (pos, neg) {
            (true, false) => Ok(Color::Green),
            (false, true) => Ok(Color::Red),
            _ => Err(Error::SignIncoherent(i)),
        }
    }

    pub fn colors(&self) -> Result<Vec<Color>> {
        (1..=self.n).map(|i| self.vertex_color(i)).collect()
    }

    pub fn green_vertices(&self) -> Result<Vec<usize>> {
        let colors = self.colors()?;
        Ok((1..=self.n).filter(|&i| colors[i - 1] == Color::Green).collect())
    }

    /// If the frozen block is `−M(σ)` for a permutation `σ` (row `i` equal to
    /// `−e_{(i·σ)'}`), returns `σ`.
    pub fn frozen_permutation(&self) -> Option<Permutation> {
        if self.m != self.n {
            return None;
        }
        let mut images = Vec::with_capacity(self.n);
        for i in 1..=self.n {
            let c = self.c_vector(i);
            let mut target = None;
            for (j, v) in c.iter().enumerate() {
                if *v == -T::one() && target.is_none() {
                    target = Some(j + 1);
                } else if !v.is_zero() {
                    return None;
                }
            }
            images.push(target?);
        }
        Permutation::from_images(images).ok()
    }

    /// Tab-separated text with an `extb <n> <m>` header.
    pub fn to_text(&self) -> String {
        let mut s = format!("extb {} {}\n", self.n, self.m);
        for i in 1..=self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s += &row.join("\t");
            s.push('\n');
        }
        s
    }

    /// Simultaneously permutes rows and mutable columns so that row `i` of the
    /// result is row `order[i - 1]` of `self`; frozen columns are untouched.
    pub fn permute_mutable(&self, order: &[usize]) -> Self {
        let mut out = Self::zeros(self.n, self.m);
        for (ni, &oi) in order.iter().enumerate() {
            for (nj, &oj) in order.iter().enumerate() {
                out.set(ni + 1, nj + 1, self.get(oi, oj));
            }
            for f in 1..=self.m {
                out.set(ni + 1, self.n + f, self.get(oi, self.n + f));
            }
        }
        out
    }
}

/// Concrete 64-bit alias used throughout the crate.
pub type ExtMatrix = ExtendedQuiver<i64>;
