//! The associated mutation sequence of an embedded irreducible type-A quiver,
//! and the full pipeline for arbitrary type-A quivers.

use crate::direct_sum::{concat_mgs, decompose};
use crate::embedding::{embed, EmbeddedQuiver};
use crate::error::{Error, Result};
use crate::green::{acyclic_mgs, is_maximal_green};
use crate::quiver::{MutationSequence, Quiver};
use crate::type_a::{is_type_a, oriented_triangles};

/// `μ_k = μ_A ∘ μ_B ∘ μ_C ∘ μ_D`. Each part is stored in application order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MuParts {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

impl MuParts {
    /// `D`, then `C`, `B`, `A`.
    pub fn steps(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.a.len() + self.b.len() + self.c.len() + self.d.len());
        out.extend(&self.d);
        out.extend(&self.c);
        out.extend(&self.b);
        out.extend(&self.a);
        out
    }
}

/// Parts of `μ_k`; `k = 0` gives `μ₀ = (x₁)` in the `A` slot.
pub fn mu_parts(e: &EmbeddedQuiver, k: usize) -> Result<MuParts> {
    if k > e.len() {
        return Err(Error::IndexOutOfRange(k));
    }
    if k == 0 {
        return Ok(MuParts { a: vec![e.x(1)], ..MuParts::default() });
    }
    let r = e.r(k);
    Ok(MuParts {
        a: vec![e.v(k)],
        b: if r == 1 { Vec::new() } else { vec![e.v(r - 1)] },
        c: e.path(k).into_iter().map(|j| e.x(j)).collect(),
        d: vec![e.y(k), e.z(k)],
    })
}

/// `μ_k` in application order.
pub fn mu(e: &EmbeddedQuiver, k: usize) -> Result<Vec<usize>> {
    mu_parts(e, k).map(|p| p.steps())
}

/// `μ₀, μ₁, …, μ_n` concatenated in application order.
pub fn associated_sequence(e: &EmbeddedQuiver) -> MutationSequence {
    let mut out = Vec::new();
    for k in 0..=e.len() {
        out.extend(mu(e, k).expect("k in range"));
    }
    MutationSequence(out)
}

/// Offsets of `μ_0 … μ_n` inside the associated sequence: `μ_k` occupies
/// `bounds[k]..bounds[k + 1]`.
pub fn part_bounds(e: &EmbeddedQuiver) -> Vec<usize> {
    let mut bounds = vec![0];
    for k in 0..=e.len() {
        let len = mu(e, k).expect("k in range").len();
        bounds.push(bounds[k] + len);
    }
    bounds
}

pub fn mgs_for_type_a(q: &Quiver) -> Result<MutationSequence> {
    mgs_for_type_a_rooted(q, None)
}

/// As [`mgs_for_type_a`]; `root` picks the root leaf of the summand that
/// contains it (default roots elsewhere).
pub fn mgs_for_type_a_rooted(q: &Quiver, root: Option<[usize; 3]>) -> Result<MutationSequence> {
    let report = is_type_a(q);
    if !report.verdict {
        let bad = report.conditions.iter().find(|c| !c.holds).expect("a failing condition");
        return Err(Error::NotTypeA(format!(
            "condition ({}) fails: {}",
            bad.id,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    let d = decompose(q);
    let mut per_summand = Vec::with_capacity(d.summands.len());
    let mut root_used = root.is_none();
    for part in &d.summands {
        let sub = q.induced(part);
        let local = if oriented_triangles(&sub).is_empty() {
            acyclic_mgs(&sub)?
        } else {
            let local_root = root.and_then(|r| {
                let mapped: Option<Vec<usize>> = r.iter().map(|v| part.binary_search(v).ok().map(|i| i + 1)).collect();
                mapped.map(|m| [m[0], m[1], m[2]])
            });
            root_used |= local_root.is_some();
            associated_sequence(&embed(&sub, local_root)?)
        };
        per_summand.push(MutationSequence(local.steps().iter().map(|&v| part[v - 1]).collect()));
    }
    if let (false, Some(r)) = (root_used, root) {
        return Err(Error::BadRoot(r));
    }
    concat_mgs(q, &d, &per_summand)
}

/// Verifies the associated sequence as a maximal green sequence.
pub fn verify_associated(e: &EmbeddedQuiver) -> Result<bool> {
    Ok(is_maximal_green(e.quiver(), &associated_sequence(e))?.is_maximal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag() -> Quiver {
        Quiver::from_arrows(7, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (7, 5)]).unwrap()
    }

    #[test]
    fn zigzag_roots() {
        let q = zigzag();
        let e = embed(&q, Some([1, 2, 3])).unwrap();
        assert_eq!(associated_sequence(&e).steps(), &[1, 2, 3, 1, 4, 5, 3, 1, 6, 7, 5, 3, 1]);
        let e = embed(&q, Some([5, 6, 7])).unwrap();
        assert_eq!(associated_sequence(&e).steps(), &[6, 7, 5, 6, 3, 4, 5, 6, 1, 2, 6, 3]);
        assert!(verify_associated(&e).unwrap());
    }

    #[test]
    fn triangle_has_length_four() {
        let q = Quiver::from_arrows(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let s = mgs_for_type_a(&q).unwrap();
        assert_eq!(s.steps(), &[1, 2, 3, 1]);
        let p = mu_parts(&embed(&q, None).unwrap(), 1).unwrap();
        assert!(p.b.is_empty() && p.c.is_empty());
    }

    #[test]
    fn linear_is_sources() {
        let q = Quiver::from_arrows(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(mgs_for_type_a(&q).unwrap().steps(), &[1, 2, 3, 4]);
        assert!(matches!(
            mgs_for_type_a(&Quiver::from_arrows(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap()),
            Err(Error::NotTypeA(_))
        ));
    }

    #[test]
    fn out_of_range_part() {
        let e = embed(&zigzag(), None).unwrap();
        assert_eq!(mu_parts(&e, 4), Err(Error::IndexOutOfRange(4)));
    }
}
