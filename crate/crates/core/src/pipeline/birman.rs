//! The finite Birman identity on P₀.
//!
//! For τ = Push(γⱼ), the map τ̄ on Q sends q(x) to q(τ(x)); this is well
//! defined because ker q is invariant under the Artin and inner generators.
//! τ̄(q(λ)) is conjugate to q(λ) in Q, and after conjugating back by some c the
//! map s̄ = ι_c ∘ τ̄ fixes q(λ), so it preserves q(N_λ) and descends to P₀ as
//! δ̄(τ). The identity to check is δ̄(Push γⱼ) = conjugation by p₀(γⱼ).
//!
//! Two conjugators are tried: the transversal element of Q over the first
//! quotient element that works, and q(w)⁻¹ where w is the free-level
//! conjugator of λ to τ(λ). They induce the same map on P₀ whenever their
//! ratio, which centralizes q(λ), dies in P₀.

use crate::error::{Error, Result};
use crate::fingroup::{FreeHom, Group};
use crate::semidirect::{LinByFin, SdElem};
use crate::words::{conjugate_test, push_aut_with, FreeAut, PushConvention, Word};

use super::witness::{Diagonal, InducedP0};

/// Outcome for one generator γⱼ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirmanCase {
    pub j: usize,
    /// δ̄(Push γⱼ) agrees with conjugation by p₀(γⱼ) on every generator.
    pub holds: bool,
    /// The two conjugators induce the same map on P₀.
    pub conjugators_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirmanReport {
    pub convention: PushConvention,
    pub cases: Vec<BirmanCase>,
}

impl BirmanReport {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(|c| c.holds)
    }

    pub fn well_defined(&self) -> bool {
        self.cases.iter().all(|c| c.conjugators_agree)
    }
}

/// An element c of Q with c · y · c⁻¹ = x for `y`, `x` in the vector part.
fn vector_conjugator(q: &LinByFin, y: &SdElem, x: &SdElem) -> Result<SdElem> {
    let target = q.normalize(x);
    for (i, f) in q.quotient().iter().enumerate() {
        let c = SdElem::new(q.transversal(i).clone(), f.clone())?;
        if q.normalize(&c.mul(y).mul(&c.inv())) == target {
            return Ok(c);
        }
    }
    Err(Error::NotConjugate("τ̄(q(λ)) is not conjugate to q(λ) in Q".into()))
}

/// δ̄(τ) on the generators of P₀, using the conjugator `c`.
pub fn delta_bar_apply(diag: &Diagonal, p0: &InducedP0, tau: &FreeAut, c: &SdElem) -> Vec<SdElem> {
    let group = p0.group();
    (0..p0.p0.rank())
        .map(|k| {
            let image = diag.q.eval(&tau.apply(&Word::generator(k + 1)));
            group.normalize(&c.mul(&image).mul(&c.inv()))
        })
        .collect()
}

/// Conjugation by p₀(γⱼ) on the generators of P₀.
fn inner_on_p0(p0: &FreeHom<LinByFin>, j: usize) -> Vec<SdElem> {
    let group = p0.target();
    let g = &p0.images()[j - 1];
    p0.images().iter().map(|x| group.normalize(&group.conj(g, x))).collect()
}

pub fn check_birman_identity(
    diag: &Diagonal,
    p0: &InducedP0,
    n: usize,
    convention: PushConvention,
) -> Result<BirmanReport> {
    let q = diag.group();
    let lambda = Word::generator(n - 1);
    let mut cases = Vec::new();
    for j in 1..=n - 2 {
        let tau = push_aut_with(j, n, convention)?;
        let tau_lambda = tau.apply(&lambda);
        let y = diag.q.eval(&tau_lambda);
        if !y.g().is_identity() {
            return Err(Error::Convention("τ̄(q(λ)) has a nontrivial quotient part".into()));
        }
        let c1 = vector_conjugator(q, &y, &p0.lambda)?;
        let w = conjugate_test(&lambda, &tau_lambda)
            .ok_or_else(|| Error::NotConjugate(format!("Push(g{j}) does not preserve the class of L")))?;
        let c2 = diag.q.eval(&w).inv();
        let first = delta_bar_apply(diag, p0, &tau, &c1);
        let second = delta_bar_apply(diag, p0, &tau, &c2);
        cases.push(BirmanCase {
            j,
            holds: first == inner_on_p0(&p0.p0, j),
            conjugators_agree: first == second,
        });
    }
    Ok(BirmanReport { convention, cases })
}
