//! Passing from an arbitrary finite quotient to a centerless one.
//!
//! Starting from p: F → Q (Q non-cyclic), the group algebra V = F_ℓ[Q] gives
//! R = ⟨(e₁, q₁), (0, q₂), …⟩ ≤ V ⋊ Q, then the same construction over
//! W = F_ℓ[R] gives S, and P_ℓ = S / (S ∩ ⟨(Σ r, 1)⟩). Every stage maps onto
//! the previous one by forgetting the vector part, which is what certifies
//! `ker p_ℓ ⊆ ker p`.
//!
//! Dividing by that cyclic group removes Z(S) but not necessarily the center
//! of the quotient. While the center of the current quotient lies in the
//! vector part, it is divided out as well; this keeps the map onto R. A
//! center with a nontrivial quotient part is reported as an error (this is
//! always the case when Q is an ℓ-group, since then so is P_ℓ).

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fingroup::{abelianization_mod, intersect_kernels, Enumeration, FinGroup, FreeHom, GElem};
use crate::linear::FlVector;
use crate::perm::Perm;
use crate::semidirect::{LinByFin, SdElem};

use super::spec::QuotientSpec;
use super::util::random_word;

/// Replaces a cyclic target by the intersection with a mod-m abelianization.
/// Returns the new spec and the modulus used, if any.
pub fn ensure_noncyclic(spec: &QuotientSpec, cap: usize) -> Result<(QuotientSpec, Option<usize>)> {
    if !spec.target().is_cyclic(cap)? {
        return Ok((spec.clone(), None));
    }
    let m = spec.target().order(cap)?.max(2);
    let ab = abelianization_mod(m, spec.n() - 2)?;
    let p = intersect_kernels(spec.p(), &ab)?;
    Ok((QuotientSpec::new(spec.n(), spec.ell(), p)?, Some(m)))
}

/// Outcome of the centerless construction.
#[derive(Clone, Debug)]
pub struct CenterlessQuotient {
    /// Q as a group of its own, with its enumeration fixing V's coordinates.
    pub q: FinGroup,
    pub q_elems: Vec<GElem>,
    pub r: LinByFin,
    pub r_elems: Enumeration<SdElem>,
    pub s: LinByFin,
    /// Whether S ∩ ⟨(w₁, 1)⟩ was of order ℓ rather than trivial.
    pub c_nontrivial: bool,
    /// Orders of the further centers divided out after the cyclic quotient.
    pub extra_centers: Vec<BigUint>,
    pub p_ell: FreeHom<LinByFin>,
    pub center_trivial: bool,
    pub chain_commutes: bool,
}

impl CenterlessQuotient {
    pub fn r_order(&self) -> usize {
        self.r_elems.len()
    }

    pub fn p_ell_order(&self) -> BigUint {
        self.p_ell.target().order()
    }

    /// The factor chain P_ℓ → R → Q on a single element.
    pub fn project_to_q(&self, x: &SdElem) -> Result<GElem> {
        let r = &self.r_elems.elements()[x.g().apply(0)];
        Ok(self.q_elems[r.g().apply(0)].clone())
    }
}

fn regular_perms(g: &FinGroup, elems: &[GElem], cap: usize) -> Result<Vec<Perm>> {
    elems.iter().map(|x| g.regular_perm(x, cap)).collect()
}

/// Builds generators `(e₁, x₁), (0, x₂), …` over the regular module.
fn group_algebra_generators(ell: u32, dim: usize, perms: &[Perm]) -> Result<Vec<SdElem>> {
    perms
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let v = if k == 0 { FlVector::unit(ell, dim, 0) } else { FlVector::zero(ell, dim) };
            SdElem::new(v, g.clone())
        })
        .collect()
}

pub fn centerless_quotient(spec: &QuotientSpec, cap: usize, seed: u64) -> Result<CenterlessQuotient> {
    let ell = spec.ell();
    if spec.target().is_cyclic(cap)? {
        return Err(Error::Invalid("target is cyclic; apply ensure_noncyclic first".into()));
    }
    let q = spec.target().clone();
    let q_enum = q.enumerate(cap)?;
    let q_elems = q_enum.elements().to_vec();
    let q_regs = regular_perms(&q, spec.p().images(), cap)?;
    let r_gens = group_algebra_generators(ell, q_elems.len(), &q_regs)?;
    let r = LinByFin::from_generators(ell, q_elems.len(), &r_gens, cap)?;
    let r_elems = r.enumerate(cap)?;

    let r_regs = r_gens.iter().map(|x| r.regular_perm(&r_elems, x)).collect::<Result<Vec<_>>>()?;
    let s_gens = group_algebra_generators(ell, r_elems.len(), &r_regs)?;
    let s = LinByFin::from_generators(ell, r_elems.len(), &s_gens, cap)?;
    let (mut p_group, c_nontrivial) = s.quotient_central_cyclic(&FlVector::all_ones(ell, r_elems.len()))?;
    let mut extra_centers = Vec::new();
    let mut z = p_group.center()?;
    while !z.is_trivial() && z.quotient.len() == 1 {
        extra_centers.push(z.order());
        p_group = p_group.quotient_by_module(&z.directions)?;
        z = p_group.center()?;
    }
    let center_trivial = z.is_trivial();
    let p_ell = FreeHom::new(spec.n() - 2, p_group.clone(), p_group.generators().to_vec())?;

    let mut out = CenterlessQuotient {
        q,
        q_elems,
        r,
        r_elems,
        s,
        c_nontrivial,
        extra_centers,
        p_ell,
        center_trivial,
        chain_commutes: false,
    };
    out.chain_commutes = check_chain(&out, spec, seed)?;
    if !out.center_trivial {
        return Err(Error::CenterNotTrivial { order: z.order().to_string() });
    }
    Ok(out)
}

/// The chain `P_ℓ → R → Q = P` agrees with `p` on generators and on 10³
/// random words.
fn check_chain(c: &CenterlessQuotient, spec: &QuotientSpec, seed: u64) -> Result<bool> {
    let p = spec.p();
    for k in 0..p.rank() {
        if c.project_to_q(&c.p_ell.images()[k])? != p.images()[k] {
            return Ok(false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let w = random_word(&mut rng, p.rank(), 30);
        let x = c.p_ell.eval(&w);
        if c.project_to_q(&x)? != p.eval(&w) {
            return Ok(false);
        }
    }
    Ok(true)
}
