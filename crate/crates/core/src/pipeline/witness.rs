//! From a centerless quotient P to a geometrically characteristic kernel.
//!
//! φ sends λ to (e₁, 1) and γⱼ to (0, p(γⱼ)) in U ⋊ P with U = F_ℓ[P]. Its
//! orbit under precomposition by the Artin and inner generators is collected
//! up to conjugation in U ⋊ P (conjugate homomorphisms share a kernel), and
//! q is the diagonal over one representative per class. Q = im q is kept as a
//! linear-by-finite group on the direct sum of the blocks; P₀ is Q modulo the
//! normal closure of q(λ), which lives in the vector part.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fingroup::{Enumeration, FinGroup, FreeHom, GElem, Group};
use crate::linear::{FlSubspace, FlVector};
use crate::perm::Perm;
use crate::semidirect::{linbyfin_kernel_relation, Affine, LinByFin, SdElem, SubgroupData};
use crate::words::{FreeAut, Word};

use super::spec::QuotientSpec;
use super::util::random_word;

/// φ together with the coordinate data of U = F_ℓ[P].
#[derive(Clone, Debug)]
pub struct Phi {
    pub hom: FreeHom<Affine>,
    pub p: FinGroup,
    pub p_elems: Arc<Enumeration<GElem>>,
    /// Regular permutations of every element of P, in enumeration order.
    pub p_regs: Vec<Perm>,
    pub ell: u32,
}

impl Phi {
    pub fn dim(&self) -> usize {
        self.p_elems.len()
    }

    /// U ⋊ P → P.
    pub fn to_p(&self, x: &SdElem) -> GElem {
        self.p_elems.elements()[x.g().apply(0)].clone()
    }

    pub fn lambda_image(&self) -> &SdElem {
        self.hom.images().last().expect("rank is at least 3")
    }
}

pub fn build_phi(spec: &QuotientSpec, cap: usize) -> Result<Phi> {
    let ell = spec.ell();
    let p = spec.target().clone();
    let p_elems = p.enumerate(cap)?;
    let m = p_elems.len();
    let p_regs = p_elems.elements().iter().map(|g| p.regular_perm(g, cap)).collect::<Result<Vec<_>>>()?;
    let mut images = Vec::with_capacity(spec.n() - 1);
    for g in spec.p().images() {
        let i = p_elems.index_of(g).ok_or(Error::NotMember)?;
        images.push(SdElem::new(FlVector::zero(ell, m), p_regs[i].clone())?);
    }
    images.push(SdElem::new(FlVector::unit(ell, m, 0), Perm::identity(m))?);
    let hom = FreeHom::new(spec.n() - 1, Affine { ell, dim: m }, images)?;
    Ok(Phi { hom, p, p_elems, p_regs, ell })
}

/// `ρ_U ∘ φ = p ∘ ρ_{N_λ}` on generators and on `samples` random words.
pub fn check_phi_square(phi: &Phi, spec: &QuotientSpec, samples: usize, seed: u64) -> Result<bool> {
    let big = spec.big_group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: Vec<Word> = big.generators();
    words.extend((0..samples).map(|_| random_word(&mut rng, big.rank(), 20)));
    for w in &words {
        let lhs = phi.to_p(&phi.hom.eval(w));
        let rhs = spec.p().eval(&big.rho_n_lambda(w)?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-factor property: the centralizer of φ(λ) in im φ lies in the normal
/// closure of φ(λ).
pub fn check_phi_centralizer(phi: &Phi, cap: usize) -> Result<bool> {
    let im = LinByFin::from_generators(phi.ell, phi.dim(), phi.hom.images(), cap)?;
    let x = phi.lambda_image();
    let c = im.centralizer(x)?;
    let n = im.normal_closure_module(x)?;
    Ok(c.quotient.len() == 1 && n.contains_subspace(&c.directions))
}

type ClassKey = (Vec<Perm>, FlVector);

/// Orbit of φ under precomposition, one representative per conjugacy class
/// of homomorphisms. `members[0]` is φ itself.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub members: Vec<FreeHom<Affine>>,
    pub keys: Vec<ClassKey>,
    pub generator_names: Vec<String>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Canonical form of a homomorphism into U ⋊ P up to conjugation.
struct Canonicalizer<'a> {
    phi: &'a Phi,
    lattices: HashMap<Vec<Perm>, FlSubspace>,
}

impl<'a> Canonicalizer<'a> {
    fn new(phi: &'a Phi) -> Self {
        Canonicalizer { phi, lattices: HashMap::new() }
    }

    /// Conjugation by (0, h) minimizes the group tuple; conjugation by (u, 1)
    /// moves the vector tuple by ((1 − gᵢ)u)ᵢ, so the vector tuple is reduced
    /// modulo that subspace.
    fn key(&mut self, images: &[SdElem]) -> Result<ClassKey> {
        let ell = self.phi.ell;
        let m = self.phi.dim();
        let mut best: Option<Vec<Perm>> = None;
        let mut winners: Vec<usize> = Vec::new();
        for (hi, h) in self.phi.p_regs.iter().enumerate() {
            let hinv = h.inv();
            let t: Vec<Perm> = images.iter().map(|x| h.mul(x.g()).mul(&hinv)).collect();
            match &best {
                Some(b) if t > *b => {}
                Some(b) if t == *b => winners.push(hi),
                _ => {
                    best = Some(t);
                    winners = vec![hi];
                }
            }
        }
        let gtuple = best.expect("P is nonempty");
        if !self.lattices.contains_key(&gtuple) {
            let mut l = FlSubspace::zero(ell, m * gtuple.len());
            for k in 0..m {
                let u = FlVector::unit(ell, m, k);
                let parts: Vec<FlVector> = gtuple.iter().map(|g| u.sub(&u.permuted(g))).collect();
                l.insert(&FlVector::concat(ell, &parts.iter().collect::<Vec<_>>()))?;
            }
            self.lattices.insert(gtuple.clone(), l);
        }
        let l = &self.lattices[&gtuple];
        let mut best_v: Option<FlVector> = None;
        for hi in winners {
            let h = &self.phi.p_regs[hi];
            let parts: Vec<FlVector> = images.iter().map(|x| x.v().permuted(h)).collect();
            let v = l.reduce(&FlVector::concat(ell, &parts.iter().collect::<Vec<_>>()));
            if best_v.as_ref().is_none_or(|b| v < *b) {
                best_v = Some(v);
            }
        }
        Ok((gtuple, best_v.expect("at least one winner")))
    }
}

pub fn aut_orbit(phi: &Phi, gens: &[(String, FreeAut)], orbit_cap: usize) -> Result<Orbit> {
    let mut canon = Canonicalizer::new(phi);
    let start = phi.hom.clone();
    let k0 = canon.key(start.images())?;
    let mut seen: HashSet<ClassKey> = HashSet::from([k0.clone()]);
    let mut members = vec![start];
    let mut keys = vec![k0];
    let mut head = 0;
    while head < members.len() {
        let cur = members[head].clone();
        head += 1;
        for (_, t) in gens {
            let next = cur.precompose(t)?;
            let key = canon.key(next.images())?;
            if seen.insert(key.clone()) {
                if members.len() >= orbit_cap {
                    return Err(Error::CapExceeded { cap: orbit_cap });
                }
                members.push(next);
                keys.push(key);
            }
        }
    }
    // Keep φ first, order the rest by canonical form.
    let mut order: Vec<usize> = (1..members.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    order.insert(0, 0);
    Ok(Orbit {
        members: order.iter().map(|&i| members[i].clone()).collect(),
        keys: order.iter().map(|&i| keys[i].clone()).collect(),
        generator_names: gens.iter().map(|(n, _)| n.clone()).collect(),
    })
}

/// Post-hoc closure check: every member precomposed with every generator
/// lands in a recorded class.
pub fn orbit_is_closed(phi: &Phi, orbit: &Orbit, gens: &[(String, FreeAut)]) -> Result<bool> {
    let mut canon = Canonicalizer::new(phi);
    let known: HashSet<&ClassKey> = orbit.keys.iter().collect();
    for (m, key) in orbit.members.iter().zip(&orbit.keys) {
        if canon.key(m.images())? != *key {
            return Ok(false);
        }
        for (_, t) in gens {
            if !known.contains(&canon.key(m.precompose(t)?.images())?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// q = ⊕ φ′ over the orbit representatives.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub q: FreeHom<LinByFin>,
    pub block: usize,
    pub blocks: usize,
}

impl Diagonal {
    pub fn group(&self) -> &LinByFin {
        self.q.target()
    }

    /// π_{φ′}: coordinate projection onto block `i`.
    pub fn project(&self, x: &SdElem, i: usize) -> SdElem {
        x.block(i * self.block, self.block)
    }
}

pub fn diagonal_hom(orbit: &Orbit, cap: usize) -> Result<Diagonal> {
    let first = orbit.members.first().ok_or_else(|| Error::Invalid("empty orbit".into()))?;
    let ell = first.target().ell;
    let block = first.target().dim;
    let rank = first.rank();
    let images: Vec<SdElem> = (0..rank)
        .map(|i| SdElem::direct_sum(&orbit.members.iter().map(|m| &m.images()[i]).collect::<Vec<_>>()))
        .collect();
    let q_group = LinByFin::from_generators(ell, block * orbit.len(), &images, cap)?;
    let q = FreeHom::new(rank, q_group.clone(), images.iter().map(|x| q_group.normalize(x)).collect())?;
    Ok(Diagonal { q, block, blocks: orbit.len() })
}

/// Kernel equality `ker q = ker (q ∘ τ)` for every generator τ.
pub fn is_geom_characteristic(q: &FreeHom<LinByFin>, gens: &[(String, FreeAut)], cap: usize) -> Result<bool> {
    for (_, t) in gens {
        let qt = q.precompose(t)?;
        let (a, b) = linbyfin_kernel_relation(q, &qt, cap)?;
        if !(a && b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// P₀ = Q / q(N_λ) with the induced surjection from the rank n−2 group.
#[derive(Clone, Debug)]
pub struct InducedP0 {
    pub lambda: SdElem,
    pub kernel: FlSubspace,
    pub p0: FreeHom<LinByFin>,
    pub square_commutes: bool,
}

impl InducedP0 {
    pub fn group(&self) -> &LinByFin {
        self.p0.target()
    }

    pub fn order(&self) -> BigUint {
        self.group().order()
    }
}

pub fn induced_p0(diag: &Diagonal, spec: &QuotientSpec, samples: usize, seed: u64) -> Result<InducedP0> {
    let q_group = diag.group();
    let lambda = diag.q.images().last().expect("rank is at least 3").clone();
    if !lambda.g().is_identity() {
        return Err(Error::Convention("q(λ) has a nontrivial quotient part".into()));
    }
    let kernel = q_group.normal_closure_module(&lambda)?;
    let p0_group = q_group.quotient_by_module(&kernel)?;
    let rank = spec.n() - 2;
    let images = diag.q.images()[..rank].iter().map(|x| p0_group.normalize(x)).collect();
    let p0 = FreeHom::new(rank, p0_group.clone(), images)?;

    // p₀ ∘ ρ_{N_λ} = ρ_{q(N_λ)} ∘ q on generators and random words.
    let big = spec.big_group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = big.generators();
    words.extend((0..samples).map(|_| random_word(&mut rng, big.rank(), 20)));
    let mut square_commutes = true;
    for w in &words {
        let lhs = p0.eval(&big.rho_n_lambda(w)?);
        let rhs = p0_group.normalize(&diag.q.eval(w));
        if lhs != rhs {
            square_commutes = false;
            break;
        }
    }
    Ok(InducedP0 { lambda, kernel, p0, square_commutes })
}

/// Report on `C_Q(q(λ)) ⊆ q(N_λ)`.
#[derive(Clone, Debug)]
pub struct CentralizerCondition {
    pub holds: bool,
    pub stabilizer_order: usize,
    pub centralizer_module_rank: usize,
    pub kernel_rank: usize,
    pub centralizer: SubgroupData,
}

pub fn check_centralizer_condition(diag: &Diagonal, p0: &InducedP0) -> Result<CentralizerCondition> {
    let c = diag.group().centralizer(&p0.lambda)?;
    let holds = c.quotient.len() == 1 && p0.kernel.contains_subspace(&c.directions);
    Ok(CentralizerCondition {
        holds,
        stabilizer_order: c.quotient.len(),
        centralizer_module_rank: c.directions.rank(),
        kernel_rank: p0.kernel.rank(),
        centralizer: c,
    })
}

/// The checks that make up a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChecks {
    pub p_centerless: bool,
    pub diagram_commutes: bool,
    pub center_in_kernel: bool,
    pub center_order: String,
    pub samples: usize,
    pub central_samples: usize,
    pub nontrivial_central_samples: usize,
    pub sample_violations: usize,
}

/// π_φ: P₀ → P, read off the first block's quotient part.
pub fn pi_phi(phi: &Phi, diag: &Diagonal, x: &SdElem) -> GElem {
    phi.to_p(&diag.project(x, 0))
}

/// Runs the witness checks and samples words for the containment
/// `p₀(w) central ⇒ p(w) = 1`, where `p_orig` is the homomorphism whose kernel must contain ker(μ̄ ∘ p₀).
#[allow(clippy::too_many_arguments)]
pub fn verify_witness(
    phi: &Phi,
    diag: &Diagonal,
    p0: &InducedP0,
    p: &FreeHom<FinGroup>,
    p_orig: &FreeHom<FinGroup>,
    samples: usize,
    sample_len: usize,
    seed: u64,
    cap: usize,
) -> Result<WitnessChecks> {
    let p_centerless = phi.p.is_centerless(cap)?;
    let diagram_commutes = (0..p.rank()).all(|j| pi_phi(phi, diag, &p0.p0.images()[j]) == p.images()[j]);
    let z = p0.group().center()?;
    let center_in_kernel = z.quotient.iter().all(|f| {
        let x = SdElem::new(FlVector::zero(phi.ell, f.degree()), f.clone()).expect("matching degree");
        phi.p.is_identity(&pi_phi(phi, diag, &x))
    });

    let group = p0.group();
    let raw = FreeHom::new(p.rank(), Affine { ell: group.ell(), dim: group.dim() }, p0.p0.images().to_vec())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut central, mut nontrivial, mut violations) = (0, 0, 0);
    for _ in 0..samples {
        let w = random_word(&mut rng, p.rank(), sample_len);
        let x = group.normalize(&raw.eval(&w));
        if group.is_central(&x) {
            central += 1;
            if !x.is_identity() {
                nontrivial += 1;
            }
            if !p_orig.target().is_identity(&p_orig.eval(&w)) {
                violations += 1;
            }
        }
    }
    Ok(WitnessChecks {
        p_centerless,
        diagram_commutes,
        center_in_kernel,
        center_order: z.order().to_string(),
        samples,
        central_samples: central,
        nontrivial_central_samples: nontrivial,
        sample_violations: violations,
    })
}

/// p′ ∘ ρ_{N_λ}: the rank n−1 homomorphism that kills λ first.
pub fn pullback_kernel<G: Group>(p: &FreeHom<G>) -> Result<FreeHom<G>> {
    let mut images = p.images().to_vec();
    images.push(p.target().identity());
    FreeHom::new(p.rank() + 1, p.target().clone(), images)
}
