//! Split extensions F_ℓ^d ⋊ F where a finite group F acts by permuting
//! coordinates, and the linear-by-finite representation of their subgroups.
//!
//! A [`LinByFin`] group stores its image F in the permutation group (small,
//! enumerated), one transversal vector t(f) per f ∈ F, and the F-module M of
//! vectors v with (v, 1) in the group. An optional F-invariant submodule K ⊆ M
//! is factored out, so the same type also models quotients by normal
//! subgroups that live in the vector part. The group order is
//! ℓ^(rank M − rank K)·|F| and never needs enumeration.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fingroup::{enumerate, FreeHom, Group};
use crate::linear::{perm_module_closure, solve_affine, Constraint, FlSubspace, FlVector, LinearMap};
use crate::perm::Perm;

/// Element `(v, g)` of F_ℓ^d ⋊ Sym(d).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdElem {
    v: FlVector,
    g: Perm,
}

impl SdElem {
    pub fn new(v: FlVector, g: Perm) -> Result<Self> {
        if v.dim() != g.degree() {
            return Err(Error::DimensionMismatch { expected: v.dim(), got: g.degree() });
        }
        Ok(SdElem { v, g })
    }

    pub fn identity(ell: u32, dim: usize) -> Self {
        SdElem { v: FlVector::zero(ell, dim), g: Perm::identity(dim) }
    }

    pub fn v(&self) -> &FlVector {
        &self.v
    }

    pub fn g(&self) -> &Perm {
        &self.g
    }

    pub fn ell(&self) -> u32 {
        self.v.ell()
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    /// `(v, g)(v', g') = (v + g·v', g g')`.
    pub fn mul(&self, other: &SdElem) -> SdElem {
        SdElem { v: self.v.add(&other.v.permuted(&self.g)), g: self.g.mul(&other.g) }
    }

    /// Checked product; rejects operands from different ambients.
    pub fn try_mul(&self, other: &SdElem) -> Result<SdElem> {
        if self.ell() != other.ell() {
            return Err(Error::FieldMismatch { expected: self.ell(), got: other.ell() });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(self.mul(other))
    }

    /// `(v, g)⁻¹ = (−(g⁻¹·v), g⁻¹)`.
    pub fn inv(&self) -> SdElem {
        let gi = self.g.inv();
        SdElem { v: self.v.permuted(&gi).neg(), g: gi }
    }

    pub fn pow(&self, k: i64) -> SdElem {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = SdElem::identity(self.ell(), self.dim());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_zero() && self.g.is_identity()
    }

    /// Componentwise element of a direct sum of ambients.
    pub fn direct_sum(parts: &[&SdElem]) -> SdElem {
        let ell = parts.first().map_or(2, |p| p.ell());
        let v = FlVector::concat(ell, &parts.iter().map(|p| &p.v).collect::<Vec<_>>());
        let mut g = Perm::identity(0);
        for p in parts {
            g = g.direct_sum(&p.g);
        }
        SdElem { v, g }
    }

    /// Restriction to the block of coordinates `start..start+len`.
    pub fn block(&self, start: usize, len: usize) -> SdElem {
        SdElem { v: self.v.slice(start, len), g: self.g.block(start, len) }
    }
}

impl fmt::Debug for SdElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.v.to_sparse_string(), self.g)
    }
}

/// The ambient F_ℓ^d ⋊ Sym(d) as a [`Group`].
#[derive(Clone, Debug)]
pub struct Affine {
    pub ell: u32,
    pub dim: usize,
}

impl Group for Affine {
    type Elem = SdElem;

    fn identity(&self) -> SdElem {
        SdElem::identity(self.ell, self.dim)
    }

    fn mul(&self, a: &SdElem, b: &SdElem) -> SdElem {
        a.mul(b)
    }

    fn inv(&self, a: &SdElem) -> SdElem {
        a.inv()
    }
}

struct LbfInner {
    ell: u32,
    dim: usize,
    gens: Vec<SdElem>,
    quotient: Vec<Perm>,
    index: HashMap<Perm, usize>,
    transversal: Vec<FlVector>,
    tree: Vec<Option<(usize, usize)>>,
    module: FlSubspace,
    kernel: FlSubspace,
}

/// Subgroup of F_ℓ^d ⋊ Sym(d), possibly modulo an F-invariant K.
#[derive(Clone)]
pub struct LinByFin(Arc<LbfInner>);

impl fmt::Debug for LinByFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinByFin")
            .field("ell", &self.0.ell)
            .field("dim", &self.0.dim)
            .field("quotient_order", &self.0.quotient.len())
            .field("module_rank", &self.0.module.rank())
            .field("kernel_rank", &self.0.kernel.rank())
            .finish()
    }
}

/// A subgroup of a [`LinByFin`] with the same layout: the allowed quotient
/// elements, one particular vector offset for each, and a common module.
#[derive(Clone, Debug)]
pub struct SubgroupData {
    pub ell: u32,
    pub quotient: Vec<Perm>,
    /// For `quotient[i] = f`, elements over `f` are `(t(f) + particular[i] + D, f)`.
    pub particular: Vec<FlVector>,
    pub directions: FlSubspace,
    pub kernel_rank: usize,
}

impl SubgroupData {
    pub fn order(&self) -> BigUint {
        BigUint::from(self.ell).pow((self.directions.rank() - self.kernel_rank) as u32) * self.quotient.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.len() == 1 && self.directions.rank() == self.kernel_rank
    }
}

impl LinByFin {
    /// Subgroup generated by `gens` inside the ambient modulo `kernel`, which
    /// must be invariant under the generators' permutations.
    ///
    /// Besides bounding |F| by `cap`, the module work is bounded by requiring
    /// `dim² ≤ 64·cap`, since echelon rows take up to `dim²` entries.
    pub fn from_generators_mod(
        ell: u32,
        dim: usize,
        gens: &[SdElem],
        kernel: FlSubspace,
        cap: usize,
    ) -> Result<Self> {
        for g in gens {
            if g.ell() != ell {
                return Err(Error::FieldMismatch { expected: ell, got: g.ell() });
            }
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
        }
        if kernel.dim() != dim || kernel.ell() != ell {
            return Err(Error::DimensionMismatch { expected: dim, got: kernel.dim() });
        }
        if (dim as u128).pow(2) > 64 * cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
        let gens: Vec<SdElem> =
            gens.iter().map(|g| SdElem { v: kernel.reduce(&g.v), g: g.g.clone() }).collect();
        let id = Perm::identity(dim);
        let mut quotient = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut transversal = vec![FlVector::zero(ell, dim)];
        let mut tree = vec![None];
        let mut defects = Vec::new();
        let mut head = 0;
        while head < quotient.len() {
            let f = quotient[head].clone();
            let tf = transversal[head].clone();
            for (j, g) in gens.iter().enumerate() {
                let h = f.mul(&g.g);
                let v = tf.add(&g.v.permuted(&f));
                match index.get(&h) {
                    Some(&k) => {
                        let d = v.sub(&transversal[k]);
                        if !d.is_zero() {
                            defects.push(d);
                        }
                    }
                    None => {
                        if quotient.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        index.insert(h.clone(), quotient.len());
                        quotient.push(h);
                        transversal.push(kernel.reduce(&v));
                        tree.push(Some((head, j)));
                    }
                }
            }
            head += 1;
        }
        let perms: Vec<Perm> = gens.iter().map(|g| g.g.clone()).collect();
        let module = perm_module_closure(kernel.clone(), &defects, &perms)?;
        Ok(LinByFin(Arc::new(LbfInner { ell, dim, gens, quotient, index, transversal, tree, module, kernel })))
    }

    pub fn from_generators(ell: u32, dim: usize, gens: &[SdElem], cap: usize) -> Result<Self> {
        Self::from_generators_mod(ell, dim, gens, FlSubspace::zero(ell, dim), cap)
    }

    /// Same group modulo a larger F-invariant submodule `k ⊆ M`.
    pub fn quotient_by_module(&self, k: &FlSubspace) -> Result<Self> {
        if !self.0.module.contains_subspace(k) {
            return Err(Error::Invalid("kernel is not contained in the module part".into()));
        }
        let kernel = k.sum(&self.0.kernel)?;
        let perms = self.quotient_generators();
        let ops: Vec<Box<LinearMap<'_>>> =
            perms.iter().map(|g| Box::new(move |v: &FlVector| v.permuted(g)) as Box<LinearMap<'_>>).collect();
        let refs: Vec<&LinearMap<'_>> = ops.iter().map(|b| b.as_ref()).collect();
        if !kernel.is_invariant(&refs) {
            return Err(Error::Invalid("kernel is not invariant under the action".into()));
        }
        let inner = &self.0;
        Ok(LinByFin(Arc::new(LbfInner {
            ell: inner.ell,
            dim: inner.dim,
            gens: inner.gens.iter().map(|g| SdElem { v: kernel.reduce(&g.v), g: g.g.clone() }).collect(),
            quotient: inner.quotient.clone(),
            index: inner.index.clone(),
            transversal: inner.transversal.iter().map(|t| kernel.reduce(t)).collect(),
            tree: inner.tree.clone(),
            module: inner.module.clone(),
            kernel,
        })))
    }

    /// Quotient by `C = G ∩ ⟨(w, 1)⟩` for an action-fixed `w`. Returns the new
    /// group and whether `C` was nontrivial.
    pub fn quotient_central_cyclic(&self, w: &FlVector) -> Result<(Self, bool)> {
        if w.dim() != self.0.dim {
            return Err(Error::DimensionMismatch { expected: self.0.dim, got: w.dim() });
        }
        if self.0.gens.iter().any(|g| w.permuted(&g.g) != *w) {
            return Err(Error::NotActionFixed);
        }
        if !self.0.module.contains(w) || self.0.kernel.contains(w) {
            return Ok((self.clone(), false));
        }
        let c = FlSubspace::span(self.0.ell, self.0.dim, std::slice::from_ref(w))?;
        Ok((self.quotient_by_module(&c)?, true))
    }

    pub fn ell(&self) -> u32 {
        self.0.ell
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn generators(&self) -> &[SdElem] {
        &self.0.gens
    }

    pub fn quotient_generators(&self) -> Vec<Perm> {
        self.0.gens.iter().map(|g| g.g.clone()).collect()
    }

    /// Elements of F in breadth-first order (identity first).
    pub fn quotient(&self) -> &[Perm] {
        &self.0.quotient
    }

    pub fn quotient_index(&self, f: &Perm) -> Option<usize> {
        self.0.index.get(f).copied()
    }

    pub fn transversal(&self, i: usize) -> &FlVector {
        &self.0.transversal[i]
    }

    /// Breadth-first tree: for each non-identity quotient element, its parent
    /// index and the generator that extends it.
    pub fn transversal_tree(&self) -> &[Option<(usize, usize)>] {
        &self.0.tree
    }

    pub fn module(&self) -> &FlSubspace {
        &self.0.module
    }

    pub fn kernel(&self) -> &FlSubspace {
        &self.0.kernel
    }

    /// `rank M − rank K`.
    pub fn effective_rank(&self) -> usize {
        self.0.module.rank() - self.0.kernel.rank()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.ell).pow(self.effective_rank() as u32) * self.0.quotient.len()
    }

    /// Canonical form: vector part reduced modulo K.
    pub fn normalize(&self, x: &SdElem) -> SdElem {
        SdElem { v: self.0.kernel.reduce(&x.v), g: x.g.clone() }
    }

    pub fn contains(&self, x: &SdElem) -> bool {
        if x.dim() != self.0.dim || x.ell() != self.0.ell {
            return false;
        }
        match self.quotient_index(&x.g) {
            Some(i) => self.0.module.contains(&x.v.sub(&self.0.transversal[i])),
            None => false,
        }
    }

    /// `t(f) + f·t(f') − t(f f')`, which lies in M.
    pub fn cocycle_defect(&self, i: usize, j: usize) -> FlVector {
        let (f, g) = (&self.0.quotient[i], &self.0.quotient[j]);
        let k = self.0.index[&f.mul(g)];
        self.0.transversal[i].add(&self.0.transversal[j].permuted(f)).sub(&self.0.transversal[k])
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> SdElem {
        let i = rng.gen_range(0..self.0.quotient.len());
        let mut v = self.0.transversal[i].clone();
        for b in self.0.module.basis() {
            let c = rng.gen_range(0..self.0.ell);
            v.axpy(c, b).expect("module vector has matching shape");
        }
        self.normalize(&SdElem { v, g: self.0.quotient[i].clone() })
    }

    /// Elements `(v, f)` of the group that commute, modulo K, with every
    /// element of `against`.
    fn commuting_subgroup(&self, against: &[SdElem]) -> Result<SubgroupData> {
        let ell = self.0.ell;
        let kernel = &self.0.kernel;
        let ops: Vec<Box<LinearMap<'_>>> = against
            .iter()
            .map(|x| {
                let g = x.g.clone();
                Box::new(move |m: &FlVector| kernel.reduce(&m.sub(&m.permuted(&g)))) as Box<LinearMap<'_>>
            })
            .collect();
        let mut quotient = Vec::new();
        let mut particular = Vec::new();
        let mut directions = None;
        for (i, f) in self.0.quotient.iter().enumerate() {
            if !against.iter().all(|x| f.mul(&x.g) == x.g.mul(f)) {
                continue;
            }
            let t = &self.0.transversal[i];
            let cons: Vec<Constraint> = against
                .iter()
                .zip(&ops)
                .map(|(x, op)| {
                    // (1 − g) m ≡ a − f·a − (1 − g) t(f)  (mod K)
                    let rhs = x.v.sub(&x.v.permuted(f)).sub(&t.sub(&t.permuted(&x.g)));
                    Constraint { op: op.as_ref(), rhs: kernel.reduce(&rhs) }
                })
                .collect();
            if let Some(sol) = solve_affine(&cons, &self.0.module)? {
                quotient.push(f.clone());
                particular.push(sol.particular);
                directions.get_or_insert(sol.directions);
            }
        }
        let directions = directions.unwrap_or_else(|| self.0.kernel.clone());
        Ok(SubgroupData { ell, quotient, particular, directions, kernel_rank: self.0.kernel.rank() })
    }

    /// Exact center modulo K.
    pub fn center(&self) -> Result<SubgroupData> {
        self.commuting_subgroup(&self.0.gens.clone())
    }

    pub fn centralizer(&self, x: &SdElem) -> Result<SubgroupData> {
        if !self.contains(x) {
            return Err(Error::NotMember);
        }
        self.commuting_subgroup(std::slice::from_ref(&self.normalize(x)))
    }

    /// Whether `z` commutes with every generator modulo K.
    pub fn is_central(&self, z: &SdElem) -> bool {
        self.0.gens.iter().all(|g| self.mul(z, g) == self.mul(g, z))
    }

    /// Module part of the normal closure of a vector-part element `(a, 1)`.
    pub fn normal_closure_module(&self, x: &SdElem) -> Result<FlSubspace> {
        if !self.contains(x) {
            return Err(Error::NotMember);
        }
        if !x.g.is_identity() {
            return Err(Error::Invalid("normal closure is only computed for vector-part elements".into()));
        }
        perm_module_closure(self.0.kernel.clone(), std::slice::from_ref(&x.v), &self.quotient_generators())
    }

    /// Coordinates of the regular action of `x` on an enumeration of this group.
    pub fn regular_perm(&self, elems: &crate::fingroup::Enumeration<SdElem>, x: &SdElem) -> Result<Perm> {
        let images = elems
            .elements()
            .iter()
            .map(|h| elems.index_of(&self.mul(x, h)).map(|i| i as u32).ok_or(Error::NotMember))
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(images)
    }

    /// Full element list, only for groups of modest order.
    pub fn enumerate(&self, cap: usize) -> Result<crate::fingroup::Enumeration<SdElem>> {
        if self.order() > BigUint::from(cap) {
            return Err(Error::CapExceeded { cap });
        }
        enumerate(self, &self.0.gens, cap)
    }
}

impl Group for LinByFin {
    type Elem = SdElem;

    fn identity(&self) -> SdElem {
        SdElem::identity(self.0.ell, self.0.dim)
    }

    fn mul(&self, a: &SdElem, b: &SdElem) -> SdElem {
        self.normalize(&a.mul(b))
    }

    fn inv(&self, a: &SdElem) -> SdElem {
        self.normalize(&a.inv())
    }
}

/// Image of a homomorphism into a linear-by-finite group, as a group of its own.
pub fn image_group(f: &FreeHom<LinByFin>, cap: usize) -> Result<LinByFin> {
    let t = f.target();
    LinByFin::from_generators_mod(t.ell(), t.dim(), f.images(), t.kernel().clone(), cap)
}

/// Both kernel containments between homomorphisms into linear-by-finite
/// groups: `(ker f ⊆ ker g, ker g ⊆ ker f)`. The paired subgroup D is built
/// once; `ker f ⊆ ker g` holds exactly when `|D| = |im f|`.
pub fn linbyfin_kernel_relation(f: &FreeHom<LinByFin>, g: &FreeHom<LinByFin>, cap: usize) -> Result<(bool, bool)> {
    if f.rank() != g.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), got: g.rank() });
    }
    let (tf, tg) = (f.target(), g.target());
    if tf.ell() != tg.ell() {
        return Err(Error::FieldMismatch { expected: tf.ell(), got: tg.ell() });
    }
    let ell = tf.ell();
    let dim = tf.dim() + tg.dim();
    let mut kernel = FlSubspace::zero(ell, dim);
    for b in tf.kernel().basis() {
        kernel.insert(&FlVector::concat(ell, &[b, &FlVector::zero(ell, tg.dim())]))?;
    }
    for b in tg.kernel().basis() {
        kernel.insert(&FlVector::concat(ell, &[&FlVector::zero(ell, tf.dim()), b]))?;
    }
    let gens: Vec<SdElem> = f.images().iter().zip(g.images()).map(|(a, b)| SdElem::direct_sum(&[a, b])).collect();
    let d = LinByFin::from_generators_mod(ell, dim, &gens, kernel, cap)?.order();
    Ok((d == image_group(f, cap)?.order(), d == image_group(g, cap)?.order()))
}

/// Kernel containment `ker f ⊆ ker g` for homomorphisms into linear-by-finite groups.
pub fn linbyfin_kernel_containment(f: &FreeHom<LinByFin>, g: &FreeHom<LinByFin>, cap: usize) -> Result<bool> {
    Ok(linbyfin_kernel_relation(f, g, cap)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{FinGroup, GElem, DEFAULT_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn klein() -> (FinGroup, Vec<Perm>) {
        let q = FinGroup::perm_group_from_cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        let regs = q.generators().iter().map(|g| q.regular_perm(g, 100).unwrap()).collect();
        (q, regs)
    }

    fn sd(v: FlVector, g: &Perm) -> SdElem {
        SdElem::new(v, g.clone()).unwrap()
    }

    #[test]
    fn telescoping_square() {
        let (_, r) = klein();
        let x = sd(FlVector::unit(2, 4, 0), &r[0]);
        let sq = x.pow(2);
        let expect = FlVector::unit(2, 4, 0).add(&FlVector::unit(2, 4, r[0].apply(0)));
        assert_eq!(sq, sd(expect, &Perm::identity(4)));
        let y = sd(FlVector::from_coords(2, &[1, 0, 1, 1]), &r[1]);
        assert!(y.mul(&y.inv()).is_identity());
        let z = sd(FlVector::zero(2, 4), &r[0]).mul(&sd(FlVector::zero(2, 4), &r[1]));
        assert_eq!(z, sd(FlVector::zero(2, 4), &r[0].mul(&r[1])));
    }

    #[test]
    fn zero_section_is_base() {
        let (_, r) = klein();
        let gens: Vec<SdElem> = r.iter().map(|g| sd(FlVector::zero(2, 4), g)).collect();
        let g = LinByFin::from_generators(2, 4, &gens, 100).unwrap();
        assert_eq!(g.module().rank(), 0);
        assert_eq!(g.order(), BigUint::from(4u32));
    }

    #[test]
    fn klein_r2_against_ambient_bfs() {
        let (_, r) = klein();
        let gens = vec![sd(FlVector::unit(2, 4, 0), &r[0]), sd(FlVector::zero(2, 4), &r[1])];
        let g = LinByFin::from_generators(2, 4, &gens, 100).unwrap();
        assert_eq!(g.quotient().len(), 4);
        assert_eq!(g.module().rank(), 3);
        assert_eq!(g.order(), BigUint::from(32u32));
        // Oracle: brute-force closure inside the 64-element ambient.
        let amb = FinGroup::affine(2, 4, gens.clone()).unwrap();
        let e = amb.enumerate(1000).unwrap();
        assert_eq!(e.len(), 32);
        // Augmentation-zero vectors: even weight.
        for b in g.module().basis() {
            assert_eq!(b.support().len() % 2, 0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let x = g.random_element(&mut rng);
            assert!(e.contains(&GElem::Affine(x.clone())));
            assert!(g.contains(&x));
        }
        // Commutator lands in the module.
        let (a, b) = (&gens[0], &gens[1]);
        let c = a.mul(b).mul(&a.inv()).mul(&b.inv());
        assert!(c.g().is_identity());
        assert_eq!(c.v(), &FlVector::unit(2, 4, 0).add(&FlVector::unit(2, 4, r[1].apply(0))));
        assert!(g.module().contains(c.v()));
    }

    #[test]
    fn center_of_full_klein_ambient() {
        let (_, r) = klein();
        let mut gens = vec![sd(FlVector::unit(2, 4, 0), &Perm::identity(4))];
        gens.extend(r.iter().map(|g| sd(FlVector::zero(2, 4), g)));
        let g = LinByFin::from_generators(2, 4, &gens, 100).unwrap();
        assert_eq!(g.order(), BigUint::from(64u32));
        let z = g.center().unwrap();
        assert_eq!(z.order(), BigUint::from(2u32));
        let all = g.enumerate(1000).unwrap();
        let brute: Vec<_> = all.elements().iter().filter(|x| all.elements().iter().all(|y| g.commutes(x, y))).collect();
        assert_eq!(brute.len(), 2);
        assert!(brute.iter().any(|x| x.v() == &FlVector::all_ones(2, 4)));

        let (p, nontrivial) = g.quotient_central_cyclic(&FlVector::all_ones(2, 4)).unwrap();
        assert!(nontrivial);
        assert_eq!(p.order(), BigUint::from(32u32));
        assert!(matches!(
            g.quotient_central_cyclic(&FlVector::unit(2, 4, 0)),
            Err(Error::NotActionFixed)
        ));
    }

    #[test]
    fn centralizer_in_u2_s3() {
        let s3 = FinGroup::perm_group_from_cycles(3, &["(1 2)", "(2 3)"]).unwrap();
        let regs: Vec<Perm> = s3.generators().iter().map(|g| s3.regular_perm(g, 100).unwrap()).collect();
        let mut gens = vec![sd(FlVector::unit(2, 6, 0), &Perm::identity(6))];
        gens.extend(regs.iter().map(|g| sd(FlVector::zero(2, 6), g)));
        let g = LinByFin::from_generators(2, 6, &gens, 100).unwrap();
        assert_eq!(g.order(), BigUint::from(384u32));
        let c = g.centralizer(&gens[0]).unwrap();
        assert_eq!(c.quotient.len(), 1);
        assert_eq!(c.directions.rank(), 6);
        let all = g.enumerate(1000).unwrap();
        let brute = all.elements().iter().filter(|x| g.commutes(x, &gens[0])).count();
        assert_eq!(BigUint::from(brute), c.order());
        assert_eq!(g.normal_closure_module(&gens[0]).unwrap().rank(), 6);
        let bz = all.elements().iter().filter(|x| all.elements().iter().all(|y| g.commutes(x, y))).count();
        assert_eq!(BigUint::from(bz), g.center().unwrap().order());
        assert_eq!(bz, 2);
    }

    #[test]
    fn cocycle_and_normal_form() {
        let s3 = FinGroup::perm_group_from_cycles(3, &["(1 2)", "(2 3)"]).unwrap();
        let regs: Vec<Perm> = s3.generators().iter().map(|g| s3.regular_perm(g, 100).unwrap()).collect();
        let gens = vec![sd(FlVector::unit(3, 6, 0), &regs[0]), sd(FlVector::unit(3, 6, 2), &regs[1])];
        let g = LinByFin::from_generators(3, 6, &gens, DEFAULT_CAP).unwrap();
        let n = g.quotient().len();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            assert!(g.module().contains(&g.cocycle_defect(i, j)));
        }
        let (q, _) = g.quotient_central_cyclic(&FlVector::all_ones(3, 6)).unwrap();
        for _ in 0..100 {
            let (a, b) = (q.random_element(&mut rng), q.random_element(&mut rng));
            let lhs = q.normalize(&a.mul(&b));
            let rhs = q.mul(&q.normalize(&a), &q.normalize(&b));
            assert_eq!(lhs, rhs);
            assert!(q.contains(&lhs));
        }
    }

    #[test]
    fn goursat_for_linbyfin() {
        let (_, r) = klein();
        let gens = vec![sd(FlVector::unit(2, 4, 0), &r[0]), sd(FlVector::zero(2, 4), &r[1])];
        let g = LinByFin::from_generators(2, 4, &gens, 100).unwrap();
        let f = FreeHom::new(2, g.clone(), gens.clone()).unwrap();
        // The base map forgets the vector part; its kernel is larger.
        let base_gens: Vec<SdElem> = gens.iter().map(|x| sd(FlVector::zero(2, 4), x.g())).collect();
        let b = LinByFin::from_generators(2, 4, &base_gens, 100).unwrap();
        let h = FreeHom::new(2, b, base_gens).unwrap();
        assert!(linbyfin_kernel_containment(&f, &f, 100).unwrap());
        assert!(linbyfin_kernel_containment(&f, &h, 100).unwrap());
        assert!(!linbyfin_kernel_containment(&h, &f, 100).unwrap());
    }
}
