//! Concrete finite groups with exact arithmetic and enumeration.
//!
//! A [`FinGroup`] is a generating set inside one of several backends
//! (permutations, a Cayley table, a direct product, or an affine group
//! F_ℓ^d ⋊ Sym(d)). Its element list is built lazily by breadth-first
//! closure and cached; every structure query works from that list.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::semidirect::SdElem;
use crate::words::{ClassMarkedFreeGroup, FreeAut, Word};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Minimal group interface: elements are values in canonical form.
pub trait Group: Clone {
    type Elem: Clone + Eq + Hash + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    /// `a b a⁻¹`.
    fn conj(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

impl<A: Group, B: Group> Group for (A, B) {
    type Elem = (A::Elem, B::Elem);

    fn identity(&self) -> Self::Elem {
        (self.0.identity(), self.1.identity())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.0.mul(&a.0, &b.0), self.1.mul(&a.1, &b.1))
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (self.0.inv(&a.0), self.1.inv(&a.1))
    }
}

/// Elements of a finitely generated subgroup in breadth-first order; the
/// identity is always at index 0.
#[derive(Clone, Debug)]
pub struct Enumeration<E: Eq + Hash> {
    elems: Vec<E>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> Enumeration<E> {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elems
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn enumerate<G: Group>(group: &G, gens: &[G::Elem], cap: usize) -> Result<Enumeration<G::Elem>> {
    let id = group.identity();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = group.mul(&x, g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    Ok(Enumeration { elems, index })
}

/// Element of a [`FinGroup`]; the variant matches the group's backend.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GElem {
    Perm(Perm),
    Table(u32),
    Tuple(Vec<GElem>),
    Affine(SdElem),
}

impl GElem {
    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            GElem::Perm(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Debug for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GElem::Perm(p) => write!(f, "{p}"),
            GElem::Table(i) => write!(f, "#{i}"),
            GElem::Tuple(xs) => {
                f.write_str("[")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            GElem::Affine(s) => write!(f, "{s:?}"),
        }
    }
}

#[derive(Debug)]
enum Backend {
    Perm { degree: usize },
    /// Row-major Cayley table on `0..n` with identity 0.
    Table { n: usize, table: Vec<u32>, inverse: Vec<u32> },
    Product(Vec<FinGroup>),
    Affine { ell: u32, dim: usize },
}

struct Inner {
    backend: Backend,
    gens: Vec<GElem>,
    cache: OnceLock<Arc<Enumeration<GElem>>>,
}

/// A finite group given by generators inside a backend.
#[derive(Clone)]
pub struct FinGroup(Arc<Inner>);

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroup").field("backend", &self.0.backend).field("gens", &self.0.gens).finish()
    }
}

impl FinGroup {
    fn from_parts(backend: Backend, gens: Vec<GElem>) -> Self {
        FinGroup(Arc::new(Inner { backend, gens, cache: OnceLock::new() }))
    }

    /// Permutation group on `degree` points.
    pub fn perm_group(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch { expected: degree, got: g.degree() });
            }
        }
        Ok(Self::from_parts(Backend::Perm { degree }, gens.into_iter().map(GElem::Perm).collect()))
    }

    /// Parses generators written in cycle notation.
    pub fn perm_group_from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens.iter().map(|s| Perm::parse_cycles(s, degree)).collect::<Result<Vec<_>>>()?;
        Self::perm_group(degree, perms)
    }

    /// Group from an explicit multiplication table with identity 0.
    pub fn from_table(n: usize, table: Vec<u32>, gens: Vec<u32>) -> Result<Self> {
        if table.len() != n * n || n == 0 {
            return Err(Error::Invalid("table must be n × n".into()));
        }
        if (0..n).any(|i| table[i] != i as u32 || table[i * n] != i as u32) {
            return Err(Error::Invalid("element 0 must be the identity".into()));
        }
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] == 0) {
                inverse[a] = b as u32;
            } else {
                return Err(Error::Invalid(format!("table element {a} has no inverse")));
            }
        }
        let gens = gens.into_iter().map(GElem::Table).collect();
        Ok(Self::from_parts(Backend::Table { n, table, inverse }, gens))
    }

    /// Cyclic group Z/m as a table, generated by 1.
    pub fn cyclic(m: usize) -> Self {
        let table = (0..m * m).map(|k| ((k / m + k % m) % m) as u32).collect();
        Self::from_table(m, table, if m > 1 { vec![1] } else { vec![] }).expect("cyclic table is valid")
    }

    /// Direct product; generators are the factor generators placed in their slots.
    pub fn product(factors: Vec<FinGroup>) -> Self {
        let ids: Vec<GElem> = factors.iter().map(|f| f.identity()).collect();
        let mut gens = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            for g in f.generators() {
                let mut t = ids.clone();
                t[k] = g.clone();
                gens.push(GElem::Tuple(t));
            }
        }
        Self::from_parts(Backend::Product(factors), gens)
    }

    /// Subgroup of F_ℓ^dim ⋊ Sym(dim) generated by affine elements.
    pub fn affine(ell: u32, dim: usize, gens: Vec<SdElem>) -> Result<Self> {
        for g in &gens {
            if g.v().ell() != ell {
                return Err(Error::FieldMismatch { expected: ell, got: g.v().ell() });
            }
            if g.v().dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.v().dim() });
            }
        }
        Ok(Self::from_parts(Backend::Affine { ell, dim }, gens.into_iter().map(GElem::Affine).collect()))
    }

    /// Same ambient backend, new generators.
    pub fn subgroup(&self, gens: Vec<GElem>) -> Self {
        let backend = match &self.0.backend {
            Backend::Perm { degree } => Backend::Perm { degree: *degree },
            Backend::Table { n, table, inverse } => {
                Backend::Table { n: *n, table: table.clone(), inverse: inverse.clone() }
            }
            Backend::Product(fs) => Backend::Product(fs.clone()),
            Backend::Affine { ell, dim } => Backend::Affine { ell: *ell, dim: *dim },
        };
        Self::from_parts(backend, gens)
    }

    pub fn generators(&self) -> &[GElem] {
        &self.0.gens
    }

    pub fn perm_degree(&self) -> Option<usize> {
        match self.0.backend {
            Backend::Perm { degree } => Some(degree),
            _ => None,
        }
    }

    /// Cached breadth-first element list; `CapExceeded` past `cap` elements.
    pub fn enumerate(&self, cap: usize) -> Result<Arc<Enumeration<GElem>>> {
        if let Some(e) = self.0.cache.get() {
            if e.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
            return Ok(e.clone());
        }
        let e = Arc::new(enumerate(self, &self.0.gens, cap)?);
        Ok(self.0.cache.get_or_init(|| e).clone())
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(self.enumerate(cap)?.len())
    }

    pub fn contains(&self, g: &GElem, cap: usize) -> Result<bool> {
        Ok(self.enumerate(cap)?.contains(g))
    }

    pub fn element_order(&self, g: &GElem) -> usize {
        let mut x = g.clone();
        let mut k = 1;
        while !self.is_identity(&x) {
            x = self.mul(&x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|a| gens.iter().all(|b| self.commutes(a, b)))
    }

    pub fn is_cyclic(&self, cap: usize) -> Result<bool> {
        let e = self.enumerate(cap)?;
        if !self.is_abelian() {
            return Ok(false);
        }
        Ok(e.elements().iter().any(|g| self.element_order(g) == e.len()))
    }

    pub fn exponent(&self, cap: usize) -> Result<usize> {
        let e = self.enumerate(cap)?;
        Ok(e.elements().iter().fold(1, |acc, g| crate::perm::lcm(acc, self.element_order(g))))
    }

    /// Elements commuting with every generator.
    pub fn center(&self, cap: usize) -> Result<Vec<GElem>> {
        let e = self.enumerate(cap)?;
        let gens = self.generators();
        Ok(e.elements().iter().filter(|z| gens.iter().all(|g| self.commutes(z, g))).cloned().collect())
    }

    pub fn is_centerless(&self, cap: usize) -> Result<bool> {
        Ok(self.center(cap)?.len() == 1)
    }

    pub fn centralizer(&self, g: &GElem, cap: usize) -> Result<Vec<GElem>> {
        let e = self.enumerate(cap)?;
        Ok(e.elements().iter().filter(|z| self.commutes(z, g)).cloned().collect())
    }

    /// Conjugacy classes, each listed in enumeration order, classes ordered by
    /// their first element.
    pub fn conj_classes(&self, cap: usize) -> Result<Vec<Vec<GElem>>> {
        let e = self.enumerate(cap)?;
        let mut class_of = vec![usize::MAX; e.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..e.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for g in self.generators() {
                    let c = self.conj(g, &e.elements()[i]);
                    let j = e.index_of(&c).expect("closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(classes
            .into_iter()
            .map(|c| c.into_iter().map(|i| e.elements()[i].clone()).collect())
            .collect())
    }

    /// Left regular representation: `g` sends coordinate `h` to `g h`, with
    /// coordinates indexed by the cached enumeration (identity at 0).
    pub fn regular_perm(&self, g: &GElem, cap: usize) -> Result<Perm> {
        let e = self.enumerate(cap)?;
        let images = e
            .elements()
            .iter()
            .map(|h| e.index_of(&self.mul(g, h)).map(|i| i as u32).ok_or(Error::NotMember))
            .collect::<Result<Vec<_>>>()?;
        Ok(Perm::from_images_unchecked(images))
    }

    /// Inverse of [`regular_perm`](Self::regular_perm).
    pub fn from_regular_perm(&self, p: &Perm, cap: usize) -> Result<GElem> {
        let e = self.enumerate(cap)?;
        if p.degree() != e.len() {
            return Err(Error::DimensionMismatch { expected: e.len(), got: p.degree() });
        }
        Ok(e.elements()[p.apply(0)].clone())
    }

    /// Normal closure of `s` as an element list.
    pub fn normal_closure(&self, s: &[GElem], cap: usize) -> Result<Enumeration<GElem>> {
        self.enumerate(cap)?;
        let mut gens: Vec<GElem> = s.iter().filter(|x| !self.is_identity(x)).cloned().collect();
        loop {
            let n = enumerate(self, &gens, cap)?;
            let missing = gens
                .iter()
                .flat_map(|x| self.generators().iter().map(move |g| (g, x)))
                .map(|(g, x)| self.conj(g, x))
                .find(|c| !n.contains(c));
            match missing {
                Some(c) => gens.push(c),
                None => return Ok(n),
            }
        }
    }

    /// Quotient by the normal closure of `s`, realised as the permutation
    /// action on left cosets.
    pub fn quotient_by_normal_closure(&self, s: &[GElem], cap: usize) -> Result<(FinGroup, Projection)> {
        let e = self.enumerate(cap)?;
        let n = self.normal_closure(s, cap)?;
        let mut coset_of = vec![usize::MAX; e.len()];
        let mut reps = Vec::new();
        for (i, g) in e.elements().iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g.clone());
            for x in n.elements() {
                let j = e.index_of(&self.mul(g, x)).expect("coset member in group");
                coset_of[j] = c;
            }
        }
        let proj = Projection { group: self.clone(), enumeration: e, coset_of, reps };
        let gens = self.generators().iter().map(|g| proj.apply(g)).collect::<Result<Vec<_>>>()?;
        let quotient = FinGroup::perm_group(proj.reps.len(), gens.into_iter().map(|g| match g {
            GElem::Perm(p) => p,
            _ => unreachable!(),
        }).collect())?;
        Ok((quotient, proj))
    }
}

impl Group for FinGroup {
    type Elem = GElem;

    fn identity(&self) -> GElem {
        match &self.0.backend {
            Backend::Perm { degree } => GElem::Perm(Perm::identity(*degree)),
            Backend::Table { .. } => GElem::Table(0),
            Backend::Product(fs) => GElem::Tuple(fs.iter().map(|f| f.identity()).collect()),
            Backend::Affine { ell, dim } => GElem::Affine(SdElem::identity(*ell, *dim)),
        }
    }

    fn mul(&self, a: &GElem, b: &GElem) -> GElem {
        match (&self.0.backend, a, b) {
            (Backend::Perm { .. }, GElem::Perm(x), GElem::Perm(y)) => GElem::Perm(x.mul(y)),
            (Backend::Table { n, table, .. }, GElem::Table(x), GElem::Table(y)) => {
                GElem::Table(table[*x as usize * n + *y as usize])
            }
            (Backend::Product(fs), GElem::Tuple(x), GElem::Tuple(y)) => {
                GElem::Tuple(fs.iter().zip(x.iter().zip(y)).map(|(f, (p, q))| f.mul(p, q)).collect())
            }
            (Backend::Affine { .. }, GElem::Affine(x), GElem::Affine(y)) => GElem::Affine(x.mul(y)),
            _ => panic!("element does not belong to this group's backend"),
        }
    }

    fn inv(&self, a: &GElem) -> GElem {
        match (&self.0.backend, a) {
            (Backend::Perm { .. }, GElem::Perm(x)) => GElem::Perm(x.inv()),
            (Backend::Table { inverse, .. }, GElem::Table(x)) => GElem::Table(inverse[*x as usize]),
            (Backend::Product(fs), GElem::Tuple(x)) => {
                GElem::Tuple(fs.iter().zip(x).map(|(f, p)| f.inv(p)).collect())
            }
            (Backend::Affine { .. }, GElem::Affine(x)) => GElem::Affine(x.inv()),
            _ => panic!("element does not belong to this group's backend"),
        }
    }
}

/// Projection onto a coset-action quotient.
#[derive(Clone)]
pub struct Projection {
    group: FinGroup,
    enumeration: Arc<Enumeration<GElem>>,
    coset_of: Vec<usize>,
    reps: Vec<GElem>,
}

impl Projection {
    pub fn apply(&self, g: &GElem) -> Result<GElem> {
        let images = self
            .reps
            .iter()
            .map(|r| {
                let j = self.enumeration.index_of(&self.group.mul(g, r)).ok_or(Error::NotMember)?;
                Ok(self.coset_of[j] as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GElem::Perm(Perm::from_images_unchecked(images)))
    }

    pub fn quotient_order(&self) -> usize {
        self.reps.len()
    }
}

/// Homomorphism from a free group of rank `rank`, fixed by generator images.
#[derive(Clone, Debug)]
pub struct FreeHom<G: Group> {
    rank: usize,
    target: G,
    images: Vec<G::Elem>,
    inverses: Vec<G::Elem>,
}

impl<G: Group> FreeHom<G> {
    pub fn new(rank: usize, target: G, images: Vec<G::Elem>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: images.len() });
        }
        let inverses = images.iter().map(|x| target.inv(x)).collect();
        Ok(FreeHom { rank, target, images, inverses })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn target(&self) -> &G {
        &self.target
    }

    pub fn images(&self) -> &[G::Elem] {
        &self.images
    }

    pub fn eval(&self, w: &Word) -> G::Elem {
        let mut acc = self.target.identity();
        for &l in w.letters() {
            let x = if l > 0 { &self.images[l as usize - 1] } else { &self.inverses[(-l) as usize - 1] };
            acc = self.target.mul(&acc, x);
        }
        acc
    }

    /// `self ∘ t`.
    pub fn precompose(&self, t: &FreeAut) -> Result<Self> {
        if t.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: t.rank() });
        }
        Self::new(self.rank, self.target.clone(), t.images().iter().map(|w| self.eval(w)).collect())
    }

    /// Post-composition with a map on target elements.
    pub fn map_target<H: Group>(&self, target: H, f: impl Fn(&G::Elem) -> H::Elem) -> Result<FreeHom<H>> {
        FreeHom::new(self.rank, target, self.images.iter().map(f).collect())
    }

    pub fn image_enumeration(&self, cap: usize) -> Result<Enumeration<G::Elem>> {
        enumerate(&self.target, &self.images, cap)
    }
}

impl FreeHom<FinGroup> {
    /// Image subgroup as a group of its own.
    pub fn image(&self) -> FinGroup {
        self.target.subgroup(self.images.clone())
    }

    pub fn is_surjective(&self, cap: usize) -> Result<bool> {
        Ok(self.image().order(cap)? == self.target.order(cap)?)
    }
}

pub fn hom_by_images(domain: &ClassMarkedFreeGroup, target: FinGroup, images: Vec<GElem>) -> Result<FreeHom<FinGroup>> {
    FreeHom::new(domain.rank(), target, images)
}

/// Whether `ker f ⊆ ker g`, decided by comparing `|⟨(f(γᵢ), g(γᵢ))⟩|` with
/// `|im f|`: the projection of the paired subgroup onto `im f` is injective
/// exactly when the kernels nest.
pub fn check_kernel_containment<A: Group, B: Group>(f: &FreeHom<A>, g: &FreeHom<B>, cap: usize) -> Result<bool> {
    if f.rank() != g.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), got: g.rank() });
    }
    let im_f = f.image_enumeration(cap)?.len();
    let pair = (f.target().clone(), g.target().clone());
    let gens: Vec<_> = f.images().iter().cloned().zip(g.images().iter().cloned()).collect();
    let d = enumerate(&pair, &gens, cap)?.len();
    Ok(d == im_f)
}

/// Homomorphism into the direct product with kernel `ker f ∩ ker g`.
pub fn intersect_kernels(f: &FreeHom<FinGroup>, g: &FreeHom<FinGroup>) -> Result<FreeHom<FinGroup>> {
    if f.rank() != g.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), got: g.rank() });
    }
    let target = FinGroup::product(vec![f.target().clone(), g.target().clone()]);
    let images = f.images().iter().zip(g.images()).map(|(a, b)| GElem::Tuple(vec![a.clone(), b.clone()])).collect();
    FreeHom::new(f.rank(), target, images)
}

/// Reduction of a free group of the given rank onto `(Z/m)^rank`.
pub fn abelianization_mod(m: usize, rank: usize) -> Result<FreeHom<FinGroup>> {
    let target = FinGroup::product((0..rank).map(|_| FinGroup::cyclic(m)).collect());
    let images = (0..rank)
        .map(|i| GElem::Tuple((0..rank).map(|j| GElem::Table(u32::from(i == j && m > 1))).collect()))
        .collect();
    FreeHom::new(rank, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FinGroup {
        FinGroup::perm_group_from_cycles(3, &["(1 2)", "(2 3)"]).unwrap()
    }

    fn word(l: &[i32]) -> Word {
        Word::reduce(l, 2).unwrap()
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(s3().order(DEFAULT_CAP).unwrap(), 6);
        let v4 = FinGroup::perm_group_from_cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        assert_eq!(v4.order(DEFAULT_CAP).unwrap(), 4);
        assert!(matches!(s3().order(5), Err(Error::CapExceeded { cap: 5 })));
        assert_eq!(FinGroup::cyclic(7).order(100).unwrap(), 7);
        let p = FinGroup::product(vec![s3(), FinGroup::cyclic(2)]);
        assert_eq!(p.order(100).unwrap(), 12);
    }

    #[test]
    fn structure_queries() {
        let g = s3();
        assert_eq!(g.center(100).unwrap().len(), 1);
        let c = GElem::Perm(Perm::parse_cycles("(1 2 3)", 3).unwrap());
        let cent = g.centralizer(&c, 100).unwrap();
        assert_eq!(cent.len(), 3);
        assert!(cent.iter().all(|z| g.commutes(z, &c)));
        let mut sizes: Vec<usize> = g.conj_classes(100).unwrap().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(!g.is_cyclic(100).unwrap());
        assert!(FinGroup::cyclic(6).is_cyclic(100).unwrap());
        assert_eq!(g.exponent(100).unwrap(), 6);
    }

    #[test]
    fn hom_evaluation() {
        let f2 = ClassMarkedFreeGroup::new(2, vec![], None).unwrap();
        let g = s3();
        let h = hom_by_images(&f2, g.clone(), g.generators().to_vec()).unwrap();
        assert!(h.is_surjective(100).unwrap());
        assert_eq!(h.eval(&word(&[1, 2, -1])), GElem::Perm(Perm::parse_cycles("(1 3)", 3).unwrap()));
        let triv = hom_by_images(&f2, g.clone(), vec![g.identity(), g.identity()]).unwrap();
        assert_eq!(triv.image().order(100).unwrap(), 1);
    }

    #[test]
    fn kernel_containment_examples() {
        let z4 = FinGroup::cyclic(4);
        let z2 = FinGroup::cyclic(2);
        let f = FreeHom::new(2, z4.clone(), vec![GElem::Table(1), GElem::Table(1)]).unwrap();
        let g = FreeHom::new(2, z2.clone(), vec![GElem::Table(1), GElem::Table(1)]).unwrap();
        assert!(check_kernel_containment(&f, &f, 100).unwrap());
        assert!(check_kernel_containment(&f, &g, 100).unwrap());
        assert!(!check_kernel_containment(&g, &f, 100).unwrap());
        // γ₁² separates the two kernels.
        assert!(g.is_identity_of(&word(&[1, 1])) && !f.is_identity_of(&word(&[1, 1])));
        let triv = FreeHom::new(2, z2.clone(), vec![GElem::Table(0), GElem::Table(0)]).unwrap();
        assert!(check_kernel_containment(&f, &triv, 100).unwrap());
    }

    impl<G: Group> FreeHom<G> {
        fn is_identity_of(&self, w: &Word) -> bool {
            self.target.is_identity(&self.eval(w))
        }
    }

    #[test]
    fn intersection_mod_two_and_three() {
        let a2 = abelianization_mod(2, 2).unwrap();
        let a3 = abelianization_mod(3, 2).unwrap();
        let a6 = abelianization_mod(6, 2).unwrap();
        let both = intersect_kernels(&a2, &a3).unwrap();
        assert!(check_kernel_containment(&both, &a6, 1000).unwrap());
        assert!(check_kernel_containment(&a6, &both, 1000).unwrap());
        assert!(check_kernel_containment(&both, &a2, 1000).unwrap());
        let same = intersect_kernels(&a2, &a2).unwrap();
        assert!(check_kernel_containment(&same, &a2, 1000).unwrap());
        assert!(check_kernel_containment(&a2, &same, 1000).unwrap());
    }

    #[test]
    fn quotients() {
        let g = s3();
        let c3 = GElem::Perm(Perm::parse_cycles("(1 2 3)", 3).unwrap());
        let (q, proj) = g.quotient_by_normal_closure(std::slice::from_ref(&c3), 100).unwrap();
        assert_eq!(q.order(100).unwrap(), 2);
        assert!(q.is_identity(&proj.apply(&c3).unwrap()));
        let (q, _) = g.quotient_by_normal_closure(&[g.identity()], 100).unwrap();
        assert_eq!(q.order(100).unwrap(), 6);
        let z6 = FinGroup::cyclic(6);
        let (q, _) = z6.quotient_by_normal_closure(&[GElem::Table(2)], 100).unwrap();
        assert_eq!(q.order(100).unwrap(), 2);
        // Projection is a homomorphism on all pairs.
        let (_, proj) = g.quotient_by_normal_closure(&[c3], 100).unwrap();
        let e = g.enumerate(100).unwrap();
        for a in e.elements() {
            for b in e.elements() {
                let lhs = proj.apply(&g.mul(a, b)).unwrap();
                let (pa, pb) = (proj.apply(a).unwrap(), proj.apply(b).unwrap());
                assert_eq!(lhs.as_perm().unwrap(), &pa.as_perm().unwrap().mul(pb.as_perm().unwrap()));
            }
        }
    }

    #[test]
    fn regular_representation() {
        let g = s3();
        let e = g.enumerate(100).unwrap();
        for a in e.elements() {
            let p = g.regular_perm(a, 100).unwrap();
            assert_eq!(&g.from_regular_perm(&p, 100).unwrap(), a);
            for b in e.elements() {
                let pb = g.regular_perm(b, 100).unwrap();
                assert_eq!(p.mul(&pb), g.regular_perm(&g.mul(a, b), 100).unwrap());
            }
        }
    }
}
