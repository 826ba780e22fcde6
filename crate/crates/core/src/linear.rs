//! Exact linear algebra over a prime field F_ℓ.
//!
//! Vectors over F₂ are bit-packed into `u64` words and eliminated with XOR;
//! every other prime uses one byte per coordinate. Subspaces are kept in
//! reduced row-echelon form, so `reduce` returns a canonical coset
//! representative and equality of subspaces is equality of bases.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub fn is_prime(ell: u32) -> bool {
    ell >= 2 && (2..ell).take_while(|d| d * d <= ell).all(|d| !ell.is_multiple_of(d))
}

/// An F_ℓ-linear operator on vectors, as used by closures and solvers.
pub type LinearMap<'a> = dyn Fn(&FlVector) -> FlVector + 'a;

fn inv_mod(a: u32, ell: u32) -> u32 {
    // Fermat: a^(ℓ-2).
    let mut base = a % ell;
    let mut e = ell - 2;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % ell;
        }
        base = base * base % ell;
        e >>= 1;
    }
    acc
}

#[derive(Clone)]
enum Repr {
    Bits(Vec<u64>),
    Dense(Vec<u8>),
}

/// A vector in F_ℓ^d.
#[derive(Clone)]
pub struct FlVector {
    ell: u32,
    dim: usize,
    repr: Repr,
}

impl FlVector {
    pub fn zero(ell: u32, dim: usize) -> Self {
        let repr = if ell == 2 {
            Repr::Bits(vec![0; dim.div_ceil(64)])
        } else {
            Repr::Dense(vec![0; dim])
        };
        FlVector { ell, dim, repr }
    }

    /// Zero vector that always uses the byte representation, even for ℓ = 2.
    pub fn zero_dense(ell: u32, dim: usize) -> Self {
        FlVector { ell, dim, repr: Repr::Dense(vec![0; dim]) }
    }

    pub fn unit(ell: u32, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(ell, dim);
        v.set(i, 1);
        v
    }

    pub fn all_ones(ell: u32, dim: usize) -> Self {
        let mut v = Self::zero(ell, dim);
        for i in 0..dim {
            v.set(i, 1);
        }
        v
    }

    pub fn from_coords(ell: u32, coords: &[u32]) -> Self {
        let mut v = Self::zero(ell, coords.len());
        for (i, &c) in coords.iter().enumerate() {
            v.set(i, c % ell);
        }
        v
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_bitset(&self) -> bool {
        matches!(self.repr, Repr::Bits(_))
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        match &self.repr {
            Repr::Bits(w) => ((w[i >> 6] >> (i & 63)) & 1) as u32,
            Repr::Dense(d) => d[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, c: u32) {
        let c = c % self.ell;
        match &mut self.repr {
            Repr::Bits(w) => {
                if c == 1 {
                    w[i >> 6] |= 1 << (i & 63);
                } else {
                    w[i >> 6] &= !(1 << (i & 63));
                }
            }
            Repr::Dense(d) => d[i] = c as u8,
        }
    }

    pub fn to_coords(&self) -> Vec<u32> {
        (0..self.dim).map(|i| self.get(i)).collect()
    }

    /// Nonzero entries as `(index, scalar)` pairs in increasing index order.
    pub fn support(&self) -> Vec<(usize, u32)> {
        match &self.repr {
            Repr::Bits(w) => {
                let mut out = Vec::new();
                for (k, &word) in w.iter().enumerate() {
                    let mut x = word;
                    while x != 0 {
                        let b = x.trailing_zeros() as usize;
                        out.push((k * 64 + b, 1));
                        x &= x - 1;
                    }
                }
                out
            }
            Repr::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c as u32))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Bits(w) => w.iter().all(|&x| x == 0),
            Repr::Dense(d) => d.iter().all(|&x| x == 0),
        }
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.leading_from(0)
    }

    fn leading_from(&self, start: usize) -> Option<usize> {
        match &self.repr {
            Repr::Bits(w) => {
                for (k, &word) in w.iter().enumerate().skip(start >> 6) {
                    if word != 0 {
                        return Some(k * 64 + word.trailing_zeros() as usize);
                    }
                }
                None
            }
            Repr::Dense(d) => d.iter().skip(start).position(|&c| c != 0).map(|p| p + start),
        }
    }

    fn check_compatible(&self, other: &FlVector) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::FieldMismatch { expected: self.ell, got: other.ell });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    /// `self += c * other`; coordinates before `from` are assumed zero in `other`.
    fn axpy_from(&mut self, c: u32, other: &FlVector, from: usize) {
        let c = c % self.ell;
        if c == 0 {
            return;
        }
        if self.is_bitset() != other.is_bitset() {
            for i in from..self.dim {
                let y = other.get(i);
                if y != 0 {
                    let x = self.get(i);
                    self.set(i, x + c * y);
                }
            }
            return;
        }
        match (&mut self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => {
                for k in (from >> 6)..a.len() {
                    a[k] ^= b[k];
                }
            }
            (Repr::Dense(a), Repr::Dense(b)) => {
                let ell = self.ell;
                for k in from..a.len() {
                    if b[k] != 0 {
                        a[k] = ((a[k] as u32 + c * b[k] as u32) % ell) as u8;
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: u32, other: &FlVector) -> Result<()> {
        self.check_compatible(other)?;
        self.axpy_from(c, other, 0);
        Ok(())
    }

    pub fn add(&self, other: &FlVector) -> FlVector {
        let mut out = self.clone();
        out.axpy(1, other).expect("vector add: incompatible operands");
        out
    }

    pub fn sub(&self, other: &FlVector) -> FlVector {
        let mut out = self.clone();
        out.axpy(self.ell - 1, other).expect("vector sub: incompatible operands");
        out
    }

    pub fn scale(&self, c: u32) -> FlVector {
        let c = c % self.ell;
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Bits(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Repr::Dense(d) => {
                for x in d.iter_mut() {
                    *x = ((*x as u32 * c) % self.ell) as u8;
                }
            }
        }
        out
    }

    pub fn neg(&self) -> FlVector {
        self.scale(self.ell - 1)
    }

    /// Coordinate permutation `g·v`, with `(g·v)[g(i)] = v[i]`.
    pub fn permuted(&self, g: &Perm) -> FlVector {
        debug_assert_eq!(g.degree(), self.dim);
        let mut out = FlVector { ell: self.ell, dim: self.dim, repr: self.repr.clone() };
        match (&mut out.repr, &self.repr) {
            (Repr::Bits(o), Repr::Bits(_)) => {
                o.iter_mut().for_each(|x| *x = 0);
                for (i, _) in self.support() {
                    let j = g.apply(i);
                    o[j >> 6] |= 1 << (j & 63);
                }
            }
            (Repr::Dense(o), Repr::Dense(d)) => {
                for (i, &c) in d.iter().enumerate() {
                    o[g.apply(i)] = c;
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Same vector in the byte representation.
    pub fn to_dense(&self) -> FlVector {
        let mut out = FlVector::zero_dense(self.ell, self.dim);
        for (i, c) in self.support() {
            out.set(i, c);
        }
        out
    }

    /// Concatenation of several vectors over the same field.
    pub fn concat(ell: u32, parts: &[&FlVector]) -> FlVector {
        let dim = parts.iter().map(|p| p.dim).sum();
        let mut out = FlVector::zero(ell, dim);
        let mut off = 0;
        for p in parts {
            for (i, c) in p.support() {
                out.set(off + i, c);
            }
            off += p.dim;
        }
        out
    }

    /// Coordinates `start..start+len` as a vector of their own.
    pub fn slice(&self, start: usize, len: usize) -> FlVector {
        let mut out = FlVector::zero(self.ell, len);
        for (i, c) in self.support() {
            if i >= start && i < start + len {
                out.set(i - start, c);
            }
        }
        out
    }

    /// Sparse text form `i:c i:c ...` (or `0` for the zero vector).
    pub fn to_sparse_string(&self) -> String {
        let s = self.support();
        if s.is_empty() {
            return "0".into();
        }
        s.iter().map(|(i, c)| format!("{i}:{c}")).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_sparse(ell: u32, dim: usize, text: &str) -> Result<FlVector> {
        let mut v = FlVector::zero(ell, dim);
        let text = text.trim();
        if text == "0" {
            return Ok(v);
        }
        for tok in text.split_whitespace() {
            let (i, c) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad vector entry `{tok}`")))?;
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad index `{i}`")))?;
            let c: u32 = c.parse().map_err(|_| Error::Parse(format!("bad scalar `{c}`")))?;
            if i >= dim || c >= ell {
                return Err(Error::Parse(format!("vector entry `{tok}` out of range")));
            }
            v.set(i, c);
        }
        Ok(v)
    }
}

impl PartialEq for FlVector {
    fn eq(&self, other: &Self) -> bool {
        if self.ell != other.ell || self.dim != other.dim {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => a == b,
            (Repr::Dense(a), Repr::Dense(b)) => a == b,
            _ => self.support() == other.support(),
        }
    }
}

impl Eq for FlVector {}

impl Hash for FlVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ell.hash(state);
        self.dim.hash(state);
        match &self.repr {
            Repr::Bits(w) => w.hash(state),
            Repr::Dense(_) => {
                // Hash through the bit layout when possible so both forms agree.
                if self.ell == 2 {
                    let mut w = vec![0u64; self.dim.div_ceil(64)];
                    for (i, _) in self.support() {
                        w[i >> 6] |= 1 << (i & 63);
                    }
                    w.hash(state);
                } else if let Repr::Dense(d) = &self.repr {
                    d.hash(state);
                }
            }
        }
    }
}

impl PartialOrd for FlVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FlVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ell, self.dim)
            .cmp(&(other.ell, other.dim))
            .then_with(|| self.to_coords().cmp(&other.to_coords()))
    }
}

impl fmt::Debug for FlVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}[{}]", self.ell, self.dim, self.to_sparse_string())
    }
}

/// A subspace of F_ℓ^d in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlSubspace {
    ell: u32,
    dim: usize,
    rows: Vec<FlVector>,
    pivots: Vec<usize>,
}

impl FlSubspace {
    pub fn zero(ell: u32, dim: usize) -> Self {
        FlSubspace { ell, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ell: u32, dim: usize) -> Self {
        let mut s = Self::zero(ell, dim);
        for i in 0..dim {
            s.rows.push(FlVector::unit(ell, dim, i));
            s.pivots.push(i);
        }
        s
    }

    pub fn span(ell: u32, dim: usize, vectors: &[FlVector]) -> Result<Self> {
        let mut s = Self::zero(ell, dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[FlVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, v: &FlVector) -> Result<()> {
        if v.ell != self.ell {
            return Err(Error::FieldMismatch { expected: self.ell, got: v.ell });
        }
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim });
        }
        Ok(())
    }

    /// Canonical representative of `v + S`: every pivot coordinate is zero.
    pub fn reduce(&self, v: &FlVector) -> FlVector {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut FlVector) {
        debug_assert!(v.ell == self.ell && v.dim == self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(p);
            if c != 0 {
                v.axpy_from(self.ell - c, row, p);
            }
        }
    }

    pub fn contains(&self, v: &FlVector) -> bool {
        v.ell == self.ell && v.dim == self.dim && self.reduce(v).is_zero()
    }

    /// Inserts `v`, keeping the basis reduced. Returns whether the rank grew.
    pub fn insert(&mut self, v: &FlVector) -> Result<bool> {
        self.check(v)?;
        let mut r = self.reduce(v);
        let Some(p) = r.leading() else {
            return Ok(false);
        };
        let c = r.get(p);
        if c != 1 {
            r = r.scale(inv_mod(c, self.ell));
        }
        for row in self.rows.iter_mut() {
            let x = row.get(p);
            if x != 0 {
                row.axpy_from(self.ell - x, &r, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        Ok(true)
    }

    /// Functional form of [`insert`](Self::insert).
    pub fn span_insert(&self, v: &FlVector) -> Result<(FlSubspace, bool)> {
        let mut s = self.clone();
        let grew = s.insert(v)?;
        Ok((s, grew))
    }

    pub fn contains_subspace(&self, other: &FlSubspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &FlSubspace) -> Result<FlSubspace> {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r)?;
        }
        Ok(s)
    }

    /// Whether every operator maps the subspace into itself.
    pub fn is_invariant(&self, ops: &[&LinearMap<'_>]) -> bool {
        self.rows.iter().all(|r| ops.iter().all(|op| self.contains(&op(r))))
    }
}

impl fmt::Debug for FlSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

/// Smallest subspace containing `start` and `seed` that is closed under every
/// operator. Operators must be linear; they are applied to a FIFO worklist of
/// newly added spanning vectors, which suffices for closure.
pub fn module_closure_from(
    start: FlSubspace,
    seed: &[FlVector],
    ops: &[&LinearMap<'_>],
) -> Result<FlSubspace> {
    let mut s = start;
    let mut queue: VecDeque<FlVector> = s.basis().iter().cloned().collect();
    for v in seed {
        if s.insert(v)? {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for op in ops {
            let w = op(&v);
            if s.insert(&w)? {
                queue.push_back(w);
            }
        }
    }
    Ok(s)
}

pub fn module_closure(
    ell: u32,
    dim: usize,
    seed: &[FlVector],
    ops: &[&LinearMap<'_>],
) -> Result<FlSubspace> {
    module_closure_from(FlSubspace::zero(ell, dim), seed, ops)
}

/// Closure under a set of coordinate permutations.
pub fn perm_module_closure(start: FlSubspace, seed: &[FlVector], perms: &[Perm]) -> Result<FlSubspace> {
    let closures: Vec<Box<LinearMap<'_>>> =
        perms.iter().map(|g| Box::new(move |v: &FlVector| v.permuted(g)) as Box<LinearMap<'_>>).collect();
    let ops: Vec<&LinearMap<'_>> = closures.iter().map(|b| b.as_ref()).collect();
    module_closure_from(start, seed, &ops)
}

/// A linear constraint `op(x) = rhs`.
pub struct Constraint<'a> {
    pub op: &'a LinearMap<'a>,
    pub rhs: FlVector,
}

/// Affine solution set `particular + directions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: FlVector,
    pub directions: FlSubspace,
}

/// Solves the constraints for `x` inside `ambient`. `None` means inconsistent.
pub fn solve_affine(constraints: &[Constraint<'_>], ambient: &FlSubspace) -> Result<Option<AffineSolution>> {
    let ell = ambient.ell();
    let r = ambient.rank();
    let basis = ambient.basis();
    let target_parts: Vec<&FlVector> = constraints.iter().map(|c| &c.rhs).collect();
    for c in constraints {
        if c.rhs.ell() != ell {
            return Err(Error::FieldMismatch { expected: ell, got: c.rhs.ell() });
        }
    }
    let total: usize = target_parts.iter().map(|v| v.dim()).sum();

    // Rows are (image, combination) pairs in echelon form by insertion order.
    let mut rows: Vec<(FlVector, FlVector, usize)> = Vec::new();
    let mut directions = FlSubspace::zero(ell, ambient.dim());
    let combine = |coef: &FlVector| -> FlVector {
        let mut x = FlVector::zero(ell, ambient.dim());
        for (i, c) in coef.support() {
            x.axpy_from(c, &basis[i], 0);
        }
        x
    };
    for (i, b) in basis.iter().enumerate() {
        let parts: Vec<FlVector> = constraints.iter().map(|c| (c.op)(b)).collect();
        for (p, c) in parts.iter().zip(constraints) {
            if p.dim() != c.rhs.dim() {
                return Err(Error::DimensionMismatch { expected: c.rhs.dim(), got: p.dim() });
            }
        }
        let mut img = FlVector::concat(ell, &parts.iter().collect::<Vec<_>>());
        let mut comb = FlVector::unit(ell, r, i);
        for (rv, rc, p) in &rows {
            let a = img.get(*p);
            if a != 0 {
                img.axpy_from(ell - a, rv, 0);
                comb.axpy_from(ell - a, rc, 0);
            }
        }
        match img.leading() {
            None => {
                directions.insert(&combine(&comb))?;
            }
            Some(p) => {
                let inv = inv_mod(img.get(p), ell);
                rows.push((img.scale(inv), comb.scale(inv), p));
            }
        }
    }
    let mut t = FlVector::concat(ell, &target_parts);
    debug_assert_eq!(t.dim(), total);
    let mut x = FlVector::zero(ell, r);
    for (rv, rc, p) in &rows {
        let a = t.get(*p);
        if a != 0 {
            t.axpy_from(ell - a, rv, 0);
            x.axpy_from(a, rc, 0);
        }
    }
    if !t.is_zero() {
        return Ok(None);
    }
    Ok(Some(AffineSolution { particular: combine(&x), directions }))
}
