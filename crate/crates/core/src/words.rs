//! Reduced words in free groups and the class-preserving automorphisms acting on them.
//!
//! The free group of rank `n - 1` models the fundamental group of the `n`-punctured
//! sphere: generators `g1..g(n-2)` are loops around the first punctures and the last
//! generator is the distinguished loop `L`. Killing `L` gives the rank `n - 2` group of
//! the sphere with one puncture forgotten.
//!
//! Automorphisms compose as functions: `(s.compose(&t)).apply(w) == s.apply(&t.apply(w))`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word. Letter `i > 0` is generator `i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

fn push_reduced(buf: &mut Vec<i32>, x: i32) {
    if buf.last() == Some(&-x) {
        buf.pop();
    } else {
        buf.push(x);
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i as i32])
    }

    /// Free reduction of an arbitrary letter sequence. Zero letters are rejected.
    pub fn reduce(raw: &[i32], rank: usize) -> Result<Self> {
        let mut buf = Vec::with_capacity(raw.len());
        for &x in raw {
            if x == 0 || x.unsigned_abs() as usize > rank {
                return Err(Error::IndexOutOfRange { index: x as i64, rank });
            }
            push_reduced(&mut buf, x);
        }
        Ok(Word(buf))
    }

    /// Reduction without range checks, for letters already known to be valid.
    pub(crate) fn from_letters(raw: impl IntoIterator<Item = i32>) -> Self {
        let mut buf = Vec::new();
        for x in raw {
            push_reduced(&mut buf, x);
        }
        Word(buf)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut buf = self.0.clone();
        for &x in &other.0 {
            push_reduced(&mut buf, x);
        }
        Word(buf)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `self * w * self^-1`
    pub fn conjugate(&self, w: &Word) -> Word {
        self.mul(w).mul(&self.inverse())
    }

    /// Splits `self = a * core * a^-1` with `core` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let s = &self.0;
        let mut k = 0;
        while s.len() >= 2 * (k + 1) && s[k] == -s[s.len() - 1 - k] {
            k += 1;
        }
        (Word(s[..k].to_vec()), Word(s[k..s.len() - k].to_vec()))
    }

    /// Removes every occurrence of generator `idx` and shifts higher indices down.
    pub fn erase_generator(&self, idx: usize) -> Word {
        Word::from_letters(self.0.iter().filter_map(|&x| {
            let a = x.unsigned_abs() as usize;
            match a.cmp(&idx) {
                Ordering::Equal => None,
                Ordering::Less => Some(x),
                Ordering::Greater => Some(if x > 0 { x - 1 } else { x + 1 }),
            }
        }))
    }

    /// Substitutes `images[i-1]` for generator `i`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut buf = Vec::new();
        for &x in &self.0 {
            let img = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                for &y in &img.0 {
                    push_reduced(&mut buf, y);
                }
            } else {
                for &y in img.0.iter().rev() {
                    push_reduced(&mut buf, -y);
                }
            }
        }
        Word(buf)
    }

    /// Parses `g1 g2^-1 L L^3`. `L` names generator `lambda` when given.
    pub fn parse(text: &str, rank: usize, lambda: Option<usize>) -> Result<Word> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let idx = if base == "L" {
                lambda.ok_or(Error::LambdaUnset)?
            } else if let Some(num) = base.strip_prefix('g') {
                num.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator `{tok}`")))?
            } else if base == "1" || base == "e" {
                continue;
            } else {
                return Err(Error::Parse(format!("unknown token `{tok}`")));
            };
            if idx == 0 || idx > rank {
                return Err(Error::IndexOutOfRange { index: idx as i64, rank });
            }
            let letter = if exp < 0 { -(idx as i32) } else { idx as i32 };
            raw.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Word::reduce(&raw, rank)
    }

    pub fn display_with(&self, lambda: Option<usize>) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&x| {
                let a = x.unsigned_abs() as usize;
                let base = if Some(a) == lambda { "L".to_string() } else { format!("g{a}") };
                if x < 0 {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(None))
    }
}

fn letter_key(x: i32) -> (u32, bool) {
    (x.unsigned_abs(), x < 0)
}

/// Shortlex: shorter words first, then letterwise with `gi < gi^-1 < g(i+1)`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            self.0
                .iter()
                .map(|&x| letter_key(x))
                .cmp(other.0.iter().map(|&x| letter_key(x)))
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Returns `w` with `w u w^-1 = v` when `u` and `v` are conjugate.
///
/// The conjugator is the first one found by scanning rotations of the cyclic core of
/// `u` in increasing offset, so the answer is deterministic.
pub fn conjugate_test(u: &Word, v: &Word) -> Option<Word> {
    let (a, cu) = u.cyclic_decomposition();
    let (b, cv) = v.cyclic_decomposition();
    if cu.len() != cv.len() {
        return None;
    }
    if cu.is_empty() {
        return Some(b.mul(&a.inverse()));
    }
    let k = first_rotation(&cu.0, &cv.0)?;
    // cv = x^-1 cu x with x the first k letters of cu
    let x = Word(cu.0[..k].to_vec());
    Some(b.mul(&x.inverse()).mul(&a.inverse()))
}

/// Smallest `k` with `rotate(u, k) == v`, by KMP search for `v` in `u u`.
fn first_rotation(u: &[i32], v: &[i32]) -> Option<usize> {
    let n = v.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && v[i] != v[k] {
            k = fail[k - 1];
        }
        if v[i] == v[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut m = 0;
    for i in 0..2 * n - 1 {
        let c = u[i % n];
        while m > 0 && c != v[m] {
            m = fail[m - 1];
        }
        if c == v[m] {
            m += 1;
        }
        if m == n {
            return Some(i + 1 - n);
        }
    }
    None
}

/// A free group whose generators carry marked conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassMarkedFreeGroup {
    rank: usize,
    marked: Vec<usize>,
    lambda: Option<usize>,
}

impl ClassMarkedFreeGroup {
    pub fn new(rank: usize, marked: Vec<usize>, lambda: Option<usize>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid("free group rank must be positive".into()));
        }
        let mut seen = vec![false; rank + 1];
        for &m in &marked {
            if m == 0 || m > rank {
                return Err(Error::IndexOutOfRange { index: m as i64, rank });
            }
            if seen[m] {
                return Err(Error::Invalid(format!("marked index {m} repeated")));
            }
            seen[m] = true;
        }
        if let Some(l) = lambda {
            if l == 0 || l > rank {
                return Err(Error::IndexOutOfRange { index: l as i64, rank });
            }
            if !seen[l] {
                return Err(Error::Invalid("lambda must be a marked generator".into()));
            }
        }
        Ok(ClassMarkedFreeGroup { rank, marked, lambda })
    }

    /// Fundamental group of the `n`-punctured sphere: rank `n - 1`, all generators
    /// marked, `L` the last generator.
    pub fn punctured_sphere(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("need at least 3 punctures, got {n}")));
        }
        Self::new(n - 1, (1..n).collect(), Some(n - 1))
    }

    /// The rank `n - 2` group left after forgetting the puncture carrying `L`.
    pub fn forgotten(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("need at least 3 punctures, got {n}")));
        }
        Self::new(n - 2, (1..n - 1).collect(), None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn lambda(&self) -> Option<usize> {
        self.lambda
    }

    pub fn generators(&self) -> Vec<Word> {
        (1..=self.rank).map(Word::generator).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, self.rank, self.lambda)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.max_index() > self.rank {
            return Err(Error::IndexOutOfRange { index: w.max_index() as i64, rank: self.rank });
        }
        Ok(())
    }

    /// The quotient by the normal closure of `L`, as a word map into the forgotten group.
    pub fn rho_n_lambda(&self, w: &Word) -> Result<Word> {
        let l = self.lambda.ok_or(Error::LambdaUnset)?;
        self.check_word(w)?;
        Ok(w.erase_generator(l))
    }

    pub fn quotient_group(&self) -> Result<Self> {
        let l = self.lambda.ok_or(Error::LambdaUnset)?;
        let marked = self
            .marked
            .iter()
            .filter(|&&m| m != l)
            .map(|&m| if m > l { m - 1 } else { m })
            .collect();
        Self::new(self.rank - 1, marked, None)
    }
}

/// An automorphism stored together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAut {
    rank: usize,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl FreeAut {
    pub fn identity(rank: usize) -> Self {
        let g: Vec<Word> = (1..=rank).map(Word::generator).collect();
        FreeAut { rank, images: g.clone(), inverse_images: g }
    }

    /// Builds an automorphism from images and claimed inverse images; both
    /// compositions must fix every generator.
    pub fn new(rank: usize, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self> {
        if images.len() != rank || inverse_images.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: images.len() });
        }
        for w in images.iter().chain(&inverse_images) {
            if w.max_index() > rank {
                return Err(Error::IndexOutOfRange { index: w.max_index() as i64, rank });
            }
        }
        let a = FreeAut { rank, images, inverse_images };
        if !a.compose(&a.inverse()).is_identity() || !a.inverse().compose(&a).is_identity() {
            return Err(Error::Invalid("images and inverse images are not mutually inverse".into()));
        }
        Ok(a)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &FreeAut) -> FreeAut {
        FreeAut {
            rank: self.rank,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| w.substitute(&other.inverse_images))
                .collect(),
        }
    }

    pub fn inverse(&self) -> FreeAut {
        FreeAut {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| *w == Word::generator(i + 1))
    }

    /// Every marked generator is sent to a conjugate of itself.
    pub fn is_class_preserving(&self, group: &ClassMarkedFreeGroup) -> bool {
        group.marked().iter().all(|&m| {
            conjugate_test(&Word::generator(m), &self.images[m - 1]).is_some()
        })
    }

    /// The automorphism of the forgotten group induced by an automorphism fixing `L`.
    pub fn rho_star(&self, group: &ClassMarkedFreeGroup) -> Result<FreeAut> {
        let l = group.lambda().ok_or(Error::LambdaUnset)?;
        if self.images[l - 1] != Word::generator(l) {
            return Err(Error::Invalid("automorphism does not fix L".into()));
        }
        let induce = |imgs: &[Word]| {
            imgs.iter()
                .enumerate()
                .filter(|(i, _)| i + 1 != l)
                .map(|(_, w)| w.erase_generator(l))
                .collect::<Vec<_>>()
        };
        Ok(FreeAut {
            rank: self.rank - 1,
            images: induce(&self.images),
            inverse_images: induce(&self.inverse_images),
        })
    }
}

/// Conjugation `x ↦ w x w^-1`.
pub fn inner_aut(w: &Word, rank: usize) -> FreeAut {
    let wi = w.inverse();
    FreeAut {
        rank,
        images: (1..=rank).map(|i| w.conjugate(&Word::generator(i))).collect(),
        inverse_images: (1..=rank).map(|i| wi.conjugate(&Word::generator(i))).collect(),
    }
}

/// Artin's braid automorphism `σ_i`: `x_i ↦ x_i x_(i+1) x_i^-1`, `x_(i+1) ↦ x_i`.
/// It fixes the product `x_1 ⋯ x_rank`.
pub fn braid_sigma(i: usize, rank: usize) -> Result<FreeAut> {
    if i == 0 || i >= rank {
        return Err(Error::IndexOutOfRange { index: i as i64, rank });
    }
    let x = |k: usize| Word::generator(k);
    let mut images: Vec<Word> = (1..=rank).map(x).collect();
    let mut inverse_images = images.clone();
    images[i - 1] = x(i).conjugate(&x(i + 1));
    images[i] = x(i);
    inverse_images[i - 1] = x(i + 1);
    inverse_images[i] = x(i + 1).inverse().conjugate(&x(i));
    Ok(FreeAut { rank, images, inverse_images })
}

/// The pure braid automorphism `A_ij = σ_(j-1) ⋯ σ_(i+1) σ_i² σ_(i+1)^-1 ⋯ σ_(j-1)^-1`
/// of the free group of rank `n - 1`. It fixes `x_k` for `k < i` and `k > j`.
pub fn artin_generator(i: usize, j: usize, n: usize) -> Result<FreeAut> {
    let group = ClassMarkedFreeGroup::punctured_sphere(n)?;
    let rank = group.rank();
    if !(1 <= i && i < j && j <= rank) {
        return Err(Error::Invalid(format!("artin generator needs 1 <= i < j <= {rank}, got ({i}, {j})")));
    }
    let s = braid_sigma(i, rank)?;
    let mut a = s.compose(&s);
    for k in i + 1..j {
        let sk = braid_sigma(k, rank)?;
        a = sk.compose(&a).compose(&sk.inverse());
    }
    if !a.is_class_preserving(&group) {
        return Err(Error::Convention(format!("A_{i}{j} does not preserve marked classes")));
    }
    Ok(a)
}

/// Which orientation of the point-pushing map to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PushConvention {
    Standard,
    /// The opposite orientation; kept to show the finite Birman check detects it.
    Inverted,
}

/// Pushing the puncture carrying `L` once around `g_j`, as an automorphism of the
/// rank `n - 1` free group.
pub fn push_aut(j: usize, n: usize) -> Result<FreeAut> {
    push_aut_with(j, n, PushConvention::Standard)
}

pub fn push_aut_with(j: usize, n: usize, convention: PushConvention) -> Result<FreeAut> {
    if n < 4 || j == 0 || j > n - 2 {
        return Err(Error::IndexOutOfRange { index: j as i64, rank: n.saturating_sub(2) });
    }
    // δ(A_(k,n-1)^-1) is conjugation by c_k = (g_(k+1)⋯g_(n-2))^-1 g_k (g_(k+1)⋯g_(n-2)),
    // so g_j = B c_j B^-1 with B = c_(n-2) c_(n-3) ⋯ c_(j+1).
    let basic = |k: usize| -> Result<FreeAut> { Ok(artin_generator(k, n - 1, n)?.inverse()) };
    let mut b = FreeAut::identity(n - 1);
    for k in (j + 1..=n - 2).rev() {
        b = b.compose(&basic(k)?);
    }
    let push = b.compose(&basic(j)?).compose(&b.inverse());
    Ok(match convention {
        PushConvention::Standard => push,
        PushConvention::Inverted => push.inverse(),
    })
}

/// `Push` extended multiplicatively to a word over the forgotten group.
pub fn push_word(w: &Word, n: usize, convention: PushConvention) -> Result<FreeAut> {
    let mut out = FreeAut::identity(n - 1);
    for &x in w.letters() {
        let j = x.unsigned_abs() as usize;
        let p = push_aut_with(j, n, convention)?;
        out = out.compose(&if x > 0 { p } else { p.inverse() });
    }
    Ok(out)
}

/// The shortlex-minimal conjugator `w` with `w L w^-1 = t(L)`.
pub fn lambda_conjugator(t: &FreeAut, group: &ClassMarkedFreeGroup) -> Result<Word> {
    let l = group.lambda().ok_or(Error::LambdaUnset)?;
    let lam = Word::generator(l);
    let w = conjugate_test(&lam, &t.images[l - 1])
        .ok_or_else(|| Error::NotConjugate(format!("image of L is {}", t.images[l - 1])))?;
    // w L^k is also a conjugator; strip trailing L-powers
    let mut letters = w.0;
    while letters.last().is_some_and(|x| x.unsigned_abs() as usize == l) {
        letters.pop();
    }
    Ok(Word(letters))
}

/// `inner_aut(w^-1) ∘ t`, which fixes `L` exactly.
pub fn normalized_section(t: &FreeAut, group: &ClassMarkedFreeGroup) -> Result<FreeAut> {
    let w = lambda_conjugator(t, group)?;
    Ok(inner_aut(&w.inverse(), t.rank()).compose(t))
}

/// `δ(t)`: normalize `t` to fix `L`, then pass to the forgotten group.
pub fn delta(t: &FreeAut, group: &ClassMarkedFreeGroup) -> Result<FreeAut> {
    normalized_section(t, group)?.rho_star(group)
}

/// Generators of the lift of the pure mapping class group to `Aut_c`: all `A_ij`
/// and the inner automorphisms by each free generator, each followed by its inverse.
pub fn pmod_lift_generators(n: usize) -> Result<Vec<(String, FreeAut)>> {
    let rank = n - 1;
    let mut out = Vec::new();
    for i in 1..=rank {
        for j in i + 1..=rank {
            let a = artin_generator(i, j, n)?;
            out.push((format!("A{i},{j}"), a.clone()));
            out.push((format!("A{i},{j}^-1"), a.inverse()));
        }
    }
    for k in 1..=rank {
        let c = inner_aut(&Word::generator(k), rank);
        out.push((format!("inn(g{k})"), c.clone()));
        out.push((format!("inn(g{k})^-1"), c.inverse()));
    }
    Ok(out)
}
