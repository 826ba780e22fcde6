//! Quotient specifications and their versioned text format.
//!
//! ```text
//! csp-spec 1
//! n 4
//! ell 2
//! degree 3
//! image g1 (1 2)
//! image g2 (2 3)
//! cap 2000000
//! orbit-cap 20000
//! seed 1
//! convention standard
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. `image` lines give
//! the permutation image of each free generator `g1..g(n-2)` in cycle
//! notation on `degree` points.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fingroup::{FinGroup, FreeHom, GElem, DEFAULT_CAP};
use crate::linear::is_prime;
use crate::perm::Perm;
use crate::words::{ClassMarkedFreeGroup, PushConvention};

pub const SPEC_VERSION: u32 = 1;
pub const DEFAULT_ORBIT_CAP: usize = 20_000;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SAMPLE_LEN: usize = 40;

/// Everything a run needs besides the spec itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub cap: usize,
    pub orbit_cap: usize,
    pub seed: u64,
    pub samples: usize,
    pub sample_len: usize,
    pub convention: PushConvention,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            cap: DEFAULT_CAP,
            orbit_cap: DEFAULT_ORBIT_CAP,
            seed: 1,
            samples: DEFAULT_SAMPLES,
            sample_len: DEFAULT_SAMPLE_LEN,
            convention: PushConvention::Standard,
        }
    }
}

/// Parsed spec file: puncture count, prime, target permutations, options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub n: usize,
    pub ell: u32,
    pub degree: usize,
    pub images: Vec<Perm>,
    pub options: PipelineOptions,
}

fn convention_tag(c: PushConvention) -> &'static str {
    match c {
        PushConvention::Standard => "standard",
        PushConvention::Inverted => "inverted",
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Parse(format!("bad value for `{key}`: `{value}`")))
}

impl SpecFile {
    pub fn new(n: usize, ell: u32, degree: usize, images: Vec<Perm>) -> Result<Self> {
        let spec = SpecFile { n, ell, degree, images, options: PipelineOptions::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_cycles(n: usize, ell: u32, images: &[&str]) -> Result<Self> {
        let degree = images.iter().map(|s| Perm::cycle_degree(s)).max().unwrap_or(1).max(1);
        let perms = images.iter().map(|s| Perm::parse_cycles(s, degree)).collect::<Result<Vec<_>>>()?;
        Self::new(n, ell, degree, perms)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::Parse(format!("puncture count n = {} is below the minimum 4", self.n)));
        }
        if !is_prime(self.ell) || self.ell > 251 {
            return Err(Error::Parse(format!("ell = {} is not a supported prime", self.ell)));
        }
        if self.images.len() != self.n - 2 {
            return Err(Error::Parse(format!(
                "expected {} generator images, found {}",
                self.n - 2,
                self.images.len()
            )));
        }
        if self.images.iter().any(|p| p.degree() != self.degree) {
            return Err(Error::Parse("image degree does not match `degree`".into()));
        }
        if self.options.cap == 0 || self.options.orbit_cap == 0 {
            return Err(Error::Parse("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty spec".into()))?;
        match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["csp-spec", v] if *v == SPEC_VERSION.to_string() => {}
            ["csp-spec", v] => return Err(Error::Parse(format!("unsupported spec version `{v}`"))),
            _ => return Err(Error::Parse("missing `csp-spec` header".into())),
        }
        let (mut n, mut ell, mut degree) = (None, None, None);
        let mut raw_images: Vec<(usize, String)> = Vec::new();
        let mut options = PipelineOptions::default();
        for line in lines {
            let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let value = value.trim();
            match key {
                "n" => n = Some(parse_num::<usize>(key, value)?),
                "ell" => ell = Some(parse_num::<u32>(key, value)?),
                "degree" => degree = Some(parse_num::<usize>(key, value)?),
                "image" => {
                    let (g, cyc) = value
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| Error::Parse(format!("bad image line `{line}`")))?;
                    let idx: usize = g
                        .strip_prefix('g')
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad generator `{g}`")))?;
                    raw_images.push((idx, cyc.trim().to_string()));
                }
                "cap" => options.cap = parse_num(key, value)?,
                "orbit-cap" => options.orbit_cap = parse_num(key, value)?,
                "seed" => options.seed = parse_num(key, value)?,
                "samples" => options.samples = parse_num(key, value)?,
                "sample-length" => options.sample_len = parse_num(key, value)?,
                "convention" => {
                    options.convention = match value {
                        "standard" => PushConvention::Standard,
                        "inverted" => PushConvention::Inverted,
                        _ => return Err(Error::Parse(format!("unknown convention `{value}`"))),
                    }
                }
                _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `n`".into()))?;
        let ell = ell.ok_or_else(|| Error::Parse("missing `ell`".into()))?;
        let degree = degree
            .or_else(|| raw_images.iter().map(|(_, c)| Perm::cycle_degree(c)).max())
            .unwrap_or(1)
            .max(1);
        raw_images.sort_by_key(|(i, _)| *i);
        if raw_images.iter().enumerate().any(|(k, (i, _))| *i != k + 1) {
            return Err(Error::Parse("image lines must cover g1, g2, ... exactly once".into()));
        }
        let images = raw_images
            .iter()
            .map(|(_, c)| Perm::parse_cycles(c, degree))
            .collect::<Result<Vec<_>>>()?;
        let spec = SpecFile { n, ell, degree, images, options };
        spec.validate()?;
        Ok(spec)
    }

    /// Canonical serialization; parsing it returns an equal value.
    pub fn to_text(&self) -> String {
        let mut out = format!("csp-spec {SPEC_VERSION}\nn {}\nell {}\ndegree {}\n", self.n, self.ell, self.degree);
        for (i, p) in self.images.iter().enumerate() {
            out.push_str(&format!("image g{} {}\n", i + 1, p.to_cycles()));
        }
        let o = &self.options;
        out.push_str(&format!(
            "cap {}\norbit-cap {}\nseed {}\nsamples {}\nsample-length {}\nconvention {}\n",
            o.cap,
            o.orbit_cap,
            o.seed,
            o.samples,
            o.sample_len,
            convention_tag(o.convention)
        ));
        out
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    pub fn quotient_spec(&self) -> Result<QuotientSpec> {
        let target = FinGroup::perm_group(self.degree, self.images.clone())?;
        let images = self.images.iter().cloned().map(GElem::Perm).collect();
        QuotientSpec::new(self.n, self.ell, FreeHom::new(self.n - 2, target, images)?)
    }
}

/// Surjection `p` from the free group of rank n−2 onto a finite group P.
#[derive(Clone, Debug)]
pub struct QuotientSpec {
    n: usize,
    ell: u32,
    p: FreeHom<FinGroup>,
}

impl QuotientSpec {
    /// The target of `p` is replaced by the subgroup its images generate, so
    /// `p` is surjective by construction.
    pub fn new(n: usize, ell: u32, p: FreeHom<FinGroup>) -> Result<Self> {
        if n < 4 {
            return Err(Error::Invalid(format!("n = {n} is below the minimum 4")));
        }
        if !is_prime(ell) {
            return Err(Error::Invalid(format!("ell = {ell} is not prime")));
        }
        if p.rank() != n - 2 {
            return Err(Error::DimensionMismatch { expected: n - 2, got: p.rank() });
        }
        let p = FreeHom::new(p.rank(), p.image(), p.images().to_vec())?;
        Ok(QuotientSpec { n, ell, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn p(&self) -> &FreeHom<FinGroup> {
        &self.p
    }

    pub fn target(&self) -> &FinGroup {
        self.p.target()
    }

    /// The rank n−1 free group π₁ of the n-punctured sphere, with λ last.
    pub fn big_group(&self) -> ClassMarkedFreeGroup {
        ClassMarkedFreeGroup::punctured_sphere(self.n).expect("n ≥ 4 was validated")
    }

    pub fn small_group(&self) -> ClassMarkedFreeGroup {
        ClassMarkedFreeGroup::forgotten(self.n).expect("n ≥ 4 was validated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "csp-spec 1\n# S3\nn 4\nell 2\nimage g1 (1 2)\nimage g2 (2 3)\nseed 9\n";
        let spec = SpecFile::parse(text).unwrap();
        assert_eq!(spec.degree, 3);
        assert_eq!(spec.options.seed, 9);
        let again = SpecFile::parse(&spec.to_text()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.digest(), again.digest());
        assert_eq!(spec.quotient_spec().unwrap().target().order(100).unwrap(), 6);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SpecFile::parse("csp-spec 2\nn 4\nell 2\n").is_err());
        assert!(SpecFile::parse("csp-spec 1\nn 3\nell 2\nimage g1 (1 2)\n").is_err());
        assert!(SpecFile::parse("csp-spec 1\nn 4\nell 4\nimage g1 (1 2)\nimage g2 (1 2)\n").is_err());
        assert!(SpecFile::parse("csp-spec 1\nn 4\nell 2\nimage g1 (1 2)\n").is_err());
        assert!(SpecFile::parse("csp-spec 1\nn 4\nell 2\nimage g1 (1 2)\nimage g2 (1 2)\nbogus 1\n").is_err());
    }
}
