//! End-to-end witness runs.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fingroup::{FinGroup, FreeHom, GElem};
use crate::words::{pmod_lift_generators, FreeAut};

use super::birman::{check_birman_identity, BirmanReport};
use super::centerless::{centerless_quotient, ensure_noncyclic, CenterlessQuotient};
use super::spec::{PipelineOptions, QuotientSpec, SpecFile};
use super::witness::{
    aut_orbit, build_phi, check_centralizer_condition, check_phi_centralizer, check_phi_square, diagonal_hom,
    induced_p0, is_geom_characteristic, orbit_is_closed, verify_witness, CentralizerCondition, Diagonal, InducedP0,
    Orbit, Phi, WitnessChecks,
};

/// Whether a non-centerless P is first replaced by a centerless P_ℓ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Auto,
    /// Run on P as given; a center then shows up as a failed flag.
    Direct,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Direct => "direct",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Mode::Auto),
            "direct" => Ok(Mode::Direct),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

/// What the centerless stage did, when it ran.
#[derive(Clone, Debug)]
pub struct CenterlessStage {
    pub noncyclic_modulus: Option<usize>,
    pub quotient: CenterlessQuotient,
}

/// Named boolean checks; the run is valid iff all of them hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags(pub Vec<(&'static str, bool)>);

impl Flags {
    pub fn all(&self) -> bool {
        self.0.iter().all(|(_, b)| *b)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.0.iter().filter(|(_, b)| !*b).map(|(n, _)| *n).collect()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, b)| *b)
    }
}

#[derive(Clone, Debug)]
pub struct WitnessRun {
    pub spec: SpecFile,
    pub mode: Mode,
    pub stage: Option<CenterlessStage>,
    /// The centerless quotient actually fed to φ.
    pub working: QuotientSpec,
    pub phi: Phi,
    pub generators: Vec<(String, FreeAut)>,
    pub orbit: Orbit,
    pub diag: Diagonal,
    pub p0: InducedP0,
    pub centralizer: CentralizerCondition,
    pub checks: WitnessChecks,
    pub flags: Flags,
}

impl WitnessRun {
    pub fn is_valid(&self) -> bool {
        self.flags.all()
    }

    pub fn q_order(&self) -> BigUint {
        self.diag.group().order()
    }

    pub fn p0_order(&self) -> BigUint {
        self.p0.order()
    }
}

/// P_ℓ as a permutation group through its left regular action.
fn linbyfin_as_perm_spec(c: &CenterlessQuotient, n: usize, ell: u32, cap: usize) -> Result<QuotientSpec> {
    let group = c.p_ell.target();
    let elems = group.enumerate(cap)?;
    let perms = c.p_ell.images().iter().map(|x| group.regular_perm(&elems, x)).collect::<Result<Vec<_>>>()?;
    let target = FinGroup::perm_group(elems.len(), perms.clone())?;
    let p = FreeHom::new(n - 2, target, perms.into_iter().map(GElem::Perm).collect())?;
    QuotientSpec::new(n, ell, p)
}

pub fn centerless_stage(spec: &QuotientSpec, options: &PipelineOptions) -> Result<CenterlessStage> {
    let (noncyclic, modulus) = ensure_noncyclic(spec, options.cap)?;
    let quotient = centerless_quotient(&noncyclic, options.cap, options.seed)?;
    Ok(CenterlessStage { noncyclic_modulus: modulus, quotient })
}

pub fn run_witness(spec: &SpecFile, mode: Mode) -> Result<WitnessRun> {
    spec.validate()?;
    let o = &spec.options;
    let original = spec.quotient_spec()?;
    let (stage, working) = if mode == Mode::Auto && !original.target().is_centerless(o.cap)? {
        let stage = centerless_stage(&original, o)?;
        let working = linbyfin_as_perm_spec(&stage.quotient, spec.n, spec.ell, o.cap)?;
        (Some(stage), working)
    } else {
        (None, original.clone())
    };

    let phi = build_phi(&working, o.cap)?;
    let generators = pmod_lift_generators(spec.n)?;
    let orbit = aut_orbit(&phi, &generators, o.orbit_cap)?;
    let diag = diagonal_hom(&orbit, o.cap)?;
    let p0 = induced_p0(&diag, &working, 1000, o.seed)?;
    let centralizer = check_centralizer_condition(&diag, &p0)?;
    let checks = verify_witness(
        &phi,
        &diag,
        &p0,
        working.p(),
        original.p(),
        o.samples,
        o.sample_len,
        o.seed,
        o.cap,
    )?;

    let mut flags = Vec::new();
    if let Some(s) = &stage {
        flags.push(("centerless-chain", s.quotient.chain_commutes));
        flags.push(("centerless-center-trivial", s.quotient.center_trivial));
    }
    flags.push(("phi-square", check_phi_square(&phi, &working, 1000, o.seed)?));
    flags.push(("phi-centralizer", check_phi_centralizer(&phi, o.cap)?));
    flags.push(("orbit-closed", orbit_is_closed(&phi, &orbit, &generators)?));
    flags.push(("geometrically-characteristic", is_geom_characteristic(&diag.q, &generators, o.cap)?));
    flags.push(("p0-square", p0.square_commutes));
    flags.push(("p-centerless", checks.p_centerless));
    flags.push(("diagram-commutes", checks.diagram_commutes));
    flags.push(("center-in-kernel", checks.center_in_kernel));
    flags.push(("sampled-containment", checks.sample_violations == 0));

    Ok(WitnessRun {
        spec: spec.clone(),
        mode,
        stage,
        working,
        phi,
        generators,
        orbit,
        diag,
        p0,
        centralizer,
        checks,
        flags: Flags(flags),
    })
}

/// Runs the pipeline on P as given and checks the finite Birman identity
/// with the spec's push convention.
pub fn run_birman(spec: &SpecFile) -> Result<(WitnessRun, BirmanReport)> {
    let run = run_witness(spec, Mode::Direct)?;
    let report = check_birman_identity(&run.diag, &run.p0, spec.n, spec.options.convention)?;
    Ok((run, report))
}
