//! Line-oriented, versioned witness certificates.
//!
//! A certificate embeds the canonical spec, so verification needs no side
//! files: the spec is re-run and the result must reproduce the certificate
//! byte for byte. The last line is a SHA-256 digest of everything above it.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::semidirect::{LinByFin, SdElem};

use super::run::{run_witness, Mode, WitnessRun};
use super::spec::SpecFile;

pub const CERT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn elem_text(x: &SdElem) -> String {
    format!("{} | {}", x.v().to_sparse_string(), x.g().to_cycles())
}

/// Summary lines for a linear-by-finite group, each prefixed by `name`.
pub fn describe_group(name: &str, g: &LinByFin) -> Vec<String> {
    let mut out = Vec::new();
    out.push(format!("{name}-order {}", g.order()));
    out.push(format!("{name}-dim {}", g.dim()));
    out.push(format!("{name}-quotient-order {}", g.quotient().len()));
    for f in g.quotient_generators() {
        out.push(format!("{name}-quotient-generator {}", f.to_cycles()));
    }
    out.push(format!("{name}-module-rank {}", g.module().rank()));
    out.push(format!("{name}-kernel-rank {}", g.kernel().rank()));
    for b in g.module().basis() {
        out.push(format!("{name}-module-basis {}", b.to_sparse_string()));
    }
    out
}

/// The certificate text for a completed run.
pub fn render(run: &WitnessRun) -> String {
    let mut out: Vec<String> = vec![
        format!("csp-certificate {CERT_VERSION}"),
        format!("tool csp {TOOL_VERSION}"),
        format!("spec-digest {}", run.spec.digest()),
        format!("mode {}", run.mode.tag()),
        format!("seed {}", run.spec.options.seed),
        "spec-begin".into(),
    ];
    out.extend(run.spec.to_text().lines().map(String::from));
    out.push("spec-end".into());

    match &run.stage {
        None => out.push("centerless-stage skipped".into()),
        Some(s) => {
            let c = &s.quotient;
            out.push("centerless-stage applied".into());
            out.push(match s.noncyclic_modulus {
                Some(m) => format!("noncyclic-modulus {m}"),
                None => "noncyclic-modulus none".into(),
            });
            out.push(format!("q-stage-order {}", c.q_elems.len()));
            out.push(format!("r-order {}", c.r_order()));
            out.push(format!("s-order {}", c.s.order()));
            out.push(format!("central-cyclic-order {}", if c.c_nontrivial { run.spec.ell } else { 1 }));
            out.push(format!("p-ell-order {}", c.p_ell_order()));
        }
    }

    out.push(format!("p-order {}", run.phi.dim()));
    for (k, g) in run.working.p().images().iter().enumerate() {
        out.push(format!("p-image g{} {}", k + 1, g));
    }
    out.push(format!("generators {}", run.generators.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(" ")));
    out.push(format!("orbit-size {}", run.orbit.len()));
    for (i, m) in run.orbit.members.iter().enumerate() {
        let images: Vec<String> = m.images().iter().map(elem_text).collect();
        out.push(format!("orbit-member {i} {}", images.join(" ; ")));
    }
    out.extend(describe_group("q", run.diag.group()));
    out.push(format!("q-lambda {}", elem_text(&run.p0.lambda)));
    out.extend(describe_group("p0", run.p0.group()));
    for (k, x) in run.p0.p0.images().iter().enumerate() {
        out.push(format!("p0-image g{} {}", k + 1, elem_text(x)));
    }
    out.push(format!("p0-center-order {}", run.checks.center_order));

    let c = &run.centralizer;
    out.push(format!(
        "hypothesis centralizer-condition {} stabilizer {} centralizer-rank {} closure-rank {}",
        c.holds, c.stabilizer_order, c.centralizer_module_rank, c.kernel_rank
    ));
    out.push(format!("samples {} length {}", run.checks.samples, run.spec.options.sample_len));
    out.push(format!("central-samples {}", run.checks.central_samples));
    out.push(format!("nontrivial-central-samples {}", run.checks.nontrivial_central_samples));
    out.push(format!("sample-violations {}", run.checks.sample_violations));
    for (name, ok) in &run.flags.0 {
        out.push(format!("flag {name} {ok}"));
    }
    out.push(if run.is_valid() {
        "status VALID".into()
    } else {
        format!("status INVALID {}", run.flags.failing().join(" "))
    });

    let mut text = out.join("\n");
    text.push('\n');
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    text.push_str(&format!("certificate-digest {digest}\n"));
    text
}

/// The parts of a certificate needed to re-run it.
#[derive(Clone, Debug)]
pub struct ParsedCertificate {
    pub spec: SpecFile,
    pub mode: Mode,
    pub valid: bool,
    pub text: String,
}

pub fn parse(text: &str) -> Result<ParsedCertificate> {
    let bad = |m: &str| Error::Parse(format!("certificate: {m}"));
    let body_end = text.rfind("certificate-digest ").ok_or_else(|| bad("missing digest line"))?;
    let (body, tail) = text.split_at(body_end);
    let claimed = tail.trim_start_matches("certificate-digest ").trim();
    if claimed != hex::encode(Sha256::digest(body.as_bytes())) {
        return Err(Error::Invalid("certificate digest does not match its contents".into()));
    }
    let lines: Vec<&str> = body.lines().collect();
    match lines.first() {
        Some(h) if *h == format!("csp-certificate {CERT_VERSION}") => {}
        _ => return Err(bad("missing or unsupported header")),
    }
    let find = |key: &str| {
        lines.iter().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
    };
    let mode = Mode::parse(find("mode").ok_or_else(|| bad("missing mode"))?)?;
    let begin = lines.iter().position(|l| *l == "spec-begin").ok_or_else(|| bad("missing spec"))?;
    let end = lines.iter().position(|l| *l == "spec-end").ok_or_else(|| bad("unterminated spec"))?;
    if end < begin {
        return Err(bad("spec block out of order"));
    }
    let spec = SpecFile::parse(&lines[begin + 1..end].join("\n"))?;
    if find("spec-digest") != Some(spec.digest().as_str()) {
        return Err(Error::Invalid("embedded spec does not match its digest".into()));
    }
    let valid = match find("status") {
        Some("VALID") => true,
        Some(s) if s.starts_with("INVALID") => false,
        _ => return Err(bad("missing status")),
    };
    Ok(ParsedCertificate { spec, mode, valid, text: text.to_string() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Reproduced exactly and marked VALID.
    Valid,
    /// Reproduced exactly but marked INVALID, with the failing flags.
    Invalid(Vec<String>),
    /// The re-run disagrees with the file at the given line.
    Mismatch { line: usize, expected: String, found: String },
}

/// Recomputes the certificate from its embedded spec and compares bytes.
pub fn verify(text: &str) -> Result<Verdict> {
    let parsed = parse(text)?;
    let run = run_witness(&parsed.spec, parsed.mode)?;
    let fresh = render(&run);
    if fresh != parsed.text {
        let (a, b): (Vec<&str>, Vec<&str>) = (fresh.lines().collect(), parsed.text.lines().collect());
        let line = (0..a.len().max(b.len())).find(|&i| a.get(i) != b.get(i)).unwrap_or(0);
        return Ok(Verdict::Mismatch {
            line: line + 1,
            expected: a.get(line).unwrap_or(&"").to_string(),
            found: b.get(line).unwrap_or(&"").to_string(),
        });
    }
    Ok(if run.is_valid() {
        Verdict::Valid
    } else {
        Verdict::Invalid(run.flags.failing().into_iter().map(String::from).collect())
    })
}
