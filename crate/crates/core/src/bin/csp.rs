use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use csp_core::pipeline::certificate::{self, describe_group, elem_text, Verdict};
use csp_core::pipeline::run::{centerless_stage, run_birman, run_witness, Mode, WitnessRun};
use csp_core::pipeline::spec::SpecFile;
use csp_core::Error;

const EXIT_OK: u8 = 0;
const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "csp", version, about = "Witnesses and certificates for congruence subgroups of pure sphere braid groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct Overrides {
    /// Bound on enumerated group sizes.
    #[arg(long)]
    cap: Option<usize>,
    /// Seed for every randomized check.
    #[arg(long)]
    seed: Option<u64>,
    /// Prime for the group algebras.
    #[arg(long)]
    ell: Option<u32>,
    /// Bound on the number of orbit classes.
    #[arg(long)]
    orbit_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write a certificate.
    Witness {
        spec: PathBuf,
        /// Certificate path; defaults to the spec path with `.cert`.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Skip the centerless stage even when P has a center.
        #[arg(long)]
        direct: bool,
        /// Directory for R_ℓ, S_ℓ, Q, P₀ and orbit dumps.
        #[arg(long)]
        emit_intermediate: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Build the centerless quotient P_ℓ and report on it.
    Centerless {
        spec: PathBuf,
        #[arg(long)]
        emit_intermediate: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Recompute a certificate from its embedded spec and compare.
    Verify { cert: PathBuf },
    /// Check the finite Birman identity on P₀.
    Birman {
        spec: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::CenterNotTrivial { .. } | Error::Invalid(_) => EXIT_FAILED,
            _ => EXIT_OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) }
}

fn load_spec(path: &Path, o: &Overrides) -> Result<SpecFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let mut spec = SpecFile::parse(&text)?;
    if let Some(c) = o.cap {
        spec.options.cap = c;
    }
    if let Some(s) = o.seed {
        spec.options.seed = s;
    }
    if let Some(l) = o.ell {
        spec.ell = l;
    }
    if let Some(c) = o.orbit_cap {
        spec.options.orbit_cap = c;
    }
    spec.validate()?;
    Ok(spec)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: EXIT_OTHER, message: format!("{}: {e}", path.display()) })
}

fn emit_intermediate(dir: &Path, run: &WitnessRun) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let mut orbit = Vec::new();
    for (i, m) in run.orbit.members.iter().enumerate() {
        let images: Vec<String> = m.images().iter().map(elem_text).collect();
        orbit.push(format!("{i} {}", images.join(" ; ")));
    }
    write(&dir.join("orbit.txt"), &(orbit.join("\n") + "\n"))?;
    write(&dir.join("q.txt"), &(describe_group("q", run.diag.group()).join("\n") + "\n"))?;
    write(&dir.join("p0.txt"), &(describe_group("p0", run.p0.group()).join("\n") + "\n"))?;
    if let Some(s) = &run.stage {
        write(&dir.join("r.txt"), &(describe_group("r", &s.quotient.r).join("\n") + "\n"))?;
        write(&dir.join("s.txt"), &(describe_group("s", &s.quotient.s).join("\n") + "\n"))?;
    }
    Ok(())
}

fn flags_json(run: &WitnessRun) -> Value {
    run.flags.0.iter().map(|(n, b)| (n.to_string(), Value::Bool(*b))).collect::<serde_json::Map<_, _>>().into()
}

fn cmd_witness(
    spec_path: &Path,
    out: Option<PathBuf>,
    direct: bool,
    dump: Option<PathBuf>,
    o: &Overrides,
) -> Result<(u8, Value, String), Failure> {
    let spec = load_spec(spec_path, o)?;
    let mode = if direct { Mode::Direct } else { Mode::Auto };
    let run = run_witness(&spec, mode)?;
    let text = certificate::render(&run);
    let out = out.unwrap_or_else(|| spec_path.with_extension("cert"));
    write(&out, &text)?;
    if let Some(dir) = dump {
        emit_intermediate(&dir, &run)?;
    }
    let valid = run.is_valid();
    let report = json!({
        "command": "witness",
        "status": if valid { "VALID" } else { "INVALID" },
        "certificate": out.display().to_string(),
        "orbit_size": run.orbit.len(),
        "q_order": run.q_order().to_string(),
        "p0_order": run.p0_order().to_string(),
        "centralizer_condition": run.centralizer.holds,
        "flags": flags_json(&run),
    });
    let mut text = format!(
        "{} ({}); orbit {}, |Q| = {}, |P0| = {}, centralizer condition {}\n",
        if valid { "VALID" } else { "INVALID" },
        out.display(),
        run.orbit.len(),
        run.q_order(),
        run.p0_order(),
        run.centralizer.holds
    );
    for name in run.flags.failing() {
        text.push_str(&format!("failed: {name}\n"));
    }
    Ok((if valid { EXIT_OK } else { EXIT_FAILED }, report, text))
}

fn cmd_centerless(spec_path: &Path, dump: Option<PathBuf>, o: &Overrides) -> Result<(u8, Value, String), Failure> {
    let spec = load_spec(spec_path, o)?;
    let stage = centerless_stage(&spec.quotient_spec()?, &spec.options)?;
    let c = &stage.quotient;
    if let Some(dir) = dump {
        fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
        write(&dir.join("r.txt"), &(describe_group("r", &c.r).join("\n") + "\n"))?;
        write(&dir.join("s.txt"), &(describe_group("s", &c.s).join("\n") + "\n"))?;
    }
    let ok = c.center_trivial && c.chain_commutes;
    let report = json!({
        "command": "centerless",
        "noncyclic_modulus": stage.noncyclic_modulus,
        "r_order": c.r_order(),
        "s_order": c.s.order().to_string(),
        "central_cyclic_nontrivial": c.c_nontrivial,
        "p_ell_order": c.p_ell_order().to_string(),
        "center_trivial": c.center_trivial,
        "chain_commutes": c.chain_commutes,
    });
    let text = format!(
        "|R| = {}, |S| = {}, |P_ell| = {}, center trivial {}, chain commutes {}\n",
        c.r_order(),
        c.s.order(),
        c.p_ell_order(),
        c.center_trivial,
        c.chain_commutes
    );
    Ok((if ok { EXIT_OK } else { EXIT_FAILED }, report, text))
}

fn cmd_verify(path: &Path) -> Result<(u8, Value, String), Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let verdict = match certificate::verify(&text) {
        Ok(v) => v,
        Err(Error::Invalid(m)) => {
            let report = json!({ "command": "verify", "status": "REJECTED", "reason": m });
            return Ok((EXIT_FAILED, report, format!("REJECTED: {m}\n")));
        }
        Err(e) => return Err(e.into()),
    };
    Ok(match verdict {
        Verdict::Valid => (EXIT_OK, json!({ "command": "verify", "status": "VALID" }), "VALID\n".into()),
        Verdict::Invalid(flags) => (
            EXIT_FAILED,
            json!({ "command": "verify", "status": "INVALID", "failing": flags }),
            format!("INVALID: {}\n", flags.join(", ")),
        ),
        Verdict::Mismatch { line, expected, found } => (
            EXIT_FAILED,
            json!({ "command": "verify", "status": "REJECTED", "line": line, "expected": expected, "found": found }),
            format!("REJECTED at line {line}\n  expected: {expected}\n  found:    {found}\n"),
        ),
    })
}

fn cmd_birman(spec_path: &Path, o: &Overrides) -> Result<(u8, Value, String), Failure> {
    let spec = load_spec(spec_path, o)?;
    let (run, report) = run_birman(&spec)?;
    let cases: Vec<Value> = report
        .cases
        .iter()
        .map(|c| json!({ "j": c.j, "holds": c.holds, "conjugators_agree": c.conjugators_agree }))
        .collect();
    let value = json!({
        "command": "birman",
        "holds": report.holds(),
        "well_defined": report.well_defined(),
        "centralizer_condition": run.centralizer.holds,
        "p0_order": run.p0_order().to_string(),
        "cases": cases,
    });
    let mut text = String::new();
    for c in &report.cases {
        text.push_str(&format!("g{}: identity {}, conjugators agree {}\n", c.j, c.holds, c.conjugators_agree));
    }
    text.push_str(&format!("|P0| = {}, centralizer condition {}\n", run.p0_order(), run.centralizer.holds));
    Ok((if report.holds() { EXIT_OK } else { EXIT_FAILED }, value, text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Witness { spec, out, direct, emit_intermediate, overrides } => {
            cmd_witness(&spec, out, direct, emit_intermediate, &overrides)
        }
        Command::Centerless { spec, emit_intermediate, overrides } => {
            cmd_centerless(&spec, emit_intermediate, &overrides)
        }
        Command::Verify { cert } => cmd_verify(&cert),
        Command::Birman { spec, overrides } => cmd_birman(&spec, &overrides),
    };
    match result {
        Ok((code, value, text)) => {
            if cli.json {
                println!("{value}");
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": f.message, "exit": f.code }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
