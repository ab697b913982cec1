//! `colorfil`: dimension sweeps, cross-checks, cocycle export and deformation
//! checks for the graded filiform algebras `L^{n,m,p}`.
//!
//! Exit codes: 0 success, 1 the methods disagree, 2 usage or parse error,
//! 3 an input object is mathematically invalid (not a cocycle, wrong grading).

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use colorfil_core::closed_forms::dim_block;
use colorfil_core::cohomology::{block_cocycles, CochainFile, CocycleExport, RankMethod};
use colorfil_core::linalg::{write_matrix_market, Primes};
use colorfil_core::sweep::{self, evaluate, parse_range, Evaluators, SweepConfig, SweepMethod};
use colorfil_core::{
    assemble_z2_system, build_model, deform, filiform_check, is_integrable, BlockKind, Cochain2,
    ColorLieAlgebra, Error, SystemOptions,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "colorfil", version, about = "Degree-zero 2-cocycles and deformations of the ℤ₃-graded filiform algebras L^{n,m,p}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Block dimensions at one parameter point, one JSON report per method.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        /// Any of brute, closed, weights (comma separated).
        #[arg(long = "method", value_delimiter = ',', default_value = "closed", value_parser = parse_method)]
        methods: Vec<SweepMethod>,
    },
    /// Runs several methods over a grid and reports every disagreement.
    Verify {
        /// Inclusive range such as `1..8`, or a single value.
        #[arg(long, value_parser = parse_grid)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_grid)]
        m: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_grid)]
        p: RangeInclusive<usize>,
        #[arg(long, value_delimiter = ',', default_value = "brute,closed,weights", value_parser = parse_method)]
        methods: Vec<SweepMethod>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads for the grid (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Replace the closed form for block D by a wrong one (harness self-test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Exports a cocycle basis of one block.
    Cocycles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_parser = parse_block)]
        block: BlockKind,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep X0 as a target in the blocks A and E.
        #[arg(long)]
        allow_x0_target: bool,
        /// Also write the constraint matrix in Matrix Market format.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Deforms an algebra by a cocycle and checks integrability.
    Deform {
        /// Algebra JSON file.
        algebra: PathBuf,
        /// Cochain file (`{"terms": [...]}`) or a basis export from `cocycles`.
        cocycle: PathBuf,
        /// Which basis vector to use when the cocycle file is a basis export.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Write the deformed algebra here; otherwise it is embedded in the verdict.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the model algebra as JSON.
    Model {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_method(s: &str) -> Result<SweepMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<RangeInclusive<usize>, String> {
    parse_range(s).map_err(|e| e.to_string())
}

fn parse_block(s: &str) -> Result<BlockKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Self { code: 2, message: e.to_string() }
    }

    fn invalid(e: impl ToString) -> Self {
        Self { code: 3, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotACocycle(_)
            | Error::CharacteristicVectorViolation(_)
            | Error::Unsupported(_)
            | Error::AxiomViolation { .. } => Failure::invalid(e),
            Error::DecompositionMismatch { .. } => Failure { code: 1, message: e.to_string() },
            _ => Failure::usage(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

/// Ranks use the primes from `COLORFIL_PRIMES` (`"p1,p2"`) when set.
fn rank_method() -> Result<RankMethod, Failure> {
    match std::env::var("COLORFIL_PRIMES") {
        Ok(text) => Primes::parse(&text)
            .map(RankMethod::Certified)
            .map_err(|e| Failure::usage(format!("COLORFIL_PRIMES: {e}"))),
        Err(_) => Ok(RankMethod::default()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            let written = stdout.write_all(text.as_bytes()).and_then(|()| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match written {
                // a closed pipe (`colorfil ... | head`) is not an error
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn dims(n: usize, m: usize, p: usize, methods: &[SweepMethod]) -> Result<(), Failure> {
    build_model(n, m, p)?;
    let ev = Evaluators { rank: rank_method()?, ..Evaluators::default() };
    for &method in methods {
        let report = evaluate(method, n, m, p, &ev)?;
        emit(None, &serde_json::to_string(&report).expect("report serializes"))?;
    }
    Ok(())
}

fn wrong_d(block: BlockKind, n: usize, m: usize, p: usize) -> i64 {
    let v = dim_block(block, n, m, p).value;
    if block == BlockKind::D {
        v + 1
    } else {
        v
    }
}

struct VerifyArgs {
    cfg: SweepConfig,
    format: Format,
    output: Option<PathBuf>,
    jobs: Option<usize>,
    inject_fault: bool,
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    args.cfg.points()?;
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(Failure::usage)?;
    }
    let mut ev = Evaluators { rank: rank_method()?, ..Evaluators::default() };
    if args.inject_fault {
        ev.closed_form = wrong_d;
    }
    let outcome = sweep::run(&args.cfg, &ev)?;
    let text = match args.format {
        Format::Json => outcome.to_json(),
        Format::Csv => outcome.to_csv(),
    };
    emit(args.output.as_deref(), &text)?;
    for mismatch in &outcome.mismatches {
        eprintln!("mismatch: {mismatch}");
    }
    Ok(if outcome.agrees() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

struct CocycleArgs {
    n: usize,
    m: usize,
    p: usize,
    block: BlockKind,
    out: Option<PathBuf>,
    allow_x0_target: bool,
    dump_matrix: Option<PathBuf>,
}

fn cocycles(args: CocycleArgs) -> Result<(), Failure> {
    let alg = build_model(args.n, args.m, args.p)?;
    let opts = SystemOptions { allow_x0_target: args.allow_x0_target, ..SystemOptions::default() };
    if let Some(path) = &args.dump_matrix {
        let sys = assemble_z2_system(&alg, &[args.block], opts)?;
        write_matrix_market(&sys.matrix, io::BufWriter::new(fs::File::create(path)?))?;
    }
    let basis = block_cocycles(&alg, args.block, opts)?;
    if !args.allow_x0_target {
        let expected = dim_block(args.block, args.n, args.m, args.p).value;
        if basis.len() as i64 != expected {
            eprintln!("warning: basis dimension {} differs from the closed form {expected}", basis.len());
        }
    }
    let export = CocycleExport::new(&alg, args.block, &basis);
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&export).expect("export serializes"))
}

fn read_cochain(alg: &ColorLieAlgebra, text: &str, index: usize) -> Result<Cochain2, Failure> {
    if let Ok(file) = serde_json::from_str::<CochainFile>(text) {
        return file.cochain(alg).map_err(Failure::invalid);
    }
    let export: CocycleExport = serde_json::from_str(text)
        .map_err(|e| Failure::usage(format!("cocycle file is neither a cochain nor a basis export: {e}")))?;
    export.cochain(alg, index).map_err(Failure::invalid)
}

fn deform_cmd(algebra: &Path, cocycle: &Path, index: usize, out: Option<&Path>) -> Result<(), Failure> {
    let alg = ColorLieAlgebra::from_json_str(&fs::read_to_string(algebra)?).map_err(|e| match e {
        Error::Json(_) | Error::Parse(_) => Failure::usage(e),
        other => Failure::invalid(other),
    })?;
    let phi = read_cochain(&alg, &fs::read_to_string(cocycle)?, index)?;
    let law = deform(&alg, &phi).map_err(Failure::invalid)?;
    let integrable = is_integrable(&law).map_err(Failure::invalid)?;
    let filiform = if integrable { Some(filiform_check(&law)?) } else { None };
    let mut verdict = json!({ "integrable": integrable, "filiform": filiform });
    match out {
        Some(path) => fs::write(path, law.result.to_json_string())?,
        None => verdict["algebra"] = law.result.to_json(),
    }
    emit(None, &serde_json::to_string_pretty(&verdict).expect("verdict serializes"))
}

fn model(n: usize, m: usize, p: usize, out: Option<&Path>) -> Result<(), Failure> {
    emit(out, &build_model(n, m, p)?.to_json_string())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Dims { n, m, p, methods } => dims(n, m, p, &methods)?,
        Command::Verify { n, m, p, methods, format, output, jobs, inject_fault } => {
            let cfg = SweepConfig { n, m, p, methods };
            return verify(VerifyArgs { cfg, format, output, jobs, inject_fault });
        }
        Command::Cocycles { n, m, p, block, out, allow_x0_target, dump_matrix } => {
            cocycles(CocycleArgs { n, m, p, block, out, allow_x0_target, dump_matrix })?
        }
        Command::Deform { algebra, cocycle, index, out } => deform_cmd(&algebra, &cocycle, index, out.as_deref())?,
        Command::Model { n, m, p, out } => model(n, m, p, out.as_deref())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
