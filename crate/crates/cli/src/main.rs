//! Command-line front end for the comparison, diagonalization, and
//! dimension engines.
//!
//! Every command reads and writes JSON. Exit codes: 0 on success, 1 when a
//! verified property fails to hold (always worth a bug report), 2 on bad
//! input.

use anyhow::{anyhow, bail, Context, Result};
use awstar_core::cardinal::Cardinal;
use awstar_core::diag::{simultaneous_diagonalize, DiagReport};
use awstar_core::dimension::{self, AtomicModel, CProjection, Delta, DimensionFunction};
use awstar_core::fdalg::{AlgebraShape, Element, Tolerance};
use awstar_core::functor::{check_sup_preservation, StarHom, SupPreservationReport};
use awstar_core::gen;
use awstar_core::projlat::{
    comparison_decomposition, equivalent, rank_vector, strict_subequiv, subequiv, RankVector,
};
use awstar_core::selftest;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "awstar",
    version,
    about = "Projection comparison, simultaneous diagonalization, and cardinal dimension theory"
)]
struct Cli {
    /// Tolerance for structural checks (projection, unitary, commuting)
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_struct: f64,

    /// Tolerance for eigenvalue clustering
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_cluster: f64,

    /// Seed for generators and the selftest
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the JSON report to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize a commuting normal family in M_n(A) by one unitary
    Diagonalize {
        /// Instance file: {"base_shape": [..], "n": .., "family": [..]}
        input: PathBuf,
    },
    /// Compare two projections: ranks, central decomposition, equivalence
    Compare {
        /// Instance file: {"e": element, "f": element}
        input: PathBuf,
    },
    /// Dimension data of a projection on an atomic model
    Dimension {
        /// Instance file: {"atoms": [..], "mu": [..], "nu": [..]?}
        input: PathBuf,
    },
    /// Equidimensional decomposition of a properly infinite projection
    Equidecomp {
        /// Instance file: {"atoms": [..], "mu": [..], "nu": [..]?}
        input: PathBuf,
    },
    /// Check that a *-homomorphism preserves a projection supremum
    FunctorCheck {
        /// Instance file: {"hom": .., "family": [..], "orthogonal_only": ..}
        input: PathBuf,
    },
    /// Generate a seeded random instance
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Comma-separated block sizes of the base algebra
        #[arg(long, default_value = "2,1")]
        shape: String,
        /// Matrix algebra amplification
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of family members
        #[arg(long, default_value_t = 3)]
        members: usize,
        /// Comma-separated aleph indices of the atomic model
        #[arg(long, default_value = "0,1")]
        atoms: String,
        /// Generate an orthogonal projection family (hom instances)
        #[arg(long, default_value_t = false)]
        orthogonal: bool,
    },
    /// Run every property suite at desk scale and summarize
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// Commuting normal family for `diagonalize`
    Commuting,
    /// Atomic model and projection for `dimension` / `equidecomp`
    Dimension,
    /// Homomorphism and projection family for `functor-check`
    Hom,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let tol = Tolerance {
        eps_struct: cli.tol_struct,
        eps_cluster: cli.tol_cluster,
    };
    match &cli.command {
        Command::Diagonalize { input } => diagonalize(cli, &tol, input),
        Command::Compare { input } => compare(cli, &tol, input),
        Command::Dimension { input } => dimension_cmd(cli, &tol, input),
        Command::Equidecomp { input } => equidecomp(cli, &tol, input),
        Command::FunctorCheck { input } => functor_check(cli, &tol, input),
        Command::Gen {
            kind,
            shape,
            n,
            members,
            atoms,
            orthogonal,
        } => generate(cli, *kind, shape, *n, *members, atoms, *orthogonal),
        Command::Selftest => selftest_cmd(cli, &tol),
    }
}

#[derive(Serialize)]
struct ToolInfo {
    version: &'static str,
    tol_struct: f64,
    tol_cluster: f64,
}

fn tool_info(tol: &Tolerance) -> ToolInfo {
    ToolInfo {
        version: env!("CARGO_PKG_VERSION"),
        tol_struct: tol.eps_struct,
        tol_cluster: tol.eps_cluster,
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn emit<T: Serialize>(cli: &Cli, report: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

// --- diagonalize -----------------------------------------------------------

#[derive(Deserialize, Serialize)]
struct DiagonalizeInput {
    base_shape: Vec<usize>,
    n: usize,
    family: Vec<Element>,
}

#[derive(Serialize)]
struct DiagonalizeOutput {
    tool: ToolInfo,
    passed: bool,
    u: Element,
    diagonalized: Vec<Element>,
    report: DiagReport,
}

fn diagonalize(cli: &Cli, tol: &Tolerance, input: &Path) -> Result<ExitCode> {
    let instance: DiagonalizeInput = read_json(input)?;
    if instance.n == 0 {
        bail!("n must be positive");
    }
    let base = AlgebraShape::new(instance.base_shape).map_err(|e| anyhow!(e))?;
    let result = simultaneous_diagonalize(&base, instance.n, &instance.family, tol)
        .map_err(|e| anyhow!(e))?;
    let scale = result.report.scale;
    let passed = result.report.unitarity_defect <= 1e-10
        && result.report.residuals.iter().all(|&r| r <= 1e-8 * scale);
    emit(
        cli,
        &DiagonalizeOutput {
            tool: tool_info(tol),
            passed,
            u: result.u,
            diagonalized: result.diagonalized,
            report: result.report,
        },
    )?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    })
}

// --- compare ---------------------------------------------------------------

#[derive(Deserialize)]
struct CompareInput {
    e: Element,
    f: Element,
}

#[derive(Serialize)]
struct CompareOutput {
    tool: ToolInfo,
    rank_e: RankVector,
    rank_f: RankVector,
    x: Vec<bool>,
    y: Vec<bool>,
    z: Vec<bool>,
    equivalent: bool,
    subequiv_ef: bool,
    subequiv_fe: bool,
    clauses_verified: bool,
}

fn compare(cli: &Cli, tol: &Tolerance, input: &Path) -> Result<ExitCode> {
    let instance: CompareInput = read_json(input)?;
    let (e, f) = (&instance.e, &instance.f);
    let rank_e = rank_vector(e, tol).map_err(|err| anyhow!(err))?;
    let rank_f = rank_vector(f, tol).map_err(|err| anyhow!(err))?;
    let (x, y, z) = comparison_decomposition(e, f, tol).map_err(|err| anyhow!(err))?;
    let clauses_verified = strict_subequiv(&x.cut(e), &x.cut(f), tol)
        .map_err(|err| anyhow!(err))?
        && equivalent(&y.cut(e), &y.cut(f), tol).map_err(|err| anyhow!(err))?
        && strict_subequiv(&z.cut(f), &z.cut(e), tol).map_err(|err| anyhow!(err))?;
    let report = CompareOutput {
        tool: tool_info(tol),
        rank_e,
        rank_f,
        x: x.flags().to_vec(),
        y: y.flags().to_vec(),
        z: z.flags().to_vec(),
        equivalent: equivalent(e, f, tol).map_err(|err| anyhow!(err))?,
        subequiv_ef: subequiv(e, f, tol).map_err(|err| anyhow!(err))?,
        subequiv_fe: subequiv(f, e, tol).map_err(|err| anyhow!(err))?,
        clauses_verified,
    };
    emit(cli, &report)?;
    Ok(if clauses_verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    })
}

// --- dimension / equidecomp --------------------------------------------------

#[derive(Deserialize, Serialize)]
struct DimensionInput {
    atoms: Vec<Cardinal>,
    mu: Vec<Cardinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<Vec<Cardinal>>,
}

impl DimensionInput {
    fn projection(&self) -> Result<CProjection> {
        let model = AtomicModel::new(self.atoms.clone()).map_err(|e| anyhow!(e))?;
        match &self.nu {
            Some(nu) => CProjection::new(model, self.mu.clone(), nu.clone()),
            None => CProjection::from_mu(model, self.mu.clone()),
        }
        .map_err(|e| anyhow!(e))
    }
}

#[derive(Serialize)]
struct DimensionOutput {
    tool: ToolInfo,
    properly_infinite: bool,
    equidimensional: bool,
    d: Cardinal,
    dbar: Cardinal,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma_sizes: Option<Vec<Cardinal>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<Delta>,
    dimension_function: DimensionFunction,
}

fn dimension_cmd(cli: &Cli, tol: &Tolerance, input: &Path) -> Result<ExitCode> {
    let instance: DimensionInput = read_json(input)?;
    let e = instance.projection()?;
    let d = dimension::dim_d(&e).map_err(|err| anyhow!(err))?;
    let dbar = dimension::dim_dbar(&e).map_err(|err| anyhow!(err))?;
    let properly_infinite = dimension::is_properly_infinite(&e);
    let report = DimensionOutput {
        tool: tool_info(tol),
        properly_infinite,
        equidimensional: dimension::is_equidimensional(&e),
        d,
        dbar,
        gamma_sizes: properly_infinite
            .then(|| dimension::gamma_sizes(&e))
            .transpose()
            .map_err(|err| anyhow!(err))?,
        delta: properly_infinite
            .then(|| dimension::delta(&e))
            .transpose()
            .map_err(|err| anyhow!(err))?,
        dimension_function: dimension::dimension_function(&e),
    };
    emit(cli, &report)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EquidecompPiece {
    z: Vec<bool>,
    alpha: Cardinal,
}

#[derive(Serialize)]
struct EquidecompOutput {
    tool: ToolInfo,
    pieces: Vec<EquidecompPiece>,
}

fn equidecomp(cli: &Cli, tol: &Tolerance, input: &Path) -> Result<ExitCode> {
    let instance: DimensionInput = read_json(input)?;
    let e = instance.projection()?;
    let pieces = dimension::equidim_decomposition(&e)
        .map_err(|err| anyhow!(err))?
        .into_iter()
        .map(|(z, alpha)| EquidecompPiece { z, alpha })
        .collect();
    emit(
        cli,
        &EquidecompOutput {
            tool: tool_info(tol),
            pieces,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

// --- functor-check -----------------------------------------------------------

#[derive(Deserialize, Serialize)]
struct FunctorCheckInput {
    hom: StarHom,
    family: Vec<Element>,
    #[serde(default)]
    orthogonal_only: bool,
}

#[derive(Serialize)]
struct FunctorCheckOutput {
    tool: ToolInfo,
    report: SupPreservationReport,
}

fn functor_check(cli: &Cli, tol: &Tolerance, input: &Path) -> Result<ExitCode> {
    let instance: FunctorCheckInput = read_json(input)?;
    let report = check_sup_preservation(
        &instance.hom,
        &instance.family,
        instance.orthogonal_only,
        tol,
    )
    .map_err(|err| anyhow!(err))?;
    let passed = report.passed;
    emit(
        cli,
        &FunctorCheckOutput {
            tool: tool_info(tol),
            report,
        },
    )?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    })
}

// --- gen ---------------------------------------------------------------------

fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| part.trim().parse::<usize>().context("invalid block size"))
        .collect()
}

fn generate(
    cli: &Cli,
    kind: GenKind,
    shape: &str,
    n: usize,
    members: usize,
    atoms: &str,
    orthogonal: bool,
) -> Result<ExitCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match kind {
        GenKind::Commuting => {
            if n == 0 {
                bail!("n must be positive");
            }
            let base = AlgebraShape::new(parse_sizes(shape)?).map_err(|e| anyhow!(e))?;
            let fam = gen::random_commuting_family(&base, n, members, &mut rng);
            emit(
                cli,
                &DiagonalizeInput {
                    base_shape: base.blocks().to_vec(),
                    n,
                    family: fam.family,
                },
            )?;
        }
        GenKind::Dimension => {
            let indices: Vec<u32> = atoms
                .split(',')
                .map(|part| part.trim().parse::<u32>().context("invalid aleph index"))
                .collect::<Result<_>>()?;
            let model = AtomicModel::new(indices.into_iter().map(Cardinal::Aleph).collect())
                .map_err(|e| anyhow!(e))?;
            let e = gen::random_cprojection(&model, &mut rng);
            emit(
                cli,
                &DimensionInput {
                    atoms: model.atoms().to_vec(),
                    mu: e.mu().to_vec(),
                    nu: Some(e.nu().to_vec()),
                },
            )?;
        }
        GenKind::Hom => {
            if n == 0 {
                bail!("n must be positive");
            }
            let base = AlgebraShape::new(parse_sizes(shape)?).map_err(|e| anyhow!(e))?;
            let blocks = rng.random_range(1..=2);
            let hom = gen::random_star_hom(&base, blocks, 2, &mut rng).lift(n);
            let amp = base.matrix_algebra(n);
            let family = if orthogonal {
                let total: Vec<usize> = amp.blocks().to_vec();
                let half: Vec<usize> = total.iter().map(|&m| m / 2).collect();
                let u = gen::random_unitary_element(&amp, &mut rng);
                let p = awstar_core::projlat::diagonal_projection(&amp, &half);
                let q = awstar_core::projlat::diagonal_projection(&amp, &total)
                    .sub(&awstar_core::projlat::diagonal_projection(&amp, &half))
                    .map_err(|e| anyhow!(e))?;
                vec![
                    u.mul(&p)
                        .and_then(|m| m.mul(&u.adjoint()))
                        .map_err(|e| anyhow!(e))?,
                    u.mul(&q)
                        .and_then(|m| m.mul(&u.adjoint()))
                        .map_err(|e| anyhow!(e))?,
                ]
            } else {
                (0..members.max(1))
                    .map(|_| {
                        let ranks = gen::random_rank_vector(&amp, &mut rng);
                        gen::random_projection(&amp, &ranks, &mut rng)
                    })
                    .collect()
            };
            emit(
                cli,
                &FunctorCheckInput {
                    hom,
                    family,
                    orthogonal_only: orthogonal,
                },
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

// --- selftest ------------------------------------------------------------------

#[derive(Serialize)]
struct SelftestOutput {
    tool: ToolInfo,
    seed: u64,
    passed: bool,
    cases: Vec<awstar_core::selftest::CaseResult>,
}

fn selftest_cmd(cli: &Cli, tol: &Tolerance) -> Result<ExitCode> {
    let cases = selftest::run_all(cli.seed, tol);
    let mut all_passed = true;
    for case in &cases {
        let status = if case.passed { "PASS" } else { "FAIL" };
        println!("{status} {}: {}", case.name, case.detail);
        all_passed &= case.passed;
    }
    let total = cases.len();
    let passed_count = cases.iter().filter(|c| c.passed).count();
    println!("{passed_count}/{total} suites passed");
    if cli.out.is_some() {
        emit(
            cli,
            &SelftestOutput {
                tool: tool_info(tol),
                seed: cli.seed,
                passed: all_passed,
                cases,
            },
        )?;
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    })
}
