//! Command-line front end: `verify`, `cohomology`, `hodge` and `fixture`.

pub mod io;
pub mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra_core::parser::{parse_form, parse_scalar};
use crate::algebra_core::{ChartRef, Q};
use crate::complexes::{build_complex, slice_cohomology, stalk_cohomology, CohomologyReport, ComplexFamily};
use crate::error::{Error, Result};
use crate::hodge::{self, FanoReport, FilteredDim, HodgeDiamond};
use crate::poisson::{fixtures, make_poisson, PoissonStructure};

pub use io::{parse_chart, parse_diamond, parse_structure, print_chart, print_diamond, print_structure};
pub use verify::{verify_structure, IdentityResult, VerifyReport};

#[derive(Parser, Debug)]
#[command(name = "logsym", version, about = "Exact checks for log-symplectic Poisson structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the identity suites on seeded random forms.
    Verify {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cohomology dimensions of a complex family.
    Cohomology {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        chart: Option<PathBuf>,
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        /// Closed 1-form for the foliated family.
        #[arg(long)]
        psi: Option<String>,
        /// `λ` for the MdP family (default `−n`).
        #[arg(long)]
        lambda: Option<String>,
        /// Form degree for the simplicial family.
        #[arg(long, default_value_t = 1)]
        form_degree: usize,
        /// Stalk at the origin from jets instead of exact slices.
        #[arg(long)]
        stalk: bool,
    },
    /// Hodge-diamond transforms.
    Hodge {
        #[arg(long)]
        diamond: PathBuf,
        /// Check `h^{2n−i,i} = 0` for `i ≤ a` (`−1` for none).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        fano_level: i64,
    },
    /// Print a built-in example structure file.
    Fixture {
        #[arg(value_enum)]
        kind: FixtureKind,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    DeRham,
    Log,
    MinorLog,
    MinorLogTwisted,
    AugmentedMinorLog,
    Foliated,
    Simplicial,
    Brylinski,
    Mdp,
    ThetaUpper,
    ThetaLog,
    EHybrid,
    DHybrid,
    ImagePi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureKind {
    NormalForm,
    ToricDiagonal,
    ToricByTorus,
}

/// Report text and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub warnings: Vec<String>,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn load_structure(path: &PathBuf) -> Result<PoissonStructure> {
    let (chart, pi) = parse_structure(&read(path)?)?;
    make_poisson(&chart, &pi)
}

#[derive(Serialize)]
struct HodgeReport {
    n: usize,
    theta: Vec<FilteredDim>,
    theta_dims: Vec<u64>,
    e_hybrid_dims: Vec<u64>,
    d_hybrid_dims: Vec<u64>,
    rotated: Vec<Vec<u64>>,
    total: u64,
    fano: FanoReport,
}

fn family_for(name: FamilyName, p: Option<&PoissonStructure>, chart: &ChartRef, psi: &Option<String>, lambda: &Option<String>, q: usize) -> Result<ComplexFamily> {
    let need = || p.cloned().ok_or_else(|| Error::Input("this family needs --structure".into()));
    Ok(match name {
        FamilyName::DeRham => ComplexFamily::DeRham,
        FamilyName::Log => ComplexFamily::Log,
        FamilyName::MinorLog => ComplexFamily::MinorLog,
        FamilyName::MinorLogTwisted => ComplexFamily::MinorLogTwisted,
        FamilyName::AugmentedMinorLog => ComplexFamily::AugmentedMinorLog,
        FamilyName::Foliated => {
            let text = psi.as_ref().ok_or_else(|| Error::Input("the foliated family needs --psi".into()))?;
            ComplexFamily::FoliatedPsi(parse_form(chart, text, 1)?)
        }
        FamilyName::Simplicial => ComplexFamily::SimplicialDeRham(q),
        FamilyName::Brylinski => ComplexFamily::Brylinski(need()?),
        FamilyName::Mdp => {
            let p = need()?;
            let l: Q = match lambda {
                Some(t) => parse_scalar(p.chart(), t)?
                    .as_constant()
                    .ok_or_else(|| Error::Input("λ must be a rational constant".into()))?,
                None => crate::algebra_core::qi(-(p.n() as i64)),
            };
            ComplexFamily::MdP(p, l)
        }
        FamilyName::ThetaUpper => ComplexFamily::ThetaUpper(need()?),
        FamilyName::ThetaLog => ComplexFamily::ThetaLog(need()?),
        FamilyName::EHybrid => ComplexFamily::EHybrid(need()?),
        FamilyName::DHybrid => ComplexFamily::DHybrid(need()?),
        FamilyName::ImagePi => ComplexFamily::ImagePi(need()?),
    })
}

fn cohomology_table(r: &CohomologyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family {}  mode {}  cutoff {}", r.family, r.mode.name(), r.cutoff);
    let _ = writeln!(s, "degree  dim");
    for t in &r.totals {
        let _ = writeln!(s, "{:>6}  {}", t.degree, t.dim);
    }
    let _ = writeln!(s, "stable {}  euler-consistent {}", r.stable, r.euler_consistent);
    for x in &r.slices {
        let _ = writeln!(s, "  degree {:>3}  weight {:?}  dim {}  stable {}", x.degree, x.weight, x.dim, x.stable);
    }
    s
}

fn verify_table(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "seed {}  trials {}  n {}", r.seed, r.trials, r.n);
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    for i in &r.identities {
        let _ = writeln!(s, "{:<24} {} ({} checks)", i.name, if i.passed { "PASS" } else { "FAIL" }, i.checks);
        if let Some(w) = &i.witness {
            let _ = writeln!(s, "    witness: {w}");
        }
    }
    s
}

fn hodge_table(r: &HodgeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n {}  total {}", r.n, r.total);
    let _ = writeln!(s, "theta     {:?}", r.theta_dims);
    let _ = writeln!(s, "e-hybrid  {:?}", r.e_hybrid_dims);
    let _ = writeln!(s, "d-hybrid  {:?}", r.d_hybrid_dims);
    let _ = writeln!(s, "rotated");
    for row in &r.rotated {
        let _ = writeln!(s, "  {row:?}");
    }
    let _ = writeln!(s, "fano a={} consistent {}", r.fano.a, r.fano.consistent);
    s
}

/// Execute a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Verify { structure, trials, seed } => {
            let p = load_structure(structure)?;
            let r = verify_structure(&p, *trials, *seed)?;
            let output = if json { io::to_canonical_json(&r) } else { verify_table(&r) };
            Ok(Outcome { code: if r.passed { 0 } else { 1 }, output, warnings: r.warnings.clone() })
        }
        Command::Cohomology { family, chart, structure, cutoff, psi, lambda, form_degree, stalk } => {
            let p = structure.as_ref().map(load_structure).transpose()?;
            let chart: ChartRef = match (chart, &p) {
                (Some(path), _) => parse_chart(&read(path)?)?,
                (None, Some(p)) => p.chart().clone(),
                (None, None) => return Err(Error::Input("give --chart or --structure".into())),
            };
            let fam = family_for(*family, p.as_ref(), &chart, psi, lambda, *form_degree)?;
            let r = if *stalk { stalk_cohomology(&fam, &chart, *cutoff)? } else { slice_cohomology(&build_complex(&fam, &chart, *cutoff)?) };
            let output = if json {
                let mut s = r.to_json();
                s.push('\n');
                s
            } else {
                cohomology_table(&r)
            };
            let warnings = if r.stable { Vec::new() } else { vec!["some reported weights are unstable".to_string()] };
            Ok(Outcome { code: 0, output, warnings })
        }
        Command::Hodge { diamond, fano_level } => {
            let h: HodgeDiamond = parse_diamond(&read(diamond)?)?;
            let theta = hodge::theta_cohomology(&h)?;
            let (e, d) = hodge::dihelical_dims(&h)?;
            let r = HodgeReport {
                n: h.n,
                theta_dims: theta.iter().map(|x| x.dim).collect(),
                theta,
                e_hybrid_dims: e,
                d_hybrid_dims: d,
                rotated: hodge::rotate_diamond(&h)?,
                total: h.total(),
                fano: hodge::rg_fano_constraint_report(&h, *fano_level)?,
            };
            let output = if json { io::to_canonical_json(&r) } else { hodge_table(&r) };
            Ok(Outcome { code: 0, output, warnings: Vec::new() })
        }
        Command::Fixture { kind, n, k } => {
            let p = match kind {
                FixtureKind::NormalForm => fixtures::normal_form(*k, *n)?,
                FixtureKind::ToricDiagonal => fixtures::toric_diagonal(*n)?,
                FixtureKind::ToricByTorus => fixtures::toric_by_torus(*n)?,
            };
            Ok(Outcome { code: 0, output: print_structure(p.chart(), p.bivector())?, warnings: Vec::new() })
        }
    }
}

/// Parse arguments, run, and map errors to exit code 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, output: e.to_string(), warnings: Vec::new() };
        }
    };
    match execute(&cli) {
        Ok(o) => match &cli.out {
            Some(path) => match std::fs::write(path, &o.output) {
                Ok(()) => Outcome { output: String::new(), ..o },
                Err(e) => Outcome { code: 2, output: format!("error: {}: {e}\n", path.display()), warnings: Vec::new() },
            },
            None => o,
        },
        Err(e) => Outcome { code: 2, output: format!("error: {e}\n"), warnings: Vec::new() },
    }
}
