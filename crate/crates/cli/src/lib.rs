//! Command-line front end for the `fm_fidelity` engine.
//!
//! Exit codes: 0 when the computation succeeded and any asserted property
//! holds, 2 when a checker ran and its property is violated, 1 for input or
//! usage errors. Verdict-bearing commands exit 0 for every verdict.

pub mod envelope;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fm_fidelity::cohomology::{
    box_cohomology, line_bundle_cohomology, MultiDegree, MultiProjSpace,
};
use fm_fidelity::criteria::{
    bondal_orlov_check, geometric_gv_check, gv_equivalence_harness, wit_check, GvScenario,
};
use fm_fidelity::scenarios::{
    flip_grid, flop_grid, poincare_ff_check, poincare_gv_scenario, FlipParams, FlopParams,
    PolarizationType,
};
use fm_fidelity::transform::{assemble_verdict, ContributionGrid};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use envelope::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;

/// Caps the worker count of sweep commands.
pub const THREADS_ENV: &str = "FM_FIDELITY_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "fm-fidelity",
    version,
    about = "Full-faithfulness verdicts for Fourier-Mukai kernels from exact cohomology"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,
    /// Print nothing on stdout; report through the exit code only.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of O(d) on ℙ^n.
    Bott {
        n: u32,
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// Cohomology of O(d_1,…,d_r) on ℙ^{n_1}×…×ℙ^{n_r}; comma-separated lists.
    Kunneth {
        /// Factor dimensions, e.g. `2,2`.
        factors: String,
        /// Degrees, e.g. `1,-3`.
        #[arg(allow_hyphen_values = true)]
        degrees: String,
    },
    /// Verdict for the standard flip with centres ℙ^l ⊂ X and ℙ^k ⊂ Y.
    Flip { k: u32, l: u32 },
    /// Verdict matrix for 1 ≤ k ≤ kmax, 1 ≤ l ≤ lmax; exits 2 if the k ≥ l frontier fails.
    FlipSweep { kmax: u32, lmax: u32 },
    /// Verdict for the Mukai flop of ℙ^n.
    Flop { n: u32 },
    /// Numerical full-faithfulness test for the Poincaré kernel of type (d_1,…,d_g).
    Poincare {
        g: u32,
        #[arg(required = true, allow_negative_numbers = true)]
        divisors: Vec<i64>,
    },
    /// Geometric GV test on a support-locus table file.
    GvCheck { file: PathBuf },
    /// WIT test on a cohomology table file.
    WitCheck {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        dim_y: i64,
    },
    /// Strong-simplicity test from diagonal-containment hypotheses.
    BoCheck { file: PathBuf },
    /// Agreement of the three generic-vanishing formulations on a scenario.
    Equivalence {
        #[arg(required_unless_present = "poincare")]
        file: Option<PathBuf>,
        /// Build the scenario for a Poincaré kernel: G D_1 … D_G.
        #[arg(long, num_args = 2.., conflicts_with = "file", allow_negative_numbers = true)]
        poincare: Option<Vec<i64>>,
    },
}

/// What a command produced: its exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome::usage(text),
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Bott { n, d } => cmd_bott(*n, *d),
        Command::Kunneth { factors, degrees } => cmd_kunneth(factors, degrees),
        Command::Flip { k, l } => cmd_flip(*k, *l),
        Command::FlipSweep { kmax, lmax } => cmd_flip_sweep(*kmax, *lmax),
        Command::Flop { n } => cmd_flop(*n),
        Command::Poincare { g, divisors } => cmd_poincare(*g, divisors),
        Command::GvCheck { file } => cmd_gv_check(file),
        Command::WitCheck { file, dim_y } => cmd_wit_check(file, *dim_y),
        Command::BoCheck { file } => cmd_bo_check(file),
        Command::Equivalence { file, poincare } => {
            cmd_equivalence(file.as_deref(), poincare.as_deref())
        }
    };
    match result {
        Ok(rendered) => {
            let stdout = if cli.quiet {
                String::new()
            } else {
                match cli.format {
                    Format::Table => rendered.table,
                    Format::Json => rendered.json,
                }
            };
            Outcome {
                code: rendered.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(message) => Outcome::usage(format!("error: {message}")),
    }
}

/// Both renderings of a finished command.
struct Rendered {
    code: i32,
    table: String,
    json: String,
}

type CmdResult = Result<Rendered, String>;

fn rendered<P: Serialize, R: Serialize>(
    env: &Envelope<P, R>,
    table: String,
    code: i32,
) -> CmdResult {
    let mut json =
        serde_json::to_string_pretty(env).map_err(|e| format!("serialising output: {e}"))?;
    json.push('\n');
    let mut table = table;
    if !table.ends_with('\n') {
        table.push('\n');
    }
    Ok(Rendered { code, table, json })
}

fn err_string(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cmd_bott(n: u32, d: i64) -> CmdResult {
    let table = line_bundle_cohomology(n, d);
    let text = format!("H^*(P^{n}, O({d})):\n{table}");
    rendered(
        &BottEnvelope::new("bott", BottParams { n, d }, table),
        text,
        EXIT_OK,
    )
}

fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> Result<Vec<T>, String> {
    if raw.trim().is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("bad {what} entry {s:?} in {raw:?}"))
        })
        .collect()
}

fn cmd_kunneth(factors: &str, degrees: &str) -> CmdResult {
    let factors: Vec<u32> = parse_list(factors, "factor dimension")?;
    let space = MultiProjSpace::new(factors.clone());
    let degree = MultiDegree::new(parse_list::<i64>(degrees, "degree")?);
    let table = box_cohomology(&space, &degree).map_err(err_string)?;
    let text = format!("H^*(P{factors:?}, {degree}):\n{table}");
    rendered(
        &KunnethEnvelope::new("kunneth", KunnethParams { space, degree }, table),
        text,
        EXIT_OK,
    )
}

fn render_grid(out: &mut String, grid: &ContributionGrid) {
    let _ = writeln!(out, "E2 contributions (dim X = {}):", grid.dim_target());
    for c in grid.entries() {
        let _ = writeln!(out, "  {c}");
    }
}

fn cmd_flip(k: u32, l: u32) -> CmdResult {
    let params = FlipParams::new(k, l).map_err(err_string)?;
    let grid = flip_grid(params).map_err(err_string)?;
    let verdict = assemble_verdict(&grid).map_err(err_string)?;
    let mut text = format!("standard flip k={k} l={l}: {verdict}\n");
    render_grid(&mut text, &grid);
    rendered(
        &FlipEnvelope::new(
            "flip",
            FlipCommandParams { k, l },
            VerdictResult { verdict, grid },
        ),
        text,
        EXIT_OK,
    )
}

fn sweep_pool() -> Result<rayon::ThreadPool, String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV} must be a nonnegative integer, got {raw:?}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(err_string)
}

fn cmd_flip_sweep(kmax: u32, lmax: u32) -> CmdResult {
    if kmax < 1 || lmax < 1 {
        return Err(format!(
            "flip-sweep needs kmax, lmax >= 1, got {kmax}, {lmax}"
        ));
    }
    let pairs: Vec<(u32, u32)> = (1..=kmax)
        .flat_map(|k| (1..=lmax).map(move |l| (k, l)))
        .collect();
    let pool = sweep_pool()?;
    let mut cells = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(k, l)| {
                let params = FlipParams::new(k, l).map_err(err_string)?;
                let grid = flip_grid(params).map_err(err_string)?;
                let verdict = assemble_verdict(&grid).map_err(err_string)?;
                Ok(SweepCell {
                    k,
                    l,
                    fully_faithful: verdict.is_fully_faithful(),
                    witness_degree: verdict.witness().map(|(_, d)| d),
                })
            })
            .collect::<Result<Vec<_>, String>>()
    })?;
    cells.sort_by_key(|c| (c.k, c.l));
    let frontier_holds = cells.iter().all(|c| c.fully_faithful == (c.k >= c.l));

    let mut text = String::from("k\\l");
    for l in 1..=lmax {
        let _ = write!(text, " {l:>4}");
    }
    text.push('\n');
    for k in 1..=kmax {
        let _ = write!(text, "{k:>3}");
        for c in cells.iter().filter(|c| c.k == k) {
            let _ = write!(text, " {:>4}", if c.fully_faithful { "FF" } else { "NOT" });
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "frontier FF <=> k >= l: {}",
        if frontier_holds { "holds" } else { "VIOLATED" }
    );
    let code = if frontier_holds {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    };
    rendered(
        &SweepEnvelope::new(
            "flip-sweep",
            SweepParams { kmax, lmax },
            SweepResult {
                cells,
                frontier_holds,
            },
        ),
        text,
        code,
    )
}

fn cmd_flop(n: u32) -> CmdResult {
    let params = FlopParams::new(n).map_err(err_string)?;
    let grid = flop_grid(params).map_err(err_string)?;
    let verdict = assemble_verdict(&grid).map_err(err_string)?;
    let mut text = format!("Mukai flop n={n}: {verdict}\n");
    render_grid(&mut text, &grid);
    rendered(
        &FlopEnvelope::new(
            "flop",
            FlopCommandParams { n },
            VerdictResult { verdict, grid },
        ),
        text,
        EXIT_OK,
    )
}

fn polarization(g: u32, divisors: &[i64]) -> Result<PolarizationType, String> {
    let mut entries = Vec::with_capacity(divisors.len());
    for &d in divisors {
        if d < 1 {
            return Err(format!(
                "polarization type entries must be positive, got {d}"
            ));
        }
        entries.push(d as u64);
    }
    PolarizationType::new(g, entries).map_err(err_string)
}

fn cmd_poincare(g: u32, divisors: &[i64]) -> CmdResult {
    let t = polarization(g, divisors)?;
    let report = poincare_ff_check(&t).map_err(err_string)?;
    let mut text = String::new();
    let _ = writeln!(text, "Poincare kernel, g={g}, type {:?}", t.divisors());
    let _ = writeln!(text, "h^*(L^2 x L x L^-1):");
    for line in report.kunneth.to_string().lines() {
        let _ = writeln!(text, "  {line}");
    }
    let _ = writeln!(text, "isogeny degree: {}", report.isogeny_degree);
    let _ = writeln!(text, "quotient: {}", report.quotient);
    let _ = writeln!(text, "h^0(L^2): {}", report.h0_l2);
    let _ = writeln!(
        text,
        "{}",
        match &report.verdict {
            Some(v) if report.passed => format!("pass: {v}"),
            _ => "fail".to_string(),
        }
    );
    let code = if report.passed {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    };
    rendered(
        &PoincareEnvelope::new(
            "poincare",
            PoincareParams {
                g,
                divisors: t.divisors().to_vec(),
            },
            report,
        ),
        text,
        code,
    )
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let raw =
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    serde_json::from_str(&raw).map_err(|e| format!("parsing {}: {e}", path.display()))
}

fn file_params(path: &Path, dim_y: Option<i64>) -> FileParams {
    FileParams {
        path: path.display().to_string(),
        dim_y,
    }
}

fn cmd_gv_check(path: &Path) -> CmdResult {
    let table = read_json(path)?;
    let violation = geometric_gv_check(&table);
    let pass = violation.is_none();
    let text = match &violation {
        None => "geometric GV: pass".to_string(),
        Some(v) => format!("geometric GV: fail at i={} ({v})", v.index()),
    };
    rendered(
        &GvCheckEnvelope::new(
            "gv-check",
            file_params(path, None),
            GvCheckResult {
                pass,
                violation,
                table,
            },
        ),
        text,
        if pass { EXIT_OK } else { EXIT_VIOLATED },
    )
}

fn cmd_wit_check(path: &Path, dim_y: i64) -> CmdResult {
    let table = read_json(path)?;
    let pass = wit_check(&table, dim_y);
    let text = format!("WIT({dim_y}): {}", if pass { "pass" } else { "fail" });
    rendered(
        &WitEnvelope::new(
            "wit-check",
            file_params(path, Some(dim_y)),
            WitResult { pass, table },
        ),
        text,
        if pass { EXIT_OK } else { EXIT_VIOLATED },
    )
}

fn cmd_bo_check(path: &Path) -> CmdResult {
    let input: BoInput = read_json(path)?;
    let classes = input.class_map()?;
    let (w_table, violation) =
        bondal_orlov_check(&classes, input.dim_x, &input.hom).map_err(err_string)?;
    let pass = violation.is_none();
    let text = match &violation {
        None => "strong simplicity: pass".to_string(),
        Some(v) => format!("strong simplicity: fail, {v}"),
    };
    rendered(
        &BoEnvelope::new(
            "bo-check",
            file_params(path, None),
            BoResult {
                pass,
                violation,
                w_table,
            },
        ),
        text,
        if pass { EXIT_OK } else { EXIT_VIOLATED },
    )
}

fn cmd_equivalence(file: Option<&Path>, poincare: Option<&[i64]>) -> CmdResult {
    let (params, scenario): (EquivalenceParams, GvScenario) = match (file, poincare) {
        (Some(path), _) => (
            EquivalenceParams::File {
                path: path.display().to_string(),
            },
            read_json(path)?,
        ),
        (None, Some([g, divisors @ ..])) => {
            let g =
                u32::try_from(*g).map_err(|_| format!("g must be a positive integer, got {g}"))?;
            let t = polarization(g, divisors)?;
            let scenario = poincare_gv_scenario(&t).map_err(err_string)?;
            (
                EquivalenceParams::Poincare {
                    g,
                    divisors: t.divisors().to_vec(),
                },
                scenario,
            )
        }
        _ => return Err("equivalence needs a scenario file or --poincare G D_1 ... D_G".into()),
    };
    let report = gv_equivalence_harness(&scenario).map_err(err_string)?;
    let yes_no = |b: bool| if b { "pass" } else { "fail" };
    let mut text = String::new();
    if let Some(label) = &scenario.label {
        let _ = writeln!(text, "scenario: {label}");
    }
    let _ = writeln!(text, "geometric GV:  {}", yes_no(report.geometric_gv));
    let _ = writeln!(text, "WIT(dim Y):    {}", yes_no(report.wit));
    let _ = writeln!(text, "condition (c): {}", yes_no(report.condition_c));
    let _ = writeln!(
        text,
        "{}",
        if report.agree {
            "all three formulations agree"
        } else {
            "DISAGREEMENT: scenario data is inconsistent"
        }
    );
    let code = if report.agree { EXIT_OK } else { EXIT_VIOLATED };
    rendered(
        &EquivalenceEnvelope::new(
            "equivalence",
            params,
            EquivalenceResult { scenario, report },
        ),
        text,
        code,
    )
}
