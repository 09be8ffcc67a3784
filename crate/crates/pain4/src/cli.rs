//! Command-line frontend.
//!
//! ```text
//! pain4 potential --k 2 --eps1 -0.75 --nu1 0.5 --xmin -5 --xmax 5 --n 501
//! pain4 g --k 1 --eps1 -2.5 --nu1 0
//! pain4 residual --k 3 --eps1 0.25 --nu1 0.5
//! pain4 params --k 1 --eps1 -2.5
//! pain4 classify --eps1 -2.5 --nu1 0
//! pain4 hierarchy --k 1 --eps1 -2.5
//! pain4 figures --outdir figures-data
//! pain4 verify
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
//! 3 domain violation (`eps1 >= 1/2`, `|nu1| >= 1`, node detected),
//! 4 numerical failure (series non-convergence, singular Wronskian).

use crate::error::Error;
use crate::grid::{GridFunction, GridSpec};
use crate::hierarchies::{self, HierarchyClass};
use crate::painleve::{pain4_params, pain4_residual};
use crate::seeds::{check_nodeless, NodeCheck, SeedFamily, SeedParams};
use crate::susy::{self, spectrum};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::collections::HashMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "pain4", version, about = "SUSY partners of the harmonic oscillator and their Painleve IV solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the partner potential V_k on a grid
    Potential(EvalArgs),
    /// Sample the Painleve IV solution g_k on a grid
    G(EvalArgs),
    /// Per-point Painleve IV residual of the generated solution, plus a max summary
    Residual(EvalArgs),
    /// Painleve IV parameters, extremal energies and spectrum as JSON
    Params(CommonArgs),
    /// Report which solution hierarchy the parameters fall into
    Classify(CommonArgs),
    /// Closed-form evaluation for catalogued hierarchy cases
    Hierarchy(EvalArgs),
    /// Regenerate the six figure-data CSV bundles
    Figures(FiguresArgs),
    /// Run the verification suite; exit 0 only if every criterion passes
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Csv,
    Json,
}

#[derive(Debug, Args, Clone)]
struct CommonArgs {
    /// Transformation order (1..=6)
    #[arg(long)]
    k: Option<usize>,
    /// Factorization energy, must be < 1/2
    #[arg(long, allow_hyphen_values = true)]
    eps1: Option<f64>,
    /// Seed asymmetry, must satisfy |nu1| < 1
    #[arg(long, allow_hyphen_values = true)]
    nu1: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Flat key=value file mirroring the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Left edge of the sampling grid
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    /// Right edge of the sampling grid
    #[arg(long, allow_hyphen_values = true)]
    xmax: Option<f64>,
    /// Number of grid points (>= 2)
    #[arg(long)]
    n: Option<usize>,
    /// Working jet order override (>= 2k + 4)
    #[arg(long)]
    jet_order: Option<usize>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<ExportFormat>,
}

#[derive(Debug, Args, Clone)]
struct FiguresArgs {
    /// Directory for the CSV bundles
    #[arg(long, default_value = "figures-data")]
    outdir: PathBuf,
}

/// Resolved run configuration: validated parameters, grid and output choices.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: SeedParams,
    pub grid: GridSpec,
    pub jet_order: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: ExportFormat,
}

fn parse_config_file(path: &Path) -> Result<HashMap<String, String>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::BadConfig {
                path: path.display().to_string(),
                line: i + 1,
                reason: "expected key=value".into(),
            });
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn config_get<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
    path: &Path,
) -> Result<Option<T>, Error> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| Error::BadConfig {
            path: path.display().to_string(),
            line: 0,
            reason: format!("cannot parse {key}={raw}"),
        }),
    }
}

impl EvalArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut k = self.common.k;
        let mut eps1 = self.common.eps1;
        let mut nu1 = self.common.nu1;
        let mut xmin = self.xmin;
        let mut xmax = self.xmax;
        let mut n = self.n;
        let mut jet_order = self.jet_order;
        let mut output = self.common.output.clone();
        let mut format = self.format;
        if let Some(path) = &self.common.config {
            let map = parse_config_file(path)?;
            k = k.or(config_get(&map, "k", path)?);
            eps1 = eps1.or(config_get(&map, "eps1", path)?);
            nu1 = nu1.or(config_get(&map, "nu1", path)?);
            xmin = xmin.or(config_get(&map, "xmin", path)?);
            xmax = xmax.or(config_get(&map, "xmax", path)?);
            n = n.or(config_get(&map, "n", path)?);
            jet_order = jet_order.or(config_get(&map, "jet_order", path)?);
            output = output.or(config_get::<PathBuf>(&map, "output", path)?);
            format = format.or(match map.get("format").map(String::as_str) {
                Some("csv") => Some(ExportFormat::Csv),
                Some("json") => Some(ExportFormat::Json),
                Some(other) => {
                    return Err(Error::BadConfig {
                        path: path.display().to_string(),
                        line: 0,
                        reason: format!("unknown format {other}"),
                    })
                }
                None => None,
            });
        }
        let params = SeedParams::new(eps1.unwrap_or(0.25), nu1.unwrap_or(0.0), k.unwrap_or(1))?;
        let default = GridSpec::export_default();
        let grid = GridSpec::new(
            xmin.unwrap_or(default.xmin()),
            xmax.unwrap_or(default.xmax()),
            n.unwrap_or(default.len()),
        )?;
        if let Some(order) = jet_order {
            let minimum = 2 * params.k() + 4;
            if order < minimum {
                return Err(Error::JetOrderOverrideTooSmall {
                    order,
                    minimum,
                    k: params.k(),
                });
            }
        }
        Ok(RunConfig {
            params,
            grid,
            jet_order,
            output,
            format: format.unwrap_or(ExportFormat::Csv),
        })
    }
}

impl CommonArgs {
    fn resolve_params(&self) -> Result<(SeedParams, Option<PathBuf>), Error> {
        let mut k = self.k;
        let mut eps1 = self.eps1;
        let mut nu1 = self.nu1;
        let mut output = self.output.clone();
        if let Some(path) = &self.config {
            let map = parse_config_file(path)?;
            k = k.or(config_get(&map, "k", path)?);
            eps1 = eps1.or(config_get(&map, "eps1", path)?);
            nu1 = nu1.or(config_get(&map, "nu1", path)?);
            output = output.or(config_get::<PathBuf>(&map, "output", path)?);
        }
        Ok((
            SeedParams::new(eps1.unwrap_or(0.25), nu1.unwrap_or(0.0), k.unwrap_or(1))?,
            output,
        ))
    }
}

/// Writes a sampled curve as CSV (`x,value` header) or JSON
/// (`{"x": [...], "value": [...]}`).  Floats are rendered in shortest
/// round-trip form, so parsing the output reproduces the values bit for bit.
pub fn export_table(
    gf: &GridFunction,
    format: ExportFormat,
    dest: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        ExportFormat::Csv => {
            write!(dest, "x,value\n")?;
            for (x, v) in gf.xs().iter().zip(gf.values()) {
                write!(dest, "{x},{v}\n")?;
            }
            Ok(())
        }
        ExportFormat::Json => {
            serde_json::to_writer(&mut *dest, gf)?;
            writeln!(dest)?;
            Ok(())
        }
    }
}

#[derive(Debug, Deserialize)]
struct TableData {
    x: Vec<f64>,
    value: Vec<f64>,
}

/// Parses a table previously written by [`export_table`].
pub fn import_table(text: &str, format: ExportFormat) -> Result<GridFunction, Error> {
    match format {
        ExportFormat::Csv => {
            let mut xs = Vec::new();
            let mut values = Vec::new();
            for line in text.lines().skip(1) {
                if line.is_empty() {
                    continue;
                }
                let mut fields = line.split(',');
                let (Some(x), Some(v)) = (fields.next(), fields.next()) else {
                    return Err(Error::BadGridValues);
                };
                xs.push(x.parse().map_err(|_| Error::BadGridValues)?);
                values.push(v.parse().map_err(|_| Error::BadGridValues)?);
            }
            GridFunction::new(xs, values)
        }
        ExportFormat::Json => {
            let data: TableData =
                serde_json::from_str(text).map_err(|_| Error::BadGridValues)?;
            GridFunction::new(data.x, data.value)
        }
    }
}

fn gate_nodeless(params: &SeedParams, grid: &GridSpec) -> Result<(), Error> {
    match check_nodeless(params, grid)? {
        NodeCheck::Nodeless => Ok(()),
        NodeCheck::NodeBetween { left, right } => Err(Error::NodeDetected { left, right }),
    }
}

fn write_output(
    gf: &GridFunction,
    format: ExportFormat,
    output: &Option<PathBuf>,
) -> Result<(), Error> {
    match output {
        None => export_table(gf, format, &mut std::io::stdout().lock()),
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            export_table(gf, format, &mut file)
        }
    }
    .map_err(|e| Error::Io {
        path: output
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "<stdout>".into()),
        source: e,
    })
}

fn g_jet_order(cfg: &RunConfig) -> usize {
    cfg.jet_order
        .map(|w| w.saturating_sub(cfg.params.k()))
        .unwrap_or(2)
        .max(2)
}

fn cmd_potential(cfg: &RunConfig) -> Result<(), Error> {
    gate_nodeless(&cfg.params, &cfg.grid)?;
    let family = SeedFamily::new(cfg.params);
    let gf = GridFunction::sample(&cfg.grid, |x| susy::partner_potential_of(&family, x))?;
    write_output(&gf, cfg.format, &cfg.output)
}

fn cmd_g(cfg: &RunConfig) -> Result<(), Error> {
    gate_nodeless(&cfg.params, &cfg.grid)?;
    let family = SeedFamily::new(cfg.params);
    let order = g_jet_order(cfg);
    let gf = GridFunction::sample(&cfg.grid, |x| {
        Ok(susy::pain4_solution_jet_of(&family, x, order)?.value())
    })?;
    write_output(&gf, cfg.format, &cfg.output)
}

fn cmd_residual(cfg: &RunConfig) -> Result<(), Error> {
    gate_nodeless(&cfg.params, &cfg.grid)?;
    let family = SeedFamily::new(cfg.params);
    let p = pain4_params(&cfg.params);
    let order = g_jet_order(cfg);
    let gf = GridFunction::sample(&cfg.grid, |x| {
        let g = susy::pain4_solution_jet_of(&family, x, order)?;
        Ok(pain4_residual(&g, &p))
    })?;
    let max = gf.values().iter().cloned().fold(0.0f64, f64::max);
    write_output(&gf, cfg.format, &cfg.output)?;
    eprintln!("max residual = {max:e}");
    Ok(())
}

fn cmd_params(args: &CommonArgs) -> Result<(), Error> {
    let (params, output) = args.resolve_params()?;
    let report = serde_json::json!({
        "pain4": pain4_params(&params),
        "spectrum": spectrum(&params),
    });
    let text = serde_json::to_string_pretty(&report).expect("serializable report");
    match output {
        None => println!("{text}"),
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?,
    }
    Ok(())
}

fn cmd_classify(args: &CommonArgs) -> Result<(), Error> {
    let (params, _) = args.resolve_params()?;
    println!("{}", hierarchies::classify(&params));
    Ok(())
}

fn cmd_hierarchy(cfg: &RunConfig) -> Result<(), Error> {
    let params = cfg.params;
    let closed_form = |x: f64| -> Result<f64, Error> {
        match hierarchies::classify(&params) {
            HierarchyClass::Rational => hierarchies::rational_hierarchy(params.k(), params.eps1(), x),
            HierarchyClass::ErrorFunction => {
                hierarchies::erf_hierarchy(params.k(), params.eps1(), params.nu1(), x)
            }
            HierarchyClass::ConfluentHypergeometric if params.k() == 1 => {
                hierarchies::g1_explicit(params.eps1(), params.nu1(), x)
            }
            HierarchyClass::ConfluentHypergeometric => {
                Err(Error::UncataloguedCase { k: params.k(), eps1: params.eps1() })
            }
        }
    };
    // probe once so an uncatalogued case fails before any output is created
    closed_form(cfg.grid.xmin())?;
    let gf = GridFunction::sample(&cfg.grid, closed_form)?;
    write_output(&gf, cfg.format, &cfg.output)
}

/// Figure parameter sets, hard-coded:
/// three transformation orders over `eps1 in {1/4, -3/4, -7/4}` with
/// `nu1 = 1/2`; first order over `{-1/2, -3/2, -5/2}` with `nu1 = 0.999`;
/// third order over `{-5/2, -9/2, -13/2}` with `nu1 = 0`.
struct FigureBundle {
    file_stem: &'static str,
    sets: Vec<SeedParams>,
}

fn figure_bundles() -> Vec<FigureBundle> {
    let hyper_eps = [0.25, -0.75, -1.75];
    let erf_eps = [-0.5, -1.5, -2.5];
    let rational_eps = [-2.5, -4.5, -6.5];
    let mut hyper = Vec::new();
    for k in 1..=3 {
        for &e in &hyper_eps {
            hyper.push(SeedParams::new(e, 0.5, k).expect("valid figure set"));
        }
    }
    let erf: Vec<SeedParams> = erf_eps
        .iter()
        .map(|&e| SeedParams::new(e, 0.999, 1).expect("valid figure set"))
        .collect();
    let rational: Vec<SeedParams> = rational_eps
        .iter()
        .map(|&e| SeedParams::new(e, 0.0, 3).expect("valid figure set"))
        .collect();
    vec![
        FigureBundle { file_stem: "fig2-4", sets: hyper },
        FigureBundle { file_stem: "fig5", sets: erf },
        FigureBundle { file_stem: "fig6", sets: rational },
    ]
}

/// Writes the six figure-data CSV bundles (a potential file and a solution
/// file per parameter group) into `dir`; returns the paths written.
pub fn write_figure_bundles(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    let grid = GridSpec::export_default();
    let xs = grid.points();
    let mut written = Vec::new();
    for bundle in figure_bundles() {
        for (quantity, suffix) in [("V", "potential"), ("g", "g")] {
            let mut header = vec!["x".to_string()];
            let mut columns: Vec<Vec<f64>> = Vec::new();
            for sp in &bundle.sets {
                header.push(format!("{quantity}_k{}_eps{}", sp.k(), sp.eps1()));
                let family = SeedFamily::new(*sp);
                let mut col = Vec::with_capacity(xs.len());
                for &x in &xs {
                    let v = if quantity == "V" {
                        susy::partner_potential_of(&family, x)?
                    } else {
                        susy::pain4_solution_of(&family, x)?
                    };
                    col.push(v);
                }
                columns.push(col);
            }
            let path = dir.join(format!("{}_{suffix}.csv", bundle.file_stem));
            let mut text = String::new();
            text.push_str(&header.join(","));
            text.push('\n');
            for (i, x) in xs.iter().enumerate() {
                text.push_str(&format!("{x}"));
                for col in &columns {
                    text.push_str(&format!(",{}", col[i]));
                }
                text.push('\n');
            }
            std::fs::write(&path, text).map_err(|e| Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            written.push(path);
        }
    }
    Ok(written)
}

fn cmd_figures(args: &FiguresArgs) -> Result<(), Error> {
    let files = write_figure_bundles(&args.outdir)?;
    for f in files {
        println!("{}", f.display());
    }
    Ok(())
}

fn cmd_verify() -> i32 {
    let reports = crate::verify::run_all();
    let mut all_pass = true;
    for r in &reports {
        println!("{r}");
        all_pass &= r.pass;
    }
    if all_pass {
        0
    } else {
        1
    }
}

fn exit_code_for(err: &Error) -> i32 {
    if err.is_domain_violation() {
        return 3;
    }
    match err {
        Error::KummerNonConvergence { .. }
        | Error::SingularWronskian { .. }
        | Error::JetPole { .. }
        | Error::QuadratureFailure { .. }
        | Error::PathThroughZeroOfG { .. } => 4,
        _ => 2,
    }
}

/// Entry point: parses `argv`, dispatches, returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match &cli.command {
        Command::Potential(args) => args.resolve().and_then(|cfg| cmd_potential(&cfg)),
        Command::G(args) => args.resolve().and_then(|cfg| cmd_g(&cfg)),
        Command::Residual(args) => args.resolve().and_then(|cfg| cmd_residual(&cfg)),
        Command::Params(args) => cmd_params(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Hierarchy(args) => args.resolve().and_then(|cfg| cmd_hierarchy(&cfg)),
        Command::Figures(args) => cmd_figures(args),
        Command::Verify => return cmd_verify(),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}
