//! Command-line front end: compile boolean expressions to gate graphs,
//! render truth tables, compute transmission spectra and parameter sweeps,
//! and run the verification suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error.

mod output;
mod source;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nandtree::boolc::{self, Engine, LoweredCircuit};
use nandtree::graph::{GraphDoc, HuckelParams, Preset};
use nandtree::negf::{transmission_sweep, LeadModel, SweepSpec, SweepVariable};
use nandtree::scatter::transmission_qst;
use output::{emit, sci, Format, Table};
use serde::Deserialize;
use source::GraphSource;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "nandtree",
    about = "Logic gates as tight-binding graphs: scattering and NEGF transmission workbench",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a boolean expression, lower it to a gate graph, and print the
    /// graph document.
    Compile(CompileArgs),
    /// Enumerate the truth table of an expression or compiled circuit.
    TruthTable(TruthTableArgs),
    /// Transmission as a function of energy.
    Transmit(TransmitArgs),
    /// Transmission as a function of a structure parameter (or energy).
    Sweep(SweepArgs),
    /// Run the verification suite and report each criterion.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Parameter preset: uniform or huckel.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Optional JSON config file; flags take precedence over its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Size of the worker pool for sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

fn parse_format(text: &str) -> Result<Format, String> {
    Format::parse(text).ok_or_else(|| format!("unknown format {text:?} (csv or json)"))
}

#[derive(Args, Debug, Clone)]
struct LeadOpts {
    /// Lead on-site energy, eV.
    #[arg(long, allow_negative_numbers = true)]
    lead_alpha: Option<f64>,
    /// Lead internal coupling, eV.
    #[arg(long, allow_negative_numbers = true)]
    lead_beta: Option<f64>,
    /// Lead-device coupling, eV.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Broadening, eV.
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Explicit chain sites per side for side-coupled junctions.
    #[arg(long)]
    pad: Option<usize>,
    /// Root-to-chain coupling for side-coupled junctions, eV.
    #[arg(long, allow_negative_numbers = true)]
    attach: Option<f64>,
}

#[derive(Args, Debug)]
struct CompileArgs {
    /// The expression, e.g. "a NAND b" or "!(x & y) | z".
    expression: String,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct TruthTableArgs {
    /// Expression to compile and enumerate.
    #[arg(long, value_name = "EXPR")]
    expr: Option<String>,
    /// Compiled circuit document (from `compile`).
    #[arg(long, value_name = "PATH")]
    circuit: Option<PathBuf>,
    /// Graph document to classify as a closed circuit (single row).
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// NAND-tree input bits to classify, e.g. 00011011.
    #[arg(long, value_name = "BITS")]
    tree: Option<String>,
    /// Catalog structure to classify, e.g. nand3-one.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Engine: qst, negf, or both.
    #[arg(long, default_value = "qst")]
    engine: String,
    #[command(flatten)]
    lead: LeadOpts,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct TransmitArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Engine: negf (any junction) or qst (uniform side-coupled trees).
    #[arg(long, default_value = "negf")]
    engine: String,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    emin: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    emax: f64,
    #[arg(long, default_value_t = 401)]
    points: usize,
    /// Explicit energy list (overrides emin/emax/points).
    #[arg(long, value_name = "E1,E2,...", allow_hyphen_values = true)]
    energies: Option<String>,
    /// Also write a gnuplot script next to --out.
    #[arg(long)]
    gnuplot: bool,
    #[command(flatten)]
    lead: LeadOpts,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Swept variable: alpha_N, beta_NC, energy, site:<id>, bond:<i>-<j>.
    #[arg(long)]
    param: String,
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Explicit value list (overrides from/to/points).
    #[arg(long, value_name = "V1,V2,...", allow_hyphen_values = true)]
    values: Option<String>,
    /// Energy at which parameter sweeps are evaluated, eV.
    #[arg(long, allow_negative_numbers = true)]
    energy: Option<f64>,
    /// Also write a gnuplot script next to --out.
    #[arg(long)]
    gnuplot: bool,
    #[command(flatten)]
    lead: LeadOpts,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// List the criteria without running them.
    #[arg(long)]
    list: bool,
    /// Validate a Hückel preset file before running.
    #[arg(long, value_name = "PATH")]
    preset_file: Option<PathBuf>,
    #[command(flatten)]
    common: CommonOpts,
}

/// Optional config file; flags override these values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    preset: Option<String>,
    lead_alpha: Option<f64>,
    lead_beta: Option<f64>,
    gamma: Option<f64>,
    eta: Option<f64>,
    pad: Option<usize>,
    attach: Option<f64>,
    threads: Option<usize>,
    format: Option<String>,
}

struct Settings {
    preset: Preset,
    lead: LeadModel,
    pad: usize,
    attach: Option<f64>,
    format: Format,
}

fn load_config(common: &CommonOpts) -> Result<FileConfig> {
    match &common.config {
        None => Ok(FileConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))
        }
    }
}

fn settings(common: &CommonOpts, lead: Option<&LeadOpts>) -> Result<Settings> {
    let file = load_config(common)?;
    let preset_name = common
        .preset
        .clone()
        .or(file.preset)
        .unwrap_or_else(|| "uniform".to_string());
    let preset = Preset::from_name(&preset_name).map_err(|e| anyhow!("{e}"))?;
    preset.validate().map_err(|e| anyhow!("{e}"))?;
    let defaults = LeadModel::uniform();
    let pick = |flag: Option<f64>, from_file: Option<f64>, default: f64| {
        flag.or(from_file).unwrap_or(default)
    };
    let lead_model = LeadModel {
        alpha: pick(
            lead.and_then(|l| l.lead_alpha),
            file.lead_alpha,
            defaults.alpha,
        ),
        beta: pick(
            lead.and_then(|l| l.lead_beta),
            file.lead_beta,
            defaults.beta,
        ),
        gamma: pick(lead.and_then(|l| l.gamma), file.gamma, defaults.gamma),
        eta: pick(lead.and_then(|l| l.eta), file.eta, defaults.eta),
    };
    lead_model.validate().map_err(|e| anyhow!("{e}"))?;
    let format = common
        .format
        .or_else(|| file.format.as_deref().and_then(Format::parse))
        .unwrap_or(Format::Csv);
    let threads = common.threads.or(file.threads);
    if let Some(n) = threads {
        // may already be initialized when called twice; that is fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(Settings {
        preset,
        lead: lead_model,
        pad: lead.and_then(|l| l.pad).or(file.pad).unwrap_or(2),
        attach: lead.and_then(|l| l.attach).or(file.attach),
        format,
    })
}

fn parse_float_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .with_context(|| format!("invalid number {part:?}"))
        })
        .collect()
}

fn linspace(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        bail!("grid needs at least one point");
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    Ok((0..points)
        .map(|k| from + (to - from) * k as f64 / (points - 1) as f64)
        .collect())
}

fn cmd_compile(args: &CompileArgs) -> Result<()> {
    let settings = settings(&args.common, None)?;
    let expr = boolc::parse(&args.expression).map_err(|e| anyhow!("{e}"))?;
    let circuit = boolc::lower_with_preset(&expr, settings.preset);
    let doc = circuit.to_document().map_err(|e| anyhow!("{e}"))?;
    let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    text.push('\n');
    emit(&text, args.common.out.as_deref())
}

fn cmd_truth_table(args: &TruthTableArgs) -> Result<()> {
    let settings = settings(&args.common, Some(&args.lead))?;
    let engines: Vec<Engine> = match args.engine.as_str() {
        "both" => vec![Engine::Qst, Engine::Negf],
        name => vec![Engine::parse(name)
            .ok_or_else(|| anyhow!("unknown engine {name:?} (qst, negf, or both)"))?],
    };

    // bare graphs (tree, builtin, graph document) classify as one row
    if args.tree.is_some() || args.builtin.is_some() || args.graph.is_some() {
        if args.expr.is_some() || args.circuit.is_some() {
            bail!("give either an expression/circuit or a graph source, not both");
        }
        let source = GraphSource {
            graph: args.graph.clone(),
            expr: None,
            tree: args.tree.clone(),
            builtin: args.builtin.clone(),
        };
        let resolved = source.resolve(&settings.preset)?;
        if resolved.contacts.is_some() {
            bail!("two-terminal structures have no gate classification; use `transmit`");
        }
        let mut columns = Vec::new();
        let mut cells = Vec::new();
        for &engine in &engines {
            columns.push(format!("out_{}", engine.name()));
            match engine {
                Engine::Qst => {
                    let bit = nandtree::scatter::classify_bit(&resolved.graph)?;
                    cells.push(bit.value.to_string());
                }
                Engine::Negf => {
                    let (value, t0) = nandtree::negf::classify_bit_negf(
                        &resolved.graph,
                        &settings.lead,
                        settings.pad,
                    )?;
                    cells.push(value.to_string());
                    columns.push("T_negf".to_string());
                    cells.push(sci(t0));
                }
            }
        }
        let table = Table {
            columns,
            rows: vec![cells],
        };
        return emit(&table.render(settings.format), args.common.out.as_deref());
    }

    let (circuit, expr) = match (&args.expr, &args.circuit) {
        (Some(text), None) => {
            let expr = boolc::parse(text).map_err(|e| anyhow!("{e}"))?;
            (
                boolc::lower_with_preset(&expr, settings.preset.clone()),
                Some(expr),
            )
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading circuit {}", path.display()))?;
            let doc: GraphDoc = serde_json::from_str(&text)
                .with_context(|| format!("parsing circuit {}", path.display()))?;
            (
                LoweredCircuit::from_document(doc).map_err(|e| anyhow!("{e}"))?,
                None,
            )
        }
        _ => bail!("exactly one of --expr, --circuit, --graph, --tree, --builtin must be given"),
    };

    let mut tables = Vec::new();
    for &engine in &engines {
        tables.push(boolc::truth_table(
            &circuit,
            expr.as_ref(),
            engine,
            &settings.lead,
        )?);
    }

    let mut columns: Vec<String> = tables[0].variables.clone();
    if expr.is_some() {
        columns.push("oracle".to_string());
    }
    for engine in &engines {
        columns.push(format!("out_{}", engine.name()));
        if *engine == Engine::Negf {
            columns.push("T_negf".to_string());
        }
    }
    let mut rows = Vec::new();
    for (k, row) in tables[0].rows.iter().enumerate() {
        let mut cells: Vec<String> = row.assignment.iter().map(|b| b.to_string()).collect();
        if let Some(bit) = row.oracle {
            cells.push(bit.to_string());
        }
        for table in &tables {
            let r = &table.rows[k];
            cells.push(r.output.to_string());
            if table.engine == Engine::Negf {
                cells.push(sci(r.transmission.unwrap_or(f64::NAN)));
            }
        }
        rows.push(cells);
    }
    let table = Table { columns, rows };
    emit(&table.render(settings.format), args.common.out.as_deref())
}

fn cmd_transmit(args: &TransmitArgs) -> Result<()> {
    let settings = settings(&args.common, Some(&args.lead))?;
    let resolved = args.source.resolve(&settings.preset)?;
    let energies = match &args.energies {
        Some(text) => parse_float_list(text)?,
        None => linspace(args.emin, args.emax, args.points)?,
    };
    if energies.is_empty() {
        bail!("energy grid is empty");
    }

    let rows: Vec<Vec<String>> = match args.engine.as_str() {
        "negf" => {
            let junction = resolved.junction(settings.pad, settings.attach, settings.lead.beta);
            let spec = SweepSpec {
                variable: SweepVariable::Energy,
                values: energies,
                fixed_energy: None,
            };
            transmission_sweep(&resolved.graph, &settings.lead, &junction, &spec)?
                .into_iter()
                .map(|p| vec![sci(p.energy), sci(p.transmission)])
                .collect()
        }
        "qst" => {
            if resolved.contacts.is_some() {
                bail!("the qst engine handles side-coupled trees only");
            }
            energies
                .iter()
                .map(|&e| {
                    transmission_qst(&resolved.graph, &settings.lead, e)
                        .map(|s| vec![sci(e), sci(s.transmission)])
                        .map_err(|err| anyhow!("{err}"))
                })
                .collect::<Result<_>>()?
        }
        other => bail!("unknown engine {other:?} (qst or negf)"),
    };

    let table = Table {
        columns: vec!["E".to_string(), "T".to_string()],
        rows,
    };
    emit(&table.render(settings.format), args.common.out.as_deref())?;
    if args.gnuplot {
        match &args.common.out {
            Some(path) => output::write_gnuplot(path, "E [eV]", "T", true)?,
            None => bail!("--gnuplot needs --out"),
        }
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let settings = settings(&args.common, Some(&args.lead))?;
    let resolved = args.source.resolve(&settings.preset)?;
    let variable = SweepVariable::parse(&args.param).map_err(|e| anyhow!("{e}"))?;
    let values = match &args.values {
        Some(text) => parse_float_list(text)?,
        None => {
            let (from, to, points) = match (args.from, args.to, args.points) {
                (Some(f), Some(t), Some(p)) => (f, t, p),
                _ => bail!("either --values or all of --from/--to/--points are required"),
            };
            linspace(from, to, points)?
        }
    };
    if values.is_empty() {
        bail!("sweep grid is empty");
    }
    let fixed_energy = match variable {
        SweepVariable::Energy => None,
        _ => Some(args.energy.unwrap_or(0.0)),
    };
    let junction = resolved.junction(settings.pad, settings.attach, settings.lead.beta);
    let spec = SweepSpec {
        variable,
        values,
        fixed_energy,
    };
    let points = transmission_sweep(&resolved.graph, &settings.lead, &junction, &spec)?;
    let table = Table {
        columns: vec![args.param.clone(), "E".to_string(), "T".to_string()],
        rows: points
            .into_iter()
            .map(|p| vec![sci(p.value), sci(p.energy), sci(p.transmission)])
            .collect(),
    };
    emit(&table.render(settings.format), args.common.out.as_deref())?;
    if args.gnuplot {
        match &args.common.out {
            Some(path) => output::write_gnuplot(path, &args.param, "T", true)?,
            None => bail!("--gnuplot needs --out"),
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<()> {
    if let Some(path) = &args.preset_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading preset file {}", path.display()))?;
        let params: HuckelParams = serde_json::from_str(&text)
            .with_context(|| format!("parsing preset file {}", path.display()))?;
        params.validate().map_err(|e| anyhow!("{e}"))?;
        println!("preset file {} is valid", path.display());
    }
    if args.list {
        for (id, name) in nandtree::verify::list() {
            println!("{id}: {name}");
        }
        return Ok(());
    }
    let results = nandtree::verify::run_all();
    let mut all_passed = true;
    for r in &results {
        println!(
            "[{}] criterion {} ({})",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name
        );
        print!("{}", r.details);
        all_passed &= r.passed;
    }
    if !all_passed {
        bail!("verification failed");
    }
    println!("all {} criteria passed", results.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Compile(args) => cmd_compile(args),
        Command::TruthTable(args) => cmd_truth_table(args),
        Command::Transmit(args) => cmd_transmit(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
