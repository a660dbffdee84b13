mod cache;
mod config;
mod output;

use anyhow::{anyhow, bail, Context, Result};
use cache::{CacheKey, ResultCache};
use clap::{Args, Parser, Subcommand};
use config::{Format, RunConfig};
use ringsalem::incidence::{IncidenceOperator, SolveOptions, SpectralReport};
use ringsalem::ring::{parse_ring_spec, RingSpec, RingTable};
use ringsalem::verify;
use serde::Serialize;
use std::path::PathBuf;
use std::sync::Arc;

/// Finite rings, dot-product averaging operators, and their
/// incidence-Salem numbers.
#[derive(Parser)]
#[command(name = "ringsalem", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Config file with key=value lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Relative convergence tolerance for iterative solves.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for deterministic pseudo-randomness.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Output path (default: stdout).
    #[arg(long)]
    output: Option<String>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Commands {
    /// Structure summary of a ring: size, units, radical, labels.
    Info {
        /// Ring spec, e.g. "zmod(4)", "gf(9)", "mat(2,gf(2))".
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Operator norms and the incidence-Salem number of one instance.
    Salem {
        #[arg(long)]
        ring: Option<String>,
        /// Dimension d >= 2.
        #[arg(long)]
        d: Option<usize>,
        /// Unit label, or "all-units" for the whole unit orbit.
        #[arg(long)]
        t: Option<String>,
        /// Cache directory override (also RINGSALEM_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<String>,
        /// Skip the result cache entirely.
        #[arg(long)]
        no_cache: bool,
        /// Dump the operator adjacency: writes BASE.csv (x_index,y_index
        /// lines) and BASE.json (header).
        #[arg(long, value_name = "BASE")]
        dump_operator: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the verification suite; exit 0 iff every check passes.
    Verify {
        /// Which suite to run (only "all" is defined).
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Salem numbers across a family of rings, one row per instance.
    Scan {
        /// Semicolon-separated ring specs, e.g. "gf(2);zmod(4)".
        #[arg(long)]
        family: Option<String>,
        /// Named family: "golden" ships the default instances.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Randomized solvability experiment for t in E.E above the threshold.
    Edot {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Dot-product graph structure over a finite field.
    Graph {
        /// Field order q (prime power).
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        t: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn resolve(common: &CommonArgs, command: &str) -> Result<RunConfig> {
    let mut config = RunConfig {
        command: command.to_string(),
        ..Default::default()
    };
    if let Some(path) = &common.config {
        let file = config::parse_config_file(path)?;
        config.apply_file(&file)?;
    }
    if let Some(tol) = common.tol {
        config.tol = tol;
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(workers) = common.workers {
        config.workers = workers;
    }
    if let Some(output) = &common.output {
        config.output = Some(output.clone());
    }
    if let Some(format) = common.format {
        config.format = format;
    }
    if config.tol <= 0.0 {
        bail!("tolerance must be positive");
    }
    if config.workers == 0 {
        bail!("workers must be at least 1");
    }
    Ok(config)
}

fn solve_options(config: &RunConfig) -> SolveOptions {
    SolveOptions {
        tol: config.tol,
        seed: config.seed,
        workers: config.workers,
    }
}

fn build_ring(spec_text: &str) -> Result<(RingSpec, Arc<RingTable>)> {
    let spec = parse_ring_spec(spec_text)?;
    let ring = Arc::new(spec.build()?);
    Ok((spec, ring))
}

fn find_unit(ring: &RingTable, label: &str) -> Result<u16> {
    let t = ring
        .element_by_label(label)
        .ok_or_else(|| anyhow!("no element labeled {label:?} in {}", ring.name()))?;
    if !ring.is_unit(t) {
        bail!("element {label:?} is not a unit of {}", ring.name());
    }
    Ok(t)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Commands::Info { ring, common } => {
            let config = resolve(&common, "info")?;
            let (_, table) = build_ring(&ring)?;
            info_command(&table, &config)
        }
        Commands::Salem {
            ring,
            d,
            t,
            cache_dir,
            no_cache,
            dump_operator,
            common,
        } => {
            let mut config = resolve(&common, "salem")?;
            if let Some(ring) = ring {
                config.ring_spec = ring;
            }
            if let Some(d) = d {
                config.d = d;
            }
            if let Some(t) = t {
                config.t_label = t;
            }
            if let Some(dir) = cache_dir {
                config.cache_dir = Some(dir);
            }
            if no_cache {
                config.use_cache = false;
            }
            salem_command(&config, dump_operator.as_deref())
        }
        Commands::Verify { suite, common } => {
            let config = resolve(&common, "verify")?;
            if suite != "all" {
                bail!("unknown suite {suite:?}; only \"all\" is defined");
            }
            verify_command(&config)
        }
        Commands::Scan {
            family,
            preset,
            d,
            common,
        } => {
            let mut config = resolve(&common, "scan")?;
            if let Some(d) = d {
                config.d = d;
            }
            if let Some(family) = family {
                config.family = Some(family);
            }
            scan_command(&config, preset.as_deref())
        }
        Commands::Edot {
            ring,
            d,
            t,
            trials,
            common,
        } => {
            let mut config = resolve(&common, "edot")?;
            if let Some(ring) = ring {
                config.ring_spec = ring;
            }
            if let Some(d) = d {
                config.d = d;
            }
            if let Some(t) = t {
                config.t_label = t;
            }
            if let Some(trials) = trials {
                config.trials = trials;
            }
            edot_command(&config)
        }
        Commands::Graph { q, d, t, common } => {
            let mut config = resolve(&common, "graph")?;
            if let Some(d) = d {
                config.d = d;
            }
            if let Some(t) = t {
                config.t_label = t;
            }
            graph_command(q, &config)
        }
    }
}

#[derive(Serialize)]
struct RingInfo {
    spec: String,
    size: usize,
    commutative: bool,
    field: bool,
    unit_count: usize,
    radical_size: usize,
    additive_exponent: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    units: Option<Vec<String>>,
}

fn info_command(ring: &RingTable, config: &RunConfig) -> Result<i32> {
    let radical = ring.jacobson_radical();
    let info = RingInfo {
        spec: ring.name(),
        size: ring.size(),
        commutative: ring.is_commutative(),
        field: ring.is_field(),
        unit_count: ring.units().len(),
        radical_size: radical.len(),
        additive_exponent: ring.additive_exponent(),
        units: (ring.units().len() <= 32).then(|| {
            ring.units()
                .iter()
                .map(|&u| ring.label(u).to_string())
                .collect()
        }),
    };
    let content = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&info)?),
        Format::Csv | Format::Text => format!(
            "spec:              {}\nsize:              {}\ncommutative:       {}\nfield:             {}\nunits:             {}\nradical size:      {}\nadditive exponent: {}\n",
            info.spec,
            info.size,
            info.commutative,
            info.field,
            info.unit_count,
            info.radical_size,
            info.additive_exponent
        ),
    };
    output::emit(config.output.as_deref(), &content)?;
    Ok(0)
}

fn compute_report(
    ring: &Arc<RingTable>,
    spec: &RingSpec,
    t: u16,
    config: &RunConfig,
    cache: Option<&ResultCache>,
) -> Result<(SpectralReport, String)> {
    let key = CacheKey {
        spec: spec.canonical(),
        d: config.d,
        t_label: ring.label(t).to_string(),
        tol: config.tol,
    };
    if let Some(cache) = cache {
        if let Some(json) = cache.get(&key) {
            let report: SpectralReport =
                serde_json::from_str(&json).context("corrupt cache entry")?;
            return Ok((report, json));
        }
    }
    let op = IncidenceOperator::build(ring.clone(), config.d, t, config.workers)?;
    let report = SpectralReport::compute(&op, &solve_options(config));
    let json = serde_json::to_string_pretty(&report)?;
    if let Some(cache) = cache {
        cache.put(&key, &json)?;
    }
    Ok((report, json))
}

#[derive(Serialize)]
struct UnitOrbitReport {
    per_unit: Vec<SpectralReport>,
    max_relative_deviation: f64,
}

fn salem_command(config: &RunConfig, dump_operator: Option<&str>) -> Result<i32> {
    if config.ring_spec.is_empty() {
        bail!("--ring is required");
    }
    let (spec, ring) = build_ring(&config.ring_spec)?;
    let cache_store;
    let cache = if config.use_cache {
        cache_store = ResultCache::resolve(config.cache_dir.as_deref());
        Some(&cache_store)
    } else {
        None
    };

    if let Some(base) = dump_operator {
        let t = if config.t_label == "all-units" {
            ring.one()
        } else {
            find_unit(&ring, &config.t_label)?
        };
        let op = IncidenceOperator::build(ring.clone(), config.d, t, config.workers)?;
        std::fs::write(format!("{base}.csv"), op.export_csv())
            .with_context(|| format!("cannot write {base}.csv"))?;
        std::fs::write(
            format!("{base}.json"),
            format!("{}\n", serde_json::to_string_pretty(&op.export_header())?),
        )
        .with_context(|| format!("cannot write {base}.json"))?;
    }

    let mut exit = 0;
    let content = if config.t_label == "all-units" {
        let mut reports = Vec::new();
        for &t in ring.units() {
            let (report, _) = compute_report(&ring, &spec, t, config, cache)?;
            if !report.converged {
                eprintln!("solver did not converge for t = {}", report.t_label);
                exit = 1;
            }
            reports.push(report);
        }
        let max = reports.iter().map(|r| r.norm_w).fold(f64::MIN, f64::max);
        let min = reports.iter().map(|r| r.norm_w).fold(f64::MAX, f64::min);
        let orbit = UnitOrbitReport {
            per_unit: reports,
            max_relative_deviation: (max - min) / max.max(f64::MIN_POSITIVE),
        };
        match config.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&orbit)?),
            Format::Csv => {
                let mut out = String::from(output::report_csv_header());
                out.push('\n');
                for r in &orbit.per_unit {
                    out.push_str(&output::report_csv_row(r));
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                for r in &orbit.per_unit {
                    out.push_str(&output::report_text(r));
                    out.push('\n');
                }
                out.push_str(&format!(
                    "max relative deviation: {}\n",
                    output::sig12(orbit.max_relative_deviation)
                ));
                out
            }
        }
    } else {
        let t = find_unit(&ring, &config.t_label)?;
        let (report, json) = compute_report(&ring, &spec, t, config, cache)?;
        if !report.converged {
            eprintln!("solver did not converge (residual {})", report.residual);
            exit = 1;
        }
        match config.format {
            Format::Json => format!("{json}\n"),
            Format::Csv => format!(
                "{}\n{}\n",
                output::report_csv_header(),
                output::report_csv_row(&report)
            ),
            Format::Text => output::report_text(&report),
        }
    };
    output::emit(config.output.as_deref(), &content)?;
    Ok(exit)
}

fn verify_command(config: &RunConfig) -> Result<i32> {
    let checks = verify::default_suite(&solve_options(config))?;
    let content = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&checks)?),
        Format::Csv | Format::Text => {
            let mut out = String::new();
            for check in &checks {
                out.push_str(&check.status_line());
                out.push('\n');
            }
            out
        }
    };
    output::emit(config.output.as_deref(), &content)?;
    let failing: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if failing.is_empty() {
        Ok(0)
    } else {
        eprintln!("failing checks: {}", failing.join(", "));
        Ok(1)
    }
}

/// The family shipped with the scan preset: every field within scale plus
/// the radical and matrix instances the reports discuss.
fn golden_family() -> Vec<&'static str> {
    vec![
        "gf(2)",
        "gf(3)",
        "gf(4)",
        "gf(5)",
        "gf(7)",
        "gf(8)",
        "gf(9)",
        "zmod(4)",
        "zmod(6)",
        "zmod(8)",
        "zmod(9)",
        "trunc(gf(2),2)",
        "trunc(gf(3),2)",
        "prod(gf(2),gf(2))",
        "prod(gf(2),gf(3))",
        "mat(2,gf(2))",
    ]
}

fn scan_command(config: &RunConfig, preset: Option<&str>) -> Result<i32> {
    let specs: Vec<RingSpec> = match (&config.family, preset) {
        (_, Some("golden")) => golden_family()
            .iter()
            .map(|t| parse_ring_spec(t))
            .collect::<ringsalem::Result<_>>()?,
        (_, Some(other)) => bail!("unknown preset {other:?}; only \"golden\" is defined"),
        (Some(family), None) => family
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(parse_ring_spec)
            .collect::<ringsalem::Result<_>>()?,
        (None, None) => bail!("scan needs --family or --preset golden"),
    };
    let rows = verify::scan_salem(&specs, config.d, &solve_options(config));
    let content = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows)?),
        Format::Csv | Format::Text => {
            let mut out = String::from(output::scan_csv_header());
            out.push('\n');
            for row in &rows {
                out.push_str(&output::scan_csv_row(row));
                out.push('\n');
            }
            out
        }
    };
    output::emit(config.output.as_deref(), &content)?;
    let failed = rows.iter().any(|r| r.error.is_some());
    Ok(if failed { 1 } else { 0 })
}

fn edot_command(config: &RunConfig) -> Result<i32> {
    if config.ring_spec.is_empty() {
        bail!("--ring is required");
    }
    let (_, ring) = build_ring(&config.ring_spec)?;
    let t = find_unit(&ring, &config.t_label)?;
    let report = verify::edot_experiment(
        ring,
        config.d,
        t,
        config.trials,
        config.seed,
        &solve_options(config),
    )?;
    let content = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        Format::Csv | Format::Text => format!(
            "ring:      {}\nd:         {}\nt:         {}\nsalem:     {}\nthreshold: {}\nset size:  {}\ntrials:    {}\nfailures:  {}\nseed:      {}\nvacuous:   {}\n",
            report.ring,
            report.d,
            report.t_label,
            output::sig12(report.measured_salem),
            output::sig12(report.threshold),
            report.set_size,
            report.trials,
            report.failures,
            report.seed,
            report.vacuous
        ),
    };
    output::emit(config.output.as_deref(), &content)?;
    Ok(if report.failures == 0 { 0 } else { 1 })
}

fn graph_command(q: u64, config: &RunConfig) -> Result<i32> {
    let t = if config.t_label == "1" {
        None
    } else {
        let (_, ring) = build_ring(&format!("gf({q})"))?;
        Some(find_unit(&ring, &config.t_label)?)
    };
    let report = verify::graph_analysis(q, config.d, t, &solve_options(config))?;
    let content = match config.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        Format::Csv | Format::Text => format!(
            "ring:            {}\nd:               {}\nt:               {}\nregular degree:  {:?}\ncomponent size:  {}\nconnected:       {}\nlaplacian gap:   {}\nadjacency range: [{}, {}]\n",
            report.ring,
            report.d,
            report.t_label,
            report.regular_degree,
            report.big_component_size,
            report.connected,
            output::sig12(report.laplacian_gap),
            output::sig12(report.adjacency_min),
            output::sig12(report.adjacency_max)
        ),
    };
    output::emit(config.output.as_deref(), &content)?;
    Ok(0)
}
