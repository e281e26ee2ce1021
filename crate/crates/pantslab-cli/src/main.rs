//! Command-line front end: enumerate the complexes, run verification suites,
//! export posets and geometry, and emit reproduction reports.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error.

mod checks;
mod estimate;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pantslab::complexes::{
    cyclic_polytope, ober_complex, skeleton_s, skeleton_sigma, stratum_lattice,
};
use pantslab::cyclic::{enumerate_cyclic_partitions, full_cycle};
use pantslab::engine::{build_ghost_complex, build_l, collapse_to_belt};
use pantslab::export::{
    f_vector_csv_rows, geometry_to_off, poset_to_dot, poset_to_json, schedule_to_json,
};
use pantslab::rootgeom::{perm_geometry_n3, zonotope_geometry_n3};
use pantslab::subset::Subset;
use pantslab::FacePoset;
use std::io::Write;
use std::process::ExitCode;

const DEFAULT_MAX_CELLS: u64 = 5_000_000;

#[derive(Parser)]
#[command(name = "pantslab", version, about = "Exact verification toolkit for pair-of-pants complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SizeArgs {
    /// Single ground-set parameter n (ground set {0,...,n})
    #[arg(long)]
    n: Option<u32>,
    /// Range of n values, e.g. 2..4 (inclusive)
    #[arg(long = "n-range", value_parser = parse_range)]
    n_range: Option<(u32, u32)>,
}

impl SizeArgs {
    fn values(&self) -> Result<Vec<u32>, String> {
        let ns: Vec<u32> = match (self.n, self.n_range) {
            (Some(n), None) => vec![n],
            (None, Some((a, b))) if a <= b => (a..=b).collect(),
            (None, Some(_)) => return Err("empty --n-range".into()),
            (None, None) => return Err("one of --n or --n-range is required".into()),
            (Some(_), Some(_)) => {
                return Err("--n and --n-range are mutually exclusive".into())
            }
        };
        for &n in &ns {
            pantslab::GroundSet::new(n).map_err(|e| e.to_string())?;
            if n > 12 {
                return Err(format!("n = {n} is beyond the supported range (1..=12)"));
            }
        }
        Ok(ns)
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    Ok((
        a.parse().map_err(|e| format!("{e}"))?,
        b.parse().map_err(|e| format!("{e}"))?,
    ))
}

#[derive(Subcommand)]
enum Command {
    /// List the cells of a complex with counts and f-vector
    Enumerate {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum)]
        object: ObjectKind,
        /// Write the listing to a file instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Run verification checks
    Verify {
        #[command(flatten)]
        size: SizeArgs,
        /// Comma-separated list of checks, or "all"
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        /// Fail (exit 1) on skipped checks
        #[arg(long)]
        strict: bool,
        /// Run checks above the cell bound anyway
        #[arg(long)]
        force: bool,
        /// Worker threads for independent checks
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Feasibility bound on estimated cells (default 5e6; env
        /// PANTSLAB_MAX_CELLS overrides)
        #[arg(long = "max-cells")]
        max_cells: Option<u64>,
        /// Write a JSON report to this path
        #[arg(long)]
        out: Option<String>,
        /// Include wall-clock timings in the JSON report (timings always go
        /// to stderr; stdout stays byte-stable)
        #[arg(long)]
        timings: bool,
    },
    /// Export a complex or geometry to a file format
    Export {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum)]
        object: ObjectKind,
        #[arg(long, value_enum)]
        format: FormatKind,
        #[arg(long)]
        out: Option<String>,
        /// Decimal digits for OFF coordinates
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Reproduction tables: counts, f-vectors, Betti numbers, check outcomes
    Report {
        #[command(flatten)]
        size: SizeArgs,
        /// Write PREFIX.md and PREFIX.csv instead of stdout markdown
        #[arg(long)]
        out: Option<String>,
        /// Append wall-clock timings to the tables
        #[arg(long)]
        timings: bool,
        #[arg(long = "max-cells")]
        max_cells: Option<u64>,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectKind {
    Partitions,
    Strata,
    SFaces,
    SigmaFaces,
    Ober,
    #[value(alias = "L")]
    L,
    Ghost,
    CyclicPolytope,
    Perm,
    Zonotope,
    LTrace,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    Json,
    Dot,
    Off,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Debug)]
pub enum CheckKind {
    All,
    Duality,
    Zonotope,
    Dims,
    FibersMu1,
    FibersMu2,
    Circle,
    Ghost,
    OberHomology,
    Regularity,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::All => "all",
            CheckKind::Duality => "duality",
            CheckKind::Zonotope => "zonotope",
            CheckKind::Dims => "dims",
            CheckKind::FibersMu1 => "fibers-mu1",
            CheckKind::FibersMu2 => "fibers-mu2",
            CheckKind::Circle => "circle",
            CheckKind::Ghost => "ghost",
            CheckKind::OberHomology => "ober-homology",
            CheckKind::Regularity => "regularity",
        }
    }

    pub fn expand(list: &[CheckKind]) -> Vec<CheckKind> {
        if list.contains(&CheckKind::All) {
            vec![
                CheckKind::Duality,
                CheckKind::Zonotope,
                CheckKind::Dims,
                CheckKind::FibersMu1,
                CheckKind::FibersMu2,
                CheckKind::Circle,
                CheckKind::Ghost,
                CheckKind::OberHomology,
                CheckKind::Regularity,
            ]
        } else {
            list.to_vec()
        }
    }
}

fn resolve_max_cells(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("PANTSLAB_MAX_CELLS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_MAX_CELLS)
}

fn write_output(out: &Option<String>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Enumerate { size, object, out } => {
            let ns = match size.values() {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            let mut buf = String::new();
            for n in ns {
                match render_enumeration(n, object) {
                    Ok(s) => buf.push_str(&s),
                    Err(e) => return Ok(usage_error(&e.to_string())),
                }
            }
            write_output(&out, &buf)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            size,
            object,
            format,
            out,
            precision,
        } => {
            let ns = match size.values() {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            if ns.len() != 1 {
                return Ok(usage_error("export takes a single --n"));
            }
            match render_export(ns[0], object, format, precision) {
                Ok(content) => {
                    write_output(&out, &content)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(usage_error(&e)),
            }
        }
        Command::Verify {
            size,
            checks,
            strict,
            force,
            jobs,
            max_cells,
            out,
            timings,
        } => {
            let ns = match size.values() {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            if checks.is_empty() {
                return Ok(usage_error("--checks is required (try --checks all)"));
            }
            let kinds = CheckKind::expand(&checks);
            let bound = resolve_max_cells(max_cells);
            let records = checks::run_all(&ns, &kinds, bound, force, jobs);
            let mut failed = false;
            let mut skipped = false;
            for r in &records {
                println!("{}", r.stdout_line());
                eprintln!("# {} n={} took {}ms", r.name, r.n, r.millis);
                match r.status {
                    checks::Status::Fail => failed = true,
                    checks::Status::Skipped => skipped = true,
                    checks::Status::Pass => {}
                }
            }
            if let Some(path) = out {
                let report = checks::to_json(&records, timings);
                std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
            }
            if failed || (strict && skipped) {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Report {
            size,
            out,
            timings,
            max_cells,
            force,
        } => {
            let ns = match size.values() {
                Ok(v) => v,
                Err(e) => return Ok(usage_error(&e)),
            };
            let bound = resolve_max_cells(max_cells);
            let (md, csv) = checks::report_bundle(&ns, bound, force, timings);
            match out {
                Some(prefix) => {
                    std::fs::write(format!("{prefix}.md"), md)?;
                    std::fs::write(format!("{prefix}.csv"), csv)?;
                }
                None => {
                    print!("{md}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn poset_for(n: u32, object: ObjectKind) -> pantslab::Result<FacePoset> {
    match object {
        ObjectKind::Strata => stratum_lattice(&full_cycle(n), Subset::full(n + 1)),
        ObjectKind::SFaces => Ok(skeleton_s(n)),
        ObjectKind::SigmaFaces => Ok(skeleton_sigma(n)),
        ObjectKind::Ober => ober_complex(n),
        ObjectKind::L => build_l(&full_cycle(n), Subset::full(n + 1)).map(|(p, _)| p),
        ObjectKind::Ghost => build_ghost_complex(&full_cycle(n), Subset::full(n + 1)),
        ObjectKind::CyclicPolytope => {
            cyclic_polytope(2 * n as usize - 2, 2 * n as usize + 2)
        }
        _ => Err(pantslab::Error::Invalid(
            "object has no face poset".into(),
        )),
    }
}

fn render_enumeration(n: u32, object: ObjectKind) -> pantslab::Result<String> {
    let mut s = String::new();
    match object {
        ObjectKind::Partitions => {
            let all = enumerate_cyclic_partitions(n, 1);
            s.push_str(&format!("object=partitions n={n} count={}\n", all.len()));
            for p in &all {
                s.push_str(&format!("parts={} partition={p}\n", p.num_parts()));
            }
        }
        ObjectKind::Perm | ObjectKind::Zonotope | ObjectKind::LTrace => {
            return Err(pantslab::Error::Invalid(
                "use export for geometry and trace objects".into(),
            ));
        }
        _ => {
            let p = poset_for(n, object)?;
            let f: Vec<String> = p.f_vector().iter().map(|c| c.to_string()).collect();
            s.push_str(&format!(
                "object={} n={n} cells={} chi={} f=[{}]\n",
                object_name(object),
                p.len(),
                p.euler_characteristic(),
                f.join(",")
            ));
            for (l, d) in p.cells() {
                s.push_str(&format!("dim={d} label={l}\n"));
            }
        }
    }
    Ok(s)
}

fn object_name(o: ObjectKind) -> &'static str {
    match o {
        ObjectKind::Partitions => "partitions",
        ObjectKind::Strata => "strata",
        ObjectKind::SFaces => "s-faces",
        ObjectKind::SigmaFaces => "sigma-faces",
        ObjectKind::Ober => "ober",
        ObjectKind::L => "l",
        ObjectKind::Ghost => "ghost",
        ObjectKind::CyclicPolytope => "cyclic-polytope",
        ObjectKind::Perm => "perm",
        ObjectKind::Zonotope => "zonotope",
        ObjectKind::LTrace => "l-trace",
    }
}

fn render_export(
    n: u32,
    object: ObjectKind,
    format: FormatKind,
    precision: usize,
) -> Result<String, String> {
    match format {
        FormatKind::Off => {
            if n != 3 {
                return Err("off export is only defined for the n = 3 geometry".into());
            }
            let g = match object {
                ObjectKind::Perm => perm_geometry_n3(),
                ObjectKind::Zonotope => zonotope_geometry_n3(),
                _ => return Err("off export supports --object perm or zonotope".into()),
            };
            Ok(geometry_to_off(&g, precision))
        }
        FormatKind::Json => match object {
            ObjectKind::LTrace => {
                let sigma = full_cycle(n);
                let (l, ctx) =
                    build_l(&sigma, Subset::full(n + 1)).map_err(|e| e.to_string())?;
                let belt = collapse_to_belt(&l, &ctx).map_err(|e| e.to_string())?;
                let circle = pantslab::engine::belt_to_circle(&belt.poset, &ctx)
                    .map_err(|e| e.to_string())?;
                let mut trace = belt.trace;
                trace.extend(circle.trace);
                Ok(format!("{}\n", schedule_to_json(&trace)))
            }
            ObjectKind::Partitions | ObjectKind::Perm | ObjectKind::Zonotope => {
                Err("json export needs a poset object".into())
            }
            _ => {
                let p = poset_for(n, object).map_err(|e| e.to_string())?;
                Ok(format!("{}\n", poset_to_json(&p)))
            }
        },
        FormatKind::Dot => {
            let p = poset_for(n, object).map_err(|e| e.to_string())?;
            Ok(poset_to_dot(&p, object_name(object)))
        }
        FormatKind::Csv => {
            let p = poset_for(n, object).map_err(|e| e.to_string())?;
            let mut rows = vec!["table,object,n,label,index,value".to_string()];
            for r in f_vector_csv_rows(object_name(object), n, "full", &p) {
                rows.push(format!("f-vector,{r}"));
            }
            let betti = pantslab::homology::homology_z2(&p);
            for r in pantslab::export::betti_csv_rows(object_name(object), n, "full", &betti) {
                rows.push(format!("betti,{r}"));
            }
            Ok(rows.join("\n") + "\n")
        }
    }
}
