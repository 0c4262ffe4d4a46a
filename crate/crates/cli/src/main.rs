use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use srd_core::acceptance;
use srd_core::atlas;
use srd_core::codes::{parse_code, CodeSpace};
use srd_core::geometry::Pg5;
use srd_core::gf::{parse_field_spec, Elem, FieldCtx};
use srd_core::invariants::Od;
use srd_core::pg::SubspaceEnumerator;
use srd_core::report::{self, Format};
use srd_core::verify::{self, Config, TheoremReport};
use srd_core::Error;

#[derive(Parser)]
#[command(name = "srd", version, about = "Symmetric rank-distance codes in 3x3 matrices over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit representatives of lines, solids and special planes.
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
    /// Classify a code given as JSON.
    Classify {
        #[command(subcommand)]
        action: ClassifyAction,
    },
    /// Run verification drivers over one field.
    Verify(VerifyArgs),
    /// Run the acceptance matrix.
    Acceptance(AcceptanceArgs),
    /// Count k-subspaces of PG(5, q) by point-orbit distribution.
    Enumerate(EnumerateArgs),
}

#[derive(Subcommand)]
enum AtlasAction {
    Emit {
        #[arg(long)]
        field: String,
        /// Emit a single representative.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum ClassifyAction {
    Code {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Run {
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest enumeration done exhaustively.
    #[arg(long)]
    budget: Option<u128>,
    /// Sample size when the budget is exceeded.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl Run {
    fn config(&self) -> Config {
        let d = Config::default();
        Config {
            budget: self.budget.unwrap_or(d.budget),
            samples: self.samples.unwrap_or(d.samples),
            seed: self.seed.unwrap_or(d.seed),
            ..d
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    field: String,
    /// Driver id; all applicable drivers when omitted.
    #[arg(long)]
    theorem: Option<String>,
    /// Record wall-clock seconds (reports are then no longer byte-identical).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    run: Run,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Comma-separated field orders; each criterion's own list when omitted.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u32>>,
    #[command(flatten)]
    run: Run,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    field: String,
    /// Vector dimension k of the subspaces (1 = points, 4 = solids).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    dim: u8,
    #[command(flatten)]
    run: Run,
    #[command(flatten)]
    out: Output,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } | Error::Inconsistent(_) | Error::Singular => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn field(spec: &str) -> Result<FieldCtx, Failure> {
    Ok(parse_field_spec(spec)?)
}

fn write(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pool(run: &Run) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = run.jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| Failure::Runtime(e.to_string()))
}

fn atlas_emit(field_spec: &str, id: Option<&str>, out: &Output) -> Result<(), Failure> {
    let f = field(field_spec)?;
    let g = Pg5::new(&f)?;
    let entries = match id {
        Some(id) => vec![atlas::check(atlas::spec(&f, id)?, &g)?],
        None => atlas::emit(&g)?,
    };
    let name = f.spec_string();
    let text = match out.format {
        Format::Json => report::json(&entries),
        Format::Md => report::atlas_markdown(&name, &entries),
        Format::Csv => report::csv(&report::atlas_rows(&name, &entries))?,
    };
    write(out, &text)
}

fn classify_code(input: &PathBuf, out: &Output) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let code = parse_code(&text)?;
    let cs = CodeSpace::new(code.field())?;
    let s = cs.summary(&code)?;
    let text = match out.format {
        Format::Json => report::json(&s),
        Format::Md | Format::Csv => {
            let rows = [
                ("field", s.field.clone()),
                ("dim", s.dim.to_string()),
                ("min distance", s.min_distance.to_string()),
                ("size", s.size.to_string()),
                ("rank distribution", format!("{:?}", s.rank_distribution)),
                ("OD0", format!("{:?}", s.od0)),
                ("is_msrd", s.is_msrd.to_string()),
                ("is_complete", s.is_complete.to_string()),
                ("class", s.class.to_string()),
            ];
            let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
            rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
        }
    };
    write(out, &text)
}

fn run_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let f = field(&a.field)?;
    let ids: Vec<&str> = match &a.theorem {
        Some(t) => {
            let id = verify::DRIVERS
                .iter()
                .copied()
                .find(|d| d == t)
                .ok_or_else(|| Failure::Usage(format!("unknown theorem {t:?}; known: {}", verify::DRIVERS.join(", "))))?;
            if !verify::applies(id, &f) {
                return Err(Failure::Usage(format!("{id} does not apply to q = {}", f.q())));
            }
            vec![id]
        }
        None => verify::DRIVERS.iter().copied().filter(|d| verify::applies(d, &f)).collect(),
    };
    let cfg = a.run.config();
    let reports: Vec<TheoremReport> = pool(&a.run)?.install(|| -> Result<_, Failure> {
        let cs = CodeSpace::new(&f)?;
        let mut out = Vec::new();
        for id in ids {
            let t = Instant::now();
            let mut r = verify::run(id, &cs, &cfg)?;
            if a.timings {
                r.seconds = Some(t.elapsed().as_secs_f64());
            }
            out.push(r);
        }
        Ok(out)
    })?;
    let text = match a.out.format {
        Format::Json => report::json(&reports),
        Format::Md => report::reports_markdown(&reports),
        Format::Csv => report::csv(&report::report_rows(&reports))?,
    };
    write(&a.out, &text)?;
    if reports.iter().any(|r| r.status.is_failure()) {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn run_acceptance(a: &AcceptanceArgs) -> Result<(), Failure> {
    let cfg = a.run.config();
    let results = pool(&a.run)?.install(|| acceptance::run(a.q.as_deref(), &cfg))?;
    let text = match a.out.format {
        Format::Json => report::json(&results),
        Format::Md => results.iter().map(|r| r.line() + "\n").collect(),
        Format::Csv => {
            let rows: Vec<report::Row> = results
                .iter()
                .flat_map(|r| {
                    r.fields.iter().map(move |(q, s)| report::Row {
                        id: format!("criterion {}", r.number),
                        field: q.to_string(),
                        expected: "pass".into(),
                        computed: r.title.clone(),
                        status: s.to_string(),
                        seconds: String::new(),
                    })
                })
                .collect();
            report::csv(&rows)?
        }
    };
    write(&a.out, &text)?;
    if results.iter().any(|r| r.status.is_failure()) {
        return Err(Failure::Checks);
    }
    Ok(())
}

#[derive(Serialize)]
struct SignatureCount {
    od0: Od,
    count: u128,
}

#[derive(Serialize)]
struct Enumeration {
    field: String,
    dim: u8,
    total: u128,
    signatures: Vec<SignatureCount>,
}

fn run_enumerate(a: &EnumerateArgs) -> Result<(), Failure> {
    let f = field(&a.field)?;
    let cfg = a.run.config();
    let k = a.dim as usize;
    let e = SubspaceEnumerator::new(f.q(), 6, k);
    if e.len() > cfg.budget {
        return Err(Error::BudgetExceeded { needed: e.len(), budget: cfg.budget }.into());
    }
    let counts = pool(&a.run)?.install(|| -> Result<BTreeMap<Od, u128>, Failure> {
        let g = Pg5::new(&f)?;
        Ok((0..e.len() as u64)
            .into_par_iter()
            .fold(
                || (BTreeMap::new(), vec![0 as Elem; 6 * k], Vec::new(), Vec::new()),
                |(mut m, mut flat, mut rows, mut buf), i| {
                    e.decode_into(i as u128, &mut flat);
                    rows.clear();
                    rows.extend(flat.chunks(6).map(|r| g.encode(r)));
                    *m.entry(g.od0(&rows, &mut buf)).or_insert(0u128) += 1;
                    (m, flat, rows, buf)
                },
            )
            .map(|t| t.0)
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            }))
    })?;
    let total: u128 = counts.values().sum();
    if total != e.len() {
        return Err(Failure::Runtime(format!("counted {total} of {} subspaces", e.len())));
    }
    let en = Enumeration {
        field: f.spec_string(),
        dim: a.dim,
        total,
        signatures: counts.into_iter().map(|(od0, count)| SignatureCount { od0, count }).collect(),
    };
    let text = match a.out.format {
        Format::Json => report::json(&en),
        Format::Md => {
            let mut s = format!("{} subspaces of dimension {} over GF({})\n\n| OD0 | count |\n|---|---|\n", en.total, en.dim, en.field);
            for c in &en.signatures {
                s += &format!("| {:?} | {} |\n", c.od0, c.count);
            }
            s
        }
        Format::Csv => {
            let rows: Vec<report::Row> = en
                .signatures
                .iter()
                .map(|c| report::Row {
                    id: format!("{:?}", c.od0),
                    field: en.field.clone(),
                    expected: String::new(),
                    computed: c.count.to_string(),
                    status: String::new(),
                    seconds: String::new(),
                })
                .collect();
            report::csv(&rows)?
        }
    };
    write(&a.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Atlas { action: AtlasAction::Emit { field, id, out } } => atlas_emit(field, id.as_deref(), out),
        Command::Classify { action: ClassifyAction::Code { input, out } } => classify_code(input, out),
        Command::Verify(a) => run_verify(a),
        Command::Acceptance(a) => run_acceptance(a),
        Command::Enumerate(a) => run_enumerate(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
    }
}
