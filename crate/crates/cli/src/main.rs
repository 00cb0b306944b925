//! `vcfamily` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 input/parse, 3 precondition,
//! 4 node budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vcfamily::cert::{extended_matrix, find_witnesses, triangular_certificate};
use vcfamily::construct::{ak_candidate, full_family, hamming_ball, star, star_plus_block};
use vcfamily::io::{parse_any, serialize_system, SystemJson};
use vcfamily::kk::{cascade_bound, kk_lower_bound, KKBound};
use vcfamily::search::{max_family_search, SearchMode, SearchOptions, DEFAULT_BUDGET};
use vcfamily::structure::{impossibility_audit, verify_structure, AuditReport};
use vcfamily::suite::{shadow_suite, singularity_suite};
use vcfamily::{binomial, Error, SetSystem, Subset, VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "vcfamily",
    version,
    about = "VC-dimension, shadows and extremal uniform families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized suites and shuffled search orders.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (search and suites only).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Node budget for search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Star,
    Ak,
    StarPlusBlock,
    Full,
    Hamming,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
    Local,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteKind {
    Shadow,
    Singularity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// VC-dimension, size and uniformity of a family file.
    Vcdim { file: PathBuf },
    /// Triangular certificate for |F| <= |shadow| <= C(n,d).
    Certify {
        file: PathBuf,
        #[arg(short)]
        d: usize,
    },
    /// Kruskal–Katona bounds on the d-shadow of m sets of size d+1.
    Kk { m: u64, d: u32 },
    /// Largest (d+1)-uniform family of VC-dimension at most d.
    Search {
        n: usize,
        d: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Shuffle the candidate order with --seed.
        #[arg(long)]
        shuffle: bool,
        /// Include wall time in JSON output.
        #[arg(long)]
        timing: bool,
    },
    /// Counting chain against a family of size C(n,d) for n >= 2d+2.
    Audit {
        #[arg(required_unless_present = "sweep")]
        n: Option<usize>,
        #[arg(required_unless_present = "sweep")]
        d: Option<usize>,
        /// Every 2 <= d <= DMAX, 2d+2 <= n <= NMAX.
        #[arg(long, num_args = 2, value_names = ["DMAX", "NMAX"], conflicts_with_all = ["n", "d"])]
        sweep: Option<Vec<usize>>,
    },
    /// Write a closed-form family.
    Construct {
        #[arg(value_enum)]
        name: Family,
        n: usize,
        d: usize,
    },
    /// Extended matrix for a pair (Y, Z); Y and Z are lists like `2,3,4` or `{}`.
    Dmatrix {
        file: PathBuf,
        #[arg(short)]
        d: usize,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "{}")]
        z: String,
    },
    /// Structural properties of a family with its first-found witnesses.
    Structure { file: PathBuf },
    /// Seeded random certificate or singularity suite.
    Suite {
        #[arg(value_enum)]
        kind: SuiteKind,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

enum Failure {
    Usage(String),
    Input(String),
    Precondition(String),
    /// Output was produced but the budget ran out.
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Input(_) => 2,
            Self::Precondition(_) => 3,
            Self::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Usage(m) | Self::Input(m) | Self::Precondition(m) | Self::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Precondition(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn load(path: &Path) -> Result<SetSystem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_any(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_set(s: &str) -> Result<Subset, Failure> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let elements = inner
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad element `{t}` in `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Subset::from_elements(elements).map_err(|e| Failure::Usage(e.to_string()))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    version: &'a str,
    #[serde(flatten)]
    inner: T,
}

fn versioned<T: Serialize>(inner: T) -> String {
    json(&Versioned {
        version: VERSION,
        inner,
    })
}

fn no_csv(cmd: &str) -> Failure {
    Failure::Usage(format!("{cmd} has no csv output"))
}

fn vcdim(file: &Path, format: Format) -> Outcome {
    let f = load(file)?;
    let v = f.vc_dimension();
    let k = f.uniformity();
    Ok(match format {
        Format::Json => versioned(serde_json::json!({ "vcdim": v, "size": f.len(), "n": f.n(), "uniformity": k })),
        Format::Csv => format!(
            "vcdim,size,uniformity\n{v},{},{}\n",
            f.len(),
            k.map_or(String::new(), |k| k.to_string())
        ),
        Format::Text => {
            let u = k.map_or("none".to_string(), |k| k.to_string());
            format!("vcdim={v} size={} uniformity={u}\n", f.len())
        }
    })
}

fn certify(file: &Path, d: usize, format: Format) -> Outcome {
    let f = load(file)?;
    let c = triangular_certificate(&f, d)?;
    let summary = format!(
        "|F|={} ≤ |shadow|={} ≤ C(n,d)={}",
        c.family_size(),
        c.shadow_size,
        c.frankl_pach_bound()
    );
    let out = match format {
        Format::Json => json(&c.to_json()),
        Format::Text => format!(
            "{summary}\nrows={} rank={} triangular={} degrees_ok={}\n",
            c.row_count(),
            c.rank,
            c.is_triangular(),
            c.degrees_ok()
        ),
        Format::Csv => return Err(no_csv("certify")),
    };
    if c.passes() {
        Ok(out)
    } else {
        Err(Failure::Precondition(format!("certificate failed: {summary}")))
    }
}

#[derive(Serialize)]
struct KkOut {
    #[serde(flatten)]
    bound: KKBound,
    cascade: u128,
}

fn kk(m: u64, d: u32, format: Format) -> Outcome {
    if m == 0 || d == 0 {
        return Err(Failure::Usage("kk needs m >= 1 and d >= 1".into()));
    }
    let b = kk_lower_bound(m, d);
    let cascade = cascade_bound(m, d + 1);
    Ok(match format {
        Format::Json => versioned(KkOut { bound: b, cascade }),
        Format::Csv => format!("m,d,alpha,bound,cascade\n{m},{d},{},{},{cascade}\n", b.alpha, b.bound),
        Format::Text => format!("alpha={} bound={} cascade={cascade}\n", b.alpha, b.bound),
    })
}

fn search(cli: &Cli, n: usize, d: usize, mode: Mode, shuffle: bool, timing: bool) -> Outcome {
    let opts = SearchOptions {
        mode: match mode {
            Mode::Exact => SearchMode::Exact,
            Mode::Greedy => SearchMode::Greedy,
            Mode::Local => SearchMode::Local,
        },
        budget: cli.budget,
        threads: cli.threads,
        order_seed: shuffle.then_some(cli.seed),
    };
    let r = max_family_search(n, d, &opts)?;
    let out = match cli.format {
        Format::Json => json(&r.to_json(timing)),
        Format::Csv => format!(
            "n,d,mode,best_size,optimality,nodes,budget_exhausted\n{n},{d},{},{},{},{},{}\n",
            serde_json::to_value(r.mode).expect("enum").as_str().unwrap_or_default(),
            r.best_size(),
            serde_json::to_value(r.optimality)
                .expect("enum")
                .as_str()
                .unwrap_or_default(),
            r.nodes,
            r.budget_exhausted
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# best_size={} optimality={} nodes={} C(n,d)={}",
                r.best_size(),
                serde_json::to_value(r.optimality)
                    .expect("enum")
                    .as_str()
                    .unwrap_or_default(),
                r.nodes,
                binomial(n as u64, d as u64)
            );
            s.push_str(&serialize_system(&r.family));
            s
        }
    };
    if r.budget_exhausted && opts.mode == SearchMode::Exact {
        emit(cli, &out)?;
        return Err(Failure::Budget(format!(
            "node budget of {} exhausted; result is a lower bound only",
            cli.budget
        )));
    }
    Ok(out)
}

const AUDIT_HEADER: &str =
    "n,d,family_size,complement_size,forced_shadow,alpha,kk_shadow_bound,required_complement,final_gap,contradiction";

fn audit_row(a: &AuditReport) -> String {
    let forced = if *a.forced_shadow.denom() == 1 {
        a.forced_shadow.numer().to_string()
    } else {
        format!("{}/{}", a.forced_shadow.numer(), a.forced_shadow.denom())
    };
    format!(
        "{},{},{},{},{forced},{},{},{},{},{}",
        a.n,
        a.d,
        a.family_size,
        a.complement_size,
        a.alpha,
        a.kk_shadow_bound,
        a.required_complement,
        a.final_gap,
        a.contradiction
    )
}

fn audit_text(a: &AuditReport) -> String {
    format!(
        "n={} d={} |Y|={} required>={} gap={} contradiction={}",
        a.n,
        a.d,
        a.complement_size,
        a.required_complement,
        a.final_gap,
        if a.contradiction { "confirmed" } else { "NOT-CONFIRMED" }
    )
}

fn audit(n: Option<usize>, d: Option<usize>, sweep: Option<Vec<usize>>, format: Format) -> Outcome {
    let reports = match sweep.as_deref() {
        Some(&[dmax, nmax]) => {
            let mut v = Vec::new();
            for d in 2..=dmax {
                for n in 2 * d + 2..=nmax {
                    v.push(impossibility_audit(n, d)?);
                }
            }
            v
        }
        Some(_) => return Err(Failure::Usage("--sweep takes DMAX NMAX".into())),
        None => {
            let (Some(n), Some(d)) = (n, d) else {
                return Err(Failure::Usage("audit needs n and d or --sweep".into()));
            };
            vec![impossibility_audit(n, d)?]
        }
    };
    let out = match format {
        Format::Json if sweep.is_some() => versioned(serde_json::json!({ "audits": reports })),
        Format::Json => versioned(&reports[0]),
        Format::Csv => {
            let mut s = format!("{AUDIT_HEADER}\n");
            for a in &reports {
                let _ = writeln!(s, "{}", audit_row(a));
            }
            s
        }
        Format::Text => reports.iter().map(|a| audit_text(a) + "\n").collect(),
    };
    if reports.iter().all(|a| a.contradiction) {
        Ok(out)
    } else {
        Err(Failure::Precondition(format!("contradiction not confirmed\n{out}")))
    }
}

fn construct(name: Family, n: usize, d: usize, format: Format) -> Outcome {
    let f = match name {
        Family::Star => star(n, d),
        Family::Ak => ak_candidate(n, d),
        Family::StarPlusBlock => star_plus_block(n, d),
        Family::Full => full_family(n, d),
        Family::Hamming => hamming_ball(n, d),
    }?;
    Ok(match format {
        Format::Json => versioned(SystemJson::from(&f)),
        Format::Text => serialize_system(&f),
        Format::Csv => return Err(no_csv("construct")),
    })
}

fn dmatrix(file: &Path, d: usize, y: &str, z: &str, format: Format) -> Outcome {
    let f = load(file)?;
    let (y, z) = (parse_set(y)?, parse_set(z)?);
    if y.len() != d + 1 {
        return Err(Failure::Precondition(format!(
            "Y = {y} must have d + 1 = {} elements",
            d + 1
        )));
    }
    if !z.is_proper_subset_of(y) {
        return Err(Failure::Precondition(format!(
            "Z = {z} must be a proper subset of Y = {y}"
        )));
    }
    let w = find_witnesses(&f, d)?;
    let e = extended_matrix(&f, &w, y, z)?;
    let s = e.summary();
    let out = match format {
        Format::Json => json(&s),
        Format::Text => format!(
            "order={} det(D)={} m0={} T.R={}\nsingular ⟺ m0=1: {}\n",
            s.order,
            s.determinant,
            s.m0,
            s.t_dot_r,
            if s.consistent { "consistent" } else { "INCONSISTENT" }
        ),
        Format::Csv => return Err(no_csv("dmatrix")),
    };
    if s.consistent {
        Ok(out)
    } else {
        Err(Failure::Precondition(format!("singularity law violated\n{out}")))
    }
}

fn structure(file: &Path, format: Format) -> Outcome {
    let f = load(file)?;
    let k = f
        .uniformity()
        .ok_or_else(|| Failure::Precondition("family must be nonempty and uniform".into()))?;
    if k == 0 {
        return Err(Failure::Precondition("members must be nonempty".into()));
    }
    let w = find_witnesses(&f, k - 1)?;
    let r = verify_structure(&f, &w)?;
    Ok(match format {
        Format::Json => versioned(serde_json::json!({ "witnesses": w, "report": r })),
        Format::Text => format!(
            "property1={} ({} violations) property2={} |Y|={} |shadow Y|={} double_count={}\n",
            r.property1,
            r.property1_violation_count,
            r.property2,
            r.complement_size,
            r.complement_shadow_size,
            r.double_count_holds()
        ),
        Format::Csv => return Err(no_csv("structure")),
    })
}

fn suite(cli: &Cli, kind: SuiteKind, count: usize, max_n: usize) -> Outcome {
    match kind {
        SuiteKind::Shadow => {
            let r = shadow_suite(cli.seed, count, max_n, cli.threads)?;
            let out = match cli.format {
                Format::Json => json(&r),
                Format::Csv => {
                    let mut s = "index,n,d,family_size,shadow_size,frankl_pach,rank,row_count,pass\n".to_string();
                    for i in &r.instances {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{},{},{}",
                            i.index, i.n, i.d, i.family_size, i.shadow_size, i.frankl_pach, i.rank, i.row_count, i.pass
                        );
                    }
                    s
                }
                Format::Text => format!("instances={} failures={}\n", r.instances.len(), r.failures),
            };
            if r.failures == 0 {
                Ok(out)
            } else {
                Err(Failure::Precondition(format!(
                    "{} certificate failures\n{out}",
                    r.failures
                )))
            }
        }
        SuiteKind::Singularity => {
            let r = singularity_suite(cli.seed, count, max_n, cli.threads)?;
            let out = match cli.format {
                Format::Json => json(&r),
                Format::Csv => {
                    let mut s = "index,n,d,family_size,order,determinant,m0,t_dot_r,singular\n".to_string();
                    for i in &r.instances {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{},{},{}",
                            i.index, i.n, i.d, i.family_size, i.order, i.determinant, i.m0, i.t_dot_r, i.singular
                        );
                    }
                    s
                }
                Format::Text => format!(
                    "instances={} exceptions={} m0_one={}\n",
                    r.instances.len(),
                    r.exceptions,
                    r.m0_one
                ),
            };
            if r.exceptions == 0 {
                Ok(out)
            } else {
                Err(Failure::Precondition(format!("{} exceptions\n{out}", r.exceptions)))
            }
        }
    }
}

fn emit(cli: &Cli, out: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = match &cli.command {
        Command::Vcdim { file } => vcdim(file, cli.format),
        Command::Certify { file, d } => certify(file, *d, cli.format),
        Command::Kk { m, d } => kk(*m, *d, cli.format),
        Command::Search {
            n,
            d,
            mode,
            shuffle,
            timing,
        } => search(cli, *n, *d, *mode, *shuffle, *timing),
        Command::Audit { n, d, sweep } => audit(*n, *d, sweep.clone(), cli.format),
        Command::Construct { name, n, d } => construct(*name, *n, *d, cli.format),
        Command::Dmatrix { file, d, y, z } => dmatrix(file, *d, y, z, cli.format),
        Command::Structure { file } => structure(file, cli.format),
        Command::Suite { kind, count, max_n } => suite(cli, *kind, *count, *max_n),
    }?;
    emit(cli, &out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
