use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use patternlab::oracle::{check_family, observation_suite};
use patternlab::popularity::{
    f12, f_incr, g12_oracle, g12_printed, g_desc, to_csv, PopularitySeries,
};
use patternlab::rec123::coeff_equality_check;
use patternlab::rec132::{fh_table, s3_table, s4_table};
use patternlab::{
    phi, phi_inv, psi, psi_inv, DyckPath, FamilyId, FamilyTable, MultiPoly, Parallelism,
    Permutation,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "patternlab",
    version,
    about = "Pattern distributions over 132- and 123-avoiding permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run every computation on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Allow sizes above the default cap of a family.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Every entry of a family through `--nmax`, one line per size.
    Series(FamilyArgs),
    /// One entry of a family.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        /// Size of the entry to print.
        #[arg(long)]
        n: usize,
    },
    /// Map a permutation to its Dyck path or back.
    Bijection(BijectionArgs),
    /// Total occurrence counts per size.
    Popularity(PopularityArgs),
    /// Compare recursions against enumeration or against each other.
    Check(CheckArgs),
    /// Counts of avoiders with exactly one occurrence of a second pattern.
    Observe {
        #[arg(long, default_value_t = 9)]
        nmax: usize,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// fh, s3, s4, d, p123, p213, p231, p312, p321, incrM, descM
    #[arg(long)]
    family: String,
    #[arg(long)]
    nmax: Option<usize>,
    /// Keep only these variables (comma separated); the rest are set to 1.
    #[arg(long, value_delimiter = ',', conflicts_with = "full")]
    keep: Vec<String>,
    /// Keep the minima variable `s`, which is set to 1 by default.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BijectionArgs {
    /// 132-avoiding permutation to a path.
    #[arg(long)]
    phi: Option<String>,
    /// 123-avoiding permutation to a path.
    #[arg(long)]
    psi: Option<String>,
    /// Path to a 132-avoiding permutation.
    #[arg(long)]
    phi_inv: Option<String>,
    /// Path to a 123-avoiding permutation.
    #[arg(long)]
    psi_inv: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PopKind {
    /// 12 over Av(132), closed form.
    F12,
    /// 12⋯m over Av(132).
    FIncr,
    /// 1m⋯2 over Av(123), seeded by enumeration.
    GDesc,
    /// 12 over Av(123) by enumeration.
    G12,
    /// 12 over Av(123), disputed closed form.
    G12Printed,
}

#[derive(Args)]
struct PopularityArgs {
    #[arg(long, value_enum)]
    kind: PopKind,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
}

#[derive(Args)]
struct CheckArgs {
    /// Compare a family against enumeration.
    #[arg(long, conflicts_with_all = ["coeff", "chain"])]
    family: Option<String>,
    /// Compare coefficient tables of the increasing and descending towers.
    #[arg(long, conflicts_with = "chain")]
    coeff: bool,
    /// Collapse the length-four family down to the two-variable one.
    #[arg(long)]
    chain: bool,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, default_value_t = 4)]
    jmax: usize,
}

/// Exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

/// Library errors caused by user input become usage errors.
fn input<T>(r: patternlab::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        patternlab::Error::InvalidInput(_) | patternlab::Error::Parse(_) => {
            Usage(e.to_string()).into()
        }
        other => other.into(),
    })
}

struct Outcome {
    body: String,
    passed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, passed: true }
    }
}

struct Ctx {
    format: Format,
    mode: Parallelism,
    force: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = Ctx {
        format: cli.format,
        mode: if cli.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
        force: cli.force,
    };
    match run(&cli.command, &ctx).and_then(|o| emit(&cli.out, o)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, o: Outcome) -> anyhow::Result<bool> {
    match out {
        Some(path) => std::fs::write(path, &o.body)?,
        None => std::io::stdout().write_all(o.body.as_bytes())?,
    }
    Ok(o.passed)
}

fn run(cmd: &Command, ctx: &Ctx) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Series(args) => series(args, ctx),
        Command::Table { family, n } => table(family, *n, ctx),
        Command::Bijection(args) => bijection(args, ctx),
        Command::Popularity(args) => popularity(args, ctx),
        Command::Check(args) => check(args, ctx),
        Command::Observe { nmax } => observe(*nmax, ctx),
    }
}

fn parse_family(name: &str) -> anyhow::Result<FamilyId> {
    input(name.parse::<FamilyId>())
}

fn hard_cap() -> anyhow::Result<Option<usize>> {
    match std::env::var("PATTERNLAB_NMAX_HARD") {
        Ok(v) => match v.trim().parse() {
            Ok(n) => Ok(Some(n)),
            Err(_) => usage(format!(
                "PATTERNLAB_NMAX_HARD must be an integer, got `{v}`"
            )),
        },
        Err(_) => Ok(None),
    }
}

fn catalan(n: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for i in 0..n {
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

/// Applies the default cap, `--force`, and the environment hard cap.
fn resolve_n(requested: Option<usize>, cap: usize, what: &str, ctx: &Ctx) -> anyhow::Result<usize> {
    let n = requested.unwrap_or(cap);
    if let Some(hard) = hard_cap()? {
        if n > hard {
            return usage(format!("n = {n} exceeds PATTERNLAB_NMAX_HARD = {hard}"));
        }
    }
    if n > cap {
        if !ctx.force {
            return usage(format!(
                "n = {n} is above the default cap {cap} for {what}; pass --force"
            ));
        }
        eprintln!(
            "warning: n = {n} is above the default cap {cap} for {what}; the class has {} permutations, an upper bound on terms per entry",
            catalan(n)
        );
    }
    Ok(n)
}

fn view(
    table: &FamilyTable,
    keep: &[String],
    full: bool,
) -> anyhow::Result<(Vec<String>, Vec<MultiPoly>)> {
    let has_s = table.vars().iter().any(|v| v == "s");
    if keep.is_empty() && (full || !has_s) {
        return Ok((table.vars().to_vec(), table.entries().to_vec()));
    }
    let default_keep: Vec<String>;
    let keep = if keep.is_empty() {
        default_keep = table.vars().iter().filter(|v| *v != "s").cloned().collect();
        &default_keep
    } else {
        keep
    };
    let idx = keep
        .iter()
        .map(|k| input(table.var_index(k)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let entries = table
        .entries()
        .iter()
        .map(|e| input(e.restrict(&idx)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok((keep.to_vec(), entries))
}

fn build(
    args: &FamilyArgs,
    n_override: Option<usize>,
    ctx: &Ctx,
) -> anyhow::Result<(FamilyId, Vec<String>, Vec<MultiPoly>)> {
    let id = parse_family(&args.family)?;
    let n = resolve_n(
        n_override.or(args.nmax),
        id.default_cap(),
        &id.to_string(),
        ctx,
    )?;
    let table = input(id.build(n, ctx.mode))?;
    let (vars, entries) = view(&table, &args.keep, args.full)?;
    Ok((id, vars, entries))
}

fn poly_line(vars: &[String], p: &MultiPoly) -> String {
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    p.to_text(&refs)
}

fn series(args: &FamilyArgs, ctx: &Ctx) -> anyhow::Result<Outcome> {
    let (id, vars, entries) = build(args, None, ctx)?;
    let body = match ctx.format {
        Format::Text => {
            let mut s = String::new();
            for (n, e) in entries.iter().enumerate() {
                writeln!(s, "t^{n}: {}", poly_line(&vars, e))?;
            }
            s
        }
        Format::Json => {
            let items: Vec<Value> = entries
                .iter()
                .enumerate()
                .map(|(n, e)| json!({"n": n, "text": poly_line(&vars, e), "poly": e.to_json()}))
                .collect();
            json_line(json!({"family": id.to_string(), "vars": vars, "entries": items}))
        }
        Format::Csv => {
            let mut s = String::from("n,coefficient,exponents\n");
            for (n, e) in entries.iter().enumerate() {
                for (m, c) in e.terms() {
                    let exps: Vec<String> = m.exponents().iter().map(|x| x.to_string()).collect();
                    writeln!(s, "{n},{c},{}", exps.join(" "))?;
                }
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn table(args: &FamilyArgs, n: usize, ctx: &Ctx) -> anyhow::Result<Outcome> {
    let (id, vars, entries) = build(args, Some(n), ctx)?;
    let e = &entries[n];
    let body = match ctx.format {
        Format::Json => json_line(
            json!({"family": id.to_string(), "n": n, "vars": vars, "text": poly_line(&vars, e), "poly": e.to_json()}),
        ),
        _ => format!("{}\n", poly_line(&vars, e)),
    };
    Ok(Outcome::ok(body))
}

fn json_line(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn bijection(args: &BijectionArgs, ctx: &Ctx) -> anyhow::Result<Outcome> {
    let perm = |s: &str| input(s.parse::<Permutation>());
    let path = |s: &str| input(s.parse::<DyckPath>());
    let forward = |p: DyckPath, sigma: Permutation| -> String {
        let st = p.stats();
        match ctx.format {
            Format::Json => {
                let peaks: serde_json::Map<String, Value> = st
                    .diag_peaks
                    .iter()
                    .map(|(d, c)| (d.to_string(), json!(c)))
                    .collect();
                json_line(json!({
                    "permutation": sigma.to_string(), "path": p.to_string(), "ret": st.ret,
                    "area": st.area, "coarea": st.coarea, "diagonal_peaks": peaks,
                }))
            }
            _ => format!("{p} ret={} area={} coarea={}\n", st.ret, st.area, st.coarea),
        }
    };
    let backward = |p: DyckPath, sigma: Permutation| -> String {
        match ctx.format {
            Format::Json => {
                json_line(json!({"path": p.to_string(), "permutation": sigma.to_string()}))
            }
            _ => format!("{sigma}\n"),
        }
    };
    let body = if let Some(s) = &args.phi {
        let sigma = perm(s)?;
        forward(input(phi(&sigma))?, sigma)
    } else if let Some(s) = &args.psi {
        let sigma = perm(s)?;
        forward(input(psi(&sigma))?, sigma)
    } else if let Some(s) = &args.phi_inv {
        let p = path(s)?;
        let sigma = phi_inv(&p);
        backward(p, sigma)
    } else if let Some(s) = &args.psi_inv {
        let p = path(s)?;
        let sigma = psi_inv(&p);
        backward(p, sigma)
    } else {
        return usage("one of --phi, --psi, --phi-inv, --psi-inv is required");
    };
    Ok(Outcome::ok(body))
}

fn popularity(args: &PopularityArgs, ctx: &Ctx) -> anyhow::Result<Outcome> {
    let n = args.nmax;
    let s: PopularitySeries = match args.kind {
        PopKind::F12 => f12(n),
        PopKind::FIncr => input(f_incr(n, args.m))?,
        PopKind::G12 => input(g12_oracle(
            resolve_n(Some(n), 12, "enumeration of Av(123)", ctx)?,
            ctx.mode,
        ))?,
        PopKind::G12Printed => g12_printed(n),
        PopKind::GDesc => {
            if args.m < 3 {
                return usage(format!("--m must be at least 3 for g-desc, got {}", args.m));
            }
            let mut s = input(g12_oracle(
                resolve_n(Some(n), 12, "enumeration of Av(123)", ctx)?,
                ctx.mode,
            ))?;
            for m in 3..=args.m {
                s = input(g_desc(n, m, &s))?;
            }
            s
        }
    };
    let coeffs: Vec<String> = s.series.coeffs().iter().map(|c| c.to_string()).collect();
    let body = match ctx.format {
        Format::Csv => to_csv(std::slice::from_ref(&s)),
        Format::Json => json_line(json!({
            "pattern": s.pattern.to_string(), "class": s.class.pattern(),
            "disputed": s.disputed, "coefficients": coeffs,
        })),
        Format::Text => {
            let flag = if s.disputed {
                " (disputed closed form)"
            } else {
                ""
            };
            format!(
                "{} over {}{flag}: {}\n",
                s.pattern,
                s.class,
                coeffs.join(", ")
            )
        }
    };
    Ok(Outcome::ok(body))
}

fn check(args: &CheckArgs, ctx: &Ctx) -> anyhow::Result<Outcome> {
    if let Some(name) = &args.family {
        let id = parse_family(name)?;
        let n = resolve_n(args.nmax, 7, "enumeration checks", ctx)?;
        let report = input(check_family(id, n, ctx.mode))?;
        let body = match ctx.format {
            Format::Json => format!("{}\n", report.to_json()),
            _ => format!("{report}\n"),
        };
        return Ok(Outcome {
            body,
            passed: report.equal,
        });
    }
    if args.coeff {
        let n = resolve_n(args.nmax, 9, "coefficient checks", ctx)?;
        let report = input(coeff_equality_check(n, args.jmax, ctx.mode))?;
        let body = match ctx.format {
            Format::Json => {
                let m: Vec<Value> = report
                    .mismatches
                    .iter()
                    .map(|m| json!({"n": m.n, "i": m.i, "j": m.j, "increasing": m.increasing.to_string(), "descending": m.descending.to_string()}))
                    .collect();
                json_line(
                    json!({"n": n, "jmax": args.jmax, "compared": report.compared, "equal": report.passed(), "mismatches": m}),
                )
            }
            _ => {
                let mut s = format!(
                    "coefficients n<={n} j<={}: {} compared, {} mismatches\n",
                    args.jmax,
                    report.compared,
                    report.mismatches.len()
                );
                for m in &report.mismatches {
                    writeln!(
                        s,
                        "  n={} i={} j={}: {} vs {}",
                        m.n, m.i, m.j, m.increasing, m.descending
                    )?;
                }
                s
            }
        };
        return Ok(Outcome {
            body,
            passed: report.passed(),
        });
    }
    if args.chain {
        let n = resolve_n(args.nmax, FamilyId::S4.default_cap(), "s4", ctx)?;
        let s4 = input(s4_table(n, ctx.mode))?.assemble();
        let s3 = input(s3_table(n, ctx.mode))?;
        let fh = input(fh_table(n, ctx.mode))?;
        let ys: Vec<usize> = (7..21).collect();
        let mut first_bad = None;
        for k in 0..=n {
            let a = input(s4.entry(k).specialize(&ys))?;
            let b = input(s3.entry(k).specialize(&[2, 3, 4, 5, 6]))?;
            if &a != s3.entry(k) || &b != fh.entry(k) {
                first_bad = Some(k);
                break;
            }
        }
        let body = match (ctx.format, first_bad) {
            (Format::Json, b) => {
                json_line(json!({"n": n, "equal": b.is_none(), "first_mismatch": b}))
            }
            (_, None) => format!("refinement chain n<={n}: all entries collapse\n"),
            (_, Some(k)) => format!("refinement chain n<={n}: mismatch at n={k}\n"),
        };
        return Ok(Outcome {
            body,
            passed: first_bad.is_none(),
        });
    }
    usage("check needs one of --family, --coeff, --chain")
}

fn observe(nmax: usize, ctx: &Ctx) -> anyhow::Result<Outcome> {
    let n = resolve_n(Some(nmax), 10, "observations", ctx)?;
    let report = input(observation_suite(n, ctx.mode))?;
    let body = match ctx.format {
        Format::Json => json_line(serde_json::to_value(&report)?),
        Format::Csv => {
            let mut s = String::from("n,one_231_in_123,one_123_in_231,linear,one_3412_in_132,one_2341_in_132,fib_minus_one\n");
            for r in &report.rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.n,
                    r.one_231_in_123,
                    r.one_123_in_231,
                    r.linear,
                    r.one_3412_in_132,
                    r.one_2341_in_132,
                    r.fib_minus_one
                )?;
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &report.rows {
                writeln!(
                    s,
                    "n={}: 231 once in Av(123) {}, 123 once in Av(231) {}, 2n-5 = {} [{}]; 3412 once in Av(132) {}, 2341 once in Av(132) {}, Fib(2n-5)-1 = {} [{}]",
                    r.n,
                    r.one_231_in_123,
                    r.one_123_in_231,
                    r.linear,
                    if r.linear_holds() { "ok" } else { "FAIL" },
                    r.one_3412_in_132,
                    r.one_2341_in_132,
                    r.fib_minus_one,
                    if r.fib_holds() { "ok" } else { "FAIL" },
                )?;
            }
            s
        }
    };
    Ok(Outcome {
        body,
        passed: report.passed(),
    })
}
