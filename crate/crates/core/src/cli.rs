//! Command-line front end.
//!
//! Exit status: 0 on success, 2 when flags are missing or malformed, 1 when
//! the computation itself fails (non-invertible key, non-closed Fibonacci
//! set, unsupported level, ...).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cayley::{AlgebraCtx, BasisProductTable, Element};
use crate::cipher::{self, Alphabet, CipherError, CipherKey};
use crate::fibring::{self, FibCache, FibQuatSet};
use crate::modp::Prime;
use crate::potency::{self, PotencyReport, DEFAULT_ENUMERATION_LIMIT};

#[derive(Debug, Parser)]
#[command(
    name = "cayley-zp",
    version,
    about = "Cayley-Dickson algebras over Z_p",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    /// Odd prime modulus
    #[arg(long, value_parser = parse_prime)]
    p: Prime,
    /// Number of doublings (2 = quaternions, 3 = octonions, 4 = sedenions)
    #[arg(long)]
    t: usize,
}

impl AlgebraArgs {
    fn ctx(&self) -> Result<AlgebraCtx, CliError> {
        AlgebraCtx::standard(self.p, self.t).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an element (zero, nilpotent, k-potent)
    Classify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Comma-separated coefficients in basis order
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
        /// Power-iteration bound for the cross-check [default: p^2 + 1]
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Census of every element of A_t by class
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Refuse algebras with more elements than this
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Multiplicative order of a residue
    Order {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Write a residue as a sum of two squares
    TwoSquares {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Pisano period of the Fibonacci sequence mod p
    Pisano {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
    },
    /// Fibonacci quaternions mod p and, when closed, their ring tables
    FibRing {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        json: bool,
    },
    /// Generate an invertible key from a seed
    Keygen {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        seed: u64,
    },
    /// Encrypt text over the 29-symbol alphabet (space is written '*')
    Encrypt {
        /// Key as "p,t:c0,c1,..."
        #[arg(long)]
        key: String,
        #[arg(long, allow_hyphen_values = true)]
        text: String,
    },
    /// Decrypt text produced by `encrypt`
    Decrypt {
        #[arg(long)]
        key: String,
        #[arg(long, allow_hyphen_values = true)]
        text: String,
    },
    /// Basis product table f_i f_j
    Tables {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let v: u64 = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    Prime::new(v).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.status()
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Classify {
            algebra,
            elem,
            bound,
            json: as_json,
        } => {
            let ctx = algebra.ctx()?;
            let x = ctx
                .parse_element(&elem)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            classify(&x, bound, as_json)
        }
        Command::Enumerate {
            algebra,
            limit,
            json: as_json,
        } => {
            let ctx = algebra.ctx()?;
            let census = potency::enumerate_classify(&ctx, limit).map_err(domain)?;
            if as_json {
                return Ok(json(&census));
            }
            let mut s = String::new();
            let _ = writeln!(s, "algebra: A_{}(Z_{})", census.t, census.p);
            let _ = writeln!(s, "total: {}", census.total);
            let _ = writeln!(s, "zero: {}", census.zero);
            let _ = writeln!(s, "nilpotent: {}", census.nilpotent);
            for (k, n) in &census.k_potent {
                let _ = writeln!(s, "{k}-potent: {n}");
            }
            let _ = writeln!(s, "unclassified: {}", census.unclassified);
            Ok(s)
        }
        Command::Order { p, a } => {
            let order = p.residue(a).order().map_err(domain)?;
            Ok(format!("{order}\n"))
        }
        Command::TwoSquares { p, a } => {
            let a = p.residue(a);
            let (s, t) = a.sum_two_squares();
            Ok(format!("{a} = {s}^2 + {t}^2 (mod {p})\n"))
        }
        Command::Pisano { p } => Ok(format!("{}\n", fibring::pisano(p))),
        Command::FibRing { p, json: as_json } => fib_ring(p, as_json),
        Command::Keygen { algebra, seed } => {
            let ctx = algebra.ctx()?;
            let key = cipher::keygen(&ctx, seed).map_err(domain)?;
            Ok(format!("{key}\n"))
        }
        Command::Encrypt { key, text } => {
            let key = parse_key(&key)?;
            let out = cipher::encrypt(&text, &key, &Alphabet::latin29()).map_err(cipher_error)?;
            Ok(format!("{out}\n"))
        }
        Command::Decrypt { key, text } => {
            let key = parse_key(&key)?;
            let out = cipher::decrypt(&text, &key, &Alphabet::latin29()).map_err(cipher_error)?;
            Ok(format!("{out}\n"))
        }
        Command::Tables { algebra } => {
            Ok(render_basis_table(&BasisProductTable::new(&algebra.ctx()?)))
        }
    }
}

fn cipher_error(e: CipherError) -> CliError {
    match e {
        CipherError::UnknownSymbol { .. } | CipherError::BadLength { .. } => {
            CliError::Usage(e.to_string())
        }
        _ => domain(e),
    }
}

fn parse_key(s: &str) -> Result<CipherKey, CliError> {
    s.parse::<CipherKey>().map_err(|e| match e {
        CipherError::NotInvertible | CipherError::UnsupportedLevel(_) => domain(e),
        _ => CliError::Usage(format!("--key: {e}")),
    })
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    element: String,
    display: String,
    #[serde(flatten)]
    report: &'a PotencyReport,
    oracle_k: Option<u64>,
    oracle_agrees: bool,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn classify(x: &Element, bound: Option<u64>, as_json: bool) -> Result<String, CliError> {
    let bound = bound.unwrap_or_else(|| potency::default_bound(x.prime()));
    let report = potency::classify_structured(x);
    let oracle = potency::classify_iterative(x, bound);
    let out = ClassifyOutput {
        element: x.to_csv(),
        display: x.to_string(),
        report: &report,
        oracle_k: oracle.k,
        oracle_agrees: oracle.class == report.class && oracle.k == report.k,
    };
    if as_json {
        return Ok(json(&out));
    }
    let w = &report.witnesses;
    let mut s = String::new();
    let _ = writeln!(s, "element: {} ({})", out.display, out.element);
    let _ = writeln!(s, "class: {:?}", report.class);
    let _ = writeln!(s, "k: {}", opt(report.k));
    let _ = writeln!(s, "s: {}", opt(report.s));
    let _ = writeln!(
        s,
        "mk_type: {}",
        opt(report.mk_type.map(|(m, k)| format!("({m},{k})")))
    );
    let _ = writeln!(s, "route: {}", report.route);
    let _ = writeln!(
        s,
        "witnesses: m={} M={} theta={} tau={} upsilon={}",
        opt(w.m),
        opt(w.big_m),
        opt(w.theta),
        opt(w.tau),
        opt(w.upsilon)
    );
    let _ = writeln!(s, "trace: {}", report.trace);
    let _ = writeln!(s, "norm: {}", report.norm);
    let _ = writeln!(
        s,
        "oracle: k={} ({})",
        opt(out.oracle_k),
        if out.oracle_agrees {
            "agrees"
        } else {
            "DISAGREES"
        }
    );
    Ok(s)
}

#[derive(Serialize)]
struct FibQuatEntry {
    n: usize,
    element: String,
    coeffs: Vec<u32>,
    norm: u32,
    norm_identity: bool,
    class: potency::PotencyClass,
    k: Option<u64>,
}

#[derive(Serialize)]
struct FibRingOutput {
    p: u32,
    period: usize,
    fibonacci: Vec<u32>,
    quaternions: Vec<FibQuatEntry>,
    closed: bool,
    closure_failure: Option<String>,
    tables: Option<fibring::RingTables>,
    report: Option<fibring::RingReport>,
}

fn fib_ring(p: Prime, as_json: bool) -> Result<String, CliError> {
    let fib = FibCache::new(p);
    let set = FibQuatSet::new(p);
    let quaternions = (0..fib.period())
        .map(|n| {
            let f = set.get(n);
            let r = potency::classify_structured(f);
            FibQuatEntry {
                n,
                element: f.to_string(),
                coeffs: f.coeffs().to_vec(),
                norm: f.norm().value(),
                norm_identity: fibring::norm_identity_check(n, p),
                class: r.class,
                k: r.k,
            }
        })
        .collect();
    let built = fibring::build_tables(p);
    let closure_failure = built.as_ref().err().map(|e| e.to_string());
    let tables = built.ok();
    let report = tables.as_ref().map(fibring::ring_verify);
    let out = FibRingOutput {
        p: p.get(),
        period: fib.period(),
        fibonacci: fib.values()[..fib.period()].to_vec(),
        quaternions,
        closed: tables.is_some(),
        closure_failure,
        tables,
        report,
    };

    let text = if as_json {
        json(&out)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "p: {}", out.p);
        let _ = writeln!(s, "pisano period: {}", out.period);
        let fibs: Vec<String> = out.fibonacci.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "fibonacci: {}", fibs.join(","));
        for q in &out.quaternions {
            let _ = writeln!(
                s,
                "F{:<3} = {:<14} norm {} (3 f_2n+3: {})  {:?} k={}",
                q.n,
                q.element,
                q.norm,
                if q.norm_identity { "ok" } else { "mismatch" },
                q.class,
                opt(q.k)
            );
        }
        match (&out.tables, &out.report) {
            (Some(t), Some(r)) => {
                let _ = writeln!(s, "closed: yes");
                s.push('\n');
                s.push_str(&t.render('+'));
                s.push('\n');
                s.push_str(&t.render('*'));
                s.push('\n');
                let _ = writeln!(s, "order: {}", r.order);
                let _ = writeln!(s, "additive exponent: {}", r.additive_exponent);
                let _ = writeln!(s, "additive group: {}", opt(r.additive_group.as_ref()));
                for c in &r.checks {
                    let _ = writeln!(s, "{c}");
                }
                let list = |v: &[String]| {
                    if v.is_empty() {
                        "-".to_string()
                    } else {
                        v.join(",")
                    }
                };
                let _ = writeln!(s, "left identities: {}", list(&r.left_identities));
                let _ = writeln!(s, "right identities: {}", list(&r.right_identities));
            }
            _ => {
                let _ = writeln!(s, "closed: no");
                let _ = writeln!(s, "{}", opt(out.closure_failure.as_ref()));
            }
        }
        s
    };
    if out.closed {
        Ok(text)
    } else {
        Err(CliError::Domain(format!(
            "{}\n{}",
            text.trim_end(),
            out.closure_failure.unwrap_or_default()
        )))
    }
}

fn unit_label(ctx: &AlgebraCtx, i: usize) -> String {
    match (ctx.level(), i) {
        (_, 0) => "1".into(),
        (2, _) => ["", "i", "j", "k"][i].into(),
        _ => format!("f{i}"),
    }
}

fn render_basis_table(table: &BasisProductTable) -> String {
    let ctx = table.ctx();
    let p = ctx.prime().get();
    let n = ctx.dim();
    let cell = |e: crate::cayley::BasisProduct| {
        let unit = unit_label(ctx, e.index);
        match e.scalar {
            1 => format!("+{unit}"),
            s if s == p - 1 => format!("-{unit}"),
            s => format!("{s}{unit}"),
        }
    };
    let width = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| cell(table.entry(i, j)).len())
        .chain((0..n).map(|i| unit_label(ctx, i).len()))
        .max()
        .unwrap_or(1)
        + 1;
    let mut s = format!("{:>width$} |", "");
    for j in 0..n {
        let _ = write!(s, "{:>width$}", unit_label(ctx, j));
    }
    s.push('\n');
    s.push_str(&"-".repeat(width + 2 + width * n));
    s.push('\n');
    for (i, row) in table.rows().enumerate() {
        let _ = write!(s, "{:>width$} |", unit_label(ctx, i));
        for &e in row {
            let _ = write!(s, "{:>width$}", cell(e));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cayley-zp").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["pisano", "--p", "3"]).0, 0);
        assert_eq!(run_args(&["pisano"]).0, 2);
        assert_eq!(run_args(&["pisano", "--p", "9"]).0, 2);
        assert_eq!(run_args(&["bogus"]).0, 2);
        assert_eq!(run_args(&["order", "--p", "7", "--a", "0"]).0, 1);
        assert_eq!(
            run_args(&["classify", "--p", "7", "--t", "2", "--elem", "1,2"]).0,
            2
        );
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn negative_inputs_are_values() {
        let (code, out, _) = run_args(&["order", "--p", "7", "--a", "-3"]);
        assert_eq!((code, out.as_str()), (0, "3\n"));
    }

    #[test]
    fn quaternion_table_render() {
        let (code, out, _) = run_args(&["tables", "--p", "7", "--t", "2"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[0], "    |  1  i  j  k");
        assert_eq!(rows[3], "  i | +i -1 +k -j");
    }
}
