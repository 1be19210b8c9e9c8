//! Command-line front end: argument parsing, dispatch and output.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use igusa::arith::laurent::{laurent_at, pole_order, vanishing_count};
use igusa::arith::{fmt_q, frac_pair, ord_p_int, parse_fraction, Q};
use igusa::charts::{candidate_poles_filtered, plane_zeta, zeta_from_charts, CharacterSpec, ChartCell};
use igusa::count::{count, poincare_truncation, verify_zeta_against_counts, CountMode};
use igusa::divisibility::{divisibility_report, smallest_real_pole};
use igusa::families::{zeta_sum_squares, zeta_x2_ayl, zeta_xy_zi};
use igusa::poly::{parse_rational_poly, MultiPoly};
use igusa::resolve::{relations_check, resolution_candidate_poles, resolve_germ, DEFAULT_MAX_STEPS};
use igusa::{Error, PadicContext, ZetaRational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "igusa", version, about = "Igusa's p-adic zeta functions, checked against counts mod p^i")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Naive,
    Hensel,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    SumSquares,
    X2ayl,
    Xyzi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of solutions of f = 0 mod p^i.
    Count {
        #[arg(short = 'f')]
        poly: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(short = 'i')]
        level: u32,
        #[arg(long, value_enum, default_value = "hensel")]
        mode: Mode,
    },
    /// Counts M_0, ..., M_k.
    Poincare {
        #[arg(short = 'f')]
        poly: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Z(t) from a family, a chart-cell file, or a plane curve.
    Zeta {
        #[arg(long, value_enum, conflicts_with_all = ["charts", "poly"])]
        family: Option<Family>,
        #[arg(long, conflicts_with = "poly")]
        charts: Option<String>,
        #[arg(short = 'f')]
        poly: Option<String>,
        #[arg(long = "p")]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
    },
    /// Embedded resolution of a plane germ at the origin.
    Resolve {
        #[arg(short = 'f')]
        poly: String,
        #[arg(long)]
        dot: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Laurent coefficients of Z around a real point.
    Laurent {
        #[arg(long)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        s0: String,
        #[arg(short = 'm')]
        depth: u32,
    },
    /// Candidate poles of Z and their actual orders.
    Poles {
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value_t = 1)]
        chi_order: u32,
    },
    /// Compares Z with counted solutions.
    Verify {
        #[arg(short = 'f')]
        poly: String,
        #[arg(long)]
        zeta: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Divisibility of the counts by powers of p.
    Divisibility {
        #[arg(short = 'f')]
        poly: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(short = 'k')]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
        #[arg(long)]
        zeta: Option<String>,
    },
}

/// Exit code and text to print on stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Unsupported(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::BadDimension
            | Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::ZeroPolynomial
            | Error::Arity { .. }
            | Error::EmptyCells
            | Error::Invalid(_) => Fail::Usage(e.to_string()),
            _ => Fail::Unsupported(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Fail>;

struct Poly {
    f: MultiPoly,
    vars: Vec<String>,
    cleared_ord: u32,
}

fn read_poly(text: &str, p: Option<u64>) -> Res<Poly> {
    let c = parse_rational_poly(text, None)?;
    let vars = c.poly.vars().to_vec();
    if vars.is_empty() {
        return Err(Fail::Usage("the polynomial has no variables".into()));
    }
    let cleared_ord = p.and_then(|p| ord_p_int(&c.scale, p)).unwrap_or(0);
    Ok(Poly { f: c.poly, vars, cleared_ord })
}

fn read_file(path: &str) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {path}: {e}")))
}

fn read_zeta(path: &str) -> Res<ZetaRational> {
    serde_json::from_str(&read_file(path)?).map_err(|e| Fail::Usage(format!("{path}: {e}")))
}

fn fraction(s: &str) -> Res<Q> {
    parse_fraction(s).ok_or_else(|| Fail::Usage(format!("`{s}` is not a fraction num/den")))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn rows(label: &str, xs: &[impl ToString]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        writeln!(s, "{label}_{i} = {}", x.to_string()).unwrap();
    }
    s
}

fn cleared_note(poly: &Poly) -> String {
    if poly.cleared_ord > 0 {
        format!("note: denominators cleared, ord_p of the factor is {}; Z(f) = t^-{} Z(cleared)\n", poly.cleared_ord, poly.cleared_ord)
    } else {
        String::new()
    }
}

fn dispatch(cli: &Cli) -> Res<(i32, String)> {
    let json_out = cli.json;
    match &cli.command {
        Command::Count { poly, p, level, mode } => {
            let g = read_poly(poly, Some(*p))?;
            let ctx = PadicContext::new(*p, g.vars.len())?;
            let mode = match mode {
                Mode::Naive => CountMode::Naive,
                Mode::Hensel => CountMode::Hensel,
            };
            let m = count(&g.f, &ctx, *level, mode)?;
            let out = if json_out {
                pretty(&json!({
                    "p": p, "n": g.vars.len(), "i": level, "variables": g.vars,
                    "count": m.to_string(), "cleared_ord": g.cleared_ord,
                }))
            } else {
                format!("{}M_{level} = {m}\n", cleared_note(&g))
            };
            Ok((EXIT_OK, out))
        }
        Command::Poincare { poly, p, k } => {
            let g = read_poly(poly, Some(*p))?;
            let ctx = PadicContext::new(*p, g.vars.len())?;
            let s = poincare_truncation(&g.f, &ctx, *k)?;
            let out = if json_out {
                let mut v = s.to_json();
                v["variables"] = json!(g.vars);
                v["cleared_ord"] = json!(g.cleared_ord);
                pretty(&v)
            } else {
                format!("{}{}", cleared_note(&g), rows("M", s.counts()))
            };
            Ok((EXIT_OK, out))
        }
        Command::Zeta { family, charts, poly, p, a, l, i } => {
            let (z, extra) = zeta_cmd(*family, charts.as_deref(), poly.as_deref(), *p, *a, *l, *i)?;
            let out = if json_out {
                pretty(&serde_json::to_value(&z).expect("serializable"))
            } else {
                format!("Z(t) = {z}\n{extra}")
            };
            Ok((EXIT_OK, out))
        }
        Command::Resolve { poly, dot, max_steps } => {
            let g = read_poly(poly, None)?;
            let tree = resolve_germ(&g.f, *max_steps)?;
            if let Some(path) = dot {
                fs::write(path, tree.to_dot()).map_err(|e| Fail::Usage(format!("cannot write {path}: {e}")))?;
            }
            let relations = (1..=tree.log.len())
                .map(|r| relations_check(&tree, r))
                .collect::<igusa::Result<Vec<_>>>()?;
            let poles = resolution_candidate_poles(&tree, CharacterSpec::TRIVIAL);
            let out = if json_out {
                pretty(&json!({
                    "tree": serde_json::to_value(&tree).expect("serializable"),
                    "relations": relations.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    "candidate_poles": poles.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                }))
            } else {
                let mut s = String::new();
                for c in &tree.curves {
                    writeln!(s, "E{}  N = {}  nu = {}  parents {:?}", c.id, c.n, c.nu, c.parent_ids).unwrap();
                }
                for c in &tree.strict_components {
                    writeln!(s, "S{}  N = {}  nu = {}  degree {}", c.id, c.n, c.nu, c.degree).unwrap();
                }
                for (x, y) in &tree.adjacency {
                    writeln!(s, "{x} -- {y}").unwrap();
                }
                for r in &relations {
                    writeln!(s, "step {}: relation 1 sum {} (N = {}), relation 2 sum {}, {}",
                        r.step, r.relation1, r.n_r, fmt_q(&r.relation2), if r.ok() { "ok" } else { "FAILED" }).unwrap();
                }
                let reals: Vec<String> = poles.iter().map(|c| fmt_q(&c.real_part)).collect();
                writeln!(s, "candidate real parts: {}", reals.join(", ")).unwrap();
                s
            };
            let code = if relations.iter().all(|r| r.ok()) { EXIT_OK } else { EXIT_MISMATCH };
            Ok((code, out))
        }
        Command::Laurent { zeta, s0, depth } => {
            let z = read_zeta(zeta)?;
            let s0 = fraction(s0)?;
            let b = laurent_at(&z, &s0, *depth)?;
            let out = if json_out {
                pretty(&json!({
                    "s0": frac_pair(&s0),
                    "coeffs": b.iter().enumerate()
                        .map(|(j, r)| json!({"k": j as i64 - *depth as i64, "value": r.to_json()}))
                        .collect::<Vec<_>>(),
                }))
            } else {
                let mut s = String::new();
                for (j, r) in b.iter().enumerate() {
                    writeln!(s, "b_{} = {r}  (~ {:.6})", j as i64 - *depth as i64, r.to_f64()).unwrap();
                }
                s
            };
            Ok((EXIT_OK, out))
        }
        Command::Poles { zeta, chi_order } => {
            let z = read_zeta(zeta)?;
            let chi = CharacterSpec::new(*chi_order)?;
            let mut list = Vec::new();
            for mut c in candidate_poles_filtered(&z.factor_list(), chi) {
                c.expected_order = vanishing_count(&z, &c.real_part);
                let actual = if chi.order() == 1 { Some(pole_order(&z, &c.real_part)?.1) } else { None };
                list.push((c, actual));
            }
            let smallest = smallest_real_pole(&z).ok();
            let out = if json_out {
                pretty(&json!({
                    "chi_order": chi_order,
                    "candidates": list.iter().map(|(c, a)| {
                        let mut v = c.to_json();
                        v["actual_order_at_real_point"] = json!(a);
                        v
                    }).collect::<Vec<_>>(),
                    "smallest": smallest.as_ref().map(|s| json!({
                        "l": frac_pair(&s.l), "possibly_complex_only": s.possibly_complex_only,
                    })),
                }))
            } else {
                let mut s = String::new();
                for (c, a) in &list {
                    let act = a.map_or("-".to_string(), |a| a.to_string());
                    writeln!(s, "{}  N = {}  expected order {}  actual order {act}", fmt_q(&c.real_part), c.n, c.expected_order).unwrap();
                }
                s
            };
            Ok((EXIT_OK, out))
        }
        Command::Verify { poly, zeta, p, k } => {
            let g = read_poly(poly, Some(*p))?;
            let z = read_zeta(zeta)?;
            if z.p() != *p {
                return Err(Fail::Usage(format!("Z was computed for p = {}, not {p}", z.p())));
            }
            let ctx = PadicContext::new(*p, g.vars.len())?;
            let r = match verify_zeta_against_counts(&z, &g.f, &ctx, *k) {
                Err(Error::NotNormalized(v)) => return Ok((EXIT_MISMATCH, format!("Z(1) = {v}, not 1\n"))),
                r => r?,
            };
            let code = if r.ok() { EXIT_OK } else { EXIT_MISMATCH };
            let out = if json_out {
                pretty(&r.to_json())
            } else {
                match r.first_mismatch {
                    None => format!("ok: counts agree up to level {k}\n"),
                    Some(i) => format!("mismatch at level {i}\n{}", rows("observed M", &r.observed)),
                }
            };
            Ok((code, out))
        }
        Command::Divisibility { poly, p, k, l, zeta } => {
            let g = read_poly(poly, Some(*p))?;
            let n = g.vars.len();
            let ctx = PadicContext::new(*p, n)?;
            let z = match zeta {
                Some(path) => Some(read_zeta(path)?),
                None if n == 2 && l.is_none() => Some(plane_zeta(&g.f, &ctx)?),
                None => None,
            };
            let l = match (l, &z) {
                (Some(s), _) => fraction(s)?,
                (None, Some(z)) => smallest_real_pole(z)?.l,
                (None, None) => return Err(Fail::Usage("--l is required when Z is not available".into())),
            };
            let m = poincare_truncation(&g.f, &ctx, *k)?;
            let r = divisibility_report(z.as_ref(), &m, &l)?;
            let code = if r.ok() { EXIT_OK } else { EXIT_MISMATCH };
            let out = if json_out {
                pretty(&r.to_json())
            } else {
                let ac = r.a_constructive.map_or("-".to_string(), |a| a.to_string());
                format!(
                    "l = {}, n = {n}\nempirical a = {}\nconstructive a = {ac}\nchecked up to i = {}\n",
                    fmt_q(&r.l), r.a, r.checked_up_to
                )
            };
            Ok((code, out))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn zeta_cmd(
    family: Option<Family>,
    charts: Option<&str>,
    poly: Option<&str>,
    p: u64,
    a: Option<i64>,
    l: Option<u32>,
    i: Option<u32>,
) -> Res<(ZetaRational, String)> {
    let need = |x: Option<u32>, name: &str| x.ok_or_else(|| Fail::Usage(format!("--{name} is required for this family")));
    match (family, charts, poly) {
        (Some(Family::SumSquares), _, _) => {
            let s = zeta_sum_squares(&PadicContext::new(p, 2)?)?;
            let mut extra = String::new();
            for (s0, b) in &s.laurent {
                for (j, r) in b.iter().enumerate() {
                    writeln!(extra, "at s = {}: b_{} = {r}", fmt_q(s0), j as i64 - (b.len() as i64 - 1)).unwrap();
                }
            }
            Ok((s.z, extra))
        }
        (Some(Family::X2ayl), _, _) => {
            let a = BigInt::from(a.unwrap_or(1));
            let x = zeta_x2_ayl(&PadicContext::new(p, 2)?, &a, need(l, "l")?)?;
            let mut extra = format!("smallest real part {}\n", fmt_q(&x.smallest));
            if let Some(r) = &x.residue {
                writeln!(extra, "residue there {r}  (~ {:.6})", r.to_f64()).unwrap();
            }
            let z = x.z.ok_or_else(|| Fail::Unsupported("Z needs a non-rational center".into()))?;
            Ok((z, extra))
        }
        (Some(Family::Xyzi), _, _) => Ok((zeta_xy_zi(&PadicContext::new(p, 3)?, need(i, "i")?)?, String::new())),
        (None, Some(path), _) => {
            let cells: Vec<ChartCell> =
                serde_json::from_str(&read_file(path)?).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
            let n = cells.first().map_or(1, |c| c.n());
            Ok((zeta_from_charts(&cells, &PadicContext::new(p, n)?)?, String::new()))
        }
        (None, None, Some(text)) => {
            let g = read_poly(text, Some(p))?;
            let z = plane_zeta(&g.f, &PadicContext::new(p, g.vars.len())?)?;
            Ok((z, cleared_note(&g)))
        }
        (None, None, None) => Err(Fail::Usage("give --family, --charts or -f".into())),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Fail::Usage(m)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Fail::Unsupported(m)) => {
            Outcome { code: EXIT_UNSUPPORTED, stdout: String::new(), stderr: format!("unsupported: {m}\n") }
        }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct CliChapter;
