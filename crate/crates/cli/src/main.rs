//! Command-line surface for the cohomology library: inspect basic data,
//! print Betti numbers and presentations, evaluate ring expressions, run
//! the verification suite, and export rings as JSON.

mod export;
mod expr;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use liecohom::basic_data::{basic_data, weyl_coordinates, Coefficients, GroupId, DEFAULT_MAX_RANK};
use liecohom::graded_algebra::Element;
use liecohom::integral::{integral_cohomology, IntegralCohomology, IntegralElement};
use liecohom::poincare::{poincare_series, Series};
use liecohom::rings::{cohomology, CohomologyRing};
use liecohom::torsion::TorsionContext;
use liecohom::verify::{all_pass, verify_all, verify_group};
use liecohom::{Error, Result};

use expr::Expr;

#[derive(Parser)]
#[command(
    name = "liecohom",
    about = "Exact cohomology rings of the compact 1-connected simple Lie groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the basic data of a group.
    Info { group: String },
    /// Print Betti numbers (graded dimensions) for one coefficient system.
    Betti {
        group: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Print the ring presentation.
    Present {
        group: String,
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Evaluate a ring expression and print its normal form.
    Mul {
        group: String,
        #[arg(long)]
        coeff: String,
        expr: String,
    },
    /// Run the verification suite for one group, or for every supported
    /// group with `--all`.
    Verify {
        group: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        max_rank: Option<u32>,
    },
    /// Export a ring as JSON (basis and generator products included).
    Export {
        group: String,
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = true)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) | Error::UnsupportedGroup(_) => 2,
                Error::UnknownSquare { .. } => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Info { group } => {
            let g = GroupId::from_str(&group)?;
            print_info(g);
            Ok(ExitCode::SUCCESS)
        }
        Command::Betti {
            group,
            coeff,
            max_degree,
        } => {
            let g = GroupId::from_str(&group)?;
            let f = Coefficients::from_str(&coeff)?;
            print_betti(g, f, max_degree)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Present {
            group,
            coeff,
            format,
        } => {
            let g = GroupId::from_str(&group)?;
            let f = Coefficients::from_str(&coeff)?;
            match format.as_str() {
                "text" => print_presentation_text(g, f)?,
                "json" => {
                    let doc = presentation_json(g, f)?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("valid JSON")
                    );
                }
                other => return Err(Error::Parse(format!("unknown format `{other}`"))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mul { group, coeff, expr } => {
            let g = GroupId::from_str(&group)?;
            let f = Coefficients::from_str(&coeff)?;
            let ast = expr::parse(&expr)?;
            match f {
                Coefficients::Integers => {
                    let ic = integral_cohomology(g)?;
                    let value = eval_integral(&ast, &ic)?;
                    println!("{}", ic.display(&value)?);
                }
                _ => {
                    let ring = cohomology(g, f)?;
                    let mut ctx = None;
                    let value = eval_field(&ast, &ring, &mut ctx)?;
                    println!("{value}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            group,
            all,
            max_rank,
        } => {
            let max_rank = max_rank
                .or_else(|| {
                    std::env::var("LIECOHOM_MAX_RANK")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(DEFAULT_MAX_RANK);
            let checks = match (group, all) {
                (Some(gs), false) => verify_group(GroupId::from_str(&gs)?),
                (None, _) | (_, true) => verify_all(max_rank),
            };
            let mut failed = 0;
            for c in &checks {
                if c.pass {
                    println!("ok   {} - {}", c.name, c.detail);
                } else {
                    failed += 1;
                    println!("FAIL {} - {}", c.name, c.detail);
                }
            }
            println!("{} checks, {} failed", checks.len(), failed);
            if all_pass(&checks) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Export {
            group,
            coeff,
            json: _,
        } => {
            let g = GroupId::from_str(&group)?;
            let f = Coefficients::from_str(&coeff)?;
            let doc = match f {
                Coefficients::Integers => {
                    let ic = integral_cohomology(g)?;
                    export::integral_json(&ic, true)?
                }
                _ => {
                    let ring = cohomology(g, f)?;
                    export::ring_json(&ring, true)?
                }
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid JSON")
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_info(g: GroupId) {
    let bd = basic_data(g);
    println!("{g}");
    println!("rank n = {}, dim = {}", bd.n, bd.dim_g);
    println!("(k, m) = ({}, {})", bd.k, bd.m);
    println!("deg e_i = {:?}", bd.deg_e);
    if bd.m > 0 {
        println!("deg y_j = {:?}", bd.deg_y);
        println!("p_j     = {:?}", bd.p_list);
        println!("k_j     = {:?}", bd.k_list);
    }
    let coords = weyl_coordinates(g);
    if !coords.is_empty() {
        println!("special Schubert classes:");
        for (j, c) in coords.iter().enumerate() {
            println!("  y_{} = {c}", j + 1);
        }
    }
}

fn print_betti(g: GroupId, f: Coefficients, max_degree: Option<u32>) -> Result<()> {
    let clip = |s: &liecohom::poincare::PoincareSeries| -> String {
        let mut parts = Vec::new();
        for (d, &c) in s.coeffs.iter().enumerate() {
            if c > 0 && max_degree.map(|m| d as u32 <= m).unwrap_or(true) {
                parts.push(format!("{d}:{c}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    };
    match poincare_series(g, f)? {
        Series::Field(s) => println!("{}", clip(&s)),
        Series::Integral { free, torsion } => {
            println!("free: {}", clip(&free));
            for (p, s) in torsion {
                println!("{p}-torsion: {}", clip(&s));
            }
        }
    }
    Ok(())
}

fn print_presentation_text(g: GroupId, f: Coefficients) -> Result<()> {
    match f {
        Coefficients::Integers => {
            let ic = integral_cohomology(g)?;
            println!("H*({g}; Z) = {}", ic.presentation_text()?);
            println!("split form:");
            for line in ic.split_presentation_text().lines() {
                println!("  {line}");
            }
        }
        _ => {
            let ring = cohomology(g, f)?;
            println!("H*({g}; {f}) = {}", ring.presentation_text());
            if let Coefficients::PrimeField(p) = f {
                if !liecohom::basic_data::torsion_index_set(g, p).is_empty() {
                    let t = liecohom::torsion::torsion_ring(g, p)?;
                    println!("tau_{p}({g}) = {}", t.presentation_text());
                }
            }
        }
    }
    Ok(())
}

fn presentation_json(g: GroupId, f: Coefficients) -> Result<serde_json::Value> {
    match f {
        Coefficients::Integers => {
            let ic = integral_cohomology(g)?;
            export::integral_json(&ic, false)
        }
        _ => {
            let ring = cohomology(g, f)?;
            export::ring_json(&ring, false)
        }
    }
}

/// Evaluates an expression in a field-coefficient ring.  Torsion classes
/// `C{...}` pull in the differential context on first use.
fn eval_field(
    e: &Expr,
    ring: &CohomologyRing,
    ctx: &mut Option<TorsionContext>,
) -> Result<Element> {
    match e {
        Expr::Num(v) => Ok(Element::one(&ring.algebra).scale(*v)),
        Expr::Gen(name) => {
            let i = ring
                .resolve_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            Ok(Element::generator(&ring.algebra, i))
        }
        Expr::CSet(set) => {
            let p = match ring.coeff {
                Coefficients::PrimeField(p) => p,
                _ => return Err(Error::Parse("C{...} classes live over prime fields".into())),
            };
            if ctx.is_none() {
                *ctx = Some(TorsionContext::new(ring.group, p)?);
            }
            ctx.as_ref().unwrap().c_class(set)
        }
        Expr::Neg(a) => Ok(eval_field(a, ring, ctx)?.neg()),
        Expr::Add(a, b) => eval_field(a, ring, ctx)?.add(&eval_field(b, ring, ctx)?),
        Expr::Sub(a, b) => eval_field(a, ring, ctx)?.sub(&eval_field(b, ring, ctx)?),
        Expr::Mul(a, b) => eval_field(a, ring, ctx)?.mul(&eval_field(b, ring, ctx)?),
        Expr::Pow(a, e2) => eval_field(a, ring, ctx)?.pow(*e2),
    }
}

/// Evaluates an expression in the integral ring.
fn eval_integral(e: &Expr, ic: &IntegralCohomology) -> Result<IntegralElement> {
    match e {
        Expr::Num(v) => Ok(ic.scale(&ic.one(), *v)),
        Expr::Gen(name) => {
            if let Some(i) = ic.free.resolve_name(name) {
                return Ok(ic.from_free(Element::generator(&ic.free.algebra, i)));
            }
            // Even classes: x<degree> or y_<index>.
            let bd = basic_data(ic.group);
            if let Some(rest) = name.strip_prefix('x') {
                if let Ok(d) = rest.parse::<u32>() {
                    if let Some(j) = (1..=bd.m).find(|&j| bd.deg_y[j - 1] == d) {
                        return ic.special_class(j);
                    }
                }
            }
            if let Some(rest) = name.strip_prefix('y') {
                let rest = rest.strip_prefix('_').unwrap_or(rest);
                if let Ok(j) = rest.parse::<usize>() {
                    return ic.special_class(j);
                }
            }
            Err(Error::Parse(format!("unknown generator `{name}`")))
        }
        Expr::CSet(set) => {
            let bd = basic_data(ic.group);
            let mut prime = None;
            for &t in set {
                if t == 0 || t > bd.m {
                    return Err(Error::Parse(format!("index {t} out of range")));
                }
                let p = bd.p_list[t - 1];
                if prime.get_or_insert(p) != &p {
                    return Err(Error::Parse(
                        "C{...} indices must share one torsion prime".into(),
                    ));
                }
            }
            let p = prime.ok_or_else(|| Error::Parse("empty C{...}".into()))?;
            ic.e_class(p, set)
        }
        Expr::Neg(a) => Ok(ic.neg(&eval_integral(a, ic)?)),
        Expr::Add(a, b) => ic.add(&eval_integral(a, ic)?, &eval_integral(b, ic)?),
        Expr::Sub(a, b) => {
            let bv = eval_integral(b, ic)?;
            ic.add(&eval_integral(a, ic)?, &ic.neg(&bv))
        }
        Expr::Mul(a, b) => ic.mul(&eval_integral(a, ic)?, &eval_integral(b, ic)?),
        Expr::Pow(a, e2) => {
            let base = eval_integral(a, ic)?;
            let mut out = ic.one();
            for _ in 0..*e2 {
                out = ic.mul(&out, &base)?;
            }
            Ok(out)
        }
    }
}
