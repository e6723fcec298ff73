//! Command-line front end: decompose zeta values over a chosen basis,
//! evaluate them numerically, inspect the coaction and the f-alphabet.
//!
//! Exit codes: 0 success, 2 basis failure (not a basis / dimension
//! mismatch), 3 precision exhaustion, 4 parse error, 1 anything else.

use clap::{Args, Parser, Subcommand};
use mzv::coaction::{d_r_normalized, DEFAULT_COPRODUCT_CAP};
use mzv::decomp::default_max_den;
use mzv::exact::rat;
use mzv::falg::{basis_words, dims};
use mzv::numeric::Method;
use mzv::parse::parse_expression;
use mzv::words::{rho, ISymbol};
use mzv::{Basis, Error, Evaluator, LinComb, PhiTable, PrecisionPolicy};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "mzv",
    about = "Exact decomposition and evaluation of multiple zeta values",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PrecisionArgs {
    /// Working decimal digits for numeric residual recovery.
    #[arg(long, default_value_t = 64, env = "MZV_DIGITS")]
    digits: u32,
    /// Escalation cap on digits.
    #[arg(long, default_value_t = 1024, env = "MZV_MAX_DIGITS")]
    max_digits: u32,
}

#[derive(Args, Clone)]
struct BasisArgs {
    /// Basis: "default10", "hoffman", or a path to a JSON basis file.
    #[arg(long, default_value = "default10", env = "MZV_BASIS")]
    basis: String,
    /// Maximum weight the table is built for.
    #[arg(long, default_value_t = 10, env = "MZV_WEIGHT_CAP")]
    weight_cap: u32,
    /// Denominator bound for rational reconstruction (default 10^(digits/4)).
    #[arg(long, env = "MZV_MAX_DEN")]
    max_den: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an expression into basis monomials with exact coefficients.
    Decompose {
        /// Expression, e.g. "zeta(4,3,3)" or "zeta(2,3) + 2*zeta(5)".
        expr: String,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        precision: PrecisionArgs,
        /// Emit JSON (terms plus certificates).
        #[arg(long)]
        json: bool,
        /// Include residual certificates in the text output too.
        #[arg(long)]
        certificates: bool,
    },
    /// Evaluate an expression numerically.
    Eval {
        expr: String,
        #[command(flatten)]
        precision: PrecisionArgs,
        /// Use the slow direct-summation oracle instead of the default
        /// path-composition method (requires all index parts >= 2).
        #[arg(long)]
        oracle: bool,
    },
    /// Print the derivation slices D_r of an expression.
    Coaction {
        expr: String,
        /// Only the given odd slice r.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Image of an expression in the f-alphabet.
    Phi {
        expr: String,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check an identity: decompose both sides and compare exactly.
    Verify {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        precision: PrecisionArgs,
    },
    /// Conjectural dimensions and f-alphabet basis words per weight.
    Dims {
        #[arg(long, default_value_t = 14)]
        max_weight: u32,
        /// Also list the basis words of each weight.
        #[arg(long)]
        words: bool,
    },
    /// Run the built-in fixture suite (known decompositions and values).
    Selftest {
        #[command(flatten)]
        precision: PrecisionArgs,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotABasis(_) | Error::DimensionMismatch { .. } => 2,
        Error::AmbiguousReconstruction { .. } | Error::PrecisionUnreachable { .. } => 3,
        Error::Parse(_) => 4,
        _ => 1,
    }
}

fn policy(p: &PrecisionArgs) -> Result<PrecisionPolicy, Error> {
    PrecisionPolicy::new(p.digits, 10, p.max_digits.max(p.digits))
}

fn load_basis(args: &BasisArgs) -> Result<Basis, Error> {
    match args.basis.as_str() {
        "default10" => Ok(Basis::default10()),
        "hoffman" => Ok(Basis::hoffman(args.weight_cap)),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Invalid(format!("cannot read basis file {path}: {e}")))?;
            Basis::from_json(&text)
        }
    }
}

fn build_table(args: &BasisArgs, p: &PrecisionArgs) -> Result<PhiTable, Error> {
    let basis = load_basis(args)?;
    let pol = policy(p)?;
    let max_den = match &args.max_den {
        Some(s) => Some(
            s.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad --max-den value {s}")))?,
        ),
        None => Some(default_max_den(p.digits)),
    };
    PhiTable::build_with(basis, args.weight_cap, pol, Evaluator::new(), max_den)
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Decompose {
            expr,
            basis,
            precision,
            json,
            certificates,
        } => {
            let lc = parse_expression(&expr)?;
            let table = build_table(&basis, &precision)?;
            let d = table.decompose(&lc)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&d.to_json()).unwrap());
            } else {
                println!("{}", d.render());
                if certificates {
                    for c in &d.certificates {
                        println!(
                            "# certificate: {} -> {} ({} digits{}, max_den {})",
                            c.generator,
                            c.reconstructed,
                            c.digits,
                            if c.escalated { ", escalated" } else { "" },
                            c.max_den
                        );
                    }
                }
            }
        }
        Command::Eval {
            expr,
            precision,
            oracle,
        } => {
            let lc = parse_expression(&expr)?;
            let pol = policy(&precision)?;
            let ev = if oracle {
                Evaluator::with_method(Method::DirectSum)
            } else {
                Evaluator::new()
            };
            let v = ev.eval_lincomb(&lc, &pol)?;
            println!("{}", v.to_decimal(precision.digits));
        }
        Command::Coaction { expr, r, json } => {
            let lc = parse_expression(&expr)?;
            let weight = lc
                .iter()
                .map(|(g, _)| g.weight())
                .max()
                .ok_or_else(|| Error::Invalid("zero expression".into()))?;
            if weight > DEFAULT_COPRODUCT_CAP + 4 {
                return Err(Error::CapExceeded(weight, DEFAULT_COPRODUCT_CAP + 4));
            }
            let slices: Vec<u32> = match r {
                Some(r) => vec![r],
                None => (3..weight).step_by(2).collect(),
            };
            let mut out = Vec::new();
            for r in slices {
                if r % 2 == 0 || r < 3 {
                    return Err(Error::Invalid(format!("slice r must be odd >= 3, got {r}")));
                }
                // D_r of the zeta combination: symbol-level slices carry a
                // (-1)^depth relative to the zeta value
                let mut total = LinComb::zero();
                for (g, c) in lc.iter() {
                    let sym = ISymbol::from_word(rho(g.parts()));
                    let sign = if g.depth() % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    total.add(&d_r_normalized(r, &sym).scaled(&sign));
                }
                out.push((r, total));
            }
            if json {
                let arr: Vec<serde_json::Value> = out
                    .iter()
                    .map(|(r, total)| {
                        serde_json::json!({
                            "r": r,
                            "terms": total.iter().map(|((l, q), c)| serde_json::json!({
                                "left": l.to_string(),
                                "right": q.to_string(),
                                "coefficient": c.to_string(),
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&arr).unwrap());
            } else {
                for (r, total) in out {
                    if total.is_zero() {
                        println!("D_{r}: 0");
                    } else {
                        let terms: Vec<String> = total
                            .iter()
                            .map(|((l, q), c)| format!("({c})*{l} (x) {q}"))
                            .collect();
                        println!("D_{r}: {}", terms.join(" + "));
                    }
                }
            }
        }
        Command::Phi {
            expr,
            basis,
            precision,
            json,
        } => {
            let lc = parse_expression(&expr)?;
            let table = build_table(&basis, &precision)?;
            let img = table.phi(&lc)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&img.to_json()).unwrap());
            } else {
                println!("{img}");
            }
        }
        Command::Verify {
            lhs,
            rhs,
            basis,
            precision,
        } => {
            let l = parse_expression(&lhs)?;
            let r = parse_expression(&rhs)?;
            let table = build_table(&basis, &precision)?;
            let report = table.verify_identity(&l, &r)?;
            if report.equal {
                println!("equal");
            } else {
                println!("NOT equal");
                println!("lhs = {}", report.lhs.render());
                println!("rhs = {}", report.rhs.render());
                std::process::exit(1);
            }
        }
        Command::Dims { max_weight, words } => {
            let d = dims(max_weight);
            println!("{:>6}  {:>6}", "weight", "dim");
            for n in 0..=max_weight {
                println!("{:>6}  {:>6}", n, d[n as usize]);
                if words {
                    for w in basis_words(n) {
                        println!("        {w}");
                    }
                }
            }
        }
        Command::Selftest { precision } => {
            if !selftest(&precision)? {
                std::process::exit(1);
            }
        }
    }
    Ok(())
}

/// Known decompositions and identities, each printed as one pass/fail line.
fn selftest(precision: &PrecisionArgs) -> Result<bool, Error> {
    let table = build_table(
        &BasisArgs {
            basis: "default10".into(),
            weight_cap: 10,
            max_den: None,
        },
        precision,
    )?;
    let mut ok = true;
    let mut check = |name: &str, pass: bool| {
        println!("{} {name}", if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    let cases: &[(&str, &str)] = &[
        ("zeta(2,3)", "-11/2*zeta(5) + 3*zeta(3)*zeta(2)"),
        (
            "zeta(4,3)",
            "-18*zeta(7) + 10*zeta(5)*zeta(2) + 2/5*zeta(3)*zeta(2)*zeta(2)",
        ),
        ("zeta(3,4)", "17*zeta(7) - 10*zeta(5)*zeta(2)"),
        ("zeta(1,2)", "zeta(3)"),
        ("zeta(1,3)", "1/10*zeta(2)*zeta(2)"),
        (
            "zeta(4,3,3)",
            "4336/1925*zeta(2)*zeta(2)*zeta(2)*zeta(2)*zeta(2) \
             + 1/5*zeta(2)*zeta(2)*zeta(3)*zeta(3) \
             + 10*zeta(2)*zeta(3)*zeta(5) - 4*zeta(2)*zeta(3,5) \
             - 18*zeta(3)*zeta(7) - 49/2*zeta(5)*zeta(5) + zeta(3,7)",
        ),
    ];
    for (lhs, rhs) in cases {
        let l = parse_expression(lhs)?;
        let r = parse_expression(rhs)?;
        let rep = table.verify_identity(&l, &r)?;
        check(&format!("{lhs} = {rhs}"), rep.equal);
    }

    // phi images
    let phi35 = table.phi(&parse_expression("zeta(3,5)")?)?;
    check("phi(zeta(3,5)) = -5 f5f3", phi35.to_string() == "-5*f5 f3");
    let phi37 = table.phi(&parse_expression("zeta(3,7)")?)?;
    check(
        "phi(zeta(3,7)) = -14 f7f3 - 6 f5f5",
        phi37.to_string() == "-6*f5 f5 - 14*f7 f3",
    );

    // a numeric identity at the working precision
    let pol = policy(precision)?;
    let ev = table.evaluator();
    let a = ev.eval_lincomb(&parse_expression("zeta(1,2) - zeta(3)")?, &pol)?;
    check(
        "zeta(1,2) - zeta(3) = 0 numerically",
        a.certified_below_pow10(precision.digits.saturating_sub(4)),
    );

    // duality: the words of zeta(2,3) and zeta(1,2,2) are dual
    let rep = table.verify_identity(
        &parse_expression("zeta(2,3)")?,
        &parse_expression("zeta(1,2,2)")?,
    )?;
    check("duality zeta(2,3) = zeta(1,2,2)", rep.equal);

    // dimensions
    check(
        "dims through weight 10",
        dims(10) == vec![1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7],
    );

    // reconstruction sanity: recompute the zeta(2,3) residual certificate
    let d = table.decompose(&parse_expression("zeta(2,3)")?)?;
    let cert_ok = d
        .certificates
        .iter()
        .any(|c| c.generator == "zeta(2,3)" && c.reconstructed == rat(-11, 2));
    check("certificate for zeta(2,3) residual is -11/2", cert_ok);

    Ok(ok)
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
