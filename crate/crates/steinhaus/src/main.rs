//! Command-line surface over the steinhaus library.
//!
//! Every number printed here comes straight from a library call; the CLI
//! does no arithmetic of its own.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use steinhaus::binomial::{binom_mod_p, PrimeModulus};
use steinhaus::canonical::{
    closed_form_paper, compare_with_paper, derive_closed_form, lambda_mu_table, weight_fast,
};
use steinhaus::core::{render, triangle_weight, BinarySequence, RenderStyle, SteinhausTriangle};
use steinhaus::extremes::{
    balanced_search, max_weight, minimum_positive_weight, verify_max_weight, weight_distribution,
    Budget, SearchMode,
};
use steinhaus::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "steinhaus",
    version,
    about = "Binary Steinhaus triangles: construction, weights and extremes"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Wall-clock cap for exhaustive subcommands, in seconds.
    #[arg(long, global = true, default_value_t = 60)]
    budget_seconds: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Digits,
    Signs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    First,
    All,
    Count,
}

#[derive(Subcommand)]
enum Command {
    /// Render the triangle of a seed (a 0/1 string, or "e:k:n" for a
    /// canonical basis seed).
    Triangle {
        seed: String,
        #[arg(long, value_enum, default_value_t = Style::Digits)]
        style: Style,
    },
    /// Triangle weight of an arbitrary seed, by direct construction.
    Weight { seed: String },
    /// w(k, n) by the per-period recurrence.
    FastWeight {
        k: usize,
        n: usize,
        /// Also print t, q, r, lambda, mu and the reduced index.
        #[arg(long)]
        breakdown: bool,
    },
    /// The lambda/mu table for k = 1..k_max.
    Table {
        #[arg(long, default_value_t = 7)]
        k_max: usize,
    },
    /// Evaluate the printed closed form w(k, n) for k <= 7, or derive the
    /// solution-form coefficients for any k with --derive.
    ClosedForm {
        k: usize,
        n: Option<usize>,
        #[arg(long)]
        derive: bool,
    },
    /// Exhaustive weight distribution over all 2^n seeds.
    Distribution {
        n: usize,
        /// Override the default enumeration cap (n <= 24).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Maximum triangle weight of size n, with its generators.
    MaxWeight {
        n: usize,
        /// Confirm value and generator set by exhaustive search.
        #[arg(long)]
        verify: bool,
        /// Override the default verification cap (n <= 18).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Search for triangles of weight n(n+1)/4.
    Balanced {
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::First)]
        mode: Mode,
        /// Override the default enumeration cap (n <= 24).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// The least positive triangle weight of size n and its witnesses.
    MinWeight {
        n: usize,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// C(r, s) mod p by the digit-wise Lucas product.
    Lucas { r: u64, s: u64, p: u64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) => EXIT_INVALID,
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                Error::NonInteger(_) => EXIT_INCONSISTENT,
            })
        }
    }
}

fn parse_seed(spec: &str) -> Result<BinarySequence, Error> {
    if let Some(rest) = spec.strip_prefix("e:") {
        let (k, n) = rest.split_once(':').ok_or_else(|| {
            Error::InvalidInput(format!("canonical seed must be e:k:n, got {spec:?}"))
        })?;
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("not a number in seed spec: {s:?}")))
        };
        return BinarySequence::basis(parse(k)?, parse(n)?);
    }
    let seed = BinarySequence::parse_01(spec)?;
    if seed.is_empty() {
        return Err(Error::InvalidInput("seed must be nonempty".into()));
    }
    Ok(seed)
}

fn budget(cli: &Cli, distribution_cap: Option<usize>, verify_cap: Option<usize>) -> Budget {
    let mut b =
        Budget::default().with_deadline(Instant::now() + Duration::from_secs(cli.budget_seconds));
    if let Some(cap) = distribution_cap {
        b.max_distribution_size = cap;
    }
    if let Some(cap) = verify_cap {
        b.max_verify_size = cap;
    }
    b
}

fn json_doc(command: &str, input: serde_json::Value, result: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&json!({
        "command": command,
        "input": input,
        "result": result,
    }))
    .unwrap();
    s.push('\n');
    s
}

fn csv_unsupported(command: &str) -> Error {
    Error::InvalidInput(format!("csv output is not defined for {command}"))
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Triangle { seed, style } => {
            let s = parse_seed(seed)?;
            let t = SteinhausTriangle::new(&s)?;
            let style = match style {
                Style::Digits => RenderStyle::Digits,
                Style::Signs => RenderStyle::signs(),
            };
            let text = render(&t, style);
            match cli.format {
                Format::Text => Ok(text),
                Format::Json => Ok(json_doc(
                    "triangle",
                    json!({"seed": s.to_string()}),
                    json!({
                        "size": t.size(),
                        "weight": t.weight(),
                        "rows": t.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    }),
                )),
                Format::Csv => Err(csv_unsupported("triangle")),
            }
        }
        Command::Weight { seed } => {
            let s = parse_seed(seed)?;
            let w = triangle_weight(&s);
            match cli.format {
                Format::Text => Ok(format!("{w}\n")),
                Format::Json => Ok(json_doc("weight", json!({"seed": s.to_string()}), json!(w))),
                Format::Csv => Err(csv_unsupported("weight")),
            }
        }
        Command::FastWeight { k, n, breakdown } => {
            let bd = weight_fast(*k, *n)?;
            match cli.format {
                Format::Text => {
                    if *breakdown {
                        let mut out = String::new();
                        match &bd.params {
                            Some(p) => writeln!(
                                out,
                                "k={} n={} k_effective={} t={} q={} r={} lambda={} mu={} weight={}",
                                bd.k, bd.n, p.k_effective, p.t, p.q, p.r, p.lambda, p.mu, bd.weight
                            )
                            .unwrap(),
                            None => writeln!(
                                out,
                                "k={} n={} degenerate=true weight={}",
                                bd.k, bd.n, bd.weight
                            )
                            .unwrap(),
                        }
                        Ok(out)
                    } else {
                        Ok(format!("{}\n", bd.weight))
                    }
                }
                Format::Json => {
                    let params = bd.params.as_ref().map(|p| {
                        json!({
                            "k_effective": p.k_effective,
                            "t": p.t,
                            "period": p.period,
                            "q": p.q,
                            "r": p.r,
                            "lambda": p.lambda,
                            "mu": p.mu,
                        })
                    });
                    Ok(json_doc(
                        "fast-weight",
                        json!({"k": k, "n": n}),
                        json!({"weight": bd.weight, "breakdown": params}),
                    ))
                }
                Format::Csv => Err(csv_unsupported("fast-weight")),
            }
        }
        Command::Table { k_max } => {
            let table = lambda_mu_table(*k_max)?;
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for row in &table {
                        let mu = row
                            .mu
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(",");
                        writeln!(
                            out,
                            "k={} t={} lambda={} mu={}",
                            row.k, row.t, row.lambda, mu
                        )
                        .unwrap();
                    }
                    Ok(out)
                }
                Format::Csv => {
                    let mut out = String::from("k,t,lambda,r,mu\n");
                    for row in &table {
                        for (r, mu) in row.mu.iter().enumerate() {
                            writeln!(out, "{},{},{},{},{}", row.k, row.t, row.lambda, r, mu)
                                .unwrap();
                        }
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_doc(
                    "table",
                    json!({"k_max": k_max}),
                    json!(table
                        .iter()
                        .map(|row| json!({
                            "k": row.k,
                            "t": row.t,
                            "lambda": row.lambda,
                            "mu": row.mu,
                        }))
                        .collect::<Vec<_>>()),
                )),
            }
        }
        Command::ClosedForm { k, n, derive } => {
            if *derive {
                let spec = derive_closed_form(*k)?;
                let report = compare_with_paper(&spec);
                match cli.format {
                    Format::Text => {
                        let mut out = String::new();
                        writeln!(
                            out,
                            "k={} period={} A0={} A1={}",
                            spec.k, spec.period, spec.a0, spec.a1
                        )
                        .unwrap();
                        for (r, (slope, intercept)) in spec.residue_table.iter().enumerate() {
                            writeln!(out, "residue r={r}: w = {slope}*n + {intercept}").unwrap();
                        }
                        for (j, b) in spec.b.iter().enumerate() {
                            writeln!(out, "B{}={:.9}{:+.9}i", j + 1, b.re, b.im).unwrap();
                        }
                        match &report {
                            Some(rep) => writeln!(
                                out,
                                "paper-coefficients: {}",
                                if rep.matches { "match" } else { "MISMATCH" }
                            )
                            .unwrap(),
                            None => {
                                writeln!(out, "paper-coefficients: not printed for k > 7").unwrap()
                            }
                        }
                        Ok(out)
                    }
                    Format::Json => Ok(json_doc(
                        "closed-form",
                        json!({"k": k, "derive": true}),
                        json!({
                            "period": spec.period,
                            "a0": spec.a0.to_string(),
                            "a1": spec.a1.to_string(),
                            "b": spec.b.iter().map(|b| json!([b.re, b.im])).collect::<Vec<_>>(),
                            "residue_table": spec.residue_table.iter().enumerate().map(|(r, (s, i))| {
                                json!({"r": r, "slope": s.to_string(), "intercept": i.to_string()})
                            }).collect::<Vec<_>>(),
                            "paper_match": report.map(|r| r.matches),
                        }),
                    )),
                    Format::Csv => Err(csv_unsupported("closed-form --derive")),
                }
            } else {
                let n = n.ok_or_else(|| {
                    Error::InvalidInput("closed-form needs n, or --derive".into())
                })?;
                let w = closed_form_paper(*k, n)?;
                match cli.format {
                    Format::Text => Ok(format!("{w}\n")),
                    Format::Json => Ok(json_doc("closed-form", json!({"k": k, "n": n}), json!(w))),
                    Format::Csv => Err(csv_unsupported("closed-form")),
                }
            }
        }
        Command::Distribution { n, max_n } => {
            let b = budget(cli, *max_n, None);
            let d = weight_distribution(*n, &b)?;
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for (w, c) in &d.counts {
                        writeln!(out, "{w} {c}").unwrap();
                    }
                    Ok(out)
                }
                Format::Csv => Ok(d.to_csv()),
                Format::Json => Ok(json_doc("distribution", json!({"n": n}), d.to_json())),
            }
        }
        Command::MaxWeight { n, verify, max_n } => {
            if *n == 0 {
                return Err(Error::InvalidInput("size must be at least 1".into()));
            }
            let (value, gens) = max_weight(*n);
            let verified = if *verify {
                let b = budget(cli, None, *max_n);
                Some(verify_max_weight(*n, &b)?)
            } else {
                None
            };
            let gen_strings: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            match cli.format {
                Format::Text => {
                    let mut out = format!("value={value} generators={}\n", gen_strings.join(" "));
                    if let Some(v) = verified {
                        writeln!(out, "verified={v}").unwrap();
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_doc(
                    "max-weight",
                    json!({"n": n, "verify": verify}),
                    json!({"value": value, "generators": gen_strings, "verified": verified}),
                )),
                Format::Csv => Err(csv_unsupported("max-weight")),
            }
        }
        Command::Balanced { n, mode, max_n } => {
            let b = budget(cli, *max_n, None);
            let mode = match mode {
                Mode::First => SearchMode::First,
                Mode::All => SearchMode::All,
                Mode::Count => SearchMode::Count,
            };
            let outcome = balanced_search(*n, mode, &b)?;
            let wit: Vec<String> = outcome.witnesses.iter().map(|w| w.to_string()).collect();
            match cli.format {
                Format::Text => {
                    let mut out = format!("target={} count={}\n", outcome.target, outcome.count);
                    for w in &wit {
                        writeln!(out, "{w}").unwrap();
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_doc(
                    "balanced",
                    json!({"n": n}),
                    json!({"target": outcome.target, "count": outcome.count, "witnesses": wit}),
                )),
                Format::Csv => Err(csv_unsupported("balanced")),
            }
        }
        Command::MinWeight { n, max_n } => {
            let b = budget(cli, *max_n, None);
            let (value, witnesses) = minimum_positive_weight(*n, &b)?;
            let wit: Vec<String> = witnesses.iter().map(|w| w.to_string()).collect();
            match cli.format {
                Format::Text => Ok(format!("value={value} witnesses={}\n", wit.join(" "))),
                Format::Json => Ok(json_doc(
                    "min-weight",
                    json!({"n": n}),
                    json!({"value": value, "witnesses": wit}),
                )),
                Format::Csv => Err(csv_unsupported("min-weight")),
            }
        }
        Command::Lucas { r, s, p } => {
            let pm = PrimeModulus::new(*p)?;
            let v = binom_mod_p(*r, *s, &pm);
            match cli.format {
                Format::Text => Ok(format!("{v}\n")),
                Format::Json => Ok(json_doc("lucas", json!({"r": r, "s": s, "p": p}), json!(v))),
                Format::Csv => Err(csv_unsupported("lucas")),
            }
        }
    }
}
