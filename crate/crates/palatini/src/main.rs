//! Command-line front end: classification, pfaffians, minors, Hilbert
//! functions, secant checks, Schubert expansions, intersection numbers, and
//! the one-shot verification suite. Exit codes: 0 success, 1 check failure,
//! 2 bad input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use palatini::algebra::Scalar;
use palatini::chern;
use palatini::classify::{classify, ClassifyConfig};
use palatini::error::Error;
use palatini::fixtures::{web_by_name, FixtureParams, FIXTURE_NAMES};
use palatini::schubert::sigma1_power;
use palatini::skew::{SkewPencilJson, UPPER_PAIRS};
use palatini::web::{
    c4_line_through, degree_from_hilbert, four_secant_check, hilbert_function, SecantIntersection,
    Web, AMBIENT_VARS,
};

#[derive(Parser)]
#[command(
    name = "palatini",
    about = "Exact computation with webs of linear line complexes in P^5",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in fixture name (see `--help` for the list).
    #[arg(long, help = fixture_help())]
    fixture: Option<String>,
    /// Path to a web JSON file: {"A": {"upper": [15 fractions]}, "B": ..., "C": ..., "D": ...}.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<String>,
    /// Random seed (drives the `random` fixture and any sampling).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl InputArgs {
    fn load_web(&self) -> Result<Web, Error> {
        match (&self.fixture, &self.input) {
            (Some(name), None) => {
                let params = FixtureParams {
                    seed: self.seed,
                    ..FixtureParams::default()
                };
                web_by_name(name, &params)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
                let parsed: SkewPencilJson = serde_json::from_str(&text)
                    .map_err(|e| Error::InvalidInput(format!("bad web JSON: {e}")))?;
                Web::from_json(&parsed)
            }
            _ => Err(Error::InvalidInput(
                "provide exactly one of --fixture or --input".into(),
            )),
        }
    }

    fn echo(&self, command: &str, primes: &[u64], samples: Option<usize>) -> RunEcho {
        RunEcho {
            command: command.to_string(),
            fixture: self.fixture.clone(),
            input: self.input.clone(),
            primes: primes.to_vec(),
            samples,
            seed: self.seed,
        }
    }
}

/// Echo of the run configuration, embedded in every JSON output.
#[derive(Serialize)]
struct RunEcho {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixture: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    primes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a web and decide regularity of the locus map at it.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Primes for the sampled dimension estimates.
        #[arg(long, value_delimiter = ',', default_values_t = [31991u64, 65521])]
        primes: Vec<u64>,
        /// Sample points per prime.
        #[arg(long, default_value_t = 24)]
        samples: usize,
    },
    /// Run the built-in verification suite; one line per check.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the pfaffian cubic of the web's pencil.
    Pfaffian {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the 4x6 matrix of linear forms and its fifteen quartic minors.
    Minors {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Hilbert function of the minor ideal over prime fields.
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        /// Inclusive degree range, e.g. 4..7.
        #[arg(long, value_parser = parse_range)]
        t: (u32, u32),
        #[arg(long, value_delimiter = ',', default_values_t = [31991u64, 65521])]
        primes: Vec<u64>,
    },
    /// Congruence lines through random points and their intersection length.
    Secant {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 31991)]
        prime: u64,
    },
    /// Expand a power of sigma_1 by the Pieri rule.
    Schubert {
        #[arg(long)]
        power: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Intersection table, chi(N), Hilbert polynomial and degree.
    Chern {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn fixture_help() -> String {
    format!(
        "Built-in fixture name, one of: {}",
        FIXTURE_NAMES.join(", ")
    )
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u32 = a.trim().parse().map_err(|_| "bad range start")?;
    let b: u32 = b.trim().parse().map_err(|_| "bad range end")?;
    if a > b {
        return Err("empty range".into());
    }
    Ok((a, b))
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            input,
            primes,
            samples,
        } => {
            let web = input.load_web()?;
            let cfg = ClassifyConfig {
                primes: primes.clone(),
                samples,
                seed: input.seed,
                ..ClassifyConfig::default()
            };
            let report = classify(&web, &cfg)?;
            match input.format {
                Format::Json => {
                    let out = json!({
                        "config": input.echo("classify", &primes, Some(samples)),
                        "report": report,
                        "summary": report.to_string(),
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => {
                    println!("{report}");
                    for note in &report.evidence.notes {
                        println!("  note: {note}");
                    }
                    if let Some(probe) = &report.surface_probe {
                        for c in &probe.counts {
                            println!(
                                "  singular points of the cubic over F_{}: {}",
                                c.prime, c.singular_points
                            );
                        }
                        for pt in probe.rational_points.iter().take(4) {
                            println!(
                                "  singular point ({}) verified exactly; pencil rank {}",
                                pt.point.join(", "),
                                pt.pencil_rank.map_or("?".into(), |r| r.to_string())
                            );
                        }
                        if probe.rational_points.len() > 4 {
                            println!(
                                "  ... and {} more verified singular points",
                                probe.rational_points.len() - 4
                            );
                        }
                    }
                    println!("  seed: {}", report.evidence.seed);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed } => {
            let failures = palatini::verify::run_all(seed, |name, outcome| match outcome {
                Ok(()) => println!("PASS {name}"),
                Err(msg) => println!("FAIL {name}: {msg}"),
            });
            if failures == 0 {
                println!("all checks passed (seed {seed})");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{failures} check(s) failed (seed {seed})");
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Pfaffian { input } => {
            let web = input.load_web()?;
            let pf = web.pencil().pfaffian();
            let text = pf.to_text(&["x", "y", "z", "t"]);
            match input.format {
                Format::Json => {
                    let out = json!({
                        "config": input.echo("pfaffian", &[], None),
                        "pfaffian": text,
                        "identically_zero": pf.is_zero(),
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minors { input } => {
            let web = input.load_web()?;
            let sys = web.degeneracy_system();
            match input.format {
                Format::Json => {
                    let matrix: Vec<Vec<String>> = (0..4)
                        .map(|r| {
                            (0..6)
                                .map(|c| sys.entry(r, c).to_text(&AMBIENT_VARS))
                                .collect()
                        })
                        .collect();
                    let minors: Vec<serde_json::Value> = UPPER_PAIRS
                        .iter()
                        .zip(sys.minors())
                        .map(|(&(i, j), m)| {
                            json!({ "deleted": [i, j], "quartic": m.to_text(&AMBIENT_VARS) })
                        })
                        .collect();
                    let out = json!({
                        "config": input.echo("minors", &[], None),
                        "matrix": matrix,
                        "minors": minors,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => {
                    println!("F =");
                    for r in 0..4 {
                        let row: Vec<String> = (0..6)
                            .map(|c| sys.entry(r, c).to_text(&AMBIENT_VARS))
                            .collect();
                        println!("  [ {} ]", row.join(" , "));
                    }
                    println!("minors (by deleted column pair):");
                    for (&(i, j), m) in UPPER_PAIRS.iter().zip(sys.minors()) {
                        println!("  F{i}{j} = {}", m.to_text(&AMBIENT_VARS));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert { input, t, primes } => {
            let web = input.load_web()?;
            let sys = web.degeneracy_system();
            let mut rows = Vec::new();
            for &p in &primes {
                let mut values = Vec::new();
                for ti in t.0..=t.1 {
                    let h = hilbert_function(&sys, ti, p)?;
                    rows.push(json!({ "t": ti, "h": h, "prime": p }));
                    values.push(h);
                }
                if values.len() >= 4 {
                    let deg = degree_from_hilbert(&values)?;
                    rows.push(json!({ "prime": p, "third_difference": deg }));
                }
            }
            match input.format {
                Format::Json => {
                    let out = json!({
                        "config": input.echo("hilbert", &primes, None),
                        "values": rows,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => {
                    for r in rows {
                        println!("{r}");
                    }
                    println!("seed: {}", input.seed);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Secant {
            input,
            count,
            prime,
        } => {
            let web = input.load_web()?;
            let gens = web.generators_mod(prime)?;
            let mut rng = StdRng::seed_from_u64(input.seed);
            let mut results = Vec::new();
            let mut attempts = 0;
            while results.len() < count {
                attempts += 1;
                if attempts > 32 * count {
                    return Err(Error::SamplingExhausted { attempts });
                }
                let q: Vec<Scalar> = (0..6)
                    .map(|_| Scalar::fp(rng.gen_range(0..prime as i64), prime))
                    .collect();
                if q.iter().all(Scalar::is_zero) {
                    continue;
                }
                if c4_line_through(&gens, &q).is_err() {
                    continue;
                }
                let point: Vec<String> = q.iter().map(|s| s.to_string()).collect();
                match four_secant_check(&web, &q, prime)? {
                    SecantIntersection::Length { line, length } => {
                        results.push(json!({
                            "point": point,
                            "length": length,
                            "line": line.to_json(),
                        }));
                    }
                    SecantIntersection::Contained { line } => {
                        results.push(json!({
                            "point": point,
                            "contained": true,
                            "line": line.to_json(),
                        }));
                    }
                }
            }
            match input.format {
                Format::Json => {
                    let out = json!({
                        "config": input.echo("secant", &[prime], Some(count)),
                        "results": results,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => {
                    for r in &results {
                        if let Some(len) = r.get("length") {
                            println!("point {}: intersection length {len}", r["point"]);
                        } else {
                            println!("point {}: line contained in the locus", r["point"]);
                        }
                    }
                    println!("seed: {}", input.seed);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Schubert { power, format } => {
            let c = sigma1_power(power);
            match format {
                Format::Json => {
                    let terms: Vec<serde_json::Value> = c
                        .terms()
                        .map(|(p, k)| {
                            let (a, b) = p.parts();
                            json!({ "partition": [a, b], "coefficient": k })
                        })
                        .collect();
                    let out = json!({
                        "config": { "command": "schubert", "power": power },
                        "expansion": c.to_string(),
                        "terms": terms,
                        "order": c.order(),
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => {
                    println!("σ1^{power} = {c}");
                    println!("order = {}", c.order());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chern { format } => {
            let t = chern::IntersectionTable::palatini_scroll();
            let cls = chern::NormalBundleClasses::scroll();
            let summands = chern::chi_normal_summands(&t)?;
            let total = chern::chi_normal(&t)?;
            let coeffs = chern::hilbert_coefficients(&t);
            let c2h = chern::derive_c2h(&t.kh2, &t.k2h, &coeffs[2], &coeffs[1])?;
            let deg = chern::degree(&t)?;
            match format {
                Format::Json => {
                    let out = json!({
                        "config": { "command": "chern" },
                        "table": {
                            "H^3": t.h3.to_string(), "KH^2": t.kh2.to_string(),
                            "K^2H": t.k2h.to_string(), "K^3": t.k3.to_string(),
                            "Kc2": t.kc2.to_string(), "c2H": t.c2h.to_string(),
                            "chi_O": t.chi_o.to_string(), "rank": t.rank_n,
                        },
                        "classes": {
                            "n1": cls.n1.to_string(), "n2": cls.n2.to_string(),
                            "n3": cls.n3.to_string(), "c1": cls.c1.to_string(),
                        },
                        "chi_N_summands": summands.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "chi_N": total.to_string(),
                        "hilbert_coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "c2H_derived": c2h.to_string(),
                        "degree": deg,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("serializable")
                    );
                }
                Format::Text => {
                    println!("normal bundle classes:");
                    println!("  n1 = {}", cls.n1);
                    println!("  n2 = {}", cls.n2);
                    println!("  n3 = {}", cls.n3);
                    println!("  c1 = {}", cls.c1);
                    println!(
                        "chi(N) = {} + {} + {} + {} = {total}",
                        summands[0], summands[1], summands[2], summands[3]
                    );
                    println!(
                        "hilbert polynomial: ({})s^3 + ({})s^2 + ({})s + ({})",
                        coeffs[0], coeffs[1], coeffs[2], coeffs[3]
                    );
                    println!("c2H derived from the linear coefficient: {c2h}");
                    println!("degree = {deg}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when stdout is a closed pipe (e.g. `palatini minors | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
