//! Command-line front end.
//!
//! Every subcommand prints line-delimited JSON certificate documents on
//! stdout (see [`crate::document`]) and reserves stderr for usage problems.
//! Output is byte-identical across runs for identical inputs; the optional
//! `--with-meta` header line is the only place a timestamp can appear.
//!
//! Exit codes are a stable contract:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | expected outcome (witness, certificate, clean scan) |
//! | 1    | negative outcome: refutation or exhausted search    |
//! | 2    | usage error: malformed input, bad flags             |
//! | 3    | counterexample alert: a nonexistence scan found a hit |

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::arith::{Int, Rational};
use crate::congruent::{certify_congruent, CertifyOutcome};
use crate::curves::{
    e_to_quartic, point_order, quartic_to_e, torsion_points, EPoint,
    QuarticPoint,
};
use crate::descent::{clear_denominators, descent_step, forward_to_ad, normalize_window, AdPair};
use crate::document::{self, parse_rational, CertificateDocument};
use crate::error::Error;
use crate::search;

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_COUNTEREXAMPLE: i32 = 3;

/// Environment variable holding the default partition count for searches.
pub const PARTITIONS_ENV: &str = "FOURAP_PARTITIONS";

#[derive(Debug, Parser)]
#[command(
    name = "fourap",
    version,
    about = "Exact certificates around squares in arithmetic progression",
    long_about = "Verifies four-square windows, certifies congruent numbers, runs \
                  brute-force nonexistence scans, and explores the associated \
                  elliptic curve. All outputs are line-delimited JSON documents \
                  that `fourap check` re-validates independently."
)]
struct Cli {
    /// Prepend a metadata header line (carries the only timestamp).
    #[arg(long, global = true)]
    with_meta: bool,
    /// Include the full witness chain in emitted documents.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify that four integers or rationals are squares in arithmetic
    /// progression; exit 0 only for the degenerate constant window.
    VerifyAp {
        /// The four terms, integers or rationals like 49/4.
        #[arg(num_args = 4, value_name = "TERM", allow_hyphen_values = true)]
        terms: Vec<String>,
    },
    /// Search for a right triangle certifying that k is a congruent number.
    Certify {
        /// Squarefree integer to certify.
        k: String,
        /// Largest hypotenuse to enumerate.
        #[arg(long, default_value_t = 10_000)]
        hyp_bound: u64,
    },
    /// Scan for four squares in arithmetic progression (expected: none).
    Search4 {
        #[arg(long, default_value_t = 10_000)]
        root_bound: u64,
        #[command(flatten)]
        partitions: Partitions,
    },
    /// Scan coprime (A, D) for 16A^2+D^2 and 4A^2+D^2 both square
    /// (expected: none).
    SearchAd {
        #[arg(long, default_value_t = 2_000)]
        a_bound: u64,
        #[arg(long, default_value_t = 20_000)]
        d_bound: u64,
        #[command(flatten)]
        partitions: Partitions,
    },
    /// Scan odd x, even y for x^2+y^2 and x^2+4y^2 both square
    /// (expected: none).
    EulerSearch {
        #[arg(long, default_value_t = 10_000)]
        x_bound: u64,
        #[arg(long, default_value_t = 10_000)]
        y_bound: u64,
        #[command(flatten)]
        partitions: Partitions,
    },
    /// Scan for three squares in arithmetic progression whose common
    /// difference has squarefree part k (expected: hits).
    Search3 {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1_000)]
        root_bound: u64,
        #[command(flatten)]
        partitions: Partitions,
    },
    /// Operations on the quartic curve C and the elliptic curve E (24A1).
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Apply one descent step to a pair (A, D).
    Descend {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Re-validate emitted documents (from a file, or stdin by default).
    Check {
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Partitions {
    /// Number of parallel range partitions (default: FOURAP_PARTITIONS or 1).
    #[arg(long)]
    partitions: Option<usize>,
}

impl Partitions {
    fn resolve(&self) -> Result<usize, String> {
        let value = match self.partitions {
            Some(v) => v,
            None => match std::env::var(PARTITIONS_ENV) {
                Ok(raw) => raw
                    .parse::<usize>()
                    .map_err(|e| format!("bad {PARTITIONS_ENV} value '{raw}': {e}"))?,
                Err(_) => 1,
            },
        };
        if value == 0 {
            return Err("partition count must be at least 1".into());
        }
        Ok(value)
    }
}

#[derive(Debug, Subcommand)]
enum CurveCommand {
    /// Enumerate the rational torsion points of E.
    Torsion,
    /// Convert a point between the quartic and Weierstrass models.
    Map {
        /// Quartic point X Y to send to E.
        #[arg(
            long,
            num_args = 2,
            value_names = ["X", "Y"],
            allow_hyphen_values = true,
            conflicts_with = "from_e"
        )]
        from_quartic: Option<Vec<String>>,
        /// E point x y to send to the quartic.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        from_e: Option<Vec<String>>,
    },
    /// Height-bounded exact search for rational points of E.
    Search {
        #[arg(long, default_value_t = 1_000)]
        height: u64,
    },
}

/// Entry point used by the `fourap` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap uses exit code 2 for usage errors and 0 for --help/--version
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    if cli.with_meta {
        let meta = serde_json::json!({
            "meta": {
                "tool": "fourap",
                "version": env!("CARGO_PKG_VERSION"),
                "unix_time": std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs().to_string())
                    .unwrap_or_else(|_| "0".into()),
            }
        });
        if writeln!(stdout, "{meta}").is_err() {
            return EXIT_USAGE;
        }
    }
    match dispatch(&cli, &mut stdout) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &mut impl Write, doc: &CertificateDocument) -> Result<(), String> {
    writeln!(out, "{}", document::to_json_line(doc)).map_err(|e| e.to_string())
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<i32, String> {
    match &cli.command {
        Command::VerifyAp { terms } => verify_ap(terms, cli.trace, out),
        Command::Certify { k, hyp_bound } => certify(k, *hyp_bound, out),
        Command::Search4 { root_bound, partitions } => {
            let parts = partitions.resolve()?;
            let report = search::partitioned::search_four_square_ap(*root_bound, parts);
            emit(out, &document::search_report_document(&report))?;
            Ok(alert_code(report.hits.is_empty()))
        }
        Command::SearchAd { a_bound, d_bound, partitions } => {
            let parts = partitions.resolve()?;
            let report =
                search::partitioned::search_double_square_pairs(*a_bound, *d_bound, parts);
            emit(out, &document::search_report_document(&report))?;
            Ok(alert_code(report.hits.is_empty()))
        }
        Command::EulerSearch { x_bound, y_bound, partitions } => {
            let parts = partitions.resolve()?;
            let report = search::partitioned::search_euler_pairs(*x_bound, *y_bound, parts);
            emit(out, &document::search_report_document(&report))?;
            Ok(alert_code(report.hits.is_empty()))
        }
        Command::Search3 { k, root_bound, partitions } => {
            let parts = partitions.resolve()?;
            let report = search::partitioned::search_three_square_ap(*k, *root_bound, parts)
                .map_err(|e| e.to_string())?;
            emit(out, &document::search_report_document(&report))?;
            // finding witnesses is the expected outcome here
            Ok(if report.hits.is_empty() { EXIT_NEGATIVE } else { EXIT_OK })
        }
        Command::Curve { command } => curve(command, out),
        Command::Descend { a, d } => descend(a, d, cli.trace, out),
        Command::Check { file } => check(file.as_deref(), out),
    }
}

fn alert_code(clean: bool) -> i32 {
    if clean {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    }
}

fn verify_ap(raw_terms: &[String], trace: bool, out: &mut impl Write) -> Result<i32, String> {
    let mut terms = Vec::with_capacity(4);
    for raw in raw_terms {
        terms.push(parse_rational(raw)?);
    }
    let terms: [Rational; 4] = terms.try_into().expect("clap enforces arity 4");
    let cleared = match clear_denominators(&terms) {
        Ok(c) => c,
        Err(refutation) => {
            emit(out, &document::window_refutation_document(raw_terms, &refutation))?;
            return Ok(EXIT_NEGATIVE);
        }
    };
    let candidate = match normalize_window(&cleared) {
        Ok(c) => c,
        Err(refutation) => {
            emit(out, &document::window_refutation_document(raw_terms, &refutation))?;
            return Ok(EXIT_NEGATIVE);
        }
    };
    match forward_to_ad(&candidate) {
        Ok(witness) => {
            emit(out, &document::witness_document(raw_terms, &witness, trace))?;
            Ok(EXIT_OK)
        }
        Err(refutation) => {
            emit(out, &document::window_refutation_document(raw_terms, &refutation))?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn certify(k_raw: &str, hyp_bound: u64, out: &mut impl Write) -> Result<i32, String> {
    let k = Int::from_str(k_raw).map_err(|e| format!("bad integer '{k_raw}': {e}"))?;
    let bound = Int::from(hyp_bound);
    match certify_congruent(&k, &bound) {
        Ok(CertifyOutcome::Found(cert)) => {
            emit(out, &document::congruent_certificate_document(&cert, &bound))?;
            Ok(EXIT_OK)
        }
        Ok(CertifyOutcome::ExhaustedBelow { k, hyp_bound }) => {
            emit(out, &document::congruent_exhausted_document(&k, &hyp_bound))?;
            Ok(EXIT_NEGATIVE)
        }
        Err(e @ (Error::NotSquarefree { .. } | Error::OutOfDomain { .. })) => {
            Err(e.to_string())
        }
        Err(e) => Err(e.to_string()),
    }
}

fn curve(command: &CurveCommand, out: &mut impl Write) -> Result<i32, String> {
    match command {
        CurveCommand::Torsion => {
            for point in torsion_points() {
                let order = if point.is_infinity() {
                    1
                } else {
                    point_order(&point)
                };
                emit(out, &document::torsion_point_document(&point, order))?;
            }
            Ok(EXIT_OK)
        }
        CurveCommand::Map { from_quartic, from_e } => match (from_quartic, from_e) {
            (Some(coords), None) => {
                let x = parse_rational(&coords[0])?;
                let y = parse_rational(&coords[1])?;
                let q = QuarticPoint::new(x.clone(), y.clone()).map_err(|e| e.to_string())?;
                let image = quartic_to_e(&q).map_err(|e| e.to_string())?;
                let EPoint::Affine(ix, iy) = &image else {
                    return Err("map image cannot be infinity".into());
                };
                emit(
                    out,
                    &document::mapped_point_document("quartic", &x, &y, "e", ix, iy),
                )?;
                Ok(EXIT_OK)
            }
            (None, Some(coords)) => {
                let x = parse_rational(&coords[0])?;
                let y = parse_rational(&coords[1])?;
                let p = EPoint::affine(x.clone(), y.clone()).map_err(|e| e.to_string())?;
                let image = e_to_quartic(&p).map_err(|e| e.to_string())?;
                emit(
                    out,
                    &document::mapped_point_document(
                        "e",
                        &x,
                        &y,
                        "quartic",
                        image.x(),
                        image.y(),
                    ),
                )?;
                Ok(EXIT_OK)
            }
            _ => Err("pass exactly one of --from-quartic or --from-e".into()),
        },
        CurveCommand::Search { height } => {
            emit(out, &document::e_search_document_for(*height))?;
            Ok(EXIT_OK)
        }
    }
}

fn descend(a_raw: &str, d_raw: &str, trace: bool, out: &mut impl Write) -> Result<i32, String> {
    let a = Int::from_str(a_raw).map_err(|e| format!("bad integer '{a_raw}': {e}"))?;
    let d = Int::from_str(d_raw).map_err(|e| format!("bad integer '{d_raw}': {e}"))?;
    let pair = AdPair::new(a, d).map_err(|e| e.to_string())?;
    match pair.certify() {
        Ok(certified) => {
            let step = descent_step(&certified);
            emit(
                out,
                &document::descend_document(
                    &pair,
                    certified.root16(),
                    certified.root4(),
                    &step,
                    trace,
                ),
            )?;
            Ok(EXIT_OK)
        }
        Err(refutation) => {
            emit(out, &document::descend_refutation_document(&pair, &refutation))?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn check(file: Option<&std::path::Path>, out: &mut impl Write) -> Result<i32, String> {
    let content = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => {
            let mut buf = String::new();
            for line in std::io::stdin().lock().lines() {
                buf.push_str(&line.map_err(|e| e.to_string())?);
                buf.push('\n');
            }
            buf
        }
    };
    let mut all_ok = true;
    let mut saw_document = false;
    for line in content.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if is_meta_line(line) {
            continue;
        }
        saw_document = true;
        match document::parse_line(line) {
            Ok(doc) => {
                match document::check_document(&doc) {
                    Ok(()) => {
                        writeln!(out, "ok: {}", doc.body.kind()).map_err(|e| e.to_string())?;
                    }
                    Err(reason) => {
                        all_ok = false;
                        writeln!(out, "invalid: {}: {reason}", doc.body.kind())
                            .map_err(|e| e.to_string())?;
                    }
                }
            }
            Err(reason) => {
                all_ok = false;
                writeln!(out, "invalid: {reason}").map_err(|e| e.to_string())?;
            }
        }
    }
    if !saw_document {
        return Err("no documents to check".into());
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn is_meta_line(line: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(line)
        .ok()
        .and_then(|v| v.get("meta").cloned())
        .is_some()
}
