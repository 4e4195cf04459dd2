//! Command-line surface for the body constructions, toric slice volumes,
//! valuations, witness certificates, and the full verification suite.
//!
//! Exit codes: 0 on success (and when every verification check passes),
//! 1 when a verification check fails (the report is still emitted),
//! 2 on usage errors including malformed rationals and polynomials.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use okounkov::{
    bodies, construct_qd, default_samples, export, flag_valuation, mult_at_point, parse_rat,
    sample_flag, seeded_rng, simplex_body, slice_volume_csv, threefold_body, threefold_witnesses,
    trapezoid_body, verify_body, volume_integral, BoxProductClass, CandidateBody, HomoPoly,
    LinearFlag, MembershipCertificate, ProjPoint, QPolytope, Rat, ToricSliceDivisor,
};

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Off,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlagChoice {
    Identity,
    Random,
}

#[derive(Parser)]
#[command(
    name = "okounkov",
    version,
    about = "Exact constructions, slices, and verification of Newton-Okounkov bodies of box products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; off needs a 3-dimensional body, svg a 2-dimensional one
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The simplex body for n unit degrees
    Simplex {
        #[arg(long)]
        n: usize,
    },
    /// The isosceles trapezoid body for two sorted degrees
    Trapezoid {
        /// Degrees d1 >= d2 > 0, as integers or fractions p/q
        #[arg(long, num_args = 2, value_parser = rat_arg)]
        d: Vec<Rat>,
    },
    /// The nine-point threefold body for three sorted degrees
    Threefold {
        #[arg(long, num_args = 3, value_parser = rat_arg)]
        d: Vec<Rat>,
    },
    /// The divisor polytope of a toric slice at parameter t
    ToricSlice {
        #[arg(long, num_args = 2.., value_parser = rat_arg)]
        d: Vec<Rat>,
        #[arg(long, value_parser = rat_arg)]
        t: Rat,
        /// Emit the translate sitting in the nonnegative orthant instead
        #[arg(long)]
        translated: bool,
    },
    /// Exact slice volume at t, or the sampled (t, volume) table without t
    SliceVolume {
        #[arg(long, num_args = 2.., value_parser = rat_arg)]
        d: Vec<Rat>,
        #[arg(long, value_parser = rat_arg)]
        t: Option<Rat>,
    },
    /// Integral of the slice volume over the whole parameter range
    Integral {
        #[arg(long, num_args = 2.., value_parser = rat_arg)]
        d: Vec<Rat>,
    },
    /// Flag valuation of a polynomial divisor
    Valuate {
        /// Polynomial in the form "x1*x3 - x2^2"
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = FlagChoice::Identity)]
        flag: FlagChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiplicity of a polynomial divisor at a projective point
    Mult {
        #[arg(long)]
        poly: String,
        /// Colon-separated homogeneous coordinates, e.g. 1:0:0
        #[arg(long)]
        point: String,
    },
    /// The seven threefold witness certificates
    Witnesses {
        /// Positive integer degrees d1 >= d2 >= d3
        #[arg(long, num_args = 3)]
        d: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The witness section certifying the simplex vertex (deg, deg * e_deg)
    Qd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the full verification suite for a candidate body
    Verify {
        /// Sorted degrees: two for the trapezoid, three for the threefold,
        /// all ones for a simplex
        #[arg(long, num_args = 1.., value_parser = rat_arg)]
        d: Option<Vec<Rat>>,
        /// Dimension of the simplex body (degrees all 1)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, content: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            file.write_all(content.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn body_text(kind: &str, degrees: &[Rat], p: &QPolytope) -> String {
    let mut out = String::new();
    out.push_str(&format!("body: {kind}\n"));
    out.push_str(&format!(
        "degrees: {}\n",
        degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out.push_str("vertices:\n");
    for v in p.vertices() {
        out.push_str(&format!("  {v}\n"));
    }
    out.push_str(&format!("volume: {}\n", p.volume()));
    out
}

fn emit_polytope(cli: &Cli, kind: &str, degrees: &[Rat], p: &QPolytope) -> Result<(), String> {
    let content = match cli.format {
        Format::Text => body_text(kind, degrees, p),
        Format::Json => format!("{:#}\n", p.to_json()),
        Format::Off => export::off_3d(p).map_err(|e| e.to_string())?,
        Format::Svg => export::svg_2d(p).map_err(|e| e.to_string())?,
        Format::Csv => return Err("csv is not a polytope format".into()),
    };
    emit(cli, &content)
}

fn certificate_text(i: usize, c: &MembershipCertificate) -> String {
    let divisor = c
        .divisor
        .iter()
        .map(|(w, p)| format!("{w} * ({p})"))
        .collect::<Vec<_>>()
        .join(" + ");
    format!(
        "witness {i}: t = {}, valuation {}, point {}, margins {:?}\n  divisor: {divisor}\n",
        c.t, c.flag_val, c.point, c.margins
    )
}

fn parse_point(s: &str) -> Result<ProjPoint, String> {
    let coords: Result<Vec<Rat>, String> = s.split(':').map(rat_arg).collect();
    ProjPoint::new(coords?).map_err(|e| e.to_string())
}

fn build_verify_target(d: &Option<Vec<Rat>>, n: &Option<usize>) -> Result<CandidateBody, String> {
    match (d, n) {
        (None, Some(n)) => {
            if *n == 0 {
                return Err("--n must be at least 1".into());
            }
            Ok(simplex_body(*n))
        }
        (Some(d), maybe_n) => {
            if let Some(n) = maybe_n {
                if *n != d.len() {
                    return Err(format!("--n {n} disagrees with {} degrees", d.len()));
                }
            }
            let class = BoxProductClass::new(d.clone()).map_err(|e| e.to_string())?;
            class.candidate_body().map_err(|e| e.to_string())
        }
        (None, None) => Err("verify needs --d or --n".into()),
    }
}

fn integer_degrees(degrees: &[Rat]) -> Option<Vec<u32>> {
    degrees
        .iter()
        .map(|d| okounkov::rat::to_integer(d).and_then(|i| u32::try_from(i).ok()))
        .collect()
}

fn positive(degrees: &[Rat]) -> Result<(), String> {
    if degrees.iter().any(|x| !num_traits::Signed::is_positive(x)) {
        Err("degrees must be positive".into())
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Simplex { n } => {
            if *n == 0 {
                return Err("--n must be at least 1".into());
            }
            let body = simplex_body(*n);
            emit_polytope(cli, "simplex", &body.degrees, &body.body)?;
        }
        Command::Trapezoid { d } => {
            let body = trapezoid_body(&d[0], &d[1]).map_err(|e| e.to_string())?;
            emit_polytope(cli, "trapezoid", &body.degrees, &body.body)?;
        }
        Command::Threefold { d } => {
            let body = threefold_body(&d[0], &d[1], &d[2]).map_err(|e| e.to_string())?;
            emit_polytope(cli, "threefold", &body.degrees, &body.body)?;
        }
        Command::ToricSlice { d, t, translated } => {
            let divisor =
                ToricSliceDivisor::new(d.clone(), t.clone()).map_err(|e| e.to_string())?;
            let p = if *translated {
                divisor.translated_polytope()
            } else {
                divisor.polytope()
            };
            emit_polytope(cli, "toric-slice", d, &p)?;
        }
        Command::SliceVolume { d, t } => match t {
            Some(t) => {
                let divisor =
                    ToricSliceDivisor::new(d.clone(), t.clone()).map_err(|e| e.to_string())?;
                let v = divisor.slice_volume();
                let content = match cli.format {
                    Format::Json => format!(
                        "{:#}\n",
                        serde_json::json!({ "t": t.to_string(), "volume": v.to_string() })
                    ),
                    _ => format!("{v}\n"),
                };
                emit(cli, &content)?;
            }
            None => {
                positive(d)?;
                match cli.format {
                    Format::Text | Format::Csv => emit(cli, &slice_volume_csv(d))?,
                    _ => return Err("the sampled table is emitted as csv".into()),
                }
            }
        },
        Command::Integral { d } => {
            positive(d)?;
            let v = volume_integral(d);
            emit(cli, &format!("{v}\n"))?;
        }
        Command::Valuate { poly, flag, seed } => {
            let parsed = HomoPoly::parse(poly, None).map_err(|e| e.to_string())?;
            let n = parsed.nvars().max(2);
            let p = HomoPoly::parse(poly, Some(n)).map_err(|e| e.to_string())?;
            let flag = match flag {
                FlagChoice::Identity => LinearFlag::identity(n),
                FlagChoice::Random => {
                    sample_flag(n, &mut seeded_rng(*seed)).map_err(|e| e.to_string())?
                }
            };
            let nu = flag_valuation(&p, &flag).map_err(|e| e.to_string())?;
            emit(cli, &format!("{nu}\n"))?;
        }
        Command::Mult { poly, point } => {
            let pt = parse_point(point)?;
            let p = HomoPoly::parse(poly, Some(pt.dim())).map_err(|e| e.to_string())?;
            let m = mult_at_point(&p, &pt).map_err(|e| e.to_string())?;
            emit(cli, &format!("{m}\n"))?;
        }
        Command::Witnesses { d, seed } => {
            let certs = threefold_witnesses(d[0], d[1], d[2], *seed).map_err(|e| e.to_string())?;
            let content = match cli.format {
                Format::Json => {
                    let arr: Vec<serde_json::Value> = certs.iter().map(|c| c.to_json()).collect();
                    format!("{:#}\n", serde_json::Value::Array(arr))
                }
                Format::Text => certs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| certificate_text(i + 1, c))
                    .collect(),
                _ => return Err("witnesses are emitted as text or json".into()),
            };
            emit(cli, &content)?;
        }
        Command::Qd { n, deg, seed } => {
            let cert = construct_qd(*n, *deg, *seed).map_err(|e| e.to_string())?;
            let content = match cli.format {
                Format::Json => format!("{:#}\n", cert.to_json()),
                Format::Text => certificate_text(1, &cert),
                _ => return Err("certificates are emitted as text or json".into()),
            };
            emit(cli, &content)?;
        }
        Command::Verify { d, n, seed } => {
            let body = build_verify_target(d, n)?;
            let degrees = body.degrees.clone();
            let mut certs: Vec<MembershipCertificate> = Vec::new();
            match body.kind {
                bodies::BodyKind::Simplex if degrees.len() >= 2 => {
                    for k in 1..=degrees.len() {
                        certs.push(
                            construct_qd(degrees.len(), k, *seed).map_err(|e| e.to_string())?,
                        );
                    }
                }
                bodies::BodyKind::Threefold => {
                    if let Some(ints) = integer_degrees(&degrees) {
                        certs = threefold_witnesses(ints[0], ints[1], ints[2], *seed)
                            .map_err(|e| e.to_string())?;
                    }
                }
                _ => {}
            }
            let report = verify_body(&body, &default_samples(&degrees), &certs);
            let content = match cli.format {
                Format::Json => format!("{:#}\n", report.to_json()),
                _ => {
                    let mut out = String::new();
                    for c in &report.checks {
                        out.push_str(&format!(
                            "{} {} ({})\n",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.details
                        ));
                    }
                    out.push_str(&format!(
                        "{}: {} checks\n",
                        if report.passed() { "PASS" } else { "FAIL" },
                        report.checks.len()
                    ));
                    out
                }
            };
            emit(cli, &content)?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
