use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cvinfo::cm::parse_mode_list;
use cvinfo::entropy::{logdet_entropy, sqrt_det_entropy, von_neumann_entropy, EntropyKind};
use cvinfo::inequalities::{subadditivity_residual, triangle_residuals, tripartite_residuals};
use cvinfo::io::{cm_from_json, cm_to_json, fmt_num, round_sig, write_region_csv, SteeringReportJson};
use cvinfo::random::{random_williamson, DEFAULT_STRENGTH};
use cvinfo::region::{scan_region, GridSpec};
use cvinfo::steering::directional_steerability;
use cvinfo::symplectic::{is_bona_fide, purity, symplectic_spectrum, BONA_FIDE_TOL};
use cvinfo::{min_reid, monogamy_check, reid_product, CmError, CovarianceMatrix, Partition};
use serde_json::{json, Value};

/// Residual below which an inequality counts as violated.
const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "cvinfo", version, about = "Entropies, entropy inequalities and Gaussian steering of covariance matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random bona fide covariance matrix
    Gen {
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        seed: u64,
        /// Upper bound of the drawn symplectic eigenvalues (1 = pure state)
        #[arg(long, default_value_t = 1.0)]
        nu_max: f64,
        #[arg(long, default_value_t = DEFAULT_STRENGTH)]
        strength: f64,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bona fide verdict and symplectic spectrum
    Check { file: PathBuf },
    /// Entropy functionals H, M, D
    Entropy {
        file: PathBuf,
        #[arg(long)]
        kind: Option<EntropyKind>,
    },
    /// Subadditivity, strong subadditivity and triangle residuals
    Ssa {
        file: PathBuf,
        /// Groups of 1-based modes, e.g. "1;2;3,4"
        #[arg(long)]
        partition: String,
        #[arg(long, default_value = "M")]
        kind: EntropyKind,
    },
    /// Gaussian steerability from the measured modes
    Steer {
        file: PathBuf,
        /// 1-based steering modes, e.g. "1,2"
        #[arg(long)]
        measured: String,
        /// 1-based steered modes (default: all other modes)
        #[arg(long)]
        steered: Option<String>,
    },
    /// Monogamy of steering a single mode, partition "A;B;C"
    Monogamy {
        file: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Three-mode triangle regions as CSV
    Scan {
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 6.0)]
        max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reid product and its symplectic minimum for a two-mode state
    Reid { file: PathBuf },
}

enum Failure {
    Input(String),
    Io(io::Error),
}

impl From<CmError> for Failure {
    fn from(e: CmError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Whether every check the command ran held.
type Outcome = Result<bool, Failure>;

fn num(x: f64) -> Value {
    json!(round_sig(x, 12))
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn one_based(groups: &[Vec<usize>]) -> Value {
    json!(groups
        .iter()
        .map(|g| g.iter().map(|k| k + 1).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn load(path: &Path) -> Result<CovarianceMatrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    cm_from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut impl Write, value: &Value) -> io::Result<()> {
    writeln!(out, "{value}")
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Gen {
            modes,
            seed,
            nu_max,
            strength,
            out: path,
        } => {
            let (v, nus) = random_williamson(modes, seed, nu_max, strength)?;
            let text = cm_to_json(&v);
            let summary = json!({
                "modes": modes,
                "seed": seed,
                "nu_max": nu_max,
                "symplectic_spectrum": nums(&nus),
            });
            match path {
                Some(p) => {
                    fs::write(&p, text + "\n")?;
                    emit(out, &summary)?;
                }
                None => writeln!(out, "{text}")?,
            }
            Ok(true)
        }
        Command::Check { file } => {
            let v = load(&file)?;
            let spectrum = symplectic_spectrum(&v)?;
            let ok = is_bona_fide(&v, BONA_FIDE_TOL)?;
            emit(
                out,
                &json!({
                    "modes": v.modes(),
                    "bona_fide": ok,
                    "symplectic_spectrum": nums(spectrum.values()),
                    "purity": num(purity(&v)),
                }),
            )?;
            Ok(ok)
        }
        Command::Entropy { file, kind } => {
            let v = load(&file)?;
            match kind {
                Some(kind) => writeln!(out, "{}", fmt_num(kind.of(&v)?))?,
                None => {
                    let h = von_neumann_entropy(&v).ok().map(num).unwrap_or(Value::Null);
                    emit(
                        out,
                        &json!({
                            "H": h,
                            "M": num(logdet_entropy(&v)),
                            "D": num(sqrt_det_entropy(&v)),
                        }),
                    )?;
                }
            }
            Ok(true)
        }
        Command::Ssa {
            file,
            partition,
            kind,
        } => {
            let v = load(&file)?;
            let p = Partition::parse(&partition)?;
            p.validate(v.modes())?;
            match p.len() {
                3 => {
                    let r = tripartite_residuals(kind, &v, &p)?;
                    let ok = std::iter::once(r.ssa)
                        .chain([r.ssa_conditional])
                        .chain(r.triangle)
                        .all(|x| x >= -RESIDUAL_TOL);
                    emit(
                        out,
                        &json!({
                            "kind": kind,
                            "partition": one_based(p.groups()),
                            "ssa": num(r.ssa),
                            "ssa_conditional": num(r.ssa_conditional),
                            "triangle": nums(&r.triangle),
                        }),
                    )?;
                    Ok(ok)
                }
                2 => {
                    if kind != EntropyKind::LogDet {
                        return Err(Failure::Input(
                            "bipartite residuals are available for --kind M only".into(),
                        ));
                    }
                    let sub = subadditivity_residual(&v, &p)?;
                    let tri = triangle_residuals(&v, &p)?;
                    emit(
                        out,
                        &json!({
                            "kind": kind,
                            "partition": one_based(p.groups()),
                            "subadditivity": num(sub),
                            "triangle": num(tri),
                        }),
                    )?;
                    Ok(sub >= -RESIDUAL_TOL && tri >= -RESIDUAL_TOL)
                }
                k => Err(Failure::Input(format!(
                    "partition needs 2 or 3 groups, got {k}"
                ))),
            }
        }
        Command::Steer {
            file,
            measured,
            steered,
        } => {
            let v = load(&file)?;
            let a = parse_mode_list(&measured)?;
            let b = match steered {
                Some(text) => parse_mode_list(&text)?,
                None => (0..v.modes()).filter(|k| !a.contains(k)).collect(),
            };
            if b.iter().any(|k| a.contains(k)) {
                return Err(Failure::Input(
                    "steering and steered modes overlap".into(),
                ));
            }
            let report = directional_steerability(&v, &a, &b)?;
            emit(out, &serde_json::to_value(SteeringReportJson::from(&report)).unwrap())?;
            Ok(true)
        }
        Command::Monogamy { file, partition } => {
            let v = load(&file)?;
            let p = Partition::parse(&partition)?;
            let verdict = monogamy_check(&v, &p)?;
            emit(
                out,
                &json!({
                    "partition": one_based(p.groups()),
                    "g_ab": num(verdict.g_ab),
                    "g_cb": num(verdict.g_cb),
                    "product_of_conditionals": num(verdict.product_of_conditionals),
                    "consistent": verdict.consistent,
                }),
            )?;
            Ok(verdict.consistent)
        }
        Command::Scan { c, grid, max, out: path } => {
            let spec = GridSpec::new(1.0, max, grid)?;
            let points = scan_region(c, &spec, &spec)?;
            let nested = points.iter().all(|p| p.is_nested());
            match path {
                Some(p) => {
                    let file = fs::File::create(&p)?;
                    let mut writer = io::BufWriter::new(file);
                    write_region_csv(&mut writer, &points)?;
                    writer.flush()?;
                    let count = |f: fn(&cvinfo::RegionPoint) -> bool| points.iter().filter(|p| f(p)).count();
                    emit(
                        out,
                        &json!({
                            "points": points.len(),
                            "in_H": count(|p| p.in_h),
                            "in_M": count(|p| p.in_m),
                            "in_D": count(|p| p.in_d),
                            "nested": nested,
                        }),
                    )?;
                }
                None => write_region_csv(&mut *out, &points)?,
            }
            Ok(nested)
        }
        Command::Reid { file } => {
            let v = load(&file)?;
            let product = reid_product(&v)?;
            let minimum = min_reid(&v, &[0])?;
            emit(
                out,
                &json!({
                    "reid_product": num(product),
                    "min_reid": num(minimum),
                }),
            )?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
