//! Command-line front end. [`run_with_io`] is the testable entry point;
//! the `lbl` binary forwards to [`run`].

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;

use crate::appendix::{self, AdmissibleSpace, LambdaSequence};
use crate::atlas::{format_point, parse_germ_spec, parse_point_spec, AtlasSpace, DistanceError, RootSpec};
use crate::axioms::{self, Condition, ProbeConfig};
use crate::retraction::Retraction;
use crate::scalars::{parse_rational, LambdaScalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lbl", version, about = "Exact checks for spaces modeled on affine Lambda-apartments")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Probe budget (pairs, triples, germs or centers per check).
    #[arg(long, global = true)]
    pub probes: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Positive factor applied to the metric, written p/q.
    #[arg(long, global = true)]
    pub scale: Option<String>,
    /// Rank k of the value group Q^k for generated spaces.
    #[arg(long = "lambda-rank", global = true, default_value_t = 1)]
    pub lambda_rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one condition.
    Check { input: PathBuf, condition: String },
    /// Check every condition and audit the implications between them.
    CheckAll { input: PathBuf },
    /// Distance between two points given as CHART:COORDS.
    Distance {
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Retract a point onto a chart from a chamber germ CHART:COORDS:W.
    Retract {
        input: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        germ: String,
        #[arg(long)]
        point: String,
    },
    /// Germs at a point and the charts containing them.
    Residue {
        input: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Emit the glued triangle atlas.
    Counterexample {
        #[arg(long = "type")]
        root_type: String,
        #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["S1", "S2", "S3"])]
        sides: Vec<String>,
    },
    /// Run extension rounds and emit the resulting atlas.
    Extend {
        input: PathBuf,
        /// First radius; defaults to the one stored in the file.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
    },
    /// Check (T0)-(T3) at a radius.
    Admissible {
        input: PathBuf,
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Debug)]
struct Malformed(String);

impl<E: std::error::Error> From<E> for Malformed {
    fn from(e: E) -> Self {
        Malformed(e.to_string())
    }
}

/// Runs the CLI with the process arguments and standard streams.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, out) {
        Ok(code) => code,
        Err(Malformed(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_MALFORMED
        }
    }
}

fn probe_config(g: &GlobalOpts) -> ProbeConfig {
    let mut c = ProbeConfig::from_env();
    if let Some(b) = g.probes {
        c.budget = b;
    }
    c.seed = g.seed;
    c
}

fn load(path: &PathBuf, g: &GlobalOpts, stdin: &mut dyn Read) -> Result<AtlasSpace, Malformed> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))?
    };
    let space = AtlasSpace::from_json(&text).map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    match &g.scale {
        None => Ok(space),
        Some(s) => {
            let q = parse_rational(s).map_err(|e| Malformed(format!("--scale: {e}")))?;
            if !q.is_positive() {
                return Err(Malformed(format!("--scale: {s} is not positive")));
            }
            Ok(space.with_metric_scale(q))
        }
    }
}

/// `q` or `q1;q2;...`; a single component is padded with zeros.
fn parse_scalar(text: &str, k: usize, what: &str) -> Result<LambdaScalar, Malformed> {
    let comps = text
        .split(';')
        .map(parse_rational)
        .collect::<Result<Vec<BigRational>, _>>()
        .map_err(|e| Malformed(format!("{what} `{text}`: {e}")))?;
    match comps.len() {
        n if n == k => Ok(LambdaScalar::new(comps)),
        1 => Ok(LambdaScalar::from_rational(comps.into_iter().next().expect("one"), k)),
        n => Err(Malformed(format!("{what} `{text}`: {n} components, lex rank is {k}"))),
    }
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), Malformed> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json values serialize"))?;
    Ok(())
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Malformed> {
    let g = &cli.global;
    if g.lambda_rank == 0 {
        return Err(Malformed("--lambda-rank must be at least 1".into()));
    }
    let config = probe_config(g);
    match &cli.command {
        Command::Check { input, condition } => {
            let space = load(input, g, stdin)?;
            let cond: Condition = condition.parse().map_err(Malformed)?;
            let r = axioms::check(&space, cond, &config)?;
            match g.format {
                Format::Json => write_json(out, &r.to_json(&space))?,
                Format::Text => {
                    write!(out, "{:<4}{}", r.condition, r.verdict)?;
                    if let Some(w) = &r.witness {
                        write!(out, "  {}", w.to_json(&space))?;
                    }
                    writeln!(out)?;
                    for n in &r.notes {
                        writeln!(out, "  note: {n}")?;
                    }
                }
            }
            Ok(if r.verdict.is_fail() { EXIT_FAIL } else { EXIT_OK })
        }
        Command::CheckAll { input } => {
            let space = load(input, g, stdin)?;
            let r = axioms::check_all(&space, &config)?;
            match g.format {
                Format::Json => write_json(out, &r.to_json(&space))?,
                Format::Text => write!(out, "{}", r.to_text(&space))?,
            }
            Ok(if r.any_fail() { EXIT_FAIL } else { EXIT_OK })
        }
        Command::Distance { input, from, to } => {
            let space = load(input, g, stdin)?;
            let (c, x) = parse_point_spec(&space, from)?;
            let (d, y) = parse_point_spec(&space, to)?;
            let x = space.canonical_point(c, &x)?;
            let y = space.canonical_point(d, &y)?;
            let result = space.distance_x(&x, &y)?;
            let charts: Vec<&str> = space
                .common_apartments(&x, &y)?
                .into_iter()
                .map(|c| space.chart_name(c))
                .collect();
            match (&result, g.format) {
                (Ok(dist), Format::Text) => writeln!(out, "{dist}")?,
                (Err(e), Format::Text) => writeln!(out, "undefined: {e}")?,
                (_, Format::Json) => write_json(
                    out,
                    &json!({
                        "from": space.format_xpoint(&x),
                        "to": space.format_xpoint(&y),
                        "distance": result.as_ref().ok(),
                        "error": result.as_ref().err().map(DistanceError::to_string),
                        "common_apartments": charts,
                        "metric_scale": crate::scalars::rational_to_string(space.metric_scale()),
                    }),
                )?,
            }
            Ok(if result.is_ok() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Retract {
            input,
            target,
            germ,
            point,
        } => {
            let space = load(input, g, stdin)?;
            let t = space
                .chart_id(target)
                .ok_or_else(|| Malformed(format!("--target: unknown chart `{target}`")))?;
            let mu = parse_germ_spec(&space, germ)?;
            let (c, y) = parse_point_spec(&space, point)?;
            let y = space.canonical_point(c, &y)?;
            let r = Retraction::new(&space, t, &mu)?;
            let (image, route) = r.retract_with_route(&y)?;
            match g.format {
                Format::Text => writeln!(out, "{}:{}", space.chart_name(t), format_point(&image))?,
                Format::Json => write_json(
                    out,
                    &json!({
                        "point": space.format_xpoint(&y),
                        "target": space.chart_name(t),
                        "center": mu.describe(&space),
                        "image": image,
                        "route": route,
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Residue { input, at } => {
            let space = load(input, g, stdin)?;
            let (c, x) = parse_point_spec(&space, at)?;
            let x = space.canonical_point(c, &x)?;
            let res = space.residue(&x)?;
            let n = res.chamber_count();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let all_co = pairs.iter().all(|&(a, b)| res.co_apartment(a, b));
            match g.format {
                Format::Text => {
                    writeln!(out, "residue at {}: {n} chambers", space.format_xpoint(&x))?;
                    for (i, ch) in res.chambers.iter().enumerate() {
                        writeln!(out, "  [{i}] {}", ch.describe(&space))?;
                    }
                    for a in &res.apartments {
                        writeln!(out, "  apartment {}: chambers {:?}", space.chart_name(a.chart), a.chambers)?;
                    }
                    writeln!(out, "every pair co-apartment: {}", if all_co { "yes" } else { "no" })?;
                }
                Format::Json => write_json(
                    out,
                    &json!({
                        "at": space.format_xpoint(&x),
                        "chambers": res.chambers.iter().map(|c| c.describe(&space)).collect::<Vec<_>>(),
                        "apartments": res.apartments.iter().map(|a| json!({
                            "chart": space.chart_name(a.chart),
                            "chambers": a.chambers,
                        })).collect::<Vec<_>>(),
                        "adjacency": res.adjacency,
                        "all_pairs_co_apartment": all_co,
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Counterexample { root_type, sides } => {
            let k = g.lambda_rank;
            let s: Vec<LambdaScalar> = sides
                .iter()
                .map(|t| parse_scalar(t, k, "--sides"))
                .collect::<Result<_, _>>()?;
            let sides = [s[0].clone(), s[1].clone(), s[2].clone()];
            let space = appendix::triangle_counterexample(RootSpec::Type(root_type.clone()), sides, k)?;
            writeln!(out, "{}", space.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Extend { input, lambda, rounds } => {
            let space = load(input, g, stdin)?;
            let first = lambda
                .as_deref()
                .map(|l| parse_scalar(l, space.lambda_rank(), "--lambda"))
                .transpose()?;
            let s = AdmissibleSpace::resume(space, first)?;
            let s = appendix::iterate(&s, *rounds)?;
            writeln!(out, "{}", s.space().to_json())?;
            Ok(EXIT_OK)
        }
        Command::Admissible { input, lambda } => {
            let space = load(input, g, stdin)?;
            let l = parse_scalar(lambda, space.lambda_rank(), "--lambda")?;
            LambdaSequence::new(l.clone())?;
            let r = appendix::is_admissible(&space, &l, &config)?;
            match g.format {
                Format::Text => writeln!(out, "{r}")?,
                Format::Json => write_json(out, &r.to_json())?,
            }
            Ok(if r.ok() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
