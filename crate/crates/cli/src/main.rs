use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Like `print!`, but a closed stdout (e.g. piping into `head`) ends the
/// process quietly instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        write_stdout(format_args!($($arg)*))
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        write_stdout(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn write_stdout(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gradedflip_core::algebra::{Block, Field, Polynomial};
use gradedflip_core::cohomology::{
    build_cech, canonical_vanishing_check, cohomology_table, duality_check, CohomologyTable, Side,
};
use gradedflip_core::complexes::{koszul_complex, nonpositive_presentation_check, TorWeights};
use gradedflip_core::grobner::{quotient_dimension, Dimension, GroebnerError, DEFAULT_BUDGET};
use gradedflip_core::report::{
    default_weight_range, render_table, run_suite, RunReport, SuiteConfig, EXIT_BUDGET, EXIT_FAIL,
    EXIT_INPUT, EXIT_PASS, SCHEMA_VERSION,
};
use gradedflip_core::ring_spec::{
    flip_invariants, parse_ring_spec, validate_ci_assumptions, CiLevel, RingSpec,
};
use gradedflip_core::verdict::{Check, Verdict};
use gradedflip_core::windows::{
    functor_euler_check, functor_image, window_generators, WindowError,
};

#[derive(Parser)]
#[command(
    name = "gradedflip",
    version,
    about = "Exact checks for Z-graded flips and flops"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Step budget for Groebner computations.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Override the coefficient field of the input (Q or GF:<p>).
    #[arg(long, global = true)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Ring description file.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the ring and check the complete-intersection hypotheses.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        ci_level: u8,
    },
    /// Krull dimension of A, and of A/I+ with --quotient-plus.
    Dim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quotient_plus: bool,
    },
    /// Ranks and generator weights of the Koszul complex of the relations.
    Koszul {
        #[command(flatten)]
        input: Input,
    },
    /// Check that the Koszul resolution is generated in weights <= 0.
    Nonpositive {
        #[command(flatten)]
        input: Input,
    },
    /// Weightwise local cohomology table of A along I+ or I-.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        side: Side,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        weights: Option<RangeInclusive<i64>>,
    },
    /// Canonical vanishing of both local cohomology tables at the shift a.
    Vanishing {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        weights: Option<RangeInclusive<i64>>,
    },
    /// Degreewise duality between the plus and minus tables.
    Duality {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        weights: Option<RangeInclusive<i64>>,
    },
    /// Generators of the window with cutoff w.
    Window {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        w: i64,
        #[arg(long, default_value = "plus")]
        side: Side,
    },
    /// Free presentation of the functor image of O(i).
    FunctorImage {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        twist: i64,
        /// Cancel unit entries before printing.
        #[arg(long)]
        minimize: bool,
    },
    /// Run every applicable check.
    Suite {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        weights: Option<RangeInclusive<i64>>,
        /// Comma-separated twists for functor images.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        twists: Option<Vec<i64>>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// A failure that maps to a nonzero exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn load(path: &Path, field: Option<Field>) -> Result<RingSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let spec =
        parse_ring_spec(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    match field {
        Some(f) if f != spec.field => {
            let relations: Vec<Polynomial> = spec.relation_polys();
            let mut out = RingSpec::new(f, spec.weighting.clone(), relations, spec.kind)
                .map_err(|e| Failure::input(format!("{}: over {f}: {e}", path.display())))?;
            out.template = spec.template;
            Ok(out)
        }
        _ => Ok(spec),
    }
}

fn print_report(report: &RunReport, json: bool) -> i32 {
    if json {
        outln!("{}", report.to_json());
    } else {
        out!("{}", report.render_text());
    }
    report.exit_code()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code as u8)
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { input, ci_level } => {
            let spec = load(&input.file, cli.field)?;
            let mut report = RunReport::new(&spec, "validate");
            report.push(Check::new(
                "spec valid",
                Verdict::Pass,
                format!(
                    "p={} q={} r={} s={}",
                    spec.p(),
                    spec.q(),
                    spec.r(),
                    spec.s()
                ),
            ));
            let level = CiLevel::from_number(*ci_level).expect("range checked by clap");
            let ci = validate_ci_assumptions(&spec, level, cli.budget);
            report.extend(ci.checks().into_iter().cloned());
            report.insert("ci", &ci);
            Ok(print_report(&report, json))
        }
        Command::Dim {
            input,
            quotient_plus,
        } => {
            let spec = load(&input.file, cli.field)?;
            dim(&spec, *quotient_plus, cli.budget, json)
        }
        Command::Koszul { input } => {
            let spec = load(&input.file, cli.field)?;
            let k = koszul_complex(&spec).map_err(|e| Failure::input(e.to_string()))?;
            let tor = TorWeights::of(&k);
            if json {
                #[derive(Serialize)]
                struct Out {
                    schema: u32,
                    ranks: Vec<usize>,
                    tor_weights: TorWeights,
                    complex: gradedflip_core::complexes::ComplexData,
                }
                let out = Out {
                    schema: SCHEMA_VERSION,
                    ranks: k.ranks(),
                    tor_weights: tor,
                    complex: k.data(),
                };
                outln!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializes")
                );
            } else {
                outln!("ranks {:?}", k.ranks());
                outln!("Tor weights {tor}");
                outln!("{}", k.display());
            }
            Ok(EXIT_PASS)
        }
        Command::Nonpositive { input } => {
            let spec = load(&input.file, cli.field)?;
            let ci = validate_ci_assumptions(&spec, CiLevel::One, cli.budget);
            let mut report = RunReport::new(&spec, "nonpositive");
            report.push(ci.complete_intersection.clone());
            match nonpositive_presentation_check(&spec, &ci) {
                Ok(np) => {
                    report.insert("tor_weights", &np.tor_weights);
                    report.push(np.check);
                }
                Err(e) => report.push(Check::new(
                    "Tor weights <= 0",
                    Verdict::Undetermined,
                    e.to_string(),
                )),
            }
            Ok(print_report(&report, json))
        }
        Command::Cohomology {
            input,
            side,
            weights,
        } => {
            let spec = load(&input.file, cli.field)?;
            let weights = weights
                .clone()
                .unwrap_or_else(|| default_weight_range(&spec));
            let table = build_cech(&spec, *side, true)
                .and_then(|cx| cohomology_table(&cx, weights))
                .map_err(|e| Failure::input(e.to_string()))?;
            if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    schema: u32,
                    #[serde(flatten)]
                    table: &'a CohomologyTable,
                }
                let out = Out {
                    schema: SCHEMA_VERSION,
                    table: &table,
                };
                outln!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializes")
                );
            } else {
                out!("{}", render_table(&table));
            }
            Ok(if table.complete {
                EXIT_PASS
            } else {
                EXIT_BUDGET
            })
        }
        Command::Vanishing { input, weights } => {
            let spec = load(&input.file, cli.field)?;
            let weights = weights
                .clone()
                .unwrap_or_else(|| default_weight_range(&spec));
            let a = flip_invariants(&spec).a.ok_or_else(|| {
                Failure::input("the canonical shift is undetermined for this ring")
            })?;
            let tables = [Side::Plus, Side::Minus].map(|side| {
                build_cech(&spec, side, true).and_then(|cx| cohomology_table(&cx, weights.clone()))
            });
            let [plus, minus] = tables;
            let (plus, minus) = (
                plus.map_err(|e| Failure::input(e.to_string()))?,
                minus.map_err(|e| Failure::input(e.to_string()))?,
            );
            let v = canonical_vanishing_check(&plus, &minus, a);
            let mut report = RunReport::new(&spec, "vanishing");
            report.insert("vanishing", &v);
            report.push(v.check);
            Ok(print_report(&report, json))
        }
        Command::Duality { input, weights } => {
            let spec = load(&input.file, cli.field)?;
            if !spec.is_polynomial_ring() {
                return Err(Failure::input("duality tables need a polynomial ring"));
            }
            let weights = weights
                .clone()
                .unwrap_or_else(|| default_weight_range(&spec));
            let a = flip_invariants(&spec)
                .a
                .expect("polynomial rings have a shift");
            let d = duality_check(&spec.weighting, spec.field, a, weights)
                .map_err(|e| Failure::input(e.to_string()))?;
            let mut report = RunReport::new(&spec, "duality");
            report.insert("duality", &d);
            report.push(d.check);
            Ok(print_report(&report, json))
        }
        Command::Window { input, w, side } => {
            let spec = load(&input.file, cli.field)?;
            let ws =
                window_generators(&spec, *w, *side).map_err(|e| Failure::input(e.to_string()))?;
            if json {
                outln!("{}", serde_json::to_string_pretty(&ws).expect("serializes"));
            } else {
                outln!("{{{}}}", ws.labels().join(", "));
                if let Some(note) = &ws.note {
                    outln!("note: {note}");
                }
            }
            Ok(EXIT_PASS)
        }
        Command::FunctorImage {
            input,
            twist,
            minimize,
        } => {
            let spec = load(&input.file, cli.field)?;
            let mut img = functor_image(&spec, *twist).map_err(|e| match e {
                WindowError::TwistTooNegative { .. } => Failure {
                    code: EXIT_FAIL,
                    message: e.to_string(),
                },
                other => Failure::input(other.to_string()),
            })?;
            if *minimize {
                img = img.minimize();
            }
            let euler = spec
                .is_polynomial_ring()
                .then(|| functor_euler_check(&spec, &img, 3).check);
            if json {
                #[derive(Serialize)]
                struct Out {
                    schema: u32,
                    twist: i64,
                    minimized: bool,
                    ranks: Vec<usize>,
                    complex: gradedflip_core::complexes::ComplexData,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    euler: Option<Check>,
                }
                let out = Out {
                    schema: SCHEMA_VERSION,
                    twist: img.twist,
                    minimized: img.minimized,
                    ranks: img.complex.ranks(),
                    complex: img.complex.data(),
                    euler: euler.clone(),
                };
                outln!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializes")
                );
            } else {
                outln!("{}", img.complex.display());
                outln!("ranks {:?}", img.complex.ranks());
                if let Some(c) = &euler {
                    outln!("{c}");
                }
            }
            Ok(match euler.map(|c| c.verdict) {
                Some(Verdict::Fail) => EXIT_FAIL,
                _ => EXIT_PASS,
            })
        }
        Command::Suite {
            input,
            weights,
            twists,
            timing,
        } => {
            let spec = load(&input.file, cli.field)?;
            let config = SuiteConfig {
                weights: weights.clone(),
                functor_twists: twists.clone(),
                budget: cli.budget,
                timing: *timing,
                ..SuiteConfig::default()
            };
            Ok(print_report(&run_suite(&spec, &config), json))
        }
    }
}

fn dim(spec: &RingSpec, quotient_plus: bool, budget: u64, json: bool) -> Result<i32, Failure> {
    let budget_failure = |e: GroebnerError| match e {
        GroebnerError::BudgetExceeded { .. } => Failure {
            code: EXIT_BUDGET,
            message: e.to_string(),
        },
        other => Failure::input(other.to_string()),
    };
    let relations = spec.relation_polys();
    let dim_a =
        quotient_dimension(spec.nvars(), &relations, spec.field, budget).map_err(budget_failure)?;
    let dim_plus = if quotient_plus {
        let mut gens = relations;
        gens.extend(
            spec.weighting
                .indices(Block::Positive)
                .into_iter()
                .map(|i| Polynomial::var(spec.nvars(), i)),
        );
        Some(quotient_dimension(spec.nvars(), &gens, spec.field, budget).map_err(budget_failure)?)
    } else {
        None
    };
    if json {
        #[derive(Serialize)]
        struct Out {
            schema: u32,
            dim_a: Dimension,
            #[serde(skip_serializing_if = "Option::is_none")]
            dim_quotient_plus: Option<Dimension>,
        }
        let out = Out {
            schema: SCHEMA_VERSION,
            dim_a,
            dim_quotient_plus: dim_plus,
        };
        outln!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializes")
        );
    } else {
        outln!("dim(A) = {dim_a}");
        if let Some(d) = dim_plus {
            outln!("dim(A/I+) = {d}");
        }
    }
    Ok(EXIT_PASS)
}
