//! The `extconvex` command line. [`run`] is the whole program; `main` only
//! wires it to the process streams.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calculus::{
    biconjugate, conjugate, dirderiv, infconv, subdiff_conjugate_check, subdiff_extended, young_fenchel_check,
    SubdiffConjugateReport, SubdiffDescription,
};
use crate::geometry::vec::P2;
use crate::geometry::ConvexPoly2;
use crate::io::{
    parse_point, read_json, DownValue, EvalOut, EvalPoint, InputError, SliceOut, SlicesOut, UpValue, YoungFenchelOut,
};
use crate::plot;
use crate::residuation::{check_equivalence, FiniteOrderedGroupoid, Mode};
use crate::scalar_fn::{DualElem, UpFunction};
use crate::setvalued::{
    properness, scalarize, sv_biconjugate, sv_conjugate, sv_minorant_conditions, DownSet, DualTriple, Properness,
    SetMinorantReport, SetValuedFn, SvFunction, UpSet,
};
use crate::suites::run_suite;

#[derive(Parser, Debug)]
#[command(name = "extconvex", version, about = "Extended-real and set-valued convex calculus")]
#[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Cases per law for randomized suites.
    #[arg(long, global = true, default_value_t = 1000)]
    pub iters: usize,
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = tol_arg)]
    pub tol: f64,
    /// Write an SVG rendering of inputs and results.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    /// Write sampled values (or set generators) as CSV.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Format of standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Inf,
    Sup,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Inf => Mode::Inf,
            ModeArg::Sup => Mode::Sup,
        }
    }
}

fn dual_arg(s: &str) -> Result<DualElem, String> {
    s.parse::<DualElem>().map_err(|e| e.to_string())
}

fn point_arg(s: &str) -> Result<P2, String> {
    parse_point(s)
}

fn finite_arg(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn tol_arg(s: &str) -> Result<f64, String> {
    let v = finite_arg(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be non-negative, got {v}"))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a function at one or more points.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
        #[arg(long, required = true, num_args = 1.., value_parser = finite_arg)]
        x: Vec<f64>,
    },
    /// Directional derivative g'(x0, x) of a convex function.
    #[command(allow_negative_numbers = true)]
    Dirderiv {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
        #[arg(long, value_parser = finite_arg)]
        x0: f64,
        #[arg(long, value_parser = finite_arg)]
        x: f64,
    },
    /// Extended subdifferential at x0, with its conjugate characterization.
    #[command(allow_negative_numbers = true)]
    Subdiff {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
        #[arg(long, value_parser = finite_arg)]
        x0: f64,
    },
    /// (xi, r)-conjugate g*(xi, r).
    #[command(allow_negative_numbers = true)]
    Conjugate {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
        /// `proper:<a>` or `hat:<a>`.
        #[arg(long, value_parser = dual_arg)]
        xi: DualElem,
        #[arg(long, value_parser = finite_arg)]
        r: f64,
    },
    /// Biconjugate g**.
    #[command(allow_negative_numbers = true)]
    Biconjugate {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
    },
    /// Infimal convolution of two convex functions.
    #[command(allow_negative_numbers = true)]
    Infconv {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
        #[arg(short = 'g', long = "gn")]
        g: PathBuf,
    },
    /// The three Young-Fenchel inequalities at one point.
    #[command(allow_negative_numbers = true)]
    YfCheck {
        #[arg(short = 'f', long = "fn")]
        f: PathBuf,
        #[arg(long, value_parser = dual_arg)]
        xi: DualElem,
        #[arg(long, value_parser = finite_arg)]
        r: f64,
        #[arg(long, value_parser = finite_arg)]
        x: f64,
    },
    /// Set difference A - B in the inf (upper sets) or sup (lower sets) lattice.
    #[command(allow_negative_numbers = true)]
    SetDiff {
        #[arg(short = 'a', long)]
        a: PathBuf,
        #[arg(short = 'b', long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Inf)]
        mode: ModeArg,
    },
    /// Set-valued conjugate at a dual triple.
    #[command(allow_negative_numbers = true)]
    SetConj {
        #[arg(short = 'g', long = "gn")]
        g: PathBuf,
        #[arg(long, value_parser = dual_arg)]
        xi: DualElem,
        #[arg(long, value_parser = finite_arg)]
        r: f64,
        /// `a,b` in the dual cone.
        #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
        zstar: P2,
    },
    /// Set-valued biconjugate at one or more points.
    #[command(allow_negative_numbers = true)]
    SetBiconj {
        #[arg(short = 'g', long = "gn")]
        g: PathBuf,
        #[arg(long, required = true, num_args = 1.., value_parser = finite_arg)]
        x: Vec<f64>,
    },
    /// Scalarization x -> inf{-z*.z : z in g(x)}.
    #[command(allow_negative_numbers = true)]
    Scalarize {
        #[arg(short = 'g', long = "gn")]
        g: PathBuf,
        #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
        zstar: P2,
    },
    /// Residuation conditions of a finite ordered groupoid.
    #[command(allow_negative_numbers = true)]
    LatticeCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Inf)]
        mode: ModeArg,
    },
    /// Properness of a set-valued function and, given a triple, the conaffine minorant conditions.
    #[command(allow_negative_numbers = true)]
    SetCheck {
        #[arg(short = 'g', long = "gn")]
        g: PathBuf,
        #[arg(long, value_parser = dual_arg, requires_all = ["r", "zstar"])]
        xi: Option<DualElem>,
        #[arg(long, value_parser = finite_arg)]
        r: Option<f64>,
        #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
        zstar: Option<P2>,
    },
    /// Run a randomized law suite.
    #[command(allow_negative_numbers = true)]
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Failure classes with their exit codes.
#[derive(Debug)]
enum Failure {
    /// Malformed or unusable input: exit 2.
    Input(String),
    /// A suite found counterexamples: exit 1.
    Suite,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn input<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{ctx}: {e}"))
}

/// What a command produced.
struct Output {
    /// Pretty JSON in field declaration order.
    text: String,
    json: serde_json::Value,
    /// Preferred CSV for `--format csv`; otherwise the JSON is flattened.
    csv: Option<String>,
    /// Rendering for `--plot` / `--csv <path>`.
    figure: Option<Figure>,
    /// A suite reported counterexamples.
    failed: bool,
}

enum Figure {
    Functions(String, Vec<(String, UpFunction)>),
    Sets(String, Vec<(String, ConvexPoly2)>),
}

impl Output {
    fn of<T: Serialize>(v: &T) -> Output {
        Output {
            text: serde_json::to_string_pretty(v).expect("results serialize") + "\n",
            json: serde_json::to_value(v).expect("results serialize"),
            csv: None,
            figure: None,
            failed: false,
        }
    }

    fn with_figure(mut self, f: Figure) -> Output {
        self.figure = Some(f);
        self
    }
}

fn load_fn(p: &Path) -> Result<UpFunction, Failure> {
    Ok(read_json(p)?)
}

fn load_sv(p: &Path) -> Result<SetValuedFn, Failure> {
    Ok(read_json(p)?)
}

fn fns(title: &str, v: Vec<(&str, UpFunction)>) -> Figure {
    Figure::Functions(title.to_string(), v.into_iter().map(|(n, f)| (n.to_string(), f)).collect())
}

fn sets(title: &str, v: Vec<(String, ConvexPoly2)>) -> Figure {
    Figure::Sets(title.to_string(), v)
}

#[derive(Serialize)]
struct SubdiffOut {
    subdiff: SubdiffDescription,
    conjugate_check: SubdiffConjugateReport,
}

#[derive(Serialize)]
struct SetCheckOut {
    properness: Properness,
    #[serde(skip_serializing_if = "Option::is_none")]
    minorant: Option<SetMinorantReport>,
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::Eval { f, x } => {
            let g = load_fn(f)?;
            let values: Vec<EvalPoint> = x.iter().map(|&x| EvalPoint { x, value: g.eval(x) }).collect();
            let mut csv = String::from("x,value\n");
            for p in &values {
                let _ = writeln!(csv, "{},{}", p.x, crate::io::fmt_up(p.value));
            }
            Output { csv: Some(csv), ..Output::of(&EvalOut { values }).with_figure(fns("eval", vec![("f", g)])) }
        }
        Command::Dirderiv { f, x0, x } => {
            let g = load_fn(f)?;
            let value = dirderiv(&g, *x0, *x).map_err(input(&f.display().to_string()))?;
            Output::of(&UpValue { value }).with_figure(fns("dirderiv", vec![("f", g)]))
        }
        Command::Subdiff { f, x0 } => {
            let g = load_fn(f)?;
            if !g.is_convex() {
                return Err(Failure::Input(format!("{}: function is not convex", f.display())));
            }
            let out = SubdiffOut {
                subdiff: subdiff_extended(&g, *x0),
                conjugate_check: subdiff_conjugate_check(&g, *x0, cli.tol),
            };
            Output::of(&out).with_figure(fns("subdiff", vec![("f", g)]))
        }
        Command::Conjugate { f, xi, r } => {
            let g = load_fn(f)?;
            Output::of(&DownValue { value: conjugate(&g, *xi, *r) }).with_figure(fns("conjugate", vec![("f", g)]))
        }
        Command::Biconjugate { f } => {
            let g = load_fn(f)?;
            let b = biconjugate(&g);
            Output::of(&b).with_figure(fns("biconjugate", vec![("f", g), ("f**", b)]))
        }
        Command::Infconv { f, g } => {
            let (a, b) = (load_fn(f)?, load_fn(g)?);
            let c = infconv(&a, &b).map_err(input("infconv"))?;
            Output::of(&c).with_figure(fns("infimal convolution", vec![("f", a), ("g", b), ("f box g", c)]))
        }
        Command::YfCheck { f, xi, r, x } => {
            let g = load_fn(f)?;
            let [a, b, c] = young_fenchel_check(&g, *xi, *r, *x);
            Output::of(&YoungFenchelOut { a, b, c })
        }
        Command::SetDiff { a, b, mode } => match mode {
            ModeArg::Inf => {
                let (p, q): (UpSet, UpSet) = (read_json(a)?, read_json(b)?);
                let d = p.idif(&q).map_err(input("set-diff"))?;
                let fig = sets(
                    "A - B",
                    vec![
                        ("A".into(), p.poly().clone()),
                        ("B".into(), q.poly().clone()),
                        ("A-B".into(), d.poly().clone()),
                    ],
                );
                Output::of(&d).with_figure(fig)
            }
            ModeArg::Sup => {
                let (p, q): (DownSet, DownSet) = (read_json(a)?, read_json(b)?);
                let d = p.sdif(&q).map_err(input("set-diff"))?;
                let fig = sets(
                    "A - B",
                    vec![
                        ("A".into(), p.poly().clone()),
                        ("B".into(), q.poly().clone()),
                        ("A-B".into(), d.poly().clone()),
                    ],
                );
                Output::of(&d).with_figure(fig)
            }
        },
        Command::SetConj { g, xi, r, zstar } => {
            let h = load_sv(g)?;
            let d = DualTriple::new(*xi, *r, *zstar, h.cone()).map_err(input("set-conj"))?;
            let s = sv_conjugate(&h, &d).map_err(input("set-conj"))?;
            Output::of(&s).with_figure(sets("g*", vec![("g*".into(), s.poly().clone())]))
        }
        Command::SetBiconj { g, x } => {
            let h = load_sv(g)?;
            let mut slices = Vec::new();
            let mut fig = Vec::new();
            for &x in x {
                let s = sv_biconjugate(&h, x).map_err(input("set-biconj"))?;
                fig.push((format!("g**({x})"), s.poly().clone()));
                fig.push((format!("g({x})"), h.slice(x).poly().clone()));
                slices.push(SliceOut { x, set: s });
            }
            Output::of(&SlicesOut { slices }).with_figure(sets("g** and g", fig))
        }
        Command::Scalarize { g, zstar } => {
            let h = load_sv(g)?;
            let phi = scalarize(&h, *zstar).map_err(input("scalarize"))?;
            Output::of(&phi).with_figure(fns("scalarization", vec![("phi", phi.clone())]))
        }
        Command::LatticeCheck { file, mode } => {
            let g: FiniteOrderedGroupoid = read_json(file)?;
            let rep = check_equivalence(&g, (*mode).into());
            let mut csv = String::from("condition,holds,witnesses\n");
            for c in &rep.reports {
                let _ = writeln!(csv, "{:?},{},{}", c.condition, c.holds, c.witnesses.len());
            }
            Output { csv: Some(csv), ..Output::of(&rep) }
        }
        Command::SetCheck { g, xi, r, zstar } => {
            let h = load_sv(g)?;
            let p = properness(&h).map_err(input("set-check"))?;
            let minorant = match (xi, r, zstar) {
                (Some(xi), Some(r), Some(z)) => {
                    let d = DualTriple::new(*xi, *r, *z, h.cone()).map_err(input("set-check"))?;
                    Some(sv_minorant_conditions(&h, &d).map_err(input("set-check"))?)
                }
                _ => None,
            };
            Output::of(&SetCheckOut { properness: p, minorant })
        }
        Command::Check { suite } => {
            let rep = run_suite(suite, cli.iters, cli.seed, cli.tol)
                .ok_or_else(|| Failure::Input(format!("unknown suite `{suite}`")))?;
            let mut csv = String::from("law,cases,failures\n");
            for l in &rep.laws {
                let _ = writeln!(csv, "\"{}\",{},{}", l.law.replace('"', "'"), l.cases, l.failures);
            }
            Output { csv: Some(csv), failed: !rep.passed, ..Output::of(&rep) }
        }
    })
}

/// `key,value` rows for the top-level fields of a JSON object.
fn flatten_csv(v: &serde_json::Value) -> String {
    let mut out = String::from("key,value\n");
    match v {
        serde_json::Value::Object(m) => {
            for (k, x) in m {
                let cell = match x {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string().replace('"', "'"),
                };
                let _ = writeln!(out, "{k},\"{cell}\"");
            }
        }
        other => {
            let _ = writeln!(out, "value,\"{}\"", other.to_string().replace('"', "'"));
        }
    }
    out
}

fn render(fig: &Figure) -> (String, String) {
    match fig {
        Figure::Functions(title, v) => {
            let named: Vec<(&str, &UpFunction)> = v.iter().map(|(n, f)| (n.as_str(), f)).collect();
            (plot::functions_svg(title, &named), plot::functions_csv(&named, 200))
        }
        Figure::Sets(title, v) => {
            let named: Vec<(&str, &ConvexPoly2)> = v.iter().map(|(n, p)| (n.as_str(), p)).collect();
            (plot::sets_svg(title, &named), plot::sets_csv(&named))
        }
    }
}

fn write_figure(cli: &Cli, fig: &Figure) -> Result<(), Failure> {
    let (svg, csv) = render(fig);
    if let Some(p) = &cli.plot {
        std::fs::write(p, svg).map_err(input(&p.display().to_string()))?;
    }
    if let Some(p) = &cli.csv {
        std::fs::write(p, csv).map_err(input(&p.display().to_string()))?;
    }
    Ok(())
}

/// Runs the program on `argv` (including the program name) and returns the
/// exit code: 0 on success, 1 when a suite fails, 2 on malformed input.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = execute(&cli);
    emit(&cli, result, out, err)
}

fn emit(cli: &Cli, result: Result<Output, Failure>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = result.and_then(|o| {
        if let Some(fig) = &o.figure {
            write_figure(cli, fig)?;
        }
        let text = match cli.format {
            Format::Json => o.text.clone(),
            Format::Csv => match (&o.csv, &o.figure) {
                (Some(c), _) => c.clone(),
                (None, Some(fig)) => render(fig).1,
                (None, None) => flatten_csv(&o.json),
            },
        };
        let _ = out.write_all(text.as_bytes());
        if o.failed {
            Err(Failure::Suite)
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Suite) => {
            let _ = writeln!(err, "suite failed; counterexamples are listed in the report");
            1
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_report_exits_one_after_printing() {
        let cli = Cli::try_parse_from(["extconvex", "check"]).unwrap();
        let o = Output { failed: true, ..Output::of(&serde_json::json!({"passed": false})) };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(emit(&cli, Ok(o), &mut out, &mut err), 1);
        assert!(String::from_utf8(out).unwrap().contains("\"passed\": false"));
        assert!(String::from_utf8(err).unwrap().contains("suite failed"));
    }

    #[test]
    fn input_failure_exits_two() {
        let cli = Cli::try_parse_from(["extconvex", "check"]).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(emit(&cli, Err(Failure::Input("x".into())), &mut out, &mut err), 2);
        assert!(out.is_empty());
    }

    #[test]
    fn negative_tolerance_is_rejected() {
        assert!(Cli::try_parse_from(["extconvex", "check", "--tol", "-1"]).is_err());
        assert!(Cli::try_parse_from(["extconvex", "check", "--tol", "0"]).is_ok());
    }
}
