use std::time::Instant;

use delta_springer::actions::{
    lines_basis, operator_matrix, verify_extremal, verify_hecke_relations, verify_stability, verify_typec, BasisKind, Generator,
    HeckeParams, RelationBasis,
};
use delta_springer::diagrams::{
    circle_diagram, enumerate_cup_diagrams, enumerate_weights, parse_diagram, render, DiagramRecord, Format, IntersectionClass, SCHEMA,
};
use delta_springer::homology::{betti, l_expand, LBasis};
use delta_springer::number::{format_rational, parse_rational};
use delta_springer::report::{Report, Status};
use delta_springer::specht::{decompose_homology_rep, theorem_summands, verify_specht};
use delta_springer::tensor::{commutant_dimension, commutant_dimension_with, equivariance_check, p_vector, GeneratorSet};
use delta_springer::{CupDiagram, DeltaWeight, Error, Mode, ShapeParams};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{BasisArg, Cli, Command, DiagramInput, ModeArg, OutputFormat, Shape, Suite, TensorCheck, TensorCommand};

pub const MAX_N_VAR: &str = "DELTA_SPRINGER_MAX_N";
pub const DEFAULT_MAX_N: usize = 16;

/// Why a run did not succeed. Maps one-to-one onto exit statuses 2 and 3.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::NotExpressible(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

/// Standard output of a successful run, and whether every check passed.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn max_n() -> Run<usize> {
    match std::env::var(MAX_N_VAR) {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{MAX_N_VAR}={v:?} is not a nonnegative integer"))),
    }
}

fn check_cap(n: usize) -> Run<()> {
    let cap = max_n()?;
    if n > cap {
        return Err(usage(format!("n = {n} exceeds the size cap {cap}; raise {MAX_N_VAR} to allow it")));
    }
    Ok(())
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Strict => Mode::Strict,
        ModeArg::Relaxed => Mode::Relaxed,
        ModeArg::AnyK => Mode::AnyK,
    }
}

fn shape(s: Shape, cli: &Cli) -> Run<ShapeParams> {
    check_cap(s.n)?;
    Ok(ShapeParams::with_mode(s.n, s.k, s.m, mode(cli.mode))?)
}

fn params_json(p: ShapeParams) -> Value {
    json!({ "n": p.n.to_string(), "k": p.k.to_string(), "m": p.m.to_string() })
}

fn weight(s: &str) -> Run<DeltaWeight> {
    let w = DeltaWeight::parse(s)?;
    check_cap(w.n())?;
    Ok(w)
}

fn read_arg(text: &str) -> Run<String> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

/// Weight strings contain only `v`, `^` and `|`; anything else is rendered diagram text.
fn diagram_text(text: &str) -> Run<CupDiagram> {
    let text = read_arg(text)?;
    let t = text.trim();
    let a = if !t.is_empty() && t.chars().all(|c| matches!(c, 'v' | 'V' | '^' | '|' | '∨' | '∧')) {
        weight(t)?.cup_diagram()
    } else {
        parse_diagram(&text)?
    };
    check_cap(a.n())?;
    Ok(a)
}

fn diagram_input(d: &DiagramInput) -> Run<CupDiagram> {
    match (&d.weight, &d.diagram) {
        (Some(w), None) => Ok(weight(w)?.cup_diagram()),
        (None, Some(t)) => diagram_text(t),
        _ => Err(usage("give exactly one of --weight and --diagram")),
    }
}

fn xi_for(spec: &str, p: ShapeParams) -> Run<HeckeParams> {
    let s = p.n - p.m;
    let xi = match spec.trim() {
        "springer" => HeckeParams::springer(p),
        "zero" => HeckeParams::zero(s),
        list => HeckeParams::new(list.split(',').map(|x| parse_rational(x.trim())).collect::<Result<_, _>>()?)?,
    };
    if xi.size() != s {
        return Err(usage(format!("ξ needs n - m + 1 = {} values, got {}", s + 1, xi.size() + 1)));
    }
    Ok(xi)
}

fn degrees(p: ShapeParams, degree: Option<usize>) -> Run<Vec<usize>> {
    match degree {
        Some(d) if d > p.k => Err(usage(format!("degree {d} exceeds k = {}", p.k))),
        Some(d) => Ok(vec![d]),
        None => Ok((0..=p.k).collect()),
    }
}

fn unsupported(format: OutputFormat, command: &str) -> Failure {
    usage(format!("{command} does not support --format {}", format_name(format)))
}

fn format_name(f: OutputFormat) -> &'static str {
    match f {
        OutputFormat::Json => "json",
        OutputFormat::Tsv => "tsv",
        OutputFormat::Ascii => "ascii",
        OutputFormat::Tikz => "tikz",
    }
}

fn document(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        let mut out = serde_json::Map::new();
        out.insert("schema".into(), SCHEMA.into());
        out.append(map);
        v = Value::Object(out);
    }
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn tsv(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    rows.into_iter().map(|r| r.join("\t") + "\n").collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Run<Value> {
    serde_json::to_value(x).map_err(|e| Failure::Internal(format!("serialization failed: {e}")))
}

fn cups_text(a: &CupDiagram) -> String {
    a.cups().iter().map(|(l, r)| format!("{l}-{r}")).collect::<Vec<_>>().join(" ")
}

fn list_text(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Run<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Enumerate(s) => enumerate(shape(*s, cli)?, f),
        Command::Weights(s) => weights(shape(*s, cli)?, f),
        Command::Betti(s) => betti_numbers(shape(*s, cli)?, f),
        Command::LExpand { weight: w } => expand(&weight(w)?, f),
        Command::Matrix { shape: s, degree, generator, basis, xi } => {
            let p = shape(*s, cli)?;
            let g: Generator = generator.parse()?;
            matrix(p, *degree, g, *basis, &xi_for(xi, p)?, f)
        }
        Command::Verify { suite, shape: s, degree, xi, basis } => {
            let p = shape(*s, cli)?;
            let xi = xi_for(xi, p)?;
            let reports = Suite::expand(&[*suite])
                .into_iter()
                .map(|suite| timed(suite, p, || suite_report(suite, p, &xi, *degree, *basis)))
                .collect::<Run<Vec<_>>>()?;
            reports_output(p, &reports, f)
        }
        Command::Decompose { shape: s, degree } => decompose(shape(*s, cli)?, *degree, f),
        Command::Intersect { a, b } => intersect(&diagram_text(a)?, &diagram_text(b)?, f),
        Command::Render(d) => render_diagram(&diagram_input(d)?, f),
        Command::Tensor { command } => match command {
            TensorCommand::PVector(d) => pvector(&diagram_input(d)?, f),
            TensorCommand::Verify { check, shape: s, degree } => {
                let p = shape(*s, cli)?;
                let suite = match check {
                    TensorCheck::Equivariance => Suite::Equivariance,
                    TensorCheck::Commutant => Suite::Commutant,
                };
                let xi = HeckeParams::springer(p);
                let r = timed(suite, p, || suite_report(suite, p, &xi, *degree, BasisArg::L))?;
                reports_output(p, &[r], f)
            }
        },
        Command::Sweep { max_n, suites } => sweep(*max_n, &Suite::expand(suites), cli.jobs, f),
    }
}

fn enumerate(p: ShapeParams, f: OutputFormat) -> Run<Output> {
    let ds = enumerate_cup_diagrams(p)?;
    let text = match f {
        OutputFormat::Json => {
            let records = ds.iter().map(|a| to_value(&DiagramRecord::of(a))).collect::<Run<Vec<_>>>()?;
            document(json!({ "params": params_json(p), "count": ds.len().to_string(), "diagrams": records }))
        }
        OutputFormat::Tsv => tsv(ds.iter().map(|a| vec![a.to_weight().to_string(), cups_text(a), list_text(&a.rays())])),
        OutputFormat::Ascii => ds.iter().map(|a| render(a, Format::Ascii)).collect::<Vec<_>>().join("\n"),
        OutputFormat::Tikz => ds.iter().map(|a| render(a, Format::Tikz)).collect::<Vec<_>>().join("\n"),
    };
    Ok(Output::ok(text))
}

fn weights(p: ShapeParams, f: OutputFormat) -> Run<Output> {
    let ws = enumerate_weights(p)?;
    let text = match f {
        OutputFormat::Json => {
            let items: Vec<Value> =
                ws.iter().map(|w| json!({ "weight": w.to_string(), "cups": w.cup_diagram().cup_count().to_string() })).collect();
            document(json!({ "params": params_json(p), "count": ws.len().to_string(), "weights": items }))
        }
        OutputFormat::Tsv => tsv(ws.iter().map(|w| vec![w.to_string(), w.cup_diagram().cup_count().to_string()])),
        _ => return Err(unsupported(f, "weights")),
    };
    Ok(Output::ok(text))
}

fn betti_numbers(p: ShapeParams, f: OutputFormat) -> Run<Output> {
    let b = betti(p)?;
    let text = match f {
        OutputFormat::Json => document(json!({ "params": params_json(p), "betti": b.iter().map(usize::to_string).collect::<Vec<_>>() })),
        OutputFormat::Tsv => tsv(b.iter().enumerate().map(|(d, x)| vec![d.to_string(), x.to_string()])),
        _ => return Err(unsupported(f, "betti")),
    };
    Ok(Output::ok(text))
}

fn expand(w: &DeltaWeight, f: OutputFormat) -> Run<Output> {
    let v = l_expand(w);
    let text = match f {
        OutputFormat::Json => document(json!({ "weight": w.to_string(), "vector": to_value(&v)? })),
        OutputFormat::Tsv => tsv(v.terms().map(|(u, c)| vec![list_text(&u.elements()), format_rational(c)])),
        _ => return Err(unsupported(f, "l-expand")),
    };
    Ok(Output::ok(text))
}

fn matrix(p: ShapeParams, d: usize, g: Generator, basis: BasisArg, xi: &HeckeParams, f: OutputFormat) -> Run<Output> {
    let s = p.n - p.m;
    g.check(s)?;
    let (kind, labels): (BasisKind, Vec<String>) = match basis {
        BasisArg::L => {
            if d > p.k {
                return Err(usage(format!("degree {d} exceeds k = {}", p.k)));
            }
            (BasisKind::L(d), LBasis::new(p, d)?.weights().iter().map(DeltaWeight::to_string).collect())
        }
        BasisArg::Lines => {
            if d > s {
                return Err(usage(format!("degree {d} exceeds n - m = {s}")));
            }
            (BasisKind::Lines(d), lines_basis(s, d).into_iter().map(|u| list_text(&u.elements())).collect())
        }
    };
    let q = operator_matrix(g, kind, p, xi)?.matrix;
    let rows: Vec<Vec<String>> = (0..q.rows()).map(|r| (0..q.cols()).map(|c| format_rational(&q[(r, c)])).collect()).collect();
    let text = match f {
        OutputFormat::Json => document(json!({
            "params": params_json(p),
            "degree": d.to_string(),
            "basis": match basis { BasisArg::L => "l", BasisArg::Lines => "lines" },
            "generator": g.to_string(),
            "xi": to_value(xi)?,
            "labels": labels,
            "rows": rows,
        })),
        OutputFormat::Tsv => {
            let header = std::iter::once(std::iter::once(String::new()).chain(labels.iter().cloned()).collect());
            tsv(header.chain(labels.iter().zip(rows).map(|(l, r)| std::iter::once(l.clone()).chain(r).collect())))
        }
        _ => return Err(unsupported(f, "matrix")),
    };
    Ok(Output::ok(text))
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Hecke => "hecke",
        Suite::Stability => "stability",
        Suite::Typec => "typec",
        Suite::Specht => "specht",
        Suite::Equivariance => "equivariance",
        Suite::Commutant => "commutant",
        Suite::Extremal => "extremal",
        Suite::All => "all",
    }
}

fn suite_report(suite: Suite, p: ShapeParams, xi: &HeckeParams, degree: Option<usize>, basis: BasisArg) -> Run<Report> {
    let basis = match basis {
        BasisArg::L => RelationBasis::L,
        BasisArg::Lines => RelationBasis::Lines,
    };
    Ok(match suite {
        Suite::Hecke => verify_hecke_relations(p, xi, basis)?,
        Suite::Stability => verify_stability(p, xi)?,
        Suite::Typec => verify_typec(p, xi)?,
        Suite::Specht => verify_specht(p)?,
        Suite::Extremal => verify_extremal(p)?,
        Suite::Equivariance => {
            let mut r = Report::new("equivariance");
            for d in degrees(p, degree)? {
                r.absorb("", equivariance_check(p, d)?);
            }
            r
        }
        Suite::Commutant => {
            let mut r = Report::new("commutant");
            for d in degrees(p, degree)? {
                let c = commutant_dimension(p, d)?;
                r.expect(format!("d={d} commutant"), (c != 1).then(|| format!("dimension {c}")));
                // Without the x_i, a block with several Specht summands has a larger commutant.
                let sym = commutant_dimension_with(p, d, GeneratorSet::SymmetricOnly)?;
                if theorem_summands(p, d).len() >= 2 {
                    r.expect(format!("d={d} symmetric-only commutant"), (sym <= 1).then(|| format!("dimension {sym}")));
                } else {
                    r.info(format!("d={d} symmetric-only commutant"), sym.to_string());
                }
            }
            r
        }
        Suite::All => unreachable!("expanded before dispatch"),
    })
}

/// Runs one suite, logging wall-clock time to stderr.
fn timed(suite: Suite, p: ShapeParams, f: impl FnOnce() -> Run<Report>) -> Run<(Report, f64)> {
    let start = Instant::now();
    let r = f()?;
    let secs = start.elapsed().as_secs_f64();
    eprintln!("{} {p}: {secs:.3}s", suite_name(suite));
    Ok((r, secs))
}

fn report_json(p: ShapeParams, r: &Report) -> Value {
    let s = r.summary();
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let mut v = json!({ "id": c.id, "status": status_name(c.status) });
            if let Some(w) = &c.witness {
                v["witness"] = w.clone().into();
            }
            v
        })
        .collect();
    json!({
        "suite": r.suite,
        "params": params_json(p),
        "passed": r.passed(),
        "summary": { "pass": s.pass.to_string(), "fail": s.fail.to_string(), "info": s.info.to_string() },
        "checks": checks,
    })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Info => "info",
    }
}

fn reports_output(p: ShapeParams, reports: &[(Report, f64)], f: OutputFormat) -> Run<Output> {
    let passed = reports.iter().all(|(r, _)| r.passed());
    let text = match f {
        OutputFormat::Json => {
            let items: Vec<Value> = reports.iter().map(|(r, _)| report_json(p, r)).collect();
            document(json!({ "params": params_json(p), "passed": passed, "reports": items }))
        }
        OutputFormat::Tsv => tsv(reports.iter().flat_map(|(r, _)| {
            r.checks
                .iter()
                .map(|c| vec![r.suite.clone(), c.id.clone(), status_name(c.status).to_string(), c.witness.clone().unwrap_or_default()])
        })),
        _ => return Err(unsupported(f, "verify")),
    };
    Ok(Output { text, passed })
}

fn decompose(p: ShapeParams, degree: Option<usize>, f: OutputFormat) -> Run<Output> {
    let b = betti(p)?;
    let blocks = degrees(p, degree)?.into_iter().map(|d| Ok((d, decompose_homology_rep(p, d)?))).collect::<Run<Vec<_>>>()?;
    let text = match f {
        OutputFormat::Json => {
            let items: Vec<Value> = blocks
                .iter()
                .map(|(d, summands)| {
                    let s: Vec<Value> =
                        summands.iter().map(|(l, mult)| json!({ "shape": l.to_string(), "multiplicity": mult.to_string() })).collect();
                    json!({ "degree": d.to_string(), "homological_degree": (2 * d).to_string(), "dimension": b[*d].to_string(), "summands": s })
                })
                .collect();
            document(json!({ "params": params_json(p), "blocks": items }))
        }
        OutputFormat::Tsv => tsv(blocks
            .iter()
            .flat_map(|(d, summands)| summands.iter().map(move |(l, mult)| vec![d.to_string(), l.to_string(), mult.to_string()]))),
        _ => return Err(unsupported(f, "decompose")),
    };
    Ok(Output::ok(text))
}

fn intersect(a: &CupDiagram, b: &CupDiagram, f: OutputFormat) -> Run<Output> {
    let c = circle_diagram(a, b)?;
    let (class, spheres) = match c.intersection() {
        IntersectionClass::Empty => ("empty", None),
        IntersectionClass::Spheres(l) => ("spheres", Some(l)),
    };
    let text = match f {
        OutputFormat::Json => {
            let mut v = json!({
                "a": to_value(&DiagramRecord::of(a))?,
                "b": to_value(&DiagramRecord::of(b))?,
                "intersection": class,
            });
            if let Some(l) = spheres {
                v["spheres"] = l.to_string().into();
            }
            v["components"] = to_value(&c.components)?;
            document(v)
        }
        OutputFormat::Tsv => tsv([[class.to_string()].into_iter().chain(spheres.map(|l| l.to_string())).collect()]),
        _ => return Err(unsupported(f, "intersect")),
    };
    Ok(Output::ok(text))
}

fn render_diagram(a: &CupDiagram, f: OutputFormat) -> Run<Output> {
    let text = match f {
        OutputFormat::Json => document(to_value(&DiagramRecord::of(a))?),
        OutputFormat::Ascii => render(a, Format::Ascii),
        OutputFormat::Tikz => render(a, Format::Tikz),
        OutputFormat::Tsv => return Err(unsupported(f, "render")),
    };
    Ok(Output::ok(text))
}

fn pvector(a: &CupDiagram, f: OutputFormat) -> Run<Output> {
    if a.left() > delta_springer::tensor::MAX_TENSOR_LEFT {
        return Err(usage(format!("tensor space needs n - m = {} <= {}", a.left(), delta_springer::tensor::MAX_TENSOR_LEFT)));
    }
    let v = p_vector(a);
    let text = match f {
        OutputFormat::Json => document(json!({ "diagram": to_value(&DiagramRecord::of(a))?, "vector": to_value(&v)? })),
        OutputFormat::Tsv => tsv(v.terms().map(|(e, c)| vec![e.eps_string(v.len()), e.i.to_string(), c.to_string()])),
        _ => return Err(unsupported(f, "tensor p-vector")),
    };
    Ok(Output::ok(text))
}

fn sweep(max: usize, suites: &[Suite], jobs: Option<usize>, f: OutputFormat) -> Run<Output> {
    check_cap(max)?;
    let tasks: Vec<(ShapeParams, Suite)> =
        ShapeParams::all_strict(max).into_iter().flat_map(|p| suites.iter().map(move |&s| (p, s))).collect();
    let work = || -> Run<Vec<(Report, f64)>> {
        tasks.par_iter().map(|&(p, s)| timed(s, p, || suite_report(s, p, &HeckeParams::springer(p), None, BasisArg::L))).collect()
    };
    // An indexed parallel collect keeps task order, so output is independent of scheduling.
    let results = match jobs {
        Some(0) => return Err(usage("--jobs must be positive")),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::Internal(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let passed = results.iter().all(|(r, _)| r.passed());
    let (mut pass, mut fail) = (0, 0);
    let rows: Vec<(ShapeParams, &Report)> = tasks.iter().zip(&results).map(|(&(p, _), (r, _))| (p, r)).collect();
    for (_, r) in &rows {
        let s = r.summary();
        pass += s.pass;
        fail += s.fail;
    }
    let first_failure = |r: &Report| r.failures().next().map(|c| format!("{}: {}", c.id, c.witness.clone().unwrap_or_default()));
    let text = match f {
        OutputFormat::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(p, r)| {
                    let s = r.summary();
                    let mut v = json!({
                        "params": params_json(*p),
                        "suite": r.suite,
                        "pass": s.pass.to_string(),
                        "fail": s.fail.to_string(),
                        "info": s.info.to_string(),
                    });
                    if let Some(w) = first_failure(r) {
                        v["witness"] = w.into();
                    }
                    v
                })
                .collect();
            document(json!({
                "max_n": max.to_string(),
                "suites": suites.iter().map(|&s| suite_name(s)).collect::<Vec<_>>(),
                "passed": passed,
                "summary": { "runs": rows.len().to_string(), "pass": pass.to_string(), "fail": fail.to_string() },
                "rows": items,
            }))
        }
        OutputFormat::Tsv => {
            let header = vec!["n", "k", "m", "suite", "pass", "fail", "info", "status"].into_iter().map(String::from).collect();
            tsv(std::iter::once(header).chain(rows.iter().map(|(p, r)| {
                let s = r.summary();
                vec![
                    p.n.to_string(),
                    p.k.to_string(),
                    p.m.to_string(),
                    r.suite.clone(),
                    s.pass.to_string(),
                    s.fail.to_string(),
                    s.info.to_string(),
                    if r.passed() { "ok".into() } else { first_failure(r).unwrap_or_default() },
                ]
            })))
        }
        _ => return Err(unsupported(f, "sweep")),
    };
    Ok(Output { text, passed })
}
