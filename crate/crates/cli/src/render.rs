use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use ellipsoidal_core::linf::{ellipsoid_morphism_planar, invert, LinfMorphism};
use ellipsoidal_core::numerics::factorial;
use ellipsoidal_core::superpotential::{
    cross_validate, integrality_scan, scan_monotonicity, superpotential, SuperpotentialResult,
};
use ellipsoidal_core::trees::{enumerate_trees, ordered_count};
use ellipsoidal_core::{AspectRatio, Error, LatticePoint, VertexInfo};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format};

const OUTSIDE_RANGE: &str =
    "a <= 1 is outside the range a > 1 where T_d^a is defined geometrically";

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(io::Error),
    Csv(csv::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "write failed: {e}"),
            Failure::Csv(e) => write!(f, "csv: {e}"),
            Failure::Json(e) => write!(f, "json: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Csv(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Json(e)
    }
}

type Outcome = Result<(), Failure>;

fn note(a: AspectRatio) -> Option<&'static str> {
    (!a.above_one()).then_some(OUTSIDE_RANGE)
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv<T: Serialize>(out: &mut dyn Write, rows: impl IntoIterator<Item = T>) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Gamma { a, k, format } => gamma(out, a, k, format),
        Command::Trees { d, format } => trees(out, d as usize, format),
        Command::Compute {
            d,
            a,
            method,
            format,
            linf_bound,
            timing,
        } => {
            let start = Instant::now();
            let r = superpotential(d as usize, a, method, linf_bound)?;
            let ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            compute(out, &r, ms, format)
        }
        Command::Validate {
            d_max,
            a,
            linf_bound,
            format,
            timing,
        } => validate(out, d_max as usize, a, linf_bound, format, timing),
        Command::Scan { d, format } => scan(out, d as usize, format),
        Command::Integrality { d, format } => integrality(out, d as usize, format),
        Command::Morphism {
            a,
            dim,
            arity,
            inverse,
            format,
        } => morphism(out, a, dim as usize, arity as usize, inverse, format),
    }
}

#[derive(Serialize)]
struct GammaRow {
    k: u64,
    i: u64,
    j: u64,
}

fn gamma(out: &mut dyn Write, a: AspectRatio, k: u64, format: Format) -> Outcome {
    let path = a.gamma_path(k);
    match format {
        Format::Json => write_json(out, &json!({ "a": a, "k": k, "path": path })),
        Format::Text => {
            let pts: Vec<String> = path.iter().map(LatticePoint::to_string).collect();
            writeln!(out, "{}", pts.join(","))?;
            Ok(())
        }
        Format::Csv => write_csv(
            out,
            path.iter().enumerate().map(|(k, p)| {
                let (i, j) = p.as_pair();
                GammaRow { k: k as u64, i, j }
            }),
        ),
    }
}

#[derive(Serialize)]
struct TreeRow {
    tree: String,
    aut: String,
    internal: usize,
    labelings: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<VertexInfo>>,
}

fn trees(out: &mut dyn Write, d: usize, format: Format) -> Outcome {
    let all = enumerate_trees(d)?;
    let df = factorial(d);
    let rows: Vec<TreeRow> = all
        .iter()
        .map(|t| TreeRow {
            tree: t.key().to_string(),
            aut: t.aut_order().to_string(),
            internal: t.internal_count(),
            labelings: (&df / t.aut_order()).to_string(),
            vertices: (format == Format::Json).then(|| t.vertex_data()),
        })
        .collect();
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "d": d,
                "count": rows.len(),
                "ordered_count": ordered_count(d)?.to_string(),
                "trees": rows,
            }),
        ),
        Format::Text => {
            let width = rows.iter().map(|r| r.tree.len()).max().unwrap_or(4).max(4);
            writeln!(
                out,
                "{:<width$}  {:>8}  {:>8}  {:>10}",
                "tree", "aut", "internal", "labelings"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<width$}  {:>8}  {:>8}  {:>10}",
                    r.tree, r.aut, r.internal, r.labelings
                )?;
            }
            Ok(())
        }
        Format::Csv => write_csv(out, rows),
    }
}

#[derive(Serialize)]
struct ComputeOut<'a> {
    #[serde(flatten)]
    result: &'a SuperpotentialResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn compute(
    out: &mut dyn Write,
    r: &SuperpotentialResult,
    ms: Option<f64>,
    format: Format,
) -> Outcome {
    let row = ComputeOut {
        result: r,
        ms,
        note: note(r.a),
    };
    match format {
        Format::Json => write_json(out, &row),
        Format::Text => {
            write!(
                out,
                "T_{}^{} = {}  (wtT = {}, mult = {}, method {})",
                r.d, r.a, r.t, r.wt_t, r.mult, r.method
            )?;
            if let Some(ms) = ms {
                write!(out, "  [{ms:.3} ms]")?;
            }
            writeln!(out)?;
            if let Some(n) = row.note {
                writeln!(out, "note: {n}")?;
            }
            Ok(())
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Flat<'a> {
                d: usize,
                a: String,
                #[serde(rename = "wtT")]
                wt_t: String,
                mult: u64,
                #[serde(rename = "T")]
                t: String,
                method: &'a str,
                #[serde(skip_serializing_if = "Option::is_none")]
                ms: Option<f64>,
            }
            write_csv(
                out,
                [Flat {
                    d: r.d,
                    a: r.a.to_string(),
                    wt_t: r.wt_t.to_string(),
                    mult: r.mult,
                    t: r.t.to_string(),
                    method: r.method.name(),
                    ms,
                }],
            )
        }
    }
}

fn validate(
    out: &mut dyn Write,
    d_max: usize,
    a: AspectRatio,
    bound: usize,
    format: Format,
    timing: bool,
) -> Outcome {
    let mut reports = Vec::new();
    for d in 1..=d_max {
        let report = cross_validate(d, a, bound)?;
        let mut v = serde_json::to_value(&report)?;
        if timing {
            for (run, slot) in report
                .runs
                .iter()
                .zip(v["runs"].as_array_mut().into_iter().flatten())
            {
                slot["ms"] = json!(run.millis);
            }
        }
        reports.push(v);
    }
    match format {
        Format::Json => {
            let mut doc = json!({ "a": a, "d_max": d_max, "agree": true, "results": reports });
            if let Some(n) = note(a) {
                doc["note"] = json!(n);
            }
            write_json(out, &doc)
        }
        Format::Text => {
            for r in &reports {
                let runs: Vec<String> = r["runs"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|run| match run.get("ms") {
                        Some(ms) => format!(
                            "{}={} ({:.3} ms)",
                            s(&run["method"]),
                            s(&run["wtT"]),
                            ms.as_f64().unwrap_or(0.0)
                        ),
                        None => format!("{}={}", s(&run["method"]), s(&run["wtT"])),
                    })
                    .collect();
                writeln!(
                    out,
                    "d={} T={} agree: {}",
                    r["d"],
                    s(&r["T"]),
                    runs.join(", ")
                )?;
            }
            if let Some(n) = note(a) {
                writeln!(out, "note: {n}")?;
            }
            Ok(())
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                d: u64,
                a: String,
                method: String,
                #[serde(rename = "wtT")]
                wt_t: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                ms: Option<f64>,
            }
            let rows = reports.iter().flat_map(|r| {
                r["runs"]
                    .as_array()
                    .cloned()
                    .unwrap_or_default()
                    .into_iter()
                    .map(move |run| Row {
                        d: r["d"].as_u64().unwrap_or(0),
                        a: s(&r["a"]),
                        method: s(&run["method"]),
                        wt_t: s(&run["wtT"]),
                        ms: run.get("ms").and_then(Value::as_f64),
                    })
            });
            write_csv(out, rows)
        }
    }
}

fn s(v: &Value) -> String {
    v.as_str()
        .map(str::to_string)
        .unwrap_or_else(|| v.to_string())
}

fn scan(out: &mut dyn Write, d: usize, format: Format) -> Outcome {
    let report = scan_monotonicity(d)?;
    match format {
        Format::Json => write_json(out, &report),
        Format::Text => {
            writeln!(
                out,
                "{:<16}  {:>12}  {:>6}  {:>12}",
                "interval", "T", "mult", "wtT"
            )?;
            for iv in &report.intervals {
                let range = format!("({}, {})", iv.from, iv.to);
                writeln!(
                    out,
                    "{:<16}  {:>12}  {:>6}  {:>12}",
                    range,
                    iv.t.to_string(),
                    iv.mult,
                    iv.wt_t.to_string()
                )?;
            }
            writeln!(
                out,
                "nondecreasing: {}{}",
                report.nondecreasing,
                if report.drops.is_empty() {
                    String::new()
                } else {
                    format!(" (drops entering intervals {:?})", report.drops)
                }
            )?;
            Ok(())
        }
        Format::Csv => write_csv(out, &report.intervals),
    }
}

fn integrality(out: &mut dyn Write, d: usize, format: Format) -> Outcome {
    let report = integrality_scan(d)?;
    match format {
        Format::Json => write_json(out, &report),
        Format::Text => {
            writeln!(
                out,
                "{:<8}  {:>12}  {:>6}  {:>8}  {:>10}",
                "a", "T", "mult", "integer", "adjunction"
            )?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{:<8}  {:>12}  {:>6}  {:>8}  {:>10}",
                    format!("{}/{}", r.p, r.q),
                    r.t.to_string(),
                    r.mult,
                    r.nonnegative_integer,
                    r.adjunction_allows
                )?;
            }
            writeln!(
                out,
                "all nonnegative integers: {}",
                report.all_nonnegative_integers
            )?;
            Ok(())
        }
        Format::Csv => write_csv(out, &report.rows),
    }
}

fn morphism(
    out: &mut dyn Write,
    a: AspectRatio,
    dim: usize,
    arity: usize,
    inverse: bool,
    format: Format,
) -> Outcome {
    let eps = ellipsoid_morphism_planar(a, dim, arity)?;
    let m: LinfMorphism = if inverse { invert(&eps, arity)? } else { eps };
    let dump = m.dump();
    match format {
        Format::Json => write_json(out, &dump),
        Format::Text => {
            let name = if inverse { "eta" } else { "eps" };
            for e in &dump.entries {
                let inputs: Vec<String> = e.inputs.iter().map(usize::to_string).collect();
                let terms: Vec<String> = e
                    .output
                    .iter()
                    .map(|(i, c)| format!("({c}) e{i}"))
                    .collect();
                writeln!(out, "{name}({}) = {}", inputs.join(","), terms.join(" + "))?;
            }
            Ok(())
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                inputs: String,
                output: usize,
                coefficient: String,
            }
            let rows = dump.entries.iter().flat_map(|e| {
                let inputs: Vec<String> = e.inputs.iter().map(usize::to_string).collect();
                let inputs = inputs.join(" ");
                e.output.iter().map(move |(i, c)| Row {
                    inputs: inputs.clone(),
                    output: *i,
                    coefficient: c.clone(),
                })
            });
            write_csv(out, rows)
        }
    }
}
