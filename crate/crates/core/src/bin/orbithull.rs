use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use orbithull::io::{self, ProblemSpec};
use orbithull::linalg::Rat;
use orbithull::oracle::{compare_lattices, GeomLattice};
use orbithull::weights::{dominant_membership_crosscheck, verify_string_laws, TruncatedWeightSet};
use orbithull::{Error, NodeSet, RennerMonoid};

/// Faces of Weyl group orbit hulls and their Renner monoids.
#[derive(Parser)]
#[command(name = "orbithull", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write output to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Component types, J0/J>, and the Q^sat verdict for mu.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate faces up to a translation-length bound.
    Faces {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Emit the Hasse diagram as a DOT digraph.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Renner monoid products, tables and axiom checks.
    Renner {
        file: PathBuf,
        /// Elements separated by ';', multiplied left to right.
        #[arg(long, value_name = "X;Y")]
        mul: Option<String>,
        /// Multiplication table of the truncated monoid.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        verify_grm: bool,
        /// Emit the idempotent order as a DOT digraph.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated weight set and string-law checks.
    Weights {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        height: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Certify the face lattice against an exact convex-hull computation.
    Oracle {
        file: PathBuf,
        /// Nodes of the slice, e.g. "1,2".
        #[arg(long)]
        slice: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

/// Rendered output and whether all requested checks passed.
struct Outcome {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = match &cli.command {
        Command::Classify { output, .. }
        | Command::Faces { output, .. }
        | Command::Renner { output, .. }
        | Command::Weights { output, .. }
        | Command::Oracle { output, .. } => output.out.clone(),
    };
    match run(cli.command) {
        Ok(outcome) => {
            let written = match out_path {
                Some(p) => std::fs::write(&p, &outcome.text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Classify { file, output } => classify(&ProblemSpec::parse(&read(&file)?)?, output.json),
        Command::Faces { file, bound, dot, output } => {
            faces(&ProblemSpec::parse(&read(&file)?)?, bound, dot, output.json)
        }
        Command::Renner { file, mul, table, verify_grm, dot, bound, output } => {
            let doc = ProblemSpec::parse(&read(&file)?)?;
            renner(&doc, mul.as_deref(), table, verify_grm, dot, bound, output.json)
        }
        Command::Weights { file, depth, height, output } => {
            weights(&ProblemSpec::parse(&read(&file)?)?, depth, height, output.json)
        }
        Command::Oracle { file, slice, output } => oracle(&read(&file)?, slice.as_deref(), output.json),
    }
}

fn classify(doc: &ProblemSpec, json_out: bool) -> Result<Outcome, Error> {
    if json_out {
        return Ok(Outcome { text: pretty(&io::classification_json(doc)?), ok: true });
    }
    let real = &doc.realization;
    let summary = io::type_summary(real.cartan());
    let dp = doc.mu.as_ref().map(|_| doc.dominant_point()).transpose()?;
    let mut s = String::new();
    match doc.mu.as_ref().map(|mu| real.q_sat_member(mu)) {
        Some(true) => writeln!(s, "{summary}; μ∈Q^sat"),
        Some(false) => writeln!(s, "{summary}; μ∉Q^sat"),
        None => writeln!(s, "{summary}"),
    }
    .ok();
    for (nodes, t) in real.cartan().classify() {
        writeln!(s, "component {nodes}: {t}").ok();
    }
    writeln!(s, "realization dimension {}", real.dim()).ok();
    if let Some(d) = &dp {
        writeln!(s, "J0 = {}, J> = {}", d.j0(), d.jgt()).ok();
    }
    Ok(Outcome { text: s, ok: true })
}

fn faces(doc: &ProblemSpec, bound: usize, dot: bool, json_out: bool) -> Result<Outcome, Error> {
    let dp = doc.dominant_point()?;
    let en = dp.enumerate_faces(bound);
    if dot {
        return Ok(Outcome { text: io::hasse_dot("faces", &en.faces, |a, b| dp.face_leq(a, b)), ok: true });
    }
    if json_out {
        let counts: serde_json::Map<String, Value> =
            en.counts_by_dimension().iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
        let v = json!({"complete": en.complete, "counts": counts, "faces": io::faces_json(&en.faces)});
        return Ok(Outcome { text: pretty(&v), ok: true });
    }
    let mut s = String::new();
    let status = if en.complete { "complete".to_string() } else { format!("truncated at bound {bound}") };
    writeln!(s, "{} faces ({status})", en.faces.len()).ok();
    for (d, c) in en.counts_by_dimension() {
        writeln!(s, "dim {d}: {c}").ok();
    }
    for f in &en.faces {
        writeln!(s, "  {f}").ok();
    }
    Ok(Outcome { text: s, ok: true })
}

fn renner(
    doc: &ProblemSpec,
    mul: Option<&str>,
    table: bool,
    verify_grm: bool,
    dot: bool,
    bound: usize,
    json_out: bool,
) -> Result<Outcome, Error> {
    let monoid = RennerMonoid::new(doc.dominant_point()?)?;
    let dp = monoid.point();
    if dot {
        let en = dp.enumerate_faces(bound);
        return Ok(Outcome { text: io::hasse_dot("idempotents", &en.faces, |a, b| dp.face_leq(a, b)), ok: true });
    }
    let mut s = String::new();
    let mut out = serde_json::Map::new();
    let mut ok = true;
    if let Some(expr) = mul {
        let factors = expr
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| io::parse_element(&monoid, t))
            .collect::<Result<Vec<_>, _>>()?;
        let product = factors.iter().fold(monoid.one(), |acc, x| monoid.multiply(&acc, x));
        out.insert("product".into(), io::element_json(&product));
        writeln!(s, "product: {product}").ok();
        writeln!(s, "{}", io::element_json(&product)).ok();
    }
    if table {
        let en = monoid.enumerate(bound, bound);
        let tab = monoid.table(&en.elements);
        out.insert("complete".into(), json!(en.complete));
        out.insert("elements".into(), Value::Array(en.elements.iter().map(io::element_json).collect()));
        out.insert("table".into(), json!(tab));
        let status = if en.complete { "complete".to_string() } else { format!("truncated at bound {bound}") };
        writeln!(s, "{} elements ({status})", en.elements.len()).ok();
        for (i, x) in en.elements.iter().enumerate() {
            writeln!(s, "{i}: {x}").ok();
        }
        for row in &tab {
            let cells: Vec<String> = row.iter().map(|c| c.map_or("-".into(), |k| k.to_string())).collect();
            writeln!(s, "{}", cells.join(" ")).ok();
        }
    }
    if verify_grm {
        let report = monoid.verify_grm_axioms(bound, bound);
        ok &= report.passed();
        let sections: serde_json::Map<String, Value> =
            report.sections().iter().map(|(name, v)| (name.to_string(), json!(v))).collect();
        out.insert(
            "grm".into(),
            json!({"passed": report.passed(), "elements": report.elements, "idempotents": report.idempotents, "violations": sections}),
        );
        write!(s, "{report}").ok();
        writeln!(s, "grm axioms: {}", if report.passed() { "pass" } else { "FAIL" }).ok();
    }
    if mul.is_none() && !table && !verify_grm {
        let lattice = monoid.cross_section_lattice();
        out.insert("cross_section".into(), io::cross_section_json(&lattice));
        writeln!(s, "{:<16} {:<10} {:<10} {:<10}", "e", "lambda", "lambda*", "lambda_*").ok();
        for e in &lattice {
            writeln!(s, "{:<16} {:<10} {:<10} {:<10}", e.face.to_string(), e.lambda, e.lambda_star, e.lambda_sub).ok();
        }
    }
    if json_out {
        s = pretty(&Value::Object(out));
    }
    Ok(Outcome { text: s, ok })
}

fn weights(doc: &ProblemSpec, depth: usize, height: usize, json_out: bool) -> Result<Outcome, Error> {
    let dp = doc.dominant_point()?;
    let tw = TruncatedWeightSet::generate(&dp, depth)?;
    let mut ok = true;
    let mut s = String::new();
    let mut reports = Vec::new();
    writeln!(s, "{} weights with depth at most {depth}", tw.len()).ok();
    for face in dp.fundamental_faces() {
        if face.is_empty() {
            continue;
        }
        let r = verify_string_laws(&tw, &face, height);
        ok &= r.passed();
        writeln!(s, "face {face}: {r}").ok();
        for v in r.violations.iter().take(10) {
            writeln!(s, "  violation: {v}").ok();
        }
        reports.push(json!({
            "face": io::face_json(&face),
            "roots": r.roots,
            "checked": r.checked,
            "skipped": r.skipped,
            "violations": r.violations,
            "unwitnessed": r.unwitnessed,
        }));
    }
    let cross = dominant_membership_crosscheck(&tw);
    ok &= cross.mismatches.is_empty();
    writeln!(s, "dominant membership: {} checked, {} mismatches", cross.dominant_checked, cross.mismatches.len()).ok();
    for m in cross.mismatches.iter().take(10) {
        writeln!(s, "  mismatch: {m}").ok();
    }
    writeln!(s, "string laws: {}", if ok { "pass" } else { "FAIL" }).ok();
    if json_out {
        let v = json!({
            "depth": depth,
            "weights": tw.depth_vectors(),
            "string_laws": reports,
            "dominant_checked": cross.dominant_checked,
            "dominant_mismatches": cross.mismatches,
            "passed": ok,
        });
        s = pretty(&v);
    }
    Ok(Outcome { text: s, ok })
}

fn rat_string(r: &Rat) -> String {
    r.to_string()
}

/// Either a problem document or `{"points": [[..], ..]}`.
fn oracle(text: &str, slice: Option<&str>, json_out: bool) -> Result<Outcome, Error> {
    let as_value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    if let Some(points) = as_value.get("points") {
        return point_hull(points, json_out);
    }
    let doc = ProblemSpec::parse(text)?;
    let dp = doc.dominant_point()?;
    let slice = match slice {
        Some(list) => {
            let idx = list
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad slice index \"{t}\""))))
                .collect::<Result<Vec<_>, _>>()?;
            Some(NodeSet::from_one_based(&idx, dp.size())?)
        }
        None => doc.slice,
    };
    let report = compare_lattices(&dp, slice)?;
    let text = if json_out {
        pretty(&json!({
            "slice": io::nodeset_json(report.slice),
            "orbit_points": report.orbit_points,
            "combinatorial_faces": report.combinatorial_faces,
            "geometric_faces": report.geometric_faces,
            "checks": report.checks,
            "mismatches": report.mismatches,
            "passed": report.passed(),
        }))
    } else {
        format!("{report}oracle: {}\n", if report.passed() { "pass" } else { "FAIL" })
    };
    Ok(Outcome { text, ok: report.passed() })
}

fn point_hull(points: &Value, json_out: bool) -> Result<Outcome, Error> {
    let rows = points.as_array().ok_or_else(|| Error::Parse("\"points\" must be a list".into()))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("each point must be a list".into()))?
                .iter()
                .map(parse_rat)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lattice = GeomLattice::new(&parsed)?;
    let faces: Vec<Value> = lattice
        .faces
        .iter()
        .map(|f| {
            json!({
                "vertices": f.vertices,
                "dim": f.dim,
                "witness": f.witness.as_ref().map(|w| w.iter().map(rat_string).collect::<Vec<_>>()),
            })
        })
        .collect();
    let text = if json_out {
        pretty(&json!({"dim": lattice.dim, "faces": faces}))
    } else {
        let mut s = format!("{} faces, dimension {}\n", lattice.len(), lattice.dim);
        for f in &lattice.faces {
            writeln!(s, "  dim {}: {:?}", f.dim, f.vertices).ok();
        }
        s
    };
    Ok(Outcome { text, ok: true })
}

fn parse_rat(v: &Value) -> Result<Rat, Error> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("expected a number, got {other}"))),
    };
    text.trim().parse::<Rat>().map_err(|_| Error::Parse(format!("bad rational \"{text}\"")))
}
