//! JSON input documents, element syntax, and DOT/JSON exports.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cartan::{CartanMatrix, CartanType, Realization, WeightVector};
use crate::coxeter::WeylElement;
use crate::faces::{DominantPoint, Face};
use crate::linalg::{rat, Rat};
use crate::renner::{CrossSectionEntry, RennerElement, RennerMonoid};
use crate::{Error, NodeSet, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    cartan: Vec<Vec<i64>>,
    #[serde(default)]
    mu: Option<Vec<Value>>,
    #[serde(default)]
    completion: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    slice: Option<Vec<usize>>,
}

/// A validated input document.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub realization: Realization,
    pub mu: Option<WeightVector>,
    pub slice: Option<NodeSet>,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawProblem = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        let cartan = CartanMatrix::new(raw.cartan)?;
        let m = cartan.size();
        let realization = match raw.completion {
            Some(d) => Realization::with_completion(cartan, d)?,
            None => Realization::canonical(cartan),
        };
        let dim = realization.dim();
        let mu = match raw.mu {
            None => None,
            Some(values) => {
                // Pairings with the extra coroots default to zero.
                if values.len() != dim && values.len() != m {
                    return Err(Error::DimensionMismatch { expected: dim, got: values.len() });
                }
                let mut coords = values.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
                coords.resize(dim, rat(0));
                Some(realization.weight(coords)?)
            }
        };
        let slice = raw.slice.map(|s| NodeSet::from_one_based(&s, m)).transpose()?;
        Ok(ProblemSpec { realization, mu, slice })
    }

    pub fn dominant_point(&self) -> Result<DominantPoint> {
        let mu = self.mu.clone().ok_or_else(|| Error::Parse("missing \"mu\"".into()))?;
        DominantPoint::new(self.realization.clone(), mu)
    }
}

fn parse_rational(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let p: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad rational \"{s}\"")))?;
            let q: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad rational \"{s}\"")))?;
            if q == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in \"{s}\"")));
            }
            Ok(Rat::new(p, q))
        }
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

/// Type name without the strongly-hyperbolic qualifier.
pub fn type_name(t: CartanType) -> &'static str {
    match t {
        CartanType::Finite => "Finite",
        CartanType::Affine => "Affine",
        CartanType::Indefinite { .. } => "Indefinite",
    }
}

/// Distinct component type names in component order, joined by " + ".
pub fn type_summary(cartan: &CartanMatrix) -> String {
    let mut names: Vec<&str> = Vec::new();
    for (_, t) in cartan.classify() {
        if !names.contains(&type_name(t)) {
            names.push(type_name(t));
        }
    }
    names.join(" + ")
}

pub fn classification_json(doc: &ProblemSpec) -> Result<Value> {
    let real = &doc.realization;
    let dp = doc.mu.as_ref().map(|_| doc.dominant_point()).transpose()?;
    let comps: Vec<Value> = real
        .cartan()
        .classify()
        .iter()
        .map(|(nodes, t)| {
            let sh = match t {
                CartanType::Indefinite { strongly_hyperbolic } => Value::Bool(*strongly_hyperbolic),
                _ => Value::Null,
            };
            json!({"nodes": nodeset_json(*nodes), "type": type_name(*t), "strongly_hyperbolic": sh})
        })
        .collect();
    Ok(json!({
        "type": type_summary(real.cartan()),
        "components": comps,
        "realization_dim": real.dim(),
        "completion": real.completion(),
        "j0": dp.as_ref().map(|d| nodeset_json(d.j0())),
        "j_gt": dp.as_ref().map(|d| nodeset_json(d.jgt())),
        "q_sat": doc.mu.as_ref().map(|mu| real.q_sat_member(mu)),
    }))
}

pub fn nodeset_json(s: NodeSet) -> Value {
    json!(s.to_one_based())
}

/// `{"sigma": word, "I": [...] | null, "dim": d}`.
pub fn face_json(face: &Face) -> Value {
    match face {
        Face::Empty => json!({"sigma": "", "I": null, "dim": -1}),
        Face::Translate { sigma, base } => {
            json!({"sigma": sigma.to_word_string(), "I": nodeset_json(base.i), "dim": base.dimension()})
        }
    }
}

pub fn faces_json(faces: &[Face]) -> Value {
    Value::Array(faces.iter().map(face_json).collect())
}

/// `{"unit": word, "sigma": word, "I": [...] | null}`.
pub fn element_json(x: &RennerElement) -> Value {
    let (sigma, i) = match &x.face {
        Face::Empty => (String::new(), Value::Null),
        Face::Translate { sigma, base } => (sigma.to_word_string(), nodeset_json(base.i)),
    };
    json!({"unit": x.unit.to_word_string(), "sigma": sigma, "I": i})
}

/// Parses the element syntax; `I: null` is the zero.
pub fn parse_element(monoid: &RennerMonoid, text: &str) -> Result<RennerElement> {
    let dp = monoid.point();
    let g = dp.group();
    let v: Value = serde_json::from_str(text.trim()).map_err(|e| Error::ElementParse(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| Error::ElementParse("expected an object".into()))?;
    if let Some(k) = obj.keys().find(|k| !["unit", "sigma", "I"].contains(&k.as_str())) {
        return Err(Error::ElementParse(format!("unknown field \"{k}\"")));
    }
    let word = |key: &str| -> Result<WeylElement> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(WeylElement::identity()),
            Some(Value::String(s)) => g.parse_word(s),
            Some(other) => Err(Error::ElementParse(format!("\"{key}\" must be a word string, got {other}"))),
        }
    };
    let unit = word("unit")?;
    let sigma = word("sigma")?;
    let face = match obj.get("I") {
        None => dp.hull(),
        Some(Value::Null) => Face::Empty,
        Some(Value::Array(items)) => {
            let idx = items
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| Error::ElementParse(format!("bad index {x}"))))
                .collect::<Result<Vec<_>>>()?;
            let set = NodeSet::from_one_based(&idx, dp.size())?;
            dp.canonicalize_face(&sigma, set)
        }
        Some(other) => Err(Error::ElementParse(format!("\"I\" must be a list or null, got {other}")))?,
    };
    Ok(monoid.make_element(&unit, &face))
}

pub fn cross_section_json(entries: &[CrossSectionEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "e": face_json(&e.face),
                    "lambda": nodeset_json(e.lambda),
                    "lambda_star": nodeset_json(e.lambda_star),
                    "lambda_sub": nodeset_json(e.lambda_sub),
                })
            })
            .collect(),
    )
}

/// Hasse diagram of `faces` ordered by `leq`, with `sigma|I` labels.
pub fn hasse_dot(name: &str, faces: &[Face], leq: impl Fn(&Face, &Face) -> bool) -> String {
    let n = faces.len();
    let below: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a != b && leq(&faces[a], &faces[b])).collect()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=BT;");
    for (i, f) in faces.iter().enumerate() {
        let label = match f {
            Face::Empty => "0".to_string(),
            Face::Translate { sigma, base } => format!("{}|{}", sigma.to_word_string(), base.i),
        };
        let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
    }
    for a in 0..n {
        for b in 0..n {
            if below[a][b] && !(0..n).any(|c| below[a][c] && below[c][b]) {
                let _ = writeln!(out, "  n{a} -> n{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_documents() {
        let p = ProblemSpec::parse(r#"{"cartan": [[2,-1],[-1,2]], "mu": [3, 2]}"#).unwrap();
        assert_eq!(p.realization.dim(), 2);
        let p = ProblemSpec::parse(r#"{"cartan": [[2,-2],[-2,2]], "mu": [1, 0]}"#).unwrap();
        assert_eq!(p.mu.unwrap().coords.len(), 3);
        let p =
            ProblemSpec::parse(r#"{"cartan": [[2,-2],[-2,2]], "mu": ["1/2", 0, 0], "completion": [[0,1]]}"#).unwrap();
        assert_eq!(p.realization.completion(), &[vec![0, 1]]);
        assert!(matches!(ProblemSpec::parse(r#"{"cartan": [[2,1],[1,2]]}"#), Err(Error::PositiveOffDiagonal { .. })));
        assert!(matches!(ProblemSpec::parse("{\"cartan\": [[2,-1],\n[-1,2]"), Err(Error::Parse(_))));
        assert!(matches!(
            ProblemSpec::parse(r#"{"cartan": [[2]], "mu": [1, 2]}"#),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn element_round_trip() {
        let p = ProblemSpec::parse(r#"{"cartan": [[2,-1],[-1,2]], "mu": [3, 2]}"#).unwrap();
        let r = RennerMonoid::new(p.dominant_point().unwrap()).unwrap();
        let x = parse_element(&r, r#"{"unit": "1 2", "sigma": "2", "I": [1]}"#).unwrap();
        let back = parse_element(&r, &element_json(&x).to_string()).unwrap();
        assert_eq!(x, back);
        assert_eq!(parse_element(&r, r#"{"unit": "1", "I": null}"#).unwrap(), r.zero());
        assert!(matches!(parse_element(&r, r#"{"unit": "7"}"#), Err(Error::IndexOutOfRange(7))));
        assert!(matches!(parse_element(&r, "[1]"), Err(Error::ElementParse(_))));
    }

    #[test]
    fn dot_export_has_covers_only() {
        let p = ProblemSpec::parse(r#"{"cartan": [[2,-1],[-1,2]], "mu": [3, 2]}"#).unwrap();
        let dp = p.dominant_point().unwrap();
        let faces = dp.enumerate_faces(3).faces;
        let dot = hasse_dot("faces", &faces, |a, b| dp.face_leq(a, b));
        // 6 (empty to vertex) + 12 (vertex to edge) + 6 (edge to hull).
        assert_eq!(dot.matches("->").count(), 24);
        assert!(dot.contains("label=\"|{1,2}\""));
    }
}
