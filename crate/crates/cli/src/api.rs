//! Engine calls shared by the command line and the HTTP service. Every
//! call returns an [`Answer`] whose JSON carries `"schema": "1"`.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use tubular_core::graded::{ext1_dim_line, hom_dim_line};
use tubular_core::k0::{basis, euler_form, reduce_line};
use tubular_core::lgroup::WeightTriple;
use tubular_core::quiver::{self, fixture, fixtures, is_isomorphic, parse_sequence, QuiverJson};
use tubular_core::syntax::{parse_bundle, parse_l, parse_weights};
use tubular_core::{Error, K0Class, Quiver};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFixture(_) => ApiError::NotFound(e.to_string()),
            Error::InvalidQuiver(_) => ApiError::Invalid(e.to_string()),
            _ => ApiError::BadRequest(e.to_string()),
        }
    }
}

pub type ApiResult<T> = std::result::Result<T, ApiError>;

/// A JSON body, its plain-text rendering, and whether the call verified
/// what it was asked to.
#[derive(Debug, Clone, PartialEq)]
pub struct Answer {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Answer {
    fn new(body: Value, text: impl Into<String>) -> Self {
        let mut m = Map::new();
        m.insert("schema".into(), Value::from(SCHEMA));
        match body {
            Value::Object(o) => m.extend(o),
            other => {
                m.insert("result".into(), other);
            }
        }
        Answer { json: Value::Object(m), text: text.into(), ok: true }
    }

    fn failing(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    /// Compact JSON, identical on both front ends.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.json).expect("values serialize")
    }
}

/// `"2,4,4"` or `[2, 4, 4]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum WeightsIn {
    Text(String),
    List(Vec<i64>),
}

impl WeightsIn {
    pub fn resolve(&self) -> ApiResult<WeightTriple> {
        Ok(match self {
            WeightsIn::Text(s) => parse_weights(s)?,
            WeightsIn::List(v) => WeightTriple::from_slice(v)?,
        })
    }
}

/// A fixture name or an inline quiver.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum QuiverIn {
    Fixture(String),
    Inline(QuiverJson),
}

impl QuiverIn {
    pub fn resolve(self) -> ApiResult<Quiver> {
        Ok(match self {
            QuiverIn::Fixture(name) => fixture(&name)?.quiver,
            QuiverIn::Inline(j) => Quiver::from_json(j)?,
        })
    }
}

/// `[1, 2, 3]` or `"1,2,3"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SequenceIn {
    Text(String),
    List(Vec<i64>),
}

impl SequenceIn {
    pub fn resolve(self) -> ApiResult<Vec<i64>> {
        Ok(match self {
            SequenceIn::Text(s) => parse_sequence(&s)?,
            SequenceIn::List(v) => v,
        })
    }
}

/// Reads a quiver argument: a fixture name, a JSON file, or inline JSON.
pub fn load_quiver(arg: &str) -> ApiResult<Quiver> {
    let t = arg.trim();
    if t.starts_with('{') {
        return parse_quiver_json(t.as_bytes());
    }
    if Path::new(t).is_file() {
        let bytes = std::fs::read(t).map_err(|e| ApiError::BadRequest(format!("{t}: {e}")))?;
        return parse_quiver_json(&bytes);
    }
    Ok(fixture(t)?.quiver)
}

fn parse_quiver_json(bytes: &[u8]) -> ApiResult<Quiver> {
    let j: QuiverJson = serde_json::from_slice(bytes).map_err(|e| ApiError::BadRequest(format!("quiver JSON: {e}")))?;
    Ok(Quiver::from_json(j)?)
}

/// A line bundle `O(x)` from an L-expression, or an extension bundle.
fn object_class(w: WeightTriple, s: &str) -> ApiResult<(String, K0Class)> {
    let t = s.trim();
    if t.starts_with('E') {
        let b = parse_bundle(w, t)?;
        return Ok((b.to_string(), b.class()));
    }
    let inner = t.strip_prefix("O(").and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let x = parse_l(w, inner)?;
    Ok((format!("O({x})"), reduce_line(x)))
}

pub fn normal_form(w: WeightTriple, expr: &str) -> ApiResult<Answer> {
    let x = parse_l(w, expr)?;
    Ok(Answer::new(
        json!({"weights": w, "input": expr, "normal_form": x, "expr": x.expr()}),
        x.to_string(),
    ))
}

pub fn delta(w: WeightTriple, expr: &str) -> ApiResult<Answer> {
    let x = parse_l(w, expr)?;
    Ok(Answer::new(json!({"weights": w, "element": x, "delta": x.delta()}), x.delta().to_string()))
}

/// `Hom(O(x), O(y))` and `Ext¹(O(x), O(y))`.
pub fn hom_dim(w: WeightTriple, x: &str, y: &str) -> ApiResult<Answer> {
    let (x, y) = (parse_l(w, x)?, parse_l(w, y)?);
    let (h, e) = (hom_dim_line(x, y), ext1_dim_line(x, y));
    Ok(Answer::new(
        json!({"weights": w, "source": x, "target": y, "hom": h, "ext1": e}),
        format!("hom {h}\next1 {e}"),
    ))
}

pub fn k0_reduce(w: WeightTriple, obj: &str) -> ApiResult<Answer> {
    let (label, class) = object_class(w, obj)?;
    let names: Vec<String> = basis(w).iter().map(|b| format!("O({})", b.expr())).collect();
    Ok(Answer::new(
        json!({"weights": w, "object": label, "basis": names, "class": class}),
        class.to_string(),
    ))
}

pub fn euler(w: WeightTriple, a: &str, b: &str) -> ApiResult<Answer> {
    let (la, ca) = object_class(w, a)?;
    let (lb, cb) = object_class(w, b)?;
    let v = euler_form(&ca, &cb);
    Ok(Answer::new(json!({"weights": w, "a": la, "b": lb, "euler": v}), v.to_string()))
}

pub fn bundle_eq(w: WeightTriple, a: &str, b: &str) -> ApiResult<Answer> {
    let (ea, eb) = (parse_bundle(w, a)?, parse_bundle(w, b)?);
    let eq = ea.eq_ext(&eb);
    Ok(Answer::new(
        json!({"weights": w, "a": ea, "b": eb, "equal": eq, "canonical": [ea.canonical_form(), eb.canonical_form()]}),
        eq.to_string(),
    ))
}

/// `B[n]`, through the hulls.
pub fn suspend(w: WeightTriple, b: &str, n: i64) -> ApiResult<Answer> {
    let e = parse_bundle(w, b)?;
    let s = e.shift(n)?;
    Ok(Answer::new(
        json!({"weights": w, "bundle": e, "shift": n, "result": s, "canonical": s.canonical_form()}),
        s.to_string(),
    ))
}

pub fn hulls(w: WeightTriple, b: &str) -> ApiResult<Answer> {
    let e = parse_bundle(w, b)?;
    let (inj, proj) = (e.injective_hull(), e.projective_cover());
    let show = |v: &[tubular_core::LElement]| v.iter().map(|y| format!("O({})", y.expr())).collect::<Vec<_>>().join(" + ");
    Ok(Answer::new(
        json!({"weights": w, "bundle": e, "injective_hull": inj, "projective_cover": proj}),
        format!("I = {}\nP = {}", show(&inj), show(&proj)),
    ))
}

pub fn slope(w: WeightTriple, obj: &str) -> ApiResult<Answer> {
    let (label, class) = object_class(w, obj)?;
    let mu = class.slope()?;
    Ok(Answer::new(
        json!({"weights": w, "object": label, "rank": class.rank(), "degree": class.degree(), "slope": mu.to_string()}),
        mu.to_string(),
    ))
}

fn quiver_text(q: &Quiver) -> String {
    let mut out = Vec::new();
    for v in q.vertices() {
        out.push(format!("{} {}", v.id, v.label));
    }
    for a in q.arrows() {
        let m = if a.mult > 1 { format!(" x{}", a.mult) } else { String::new() };
        out.push(format!("{} -> {}{m}", a.from, a.to));
    }
    out.join("\n")
}

pub fn mutate(q: Quiver, vertex: i64) -> ApiResult<Answer> {
    let r = q.mutate(vertex)?;
    let text = quiver_text(&r);
    Ok(Answer::new(json!({"quiver": r}), text))
}

pub fn apply(q: Quiver, seq: &[i64]) -> ApiResult<Answer> {
    let r = q.apply(seq)?;
    let text = quiver_text(&r);
    Ok(Answer::new(json!({"sequence": seq, "quiver": r}), text))
}

pub fn iso(q1: &Quiver, q2: &Quiver) -> ApiResult<Answer> {
    Ok(match is_isomorphic(q1, q2) {
        Some(wit) => {
            let text = wit.pairs.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>().join("\n");
            Answer::new(json!({"isomorphic": true, "witness": wit}), format!("true\n{text}"))
        }
        None => Answer::new(json!({"isomorphic": false}), "false"),
    })
}

pub fn search(source: &Quiver, target: &Quiver, max_depth: usize) -> ApiResult<Answer> {
    Ok(match quiver::search(source, target, max_depth)? {
        Some(r) => {
            let text = r.sequence.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            Answer::new(
                json!({"found": true, "maxDepth": max_depth, "sequence": r.sequence, "visited": r.visited, "witness": r.witness}),
                text,
            )
        }
        None => Answer::new(json!({"found": false, "maxDepth": max_depth}), format!("no sequence within {max_depth}"))
            .failing(false),
    })
}

pub fn fixture_list() -> Answer {
    let all = fixtures();
    let items: Vec<Value> = all
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "description": f.description,
                "weights": f.weights,
                "vertices": f.quiver.len(),
                "arrows": f.quiver.arrow_count(),
                "target": f.target,
            })
        })
        .collect();
    let text = all.iter().map(|f| format!("{:<22} {}", f.name, f.description)).collect::<Vec<_>>().join("\n");
    Answer::new(json!({"fixtures": items}), text)
}

pub fn fixture_one(name: &str) -> ApiResult<Answer> {
    let f = fixture(name)?;
    let text = format!("{}\n{}", f.description, quiver_text(&f.quiver));
    Ok(Answer::new(json!({"fixture": f}), text))
}

pub fn replay(kind: &str) -> ApiResult<Answer> {
    let r = tubular_core::replay(kind).map_err(|e| match e {
        Error::Precondition(_) => ApiError::NotFound(e.to_string()),
        other => other.into(),
    })?;
    let body = serde_json::to_value(&r).expect("reports serialize");
    Ok(Answer::new(body, r.render()).failing(r.pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeightTriple {
        parse_weights(s).unwrap()
    }

    #[test]
    fn documented_examples() {
        let a = bundle_eq(w("2,4,4"), "E<0,2,0>(x3)", "E<0,0,0>(x1-x2+x3)").unwrap();
        assert_eq!(a.text, "true");
        assert_eq!(a.json["equal"], true);
        assert_eq!(normal_form(w("2,3,6"), "w").unwrap().text, "(1,2,5;-2)");
    }

    #[test]
    fn schema_is_versioned() {
        let a = delta(w("2,3,6"), "c").unwrap();
        assert_eq!(a.json["schema"], "1");
        assert_eq!(a.text, "6");
    }

    #[test]
    fn line_and_bundle_objects() {
        let t = w("3,3,3");
        assert_eq!(k0_reduce(t, "0").unwrap().text, k0_reduce(t, "O(0)").unwrap().text);
        assert_eq!(slope(t, "E").unwrap().text, slope(t, "E(0)").unwrap().text);
        let h = hom_dim(t, "0", "c").unwrap();
        assert_eq!((h.json["hom"].as_i64(), h.json["ext1"].as_i64()), (Some(2), Some(0)));
        assert!(euler(t, "0", "E").is_ok());
        assert!(hulls(t, "E").unwrap().text.starts_with("I = O(0)"));
        assert!(suspend(t, "E<x1+x3>", 1).is_ok());
    }

    #[test]
    fn error_classes() {
        assert!(matches!(fixture_one("nope"), Err(ApiError::NotFound(_))));
        assert!(matches!(replay("999"), Err(ApiError::NotFound(_))));
        assert!(matches!(normal_form(w("2,3,6"), "x9"), Err(ApiError::BadRequest(_))));
        assert!(matches!(load_quiver(r#"{"vertices":[{"id":1,"label":""}],"arrows":[{"from":1,"to":1,"mult":1}]}"#), Err(ApiError::Invalid(_))));
        assert!(matches!(load_quiver("{not json"), Err(ApiError::BadRequest(_))));
    }

    #[test]
    fn search_failure_is_not_ok() {
        let q = load_quiver("cuboid_cluster_244").unwrap();
        let t = load_quiver("target_tubular_244").unwrap();
        assert!(!search(&q, &t, 1).unwrap().ok);
        assert!(search(&q, &t, 5).unwrap().ok);
    }
}
