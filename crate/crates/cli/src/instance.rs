//! Instance files: gate configurations, polygonal curves and sequence
//! pairs as JSON, with every rational written as a `"p/q"` string.
//!
//! Parsing goes through [`serde_json::Value`] by hand so that errors can
//! name the offending field (`gates[2].M`, `vertices[0][1]`, ...).

use std::fmt;
use std::path::Path;

use crossing_core::{
    format_rational, parse_rational, ApproxPair, Gate, GateConfig, Generator, Point, PolyCurve,
    Rational, SlopeBand,
};
use serde_json::{json, Map, Value};

/// An input problem, located by a field path when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

pub type InputResult<T> = Result<T, InputError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Gates,
    Curve,
    Pair,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Gates => "gates",
            Kind::Curve => "curve",
            Kind::Pair => "pair",
        }
    }
}

pub fn read_json(path: &Path) -> InputResult<Value> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(label.clone(), format!("cannot read: {e}")))?;
    parse_json(&text).map_err(|e| InputError::new(label, e.message))
}

pub fn parse_json(text: &str) -> InputResult<Value> {
    serde_json::from_str(text).map_err(|e| {
        InputError::new(
            "",
            format!(
                "malformed JSON at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
        )
    })
}

fn object<'a>(v: &'a Value, path: &str) -> InputResult<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| InputError::new(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> InputResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> InputResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| InputError::new(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

/// Rationals must be JSON strings; bare numbers are rejected so that no
/// value ever passes through a float.
pub fn rational(v: &Value, path: &str) -> InputResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| InputError::new(path, e.to_string())),
        Value::Number(n) => Err(InputError::new(
            path,
            format!("rationals must be strings, e.g. \"{n}\" instead of {n}"),
        )),
        _ => Err(InputError::new(path, "expected a rational string \"p/q\"")),
    }
}

fn count(v: &Value, path: &str) -> InputResult<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| InputError::new(path, "expected a non-negative integer"))
}

/// An optional `"kind"` tag must agree with what the command expects.
fn check_kind(obj: &Map<String, Value>, want: Kind) -> InputResult<()> {
    match obj.get("kind") {
        None => Ok(()),
        Some(Value::String(s)) if s == want.name() => Ok(()),
        Some(other) => Err(InputError::new(
            "kind",
            format!("expected \"{}\", found {other}", want.name()),
        )),
    }
}

pub fn gates_from_json(v: &Value) -> InputResult<GateConfig> {
    let obj = object(v, "")?;
    check_kind(obj, Kind::Gates)?;
    let list = array(field(obj, "gates", "")?, "gates")?;
    let mut gates = Vec::with_capacity(list.len());
    for (i, g) in list.iter().enumerate() {
        let path = format!("gates[{i}]");
        let o = object(g, &path)?;
        let x = rational(field(o, "x", &path)?, &join(&path, "x"))?;
        let m = rational(field(o, "m", &path)?, &join(&path, "m"))?;
        let top = rational(field(o, "M", &path)?, &join(&path, "M"))?;
        let gate = Gate::new(x, m, top).map_err(|e| InputError::new(path, e.to_string()))?;
        gates.push(gate);
    }
    Ok(GateConfig::new(gates))
}

pub fn gates_to_json(cfg: &GateConfig) -> Value {
    let gates: Vec<Value> = cfg
        .gates
        .iter()
        .map(|g| {
            json!({
                "x": format_rational(&g.x),
                "m": format_rational(&g.m),
                "M": format_rational(&g.top),
            })
        })
        .collect();
    json!({ "kind": "gates", "gates": gates })
}

pub fn curve_from_json(v: &Value) -> InputResult<PolyCurve> {
    let obj = object(v, "")?;
    check_kind(obj, Kind::Curve)?;
    let list = array(field(obj, "vertices", "")?, "vertices")?;
    let mut vertices = Vec::with_capacity(list.len());
    for (i, p) in list.iter().enumerate() {
        let path = format!("vertices[{i}]");
        let xy = array(p, &path)?;
        if xy.len() != 2 {
            return Err(InputError::new(
                path,
                format!("expected [x, y], found {} entries", xy.len()),
            ));
        }
        let x = rational(&xy[0], &format!("{path}[0]"))?;
        let y = rational(&xy[1], &format!("{path}[1]"))?;
        vertices.push(Point::new(x, y));
    }
    PolyCurve::new(vertices).map_err(|e| InputError::new("vertices", e.to_string()))
}

pub fn curve_to_json(curve: &PolyCurve) -> Value {
    let vertices: Vec<Value> = curve
        .vertices()
        .iter()
        .map(|p| json!([format_rational(&p.x), format_rational(&p.y)]))
        .collect();
    json!({ "kind": "curve", "vertices": vertices })
}

fn rational_list(v: &Value, path: &str) -> InputResult<Vec<Rational>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

pub fn pair_from_json(v: &Value) -> InputResult<ApproxPair> {
    let obj = object(v, "")?;
    check_kind(obj, Kind::Pair)?;
    if let Some(g) = obj.get("generator") {
        let generator = generator_from_json(g)?;
        return generator
            .build()
            .map_err(|e| InputError::new("generator.params", e.to_string()));
    }
    let limit_a = rational(field(obj, "A", "")?, "A")?;
    let limit_b = rational(field(obj, "B", "")?, "B")?;
    let a = rational_list(field(obj, "a", "")?, "a")?;
    let b = rational_list(field(obj, "b", "")?, "b")?;
    ApproxPair::new(a, b, limit_a, limit_b).map_err(|e| InputError::new("", e.to_string()))
}

fn generator_from_json(v: &Value) -> InputResult<Generator> {
    let obj = object(v, "generator")?;
    let name = field(obj, "name", "generator")?
        .as_str()
        .ok_or_else(|| InputError::new("generator.name", "expected a string"))?;
    let params = object(field(obj, "params", "generator")?, "generator.params")?;
    let r = |key: &str| {
        let path = format!("generator.params.{key}");
        params
            .get(key)
            .ok_or_else(|| InputError::new(path.clone(), "missing field"))
            .and_then(|x| rational(x, &path))
    };
    let n = |key: &str| {
        let path = format!("generator.params.{key}");
        params
            .get(key)
            .ok_or_else(|| InputError::new(path.clone(), "missing field"))
            .and_then(|x| count(x, &path))
    };
    match name {
        "geometric" => Ok(Generator::Geometric {
            limit_a: r("A")?,
            limit_b: r("B")?,
            ratio_a: r("ratio_a")?,
            ratio_b: r("ratio_b")?,
            len: n("len")?,
        }),
        "scaled" => Ok(Generator::Scaled {
            limit_a: r("A")?,
            kappa: r("kappa")?,
            offset: r("offset")?,
            ratio_a: r("ratio_a")?,
            len: n("len")?,
        }),
        "oscillator" => Ok(Generator::Oscillator {
            limit_a: r("A")?,
            limit_b: r("B")?,
            alpha: r("alpha")?,
            beta: r("beta")?,
            alternations: n("alternations")?,
            len: n("len")?,
        }),
        other => Err(InputError::new(
            "generator.name",
            format!("unknown generator {other:?}; known: geometric, scaled, oscillator"),
        )),
    }
}

fn generator_to_json(g: &Generator) -> Value {
    let f = format_rational;
    let (name, params) = match g {
        Generator::Geometric {
            limit_a,
            limit_b,
            ratio_a,
            ratio_b,
            len,
        } => (
            "geometric",
            json!({ "A": f(limit_a), "B": f(limit_b), "ratio_a": f(ratio_a), "ratio_b": f(ratio_b), "len": len }),
        ),
        Generator::Scaled {
            limit_a,
            kappa,
            offset,
            ratio_a,
            len,
        } => (
            "scaled",
            json!({ "A": f(limit_a), "kappa": f(kappa), "offset": f(offset), "ratio_a": f(ratio_a), "len": len }),
        ),
        Generator::Oscillator {
            limit_a,
            limit_b,
            alpha,
            beta,
            alternations,
            len,
        } => (
            "oscillator",
            json!({
                "A": f(limit_a), "B": f(limit_b), "alpha": f(alpha), "beta": f(beta),
                "alternations": alternations, "len": len,
            }),
        ),
    };
    json!({ "name": name, "params": params })
}

/// Generated pairs are written as their generator, explicit ones as lists.
pub fn pair_to_json(pair: &ApproxPair) -> Value {
    match pair.generator() {
        Some(g) => json!({ "kind": "pair", "generator": generator_to_json(g) }),
        None => json!({
            "kind": "pair",
            "A": format_rational(pair.limit_a()),
            "B": format_rational(pair.limit_b()),
            "a": strings(pair.a()),
            "b": strings(pair.b()),
        }),
    }
}

/// `"p,q"`: two rationals separated by a comma.
pub fn parse_pair(s: &str) -> Result<(Rational, Rational), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two rationals separated by a comma, got {s:?}"))?;
    let x = parse_rational(x.trim()).map_err(|e| e.to_string())?;
    let y = parse_rational(y.trim()).map_err(|e| e.to_string())?;
    Ok((x, y))
}

pub fn parse_band(s: &str) -> Result<SlopeBand, String> {
    let (alpha, beta) = parse_pair(s)?;
    SlopeBand::new(alpha, beta).map_err(|e| e.to_string())
}

pub fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_paths_point_at_the_bad_value() {
        let v = parse_json(r#"{"gates":[{"x":"0","m":"0","M":"1"},{"x":"1","m":"2","M":"x"}]}"#)
            .unwrap();
        let e = gates_from_json(&v).unwrap_err();
        assert_eq!(e.path, "gates[1].M");

        let v = parse_json(r#"{"gates":[{"x":0,"m":"0","M":"1"}]}"#).unwrap();
        assert_eq!(gates_from_json(&v).unwrap_err().path, "gates[0].x");

        let v = parse_json(r#"{"vertices":[["0","0"],["1"]]}"#).unwrap();
        assert_eq!(curve_from_json(&v).unwrap_err().path, "vertices[1]");

        let v = parse_json(r#"{"generator":{"name":"geometric","params":{"A":"1"}}}"#).unwrap();
        assert_eq!(pair_from_json(&v).unwrap_err().path, "generator.params.B");
    }

    #[test]
    fn kind_tag_is_checked() {
        let v = parse_json(r#"{"kind":"curve","gates":[]}"#).unwrap();
        assert_eq!(gates_from_json(&v).unwrap_err().path, "kind");
    }

    #[test]
    fn malformed_json_reports_position() {
        let e = parse_json("{\"gates\": [\n  {\"x\": }\n]}").unwrap_err();
        assert!(e.message.contains("line 2"), "{e}");
    }

    #[test]
    fn band_flag() {
        let band = parse_band("-1/2, 3").unwrap();
        assert_eq!(format_rational(band.alpha()), "-1/2");
        assert!(parse_band("1,1").is_err());
        assert!(parse_band("1").is_err());
    }
}
