//! JSON input and output schemas. Elements are 1-based on the wire.

use std::io::Read;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tropmat::lorentzian::HomPoly;
use tropmat::subsets::{bit, elements, Mask};
use tropmat::valuated::{TropPoint, Valuation, ValuatedMatroid};
use tropmat::{parse_rat, LaurentElem, Rat, TropVal};

/// A problem with the input: malformed JSON, bad fields, unknown builtins.
/// Reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub type In<T> = Result<T, InputError>;

pub fn bad<T>(msg: impl Into<String>) -> In<T> {
    Err(InputError(msg.into()))
}

/// Reads `-` (stdin), inline JSON (starting with `{` or `[`), or a file path.
pub fn read_json(src: &str) -> In<Value> {
    let (text, origin) = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        (s, "stdin".to_string())
    } else if src.trim_start().starts_with(['{', '[']) {
        (src.to_string(), "inline argument".to_string())
    } else {
        let s = std::fs::read_to_string(src).map_err(|e| InputError(format!("{src}: {e}")))?;
        (s, src.to_string())
    };
    serde_json::from_str(&text).map_err(|e| {
        InputError(format!("malformed JSON in {origin} at line {}, column {}: {e}", e.line(), e.column()))
    })
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> In<T> {
    serde_json::from_value(v).map_err(|e| InputError(format!("not a {what}: {e}")))
}

/// A number or a string holding a rational, `inf`, or a Laurent polynomial.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(k) => k.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
    pub fn trop(&self) -> In<TropVal> {
        Ok(self.text().parse()?)
    }
    pub fn laurent(&self) -> In<LaurentElem> {
        Ok(self.text().parse()?)
    }
}

pub fn set_mask(set: &[usize], n: usize) -> In<Mask> {
    let mut m = 0;
    for &e in set {
        if e == 0 || e > n {
            return bad(format!("element {e} is outside 1..={n}"));
        }
        if m & bit(e - 1) != 0 {
            return bad(format!("element {e} repeated in {set:?}"));
        }
        m |= bit(e - 1);
    }
    Ok(m)
}

pub fn mask_set(m: Mask) -> Vec<usize> {
    elements(m).into_iter().map(|i| i + 1).collect()
}

fn check_n(n: usize) -> In<()> {
    if n > 64 {
        return bad(format!("ground sets are limited to 64 elements, got {n}"));
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatroidJson {
    n: usize,
    bases: Vec<Vec<usize>>,
}

/// Ground size and bases, not yet checked against the axioms.
pub struct RawMatroid {
    pub n: usize,
    pub bases: Vec<Mask>,
}

pub fn parse_matroid(v: Value) -> In<RawMatroid> {
    let m: MatroidJson = from_value(v, "matroid {\"n\", \"bases\"}")?;
    check_n(m.n)?;
    let bases = m.bases.iter().map(|b| set_mask(b, m.n)).collect::<In<_>>()?;
    Ok(RawMatroid { n: m.n, bases })
}

pub fn matroid_json(m: &tropmat::Matroid) -> Value {
    json!({ "n": m.n(), "bases": m.bases().iter().map(|&b| mask_set(b)).collect::<Vec<_>>() })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    set: Vec<usize>,
    value: Scalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuatedJson {
    n: usize,
    d: usize,
    entries: Vec<EntryJson>,
}

/// Finite values only; omitted and `inf` entries are `∞`.
pub struct RawValuated {
    pub n: usize,
    pub d: usize,
    pub values: Valuation,
}

pub fn parse_valuated(v: Value) -> In<RawValuated> {
    let j: ValuatedJson = from_value(v, "valuated matroid {\"n\", \"d\", \"entries\"}")?;
    check_n(j.n)?;
    let mut values = Valuation::new();
    for e in &j.entries {
        let s = set_mask(&e.set, j.n)?;
        if e.set.len() != j.d {
            return bad(format!("entry {:?} is not a {}-subset", e.set, j.d));
        }
        if let TropVal::Fin(r) = e.value.trop()? {
            if values.insert(s, r).is_some() {
                return bad(format!("entry {:?} given twice", e.set));
            }
        }
    }
    Ok(RawValuated { n: j.n, d: j.d, values })
}

pub fn valuated_json(mu: &ValuatedMatroid) -> Value {
    let entries: Vec<Value> = mu
        .values()
        .iter()
        .map(|(&b, v)| json!({ "set": mask_set(b), "value": tropmat::arith::fmt_rat(v) }))
        .collect();
    json!({ "n": mu.n(), "d": mu.rank(), "entries": entries })
}

pub fn trop_str(v: &TropVal) -> String {
    match v {
        TropVal::Fin(r) => tropmat::arith::fmt_rat(r),
        TropVal::Inf => "inf".into(),
    }
}

pub fn point_json(p: &[TropVal]) -> Value {
    json!({ "point": p.iter().map(trop_str).collect::<Vec<_>>() })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointJson {
    point: Vec<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsJson {
    points: Vec<Vec<Scalar>>,
}

fn trop_row(r: &[Scalar]) -> In<TropPoint> {
    r.iter().map(Scalar::trop).collect()
}

pub fn parse_point(v: Value) -> In<TropPoint> {
    let p: PointJson = from_value(v, "point {\"point\": [...]}")?;
    trop_row(&p.point)
}

pub fn parse_points(v: Value) -> In<Vec<TropPoint>> {
    let p: PointsJson = from_value(v, "point list {\"points\": [[...], ...]}")?;
    p.points.iter().map(|r| trop_row(r)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exp: Vec<u32>,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

pub fn parse_poly(v: Value) -> In<HomPoly> {
    let p: PolyJson = from_value(v, "polynomial {\"n\", \"terms\"}")?;
    let mut terms = Vec::with_capacity(p.terms.len());
    for t in p.terms {
        if t.exp.len() != p.n {
            return bad(format!("exponent {:?} has length {}, expected {}", t.exp, t.exp.len(), p.n));
        }
        terms.push((t.exp, parse_rat(&t.coeff)?));
    }
    Ok(HomPoly::new(p.n, terms)?)
}

pub fn poly_json(f: &HomPoly) -> Value {
    let terms: Vec<TermJson> = f
        .terms()
        .iter()
        .map(|(e, c)| TermJson {
            exp: e.clone(),
            coeff: tropmat::arith::fmt_rat(c),
        })
        .collect();
    json!({ "n": f.n(), "terms": terms })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: Vec<Vec<Scalar>>,
}

fn rectangular<T>(rows: Vec<Vec<T>>) -> In<Vec<Vec<T>>> {
    let w = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || w == 0 || rows.iter().any(|r| r.len() != w) {
        return bad("matrix must be nonempty and rectangular");
    }
    Ok(rows)
}

/// Matrix entries as Laurent polynomials in `t`.
pub fn parse_laurent_matrix(v: Value) -> In<Vec<Vec<LaurentElem>>> {
    let m: MatrixJson = from_value(v, "matrix {\"rows\": [[...], ...]}")?;
    let rows = m.rows.iter().map(|r| r.iter().map(Scalar::laurent).collect::<In<Vec<_>>>()).collect::<In<_>>()?;
    rectangular(rows)
}

/// Matrix entries as rationals; `None` if some entry is not a constant.
pub fn rational_matrix(a: &[Vec<LaurentElem>]) -> Option<Vec<Vec<Rat>>> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let mut ts = x.terms();
                    match (ts.next(), ts.next()) {
                        (None, _) => Some(Rat::from_integer(0.into())),
                        (Some((0, c)), None) => Some(c.clone()),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matrix_json(a: &[Vec<Rat>]) -> Value {
    json!({ "rows": a.iter().map(|r| r.iter().map(tropmat::arith::fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>() })
}

/// `"1234,1256"` or `"12 34"` style lists of 1-based sets.
pub fn parse_set_list(s: &str, n: usize) -> In<Vec<Mask>> {
    s.split([',', ' ', ';'])
        .filter(|t| !t.is_empty())
        .map(|t| {
            let digits: Vec<usize> = t
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| InputError(format!("bad set {t:?}"))))
                .collect::<In<_>>()?;
            set_mask(&digits, n)
        })
        .collect()
}
