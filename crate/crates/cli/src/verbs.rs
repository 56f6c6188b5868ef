//! One function per verb. Each returns a report or an input error.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use tropmat::adjoint::{
    adjoint_from_points, adjoint_violation, as_small_integers, cofactor_check, cofactor_identity_check_all,
    find_isomorphism, plethystic_diagram_check, simplify_adjoint, square_cofactor_check, trivial_adjoint,
    tropicalize_realization, valuated_adjoint_violation, AdjointFailure,
};
use tropmat::arith::{fmt_rat, int};
use tropmat::dressian::{dressian_dimension_gap, interpolate, levi_failure_witness, longest_subclass_chain};
use tropmat::gen::{random_rational_matrix, rng};
use tropmat::lorentzian::{
    basis_generating, basis_polynomial, lorentzian_violation_par, segment, slices, HomPoly, LorentzianFailure,
    MConvexFn,
};
use tropmat::matroid::{
    dual_order, enumerate_linear_subclasses, find_poset_isomorphism, flat_lattice_order, graphic_kn,
    have_common_elementary_quotient, is_quotient, levi_intersection_property, linear_subclass_closure,
    projective_points, quotient_from_linear_subclass, quotient_lattice, sets, subclass_of_quotient, uniform, vamos,
};
use tropmat::subsets::{binomial, fmt_set, Mask};
use tropmat::valuated::{
    complete_flag_to_point, lines_intersect, plucker_violation, point_in_trop, point_matroid, quotient_witness,
    ValuatedMatroid,
};
use tropmat::{Error, Limits, Matroid, Rat, TropVal};

use crate::builtins::{self, Builtin};
use crate::io::{self, bad, mask_set, In, InputError};

pub struct Report {
    pub verb: String,
    pub verdict: bool,
    pub witness: Value,
    pub stats: Value,
}

impl Report {
    fn new(verb: &str, verdict: bool, witness: Value, stats: Value) -> Self {
        Report {
            verb: verb.into(),
            verdict,
            witness,
            stats,
        }
    }
}

pub struct Ctx {
    pub limits: Limits,
    pub jobs: usize,
}

/// A loaded input of any kind.
enum Obj {
    Matroid(Matroid),
    Valuated(ValuatedMatroid),
    Poly(HomPoly),
    Matrix(Value),
}

fn builtin_name(src: &str) -> Option<&str> {
    src.strip_prefix("builtin:")
}

fn load(src: &str) -> In<Obj> {
    if let Some(name) = builtin_name(src) {
        return Ok(match builtins::lookup(name)? {
            Builtin::Matroid(m) => Obj::Matroid(m),
            Builtin::Valuated(v) => Obj::Valuated(v),
            Builtin::Poly(p) => Obj::Poly(p),
            Builtin::Matrix(a) => Obj::Matrix(io::matrix_json(&a)),
        });
    }
    let v = io::read_json(src)?;
    let has = |k: &str| v.get(k).is_some();
    if has("entries") {
        let r = io::parse_valuated(v)?;
        Ok(Obj::Valuated(ValuatedMatroid::new(r.n, r.d, r.values)?))
    } else if has("bases") {
        let r = io::parse_matroid(v)?;
        Ok(Obj::Matroid(Matroid::from_bases(r.n, r.bases)?))
    } else if has("terms") {
        Ok(Obj::Poly(io::parse_poly(v)?))
    } else if has("rows") {
        Ok(Obj::Matrix(v))
    } else {
        bad(format!("{src}: cannot tell the input kind; expected one of the keys bases, entries, terms, rows"))
    }
}

fn matroid(src: &str) -> In<Matroid> {
    match load(src)? {
        Obj::Matroid(m) => Ok(m),
        _ => bad(format!("{src}: expected a matroid")),
    }
}

/// A valuated matroid; a plain matroid is read with the trivial valuation.
fn valuated(src: &str) -> In<ValuatedMatroid> {
    match load(src)? {
        Obj::Valuated(v) => Ok(v),
        Obj::Matroid(m) => Ok(ValuatedMatroid::trivial(&m)),
        _ => bad(format!("{src}: expected a valuated matroid")),
    }
}

fn poly(src: &str) -> In<HomPoly> {
    match load(src)? {
        Obj::Poly(p) => Ok(p),
        _ => bad(format!("{src}: expected a polynomial")),
    }
}

fn laurent_matrix(src: &str) -> In<Vec<Vec<tropmat::LaurentElem>>> {
    match load(src)? {
        Obj::Matrix(v) => io::parse_laurent_matrix(v),
        _ => bad(format!("{src}: expected a matrix")),
    }
}

fn sets_json(xs: &[Mask]) -> Value {
    json!(xs.iter().map(|&x| mask_set(x)).collect::<Vec<_>>())
}

fn matroid_stats(m: &Matroid) -> Value {
    json!({
        "n": m.n(),
        "rank": m.rank(),
        "bases": m.bases().len(),
        "hyperplanes": m.hyperplanes().len(),
        "flats": m.all_flats().len(),
        "loops": mask_set(m.loops()),
        "simple": m.is_simple(),
    })
}

/// Splits library errors into mathematical verdicts and input errors.
fn axiom_failure(e: Error) -> In<Value> {
    match e {
        Error::Exchange { b1, b2, i } => Ok(json!({ "axiom": "basis exchange", "b1": b1, "b2": b2, "i": i })),
        Error::Plucker { i, j } => Ok(json!({ "axiom": "Plücker", "I": i, "J": j })),
        e => Err(InputError(e.to_string())),
    }
}

pub fn validate_matroid(src: &str) -> In<Report> {
    let built = if let Some(name) = builtin_name(src) {
        Ok(builtins::matroid(name)?)
    } else {
        let r = io::parse_matroid(io::read_json(src)?)?;
        Matroid::from_bases(r.n, r.bases)
    };
    Ok(match built {
        Ok(m) => Report::new("validate-matroid", true, Value::Null, matroid_stats(&m)),
        Err(e) => Report::new("validate-matroid", false, axiom_failure(e)?, json!({})),
    })
}

pub fn validate_valuated(src: &str) -> In<Report> {
    let verb = "validate-valuated";
    if builtin_name(src).is_some() {
        let mu = valuated(src)?;
        return Ok(Report::new(verb, true, Value::Null, valuated_stats(&mu)));
    }
    let r = io::parse_valuated(io::read_json(src)?)?;
    if r.values.is_empty() {
        return Ok(Report::new(verb, false, json!({ "axiom": "nonempty support" }), json!({})));
    }
    if let Err(e) = Matroid::from_bases(r.n, r.values.keys().copied()) {
        return Ok(Report::new(verb, false, axiom_failure(e)?, json!({})));
    }
    Ok(match ValuatedMatroid::new(r.n, r.d, r.values) {
        Ok(mu) => Report::new(verb, true, Value::Null, valuated_stats(&mu)),
        Err(e) => Report::new(verb, false, axiom_failure(e)?, json!({})),
    })
}

fn valuated_stats(mu: &ValuatedMatroid) -> Value {
    json!({ "n": mu.n(), "rank": mu.rank(), "finite_values": mu.values().len(), "trivial": mu.is_trivial() })
}

pub fn plucker_check(src: &str) -> In<Report> {
    let verb = "plucker-check";
    let (n, d, values) = if builtin_name(src).is_some() {
        let mu = valuated(src)?;
        (mu.n(), mu.rank(), mu.values().clone())
    } else {
        let r = io::parse_valuated(io::read_json(src)?)?;
        (r.n, r.d, r.values)
    };
    let stats = json!({ "n": n, "rank": d, "finite_values": values.len() });
    Ok(match plucker_violation(n, d, &values) {
        None => Report::new(verb, true, Value::Null, stats),
        Some((i, j)) => Report::new(verb, false, json!({ "I": mask_set(i), "J": mask_set(j) }), stats),
    })
}

pub fn quotient_check(a: &str, b: &str) -> In<Report> {
    let verb = "quotient-check";
    match (load(a)?, load(b)?) {
        (Obj::Matroid(m), Obj::Matroid(q)) => {
            if m.n() != q.n() {
                return bad("quotient-check needs a common ground set");
            }
            let ok = is_quotient(&m, &q);
            let witness = if ok {
                Value::Null
            } else if q.rank() > m.rank() {
                json!({ "reason": "rank increases" })
            } else {
                let f = q.all_flats().into_iter().find(|&f| !m.is_flat(f)).expect("a flat of N is not a flat of M");
                json!({ "flat_of_quotient_not_flat": mask_set(f) })
            };
            Ok(Report::new(verb, ok, witness, json!({ "rank_drop": m.rank() as i64 - q.rank() as i64 })))
        }
        (Obj::Valuated(mu), Obj::Valuated(theta)) => {
            let w = quotient_witness(&mu, &theta)?;
            let witness = w.map_or(Value::Null, |(i, j)| json!({ "I": mask_set(i), "J": mask_set(j) }));
            Ok(Report::new(verb, w.is_none(), witness, json!({ "elementary": true })))
        }
        _ => bad("quotient-check needs two matroids or two valuated matroids"),
    }
}

pub fn linear_subclasses(src: &str, ctx: &Ctx) -> In<Report> {
    let m = matroid(src)?;
    let subs = enumerate_linear_subclasses(&m, &ctx.limits)?;
    let list: Vec<Value> = subs.iter().map(|s| sets_json(&s.hyperplanes)).collect();
    Ok(Report::new(
        "linear-subclasses",
        true,
        json!({ "subclasses": list }),
        json!({ "count": subs.len(), "hyperplanes": m.hyperplanes().len() }),
    ))
}

pub fn quotient_lattice_verb(src: &str, dual_of: Option<&str>, ctx: &Ctx) -> In<Report> {
    let m = matroid(src)?;
    let lat = quotient_lattice(&m, &ctx.limits)?;
    let (shortest, longest) = lat.chain_lengths();
    let mut witness = json!({
        "subclasses": lat.subclasses.iter().map(|s| sets_json(&s.hyperplanes)).collect::<Vec<_>>(),
        "covers": lat.covers,
        "join_irreducibles": lat.join_irreducibles,
        "bottom": lat.bottom,
        "top": lat.top,
    });
    let mut verdict = true;
    if let Some(other) = dual_of {
        let (flats, le) = flat_lattice_order(&matroid(other)?);
        let iso = find_poset_isomorphism(&lat.le, &dual_order(&le));
        verdict = iso.is_some();
        witness["dual_isomorphism"] =
            json!(iso.map(|p| p.iter().map(|&k| mask_set(flats[k])).collect::<Vec<_>>()));
    }
    let stats = json!({ "size": lat.len(), "covers": lat.covers.len(), "shortest_chain": shortest, "longest_chain": longest });
    Ok(Report::new("quotient-lattice", verdict, witness, stats))
}

pub fn levi_check(src: &str, ctx: &Ctx) -> In<Report> {
    let m = matroid(src)?;
    let r = levi_intersection_property(&m, &ctx.limits)?;
    let witness = r.witness.as_deref().map_or(Value::Null, |w| json!({ "hyperplanes": sets_json(w) }));
    Ok(Report::new("levi-check", r.holds, witness, json!({ "rank": m.rank(), "hyperplane_count": m.hyperplanes().len() })))
}

pub fn common_quotient(a: &str, b: &str, ctx: &Ctx) -> In<Report> {
    let (m1, m2) = (matroid(a)?, matroid(b)?);
    if m1.n() != m2.n() || m1.rank() != m2.rank() {
        return bad("common-quotient needs two matroids of equal rank on one ground set");
    }
    let common: Vec<Mask> = m1.all_flats().into_iter().filter(|&f| m2.is_flat(f)).collect();
    let found = have_common_elementary_quotient(&m1, &m2, &ctx.limits)?;
    let witness = match &found {
        Some(q) => json!({ "quotient": io::matroid_json(q) }),
        None => json!({ "common_flats": sets_json(&common) }),
    };
    Ok(Report::new("common-quotient", found.is_some(), witness, json!({ "common_flats": common.len() })))
}

fn failure_json(f: &LorentzianFailure) -> Value {
    match f {
        LorentzianFailure::Support(w) => json!({ "kind": "support", "x": w.x, "y": w.y, "i": w.i + 1 }),
        LorentzianFailure::Signature { a, n_plus } => json!({ "kind": "signature", "derivative": a, "n_plus": n_plus }),
    }
}

fn lorentzian_report(verb: &str, f: &HomPoly, ctx: &Ctx, extra: Value) -> Report {
    let fail = lorentzian_violation_par(f, ctx.jobs);
    let mut witness = extra;
    if let Some(e) = &fail {
        witness["failure"] = failure_json(e);
    }
    if witness.as_object().is_some_and(|o| o.is_empty()) {
        witness = Value::Null;
    }
    Report::new(verb, fail.is_none(), witness, json!({ "n": f.n(), "degree": f.degree(), "terms": f.terms().len() }))
}

pub fn lorentzian_check(src: &str, ctx: &Ctx) -> In<Report> {
    Ok(lorentzian_report("lorentzian-check", &poly(src)?, ctx, json!({})))
}

pub fn proper_position(h: &str, f: &str, ctx: &Ctx) -> In<Report> {
    let (h, f) = (poly(h)?, poly(f)?);
    if h.is_zero() || f.is_zero() || f.degree() != h.degree() + 1 || f.n() != h.n() {
        return bad("proper-position needs nonzero h and f in the same variables with deg f = deg h + 1");
    }
    let g = f.with_new_variable(&h)?;
    Ok(lorentzian_report("proper-position", &g, ctx, json!({})))
}

pub fn fq(src: &str, qs: &[String], ctx: &Ctx) -> In<Report> {
    let mu = valuated(src)?;
    let (phi, k) = MConvexFn::from_valuated(&mu).integer_rescaled();
    let mut all = true;
    let mut polys = Vec::new();
    for q in qs {
        let q: Rat = tropmat::parse_rat(q)?;
        let f = basis_generating(&phi, &q)?;
        let fail = lorentzian_violation_par(&f, ctx.jobs);
        all &= fail.is_none();
        polys.push(json!({
            "q": fmt_rat(&q),
            "polynomial": io::poly_json(&f),
            "lorentzian": fail.is_none(),
            "failure": fail.as_ref().map(failure_json),
        }));
    }
    Ok(Report::new("fq", all, json!({ "polynomials": polys }), json!({ "rescaling": k.to_string(), "q_count": qs.len() })))
}

pub fn segment_verb(src: &str, var: usize, from: u32, to: u32, ctx: &Ctx) -> In<Report> {
    let f = poly(src)?;
    if var == 0 || var > f.n() {
        return bad(format!("--var must lie in 1..={}", f.n()));
    }
    let s = segment(&f, var - 1, from, to)?;
    let parts = slices(&f, var - 1)?;
    let consecutive: Vec<Value> = parts
        .windows(2)
        .enumerate()
        .filter(|(_, w)| !w[0].is_zero() && !w[1].is_zero())
        .map(|(k, w)| {
            let ok = tropmat::lorentzian::proper_position(&w[1], &w[0]).unwrap_or(false);
            json!({ "k": k, "proper_position": ok })
        })
        .collect();
    Ok(lorentzian_report("segment", &s, ctx, json!({ "segment": io::poly_json(&s), "slices": consecutive })))
}

pub fn adjoint_check(a: &str, b: &str) -> In<Report> {
    let verb = "adjoint-check";
    match (load(a)?, load(b)?) {
        (Obj::Matroid(m), Obj::Matroid(w)) => {
            let v = adjoint_violation(&m, &w)?;
            let witness = match &v {
                None => Value::Null,
                Some(t) if t.is_empty() => json!({ "reason": "rank or simplicity" }),
                Some(t) => json!({ "independent_concurrent_triple": sets_json(t) }),
            };
            Ok(Report::new(verb, v.is_none(), witness, json!({ "hyperplanes": m.hyperplanes().len() })))
        }
        (Obj::Valuated(mu), Obj::Valuated(sigma)) => {
            let v = valuated_adjoint_violation(&mu, &sigma)?;
            let witness = match &v {
                None => Value::Null,
                Some(AdjointFailure::Shape(s)) => json!({ "reason": s }),
                Some(AdjointFailure::NotAdjoint(t)) => json!({ "simplification_not_adjoint": sets_json(t) }),
                Some(AdjointFailure::Relation(r)) => json!({ "relation_not_circuit": sets_json(r) }),
            };
            Ok(Report::new(verb, v.is_none(), witness, json!({ "n": mu.n(), "rank": mu.rank() })))
        }
        _ => bad("adjoint-check needs two matroids or two valuated matroids"),
    }
}

fn check_shape(d: usize, n: usize, ctx: &Ctx) -> In<()> {
    if d < 2 || d > n || n > 16 {
        return bad(format!("need 2 ≤ d ≤ n ≤ 16, got a {d}×{n} matrix"));
    }
    let coords = binomial(binomial(n, d - 1), d);
    if coords > ctx.limits.max_states {
        return Err(InputError(
            Error::TooLarge {
                what: "cofactor coordinates".into(),
                size: coords,
                bound: ctx.limits.max_states,
            }
            .to_string(),
        ));
    }
    Ok(())
}

fn identity_all(a: &[Vec<Rat>]) -> (Option<Vec<Mask>>, &'static str) {
    match as_small_integers(a) {
        Some(small) => (cofactor_identity_check_all(&small), "i128"),
        None => (cofactor_identity_check_all(a), "rational"),
    }
}

/// Checks one rational matrix; returns the witness for a failure.
fn cofactor_one(a: &[Vec<Rat>]) -> (Option<Value>, &'static str) {
    let (d, n) = (a.len(), a[0].len());
    if d == n && !square_cofactor_check(a) {
        return (Some(json!({ "square_case": false })), "rational");
    }
    let (fail, ring) = identity_all(a);
    (fail.map(|js| json!({ "columns": sets_json(&js) })), ring)
}

pub fn cofactor_verify(src: Option<&str>, random: Option<&[usize]>, seed: u64, ctx: &Ctx) -> In<Report> {
    let verb = "cofactor-verify";
    if let Some(spec) = random {
        let &[d, n, count] = spec else {
            return bad("--random takes D N COUNT");
        };
        check_shape(d, n, ctx)?;
        let mut r = rng(seed);
        for k in 0..count {
            let a = random_rational_matrix(&mut r, d, n, 5);
            if let (Some(w), _) = cofactor_one(&a) {
                return Ok(Report::new(verb, false, json!({ "matrix": io::matrix_json(&a), "failure": w, "index": k }), json!({ "checked": k + 1, "seed": seed })));
            }
        }
        return Ok(Report::new(verb, true, Value::Null, json!({ "checked": count, "seed": seed })));
    }
    let Some(src) = src else {
        return bad("cofactor-verify needs a matrix or --random D N COUNT");
    };
    let a = laurent_matrix(src)?;
    let (d, n) = (a.len(), a[0].len());
    check_shape(d, n, ctx)?;
    if let Some(r) = io::rational_matrix(&a) {
        let (fail, ring) = cofactor_one(&r);
        let stats = json!({ "d": d, "n": n, "coordinates": binomial(binomial(n, d - 1), d), "arithmetic": ring });
        return Ok(Report::new(verb, fail.is_none(), fail.unwrap_or(Value::Null), stats));
    }
    // Laurent entries: check the tropical cofactor formulas on (μ, Σ).
    let (mu, sigma) = tropicalize_realization(&a)?;
    let rep = cofactor_check(&mu, &sigma)?;
    let witness = if rep.violations.is_empty() { Value::Null } else { json!({ "violations": rep.violations }) };
    Ok(Report::new(verb, rep.violations.is_empty(), witness, json!({ "d": d, "n": n, "checked": rep.checked })))
}

pub fn plethysm_check(src: &str, ctx: &Ctx) -> In<Report> {
    let a = laurent_matrix(src)?;
    let Some(r) = io::rational_matrix(&a) else {
        return bad("plethysm-check needs a rational matrix");
    };
    let (d, n) = (r.len(), r[0].len());
    check_shape(d, n, ctx)?;
    let ok = plethystic_diagram_check(&r);
    Ok(Report::new("plethysm-check", ok, Value::Null, json!({ "d": d, "n": n })))
}

pub fn tropicalize(src: &str) -> In<Report> {
    let a = laurent_matrix(src)?;
    let (mu, sigma) = tropicalize_realization(&a)?;
    let adjoint = valuated_adjoint_violation(&mu, &sigma)?.is_none();
    Ok(Report::new(
        "tropicalize",
        true,
        json!({ "mu": io::valuated_json(&mu), "sigma": io::valuated_json(&sigma) }),
        json!({ "d": mu.rank(), "n": mu.n(), "sigma_ground": sigma.n(), "adjoint": adjoint }),
    ))
}

pub fn interpolate_verb(mu: &str, sigma: &str, points: &str) -> In<Report> {
    let (mu, sigma) = (valuated(mu)?, valuated(sigma)?);
    let pts = io::parse_points(io::read_json(points)?)?;
    let theta = interpolate(&mu, &sigma, &pts)?;
    Ok(Report::new(
        "interpolate",
        true,
        json!({ "theta": io::valuated_json(&theta) }),
        json!({ "points": pts.len(), "finite_values": theta.values().len() }),
    ))
}

pub fn levi_witness(src: &str, hyperplanes: &str, c: &str) -> In<Report> {
    let m = matroid(src)?;
    let hs = io::parse_set_list(hyperplanes, m.n())?;
    let c: Rat = tropmat::parse_rat(c)?;
    let w = levi_failure_witness(&m, &hs, &c)?;
    let trace: Vec<Value> =
        w.trace.iter().map(|&(h, a, b)| json!({ "forced": mask_set(h), "by": [mask_set(a), mask_set(b)] })).collect();
    let points: Vec<Value> = w.points.iter().map(|p| io::point_json(p)).collect();
    Ok(Report::new(
        "levi-witness",
        true,
        json!({ "points": points, "trace": trace }),
        json!({ "steps": w.trace.len(), "hyperplanes": m.hyperplanes().len() }),
    ))
}

pub fn lines_intersect_verb(a: &str, b: &str) -> In<Report> {
    let (t1, t2) = (valuated(a)?, valuated(b)?);
    let p = lines_intersect(&t1, &t2)?;
    let finite = p.as_ref().map(|p| p.iter().all(TropVal::is_finite));
    Ok(Report::new(
        "lines-intersect",
        p.is_some(),
        p.as_deref().map_or(Value::Null, io::point_json),
        json!({ "n": t1.n(), "finite": finite }),
    ))
}

pub fn flag_complete(mu: &str, point: &str) -> In<Report> {
    let mu = valuated(mu)?;
    let p = io::parse_point(io::read_json(point)?)?;
    if p.len() != mu.n() {
        return bad(format!("point has {} coordinates, expected {}", p.len(), mu.n()));
    }
    if !point_in_trop(&mu, &p)? {
        return Ok(Report::new("flag-complete", false, json!({ "reason": "point is not on the tropical linear space" }), json!({})));
    }
    let flag = complete_flag_to_point(&mu, &point_matroid(&p)?)?;
    let out: Vec<Value> = flag.iter().map(io::valuated_json).collect();
    Ok(Report::new("flag-complete", true, json!({ "flag": out }), json!({ "length": flag.len() })))
}

fn claim(out: &mut serde_json::Map<String, Value>, all: &mut bool, name: &str, got: Value, want: Value) {
    *all &= got == want;
    out.insert(name.into(), json!({ "got": got, "expected": want }));
}

pub const EXAMPLES: &[&str] =
    &["L1-not-convex", "u34-quotients", "vamos", "v8-minus", "fano-adjoint", "projective-gap"];

pub fn paper_example(name: &str, ctx: &Ctx) -> In<Report> {
    let mut out = serde_json::Map::new();
    let mut all = true;
    let c = &mut out;
    let a = &mut all;
    match name {
        "L1-not-convex" => {
            let (h1, h2) = (builtins::h1(), builtins::h2());
            let fm = basis_polynomial(&uniform(3, 4));
            let is_l = |f: &HomPoly| lorentzian_violation_par(f, ctx.jobs).is_none();
            claim(c, a, "h1 Lorentzian", json!(is_l(&h1)), json!(true));
            claim(c, a, "h2 Lorentzian", json!(is_l(&h2)), json!(true));
            claim(c, a, "h1 below f_U34", json!(tropmat::lorentzian::proper_position(&h1, &fm)?), json!(true));
            claim(c, a, "h2 below f_U34", json!(tropmat::lorentzian::proper_position(&h2, &fm)?), json!(true));
            claim(c, a, "h1 + h2 Lorentzian", json!(is_l(&h1.add(&h2)?)), json!(false));
            claim(c, a, "invert(g2) Lorentzian", json!(is_l(&builtins::g2().invert())), json!(false));
        }
        "u34-quotients" => {
            let m = uniform(3, 4);
            claim(c, a, "linear subclasses", json!(enumerate_linear_subclasses(&m, &ctx.limits)?.len()), json!(15));
            for (k, gens) in [(1, vec![]), (2, sets(&["12", "34"])), (3, sets(&["12", "13", "14"]))] {
                let h = linear_subclass_closure(&m, &gens)?;
                let q = quotient_from_linear_subclass(&m, &h)?;
                let want = builtins::u34_quotient(k)?;
                let ok = q == want && subclass_of_quotient(&m, &q) == h;
                claim(c, a, &format!("quotient {k} round trip"), json!(ok), json!(true));
            }
            let lat = quotient_lattice(&m, &ctx.limits)?;
            let (_, k4) = flat_lattice_order(&graphic_kn(4));
            let iso = find_poset_isomorphism(&lat.le, &dual_order(&k4)).is_some();
            claim(c, a, "lattice dual to flats of K4", json!(iso), json!(true));
        }
        "vamos" => {
            let v = vamos();
            let hs = sets(&["1234", "1256", "3456"]);
            let closure = linear_subclass_closure(&v, &hs)?;
            claim(c, a, "closure is every hyperplane", json!(closure.is_trivial(&v)), json!(true));
            claim(c, a, "Levi property", json!(levi_intersection_property(&v, &ctx.limits)?.holds), json!(false));
            let w = levi_failure_witness(&v, &hs, &int(1))?;
            let trivial = ValuatedMatroid::trivial(&v);
            let on = w.points.iter().map(|p| point_in_trop(&trivial, p)).collect::<tropmat::Result<Vec<_>>>()?;
            claim(c, a, "witness points on Trop M", json!(on.iter().all(|&b| b)), json!(true));
        }
        "v8-minus" => {
            let (q1, q2) = builtins::v8_minus_quotients();
            let common: BTreeSet<Mask> = q1.all_flats().into_iter().filter(|&f| q2.is_flat(f)).collect();
            let mut got: Vec<Mask> = common.into_iter().collect();
            got.sort_by_key(|&f| (f.count_ones(), tropmat::matroid::lex_key(f)));
            let names: Vec<String> = got.iter().map(|&f| fmt_set(f)).collect();
            let want = ["∅", "7", "8", "127", "568", "3478", "12345678"];
            claim(c, a, "common flats", json!(names), json!(want.iter().map(|s| fmt_want(s)).collect::<Vec<_>>()));
            let none = have_common_elementary_quotient(&q1, &q2, &ctx.limits)?.is_none();
            claim(c, a, "no common elementary quotient", json!(none), json!(true));
            let u = uniform(1, 1);
            let none = have_common_elementary_quotient(&q1.direct_sum(&u)?, &q2.direct_sum(&u)?, &ctx.limits)?.is_none();
            claim(c, a, "none after adding a coloop", json!(none), json!(true));
        }
        "fano-adjoint" => {
            let pts = projective_points(2)?;
            let (m, w) = adjoint_from_points(&pts)?;
            let mu = ValuatedMatroid::trivial(&m);
            let sigma = trivial_adjoint(&m, &w)?;
            claim(c, a, "valuated adjoint", json!(valuated_adjoint_violation(&mu, &sigma)?.is_none()), json!(true));
            let simple = simplify_adjoint(&mu, &sigma)?;
            claim(c, a, "simplification isomorphic to M", json!(find_isomorphism(simple.support(), &m).is_some()), json!(true));
        }
        "projective-gap" => {
            let (dim_v, dim_d, gap) = dressian_dimension_gap(2)?;
            claim(c, a, "dimension gap", json!(gap), json!(2));
            out.insert("dimensions".into(), json!({ "span": dim_v, "dressian": dim_d }));
            let len = longest_subclass_chain(&tropmat::matroid::projective_plane(2)?, &ctx.limits)?;
            claim(&mut out, &mut all, "longest subclass chain of the Fano plane", json!(len), json!(3));
        }
        _ => return bad(format!("unknown example {name:?}; known: {}", EXAMPLES.join(", "))),
    }
    Ok(Report::new("paper-example", all, Value::Object(out), json!({ "example": name })))
}

/// Renders an expected flat the way `fmt_set` does.
fn fmt_want(s: &str) -> String {
    if s == "∅" {
        fmt_set(0)
    } else {
        fmt_set(sets(&[s])[0])
    }
}
