//! The space of codimension-one tropical linear subspaces of `Trop μ`.
//!
//! A point `θ` is a map on the `(d-1)`-subsets of the ground set; it lies in
//! the space iff every three-term incidence relation vanishes tropically.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{int, Rat, TropVal, TropVal::Fin, TropVal::Inf};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matroid::{
    linear_subclass_closure, linear_subclass_violation, quotient_lattice, LinearSubclass, Matroid,
};
use crate::subsets::{bit, colex_rank, elements, fmt_set, full, k_subsets, popcount, Mask};
use crate::valuated::{
    incidence_violation, normalize, point_in_trop, truncate_by_weights, wedge_point, TropPoint, Valuation,
    ValuatedMatroid,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `θ(A) = ∞` for a dependent `A`.
    Degenerate,
    /// Two bases of one hyperplane.
    Parallel,
    /// Three hyperplanes through a common coline.
    Concurrent,
}

/// One relation: `min_s θ(slot_s) + coeff_s` must vanish tropically.
/// A degenerate relation has a single slot and forces it to ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermRelation {
    pub kind: RelationKind,
    pub slots: Vec<(Mask, TropVal)>,
}

impl ThreeTermRelation {
    pub fn holds(&self, theta: &Valuation) -> bool {
        let terms: Vec<TropVal> = self.slots.iter().map(|(a, c)| &theta_at(theta, *a) + c).collect();
        match self.kind {
            RelationKind::Degenerate => terms[0].is_inf(),
            _ => crate::arith::trop_min_vanishes(&terms).expect("relations have slots"),
        }
    }

    pub fn describe(&self) -> String {
        let slots: Vec<String> = self.slots.iter().map(|(a, _)| fmt_set(*a)).collect();
        format!("{:?}({})", self.kind, slots.join(","))
    }
}

fn theta_at(theta: &Valuation, a: Mask) -> TropVal {
    theta.get(&a).map_or(Inf, |v| Fin(v.clone()))
}

/// The complete list of three-term incidence relations cutting out the space.
pub fn three_term_relations(mu: &ValuatedMatroid) -> Vec<ThreeTermRelation> {
    let (n, d) = (mu.n(), mu.rank());
    let m = mu.support();
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    for a in k_subsets(n, d - 1) {
        if !m.is_independent(a) {
            out.push(ThreeTermRelation {
                kind: RelationKind::Degenerate,
                slots: vec![(a, Fin(Rat::zero()))],
            });
        }
    }
    if d < 2 {
        return out;
    }
    // Parallel: A = Di, B = Dj spanning the same hyperplane, one k per pair.
    for dd in k_subsets(n, d - 2) {
        if !m.is_independent(dd) {
            continue;
        }
        let rest = elements(full(n) & !dd);
        for (x, &i) in rest.iter().enumerate() {
            for &j in &rest[x + 1..] {
                let (a, b) = (dd | bit(i), dd | bit(j));
                if !m.is_independent(a) || !m.is_independent(b) || m.closure(a) != m.closure(b) {
                    continue;
                }
                if let Some(k) = rest.iter().copied().find(|&k| m.is_basis(a | bit(k))) {
                    out.push(ThreeTermRelation {
                        kind: RelationKind::Parallel,
                        slots: vec![(a, mu.value(b | bit(k))), (b, mu.value(a | bit(k)))],
                    });
                }
            }
        }
    }
    for dd in k_subsets(n, d - 2) {
        if !m.is_independent(dd) {
            continue;
        }
        let rest = elements(full(n) & !dd);
        for (x, &i) in rest.iter().enumerate() {
            for (y, &j) in rest.iter().enumerate().skip(x + 1) {
                for &k in &rest[y + 1..] {
                    let slots = vec![
                        (dd | bit(i), mu.value(dd | bit(j) | bit(k))),
                        (dd | bit(j), mu.value(dd | bit(i) | bit(k))),
                        (dd | bit(k), mu.value(dd | bit(i) | bit(j))),
                    ];
                    if slots.iter().all(|(a, c)| m.is_independent(*a) && c.is_finite()) {
                        out.push(ThreeTermRelation {
                            kind: RelationKind::Concurrent,
                            slots,
                        });
                    }
                }
            }
        }
    }
    out
}

/// First failing three-term relation, or `None` if `θ` lies in the space.
pub fn d1_violation(mu: &ValuatedMatroid, theta: &Valuation) -> Option<ThreeTermRelation> {
    three_term_relations(mu).into_iter().find(|r| !r.holds(theta))
}

/// Whether `θ` lies in the space. `θ` must have a finite value.
pub fn d1_membership(mu: &ValuatedMatroid, theta: &Valuation) -> bool {
    !theta.is_empty() && d1_violation(mu, theta).is_none()
}

/// Membership through every incidence relation, not just the three-term ones.
pub fn d1_membership_full(mu: &ValuatedMatroid, theta: &Valuation) -> bool {
    !theta.is_empty() && incidence_violation(mu, theta, mu.n()).is_none()
}

/// Coordinates on the hyperplanes: `θ_s(H) = θ(D_H)` for a fixed basis `D_H`
/// of each hyperplane `H`.
#[derive(Clone, Debug)]
pub struct SimplifiedSpace {
    pub n: usize,
    pub d: usize,
    pub hyperplanes: Vec<Mask>,
    /// The chosen basis of each hyperplane.
    pub basis_choice: Vec<Mask>,
    /// `θ(A) - θ(D_H)` for every independent `(d-1)`-set `A` spanning `H`.
    pub offsets: BTreeMap<Mask, (usize, Rat)>,
    /// Each concurrent triple with its coefficients.
    pub equations: Vec<([usize; 3], [Rat; 3])>,
}

/// The lexicographically smallest basis of a flat of rank `r`.
fn lex_basis(m: &Matroid, f: Mask, r: usize) -> Mask {
    let mut b = 0;
    for e in elements(f) {
        if popcount(b) < r && m.is_independent(b | bit(e)) {
            b |= bit(e);
        }
    }
    b
}

impl SimplifiedSpace {
    /// Uses the lexicographically smallest basis of every hyperplane.
    pub fn new(mu: &ValuatedMatroid) -> Result<Self> {
        if mu.rank() < 2 {
            return Err(Error::Precondition("the simplified space needs rank at least 2".into()));
        }
        let m = mu.support();
        let bases = m.hyperplanes().iter().map(|&h| lex_basis(m, h, mu.rank() - 1)).collect();
        Self::with_bases(mu, bases)
    }

    pub fn with_bases(mu: &ValuatedMatroid, basis_choice: Vec<Mask>) -> Result<Self> {
        let (n, d) = (mu.n(), mu.rank());
        let m = mu.support();
        if !m.is_simple() {
            return Err(Error::Precondition("the simplified space needs a simple matroid".into()));
        }
        if d < 2 {
            return Err(Error::Precondition("the simplified space needs rank at least 2".into()));
        }
        let hyperplanes = m.hyperplanes().to_vec();
        if basis_choice.len() != hyperplanes.len() {
            return Err(Error::Invalid("need one basis per hyperplane".into()));
        }
        for (h, &b) in hyperplanes.iter().zip(&basis_choice) {
            if popcount(b) != d - 1 || !m.is_independent(b) || m.closure(b) != *h {
                return Err(Error::Invalid(format!("{} is not a basis of {}", fmt_set(b), fmt_set(*h))));
            }
        }
        let mut offsets = BTreeMap::new();
        for a in k_subsets(n, d - 1) {
            if !m.is_independent(a) {
                continue;
            }
            let hi = m.hyperplane_index(m.closure(a)).expect("spans a hyperplane");
            let h = hyperplanes[hi];
            let k = elements(full(n) & !h)[0];
            let off = mu.value(a | bit(k)).unwrap_fin() - mu.value(basis_choice[hi] | bit(k)).unwrap_fin();
            offsets.insert(a, (hi, off));
        }
        let mut equations = Vec::new();
        for (c, members) in m.pencils() {
            let dd = lex_basis(m, c, d - 2);
            // A representative outside the coline on each hyperplane.
            let reps: Vec<usize> = members.iter().map(|&hi| elements(hyperplanes[hi] & !c)[0]).collect();
            for x in 0..members.len() {
                for y in x + 1..members.len() {
                    for z in y + 1..members.len() {
                        let ids = [members[x], members[y], members[z]];
                        let (i, j, k) = (reps[x], reps[y], reps[z]);
                        let coeff = |p: usize, q: usize, r: usize, hi: usize| -> Rat {
                            let a = dd | bit(p);
                            debug_assert_eq!(offsets[&a].0, hi);
                            &offsets[&a].1 + mu.value(dd | bit(q) | bit(r)).unwrap_fin()
                        };
                        equations.push((ids, [coeff(i, j, k, ids[0]), coeff(j, i, k, ids[1]), coeff(k, i, j, ids[2])]));
                    }
                }
            }
        }
        Ok(SimplifiedSpace {
            n,
            d,
            hyperplanes,
            basis_choice,
            offsets,
            equations,
        })
    }

    /// `θ ↦ (θ(D_H))_H`.
    pub fn project(&self, theta: &Valuation) -> TropPoint {
        self.basis_choice.iter().map(|b| theta_at(theta, *b)).collect()
    }

    /// The unique `θ` in the space with the given simplified coordinates.
    pub fn section(&self, ts: &[TropVal]) -> Valuation {
        let mut out = Valuation::new();
        for (&a, (hi, off)) in &self.offsets {
            if let Fin(v) = &ts[*hi] {
                out.insert(a, v + off);
            }
        }
        out
    }

    /// Index of the first concurrent-triple equation failing at `ts`.
    pub fn violation(&self, ts: &[TropVal]) -> Option<usize> {
        self.equations.iter().position(|(ids, c)| {
            let terms: Vec<TropVal> = (0..3).map(|s| ts[ids[s]].add_rat(&c[s])).collect();
            !crate::arith::trop_min_vanishes(&terms).expect("three terms")
        })
    }

    pub fn contains(&self, ts: &[TropVal]) -> bool {
        ts.iter().any(|t| t.is_finite()) && self.violation(ts).is_none()
    }
}

/// A point written as `Σ a_i e_{G_i}` along an ascending chain of hyperplane sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// `(G_i, a_i)`, smallest set first; the last set may be all hyperplanes.
    pub steps: Vec<(LinearSubclass, Rat)>,
}

/// Writes a finite point over the hyperplanes of `M` as a positive
/// combination of indicator vectors of a chain of linear subclasses.
///
/// The point is first shifted so its minimum is 0 unless it is already
/// nonnegative. Fails with a violated concurrent triple if some level set is
/// not a linear subclass.
pub fn order_complex_decompose(m: &Matroid, w: &[Rat]) -> Result<ChainDecomposition> {
    let hs = m.hyperplanes();
    if w.len() != hs.len() {
        return Err(Error::Invalid(format!("expected {} coordinates, got {}", hs.len(), w.len())));
    }
    let min = w.iter().min().cloned().unwrap_or_else(Rat::zero);
    let w: Vec<Rat> = if min < Rat::zero() { w.iter().map(|x| x - &min).collect() } else { w.to_vec() };
    let mut levels: Vec<Rat> = w.iter().filter(|x| **x > Rat::zero()).cloned().collect();
    levels.sort();
    levels.dedup();
    let mut steps = Vec::new();
    let mut prev = Rat::zero();
    let mut chain = Vec::new();
    for t in &levels {
        chain.push((t.clone(), t - &prev));
        prev = t.clone();
    }
    for (t, a) in chain.into_iter().rev() {
        let set: Vec<Mask> = hs.iter().zip(&w).filter(|(_, x)| **x >= t).map(|(h, _)| *h).collect();
        if set.len() < hs.len() {
            if let Some(tri) = linear_subclass_violation(m, &set)? {
                return Err(Error::Precondition(format!(
                    "level set is not a linear subclass: {}",
                    tri.iter().map(|&h| fmt_set(h)).collect::<Vec<_>>().join(",")
                )));
            }
        }
        steps.push((LinearSubclass { hyperplanes: set }, a));
    }
    Ok(ChainDecomposition { steps })
}

/// The generators `δ` of the join-irreducible linear subclasses: 0 off the
/// subclass, ∞ on it.
pub fn join_irreducible_generators(m: &Matroid, limits: &Limits) -> Result<Vec<TropPoint>> {
    let lat = quotient_lattice(m, limits)?;
    let hs = m.hyperplanes();
    Ok(lat
        .join_irreducibles
        .iter()
        .map(|&x| {
            let s = &lat.subclasses[x];
            hs.iter().map(|&h| if s.contains(h) { Inf } else { Fin(Rat::zero()) }).collect()
        })
        .collect())
}

/// Whether the finite point `w` is a tropical (min-plus) combination of the
/// generators, by residuation: `w` is in the span iff
/// `w = min_g (λ_g + g)` with `λ_g = max_H (w(H) - g(H))`.
pub fn in_tropical_span(generators: &[TropPoint], w: &[Rat]) -> bool {
    let mut best: Vec<TropVal> = vec![Inf; w.len()];
    for g in generators {
        let lambda = g
            .iter()
            .zip(w)
            .filter_map(|(gh, wh)| gh.finite().map(|x| wh - x))
            .max();
        let Some(lambda) = lambda else { continue };
        for (b, gh) in best.iter_mut().zip(g) {
            *b = b.clone().min(gh.add_rat(&lambda));
        }
    }
    best.iter().zip(w).all(|(b, x)| *b == Fin(x.clone()))
}

/// Certificate that `d-1` points of `Trop M` lie on no common codimension-one
/// tropical linear subspace.
#[derive(Clone, Debug)]
pub struct LeviWitness {
    pub points: Vec<TropPoint>,
    /// `(H, H', H'')`: `H` joins because it is concurrent with two earlier ones.
    pub trace: Vec<(Mask, Mask, Mask)>,
}

/// The points `w_i = c·e_{H_i}` and the propagation forcing `θ_H ≥ c` on
/// every hyperplane, for hyperplanes generating the trivial linear subclass.
pub fn levi_failure_witness(m: &Matroid, hs: &[Mask], c: &Rat) -> Result<LeviWitness> {
    let d = m.rank();
    if hs.len() + 1 != d {
        return Err(Error::Invalid(format!("need {} hyperplanes, got {}", d.saturating_sub(1), hs.len())));
    }
    if *c <= Rat::zero() {
        return Err(Error::Invalid("c must be positive".into()));
    }
    if !linear_subclass_closure(m, hs)?.is_trivial(m) {
        return Err(Error::Precondition("the hyperplanes lie in a nontrivial linear subclass".into()));
    }
    let n = m.n();
    let trivial = ValuatedMatroid::trivial(m);
    let points: Vec<TropPoint> = hs
        .iter()
        .map(|&h| (0..n).map(|k| Fin(if h & bit(k) != 0 { c.clone() } else { Rat::zero() })).collect())
        .collect();
    for p in &points {
        if !point_in_trop(&trivial, p)? {
            return Err(Error::Internal("witness point is off the tropical linear space".into()));
        }
    }
    let all = m.hyperplanes();
    let triples = m.concurrent_triples_unchecked();
    let mut have: Vec<bool> = all.iter().map(|h| hs.contains(h)).collect();
    let mut trace = Vec::new();
    loop {
        let round: Vec<(usize, usize, usize)> = triples
            .iter()
            .flat_map(|t| [(t[0], t[1], t[2]), (t[1], t[0], t[2]), (t[2], t[0], t[1])])
            .filter(|&(x, y, z)| !have[x] && have[y] && have[z])
            .collect();
        if round.is_empty() {
            break;
        }
        for (x, y, z) in round {
            if !have[x] {
                have[x] = true;
                trace.push((all[x], all[y], all[z]));
            }
        }
    }
    if have.iter().any(|h| !h) {
        return Err(Error::Internal("propagation stopped before covering all hyperplanes".into()));
    }
    Ok(LeviWitness { points, trace })
}

/// A codimension-one tropical linear subspace of `Trop μ` through the given
/// finite points, cut from the adjoint `Σ` (on the `(d-1)`-subsets in colex
/// order) by the hyperplanes centred at `w_i^{∧(d-1)}`.
pub fn interpolate(mu: &ValuatedMatroid, sigma: &ValuatedMatroid, points: &[TropPoint]) -> Result<ValuatedMatroid> {
    let (n, d) = (mu.n(), mu.rank());
    if d < 2 {
        return Err(Error::Invalid("interpolation needs rank at least 2".into()));
    }
    if points.len() + 1 != d {
        return Err(Error::Invalid(format!("need {} points, got {}", d - 1, points.len())));
    }
    let ground = crate::subsets::binomial(n, d - 1);
    if sigma.n() != ground || sigma.rank() != d {
        return Err(Error::Invalid(format!("adjoint must have rank {d} on {ground} elements")));
    }
    for (i, w) in points.iter().enumerate() {
        if w.iter().any(|x| x.is_inf()) {
            return Err(Error::Unsupported(
                "points with infinite coordinates must be handled by contracting their support first".into(),
            ));
        }
        if !point_in_trop(mu, w)? {
            return Err(Error::Precondition(format!("point {} is not on the tropical linear space", i + 1)));
        }
    }
    let mut cur = sigma.clone();
    for w in points {
        let v = wedge_point(w, d - 1)?;
        let weights: Vec<TropVal> = v.iter().map(|x| Fin(-x)).collect();
        cur = truncate_by_weights(&cur, &weights)?;
    }
    let values: Valuation = k_subsets(n, d - 1)
        .filter_map(|b| cur.value(bit(colex_rank(b))).finite().map(|v| (b, v.clone())))
        .collect();
    let theta = ValuatedMatroid::new(n, d - 1, normalize(&values))?;
    if !d1_membership(mu, theta.values()) {
        return Err(Error::Internal("interpolant is not a quotient".into()));
    }
    for w in points {
        if !point_in_trop(&theta, w)? {
            return Err(Error::Internal("interpolant misses a point".into()));
        }
    }
    Ok(theta)
}

/// `max{q^{μ(Djk)} a_{Di}, q^{μ(Dik)} a_{Dj}, q^{μ(Dij)} a_{Dk}}` for one relation.
#[derive(Clone, Debug)]
pub struct MultiplicativeRelation {
    pub slots: Vec<(Mask, Rat)>,
}

impl MultiplicativeRelation {
    /// Whether the maximum is attained at least twice (or every term is 0).
    pub fn holds(&self, a: &BTreeMap<Mask, Rat>) -> bool {
        let terms: Vec<Rat> = self
            .slots
            .iter()
            .map(|(s, c)| c * a.get(s).cloned().unwrap_or_else(Rat::zero))
            .collect();
        let max = terms.iter().max().cloned().unwrap_or_else(Rat::zero);
        max.is_zero() || terms.iter().filter(|t| **t == max).count() >= 2
    }
}

fn q_pow(q: &Rat, e: &TropVal) -> Result<Rat> {
    match e {
        Inf => Ok(Rat::zero()),
        Fin(x) if x.is_integer() => {
            let k = i32::try_from(x.to_integer()).map_err(|_| Error::Invalid("exponent too large".into()))?;
            Ok(num_traits::pow::Pow::pow(q, k))
        }
        Fin(_) => Err(Error::Invalid("values must be integers; rescale the valuation first".into())),
    }
}

/// The three-term relations in multiplicative form, for coefficient tuples `a_B`.
pub fn multiplicative_relations(mu: &ValuatedMatroid, q: &Rat) -> Result<Vec<MultiplicativeRelation>> {
    if *q <= Rat::zero() || *q >= Rat::one() {
        return Err(Error::Invalid("q must lie strictly between 0 and 1".into()));
    }
    three_term_relations(mu)
        .into_iter()
        .map(|r| {
            let slots = match r.kind {
                RelationKind::Degenerate => vec![(r.slots[0].0, Rat::one())],
                _ => r
                    .slots
                    .iter()
                    .map(|(s, c)| Ok((*s, q_pow(q, c)?)))
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(MultiplicativeRelation { slots })
        })
        .collect()
}

/// Whether `a_B` satisfies every multiplicative relation; a degenerate slot must be 0.
pub fn multiplicative_membership(mu: &ValuatedMatroid, q: &Rat, a: &BTreeMap<Mask, Rat>) -> Result<bool> {
    let rels = multiplicative_relations(mu, q)?;
    let rel_kinds = three_term_relations(mu);
    Ok(rels.iter().zip(&rel_kinds).all(|(r, k)| match k.kind {
        RelationKind::Degenerate => a.get(&r.slots[0].0).is_none_or(|x| x.is_zero()),
        _ => r.holds(a),
    }))
}

/// Dimension bookkeeping for rank-3 valuated matroids on a projective plane
/// over `F_q`, on `q^3 - 1` elements as in the source count:
/// `(dim V, dim D(2, q^3 - 1), gap)` with `dim V = q^3` and `gap = q^3 - 6`.
pub fn dressian_dimension_gap(q: u32) -> Result<(i64, i64, i64)> {
    if q != 2 && q != 3 {
        return Err(Error::Unsupported(format!("q = {q}; only 2 and 3 are supported")));
    }
    let q3 = i64::from(q).pow(3);
    let dim_v = q3;
    let dim_dressian = 2 * q3 - 6;
    Ok((dim_v, dim_dressian, dim_dressian - dim_v))
}

/// Longest maximal chain in the lattice of linear subclasses, from `M`
/// down to the truncation.
pub fn longest_subclass_chain(m: &Matroid, limits: &Limits) -> Result<usize> {
    Ok(quotient_lattice(m, limits)?.chain_lengths().1)
}

/// `e_H` scaled by `c` over the hyperplanes: a point for the simplified space.
pub fn indicator(m: &Matroid, set: &[Mask], c: i64) -> Vec<Rat> {
    m.hyperplanes().iter().map(|h| if set.contains(h) { int(c) } else { Rat::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{sets, uniform, vamos};

    #[test]
    fn u23_has_one_concurrent_relation() {
        let rels = three_term_relations(&ValuatedMatroid::trivial(&uniform(2, 3)));
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].kind, RelationKind::Concurrent);
    }

    #[test]
    fn decompose_two_steps() {
        let m = uniform(3, 4);
        let mut w = indicator(&m, &sets(&["12", "34"]), 2);
        for x in &mut w {
            *x += int(1);
        }
        let dec = order_complex_decompose(&m, &w).unwrap();
        assert_eq!(dec.steps.len(), 2);
        assert_eq!(dec.steps[0].0.hyperplanes, sets(&["12", "34"]));
        assert_eq!(dec.steps[0].1, int(2));
        let bad = indicator(&m, &sets(&["12", "13"]), 1);
        let e = order_complex_decompose(&m, &bad).unwrap_err().to_string();
        assert!(e.contains("12,13,14"), "{e}");
    }

    #[test]
    fn vamos_witness() {
        let m = vamos();
        let w = levi_failure_witness(&m, &sets(&["1234", "1256", "3456"]), &int(1)).unwrap();
        assert_eq!(w.points.len(), 3);
        assert_eq!(w.trace.len() + 3, m.hyperplanes().len());
        assert!(levi_failure_witness(&uniform(3, 4), &sets(&["12", "13"]), &int(1)).is_err());
    }

    #[test]
    fn gap_values() {
        assert_eq!(dressian_dimension_gap(2).unwrap().2, 2);
        assert_eq!(dressian_dimension_gap(3).unwrap().2, 21);
    }
}
