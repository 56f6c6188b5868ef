//! Valuated matroids and tropical linear spaces.

mod flag;
mod line;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::Zero;

use crate::arith::{trop_min_vanishes, Rat, TropVal, TropVal::Fin, TropVal::Inf};
use crate::error::{Error, Result};
use crate::matroid::{compress, Matroid};
use crate::subsets::{bit, colex_rank, contains, elements, fmt_set, full, is_subset, k_subsets, popcount, Mask};

pub use flag::*;
pub use line::*;

/// Finite values of a map on k-subsets; absent keys are ∞.
pub type Valuation = BTreeMap<Mask, Rat>;

/// A point of tropical projective space, up to adding a constant.
pub type TropPoint = Vec<TropVal>;

/// A valuated matroid of rank `d` on `{0..n}`, normalized so that its
/// smallest value is 0.
#[derive(Clone)]
pub struct ValuatedMatroid {
    n: usize,
    d: usize,
    values: Valuation,
    support: Matroid,
}

impl PartialEq for ValuatedMatroid {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.d == o.d && self.values == o.values
    }
}
impl Eq for ValuatedMatroid {}

impl fmt::Debug for ValuatedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ValuatedMatroid(n={}, d={}, {{", self.n, self.d)?;
        for (k, (b, v)) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", fmt_set(*b), crate::arith::fmt_rat(v))?;
        }
        f.write_str("})")
    }
}

/// Subtracts the smallest value from every value.
pub fn normalize(values: &Valuation) -> Valuation {
    let Some(m) = values.values().min().cloned() else {
        return Valuation::new();
    };
    values.iter().map(|(k, v)| (*k, v - &m)).collect()
}

/// Shifts a point so that its smallest finite coordinate is 0.
pub fn normalize_point(w: &[TropVal]) -> TropPoint {
    let m = w.iter().filter_map(|x| x.finite()).min().cloned().unwrap_or_else(Rat::zero);
    w.iter().map(|x| x.add_rat(&-m.clone())).collect()
}

/// Equality in tropical projective space.
pub fn points_equivalent(a: &[TropVal], b: &[TropVal]) -> bool {
    a.len() == b.len() && normalize_point(a) == normalize_point(b)
}

fn val(values: &Valuation, s: Mask) -> TropVal {
    values.get(&s).map_or(Inf, |v| Fin(v.clone()))
}

/// The three-term relations for `(S; i, j, k, l)` with `|S| = d - 2`.
/// Returns the first failing one as `(S + i, S + jkl)`.
pub fn three_term_violation(n: usize, d: usize, values: &Valuation) -> Option<(Mask, Mask)> {
    if d < 2 {
        return None;
    }
    for s in k_subsets(n, d - 2) {
        let rest = elements(full(n) & !s);
        let r = rest.len();
        for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    for e in c + 1..r {
                        let (i, j, k, l) = (bit(rest[a]), bit(rest[b]), bit(rest[c]), bit(rest[e]));
                        let terms = [
                            &val(values, s | i | j) + &val(values, s | k | l),
                            &val(values, s | i | k) + &val(values, s | j | l),
                            &val(values, s | i | l) + &val(values, s | j | k),
                        ];
                        if !trop_min_vanishes(&terms).expect("nonempty") {
                            return Some((s | i, s | j | k | l));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Every Plücker relation `(I, J)` with `|I| = d - 1`, `|J| = d + 1`.
pub fn plucker_violation(n: usize, d: usize, values: &Valuation) -> Option<(Mask, Mask)> {
    if d == 0 || d >= n {
        return None;
    }
    for i in k_subsets(n, d - 1) {
        for j in k_subsets(n, d + 1) {
            let terms: Vec<TropVal> = elements(j & !i)
                .into_iter()
                .map(|x| &val(values, i | bit(x)) + &val(values, j & !bit(x)))
                .collect();
            if !trop_min_vanishes(&terms).expect("J has d+1 elements") {
                return Some((i, j));
            }
        }
    }
    None
}

impl ValuatedMatroid {
    /// Validates the support (basis exchange) and then every three-term
    /// Plücker relation, which together imply all Plücker relations.
    pub fn new(n: usize, d: usize, values: Valuation) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("a valuated matroid needs a finite value".into()));
        }
        if let Some(b) = values.keys().find(|&&b| popcount(b) != d || !is_subset(b, full(n))) {
            return Err(Error::Invalid(format!("{} is not a {d}-subset of [{n}]", fmt_set(*b))));
        }
        let support = Matroid::from_bases(n, values.keys().copied())
            .map_err(|e| Error::Invalid(format!("support not a matroid: {e}")))?;
        if let Some((i, j)) = three_term_violation(n, d, &values) {
            return Err(Error::Plucker {
                i: fmt_set(i),
                j: fmt_set(j),
            });
        }
        Ok(ValuatedMatroid {
            n,
            d,
            values: normalize(&values),
            support,
        })
    }

    /// From `(set, value)` pairs, dropping infinite ones.
    pub fn from_entries(n: usize, d: usize, entries: impl IntoIterator<Item = (Mask, TropVal)>) -> Result<Self> {
        let values = entries.into_iter().filter_map(|(s, v)| v.finite().map(|r| (s, r.clone()))).collect();
        Self::new(n, d, values)
    }

    /// For values already known to satisfy the axioms.
    pub(crate) fn unchecked(n: usize, d: usize, values: Valuation) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("a valuated matroid needs a finite value".into()));
        }
        let support = Matroid::from_bases_unchecked(n, values.keys().copied())?;
        Ok(ValuatedMatroid {
            n,
            d,
            values: normalize(&values),
            support,
        })
    }

    /// The valuation that is 0 on every basis.
    pub fn trivial(m: &Matroid) -> Self {
        ValuatedMatroid {
            n: m.n(),
            d: m.rank(),
            values: m.bases().iter().map(|&b| (b, Rat::zero())).collect(),
            support: m.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn rank(&self) -> usize {
        self.d
    }
    pub fn value(&self, b: Mask) -> TropVal {
        val(&self.values, b)
    }
    pub fn values(&self) -> &Valuation {
        &self.values
    }
    /// The underlying matroid.
    pub fn support(&self) -> &Matroid {
        &self.support
    }
    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// `C(j) = μ(B - j + i)` on `B + i`, ∞ elsewhere.
    pub fn valuated_circuit(&self, b: Mask, i: usize) -> Result<TropPoint> {
        if !self.values.contains_key(&b) {
            return Err(Error::Invalid(format!("{} is not a basis", fmt_set(b))));
        }
        if contains(b, i) || i >= self.n {
            return Err(Error::Invalid(format!("element {} must lie outside the basis", i + 1)));
        }
        Ok((0..self.n)
            .map(|j| {
                if contains(b | bit(i), j) {
                    self.value((b | bit(i)) & !bit(j))
                } else {
                    Inf
                }
            })
            .collect())
    }

    /// All valuated circuits, normalized and deduplicated.
    pub fn all_circuits(&self) -> Vec<TropPoint> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &b in self.values.keys() {
            for i in elements(full(self.n) & !b) {
                let c = normalize_point(&self.valuated_circuit(b, i).expect("basis"));
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// `μ*(B) = μ([n] \ B)`.
    pub fn dual(&self) -> ValuatedMatroid {
        let g = full(self.n);
        let values = self.values.iter().map(|(b, v)| (g & !b, v.clone())).collect();
        ValuatedMatroid {
            n: self.n,
            d: self.n - self.d,
            values,
            support: self.support.dual(),
        }
    }

    /// Contraction by `s`, relabelled onto the complement of `s`.
    pub fn contraction(&self, s: Mask) -> ValuatedMatroid {
        let keep = full(self.n) & !s;
        let c = self.contract_keep(s);
        let values = c.values.iter().map(|(b, v)| (compress(*b, keep), v.clone())).collect();
        ValuatedMatroid::unchecked(popcount(keep), c.d, values).expect("contraction is nonempty")
    }

    /// Contraction by `s` on the same ground set, so `s` becomes a set of loops.
    pub fn contract_keep(&self, s: Mask) -> ValuatedMatroid {
        let m = &self.support;
        let r = m.rank_of(s);
        // A maximal independent subset of s.
        let mut j = 0;
        for e in elements(s) {
            if m.is_independent(j | bit(e)) {
                j |= bit(e);
            }
        }
        debug_assert_eq!(popcount(j), r);
        let values: Valuation = self
            .values
            .iter()
            .filter(|(b, _)| is_subset(j, **b) && **b & s & !j == 0)
            .map(|(b, v)| (b & !j, v.clone()))
            .collect();
        ValuatedMatroid::unchecked(self.n, self.d - r, values).expect("contraction is nonempty")
    }

    /// Deletion of `s`, relabelled onto the complement of `s`. When deleting
    /// drops the rank, a fixed set of elements of `s` completes each basis.
    pub fn deletion(&self, s: Mask) -> ValuatedMatroid {
        let m = &self.support;
        let keep = full(self.n) & !s;
        let r = m.rank_of(keep);
        let mut k = 0;
        let mut span = m.closure(keep);
        for e in elements(s) {
            if !contains(span, e) {
                k |= bit(e);
                span = m.closure(keep | k);
            }
        }
        debug_assert_eq!(popcount(k), self.d - r);
        let values: Valuation = self
            .values
            .iter()
            .filter(|(b, _)| **b & s == k)
            .map(|(b, v)| (compress(b & keep, keep), v.clone()))
            .collect();
        ValuatedMatroid::unchecked(popcount(keep), r, values).expect("deletion is nonempty")
    }

    /// The matroid of bases minimizing `μ(B) - w·e_B`, for finite `w`.
    pub fn initial_matroid(&self, w: &[Rat]) -> Result<Matroid> {
        if w.len() != self.n {
            return Err(Error::Invalid("weight vector has the wrong length".into()));
        }
        let scores: Vec<(Mask, Rat)> = self
            .values
            .iter()
            .map(|(b, v)| (*b, v - elements(*b).iter().map(|&i| &w[i]).sum::<Rat>()))
            .collect();
        let best = scores.iter().map(|(_, s)| s).min().expect("nonempty").clone();
        Matroid::from_bases_unchecked(self.n, scores.into_iter().filter(|(_, s)| *s == best).map(|(b, _)| b))
    }
}

/// Whether `[w]` lies in `Trop μ`.
///
/// For finite `w` the minimizers of `μ(B) - w·e_B` must cover the ground set;
/// otherwise every valuated circuit equation must vanish tropically.
pub fn point_in_trop(mu: &ValuatedMatroid, w: &[TropVal]) -> Result<bool> {
    if w.len() != mu.n {
        return Err(Error::Invalid(format!("point has {} coordinates, expected {}", w.len(), mu.n)));
    }
    if w.iter().all(|x| x.is_inf()) {
        return Err(Error::Invalid("a tropical point needs a finite coordinate".into()));
    }
    if w.iter().all(|x| x.is_finite()) {
        let w: Vec<Rat> = w.iter().map(|x| x.unwrap_fin().clone()).collect();
        let m = mu.initial_matroid(&w)?;
        let covered = m.bases().iter().fold(0, |a, b| a | b);
        return Ok(covered == full(mu.n));
    }
    for c in mu.all_circuits() {
        let terms: Vec<TropVal> = c.iter().zip(w).map(|(a, b)| a + b).collect();
        if !trop_min_vanishes(&terms)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w^∧k`: coordinates indexed by the k-subsets in colex order.
pub fn wedge_point(w: &[TropVal], k: usize) -> Result<Vec<Rat>> {
    if w.iter().any(|x| x.is_inf()) {
        return Err(Error::Invalid("wedge powers need a finite point".into()));
    }
    Ok(k_subsets(w.len(), k)
        .map(|s| elements(s).iter().map(|&i| w[i].unwrap_fin().clone()).sum())
        .collect())
}

/// Index of a k-subset within [`wedge_point`] output.
pub fn wedge_index(s: Mask) -> usize {
    colex_rank(s)
}

/// `Tr μ(B) = min_{i ∉ B} μ(B + i) + w(i)`.
pub fn truncate_by_weights(mu: &ValuatedMatroid, w: &[TropVal]) -> Result<ValuatedMatroid> {
    if mu.d == 0 {
        return Err(Error::Precondition("cannot truncate a rank-0 valuated matroid".into()));
    }
    if w.len() != mu.n {
        return Err(Error::Invalid("weight vector has the wrong length".into()));
    }
    let mut values = Valuation::new();
    for b in k_subsets(mu.n, mu.d - 1) {
        let best = elements(full(mu.n) & !b)
            .into_iter()
            .map(|i| &mu.value(b | bit(i)) + &w[i])
            .min()
            .unwrap_or(Inf);
        if let Fin(v) = best {
            values.insert(b, v);
        }
    }
    if values.is_empty() {
        return Err(Error::Precondition("truncation is identically infinite".into()));
    }
    ValuatedMatroid::unchecked(mu.n, mu.d - 1, values)
}

/// Truncation by a corank-1 valuated matroid `ν`, using `w(i) = ν([n] - i)`.
pub fn truncate_by(mu: &ValuatedMatroid, nu: &ValuatedMatroid) -> Result<ValuatedMatroid> {
    if nu.n != mu.n || nu.d + 1 != nu.n {
        return Err(Error::Invalid("truncating valuation must have corank 1 on the same ground set".into()));
    }
    let g = full(mu.n);
    let w: Vec<TropVal> = (0..mu.n).map(|i| nu.value(g & !bit(i))).collect();
    truncate_by_weights(mu, &w)
}

/// The corank-1 valuated matroid `ν([n] - i) = w(i)`.
pub fn corank_one(w: &[TropVal]) -> Result<ValuatedMatroid> {
    let n = w.len();
    let g = full(n);
    let values: Valuation = (0..n).filter_map(|i| w[i].finite().map(|v| (g & !bit(i), v.clone()))).collect();
    ValuatedMatroid::unchecked(n, n.saturating_sub(1), values)
}

/// First incidence relation `(I, J)`, `|I| = d - 2`, `|J| = d + 1`, that fails
/// for `θ` against `μ` of rank `d`.
pub fn incidence_violation(mu: &ValuatedMatroid, theta: &Valuation, n: usize) -> Option<(Mask, Mask)> {
    let d = mu.d;
    if d < 2 {
        // Rank-0 θ: no relation to check beyond the rank-1 case handled by callers.
        return None;
    }
    for i in k_subsets(n, d - 2) {
        for j in k_subsets(n, d + 1) {
            let terms: Vec<TropVal> = elements(j & !i)
                .into_iter()
                .map(|x| &val(theta, i | bit(x)) + &mu.value(j & !bit(x)))
                .collect();
            if !trop_min_vanishes(&terms).expect("nonempty") {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether `θ` is an elementary quotient of `μ`; `θ` must have rank `d - 1`.
pub fn is_quotient_valuated(mu: &ValuatedMatroid, theta: &ValuatedMatroid) -> Result<bool> {
    Ok(quotient_witness(mu, theta)?.is_none())
}

/// The failing incidence relation, if `θ` is not an elementary quotient of `μ`.
pub fn quotient_witness(mu: &ValuatedMatroid, theta: &ValuatedMatroid) -> Result<Option<(Mask, Mask)>> {
    if mu.n != theta.n || theta.d + 1 != mu.d {
        return Err(Error::Precondition("need the same ground set and rank(θ) = rank(μ) - 1".into()));
    }
    if mu.d == 1 {
        // θ has rank 0: the single value on ∅ always fits.
        return Ok(None);
    }
    Ok(incidence_violation(mu, &theta.values, mu.n))
}

/// `B ↦ min(a + θ1(B), b + θ2(B))`.
pub fn trop_combination(t1: &ValuatedMatroid, t2: &ValuatedMatroid, a: &TropVal, b: &TropVal) -> Result<Valuation> {
    if t1.n != t2.n || t1.d != t2.d {
        return Err(Error::Invalid("tropical combination needs equal ground sets and ranks".into()));
    }
    let keys: std::collections::BTreeSet<Mask> = t1.values.keys().chain(t2.values.keys()).copied().collect();
    let mut out = Valuation::new();
    for k in keys {
        if let Fin(v) = (&t1.value(k) + a).min(&t2.value(k) + b) {
            out.insert(k, v);
        }
    }
    Ok(out)
}
