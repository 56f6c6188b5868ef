//! Adjoints of matroids and valuated matroids, and the cofactor linear
//! algebra behind them.
//!
//! An unsimplified adjoint lives on the `(d-1)`-subsets of `[n]`; element
//! `colex_rank(B)` stands for the set `B`. A simplified adjoint lives on the
//! hyperplanes of `M`, in the order of [`Matroid::hyperplanes`].

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;

use crate::arith::{det, LaurentElem, Rat, Ring, TropVal, TropVal::Fin, TropVal::Inf};
use crate::dressian::{three_term_relations, RelationKind, SimplifiedSpace};
use crate::error::{Error, Result};
use crate::field::{null_vector, Field};
use crate::matroid::{from_vectors, Matroid};
use crate::subsets::{binomial, bit, colex_rank, contains, elements, fmt_set, full, k_subsets, popcount, Mask};
use crate::valuated::{normalize_point, TropPoint, Valuation, ValuatedMatroid};

/// Whether `W`, on the hyperplanes of `M`, is an adjoint: same rank, simple,
/// and every concurrent triple of `M` is a circuit of `W`.
pub fn is_adjoint(m: &Matroid, w: &Matroid) -> Result<bool> {
    Ok(adjoint_violation(m, w)?.is_none())
}

/// A concurrent triple of `M` that is independent in `W`, if any. Rank or
/// simplicity failures are reported as the empty triple.
pub fn adjoint_violation(m: &Matroid, w: &Matroid) -> Result<Option<Vec<Mask>>> {
    let hs = m.hyperplanes();
    if w.n() != hs.len() {
        return Err(Error::Invalid(format!(
            "adjoint must live on the {} hyperplanes, got {} elements",
            hs.len(),
            w.n()
        )));
    }
    if !m.is_simple() {
        return Err(Error::Precondition("M must be simple".into()));
    }
    if w.rank() != m.rank() || !w.is_simple() {
        return Ok(Some(vec![]));
    }
    for t in m.concurrent_triples()? {
        if w.rank_of(bit(t[0]) | bit(t[1]) | bit(t[2])) > 2 {
            return Ok(Some(t.iter().map(|&i| hs[i]).collect()));
        }
    }
    Ok(None)
}

/// `M` realized by the columns, and the matroid `W` of the hyperplanes the
/// columns span, recorded by their normal vectors.
pub fn adjoint_from_points<F: Field>(cols: &[Vec<F>]) -> Result<(Matroid, Matroid)> {
    let m = from_vectors(cols)?;
    let d = cols.first().map_or(0, |c| c.len());
    if m.rank() != d {
        return Err(Error::Precondition(format!("the points span rank {} in dimension {d}", m.rank())));
    }
    if !m.is_simple() {
        return Err(Error::Precondition("the points do not form a simple matroid".into()));
    }
    let one = cols[0].iter().find(|x| !x.is_zero_elem()).expect("nonzero column").one_like();
    let normals: Vec<Vec<F>> = m
        .hyperplanes()
        .iter()
        .map(|&h| {
            let rows: Vec<Vec<F>> = elements(h).into_iter().map(|e| cols[e].clone()).collect();
            null_vector(&rows, d, &one).expect("a hyperplane has a normal")
        })
        .collect();
    let w = from_vectors(&normals)?;
    Ok((m, w))
}

/// Ground-set index of every `(d-1)`-subset in the unsimplified adjoint.
fn dm1_sets(n: usize, d: usize) -> Vec<Mask> {
    k_subsets(n, d - 1).collect()
}

/// `W̃` on the `(d-1)`-subsets: `{B_1..B_d}` is a basis iff each `B_i` spans a
/// hyperplane and the hyperplanes form a basis of `W`.
pub fn unsimplified_adjoint(m: &Matroid, w: &Matroid) -> Result<Matroid> {
    if !is_adjoint(m, w)? {
        return Err(Error::Precondition("W is not an adjoint of M".into()));
    }
    let (n, d) = (m.n(), m.rank());
    let sets = dm1_sets(n, d);
    if sets.len() > crate::subsets::MAX_GROUND {
        return Err(Error::TooLarge {
            what: "(d-1)-subsets".into(),
            size: sets.len(),
            bound: crate::subsets::MAX_GROUND,
        });
    }
    let label: Vec<Option<usize>> = sets
        .iter()
        .map(|&b| if m.is_independent(b) { m.hyperplane_index(m.closure(b)) } else { None })
        .collect();
    let mut bases = Vec::new();
    for s in k_subsets(sets.len(), d) {
        let hs: Option<Vec<usize>> = elements(s).into_iter().map(|x| label[x]).collect();
        if let Some(hs) = hs {
            let mask = hs.iter().fold(0, |a, &h| a | bit(h));
            if popcount(mask) == d && w.is_basis(mask) {
                bases.push(s);
            }
        }
    }
    Matroid::from_bases(sets.len(), bases)
}

/// `Σ` on the `(d-1)`-subsets restricted to the chosen hyperplane bases and
/// relabelled by hyperplane index.
pub fn simplify_adjoint(mu: &ValuatedMatroid, sigma: &ValuatedMatroid) -> Result<ValuatedMatroid> {
    let space = SimplifiedSpace::new(mu)?;
    let idx: Vec<usize> = space.basis_choice.iter().map(|&b| colex_rank(b)).collect();
    let k = idx.len();
    let values: Valuation = k_subsets(k, sigma.rank())
        .filter_map(|s| {
            let big = elements(s).into_iter().fold(0, |a, x| a | bit(idx[x]));
            sigma.value(big).finite().map(|v| (s, v.clone()))
        })
        .collect();
    if values.is_empty() {
        return Err(Error::Precondition("Σ loses rank on the chosen hyperplane bases".into()));
    }
    ValuatedMatroid::new(k, sigma.rank(), values)
}

/// Why `Σ` fails to be a valuated adjoint of `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjointFailure {
    Shape(String),
    NotAdjoint(Vec<Mask>),
    /// A three-term relation, given by its `(d-1)`-sets, that is not a valuated circuit.
    Relation(Vec<Mask>),
}

/// Checks the unsimplified form: the simplification is an adjoint of the
/// underlying matroid and every three-term relation is a valuated circuit of `Σ`.
pub fn valuated_adjoint_violation(mu: &ValuatedMatroid, sigma: &ValuatedMatroid) -> Result<Option<AdjointFailure>> {
    let (n, d) = (mu.n(), mu.rank());
    if sigma.n() != binomial(n, d - 1) || sigma.rank() != d {
        return Ok(Some(AdjointFailure::Shape(format!(
            "Σ must have rank {d} on {} elements",
            binomial(n, d - 1)
        ))));
    }
    let simple = simplify_adjoint(mu, sigma)?;
    if let Some(t) = adjoint_violation(mu.support(), simple.support())? {
        return Ok(Some(AdjointFailure::NotAdjoint(t)));
    }
    let circuits: HashSet<TropPoint> = sigma.all_circuits().into_iter().collect();
    let loops = sigma.support().loops();
    for r in three_term_relations(mu) {
        let sets: Vec<Mask> = r.slots.iter().map(|s| s.0).collect();
        let ok = match r.kind {
            RelationKind::Degenerate => contains(loops, colex_rank(sets[0])),
            _ => {
                let mut v = vec![Inf; sigma.n()];
                for (a, c) in &r.slots {
                    v[colex_rank(*a)] = c.clone();
                }
                circuits.contains(&normalize_point(&v))
            }
        };
        if !ok {
            return Ok(Some(AdjointFailure::Relation(sets)));
        }
    }
    Ok(None)
}

pub fn is_valuated_adjoint(mu: &ValuatedMatroid, sigma: &ValuatedMatroid) -> Result<bool> {
    Ok(valuated_adjoint_violation(mu, sigma)?.is_none())
}

/// Counts of checked instances of the three cofactor formulas, and any failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CofactorReport {
    pub checked: [usize; 3],
    pub violations: Vec<String>,
}

/// The basis of `Σ` induced by a basis `D` of `μ`: `{D - i : i ∈ D}`.
pub fn induced_basis(dd: Mask) -> Mask {
    elements(dd).into_iter().fold(0, |a, i| a | bit(colex_rank(dd & !bit(i))))
}

/// Checks the three cofactor formulas relating values of `μ` and `Σ`.
pub fn cofactor_check(mu: &ValuatedMatroid, sigma: &ValuatedMatroid) -> Result<CofactorReport> {
    let (n, d) = (mu.n(), mu.rank());
    if sigma.n() != binomial(n, d - 1) || sigma.rank() != d {
        return Err(Error::Invalid("Σ has the wrong shape".into()));
    }
    let m = mu.support();
    let bases: Vec<Mask> = m.bases().to_vec();
    let indep: Vec<Mask> = k_subsets(n, d - 1).filter(|&b| m.is_independent(b)).collect();
    let fin = |x: TropVal| x.finite().cloned();
    let mut rep = CofactorReport::default();
    let dm2 = Rat::from_integer((d as i64 - 2).into());
    let dm1 = Rat::from_integer((d as i64 - 1).into());
    let mu0 = mu.value(bases[0]).unwrap_fin().clone();
    let s0 = sigma.value(induced_basis(bases[0]));
    // (2) Σ(𝙳₂) - Σ(𝙳₁) = (d-1)(μ(D₂) - μ(D₁)), checked against the first basis.
    for &dd in &bases {
        rep.checked[1] += 1;
        let lhs = fin(sigma.value(induced_basis(dd))).zip(fin(s0.clone())).map(|(a, b)| a - b);
        let rhs = &dm1 * (mu.value(dd).unwrap_fin() - &mu0);
        if lhs != Some(rhs) {
            rep.violations.push(format!("(2) at {}", fmt_set(dd)));
        }
    }
    // (3) Σ(𝙳 - D^i + B) - Σ(𝙳) = μ(B + i) - μ(D), both sides possibly ∞.
    for &dd in &bases {
        let ind = induced_basis(dd);
        let sd = sigma.value(ind);
        for i in elements(dd) {
            let di = bit(colex_rank(dd & !bit(i)));
            for &b in &indep {
                if contains(b, i) || contains(ind, colex_rank(b)) {
                    continue;
                }
                rep.checked[2] += 1;
                let lhs = sigma.value(ind & !di | bit(colex_rank(b)));
                let rhs = mu.value(b | bit(i));
                let ok = match (&lhs, &rhs) {
                    (Inf, Inf) => true,
                    (Fin(l), Fin(r)) => l - sd.unwrap_fin() == r - mu.value(dd).unwrap_fin(),
                    _ => false,
                };
                if !ok {
                    rep.violations.push(format!("(3) at D={}, i={}, B={}", fmt_set(dd), i + 1, fmt_set(b)));
                }
            }
        }
    }
    // (1) with a common element i.
    for &d1 in &bases {
        for &d2 in &bases {
            for i in elements(d1 & d2) {
                let (i1, i2) = (induced_basis(d1), induced_basis(d2));
                let (r1, r2) = (bit(colex_rank(d1 & !bit(i))), bit(colex_rank(d2 & !bit(i))));
                for &b in &indep {
                    let bb = bit(colex_rank(b));
                    if bb & (i1 & !r1) != 0 || bb & (i2 & !r2) != 0 {
                        continue;
                    }
                    let left = sigma.value(i1 & !r1 | bb);
                    if left.is_inf() {
                        continue;
                    }
                    rep.checked[0] += 1;
                    let right = sigma.value(i2 & !r2 | bb);
                    let want = &dm2 * (mu.value(d2).unwrap_fin() - mu.value(d1).unwrap_fin());
                    if right.finite().map(|r| r - left.unwrap_fin()) != Some(want) {
                        rep.violations.push(format!(
                            "(1) at D1={}, D2={}, i={}, B={}",
                            fmt_set(d1),
                            fmt_set(d2),
                            i + 1,
                            fmt_set(b)
                        ));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// The `(d-1)`-minor of `a` on all rows but `skip` and the given columns.
fn minor_without_row<R: Ring>(a: &[Vec<R>], skip: usize, cols: &[usize]) -> R {
    let sub: Vec<Vec<R>> = a
        .iter()
        .enumerate()
        .filter(|(r, _)| *r != skip)
        .map(|(_, row)| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    det(&sub)
}

/// The maximal minor `A_I` on the sorted columns of `I`.
pub fn maximal_minor<R: Ring>(a: &[Vec<R>], cols: Mask) -> R {
    let cs = elements(cols);
    det(&a.iter().map(|row| cs.iter().map(|&c| row[c].clone()).collect()).collect::<Vec<_>>())
}

/// Generalized cofactor matrix: row `i` (for `[d] - i`), column `J` in the
/// given order, entry `A_{i,J}`.
pub fn gen_cofactor<R: Ring>(a: &[Vec<R>], order: &[Mask]) -> Vec<Vec<R>> {
    (0..a.len())
        .map(|i| order.iter().map(|&j| minor_without_row(a, i, &elements(j))).collect())
        .collect()
}

/// The `(d-1)`-subsets of `[n]` in colex order, the default column order.
pub fn colex_order(n: usize, k: usize) -> Vec<Mask> {
    k_subsets(n, k).collect()
}

/// `det[(-1)^{χ(J_k, i_l) + l} x(J_k + i_l)]` with `x` vanishing on repeated
/// indices; `js` must already be in the chosen order.
pub fn phi_coordinate<R: Ring>(x: &dyn Fn(Mask) -> R, js: &[Mask]) -> R {
    let first = elements(js[0]);
    let m: Vec<Vec<R>> = first
        .iter()
        .enumerate()
        .map(|(l0, &il)| {
            js[1..]
                .iter()
                .map(|&jk| {
                    if contains(jk, il) {
                        return R::ring_zero();
                    }
                    let chi = elements(jk).iter().filter(|&&j| j < il).count();
                    let v = x(jk | bit(il));
                    if (chi + l0 + 1) % 2 == 1 {
                        v.neg()
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    det(&m)
}

/// Both sides of the cofactor identity for the columns `js` (in order).
pub fn cofactor_identity_sides<R: Ring>(a: &[Vec<R>], js: &[Mask]) -> (R, R) {
    let b = gen_cofactor(a, js);
    (det(&b), phi_coordinate(&|s| maximal_minor(a, s), js))
}

pub fn cofactor_identity_check<R: Ring>(a: &[Vec<R>], js: &[Mask]) -> bool {
    let (l, r) = cofactor_identity_sides(a, js);
    l == r
}

/// Checks the cofactor identity for every ordered choice of `d` columns in
/// colex order; returns the first failing column set.
pub fn cofactor_identity_check_all<R: Ring>(a: &[Vec<R>]) -> Option<Vec<Mask>> {
    let (d, n) = (a.len(), a[0].len());
    let sub: Vec<Vec<R>> = (0..d)
        .map(|i| k_subsets(n, d - 1).map(|j| minor_without_row(a, i, &elements(j))).collect())
        .collect();
    let full: Vec<R> = k_subsets(n, d).map(|s| maximal_minor(a, s)).collect();
    let x = |s: Mask| full[colex_rank(s)].clone();
    phi_index(n, d).into_iter().find(|js| {
        let b: Vec<Vec<R>> = sub.iter().map(|row| js.iter().map(|&j| row[colex_rank(j)].clone()).collect()).collect();
        det(&b) != phi_coordinate(&x, js)
    })
}

/// The matrix as machine integers, when every entry is an integer small
/// enough that all determinants in the cofactor identity fit in `i128`.
pub fn as_small_integers(a: &[Vec<Rat>]) -> Option<Vec<Vec<i128>>> {
    let d = a.len() as i32;
    let mut max = 1f64;
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            if !x.is_integer() {
                return None;
            }
            let v: i128 = x.to_integer().try_into().ok()?;
            max = max.max(v.unsigned_abs() as f64);
            r.push(v);
        }
        out.push(r);
    }
    // Hadamard-type bound on a d×d determinant of (d-1)-minors.
    let fact = |k: i32| (1..=k).map(f64::from).product::<f64>();
    let minor = fact(d - 1) * max.powi(d - 1);
    (fact(d) * minor.powi(d) < 1e36).then_some(out)
}

/// For square `A`, with columns ordered `[d]-1, ..., [d]-d` to match the rows,
/// `det B = det(A)^{d-1}`.
pub fn square_cofactor_check<R: Ring>(a: &[Vec<R>]) -> bool {
    let d = a.len();
    let g = full(d);
    let order: Vec<Mask> = (0..d).map(|i| g & !bit(i)).collect();
    let lhs = det(&gen_cofactor(a, &order));
    let da = det(a);
    let rhs = (1..d).fold(R::ring_one(), |acc, _| acc.mul(&da));
    lhs == rhs
}

/// Index sets for the coordinates of `Φ`: `d`-subsets of the colex-ordered
/// `(d-1)`-subsets, each listed in that order.
pub fn phi_index(n: usize, d: usize) -> Vec<Vec<Mask>> {
    let order = colex_order(n, d - 1);
    k_subsets(order.len(), d)
        .map(|s| elements(s).into_iter().map(|i| order[i]).collect())
        .collect()
}

/// `Φ` applied to a vector on the `d`-subsets of `[n]`.
pub fn phi_map(x: &BTreeMap<Mask, Rat>, n: usize, d: usize) -> Vec<Rat> {
    let get = |s: Mask| x.get(&s).cloned().unwrap_or_else(Rat::zero);
    phi_index(n, d).iter().map(|js| phi_coordinate(&get, js)).collect()
}

/// Whether `Φ(Plücker(A))` and `Plücker(gen_cofactor(A))` are proportional.
pub fn plethystic_diagram_check(a: &[Vec<Rat>]) -> bool {
    let (d, n) = (a.len(), a[0].len());
    let pl: BTreeMap<Mask, Rat> = k_subsets(n, d).map(|s| (s, maximal_minor(a, s))).collect();
    let lhs = phi_map(&pl, n, d);
    let b = gen_cofactor(a, &colex_order(n, d - 1));
    let rhs: Vec<Rat> = k_subsets(b[0].len(), d).map(|s| maximal_minor(&b, s)).collect();
    proportional(&lhs, &rhs)
}

fn proportional(x: &[Rat], y: &[Rat]) -> bool {
    let Some(p) = x.iter().position(|v| !v.is_zero()) else {
        return y.iter().all(|v| v.is_zero());
    };
    if y[p].is_zero() {
        return false;
    }
    let r = &y[p] / &x[p];
    x.iter().zip(y).all(|(a, b)| a * &r == *b)
}

/// `(μ, Σ)` from a Laurent matrix: `μ(B) = val(A_B)` and `Σ(𝒥) = val(B_𝒥)`
/// for the generalized cofactor matrix in colex order.
pub fn tropicalize_realization(a: &[Vec<LaurentElem>]) -> Result<(ValuatedMatroid, ValuatedMatroid)> {
    let d = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if d < 2 || d > n {
        return Err(Error::Invalid(format!("need 2 ≤ d ≤ n, got a {d}×{n} matrix")));
    }
    let mu_vals: Valuation = k_subsets(n, d)
        .filter_map(|s| maximal_minor(a, s).valuation().finite().map(|v| (s, v.clone())))
        .collect();
    if mu_vals.is_empty() {
        return Err(Error::Precondition("all maximal minors vanish".into()));
    }
    let mu = ValuatedMatroid::new(n, d, mu_vals)?;
    let b = gen_cofactor(a, &colex_order(n, d - 1));
    let big = b[0].len();
    if big > crate::subsets::MAX_GROUND {
        return Err(Error::TooLarge {
            what: "cofactor columns".into(),
            size: big,
            bound: crate::subsets::MAX_GROUND,
        });
    }
    let sig_vals: Valuation = k_subsets(big, d)
        .filter_map(|s| maximal_minor(&b, s).valuation().finite().map(|v| (s, v.clone())))
        .collect();
    let sigma = ValuatedMatroid::new(big, d, sig_vals)?;
    Ok((mu, sigma))
}

/// Trivially valuated `Σ` from an ordinary adjoint `W`.
pub fn trivial_adjoint(m: &Matroid, w: &Matroid) -> Result<ValuatedMatroid> {
    Ok(ValuatedMatroid::trivial(&unsimplified_adjoint(m, w)?))
}

/// Relabels `W` by `perm`: element `e` becomes `perm[e]`.
pub fn relabel(w: &Matroid, perm: &[usize]) -> Result<Matroid> {
    let bases = w
        .bases()
        .iter()
        .map(|&b| elements(b).into_iter().fold(0, |a, e| a | bit(perm[e])));
    Matroid::from_bases(w.n(), bases)
}

/// The adjoint of `U_{n-1,n}`: hyperplane `[n] - {i,j}` goes to edge `ij` of `K_n`.
pub fn corank_one_uniform_adjoint(n: usize) -> Result<Matroid> {
    let m = crate::matroid::uniform(n - 1, n);
    let edges = crate::matroid::kn_edges(n);
    let g = full(n);
    let perm: Vec<usize> = edges
        .iter()
        .map(|&(i, j)| m.hyperplane_index(g & !bit(i) & !bit(j)).expect("hyperplane"))
        .collect();
    relabel(&crate::matroid::graphic_kn(n), &perm)
}

/// Any isomorphism `a → b` of matroids, by brute force over permutations.
pub fn find_isomorphism(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.rank() != b.rank() || a.bases().len() != b.bases().len() {
        return None;
    }
    let n = a.n();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(a: &Matroid, b: &Matroid, k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.n();
        if k == n {
            return a.bases().iter().all(|&s| b.is_basis(elements(s).into_iter().fold(0, |m, e| m | bit(perm[e]))));
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            perm[k] = t;
            used[t] = true;
            // Prune on ranks of the prefix.
            let pre: Mask = (0..=k).fold(0, |m, e| m | bit(e));
            let img: Mask = (0..=k).fold(0, |m, e| m | bit(perm[e]));
            if a.rank_of(pre) == b.rank_of(img) && go(a, b, k + 1, perm, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }
    go(a, b, 0, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::matroid::{projective_plane, projective_points, uniform};

    #[test]
    fn k4_is_adjoint_of_u34() {
        let w = corank_one_uniform_adjoint(4).unwrap();
        assert!(is_adjoint(&uniform(3, 4), &w).unwrap());
        assert!(!is_adjoint(&uniform(3, 4), &uniform(3, 6)).unwrap());
    }

    #[test]
    fn fano_adjoint_is_fano() {
        let pts = projective_points(2).unwrap();
        let (m, w) = adjoint_from_points(&pts).unwrap();
        assert_eq!(m, projective_plane(2).unwrap());
        assert!(is_adjoint(&m, &w).unwrap());
        assert!(find_isomorphism(&m, &w).is_some());
    }

    #[test]
    fn cofactor_example_3x6() {
        // Columns 1..3 form the identity.
        let a: Vec<Vec<Rat>> = vec![
            vec![int(1), int(0), int(0), int(2), int(-1), int(3)],
            vec![int(0), int(1), int(0), int(5), int(4), int(-2)],
            vec![int(0), int(0), int(1), int(1), int(7), int(6)],
        ];
        let js = crate::matroid::sets(&["12", "34", "56"]);
        assert!(cofactor_identity_check(&a, &js));
        let m = |s: &str| maximal_minor(&a, crate::matroid::sets(&[s])[0]);
        let expect = det(&[vec![m("134"), m("156")], vec![-m("234"), -m("256")]]);
        assert_eq!(det(&gen_cofactor(&a, &js)), expect);
    }
}
