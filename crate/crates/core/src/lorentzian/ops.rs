//! Operations on Lorentzian polynomials: segments, polarization, determinantal
//! polynomials, degenerate quadrangles and the cone tests.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{basis_generating, proper_position, Exp, HomPoly, MConvexFn};
use crate::arith::{det, Rat};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subsets::{bit, elements, k_subsets, Mask};
use crate::valuated::ValuatedMatroid;

fn single_out(f: &HomPoly, w0: usize) -> Result<()> {
    if w0 >= f.n() {
        return Err(Error::Invalid(format!("variable {} out of range", w0 + 1)));
    }
    if !f.terms().keys().any(|e| e[w0] == 0) {
        return Err(Error::Precondition("the slice free of the chosen variable is zero".into()));
    }
    Ok(())
}

/// `f_{[i,j]} = Σ_{i ≤ k ≤ j} w_0^k f_k` where `f = Σ w_0^k f_k`.
pub fn segment(f: &HomPoly, w0: usize, i: u32, j: u32) -> Result<HomPoly> {
    single_out(f, w0)?;
    if i >= j {
        return Err(Error::Invalid(format!("segment needs i < j, got [{i}, {j}]")));
    }
    HomPoly::new(
        f.n(),
        f.terms().iter().filter(|(e, _)| (i..=j).contains(&e[w0])).map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// The slices `f_0, ..., f_k` in the remaining variables.
pub fn slices(f: &HomPoly, w0: usize) -> Result<Vec<HomPoly>> {
    single_out(f, w0)?;
    (0..=f.degree_in(w0))
        .map(|k| {
            HomPoly::new(
                f.n() - 1,
                f.terms().iter().filter(|(e, _)| e[w0] == k).map(|(e, c)| {
                    let mut e = e.clone();
                    e.remove(w0);
                    (e, c.clone())
                }),
            )
        })
        .collect()
}

/// Supports of the slices; for Lorentzian `f` they form the Higgs factorization.
pub fn higgs_supports(f: &HomPoly, w0: usize) -> Result<Vec<BTreeSet<Exp>>> {
    Ok(slices(f, w0)?.iter().map(|s| s.terms().keys().cloned().collect()).collect())
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Offsets of the blocks `{w_{i1}, ..., w_{ih(i)}}`.
fn blocks(h: &[u32]) -> Vec<usize> {
    h.iter()
        .scan(0usize, |s, &k| {
            let o = *s;
            *s += k as usize;
            Some(o)
        })
        .collect()
}

/// `Π↑_h`: each `w^a` becomes `Π_i e_{a(i)}(w_{i1}, ..., w_{ih(i)}) / binom(h, a)`.
pub fn polarize(f: &HomPoly, h: &[u32]) -> Result<HomPoly> {
    if h.len() != f.n() {
        return Err(Error::Invalid("degree bound has the wrong length".into()));
    }
    let total: usize = h.iter().map(|&k| k as usize).sum();
    if total > crate::subsets::MAX_GROUND {
        return Err(Error::TooLarge {
            what: "polarized variables".into(),
            size: total,
            bound: crate::subsets::MAX_GROUND,
        });
    }
    let off = blocks(h);
    let mut terms = Vec::new();
    for (a, c) in f.terms() {
        if a.iter().zip(h).any(|(x, b)| x > b) {
            return Err(Error::Invalid(format!("exponent {a:?} exceeds the bound {h:?}")));
        }
        let norm: BigInt = a.iter().zip(h).map(|(&x, &b)| binom(b, x)).product();
        let coef = c / Rat::from_integer(norm);
        // All products of one a(i)-subset per block.
        let mut partial: Vec<Mask> = vec![0];
        for i in 0..f.n() {
            let local: Vec<Mask> = k_subsets(h[i] as usize, a[i] as usize).map(|s| s << off[i]).collect();
            partial = partial.iter().flat_map(|&p| local.iter().map(move |&s| p | s)).collect();
        }
        terms.extend(partial.into_iter().map(|s| (super::mask_exp(s, total), coef.clone())));
    }
    HomPoly::new(total, terms)
}

/// `Π↓_h`: sets `w_{ij} = w_i`.
pub fn project(g: &HomPoly, h: &[u32]) -> Result<HomPoly> {
    let total: usize = h.iter().map(|&k| k as usize).sum();
    if g.n() != total {
        return Err(Error::Invalid(format!("expected {total} variables, got {}", g.n())));
    }
    let off = blocks(h);
    HomPoly::new(
        h.len(),
        g.terms().iter().map(|(e, c)| {
            let a: Exp = (0..h.len()).map(|i| e[off[i]..off[i] + h[i] as usize].iter().sum()).collect();
            (a, c.clone())
        }),
    )
}

/// `det(A Z Aᵀ) = Σ_{|S| = d} det(A_S)² z^S` for a full-rank `d × n` matrix.
pub fn determinantal_poly(a: &[Vec<Rat>]) -> Result<HomPoly> {
    let d = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if d == 0 || d > n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("need a d × n matrix with 0 < d ≤ n".into()));
    }
    let terms: Vec<(Mask, Rat)> = k_subsets(n, d)
        .map(|s| {
            let cols = elements(s);
            let m = det(&a.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect::<Vec<_>>());
            (s, &m * &m)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    if terms.is_empty() {
        return Err(Error::Precondition("the matrix is rank deficient".into()));
    }
    HomPoly::multi_affine(n, terms)
}

/// A degenerate quadrangle `{Aij, Ajk, Akl, Ail}` whose coefficients break
/// `a_{Aij} a_{Akl} = a_{Ajk} a_{Ail}`.
pub fn degenerate_quadrangle_violation(f: &HomPoly, m: &Matroid) -> Result<Option<[Mask; 4]>> {
    let n = m.n();
    let want: BTreeSet<Exp> = m.bases().iter().map(|&b| super::mask_exp(b, n)).collect();
    let have: BTreeSet<Exp> = f.terms().keys().cloned().collect();
    if f.n() != n || want != have {
        return Err(Error::Invalid("the polynomial is not supported on the bases".into()));
    }
    let d = m.rank();
    if d < 2 {
        return Ok(None);
    }
    let c = |s: Mask| f.coeff(&super::mask_exp(s, n));
    for a in k_subsets(n, d - 2) {
        let rest: Vec<usize> = (0..n).filter(|&e| a & bit(e) == 0).collect();
        for &i in &rest {
            for &j in &rest {
                for &k in &rest {
                    for &l in &rest {
                        let ijkl = [i, j, k, l];
                        if (0..4).any(|x| (x + 1..4).any(|y| ijkl[x] == ijkl[y])) {
                            continue;
                        }
                        let q = [
                            a | bit(i) | bit(j),
                            a | bit(j) | bit(k),
                            a | bit(k) | bit(l),
                            a | bit(i) | bit(l),
                        ];
                        if !q.iter().all(|&s| m.is_basis(s)) {
                            continue;
                        }
                        if m.is_basis(a | bit(i) | bit(k)) && m.is_basis(a | bit(j) | bit(l)) {
                            continue;
                        }
                        if c(q[0]) * c(q[2]) != c(q[1]) * c(q[3]) {
                            return Ok(Some(q));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn degenerate_quadrangle_check(f: &HomPoly, m: &Matroid) -> Result<bool> {
    Ok(degenerate_quadrangle_violation(f, m)?.is_none())
}

/// Upward cone test: with `f ≪_L g₁` and `f ≪_L g₂`, whether `f ≪_L g₁ + g₂`.
pub fn cone_witness_test(f: &HomPoly, g1: &HomPoly, g2: &HomPoly) -> Result<bool> {
    if !proper_position(f, g1)? || !proper_position(f, g2)? {
        return Err(Error::Precondition("f must be in proper position with both g₁ and g₂".into()));
    }
    proper_position(f, &g1.add(g2)?)
}

/// Outcome of the downward cone test over several `q` and weight vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeReport {
    pub checked: usize,
    /// `(q, weights)` for each combination not in proper position.
    pub failures: Vec<(Rat, Vec<Rat>)>,
}

/// For each `q` and weights `c`, whether `Σ c_k f_q^{θ_k} ≪_L f_q^μ`.
/// Combinations with all weights zero are skipped.
pub fn quotient_cone_test(
    mu: &ValuatedMatroid,
    thetas: &[ValuatedMatroid],
    weights: &[Vec<Rat>],
    qs: &[Rat],
) -> Result<ConeReport> {
    // One common rescaling keeps μ and every θ comparable.
    let scale = std::iter::once(MConvexFn::from_valuated(mu))
        .chain(thetas.iter().map(MConvexFn::from_valuated))
        .fold(BigInt::one(), |acc, f| num_integer::lcm(acc, f.integer_rescaled().1));
    let phi = scale_fn(&MConvexFn::from_valuated(mu), &scale)?;
    let ths: Vec<MConvexFn> = thetas
        .iter()
        .map(|t| {
            if t.n() != mu.n() || t.rank() + 1 != mu.rank() {
                return Err(Error::Invalid("each θ must have rank d-1 on the same ground set".into()));
            }
            scale_fn(&MConvexFn::from_valuated(t), &scale)
        })
        .collect::<Result<_>>()?;
    let mut rep = ConeReport::default();
    for q in qs {
        let f = basis_generating(&phi, q)?;
        let hs: Vec<HomPoly> = ths.iter().map(|t| basis_generating(t, q)).collect::<Result<_>>()?;
        for c in weights {
            if c.len() != hs.len() || c.iter().any(|x| x.is_negative()) {
                return Err(Error::Invalid("weights must be nonnegative, one per θ".into()));
            }
            let mut h = HomPoly::zero(mu.n());
            for (ck, hk) in c.iter().zip(&hs) {
                h = h.add(&hk.scale(ck)?)?;
            }
            if h.is_zero() {
                continue;
            }
            rep.checked += 1;
            if !proper_position(&h, &f)? {
                rep.failures.push((q.clone(), c.clone()));
            }
        }
    }
    Ok(rep)
}

fn scale_fn(f: &MConvexFn, k: &BigInt) -> Result<MConvexFn> {
    let kr = Rat::from_integer(k.clone());
    MConvexFn::new(f.n(), f.values().iter().map(|(e, v)| (e.clone(), v * &kr)))
}

/// `f(s_1 w_1, ..., s_n w_n)` for positive scales.
pub fn rescale_variables(f: &HomPoly, s: &[Rat]) -> Result<HomPoly> {
    if s.len() != f.n() || s.iter().any(|x| !x.is_positive()) {
        return Err(Error::Invalid("need one positive scale per variable".into()));
    }
    HomPoly::new(
        f.n(),
        f.terms().iter().map(|(e, c)| {
            let k = e.iter().zip(s).fold(c.clone(), |acc, (&x, si)| acc * si.pow(x as i32));
            (e.clone(), k)
        }),
    )
}
