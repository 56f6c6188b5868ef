//! Homogeneous polynomials with nonnegative rational coefficients, and exact
//! certification of the Lorentzian property and of Lorentzian proper position.
//!
//! The signature condition is decided by the exact inertia of each quadratic
//! derivative, never by floating-point eigenvalues.

mod mconvex;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rat, inertia, Rat, SymMatrix};
use crate::error::{Error, Result};

pub use mconvex::{
    basis_generating, is_m_convex_fn, is_m_convex_set, m_convex_set_violation, mconvex_quotient, ExchangeWitness,
    MConvexFn,
};
pub use ops::{
    cone_witness_test, degenerate_quadrangle_check, degenerate_quadrangle_violation, determinantal_poly,
    higgs_supports, polarize, project, quotient_cone_test, rescale_variables, segment, slices, ConeReport,
};

/// Exponent vector of a monomial.
pub type Exp = Vec<u32>;

/// Homogeneous polynomial in `n` variables with positive stored coefficients.
/// The zero polynomial has degree 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    n: usize,
    degree: u32,
    coeffs: BTreeMap<Exp, Rat>,
}

/// Why a polynomial is not Lorentzian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LorentzianFailure {
    /// The support fails the exchange property.
    Support(ExchangeWitness),
    /// `∂^a f` has more than one positive eigenvalue.
    Signature { a: Exp, n_plus: usize },
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `b! / (b - a)!` for a single coordinate.
fn falling(b: u32, a: u32) -> BigInt {
    (b - a + 1..=b).map(BigInt::from).product()
}

/// Every exponent vector of total degree `d` in `n` variables.
pub fn exponents(n: usize, d: u32) -> Vec<Exp> {
    fn go(n: usize, d: u32, cur: &mut Exp, out: &mut Vec<Exp>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=d {
            cur.push(k);
            go(n, d - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

impl HomPoly {
    /// Builds a polynomial from terms, summing repeats and dropping zeros.
    /// Rejects negative coefficients and inhomogeneous input.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Exp, Rat)>) -> Result<Self> {
        let mut coeffs: BTreeMap<Exp, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::Invalid(format!("exponent {e:?} has length {}, expected {n}", e.len())));
            }
            *coeffs.entry(e).or_insert_with(Rat::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        if let Some((e, c)) = coeffs.iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::Invalid(format!("negative coefficient {} at {e:?}", fmt_rat(c))));
        }
        let mut degrees = coeffs.keys().map(|e| e.iter().sum::<u32>());
        let degree = degrees.next().unwrap_or(0);
        if degrees.any(|k| k != degree) {
            return Err(Error::Invalid("polynomial is not homogeneous".into()));
        }
        Ok(HomPoly { n, degree, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        HomPoly {
            n,
            degree: 0,
            coeffs: BTreeMap::new(),
        }
    }

    /// `w_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        HomPoly::new(n, [(e, Rat::one())]).expect("a variable")
    }

    /// `½ wᵀ A w` for a symmetric matrix with nonnegative entries.
    pub fn from_quadratic_form(a: &[Vec<Rat>]) -> Result<Self> {
        let m = SymMatrix::from_rows(a)?;
        let n = m.size();
        let two = Rat::from_integer(2.into());
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j { m.get(i, i) / &two } else { m.get(i, j).clone() };
                terms.push((e, c));
            }
        }
        HomPoly::new(n, terms)
    }

    /// The multi-affine polynomial `Σ c_B w^B` over subsets given as bit masks.
    pub fn multi_affine(n: usize, terms: impl IntoIterator<Item = (crate::subsets::Mask, Rat)>) -> Result<Self> {
        HomPoly::new(n, terms.into_iter().map(|(b, c)| (mask_exp(b, n), c)))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn terms(&self) -> &BTreeMap<Exp, Rat> {
        &self.coeffs
    }
    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.coeffs.get(e).cloned().unwrap_or_else(Rat::zero)
    }
    pub fn support(&self) -> Vec<Exp> {
        self.coeffs.keys().cloned().collect()
    }

    /// Degree of the polynomial in `w_i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.coeffs.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        if self.n != other.n {
            return Err(Error::Invalid("variable counts differ".into()));
        }
        HomPoly::new(self.n, self.coeffs.iter().chain(&other.coeffs).map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn scale(&self, t: &Rat) -> Result<HomPoly> {
        HomPoly::new(self.n, self.coeffs.iter().map(|(e, c)| (e.clone(), c * t)))
    }

    pub fn mul(&self, other: &HomPoly) -> Result<HomPoly> {
        if self.n != other.n {
            return Err(Error::Invalid("variable counts differ".into()));
        }
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                terms.push((a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y));
            }
        }
        HomPoly::new(self.n, terms)
    }

    /// `∂^a f`.
    pub fn derivative(&self, a: &[u32]) -> HomPoly {
        let terms = self.coeffs.iter().filter(|(b, _)| b.iter().zip(a).all(|(x, y)| x >= y)).map(|(b, c)| {
            let k: BigInt = b.iter().zip(a).map(|(&x, &y)| falling(x, y)).product();
            (b.iter().zip(a).map(|(x, y)| x - y).collect(), c * Rat::from_integer(k))
        });
        HomPoly::new(self.n, terms).expect("derivatives stay homogeneous")
    }

    /// `∂_v f = Σ v_i ∂_i f`.
    pub fn directional(&self, v: &[Rat]) -> Result<HomPoly> {
        let mut out = HomPoly::zero(self.n);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_negative() {
                return Err(Error::Invalid("direction must be nonnegative".into()));
            }
            let mut e = vec![0; self.n];
            e[i] = 1;
            out = out.add(&self.derivative(&e).scale(vi)?)?;
        }
        Ok(out)
    }

    /// The same polynomial in `extra` more variables.
    pub fn extend(&self, extra: usize) -> HomPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(self.n + extra, 0);
                (e, c.clone())
            })
            .collect();
        HomPoly {
            n: self.n + extra,
            degree: self.degree,
            coeffs,
        }
    }

    /// `f + w_{n+1} h` in `n + 1` variables.
    pub fn with_new_variable(&self, h: &HomPoly) -> Result<HomPoly> {
        if h.n != self.n {
            return Err(Error::Invalid("variable counts differ".into()));
        }
        let last = HomPoly::var(self.n + 1, self.n);
        self.extend(1).add(&h.extend(1).mul(&last)?)
    }

    /// Hessian of a quadratic form.
    fn hessian(&self) -> SymMatrix {
        debug_assert!(self.degree == 2 || self.is_zero());
        let mut m = SymMatrix::zeros(self.n);
        for (e, c) in &self.coeffs {
            let idx: Vec<usize> = (0..self.n).filter(|&i| e[i] > 0).collect();
            match idx[..] {
                [i] => m.set(i, i, c * Rat::from_integer(2.into())),
                [i, j] => m.set(i, j, c.clone()),
                _ => unreachable!("quadratic term"),
            }
        }
        m
    }

    /// `w^{deg} f(1/w)` with `deg_i` the degree of `f` in `w_i`.
    pub fn invert(&self) -> HomPoly {
        let top: Exp = (0..self.n).map(|i| self.degree_in(i)).collect();
        HomPoly::new(
            self.n,
            self.coeffs.iter().map(|(e, c)| (top.iter().zip(e).map(|(t, x)| t - x).collect(), c.clone())),
        )
        .expect("inversion of a homogeneous polynomial")
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("w{}", i + 1) } else { format!("w{}^{k}", i + 1) })
                .collect();
            match (c.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (_, true) => write!(f, "{}", fmt_rat(c))?,
                (false, false) => write!(f, "{}*{}", fmt_rat(c), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}]({self})", self.n)
    }
}

/// 0-1 exponent vector of a subset.
pub fn mask_exp(b: crate::subsets::Mask, n: usize) -> Exp {
    (0..n).map(|i| ((b >> i) & 1) as u32).collect()
}

/// The first reason `f` is not Lorentzian, if any.
pub fn lorentzian_violation(f: &HomPoly) -> Option<LorentzianFailure> {
    if f.degree <= 1 {
        return None;
    }
    if let Some(w) = m_convex_set_violation(&f.support()) {
        return Some(LorentzianFailure::Support(w));
    }
    for a in exponents(f.n, f.degree - 2) {
        let q = f.derivative(&a);
        if q.is_zero() {
            continue;
        }
        let n_plus = inertia(&q.hessian()).n_plus;
        if n_plus > 1 {
            return Some(LorentzianFailure::Signature { a, n_plus });
        }
    }
    None
}

/// As [`lorentzian_violation`], with the per-exponent quadratic forms split
/// over `jobs` threads. Reports the same failure as the sequential check.
pub fn lorentzian_violation_par(f: &HomPoly, jobs: usize) -> Option<LorentzianFailure> {
    if f.degree <= 1 {
        return None;
    }
    if let Some(w) = m_convex_set_violation(&f.support()) {
        return Some(LorentzianFailure::Support(w));
    }
    let all = exponents(f.n, f.degree - 2);
    let chunk = all.len().div_ceil(jobs.max(1)).max(1);
    let first = std::thread::scope(|s| {
        let handles: Vec<_> = all
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter().find_map(|a| {
                        let q = f.derivative(a);
                        let n_plus = if q.is_zero() { 0 } else { inertia(&q.hessian()).n_plus };
                        (n_plus > 1).then(|| LorentzianFailure::Signature { a: a.clone(), n_plus })
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
    });
    first.into_iter().flatten().next()
}

pub fn is_lorentzian(f: &HomPoly) -> bool {
    lorentzian_violation(f).is_none()
}

/// `h ≪_L f`: `f + w_{n+1} h` is Lorentzian. Both must be nonzero.
pub fn proper_position(h: &HomPoly, f: &HomPoly) -> Result<bool> {
    if h.is_zero() || f.is_zero() {
        return Err(Error::Invalid("proper position needs nonzero polynomials".into()));
    }
    if f.degree != h.degree + 1 {
        return Err(Error::Invalid(format!(
            "degrees must differ by one, got {} and {}",
            h.degree, f.degree
        )));
    }
    Ok(is_lorentzian(&f.with_new_variable(h)?))
}

/// `e_k(w_1, ..., w_n)`.
pub fn elementary_symmetric(n: usize, k: usize) -> HomPoly {
    HomPoly::multi_affine(n, crate::subsets::k_subsets(n, k).map(|b| (b, Rat::one()))).expect("nonnegative")
}

/// `f_M = Σ_{B basis} w^B`.
pub fn basis_polynomial(m: &crate::matroid::Matroid) -> HomPoly {
    HomPoly::multi_affine(m.n(), m.bases().iter().map(|&b| (b, Rat::one()))).expect("nonnegative")
}

/// The inverse of `k!` as a rational, used for `1/a!` normalizations.
pub(crate) fn inv_factorial(e: &[u32]) -> Rat {
    Rat::new(BigInt::one(), e.iter().map(|&k| factorial(k)).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::matroid::uniform;

    fn a1() -> Vec<Vec<Rat>> {
        let x = rat(39, 10);
        let o = int(1);
        let z = int(0);
        vec![
            vec![z.clone(), x.clone(), o.clone(), o.clone()],
            vec![x, z.clone(), o.clone(), o.clone()],
            vec![o.clone(), o.clone(), z.clone(), o.clone()],
            vec![o.clone(), o.clone(), o, z],
        ]
    }

    #[test]
    fn threaded_check_agrees() {
        let f = basis_polynomial(&uniform(3, 5));
        for jobs in [1, 3, 8] {
            assert_eq!(lorentzian_violation_par(&f, jobs), lorentzian_violation(&f));
        }
        // ∂_5 of this cubic is h1 + h2, which has two positive eigenvalues.
        let mut a2 = a1();
        a2[0][1] = int(1);
        a2[1][0] = int(1);
        a2[2][3] = rat(39, 10);
        a2[3][2] = rat(39, 10);
        let q = HomPoly::from_quadratic_form(&a1()).unwrap().add(&HomPoly::from_quadratic_form(&a2).unwrap()).unwrap();
        let h = q.extend(1).mul(&HomPoly::var(5, 4)).unwrap();
        assert!(lorentzian_violation(&h).is_some());
        for jobs in [1, 2, 5] {
            assert_eq!(lorentzian_violation_par(&h, jobs), lorentzian_violation(&h));
        }
    }

    #[test]
    fn u23_basis_polynomial_is_lorentzian() {
        assert!(is_lorentzian(&basis_polynomial(&uniform(2, 3))));
    }

    #[test]
    fn square_of_a_difference_is_not() {
        // w1² + w2² has two positive eigenvalues and a non-M-convex support.
        let f = HomPoly::new(2, [(vec![2, 0], int(1)), (vec![0, 2], int(1))]).unwrap();
        assert!(matches!(lorentzian_violation(&f), Some(LorentzianFailure::Support(_))));
        let g = HomPoly::new(2, [(vec![2, 0], int(1)), (vec![1, 1], rat(1, 2)), (vec![0, 2], int(1))]).unwrap();
        assert!(matches!(lorentzian_violation(&g), Some(LorentzianFailure::Signature { .. })));
    }

    #[test]
    fn quadratic_form_round_trip() {
        let h = HomPoly::from_quadratic_form(&a1()).unwrap();
        assert_eq!(h.coeff(&[1, 1, 0, 0]), rat(39, 10));
        assert_eq!(h.hessian().rows(), a1());
        assert!(is_lorentzian(&h));
    }

    #[test]
    fn derivative_and_inversion() {
        let f = HomPoly::new(2, [(vec![3, 0], int(1)), (vec![1, 2], int(2))]).unwrap();
        assert_eq!(f.derivative(&[1, 0]), HomPoly::new(2, [(vec![2, 0], int(3)), (vec![0, 2], int(2))]).unwrap());
        let g = f.add(&HomPoly::new(2, [(vec![0, 3], int(1))]).unwrap()).unwrap();
        assert_eq!(g.invert().invert(), g);
        let e = elementary_symmetric(4, 3);
        assert_eq!(e.invert(), elementary_symmetric(4, 1));
    }

    #[test]
    fn proper_position_basics() {
        let f = basis_polynomial(&uniform(2, 3));
        let d1 = f.derivative(&[1, 0, 0]);
        assert!(proper_position(&d1, &f).unwrap());
        let l = elementary_symmetric(3, 1);
        assert!(proper_position(&f, &l.mul(&f).unwrap()).unwrap());
        assert!(proper_position(&f, &f).is_err());
    }
}
