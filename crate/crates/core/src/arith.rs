//! Exact scalars: rationals, the tropical semiring ℚ ∪ {∞}, Laurent
//! polynomials with their t-adic valuation, determinants and inertia.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Shorthand for `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-7"` or a finite decimal such as `"3.9"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut v = Rat::from_integer(w.abs()) + Rat::new(f, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad())
}

/// `p/q` or `p`, the format used in all JSON interchange.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element of ℚ ∪ {∞} with min-plus conventions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropVal {
    Fin(Rat),
    Inf,
}

pub use TropVal::{Fin, Inf};

impl TropVal {
    pub fn zero() -> Self {
        Fin(<Rat as Zero>::zero())
    }
    pub fn from_int(n: i64) -> Self {
        Fin(int(n))
    }
    pub fn is_inf(&self) -> bool {
        matches!(self, Inf)
    }
    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Fin(r) => Some(r),
            Inf => None,
        }
    }
    /// Panics on ∞; for call sites that have already established finiteness.
    pub fn unwrap_fin(&self) -> &Rat {
        self.finite().expect("finite tropical value expected")
    }
    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
    /// Difference `self - other` when both are finite.
    pub fn diff(&self, other: &Self) -> Option<Rat> {
        Some(self.finite()? - other.finite()?)
    }
    pub fn add_rat(&self, r: &Rat) -> Self {
        match self {
            Fin(a) => Fin(a + r),
            Inf => Inf,
        }
    }
    pub fn scale(&self, k: &Rat) -> Self {
        match self {
            Fin(a) => Fin(a * k),
            Inf => Inf,
        }
    }
}

impl PartialOrd for TropVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Fin(a), Fin(b)) => a.cmp(b),
            (Fin(_), Inf) => Ordering::Less,
            (Inf, Fin(_)) => Ordering::Greater,
            (Inf, Inf) => Ordering::Equal,
        }
    }
}

impl Add for &TropVal {
    type Output = TropVal;
    fn add(self, rhs: &TropVal) -> TropVal {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a + b),
            _ => Inf,
        }
    }
}

impl Add for TropVal {
    type Output = TropVal;
    fn add(self, rhs: TropVal) -> TropVal {
        &self + &rhs
    }
}

impl From<Rat> for TropVal {
    fn from(r: Rat) -> Self {
        Fin(r)
    }
}

impl fmt::Display for TropVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(r) => f.write_str(&fmt_rat(r)),
            Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for TropVal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "∞" | "infinity" => Ok(Inf),
            t => parse_rat(t).map(Fin),
        }
    }
}

/// True iff the minimum is ∞ or attained at least twice.
pub fn trop_min_vanishes(values: &[TropVal]) -> Result<bool> {
    let m = values
        .iter()
        .min()
        .ok_or_else(|| Error::Invalid("empty tropical expression".into()))?;
    if m.is_inf() {
        return Ok(true);
    }
    Ok(values.iter().filter(|v| *v == m).count() >= 2)
}

/// Minimal ring interface needed by fraction-free elimination.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o`, where the caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;
}

impl Ring for Rat {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Machine integers for fast exact determinants of small integer matrices.
/// Overflow panics rather than wrapping.
impl Ring for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn ring_one() -> Self {
        1
    }
    fn ring_is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("i128 overflow")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(*o).expect("i128 overflow")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("i128 overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
}

/// Determinant by Bareiss elimination. Every division is exact, so this works
/// over any integral domain implementing [`Ring`].
pub fn det<R: Ring>(m: &[Vec<R>]) -> R {
    let k = m.len();
    if k == 0 {
        return R::ring_one();
    }
    assert!(m.iter().all(|r| r.len() == k), "det of a non-square matrix");
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut sign_flip = false;
    let mut prev = R::ring_one();
    for c in 0..k {
        if a[c][c].ring_is_zero() {
            match (c + 1..k).find(|&r| !a[r][c].ring_is_zero()) {
                Some(r) => {
                    a.swap(c, r);
                    sign_flip = !sign_flip;
                }
                None => return R::ring_zero(),
            }
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let v = a[i][j].mul(&a[c][c]).sub(&a[i][c].mul(&a[c][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][c] = R::ring_zero();
        }
        prev = a[c][c].clone();
    }
    let d = a[k - 1][k - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Laurent polynomial in `t` over ℚ. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentElem {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentElem {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }
    /// `c * t^e`
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !Zero::is_zero(&c) {
            coeffs.insert(e, c);
        }
        LaurentElem { coeffs }
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }
    fn add_term(&mut self, e: i64, c: Rat) {
        let entry = self.coeffs.entry(e).or_insert_with(<Rat as Zero>::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.coeffs.remove(&e);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }
    /// Smallest exponent with a nonzero coefficient; ∞ for zero.
    pub fn valuation(&self) -> TropVal {
        match self.coeffs.keys().next() {
            Some(e) => Fin(int(*e)),
            None => Inf,
        }
    }
    /// Coefficient of the lowest-order term.
    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.values().next()
    }
    /// Positive in the t-adic ordering: the lowest-order coefficient is > 0.
    pub fn is_positive(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_positive())
    }
    fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Exact quotient; `None` if `d` is zero or does not divide `self`.
    pub fn checked_div(&self, d: &LaurentElem) -> Option<LaurentElem> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Long division from the top degree after clearing negative powers.
        let dmin = *d.coeffs.keys().next().unwrap();
        let dmax = d.max_exp().unwrap();
        let dlead = d.coeffs[&dmax].clone();
        let mut rem = self.clone();
        let mut q = Self::zero();
        let smin = *self.coeffs.keys().next().unwrap();
        while let Some(top) = rem.max_exp() {
            if top - dmax < smin - dmin {
                return None;
            }
            let c = &rem.coeffs[&top] / &dlead;
            let shift = top - dmax;
            for (e, dc) in &d.coeffs {
                rem.add_term(e + shift, -(&c * dc));
            }
            q.add_term(shift, c);
        }
        Some(q)
    }
}

impl Ring for LaurentElem {
    fn ring_zero() -> Self {
        LaurentElem::zero()
    }
    fn ring_one() -> Self {
        LaurentElem::constant(<Rat as One>::one())
    }
    fn ring_is_zero(&self) -> bool {
        LaurentElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.checked_div(o).expect("inexact Laurent division")
    }
}

impl Add for &LaurentElem {
    type Output = LaurentElem;
    fn add(self, rhs: &LaurentElem) -> LaurentElem {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentElem {
    type Output = LaurentElem;
    fn sub(self, rhs: &LaurentElem) -> LaurentElem {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentElem {
    type Output = LaurentElem;
    fn mul(self, rhs: &LaurentElem) -> LaurentElem {
        let mut out = LaurentElem::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentElem {
    type Output = LaurentElem;
    fn neg(self) -> LaurentElem {
        LaurentElem {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest power first, matching how people usually write these.
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let coeff = fmt_rat(&a);
            match *e {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if *e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for LaurentElem {
    type Err = Error;

    /// Accepts sums such as `"2*t^-1 + 3"`, `"-t^2 + 1/2*t"`, `"5"`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        // Split into signed terms, not splitting the sign of an exponent.
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut out = LaurentElem::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (c, e) = match body.find('t') {
                None => (parse_rat(body)?, 0),
                Some(pos) => {
                    let coeff = body[..pos].trim_end_matches('*');
                    let c = if coeff.is_empty() {
                        <Rat as One>::one()
                    } else {
                        parse_rat(coeff)?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else if let Some(x) = rest.strip_prefix('^') {
                        x.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                    } else {
                        return Err(Error::Parse(format!("bad Laurent term {term:?}")));
                    };
                    (c, e)
                }
            };
            out.add_term(e, if neg { -c } else { c });
        }
        Ok(out)
    }
}

/// Valuation of a Laurent polynomial.
pub fn laurent_valuation(x: &LaurentElem) -> TropVal {
    x.valuation()
}

/// Symmetric rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rat>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "SymMatrix needs positive size");
        SymMatrix {
            n,
            entries: vec![<Rat as Zero>::zero(); n * n],
        }
    }
    /// Rejects non-symmetric input.
    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Invalid(format!(
                        "matrix not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(SymMatrix {
            n,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.n + j] = v.clone();
        self.entries[j * self.n + i] = v;
    }
    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }
}

/// Signature `(n_plus, n_minus, n_zero)` of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

/// Exact inertia by symmetric elimination (Sylvester's law).
///
/// A nonzero diagonal pivot is split off as a 1×1 block. When the whole
/// remaining diagonal vanishes but some off-diagonal entry does not, the
/// corresponding 2×2 block is hyperbolic and contributes one of each sign.
pub fn inertia(m: &SymMatrix) -> Inertia {
    let mut a = m.rows();
    let mut res = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    loop {
        let k = a.len();
        if k == 0 {
            break;
        }
        if let Some(p) = (0..k).find(|&i| !Zero::is_zero(&a[i][i])) {
            let piv = a[p][p].clone();
            if piv.is_positive() {
                res.n_plus += 1;
            } else {
                res.n_minus += 1;
            }
            let rest: Vec<usize> = (0..k).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| &a[i][j] - &a[i][p] * &a[p][j] / &piv)
                        .collect()
                })
                .collect();
            continue;
        }
        let off = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).find(|&(i, j)| !Zero::is_zero(&a[i][j]));
        let Some((p, q)) = off else {
            res.n_zero += k;
            break;
        };
        // Block P = [[0,b],[b,0]], P^{-1} = [[0,1/b],[1/b,0]].
        res.n_plus += 1;
        res.n_minus += 1;
        let b = a[p][q].clone();
        let rest: Vec<usize> = (0..k).filter(|&i| i != p && i != q).collect();
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| {
                        let corr = (&a[i][p] * &a[q][j] + &a[i][q] * &a[p][j]) / &b;
                        &a[i][j] - corr
                    })
                    .collect()
            })
            .collect();
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hyperbolic_plane() {
        let i = inertia(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (1, 1, 0));
    }

    #[test]
    fn zero_matrix() {
        let i = inertia(&SymMatrix::zeros(3));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (0, 0, 3));
    }

    #[test]
    fn vanishing() {
        let v = |xs: &[&str]| xs.iter().map(|s| s.parse::<TropVal>().unwrap()).collect::<Vec<_>>();
        assert!(trop_min_vanishes(&v(&["0", "0", "5"])).unwrap());
        assert!(!trop_min_vanishes(&v(&["1", "2", "3"])).unwrap());
        assert!(trop_min_vanishes(&v(&["inf", "inf"])).unwrap());
        assert!(trop_min_vanishes(&[]).is_err());
    }

    #[test]
    fn laurent_parse_and_valuation() {
        let x: LaurentElem = "3*t^2 + t^5".parse().unwrap();
        assert_eq!(x.valuation(), TropVal::from_int(2));
        assert_eq!(LaurentElem::zero().valuation(), Inf);
        let y: LaurentElem = "t^-1 + 1".parse().unwrap();
        assert_eq!(y.valuation(), TropVal::from_int(-1));
        let z: LaurentElem = "2*t^-1 + 3".parse().unwrap();
        assert_eq!(z.to_string(), "3 + 2*t^-1");
        assert_eq!(z.to_string().parse::<LaurentElem>().unwrap(), z);
        let w: LaurentElem = "-1/2*t - t^3".parse().unwrap();
        assert_eq!(w.terms().count(), 2);
    }

    #[test]
    fn laurent_division() {
        let a: LaurentElem = "t^-1 + 2 + t".parse().unwrap();
        let b: LaurentElem = "1 + t^2".parse().unwrap();
        let p = &a * &b;
        assert_eq!(p.checked_div(&b).unwrap(), a);
        assert_eq!(p.checked_div(&a).unwrap(), b);
        assert!(a.checked_div(&b).is_none());
    }

    #[test]
    fn small_dets() {
        let id: Vec<Vec<Rat>> = (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect();
        assert_eq!(det(&id), int(1));
        assert_eq!(det(&[vec![int(1), int(2)], vec![int(3), int(4)]]), int(-2));
        assert_eq!(det(&[vec![int(0), int(1)], vec![int(1), int(0)]]), int(-1));
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_rat("3.9").unwrap(), rat(39, 10));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7/-14").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
    }
}
