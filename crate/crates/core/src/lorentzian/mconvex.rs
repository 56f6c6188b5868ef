//! M-convex sets and functions, their elementary quotients, and the
//! basis generating polynomial `f_q^φ = Σ q^{φ(a)} w^a / a!`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{inv_factorial, Exp, HomPoly};
use crate::arith::{fmt_rat, Rat};
use crate::error::{Error, Result};
use crate::valuated::ValuatedMatroid;

/// A failed exchange: for `x`, `y` and the coordinate `i` with `x_i > y_i`,
/// no admissible `j` exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub x: Exp,
    pub y: Exp,
    pub i: usize,
}

/// A function on `Δ^d_n` with finite values on its support and `∞` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MConvexFn {
    n: usize,
    d: u32,
    values: BTreeMap<Exp, Rat>,
}

fn moved(x: &[u32], i: usize, j: usize) -> Exp {
    let mut z = x.to_vec();
    z[i] -= 1;
    z[j] += 1;
    z
}

/// Exhaustive exchange check on a finite set of exponents.
pub fn m_convex_set_violation(s: &[Exp]) -> Option<ExchangeWitness> {
    let set: BTreeSet<&Exp> = s.iter().collect();
    for x in s {
        for y in s {
            for i in 0..x.len() {
                if x[i] <= y[i] {
                    continue;
                }
                let ok = (0..x.len())
                    .any(|j| x[j] < y[j] && set.contains(&moved(x, i, j)) && set.contains(&moved(y, j, i)));
                if !ok {
                    return Some(ExchangeWitness {
                        x: x.clone(),
                        y: y.clone(),
                        i,
                    });
                }
            }
        }
    }
    None
}

pub fn is_m_convex_set(s: &[Exp]) -> bool {
    m_convex_set_violation(s).is_none()
}

impl MConvexFn {
    /// Values must share one total degree. Does not check M-convexity.
    pub fn new(n: usize, values: impl IntoIterator<Item = (Exp, Rat)>) -> Result<Self> {
        let values: BTreeMap<Exp, Rat> = values.into_iter().collect();
        let mut degrees = values.keys().map(|e| {
            if e.len() == n {
                Ok(e.iter().sum::<u32>())
            } else {
                Err(Error::Invalid(format!("exponent {e:?} has length {}, expected {n}", e.len())))
            }
        });
        let d = match degrees.next() {
            Some(d) => d?,
            None => return Err(Error::Invalid("M-convex function with empty support".into())),
        };
        for k in degrees {
            if k? != d {
                return Err(Error::Invalid("support is not in a single Δ^d_n".into()));
            }
        }
        Ok(MConvexFn { n, d, values })
    }

    pub fn from_valuated(mu: &ValuatedMatroid) -> Self {
        MConvexFn {
            n: mu.n(),
            d: mu.rank() as u32,
            values: mu.values().iter().map(|(&b, v)| (super::mask_exp(b, mu.n()), v.clone())).collect(),
        }
    }

    /// The indicator function of a set: 0 on it, `∞` elsewhere.
    pub fn indicator(n: usize, s: &[Exp]) -> Result<Self> {
        MConvexFn::new(n, s.iter().map(|e| (e.clone(), Rat::zero())))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn rank(&self) -> u32 {
        self.d
    }
    pub fn values(&self) -> &BTreeMap<Exp, Rat> {
        &self.values
    }
    pub fn value(&self, e: &[u32]) -> Option<&Rat> {
        self.values.get(e)
    }

    /// First failure of `φ(x) + φ(y) ≥ φ(x - e_i + e_j) + φ(y - e_j + e_i)`.
    pub fn violation(&self) -> Option<ExchangeWitness> {
        for (x, fx) in &self.values {
            for (y, fy) in &self.values {
                let lhs = fx + fy;
                for i in 0..self.n {
                    if x[i] <= y[i] {
                        continue;
                    }
                    let ok = (0..self.n).any(|j| {
                        x[j] < y[j]
                            && match (self.values.get(&moved(x, i, j)), self.values.get(&moved(y, j, i))) {
                                (Some(a), Some(b)) => lhs >= a + b,
                                _ => false,
                            }
                    });
                    if !ok {
                        return Some(ExchangeWitness {
                            x: x.clone(),
                            y: y.clone(),
                            i,
                        });
                    }
                }
            }
        }
        None
    }

    /// `φ·k` with `k` the least positive integer making every value integral.
    pub fn integer_rescaled(&self) -> (MConvexFn, BigInt) {
        let k = self.values.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let kr = Rat::from_integer(k.clone());
        let values = self.values.iter().map(|(e, v)| (e.clone(), v * &kr)).collect();
        (
            MConvexFn {
                n: self.n,
                d: self.d,
                values,
            },
            k,
        )
    }

    /// `φ̂` on `Δ^d_{n+1}`: `φ` at `x_{n+1} = 0` and `ψ` at `x_{n+1} = 1`.
    pub fn stacked(&self, psi: &MConvexFn) -> Result<MConvexFn> {
        if psi.n != self.n || psi.d + 1 != self.d {
            return Err(Error::Invalid(format!(
                "need ranks d and d-1 on the same ground set, got {} and {}",
                self.d, psi.d
            )));
        }
        let lift = |e: &Exp, k: u32| {
            let mut e = e.clone();
            e.push(k);
            e
        };
        let values = self
            .values
            .iter()
            .map(|(e, v)| (lift(e, 0), v.clone()))
            .chain(psi.values.iter().map(|(e, v)| (lift(e, 1), v.clone())))
            .collect();
        Ok(MConvexFn {
            n: self.n + 1,
            d: self.d,
            values,
        })
    }
}

pub fn is_m_convex_fn(phi: &MConvexFn) -> bool {
    phi.violation().is_none()
}

/// Whether `ψ` is an elementary quotient of `φ`, decided by the M-convexity of
/// the stacked function. The witness comes from that exchange check.
pub fn mconvex_quotient(phi: &MConvexFn, psi: &MConvexFn) -> Result<std::result::Result<(), ExchangeWitness>> {
    match phi.stacked(psi)?.violation() {
        None => Ok(Ok(())),
        Some(w) => Ok(Err(w)),
    }
}

/// `f_q^φ` for `0 < q < 1`. Values must be integers; see
/// [`MConvexFn::integer_rescaled`], which preserves every quotient relation.
pub fn basis_generating(phi: &MConvexFn, q: &Rat) -> Result<HomPoly> {
    if !q.is_positive() || *q >= Rat::one() {
        return Err(Error::Invalid(format!("q must lie in (0, 1), got {}", fmt_rat(q))));
    }
    let mut terms = Vec::with_capacity(phi.values.len());
    for (e, v) in &phi.values {
        if !v.is_integer() {
            return Err(Error::Invalid(format!(
                "value {} at {e:?} is not an integer; rescale the function to integer values first",
                fmt_rat(v)
            )));
        }
        let k: i32 = v
            .to_integer()
            .try_into()
            .map_err(|_| Error::Invalid(format!("value {} is too large for an exponent", fmt_rat(v))))?;
        terms.push((e.clone(), q.pow(k) * inv_factorial(e)));
    }
    HomPoly::new(phi.n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::matroid::uniform;

    #[test]
    fn exchange_on_small_sets() {
        let u23: Vec<Exp> = vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
        assert!(is_m_convex_set(&u23));
        assert!(!is_m_convex_set(&[vec![2, 0], vec![0, 2]]));
        assert!(is_m_convex_set(&[vec![2, 0], vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn valuated_matroids_are_m_convex() {
        let mut r = crate::gen::rng(5);
        for _ in 0..20 {
            let mu = crate::gen::random_valuated(&mut r, 5, 2, 3, 0.2);
            assert!(is_m_convex_fn(&MConvexFn::from_valuated(&mu)));
        }
    }

    #[test]
    fn trivial_quotient_and_polynomial() {
        let phi = MConvexFn::from_valuated(&ValuatedMatroid::trivial(&uniform(2, 3)));
        let psi = MConvexFn::from_valuated(&ValuatedMatroid::trivial(&uniform(1, 3)));
        assert_eq!(mconvex_quotient(&phi, &psi).unwrap(), Ok(()));
        assert!(mconvex_quotient(&psi, &phi).is_err());
        let f = basis_generating(&phi, &rat(1, 2)).unwrap();
        assert_eq!(f, super::super::basis_polynomial(&uniform(2, 3)));
    }

    #[test]
    fn non_quotient_has_witness() {
        // {1,2} alone cannot sit below the single basis {3,4}.
        let phi = MConvexFn::new(4, [(vec![0, 0, 1, 1], int(0))]).unwrap();
        let psi = MConvexFn::new(4, [(vec![1, 0, 0, 0], int(0))]).unwrap();
        assert!(mconvex_quotient(&phi, &psi).unwrap().is_err());
    }

    #[test]
    fn q_weights_and_factorials() {
        let phi = MConvexFn::new(2, [(vec![2, 0], int(1)), (vec![1, 1], int(0)), (vec![0, 2], int(2))]).unwrap();
        let f = basis_generating(&phi, &rat(1, 2)).unwrap();
        assert_eq!(f.coeff(&[2, 0]), rat(1, 4));
        assert_eq!(f.coeff(&[1, 1]), int(1));
        assert_eq!(f.coeff(&[0, 2]), rat(1, 8));
        let half = MConvexFn::new(2, [(vec![1, 0], rat(1, 2)), (vec![0, 1], int(0))]).unwrap();
        assert!(basis_generating(&half, &rat(1, 2)).is_err());
        assert_eq!(half.integer_rescaled().1, BigInt::from(2));
    }
}
