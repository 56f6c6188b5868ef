//! Small finite fields and exact Gaussian elimination over any field.

use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// Field interface used for rank computations and null vectors.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero_elem(&self) -> bool {
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
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Element of GF(q) for q ∈ {2, 3, 4}. GF(4) elements are `b0 + b1·a`
/// encoded as `b0 | b1 << 1`, with `a² = a + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    pub q: u8,
    pub v: u8,
}

impl Gf {
    pub fn new(q: u8, v: u8) -> Result<Self> {
        if !matches!(q, 2..=4) || v >= q {
            return Err(Error::Unsupported(format!("GF({q}) element {v}")));
        }
        Ok(Gf { q, v })
    }
    pub fn all(q: u8) -> Vec<Gf> {
        (0..q).map(|v| Gf { q, v }).collect()
    }
}

fn gf4_mul(x: u8, y: u8) -> u8 {
    // (x0 + x1 a)(y0 + y1 a) = x0y0 + (x0y1 + x1y0) a + x1y1 (a + 1)
    let (x0, x1, y0, y1) = (x & 1, x >> 1, y & 1, y >> 1);
    let c0 = (x0 & y0) ^ (x1 & y1);
    let c1 = (x0 & y1) ^ (x1 & y0) ^ (x1 & y1);
    c0 | c1 << 1
}

impl Field for Gf {
    fn zero_like(&self) -> Self {
        Gf { q: self.q, v: 0 }
    }
    fn one_like(&self) -> Self {
        Gf { q: self.q, v: 1 }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        let v = match self.q {
            4 => self.v ^ o.v,
            q => (self.v + o.v) % q,
        };
        Gf { q: self.q, v }
    }
    fn sub(&self, o: &Self) -> Self {
        let v = match self.q {
            4 => self.v ^ o.v,
            q => (self.v + q - o.v) % q,
        };
        Gf { q: self.q, v }
    }
    fn mul(&self, o: &Self) -> Self {
        let v = match self.q {
            4 => gf4_mul(self.v, o.v),
            q => (self.v * o.v) % q,
        };
        Gf { q: self.q, v }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        let v = (1..self.q)
            .find(|&y| self.mul(&Gf { q: self.q, v: y }).v == 1)
            .expect("field element has an inverse");
        Gf { q: self.q, v }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_elem() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// A nonzero vector `x` with `m x = 0`, if the kernel is nontrivial.
pub fn null_vector<F: Field>(m: &[Vec<F>], cols: usize, one: &F) -> Option<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![one.zero_like(); cols];
    x[free] = one.clone();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][free].mul(&one.zero_like().sub(one));
    }
    Some(x)
}

/// Scales a projective vector so that its first nonzero entry is 1.
pub fn normalize_projective<F: Field>(v: &[F]) -> Option<Vec<F>> {
    let lead = v.iter().find(|x| !x.is_zero_elem())?.inv();
    Some(v.iter().map(|x| x.mul(&lead)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_is_a_field() {
        let els = Gf::all(4);
        for x in &els {
            for y in &els {
                assert_eq!(x.mul(y), y.mul(x));
                for z in &els {
                    assert_eq!(x.mul(&y.add(z)), x.mul(y).add(&x.mul(z)));
                }
            }
            if x.v != 0 {
                assert_eq!(x.mul(&x.inv()).v, 1);
            }
        }
    }

    #[test]
    fn kernel_vector() {
        let one = Rat::one();
        let m = vec![vec![Rat::from_integer(1.into()), Rat::from_integer(2.into()), Rat::from_integer(3.into())]];
        let x = null_vector(&m, 3, &one).unwrap();
        let dot: Rat = m[0].iter().zip(&x).map(|(a, b)| a * b).sum();
        assert!(num_traits::Zero::is_zero(&dot));
        assert_eq!(rank(&m), 1);
    }
}
