//! Seeded random instances for tests, benchmarks and the CLI.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, LaurentElem, Rat, TropVal, TropVal::Fin, TropVal::Inf};
use crate::subsets::{elements, k_subsets};
use crate::valuated::{point_matroid, truncate_by_weights, Valuation, ValuatedMatroid};

/// The generator every seeded routine in this crate uses.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tropical determinant `min_σ Σ a(i, σ(i))` of a square matrix.
pub fn trop_det(a: &[Vec<TropVal>]) -> TropVal {
    let d = a.len();
    let mut perm: Vec<usize> = (0..d).collect();
    let mut best = Inf;
    loop {
        let s = perm.iter().enumerate().fold(Fin(Rat::zero()), |acc, (i, &j)| &acc + &a[i][j]);
        best = best.min(s);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A random valuated matroid: the tropical maximal minors of a random
/// `d × n` matrix with entries in `0..=spread`, a fraction `inf_rate` of them ∞.
pub fn random_valuated<R: Rng>(rng: &mut R, n: usize, d: usize, spread: i64, inf_rate: f64) -> ValuatedMatroid {
    loop {
        let a: Vec<Vec<TropVal>> = (0..d)
            .map(|_| {
                (0..n)
                    .map(|_| if rng.gen_bool(inf_rate) { Inf } else { Fin(int(rng.gen_range(0..=spread))) })
                    .collect()
            })
            .collect();
        let mut values = Valuation::new();
        for b in k_subsets(n, d) {
            let cols = elements(b);
            let sq: Vec<Vec<TropVal>> = a.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            if let Fin(v) = trop_det(&sq) {
                values.insert(b, v);
            }
        }
        if !values.is_empty() {
            return ValuatedMatroid::new(n, d, values).expect("tropical minors satisfy the Plücker relations");
        }
    }
}

/// Random hyperplane weights in `0..=spread`, each ∞ with probability `inf_rate`,
/// with at least two finite entries.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize, spread: i64, inf_rate: f64) -> Vec<TropVal> {
    loop {
        let w: Vec<TropVal> = (0..n)
            .map(|_| if rng.gen_bool(inf_rate) { Inf } else { Fin(int(rng.gen_range(0..=spread))) })
            .collect();
        if w.iter().filter(|x| x.is_finite()).count() >= 2 {
            return w;
        }
    }
}

/// A random elementary quotient of `μ`, by truncating with a random hyperplane.
pub fn random_quotient<R: Rng>(rng: &mut R, mu: &ValuatedMatroid, spread: i64) -> ValuatedMatroid {
    loop {
        let w = random_weights(rng, mu.n(), spread, 0.15);
        if let Ok(t) = truncate_by_weights(mu, &w) {
            return t;
        }
    }
}

/// A random point of `Trop μ`, as a rank-1 quotient reached by repeated truncation.
pub fn random_point<R: Rng>(rng: &mut R, mu: &ValuatedMatroid, spread: i64) -> ValuatedMatroid {
    let mut cur = mu.clone();
    while cur.rank() > 1 {
        cur = random_quotient(rng, &cur, spread);
    }
    let p: Vec<TropVal> = (0..cur.n()).map(|i| cur.value(1 << i)).collect();
    point_matroid(&p).expect("rank-1 valuation")
}

/// Random integer matrix with entries in `-spread..=spread`.
pub fn random_rational_matrix<R: Rng>(rng: &mut R, d: usize, n: usize, spread: i64) -> Vec<Vec<Rat>> {
    (0..d).map(|_| (0..n).map(|_| int(rng.gen_range(-spread..=spread))).collect()).collect()
}

/// Random Laurent matrix: each entry a sum of one or two monomials
/// `c t^e` with `c ∈ ±1..=5`, `e ∈ -2..=2`.
pub fn random_laurent_matrix<R: Rng>(rng: &mut R, d: usize, n: usize) -> Vec<Vec<LaurentElem>> {
    (0..d)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let terms = rng.gen_range(1..=2);
                    let mut x = LaurentElem::zero();
                    for _ in 0..terms {
                        let c = *[-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5].choose(rng).unwrap();
                        x = &x + &LaurentElem::monomial(int(c), rng.gen_range(-2..=2));
                    }
                    x
                })
                .collect()
        })
        .collect()
}

/// Seeded `(μ, point)` pairs used by the flag-completion checks.
pub fn flag_instances(seed: u64, count: usize) -> Vec<(ValuatedMatroid, ValuatedMatroid)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = r.gen_range(3..=6);
        let d = r.gen_range(2..=4.min(n - 1));
        let mu = random_valuated(&mut r, n, d, 4, 0.1);
        let p = random_point(&mut r, &mu, 4);
        out.push((mu, p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stiefel_is_valid() {
        let mut r = rng(7);
        for _ in 0..30 {
            let mu = random_valuated(&mut r, 6, 3, 5, 0.2);
            assert!(crate::valuated::plucker_violation(6, 3, mu.values()).is_none());
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_valuated(&mut rng(3), 5, 2, 9, 0.0);
        let b = random_valuated(&mut rng(3), 5, 2, 9, 0.0);
        assert_eq!(a, b);
    }
}
