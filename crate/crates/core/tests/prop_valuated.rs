use proptest::prelude::*;
use rand::Rng;
use tropmat::arith::int;
use tropmat::gen::{random_point, random_quotient, random_valuated, random_weights, rng};
use tropmat::subsets::{bit, elements, k_subsets, Mask};
use tropmat::valuated::*;
use tropmat::{Rat, TropVal, TropVal::Fin, TropVal::Inf};

fn get(v: &Valuation, s: Mask) -> TropVal {
    v.get(&s).map_or(Inf, |x| Fin(x.clone()))
}

/// The minimum of the terms is ∞ or attained at least twice.
fn vanishes(terms: &[TropVal]) -> bool {
    let min = terms.iter().min().unwrap();
    min.is_inf() || terms.iter().filter(|t| *t == min).count() >= 2
}

/// All tropical Plücker relations, with `|I| = d-1` and `|J| = d+1`.
fn oracle_valid(n: usize, d: usize, v: &Valuation) -> bool {
    if v.is_empty() {
        return false;
    }
    if d == 0 || d >= n {
        return true;
    }
    k_subsets(n, d - 1).all(|i| {
        k_subsets(n, d + 1).all(|j| {
            let terms: Vec<TropVal> =
                elements(j & !i).into_iter().map(|x| &get(v, i | bit(x)) + &get(v, j & !bit(x))).collect();
            vanishes(&terms)
        })
    })
}

/// A valid valuation, perturbed at a few sets so that most results are invalid.
fn perturbed(seed: u64) -> (usize, usize, Valuation) {
    let mut r = rng(seed);
    let n = r.gen_range(3..=6);
    let d = r.gen_range(1..=3.min(n - 1));
    let mut v = random_valuated(&mut r, n, d, 3, 0.15).values().clone();
    let all: Vec<Mask> = k_subsets(n, d).collect();
    for _ in 0..r.gen_range(0..=2) {
        let s = all[r.gen_range(0..all.len())];
        match r.gen_range(0..3) {
            0 => {
                v.remove(&s);
            }
            1 => {
                v.insert(s, int(r.gen_range(0..=4)));
            }
            _ => {
                if let Some(x) = v.get_mut(&s) {
                    *x += int(r.gen_range(-2..=2));
                }
            }
        }
    }
    (n, d, v)
}

fn equal_up_to_shift(a: &ValuatedMatroid, b: &ValuatedMatroid) -> bool {
    a.n() == b.n() && a.rank() == b.rank() && normalize(a.values()) == normalize(b.values())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn validation_matches_all_plucker_relations(seed in any::<u64>()) {
        let (n, d, v) = perturbed(seed);
        let want = oracle_valid(n, d, &v);
        prop_assert_eq!(ValuatedMatroid::new(n, d, v.clone()).is_ok(), want);
        prop_assert_eq!(plucker_violation(n, d, &v).is_none() && !v.is_empty(), want);
    }

    #[test]
    fn circuits_vanish_on_points(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=6);
        let d = r.gen_range(1..n);
        let mu = random_valuated(&mut r, n, d, 4, 0.15);
        let p = random_point(&mut r, &mu, 4);
        let w: Vec<TropVal> = (0..n).map(|i| p.value(bit(i))).collect();
        prop_assert!(point_in_trop(&mu, &w).unwrap());
        for c in mu.all_circuits() {
            let terms: Vec<TropVal> = c.iter().zip(&w).map(|(a, b)| a + b).collect();
            prop_assert!(vanishes(&terms), "circuit {:?} at {:?}", c, w);
        }
    }

    #[test]
    fn truncation_is_an_elementary_quotient(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=6);
        let d = r.gen_range(1..=n - 1);
        let mu = random_valuated(&mut r, n, d, 4, 0.15);
        let nu = corank_one(&random_weights(&mut r, n, 4, 0.2)).unwrap();
        if let Ok(t) = truncate_by(&mu, &nu) {
            prop_assert!(ValuatedMatroid::new(t.n(), t.rank(), t.values().clone()).is_ok());
            prop_assert!(is_quotient_valuated(&mu, &t).unwrap());
        }
    }

    #[test]
    fn combinations_of_quotients_are_quotients(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(4..=7);
        let d = r.gen_range(2..=4.min(n - 1));
        let mu = random_valuated(&mut r, n, d, 4, 0.1);
        let (t1, t2) = (random_quotient(&mut r, &mu, 4), random_quotient(&mut r, &mu, 4));
        let a = Fin(int(r.gen_range(-3..=3)));
        let b = if r.gen_bool(0.1) { Inf } else { Fin(int(r.gen_range(-3..=3))) };
        let c = trop_combination(&t1, &t2, &a, &b).unwrap();
        let t = ValuatedMatroid::new(n, d - 1, c).unwrap();
        prop_assert!(is_quotient_valuated(&mu, &t).unwrap());
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let d = r.gen_range(1..n);
        let mu = random_valuated(&mut r, n, d, 4, 0.2);
        let dd = mu.dual().dual();
        prop_assert!(equal_up_to_shift(&dd, &mu));
        prop_assert!(ValuatedMatroid::new(n, n - d, mu.dual().values().clone()).is_ok());
    }

    #[test]
    fn deletion_dualizes_to_contraction(seed in any::<u64>(), s in 1u64..63) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=6);
        let d = r.gen_range(1..n);
        let mu = random_valuated(&mut r, n, d, 4, 0.2);
        let s: Mask = s & ((1 << n) - 1);
        prop_assume!(s != 0 && s != (1 << n) - 1);
        let lhs = mu.deletion(s).dual();
        let rhs = mu.dual().contraction(s);
        prop_assert!(equal_up_to_shift(&lhs, &rhs), "{:?} vs {:?}", lhs, rhs);
    }

    #[test]
    fn lines_in_a_plane_meet(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=6);
        let mu = random_valuated(&mut r, n, 3, 4, 0.15);
        let (t1, t2) = (random_quotient(&mut r, &mu, 4), random_quotient(&mut r, &mu, 4));
        let p = lines_intersect(&t1, &t2).unwrap();
        prop_assert!(p.is_some());
        let p = p.unwrap();
        prop_assert!(point_in_trop(&t1, &p).unwrap() && point_in_trop(&t2, &p).unwrap());
        prop_assert!(point_in_trop(&mu, &p).unwrap());
    }
}

#[test]
fn circuit_of_the_four_point_valuation() {
    let s = |x: &str| tropmat::matroid::sets(&[x])[0];
    let vals = [("12", 1), ("13", 0), ("14", 0), ("23", 0), ("24", 0), ("34", 1)];
    let mu = ValuatedMatroid::new(4, 2, vals.iter().map(|&(k, v)| (s(k), int(v))).collect()).unwrap();
    let c = mu.valuated_circuit(s("12"), 2).unwrap();
    let z = || Fin(Rat::from_integer(0.into()));
    assert_eq!(c, vec![z(), z(), Fin(int(1)), Inf]);
}
