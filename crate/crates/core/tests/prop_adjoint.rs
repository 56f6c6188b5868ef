use proptest::prelude::*;
use rand::Rng;
use tropmat::adjoint::*;
use tropmat::arith::int;
use tropmat::gen::{random_laurent_matrix, random_rational_matrix, rng};
use tropmat::subsets::{bit, elements, full};
use tropmat::Rat;

/// Leibniz expansion, kept separate from the library's elimination.
fn leibniz(a: &[Vec<Rat>]) -> Rat {
    fn go(a: &[Vec<Rat>], row: usize, used: &mut Vec<bool>, sign: bool, acc: Rat, out: &mut Rat) {
        if row == a.len() {
            *out += if sign { -acc } else { acc };
            return;
        }
        for c in 0..a.len() {
            if used[c] {
                continue;
            }
            let flips = used[c + 1..].iter().filter(|&&u| u).count() % 2 == 1;
            used[c] = true;
            go(a, row + 1, used, sign ^ flips, &acc * &a[row][c], out);
            used[c] = false;
        }
    }
    let mut out = int(0);
    go(a, 0, &mut vec![false; a.len()], false, int(1), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_cofactor_matrix_satisfies_jacobi(seed in any::<u64>(), d in 2usize..5) {
        let mut r = rng(seed);
        let a = random_rational_matrix(&mut r, d, d, 3);
        let order: Vec<_> = (0..d).map(|i| full(d) & !bit(i)).collect();
        let b = gen_cofactor(&a, &order);
        let da = leibniz(&a);
        let want = (1..d).fold(int(1), |acc, _| acc * &da);
        prop_assert_eq!(leibniz(&b), want);
        prop_assert!(square_cofactor_check(&a));
    }

    #[test]
    fn cofactor_identity_holds_for_random_matrices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..=3);
        let n = r.gen_range(d..=5);
        let a = random_rational_matrix(&mut r, d, n, 3);
        prop_assert_eq!(cofactor_identity_check_all(&a), None);
        let small = as_small_integers(&a).unwrap();
        prop_assert_eq!(cofactor_identity_check_all(&small), None);
        prop_assert!(plethystic_diagram_check(&a));
        for js in phi_index(n, d).iter().take(5) {
            let (l, rr) = cofactor_identity_sides(&a, js);
            let b = gen_cofactor(&a, js);
            prop_assert_eq!(&l, &leibniz(&b));
            prop_assert_eq!(l, rr);
        }
    }

    #[test]
    fn tropicalized_realizations_are_adjoints(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..=3);
        let n = r.gen_range(d + 1..=5);
        let a = random_laurent_matrix(&mut r, d, n);
        let Ok((mu, sigma)) = tropicalize_realization(&a) else { return Ok(()) };
        if mu.support().is_simple() {
            prop_assert!(is_valuated_adjoint(&mu, &sigma).unwrap());
        }
        let rep = cofactor_check(&mu, &sigma).unwrap();
        prop_assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        for &b in mu.support().bases() {
            let ib = induced_basis(b);
            prop_assert_eq!(elements(ib).len(), d);
            prop_assert!(sigma.value(ib).is_finite(), "induced basis of {:?}", elements(b));
        }
    }
}

#[test]
fn leibniz_matches_a_known_determinant() {
    let a: Vec<Vec<Rat>> = [[2, 0, 1], [1, 3, 2], [1, 1, 2]].iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    assert_eq!(leibniz(&a), int(6));
}
