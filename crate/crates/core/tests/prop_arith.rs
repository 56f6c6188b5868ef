use proptest::prelude::*;
use rand::Rng;
use tropmat::arith::{int, laurent_valuation, Ring};
use tropmat::gen::{random_laurent_matrix, rng};
use tropmat::{inertia, Rat, SymMatrix, TropVal};

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(Rat::ring_zero(), |s, k| s + &a[i][k] * &b[k][j])).collect()).collect()
}

fn transpose(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    (0..a.len()).map(|i| a.iter().map(|r| r[i].clone()).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n).map(|i| (0..n).map(|j| int(i64::from(i == j))).collect()).collect()
}

/// A random unimodular `Q` together with `Q⁻¹`, from elementary row operations.
fn unimodular(r: &mut impl Rng, n: usize) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let (mut q, mut qi) = (identity(n), identity(n));
    for _ in 0..3 * n {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = int(r.gen_range(-2..=2));
        let mut e = identity(n);
        e[i][j] = c.clone();
        let mut ei = identity(n);
        ei[i][j] = -c;
        q = matmul(&e, &q);
        qi = matmul(&qi, &ei);
    }
    (q, qi)
}

fn random_symmetric(r: &mut impl Rng, n: usize) -> Vec<Vec<Rat>> {
    let mut a = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = int(r.gen_range(-4..=4));
            a[i][j] = v.clone();
            a[j][i] = v;
        }
    }
    a
}

fn form(m: &[Vec<Rat>], u: &[Rat], v: &[Rat]) -> Rat {
    let mut s = int(0);
    for i in 0..u.len() {
        for j in 0..v.len() {
            s += &u[i] * &m[i][j] * &v[j];
        }
    }
    s
}

fn sig(a: &[Vec<Rat>]) -> (usize, usize, usize) {
    let i = inertia(&SymMatrix::from_rows(a).unwrap());
    (i.n_plus, i.n_minus, i.n_zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inertia_is_a_congruence_invariant(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let m = random_symmetric(&mut r, n);
        let (p, _) = unimodular(&mut r, n);
        let scale = int(r.gen_range(1..=3));
        let p: Vec<Vec<Rat>> = p.iter().map(|row| row.iter().map(|x| x * &scale).collect()).collect();
        let c = matmul(&transpose(&p), &matmul(&m, &p));
        prop_assert_eq!(sig(&m), sig(&c));
        let (a, b, z) = sig(&m);
        prop_assert_eq!(a + b + z, n);
    }

    #[test]
    fn one_positive_direction_means_no_positive_plane(seed in any::<u64>(), n in 2usize..6) {
        let mut r = rng(seed);
        let m = random_symmetric(&mut r, n);
        if sig(&m).0 <= 1 {
            for _ in 0..20 {
                let u: Vec<Rat> = (0..n).map(|_| int(r.gen_range(-3..=3))).collect();
                let v: Vec<Rat> = (0..n).map(|_| int(r.gen_range(-3..=3))).collect();
                let (uu, uv, vv) = (form(&m, &u, &u), form(&m, &u, &v), form(&m, &v, &v));
                if uu > int(0) {
                    prop_assert!(!(vv > int(0) && &uu * &vv - &uv * &uv > int(0)));
                }
            }
        }
    }

    #[test]
    fn two_positive_directions_give_a_positive_plane(seed in any::<u64>(), n in 2usize..6) {
        // m = Qᵀ D Q with D_00, D_11 > 0; u = Q⁻¹e_0 and v = Q⁻¹e_1 span a positive plane.
        let mut r = rng(seed);
        let mut d = vec![vec![int(0); n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = if i < 2 { int(r.gen_range(1..=5)) } else { int(r.gen_range(-5..=5)) };
        }
        let (q, qi) = unimodular(&mut r, n);
        let m = matmul(&transpose(&q), &matmul(&d, &q));
        prop_assert!(sig(&m).0 >= 2);
        let col = |k: usize| -> Vec<Rat> { qi.iter().map(|row| row[k].clone()).collect() };
        let (u, v) = (col(0), col(1));
        let (uu, uv, vv) = (form(&m, &u, &u), form(&m, &u, &v), form(&m, &v, &v));
        prop_assert!(uu > int(0) && vv > int(0) && &uu * &vv - &uv * &uv > int(0));
    }

    #[test]
    fn laurent_valuation_is_a_valuation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_laurent_matrix(&mut r, 1, 2);
        let (x, y) = (&a[0][0], &a[0][1]);
        let (vx, vy) = (laurent_valuation(x), laurent_valuation(y));
        prop_assert_eq!(laurent_valuation(&(x * y)), &vx + &vy);
        let vs = laurent_valuation(&(x + y));
        let lo = vx.clone().min(vy.clone());
        prop_assert!(vs >= lo);
        if vx != vy {
            prop_assert_eq!(vs, lo);
        }
        prop_assert_eq!(laurent_valuation(&(x - x)), TropVal::Inf);
    }
}
