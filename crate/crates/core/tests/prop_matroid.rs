use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use tropmat::matroid::*;
use tropmat::subsets::{is_subset, Mask};
use tropmat::{Limits, Matroid};

/// Every matroid of rank 2 or 3 on 4 or 5 elements.
fn small_matroids() -> &'static Vec<Matroid> {
    static ALL: OnceLock<Vec<Matroid>> = OnceLock::new();
    ALL.get_or_init(|| {
        let limits = Limits::default();
        let mut out = Vec::new();
        for (n, d) in [(4, 2), (4, 3), (5, 2), (5, 3)] {
            out.extend(all_matroids(n, d, &limits).unwrap());
        }
        out
    })
}

fn pick(i: usize) -> &'static Matroid {
    let all = small_matroids();
    &all[i % all.len()]
}

/// Brute-force modular cut test, written out from the definition.
fn oracle_is_modular_cut(m: &Matroid, fam: &BTreeSet<Mask>) -> bool {
    let flats = m.all_flats();
    if fam.is_empty() || fam.iter().any(|f| !flats.contains(f)) {
        return false;
    }
    let up = fam.iter().all(|&f| flats.iter().all(|&g| !is_subset(f, g) || fam.contains(&g)));
    let modular = fam.iter().all(|&a| {
        fam.iter().all(|&b| {
            let (meet, join) = (a & b, m.closure(a | b));
            m.rank_of(a) + m.rank_of(b) != m.rank_of(meet) + m.rank_of(join) || fam.contains(&meet)
        })
    });
    up && modular
}

/// Every nonempty modular cut, by brute force over families of flats.
fn oracle_modular_cuts(m: &Matroid) -> Vec<BTreeSet<Mask>> {
    let flats = m.all_flats();
    assert!(flats.len() <= 20);
    (1u32..1 << flats.len())
        .map(|s| (0..flats.len()).filter(|&i| s & (1 << i) != 0).map(|i| flats[i]).collect())
        .filter(|fam| oracle_is_modular_cut(m, fam))
        .collect()
}

#[test]
fn modular_cuts_match_subclasses_on_four_elements() {
    let limits = Limits::default();
    for m in small_matroids().iter().filter(|m| m.n() == 4) {
        let cuts = oracle_modular_cuts(m);
        let subs = enumerate_linear_subclasses(m, &limits).unwrap();
        assert_eq!(cuts.len(), subs.len(), "{:?}", m.bases());
        for cut in &cuts {
            let hs: Vec<Mask> = m.hyperplanes().iter().copied().filter(|h| cut.contains(h)).collect();
            assert!(is_linear_subclass(m, &hs).unwrap());
            let back = modular_cut_of_subclass(m, &LinearSubclass { hyperplanes: hs });
            assert_eq!(back.flats.iter().copied().collect::<BTreeSet<_>>(), *cut);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subclass_quotient_round_trip(i in any::<usize>()) {
        let m = pick(i);
        for h in enumerate_linear_subclasses(m, &Limits::default()).unwrap() {
            if h.is_trivial(m) {
                continue;
            }
            let q = quotient_from_linear_subclass(m, &h).unwrap();
            prop_assert_eq!(q.rank() + 1, m.rank());
            prop_assert!(m.has_quotient(&q));
            let shared: Vec<Mask> = q.hyperplanes().iter().copied().filter(|x| m.hyperplanes().contains(x)).collect();
            let mut want = h.hyperplanes.clone();
            want.sort_unstable();
            let mut got = shared;
            got.sort_unstable();
            prop_assert_eq!(got, want);
            prop_assert_eq!(subclass_of_quotient(m, &q), h);
        }
    }

    #[test]
    fn cuts_and_subclasses_correspond(i in any::<usize>()) {
        let m = pick(i);
        for h in enumerate_linear_subclasses(m, &Limits::default()).unwrap() {
            let cut = modular_cut_of_subclass(m, &h);
            prop_assert!(oracle_is_modular_cut(m, &cut.flats.iter().copied().collect()));
            prop_assert!(is_modular_cut(m, &cut.flats));
            prop_assert_eq!(subclass_of_modular_cut(m, &cut), h);
        }
    }

    #[test]
    fn higgs_steps_are_elementary(i in any::<usize>(), k in 1usize..3) {
        let m = pick(i);
        let mut n = m.clone();
        for _ in 0..k.min(m.rank()) {
            n = n.truncation().unwrap();
        }
        let chain = higgs_factorization(m, &n).unwrap();
        // One step per unit of rank is the fewest possible.
        prop_assert_eq!(chain.len(), m.rank() - n.rank() + 1);
        prop_assert_eq!(chain.first(), Some(m));
        prop_assert_eq!(chain.last(), Some(&n));
        for w in chain.windows(2) {
            prop_assert_eq!(w[1].rank() + 1, w[0].rank());
            prop_assert!(w[0].has_quotient(&w[1]));
        }
    }

    #[test]
    fn higgs_of_an_elementary_chain(i in any::<usize>(), j in any::<usize>()) {
        let m = pick(i);
        let subs = enumerate_linear_subclasses(m, &Limits::default()).unwrap();
        let nontrivial: Vec<_> = subs.iter().filter(|h| !h.is_trivial(m)).collect();
        let q = quotient_from_linear_subclass(m, nontrivial[j % nontrivial.len()]).unwrap();
        prop_assume!(q.rank() >= 1);
        let n = q.truncation().unwrap();
        let chain = higgs_factorization(m, &n).unwrap();
        prop_assert_eq!(chain.len(), 3);
        for w in chain.windows(2) {
            prop_assert!(w[0].has_quotient(&w[1]) && w[1].rank() + 1 == w[0].rank());
        }
    }
}

/// Rank-2 matroids share a rank-1 quotient exactly when they share a proper flat.
fn oracle_perspective(a: &Matroid, b: &Matroid) -> bool {
    a.all_flats().into_iter().any(|f| f != a.ground() && b.is_flat(f))
}

fn rank2_pairs_agree(n: usize, stride: usize) {
    let limits = Limits::default();
    let ms = all_matroids(n, 2, &limits).unwrap();
    let lifts = all_matroids(n, 3, &limits).unwrap();
    let mut k = 0usize;
    for a in &ms {
        for b in &ms {
            k += 1;
            if !k.is_multiple_of(stride) {
                continue;
            }
            let persp = have_common_elementary_quotient(a, b, &limits).unwrap().is_some();
            let coper = lifts.iter().any(|l| l.has_quotient(a) && l.has_quotient(b));
            assert_eq!(persp, oracle_perspective(a, b));
            assert_eq!(coper, persp, "{:?} {:?}", a.bases(), b.bases());
            if coper {
                assert!(are_perspective(a, b, &limits).unwrap());
            }
        }
    }
}

#[test]
fn rank_two_coperspective_iff_perspective() {
    rank2_pairs_agree(4, 1);
    rank2_pairs_agree(5, 7);
}

#[test]
fn coperspective_lift_is_a_common_lift() {
    let limits = Limits::default();
    let (a, b) = (uniform(2, 4), Matroid::from_bases(4, sets(&["13", "14", "23", "24", "34"])).unwrap());
    let l = coperspective_lift(&a, &b, &limits).unwrap().unwrap();
    assert!(l.has_quotient(&a) && l.has_quotient(&b) && l.rank() == 3);
}
