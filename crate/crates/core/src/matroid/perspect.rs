//! Perspectivity of matroids and the rank-3 incidence construction.

use super::Matroid;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::subsets::{bit, elements, fmt_set, is_subset, k_subsets, popcount, Mask};

/// Builds a loopless rank-3 matroid in which every set of `s1` is a point
/// and every set of `s2` is a flat (a line, unless it is a single point).
///
/// The inputs must satisfy four conditions, checked here and reported by number:
/// 1. sets in `s1` are pairwise disjoint and sets in `s2` pairwise incomparable;
/// 2. each `A ∈ s1` is either strictly inside or disjoint from each `B ∈ s2`;
/// 3. if `A ⊆ B1 ∩ B2` for distinct `B1, B2 ∈ s2` then `A = B1 ∩ B2`;
/// 4. a nonempty intersection of several sets of `s2` equals each pairwise intersection.
pub fn rank3_from_incidence(s1: &[Mask], s2: &[Mask], n: usize) -> Result<Matroid> {
    let cond = |k: usize, what: String| Err(Error::Precondition(format!("condition ({k}) violated: {what}")));
    let ground = crate::subsets::full(n);
    if s1.iter().chain(s2).any(|&s| s == 0 || !is_subset(s, ground)) {
        return Err(Error::Invalid("sets must be nonempty subsets of the ground set".into()));
    }
    for (i, &a) in s1.iter().enumerate() {
        for &b in &s1[i + 1..] {
            if a & b != 0 {
                return cond(1, format!("{} and {} overlap", fmt_set(a), fmt_set(b)));
            }
        }
    }
    for (i, &a) in s2.iter().enumerate() {
        for &b in &s2[i + 1..] {
            if is_subset(a, b) || is_subset(b, a) {
                return cond(1, format!("{} and {} are comparable", fmt_set(a), fmt_set(b)));
            }
        }
    }
    for &a in s1 {
        for &b in s2 {
            if a & b != 0 && !(is_subset(a, b) && a != b) {
                return cond(2, format!("{} against {}", fmt_set(a), fmt_set(b)));
            }
        }
    }
    for &a in s1 {
        for (i, &b1) in s2.iter().enumerate() {
            for &b2 in &s2[i + 1..] {
                if is_subset(a, b1 & b2) && a != b1 & b2 {
                    return cond(3, format!("{} inside {} ∩ {}", fmt_set(a), fmt_set(b1), fmt_set(b2)));
                }
            }
        }
    }
    // Condition 4 only needs checking on triples: larger families reduce to them.
    for (i, &b1) in s2.iter().enumerate() {
        for (j, &b2) in s2.iter().enumerate().skip(i + 1) {
            for &b3 in &s2[j + 1..] {
                let c = b1 & b2 & b3;
                if c != 0 && (c != b1 & b2 || c != b1 & b3 || c != b2 & b3) {
                    return cond(
                        4,
                        format!("{} ∩ {} ∩ {}", fmt_set(b1), fmt_set(b2), fmt_set(b3)),
                    );
                }
            }
        }
    }

    // Points: classes generated by s1 and pairwise intersections of s2.
    let mut class: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    let mut s3 = Vec::new();
    for (i, &b1) in s2.iter().enumerate() {
        for &b2 in &s2[i + 1..] {
            if b1 & b2 != 0 {
                s3.push(b1 & b2);
            }
        }
    }
    for &s in s1.iter().chain(&s3) {
        let els = elements(s);
        for &e in &els[1..] {
            let (ra, rb) = (find(&mut class, els[0]), find(&mut class, e));
            class[ra] = rb;
        }
    }
    let roots: Vec<usize> = (0..n).map(|e| find(&mut class, e)).collect();
    let class_mask = |e: usize| -> Mask { (0..n).filter(|&f| roots[f] == roots[e]).fold(0, |m, f| m | bit(f)) };
    let reps: Vec<usize> = (0..n).filter(|&e| roots[e] == e).collect();
    let lines: Vec<Mask> = s2
        .iter()
        .copied()
        .filter(|&b| elements(b).iter().map(|&e| roots[e]).collect::<std::collections::BTreeSet<_>>().len() >= 2)
        .collect();
    let mut bases = Vec::new();
    for t in k_subsets(n, 3) {
        let els = elements(t);
        let (a, b, c) = (roots[els[0]], roots[els[1]], roots[els[2]]);
        if a == b || a == c || b == c {
            continue;
        }
        if lines.iter().any(|&l| is_subset(t, l)) {
            continue;
        }
        bases.push(t);
    }
    if bases.is_empty() {
        return Err(Error::Precondition(format!(
            "the {} points do not span a rank-3 matroid",
            reps.len()
        )));
    }
    let m = Matroid::from_bases(n, bases)?;
    for &a in s1 {
        debug_assert_eq!(m.closure(a), class_mask(elements(a)[0]));
    }
    Ok(m)
}

/// All matroids of rank `d` on `n` elements, by brute force over collections of `d`-sets.
pub fn all_matroids(n: usize, d: usize, limits: &Limits) -> Result<Vec<Matroid>> {
    let cands: Vec<Mask> = k_subsets(n, d).collect();
    if cands.len() > 20 || (1usize << cands.len()) > limits.max_states {
        return Err(Error::TooLarge {
            what: format!("rank-{d} matroids on {n} elements"),
            size: cands.len(),
            bound: 20,
        });
    }
    let mut out = Vec::new();
    for sel in 1u64..1 << cands.len() {
        let bs: Vec<Mask> = elements(sel).into_iter().map(|i| cands[i]).collect();
        if let Ok(m) = Matroid::from_bases(n, bs) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Perspective: the two matroids share an elementary quotient.
pub fn are_perspective(m1: &Matroid, m2: &Matroid, limits: &Limits) -> Result<bool> {
    Ok(super::have_common_elementary_quotient(m1, m2, limits)?.is_some())
}

/// Some matroid having both arguments as elementary quotients, by brute force.
pub fn coperspective_lift(m1: &Matroid, m2: &Matroid, limits: &Limits) -> Result<Option<Matroid>> {
    if m1.n() != m2.n() || m1.rank() != m2.rank() {
        return Err(Error::Precondition("matroids need the same ground set and rank".into()));
    }
    for l in all_matroids(m1.n(), m1.rank() + 1, limits)? {
        if l.has_quotient(m1) && l.has_quotient(m2) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Shared proper flats of two rank-2 matroids, i.e. their rank-1 common quotients.
pub fn common_proper_flats(m1: &Matroid, m2: &Matroid) -> Vec<Mask> {
    let g = m1.ground();
    m1.all_flats()
        .into_iter()
        .filter(|&f| f != g && m2.is_flat(f) && popcount(f) < m1.n())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{sets, uniform};
    use super::*;

    #[test]
    fn single_line() {
        let m = rank3_from_incidence(&[], &sets(&["123"]), 4).unwrap();
        assert_eq!(m.rank(), 3);
        assert!(m.is_flat(0b111));
        assert_eq!(m.bases().len(), 3);
    }

    #[test]
    fn both_rank_two_lattices_embed() {
        let s1 = sets(&["1", "2"]);
        let s2 = sets(&["123", "145", "167", "246", "257"]);
        let m = rank3_from_incidence(&s1, &s2, 7).unwrap();
        for f in sets(&["1", "123", "145", "167", "2", "246", "257"]) {
            assert!(m.is_flat(f), "{}", fmt_set(f));
        }
    }

    #[test]
    fn condition_three() {
        let e = rank3_from_incidence(&sets(&["1"]), &sets(&["123", "124"]), 4).unwrap_err();
        assert!(e.to_string().contains("condition (3)"), "{e}");
    }

    #[test]
    fn u24_lifts() {
        let l = coperspective_lift(&uniform(2, 4), &uniform(2, 4), &Limits::default()).unwrap();
        assert!(l.is_some());
    }
}
