//! Matroids given by their bases.

mod lattice;
mod named;
mod perspect;

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subsets::{self, bit, contains, elements, fmt_set, full, is_subset, k_subsets, popcount, Mask};

pub use lattice::*;
pub use named::*;
pub use perspect::*;

/// A matroid on `{0, .., n-1}` of rank `d`. Bases are kept sorted by mask.
pub struct Matroid {
    n: usize,
    d: usize,
    bases: Vec<Mask>,
    basis_set: HashSet<Mask>,
    flats: OnceLock<Vec<Vec<Mask>>>,
    hyperplanes: OnceLock<Vec<Mask>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            n: self.n,
            d: self.d,
            bases: self.bases.clone(),
            basis_set: self.basis_set.clone(),
            flats: self.flats.clone(),
            hyperplanes: self.hyperplanes.clone(),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.bases == o.bases
    }
}
impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, d={}, {} bases)", self.n, self.d, self.bases.len())
    }
}

/// Sorts subsets lexicographically by their element lists.
pub fn lex_key(m: Mask) -> Vec<usize> {
    elements(m)
}

impl Matroid {
    /// Validates the basis exchange axiom exhaustively.
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let m = Self::build(n, bases)?;
        m.check_exchange()?;
        Ok(m)
    }

    /// Skips the exchange check; callers must already know the bases form a matroid.
    pub(crate) fn from_bases_unchecked(n: usize, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        Self::build(n, bases)
    }

    fn build(n: usize, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if n > subsets::MAX_GROUND {
            return Err(Error::Invalid(format!("ground set of size {n} too large")));
        }
        let mut bases: Vec<Mask> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::Invalid("a matroid needs at least one basis".into()));
        };
        let d = popcount(first);
        if let Some(b) = bases.iter().find(|&&b| popcount(b) != d) {
            return Err(Error::Invalid(format!("bases of different sizes: {} and {}", fmt_set(first), fmt_set(*b))));
        }
        if let Some(b) = bases.iter().find(|&&b| !is_subset(b, full(n))) {
            return Err(Error::Invalid(format!("basis {} outside ground set of size {n}", fmt_set(*b))));
        }
        let basis_set = bases.iter().copied().collect();
        Ok(Matroid {
            n,
            d,
            bases,
            basis_set,
            flats: OnceLock::new(),
            hyperplanes: OnceLock::new(),
        })
    }

    fn check_exchange(&self) -> Result<()> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for i in elements(b1 & !b2) {
                    let ok = elements(b2 & !b1).into_iter().any(|j| self.is_basis(b1 & !bit(i) | bit(j)));
                    if !ok {
                        return Err(Error::Exchange {
                            b1: fmt_set(b1),
                            b2: fmt_set(b2),
                            i: i + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn rank(&self) -> usize {
        self.d
    }
    pub fn bases(&self) -> &[Mask] {
        &self.bases
    }
    pub fn is_basis(&self, s: Mask) -> bool {
        self.basis_set.contains(&s)
    }
    pub fn ground(&self) -> Mask {
        full(self.n)
    }

    pub fn rank_of(&self, s: Mask) -> usize {
        let mut best = 0;
        for &b in &self.bases {
            best = best.max(popcount(b & s));
            if best == self.d {
                break;
            }
        }
        best
    }

    pub fn is_independent(&self, s: Mask) -> bool {
        self.bases.iter().any(|&b| is_subset(s, b))
    }

    pub fn closure(&self, s: Mask) -> Mask {
        let r = self.rank_of(s);
        let mut out = s;
        for e in elements(self.ground() & !s) {
            if self.rank_of(s | bit(e)) == r {
                out |= bit(e);
            }
        }
        out
    }

    pub fn is_flat(&self, s: Mask) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Mask {
        self.closure(0)
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        if self.loops() != 0 {
            return false;
        }
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.rank_of(bit(i) | bit(j)) == 2))
    }

    /// Flats grouped by rank, each group sorted lexicographically by element list.
    pub fn flats_by_rank(&self) -> &Vec<Vec<Mask>> {
        self.flats.get_or_init(|| {
            let mut by_rank: Vec<Vec<Mask>> = vec![Vec::new(); self.d + 1];
            let mut seen = HashSet::new();
            let bottom = self.closure(0);
            seen.insert(bottom);
            by_rank[0].push(bottom);
            for r in 0..self.d {
                let mut next = Vec::new();
                for &f in &by_rank[r] {
                    let mut rest = self.ground() & !f;
                    while rest != 0 {
                        let e = rest.trailing_zeros() as usize;
                        let g = self.closure(f | bit(e));
                        rest &= !g;
                        if seen.insert(g) {
                            next.push(g);
                        }
                    }
                }
                by_rank[r + 1] = next;
            }
            for group in &mut by_rank {
                group.sort_by_key(|&f| lex_key(f));
            }
            by_rank
        })
    }

    pub fn flats(&self, k: usize) -> &[Mask] {
        self.flats_by_rank().get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn all_flats(&self) -> Vec<Mask> {
        self.flats_by_rank().iter().flatten().copied().collect()
    }

    /// Corank-1 flats in canonical (lexicographic) order. Indices into this
    /// list are how hyperplanes are named elsewhere in the crate.
    pub fn hyperplanes(&self) -> &[Mask] {
        self.hyperplanes.get_or_init(|| if self.d == 0 { Vec::new() } else { self.flats(self.d - 1).to_vec() })
    }

    pub fn hyperplane_index(&self, h: Mask) -> Option<usize> {
        self.hyperplanes().iter().position(|&x| x == h)
    }

    pub fn colines(&self) -> &[Mask] {
        if self.d < 2 {
            &[]
        } else {
            self.flats(self.d - 2)
        }
    }

    /// For each coline, the indices of the hyperplanes containing it.
    pub fn pencils(&self) -> Vec<(Mask, Vec<usize>)> {
        let hs = self.hyperplanes();
        self.colines()
            .iter()
            .map(|&c| (c, (0..hs.len()).filter(|&i| is_subset(c, hs[i])).collect()))
            .collect()
    }

    /// Triples of hyperplane indices meeting in a coline. Requires `self` simple.
    pub fn concurrent_triples(&self) -> Result<Vec<[usize; 3]>> {
        if self.d < 2 {
            return Ok(Vec::new());
        }
        if !self.is_simple() {
            return Err(Error::Precondition("concurrent triples need a simple matroid".into()));
        }
        Ok(self.concurrent_triples_unchecked())
    }

    pub(crate) fn concurrent_triples_unchecked(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (_, p) in self.pencils() {
            for a in 0..p.len() {
                for b in a + 1..p.len() {
                    for c in b + 1..p.len() {
                        out.push([p[a], p[b], p[c]]);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether `n` is a quotient of `self`: every flat of `n` is a flat of `self`.
    pub fn has_quotient(&self, n: &Matroid) -> bool {
        self.n == n.n && n.d <= self.d && n.all_flats().into_iter().all(|f| self.is_flat(f))
    }

    pub fn is_quotient_of(&self, m: &Matroid) -> bool {
        m.has_quotient(self)
    }

    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        Matroid::from_bases_unchecked(self.n, self.bases.iter().map(|&b| g & !b)).expect("dual of a matroid")
    }

    /// Restriction to `s`, relabelled to `{0, .., |s|-1}` in increasing order.
    pub fn restrict(&self, s: Mask) -> Matroid {
        let r = self.rank_of(s);
        let mut bs: Vec<Mask> = self.bases.iter().map(|&b| b & s).filter(|&b| popcount(b) == r).collect();
        bs.sort_unstable();
        bs.dedup();
        Matroid::from_bases_unchecked(popcount(s), bs.into_iter().map(|b| compress(b, s))).expect("restriction")
    }

    pub fn delete(&self, s: Mask) -> Matroid {
        self.restrict(self.ground() & !s)
    }

    /// Contraction by `s`, relabelled onto the complement of `s`.
    pub fn contract(&self, s: Mask) -> Matroid {
        let r = self.rank_of(s);
        let keep = self.ground() & !s;
        let mut bs: Vec<Mask> = self
            .bases
            .iter()
            .filter(|&&b| popcount(b & s) == r)
            .map(|&b| b & keep)
            .collect();
        bs.sort_unstable();
        bs.dedup();
        Matroid::from_bases_unchecked(popcount(keep), bs.into_iter().map(|b| compress(b, keep))).expect("contraction")
    }

    /// `self ⊕ other`, with `other` shifted to `{n, .., n+m-1}`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > subsets::MAX_GROUND {
            return Err(Error::Invalid("direct sum ground set too large".into()));
        }
        let mut bs = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bs.push(a | b << self.n);
            }
        }
        Matroid::from_bases_unchecked(n, bs)
    }

    /// Truncation to rank `d-1`.
    pub fn truncation(&self) -> Result<Matroid> {
        if self.d == 0 {
            return Err(Error::Precondition("cannot truncate a rank-0 matroid".into()));
        }
        let mut bs: Vec<Mask> = self
            .bases
            .iter()
            .flat_map(|&b| elements(b).into_iter().map(move |i| b & !bit(i)))
            .collect();
        bs.sort_unstable();
        bs.dedup();
        Matroid::from_bases_unchecked(self.n, bs)
    }

    /// Independent sets of size `k`.
    pub fn independent_sets(&self, k: usize) -> Vec<Mask> {
        k_subsets(self.n, k).filter(|&s| self.is_independent(s)).collect()
    }

    /// Circuits, by minimal dependent sets.
    pub fn circuits(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = Vec::new();
        for k in 1..=self.d + 1 {
            for s in k_subsets(self.n, k) {
                if !self.is_independent(s) && out.iter().all(|&c| !is_subset(c, s)) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn element_in(&self, s: Mask, e: usize) -> bool {
        contains(s, e)
    }
}

/// Whether `n` is a quotient of `m`.
pub fn is_quotient(m: &Matroid, n: &Matroid) -> bool {
    m.has_quotient(n)
}

/// Packs the bits of `x` at the positions of `within` into low bits.
pub fn compress(x: Mask, within: Mask) -> Mask {
    let mut out = 0;
    for (k, e) in elements(within).into_iter().enumerate() {
        if contains(x, e) {
            out |= bit(k);
        }
    }
    out
}

/// Inverse of [`compress`].
pub fn expand(x: Mask, within: Mask) -> Mask {
    let mut out = 0;
    for (k, e) in elements(within).into_iter().enumerate() {
        if contains(x, k) {
            out |= bit(e);
        }
    }
    out
}

/// Shorthand used throughout tests: parses a list of compact 1-based sets.
pub fn sets(xs: &[&str]) -> Vec<Mask> {
    xs.iter().map(|s| subsets::parse_digits(s).expect("digit set")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_failure() {
        let e = Matroid::from_bases(4, sets(&["12", "34"])).unwrap_err();
        assert!(matches!(e, Error::Exchange { .. }));
        assert!(Matroid::from_bases(3, sets(&["12", "13", "23"])).is_ok());
    }

    #[test]
    fn u34_flats() {
        let m = uniform(3, 4);
        assert_eq!(m.hyperplanes(), sets(&["12", "13", "14", "23", "24", "34"]).as_slice());
        assert_eq!(m.concurrent_triples().unwrap().len(), 4);
        assert_eq!(m.closure(1), 1);
        assert_eq!(m.rank_of(0b1111), 3);
    }

    #[test]
    fn u2n_triples_are_all_triples() {
        let m = uniform(2, 5);
        assert_eq!(m.concurrent_triples().unwrap().len(), 10);
        assert!(uniform(1, 3).concurrent_triples().unwrap().is_empty());
    }

    #[test]
    fn minors_and_dual() {
        let m = uniform(2, 4);
        assert_eq!(m.dual(), uniform(2, 4));
        assert_eq!(m.contract(1), uniform(1, 3));
        assert_eq!(m.delete(1), uniform(2, 3));
        let t = uniform(3, 4).truncation().unwrap();
        assert_eq!(t, uniform(2, 4));
        assert!(uniform(3, 4).has_quotient(&t));
        assert!(!t.has_quotient(&uniform(3, 4)));
    }
}
