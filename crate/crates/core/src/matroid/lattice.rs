//! Linear subclasses, modular cuts and the lattice of elementary quotients.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::Matroid;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::subsets::{fmt_set, is_subset, k_subsets, popcount, Mask};

/// A set of hyperplanes of a host matroid, listed in the host's canonical
/// hyperplane order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSubclass {
    pub hyperplanes: Vec<Mask>,
}

impl LinearSubclass {
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }
    pub fn contains(&self, h: Mask) -> bool {
        self.hyperplanes.contains(&h)
    }
    /// The trivial subclass is the set of all hyperplanes.
    pub fn is_trivial(&self, m: &Matroid) -> bool {
        self.len() == m.hyperplanes().len()
    }
    pub fn is_subset_of(&self, o: &LinearSubclass) -> bool {
        self.hyperplanes.iter().all(|h| o.contains(*h))
    }
    fn from_bits(m: &Matroid, bits: &FixedBitSet) -> Self {
        let hs = m.hyperplanes();
        LinearSubclass {
            hyperplanes: bits.ones().map(|i| hs[i]).collect(),
        }
    }
    fn to_bits(&self, m: &Matroid) -> Result<FixedBitSet> {
        let mut b = FixedBitSet::with_capacity(m.hyperplanes().len());
        for &h in &self.hyperplanes {
            let i = m
                .hyperplane_index(h)
                .ok_or_else(|| Error::Invalid(format!("{} is not a hyperplane", fmt_set(h))))?;
            b.insert(i);
        }
        Ok(b)
    }
}

/// Closure under the pencil rule: whenever two members share a coline, every
/// hyperplane through that coline joins.
pub(crate) struct SubclassCloser {
    size: usize,
    pencils: Vec<Vec<usize>>,
    by_hyperplane: Vec<Vec<usize>>,
}

impl SubclassCloser {
    pub(crate) fn new(m: &Matroid) -> Self {
        let size = m.hyperplanes().len();
        let pencils: Vec<Vec<usize>> = m.pencils().into_iter().map(|(_, p)| p).filter(|p| p.len() >= 3).collect();
        let mut by_hyperplane = vec![Vec::new(); size];
        for (k, p) in pencils.iter().enumerate() {
            for &h in p {
                by_hyperplane[h].push(k);
            }
        }
        SubclassCloser {
            size,
            pencils,
            by_hyperplane,
        }
    }

    pub(crate) fn empty(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size)
    }

    /// Adds `extra` to the already closed set `base` and closes again.
    pub(crate) fn close_with(&self, base: &FixedBitSet, extra: &[usize]) -> FixedBitSet {
        let mut set = base.clone();
        let mut work: Vec<usize> = Vec::new();
        for &h in extra {
            if !set.put(h) {
                work.push(h);
            }
        }
        // Anything in `base` may now pair with a new member, so the work list
        // only needs the new elements.
        while let Some(h) = work.pop() {
            for &p in &self.by_hyperplane[h] {
                let pencil = &self.pencils[p];
                if pencil.iter().filter(|&&x| set.contains(x)).count() >= 2 {
                    for &x in pencil {
                        if !set.put(x) {
                            work.push(x);
                        }
                    }
                }
            }
        }
        set
    }

    pub(crate) fn close(&self, s: &FixedBitSet) -> FixedBitSet {
        let ones: Vec<usize> = s.ones().collect();
        self.close_with(&self.empty(), &ones)
    }

    pub(crate) fn is_closed(&self, s: &FixedBitSet) -> bool {
        self.pencils.iter().all(|p| {
            let k = p.iter().filter(|&&x| s.contains(x)).count();
            k < 2 || k == p.len()
        })
    }

    /// A pencil with exactly two members of `s` in it, if any.
    pub(crate) fn violated_pencil(&self, s: &FixedBitSet) -> Option<&[usize]> {
        self.pencils
            .iter()
            .find(|p| {
                let k = p.iter().filter(|&&x| s.contains(x)).count();
                k >= 2 && k < p.len()
            })
            .map(|p| p.as_slice())
    }
}

/// Smallest linear subclass containing the given hyperplanes.
pub fn linear_subclass_closure(m: &Matroid, hs: &[Mask]) -> Result<LinearSubclass> {
    let seed = LinearSubclass { hyperplanes: hs.to_vec() }.to_bits(m)?;
    let closer = SubclassCloser::new(m);
    Ok(LinearSubclass::from_bits(m, &closer.close(&seed)))
}

pub fn is_linear_subclass(m: &Matroid, hs: &[Mask]) -> Result<bool> {
    let bits = LinearSubclass { hyperplanes: hs.to_vec() }.to_bits(m)?;
    Ok(SubclassCloser::new(m).is_closed(&bits))
}

/// A concurrent triple witnessing that `hs` is not a linear subclass: two of
/// its hyperplanes lie in `hs`, the third does not.
pub fn linear_subclass_violation(m: &Matroid, hs: &[Mask]) -> Result<Option<[Mask; 3]>> {
    let bits = LinearSubclass { hyperplanes: hs.to_vec() }.to_bits(m)?;
    let closer = SubclassCloser::new(m);
    let Some(p) = closer.violated_pencil(&bits) else {
        return Ok(None);
    };
    let inside: Vec<usize> = p.iter().copied().filter(|&x| bits.contains(x)).collect();
    let outside = p.iter().copied().find(|&x| !bits.contains(x)).expect("pencil not full");
    let all = m.hyperplanes();
    let mut t = [all[inside[0]], all[inside[1]], all[outside]];
    t.sort_by_key(|&h| super::lex_key(h));
    Ok(Some(t))
}

fn check_hyperplane_bound(m: &Matroid, limits: &Limits) -> Result<()> {
    let k = m.hyperplanes().len();
    if k > limits.max_hyperplanes {
        return Err(Error::TooLarge {
            what: "hyperplane set".into(),
            size: k,
            bound: limits.max_hyperplanes,
        });
    }
    Ok(())
}

/// Closed sets reachable from ∅ by adding hyperplanes from `allowed` and closing,
/// skipping any closure that leaves `allowed`.
fn closed_sets_within(closer: &SubclassCloser, allowed: &FixedBitSet, limits: &Limits) -> Result<Vec<FixedBitSet>> {
    let start = closer.empty();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for h in allowed.ones() {
            if s.contains(h) {
                continue;
            }
            let t = closer.close_with(&s, &[h]);
            if !t.is_subset(allowed) || seen.contains(&t) {
                continue;
            }
            if seen.len() >= limits.max_states {
                return Err(Error::TooLarge {
                    what: "linear subclass search".into(),
                    size: seen.len(),
                    bound: limits.max_states,
                });
            }
            seen.insert(t.clone());
            queue.push_back(t);
        }
        order.push(s);
    }
    Ok(order)
}

fn sort_subclasses(v: &mut [LinearSubclass], m: &Matroid) {
    v.sort_by_key(|s| {
        let idx: Vec<usize> = s.hyperplanes.iter().map(|&h| m.hyperplane_index(h).unwrap()).collect();
        (s.len(), idx)
    });
}

/// Every linear subclass, ordered by size then by hyperplane indices.
pub fn enumerate_linear_subclasses(m: &Matroid, limits: &Limits) -> Result<Vec<LinearSubclass>> {
    check_hyperplane_bound(m, limits)?;
    let closer = SubclassCloser::new(m);
    let mut all = closer.empty();
    all.insert_range(..);
    let mut out: Vec<LinearSubclass> = closed_sets_within(&closer, &all, limits)?
        .iter()
        .map(|b| LinearSubclass::from_bits(m, b))
        .collect();
    sort_subclasses(&mut out, m);
    Ok(out)
}

/// An order filter of flats, sorted by rank then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCut {
    pub flats: Vec<Mask>,
}

impl ModularCut {
    pub fn contains(&self, f: Mask) -> bool {
        self.flats.contains(&f)
    }
}

fn sorted_flats(m: &Matroid, mut fs: Vec<Mask>) -> Vec<Mask> {
    fs.sort_by_key(|&f| (m.rank_of(f), super::lex_key(f)));
    fs
}

/// Flats all of whose hyperplanes lie in `h`.
pub fn modular_cut_of_subclass(m: &Matroid, h: &LinearSubclass) -> ModularCut {
    let hs = m.hyperplanes();
    let fs = m
        .all_flats()
        .into_iter()
        .filter(|&f| hs.iter().all(|&x| !is_subset(f, x) || h.contains(x)))
        .collect();
    ModularCut {
        flats: sorted_flats(m, fs),
    }
}

/// Hyperplanes in a modular cut.
pub fn subclass_of_modular_cut(m: &Matroid, cut: &ModularCut) -> LinearSubclass {
    LinearSubclass {
        hyperplanes: m.hyperplanes().iter().copied().filter(|&h| cut.contains(h)).collect(),
    }
}

/// Upward closure of some flats within the lattice of flats.
pub fn upward_closure(m: &Matroid, gens: &[Mask]) -> Result<ModularCut> {
    if let Some(&g) = gens.iter().find(|&&g| !m.is_flat(g)) {
        return Err(Error::Invalid(format!("{} is not a flat", fmt_set(g))));
    }
    let fs = m
        .all_flats()
        .into_iter()
        .filter(|&f| gens.iter().any(|&g| is_subset(g, f)))
        .collect();
    Ok(ModularCut {
        flats: sorted_flats(m, fs),
    })
}

/// Nonempty, upward closed, and closed under meets of modular pairs.
pub fn is_modular_cut(m: &Matroid, flats: &[Mask]) -> bool {
    if flats.is_empty() || flats.iter().any(|&f| !m.is_flat(f)) {
        return false;
    }
    let set: HashSet<Mask> = flats.iter().copied().collect();
    let all = m.all_flats();
    for &f in flats {
        if all.iter().any(|&g| is_subset(f, g) && !set.contains(&g)) {
            return false;
        }
    }
    for &a in flats {
        for &b in flats {
            let meet = a & b;
            let join = m.closure(a | b);
            if m.rank_of(a) + m.rank_of(b) == m.rank_of(meet) + m.rank_of(join) && !set.contains(&meet) {
                return false;
            }
        }
    }
    true
}

/// Flats outside the cut covered by a member of the cut.
pub fn collar(m: &Matroid, cut: &ModularCut) -> Vec<Mask> {
    let fs = m
        .all_flats()
        .into_iter()
        .filter(|&f| {
            !cut.contains(f)
                && cut
                    .flats
                    .iter()
                    .any(|&g| is_subset(f, g) && g != f && m.rank_of(g) == m.rank_of(f) + 1)
        })
        .collect();
    sorted_flats(m, fs)
}

/// The elementary quotient `r_Q(S) = r(S) - [cl(S) ∈ cut]`.
pub fn quotient_from_modular_cut(m: &Matroid, cut: &ModularCut) -> Result<Matroid> {
    if m.rank() == 0 {
        return Err(Error::Precondition("no elementary quotient of a rank-0 matroid".into()));
    }
    let bs: Vec<Mask> = m
        .independent_sets(m.rank() - 1)
        .into_iter()
        .filter(|&s| !cut.contains(m.closure(s)))
        .collect();
    if bs.is_empty() {
        return Err(Error::Precondition("no elementary quotient".into()));
    }
    Matroid::from_bases_unchecked(m.n(), bs)
}

pub fn quotient_from_linear_subclass(m: &Matroid, h: &LinearSubclass) -> Result<Matroid> {
    if m.rank() == 0 || h.is_trivial(m) {
        return Err(Error::Precondition("no elementary quotient".into()));
    }
    quotient_from_modular_cut(m, &modular_cut_of_subclass(m, h))
}

/// `𝓛¹(Q) ∩ 𝓛¹(M)`; the trivial subclass when `q == m`.
pub fn subclass_of_quotient(m: &Matroid, q: &Matroid) -> LinearSubclass {
    LinearSubclass {
        hyperplanes: m.hyperplanes().iter().copied().filter(|&h| q.is_flat(h)).collect(),
    }
}

/// The lattice of elementary quotients of `M`, with `M` itself as the bottom.
/// Element `i` is identified with `subclasses[i]`; `x ≤ y` iff the subclass
/// of `x` contains that of `y`.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    pub subclasses: Vec<LinearSubclass>,
    pub le: Vec<Vec<bool>>,
    /// Pairs `(x, y)` with `y` covering `x`.
    pub covers: Vec<(usize, usize)>,
    pub join_irreducibles: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

impl QuotientLattice {
    pub fn len(&self) -> usize {
        self.subclasses.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subclasses.is_empty()
    }
    /// Join in the quotient order, i.e. intersection of subclasses.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let (x, y) = (&self.subclasses[a], &self.subclasses[b]);
        let meet = LinearSubclass {
            hyperplanes: x.hyperplanes.iter().copied().filter(|h| y.contains(*h)).collect(),
        };
        self.index_of(&meet).expect("intersection of linear subclasses is a linear subclass")
    }
    pub fn index_of(&self, s: &LinearSubclass) -> Option<usize> {
        self.subclasses.iter().position(|x| x == s)
    }
    pub fn join_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.join(a, b)).collect()).collect()
    }
    /// Lengths of the shortest and longest maximal chains.
    pub fn chain_lengths(&self) -> (usize, usize) {
        let up = upper_covers(self.len(), &self.covers);
        let mut memo: HashMap<usize, (usize, usize)> = HashMap::new();
        chain_extremes(self.bottom, self.top, &up, &mut memo)
    }
}

fn upper_covers(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut up = vec![Vec::new(); n];
    for &(a, b) in covers {
        up[a].push(b);
    }
    up
}

fn chain_extremes(x: usize, top: usize, up: &[Vec<usize>], memo: &mut HashMap<usize, (usize, usize)>) -> (usize, usize) {
    if x == top {
        return (0, 0);
    }
    if let Some(&v) = memo.get(&x) {
        return v;
    }
    let mut best = (usize::MAX, 0);
    for &y in &up[x] {
        let (lo, hi) = chain_extremes(y, top, up, memo);
        best = (best.0.min(lo + 1), best.1.max(hi + 1));
    }
    memo.insert(x, best);
    best
}

/// Cover relation of a finite partial order given by `le`.
pub fn covers_of(le: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = le.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && le[a][b] && !(0..n).any(|c| c != a && c != b && le[a][c] && le[c][b]) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn quotient_lattice(m: &Matroid, limits: &Limits) -> Result<QuotientLattice> {
    let subclasses = enumerate_linear_subclasses(m, limits)?;
    let n = subclasses.len();
    let le: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| subclasses[b].is_subset_of(&subclasses[a])).collect())
        .collect();
    let covers = covers_of(&le);
    let top = 0; // the empty subclass, i.e. the truncation
    let bottom = n - 1; // the trivial subclass, i.e. M
    debug_assert!(subclasses[top].is_empty() && subclasses[bottom].is_trivial(m));
    let join_irreducibles = (0..n)
        .filter(|&x| x != bottom && covers.iter().filter(|&&(_, b)| b == x).count() == 1)
        .collect();
    Ok(QuotientLattice {
        subclasses,
        le,
        covers,
        join_irreducibles,
        bottom,
        top,
    })
}

/// Every elementary quotient, in the order of [`enumerate_linear_subclasses`]
/// with the trivial subclass left out.
pub fn elementary_quotients(m: &Matroid, limits: &Limits) -> Result<Vec<Matroid>> {
    enumerate_linear_subclasses(m, limits)?
        .iter()
        .filter(|h| !h.is_trivial(m))
        .map(|h| quotient_from_linear_subclass(m, h))
        .collect()
}

/// Order relation on the flats of `m`, flats listed as in [`Matroid::all_flats`].
pub fn flat_lattice_order(m: &Matroid) -> (Vec<Mask>, Vec<Vec<bool>>) {
    let fs = m.all_flats();
    let le = fs.iter().map(|&a| fs.iter().map(|&b| is_subset(a, b)).collect()).collect();
    (fs, le)
}

/// Order dual of a relation matrix.
pub fn dual_order(le: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = le.len();
    (0..n).map(|a| (0..n).map(|b| le[b][a]).collect()).collect()
}

/// An order isomorphism `f` with `a ≤ b` iff `f(a) ≤ f(b)`, by backtracking.
pub fn find_poset_isomorphism(a: &[Vec<bool>], b: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let profile = |le: &[Vec<bool>], x: usize| {
        let down = (0..n).filter(|&y| le[y][x]).count();
        let up = (0..n).filter(|&y| le[x][y]).count();
        (down, up)
    };
    let pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // Most constrained first: order by downset size.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| pa[x]);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        a: &[Vec<bool>],
        b: &[Vec<bool>],
        pa: &[(usize, usize)],
        pb: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..b.len() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let ok = order[..k].iter().all(|&z| a[x][z] == b[y][map[z]] && a[z][x] == b[map[z]][y]);
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(k + 1, order, a, b, pa, pb, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
    go(0, &order, a, b, &pa, &pb, &mut map, &mut used).then_some(map)
}

/// Some common elementary quotient of two matroids of the same rank on the same ground set.
pub fn have_common_elementary_quotient(m1: &Matroid, m2: &Matroid, limits: &Limits) -> Result<Option<Matroid>> {
    if m1.n() != m2.n() || m1.rank() != m2.rank() {
        return Err(Error::Precondition("matroids need the same ground set and rank".into()));
    }
    if m1.rank() == 0 {
        return Ok(None);
    }
    // A common quotient's subclass in M1 consists of hyperplanes of M1 that are
    // also flats of M2, so the search can stay inside those.
    let closer = SubclassCloser::new(m1);
    let mut allowed = closer.empty();
    for (i, &h) in m1.hyperplanes().iter().enumerate() {
        if m2.is_flat(h) {
            allowed.insert(i);
        }
    }
    for bits in closed_sets_within(&closer, &allowed, limits)? {
        let h = LinearSubclass::from_bits(m1, &bits);
        if h.is_trivial(m1) {
            continue;
        }
        let q = quotient_from_linear_subclass(m1, &h)?;
        if m2.has_quotient(&q) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Outcome of the Levi intersection check; `witness` is set when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviResult {
    pub holds: bool,
    pub witness: Option<Vec<Mask>>,
}

/// Whether any `d-1` hyperplanes lie in a nontrivial linear subclass. Larger
/// hyperplanes are tried first, since they are the likeliest to generate everything.
pub fn levi_intersection_property(m: &Matroid, limits: &Limits) -> Result<LeviResult> {
    let d = m.rank();
    if d < 2 {
        return Ok(LeviResult {
            holds: true,
            witness: None,
        });
    }
    let hs = m.hyperplanes();
    let mut order: Vec<usize> = (0..hs.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(popcount(hs[i])), i));
    let closer = SubclassCloser::new(m);
    let k = d - 1;
    if k > hs.len() {
        return Ok(LeviResult {
            holds: true,
            witness: None,
        });
    }
    let mut visited = 0usize;
    for combo in k_subsets(order.len(), k) {
        visited += 1;
        if visited > limits.max_states {
            return Err(Error::TooLarge {
                what: "hyperplane tuples".into(),
                size: visited,
                bound: limits.max_states,
            });
        }
        let picks: Vec<usize> = crate::subsets::elements(combo).into_iter().map(|p| order[p]).collect();
        let closed = closer.close_with(&closer.empty(), &picks);
        if closed.count_ones(..) == hs.len() {
            let mut w: Vec<Mask> = picks.iter().map(|&i| hs[i]).collect();
            w.sort_by_key(|&h| super::lex_key(h));
            return Ok(LeviResult {
                holds: false,
                witness: Some(w),
            });
        }
    }
    Ok(LeviResult {
        holds: true,
        witness: None,
    })
}

/// The elementary quotient of `M ⊕ N` matching the pair `(Q1, Q2)`; either
/// entry may be the matroid itself.
pub fn kappa(m: &Matroid, n: &Matroid, q1: &Matroid, q2: &Matroid) -> Result<Matroid> {
    let ok1 = q1 == m || (q1.rank() + 1 == m.rank() && m.has_quotient(q1));
    let ok2 = q2 == n || (q2.rank() + 1 == n.rank() && n.has_quotient(q2));
    if !ok1 || !ok2 {
        return Err(Error::Precondition("kappa needs elementary quotients or the matroids themselves".into()));
    }
    let sum = m.direct_sum(n)?;
    let h = subclass_of_quotient(m, q1);
    let g = subclass_of_quotient(n, q2);
    let e = m.ground();
    let e2 = n.ground() << m.n();
    let mut hs: Vec<Mask> = h.hyperplanes.iter().map(|&x| x | e2).collect();
    hs.extend(g.hyperplanes.iter().map(|&x| e | x << m.n()));
    let sub = linear_subclass_closure(&sum, &hs)?;
    debug_assert_eq!(sub.len(), hs.len());
    if sub.is_trivial(&sum) {
        return Ok(sum);
    }
    quotient_from_linear_subclass(&sum, &sub)
}

/// Splits a quotient of `M ⊕ N` with `|E(M)| = n1` into `(Q / E', Q / E)`.
pub fn kappa_inverse(n1: usize, q: &Matroid) -> (Matroid, Matroid) {
    let e = crate::subsets::full(n1);
    let e2 = q.ground() & !e;
    (q.contract(e2), q.contract(e))
}

/// The Higgs factorization `M = M_k ↠ … ↠ M_0 = N` with
/// `r_i(S) = min(r_M(S), r_N(S) + i)`, listed from `M` down to `N`.
pub fn higgs_factorization(m: &Matroid, n: &Matroid) -> Result<Vec<Matroid>> {
    if !m.has_quotient(n) {
        return Err(Error::Precondition("second matroid is not a quotient of the first".into()));
    }
    let k = m.rank() - n.rank();
    let mut out = Vec::with_capacity(k + 1);
    for i in (0..=k).rev() {
        let d = n.rank() + i;
        let bs: Vec<Mask> = k_subsets(m.n(), d)
            .filter(|&s| m.rank_of(s).min(n.rank_of(s) + i) == d)
            .collect();
        out.push(Matroid::from_bases_unchecked(m.n(), bs)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{sets, uniform};
    use super::*;

    fn brute_subclasses(m: &Matroid) -> usize {
        let hs = m.hyperplanes();
        let triples = m.concurrent_triples_unchecked();
        (0u64..1 << hs.len())
            .filter(|&s| {
                triples.iter().all(|t| {
                    let k = t.iter().filter(|&&i| s >> i & 1 == 1).count();
                    k != 2
                })
            })
            .count()
    }

    #[test]
    fn u34_subclasses() {
        let m = uniform(3, 4);
        let all = enumerate_linear_subclasses(&m, &Limits::default()).unwrap();
        assert_eq!(all.len(), 15);
        assert_eq!(brute_subclasses(&m), 15);
        let u23 = uniform(2, 3);
        assert_eq!(enumerate_linear_subclasses(&u23, &Limits::default()).unwrap().len(), brute_subclasses(&u23));
    }

    #[test]
    fn table_one() {
        let m = uniform(3, 4);
        let cases = [
            (vec![], sets(&["1234"])),
            (sets(&["12", "34"]), sets(&["12", "34", "1234"])),
            (sets(&["12", "13", "14"]), sets(&["1", "12", "13", "14", "123", "124", "134", "1234"])),
        ];
        for (h, cut) in cases {
            let sub = LinearSubclass { hyperplanes: h };
            let mc = modular_cut_of_subclass(&m, &sub);
            let mut expect = cut.clone();
            expect.retain(|f| m.is_flat(*f));
            assert_eq!(mc.flats.len(), expect.len());
            assert!(expect.iter().all(|f| mc.contains(*f)));
            assert!(is_modular_cut(&m, &mc.flats));
            let q = quotient_from_linear_subclass(&m, &sub).unwrap();
            assert_eq!(q.rank(), 2);
            assert!(m.has_quotient(&q));
            assert_eq!(subclass_of_quotient(&m, &q), sub);
            let mut qf = q.all_flats();
            qf.sort_unstable();
            let col = collar(&m, &mc);
            let mut kept: Vec<Mask> = m.all_flats().into_iter().filter(|f| !col.contains(f)).collect();
            kept.sort_unstable();
            assert_eq!(qf, kept);
        }
        assert_eq!(
            quotient_from_linear_subclass(&m, &LinearSubclass { hyperplanes: vec![] }).unwrap(),
            uniform(2, 4)
        );
    }

    #[test]
    fn trivial_subclass_has_no_quotient() {
        let m = uniform(3, 4);
        let all = LinearSubclass {
            hyperplanes: m.hyperplanes().to_vec(),
        };
        assert!(quotient_from_linear_subclass(&m, &all).is_err());
        let c = linear_subclass_closure(&m, &sets(&["12", "13"])).unwrap();
        assert_eq!(c.hyperplanes, sets(&["12", "13", "14"]));
    }

    #[test]
    fn u36_chains_differ() {
        let l = quotient_lattice(&uniform(3, 6), &Limits::default()).unwrap();
        let (lo, hi) = l.chain_lengths();
        assert!(lo < hi, "{lo} {hi}");
    }

    #[test]
    fn higgs_of_u35_to_u15() {
        let f = higgs_factorization(&uniform(3, 5), &uniform(1, 5)).unwrap();
        assert_eq!(f, vec![uniform(3, 5), uniform(2, 5), uniform(1, 5)]);
    }
}
