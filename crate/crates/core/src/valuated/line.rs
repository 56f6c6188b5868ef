//! Tropical lines as metric trees, and intersecting two of them.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{point_in_trop, ValuatedMatroid};
use crate::arith::{int, Rat, TropVal, TropVal::Fin, TropVal::Inf};
use crate::error::{Error, Result};
use crate::subsets::{bit, contains, elements, full, k_subsets, popcount, Mask};

/// A tropical line in the chart of its support `E`: finite vertices joined by
/// bounded edges, plus rays in the directions `e_C` of its parallel classes `C`.
/// Coordinates outside `E` are ∞ throughout.
#[derive(Clone, Debug)]
pub struct LineTree {
    pub n: usize,
    pub support: Mask,
    pub vertices: Vec<Vec<TropVal>>,
    pub edges: Vec<(usize, usize)>,
    /// `(vertex, class)`: a ray from the vertex in direction `e_class`.
    pub rays: Vec<(usize, Mask)>,
}

/// Builds the tree of a rank-2 valuated matroid, which must be loopless
/// outside its set of loops, treated as ∞ coordinates.
pub fn line_tree(theta: &ValuatedMatroid) -> Result<LineTree> {
    if theta.rank() != 2 {
        return Err(Error::Invalid(format!("line_tree needs rank 2, got {}", theta.rank())));
    }
    let n = theta.n();
    let loops = theta.support().loops();
    let support = full(n) & !loops;
    // Parallel classes: pairs with θ(ij) = ∞.
    let mut classes: Vec<Mask> = Vec::new();
    for e in elements(support) {
        match classes.iter_mut().find(|c| theta.value(bit(c.trailing_zeros() as usize) | bit(e)).is_inf()) {
            Some(c) => *c |= bit(e),
            None => classes.push(bit(e)),
        }
    }
    let reps: Vec<usize> = classes.iter().map(|c| c.trailing_zeros() as usize).collect();
    let k = classes.len();
    debug_assert!(k >= 2);
    let fv = |a: usize, b: usize| -> Rat { theta.value(bit(a) | bit(b)).unwrap_fin().clone() };
    // Offset of each element from its class representative.
    let mut offset = vec![Rat::zero(); n];
    for (ci, &c) in classes.iter().enumerate() {
        let other = reps[if ci == 0 { 1 } else { 0 }];
        for e in elements(c) {
            offset[e] = fv(e, other) - fv(reps[ci], other);
        }
    }
    let lift = |x: &[Rat]| -> Vec<TropVal> {
        (0..n)
            .map(|e| {
                if contains(loops, e) {
                    Inf
                } else {
                    let ci = classes.iter().position(|&c| contains(c, e)).unwrap();
                    Fin(&x[ci] + &offset[e])
                }
            })
            .collect()
    };
    if k == 2 {
        let v = lift(&[Rat::zero(), Rat::zero()]);
        return Ok(LineTree {
            n,
            support,
            vertices: vec![v],
            edges: vec![],
            rays: vec![(0, classes[0]), (0, classes[1])],
        });
    }
    let maxabs = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .map(|(a, b)| fv(reps[a], reps[b]).abs())
        .max()
        .unwrap_or_else(Rat::zero);
    let r = &maxabs * int(2) + Rat::one();
    let dist = |a: usize, b: usize| -> Rat { &r * int(2) - fv(reps[a], reps[b]) };
    let tree = MetricTree::build(k, &dist);
    // Internal nodes become vertices; a leaf edge becomes a ray.
    let internal: Vec<usize> = (k..tree.adj.len()).collect();
    let index: BTreeMap<usize, usize> = internal.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut vertices = Vec::new();
    for &v in &internal {
        let dv = tree.distances_from(v);
        let x: Vec<Rat> = (0..k).map(|a| &r - &dv[a]).collect();
        vertices.push(lift(&x));
    }
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (u, nbrs) in tree.adj.iter().enumerate() {
        for (w, _) in nbrs {
            if u < *w && u >= k && *w >= k {
                edges.push((index[&u], index[w]));
            } else if u < k {
                rays.push((index[w], classes[u]));
            }
        }
    }
    Ok(LineTree {
        n,
        support,
        vertices,
        edges,
        rays,
    })
}

/// Weighted tree with leaves `0..k` and internal nodes after them.
struct MetricTree {
    adj: Vec<Vec<(usize, Rat)>>,
}

impl MetricTree {
    /// Exact leaf insertion for a tree metric given on the leaves.
    fn build(k: usize, dist: &dyn Fn(usize, usize) -> Rat) -> Self {
        let mut t = MetricTree {
            adj: vec![Vec::new(); k],
        };
        t.connect(0, 1, dist(0, 1));
        for c in 2..k {
            // Where the path to c leaves the path from 0 to j, measured from 0.
            let (jstar, a) = (1..c)
                .map(|j| (j, (dist(0, c) + dist(0, j) - dist(j, c)) / int(2)))
                .max_by(|x, y| x.1.cmp(&y.1))
                .unwrap();
            let path = t.path(0, jstar);
            let mut walked = Rat::zero();
            let mut attach = None;
            for w in path.windows(2) {
                let (u, v) = (w[0], w[1]);
                if walked == a {
                    attach = Some(u);
                    break;
                }
                let len = t.len(u, v);
                if &walked + &len > a {
                    let mid = t.adj.len();
                    t.adj.push(Vec::new());
                    t.disconnect(u, v);
                    t.connect(u, mid, &a - &walked);
                    t.connect(mid, v, &walked + &len - &a);
                    attach = Some(mid);
                    break;
                }
                walked += len;
            }
            let at = attach.expect("attachment point lies strictly inside the path");
            t.connect(c, at, dist(0, c) - &a);
        }
        t
    }

    fn connect(&mut self, u: usize, v: usize, len: Rat) {
        self.adj[u].push((v, len.clone()));
        self.adj[v].push((u, len));
    }

    fn disconnect(&mut self, u: usize, v: usize) {
        self.adj[u].retain(|(x, _)| *x != v);
        self.adj[v].retain(|(x, _)| *x != u);
    }

    fn len(&self, u: usize, v: usize) -> Rat {
        self.adj[u].iter().find(|(x, _)| *x == v).unwrap().1.clone()
    }

    fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut stack = vec![from];
        parent[from] = from;
        while let Some(u) = stack.pop() {
            for (v, _) in &self.adj[u] {
                if parent[*v] == usize::MAX {
                    parent[*v] = u;
                    stack.push(*v);
                }
            }
        }
        let mut p = vec![to];
        while *p.last().unwrap() != from {
            p.push(parent[*p.last().unwrap()]);
        }
        p.reverse();
        p
    }

    fn distances_from(&self, s: usize) -> Vec<Rat> {
        let mut d: Vec<Option<Rat>> = vec![None; self.adj.len()];
        d[s] = Some(Rat::zero());
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let du = d[u].clone().unwrap();
            for (v, l) in &self.adj[u] {
                if d[*v].is_none() {
                    d[*v] = Some(&du + l);
                    stack.push(*v);
                }
            }
        }
        d.into_iter().map(|x| x.unwrap()).collect()
    }
}

/// A cell of a line: a bounded edge `p + s(q - p)`, `s ∈ [0, 1]`, or a ray
/// `p + s e_C`, `s ≥ 0`.
struct Cell {
    base: Vec<Rat>,
    dir: Vec<Rat>,
    bounded: bool,
}

fn cells(t: &LineTree) -> Vec<Cell> {
    let fin = |v: &[TropVal]| -> Vec<Rat> {
        elements(t.support).into_iter().map(|e| v[e].unwrap_fin().clone()).collect()
    };
    let mut out = Vec::new();
    for &(a, b) in &t.edges {
        let (p, q) = (fin(&t.vertices[a]), fin(&t.vertices[b]));
        let dir = q.iter().zip(&p).map(|(x, y)| x - y).collect();
        out.push(Cell {
            base: p,
            dir,
            bounded: true,
        });
    }
    for &(v, class) in &t.rays {
        let dir = elements(t.support)
            .into_iter()
            .map(|e| if contains(class, e) { Rat::one() } else { Rat::zero() })
            .collect();
        out.push(Cell {
            base: fin(&t.vertices[v]),
            dir,
            bounded: false,
        });
    }
    out
}

/// Unique solution of `p + s u = q + t v + c·1`, if there is exactly one.
fn meet_cells(a: &Cell, b: &Cell) -> Option<Vec<Rat>> {
    let m = a.base.len();
    // Unknowns (s, t, c): s u_i - t v_i - c = q_i - p_i.
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| vec![a.dir[i].clone(), -b.dir[i].clone(), -Rat::one(), &b.base[i] - &a.base[i]])
        .collect();
    let pivots = crate::field::rref(&mut rows);
    if pivots.contains(&3) || pivots.len() != 3 {
        return None;
    }
    let s = rows[0][3].clone();
    let t = rows[1][3].clone();
    let in_range = |x: &Rat, bounded: bool| !x.is_negative() && (!bounded || *x <= Rat::one());
    if !in_range(&s, a.bounded) || !in_range(&t, b.bounded) {
        return None;
    }
    Some(a.base.iter().zip(&a.dir).map(|(p, u)| p + &s * u).collect())
}

/// Candidate common points of two lines living on the same support.
fn candidates(t1: &LineTree, t2: &LineTree) -> Vec<Vec<TropVal>> {
    let mut out: Vec<Vec<TropVal>> = t1.vertices.iter().chain(&t2.vertices).cloned().collect();
    let (c1, c2) = (cells(t1), cells(t2));
    for a in &c1 {
        for b in &c2 {
            if let Some(p) = meet_cells(a, b) {
                let mut full_pt = vec![Inf; t1.n];
                for (e, x) in elements(t1.support).into_iter().zip(p) {
                    full_pt[e] = Fin(x);
                }
                out.push(full_pt);
            }
        }
    }
    out
}

/// What a rank-2 valuated matroid looks like on the stratum where exactly the
/// coordinates in `e` are finite.
enum Stratum {
    Empty,
    Point(Vec<TropVal>),
    Line(LineTree),
}

fn stratum(theta: &ValuatedMatroid, e: Mask) -> Result<Stratum> {
    let n = theta.n();
    let c = theta.contract_keep(full(n) & !e);
    if c.support().loops() & e != 0 {
        return Ok(Stratum::Empty);
    }
    match c.rank() {
        0 => Ok(Stratum::Empty),
        1 => Ok(Stratum::Point((0..n).map(|i| c.value(bit(i))).collect())),
        _ => Ok(Stratum::Line(line_tree(&c)?)),
    }
}

/// Some point on both tropical lines, or `None` if they are disjoint.
///
/// Strata are tried from the largest support down, so a finite common point
/// is preferred whenever one exists. Every returned point has been checked
/// with [`point_in_trop`] against both inputs.
pub fn lines_intersect(t1: &ValuatedMatroid, t2: &ValuatedMatroid) -> Result<Option<Vec<TropVal>>> {
    if t1.rank() != 2 || t2.rank() != 2 || t1.n() != t2.n() {
        return Err(Error::Invalid("lines_intersect needs two rank-2 valuated matroids on one ground set".into()));
    }
    let n = t1.n();
    let allowed = full(n) & !t1.support().loops() & !t2.support().loops();
    for size in (1..=popcount(allowed)).rev() {
        for sub in k_subsets(popcount(allowed), size) {
            let e = crate::matroid::expand(sub, allowed);
            let (s1, s2) = (stratum(t1, e)?, stratum(t2, e)?);
            let cands = match (&s1, &s2) {
                (Stratum::Empty, _) | (_, Stratum::Empty) => continue,
                (Stratum::Point(p), _) | (_, Stratum::Point(p)) => vec![p.clone()],
                (Stratum::Line(a), Stratum::Line(b)) => candidates(a, b),
            };
            for p in cands {
                if point_in_trop(t1, &p)? && point_in_trop(t2, &p)? {
                    return Ok(Some(p));
                }
            }
        }
    }
    Ok(None)
}
