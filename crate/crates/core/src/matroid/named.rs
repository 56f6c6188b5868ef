//! Constructors for the standard small matroids.

use super::{sets, Matroid};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::field::{self, Field, Gf};
use crate::subsets::{bit, elements, from_elements, k_subsets, Mask};

pub fn uniform(d: usize, n: usize) -> Matroid {
    assert!(d <= n, "uniform matroid U({d},{n}) needs d <= n");
    Matroid::from_bases_unchecked(n, k_subsets(n, d)).expect("uniform matroid")
}

fn all_but(n: usize, d: usize, non_bases: &[Mask]) -> Matroid {
    Matroid::from_bases(n, k_subsets(n, d).filter(|s| !non_bases.contains(s))).expect("named matroid")
}

/// The Vámos matroid: rank 4 on 8 elements whose 4-circuits are the unions of
/// two of the pairs 12, 34, 56, 78 other than 5678.
pub fn vamos() -> Matroid {
    all_but(8, 4, &sets(&["1234", "1256", "1278", "3456", "3478"]))
}

/// The relaxation of Vámos with 4-circuits 1234, 3456, 1256, 3478.
pub fn v8_minus() -> Matroid {
    all_but(8, 4, &sets(&["1234", "3456", "1256", "3478"]))
}

/// Matroid of the columns of a matrix over a field.
pub fn from_vectors<F: Field>(cols: &[Vec<F>]) -> Result<Matroid> {
    let n = cols.len();
    let Some(first) = cols.first() else {
        return Err(Error::Invalid("no vectors".into()));
    };
    let dim = first.len();
    let sub = |s: Mask| -> Vec<Vec<F>> { elements(s).into_iter().map(|i| cols[i].clone()).collect() };
    let d = field::rank(&sub(crate::subsets::full(n)));
    let bases: Vec<Mask> = k_subsets(n, d).filter(|&s| field::rank(&sub(s)) == d).collect();
    if cols.iter().any(|c| c.len() != dim) {
        return Err(Error::Invalid("vectors of different lengths".into()));
    }
    Matroid::from_bases_unchecked(n, bases)
}

/// Points of PG(2, q), as normalized vectors in lexicographic order.
pub fn projective_points(q: u8) -> Result<Vec<Vec<Gf>>> {
    if !matches!(q, 2..=4) {
        return Err(Error::Unsupported(format!("projective plane over GF({q}); only q = 2, 3, 4")));
    }
    let els = Gf::all(q);
    let mut pts = Vec::new();
    for x in &els {
        for y in &els {
            for z in &els {
                let v = vec![*x, *y, *z];
                if field::normalize_projective(&v).as_ref() == Some(&v) {
                    pts.push(v);
                }
            }
        }
    }
    Ok(pts)
}

/// The matroid of the q² + q + 1 points of the projective plane over GF(q).
pub fn projective_plane(q: u8) -> Result<Matroid> {
    from_vectors(&projective_points(q)?)
}

/// Graphic matroid on the given edge list of a graph with `v` vertices.
pub fn graphic(v: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    let cols: Vec<Vec<Rat>> = edges
        .iter()
        .map(|&(a, b)| {
            (0..v)
                .map(|k| Rat::from_integer(((k == a) as i64 - (k == b) as i64).into()))
                .collect()
        })
        .collect();
    from_vectors(&cols)
}

/// Edges of K_n in lexicographic order: 12, 13, .., 1n, 23, ...
pub fn kn_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn graphic_kn(n: usize) -> Matroid {
    graphic(n, &kn_edges(n)).expect("graphic matroid of a complete graph")
}

/// Matroid with a single basis.
pub fn free_on(n: usize, basis: &[usize]) -> Matroid {
    Matroid::from_bases_unchecked(n, [from_elements(basis)]).expect("single basis")
}

/// The rank-1 matroid on `n` elements whose loops are `loops`.
pub fn rank_one(n: usize, loops: Mask) -> Result<Matroid> {
    let bs: Vec<Mask> = (0..n).filter(|&i| loops & bit(i) == 0).map(bit).collect();
    Matroid::from_bases_unchecked(n, bs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano() {
        let f = projective_plane(2).unwrap();
        assert_eq!((f.n(), f.rank()), (7, 3));
        assert_eq!(f.hyperplanes().len(), 7);
        assert!(f.hyperplanes().iter().all(|&h| h.count_ones() == 3));
        assert!(f.is_simple());
        let p3 = projective_plane(3).unwrap();
        assert_eq!((p3.n(), p3.hyperplanes().len()), (13, 13));
        let p4 = projective_plane(4).unwrap();
        assert_eq!(p4.n(), 21);
        assert!(projective_plane(5).is_err());
    }

    #[test]
    fn vamos_shape() {
        let v = vamos();
        assert_eq!(v.rank(), 4);
        assert_eq!(v.bases().len(), 70 - 5);
        assert_eq!(v.closure(0b1111), 0b1111);
        assert_eq!(v.rank_of(0b1111), 3);
        assert_eq!(v.hyperplanes().len(), 41);
    }

    #[test]
    fn k4() {
        let k = graphic_kn(4);
        assert_eq!((k.n(), k.rank(), k.bases().len()), (6, 3, 16));
        assert_eq!(k.all_flats().len(), 15);
    }
}
