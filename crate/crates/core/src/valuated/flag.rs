//! Extending a valuated matroid to a full flag ending at a chosen point.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{is_quotient_valuated, point_in_trop, truncate_by_weights, ValuatedMatroid};
use crate::arith::{Rat, TropVal, TropVal::Fin, TropVal::Inf};
use crate::error::{Error, Result};
use crate::subsets::{bit, elements};

fn translate(mu: &ValuatedMatroid, shift: &[Rat], sign: i64) -> Result<ValuatedMatroid> {
    let values = mu
        .values()
        .iter()
        .map(|(&b, v)| {
            let s: Rat = elements(b).into_iter().map(|e| shift[e].clone()).sum();
            (b, v + s * Rat::from_integer(sign.into()))
        })
        .collect::<BTreeMap<_, _>>();
    ValuatedMatroid::unchecked(mu.n(), mu.rank(), values)
}

/// The rank-1 valuated matroid of a point: `{i} ↦ p(i)`.
pub fn point_matroid(p: &[TropVal]) -> Result<ValuatedMatroid> {
    ValuatedMatroid::from_entries(p.len(), 1, p.iter().enumerate().map(|(i, v)| (bit(i), v.clone())))
}

/// A flag `μ = μ_0, μ_1, ..., μ_{d-1}` of successive elementary quotients,
/// one per rank, ending at the rank-1 valuated matroid `last`.
///
/// Fails if the point of `last` does not lie on the tropical linear space of `μ`.
pub fn complete_flag_to_point(mu: &ValuatedMatroid, last: &ValuatedMatroid) -> Result<Vec<ValuatedMatroid>> {
    let n = mu.n();
    let d = mu.rank();
    if last.rank() != 1 || last.n() != n {
        return Err(Error::Invalid("the flag must end at a rank-1 valuated matroid on the same ground set".into()));
    }
    if d == 0 {
        return Err(Error::Invalid("rank 0 has no points".into()));
    }
    let p: Vec<TropVal> = (0..n).map(|i| last.value(bit(i))).collect();
    let p = &p[..];
    if !point_in_trop(mu, p)? {
        return Err(Error::Precondition("the point is not on the tropical linear space".into()));
    }
    let far: Vec<usize> = (0..n).filter(|&i| p[i].is_inf()).collect();
    let far_mask = far.iter().fold(0, |m, &i| m | bit(i));
    let shift: Vec<Rat> = p.iter().map(|v| v.finite().cloned().unwrap_or_else(Rat::zero)).collect();

    let mut cur = translate(mu, &shift, -1)?;
    let mut flag = vec![mu.clone()];
    let toward: Vec<TropVal> = (0..n).map(|i| if p[i].is_inf() { Fin(Rat::zero()) } else { Inf }).collect();
    let zero = vec![Fin(Rat::zero()); n];
    for i in 0..d - 1 {
        let w = if cur.support().rank_of(far_mask) < d - i - 1 { &zero } else { &toward };
        let next = truncate_by_weights(&cur, w)?;
        let back = translate(&next, &shift, 1)?;
        if !is_quotient_valuated(flag.last().unwrap(), &back)? {
            return Err(Error::Internal(format!("step {} is not a quotient", i + 1)));
        }
        flag.push(back);
        cur = next;
    }
    if flag.last() != Some(last) {
        return Err(Error::Internal("flag does not end at the point".into()));
    }
    Ok(flag)
}
