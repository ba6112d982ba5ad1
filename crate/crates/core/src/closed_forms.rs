//! Closed-form values of `reg(S/I^t)` for edge ideals of integrally closed
//! weighted paths and cycles. All predictors use the quotient convention;
//! `reg(I^t) = reg(S/I^t) + 1`.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A power `t` of the edge ideal of the cycle with the given edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePowerQuery {
    pub weights: Vec<u32>,
    pub t: u32,
}

impl CyclePowerQuery {
    pub fn new(weights: Vec<u32>, t: u32) -> Self {
        Self { weights, t }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `omega`, the largest edge weight.
    pub fn omega(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }
}

fn floor_div3(x: i64) -> i64 {
    x.div_euclid(3)
}

/// `reg(S/I(C_w^n)^t)` for an integrally closed weighted cycle.
///
/// Trivial cycles give `floor((n+1)/3)` at `t = 1` and `2(t-1) + floor(n/3)`
/// for `t >= 2`; non-trivial ones `2 omega t + floor(n/3) - 2`.
pub fn predict_reg_cycle_power(q: &CyclePowerQuery) -> Result<i64> {
    if q.t == 0 {
        return Err(Error::ZeroPower);
    }
    let g = WeightedGraph::cycle(&q.weights)?;
    if !g.is_integrally_closed_combinatorial() {
        return Err(Error::NotIntegrallyClosed);
    }
    let n = q.n() as i64;
    let t = q.t as i64;
    let omega = q.omega() as i64;
    if omega == 1 {
        Ok(trivial_cycle_regularity(n, t))
    } else {
        Ok(2 * omega * t + floor_div3(n) - 2)
    }
}

fn trivial_cycle_regularity(n: i64, t: i64) -> i64 {
    if t == 1 {
        floor_div3(n + 1)
    } else {
        2 * (t - 1) + floor_div3(n)
    }
}

/// `reg(S/I(P_w^n)^t)` for an integrally closed weighted path on
/// `weights.len() + 1` vertices.
///
/// For a non-trivial path the formula is anchored at an edge `e_i` of maximal
/// weight `omega` such that every other non-trivial edge is `e_{i+2}`. Both
/// orientations and every such anchor are tried; they must all agree.
pub fn predict_reg_path_power(weights: &[u32], t: u32) -> Result<i64> {
    if t == 0 {
        return Err(Error::ZeroPower);
    }
    let g = WeightedGraph::path(weights)?;
    if !g.is_integrally_closed_combinatorial() {
        return Err(Error::NotIntegrallyClosed);
    }
    let n = weights.len() as i64 + 1;
    let t = t as i64;
    if g.is_trivial() {
        return Ok(floor_div3(n + 1) + 2 * (t - 1));
    }
    let omega = g.max_weight();
    let reversed: Vec<u32> = weights.iter().rev().copied().collect();
    let mut values = Vec::new();
    for w in [weights, reversed.as_slice()] {
        for (pos, &wi) in w.iter().enumerate() {
            if wi != omega || !anchor_qualifies(w, pos) {
                continue;
            }
            let value = path_regularity_at(w, pos) + 2 * (t - 1) * omega as i64;
            values.push(value);
        }
    }
    values.sort_unstable();
    values.dedup();
    match values.as_slice() {
        [] => Err(Error::NoQualifyingIndex(weights.to_vec())),
        [v] => Ok(*v),
        _ => Err(Error::AmbiguousPathIndex {
            weights: weights.to_vec(),
            values,
        }),
    }
}

/// `w_i >= w_{i+2}` when `e_{i+2}` exists, and no other edge but `e_{i+2}` is non-trivial.
fn anchor_qualifies(w: &[u32], pos: usize) -> bool {
    let two_on = w.get(pos + 2).copied();
    if two_on.is_some_and(|x| x > w[pos]) {
        return false;
    }
    w.iter()
        .enumerate()
        .all(|(k, &x)| k == pos || k == pos + 2 || x == 1)
}

/// `reg(S/I(P_w^n))` anchored at the 0-based edge position `pos`.
fn path_regularity_at(w: &[u32], pos: usize) -> i64 {
    let n = w.len() as i64 + 1;
    let omega = w[pos] as i64;
    if n <= 4 {
        return 2 * omega - 1;
    }
    let i = pos as i64 + 1;
    let anchored = 2 * omega + floor_div3(i - 1) + floor_div3(n - (i + 1));
    let best = match w.get(pos + 2) {
        Some(&next) => anchored.max(2 * next as i64 + floor_div3(i - 2) + floor_div3(n - i)),
        None => anchored,
    };
    best - 1
}

/// `reg(I^t) = dt + (d-1)(m-1)` for `I` generated by a regular sequence of `m`
/// forms of degree `d`.
pub fn predict_reg_regular_sequence(d: u32, m: u32, t: u32) -> Result<i64> {
    if t == 0 {
        return Err(Error::ZeroPower);
    }
    if d == 0 || m == 0 {
        return Err(Error::Config(
            "degree and length of a regular sequence must be positive".into(),
        ));
    }
    let (d, m, t) = (d as i64, m as i64, t as i64);
    Ok(d * t + (d - 1) * (m - 1))
}
