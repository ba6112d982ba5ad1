//! Generators of `I(C_w^n)^t` for a cycle whose only non-trivial edge is `e_1`.
//!
//! With `L_k = (x_k x_{k+1})^{w_k}` (indices mod n), every minimal generator of
//! `I^t` factors uniquely as `L_1^{a_1} ... L_n^{a_n}` with `sum a_k = t`. The
//! generators are ordered by the lexicographic order of these exponent tuples,
//! which drives the colon computations below. Edge indices are cyclic
//! throughout: `L_{n+m} = L_m` and `x_{n+m} = x_m`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::monomial::{Monomial, MonomialIdeal};

/// Exponents `(a_1, ..., a_n)` of a generator over the cycle edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeFactorization {
    pub exponents: Vec<u32>,
    pub t: u32,
}

impl EdgeFactorization {
    /// 1-based indices of the edges that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedGenerator {
    pub monomial: Monomial,
    pub factorization: EdgeFactorization,
}

/// `G(I^t)` sorted strictly decreasing in the factorization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedGenerators {
    pub t: u32,
    pub entries: Vec<OrderedGenerator>,
    /// Number of leading entries edge-divisible by `L_1`.
    pub c: usize,
}

impl OrderedGenerators {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `L_i^{(t)}`, 1-based.
    pub fn get(&self, i: usize) -> Option<&OrderedGenerator> {
        i.checked_sub(1).and_then(|k| self.entries.get(k))
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| &e.monomial == m)
            .map(|k| k + 1)
    }
}

/// A weighted cycle with exactly one non-trivial edge, rotated so that it is `e_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneEdgeCycle {
    weights: Vec<u32>,
    rotation: usize,
    edges: Vec<Monomial>,
    ideal: MonomialIdeal,
}

impl OneEdgeCycle {
    /// Requires `n >= 4` and exactly one weight `>= 2`. Vertex `x_{r+1}` of the
    /// input becomes `x_1`, where `e_{r+1}` is the non-trivial edge.
    pub fn new(weights: &[u32]) -> Result<Self> {
        let n = weights.len();
        let heavy: Vec<usize> = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w >= 2)
            .map(|(k, _)| k)
            .collect();
        if n < 4 || heavy.len() != 1 || weights.contains(&0) {
            return Err(Error::NotOneEdgeWeighted(weights.to_vec()));
        }
        let rotation = heavy[0];
        let rotated: Vec<u32> = (0..n).map(|k| weights[(k + rotation) % n]).collect();
        let graph = WeightedGraph::cycle(&rotated)?;
        let ideal = graph.edge_ideal()?;
        let edges = (0..n)
            .map(|k| {
                let mut e = vec![0; n];
                e[k] = rotated[k];
                e[(k + 1) % n] = rotated[k];
                Monomial::new(e)
            })
            .collect();
        Ok(Self {
            weights: rotated,
            rotation,
            edges,
            ideal,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Normalized weights, `w_1 >= 2` and the rest 1.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Offset applied to the input: input edge `e_{k + rotation}` is `e_k` here.
    pub fn rotation(&self) -> usize {
        self.rotation
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// `L_k` with a cyclic, 1-based index.
    pub fn edge(&self, k: i64) -> &Monomial {
        &self.edges[cyclic(k, self.n())]
    }

    /// `x_k` with a cyclic, 1-based index.
    pub fn var(&self, k: i64) -> Monomial {
        Monomial::var(cyclic(k, self.n()), self.n())
    }

    fn product(&self, exps: &[u32]) -> Result<Monomial> {
        let mut acc = vec![0u32; self.n()];
        for (k, &a) in exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &e) in acc.iter_mut().zip(self.edges[k].exponents()) {
                *x = x
                    .checked_add(e.checked_mul(a).ok_or(Error::ExponentOverflow)?)
                    .ok_or(Error::ExponentOverflow)?;
            }
        }
        Ok(Monomial::new(acc))
    }

    /// Every tuple `(a_1..a_n)` of nonnegative integers with sum `t`.
    fn compositions(&self, t: u32) -> Vec<Vec<u32>> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a);
                rec(n, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.n(), t, &mut Vec::with_capacity(self.n()), &mut out);
        out
    }

    /// The unique tuple with `M = L_1^{a_1} ... L_n^{a_n}` and `sum a_k = t`,
    /// found by exhaustive search; more than one solution is a `StructureViolation`.
    pub fn edge_factorize(&self, m: &Monomial, t: u32) -> Result<EdgeFactorization> {
        if t == 0 {
            return Err(Error::ZeroPower);
        }
        let power = self.ideal.power(t)?;
        if !power.gens().contains(m) {
            return Err(Error::NotMinimalGenerator);
        }
        let mut found = Vec::new();
        for a in self.compositions(t) {
            if &self.product(&a)? == m {
                found.push(a);
            }
        }
        match found.len() {
            1 => Ok(EdgeFactorization {
                exponents: found.pop().unwrap_or_default(),
                t,
            }),
            k => Err(Error::StructureViolation(format!(
                "{m} has {k} edge factorizations in power {t}"
            ))),
        }
    }

    /// `G(I^t)` with factorizations, descending in lex order of the exponent tuples.
    pub fn ordered_generators(&self, t: u32) -> Result<OrderedGenerators> {
        if t == 0 {
            return Err(Error::ZeroPower);
        }
        let mut by_product: HashMap<Monomial, Vec<Vec<u32>>> = HashMap::new();
        for a in self.compositions(t) {
            by_product.entry(self.product(&a)?).or_default().push(a);
        }
        let minimal = MonomialIdeal::minimalize(self.n(), by_product.keys().cloned().collect())?;
        let mut entries = Vec::with_capacity(minimal.len());
        for m in minimal.gens() {
            let tuples = &by_product[m];
            if tuples.len() != 1 {
                return Err(Error::StructureViolation(format!(
                    "{m} has {} edge factorizations in power {t}",
                    tuples.len()
                )));
            }
            entries.push(OrderedGenerator {
                monomial: m.clone(),
                factorization: EdgeFactorization {
                    exponents: tuples[0].clone(),
                    t,
                },
            });
        }
        entries.sort_by(|x, y| y.factorization.exponents.cmp(&x.factorization.exponents));
        if entries
            .windows(2)
            .any(|w| w[0].factorization == w[1].factorization)
        {
            return Err(Error::StructureViolation(format!(
                "order on G(I^{t}) is not strict"
            )));
        }
        let c = entries
            .iter()
            .take_while(|e| e.factorization.exponents[0] >= 1)
            .count();
        Ok(OrderedGenerators { t, entries, c })
    }
}

fn cyclic(k: i64, n: usize) -> usize {
    (k - 1).rem_euclid(n as i64) as usize
}

/// Form of the colon `(L_k^{(t)} : L_i^{(t)})` in a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum LiForm {
    /// `(L_{l2} : L_{l1})` with `l1 < l2`, `L_{l2}` edge-dividing `L_k` and `L_{l1}` edge-dividing `L_i`.
    EdgeRatio { l1: usize, l2: usize },
    /// `(x_{n-2d})` with `L_{n-2s} |edge L_k` and `L_{n+1-2s} |edge L_i` for `s = 0..=d`.
    Variable { d: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(flatten)]
    pub form: LiForm,
}

/// Ordered generators of every power up to `t`, for edge-division queries.
#[derive(Debug, Clone)]
pub struct PowerStructure {
    cycle: OneEdgeCycle,
    levels: Vec<OrderedGenerators>,
    members: Vec<HashSet<Monomial>>,
}

impl PowerStructure {
    pub fn new(weights: &[u32], t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroPower);
        }
        let cycle = OneEdgeCycle::new(weights)?;
        let levels = (1..=t)
            .map(|k| cycle.ordered_generators(k))
            .collect::<Result<Vec<_>>>()?;
        let members = levels
            .iter()
            .map(|l| l.entries.iter().map(|e| e.monomial.clone()).collect())
            .collect();
        let s = Self {
            cycle,
            levels,
            members,
        };
        s.check_prefix()?;
        Ok(s)
    }

    pub fn cycle(&self) -> &OneEdgeCycle {
        &self.cycle
    }

    pub fn t(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn n(&self) -> usize {
        self.cycle.n()
    }

    /// `L^{(k)}` for `1 <= k <= t`.
    pub fn level(&self, k: u32) -> Option<&OrderedGenerators> {
        k.checked_sub(1).and_then(|i| self.levels.get(i as usize))
    }

    /// `L^{(t)}`.
    pub fn generators(&self) -> &OrderedGenerators {
        self.levels.last().expect("t >= 1")
    }

    /// `c = |C|`, the number of generators edge-divisible by `L_1`.
    pub fn c(&self) -> usize {
        self.generators().c
    }

    fn is_generator(&self, m: &Monomial, k: u32) -> bool {
        k >= 1 && (k as usize) <= self.members.len() && self.members[k as usize - 1].contains(m)
    }

    /// `M1 |^edge M2`: `M2 = M1 M3` for a minimal generator `M3` of `I^{t-k}`.
    pub fn edge_divides(&self, m1: &Monomial, k: u32, m2: &Monomial, t: u32) -> Result<bool> {
        if k == 0 || k > t {
            return Err(Error::Config(format!(
                "edge division needs 1 <= k <= t, got k = {k}, t = {t}"
            )));
        }
        if !self.is_generator(m1, k) || !self.is_generator(m2, t) {
            return Err(Error::NotMinimalGenerator);
        }
        if k == t {
            return Ok(m1 == m2);
        }
        Ok(match m2.div(m1)? {
            Some(rest) => self.members[(t - k) as usize - 1].contains(&rest),
            None => false,
        })
    }

    /// `L_e |^edge L_i^{(t)}` for a single (cyclic) edge index `e`.
    fn edge_divides_generator(&self, e: i64, m: &Monomial) -> bool {
        self.edge_divides(self.cycle.edge(e), 1, m, self.t())
            .unwrap_or(false)
    }

    /// `C` is exactly the prefix of generators with `a_1 >= 1`.
    fn check_prefix(&self) -> Result<()> {
        let gens = self.generators();
        for (pos, e) in gens.entries.iter().enumerate() {
            let in_c = self.edge_divides_generator(1, &e.monomial);
            if in_c != (pos < gens.c) {
                return Err(Error::StructureViolation(format!(
                    "edge-divisibility by L_1 of {} disagrees with its factorization",
                    e.monomial
                )));
            }
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<&OrderedGenerator> {
        let c = self.c();
        if i == 0 || i > c {
            return Err(Error::IndexOutOfRange { index: i, max: c });
        }
        Ok(&self.generators().entries[i - 1])
    }

    /// `(J_i : L_i^{(t)})` with `J_i = (L_{i+1}^{(t)}, ..., L_r^{(t)})`, computed directly.
    pub fn colon_tail(&self, i: usize) -> Result<MonomialIdeal> {
        let li = self.check_index(i)?;
        let gens = self.generators();
        let quotients = gens.entries[i..]
            .iter()
            .map(|e| e.monomial.colon(&li.monomial))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(self.n(), quotients)
    }

    /// `q_i`: the largest `l` with `L_{n+1-2s} |^edge L_i^{(t)}` for all `0 <= s <= l`.
    ///
    /// `s = 0` always holds on `C`; the scan stops after `n` steps, where the
    /// indices start repeating.
    pub fn q_index(&self, i: usize) -> Result<usize> {
        let li = &self.check_index(i)?.monomial;
        let n = self.n() as i64;
        let mut q = None;
        for s in 0..n {
            if self.edge_divides_generator(n + 1 - 2 * s, li) {
                q = Some(s as usize);
            } else {
                break;
            }
        }
        q.ok_or_else(|| Error::StructureViolation(format!("L_1 does not edge-divide L_{i}")))
    }

    /// `K_i + Q_i` assembled term by term:
    /// `K_i = ((L_2, ..., L_n) : L_1) + sum_{j=2}^{p_i} (L_{i_j + 1} : L_{i_j})` and
    /// `Q_i = sum_{j=0}^{q_i} (x_{n-2j})`, where `i_1 = 1 < i_2 < ... < i_k` index the
    /// edges of `L_i^{(t)}` and `p_i` is `k - 1` if `i_k = n`, else `k`.
    pub fn predicted_colon_tail(&self, i: usize) -> Result<MonomialIdeal> {
        let li = self.check_index(i)?;
        let n = self.n();
        let support = li.factorization.support();
        if support.first() != Some(&1) {
            return Err(Error::StructureViolation(format!(
                "L_{i} lies in C but has no L_1 factor"
            )));
        }
        let l1 = self.cycle.edge(1);
        let mut gens = Vec::new();
        for b in 2..=n as i64 {
            gens.push(self.cycle.edge(b).colon(l1)?);
        }
        let k = support.len();
        let p = if support[k - 1] == n { k - 1 } else { k };
        for &ij in &support[1..p] {
            gens.push(
                self.cycle
                    .edge(ij as i64 + 1)
                    .colon(self.cycle.edge(ij as i64))?,
            );
        }
        let q = self.q_index(i)?;
        for j in 0..=q as i64 {
            gens.push(self.cycle.var(n as i64 - 2 * j));
        }
        MonomialIdeal::minimalize(n, gens)
    }

    /// A generator `L_k^{(t)}`, `k > i`, whose colon by `L_i^{(t)}` contains
    /// `(L_j^{(t)} : L_i^{(t)})` and has one of the two admissible forms.
    pub fn find_li_witness(&self, i: usize, j: usize) -> Result<LiWitness> {
        let li = &self.check_index(i)?.monomial;
        let gens = self.generators();
        let r = gens.len();
        if j <= i || j > r {
            return Err(Error::IndexOutOfRange { index: j, max: r });
        }
        let n = self.n() as i64;
        let target = gens.entries[j - 1].monomial.colon(li)?;
        for k in i + 1..=r {
            let lk = &gens.entries[k - 1].monomial;
            let colon = lk.colon(li)?;
            if !colon.divides(&target)? {
                continue;
            }
            for l1 in 1..=n {
                for l2 in l1 + 1..=n {
                    if self.cycle.edge(l2).colon(self.cycle.edge(l1))? == colon
                        && self.edge_divides_generator(l2, lk)
                        && self.edge_divides_generator(l1, li)
                    {
                        return Ok(LiWitness {
                            i,
                            j,
                            k,
                            form: LiForm::EdgeRatio {
                                l1: l1 as usize,
                                l2: l2 as usize,
                            },
                        });
                    }
                }
            }
            for d in 0..n {
                if self.cycle.var(n - 2 * d) != colon {
                    continue;
                }
                let chain = (0..=d).all(|s| {
                    self.edge_divides_generator(n - 2 * s, lk)
                        && self.edge_divides_generator(n + 1 - 2 * s, li)
                });
                if chain {
                    return Ok(LiWitness {
                        i,
                        j,
                        k,
                        form: LiForm::Variable { d: d as usize },
                    });
                }
            }
        }
        Err(Error::StructureViolation(format!(
            "no witness for the pair (i, j) = ({i}, {j}) in power {}",
            self.t()
        )))
    }
}

/// `((I^t : x_i), x_{i+1}) = ((I(C \ x_{i+1})^t : x_i), x_{i+1})` for an edge
/// `e_i` of weight 1 (1-based, cyclic).
pub fn check_cycle_colon(weights: &[u32], t: u32, i: usize) -> Result<bool> {
    let n = weights.len();
    let g = WeightedGraph::cycle(weights)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if weights[i - 1] != 1 {
        return Err(Error::Config(format!("edge e_{i} must have weight 1")));
    }
    let xi = Monomial::var(i - 1, n);
    let next = i % n;
    let x_next = MonomialIdeal::variables(n, &[next]);
    let lhs = g.edge_ideal()?.power(t)?.colon_mono(&xi)?.sum(&x_next)?;
    let rhs = g
        .deletion_edge_ideal(next)?
        .power(t)?
        .colon_mono(&xi)?
        .sum(&x_next)?;
    Ok(lhs == rhs)
}

/// `I^t : x_{i+1} x_{i+2} = I^{t-1}` when `w_i, w_{i+2} >= 2` and `w_{i+1} = 1`
/// (1-based, cyclic), for `t >= 2`.
pub fn check_cycle_colon2(weights: &[u32], t: u32, i: usize) -> Result<bool> {
    let n = weights.len();
    let g = WeightedGraph::cycle(weights)?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if t < 2 {
        return Err(Error::Config("needs t >= 2".into()));
    }
    let w = |k: usize| weights[(k - 1) % n];
    if w(i) < 2 || w(i + 2) < 2 || w(i + 1) != 1 {
        return Err(Error::Config(format!(
            "needs w_{i}, w_{} >= 2 and w_{} = 1",
            i + 2,
            i + 1
        )));
    }
    let mut e = vec![0; n];
    e[i % n] = 1;
    e[(i + 1) % n] = 1;
    let ideal = g.edge_ideal()?;
    Ok(ideal.power(t)?.colon_mono(&Monomial::new(e))? == ideal.power(t - 1)?)
}

pub fn edge_factorize(m: &Monomial, weights: &[u32], t: u32) -> Result<EdgeFactorization> {
    OneEdgeCycle::new(weights)?.edge_factorize(m, t)
}

pub fn ordered_generators(weights: &[u32], t: u32) -> Result<OrderedGenerators> {
    OneEdgeCycle::new(weights)?.ordered_generators(t)
}

pub fn colon_tail(weights: &[u32], t: u32, i: usize) -> Result<MonomialIdeal> {
    PowerStructure::new(weights, t)?.colon_tail(i)
}

pub fn predicted_colon_tail(weights: &[u32], t: u32, i: usize) -> Result<MonomialIdeal> {
    PowerStructure::new(weights, t)?.predicted_colon_tail(i)
}

pub fn find_li_witness(weights: &[u32], t: u32, i: usize, j: usize) -> Result<LiWitness> {
    PowerStructure::new(weights, t)?.find_li_witness(i, j)
}
