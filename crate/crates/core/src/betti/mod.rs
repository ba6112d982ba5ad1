//! Exact graded Betti numbers and Castelnuovo-Mumford regularity of monomial ideals.
//!
//! Betti numbers are computed one multidegree at a time over the lcm lattice:
//! nonzero multigraded Betti numbers only occur at joins of generators, and at
//! each such multidegree they are the reduced homology of the upper Koszul
//! complex. Homology is taken over GF(p), so the characteristic is part of
//! every table.

mod koszul;
mod lattice;
mod linalg;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

pub use koszul::koszul_betti;
pub use lattice::LcmLattice;
pub use linalg::{is_prime, rank_mod_p};

pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Resource caps for the engine. Exceeding either is an error, never a wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_lattice: usize,
    pub max_vars: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            max_lattice: 200_000,
            max_vars: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Ideal,
    Quotient,
}

/// Graded Betti numbers `beta_{i,j}`, zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    characteristic: u32,
    subject: Subject,
    entries: BTreeMap<(u32, u32), u64>,
}

/// `{"characteristic": p, "subject": "ideal"|"quotient", "entries": [[i, j, mult], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTableJson {
    pub characteristic: u32,
    pub subject: Subject,
    pub entries: Vec<[u64; 3]>,
}

impl BettiTable {
    pub fn new(characteristic: u32, subject: Subject, entries: BTreeMap<(u32, u32), u64>) -> Self {
        let entries = entries.into_iter().filter(|&(_, v)| v > 0).collect();
        Self {
            characteristic,
            subject,
            entries,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn subject(&self) -> Subject {
        self.subject
    }

    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `((i, j), beta_{i,j})` sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `max { j - i : beta_{i,j} != 0 }`.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j as i64 - i as i64).max()
    }

    pub fn projective_dimension(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Table of `S/I` from that of `I`: `beta_{i,j}(S/I) = beta_{i-1,j}(I)`, plus `beta_{0,0} = 1`.
    pub fn to_quotient(&self) -> BettiTable {
        match self.subject {
            Subject::Quotient => self.clone(),
            Subject::Ideal => {
                let mut entries: BTreeMap<(u32, u32), u64> = self
                    .entries
                    .iter()
                    .map(|(&(i, j), &v)| ((i + 1, j), v))
                    .collect();
                entries.insert((0, 0), 1);
                BettiTable {
                    characteristic: self.characteristic,
                    subject: Subject::Quotient,
                    entries,
                }
            }
        }
    }

    /// Same characteristic and entries, ignoring the subject tag.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    pub fn to_json(&self) -> BettiTableJson {
        BettiTableJson {
            characteristic: self.characteristic,
            subject: self.subject,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &v)| [i as u64, j as u64, v])
                .collect(),
        }
    }

    pub fn from_json(json: &BettiTableJson) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for &[i, j, v] in &json.entries {
            let i = u32::try_from(i).map_err(|_| Error::Parse(format!("index {i} too large")))?;
            let j = u32::try_from(j).map_err(|_| Error::Parse(format!("degree {j} too large")))?;
            if entries.insert((i, j), v).is_some() {
                return Err(Error::Parse(format!("duplicate entry ({i}, {j})")));
            }
        }
        Ok(Self::new(json.characteristic, json.subject, entries))
    }

    /// Human-readable table: rows `j - i`, columns `i`.
    pub fn render(&self) -> String {
        let Some(pd) = self.projective_dimension() else {
            return String::from("(zero)\n");
        };
        let min_row = self
            .entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .min()
            .unwrap_or(0);
        let max_row = self.regularity().unwrap_or(0);
        let mut out = String::new();
        out.push_str("      ");
        for i in 0..=pd {
            out.push_str(&format!("{i:>6}"));
        }
        out.push('\n');
        for r in min_row..=max_row {
            out.push_str(&format!("{r:>4}: "));
            for i in 0..=pd {
                let j = r + i as i64;
                let v = if j < 0 { 0 } else { self.get(i, j as u32) };
                if v == 0 {
                    out.push_str("     -");
                } else {
                    out.push_str(&format!("{v:>6}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn check_inputs(ideal: &MonomialIdeal, p: u32, cfg: &EngineConfig) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.nvars() > cfg.max_vars {
        return Err(Error::VariableCapExceeded {
            nvars: ideal.nvars(),
            cap: cfg.max_vars,
        });
    }
    Ok(())
}

/// Nonzero multigraded Betti numbers, keyed by multidegree.
pub fn multigraded_betti(
    ideal: &MonomialIdeal,
    p: u32,
    cfg: &EngineConfig,
) -> Result<BTreeMap<Vec<u32>, Vec<u64>>> {
    check_inputs(ideal, p, cfg)?;
    let lattice = LcmLattice::new(ideal, cfg.max_lattice)?;
    let found = lattice
        .elements()
        .par_iter()
        .map(|a| koszul_betti(ideal, a, p).map(|b| (a.clone(), b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().filter(|(_, b)| !b.is_empty()).collect())
}

/// Graded Betti table of the ideal itself.
pub fn betti_table(ideal: &MonomialIdeal, p: u32, cfg: &EngineConfig) -> Result<BettiTable> {
    check_inputs(ideal, p, cfg)?;
    let lattice = LcmLattice::new(ideal, cfg.max_lattice)?;
    let entries = lattice
        .elements()
        .par_iter()
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<(u32, u32), u64>, a| {
            let degree: u32 = a.iter().sum();
            for (i, &b) in koszul_betti(ideal, a, p)?.iter().enumerate() {
                if b > 0 {
                    *acc.entry((i as u32, degree)).or_insert(0) += b;
                }
            }
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            Ok(x)
        })?;
    Ok(BettiTable::new(p, Subject::Ideal, entries))
}

pub fn betti_table_quotient(
    ideal: &MonomialIdeal,
    p: u32,
    cfg: &EngineConfig,
) -> Result<BettiTable> {
    Ok(betti_table(ideal, p, cfg)?.to_quotient())
}

/// `reg(I)`.
pub fn regularity(ideal: &MonomialIdeal, p: u32, cfg: &EngineConfig) -> Result<i64> {
    betti_table(ideal, p, cfg)?
        .regularity()
        .ok_or(Error::ZeroIdeal)
}

/// `reg(S/I) = reg(I) - 1`.
pub fn regularity_quotient(ideal: &MonomialIdeal, p: u32, cfg: &EngineConfig) -> Result<i64> {
    Ok(regularity(ideal, p, cfg)? - 1)
}

/// Betti tables of `I` and of its polarization coincide in every `(i, j)`.
pub fn verify_polarization_invariance(
    ideal: &MonomialIdeal,
    p: u32,
    cfg: &EngineConfig,
) -> Result<bool> {
    let polar = ideal.polarize()?;
    let original = betti_table(ideal, p, cfg)?;
    let polarized = betti_table(&polar.ideal, p, cfg)?;
    Ok(original.same_numbers(&polarized))
}

/// Checks `beta_{i,j}(I) = beta_{i,j}(J) + beta_{i,j}(K) + beta_{i-1,j}(J ∩ K)` for all `(i, j)`.
///
/// `G(I)` must be the disjoint union of `G(J)` and `G(K)`, both nonempty.
pub fn is_betti_splitting(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    k: &MonomialIdeal,
    p: u32,
    cfg: &EngineConfig,
) -> Result<bool> {
    if j.nvars() != i.nvars() || k.nvars() != i.nvars() {
        return Err(Error::VariableCountMismatch {
            left: i.nvars(),
            right: j.nvars().max(k.nvars()),
        });
    }
    if j.is_zero() || k.is_zero() {
        return Err(Error::InvalidSplitting);
    }
    let disjoint = j.gens().iter().all(|g| !k.gens().contains(g));
    let covering = j.len() + k.len() == i.len()
        && i.gens()
            .iter()
            .all(|g| j.gens().contains(g) || k.gens().contains(g));
    if !disjoint || !covering {
        return Err(Error::InvalidSplitting);
    }
    let bi = betti_table(i, p, cfg)?;
    let bj = betti_table(j, p, cfg)?;
    let bk = betti_table(k, p, cfg)?;
    let bjk = betti_table(&j.intersect(k)?, p, cfg)?;
    let mut keys: Vec<(u32, u32)> = bi
        .entries()
        .chain(bj.entries())
        .chain(bk.entries())
        .map(|(key, _)| key)
        .collect();
    keys.extend(bjk.entries().map(|((a, b), _)| (a + 1, b)));
    keys.sort_unstable();
    keys.dedup();
    Ok(keys.into_iter().all(|(a, b)| {
        let shifted = if a == 0 { 0 } else { bjk.get(a - 1, b) };
        bi.get(a, b) == bj.get(a, b) + bk.get(a, b) + shifted
    }))
}

/// All splittings `I = J + K` with `J` the generators divisible by a variable
/// `x`, `K` the rest nonempty, and `J` with a linear resolution. Returns the
/// splitting variable (0-based) and whether the Betti identity held.
pub fn linear_variable_splittings(
    ideal: &MonomialIdeal,
    p: u32,
    cfg: &EngineConfig,
) -> Result<Vec<(usize, bool)>> {
    let mut out = Vec::new();
    for x in 0..ideal.nvars() {
        let (with, without): (Vec<_>, Vec<_>) = ideal
            .gens()
            .iter()
            .cloned()
            .partition(|g| g.exponents()[x] > 0);
        if with.is_empty() || without.is_empty() {
            continue;
        }
        let j = MonomialIdeal::minimalize(ideal.nvars(), with)?;
        let k = MonomialIdeal::minimalize(ideal.nvars(), without)?;
        if !has_linear_resolution(&j, p, cfg)? {
            continue;
        }
        out.push((x, is_betti_splitting(ideal, &j, &k, p, cfg)?));
    }
    Ok(out)
}

/// All generators share one degree `d` and every `beta_{i,j}` sits at `j = i + d`.
pub fn has_linear_resolution(ideal: &MonomialIdeal, p: u32, cfg: &EngineConfig) -> Result<bool> {
    let table = betti_table(ideal, p, cfg)?;
    let d = ideal
        .gens()
        .first()
        .map(|g| g.degree())
        .ok_or(Error::ZeroIdeal)?;
    let linear = table.entries().all(|((i, j), _)| j == i + d);
    Ok(linear)
}
