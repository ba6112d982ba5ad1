use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// A monomial ideal stored as its minimal generating set in canonical order.
///
/// The zero ideal has no generators; the unit ideal is generated by `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Interchange form `{"n": <variable count>, "gens": [[e_1, ..., e_n], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Minimal generating set of the ideal generated by `gens`.
    pub fn minimalize(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
        }
        Ok(Self::minimalize_unchecked(nvars, gens))
    }

    pub(crate) fn minimalize_unchecked(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        // Ascending grlex puts every proper divisor before its multiples.
        gens.sort_unstable();
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides_unchecked(&g)) {
                kept.push(g);
            }
        }
        kept.reverse();
        Self { nvars, gens: kept }
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Self {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// Ideal generated by the given variables (0-based indices).
    pub fn variables(nvars: usize, indices: &[usize]) -> Self {
        let gens = indices.iter().map(|&i| Monomial::var(i, nvars)).collect();
        Self::minimalize_unchecked(nvars, gens)
    }

    pub fn principal(m: Monomial) -> Self {
        let nvars = m.nvars();
        Self {
            nvars,
            gens: vec![m],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Componentwise maximum of the generator exponents.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut max = vec![0; self.nvars];
        for g in &self.gens {
            for (m, &e) in max.iter_mut().zip(g.exponents()) {
                *m = (*m).max(e);
            }
        }
        max
    }

    /// Indices of variables dividing some generator.
    pub fn support(&self) -> Vec<usize> {
        self.max_exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    fn check_mono(&self, m: &Monomial) -> Result<()> {
        if self.nvars != m.nvars() {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: m.nvars(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        let mut seen = HashSet::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul_unchecked(b)?;
                if seen.insert(p.clone()) {
                    gens.push(p);
                }
            }
        }
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// `I^t` for `t >= 1`, minimalizing after every multiplication.
    pub fn power(&self, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I : (m)`.
    pub fn colon_mono(&self, m: &Monomial) -> Result<Self> {
        self.check_mono(m)?;
        let gens = self.gens.iter().map(|g| g.colon_unchecked(m)).collect();
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm_unchecked(b));
            }
        }
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// `I : J`, the intersection of `I : g` over the generators `g` of `J`.
    pub fn colon_ideal(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (first, rest) = other.gens.split_first().ok_or(Error::ZeroIdeal)?;
        let mut acc = self.colon_mono(first)?;
        for g in rest {
            acc = acc.intersect(&self.colon_mono(g)?)?;
        }
        Ok(acc)
    }

    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        self.check_mono(u)?;
        Ok(self.contains_unchecked(u))
    }

    pub(crate) fn contains_unchecked(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(u))
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.gens.iter().all(|g| self.contains_unchecked(g)))
    }

    /// Generators arrive canonical, so equality is list equality.
    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }

    /// Re-embeds the ideal into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= nvars) {
            return Err(Error::InvalidVertex(bad + 1));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut exps = vec![0; nvars];
                for (i, &e) in g.exponents().iter().enumerate() {
                    exps[map[i]] += e;
                }
                Monomial::new(exps)
            })
            .collect();
        Ok(Self::minimalize_unchecked(nvars, gens))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            n: self.nvars,
            gens: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn from_json(json: &IdealJson) -> Result<Self> {
        let gens = json
            .gens
            .iter()
            .map(|e| {
                if e.len() != json.n {
                    Err(Error::Parse(format!(
                        "generator {e:?} does not have {} exponents",
                        json.n
                    )))
                } else {
                    Ok(Monomial::new(e.clone()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::minimalize_unchecked(json.n, gens))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: IdealJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("ideal json is always serializable")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
