use serde::Serialize;

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

/// The polarized variable `x_{j,k}` (both indices 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolarVariable {
    pub var: usize,
    pub copy: u32,
}

/// A squarefree ideal together with the meaning of each of its variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `variables[flat]` is the polarized variable stored at position `flat`.
    pub variables: Vec<PolarVariable>,
}

impl Polarization {
    /// Flat position of `x_{var,copy}` (1-based indices).
    pub fn index_of(&self, var: usize, copy: u32) -> Option<usize> {
        self.variables
            .iter()
            .position(|v| v.var == var && v.copy == copy)
    }
}

impl MonomialIdeal {
    /// Replaces every `x_j^a` by `x_{j,1} ... x_{j,a}`; the new ring has
    /// `max_exponent(x_j)` copies of each `x_j`, laid out variable by variable.
    pub fn polarize(&self) -> Result<Polarization> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let max = self.max_exponents();
        let mut offsets = Vec::with_capacity(max.len());
        let mut variables = Vec::new();
        for (j, &a) in max.iter().enumerate() {
            offsets.push(variables.len());
            for k in 1..=a {
                variables.push(PolarVariable {
                    var: j + 1,
                    copy: k,
                });
            }
        }
        let width = variables.len();
        let gens = self
            .gens()
            .iter()
            .map(|g| {
                let mut exps = vec![0; width];
                for (j, &a) in g.exponents().iter().enumerate() {
                    for k in 0..a as usize {
                        exps[offsets[j] + k] = 1;
                    }
                }
                Monomial::new(exps)
            })
            .collect();
        Ok(Polarization {
            ideal: MonomialIdeal::minimalize_unchecked(width, gens),
            variables,
        })
    }
}
