use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

/// Joins (componentwise maxima) of all nonempty subsets of the generator exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    nvars: usize,
    elements: Vec<Vec<u32>>,
}

impl LcmLattice {
    /// Closes the generator exponents under pairwise joins; fails once more than
    /// `cap` elements have been produced.
    pub fn new(ideal: &MonomialIdeal, cap: usize) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let gens: Vec<Vec<u32>> = ideal
            .gens()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue = Vec::new();
        for g in &gens {
            if seen.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        if seen.len() > cap {
            return Err(Error::LatticeCapExceeded { cap });
        }
        // Joining every element with each generator reaches every subset join.
        while let Some(e) = queue.pop() {
            for g in &gens {
                let j: Vec<u32> = e.iter().zip(g).map(|(&a, &b)| a.max(b)).collect();
                if !seen.contains(&j) {
                    if seen.len() >= cap {
                        return Err(Error::LatticeCapExceeded { cap });
                    }
                    seen.insert(j.clone());
                    queue.push(j);
                }
            }
        }
        let mut elements: Vec<Vec<u32>> = seen.into_iter().collect();
        elements.sort();
        Ok(Self {
            nvars: ideal.nvars(),
            elements,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Sorted lexicographically.
    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(a))
            .is_ok()
    }
}
