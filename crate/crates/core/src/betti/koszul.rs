//! Multigraded Betti numbers from upper Koszul simplicial complexes.
//!
//! For a multidegree `a`, `K^a(I) = { s subset of supp(a) : x^(a - s) in I }`
//! and `beta_{i,a}(I) = dim H~_{i-1}(K^a(I); GF(p))`. The complex contains the
//! empty face iff `x^a` lies in `I`; otherwise it is void and has no homology.

use std::collections::HashMap;

use super::linalg::rank_mod_p;
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

/// Largest support handled with bitmask faces.
const MAX_SUPPORT: usize = 30;

/// Faces of `K^a(I)` as bitmasks over the support positions, or `None` if void.
///
/// A generator `g <= a` contributes the simplex on the support coordinates where
/// `g_j < a_j`; the complex is the union of these simplices.
pub(crate) fn upper_koszul_facets(
    ideal: &MonomialIdeal,
    a: &[u32],
) -> Result<Option<(usize, Vec<u32>)>> {
    let support: Vec<usize> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, _)| j)
        .collect();
    if support.len() > MAX_SUPPORT {
        return Err(Error::VariableCapExceeded {
            nvars: support.len(),
            cap: MAX_SUPPORT,
        });
    }
    let mut facets: Vec<u32> = Vec::new();
    for g in ideal.gens() {
        let e = g.exponents();
        if e.iter().zip(a).any(|(x, y)| x > y) {
            continue;
        }
        let mut mask = 0u32;
        for (k, &j) in support.iter().enumerate() {
            if e[j] < a[j] {
                mask |= 1 << k;
            }
        }
        facets.push(mask);
    }
    if facets.is_empty() {
        return Ok(None);
    }
    facets.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    facets.dedup();
    let mut maximal: Vec<u32> = Vec::with_capacity(facets.len());
    for f in facets {
        if !maximal.iter().any(|&m| f & m == f) {
            maximal.push(f);
        }
    }
    Ok(Some((support.len(), maximal)))
}

/// `beta_{i,a}(I)` for `i = 0, 1, ...` over GF(p); trailing zeros trimmed.
pub fn koszul_betti(ideal: &MonomialIdeal, a: &[u32], p: u32) -> Result<Vec<u64>> {
    if a.len() != ideal.nvars() {
        return Err(Error::VariableCountMismatch {
            left: ideal.nvars(),
            right: a.len(),
        });
    }
    let Some((width, facets)) = upper_koszul_facets(ideal, a)? else {
        return Ok(Vec::new());
    };
    // A vertex lying in every facet is a cone point: the complex is acyclic.
    let common = facets.iter().fold(u32::MAX, |acc, &f| acc & f);
    if common != 0 {
        return Ok(Vec::new());
    }
    Ok(reduced_homology(width, &facets, p))
}

/// Dimensions of `H~_{k-1}` for `k = 0..`, of the complex generated by `facets`.
fn reduced_homology(width: usize, facets: &[u32], p: u32) -> Vec<u64> {
    let mut faces = collect_faces(width, facets);
    faces.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let top = faces.last().map_or(0, |m| m.count_ones() as usize);
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for f in faces {
        by_size[f.count_ones() as usize].push(f);
    }

    // ranks[k] = rank of the boundary from size-k faces to size-(k-1) faces.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let lower = &by_size[k - 1];
        let index: HashMap<u32, usize> = lower.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let rows: Vec<Vec<u32>> = by_size[k]
            .iter()
            .map(|&face| {
                let mut row = vec![0u32; lower.len()];
                let mut rest = face;
                let mut pos = 0;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let col = index[&(face ^ bit)];
                    row[col] = if pos % 2 == 0 { 1 } else { p - 1 };
                    pos += 1;
                }
                row
            })
            .collect();
        ranks[k] = rank_mod_p(rows, lower.len(), p);
    }

    let mut betti: Vec<u64> = (0..=top)
        .map(|k| (by_size[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    while betti.last() == Some(&0) {
        betti.pop();
    }
    betti
}

fn collect_faces(width: usize, facets: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    if width <= 16 {
        let mut seen = vec![false; 1 << width];
        for &f in facets {
            for_each_submask(f, |s| {
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    out.push(s);
                }
            });
        }
    } else {
        let mut seen = std::collections::HashSet::new();
        for &f in facets {
            for_each_submask(f, |s| {
                if seen.insert(s) {
                    out.push(s);
                }
            });
        }
    }
    out
}

fn for_each_submask(mask: u32, mut f: impl FnMut(u32)) {
    let mut s = mask;
    loop {
        f(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
}
