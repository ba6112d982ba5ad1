//! Integral closure of monomial ideals through the Newton polyhedron.
//!
//! A monomial `x^a` is integral over `I` iff `a` lies in
//! `conv(exponents of G(I)) + R^n_{>=0}`. Membership is decided by an exact
//! phase-one simplex over the rationals; no floating point is involved.

use num_rational::Ratio;

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Is there `lambda >= 0` with `sum lambda = 1` and `sum lambda_g g <= point`?
fn in_newton_polyhedron(gens: &[Monomial], point: &[u32]) -> bool {
    let n = point.len();
    let m = gens.len();
    // Columns: lambda_1..lambda_m, slack_1..slack_n, artificial; then rhs.
    let cols = m + n + 1;
    let rows = n + 1;
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    let mut tab = vec![vec![zero; cols + 1]; rows];
    for j in 0..n {
        for (g, gen) in gens.iter().enumerate() {
            tab[j][g] = Q::from_integer(gen.exponents()[j] as i128);
        }
        tab[j][m + j] = one;
        tab[j][cols] = Q::from_integer(point[j] as i128);
    }
    tab[n][..m].fill(one);
    tab[n][m + n] = one;
    tab[n][cols] = one;
    let mut basis: Vec<usize> = (m..m + n + 1).collect();

    // Reduced costs of "minimize artificial" with the artificial basic in row n.
    let mut obj: Vec<Q> = (0..=cols).map(|k| -tab[n][k]).collect();
    obj[m + n] = zero;

    // Bland's rule: lowest-index entering column, ties broken by lowest basic index.
    while let Some(enter) = (0..cols).find(|&k| obj[k] < zero) {
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..rows {
            if tab[r][enter] > zero {
                let ratio = tab[r][cols] / tab[r][enter];
                match &leave {
                    Some((best_r, best))
                        if ratio > *best || (ratio == *best && basis[r] > basis[*best_r]) => {}
                    _ => leave = Some((r, ratio)),
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let pivot = tab[pr][enter];
        for v in tab[pr].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != pr && row[enter] != zero {
                let f = row[enter];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
        let f = obj[enter];
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            *v -= f * p;
        }
        basis[pr] = enter;
    }
    // obj[cols] holds minus the artificial's optimal value.
    obj[cols] == zero
}

impl MonomialIdeal {
    /// `x^u` is integral over the ideal.
    pub fn is_integral_over(&self, u: &Monomial) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if u.nvars() != self.nvars() {
            return Err(Error::VariableCountMismatch {
                left: self.nvars(),
                right: u.nvars(),
            });
        }
        Ok(self.contains_unchecked(u) || in_newton_polyhedron(self.gens(), u.exponents()))
    }

    /// Integral closure, generated by the lattice points of the Newton polyhedron.
    ///
    /// Minimal generators of the closure lie in the box bounded by the
    /// componentwise maximum of the generator exponents: any point of the
    /// polyhedron above that bound in coordinate `j` stays inside after
    /// lowering coordinate `j` by one.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let bound = self.max_exponents();
        let mut points = Vec::new();
        let mut cur = vec![0u32; bound.len()];
        loop {
            points.push(cur.clone());
            let mut k = 0;
            while k < cur.len() && cur[k] == bound[k] {
                cur[k] = 0;
                k += 1;
            }
            if k == cur.len() {
                break;
            }
            cur[k] += 1;
        }
        points.sort_by_key(|p| p.iter().sum::<u32>());

        let mut accepted: Vec<Monomial> = Vec::new();
        for p in points {
            let u = Monomial::new(p);
            if accepted.iter().any(|a| a.divides_unchecked(&u)) {
                continue;
            }
            if self.contains_unchecked(&u) || in_newton_polyhedron(self.gens(), u.exponents()) {
                accepted.push(u);
            }
        }
        Ok(MonomialIdeal::minimalize_unchecked(self.nvars(), accepted))
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        Ok(self.integral_closure()? == *self)
    }
}

/// Smallest `m <= max_m` with `u^m` in `I^m`, the witness that `u` is integral over `I`.
pub fn power_membership_witness(
    ideal: &MonomialIdeal,
    u: &Monomial,
    max_m: u32,
) -> Result<Option<u32>> {
    let mut power = ideal.clone();
    for m in 1..=max_m {
        if m > 1 {
            power = power.product(ideal)?;
        }
        if power.contains(&u.pow(m)?)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|e| m(e)).collect()).unwrap()
    }

    #[test]
    fn closure_of_squares() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        // (x1 x2)^2 = x1^2 x2^2 lies in I^2.
        assert_eq!(
            power_membership_witness(&i, &m(&[1, 1]), 4).unwrap(),
            Some(2)
        );
        assert_eq!(
            i.integral_closure().unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        assert!(!i.is_integrally_closed().unwrap());
    }

    #[test]
    fn principal_is_closed() {
        let i = ideal(2, &[&[1, 1]]);
        assert_eq!(i.integral_closure().unwrap(), i);
    }

    #[test]
    fn fully_weighted_triangle_is_not_closed() {
        let i = ideal(3, &[&[2, 2, 0], &[0, 2, 2], &[2, 0, 2]]);
        assert!(!i.is_integrally_closed().unwrap());
        // (2,1,1) is the midpoint of (2,2,0) and (2,0,2).
        assert!(i.is_integral_over(&m(&[2, 1, 1])).unwrap());
        assert!(!i.contains(&m(&[2, 1, 1])).unwrap());
    }

    #[test]
    fn polyhedron_membership() {
        let gens = vec![m(&[2, 0]), m(&[0, 2])];
        assert!(in_newton_polyhedron(&gens, &[1, 1]));
        assert!(!in_newton_polyhedron(&gens, &[1, 0]));
        assert!(in_newton_polyhedron(&gens, &[0, 5]));
        let gens = vec![m(&[3, 0]), m(&[0, 3])];
        assert!(!in_newton_polyhedron(&gens, &[1, 1]));
        assert!(in_newton_polyhedron(&gens, &[2, 1]));
    }

    #[test]
    fn zero_ideal_rejected() {
        assert_eq!(
            MonomialIdeal::zero(2).integral_closure(),
            Err(Error::ZeroIdeal)
        );
    }
}
