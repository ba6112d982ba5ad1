use proptest::prelude::*;

use edgereg::betti::{koszul_betti, EngineConfig, LcmLattice};
use edgereg::closed_forms::{predict_reg_cycle_power, predict_reg_path_power, CyclePowerQuery};
use edgereg::graph::WeightedGraph;
use edgereg::monomial::{power_membership_witness, Monomial, MonomialIdeal};

const N: usize = 3;

fn monomial(max: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, N).prop_map(Monomial::new)
}

fn ideal(max: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial(max), 1..5)
        .prop_filter("nonconstant", |g| g.iter().all(|m| !m.is_one()))
        .prop_map(|g| MonomialIdeal::minimalize(N, g).unwrap())
}

/// Every exponent vector in `[0, bound]^N`.
fn box_points(bound: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..N {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| (0..=bound).map(move |a| [p.clone(), vec![a]].concat()))
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

fn rotate(w: &[u32], k: usize) -> Vec<u32> {
    (0..w.len()).map(|i| w[(i + k) % w.len()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimalize_is_idempotent(i in ideal(3)) {
        prop_assert_eq!(MonomialIdeal::minimalize(N, i.gens().to_vec()).unwrap(), i.clone());
        for (a, b) in i.gens().iter().zip(i.gens().iter().skip(1)) {
            prop_assert!(a > b);
        }
    }

    #[test]
    fn powers_multiply(i in ideal(2), s in 1u32..3, t in 1u32..3) {
        let lhs = i.power(s + t).unwrap();
        let rhs = i.power(s).unwrap().product(&i.power(t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn iterated_colon(i in ideal(3), u in monomial(2), v in monomial(2)) {
        let lhs = i.colon_mono(&u).unwrap().colon_mono(&v).unwrap();
        prop_assert_eq!(lhs, i.colon_mono(&u.mul(&v).unwrap()).unwrap());
    }

    #[test]
    fn colon_membership_is_exact(i in ideal(3), u in monomial(2)) {
        let colon = i.colon_mono(&u).unwrap();
        for m in box_points(4) {
            prop_assert_eq!(colon.contains(&m).unwrap(), i.contains(&m.mul(&u).unwrap()).unwrap());
        }
    }

    #[test]
    fn intersection_membership_is_exact(i in ideal(3), j in ideal(3)) {
        let meet = i.intersect(&j).unwrap();
        for m in box_points(4) {
            prop_assert_eq!(meet.contains(&m).unwrap(), i.contains(&m).unwrap() && j.contains(&m).unwrap());
        }
    }

    #[test]
    fn closure_is_an_idempotent_extension(i in ideal(3)) {
        let bar = i.integral_closure().unwrap();
        prop_assert!(bar.contains_ideal(&i).unwrap());
        prop_assert_eq!(bar.integral_closure().unwrap(), bar.clone());
        for g in bar.gens() {
            prop_assert!(i.is_integral_over(g).unwrap());
        }
    }

    /// `u` is integral over `I` iff `u^m` lies in `I^m` for some `m`; small cases settle by `m = 4`.
    #[test]
    fn closure_matches_power_witness(i in ideal(2), u in monomial(3)) {
        let integral = i.is_integral_over(&u).unwrap();
        let witness = power_membership_witness(&i, &u, 4).unwrap();
        if witness.is_some() {
            prop_assert!(integral);
        }
        if integral {
            prop_assert!(witness.is_some(), "{} integral over {} without a witness", u, i);
        }
    }

    #[test]
    fn betti_numbers_vanish_off_the_lattice(i in ideal(2), a in prop::collection::vec(0u32..=4, N)) {
        let lattice = LcmLattice::new(&i, 10_000).unwrap();
        if !lattice.contains(&a) {
            prop_assert!(koszul_betti(&i, &a, 32003).unwrap().is_empty());
        }
    }

    #[test]
    fn cycle_formula_is_symmetric(w in prop::collection::vec(1u32..=3, 3..8), k in 0usize..8, t in 1u32..4) {
        let q = |v: Vec<u32>| predict_reg_cycle_power(&CyclePowerQuery::new(v, t)).ok();
        let base = q(w.clone());
        prop_assert_eq!(q(rotate(&w, k % w.len())), base);
        prop_assert_eq!(q(w.iter().rev().copied().collect()), base);
        let closed = WeightedGraph::cycle(&w).unwrap().is_integrally_closed_combinatorial();
        prop_assert_eq!(base.is_some(), closed);
    }

    #[test]
    fn path_formula_is_reversal_invariant(w in prop::collection::vec(1u32..=3, 1..6), t in 1u32..4) {
        let fwd = predict_reg_path_power(&w, t).ok();
        let rev: Vec<u32> = w.iter().rev().copied().collect();
        prop_assert_eq!(predict_reg_path_power(&rev, t).ok(), fwd);
    }

    #[test]
    fn predictions_grow_with_t(w in prop::collection::vec(1u32..=3, 3..8), t in 1u32..4) {
        let q = |t| predict_reg_cycle_power(&CyclePowerQuery::new(w.clone(), t));
        if let (Ok(a), Ok(b)) = (q(t), q(t + 1)) {
            prop_assert!(b > a);
        }
    }

    #[test]
    fn induced_edge_ideal_is_the_restriction(w in prop::collection::vec(1u32..=3, 3..7), mask in 1u32..64) {
        let g = WeightedGraph::cycle(&w).unwrap();
        let n = w.len();
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let restricted: Vec<Monomial> = g
            .edge_ideal()
            .unwrap()
            .gens()
            .iter()
            .filter(|m| m.support().iter().all(|v| vs.contains(v)))
            .cloned()
            .collect();
        match g.induced_edge_ideal(&vs) {
            Ok(i) => prop_assert_eq!(i, MonomialIdeal::minimalize(n, restricted).unwrap()),
            Err(_) => prop_assert!(restricted.is_empty()),
        }
    }
}

#[test]
fn engine_regularity_is_rotation_invariant() {
    let cfg = EngineConfig::default();
    for w in [vec![2, 1, 1, 1, 1], vec![3, 1, 2, 1, 1]] {
        let reg = |v: &[u32]| {
            let i = WeightedGraph::cycle(v)
                .unwrap()
                .edge_ideal()
                .unwrap()
                .power(2)
                .unwrap();
            edgereg::betti::regularity_quotient(&i, 32003, &cfg).unwrap()
        };
        let base = reg(&w);
        for k in 1..w.len() {
            assert_eq!(reg(&rotate(&w, k)), base);
        }
    }
}
