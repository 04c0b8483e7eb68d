mod common;

use common::{admissible_mu, gauss_state, polynomial_state};
use dunkl_core::builders::{Mu, OperatorName, Registry};
use dunkl_core::relations::superpotential_samples;
use dunkl_core::scalars::{rat, Scalar};
use dunkl_core::states::{eigencheck, fock, spectrum_table, GaussState};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn supercharge_squares_to_hamiltonian_on_states(s in gauss_state(1, 1)) {
        let reg = Registry::parametric(1);
        let q = reg.build(OperatorName::SusyCharge1D(1)).unwrap();
        let h = reg.build(OperatorName::SusyH1D(1)).unwrap();
        let twice = s.apply_laurent(&q).unwrap().apply_laurent(&q).unwrap();
        prop_assert_eq!(twice, s.apply_laurent(&h).unwrap());
    }

    #[test]
    fn generic_supercharges_square_on_states(s in gauss_state(1, 1), k in 0usize..4) {
        let reg = Registry::parametric(1);
        let (_, vw) = &superpotential_samples()[k];
        let q = reg.generic_supercharge(vw, 1).unwrap();
        let h = reg.generic_susy_hamiltonian(vw, 1).unwrap();
        let twice = s.apply_laurent(&q).unwrap().apply_laurent(&q).unwrap();
        prop_assert_eq!(twice, s.apply_laurent(&h).unwrap());
    }

    #[test]
    fn planar_supercharge_on_states(s in gauss_state(2, 2)) {
        let reg = Registry::parametric(2);
        let (q, h) = reg.build_susy_nd(2).unwrap();
        let twice = s.apply_laurent(&q).unwrap().apply_laurent(&q).unwrap();
        prop_assert_eq!(twice, s.apply_laurent(&h).unwrap());
    }

    /// Dunkl derivatives and ladder operators never create poles on polynomial states.
    #[test]
    fn no_poles_from_polynomial_states(s in polynomial_state(2, 2)) {
        let reg = Registry::parametric(2);
        for name in [
            OperatorName::DunklDerivative(1),
            OperatorName::DunklDerivative(2),
            OperatorName::APlus(1),
            OperatorName::AMinus(2),
            OperatorName::Hamiltonian2D,
            OperatorName::JPlus,
            OperatorName::JMinus,
            OperatorName::KPlus,
        ] {
            let out = s.apply(&reg.build(name).unwrap());
            prop_assert!(out.is_ok(), "{name}");
            prop_assert!(out.unwrap().polynomial().is_polynomial());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn planar_degeneracy(m1 in admissible_mu(), m2 in admissible_mu()) {
        let t = spectrum_table(2, &[m1.clone(), m2.clone()], 6).unwrap();
        prop_assert!(t.admissible);
        for row in &t.rows {
            let expected = Scalar::from_rational(2, rat(i64::from(row.level) + 1, 1) + &m1 + &m2);
            prop_assert_eq!(&row.energy, &expected);
            prop_assert_eq!(row.degeneracy, row.level as usize + 1);
        }
    }
}

#[test]
fn fock_states_are_parametric_eigenstates() {
    let reg = Registry::parametric(2);
    let h = reg.build(OperatorName::Hamiltonian2D).unwrap();
    for n1 in 0..=3u32 {
        for n2 in 0..=3u32 {
            let s = fock(&reg, &[n1, n2]).unwrap();
            let e = eigencheck(&h, &s).unwrap().unwrap();
            let expected = &(&reg.mu(1) + &reg.mu(2)) + &Scalar::from_int(2, i64::from(n1 + n2 + 1));
            assert_eq!(e, expected, "({n1}, {n2})");
        }
    }
}

#[test]
fn lowering_the_ground_state_gives_zero() {
    let reg = Registry::new(1, Mu::Parametric).unwrap();
    let g = GaussState::ground(1, 1);
    assert!(g.apply(&reg.build(OperatorName::AMinus(1)).unwrap()).unwrap().is_zero());
}
