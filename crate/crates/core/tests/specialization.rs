use dunkl_core::builders::Mu;
use dunkl_core::relations::{build_family, check_all, CheckOptions, FamilyId};
use dunkl_core::scalars::rat;

fn points() -> Vec<Mu> {
    [(0, 1, 0, 1), (1, 3, 1, 2), (-1, 3, 2, 1), (-3, 4, -1, 4), (5, 1, -7, 2), (-1, 2, 0, 1)]
        .into_iter()
        .map(|(a, b, c, d)| Mu::Numeric(vec![rat(a, b), rat(c, d)]))
        .collect()
}

#[test]
fn parametric_proofs_specialize() {
    let parametric = check_all(&Mu::Parametric, &CheckOptions::default()).unwrap();
    assert!(parametric.iter().all(|r| r.passed()));
    for mu in points() {
        for rep in check_all(&mu, &CheckOptions::default()).unwrap() {
            assert!(rep.passed(), "{} at {mu:?}", rep.family);
        }
    }
}

/// Substituting into the parametric operators gives the numerically built ones.
#[test]
fn substitution_commutes_with_building() {
    for mu in points() {
        let Mu::Numeric(values) = &mu else { unreachable!() };
        for id in [FamilyId::Sd2, FamilyId::Hahn, FamilyId::SusyKInvariance] {
            let sym = build_family(id, &Mu::Parametric, false).unwrap();
            let num = build_family(id, &mu, false).unwrap();
            for (a, b) in sym.identities.iter().zip(&num.identities) {
                assert_eq!(a.lhs.substitute_params(values).unwrap(), b.lhs, "{} {}", id, a.label);
                assert_eq!(a.rhs.substitute_params(values).unwrap(), b.rhs, "{} {}", id, a.label);
            }
        }
    }
}

#[test]
fn perturbation_fails_in_every_family() {
    for id in FamilyId::ALL {
        for mu in [Mu::Parametric, Mu::Numeric(vec![rat(1, 3), rat(1, 2)])] {
            let rep = dunkl_core::relations::check(*id, &mu, &CheckOptions { perturb: true }).unwrap();
            assert!(!rep.passed(), "{id} perturbed still passes");
        }
    }
}
