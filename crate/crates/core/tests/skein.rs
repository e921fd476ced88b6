mod common;

use common::*;
use knotoid::diagram::Diagram;
use knotoid::invariants::normalized_bracket;
use knotoid::moves::random_moves;
use knotoid::skein::*;
use knotoid::LaurentPoly;
use proptest::prelude::*;

fn scalar(d: &Diagram) -> LaurentPoly {
    P_invariant(d).unwrap().as_scalar().expect("no winding generators")
}

#[test]
fn trivial_is_one() {
    assert_eq!(P_invariant(&Diagram::trivial()).unwrap(), AnnulusElement::one());
    assert_eq!(P_invariant(&Diagram::trivial().in_plane(0).unwrap()).unwrap(), AnnulusElement::one());
}

#[test]
fn cut_trefoil_matches_the_braid_oracle() {
    let t = pd(TREFOIL_CUT);
    assert_eq!(t.writhe(), -3);
    assert_eq!(scalar(&t), torus_2n_homfly(-3));
    assert_eq!(scalar(&t), poly("2*q^2 - q^4 + q^2*z^2"));
    assert_eq!(scalar(&t.mirror()), torus_2n_homfly(3));
}

#[test]
fn braid_oracle_sanity() {
    assert_eq!(torus_2n_homfly(1), LaurentPoly::one());
    assert_eq!(torus_2n_homfly(-1), LaurentPoly::one());
    assert_eq!(torus_2n_homfly(0), z0());
}

#[test]
fn closed_diagrams_use_the_loop_value() {
    let c = pd(PHI).closure_over().unwrap();
    assert_eq!(P_invariant(&c).unwrap(), AnnulusElement::generator(0));
    let trefoil = pd(PHI).closure_under().unwrap();
    let p = scalar(&trefoil);
    assert!(p == &torus_2n_homfly(3) * &z0() || p == &torus_2n_homfly(-3) * &z0(), "{p}");
}

#[test]
fn phi_carries_a_winding_generator() {
    let p = P_invariant(&pd(PHI)).unwrap();
    assert!(p.as_scalar().is_none(), "{p}");
    assert!(p.terms().all(|(m, _)| m.iter().all(|&r| r != 0)));
}

#[test]
fn jones_specialization() {
    // q = -A^4, z = A^2 - A^-2 recovers the bracket for classical values
    for d in [pd(TREFOIL_CUT), pd(TREFOIL_CUT).mirror(), Diagram::trivial()] {
        assert_eq!(to_bracket_variables(&scalar(&d)).unwrap(), normalized_bracket(&d).unwrap());
    }
}

#[test]
fn budget_is_reported() {
    let mut ev = SkeinEvaluator::new(1);
    assert!(matches!(ev.eval(&pd(TREFOIL_CUT)), Err(knotoid::Error::RecursionBudgetExceeded(1))));
}

#[test]
fn ascending_base_case() {
    let t = Diagram::trivial();
    assert!(ascending_violation(&t).is_none());
    assert!(ascending_violation(&pd(TREFOIL_CUT)).is_some());
    assert!(circle_windings(&t).unwrap().is_empty());
}

#[test]
fn display_and_json() {
    let p = P_invariant(&pd(TREFOIL_CUT)).unwrap();
    assert_eq!(p.to_string(), format!("({})", poly("2*q^2 - q^4 + q^2*z^2")));
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v[0]["generators"], serde_json::json!([]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn skein_linearity(seed in any::<u64>()) {
        let d = random_multi(seed, 5);
        for v in d.crossings() {
            if let Some((p, m, z)) = d.conway_triple(v) {
                let (pp, pm, pz) = (P_invariant(&p).unwrap(), P_invariant(&m).unwrap(), P_invariant(&z).unwrap());
                let lhs = &pp.scale(&poly("q")) + &pm.scale(&poly("-q^-1"));
                prop_assert_eq!(lhs, pz.scale(&poly("z")));
            }
        }
    }

    #[test]
    fn invariant_under_moves(seed in any::<u64>()) {
        let d = random_multi(seed, 5);
        let (e, _) = random_moves(&mut rng(seed ^ 3), &d, 20, 8);
        prop_assert_eq!(P_invariant(&e).unwrap(), P_invariant(&d).unwrap());
    }

    #[test]
    fn multiplicative_under_product(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (random_diagram(s1, 3), random_diagram(s2, 3));
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(P_invariant(&ab).unwrap(), &P_invariant(&a).unwrap() * &P_invariant(&b).unwrap());
    }

    #[test]
    fn knot_type_values_specialize_to_the_bracket(seed in any::<u64>()) {
        let d = random_diagram(seed, 5);
        if let Some(s) = P_invariant(&d).unwrap().as_scalar() {
            if complexity_zero(&d) {
                prop_assert_eq!(to_bracket_variables(&s).unwrap(), normalized_bracket(&d).unwrap());
            }
        }
    }
}

fn complexity_zero(d: &Diagram) -> bool {
    d.shortcut().unwrap().is_empty()
}
