mod common;

use common::*;
use knotoid::diagram::Diagram;
use knotoid::invariants::*;
use knotoid::resolve::{extreme_component_counts, StateSumOptions};
use knotoid::{LaurentPoly, Var};
use proptest::prelude::*;

fn sub(p: &LaurentPoly, v: Var, s: &str) -> LaurentPoly {
    p.substitute(v, &poly(s)).unwrap()
}

fn span(p: &LaurentPoly, v: Var) -> i32 {
    p.span(v).finite().unwrap()
}

#[test]
fn phi_bracket() {
    let phi = pd(PHI);
    assert_eq!(normalized_bracket(&phi).unwrap(), poly("A^4 + A^6 - A^10"));
    assert_eq!(bracket(&phi).unwrap(), poly("-A^4 + 1 + A^-2"));
    let (spn, spn_a, spn_u) = spans(&phi).unwrap();
    assert_eq!((spn.finite(), spn_a.finite(), spn_u.finite()), (Some(6), Some(6), Some(2)));
    assert_eq!(extended_bracket(&phi).unwrap(), poly("A^4 + A^6*u^2 - A^10*u^2"));
}

#[test]
fn bracket_matches_label_oracle_on_examples() {
    for src in [PHI, UNIFOIL, B1, B2, TREFOIL_CUT] {
        assert_eq!(bracket(&pd(src)).unwrap(), bracket_oracle(src), "{src}");
    }
}

#[test]
fn planar_values() {
    assert_eq!(planar_bracket(&pd(UNIFOIL)).unwrap(), poly("-A^4 - A^2*v"));
    assert_eq!(planar_bracket(&pd(B1)).unwrap(), poly("A^4 + 2*A^6*u^2 + A^8*u^2*v"));
    assert_eq!(planar_bracket(&pd(B2)).unwrap(), poly("A^2*u^2 + A^-2*u^2 + u^2*v + 1"));
    assert!(planar_bracket(&pd(PHI)).is_err());
}

#[test]
fn trivial_values() {
    let t = Diagram::trivial();
    assert_eq!(normalized_bracket(&t).unwrap(), LaurentPoly::one());
    assert_eq!(extended_bracket(&t).unwrap(), LaurentPoly::one());
    assert_eq!(complexity_of_diagram(&t).unwrap(), 0);
    assert_eq!(genus_bound(&t), 0.into());
}

#[test]
fn genus_of_cut_trefoil() {
    assert_eq!(genus_bound(&pd(TREFOIL_CUT)), 1.into());
    assert_eq!(genus_bound(&pd(PHI)), 1.into());
}

#[test]
fn involutions_on_the_bracket() {
    let phi = pd(PHI);
    let e = extended_bracket(&phi).unwrap();
    assert_eq!(extended_bracket(&phi.mirror()).unwrap(), e.invert_var(Var::A));
    assert_eq!(extended_bracket(&phi.reverse()).unwrap(), e);
    assert_eq!(extended_bracket(&phi.symmetry()).unwrap(), e.invert_var(Var::A).invert_var(Var::U));
}

#[test]
fn purity_from_the_u_span() {
    let r = report(&pd(PHI), StateSumOptions::default()).unwrap();
    assert_eq!(r.purity_certificate, Some(Purity::Pure));
    let r = report(&pd(TREFOIL_CUT), StateSumOptions::default()).unwrap();
    assert_eq!(r.purity_certificate, Some(Purity::KnotLike));
}

#[test]
fn skein_check_rejects_a_wrong_smoothing() {
    let d = pd(TREFOIL_CUT);
    let v = d.crossings()[0];
    let (p, m, z) = d.conway_triple(v).unwrap();
    assert!(skein_check(&p, &m, &z).unwrap());
    assert!(!skein_check(&p, &m, &z.mirror()).unwrap() || z.mirror().canonical_code() == z.canonical_code());
    assert!(!skein_check(&p, &m, &pd(PHI)).unwrap());
    assert!(skein_check(&m, &p, &z).is_err());
}

#[test]
fn state_sum_size_limit() {
    let mut d = pd(TREFOIL_CUT);
    for _ in 0..9 {
        d = d.product(&pd(TREFOIL_CUT)).unwrap();
    }
    assert_eq!(d.crossing_count(), 30);
    assert!(matches!(bracket(&d), Err(knotoid::Error::StateSpaceTooLarge { .. })));
}

fn corpus() -> Vec<knotoid::corpus::Entry> {
    knotoid::corpus::load_dir(&corpus_dir()).unwrap()
}

#[test]
fn specializations_on_corpus() {
    for e in corpus() {
        let d = &e.diagram;
        if !d.is_knotoid() {
            continue;
        }
        let ext = extended_bracket(d).unwrap();
        assert_eq!(sub(&ext, Var::U, "1"), normalized_bracket(d).unwrap(), "{}", e.name);
        let under = d.closure_under().unwrap();
        assert_eq!(sub(&ext, Var::U, "-A^3"), &bracket_oracle(&under.to_pd()) * &writhe_unit(under.writhe()), "{}", e.name);
        assert_eq!(sub(&ext, Var::U, "-A^-3"), normalized_bracket(&d.closure_over().unwrap()).unwrap(), "{}", e.name);
    }
}

fn writhe_unit(w: i64) -> LaurentPoly {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, &[(Var::A, -3 * w as i32)])
}

#[test]
fn planar_bracket_reduces_on_corpus() {
    let mut seen = 0;
    for e in corpus() {
        if e.diagram.surface().is_plane() && e.diagram.is_knotoid() {
            let p = planar_bracket(&e.diagram).unwrap();
            assert_eq!(sub(&p, Var::V, "-A^2 - A^-2"), extended_bracket(&e.diagram).unwrap(), "{}", e.name);
            seen += 1;
        }
    }
    assert!(seen >= 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_matches_label_oracle(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        prop_assert_eq!(bracket(&d).unwrap(), bracket_oracle(&d.to_pd()));
    }

    #[test]
    fn bracket_matches_label_oracle_with_circles(seed in any::<u64>()) {
        let d = random_multi(seed, 6);
        prop_assert_eq!(bracket(&d).unwrap(), bracket_oracle(&d.to_pd()));
    }

    #[test]
    fn specializations(seed in any::<u64>()) {
        let d = random_diagram(seed, 5);
        let ext = extended_bracket(&d).unwrap();
        prop_assert_eq!(sub(&ext, Var::U, "1"), normalized_bracket(&d).unwrap());
        let under = d.closure_under().unwrap();
        prop_assert_eq!(sub(&ext, Var::U, "-A^3"), &bracket_oracle(&under.to_pd()) * &writhe_unit(under.writhe()));
        prop_assert_eq!(sub(&ext, Var::U, "-A^-3"), normalized_bracket(&d.closure_over().unwrap()).unwrap());
    }

    #[test]
    fn shortcut_choice_does_not_matter(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let a = d.random_shortcut(&mut rng(seed ^ 0x5eed)).unwrap();
        prop_assert_eq!(extended_bracket_with(&d, &a).unwrap(), extended_bracket(&d).unwrap());
    }

    #[test]
    fn span_bounds(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let n = d.crossing_count();
        let b = bracket(&d).unwrap();
        prop_assert!(span(&b, Var::A) as usize <= 4 * n);
        let (sp, sm) = extreme_component_counts(&d);
        prop_assert!(sp + sm <= n + 2);
        let (_, _, spn_u) = spans(&d).unwrap();
        prop_assert!(spn_u.finite().unwrap() as usize <= 2 * complexity_of_diagram(&d).unwrap());
    }

    #[test]
    fn product_is_multiplicative(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (random_diagram(s1, 4), random_diagram(s2, 4));
        let ab = a.product(&b).unwrap();
        let (na, nb) = (normalized_bracket(&a).unwrap(), normalized_bracket(&b).unwrap());
        prop_assert_eq!(normalized_bracket(&ab).unwrap(), &na * &nb);
        let (ea, eb) = (extended_bracket(&a).unwrap(), extended_bracket(&b).unwrap());
        let eab = extended_bracket(&ab).unwrap();
        prop_assert_eq!(&eab, &(&ea * &eb));
        prop_assert_eq!(span(&eab, Var::A), span(&ea, Var::A) + span(&eb, Var::A));
        prop_assert_eq!(span(&eab, Var::U), span(&ea, Var::U) + span(&eb, Var::U));
    }

    #[test]
    fn skein_relation(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        for v in d.crossings() {
            if let Some((p, m, z)) = d.conway_triple(v) {
                prop_assert!(skein_check(&p, &m, &z).unwrap());
            }
        }
    }

    #[test]
    fn planar_bracket_specializes(seed in any::<u64>(), f in 0usize..16) {
        let d = random_diagram(seed, 5);
        let p = d.in_plane(f % d.num_faces()).unwrap();
        let pb = planar_bracket(&p).unwrap();
        prop_assert_eq!(sub(&pb, Var::V, "-A^2 - A^-2"), extended_bracket(&d).unwrap());
    }
}

#[test]
fn curl_multiplies_the_bracket_by_a_unit() {
    use knotoid::moves::{apply, enumerate_moves, MoveKind};
    let phi = pd(PHI);
    let b = bracket(&phi).unwrap();
    let units = [poly("-A^3"), poly("-A^-3")];
    for m in enumerate_moves(&phi, &[MoveKind::R1Add]) {
        let c = bracket(&apply(&phi, &m).unwrap()).unwrap();
        assert!(units.iter().any(|u| c == u * &b), "{c}");
    }
}
