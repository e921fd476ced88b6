mod common;

use common::*;
use knotoid::diagram::{Diagram, Surface};
use knotoid::invariants::normalized_bracket;
use knotoid::Error;
use proptest::prelude::*;

#[test]
fn trivial_diagram_parses() {
    let d = pd("leg(1)\nhead(1)");
    assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (2, 1, 1));
    assert_eq!(d.surface(), Surface::Sphere);
    assert_eq!(d.canonical_code(), Diagram::trivial().canonical_code());
    assert_eq!(d.writhe(), 0);
    assert_eq!(d.oriented_smoothing(), 1);
    assert!(d.alternating());
}

#[test]
fn trivial_code_is_a_fixed_string() {
    let c = Diagram::trivial().canonical_code();
    assert_eq!(c, pd("head(7)\nleg(7)").canonical_code());
    assert_eq!(c, Diagram::trivial().canonical_code());
    assert!(c.starts_with('S'));
}

#[test]
fn phi_has_four_vertices_five_edges_three_faces() {
    let d = pd(PHI);
    assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (4, 5, 3));
    assert_eq!(d.num_vertices() as i64 - d.num_edges() as i64 + d.num_faces() as i64, 2);
    assert_eq!(d.writhe(), -2);
    assert_eq!(d.mirror().writhe(), 2);
}

#[test]
fn malformed_codes_are_rejected() {
    assert!(matches!("leg(1)\nX(1,2,3) over=ac\nhead(2)".parse::<Diagram>(), Err(Error::Syntax { .. })));
    assert!(matches!("leg(1)\nleg(1)".parse::<Diagram>(), Err(Error::BadEndpoints { .. })));
    assert!(matches!("leg(1)\nhead(2)".parse::<Diagram>(), Err(Error::Syntax { .. } | Error::DisconnectedSegment)));
    assert!(matches!("leg(1)\nhead(2)\nX(1,3,4,2) over=xy".parse::<Diagram>(), Err(Error::Syntax { .. })));
}

#[test]
fn non_planar_map_is_rejected() {
    // two crossings wired like a virtual crossing
    let r = "leg(1)\nhead(6)\nX(1,3,2,4) over=ac\nX(2,5,6,3) over=ac\nX(4,5,7,7) over=ac".parse::<Diagram>();
    assert!(r.is_err());
    let e = "leg(1)\nhead(4)\nX(1,2,3,5) over=ac\nX(2,3,4,5) over=ac".parse::<Diagram>();
    match e {
        Err(Error::NonPlanar { euler }) => assert_ne!(euler, 2),
        other => assert!(other.is_err(), "accepted {other:?}"),
    }
}

#[test]
fn relabeling_keeps_the_code() {
    let a = pd(PHI);
    let b = pd("leg(10)\nhead(50)\nX(10,40,20,30) over=ac\nX(50,20,40,30) over=ac");
    let c = pd("X(2,3,1,4) over=ac\nhead(5)\nX(4,3,5,2) over=ac\nleg(1)");
    assert_eq!(a.canonical_code(), b.canonical_code());
    assert_eq!(a.canonical_code(), c.canonical_code());
    assert_ne!(a.canonical_code(), a.mirror().canonical_code());
}

#[test]
fn involutions() {
    let phi = pd(PHI);
    assert_eq!(phi.reverse().reverse().canonical_code(), phi.canonical_code());
    assert_eq!(phi.mirror().mirror().canonical_code(), phi.canonical_code());
    assert_eq!(phi.symmetry().symmetry().canonical_code(), phi.canonical_code());
    let u = pd(UNIFOIL);
    assert_eq!(u.reverse().mirror().symmetry().canonical_code(), u.canonical_code());
    let b1 = pd(B1);
    assert_eq!(b1.reverse().canonical_code(), b1.canonical_code());
    let b2 = pd(B2);
    assert_eq!(b2.reverse().canonical_code(), b2.mirror().canonical_code());
}

#[test]
fn sym_and_mir_agree_on_knots() {
    let k = pd(TREFOIL_CUT);
    assert_eq!(normalized_bracket(&k.symmetry().mirror()).unwrap(), normalized_bracket(&k).unwrap());
}

#[test]
fn product_examples() {
    let phi = pd(PHI);
    let t = Diagram::trivial();
    assert_eq!(t.product(&phi).unwrap().canonical_code(), phi.canonical_code());
    assert_eq!(phi.product(&t).unwrap().canonical_code(), phi.canonical_code());
    let p = phi.product(&phi.mirror()).unwrap();
    assert_eq!(p.crossing_count(), 4);
    assert_eq!(p.writhe(), 0);
    let plane = pd(UNIFOIL);
    assert!(matches!(plane.product(&phi), Err(Error::IncompatibleSurfaces)));
}

#[test]
fn shortcut_examples() {
    assert!(Diagram::trivial().shortcut().unwrap().is_empty());
    let phi = pd(PHI);
    let a = phi.shortcut().unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!(phi.intersection_with(&a), -1);
    assert_eq!(pd(TREFOIL_CUT).shortcut().unwrap().len(), 0);
}

#[test]
fn closures() {
    let phi = pd(PHI);
    let under = phi.closure_under().unwrap();
    assert_eq!(under.crossing_count(), 3);
    assert!(!under.is_knotoid());
    assert_eq!(normalized_bracket(&under).unwrap(), poly("A^4 + A^12 - A^16"));
    assert_eq!(normalized_bracket(&phi.closure_over().unwrap()).unwrap(), poly("1"));
    let t = Diagram::trivial().closure_under().unwrap();
    assert_eq!(t.crossing_count(), 0);
    assert!(t.is_free_loop());
}

#[test]
fn seifert_counts() {
    let trefoil = pd(PHI).closure_under().unwrap();
    assert_eq!(trefoil.oriented_smoothing(), 2);
    assert_eq!(pd(TREFOIL_CUT).oriented_smoothing(), 2);
    assert_eq!(pd(PHI).oriented_smoothing(), 1);
}

#[test]
fn alternating_examples() {
    assert!(pd(TREFOIL_CUT).alternating());
    assert!(!pd(PHI).alternating());
}

#[test]
fn json_export_lists_faces_and_vertices() {
    let v = pd(PHI).to_json();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["faces"].as_array().unwrap().len(), 3);
    let a = serde_json::to_value(pd(PHI).shortcut().unwrap()).unwrap();
    assert_eq!(a["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn circle_statement_fixes_orientation() {
    let d = pd("leg(1)\nX(1,3,2,3) over=bd\nhead(2)");
    assert_eq!(d.components().len(), 2);
    let e = pd("leg(1)\nX(1,3,2,3) over=bd\nhead(2)\ncircle(3)");
    assert_eq!(d.canonical_code(), e.canonical_code());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let back: Diagram = d.to_pd().parse().unwrap();
        prop_assert_eq!(back.canonical_code(), d.canonical_code());
        prop_assert_eq!(d.num_vertices() as i64 - d.num_edges() as i64 + d.num_faces() as i64, 2);
    }

    #[test]
    fn relabeled_values_agree(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let back: Diagram = d.reverse().reverse().to_pd().parse().unwrap();
        prop_assert_eq!(back.writhe(), d.writhe());
        prop_assert_eq!(back.oriented_smoothing(), d.oriented_smoothing());
        prop_assert_eq!(back.crossing_count(), d.crossing_count());
    }

    #[test]
    fn product_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (random_diagram(s1, 2), random_diagram(s2, 2), random_diagram(s3, 2));
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        prop_assert_eq!(left.canonical_code(), right.canonical_code());
        prop_assert_eq!(left.crossing_count(), a.crossing_count() + b.crossing_count() + c.crossing_count());
    }

    #[test]
    fn closure_adds_shortcut_length(seed in any::<u64>()) {
        let d = random_diagram(seed, 6);
        let n = d.crossing_count() + d.shortcut().unwrap().len();
        prop_assert_eq!(d.closure_under().unwrap().crossing_count(), n);
        prop_assert_eq!(d.closure_over().unwrap().crossing_count(), n);
    }
}
