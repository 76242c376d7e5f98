use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::datagen::{generate_reconstruction, DegenerateKind, generate_degenerate};
use crate::forms::{same_span, Form};
use crate::invariants::{fano15_lifted_c64, g5_lifted, t6_lifted, t6_lifted_c64};
use crate::poly::UniPoly;
use crate::scalar::{self, int};

const TOL: f64 = 1e-9;

fn pt(c: &[i64]) -> ProjectivePoint {
    ProjectivePoint::from_ints(c).unwrap()
}

fn golden() -> (Configuration, ProjectivePoint) {
    (Configuration::standard_frame(), pt(&[43, -50, 6, -5]))
}

#[test]
fn golden_fiber_matches_printed_quadrics() {
    let (x, a) = golden();
    let c = cubic_locus_n5(&x, &x, &a).unwrap();
    let printed = vec![
        Form::from_terms(&[(28, [0, 1, 1, 0]), (27, [0, 1, 0, 1]), (-55, [0, 0, 1, 1])]),
        Form::from_terms(&[(185, [1, 0, 1, 0]), (288, [1, 0, 0, 1]), (-473, [0, 0, 1, 1])]),
        Form::from_terms(&[(31, [1, 1, 0, 0]), (-160, [1, 0, 0, 1]), (129, [0, 1, 0, 1])]),
    ];
    assert!(same_span(c.quadrics(), &printed, 2));
}

#[test]
fn cubic_contains_base_points_and_ground_truth() {
    for seed in 0..4 {
        let r = generate_reconstruction(5, seed, 10).unwrap();
        let c = cubic_locus_n5(&r.x, &r.y, &r.a_true).unwrap();
        assert!(r.y.points().iter().all(|p| c.contains(p)));
        assert!(c.contains(&r.b_true));
    }
}

#[test]
fn inadmissible_center_is_refused() {
    let (x, _) = golden();
    assert!(matches!(cubic_locus_n5(&x, &x, &pt(&[1, 1, 0, 0])), Err(Error::InadmissibleCenter(_))));
    assert!(matches!(cubic_locus_n5(&x, &x, &pt(&[1, 0, 0, 0])), Err(Error::InadmissibleCenter(_))));
}

#[test]
fn parametrization_lies_on_the_cubic() {
    let r = generate_reconstruction(5, 1, 10).unwrap();
    let c = cubic_locus_n5(&r.x, &r.y, &r.a_true).unwrap();
    let p = cubic_param_n5(&c).unwrap();
    for t in -5..5 {
        let z = p.eval(&scalar::frac(t, 3));
        assert!(c.quadrics().iter().all(|q| q.eval(&z).is_zero()));
    }
    let inf = p.at_infinity();
    assert!(c.quadrics().iter().all(|q| q.eval(&inf).is_zero()));
}

#[test]
fn base_points_sit_at_distinct_parameters() {
    let r = generate_reconstruction(5, 2, 10).unwrap();
    let c = cubic_locus_n5(&r.x, &r.y, &r.a_true).unwrap();
    let p = cubic_param_n5(&c).unwrap();
    let mut params = Vec::new();
    for y in r.y.points() {
        let (g, at_inf) = p.incidence(&y.to_scalars());
        if at_inf {
            params.push(None);
        } else {
            assert_eq!(g.degree(), Some(1));
            params.push(Some(-g.coeff(0) / g.coeff(1)));
        }
    }
    for i in 0..5 {
        for j in i + 1..5 {
            assert_ne!(params[i], params[j]);
        }
    }
    // normalized frame: third point at infinity, fourth at 0, fifth at 1
    assert_eq!(params[2], None);
    assert_eq!(params[3], Some(int(0)));
    assert_eq!(params[4], Some(int(1)));
}

#[test]
fn plane_section_has_degree_three() {
    let r = generate_reconstruction(5, 3, 10).unwrap();
    let p = cubic_param_n5(&cubic_locus_n5(&r.x, &r.y, &r.a_true).unwrap()).unwrap();
    let plane = [int(3), int(-7), int(2), int(5)];
    let section = p.coords().iter().zip(&plane).fold(UniPoly::zero(), |acc, (c, l)| &acc + &c.scale(l));
    assert_eq!(section.degree(), Some(3));
}

#[test]
fn fiber_points_have_proportional_invariants() {
    let r = generate_reconstruction(5, 4, 10).unwrap();
    let p = cubic_param_n5(&cubic_locus_n5(&r.x, &r.y, &r.a_true).unwrap()).unwrap();
    let target = g5_lifted(&r.x, &r.a_true).unwrap();
    let mut checked = 0;
    for k in 0..50 {
        let b = p.point(&scalar::frac(k - 25, 7)).unwrap();
        if !crate::projective::center_admissible(&r.y, &b, crate::projective::AdmissibilityMode::Moduli) {
            continue;
        }
        assert!(g5_lifted(&r.y, &b).unwrap().projectively_equal(&target));
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn classifier_examples() {
    let (x, a) = golden();
    assert_eq!(classify_degeneration_n5(&x, &a).unwrap(), Degeneration::SmoothCubic);
    assert_eq!(classify_degeneration_n5(&x, &pt(&[2, 3, 5, 0])).unwrap(), Degeneration::LinePlusConic);
    assert_eq!(classify_degeneration_n5(&x, &pt(&[0, 1, 0, 0])).unwrap(), Degeneration::AllOfP3);
    assert_eq!(classify_degeneration_n5(&x, &pt(&[1, 1, 0, 0])).unwrap(), Degeneration::LinePlusPlane);
    // on ⟨e1,e2,e3⟩ and ⟨e1,e4,(1,1,1,1)⟩
    assert_eq!(classify_degeneration_n5(&x, &pt(&[5, 1, 1, 0])).unwrap(), Degeneration::ThreeLines);
}

#[test]
fn line_plus_conic_fiber_still_has_three_quadrics() {
    let d = generate_degenerate(DegenerateKind::CoplanarCenter, 9).unwrap();
    let c = cubic_locus_n5(&d.points, &d.points, d.center.as_ref().unwrap()).unwrap();
    assert!(d.points.points().iter().all(|p| c.contains(p)));
}

#[test]
fn quadric_pair_contains_points_and_ground_truth() {
    for seed in 0..3 {
        let r = generate_reconstruction(6, seed, 10).unwrap();
        let (sb, sa) = quadric_pair_n6(&r.x, &r.y).unwrap();
        assert!(r.x.points().iter().all(|p| sb.contains(p)));
        assert!(r.y.points().iter().all(|p| sa.contains(p)));
        assert!(sb.contains(&r.a_true));
        assert!(sa.contains(&r.b_true));
    }
}

#[test]
fn quadric_pair_swaps_with_the_configurations() {
    let r = generate_reconstruction(6, 5, 10).unwrap();
    let (sb, sa) = quadric_pair_n6(&r.x, &r.y).unwrap();
    let (tb, ta) = quadric_pair_n6(&r.y, &r.x).unwrap();
    assert!(sb.proportional(&ta) && sa.proportional(&tb));
    // the relation of X applied to its own quadrics vanishes
    assert!(matches!(quadric_pair_n6(&r.x, &r.x), Err(Error::DegenerateInput(_))));
}

#[test]
fn point_map_recovers_ground_truth() {
    for seed in 0..4 {
        let r = generate_reconstruction(6, seed, 10).unwrap();
        let b = map_a_to_b_n6(&r.x, &r.y, &r.a_true).unwrap();
        assert_eq!(b, r.b_true);
        assert_eq!(map_b_to_a_n6(&r.x, &r.y, &b).unwrap(), r.a_true);
    }
}

#[test]
fn point_map_on_sampled_points() {
    let r = generate_reconstruction(6, 7, 10).unwrap();
    let pairs = sample_pairs_n6(&r.x, &r.y, 3, 1).unwrap();
    assert_eq!(pairs.len(), 3);
    for (a, b) in &pairs {
        let (u, v) = (t6_lifted(&r.x, a).unwrap(), t6_lifted(&r.y, b).unwrap());
        assert!(u.projectively_equal(&v));
        assert_eq!(&map_b_to_a_n6(&r.x, &r.y, b).unwrap(), a);
    }
}

#[test]
fn point_map_refuses_bad_centers() {
    let r = generate_reconstruction(6, 8, 10).unwrap();
    assert!(matches!(map_a_to_b_n6(&r.x, &r.y, r.x.point(2)), Err(Error::InadmissibleCenter(_))));
    let off = pt(&[1, 2, 3, 4]);
    assert!(matches!(map_a_to_b_n6(&r.x, &r.y, &off), Err(Error::NoRationalImage(_))));
}

#[test]
fn seven_points_give_three_pairs() {
    let r = generate_reconstruction(7, 0, 10).unwrap();
    let (ac, bc) = candidates_n7(&r.x, &r.y, TOL, 0).unwrap();
    assert_eq!((ac.len(), bc.len()), (3, 3));
    assert!(ac.iter().any(|p| p.exact.as_ref() == Some(&r.a_true)));
    assert!(bc.iter().any(|p| p.exact.as_ref() == Some(&r.b_true)));
    let pairs = pair_candidates_n7(&r.x, &r.y, &ac, &bc, TOL).unwrap();
    assert_eq!(pairs.len(), 3);
    assert!(pairs.iter().all(|p| p.residual < 1e-7));
    assert!(pairs
        .iter()
        .any(|p| p.a.distance_to_exact(&r.a_true) < 1e-7 && p.b.distance_to_exact(&r.b_true) < 1e-7));
}

#[test]
fn solver_is_deterministic() {
    let r = generate_reconstruction(7, 1, 10).unwrap();
    let (beta, _) = leave_one_out_quadrics(&r.x, &r.y).unwrap();
    let a = solve_quadric_system(&beta, Some(3), TOL, 5).unwrap();
    let b = solve_quadric_system(&beta, Some(3), TOL, 5).unwrap();
    assert_eq!(a, b);
    let mut rev = beta.clone();
    rev.reverse();
    let c = solve_quadric_system(&rev, Some(3), TOL, 11).unwrap();
    assert_eq!(c.len(), 3);
    assert!(a.iter().all(|p| c.iter().any(|q| p.distance(q) < 1e-8)));
}

#[test]
fn weddle_point_projects_onto_a_conic() {
    let r = generate_reconstruction(7, 2, 10).unwrap();
    let w = weddle_curve_point(&r.x, TOL, 0).unwrap();
    assert!(w.weddle_residuals.iter().all(|&e| e < 1e-7), "{:?}", w.weddle_residuals);
    for k in 0..7 {
        let t = t6_lifted_c64(&r.x.without(k), &w.point.coords).unwrap();
        let scale = t[..5].iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(t[5].norm() < 1e-7 * scale * scale);
    }
    let f = fano15_lifted_c64(&r.x, &w.point.coords).unwrap();
    assert!(omega_distance(&f) < 1e-7);
}

#[test]
fn pairing_drops_omega_candidates() {
    let r = generate_reconstruction(7, 3, 10).unwrap();
    let (mut ac, bc) = candidates_n7(&r.x, &r.y, TOL, 0).unwrap();
    let w = weddle_curve_point(&r.x, TOL, 1).unwrap();
    ac.push(w.point.clone());
    let pairs = pair_candidates_n7(&r.x, &r.y, &ac, &bc, TOL).unwrap();
    assert_eq!(pairs.len(), 3);
    assert!(pairs.iter().all(|p| p.a.distance(&w.point) > 1e-6));
}

#[test]
fn eight_points() {
    let r = generate_reconstruction(8, 0, 10).unwrap();
    let cert = centers_n_ge8(&r.x, &r.y, TOL, 0).unwrap();
    assert_eq!(cert.surviving.len(), 1);
    assert_eq!(cert.surviving[0].a.exact.as_ref(), Some(&r.a_true));
    // replace the eighth pair by unrelated points
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut xs = r.x.points().to_vec();
    let mut ys = r.y.points().to_vec();
    let mut rnd = || pt(&(0..4).map(|_| rng.gen_range(-20..=20)).collect::<Vec<i64>>());
    xs[7] = rnd();
    ys[7] = rnd();
    let (x, y) = (Configuration::new(xs).unwrap(), Configuration::new(ys).unwrap());
    let cert = centers_n_ge8(&x, &y, TOL, 0).unwrap();
    assert!(cert.surviving.is_empty());
    assert_eq!(cert.first.len(), 3);
}

#[test]
fn few_points_always_match() {
    for n in [3, 4] {
        let r = generate_reconstruction(n, 1, 10).unwrap();
        let a = pt(&[3, 1, -4, 1]);
        let b = pt(&[5, -9, 2, 6]);
        let h = centers_n_le4(&r.x, &r.y, &a, &b).unwrap();
        let p = crate::projective::project_config(&r.y, &b).unwrap();
        let q = crate::projective::project_config(&r.x, &a).unwrap();
        for i in 0..n {
            assert!(crate::projective::maps_onto(&h, p.point(i), q.point(i)));
        }
    }
}

#[test]
fn few_points_with_collinear_image() {
    let x = Configuration::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0]]).unwrap();
    let y = Configuration::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0]]).unwrap();
    let a = pt(&[0, 0, 0, 1]);
    assert!(matches!(centers_n_le4(&x, &y, &a, &a), Err(Error::DegenerateInput(_))));
}

#[test]
fn dispatcher_by_size() {
    let r = generate_reconstruction(6, 2, 10).unwrap();
    let given = Centers { a: Some(r.a_true.clone()), b: None };
    match centers(&r.x, &r.y, &given, TOL, 0).unwrap() {
        CentersVariety::SurfacePairN6 { sampled_pairs, .. } => assert_eq!(sampled_pairs, vec![(r.a_true, r.b_true)]),
        other => panic!("unexpected {other:?}"),
    }
    let (x, a) = golden();
    match centers(&x, &x, &Centers { a: Some(a), b: None }, TOL, 0).unwrap() {
        CentersVariety::CubicFibrationN5 { degeneration, cubic, .. } => {
            assert_eq!(degeneration, Degeneration::SmoothCubic);
            assert!(cubic.is_some());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn numeric_point_normalization() {
    let p = NumericPoint::from_coords(&[Complex64::new(0.0, 2.0), Complex64::new(0.0, -1.0), Complex64::zero(), Complex64::zero()], 0.0, 1e-12);
    assert!(p.is_real);
    assert!((p.coords[0].re - 2.0 / 5f64.sqrt()).abs() < 1e-15);
}
