mod common;

use common::*;
use proptest::prelude::*;
use slant_hankel::analysis::*;
use slant_hankel::error::Error;
use slant_hankel::lattice::{IndexBox, MultiIndex};
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::scalar::Scalar;
use slant_hankel::symbol::LaurentSymbol;
use slant_hankel::window::MatrixWindow;

proptest! {
    #[test]
    fn engine_window_matches_coefficient_formula(kk in order(), phi in symbol(2, 3, 5)) {
        let (rows, cols) = (cube(2, 1), cube(2, 4));
        let wnd = Engine::exact().matrix_window(&OperatorWord::slant_hankel(&phi, kk), &rows, &cols).unwrap();
        prop_assert_eq!(&wnd, &slant_hankel_matrix(&phi, kk, &rows, &cols).unwrap());
        prop_assert!(is_slant_hankel_window(&wnd, kk).holds());
    }

    #[test]
    fn hyponormality_witness_near_origin(kk in order(), phi in symbol(2, 3, 4)) {
        let w = hyponormality_witness(&Engine::exact(), &phi, kk, &cube(2, 1)).unwrap();
        prop_assert_eq!(w.is_some(), !phi.is_zero());
        if let Some(w) = w {
            prop_assert!(w.adjoint_norm_sq > w.norm_sq);
            prop_assert_eq!(w.adjoint_norm_sq, phi.l2_norm_sq());
        }
    }

    #[test]
    fn commutation_iff_sigma_vanishes(kk in order(), phi in symbol(1, 3, 3), psi in symbol(1, 3, 3)) {
        let b = auto_box(1, &[&phi, &psi], kk, 2).unwrap();
        let r = commutator_check(&Engine::exact(), &phi, &psi, kk, &b).unwrap();
        prop_assert!(r.reduction.holds);
        prop_assert_eq!(r.commute.holds, r.sigma.is_zero());
    }

    #[test]
    fn recurrence_prediction_agrees(kk in order(), phi in symbol(2, 3, 4)) {
        let cols = auto_box(2, &[&phi], kk, 1).unwrap();
        let p = v_slant_hankel_prediction(&Engine::exact(), &phi, kk, &cube(2, 1), &cols).unwrap();
        prop_assert!(p.agree);
        prop_assert_eq!(p.predicted, p.detected);
        prop_assert_eq!(p.window.holds(), phi.is_zero());
    }

    #[test]
    fn injectivity_recovers_symbol(kk in order(), phi in symbol(3, 2, 4)) {
        let r = injectivity_check(&Engine::exact(), &phi, kk, None).unwrap();
        prop_assert!(r.holds);
        prop_assert_eq!(r.recovered, phi);
    }

    #[test]
    fn residue_box_is_a_residue_system(n in 1usize..=3, q in 2i64..=9) {
        let b = residue_box(n, &q.into()).unwrap();
        prop_assert_eq!(b.len(), (q as usize).pow(n as u32));
        let pts = center_out(&b);
        prop_assert_eq!(pts.len(), b.len());
        prop_assert!(pts[0].is_zero());
    }
}

#[test]
fn perturbed_window_is_rejected() {
    let phi = sym(1, &[(&[0], 1), (&[1], 2), (&[-3], 5)]);
    let (rows, cols) = (cube(1, 2), cube(1, 6));
    let wnd = slant_hankel_matrix(&phi, k(2), &rows, &cols).unwrap();
    let mut entries = wnd.entries().to_vec();
    entries[2][7] = &entries[2][7] + &Scalar::ONE;
    let bad = MatrixWindow::new(rows, cols, entries).unwrap();
    let c = is_slant_hankel_window(&bad, k(2));
    assert_eq!(c.verdict, WindowVerdict::Fails);
    let v = &c.violations[0];
    assert_eq!(v.kind, ViolationKind::EntryRecurrence);
    assert!(v.m.is_some() && v.m_prime.is_some() && v.j == Some(1));
}

#[test]
fn window_without_pairs_is_inconclusive() {
    let phi = sym(1, &[(&[0], 1)]);
    let wnd = slant_hankel_matrix(&phi, k(3), &cube(1, 0), &cube(1, 1)).unwrap();
    assert_eq!(
        is_slant_hankel_window(&wnd, k(3)).verdict,
        WindowVerdict::Inconclusive
    );
}

#[test]
fn commutator_of_monomials() {
    // z and z²: σ = z^{-2}·z² − z^{-4}·z = 1 − z^{-3}
    let (phi, psi) = (sym(1, &[(&[1], 1)]), sym(1, &[(&[2], 1)]));
    assert_eq!(
        commutator_symbol(&phi, &psi, k(2)).unwrap(),
        sym(1, &[(&[0], 1), (&[-3], -1)])
    );
    let b = auto_box(1, &[&phi, &psi], k(2), 2).unwrap();
    let r = commutator_check(&Engine::exact(), &phi, &psi, k(2), &b).unwrap();
    assert!(r.reduction.holds && !r.commute.holds);
    let c = sym(1, &[(&[0], 4)]);
    assert!(commutator_symbol(&c, &c, k(3)).unwrap().is_zero());
}

#[test]
fn vanishing_product_needs_a_zero_factor() {
    let e = Engine::exact();
    let phi = sym(2, &[(&[1, 0], 1), (&[0, -1], 2)]);
    let zero = LaurentSymbol::zero(2);
    for (a, b, vanishes) in [
        (&phi, &zero, true),
        (&zero, &phi, true),
        (&phi, &phi, false),
    ] {
        let bx = auto_box(2, &[a, b], k(2), 2).unwrap();
        let r = product_vanishing_check(&e, a, b, k(2), &bx).unwrap();
        assert_eq!((r.symbol_zero, r.operator_zero), (vanishes, vanishes));
    }
}

#[test]
fn slant_v_is_never_isometric() {
    let one = LaurentSymbol::one(1);
    let r = isometry_defect(&Engine::exact(), &one, k(2), &cube(1, 3)).unwrap();
    assert!(!r.isometric_on_box());
    assert!(r.identity.holds);
    assert_eq!(r.max_defect, dashu::rational::RBig::ONE);
    assert_eq!(r.at, MultiIndex::from_i64s(&[-1]));
}

#[test]
fn unit_norm_columns_expose_a_gram_defect() {
    // S e_m keeps the one even exponent among m, m + 1
    let phi = sym(1, &[(&[0], 1), (&[1], 1)]);
    let r = isometry_defect(&Engine::exact(), &phi, k(2), &cube(1, 2)).unwrap();
    assert_eq!(r.max_defect, dashu::rational::RBig::ZERO);
    assert!(!r.isometric_on_box());
    let g = r.gram.expect("non-orthogonal pair");
    assert!(!g.inner.is_zero());
}

#[test]
fn conjugation_identities() {
    let e = Engine::exact();
    let m = MultiIndex::from_i64s(&[1, -2]);
    let l = MultiIndex::from_i64s(&[1, 0]);
    let r = conjugation_identity_check(&e, k(2), &m, &l, &cube(2, 3)).unwrap();
    assert!(r.holds());
    let lattice = MultiIndex::from_i64s(&[2, 4]);
    assert!(
        conjugation_identity_check(&e, k(2), &m, &lattice, &cube(2, 3))
            .unwrap()
            .annihilation
            .is_none()
    );
}

#[test]
fn reductions_on_a_fixed_pair() {
    let e = Engine::exact();
    let phi = sym(2, &[(&[1, 0], 2), (&[-1, 1], -1)]);
    let psi = sym(2, &[(&[0, 2], 3), (&[0, 0], 1)]);
    let b = auto_box(2, &[&phi, &psi], k(2), 2).unwrap();
    for t in [[1, 0], [0, 1], [3, 0], [-2, 5]] {
        let r = mul_reduction_check(&e, &phi, &psi, &MultiIndex::from_i64s(&t), k(2), &b).unwrap();
        assert!(r.chi.holds && r.lambda.holds, "t = {t:?}");
    }
}

#[test]
fn idempotence_only_for_zero() {
    let e = Engine::exact();
    assert!(idempotence_witness(&e, &LaurentSymbol::zero(2), k(2))
        .unwrap()
        .is_none());
    // S_1 fixes e_0 but not e_{-2}
    let w = idempotence_witness(&e, &LaurentSymbol::one(1), k(2))
        .unwrap()
        .expect("witness");
    assert_ne!(w.lhs, w.rhs);
}

#[test]
fn intertwining_detects_toeplitz() {
    let phi = sym(1, &[(&[1], 1), (&[0], 2)]);
    let a = OperatorWord::slant_toeplitz(&phi, k(2));
    let c = check_intertwining(&Engine::exact(), &a, k(2), &cube(1, 4)).unwrap();
    assert!(!c.holds);
    assert_eq!(c.violations[0].kind, ViolationKind::Intertwining);
}

#[test]
fn injectivity_box_too_small() {
    let phi = sym(1, &[(&[5], 1)]);
    let err = injectivity_check(&Engine::exact(), &phi, k(2), Some(&cube(1, 2))).unwrap_err();
    assert!(matches!(err, Error::InsufficientBox { .. }));
    let b = IndexBox::new(MultiIndex::from_i64s(&[-5]), MultiIndex::from_i64s(&[0])).unwrap();
    assert!(
        injectivity_check(&Engine::exact(), &phi, k(2), Some(&b))
            .unwrap()
            .holds
    );
}

#[test]
fn auto_box_radius() {
    let phi = sym(2, &[(&[4, -1], 1)]);
    assert_eq!(auto_box(2, &[&phi], k(3), 1).unwrap(), cube(2, 7));
    assert_eq!(auto_box(2, &[], k(3), 3).unwrap(), cube(2, 14));
}
