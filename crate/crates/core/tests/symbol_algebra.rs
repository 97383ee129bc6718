mod common;

use common::*;
use proptest::prelude::*;
use slant_hankel::lattice::MultiIndex;
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::scalar::Scalar;
use slant_hankel::symbol::LaurentSymbol;

proptest! {
    #[test]
    fn ring_axioms(a in symbol(2, 3, 4), b in symbol(2, 3, 4), c in symbol(2, 3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentSymbol::one(2), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), LaurentSymbol::zero(2));
    }

    #[test]
    fn no_zero_divisors(a in symbol(2, 3, 4), b in symbol(2, 3, 4)) {
        prop_assert_eq!((&a * &b).is_zero(), a.is_zero() || b.is_zero());
    }

    #[test]
    fn conjugation(a in symbol(3, 2, 4), b in symbol(3, 2, 4), m in index(3, 3)) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.conjugate().coeff(&-m.clone()), a.coeff(&m).conj());
    }

    #[test]
    fn substitution_is_a_homomorphism(k in order(), a in symbol(2, 3, 4), b in symbol(2, 3, 4)) {
        prop_assert_eq!((&a * &b).substitute_neg_k(k), &a.substitute_neg_k(k) * &b.substitute_neg_k(k));
        prop_assert_eq!((&a + &b).substitute_neg_k(k), &a.substitute_neg_k(k) + &b.substitute_neg_k(k));
        prop_assert_eq!(a.substitute_neg_k(k).l2_norm_sq(), a.l2_norm_sq());
    }

    #[test]
    fn slant_transform_is_v_of_phi(k in order(), phi in symbol(2, 4, 5)) {
        // V(φ) = V M_φ e_0
        let n = 2;
        let img = Engine::exact().apply_basis(&OperatorWord::slant_hankel(&phi, k), &MultiIndex::zero(n)).unwrap();
        prop_assert_eq!(phi.slant_transform(k), img);
    }

    #[test]
    fn modulus_squared_constant_term(phi in symbol(2, 3, 5)) {
        let sq = &phi * &phi.conjugate();
        prop_assert_eq!(sq.coeff(&MultiIndex::zero(2)), Scalar::real(phi.l2_norm_sq()));
        prop_assert_eq!(sq.conjugate(), sq);
    }

    #[test]
    fn inner_product_matches_coefficients(a in symbol(1, 4, 5), b in symbol(1, 4, 5)) {
        let mut acc = Scalar::ZERO;
        for (m, x) in a.terms() {
            acc += &(x * &b.coeff(m).conj());
        }
        prop_assert_eq!(a.inner(&b), acc);
    }

    #[test]
    fn symbol_text_round_trip(phi in symbol(3, 3, 5)) {
        let text = phi.to_symbol_text();
        prop_assert_eq!(LaurentSymbol::parse(&text, Some(3)).unwrap(), phi);
    }

    #[test]
    fn shift_is_monomial_product(phi in symbol(2, 3, 4), m in index(2, 3)) {
        prop_assert_eq!(phi.shift(&m), &phi * &LaurentSymbol::basis(m.clone()));
    }
}

#[test]
fn worked_substitution() {
    let phi = sym(2, &[(&[1, 0], 2), (&[0, -1], 3)]);
    assert_eq!(
        phi.substitute_neg_k(k(3)),
        sym(2, &[(&[-3, 0], 2), (&[0, 3], 3)])
    );
    assert_eq!(phi.slant_transform(k(2)), LaurentSymbol::zero(2));
    let psi = sym(1, &[(&[4], 5), (&[-2], 1), (&[3], 7)]);
    assert_eq!(psi.slant_transform(k(2)), sym(1, &[(&[-2], 5), (&[1], 1)]));
}

#[test]
fn parse_rejects_bad_input() {
    assert!(LaurentSymbol::parse("(1,2) : 1 0\n(1) : 1 0\n", None).is_err());
    assert!(LaurentSymbol::parse("(1) : x 0\n", None).is_err());
    assert!(LaurentSymbol::parse("(1) : 1 0\n", Some(2)).is_err());
    let phi = LaurentSymbol::parse("# comment\n(1) : 1/2 -3/4\n(1) : 1/2 0\n", None).unwrap();
    assert_eq!(
        phi.coeff(&MultiIndex::from_i64s(&[1])),
        Scalar::from_ratios(1, 1, -3, 4)
    );
}
