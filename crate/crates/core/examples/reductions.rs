//! The word identities `V (S_φ M_{z^t})* = M_χ`, `V² (S_φ S_ψ)* = M_Λ` and
//! `S_φ S_φ* = M_{V(|φ|²)}`.

use slant_hankel::analysis::{auto_box, mul_reduction_check};
use slant_hankel::lattice::{MultiIndex, SlantOrder};
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let k = SlantOrder::new(2).unwrap();
    let e = Engine::exact();
    let phi = LaurentSymbol::parse("(1) : 1 0\n(-2) : 3 -1\n(0) : 1/2 0\n", None).unwrap();
    let psi = LaurentSymbol::parse("(3) : 1 1\n", None).unwrap();
    let b = auto_box(1, &[&phi, &psi], k, 2).unwrap();
    for t in 1..4 {
        let r = mul_reduction_check(&e, &phi, &psi, &MultiIndex::from_i64s(&[t]), k, &b).unwrap();
        let chi = phi
            .shift(&MultiIndex::from_i64s(&[t]))
            .conjugate()
            .slant_transform(k);
        println!(
            "t = {t}: chi = {chi}  chi identity {}  Lambda identity {}",
            r.chi.holds, r.lambda.holds
        );
    }
    let s = OperatorWord::slant_hankel(&phi, k);
    let lhs = s.then_apply(&e.adjoint(&s)).unwrap();
    let ups = phi
        .checked_mul(&phi.conjugate())
        .unwrap()
        .slant_transform(k);
    let ok = e
        .equal_on_box(&lhs, &OperatorWord::mul(ups.clone()), &b)
        .unwrap()
        .equal;
    println!("V(|phi|^2) = {ups}; S S* = M_V(|phi|^2) on {b}: {ok}");
}
