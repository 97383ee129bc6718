//! `S_φS_ψ − S_ψS_φ = V² M_σ` with `σ = φ(z^{−k})ψ − ψ(z^{−k})φ`.

use slant_hankel::analysis::{auto_box, commutator_check};
use slant_hankel::lattice::SlantOrder;
use slant_hankel::operator::Engine;
use slant_hankel::scalar::Scalar;
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let k = SlantOrder::new(2).unwrap();
    let e = Engine::exact();
    let phi = LaurentSymbol::parse("(1) : 1 0\n(-1) : 0 2\n", None).unwrap();
    let pairs = [
        (
            "phi, z^2",
            phi.clone(),
            LaurentSymbol::parse("(2) : 1 0\n", None).unwrap(),
        ),
        ("phi, phi", phi.clone(), phi.clone()),
        (
            "phi, (3/2) phi",
            phi.clone(),
            phi.scale(&Scalar::from_ratios(3, 2, 0, 1)),
        ),
        (
            "1, 4",
            LaurentSymbol::one(1),
            LaurentSymbol::constant(1, Scalar::from_int(4)),
        ),
    ];
    for (label, a, b) in pairs {
        let bx = auto_box(1, &[&a, &b], k, 2).unwrap();
        let r = commutator_check(&e, &a, &b, k, &bx).unwrap();
        println!(
            "{label:<16} sigma = {:<40} reduction {}  commute {}",
            r.sigma.to_string(),
            r.reduction.holds,
            r.commute.holds
        );
    }
}
