//! `M_φ S_ψ = S_{φ(z^{−k}) ψ}` checked on a box, and a multiplier that
//! commutes with `S_φ`.

use slant_hankel::analysis::auto_box;
use slant_hankel::lattice::SlantOrder;
use slant_hankel::operator::{compose, Engine, OperatorWord};
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let k = SlantOrder::new(3).unwrap();
    let phi = LaurentSymbol::parse("(1,0) : 1 0\n(0,-1) : 2 1\n", None).unwrap();
    let psi = LaurentSymbol::parse("(0,0) : 1 0\n(2,1) : -3 0\n", None).unwrap();
    let e = Engine::exact();

    let lhs = compose(
        &OperatorWord::mul(phi.clone()),
        &OperatorWord::slant_hankel(&psi, k),
    )
    .unwrap();
    let sym = phi.substitute_neg_k(k).checked_mul(&psi).unwrap();
    let rhs = OperatorWord::slant_hankel(&sym, k);
    let b = auto_box(2, &[&phi, &psi], k, 1).unwrap();
    let cmp = e.equal_on_box(&lhs, &rhs, &b).unwrap();
    println!("phi(z^-k) psi = {sym}");
    println!(
        "M_phi S_psi = S_(phi(z^-k) psi) on {b}: {} ({} columns)",
        cmp.equal, cmp.checked
    );

    // S_phi M_psi = M_psi S_phi needs phi psi = phi(z^-k) psi(z^-k); a
    // constant psi satisfies it, z_1 does not
    let s = OperatorWord::slant_hankel(&phi, k);
    for text in ["(0,0) : 5 0\n", "(1,0) : 1 0\n"] {
        let m = OperatorWord::mul(LaurentSymbol::parse(text, None).unwrap());
        let c = e
            .equal_on_box(&s.then_apply(&m).unwrap(), &m.then_apply(&s).unwrap(), &b)
            .unwrap();
        match c.counterexample {
            None => println!("S_phi commutes with {m}"),
            Some(ce) => {
                let (at, l, r) = ce.first_difference();
                println!(
                    "S_phi does not commute with {m}: at e_{} coefficient {at} is {l} vs {r}",
                    ce.m
                );
            }
        }
    }
}
