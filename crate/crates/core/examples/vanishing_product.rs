//! `S_φ S_ψ = 0` exactly when `φ(z^{−k}) ψ = 0`, and `S_1 S_φ` is nonzero on
//! a residue system modulo `k²` unless `φ = 0`.

use slant_hankel::analysis::{auto_box, center_out, product_vanishing_check, residue_box};
use slant_hankel::lattice::SlantOrder;
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let k = SlantOrder::new(2).unwrap();
    let e = Engine::exact();
    let phi = LaurentSymbol::parse("(1,1) : 1 0\n(0,-1) : -1 0\n", None).unwrap();
    let zero = LaurentSymbol::zero(2);
    for (a, b) in [(&phi, &phi), (&phi, &zero), (&zero, &phi)] {
        let bx = auto_box(2, &[a, b], k, 2).unwrap();
        let r = product_vanishing_check(&e, a, b, k, &bx).unwrap();
        println!(
            "phi = {a}, psi = {b}: symbol zero {}, operator zero {}",
            r.symbol_zero, r.operator_zero
        );
    }
    let s1 = OperatorWord::slant_hankel(&LaurentSymbol::one(2), k);
    let word = s1.then_apply(&OperatorWord::slant_hankel(&phi, k)).unwrap();
    let residues = center_out(&residue_box(2, &k.pow(2)).unwrap());
    let (m, img) = e
        .first_nonzero_image(&word, &residues)
        .unwrap()
        .expect("nonzero");
    println!("S_1 S_phi e_{m} = {img}");
}
