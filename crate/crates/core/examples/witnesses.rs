//! Witnesses that a nonzero `S_φ` is not hyponormal, not an isometry, not
//! idempotent, and determines `φ`.

use slant_hankel::analysis::{
    hyponormality_witness, idempotence_witness, injectivity_check, isometry_defect,
};
use slant_hankel::lattice::{IndexBox, SlantOrder};
use slant_hankel::operator::Engine;
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let k = SlantOrder::new(3).unwrap();
    let e = Engine::exact();
    let phi = LaurentSymbol::parse("(0,1) : 1 0\n(-1,2) : 1/3 1\n(2,0) : -2 0\n", None).unwrap();
    println!("phi = {phi}, k = {k}");

    let w = hyponormality_witness(&e, &phi, k, &IndexBox::cube_i64(2, 1).unwrap())
        .unwrap()
        .unwrap();
    println!(
        "hyponormality: |S* e_{0}|^2 = {1} > {2} = |S e_{0}|^2",
        w.m, w.adjoint_norm_sq, w.norm_sq
    );

    let r = isometry_defect(&e, &phi, k, &IndexBox::cube_i64(2, 3).unwrap()).unwrap();
    println!(
        "isometry: | |S e_m|^2 - 1 | = {} at m = {}; S S* = M_V(|phi|^2) {}",
        r.max_defect, r.at, r.identity.holds
    );

    let ce = idempotence_witness(&e, &phi, k).unwrap().unwrap();
    println!(
        "idempotence: S^2 e_{0} = {1}, S e_{0} = {2}",
        ce.m, ce.lhs, ce.rhs
    );

    let inj = injectivity_check(&e, &phi, k, None).unwrap();
    println!(
        "recovered from column 0 over {}: {} ({})",
        inj.cols, inj.recovered, inj.holds
    );

    let zero = LaurentSymbol::zero(2);
    let none = hyponormality_witness(&e, &zero, k, &IndexBox::cube_i64(2, 2).unwrap()).unwrap();
    println!(
        "phi = 0: hyponormality witness {:?}",
        none.map(|w| w.m.to_string())
    );
}
