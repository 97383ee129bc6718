//! Matrix window of a slant Hankel operator and the entry recurrence
//! `entry(m'+ε_j, m−kε_j) = entry(m', m)`.

use slant_hankel::analysis::{is_slant_hankel_window, slant_hankel_matrix, WindowVerdict};
use slant_hankel::lattice::{IndexBox, SlantOrder};
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let k = SlantOrder::new(2).unwrap();
    let phi =
        LaurentSymbol::parse("(0) : 1 0\n(1) : 2 0\n(-2) : 0 1\n(3) : -1/2 0\n", None).unwrap();
    let rows = IndexBox::cube_i64(1, 2).unwrap();
    let cols = IndexBox::cube_i64(1, 4).unwrap();

    let s = OperatorWord::slant_hankel(&phi, k);
    let wnd = Engine::exact().matrix_window(&s, &rows, &cols).unwrap();
    println!("S_phi for phi = {phi}, k = {k}");
    print!("{}", wnd.to_csv().unwrap());
    assert_eq!(wnd, slant_hankel_matrix(&phi, k, &rows, &cols).unwrap());

    let c = is_slant_hankel_window(&wnd, k);
    println!("recurrence: {:?} over {} pairs", c.verdict, c.pairs_checked);

    // the slant Toeplitz operator with the same symbol is not slant Hankel
    let a = OperatorWord::slant_toeplitz(&phi, k);
    let c = is_slant_hankel_window(&Engine::exact().matrix_window(&a, &rows, &cols).unwrap(), k);
    assert_eq!(c.verdict, WindowVerdict::Fails);
    let v = &c.violations[0];
    println!(
        "A_phi: {:?}, {} violations, first at m={} m'={} j={}: {} vs {}",
        c.verdict,
        c.violation_count,
        v.m.as_ref().unwrap(),
        v.m_prime.as_ref().unwrap(),
        v.j.unwrap(),
        v.lhs,
        v.rhs
    );
}
