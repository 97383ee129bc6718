//! The four slant generators on a few basis vectors, and the co-isometry
//! relations `V V* = I`, `V* V = P_e`.
//!
//! ```text
//! cargo run --example generator_algebra -- [k] [n]
//! ```

use slant_hankel::lattice::{IndexBox, MultiIndex, SlantOrder};
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::symbol::LaurentSymbol;

fn main() {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let k = SlantOrder::new(args.first().copied().unwrap_or(2)).expect("k >= 2");
    let n = args.get(1).copied().unwrap_or(2) as usize;
    let e = Engine::exact();

    let gens = [
        ("V", OperatorWord::slant_v(n, k)),
        ("V*", OperatorWord::slant_v_adj(n, k)),
        ("W", OperatorWord::slant_w(n, k)),
        ("W*", OperatorWord::slant_w_adj(n, k)),
    ];
    let mut samples = vec![MultiIndex::zero(n), MultiIndex::unit(1, n).unwrap()];
    samples.push(
        MultiIndex::unit(1, n)
            .unwrap()
            .scale_i64(-2 * i64::from(k.get())),
    );
    for m in &samples {
        for (name, g) in &gens {
            let img = e.apply_basis(g, m).unwrap();
            let shown = if img.is_zero() {
                "0".to_string()
            } else {
                img.to_string()
            };
            println!("{name:>2} e_{m} = {shown}");
        }
    }

    let b = IndexBox::cube_i64(n, 4).unwrap();
    let v = &gens[0].1;
    let va = &gens[1].1;
    let vva = v.then_apply(va).unwrap();
    let vav = va.then_apply(v).unwrap();
    let mut fixed = 0;
    for m in b.iter() {
        let em = LaurentSymbol::basis(m.clone());
        assert_eq!(e.apply_basis(&vva, &m).unwrap(), em);
        if e.apply_basis(&vav, &m).unwrap() == em {
            fixed += 1;
        }
    }
    println!(
        "V V* = I on {b} ({} vectors); V* V fixes {fixed} of them (those with k | m)",
        b.len()
    );
}
