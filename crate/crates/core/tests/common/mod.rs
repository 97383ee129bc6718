#![allow(dead_code)]

use proptest::prelude::*;
use slant_hankel::lattice::{IndexBox, MultiIndex, SlantOrder};
use slant_hankel::scalar::Scalar;
use slant_hankel::symbol::LaurentSymbol;

pub fn order() -> impl Strategy<Value = SlantOrder> {
    (2i64..=3).prop_map(|k| SlantOrder::new(k).unwrap())
}

pub fn index(n: usize, r: i64) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(-r..=r, n).prop_map(|c| MultiIndex::from_i64s(&c))
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| Scalar::from_ratios(a, b, c, d))
}

pub fn symbol(n: usize, r: i64, max_terms: usize) -> impl Strategy<Value = LaurentSymbol> {
    prop::collection::vec((index(n, r), scalar()), 0..=max_terms)
        .prop_map(move |terms| LaurentSymbol::from_terms(n, terms).unwrap())
}

pub fn sym(n: usize, terms: &[(&[i64], i64)]) -> LaurentSymbol {
    LaurentSymbol::from_terms(
        n,
        terms
            .iter()
            .map(|(m, c)| (MultiIndex::from_i64s(m), Scalar::from_int(*c))),
    )
    .unwrap()
}

pub fn k(v: i64) -> SlantOrder {
    SlantOrder::new(v).unwrap()
}

pub fn cube(n: usize, r: i64) -> IndexBox {
    IndexBox::cube_i64(n, r).unwrap()
}

/// Coefficient of `e_{m'}` in `φ e_m` pushed through the textbook slant
/// Hankel formula, by brute force over the support.
pub fn brute_entry(phi: &LaurentSymbol, k: SlantOrder, m: &MultiIndex, m2: &MultiIndex) -> Scalar {
    let kk = i64::from(k.get());
    let target: Vec<i64> = m2
        .coords()
        .iter()
        .map(|c| -kk * i64::try_from(c.clone()).unwrap())
        .collect();
    let mut acc = Scalar::ZERO;
    for (r, a) in phi.terms() {
        let hit = r
            .coords()
            .iter()
            .zip(m.coords())
            .zip(&target)
            .all(|((ri, mi), ti)| i64::try_from(ri + mi).unwrap() == *ti);
        if hit {
            acc += a;
        }
    }
    acc
}
