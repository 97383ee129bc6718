mod common;

use common::*;
use proptest::prelude::*;
use slant_hankel::operator::{Engine, OperatorWord};
use slant_hankel::word_syntax::{parse_word, word_to_text};

fn word(n: usize) -> impl Strategy<Value = OperatorWord> {
    let letter = prop_oneof![
        order().prop_map(move |k| OperatorWord::slant_v(n, k)),
        order().prop_map(move |k| OperatorWord::slant_v_adj(n, k)),
        order().prop_map(move |k| OperatorWord::slant_w(n, k)),
        order().prop_map(move |k| OperatorWord::slant_w_adj(n, k)),
        symbol(n, 3, 3).prop_map(OperatorWord::mul),
        (order(), symbol(n, 2, 3)).prop_map(|(k, phi)| OperatorWord::slant_hankel(&phi, k)),
    ];
    prop::collection::vec(letter, 0..5).prop_map(move |ls| {
        ls.iter().fold(OperatorWord::identity(n), |acc, w| {
            acc.then_apply(w).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(w in (1usize..=3).prop_flat_map(word)) {
        let text = word_to_text(&w);
        prop_assert_eq!(parse_word(&text, Some(w.dim()), None).unwrap(), w);
    }
}

#[test]
fn nesting_reads_right_to_left() {
    let phi = sym(1, &[(&[1], 2), (&[-1], 1)]);
    let s = OperatorWord::slant_hankel(&phi, k(2));
    let parsed = parse_word("(V 2 (mul {(1) : 2 0; (-1) : 1 0}))", None, None).unwrap();
    assert_eq!(parsed, s);
    let seq = parse_word("(seq (V 2) (mul {(1) : 2 0; (-1) : 1 0}))", None, None).unwrap();
    assert_eq!(seq, s);
    let sugar = parse_word("(S 2 {(1) : 2 0 ; (-1) : 1 0})", None, None).unwrap();
    assert_eq!(sugar, s);
}

#[test]
fn adjoint_and_comments() {
    let text = "; adjoint of V\n(adj (V 3))\n";
    let w = parse_word(text, Some(2), None).unwrap();
    assert_eq!(w, Engine::exact().adjoint(&OperatorWord::slant_v(2, k(3))));
}

#[test]
fn symbol_files_resolve_relative_to_base() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("phi.sym"), "(1,0) : 1 0\n(0,-1) : 0 1\n").unwrap();
    let w = parse_word("(A 2 \"phi.sym\")", None, Some(dir.path())).unwrap();
    let phi =
        slant_hankel::symbol::LaurentSymbol::parse("(1,0) : 1 0\n(0,-1) : 0 1\n", None).unwrap();
    assert_eq!(w, OperatorWord::slant_toeplitz(&phi, k(2)));
}

#[test]
fn errors_carry_line_numbers() {
    let err = parse_word("(seq\n (V 2)\n (V 1))", None, None)
        .unwrap_err()
        .to_string();
    assert!(err.contains('3') || err.contains("order"), "{err}");
    let err = parse_word("(seq (V 2)\n (bogus))", None, None)
        .unwrap_err()
        .to_string();
    assert!(err.starts_with("line 2"), "{err}");
    assert!(parse_word("(V 2", None, None).is_err());
    assert!(parse_word("(mul {(1,2) : 1 0}) ", Some(3), None).is_err());
}
