//! Exports a window of an operator word given in text form as CSV and JSON.
//!
//! ```text
//! cargo run --example matrix_export -- "(adj (S 2 {(1,0) : 1 0; (0,1) : 0 1}))"
//! ```

use slant_hankel::lattice::IndexBox;
use slant_hankel::operator::Engine;
use slant_hankel::window::MatrixWindow;
use slant_hankel::word_syntax::{parse_word, word_to_text};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(adj (S 2 {(1,0) : 1 0; (-1,1) : 2 -1}))".to_string());
    let word = parse_word(&text, None, None).expect("valid word");
    let n = word.dim();
    let rows = IndexBox::cube_i64(n, 1).unwrap();
    let cols = IndexBox::cube_i64(n, 2).unwrap();
    let wnd = Engine::exact().matrix_window(&word, &rows, &cols).unwrap();

    println!("word: {}", word_to_text(&word));
    print!("{}", wnd.to_csv().unwrap());
    let json = wnd.to_json();
    assert_eq!(MatrixWindow::from_json(&json).unwrap(), wnd);
    println!(
        "json: {} bytes, {} nonzero entries",
        json.len(),
        wnd.entries()
            .iter()
            .flatten()
            .filter(|a| !a.is_zero())
            .count()
    );
}
