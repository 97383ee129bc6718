//! Text form of operator words.
//!
//! ```text
//! word := (V k [word]) | (V* k [word]) | (W k [word]) | (W* k [word])
//!       | (mul SYM [word]) | (S k SYM [word]) | (A k SYM [word])
//!       | (adj word) | (seq word ...) | (id)
//! SYM  := "path/to/file.sym" | { (r_1,...,r_n) : re im ; ... }
//! ```
//!
//! `(L x)` means `L ∘ x`, so `(V 2 (mul "phi.sym"))` is `S_φ`. In
//! `(seq a b c)` the rightmost word acts first. Parsing yields a [`WordExpr`];
//! [`WordExpr::bind`] resolves symbol files and fixes the dimension.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::lattice::SlantOrder;
use crate::operator::{adjoint, Generator, OperatorWord};
use crate::symbol::{parse_symbol_terms, LaurentSymbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlantLetter {
    V,
    VAdj,
    W,
    WAdj,
}

impl SlantLetter {
    fn keyword(self) -> &'static str {
        match self {
            SlantLetter::V => "V",
            SlantLetter::VAdj => "V*",
            SlantLetter::W => "W",
            SlantLetter::WAdj => "W*",
        }
    }

    fn generator(self, k: SlantOrder) -> Generator {
        match self {
            SlantLetter::V => Generator::SlantV(k),
            SlantLetter::VAdj => Generator::SlantVAdj(k),
            SlantLetter::W => Generator::SlantW(k),
            SlantLetter::WAdj => Generator::SlantWAdj(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolRef {
    Path(String),
    /// Inline body in symbol-file syntax with `;` separating terms.
    Inline(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordExpr {
    Identity,
    Slant {
        letter: SlantLetter,
        k: i64,
        inner: Option<Box<WordExpr>>,
    },
    Mul {
        symbol: SymbolRef,
        inner: Option<Box<WordExpr>>,
    },
    SlantHankel {
        k: i64,
        symbol: SymbolRef,
        inner: Option<Box<WordExpr>>,
    },
    SlantToeplitz {
        k: i64,
        symbol: SymbolRef,
        inner: Option<Box<WordExpr>>,
    },
    Adjoint(Box<WordExpr>),
    Seq(Vec<WordExpr>),
}

impl WordExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let expr = p.expr()?;
        if let Some(t) = p.tokens.get(p.pos) {
            return Err(Error::parse(
                t.line,
                format!("unexpected {} after word", t.kind),
            ));
        }
        Ok(expr)
    }

    /// Resolves symbols and builds the word. Relative paths are taken from
    /// `base_dir`. The dimension comes from the symbols; `dim_hint` is used
    /// when the word has none and must agree otherwise.
    pub fn bind(&self, dim_hint: Option<usize>, base_dir: Option<&Path>) -> Result<OperatorWord> {
        let mut symbols = Vec::new();
        self.collect_symbols(&mut symbols);
        let mut resolved = Vec::with_capacity(symbols.len());
        let mut dim = dim_hint;
        for s in symbols {
            let sym = load_symbol(s, base_dir)?;
            if let Some(sym) = &sym {
                match dim {
                    Some(n) => Error::check_dim(n, sym.dim())?,
                    None => dim = Some(sym.dim()),
                }
            }
            resolved.push(sym);
        }
        let n = dim.unwrap_or(1);
        let mut next = resolved.into_iter();
        self.build(n, &mut next)
    }

    fn collect_symbols<'a>(&'a self, out: &mut Vec<&'a SymbolRef>) {
        match self {
            WordExpr::Identity => {}
            WordExpr::Slant { inner, .. } => {
                if let Some(i) = inner {
                    i.collect_symbols(out);
                }
            }
            WordExpr::Mul { symbol, inner }
            | WordExpr::SlantHankel { symbol, inner, .. }
            | WordExpr::SlantToeplitz { symbol, inner, .. } => {
                out.push(symbol);
                if let Some(i) = inner {
                    i.collect_symbols(out);
                }
            }
            WordExpr::Adjoint(w) => w.collect_symbols(out),
            WordExpr::Seq(ws) => ws.iter().for_each(|w| w.collect_symbols(out)),
        }
    }

    fn build(
        &self,
        n: usize,
        syms: &mut impl Iterator<Item = Option<LaurentSymbol>>,
    ) -> Result<OperatorWord> {
        match self {
            WordExpr::Identity => Ok(OperatorWord::identity(n)),
            WordExpr::Slant { letter, k, inner } => {
                let k = SlantOrder::new(*k)?;
                let head = OperatorWord::new(n, vec![letter.generator(k)])?;
                compose_inner(head, inner, n, syms)
            }
            WordExpr::Mul { inner, .. } => {
                let phi = take(n, syms);
                compose_inner(
                    OperatorWord::new(n, vec![Generator::Mul(phi)])?,
                    inner,
                    n,
                    syms,
                )
            }
            WordExpr::SlantHankel { k, inner, .. } => {
                let k = SlantOrder::new(*k)?;
                let phi = take(n, syms);
                compose_inner(OperatorWord::slant_hankel(&phi, k), inner, n, syms)
            }
            WordExpr::SlantToeplitz { k, inner, .. } => {
                let k = SlantOrder::new(*k)?;
                let phi = take(n, syms);
                compose_inner(OperatorWord::slant_toeplitz(&phi, k), inner, n, syms)
            }
            WordExpr::Adjoint(w) => Ok(adjoint(&w.build(n, syms)?)),
            WordExpr::Seq(ws) => {
                let mut out = OperatorWord::identity(n);
                for w in ws {
                    out = out.then_apply(&w.build(n, syms)?)?;
                }
                Ok(out)
            }
        }
    }

    /// Canonical text of a bound word: one nested form per letter, symbols
    /// written inline.
    pub fn from_word(word: &OperatorWord) -> WordExpr {
        let mut expr: Option<Box<WordExpr>> = None;
        for g in word.letters().iter().rev() {
            let inner = expr.take();
            let e = match g {
                Generator::Mul(phi) => WordExpr::Mul {
                    symbol: SymbolRef::Inline(inline_body(phi)),
                    inner,
                },
                Generator::SlantV(k) => slant(SlantLetter::V, *k, inner),
                Generator::SlantVAdj(k) => slant(SlantLetter::VAdj, *k, inner),
                Generator::SlantW(k) => slant(SlantLetter::W, *k, inner),
                Generator::SlantWAdj(k) => slant(SlantLetter::WAdj, *k, inner),
            };
            expr = Some(Box::new(e));
        }
        expr.map(|b| *b).unwrap_or(WordExpr::Identity)
    }
}

fn take(n: usize, syms: &mut impl Iterator<Item = Option<LaurentSymbol>>) -> LaurentSymbol {
    syms.next()
        .expect("one resolved symbol per reference")
        .unwrap_or_else(|| LaurentSymbol::zero(n))
}

fn compose_inner(
    head: OperatorWord,
    inner: &Option<Box<WordExpr>>,
    n: usize,
    syms: &mut impl Iterator<Item = Option<LaurentSymbol>>,
) -> Result<OperatorWord> {
    match inner {
        Some(w) => head.then_apply(&w.build(n, syms)?),
        None => Ok(head),
    }
}

fn slant(letter: SlantLetter, k: SlantOrder, inner: Option<Box<WordExpr>>) -> WordExpr {
    WordExpr::Slant {
        letter,
        k: i64::from(k.get()),
        inner,
    }
}

fn inline_body(phi: &LaurentSymbol) -> String {
    phi.to_symbol_text().lines().collect::<Vec<_>>().join(" ; ")
}

/// `None` stands for an empty inline symbol, whose dimension is inherited.
fn load_symbol(s: &SymbolRef, base_dir: Option<&Path>) -> Result<Option<LaurentSymbol>> {
    match s {
        SymbolRef::Inline(body) => {
            let text = body.replace(';', "\n");
            if parse_symbol_terms(&text)?.is_empty() {
                Ok(None)
            } else {
                LaurentSymbol::parse(&text, None).map(Some)
            }
        }
        SymbolRef::Path(p) => {
            let path: PathBuf = match base_dir {
                Some(d) if Path::new(p).is_relative() => d.join(p),
                _ => PathBuf::from(p),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            if parse_symbol_terms(&text)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
                .is_empty()
            {
                Ok(None)
            } else {
                LaurentSymbol::parse(&text, None)
                    .map(Some)
                    .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
            }
        }
    }
}

/// Parses and binds in one step.
pub fn parse_word(
    text: &str,
    dim_hint: Option<usize>,
    base_dir: Option<&Path>,
) -> Result<OperatorWord> {
    WordExpr::parse(text)?.bind(dim_hint, base_dir)
}

pub fn word_to_text(word: &OperatorWord) -> String {
    WordExpr::from_word(word).to_string()
}

impl fmt::Display for SymbolRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolRef::Path(p) => write!(f, "{p:?}"),
            SymbolRef::Inline(body) if body.trim().is_empty() => f.write_str("{}"),
            SymbolRef::Inline(body) => write!(f, "{{ {} }}", body.trim()),
        }
    }
}

fn write_inner(f: &mut fmt::Formatter<'_>, inner: &Option<Box<WordExpr>>) -> fmt::Result {
    match inner {
        Some(w) => write!(f, " {w})"),
        None => f.write_str(")"),
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Identity => f.write_str("(id)"),
            WordExpr::Slant { letter, k, inner } => {
                write!(f, "({} {k}", letter.keyword())?;
                write_inner(f, inner)
            }
            WordExpr::Mul { symbol, inner } => {
                write!(f, "(mul {symbol}")?;
                write_inner(f, inner)
            }
            WordExpr::SlantHankel { k, symbol, inner } => {
                write!(f, "(S {k} {symbol}")?;
                write_inner(f, inner)
            }
            WordExpr::SlantToeplitz { k, symbol, inner } => {
                write!(f, "(A {k} {symbol}")?;
                write_inner(f, inner)
            }
            WordExpr::Adjoint(w) => write!(f, "(adj {w})"),
            WordExpr::Seq(ws) => {
                f.write_str("(seq")?;
                for w in ws {
                    write!(f, " {w}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Open,
    Close,
    Str(String),
    Braced(String),
    Atom(String),
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Open => f.write_str("'('"),
            TokenKind::Close => f.write_str("')'"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::Braced(_) => f.write_str("inline symbol"),
            TokenKind::Atom(a) => write!(f, "`{a}`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                // comment to end of line
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' | ')' => {
                chars.next();
                let kind = if c == '(' {
                    TokenKind::Open
                } else {
                    TokenKind::Close
                };
                out.push(Token { kind, line });
            }
            '"' => {
                chars.next();
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e) => s.push(e),
                            None => return Err(Error::parse(start, "unterminated string")),
                        },
                        Some(ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                        }
                        None => return Err(Error::parse(start, "unterminated string")),
                    }
                }
                out.push(Token {
                    kind: TokenKind::Str(s),
                    line: start,
                });
            }
            '{' => {
                chars.next();
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('}') => break,
                        Some(ch) => {
                            if ch == '\n' {
                                line += 1;
                                s.push(';');
                            } else {
                                s.push(ch);
                            }
                        }
                        None => return Err(Error::parse(start, "unterminated inline symbol")),
                    }
                }
                out.push(Token {
                    kind: TokenKind::Braced(s),
                    line: start,
                });
            }
            '}' => return Err(Error::parse(line, "unmatched '}'")),
            _ => {
                let mut s = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_whitespace() || "(){}\";".contains(ch) {
                        break;
                    }
                    s.push(ch);
                    chars.next();
                }
                out.push(Token {
                    kind: TokenKind::Atom(s),
                    line,
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn last_line(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.line)
    }

    fn next(&mut self) -> Result<Token> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(self.last_line(), "unexpected end of word"))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek_is_close(&self) -> bool {
        matches!(
            self.tokens.get(self.pos),
            Some(Token {
                kind: TokenKind::Close,
                ..
            })
        )
    }

    fn expect_close(&mut self) -> Result<()> {
        let t = self.next()?;
        match t.kind {
            TokenKind::Close => Ok(()),
            other => Err(Error::parse(t.line, format!("expected ')', found {other}"))),
        }
    }

    fn order(&mut self) -> Result<i64> {
        let t = self.next()?;
        match &t.kind {
            TokenKind::Atom(a) => a
                .parse::<i64>()
                .map_err(|_| Error::parse(t.line, format!("expected slant order, found `{a}`"))),
            other => Err(Error::parse(
                t.line,
                format!("expected slant order, found {other}"),
            )),
        }
    }

    fn symbol(&mut self) -> Result<SymbolRef> {
        let t = self.next()?;
        match t.kind {
            TokenKind::Str(s) => Ok(SymbolRef::Path(s)),
            TokenKind::Braced(b) => {
                parse_symbol_terms(&b.replace(';', "\n"))
                    .map_err(|e| Error::parse(t.line, e.to_string()))?;
                Ok(SymbolRef::Inline(b))
            }
            other => Err(Error::parse(
                t.line,
                format!("expected symbol, found {other}"),
            )),
        }
    }

    fn optional_inner(&mut self) -> Result<Option<Box<WordExpr>>> {
        if self.peek_is_close() {
            self.pos += 1;
            return Ok(None);
        }
        let inner = self.expr()?;
        self.expect_close()?;
        Ok(Some(Box::new(inner)))
    }

    fn expr(&mut self) -> Result<WordExpr> {
        let t = self.next()?;
        if t.kind != TokenKind::Open {
            return Err(Error::parse(
                t.line,
                format!("expected '(', found {}", t.kind),
            ));
        }
        let head = self.next()?;
        let TokenKind::Atom(name) = &head.kind else {
            return Err(Error::parse(
                head.line,
                format!("expected operator name, found {}", head.kind),
            ));
        };
        let letter = match name.as_str() {
            "V" => Some(SlantLetter::V),
            "V*" => Some(SlantLetter::VAdj),
            "W" => Some(SlantLetter::W),
            "W*" => Some(SlantLetter::WAdj),
            _ => None,
        };
        if let Some(letter) = letter {
            let k = self.order()?;
            let inner = self.optional_inner()?;
            return Ok(WordExpr::Slant { letter, k, inner });
        }
        match name.as_str() {
            "id" => {
                self.expect_close()?;
                Ok(WordExpr::Identity)
            }
            "mul" => {
                let symbol = self.symbol()?;
                let inner = self.optional_inner()?;
                Ok(WordExpr::Mul { symbol, inner })
            }
            "S" | "A" => {
                let k = self.order()?;
                let symbol = self.symbol()?;
                let inner = self.optional_inner()?;
                Ok(if name == "S" {
                    WordExpr::SlantHankel { k, symbol, inner }
                } else {
                    WordExpr::SlantToeplitz { k, symbol, inner }
                })
            }
            "adj" => {
                let w = self.expr()?;
                self.expect_close()?;
                Ok(WordExpr::Adjoint(Box::new(w)))
            }
            "seq" => {
                let mut ws = Vec::new();
                while !self.peek_is_close() {
                    ws.push(self.expr()?);
                }
                self.pos += 1;
                Ok(WordExpr::Seq(ws))
            }
            other => Err(Error::parse(
                head.line,
                format!("unknown operator `{other}`"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::MultiIndex;
    use crate::operator::apply;
    use crate::scalar::Scalar;
    use crate::symbol::FourierVector;

    fn k2() -> SlantOrder {
        SlantOrder::new(2).unwrap()
    }

    #[test]
    fn bare_slant_letters() {
        let v = parse_word("(V 2)", Some(1), None).unwrap();
        let out = apply(&v, &FourierVector::basis(MultiIndex::from_i64s(&[4]))).unwrap();
        assert_eq!(out, FourierVector::basis(MultiIndex::from_i64s(&[-2])));
        let va = parse_word("(V* 2)", Some(1), None).unwrap();
        let out = apply(&va, &FourierVector::basis(MultiIndex::from_i64s(&[1]))).unwrap();
        assert_eq!(out, FourierVector::basis(MultiIndex::from_i64s(&[-2])));
    }

    #[test]
    fn inline_slant_hankel_matches_constructor() {
        let w = parse_word("(S 2 { (1,0) : 2 0 ; (0,-1) : 1 0 })", None, None).unwrap();
        let phi = LaurentSymbol::from_terms(
            2,
            [
                (MultiIndex::from_i64s(&[1, 0]), Scalar::from_int(2)),
                (MultiIndex::from_i64s(&[0, -1]), Scalar::ONE),
            ],
        )
        .unwrap();
        assert_eq!(w, OperatorWord::slant_hankel(&phi, k2()));
        assert_eq!(
            parse_word("(V 2 (mul { (1,0) : 2 0 ; (0,-1) : 1 0 }))", None, None).unwrap(),
            w
        );
    }

    #[test]
    fn seq_and_adj() {
        let w = parse_word("(seq (V 2) (V* 2))", Some(1), None).unwrap();
        assert_eq!(w.letters().len(), 2);
        assert!(matches!(w.letters()[0], Generator::SlantV(_)));
        let a = parse_word("(adj (S 3 { (1) : 0 1 }))", None, None).unwrap();
        assert!(matches!(a.letters()[1], Generator::SlantVAdj(_)));
        assert_eq!(
            parse_word("(id)", Some(3), None).unwrap(),
            OperatorWord::identity(3)
        );
    }

    #[test]
    fn symbol_files_resolve_relative_to_base() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("phi.sym"), "(1) : 1 0\n").unwrap();
        let w = parse_word("(V 2 (mul \"phi.sym\"))", None, Some(dir.path())).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(parse_word("(V 2 (mul \"missing.sym\"))", None, Some(dir.path())).is_err());
    }

    #[test]
    fn errors_carry_lines() {
        let err = WordExpr::parse("(V 2\n (mul { (1) : x 0 }))").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(WordExpr::parse("(V 1)")
            .unwrap()
            .bind(Some(1), None)
            .is_err());
        assert!(WordExpr::parse("(Q 2)").is_err());
        assert!(WordExpr::parse("(V 2").is_err());
        assert!(WordExpr::parse("(V 2) (V 2)").is_err());
        assert!(parse_word(
            "(seq (mul { (1) : 1 0 }) (mul { (1,1) : 1 0 }))",
            None,
            None
        )
        .is_err());
    }

    #[test]
    fn print_round_trip() {
        let phi = LaurentSymbol::from_terms(
            1,
            [
                (
                    MultiIndex::from_i64s(&[-3]),
                    Scalar::from_ratios(-1, 2, 1, 3),
                ),
                (MultiIndex::from_i64s(&[2]), Scalar::I),
            ],
        )
        .unwrap();
        let w = OperatorWord::slant_hankel(&phi, k2())
            .then_apply(&OperatorWord::slant_w_adj(1, k2()))
            .unwrap();
        let text = word_to_text(&w);
        assert_eq!(parse_word(&text, None, None).unwrap(), w);
        let zero = OperatorWord::mul(LaurentSymbol::zero(2));
        assert_eq!(
            parse_word(&word_to_text(&zero), Some(2), None).unwrap(),
            zero
        );
    }
}
