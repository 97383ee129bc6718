//! Operators as words over the generator alphabet `{M_φ, W_k, W_k*, V_k, V_k*}`.
//!
//! A word is never truncated to a matrix: it acts exactly on finitely
//! supported vectors, so slant actions near the edge of any window are
//! computed without truncation error. Matrices appear only on request, as
//! [`MatrixWindow`]s read off from the exact action.
//!
//! On the basis `e_m = z^m`:
//!
//! | letter  | action                                   |
//! |---------|------------------------------------------|
//! | `M_φ`   | `e_m ↦ φ · z^m`                          |
//! | `W_k`   | `e_m ↦ e_{m/k}` if `k | m`, else `0`     |
//! | `W_k*`  | `e_m ↦ e_{km}`                           |
//! | `V_k`   | `e_m ↦ e_{-m/k}` if `k | m`, else `0`    |
//! | `V_k*`  | `e_m ↦ e_{-km}`                          |
//!
//! Divisibility is componentwise.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{IndexBox, MultiIndex, SlantOrder};
use crate::scalar::Scalar;
use crate::symbol::{FourierVector, LaurentSymbol};
use crate::window::MatrixWindow;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    Mul(LaurentSymbol),
    SlantW(SlantOrder),
    SlantWAdj(SlantOrder),
    SlantV(SlantOrder),
    SlantVAdj(SlantOrder),
}

impl Generator {
    pub fn order(&self) -> Option<SlantOrder> {
        match self {
            Generator::Mul(_) => None,
            Generator::SlantW(k)
            | Generator::SlantWAdj(k)
            | Generator::SlantV(k)
            | Generator::SlantVAdj(k) => Some(*k),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Mul(phi) => write!(f, "M[{phi}]"),
            Generator::SlantW(k) => write!(f, "W{k}"),
            Generator::SlantWAdj(k) => write!(f, "W{k}*"),
            Generator::SlantV(k) => write!(f, "V{k}"),
            Generator::SlantVAdj(k) => write!(f, "V{k}*"),
        }
    }
}

/// A composition `L_1 L_2 ⋯ L_p`; the rightmost letter acts first.
/// The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    dim: usize,
    letters: Vec<Generator>,
}

impl OperatorWord {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        OperatorWord {
            dim: n,
            letters: Vec::new(),
        }
    }

    pub fn new(n: usize, letters: Vec<Generator>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        for g in &letters {
            if let Generator::Mul(phi) = g {
                Error::check_dim(n, phi.dim())?;
            }
        }
        Ok(OperatorWord { dim: n, letters })
    }

    pub fn mul(phi: LaurentSymbol) -> Self {
        OperatorWord {
            dim: phi.dim(),
            letters: vec![Generator::Mul(phi)],
        }
    }

    /// Multiplication by the monomial `z^m`.
    pub fn mul_monomial(m: &MultiIndex) -> Self {
        Self::mul(LaurentSymbol::basis(m.clone()))
    }

    fn single(n: usize, g: Generator) -> Self {
        OperatorWord {
            dim: n,
            letters: vec![g],
        }
    }

    pub fn slant_v(n: usize, k: SlantOrder) -> Self {
        Self::single(n, Generator::SlantV(k))
    }

    pub fn slant_v_adj(n: usize, k: SlantOrder) -> Self {
        Self::single(n, Generator::SlantVAdj(k))
    }

    pub fn slant_w(n: usize, k: SlantOrder) -> Self {
        Self::single(n, Generator::SlantW(k))
    }

    pub fn slant_w_adj(n: usize, k: SlantOrder) -> Self {
        Self::single(n, Generator::SlantWAdj(k))
    }

    /// `S_φ = V_k M_φ`.
    pub fn slant_hankel(phi: &LaurentSymbol, k: SlantOrder) -> Self {
        OperatorWord {
            dim: phi.dim(),
            letters: vec![Generator::SlantV(k), Generator::Mul(phi.clone())],
        }
    }

    /// `A_φ = W_k M_φ`.
    pub fn slant_toeplitz(phi: &LaurentSymbol, k: SlantOrder) -> Self {
        OperatorWord {
            dim: phi.dim(),
            letters: vec![Generator::SlantW(k), Generator::Mul(phi.clone())],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self ∘ other`.
    pub fn then_apply(&self, other: &OperatorWord) -> Result<OperatorWord> {
        Error::check_dim(self.dim, other.dim)?;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(OperatorWord {
            dim: self.dim,
            letters,
        })
    }

    /// `self^p`.
    pub fn pow(&self, p: usize) -> OperatorWord {
        let mut letters = Vec::with_capacity(self.letters.len() * p);
        for _ in 0..p {
            letters.extend(self.letters.iter().cloned());
        }
        OperatorWord {
            dim: self.dim,
            letters,
        }
    }

    /// Distinct slant orders appearing in the word.
    pub fn slant_orders(&self) -> BTreeSet<SlantOrder> {
        self.letters.iter().filter_map(Generator::order).collect()
    }

    /// True when slant letters of different orders are mixed.
    pub fn mixes_orders(&self) -> bool {
        self.slant_orders().len() > 1
    }

    /// Number of slant letters.
    pub fn slant_depth(&self) -> usize {
        self.letters.iter().filter(|g| g.order().is_some()).count()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("I");
        }
        for (i, g) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// `w1 ∘ w2`.
pub fn compose(w1: &OperatorWord, w2: &OperatorWord) -> Result<OperatorWord> {
    w1.then_apply(w2)
}

/// Adjoint under the reference engine.
pub fn adjoint(w: &OperatorWord) -> OperatorWord {
    Engine::exact().adjoint(w)
}

/// A finite linear combination `Σ c_i w_i` of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSum {
    dim: usize,
    terms: Vec<(Scalar, OperatorWord)>,
}

impl WordSum {
    pub fn new(n: usize, terms: Vec<(Scalar, OperatorWord)>) -> Result<Self> {
        for (_, w) in &terms {
            Error::check_dim(n, w.dim())?;
        }
        Ok(WordSum { dim: n, terms })
    }

    /// `a - b`.
    pub fn difference(a: &OperatorWord, b: &OperatorWord) -> Result<Self> {
        Error::check_dim(a.dim(), b.dim())?;
        Ok(WordSum {
            dim: a.dim(),
            terms: vec![(Scalar::ONE, a.clone()), (-Scalar::ONE, b.clone())],
        })
    }

    pub fn terms(&self) -> &[(Scalar, OperatorWord)] {
        &self.terms
    }
}

impl From<OperatorWord> for WordSum {
    fn from(w: OperatorWord) -> Self {
        WordSum {
            dim: w.dim(),
            terms: vec![(Scalar::ONE, w)],
        }
    }
}

/// Anything the engine can apply to a finitely supported vector.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply_with(&self, engine: &Engine, v: &FourierVector) -> Result<FourierVector>;
}

impl LinearOperator for OperatorWord {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply_with(&self, engine: &Engine, v: &FourierVector) -> Result<FourierVector> {
        engine.apply(self, v)
    }
}

impl LinearOperator for WordSum {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply_with(&self, engine: &Engine, v: &FourierVector) -> Result<FourierVector> {
        Error::check_dim(self.dim, v.dim())?;
        let mut out = FourierVector::zero(self.dim);
        for (c, w) in &self.terms {
            let image = engine.apply(w, v)?;
            for (m, a) in image.terms() {
                out.add_term(m.clone(), a * c);
            }
        }
        Ok(out)
    }
}

/// Deliberate engine faults used to check that the theorem suite can tell a
/// broken engine from a working one.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Mutant {
    /// `V e_m = e_{+m/k}`: the negation is dropped.
    VSignFlip,
    /// `V e_m = e_{-⌊m/k⌋}` for every `m`: no divisibility test.
    VIgnoresDivisibility,
    /// `V* e_m = e_{km}`: the adjoint points the wrong way.
    VAdjointWrongDirection,
    /// `V e_m = e_{-m/k + ε_1}`: off by one unit vector.
    VOffByUnit,
    /// Conjugation of multiplication letters keeps indices: `a_r z^r ↦ conj(a_r) z^r`.
    ConjugateKeepsIndex,
}

impl Mutant {
    pub const ALL: [Mutant; 5] = [
        Mutant::VSignFlip,
        Mutant::VIgnoresDivisibility,
        Mutant::VAdjointWrongDirection,
        Mutant::VOffByUnit,
        Mutant::ConjugateKeepsIndex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutant::VSignFlip => "v-sign-flip",
            Mutant::VIgnoresDivisibility => "v-ignores-divisibility",
            Mutant::VAdjointWrongDirection => "v-adjoint-wrong-direction",
            Mutant::VOffByUnit => "v-off-by-unit",
            Mutant::ConjugateKeepsIndex => "conjugate-keeps-index",
        }
    }
}

/// A failing basis vector from [`Engine::equal_on_box`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub m: MultiIndex,
    pub lhs: FourierVector,
    pub rhs: FourierVector,
}

impl Counterexample {
    /// The smallest output index where the two images differ, with both
    /// coefficients.
    pub fn first_difference(&self) -> (MultiIndex, Scalar, Scalar) {
        let keys: BTreeSet<&MultiIndex> = self.lhs.support().chain(self.rhs.support()).collect();
        for m2 in keys {
            let (a, b) = (self.lhs.coeff(m2), self.rhs.coeff(m2));
            if a != b {
                return (m2.clone(), a, b);
            }
        }
        unreachable!("counterexample images are equal")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxComparison {
    pub equal: bool,
    /// Basis vectors compared before stopping.
    pub checked: usize,
    /// Compared basis vectors whose image under either side was nonzero.
    pub nonzero_images: usize,
    pub counterexample: Option<Counterexample>,
}

/// Applies words exactly. The default engine is the reference semantics; an
/// engine built with [`Engine::with_mutant`] carries one deliberate fault.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Engine {
    mutant: Option<Mutant>,
}

impl Engine {
    pub fn exact() -> Self {
        Engine { mutant: None }
    }

    pub fn with_mutant(mutant: Mutant) -> Self {
        Engine {
            mutant: Some(mutant),
        }
    }

    pub fn mutant(&self) -> Option<Mutant> {
        self.mutant
    }

    pub fn apply_generator(&self, g: &Generator, v: &FourierVector) -> Result<FourierVector> {
        let n = v.dim();
        let mut out = FourierVector::zero(n);
        match g {
            Generator::Mul(phi) => return v.checked_mul(phi),
            Generator::SlantW(k) => {
                let kk = k.as_ibig();
                for (m, a) in v.terms() {
                    if let Some(q) = m.div_exact(&kk) {
                        out.add_term(q, a.clone());
                    }
                }
            }
            Generator::SlantWAdj(k) => {
                let kk = k.as_ibig();
                for (m, a) in v.terms() {
                    out.add_term(m.scale(&kk), a.clone());
                }
            }
            Generator::SlantV(k) => {
                let kk = k.as_ibig();
                for (m, a) in v.terms() {
                    let target = match self.mutant {
                        Some(Mutant::VSignFlip) => m.div_exact(&kk),
                        Some(Mutant::VIgnoresDivisibility) => Some(-m.div_trunc(&kk)),
                        Some(Mutant::VOffByUnit) => m
                            .div_exact(&kk)
                            .map(|q| &(-q) + &MultiIndex::unit(1, n).expect("n >= 1")),
                        _ => m.div_exact(&kk).map(|q| -q),
                    };
                    if let Some(t) = target {
                        out.add_term(t, a.clone());
                    }
                }
            }
            Generator::SlantVAdj(k) => {
                let factor = match self.mutant {
                    Some(Mutant::VAdjointWrongDirection) => k.as_ibig(),
                    _ => -k.as_ibig(),
                };
                for (m, a) in v.terms() {
                    out.add_term(m.scale(&factor), a.clone());
                }
            }
        }
        Ok(out)
    }

    /// Applies letters right to left.
    pub fn apply(&self, w: &OperatorWord, v: &FourierVector) -> Result<FourierVector> {
        Error::check_dim(w.dim(), v.dim())?;
        let mut current = v.clone();
        for g in w.letters().iter().rev() {
            if current.is_zero() {
                break;
            }
            current = self.apply_generator(g, &current)?;
        }
        Ok(current)
    }

    pub fn apply_basis(&self, w: &OperatorWord, m: &MultiIndex) -> Result<FourierVector> {
        self.apply(w, &FourierVector::basis(m.clone()))
    }

    /// Conjugation used for adjoints of multiplication letters.
    pub fn conjugate(&self, phi: &LaurentSymbol) -> LaurentSymbol {
        match self.mutant {
            Some(Mutant::ConjugateKeepsIndex) => LaurentSymbol::from_terms(
                phi.dim(),
                phi.terms().map(|(r, a)| (r.clone(), a.conj())),
            )
            .expect("dimension preserved"),
            _ => phi.conjugate(),
        }
    }

    /// Reverses the word and stars every letter.
    pub fn adjoint(&self, w: &OperatorWord) -> OperatorWord {
        let letters = w
            .letters()
            .iter()
            .rev()
            .map(|g| match g {
                Generator::Mul(phi) => Generator::Mul(self.conjugate(phi)),
                Generator::SlantV(k) => Generator::SlantVAdj(*k),
                Generator::SlantVAdj(k) => Generator::SlantV(*k),
                Generator::SlantW(k) => Generator::SlantWAdj(*k),
                Generator::SlantWAdj(k) => Generator::SlantW(*k),
            })
            .collect();
        OperatorWord {
            dim: w.dim(),
            letters,
        }
    }

    /// `⟨T e_m, e_{m'}⟩`.
    pub fn entry(&self, w: &OperatorWord, m: &MultiIndex, m_prime: &MultiIndex) -> Result<Scalar> {
        Error::check_dim(w.dim(), m_prime.dim())?;
        Ok(self.apply_basis(w, m)?.coeff(m_prime))
    }

    /// Dense block of `⟨T e_m, e_{m'}⟩` for `m` in `cols`, `m'` in `rows`.
    pub fn matrix_window(
        &self,
        w: &OperatorWord,
        rows: &IndexBox,
        cols: &IndexBox,
    ) -> Result<MatrixWindow> {
        Error::check_dim(w.dim(), rows.dim())?;
        Error::check_dim(w.dim(), cols.dim())?;
        let mut entries = vec![vec![Scalar::ZERO; cols.len()]; rows.len()];
        for (c, m) in cols.iter().enumerate() {
            let image = self.apply_basis(w, &m)?;
            for (m2, a) in image.terms() {
                if let Some(r) = rows.position(m2) {
                    entries[r][c] = a.clone();
                }
            }
        }
        MatrixWindow::new(rows.clone(), cols.clone(), entries)
    }

    /// Compares two operators on every basis vector of `cols`, stopping at the
    /// first (lexicographically smallest) disagreement.
    pub fn equal_on_box<A, B>(&self, lhs: &A, rhs: &B, cols: &IndexBox) -> Result<BoxComparison>
    where
        A: LinearOperator + ?Sized,
        B: LinearOperator + ?Sized,
    {
        Error::check_dim(lhs.dim(), rhs.dim())?;
        Error::check_dim(lhs.dim(), cols.dim())?;
        let mut checked = 0;
        let mut nonzero_images = 0;
        for m in cols {
            let e = FourierVector::basis(m.clone());
            let a = lhs.apply_with(self, &e)?;
            let b = rhs.apply_with(self, &e)?;
            checked += 1;
            if !a.is_zero() || !b.is_zero() {
                nonzero_images += 1;
            }
            if a != b {
                return Ok(BoxComparison {
                    equal: false,
                    checked,
                    nonzero_images,
                    counterexample: Some(Counterexample { m, lhs: a, rhs: b }),
                });
            }
        }
        Ok(BoxComparison {
            equal: true,
            checked,
            nonzero_images,
            counterexample: None,
        })
    }

    /// The first basis vector of `points` with a nonzero image, if any.
    pub fn first_nonzero_image<A>(
        &self,
        op: &A,
        points: &[MultiIndex],
    ) -> Result<Option<(MultiIndex, FourierVector)>>
    where
        A: LinearOperator + ?Sized,
    {
        for m in points {
            let image = op.apply_with(self, &FourierVector::basis(m.clone()))?;
            if !image.is_zero() {
                return Ok(Some((m.clone(), image)));
            }
        }
        Ok(None)
    }
}

/// `apply` under the reference engine.
pub fn apply(w: &OperatorWord, v: &FourierVector) -> Result<FourierVector> {
    Engine::exact().apply(w, v)
}

/// `entry` under the reference engine.
pub fn entry(w: &OperatorWord, m: &MultiIndex, m_prime: &MultiIndex) -> Result<Scalar> {
    Engine::exact().entry(w, m, m_prime)
}

/// `equal_on_box` under the reference engine.
pub fn equal_on_box(
    w1: &OperatorWord,
    w2: &OperatorWord,
    cols: &IndexBox,
) -> Result<BoxComparison> {
    Engine::exact().equal_on_box(w1, w2, cols)
}

/// `matrix_window` under the reference engine.
pub fn matrix_window(w: &OperatorWord, rows: &IndexBox, cols: &IndexBox) -> Result<MatrixWindow> {
    Engine::exact().matrix_window(w, rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(c: &[i64]) -> MultiIndex {
        MultiIndex::from_i64s(c)
    }

    fn e(c: &[i64]) -> FourierVector {
        FourierVector::basis(idx(c))
    }

    fn k(v: i64) -> SlantOrder {
        SlantOrder::new(v).unwrap()
    }

    fn mono(c: &[i64], a: i64) -> LaurentSymbol {
        LaurentSymbol::monomial(idx(c), Scalar::from_int(a))
    }

    #[test]
    fn generator_actions() {
        let eng = Engine::exact();
        let v = Generator::SlantV(k(2));
        assert_eq!(eng.apply_generator(&v, &e(&[4])).unwrap(), e(&[-2]));
        assert!(eng.apply_generator(&v, &e(&[3])).unwrap().is_zero());
        assert_eq!(
            eng.apply_generator(&Generator::SlantVAdj(k(2)), &e(&[1]))
                .unwrap(),
            e(&[-2])
        );
        assert_eq!(
            eng.apply_generator(&Generator::SlantW(k(3)), &e(&[6, -3]))
                .unwrap(),
            e(&[2, -1])
        );
        assert_eq!(
            eng.apply_generator(&Generator::SlantWAdj(k(3)), &e(&[2, -1]))
                .unwrap(),
            e(&[6, -3])
        );
        let phi = &mono(&[1], 2) + &mono(&[-3], 1);
        let image = eng.apply_generator(&Generator::Mul(phi), &e(&[2])).unwrap();
        assert_eq!(image, &mono(&[3], 2) + &mono(&[-1], 1));
    }

    #[test]
    fn word_application() {
        let phi = &mono(&[2], 1) + &mono(&[3], 1);
        let s = OperatorWord::slant_hankel(&phi, k(2));
        assert_eq!(apply(&s, &e(&[0])).unwrap(), e(&[-1]));
        let v = &e(&[1]) + &mono(&[-4], 5);
        assert_eq!(apply(&OperatorWord::identity(1), &v).unwrap(), v);
        let vv = compose(
            &OperatorWord::slant_v(1, k(2)),
            &OperatorWord::slant_v_adj(1, k(2)),
        )
        .unwrap();
        assert_eq!(apply(&vv, &e(&[7])).unwrap(), e(&[7]));
    }

    #[test]
    fn adjoint_reverses_and_stars() {
        let phi = &mono(&[1], 1) + &LaurentSymbol::monomial(idx(&[-2]), Scalar::I);
        let s = OperatorWord::slant_hankel(&phi, k(2));
        let expected = OperatorWord::new(
            1,
            vec![Generator::Mul(phi.conjugate()), Generator::SlantVAdj(k(2))],
        )
        .unwrap();
        assert_eq!(adjoint(&s), expected);
        assert_eq!(adjoint(&adjoint(&s)), s);
    }

    #[test]
    fn compose_checks_dimensions() {
        assert!(compose(&OperatorWord::identity(1), &OperatorWord::identity(2)).is_err());
        let w = OperatorWord::slant_hankel(&mono(&[1], 1), k(2));
        assert_eq!(compose(&OperatorWord::identity(1), &w).unwrap(), w);
        let shift = compose(
            &OperatorWord::mul(mono(&[1], 1)),
            &OperatorWord::mul(mono(&[-1], 1)),
        )
        .unwrap();
        for m in -3..=3 {
            assert_eq!(apply(&shift, &e(&[m])).unwrap(), e(&[m]));
        }
    }

    #[test]
    fn entries_follow_reflected_index() {
        // S_φ e_m has coefficient a_{-km'-m} at e_{m'}.
        let phi =
            LaurentSymbol::from_terms(1, (-4..=4).map(|r| (idx(&[r]), Scalar::from_int(10 + r))))
                .unwrap();
        let s = OperatorWord::slant_hankel(&phi, k(2));
        assert_eq!(
            entry(&s, &idx(&[0]), &idx(&[0])).unwrap(),
            phi.coeff(&idx(&[0]))
        );
        assert_eq!(
            entry(&s, &idx(&[1]), &idx(&[0])).unwrap(),
            phi.coeff(&idx(&[-1]))
        );
        assert_eq!(
            entry(&s, &idx(&[-1]), &idx(&[2])).unwrap(),
            phi.coeff(&idx(&[-3]))
        );
    }

    #[test]
    fn equal_on_box_reports_first_witness() {
        let n = 1;
        let vvs = compose(
            &OperatorWord::slant_v(n, k(2)),
            &OperatorWord::slant_v_adj(n, k(2)),
        )
        .unwrap();
        let bx = IndexBox::cube_i64(1, 5).unwrap();
        assert!(
            equal_on_box(&vvs, &OperatorWord::identity(n), &bx)
                .unwrap()
                .equal
        );
        let vsv = compose(
            &OperatorWord::slant_v_adj(n, k(2)),
            &OperatorWord::slant_v(n, k(2)),
        )
        .unwrap();
        let bx = IndexBox::new(idx(&[0]), idx(&[1])).unwrap();
        let cmp = equal_on_box(&vsv, &OperatorWord::identity(n), &bx).unwrap();
        assert!(!cmp.equal);
        let ce = cmp.counterexample.unwrap();
        assert_eq!(ce.m, idx(&[1]));
        assert!(ce.lhs.is_zero());
        assert_eq!(
            ce.first_difference(),
            (idx(&[1]), Scalar::ZERO, Scalar::ONE)
        );
    }

    #[test]
    fn matrix_window_of_shift() {
        let bx = IndexBox::cube_i64(1, 1).unwrap();
        let wnd = matrix_window(&OperatorWord::mul(mono(&[1], 1)), &bx, &bx).unwrap();
        for (r, m2) in bx.iter().enumerate() {
            for (c, m) in bx.iter().enumerate() {
                let expected = if m2 == &m + &idx(&[1]) {
                    Scalar::ONE
                } else {
                    Scalar::ZERO
                };
                assert_eq!(wnd.entries()[r][c], expected);
            }
        }
    }

    #[test]
    fn mutants_change_the_action() {
        let v = Generator::SlantV(k(2));
        let apply_with = |mutant, g: &Generator, x: &FourierVector| {
            Engine::with_mutant(mutant).apply_generator(g, x).unwrap()
        };
        assert_eq!(apply_with(Mutant::VSignFlip, &v, &e(&[4])), e(&[2]));
        assert_eq!(
            apply_with(Mutant::VIgnoresDivisibility, &v, &e(&[3])),
            e(&[-1])
        );
        assert_eq!(
            apply_with(Mutant::VOffByUnit, &v, &e(&[4, 2])),
            e(&[-1, -1])
        );
        assert_eq!(
            apply_with(
                Mutant::VAdjointWrongDirection,
                &Generator::SlantVAdj(k(2)),
                &e(&[1])
            ),
            e(&[2])
        );
        let phi = mono(&[1], 1);
        assert_eq!(
            Engine::with_mutant(Mutant::ConjugateKeepsIndex).conjugate(&phi),
            phi
        );
    }

    #[test]
    fn word_sums_apply_linearly() {
        let a = OperatorWord::mul(mono(&[1], 1));
        let b = OperatorWord::mul(mono(&[1], 1));
        let diff = WordSum::difference(&a, &b).unwrap();
        let eng = Engine::exact();
        assert!(diff.apply_with(&eng, &e(&[3])).unwrap().is_zero());
        assert!(WordSum::difference(&a, &OperatorWord::identity(2)).is_err());
    }

    #[test]
    fn flags_mixed_orders() {
        let w = compose(
            &OperatorWord::slant_v(1, k(2)),
            &OperatorWord::slant_v(1, k(3)),
        )
        .unwrap();
        assert!(w.mixes_orders());
        assert_eq!(w.slant_depth(), 2);
        assert!(!OperatorWord::slant_v(1, k(2)).pow(3).mixes_orders());
    }
}
