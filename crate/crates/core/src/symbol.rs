//! Finitely supported Fourier series on 𝕋ⁿ.
//!
//! A [`LaurentSymbol`] `φ(z) = Σ a_r z^r` is stored as a canonical map from
//! multi-indices to nonzero exact scalars. The same representation doubles as
//! an element of L²(𝕋ⁿ) ([`FourierVector`]), since both are finitely supported
//! coefficient maps over the basis `e_r = z^r`.
//!
//! The text format is one term per line, `(r_1,...,r_n) : re im`, with `#`
//! comments and blank lines ignored. An empty file is the zero symbol.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::integer::IBig;
use dashu::rational::RBig;

use crate::error::{Error, Result};
use crate::lattice::{MultiIndex, SlantOrder};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentSymbol {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

/// An element of L²(𝕋ⁿ) with finitely many nonzero Fourier coefficients.
pub type FourierVector = LaurentSymbol;

impl LaurentSymbol {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        LaurentSymbol {
            dim: n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::ONE)
    }

    /// `c · z^m`.
    pub fn monomial(m: MultiIndex, c: Scalar) -> Self {
        let mut s = Self::zero(m.dim());
        s.add_term(m, c);
        s
    }

    /// The basis vector `e_m = z^m`.
    pub fn basis(m: MultiIndex) -> Self {
        Self::monomial(m, Scalar::ONE)
    }

    /// The coordinate function `z_j` (1-based).
    pub fn coordinate(j: usize, n: usize) -> Result<Self> {
        Ok(Self::basis(MultiIndex::unit(j, n)?))
    }

    /// Sums the given terms; repeated indices accumulate and zeros are dropped.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut s = Self::zero(n);
        for (m, c) in terms {
            Error::check_dim(n, m.dim())?;
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, m: &MultiIndex) -> Option<&Scalar> {
        self.coeffs.get(m)
    }

    /// The coefficient at `m`, zero when absent.
    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.coeffs.get(m).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.coeffs.keys()
    }

    /// Adds `c` to the coefficient at `m`, keeping the map canonical.
    pub fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        assert_eq!(m.dim(), self.dim, "term dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest `|r_j|` over the support; zero for the zero symbol.
    pub fn support_radius(&self) -> IBig {
        self.coeffs
            .keys()
            .map(MultiIndex::max_abs)
            .max()
            .unwrap_or(IBig::ZERO)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Pointwise product on 𝕋ⁿ: `c_t = Σ_{r+s=t} a_r b_s`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim);
        for (r, a) in &self.coeffs {
            for (s, b) in &other.coeffs {
                out.add_term(r + s, a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, a) in &self.coeffs {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// `z^m · self`.
    pub fn shift(&self, m: &MultiIndex) -> Self {
        assert_eq!(m.dim(), self.dim, "shift dimension mismatch");
        LaurentSymbol {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(r, a)| (r + m, a.clone()))
                .collect(),
        }
    }

    /// Complex conjugate on the torus: `a_r z^r ↦ conj(a_r) z^{-r}`.
    pub fn conjugate(&self) -> Self {
        LaurentSymbol {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(r, a)| (-r, a.conj())).collect(),
        }
    }

    /// `φ(z^{-k})`: the coefficient of `z^r` moves to `z^{-kr}`.
    pub fn substitute_neg_k(&self, k: SlantOrder) -> Self {
        let factor = -k.as_ibig();
        LaurentSymbol {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(r, a)| (r.scale(&factor), a.clone()))
                .collect(),
        }
    }

    /// The slant compression `Σ u_m z^m ↦ Σ u_{km} z^{-m}`; indices not
    /// divisible by `k` are discarded.
    pub fn slant_transform(&self, k: SlantOrder) -> Self {
        let kk = k.as_ibig();
        LaurentSymbol {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(m, a)| m.div_exact(&kk).map(|q| (-q, a.clone())))
                .collect(),
        }
    }

    /// `Σ |a_r|²`.
    pub fn l2_norm_sq(&self) -> RBig {
        self.coeffs
            .values()
            .fold(RBig::ZERO, |acc, a| acc + a.norm_sq())
    }

    /// `⟨self, other⟩ = Σ a_r conj(b_r)`.
    pub fn inner(&self, other: &Self) -> Scalar {
        let mut acc = Scalar::ZERO;
        let (small, large, swap) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        for (m, a) in &small.coeffs {
            if let Some(b) = large.coeffs.get(m) {
                let term = if swap { b * &a.conj() } else { a * &b.conj() };
                acc += &term;
            }
        }
        acc
    }

    /// Value at the torus point `z_j = exp(2πi t_j / grid)`.
    ///
    /// Exponents are reduced modulo `grid` in exact integer arithmetic before
    /// any trigonometry, so large indices do not lose phase accuracy.
    pub fn evaluate_on_grid(&self, t: &[u64], grid: u64) -> (f64, f64) {
        assert_eq!(t.len(), self.dim, "grid point dimension mismatch");
        let g = IBig::from(grid);
        let (mut re, mut im) = (0.0, 0.0);
        for (r, a) in &self.coeffs {
            let mut phase = IBig::ZERO;
            for (rj, tj) in r.coords().iter().zip(t) {
                phase += rj * IBig::from(*tj);
            }
            let reduced = ((phase % &g) + &g) % &g;
            let reduced = u64::try_from(&reduced).expect("reduced phase fits in u64");
            let theta = TAU * reduced as f64 / grid as f64;
            let (ar, ai) = a.to_f64_pair();
            let (c, s) = (theta.cos(), theta.sin());
            re += ar * c - ai * s;
            im += ar * s + ai * c;
        }
        (re, im)
    }

    /// Lower estimate of `sup |φ|` on 𝕋ⁿ: the maximum of `|φ|` over the
    /// uniform grid with `grid_per_dim` points per coordinate.
    pub fn sup_norm_estimate(&self, grid_per_dim: u64) -> f64 {
        assert!(grid_per_dim >= 1, "grid must have at least one point");
        if self.is_zero() {
            return 0.0;
        }
        let mut t = vec![0u64; self.dim];
        let mut best: f64 = 0.0;
        loop {
            let (re, im) = self.evaluate_on_grid(&t, grid_per_dim);
            best = best.max(re.hypot(im));
            let mut j = self.dim;
            loop {
                if j == 0 {
                    return best;
                }
                j -= 1;
                t[j] += 1;
                if t[j] < grid_per_dim {
                    break;
                }
                t[j] = 0;
            }
        }
    }

    /// Serializes to the one-term-per-line symbol file format.
    pub fn to_symbol_text(&self) -> String {
        let mut out = String::new();
        for (m, a) in &self.coeffs {
            out.push_str(&format!("{m} : {}\n", a.to_pair_string()));
        }
        out
    }

    /// Parses the symbol file format. An empty file needs `dim_hint`; when
    /// both are absent the dimension defaults to 1.
    pub fn parse(text: &str, dim_hint: Option<usize>) -> Result<Self> {
        let terms = parse_symbol_terms(text)?;
        let dim = match (terms.first(), dim_hint) {
            (Some((m, _, _)), _) => m.dim(),
            (None, Some(n)) => n,
            (None, None) => 1,
        };
        if let Some(n) = dim_hint {
            if n != dim {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: dim,
                });
            }
        }
        let mut s = Self::zero(dim);
        for (m, c, line) in terms {
            if m.dim() != dim {
                return Err(Error::parse(
                    line,
                    format!("index {m} has dimension {}, expected {dim}", m.dim()),
                ));
            }
            s.add_term(m, c);
        }
        Ok(s)
    }
}

/// Parses symbol-file lines into `(index, coefficient, line number)` triples.
pub(crate) fn parse_symbol_terms(text: &str) -> Result<Vec<(MultiIndex, Scalar, usize)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (idx, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `(r_1,...,r_n) : re im`"))?;
        let m: MultiIndex = idx
            .parse()
            .map_err(|e| Error::parse(line_no, format!("{e}")))?;
        let fields: Vec<&str> = value.split_whitespace().collect();
        let [re, im] = fields[..] else {
            return Err(Error::parse(
                line_no,
                format!("expected two rational fields, found {}", fields.len()),
            ));
        };
        let c = Scalar::parse_pair(re, im).map_err(|e| Error::parse(line_no, format!("{e}")))?;
        out.push((m, c, line_no));
    }
    Ok(out)
}

impl Add for &LaurentSymbol {
    type Output = LaurentSymbol;

    /// Panics on dimension mismatch; see [`LaurentSymbol::checked_add`].
    fn add(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        self.checked_add(rhs).expect("symbol dimension mismatch")
    }
}

impl Sub for &LaurentSymbol {
    type Output = LaurentSymbol;

    fn sub(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        self.checked_sub(rhs).expect("symbol dimension mismatch")
    }
}

impl Mul for &LaurentSymbol {
    type Output = LaurentSymbol;

    fn mul(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        self.checked_mul(rhs).expect("symbol dimension mismatch")
    }
}

impl Neg for &LaurentSymbol {
    type Output = LaurentSymbol;

    fn neg(self) -> LaurentSymbol {
        LaurentSymbol {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(m, a)| (m.clone(), -a)).collect(),
        }
    }
}

impl fmt::Display for LaurentSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, a)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a})z^{m}")?;
        }
        Ok(())
    }
}

pub fn sym_add(phi: &LaurentSymbol, psi: &LaurentSymbol) -> Result<LaurentSymbol> {
    phi.checked_add(psi)
}

pub fn sym_mul(phi: &LaurentSymbol, psi: &LaurentSymbol) -> Result<LaurentSymbol> {
    phi.checked_mul(psi)
}

pub fn sym_equal(phi: &LaurentSymbol, psi: &LaurentSymbol) -> bool {
    phi == psi
}
