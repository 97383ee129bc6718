//! Structural decisions about slant operators: recurrence recognition of
//! matrix windows, the intertwining characterization, and witness searches
//! for the "only the zero symbol" statements.
//!
//! Every check takes an [`Engine`] so the same code runs against a mutated
//! engine in the suite's self-test.

use std::collections::HashMap;

use dashu::base::Abs;
use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{IndexBox, MultiIndex, SlantOrder};
use crate::operator::{Counterexample, Engine, LinearOperator, OperatorWord, WordSum};
use crate::scalar::Scalar;
use crate::symbol::{FourierVector, LaurentSymbol};
use crate::window::MatrixWindow;

/// At most this many violations are kept per check; the total is counted.
pub const REPORTED_VIOLATIONS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    EntryRecurrence,
    Intertwining,
    NormDefect,
    OperatorIdentity,
    SymbolCriterion,
    MissingWitness,
}

/// A located disagreement. `m` is an input index, `m_prime` an output index
/// and `j` a coordinate, whichever apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tag: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<MultiIndex>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_prime: Option<MultiIndex>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub context: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, lhs: Scalar, rhs: Scalar, context: impl Into<String>) -> Self {
        Violation {
            kind,
            tag: None,
            m: None,
            m_prime: None,
            j: None,
            lhs,
            rhs,
            context: context.into(),
        }
    }

    pub fn at(
        mut self,
        m: Option<MultiIndex>,
        m_prime: Option<MultiIndex>,
        j: Option<usize>,
    ) -> Self {
        self.m = m;
        self.m_prime = m_prime;
        self.j = j;
        self
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    /// Located at the input `m` and the first output index where the two
    /// images differ.
    pub fn from_counterexample(
        kind: ViolationKind,
        ce: &Counterexample,
        context: impl Into<String>,
    ) -> Self {
        let (m2, a, b) = ce.first_difference();
        Violation::new(kind, a, b, context).at(Some(ce.m.clone()), Some(m2), None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowVerdict {
    Holds,
    Fails,
    /// No recurrence pair fits inside the window.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub verdict: WindowVerdict,
    pub pairs_checked: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl WindowCheck {
    pub fn holds(&self) -> bool {
        self.verdict == WindowVerdict::Holds
    }
}

/// Walks every recurrence pair `((m', m), (m'+ε_j, m−kε_j))` inside the
/// window by enumeration positions. The callback gets
/// `(row of m', column of m, j, entry(m', m), entry(m'+ε_j, m−kε_j))`.
fn for_each_recurrence_pair<F>(wnd: &MatrixWindow, k: SlantOrder, mut visit: F)
where
    F: FnMut(usize, usize, usize, &Scalar, &Scalar),
{
    let er = wnd.rows().extents();
    let ec = wnd.cols().extents();
    let n = er.len();
    let k = k.get() as usize;
    let strides = |ext: &[usize]| -> Vec<usize> {
        let mut s = vec![1; ext.len()];
        for j in (0..ext.len().saturating_sub(1)).rev() {
            s[j] = s[j + 1] * ext[j + 1];
        }
        s
    };
    let (sr, sc) = (strides(er), strides(ec));
    let entries = wnd.entries();
    for (ri, row) in entries.iter().enumerate() {
        for j in 0..n {
            if (ri / sr[j]) % er[j] + 1 >= er[j] {
                continue;
            }
            let shifted_row = &entries[ri + sr[j]];
            for (ci, base) in row.iter().enumerate() {
                if (ci / sc[j]) % ec[j] < k {
                    continue;
                }
                visit(ri, ci, j + 1, base, &shifted_row[ci - k * sc[j]]);
            }
        }
    }
}

/// Checks `entry(m'+ε_j, m−kε_j) = entry(m', m)` for every pair that fits in
/// the window.
pub fn is_slant_hankel_window(wnd: &MatrixWindow, k: SlantOrder) -> WindowCheck {
    let mut pairs = 0;
    let mut failing = Vec::new();
    let mut count = 0;
    for_each_recurrence_pair(wnd, k, |ri, ci, j, base, shifted| {
        pairs += 1;
        if base != shifted {
            count += 1;
            if failing.len() < REPORTED_VIOLATIONS {
                failing.push((ri, ci, j, base.clone(), shifted.clone()));
            }
        }
    });
    let violations = if failing.is_empty() {
        Vec::new()
    } else {
        let rows = wnd.rows().points();
        let cols = wnd.cols().points();
        failing
            .into_iter()
            .map(|(ri, ci, j, base, shifted)| {
                Violation::new(
                    ViolationKind::EntryRecurrence,
                    shifted,
                    base,
                    "entry(m'+e_j, m-k e_j) != entry(m', m)",
                )
                .at(Some(cols[ci].clone()), Some(rows[ri].clone()), Some(j))
            })
            .collect()
    };
    let verdict = if pairs == 0 {
        WindowVerdict::Inconclusive
    } else if count == 0 {
        WindowVerdict::Holds
    } else {
        WindowVerdict::Fails
    };
    WindowCheck {
        verdict,
        pairs_checked: pairs,
        violation_count: count,
        violations,
    }
}

/// The window a slant Hankel operator with symbol `phi` would have:
/// `entry(m', m) = a_{−km'−m}`.
pub fn slant_hankel_matrix(
    phi: &LaurentSymbol,
    k: SlantOrder,
    rows: &IndexBox,
    cols: &IndexBox,
) -> Result<MatrixWindow> {
    Error::check_dim(phi.dim(), rows.dim())?;
    Error::check_dim(phi.dim(), cols.dim())?;
    let kk = -k.as_ibig();
    let cols_pts = cols.points();
    let entries = rows
        .iter()
        .map(|m2| {
            let base = m2.scale(&kk);
            cols_pts.iter().map(|m| phi.coeff(&(&base - m))).collect()
        })
        .collect();
    MatrixWindow::new(rows.clone(), cols.clone(), entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub checked: usize,
    pub nonzero_images: usize,
    pub violation: Option<Violation>,
}

/// `lhs = rhs` on every basis vector of `cols`.
pub fn identity_check<A, B>(
    engine: &Engine,
    lhs: &A,
    rhs: &B,
    cols: &IndexBox,
    kind: ViolationKind,
    context: &str,
) -> Result<IdentityCheck>
where
    A: LinearOperator + ?Sized,
    B: LinearOperator + ?Sized,
{
    let cmp = engine.equal_on_box(lhs, rhs, cols)?;
    Ok(IdentityCheck {
        holds: cmp.equal,
        checked: cmp.checked,
        nonzero_images: cmp.nonzero_images,
        violation: cmp
            .counterexample
            .as_ref()
            .map(|ce| Violation::from_counterexample(kind, ce, context)),
    })
}

pub fn zero_operator(n: usize) -> OperatorWord {
    OperatorWord::mul(LaurentSymbol::zero(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwiningCheck {
    pub holds: bool,
    pub per_coordinate: Vec<IdentityCheck>,
    pub violations: Vec<Violation>,
}

/// `M_{z_j} T = T M_{z_j^{-k}}` on `cols` for each coordinate `j`.
pub fn check_intertwining(
    engine: &Engine,
    word: &OperatorWord,
    k: SlantOrder,
    cols: &IndexBox,
) -> Result<IntertwiningCheck> {
    let n = word.dim();
    Error::check_dim(n, cols.dim())?;
    let neg_k = -k.as_ibig();
    let mut per_coordinate = Vec::with_capacity(n);
    let mut violations = Vec::new();
    for j in 1..=n {
        let ej = MultiIndex::unit(j, n)?;
        let lhs = OperatorWord::mul_monomial(&ej).then_apply(word)?;
        let rhs = word.then_apply(&OperatorWord::mul_monomial(&ej.scale(&neg_k)))?;
        let mut c = identity_check(
            engine,
            &lhs,
            &rhs,
            cols,
            ViolationKind::Intertwining,
            "M_{z_j} T != T M_{z_j^-k}",
        )?;
        if let Some(v) = c.violation.as_mut() {
            v.j = Some(j);
            violations.push(v.clone());
        }
        per_coordinate.push(c);
    }
    Ok(IntertwiningCheck {
        holds: violations.is_empty(),
        per_coordinate,
        violations,
    })
}

/// Box points ordered by `l¹` norm, then lexicographically.
pub fn center_out(b: &IndexBox) -> Vec<MultiIndex> {
    let mut pts: Vec<(IBig, MultiIndex)> = b.iter().map(|m| (m.l1_norm(), m)).collect();
    pts.sort();
    pts.into_iter().map(|(_, m)| m).collect()
}

/// A box holding a complete residue system modulo `q` in every coordinate.
pub fn residue_box(n: usize, q: &IBig) -> Result<IndexBox> {
    let half = q / IBig::from(2);
    let lower = MultiIndex::new(vec![-half.clone(); n])?;
    let upper = MultiIndex::new(vec![q - IBig::ONE - half; n])?;
    IndexBox::new(lower, upper)
}

/// Radius `max(support radius + k, ⌈k^depth / 2⌉)`: contains `−supp` and a
/// complete residue system modulo `k^depth`.
pub fn auto_box(
    n: usize,
    symbols: &[&LaurentSymbol],
    k: SlantOrder,
    depth: u32,
) -> Result<IndexBox> {
    let r = symbols
        .iter()
        .map(|s| s.support_radius())
        .max()
        .unwrap_or(IBig::ZERO);
    let kp = k.pow(depth.max(1));
    let half = (&kp + IBig::ONE) / IBig::from(2);
    let rho = (r + k.as_ibig()).max(half);
    IndexBox::cube(n, &rho)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormWitness {
    pub m: MultiIndex,
    /// `‖S_φ* e_m‖²`
    pub adjoint_norm_sq: RBig,
    /// `‖S_φ e_m‖²`
    pub norm_sq: RBig,
}

impl NormWitness {
    pub fn defect(&self) -> RBig {
        &self.adjoint_norm_sq - &self.norm_sq
    }
}

/// The first `m` (center-out) with `‖S_φ* e_m‖² > ‖S_φ e_m‖²`.
///
/// For `φ ≠ 0` the cube `[−1, 1]ⁿ` always contains one: the residues of `0`
/// and `ε_1` split `‖φ‖²`, while `‖S_φ* e_m‖² = ‖φ‖²` for every `m`.
pub fn hyponormality_witness(
    engine: &Engine,
    phi: &LaurentSymbol,
    k: SlantOrder,
    search: &IndexBox,
) -> Result<Option<NormWitness>> {
    Error::check_dim(phi.dim(), search.dim())?;
    let s = OperatorWord::slant_hankel(phi, k);
    let s_adj = engine.adjoint(&s);
    for m in center_out(search) {
        let norm_sq = engine.apply_basis(&s, &m)?.l2_norm_sq();
        let adjoint_norm_sq = engine.apply_basis(&s_adj, &m)?.l2_norm_sq();
        if adjoint_norm_sq > norm_sq {
            return Ok(Some(NormWitness {
                m,
                adjoint_norm_sq,
                norm_sq,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramWitness {
    pub m1: MultiIndex,
    pub m2: MultiIndex,
    /// `⟨S e_{m1}, S e_{m2}⟩`, nonzero
    pub inner: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryReport {
    /// `max |‖S_φ e_m‖² − 1|` over the box.
    pub max_defect: RBig,
    /// Where the maximum is first attained (center-out).
    pub at: MultiIndex,
    pub norm_sq_at: RBig,
    /// Two box columns with non-orthogonal images; searched only when every
    /// norm equals one.
    pub gram: Option<GramWitness>,
    /// `S_φ S_φ* = M_{V(|φ|²)}` on the box.
    pub identity: IdentityCheck,
}

impl IsometryReport {
    pub fn isometric_on_box(&self) -> bool {
        self.max_defect == RBig::ZERO && self.gram.is_none()
    }
}

/// Non-isometry diagnostics for `S_φ` on `b`. When `b` has radius at least
/// `supp radius + k` and every norm is one, there are more columns than rows
/// reachable by their images, so some pair of images fails to be orthogonal.
pub fn isometry_defect(
    engine: &Engine,
    phi: &LaurentSymbol,
    k: SlantOrder,
    b: &IndexBox,
) -> Result<IsometryReport> {
    Error::check_dim(phi.dim(), b.dim())?;
    let s = OperatorWord::slant_hankel(phi, k);
    let pts = center_out(b);
    let mut images = Vec::with_capacity(pts.len());
    let mut best: Option<(RBig, MultiIndex, RBig)> = None;
    for m in &pts {
        let img = engine.apply_basis(&s, m)?;
        let nsq = img.l2_norm_sq();
        let d = (&nsq - RBig::ONE).abs();
        if best.as_ref().is_none_or(|(bd, _, _)| &d > bd) {
            best = Some((d, m.clone(), nsq));
        }
        images.push(img);
    }
    let (max_defect, at, norm_sq_at) = best.expect("boxes are nonempty");
    let gram = if max_defect == RBig::ZERO {
        first_nonorthogonal_pair(&pts, &images)
    } else {
        None
    };
    let lhs = s.then_apply(&engine.adjoint(&s))?;
    let upsilon = phi.checked_mul(&phi.conjugate())?.slant_transform(k);
    let identity = identity_check(
        engine,
        &lhs,
        &OperatorWord::mul(upsilon),
        b,
        ViolationKind::OperatorIdentity,
        "S S* != M_{V(|phi|^2)}",
    )?;
    Ok(IsometryReport {
        max_defect,
        at,
        norm_sq_at,
        gram,
        identity,
    })
}

fn first_nonorthogonal_pair(pts: &[MultiIndex], images: &[FourierVector]) -> Option<GramWitness> {
    let mut by_row: HashMap<&MultiIndex, Vec<(usize, &Scalar)>> = HashMap::new();
    for (c, img) in images.iter().enumerate() {
        for (m2, a) in img.terms() {
            by_row.entry(m2).or_default().push((c, a));
        }
    }
    let mut gram: HashMap<(usize, usize), Scalar> = HashMap::new();
    for hits in by_row.values() {
        for (x, &(c1, a1)) in hits.iter().enumerate() {
            for &(c2, a2) in &hits[x + 1..] {
                *gram.entry((c1, c2)).or_default() += &(a1 * &a2.conj());
            }
        }
    }
    gram.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .min_by_key(|&((a, b), _)| (a, b))
        .map(|((a, b), inner)| GramWitness {
            m1: pts[a].clone(),
            m2: pts[b].clone(),
            inner,
        })
}

/// `σ = φ(z^{−k})ψ − ψ(z^{−k})φ`.
pub fn commutator_symbol(
    phi: &LaurentSymbol,
    psi: &LaurentSymbol,
    k: SlantOrder,
) -> Result<LaurentSymbol> {
    let a = phi.substitute_neg_k(k).checked_mul(psi)?;
    let b = psi.substitute_neg_k(k).checked_mul(phi)?;
    a.checked_sub(&b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorReport {
    pub sigma: LaurentSymbol,
    /// `S_φS_ψ − S_ψS_φ = V² M_σ` on the box.
    pub reduction: IdentityCheck,
    /// `S_φS_ψ = S_ψS_φ` on the box.
    pub commute: IdentityCheck,
}

pub fn commutator_check(
    engine: &Engine,
    phi: &LaurentSymbol,
    psi: &LaurentSymbol,
    k: SlantOrder,
    b: &IndexBox,
) -> Result<CommutatorReport> {
    let sigma = commutator_symbol(phi, psi, k)?;
    let sp = OperatorWord::slant_hankel(phi, k);
    let sq = OperatorWord::slant_hankel(psi, k);
    let pq = sp.then_apply(&sq)?;
    let qp = sq.then_apply(&sp)?;
    let diff = WordSum::difference(&pq, &qp)?;
    let n = phi.dim();
    let v2 = OperatorWord::slant_v(n, k).pow(2);
    let reduced = v2.then_apply(&OperatorWord::mul(sigma.clone()))?;
    let reduction = identity_check(
        engine,
        &diff,
        &reduced,
        b,
        ViolationKind::OperatorIdentity,
        "S_phi S_psi - S_psi S_phi != V^2 M_sigma",
    )?;
    let commute = identity_check(
        engine,
        &pq,
        &qp,
        b,
        ViolationKind::OperatorIdentity,
        "S_phi S_psi != S_psi S_phi",
    )?;
    Ok(CommutatorReport {
        sigma,
        reduction,
        commute,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductVanishing {
    /// `φ(z^{−k})ψ = 0`
    pub symbol_zero: bool,
    /// `S_φ S_ψ = 0` on the box
    pub operator_zero: bool,
    pub window: WindowCheck,
    pub operator: IdentityCheck,
}

/// The box should hold a residue system modulo `k²`: `S_φS_ψ = V² M_σ` is
/// nonzero exactly when some `e_m` there has a nonzero image.
pub fn product_vanishing_check(
    engine: &Engine,
    phi: &LaurentSymbol,
    psi: &LaurentSymbol,
    k: SlantOrder,
    b: &IndexBox,
) -> Result<ProductVanishing> {
    let n = phi.dim();
    let sym = phi.substitute_neg_k(k).checked_mul(psi)?;
    let prod =
        OperatorWord::slant_hankel(phi, k).then_apply(&OperatorWord::slant_hankel(psi, k))?;
    let operator = identity_check(
        engine,
        &prod,
        &zero_operator(n),
        b,
        ViolationKind::OperatorIdentity,
        "S_phi S_psi != 0",
    )?;
    let rows = IndexBox::cube_i64(n, 1)?;
    let wnd = engine.matrix_window(&prod, &rows, b)?;
    Ok(ProductVanishing {
        symbol_zero: sym.is_zero(),
        operator_zero: operator.holds,
        window: is_slant_hankel_window(&wnd, k),
        operator,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    pub cols: IndexBox,
    /// `a_r` read off as `entry(S_φ, −r, 0)`.
    pub recovered: LaurentSymbol,
    pub operator_zero: bool,
    pub holds: bool,
}

/// Recovers `φ` from the column `m' = 0` of `S_φ`. Without an explicit box
/// the cube of the support radius is used; an explicit box must contain
/// `−r` for every `r` in the support.
pub fn injectivity_check(
    engine: &Engine,
    phi: &LaurentSymbol,
    k: SlantOrder,
    b: Option<&IndexBox>,
) -> Result<InjectivityReport> {
    let n = phi.dim();
    let cols = match b {
        Some(b) => {
            Error::check_dim(n, b.dim())?;
            if let Some(r) = phi.support().find(|r| !b.contains(&-(*r).clone())) {
                return Err(Error::InsufficientBox { index: r.clone() });
            }
            b.clone()
        }
        None => IndexBox::cube(n, &phi.support_radius())?,
    };
    let s = OperatorWord::slant_hankel(phi, k);
    let origin = MultiIndex::zero(n);
    let mut recovered = LaurentSymbol::zero(n);
    let mut operator_zero = true;
    for m in &cols {
        let img = engine.apply_basis(&s, &m)?;
        if !img.is_zero() {
            operator_zero = false;
        }
        recovered.add_term(-m, img.coeff(&origin));
    }
    let holds = recovered == *phi && operator_zero == phi.is_zero();
    Ok(InjectivityReport {
        cols,
        recovered,
        operator_zero,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationReport {
    /// `V M_{z^{−km}} V* = M_{z^m}`
    pub monomial: IdentityCheck,
    /// `V M_{z^{−l}} V* = 0`, checked only when `k ∤ l`.
    pub annihilation: Option<IdentityCheck>,
}

impl ConjugationReport {
    pub fn holds(&self) -> bool {
        self.monomial.holds && self.annihilation.as_ref().is_none_or(|c| c.holds)
    }
}

pub fn conjugation_identity_check(
    engine: &Engine,
    k: SlantOrder,
    m: &MultiIndex,
    l: &MultiIndex,
    b: &IndexBox,
) -> Result<ConjugationReport> {
    let n = m.dim();
    Error::check_dim(n, l.dim())?;
    let v = OperatorWord::slant_v(n, k);
    let v_adj = OperatorWord::slant_v_adj(n, k);
    let sandwich = |inner: &MultiIndex| -> Result<OperatorWord> {
        v.then_apply(&OperatorWord::mul_monomial(inner))?
            .then_apply(&v_adj)
    };
    let lhs = sandwich(&m.scale(&-k.as_ibig()))?;
    let monomial = identity_check(
        engine,
        &lhs,
        &OperatorWord::mul_monomial(m),
        b,
        ViolationKind::OperatorIdentity,
        "V M_{z^-km} V* != M_{z^m}",
    )?;
    let annihilation = if l.divisible_by(&k.as_ibig()) {
        None
    } else {
        Some(identity_check(
            engine,
            &sandwich(&-l.clone())?,
            &zero_operator(n),
            b,
            ViolationKind::OperatorIdentity,
            "V M_{z^-l} V* != 0",
        )?)
    };
    Ok(ConjugationReport {
        monomial,
        annihilation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulReduction {
    /// `V (S_φ M_{z^t})* = M_χ`, `χ = V(conj(z^t φ))`
    pub chi: IdentityCheck,
    /// `V² (S_φ S_ψ)* = M_Λ`, `Λ = V²(conj ψ · (conj φ)(z^{−k}))`
    pub lambda: IdentityCheck,
}

pub fn mul_reduction_check(
    engine: &Engine,
    phi: &LaurentSymbol,
    psi: &LaurentSymbol,
    t: &MultiIndex,
    k: SlantOrder,
    b: &IndexBox,
) -> Result<MulReduction> {
    let n = phi.dim();
    let v = OperatorWord::slant_v(n, k);
    let s_phi = OperatorWord::slant_hankel(phi, k);

    let inner = s_phi.then_apply(&OperatorWord::mul_monomial(t))?;
    let lhs = v.then_apply(&engine.adjoint(&inner))?;
    let chi = phi.shift(t).conjugate().slant_transform(k);
    let chi = identity_check(
        engine,
        &lhs,
        &OperatorWord::mul(chi),
        b,
        ViolationKind::OperatorIdentity,
        "V (S_phi M_{z^t})* != M_chi",
    )?;

    let prod = s_phi.then_apply(&OperatorWord::slant_hankel(psi, k))?;
    let lhs = v.pow(2).then_apply(&engine.adjoint(&prod))?;
    let lam = psi
        .conjugate()
        .checked_mul(&phi.conjugate().substitute_neg_k(k))?
        .slant_transform(k)
        .slant_transform(k);
    let lambda = identity_check(
        engine,
        &lhs,
        &OperatorWord::mul(lam),
        b,
        ViolationKind::OperatorIdentity,
        "V^2 (S_phi S_psi)* != M_Lambda",
    )?;
    Ok(MulReduction { chi, lambda })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrencePrediction {
    pub window: WindowCheck,
    /// Pairs where `a_{k²m'−m+(k²+k)ε_j} ≠ a_{k²m'−m}`.
    pub predicted: usize,
    /// Pairs where the window entries differ.
    pub detected: usize,
    /// The two pair sets coincide.
    pub agree: bool,
}

/// Compares the recurrence violations of the window of `V S_φ` with the
/// coefficient condition `a_{s+(k²+k)ε_j} = a_s`, `s = k²m' − m`.
pub fn v_slant_hankel_prediction(
    engine: &Engine,
    phi: &LaurentSymbol,
    k: SlantOrder,
    rows: &IndexBox,
    cols: &IndexBox,
) -> Result<RecurrencePrediction> {
    let n = phi.dim();
    let word = OperatorWord::slant_v(n, k).then_apply(&OperatorWord::slant_hankel(phi, k))?;
    let wnd = engine.matrix_window(&word, rows, cols)?;
    let kk = k.as_ibig();
    let k2 = &kk * &kk;
    let step = &k2 + &kk;
    let scaled_rows: Vec<MultiIndex> = rows.iter().map(|m2| m2.scale(&k2)).collect();
    let cols_pts = cols.points();
    let steps: Vec<MultiIndex> = (1..=n)
        .map(|j| MultiIndex::unit(j, n).expect("j in range").scale(&step))
        .collect();
    let (mut predicted, mut detected, mut mismatched) = (0, 0, 0);
    for_each_recurrence_pair(&wnd, k, |ri, ci, j, base, shifted| {
        let s = &scaled_rows[ri] - &cols_pts[ci];
        let p = phi.coeff(&(&s + &steps[j - 1])) != phi.coeff(&s);
        let d = base != shifted;
        predicted += usize::from(p);
        detected += usize::from(d);
        mismatched += usize::from(p != d);
    });
    Ok(RecurrencePrediction {
        window: is_slant_hankel_window(&wnd, k),
        predicted,
        detected,
        agree: mismatched == 0,
    })
}

/// An `m` with `S_φ² e_m ≠ S_φ e_m`, searched along `m₀ + k t ε_1` from a
/// residue `m₀` where `S_φ e_{m₀} ≠ 0`. Far enough out the two images have
/// disjoint supports, so the search is exhaustive for `φ ≠ 0`.
pub fn idempotence_witness(
    engine: &Engine,
    phi: &LaurentSymbol,
    k: SlantOrder,
) -> Result<Option<Counterexample>> {
    let n = phi.dim();
    let s = OperatorWord::slant_hankel(phi, k);
    let s2 = s.pow(2);
    let residues = center_out(&residue_box(n, &k.as_ibig())?);
    let Some((m0, _)) = engine.first_nonzero_image(&s, &residues)? else {
        return Ok(None);
    };
    let kk = k.as_ibig();
    let e1 = MultiIndex::unit(1, n)?;
    let reach = phi.support_radius() * IBig::from(2) + IBig::from(4);
    let mut t = IBig::ZERO;
    while t <= reach {
        let m = &m0 + &e1.scale(&(&kk * &t));
        let a = engine.apply_basis(&s2, &m)?;
        let b = engine.apply_basis(&s, &m)?;
        if a != b {
            return Ok(Some(Counterexample { m, lhs: a, rhs: b }));
        }
        t += IBig::ONE;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: i64) -> SlantOrder {
        SlantOrder::new(v).unwrap()
    }

    fn sym(n: usize, terms: &[(&[i64], i64)]) -> LaurentSymbol {
        LaurentSymbol::from_terms(
            n,
            terms
                .iter()
                .map(|(m, c)| (MultiIndex::from_i64s(m), Scalar::from_int(*c))),
        )
        .unwrap()
    }

    fn cube(n: usize, r: i64) -> IndexBox {
        IndexBox::cube_i64(n, r).unwrap()
    }

    #[test]
    fn slant_hankel_window_recognized() {
        let e = Engine::exact();
        let phi = sym(2, &[(&[1, 0], 2), (&[-1, 2], -3), (&[0, 0], 1)]);
        let w = e
            .matrix_window(
                &OperatorWord::slant_hankel(&phi, k(2)),
                &cube(2, 2),
                &cube(2, 3),
            )
            .unwrap();
        let c = is_slant_hankel_window(&w, k(2));
        assert_eq!(c.verdict, WindowVerdict::Holds);
        assert!(c.pairs_checked > 0);
        assert_eq!(
            w,
            slant_hankel_matrix(&phi, k(2), &cube(2, 2), &cube(2, 3)).unwrap()
        );
    }

    #[test]
    fn v_times_slant_hankel_is_not() {
        let e = Engine::exact();
        let phi = sym(1, &[(&[1], 1)]);
        let word = OperatorWord::slant_v(1, k(2))
            .then_apply(&OperatorWord::slant_hankel(&phi, k(2)))
            .unwrap();
        let w = e.matrix_window(&word, &cube(1, 2), &cube(1, 8)).unwrap();
        let c = is_slant_hankel_window(&w, k(2));
        assert_eq!(c.verdict, WindowVerdict::Fails);
        let v = &c.violations[0];
        assert_eq!(v.kind, ViolationKind::EntryRecurrence);
        assert_ne!(v.lhs, v.rhs);
    }

    #[test]
    fn tiny_and_zero_windows() {
        let e = Engine::exact();
        let b = IndexBox::singleton(MultiIndex::from_i64s(&[0]));
        let w = e
            .matrix_window(&OperatorWord::slant_v(1, k(2)), &b, &b)
            .unwrap();
        assert_eq!(
            is_slant_hankel_window(&w, k(2)).verdict,
            WindowVerdict::Inconclusive
        );
        let z = e
            .matrix_window(&zero_operator(1), &cube(1, 2), &cube(1, 2))
            .unwrap();
        assert!(is_slant_hankel_window(&z, k(2)).holds());
    }

    #[test]
    fn intertwining() {
        let e = Engine::exact();
        let phi = sym(2, &[(&[1, -1], 1), (&[0, 2], 5)]);
        let b = cube(2, 2);
        assert!(
            check_intertwining(&e, &OperatorWord::slant_hankel(&phi, k(3)), k(3), &b)
                .unwrap()
                .holds
        );
        let a = OperatorWord::slant_toeplitz(&LaurentSymbol::one(1), k(2));
        let c = check_intertwining(&e, &a, k(2), &cube(1, 1)).unwrap();
        assert!(!c.holds);
        assert_eq!(c.violations[0].j, Some(1));
        assert!(
            check_intertwining(&e, &zero_operator(2), k(2), &b)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn hyponormality_examples() {
        let e = Engine::exact();
        let b = cube(1, 2);
        let w = hyponormality_witness(&e, &sym(1, &[(&[1], 1)]), k(2), &b)
            .unwrap()
            .unwrap();
        assert_eq!(w.m, MultiIndex::from_i64s(&[0]));
        assert_eq!(w.adjoint_norm_sq, RBig::ONE);
        assert_eq!(w.norm_sq, RBig::ZERO);
        assert!(hyponormality_witness(&e, &LaurentSymbol::zero(1), k(2), &b)
            .unwrap()
            .is_none());
        let w = hyponormality_witness(&e, &LaurentSymbol::one(1), k(2), &b)
            .unwrap()
            .unwrap();
        assert!(!w.m.divisible_by(&IBig::from(2)));
    }

    #[test]
    fn isometry_examples() {
        let e = Engine::exact();
        let b = cube(1, 2);
        let r = isometry_defect(&e, &LaurentSymbol::one(1), k(2), &b).unwrap();
        assert_eq!(r.max_defect, RBig::ONE);
        assert!(!r.at.divisible_by(&IBig::from(2)));
        assert!(r.identity.holds);
        let r = isometry_defect(&e, &LaurentSymbol::zero(1), k(2), &b).unwrap();
        assert_eq!(r.max_defect, RBig::ONE);
        assert!(r.identity.holds);
        let r = isometry_defect(&e, &sym(1, &[(&[2], 1), (&[0], 1)]), k(2), &b).unwrap();
        assert!(r.identity.holds && r.max_defect > RBig::ZERO);
        // every norm is one, the Gram matrix is not the identity
        let r = isometry_defect(&e, &sym(1, &[(&[0], 1), (&[1], 1)]), k(2), &cube(1, 3)).unwrap();
        assert_eq!(r.max_defect, RBig::ZERO);
        assert!(r.gram.is_some());
        assert!(!r.isometric_on_box());
    }

    #[test]
    fn commutator_examples() {
        let one = LaurentSymbol::one(1);
        let z = sym(1, &[(&[1], 1)]);
        let z2 = sym(1, &[(&[2], 1)]);
        assert!(commutator_symbol(&z, &z, k(2)).unwrap().is_zero());
        assert_eq!(
            commutator_symbol(&one, &z, k(2)).unwrap(),
            sym(1, &[(&[1], 1), (&[-2], -1)])
        );
        assert_eq!(
            commutator_symbol(&z, &z2, k(2)).unwrap(),
            sym(1, &[(&[0], 1), (&[-3], -1)])
        );
        let r = commutator_check(&Engine::exact(), &one, &z, k(2), &cube(1, 4)).unwrap();
        assert!(r.reduction.holds);
        assert!(!r.commute.holds);
    }

    #[test]
    fn product_vanishing_examples() {
        let e = Engine::exact();
        let z = sym(1, &[(&[1], 1)]);
        let b = cube(1, 4);
        let r = product_vanishing_check(&e, &z, &z, k(2), &b).unwrap();
        assert!(!r.symbol_zero && !r.operator_zero);
        let r = product_vanishing_check(&e, &LaurentSymbol::zero(1), &z, k(2), &b).unwrap();
        assert!(r.symbol_zero && r.operator_zero && r.window.holds());
    }

    #[test]
    fn injectivity_examples() {
        let e = Engine::exact();
        assert!(
            injectivity_check(&e, &LaurentSymbol::zero(1), k(2), None)
                .unwrap()
                .holds
        );
        let z5 = sym(1, &[(&[5], 1)]);
        assert_eq!(
            e.entry(
                &OperatorWord::slant_hankel(&z5, k(2)),
                &MultiIndex::from_i64s(&[-5]),
                &MultiIndex::zero(1)
            )
            .unwrap(),
            Scalar::ONE
        );
        assert!(injectivity_check(&e, &z5, k(2), None).unwrap().holds);
        let err = injectivity_check(&e, &z5, k(2), Some(&cube(1, 3))).unwrap_err();
        assert!(matches!(err, Error::InsufficientBox { .. }));
    }

    #[test]
    fn conjugation_examples() {
        let e = Engine::exact();
        let b = cube(1, 3);
        let r = conjugation_identity_check(
            &e,
            k(2),
            &MultiIndex::from_i64s(&[1]),
            &MultiIndex::from_i64s(&[3]),
            &b,
        )
        .unwrap();
        assert!(r.holds() && r.annihilation.is_some());
        let r = conjugation_identity_check(
            &e,
            k(2),
            &MultiIndex::zero(1),
            &MultiIndex::from_i64s(&[2]),
            &b,
        )
        .unwrap();
        assert!(r.holds() && r.annihilation.is_none());
    }

    #[test]
    fn mul_reduction_examples() {
        let e = Engine::exact();
        let b = cube(1, 3);
        let t = MultiIndex::from_i64s(&[1]);
        let z = sym(1, &[(&[1], 1)]);
        let r = mul_reduction_check(&e, &z, &z, &t, k(2), &b).unwrap();
        assert!(r.chi.holds && r.lambda.holds);
        let r = mul_reduction_check(
            &e,
            &LaurentSymbol::one(1),
            &sym(1, &[(&[2], 1)]),
            &t,
            k(2),
            &b,
        )
        .unwrap();
        assert!(r.chi.holds && r.lambda.holds);
        let zero = LaurentSymbol::zero(1);
        assert!(
            mul_reduction_check(&e, &zero, &zero, &t, k(2), &b)
                .unwrap()
                .lambda
                .holds
        );
    }

    #[test]
    fn prediction_matches_detection() {
        let e = Engine::exact();
        let phi = sym(1, &[(&[1], 1), (&[-2], 3)]);
        let r = v_slant_hankel_prediction(&e, &phi, k(2), &cube(1, 1), &cube(1, 5)).unwrap();
        assert!(r.agree && r.detected > 0);
        let r =
            v_slant_hankel_prediction(&e, &LaurentSymbol::zero(1), k(2), &cube(1, 1), &cube(1, 5))
                .unwrap();
        assert!(r.agree && r.detected == 0 && r.window.holds());
    }

    #[test]
    fn idempotence() {
        let e = Engine::exact();
        assert!(idempotence_witness(&e, &LaurentSymbol::zero(2), k(2))
            .unwrap()
            .is_none());
        assert!(idempotence_witness(&e, &LaurentSymbol::one(2), k(3))
            .unwrap()
            .is_some());
    }

    #[test]
    fn boxes() {
        let b = residue_box(2, &IBig::from(4)).unwrap();
        assert_eq!(b.to_string(), "(-2,-2)..(1,1)");
        let phi = sym(1, &[(&[3], 1)]);
        assert_eq!(
            auto_box(1, &[&phi], k(2), 1).unwrap().to_string(),
            "(-5)..(5)"
        );
        assert_eq!(auto_box(1, &[], k(3), 2).unwrap().to_string(), "(-5)..(5)");
    }
}
