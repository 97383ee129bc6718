//! Seeded verification campaign over every tagged statement.
//!
//! Each tag runs a pinned corpus followed by `cases` random symbols (or
//! pairs), drawn from its own RNG stream derived from `(seed, tag)`. A
//! failure is re-checked from individual matrix entries before it is
//! reported; if the re-check does not confirm it the tag is marked
//! inconclusive.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, auto_box, center_out, check_intertwining, commutator_check, conjugation_identity_check,
    hyponormality_witness, idempotence_witness, identity_check, injectivity_check,
    is_slant_hankel_window, isometry_defect, mul_reduction_check, product_vanishing_check,
    residue_box, slant_hankel_matrix, v_slant_hankel_prediction, zero_operator, Violation,
    ViolationKind, WindowVerdict,
};
use crate::error::{Error, Result};
use crate::lattice::{IndexBox, MultiIndex, SlantOrder};
use crate::operator::{Engine, LinearOperator, Mutant, OperatorWord, WordSum};
use crate::scalar::Scalar;
use crate::symbol::{FourierVector, LaurentSymbol};

pub const FORMAT_VERSION: &str = "1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremTag {
    #[serde(rename = "T-L01")]
    L01,
    #[serde(rename = "T-L02")]
    L02,
    #[serde(rename = "T2.1")]
    T21,
    #[serde(rename = "T2.2")]
    T22,
    #[serde(rename = "T2.4")]
    T24,
    #[serde(rename = "T2.5")]
    T25,
    #[serde(rename = "T3.1")]
    T31,
    #[serde(rename = "T3.2")]
    T32,
    #[serde(rename = "T3.3")]
    T33,
    #[serde(rename = "T3.4")]
    T34,
    #[serde(rename = "T3.5")]
    T35,
    #[serde(rename = "T3.6-red")]
    T36Red,
    #[serde(rename = "T-comm")]
    Comm,
    #[serde(rename = "T3.9-red")]
    T39Red,
    #[serde(rename = "T-S1")]
    S1,
    #[serde(rename = "T-iso")]
    Iso,
    #[serde(rename = "T-inj")]
    Inj,
    #[serde(rename = "T-VV")]
    VV,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 18] = [
        TheoremTag::L01,
        TheoremTag::L02,
        TheoremTag::T21,
        TheoremTag::T22,
        TheoremTag::T24,
        TheoremTag::T25,
        TheoremTag::T31,
        TheoremTag::T32,
        TheoremTag::T33,
        TheoremTag::T34,
        TheoremTag::T35,
        TheoremTag::T36Red,
        TheoremTag::Comm,
        TheoremTag::T39Red,
        TheoremTag::S1,
        TheoremTag::Iso,
        TheoremTag::Inj,
        TheoremTag::VV,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremTag::L01 => "T-L01",
            TheoremTag::L02 => "T-L02",
            TheoremTag::T21 => "T2.1",
            TheoremTag::T22 => "T2.2",
            TheoremTag::T24 => "T2.4",
            TheoremTag::T25 => "T2.5",
            TheoremTag::T31 => "T3.1",
            TheoremTag::T32 => "T3.2",
            TheoremTag::T33 => "T3.3",
            TheoremTag::T34 => "T3.4",
            TheoremTag::T35 => "T3.5",
            TheoremTag::T36Red => "T3.6-red",
            TheoremTag::Comm => "T-comm",
            TheoremTag::T39Red => "T3.9-red",
            TheoremTag::S1 => "T-S1",
            TheoremTag::Iso => "T-iso",
            TheoremTag::Inj => "T-inj",
            TheoremTag::VV => "T-VV",
        }
    }

    fn slug(self) -> &'static str {
        match self {
            TheoremTag::L01 => "intertwining",
            TheoremTag::L02 => "monomial-intertwining",
            TheoremTag::T21 => "product-formula",
            TheoremTag::T22 => "multiplier-commutation",
            TheoremTag::T24 => "entry-recurrence",
            TheoremTag::T25 => "slant-hankel-matrix",
            TheoremTag::T31 => "conjugation-identity",
            TheoremTag::T32 => "v-times-slant-hankel",
            TheoremTag::T33 => "vanishing-product",
            TheoremTag::T34 => "adjoint-not-slant-hankel",
            TheoremTag::T35 => "hyponormality",
            TheoremTag::T36Red => "chi-reduction",
            TheoremTag::Comm => "commutation-criterion",
            TheoremTag::T39Red => "lambda-reduction",
            TheoremTag::S1 => "s1-product",
            TheoremTag::Iso => "non-isometry",
            TheoremTag::Inj => "symbol-map-injective",
            TheoremTag::VV => "generator-algebra",
        }
    }

    /// `id-slug`, e.g. `T2.1-product-formula`.
    pub fn name(self) -> String {
        format!("{}-{}", self.id(), self.slug())
    }

    /// Selector string for several tags, comma separated.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremTag>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(TheoremTag::ALL);
                continue;
            }
            let tag: TheoremTag = part.parse()?;
            if !out.contains(&tag) {
                out.push(tag);
            }
        }
        if out.is_empty() {
            return Err(Error::Input("empty theorem selector".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for TheoremTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        TheoremTag::ALL
            .into_iter()
            .find(|t| s.eq_ignore_ascii_case(t.id()) || s.eq_ignore_ascii_case(&t.name()))
            .ok_or_else(|| Error::Input(format!("unknown theorem tag {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    /// Floating point; no identity verdicts are issued.
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Input(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub k: u32,
    pub n: usize,
    pub seed: u64,
    pub cases: usize,
    pub support_radius: u32,
    pub coeff_bound: u32,
    pub max_terms: usize,
    pub mode: Mode,
    pub theorems: Vec<TheoremTag>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mutant: Option<Mutant>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k: 2,
            n: 1,
            seed: 0,
            cases: 25,
            support_radius: 3,
            coeff_bound: 5,
            max_terms: 4,
            mode: Mode::Exact,
            theorems: TheoremTag::ALL.to_vec(),
            mutant: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(k: u32, n: usize, seed: u64) -> Self {
        SuiteConfig {
            k,
            n,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        SlantOrder::new(i64::from(self.k))?;
        if self.n == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.cases == 0 {
            return Err(Error::Input("cases must be at least 1".into()));
        }
        if self.support_radius == 0 {
            return Err(Error::Input("support radius must be at least 1".into()));
        }
        if self.coeff_bound == 0 {
            return Err(Error::Input("coefficient bound must be at least 1".into()));
        }
        if self.max_terms == 0 {
            return Err(Error::Input("max terms must be at least 1".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::Input("no theorems selected".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> SlantOrder {
        SlantOrder::new(i64::from(self.k)).expect("validated")
    }

    /// The RNG stream owned by `tag`.
    pub fn tag_rng(&self, tag: TheoremTag) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(fnv1a(tag.id().as_bytes()));
        rng
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// A random nonzero symbol from `1..=max_terms` draws (a repeated index keeps
/// the last coefficient), support in `[−support_radius, support_radius]ⁿ` and
/// coefficients `p/q + i·p'/q'` with `|p|, |p'| ≤ coeff_bound`,
/// `1 ≤ q, q' ≤ coeff_bound`.
pub fn random_symbol<R: Rng + ?Sized>(cfg: &SuiteConfig, rng: &mut R) -> LaurentSymbol {
    loop {
        let terms = rng.gen_range(1..=cfg.max_terms);
        let mut coeffs = BTreeMap::new();
        for _ in 0..terms {
            let m = random_index(cfg.n, i64::from(cfg.support_radius), rng);
            coeffs.insert(m, random_coeff(cfg.coeff_bound, rng));
        }
        let phi = LaurentSymbol::from_terms(cfg.n, coeffs).expect("indices have dimension n");
        if !phi.is_zero() {
            return phi;
        }
    }
}

fn random_index<R: Rng + ?Sized>(n: usize, radius: i64, rng: &mut R) -> MultiIndex {
    let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
    MultiIndex::from_i64s(&coords)
}

fn random_coeff<R: Rng + ?Sized>(bound: u32, rng: &mut R) -> Scalar {
    let b = i64::from(bound);
    loop {
        let c = Scalar::from_ratios(
            rng.gen_range(-b..=b),
            rng.gen_range(1..=b),
            rng.gen_range(-b..=b),
            rng.gen_range(1..=b),
        );
        if !c.is_zero() {
            return c;
        }
    }
}

/// Fixed symbols every randomized tag runs first: zero, one, a complex
/// constant, `z_1`, `3z^{(1,…,1)}`, `z_1^{-2}`, a dense symbol on `[0,1]ⁿ`
/// and `1 + z_1`.
pub fn pinned_corpus(n: usize) -> Vec<LaurentSymbol> {
    let e1 = MultiIndex::unit(1, n).expect("n >= 1");
    let ones = MultiIndex::from_i64s(&vec![1; n]);
    let dense_box = IndexBox::new(MultiIndex::zero(n), ones.clone()).expect("valid box");
    let dense = LaurentSymbol::from_terms(
        n,
        dense_box.iter().enumerate().map(|(i, m)| {
            let i = i as i64;
            (m, Scalar::from_ratios(i + 1, 1, i % 3 - 1, 2))
        }),
    )
    .expect("dimension matches");
    vec![
        LaurentSymbol::zero(n),
        LaurentSymbol::one(n),
        LaurentSymbol::constant(n, Scalar::from_ratios(2, 1, -1, 1)),
        LaurentSymbol::basis(e1.clone()),
        LaurentSymbol::monomial(ones, Scalar::from_int(3)),
        LaurentSymbol::basis(e1.scale_i64(-2)),
        dense,
        &LaurentSymbol::one(n) + &LaurentSymbol::basis(e1),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    ConfigError,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::ConfigError => "config-error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub tag: String,
    pub verdict: Verdict,
    pub cases_run: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Violation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub item: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub format_version: String,
    pub engine_version: String,
    pub config: SuiteConfig,
    pub excluded: Vec<Exclusion>,
    pub reports: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn any_fail(&self) -> bool {
        self.reports.iter().any(|r| r.verdict == Verdict::Fail)
    }

    pub fn any_config_error(&self) -> bool {
        self.reports
            .iter()
            .any(|r| r.verdict == Verdict::ConfigError)
    }

    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn get(&self, tag: TheoremTag) -> Option<&TheoremReport> {
        let name = tag.name();
        self.reports.iter().find(|r| r.tag == name)
    }

    pub fn failing_tags(&self) -> Vec<&str> {
        self.reports
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .map(|r| r.tag.as_str())
            .collect()
    }

    /// 0 if every tag passed or was inconclusive, 1 on any failure, 2 on a
    /// configuration error without failures.
    pub fn exit_code(&self) -> i32 {
        if self.any_fail() {
            1
        } else if self.any_config_error() {
            2
        } else {
            0
        }
    }

    /// Machine-readable form. Wall times are left out so that equal
    /// configurations give identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_table(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "slant-hankel suite  k={} n={} seed={} cases={} radius={} mode={}",
            c.k, c.n, c.seed, c.cases, c.support_radius, c.mode
        );
        if let Some(m) = c.mutant {
            out.push_str(&format!(" mutant={}", m.name()));
        }
        out.push('\n');
        for e in &self.excluded {
            out.push_str(&format!("excluded: {} ({})\n", e.item, e.reason));
        }
        let width = self
            .reports
            .iter()
            .map(|r| r.tag.len())
            .max()
            .unwrap_or(3)
            .max(3);
        out.push_str(&format!(
            "{:<width$}  {:<12}  {:>6}  {:>9}  detail\n",
            "tag", "verdict", "cases", "time"
        ));
        for r in &self.reports {
            let detail = match (&r.counterexample, &r.note) {
                (Some(v), _) => describe(v),
                (None, Some(note)) => note.clone(),
                (None, None) => String::new(),
            };
            out.push_str(&format!(
                "{:<width$}  {:<12}  {:>6}  {:>7.3}s  {}\n",
                r.tag,
                r.verdict.to_string(),
                r.cases_run,
                r.wall_time.as_secs_f64(),
                detail
            ));
        }
        let pass = self
            .reports
            .iter()
            .filter(|r| r.verdict == Verdict::Pass)
            .count();
        out.push_str(&format!("{pass}/{} tags passed\n", self.reports.len()));
        out
    }
}

fn describe(v: &Violation) -> String {
    let mut s = v.context.clone();
    if let Some(m) = &v.m {
        s.push_str(&format!(" at m={m}"));
    }
    if let Some(m2) = &v.m_prime {
        s.push_str(&format!(" m'={m2}"));
    }
    if let Some(j) = v.j {
        s.push_str(&format!(" j={j}"));
    }
    s.push_str(&format!(": {} vs {}", v.lhs, v.rhs));
    s
}

pub fn exclusions() -> Vec<Exclusion> {
    [
        (
            "compactness",
            "a topological property of the infinite-dimensional operator; only its finite operator reductions and symbol criteria are checked",
        ),
        (
            "essential commutation",
            "needs the compact-perturbation calculus; only exact commutation is checked",
        ),
        (
            "operator-norm equalities in the non-isometry argument",
            "they do not hold as written; non-isometry is checked through norm and Gram defects",
        ),
        ("general bounded symbols", "symbols are Laurent polynomials"),
    ]
    .into_iter()
    .map(|(item, reason)| Exclusion {
        item: item.into(),
        reason: reason.into(),
    })
    .collect()
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let reports = cfg.theorems.iter().map(|&t| run_tag(cfg, t)).collect();
    Ok(SuiteReport {
        format_version: FORMAT_VERSION.into(),
        engine_version: ENGINE_VERSION.into(),
        config: cfg.clone(),
        excluded: exclusions(),
        reports,
    })
}

/// Runs one tag; `cfg` must be valid.
pub fn run_tag(cfg: &SuiteConfig, tag: TheoremTag) -> TheoremReport {
    let start = Instant::now();
    let mut report = TheoremReport {
        tag: tag.name(),
        verdict: Verdict::Pass,
        cases_run: 0,
        counterexample: None,
        note: None,
        wall_time: Duration::ZERO,
    };
    if cfg.mode == Mode::Float {
        report.verdict = Verdict::ConfigError;
        report.note = Some("identity verdicts require exact mode".into());
        report.wall_time = start.elapsed();
        return report;
    }
    let mut ctx = Ctx {
        cfg,
        engine: cfg.mutant.map_or_else(Engine::exact, Engine::with_mutant),
        k: cfg.order(),
        n: cfg.n,
        rng: cfg.tag_rng(tag),
        cases: 0,
    };
    match ctx.run(tag) {
        Ok(None) => {}
        Ok(Some(failure)) => match (failure.recheck)() {
            Ok(true) => {
                report.verdict = Verdict::Fail;
                report.counterexample = Some(failure.violation.with_tag(tag.name()));
            }
            Ok(false) => {
                report.verdict = Verdict::Inconclusive;
                report.note = Some(format!(
                    "counterexample not confirmed on re-check: {}",
                    describe(&failure.violation)
                ));
            }
            Err(e) => {
                report.verdict = Verdict::Inconclusive;
                report.note = Some(format!("re-check failed: {e}"));
            }
        },
        Err(e) => {
            report.verdict = Verdict::Inconclusive;
            report.note = Some(format!("error: {e}"));
        }
    }
    report.cases_run = ctx.cases;
    report.wall_time = start.elapsed();
    report
}

type Recheck = Box<dyn Fn() -> Result<bool>>;

struct Failure {
    violation: Violation,
    /// Recomputes the disagreement; `true` confirms it.
    recheck: Recheck,
}

/// Owned operator so a failure can re-evaluate it later.
#[derive(Debug, Clone)]
enum Op {
    Word(OperatorWord),
    Sum(WordSum),
}

impl Op {
    fn entry(&self, e: &Engine, m: &MultiIndex, m2: &MultiIndex) -> Result<Scalar> {
        match self {
            Op::Word(w) => e.entry(w, m, m2),
            Op::Sum(s) => {
                let mut acc = Scalar::ZERO;
                for (c, w) in s.terms() {
                    acc += &(c * &e.entry(w, m, m2)?);
                }
                Ok(acc)
            }
        }
    }
}

impl LinearOperator for Op {
    fn dim(&self) -> usize {
        match self {
            Op::Word(w) => w.dim(),
            Op::Sum(s) => s.dim(),
        }
    }

    fn apply_with(&self, engine: &Engine, v: &FourierVector) -> Result<FourierVector> {
        match self {
            Op::Word(w) => w.apply_with(engine, v),
            Op::Sum(s) => s.apply_with(engine, v),
        }
    }
}

impl From<OperatorWord> for Op {
    fn from(w: OperatorWord) -> Self {
        Op::Word(w)
    }
}

impl From<WordSum> for Op {
    fn from(s: WordSum) -> Self {
        Op::Sum(s)
    }
}

fn confirmed(violation: Violation) -> Failure {
    Failure {
        violation,
        recheck: Box::new(|| Ok(true)),
    }
}

fn symbol_violation(context: String, lhs: bool, rhs: bool) -> Violation {
    let b = |x: bool| Scalar::from_int(i64::from(x));
    Violation::new(ViolationKind::SymbolCriterion, b(lhs), b(rhs), context)
}

fn missing_witness(context: impl Into<String>) -> Violation {
    Violation::new(
        ViolationKind::MissingWitness,
        Scalar::ZERO,
        Scalar::ONE,
        context,
    )
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    engine: Engine,
    k: SlantOrder,
    n: usize,
    rng: ChaCha8Rng,
    cases: usize,
}

impl Ctx<'_> {
    fn symbols(&mut self) -> Vec<LaurentSymbol> {
        let mut out = pinned_corpus(self.n);
        for _ in 0..self.cfg.cases {
            out.push(random_symbol(self.cfg, &mut self.rng));
        }
        out
    }

    fn pairs(&mut self) -> Vec<(LaurentSymbol, LaurentSymbol)> {
        let corpus = pinned_corpus(self.n);
        let len = corpus.len();
        let mut out: Vec<_> = (0..len)
            .map(|i| (corpus[i].clone(), corpus[(i + 3) % len].clone()))
            .collect();
        for _ in 0..self.cfg.cases {
            let a = random_symbol(self.cfg, &mut self.rng);
            let b = random_symbol(self.cfg, &mut self.rng);
            out.push((a, b));
        }
        out
    }

    fn random_index(&mut self) -> MultiIndex {
        random_index(self.n, i64::from(self.cfg.support_radius), &mut self.rng)
    }

    fn id_box(&self, syms: &[&LaurentSymbol], depth: u32) -> Result<IndexBox> {
        auto_box(self.n, syms, self.k, depth)
    }

    /// `lhs = rhs` on `b`; a disagreement is re-checked entry by entry.
    fn identity(
        &self,
        lhs: impl Into<Op>,
        rhs: impl Into<Op>,
        b: &IndexBox,
        context: &str,
    ) -> Result<Option<Failure>> {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let c = identity_check(
            &self.engine,
            &lhs,
            &rhs,
            b,
            ViolationKind::OperatorIdentity,
            context,
        )?;
        Ok(c.violation
            .map(|v| identity_failure(self.engine, lhs, rhs, v)))
    }

    fn run(&mut self, tag: TheoremTag) -> Result<Option<Failure>> {
        match tag {
            TheoremTag::VV => self.generator_algebra(),
            TheoremTag::L01 => self.intertwining(),
            TheoremTag::L02 => self.monomial_intertwining(),
            TheoremTag::T21 => self.product_formula(),
            TheoremTag::T22 => self.multiplier_commutation(),
            TheoremTag::T24 => self.entry_recurrence(),
            TheoremTag::T25 => self.slant_hankel_matrix(),
            TheoremTag::T31 => self.conjugation(),
            TheoremTag::T32 => self.v_times_slant_hankel(),
            TheoremTag::T33 => self.vanishing_product(),
            TheoremTag::T34 => self.adjoint_not_slant_hankel(),
            TheoremTag::T35 => self.hyponormality(),
            TheoremTag::T36Red => self.chi_reduction(),
            TheoremTag::Comm => self.commutation(),
            TheoremTag::T39Red => self.lambda_reduction(),
            TheoremTag::S1 => self.s1_product(),
            TheoremTag::Iso => self.non_isometry(),
            TheoremTag::Inj => self.injectivity(),
        }
    }

    fn generator_algebra(&mut self) -> Result<Option<Failure>> {
        let (n, k) = (self.n, self.k);
        let b = self.id_box(&[], 2)?;
        let id = OperatorWord::identity(n);
        let v = OperatorWord::slant_v(n, k);
        let va = OperatorWord::slant_v_adj(n, k);
        let w = OperatorWord::slant_w(n, k);
        let wa = OperatorWord::slant_w_adj(n, k);
        let p = LatticeProjection { n, k };
        let checks: [(OperatorWord, &str); 4] = [
            (v.then_apply(&va)?, "V V* != I"),
            (va.then_apply(&v)?, "V* V != P_e"),
            (w.then_apply(&wa)?, "W W* != I"),
            (wa.then_apply(&w)?, "W* W != P_e"),
        ];
        for (i, (word, context)) in checks.into_iter().enumerate() {
            self.cases += 1;
            let f = if i % 2 == 0 {
                self.identity(word, id.clone(), &b, context)?
            } else {
                let c = identity_check(
                    &self.engine,
                    &word,
                    &p,
                    &b,
                    ViolationKind::OperatorIdentity,
                    context,
                )?;
                c.violation.map(|viol| {
                    let engine = self.engine;
                    let word = word.clone();
                    let rv = viol.clone();
                    let recheck: Recheck = Box::new(move || {
                        let (m, m2) = located(&rv)?;
                        let want = if m.divisible_by(&k.as_ibig()) && m == m2 {
                            Scalar::ONE
                        } else {
                            Scalar::ZERO
                        };
                        Ok(engine.entry(&word, &m, &m2)? != want)
                    });
                    Failure {
                        violation: viol,
                        recheck,
                    }
                })
            };
            if f.is_some() {
                return Ok(f);
            }
        }
        // ‖V e_m‖ ≤ ‖e_m‖, with equality exactly when k | m
        let kk = k.as_ibig();
        for m in b.iter() {
            self.cases += 1;
            let norm = self.engine.apply_basis(&v, &m)?.l2_norm_sq();
            let expected = if m.divisible_by(&kk) {
                dashu::rational::RBig::ONE
            } else {
                dashu::rational::RBig::ZERO
            };
            if norm != expected {
                let viol = Violation::new(
                    ViolationKind::NormDefect,
                    Scalar::real(norm),
                    Scalar::real(expected),
                    "|V e_m|^2 != [k | m]",
                )
                .at(Some(m.clone()), None, None);
                let engine = self.engine;
                let rv = viol.clone();
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        let m = rv.m.clone().expect("located");
                        let img = engine.apply_basis(&OperatorWord::slant_v(n, k), &m)?;
                        let by_entries: dashu::rational::RBig = img
                            .support()
                            .map(|m2| {
                                engine
                                    .entry(&OperatorWord::slant_v(n, k), &m, m2)
                                    .map(|a| a.norm_sq())
                            })
                            .collect::<Result<Vec<_>>>()?
                            .into_iter()
                            .fold(dashu::rational::RBig::ZERO, |acc, x| acc + x);
                        Ok(Scalar::real(by_entries) == rv.lhs && rv.lhs != rv.rhs)
                    }),
                }));
            }
        }
        Ok(None)
    }

    fn intertwining(&mut self) -> Result<Option<Failure>> {
        for phi in self.symbols() {
            self.cases += 1;
            let b = self.id_box(&[&phi], 1)?;
            let s = OperatorWord::slant_hankel(&phi, self.k);
            let c = check_intertwining(&self.engine, &s, self.k, &b)?;
            if let Some(v) = c.violations.into_iter().next() {
                let j = v.j.expect("coordinate recorded");
                let ej = MultiIndex::unit(j, self.n)?;
                let lhs = OperatorWord::mul_monomial(&ej).then_apply(&s)?;
                let rhs =
                    s.then_apply(&OperatorWord::mul_monomial(&ej.scale(&-self.k.as_ibig())))?;
                return Ok(Some(identity_failure(
                    self.engine,
                    lhs.into(),
                    rhs.into(),
                    v,
                )));
            }
        }
        Ok(None)
    }

    fn monomial_intertwining(&mut self) -> Result<Option<Failure>> {
        for phi in self.symbols() {
            self.cases += 1;
            let m = self.random_index();
            let b = self.id_box(&[&phi, &LaurentSymbol::basis(m.clone())], 1)?;
            let s = OperatorWord::slant_hankel(&phi, self.k);
            let lhs = OperatorWord::mul_monomial(&m).then_apply(&s)?;
            let rhs = s.then_apply(&OperatorWord::mul_monomial(&m.scale(&-self.k.as_ibig())))?;
            if let Some(f) = self.identity(lhs, rhs, &b, "M_{z^m} S != S M_{z^-km}")? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    fn product_formula(&mut self) -> Result<Option<Failure>> {
        for (phi, psi) in self.pairs() {
            self.cases += 1;
            let b = self.id_box(&[&phi, &psi], 1)?;
            let lhs = OperatorWord::mul(phi.clone())
                .then_apply(&OperatorWord::slant_hankel(&psi, self.k))?;
            let sym = phi.substitute_neg_k(self.k).checked_mul(&psi)?;
            let rhs = OperatorWord::slant_hankel(&sym, self.k);
            if let Some(f) = self.identity(lhs, rhs, &b, "M_phi S_psi != S_{phi(z^-k) psi}")? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    fn multiplier_commutation(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        let mut pairs = self.pairs();
        // invertible (monomial) φ against constant and random ψ
        for _ in 0..self.cfg.cases {
            let p = self.random_index();
            let c = random_coeff(self.cfg.coeff_bound, &mut self.rng);
            let phi = LaurentSymbol::monomial(p, c);
            let c2 = random_coeff(self.cfg.coeff_bound, &mut self.rng);
            pairs.push((phi.clone(), LaurentSymbol::constant(self.n, c2)));
            let psi = random_symbol(self.cfg, &mut self.rng);
            pairs.push((phi, psi));
        }
        for (phi, psi) in pairs {
            self.cases += 1;
            let b = self.id_box(&[&phi, &psi], 1)?;
            let s = OperatorWord::slant_hankel(&phi, k);
            let lhs = s.then_apply(&OperatorWord::mul(psi.clone()))?;
            let rhs = OperatorWord::mul(psi.clone()).then_apply(&s)?;
            let op = identity_check(
                &self.engine,
                &lhs,
                &rhs,
                &b,
                ViolationKind::OperatorIdentity,
                "",
            )?;
            let criterion = phi.checked_mul(&psi)? == phi.checked_mul(&psi.substitute_neg_k(k))?;
            let mut bad = op.holds != criterion;
            let invertible = phi.len() == 1;
            let constant = psi.support().all(MultiIndex::is_zero);
            if invertible && op.holds != constant {
                bad = true;
            }
            if bad {
                let ctx = format!(
                    "S_phi M_psi = M_psi S_phi is {}, phi psi = phi psi(z^-k) is {}, psi constant is {} (phi = {phi}, psi = {psi})",
                    op.holds, criterion, constant
                );
                let viol = symbol_violation(ctx, op.holds, criterion).at(
                    op.violation.as_ref().and_then(|v| v.m.clone()),
                    None,
                    None,
                );
                let engine = self.engine;
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        let again = engine.equal_on_box(&lhs, &rhs, &b)?.equal;
                        let crit =
                            phi.checked_mul(&psi)? == phi.checked_mul(&psi.substitute_neg_k(k))?;
                        Ok(again != crit || (invertible && again != constant))
                    }),
                }));
            }
        }
        Ok(None)
    }

    fn slant_hankel_rows(&self) -> Result<IndexBox> {
        IndexBox::cube_i64(self.n, 1)
    }

    fn entry_recurrence(&mut self) -> Result<Option<Failure>> {
        let rows = self.slant_hankel_rows()?;
        for phi in self.symbols() {
            self.cases += 1;
            let cols = self.id_box(&[&phi], 1)?;
            let s = OperatorWord::slant_hankel(&phi, self.k);
            let wnd = self.engine.matrix_window(&s, &rows, &cols)?;
            let c = is_slant_hankel_window(&wnd, self.k);
            match c.verdict {
                WindowVerdict::Holds => {}
                WindowVerdict::Inconclusive => {
                    return Ok(Some(Failure {
                        violation: missing_witness("window holds no recurrence pair"),
                        recheck: Box::new(|| Ok(false)),
                    }))
                }
                WindowVerdict::Fails => {
                    let v = c
                        .violations
                        .into_iter()
                        .next()
                        .expect("failing window has a violation");
                    return Ok(Some(recurrence_failure(self.engine, s, self.k, v)));
                }
            }
        }
        Ok(None)
    }

    fn slant_hankel_matrix(&mut self) -> Result<Option<Failure>> {
        let rows = self.slant_hankel_rows()?;
        for phi in self.symbols() {
            self.cases += 1;
            let cols = self.id_box(&[&phi], 1)?;
            let s = OperatorWord::slant_hankel(&phi, self.k);
            let wnd = self.engine.matrix_window(&s, &rows, &cols)?;
            let expected = slant_hankel_matrix(&phi, self.k, &rows, &cols)?;
            if wnd != expected {
                let (m2, m) = rows
                    .iter()
                    .flat_map(|m2| cols.iter().map(move |m| (m2.clone(), m)))
                    .find(|(m2, m)| wnd.get(m2, m) != expected.get(m2, m))
                    .expect("windows differ somewhere");
                let lhs = wnd.get(&m2, &m).expect("in window").clone();
                let rhs = expected.get(&m2, &m).expect("in window").clone();
                let viol = Violation::new(
                    ViolationKind::EntryRecurrence,
                    lhs,
                    rhs,
                    "entry(m', m) != a_{-km'-m}",
                )
                .at(Some(m.clone()), Some(m2.clone()), None);
                let (engine, k) = (self.engine, self.k);
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        let r = &m2.scale(&-k.as_ibig()) - &m;
                        Ok(engine.entry(&s, &m, &m2)? != phi.coeff(&r))
                    }),
                }));
            }
            let c = is_slant_hankel_window(&wnd, self.k);
            if c.verdict == WindowVerdict::Fails {
                let v = c.violations.into_iter().next().expect("violation");
                return Ok(Some(recurrence_failure(self.engine, s, self.k, v)));
            }
        }
        Ok(None)
    }

    fn conjugation(&mut self) -> Result<Option<Failure>> {
        let (n, k) = (self.n, self.k);
        let b = self.id_box(&[], 2)?;
        let mut cases = vec![(MultiIndex::zero(n), MultiIndex::unit(1, n)?)];
        for _ in 0..self.cfg.cases {
            let m = self.random_index();
            let mut l = self.random_index();
            if l.divisible_by(&k.as_ibig()) {
                l = &l + &MultiIndex::unit(1, n)?;
            }
            cases.push((m, l));
        }
        let v = OperatorWord::slant_v(n, k);
        let va = OperatorWord::slant_v_adj(n, k);
        for (m, l) in cases {
            self.cases += 1;
            let r = conjugation_identity_check(&self.engine, k, &m, &l, &b)?;
            if let Some(viol) = r.monomial.violation {
                let lhs = v
                    .then_apply(&OperatorWord::mul_monomial(&m.scale(&-k.as_ibig())))?
                    .then_apply(&va)?;
                return Ok(Some(identity_failure(
                    self.engine,
                    lhs.into(),
                    OperatorWord::mul_monomial(&m).into(),
                    viol,
                )));
            }
            if let Some(viol) = r.annihilation.and_then(|c| c.violation) {
                let lhs = v
                    .then_apply(&OperatorWord::mul_monomial(&-l.clone()))?
                    .then_apply(&va)?;
                return Ok(Some(identity_failure(
                    self.engine,
                    lhs.into(),
                    zero_operator(n).into(),
                    viol,
                )));
            }
        }
        Ok(None)
    }

    fn v_times_slant_hankel(&mut self) -> Result<Option<Failure>> {
        let rows = self.slant_hankel_rows()?;
        for phi in self.symbols() {
            self.cases += 1;
            let cols = self.id_box(&[&phi], 1)?;
            let p = v_slant_hankel_prediction(&self.engine, &phi, self.k, &rows, &cols)?;
            let word = OperatorWord::slant_v(self.n, self.k)
                .then_apply(&OperatorWord::slant_hankel(&phi, self.k))?;
            if !p.agree {
                let viol = Violation::new(
                    ViolationKind::SymbolCriterion,
                    Scalar::from_int(p.detected as i64),
                    Scalar::from_int(p.predicted as i64),
                    format!("recurrence violations of V S_phi differ from the coefficient prediction for phi = {phi}"),
                );
                let (engine, k) = (self.engine, self.k);
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        Ok(!v_slant_hankel_prediction(&engine, &phi, k, &rows, &cols)?.agree)
                    }),
                }));
            }
            match (phi.is_zero(), p.window.verdict) {
                (true, WindowVerdict::Holds) | (false, WindowVerdict::Fails) => {}
                (true, _) => {
                    let v = p.window.violations.into_iter().next();
                    return Ok(Some(match v {
                        Some(v) => recurrence_failure(self.engine, word, self.k, v),
                        None => {
                            confirmed(missing_witness("window of V S_0 holds no recurrence pair"))
                        }
                    }));
                }
                (false, _) => {
                    let viol = missing_witness(format!(
                        "V S_phi passes the recurrence on the window for phi = {phi}"
                    ));
                    let (engine, k) = (self.engine, self.k);
                    return Ok(Some(Failure {
                        violation: viol,
                        recheck: Box::new(move || {
                            let wnd = engine.matrix_window(&word, &rows, &cols)?;
                            Ok(is_slant_hankel_window(&wnd, k).verdict != WindowVerdict::Fails)
                        }),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn vanishing_product(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        let mut pairs = self.pairs();
        let zero = LaurentSymbol::zero(self.n);
        for _ in 0..self.cfg.cases.min(5) {
            let a = random_symbol(self.cfg, &mut self.rng);
            pairs.push((zero.clone(), a.clone()));
            pairs.push((a, zero.clone()));
        }
        for (phi, psi) in pairs {
            self.cases += 1;
            let b = self.id_box(&[&phi, &psi], 2)?;
            let r = product_vanishing_check(&self.engine, &phi, &psi, k, &b)?;
            let window_bad = r.symbol_zero && r.window.verdict == WindowVerdict::Fails;
            if r.symbol_zero != r.operator_zero || window_bad {
                let viol = symbol_violation(
                    format!(
                        "phi(z^-k) psi = 0 is {}, S_phi S_psi = 0 is {}, window {:?} (phi = {phi}, psi = {psi})",
                        r.symbol_zero, r.operator_zero, r.window.verdict
                    ),
                    r.operator_zero,
                    r.symbol_zero,
                )
                .at(r.operator.violation.as_ref().and_then(|v| v.m.clone()), None, None);
                let engine = self.engine;
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        let prod = OperatorWord::slant_hankel(&phi, k)
                            .then_apply(&OperatorWord::slant_hankel(&psi, k))?;
                        let op_zero = engine.first_nonzero_image(&prod, &b.points())?.is_none();
                        let sym_zero = phi.substitute_neg_k(k).checked_mul(&psi)?.is_zero();
                        let r = product_vanishing_check(&engine, &phi, &psi, k, &b)?;
                        Ok(op_zero != sym_zero
                            || (sym_zero && r.window.verdict == WindowVerdict::Fails))
                    }),
                }));
            }
        }
        // idempotence: S_φ² = S_φ only for φ = 0
        for phi in self.symbols() {
            self.cases += 1;
            let s = OperatorWord::slant_hankel(&phi, k);
            if phi.is_zero() {
                let b = self.id_box(&[&phi], 2)?;
                if let Some(f) = self.identity(s.pow(2), s.clone(), &b, "S_0^2 != S_0")? {
                    return Ok(Some(f));
                }
            } else if idempotence_witness(&self.engine, &phi, k)?.is_none() {
                let engine = self.engine;
                return Ok(Some(Failure {
                    violation: missing_witness(format!(
                        "no m with S_phi^2 e_m != S_phi e_m for phi = {phi}"
                    )),
                    recheck: Box::new(move || Ok(idempotence_witness(&engine, &phi, k)?.is_none())),
                }));
            }
        }
        Ok(None)
    }

    fn adjoint_not_slant_hankel(&mut self) -> Result<Option<Failure>> {
        let (n, k) = (self.n, self.k);
        let cols = IndexBox::new(
            MultiIndex::unit(1, n)?.scale(&-k.as_ibig()),
            MultiIndex::zero(n),
        )?;
        for phi in self.symbols() {
            self.cases += 1;
            let radius = phi.support_radius() + dashu::integer::IBig::ONE;
            let rows = IndexBox::cube(n, &radius)?;
            let s_adj = self.engine.adjoint(&OperatorWord::slant_hankel(&phi, k));
            let wnd = self.engine.matrix_window(&s_adj, &rows, &cols)?;
            let c = is_slant_hankel_window(&wnd, k);
            match (phi.is_zero(), c.verdict) {
                (true, WindowVerdict::Holds) | (false, WindowVerdict::Fails) => {}
                (true, _) => {
                    let v = c.violations.into_iter().next().expect("violation");
                    return Ok(Some(recurrence_failure(self.engine, s_adj, k, v)));
                }
                (false, _) => {
                    let engine = self.engine;
                    return Ok(Some(Failure {
                        violation: missing_witness(format!(
                            "S_phi* passes the recurrence on the window for phi = {phi}"
                        )),
                        recheck: Box::new(move || {
                            let wnd = engine.matrix_window(&s_adj, &rows, &cols)?;
                            Ok(is_slant_hankel_window(&wnd, k).verdict != WindowVerdict::Fails)
                        }),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn hyponormality(&mut self) -> Result<Option<Failure>> {
        let (n, k) = (self.n, self.k);
        let near = IndexBox::cube_i64(n, 1)?;
        for phi in self.symbols() {
            self.cases += 1;
            let search = if phi.is_zero() {
                self.id_box(&[], 1)?
            } else {
                near.clone()
            };
            let w = hyponormality_witness(&self.engine, &phi, k, &search)?;
            match (phi.is_zero(), w) {
                (true, None) | (false, Some(_)) => {}
                (true, Some(w)) => {
                    let viol = Violation::new(
                        ViolationKind::NormDefect,
                        Scalar::real(w.adjoint_norm_sq.clone()),
                        Scalar::real(w.norm_sq.clone()),
                        "|S_0* e_m|^2 > |S_0 e_m|^2",
                    )
                    .at(Some(w.m.clone()), None, None);
                    let engine = self.engine;
                    return Ok(Some(Failure {
                        violation: viol,
                        recheck: Box::new(move || {
                            let s = OperatorWord::slant_hankel(&phi, k);
                            let a = norm_sq_by_entries(&engine, &engine.adjoint(&s), &w.m)?;
                            let b = norm_sq_by_entries(&engine, &s, &w.m)?;
                            Ok(a > b)
                        }),
                    }));
                }
                (false, None) => {
                    let engine = self.engine;
                    return Ok(Some(Failure {
                        violation: missing_witness(format!(
                            "no hyponormality witness in {search} for phi = {phi}"
                        )),
                        recheck: Box::new(move || {
                            let s = OperatorWord::slant_hankel(&phi, k);
                            let s_adj = engine.adjoint(&s);
                            for m in center_out(&search) {
                                if norm_sq_by_entries(&engine, &s_adj, &m)?
                                    > norm_sq_by_entries(&engine, &s, &m)?
                                {
                                    return Ok(false);
                                }
                            }
                            Ok(true)
                        }),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn reduction_ts(&mut self) -> Result<Vec<MultiIndex>> {
        let (n, k) = (self.n, i64::from(self.k.get()));
        let mut ts = Vec::new();
        for s in 1..k * k {
            let j = ((s - 1) as usize) % n + 1;
            ts.push(MultiIndex::unit(j, n)?.scale_i64(s));
        }
        ts.push(self.random_index());
        Ok(ts)
    }

    fn chi_reduction(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        let symbols = self.symbols();
        let zero = LaurentSymbol::zero(self.n);
        for phi in symbols {
            let ts = self.reduction_ts()?;
            let b = self.id_box(&[&phi], 1)?;
            let s = OperatorWord::slant_hankel(&phi, k);
            let v = OperatorWord::slant_v(self.n, k);
            for t in ts {
                self.cases += 1;
                let r = mul_reduction_check(&self.engine, &phi, &zero, &t, k, &b)?;
                if let Some(viol) = r.chi.violation {
                    let lhs = v.then_apply(
                        &self
                            .engine
                            .adjoint(&s.then_apply(&OperatorWord::mul_monomial(&t))?),
                    )?;
                    let chi = phi.shift(&t).conjugate().slant_transform(k);
                    return Ok(Some(identity_failure(
                        self.engine,
                        lhs.into(),
                        OperatorWord::mul(chi).into(),
                        viol,
                    )));
                }
            }
        }
        Ok(None)
    }

    fn lambda_reduction(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        let v2 = OperatorWord::slant_v(self.n, k).pow(2);
        for (phi, psi) in self.pairs() {
            self.cases += 1;
            let b = self.id_box(&[&phi, &psi], 2)?;
            let prod = OperatorWord::slant_hankel(&phi, k)
                .then_apply(&OperatorWord::slant_hankel(&psi, k))?;
            let lhs = v2.then_apply(&self.engine.adjoint(&prod))?;
            let lam = psi
                .conjugate()
                .checked_mul(&phi.conjugate().substitute_neg_k(k))?
                .slant_transform(k)
                .slant_transform(k);
            if let Some(f) = self.identity(
                lhs,
                OperatorWord::mul(lam),
                &b,
                "V^2 (S_phi S_psi)* != M_Lambda",
            )? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    fn commutation(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        let mut pairs = self.pairs();
        for _ in 0..self.cfg.cases.min(10) {
            let phi = random_symbol(self.cfg, &mut self.rng);
            let c = random_coeff(self.cfg.coeff_bound, &mut self.rng);
            pairs.push((phi.clone(), phi.clone()));
            pairs.push((phi.clone(), phi.scale(&c)));
        }
        for (phi, psi) in pairs {
            self.cases += 1;
            let b = self.id_box(&[&phi, &psi], 2)?;
            let r = commutator_check(&self.engine, &phi, &psi, k, &b)?;
            let sp = OperatorWord::slant_hankel(&phi, k);
            let sq = OperatorWord::slant_hankel(&psi, k);
            let pq = sp.then_apply(&sq)?;
            let qp = sq.then_apply(&sp)?;
            if let Some(viol) = r.reduction.violation {
                let diff = WordSum::difference(&pq, &qp)?;
                let reduced = OperatorWord::slant_v(self.n, k)
                    .pow(2)
                    .then_apply(&OperatorWord::mul(r.sigma))?;
                return Ok(Some(identity_failure(
                    self.engine,
                    diff.into(),
                    reduced.into(),
                    viol,
                )));
            }
            if r.commute.holds != r.sigma.is_zero() {
                let viol = symbol_violation(
                    format!(
                        "S_phi S_psi = S_psi S_phi is {}, sigma = 0 is {} (phi = {phi}, psi = {psi})",
                        r.commute.holds,
                        r.sigma.is_zero()
                    ),
                    r.commute.holds,
                    r.sigma.is_zero(),
                );
                let engine = self.engine;
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        let comm = engine.equal_on_box(&pq, &qp, &b)?.equal;
                        Ok(comm != analysis::commutator_symbol(&phi, &psi, k)?.is_zero())
                    }),
                }));
            }
        }
        Ok(None)
    }

    fn s1_product(&mut self) -> Result<Option<Failure>> {
        let (n, k) = (self.n, self.k);
        let k2 = k.pow(2);
        let residues = center_out(&residue_box(n, &k2)?);
        let s1 = OperatorWord::slant_hankel(&LaurentSymbol::one(n), k);
        for phi in self.symbols() {
            self.cases += 1;
            let word = s1.then_apply(&OperatorWord::slant_hankel(&phi, k))?;
            if phi.is_zero() {
                let b = self.id_box(&[], 2)?;
                if let Some(f) = self.identity(word, zero_operator(n), &b, "S_1 S_0 != 0")? {
                    return Ok(Some(f));
                }
                continue;
            }
            match self.engine.first_nonzero_image(&word, &residues)? {
                Some((m, img)) => {
                    // the entry must be a_{k²m'−m}
                    let (m2, a) = img
                        .terms()
                        .next()
                        .map(|(i, a)| (i.clone(), a.clone()))
                        .expect("nonzero");
                    let r = &m2.scale(&k2) - &m;
                    let want = phi.coeff(&r);
                    if a != want {
                        let viol = Violation::new(
                            ViolationKind::EntryRecurrence,
                            a,
                            want,
                            "entry(S_1 S_phi; m, m') != a_{k^2 m' - m}",
                        )
                        .at(Some(m.clone()), Some(m2.clone()), None);
                        let engine = self.engine;
                        return Ok(Some(Failure {
                            violation: viol,
                            recheck: Box::new(move || {
                                Ok(engine.entry(&word, &m, &m2)? != phi.coeff(&r))
                            }),
                        }));
                    }
                }
                None => {
                    let engine = self.engine;
                    return Ok(Some(Failure {
                        violation: missing_witness(format!(
                            "S_1 S_phi vanishes on a residue system mod k^2 for phi = {phi}"
                        )),
                        recheck: Box::new(move || {
                            for m in &residues {
                                let img = engine.apply_basis(&word, m)?;
                                for m2 in img.support() {
                                    if !engine.entry(&word, m, m2)?.is_zero() {
                                        return Ok(false);
                                    }
                                }
                            }
                            Ok(true)
                        }),
                    }));
                }
            }
        }
        Ok(None)
    }

    fn non_isometry(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        for phi in self.symbols() {
            self.cases += 1;
            let b = self.id_box(&[&phi], 1)?;
            let r = isometry_defect(&self.engine, &phi, k, &b)?;
            if let Some(viol) = r.identity.violation {
                let s = OperatorWord::slant_hankel(&phi, k);
                let lhs = s.then_apply(&self.engine.adjoint(&s))?;
                let ups = phi.checked_mul(&phi.conjugate())?.slant_transform(k);
                return Ok(Some(identity_failure(
                    self.engine,
                    lhs.into(),
                    OperatorWord::mul(ups).into(),
                    viol,
                )));
            }
            if r.isometric_on_box() {
                let engine = self.engine;
                return Ok(Some(Failure {
                    violation: missing_witness(format!(
                        "S_phi looks isometric on {b} for phi = {phi}"
                    )),
                    recheck: Box::new(move || {
                        Ok(isometry_defect(&engine, &phi, k, &b)?.isometric_on_box())
                    }),
                }));
            }
        }
        Ok(None)
    }

    fn injectivity(&mut self) -> Result<Option<Failure>> {
        let k = self.k;
        for phi in self.symbols() {
            self.cases += 1;
            let r = injectivity_check(&self.engine, &phi, k, None)?;
            if !r.holds {
                let diff = r.recovered.checked_sub(&phi)?;
                let (idx, a, want) = match diff.support().next() {
                    Some(i) => (i.clone(), r.recovered.coeff(i), phi.coeff(i)),
                    None => (
                        MultiIndex::zero(self.n),
                        Scalar::from_int(i64::from(r.operator_zero)),
                        Scalar::from_int(i64::from(phi.is_zero())),
                    ),
                };
                let viol = Violation::new(
                    ViolationKind::SymbolCriterion,
                    a,
                    want,
                    "coefficient recovered from S_phi differs from phi",
                )
                .at(Some(-idx.clone()), Some(MultiIndex::zero(self.n)), None);
                let engine = self.engine;
                let n = self.n;
                return Ok(Some(Failure {
                    violation: viol,
                    recheck: Box::new(move || {
                        let s = OperatorWord::slant_hankel(&phi, k);
                        let got = engine.entry(&s, &-idx.clone(), &MultiIndex::zero(n))?;
                        Ok(got != phi.coeff(&idx)
                            || !injectivity_check(&engine, &phi, k, None)?.holds)
                    }),
                }));
            }
        }
        Ok(None)
    }
}

/// `P_e`: keeps `e_m` when `k | m`.
struct LatticeProjection {
    n: usize,
    k: SlantOrder,
}

impl LinearOperator for LatticeProjection {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply_with(&self, _engine: &Engine, v: &FourierVector) -> Result<FourierVector> {
        let kk = self.k.as_ibig();
        LaurentSymbol::from_terms(
            self.n,
            v.terms()
                .filter(|(m, _)| m.divisible_by(&kk))
                .map(|(m, a)| (m.clone(), a.clone())),
        )
    }
}

fn located(v: &Violation) -> Result<(MultiIndex, MultiIndex)> {
    match (&v.m, &v.m_prime) {
        (Some(m), Some(m2)) => Ok((m.clone(), m2.clone())),
        _ => Err(Error::Input("violation has no location".into())),
    }
}

fn identity_failure(engine: Engine, lhs: Op, rhs: Op, violation: Violation) -> Failure {
    let v = violation.clone();
    Failure {
        violation,
        recheck: Box::new(move || {
            let (m, m2) = located(&v)?;
            let a = lhs.entry(&engine, &m, &m2)?;
            let b = rhs.entry(&engine, &m, &m2)?;
            Ok(a != b && a == v.lhs && b == v.rhs)
        }),
    }
}

fn recurrence_failure(
    engine: Engine,
    word: OperatorWord,
    k: SlantOrder,
    violation: Violation,
) -> Failure {
    let v = violation.clone();
    Failure {
        violation,
        recheck: Box::new(move || {
            let (m, m2) = located(&v)?;
            let j =
                v.j.ok_or_else(|| Error::Input("violation has no coordinate".into()))?;
            let ej = MultiIndex::unit(j, m.dim())?;
            let base = engine.entry(&word, &m, &m2)?;
            let shifted = engine.entry(&word, &(&m - &ej.scale(&k.as_ibig())), &(&m2 + &ej))?;
            Ok(base != shifted)
        }),
    }
}

/// `‖T e_m‖²` summed from individual entries over the support of the image.
fn norm_sq_by_entries(
    engine: &Engine,
    w: &OperatorWord,
    m: &MultiIndex,
) -> Result<dashu::rational::RBig> {
    let img = engine.apply_basis(w, m)?;
    let mut acc = dashu::rational::RBig::ZERO;
    for m2 in img.support() {
        acc += engine.entry(w, m, m2)?.norm_sq();
    }
    Ok(acc)
}
