//! Exact checks of Liouville-type lower bounds and of the conjugate gap of
//! quadratic numbers.
//!
//! Every quantity is a q-exponent: `|x| = q^e`. Bounds with fractional
//! exponents are exact rationals, never floats.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebraic::{
    distance, is_irreducible_quadratic, poly_value_abs, root_multiplicity, roots_with_multiplicity,
    AlgebraicNumber,
};
use crate::cf::{quadratic_conjugate_gap, ConjugateGap};
use crate::error::{Error, Result};
use crate::dense::{sparse, Leading, PowerWindows};
use crate::field::{FieldSpec, Fq};
use crate::poly::{AbsValue, Poly};
use crate::report::Exponent;
use crate::xpoly::XPoly;

/// The inequalities that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiouvilleCase {
    /// `|P(β)| >= max(1,|β|)^m H(P)^{1−n/u} H(Q)^{−m/u}`.
    PolyValue,
    /// `|α − β| >= max(1,|α|) max(1,|β|) H(P)^{−n/tu} H(Q)^{−m/tu}`.
    RootDistance,
    /// `|α − α'| >= H(P)^{−n/f^2 + 1/f}` for distinct roots of one irreducible `P`.
    ConjugateSeparation,
    /// `|α − β| >= max(1,|α|) max(1,|β|) H(α)^{−n/fg} H(β)^{−m/fg}`.
    DistinctNumbers,
    /// `|α − α'| >= H(α)^{−1}`.
    ConjugateGapLower,
    /// `|α − α'| <= H(α)`.
    ConjugateGapUpper,
    /// `|α − β| >= max(1, |α − α'|^{−1}) H(α)^{−2} H(β)^{−2}` for quadratics.
    QuadraticPair,
}

impl LiouvilleCase {
    pub const ALL: [LiouvilleCase; 7] = [
        LiouvilleCase::PolyValue,
        LiouvilleCase::RootDistance,
        LiouvilleCase::ConjugateSeparation,
        LiouvilleCase::DistinctNumbers,
        LiouvilleCase::ConjugateGapLower,
        LiouvilleCase::ConjugateGapUpper,
        LiouvilleCase::QuadraticPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LiouvilleCase::PolyValue => "poly_value",
            LiouvilleCase::RootDistance => "root_distance",
            LiouvilleCase::ConjugateSeparation => "conjugate_separation",
            LiouvilleCase::DistinctNumbers => "distinct_numbers",
            LiouvilleCase::ConjugateGapLower => "conjugate_gap_lower",
            LiouvilleCase::ConjugateGapUpper => "conjugate_gap_upper",
            LiouvilleCase::QuadraticPair => "quadratic_pair",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let norm = s.trim().replace('-', "_").to_ascii_lowercase();
        LiouvilleCase::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown inequality case '{s}'")))
    }

    /// Upper bounds hold when `lhs <= rhs`, lower bounds when `lhs >= rhs`.
    pub fn is_upper_bound(self) -> bool {
        self == LiouvilleCase::ConjugateGapUpper
    }

    fn index(self) -> usize {
        LiouvilleCase::ALL.iter().position(|&c| c == self).expect("listed")
    }
}

impl fmt::Display for LiouvilleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One checked instance: `lhs` is the measured exponent, `rhs` the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiouvilleReport {
    pub case: LiouvilleCase,
    pub ids: String,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub lhs: Exponent,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub rhs: Exponent,
    pub holds: bool,
}

impl LiouvilleReport {
    fn new(case: LiouvilleCase, ids: String, lhs: Exponent, rhs: Exponent) -> Self {
        let holds = if case.is_upper_bound() { lhs <= rhs } else { lhs >= rhs };
        LiouvilleReport { case, ids, lhs, rhs, holds }
    }

    /// Distance to the bound, nonnegative exactly when the inequality holds.
    pub fn slack(&self) -> Exponent {
        if self.case.is_upper_bound() {
            self.rhs - self.lhs
        } else {
            self.lhs - self.rhs
        }
    }
}

fn r(n: i64) -> Exponent {
    Ratio::from_integer(n)
}

/// Bound for `|P(β)|`: `m β⁺ + (1 − n/u) h_P − (m/u) h_Q`.
pub fn poly_value_rhs(m: i64, n: i64, u: i64, hp: i64, hq: i64, beta_plus: i64) -> Exponent {
    r(m * beta_plus) + (r(1) - Ratio::new(n, u)) * hp - Ratio::new(m, u) * hq
}

/// Bound for `|α − β|` with `α` a root of `P` of order `t`, `β` of `Q` of order `u`.
#[allow(clippy::too_many_arguments)]
pub fn root_distance_rhs(m: i64, n: i64, t: i64, u: i64, hp: i64, hq: i64, a_plus: i64, b_plus: i64) -> Exponent {
    r(a_plus + b_plus) - Ratio::new(n * hp + m * hq, t * u)
}

/// Bound for distinct roots of an irreducible polynomial of degree `n` and
/// inseparable degree `f`.
pub fn conjugate_separation_rhs(n: i64, f: i64, h: i64) -> Exponent {
    (Ratio::new(-n, f * f) + Ratio::new(1, f)) * h
}

/// Bound for distinct algebraic numbers of degrees `m, n`, inseparable degrees `f, g`.
#[allow(clippy::too_many_arguments)]
pub fn distinct_numbers_rhs(m: i64, n: i64, f: i64, g: i64, ha: i64, hb: i64, a_plus: i64, b_plus: i64) -> Exponent {
    r(a_plus + b_plus) - Ratio::new(n * ha + m * hb, f * g)
}

/// Bound for quadratic `α, β` with different minimal polynomials.
pub fn quadratic_pair_rhs(gap: Exponent, ha: i64, hb: i64) -> Exponent {
    (-gap).max(r(0)) - r(2 * ha + 2 * hb)
}

fn exp_of(v: AbsValue, what: &str) -> Result<Exponent> {
    v.exponent()
        .map(r)
        .ok_or_else(|| Error::pre(format!("{what} vanishes")))
}

/// `|P(β)|` against its lower bound, `β` being a root of `Q`.
pub fn check_poly_value(p: &XPoly, q: &XPoly, beta: &AlgebraicNumber) -> Result<LiouvilleReport> {
    let (m, n) = degrees(p, q)?;
    let u = root_multiplicity(beta.minpoly(), q) as i64;
    if u == 0 {
        return Err(Error::pre(format!("{beta} is not a root of Q = {q}")));
    }
    let lhs = exp_of(poly_value_abs(p, beta)?, "P(β)")?;
    let rhs = poly_value_rhs(m, n, u, p.height_exp()?, q.height_exp()?, beta.max1_exp()?);
    Ok(LiouvilleReport::new(LiouvilleCase::PolyValue, format!("P={p}; Q={q}; beta={beta}"), lhs, rhs))
}

/// `|α − β|` for a root `α` of `P` and a root `β` of `Q` with `P(β) ≠ 0`.
pub fn check_root_distance(p: &XPoly, alpha: &AlgebraicNumber, q: &XPoly, beta: &AlgebraicNumber) -> Result<LiouvilleReport> {
    let (m, n) = degrees(p, q)?;
    let t = root_multiplicity(alpha.minpoly(), p) as i64;
    let u = root_multiplicity(beta.minpoly(), q) as i64;
    if t == 0 || u == 0 {
        return Err(Error::pre("α must be a root of P and β a root of Q"));
    }
    if root_multiplicity(beta.minpoly(), p) > 0 {
        return Err(Error::pre(format!("P(β) = 0 for P = {p}, β = {beta}")));
    }
    let lhs = exp_of(distance(alpha, beta)?, "α − β")?;
    let rhs = root_distance_rhs(m, n, t, u, p.height_exp()?, q.height_exp()?, alpha.max1_exp()?, beta.max1_exp()?);
    Ok(LiouvilleReport::new(
        LiouvilleCase::RootDistance,
        format!("P={p}; alpha={alpha}; Q={q}; beta={beta}"),
        lhs,
        rhs,
    ))
}

fn degrees(p: &XPoly, q: &XPoly) -> Result<(i64, i64)> {
    match (p.deg_x(), q.deg_x()) {
        (Some(m), Some(n)) if m > 0 && n > 0 => Ok((m as i64, n as i64)),
        _ => Err(Error::pre("P and Q must be non-constant")),
    }
}

fn separable_gap(p: &XPoly) -> Result<Exponent> {
    if !is_irreducible_quadratic(p)? {
        return Err(Error::pre(format!("{p} is reducible")));
    }
    match quadratic_conjugate_gap(p)? {
        ConjugateGap::Separable(g) => Ok(g),
        ConjugateGap::Inseparable => Err(Error::pre(format!("{p} is inseparable: its roots coincide"))),
    }
}

/// Distinct conjugate roots of an irreducible separable quadratic `P`;
/// the exact gap comes from the coefficients, so the roots need not lie in
/// F_q((T^{-1})).
pub fn check_conjugate_separation(p: &XPoly) -> Result<LiouvilleReport> {
    let gap = separable_gap(p)?;
    let rhs = conjugate_separation_rhs(2, p.insep_degree() as i64, p.height_exp()?);
    Ok(LiouvilleReport::new(LiouvilleCase::ConjugateSeparation, format!("P={p}"), gap, rhs))
}

/// Both sides of `H^{−1} <= |α − α'| <= H` for a separable irreducible quadratic.
pub fn check_conjugate_gap(p: &XPoly) -> Result<[LiouvilleReport; 2]> {
    let gap = separable_gap(p)?;
    let h = p.height_exp()?;
    let ids = format!("P={p}");
    Ok([
        LiouvilleReport::new(LiouvilleCase::ConjugateGapLower, ids.clone(), gap, r(-h)),
        LiouvilleReport::new(LiouvilleCase::ConjugateGapUpper, ids, gap, r(h)),
    ])
}

/// `|α − β|` for distinct algebraic numbers.
pub fn check_distinct_numbers(alpha: &AlgebraicNumber, beta: &AlgebraicNumber) -> Result<LiouvilleReport> {
    if alpha == beta {
        return Err(Error::pre("α and β must be distinct"));
    }
    let lhs = exp_of(distance(alpha, beta)?, "α − β")?;
    let rhs = distinct_numbers_rhs(
        alpha.degree() as i64,
        beta.degree() as i64,
        alpha.insep() as i64,
        beta.insep() as i64,
        alpha.height_exp(),
        beta.height_exp(),
        alpha.max1_exp()?,
        beta.max1_exp()?,
    );
    Ok(LiouvilleReport::new(LiouvilleCase::DistinctNumbers, format!("alpha={alpha}; beta={beta}"), lhs, rhs))
}

/// `|α − β|` for quadratic numbers with different minimal polynomials.
pub fn check_quadratic_pair(alpha: &AlgebraicNumber, beta: &AlgebraicNumber) -> Result<LiouvilleReport> {
    if alpha.degree() != 2 || beta.degree() != 2 {
        return Err(Error::pre("α and β must be quadratic"));
    }
    if alpha.minpoly() == beta.minpoly() {
        return Err(Error::pre("α and β share their minimal polynomial"));
    }
    let gap = separable_gap(alpha.minpoly())?;
    let lhs = exp_of(distance(alpha, beta)?, "α − β")?;
    let rhs = quadratic_pair_rhs(gap, alpha.height_exp(), beta.height_exp());
    Ok(LiouvilleReport::new(LiouvilleCase::QuadraticPair, format!("alpha={alpha}; beta={beta}"), lhs, rhs))
}

/// Inputs for [`check_liouville`]; each case reads the fields it needs.
#[derive(Debug, Clone, Default)]
pub struct LiouvilleInputs {
    pub p: Option<XPoly>,
    pub q: Option<XPoly>,
    pub alpha: Option<AlgebraicNumber>,
    pub beta: Option<AlgebraicNumber>,
}

/// Dispatches to the checker of `case`.
pub fn check_liouville(case: LiouvilleCase, inputs: &LiouvilleInputs) -> Result<LiouvilleReport> {
    fn need<'a, T>(x: &'a Option<T>, name: &str) -> Result<&'a T> {
        x.as_ref().ok_or_else(|| Error::pre(format!("missing input {name}")))
    }
    match case {
        LiouvilleCase::PolyValue => check_poly_value(need(&inputs.p, "P")?, need(&inputs.q, "Q")?, need(&inputs.beta, "beta")?),
        LiouvilleCase::RootDistance => check_root_distance(
            need(&inputs.p, "P")?,
            need(&inputs.alpha, "alpha")?,
            need(&inputs.q, "Q")?,
            need(&inputs.beta, "beta")?,
        ),
        LiouvilleCase::ConjugateSeparation => check_conjugate_separation(need(&inputs.p, "P")?),
        LiouvilleCase::DistinctNumbers => check_distinct_numbers(need(&inputs.alpha, "alpha")?, need(&inputs.beta, "beta")?),
        LiouvilleCase::ConjugateGapLower => Ok(check_conjugate_gap(need(&inputs.p, "P")?)?[0].clone()),
        LiouvilleCase::ConjugateGapUpper => Ok(check_conjugate_gap(need(&inputs.p, "P")?)?[1].clone()),
        LiouvilleCase::QuadraticPair => check_quadratic_pair(need(&inputs.alpha, "alpha")?, need(&inputs.beta, "beta")?),
    }
}

/// Parameters of [`liouville_sweep`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Exhaustive part: coefficients of degree at most this (`H <= q^h`).
    pub max_height: u32,
    /// Number of random polynomial pairs.
    pub random: usize,
    /// Coefficient degree bound of the random pairs.
    pub random_max_height: u32,
    pub seed: u64,
    /// Working precision of the precomputed root expansions.
    pub precision: i64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_height: 2, random: 10_000, random_max_height: 6, seed: 1, precision: 40 }
    }
}

/// Per-case totals of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct CaseTally {
    pub case: LiouvilleCase,
    pub checked: u64,
    pub violations: u64,
    /// Smallest slack seen (0 means some instance is sharp).
    #[serde(serialize_with = "crate::report::ser_opt_ratio")]
    pub min_slack: Option<Exponent>,
    /// Instances whose precomputed expansions were too short and that were
    /// redone with adaptive precision.
    pub refined: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub field: FieldSpec,
    pub polynomials: usize,
    pub numbers: usize,
    pub random_pairs: usize,
    pub tallies: Vec<CaseTally>,
    pub violations: Vec<LiouvilleReport>,
    pub elapsed_ms: u128,
}

impl SweepSummary {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty() && self.tallies.iter().all(|t| t.violations == 0)
    }

    pub fn total_checked(&self) -> u64 {
        self.tallies.iter().map(|t| t.checked).sum()
    }
}

struct Tallies {
    t: Vec<CaseTally>,
    violations: Vec<LiouvilleReport>,
}

impl Tallies {
    fn new() -> Self {
        let t = LiouvilleCase::ALL
            .iter()
            .map(|&case| CaseTally { case, checked: 0, violations: 0, min_slack: None, refined: 0 })
            .collect();
        Tallies { t, violations: Vec::new() }
    }

    /// Records a scaled instance (`4·slack`); returns whether it holds.
    fn scaled(&mut self, case: LiouvilleCase, slack4: i64) -> bool {
        let e = &mut self.t[case.index()];
        e.checked += 1;
        let s = Ratio::new(slack4, 4);
        if e.min_slack.is_none_or(|m| s < m) {
            e.min_slack = Some(s);
        }
        if slack4 < 0 {
            e.violations += 1;
        }
        slack4 >= 0
    }

    fn report(&mut self, rep: LiouvilleReport) {
        let e = &mut self.t[rep.case.index()];
        e.checked += 1;
        let s = rep.slack();
        if e.min_slack.is_none_or(|m| s < m) {
            e.min_slack = Some(s);
        }
        if !rep.holds {
            e.violations += 1;
            self.violations.push(rep);
        }
    }

    /// A violation found by the fast path, confirmed by the generic checker.
    fn confirm(&mut self, rep: Result<LiouvilleReport>) {
        match rep {
            Ok(rep) if !rep.holds => self.violations.push(rep),
            Ok(rep) => self.violations.push(LiouvilleReport {
                ids: format!("{} (fast path disagreed with the generic checker)", rep.ids),
                holds: false,
                ..rep
            }),
            Err(e) => self.violations.push(LiouvilleReport {
                case: LiouvilleCase::PolyValue,
                ids: format!("generic checker failed: {e}"),
                lhs: r(0),
                rhs: r(0),
                holds: false,
            }),
        }
    }

    fn refined(&mut self, case: LiouvilleCase) {
        self.t[case.index()].refined += 1;
    }
}

/// Every polynomial of `X`-degree 1 or 2 in min form whose coefficients have
/// degree at most `h`.
pub fn enumerate_min_form(field: &Fq, h: u32) -> Vec<XPoly> {
    let q = field.q();
    let count = q.pow(h + 1);
    let polys: Vec<Poly> = (0..count)
        .map(|i| {
            let digits: Vec<usize> = (0..=h).map(|j| (i / q.pow(j)) % q).collect();
            Poly::from_indices(field, &digits).expect("indices below q")
        })
        .collect();
    let leads: Vec<&Poly> = polys.iter().filter(|p| !p.is_zero() && p.is_monic()).collect();
    let mut out = Vec::new();
    for &a in &leads {
        for b in &polys {
            let x = XPoly::new(field, vec![b.clone(), a.clone()]);
            if x.is_min_form() {
                out.push(x);
            }
        }
    }
    for &a in &leads {
        for b in &polys {
            for c in &polys {
                let x = XPoly::new(field, vec![c.clone(), b.clone(), a.clone()]);
                if x.is_min_form() {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// A root with its expansion laid out densely for the fast path.
struct Dense {
    num: AlgebraicNumber,
    plus: i64,
    pows: PowerWindows,
    /// Enumerated `P` vanishing here, grouped by `(deg P, h_P, order)`.
    containing: Vec<((i64, i64, i64), Vec<usize>)>,
    h: i64,
    deg: i64,
    /// `4·gap` of the minimal polynomial, quadratic numbers only.
    gap4: Option<i64>,
}

/// Distinct field roots of `polys` with dense expansions, and for each
/// polynomial the indices of its roots.
fn build_numbers(polys: &[XPoly], k: i64) -> Result<(Vec<Dense>, Vec<Vec<usize>>)> {
    let mut index: HashMap<AlgebraicNumber, usize> = HashMap::new();
    let mut nums: Vec<Dense> = Vec::new();
    let mut roots_of: Vec<Vec<usize>> = Vec::with_capacity(polys.len());
    for p in polys {
        let hp = p.height_exp()?;
        let m = p.deg_x().expect("nonconstant") as i64;
        let mut mine = Vec::new();
        for (a, t) in roots_with_multiplicity(p)? {
            let id = match index.get(&a) {
                Some(&id) => id,
                None => {
                    let s = a.series(k)?;
                    let pows = PowerWindows::new(&s, 2);
                    let gap4 = if a.degree() == 2 {
                        match quadratic_conjugate_gap(a.minpoly())? {
                            ConjugateGap::Separable(g) => Some((g * 4).to_integer()),
                            ConjugateGap::Inseparable => None,
                        }
                    } else {
                        None
                    };
                    nums.push(Dense {
                        plus: a.max1_exp()?,
                        h: a.height_exp(),
                        deg: a.degree() as i64,
                        gap4,
                        num: a.clone(),
                        pows,
                        containing: Vec::new(),
                    });
                    index.insert(a, nums.len() - 1);
                    nums.len() - 1
                }
            };
            let key = (m, hp, t as i64);
            let pi = roots_of.len();
            match nums[id].containing.iter_mut().find(|g| g.0 == key) {
                Some(g) => g.1.push(pi),
                None => nums[id].containing.push((key, vec![pi])),
            }
            mine.push(id);
        }
        roots_of.push(mine);
    }
    Ok((nums, roots_of))
}

/// Exhaustive sweep over pairs of polynomials with `H <= q^h` followed by
/// random pairs of larger height; every case of every applicable pair is
/// checked exactly.
pub fn liouville_sweep(field: &Fq, cfg: &SweepConfig) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut tal = Tallies::new();
    let polys = enumerate_min_form(field, cfg.max_height);
    let h = cfg.max_height as i64;
    let k = cfg.precision.max(4 * h + 8);

    let (nums, roots_of) = build_numbers(&polys, k)?;

    // polynomial-only cases
    for p in &polys {
        if p.deg_x() == Some(2)
            && is_irreducible_quadratic(p)?
            && matches!(quadratic_conjugate_gap(p)?, ConjugateGap::Separable(_))
        {
            tal.report(check_conjugate_separation(p)?);
            for rep in check_conjugate_gap(p)? {
                tal.report(rep);
            }
        }
    }

    // values P(β)
    for (pi, p) in polys.iter().enumerate() {
        let m = p.deg_x().expect("nonconstant") as i64;
        let hp = p.height_exp()?;
        let sp = sparse(p);
        for (bi, b) in nums.iter().enumerate() {
            if roots_of[pi].contains(&bi) {
                continue;
            }
            let v = match b.pows.leading(&sp) {
                Leading::Ord(n) => Some(n),
                _ => None,
            };
            let lhs = match v {
                Some(e) => -e,
                None => {
                    tal.refined(LiouvilleCase::PolyValue);
                    poly_value_abs(p, &b.num)?.exponent().ok_or_else(|| Error::Internal("P(β) = 0 missed".into()))?
                }
            };
            for ((n, hq, u), qs) in &b.containing {
                // 4·rhs with u ∈ {1, 2}
                let rhs4 = 4 * m * b.plus + 4 * hp - 4 * n * hp / u - 4 * m * hq / u;
                if !tal.scaled(LiouvilleCase::PolyValue, 4 * lhs - rhs4) {
                    tal.confirm(check_poly_value(p, &polys[qs[0]], &b.num));
                }
            }
        }
    }

    // pairs of distinct numbers
    for i in 0..nums.len() {
        for j in (i + 1)..nums.len() {
            let (a, b) = (&nums[i], &nums[j]);
            let d = match a.pows.first_difference(&b.pows) {
                Leading::Ord(n) => -n,
                _ => {
                    tal.refined(LiouvilleCase::DistinctNumbers);
                    distance(&a.num, &b.num)?.exponent().ok_or_else(|| Error::Internal("distinct numbers coincide".into()))?
                }
            };
            pair_checks(&mut tal, &polys, &roots_of, (i, a), (j, b), d);
        }
    }

    // random pairs of larger height
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random {
        let p = random_with_roots(field, cfg.random_max_height, &mut rng)?;
        let q = random_with_roots(field, cfg.random_max_height, &mut rng)?;
        random_pair_checks(&mut tal, &p, &q)?;
    }

    Ok(SweepSummary {
        field: field.spec().clone(),
        polynomials: polys.len(),
        numbers: nums.len(),
        random_pairs: cfg.random,
        tallies: tal.t,
        violations: tal.violations,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn pair_checks(
    tal: &mut Tallies,
    polys: &[XPoly],
    roots_of: &[Vec<usize>],
    (i, a): (usize, &Dense),
    (j, b): (usize, &Dense),
    d: i64,
) {
    // the bound needs P(β) ≠ 0 (or, reading it the other way, Q(α) ≠ 0)
    let without = |ps: &[usize], k: usize| ps.iter().copied().find(|&pi| !roots_of[pi].contains(&k));
    for ((m, hp, t), ps) in &a.containing {
        for ((n, hq, u), qs) in &b.containing {
            let witness = match (without(ps, j), without(qs, i)) {
                (Some(pi), _) => (pi, qs[0], false),
                (None, Some(qi)) => (ps[0], qi, true),
                (None, None) => continue,
            };
            // 4·rhs with t·u ∈ {1, 2, 4}
            let rhs4 = 4 * (a.plus + b.plus) - 4 * (n * hp + m * hq) / (t * u);
            if !tal.scaled(LiouvilleCase::RootDistance, 4 * d - rhs4) {
                let (p, q) = (&polys[witness.0], &polys[witness.1]);
                tal.confirm(if witness.2 {
                    check_root_distance(q, &b.num, p, &a.num)
                } else {
                    check_root_distance(p, &a.num, q, &b.num)
                });
            }
        }
    }
    let rhs4 = 4 * (a.plus + b.plus) - 4 * (b.deg * a.h + a.deg * b.h);
    if !tal.scaled(LiouvilleCase::DistinctNumbers, 4 * d - rhs4) {
        tal.confirm(check_distinct_numbers(&a.num, &b.num));
    }
    if a.deg == 2 && b.deg == 2 {
        if a.num.minpoly() == b.num.minpoly() {
            // conjugates: the measured distance must be the exact gap
            if a.gap4 != Some(4 * d) {
                tal.violations.push(LiouvilleReport {
                    case: LiouvilleCase::ConjugateSeparation,
                    ids: format!("measured conjugate distance disagrees with the gap formula for {}", a.num),
                    lhs: r(d),
                    rhs: Ratio::new(a.gap4.unwrap_or(0), 4),
                    holds: false,
                });
            }
        } else {
            for (x, y) in [(a, b), (b, a)] {
                let gap4 = x.gap4.expect("field roots are separable");
                let rhs4 = (-gap4).max(0) - 8 * x.h - 8 * y.h;
                if !tal.scaled(LiouvilleCase::QuadraticPair, 4 * d - rhs4) {
                    tal.confirm(check_quadratic_pair(&x.num, &y.num));
                }
            }
        }
    }
}

/// A random polynomial in min form with `X`-degree 1 or 2 and at least one
/// root in F_q((T^{-1})).
pub fn random_with_roots<R: Rng>(field: &Fq, max_h: u32, rng: &mut R) -> Result<XPoly> {
    let q = field.q();
    let rand_poly = |rng: &mut R, monic: bool| -> Poly {
        let d = rng.gen_range(0..=max_h as usize);
        let mut idx: Vec<usize> = (0..=d).map(|_| rng.gen_range(0..q)).collect();
        if monic {
            idx[d] = 1;
        }
        Poly::from_indices(field, &idx).expect("indices below q")
    };
    loop {
        let quad = rng.gen_bool(0.85);
        let lead = rand_poly(rng, true);
        let mut cs = vec![rand_poly(rng, false)];
        if quad {
            cs.push(rand_poly(rng, false));
        }
        cs.push(lead);
        let x = XPoly::new(field, cs);
        if !x.is_min_form() {
            continue;
        }
        if !roots_with_multiplicity(&x)?.is_empty() {
            return Ok(x);
        }
    }
}

fn random_pair_checks(tal: &mut Tallies, p: &XPoly, q: &XPoly) -> Result<()> {
    let ra = roots_with_multiplicity(p)?;
    let rb = roots_with_multiplicity(q)?;
    for (x, y, rx, ry) in [(p, q, &ra, &rb), (q, p, &rb, &ra)] {
        for (b, _) in ry.iter() {
            if root_multiplicity(b.minpoly(), x) == 0 {
                tal.report(check_poly_value(x, y, b)?);
                for (a, _) in rx.iter() {
                    tal.report(check_root_distance(x, a, y, b)?);
                }
            }
        }
    }
    for xp in [p, q] {
        if xp.deg_x() == Some(2) && is_irreducible_quadratic(xp)? {
            tal.report(check_conjugate_separation(xp)?);
            for rep in check_conjugate_gap(xp)? {
                tal.report(rep);
            }
        }
    }
    for (a, _) in &ra {
        for (b, _) in &rb {
            if a == b {
                continue;
            }
            tal.report(check_distinct_numbers(a, b)?);
            if a.degree() == 2 && b.degree() == 2 && a.minpoly() != b.minpoly() {
                tal.report(check_quadratic_pair(a, b)?);
                tal.report(check_quadratic_pair(b, a)?);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::ContinuedFraction;

    fn poly(f: &Fq, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn conjugate_gap_of_quadratic_cf() {
        let f3 = Fq::prime(3).unwrap();
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&f3), vec![], vec![Poly::t(&f3)]).unwrap();
        let a = AlgebraicNumber::from_cf(&cf).unwrap();
        let [lower, upper] = check_conjugate_gap(a.minpoly()).unwrap();
        assert_eq!(lower.lhs, r(1));
        assert_eq!(lower.rhs, r(-1));
        assert_eq!(upper.rhs, r(1));
        assert!(lower.holds && upper.holds);
        assert_eq!(upper.slack(), r(0));
    }

    #[test]
    fn distinct_numbers_example() {
        let f3 = Fq::prime(3).unwrap();
        let p = XPoly::quadratic(&Poly::one(&f3), &Poly::t(&f3), &poly(&f3, "2"));
        let alpha = AlgebraicNumber::new(p, 0).unwrap();
        let beta = AlgebraicNumber::rational(&Poly::t(&f3), &Poly::one(&f3)).unwrap();
        let rep = check_distinct_numbers(&alpha, &beta).unwrap();
        assert!(rep.holds);
        // the roots are ≈ −T and ≈ 1/T; |α − T| is q or 1 depending on the branch
        let other = AlgebraicNumber::new(alpha.minpoly().clone(), 1).unwrap();
        let rep2 = check_distinct_numbers(&other, &beta).unwrap();
        assert!(rep2.holds);
        let mut lhs = [rep.lhs, rep2.lhs];
        lhs.sort();
        assert_eq!(lhs, [r(1), r(1)]);
    }

    #[test]
    fn vanishing_value_is_a_precondition_breach() {
        let f3 = Fq::prime(3).unwrap();
        let q = XPoly::linear(&Poly::one(&f3), &poly(&f3, "-T"));
        let beta = AlgebraicNumber::rational(&Poly::t(&f3), &Poly::one(&f3)).unwrap();
        let p = q.mul(&XPoly::linear(&Poly::one(&f3), &Poly::one(&f3)));
        assert!(matches!(check_poly_value(&p, &q, &beta), Err(Error::Precondition(_))));
    }

    #[test]
    fn formulas_match_scaled_integers() {
        for m in 1..=2 {
            for n in 1..=2 {
                for t in 1..=2 {
                    for u in 1..=2 {
                        for hp in 0..=3 {
                            for hq in 0..=3 {
                                let e = poly_value_rhs(m, n, u, hp, hq, 2);
                                assert_eq!(e * 4, r(8 * m + 4 * hp - 4 * n * hp / u - 4 * m * hq / u));
                                let e = root_distance_rhs(m, n, t, u, hp, hq, 1, 0);
                                assert_eq!(e * 4, r(4 - 4 * (n * hp + m * hq) / (t * u)));
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(conjugate_separation_rhs(2, 1, 3), r(-3));
        assert_eq!(quadratic_pair_rhs(Ratio::new(-1, 2), 1, 1), Ratio::new(-7, 2));
    }

    #[test]
    fn fast_path_agrees_with_adaptive_evaluation() {
        for p in [2, 3] {
            let f = Fq::prime(p).unwrap();
            let polys = enumerate_min_form(&f, 1);
            let (nums, roots_of) = build_numbers(&polys, 16).unwrap();
            for (pi, poly) in polys.iter().enumerate().step_by(3) {
                let sp = sparse(poly);
                for (bi, b) in nums.iter().enumerate() {
                    if roots_of[pi].contains(&bi) {
                        assert!(poly_value_abs(poly, &b.num).is_err());
                        continue;
                    }
                    let want = poly_value_abs(poly, &b.num).unwrap().exponent().unwrap();
                    if let Leading::Ord(n) = b.pows.leading(&sp) {
                        assert_eq!(-n, want, "P = {poly}, β = {}", b.num);
                    }
                }
            }
            for a in nums.iter().step_by(5) {
                for b in &nums {
                    if a.num == b.num {
                        continue;
                    }
                    let want = distance(&a.num, &b.num).unwrap().exponent().unwrap();
                    assert_eq!(a.pows.first_difference(&b.pows), Leading::Ord(-want));
                }
            }
        }
    }

    #[test]
    fn small_sweep_over_f2_holds() {
        let f2 = Fq::prime(2).unwrap();
        let cfg = SweepConfig { max_height: 1, random: 20, random_max_height: 3, seed: 7, precision: 24 };
        let s = liouville_sweep(&f2, &cfg).unwrap();
        assert!(s.all_hold(), "{:?}", s.violations);
        assert!(s.tallies.iter().all(|t| t.checked > 0), "{:?}", s.tallies);
    }
}
