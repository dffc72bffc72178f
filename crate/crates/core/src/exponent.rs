//! Brute-force values of `w_n(ξ, H)` and `w_n^*(ξ, H)` at `H = q^h`, and the
//! finite-height exponent estimates built from them.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::{divides_over_fraction_field, is_irreducible_quadratic, AlgebraicNumber};
use crate::cf::ContinuedFraction;
use crate::dense::{sparse, Leading, PowerWindows, SparseX};
use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::liouville::enumerate_min_form;
use crate::poly::Poly;
use crate::report::Exponent;
use crate::series::LaurentSeries;
use crate::xpoly::XPoly;

/// Precision cap for the adaptive searches.
const MAX_PREC: i64 = 1 << 14;

/// A number that can be expanded to any requested precision.
pub trait Approximable: Sync {
    fn field(&self) -> &Fq;

    /// The number known at least below `k` (or exactly).
    fn series_to(&self, k: i64) -> Result<LaurentSeries>;

    /// Whether `P(ξ) = 0`, when that can be decided exactly.
    fn vanishes(&self, p: &XPoly) -> Option<bool>;

    /// Whether `ξ = α`, when that can be decided exactly.
    fn equals(&self, a: &AlgebraicNumber) -> Option<bool>;
}

impl Approximable for AlgebraicNumber {
    fn field(&self) -> &Fq {
        self.minpoly().field()
    }

    fn series_to(&self, k: i64) -> Result<LaurentSeries> {
        self.series(k)
    }

    fn vanishes(&self, p: &XPoly) -> Option<bool> {
        Some(!p.is_zero() && divides_over_fraction_field(self.minpoly(), p))
    }

    fn equals(&self, a: &AlgebraicNumber) -> Option<bool> {
        Some(self == a)
    }
}

/// A fixed series; exact series are rational numbers and decide everything.
impl Approximable for LaurentSeries {
    fn field(&self) -> &Fq {
        LaurentSeries::field(self)
    }

    fn series_to(&self, k: i64) -> Result<LaurentSeries> {
        match self.prec() {
            None => Ok(self.clone()),
            Some(p) if p >= k => Ok(self.truncate(k)),
            Some(p) => Err(Error::prec(format!("series known below {p}, {k} needed"))),
        }
    }

    fn vanishes(&self, p: &XPoly) -> Option<bool> {
        self.is_exact().then(|| p.eval_series(self).is_exact_zero())
    }

    fn equals(&self, a: &AlgebraicNumber) -> Option<bool> {
        if !self.is_exact() {
            return None;
        }
        Some(a.is_rational() && a.minpoly().eval_series(self).is_exact_zero())
    }
}

/// The value of an infinite continued fraction given by a long prefix,
/// known to be of degree > 2 over F_q(T) (e.g. not eventually periodic).
#[derive(Debug, Clone)]
pub struct CfReal {
    prefix: ContinuedFraction,
    /// `2 deg q_N` for the last convergent of the prefix.
    reach: i64,
}

impl CfReal {
    /// `prefix` must be a finite fraction; its tail is assumed to continue
    /// with quotients of degree >= 1.
    pub fn new(prefix: ContinuedFraction) -> Result<Self> {
        if !prefix.is_finite() {
            return Err(Error::pre("CfReal takes a finite prefix"));
        }
        let n = prefix.quotients().len();
        let reach = 2 * prefix.deg_q(n)? as i64;
        Ok(CfReal { prefix, reach })
    }

    pub fn prefix(&self) -> &ContinuedFraction {
        &self.prefix
    }

    /// Coefficients of `ξ` are determined below this index.
    pub fn reach(&self) -> i64 {
        self.reach
    }
}

impl Approximable for CfReal {
    fn field(&self) -> &Fq {
        self.prefix.field()
    }

    /// `|ξ − p_N/q_N| < |q_N|^{-2}`, so the last convergent is exact below `2 deg q_N`.
    fn series_to(&self, k: i64) -> Result<LaurentSeries> {
        if k > self.reach {
            return Err(Error::prec(format!("prefix determines ξ below {}, {k} needed", self.reach)));
        }
        let (p, q) = self.prefix.value()?;
        Ok(LaurentSeries::from_rational(&p, &q, k)?.truncate(k))
    }

    fn vanishes(&self, p: &XPoly) -> Option<bool> {
        (p.deg_x().unwrap_or(0) <= 2).then_some(p.is_zero())
    }

    fn equals(&self, a: &AlgebraicNumber) -> Option<bool> {
        (a.degree() <= 2).then_some(false)
    }
}

/// What attains a sampled minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `P` minimizing `|P(ξ)|`.
    Poly(XPoly),
    /// A root in F_q((T^{-1})) closest to `ξ`.
    Number(AlgebraicNumber),
    /// A quadratic whose conjugate roots lie outside F_q((T^{-1})); both are
    /// at distance `(|P(ξ)|/|A|)^{1/2}` from `ξ`.
    Conjugates(XPoly),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Poly(p) => write!(f, "{p}"),
            Witness::Number(a) => write!(f, "{a}"),
            Witness::Conjugates(p) => write!(f, "roots of {p}"),
        }
    }
}

/// `w_n(ξ, q^h) = q^{-v}` (or the starred value) with the attaining witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentSample {
    pub n: usize,
    pub h: u32,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub v: Exponent,
    pub witness: Witness,
}

fn start_prec(n: usize, h: u32, ord: i64) -> i64 {
    n as i64 * (-ord).max(0) + 6 * (h as i64 + 1) + 8
}

fn next_prec(k: i64) -> Result<i64> {
    if k >= MAX_PREC {
        return Err(Error::prec(format!("minimum not certified below precision {MAX_PREC}")));
    }
    Ok(k * 2)
}

/// Decodes enumeration index `idx` into a polynomial with `deg_X <= n` and
/// coefficients of degree `<= h`; slot `i(h+1) + j` holds the `X^i T^j`
/// coefficient, least significant first.
fn decode(q: usize, n: usize, h: u32, mut idx: usize) -> SparseX {
    let w = h as usize + 1;
    let mut out = vec![Vec::new(); n + 1];
    for slot in 0..(n + 1) * w {
        let d = idx % q;
        idx /= q;
        if d != 0 {
            out[slot / w].push((slot % w, Fe(d as u16)));
        }
    }
    out
}

fn to_xpoly(field: &Fq, sp: &SparseX, h: u32) -> XPoly {
    let coeffs = sp
        .iter()
        .map(|terms| {
            let mut v = vec![Fe::ZERO; h as usize + 1];
            for &(j, c) in terms {
                v[j] = c;
            }
            Poly::new(field, v)
        })
        .collect();
    XPoly::new(field, coeffs)
}

/// `w_n(ξ, q^h)`: minimum of `|P(ξ)|` over nonzero `P` with `deg_X P <= n`,
/// `H(P) <= q^h` and `P(ξ) ≠ 0`, by exhaustive enumeration. Ties go to the
/// first polynomial in enumeration order.
pub fn wn_of_height(xi: &dyn Approximable, n: usize, h: u32) -> Result<ExponentSample> {
    let f = xi.field().clone();
    let q = f.q();
    let slots = (n + 1) * (h as usize + 1);
    let count = q.checked_pow(slots as u32).filter(|&c| c <= 1 << 32).ok_or_else(|| {
        Error::pre(format!("search space q^{slots} is too large"))
    })?;
    let ord = xi.series_to(8)?.lower_ord();
    let mut k = start_prec(n, h, ord);
    loop {
        let x = xi.series_to(k)?;
        let w = PowerWindows::new(&x, n);
        let best = (1..count)
            .into_par_iter()
            .map(|idx| {
                let sp = decode(q, n, h, idx);
                match w.leading(&sp) {
                    Leading::Ord(e) => Ok(Some((e, idx))),
                    Leading::Zero => Ok(None),
                    Leading::Unknown => match xi.vanishes(&to_xpoly(&f, &sp, h)) {
                        Some(true) => Ok(None),
                        _ => Err(idx),
                    },
                }
            })
            .reduce(
                || Ok(None),
                |a, b| match (a, b) {
                    (Err(i), Err(j)) => Err(i.min(j)),
                    (Err(i), _) | (_, Err(i)) => Err(i),
                    (Ok(a), Ok(b)) => Ok(pick_max(a, b)),
                },
            );
        match best {
            Ok(Some((e, idx))) => {
                let p = to_xpoly(&f, &decode(q, n, h, idx), h);
                return Ok(ExponentSample { n, h, v: Ratio::from_integer(e), witness: Witness::Poly(p) });
            }
            Ok(None) => return Err(Error::Internal("every candidate vanishes at ξ".into())),
            Err(_) => k = next_prec(k)?,
        }
    }
}

/// Larger exponent wins, then the smaller index.
fn pick_max(a: Option<(i64, usize)>, b: Option<(i64, usize)>) -> Option<(i64, usize)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) { b } else { a }),
    }
}

/// `w_n(ξ, q^h)` restricted to irreducible polynomials in min form of
/// degree 1..=n (the tilde variant); `n <= 2`.
pub fn wn_tilde_of_height(xi: &dyn Approximable, n: usize, h: u32) -> Result<ExponentSample> {
    if !(1..=2).contains(&n) {
        return Err(Error::pre("restricted search supports n = 1, 2"));
    }
    let f = xi.field().clone();
    let cands: Vec<(XPoly, SparseX)> = enumerate_min_form(&f, h)
        .into_iter()
        .filter(|p| p.deg_x().unwrap_or(0) <= n)
        .filter(|p| p.deg_x() == Some(1) || is_irreducible_quadratic(p).unwrap_or(false))
        .map(|p| {
            let sp = sparse(&p);
            (p, sp)
        })
        .collect();
    let ord = xi.series_to(8)?.lower_ord();
    let mut k = start_prec(n, h, ord);
    'outer: loop {
        let w = PowerWindows::new(&xi.series_to(k)?, n);
        let mut best: Option<(i64, usize)> = None;
        for (i, (p, sp)) in cands.iter().enumerate() {
            match w.leading(sp) {
                Leading::Ord(e) => best = pick_max(best, Some((e, i))),
                Leading::Zero => {}
                Leading::Unknown => {
                    if xi.vanishes(p) != Some(true) {
                        k = next_prec(k)?;
                        continue 'outer;
                    }
                }
            }
        }
        let (e, i) = best.ok_or_else(|| Error::Internal("every candidate vanishes at ξ".into()))?;
        return Ok(ExponentSample { n, h, v: Ratio::from_integer(e), witness: Witness::Poly(cands[i].0.clone()) });
    }
}

/// Candidate approximations for the starred search at one `(n, h)`:
/// every algebraic number of degree `<= n` and height `<= q^h`.
pub struct StarCandidates {
    n: usize,
    h: u32,
    k: i64,
    entries: Vec<StarEntry>,
}

enum StarEntry {
    Root(AlgebraicNumber, PowerWindows),
    Conjugates(XPoly, SparseX),
}

impl StarCandidates {
    /// Roots are expanded below `k`.
    pub fn build(field: &Fq, n: usize, h: u32, k: i64) -> Result<Self> {
        if !(1..=2).contains(&n) {
            return Err(Error::pre("starred search supports n = 1, 2"));
        }
        let mut entries = Vec::new();
        for p in enumerate_min_form(field, h) {
            let d = p.deg_x().expect("nonconstant");
            if d > n || (d == 2 && !is_irreducible_quadratic(&p)?) {
                continue;
            }
            let roots = AlgebraicNumber::roots_of(&p)?;
            if roots.is_empty() {
                let sp = sparse(&p);
                entries.push(StarEntry::Conjugates(p, sp));
            }
            for a in roots {
                let w = PowerWindows::new(&a.series(k)?, 1);
                entries.push(StarEntry::Root(a, w));
            }
        }
        Ok(StarCandidates { n, h, k, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `None` when some candidate is not separated from `ξ` at this precision.
    fn search(&self, xi: &dyn Approximable) -> Result<Option<ExponentSample>> {
        let x = xi.series_to(self.k)?;
        let w1 = PowerWindows::new(&x, 1);
        let w2 = if self.n >= 2 { Some(PowerWindows::new(&x, 2)) } else { None };
        // exponents doubled so that half-integral values compare as integers
        let mut best: Option<(i64, usize)> = None;
        for (i, e) in self.entries.iter().enumerate() {
            let v2 = match e {
                StarEntry::Root(a, wa) => match w1.first_difference(wa) {
                    Leading::Ord(d) => 2 * d,
                    _ => {
                        if xi.equals(a) == Some(true) {
                            continue;
                        }
                        return Ok(None);
                    }
                },
                StarEntry::Conjugates(p, sp) => match w2.as_ref().expect("n = 2").leading(sp) {
                    // |ξ − α|^2 = |P(ξ)| / |A|
                    Leading::Ord(d) => d + p.lead().deg() as i64,
                    _ => return Ok(None),
                },
            };
            best = pick_max(best, Some((v2, i)));
        }
        let Some((v2, i)) = best else {
            return Err(Error::Internal("no candidate differs from ξ".into()));
        };
        let witness = match &self.entries[i] {
            StarEntry::Root(a, _) => Witness::Number(a.clone()),
            StarEntry::Conjugates(p, _) => Witness::Conjugates(p.clone()),
        };
        Ok(Some(ExponentSample { n: self.n, h: self.h, v: Ratio::new(v2, 2), witness }))
    }
}

/// `w_n^*(ξ, q^h)`: minimum of `|ξ − α|` over algebraic `α ≠ ξ` of degree
/// `<= n` and `H(α) <= q^h`, for `n ∈ {1, 2}`.
pub fn wnstar_of_height(xi: &dyn Approximable, n: usize, h: u32) -> Result<ExponentSample> {
    let ord = xi.series_to(8)?.lower_ord();
    let mut k = start_prec(n, h, ord);
    loop {
        let cands = StarCandidates::build(xi.field(), n, h, k)?;
        if let Some(s) = cands.search(xi)? {
            return Ok(s);
        }
        k = next_prec(k)?;
    }
}

/// One row of an exponent estimate.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateRow {
    pub sample: ExponentSample,
    /// `v/h` (starred: `v/h − 1`); absent for `h = 0`.
    #[serde(serialize_with = "crate::report::ser_opt_ratio")]
    pub ratio: Option<Exponent>,
    /// Running maximum of the ratios so far.
    #[serde(serialize_with = "crate::report::ser_opt_ratio")]
    pub running: Option<Exponent>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub starred: bool,
    pub rows: Vec<EstimateRow>,
    /// Final running maximum: a lower-bound style estimate, not a limit.
    #[serde(serialize_with = "crate::report::ser_opt_ratio")]
    pub estimate: Option<Exponent>,
}

/// The per-height ratio of a sample.
pub fn sample_ratio(s: &ExponentSample, starred: bool) -> Option<Exponent> {
    (s.h > 0).then(|| {
        let r = s.v / s.h as i64;
        if starred {
            r - 1
        } else {
            r
        }
    })
}

/// Samples at every `h` in `hs` with ratios and their running maximum.
pub fn exponent_estimate(xi: &dyn Approximable, n: usize, hs: &[u32], starred: bool) -> Result<Estimate> {
    if hs.is_empty() {
        return Err(Error::pre("no heights given"));
    }
    let mut rows = Vec::with_capacity(hs.len());
    let mut running: Option<Exponent> = None;
    for &h in hs {
        let sample = if starred { wnstar_of_height(xi, n, h)? } else { wn_of_height(xi, n, h)? };
        let ratio = sample_ratio(&sample, starred);
        if let Some(r) = ratio {
            running = Some(running.map_or(r, |m| m.max(r)));
        }
        rows.push(EstimateRow { sample, ratio, running });
    }
    Ok(Estimate { starred, rows, estimate: running })
}

/// `max_n deg q_{n+1} / deg q_n` over the first `count` quotients
/// `a_1 … a_count`: the finite-prefix surrogate for `w_1`.
pub fn w1_from_cf(cf: &ContinuedFraction, count: usize) -> Result<Exponent> {
    if count < 2 {
        return Err(Error::pre("need at least 2 quotients"));
    }
    let qs = cf.quotients_upto(count);
    if qs.len() < count {
        return Err(Error::pre(format!("fraction has only {} quotients", qs.len())));
    }
    let mut deg = 0i64;
    let mut best: Option<Exponent> = None;
    for a in &qs {
        let next = deg + a.deg() as i64;
        if deg > 0 {
            let r = Ratio::new(next, deg);
            best = Some(best.map_or(r, |b| b.max(r)));
        }
        deg = next;
    }
    best.ok_or_else(|| Error::Internal("no ratio formed".into()))
}
