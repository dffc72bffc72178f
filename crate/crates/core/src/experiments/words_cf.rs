//! Continued fractions whose partial quotients follow a word: an upper
//! bound audit driven by the word's complexity and repetitions, and a
//! constructive lower bound from the repetitions themselves.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{show, ExperimentReport, Table, VerdictKind};
use crate::cf::{cf_distance, periodic_minimal_polynomial, quadratic_conjugate_gap, ConjugateGap, ContinuedFraction};
use crate::error::{Error, Result};
use crate::exponent::{sample_ratio, wn_of_height, CfReal};
use crate::field::{FieldSpec, Fq};
use crate::poly::{AbsValue, Poly};
use crate::report::{frac_string, Exponent};
use crate::words::{complexity, dio_estimate, is_periodic_prefix, GeneratorSpec, Word};

fn default_hs() -> Vec<u32> {
    vec![1, 2]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Main1Config {
    pub field: FieldSpec,
    pub word: GeneratorSpec,
    pub kappa: usize,
    /// Prefix length used for the fraction and for the word statistics.
    pub length: usize,
    /// Window lengths on which `p(n) <= κn` is checked.
    pub n_list: Vec<usize>,
    /// Largest allowed quotient degree; the observed maximum when absent.
    #[serde(default)]
    pub max_deg: Option<u32>,
    #[serde(default = "default_hs")]
    pub hs: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Main2Config {
    pub field: FieldSpec,
    pub word: GeneratorSpec,
    pub length: usize,
}

/// Generates the word and rejects ultimately periodic input.
pub(crate) fn aperiodic_word(spec: &GeneratorSpec, n: usize, p: u32, what: &str) -> Result<Word> {
    if spec.is_periodic() {
        return Err(Error::pre(format!("periodic word: {what}")));
    }
    let w = spec.generate(n, p)?;
    if let Some((r, s)) = is_periodic_prefix(&w.symbols) {
        return Err(Error::pre(format!("prefix is periodic from {r} with period {s}: {what}")));
    }
    Ok(w)
}

/// A repetition `UV^w` at the start of a word: `|U| = r`, `|V| = s`,
/// `|UV^w| = total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Repeat {
    pub r: usize,
    pub s: usize,
    pub total: usize,
}

impl Repeat {
    pub fn rho(&self) -> Exponent {
        Ratio::new(self.total as i64, (self.r + self.s) as i64)
    }
}

/// Best repetitions of the prefixes of length `N, N/2, N/4, …` (down to 8),
/// deduplicated, with `Diô` of the full prefix.
pub(crate) fn ladder(x: &[u32]) -> Result<(Exponent, Vec<(usize, Repeat)>)> {
    let dio = dio_estimate(x)?.rho;
    let mut out: Vec<(usize, Repeat)> = Vec::new();
    let mut len = x.len();
    while len >= 8 || out.is_empty() {
        let d = dio_estimate(&x[..len])?;
        let rep = Repeat { r: d.witness.u.len(), s: d.witness.v.len(), total: d.witness.total_len() };
        if rep.total > rep.r + rep.s && !out.iter().any(|(_, o)| *o == rep) {
            out.push((len, rep));
        }
        if len < 16 {
            break;
        }
        len /= 2;
    }
    Ok((dio, out))
}

/// Cumulative degrees `deg q_n` for `n = 0..=N`.
fn cumulative_degrees(qs: &[Poly]) -> Vec<i64> {
    let mut d = vec![0i64];
    for a in qs {
        d.push(d.last().unwrap() + a.deg() as i64);
    }
    d
}

/// Upper-bound audit: the sampled `ŵ_2(h)/h` must not exceed the bound in
/// the word's complexity constant, `Diô` and the quotient degree range.
///
/// The prefix `Diô` is a lower bound for the word's `Dio`, so the audit is
/// one-sided: a pass is consistent with the bound, a failure refutes it.
pub fn verify_main1(cfg: &Main1Config) -> Result<ExperimentReport> {
    let field = Fq::new(cfg.field.clone())?;
    let word = aperiodic_word(&cfg.word, cfg.length, field.p(), "the fraction is quadratic")?;
    let qs = word.to_quotients(&field)?;
    let degs: Vec<u32> = qs.iter().map(|a| a.deg() as u32).collect();
    let (dmin, dmax) = (*degs.iter().min().unwrap(), *degs.iter().max().unwrap());
    if dmin == 0 {
        return Err(Error::pre("a partial quotient is constant"));
    }
    let da = match cfg.max_deg {
        Some(a) if a < dmax => return Err(Error::pre(format!("quotient of degree {dmax} exceeds the bound {a}"))),
        Some(a) => a,
        None => dmax,
    };
    let mut rep = ExperimentReport::new("main1", cfg);

    let mut hyp = Table::new("complexity", &["n", "p(n)", "kappa_n", "ok"]);
    let mut violated = Vec::new();
    for &n in &cfg.n_list {
        let p = complexity(&word.symbols, n)?;
        let ok = p <= cfg.kappa * n;
        if !ok {
            violated.push(format!("p({n}) = {p} > {}", cfg.kappa * n));
        }
        hyp.push(vec![n.to_string(), p.to_string(), (cfg.kappa * n).to_string(), ok.to_string()]);
    }
    if !violated.is_empty() {
        return Err(Error::pre(format!("complexity hypothesis fails: {}", violated.join(", "))));
    }
    rep.tables.push(hyp);

    let dio = dio_estimate(&word.symbols)?;
    // |q_n|^{1/n} is constant when every quotient has the same degree, which
    // allows the sharper constant
    let uniform = dmin == dmax;
    let k = (2 * cfg.kappa as i64 + 1).pow(3);
    let factor = if uniform { 64 } else { 128 };
    let rhs = dio.rho * (factor * k * (da as i64).pow(4));
    rep.note(format!(
        "Diô = {} from |U| = {}, |V| = {}; bound = {factor}·(2κ+1)^3·Diô·{da}^4 = {}",
        show(&dio.rho),
        dio.witness.u.len(),
        dio.witness.v.len(),
        show(&rhs)
    ));

    let xi = CfReal::new(ContinuedFraction::finite(Poly::zero(&field), qs)?)?;
    let samples = cfg.hs.par_iter().map(|&h| wn_of_height(&xi, 2, h)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new("samples", &["h", "v", "ratio", "witness"]);
    let mut worst: Option<Exponent> = None;
    for s in &samples {
        let r = sample_ratio(s, false);
        if let Some(r) = r {
            worst = Some(worst.map_or(r, |w| w.max(r)));
        }
        t.push(vec![s.h.to_string(), frac_string(&s.v), r.as_ref().map_or("-".into(), show), s.witness.to_string()]);
    }
    rep.tables.push(t);
    let ok = worst.is_none_or(|w| w <= rhs);
    rep.verdict(
        "upper_bound",
        VerdictKind::Audit,
        ok,
        format!("max sample {} <= {} (one-sided)", worst.as_ref().map_or("-".into(), show), show(&rhs)),
    );
    Ok(rep)
}

/// One approximant of the lower-bound construction.
struct Approximant {
    from_len: usize,
    rep: Repeat,
    height: i64,
    height_bound: i64,
    dist: i64,
    dist_exact: bool,
    gap: Option<Exponent>,
    /// `log|P(ξ)|` upper bound for the minimal polynomial `P` of `α`.
    value: Exponent,
}

fn approximant(field: &Fq, xi: &ContinuedFraction, qs: &[Poly], deg: &[i64], from_len: usize, rep: Repeat) -> Result<Approximant> {
    let n = qs.len();
    let Repeat { r, s, .. } = rep;
    let alpha = ContinuedFraction::eventually_periodic(Poly::zero(field), qs[..r].to_vec(), qs[r..r + s].to_vec())?;
    let minpoly = periodic_minimal_polynomial(&alpha)?;
    let height = minpoly.height_exp()?;
    let (dist, dist_exact) = match cf_distance(xi, &alpha, n) {
        Ok((AbsValue::Pow(e), _)) => (e, true),
        Ok((AbsValue::Zero, _)) => return Err(Error::Internal("a finite fraction equals a quadratic".into())),
        // agreement through a_N: |ξ − α| <= 1/(|a_{N+1}| |q_N|^2)
        Err(Error::InsufficientPrecision(_)) => (-2 * deg[n] - 1, false),
        Err(e) => return Err(e),
    };
    let gap = match quadratic_conjugate_gap(&minpoly)? {
        ConjugateGap::Separable(g) => Some(g),
        ConjugateGap::Inseparable => None,
    };
    let d = Ratio::from_integer(dist);
    let other = gap.map_or(d, |g| g.max(d));
    let value = Ratio::from_integer(minpoly.lead().deg() as i64) + d + other;
    Ok(Approximant { from_len, rep, height, height_bound: deg[r] + deg[r + s], dist, dist_exact, gap, value })
}

/// Lower-bound certificate: from each repetition `UV^w` of the quotient
/// word, the quadratic `α = [0, U, overline{V}]` satisfies
/// `−log|ξ − α| / log H(α) − 1 >= ρ·m/M − 1` with `ρ = |UV^w|/|UV|` and
/// `m`, `M` the extreme values of `deg q_n / n`. The minimal polynomial
/// `P` of `α` also gives `−log|P(ξ)|/log H >= (m/M)(1+ρ) − 1 − 2A/log H`.
pub fn verify_main2(cfg: &Main2Config) -> Result<ExperimentReport> {
    let field = Fq::new(cfg.field.clone())?;
    let word = aperiodic_word(&cfg.word, cfg.length, field.p(), "the fraction is quadratic")?;
    let qs = word.to_quotients(&field)?;
    if qs.iter().any(|a| a.deg() == 0) {
        return Err(Error::pre("a partial quotient is constant"));
    }
    let deg = cumulative_degrees(&qs);
    let n = qs.len();
    let m_lo = (1..=n).map(|i| Ratio::new(deg[i], i as i64)).min().unwrap();
    let m_hi = (1..=n).map(|i| Ratio::new(deg[i], i as i64)).max().unwrap();
    let lm = m_lo / m_hi;
    let da = qs.iter().map(|a| a.deg() as i64).max().unwrap();
    let bounded = qs.iter().all(|a| a.deg() == qs[0].deg());

    let (dio, reps) = ladder(&word.symbols)?;
    if reps.is_empty() {
        return Err(Error::pre("no repetition longer than its base: witness degenerate"));
    }
    let xi = ContinuedFraction::finite(Poly::zero(&field), qs.clone())?;
    let apps = reps
        .par_iter()
        .map(|&(len, rep)| approximant(&field, &xi, &qs, &deg, len, rep))
        .collect::<Result<Vec<_>>>()?;

    let mut rep = ExperimentReport::new("main2", cfg);
    rep.note(format!("m/M = {} / {} = {}; Diô = {}", frac_string(&m_lo), frac_string(&m_hi), show(&lm), show(&dio)));
    let mut t = Table::new(
        "approximants",
        &[
            "prefix", "r", "s", "UV^w", "rho", "log_H", "H_bound", "log_dist", "dist_exact", "log_gap", "star",
            "star_min", "poly", "poly_min",
        ],
    );
    let (mut heights_ok, mut star_ok, mut poly_ok) = (true, true, true);
    let mut best_star: Option<Exponent> = None;
    for a in &apps {
        let h = a.height;
        if h <= 0 {
            return Err(Error::Internal(format!("approximant of height exponent {h}")));
        }
        let star = Ratio::new(-a.dist, h) - 1;
        let star_min = a.rep.rho() * lm - 1;
        let poly = -a.value / h;
        let poly_min = lm * (a.rep.rho() + 1) - 1 - Ratio::new(2 * da, h);
        heights_ok &= h <= a.height_bound;
        star_ok &= star >= star_min;
        poly_ok &= poly >= poly_min;
        best_star = Some(best_star.map_or(star, |b| b.max(star)));
        t.push(vec![
            a.from_len.to_string(),
            a.rep.r.to_string(),
            a.rep.s.to_string(),
            a.rep.total.to_string(),
            frac_string(&a.rep.rho()),
            h.to_string(),
            a.height_bound.to_string(),
            a.dist.to_string(),
            a.dist_exact.to_string(),
            a.gap.as_ref().map_or("insep".into(), frac_string),
            show(&star),
            show(&star_min),
            show(&poly),
            show(&poly_min),
        ]);
    }
    rep.tables.push(t);
    rep.verdict("height_bound", VerdictKind::Exact, heights_ok, "log H(α) <= deg q_r + deg q_{r+s} for every approximant");
    rep.verdict("star_certificate", VerdictKind::Certificate, star_ok, "−log|ξ−α|/log H − 1 >= ρ·m/M − 1 for every approximant");
    rep.verdict(
        "poly_certificate",
        VerdictKind::Certificate,
        poly_ok,
        "−log|P(ξ)|/log H >= (m/M)(1+ρ) − 1 − 2A/log H for every approximant",
    );
    let best = best_star.expect("at least one approximant");
    let target = lm * dio - 1;
    rep.verdict(
        "star_vs_dio",
        VerdictKind::Certificate,
        best >= target,
        format!("best starred sample {} >= (m/M)·Diô − 1 = {}", show(&best), show(&target)),
    );
    if bounded {
        rep.note("all quotients share one degree, so m/M = 1 and the polynomial certificate tends to Diô");
    }
    Ok(rep)
}
