//! Rational approximation of a digit series `ξ = Σ a_n T^{-n}` by the
//! rationals whose expansions repeat a factor of the digit word.
//!
//! A prefix `UV^w` of the digits is matched by `p/q` with
//! `q = T^{|U|}(T^{|V|} − 1)`, whose expansion is `U V V V …`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::number::{digit_series, digits_of};
use super::report::{show, ExperimentReport, Table, VerdictKind};
use super::words_cf::{aperiodic_word, ladder, Repeat};
use crate::cf::cf_expand_series;
use crate::error::{Error, Result};
use crate::exponent::w1_from_cf;
use crate::field::{Fe, FieldSpec, Fq};
use crate::poly::Poly;
use crate::report::{frac_string, Exponent};
use crate::series::LaurentSeries;
use crate::words::{combi_factorize, complexity, GeneratorSpec};

fn default_kappa() -> usize {
    2
}

fn default_slack() -> [i64; 2] {
    [1, 5]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixConfig {
    pub field: FieldSpec,
    /// Digit word; symbol names are field element indices.
    pub word: GeneratorSpec,
    pub length: usize,
    /// Window lengths for the factorization witnesses and the complexity
    /// hypothesis.
    pub n_list: Vec<usize>,
    #[serde(default = "default_kappa")]
    pub kappa: usize,
    #[serde(default = "default_slack")]
    pub slack: [i64; 2],
}

/// `(p, q)` with `p/q = 0.U V V V …` in base `T^{-1}`.
pub fn digit_approximant(field: &Fq, u: &[Fe], v: &[Fe]) -> Result<(Poly, Poly)> {
    if v.is_empty() {
        return Err(Error::pre("empty repeating block"));
    }
    let s = v.len();
    let ts1 = Poly::monomial(field, Fe::ONE, s).sub(&Poly::one(field));
    let q = ts1.shift(u.len());
    // Σ_{k<|U|} U_k T^{|U|−k} and Σ_{i<|V|} V_i T^{|V|−i}
    let head = |d: &[Fe]| {
        let mut c = vec![Fe::ZERO; d.len() + 1];
        for (k, &x) in d.iter().enumerate() {
            c[d.len() - k] = x;
        }
        Poly::new(field, c)
    };
    let p = ts1.mul(&head(u)).add(&head(v));
    Ok((p, q))
}

struct Row {
    source: String,
    rep: Repeat,
    q_deg: i64,
    /// First index where the expansions differ, or the precision if none.
    agree: i64,
    agree_exact: bool,
    sample: Exponent,
}

fn check_witness(field: &Fq, digits: &[Fe], xi: &LaurentSeries, source: String, rep: Repeat) -> Result<Row> {
    let Repeat { r, s, .. } = rep;
    let (p, q) = digit_approximant(field, &digits[..r], &digits[r..r + s])?;
    let n = digits.len() as i64;
    let pq = LaurentSeries::from_rational(&p, &q, n)?;
    let (agree, agree_exact) = match xi.first_difference(&pq) {
        Some(l) => (l, true),
        None => (n, false),
    };
    let q_deg = q.deg() as i64;
    // |qξ − p| = q^{deg q − L} and H(qX − p) = |q| since |p| <= |q|
    let sample = Ratio::new(agree - q_deg, q_deg);
    Ok(Row { source, rep, q_deg, agree, agree_exact, sample })
}

/// Emits the approximants for the repetition witnesses of the digit word
/// and certifies `w_1(ξ) >= max(1, Diô − 1)` up to the configured slack.
/// When `p(n) <= κn` holds on every listed window, the certificate is also
/// audited against the upper bound `8(κ+1)^2(2κ+1)Diô − 1`.
pub fn appendix_digit_approx(cfg: &AppendixConfig) -> Result<ExperimentReport> {
    let field = Fq::new(cfg.field.clone())?;
    let word = aperiodic_word(&cfg.word, cfg.length, field.p(), "the series is rational")?;
    let digits = digits_of(&field, &word)?;
    let xi = digit_series(&field, &digits);
    let slack = super::lacunary::ratio(cfg.slack)?;
    let mut rep = ExperimentReport::new("appendix", cfg);
    rep.tolerance("slack", &slack);

    let (dio, lad) = ladder(&word.symbols)?;
    let mut witnesses: Vec<(String, Repeat)> =
        lad.into_iter().map(|(len, r)| (format!("dio prefix {len}"), r)).collect();
    let mut hyp = Table::new("complexity", &["n", "p(n)", "kappa_n", "ok"]);
    let mut hypothesis = true;
    for &n in &cfg.n_list {
        let p = complexity(&word.symbols, n)?;
        hypothesis &= p <= cfg.kappa * n;
        hyp.push(vec![n.to_string(), p.to_string(), (cfg.kappa * n).to_string(), (p <= cfg.kappa * n).to_string()]);
        match combi_factorize(&word.symbols, cfg.kappa, n) {
            Ok(c) => {
                let w = &c.witness;
                if !w.is_prefix_of(&word.symbols) {
                    return Err(Error::Internal(format!("factorization for n = {n} is not a prefix")));
                }
                let r = Repeat { r: w.u.len(), s: w.v.len(), total: w.total_len() };
                if !witnesses.iter().any(|(_, o)| *o == r) {
                    witnesses.push((format!("factorization n={n}"), r));
                }
            }
            Err(e) => rep.note(format!("no factorization witness for n = {n}: {e}")),
        }
    }
    rep.tables.push(hyp);

    let rows = witnesses
        .into_iter()
        .map(|(src, r)| check_witness(&field, &digits, &xi, src, r))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new("approximants", &["source", "U", "V", "UV^w", "deg_q", "agree", "agree_exact", "sample"]);
    let mut matches = true;
    let mut best: Option<Exponent> = None;
    for row in &rows {
        matches &= row.agree >= row.rep.total as i64;
        best = Some(best.map_or(row.sample, |b| b.max(row.sample)));
        t.push(vec![
            row.source.clone(),
            row.rep.r.to_string(),
            row.rep.s.to_string(),
            row.rep.total.to_string(),
            row.q_deg.to_string(),
            row.agree.to_string(),
            row.agree_exact.to_string(),
            show(&row.sample),
        ]);
    }
    rep.tables.push(t);
    rep.verdict(
        "shared_digits",
        VerdictKind::Exact,
        matches,
        "every p/q agrees with ξ on at least |UV^w| digits",
    );

    let (cf, _) = cf_expand_series(&xi);
    let certified = cf.quotients().len();
    let cf_sample = if certified >= 2 { Some(w1_from_cf(&cf, certified)?) } else { None };
    rep.note(format!(
        "continued fraction: {certified} certified quotients, max deg q_(n+1)/deg q_n = {}",
        cf_sample.as_ref().map_or("-".into(), show)
    ));
    let cert = match (best, cf_sample) {
        (Some(a), Some(b)) => a.max(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Err(Error::pre("no approximant available")),
    };
    let floor = Ratio::from_integer(1).max(dio - 1);
    rep.verdict(
        "lower_certificate",
        VerdictKind::Certificate,
        cert >= floor - slack,
        format!("w_1 certificate {} >= max(1, Diô − 1) − slack = {} − {}", show(&cert), show(&floor), frac_string(&slack)),
    );
    if hypothesis {
        let k = cfg.kappa as i64;
        let upper = dio * (8 * (k + 1).pow(2) * (2 * k + 1)) - 1;
        rep.verdict(
            "upper_audit",
            VerdictKind::Audit,
            cert <= upper,
            format!("certificate {} <= 8(κ+1)^2(2κ+1)Diô − 1 = {} (one-sided)", show(&cert), show(&upper)),
        );
    } else {
        rep.note("complexity hypothesis fails on a listed window; upper bound not audited");
    }
    rep.note(format!("Diô = {}", show(&dio)));
    Ok(rep)
}
