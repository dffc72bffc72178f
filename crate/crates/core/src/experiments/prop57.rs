//! Finite-height comparison of the quadratic exponents `ŵ_2(h)` and
//! `ŵ_2*(h)`: approximation by polynomial values against approximation by
//! quadratic numbers.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::number::NumberSpec;
use super::report::{show, ExperimentReport, Table, VerdictKind};
use crate::error::{Error, Result};
use crate::exponent::{sample_ratio, wn_of_height, wnstar_of_height};
use crate::field::{FieldSpec, Fq};
use crate::report::{frac_string, Exponent};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop57Config {
    pub field: FieldSpec,
    pub number: NumberSpec,
    pub hs: Vec<u32>,
}

/// `ε(h) = 2n·max(0, log|ξ|)/h` for `n = 2`: the slack coming from the
/// `max(1, |ξ|)^{2n}` factor relating `|P(ξ)|` to distances.
pub fn slack(abs_exp: i64, h: u32) -> Exponent {
    Ratio::new(4 * abs_exp.max(0), h as i64)
}

/// Per height `h`: `ŵ*(h) <= ŵ(h) + ε(h)`, `ŵ(h) <= ŵ*(h) + 1 + ε(h)`, and
/// the sampled value `−log w_2(ξ, q^h)` is nondecreasing in `h`.
pub fn verify_prop_main7(cfg: &Prop57Config) -> Result<ExperimentReport> {
    let field = Fq::new(cfg.field.clone())?;
    let xi = cfg.number.build(&field)?;
    let mut hs = cfg.hs.clone();
    hs.sort_unstable();
    hs.dedup();
    if hs.contains(&0) || hs.is_empty() {
        return Err(Error::pre("heights must be positive"));
    }
    let abs_exp = match xi.series_to(8)?.ord() {
        Some(o) => -o,
        None => return Err(Error::pre("ξ = 0")),
    };
    let samples = hs
        .par_iter()
        .map(|&h| Ok((wn_of_height(xi.as_ref(), 2, h)?, wnstar_of_height(xi.as_ref(), 2, h)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut rep = ExperimentReport::new("prop57", cfg);
    rep.note(format!("log|ξ| = {abs_exp}; ε(h) = 4·max(0, log|ξ|)/h"));
    if field.is_char2() {
        rep.note("characteristic 2: inseparable quadratics are included among the starred candidates");
    }
    let mut t = Table::new("samples", &["h", "v", "v_star", "ratio", "ratio_star", "eps", "witness", "witness_star"]);
    let (mut upper_ok, mut lower_ok, mut mono_ok) = (true, true, true);
    let mut prev: Option<Exponent> = None;
    for (s, st) in &samples {
        let r = sample_ratio(s, false).expect("h > 0");
        let rs = sample_ratio(st, true).expect("h > 0");
        let eps = slack(abs_exp, s.h);
        upper_ok &= rs <= r + eps;
        lower_ok &= r <= rs + 1 + eps;
        mono_ok &= prev.is_none_or(|p| p <= s.v);
        prev = Some(s.v);
        t.push(vec![
            s.h.to_string(),
            frac_string(&s.v),
            frac_string(&st.v),
            show(&r),
            show(&rs),
            frac_string(&eps),
            s.witness.to_string(),
            st.witness.to_string(),
        ]);
    }
    rep.tables.push(t);
    rep.verdict("starred_below", VerdictKind::Exact, upper_ok, "ŵ*(h) <= ŵ(h) + ε(h) at every h");
    rep.verdict("starred_above", VerdictKind::Exact, lower_ok, "ŵ(h) <= ŵ*(h) + 1 + ε(h) at every h");
    rep.verdict("monotone", VerdictKind::Exact, mono_ok, "−log w_2(ξ, q^h) nondecreasing in h");
    Ok(rep)
}
