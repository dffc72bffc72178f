//! Continued fractions `[a_0, a_1, a_2, …]` over F_q((T^{-1})).

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{AbsValue, Poly};
use crate::roots::quadratic_roots;
use crate::series::LaurentSeries;
use crate::xpoly::XPoly;

/// The quotients `a_{start+1} … a_{start+len}` repeat forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Period {
    pub start: usize,
    pub len: usize,
}

/// A finite or eventually periodic continued fraction.
///
/// `quotients` holds `a_1, a_2, …`; when `period` is set it holds exactly
/// `start + len` entries, the last `len` of which form the period.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ContinuedFraction {
    a0: Poly,
    quotients: Vec<Poly>,
    period: Option<Period>,
}

/// One row `(n, p_n, q_n)` of a convergent table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub n: usize,
    pub p: Poly,
    pub q: Poly,
}

impl ContinuedFraction {
    pub fn new(a0: Poly, quotients: Vec<Poly>, period: Option<Period>) -> Result<Self> {
        if let Some((i, _)) = quotients.iter().enumerate().find(|(_, a)| a.degree().unwrap_or(0) < 1) {
            return Err(Error::pre(format!("partial quotient a_{} has degree < 1", i + 1)));
        }
        if let Some(p) = period {
            if p.len == 0 || p.start + p.len != quotients.len() {
                return Err(Error::pre(format!(
                    "period (start {}, len {}) does not match {} quotients",
                    p.start,
                    p.len,
                    quotients.len()
                )));
            }
        }
        Ok(ContinuedFraction { a0, quotients, period })
    }

    pub fn finite(a0: Poly, quotients: Vec<Poly>) -> Result<Self> {
        ContinuedFraction::new(a0, quotients, None)
    }

    /// `[a0, pre…, overline{rep…}]`.
    pub fn eventually_periodic(a0: Poly, pre: Vec<Poly>, rep: Vec<Poly>) -> Result<Self> {
        let period = Period { start: pre.len(), len: rep.len() };
        let mut q = pre;
        q.extend(rep);
        ContinuedFraction::new(a0, q, Some(period))
    }

    /// `[overline{b_0, …, b_n}]` with `deg b_0 >= 1`.
    pub fn purely_periodic(rep: Vec<Poly>) -> Result<Self> {
        let Some(first) = rep.first().cloned() else {
            return Err(Error::pre("empty period"));
        };
        if first.degree().unwrap_or(0) < 1 {
            return Err(Error::pre("purely periodic expansion needs deg a_0 >= 1"));
        }
        let mut q: Vec<Poly> = rep[1..].to_vec();
        q.push(first.clone());
        ContinuedFraction::new(first, q, Some(Period { start: 0, len: rep.len() }))
    }

    pub fn field(&self) -> &Fq {
        self.a0.field()
    }

    pub fn a0(&self) -> &Poly {
        &self.a0
    }

    /// Stored quotients `a_1, …`; for periodic fractions the pre-period
    /// followed by one copy of the period.
    pub fn quotients(&self) -> &[Poly] {
        &self.quotients
    }

    pub fn period(&self) -> Option<Period> {
        self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_none()
    }

    /// Period starting right after `a_0` and `a_0` equal to the last period
    /// entry, i.e. `[overline{a_0, …, a_{s−1}}]`.
    pub fn is_purely_periodic(&self) -> bool {
        matches!(self.period, Some(p) if p.start == 0 && self.quotients.last() == Some(&self.a0))
    }

    /// `a_n`, unrolling the period; `None` past the end of a finite fraction.
    pub fn quotient(&self, n: usize) -> Option<&Poly> {
        if n == 0 {
            return Some(&self.a0);
        }
        if n <= self.quotients.len() {
            return Some(&self.quotients[n - 1]);
        }
        let p = self.period?;
        Some(&self.quotients[p.start + (n - p.start - 1) % p.len])
    }

    /// `a_1 … a_n` (fewer for a short finite fraction).
    pub fn quotients_upto(&self, n: usize) -> Vec<Poly> {
        (1..=n).map_while(|i| self.quotient(i).cloned()).collect()
    }

    /// Finite fraction `[a_0, …, a_n]`.
    pub fn truncated(&self, n: usize) -> ContinuedFraction {
        ContinuedFraction { a0: self.a0.clone(), quotients: self.quotients_upto(n), period: None }
    }

    /// `deg q_n = Σ_{i ≤ n} deg a_i`.
    pub fn deg_q(&self, n: usize) -> Result<usize> {
        let mut d = 0;
        for i in 1..=n {
            d += self
                .quotient(i)
                .ok_or_else(|| Error::pre(format!("fraction has fewer than {n} quotients")))?
                .deg();
        }
        Ok(d)
    }

    /// Rows `0..=n` of the convergent table.
    pub fn convergents(&self, n: usize) -> Result<Vec<Convergent>> {
        let mut it = self.convergent_stream();
        let mut rows = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            rows.push(it.next().ok_or_else(|| {
                Error::pre(format!("fraction has fewer than {n} partial quotients"))
            })?);
        }
        Ok(rows)
    }

    /// Convergent `(p_n, q_n)` without storing the table.
    pub fn convergent(&self, n: usize) -> Result<Convergent> {
        self.convergent_stream()
            .nth(n)
            .ok_or_else(|| Error::pre(format!("fraction has fewer than {n} partial quotients")))
    }

    pub fn convergent_stream(&self) -> ConvergentStream<'_> {
        let f = self.field();
        ConvergentStream {
            cf: self,
            n: 0,
            prev: (Poly::one(f), Poly::zero(f)),
            cur: None,
        }
    }

    /// Equivalent representation with the shortest period and then the
    /// shortest pre-period.
    pub fn minimized(&self) -> ContinuedFraction {
        let Some(Period { start, len }) = self.period else {
            return self.clone();
        };
        let rep = &self.quotients[start..];
        let s = (1..=len)
            .find(|&d| len % d == 0 && (d..len).all(|i| rep[i] == rep[i - d]))
            .expect("d = len always works");
        let mut r = start;
        while r >= 1 && self.quotients[r - 1] == self.quotients[r - 1 + s] {
            r -= 1;
        }
        let quotients = self.quotients[..r + s].to_vec();
        ContinuedFraction { a0: self.a0.clone(), quotients, period: Some(Period { start: r, len: s }) }
    }

    /// Value of a finite fraction as `p/q`.
    pub fn value(&self) -> Result<(Poly, Poly)> {
        if self.period.is_some() {
            return Err(Error::pre("periodic fraction has no rational value"));
        }
        let c = self.convergent(self.quotients.len())?;
        Ok((c.p, c.q))
    }
}

pub struct ConvergentStream<'a> {
    cf: &'a ContinuedFraction,
    n: usize,
    prev: (Poly, Poly),
    cur: Option<(Poly, Poly)>,
}

impl Iterator for ConvergentStream<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let a = self.cf.quotient(self.n)?;
        let next = match &self.cur {
            None => (a.clone(), Poly::one(self.cf.field())),
            Some((p, q)) => (a.mul(p).add(&self.prev.0), a.mul(q).add(&self.prev.1)),
        };
        if let Some(c) = self.cur.take() {
            self.prev = c;
        }
        self.cur = Some(next.clone());
        let row = Convergent { n: self.n, p: next.0, q: next.1 };
        self.n += 1;
        Some(row)
    }
}

fn fmt_list(v: &[Poly]) -> String {
    v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.period {
            None => {
                let mut all = vec![self.a0.clone()];
                all.extend(self.quotients.iter().cloned());
                write!(f, "[{}]", fmt_list(&all))
            }
            Some(p) => {
                let mut head = vec![self.a0.clone()];
                head.extend(self.quotients[..p.start].iter().cloned());
                write!(f, "[{}, overline({})]", fmt_list(&head), fmt_list(&self.quotients[p.start..]))
            }
        }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CF{self}")
    }
}

/// Finite expansion of `f/g`.
pub fn cf_expand_rational(f: &Poly, g: &Poly) -> Result<ContinuedFraction> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (a0, mut r) = f.divmod(g)?;
    let mut prev = g.clone();
    let mut quotients = Vec::new();
    while !r.is_zero() {
        let (a, rr) = prev.divmod(&r)?;
        quotients.push(a);
        prev = r;
        r = rr;
    }
    ContinuedFraction::finite(a0, quotients)
}

/// Expands a series as far as its precision determines the quotients.
///
/// Returns the certified prefix and its length `m + 1` (counting `a_0`).
/// A quotient is emitted only when the integer part of the current
/// complete quotient is known (frontier past exponent 0) and the remaining
/// fractional part is known to be nonzero, so every series agreeing with the
/// input to its precision has the same prefix. The count is 0 when even
/// `a_0` is undetermined.
pub fn cf_expand_series(x: &LaurentSeries) -> (ContinuedFraction, usize) {
    let f = x.field().clone();
    if x.is_exact() {
        let (num, den) = exact_series_as_rational(x);
        let cf = cf_expand_rational(&num, &den).expect("nonzero denominator");
        let n = cf.quotients.len() + 1;
        return (cf, n);
    }
    let Ok(a0) = x.integer_part() else {
        return (ContinuedFraction { a0: Poly::zero(&f), quotients: vec![], period: None }, 0);
    };
    let mut quotients = Vec::new();
    let mut rest = x.sub(&LaurentSeries::from_poly(&a0));
    loop {
        if rest.is_zero_to_prec() {
            break;
        }
        let Ok(inv) = rest.inv() else { break };
        let Ok(a) = inv.integer_part() else { break };
        rest = inv.sub(&LaurentSeries::from_poly(&a));
        quotients.push(a);
    }
    let n = quotients.len() + 1;
    (ContinuedFraction { a0, quotients, period: None }, n)
}

fn exact_series_as_rational(x: &LaurentSeries) -> (Poly, Poly) {
    let f = x.field();
    let Some(ord) = x.ord() else {
        return (Poly::zero(f), Poly::one(f));
    };
    let last = ord + x.coeffs().len() as i64 - 1;
    let m = last.max(0);
    let mut v = vec![crate::field::Fe::ZERO; (m - ord + 1) as usize];
    for (i, &c) in x.coeffs().iter().enumerate() {
        v[(m - (ord + i as i64)) as usize] = c;
    }
    (Poly::new(f, v), Poly::monomial(f, crate::field::Fe::ONE, m as usize))
}

/// The quadratic relation coming from the two expressions of `ξ` through
/// the complete quotient at the start of the period, before normalization.
pub fn periodic_relation(cf: &ContinuedFraction) -> Result<(Poly, Poly, Poly)> {
    let Some(Period { start: r, len: s }) = cf.period else {
        return Err(Error::pre("fraction is not periodic"));
    };
    let f = cf.field();
    let rows = cf.convergents(r + s)?;
    let pq = |n: isize| -> (Poly, Poly) {
        if n < 0 {
            (Poly::one(f), Poly::zero(f))
        } else {
            let c = &rows[n as usize];
            (c.p.clone(), c.q.clone())
        }
    };
    let (r, s) = (r as isize, s as isize);
    let (p_r1, q_r1) = pq(r - 1);
    let (p_r, q_r) = pq(r);
    let (p_rs1, q_rs1) = pq(r + s - 1);
    let (p_rs, q_rs) = pq(r + s);
    let a = q_r1.mul(&q_rs).sub(&q_r.mul(&q_rs1));
    let b = q_r1
        .mul(&p_rs)
        .sub(&q_r.mul(&p_rs1))
        .add(&p_r1.mul(&q_rs))
        .sub(&p_r.mul(&q_rs1))
        .neg();
    let c = p_r1.mul(&p_rs).sub(&p_r.mul(&p_rs1));
    Ok((a, b, c))
}

/// Minimal polynomial in (F_q[T])[X]_min of an eventually periodic fraction.
///
/// The period representation is minimized first; the resulting quadratic is
/// divided by its content and scaled to a monic leading coefficient.
pub fn periodic_minimal_polynomial(cf: &ContinuedFraction) -> Result<XPoly> {
    let m = cf.minimized();
    let (a, b, c) = periodic_relation(&m)?;
    if a.is_zero() {
        return Err(Error::pre("degenerate period representation: leading coefficient vanishes"));
    }
    XPoly::quadratic(&a, &b, &c).min_form()
}

/// Number of leading quotients of `x`'s certified expansion agreeing with
/// `cf`, and whether the whole certified prefix agrees.
fn prefix_match(x: &LaurentSeries, cf: &ContinuedFraction) -> (usize, bool) {
    let (e, count) = cf_expand_series(x);
    for i in 0..count {
        if e.quotient(i) != cf.quotient(i) {
            return (i, false);
        }
    }
    (count, true)
}

/// Picks the root of `AX^2+BX+C` whose expansion starts like `cf`,
/// raising the working precision until exactly one root qualifies.
pub fn select_root(minpoly: &XPoly, cf: &ContinuedFraction, k: i64, start: i64) -> Result<LaurentSeries> {
    let (a, b, c) = (minpoly.coeff(2), minpoly.coeff(1), minpoly.coeff(0));
    let mut work = start.max(k);
    for _ in 0..24 {
        let roots = quadratic_roots(&a, &b, &c, work)?;
        let cands: Vec<&LaurentSeries> =
            roots.iter().filter(|r| prefix_match(r, cf).1).collect();
        match cands.len() {
            0 => return Err(Error::Internal(format!("no root of {minpoly} expands as {cf}"))),
            1 => return Ok(cands[0].truncate(k)),
            _ => {
                if roots.len() == 1 {
                    return Ok(roots[0].truncate(k));
                }
                work = work * 2 + 8;
            }
        }
    }
    Err(Error::Internal("root selection did not separate the conjugates".into()))
}

/// Series of an eventually periodic (or finite) fraction to precision `k`.
pub fn periodic_eval(cf: &ContinuedFraction, k: i64) -> Result<LaurentSeries> {
    if cf.is_finite() {
        let (p, q) = cf.value()?;
        return LaurentSeries::from_rational(&p, &q, k);
    }
    let minpoly = periodic_minimal_polynomial(cf)?;
    let p = cf.period.expect("periodic");
    let start = 2 * cf.deg_q(p.start + p.len)? as i64 + 8;
    select_root(&minpoly, cf, k, start)
}

/// `[overline{a_n, …, a_0}]` for `ξ = [overline{a_0, …, a_n}]`; its value is `−1/ξ'`.
pub fn cf_galois_conjugate(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    if !cf.is_purely_periodic() {
        return Err(Error::pre("fraction is not purely periodic"));
    }
    if cf.a0.degree().unwrap_or(0) < 1 {
        return Err(Error::pre("purely periodic expansion needs deg a_0 >= 1"));
    }
    let s = cf.period.expect("periodic").len;
    let mut rep: Vec<Poly> = Vec::with_capacity(s);
    rep.push(cf.a0.clone());
    rep.extend(cf.quotients[..s - 1].iter().cloned());
    rep.reverse();
    ContinuedFraction::purely_periodic(rep)
}

/// `|α − α'|` for the roots of a quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConjugateGap {
    /// `|α − α'| = q^e` with a possibly half-integral exponent `e`.
    Separable(#[serde(serialize_with = "crate::report::ser_ratio")] Ratio<i64>),
    /// Inseparable polynomial: the conjugate equals the root itself.
    Inseparable,
}

/// Exact gap from the coefficients: `|B^2 − 4AC|^{1/2}/|A|`, or `|B|/|A|`
/// in characteristic 2.
pub fn quadratic_conjugate_gap(p: &XPoly) -> Result<ConjugateGap> {
    if p.deg_x() != Some(2) {
        return Err(Error::pre("conjugate gap needs a quadratic"));
    }
    let (a, b) = (p.coeff(2), p.coeff(1));
    if p.field().is_char2() {
        return Ok(match b.degree() {
            None => ConjugateGap::Inseparable,
            Some(d) => ConjugateGap::Separable(Ratio::from_integer(d as i64 - a.deg() as i64)),
        });
    }
    let disc = p.discriminant()?;
    match disc.degree() {
        None => Ok(ConjugateGap::Inseparable),
        Some(d) => Ok(ConjugateGap::Separable(Ratio::new(d as i64, 2) - a.deg() as i64)),
    }
}

/// Exact conjugate gap together with the bracket
/// `min(|a_r|,|a_{r+s}|)/|q_r|^2 <= |ξ − ξ'| <= |a_r a_{r+s}|/|q_r|^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub gap: ConjugateGap,
    pub lower: i64,
    pub upper: i64,
    pub minpoly: XPoly,
}

impl GapReport {
    /// Whether the exact value lies inside the bracket.
    pub fn within_bracket(&self) -> bool {
        match self.gap {
            ConjugateGap::Separable(e) => {
                Ratio::from_integer(self.lower) <= e && e <= Ratio::from_integer(self.upper)
            }
            ConjugateGap::Inseparable => false,
        }
    }
}

/// Gap between an eventually periodic `ξ` (pre-period `r >= 1`, as given)
/// and its conjugate; needs `a_r ≠ a_{r+s}`.
pub fn conjugate_gap(cf: &ContinuedFraction) -> Result<GapReport> {
    let Some(Period { start: r, len: s }) = cf.period else {
        return Err(Error::pre("fraction is not periodic"));
    };
    if r == 0 {
        return Err(Error::pre("pre-period must be nonempty (r >= 1)"));
    }
    let ar = cf.quotient(r).expect("r <= len");
    let ars = cf.quotient(r + s).expect("periodic");
    if ar == ars {
        return Err(Error::pre(format!("a_r = a_(r+s) = {ar}")));
    }
    let minpoly = periodic_minimal_polynomial(cf)?;
    let gap = quadratic_conjugate_gap(&minpoly)?;
    let dq = cf.deg_q(r)? as i64;
    let (dr, drs) = (ar.deg() as i64, ars.deg() as i64);
    Ok(GapReport { gap, lower: dr.min(drs) - 2 * dq, upper: dr + drs - 2 * dq, minpoly })
}

/// Exact `|ξ − ζ|` from the continued fractions alone.
///
/// If the expansions agree on `a_0 … a_{k−1}` and differ at `a_k` (or one of
/// them stops there), then `|ξ − ζ| = |a_k − b_k| / (|a_k| |b_k| |q_{k−1}|^2)`,
/// a missing quotient counting as infinite. Returns the absolute value and
/// `k`. Quotients are compared up to index `limit`.
pub fn cf_distance(x: &ContinuedFraction, y: &ContinuedFraction, limit: usize) -> Result<(AbsValue, usize)> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch);
    }
    let mut dq: i64 = 0;
    for k in 0..=limit {
        match (x.quotient(k), y.quotient(k)) {
            (None, None) => return Ok((AbsValue::Zero, k)),
            (Some(a), Some(b)) if a == b => {
                if k >= 1 {
                    dq += a.deg() as i64;
                }
            }
            (Some(a), Some(b)) => {
                if k == 0 {
                    return Ok((a.sub(b).abs(), 0));
                }
                let diff = a.sub(b).deg() as i64;
                let v = diff - a.deg() as i64 - b.deg() as i64 - 2 * dq;
                return Ok((AbsValue::Pow(v), k));
            }
            (Some(a), None) | (None, Some(a)) => {
                if k == 0 {
                    return Err(Error::Internal("fraction without a_0".into()));
                }
                return Ok((AbsValue::Pow(-(a.deg() as i64) - 2 * dq), k));
            }
        }
    }
    Err(Error::prec(format!("expansions agree on the first {limit} quotients")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Fq, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    fn f(p: u32) -> Fq {
        Fq::prime(p).unwrap()
    }

    #[test]
    fn expand_rational_examples() {
        let g = f(3);
        let cf = cf_expand_rational(&Poly::zero(&g), &Poly::one(&g)).unwrap();
        assert_eq!(cf.to_string(), "[0]");
        let cf = cf_expand_rational(&Poly::one(&g), &Poly::t(&g)).unwrap();
        assert_eq!(cf.to_string(), "[0, T]");
        let cf = cf_expand_rational(&poly(&g, "T^2+1"), &Poly::t(&g)).unwrap();
        assert_eq!(cf.to_string(), "[T, T]");
        assert!(cf_expand_rational(&Poly::one(&g), &Poly::zero(&g)).is_err());
    }

    #[test]
    fn convergent_examples() {
        let g = f(3);
        let t = Poly::t(&g);
        let cf = ContinuedFraction::finite(Poly::zero(&g), vec![t.clone(), t.clone()]).unwrap();
        let c = cf.convergent(2).unwrap();
        assert_eq!((c.p, c.q), (t.clone(), poly(&g, "T^2+1")));
        let c0 = cf.convergent(0).unwrap();
        assert_eq!((c0.p, c0.q), (Poly::zero(&g), Poly::one(&g)));

        let g2 = f(2);
        let cf = ContinuedFraction::finite(Poly::zero(&g2), vec![Poly::t(&g2), poly(&g2, "T+1")]).unwrap();
        assert_eq!(cf.convergent(2).unwrap().q, poly(&g2, "T^2+T+1"));
    }

    #[test]
    fn expand_series_examples() {
        let g2 = f(2);
        let s = LaurentSeries::from_rational(&Poly::one(&g2), &poly(&g2, "T-1"), 6).unwrap();
        let (cf, n) = cf_expand_series(&s);
        let oracle = cf_expand_rational(&Poly::one(&g2), &poly(&g2, "T-1")).unwrap();
        assert!(n >= 2);
        assert_eq!(cf.quotient(1), oracle.quotient(1));

        let g3 = f(3);
        let exact = LaurentSeries::from_rational(&poly(&g3, "T^2+1"), &Poly::t(&g3), 4).unwrap();
        let (cf, n) = cf_expand_series(&exact);
        assert_eq!(cf.to_string(), "[T, T]");
        assert_eq!(n, 2);
    }

    #[test]
    fn minimal_polynomial_examples() {
        let g2 = f(2);
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&g2), vec![], vec![Poly::t(&g2)]).unwrap();
        let m = periodic_minimal_polynomial(&cf).unwrap();
        assert_eq!(m, XPoly::quadratic(&Poly::one(&g2), &Poly::t(&g2), &Poly::one(&g2)));

        let g3 = f(3);
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![], vec![Poly::t(&g3)]).unwrap();
        let m = periodic_minimal_polynomial(&cf).unwrap();
        assert_eq!(m, XPoly::quadratic(&Poly::one(&g3), &Poly::t(&g3), &poly(&g3, "2")));
        assert_eq!(m.height().unwrap(), AbsValue::Pow(1));

        // [overline{T}] satisfies ξ = T + 1/ξ
        let cf = ContinuedFraction::purely_periodic(vec![Poly::t(&g3)]).unwrap();
        let m = periodic_minimal_polynomial(&cf).unwrap();
        assert_eq!(m, XPoly::quadratic(&Poly::one(&g3), &poly(&g3, "-T"), &poly(&g3, "-1")));
    }

    #[test]
    fn non_minimal_representations_give_the_same_polynomial() {
        let g3 = f(3);
        let t = Poly::t(&g3);
        let a = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![], vec![t.clone()]).unwrap();
        let b = ContinuedFraction::eventually_periodic(
            Poly::zero(&g3),
            vec![t.clone(), t.clone()],
            vec![t.clone(), t.clone()],
        )
        .unwrap();
        assert_eq!(b.minimized(), a);
        assert_eq!(periodic_minimal_polynomial(&a).unwrap(), periodic_minimal_polynomial(&b).unwrap());
    }

    #[test]
    fn periodic_eval_round_trip() {
        let g3 = f(3);
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![], vec![Poly::t(&g3)]).unwrap();
        let x = periodic_eval(&cf, 8).unwrap();
        assert_eq!(x.ord(), Some(1));
        assert!(x.prec().unwrap() >= 8);
        let (e, n) = cf_expand_series(&x);
        assert!(n >= 4);
        for i in 0..n {
            assert_eq!(e.quotient(i), cf.quotient(i));
        }

        let g2 = f(2);
        let cf = ContinuedFraction::eventually_periodic(
            Poly::zero(&g2),
            vec![poly(&g2, "T+1")],
            vec![Poly::t(&g2)],
        )
        .unwrap();
        let x = periodic_eval(&cf, 10).unwrap();
        let m = periodic_minimal_polynomial(&cf).unwrap();
        assert!(m.eval_series(&x).is_zero_to_prec());
    }

    #[test]
    fn galois_conjugate_reverses_period() {
        let g3 = f(3);
        let t = Poly::t(&g3);
        let t1 = poly(&g3, "T+1");
        let cf = ContinuedFraction::purely_periodic(vec![t.clone(), t1.clone()]).unwrap();
        let conj = cf_galois_conjugate(&cf).unwrap();
        assert_eq!(conj, ContinuedFraction::purely_periodic(vec![t1, t.clone()]).unwrap());
        let single = ContinuedFraction::purely_periodic(vec![t.clone()]).unwrap();
        assert_eq!(cf_galois_conjugate(&single).unwrap(), single);
        let not_pure = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![], vec![t]).unwrap();
        assert!(cf_galois_conjugate(&not_pure).is_err());
    }

    #[test]
    fn conjugate_gap_examples() {
        let g3 = f(3);
        let t = Poly::t(&g3);
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![t.clone()], vec![poly(&g3, "T+1")])
            .unwrap();
        let rep = conjugate_gap(&cf).unwrap();
        assert!(rep.within_bracket(), "{rep:?}");

        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![], vec![t.clone()]).unwrap();
        assert!(matches!(conjugate_gap(&cf), Err(Error::Precondition(_))));
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![t.clone()], vec![t]).unwrap();
        assert!(matches!(conjugate_gap(&cf), Err(Error::Precondition(_))));

        let g2 = f(2);
        let insep = XPoly::quadratic(&Poly::one(&g2), &Poly::zero(&g2), &Poly::t(&g2));
        assert_eq!(quadratic_conjugate_gap(&insep).unwrap(), ConjugateGap::Inseparable);
    }

    #[test]
    fn distance_by_prefix_matches_series() {
        let g3 = f(3);
        let t = Poly::t(&g3);
        let t1 = poly(&g3, "T+1");
        let x = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![t.clone(), t1.clone()], vec![t.clone()])
            .unwrap();
        let y = ContinuedFraction::eventually_periodic(Poly::zero(&g3), vec![t.clone(), t.clone()], vec![t1.clone()])
            .unwrap();
        let (d, k) = cf_distance(&x, &y, 50).unwrap();
        assert_eq!(k, 2);
        let sx = periodic_eval(&x, 40).unwrap();
        let sy = periodic_eval(&y, 40).unwrap();
        assert_eq!(sx.sub(&sy).abs().unwrap(), d);
    }
}
