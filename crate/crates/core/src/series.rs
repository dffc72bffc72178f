//! Truncated Laurent series in `T^{-1}` with a certified precision frontier.
//!
//! A series stores the coefficients of `T^{-n}` for `ord <= n < prec`.
//! Coefficients at exponents `>= prec` are unknown. `prec = None` marks a
//! series whose finite expansion is exact (a polynomial in `T` and `T^{-1}`).
//!
//! Precision propagates pessimistically:
//! * sums are known up to the smaller frontier;
//! * products and quotients keep the smaller *relative* precision
//!   (`prec − ord`) of their inputs, exact inputs counting as infinite;
//! * a series known to vanish below `K` is "zero to precision" and behaves as
//!   a series with order `K` and relative precision 0.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::poly::{AbsValue, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Fq,
    ord: i64,
    coeffs: Vec<Fe>,
    prec: Option<i64>,
}

impl LaurentSeries {
    /// Builds a normalized series from coefficients of `T^{-lo}, T^{-lo-1}, …`.
    ///
    /// With a finite `prec`, entries at exponents `>= prec` are dropped and
    /// missing ones up to `prec` are taken as zero.
    pub fn from_parts(field: &Fq, lo: i64, mut coeffs: Vec<Fe>, prec: Option<i64>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match prec {
            Some(k) => {
                let Some(z) = lead else {
                    return LaurentSeries::zero_to(field, k);
                };
                let ord = lo + z as i64;
                if ord >= k {
                    return LaurentSeries::zero_to(field, k);
                }
                coeffs.drain(..z);
                coeffs.resize((k - ord) as usize, Fe::ZERO);
                LaurentSeries { field: field.clone(), ord, coeffs, prec }
            }
            None => {
                let Some(z) = lead else {
                    return LaurentSeries::zero(field);
                };
                coeffs.drain(..z);
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                LaurentSeries { field: field.clone(), ord: lo + z as i64, coeffs, prec: None }
            }
        }
    }

    /// The exact zero.
    pub fn zero(field: &Fq) -> Self {
        LaurentSeries { field: field.clone(), ord: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(T^{-k})`: known to vanish at all exponents below `k`.
    pub fn zero_to(field: &Fq, k: i64) -> Self {
        LaurentSeries { field: field.clone(), ord: k, coeffs: Vec::new(), prec: Some(k) }
    }

    /// Exact `c T^{-n}`.
    pub fn monomial(field: &Fq, c: Fe, n: i64) -> Self {
        LaurentSeries::from_parts(field, n, vec![c], None)
    }

    pub fn one(field: &Fq) -> Self {
        LaurentSeries::monomial(field, Fe::ONE, 0)
    }

    /// Exact embedding of a polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        let f = p.field();
        match p.degree() {
            None => LaurentSeries::zero(f),
            Some(d) => {
                let v: Vec<Fe> = p.coeffs().iter().rev().copied().collect();
                LaurentSeries::from_parts(f, -(d as i64), v, None)
            }
        }
    }

    /// `f/g` to precision `k`, exact when the reduced denominator is a monomial.
    pub fn from_rational(f: &Poly, g: &Poly, k: i64) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = f.field();
        if f.is_zero() {
            return Ok(LaurentSeries::zero(field));
        }
        let d = f.gcd(g)?;
        let (f, g) = (f.div_exact(&d)?, g.div_exact(&d)?);
        if g.coeffs()[..g.deg()].iter().all(|c| c.is_zero()) {
            let c = field.inv(g.lead()).expect("nonzero");
            let s = LaurentSeries::from_poly(&f.scale(c));
            return Ok(s.shift_down(g.deg() as i64));
        }
        // floor(f T^m / g) holds the coefficients of exponents <= m
        let m = k - 1;
        let lo = g.deg() as i64 - f.deg() as i64;
        if m < lo {
            return Ok(LaurentSeries::zero_to(field, k));
        }
        let (num, den) = if m >= 0 {
            (f.shift(m as usize), g.clone())
        } else {
            (f.clone(), g.shift((-m) as usize))
        };
        let (q, _) = num.divmod(&den)?;
        // coefficient of T^j in q is the coefficient of T^{-(m-j)}
        let v: Vec<Fe> = q.coeffs().iter().rev().copied().collect();
        let top = q.deg() as i64;
        Ok(LaurentSeries::from_parts(field, m - top, v, Some(k)))
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    /// Precision frontier `K`; `None` for exact series.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Leading exponent `N` (so `|x| = q^{-N}`), `None` when the series is
    /// zero or zero to precision.
    pub fn ord(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.ord)
        }
    }

    /// Exponent of the first coefficient not known to vanish. For a
    /// zero-to-precision series this is its frontier.
    pub fn lower_ord(&self) -> i64 {
        self.ord
    }

    /// Raw coefficients starting at the leading exponent.
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Number of known coefficients from the leading one, `None` if exact.
    pub fn rel_prec(&self) -> Option<i64> {
        self.prec.map(|k| k - self.ord)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// True for the exact zero and for series vanishing to their precision.
    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `T^{-n}`, `None` when it lies beyond the frontier.
    pub fn coeff(&self, n: i64) -> Option<Fe> {
        if let Some(k) = self.prec {
            if n >= k {
                return None;
            }
        }
        if n < self.ord {
            return Some(Fe::ZERO);
        }
        Some(self.coeffs.get((n - self.ord) as usize).copied().unwrap_or(Fe::ZERO))
    }

    /// `|x|`; an error when the series is only known to vanish to precision.
    pub fn abs(&self) -> Result<AbsValue> {
        if self.is_exact_zero() {
            return Ok(AbsValue::Zero);
        }
        if self.coeffs.is_empty() {
            return Err(Error::prec(format!("series vanishes to precision {}", self.ord)));
        }
        Ok(AbsValue::Pow(-self.ord))
    }

    /// Lowers the frontier to `min(prec, k)`.
    pub fn truncate(&self, k: i64) -> Self {
        let k = self.prec.map_or(k, |p| p.min(k));
        LaurentSeries::from_parts(&self.field, self.ord, self.coeffs.clone(), Some(k))
    }

    /// Truncates so that at most `r` coefficients after the leading one are
    /// kept (relative precision `r`).
    pub fn truncate_rel(&self, r: i64) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        self.truncate(self.ord + r)
    }

    /// Multiplication by `T^{-k}`.
    pub fn shift_down(&self, k: i64) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        LaurentSeries {
            field: self.field.clone(),
            ord: self.ord + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentSeries { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: Fe) -> Self {
        if c.is_zero() {
            return match self.prec {
                None => LaurentSeries::zero(&self.field),
                Some(k) => LaurentSeries::zero_to(&self.field, k),
            };
        }
        let f = &self.field;
        LaurentSeries { coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(), ..self.clone() }
    }

    fn end(&self) -> i64 {
        self.prec.unwrap_or(self.ord + self.coeffs.len() as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        if other.is_exact_zero() {
            return self.clone();
        }
        if self.is_exact_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let prec = match (self.prec, other.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let lo = self.ord.min(other.ord);
        let hi = match prec {
            Some(k) => k,
            None => self.end().max(other.end()),
        };
        if lo >= hi {
            return LaurentSeries::zero_to(f, hi);
        }
        let mut v = vec![Fe::ZERO; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let n = self.ord + i as i64;
            if n < hi {
                v[(n - lo) as usize] = c;
            }
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let n = other.ord + i as i64;
            if n < hi {
                let slot = &mut v[(n - lo) as usize];
                *slot = if negate { f.sub(*slot, c) } else { f.add(*slot, c) };
            }
        }
        LaurentSeries::from_parts(f, lo, v, prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return LaurentSeries::zero(f);
        }
        let ord = self.ord + other.ord;
        let rel = match (self.rel_prec(), other.rel_prec()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let (a, b) = (&self.coeffs, &other.coeffs);
        match rel {
            None => {
                let mut v = vec![Fe::ZERO; a.len() + b.len() - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        v[i + j] = f.add(v[i + j], f.mul(x, y));
                    }
                }
                LaurentSeries::from_parts(f, ord, v, None)
            }
            Some(r) => {
                let r = r as usize;
                let mut v = vec![Fe::ZERO; r];
                for (i, &x) in a.iter().enumerate().take(r) {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate().take(r - i) {
                        v[i + j] = f.add(v[i + j], f.mul(x, y));
                    }
                }
                LaurentSeries::from_parts(f, ord, v, Some(ord + r as i64))
            }
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&LaurentSeries::from_poly(p))
    }

    /// Multiplicative inverse keeping the relative precision.
    ///
    /// Exact inputs must be monomials; anything else has an infinite
    /// expansion and has to be truncated first (see [`Self::inv_rel`]).
    pub fn inv(&self) -> Result<Self> {
        if self.is_exact() && self.coeffs.len() > 1 {
            return Err(Error::pre("inverse of an exact non-monomial series needs a precision"));
        }
        self.inv_rel(self.rel_prec().unwrap_or(1))
    }

    /// Inverse to relative precision `min(r, rel_prec)`.
    pub fn inv_rel(&self, r: i64) -> Result<Self> {
        let f = &self.field;
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.is_empty() {
            return Err(Error::prec("inverse of a series that vanishes to precision"));
        }
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = f.inv(self.coeffs[0]).expect("nonzero");
            return Ok(LaurentSeries::monomial(f, c, -self.ord));
        }
        let r = self.rel_prec().map_or(r, |x| x.min(r)).max(0) as usize;
        let u = &self.coeffs;
        let u0_inv = f.inv(u[0]).expect("leading coefficient nonzero");
        let mut v = vec![Fe::ZERO; r];
        for k in 0..r {
            let mut s = if k == 0 { Fe::ONE } else { Fe::ZERO };
            for i in 1..=k.min(u.len().saturating_sub(1)) {
                s = f.sub(s, f.mul(u[i], v[k - i]));
            }
            v[k] = f.mul(s, u0_inv);
        }
        Ok(LaurentSeries::from_parts(f, -self.ord, v, Some(-self.ord + r as i64)))
    }

    /// `self / a` for a nonzero polynomial `a`, keeping relative precision.
    pub fn div_poly(&self, a: &Poly) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s = LaurentSeries::from_poly(a);
        if self.is_zero_to_prec() {
            return Ok(self.shift_down(a.deg() as i64));
        }
        match self.rel_prec() {
            Some(r) => Ok(self.mul(&s.inv_rel(r)?)),
            None => Ok(self.mul(&s.inv()?)),
        }
    }

    /// Canonical square root (see module docs on branch choice).
    ///
    /// In odd characteristic the leading coefficient's least-index square
    /// root fixes the branch and the result keeps the relative precision.
    /// In characteristic 2 the root is taken termwise; the frontier halves.
    pub fn sqrt(&self) -> Result<Self> {
        let f = &self.field;
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        if self.coeffs.is_empty() {
            let k = self.ord.div_euclid(2) + self.ord.rem_euclid(2);
            return Ok(LaurentSeries::zero_to(f, k));
        }
        if f.is_char2() {
            let hi = self.end();
            let mut v = Vec::new();
            let lo = self.ord.div_euclid(2);
            for n in self.ord..hi {
                let c = self.coeff(n).unwrap_or(Fe::ZERO);
                if n.rem_euclid(2) == 1 {
                    if !c.is_zero() {
                        return Err(Error::NoSquareRoot(format!("odd-exponent coefficient at T^-{n}")));
                    }
                } else {
                    v.push(f.sqrt(c).expect("every element of a field of characteristic 2 is a square"));
                }
            }
            let lo = if self.ord.rem_euclid(2) == 0 { lo } else { lo + 1 };
            let prec = self.prec.map(|k| k.div_euclid(2) + k.rem_euclid(2));
            return Ok(LaurentSeries::from_parts(f, lo, v, prec));
        }
        if self.ord.rem_euclid(2) != 0 {
            return Err(Error::NoSquareRoot(format!("odd order {}", self.ord)));
        }
        let Some(r) = self.rel_prec() else {
            if self.coeffs.len() == 1 {
                let s = f.sqrt(self.coeffs[0])
                    .ok_or_else(|| Error::NoSquareRoot("leading coefficient is not a square".into()))?;
                return Ok(LaurentSeries::monomial(f, s, self.ord / 2));
            }
            return Err(Error::pre("square root of an exact non-monomial series needs a precision"));
        };
        self.sqrt_rel(r)
    }

    /// Odd-characteristic square root to relative precision `r`.
    pub fn sqrt_rel(&self, r: i64) -> Result<Self> {
        let f = &self.field;
        if f.is_char2() {
            return self.truncate_rel(2 * r).sqrt();
        }
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        if self.coeffs.is_empty() {
            return self.sqrt();
        }
        if self.ord.rem_euclid(2) != 0 {
            return Err(Error::NoSquareRoot(format!("odd order {}", self.ord)));
        }
        let u = &self.coeffs;
        let s0 = f
            .sqrt(u[0])
            .ok_or_else(|| Error::NoSquareRoot("leading coefficient is not a square".into()))?;
        let r = self.rel_prec().map_or(r, |x| x.min(r)).max(0) as usize;
        let two_s0_inv = f.inv(f.add(s0, s0)).expect("odd characteristic");
        let mut s = vec![Fe::ZERO; r];
        if r > 0 {
            s[0] = s0;
        }
        for k in 1..r {
            let mut acc = u.get(k).copied().unwrap_or(Fe::ZERO);
            for i in 1..k {
                acc = f.sub(acc, f.mul(s[i], s[k - i]));
            }
            s[k] = f.mul(acc, two_s0_inv);
        }
        let half = self.ord / 2;
        Ok(LaurentSeries::from_parts(f, half, s, Some(half + r as i64)))
    }

    /// Solves `Y^2 + Y = E` for `|E| < 1` in characteristic 2 via
    /// `Y = Σ_{i≥0} E^{2^i}`; the other root is `Y + 1`.
    pub fn artin_schreier_solve(&self) -> Result<Self> {
        let f = &self.field;
        if !f.is_char2() {
            return Err(Error::pre("Artin-Schreier solve needs characteristic 2"));
        }
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        if !self.coeffs.is_empty() && self.ord < 1 {
            return Err(Error::pre(format!("|E| = q^{} is not < 1", -self.ord)));
        }
        let Some(k) = self.prec else {
            return Err(Error::pre("Artin-Schreier solve of an exact series needs a precision"));
        };
        if self.coeffs.is_empty() {
            return Ok(LaurentSeries::zero_to(f, k));
        }
        let lo = self.ord;
        let mut v = vec![Fe::ZERO; (k - lo).max(0) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // E^{2^j} contributes c^{2^j} at exponent n 2^j
            let mut n = lo + i as i64;
            let mut cj = c;
            while n < k {
                let slot = &mut v[(n - lo) as usize];
                *slot = f.add(*slot, cj);
                n *= 2;
                cj = f.mul(cj, cj);
            }
        }
        Ok(LaurentSeries::from_parts(f, lo, v, Some(k)))
    }

    /// Polynomial part (exponents `<= 0`); requires the frontier to be past 0.
    pub fn integer_part(&self) -> Result<Poly> {
        if let Some(k) = self.prec {
            if k <= 0 {
                return Err(Error::prec(format!("integer part needs precision > 0, have {k}")));
            }
        }
        let f = &self.field;
        if self.coeffs.is_empty() || self.ord > 0 {
            return Ok(Poly::zero(f));
        }
        let top = (-self.ord) as usize;
        let mut v = vec![Fe::ZERO; top + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let n = self.ord + i as i64;
            if n > 0 {
                break;
            }
            v[(-n) as usize] = c;
        }
        Ok(Poly::new(f, v))
    }

    /// `self − integer_part`.
    pub fn frac_part(&self) -> Result<Self> {
        let ip = self.integer_part()?;
        Ok(self.sub(&LaurentSeries::from_poly(&ip)))
    }

    /// Smallest exponent where the two series are known to differ, or
    /// `None` if they agree up to the smaller frontier (or are equal exact
    /// series).
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        self.sub(other).ord()
    }

    /// Renders `T^{-n}` terms up to `max_terms` plus the precision tail.
    pub fn display_terms(&self, max_terms: usize) -> String {
        let mut parts = Vec::new();
        let mut shown = 0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if shown == max_terms {
                parts.push("...".to_string());
                break;
            }
            shown += 1;
            let n = self.ord + i as i64;
            let cs = if c == Fe::ONE && n != 0 { String::new() } else { c.index().to_string() };
            parts.push(match -n {
                0 => cs,
                1 => format!("{cs}T"),
                e => format!("{cs}T^{e}"),
            });
        }
        match self.prec {
            Some(k) => parts.push(format!("O(T^{})", -k)),
            None if parts.is_empty() => parts.push("0".into()),
            None => {}
        }
        parts.join(" + ")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_terms(usize::MAX))
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({})", self.display_terms(12))
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("ord", &self.ord)?;
        st.serialize_field("prec", &self.prec)?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(|c| c.index()).collect::<Vec<_>>())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fq {
        Fq::prime(p).unwrap()
    }

    fn poly(field: &Fq, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    /// Coefficients of `T^{-lo} .. T^{-(k-1)}`.
    fn window(s: &LaurentSeries, lo: i64, k: i64) -> Vec<usize> {
        (lo..k).map(|n| s.coeff(n).unwrap().index()).collect()
    }

    #[test]
    fn from_rational_examples() {
        let g3 = f(3);
        let s = LaurentSeries::from_rational(&Poly::one(&g3), &Poly::t(&g3), 4).unwrap();
        assert!(s.is_exact());
        assert_eq!(s, LaurentSeries::monomial(&g3, Fe::ONE, 1));

        let g2 = f(2);
        let s = LaurentSeries::from_rational(&Poly::one(&g2), &poly(&g2, "T-1"), 3).unwrap();
        assert_eq!(s.prec(), Some(3));
        assert_eq!(window(&s, 0, 3), vec![0, 1, 1]);
        // geometric series: 1/(T-1) = Σ_{n≥1} T^{-n}
        let s = LaurentSeries::from_rational(&Poly::one(&g2), &poly(&g2, "T+1"), 10).unwrap();
        assert_eq!(window(&s, 1, 10), vec![1; 9]);

        let s = LaurentSeries::from_rational(&poly(&g3, "T^2+1"), &Poly::t(&g3), 5).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.to_string(), "T + T^-1");
        assert!(LaurentSeries::from_rational(&Poly::one(&g3), &Poly::zero(&g3), 3).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let g3 = f(3);
        let x = LaurentSeries::monomial(&g3, Fe::ONE, 1);
        assert_eq!(x.mul(&x), LaurentSeries::monomial(&g3, Fe::ONE, 2));

        let y = LaurentSeries::from_poly(&poly(&g3, "T^2+1")).shift_down(1).truncate(4);
        let inv = y.inv().unwrap();
        // 1/(T + T^-1) = T^-1 - T^-3 + T^-5 - ...; relative precision 5 is kept
        assert_eq!(inv.prec(), Some(6));
        assert_eq!(window(&inv, 1, 6), vec![1, 0, 2, 0, 1]);
        let one = y.mul(&inv);
        assert!(one.sub(&LaurentSeries::one(&g3)).is_zero_to_prec());

        let z = inv.add(&inv.neg());
        assert!(z.is_zero_to_prec());
        assert_eq!(z.prec(), Some(6));
    }

    #[test]
    fn sqrt_examples() {
        let g3 = f(3);
        let a = LaurentSeries::monomial(&g3, Fe::ONE, 2);
        assert_eq!(a.sqrt().unwrap(), LaurentSeries::monomial(&g3, Fe::ONE, 1));

        let a = LaurentSeries::from_parts(&g3, 0, vec![Fe::ONE, Fe::ZERO, Fe::ONE], Some(5));
        let s = a.sqrt().unwrap();
        assert_eq!(window(&s, 0, 5), vec![1, 0, 2, 0, 1]);
        assert!(s.mul(&s).sub(&a).is_zero_to_prec());

        let b = LaurentSeries::monomial(&g3, Fe::ONE, 1);
        assert!(matches!(b.sqrt(), Err(Error::NoSquareRoot(_))));

        let g2 = f(2);
        let c = LaurentSeries::from_parts(&g2, 0, vec![Fe::ONE, Fe::ZERO, Fe::ONE, Fe::ONE], Some(6));
        assert!(matches!(c.sqrt(), Err(Error::NoSquareRoot(_))));
        let d = LaurentSeries::from_parts(&g2, -2, vec![Fe::ONE, Fe::ZERO, Fe::ONE], Some(5));
        let r = d.sqrt().unwrap();
        assert_eq!(r.prec(), Some(3));
        assert!(r.mul(&r).sub(&d).is_zero_to_prec());
    }

    #[test]
    fn artin_schreier_examples() {
        let g2 = f(2);
        assert!(LaurentSeries::zero(&g2).artin_schreier_solve().unwrap().is_exact_zero());

        let e = LaurentSeries::monomial(&g2, Fe::ONE, 1).truncate(5);
        let y = e.artin_schreier_solve().unwrap();
        assert_eq!(window(&y, 1, 5), vec![1, 1, 0, 1]);
        assert!(y.mul(&y).add(&y).sub(&e).is_zero_to_prec());

        let e = LaurentSeries::monomial(&g2, Fe::ONE, 3).truncate(7);
        let y = e.artin_schreier_solve().unwrap();
        assert_eq!(window(&y, 3, 7), vec![1, 0, 0, 1]);

        let big = LaurentSeries::one(&g2).truncate(4);
        assert!(big.artin_schreier_solve().is_err());
        assert!(LaurentSeries::monomial(&f(3), Fe::ONE, 1).truncate(3).artin_schreier_solve().is_err());
    }

    #[test]
    fn integer_and_fractional_parts() {
        let g3 = f(3);
        let s = LaurentSeries::from_rational(&poly(&g3, "T^3+1"), &poly(&g3, "T+1"), 6).unwrap();
        // (T^3+1)/(T+1) = T^2 - T + 1 exactly
        assert!(s.is_exact());
        assert_eq!(s.integer_part().unwrap(), poly(&g3, "T^2-T+1"));
        let s = LaurentSeries::from_rational(&poly(&g3, "T^2"), &poly(&g3, "T+1"), 6).unwrap();
        assert_eq!(s.integer_part().unwrap(), poly(&g3, "T-1"));
        assert_eq!(s.frac_part().unwrap().ord(), Some(1));
    }
}
