//! Algebraic numbers of degree at most 2 that lie in F_q((T^{-1})).

use std::fmt;

use serde::Serialize;

use crate::cf::{cf_expand_series, periodic_minimal_polynomial, select_root, ContinuedFraction};
use crate::error::{Error, Result};
use crate::poly::{AbsValue, Poly};
use crate::roots::quadratic_roots;
use crate::series::LaurentSeries;
use crate::xpoly::XPoly;

/// Working precision used before any adaptive increase.
const BASE_PREC: i64 = 24;
/// Cap on adaptive precision increases.
const MAX_PREC: i64 = 1 << 16;

/// A root of an irreducible polynomial of degree <= 2 in (F_q[T])[X]_min,
/// selected by its position in the canonical root order of
/// [`quadratic_roots`] (a single position for linear polynomials).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraicNumber {
    minpoly: XPoly,
    branch: usize,
}

impl AlgebraicNumber {
    /// Validates that `minpoly` is in min form, irreducible and has a root
    /// with index `branch` in F_q((T^{-1})).
    pub fn new(minpoly: XPoly, branch: usize) -> Result<Self> {
        if !minpoly.is_min_form() {
            return Err(Error::pre(format!("{minpoly} is not primitive with monic leading coefficient")));
        }
        match minpoly.deg_x() {
            Some(1) => {
                if branch != 0 {
                    return Err(Error::pre("a linear polynomial has a single root"));
                }
            }
            Some(2) => {
                if !is_irreducible_quadratic(&minpoly)? {
                    return Err(Error::pre(format!("{minpoly} is reducible")));
                }
                let n = field_roots(&minpoly, BASE_PREC)?.len();
                if branch >= n {
                    return Err(Error::pre(format!("{minpoly} has {n} roots in the field, no branch {branch}")));
                }
            }
            _ => return Err(Error::pre("only degrees 1 and 2 are supported")),
        }
        Ok(AlgebraicNumber { minpoly, branch })
    }

    /// The rational number `p/q`.
    pub fn rational(p: &Poly, q: &Poly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = XPoly::linear(q, &p.neg()).min_form()?;
        Ok(AlgebraicNumber { minpoly: m, branch: 0 })
    }

    /// The value of an eventually periodic continued fraction.
    pub fn from_cf(cf: &ContinuedFraction) -> Result<Self> {
        let minpoly = periodic_minimal_polynomial(cf)?;
        let p = cf.period().expect("periodic");
        let start = 2 * cf.deg_q(p.start + p.len)? as i64 + 8;
        let x = select_root(&minpoly, cf, start, start)?;
        let k = x.prec().unwrap_or(start);
        let roots = field_roots(&minpoly, k)?;
        let branch = roots
            .iter()
            .position(|r| r.sub(&x).is_zero_to_prec())
            .ok_or_else(|| Error::Internal("selected root not found among roots".into()))?;
        Ok(AlgebraicNumber { minpoly, branch })
    }

    /// Every root in F_q((T^{-1})) of an irreducible quadratic or linear
    /// min-form polynomial.
    pub fn roots_of(minpoly: &XPoly) -> Result<Vec<AlgebraicNumber>> {
        let n = match minpoly.deg_x() {
            Some(1) => 1,
            _ => field_roots(minpoly, BASE_PREC)?.len(),
        };
        (0..n).map(|b| AlgebraicNumber::new(minpoly.clone(), b)).collect()
    }

    pub fn minpoly(&self) -> &XPoly {
        &self.minpoly
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg_x().expect("nonzero")
    }

    /// Inseparable degree of the minimal polynomial.
    pub fn insep(&self) -> u64 {
        self.minpoly.insep_degree()
    }

    /// `h` with `H(α) = q^h`.
    pub fn height_exp(&self) -> i64 {
        self.minpoly.height_exp().expect("nonzero")
    }

    /// The root as a series known below `k`.
    pub fn series(&self, k: i64) -> Result<LaurentSeries> {
        let roots = field_roots(&self.minpoly, k)?;
        roots
            .into_iter()
            .nth(self.branch)
            .ok_or_else(|| Error::Internal("branch vanished at higher precision".into()))
    }

    /// `|α|`, exact.
    pub fn abs(&self) -> Result<AbsValue> {
        if self.minpoly.coeff(0).is_zero() {
            return Ok(AbsValue::Zero);
        }
        let mut k = BASE_PREC;
        loop {
            let s = self.series(k)?;
            if let Ok(v) = s.abs() {
                return Ok(v);
            }
            k = next_prec(k)?;
        }
    }

    /// Exponent of `max(1, |α|)`.
    pub fn max1_exp(&self) -> Result<i64> {
        Ok(self.abs()?.exponent().map_or(0, |e| e.max(0)))
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root#{} of {}", self.branch, self.minpoly)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alg({self})")
    }
}

fn next_prec(k: i64) -> Result<i64> {
    if k >= MAX_PREC {
        return Err(Error::prec(format!("no certified answer below precision {MAX_PREC}")));
    }
    Ok(k * 2)
}

/// Roots of a linear or quadratic polynomial in F_q((T^{-1})), canonical order.
pub fn field_roots(p: &XPoly, k: i64) -> Result<Vec<LaurentSeries>> {
    match p.deg_x() {
        Some(1) => Ok(vec![LaurentSeries::from_rational(&p.coeff(0).neg(), &p.coeff(1), k)?]),
        Some(2) => quadratic_roots(&p.coeff(2), &p.coeff(1), &p.coeff(0), k),
        _ => Err(Error::pre("root extraction supports degrees 1 and 2 only")),
    }
}

/// Roots in F_q(T) of a quadratic as `(numerator, denominator)` pairs with
/// multiplicities.
///
/// Odd characteristic: the discriminant must be a square in F_q[T].
/// Characteristic 2 with `B = 0`: `AC` must be a square. Otherwise a rational
/// root is its own last convergent, with denominator dividing `A`, so the
/// convergents of a field root with `deg q <= deg A` are tested exactly.
pub fn rational_roots_quadratic(p: &XPoly) -> Result<Vec<(Poly, Poly, u32)>> {
    if p.deg_x() != Some(2) {
        return Err(Error::pre("not a quadratic"));
    }
    let f = p.field();
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    if !f.is_char2() {
        let disc = p.discriminant()?;
        let two_a = a.scale(f.from_int(2));
        let nb = b.neg();
        if disc.is_zero() {
            return Ok(vec![(nb, two_a, 2)]);
        }
        return Ok(match disc.sqrt() {
            Some(s) => vec![(nb.add(&s), two_a.clone(), 1), (nb.sub(&s), two_a, 1)],
            None => Vec::new(),
        });
    }
    if b.is_zero() {
        return Ok(match a.mul(&c).sqrt() {
            Some(r) => vec![(r, a, 2)],
            None => Vec::new(),
        });
    }
    if c.is_zero() {
        return Ok(vec![(Poly::zero(f), Poly::one(f), 1), (b.neg(), a, 1)]);
    }
    let da = a.deg();
    let k = 4 * (da + b.deg() + c.deg()) as i64 + 16;
    let roots = quadratic_roots(&a, &b, &c, k)?;
    let Some(x) = roots.first() else {
        return Ok(Vec::new());
    };
    let (cf, _) = cf_expand_series(x);
    for conv in cf.convergent_stream() {
        if conv.q.deg() > da {
            break;
        }
        if p.eval_homogeneous(&conv.p, &conv.q).is_zero() {
            // the other root is −B/A − p/q
            let num = b.mul(&conv.q).add(&a.mul(&conv.p)).neg();
            let den = a.mul(&conv.q);
            return Ok(vec![(conv.p, conv.q, 1), (num, den, 1)]);
        }
    }
    Ok(Vec::new())
}

/// Irreducibility over F_q(T) of a quadratic: no root in F_q(T).
pub fn is_irreducible_quadratic(p: &XPoly) -> Result<bool> {
    Ok(rational_roots_quadratic(p)?.is_empty())
}

/// Roots of a linear or quadratic polynomial in F_q((T^{-1})), each with its
/// order as a root.
pub fn roots_with_multiplicity(p: &XPoly) -> Result<Vec<(AlgebraicNumber, u32)>> {
    match p.deg_x() {
        Some(1) => Ok(vec![(AlgebraicNumber::rational(&p.coeff(0).neg(), &p.coeff(1))?, 1)]),
        Some(2) => {
            let rat = rational_roots_quadratic(p)?;
            if rat.is_empty() {
                let m = p.min_form()?;
                return Ok(AlgebraicNumber::roots_of(&m)?.into_iter().map(|a| (a, 1)).collect());
            }
            let mut out: Vec<(AlgebraicNumber, u32)> = Vec::new();
            for (num, den, mult) in rat {
                let a = AlgebraicNumber::rational(&num, &den)?;
                match out.iter_mut().find(|(b, _)| *b == a) {
                    Some(e) => e.1 += mult,
                    None => out.push((a, mult)),
                }
            }
            Ok(out)
        }
        _ => Err(Error::pre("root extraction supports degrees 1 and 2 only")),
    }
}

/// Whether `m` divides `p` in F_q(T)[X], by pseudo-division.
pub fn divides_over_fraction_field(m: &XPoly, p: &XPoly) -> bool {
    let Some(dm) = m.deg_x() else { return false };
    let mut r = p.clone();
    let lm = m.lead();
    while let Some(dr) = r.deg_x() {
        if dr < dm {
            return false;
        }
        let lr = r.lead();
        let mut shifted = vec![Poly::zero(m.field()); dr - dm];
        shifted.extend(m.coeffs().iter().map(|c| c.mul(&lr)));
        let scaled = r.scale(&lm);
        let v: Vec<Poly> = (0..=dr).map(|i| scaled.coeff(i).sub(&shifted.get(i).cloned().unwrap_or_else(|| Poly::zero(m.field())))).collect();
        r = XPoly::new(m.field(), v);
    }
    true
}

/// Multiplicity of a root with minimal polynomial `m` in `p`
/// (`insep(m) · max{k : m^k | p}`).
pub fn root_multiplicity(m: &XPoly, p: &XPoly) -> u32 {
    let mut k = 0;
    let mut pow = m.clone();
    while p.deg_x().unwrap_or(0) >= pow.deg_x().unwrap_or(0) && divides_over_fraction_field(&pow, p) {
        k += 1;
        pow = pow.mul(m);
    }
    k * m.insep_degree() as u32
}

/// Exact `|α − β|` for distinct numbers, raising precision until the
/// difference is certified.
pub fn distance(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AbsValue> {
    if a == b {
        return Ok(AbsValue::Zero);
    }
    let mut k = BASE_PREC;
    loop {
        let d = a.series(k)?.sub(&b.series(k)?);
        if let Ok(v) = d.abs() {
            return Ok(v);
        }
        k = next_prec(k)?;
    }
}

/// Exact `|P(β)|`; a precondition error when `P(β) = 0`.
pub fn poly_value_abs(p: &XPoly, beta: &AlgebraicNumber) -> Result<AbsValue> {
    if divides_over_fraction_field(beta.minpoly(), p) {
        return Err(Error::pre(format!("P(β) = 0 for P = {p}, β = {beta}")));
    }
    let mut k = BASE_PREC;
    loop {
        let v = p.eval_series(&beta.series(k)?);
        if let Ok(a) = v.abs() {
            return Ok(a);
        }
        k = next_prec(k)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    fn poly(f: &Fq, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn irreducibility_of_quadratics() {
        let f3 = Fq::prime(3).unwrap();
        let t = Poly::t(&f3);
        assert!(is_irreducible_quadratic(&XPoly::quadratic(&Poly::one(&f3), &t, &poly(&f3, "2"))).unwrap());
        // (X - T)(X + T)
        assert!(!is_irreducible_quadratic(&XPoly::quadratic(&Poly::one(&f3), &Poly::zero(&f3), &poly(&f3, "-T^2"))).unwrap());
        let f2 = Fq::prime(2).unwrap();
        // (X + T)(X + 1) = X^2 + (T+1)X + T
        let red = XPoly::quadratic(&Poly::one(&f2), &poly(&f2, "T+1"), &Poly::t(&f2));
        assert!(!is_irreducible_quadratic(&red).unwrap());
        // (TX + 1)(X + T + 1) = TX^2 + (T^2+T+1)X + T + 1
        let red = XPoly::quadratic(&Poly::t(&f2), &poly(&f2, "T^2+T+1"), &poly(&f2, "T+1"));
        assert!(!is_irreducible_quadratic(&red).unwrap());
        let irr = XPoly::quadratic(&Poly::one(&f2), &Poly::t(&f2), &Poly::one(&f2));
        assert!(is_irreducible_quadratic(&irr).unwrap());
        let insep = XPoly::quadratic(&Poly::one(&f2), &Poly::zero(&f2), &Poly::t(&f2));
        assert!(is_irreducible_quadratic(&insep).unwrap());
    }

    #[test]
    fn multiplicity_and_divisibility() {
        let f3 = Fq::prime(3).unwrap();
        let m = XPoly::linear(&Poly::one(&f3), &poly(&f3, "-T"));
        let sq = m.mul(&m);
        assert_eq!(root_multiplicity(&m, &sq), 2);
        assert_eq!(root_multiplicity(&m, &XPoly::linear(&Poly::one(&f3), &Poly::t(&f3))), 0);
        // T X - T^2 vanishes at T over F_3(T)
        let p = XPoly::linear(&Poly::t(&f3), &poly(&f3, "-T^2"));
        assert!(divides_over_fraction_field(&m, &p));
    }

    #[test]
    fn roots_of_reducible_quadratics() {
        let f3 = Fq::prime(3).unwrap();
        let m = XPoly::linear(&Poly::one(&f3), &poly(&f3, "-T"));
        let r = roots_with_multiplicity(&m.mul(&m)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].1, 2);
        assert_eq!(r[0].0.minpoly(), &m);
        let f2 = Fq::prime(2).unwrap();
        let red = XPoly::quadratic(&Poly::t(&f2), &poly(&f2, "T^2+T+1"), &poly(&f2, "T+1"));
        let r = roots_with_multiplicity(&red).unwrap();
        let mut got: Vec<XPoly> = r.iter().map(|(a, _)| a.minpoly().clone()).collect();
        got.sort_by_key(|p| p.to_string());
        let mut want = vec![
            XPoly::linear(&Poly::t(&f2), &Poly::one(&f2)),
            XPoly::linear(&Poly::one(&f2), &poly(&f2, "T+1")),
        ];
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn numbers_from_cf_and_distance() {
        let f3 = Fq::prime(3).unwrap();
        let t = Poly::t(&f3);
        let cf = ContinuedFraction::eventually_periodic(Poly::zero(&f3), vec![], vec![t.clone()]).unwrap();
        let a = AlgebraicNumber::from_cf(&cf).unwrap();
        assert_eq!(a.abs().unwrap(), AbsValue::Pow(-1));
        let b = AlgebraicNumber::rational(&t, &Poly::one(&f3)).unwrap();
        assert_eq!(distance(&a, &b).unwrap(), AbsValue::Pow(1));
        let conj = AlgebraicNumber::new(a.minpoly().clone(), 1 - a.branch()).unwrap();
        // |ξ − ξ'| = |T|
        assert_eq!(distance(&a, &conj).unwrap(), AbsValue::Pow(1));
        assert!(poly_value_abs(a.minpoly(), &a).is_err());
        // Tξ − 1 = −ξ^2
        assert_eq!(poly_value_abs(&XPoly::linear(&t, &Poly::one(&f3).neg()), &a).unwrap(), AbsValue::Pow(-2));
    }
}
