//! Polynomials in `X` with coefficients in F_q[T].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{AbsValue, Poly};
use crate::series::LaurentSeries;

/// `Σ c_i X^i`, coefficients ascending in `X`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    field: Fq,
    coeffs: Vec<Poly>,
}

impl XPoly {
    pub fn new(field: &Fq, mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { field: field.clone(), coeffs }
    }

    /// `aX^2 + bX + c`.
    pub fn quadratic(a: &Poly, b: &Poly, c: &Poly) -> Self {
        XPoly::new(a.field(), vec![c.clone(), b.clone(), a.clone()])
    }

    /// `aX + b`.
    pub fn linear(a: &Poly, b: &Poly) -> Self {
        XPoly::new(a.field(), vec![b.clone(), a.clone()])
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    /// `H(P)`: the largest absolute value among the coefficients.
    pub fn height(&self) -> Result<AbsValue> {
        if self.is_zero() {
            return Err(Error::pre("height of the zero polynomial"));
        }
        Ok(self.coeffs.iter().map(|c| c.abs()).max().expect("nonempty"))
    }

    /// Height exponent `h` with `H(P) = q^h`.
    pub fn height_exp(&self) -> Result<i64> {
        Ok(self.height()?.exponent().expect("nonzero polynomial has a nonzero coefficient"))
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::new(&self.field, Vec::new());
        }
        let mut v = vec![Poly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        XPoly::new(&self.field, v)
    }

    pub fn scale(&self, c: &Poly) -> XPoly {
        XPoly::new(&self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn derivative(&self) -> XPoly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(f.from_int(i as i64)))
            .collect();
        XPoly::new(f, v)
    }

    /// `P(x)` by Horner's rule; precision follows the series rules.
    pub fn eval_series(&self, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&LaurentSeries::from_poly(c));
        }
        acc
    }

    /// Numerator of `P(p/q)` over the denominator `q^{deg P}`.
    pub fn eval_homogeneous(&self, p: &Poly, q: &Poly) -> Poly {
        let d = self.coeffs.len().saturating_sub(1);
        let mut acc = Poly::zero(&self.field);
        let mut pp = Poly::one(&self.field);
        let qpows: Vec<Poly> = (0..=d).scan(Poly::one(&self.field), |s, _| {
            let cur = s.clone();
            *s = s.mul(q);
            Some(cur)
        }).collect();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&pp).mul(&qpows[d - i]));
            pp = pp.mul(p);
        }
        acc
    }

    /// Monic gcd of the coefficients.
    pub fn content(&self) -> Result<Poly> {
        let mut g = Poly::zero(&self.field);
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c)?;
            }
        }
        if g.is_zero() {
            return Err(Error::pre("content of the zero polynomial"));
        }
        Ok(g)
    }

    /// Divides out the content and makes the leading coefficient monic in T.
    pub fn min_form(&self) -> Result<XPoly> {
        let g = self.content()?;
        let v: Vec<Poly> = self.coeffs.iter().map(|c| c.div_exact(&g)).collect::<Result<_>>()?;
        let lead_inv = self.field.inv(v.last().expect("nonzero").lead()).expect("nonzero");
        Ok(XPoly::new(&self.field, v.iter().map(|c| c.scale(lead_inv)).collect()))
    }

    /// Primitive with monic leading coefficient (irreducibility not checked).
    pub fn is_min_form(&self) -> bool {
        !self.is_zero()
            && self.deg_x() != Some(0)
            && self.lead().is_monic()
            && self.content().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Largest `p^e` such that `P` is a polynomial in `X^{p^e}`.
    pub fn insep_degree(&self) -> u64 {
        let p = self.field.p() as u64;
        let d = self.coeffs.len().saturating_sub(1) as u64;
        if d == 0 {
            return 1;
        }
        let mut f = 1u64;
        while f * p <= d
            && self.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || (i as u64).is_multiple_of(f * p))
        {
            f *= p;
        }
        f
    }

    /// `B^2 − 4AC` for quadratics, otherwise `(−1)^{n(n−1)/2} Res(P, P')/a_n`.
    pub fn discriminant(&self) -> Result<Poly> {
        let f = &self.field;
        match self.deg_x() {
            None | Some(0) => Err(Error::pre("discriminant needs degree >= 1")),
            Some(1) => Ok(Poly::one(f)),
            Some(2) => {
                let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
                Ok(b.mul(b).sub(&a.mul(c).scale(f.from_int(4))))
            }
            Some(n) => {
                let r = resultant(self, &self.derivative())?;
                let r = r.div_exact(&self.lead())?;
                Ok(if (n * (n - 1) / 2) % 2 == 1 { r.neg() } else { r })
            }
        }
    }
}

/// Determinant of the Sylvester matrix of `P` and `Q` over F_q[T], by
/// fraction-free (Bareiss) elimination.
pub fn resultant(p: &XPoly, q: &XPoly) -> Result<Poly> {
    let f = p.field();
    let (Some(m), Some(n)) = (p.deg_x(), q.deg_x()) else {
        return Err(Error::pre("resultant of a zero polynomial"));
    };
    let size = m + n;
    if size == 0 {
        return Ok(Poly::one(f));
    }
    let zero = Poly::zero(f);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Determinant of a square matrix over F_q[T].
pub fn bareiss_det(mut mat: Vec<Vec<Poly>>) -> Result<Poly> {
    let size = mat.len();
    let f = mat[0][0].field().clone();
    let mut negate = false;
    let mut prev = Poly::one(&f);
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(sw) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return Ok(Poly::zero(&f));
            };
            mat.swap(k, sw);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = v.div_exact(&prev)?;
            }
            mat[i][k] = Poly::zero(&f);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                format!("({c})")
            } else if c.is_one() && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}X"),
                _ => format!("{cs}X^{i}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

impl Serialize for XPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Fq, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn height_examples() {
        let f = Fq::prime(3).unwrap();
        let p = XPoly::quadratic(&poly(&f, "T^2"), &poly(&f, "T+1"), &poly(&f, "2"));
        assert_eq!(p.height().unwrap(), AbsValue::Pow(2));
        let l = XPoly::linear(&Poly::one(&f), &poly(&f, "-T"));
        assert_eq!(l.height().unwrap(), AbsValue::Pow(1));
        assert!(XPoly::new(&f, vec![]).height().is_err());
    }

    #[test]
    fn insep_degree_examples() {
        let f = Fq::prime(2).unwrap();
        assert_eq!(XPoly::quadratic(&Poly::one(&f), &Poly::t(&f), &Poly::one(&f)).insep_degree(), 1);
        assert_eq!(XPoly::quadratic(&Poly::one(&f), &Poly::zero(&f), &Poly::t(&f)).insep_degree(), 2);
        assert_eq!(XPoly::linear(&Poly::one(&f), &Poly::t(&f)).insep_degree(), 1);
    }

    #[test]
    fn resultant_and_discriminant_examples() {
        let f = Fq::prime(3).unwrap();
        let p = XPoly::linear(&Poly::t(&f), &Poly::one(&f));
        let q = XPoly::linear(&Poly::one(&f), &Poly::t(&f));
        assert_eq!(resultant(&p, &q).unwrap(), poly(&f, "T^2-1"));
        let m = XPoly::quadratic(&Poly::one(&f), &Poly::t(&f), &Poly::one(&f));
        assert_eq!(m.discriminant().unwrap(), poly(&f, "T^2+2"));
        assert!(resultant(&m, &m).unwrap().is_zero());
    }

    #[test]
    fn general_discriminant_matches_quadratic_formula() {
        let f = Fq::prime(5).unwrap();
        let m = XPoly::quadratic(&poly(&f, "T+2"), &poly(&f, "T^2"), &poly(&f, "3T+1"));
        let via_res = {
            let r = resultant(&m, &m.derivative()).unwrap().div_exact(&m.lead()).unwrap();
            r.neg()
        };
        assert_eq!(via_res, m.discriminant().unwrap());
    }

    #[test]
    fn min_form_normalizes() {
        let f = Fq::prime(3).unwrap();
        let t1 = poly(&f, "T+1");
        let p = XPoly::quadratic(&t1.scale(f.from_int(2)), &t1.mul(&Poly::t(&f)), &t1);
        let m = p.min_form().unwrap();
        assert_eq!(m, XPoly::quadratic(&Poly::one(&f), &poly(&f, "2T"), &poly(&f, "2")));
        assert!(m.is_min_form());
    }
}
