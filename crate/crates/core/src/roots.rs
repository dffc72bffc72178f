//! Roots of quadratics `AX^2 + BX + C` in F_q((T^{-1})).

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::LaurentSeries;

/// All roots of `AX^2 + BX + C` lying in F_q((T^{-1})), each to precision
/// `k` (exact where the root is a polynomial in `T^{±1}`).
///
/// Order is deterministic: in odd characteristic `(−B + s)/2A` comes first,
/// `s` being the canonical square root of the discriminant; in
/// characteristic 2 the Artin–Schreier branch `Σ E^{2^i}` comes first.
/// A double root is listed once.
pub fn quadratic_roots(a: &Poly, b: &Poly, c: &Poly, k: i64) -> Result<Vec<LaurentSeries>> {
    if a.is_zero() {
        return Err(Error::pre("leading coefficient A must be nonzero"));
    }
    let f = a.field();
    if !f.is_char2() {
        let four = f.from_int(4);
        let disc = b.mul(b).sub(&a.mul(c).scale(four));
        let two_a = a.scale(f.from_int(2));
        let nb = b.neg();
        if disc.is_zero() {
            return Ok(vec![LaurentSeries::from_rational(&nb, &two_a, k)?]);
        }
        if let Some(r) = disc.sqrt() {
            // rational roots; r has the canonical leading coefficient
            return Ok(vec![
                LaurentSeries::from_rational(&nb.add(&r), &two_a, k)?,
                LaurentSeries::from_rational(&nb.sub(&r), &two_a, k)?,
            ]);
        }
        let d = disc.deg() as i64;
        if d % 2 == 1 || f.sqrt(disc.lead()).is_none() {
            return Ok(Vec::new());
        }
        // s/(2A) must be known below k: s needs frontier k − deg A
        let ks = k - a.deg() as i64;
        let rel = (ks + d / 2).max(1);
        let s = LaurentSeries::from_poly(&disc).truncate_rel(rel).sqrt()?;
        let nbs = LaurentSeries::from_poly(&nb);
        let r1 = nbs.add(&s).div_poly(&two_a)?.truncate(k);
        let r2 = nbs.sub(&s).div_poly(&two_a)?.truncate(k);
        return Ok(vec![r1, r2]);
    }

    if b.is_zero() {
        // X^2 = C/A, i.e. (AX)^2 = AC: solvable iff AC is a square polynomial
        let ac = a.mul(c);
        return Ok(match ac.sqrt() {
            Some(r) => vec![LaurentSeries::from_rational(&r, a, k)?],
            None => Vec::new(),
        });
    }

    // X = (B/A) Y turns the equation into Y^2 + Y = E with E = AC/B^2
    let b2 = b.mul(b);
    let (mut pp, rem) = a.mul(c).divmod(&b2)?;
    let mut g = Poly::zero(f);
    while let Some(deg) = pp.degree().filter(|&d| d > 0) {
        if deg % 2 == 1 {
            return Ok(Vec::new());
        }
        let sc = f.sqrt(pp.lead()).expect("characteristic 2");
        let h = Poly::monomial(f, sc, deg / 2);
        pp = pp.sub(&h.mul(&h)).sub(&h);
        g = g.add(&h);
    }
    let Some(y0) = f.artin_schreier_root(pp.coeff(0)) else {
        return Ok(Vec::new());
    };
    g = g.add(&Poly::constant(f, y0));

    let ky = k + b.deg() as i64 - a.deg() as i64;
    let e = LaurentSeries::from_rational(&rem, &b2, ky)?.truncate(ky);
    let y = LaurentSeries::from_poly(&g).add(&e.artin_schreier_solve()?);
    let x1 = y.mul_poly(b).div_poly(a)?.truncate(k);
    let shift = LaurentSeries::from_rational(b, a, k)?;
    let x2 = x1.add(&shift).truncate(k);
    Ok(vec![x1, x2])
}

/// Evaluates `AX^2 + BX + C` at a series.
pub fn eval_quadratic(a: &Poly, b: &Poly, c: &Poly, x: &LaurentSeries) -> LaurentSeries {
    let xa = x.mul_poly(a);
    xa.add(&LaurentSeries::from_poly(b)).mul(x).add(&LaurentSeries::from_poly(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    fn poly(f: &Fq, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn rational_roots_odd_char() {
        let f = Fq::prime(3).unwrap();
        let roots = quadratic_roots(&Poly::one(&f), &Poly::zero(&f), &poly(&f, "-T^2"), 6).unwrap();
        assert_eq!(roots.len(), 2);
        let t = LaurentSeries::from_poly(&Poly::t(&f));
        assert!(roots.contains(&t));
        assert!(roots.contains(&t.neg()));
    }

    #[test]
    fn irrational_roots_odd_char() {
        let f = Fq::prime(3).unwrap();
        let (a, b, c) = (Poly::one(&f), Poly::t(&f), poly(&f, "-1"));
        let roots = quadratic_roots(&a, &b, &c, 6).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|r| r.ord() == Some(1)));
        for r in &roots {
            assert!(r.prec().unwrap() >= 6);
            assert!(eval_quadratic(&a, &b, &c, r).is_zero_to_prec());
        }
    }

    #[test]
    fn artin_schreier_path() {
        let f = Fq::prime(2).unwrap();
        let (a, b, c) = (Poly::one(&f), Poly::t(&f), Poly::one(&f));
        let roots = quadratic_roots(&a, &b, &c, 6).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|r| r.ord() == Some(1)));
        for r in &roots {
            assert_eq!(r.prec(), Some(6));
            assert!(eval_quadratic(&a, &b, &c, r).is_zero_to_prec());
        }
    }

    #[test]
    fn char2_polynomial_part_reduction() {
        let f = Fq::prime(2).unwrap();
        // X^2 + X + T^2 + T has roots T and T + 1
        let (a, b, c) = (Poly::one(&f), Poly::one(&f), poly(&f, "T^2+T"));
        let roots = quadratic_roots(&a, &b, &c, 8).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(eval_quadratic(&a, &b, &c, r).is_zero_to_prec());
        }
        // X^2 + X + T has no root: odd positive degree
        assert!(quadratic_roots(&a, &b, &Poly::t(&f), 8).unwrap().is_empty());
        // X^2 + X + 1 has no root over F_2
        assert!(quadratic_roots(&a, &b, &Poly::one(&f), 8).unwrap().is_empty());
    }

    #[test]
    fn inseparable_char2() {
        let f = Fq::prime(2).unwrap();
        let a = Poly::one(&f);
        let r = quadratic_roots(&a, &Poly::zero(&f), &poly(&f, "T^2+1"), 5).unwrap();
        assert_eq!(r, vec![LaurentSeries::from_poly(&poly(&f, "T+1"))]);
        assert!(quadratic_roots(&a, &Poly::zero(&f), &Poly::t(&f), 5).unwrap().is_empty());
    }

    #[test]
    fn no_roots_when_discriminant_is_not_a_square() {
        let f = Fq::prime(3).unwrap();
        // disc = -4 = 2, not a square mod 3
        let r = quadratic_roots(&Poly::one(&f), &Poly::zero(&f), &Poly::one(&f), 5).unwrap();
        assert!(r.is_empty());
        // disc of odd degree
        let r = quadratic_roots(&Poly::one(&f), &Poly::zero(&f), &Poly::t(&f), 5).unwrap();
        assert!(r.is_empty());
    }
}
