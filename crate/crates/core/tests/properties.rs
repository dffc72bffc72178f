use ffd::cf::cf_expand_rational;
use ffd::xpoly::resultant;
use ffd::{FieldSpec, Fq, LaurentSeries, Poly, XPoly};
use proptest::prelude::*;

fn field(p: u32) -> Fq {
    Fq::prime(p).unwrap()
}

/// A field (F_2, F_3, F_4 or F_5) together with coefficient indices.
fn fields() -> impl Strategy<Value = Fq> {
    prop_oneof![
        Just(field(2)),
        Just(field(3)),
        Just(field(5)),
        Just(Fq::new(FieldSpec::extension(2, vec![1, 1, 1])).unwrap()),
    ]
}

fn poly(f: &Fq, idx: &[usize]) -> Poly {
    let q = f.q();
    Poly::from_indices(f, &idx.iter().map(|i| i % q).collect::<Vec<_>>()).unwrap()
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..25, 0..=max_len)
}

fn nonzero(f: &Fq, idx: &[usize]) -> Poly {
    let p = poly(f, idx);
    if p.is_zero() {
        Poly::one(f)
    } else {
        p
    }
}

fn xpoly(f: &Fq, cs: &[Vec<usize>]) -> XPoly {
    XPoly::new(f, cs.iter().map(|c| poly(f, c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_with_remainder(f in fields(), a in coeffs(8), b in coeffs(5)) {
        let (a, b) = (poly(&f, &a), nonzero(&f, &b));
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn gcd_divides_and_absorbs_common_factor(f in fields(), a in coeffs(5), b in coeffs(5), c in coeffs(3)) {
        let (a, b, c) = (nonzero(&f, &a), nonzero(&f, &b), nonzero(&f, &c));
        let g = a.mul(&c).gcd(&b.mul(&c)).unwrap();
        prop_assert!(g.divides(&a.mul(&c)) && g.divides(&b.mul(&c)));
        prop_assert!(c.divides(&g));
        prop_assert!(g.is_monic());
    }

    #[test]
    fn height_is_multiplicative(f in fields(), p in prop::collection::vec(coeffs(3), 1..4), q in prop::collection::vec(coeffs(3), 1..4)) {
        let (p, q) = (xpoly(&f, &p), xpoly(&f, &q));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let hp = p.height_exp().unwrap();
        let hq = q.height_exp().unwrap();
        prop_assert_eq!(p.mul(&q).height_exp().unwrap(), hp + hq);
    }

    #[test]
    fn resultant_is_multiplicative(f in fields(), p1 in prop::collection::vec(coeffs(2), 2..4), p2 in prop::collection::vec(coeffs(2), 2..3), q in prop::collection::vec(coeffs(2), 2..4)) {
        let (p1, p2, q) = (xpoly(&f, &p1), xpoly(&f, &p2), xpoly(&f, &q));
        prop_assume!(p1.deg_x() >= Some(1) && p2.deg_x() >= Some(1) && q.deg_x() >= Some(1));
        let lhs = resultant(&p1.mul(&p2), &q).unwrap();
        let rhs = resultant(&p1, &q).unwrap().mul(&resultant(&p2, &q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn common_factor_kills_resultant(f in fields(), l in prop::collection::vec(coeffs(2), 2..3), a in prop::collection::vec(coeffs(2), 1..3), b in prop::collection::vec(coeffs(2), 1..3)) {
        let (l, a, b) = (xpoly(&f, &l), xpoly(&f, &a), xpoly(&f, &b));
        prop_assume!(l.deg_x() == Some(1) && !a.is_zero() && !b.is_zero());
        prop_assert!(resultant(&l.mul(&a), &l.mul(&b)).unwrap().is_zero());
    }

    #[test]
    fn rational_series_times_denominator(f in fields(), a in coeffs(6), b in coeffs(5), k in 5i64..40) {
        let (a, b) = (poly(&f, &a), nonzero(&f, &b));
        let s = LaurentSeries::from_rational(&a, &b, k).unwrap();
        let back = s.mul_poly(&b).sub(&LaurentSeries::from_poly(&a));
        prop_assert!(back.is_zero_to_prec());
    }

    #[test]
    fn square_root_squares_back(p in prop::sample::select(vec![3u32, 5, 7]), a in coeffs(6), k in 10i64..40) {
        let f = field(p);
        let a = nonzero(&f, &a);
        // an even-degree square in F_p[T] always has a series square root
        let x = LaurentSeries::from_poly(&a.mul(&a).add(&Poly::one(&f))).truncate(k);
        if let Ok(r) = x.sqrt() {
            prop_assert!(r.mul(&r).sub(&x).is_zero_to_prec());
        }
        let sq = LaurentSeries::from_poly(&a.mul(&a)).truncate(k);
        let r = sq.sqrt().unwrap();
        prop_assert!(r.mul(&r).sub(&sq).is_zero_to_prec());
    }

    #[test]
    fn rational_expansion_round_trip(f in fields(), a in coeffs(8), b in coeffs(6)) {
        let (a, b) = (poly(&f, &a), nonzero(&f, &b));
        let cf = cf_expand_rational(&a, &b).unwrap();
        let n = cf.quotients().len();
        let last = cf.convergent(n).unwrap();
        // p/q = a/b in lowest terms
        prop_assert_eq!(last.p.mul(&b), last.q.mul(&a));
        prop_assert!(cf.quotients().iter().all(|x| x.deg() >= 1));
        prop_assert!(last.p.gcd(&last.q).unwrap().is_one());
    }
}
