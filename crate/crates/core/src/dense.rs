//! Fast evaluation of `P(ξ)` for many small `P` at one series `ξ`.
//!
//! The powers `ξ^0 … ξ^n` are laid out as flat coefficient windows, so the
//! leading term of `P(ξ) = Σ_i c_i(T) ξ^i` is found by scanning exponents
//! from the top without building any intermediate series.

use crate::field::{Fe, Fq};
use crate::series::LaurentSeries;
use crate::xpoly::XPoly;

/// Outcome of a leading-term search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leading {
    /// `P(ξ) = c T^{-n} + …` with `c ≠ 0`; `|P(ξ)| = q^{-n}`.
    Ord(i64),
    /// `P(ξ)` is exactly zero (possible only for exact `ξ`).
    Zero,
    /// Zero as far as the windows reach.
    Unknown,
}

#[derive(Debug, Clone)]
struct Window {
    lo: i64,
    /// Coefficients are known below this index (exclusive).
    known: i64,
    /// Exact series: everything from `win.len() + lo` on is zero.
    exact: bool,
    win: Vec<Fe>,
}

impl Window {
    fn new(s: &LaurentSeries) -> Self {
        let lo = s.lower_ord();
        let win = s.coeffs().to_vec();
        match s.prec() {
            Some(k) => Window { lo, known: k, exact: false, win },
            None => Window { lo, known: lo + win.len() as i64, exact: true, win },
        }
    }

    /// Coefficient of `T^{-n}`, `None` past the known range.
    #[inline]
    fn at(&self, n: i64) -> Option<Fe> {
        if n < self.lo {
            return Some(Fe::ZERO);
        }
        if n >= self.known {
            return if self.exact { Some(Fe::ZERO) } else { None };
        }
        Some(self.win.get((n - self.lo) as usize).copied().unwrap_or(Fe::ZERO))
    }
}

/// Sparse coefficient lists of a polynomial in `X`: entry `i` lists the
/// nonzero `(j, c)` with `c T^j` in the coefficient of `X^i`.
pub type SparseX = Vec<Vec<(usize, Fe)>>;

pub fn sparse(p: &XPoly) -> SparseX {
    p.coeffs()
        .iter()
        .map(|c| c.coeffs().iter().enumerate().filter(|(_, &x)| x != Fe::ZERO).map(|(j, &x)| (j, x)).collect())
        .collect()
}

/// Windows of `ξ^0, …, ξ^n`.
#[derive(Debug, Clone)]
pub struct PowerWindows {
    field: Fq,
    pows: Vec<Window>,
}

impl PowerWindows {
    pub fn new(x: &LaurentSeries, n: usize) -> Self {
        let mut pows = Vec::with_capacity(n + 1);
        let mut cur = LaurentSeries::one(x.field());
        for i in 0..=n {
            pows.push(Window::new(&cur));
            if i < n {
                cur = cur.mul(x);
            }
        }
        PowerWindows { field: x.field().clone(), pows }
    }

    /// Coefficient of `T^{-n}` in `ξ`.
    pub fn coeff(&self, n: i64) -> Option<Fe> {
        self.pows[1].at(n)
    }

    /// First index where `ξ` and `other` differ, i.e. `|ξ − other| = q^{-n}`.
    pub fn first_difference(&self, other: &PowerWindows) -> Leading {
        let (a, b) = (&self.pows[1], &other.pows[1]);
        let start = a.lo.min(b.lo);
        let end = match (a.exact, b.exact) {
            (true, true) => a.known.max(b.known),
            (true, false) => b.known,
            (false, true) => a.known,
            (false, false) => a.known.min(b.known),
        };
        for n in start..end {
            if a.at(n) != b.at(n) {
                return Leading::Ord(n);
            }
        }
        if a.exact && b.exact {
            Leading::Zero
        } else {
            Leading::Unknown
        }
    }

    /// Leading term of `P(ξ)` for `deg_X P <= n`.
    pub fn leading(&self, p: &SparseX) -> Leading {
        let f = &self.field;
        let mut start = i64::MAX;
        let mut end_exact = i64::MIN;
        let mut all_exact = true;
        for (i, terms) in p.iter().enumerate() {
            if let Some(&(j, _)) = terms.last() {
                let w = &self.pows[i];
                start = start.min(w.lo - j as i64);
                end_exact = end_exact.max(w.known);
                all_exact &= w.exact;
            }
        }
        if start == i64::MAX {
            return Leading::Zero;
        }
        let mut n = start;
        loop {
            if all_exact && n >= end_exact {
                return Leading::Zero;
            }
            let mut acc = Fe::ZERO;
            for (i, terms) in p.iter().enumerate() {
                let w = &self.pows[i];
                for &(j, c) in terms {
                    match w.at(n + j as i64) {
                        Some(x) => acc = f.add(acc, f.mul(c, x)),
                        None => return Leading::Unknown,
                    }
                }
            }
            if acc != Fe::ZERO {
                return Leading::Ord(n);
            }
            n += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn leading_term_matches_series_evaluation() {
        let f = Fq::prime(3).unwrap();
        let x = LaurentSeries::from_rational(&Poly::one(&f), &Poly::parse(&f, "T^2 + T + 2").unwrap(), 20).unwrap();
        let w = PowerWindows::new(&x, 2);
        for a in ["T", "1", "T^2+1", "0"] {
            for b in ["1", "T+2", "0"] {
                for c in ["1", "T^2", "2T"] {
                    let p = XPoly::new(
                        &f,
                        vec![Poly::parse(&f, c).unwrap(), Poly::parse(&f, b).unwrap(), Poly::parse(&f, a).unwrap()],
                    );
                    let direct = p.eval_series(&x);
                    match w.leading(&sparse(&p)) {
                        Leading::Ord(n) => assert_eq!(direct.ord(), Some(n), "{p}"),
                        Leading::Unknown => assert!(direct.is_zero_to_prec()),
                        Leading::Zero => panic!("inexact input"),
                    }
                }
            }
        }
    }

    #[test]
    fn exact_inputs_can_vanish() {
        let f = Fq::prime(3).unwrap();
        let x = LaurentSeries::from_poly(&Poly::t(&f));
        let w = PowerWindows::new(&x, 2);
        // X^2 − T^2
        let p = XPoly::new(&f, vec![Poly::parse(&f, "-T^2").unwrap(), Poly::zero(&f), Poly::one(&f)]);
        assert_eq!(w.leading(&sparse(&p)), Leading::Zero);
        let p = XPoly::new(&f, vec![Poly::parse(&f, "-T^2+1").unwrap(), Poly::zero(&f), Poly::one(&f)]);
        assert_eq!(w.leading(&sparse(&p)), Leading::Ord(0));
        let y = PowerWindows::new(&LaurentSeries::from_poly(&Poly::parse(&f, "T+1").unwrap()), 1);
        assert_eq!(w.first_difference(&y), Leading::Ord(0));
        assert_eq!(w.first_difference(&w), Leading::Zero);
    }
}
