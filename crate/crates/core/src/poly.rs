//! Dense univariate polynomials over F_q and the absolute value on F_q(T).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Fe, Fq};

/// `|x| = q^ν` for nonzero x, or zero. `Zero` sorts below every power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbsValue {
    Zero,
    Pow(i64),
}

impl AbsValue {
    pub fn one() -> Self {
        AbsValue::Pow(0)
    }

    pub fn is_zero(self) -> bool {
        matches!(self, AbsValue::Zero)
    }

    /// The exponent ν, `None` for zero.
    pub fn exponent(self) -> Option<i64> {
        match self {
            AbsValue::Zero => None,
            AbsValue::Pow(v) => Some(v),
        }
    }

    pub fn mul(self, other: AbsValue) -> AbsValue {
        match (self, other) {
            (AbsValue::Pow(a), AbsValue::Pow(b)) => AbsValue::Pow(a + b),
            _ => AbsValue::Zero,
        }
    }

    pub fn inv(self) -> Result<AbsValue> {
        match self {
            AbsValue::Zero => Err(Error::DivisionByZero),
            AbsValue::Pow(a) => Ok(AbsValue::Pow(-a)),
        }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Zero => write!(f, "0"),
            AbsValue::Pow(v) => write!(f, "q^{v}"),
        }
    }
}

impl Serialize for AbsValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AbsValue::Zero => s.serialize_none(),
            AbsValue::Pow(v) => s.serialize_i64(*v),
        }
    }
}

/// Element of F_q[T]; coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Fq,
    coeffs: Vec<Fe>,
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Poly {
    pub fn new(field: &Fq, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_indices(field: &Fq, idx: &[usize]) -> Result<Self> {
        let coeffs = idx.iter().map(|&i| field.elem(i)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// Polynomial with integer coefficients reduced mod p.
    pub fn from_ints(field: &Fq, ints: &[i64]) -> Self {
        Poly::new(field, ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn zero(field: &Fq) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Fq) -> Self {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Fq, c: Fe) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c T^k`.
    pub fn monomial(field: &Fq, c: Fe, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        Poly { field: field.clone(), coeffs }
    }

    /// The indeterminate `T`.
    pub fn t(field: &Fq) -> Self {
        Poly::monomial(field, Fe::ONE, 1)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn indices(&self) -> Vec<usize> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    /// Degree, `None` standing for −∞ on the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero; 0 for zero as well, so
    /// callers must rule zero out themselves.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn abs(&self) -> AbsValue {
        match self.degree() {
            None => AbsValue::Zero,
            Some(d) => AbsValue::Pow(d as i64),
        }
    }

    fn check(&self, other: &Poly) {
        debug_assert!(self.field == other.field, "field mismatch");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, v)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q·b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = b.deg();
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(b.lead()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![Fe::ZERO; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv_lead);
            q[k] = t;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(t, bj));
            }
        }
        r.truncate(db);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact quotient; errors when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; errors when both inputs vanish.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::pre("gcd of two zero polynomials"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f, v)
    }

    /// Square root in F_q[T] if `self` is a perfect square.
    ///
    /// In characteristic 2 this is the inverse Frobenius; otherwise the root
    /// is computed from the top down and verified by squaring. The root with
    /// canonical (least index) leading coefficient is returned.
    pub fn sqrt(&self) -> Option<Poly> {
        let f = &self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.deg();
        if d % 2 == 1 {
            return None;
        }
        if f.is_char2() {
            let mut v = Vec::with_capacity(d / 2 + 1);
            for (i, &c) in self.coeffs.iter().enumerate() {
                if i % 2 == 1 {
                    if !c.is_zero() {
                        return None;
                    }
                } else {
                    v.push(f.sqrt(c)?);
                }
            }
            return Some(Poly::new(f, v));
        }
        // r = Σ r_k T^k with deg r = m; match coefficients of r^2 from the top
        let m = d / 2;
        let lead = f.sqrt(self.lead())?;
        let two_lead_inv = f.inv(f.add(lead, lead))?;
        let mut r = vec![Fe::ZERO; m + 1];
        r[m] = lead;
        for k in (0..m).rev() {
            // coefficient of T^{m+k} in r^2 involves 2 r_m r_k + Σ_{i+j=m+k, k<i,j<m} r_i r_j
            let mut s = Fe::ZERO;
            for i in (k + 1)..m {
                let j = m + k - i;
                if j > k && j < m {
                    s = f.add(s, f.mul(r[i], r[j]));
                }
            }
            r[k] = f.mul(f.sub(self.coeff(m + k), s), two_lead_inv);
        }
        let r = Poly::new(f, r);
        if &r.mul(&r) == self {
            Some(r)
        } else {
            None
        }
    }

    /// Parses a polynomial literal; see [`parse_poly`].
    pub fn parse(field: &Fq, s: &str) -> Result<Poly> {
        parse_poly(field, s)
    }
}

/// `|f/g| = q^{deg f − deg g}`.
pub fn abs_value_rational(f: &Poly, g: &Poly) -> Result<AbsValue> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(match f.degree() {
        None => AbsValue::Zero,
        Some(d) => AbsValue::Pow(d as i64 - g.deg() as i64),
    })
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                Poly::$m(self, rhs)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn fmt_coeff(field: &Fq, c: Fe) -> String {
    if c.index() < field.p() as usize {
        c.index().to_string()
    } else {
        format!("[{}]", c.index())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if c == Fe::ONE && i > 0 { String::new() } else { fmt_coeff(&self.field, c) };
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}T")?,
                _ => write!(f, "{cs}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.index()))
    }
}

/// Parses polynomial literals over `T`.
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor (['*'] factor)*
/// factor := atom ['^' uint]
/// atom   := uint | '[' uint ']' | 'T' | '(' expr ')'
/// ```
///
/// Integers are reduced mod p; `[i]` is the F_q element with index `i`.
/// Juxtaposition multiplies, so `2T^2 + T - 1` and `(T+1)(T-1)` both parse.
pub fn parse_poly(field: &Fq, s: &str) -> Result<Poly> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { field, s: &chars, pos: 0 };
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial literal".into()));
    }
    let v = p.expr()?;
    if p.pos != chars.len() {
        return Err(Error::Parse(format!("unexpected '{}' at offset {}", chars[p.pos], p.pos)));
    }
    Ok(v)
}

struct Parser<'a> {
    field: &'a Fq,
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at offset {start}")));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse::<u64>().map_err(|e| Error::Parse(format!("{text}: {e}")))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c.is_ascii_digit() || c == '[' || c == 'T' || c == '(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('T') | Some('t') => {
                self.pos += 1;
                Ok(Poly::t(self.field))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('[') => {
                self.pos += 1;
                let i = self.uint()?;
                if self.peek() != Some(']') {
                    return Err(Error::Parse(format!("expected ']' at offset {}", self.pos)));
                }
                self.pos += 1;
                let e = self.field.elem(i as usize)?;
                Ok(Poly::constant(self.field, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let p = self.field.p() as u64;
                Ok(Poly::constant(self.field, self.field.from_int((n % p) as i64)))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}' at offset {}", self.pos))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}
