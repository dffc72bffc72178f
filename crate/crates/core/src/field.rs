//! Finite fields F_q with q = p^e.
//!
//! Elements are stored as indices `Σ c_i p^i` of their coordinate vector with
//! respect to the caller-supplied modulus. All operations go through
//! precomputed tables, so `Fq` is cheap to clone and share across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order supported by the table representation.
pub const MAX_Q: usize = 1024;

/// Serializable description of F_q: `{p, e, modulus}` with the modulus given
/// by its F_p coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// Prime field F_p.
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, modulus: vec![0, 1] }
    }

    pub fn extension(p: u32, modulus: Vec<u32>) -> Self {
        let e = modulus.len().saturating_sub(1) as u32;
        FieldSpec { p, e, modulus }
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

/// An element of F_q, identified by its index in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub(crate) u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    spec: FieldSpec,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    sqrt: Vec<Option<u16>>,
}

/// Handle on a finite field; clones share the same tables.
#[derive(Clone)]
pub struct Fq(Arc<Tables>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.spec.hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo monic `m` over F_p, dense ascending vectors.
fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible_fp(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d <= 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=d/2
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut t = idx;
            for _ in 0..k {
                f.push((t % p as u64) as u32);
                t /= p as u64;
            }
            f.push(1);
            if fp_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// Builds the field, validating primality of `p` and irreducibility of
    /// the modulus.
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let p = spec.p;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if spec.e == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let q = spec.order();
        if q as usize > MAX_Q {
            return Err(Error::InvalidField(format!("q = {q} exceeds supported maximum {MAX_Q}")));
        }
        let q = q as usize;
        let e = spec.e as usize;
        let mut modulus: Vec<u32> = if e == 1 {
            vec![0, 1]
        } else {
            spec.modulus.iter().map(|&c| c % p).collect()
        };
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() != e + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have degree {e}, got {}",
                modulus.len() as i64 - 1
            )));
        }
        // normalize to monic
        let lead = *modulus.last().unwrap();
        let lead_inv = (1..p).find(|&x| (x as u64 * lead as u64) % p as u64 == 1).unwrap();
        for c in modulus.iter_mut() {
            *c = (*c as u64 * lead_inv as u64 % p as u64) as u32;
        }
        if !is_irreducible_fp(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }

        let coords = |idx: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(e);
            let mut t = idx;
            for _ in 0..e {
                v.push((t % p as usize) as u32);
                t /= p as usize;
            }
            v
        };
        let index = |v: &[u32]| -> u16 {
            let mut idx = 0usize;
            for &c in v.iter().rev() {
                idx = idx * p as usize + c as usize;
            }
            idx as u16
        };
        let all: Vec<Vec<u32>> = (0..q).map(coords).collect();

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&s);
                let mut prod = vec![0u32; 2 * e - 1];
                for (i, &x) in all[a].iter().enumerate() {
                    for (j, &y) in all[b].iter().enumerate() {
                        prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                    }
                }
                let mut r = if e == 1 { prod } else { fp_rem(&prod, &modulus, p) };
                r.resize(e, 0);
                mul[a * q + b] = index(&r);
            }
        }
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        let mut sqrt = vec![None; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16;
            }
        }
        for b in 0..q {
            let sq = mul[b * q + b] as usize;
            if sqrt[sq].is_none() {
                sqrt[sq] = Some(b as u16);
            }
        }
        Ok(Fq(Arc::new(Tables {
            spec: FieldSpec { p, e: spec.e, modulus: if e == 1 { vec![0, 1] } else { modulus } },
            q,
            add,
            mul,
            neg,
            inv,
            sqrt,
        })))
    }

    /// Prime field shortcut; panics only if `p` is not a supported prime.
    pub fn prime(p: u32) -> Result<Self> {
        Fq::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.0.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn is_char2(&self) -> bool {
        self.0.spec.p == 2
    }

    pub fn elem(&self, index: usize) -> Result<Fe> {
        if index < self.0.q {
            Ok(Fe(index as u16))
        } else {
            Err(Error::Parse(format!("field element index {index} out of range for q = {}", self.0.q)))
        }
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p() as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q as u16).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.0.add[a.index() * self.0.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.0.mul[a.index() * self.0.q + b.index()])
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            None
        } else {
            Some(Fe(self.0.inv[a.index()]))
        }
    }

    pub fn pow(&self, a: Fe, mut k: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Canonical square root: the least-index `b` with `b^2 = a`.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        self.0.sqrt[a.index()].map(Fe)
    }

    /// Least-index `y` with `y^2 + y = c` (characteristic 2 only).
    pub fn artin_schreier_root(&self, c: Fe) -> Option<Fe> {
        self.elements().find(|&y| self.add(self.mul(y, y), y) == c)
    }
}
