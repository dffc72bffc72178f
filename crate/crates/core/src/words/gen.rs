//! Sequence constructions: the lacunary words, automatic and morphic
//! sequences, and Sturmian words.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};

fn big(r: &Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn floor_usize(r: &BigRational) -> Option<usize> {
    r.floor().to_integer().to_usize()
}

fn distinct(names: &[&str]) -> Result<()> {
    let set: HashSet<_> = names.iter().collect();
    if set.len() != names.len() {
        return Err(Error::pre("symbols must be distinct"));
    }
    Ok(())
}

/// Whether `w` clears the lower bound for the lacunary construction:
/// `w^2 − 5w + 2 > 0, w > 5/2` in odd characteristic, `w^2 − 9w + 4 > 0,
/// w > 9/2` in characteristic 2.
pub fn main4_threshold_ok(w: &Ratio<i64>, characteristic: u32) -> bool {
    let w = big(w);
    let (a, b, mid) = if characteristic == 2 { (9, 4, Ratio::new(9, 2)) } else { (5, 2, Ratio::new(5, 2)) };
    let val = &w * &w - &w * BigRational::from_integer(a.into()) + BigRational::from_integer(b.into());
    val.is_positive() && w > big(&mid)
}

/// Positions `⌊w^i⌋ <= n`, `i >= 0`, increasing (`w > 1`).
fn power_floors(w: &BigRational, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = BigRational::one();
    loop {
        match floor_usize(&p) {
            Some(f) if f <= n => out.push(f),
            _ => break,
        }
        p *= w;
    }
    out
}

/// `a_1 … a_N` with `a_n = c` when `n = ⌊w^i⌋` for some `i >= 0`, else `b`.
pub fn gen_main4(w: &Ratio<i64>, characteristic: u32, b: &str, c: &str, n: usize) -> Result<Word> {
    distinct(&[b, c])?;
    if !main4_threshold_ok(w, characteristic) {
        return Err(Error::pre(format!("w = {w} is below the threshold for characteristic {characteristic}")));
    }
    gen_main4_unchecked(w, b, c, n)
}

/// The same word for any `w > 1`, without the threshold that the
/// approximation results need.
pub fn gen_main4_unchecked(w: &Ratio<i64>, b: &str, c: &str, n: usize) -> Result<Word> {
    distinct(&[b, c])?;
    if *w <= Ratio::from_integer(1) {
        return Err(Error::pre("w must exceed 1"));
    }
    let mut sym = vec![0u32; n];
    for f in power_floors(&big(w), n) {
        sym[f - 1] = 1;
    }
    Word::new(sym, vec![b.to_string(), c.to_string()], 1)
}

/// `m_i = ⌊(⌊w^{i+1}⌋ − ⌊w^i − 1⌋) / ⌊ηw^i⌋⌋`, or 0 when `⌊ηw^i⌋ = 0`.
pub fn main5_m(w: &Ratio<i64>, eta: &Ratio<i64>, i: u32) -> BigInt {
    let (w, eta) = (big(w), big(eta));
    let wi = num_traits::pow(w.clone(), i as usize);
    let step = (&eta * &wi).floor().to_integer();
    if step.is_zero() {
        return BigInt::zero();
    }
    let top = (&wi * &w).floor().to_integer() - (wi - BigRational::one()).floor().to_integer();
    top.div_floor(&step)
}

fn check_main5(w: &Ratio<i64>, eta: &Ratio<i64>) -> Result<()> {
    if *w < Ratio::from_integer(25) {
        return Err(Error::pre(format!("w = {w} must be at least 25")));
    }
    // 0 < η < √w / 4  ⇔  η > 0 and 16η² < w
    let (we, ee) = (big(w), big(eta));
    if !ee.is_positive() || BigRational::from_integer(16.into()) * &ee * &ee >= we {
        return Err(Error::pre(format!("eta = {eta} must lie in (0, sqrt(w)/4)")));
    }
    Ok(())
}

/// `a_1 … a_N`: `c` at `⌊w^i⌋` (`i >= 0`); otherwise `d` at
/// `⌊w^j⌋ + m⌊ηw^j⌋` with `j >= 1`, `1 <= m <= m_j`; otherwise `b`.
pub fn gen_main5(w: &Ratio<i64>, eta: &Ratio<i64>, b: &str, c: &str, d: &str, n: usize) -> Result<Word> {
    distinct(&[b, c, d])?;
    check_main5(w, eta)?;
    let (wb, eb) = (big(w), big(eta));
    let mut sym = vec![0u32; n];
    let mut wj = wb.clone();
    for j in 1u32.. {
        let base = match floor_usize(&wj) {
            Some(f) if f <= n => f,
            _ => break,
        };
        let step = (&eb * &wj).floor().to_integer();
        if let Some(step) = step.to_usize().filter(|&s| s > 0) {
            let m = main5_m(w, eta, j).to_usize().unwrap_or(usize::MAX);
            for k in 1..=m {
                let pos = base + k * step;
                if pos > n {
                    break;
                }
                sym[pos - 1] = 2;
            }
        }
        wj *= &wb;
    }
    for f in power_floors(&wb, n) {
        sym[f - 1] = 1;
    }
    Word::new(sym, vec![b.to_string(), c.to_string(), d.to_string()], 1)
}

/// A deterministic finite automaton with output, reading base-`k` digits
/// most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automaton {
    pub k: u32,
    /// `delta[q][digit]`.
    pub delta: Vec<Vec<usize>>,
    pub q0: usize,
    /// Output symbol id per state.
    pub output: Vec<u32>,
    pub alphabet: Vec<String>,
}

impl Automaton {
    pub fn validate(&self) -> Result<()> {
        let n = self.delta.len();
        if self.k < 2 {
            return Err(Error::pre("base must be at least 2"));
        }
        if n == 0 || self.q0 >= n || self.output.len() != n {
            return Err(Error::pre("automaton needs a start state and one output per state"));
        }
        for row in &self.delta {
            if row.len() != self.k as usize || row.iter().any(|&t| t >= n) {
                return Err(Error::pre("transition function must be total"));
            }
        }
        if self.output.iter().any(|&o| o as usize >= self.alphabet.len()) {
            return Err(Error::pre("output outside alphabet"));
        }
        Ok(())
    }

    pub fn thue_morse() -> Self {
        Automaton {
            k: 2,
            delta: vec![vec![0, 1], vec![1, 0]],
            q0: 0,
            output: vec![0, 1],
            alphabet: vec!["0".into(), "1".into()],
        }
    }

    /// `τ(δ(q0, W_n))`, `W_n` the base-`k` digits of `n` (empty for 0).
    pub fn eval(&self, n: u64) -> u32 {
        let k = self.k as u64;
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % k) as usize);
            m /= k;
        }
        let q = digits.iter().rev().fold(self.q0, |q, &d| self.delta[q][d]);
        self.output[q]
    }
}

/// `a_0 … a_{N−1}`.
pub fn automaton_run(a: &Automaton, n: usize) -> Result<Word> {
    a.validate()?;
    Word::new((0..n as u64).map(|i| a.eval(i)).collect(), a.alphabet.clone(), 0)
}

pub fn thue_morse(n: usize) -> Word {
    automaton_run(&Automaton::thue_morse(), n).expect("valid automaton")
}

/// Number of distinct subsequences `(a_{k^i n + j})_n`, `0 <= j < k^i`,
/// comparing only the first `depth` terms.
///
/// Breadth first from `(0, 0)`; only nodes whose sequence is new are
/// expanded, since equal sequences have equal children. The count is a
/// lower bound certified up to `depth`.
pub fn kernel_cardinality(a: &dyn Fn(u64) -> u32, k: u32, depth: usize) -> Result<usize> {
    if k < 2 || depth == 0 {
        return Err(Error::pre("kernel needs k >= 2 and depth >= 1"));
    }
    let k = k as u64;
    let seq = |ki: u64, j: u64| -> Option<Vec<u32>> {
        (0..depth as u64).map(|n| ki.checked_mul(n)?.checked_add(j).map(a)).collect()
    };
    let mut classes: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::from([(1u64, 0u64)]);
    classes.insert(seq(1, 0).expect("small indices"));
    while let Some((ki, j)) = queue.pop_front() {
        for r in 0..k {
            let child_ki = ki.checked_mul(k).ok_or_else(|| Error::prec("kernel exploration overflowed u64 indices"))?;
            let child_j = j + r * ki;
            let s = seq(child_ki, child_j).ok_or_else(|| Error::prec("kernel exploration overflowed u64 indices"))?;
            if classes.insert(s) {
                queue.push_back((child_ki, child_j));
            }
        }
    }
    Ok(classes.len())
}

/// A substitution on `alphabet`, `images[a]` the image of letter `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub images: Vec<Vec<u32>>,
    pub alphabet: Vec<String>,
}

impl Morphism {
    pub fn new(images: Vec<Vec<u32>>, alphabet: Vec<String>) -> Result<Self> {
        let d = alphabet.len();
        if images.len() != d || images.iter().flatten().any(|&x| x as usize >= d) {
            return Err(Error::pre("morphism images must be words over its alphabet"));
        }
        Ok(Morphism { images, alphabet })
    }

    pub fn fibonacci() -> Self {
        Morphism { images: vec![vec![0, 1], vec![0]], alphabet: vec!["a".into(), "b".into()] }
    }

    /// Letters whose iterated images eventually vanish.
    pub fn mortal(&self) -> Vec<bool> {
        let mut mortal = vec![false; self.images.len()];
        loop {
            let mut changed = false;
            for (a, img) in self.images.iter().enumerate() {
                if !mortal[a] && img.iter().all(|&x| mortal[x as usize]) {
                    mortal[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return mortal;
            }
        }
    }

    /// `σ(a) = aW` with `W` containing a letter that never dies.
    pub fn prolongable(&self, a: u32) -> bool {
        let img = &self.images[a as usize];
        let mortal = self.mortal();
        img.first() == Some(&a) && img[1..].iter().any(|&x| !mortal[x as usize])
    }
}

/// Smallest `e` such that every letter occurs in `σ^e(b)` for every `b`,
/// searched up to the Wielandt bound `(d−1)^2 + 1`.
pub fn primitivity_exponent(s: &Morphism) -> Option<usize> {
    let d = s.images.len();
    let mut m = vec![vec![false; d]; d];
    for (a, img) in s.images.iter().enumerate() {
        for &x in img {
            m[a][x as usize] = true;
        }
    }
    let mut cur = m.clone();
    for e in 1..=(d - 1) * (d - 1) + 1 {
        if cur.iter().flatten().all(|&x| x) {
            return Some(e);
        }
        let mut next = vec![vec![false; d]; d];
        for a in 0..d {
            for b in 0..d {
                next[a][b] = (0..d).any(|c| cur[a][c] && m[c][b]);
            }
        }
        cur = next;
    }
    None
}

/// First `N` letters of `τ(σ^∞(seed))`; `coding[a]` is the output id of
/// letter `a` in `out_alphabet`.
pub fn morphic_generate(s: &Morphism, coding: &[u32], out_alphabet: Vec<String>, seed: u32, n: usize) -> Result<Word> {
    if seed as usize >= s.images.len() || coding.len() != s.images.len() {
        return Err(Error::pre("seed and coding must match the morphism alphabet"));
    }
    if !s.prolongable(seed) {
        return Err(Error::pre(format!("morphism is not prolongable on '{}'", s.alphabet[seed as usize])));
    }
    // the fixed point x satisfies x = σ(x_0) σ(x_1) …
    let mut x = s.images[seed as usize].clone();
    let mut i = 1;
    while x.len() < n {
        if i >= x.len() {
            return Err(Error::Internal("fixed point stopped growing".into()));
        }
        let img = s.images[x[i] as usize].clone();
        x.extend(img);
        i += 1;
    }
    x.truncate(n);
    Word::new(x.into_iter().map(|a| coding[a as usize]).collect(), out_alphabet, 0)
}

pub fn fibonacci_word(n: usize) -> Word {
    let s = Morphism::fibonacci();
    morphic_generate(&s, &[0, 1], s.alphabet.clone(), 0, n).expect("prolongable")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SturmianVariant {
    Floor,
    Ceil,
}

/// `s_n = ⌊(n+1)θ + ρ⌋ − ⌊nθ + ρ⌋` (or with ceilings) for `n = 1..N`,
/// with `θ = [0; a_1, a_2, …]` known through the given quotients.
///
/// `θ` lies strictly between the last convergent `p_K/q_K` and the mediant
/// `(p_K + p_{K−1})/(q_K + q_{K−1})`; each rounding is decided when the
/// whole image of that interval rounds to one integer.
pub fn sturmian_generate(
    theta: &[i64],
    rho: &Ratio<i64>,
    variant: SturmianVariant,
    coding: [&str; 2],
    n: usize,
) -> Result<Word> {
    distinct(&coding)?;
    if theta.len() < 2 || theta[0] != 0 || theta[1..].iter().any(|&a| a < 1) {
        return Err(Error::pre("theta must be [0; a_1, ...] with a_i >= 1 and at least one quotient"));
    }
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    for &a in &theta[1..] {
        let a = BigInt::from(a);
        let (p2, q2) = (&a * &p1 + &p0, &a * &q1 + &q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    let c1 = BigRational::new(p1.clone(), q1.clone());
    let c2 = BigRational::new(p1 + p0, q1 + q0);
    let (lo, hi) = if c1 < c2 { (c1, c2) } else { (c2, c1) };
    let rho = big(rho);
    let round = |m: usize| -> Result<BigInt> {
        let m = BigRational::from_integer(m.into());
        let (a, b) = (&m * &lo + &rho, &m * &hi + &rho);
        let r = match variant {
            SturmianVariant::Floor => {
                let f = a.floor();
                (b <= &f + BigRational::one()).then(|| f.to_integer())
            }
            SturmianVariant::Ceil => {
                let c = b.ceil();
                (a >= &c - BigRational::one()).then(|| c.to_integer())
            }
        };
        r.ok_or_else(|| Error::prec(format!("theta quotients do not decide the rounding at n = {m}")))
    };
    let mut sym = Vec::with_capacity(n);
    let mut prev = round(1)?;
    for i in 1..=n {
        let next = round(i + 1).map_err(|_| Error::prec(format!("theta quotients do not decide s_n at n = {i}")))?;
        let s = &next - &prev;
        let s = s.to_u32().filter(|&s| s <= 1).ok_or_else(|| Error::Internal("Sturmian difference outside {0,1}".into()))?;
        sym.push(s);
        prev = next;
    }
    Word::new(sym, coding.iter().map(|s| s.to_string()).collect(), 1)
}
