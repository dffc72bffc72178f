//! Repetitions forced by low factor complexity.
//!
//! If `p(a, n) <= κn`, some length-`n` factor occurs twice in the first
//! `(κ+1)n` letters; the two occurrences give a prefix `U V^w` with a
//! guaranteed gain `|UV^w|/|UV| >= 1 + 1/(4κ+2)`.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use super::analysis::complexity;
use super::RepetitionWitness;
use crate::error::{Error, Result};

/// How the two occurrences of the repeated factor sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Occurrences at distance `>= n`: `V` runs from the first to the second.
    Apart,
    /// Overlapping occurrences: the factor is a fractional power of the gap.
    Overlapping,
}

/// The seven properties, each checked from the witness alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CombiChecks {
    pub prefix: bool,
    pub u_bound: bool,
    pub v_range: bool,
    pub last_letters: bool,
    pub gain: bool,
    pub uv_len: bool,
    pub u2v_len: bool,
}

impl CombiChecks {
    pub fn all(&self) -> bool {
        self.prefix && self.u_bound && self.v_range && self.last_letters && self.gain && self.uv_len && self.u2v_len
    }

    /// Names of failed properties, in order (i)…(vii).
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.prefix, "prefix"),
            (self.u_bound, "u_bound"),
            (self.v_range, "v_range"),
            (self.last_letters, "last_letters"),
            (self.gain, "gain"),
            (self.uv_len, "uv_len"),
            (self.u2v_len, "u2v_len"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, n)| n)
        .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CombiResult {
    pub n: usize,
    pub kappa: usize,
    pub witness: RepetitionWitness,
    pub placement: Placement,
    /// 0-based starts of the two occurrences after disambiguation.
    pub first: usize,
    pub second: usize,
    /// `p(prefix, n)` and whether it is at most `κn`.
    pub complexity: usize,
    pub hypothesis_holds: bool,
    pub checks: CombiChecks,
}

/// Build the witness for `n` from the first `(κ+1)n` letters of `x`.
///
/// The repeat whose second occurrence ends earliest is used; the pair is
/// then slid left while the letters before them agree, so that `U` and `V`
/// end in different letters (with the earliest choice the slide is a no-op,
/// kept so the invariant does not depend on the search order). Fails only
/// if no factor repeats in the window.
pub fn combi_factorize(x: &[u32], kappa: usize, n: usize) -> Result<CombiResult> {
    if n == 0 || kappa == 0 {
        return Err(Error::pre("n and kappa must be positive"));
    }
    let win = (kappa + 1) * n;
    if x.len() < win {
        return Err(Error::pre(format!("prefix of length {} shorter than (kappa+1)n = {win}", x.len())));
    }
    let a = &x[..win];
    let mut seen: HashMap<&[u32], usize> = HashMap::new();
    let mut pair = None;
    for j in 0..=win - n {
        let f = &a[j..j + n];
        match seen.get(f) {
            Some(&i) => {
                pair = Some((i, j));
                break;
            }
            None => {
                seen.insert(f, j);
            }
        }
    }
    let (mut i, mut j) = pair.ok_or_else(|| {
        Error::pre(format!("no length-{n} factor occurs twice in the first {win} letters"))
    })?;
    while i > 0 && a[i - 1] == a[j - 1] {
        i -= 1;
        j -= 1;
    }
    let gap = j - i;
    let u = a[..i].to_vec();
    let (v, w, placement) = if gap >= n {
        (a[i..j].to_vec(), Ratio::new((gap + n) as i64, gap as i64), Placement::Apart)
    } else {
        // W = C^d with d = n/|C|; V = C^{⌈d/2⌉}, w = (d+1)/⌈d/2⌉
        let d = Ratio::new(n as i64, gap as i64);
        let half = (d / 2).ceil().to_integer();
        let reps = half as usize * gap;
        let v: Vec<u32> = (0..reps).map(|t| a[i + t % gap]).collect();
        (v, (d + 1) / half, Placement::Overlapping)
    };
    let witness = RepetitionWitness { u, v, w };
    let checks = verify_combi(x, kappa, n, &witness);
    let p = complexity(x, n)?;
    Ok(CombiResult {
        n,
        kappa,
        witness,
        placement,
        first: i,
        second: j,
        complexity: p,
        hypothesis_holds: p <= kappa * n,
        checks,
    })
}

/// Check properties (i)–(vii) of a witness against the word, using only
/// the witness itself.
pub fn verify_combi(x: &[u32], kappa: usize, n: usize, wit: &RepetitionWitness) -> CombiChecks {
    let (u, v) = (wit.u.len(), wit.v.len());
    let k = kappa as i64;
    CombiChecks {
        prefix: v > 0 && wit.is_prefix_of(x),
        u_bound: u <= 2 * kappa * v,
        v_range: 2 * v >= n && v <= kappa * n,
        last_letters: u == 0 || (v > 0 && wit.u[u - 1] != wit.v[v - 1]),
        gain: v > 0 && wit.ratio() >= Ratio::new(4 * k + 3, 4 * k + 2),
        uv_len: u + v < (kappa + 1) * n,
        u2v_len: 2 * u + v + 2 <= (2 * kappa + 1) * n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_word() {
        let x: Vec<u32> = (0..40).map(|i| i % 2).collect();
        let r = combi_factorize(&x, 2, 4).unwrap();
        assert!(r.checks.all(), "{:?}", r.checks.failures());
        assert!((2..=8).contains(&r.witness.v.len()));
        assert!(r.witness.ratio() >= Ratio::new(11, 10));
    }

    #[test]
    fn constant_word_uses_overlap() {
        let x = vec![0u32; 100];
        for n in 1..20 {
            let r = combi_factorize(&x, 2, n).unwrap();
            assert!(r.witness.u.is_empty());
            assert_eq!(r.placement, if n == 1 { Placement::Apart } else { Placement::Overlapping });
            assert!(r.checks.all());
        }
    }

    #[test]
    fn separated_repeat() {
        // window length 12: factor 012 at 0 and 4
        let x = [0, 1, 2, 3, 0, 1, 2, 4, 5, 6, 7, 8, 9];
        let r = combi_factorize(&x, 3, 3).unwrap();
        assert_eq!((r.first, r.second), (0, 4));
        assert_eq!(r.witness.v, vec![0, 1, 2, 3]);
        assert!(r.checks.all());
    }

    #[test]
    fn no_repeat_is_an_error() {
        let x: Vec<u32> = (0..12).collect();
        assert!(combi_factorize(&x, 2, 4).is_err());
    }

    #[test]
    fn verifier_rejects_a_tampered_witness() {
        let x: Vec<u32> = (0..40).map(|i| i % 3).collect();
        let mut r = combi_factorize(&x, 2, 6).unwrap();
        assert!(r.checks.all());
        r.witness.v[0] = 2;
        assert!(!verify_combi(&x, 2, 6, &r.witness).prefix);
    }
}
