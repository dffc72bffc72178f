//! Factor complexity and prefix repetitions.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::Serialize;

use super::RepetitionWitness;
use crate::error::{Error, Result};

/// Number of distinct length-`n` factors of the prefix.
pub fn complexity(x: &[u32], n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::pre("factor length must be >= 1"));
    }
    if n > x.len() {
        return Ok(0);
    }
    Ok(x.windows(n).collect::<HashSet<_>>().len())
}

/// Largest `|UV^w|/|UV|` with `UV^w` a prefix of the given word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DioEstimate {
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub rho: Ratio<i64>,
    pub witness: RepetitionWitness,
}

/// Exact maximum of `|UV^w| / |UV|` over the prefix.
///
/// For `|U| = r` and `|V| = s` the longest repetition has length
/// `r + s + lcp(x[r..], x[r+s..])`; for each shift `s` the common prefix
/// lengths are filled right to left, `O(N^2)` time and `O(N)` memory. Ties
/// prefer the smaller `|UV|`, then the smaller `|U|`.
pub fn dio_estimate(x: &[u32]) -> Result<DioEstimate> {
    let n = x.len();
    if n == 0 {
        return Err(Error::pre("empty word"));
    }
    // (total, |UV|, r, s) with total/|UV| the ratio
    let mut best = (1usize, 1usize, 0usize, 1usize);
    let mut lcp = vec![0usize; n + 1];
    for s in 1..n {
        lcp[n - s] = 0;
        for r in (0..n - s).rev() {
            lcp[r] = if x[r] == x[r + s] { lcp[r + 1] + 1 } else { 0 };
        }
        for r in 0..n - s {
            let (tot, base) = (r + s + lcp[r], r + s);
            let better = tot * best.1 > best.0 * base
                || (tot * best.1 == best.0 * base && (base, r) < (best.1, best.2));
            if better {
                best = (tot, base, r, s);
            }
        }
    }
    let (tot, base, r, s) = best;
    let l = tot - base;
    let witness = RepetitionWitness {
        u: x[..r].to_vec(),
        v: x[r..r + s].to_vec(),
        w: Ratio::new((s + l) as i64, s as i64),
    };
    Ok(DioEstimate { rho: Ratio::new(tot as i64, base as i64), witness })
}

/// Smallest `(r, s)` with `x[i] = x[i + s]` for all `i >= r`, if the
/// periodic tail is at least three periods (and 4 letters past two) long
/// and covers at least half the prefix. Words of bounded repetition index,
/// like the Fibonacci word, end in long powers at some lengths; the half
/// rule keeps those from being mistaken for eventually periodic words.
pub fn is_periodic_prefix(x: &[u32]) -> Option<(usize, usize)> {
    let n = x.len();
    for s in 1..=n / 2 {
        let mut r = n - s;
        while r > 0 && x[r - 1] == x[r - 1 + s] {
            r -= 1;
        }
        if n - r >= 2 * s + s.max(4) && 2 * (n - r) >= n {
            return Some((r, s));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dio(x: &[u32]) -> Ratio<i64> {
        let mut best = Ratio::from_integer(1);
        for r in 0..x.len() {
            for s in 1..x.len() - r {
                let mut l = 0;
                while r + s + l < x.len() && x[r + l] == x[r + s + l] {
                    l += 1;
                }
                best = best.max(Ratio::new((r + s + l) as i64, (r + s) as i64));
            }
        }
        best
    }

    #[test]
    fn periodic_prefix_ratio() {
        let x: Vec<u32> = (0..20).map(|i| i % 2).collect();
        let d = dio_estimate(&x).unwrap();
        assert_eq!(d.rho, Ratio::from_integer(10));
        assert!(d.witness.u.is_empty());
        assert_eq!(d.witness.v, vec![0, 1]);
        assert!(d.witness.is_prefix_of(&x));
    }

    #[test]
    fn agrees_with_naive_scan() {
        let words: [&[u32]; 4] = [&[0, 1, 0, 2, 0, 1, 0, 1, 1], &[0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1], &[3], &[0, 0, 1, 0, 0, 1, 0]];
        for x in words {
            let d = dio_estimate(x).unwrap();
            assert_eq!(d.rho, naive_dio(x));
            assert!(d.witness.is_prefix_of(x));
            assert_eq!(d.witness.ratio(), d.rho);
        }
    }

    #[test]
    fn constant_word_complexity() {
        let x = vec![5u32; 30];
        for n in 1..10 {
            assert_eq!(complexity(&x, n).unwrap(), 1);
        }
        assert!(complexity(&x, 0).is_err());
    }

    #[test]
    fn periodic_detection() {
        let x: Vec<u32> = [7, 8].iter().copied().chain((0..30).map(|i| (i % 3) as u32)).collect();
        assert_eq!(is_periodic_prefix(&x), Some((2, 3)));
        let tm: Vec<u32> = (0..64u32).map(|i| i.count_ones() % 2).collect();
        assert_eq!(is_periodic_prefix(&tm), None);
        let fib = crate::words::fibonacci_word(500);
        assert_eq!(is_periodic_prefix(&fib.symbols), None);
    }
}
