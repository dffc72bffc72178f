//! Finite words, their complexity and repetitions, and the sequence
//! constructions used to build continued fractions.

mod analysis;
mod combi;
mod gen;
mod spec;

pub use analysis::{complexity, dio_estimate, is_periodic_prefix, DioEstimate};
pub use combi::{combi_factorize, verify_combi, CombiChecks, CombiResult, Placement};
pub use gen::{
    automaton_run, fibonacci_word, gen_main4, gen_main4_unchecked, gen_main5, kernel_cardinality, main4_threshold_ok,
    main5_m, morphic_generate, primitivity_exponent, sturmian_generate, thue_morse, Automaton, Morphism,
    SturmianVariant,
};
pub use spec::GeneratorSpec;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::Poly;

/// A finite word over opaque symbol ids, with names for the ids.
///
/// `offset` is the index of the first symbol in the usual numbering:
/// 1 for partial-quotient words `a_1 a_2 …`, 0 for digit words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    pub symbols: Vec<u32>,
    pub alphabet: Vec<String>,
    pub offset: usize,
}

impl Word {
    pub fn new(symbols: Vec<u32>, alphabet: Vec<String>, offset: usize) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= alphabet.len()) {
            return Err(Error::pre(format!("symbol {s} outside an alphabet of size {}", alphabet.len())));
        }
        Ok(Word { symbols, alphabet, offset })
    }

    /// Word over names, ids assigned in order of first appearance in `alphabet`.
    pub fn from_names(names: &[&str], alphabet: &[&str], offset: usize) -> Result<Self> {
        let symbols = names
            .iter()
            .map(|n| {
                alphabet
                    .iter()
                    .position(|a| a == n)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::Parse(format!("symbol '{n}' not in alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(symbols, alphabet.iter().map(|s| s.to_string()).collect(), offset)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word { symbols: self.symbols[..n.min(self.len())].to_vec(), alphabet: self.alphabet.clone(), offset: self.offset }
    }

    /// Symbol at index `i` in that numbering (so `at(offset)` is the first symbol).
    pub fn at(&self, i: usize) -> Option<u32> {
        i.checked_sub(self.offset).and_then(|j| self.symbols.get(j).copied())
    }

    /// Partial quotients named by the alphabet, parsed as polynomials.
    pub fn to_quotients(&self, field: &Fq) -> Result<Vec<Poly>> {
        let table = self.alphabet.iter().map(|s| Poly::parse(field, s)).collect::<Result<Vec<_>>>()?;
        Ok(self.symbols.iter().map(|&s| table[s as usize].clone()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        for (i, &s) in self.symbols.iter().enumerate() {
            if i > 0 && !single {
                f.write_str(" ")?;
            }
            f.write_str(&self.alphabet[s as usize])?;
        }
        Ok(())
    }
}

/// `U V^w` with rational `w`; `V^w` is `V^{⌊w⌋}` followed by the prefix of
/// `V` of length `⌈(w − ⌊w⌋)|V|⌉`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepetitionWitness {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub w: Ratio<i64>,
}

impl RepetitionWitness {
    /// `|V^w|`.
    pub fn power_len(&self) -> usize {
        let s = self.v.len() as i64;
        let fl = self.w.floor().to_integer();
        let frac = (self.w - fl) * s;
        (fl * s + frac.ceil().to_integer()) as usize
    }

    /// `|U V^w|`.
    pub fn total_len(&self) -> usize {
        self.u.len() + self.power_len()
    }

    /// `|U V^w| / |U V|`.
    pub fn ratio(&self) -> Ratio<i64> {
        Ratio::new(self.total_len() as i64, (self.u.len() + self.v.len()) as i64)
    }

    /// The word `U V^w`.
    pub fn expand(&self) -> Vec<u32> {
        let mut out = self.u.clone();
        let n = self.power_len();
        out.extend((0..n).map(|i| self.v[i % self.v.len()]));
        out
    }

    /// Whether `U V^w` is a prefix of `x`.
    pub fn is_prefix_of(&self, x: &[u32]) -> bool {
        let e = self.expand();
        e.len() <= x.len() && x[..e.len()] == e[..]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractional_powers() {
        let w = RepetitionWitness { u: vec![0], v: vec![1, 2, 3], w: Ratio::new(5, 3) };
        assert_eq!(w.expand(), vec![0, 1, 2, 3, 1, 2]);
        assert_eq!(w.ratio(), Ratio::new(6, 4));
        // ⌈(1/2)·3⌉ = 2 letters of the last copy
        let w = RepetitionWitness { u: vec![], v: vec![1, 2, 3], w: Ratio::new(3, 2) };
        assert_eq!(w.power_len(), 5);
    }

    #[test]
    fn words_map_to_quotients() {
        let f = Fq::prime(3).unwrap();
        let w = Word::from_names(&["T", "T+1", "T"], &["T", "T+1"], 1).unwrap();
        let q = w.to_quotients(&f).unwrap();
        assert_eq!(q[1], Poly::parse(&f, "T+1").unwrap());
        assert_eq!(w.at(1), Some(0));
        assert_eq!(w.at(0), None);
        assert_eq!(w.to_string(), "T T+1 T");
    }
}
