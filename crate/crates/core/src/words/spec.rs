//! Tagged JSON descriptions of words, e.g.
//! `{"type": "main4", "w": [5, 1], "b": "T", "c": "T+1"}`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::gen::{self, Automaton, Morphism, SturmianVariant};
use super::Word;
use crate::error::{Error, Result};

fn ratio(r: [i64; 2]) -> Result<Ratio<i64>> {
    if r[1] == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Ratio::new(r[0], r[1]))
}

fn zero_rho() -> [i64; 2] {
    [0, 1]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Main4 {
        w: [i64; 2],
        b: String,
        c: String,
    },
    Main5 {
        w: [i64; 2],
        eta: [i64; 2],
        b: String,
        c: String,
        d: String,
    },
    /// Thue–Morse over the two given symbols.
    ThueMorse {
        a: String,
        b: String,
    },
    /// Fibonacci fixed point of `a → ab, b → a` over the two given symbols.
    Fibonacci {
        a: String,
        b: String,
    },
    /// `prefix` followed by `period` forever.
    Periodic {
        #[serde(default)]
        prefix: Vec<String>,
        period: Vec<String>,
    },
    /// Exactly these symbols; generating past the end is an error.
    Explicit {
        symbols: Vec<String>,
    },
    Automaton {
        automaton: Automaton,
    },
    /// Fixed point of `images` started at `seed`, coded letterwise (identity
    /// if `coding` is absent).
    Morphic {
        images: BTreeMap<String, Vec<String>>,
        seed: String,
        #[serde(default)]
        coding: Option<BTreeMap<String, String>>,
    },
    Sturmian {
        theta: Vec<i64>,
        #[serde(default = "zero_rho")]
        rho: [i64; 2],
        variant: SturmianVariant,
        coding: [String; 2],
    },
}

/// Intern names into an alphabet in order of first appearance.
fn intern(names: &[String], alphabet: &mut Vec<String>) -> Vec<u32> {
    names
        .iter()
        .map(|n| match alphabet.iter().position(|a| a == n) {
            Some(i) => i as u32,
            None => {
                alphabet.push(n.clone());
                (alphabet.len() - 1) as u32
            }
        })
        .collect()
}

impl GeneratorSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("generator spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Whether the described word is ultimately periodic by construction.
    pub fn is_periodic(&self) -> bool {
        matches!(self, GeneratorSpec::Periodic { .. })
    }

    /// First `n` symbols. `characteristic` selects the threshold for
    /// `main4`; other generators ignore it.
    pub fn generate(&self, n: usize, characteristic: u32) -> Result<Word> {
        match self {
            GeneratorSpec::Main4 { w, b, c } => gen::gen_main4(&ratio(*w)?, characteristic, b, c, n),
            GeneratorSpec::Main5 { w, eta, b, c, d } => gen::gen_main5(&ratio(*w)?, &ratio(*eta)?, b, c, d, n),
            GeneratorSpec::ThueMorse { a, b } => {
                let mut w = gen::thue_morse(n);
                w.alphabet = vec![a.clone(), b.clone()];
                w.offset = 1;
                Ok(w)
            }
            GeneratorSpec::Fibonacci { a, b } => {
                let mut w = gen::fibonacci_word(n);
                w.alphabet = vec![a.clone(), b.clone()];
                w.offset = 1;
                Ok(w)
            }
            GeneratorSpec::Periodic { prefix, period } => {
                if period.is_empty() {
                    return Err(Error::pre("empty period"));
                }
                let mut alphabet = Vec::new();
                let pre = intern(prefix, &mut alphabet);
                let per = intern(period, &mut alphabet);
                let sym = pre.iter().chain(per.iter().cycle()).take(n).copied().collect();
                Word::new(sym, alphabet, 1)
            }
            GeneratorSpec::Explicit { symbols } => {
                if n > symbols.len() {
                    return Err(Error::pre(format!("explicit word has only {} symbols", symbols.len())));
                }
                let mut alphabet = Vec::new();
                let sym = intern(&symbols[..n], &mut alphabet);
                Word::new(sym, alphabet, 1)
            }
            GeneratorSpec::Automaton { automaton } => gen::automaton_run(automaton, n),
            GeneratorSpec::Morphic { images, seed, coding } => {
                let letters: Vec<String> = images.keys().cloned().collect();
                let id = |s: &String| {
                    letters
                        .iter()
                        .position(|l| l == s)
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::Parse(format!("letter '{s}' has no image")))
                };
                let imgs = images.values().map(|img| img.iter().map(id).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
                let m = Morphism::new(imgs, letters.clone())?;
                let mut out = Vec::new();
                let codes: Vec<String> = match coding {
                    Some(c) => letters
                        .iter()
                        .map(|l| c.get(l).cloned().ok_or_else(|| Error::Parse(format!("no coding for '{l}'"))))
                        .collect::<Result<_>>()?,
                    None => letters.clone(),
                };
                let coding = intern(&codes, &mut out);
                gen::morphic_generate(&m, &coding, out, id(seed)?, n)
            }
            GeneratorSpec::Sturmian { theta, rho, variant, coding } => {
                gen::sturmian_generate(theta, &ratio(*rho)?, *variant, [&coding[0], &coding[1]], n)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = GeneratorSpec::parse(r#"{"type":"main4","w":[5,1],"b":"T","c":"T+1"}"#).unwrap();
        assert_eq!(GeneratorSpec::parse(&s.to_json()).unwrap(), s);
        let w = s.generate(6, 3).unwrap();
        assert_eq!(w.to_string(), "T+1 T T T T+1 T");
    }

    #[test]
    fn morphic_and_periodic_specs() {
        let s = GeneratorSpec::parse(
            r#"{"type":"morphic","images":{"a":["a","b"],"b":["a"]},"seed":"a","coding":{"a":"T","b":"T^2"}}"#,
        )
        .unwrap();
        assert_eq!(s.generate(5, 3).unwrap().to_string(), "T T^2 T T T^2");
        let p = GeneratorSpec::parse(r#"{"type":"periodic","prefix":["x"],"period":["y","z"]}"#).unwrap();
        assert_eq!(p.generate(6, 2).unwrap().to_string(), "xyzyzy");
        assert!(p.is_periodic());
        let e = GeneratorSpec::parse(r#"{"type":"explicit","symbols":["1","2"]}"#).unwrap();
        assert!(e.generate(3, 2).is_err());
        assert!(GeneratorSpec::parse(r#"{"type":"nope"}"#).is_err());
    }
}
