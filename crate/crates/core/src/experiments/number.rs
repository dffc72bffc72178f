//! Descriptions of the numbers experiments run on.

use serde::{Deserialize, Serialize};

use crate::algebraic::AlgebraicNumber;
use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::exponent::{Approximable, CfReal};
use crate::field::{Fe, Fq};
use crate::poly::Poly;
use crate::series::LaurentSeries;
use crate::words::{GeneratorSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NumberSpec {
    /// `num/den`.
    Rational { num: String, den: String },
    /// `[a0, pre…, (period…)]`, a quadratic (or rational) number.
    Periodic {
        #[serde(default)]
        a0: Option<String>,
        #[serde(default)]
        pre: Vec<String>,
        period: Vec<String>,
    },
    /// `[0, a_1, …, a_N]` with quotients named by a word, standing for the
    /// infinite fraction of that word (assumed of degree > 2).
    CfWord { word: GeneratorSpec, length: usize },
    /// `Σ_{n<N} a_n T^{-n}` with digits named by a word (each symbol is a
    /// field element index), known to precision `N`.
    Digits { word: GeneratorSpec, length: usize },
}

fn polys(f: &Fq, names: &[String]) -> Result<Vec<Poly>> {
    names.iter().map(|s| Poly::parse(f, s)).collect()
}

/// Digit word as field elements.
pub fn digits_of(field: &Fq, word: &Word) -> Result<Vec<Fe>> {
    let table = word
        .alphabet
        .iter()
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("digit symbol '{s}' is not a field element index")))
                .and_then(|i| field.elem(i))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(word.symbols.iter().map(|&s| table[s as usize]).collect())
}

/// `Σ a_n T^{-n}` known below `digits.len()`.
pub fn digit_series(field: &Fq, digits: &[Fe]) -> LaurentSeries {
    LaurentSeries::from_parts(field, 0, digits.to_vec(), Some(digits.len() as i64))
}

impl NumberSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("number spec: {e}")))
    }

    pub fn build(&self, field: &Fq) -> Result<Box<dyn Approximable>> {
        match self {
            NumberSpec::Rational { num, den } => {
                Ok(Box::new(AlgebraicNumber::rational(&Poly::parse(field, num)?, &Poly::parse(field, den)?)?))
            }
            NumberSpec::Periodic { a0, pre, period } => {
                let a0 = match a0 {
                    Some(s) => Poly::parse(field, s)?,
                    None => Poly::zero(field),
                };
                let cf = ContinuedFraction::eventually_periodic(a0, polys(field, pre)?, polys(field, period)?)?;
                Ok(Box::new(AlgebraicNumber::from_cf(&cf)?))
            }
            NumberSpec::CfWord { word, length } => {
                let w = word.generate(*length, field.p())?;
                let cf = ContinuedFraction::finite(Poly::zero(field), w.to_quotients(field)?)?;
                Ok(Box::new(CfReal::new(cf)?))
            }
            NumberSpec::Digits { word, length } => {
                let w = word.generate(*length, field.p())?;
                Ok(Box::new(digit_series(field, &digits_of(field, &w)?)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_build() {
        let f = Fq::prime(3).unwrap();
        let s = NumberSpec::parse(r#"{"type":"periodic","period":["T"]}"#).unwrap();
        let x = s.build(&f).unwrap();
        assert!(x.series_to(10).unwrap().ord() == Some(1));
        let d = NumberSpec::parse(r#"{"type":"digits","word":{"type":"thue_morse","a":"0","b":"1"},"length":16}"#).unwrap();
        let x = d.build(&f).unwrap();
        // 0 1 1 0 …: leading term T^{-1}
        assert_eq!(x.series_to(16).unwrap().ord(), Some(1));
    }
}
