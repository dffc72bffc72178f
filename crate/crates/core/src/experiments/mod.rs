//! Finite-depth reproductions of the approximation results, each emitting
//! an [`ExperimentReport`] of exact values and verdicts.

mod appendix;
mod lacunary;
mod number;
mod prop57;
mod report;
mod words_cf;

pub use appendix::{appendix_digit_approx, digit_approximant, AppendixConfig};
pub use lacunary::{verify_main4, verify_main5, Main4Config, Main5Config};
pub use number::{digit_series, digits_of, NumberSpec};
pub use prop57::{slack, verify_prop_main7, Prop57Config};
pub use report::{ExperimentReport, Table, Verdict, VerdictKind};
pub use words_cf::{verify_main1, verify_main2, Main1Config, Main2Config};
