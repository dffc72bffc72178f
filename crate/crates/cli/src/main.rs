//! `ffd`: continued fractions, exponents, words and the finite-depth
//! experiments from the command line.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Config, Format, Overrides};

const POLY_HELP: &str = "Polynomials in T are written like 2T^2 + T - 1 or (T+1)(T-1); integers are reduced mod p \
and [i] is the field element with index i. Polynomials in X are lists of T-polynomials separated by ';', highest \
X-degree first: \"T;1;T+1\" is T X^2 + X + (T+1).";

#[derive(Parser, Debug)]
#[command(name = "ffd", version, about = "Exact Diophantine approximation over F_q((1/T))", after_help = POLY_HELP)]
pub struct Cli {
    /// JSON run configuration (default: $FFD_CONFIG).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Prime field F_q.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Field as JSON, e.g. {"p":2,"e":2,"modulus":[1,1,1]}.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Working precision of series expansions.
    #[arg(long, global = true)]
    precision: Option<i64>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for the JSON document and CSV tables.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Format printed on stdout.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: available cores); results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Laurent series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Approximation exponents at finite height.
    #[command(subcommand)]
    Exp(ExpCmd),
    /// Words: generation, complexity, repetitions.
    #[command(subcommand)]
    Word(WordCmd),
    /// Liouville-type inequalities.
    #[command(subcommand)]
    Liouville(LiouvilleCmd),
    /// Finite-depth experiments with verdicts.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug, Clone)]
pub struct PeriodicArgs {
    #[arg(long, default_value = "0")]
    pub a0: String,
    /// Pre-period quotients, comma separated.
    #[arg(long, default_value = "")]
    pub pre: String,
    /// Repeating quotients, comma separated.
    #[arg(long)]
    pub period: String,
}

#[derive(Subcommand, Debug)]
pub enum CfCmd {
    /// Expansion of num/den, or of sqrt(num/den) known to --precision.
    Expand {
        #[arg(long)]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
        #[arg(long)]
        sqrt: bool,
    },
    /// Convergent table of [a0, quotients…] (with an optional period).
    Convergents {
        #[arg(long, default_value = "0")]
        a0: String,
        #[arg(long)]
        quotients: String,
        #[arg(long)]
        period: Option<String>,
        /// Rows to print for a periodic fraction.
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Minimal polynomial of an eventually periodic fraction.
    Minpoly(PeriodicArgs),
    /// Conjugate gap of an eventually periodic fraction with its bracket.
    Conjugate(PeriodicArgs),
}

#[derive(Subcommand, Debug)]
pub enum SeriesCmd {
    /// Square root of num/den.
    Sqrt {
        #[arg(long)]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
    },
    /// Roots of A X^2 + B X + C in F_q((1/T)).
    Roots {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct NumberArgs {
    /// Number as JSON, e.g. {"type":"periodic","pre":["T"],"period":["T+1"]}.
    #[arg(long)]
    pub number: String,
    /// Degree n of the approximating polynomials.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum ExpCmd {
    /// −log w_n(ξ, q^h) with its minimizing polynomial.
    Wn {
        #[command(flatten)]
        x: NumberArgs,
        #[arg(long)]
        h: u32,
    },
    /// −log w_n*(ξ, q^h) with the closest algebraic number.
    Wnstar {
        #[command(flatten)]
        x: NumberArgs,
        #[arg(long)]
        h: u32,
    },
    /// Ratios over several heights with their running maximum.
    Estimate {
        #[command(flatten)]
        x: NumberArgs,
        /// Heights, e.g. 1,2,3 or 1-3.
        #[arg(long, default_value = "1-3")]
        hs: String,
        #[arg(long)]
        starred: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WordArgs {
    /// Word as JSON (see the README for the generator types).
    #[arg(long, conflicts_with = "kind")]
    pub spec: Option<String>,
    /// Generator type: main4, main5, thue_morse, fibonacci.
    #[arg(long = "type", id = "kind")]
    pub kind: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    /// Number of symbols.
    #[arg(long = "N", id = "length", default_value_t = 256)]
    pub length: usize,
}

#[derive(Subcommand, Debug)]
pub enum WordCmd {
    /// Factor complexity p(n).
    Complexity {
        #[command(flatten)]
        w: WordArgs,
        /// Factor lengths, e.g. 1-10.
        #[arg(long, default_value = "1-10")]
        n: String,
    },
    /// Largest |UV^w|/|UV| over the prefix.
    Dio {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Repetition witness from a repeated factor of length n.
    Combi {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, default_value_t = 2)]
        kappa: usize,
        #[arg(long, default_value = "8-16")]
        n: String,
    },
    /// The symbols themselves.
    Gen {
        #[command(flatten)]
        w: WordArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum LiouvilleCmd {
    /// One inequality on given inputs.
    Check {
        /// poly_value, root_distance, conjugate_separation, distinct_numbers,
        /// conjugate_gap_lower, conjugate_gap_upper or quadratic_pair.
        #[arg(long)]
        case: String,
        #[arg(long)]
        p_poly: Option<String>,
        #[arg(long)]
        q_poly: Option<String>,
        /// Minimal polynomial of α.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 0)]
        alpha_branch: usize,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 0)]
        beta_branch: usize,
    },
    /// Exhaustive small-height sweep plus random instances.
    Sweep {
        #[arg(long, default_value_t = 2)]
        max_height: u32,
        #[arg(long, default_value_t = 10_000)]
        random: usize,
        #[arg(long, default_value_t = 6)]
        random_max_height: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Lacunary word with c at ⌊w^i⌋.
    Main4 {
        #[arg(long, default_value = "5")]
        w: String,
        #[arg(long, default_value = "T")]
        b: String,
        #[arg(long, default_value = "T+1")]
        c: String,
        #[arg(long, default_value_t = 3)]
        jmax: u32,
        #[arg(long)]
        tol_star: Option<String>,
        #[arg(long)]
        tol_gap: Option<String>,
        /// Whole experiment config as a JSON file (overrides the flags).
        #[arg(long)]
        from: Option<String>,
    },
    /// Lacunary word with d-blocks of period ⌊ηw^j⌋.
    Main5 {
        #[arg(long, default_value = "25")]
        w: String,
        #[arg(long, default_value = "1")]
        eta: String,
        #[arg(long, default_value = "T")]
        b: String,
        #[arg(long, default_value = "T+1")]
        c: String,
        #[arg(long, default_value = "T+2")]
        d: String,
        #[arg(long, default_value_t = 2)]
        jmax: u32,
        #[arg(long)]
        tol_star: Option<String>,
        #[arg(long)]
        tol_gap: Option<String>,
        #[arg(long)]
        from: Option<String>,
    },
    /// Complexity-based upper bound audit for a quotient word.
    Main1 {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, default_value_t = 4)]
        kappa: usize,
        #[arg(long, default_value = "8,16,32")]
        n_list: String,
        #[arg(long)]
        max_deg: Option<u32>,
        #[arg(long, default_value = "1,2")]
        hs: String,
        #[arg(long)]
        from: Option<String>,
    },
    /// Repetition-based lower bound certificates for a quotient word.
    Main2 {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        from: Option<String>,
    },
    /// Rational approximants of a digit series.
    Appendix {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, default_value = "8,16,32")]
        n_list: String,
        #[arg(long, default_value_t = 2)]
        kappa: usize,
        #[arg(long, default_value = "1/5")]
        slack: String,
        #[arg(long)]
        from: Option<String>,
    },
    /// ŵ_2 against ŵ_2* per height.
    Prop57 {
        #[arg(long)]
        number: Option<String>,
        #[arg(long, default_value = "1-3")]
        hs: String,
        #[arg(long)]
        from: Option<String>,
    },
}

/// Exit codes: 1 usage, 2 precondition, 3 precision, 4 failed verdict.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<ffd::Error>() {
        Some(ffd::Error::Precondition(_)) | Some(ffd::Error::NoSquareRoot(_)) | Some(ffd::Error::DivisionByZero) => 2,
        Some(ffd::Error::InsufficientPrecision(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let overrides = Overrides {
        path: cli.config.clone(),
        q: cli.q,
        field: cli.field.clone(),
        precision: cli.precision,
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format,
    };
    let result = Config::load(overrides).and_then(|cfg| {
        let out = commands::run(&cli.command, &cfg)?;
        out.emit(&cfg)?;
        Ok(out.passed)
    });
    match result {
        Ok(Some(false)) => ExitCode::from(4),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
