//! Command handlers: parse the flags, call the library, shape an [`Output`].

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use ffd::cf::{cf_expand_rational, cf_expand_series, conjugate_gap, periodic_minimal_polynomial, ConjugateGap};
use ffd::experiments::{self as ex, Table};
use ffd::exponent::{exponent_estimate, sample_ratio, wn_of_height, wnstar_of_height};
use ffd::liouville::{check_liouville, liouville_sweep, LiouvilleCase, LiouvilleInputs, SweepConfig};
use ffd::report::frac_string;
use ffd::words::{combi_factorize, complexity, dio_estimate};
use ffd::{quadratic_roots, AlgebraicNumber, ContinuedFraction, Fq, GeneratorSpec, LaurentSeries, Poly, XPoly};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::config::Config;
use crate::output::Output;
use crate::{CfCmd, Command, ExpCmd, LiouvilleCmd, NumberArgs, PeriodicArgs, SeriesCmd, VerifyCmd, WordArgs, WordCmd};

pub fn run(cmd: &Command, cfg: &Config) -> Result<Output> {
    match cmd {
        Command::Cf(c) => cf(c, cfg),
        Command::Series(c) => series(c, cfg),
        Command::Exp(c) => exp(c, cfg),
        Command::Word(c) => word(c, cfg),
        Command::Liouville(c) => liouville(c, cfg),
        Command::Verify(c) => verify(c, cfg),
    }
}

fn poly(f: &Fq, s: &str) -> Result<Poly> {
    Ok(Poly::parse(f, s)?)
}

fn polys(f: &Fq, s: &str) -> Result<Vec<Poly>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| poly(f, t)).collect()
}

/// `"A;B;C"` is `A X^2 + B X + C`.
fn xpoly(f: &Fq, s: &str) -> Result<XPoly> {
    let mut cs = s.split(';').map(|t| poly(f, t.trim())).collect::<Result<Vec<_>>>()?;
    cs.reverse();
    Ok(XPoly::new(f, cs))
}

/// `"9/2"` or `"5"`.
fn ratio(s: &str) -> Result<[i64; 2]> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse()?, d.trim().parse()?),
        None => (s.trim().parse()?, 1),
    };
    if d == 0 {
        bail!("zero denominator in '{s}'");
    }
    Ok([n, d])
}

/// `"1,2,5"`, `"1-4"` or a mix like `"1-3,8"`.
fn list<T: std::str::FromStr + Copy + TryFrom<u64>>(s: &str) -> Result<Vec<T>>
where
    <T as std::str::FromStr>::Err: std::error::Error + Send + Sync + 'static,
{
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
                for i in a..=b {
                    out.push(T::try_from(i).map_err(|_| anyhow!("{i} out of range"))?);
                }
            }
            None => out.push(part.parse()?),
        }
    }
    if out.is_empty() {
        bail!("empty list '{s}'");
    }
    Ok(out)
}

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

fn periodic(f: &Fq, a: &PeriodicArgs) -> Result<ContinuedFraction> {
    Ok(ContinuedFraction::eventually_periodic(poly(f, &a.a0)?, polys(f, &a.pre)?, polys(f, &a.period)?)?)
}

fn cf(c: &CfCmd, cfg: &Config) -> Result<Output> {
    let f = cfg.fq()?;
    match c {
        CfCmd::Expand { num, den, sqrt } => {
            let (n, d) = (poly(&f, num)?, poly(&f, den)?);
            let (x, certified) = if *sqrt {
                let s = LaurentSeries::from_rational(&n, &d, cfg.precision)?.truncate(cfg.precision).sqrt()?;
                let (x, k) = cf_expand_series(&s);
                (x, Some(k))
            } else {
                (cf_expand_rational(&n, &d)?, None)
            };
            let mut t = Table::new("quotients", &["n", "a_n", "deg"]);
            t.push(vec!["0".into(), x.a0().to_string(), x.a0().deg().to_string()]);
            for (i, a) in x.quotients().iter().enumerate() {
                t.push(vec![(i + 1).to_string(), a.to_string(), a.deg().to_string()]);
            }
            let mut out = Output::new("cf expand", cfg, json!({ "cf": x.to_string(), "certified": certified }))
                .line(x.to_string());
            if let Some(k) = certified {
                out = out.line(format!("{k} terms certified at precision {}", cfg.precision));
            }
            Ok(out.table(t))
        }
        CfCmd::Convergents { a0, quotients, period, count } => {
            let (a0, qs) = (poly(&f, a0)?, polys(&f, quotients)?);
            let (x, rows) = match period {
                Some(p) => (ContinuedFraction::eventually_periodic(a0, qs, polys(&f, p)?)?, *count),
                None => {
                    let n = qs.len();
                    (ContinuedFraction::finite(a0, qs)?, n)
                }
            };
            let mut t = Table::new("convergents", &["n", "a_n", "p_n", "q_n", "deg_q_n"]);
            for cv in x.convergents(rows)? {
                let a = x.quotient(cv.n).expect("within range");
                t.push(vec![cv.n.to_string(), a.to_string(), cv.p.to_string(), cv.q.to_string(), cv.q.deg().to_string()]);
            }
            let rows_json = &t.rows;
            Ok(Output::new("cf convergents", cfg, json!({ "cf": x.to_string(), "rows": rows_json })).line(x.to_string()).table(t))
        }
        CfCmd::Minpoly(a) => {
            let x = periodic(&f, a)?;
            let m = periodic_minimal_polynomial(&x)?;
            let h = m.height_exp()?;
            Ok(Output::new("cf minpoly", cfg, json!({ "cf": x.to_string(), "minpoly": m.to_string(), "log_height": h }))
                .line(format!("{x}"))
                .line(format!("minimal polynomial: {m}"))
                .line(format!("log H = {h}")))
        }
        CfCmd::Conjugate(a) => {
            let x = periodic(&f, a)?;
            let g = conjugate_gap(&x)?;
            let gap = match g.gap {
                ConjugateGap::Separable(e) => frac_string(&e),
                ConjugateGap::Inseparable => "inseparable".into(),
            };
            Ok(Output::new("cf conjugate", cfg, &g)
                .line(format!("{x}"))
                .line(format!("minimal polynomial: {}", g.minpoly))
                .line(format!("log|α − α'| = {gap}, bracket [{}, {}], inside: {}", g.lower, g.upper, g.within_bracket())))
        }
    }
}

fn series(c: &SeriesCmd, cfg: &Config) -> Result<Output> {
    let f = cfg.fq()?;
    match c {
        SeriesCmd::Sqrt { num, den } => {
            // an exact input is cut at the precision so the root is a finite expansion
            let x = LaurentSeries::from_rational(&poly(&f, num)?, &poly(&f, den)?, cfg.precision)?.truncate(cfg.precision);
            let s = x.sqrt()?;
            Ok(Output::new("series sqrt", cfg, &s).line(s.to_string()))
        }
        SeriesCmd::Roots { a, b, c } => {
            let roots = quadratic_roots(&poly(&f, a)?, &poly(&f, b)?, &poly(&f, c)?, cfg.precision)?;
            let mut out = Output::new("series roots", cfg, &roots);
            if roots.is_empty() {
                out = out.line("no roots in F_q((1/T))");
            }
            for (i, r) in roots.iter().enumerate() {
                out = out.line(format!("root {i}: {r}"));
            }
            Ok(out)
        }
    }
}

fn number(f: &Fq, x: &NumberArgs) -> Result<Box<dyn ffd::exponent::Approximable>> {
    Ok(ex::NumberSpec::parse(&x.number)?.build(f)?)
}

fn exp(c: &ExpCmd, cfg: &Config) -> Result<Output> {
    let f = cfg.fq()?;
    match c {
        ExpCmd::Wn { x, h } | ExpCmd::Wnstar { x, h } => {
            let starred = matches!(c, ExpCmd::Wnstar { .. });
            let xi = number(&f, x)?;
            let s = if starred { wnstar_of_height(xi.as_ref(), x.n, *h)? } else { wn_of_height(xi.as_ref(), x.n, *h)? };
            let ratio = sample_ratio(&s, starred).map_or("-".to_string(), |r| frac_string(&r));
            let name = if starred { "exp wnstar" } else { "exp wn" };
            Ok(Output::new(name, cfg, &s)
                .line(format!("v = {} at h = {}, ratio {ratio}", frac_string(&s.v), s.h))
                .line(format!("witness: {}", s.witness)))
        }
        ExpCmd::Estimate { x, hs, starred } => {
            let xi = number(&f, x)?;
            let est = exponent_estimate(xi.as_ref(), x.n, &list::<u32>(hs)?, *starred)?;
            let mut t = Table::new("estimate", &["h", "v", "ratio", "running", "witness"]);
            for r in &est.rows {
                let opt = |o: &Option<ffd::report::Exponent>| o.map_or("-".to_string(), |v| frac_string(&v));
                t.push(vec![
                    r.sample.h.to_string(),
                    frac_string(&r.sample.v),
                    opt(&r.ratio),
                    opt(&r.running),
                    r.sample.witness.to_string(),
                ]);
            }
            Ok(Output::new("exp estimate", cfg, &est).table(t))
        }
    }
}

fn word_spec(w: &WordArgs) -> Result<GeneratorSpec> {
    if let Some(s) = &w.spec {
        return Ok(GeneratorSpec::parse(s)?);
    }
    let kind = w.kind.as_deref().ok_or_else(|| anyhow!("give --spec or --type"))?;
    let get = |o: &Option<String>, d: &str| o.clone().unwrap_or_else(|| d.to_string());
    let need = |o: &Option<String>, name: &str| o.clone().ok_or_else(|| anyhow!("--type {kind} needs --{name}"));
    Ok(match kind {
        "main4" => GeneratorSpec::Main4 { w: ratio(&need(&w.w, "w")?)?, b: get(&w.b, "b"), c: get(&w.c, "c") },
        "main5" => GeneratorSpec::Main5 {
            w: ratio(&need(&w.w, "w")?)?,
            eta: ratio(&need(&w.eta, "eta")?)?,
            b: get(&w.b, "b"),
            c: get(&w.c, "c"),
            d: get(&w.d, "d"),
        },
        "thue_morse" | "thue-morse" => GeneratorSpec::ThueMorse { a: get(&w.a, "0"), b: get(&w.b, "1") },
        "fibonacci" => GeneratorSpec::Fibonacci { a: get(&w.a, "0"), b: get(&w.b, "1") },
        other => bail!("unknown --type '{other}' (use --spec for other generators)"),
    })
}

fn word(c: &WordCmd, cfg: &Config) -> Result<Output> {
    let p = cfg.field.p;
    match c {
        WordCmd::Complexity { w, n } => {
            let x = word_spec(w)?.generate(w.length, p)?;
            let mut t = Table::new("complexity", &["n", "p(n)", "p(n)/n"]);
            let mut rows = Vec::new();
            for n in list::<usize>(n)? {
                let c = complexity(&x.symbols, n)?;
                rows.push((n, c));
                t.push(vec![n.to_string(), c.to_string(), format!("{:.4}", c as f64 / n as f64)]);
            }
            Ok(Output::new("word complexity", cfg, rows).table(t))
        }
        WordCmd::Dio { w } => {
            let x = word_spec(w)?.generate(w.length, p)?;
            let d = dio_estimate(&x.symbols)?;
            Ok(Output::new("word dio", cfg, &d).line(format!(
                "Diô = {} with |U| = {}, |V| = {}, w = {}",
                frac_string(&d.rho),
                d.witness.u.len(),
                d.witness.v.len(),
                frac_string(&d.witness.w)
            )))
        }
        WordCmd::Combi { w, kappa, n } => {
            let x = word_spec(w)?.generate(w.length, p)?;
            let mut t = Table::new(
                "combi",
                &["n", "U", "V", "w", "placement", "p(n)", "hypothesis", "checks", "failures"],
            );
            let mut all = Vec::new();
            for n in list::<usize>(n)? {
                let r = combi_factorize(&x.symbols, *kappa, n)?;
                t.push(vec![
                    n.to_string(),
                    r.witness.u.len().to_string(),
                    r.witness.v.len().to_string(),
                    frac_string(&r.witness.w),
                    format!("{:?}", r.placement).to_lowercase(),
                    r.complexity.to_string(),
                    r.hypothesis_holds.to_string(),
                    r.checks.all().to_string(),
                    r.checks.failures().join(" "),
                ]);
                all.push(r);
            }
            let mut out = Output::new("word combi", cfg, &all).table(t);
            out.passed = Some(all.iter().all(|r| r.checks.all()));
            Ok(out)
        }
        WordCmd::Gen { w } => {
            let x = word_spec(w)?.generate(w.length, p)?;
            let mut t = Table::new("symbols", &["symbol", "count", "positions"]);
            for (i, name) in x.alphabet.iter().enumerate() {
                let pos: Vec<usize> =
                    (0..x.len()).filter(|&k| x.symbols[k] == i as u32).map(|k| k + x.offset).collect();
                let shown: Vec<String> = pos.iter().take(16).map(|k| k.to_string()).collect();
                let more = if pos.len() > 16 { " …" } else { "" };
                t.push(vec![name.clone(), pos.len().to_string(), shown.join(",") + more]);
            }
            Ok(Output::new("word gen", cfg, json!({ "offset": x.offset, "alphabet": x.alphabet, "symbols": x.symbols }))
                .line(x.to_string())
                .table(t))
        }
    }
}

fn algebraic(f: &Fq, s: &Option<String>, branch: usize) -> Result<Option<AlgebraicNumber>> {
    s.as_ref().map(|s| Ok(AlgebraicNumber::new(xpoly(f, s)?.min_form()?, branch)?)).transpose()
}

fn liouville(c: &LiouvilleCmd, cfg: &Config) -> Result<Output> {
    let f = cfg.fq()?;
    match c {
        LiouvilleCmd::Check { case, p_poly, q_poly, alpha, alpha_branch, beta, beta_branch } => {
            let case = LiouvilleCase::parse(case)?;
            let inputs = LiouvilleInputs {
                p: p_poly.as_ref().map(|s| xpoly(&f, s)).transpose()?,
                q: q_poly.as_ref().map(|s| xpoly(&f, s)).transpose()?,
                alpha: algebraic(&f, alpha, *alpha_branch)?,
                beta: algebraic(&f, beta, *beta_branch)?,
            };
            let r = check_liouville(case, &inputs)?;
            let rel = if case.is_upper_bound() { "<=" } else { ">=" };
            let mut out = Output::new("liouville check", cfg, &r).line(format!(
                "{}: {} {rel} {} ({}) [{}]",
                r.case,
                frac_string(&r.lhs),
                frac_string(&r.rhs),
                if r.holds { "holds" } else { "VIOLATED" },
                r.ids
            ));
            out.passed = Some(r.holds);
            Ok(out)
        }
        LiouvilleCmd::Sweep { max_height, random, random_max_height } => {
            let sc = SweepConfig {
                max_height: *max_height,
                random: *random,
                random_max_height: *random_max_height,
                seed: cfg.seed,
                precision: cfg.precision,
            };
            let mut s = liouville_sweep(&f, &sc)?;
            // wall time is not part of the reproducible output
            s.elapsed_ms = 0;
            let mut t = Table::new("cases", &["case", "checked", "violations", "min_slack", "refined"]);
            for c in &s.tallies {
                t.push(vec![
                    c.case.to_string(),
                    c.checked.to_string(),
                    c.violations.to_string(),
                    c.min_slack.map_or("-".into(), |m| frac_string(&m)),
                    c.refined.to_string(),
                ]);
            }
            let mut out = Output::new("liouville sweep", cfg, &s)
                .line(format!(
                    "{} polynomials, {} numbers, {} random pairs, {} instances",
                    s.polynomials,
                    s.numbers,
                    s.random_pairs,
                    s.total_checked()
                ))
                .table(t);
            for v in s.violations.iter().take(20) {
                out = out.line(format!("violation: {} {} vs {} [{}]", v.case, frac_string(&v.lhs), frac_string(&v.rhs), v.ids));
            }
            out.passed = Some(s.all_hold());
            Ok(out)
        }
    }
}

fn verify(c: &VerifyCmd, cfg: &Config) -> Result<Output> {
    let field = cfg.field.clone();
    let rep = match c {
        VerifyCmd::Main4 { w, b, c, jmax, tol_star, tol_gap, from } => {
            let ec = match from {
                Some(p) => read_json(p)?,
                None => {
                    let mut ec = ex::Main4Config::new(field, ratio(w)?, b, c, *jmax);
                    if let Some(t) = tol_star {
                        ec.tol_star = ratio(t)?;
                    }
                    if let Some(t) = tol_gap {
                        ec.tol_gap = ratio(t)?;
                    }
                    ec
                }
            };
            ("verify main4", ex::verify_main4(&ec)?)
        }
        VerifyCmd::Main5 { w, eta, b, c, d, jmax, tol_star, tol_gap, from } => {
            let ec = match from {
                Some(p) => read_json(p)?,
                None => {
                    let mut ec = ex::Main5Config::new(field, ratio(w)?, ratio(eta)?, b, c, d, *jmax);
                    if let Some(t) = tol_star {
                        ec.tol_star = ratio(t)?;
                    }
                    if let Some(t) = tol_gap {
                        ec.tol_gap = ratio(t)?;
                    }
                    ec
                }
            };
            ("verify main5", ex::verify_main5(&ec)?)
        }
        VerifyCmd::Main1 { w, kappa, n_list, max_deg, hs, from } => {
            let ec = match from {
                Some(p) => read_json(p)?,
                None => ex::Main1Config {
                    field,
                    word: word_spec(w)?,
                    kappa: *kappa,
                    length: w.length,
                    n_list: list(n_list)?,
                    max_deg: *max_deg,
                    hs: list(hs)?,
                },
            };
            ("verify main1", ex::verify_main1(&ec)?)
        }
        VerifyCmd::Main2 { w, from } => {
            let ec = match from {
                Some(p) => read_json(p)?,
                None => ex::Main2Config { field, word: word_spec(w)?, length: w.length },
            };
            ("verify main2", ex::verify_main2(&ec)?)
        }
        VerifyCmd::Appendix { w, n_list, kappa, slack, from } => {
            let ec = match from {
                Some(p) => read_json(p)?,
                None => ex::AppendixConfig {
                    field,
                    word: word_spec(w)?,
                    length: w.length,
                    n_list: list(n_list)?,
                    kappa: *kappa,
                    slack: ratio(slack)?,
                },
            };
            ("verify appendix", ex::appendix_digit_approx(&ec)?)
        }
        VerifyCmd::Prop57 { number, hs, from } => {
            let ec = match from {
                Some(p) => read_json(p)?,
                None => ex::Prop57Config {
                    field,
                    number: ex::NumberSpec::parse(number.as_deref().ok_or_else(|| anyhow!("give --number or --from"))?)?,
                    hs: list(hs)?,
                },
            };
            ("verify prop57", ex::verify_prop_main7(&ec)?)
        }
    };
    Ok(Output::report(rep.0, rep.1))
}
