//! Command-line parsing and the command implementations.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use reducta::coeffring::{Coefficient, Rat};
use reducta::linalg::{ring_cauchy, ring_cauchy_det, ring_cauchy_inverse, ring_residue_identity};
use reducta::projector::{Oracle, ProjectorConfig};
use reducta::stability::{check_stabilization, cut, cut_preimages};
use reducta::weights::{GenOrder, GeneratorId, Weight};
use reducta::zn::{
    build_family, build_relations, central_elements, derive_rules_with, epsilon, inversion_rhs, longest_closed_form,
    normal_order, normal_order_with, omega, oracle_normal_form, reduced_word, to_plain, tring_in_t, verify_weight_block,
    word_weight, zhelobenko, zhelobenko_inverse, zhelobenko_longest, zhelobenko_word, Family, NormalOrderOptions,
    RuleSet, Strategy, ZElement,
};
use reducta::{Error, Result};
use serde::Serialize;

use crate::expr::parse_element;
use crate::output::{render, to_json, to_latex, ElementJson, Format};

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification check fails or a computation errors.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed command lines and expressions.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "reducta", version, about = "Exact computations in the diagonal reduction algebra Z_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OrderArg {
    /// The standard order.
    Not4,
    /// The alternate tie-breaking order.
    Not4p,
}

impl From<OrderArg> for GenOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Not4 => GenOrder::Standard,
            OrderArg::Not4p => GenOrder::Alternate,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Engine {
    /// Extremal projector evaluation.
    Oracle,
    /// Normal ordering with the derived rules.
    Rewrite,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    Relations,
    Pbw,
    Zhelobenko,
    Central,
    Cauchy,
    Stability,
    WeightBlocks,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct FormatArgs {
    /// LaTeX output.
    #[arg(long, conflicts_with = "json")]
    pub latex: bool,
    /// JSON output.
    #[arg(long)]
    pub json: bool,
}

impl FormatArgs {
    fn format(self) -> Format {
        if self.latex {
            Format::Latex
        } else if self.json {
            Format::Json
        } else {
            Format::Text
        }
    }
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    Family::from_label(s).ok_or_else(|| format!("unknown family {s:?}; expected 1, 2, 3a, 3b, 4a or 4b"))
}

fn parse_rank(s: &str) -> std::result::Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("{s:?} is not a rank"))?;
    if (1..=8).contains(&n) {
        Ok(n)
    } else {
        Err(format!("rank {n} is outside 1..=8"))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal-orders an expression.
    Normalize {
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_enum, default_value = "not4")]
        order: OrderArg,
        expr: String,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Multiplies two expressions and prints the ordered result.
    Multiply {
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_enum, default_value = "rewrite")]
        engine: Engine,
        left: String,
        right: String,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Prints the instances of one relation family.
    Relations {
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Prints the ordering rules derived from the oracle.
    Rules {
        #[arg(long, value_parser = parse_rank)]
        n: usize,
        /// Rules for the reversed order.
        #[arg(long)]
        reversed: bool,
        #[command(flatten)]
        format: FormatArgs,
    },
}

/// Parses `args` (including the program name), runs the command and writes
/// its output to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out) {
        Ok(status) => status,
        Err(e @ (Error::Syntax { .. } | Error::IndexOutOfRange(_))) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Syntax {
        pos: 0,
        msg: format!("output failed: {e}"),
    }
}

fn oracle(n: usize) -> Result<Oracle> {
    Oracle::new(ProjectorConfig::new(n))
}

fn rules_for(n: usize, order: GenOrder) -> Result<RuleSet> {
    derive_rules_with(&oracle(n)?, order)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Normalize { n, order, expr, format } => {
            let x = to_plain(&parse_element(&expr, n)?);
            let y = normal_order(&x, &rules_for(n, order.into())?)?;
            writeln!(out, "{}", render(&y, format.format())).map_err(io)?;
        }
        Command::Multiply {
            n,
            engine,
            left,
            right,
            format,
        } => {
            let a = to_plain(&parse_element(&left, n)?);
            let b = to_plain(&parse_element(&right, n)?);
            let y = multiply(n, engine, &a, &b)?;
            writeln!(out, "{}", render(&y, format.format())).map_err(io)?;
        }
        Command::Relations { n, family, format } => {
            let rels = build_family(n, family);
            match format.format() {
                Format::Json => {
                    let items: Vec<RelationJson> = rels
                        .iter()
                        .map(|r| RelationJson {
                            family: r.family.label().to_string(),
                            indices: r.indices.clone(),
                            body: to_json(&r.body),
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&items).expect("serializable")).map_err(io)?;
                }
                Format::Latex => {
                    for r in &rels {
                        writeln!(out, "{} = 0", to_latex(&r.body)).map_err(io)?;
                    }
                }
                Format::Text => {
                    for r in &rels {
                        writeln!(out, "{}", r.body).map_err(io)?;
                    }
                }
            }
        }
        Command::Rules { n, reversed, format } => {
            let order = if reversed { GenOrder::Reversed } else { GenOrder::Standard };
            let rules = rules_for(n, order)?;
            let fmt = format.format();
            let mut items = Vec::new();
            for rule in rules.iter() {
                let lhs = ZElement::word(n, &[rule.lhs.0, rule.lhs.1]);
                match fmt {
                    Format::Json => items.push(RuleJson {
                        lhs: to_json(&lhs),
                        rhs: to_json(&rule.rhs),
                    }),
                    _ => writeln!(out, "{} = {}", render(&lhs, fmt), render(&rule.rhs, fmt)).map_err(io)?,
                }
            }
            if fmt == Format::Json {
                writeln!(out, "{}", serde_json::to_string_pretty(&items).expect("serializable")).map_err(io)?;
            }
        }
        Command::Verify { n, suite, seed, jobs } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Syntax {
                    pos: 0,
                    msg: format!("thread pool: {e}"),
                })?;
            let report = pool.install(|| run_suite(n, suite, seed))?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                writeln!(out, "FAIL {}", c.name).map_err(io)?;
            }
            writeln!(out, "{}", report.summary()).map_err(io)?;
            return Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RelationJson {
    family: String,
    indices: Vec<usize>,
    body: ElementJson,
}

#[derive(Serialize)]
struct RuleJson {
    lhs: ElementJson,
    rhs: ElementJson,
}

/// `a ∗ b` in ordered form by either engine.
pub fn multiply(n: usize, engine: Engine, a: &ZElement, b: &ZElement) -> Result<ZElement> {
    let product = a.mul(b);
    match engine {
        Engine::Oracle => oracle_normal_form(&oracle(n)?, &product, GenOrder::Standard),
        Engine::Rewrite => normal_order(&product, &rules_for(n, GenOrder::Standard)?),
    }
}

/// One named check of a verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    /// What each check establishes, e.g. "relations normal-order to 0".
    pub claim: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let tag = if self.passed() { "OK" } else { "FAIL" };
        format!("{tag}: {ok}/{} {}", self.checks.len(), self.claim)
    }
}

fn gens(n: usize) -> Vec<GeneratorId> {
    GeneratorId::all(n).collect()
}

/// Runs one suite on the current rayon pool.
pub fn run_suite(n: usize, suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (claim, checks) = match suite {
        Suite::Relations => {
            let rules = rules_for(n, GenOrder::Standard)?;
            let checks = build_relations(n)
                .par_iter()
                .map(|r| {
                    let ok = normal_order(&r.plain(), &rules).is_ok_and(|z| z.is_zero());
                    Ok(Check::new(format!("family {} {:?} line {}", r.family, r.indices, r.line), ok))
                })
                .collect::<Result<Vec<_>>>()?;
            ("relations normal-order to 0", checks)
        }
        Suite::Pbw => {
            let rules = rules_for(n, GenOrder::Standard)?;
            let g = gens(n);
            let mut words: Vec<Vec<GeneratorId>> = Vec::new();
            for &a in &g {
                for &b in &g {
                    for &c in &g {
                        words.push(vec![a, b, c]);
                    }
                }
            }
            for _ in 0..50 {
                words.push((0..4).map(|_| g[rng.gen_range(0..g.len())]).collect());
            }
            let checks = words
                .par_iter()
                .map(|w| {
                    let x = ZElement::word(n, w);
                    let left = normal_order_with(&x, &rules, NormalOrderOptions::default())?.0;
                    let right = normal_order_with(&x, &rules, NormalOrderOptions::default().with_strategy(Strategy::Rightmost))?.0;
                    let name: Vec<String> = w.iter().map(ToString::to_string).collect();
                    Ok(Check::new(name.join("*"), left == right))
                })
                .collect::<Result<Vec<_>>>()?;
            ("words agree under leftmost and rightmost rewriting", checks)
        }
        Suite::Zhelobenko => ("Zhelobenko identities hold", zhelobenko_checks(n)),
        Suite::Central => {
            let rules = rules_for(n, GenOrder::Standard)?;
            let central = central_elements(n);
            let pairs: Vec<(usize, GeneratorId)> = (0..central.len()).flat_map(|k| gens(n).into_iter().map(move |g| (k, g))).collect();
            let checks = pairs
                .par_iter()
                .map(|&(k, g)| {
                    let x = ZElement::word(n, &[g]);
                    let c = &central[k];
                    let ok = normal_order(&c.mul(&x).sub(&x.mul(c)), &rules)?.is_zero();
                    Ok(Check::new(format!("[{c}, {g}]"), ok))
                })
                .collect::<Result<Vec<_>>>()?;
            ("commutators with central elements vanish", checks)
        }
        Suite::Cauchy => ("Cauchy identities hold", cauchy_checks(n, &mut rng)),
        Suite::Stability => {
            let report = check_stabilization(n, &ProjectorConfig::new(n), &ProjectorConfig::new(n + 1))?;
            let mut checks: Vec<Check> = report
                .pairs
                .iter()
                .map(|p| Check::new(format!("{} {} in span", p.left, p.right), true))
                .collect();
            let pre = cut_preimages(&build_relations(n + 1));
            for rel in build_relations(n) {
                let hits = pre.get(&rel.body.to_string()).map(Vec::as_slice).unwrap_or_default();
                let ok = hits.len() == 1 && cut(&hits[0]).is_ok_and(|c| c.body == rel.body);
                checks.push(Check::new(format!("cut preimage of family {} {:?}", rel.family, rel.indices), ok));
            }
            ("stabilization checks hold", checks)
        }
        Suite::WeightBlocks => {
            let rules = rules_for(n, GenOrder::Standard)?;
            let rels = build_relations(n);
            let mut weights = BTreeSet::new();
            for a in gens(n) {
                for b in gens(n) {
                    if GenOrder::Standard.lt(b, a) {
                        weights.insert(word_weight(n, &[a, b]));
                    }
                }
            }
            let weights: Vec<Weight> = weights.into_iter().collect();
            let checks = weights
                .par_iter()
                .map(|w| {
                    let ok = verify_weight_block(w, &rels, &rules).is_ok_and(|r| r.passed());
                    Check::new(format!("weight block {w}"), ok)
                })
                .collect();
            ("weight blocks reproduce the ordering rules", checks)
        }
    };
    Ok(SuiteReport { claim, checks })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn zhelobenko_checks(n: usize) -> Vec<Check> {
    let mut tasks: Vec<(String, Box<dyn Fn() -> bool + Send + Sync>)> = Vec::new();
    for g in gens(n) {
        let x = ZElement::word(n, &[g]);
        for i in 1..n {
            let y = x.clone();
            tasks.push((format!("q_{i} q_{i}^-1 on {g}"), Box::new(move || zhelobenko_inverse(i, &zhelobenko(i, &y)) == y)));
            tasks.push((format!("inversion q_{i}^2 on {g}"), Box::new(move || zhelobenko_word(&[i, i], &ZElement::word(n, &[g])) == inversion_rhs(n, i, g))));
            let y = x.clone();
            tasks.push((format!("omega q_{i} = q_{} omega on {g}", n - i), Box::new(move || omega(&zhelobenko(i, &y)) == zhelobenko(n - i, &omega(&y)))));
            let y = x.clone();
            tasks.push((format!("epsilon q_{i} = q_{i}^-1 epsilon on {g}"), Box::new(move || epsilon(&zhelobenko(i, &y)) == zhelobenko_inverse(i, &epsilon(&y)))));
            if i + 1 < n {
                let y = x.clone();
                tasks.push((format!("braid {i},{} on {g}", i + 1), Box::new(move || zhelobenko_word(&[i, i + 1, i], &y) == zhelobenko_word(&[i + 1, i, i + 1], &y))));
            }
        }
        if !g.is_cartan() {
            let y = x.clone();
            tasks.push((format!("longest element closed form on {g}"), Box::new(move || zhelobenko_longest(&y) == longest_closed_form(n, g.i as usize, g.j as usize))));
        }
    }
    for sigma in permutations(n) {
        tasks.push((
            format!("q_sigma on tring for sigma = {sigma:?}"),
            Box::new(move || {
                let word = reduced_word(&sigma);
                (1..=n).all(|l| zhelobenko_word(&word, &tring_in_t(n, l)) == tring_in_t(n, sigma[l - 1]))
            }),
        ));
    }
    tasks.par_iter().map(|(name, f)| Check::new(name.clone(), f())).collect()
}

fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    (0..n)
        .map(|_| Rat::new(BigInt::from(rng.gen_range(-60..=60)), BigInt::from(rng.gen_range(1..=12))))
        .collect()
}

fn cauchy_checks(n: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let a = ring_cauchy(n);
    let mut checks = vec![Check::new("determinant closed form", a.det() == ring_cauchy_det(n))];
    let inv = ring_cauchy_inverse(n);
    checks.push(Check::new("inverse closed form", a.mul(&inv).is_identity() && inv.mul(&a).is_identity()));
    let sides: Vec<(usize, usize, Coefficient, Coefficient)> = (1..=n)
        .flat_map(|i| (1..=n).map(move |k| (i, k)))
        .map(|(i, k)| {
            let (l, r) = ring_residue_identity(n, i, k);
            (i, k, l, r)
        })
        .collect();
    let mut points = 0;
    while points < 100 {
        let p = random_point(n, rng);
        let values: Result<Vec<(Rat, Rat)>> = sides.iter().map(|(_, _, l, r)| Ok((l.evaluate(&p)?, r.evaluate(&p)?))).collect();
        // points on a pole are resampled
        let Ok(values) = values else { continue };
        points += 1;
        let bad: Vec<String> = sides
            .iter()
            .zip(values)
            .filter(|(_, (l, r))| l != r)
            .map(|((i, k, _, _), _)| format!("({i},{k})"))
            .collect();
        let label = p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        checks.push(Check::new(format!("residue identity at ({label}) {}", bad.join(" ")), bad.is_empty()));
    }
    checks
}
