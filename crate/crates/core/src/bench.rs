//! Experiment harness: generates seeded instances from a TOML grid, runs the
//! exact solver and heuristics on each, and writes one CSV row per
//! (instance, D, algorithm).

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cascade::cascade;
use crate::error::{Error, Result};
use crate::exact::{self, Method};
use crate::generators;
use crate::heuristics::{self, SaParams, DEFAULT_TRIALS};
use crate::netmodel::InterdependentNetwork;

pub const CSV_HEADER: &str = "instance_id,family,n,k1,k2,D,algorithm,removal_size,runtime_ms,seed";

/// Largest `n` for which exact rows are produced unless overridden.
pub const DEFAULT_EXACT_MAX_N: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Type1,
    Type2,
    Regular,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Type1 => "type1",
            Family::Type2 => "type2",
            Family::Regular => "regular",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Count(u64),
    List(Vec<u64>),
}

impl SeedSpec {
    pub fn seeds(&self) -> Vec<u64> {
        match self {
            SeedSpec::Count(c) => (0..*c).collect(),
            SeedSpec::List(l) => l.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaConfig {
    pub t0: Option<f64>,
    pub tf: Option<f64>,
    pub r: Option<f64>,
    #[serde(rename = "L")]
    pub inner_loop: Option<usize>,
}

impl SaConfig {
    pub fn params(&self, seed: u64) -> SaParams {
        let d = SaParams::default();
        SaParams {
            t_initial: self.t0.unwrap_or(d.t_initial),
            t_final: self.tf.unwrap_or(d.t_final),
            r: self.r.unwrap_or(d.r),
            inner_loop: self.inner_loop.or(d.inner_loop),
            seed,
        }
    }
}

/// One block of the parameter grid. `k` is used by `type1` and `regular`;
/// `type2` takes the product of `k1` and `k2`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    pub n: Vec<usize>,
    #[serde(default)]
    pub k: Vec<f64>,
    #[serde(default)]
    pub k1: Vec<f64>,
    #[serde(default)]
    pub k2: Vec<f64>,
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    pub algorithms: Vec<String>,
    pub seeds: Option<SeedSpec>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub sa: SaConfig,
    pub exact_max_n: Option<usize>,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub seeds: Option<SeedSpec>,
    #[serde(rename = "experiment")]
    pub experiments: Vec<ExperimentConfig>,
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |i: usize, m: String| Err(Error::Config(format!("experiment {}: {m}", i + 1)));
        if self.experiments.is_empty() {
            return Err(Error::Config("no experiments listed".into()));
        }
        for (i, e) in self.experiments.iter().enumerate() {
            if e.algorithms.is_empty() {
                return err(i, "empty algorithm list".into());
            }
            for a in &e.algorithms {
                match Method::parse(a) {
                    None | Some(Method::Bnb) => return err(i, format!("unknown algorithm `{a}`")),
                    Some(_) => {}
                }
            }
            if e.n.is_empty() || e.d.is_empty() {
                return err(i, "n and D must be non-empty".into());
            }
            if e.trials == 0 {
                return err(i, "trials must be positive".into());
            }
            match e.family {
                Family::Type1 | Family::Regular if e.k.is_empty() => {
                    return err(i, "k must be non-empty".into())
                }
                Family::Type2 if e.k1.is_empty() || e.k2.is_empty() => {
                    return err(i, "type2 needs non-empty k1 and k2".into())
                }
                _ => {}
            }
            if e.family == Family::Regular && e.k.iter().any(|k| k.fract() != 0.0) {
                return err(i, "regular degrees must be integers".into());
            }
            if e.seeds.is_none() && self.seeds.is_none() {
                return err(i, "no seeds given".into());
            }
            e.sa.params(0).validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub instance_id: String,
    pub family: String,
    pub n: usize,
    pub k1: f64,
    pub k2: f64,
    #[serde(rename = "D")]
    pub d: usize,
    pub algorithm: String,
    pub removal_size: usize,
    pub runtime_ms: Option<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
struct Job {
    family: Family,
    n: usize,
    k1: f64,
    k2: f64,
    seed: u64,
    exp: usize,
}

impl Job {
    fn instance_id(&self) -> String {
        match self.family {
            Family::Type2 => format!(
                "{}-n{}-k{}_{}-s{}",
                self.family.name(),
                self.n,
                self.k1,
                self.k2,
                self.seed
            ),
            _ => format!(
                "{}-n{}-k{}-s{}",
                self.family.name(),
                self.n,
                self.k1,
                self.seed
            ),
        }
    }

    fn network(&self) -> Result<InterdependentNetwork> {
        match self.family {
            Family::Type1 => generators::gen_type1(self.n, self.k1, self.seed),
            Family::Type2 => generators::gen_type2(self.n, self.k1, self.k2, self.seed),
            Family::Regular => generators::gen_regular(self.n, self.k1 as usize, self.seed),
        }
    }
}

fn jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for (exp, e) in cfg.experiments.iter().enumerate() {
        let seeds = e
            .seeds
            .as_ref()
            .or(cfg.seeds.as_ref())
            .map(SeedSpec::seeds)
            .unwrap_or_default();
        let ks: Vec<(f64, f64)> = match e.family {
            Family::Type2 => {
                e.k1.iter()
                    .flat_map(|&a| e.k2.iter().map(move |&b| (a, b)))
                    .collect()
            }
            _ => e.k.iter().map(|&k| (k, k)).collect(),
        };
        for &n in &e.n {
            for &(k1, k2) in &ks {
                for &seed in &seeds {
                    out.push(Job {
                        family: e.family,
                        n,
                        k1,
                        k2,
                        seed,
                        exp,
                    });
                }
            }
        }
    }
    out
}

fn run_job(job: &Job, e: &ExperimentConfig, timing: bool) -> Result<Vec<ExperimentRow>> {
    let net = job.network()?;
    let id = job.instance_id();
    let exact_max = e.exact_max_n.unwrap_or(DEFAULT_EXACT_MAX_N);
    let mut rows = Vec::new();
    for &d in e.d.iter().filter(|&&d| d <= net.n_b()) {
        for name in &e.algorithms {
            let method = Method::parse(name).expect("validated");
            let start = Instant::now();
            let (size, removal) = match method {
                Method::Exact => {
                    if job.n > exact_max {
                        continue;
                    }
                    let r = exact::mr_exact(&net, d)?;
                    (r.value, r.witness)
                }
                Method::Greedy => {
                    let r = heuristics::greedy(&net, d, job.seed)?;
                    (r.size, r.removal)
                }
                Method::Rounding => {
                    let r = heuristics::randomized_rounding(&net, d, job.seed, e.trials)?;
                    (r.size, r.removal)
                }
                Method::Sa1 => {
                    let r = heuristics::sa1(&net, d, &e.sa.params(job.seed), None)?;
                    (r.size, r.removal)
                }
                Method::Sa2 => {
                    let r = heuristics::sa2(&net, d, &e.sa.params(job.seed), None)?;
                    (r.size, r.removal)
                }
                Method::Bnb => unreachable!("rejected by validation"),
            };
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let failed = cascade(&net, &removal)?.failed_b.len();
            if failed < d || removal.len() != size {
                return Err(Error::InvalidNetwork(format!(
                    "{id}: {} result for D={d} does not verify ({failed} failures)",
                    method.name()
                )));
            }
            rows.push(ExperimentRow {
                instance_id: id.clone(),
                family: job.family.name().to_string(),
                n: job.n,
                k1: job.k1,
                k2: job.k2,
                d,
                algorithm: method.name().to_string(),
                removal_size: size,
                runtime_ms: timing.then_some(elapsed),
                seed: job.seed,
            });
        }
    }
    Ok(rows)
}

/// Runs the whole grid in parallel. Rows come back in grid order (experiment,
/// n, k, seed, D, algorithm) regardless of scheduling. Runtimes are recorded
/// only when `timing` is set, so that untimed output is reproducible byte for byte.
pub fn run_suite(cfg: &SuiteConfig, timing: bool) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let jobs = jobs(cfg);
    let per_job: Vec<Result<Vec<ExperimentRow>>> = jobs
        .par_iter()
        .map(|j| run_job(j, &cfg.experiments[j.exp], timing))
        .collect();
    let mut rows = Vec::new();
    for r in per_job {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Csv(e.to_string()))?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))
            .map_err(|e| Error::Csv(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Csv(format!(
            "unexpected header, want `{CSV_HEADER}`"
        )));
    }
    rdr.deserialize()
        .map(|r| r.map_err(|e| Error::Csv(e.to_string())))
        .collect()
}

/// Aggregate over one (family, n, k1, k2, D, algorithm) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub family: String,
    pub n: usize,
    pub k1: f64,
    pub k2: f64,
    #[serde(rename = "D")]
    pub d: usize,
    pub algorithm: String,
    pub count: usize,
    pub mean_removal: f64,
    pub mean_runtime_ms: Option<f64>,
    /// Mean of `removal / exact` over rows whose instance has an exact row.
    pub mean_gap: Option<f64>,
}

#[derive(Default)]
struct Acc {
    count: usize,
    removal: f64,
    runtime: f64,
    runtimes: usize,
    gap: f64,
    gaps: usize,
}

fn algorithm_rank(name: &str) -> usize {
    Method::parse(name).map_or(usize::MAX, |m| m as usize)
}

pub fn summarize(rows: &[ExperimentRow]) -> Vec<SummaryRow> {
    let exact: BTreeMap<(&str, usize), usize> = rows
        .iter()
        .filter(|r| r.algorithm == Method::Exact.name())
        .map(|r| ((r.instance_id.as_str(), r.d), r.removal_size))
        .collect();
    let mut cells: BTreeMap<(String, usize, u64, u64, usize, usize, String), Acc> = BTreeMap::new();
    for r in rows {
        let key = (
            r.family.clone(),
            r.n,
            r.k1.to_bits(),
            r.k2.to_bits(),
            r.d,
            algorithm_rank(&r.algorithm),
            r.algorithm.clone(),
        );
        let acc = cells.entry(key).or_default();
        acc.count += 1;
        acc.removal += r.removal_size as f64;
        if let Some(t) = r.runtime_ms {
            acc.runtime += t;
            acc.runtimes += 1;
        }
        if let Some(&opt) = exact.get(&(r.instance_id.as_str(), r.d)) {
            // D >= 1 needs at least one removal, so opt > 0
            if opt > 0 {
                acc.gap += r.removal_size as f64 / opt as f64;
                acc.gaps += 1;
            }
        }
    }
    let mut out: Vec<SummaryRow> = cells
        .into_iter()
        .map(|((family, n, k1, k2, d, _, algorithm), a)| SummaryRow {
            family,
            n,
            k1: f64::from_bits(k1),
            k2: f64::from_bits(k2),
            d,
            algorithm,
            count: a.count,
            mean_removal: a.removal / a.count as f64,
            mean_runtime_ms: (a.runtimes > 0).then(|| a.runtime / a.runtimes as f64),
            mean_gap: (a.gaps > 0).then(|| a.gap / a.gaps as f64),
        })
        .collect();
    // bit patterns of positive floats sort numerically; keep explicit for clarity
    out.sort_by(|x, y| {
        (&x.family, x.n)
            .cmp(&(&y.family, y.n))
            .then(x.k1.total_cmp(&y.k1))
            .then(x.k2.total_cmp(&y.k2))
            .then(x.d.cmp(&y.d))
            .then(algorithm_rank(&x.algorithm).cmp(&algorithm_rank(&y.algorithm)))
    });
    out
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Csv(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
seeds = 2
[[experiment]]
family = "type1"
n = [10]
k = [1, 2]
D = [1, 2, 3]
algorithms = ["exact", "greedy", "rounding", "sa1", "sa2"]
trials = 5
sa = { tf = 0.1, r = 0.7 }
"#;

    #[test]
    fn small_suite_is_complete_and_stable() {
        let cfg = SuiteConfig::from_toml(SMALL).unwrap();
        let rows = run_suite(&cfg, false).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 3 * 5);
        let mut a = Vec::new();
        write_csv(&rows, &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(&run_suite(&cfg, false).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(read_csv(text.as_bytes()).unwrap(), rows);
        for s in summarize(&rows) {
            assert!(s.mean_gap.unwrap() >= 1.0);
        }
    }

    #[test]
    fn config_errors() {
        let no_alg = SMALL.replace(r#"["exact", "greedy", "rounding", "sa1", "sa2"]"#, "[]");
        assert!(matches!(
            SuiteConfig::from_toml(&no_alg),
            Err(Error::Config(_))
        ));
        let bad_alg = SMALL.replace(r#""exact", "#, r#""magic", "#);
        assert!(SuiteConfig::from_toml(&bad_alg).is_err());
        assert!(SuiteConfig::from_toml("seeds = 1").is_err());
    }

    #[test]
    fn summary_gap_is_one_for_exact_rows() {
        let row = |alg: &str, size| ExperimentRow {
            instance_id: "x".into(),
            family: "type1".into(),
            n: 5,
            k1: 1.0,
            k2: 1.0,
            d: 2,
            algorithm: alg.into(),
            removal_size: size,
            runtime_ms: None,
            seed: 0,
        };
        let s = summarize(&[row("exact", 2), row("greedy", 2), row("sa1", 3)]);
        let gaps: Vec<f64> = s.iter().map(|r| r.mean_gap.unwrap()).collect();
        assert_eq!(gaps, vec![1.0, 1.0, 1.5]);
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
