//! Batch experiments. Sample `i` uses seed `seed + i`, so rows do not depend
//! on how samples are spread over threads.

use std::time::Instant;

use opsys_core::constructions::two_clique;
use opsys_core::instances::random_diagonal_system;
use opsys_core::random::SeededRng;
use opsys_core::{diagonal_route, find_clique_or_anticlique, random_system, Certificate, SearchParams, Tolerance};
use rayon::prelude::*;
use serde::Serialize;

/// Inclusive integer range parsed from `a` or `a:b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl SizeRange {
    pub fn single(v: usize) -> Self {
        SizeRange { lo: v, hi: v }
    }

    fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// The `i`-th value, cycling through the range.
    fn cycle(&self, i: usize) -> usize {
        self.lo + i % self.len()
    }

    fn clamp(&self, lo: usize, hi: usize) -> Option<SizeRange> {
        let r = SizeRange { lo: self.lo.max(lo), hi: self.hi.min(hi) };
        (r.lo <= r.hi).then_some(r)
    }
}

impl std::str::FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let r = match s.split_once(':') {
            Some((a, b)) => SizeRange { lo: parse(a)?, hi: parse(b)? },
            None => SizeRange::single(parse(s)?),
        };
        if r.lo > r.hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    DichotomyScan,
    TwoCliqueRate,
    DiagonalTrichotomy,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: SizeRange,
    pub k: SizeRange,
    /// Defaults per experiment when absent.
    pub dim: Option<SizeRange>,
    pub samples: usize,
    pub seed: u64,
    pub timing: bool,
    pub tol: Tolerance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub seed: u64,
    pub outcome: String,
    pub compressed_dim: Option<usize>,
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: usize,
    pub clique: usize,
    pub anticlique: usize,
    pub neither: usize,
    pub errors: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Self {
        let mut s = Summary { rows: rows.len(), ..Summary::default() };
        for r in rows {
            match r.outcome.as_str() {
                "clique" => s.clique += 1,
                "anticlique" => s.anticlique += 1,
                "neither" => s.neither += 1,
                _ => s.errors += 1,
            }
        }
        s
    }

    pub fn success_rate(&self) -> f64 {
        if self.rows == 0 {
            return 0.0;
        }
        (self.clique + self.anticlique) as f64 / self.rows as f64
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pct = |x: usize| if self.rows == 0 { 0.0 } else { 100.0 * x as f64 / self.rows as f64 };
        write!(
            f,
            "{} rows: {} clique, {} anticlique, {} neither ({:.1}%), {} errors; success {:.1}%",
            self.rows,
            self.clique,
            self.anticlique,
            self.neither,
            pct(self.neither),
            self.errors,
            100.0 * self.success_rate()
        )
    }
}

/// One sample's parameters before running.
struct Sample {
    n: usize,
    k: usize,
    dim: usize,
    seed: u64,
}

impl ExperimentConfig {
    fn sample(&self, i: usize) -> Result<Sample, String> {
        let seed = self.seed.wrapping_add(i as u64);
        let n = self.n.cycle(i);
        let k = self.k.cycle(i / self.n.len());
        let mut rng = SeededRng::derive(seed, 0xe4);
        let dims = match self.experiment {
            Experiment::DichotomyScan => self.dim.unwrap_or(SizeRange { lo: 1, hi: n * n }).clamp(1, n * n),
            Experiment::TwoCliqueRate => self.dim.unwrap_or(SizeRange { lo: 4, hi: n * n }).clamp(4, n * n),
            Experiment::DiagonalTrichotomy => self.dim.unwrap_or(SizeRange { lo: 1, hi: n }).clamp(1, n),
        }
        .ok_or_else(|| format!("no admissible dimension for n = {n}"))?;
        let dim = dims.lo + rng.below(dims.len());
        Ok(Sample { n, k, dim, seed })
    }

    fn run_one(&self, s: &Sample) -> (String, Option<usize>) {
        let result = match self.experiment {
            Experiment::DichotomyScan => random_system(s.n, s.dim, s.seed).and_then(|v| {
                let params = SearchParams { seed: s.seed, ..SearchParams::desk_scale(s.k) };
                find_clique_or_anticlique(&v, s.k, &params, &self.tol).map(|c| (v, c))
            }),
            Experiment::TwoCliqueRate => {
                random_system(s.n, s.dim, s.seed).and_then(|v| two_clique(&v, s.seed, &self.tol).map(|c| (v, c)))
            }
            Experiment::DiagonalTrichotomy => random_diagonal_system(s.n, s.dim, s.seed)
                .and_then(|v| diagonal_route(&v, s.k, s.seed, &self.tol).map(|c| (v, c))),
        };
        match result {
            Ok((v, cert)) => verified(&v, &cert),
            Err(e) => (format!("error: {e}"), None),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 {
            return Err("samples must be positive".into());
        }
        if self.n.lo == 0 || self.k.lo == 0 {
            return Err("n and k must be positive".into());
        }
        if self.k.hi > self.n.lo {
            return Err(format!("k = {} exceeds n = {}", self.k.hi, self.n.lo));
        }
        if self.experiment == Experiment::TwoCliqueRate && (self.k != SizeRange::single(2) || self.n.lo < 2) {
            return Err("two-clique-rate needs k = 2 and n >= 2".into());
        }
        Ok(())
    }

    /// Runs all samples in parallel; rows come back in sample order.
    pub fn run(&self) -> Result<Vec<Row>, String> {
        self.validate()?;
        let samples = (0..self.samples).map(|i| self.sample(i)).collect::<Result<Vec<_>, _>>()?;
        Ok(samples
            .par_iter()
            .map(|s| {
                let start = Instant::now();
                let (outcome, compressed_dim) = self.run_one(s);
                let ms = start.elapsed().as_millis() as u64;
                Row {
                    n: s.n,
                    k: s.k,
                    dim: s.dim,
                    seed: s.seed,
                    outcome,
                    compressed_dim,
                    wall_time_ms: self.timing.then_some(ms),
                }
            })
            .collect())
    }
}

/// Outcome label after re-certifying from scratch; a certificate that does
/// not survive is reported as `unverified`.
fn verified(v: &opsys_core::OperatorSystem, cert: &Certificate) -> (String, Option<usize>) {
    if !cert.is_success() {
        return (cert.kind.as_str().to_string(), Some(cert.compressed_dim));
    }
    match cert.recheck(v) {
        Ok(again) if again.kind == cert.kind && again.compressed_dim == cert.compressed_dim => {
            (cert.kind.as_str().to_string(), Some(cert.compressed_dim))
        }
        _ => ("unverified".to_string(), Some(cert.compressed_dim)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(experiment: Experiment, n: &str, k: &str, samples: usize) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            n: n.parse().unwrap(),
            k: k.parse().unwrap(),
            dim: None,
            samples,
            seed: 11,
            timing: false,
            tol: Tolerance::default(),
        }
    }

    #[test]
    fn parses_ranges() {
        assert_eq!("3:10".parse::<SizeRange>().unwrap(), SizeRange { lo: 3, hi: 10 });
        assert_eq!("7".parse::<SizeRange>().unwrap(), SizeRange::single(7));
        assert!("5:2".parse::<SizeRange>().is_err());
        assert!("x".parse::<SizeRange>().is_err());
    }

    #[test]
    fn rows_are_reproducible() {
        let c = config(Experiment::DiagonalTrichotomy, "7", "2", 40);
        let a = c.run().unwrap();
        let b = c.run().unwrap();
        assert_eq!(a, b);
        assert_eq!(Summary::of(&a).neither, 0);
        assert_eq!(a[3].seed, 14);
    }

    #[test]
    fn two_clique_rate_small() {
        let rows = config(Experiment::TwoCliqueRate, "3:5", "2", 9).run().unwrap();
        let s = Summary::of(&rows);
        assert_eq!(s.clique, 9, "{s}");
        assert!(rows.iter().all(|r| r.dim >= 4));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(config(Experiment::DichotomyScan, "2", "3", 1).run().is_err());
        assert!(config(Experiment::TwoCliqueRate, "4", "3", 1).run().is_err());
    }
}
