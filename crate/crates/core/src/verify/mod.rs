//! Verification suites: each identity is checked exactly on a grid of weights
//! and reported as one line per case.

pub mod sample;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{WeightData, DEFAULT_BUDGET};
use crate::decimal::to_decimal;
use crate::error::{Error, Result};
use crate::polyalg::MatrixPolynomial;
use crate::scalar::{ExactScalar, GaussRat};

pub use sample::{cayley_orthogonal, random_invertible, rng_for};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Pluriharmonic,
    Iinv,
    Igamma,
    Wi,
    P0,
    Zw1,
    Cr,
    SdK,
    WfdMain,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Pluriharmonic,
        Suite::Iinv,
        Suite::Igamma,
        Suite::Wi,
        Suite::P0,
        Suite::Zw1,
        Suite::Cr,
        Suite::SdK,
        Suite::WfdMain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pluriharmonic => "pluriharmonic",
            Suite::Iinv => "iinv",
            Suite::Igamma => "igamma",
            Suite::Wi => "wi",
            Suite::P0 => "p0",
            Suite::Zw1 => "zw1",
            Suite::Cr => "cr",
            Suite::SdK => "sd-k",
            Suite::WfdMain => "wfd-main",
        }
    }

    /// `(max n, max k − n, max Σ(t_j − k))` when no bounds are given.
    pub fn default_bounds(self) -> (usize, usize, i64) {
        match self {
            Suite::P0 => (2, 2, 3),
            Suite::Zw1 | Suite::Cr => (1, 2, 2),
            _ => (2, 2, 4),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

/// Selection of weights. Unset fields fall back to the suite defaults.
#[derive(Clone, Debug, Default)]
pub struct GridSpec {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub t: Option<Vec<i64>>,
    pub grid_n: Option<usize>,
    pub grid_k: Option<usize>,
    pub grid_deg: Option<i64>,
    pub tmax: Option<i64>,
}

fn partitions(n: usize, max_sum: i64, cap: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (0..=cap.min(max_sum)).rev() {
        for mut rest in partitions(n - 1, max_sum - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl GridSpec {
    pub fn weights(&self, suite: Suite) -> Result<Vec<WeightData>> {
        let (dn, dk, dd) = suite.default_bounds();
        if let (Some(n), Some(k), Some(t)) = (self.n, self.k, &self.t) {
            return Ok(vec![WeightData::new(n, k, t.clone())?]);
        }
        let ns: Vec<usize> = match self.n {
            Some(n) => vec![n],
            None => (1..=self.grid_n.unwrap_or(dn)).collect(),
        };
        let deg = self.grid_deg.unwrap_or(dd);
        let mut out = Vec::new();
        for n in ns {
            let ks: Vec<usize> = match self.k {
                Some(k) => vec![k],
                None => (n + 1..=n + self.grid_k.unwrap_or(dk)).collect(),
            };
            for k in ks {
                for a in partitions(n, deg, deg) {
                    let t: Vec<i64> = a.iter().map(|x| x + k as i64).collect();
                    if self.tmax.is_some_and(|m| t[0] > m) {
                        continue;
                    }
                    if self.t.as_ref().is_some_and(|tt| *tt != t) {
                        continue;
                    }
                    out.push(WeightData::new(n, k, t)?);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Cap on the number of unknowns in the harmonic projection.
    pub budget: usize,
    /// Decimal digits in reports.
    pub precision: u32,
    /// Record elapsed times; off for byte-stable output.
    pub timing: bool,
    /// Test hook: scale every right-hand side of this suite by 2.
    pub perturb: Option<Suite>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 20240601,
            budget: DEFAULT_BUDGET,
            precision: 30,
            timing: true,
            perturb: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub status: Status,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    pub decimal_lhs: String,
    pub decimal_rhs: String,
    pub ms: u64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<14} {}  lhs = {}  rhs = {}", self.status.to_string(), self.case, self.lhs, self.rhs)?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        Ok(())
    }
}

/// One check before rendering: exact sides and an optional explanation.
pub(crate) struct Outcome {
    case: String,
    status: Status,
    lhs: ExactScalar,
    rhs: ExactScalar,
    detail: String,
}

/// Shared state for the checks of one `(suite, weight)` job.
pub(crate) struct Ctx<'a> {
    pub suite: Suite,
    pub w: &'a WeightData,
    pub opts: &'a VerifyOptions,
    out: Vec<Outcome>,
}

impl<'a> Ctx<'a> {
    fn id(&self, label: &str) -> String {
        if label.is_empty() {
            format!("{}/{}", self.suite, self.w)
        } else {
            format!("{}/{}/{}", self.suite, self.w, label)
        }
    }

    fn perturbed(&self) -> bool {
        self.opts.perturb == Some(self.suite)
    }

    fn error(&mut self, label: &str, e: Error) {
        let status = match e {
            Error::Budget { .. } => Status::SkippedBudget,
            _ => Status::Fail,
        };
        self.out.push(Outcome {
            case: self.id(label),
            status,
            lhs: ExactScalar::zero(),
            rhs: ExactScalar::zero(),
            detail: e.to_string(),
        });
    }

    /// Records `lhs == rhs` for exact scalars.
    pub fn scalar(&mut self, label: &str, lhs: Result<ExactScalar>, rhs: Result<ExactScalar>) {
        let (lhs, rhs) = match (lhs, rhs) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return self.error(label, e),
        };
        let rhs = if self.perturbed() { &rhs * &ExactScalar::from_int(2) } else { rhs };
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        self.out.push(Outcome {
            case: self.id(label),
            status,
            lhs,
            rhs,
            detail: String::new(),
        });
    }

    /// Records a polynomial identity; the reported sides are the values at a
    /// seeded random rational point.
    pub fn poly(&mut self, label: &str, lhs: Result<MatrixPolynomial>, rhs: Result<MatrixPolynomial>) {
        let (lhs, rhs) = match (lhs, rhs) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return self.error(label, e),
        };
        let rhs = if self.perturbed() { rhs.scale(&ExactScalar::from_int(2)) } else { rhs };
        let mut rng = rng_for(self.opts.seed, &self.id(label));
        let pt = sample::random_point(&mut rng, lhs.shape().nvars());
        let (lv, rv) = match (lhs.evaluate(&pt), rhs.evaluate(&pt)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return self.error(label, e),
        };
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        let detail = if status == Status::Fail {
            format!("difference has {} terms", (&lhs - &rhs).len())
        } else {
            String::new()
        };
        self.out.push(Outcome {
            case: self.id(label),
            status,
            lhs: lv,
            rhs: rv,
            detail,
        });
    }

    /// Records that a polynomial vanishes identically; the sides are its
    /// number of terms and zero.
    pub fn vanishes(&mut self, label: &str, p: Result<MatrixPolynomial>) {
        match p {
            Ok(p) => {
                let n = ExactScalar::from_int(p.len() as i64);
                self.scalar(label, Ok(n), Ok(ExactScalar::zero()))
            }
            Err(e) => self.error(label, e),
        }
    }
}

fn run_job(suite: Suite, w: &WeightData, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let start = Instant::now();
    let mut ctx = Ctx {
        suite,
        w,
        opts,
        out: Vec::new(),
    };
    suites::run(&mut ctx);
    let ms = if opts.timing { start.elapsed().as_millis() as u64 } else { 0 };
    ctx.out
        .into_iter()
        .map(|o| VerificationReport {
            decimal_lhs: to_decimal(&o.lhs, opts.precision).to_string(),
            decimal_rhs: to_decimal(&o.rhs, opts.precision).to_string(),
            case: o.case,
            status: o.status,
            lhs: o.lhs,
            rhs: o.rhs,
            ms,
            detail: o.detail,
        })
        .collect()
}

/// Runs the suites on their grids in parallel; reports are sorted by case id.
pub fn run(suites: &[Suite], grid: &GridSpec, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut jobs = Vec::new();
    for &s in suites {
        for w in grid.weights(s)? {
            jobs.push((s, w));
        }
    }
    let mut reports: Vec<VerificationReport> = jobs
        .par_iter()
        .flat_map_iter(|(s, w)| run_job(*s, w, opts))
        .collect();
    reports.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(reports)
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub(crate) fn gauss(c: GaussRat) -> ExactScalar {
    ExactScalar::from(c)
}
