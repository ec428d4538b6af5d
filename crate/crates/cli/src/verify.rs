//! Randomized verification of the covolume inequalities.
//!
//! Each instance is a pair of random bodies. For every `t` of the config the
//! harness checks
//!
//! * copolar Brunn-Minkowski: `Covol(P_t) <= (1-t) Covol(P0) + t Covol(P1)`,
//!   strictly when the canonical forms differ;
//! * reversed Brunn-Minkowski for the Minkowski combination, in `Covol^(1/n)`;
//! * capacity convexity through the Reinhardt-compact path, with `L_j = P_j°`;
//! * log-concavity of Reinhardt volumes, `Vol(K_t) >= Vol(K0)^(1-t) Vol(K1)^t`,
//!   refuted only when the certified quadrature brackets separate.
//!
//! plus involution, scaling and antitonicity spot checks per instance and the
//! exact worked example. The `Covol^(1/n)` analogue of the first inequality is
//! an open question: it is reported, never asserted.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use copolar::scalar::{factorial, ratio, Scalar};
use copolar::transforms::{capacity, reinhardt_volume, ReinhardtSpec, ReinhardtVolume};
use copolar::{
    copolar_combination, copolar_of_body, copolar_of_dual, covolume, dual_combination,
    minkowski_combination, Body, ExactBody,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::oracle::shoelace_covolume;

/// Environment variable overriding [`VerifyConfig::seed`].
pub const SEED_ENV: &str = "COPOLAR_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub dimension: usize,
    pub instances: usize,
    pub seed: u64,
    pub t_grid: Vec<f64>,
    /// Inclusive range for the number of normals per body.
    pub normal_count: [usize; 2],
    /// Half-open range for normal coordinates.
    pub coordinate_range: [f64; 2],
    /// Predicate tolerance `εp`.
    pub tolerance: f64,
    /// Required CoBM slack for distinct pairs.
    pub strict_margin: f64,
    /// Quadrature cells per axis for Reinhardt volumes; 0 picks a default by dimension.
    pub volume_cells: usize,
    /// Truncation `S` of the volume integrals.
    pub volume_extent: f64,
    /// Include wall-clock runtime in the report (breaks byte-determinism).
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dimension: 2,
            instances: 500,
            seed: 42,
            t_grid: vec![0.25, 0.5, 0.75],
            normal_count: [1, 4],
            coordinate_range: [0.2, 5.0],
            tolerance: 1e-9,
            strict_margin: 1e-10,
            volume_cells: 0,
            volume_extent: 8.0,
            timing: false,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.dimension < 2 {
            return Err("dimension must be at least 2".into());
        }
        if self.instances == 0 {
            return Err("instances must be at least 1".into());
        }
        if self.t_grid.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
            return Err("t_grid values must lie strictly between 0 and 1".into());
        }
        let [lo, hi] = self.normal_count;
        if lo == 0 || lo > hi {
            return Err("normal_count must be a range [lo, hi] with 1 <= lo <= hi".into());
        }
        let [a, b] = self.coordinate_range;
        if !(a > 0.0 && a < b && b.is_finite()) {
            return Err("coordinate_range must satisfy 0 < lo < hi".into());
        }
        if b >= self.volume_extent {
            return Err("volume_extent must exceed the largest coordinate".into());
        }
        Ok(())
    }

    /// Applies the seed override from the environment, if set.
    pub fn with_env_seed(mut self) -> Result<Self, String> {
        if let Ok(text) = std::env::var(SEED_ENV) {
            self.seed = text
                .trim()
                .parse()
                .map_err(|_| format!("{SEED_ENV} must be an unsigned integer, got {text:?}"))?;
        }
        Ok(self)
    }

    fn cells(&self) -> usize {
        match (self.volume_cells, self.dimension) {
            (0, 2) => 64,
            (0, 3) => 20,
            (0, _) => 8,
            (m, _) => m,
        }
    }
}

/// Draws a canonical random body: normal count and coordinates uniform in the config ranges.
pub fn random_body<R: Rng>(rng: &mut R, cfg: &VerifyConfig) -> Body {
    let count = rng.random_range(cfg.normal_count[0]..=cfg.normal_count[1]);
    let [lo, hi] = cfg.coordinate_range;
    let normals = (0..count)
        .map(|_| (0..cfg.dimension).map(|_| rng.random_range(lo..hi)).collect())
        .collect();
    Body::new(cfg.dimension, normals).expect("positive normals form a body")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkedExample {
    pub covolume_p0: String,
    pub covolume_p1: String,
    pub copolar_midpoint_normals: Vec<Vec<String>>,
    pub covolume_copolar: String,
    pub covolume_minkowski: String,
    pub slack_cobm: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TRecord {
    pub t: f64,
    pub covolume_copolar: f64,
    pub covolume_minkowski: f64,
    pub slack_cobm: f64,
    pub slack_rbm: f64,
    /// `(1-t) Covol(P0)^(1/n) + t Covol(P1)^(1/n) - Covol(P_t)^(1/n)`; reported only.
    pub slack_cobm_root: f64,
    pub capacity: f64,
    pub slack_capacity: f64,
    pub volume: f64,
    /// `Vol(K_t) / (Vol(K0)^(1-t) Vol(K1)^t) - 1` on the midpoint values.
    pub slack_volume: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub index: usize,
    pub p0: Vec<Vec<f64>>,
    pub p1: Vec<Vec<f64>>,
    pub equal: bool,
    pub covolume_p0: f64,
    pub covolume_p1: f64,
    pub volume_p0: f64,
    pub volume_p1: f64,
    /// Largest deviation from the shoelace oracle (plane only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_deviation: Option<f64>,
    pub involution: bool,
    pub scaling: bool,
    pub antitonicity: bool,
    pub records: Vec<TRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub checks: usize,
    pub violations: usize,
    pub equality_cases: usize,
    pub min_slack_cobm: f64,
    /// Over pairs with distinct canonical forms.
    pub min_strict_slack_cobm: f64,
    pub min_slack_rbm: f64,
    pub min_slack_capacity: f64,
    pub min_slack_volume: f64,
    /// Negative values would be counterexamples to the open `Covol^(1/n)` question.
    pub min_slack_cobm_root: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_oracle_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub worked_example: WorkedExample,
    pub instances: Vec<Instance>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.violations == 0
    }
}

fn exact_string(x: &copolar::BigRational) -> String {
    match x.to_json() {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

/// The worked example `a1/3 + a2 >= 1`, `a1 + a2/3 >= 1` at `t = 1/2`, in exact arithmetic.
pub fn worked_example() -> WorkedExample {
    let p0 = ExactBody::cosimplex(vec![ratio(1, 3), ratio(1, 1)]).expect("valid body");
    let p1 = ExactBody::cosimplex(vec![ratio(1, 1), ratio(1, 3)]).expect("valid body");
    let half = ratio(1, 2);
    let pc = copolar_combination(&p0, &p1, &half).expect("combination");
    let pm = minkowski_combination(&p0, &p1, &half).expect("combination");
    let (c0, c1) = (covolume(&p0).expect("finite"), covolume(&p1).expect("finite"));
    let (cc, cm) = (covolume(&pc).expect("finite"), covolume(&pm).expect("finite"));
    let slack = (c0.clone() + c1.clone()) / ratio(2, 1) - cc.clone();
    let pass = c0 == ratio(3, 2)
        && c1 == ratio(3, 2)
        && pc.normals() == [vec![ratio(2, 3), ratio(2, 3)]]
        && cc == ratio(9, 8)
        && cm == ratio(1, 1)
        && slack == ratio(3, 8);
    WorkedExample {
        covolume_p0: exact_string(&c0),
        covolume_p1: exact_string(&c1),
        copolar_midpoint_normals: pc.normals().iter().map(|b| b.iter().map(exact_string).collect()).collect(),
        covolume_copolar: exact_string(&cc),
        covolume_minkowski: exact_string(&cm),
        slack_cobm: exact_string(&slack),
        pass,
    }
}

fn shoelace_of(body: &Body) -> f64 {
    let normals: Vec<[f64; 2]> = body.normals().iter().map(|b| [b[0], b[1]]).collect();
    shoelace_covolume(&normals)
}

fn volume_of(body: &Body, cfg: &VerifyConfig) -> copolar::Result<ReinhardtVolume> {
    let k = ReinhardtSpec::new(copolar_of_body(body)?);
    reinhardt_volume(&k, cfg.volume_extent, cfg.cells())
}

fn run_instance(index: usize, p0: &Body, p1: &Body, cfg: &VerifyConfig) -> copolar::Result<Instance> {
    let eps = cfg.tolerance;
    let n = cfg.dimension;
    let nf = factorial::<f64>(n);
    let root = |c: f64| c.powf(1.0 / n as f64);
    let within = |lhs: f64, rhs: f64| lhs <= rhs + eps * (1.0 + rhs.abs());
    let equal = p0.approx_eq(p1);

    let (c0, c1) = (covolume(p0)?, covolume(p1)?);
    let (l0, l1) = (copolar_of_body(p0)?, copolar_of_body(p1)?);
    let (cap0, cap1) = (capacity(&l0)?, capacity(&l1)?);
    let (v0, v1) = (volume_of(p0, cfg)?, volume_of(p1, cfg)?);

    let oracle_deviation = (n == 2).then(|| {
        [(p0, c0), (p1, c1)]
            .iter()
            .map(|(p, c)| (shoelace_of(p) - c).abs())
            .fold(0.0, f64::max)
    });

    let involution = copolar_of_dual(&l0)?.approx_eq(p0) && copolar_of_dual(&l1)?.approx_eq(p1);
    let scaling = [0.5, 2.0].iter().all(|&lambda: &f64| {
        covolume(&p0.scaled(&lambda))
            .map(|c| (c - lambda.powi(n as i32) * c0).abs() <= eps * lambda.powi(n as i32) * c0)
            .unwrap_or(false)
    });
    // q = p0 ∩ p1 lies inside p0, so p0° must lie inside q°.
    let q = Body::new(n, p0.normals().iter().chain(p1.normals()).cloned().collect())?;
    let q_dual = copolar_of_body(&q)?;
    let mut antitonicity = true;
    for g in l0.generators() {
        antitonicity &= q_dual.contains(g)?;
    }

    let mut records = Vec::with_capacity(cfg.t_grid.len());
    for &t in &cfg.t_grid {
        let pc = copolar_combination(p0, p1, &t)?;
        let pm = minkowski_combination(p0, p1, &t)?;
        let (cc, cm) = (covolume(&pc)?, covolume(&pm)?);
        let mean = (1.0 - t) * c0 + t * c1;
        let slack_cobm = mean - cc;
        let slack_rbm = (1.0 - t) * root(c0) + t * root(c1) - root(cm);
        let slack_cobm_root = (1.0 - t) * root(c0) + t * root(c1) - root(cc);

        let cap = capacity(&dual_combination(&l0, &l1, &t)?)?;
        let cap_mean = (1.0 - t) * cap0 + t * cap1;
        let capacity_consistent = (cap - nf * cc).abs() <= eps * (1.0 + cap);

        let kt = ReinhardtSpec::new(copolar_of_body(&pc)?);
        let vt = reinhardt_volume(&kt, cfg.volume_extent, cfg.cells())?;
        let geometric = v0.value.powf(1.0 - t) * v1.value.powf(t);
        let volume_refuted = vt.upper < v0.lower.powf(1.0 - t) * v1.lower.powf(t);

        let pass = within(cc, mean)
            && (equal || slack_cobm > cfg.strict_margin)
            && within(root(cm), (1.0 - t) * root(c0) + t * root(c1))
            && within(cap, cap_mean)
            && capacity_consistent
            && !volume_refuted;
        records.push(TRecord {
            t,
            covolume_copolar: cc,
            covolume_minkowski: cm,
            slack_cobm,
            slack_rbm,
            slack_cobm_root,
            capacity: cap,
            slack_capacity: cap_mean - cap,
            volume: vt.value,
            slack_volume: vt.value / geometric - 1.0,
            pass,
        });
    }

    let oracle_ok = oracle_deviation.is_none_or(|d| d <= 1e-12 * (1.0 + c0.max(c1)));
    let pass = records.iter().all(|r| r.pass) && involution && scaling && antitonicity && oracle_ok;
    Ok(Instance {
        index,
        p0: p0.normals().to_vec(),
        p1: p1.normals().to_vec(),
        equal,
        covolume_p0: c0,
        covolume_p1: c1,
        volume_p0: v0.value,
        volume_p1: v1.value,
        oracle_deviation,
        involution,
        scaling,
        antitonicity,
        records,
        error: None,
        pass,
    })
}

fn failed_instance(index: usize, p0: &Body, p1: &Body, message: String) -> Instance {
    Instance {
        index,
        p0: p0.normals().to_vec(),
        p1: p1.normals().to_vec(),
        equal: p0.approx_eq(p1),
        covolume_p0: f64::NAN,
        covolume_p1: f64::NAN,
        volume_p0: f64::NAN,
        volume_p1: f64::NAN,
        oracle_deviation: None,
        involution: false,
        scaling: false,
        antitonicity: false,
        records: Vec::new(),
        error: Some(message),
        pass: false,
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

/// Runs the suite. Instances are generated up front from one seeded stream,
/// so the report depends only on the config.
pub fn verify_suite(cfg: &VerifyConfig) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<(Body, Body)> = (0..cfg.instances)
        .map(|_| (random_body(&mut rng, cfg), random_body(&mut rng, cfg)))
        .collect();

    let instances: Vec<Instance> = pairs
        .iter()
        .enumerate()
        .map(|(i, (p0, p1))| {
            match catch_unwind(AssertUnwindSafe(|| run_instance(i, p0, p1, cfg))) {
                Ok(Ok(inst)) => inst,
                Ok(Err(e)) => failed_instance(i, p0, p1, e.to_string()),
                Err(payload) => failed_instance(i, p0, p1, format!("panic: {}", panic_message(payload))),
            }
        })
        .collect();

    let worked_example = worked_example();
    let records = || instances.iter().flat_map(|inst| inst.records.iter());
    let min = |it: &mut dyn Iterator<Item = f64>| it.fold(f64::INFINITY, f64::min);
    let violations = instances.iter().filter(|inst| !inst.pass).count() + usize::from(!worked_example.pass);
    let summary = Summary {
        instances: instances.len(),
        checks: records().count(),
        violations,
        equality_cases: instances.iter().filter(|inst| inst.equal).count(),
        min_slack_cobm: min(&mut records().map(|r| r.slack_cobm)),
        min_strict_slack_cobm: min(&mut instances
            .iter()
            .filter(|inst| !inst.equal)
            .flat_map(|inst| inst.records.iter().map(|r| r.slack_cobm))),
        min_slack_rbm: min(&mut records().map(|r| r.slack_rbm)),
        min_slack_capacity: min(&mut records().map(|r| r.slack_capacity)),
        min_slack_volume: min(&mut records().map(|r| r.slack_volume)),
        min_slack_cobm_root: min(&mut records().map(|r| r.slack_cobm_root)),
        max_oracle_deviation: (cfg.dimension == 2).then(|| {
            instances
                .iter()
                .filter_map(|inst| inst.oracle_deviation)
                .fold(0.0, f64::max)
        }),
        runtime_seconds: cfg.timing.then(|| start.elapsed().as_secs_f64()),
    };
    Report {
        config: cfg.clone(),
        worked_example,
        instances,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_is_exact() {
        let check = worked_example();
        assert!(check.pass);
        assert_eq!(check.slack_cobm, "3/8");
        assert_eq!(check.covolume_copolar, "9/8");
        assert_eq!(check.copolar_midpoint_normals, vec![vec!["2/3".to_string(), "2/3".to_string()]]);
    }

    #[test]
    fn small_suite_passes() {
        let cfg = VerifyConfig {
            instances: 10,
            ..VerifyConfig::default()
        };
        let report = verify_suite(&cfg);
        assert!(report.passed(), "{:#?}", report.summary);
        assert_eq!(report.summary.checks, 30);
    }

    #[test]
    fn identical_pairs_are_equality_cases() {
        let p = Body::new(2, vec![vec![0.5, 2.0], vec![1.5, 0.7]]).unwrap();
        let inst = run_instance(0, &p, &p, &VerifyConfig::default()).unwrap();
        assert!(inst.equal && inst.pass);
        for r in &inst.records {
            assert!(r.slack_cobm.abs() <= 1e-9);
        }
    }

    #[test]
    fn config_validation() {
        assert!(VerifyConfig::default().validate().is_ok());
        let bad = VerifyConfig {
            t_grid: vec![1.0],
            ..VerifyConfig::default()
        };
        assert!(bad.validate().is_err());
        let cfg: VerifyConfig = serde_json::from_str(r#"{"dimension": 3, "instances": 5}"#).unwrap();
        assert_eq!((cfg.dimension, cfg.instances, cfg.seed), (3, 5, 42));
    }
}
