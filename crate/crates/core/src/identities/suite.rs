use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::{IdentityId, IdentityReport, Params};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;

/// Parameter axes per identity. Each identity is run over the cartesian
/// product of its axes; an identity with any empty axis is skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SuiteGrid {
    identities: BTreeMap<IdentityId, BTreeMap<String, Vec<f64>>>,
}

fn range(lo: u32, hi: u32) -> Vec<f64> {
    (lo..=hi).map(f64::from).collect()
}

impl Default for SuiteGrid {
    fn default() -> Self {
        use IdentityId::*;
        let gauss_x = vec![0.1, 0.5, 1.0, 2.5, 7.0, 19.3, 50.0];
        let mut reflection_x: Vec<f64> = (1..=19).map(|k| k as f64 / 20.0).collect();
        reflection_x.extend([1.0 / 3.0, 0.25]);
        reflection_x.sort_by(f64::total_cmp);
        reflection_x.dedup();
        let mut euler_m = range(1, 10);
        euler_m.extend([0.5, 7.3, 19.9]);
        euler_m.sort_by(f64::total_cmp);
        let symbol = [("n", range(2, 6)), ("p", range(1, 5)), ("q", range(1, 5))];
        let engine_x = vec![0.1, 0.25, 0.5, 1.0, 2.5, 7.0, 19.3, 30.0];
        let beta_xy = vec![0.5, 1.0, 2.5];

        let mut grid = Self::empty();
        grid.put(AlgebraicIntegralGamma, [("p", range(1, 4)), ("q", range(1, 4))]);
        grid.put(BetaEngines, [("x", beta_xy.clone()), ("y", beta_xy)]);
        grid.put(DerivationChain, [("m", range(1, 8)), ("n", range(2, 8))]);
        grid.put(Duplication, [("x", vec![0.1, 0.5, 1.0, 2.5, 7.0, 10.0, 19.3, 50.0])]);
        grid.put(EulerMultiplication, [("m", euler_m), ("n", range(1, 8))]);
        grid.put(EulerMultiplicationIntegral, [("m", range(1, 5)), ("n", range(2, 5))]);
        grid.put(GammaEngines, [("x", engine_x)]);
        grid.put(GammaFractionProduct, [("n", range(2, 50))]);
        grid.put(GammaSquareProduct, [("n", range(2, 25))]);
        grid.put(GaussMultiplication, [("n", range(1, 12)), ("x", gauss_x)]);
        grid.put(LogIntegralProduct, [("n", range(2, 8))]);
        grid.put(Reflection, [("x", reflection_x.clone())]);
        grid.put(ReflectionBracket, [("lambda", reflection_x)]);
        grid.put(
            SineMultipleAngle,
            [("n", range(1, 8)), ("phi", vec![0.1, 0.3, 0.7, 1.3])],
        );
        grid.put(SineProduct, [("n", range(2, 30))]);
        grid.put(SymbolBetaBridge, symbol.clone());
        grid.put(SymbolSymmetry, symbol);
        grid
    }
}

impl SuiteGrid {
    pub fn empty() -> Self {
        Self {
            identities: BTreeMap::new(),
        }
    }

    fn put<const N: usize>(&mut self, id: IdentityId, axes: [(&str, Vec<f64>); N]) {
        self.set(id, axes.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
            .expect("built-in grid matches identity axes");
    }

    /// Replaces the grid for one identity. The axis names must be exactly
    /// those of [`IdentityId::axes`].
    pub fn set(&mut self, id: IdentityId, axes: BTreeMap<String, Vec<f64>>) -> Result<()> {
        let names: Vec<&str> = axes.keys().map(String::as_str).collect();
        if names != id.axes() {
            return Err(Error::domain(format!(
                "{id} takes parameters {:?}, got {:?}",
                id.axes(),
                names
            )));
        }
        self.identities.insert(id, axes);
        Ok(())
    }

    /// Overrides `axis` in every identity that has it; returns how many
    /// identities were touched.
    pub fn set_axis(&mut self, axis: &str, values: &[f64]) -> usize {
        let mut touched = 0;
        for axes in self.identities.values_mut() {
            if let Some(slot) = axes.get_mut(axis) {
                *slot = values.to_vec();
                touched += 1;
            }
        }
        touched
    }

    pub fn retain(&mut self, keep: &[IdentityId]) {
        self.identities.retain(|id, _| keep.contains(id));
    }

    pub fn remove(&mut self, id: IdentityId) {
        self.identities.remove(&id);
    }

    pub fn identities(&self) -> impl Iterator<Item = IdentityId> + '_ {
        self.identities.keys().copied()
    }

    pub fn axes(&self, id: IdentityId) -> Option<&BTreeMap<String, Vec<f64>>> {
        self.identities.get(&id)
    }

    /// Every (identity, parameter set) pair the grid describes.
    pub fn cases(&self) -> Vec<(IdentityId, Params)> {
        let mut out = Vec::new();
        for (&id, axes) in &self.identities {
            let mut combos: Vec<Params> = vec![Params::new()];
            for (name, values) in axes {
                combos = combos
                    .iter()
                    .flat_map(|base| {
                        values.iter().map(move |&v| {
                            let mut next = base.clone();
                            next.insert(name.clone(), v);
                            next
                        })
                    })
                    .collect();
            }
            out.extend(combos.into_iter().map(|p| (id, p)));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.cases().is_empty()
    }
}

/// Per-identity tolerance overrides on top of
/// [`IdentityId::default_tolerance`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tolerances(BTreeMap<IdentityId, f64>);

impl Tolerances {
    pub fn set(&mut self, id: IdentityId, tolerance: f64) {
        self.0.insert(id, tolerance);
    }

    pub fn get(&self, id: IdentityId) -> f64 {
        self.0.get(&id).copied().unwrap_or_else(|| id.default_tolerance())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub quadrature: QuadratureConfig,
    pub grid: SuiteGrid,
    /// Effective tolerance of every identity in the grid.
    pub tolerances: BTreeMap<IdentityId, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: ConfigEcho,
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn n_pass(&self) -> usize {
        self.summary.pass
    }

    pub fn n_fail(&self) -> usize {
        self.summary.fail
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Drops per-check wall times, which are the only run-to-run variable
    /// part of a report.
    pub fn without_timings(mut self) -> Self {
        for r in &mut self.reports {
            r.wall_time = None;
        }
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

fn param(params: &Params, name: &str) -> Result<f64> {
    params
        .get(name)
        .copied()
        .ok_or_else(|| Error::domain(format!("missing parameter {name}")))
}

fn int_param(params: &Params, name: &str) -> Result<u32> {
    let v = param(params, name)?;
    if v >= 0.0 && v <= u32::MAX as f64 && v.fract() == 0.0 {
        Ok(v as u32)
    } else {
        Err(Error::domain(format!("{name} must be a non-negative integer, got {v}")))
    }
}

/// Runs a single identity check for a parameter set.
pub fn run_check(id: IdentityId, params: &Params, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    use IdentityId::*;
    let x = || param(params, "x");
    let n = || int_param(params, "n");
    let m = || param(params, "m");
    match id {
        AlgebraicIntegralGamma => check_algebraic_integral_gamma(int_param(params, "p")?, int_param(params, "q")?, cfg),
        BetaEngines => check_beta_engines(x()?, param(params, "y")?, cfg),
        DerivationChain => check_derivation_chain(m()?, n()?),
        Duplication => check_duplication(x()?),
        EulerMultiplication => check_euler_multiplication(m()?, n()?, SymbolEngine::Closed, cfg),
        EulerMultiplicationIntegral => check_euler_multiplication(m()?, n()?, SymbolEngine::Quadrature, cfg),
        GammaEngines => check_gamma_engines(x()?, cfg),
        GammaFractionProduct => check_gamma_fraction_product(n()?),
        GammaSquareProduct => check_gamma_square_product(n()?),
        GaussMultiplication => check_gauss_multiplication(x()?, n()?),
        LogIntegralProduct => check_log_integral_product(n()?, cfg),
        Reflection => check_reflection(x()?),
        ReflectionBracket => check_reflection_bracket(param(params, "lambda")?),
        SineMultipleAngle => check_sine_multiple_angle(n()?, param(params, "phi")?),
        SineProduct => check_sine_product(n()?),
        SymbolBetaBridge => check_symbol_beta_bridge(param(params, "p")?, param(params, "q")?, n()?, cfg),
        SymbolSymmetry => check_symbol_symmetry(param(params, "p")?, param(params, "q")?, n()?, cfg),
    }
}

fn compare_params(a: &Params, b: &Params) -> Ordering {
    let mut left = a.iter();
    let mut right = b.iter();
    loop {
        match (left.next(), right.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ka, va)), Some((kb, vb))) => {
                let ord = ka.cmp(kb).then_with(|| va.total_cmp(vb));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

/// Runs every check in `grid`. Checks execute in parallel; the report is
/// sorted by identity id, then parameters, so it does not depend on
/// scheduling. A check that errors is recorded as a failed report.
pub fn run_suite(grid: &SuiteGrid, cfg: &QuadratureConfig, tolerances: &Tolerances) -> Result<SuiteReport> {
    cfg.validate()?;
    let cases = grid.cases();
    if cases.is_empty() {
        return Err(Error::EmptyGrid);
    }

    let mut reports: Vec<IdentityReport> = cases
        .par_iter()
        .map(|(id, params)| {
            let started = Instant::now();
            let report =
                run_check(*id, params, cfg).unwrap_or_else(|e| IdentityReport::errored(*id, params.clone(), &e));
            let mut report = report.with_tolerance(tolerances.get(*id));
            report.wall_time = Some(started.elapsed());
            report
        })
        .collect();
    reports.sort_by(|a, b| {
        a.identity_id
            .as_str()
            .cmp(b.identity_id.as_str())
            .then_with(|| compare_params(&a.params, &b.params))
    });

    let pass = reports.iter().filter(|r| r.passed).count();
    let summary = Summary {
        pass,
        fail: reports.len() - pass,
    };
    Ok(SuiteReport {
        config: ConfigEcho {
            quadrature: *cfg,
            grid: grid.clone(),
            tolerances: grid.identities().map(|id| (id, tolerances.get(id))).collect(),
        },
        reports,
        summary,
    })
}
