//! Regret accounting and the Monte Carlo experiment runner.

use std::io::Write;

use rayon::prelude::*;

use crate::cost::{variation_over, FunctionSequence, DEFAULT_GRID_PER_DIM};
use crate::envgen::EnvironmentSpec;
use crate::error::{invalid, Error, Result};
use crate::feedback::{FeedbackChannel, FeedbackKind, NoiseModel, RandomStream, Substream};
use crate::fit::{fit_rate, RateFit};
use crate::oracle::static_oracle;
use crate::policy::{Policy, PolicySpec};

pub const CSV_HEADER: &str =
    "pattern,policy,feedback,sigma,T,replications,mean_regret,stderr_regret,mean_loss_pct,alpha,c,r2";

/// Per-batch split of the regret of a restarting policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchLedger {
    pub start: usize,
    pub end: usize,
    /// `sum f_t(X_t) - min_x sum f_t(x)` over the batch.
    pub j1: f64,
    /// `min_x sum f_t(x) - sum f_t(x_t*)` over the batch.
    pub j2: f64,
    /// Full-box variation inside the batch.
    pub variation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fault {
    pub epoch: usize,
    pub what: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    /// Played actions, epoch-major (`dim` values per epoch).
    pub actions: Vec<f64>,
    pub dim: usize,
    /// Noiseless `f_t(X_t)`.
    pub expected_costs: Vec<f64>,
    pub cumulative_regret: Vec<f64>,
    pub oracle_total: f64,
    pub fault: Option<Fault>,
    pub batches: Option<Vec<BatchLedger>>,
}

impl TrajectoryRecord {
    pub fn horizon(&self) -> usize {
        self.expected_costs.len()
    }

    /// Action of 1-based epoch `t`.
    pub fn action(&self, t: usize) -> &[f64] {
        &self.actions[(t - 1) * self.dim..t * self.dim]
    }

    pub fn final_regret(&self) -> f64 {
        self.cumulative_regret.last().copied().unwrap_or(0.0)
    }
}

/// Runs `policy` on `seq`, adding the per-batch ledger when the policy restarts.
pub fn run_trajectory(
    policy: &mut dyn Policy,
    seq: &FunctionSequence,
    channel: &FeedbackChannel,
    noise: &mut RandomStream,
) -> Result<TrajectoryRecord> {
    let mut rec = simulate(policy, seq, channel, noise)?;
    if rec.fault.is_none() {
        if let Some(batch) = policy.batch_size() {
            rec.batches = Some(batch_ledger(seq, &rec.expected_costs, batch)?);
        }
    }
    Ok(rec)
}

/// Epoch loop without the batch ledger.
pub fn simulate(
    policy: &mut dyn Policy,
    seq: &FunctionSequence,
    channel: &FeedbackChannel,
    noise: &mut RandomStream,
) -> Result<TrajectoryRecord> {
    if policy.feedback_kind() != channel.kind {
        return invalid(format!(
            "policy expects {} feedback, channel provides {}",
            policy.feedback_kind().as_str(),
            channel.kind.as_str()
        ));
    }
    let bx = seq.action_box();
    let d = bx.dim();
    let horizon = seq.horizon();
    let mut rec = TrajectoryRecord {
        actions: Vec::with_capacity(horizon * d),
        dim: d,
        expected_costs: Vec::with_capacity(horizon),
        cumulative_regret: Vec::with_capacity(horizon),
        oracle_total: 0.0,
        fault: None,
        batches: None,
    };
    let mut scratch = vec![0.0; d];
    let mut regret = 0.0;
    for (i, cost) in seq.costs().iter().enumerate() {
        let x = policy.action();
        let fx = cost.eval(x);
        let fstar = cost.minimize(bx).1;
        rec.actions.extend_from_slice(x);
        rec.expected_costs.push(fx);
        rec.oracle_total += fstar;
        regret += fx - fstar;
        rec.cumulative_regret.push(regret);
        if !fx.is_finite() {
            rec.fault = Some(Fault { epoch: i + 1, what: "non-finite action cost".into() });
            return Ok(rec);
        }
        if i + 1 == horizon {
            break;
        }
        let obs = channel.observe_into(cost, policy.query_point(), noise, &mut scratch);
        match policy.update(obs) {
            Ok(()) => {}
            Err(Error::NumericFault { what, .. }) => {
                rec.fault = Some(Fault { epoch: i + 1, what });
                return Ok(rec);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(rec)
}

/// Splits the regret over batches `1..=batch`, `batch+1..=2 batch`, ...
pub fn batch_ledger(seq: &FunctionSequence, expected_costs: &[f64], batch: usize) -> Result<Vec<BatchLedger>> {
    if batch < 1 {
        return invalid("batch size must be at least 1");
    }
    let bx = seq.action_box();
    let horizon = expected_costs.len().min(seq.horizon());
    let mut out = Vec::new();
    let mut start = 1;
    while start <= horizon {
        let end = (start + batch - 1).min(horizon);
        let played: f64 = expected_costs[start - 1..end].iter().sum();
        let dynamic: f64 = seq.costs()[start - 1..end].iter().map(|c| c.minimize(bx).1).sum();
        let (_, fixed) = static_oracle(seq, start, end)?;
        let variation = variation_over(&seq.costs()[start - 1..end], bx, DEFAULT_GRID_PER_DIM)?;
        out.push(BatchLedger { start, end, j1: played - fixed, j2: fixed - dynamic, variation });
        start = end + 1;
    }
    Ok(out)
}

/// `100 * regret / oracle_total`.
pub fn relative_loss(final_regret: f64, oracle_total: f64) -> Result<f64> {
    if oracle_total == 0.0 {
        return Err(Error::UndefinedLoss);
    }
    Ok(100.0 * final_regret / oracle_total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub environment: EnvironmentSpec,
    pub policy: PolicySpec,
    pub feedback: FeedbackKind,
    pub sigma: f64,
    pub horizons: Vec<usize>,
    pub replications: usize,
    pub base_seed: u64,
    /// Budget assumed by the policy tuning.
    pub tuning_budget: f64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replications < 1 {
            return invalid("replications must be at least 1");
        }
        if self.horizons.is_empty() || self.horizons[0] < 1 {
            return invalid("the horizon grid must be non-empty and positive");
        }
        if self.horizons.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("the horizon grid must be strictly increasing");
        }
        if self.policy.name.feedback_kind() != self.feedback {
            return invalid(format!(
                "policy {} needs {} feedback, not {}",
                self.policy.name,
                self.policy.name.feedback_kind().as_str(),
                self.feedback.as_str()
            ));
        }
        NoiseModel::new(self.sigma)?;
        if !(self.tuning_budget > 0.0 && self.tuning_budget.is_finite()) {
            return invalid(format!("tuning budget must be positive, got {}", self.tuning_budget));
        }
        Ok(())
    }
}

/// Outcome of one replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replication {
    pub regret: f64,
    pub oracle_total: f64,
    pub faulted: bool,
}

/// Runs replication `rep` at `horizon` with its own environment, noise and
/// policy streams.
pub fn run_replication(config: &ExperimentConfig, horizon: usize, rep: u64) -> Result<Replication> {
    let mut env_rng = RandomStream::derive(config.base_seed, rep, Substream::Env);
    let mut noise = RandomStream::derive(config.base_seed, rep, Substream::Noise);
    let policy_rng = RandomStream::derive(config.base_seed, rep, Substream::Policy);
    let seq = config.environment.generate(horizon, &mut env_rng)?;
    let mut policy = config.policy.build(&seq, config.tuning_budget, policy_rng)?;
    let channel = FeedbackChannel::new(config.feedback, NoiseModel::new(config.sigma)?);
    let rec = simulate(policy.as_mut(), &seq, &channel, &mut noise)?;
    Ok(Replication { regret: rec.final_regret(), oracle_total: rec.oracle_total, faulted: rec.fault.is_some() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub horizon: usize,
    pub replications: Vec<Replication>,
    /// Replications that completed without a numeric fault.
    pub completed: usize,
    pub faulted: usize,
    pub mean_regret: f64,
    pub stderr_regret: f64,
    /// `None` when some oracle total is zero.
    pub mean_loss_pct: Option<f64>,
}

impl CellSummary {
    fn from_replications(horizon: usize, replications: Vec<Replication>) -> Self {
        let ok: Vec<&Replication> = replications.iter().filter(|r| !r.faulted).collect();
        let n = ok.len();
        let mean = if n > 0 { ok.iter().map(|r| r.regret).sum::<f64>() / n as f64 } else { f64::NAN };
        let stderr = if n > 1 {
            let var = ok.iter().map(|r| (r.regret - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        let losses: Result<Vec<f64>> = ok.iter().map(|r| relative_loss(r.regret, r.oracle_total)).collect();
        let mean_loss_pct = match losses {
            Ok(l) if n > 0 => Some(l.iter().sum::<f64>() / n as f64),
            _ => None,
        };
        CellSummary {
            horizon,
            faulted: replications.len() - n,
            completed: n,
            replications,
            mean_regret: mean,
            stderr_regret: stderr,
            mean_loss_pct,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub cells: Vec<CellSummary>,
    /// Fitted over the grid when it has at least three horizons.
    pub fit: Option<RateFit>,
}

impl ExperimentResult {
    pub fn faulted(&self) -> usize {
        self.cells.iter().map(|c| c.faulted).sum()
    }

    pub fn cell(&self, horizon: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.horizon == horizon)
    }

    /// Writes the header, one row per horizon and the fit row if any.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        self.write_rows(&mut out)
    }

    pub fn write_rows<W: Write>(&self, mut out: W) -> Result<()> {
        let cfg = &self.config;
        let prefix = format!("{},{},{},{}", cfg.environment.kind, cfg.policy.name, cfg.feedback.as_str(), cfg.sigma);
        for cell in &self.cells {
            let loss = cell.mean_loss_pct.map(|l| l.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{prefix},{},{},{},{},{},,,",
                cell.horizon, cell.completed, cell.mean_regret, cell.stderr_regret, loss
            )?;
        }
        if let Some(fit) = &self.fit {
            writeln!(out, "{prefix},,{},,,,{},{},{}", cfg.replications, fit.alpha, fit.c, fit.r_squared)?;
        }
        Ok(())
    }
}

/// Runs every horizon of the grid; replications run in parallel and are
/// merged in index order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let mut cells = Vec::with_capacity(config.horizons.len());
    for &horizon in &config.horizons {
        let reps: Vec<Replication> = (0..config.replications as u64)
            .into_par_iter()
            .map(|rep| run_replication(config, horizon, rep))
            .collect::<Result<_>>()?;
        cells.push(CellSummary::from_replications(horizon, reps));
    }
    let fit = if cells.len() >= 3 {
        let points: Vec<(f64, f64)> = cells.iter().map(|c| (c.horizon as f64, c.mean_regret)).collect();
        fit_rate(&points).ok()
    } else {
        None
    };
    Ok(ExperimentResult { config: config.clone(), cells, fit })
}

/// A parsed data row of a result CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub pattern: String,
    pub policy: String,
    pub feedback: String,
    pub sigma: String,
    pub horizon: usize,
    pub mean_regret: f64,
}

/// Reads the per-horizon rows of a result CSV, skipping fit rows.
pub fn read_csv_rows(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::Parse { line: 1, msg: "missing or unexpected CSV header".into() }),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 12 {
            return Err(Error::Parse { line: i + 1, msg: format!("expected 12 fields, found {}", f.len()) });
        }
        if f[4].is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse { line: i + 1, msg: format!("bad {what}") };
        rows.push(CsvRow {
            pattern: f[0].into(),
            policy: f[1].into(),
            feedback: f[2].into(),
            sigma: f[3].into(),
            horizon: f[4].parse().map_err(|_| bad("T"))?,
            mean_regret: f[6].parse().map_err(|_| bad("mean_regret"))?,
        });
    }
    Ok(rows)
}

/// Refits every (pattern, policy, feedback, sigma) group of a result CSV,
/// in order of first appearance.
pub fn refit_csv(text: &str) -> Result<Vec<(CsvRow, RateFit)>> {
    let rows = read_csv_rows(text)?;
    let mut groups: Vec<(CsvRow, Vec<(f64, f64)>)> = Vec::new();
    for row in rows {
        let point = (row.horizon as f64, row.mean_regret);
        match groups.iter_mut().find(|(k, _)| {
            k.pattern == row.pattern && k.policy == row.policy && k.feedback == row.feedback && k.sigma == row.sigma
        }) {
            Some((_, pts)) => pts.push(point),
            None => groups.push((row, vec![point])),
        }
    }
    groups.into_iter().map(|(key, pts)| Ok((key, fit_rate(&pts)?))).collect()
}
