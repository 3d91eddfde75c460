//! Flat `key=value` settings shared by the config file and the CLI flags.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::envgen::{EnvironmentKind, EnvironmentSpec};
use crate::error::{invalid, Error, Result};
use crate::feedback::FeedbackKind;
use crate::harness::ExperimentConfig;
use crate::policy::{InitialMode, PolicyName, PolicySpec};

pub const DEFAULT_REPLICATIONS: usize = 200;
pub const DEFAULT_SIGMA: f64 = 0.3;

/// `{1000, 5000, ..., 37000}`.
pub fn default_horizons() -> Vec<usize> {
    (1000..=37_000).step_by(4000).collect()
}

pub const KEYS: &[&str] = &[
    "pattern",
    "policy",
    "feedback",
    "sigma",
    "horizon",
    "horizons",
    "reps",
    "seed",
    "budget",
    "tuning-budget",
    "out",
    "restart",
    "ogd-rule",
    "batch-rule",
    "initial",
    "egs-fresh-psi",
    "decay-rate",
    "step-constant",
    "curvature",
    "lipschitz",
    "radius",
    "interiority",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Parse { line: i + 1, msg: format!("expected key=value, found `{line}`") });
            };
            s.set(k.trim(), v.trim()).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = key.replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return invalid(format!("unknown setting `{key}`"));
        }
        self.map.insert(key, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    /// Later settings win.
    pub fn merge(&mut self, other: Settings) {
        self.map.extend(other.map);
    }

    fn parse_key<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| Error::InvalidArgument(format!("bad value `{v}` for {key}"))),
        }
    }

    fn parse_with<T>(&self, key: &str, f: impl Fn(&str) -> Result<T>) -> Result<Option<T>> {
        self.get(key).map(f).transpose()
    }

    pub fn out(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }

    pub fn seed(&self) -> Result<u64> {
        Ok(self.parse_key("seed")?.unwrap_or(0))
    }

    /// `horizons` wins over `horizon`; the default grid applies to sweeps.
    pub fn horizons(&self, sweep: bool) -> Result<Vec<usize>> {
        if let Some(list) = self.get("horizons") {
            return list
                .split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad horizon `{t}`")))
                })
                .collect();
        }
        match self.parse_key::<usize>("horizon")? {
            Some(t) => Ok(vec![t]),
            None if sweep => Ok(default_horizons()),
            None => invalid("missing --horizon"),
        }
    }

    pub fn environment(&self) -> Result<EnvironmentSpec> {
        let kind: EnvironmentKind = match self.get("pattern") {
            Some(p) => p.parse()?,
            None => return invalid("missing --pattern"),
        };
        let mut env = EnvironmentSpec::new(kind);
        if let Some(v) = self.parse_key("budget")? {
            env.budget = v;
        }
        env.sigma = self.sigma()?;
        if let Some(v) = self.parse_key("step-constant")? {
            env.step_constant = v;
        }
        if let Some(v) = self.parse_key("decay-rate")? {
            env.decay_rate = v;
        }
        Ok(env)
    }

    pub fn sigma(&self) -> Result<f64> {
        Ok(self.parse_key("sigma")?.unwrap_or(DEFAULT_SIGMA))
    }

    pub fn policy(&self) -> Result<PolicySpec> {
        let name: PolicyName = match self.get("policy") {
            Some(p) => p.parse()?,
            None => return invalid("missing --policy"),
        };
        let mut spec = PolicySpec::new(name);
        if let Some(v) = self.parse_with("restart", str::parse)? {
            spec.restart = v;
        }
        if let Some(v) = self.parse_with("ogd-rule", str::parse)? {
            spec.ogd_rule = v;
        }
        if let Some(v) = self.parse_with("batch-rule", str::parse)? {
            spec.batch_rule = v;
        }
        if let Some(v) = self.parse_with("initial", parse_initial)? {
            spec.initial = v;
        }
        if let Some(v) = self.parse_key("egs-fresh-psi")? {
            spec.egs_fresh_psi = v;
        }
        spec.curvature = self.parse_key("curvature")?;
        spec.lipschitz = self.parse_key("lipschitz")?;
        spec.radius = self.parse_key("radius")?;
        spec.interiority = self.parse_key("interiority")?;
        Ok(spec)
    }

    pub fn experiment(&self, sweep: bool) -> Result<ExperimentConfig> {
        let policy = self.policy()?;
        let feedback = match self.get("feedback") {
            Some(f) => f.parse::<FeedbackKind>()?,
            None => policy.name.feedback_kind(),
        };
        let cfg = ExperimentConfig {
            environment: self.environment()?,
            policy,
            feedback,
            sigma: self.sigma()?,
            horizons: self.horizons(sweep)?,
            replications: self.parse_key("reps")?.unwrap_or(DEFAULT_REPLICATIONS),
            base_seed: self.seed()?,
            tuning_budget: self.parse_key("tuning-budget")?.unwrap_or(1.0),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// `center`, `zero`, or a comma-free `x` list such as `1` or `0.5x-1`.
pub fn parse_initial(s: &str) -> Result<InitialMode> {
    match s {
        "center" => Ok(InitialMode::Center),
        "zero" => Ok(InitialMode::ZeroIfFeasible),
        _ => s
            .split('x')
            .map(|v| v.parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad initial action `{s}`"))))
            .collect::<Result<Vec<f64>>>()
            .map(InitialMode::Given),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::{BatchRule, RestartVariant};

    #[test]
    fn default_grid() {
        let g = default_horizons();
        assert_eq!(g.len(), 10);
        assert_eq!((g[0], g[1], g[9]), (1000, 5000, 37_000));
        assert!(g.contains(&25_000));
    }

    #[test]
    fn file_then_flags() {
        let mut s = Settings::parse("# demo\npattern = shock\npolicy=restarted-egs\nsigma=1 # noisy\nreps=5\n").unwrap();
        let mut flags = Settings::default();
        flags.set("sigma", "0.1").unwrap();
        flags.set("horizons", "100,200,400").unwrap();
        s.merge(flags);
        let cfg = s.experiment(true).unwrap();
        assert_eq!(cfg.sigma, 0.1);
        assert_eq!(cfg.replications, 5);
        assert_eq!(cfg.feedback, FeedbackKind::Cost);
        assert_eq!(cfg.horizons, vec![100, 200, 400]);
    }

    #[test]
    fn policy_knobs() {
        let s = Settings::parse("pattern=linear\npolicy=restarted-ogd\nrestart=full\nbatch-rule=sqrt-log\ninitial=1\nhorizon=50").unwrap();
        let cfg = s.experiment(false).unwrap();
        assert_eq!(cfg.policy.restart, RestartVariant::Full);
        assert_eq!(cfg.policy.batch_rule, BatchRule::SqrtLog);
        assert_eq!(cfg.policy.initial, InitialMode::Given(vec![1.0]));
        assert_eq!(cfg.horizons, vec![50]);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(Settings::parse("colour=blue").is_err());
        assert!(Settings::parse("no equals sign").is_err());
        let s = Settings::parse("pattern=shock\npolicy=ogd\nfeedback=cost\nhorizon=10").unwrap();
        assert!(s.experiment(false).is_err());
        let s = Settings::parse("pattern=shock\npolicy=ogd\nreps=-1\nhorizon=10").unwrap();
        assert!(s.experiment(false).is_err());
        let s = Settings::parse("pattern=shock\npolicy=ogd").unwrap();
        assert!(s.experiment(false).is_err());
        assert!(s.experiment(true).is_ok());
    }
}
