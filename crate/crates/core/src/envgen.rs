//! Generators for cost sequences: change-point patterns on a quadratic
//! family, randomized two-function constructions with batch-constant
//! draws, and deterministic counterexamples.

use std::fmt;
use std::str::FromStr;

use crate::cost::{
    variation, CostInstance, FunctionSequence, PiecewiseConvexCost, QuadraticCost, Side, VariationMode,
    DEFAULT_GRID_PER_DIM,
};
use crate::error::{invalid, Error, Result};
use crate::feedback::{RandomStream, Substream};
use crate::space::ActionBox;

const BUDGET_TOL: f64 = 1e-9;

// Floor of a formula that should land on an integer, tolerant to rounding
// just below it.
fn floor_tol(x: f64) -> usize {
    (x + 1e-9).floor().max(0.0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    Shock,
    Decay,
    Linear,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::Shock, Pattern::Decay, Pattern::Linear];

    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::Shock => "shock",
            Pattern::Decay => "decay",
            Pattern::Linear => "linear",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Change-point pattern for the family `x^2/2 - b_t x + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternSpec {
    pub pattern: Pattern,
    pub horizon: usize,
    pub decay_rate: f64,
    pub action_box: ActionBox,
}

impl PatternSpec {
    pub fn new(pattern: Pattern, horizon: usize) -> Self {
        PatternSpec {
            pattern,
            horizon,
            decay_rate: 10.0,
            action_box: ActionBox::interval(-2.0, 3.0).expect("static box"),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.horizon < 4 {
            return invalid(format!("pattern horizon must be at least 4, got {}", self.horizon));
        }
        if !(self.decay_rate > 0.0) {
            return invalid(format!("decay rate must be positive, got {}", self.decay_rate));
        }
        Ok(())
    }

    /// Linear coefficient at 1-based epoch `t` when the change starts after `tau`.
    pub fn coefficient(&self, t: usize, tau: usize) -> f64 {
        if t <= tau {
            return 1.0;
        }
        let big_t = self.horizon as f64;
        match self.pattern {
            Pattern::Shock => 0.0,
            Pattern::Decay => (-self.decay_rate * (t - tau) as f64 / big_t).exp(),
            Pattern::Linear => (self.horizon - t) as f64 / (self.horizon - tau) as f64,
        }
    }
}

/// Draws the change time uniformly on `1..=floor(T/4)` and builds the sequence.
pub fn make_appendix_c(spec: &PatternSpec, seed: u64) -> Result<FunctionSequence> {
    let mut rng = RandomStream::derive(seed, 0, Substream::Env);
    make_appendix_c_from(spec, &mut rng)
}

pub fn make_appendix_c_from(spec: &PatternSpec, rng: &mut RandomStream) -> Result<FunctionSequence> {
    spec.validate()?;
    let tau = rng.integer_inclusive(1, (spec.horizon / 4) as u64) as usize;
    appendix_c_with_tau(spec, tau)
}

/// The pattern sequence for a known change time.
pub fn appendix_c_with_tau(spec: &PatternSpec, tau: usize) -> Result<FunctionSequence> {
    spec.validate()?;
    if tau < 1 || tau >= spec.horizon {
        return invalid(format!("change time {tau} outside 1..{}", spec.horizon));
    }
    let d = spec.action_box.dim();
    let bx = &spec.action_box;
    let costs = (1..=spec.horizon)
        .map(|t| {
            let b = spec.coefficient(t, tau);
            CostInstance::quadratic(QuadraticCost::new(1.0, vec![b; d], 1.0)?, bx)
        })
        .collect::<Result<Vec<_>>>()?;
    let tag = format!("{} tau={tau}", spec.pattern);
    FunctionSequence::with_measured_budget(bx.clone(), costs, VariationMode::Hull, tag)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdversaryFamily {
    /// Piecewise-linear-with-caps pair on `[0, 1]`.
    ConvexGrad,
    /// Quadratic pair on `[0, 1]` with curvature 2.
    StronglyConvex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdversarySpec {
    pub family: AdversaryFamily,
    pub horizon: usize,
    pub budget: f64,
    /// KL-per-squared-mean-shift constant of the noise; `1/(2 sigma^2)` for Gaussian.
    pub noise_constant: f64,
}

impl AdversarySpec {
    /// Uses the Gaussian noise constant `1 / (2 sigma^2)`.
    pub fn gaussian(family: AdversaryFamily, horizon: usize, budget: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return invalid(format!("sigma must be positive to derive the noise constant, got {sigma}"));
        }
        Ok(AdversarySpec { family, horizon, budget, noise_constant: 1.0 / (2.0 * sigma * sigma) })
    }

    fn validate(&self) -> Result<()> {
        if self.horizon < 1 {
            return invalid("adversary horizon must be at least 1");
        }
        if !(self.budget >= 1.0 && self.budget <= self.horizon as f64) {
            return invalid(format!("budget {} outside [1, T={}]", self.budget, self.horizon));
        }
        if !(self.noise_constant > 0.0 && self.noise_constant.is_finite()) {
            return invalid(format!("noise constant must be positive, got {}", self.noise_constant));
        }
        Ok(())
    }

    /// Batch length and perturbation size of the construction.
    pub fn batch_and_delta(&self) -> Result<(usize, f64)> {
        self.validate()?;
        let t = self.horizon as f64;
        let v = self.budget;
        match self.family {
            AdversaryFamily::ConvexGrad => {
                let raw = (1.0 / (4.0 * self.noise_constant)).cbrt() * (t / v).powf(2.0 / 3.0);
                let batch = floor_tol(raw).max(1);
                let delta = v * batch as f64 / (2.0 * t);
                if !(delta > 0.0 && delta < 0.25) {
                    return Err(Error::BudgetTooLarge(format!(
                        "perturbation {delta} must lie in (0, 1/4) (T={}, V={v})",
                        self.horizon
                    )));
                }
                Ok((batch, delta))
            }
            AdversaryFamily::StronglyConvex => {
                let raw = (t / v).sqrt() / (2.0 * self.noise_constant).sqrt();
                let batch = floor_tol(raw).max(1);
                let delta = (2.0 * v * batch as f64 / t).sqrt();
                if !(delta > 0.0 && delta < 1.0) {
                    return Err(Error::BudgetTooLarge(format!(
                        "perturbation {delta} must lie in (0, 1) (T={}, V={v})",
                        self.horizon
                    )));
                }
                Ok((batch, delta))
            }
        }
    }
}

/// The two candidate costs of the convex construction, `[f1, f2]`.
pub fn convex_pair(delta: f64) -> Result<[CostInstance; 2]> {
    let bx = ActionBox::interval(0.0, 1.0)?;
    Ok([
        CostInstance::piecewise(PiecewiseConvexCost::new(delta, Side::Right)?, &bx)?,
        CostInstance::piecewise(PiecewiseConvexCost::new(delta, Side::Left)?, &bx)?,
    ])
}

/// `[x^2 - x + 3/4, x^2 - (1 + delta) x + 3/4 + delta/2]` on `[0, 1]`.
pub fn strongly_convex_pair(delta: f64) -> Result<[CostInstance; 2]> {
    let bx = ActionBox::interval(0.0, 1.0)?;
    Ok([
        CostInstance::quadratic(QuadraticCost::scalar(2.0, 1.0, 0.75)?, &bx)?,
        CostInstance::quadratic(QuadraticCost::scalar(2.0, 1.0 + delta, 0.75 + 0.5 * delta)?, &bx)?,
    ])
}

fn batch_random(
    pair: [CostInstance; 2],
    horizon: usize,
    batch: usize,
    rng: &mut RandomStream,
) -> Vec<CostInstance> {
    let mut costs = Vec::with_capacity(horizon);
    while costs.len() < horizon {
        let pick = if rng.coin() { &pair[0] } else { &pair[1] };
        let len = batch.min(horizon - costs.len());
        costs.extend(std::iter::repeat_n(pick.clone(), len));
    }
    costs
}

fn check_budget(seq: &FunctionSequence) -> Result<()> {
    let measured = variation(seq, seq.budget_mode, DEFAULT_GRID_PER_DIM)?;
    if measured > seq.declared_budget + BUDGET_TOL {
        return Err(Error::BudgetTooLarge(format!(
            "generated sequence has {} variation {measured} above its budget {}",
            seq.budget_mode.as_str(),
            seq.declared_budget
        )));
    }
    Ok(())
}

pub fn make_adversarial_convex(spec: &AdversarySpec, seed: u64) -> Result<FunctionSequence> {
    let mut rng = RandomStream::derive(seed, 0, Substream::Env);
    make_adversarial_from(spec, &mut rng)
}

pub fn make_adversarial_strongly_convex(spec: &AdversarySpec, seed: u64) -> Result<FunctionSequence> {
    let mut rng = RandomStream::derive(seed, 0, Substream::Env);
    make_adversarial_from(spec, &mut rng)
}

/// Batch-random two-function sequence for either family.
pub fn make_adversarial_from(spec: &AdversarySpec, rng: &mut RandomStream) -> Result<FunctionSequence> {
    let (batch, delta) = spec.batch_and_delta()?;
    let (pair, mode, name) = match spec.family {
        AdversaryFamily::ConvexGrad => (convex_pair(delta)?, VariationMode::Full, "adv-convex"),
        AdversaryFamily::StronglyConvex => (strongly_convex_pair(delta)?, VariationMode::Hull, "adv-strong"),
    };
    let costs = batch_random(pair, spec.horizon, batch, rng);
    let tag = format!("{name} batch={batch} delta={delta}");
    let seq = FunctionSequence::new(ActionBox::interval(0.0, 1.0)?, costs, spec.budget, mode, tag)?;
    check_budget(&seq)?;
    Ok(seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OgdFailureVariant {
    /// Built against a constant step `C / sqrt(T)`.
    ConstStep,
    /// Built against a harmonic step `C / t`.
    DecayingStep,
}

/// Two alternating quadratics `(x - alpha)^2` and `x^2` on `[-1, 3]` that
/// keep un-restarted OGD a constant distance from the minimizer.
///
/// `(x - alpha)^2` is stored as `a = 2, b = 2 alpha, c = alpha^2`.
pub fn make_ogd_failure(variant: OgdFailureVariant, horizon: usize, step_constant: f64) -> Result<FunctionSequence> {
    if horizon < 2 {
        return invalid("ogd-failure horizon must be at least 2");
    }
    if !(step_constant > 0.0) {
        return invalid(format!("step constant must be positive, got {step_constant}"));
    }
    let bx = ActionBox::interval(-1.0, 3.0)?;
    let (alpha, batch, shifted_first) = match variant {
        OgdFailureVariant::ConstStep => {
            let eta = step_constant / (horizon as f64).sqrt();
            if eta > 0.5 {
                return invalid(format!("step C/sqrt(T) = {eta} exceeds 1/2"));
            }
            let batch = floor_tol(1.0 + 1.0 / (2.0 * eta));
            (1.0 + (1.0 - 2.0 * eta).powi(batch as i32), batch, false)
        }
        OgdFailureVariant::DecayingStep => {
            if horizon % 2 != 0 {
                return invalid(format!("decaying-step instance needs an even horizon, got {horizon}"));
            }
            (1.0, horizon / 2, true)
        }
    };
    let shifted = CostInstance::quadratic(QuadraticCost::scalar(2.0, 2.0 * alpha, alpha * alpha)?, &bx)?;
    let centered = CostInstance::quadratic(QuadraticCost::scalar(2.0, 0.0, 0.0)?, &bx)?;
    let costs = (0..horizon)
        .map(|i| {
            let odd_batch = (i / batch) % 2 == 0;
            if odd_batch == shifted_first { shifted.clone() } else { centered.clone() }
        })
        .collect();
    let tag = format!("ogd-failure alpha={alpha} batch={batch}");
    FunctionSequence::with_measured_budget(bx, costs, VariationMode::Hull, tag)
}

/// `x^2` for the first half, `x^2 - 2x` for the second, on `[-1, 2]`.
pub fn make_oracle_gap(horizon: usize) -> Result<FunctionSequence> {
    if horizon == 0 || horizon % 2 != 0 {
        return invalid(format!("oracle-gap horizon must be even and positive, got {horizon}"));
    }
    let bx = ActionBox::interval(-1.0, 2.0)?;
    let first = CostInstance::quadratic(QuadraticCost::scalar(2.0, 0.0, 0.0)?, &bx)?;
    let second = CostInstance::quadratic(QuadraticCost::scalar(2.0, 2.0, 0.0)?, &bx)?;
    let costs = (0..horizon)
        .map(|i| if i < horizon / 2 { first.clone() } else { second.clone() })
        .collect();
    FunctionSequence::with_measured_budget(bx, costs, VariationMode::Hull, "oracle-gap")
}

/// CLI vocabulary for environments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvironmentKind {
    Pattern(Pattern),
    AdvConvex,
    AdvStrong,
    OgdFailure,
    OracleGap,
}

impl EnvironmentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EnvironmentKind::Pattern(p) => p.as_str(),
            EnvironmentKind::AdvConvex => "adv-convex",
            EnvironmentKind::AdvStrong => "adv-strong",
            EnvironmentKind::OgdFailure => "ogd-failure",
            EnvironmentKind::OracleGap => "oracle-gap",
        }
    }
}

impl fmt::Display for EnvironmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnvironmentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "shock" => EnvironmentKind::Pattern(Pattern::Shock),
            "decay" => EnvironmentKind::Pattern(Pattern::Decay),
            "linear" => EnvironmentKind::Pattern(Pattern::Linear),
            "adv-convex" => EnvironmentKind::AdvConvex,
            "adv-strong" => EnvironmentKind::AdvStrong,
            "ogd-failure" => EnvironmentKind::OgdFailure,
            "oracle-gap" => EnvironmentKind::OracleGap,
            _ => {
                return invalid(format!(
                    "unknown pattern `{s}` (expected shock|decay|linear|adv-convex|adv-strong|ogd-failure|oracle-gap)"
                ))
            }
        })
    }
}

/// Everything needed to draw one environment per replication.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentSpec {
    pub kind: EnvironmentKind,
    /// Budget for the adversarial constructions.
    pub budget: f64,
    /// Noise level used to derive the adversarial noise constant.
    pub sigma: f64,
    /// Step constant for `ogd-failure` (decaying-step variant).
    pub step_constant: f64,
    /// Exponent factor of the decay pattern.
    pub decay_rate: f64,
}

impl EnvironmentSpec {
    pub fn new(kind: EnvironmentKind) -> Self {
        EnvironmentSpec { kind, budget: 1.0, sigma: 0.3, step_constant: 1.0, decay_rate: 10.0 }
    }

    /// Draws the environment for `horizon` using the env substream `rng`.
    pub fn generate(&self, horizon: usize, rng: &mut RandomStream) -> Result<FunctionSequence> {
        match self.kind {
            EnvironmentKind::Pattern(p) => {
                let mut spec = PatternSpec::new(p, horizon);
                spec.decay_rate = self.decay_rate;
                make_appendix_c_from(&spec, rng)
            }
            EnvironmentKind::AdvConvex => {
                let spec = AdversarySpec::gaussian(AdversaryFamily::ConvexGrad, horizon, self.budget, self.sigma)?;
                make_adversarial_from(&spec, rng)
            }
            EnvironmentKind::AdvStrong => {
                let spec =
                    AdversarySpec::gaussian(AdversaryFamily::StronglyConvex, horizon, self.budget, self.sigma)?;
                make_adversarial_from(&spec, rng)
            }
            EnvironmentKind::OgdFailure => make_ogd_failure(OgdFailureVariant::DecayingStep, horizon, self.step_constant),
            EnvironmentKind::OracleGap => make_oracle_gap(horizon),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::minimizer_hull;

    fn b_of(seq: &FunctionSequence, t: usize) -> f64 {
        seq.at(t).as_quadratic().unwrap().b[0]
    }

    #[test]
    fn shock_with_known_change() {
        let seq = appendix_c_with_tau(&PatternSpec::new(Pattern::Shock, 1000), 250).unwrap();
        assert!((1..=250).all(|t| b_of(&seq, t) == 1.0));
        assert!((251..=1000).all(|t| b_of(&seq, t) == 0.0));
        assert_eq!(seq.declared_budget, 1.0);
        assert_eq!(variation(&seq, VariationMode::Full, 1001).unwrap(), 3.0);
    }

    #[test]
    fn linear_and_decay_values() {
        let t_big = 1000;
        let lin = appendix_c_with_tau(&PatternSpec::new(Pattern::Linear, t_big), 100).unwrap();
        assert_eq!(b_of(&lin, 1000), 0.0);
        assert!((b_of(&lin, 550) - 450.0 / 900.0).abs() < 1e-15);
        let dec = appendix_c_with_tau(&PatternSpec::new(Pattern::Decay, t_big), 100).unwrap();
        assert!((b_of(&dec, 200) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((b_of(&dec, 200) - 0.36788).abs() < 1e-5);
    }

    #[test]
    fn change_time_is_uniform_on_first_quarter() {
        let spec = PatternSpec::new(Pattern::Shock, 40);
        let mut seen = [0usize; 11];
        for seed in 0..2000 {
            let seq = make_appendix_c(&spec, seed).unwrap();
            let tau = (1..=40).take_while(|&t| b_of(&seq, t) == 1.0).count();
            assert!((1..=10).contains(&tau));
            seen[tau] += 1;
        }
        assert!(seen[1..].iter().all(|&n| n > 120 && n < 280), "{seen:?}");
    }

    #[test]
    fn pattern_invariants_and_budget() {
        for p in Pattern::ALL {
            for seed in 0..5 {
                let seq = make_appendix_c(&PatternSpec::new(p, 2000), seed).unwrap();
                let bs: Vec<f64> = (1..=2000).map(|t| b_of(&seq, t)).collect();
                let tau = bs.iter().take_while(|&&b| b == 1.0).count();
                assert!(tau >= 1 && tau <= 500);
                assert!(bs.windows(2).all(|w| w[1] <= w[0]));
                let hull = variation(&seq, VariationMode::Hull, 1001).unwrap();
                assert!(hull <= 1.0 + 1e-9);
                assert!(hull <= seq.declared_budget + 1e-9);
            }
        }
    }

    #[test]
    fn determinism() {
        let spec = PatternSpec::new(Pattern::Decay, 1500);
        assert_eq!(make_appendix_c(&spec, 11).unwrap(), make_appendix_c(&spec, 11).unwrap());
        let adv = AdversarySpec::gaussian(AdversaryFamily::ConvexGrad, 1000, 1.0, 0.3).unwrap();
        assert_eq!(make_adversarial_convex(&adv, 5).unwrap(), make_adversarial_convex(&adv, 5).unwrap());
    }

    #[test]
    fn convex_adversary_tuning() {
        let adv = AdversarySpec::gaussian(AdversaryFamily::ConvexGrad, 1000, 1.0, 0.3).unwrap();
        assert!((adv.noise_constant - 5.5556).abs() < 1e-4);
        let (batch, delta) = adv.batch_and_delta().unwrap();
        assert_eq!(batch, 35);
        assert!((delta - 0.0175).abs() < 1e-15);
        let seq = make_adversarial_convex(&adv, 3).unwrap();
        for t in 1..=1000 {
            let (x, _) = seq.at(t).minimize(seq.action_box());
            assert!((x[0] - 0.7675).abs() < 1e-12 || (x[0] - 0.2325).abs() < 1e-12);
        }
        // batch constancy
        for t in 1..1000 {
            if t % 35 != 0 {
                assert_eq!(seq.at(t), seq.at(t + 1));
            }
        }
        assert!(variation(&seq, VariationMode::Full, 1001).unwrap() <= 1.0 + 1e-9);
    }

    #[test]
    fn convex_adversary_rejects_large_budget() {
        let adv = AdversarySpec::gaussian(AdversaryFamily::ConvexGrad, 1000, 1000.0, 0.3).unwrap();
        assert!(matches!(make_adversarial_convex(&adv, 0), Err(Error::BudgetTooLarge(_))));
        let bad = AdversarySpec { horizon: 0, ..adv };
        assert!(matches!(bad.batch_and_delta(), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn strongly_convex_adversary_tuning() {
        let adv = AdversarySpec::gaussian(AdversaryFamily::StronglyConvex, 10_000, 1.0, 0.3).unwrap();
        let (batch, delta) = adv.batch_and_delta().unwrap();
        assert_eq!(batch, 30);
        assert!((delta - 0.0774597).abs() < 1e-6);
        let seq = make_adversarial_strongly_convex(&adv, 9).unwrap();
        for t in 1..=10_000 {
            let (x, _) = seq.at(t).minimize(seq.action_box());
            assert!((x[0] - 0.5).abs() < 1e-12 || (x[0] - (1.0 + delta) / 2.0).abs() < 1e-12);
        }
        let v = variation(&seq, VariationMode::Hull, 1001).unwrap();
        assert!(v <= 1.0 + 1e-9, "{v}");
        let h = minimizer_hull(&seq);
        assert!(h.lo()[0] >= 0.5 - 1e-12);
    }

    #[test]
    fn short_final_batch_is_drawn() {
        let adv = AdversarySpec::gaussian(AdversaryFamily::StronglyConvex, 10_010, 1.0, 0.3).unwrap();
        let seq = make_adversarial_strongly_convex(&adv, 1).unwrap();
        assert_eq!(seq.horizon(), 10_010);
    }

    #[test]
    fn ogd_failure_instances() {
        let seq = make_ogd_failure(OgdFailureVariant::DecayingStep, 1000, 1.0).unwrap();
        let g1 = seq.at(1).as_quadratic().unwrap().clone();
        assert_eq!((g1.a, g1.b[0], g1.c), (2.0, 2.0, 1.0));
        assert!((1..=500).all(|t| seq.at(t) == seq.at(1)));
        assert!((501..=1000).all(|t| seq.at(t).as_quadratic().unwrap().b[0] == 0.0));
        assert!((variation(&seq, VariationMode::Hull, 1001).unwrap() - 1.0).abs() < 1e-15);
        assert!(make_ogd_failure(OgdFailureVariant::DecayingStep, 999, 1.0).is_err());

        let seq = make_ogd_failure(OgdFailureVariant::ConstStep, 10_000, 0.5).unwrap();
        let alpha = 1.0 + 0.99f64.powi(101);
        assert!((0.99f64.powi(101) - 0.36237).abs() < 1e-5);
        assert!(seq.generator_tag.contains("batch=101"));
        assert_eq!(seq.at(1).as_quadratic().unwrap().b[0], 0.0);
        assert!((seq.at(102).as_quadratic().unwrap().b[0] - 2.0 * alpha).abs() < 1e-12);
        assert!(make_ogd_failure(OgdFailureVariant::ConstStep, 1, 1.0).is_err());
        assert!(make_ogd_failure(OgdFailureVariant::ConstStep, 3, 1.0).is_err());
    }

    #[test]
    fn oracle_gap_instance() {
        let seq = make_oracle_gap(4).unwrap();
        assert_eq!(seq.at(1).minimize(seq.action_box()).0[0], 0.0);
        assert_eq!(seq.at(4).minimize(seq.action_box()).0[0], 1.0);
        assert!(make_oracle_gap(5).is_err());
        assert!(variation(&seq, seq.budget_mode, 1001).unwrap() <= seq.declared_budget + 1e-12);
    }

    #[test]
    fn environment_names_parse() {
        for name in ["shock", "decay", "linear", "adv-convex", "adv-strong", "ogd-failure", "oracle-gap"] {
            assert_eq!(name.parse::<EnvironmentKind>().unwrap().as_str(), name);
        }
        assert!("nope".parse::<EnvironmentKind>().is_err());
    }
}
