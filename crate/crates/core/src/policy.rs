//! Policies as resettable state machines: projected online gradient descent,
//! the one-point estimated-gradient step, and the restarting wrapper.

use std::fmt;
use std::str::FromStr;

use crate::cost::{minimizer_hull, FunctionSequence};
use crate::error::{invalid, Error, Result};
use crate::feedback::{FeedbackKind, Observation, RandomStream};
use crate::space::{Action, ActionBox};

/// Floor applied to the default interiority constant.
pub const MIN_INTERIORITY: f64 = 1e-3;

/// Step sizes of OGD as a function of the local step index `k >= 1`
/// (the `k`-th gradient step since the last restart).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    Constant(f64),
    /// `r / (G sqrt(batch))`.
    OgdBatch { r: f64, g: f64, batch: usize },
    /// `1 / (H k)`.
    StronglyConvex { h: f64 },
    /// `(r / G) (V / T)^(1/3)`.
    Tuned { r: f64, g: f64, budget: f64, horizon: usize },
    /// A fixed, non-updating step.
    Fixed(f64),
}

impl StepSchedule {
    #[inline]
    pub fn step(&self, k: usize) -> f64 {
        match *self {
            StepSchedule::Constant(eta) | StepSchedule::Fixed(eta) => eta,
            StepSchedule::OgdBatch { r, g, batch } => r / (g * (batch as f64).sqrt()),
            StepSchedule::StronglyConvex { h } => 1.0 / (h * k as f64),
            StepSchedule::Tuned { r, g, budget, horizon } => (r / g) * (budget / horizon as f64).cbrt(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            StepSchedule::Constant(eta) | StepSchedule::Fixed(eta) => eta > 0.0 && eta.is_finite(),
            StepSchedule::OgdBatch { r, g, batch } => r > 0.0 && g > 0.0 && batch >= 1,
            StepSchedule::StronglyConvex { h } => h > 0.0 && h.is_finite(),
            StepSchedule::Tuned { r, g, budget, horizon } => {
                r > 0.0 && g > 0.0 && budget >= 1.0 && budget <= horizon as f64
            }
        };
        if ok {
            Ok(())
        } else {
            invalid(format!("invalid step schedule {self:?}"))
        }
    }
}

/// `eta = (r / G) (V / T)^(1/3)` for every step.
pub fn tuned_ogd_schedule(r: f64, g: f64, budget: f64, horizon: usize) -> Result<StepSchedule> {
    let s = StepSchedule::Tuned { r, g, budget, horizon };
    s.validate()?;
    Ok(s)
}

fn check_budget(horizon: usize, budget: f64) -> Result<()> {
    if horizon < 1 || !(budget >= 1.0 && budget <= horizon as f64) {
        return invalid(format!("need 1 <= V <= T, got V={budget}, T={horizon}"));
    }
    Ok(())
}

/// `ceil((T / V)^(2/3))`.
pub fn batch_size_convex(horizon: usize, budget: f64) -> Result<usize> {
    check_budget(horizon, budget)?;
    let raw = (horizon as f64 / budget).powf(2.0 / 3.0);
    Ok(ceil_tol(raw).max(1))
}

/// `ceil(sqrt(T ln T / V))`, natural logarithm.
pub fn batch_size_strongly_convex_grad(horizon: usize, budget: f64) -> Result<usize> {
    check_budget(horizon, budget)?;
    if horizon < 2 {
        return invalid("strongly convex batch size needs T >= 2");
    }
    let t = horizon as f64;
    Ok(ceil_tol((t * t.ln() / budget).sqrt()).max(1))
}

// Ceiling that ignores rounding noise just above an integer.
fn ceil_tol(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialMode {
    Center,
    ZeroIfFeasible,
    Given(Vec<f64>),
}

pub fn initial_action(bx: &ActionBox, mode: &InitialMode) -> Result<Action> {
    match mode {
        InitialMode::Center => Ok(bx.center()),
        InitialMode::ZeroIfFeasible => {
            let zero = vec![0.0; bx.dim()];
            Ok(if bx.contains(&zero) { Action(zero) } else { bx.center() })
        }
        InitialMode::Given(x) => {
            if !bx.contains(x) {
                return invalid(format!("initial action {x:?} is outside the box {bx}"));
            }
            Ok(Action(x.clone()))
        }
    }
}

/// What a restart resets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RestartVariant {
    /// Schedules and the action return to their initial state.
    Full,
    /// Only the schedule clocks restart; the iterate carries over.
    WarmStart,
}

impl FromStr for RestartVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(RestartVariant::Full),
            "warm" | "warm_start" | "warm-start" => Ok(RestartVariant::WarmStart),
            _ => invalid(format!("unknown restart variant `{s}` (expected full|warm)")),
        }
    }
}

/// An online policy driven by one observation per epoch.
pub trait Policy: Send {
    fn feedback_kind(&self) -> FeedbackKind;

    /// Action played in the current epoch.
    fn action(&self) -> &[f64];

    /// Point at which the current epoch's feedback is observed.
    fn query_point(&self) -> &[f64] {
        self.action()
    }

    /// Consumes the current epoch's feedback and moves to the next epoch.
    fn update(&mut self, obs: Observation<'_>) -> Result<()>;

    /// Restarts the schedules; see [`RestartVariant`].
    fn restart(&mut self, variant: RestartVariant);

    /// Steps taken since the last restart.
    fn local_clock(&self) -> usize;

    /// Batch length when the policy restarts periodically.
    fn batch_size(&self) -> Option<usize> {
        None
    }
}

fn fault(what: impl Into<String>) -> Error {
    Error::NumericFault { epoch: 0, what: what.into() }
}

/// Projected online gradient descent.
#[derive(Debug, Clone)]
pub struct Ogd {
    bx: ActionBox,
    schedule: StepSchedule,
    initial: Action,
    x: Vec<f64>,
    clock: usize,
}

impl Ogd {
    pub fn new(bx: ActionBox, schedule: StepSchedule, initial: Action) -> Result<Self> {
        schedule.validate()?;
        if !bx.contains(&initial) {
            return invalid("initial action is outside the box");
        }
        Ok(Ogd { x: initial.0.clone(), bx, schedule, initial, clock: 0 })
    }

    pub fn schedule(&self) -> &StepSchedule {
        &self.schedule
    }

    /// `X <- P(X - eta_{k} g)` with `k` the advanced local clock.
    pub fn ogd_step(&mut self, g: &[f64]) -> Result<&[f64]> {
        if g.len() != self.x.len() {
            return invalid(format!("gradient has dimension {}, action {}", g.len(), self.x.len()));
        }
        if !g.iter().all(|v| v.is_finite()) {
            return Err(fault("non-finite gradient feedback"));
        }
        self.clock += 1;
        let eta = self.schedule.step(self.clock);
        for (x, gk) in self.x.iter_mut().zip(g) {
            *x -= eta * gk;
        }
        self.bx.project_in_place(&mut self.x);
        Ok(&self.x)
    }
}

impl Policy for Ogd {
    fn feedback_kind(&self) -> FeedbackKind {
        FeedbackKind::Gradient
    }

    fn action(&self) -> &[f64] {
        &self.x
    }

    fn update(&mut self, obs: Observation<'_>) -> Result<()> {
        match obs {
            Observation::Gradient(g) => self.ogd_step(g).map(|_| ()),
            Observation::Cost(_) => invalid("OGD needs gradient feedback"),
        }
    }

    fn restart(&mut self, variant: RestartVariant) {
        self.clock = 0;
        if variant == RestartVariant::Full {
            self.x.copy_from_slice(&self.initial);
        }
    }

    fn local_clock(&self) -> usize {
        self.clock
    }
}

/// Step, probe radius and interior offset of the estimated-gradient step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EgsSchedule {
    /// `a_k = 2d / (H k)`, `h_k = delta_k = min(nu, a_k^(1/4))`.
    Decreasing { h: f64, d: usize, nu: f64 },
    /// `a_k = a`, `h_k = delta_k = min(nu, a^(1/4))`.
    Fixed { a: f64, nu: f64 },
}

impl EgsSchedule {
    #[inline]
    pub fn step(&self, k: usize) -> f64 {
        match *self {
            EgsSchedule::Decreasing { h, d, .. } => 2.0 * d as f64 / (h * k as f64),
            EgsSchedule::Fixed { a, .. } => a,
        }
    }

    /// Probe radius, equal to the interior offset.
    #[inline]
    pub fn radius(&self, k: usize) -> f64 {
        let nu = match *self {
            EgsSchedule::Decreasing { nu, .. } | EgsSchedule::Fixed { nu, .. } => nu,
        };
        nu.min(self.step(k).powf(0.25))
    }

    pub fn nu(&self) -> f64 {
        match *self {
            EgsSchedule::Decreasing { nu, .. } | EgsSchedule::Fixed { nu, .. } => nu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            EgsSchedule::Decreasing { h, d, nu } => h > 0.0 && d >= 1 && nu > 0.0,
            EgsSchedule::Fixed { a, nu } => a > 0.0 && nu > 0.0,
        };
        if ok {
            Ok(())
        } else {
            invalid(format!("invalid EGS schedule {self:?}"))
        }
    }
}

/// One-point estimated-gradient step on the shrinking interior of the box.
///
/// Per step `k`: with the cost `y` observed at the probe `Z + h_k psi`,
/// `Z <- P_{delta_k}(Z - a_k y psi / h_k)`. By default the next played action
/// is `Z + h_{k+1} psi` with the direction just used, and a fresh direction
/// is drawn for the next probe; with `fresh_psi` the played action and the
/// probe coincide at `Z + h_{k+1} psi_new`.
#[derive(Debug, Clone)]
pub struct Egs {
    bx: ActionBox,
    schedule: EgsSchedule,
    initial: Action,
    fresh_psi: bool,
    rng: RandomStream,
    z: Vec<f64>,
    x: Vec<f64>,
    probe: Vec<f64>,
    // signed coordinate direction of the pending probe
    psi_axis: usize,
    psi_sign: f64,
    probe_radius: f64,
    clock: usize,
}

impl Egs {
    pub fn new(
        bx: ActionBox,
        schedule: EgsSchedule,
        initial: Action,
        fresh_psi: bool,
        rng: RandomStream,
    ) -> Result<Self> {
        schedule.validate()?;
        if !bx.contains(&initial) {
            return invalid("initial action is outside the box");
        }
        if schedule.nu() > bx.min_half_width() {
            return invalid(format!(
                "interiority constant {} exceeds the box half-width {}",
                schedule.nu(),
                bx.min_half_width()
            ));
        }
        let d = bx.dim();
        let mut egs = Egs {
            bx,
            schedule,
            initial,
            fresh_psi,
            rng,
            z: vec![0.0; d],
            x: vec![0.0; d],
            probe: vec![0.0; d],
            psi_axis: 0,
            psi_sign: 1.0,
            probe_radius: 0.0,
            clock: 0,
        };
        egs.reset_iterate();
        Ok(egs)
    }

    pub fn schedule(&self) -> &EgsSchedule {
        &self.schedule
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    /// Current probe direction as `(axis, sign)`.
    pub fn direction(&self) -> (usize, f64) {
        (self.psi_axis, self.psi_sign)
    }

    fn draw_direction(&mut self) {
        let pick = self.rng.index(2 * self.bx.dim());
        self.psi_axis = pick / 2;
        self.psi_sign = if pick % 2 == 0 { 1.0 } else { -1.0 };
    }

    fn set_probe(&mut self, radius: f64) {
        self.probe_radius = radius;
        self.probe.copy_from_slice(&self.z);
        self.probe[self.psi_axis] += radius * self.psi_sign;
    }

    fn reset_iterate(&mut self) {
        let delta = self.schedule.radius(1);
        self.z.copy_from_slice(&self.initial);
        self.bx.project_interior_in_place(delta, &mut self.z);
        self.x.copy_from_slice(&self.z);
        self.clock = 0;
        self.draw_direction();
        self.set_probe(delta);
        if self.fresh_psi {
            self.x.copy_from_slice(&self.probe);
        }
    }

    /// The gradient estimate `y psi / h` for the pending probe.
    pub fn estimate(&self, y: f64) -> Vec<f64> {
        let mut g = vec![0.0; self.z.len()];
        g[self.psi_axis] = y * self.psi_sign / self.probe_radius;
        g
    }

    /// One estimated-gradient step from the cost `y` observed at the probe.
    pub fn egs_step(&mut self, y: f64) -> Result<&[f64]> {
        if !y.is_finite() {
            return Err(fault("non-finite cost feedback"));
        }
        self.clock += 1;
        let k = self.clock;
        let a = self.schedule.step(k);
        let delta = self.schedule.radius(k);
        let grad = y * self.psi_sign / self.probe_radius;
        self.z[self.psi_axis] -= a * grad;
        self.bx.project_interior_in_place(delta, &mut self.z);

        let next_radius = self.schedule.radius(k + 1);
        if self.fresh_psi {
            self.draw_direction();
            self.set_probe(next_radius);
            self.x.copy_from_slice(&self.probe);
        } else {
            self.x.copy_from_slice(&self.z);
            self.x[self.psi_axis] += next_radius * self.psi_sign;
            self.draw_direction();
            self.set_probe(next_radius);
        }
        Ok(&self.x)
    }
}

impl Policy for Egs {
    fn feedback_kind(&self) -> FeedbackKind {
        FeedbackKind::Cost
    }

    fn action(&self) -> &[f64] {
        &self.x
    }

    fn query_point(&self) -> &[f64] {
        &self.probe
    }

    fn update(&mut self, obs: Observation<'_>) -> Result<()> {
        match obs {
            Observation::Cost(y) => self.egs_step(y).map(|_| ()),
            Observation::Gradient(_) => invalid("EGS needs cost feedback"),
        }
    }

    fn restart(&mut self, variant: RestartVariant) {
        match variant {
            RestartVariant::Full => self.reset_iterate(),
            RestartVariant::WarmStart => self.clock = 0,
        }
    }

    fn local_clock(&self) -> usize {
        self.clock
    }
}

/// Restarts an inner policy every `batch` epochs.
///
/// `Full` discards the step taken on the last feedback of a batch and
/// returns to the initial state. `WarmStart` resets the clocks first, so the
/// first action of the next batch is one fresh-schedule step from the last
/// action of the previous one.
pub struct Restarted<P> {
    inner: P,
    batch: usize,
    variant: RestartVariant,
    position: usize,
}

impl<P: Policy> Restarted<P> {
    pub fn new(inner: P, batch: usize, variant: RestartVariant) -> Result<Self> {
        if batch < 1 {
            return invalid("restart batch size must be at least 1");
        }
        Ok(Restarted { inner, batch, variant, position: 0 })
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }

    pub fn variant(&self) -> RestartVariant {
        self.variant
    }
}

/// Wraps `inner` in the restarting procedure.
pub fn restart_wrap<P: Policy>(inner: P, batch: usize, variant: RestartVariant) -> Result<Restarted<P>> {
    Restarted::new(inner, batch, variant)
}

impl<P: Policy> Policy for Restarted<P> {
    fn feedback_kind(&self) -> FeedbackKind {
        self.inner.feedback_kind()
    }

    fn action(&self) -> &[f64] {
        self.inner.action()
    }

    fn query_point(&self) -> &[f64] {
        self.inner.query_point()
    }

    fn update(&mut self, obs: Observation<'_>) -> Result<()> {
        self.position += 1;
        if self.position < self.batch {
            return self.inner.update(obs);
        }
        self.position = 0;
        match self.variant {
            RestartVariant::Full => {
                self.inner.update(obs)?;
                self.inner.restart(RestartVariant::Full);
                Ok(())
            }
            RestartVariant::WarmStart => {
                self.inner.restart(RestartVariant::WarmStart);
                self.inner.update(obs)
            }
        }
    }

    fn restart(&mut self, variant: RestartVariant) {
        self.position = 0;
        self.inner.restart(variant);
    }

    fn local_clock(&self) -> usize {
        self.inner.local_clock()
    }

    fn batch_size(&self) -> Option<usize> {
        Some(self.batch)
    }
}

impl Policy for Box<dyn Policy> {
    fn feedback_kind(&self) -> FeedbackKind {
        (**self).feedback_kind()
    }
    fn action(&self) -> &[f64] {
        (**self).action()
    }
    fn query_point(&self) -> &[f64] {
        (**self).query_point()
    }
    fn update(&mut self, obs: Observation<'_>) -> Result<()> {
        (**self).update(obs)
    }
    fn restart(&mut self, variant: RestartVariant) {
        (**self).restart(variant)
    }
    fn local_clock(&self) -> usize {
        (**self).local_clock()
    }
    fn batch_size(&self) -> Option<usize> {
        (**self).batch_size()
    }
}

/// CLI vocabulary for policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicyName {
    RestartedOgd,
    Ogd,
    TunedOgd,
    FixedOgd(f64),
    RestartedEgs,
    Egs,
    FixedEgs(f64),
}

impl PolicyName {
    pub fn feedback_kind(self) -> FeedbackKind {
        match self {
            PolicyName::RestartedOgd | PolicyName::Ogd | PolicyName::TunedOgd | PolicyName::FixedOgd(_) => {
                FeedbackKind::Gradient
            }
            PolicyName::RestartedEgs | PolicyName::Egs | PolicyName::FixedEgs(_) => FeedbackKind::Cost,
        }
    }
}

impl fmt::Display for PolicyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyName::RestartedOgd => f.write_str("restarted-ogd"),
            PolicyName::Ogd => f.write_str("ogd"),
            PolicyName::TunedOgd => f.write_str("tuned-ogd"),
            PolicyName::FixedOgd(a) => write!(f, "fixed-ogd:{a}"),
            PolicyName::RestartedEgs => f.write_str("restarted-egs"),
            PolicyName::Egs => f.write_str("egs"),
            PolicyName::FixedEgs(a) => write!(f, "fixed-egs:{a}"),
        }
    }
}

impl FromStr for PolicyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let fixed = |v: &str| -> Result<f64> {
            match v.parse::<f64>() {
                Ok(a) if a > 0.0 && a.is_finite() => Ok(a),
                _ => invalid(format!("fixed step must be a positive number, got `{v}`")),
            }
        };
        Ok(match s {
            "restarted-ogd" => PolicyName::RestartedOgd,
            "ogd" => PolicyName::Ogd,
            "tuned-ogd" => PolicyName::TunedOgd,
            "restarted-egs" => PolicyName::RestartedEgs,
            "egs" => PolicyName::Egs,
            _ => match s.split_once(':') {
                Some(("fixed-ogd", a)) => PolicyName::FixedOgd(fixed(a)?),
                Some(("fixed-egs", a)) => PolicyName::FixedEgs(fixed(a)?),
                _ => {
                    return invalid(format!(
                        "unknown policy `{s}` (expected restarted-ogd|ogd|tuned-ogd|fixed-ogd:<a>|restarted-egs|egs|fixed-egs:<a>)"
                    ))
                }
            },
        })
    }
}

/// Step rule of the OGD subroutine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OgdRule {
    /// `1 / (H k)`.
    StronglyConvex,
    /// `r / (G sqrt(batch))`.
    ConvexBatch,
}

impl FromStr for OgdRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strongly-convex" => Ok(OgdRule::StronglyConvex),
            "convex" => Ok(OgdRule::ConvexBatch),
            _ => invalid(format!("unknown OGD step rule `{s}` (expected strongly-convex|convex)")),
        }
    }
}

/// Batch-size rule of the restarting procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BatchRule {
    /// `ceil((T / V)^(2/3))`.
    TwoThirds,
    /// `ceil(sqrt(T ln T / V))`.
    SqrtLog,
    Explicit(usize),
}

impl FromStr for BatchRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-thirds" => Ok(BatchRule::TwoThirds),
            "sqrt-log" => Ok(BatchRule::SqrtLog),
            n => match n.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(BatchRule::Explicit(v)),
                _ => invalid(format!("unknown batch rule `{s}` (expected two-thirds|sqrt-log|<n>)")),
            },
        }
    }
}

impl BatchRule {
    pub fn batch(self, horizon: usize, budget: f64) -> Result<usize> {
        match self {
            BatchRule::TwoThirds => batch_size_convex(horizon, budget),
            BatchRule::SqrtLog => batch_size_strongly_convex_grad(horizon, budget),
            BatchRule::Explicit(n) => Ok(n),
        }
    }
}

/// A policy name plus the knobs needed to instantiate it on a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicySpec {
    pub name: PolicyName,
    pub restart: RestartVariant,
    pub ogd_rule: OgdRule,
    pub batch_rule: BatchRule,
    pub initial: InitialMode,
    pub egs_fresh_psi: bool,
    /// Overrides for the family constants; derived from the sequence when `None`.
    pub radius: Option<f64>,
    pub lipschitz: Option<f64>,
    pub curvature: Option<f64>,
    pub interiority: Option<f64>,
}

impl PolicySpec {
    pub fn new(name: PolicyName) -> Self {
        PolicySpec {
            name,
            restart: RestartVariant::WarmStart,
            ogd_rule: OgdRule::StronglyConvex,
            batch_rule: BatchRule::TwoThirds,
            initial: InitialMode::Center,
            egs_fresh_psi: false,
            radius: None,
            lipschitz: None,
            curvature: None,
            interiority: None,
        }
    }

    fn curvature_for(&self, seq: &FunctionSequence) -> Result<f64> {
        match self.curvature.or_else(|| seq.min_curvature()) {
            Some(h) if h > 0.0 => Ok(h),
            _ => invalid("strong-convexity constant H unavailable; pass it explicitly"),
        }
    }

    /// Default interiority: half the distance from the minimizer hull to the
    /// boundary, floored at [`MIN_INTERIORITY`] and capped by the half-width.
    pub fn interiority_for(&self, seq: &FunctionSequence) -> f64 {
        if let Some(nu) = self.interiority {
            return nu;
        }
        let bx = seq.action_box();
        let hull = minimizer_hull(seq);
        let gap = (0..bx.dim())
            .map(|k| (hull.lo()[k] - bx.lo()[k]).min(bx.hi()[k] - hull.hi()[k]))
            .fold(f64::INFINITY, f64::min);
        (0.5 * gap).max(MIN_INTERIORITY).min(bx.min_half_width())
    }

    fn ogd_schedule(&self, seq: &FunctionSequence, batch: usize) -> Result<StepSchedule> {
        Ok(match self.ogd_rule {
            OgdRule::StronglyConvex => StepSchedule::StronglyConvex { h: self.curvature_for(seq)? },
            OgdRule::ConvexBatch => StepSchedule::OgdBatch {
                r: self.radius.unwrap_or_else(|| seq.action_box().radius()),
                g: self.lipschitz.unwrap_or_else(|| seq.bounds().value.max(seq.bounds().grad)),
                batch,
            },
        })
    }

    /// Instantiates the policy for `seq`, tuning with `budget` (the assumed
    /// variation budget, which may differ from the truth).
    pub fn build(&self, seq: &FunctionSequence, budget: f64, rng: RandomStream) -> Result<Box<dyn Policy>> {
        let bx = seq.action_box().clone();
        let horizon = seq.horizon();
        let x0 = initial_action(&bx, &self.initial)?;
        let egs_decreasing = || -> Result<EgsSchedule> {
            Ok(EgsSchedule::Decreasing { h: self.curvature_for(seq)?, d: bx.dim(), nu: self.interiority_for(seq) })
        };
        Ok(match self.name {
            PolicyName::RestartedOgd => {
                let batch = self.batch_rule.batch(horizon, budget)?;
                let ogd = Ogd::new(bx.clone(), self.ogd_schedule(seq, batch)?, x0)?;
                Box::new(Restarted::new(ogd, batch, self.restart)?)
            }
            PolicyName::Ogd => {
                // without restarts the subroutine sees one batch of length T
                Box::new(Ogd::new(bx.clone(), self.ogd_schedule(seq, horizon)?, x0)?)
            }
            PolicyName::TunedOgd => {
                let r = self.radius.unwrap_or_else(|| bx.radius());
                let g = self.lipschitz.unwrap_or_else(|| seq.bounds().value.max(seq.bounds().grad));
                Box::new(Ogd::new(bx.clone(), tuned_ogd_schedule(r, g, budget, horizon)?, x0)?)
            }
            PolicyName::FixedOgd(a) => Box::new(Ogd::new(bx.clone(), StepSchedule::Fixed(a), x0)?),
            PolicyName::RestartedEgs => {
                let batch = match self.batch_rule {
                    BatchRule::Explicit(n) => n,
                    _ => batch_size_convex(horizon, budget)?,
                };
                let egs = Egs::new(bx.clone(), egs_decreasing()?, x0, self.egs_fresh_psi, rng)?;
                Box::new(Restarted::new(egs, batch, self.restart)?)
            }
            PolicyName::Egs => Box::new(Egs::new(bx.clone(), egs_decreasing()?, x0, self.egs_fresh_psi, rng)?),
            PolicyName::FixedEgs(a) => {
                let nu = self.interiority_for(seq);
                Box::new(Egs::new(bx.clone(), EgsSchedule::Fixed { a, nu }, x0, self.egs_fresh_psi, rng)?)
            }
        })
    }
}
