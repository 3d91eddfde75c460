//! Noisy cost and gradient observation channels, and the seeded random
//! streams that drive them.
//!
//! Streams are ChaCha8 instances. The 256-bit key is expanded with
//! SplitMix64 from `(seed, substream)`; the 64-bit ChaCha stream selector is
//! the replication index. Any `(seed, stream_id, substream)` triple can be
//! opened directly without drawing through earlier replications.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cost::CostInstance;
use crate::error::{invalid, Result};

/// Independent consumers of randomness within one replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Substream {
    /// Environment draws (change time, adversarial batch draws).
    Env,
    /// Observation noise.
    Noise,
    /// Internal randomisation of a policy (EGS probe directions).
    Policy,
}

impl Substream {
    fn tag(self) -> u64 {
        match self {
            Substream::Env => 0x656e_7600,
            Substream::Noise => 0x6e6f_6973,
            Substream::Policy => 0x706f_6c69,
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A reproducible random stream identified by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    /// The noise substream of replication `stream_id`.
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self::derive(seed, stream_id, Substream::Noise)
    }

    pub fn derive(seed: u64, stream_id: u64, sub: Substream) -> Self {
        let mut state = seed ^ sub.tag().rotate_left(32);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream_id);
        RandomStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform on `0..n`.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Uniform on `lo..=hi`.
    pub fn integer_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

/// Additive zero-mean Gaussian noise with standard deviation `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    sigma: f64,
}

impl NoiseModel {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return invalid(format!("noise sigma must be finite and nonnegative, got {sigma}"));
        }
        Ok(NoiseModel { sigma })
    }

    pub fn noiseless() -> Self {
        NoiseModel { sigma: 0.0 }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    #[inline]
    fn draw(&self, rng: &mut RandomStream) -> f64 {
        if self.sigma == 0.0 {
            0.0
        } else {
            self.sigma * rng.standard_normal()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeedbackKind {
    Cost,
    Gradient,
}

impl FeedbackKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FeedbackKind::Cost => "cost",
            FeedbackKind::Gradient => "grad",
        }
    }
}

impl std::str::FromStr for FeedbackKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cost" => Ok(FeedbackKind::Cost),
            "grad" | "gradient" => Ok(FeedbackKind::Gradient),
            _ => invalid(format!("unknown feedback kind `{s}` (expected cost|grad)")),
        }
    }
}

/// An owned observation.
#[derive(Debug, Clone, PartialEq)]
pub enum FeedbackSample {
    Cost(f64),
    Gradient(Vec<f64>),
}

impl FeedbackSample {
    pub fn kind(&self) -> FeedbackKind {
        match self {
            FeedbackSample::Cost(_) => FeedbackKind::Cost,
            FeedbackSample::Gradient(_) => FeedbackKind::Gradient,
        }
    }

    pub fn as_observation(&self) -> Observation<'_> {
        match self {
            FeedbackSample::Cost(v) => Observation::Cost(*v),
            FeedbackSample::Gradient(g) => Observation::Gradient(g),
        }
    }
}

/// A borrowed observation, as handed to policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observation<'a> {
    Cost(f64),
    Gradient(&'a [f64]),
}

impl Observation<'_> {
    pub fn is_finite(&self) -> bool {
        match self {
            Observation::Cost(v) => v.is_finite(),
            Observation::Gradient(g) => g.iter().all(|v| v.is_finite()),
        }
    }
}

/// `f(x) + eps`, `eps ~ N(0, sigma^2)`.
pub fn observe_cost(cost: &CostInstance, x: &[f64], noise: NoiseModel, rng: &mut RandomStream) -> FeedbackSample {
    FeedbackSample::Cost(cost.eval(x) + noise.draw(rng))
}

/// `grad f(x) + eps`, iid `N(0, sigma^2)` coordinates.
pub fn observe_grad(cost: &CostInstance, x: &[f64], noise: NoiseModel, rng: &mut RandomStream) -> FeedbackSample {
    let mut g = cost.grad(x);
    for v in &mut g {
        *v += noise.draw(rng);
    }
    FeedbackSample::Gradient(g)
}

/// A feedback structure with its noise level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackChannel {
    pub kind: FeedbackKind,
    pub noise: NoiseModel,
}

impl FeedbackChannel {
    pub fn new(kind: FeedbackKind, noise: NoiseModel) -> Self {
        FeedbackChannel { kind, noise }
    }

    /// Allocation-free observation; gradients are written into `scratch`.
    #[inline]
    pub fn observe_into<'s>(
        &self,
        cost: &CostInstance,
        x: &[f64],
        rng: &mut RandomStream,
        scratch: &'s mut [f64],
    ) -> Observation<'s> {
        match self.kind {
            FeedbackKind::Cost => Observation::Cost(cost.eval(x) + self.noise.draw(rng)),
            FeedbackKind::Gradient => {
                cost.grad_into(x, scratch);
                for v in scratch.iter_mut() {
                    *v += self.noise.draw(rng);
                }
                Observation::Gradient(scratch)
            }
        }
    }

    pub fn observe(&self, cost: &CostInstance, x: &[f64], rng: &mut RandomStream) -> FeedbackSample {
        match self.kind {
            FeedbackKind::Cost => observe_cost(cost, x, self.noise, rng),
            FeedbackKind::Gradient => observe_grad(cost, x, self.noise, rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::QuadraticCost;
    use crate::space::ActionBox;

    fn quad(a: f64, b: f64, c: f64) -> CostInstance {
        let bx = ActionBox::interval(-2.0, 3.0).unwrap();
        CostInstance::quadratic(QuadraticCost::scalar(a, b, c).unwrap(), &bx).unwrap()
    }

    #[test]
    fn noiseless_channels_are_exact() {
        let mut rng = RandomStream::new(1, 0);
        let f = quad(1.0, 0.5, 1.0);
        assert_eq!(observe_cost(&f, &[0.5], NoiseModel::noiseless(), &mut rng), FeedbackSample::Cost(0.875));
        assert_eq!(observe_grad(&f, &[0.5], NoiseModel::noiseless(), &mut rng), FeedbackSample::Gradient(vec![0.0]));
        let g = quad(1.0, 0.0, 0.0);
        assert_eq!(observe_grad(&g, &[2.0], NoiseModel::noiseless(), &mut rng), FeedbackSample::Gradient(vec![2.0]));
    }

    #[test]
    fn cost_noise_moments() {
        // 1e6 draws: mean within 3 sigma/sqrt(n), variance within 1%
        let f = quad(1.0, 0.5, 1.0);
        let noise = NoiseModel::new(0.3).unwrap();
        let mut rng = RandomStream::new(42, 0);
        let n = 1_000_000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let FeedbackSample::Cost(y) = observe_cost(&f, &[0.5], noise, &mut rng) else { unreachable!() };
            let e = y - 0.875;
            s += e;
            s2 += e * e;
        }
        let mean = s / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 3.0 * 0.3 / 1000.0, "mean {mean}");
        assert!((var - 0.09).abs() < 0.01 * 0.09, "var {var}");
    }

    #[test]
    fn gradient_noise_covariance_is_identity() {
        let bx = ActionBox::cube(-1.0, 1.0, 2).unwrap();
        let f = CostInstance::quadratic(QuadraticCost::new(1.0, vec![0.0, 0.0], 0.0).unwrap(), &bx).unwrap();
        let noise = NoiseModel::new(1.0).unwrap();
        let mut rng = RandomStream::new(7, 3);
        let n = 1_000_000;
        let mut c = [[0.0; 2]; 2];
        for _ in 0..n {
            let FeedbackSample::Gradient(g) = observe_grad(&f, &[0.0, 0.0], noise, &mut rng) else { unreachable!() };
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] += g[i] * g[j];
                }
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((c[i][j] / n as f64 - expect).abs() < 0.02, "cov[{i}][{j}]");
            }
        }
    }

    #[test]
    fn streams_reproduce_and_separate() {
        let mut a = RandomStream::new(9, 4);
        let mut b = RandomStream::new(9, 4);
        let xs: Vec<f64> = (0..100).map(|_| a.standard_normal()).collect();
        let ys: Vec<f64> = (0..100).map(|_| b.standard_normal()).collect();
        assert_eq!(xs, ys);

        let mut c = RandomStream::new(9, 5);
        let mut d = RandomStream::derive(9, 4, Substream::Env);
        let n = 100_000;
        let (mut sab, mut sad) = (0.0, 0.0);
        let mut a = RandomStream::new(9, 4);
        for _ in 0..n {
            let x = a.standard_normal();
            sab += x * c.standard_normal();
            sad += x * d.standard_normal();
        }
        assert!((sab / n as f64).abs() < 0.01);
        assert!((sad / n as f64).abs() < 0.01);
    }

    #[test]
    fn negative_sigma_rejected() {
        assert!(NoiseModel::new(-0.1).is_err());
        assert!(NoiseModel::new(f64::NAN).is_err());
    }
}
