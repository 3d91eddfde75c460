//! Convex cost functions on a box, their exact minimizers, and the
//! sup-norm variation functionals over a cost sequence.

use crate::error::{invalid, Result};
use crate::space::{Action, ActionBox};

/// Points per axis used by [`sup_diff`] when no closed form applies.
pub const DEFAULT_GRID_PER_DIM: usize = 1001;

/// `f(x) = (a/2)|x|^2 - b.x + c` with isotropic curvature `a > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticCost {
    pub a: f64,
    pub b: Vec<f64>,
    pub c: f64,
}

impl QuadraticCost {
    pub fn new(a: f64, b: Vec<f64>, c: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return invalid(format!("quadratic curvature must be positive, got {a}"));
        }
        if b.is_empty() || !b.iter().all(|v| v.is_finite()) || !c.is_finite() {
            return invalid("quadratic coefficients must be finite and d >= 1");
        }
        Ok(QuadraticCost { a, b, c })
    }

    pub fn scalar(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a, vec![b], c)
    }

    /// Unconstrained minimizer `b / a`.
    pub fn unconstrained_minimizer(&self) -> Vec<f64> {
        self.b.iter().map(|v| v / self.a).collect()
    }
}

/// Which of the two mirrored pieces: `+1` has its minimizer right of 3/4,
/// `-1` left of 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

/// Linear middle piece of slope `-2*sign*delta` on `[1/4, 3/4]`, glued to
/// quadratic caps `(x - 1/4)^2` left and `(x - 3/4)^2` right. Continuously
/// differentiable and convex on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiecewiseConvexCost {
    pub delta: f64,
    pub side: Side,
}

impl PiecewiseConvexCost {
    pub fn new(delta: f64, side: Side) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.25) {
            return invalid(format!("piecewise delta must lie in (0, 1/4), got {delta}"));
        }
        Ok(PiecewiseConvexCost { delta, side })
    }

    fn eval1(&self, x: f64) -> f64 {
        let s = self.side.sign();
        let linear = 0.5 + s * self.delta - 2.0 * s * self.delta * x;
        linear + cap(x)
    }

    fn grad1(&self, x: f64) -> f64 {
        let s = self.side.sign();
        let cap_slope = if x < 0.25 {
            2.0 * (x - 0.25)
        } else if x > 0.75 {
            2.0 * (x - 0.75)
        } else {
            0.0
        };
        -2.0 * s * self.delta + cap_slope
    }

    pub fn unconstrained_minimizer(&self) -> f64 {
        match self.side {
            Side::Right => 0.75 + self.delta,
            Side::Left => 0.25 - self.delta,
        }
    }
}

fn cap(x: f64) -> f64 {
    if x < 0.25 {
        (x - 0.25) * (x - 0.25)
    } else if x > 0.75 {
        (x - 0.75) * (x - 0.75)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CostKind {
    Quadratic(QuadraticCost),
    Piecewise(PiecewiseConvexCost),
}

/// Cached `sup |f|` and `sup |grad f|` over the associated box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBounds {
    pub value: f64,
    pub grad: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostInstance {
    kind: CostKind,
    bounds: CostBounds,
}

impl CostInstance {
    /// Binds a cost to the box it will be evaluated on, computing its bounds.
    pub fn new(kind: CostKind, bx: &ActionBox) -> Result<Self> {
        let d = match &kind {
            CostKind::Quadratic(q) => q.b.len(),
            CostKind::Piecewise(_) => 1,
        };
        if d != bx.dim() {
            return invalid(format!("cost has d={d}, box has d={}", bx.dim()));
        }
        let mut inst = CostInstance {
            kind,
            bounds: CostBounds { value: 0.0, grad: 0.0 },
        };
        inst.bounds = inst.compute_bounds(bx);
        Ok(inst)
    }

    pub fn quadratic(q: QuadraticCost, bx: &ActionBox) -> Result<Self> {
        Self::new(CostKind::Quadratic(q), bx)
    }

    pub fn piecewise(p: PiecewiseConvexCost, bx: &ActionBox) -> Result<Self> {
        Self::new(CostKind::Piecewise(p), bx)
    }

    pub fn kind(&self) -> &CostKind {
        &self.kind
    }

    pub fn bounds(&self) -> CostBounds {
        self.bounds
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            CostKind::Quadratic(q) => q.b.len(),
            CostKind::Piecewise(_) => 1,
        }
    }

    pub fn as_quadratic(&self) -> Option<&QuadraticCost> {
        match &self.kind {
            CostKind::Quadratic(q) => Some(q),
            CostKind::Piecewise(_) => None,
        }
    }

    /// Lower bound on the Hessian, when strongly convex.
    pub fn curvature(&self) -> Option<f64> {
        self.as_quadratic().map(|q| q.a)
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            CostKind::Quadratic(q) => {
                let mut sq = 0.0;
                let mut lin = 0.0;
                for (xk, bk) in x.iter().zip(&q.b) {
                    sq += xk * xk;
                    lin += bk * xk;
                }
                0.5 * q.a * sq - lin + q.c
            }
            CostKind::Piecewise(p) => p.eval1(x[0]),
        }
    }

    #[inline]
    pub fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        match &self.kind {
            CostKind::Quadratic(q) => {
                for ((o, xk), bk) in out.iter_mut().zip(x).zip(&q.b) {
                    *o = q.a * xk - bk;
                }
            }
            CostKind::Piecewise(p) => out[0] = p.grad1(x[0]),
        }
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        self.grad_into(x, &mut g);
        g
    }

    /// Exact constrained minimizer and minimum over `bx`.
    pub fn minimize(&self, bx: &ActionBox) -> (Action, f64) {
        let mut x = match &self.kind {
            CostKind::Quadratic(q) => q.unconstrained_minimizer(),
            // one-dimensional and convex: clamping the global minimizer is exact
            CostKind::Piecewise(p) => vec![p.unconstrained_minimizer()],
        };
        bx.project_in_place(&mut x);
        let v = self.eval(&x);
        (Action(x), v)
    }

    fn compute_bounds(&self, bx: &ActionBox) -> CostBounds {
        // f and |grad f| are convex, so their maxima over a box sit at vertices;
        // the most negative value of f is its minimum.
        let (_, fmin) = self.minimize(bx);
        let mut value = fmin.abs();
        let mut grad = 0.0f64;
        let mut g = vec![0.0; self.dim()];
        for v in bx.vertices() {
            value = value.max(self.eval(&v).abs());
            self.grad_into(&v, &mut g);
            grad = grad.max(g.iter().map(|c| c * c).sum::<f64>().sqrt());
        }
        CostBounds { value, grad }
    }
}

/// `sup_{x in region} |f(x) - g(x)|`.
///
/// Exact for two quadratics of equal curvature (the difference is affine and
/// peaks at a vertex). Otherwise maximises over a uniform grid of
/// `grid_per_dim` points per axis together with all vertices.
pub fn sup_diff(
    f: &CostInstance,
    g: &CostInstance,
    region: &ActionBox,
    grid_per_dim: usize,
) -> Result<f64> {
    if grid_per_dim < 2 {
        return invalid(format!("grid_per_dim must be at least 2, got {grid_per_dim}"));
    }
    if f.dim() != g.dim() || f.dim() != region.dim() {
        return invalid("sup_diff: dimension mismatch");
    }
    if f == g {
        return Ok(0.0);
    }
    if let (Some(p), Some(q)) = (f.as_quadratic(), g.as_quadratic()) {
        if p.a == q.a {
            return Ok(affine_sup(p, q, region));
        }
    }
    let mut best = 0.0f64;
    for v in region.vertices() {
        best = best.max((f.eval(&v) - g.eval(&v)).abs());
    }
    let d = region.dim();
    let total = grid_per_dim
        .checked_pow(d as u32)
        .ok_or_else(|| crate::Error::InvalidArgument("grid too large".into()))?;
    let mut x = vec![0.0; d];
    for idx in 0..total {
        let mut rem = idx;
        for k in 0..d {
            let i = rem % grid_per_dim;
            rem /= grid_per_dim;
            let (l, h) = (region.lo()[k], region.hi()[k]);
            x[k] = l + (h - l) * i as f64 / (grid_per_dim - 1) as f64;
        }
        best = best.max((f.eval(&x) - g.eval(&x)).abs());
    }
    Ok(best)
}

// max over the box of |(q.b - p.b).x + p.c - q.c|, coordinate-separable
fn affine_sup(p: &QuadraticCost, q: &QuadraticCost, region: &ActionBox) -> f64 {
    let dc = p.c - q.c;
    let mut hi = dc;
    let mut lo = dc;
    for k in 0..region.dim() {
        let slope = q.b[k] - p.b[k];
        let (a, b) = (slope * region.lo()[k], slope * region.hi()[k]);
        hi += a.max(b);
        lo += a.min(b);
    }
    hi.abs().max(lo.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariationMode {
    /// Sup over the whole action box.
    Full,
    /// Sup over the bounding box of the per-epoch minimizers.
    Hull,
}

impl VariationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            VariationMode::Full => "full",
            VariationMode::Hull => "hull",
        }
    }
}

impl std::str::FromStr for VariationMode {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(VariationMode::Full),
            "hull" => Ok(VariationMode::Hull),
            _ => invalid(format!("unknown variation mode `{s}`")),
        }
    }
}

/// A horizon of costs sharing one action box.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSequence {
    bx: ActionBox,
    costs: Vec<CostInstance>,
    pub declared_budget: f64,
    pub budget_mode: VariationMode,
    pub generator_tag: String,
}

impl FunctionSequence {
    pub fn new(
        bx: ActionBox,
        costs: Vec<CostInstance>,
        declared_budget: f64,
        budget_mode: VariationMode,
        generator_tag: impl Into<String>,
    ) -> Result<Self> {
        if costs.is_empty() {
            return invalid("a sequence needs at least one epoch");
        }
        if let Some(bad) = costs.iter().position(|c| c.dim() != bx.dim()) {
            return invalid(format!("cost at epoch {} does not match the box dimension", bad + 1));
        }
        if !(declared_budget >= 0.0) {
            return invalid(format!("declared budget must be nonnegative, got {declared_budget}"));
        }
        Ok(FunctionSequence {
            bx,
            costs,
            declared_budget,
            budget_mode,
            generator_tag: generator_tag.into(),
        })
    }

    /// Builds a sequence whose declared budget is its own measured variation
    /// in `mode`.
    pub fn with_measured_budget(
        bx: ActionBox,
        costs: Vec<CostInstance>,
        mode: VariationMode,
        generator_tag: impl Into<String>,
    ) -> Result<Self> {
        let mut seq = Self::new(bx, costs, 0.0, mode, generator_tag)?;
        seq.declared_budget = variation(&seq, mode, DEFAULT_GRID_PER_DIM)?;
        Ok(seq)
    }

    pub fn horizon(&self) -> usize {
        self.costs.len()
    }

    pub fn action_box(&self) -> &ActionBox {
        &self.bx
    }

    pub fn costs(&self) -> &[CostInstance] {
        &self.costs
    }

    /// Cost at 1-based epoch `t`.
    pub fn at(&self, t: usize) -> &CostInstance {
        &self.costs[t - 1]
    }

    /// Sub-sequence of 1-based epochs `start..=end`, keeping metadata.
    pub fn slice(&self, start: usize, end: usize) -> Result<FunctionSequence> {
        if start < 1 || end > self.horizon() || start > end {
            return invalid(format!("bad epoch range {start}..={end}"));
        }
        Self::new(
            self.bx.clone(),
            self.costs[start - 1..end].to_vec(),
            self.declared_budget,
            self.budget_mode,
            self.generator_tag.clone(),
        )
    }

    /// Largest `sup |f|` and `sup |grad f|` across the horizon.
    pub fn bounds(&self) -> CostBounds {
        self.costs.iter().fold(CostBounds { value: 0.0, grad: 0.0 }, |acc, c| CostBounds {
            value: acc.value.max(c.bounds.value),
            grad: acc.grad.max(c.bounds.grad),
        })
    }

    /// Smallest curvature across the horizon; `None` if any cost is not
    /// strongly convex.
    pub fn min_curvature(&self) -> Option<f64> {
        self.costs
            .iter()
            .map(CostInstance::curvature)
            .try_fold(f64::INFINITY, |acc, h| h.map(|h| acc.min(h)))
    }
}

/// Bounding box of the per-epoch constrained minimizers.
pub fn minimizer_hull(seq: &FunctionSequence) -> ActionBox {
    let mins: Vec<Action> = seq.costs.iter().map(|c| c.minimize(&seq.bx).0).collect();
    ActionBox::envelope(mins.iter().map(|a| &a[..])).expect("sequence is non-empty and uniform")
}

/// Summed sup-norm change between consecutive costs, measured over the box
/// (`Full`) or the minimizer hull (`Hull`). Zero for a single epoch.
pub fn variation(seq: &FunctionSequence, mode: VariationMode, grid_per_dim: usize) -> Result<f64> {
    let region = match mode {
        VariationMode::Full => seq.bx.clone(),
        VariationMode::Hull => minimizer_hull(seq),
    };
    variation_over(seq.costs(), &region, grid_per_dim)
}

/// Variation of `costs` measured over a fixed `region`.
pub fn variation_over(costs: &[CostInstance], region: &ActionBox, grid_per_dim: usize) -> Result<f64> {
    if grid_per_dim < 2 {
        return invalid(format!("grid_per_dim must be at least 2, got {grid_per_dim}"));
    }
    let mut total = 0.0;
    for w in costs.windows(2) {
        if w[0] != w[1] {
            total += sup_diff(&w[1], &w[0], region, grid_per_dim)?;
        }
    }
    Ok(total)
}
