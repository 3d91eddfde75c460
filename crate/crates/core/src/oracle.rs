//! Dynamic and static benchmarks.

use crate::cost::{CostKind, FunctionSequence};
use crate::error::{invalid, Result};
use crate::space::{Action, ActionBox};

/// Argument tolerance of the one-dimensional search.
pub const ARG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub per_epoch_min: Vec<(Action, f64)>,
    pub total: f64,
}

impl OracleResult {
    pub fn minima(&self) -> impl Iterator<Item = f64> + '_ {
        self.per_epoch_min.iter().map(|(_, v)| *v)
    }
}

/// The clairvoyant benchmark playing each epoch's constrained minimizer.
pub fn dynamic_oracle(seq: &FunctionSequence) -> OracleResult {
    let bx = seq.action_box();
    let per_epoch_min: Vec<(Action, f64)> = seq.costs().iter().map(|c| c.minimize(bx)).collect();
    let total = per_epoch_min.iter().map(|(_, v)| v).sum();
    OracleResult { per_epoch_min, total }
}

/// Best single action in hindsight over the 1-based epochs `start..=end`.
pub fn static_oracle(seq: &FunctionSequence, start: usize, end: usize) -> Result<(Action, f64)> {
    if start < 1 || end > seq.horizon() || start > end {
        return invalid(format!("bad epoch range {start}..={end} for horizon {}", seq.horizon()));
    }
    let costs = &seq.costs()[start - 1..end];
    let bx = seq.action_box();
    let total_at = |x: &[f64]| costs.iter().map(|c| c.eval(x)).sum::<f64>();

    // the sum of isotropic quadratics is an isotropic quadratic
    let quadratic = costs.iter().try_fold((0.0, vec![0.0; bx.dim()]), |(a, mut b), c| match c.kind() {
        CostKind::Quadratic(q) => {
            for (bk, qk) in b.iter_mut().zip(&q.b) {
                *bk += qk;
            }
            Some((a + q.a, b))
        }
        CostKind::Piecewise(_) => None,
    });
    let x = match quadratic {
        Some((a, b)) => {
            let mut x: Vec<f64> = b.iter().map(|bk| bk / a).collect();
            bx.project_in_place(&mut x);
            x
        }
        None if bx.dim() == 1 => vec![golden_section(|x| total_at(&[x]), bx.lo()[0], bx.hi()[0])],
        None => grid_refine(&total_at, bx),
    };
    let v = total_at(&x);
    Ok((Action(x), v))
}

/// Minimizer of a convex function on `[lo, hi]` to within [`ARG_TOL`].
pub fn golden_section(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > ARG_TOL {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // endpoints can beat the interior bracket for functions monotone on the box
    let mid = 0.5 * (a + b);
    let mut best = (mid, f(mid));
    for x in [lo, hi] {
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    best.0
}

// Coordinate-wise golden-section sweeps seeded from a coarse grid.
fn grid_refine(f: &impl Fn(&[f64]) -> f64, bx: &ActionBox) -> Vec<f64> {
    let mut x = bx.center().into_inner();
    let mut best = f(&x);
    for point in coarse_grid(bx, 11) {
        let v = f(&point);
        if v < best {
            best = v;
            x = point;
        }
    }
    for _ in 0..50 {
        let before = x.clone();
        for k in 0..bx.dim() {
            let mut probe = x.clone();
            x[k] = golden_section(
                |v| {
                    probe[k] = v;
                    f(&probe)
                },
                bx.lo()[k],
                bx.hi()[k],
            );
        }
        if x.iter().zip(&before).all(|(a, b)| (a - b).abs() <= ARG_TOL) {
            break;
        }
    }
    x
}

fn coarse_grid(bx: &ActionBox, per_dim: usize) -> Vec<Vec<f64>> {
    let mut points = vec![Vec::new()];
    for k in 0..bx.dim() {
        let (lo, hi) = (bx.lo()[k], bx.hi()[k]);
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..per_dim).map(move |i| {
                    let mut q = p.clone();
                    q.push(lo + (hi - lo) * i as f64 / (per_dim - 1) as f64);
                    q
                })
            })
            .collect();
    }
    points
}
