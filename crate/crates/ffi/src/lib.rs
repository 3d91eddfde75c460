//! C ABI over `varbudget`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`VbStatus`]; the message of the last failure on the calling thread is
//! available from [`vb_last_error`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};


use varbudget::config::Settings;
use varbudget::fit::fit_rate;
use varbudget::harness::{run_experiment, ExperimentResult};
use varbudget::oracle::{dynamic_oracle, static_oracle};
use varbudget::seqfile::{read_sequence, write_sequence};
use varbudget::{Error, FunctionSequence, RandomStream, Substream};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VbStatus {
    Ok = 0,
    InvalidArgument = 1,
    BudgetTooLarge = 2,
    NumericFault = 3,
    UndefinedLoss = 4,
    Parse = 5,
    Io = 6,
    NullPointer = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// A cost sequence.
pub struct VbSequence(FunctionSequence);

/// Aggregated results of an experiment.
pub struct VbExperiment(ExperimentResult);

/// Summary of one horizon of an experiment.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct VbCell {
    pub horizon: usize,
    pub completed: usize,
    pub faulted: usize,
    pub mean_regret: f64,
    pub stderr_regret: f64,
    /// NaN when the loss is undefined.
    pub mean_loss_pct: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct VbRateFit {
    pub alpha: f64,
    pub c: f64,
    pub r_squared: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> VbStatus {
    match e {
        Error::InvalidArgument(_) => VbStatus::InvalidArgument,
        Error::BudgetTooLarge(_) => VbStatus::BudgetTooLarge,
        Error::NumericFault { .. } => VbStatus::NumericFault,
        Error::UndefinedLoss => VbStatus::UndefinedLoss,
        Error::Parse { .. } => VbStatus::Parse,
        Error::Io(_) => VbStatus::Io,
    }
}

struct Fail(VbStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail(VbStatus::Io, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            VbStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            VbStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(VbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(VbStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null("handle"))
}

/// Message of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn vb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Samples one environment (`shock`, `decay`, `linear`, `adv-convex`,
/// `adv-strong`, `ogd-failure`, `oracle-gap`). `settings` is an optional
/// `key=value` block (`budget`, `sigma`, `decay-rate`, `step-constant`).
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_generate(
    pattern: *const c_char,
    horizon: usize,
    seed: u64,
    settings: *const c_char,
    out_seq: *mut *mut VbSequence,
) -> VbStatus {
    guard(|| {
        let slot = out(out_seq, "out_seq")?;
        let mut s = if settings.is_null() { Settings::default() } else { Settings::parse(text(settings, "settings")?)? };
        s.set("pattern", text(pattern, "pattern")?)?;
        let env = s.environment()?;
        let seq = env.generate(horizon, &mut RandomStream::derive(seed, 0, Substream::Env))?;
        *slot = Box::into_raw(Box::new(VbSequence(seq)));
        Ok(())
    })
}

/// Loads a sequence file.
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_load(path: *const c_char, out_seq: *mut *mut VbSequence) -> VbStatus {
    guard(|| {
        let slot = out(out_seq, "out_seq")?;
        let file = File::open(text(path, "path")?)?;
        let seq = read_sequence(BufReader::new(file))?;
        *slot = Box::into_raw(Box::new(VbSequence(seq)));
        Ok(())
    })
}

/// Writes a sequence file.
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_save(seq: *const VbSequence, path: *const c_char) -> VbStatus {
    guard(|| {
        let seq = handle(seq)?;
        let mut w = BufWriter::new(File::create(text(path, "path")?)?);
        write_sequence(&seq.0, &mut w)?;
        w.flush()?;
        Ok(())
    })
}

/// Number of epochs; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_horizon(seq: *const VbSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.horizon())
}

/// Action-space dimension; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_dim(seq: *const VbSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.action_box().dim())
}

/// Declared variation budget.
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_budget(seq: *const VbSequence, out_budget: *mut f64) -> VbStatus {
    guard(|| {
        let seq = handle(seq)?;
        *out(out_budget, "out_budget")? = seq.0.declared_budget;
        Ok(())
    })
}

/// Noiseless cost of 1-based epoch `t` at `x` (length `dim`).
#[no_mangle]
pub unsafe extern "C" fn vb_sequence_eval(
    seq: *const VbSequence,
    t: usize,
    x: *const f64,
    dim: usize,
    out_value: *mut f64,
) -> VbStatus {
    guard(|| {
        let seq = handle(seq)?;
        if t < 1 || t > seq.0.horizon() {
            return Err(Fail(VbStatus::OutOfRange, format!("epoch {t} outside 1..={}", seq.0.horizon())));
        }
        if x.is_null() {
            return Err(null("x"));
        }
        if dim != seq.0.action_box().dim() {
            return Err(Fail(VbStatus::InvalidArgument, format!("dim {dim} does not match the sequence")));
        }
        let x = std::slice::from_raw_parts(x, dim);
        *out(out_value, "out_value")? = seq.0.at(t).eval(x);
        Ok(())
    })
}

/// Total cost of the dynamic oracle.
#[no_mangle]
pub unsafe extern "C" fn vb_dynamic_oracle_total(seq: *const VbSequence, out_total: *mut f64) -> VbStatus {
    guard(|| {
        let seq = handle(seq)?;
        *out(out_total, "out_total")? = dynamic_oracle(&seq.0).total;
        Ok(())
    })
}

/// Best fixed action over 1-based epochs `start..=end`. `out_x` may be null;
/// otherwise it must hold `dim` values.
#[no_mangle]
pub unsafe extern "C" fn vb_static_oracle(
    seq: *const VbSequence,
    start: usize,
    end: usize,
    out_x: *mut f64,
    dim: usize,
    out_total: *mut f64,
) -> VbStatus {
    guard(|| {
        let seq = handle(seq)?;
        let total = out(out_total, "out_total")?;
        let (x, v) = static_oracle(&seq.0, start, end)?;
        if !out_x.is_null() {
            if dim != x.len() {
                return Err(Fail(VbStatus::InvalidArgument, format!("out_x holds {dim} values, need {}", x.len())));
            }
            std::slice::from_raw_parts_mut(out_x, dim).copy_from_slice(&x);
        }
        *total = v;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn vb_sequence_free(seq: *mut VbSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Runs an experiment described by a `key=value` block with the CLI keys.
/// With `sweep` the default horizon grid applies when none is given.
#[no_mangle]
pub unsafe extern "C" fn vb_experiment_run(
    settings: *const c_char,
    sweep: bool,
    out_experiment: *mut *mut VbExperiment,
) -> VbStatus {
    guard(|| {
        let slot = out(out_experiment, "out_experiment")?;
        let cfg = Settings::parse(text(settings, "settings")?)?.experiment(sweep)?;
        let result = run_experiment(&cfg)?;
        *slot = Box::into_raw(Box::new(VbExperiment(result)));
        Ok(())
    })
}

/// Number of horizons; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn vb_experiment_cell_count(exp: *const VbExperiment) -> usize {
    exp.as_ref().map_or(0, |e| e.0.cells.len())
}

#[no_mangle]
pub unsafe extern "C" fn vb_experiment_cell(exp: *const VbExperiment, index: usize, out_cell: *mut VbCell) -> VbStatus {
    guard(|| {
        let exp = handle(exp)?;
        let slot = out(out_cell, "out_cell")?;
        let Some(c) = exp.0.cells.get(index) else {
            return Err(Fail(VbStatus::OutOfRange, format!("cell {index} of {}", exp.0.cells.len())));
        };
        *slot = VbCell {
            horizon: c.horizon,
            completed: c.completed,
            faulted: c.faulted,
            mean_regret: c.mean_regret,
            stderr_regret: c.stderr_regret,
            mean_loss_pct: c.mean_loss_pct.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Rate fit over the grid; `VB_STATUS_OUT_OF_RANGE` when the grid had
/// fewer than three horizons.
#[no_mangle]
pub unsafe extern "C" fn vb_experiment_fit(exp: *const VbExperiment, out_fit: *mut VbRateFit) -> VbStatus {
    guard(|| {
        let exp = handle(exp)?;
        let slot = out(out_fit, "out_fit")?;
        let Some(f) = exp.0.fit else {
            return Err(Fail(VbStatus::OutOfRange, "no rate fit for this experiment".into()));
        };
        *slot = VbRateFit { alpha: f.alpha, c: f.c, r_squared: f.r_squared };
        Ok(())
    })
}

/// Writes the result CSV.
#[no_mangle]
pub unsafe extern "C" fn vb_experiment_write_csv(exp: *const VbExperiment, path: *const c_char) -> VbStatus {
    guard(|| {
        let exp = handle(exp)?;
        let mut w = BufWriter::new(File::create(text(path, "path")?)?);
        exp.0.write_csv(&mut w)?;
        w.flush()?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn vb_experiment_free(exp: *mut VbExperiment) {
    if !exp.is_null() {
        drop(Box::from_raw(exp));
    }
}

/// Fits `regret = c T^alpha` to `n` points.
#[no_mangle]
pub unsafe extern "C" fn vb_fit_rate(
    horizons: *const f64,
    regrets: *const f64,
    n: usize,
    out_fit: *mut VbRateFit,
) -> VbStatus {
    guard(|| {
        if horizons.is_null() || regrets.is_null() {
            return Err(null("points"));
        }
        let slot = out(out_fit, "out_fit")?;
        let ts = std::slice::from_raw_parts(horizons, n);
        let rs = std::slice::from_raw_parts(regrets, n);
        let points: Vec<(f64, f64)> = ts.iter().copied().zip(rs.iter().copied()).collect();
        let f = fit_rate(&points)?;
        *slot = VbRateFit { alpha: f.alpha, c: f.c, r_squared: f.r_squared };
        Ok(())
    })
}

