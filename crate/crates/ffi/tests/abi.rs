use std::ffi::{CStr, CString};
use std::ptr;

use varbudget_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(vb_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn oracle_gap_through_handles() {
    let pattern = CString::new("oracle-gap").unwrap();
    let mut seq = ptr::null_mut();
    unsafe {
        assert_eq!(vb_sequence_generate(pattern.as_ptr(), 100, 0, ptr::null(), &mut seq), VbStatus::Ok);
        assert_eq!(vb_sequence_horizon(seq), 100);
        assert_eq!(vb_sequence_dim(seq), 1);
        let mut dynamic = 0.0;
        assert_eq!(vb_dynamic_oracle_total(seq, &mut dynamic), VbStatus::Ok);
        let mut x = [0.0];
        let mut fixed = 0.0;
        assert_eq!(vb_static_oracle(seq, 1, 100, x.as_mut_ptr(), 1, &mut fixed), VbStatus::Ok);
        assert!((fixed - dynamic - 25.0).abs() < 1e-9);
        assert_eq!(x[0], 0.5);
        let mut v = 0.0;
        assert_eq!(vb_sequence_eval(seq, 1, [2.0].as_ptr(), 1, &mut v), VbStatus::Ok);
        assert_eq!(v, 4.0);
        assert_eq!(vb_sequence_eval(seq, 101, [2.0].as_ptr(), 1, &mut v), VbStatus::OutOfRange);
        vb_sequence_free(seq);
    }
}

#[test]
fn error_codes_and_messages() {
    let bad = CString::new("tsunami").unwrap();
    let mut seq = ptr::null_mut();
    unsafe {
        assert_eq!(vb_sequence_generate(bad.as_ptr(), 10, 0, ptr::null(), &mut seq), VbStatus::InvalidArgument);
        assert!(seq.is_null());
        assert!(last_error().contains("tsunami"));
        assert_eq!(vb_sequence_generate(ptr::null(), 10, 0, ptr::null(), &mut seq), VbStatus::NullPointer);
        let adv = CString::new("adv-convex").unwrap();
        let settings = CString::new("budget=100\nsigma=0.3").unwrap();
        assert_eq!(vb_sequence_generate(adv.as_ptr(), 100, 0, settings.as_ptr(), &mut seq), VbStatus::BudgetTooLarge);
        let mut f = VbRateFit::default();
        let ts = [10.0, 10.0, 10.0];
        let rs = [1.0, 2.0, 3.0];
        assert_eq!(vb_fit_rate(ts.as_ptr(), rs.as_ptr(), 3, &mut f), VbStatus::InvalidArgument);
        assert_eq!(vb_dynamic_oracle_total(ptr::null(), &mut 0.0), VbStatus::NullPointer);
        let missing = CString::new("/nonexistent/dir/seq.txt").unwrap();
        assert_eq!(vb_sequence_load(missing.as_ptr(), &mut seq), VbStatus::Io);
        vb_sequence_free(ptr::null_mut());
        vb_experiment_free(ptr::null_mut());
    }
}

#[test]
fn fit_rate_exact() {
    let ts = [1000.0, 4000.0, 16000.0];
    let rs = [316.228, 632.456, 1264.911];
    let mut f = VbRateFit::default();
    unsafe {
        assert_eq!(vb_fit_rate(ts.as_ptr(), rs.as_ptr(), 3, &mut f), VbStatus::Ok);
    }
    assert!((f.alpha - 0.5).abs() < 1e-5 && (f.c - 10.0).abs() < 1e-3);
    assert!(last_error().is_empty());
}

#[test]
fn experiment_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = CString::new(dir.path().join("out.csv").to_str().unwrap()).unwrap();
    let settings = CString::new("pattern=shock\npolicy=restarted-ogd\nsigma=0.3\nhorizons=200,400,800\nreps=4\nseed=3").unwrap();
    let mut exp = ptr::null_mut();
    unsafe {
        assert_eq!(vb_experiment_run(settings.as_ptr(), true, &mut exp), VbStatus::Ok);
        assert_eq!(vb_experiment_cell_count(exp), 3);
        let mut cell = VbCell::default();
        assert_eq!(vb_experiment_cell(exp, 2, &mut cell), VbStatus::Ok);
        assert_eq!((cell.horizon, cell.completed, cell.faulted), (800, 4, 0));
        assert!(cell.mean_regret > 0.0 && cell.mean_loss_pct > 0.0);
        assert_eq!(vb_experiment_cell(exp, 3, &mut cell), VbStatus::OutOfRange);
        let mut fit = VbRateFit::default();
        assert_eq!(vb_experiment_fit(exp, &mut fit), VbStatus::Ok);
        assert!(fit.r_squared > 0.0);
        assert_eq!(vb_experiment_write_csv(exp, csv.as_ptr()), VbStatus::Ok);
        vb_experiment_free(exp);
    }
    let text = std::fs::read_to_string(dir.path().join("out.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn sequence_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("s.seq").to_str().unwrap()).unwrap();
    let shock = CString::new("shock").unwrap();
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(vb_sequence_generate(shock.as_ptr(), 50, 9, ptr::null(), &mut a), VbStatus::Ok);
        assert_eq!(vb_sequence_save(a, path.as_ptr()), VbStatus::Ok);
        assert_eq!(vb_sequence_load(path.as_ptr(), &mut b), VbStatus::Ok);
        let (mut ta, mut tb, mut va, mut vb) = (0.0, 0.0, 0.0, 0.0);
        vb_dynamic_oracle_total(a, &mut ta);
        vb_dynamic_oracle_total(b, &mut tb);
        vb_sequence_budget(a, &mut va);
        vb_sequence_budget(b, &mut vb);
        assert_eq!((ta, va), (tb, vb));
        vb_sequence_free(a);
        vb_sequence_free(b);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/varbudget.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 10);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("VB_STATUS_NUMERIC_FAULT = 3"));
    let version = unsafe { CStr::from_ptr(vb_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
