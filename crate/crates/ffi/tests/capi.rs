use std::ffi::CStr;
use std::ptr;

use pple_ffi::*;

fn new_sim(n: u32, seed: u64) -> *mut PpleSim {
    let params = pple_params_default(n);
    let mut sim = ptr::null_mut();
    let s = unsafe { pple_sim_new(&params, seed, &mut sim) };
    assert_eq!(s, PpleStatus::Ok);
    assert!(!sim.is_null());
    sim
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pple_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn run_to_single_alive() {
    let sim = new_sim(1 << 10, 3);
    let mut res = std::mem::MaybeUninit::<PpleResult>::uninit();
    let s = unsafe { pple_sim_run(sim, PpleStop::SingleAlive, 0, res.as_mut_ptr()) };
    assert_eq!(s, PpleStatus::Ok);
    let res = unsafe { res.assume_init() };
    assert_eq!(res.outcome, PpleStatus::Ok);
    assert_ne!(res.single_alive_at, PPLE_NEVER);
    assert!(res.single_alive_at <= res.interactions);

    let mut c = PpleCensus::default();
    assert_eq!(unsafe { pple_sim_census(sim, &mut c) }, PpleStatus::Ok);
    assert_eq!(c.active + c.passive, 1);
    assert!(c.stabilized);
    assert_eq!(c.zero + c.x + c.deactivated + c.coins + c.inhibitors + c.leaders, 1 << 10);
    assert_eq!(c.interactions, res.interactions);
    unsafe { pple_sim_free(sim) };
}

#[test]
fn same_seed_same_agents() {
    let a = new_sim(256, 99);
    let b = new_sim(256, 99);
    unsafe {
        assert_eq!(pple_sim_step(a, 5000), PpleStatus::Ok);
        assert_eq!(pple_sim_step(b, 5000), PpleStatus::Ok);
    }
    for i in 0..256 {
        let (mut x, mut y) = (0u32, 0u32);
        unsafe {
            assert_eq!(pple_sim_agent(a, i, &mut x), PpleStatus::Ok);
            assert_eq!(pple_sim_agent(b, i, &mut y), PpleStatus::Ok);
        }
        assert_eq!(x, y, "agent {i}");
    }
    unsafe {
        pple_sim_free(a);
        pple_sim_free(b);
    }
}

#[test]
fn budget_reports_exhausted() {
    let sim = new_sim(1 << 12, 1);
    let mut res = std::mem::MaybeUninit::<PpleResult>::uninit();
    let s = unsafe { pple_sim_run(sim, PpleStop::SingleAlive, 10, res.as_mut_ptr()) };
    assert_eq!(s, PpleStatus::Exhausted);
    assert_eq!(unsafe { res.assume_init() }.interactions, 10);
    assert!(last_error().contains("exhausted"));
    unsafe { pple_sim_free(sim) };
}

#[test]
fn bad_arguments() {
    let mut params = pple_params_default(1);
    let mut sim = ptr::null_mut();
    assert_eq!(unsafe { pple_sim_new(&params, 0, &mut sim) }, PpleStatus::InvalidParams);
    assert!(sim.is_null());
    assert!(!last_error().is_empty());

    params.n = 64;
    params.gamma = 3;
    assert_eq!(unsafe { pple_sim_new(&params, 0, &mut sim) }, PpleStatus::InvalidParams);

    assert_eq!(unsafe { pple_sim_new(ptr::null(), 0, &mut sim) }, PpleStatus::NullPointer);
    assert_eq!(unsafe { pple_sim_step(ptr::null_mut(), 1) }, PpleStatus::NullPointer);
    let mut c = PpleCensus::default();
    assert_eq!(unsafe { pple_sim_census(ptr::null_mut(), &mut c) }, PpleStatus::NullPointer);
    unsafe { pple_sim_free(ptr::null_mut()) };

    let sim = new_sim(16, 0);
    let mut x = 0;
    assert_eq!(unsafe { pple_sim_agent(sim, 16, &mut x) }, PpleStatus::OutOfRange);
    unsafe { pple_sim_free(sim) };
}

#[test]
fn defaults_match_library() {
    let p = pple_params_default(1 << 16);
    assert_eq!((p.gamma, p.phi, p.psi), (32, 1, 4));
    assert!(!p.backup_only);
}

#[test]
fn backup_formula() {
    assert_eq!(pple_backup_expected_interactions(64, 64), 63.0 * 63.0);
    assert_eq!(pple_backup_expected_interactions(64, 1), 0.0);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(pple_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/pple.h");
    for f in [
        "pple_params_default",
        "pple_sim_new",
        "pple_sim_free",
        "pple_sim_step",
        "pple_sim_run",
        "pple_sim_census",
        "pple_sim_agent",
        "pple_backup_expected_interactions",
        "pple_last_error",
        "pple_version",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct PpleSim PpleSim;"));
}
