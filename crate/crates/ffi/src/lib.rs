//! C interface to the `pple` simulator.
//!
//! Simulations live behind an opaque `PpleSim` handle. Every fallible call
//! returns a `PpleStatus`; on failure `pple_last_error` describes the cause
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pple::protocol::{InhibitorDragRule, Role};
use pple::sim::{NoTrace, SimState, StopCondition, TrialOutcome};
use pple::{Error, ProtocolParams};

/// Marks an interaction index that was never reached.
pub const PPLE_NEVER: u64 = u64::MAX;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpleStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    Exhausted = 3,
    SafetyViolation = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpleStop {
    SingleAlive = 0,
    SingleActive = 1,
    Resolved = 2,
    FirstRound = 3,
    Epoch2End = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PpleParams {
    pub n: u32,
    pub gamma: u16,
    pub phi: u8,
    pub psi: u8,
    pub backup_only: bool,
    pub drag_advance_on_noncoin: bool,
    pub seniority_uses_cnt: bool,
    pub drag_advance_any_epoch: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpleResult {
    pub outcome: PpleStatus,
    pub interactions: u64,
    pub parallel_time: f64,
    pub single_active_at: u64,
    pub single_alive_at: u64,
    pub epoch1_end: u64,
    pub epoch2_end: u64,
    pub epoch2_survivors: u32,
}

/// Counts by role (Zero, X, D, Coin, Inhibitor, Leader) and leader mode (A, P, W).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PpleCensus {
    pub interactions: u64,
    pub zero: u32,
    pub x: u32,
    pub deactivated: u32,
    pub coins: u32,
    pub inhibitors: u32,
    pub leaders: u32,
    pub active: u32,
    pub passive: u32,
    pub withdrawn: u32,
    pub stabilized: bool,
}

/// Opaque simulation handle.
pub struct PpleSim {
    state: SimState,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> PpleStatus) -> PpleStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            PpleStatus::Panic
        }
    }
}

fn fail(status: PpleStatus, msg: impl Into<String>) -> PpleStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PpleStatus {
    fail(PpleStatus::InvalidParams, e.to_string())
}

fn to_params(p: &PpleParams) -> ProtocolParams {
    ProtocolParams::new(p.n)
        .with_gamma(p.gamma)
        .with_phi(p.phi)
        .with_psi(p.psi)
        .with_backup_only(p.backup_only)
        .with_seniority_uses_cnt(p.seniority_uses_cnt)
        .with_drag_advance_any_epoch(p.drag_advance_any_epoch)
        .with_inhibitor_drag_rule(if p.drag_advance_on_noncoin {
            InhibitorDragRule::AdvanceOnNonCoin
        } else {
            InhibitorDragRule::AdvanceOnCoin
        })
}

/// Default parameters for a population of `n` agents.
#[no_mangle]
pub extern "C" fn pple_params_default(n: u32) -> PpleParams {
    let p = ProtocolParams::new(n.max(2));
    PpleParams {
        n,
        gamma: p.gamma,
        phi: p.phi,
        psi: p.psi,
        backup_only: p.backup_only,
        drag_advance_on_noncoin: p.inhibitor_drag_rule == InhibitorDragRule::AdvanceOnNonCoin,
        seniority_uses_cnt: p.seniority_uses_cnt,
        drag_advance_any_epoch: p.drag_advance_any_epoch,
    }
}

/// Create a simulation. On success `*out` receives a handle to release with
/// `pple_sim_free`.
///
/// # Safety
/// `params` must point to a valid `PpleParams` and `out` to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pple_sim_new(params: *const PpleParams, seed: u64, out: *mut *mut PpleSim) -> PpleStatus {
    guard(|| {
        if params.is_null() || out.is_null() {
            return fail(PpleStatus::NullPointer, "null argument");
        }
        // SAFETY: both pointers checked non-null; validity is the caller's contract.
        let p = to_params(unsafe { &*params });
        match SimState::new(p, seed) {
            Ok(state) => {
                unsafe { *out = Box::into_raw(Box::new(PpleSim { state })) };
                PpleStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `sim` must be null or a handle from `pple_sim_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pple_sim_free(sim: *mut PpleSim) {
    if !sim.is_null() {
        // SAFETY: caller guarantees the handle came from Box::into_raw in pple_sim_new.
        drop(unsafe { Box::from_raw(sim) });
    }
}

/// Perform `count` interactions.
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pple_sim_step(sim: *mut PpleSim, count: u64) -> PpleStatus {
    guard(|| {
        // SAFETY: non-null checked by as_mut; liveness is the caller's contract.
        let Some(sim) = (unsafe { sim.as_mut() }) else {
            return fail(PpleStatus::NullPointer, "null handle");
        };
        for _ in 0..count {
            sim.state.step();
        }
        if sim.state.safety_violated() {
            return fail(PpleStatus::SafetyViolation, "no alive leader left");
        }
        PpleStatus::Ok
    })
}

/// Run until `stop` holds or `max_interactions` total interactions have been
/// performed (0 means no limit). The return value is the trial outcome;
/// `*out`, if non-null, receives the measurements.
///
/// # Safety
/// `sim` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pple_sim_run(
    sim: *mut PpleSim,
    stop: PpleStop,
    max_interactions: u64,
    out: *mut PpleResult,
) -> PpleStatus {
    guard(|| {
        // SAFETY: non-null checked by as_mut; liveness is the caller's contract.
        let Some(sim) = (unsafe { sim.as_mut() }) else {
            return fail(PpleStatus::NullPointer, "null handle");
        };
        let mut cond = match stop {
            PpleStop::SingleAlive => StopCondition::SingleAlive,
            PpleStop::SingleActive => StopCondition::SingleActive,
            PpleStop::Resolved => StopCondition::AllPassiveResolved,
            PpleStop::FirstRound => StopCondition::FirstRound,
            PpleStop::Epoch2End => StopCondition::Epoch2End,
        };
        if max_interactions > 0 {
            cond = cond.with_budget(max_interactions);
        }
        let rec = match sim.state.run_until(&cond, &mut NoTrace) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        let status = match rec.outcome {
            TrialOutcome::Reached => PpleStatus::Ok,
            TrialOutcome::Exhausted => fail(PpleStatus::Exhausted, "interaction budget exhausted"),
            TrialOutcome::SafetyViolation => fail(PpleStatus::SafetyViolation, "no alive leader left"),
        };
        if !out.is_null() {
            let at = |t: Option<u64>| t.unwrap_or(PPLE_NEVER);
            // SAFETY: checked non-null; writability is the caller's contract.
            unsafe {
                *out = PpleResult {
                    outcome: status,
                    interactions: rec.interactions,
                    parallel_time: rec.parallel_time,
                    single_active_at: at(rec.single_active_at),
                    single_alive_at: at(rec.single_alive_at),
                    epoch1_end: at(rec.epochs.epoch1_end),
                    epoch2_end: at(rec.epochs.epoch2_end),
                    epoch2_survivors: rec.epoch2_survivors.unwrap_or(u32::MAX),
                }
            };
        }
        status
    })
}

/// Current population counts.
///
/// # Safety
/// `sim` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pple_sim_census(sim: *const PpleSim, out: *mut PpleCensus) -> PpleStatus {
    guard(|| {
        // SAFETY: non-null checked by as_ref; liveness is the caller's contract.
        let (Some(sim), false) = (unsafe { sim.as_ref() }, out.is_null()) else {
            return fail(PpleStatus::NullPointer, "null argument");
        };
        let c = sim.state.census();
        let status = sim.state.detect_stabilization();
        // SAFETY: checked non-null above.
        unsafe {
            *out = PpleCensus {
                interactions: sim.state.interactions(),
                zero: c.roles[Role::Zero as usize],
                x: c.roles[Role::X as usize],
                deactivated: c.roles[Role::D as usize],
                coins: c.roles[Role::Coin as usize],
                inhibitors: c.roles[Role::Inhibitor as usize],
                leaders: c.roles[Role::Leader as usize],
                active: c.active(),
                passive: c.passive(),
                withdrawn: c.withdrawn(),
                stabilized: status.stabilized,
            }
        };
        PpleStatus::Ok
    })
}

/// Packed 32-bit state of agent `index`.
///
/// # Safety
/// `sim` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pple_sim_agent(sim: *const PpleSim, index: u32, out: *mut u32) -> PpleStatus {
    guard(|| {
        // SAFETY: non-null checked by as_ref; liveness is the caller's contract.
        let (Some(sim), false) = (unsafe { sim.as_ref() }, out.is_null()) else {
            return fail(PpleStatus::NullPointer, "null argument");
        };
        let Some(a) = sim.state.agents().get(index as usize) else {
            return fail(PpleStatus::OutOfRange, format!("no agent {index}"));
        };
        // SAFETY: checked non-null above.
        unsafe { *out = a.pack() };
        PpleStatus::Ok
    })
}

/// Expected interactions for the backup rule alone to reduce `k0` alive
/// candidates to one in a population of `n`.
#[no_mangle]
pub extern "C" fn pple_backup_expected_interactions(n: u64, k0: u64) -> f64 {
    pple::analytics::backup_expected_interactions(n, k0)
}

/// Message for the last failure on this thread. Valid until the next failing
/// call on the same thread; never null.
#[no_mangle]
pub extern "C" fn pple_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, NUL-terminated and static.
#[no_mangle]
pub extern "C" fn pple_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
