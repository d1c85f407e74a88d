//! Adaptive Dormand–Prince 5(4) along a straight segment in the complex
//! `x`-plane.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{jet_extend, Jet4, State, SystemSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Path {
    pub start: Complex64,
    pub end: Complex64,
}

impl Path {
    pub fn new(start: Complex64, end: Complex64) -> Self {
        Path { start, end }
    }

    pub fn at(&self, tau: f64) -> Complex64 {
        self.start + (self.end - self.start) * tau
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub x: Complex64,
    pub state: State,
    /// Jets through order 4, consistent with the system at `state`.
    pub jets: [Jet4; 3],
}

impl Serialize for Sample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let jets: Vec<Vec<Complex64>> = self.jets.iter().map(|j| j.derivatives().to_vec()).collect();
        let mut st = s.serialize_struct("Sample", 3)?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("state", &self.state)?;
        st.serialize_field("jets", &jets)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct IntegratorStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub system: SystemSpec,
    pub path: Path,
    pub samples: Vec<Sample>,
    pub stats: IntegratorStats,
}

impl Trajectory {
    pub fn last_state(&self) -> Option<&State> {
        self.samples.last().map(|s| &s.state)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trajectory is plain data")
    }
}

// autonomous systems only, so the nodes c_s are never needed
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MIN_STEP: f64 = 1e-12;
const MAX_STEPS: usize = 200_000;

struct Stepper<'a> {
    system: &'a SystemSpec,
    dx: Complex64,
    tol: f64,
    stats: IntegratorStats,
}

impl Stepper<'_> {
    fn f(&mut self, y: &State) -> State {
        self.stats.rhs_evals += 1;
        self.system.rhs(y).map(|v| v * self.dx)
    }

    /// One trial step of size `h` in `τ`; returns the 5th-order state and the
    /// scaled error norm.
    fn trial(&mut self, y: &State, h: f64) -> (State, f64) {
        let mut k = [[Complex64::new(0.0, 0.0); 3]; 7];
        for s in 0..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..3 {
                    ys[i] += kj[i] * (h * A[s][j]);
                }
            }
            k[s] = self.f(&ys);
        }
        let mut y5 = *y;
        let mut err: f64 = 0.0;
        for i in 0..3 {
            let mut d = Complex64::new(0.0, 0.0);
            for s in 0..7 {
                y5[i] += k[s][i] * (h * B5[s]);
                d += k[s][i] * (h * (B5[s] - B4[s]));
            }
            let sc = self.tol * (1.0 + y[i].norm().max(y5[i].norm()));
            err = err.max(d.norm() / sc);
        }
        if !y5.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            err = f64::INFINITY;
        }
        (y5, err)
    }
}

/// Integrates `system` from `state0` along `path`, recording `n_samples`
/// equally spaced samples (both endpoints included).
///
/// The local error per step is kept below `tol` (mixed absolute/relative).
/// A step size collapsing near a movable singularity returns
/// [`Error::StepUnderflow`] with the samples recorded so far.
pub fn integrate(system: &SystemSpec, state0: State, path: Path, tol: f64, n_samples: usize) -> Result<Trajectory> {
    let n_samples = n_samples.max(2);
    system.admissible(path.start, &state0)?;
    let mut st = Stepper {
        system,
        dx: path.end - path.start,
        tol,
        stats: IntegratorStats::default(),
    };
    let mut traj = Trajectory {
        system: system.clone(),
        path,
        samples: vec![sample(system, path.start, state0)],
        stats: IntegratorStats::default(),
    };
    let mut y = state0;
    let mut tau = 0.0;
    let mut h = (1.0 / (n_samples - 1) as f64).min(0.01);
    for j in 1..n_samples {
        let target = j as f64 / (n_samples - 1) as f64;
        while tau < target {
            let step = h.min(target - tau);
            if h < MIN_STEP || st.stats.accepted + st.stats.rejected > MAX_STEPS {
                traj.stats = st.stats;
                return Err(Error::StepUnderflow {
                    last_x: path.at(tau),
                    partial: Box::new(traj),
                });
            }
            let (y5, err) = st.trial(&y, step);
            if err <= 1.0 {
                tau = if step == target - tau { target } else { tau + step };
                y = y5;
                st.stats.accepted += 1;
                system.admissible(path.at(tau), &y)?;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                let proposed = step * grow;
                // a step clipped to land on a sample says little about h
                h = if step < h { h.max(proposed) } else { proposed };
            } else {
                st.stats.rejected += 1;
                h = step * if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.9) } else { 0.1 };
            }
        }
        traj.samples.push(sample(system, path.at(target), y));
    }
    traj.stats = st.stats;
    Ok(traj)
}

fn sample(system: &SystemSpec, x: Complex64, state: State) -> Sample {
    Sample {
        x,
        state,
        jets: jet_extend::<5>(system, &state),
    }
}
