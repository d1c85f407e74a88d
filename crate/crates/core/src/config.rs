//! Run configuration and the sampling of random initial states.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{integrate, Path, State, SystemSpec, Trajectory};
use crate::error::{Error, Result};
use crate::series::Exponent;
use crate::theorem2::ZConvention;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation order for exact suites; each suite has its own default
    /// when unset.
    #[serde(with = "opt_exponent")]
    pub order: Option<Exponent>,
    /// Pass threshold for numeric residuals.
    pub tol: f64,
    /// Local error tolerance of the integrator.
    pub integration_tol: f64,
    /// Trajectories per numeric suite (or `n_max` for `sigma-addition`).
    pub samples: Option<usize>,
    pub seed: u64,
    /// Centre of the disc random initial states are drawn from.
    pub base_state: State,
    pub disc_radius: f64,
    /// Integration runs from `x_start` to `x_start + path_length`.
    pub x_start: Complex64,
    pub path_length: Complex64,
    /// Samples recorded per trajectory.
    pub points_per_trajectory: usize,
    pub z_convention: Option<ZConvention>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: None,
            tol: 1e-7,
            integration_tol: 1e-10,
            samples: None,
            seed: 42,
            base_state: [
                Complex64::new(0.3, 0.1),
                Complex64::new(1.2, 0.3),
                Complex64::new(0.9, -0.2),
            ],
            disc_radius: 1.0,
            x_start: Complex64::new(0.0, 0.0),
            path_length: Complex64::new(0.2, 0.0),
            points_per_trajectory: 5,
            z_convention: None,
        }
    }
}

/// Order used when a suite does not name one.
pub const DEFAULT_ORDER: i64 = 50;
pub const DEFAULT_SAMPLES: usize = 25;

/// Redraws allowed per requested trajectory when integration stops at a
/// movable singularity.
const MAX_REDRAWS: usize = 20;

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn order_or(&self, default: i64) -> Exponent {
        self.order.unwrap_or(Exponent::integer(default))
    }

    /// Integer order (rounded up) for suites on the integer lattice.
    pub fn int_order_or(&self, default: u32) -> u32 {
        match self.order {
            Some(e) => ((e.quarters() + 3).div_euclid(4)).max(0) as u32,
            None => default,
        }
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    pub fn path(&self) -> Path {
        Path::new(self.x_start, self.x_start + self.path_length)
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// A point uniformly distributed in the disc `|z − centre| < radius`.
pub fn disc_point<R: Rng>(rng: &mut R, centre: Complex64, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    centre + Complex64::from_polar(r, theta)
}

/// Each component drawn independently from its disc. With `min_q`, draws
/// with `|Q| < min_q` are rejected.
pub fn random_state<R: Rng>(rng: &mut R, cfg: &RunConfig, min_q: Option<f64>) -> State {
    loop {
        let s = cfg.base_state.map(|c| disc_point(rng, c, cfg.disc_radius));
        if min_q.is_none_or(|m| s[1].norm() >= m) {
            return s;
        }
    }
}

/// Trajectories of `system` from random starts, redrawing starts whose
/// integration stops early. Returns the trajectories and the redraw count.
pub fn random_trajectories(
    system: &SystemSpec,
    cfg: &RunConfig,
    count: usize,
    stream: u64,
    min_q: Option<f64>,
) -> Result<(Vec<Trajectory>, usize)> {
    let mut rng = cfg.rng(stream);
    let mut out = Vec::with_capacity(count);
    let mut redraws = 0;
    while out.len() < count {
        let y0 = random_state(&mut rng, cfg, min_q);
        match integrate(system, y0, cfg.path(), cfg.integration_tol, cfg.points_per_trajectory) {
            Ok(t) => out.push(t),
            Err(e @ (Error::StepUnderflow { .. } | Error::NonFinite { .. } | Error::DegenerateSchwarz { .. })) => {
                redraws += 1;
                if redraws > MAX_REDRAWS * count.max(1) {
                    return Err(e);
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok((out, redraws))
}

mod opt_exponent {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::series::Exponent;

    pub fn serialize<S: Serializer>(e: &Option<Exponent>, s: S) -> Result<S::Ok, S::Error> {
        match e {
            Some(e) => s.serialize_str(&e.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Exponent>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Option::<Raw>::deserialize(d)? {
            None => Ok(None),
            Some(Raw::Int(n)) => Ok(Some(Exponent::integer(n))),
            Some(Raw::Str(s)) => Exponent::parse(&s).map(Some).map_err(serde::de::Error::custom),
        }
    }
}
