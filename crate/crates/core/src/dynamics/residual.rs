//! Chain-rule certification: source jets are pushed through an algebraic map
//! with jet arithmetic and the images are tested against a target system.

use num_complex::Complex64;
use serde::Serialize;

use super::{Jet, Jet4, SystemSpec, Trajectory};
use crate::algebra::Triple;
use crate::error::{Error, Result};
use crate::report::Check;
use crate::series::Sign;
use crate::theorem1::{forward_map, inverse_map, BranchChoice};
use crate::theorem2::{compute_z_pair, forward_map32, inverse_map32, ZConvention};

/// `max_i |y_i' − f_i(y)| / max(1, |y|²)` read off the first two Taylor
/// coefficients.
pub fn residual_first_order<const N: usize>(system: &SystemSpec, jets: &[Jet<N>; 3]) -> f64 {
    let state = [jets[0].taylor()[0], jets[1].taylor()[0], jets[2].taylor()[0]];
    let f = system.rhs(&state);
    let size = state.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scale = size.powi(2).max(1.0);
    (0..3)
        .map(|i| (jets[i].taylor()[1] - f[i]).norm() / scale)
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapKind {
    /// Ramanujan → three Ramanujan triples.
    Theorem1Forward(BranchChoice),
    /// Ramanujan → one Ramanujan triple.
    Theorem1Inverse(BranchChoice),
    /// `k = 3/2` → two `k = 3/2` triples and one `k = 3` triple.
    Theorem2Forward(ZConvention, Sign),
    /// `k = 3` → one `k = 3/2` triple through the chosen cubic root.
    Theorem2Inverse(usize),
}

impl MapKind {
    /// Target systems of the output triples, in order.
    pub fn targets(&self) -> Vec<SystemSpec> {
        match self {
            MapKind::Theorem1Forward(_) => vec![SystemSpec::Ramanujan; 3],
            MapKind::Theorem1Inverse(_) => vec![SystemSpec::Ramanujan],
            MapKind::Theorem2Forward(..) => vec![SystemSpec::nde1(), SystemSpec::nde1(), SystemSpec::nde2()],
            MapKind::Theorem2Inverse(_) => vec![SystemSpec::nde1()],
        }
    }

    pub fn triple_names(&self) -> &'static [&'static str] {
        match self {
            MapKind::Theorem1Forward(_) | MapKind::Theorem2Forward(..) => &["triple2", "triple3", "triple0"],
            MapKind::Theorem1Inverse(_) | MapKind::Theorem2Inverse(_) => &["preimage"],
        }
    }

    pub fn apply(&self, p: &Jet4, q: &Jet4, r: &Jet4) -> Result<Vec<Triple<Jet4>>> {
        match *self {
            MapKind::Theorem1Forward(b) => {
                let img = forward_map(p, q, r, b)?;
                // √ of a vanishing radicand has no Taylor expansion
                if img.uv.u.taylor()[0].norm() <= 1e-6 * q.taylor()[0].norm().sqrt().max(1.0) {
                    return Err(Error::BranchCollapse("u"));
                }
                Ok(vec![img.t2, img.t3, img.t0])
            }
            MapKind::Theorem1Inverse(b) => Ok(vec![inverse_map(p, q, r, b)?]),
            MapKind::Theorem2Forward(conv, sign) => {
                let zp = compute_z_pair(q, r, conv, sign)?;
                Ok(forward_map32(p, q, r, &zp)?.to_vec())
            }
            MapKind::Theorem2Inverse(k) => Ok(vec![inverse_map32(p, q, r, k)?]),
        }
    }
}

/// Per-triple maximum residual over the samples where the map is defined.
#[derive(Clone, Debug, Serialize)]
pub struct TransformResidual {
    pub map: MapKind,
    pub per_triple: Vec<f64>,
    /// Residual of every triple at each sample; `None` where skipped.
    pub per_sample: Vec<Option<Vec<f64>>>,
    /// Samples where a radical collapsed or a denominator vanished.
    pub skipped: usize,
    pub evaluated: usize,
}

impl TransformResidual {
    /// Largest residual over all triples; `NaN` when nothing was evaluated.
    pub fn max(&self) -> f64 {
        if self.evaluated == 0 {
            return f64::NAN;
        }
        self.per_triple.iter().copied().fold(0.0, f64::max)
    }

    pub fn checks(&self, prefix: &str, tol: f64) -> Vec<Check> {
        self.map
            .triple_names()
            .iter()
            .zip(&self.per_triple)
            .map(|(name, &dev)| {
                let dev = if self.evaluated == 0 { f64::NAN } else { dev };
                Check::numeric(format!("{prefix}{name}"), dev, tol)
                    .param("evaluated", self.evaluated)
                    .param("skipped", self.skipped)
            })
            .collect()
    }
}

/// Pushes each sample's jets through `map` and measures the images against
/// the map's target systems. Radicals are evaluated independently at each
/// sample on the branch fixed by `map`.
pub fn transform_residual(map: MapKind, trajectory: &Trajectory) -> TransformResidual {
    let targets = map.targets();
    let mut out = TransformResidual {
        map,
        per_triple: vec![0.0; targets.len()],
        per_sample: Vec::new(),
        skipped: 0,
        evaluated: 0,
    };
    for s in &trajectory.samples {
        let [p, q, r] = &s.jets;
        let images = match map.apply(p, q, r) {
            Ok(images) if images.iter().all(|t| t.p.is_finite() && t.q.is_finite() && t.r.is_finite()) => images,
            _ => {
                out.skipped += 1;
                out.per_sample.push(None);
                continue;
            }
        };
        let row: Vec<f64> = images
            .iter()
            .zip(&targets)
            .map(|(t, sys)| residual_first_order(sys, &[t.p, t.q, t.r]))
            .collect();
        for (m, &v) in out.per_triple.iter_mut().zip(&row) {
            *m = m.max(v);
        }
        out.per_sample.push(Some(row));
        out.evaluated += 1;
    }
    out
}

/// Value of a jet triple.
pub(crate) fn triple_value(t: &Triple<Jet4>) -> Triple<Complex64> {
    t.map(|j| j.taylor()[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{integrate, jet_extend, Path};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn jets_from_the_system_have_zero_residual() {
        let y = [c(0.3, 0.1), c(1.2, 0.3), c(0.9, -0.2)];
        let j = jet_extend::<5>(&SystemSpec::Ramanujan, &y);
        assert!(residual_first_order(&SystemSpec::Ramanujan, &j) < 1e-15);
        let mut bad = j;
        bad[1].taylor_mut()[1] += c(1e-3, 0.0);
        let r = residual_first_order(&SystemSpec::Ramanujan, &bad);
        // |state|² ≈ 1.56 here
        assert!(r > 5e-4 && r <= 1e-3, "{r}");
    }

    #[test]
    fn stationary_trajectory_maps_to_stationary_images() {
        let cc = c(0.5, 0.0);
        let tr = integrate(&SystemSpec::Ramanujan, [cc, cc * cc, cc * cc * cc], Path::new(c(0.0, 0.0), c(0.3, 0.0)), 1e-10, 3).unwrap();
        // R² = Q³ here, so T = R; on the rotated cube roots u collapses to 0
        for b in BranchChoice::all() {
            let res = transform_residual(MapKind::Theorem1Forward(b), &tr);
            if b.cube_root_index == 0 {
                assert_eq!(res.evaluated, 3);
                assert!(res.max() < 1e-14, "{} {:?}", b.label(), res.per_triple);
            } else {
                assert_eq!(res.skipped, 3);
            }
        }
    }

    #[test]
    fn theorem1_forward_certifies_on_a_generic_trajectory() {
        let y0 = [c(0.3, 0.1), c(1.2, 0.3), c(0.9, -0.2)];
        let tr = integrate(&SystemSpec::Ramanujan, y0, Path::new(c(0.0, 0.0), c(0.2, 0.0)), 1e-10, 4).unwrap();
        let res = transform_residual(MapKind::Theorem1Forward(BranchChoice::principal()), &tr);
        assert!(res.max() < 1e-10, "{:?}", res.per_triple);
    }

    #[test]
    fn theorem2_forward_needs_the_half_root() {
        let y0 = [c(0.3, 0.1), c(1.2, 0.3), c(0.9, -0.2)];
        let tr = integrate(&SystemSpec::nde1(), y0, Path::new(c(0.0, 0.0), c(0.2, 0.0)), 1e-10, 4).unwrap();
        let proof = transform_residual(MapKind::Theorem2Forward(ZConvention::Proof, Sign::Plus), &tr);
        assert!(proof.max() < 1e-10, "{:?}", proof.per_triple);
        let theorem = transform_residual(MapKind::Theorem2Forward(ZConvention::Theorem, Sign::Plus), &tr);
        assert!(theorem.per_triple[0] > 1e-3);
        // the k = 3 triple does not involve Z
        assert!(theorem.per_triple[2] < 1e-10);
    }
}
