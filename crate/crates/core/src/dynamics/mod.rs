//! First-order systems in the complex variable `x`, their integration along
//! straight segments, and residual certification by Taylor jets.
//!
//! Every system here is three-dimensional: `(p, q, r)` for the Ramanujan and
//! generalised Chazy systems, `(w₁, w₂, w₃)` for the Halphen-type systems, and
//! `(s, s', s'')` for the Schwarzian equations.

mod checks;
mod integrate;
mod jet;
mod residual;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Scalar, Triple};
use crate::error::{Error, Result};
use crate::series::parse_rational;
use crate::theorem2::{genk_rhs, ratio_i64, GenChazyParam};

pub use checks::{
    chazy_residual, dh32_combo_check, dh_combo_check, halphen_combos, halphen_from_combos,
    riccati_check, schwarz_claims, schwarz_remark_check, w_from_schwarz, ChazyVariant,
};
pub use integrate::{integrate, IntegratorStats, Path, Sample, Trajectory};
pub use jet::{Jet, Jet4};
pub use residual::{residual_first_order, transform_residual, MapKind, TransformResidual};

pub type State = [Complex64; 3];

/// Coefficients `(α, β, γ)` of `{s, x} + (s')²(α/s² + β/(s−1)² + γ/(s(s−1))) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchwarzProfile {
    /// `s(0, 0, 0, x)`
    Zero,
    /// `s(2/3, 2/3, 2/3, x)`
    TwoThirds,
    /// `s(1/3, 1/3, 1, x)`
    ThirdThirdOne,
    /// `s(1/3, 1/3, 1/2, x)`
    ThirdThirdHalf,
}

impl SchwarzProfile {
    pub const ALL: [SchwarzProfile; 4] = [
        SchwarzProfile::Zero,
        SchwarzProfile::TwoThirds,
        SchwarzProfile::ThirdThirdOne,
        SchwarzProfile::ThirdThirdHalf,
    ];

    /// `(α, β, γ)` as `(num, den)` pairs.
    pub fn coefficients(self) -> [(i64, i64); 3] {
        match self {
            SchwarzProfile::Zero => [(1, 2), (1, 2), (-1, 2)],
            SchwarzProfile::TwoThirds => [(5, 18), (5, 18), (-5, 18)],
            SchwarzProfile::ThirdThirdOne => [(4, 9), (0, 1), (0, 1)],
            SchwarzProfile::ThirdThirdHalf => [(4, 9), (3, 8), (-3, 8)],
        }
    }

    pub fn angles(self) -> &'static str {
        match self {
            SchwarzProfile::Zero => "0,0,0",
            SchwarzProfile::TwoThirds => "2/3,2/3,2/3",
            SchwarzProfile::ThirdThirdOne => "1/3,1/3,1",
            SchwarzProfile::ThirdThirdHalf => "1/3,1/3,1/2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.replace(' ', "");
        SchwarzProfile::ALL
            .into_iter()
            .find(|p| p.angles() == s)
            .ok_or(Error::Unknown {
                kind: "schwarz profile",
                name: s,
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSpec {
    /// `p' = (p² − q)/6, q' = (2/3)(pq − r), r' = pr − q²`
    Ramanujan,
    /// Same with `r' = pr + k²/(36 − k²)·q²`.
    GenChazy(GenChazyParam),
    /// `w₁' = w₂w₃ − w₁w₂ − w₁w₃` and cyclic.
    DarbouxHalphen,
    /// The Halphen system plus `weight·((w₁−w₂)(w₃−w₁) + (w₂−w₃)(w₁−w₂) + (w₃−w₁)(w₂−w₃))`
    /// in every component. `weight = (num, den)`.
    SymmetricDh32 { weight: (i64, i64) },
    /// `(s, s', s'')` with `s''' = (3/2)s''²/s' − s'³·V(s)`.
    Schwarz(SchwarzProfile),
}

impl SystemSpec {
    /// Cross-term weight under which the `w`'s of `s(2/3, 2/3, 2/3, x)` solve
    /// the symmetric system.
    pub const DH32_WEIGHT: (i64, i64) = (4, 9);
    /// Cross-term weight as printed alongside the symmetric system.
    pub const DH32_PRINTED_WEIGHT: (i64, i64) = (16, 9);

    pub fn dh32() -> Self {
        SystemSpec::SymmetricDh32 {
            weight: Self::DH32_WEIGHT,
        }
    }

    pub fn nde1() -> Self {
        SystemSpec::GenChazy(GenChazyParam::three_halves())
    }

    pub fn nde2() -> Self {
        SystemSpec::GenChazy(GenChazyParam::three())
    }

    pub fn dimension(&self) -> usize {
        3
    }

    pub fn rhs<S: Scalar>(&self, y: &[S; 3]) -> [S; 3] {
        match self {
            SystemSpec::Ramanujan => {
                let t = Triple::new(y[0].clone(), y[1].clone(), y[2].clone());
                let (p, q, r) = (&t.p, &t.q, &t.r);
                [
                    (p.square() - q.clone()).scale(1, 6),
                    (p.clone() * q.clone() - r.clone()).scale(2, 3),
                    p.clone() * r.clone() - q.square(),
                ]
            }
            SystemSpec::GenChazy(param) => {
                let f = genk_rhs(param, &Triple::new(y[0].clone(), y[1].clone(), y[2].clone()));
                [f.p, f.q, f.r]
            }
            SystemSpec::DarbouxHalphen => halphen_rhs(y, (0, 1)),
            SystemSpec::SymmetricDh32 { weight } => halphen_rhs(y, *weight),
            SystemSpec::Schwarz(profile) => {
                let [s, s1, s2] = y.clone();
                let [(an, ad), (bn, bd), (gn, gd)] = profile.coefficients();
                let one = S::constant(Complex64::new(1.0, 0.0));
                let sm1 = s.clone() - one.clone();
                let mut v = (one.clone() / s.square()).scale(an, ad);
                if bn != 0 {
                    v = v + (one.clone() / sm1.square()).scale(bn, bd);
                }
                if gn != 0 {
                    v = v + (one / (s * sm1)).scale(gn, gd);
                }
                let s3 = (s2.square() / s1.clone()).scale(3, 2) - s1.square() * s1.clone() * v;
                [s1, s2, s3]
            }
        }
    }

    /// Checks the state for points where the right-hand side is undefined.
    pub fn admissible(&self, x: Complex64, y: &State) -> Result<()> {
        if let SystemSpec::Schwarz(_) = self {
            let scale = y[0].norm().max(1.0);
            let reason = if y[0].norm() <= 1e-12 * scale {
                Some("s = 0")
            } else if (y[0] - 1.0).norm() <= 1e-12 * scale {
                Some("s = 1")
            } else if y[1].norm() <= 1e-14 {
                Some("s' = 0")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::DegenerateSchwarz { x, reason });
            }
        }
        if y.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { x });
        }
        Ok(())
    }
}

fn halphen_rhs<S: Scalar>(y: &[S; 3], weight: (i64, i64)) -> [S; 3] {
    let [w1, w2, w3] = y.clone();
    let cross = (w1.clone() - w2.clone()) * (w3.clone() - w1.clone())
        + (w2.clone() - w3.clone()) * (w1.clone() - w2.clone())
        + (w3.clone() - w1.clone()) * (w2.clone() - w3.clone());
    let extra = cross.scale(weight.0, weight.1);
    let one = |a: &S, b: &S, c: &S| b.clone() * c.clone() - a.clone() * b.clone() - a.clone() * c.clone() + extra.clone();
    [one(&w1, &w2, &w3), one(&w2, &w3, &w1), one(&w3, &w1, &w2)]
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemSpec::Ramanujan => f.write_str("ramanujan"),
            SystemSpec::GenChazy(p) => write!(f, "genchazy:{p}"),
            SystemSpec::DarbouxHalphen => f.write_str("dh"),
            SystemSpec::SymmetricDh32 { weight } if *weight == Self::DH32_WEIGHT => f.write_str("dh32"),
            SystemSpec::SymmetricDh32 { weight } => write!(f, "dh32:{}/{}", weight.0, weight.1),
            SystemSpec::Schwarz(p) => write!(f, "schwarz:{}", p.angles()),
        }
    }
}

impl FromStr for SystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("ramanujan", None) => Ok(SystemSpec::Ramanujan),
            ("genchazy", Some(k)) => Ok(SystemSpec::GenChazy(GenChazyParam::parse(k)?)),
            ("dh", None) => Ok(SystemSpec::DarbouxHalphen),
            ("dh32", None) => Ok(SystemSpec::dh32()),
            ("dh32", Some(w)) => Ok(SystemSpec::SymmetricDh32 {
                weight: ratio_i64(&parse_rational(w)?),
            }),
            ("schwarz", Some(p)) => Ok(SystemSpec::Schwarz(SchwarzProfile::parse(p)?)),
            _ => Err(Error::Unknown {
                kind: "system",
                name: s.into(),
            }),
        }
    }
}

impl Serialize for SystemSpec {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SystemSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Taylor jets of a solution through `state`, by Picard iteration on the
/// jets: coefficient `k + 1` is read off the right-hand side at order `k`.
pub fn jet_extend<const N: usize>(system: &SystemSpec, state: &State) -> [Jet<N>; 3] {
    let mut y = state.map(Jet::<N>::constant);
    for k in 0..N - 1 {
        let f = system.rhs(&y);
        for (yi, fi) in y.iter_mut().zip(f.iter()) {
            yi.taylor_mut()[k + 1] = fi.taylor()[k] / (k + 1) as f64;
        }
    }
    y
}

/// Value part of a triple of jets.
pub fn values<const N: usize>(j: &[Jet<N>; 3]) -> State {
    [j[0].value(), j[1].value(), j[2].value()]
}
