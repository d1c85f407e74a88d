//! Checks of the third-order equations and of the linear combinations of
//! Halphen-type variables that solve them.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::residual::triple_value;
use super::{integrate, residual_first_order, Jet4, Path, SchwarzProfile, SystemSpec, Trajectory};
use crate::algebra::{Ring, Scalar, Triple};
use crate::report::{Check, VerificationReport};
use crate::theorem2::{rational_f64, triple0_32, GenChazyParam};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChazyVariant {
    /// `y''' − 2yy'' + 3y'² = 0`
    Classic,
    /// The same minus `(4/(36 − k²))(6y' − y²)²`.
    Generalised(GenChazyParam),
}

impl ChazyVariant {
    fn coeff(&self) -> f64 {
        match self {
            ChazyVariant::Classic => 0.0,
            ChazyVariant::Generalised(p) => rational_f64(&p.chazy_coeff()),
        }
    }

    fn label(&self) -> String {
        match self {
            ChazyVariant::Classic => "chazy".into(),
            ChazyVariant::Generalised(p) => format!("chazy(k={p})"),
        }
    }
}

/// Left side of the (generalised) Chazy equation on a jet, divided by
/// `max(1, maxₖ |y⁽ᵏ⁾|^{4/(k+1)})` so every term is of comparable weight.
pub fn chazy_residual<const N: usize>(y: &super::Jet<N>, variant: &ChazyVariant) -> f64 {
    let d: Vec<Complex64> = (0..4).map(|k| y.derivative(k)).collect();
    let main = d[3] - 2.0 * d[0] * d[2] + 3.0 * d[1] * d[1];
    let extra = 6.0 * d[1] - d[0] * d[0];
    let lhs = main - variant.coeff() * extra * extra;
    let scale = d
        .iter()
        .enumerate()
        .map(|(k, v)| v.norm().powf(4.0 / (k as f64 + 1.0)))
        .fold(1.0, f64::max);
    lhs.norm() / scale
}

/// `y = −(a·w₁ + b·w₂ + c·w₃)`.
fn combo<S: Ring>(w: &[S; 3], abc: [i64; 3]) -> S {
    -(w[0].scale(abc[0], 1) + w[1].scale(abc[1], 1) + w[2].scale(abc[2], 1))
}

/// `p₁ = −4w₁ − w₂ − w₃` and cyclic.
pub fn halphen_combos<S: Ring>(w: &[S; 3]) -> [S; 3] {
    [combo(w, [4, 1, 1]), combo(w, [1, 4, 1]), combo(w, [1, 1, 4])]
}

/// Inverse of [`halphen_combos`]: `wᵢ = −(pᵢ + σ)/3` with `σ = −(p₁ + p₂ + p₃)/6`.
pub fn halphen_from_combos<S: Ring>(p: &[S; 3]) -> [S; 3] {
    let sigma = (p[0].clone() + p[1].clone() + p[2].clone()).scale(-1, 6);
    p.clone().map(|pi| (pi + sigma.clone()).scale(-1, 3))
}

/// `w₁ = −½(s''/s' − s'/s − s'/(s−1))`, `w₂ = −½(s''/s' − s'/(s−1))`,
/// `w₃ = −½(s''/s' − s'/s)`.
pub fn w_from_schwarz<S: Scalar>(y: &[S; 3]) -> [S; 3] {
    let [s, s1, s2] = y.clone();
    let one = S::constant(Complex64::new(1.0, 0.0));
    let log_s1 = s2 / s1.clone();
    let log_s = s1.clone() / s.clone();
    let log_sm1 = s1 / (s - one);
    [
        (log_s1.clone() - log_s.clone() - log_sm1.clone()).scale(-1, 2),
        (log_s1.clone() - log_sm1).scale(-1, 2),
        (log_s1 - log_s).scale(-1, 2),
    ]
}

/// Running maxima keyed by check id.
#[derive(Default)]
struct Maxima(BTreeMap<String, f64>);

impl Maxima {
    fn put(&mut self, id: impl Into<String>, v: f64) {
        let e = self.0.entry(id.into()).or_insert(0.0);
        // NaN must survive the maximum
        if v.is_nan() || *e < v {
            *e = v;
        }
    }

    fn into_checks(self, tol: f64) -> impl Iterator<Item = Check> {
        self.0.into_iter().map(move |(id, v)| Check::numeric(id, v, tol))
    }
}

fn sample_scale(p: &[Jet4]) -> f64 {
    p.iter().map(|j| j.taylor()[0].norm()).fold(1.0, f64::max)
}

/// `q = −6(p' − p²/6)` and `r = pq − (3/2)q'` from jets. Each
/// differentiation costs one order of exactness.
fn reconstruct(p: &Jet4) -> (Jet4, Jet4) {
    let q = (p.differentiate() - p.square().scale(1, 6)).scale(-6, 1);
    let r = *p * q - q.differentiate().scale(3, 2);
    (q, r)
}

const CYCLIC: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

/// The Darboux–Halphen combinations: classic Chazy for `p₁, p₂, p₃, p₀`, the
/// first-order system they satisfy, the closed forms for `qᵢ, rᵢ`, and the
/// Ramanujan system for the reconstructed triples.
pub fn dh_combo_check(traj: &Trajectory, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("dh-combos");
    let mut m = Maxima::default();
    for s in &traj.samples {
        let p = halphen_combos(&s.jets);
        let p0 = (p[0] + p[1] + p[2]).scale(1, 3);
        for (i, pi) in p.iter().enumerate() {
            m.put(format!("chazy(p{})", i + 1), chazy_residual(pi, &ChazyVariant::Classic));
        }
        m.put("chazy(p0)", chazy_residual(&p0, &ChazyVariant::Classic));
        let w_sum = (s.jets[0] + s.jets[1] + s.jets[2]).scale(-2, 1);
        m.put("p0=-2(w1+w2+w3)", (p0.taylor()[0] - w_sum.taylor()[0]).norm() / sample_scale(&p));
        let sc = sample_scale(&p);
        for [i, j, k] in CYCLIC {
            let n = i + 1;
            let (pi, pj, pk) = (p[i], p[j], p[k]);
            // (c1n): pᵢ' − pᵢ²/6 = (8/27)(pⱼ − pᵢ)(pᵢ − pₖ) − (1/54)(pⱼ − pₖ)²
            let lhs = pi.differentiate() - pi.square().scale(1, 6);
            let rhs = ((pj - pi) * (pi - pk)).scale(8, 27) - (pj - pk).square().scale(1, 54);
            m.put(format!("first-order(p{n})"), (lhs - rhs).taylor()[0].norm() / (sc * sc));
            let q = ((pj - pi) * (pk - pi)).scale(16, 9) + (pj - pk).square().scale(1, 9);
            let r = ((pi.scale(2, 1) - pj - pk) * (((pk - pi) * (pj - pi)).scale(32, 1) - (pj - pk).square())).scale(1, 27);
            let (q_rec, _) = reconstruct(&pi);
            let r_rec = pi * q - q.differentiate().scale(3, 2);
            m.put(format!("q{n}-closed-form"), (q - q_rec).taylor()[0].norm() / (sc * sc));
            m.put(format!("r{n}-closed-form"), (r - r_rec).taylor()[0].norm() / (sc * sc * sc));
            m.put(format!("ramanujan(p{n},q{n},r{n})"), residual_first_order(&SystemSpec::Ramanujan, &[pi, q, r]));
        }
    }
    for c in m.into_checks(tol) {
        rep.push(c.param("system", &traj.system));
    }
    rep
}

/// The symmetric `k = 3/2` combinations: the first-order system they satisfy,
/// generalised Chazy with `k = 3/2` for `p₁, p₂, p₃` and `k = 3` for `p₀`, the
/// closed forms for `qᵢ, rᵢ`, and the `k = 3/2` and `k = 3` systems for the
/// reconstructed triples.
pub fn dh32_combo_check(traj: &Trajectory, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("dh32-combos");
    let mut m = Maxima::default();
    let k32 = ChazyVariant::Generalised(GenChazyParam::three_halves());
    let k3 = ChazyVariant::Generalised(GenChazyParam::three());
    for s in &traj.samples {
        let p = halphen_combos(&s.jets);
        let p0 = (p[0] + p[1] + p[2]).scale(1, 3);
        let sc = sample_scale(&p);
        for (i, pi) in p.iter().enumerate() {
            m.put(format!("chazy(k=3/2)(p{})", i + 1), chazy_residual(pi, &k32));
        }
        m.put("chazy(k=3)(p0)", chazy_residual(&p0, &k3));
        let mut first = None;
        for [i, j, k] in CYCLIC {
            let n = i + 1;
            let (pi, pj, pk) = (p[i], p[j], p[k]);
            let lhs = pi.differentiate() - pi.square().scale(1, 6);
            let rhs = (pj - pk).square().scale(5, 18);
            m.put(format!("first-order(p{n})"), (lhs - rhs).taylor()[0].norm() / (sc * sc));
            let q = (pj - pk).square().scale(-5, 3);
            let r = (q * (pi.scale(2, 1) - pj - pk)).scale(-1, 3);
            let (q_rec, _) = reconstruct(&pi);
            let r_rec = pi * q - q.differentiate().scale(3, 2);
            m.put(format!("q{n}-closed-form"), (q - q_rec).taylor()[0].norm() / (sc * sc));
            m.put(format!("r{n}-closed-form"), (r - r_rec).taylor()[0].norm() / (sc * sc * sc));
            m.put(format!("k=3/2-system(p{n},q{n},r{n})"), residual_first_order(&SystemSpec::nde1(), &[pi, q, r]));
            if i == 0 {
                first = Some(Triple::new(pi, q, r));
            }
        }
        let (q0, r0) = reconstruct(&p0);
        m.put("k=3-system(p0,q0,r0)", residual_first_order(&SystemSpec::nde2(), &[p0, q0, r0]));
        if let Some(t1) = first {
            // the k = 3 triple of the forward map, computed from (p₁, q₁, r₁)
            let image = triple_value(&triple0_32(&t1.p, &t1.q, &t1.r));
            let direct = Triple::new(p0.taylor()[0], q0.taylor()[0], r0.taylor()[0]);
            m.put("(p0,q0,r0)=forward-image(p1,q1,r1)", image.relative_distance(&direct));
        }
    }
    for c in m.into_checks(tol) {
        rep.push(c.param("system", &traj.system));
    }
    rep
}

/// Combinations `(a, b, c)` of `y = −(a·w₁ + b·w₂ + c·w₃)` asserted to solve a
/// Chazy-type equation for the given profile.
pub fn schwarz_claims(profile: SchwarzProfile) -> Vec<([i64; 3], ChazyVariant)> {
    let k = |n, d| ChazyVariant::Generalised(GenChazyParam::from_ratio(n, d).expect("admissible k"));
    match profile {
        SchwarzProfile::Zero => vec![
            ([4, 1, 1], ChazyVariant::Classic),
            ([1, 4, 1], ChazyVariant::Classic),
            ([1, 1, 4], ChazyVariant::Classic),
            ([2, 2, 2], ChazyVariant::Classic),
        ],
        SchwarzProfile::TwoThirds => vec![
            ([4, 1, 1], k(3, 2)),
            ([1, 4, 1], k(3, 2)),
            ([1, 1, 4], k(3, 2)),
            ([2, 2, 2], k(3, 1)),
        ],
        SchwarzProfile::ThirdThirdOne => vec![([1, 2, 3], k(3, 1)), ([2, 1, 3], k(3, 1)), ([2, 2, 2], k(2, 1))],
        SchwarzProfile::ThirdThirdHalf => vec![([1, 2, 3], k(3, 1)), ([2, 1, 3], k(3, 1)), ([2, 2, 2], k(4, 1))],
    }
}

/// Builds `w₁, w₂, w₃` from a Schwarzian trajectory and checks the combinations
/// claimed for its profile. For the two `1/3` profiles the combination
/// `−4w₁ − w₂ − w₃` is reported without judgment; for `(0,0,0)` and
/// `(2/3,2/3,2/3)` the `w`'s are also tested against the Halphen system and
/// the symmetric `k = 3/2` system.
pub fn schwarz_remark_check(traj: &Trajectory, tol: f64) -> VerificationReport {
    let SystemSpec::Schwarz(profile) = traj.system else {
        let mut rep = VerificationReport::new("schwarz-remarks");
        rep.push(Check::error("system", "", &format!("not a Schwarzian trajectory: {}", traj.system)));
        return rep;
    };
    let mut rep = VerificationReport::new(format!("schwarz({})", profile.angles()));
    let claims = schwarz_claims(profile);
    let control = matches!(profile, SchwarzProfile::ThirdThirdOne | SchwarzProfile::ThirdThirdHalf);
    let mut m = Maxima::default();
    let mut info = Maxima::default();
    for s in &traj.samples {
        let w = w_from_schwarz(&s.jets);
        for (abc, variant) in &claims {
            let id = format!("{}(-{}w1-{}w2-{}w3)", variant.label(), abc[0], abc[1], abc[2]);
            m.put(id, chazy_residual(&combo(&w, *abc), variant));
        }
        if control {
            info.put("chazy(k=3/2)(-4w1-w2-w3)", chazy_residual(&combo(&w, [4, 1, 1]), &ChazyVariant::Generalised(GenChazyParam::three_halves())));
            info.put("chazy(-4w1-w2-w3)", chazy_residual(&combo(&w, [4, 1, 1]), &ChazyVariant::Classic));
        }
        match profile {
            SchwarzProfile::Zero => m.put("halphen-system(w)", residual_first_order(&SystemSpec::DarbouxHalphen, &w)),
            SchwarzProfile::TwoThirds => {
                m.put("dh32-system(w)", residual_first_order(&SystemSpec::dh32(), &w));
                let printed = SystemSpec::SymmetricDh32 {
                    weight: SystemSpec::DH32_PRINTED_WEIGHT,
                };
                info.put("dh32-system(w)[weight 16/9]", residual_first_order(&printed, &w));
            }
            _ => {}
        }
    }
    for c in m.into_checks(tol) {
        rep.push(c);
    }
    for (id, v) in info.0 {
        rep.push(Check::info(id, format!("{v:.3e}")));
    }
    rep
}

/// Halphen system from `w₁ = w₂ = w₃ = w₀` against `w₀/(1 + w₀x)`.
pub fn riccati_check(w0: Complex64, path: Path, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("riccati");
    match integrate(&SystemSpec::DarbouxHalphen, [w0; 3], path, tol * 1e-2, 9) {
        Ok(traj) => {
            let dev = traj
                .samples
                .iter()
                .flat_map(|s| {
                    let exact = w0 / (1.0 + w0 * (s.x - path.start));
                    s.state.map(|w| (w - exact).norm() / exact.norm().max(1.0))
                })
                .fold(0.0, f64::max);
            rep.push(Check::numeric("w=w0/(1+w0x)", dev, tol).param("w0", w0));
        }
        Err(e) => rep.push(Check::error("w=w0/(1+w0x)", &format!("{tol:.1e}"), &e)),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{jet_extend, Jet};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rational_chazy_solution() {
        // y = −6/x at x = 1
        let y = Jet::<5>::from_derivatives(&[c(-6.0, 0.0), c(6.0, 0.0), c(-12.0, 0.0), c(36.0, 0.0)]);
        assert!(chazy_residual(&y, &ChazyVariant::Classic) < 1e-15);
        assert_eq!(chazy_residual(&Jet::<5>::constant(c(0.0, 0.0)), &ChazyVariant::Classic), 0.0);
    }

    #[test]
    fn combos_round_trip() {
        let w = [c(0.3, 0.0), c(0.0, 0.1), c(-0.2, 0.0)];
        let p = halphen_combos(&w);
        let back = halphen_from_combos(&p);
        for i in 0..3 {
            assert!((back[i] - w[i]).norm() < 1e-16);
        }
        let eq = halphen_combos(&[c(0.7, 0.0); 3]);
        assert!(eq.iter().all(|p| (*p - c(-4.2, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn halphen_combinations_solve_chazy() {
        let tr = integrate(&SystemSpec::DarbouxHalphen, [c(0.3, 0.0), c(0.0, 0.1), c(-0.2, 0.0)], Path::new(c(0.0, 0.0), c(0.5, 0.0)), 1e-10, 5).unwrap();
        let rep = dh_combo_check(&tr, 1e-7);
        assert!(rep.passed(), "{rep}");
        assert!(rep.checks.len() >= 4 + 1 + 4 * 3);
    }

    #[test]
    fn symmetric_start_has_vanishing_q() {
        let w = jet_extend::<5>(&SystemSpec::DarbouxHalphen, &[c(0.4, 0.1); 3]);
        let p = halphen_combos(&w);
        let q = ((p[1] - p[0]) * (p[2] - p[0])).scale(16, 9) + (p[1] - p[2]).square().scale(1, 9);
        assert!(q.taylor()[0].norm() < 1e-15);
        let (q_rec, _) = reconstruct(&p[0]);
        assert!(q_rec.taylor()[0].norm() < 1e-14);
    }

    #[test]
    fn symmetric_k32_combinations() {
        let tr = integrate(&SystemSpec::dh32(), [c(0.3, 0.0), c(0.0, 0.1), c(-0.2, 0.0)], Path::new(c(0.0, 0.0), c(0.5, 0.0)), 1e-10, 5).unwrap();
        let rep = dh32_combo_check(&tr, 1e-7);
        assert!(rep.passed(), "{rep}");
        let printed = SystemSpec::SymmetricDh32 {
            weight: SystemSpec::DH32_PRINTED_WEIGHT,
        };
        let tr = integrate(&printed, [c(0.3, 0.0), c(0.0, 0.1), c(-0.2, 0.0)], Path::new(c(0.0, 0.0), c(0.5, 0.0)), 1e-10, 5).unwrap();
        assert!(!dh32_combo_check(&tr, 1e-7).passed());
    }

    #[test]
    fn schwarz_profiles() {
        for profile in SchwarzProfile::ALL {
            let tr = integrate(&SystemSpec::Schwarz(profile), [c(0.4, 0.2), c(1.0, 0.0), c(0.0, 0.0)], Path::new(c(0.0, 0.0), c(0.2, 0.0)), 1e-11, 5).unwrap();
            let rep = schwarz_remark_check(&tr, 1e-6);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn riccati() {
        let rep = riccati_check(c(0.4, -0.3), Path::new(c(0.0, 0.0), c(0.8, 0.3)), 1e-8);
        assert!(rep.passed(), "{rep}");
    }
}
