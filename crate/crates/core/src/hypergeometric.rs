//! Gauss `₂F₁` with exact rational coefficients, its quadratic
//! transformations, the theta–modulus identity `θ₃² = ₂F₁(½,½;1;κ²)`, and the
//! Schwarz-function formulas in `u, v`.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::modular::theta;
use crate::report::{Check, VerificationReport};
use crate::series::{int, rat, Exponent, PuiseuxSeries, Rational};
use crate::theorem1::{uv_from_theta, Elimination};

/// Default bound on `|x|` for numeric evaluation; no analytic continuation.
pub const DEFAULT_MARGIN: f64 = 0.95;

/// The Wronskian constant fixed by `b² = ₂F₁(½,½;1;κ²)`.
pub fn c0() -> Rational {
    rat(-1, 2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypergeometricCoeffs {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub b: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
    /// `(a)ₙ(b)ₙ/((c)ₙ n!)`
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn nonpositive_integer(c: &Rational) -> bool {
    c.is_integer() && !c.is_positive()
}

/// First `len` coefficients of `₂F₁(a, b; c; x)` by the ratio recursion.
pub fn coeffs_2f1(a: &Rational, b: &Rational, c: &Rational, len: usize) -> Result<HypergeometricCoeffs> {
    if nonpositive_integer(c) {
        return Err(Error::InvalidHypergeometricC(c.to_string()));
    }
    let mut coeffs = Vec::with_capacity(len);
    let mut cur = Rational::one();
    for n in 0..len {
        coeffs.push(cur.clone());
        let n = int(n as i64);
        cur = cur * (a + &n) * (b + &n) / ((c + &n) * (&n + int(1)));
    }
    Ok(HypergeometricCoeffs {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        coeffs,
    })
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl HypergeometricCoeffs {
    /// The series as a power series in `x` truncated at `order`.
    pub fn series(&self, order: Exponent) -> PuiseuxSeries {
        PuiseuxSeries::from_integer_coeffs(&self.coeffs, order)
    }

    pub fn eval(&self, x: Complex64, tol: f64) -> Result<Complex64> {
        self.eval_with_margin(x, tol, DEFAULT_MARGIN)
    }

    /// Partial sum whose geometric tail bound is below `tol` (relative to
    /// `max(1, |sum|)`). Terms beyond the stored coefficients continue the
    /// ratio recursion in floating point.
    pub fn eval_with_margin(&self, x: Complex64, tol: f64, margin: f64) -> Result<Complex64> {
        let modulus = x.norm();
        if modulus > margin {
            return Err(Error::OutsideConvergenceMargin { modulus, margin });
        }
        let (a, b, c) = (f64_of(&self.a), f64_of(&self.b), f64_of(&self.c));
        let mut sum = Complex64::new(0.0, 0.0);
        let mut xn = Complex64::new(1.0, 0.0);
        let mut coeff = 1.0;
        for n in 0..100_000usize {
            coeff = match self.coeffs.get(n) {
                Some(r) => f64_of(r),
                None => coeff,
            };
            sum += xn * coeff;
            let nf = n as f64;
            let ratio = ((a + nf) * (b + nf) / ((c + nf) * (nf + 1.0))).abs();
            let next = coeff * (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
            let rho = modulus * ratio.max(1.0);
            let next_term = (xn * modulus).norm() * next.abs();
            if rho < 1.0 && next_term / (1.0 - rho) <= tol * sum.norm().max(1.0) {
                return Ok(sum);
            }
            coeff = next;
            xn *= x;
        }
        Ok(sum)
    }
}

/// `F(inner)` for a series `inner` of positive valuation.
fn compose_2f1(f: &HypergeometricCoeffs, inner: &PuiseuxSeries, order: Exponent) -> Result<PuiseuxSeries> {
    PuiseuxSeries::compose(&f.coeffs, inner, order)
}

fn x_series(order: Exponent) -> PuiseuxSeries {
    PuiseuxSeries::monomial(Exponent::integer(1), int(1), order)
}

/// Both quadratic transformations between `₂F₁(½,½;1;x)` and
/// `₂F₁(¼,¾;1;·)`, as exact power series in `x` through `order`.
pub fn quad_transform_checks(order: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("quadratic-transformations");
    let n = Exponent::integer(i64::from(order));
    let len = order as usize + 2;
    let half = rat(1, 2);
    let f = coeffs_2f1(&half, &half, &int(1), len).expect("c = 1");
    let g = coeffs_2f1(&rat(1, 4), &rat(3, 4), &int(1), len).expect("c = 1");
    let lhs = f.series(n);
    let x = x_series(n);

    // (1 − 2x)^{−1/2} ₂F₁(¼,¾;1;1 − (1 − 2x)^{−2})
    let minus_2x = x.scale(&int(-2));
    let first = (|| -> Result<PuiseuxSeries> {
        let prefactor = PuiseuxSeries::binomial_pow(&minus_2x, &rat(-1, 2), n)?;
        let inv_sq = PuiseuxSeries::binomial_pow(&minus_2x, &int(-2), n)?;
        let inner = &PuiseuxSeries::one(n) - &inv_sq;
        Ok(&prefactor * &compose_2f1(&g, &inner, n)?)
    })();
    rep.push(
        Check::exact_result(
            "2F1(1/2,1/2;1;x)=(1-2x)^(-1/2)2F1(1/4,3/4;1;1-1/(2x-1)^2)",
            first.and_then(|rhs| lhs.eq_to_order(&rhs, n)),
        )
        .param("order", order),
    );

    // (1 − x/2)^{−1/2} ₂F₁(¼,¾;1;x²/(2 − x)²)
    let minus_half_x = x.scale(&rat(-1, 2));
    let second = (|| -> Result<PuiseuxSeries> {
        let prefactor = PuiseuxSeries::binomial_pow(&minus_half_x, &rat(-1, 2), n)?;
        let inner = &x.pow(2).scale(&rat(1, 4)) * &PuiseuxSeries::binomial_pow(&minus_half_x, &int(-2), n)?;
        Ok(&prefactor * &compose_2f1(&g, &inner, n)?)
    })();
    rep.push(
        Check::exact_result(
            "2F1(1/2,1/2;1;x)=(1-x/2)^(-1/2)2F1(1/4,3/4;1;x^2/(2-x)^2)",
            second.and_then(|rhs| lhs.eq_to_order(&rhs, n)),
        )
        .param("order", order),
    );
    rep
}

/// `κ² = a⁴/b⁴` and `1 − κ² = c⁴/b⁴` in the theta nome.
#[derive(Clone, Debug)]
pub struct ModulusData {
    pub kappa_sq: PuiseuxSeries,
    pub complement_sq: PuiseuxSeries,
}

pub fn modulus_data(order: Exponent) -> ModulusData {
    let th = theta(order);
    let b4_inv = th.b.pow(4).inverse().expect("θ₃ starts at 1");
    ModulusData {
        kappa_sq: &th.a.pow(4) * &b4_inv,
        complement_sq: &th.c.pow(4) * &b4_inv,
    }
}

/// `θ₂, θ₃, θ₄` at a real nome in `(0, 1)`.
pub fn theta_values(nome: f64) -> (f64, f64, f64) {
    // terms through nome^80; the truncation error is far below 1e-16 for nome ≤ 0.5
    let th = theta(Exponent::integer(80));
    (th.a.eval_f64(nome), th.b.eval_f64(nome), th.c.eval_f64(nome))
}

/// `θ₃² = ₂F₁(½,½;1;κ²)` exactly through `order` (theta nome), and the
/// complementary form `θ₃⁴ = ₂F₁(½,½;1;θ₄⁴/θ₃⁴)²` numerically.
pub fn theta_2f1_modulus_check(order: u32, nomes: &[f64], tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new("theta-modulus");
    let n = Exponent::integer(i64::from(order));
    let th = theta(n);
    let md = modulus_data(n);
    let one = PuiseuxSeries::one(n);
    rep.push(
        Check::exact_result("kappa^2+(1-kappa^2)=1", (&md.kappa_sq + &md.complement_sq).eq_to_order(&one, n))
            .param("order", order),
    );
    let half = rat(1, 2);
    let f = coeffs_2f1(&half, &half, &int(1), order as usize + 2).expect("c = 1");
    let composed = compose_2f1(&f, &md.kappa_sq, n);
    let b2 = th.b.pow(2);
    rep.push(
        Check::exact_result("b^2=2F1(1/2,1/2;1;kappa^2)", composed.and_then(|rhs| b2.eq_to_order(&rhs, n)))
            .param("order", order),
    );
    for &nome in nomes {
        let (_, b, c) = theta_values(nome);
        let arg = (c / b).powi(4);
        let id = format!("b^4=2F1(1/2,1/2;1;c^4/b^4)^2(q={nome})");
        match f.eval(Complex64::new(arg, 0.0), 1e-15) {
            Ok(z1) => {
                let lhs = b.powi(4);
                let rhs = (z1 * z1).re;
                let ratio = rhs / lhs;
                rep.push(
                    Check::numeric(&id, (rhs - lhs).abs() / lhs, tol)
                        .param("nome", nome)
                        .param("c^4/b^4", format!("{arg:.6}"))
                        .witness(format!(
                            "rhs/lhs = {ratio:.6}; (ln(1/q)/pi)^2 = {:.6}",
                            (nome.ln() / std::f64::consts::PI).powi(2)
                        )),
                );
            }
            Err(e) => rep.push(Check::error(&id, &format!("{tol:.1e}"), &e).param("nome", nome)),
        }
    }
    rep
}

fn exact_common(id: &str, lhs: &PuiseuxSeries, rhs: &PuiseuxSeries, order: Exponent) -> Check {
    let n = order.min(lhs.trunc_order()).min(rhs.trunc_order());
    Check::exact_result(id, lhs.eq_to_order(rhs, n)).param("order", n)
}

/// `s = 1/2 − v/(2u)` and `s' = (u² − v²)/(6u)` against their displayed theta
/// forms for both eliminations, `−(2/3)c₀u = −2c₀·(theta product)`, and
/// `c₀ = −1/2` from `−2c₀b⁴ = ₂F₁(½,½;1;κ²)²`.
pub fn schwarz_uv_series_check(order: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("schwarz-uv");
    let n = Exponent::integer(i64::from(order));
    // the 1/u factor costs one unit of relative precision
    let th = theta(n + Exponent::integer(1));
    let half = PuiseuxSeries::constant(rat(1, 2), th.order);
    let c0 = c0();
    let forms = [
        (Elimination::CEliminated, "c-eliminated", &th.a, &th.b),
        (Elimination::AEliminated, "a-eliminated", &th.b, &th.c),
    ];
    for (elim, name, x, y) in forms {
        let uv = uv_from_theta(&th, elim);
        let (xn, yn) = if name == "c-eliminated" { ("a", "b") } else { ("b", "c") };
        let inv_u = match uv.u.inverse() {
            Ok(i) => i,
            Err(e) => {
                rep.push(Check::error(format!("{name}/s"), "exact", &e));
                continue;
            }
        };
        let s_uv = &half - &(&uv.v * &inv_u).scale(&rat(1, 2));
        let x2 = x.pow(2);
        let y2 = y.pow(2);
        let x2y2 = &x2 * &y2;
        let x4y4 = &x2.pow(2) + &y2.pow(2);
        let inv_x2y2 = x2y2.inverse().expect("theta products are invertible");
        let ratio = (&x4y4 * &inv_x2y2).scale(&rat(1, 4));
        let s_printed = &half + &ratio;
        rep.push(exact_common(&format!("{name}/s=1/2+({xn}4+{yn}4)/(4{xn}2{yn}2)"), &s_uv, &s_printed, n));
        if elim == Elimination::AEliminated {
            // the same pair read with the other sign in front of the fraction
            let s_other = &half - &ratio;
            rep.push(exact_common(&format!("{name}/s=1/2-({xn}4+{yn}4)/(4{xn}2{yn}2)"), &s_uv, &s_other, n));
        }
        let sp_uv = (&(&uv.u.square() - &uv.v.square()) * &inv_u).scale(&rat(1, 6));
        let xmy = x - y;
        let xpy = x + y;
        let sp_printed = (&(&(&x2 + &y2).pow(2) * &(&xmy.pow(2) * &xpy.pow(2))) * &inv_x2y2).scale(&rat(-1, 8));
        rep.push(exact_common(
            &format!("{name}/s'=-({xn}2+{yn}2)^2({xn}-{yn})^2({xn}+{yn})^2/(8{xn}2{yn}2)"),
            &sp_uv,
            &sp_printed,
            n,
        ));
        let z1_sq_uv = uv.u.scale(&(rat(-2, 3) * &c0));
        let z1_sq_theta = x2y2.scale(&(int(-2) * &c0));
        rep.push(exact_common(
            &format!("{name}/-(2/3)c0*u=-2c0*{xn}2{yn}2"),
            &z1_sq_uv,
            &z1_sq_theta,
            n,
        ));
    }
    // c₀ from the modulus route: −2c₀b⁴ = ₂F₁(½,½;1;κ²)²
    let md = modulus_data(n);
    let half_r = rat(1, 2);
    let f = coeffs_2f1(&half_r, &half_r, &int(1), order as usize + 2).expect("c = 1");
    let check = compose_2f1(&f, &md.kappa_sq, n).and_then(|z| {
        let lhs = theta(n).b.pow(4).scale(&(int(-2) * &c0));
        lhs.eq_to_order(&z.square(), n)
    });
    rep.push(Check::exact_result("-2c0*b4=2F1(1/2,1/2;1;kappa^2)^2", check).param("c0", &c0).param("order", order));
    rep
}

/// Leading Laurent coefficient of the c-eliminated `s`, for reporting.
pub fn c_eliminated_s_leading(order: u32) -> Option<(Exponent, Rational)> {
    let th = theta(Exponent::integer(i64::from(order)));
    let uv = uv_from_theta(&th, Elimination::CEliminated);
    let inv_u = uv.u.inverse().ok()?;
    let half = PuiseuxSeries::constant(rat(1, 2), th.order);
    let s = &half - &(&uv.v * &inv_u).scale(&rat(1, 2));
    let v = s.valuation()?;
    let c = s.coeff(v);
    if c.is_zero() {
        None
    } else {
        Some((v, c))
    }
}
