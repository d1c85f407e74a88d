//! Truncated Laurent–Puiseux series with exact rational coefficients.
//!
//! Exponents live on the fixed lattice `(1/4)·ℤ`. A series carries a
//! truncation order `O`: every coefficient with exponent `< O` is known
//! exactly and everything at or above `O` is unknown. Binary operations use
//! the pessimistic rule, so the result's order is the largest one the inputs
//! can actually certify.

mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use io::SeriesRepr;

/// Exact coefficient field.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Denominator of the exponent lattice.
pub const LATTICE_DEN: i64 = 4;

/// An exponent on the quarter lattice, stored as a count of quarters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(i64);

impl Exponent {
    pub const ZERO: Exponent = Exponent(0);

    pub const fn from_quarters(quarters: i64) -> Self {
        Exponent(quarters)
    }

    pub const fn integer(n: i64) -> Self {
        Exponent(n * LATTICE_DEN)
    }

    pub const fn quarters(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % LATTICE_DEN == 0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, LATTICE_DEN)
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        let scaled = r * int(LATTICE_DEN);
        if !scaled.is_integer() {
            return Err(Error::OffLattice(r.to_string()));
        }
        scaled
            .to_integer()
            .to_i64()
            .map(Exponent)
            .ok_or_else(|| Error::OffLattice(r.to_string()))
    }

    /// Parses `"9/4"`, `"-1/2"` or `"3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        Self::from_rational(&r)
    }

    pub fn scale(self, m: i64) -> Self {
        Exponent(self.0 * m)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

/// Parses an exact rational written as `p`, `p/q` or a terminating decimal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// First exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub exponent: Exponent,
    pub left: Rational,
    pub right: Rational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exponent {}: {} vs {}",
            self.exponent, self.left, self.right
        )
    }
}

/// A truncated Laurent–Puiseux series on the quarter lattice.
///
/// Zero coefficients are never stored, and every stored exponent lies below
/// the truncation order.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    terms: BTreeMap<i64, Rational>,
    trunc: i64,
}

impl PuiseuxSeries {
    pub fn zero(order: Exponent) -> Self {
        PuiseuxSeries {
            terms: BTreeMap::new(),
            trunc: order.0,
        }
    }

    pub fn one(order: Exponent) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: Exponent) -> Self {
        Self::monomial(Exponent::ZERO, c, order)
    }

    pub fn monomial(e: Exponent, c: Rational, order: Exponent) -> Self {
        Self::from_terms([(e, c)], order)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate and terms at or above `order` are dropped.
    pub fn from_terms<I>(terms: I, order: Exponent) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.0 < order.0 {
                *map.entry(e.0).or_insert_with(Rational::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxSeries {
            terms: map,
            trunc: order.0,
        }
    }

    /// Integer-lattice series `Σ coeffs[n]·qⁿ` truncated at `order`.
    pub fn from_integer_coeffs(coeffs: &[Rational], order: Exponent) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| (Exponent::integer(n as i64), c.clone())),
            order,
        )
    }

    pub fn trunc_order(&self) -> Exponent {
        Exponent(self.trunc)
    }

    /// Lowest stored exponent, or `None` for a series that is zero to its
    /// order.
    pub fn valuation(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|&k| Exponent(k))
    }

    /// Valuation, counting a zero series as vanishing up to its order.
    fn effective_valuation(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> Rational {
        self.terms.get(&e.0).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (Exponent(k), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowers the truncation order to `order` (never raises it).
    pub fn truncate(&self, order: Exponent) -> Self {
        let trunc = self.trunc.min(order.0);
        PuiseuxSeries {
            terms: self
                .terms
                .range(..trunc)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            trunc,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc_order());
        }
        PuiseuxSeries {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.trunc_order() - self.valuation().unwrap_or(Exponent::ZERO));
        let mut base = self.clone();
        let mut e = n;
        if e == 0 {
            return result;
        }
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { &result * &base };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Laurent–Puiseux reciprocal. The valuation negates and the relative
    /// precision is preserved.
    pub fn inverse(&self) -> Result<Self> {
        let (&v, lead) = self.terms.iter().next().ok_or(Error::NonInvertible)?;
        let rel = self.trunc - v;
        let lead_inv = lead.recip();
        // normalised tail h with a = lead·q^v·(1 + h)
        let tail: Vec<(i64, Rational)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&k, c)| (k - v, c * &lead_inv))
            .collect();
        let n = rel.max(0) as usize;
        let mut b: Vec<Rational> = vec![Rational::zero(); n];
        if n > 0 {
            b[0] = Rational::one();
        }
        for i in 1..n {
            let mut acc = Rational::zero();
            for (k, h) in &tail {
                let k = *k as usize;
                if k > i {
                    break;
                }
                if !b[i - k].is_zero() {
                    acc -= h * &b[i - k];
                }
            }
            b[i] = acc;
        }
        let terms = b
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 - v, c * &lead_inv))
            .collect();
        Ok(PuiseuxSeries {
            terms,
            trunc: self.trunc - 2 * v,
        })
    }

    /// `D = q·d/dq`: the coefficient at exponent `e` is multiplied by `e`.
    pub fn derive(&self) -> Self {
        PuiseuxSeries {
            terms: self
                .terms
                .iter()
                .filter(|(&k, _)| k != 0)
                .map(|(&k, c)| (k, c * rat(k, LATTICE_DEN)))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Substitutes `q → ±q^m`.
    pub fn substitute_monomial(&self, sign: Sign, m: u32) -> Result<Self> {
        let m = i64::from(m);
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let mut c = c.clone();
            if sign == Sign::Minus {
                if k % LATTICE_DEN != 0 {
                    return Err(Error::SignSubstitutionNeedsIntegerExponents(
                        Exponent(k).to_string(),
                    ));
                }
                if (k / LATTICE_DEN).is_odd() {
                    c = -c;
                }
            }
            terms.insert(k * m, c);
        }
        Ok(PuiseuxSeries {
            terms,
            trunc: self.trunc * m,
        })
    }

    /// `Σ outer[n]·innerⁿ`, truncated at `order` or earlier if the inner
    /// series or the supplied coefficients cannot certify that far.
    pub fn compose(outer: &[Rational], inner: &PuiseuxSeries, order: Exponent) -> Result<Self> {
        let w = inner.effective_valuation();
        if w <= 0 {
            return Err(Error::CompositionRequiresPositiveValuation);
        }
        let mut trunc = order.0.min(inner.trunc);
        let available = (outer.len() as i64).saturating_mul(w);
        trunc = trunc.min(available);
        let target = Exponent(trunc);
        let inner = inner.truncate(target);
        // Horner from the highest power that can still contribute
        let needed = if trunc <= 0 {
            0
        } else {
            ((trunc + w - 1) / w) as usize
        }
        .min(outer.len());
        let mut acc = PuiseuxSeries::zero(target);
        for c in outer[..needed].iter().rev() {
            acc = &(&acc * &inner) + &PuiseuxSeries::constant(c.clone(), target);
            acc = acc.truncate(target);
        }
        Ok(acc.with_order(target))
    }

    /// `(1 + u)^α` via the binomial series.
    pub fn binomial_pow(u: &PuiseuxSeries, alpha: &Rational, order: Exponent) -> Result<Self> {
        let w = u.effective_valuation();
        if w <= 0 {
            return Err(Error::CompositionRequiresPositiveValuation);
        }
        let trunc = order.0.min(u.trunc).max(0);
        let len = (trunc / w + 2) as usize;
        Self::compose(&binomial_coefficients(alpha, len), u, order)
    }

    /// Compares coefficients below `order`; `Ok(None)` means agreement.
    pub fn eq_to_order(&self, other: &PuiseuxSeries, order: Exponent) -> Result<Option<Mismatch>> {
        let available = self.trunc.min(other.trunc);
        if order.0 > available {
            return Err(Error::InsufficientPrecision {
                requested: order.to_string(),
                available: Exponent(available).to_string(),
            });
        }
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .range(..order.0)
            .chain(other.terms.range(..order.0))
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            let l = self.coeff(Exponent(k));
            let r = other.coeff(Exponent(k));
            if l != r {
                return Ok(Some(Mismatch {
                    exponent: Exponent(k),
                    left: l,
                    right: r,
                }));
            }
        }
        Ok(None)
    }

    /// Sets the truncation order, keeping stored terms below it. Only
    /// meaningful when the caller knows the order is certified.
    fn with_order(mut self, order: Exponent) -> Self {
        self.trunc = order.0;
        self.terms.retain(|&k, _| k < order.0);
        self
    }

    /// Largest absolute coefficient, as `f64` (diagnostics only).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Numeric evaluation at a real positive nome `x`, summing stored terms.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_f64().unwrap_or(f64::NAN) * x.powf(k as f64 / LATTICE_DEN as f64))
            .sum()
    }
}

/// `C(α, n)` for `n < len`.
pub fn binomial_coefficients(alpha: &Rational, len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut c = Rational::one();
    for n in 0..len {
        out.push(c.clone());
        c = c * (alpha - int(n as i64)) / int(n as i64 + 1);
    }
    out
}

impl PartialEq for PuiseuxSeries {
    /// Agreement on every exponent below the smaller truncation order.
    fn eq(&self, other: &Self) -> bool {
        let order = Exponent(self.trunc.min(other.trunc));
        matches!(self.eq_to_order(other, order), Ok(None))
    }
}

impl<'a> Add<&'a PuiseuxSeries> for &'a PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn add(self, rhs: &'a PuiseuxSeries) -> PuiseuxSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let mut terms: BTreeMap<i64, Rational> = self
            .terms
            .range(..trunc)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        for (&k, c) in rhs.terms.range(..trunc) {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        PuiseuxSeries { terms, trunc }
    }
}

impl<'a> Sub<&'a PuiseuxSeries> for &'a PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn sub(self, rhs: &'a PuiseuxSeries) -> PuiseuxSeries {
        self + &(-rhs)
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

impl<'a> Mul<&'a PuiseuxSeries> for &'a PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn mul(self, rhs: &'a PuiseuxSeries) -> PuiseuxSeries {
        let va = self.effective_valuation();
        let vb = rhs.effective_valuation();
        let trunc = self
            .trunc
            .saturating_add(vb)
            .min(rhs.trunc.saturating_add(va));
        if self.terms.is_empty() || rhs.terms.is_empty() || trunc <= va + vb {
            return PuiseuxSeries {
                terms: BTreeMap::new(),
                trunc,
            };
        }
        let base = va + vb;
        let mut acc: Vec<Rational> = vec![Rational::zero(); (trunc - base) as usize];
        let right: Vec<(i64, &Rational)> = rhs.terms.iter().map(|(&k, c)| (k, c)).collect();
        for (&ka, ca) in self.terms.range(..trunc - vb) {
            for &(kb, cb) in &right {
                let k = ka + kb;
                if k >= trunc {
                    break;
                }
                acc[(k - base) as usize] += ca * cb;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + base, c))
            .collect();
        PuiseuxSeries { terms, trunc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, rhs: PuiseuxSeries) -> PuiseuxSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        -&self
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&k, c) in &self.terms {
            let e = Exponent(k);
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", Exponent(self.trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(coeffs: &[i64], order: i64) -> PuiseuxSeries {
        let c: Vec<Rational> = coeffs.iter().map(|&c| int(c)).collect();
        PuiseuxSeries::from_integer_coeffs(&c, Exponent::integer(order))
    }

    fn q(e: i64) -> Exponent {
        Exponent::integer(e)
    }

    #[test]
    fn addition_cancels_and_keeps_min_order() {
        let a = ints(&[1, 1], 10);
        let b = ints(&[1, -1], 8);
        let s = &a + &b;
        assert_eq!(s.trunc_order(), q(8));
        assert!(s.eq_to_order(&PuiseuxSeries::constant(int(2), q(8)), q(8)).unwrap().is_none());

        let one = &ints(&[1, -24], 5) + &ints(&[0, 24], 5);
        assert_eq!(one, PuiseuxSeries::one(q(5)));
    }

    #[test]
    fn multiplication_examples() {
        let p = &ints(&[1, 1], 10) * &ints(&[1, -1], 10);
        assert_eq!(p, ints(&[1, 0, -1], 10));

        let quarter = PuiseuxSeries::monomial(Exponent::from_quarters(1), int(1), q(3));
        let half = &quarter * &quarter;
        assert_eq!(half.valuation(), Some(Exponent::from_quarters(2)));
        assert_eq!(half.coeff(Exponent::from_quarters(2)), int(1));

        // theta_3 partial sum squared, hand expansion
        let t = ints(&[1, 2, 0, 0, 2], 6);
        let sq = &t * &t;
        assert_eq!(sq, ints(&[1, 4, 4, 0, 4, 8], 6));
    }

    #[test]
    fn product_order_accounts_for_valuation() {
        let a = PuiseuxSeries::monomial(q(2), int(1), q(10));
        let b = ints(&[1, 1], 5);
        // a known below 10, shifted by val(b)=0 -> 10; b known below 5, shifted by 2 -> 7
        assert_eq!((&a * &b).trunc_order(), q(7));
    }

    #[test]
    fn inverse_examples() {
        let inv = ints(&[1, -1], 10).inverse().unwrap();
        assert_eq!(inv, ints(&[1; 10], 10));

        let h = PuiseuxSeries::monomial(Exponent::from_quarters(2), int(1), q(5));
        let hi = h.inverse().unwrap();
        assert_eq!(hi.valuation(), Some(Exponent::from_quarters(-2)));
        assert_eq!(hi.trunc_order(), q(5) - Exponent::from_quarters(4));

        assert!(matches!(
            PuiseuxSeries::zero(q(3)).inverse(),
            Err(Error::NonInvertible)
        ));
    }

    #[test]
    fn derivation_examples() {
        let c = PuiseuxSeries::monomial(q(3), int(1), q(10)).derive();
        assert_eq!(c.coeff(q(3)), int(3));
        assert!(PuiseuxSeries::constant(int(7), q(4)).derive().is_zero());
        let r = PuiseuxSeries::monomial(Exponent::from_quarters(1), int(1), q(2)).derive();
        assert_eq!(r.coeff(Exponent::from_quarters(1)), rat(1, 4));
    }

    #[test]
    fn substitution_examples() {
        let a = ints(&[1, -24, -72, -96], 4);
        let up = a.substitute_monomial(Sign::Plus, 4).unwrap();
        assert_eq!(up.trunc_order(), q(16));
        assert_eq!(up.coeff(q(4)), int(-24));
        assert_eq!(up.coeff(q(8)), int(-72));
        let neg = a.substitute_monomial(Sign::Minus, 1).unwrap();
        assert_eq!(neg, ints(&[1, 24, -72, 96], 4));
        assert_eq!(a.substitute_monomial(Sign::Plus, 1).unwrap(), a);

        let quarter = PuiseuxSeries::monomial(Exponent::from_quarters(1), int(2), q(3));
        assert!(matches!(
            quarter.substitute_monomial(Sign::Minus, 1),
            Err(Error::SignSubstitutionNeedsIntegerExponents(_))
        ));
    }

    #[test]
    fn composition_examples() {
        let geo = vec![int(1); 12];
        let x = PuiseuxSeries::monomial(q(1), int(1), q(10));
        assert_eq!(
            PuiseuxSeries::compose(&geo, &x, q(10)).unwrap(),
            ints(&[1; 10], 10)
        );

        let mut fact = int(1);
        let exp: Vec<Rational> = (0..6)
            .map(|n| {
                if n > 0 {
                    fact = &fact * int(n);
                }
                fact.recip()
            })
            .collect();
        let zero = PuiseuxSeries::zero(q(5));
        assert_eq!(
            PuiseuxSeries::compose(&exp, &zero, q(5)).unwrap(),
            PuiseuxSeries::one(q(5))
        );

        assert!(matches!(
            PuiseuxSeries::compose(&geo, &ints(&[1, 1], 5), q(5)),
            Err(Error::CompositionRequiresPositiveValuation)
        ));
    }

    #[test]
    fn composition_order_limited_by_coefficients() {
        let short = vec![int(1), int(1)];
        let x = PuiseuxSeries::monomial(q(1), int(1), q(10));
        assert_eq!(
            PuiseuxSeries::compose(&short, &x, q(10)).unwrap().trunc_order(),
            q(2)
        );
    }

    #[test]
    fn binomial_examples() {
        let x = PuiseuxSeries::monomial(q(1), int(1), q(6));
        assert_eq!(
            PuiseuxSeries::binomial_pow(&x, &int(1), q(6)).unwrap(),
            ints(&[1, 1], 6)
        );
        let m2x = PuiseuxSeries::monomial(q(1), int(-2), q(6));
        let r = PuiseuxSeries::binomial_pow(&m2x, &rat(-1, 2), q(6)).unwrap();
        assert_eq!(r.coeff(q(0)), int(1));
        assert_eq!(r.coeff(q(1)), int(1));
        assert_eq!(r.coeff(q(2)), rat(3, 2));
        assert_eq!(r.coeff(q(3)), rat(5, 2));
        assert_eq!(
            PuiseuxSeries::binomial_pow(&x, &int(0), q(6)).unwrap(),
            PuiseuxSeries::one(q(6))
        );
    }

    #[test]
    fn eq_to_order_reports_first_mismatch() {
        let e4 = ints(&[1, 240, 2160], 3);
        let e6 = ints(&[1, -504, -16632], 3);
        let m = e4.eq_to_order(&e6, q(2)).unwrap().unwrap();
        assert_eq!(m.exponent, q(1));
        assert_eq!(m.left, int(240));
        assert_eq!(m.right, int(-504));
        assert!(matches!(
            e4.eq_to_order(&e6, q(4)),
            Err(Error::InsufficientPrecision { .. })
        ));
        let a = ints(&[1, 0, -1], 10);
        let b = &ints(&[1, 1], 10) * &ints(&[1, -1], 10);
        assert!(a.eq_to_order(&b, q(10)).unwrap().is_none());
    }

    #[test]
    fn parse_rationals_and_exponents() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(Exponent::parse("9/4").unwrap(), Exponent::from_quarters(9));
        assert!(Exponent::parse("1/3").is_err());
        assert_eq!(Exponent::from_quarters(-2).to_string(), "-1/2");
    }

    #[test]
    fn pow_matches_repeated_products() {
        let b = ints(&[1, 2, 0, 0, 2], 12);
        let b4 = &(&b * &b) * &(&b * &b);
        assert_eq!(b.pow(4), b4);
        assert_eq!(b.pow(0), PuiseuxSeries::one(q(12)));
    }
}
