//! Sparse Laurent polynomials with real coefficients.
//!
//! A Laurent polynomial is a finite sum Σ c_e x^e where the exponent e may be
//! negative. This is the algebra the iteration engine runs on: the coefficient
//! functions of the transformed radial equations are Laurent polynomials in r,
//! and the recursion only ever adds, multiplies and differentiates them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A finite map from integer exponent to nonzero real coefficient.
///
/// Stored coefficients are never exactly zero; arithmetic prunes them.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, f64>,
}

impl LaurentPoly {
    /// The zero polynomial (no stored terms).
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Self::term(0, c)
    }

    /// The single-term polynomial `coeff * x^exp`.
    pub fn term(exp: i64, coeff: f64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0.0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing
    /// duplicates and pruning zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, f64)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, f64> = BTreeMap::new();
        for (e, c) in iter {
            *terms.entry(e).or_insert(0.0) += c;
        }
        terms.retain(|_, c| *c != 0.0);
        Self { terms }
    }

    /// Coefficient of `x^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> f64 {
        self.terms.get(&exp).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over (exponent, coefficient) pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest stored exponent, if any.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest stored exponent, if any.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent support, `max_exp - min_exp + 1`; 0 for the zero
    /// polynomial.
    pub fn exp_span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo + 1,
            _ => 0,
        }
    }

    /// Formal derivative: `c x^e` maps to `e c x^{e-1}`, constants vanish.
    pub fn diff(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&e, _)| e != 0)
                .map(|(&e, &c)| (e - 1, e as f64 * c)),
        )
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (e, k * c)))
    }

    /// Evaluates at `x` (x must be nonzero when negative exponents are present).
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|(&e, &c)| c * x.powi(e as i32)).sum()
    }

    /// Largest absolute coefficient; 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// True when every coefficient is a finite number.
    pub fn all_finite(&self) -> bool {
        self.terms.values().all(|c| c.is_finite())
    }

    /// True when every coefficient magnitude is at most `bound`.
    pub fn coeffs_within(&self, bound: f64) -> bool {
        self.terms.values().all(|c| c.abs() <= bound)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms().map(|(e, c)| (e, -c))))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<i64, f64> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                *out.entry(e1 + e2).or_insert(0.0) += c1 * c2;
            }
        }
        out.retain(|_, c| *c != 0.0);
        LaurentPoly { terms: out }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1.0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}
