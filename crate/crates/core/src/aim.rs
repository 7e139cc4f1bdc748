//! The asymptotic iteration engine.
//!
//! For a second-order equation y'' = λ₀(r) y' + s₀(r) y with Laurent-polynomial
//! coefficients, repeated differentiation generates
//!
//!   λₙ = λₙ₋₁' + sₙ₋₁ + λ₀ λₙ₋₁,
//!   sₙ = sₙ₋₁' + s₀ λₙ₋₁,
//!
//! and the equation has a polynomial-type solution exactly when the
//! termination quantity δₙ = λₙ sₙ₋₁ − λₙ₋₁ sₙ vanishes identically for some
//! n. Everything here is exact coefficient arithmetic in double precision;
//! the only tolerance enters when deciding whether a δₙ is "zero".

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Coefficient magnitudes beyond this are treated as overflow of the
/// recursion rather than meaningful algebra.
const COEFF_OVERFLOW: f64 = 1e250;

/// The λₙ, sₙ and δₙ sequences generated from a (λ₀, s₀) pair.
#[derive(Clone, Debug)]
pub struct AimSession {
    lambda0: LaurentPoly,
    s0: LaurentPoly,
    /// iterates[n] = (λₙ, sₙ); index 0 holds the inputs themselves.
    iterates: Vec<(LaurentPoly, LaurentPoly)>,
    /// deltas[n] = λₙ sₙ₋₁ − λₙ₋₁ sₙ for n ≥ 1; deltas[0] = −s₀, which is the
    /// termination quantity of the zeroth iteration (λ₋₁ = 1, s₋₁ = 0).
    deltas: Vec<LaurentPoly>,
}

impl AimSession {
    pub fn lambda0(&self) -> &LaurentPoly {
        &self.lambda0
    }

    pub fn s0(&self) -> &LaurentPoly {
        &self.s0
    }

    /// λₙ for 0 ≤ n ≤ n_max.
    pub fn lambda(&self, n: usize) -> &LaurentPoly {
        &self.iterates[n].0
    }

    /// sₙ for 0 ≤ n ≤ n_max.
    pub fn s(&self, n: usize) -> &LaurentPoly {
        &self.iterates[n].1
    }

    /// δₙ for 0 ≤ n ≤ n_max.
    pub fn delta(&self, n: usize) -> &LaurentPoly {
        &self.deltas[n]
    }

    /// Highest iteration index held by the session.
    pub fn n_max(&self) -> usize {
        self.iterates.len() - 1
    }

    /// Reference coefficient scale for δₙ: max |coefficient of λₙ sₙ₋₁|,
    /// or 0 for n = 0 (where λ₋₁ s₋₁-type products are trivial).
    pub fn delta_scale(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            (self.lambda(n) * self.s(n - 1)).max_abs_coeff()
        }
    }

    /// Relative-scale termination test for δₙ.
    pub fn delta_is_zero(&self, n: usize, tol: f64) -> bool {
        delta_is_zero(self.delta(n), self.delta_scale(n), tol)
    }
}

/// True iff every coefficient of `delta` satisfies |c| ≤ tol · (scale + 1).
///
/// The +1 keeps the test meaningful when the reference product itself is
/// tiny or absent. Panics if tol is not positive.
pub fn delta_is_zero(delta: &LaurentPoly, scale: f64, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    delta.max_abs_coeff() <= tol * (scale + 1.0)
}

/// Runs the recursion up to iteration `n_max` (≥ 1).
///
/// Fails with [`Error::CoefficientOverflow`] if any coefficient leaves the
/// representable range, reporting the iteration at which it happened.
pub fn aim_iterate(lambda0: &LaurentPoly, s0: &LaurentPoly, n_max: usize) -> Result<AimSession> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let mut iterates = Vec::with_capacity(n_max + 1);
    let mut deltas = Vec::with_capacity(n_max + 1);
    iterates.push((lambda0.clone(), s0.clone()));
    deltas.push(-s0);

    for n in 1..=n_max {
        let (lam_prev, s_prev) = &iterates[n - 1];
        let lam_n = &(&lam_prev.diff() + s_prev) + &(lambda0 * lam_prev);
        let s_n = &s_prev.diff() + &(s0 * lam_prev);
        if !(lam_n.all_finite() && s_n.all_finite())
            || !(lam_n.coeffs_within(COEFF_OVERFLOW) && s_n.coeffs_within(COEFF_OVERFLOW))
        {
            return Err(Error::CoefficientOverflow { iteration: n });
        }
        let delta = &(&lam_n * s_prev) - &(lam_prev * &s_n);
        iterates.push((lam_n, s_n));
        deltas.push(delta);
    }
    Ok(AimSession {
        lambda0: lambda0.clone(),
        s0: s0.clone(),
        iterates,
        deltas,
    })
}

/// Natural sample radius for the numeric termination search: the bound-state
/// length scale 1/|b| = 1/√(M²−E²). Keeps δₙ(r₀) well scaled.
pub fn default_sample_radius(b_decay: f64) -> f64 {
    1.0 / b_decay.abs()
}

/// Locates an eigenvalue by sampling δₙ at a point r₀ and bisecting in E.
///
/// `build` produces the (λ₀, s₀) pair for a trial energy. The bracket must
/// show a sign change of δₙ(r₀; E); the root is refined to 10⁻¹² absolute in
/// E. After convergence the full δₙ is required to vanish in the
/// relative-scale sense — a sign change of the sample alone (an accidental
/// zero at r₀ without identical termination) is reported as non-convergence.
pub fn aim_numeric_root<F>(build: F, n: usize, r0: f64, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<(LaurentPoly, LaurentPoly)>,
{
    if !(r0 > 0.0) {
        return Err(Error::Domain("sample point r0 must be positive".into()));
    }
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Domain("bracket must satisfy E_lo < E_hi".into()));
    }
    let session_at = |e: f64| -> Result<AimSession> {
        let (l0, s0) = build(e)?;
        aim_iterate(&l0, &s0, n.max(1))
    };
    let sample = |e: f64| -> Result<f64> { Ok(session_at(e)?.delta(n).eval(r0)) };

    let f_lo = sample(lo)?;
    let f_hi = sample(hi)?;
    if f_lo == 0.0 && f_hi == 0.0 {
        return Err(Error::NotConverging(
            "termination sample vanishes across the whole bracket".into(),
        ));
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoRootInBracket { lo, hi });
    }

    let (mut a, mut b) = (lo, hi);
    let mut fa = f_lo;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = sample(mid)?;
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
        if b - a < 1e-12 {
            break;
        }
    }
    let root = 0.5 * (a + b);

    // Guard against an accidental zero of the r0 sample: the whole Laurent
    // polynomial must terminate, not just its value at one radius.
    let session = session_at(root)?;
    if !session.delta_is_zero(n, 1e-6) {
        return Err(Error::NotConverging(format!(
            "delta_{n} vanishes at r0 = {r0} but not identically; \
             wrong iteration order or sampling artifact"
        )));
    }
    Ok(root)
}
