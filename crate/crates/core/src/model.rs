//! Radial problem construction.
//!
//! Builds the reduced radial equation
//!
//!   −u'' + [ C₁/r + C₂/r² + C₃/r³ + C₄/r⁴ ] u = (E² − M²) u
//!
//! for scalar S(r) = −s₁/r + s₂/r² and vector V(r) = −v₁/r + v₂/r² couplings
//! in d dimensions (k = d + 2l), together with the indicial exponents and the
//! factorized iteration inputs derived from the ansatz
//! u(r) = r^c exp(b r + a/r) f(r) with a = −√(s₂²−v₂²) ≤ 0 and
//! b = −√(M²−E²) ≤ 0.
//!
//! Spectra depend on (d, l) only through k, so (d, l+1) and (d+2, l) build
//! identical equations.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Mass, dimension and angular momentum of the radial problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemSpec {
    pub mass: f64,
    pub dim: u32,
    pub ang: u32,
}

impl ProblemSpec {
    pub fn new(mass: f64, dim: u32, ang: u32) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        if dim < 1 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Self { mass, dim, ang })
    }

    /// Combined dimension/angular parameter k = d + 2l.
    pub fn k(&self) -> f64 {
        (self.dim + 2 * self.ang) as f64
    }

    /// Centrifugal strength (k−1)(k−3)/4. Negative or zero for k ≤ 3, which
    /// is legitimate; only the indicial discriminant decides regularity.
    pub fn centrifugal(&self) -> f64 {
        let k = self.k();
        0.25 * (k - 1.0) * (k - 3.0)
    }
}

/// Kratzer coupling strengths; the Coulomb case is s₂ = v₂ = 0.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PotentialParams {
    pub s1: f64,
    pub v1: f64,
    pub s2: f64,
    pub v2: f64,
}

impl PotentialParams {
    pub fn coulomb(s: f64, v: f64) -> Self {
        Self {
            s1: s,
            v1: v,
            s2: 0.0,
            v2: 0.0,
        }
    }

    /// Equal scalar and vector Kratzer couplings: −B/r + A/r² in both
    /// channels.
    pub fn equal_kratzer(a: f64, b: f64) -> Self {
        Self {
            s1: b,
            v1: b,
            s2: a,
            v2: a,
        }
    }

    pub fn kratzer(s1: f64, v1: f64, s2: f64, v2: f64) -> Self {
        Self { s1, v1, s2, v2 }
    }

    /// √(s₂² − v₂²) when the scalar inverse-square part dominates.
    pub fn scalar_excess(&self) -> Option<f64> {
        let d = self.s2 * self.s2 - self.v2 * self.v2;
        (d > 0.0).then(|| d.sqrt())
    }
}

/// Coefficients of the reduced radial equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialEquation {
    /// coefficient of 1/r: −2(M s₁ + E v₁)
    pub inv_r: f64,
    /// coefficient of 1/r²: 2Ms₂ + s₁² + 2Ev₂ − v₁² + (k−1)(k−3)/4
    pub inv_r2: f64,
    /// coefficient of 1/r³: 2(v₁v₂ − s₁s₂)
    pub inv_r3: f64,
    /// coefficient of 1/r⁴: s₂² − v₂²
    pub inv_r4: f64,
    /// right-hand-side constant E² − M²
    pub rhs: f64,
}

impl RadialEquation {
    /// The potential-side sum C₁/r + ... + C₄/r⁴ at radius r.
    pub fn potential_at(&self, r: f64) -> f64 {
        let ir = 1.0 / r;
        (((self.inv_r4 * ir + self.inv_r3) * ir + self.inv_r2) * ir + self.inv_r) * ir
    }

    /// The u''-side coefficient Q(r) in u'' = Q(r) u.
    pub fn strength_at(&self, r: f64) -> f64 {
        self.potential_at(r) - self.rhs
    }
}

/// Builds the radial equation coefficients at trial energy E (|E| < M).
pub fn build_radial(spec: &ProblemSpec, params: &PotentialParams, energy: f64) -> Result<RadialEquation> {
    if energy.abs() >= spec.mass {
        return Err(Error::NotBoundState);
    }
    let m = spec.mass;
    let PotentialParams { s1, v1, s2, v2 } = *params;
    Ok(RadialEquation {
        inv_r: -2.0 * (m * s1 + energy * v1),
        inv_r2: 2.0 * m * s2 + s1 * s1 + 2.0 * energy * v2 - v1 * v1 + spec.centrifugal(),
        inv_r3: 2.0 * (v1 * v2 - s1 * s2),
        inv_r4: s2 * s2 - v2 * v2,
        rhs: energy * energy - m * m,
    })
}

/// Indicial exponent for Coulomb couplings:
/// c = 1/2 + √((k/2−1)² + s² − v²), the root that keeps r^c regular at the
/// origin.
pub fn coulomb_exponent(spec: &ProblemSpec, s: f64, v: f64) -> Result<f64> {
    let half = spec.k() / 2.0 - 1.0;
    let disc = half * half + s * s - v * v;
    if disc < 0.0 {
        return Err(Error::OvercriticalCoupling { discriminant: disc });
    }
    Ok(0.5 + disc.sqrt())
}

/// Indicial exponent for equal scalar/vector Kratzer couplings:
/// c = 1/2 + √((k/2−1)² + 2A(M+E)).
pub fn equal_kratzer_exponent(spec: &ProblemSpec, a_kratzer: f64, energy: f64) -> Result<f64> {
    let half = spec.k() / 2.0 - 1.0;
    let disc = half * half + 2.0 * a_kratzer * (spec.mass + energy);
    if disc < 0.0 {
        return Err(Error::OvercriticalCoupling { discriminant: disc });
    }
    Ok(0.5 + disc.sqrt())
}

/// Exponent choice that removes the 1/r³ term of the factorized equation for
/// unequal couplings: c = (v₁v₂ − s₁s₂)/√(s₂²−v₂²) + 1.
///
/// The value may come out nonpositive; callers that need a regular solution
/// must reject c ≤ 0 themselves.
pub fn unequal_exponent(params: &PotentialParams) -> Result<f64> {
    let a = params
        .scalar_excess()
        .ok_or(Error::NoRegularization)?;
    Ok((params.v1 * params.v2 - params.s1 * params.s2) / a + 1.0)
}

/// Exponent and decay constants of the factorization
/// u(r) = r^c exp(b r + a/r) f(r), with the sign convention a ≤ 0, b ≤ 0 so
/// that the product ab is nonnegative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorizationAnsatz {
    pub c: f64,
    pub a: f64,
    pub b: f64,
}

impl FactorizationAnsatz {
    pub fn new(c: f64, a: f64, b: f64) -> Result<Self> {
        if a > 0.0 || b > 0.0 {
            return Err(Error::Domain(
                "decay constants must satisfy a <= 0, b <= 0".into(),
            ));
        }
        Ok(Self { c, a, b })
    }

    /// From physical parameters: a = −√(s₂²−v₂²) (zero when v₂² ≥ s₂²
    /// is not allowed unless equal), b = −√(M²−E²).
    pub fn from_physical(c: f64, spec: &ProblemSpec, params: &PotentialParams, energy: f64) -> Result<Self> {
        if energy.abs() >= spec.mass {
            return Err(Error::NotBoundState);
        }
        let d2 = params.s2 * params.s2 - params.v2 * params.v2;
        let a = if d2 == 0.0 {
            0.0
        } else if d2 > 0.0 {
            -d2.sqrt()
        } else {
            return Err(Error::NoRegularization);
        };
        let b = -(spec.mass * spec.mass - energy * energy).sqrt();
        Self::new(c, a, b)
    }
}

/// Which factorized equation to hand to the iteration engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialCase {
    Coulomb,
    EqualKratzer,
    UnequalKratzer,
}

/// Iteration inputs (λ₀, s₀) of the factorized equation f'' = λ₀ f' + s₀ f.
///
/// Coulomb and equal-Kratzer cases share the shape
///   λ₀ = −2(c/r + b),   s₀ = (−2(M s₁ + E v₁) − 2cb)/r,
/// since M s₁ + E v₁ = B(M+E) when s₁ = v₁ = B. The unequal case carries an
/// extra −a/r² in λ₀ and a 1/r² term G in s₀:
///   G = 2(M s₂ + E v₂) + s₁² − v₁² + (k−1)(k−3)/4 − c² + c + 2ab.
pub fn build_aim_inputs(
    case: PotentialCase,
    spec: &ProblemSpec,
    params: &PotentialParams,
    energy: f64,
    c: f64,
) -> Result<(LaurentPoly, LaurentPoly)> {
    let ansatz = match case {
        PotentialCase::Coulomb | PotentialCase::EqualKratzer => FactorizationAnsatz::new(
            c,
            0.0,
            -(spec.mass * spec.mass - energy * energy).sqrt(),
        )?,
        PotentialCase::UnequalKratzer => FactorizationAnsatz::from_physical(c, spec, params, energy)?,
    };
    if energy.abs() >= spec.mass {
        return Err(Error::NotBoundState);
    }
    let f_coef = -2.0 * (spec.mass * params.s1 + energy * params.v1) - 2.0 * c * ansatz.b;
    match case {
        PotentialCase::Coulomb | PotentialCase::EqualKratzer => Ok(transformed_aim_inputs(
            c, 0.0, ansatz.b, f_coef, 0.0,
        )),
        PotentialCase::UnequalKratzer => {
            let g = g_coefficient(spec, params, energy, c)?;
            Ok(transformed_aim_inputs(c, ansatz.a, ansatz.b, f_coef, g))
        }
    }
}

/// The 1/r² coefficient G of the factorized unequal-Kratzer equation at the
/// exact decay constants a = −√(s₂²−v₂²), b = −√(M²−E²).
pub fn g_coefficient(spec: &ProblemSpec, params: &PotentialParams, energy: f64, c: f64) -> Result<f64> {
    let a = params.scalar_excess().ok_or(Error::NoRegularization)?;
    if energy.abs() >= spec.mass {
        return Err(Error::NotBoundState);
    }
    let x = (spec.mass * spec.mass - energy * energy).sqrt();
    let ab = a * x; // (−a)(−x)
    Ok(
        2.0 * (spec.mass * params.s2 + energy * params.v2) + params.s1 * params.s1
            - params.v1 * params.v1
            + spec.centrifugal()
            - c * c
            + c
            + 2.0 * ab,
    )
}

/// Raw builder for λ₀ = −2(c/r − a/r² + b) and s₀ = F/r + G/r² from the
/// exponent, decay constants, and the two coefficient strengths.
pub fn transformed_aim_inputs(c: f64, a: f64, b: f64, f_coef: f64, g_coef: f64) -> (LaurentPoly, LaurentPoly) {
    let lambda0 = LaurentPoly::from_terms([(-1, -2.0 * c), (-2, 2.0 * a), (0, -2.0 * b)]);
    let s0 = LaurentPoly::from_terms([(-1, f_coef), (-2, g_coef)]);
    (lambda0, s0)
}
