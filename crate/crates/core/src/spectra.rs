//! Eigenvalue equations and closed-form wavefunctions.
//!
//! Coulomb couplings admit the full discrete spectrum in closed form. Equal
//! scalar/vector Kratzer couplings reduce to a transcendental eigenvalue
//! equation solved by bracketing. Unequal Kratzer couplings admit exact
//! solutions only on a constraint manifold of the potential parameters; the
//! solvers here return the root of the printed eigenvalue equations together
//! with the residuals of the full constraint set, so callers can tell an
//! exact solution (all residuals at roundoff) from an off-manifold root.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::model::{coulomb_exponent, equal_kratzer_exponent, PotentialParams, ProblemSpec};
use crate::root;
use crate::specfun::{normalization_bessel, normalization_coulomb, normalization_poly, KummerPoly};

/// Closed-form family a bound state belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveFamily {
    /// u = N r^c e^{br} ₁F₁(−n; 2c; −2br), Coulomb couplings
    Coulomb1F1,
    /// same shape with the equal-Kratzer exponent
    Kratzer1F1,
    /// u = C r^c e^{br + a/r}, nodeless
    NodelessBessel,
    /// u = C P(r) r^c e^{br + a/r} with a monic polynomial factor
    MonicPoly,
}

/// A bound state with an evaluable closed-form wavefunction
/// u(r) = norm · P(r) · r^c · exp(b r + a/r).
#[derive(Clone, Debug)]
pub struct BoundState {
    pub n: u32,
    pub energy: f64,
    pub c: f64,
    /// 1/r decay constant, ≤ 0 (zero for pure-Coulomb tails)
    pub a: f64,
    /// exponential decay constant −√(M²−E²) < 0
    pub b: f64,
    pub family: WaveFamily,
    /// ascending coefficients of the polynomial factor P (constant 1 for
    /// nodeless families)
    pub poly: Vec<f64>,
    /// real roots of P, the node candidates
    pub poly_roots: Vec<f64>,
    pub norm: f64,
}

impl BoundState {
    /// Wavefunction value; the positive part is assembled in log space so
    /// large exponents do not overflow.
    pub fn eval(&self, r: f64) -> f64 {
        if !(r > 0.0) {
            return 0.0;
        }
        let p: f64 = self.poly.iter().rev().fold(0.0, |acc, &c| acc * r + c);
        let log_mag = self.norm.ln() + self.c * r.ln() + self.b * r + self.a / r;
        p * log_mag.exp()
    }

    /// Number of nodes on (0, ∞): polynomial roots on the positive real axis.
    pub fn node_count(&self) -> usize {
        self.poly_roots.iter().filter(|&&r| r > 0.0).count()
    }

    pub fn is_nodeless(&self) -> bool {
        self.node_count() == 0
    }
}

/// Sign choice in the quadratic-formula energies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Residuals of the three simultaneous constraints that an exact
/// unequal-Kratzer solution must satisfy (reported in natural units):
/// the 1/r quantization defect, the 1/r² condition defect, and the 1/r³
/// coefficient that the exponent choice is supposed to cancel.
#[derive(Clone, Copy, Debug)]
pub struct ConsistencyDefects {
    pub quantization: f64,
    pub g_condition: f64,
    pub cubic_term: f64,
}

impl ConsistencyDefects {
    pub fn max_abs(&self) -> f64 {
        self.quantization
            .abs()
            .max(self.g_condition.abs())
            .max(self.cubic_term.abs())
    }
}

fn bound_x(mass: f64, energy: f64) -> f64 {
    (mass * mass - energy * energy).sqrt()
}

// ---------------------------------------------------------------------------
// Coulomb couplings
// ---------------------------------------------------------------------------

/// Closed-form Coulomb energy for quantum number n and the requested sign
/// branch:
///
///   E = M( −sv/(β²+v²) ± β√(β²+v²−s²)/(β²+v²) ),   β = n + c.
///
/// A branch is accepted only if |E| < M and the unsquared eigenvalue
/// relation (Ms+Ev)/√(M²−E²) = β holds with its positive right side;
/// otherwise the squaring introduced it and it is reported as spurious.
pub fn coulomb_energy(spec: &ProblemSpec, s: f64, v: f64, n: u32, branch: Branch) -> Result<f64> {
    let c = coulomb_exponent(spec, s, v)?;
    let beta = n as f64 + c;
    let disc = beta * beta + v * v - s * s;
    if disc < 0.0 {
        return Err(Error::NoBoundState(format!(
            "no real energy: beta^2 + v^2 - s^2 = {disc} < 0"
        )));
    }
    let m = spec.mass;
    let denom = beta * beta + v * v;
    let sign = match branch {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    let energy = m * (-s * v / denom + sign * beta * disc.sqrt() / denom);
    if energy.abs() >= m {
        return Err(Error::SpuriousBranch);
    }
    let lhs = (m * s + energy * v) / bound_x(m, energy);
    if (lhs - beta).abs() > 1e-9 * beta.max(1.0) {
        return Err(Error::SpuriousBranch);
    }
    Ok(energy)
}

/// Every valid Coulomb energy at quantum number n (both branches can be
/// genuine, e.g. the charge-symmetric ±E pairs of pure scalar coupling).
/// Returned in descending order.
pub fn coulomb_energies(spec: &ProblemSpec, s: f64, v: f64, n: u32) -> Vec<f64> {
    let mut out: Vec<f64> = [Branch::Plus, Branch::Minus]
        .into_iter()
        .filter_map(|br| coulomb_energy(spec, s, v, n, br).ok())
        .collect();
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * spec.mass);
    out
}

/// Normalized Coulomb eigenfunction at a previously computed energy.
pub fn coulomb_wavefunction(
    spec: &ProblemSpec,
    s: f64,
    v: f64,
    n: u32,
    energy: f64,
) -> Result<BoundState> {
    let c = coulomb_exponent(spec, s, v)?;
    kummer_family_state(spec, c, n, energy, WaveFamily::Coulomb1F1)
}

fn kummer_family_state(
    spec: &ProblemSpec,
    c: f64,
    n: u32,
    energy: f64,
    family: WaveFamily,
) -> Result<BoundState> {
    if energy.abs() >= spec.mass {
        return Err(Error::NotBoundState);
    }
    let x = bound_x(spec.mass, energy);
    let kummer = KummerPoly::new(n, 2.0 * c)?;
    // expand 1F1(−n; 2c; 2xr) as a polynomial in r
    let mut poly = Vec::with_capacity(n as usize + 1);
    let mut scale = 1.0;
    for &coef in kummer.coefficients() {
        poly.push(coef * scale);
        scale *= 2.0 * x;
    }
    let poly_roots = root::poly_real_roots(&poly);
    let norm = normalization_coulomb(c, n, spec.mass, energy)?;
    Ok(BoundState {
        n,
        energy,
        c,
        a: 0.0,
        b: -x,
        family,
        poly,
        poly_roots,
        norm,
    })
}

// ---------------------------------------------------------------------------
// Equal scalar and vector Kratzer couplings
// ---------------------------------------------------------------------------

/// Transcendental eigenvalue relation for equal couplings
/// (−B/r + A/r² in both channels):
///
///   2B(M+E)/√(M²−E²) = 2n + 1 + √((k−2)² + 8A(M+E)),
///
/// solved by scanning (−M, M) and bisecting to 10⁻¹² in E. Intervals where
/// the discriminant goes negative are excluded from the scan.
pub fn equal_kratzer_energy(spec: &ProblemSpec, a_kratzer: f64, b_kratzer: f64, n: u32) -> Result<f64> {
    if !(b_kratzer > 0.0) {
        return Err(Error::NoBoundState(
            "binding requires a positive Coulombic strength B".into(),
        ));
    }
    let m = spec.mass;
    let k = spec.k();
    let h = |e: f64| {
        let me = m + e;
        let disc = (k - 2.0) * (k - 2.0) + 8.0 * a_kratzer * me;
        if disc < 0.0 {
            return f64::NAN;
        }
        2.0 * b_kratzer * me / bound_x(m, e) - (2.0 * n as f64 + 1.0 + disc.sqrt())
    };
    let eps = 1e-6 * m;
    let roots = root::find_roots(&h, -m + eps, m - eps, 2000, 1e-13 * m);
    roots
        .first()
        .copied()
        .ok_or_else(|| Error::NoBoundState(format!("no root in (-M, M) at n = {n}")))
}

/// Leading non-relativistic energy E' = E − M from the small-binding
/// expansion of the equal-coupling eigenvalue relation:
///
///   E' = −8MB² / (2n + 1 + √((k−2)² + 16AM))².
pub fn equal_kratzer_nonrel(spec: &ProblemSpec, a_kratzer: f64, b_kratzer: f64, n: u32) -> Result<f64> {
    let m = spec.mass;
    let k = spec.k();
    let disc = (k - 2.0) * (k - 2.0) + 16.0 * a_kratzer * m;
    if disc < 0.0 {
        return Err(Error::Domain(format!(
            "non-relativistic discriminant {disc} < 0"
        )));
    }
    let denom = 2.0 * n as f64 + 1.0 + disc.sqrt();
    Ok(-8.0 * m * b_kratzer * b_kratzer / (denom * denom))
}

/// Normalized equal-Kratzer eigenfunction at a previously computed energy.
pub fn equal_kratzer_wavefunction(
    spec: &ProblemSpec,
    a_kratzer: f64,
    _b_kratzer: f64,
    n: u32,
    energy: f64,
) -> Result<BoundState> {
    let c = equal_kratzer_exponent(spec, a_kratzer, energy)?;
    kummer_family_state(spec, c, n, energy, WaveFamily::Kratzer1F1)
}

// ---------------------------------------------------------------------------
// Unequal Kratzer couplings
// ---------------------------------------------------------------------------

struct UnequalFrame {
    a_excess: f64, // √(s2²−v2²) > 0
    q_mix: f64,    // v1 v2 − s1 s2
}

fn unequal_frame(params: &PotentialParams) -> Result<UnequalFrame> {
    let a_excess = params.scalar_excess().ok_or(Error::NoRegularization)?;
    Ok(UnequalFrame {
        a_excess,
        q_mix: params.v1 * params.v2 - params.s1 * params.s2,
    })
}

fn w_prime(spec: &ProblemSpec, params: &PotentialParams, energy: f64) -> f64 {
    2.0 * (spec.mass * params.s2 + energy * params.v2) + params.s1 * params.s1
        - params.v1 * params.v1
        + spec.centrifugal()
}

fn coupling_p(spec: &ProblemSpec, params: &PotentialParams, energy: f64) -> f64 {
    spec.mass * params.s1 + energy * params.v1
}

/// The three constraint residuals at exponent c and energy E:
/// quantization 2cb + 2(Ms₁+Ev₁) shifted by the target level, the 1/r²
/// condition with the exact product ab = √(s₂²−v₂²)·√(M²−E²), and the 1/r³
/// coefficient left over after the exponent choice.
fn constraint_defects(
    spec: &ProblemSpec,
    params: &PotentialParams,
    energy: f64,
    c: f64,
    level: f64,
) -> Result<ConsistencyDefects> {
    let frame = unequal_frame(params)?;
    let x = bound_x(spec.mass, energy);
    let ab = frame.a_excess * x;
    let p = coupling_p(spec, params, energy);
    Ok(ConsistencyDefects {
        quantization: c + level - p / x,
        g_condition: w_prime(spec, params, energy) - c * c + c + 2.0 * ab,
        cubic_term: 2.0 * frame.q_mix + 2.0 * frame.a_excess - 2.0 * c * frame.a_excess,
    })
}

/// Ground-state solution of the unequal-Kratzer eigenvalue equation
///
///   (Ms₁+Ev₁)/√(M²−E²) = 1/2 + √((k/2−1)² + 2(Ms₁+Ev₁)√(s₂²−v₂²)
///                         − 2(v₁v₂−s₁s₂)√(M²−E²) + 2(Ms₂+Ev₂) + s₁²−v₁²),
///
/// with exponent c = (Ms₁+Ev₁)/√(M²−E²) and wavefunction C₀ r^c e^{br+a/r}.
///
/// The returned defects vanish (to roundoff) exactly when the parameters lie
/// on the constraint manifold; off it the root is the stationary value of
/// the printed equation but not an exact eigenvalue.
pub struct GroundSolution {
    pub state: BoundState,
    pub defects: ConsistencyDefects,
}

pub fn unequal_ground_solve(spec: &ProblemSpec, params: &PotentialParams) -> Result<GroundSolution> {
    let frame = unequal_frame(params)?;
    let m = spec.mass;
    let half = spec.k() / 2.0 - 1.0;
    let f = |e: f64| {
        let x = bound_x(m, e);
        let p = coupling_p(spec, params, e);
        let w = 2.0 * (m * params.s2 + e * params.v2) + params.s1 * params.s1
            - params.v1 * params.v1;
        let rad = half * half + 2.0 * p * frame.a_excess - 2.0 * frame.q_mix * x + w;
        if rad < 0.0 {
            return f64::NAN;
        }
        p / x - (0.5 + rad.sqrt())
    };
    let eps = 1e-6 * m;
    let roots = root::find_roots(&f, -m + eps, m - eps, 2000, 1e-13 * m);
    if roots.is_empty() {
        return Err(Error::NoSolution(
            "ground-state eigenvalue equation has no root in (-M, M)".into(),
        ));
    }
    let mut best: Option<(f64, f64, ConsistencyDefects)> = None;
    let mut irregular_c = None;
    for e in roots {
        let c = coupling_p(spec, params, e) / bound_x(m, e);
        if c <= 0.0 {
            irregular_c = Some(c);
            continue;
        }
        let defects = constraint_defects(spec, params, e, c, 0.0)?;
        if best
            .as_ref()
            .map(|(_, _, d)| defects.max_abs() < d.max_abs())
            .unwrap_or(true)
        {
            best = Some((e, c, defects));
        }
    }
    let (energy, c, defects) = best.ok_or(Error::IrregularSolution {
        c: irregular_c.unwrap_or(0.0),
    })?;
    let x = bound_x(m, energy);
    let (a, b) = (-frame.a_excess, -x);
    let norm = normalization_poly(&[1.0], c, a, b)?;
    Ok(GroundSolution {
        state: BoundState {
            n: 0,
            energy,
            c,
            a,
            b,
            family: WaveFamily::NodelessBessel,
            poly: vec![1.0],
            poly_roots: Vec::new(),
            norm,
        },
        defects,
    })
}

/// A nodeless exact solution with completed potential parameters.
pub struct NodelessSolution {
    pub params: PotentialParams,
    pub state: BoundState,
    pub defects: ConsistencyDefects,
}

/// Solves the three simultaneous constraints for a nodeless state
/// u_n = C_n r^n e^{br+a/r} at iteration number n ≥ 1, given the
/// inverse-square strengths (s₂, v₂) with s₂² > v₂².
///
/// The 1/r³ constraint is linear in (s₁, v₁) and fixes one direction —
/// for n = 1 it forces v₁v₂ = s₁s₂ — and the remaining two constraints are
/// solved for the free strength and the energy by damped Newton iteration
/// from a grid of starting points. Among the solutions the one with an
/// attractive scalar tail (s₁ > 0) and smallest |E| is returned.
pub fn unequal_constraint_solve(
    spec: &ProblemSpec,
    s2: f64,
    v2: f64,
    n: u32,
) -> Result<NodelessSolution> {
    if n < 1 {
        return Err(Error::Domain("nodeless construction needs n >= 1".into()));
    }
    let d2 = s2 * s2 - v2 * v2;
    if d2 <= 0.0 {
        return Err(Error::NoRegularization);
    }
    let a_excess = d2.sqrt();
    let m = spec.mass;
    let nf = n as f64;

    // third constraint: v1 v2 − s1 s2 = a_excess (n − 1), an affine line
    let line = |t: f64| -> (f64, f64) {
        if v2 != 0.0 {
            (t, (a_excess * (nf - 1.0) + t * s2) / v2)
        } else {
            (-a_excess * (nf - 1.0) / s2, t)
        }
    };
    let residuals = |p: [f64; 2]| -> [f64; 2] {
        let (t, e) = (p[0], p[1]);
        if e.abs() >= m {
            return [f64::NAN, f64::NAN];
        }
        let (s1, v1) = line(t);
        let x = bound_x(m, e);
        let r1 = m * s1 + e * v1 - nf * x;
        let r2 = nf * (nf - 1.0)
            - (2.0 * (m * s2 + e * v2) + s1 * s1 - v1 * v1 + spec.centrifugal()
                + 2.0 * a_excess * x);
        [r1, r2]
    };

    let t_grid = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, -0.5, -1.0];
    let e_grid = [-0.9, -0.6, -0.3, -0.05, 0.05, 0.3, 0.6, 0.9];
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    let mut singular_only = true;
    for &t0 in &t_grid {
        for &e0 in &e_grid {
            match root::newton2(&residuals, [t0, e0 * m], [1.0, m], 1e-12) {
                Ok([t, e]) => {
                    singular_only = false;
                    if e.abs() < m
                        && !candidates
                            .iter()
                            .any(|&(tc, ec)| (tc - t).abs() < 1e-7 && (ec - e).abs() < 1e-7)
                    {
                        candidates.push((t, e));
                    }
                }
                Err(Error::SingularJacobian) => {}
                Err(_) => singular_only = false,
            }
        }
    }
    if candidates.is_empty() {
        return Err(if singular_only {
            Error::SingularJacobian
        } else {
            Error::NoBoundState("no solution of the constraint system in the search region".into())
        });
    }
    candidates.sort_by(|l, r| {
        let (s1_l, _) = line(l.0);
        let (s1_r, _) = line(r.0);
        (s1_r > 0.0)
            .cmp(&(s1_l > 0.0))
            .then(l.1.abs().partial_cmp(&r.1.abs()).unwrap())
    });
    let (t, energy) = candidates[0];
    let (s1, v1) = line(t);
    let params = PotentialParams { s1, v1, s2, v2 };
    let defects = constraint_defects(spec, &params, energy, nf, 0.0)?;
    let x = bound_x(m, energy);
    let norm = normalization_bessel(n, m, energy, s2, v2)?;
    Ok(NodelessSolution {
        params,
        state: BoundState {
            n,
            energy,
            c: nf,
            a: -a_excess,
            b: -x,
            family: WaveFamily::NodelessBessel,
            poly: vec![1.0],
            poly_roots: Vec::new(),
            norm,
        },
        defects,
    })
}

/// An excited-family solution with the condition value G it was built from.
pub struct ExcitedSolution {
    pub state: BoundState,
    pub g: f64,
    pub defects: ConsistencyDefects,
}

/// First excited condition: eliminates the exponent through
/// √(c²+4ab) = μ − c² with μ = 2(Ms₂+Ev₂)+s₁²−v₁²+(k−1)(k−3)/4+2ab and
/// ab = ½(Ms₁+Ev₁)√(s₂²−v₂²) − ½(v₁v₂−s₁s₂)√(M²−E²), and solves
///
///   (Ms₁+Ev₁)/√(M²−E²) = ½√(2+4μ−2√(4μ+1+16ab)) + 1
///
/// for E on the G > 0 branch G = c + √(c²+4ab). Squaring the eliminated
/// relation produces two c² roots; only the smaller one is compatible with
/// μ ≥ c² and hence with G > 0 (the larger root always lands on G < 0 when
/// ab > 0), so that is the one solved here. The wavefunction factor is
/// r − 2a/G, giving one node when 2a/G > 0.
pub fn g1_excited_solve(spec: &ProblemSpec, params: &PotentialParams) -> Result<ExcitedSolution> {
    let frame = unequal_frame(params)?;
    let m = spec.mass;
    let ab_of = |e: f64| {
        let x = bound_x(m, e);
        0.5 * (coupling_p(spec, params, e) * frame.a_excess - frame.q_mix * x)
    };
    let c_of = |e: f64| {
        let ab = ab_of(e);
        let mu = w_prime(spec, params, e) + 2.0 * ab;
        let inner = 4.0 * mu + 1.0 + 16.0 * ab;
        if inner < 0.0 {
            return f64::NAN;
        }
        let rad = 2.0 + 4.0 * mu - 2.0 * inner.sqrt();
        if rad < 0.0 {
            return f64::NAN;
        }
        0.5 * rad.sqrt()
    };
    let f = |e: f64| {
        let c = c_of(e);
        coupling_p(spec, params, e) / bound_x(m, e) - (c + 1.0)
    };
    let eps = 1e-6 * m;
    let roots = root::find_roots(&f, -m + eps, m - eps, 2000, 1e-13 * m);
    if roots.is_empty() {
        // distinguish "everywhere complex" from "defined but rootless"
        let any_defined = (1..2000).any(|i| {
            let e = -m + eps + (2.0 * (m - eps)) * i as f64 / 2000.0;
            c_of(e).is_finite()
        });
        return Err(if any_defined {
            Error::NoSolution("first-excited eigenvalue equation has no root".into())
        } else {
            Error::ComplexBranch(-1.0)
        });
    }
    let mut best: Option<(f64, f64, ConsistencyDefects)> = None;
    let mut irregular_c = None;
    for e in roots {
        let c = coupling_p(spec, params, e) / bound_x(m, e) - 1.0;
        if c <= 0.0 {
            irregular_c = Some(c);
            continue;
        }
        let defects = excited_defects(spec, params, e, c, 1)?;
        if best
            .as_ref()
            .map(|(_, _, d)| defects.max_abs() < d.max_abs())
            .unwrap_or(true)
        {
            best = Some((e, c, defects));
        }
    }
    let (energy, c, defects) = best.ok_or(Error::IrregularSolution {
        c: irregular_c.unwrap_or(0.0),
    })?;
    let ab = ab_of(energy);
    let disc = c * c + 4.0 * ab;
    if disc < 0.0 {
        return Err(Error::ComplexBranch(disc));
    }
    let g = c + disc.sqrt();
    let x = bound_x(m, energy);
    let (a, b) = (-frame.a_excess, -x);
    let node = 2.0 * a / g;
    let poly = vec![-node, 1.0];
    let norm = normalization_poly(&poly, c, a, b)?;
    Ok(ExcitedSolution {
        state: BoundState {
            n: 1,
            energy,
            c,
            a,
            b,
            family: WaveFamily::MonicPoly,
            poly,
            poly_roots: vec![node],
            norm,
        },
        g,
        defects,
    })
}

/// Defects of an excited candidate against the exact constraint set:
/// quantization c + n = P/x, the degree-n condition polynomial at the exact
/// product ab = √(s₂²−v₂²)√(M²−E²), and the leftover 1/r³ coefficient.
fn excited_defects(
    spec: &ProblemSpec,
    params: &PotentialParams,
    energy: f64,
    c: f64,
    n: u32,
) -> Result<ConsistencyDefects> {
    let frame = unequal_frame(params)?;
    let x = bound_x(spec.mass, energy);
    let ab = frame.a_excess * x;
    let g_true = w_prime(spec, params, energy) - c * c + c + 2.0 * ab;
    let gn = match n {
        1 => g_true * g_true - 2.0 * c * g_true - 4.0 * ab,
        2 => {
            g_true.powi(3) - 2.0 * (3.0 * c + 1.0) * g_true * g_true
                + 4.0 * (2.0 * c * c + c - 4.0 * ab) * g_true
                + 16.0 * ab * (2.0 * c + 1.0)
        }
        _ => f64::NAN,
    };
    Ok(ConsistencyDefects {
        quantization: c + n as f64 - coupling_p(spec, params, energy) / x,
        g_condition: gn,
        cubic_term: 2.0 * frame.q_mix + 2.0 * frame.a_excess - 2.0 * c * frame.a_excess,
    })
}

/// Second excited condition: with c = (Ms₁+Ev₁)/√(M²−E²) − 2 and
/// ab = ⅓(Ms₁+Ev₁)√(s₂²−v₂²) − ⅓(v₁v₂−s₁s₂)√(M²−E²), solves the cubic
/// condition
///
///   G³ − 2(3c+1)G² + 4(2c²+c−4ab)G + 16ab(2c+1) = 0
///
/// as a function of E, where G carries the c² and ab substitutions. The
/// two-root polynomial factor is reconstructed from its root sum and product
/// so complex-conjugate pairs stay representable.
pub fn g2_excited_solve(spec: &ProblemSpec, params: &PotentialParams) -> Result<ExcitedSolution> {
    let frame = unequal_frame(params)?;
    let m = spec.mass;
    let ab_of = |e: f64| {
        let x = bound_x(m, e);
        (coupling_p(spec, params, e) * frame.a_excess - frame.q_mix * x) / 3.0
    };
    let cg_of = |e: f64| {
        let x = bound_x(m, e);
        let c = coupling_p(spec, params, e) / x - 2.0;
        let g = w_prime(spec, params, e) - c * c + c + 2.0 * ab_of(e);
        (c, g)
    };
    let f = |e: f64| {
        let (c, g) = cg_of(e);
        let ab = ab_of(e);
        g.powi(3) - 2.0 * (3.0 * c + 1.0) * g * g + 4.0 * (2.0 * c * c + c - 4.0 * ab) * g
            + 16.0 * ab * (2.0 * c + 1.0)
    };
    let eps = 1e-6 * m;
    let roots = root::find_roots(&f, -m + eps, m - eps, 4000, 1e-13 * m);
    if roots.is_empty() {
        return Err(Error::NoSolution(
            "second-excited condition has no root in (-M, M)".into(),
        ));
    }
    let mut best: Option<(f64, f64, f64, ConsistencyDefects)> = None;
    let mut irregular_c = None;
    for e in roots {
        let (c, g) = cg_of(e);
        if c <= 0.0 {
            irregular_c = Some(c);
            continue;
        }
        let defects = excited_defects(spec, params, e, c, 2)?;
        if best
            .as_ref()
            .map(|(_, _, _, d)| defects.max_abs() < d.max_abs())
            .unwrap_or(true)
        {
            best = Some((e, c, g, defects));
        }
    }
    let (energy, c, g, defects) = best.ok_or(Error::IrregularSolution {
        c: irregular_c.unwrap_or(0.0),
    })?;
    let x = bound_x(m, energy);
    let (a, b) = (-frame.a_excess, -x);
    let ab = ab_of(energy);
    // factor roots: (G−4c−2)/(4b) ± √(16ab+8c+4+4cG−G²)/(4b)
    let mid = (g - 4.0 * c - 2.0) / (4.0 * b);
    let disc = 16.0 * ab + 8.0 * c + 4.0 + 4.0 * c * g - g * g;
    let sum = 2.0 * mid;
    let prod = mid * mid - disc / (16.0 * b * b);
    let poly = vec![prod, -sum, 1.0];
    let poly_roots = if disc >= 0.0 {
        let half = disc.sqrt() / (4.0 * b);
        vec![mid + half, mid - half]
    } else {
        Vec::new()
    };
    let norm = normalization_poly(&poly, c, a, b)?;
    Ok(ExcitedSolution {
        state: BoundState {
            n: 2,
            energy,
            c,
            a,
            b,
            family: WaveFamily::MonicPoly,
            poly,
            poly_roots,
            norm,
        },
        g,
        defects,
    })
}

// ---------------------------------------------------------------------------
// Monic polynomial factors for general n
// ---------------------------------------------------------------------------

/// One solution of the monic linear system at a real root G of the condition
/// polynomial.
#[derive(Clone, Debug)]
pub struct MonicSystem {
    pub n: u32,
    pub a_decay: f64,
    pub b_decay: f64,
    pub c_exp: f64,
    pub g: f64,
    /// ascending coefficients a₀..a_n with a_n = 1
    pub coefficients: Vec<f64>,
    /// real roots σ of the monic factor (node candidates)
    pub real_roots: Vec<f64>,
}

/// Result of the banded elimination: the degree-(n+1) condition polynomial
/// in G (ascending, monic) and the coefficient solutions at each real root.
#[derive(Clone, Debug)]
pub struct MonicSolve {
    pub condition: Vec<f64>,
    pub solutions: Vec<MonicSystem>,
}

/// Builds the banded linear system on the coefficients of a degree-n monic
/// polynomial factor f(r) = Σ a_k r^k of the factorized equation, eliminates
/// it, and returns the scalar solvability condition on G together with the
/// back-substituted coefficient vectors at each real root.
///
/// With the quantization value F = 2nb substituted, the relations are
///
///   G a₀ + 2a a₁ = 0,
///   4a a₂ + (G − 2c) a₁ + 2nb a₀ = 0,
///   [n(n−1) + 2cn − G] a_n = 2b a_{n−1},
///   2a(k+3) a_{k+3} + (G − 2c(k+2) − (k+1)(k+2)) a_{k+2} + 2b(n−k−1) a_{k+1} = 0,
///
/// the last for 0 ≤ k ≤ n−3. Every elimination pivot is a nonzero multiple
/// of b < 0, so the elimination cannot hit a zero pivot in this
/// parametrization.
pub fn monic_solve(n: u32, a_decay: f64, b_decay: f64, c_exp: f64) -> Result<MonicSolve> {
    if n < 1 {
        return Err(Error::Domain("monic factor needs n >= 1".into()));
    }
    if !(b_decay < 0.0) {
        return Err(Error::Domain("decay constant b must be negative".into()));
    }
    if a_decay > 0.0 {
        return Err(Error::Domain("decay constant a must be nonpositive".into()));
    }
    let (a, b, c) = (a_decay, b_decay, c_exp);
    let nf = n as f64;
    let nn = n as usize;

    // coefficient polynomials in G, exponent = power of G
    let g_var = LaurentPoly::term(1, 1.0);
    let mut coef: Vec<LaurentPoly> = vec![LaurentPoly::zero(); nn + 1];
    coef[nn] = LaurentPoly::constant(1.0);
    coef[nn - 1] = (&LaurentPoly::constant(nf * (nf - 1.0) + 2.0 * c * nf) - &g_var).scale(1.0 / (2.0 * b));
    for k in (0..=nn.saturating_sub(3)).rev() {
        if nn < 3 || k > nn - 3 {
            continue;
        }
        let kf = k as f64;
        let shift = LaurentPoly::constant(-2.0 * c * (kf + 2.0) - (kf + 1.0) * (kf + 2.0));
        let gm = &(&g_var + &shift) * &coef[k + 2];
        let am = coef[k + 3].scale(2.0 * a * (kf + 3.0));
        coef[k + 1] = (&am + &gm).scale(-1.0 / (2.0 * b * (nf - kf - 1.0)));
    }
    let a2 = if nn >= 2 { coef[2].clone() } else { LaurentPoly::zero() };
    coef[0] = (&a2.scale(4.0 * a) + &(&(&g_var - &LaurentPoly::constant(2.0 * c)) * &coef[1]))
        .scale(-1.0 / (2.0 * nf * b));

    let raw = &(&g_var * &coef[0]) + &coef[1].scale(2.0 * a);
    let deg = raw.max_exp().unwrap_or(0).max(0) as usize;
    let lead = raw.coeff(deg as i64);
    if lead == 0.0 {
        return Err(Error::Domain("condition polynomial degenerated".into()));
    }
    let condition: Vec<f64> = (0..=deg).map(|i| raw.coeff(i as i64) / lead).collect();

    let g_roots = root::poly_real_roots(&condition);
    let solutions = g_roots
        .into_iter()
        .map(|g| {
            let coefficients: Vec<f64> = coef.iter().map(|p| p.eval(g)).collect();
            let real_roots = root::poly_real_roots(&coefficients);
            MonicSystem {
                n,
                a_decay: a,
                b_decay: b,
                c_exp: c,
                g,
                coefficients,
                real_roots,
            }
        })
        .collect();
    Ok(MonicSolve {
        condition,
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(d: u32, l: u32) -> ProblemSpec {
        ProblemSpec::new(1.0, d, l).unwrap()
    }

    #[test]
    fn coulomb_equal_couplings_reference_energy() {
        let e = coulomb_energy(&spec(3, 0), 0.5, 0.5, 0, Branch::Plus).unwrap();
        assert_relative_eq!(e, 0.6, epsilon = 1e-14);
        // minus branch collapses onto E = -M and is spurious
        assert!(matches!(
            coulomb_energy(&spec(3, 0), 0.5, 0.5, 0, Branch::Minus),
            Err(Error::SpuriousBranch)
        ));
    }

    #[test]
    fn coulomb_pure_scalar_and_pure_vector_energies() {
        let e = coulomb_energy(&spec(3, 0), 0.5, 0.0, 0, Branch::Plus).unwrap();
        assert_relative_eq!(e, 0.910179721124454683, epsilon = 1e-13);
        // pure scalar spectrum is charge symmetric: minus branch is genuine
        let e_neg = coulomb_energy(&spec(3, 0), 0.5, 0.0, 0, Branch::Minus).unwrap();
        assert_relative_eq!(e_neg, -e, epsilon = 1e-14);
        // pure vector: minus branch has the wrong sign of E·v
        let e = coulomb_energy(&spec(3, 0), 0.0, 0.25, 0, Branch::Plus).unwrap();
        assert_relative_eq!(e, 0.965925826289068287, epsilon = 1e-13);
        assert!(coulomb_energy(&spec(3, 0), 0.0, 0.25, 0, Branch::Minus).is_err());
    }

    #[test]
    fn coulomb_branch_satisfies_unsquared_relation() {
        for &(s, v) in &[(0.5, 0.0), (0.0, 0.25), (0.5, 0.5), (0.6, 0.3)] {
            for n in 0..3 {
                for e in coulomb_energies(&spec(3, 0), s, v, n) {
                    let c = coulomb_exponent(&spec(3, 0), s, v).unwrap();
                    let lhs = (s + e * v) / (1.0 - e * e).sqrt();
                    assert_relative_eq!(lhs, n as f64 + c, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn coulomb_zero_energy_state_is_valid() {
        // k=2, s=v=0.5, n=0 sits exactly at E = 0
        let e = coulomb_energy(&spec(2, 0), 0.5, 0.5, 0, Branch::Plus).unwrap();
        assert_relative_eq!(e, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn coulomb_wavefunction_node_structure() {
        let s = spec(3, 0);
        let e0 = coulomb_energy(&s, 0.5, 0.0, 0, Branch::Plus).unwrap();
        let w0 = coulomb_wavefunction(&s, 0.5, 0.0, 0, e0).unwrap();
        assert_eq!(w0.node_count(), 0);
        assert!(w0.eval(1.0) > 0.0);

        let e1 = coulomb_energy(&s, 0.5, 0.0, 1, Branch::Plus).unwrap();
        let w1 = coulomb_wavefunction(&s, 0.5, 0.0, 1, e1).unwrap();
        assert_eq!(w1.node_count(), 1);
        // the single node sits at r = c/|b| (root of 1 − 2|b|r/(2c))
        let c = coulomb_exponent(&s, 0.5, 0.0).unwrap();
        assert_relative_eq!(w1.poly_roots[0], c / (-w1.b), max_relative = 1e-10);
    }

    #[test]
    fn equal_kratzer_reduces_to_coulomb_at_zero_inverse_square() {
        let e = equal_kratzer_energy(&spec(3, 0), 0.0, 0.5, 0).unwrap();
        assert_relative_eq!(e, 0.6, epsilon = 1e-11);
    }

    #[test]
    fn equal_kratzer_reference_value() {
        let e = equal_kratzer_energy(&spec(3, 0), 0.1, 0.5, 0).unwrap();
        assert_relative_eq!(e, 0.732451214398748276, epsilon = 1e-11);
    }

    #[test]
    fn equal_kratzer_rejects_zero_coupling() {
        assert!(matches!(
            equal_kratzer_energy(&spec(3, 0), 0.1, 0.0, 0),
            Err(Error::NoBoundState(_))
        ));
    }

    #[test]
    fn nonrel_limit_is_schroedinger_coulomb_series() {
        // A = 0, k = 3: E' = -2MB^2/(n+1)^2
        for n in 0..3u32 {
            let e = equal_kratzer_nonrel(&spec(3, 0), 0.0, 0.3, n).unwrap();
            assert_relative_eq!(e, -2.0 * 0.09 / ((n as f64 + 1.0) * (n as f64 + 1.0)), epsilon = 1e-13);
        }
        assert_eq!(equal_kratzer_nonrel(&spec(3, 0), 0.1, 0.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn ground_solve_returns_root_with_defects() {
        // generic parameters sit off the constraint manifold: the equation
        // root exists but the defects are order one
        let s = spec(3, 0);
        let p = PotentialParams::kratzer(1.0, 0.5, 0.5, 0.3);
        let sol = unequal_ground_solve(&s, &p).unwrap();
        assert!(sol.state.energy.abs() < 1.0);
        assert!(sol.state.c > 0.0);
        assert!(sol.state.is_nodeless());
        assert!(sol.defects.max_abs() > 1e-3, "off-manifold defects should be visible");
    }

    #[test]
    fn ground_solve_on_manifold_is_exact() {
        // parameters engineered so all three constraints hold at c = 1.6
        let s = spec(3, 0);
        let p = PotentialParams::kratzer(
            0.12301948474804031,
            1.0050324745800672,
            0.5,
            0.3,
        );
        let sol = unequal_ground_solve(&s, &p).unwrap();
        assert_relative_eq!(sol.state.energy, 0.81037059477229741, epsilon = 1e-10);
        assert_relative_eq!(sol.state.c, 1.6, epsilon = 1e-9);
        assert!(
            sol.defects.max_abs() < 1e-9,
            "on-manifold defects {:?}",
            sol.defects
        );
    }

    #[test]
    fn constraint_solve_reproduces_forced_ratio() {
        // n = 1 forces v1 v2 = s1 s2, here v1 = (5/3) s1
        let s = spec(3, 0);
        let sol = unequal_constraint_solve(&s, 0.5, 0.3, 1).unwrap();
        assert_relative_eq!(
            sol.params.v1 * sol.params.v2,
            sol.params.s1 * sol.params.s2,
            epsilon = 1e-10
        );
        assert_relative_eq!(sol.params.v1 / sol.params.s1, 5.0 / 3.0, epsilon = 1e-9);
        assert!(sol.state.energy.abs() < 0.01, "E in the near-zero region, got {}", sol.state.energy);
        assert!(sol.defects.max_abs() < 1e-10);
        // bound-state ordering: scalar dominates
        assert!(sol.params.s2 > sol.params.v2);
        assert!(sol.params.v1 > sol.params.s1);
        assert!(sol.state.is_nodeless());
    }

    #[test]
    fn constraint_solve_rejects_equal_inverse_square() {
        assert!(matches!(
            unequal_constraint_solve(&spec(3, 0), 0.3, 0.3, 1),
            Err(Error::NoRegularization)
        ));
    }

    #[test]
    fn g1_solver_finds_plus_branch_manifold_point() {
        // engineered so the quantization, exponent choice and first-excited
        // condition all hold at c = 0.6 with G on the plus branch
        let s = spec(3, 0);
        let p = PotentialParams::kratzer(
            0.991430003427265,
            1.119050005712108,
            0.5,
            0.3,
        );
        let sol = g1_excited_solve(&s, &p).unwrap();
        assert_relative_eq!(sol.state.energy, 0.414934282490015, epsilon = 1e-9);
        assert_relative_eq!(sol.state.c, 0.6, epsilon = 1e-8);
        assert_relative_eq!(sol.g, 1.947502213214459, epsilon = 1e-8);
        assert!(sol.defects.max_abs() < 1e-8, "defects {:?}", sol.defects);
        // node location 2a/G is negative here: nodeless density
        assert!(sol.state.poly_roots[0] < 0.0);
        assert!(sol.state.is_nodeless());
    }

    #[test]
    fn g2_solver_finds_manifold_point() {
        let s = spec(3, 0);
        let p = PotentialParams::kratzer(
            1.129595126291373,
            2.015991877152288,
            0.5,
            0.3,
        );
        let sol = g2_excited_solve(&s, &p).unwrap();
        assert_relative_eq!(sol.state.energy, 0.631713855620171, epsilon = 1e-9);
        assert_relative_eq!(sol.state.c, 1.1, epsilon = 1e-8);
        assert!(sol.defects.max_abs() < 1e-8, "defects {:?}", sol.defects);
    }

    #[test]
    fn monic_condition_polynomials_match_printed_forms() {
        let (a, b, c) = (-0.4, -0.6, 0.8);
        // n = 1: G² − 2cG − 4ab
        let m1 = monic_solve(1, a, b, c).unwrap();
        let expect1 = [-4.0 * a * b, -2.0 * c, 1.0];
        for (i, &e) in expect1.iter().enumerate() {
            assert_relative_eq!(m1.condition[i], e, max_relative = 1e-12, epsilon = 1e-12);
        }
        // n = 2: G³ − 2(3c+1)G² + 4(2c²+c−4ab)G + 16ab(2c+1)
        let m2 = monic_solve(2, a, b, c).unwrap();
        let ab = a * b;
        let expect2 = [
            16.0 * ab * (2.0 * c + 1.0),
            4.0 * (2.0 * c * c + c - 4.0 * ab),
            -2.0 * (3.0 * c + 1.0),
            1.0,
        ];
        for (i, &e) in expect2.iter().enumerate() {
            assert_relative_eq!(m2.condition[i], e, max_relative = 1e-12, epsilon = 1e-12);
        }
        // n = 3: quartic, coefficient-wise
        let m3 = monic_solve(3, a, b, c).unwrap();
        let expect3 = [
            -144.0 * ab + 144.0 * ab * ab - 432.0 * c * ab - 288.0 * c * c * ab,
            192.0 * ab - 72.0 * c * c + 240.0 * c * ab - 24.0 * c - 48.0 * c * c * c,
            4.0 * (11.0 * c * c + 3.0 + 13.0 * c - 10.0 * ab),
            -4.0 * (3.0 * c + 2.0),
            1.0,
        ];
        for (i, &e) in expect3.iter().enumerate() {
            assert_relative_eq!(m3.condition[i], e, max_relative = 1e-11, epsilon = 1e-11);
        }
    }

    #[test]
    fn monic_solutions_satisfy_linear_relations() {
        let (a, b, c) = (-0.4, -0.6, 0.8);
        let m = monic_solve(2, a, b, c).unwrap();
        assert!(!m.solutions.is_empty());
        for sol in &m.solutions {
            let g = sol.g;
            let co = &sol.coefficients;
            assert_relative_eq!(co[2], 1.0, epsilon = 1e-12);
            let scale = co.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            // G a0 + 2a a1 = 0
            assert!((g * co[0] + 2.0 * a * co[1]).abs() < 1e-9 * scale);
            // 4a a2 + (G − 2c) a1 + 2nb a0 = 0
            assert!((4.0 * a * co[2] + (g - 2.0 * c) * co[1] + 4.0 * b * co[0]).abs() < 1e-9 * scale);
            // [n(n−1) + 2cn − G] a_n = 2b a_{n−1}
            assert!(((2.0 + 4.0 * c - g) * co[2] - 2.0 * b * co[1]).abs() < 1e-9 * scale);
        }
    }

    #[test]
    fn monic_rejects_bad_decay_constants() {
        assert!(monic_solve(0, -0.1, -1.0, 1.0).is_err());
        assert!(monic_solve(1, -0.1, 0.5, 1.0).is_err());
        assert!(monic_solve(1, 0.3, -0.5, 1.0).is_err());
    }

    #[test]
    fn g2_factor_matches_monic_system() {
        // the printed two-root factor and the recurrence coefficients agree
        let s = spec(3, 0);
        let p = PotentialParams::kratzer(1.129595126291373, 2.015991877152288, 0.5, 0.3);
        let sol = g2_excited_solve(&s, &p).unwrap();
        let m = monic_solve(2, sol.state.a, sol.state.b, sol.state.c).unwrap();
        // find the G root matching the solver's condition value
        let sys = m
            .solutions
            .iter()
            .min_by(|l, r| {
                (l.g - sol.g)
                    .abs()
                    .partial_cmp(&(r.g - sol.g).abs())
                    .unwrap()
            })
            .unwrap();
        assert_relative_eq!(sys.g, sol.g, max_relative = 1e-7);
        for i in 0..3 {
            assert_relative_eq!(sys.coefficients[i], sol.state.poly[i], max_relative = 1e-6, epsilon = 1e-9);
        }
    }

    #[test]
    fn g2_condition_with_zero_ab_shares_g1_factors() {
        // ab = 0 degenerates the cubic into G(G−2c)(G−4c−2); the quadratic
        // condition's roots {0, 2c} are a subset
        let c = 0.9;
        let m2 = monic_solve(2, 0.0, -1.0, c).unwrap();
        let mut roots: Vec<f64> = m2.solutions.iter().map(|s| s.g).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(roots.len(), 3);
        assert_relative_eq!(roots[0], 0.0, epsilon = 1e-9);
        assert_relative_eq!(roots[1], 2.0 * c, epsilon = 1e-9);
        assert_relative_eq!(roots[2], 4.0 * c + 2.0, epsilon = 1e-9);
    }
}
