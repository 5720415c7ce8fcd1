//! Scalar shape functions with closed-form derivatives.
//!
//! One-dimensional profiles supply the envelopes `f`, `g` and the phase `h`
//! as functions of the comoving coordinate; two-dimensional profiles supply
//! the transverse distribution `p(x, y)`. Derivatives are hand-written so
//! potentials and fields built from them are exact; the verifier checks them
//! independently with finite differences.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Propagation direction in spherical angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid("theta", format!("{theta} not in [0, pi]")));
        }
        if !phi.is_finite() || !(0.0..TAU).contains(&phi) {
            return Err(Error::invalid("phi", format!("{phi} not in [0, 2pi)")));
        }
        Ok(Self { theta, phi })
    }

    /// +z axis.
    pub fn plus_z() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    /// −z axis.
    pub fn minus_z() -> Self {
        Self {
            theta: PI,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unit vector (sinθcosφ, sinθsinφ, cosθ).
    pub fn unit(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// (cos θ/2, sin θ/2).
    pub fn half_angle(&self) -> (f64, f64) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        (c, s)
    }
}

/// A spacetime point in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Event {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// The event moved by `d` along coordinate `axis` (0 = t, 1..=3 = x, y, z).
    pub fn shifted(&self, axis: usize, d: f64) -> Self {
        let mut c = self.coords();
        c[axis] += d;
        Self::from_coords(c)
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|v| v.is_finite())
    }
}

/// Comoving coordinate w = n·r − t.
pub fn w_coordinate(dir: &Direction, e: &Event) -> f64 {
    let n = dir.unit();
    n[0] * e.x + n[1] * e.y + n[2] * e.z - e.t
}

/// One Gaussian term A·exp(−k(w − w₀)²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    pub a: f64,
    pub k: f64,
    pub w0: f64,
}

impl GaussianTerm {
    fn eval(&self, w: f64) -> (f64, f64) {
        let d = w - self.w0;
        let v = self.a * (-self.k * d * d).exp();
        (v, -2.0 * self.k * d * v)
    }
}

/// Real profile of one variable: envelopes (`f`, `g`) and phases (`h`).
#[derive(Debug, Clone, PartialEq)]
pub enum Profile1D {
    Constant { value: f64 },
    Gaussian(GaussianTerm),
    /// B + A·exp(−k(w − w₀)²).
    OffsetGaussian { b: f64, term: GaussianTerm },
    SumOfGaussians(Vec<GaussianTerm>),
    /// √(π/λ)(E₀/2)·erf(√λ(w − w₀)); its derivative is E₀·exp(−λ(w − w₀)²).
    ErfChirp { e0: f64, lambda: f64, w0: f64 },
    /// E·w.
    LinearPhase { energy: f64 },
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be positive, got {v}")))
    }
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {v}")))
    }
}

impl Profile1D {
    pub fn gaussian(a: f64, k: f64, w0: f64) -> Self {
        Profile1D::Gaussian(GaussianTerm { a, k, w0 })
    }

    pub fn erf_chirp(e0: f64, lambda: f64, w0: f64) -> Self {
        Profile1D::ErfChirp { e0, lambda, w0 }
    }

    pub fn constant(value: f64) -> Self {
        Profile1D::Constant { value }
    }

    pub fn linear_phase(energy: f64) -> Self {
        Profile1D::LinearPhase { energy }
    }

    pub fn validate(&self) -> Result<()> {
        let term = |t: &GaussianTerm| -> Result<()> {
            finite("a", t.a)?;
            positive("k", t.k)?;
            finite("w0", t.w0)
        };
        match self {
            Profile1D::Constant { value } => finite("value", *value),
            Profile1D::Gaussian(t) => term(t),
            Profile1D::OffsetGaussian { b, term: t } => {
                finite("b", *b)?;
                term(t)
            }
            Profile1D::SumOfGaussians(ts) => {
                if ts.is_empty() {
                    return Err(Error::invalid("terms", "at least one Gaussian term"));
                }
                ts.iter().try_for_each(term)
            }
            Profile1D::ErfChirp { e0, lambda, w0 } => {
                positive("e0", *e0)?;
                positive("lambda", *lambda)?;
                finite("w0", *w0)
            }
            Profile1D::LinearPhase { energy } => finite("energy", *energy),
        }
    }

    /// Value and first derivative at `w`.
    pub fn eval(&self, w: f64) -> (f64, f64) {
        match self {
            Profile1D::Constant { value } => (*value, 0.0),
            Profile1D::Gaussian(t) => t.eval(w),
            Profile1D::OffsetGaussian { b, term } => {
                let (v, d) = term.eval(w);
                (b + v, d)
            }
            Profile1D::SumOfGaussians(ts) => ts.iter().fold((0.0, 0.0), |(v, d), t| {
                let (tv, td) = t.eval(w);
                (v + tv, d + td)
            }),
            Profile1D::ErfChirp { e0, lambda, w0 } => {
                let sl = lambda.sqrt();
                let d = w - w0;
                let v = (PI / lambda).sqrt() * 0.5 * e0 * libm::erf(sl * d);
                (v, e0 * (-lambda * d * d).exp())
            }
            Profile1D::LinearPhase { energy } => (energy * w, *energy),
        }
    }

    pub fn value(&self, w: f64) -> f64 {
        self.eval(w).0
    }

    pub fn derivative(&self, w: f64) -> f64 {
        self.eval(w).1
    }

    /// Whether the square of this profile is integrable over the real line.
    ///
    /// Non-normalizable envelopes (plane waves, offset Gaussians) are still
    /// valid inputs; callers surface this as a warning.
    pub fn is_normalizable(&self) -> bool {
        match self {
            Profile1D::Constant { value } => *value == 0.0,
            Profile1D::Gaussian(_) | Profile1D::SumOfGaussians(_) => true,
            Profile1D::OffsetGaussian { b, .. } => *b == 0.0,
            Profile1D::ErfChirp { .. } => false,
            Profile1D::LinearPhase { energy } => *energy == 0.0,
        }
    }

    /// Localization centre, when the profile has one.
    pub fn center(&self) -> Option<f64> {
        match self {
            Profile1D::Gaussian(t) | Profile1D::OffsetGaussian { term: t, .. } => Some(t.w0),
            Profile1D::SumOfGaussians(ts) => ts.first().map(|t| t.w0),
            Profile1D::ErfChirp { w0, .. } => Some(*w0),
            Profile1D::Constant { .. } | Profile1D::LinearPhase { .. } => None,
        }
    }

    /// Typical length over which the profile changes; sets FD test steps.
    pub fn scale(&self) -> f64 {
        match self {
            Profile1D::Gaussian(t) | Profile1D::OffsetGaussian { term: t, .. } => {
                1.0 / t.k.sqrt()
            }
            Profile1D::SumOfGaussians(ts) => ts
                .iter()
                .map(|t| 1.0 / t.k.sqrt())
                .fold(f64::INFINITY, f64::min),
            Profile1D::ErfChirp { lambda, .. } => 1.0 / lambda.sqrt(),
            Profile1D::Constant { .. } | Profile1D::LinearPhase { .. } => 1.0,
        }
    }
}

/// Value and partial derivatives of a transverse profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile2DValue {
    pub value: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dyy: f64,
}

/// p(x, y) = A·exp(−k₁(x − x₀)^{2n₁} − k₂(y − y₀)^{2n₂}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperGaussian {
    pub a: f64,
    pub x0: f64,
    pub y0: f64,
    pub k1: f64,
    pub k2: f64,
    pub n1: u32,
    pub n2: u32,
}

impl SuperGaussian {
    /// Centred Gaussian exp(−k₁x² − k₂y²) with unit amplitude.
    pub fn gaussian(k1: f64, k2: f64) -> Self {
        Self {
            a: 1.0,
            x0: 0.0,
            y0: 0.0,
            k1,
            k2,
            n1: 1,
            n2: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("a", self.a)?;
        finite("x0", self.x0)?;
        finite("y0", self.y0)?;
        positive("k1", self.k1)?;
        positive("k2", self.k2)?;
        if self.n1 == 0 {
            return Err(Error::invalid("n1", "must be a positive integer"));
        }
        if self.n2 == 0 {
            return Err(Error::invalid("n2", "must be a positive integer"));
        }
        Ok(())
    }

    /// Exponent derivatives of −k·u^{2n}: (first, second).
    fn exponent_partials(k: f64, n: u32, u: f64) -> (f64, f64) {
        let n = n as i32;
        let first = -2.0 * k * n as f64 * u.powi(2 * n - 1);
        let second = -2.0 * k * n as f64 * (2 * n - 1) as f64 * u.powi(2 * n - 2);
        (first, second)
    }

    pub fn eval(&self, x: f64, y: f64) -> Profile2DValue {
        let (u, v) = (x - self.x0, y - self.y0);
        let ex = -self.k1 * u.powi(2 * self.n1 as i32);
        let ey = -self.k2 * v.powi(2 * self.n2 as i32);
        let p = self.a * (ex + ey).exp();
        let (lx, lxx) = Self::exponent_partials(self.k1, self.n1, u);
        let (ly, lyy) = Self::exponent_partials(self.k2, self.n2, v);
        Profile2DValue {
            value: p,
            dx: lx * p,
            dy: ly * p,
            dxx: (lx * lx + lxx) * p,
            dyy: (ly * ly + lyy) * p,
        }
    }
}

/// Transverse distribution p(x, y).
#[derive(Debug, Clone, PartialEq)]
pub enum Profile2D {
    SuperGaussian(SuperGaussian),
    /// r₁ / base(x, y).
    Reciprocal { base: Box<Profile2D>, r1: f64 },
}

impl Profile2D {
    pub fn gaussian(k1: f64, k2: f64) -> Self {
        Profile2D::SuperGaussian(SuperGaussian::gaussian(k1, k2))
    }

    pub fn reciprocal(self, r1: f64) -> Self {
        Profile2D::Reciprocal {
            base: Box::new(self),
            r1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Profile2D::SuperGaussian(sg) => sg.validate(),
            Profile2D::Reciprocal { base, r1 } => {
                if !r1.is_finite() || *r1 == 0.0 {
                    return Err(Error::invalid("r1", format!("must be finite and nonzero, got {r1}")));
                }
                base.validate()
            }
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Profile2DValue {
        match self {
            Profile2D::SuperGaussian(sg) => sg.eval(x, y),
            Profile2D::Reciprocal { base, r1 } => {
                let b = base.eval(x, y);
                let p = b.value;
                let r = r1 / p;
                Profile2DValue {
                    value: r,
                    dx: -r * b.dx / p,
                    dy: -r * b.dy / p,
                    dxx: r * (2.0 * b.dx * b.dx / (p * p) - b.dxx / p),
                    dyy: r * (2.0 * b.dy * b.dy / (p * p) - b.dyy / p),
                }
            }
        }
    }

    /// Value at (x, y), failing when it is not strictly positive.
    pub fn eval_positive(&self, x: f64, y: f64) -> Result<Profile2DValue> {
        let v = self.eval(x, y);
        if v.value > 0.0 && v.value.is_finite() {
            Ok(v)
        } else {
            Err(Error::ProfileNonpositive {
                value: v.value,
                x,
                y,
            })
        }
    }

    /// Centre of the underlying super-Gaussian.
    pub fn center(&self) -> (f64, f64) {
        match self {
            Profile2D::SuperGaussian(sg) => (sg.x0, sg.y0),
            Profile2D::Reciprocal { base, .. } => base.center(),
        }
    }
}

const NORM_REL_TOL: f64 = 1e-8;
const NORM_MAX_NODES: usize = 1 << 22;

/// ∫ value(w)² dw over [lo, hi] by node-doubling quadrature.
///
/// Finite intervals use composite Simpson. Infinite bounds are mapped onto a
/// finite variable with w = u/(1 − u²) and integrated by the open midpoint
/// rule; a non-decaying integrand then never settles and is reported as
/// [`Error::NonConvergent`].
pub fn norm_integral(pr: &Profile1D, lo: f64, hi: f64, nodes: usize) -> Result<f64> {
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::invalid("lo", format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if nodes < 16 {
        return Err(Error::invalid("nodes", format!("need at least 16, got {nodes}")));
    }
    let sq = |w: f64| {
        let v = pr.value(w);
        v * v
    };
    if lo.is_finite() && hi.is_finite() {
        converge(nodes, |n| simpson(&sq, lo, hi, n))
    } else {
        let (ua, ub) = (
            if lo.is_finite() { inverse_map(lo) } else { -1.0 },
            if hi.is_finite() { inverse_map(hi) } else { 1.0 },
        );
        let mapped = |u: f64| {
            let d = 1.0 - u * u;
            let w = u / d;
            sq(w) * (1.0 + u * u) / (d * d)
        };
        converge(nodes, |n| midpoint(&mapped, ua, ub, n))
    }
}

fn inverse_map(w: f64) -> f64 {
    // solves w = u / (1 − u²) for u ∈ (−1, 1)
    if w == 0.0 {
        0.0
    } else {
        (-1.0 + (1.0 + 4.0 * w * w).sqrt()) / (2.0 * w)
    }
}

fn converge(nodes: usize, rule: impl Fn(usize) -> f64) -> Result<f64> {
    let mut n = nodes;
    let mut prev = rule(n);
    while n < NORM_MAX_NODES {
        n *= 2;
        let next = rule(n);
        if !next.is_finite() {
            return Err(Error::NonConvergent {
                nodes: n,
                estimate: next,
            });
        }
        if (next - prev).abs() <= NORM_REL_TOL * next.abs() || (next == 0.0 && prev == 0.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergent {
        nodes: n,
        estimate: prev,
    })
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn midpoint(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}
