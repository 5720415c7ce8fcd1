//! Independent numerical verification of the closed forms.
//!
//! Residuals of the Dirac and Weyl operators are evaluated with central
//! finite differences applied to the closed-form spinors at off-grid stencil
//! points, so no one-sided stencils are needed anywhere. Grid aggregation is
//! a max (reported) and a mean (diagnostic), both reduced in grid order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{gamma, pauli, slash2, slash4, Complex, Matrix2, Spinor, Spinor2, Spinor4};
use crate::em_gauge::{
    closed_form_fields, fields_from_potential, AnnihilatorVector, BasePotential, FieldFamily, GaugeFunction,
    Monomial, PotentialAssembly, MAX_POLY_DEGREE,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::fd::{gradient, FDSpec, Order};
use crate::profiles::Event;
use crate::solutions::{Helicity, Solution, SpinorValue};

/// Residuals below this are indistinguishable from rounding.
pub const ROUNDING_FLOOR: f64 = 1e-13;
pub const DEFAULT_RESIDUAL_THRESHOLD: f64 = 1e-6;
pub const DEFAULT_FIELD_THRESHOLD: f64 = 1e-7;
/// Factor by which a negative control must exceed the pass threshold.
pub const NEGATIVE_CONTROL_FACTOR: f64 = 1e3;

/// Rest mass in the Dirac equation; in-scope solutions need m = 0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MassParameter(f64);

impl MassParameter {
    pub fn new(m: f64) -> Result<Self> {
        if m.is_finite() && m >= 0.0 {
            Ok(Self(m))
        } else {
            Err(Error::invalid("mass", format!("must be finite and >= 0, got {m}")))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Which wave equation a residual is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Dirac,
    /// iσ^μ∂_μψ + a_μσ^μψ = 0 (positive helicity).
    WeylPositive,
    /// iσ^μ∂_μψ − 2iσ⁰∂₀ψ + a_μσ^μψ − 2a₀σ⁰ψ = 0 (negative helicity).
    WeylNegative,
}

impl Equation {
    pub fn for_solution(sol: &Solution) -> Self {
        match sol.helicity() {
            None => Equation::Dirac,
            Some(Helicity::Positive) => Equation::WeylPositive,
            Some(Helicity::Negative) => Equation::WeylNegative,
        }
    }

    pub fn for_helicity(h: Helicity) -> Self {
        match h {
            Helicity::Positive => Equation::WeylPositive,
            Helicity::Negative => Equation::WeylNegative,
        }
    }
}

const I: Complex = Complex::new(0.0, 1.0);

fn dirac_operator(psi: &Spinor4, d: &[Spinor4; 4], b: [f64; 4], m: f64) -> Spinor4 {
    let mut r = slash4(b).apply(psi) - *psi * m;
    for (mu, dpsi) in d.iter().enumerate() {
        r = r + gamma(mu).unwrap().apply(dpsi) * I;
    }
    r
}

fn weyl_operator(psi: &Spinor2, d: &[Spinor2; 4], b: [f64; 4], eq: Equation) -> Spinor2 {
    let mut r = slash2(b).apply(psi);
    for (mu, dpsi) in d.iter().enumerate() {
        r = r + pauli(mu).unwrap().apply(dpsi) * I;
    }
    if eq == Equation::WeylNegative {
        // −2iσ⁰∂₀ψ − 2a₀σ⁰ψ
        r = r - d[0] * (I * 2.0) - *psi * (2.0 * b[0]);
    }
    r
}

/// ‖iγ^μ∂_μΨ + b_μγ^μΨ − mΨ‖ at `e`.
pub fn dirac_residual(
    sol: &Solution,
    pot: &PotentialAssembly,
    m: MassParameter,
    e: &Event,
    fd: &FDSpec,
) -> Result<f64> {
    let Solution::Dirac(s) = sol else {
        return Err(Error::invalid("solution", "Dirac residual needs a Dirac solution"));
    };
    let b = pot.at(e)?;
    let d = gradient(|ev: &Event| s.eval(ev), e, fd);
    Ok(dirac_operator(&s.eval(e), &d, b.0, m.value()).norm())
}

/// FD residual norm of the Weyl equation selected by the solution's helicity.
pub fn weyl_residual(sol: &Solution, pot: &PotentialAssembly, e: &Event, fd: &FDSpec) -> Result<f64> {
    let Some(h) = sol.helicity() else {
        return Err(Error::invalid("solution", "Weyl residual needs a Weyl solution"));
    };
    weyl_residual_with(sol, Equation::for_helicity(h), pot, e, fd)
}

fn weyl_residual_with(
    sol: &Solution,
    eq: Equation,
    pot: &PotentialAssembly,
    e: &Event,
    fd: &FDSpec,
) -> Result<f64> {
    let two = |ev: &Event| match sol.eval(ev) {
        SpinorValue::Two(s) => s,
        SpinorValue::Four(_) => unreachable!("checked by caller"),
    };
    if matches!(sol, Solution::Dirac(_)) {
        return Err(Error::DimensionMismatch { spinor: 4, matrix: 2 });
    }
    let b = pot.at(e)?;
    let d = gradient(two, e, fd);
    Ok(weyl_operator(&two(e), &d, b.0, eq).norm())
}

/// Residual of the solution's own equation.
pub fn residual(sol: &Solution, pot: &PotentialAssembly, m: MassParameter, e: &Event, fd: &FDSpec) -> Result<f64> {
    residual_of(sol, Equation::for_solution(sol), pot, m, e, fd)
}

/// Residual of an explicitly chosen equation (used by negative controls).
pub fn residual_of(
    sol: &Solution,
    eq: Equation,
    pot: &PotentialAssembly,
    m: MassParameter,
    e: &Event,
    fd: &FDSpec,
) -> Result<f64> {
    match eq {
        Equation::Dirac => dirac_residual(sol, pot, m, e, fd),
        _ => weyl_residual_with(sol, eq, pot, e, fd),
    }
}

/// ‖(v_μ M^μ)ψ‖ with the contraction matching `eq`; purely algebraic.
///
/// Dirac uses v_μγ^μ, positive helicity v_μσ^μ, and negative helicity the
/// potential operator of its equation, −v₀σ⁰ + v_kσ^k.
pub fn annihilator_residual(psi: &SpinorValue, v: &AnnihilatorVector, eq: Equation) -> Result<f64> {
    match (psi, eq) {
        (SpinorValue::Four(p), Equation::Dirac) => Ok(slash4(v.0).apply(p).norm()),
        (SpinorValue::Two(p), Equation::WeylPositive) => Ok(slash2(v.0).apply(p).norm()),
        (SpinorValue::Two(p), Equation::WeylNegative) => {
            let op: Matrix2 = slash2([-v.0[0], v.0[1], v.0[2], v.0[3]]);
            Ok(op.apply(p).norm())
        }
        (SpinorValue::Four(_), _) => Err(Error::DimensionMismatch { spinor: 4, matrix: 2 }),
        (SpinorValue::Two(_), Equation::Dirac) => Err(Error::DimensionMismatch { spinor: 2, matrix: 4 }),
    }
}

/// Axis-aligned box of `points` samples per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    /// (t, x, y, z) of the box centre.
    pub center: [f64; 4],
    pub half_width: [f64; 4],
    pub points: usize,
}

impl Grid {
    pub fn new(center: Event, half_width: f64, points: usize) -> Result<Self> {
        let g = Self {
            center: center.coords(),
            half_width: [half_width; 4],
            points,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::invalid("points", "need at least one point per axis"));
        }
        if self.half_width.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::invalid("half_width", "must be finite and >= 0"));
        }
        Ok(())
    }

    fn axis(&self, i: usize) -> Vec<f64> {
        let (c, w) = (self.center[i], self.half_width[i]);
        if self.points == 1 {
            return vec![c];
        }
        let n = self.points - 1;
        (0..self.points)
            .map(|k| c - w + 2.0 * w * k as f64 / n as f64)
            .collect()
    }

    /// All events in t-major order.
    pub fn events(&self) -> Vec<Event> {
        let axes: Vec<Vec<f64>> = (0..4).map(|i| self.axis(i)).collect();
        let mut out = Vec::with_capacity(self.points.pow(4));
        for &t in &axes[0] {
            for &x in &axes[1] {
                for &y in &axes[2] {
                    for &z in &axes[3] {
                        out.push(Event::new(t, x, y, z));
                    }
                }
            }
        }
        out
    }
}

/// FD settings as reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdSummary {
    pub order: u32,
    pub step: f64,
}

impl From<&FDSpec> for FdSummary {
    fn from(fd: &FDSpec) -> Self {
        Self {
            order: fd.order.as_int(),
            step: fd.h(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub max_norm: f64,
    pub mean_norm: f64,
    pub grid: Grid,
    pub fd: FDSpec,
    pub convergence_order: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    /// Maximum at s ≡ 0, when the report comes from a gauge sweep.
    pub baseline_max: Option<f64>,
}

fn aggregate(values: &[f64]) -> (f64, f64) {
    // NaN propagates into max so a broken point can never pass
    let max = values
        .iter()
        .fold(0.0f64, |m, &v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) });
    let mean = if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    };
    (max, mean)
}

fn collect_results(rs: Vec<Result<f64>>) -> Result<Vec<f64>> {
    rs.into_iter().collect()
}

/// Residual of `eq` at every grid event.
pub fn residual_values(
    sol: &Solution,
    eq: Equation,
    pot: &PotentialAssembly,
    m: MassParameter,
    grid: &Grid,
    fd: &FDSpec,
) -> Result<Vec<f64>> {
    let events = grid.events();
    collect_results(exec::map(&events, |e| residual_of(sol, eq, pot, m, e, fd)))
}

/// Residual of the solution's own equation over a grid.
pub fn residual_sweep(
    sol: &Solution,
    pot: &PotentialAssembly,
    m: MassParameter,
    grid: &Grid,
    fd: &FDSpec,
    threshold: f64,
) -> Result<ResidualReport> {
    let vals = residual_values(sol, Equation::for_solution(sol), pot, m, grid, fd)?;
    let (max, mean) = aggregate(&vals);
    Ok(ResidualReport {
        max_norm: max,
        mean_norm: mean,
        grid: *grid,
        fd: *fd,
        convergence_order: None,
        threshold,
        pass: max <= threshold,
        baseline_max: None,
    })
}

/// Residuals with the base potential combined with each gauge sample.
///
/// The report's maximum covers the s ≡ 0 baseline and every sample.
pub fn degeneracy_sweep(
    sol: &Solution,
    base_pot: &PotentialAssembly,
    gauge_samples: &[GaugeFunction],
    m: MassParameter,
    grid: &Grid,
    fd: &FDSpec,
    threshold: f64,
) -> Result<ResidualReport> {
    if gauge_samples.is_empty() {
        return Err(Error::invalid("gauge_samples", "need at least one gauge sample"));
    }
    let with = |gauge: GaugeFunction| PotentialAssembly {
        gauge,
        ..base_pot.clone()
    };
    let baseline = residual_sweep(sol, &with(GaugeFunction::Zero), m, grid, fd, threshold)?;
    let mut all = Vec::new();
    for s in gauge_samples {
        let vals = residual_values(sol, Equation::for_solution(sol), &with(s.clone()), m, grid, fd)?;
        all.extend(vals);
    }
    let (max, mean) = aggregate(&all);
    let max = max.max(baseline.max_norm);
    Ok(ResidualReport {
        max_norm: max,
        mean_norm: mean,
        grid: *grid,
        fd: *fd,
        convergence_order: None,
        threshold,
        pass: max <= threshold,
        baseline_max: Some(baseline.max_norm),
    })
}

/// Least-squares slope of log(residual) against log(h).
pub fn convergence_order(residual_fn: impl Fn(f64) -> Result<f64>, steps: &[f64]) -> Result<f64> {
    if steps.len() < 3 {
        return Err(Error::TooFewSteps {
            need: 3,
            got: steps.len(),
        });
    }
    let ratio = steps[1] / steps[0];
    let geometric = steps
        .windows(2)
        .all(|w| w[0] > 0.0 && ((w[1] / w[0]) - ratio).abs() <= 1e-9 * ratio.abs());
    if !geometric || ratio == 1.0 {
        return Err(Error::invalid("steps", "must be positive and geometrically spaced"));
    }
    let rs = steps.iter().map(|&h| residual_fn(h)).collect::<Result<Vec<_>>>()?;
    let min = rs.iter().cloned().fold(f64::INFINITY, f64::min);
    if min.is_nan() || min < ROUNDING_FLOOR {
        return Err(Error::FloorDominated { min });
    }
    let xs: Vec<f64> = steps.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = rs.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Steps h·{4, 2, 1} used for order estimates.
pub fn convergence_steps(h: f64) -> [f64; 3] {
    [4.0 * h, 2.0 * h, h]
}

/// Max |closed form − FD-derived| over the grid, componentwise.
pub fn field_crosscheck(
    family: &FieldFamily,
    s: &GaugeFunction,
    q: f64,
    grid: &Grid,
    fd: &FDSpec,
    threshold: f64,
) -> Result<ResidualReport> {
    if q == 0.0 {
        return Err(Error::ZeroCharge);
    }
    let pot = family.assembly(s.clone());
    let events = grid.events();
    let diffs = collect_results(exec::map(&events, |e| {
        let a = closed_form_fields(family, s, q, e)?;
        let b = fields_from_potential(&pot, q, e, fd)?;
        Ok(a.max_abs_diff(&b))
    }))?;
    let (max, mean) = aggregate(&diffs);
    Ok(ResidualReport {
        max_norm: max,
        mean_norm: mean,
        grid: *grid,
        fd: *fd,
        convergence_order: None,
        threshold,
        pass: max <= threshold,
        baseline_max: None,
    })
}

/// A deliberately broken configuration that must be detected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativeControl {
    pub name: String,
    pub max_residual: f64,
    pub required_min: f64,
    pub detected: bool,
}

fn control(name: &str, max: f64, threshold: f64) -> NegativeControl {
    let required_min = NEGATIVE_CONTROL_FACTOR * threshold;
    NegativeControl {
        name: name.to_string(),
        max_residual: max,
        required_min,
        detected: max >= required_min,
    }
}

/// Runs the negative controls that apply to the solution's family.
///
/// Dirac: m = 0.5 and a sign-flipped annihilator with s ≡ 1. Weyl
/// directional: flipped annihilator and the opposite-helicity equation.
/// Transverse: zero potential, opposite-helicity base potential and the
/// flipped annihilator.
pub fn negative_controls(sol: &Solution, grid: &Grid, fd: &FDSpec, threshold: f64) -> Result<Vec<NegativeControl>> {
    let eq = Equation::for_solution(sol);
    let proper = PotentialAssembly::for_solution(sol, GaugeFunction::Zero);
    let max_of = |eq: Equation, pot: &PotentialAssembly, m: MassParameter| -> Result<f64> {
        Ok(aggregate(&residual_values(sol, eq, pot, m, grid, fd)?).0)
    };
    let zero_m = MassParameter::default();
    let flipped = {
        let v = proper.annihilator.0;
        PotentialAssembly {
            annihilator: AnnihilatorVector([v[0], -v[1], -v[2], -v[3]]),
            gauge: GaugeFunction::Constant(1.0),
            ..proper.clone()
        }
    };
    let mut out = Vec::new();
    match sol {
        Solution::Dirac(_) => {
            let m = MassParameter::new(0.5)?;
            out.push(control("mass-0.5", max_of(eq, &proper, m)?, threshold));
        }
        Solution::WeylDirectional(w) => {
            let wrong = Equation::for_helicity(w.helicity.flipped());
            out.push(control("wrong-helicity-equation", max_of(wrong, &proper, zero_m)?, threshold));
        }
        Solution::WeylTransverse(t) => {
            let zero = PotentialAssembly {
                base: BasePotential::Zero,
                ..proper.clone()
            };
            out.push(control("zero-potential", max_of(eq, &zero, zero_m)?, threshold));
            let swapped = PotentialAssembly {
                base: BasePotential::Transverse {
                    helicity: t.helicity.flipped(),
                    sense: t.sense,
                    p: t.p.clone(),
                },
                ..proper.clone()
            };
            out.push(control("wrong-helicity-potential", max_of(eq, &swapped, zero_m)?, threshold));
        }
    }
    out.push(control("flipped-annihilator", max_of(eq, &flipped, zero_m)?, threshold));
    Ok(out)
}

/// Deterministic gauge samples alternating between cubic polynomials and
/// sinusoids, all coefficients of order one.
pub fn random_gauges(seed: u64, n: usize) -> Vec<GaugeFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = move || rng.gen_range(-1.0..1.0);
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                let terms = (0..3)
                    .map(|_| {
                        let mut powers = [0u32; 4];
                        let degree = ((unit() + 1.0) * 2.0) as u32;
                        for _ in 0..degree.min(MAX_POLY_DEGREE) {
                            let axis = (((unit() + 1.0) * 2.0) as usize).min(3);
                            powers[axis] += 1;
                        }
                        Monomial { coef: unit(), powers }
                    })
                    .collect();
                GaugeFunction::Polynomial(terms)
            } else {
                GaugeFunction::Sinusoid {
                    s0: unit(),
                    kappa: [unit(), unit(), unit()],
                    omega: unit(),
                    phase: std::f64::consts::PI * unit(),
                }
            }
        })
        .collect()
}

/// Default grid: 6 points per axis on a box of half-width 1 around the locus.
pub fn default_grid(sol: &Solution) -> Grid {
    Grid {
        center: sol.locus().coords(),
        half_width: [1.0; 4],
        points: 6,
    }
}

/// Residual threshold for an order/step pair, scaled from the 1e−6 default
/// at order 4 and h = 0.01.
pub fn default_threshold(fd: &FDSpec) -> f64 {
    match fd.order {
        Order::Fourth => DEFAULT_RESIDUAL_THRESHOLD * (fd.h() / 0.01).powi(4).max(1.0),
        Order::Second => DEFAULT_RESIDUAL_THRESHOLD * (fd.h() / 0.01).powi(2).max(1.0) * 1e2,
    }
}

#[doc(hidden)]
pub fn spinor_value_norm(v: &SpinorValue) -> f64 {
    match v {
        SpinorValue::Two(s) => s.norm(),
        SpinorValue::Four(s) => s.norm(),
    }
}
