//! Closed-form spinor solution families, evaluable at any event.

use std::fmt;

use crate::algebra::{Complex, Spinor2, Spinor4};
use crate::error::Result;
use crate::profiles::{w_coordinate, Direction, Event, Profile1D, Profile2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Species {
    Particle,
    Antiparticle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Helicity {
    Positive,
    Negative,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Positive => 1.0,
            Helicity::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Helicity::Positive => Helicity::Negative,
            Helicity::Negative => Helicity::Positive,
        }
    }
}

/// Propagation sense of the transverse-profile solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    PlusZ,
    MinusZ,
}

impl Sense {
    pub fn direction(self) -> Direction {
        match self {
            Sense::PlusZ => Direction::plus_z(),
            Sense::MinusZ => Direction::minus_z(),
        }
    }

    /// ζ = z − t for +z, z + t for −z.
    pub fn zeta(self, e: &Event) -> f64 {
        match self {
            Sense::PlusZ => e.z - e.t,
            Sense::MinusZ => e.z + e.t,
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::Particle => "particle",
            Species::Antiparticle => "antiparticle",
        })
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Helicity::Positive => "+",
            Helicity::Negative => "-",
        })
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::PlusZ => "+z",
            Sense::MinusZ => "-z",
        })
    }
}

/// Massless Dirac particle or antiparticle moving along `dir`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracSolution {
    pub species: Species,
    pub dir: Direction,
    pub f: Profile1D,
    pub g: Profile1D,
    pub h: Profile1D,
}

/// Weyl spinor of definite helicity moving along `dir`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylDirectionalSolution {
    pub helicity: Helicity,
    pub dir: Direction,
    pub f: Profile1D,
    pub h: Profile1D,
}

/// Weyl spinor p(x, y)·f(ζ)·e^{ih(ζ)} along ±z with a transverse profile.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylTransverseSolution {
    pub helicity: Helicity,
    pub sense: Sense,
    pub p: Profile2D,
    pub f: Profile1D,
    pub h: Profile1D,
}

/// The two spin basis columns (χ₊ and χ₋) of n·σ, up to the e^{iφ} placement
/// used throughout: χ₊ = (c, e^{iφ}s), χ₋ = (−s, e^{iφ}c).
fn chi(dir: &Direction) -> ([Complex; 2], [Complex; 2]) {
    let (c, s) = dir.half_angle();
    let ep = Complex::from_polar(1.0, dir.phi());
    let plus = [Complex::new(c, 0.0), ep * s];
    let minus = [Complex::new(-s, 0.0), ep * c];
    (plus, minus)
}

impl DiracSolution {
    pub fn validate(&self) -> Result<()> {
        self.f.validate()?;
        self.g.validate()?;
        self.h.validate()
    }

    pub fn comoving(&self, e: &Event) -> f64 {
        w_coordinate(&self.dir, e)
    }

    pub fn eval(&self, e: &Event) -> Spinor4 {
        let w = self.comoving(e);
        let (f, g) = (self.f.value(w), self.g.value(w));
        let phase = Complex::from_polar(1.0, self.h.value(w));
        let (p, m) = chi(&self.dir);
        // particle: f·(χ₊, χ₊) + g·(χ₋, −χ₋)
        // antiparticle: f·(−χ₋, χ₋) + g·(χ₊, χ₊)
        let (u, v) = match self.species {
            Species::Particle => ([p[0], p[1], p[0], p[1]], [m[0], m[1], -m[0], -m[1]]),
            Species::Antiparticle => ([-m[0], -m[1], m[0], m[1]], [p[0], p[1], p[0], p[1]]),
        };
        Spinor4(std::array::from_fn(|i| (u[i] * f + v[i] * g) * phase))
    }
}

impl WeylDirectionalSolution {
    pub fn validate(&self) -> Result<()> {
        self.f.validate()?;
        self.h.validate()
    }

    pub fn comoving(&self, e: &Event) -> f64 {
        w_coordinate(&self.dir, e)
    }

    pub fn eval(&self, e: &Event) -> Spinor2 {
        let w = self.comoving(e);
        let amp = Complex::from_polar(self.f.value(w), self.h.value(w));
        let (p, m) = chi(&self.dir);
        let col = match self.helicity {
            Helicity::Positive => p,
            Helicity::Negative => m,
        };
        Spinor2(col.map(|c| c * amp))
    }
}

impl WeylTransverseSolution {
    pub fn validate(&self) -> Result<()> {
        self.p.validate()?;
        self.f.validate()?;
        self.h.validate()
    }

    pub fn comoving(&self, e: &Event) -> f64 {
        self.sense.zeta(e)
    }

    /// Whether the spinor occupies the upper component.
    pub fn upper(&self) -> bool {
        matches!(
            (self.helicity, self.sense),
            (Helicity::Positive, Sense::PlusZ) | (Helicity::Negative, Sense::MinusZ)
        )
    }

    pub fn eval(&self, e: &Event) -> Spinor2 {
        let zeta = self.comoving(e);
        let p = self.p.eval(e.x, e.y).value;
        let amp = Complex::from_polar(p * self.f.value(zeta), self.h.value(zeta));
        if self.upper() {
            Spinor2([amp, Complex::new(0.0, 0.0)])
        } else {
            Spinor2([Complex::new(0.0, 0.0), amp])
        }
    }
}

/// Spinor value of either dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinorValue {
    Two(Spinor2),
    Four(Spinor4),
}

impl SpinorValue {
    pub fn components(&self) -> &[Complex] {
        match self {
            SpinorValue::Two(s) => &s.0,
            SpinorValue::Four(s) => &s.0,
        }
    }
}

/// Any of the solution families.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Dirac(DiracSolution),
    WeylDirectional(WeylDirectionalSolution),
    WeylTransverse(WeylTransverseSolution),
}

impl Solution {
    pub fn validate(&self) -> Result<()> {
        match self {
            Solution::Dirac(s) => s.validate(),
            Solution::WeylDirectional(s) => s.validate(),
            Solution::WeylTransverse(s) => s.validate(),
        }
    }

    pub fn eval(&self, e: &Event) -> SpinorValue {
        match self {
            Solution::Dirac(s) => SpinorValue::Four(s.eval(e)),
            Solution::WeylDirectional(s) => SpinorValue::Two(s.eval(e)),
            Solution::WeylTransverse(s) => SpinorValue::Two(s.eval(e)),
        }
    }

    /// The coordinate the 1D profiles are evaluated at (w or ζ).
    pub fn comoving(&self, e: &Event) -> f64 {
        match self {
            Solution::Dirac(s) => s.comoving(e),
            Solution::WeylDirectional(s) => s.comoving(e),
            Solution::WeylTransverse(s) => s.comoving(e),
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            Solution::Dirac(s) => s.dir,
            Solution::WeylDirectional(s) => s.dir,
            Solution::WeylTransverse(s) => s.sense.direction(),
        }
    }

    pub fn helicity(&self) -> Option<Helicity> {
        match self {
            Solution::Dirac(_) => None,
            Solution::WeylDirectional(s) => Some(s.helicity),
            Solution::WeylTransverse(s) => Some(s.helicity),
        }
    }

    pub fn envelope(&self) -> &Profile1D {
        match self {
            Solution::Dirac(s) => &s.f,
            Solution::WeylDirectional(s) => &s.f,
            Solution::WeylTransverse(s) => &s.f,
        }
    }

    pub fn phase(&self) -> &Profile1D {
        match self {
            Solution::Dirac(s) => &s.h,
            Solution::WeylDirectional(s) => &s.h,
            Solution::WeylTransverse(s) => &s.h,
        }
    }

    /// Short family label used in reports.
    pub fn label(&self) -> String {
        match self {
            Solution::Dirac(s) => format!("dirac-{}", s.species),
            Solution::WeylDirectional(s) => format!("weyl{}", s.helicity),
            Solution::WeylTransverse(s) => format!("transverse{}{}", s.helicity, s.sense),
        }
    }

    /// An event on the localization locus at t = 0.
    pub fn locus(&self) -> Event {
        let w0 = self.envelope().center().unwrap_or(0.0);
        match self {
            Solution::WeylTransverse(s) => {
                let (x0, y0) = s.p.center();
                Event::new(0.0, x0, y0, w0)
            }
            _ => {
                let n = self.direction().unit();
                Event::new(0.0, w0 * n[0], w0 * n[1], w0 * n[2])
            }
        }
    }
}

/// Local energy dh/dw (or dh/dζ) at the event.
pub fn local_phase_energy(sol: &Solution, e: &Event) -> f64 {
    sol.phase().derivative(sol.comoving(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sigma_dot, Spinor};
    use crate::profiles::SuperGaussian;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close4(a: Spinor4, b: [Complex; 4]) -> bool {
        a.0.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < 1e-15)
    }

    fn dirac(species: Species, dir: Direction, f: f64, g: f64, h: Profile1D) -> DiracSolution {
        DiracSolution {
            species,
            dir,
            f: Profile1D::constant(f),
            g: Profile1D::constant(g),
            h,
        }
    }

    #[test]
    fn eval_dirac_examples() {
        let o = Event::default();
        let s = dirac(Species::Particle, Direction::plus_z(), 1.0, 0.0, Profile1D::linear_phase(1.0));
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        assert!(close4(s.eval(&o), [one, zero, one, zero]));

        let s = dirac(Species::Antiparticle, Direction::plus_z(), 0.0, 1.0, Profile1D::linear_phase(1.0));
        assert!(close4(s.eval(&o), [one, zero, one, zero]));

        let d = Direction::new(FRAC_PI_2, 0.0).unwrap();
        let s = dirac(Species::Particle, d, 1.0, 1.0, Profile1D::constant(0.0));
        assert!(s.eval(&Event::new(0.3, 0.1, 0.2, 0.0)).0[0].norm() < 1e-15);
    }

    #[test]
    fn eval_weyl_directional_examples() {
        let o = Event::default();
        let mk = |helicity, dir| WeylDirectionalSolution {
            helicity,
            dir,
            f: Profile1D::constant(1.0),
            h: Profile1D::constant(0.0),
        };
        let v = mk(Helicity::Positive, Direction::plus_z()).eval(&o);
        assert_eq!(v, Spinor2::real([1.0, 0.0]));
        let v = mk(Helicity::Negative, Direction::plus_z()).eval(&o);
        assert_eq!(v.0[0].norm(), 0.0);
        assert_eq!(v.0[1], c(1.0, 0.0));
        let v = mk(Helicity::Positive, Direction::new(PI, 0.0).unwrap()).eval(&o);
        assert!(v.0[0].norm() < 1e-16 && (v.0[1] - c(1.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn eval_weyl_transverse_examples() {
        let e = Event::default();
        let mk = |helicity, sense, p: Profile2D, f: Profile1D| WeylTransverseSolution {
            helicity,
            sense,
            p,
            f,
            h: Profile1D::linear_phase(2.0),
        };
        let flat = Profile2D::SuperGaussian(SuperGaussian { k1: 1e-300, k2: 1e-300, ..SuperGaussian::gaussian(1.0, 1.0) });
        let one = Profile1D::constant(1.0);
        let v = mk(Helicity::Positive, Sense::PlusZ, flat.clone(), one.clone()).eval(&e);
        assert_eq!(v, Spinor2::real([1.0, 0.0]));
        let v = mk(Helicity::Negative, Sense::PlusZ, flat, one).eval(&e);
        assert_eq!(v, Spinor2::real([0.0, 1.0]));

        // (+, −z) uses the lower component; f peaks at ζ = z + t = z₀
        let z0 = 0.4;
        let s = mk(Helicity::Positive, Sense::MinusZ, Profile2D::gaussian(1.0, 1.0), Profile1D::gaussian(1.7, 1.0, z0));
        let v = s.eval(&Event::new(0.1, 0.0, 0.0, z0 - 0.1));
        assert_eq!(v.0[0].norm(), 0.0);
        assert!((v.0[1].norm() - 1.7).abs() < 1e-15);
    }

    #[test]
    fn local_energy_examples() {
        let chirp = |h: Profile1D| {
            Solution::WeylDirectional(WeylDirectionalSolution {
                helicity: Helicity::Positive,
                dir: Direction::plus_z(),
                f: Profile1D::constant(1.0),
                h,
            })
        };
        let s = chirp(Profile1D::erf_chirp(3.0, 1.0, 0.5));
        assert_eq!(local_phase_energy(&s, &Event::new(0.0, 0.0, 0.0, 0.5)), 3.0);
        let e = local_phase_energy(&s, &Event::new(0.0, 0.0, 0.0, 2.5));
        assert!((e - 3.0 * (-4.0f64).exp()).abs() < 1e-15);
        assert!((e - 0.05495).abs() < 1e-5);
        let s = chirp(Profile1D::linear_phase(5.0));
        assert_eq!(local_phase_energy(&s, &Event::new(7.0, 1.0, 2.0, -3.0)), 5.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn direction() -> impl Strategy<Value = Direction> {
            (0.0..=PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| Direction::new(t, p).unwrap())
        }

        fn event() -> impl Strategy<Value = Event> {
            prop::array::uniform4(-3.0..3.0f64).prop_map(Event::from_coords)
        }

        proptest! {
            #[test]
            fn dirac_norm_factorizes(
                dir in direction(), e in event(), anti in any::<bool>(),
                a in -2.0..2.0f64, b in -2.0..2.0f64, k in 0.2..2.0f64
            ) {
                let s = DiracSolution {
                    species: if anti { Species::Antiparticle } else { Species::Particle },
                    dir,
                    f: Profile1D::gaussian(a, k, 0.3),
                    g: Profile1D::gaussian(b, 1.0, -0.2),
                    h: Profile1D::erf_chirp(10.0, 0.5, 0.0),
                };
                let w = s.comoving(&e);
                let (f, g) = (s.f.value(w), s.g.value(w));
                let expect = 2.0 * (f * f + g * g);
                let got = s.eval(&e).norm_sqr();
                prop_assert!((got - expect).abs() <= 1e-13 * expect.max(1e-300));
            }

            #[test]
            fn weyl_spinors_are_helicity_eigenvectors(
                dir in direction(), e in event(), neg in any::<bool>()
            ) {
                let helicity = if neg { Helicity::Negative } else { Helicity::Positive };
                let s = WeylDirectionalSolution {
                    helicity,
                    dir,
                    f: Profile1D::gaussian(1.0, 1.0, 0.0),
                    h: Profile1D::erf_chirp(10.0, 0.5, 0.0),
                };
                let psi = s.eval(&e);
                let unit = psi * (1.0 / psi.norm());
                let r = sigma_dot(dir.unit()).apply(&unit) - unit * helicity.sign();
                prop_assert!(r.norm() <= 1e-14);
            }

            #[test]
            fn phase_scaling_scales_energy(c0 in -5.0..5.0f64, e in event()) {
                let base = Profile1D::erf_chirp(3.0, 0.7, 0.1);
                let scaled = Profile1D::erf_chirp(3.0 * c0.abs().max(1e-3), 0.7, 0.1);
                let mk = |h| Solution::WeylDirectional(WeylDirectionalSolution {
                    helicity: Helicity::Positive,
                    dir: Direction::plus_z(),
                    f: Profile1D::gaussian(1.0, 1.0, 0.0),
                    h,
                });
                let (a, b) = (mk(base), mk(scaled));
                let ratio = c0.abs().max(1e-3);
                let ea = local_phase_energy(&a, &e);
                let eb = local_phase_energy(&b, &e);
                prop_assert!((eb - ratio * ea).abs() <= 1e-12 * eb.abs().max(1e-300));
                let (ma, mb) = (a.eval(&e).components()[0].norm(), b.eval(&e).components()[0].norm());
                prop_assert!((ma - mb).abs() <= 1e-15 * ma.max(1e-300));
            }
        }
    }
}
