//! Densities, spin vectors and helicity from spinor bilinears.
//!
//! Spin components are normalized by ψ†ψ, which makes them independent of
//! the overall amplitude and lets the closed forms below hold pointwise.

use crate::algebra::{bilinear, gamma, pauli, sigma_dot, Complex, Matrix2, Matrix4, Spinor, Spinor2, Spinor4};
use crate::error::{Error, Result};
use crate::profiles::Direction;
use crate::solutions::{SpinorValue, Species};

/// Default floor below which a density is treated as zero.
pub const DENSITY_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl SpinVector {
    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }
}

impl std::ops::Neg for SpinVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            sx: -self.sx,
            sy: -self.sy,
            sz: -self.sz,
        }
    }
}

/// ψ†ψ.
pub fn density<S: Spinor>(psi: &S) -> f64 {
    psi.norm_sqr()
}

pub fn density_of(psi: &SpinorValue) -> f64 {
    match psi {
        SpinorValue::Two(s) => density(s),
        SpinorValue::Four(s) => density(s),
    }
}

fn checked_density<S: Spinor>(psi: &S) -> Result<f64> {
    let d = density(psi);
    if d > DENSITY_FLOOR {
        Ok(d)
    } else {
        Err(Error::DegenerateDensity {
            density: d,
            floor: DENSITY_FLOOR,
        })
    }
}

/// (i/2)γ^kγ^l for the cyclic pairs (2,3), (3,1), (1,2).
fn spin_operators() -> [Matrix4; 3] {
    let half_i = Complex::new(0.0, 0.5);
    let g = |a, b| (gamma(a).unwrap() * gamma(b).unwrap()).scale(half_i);
    [g(2, 3), g(3, 1), g(1, 2)]
}

/// Spin expectation (i/2)Ψ†γ^kγ^lΨ / Ψ†Ψ of a Dirac spinor.
///
/// Applied to an antiparticle spinor this already yields the antiparticle
/// spin, i.e. the negative of the matching particle spin.
pub fn spin_vector(psi: &Spinor4) -> Result<SpinVector> {
    let d = checked_density(psi)?;
    let [ox, oy, oz] = spin_operators();
    Ok(SpinVector {
        sx: bilinear(psi, &ox).re / d,
        sy: bilinear(psi, &oy).re / d,
        sz: bilinear(psi, &oz).re / d,
    })
}

/// Spin expectation ½ψ†σψ / ψ†ψ of a Weyl spinor.
pub fn spin_vector_weyl(psi: &Spinor2) -> Result<SpinVector> {
    let d = checked_density(psi)?;
    let s = |k| 0.5 * bilinear(psi, &pauli(k).unwrap()).re / d;
    Ok(SpinVector {
        sx: s(1),
        sy: s(2),
        sz: s(3),
    })
}

pub fn spin_of(psi: &SpinorValue) -> Result<SpinVector> {
    match psi {
        SpinorValue::Two(s) => spin_vector_weyl(s),
        SpinorValue::Four(s) => spin_vector(s),
    }
}

/// Magnitude of the spin vector.
pub fn total_spin(psi: &Spinor4) -> Result<f64> {
    spin_vector(psi).map(|s| s.norm())
}

/// ψ†(n·σ)ψ / ψ†ψ, in [−1, 1].
pub fn helicity(psi: &Spinor2, dir: &Direction) -> Result<f64> {
    let d = checked_density(psi)?;
    let op: Matrix2 = sigma_dot(dir.unit());
    Ok(bilinear(psi, &op).re / d)
}

/// ½·n·(f² − g²)/(f² + g²), negated for antiparticles.
pub fn closed_form_spin(species: Species, dir: &Direction, f: f64, g: f64) -> SpinVector {
    let ratio = (f * f - g * g) / (f * f + g * g);
    let sign = match species {
        Species::Particle => 1.0,
        Species::Antiparticle => -1.0,
    };
    let n = dir.unit();
    SpinVector {
        sx: sign * 0.5 * n[0] * ratio,
        sy: sign * 0.5 * n[1] * ratio,
        sz: sign * 0.5 * n[2] * ratio,
    }
}

/// ½|f² − g²|/(f² + g²), equal for particles and antiparticles.
pub fn closed_form_total_spin(f: f64, g: f64) -> f64 {
    0.5 * ((f * f - g * g) / (f * f + g * g)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{Event, Profile1D};
    use crate::solutions::{DiracSolution, Helicity, WeylDirectionalSolution};

    fn dirac(species: Species, dir: Direction, f: f64, g: f64) -> Spinor4 {
        DiracSolution {
            species,
            dir,
            f: Profile1D::constant(f),
            g: Profile1D::constant(g),
            h: Profile1D::linear_phase(1.3),
        }
        .eval(&Event::new(0.2, 0.1, -0.4, 0.9))
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&Spinor4::real([1.0, 0.0, 1.0, 0.0])), 2.0);
        let psi = dirac(Species::Particle, Direction::plus_z(), 2.0, 1.0);
        assert!((density(&psi) - 10.0).abs() < 1e-14);
        assert_eq!(density(&Spinor4::zero()), 0.0);
    }

    #[test]
    fn spin_vector_examples() {
        let z = Direction::plus_z();
        let s = spin_vector(&dirac(Species::Particle, z, 1.0, 0.0)).unwrap();
        assert!(s.sx.abs() < 1e-16 && s.sy.abs() < 1e-16 && (s.sz - 0.5).abs() < 1e-15);
        let s = spin_vector(&dirac(Species::Particle, z, 0.8, 0.8)).unwrap();
        assert!(s.norm() < 1e-15);
        let s = spin_vector(&dirac(Species::Particle, z, 2.0, 1.0)).unwrap();
        assert!((s.sz - 0.3).abs() < 1e-15);
        assert!(matches!(
            spin_vector(&Spinor4::zero()),
            Err(Error::DegenerateDensity { .. })
        ));
    }

    #[test]
    fn total_spin_examples() {
        let d = Direction::new(0.7, 2.0).unwrap();
        assert!((total_spin(&dirac(Species::Particle, d, 1.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!(total_spin(&dirac(Species::Antiparticle, d, 3.0, 3.0)).unwrap() < 1e-15);
        assert!((total_spin(&dirac(Species::Particle, d, 2.0, 1.0)).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn helicity_examples() {
        let d = Direction::new(1.2, 0.4).unwrap();
        let mk = |helicity| WeylDirectionalSolution {
            helicity,
            dir: d,
            f: Profile1D::constant(1.0),
            h: Profile1D::constant(0.0),
        };
        let e = Event::default();
        let plus = mk(Helicity::Positive).eval(&e);
        let minus = mk(Helicity::Negative).eval(&e);
        assert!((helicity(&plus, &d).unwrap() - 1.0).abs() < 1e-15);
        assert!((helicity(&minus, &d).unwrap() + 1.0).abs() < 1e-15);

        let z = Direction::plus_z();
        let mix = Spinor2::real([1.0, 1.0]) * std::f64::consts::FRAC_1_SQRT_2;
        assert!(helicity(&mix, &z).unwrap().abs() < 1e-16);
        assert!(helicity(&Spinor2::zero(), &z).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use std::f64::consts::PI;

        proptest! {
            #[test]
            fn spin_scale_invariant_and_bounded(
                a in prop::array::uniform8(-5.0..5.0f64), c in 0.01..100.0f64, neg in any::<bool>()
            ) {
                let psi = Spinor4(std::array::from_fn(|i| Complex::new(a[2 * i], a[2 * i + 1])));
                prop_assume!(density(&psi) > 1e-6);
                let c = if neg { -c } else { c };
                let s1 = spin_vector(&psi).unwrap();
                let s2 = spin_vector(&(psi * c)).unwrap();
                for (x, y) in s1.as_array().iter().zip(s2.as_array()) {
                    prop_assert!((x - y).abs() <= 1e-14);
                }
                prop_assert!(s1.norm() <= 0.5 + 1e-12);
            }

            #[test]
            fn particle_antiparticle_opposition(
                t in 0.0..=PI, p in 0.0..std::f64::consts::TAU, f in -3.0..3.0f64, g in -3.0..3.0f64
            ) {
                prop_assume!(f * f + g * g > 1e-6);
                let d = Direction::new(t, p).unwrap();
                let sp = spin_vector(&dirac(Species::Particle, d, f, g)).unwrap();
                let sa = spin_vector(&dirac(Species::Antiparticle, d, f, g)).unwrap();
                let cp = closed_form_spin(Species::Particle, &d, f, g);
                for ((x, y), z) in sp.as_array().iter().zip(sa.as_array()).zip(cp.as_array()) {
                    prop_assert!((x + y).abs() <= 1e-14);
                    prop_assert!((x - z).abs() <= 1e-12);
                }
                let tp = sp.norm();
                prop_assert!((tp - sa.norm()).abs() <= 1e-14);
                prop_assert!((0.0..=0.5 + 1e-12).contains(&tp));
            }
        }
    }
}
