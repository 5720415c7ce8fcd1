//! Annihilator vectors, degenerate 4-potential families and the
//! electromagnetic fields they generate.
//!
//! Conventions: U = b₀/q and A = −(1/q)(b₁, b₂, b₃), so
//! E = −∇U − ∂A/∂t and B = ∇×A.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::algebra::{bilinear, pauli, Spinor, Spinor2};
use crate::error::{Error, Result};
use crate::fd::{gradient, FDSpec};
use crate::observables::DENSITY_FLOOR;
use crate::profiles::{Direction, Event, Profile2D, SuperGaussian};
use crate::solutions::{Helicity, Sense, Solution};

/// Covariant components (a₀, a₁, a₂, a₃) = q·A_μ.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourPotential(pub [f64; 4]);

impl Add for FourPotential {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourPotential {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Mul<f64> for FourPotential {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self(self.0.map(|v| v * k))
    }
}

/// The 4-vector whose contraction annihilates a solution spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnihilatorVector(pub [f64; 4]);

/// Electric and magnetic field at an event.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EMField {
    pub e: [f64; 3],
    pub b: [f64; 3],
}

impl EMField {
    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &EMField) -> f64 {
        self.e
            .iter()
            .zip(other.e.iter())
            .chain(self.b.iter().zip(other.b.iter()))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// s and its four partials (∂_t, ∂_x, ∂_y, ∂_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeValue {
    pub s: f64,
    pub grad: [f64; 4],
}

/// One monomial c·t^a·x^b·y^c·z^d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub powers: [u32; 4],
}

impl Monomial {
    fn degree(&self) -> u32 {
        self.powers.iter().sum()
    }

    fn eval(&self, c: &[f64; 4]) -> (f64, [f64; 4]) {
        let pw = |v: f64, k: u32| if k == 0 { 1.0 } else { v.powi(k as i32) };
        let factors: [f64; 4] = std::array::from_fn(|i| pw(c[i], self.powers[i]));
        let value = self.coef * factors.iter().product::<f64>();
        let grad = std::array::from_fn(|i| {
            let k = self.powers[i];
            if k == 0 {
                return 0.0;
            }
            let mut prod = self.coef * k as f64 * pw(c[i], k - 1);
            for (j, f) in factors.iter().enumerate() {
                if j != i {
                    prod *= f;
                }
            }
            prod
        });
        (value, grad)
    }
}

/// The sampled gauge function s(r, t).
#[derive(Debug, Clone, PartialEq)]
pub enum GaugeFunction {
    Zero,
    Constant(f64),
    /// Sum of monomials of total degree ≤ 3 in (t, x, y, z).
    Polynomial(Vec<Monomial>),
    /// s₀·sin(κ·r − ωt + φ₀).
    Sinusoid {
        s0: f64,
        kappa: [f64; 3],
        omega: f64,
        phase: f64,
    },
}

pub const MAX_POLY_DEGREE: u32 = 3;

impl GaugeFunction {
    pub fn validate(&self) -> Result<()> {
        let fin = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must be finite, got {v}")))
            }
        };
        match self {
            GaugeFunction::Zero => Ok(()),
            GaugeFunction::Constant(s0) => fin("s0", *s0),
            GaugeFunction::Polynomial(terms) => terms.iter().try_for_each(|m| {
                fin("terms", m.coef)?;
                if m.degree() > MAX_POLY_DEGREE {
                    Err(Error::invalid(
                        "terms",
                        format!("monomial degree {} exceeds {MAX_POLY_DEGREE}", m.degree()),
                    ))
                } else {
                    Ok(())
                }
            }),
            GaugeFunction::Sinusoid {
                s0,
                kappa,
                omega,
                phase,
            } => {
                fin("s0", *s0)?;
                kappa.iter().try_for_each(|k| fin("kappa", *k))?;
                fin("omega", *omega)?;
                fin("phase", *phase)
            }
        }
    }

    pub fn eval(&self, e: &Event) -> GaugeValue {
        match self {
            GaugeFunction::Zero => GaugeValue {
                s: 0.0,
                grad: [0.0; 4],
            },
            GaugeFunction::Constant(s0) => GaugeValue {
                s: *s0,
                grad: [0.0; 4],
            },
            GaugeFunction::Polynomial(terms) => {
                let c = e.coords();
                terms.iter().fold(
                    GaugeValue {
                        s: 0.0,
                        grad: [0.0; 4],
                    },
                    |acc, m| {
                        let (v, g) = m.eval(&c);
                        GaugeValue {
                            s: acc.s + v,
                            grad: std::array::from_fn(|i| acc.grad[i] + g[i]),
                        }
                    },
                )
            }
            GaugeFunction::Sinusoid {
                s0,
                kappa,
                omega,
                phase,
            } => {
                let arg = kappa[0] * e.x + kappa[1] * e.y + kappa[2] * e.z - omega * e.t + phase;
                let (sn, cs) = arg.sin_cos();
                let d = s0 * cs;
                GaugeValue {
                    s: s0 * sn,
                    grad: [-omega * d, kappa[0] * d, kappa[1] * d, kappa[2] * d],
                }
            }
        }
    }
}

impl fmt::Display for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeFunction::Zero => write!(f, "zero"),
            GaugeFunction::Constant(s0) => write!(f, "{s0}"),
            GaugeFunction::Polynomial(terms) => {
                const VARS: [&str; 4] = ["t", "x", "y", "z"];
                let parts: Vec<String> = terms
                    .iter()
                    .map(|m| {
                        let mut s = format!("{}", m.coef);
                        for (v, k) in VARS.iter().zip(m.powers) {
                            match k {
                                0 => {}
                                1 => s.push_str(&format!("*{v}")),
                                _ => s.push_str(&format!("*{v}^{k}")),
                            }
                        }
                        s
                    })
                    .collect();
                write!(f, "{}", parts.join(", "))
            }
            GaugeFunction::Sinusoid {
                s0,
                kappa,
                omega,
                phase,
            } => write!(
                f,
                "{s0}*sin({}x + {}y + {}z - {omega}t + {phase})",
                kappa[0], kappa[1], kappa[2]
            ),
        }
    }
}

/// (1, −sinθcosφ, −sinθsinφ, −cosθ), shared by every family moving along `dir`.
pub fn annihilator(dir: &Direction) -> AnnihilatorVector {
    let n = dir.unit();
    AnnihilatorVector([1.0, -n[0], -n[1], -n[2]])
}

/// (1, ∓ψ†σ¹ψ/ψ†ψ, ∓ψ†σ²ψ/ψ†ψ, ∓ψ†σ³ψ/ψ†ψ), minus for positive helicity.
pub fn annihilator_from_weyl(psi: &Spinor2, helicity: Helicity) -> Result<AnnihilatorVector> {
    let d = psi.norm_sqr();
    if d <= DENSITY_FLOOR {
        return Err(Error::DegenerateDensity {
            density: d,
            floor: DENSITY_FLOOR,
        });
    }
    let sign = -helicity.sign();
    let comp = |k| sign * bilinear(psi, &pauli(k).unwrap()).re / d;
    Ok(AnnihilatorVector([1.0, comp(1), comp(2), comp(3)]))
}

/// +1 for (+,+z) and (−,−z), −1 for (−,+z) and (+,−z).
fn transverse_sign(helicity: Helicity, sense: Sense) -> f64 {
    let s = match sense {
        Sense::PlusZ => 1.0,
        Sense::MinusZ => -1.0,
    };
    helicity.sign() * s
}

/// Base potential paired with a transverse-profile solution:
/// ±(0, p_y/p, −p_x/p, 0), sign per [`transverse_sign`].
pub fn base_potential_transverse(
    helicity: Helicity,
    sense: Sense,
    p: &Profile2D,
    x: f64,
    y: f64,
) -> Result<FourPotential> {
    let v = p.eval_positive(x, y)?;
    let k = transverse_sign(helicity, sense);
    Ok(FourPotential([0.0, k * v.dy / v.value, -k * v.dx / v.value, 0.0]))
}

/// bμ = aμ + s·vμ.
pub fn degenerate_potential(
    base: FourPotential,
    v: &AnnihilatorVector,
    s: &GaugeFunction,
    e: &Event,
) -> FourPotential {
    let sv = s.eval(e).s;
    FourPotential(std::array::from_fn(|i| base.0[i] + sv * v.0[i]))
}

/// The event-independent part of a potential family.
#[derive(Debug, Clone, PartialEq)]
pub enum BasePotential {
    Zero,
    Transverse {
        helicity: Helicity,
        sense: Sense,
        p: Profile2D,
    },
}

impl BasePotential {
    pub fn at(&self, e: &Event) -> Result<FourPotential> {
        match self {
            BasePotential::Zero => Ok(FourPotential::default()),
            BasePotential::Transverse { helicity, sense, p } => {
                base_potential_transverse(*helicity, *sense, p, e.x, e.y)
            }
        }
    }
}

/// bμ(e) = base(e) + s(e)·v, evaluable anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialAssembly {
    pub base: BasePotential,
    pub annihilator: AnnihilatorVector,
    pub gauge: GaugeFunction,
}

impl PotentialAssembly {
    /// The potential family a solution is degenerate in, with gauge `s`.
    pub fn for_solution(sol: &Solution, gauge: GaugeFunction) -> Self {
        let base = match sol {
            Solution::WeylTransverse(t) => BasePotential::Transverse {
                helicity: t.helicity,
                sense: t.sense,
                p: t.p.clone(),
            },
            _ => BasePotential::Zero,
        };
        Self {
            base,
            annihilator: annihilator(&sol.direction()),
            gauge,
        }
    }

    /// Zero 4-potential.
    pub fn zero() -> Self {
        Self {
            base: BasePotential::Zero,
            annihilator: AnnihilatorVector([1.0, 0.0, 0.0, 0.0]),
            gauge: GaugeFunction::Zero,
        }
    }

    pub fn at(&self, e: &Event) -> Result<FourPotential> {
        Ok(degenerate_potential(self.base.at(e)?, &self.annihilator, &self.gauge, e))
    }
}

fn check_charge(q: f64) -> Result<()> {
    if q == 0.0 || !q.is_finite() {
        Err(Error::ZeroCharge)
    } else {
        Ok(())
    }
}

/// E and B from a potential assembly by central differences.
pub fn fields_from_potential(pot: &PotentialAssembly, q: f64, e: &Event, fd: &FDSpec) -> Result<EMField> {
    check_charge(q)?;
    // fail early on a bad profile instead of inside the stencil
    pot.at(e)?;
    let b = |ev: &Event| pot.at(ev).map(|p| p.0).unwrap_or([f64::NAN; 4]);
    let as_pot = |ev: &Event| FourPotential(b(ev));
    let d = gradient(as_pot, e, fd);
    // d[mu].0[nu] = ∂_mu b_nu
    let inv = 1.0 / q;
    let ef: [f64; 3] = std::array::from_fn(|i| {
        let k = i + 1;
        (-d[k].0[0] + d[0].0[k]) * inv
    });
    // B = ∇×A with A_i = −b_i/q
    let a = |mu: usize, i: usize| -d[mu].0[i] * inv;
    let bf = [a(2, 3) - a(3, 2), a(3, 1) - a(1, 3), a(1, 2) - a(2, 1)];
    let out = EMField { e: ef, b: bf };
    if out.e.iter().chain(out.b.iter()).all(|v| v.is_finite()) {
        Ok(out)
    } else {
        // a stencil point left the positive region of p
        let (x, y) = (e.x, e.y);
        Err(Error::ProfileNonpositive { value: f64::NAN, x, y })
    }
}

/// Which potential family (and hence which closed-form fields) applies.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldFamily {
    /// Directional Dirac or Weyl solutions moving along `dir`.
    Directional(Direction),
    Transverse {
        helicity: Helicity,
        sense: Sense,
        p: Profile2D,
    },
}

impl FieldFamily {
    pub fn for_solution(sol: &Solution) -> Self {
        match sol {
            Solution::WeylTransverse(t) => FieldFamily::Transverse {
                helicity: t.helicity,
                sense: t.sense,
                p: t.p.clone(),
            },
            _ => FieldFamily::Directional(sol.direction()),
        }
    }

    pub fn assembly(&self, gauge: GaugeFunction) -> PotentialAssembly {
        match self {
            FieldFamily::Directional(dir) => PotentialAssembly {
                base: BasePotential::Zero,
                annihilator: annihilator(dir),
                gauge,
            },
            FieldFamily::Transverse { helicity, sense, p } => PotentialAssembly {
                base: BasePotential::Transverse {
                    helicity: *helicity,
                    sense: *sense,
                    p: p.clone(),
                },
                annihilator: annihilator(&sense.direction()),
                gauge,
            },
        }
    }
}

/// Sign branch of the z-directed separation field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// B_- = −(1/q)(p_x² + p_y² − p∇²p)/p²
    Minus,
    /// B_+ = +(1/q)(p_x² + p_y² − p∇²p)/p²
    Plus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Branch::Minus => Branch::Plus,
            Branch::Plus => Branch::Minus,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        })
    }
}

/// Minus branch for (+,+z) and (−,−z); plus branch for (−,+z) and (+,−z).
pub fn branch_for(helicity: Helicity, sense: Sense) -> Branch {
    if transverse_sign(helicity, sense) > 0.0 {
        Branch::Minus
    } else {
        Branch::Plus
    }
}

/// B_z surviving at s ≡ 0: ∓(1/q)(p_x² + p_y² − p(p_xx + p_yy))/p².
pub fn separation_field(p: &Profile2D, q: f64, branch: Branch, x: f64, y: f64) -> Result<f64> {
    check_charge(q)?;
    let v = p.eval_positive(x, y)?;
    let num = v.dx * v.dx + v.dy * v.dy - v.value * (v.dxx + v.dyy);
    Ok(branch.sign() * num / (v.value * v.value) / q)
}

/// Closed form of [`separation_field`] for a super-Gaussian profile:
/// ±(2/q)[k₁n₁(1−2n₁)(x−x₀)^{2(n₁−1)} + k₂n₂(1−2n₂)(y−y₀)^{2(n₂−1)}],
/// with the leading sign + on the minus branch.
pub fn separation_field_supergaussian(
    sg: &SuperGaussian,
    q: f64,
    branch: Branch,
    x: f64,
    y: f64,
) -> Result<f64> {
    check_charge(q)?;
    sg.validate()?;
    let term = |k: f64, n: u32, u: f64| {
        let nf = n as f64;
        let pow = if n == 1 { 1.0 } else { u.powi(2 * (n as i32 - 1)) };
        k * nf * (1.0 - 2.0 * nf) * pow
    };
    let s = term(sg.k1, sg.n1, x - sg.x0) + term(sg.k2, sg.n2, y - sg.y0);
    Ok(-branch.sign() * 2.0 / q * s)
}

/// Exact fields of a potential family using analytic partials of s and p.
pub fn closed_form_fields(family: &FieldFamily, s: &GaugeFunction, q: f64, e: &Event) -> Result<EMField> {
    check_charge(q)?;
    let g = s.eval(e);
    let [st, sx, sy, sz] = g.grad;
    let inv = 1.0 / q;
    match family {
        FieldFamily::Directional(dir) => {
            let [nx, ny, nz] = dir.unit();
            let st_ = dir.theta().sin();
            let (sp, cp) = dir.phi().sin_cos();
            let ct = dir.theta().cos();
            Ok(EMField {
                e: [
                    -inv * (st * nx + sx),
                    -inv * (st * ny + sy),
                    -inv * (st * nz + sz),
                ],
                b: [
                    inv * (sy * ct - sz * st_ * sp),
                    -inv * (sx * ct - sz * st_ * cp),
                    inv * st_ * (sx * sp - sy * cp),
                ],
            })
        }
        FieldFamily::Transverse { helicity, sense, p } => {
            let bz = separation_field(p, q, branch_for(*helicity, *sense), e.x, e.y)?;
            let (e_field, bxy) = match sense {
                Sense::PlusZ => ([-inv * sx, -inv * sy, -inv * (sz + st)], [inv * sy, -inv * sx]),
                Sense::MinusZ => ([-inv * sx, -inv * sy, -inv * (sz - st)], [-inv * sy, inv * sx]),
            };
            Ok(EMField {
                e: e_field,
                b: [bxy[0], bxy[1], bz],
            })
        }
    }
}
