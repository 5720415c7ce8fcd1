//! Pauli and Dirac-representation gamma matrices, spinor values and bilinears.
//!
//! All matrices are exact constant tables with entries in {0, ±1, ±i}.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

const O: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// Two-component (Weyl) spinor value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2(pub [Complex; 2]);

/// Four-component (Dirac) spinor value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4(pub [Complex; 4]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Complex; 4]; 4]);

/// Common surface of [`Spinor2`] and [`Spinor4`].
pub trait Spinor:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<f64, Output = Self>
    + Mul<Complex, Output = Self>
    + Neg<Output = Self>
{
    fn components(&self) -> &[Complex];

    fn zero() -> Self;

    /// Euclidean norm over the complex components.
    fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn norm_sqr(&self) -> f64 {
        self.components().iter().map(|c| c.norm_sqr()).sum()
    }

    fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

macro_rules! spinor_impl {
    ($name:ident, $n:expr) => {
        impl $name {
            pub fn new(c: [Complex; $n]) -> Self {
                Self(c)
            }

            /// Spinor with purely real components.
            pub fn real(r: [f64; $n]) -> Self {
                Self(r.map(|x| Complex::new(x, 0.0)))
            }
        }

        impl Spinor for $name {
            fn components(&self) -> &[Complex] {
                &self.0
            }

            fn zero() -> Self {
                Self([O; $n])
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self(self.0.map(|c| -c))
            }
        }

        impl Mul<f64> for $name {
            type Output = Self;
            fn mul(self, rhs: f64) -> Self {
                Self(self.0.map(|c| c * rhs))
            }
        }

        impl Mul<Complex> for $name {
            type Output = Self;
            fn mul(self, rhs: Complex) -> Self {
                Self(self.0.map(|c| c * rhs))
            }
        }
    };
}

spinor_impl!(Spinor2, 2);
spinor_impl!(Spinor4, 4);

macro_rules! matrix_impl {
    ($name:ident, $vec:ident, $n:expr) => {
        impl $name {
            pub fn zero() -> Self {
                Self([[O; $n]; $n])
            }

            pub fn identity() -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|c| if r == c { ONE } else { O })
                }))
            }

            pub fn scale(&self, k: Complex) -> Self {
                Self(self.0.map(|row| row.map(|x| x * k)))
            }

            pub fn apply(&self, v: &$vec) -> $vec {
                $vec(std::array::from_fn(|r| {
                    (0..$n).fold(O, |acc, c| acc + self.0[r][c] * v.0[c])
                }))
            }

            /// Largest entrywise modulus.
            pub fn max_abs(&self) -> f64 {
                self.0
                    .iter()
                    .flatten()
                    .map(|x| x.norm())
                    .fold(0.0, f64::max)
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|c| self.0[r][c] + rhs.0[r][c])
                }))
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|c| self.0[r][c] - rhs.0[r][c])
                }))
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                Self(std::array::from_fn(|r| {
                    std::array::from_fn(|c| {
                        (0..$n).fold(O, |acc, k| acc + self.0[r][k] * rhs.0[k][c])
                    })
                }))
            }
        }

        impl Mul<$vec> for $name {
            type Output = $vec;
            fn mul(self, rhs: $vec) -> $vec {
                self.apply(&rhs)
            }
        }
    };
}

matrix_impl!(Matrix2, Spinor2, 2);
matrix_impl!(Matrix4, Spinor4, 4);

const SIGMA: [Matrix2; 4] = [
    Matrix2([[ONE, O], [O, ONE]]),
    Matrix2([[O, ONE], [ONE, O]]),
    Matrix2([[O, Complex::new(0.0, -1.0)], [I, O]]),
    Matrix2([[ONE, O], [O, Complex::new(-1.0, 0.0)]]),
];

fn check_index(mu: usize) -> Result<()> {
    if mu > 3 {
        Err(Error::IndexOutOfRange(mu))
    } else {
        Ok(())
    }
}

/// σ^μ for μ = 0..3 (σ⁰ is the identity).
pub fn pauli(mu: usize) -> Result<Matrix2> {
    check_index(mu)?;
    Ok(SIGMA[mu])
}

/// γ^μ in the Dirac representation, assembled from 2×2 blocks of σ^μ.
pub fn gamma(mu: usize) -> Result<Matrix4> {
    check_index(mu)?;
    Ok(GAMMA[mu])
}

/// Block matrix [[a, b], [c, d]] from 2×2 blocks.
const fn blocks(a: Matrix2, b: Matrix2, c: Matrix2, d: Matrix2) -> Matrix4 {
    let (a, b, c, d) = (a.0, b.0, c.0, d.0);
    Matrix4([
        [a[0][0], a[0][1], b[0][0], b[0][1]],
        [a[1][0], a[1][1], b[1][0], b[1][1]],
        [c[0][0], c[0][1], d[0][0], d[0][1]],
        [c[1][0], c[1][1], d[1][0], d[1][1]],
    ])
}

const fn negc(z: Complex) -> Complex {
    Complex::new(-z.re, -z.im)
}

const fn neg2(m: Matrix2) -> Matrix2 {
    let m = m.0;
    Matrix2([
        [negc(m[0][0]), negc(m[0][1])],
        [negc(m[1][0]), negc(m[1][1])],
    ])
}

const Z2: Matrix2 = Matrix2([[O, O], [O, O]]);

const GAMMA: [Matrix4; 4] = [
    blocks(SIGMA[0], Z2, Z2, neg2(SIGMA[0])),
    blocks(Z2, SIGMA[1], neg2(SIGMA[1]), Z2),
    blocks(Z2, SIGMA[2], neg2(SIGMA[2]), Z2),
    blocks(Z2, SIGMA[3], neg2(SIGMA[3]), Z2),
];

/// Contraction a_μ γ^μ = a₀γ⁰ + a₁γ¹ + a₂γ² + a₃γ³.
pub fn slash4(a: [f64; 4]) -> Matrix4 {
    (0..4).fold(Matrix4::zero(), |acc, mu| {
        acc + GAMMA[mu].scale(Complex::new(a[mu], 0.0))
    })
}

/// Contraction a_μ σ^μ = a₀σ⁰ + a₁σ¹ + a₂σ² + a₃σ³.
pub fn slash2(a: [f64; 4]) -> Matrix2 {
    (0..4).fold(Matrix2::zero(), |acc, mu| {
        acc + SIGMA[mu].scale(Complex::new(a[mu], 0.0))
    })
}

/// n·σ for a real 3-vector.
pub fn sigma_dot(n: [f64; 3]) -> Matrix2 {
    slash2([0.0, n[0], n[1], n[2]])
}

/// Square matrix acting on spinors of matching dimension.
pub trait SpinorMatrix {
    type Spinor: Spinor;
    fn entries(&self, r: usize, c: usize) -> Complex;
    fn dim(&self) -> usize;
}

impl SpinorMatrix for Matrix2 {
    type Spinor = Spinor2;
    fn entries(&self, r: usize, c: usize) -> Complex {
        self.0[r][c]
    }
    fn dim(&self) -> usize {
        2
    }
}

impl SpinorMatrix for Matrix4 {
    type Spinor = Spinor4;
    fn entries(&self, r: usize, c: usize) -> Complex {
        self.0[r][c]
    }
    fn dim(&self) -> usize {
        4
    }
}

/// ψ† Γ ψ for a spinor and a matrix of the same dimension.
pub fn bilinear<M: SpinorMatrix>(psi: &M::Spinor, gam: &M) -> Complex {
    let c = psi.components();
    let n = gam.dim();
    let mut acc = O;
    for r in 0..n {
        let row = (0..n).fold(O, |s, k| s + gam.entries(r, k) * c[k]);
        acc += c[r].conj() * row;
    }
    acc
}

/// ψ† Γ ψ where the dimensions are only known at run time.
pub fn bilinear_dyn(psi: &[Complex], gam: &[&[Complex]]) -> Result<Complex> {
    let n = psi.len();
    if gam.len() != n || gam.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            spinor: n,
            matrix: gam.len(),
        });
    }
    let mut acc = O;
    for r in 0..n {
        let row = (0..n).fold(O, |s, k| s + gam[r][k] * psi[k]);
        acc += psi[r].conj() * row;
    }
    Ok(acc)
}
