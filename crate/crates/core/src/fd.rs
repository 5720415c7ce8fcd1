//! Central finite-difference stencils over spacetime coordinates.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::profiles::Event;

/// Values that can be combined linearly by a stencil.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Second,
    Fourth,
}

impl Order {
    pub fn from_int(n: u32) -> Result<Self> {
        match n {
            2 => Ok(Order::Second),
            4 => Ok(Order::Fourth),
            _ => Err(Error::invalid("order", format!("must be 2 or 4, got {n}"))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            Order::Second => 2,
            Order::Fourth => 4,
        }
    }

    pub fn stencil_width(self) -> usize {
        match self {
            Order::Second => 3,
            Order::Fourth => 5,
        }
    }
}

/// Stencil order and per-coordinate steps (t, x, y, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDSpec {
    pub order: Order,
    pub step: [f64; 4],
}

impl FDSpec {
    pub fn new(order: Order, h: f64) -> Result<Self> {
        let s = Self {
            order,
            step: [h; 4],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for h in self.step {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::invalid("step", format!("must be positive, got {h}")));
            }
        }
        Ok(())
    }

    /// Same order with every step multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            order: self.order,
            step: self.step.map(|h| h * k),
        }
    }

    /// The representative step (largest of the four).
    pub fn h(&self) -> f64 {
        self.step.iter().cloned().fold(0.0, f64::max)
    }
}

impl Default for FDSpec {
    fn default() -> Self {
        Self {
            order: Order::Fourth,
            step: [0.01; 4],
        }
    }
}

/// ∂f/∂x^axis at `e` (axis 0 = t).
pub fn partial<V: Linear>(f: impl Fn(&Event) -> V, e: &Event, axis: usize, fd: &FDSpec) -> V {
    let h = fd.step[axis];
    let at = |k: f64| f(&e.shifted(axis, k * h));
    match fd.order {
        Order::Second => (at(1.0) - at(-1.0)) * (0.5 / h),
        Order::Fourth => {
            ((at(1.0) - at(-1.0)) * 8.0 - (at(2.0) - at(-2.0))) * (1.0 / (12.0 * h))
        }
    }
}

/// All four partials ∂_μ f at `e`.
pub fn gradient<V: Linear>(f: impl Fn(&Event) -> V, e: &Event, fd: &FDSpec) -> [V; 4] {
    std::array::from_fn(|mu| partial(&f, e, mu, fd))
}
