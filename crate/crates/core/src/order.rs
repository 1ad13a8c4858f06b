//! Extended-real orders.
//!
//! The family is indexed by an order `p` that may be infinite, and several
//! formulas are written in terms of the Hölder conjugate
//!
//! ```text
//! 1/p + 1/p' = 1,    p' = p / (p - 1)
//! ```
//!
//! with the conventions `1' = ∞` and `∞' = 1`. Keeping infinity as its own
//! variant means every branch is chosen by tag and never by a closeness
//! threshold.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An order on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Finite(f64),
    Infinite,
}

impl Order {
    /// Wraps a finite number, mapping `+∞` to [`Order::Infinite`].
    pub fn new(p: f64) -> Result<Order> {
        if p == f64::INFINITY {
            Ok(Order::Infinite)
        } else if p.is_finite() {
            Ok(Order::Finite(p))
        } else {
            Err(Error::BadOrder(p.to_string()))
        }
    }

    /// The order as an `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            Order::Finite(p) => p,
            Order::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }

    /// The Hölder conjugate. Fails for `p = 0`.
    pub fn conjugate(self) -> Result<Order> {
        match self {
            Order::Infinite => Ok(Order::Finite(1.0)),
            Order::Finite(p) if p == 0.0 => Err(Error::ZeroOrder),
            Order::Finite(p) if p == 1.0 => Ok(Order::Infinite),
            Order::Finite(p) => Ok(Order::Finite(p / (p - 1.0))),
        }
    }
}

/// Free-function form of [`Order::conjugate`].
pub fn conjugate(p: Order) -> Result<Order> {
    p.conjugate()
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(p) => write!(f, "{p}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    /// Accepts decimal literals (including scientific notation and negative
    /// numbers) and `inf`, `+inf`, `infinity` or `∞` in any case.
    fn from_str(s: &str) -> Result<Order> {
        let token = s.trim();
        match token.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" | "∞" => return Ok(Order::Infinite),
            _ => {}
        }
        let p: f64 = token
            .parse()
            .map_err(|_| Error::BadOrder(token.to_string()))?;
        if !p.is_finite() {
            return Err(Error::BadOrder(token.to_string()));
        }
        Ok(Order::Finite(p))
    }
}

impl From<f64> for Order {
    /// Converts `f64::INFINITY` to [`Order::Infinite`] and everything else to
    /// [`Order::Finite`]. Validation happens where the order is used.
    fn from(p: f64) -> Order {
        if p == f64::INFINITY {
            Order::Infinite
        } else {
            Order::Finite(p)
        }
    }
}
