//! Exact multilinear polynomials over the integers.
//!
//! Only 0/1 points are ever evaluated, so `x_j^2` is identified with `x_j`
//! and every polynomial lives in the span of square-free monomials. A
//! monomial is the [`Subset`] of its variable indices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultilinearPoly {
    terms: BTreeMap<Subset, BigInt>,
}

impl MultilinearPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Subset::EMPTY, c.into());
        p
    }

    pub fn monomial(vars: Subset) -> Self {
        let mut p = Self::zero();
        p.add_term(vars, BigInt::one());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Subset, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, vars: Subset) -> BigInt {
        self.terms.get(&vars).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial size, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn add_term(&mut self, vars: Subset, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(vars).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&vars);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    /// Multiplies by `x_j`, absorbing `x_j^2 = x_j`.
    pub fn mul_var(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.with(j), c.clone());
        }
        out
    }

    /// Multiplies by `(x_j - 1)`.
    pub fn mul_var_minus_one(&self, j: usize) -> Self {
        self.mul_var(j).sub(self)
    }

    /// Value at the characteristic vector of `a`: the sum of coefficients of
    /// monomials contained in `a`.
    pub fn eval(&self, a: Subset) -> BigInt {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_subset_of(a))
            .map(|(_, c)| c)
            .sum()
    }

    /// `prod_{j in ones} x_j * prod_{j in minus_ones} (x_j - 1)`.
    fn product(ones: Subset, minus_ones: Subset) -> Self {
        let mut p = Self::monomial(ones);
        for j in minus_ones.elements() {
            p = p.mul_var_minus_one(j);
        }
        p
    }
}

/// `f_{F_i} = prod_{B_i} x * prod_{F_i \ B_i} (x - 1) - prod_{F_i} x`.
pub fn f_poly(member: Subset, witness: Subset) -> Result<MultilinearPoly> {
    if !witness.is_proper_subset_of(member) {
        return Err(Error::Precondition(format!(
            "witness {witness} must be a proper subset of {member}"
        )));
    }
    Ok(trace_indicator_poly(member, witness))
}

/// `y_{Y,Z} = prod_Z x * prod_{Y \ Z} (x - 1) - prod_Y x`, same shape as `f`.
pub fn y_poly(y: Subset, z: Subset) -> Result<MultilinearPoly> {
    if !z.is_proper_subset_of(y) {
        return Err(Error::Precondition(format!(
            "Z = {z} must be a proper subset of Y = {y}"
        )));
    }
    Ok(trace_indicator_poly(y, z))
}

fn trace_indicator_poly(outer: Subset, inner: Subset) -> MultilinearPoly {
    MultilinearPoly::product(inner, outer.difference(inner)).sub(&MultilinearPoly::monomial(outer))
}

/// `h_H = (sum_{j=1}^n x_j - d - 1) * prod_H x`, multilinearized.
pub fn h_poly(h: Subset, n: usize, d: usize) -> Result<MultilinearPoly> {
    if h.len() + 1 > d {
        return Err(Error::Precondition(format!(
            "|H| = {} must be at most d - 1 = {}",
            h.len(),
            d as i64 - 1
        )));
    }
    let mut p = MultilinearPoly::zero();
    // x_j * x_H = x_H when j is in H.
    p.add_term(h, BigInt::from(h.len() as i64 - d as i64 - 1));
    for j in (1..=n).filter(|&j| !h.contains(j)) {
        p.add_term(h.with(j), BigInt::one());
    }
    Ok(p)
}

/// `g_G = prod_G x`.
pub fn g_poly(g: Subset) -> MultilinearPoly {
    MultilinearPoly::monomial(g)
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest degree first reads more naturally.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let vars: Vec<String> = m.elements().map(|j| format!("x{j}")).collect();
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}
