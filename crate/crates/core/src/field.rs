//! The coefficient-field abstraction behind the polynomial tower.
//!
//! Two fields matter in practice: Q itself and Q(a), the rational functions
//! in the family parameter. Both are exact. `RationalFunction<F>` implements
//! the trait again, which is how towers like Q(a)(t) arise.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::rational::{rational_sqrt, render_rational, Rational};

/// Outcome of an exact squareness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClass {
    Yes,
    No,
    /// The residue field is outside the decidable range.
    Unknown,
}

/// An exact field usable as polynomial coefficients.
pub trait CoefficientField: Clone + PartialEq + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul(&inv))
    }
    fn from_rational(q: &Rational) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
    /// Total order used only for deterministic canonical sorting.
    fn canonical_cmp(&self, other: &Self) -> Ordering;
    /// Exact squareness in this field.
    fn is_square(&self) -> SquareClass;
    /// Squareness for split-multiplicative tests. Over Q the residue field
    /// is taken at face value. Over a parameter function field the surface
    /// is one member of a complex family, so only the divisor parity of the
    /// tangent-cone coefficient matters: a constant scalar becomes a square
    /// after extending the constants.
    fn split_square_class(&self) -> SquareClass {
        self.is_square()
    }
    /// Render as a canonical expression string (parser grammar). `vars`
    /// names this element's own variable tower, innermost last; Q ignores it.
    fn render(&self, vars: &[&str]) -> String;
    /// Monic gcd of polynomials over this field. The default Euclidean loop
    /// is right for Q; fraction fields override it with a fraction-free
    /// pseudo-remainder sequence to avoid coefficient blowup.
    fn poly_gcd(
        a: &crate::polynomial::Polynomial<Self>,
        b: &crate::polynomial::Polynomial<Self>,
    ) -> crate::polynomial::Polynomial<Self>
    where
        Self: Sized,
    {
        crate::polynomial::monic_euclid_gcd(a, b)
    }
    /// True when the canonical rendering starts with a minus sign that can
    /// be absorbed into a surrounding sum separator.
    fn is_negative_for_display(&self) -> bool;
    fn field_name() -> &'static str;
}

impl CoefficientField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn is_square(&self) -> SquareClass {
        if rational_sqrt(self).is_some() {
            SquareClass::Yes
        } else {
            SquareClass::No
        }
    }
    fn render(&self, _vars: &[&str]) -> String {
        render_rational(self)
    }
    fn is_negative_for_display(&self) -> bool {
        self.is_negative()
    }
    fn field_name() -> &'static str {
        "Q"
    }
}
