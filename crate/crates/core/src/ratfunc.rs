//! Rational functions num/den over a coefficient field, stored reduced with
//! a monic denominator. `RationalFunction<Rational>` serves both as Q(a)
//! (the parameter field) and as Q(t); which one is a matter of position in
//! the tower, exactly as for `Polynomial`.

use std::cmp::Ordering;

use crate::factor::squarefree_decomposition;
use crate::field::{CoefficientField, SquareClass};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction<F: CoefficientField> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

/// Elements of Q(a): rational functions in the family parameter.
pub type ParamRat = RationalFunction<Rational>;

impl<F: CoefficientField> RationalFunction<F> {
    /// Reduce to lowest terms with a monic denominator. Panics when the
    /// denominator is the zero polynomial.
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(),
            };
        }
        // constant numerator or denominator: no gcd needed
        let (num, den) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        let lead_inv = den.leading().inverse().expect("nonzero denominator");
        RationalFunction {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn from_poly(num: Polynomial<F>) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The bare variable of this level.
    pub fn gen() -> Self {
        Self::from_poly(Polynomial::gen())
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    /// The underlying polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Polynomial<F>> {
        if self.den == Polynomial::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_poly(&self) -> bool {
        self.as_poly().is_some()
    }

    /// Evaluate at a point of the coefficient field; `None` at a pole.
    pub fn eval_at(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        d.inverse().map(|dinv| self.num.eval(x).mul(&dinv))
    }

    /// Substitute the variable by 1/variable.
    pub fn invert_variable(&self) -> Self {
        if self.num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        let ndeg = self.num.degree().unwrap();
        let ddeg = self.den.degree().unwrap();
        let mut num = self.num.reverse();
        let mut den = self.den.reverse();
        if ddeg >= ndeg {
            num = num.shift_up(ddeg - ndeg);
        } else {
            den = den.shift_up(ndeg - ddeg);
        }
        Self::new(num, den)
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow_int(&self, e: i32) -> Self {
        if e == 0 {
            return Self::constant(F::one());
        }
        let base = if e < 0 {
            self.inverse().expect("nonzero base for negative power")
        } else {
            self.clone()
        };
        let mag = e.unsigned_abs();
        Self::new(base.num.pow(mag), base.den.pow(mag))
    }

    pub fn degree_difference(&self) -> i64 {
        let n = self.num.degree().map_or(0, |d| d as i64);
        let d = self.den.degree().map_or(0, |d| d as i64);
        n - d
    }
}

impl<F: CoefficientField> CoefficientField for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(F::from_rational(q))
    }
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.num
            .canonical_cmp(&other.num)
            .then_with(|| self.den.canonical_cmp(&other.den))
    }
    fn is_square(&self) -> SquareClass {
        if self.num.is_zero() {
            return SquareClass::Yes;
        }
        // num/den reduced: each part must be a square up to the leading
        // scalar, which must itself be a square in the coefficient field.
        for part in [&self.num, &self.den] {
            let decomp = squarefree_decomposition(part).expect("nonzero part");
            if decomp.factors.iter().any(|(_, m)| m % 2 == 1) {
                return SquareClass::No;
            }
        }
        self.num.leading().is_square()
    }
    fn split_square_class(&self) -> SquareClass {
        if self.num.is_zero() {
            return SquareClass::Yes;
        }
        // parity of the divisor only; constants are squares geometrically
        for part in [&self.num, &self.den] {
            let decomp = squarefree_decomposition(part).expect("nonzero part");
            if decomp.factors.iter().any(|(_, m)| m % 2 == 1) {
                return SquareClass::No;
            }
        }
        SquareClass::Yes
    }
    fn render(&self, vars: &[&str]) -> String {
        let num = self.num.render(vars);
        match self.den.as_constant() {
            Some(c) if c == F::one() => num,
            _ => {
                let num = wrap_if_compound(&num);
                let den = render_denominator(&self.den, vars);
                format!("{num}/{den}")
            }
        }
    }
    fn is_negative_for_display(&self) -> bool {
        self.num.leading().is_negative_for_display()
    }
    fn field_name() -> &'static str {
        "fraction field"
    }
    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        crate::prs::fraction_free_gcd(a, b)
    }
}

fn wrap_if_compound(s: &str) -> String {
    let atomic = !s.is_empty()
        && !s.starts_with('-')
        && {
            let mut depth = 0usize;
            !s.chars().any(|ch| match ch {
                '(' => {
                    depth += 1;
                    false
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    false
                }
                '+' | '-' => depth == 0,
                _ => false,
            })
        };
    if atomic {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Denominators need parentheses unless they are a single variable, a
/// variable power, or a positive integer.
fn render_denominator<F: CoefficientField>(den: &Polynomial<F>, vars: &[&str]) -> String {
    let s = den.render(vars);
    let tight = s
        .chars()
        .all(|ch| ch.is_ascii_alphanumeric() || ch == '^' || ch == '_');
    if tight {
        s
    } else {
        format!("({s})")
    }
}

impl<F: CoefficientField> RationalFunction<F> {
    pub fn render_compact(&self, vars: &[&str]) -> String {
        CoefficientField::render(self, vars)
    }
}
