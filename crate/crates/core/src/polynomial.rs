//! Dense univariate polynomials over an exact coefficient field.
//!
//! The variable is positional, not stored: which symbol a polynomial is "in"
//! is decided by the tower level it occupies (Q(a) elements are polynomials
//! in `a`, base polynomials are in `t`, and so on). Mixing levels is a type
//! error, not a runtime one. Rendering takes the variable name explicitly.

use std::cmp::Ordering;

use crate::field::CoefficientField;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<F: CoefficientField> {
    /// Coefficients by ascending power, no trailing zeros. Empty = zero.
    coeffs: Vec<F>,
}

impl<F: CoefficientField> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The generator, i.e. the bare variable.
    pub fn gen() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&n| F::from_int(n)).collect())
    }

    /// Monic `x - root`.
    pub fn linear_from_root(root: &F) -> Self {
        Self::new(vec![root.neg(), F::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.coeffs.len() {
            0 => Some(F::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Leading coefficient; zero polynomial gives zero.
    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == F::one())
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the
    /// root at the origin. Zero polynomial gives `None`.
    pub fn order_at_origin(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.coeffs.iter().take_while(|c| c.is_zero()).count())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&F::from_int(k as i64)))
            .collect();
        Self::new(out)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation after lifting coefficients into another field.
    pub fn eval_map<G: CoefficientField>(&self, x: &G, lift: impl Fn(&F) -> G) -> G {
        let mut acc = G::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&lift(c));
        }
        acc
    }

    pub fn map_coeffs<G: CoefficientField>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(|c| f(c)).collect())
    }

    pub fn try_map_coeffs<G: CoefficientField, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<Polynomial<G>, E> {
        let coeffs: Result<Vec<G>, E> = self.coeffs.iter().map(|c| f(c)).collect();
        Ok(Polynomial::new(coeffs?))
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// x^deg * p(1/x): the coefficient sequence reversed.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dlead = divisor.leading();
        let dinv = dlead.inverse()?;
        let ddeg = divisor.degree().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quo = vec![F::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let factor = rem.leading().mul(&dinv);
            let shift = rdeg - ddeg;
            quo[shift] = factor.clone();
            rem = rem.sub(&divisor.scale(&factor).shift_up(shift));
        }
        Some((Self::new(quo), rem))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Largest k with divisor^k dividing self; self must be nonzero.
    pub fn multiplicity_of(&self, divisor: &Self) -> usize {
        assert!(!self.is_zero() && !divisor.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(divisor) {
            k += 1;
            cur = q;
        }
        k
    }

    /// Divide by the leading coefficient. Zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading().inverse() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0. Dispatches on the coefficient field so
    /// fraction fields can use a fraction-free remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        F::poly_gcd(self, other)
    }

    /// Ordering by degree, then lexicographic on the coefficient sequence
    /// from the leading coefficient down. Used for deterministic reports.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
            match a.canonical_cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Canonical rendering in the parser grammar, descending powers.
    /// `vars` is the variable stack for this value's tower, innermost last;
    /// the prefix names the coefficient field's own variables.
    pub fn render(&self, vars: &[&str]) -> String {
        let (var, coeff_vars) = split_vars(vars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative_for_display() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_term(&mag, k, var, coeff_vars));
        }
        out
    }
}

fn split_vars<'a>(vars: &'a [&'a str]) -> (&'a str, &'a [&'a str]) {
    match vars.split_last() {
        Some((v, rest)) => (v, rest),
        None => ("_", &[]),
    }
}

/// Plain monic Euclidean gcd; the default `poly_gcd` for base fields.
pub fn monic_euclid_gcd<F: CoefficientField>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> Polynomial<F> {
    let mut a = a.monic();
    let mut b = b.monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("b nonzero");
        a = b;
        b = r.monic();
    }
    a
}

/// One term `c * var^k` with c already nonnegative-for-display.
fn render_term<F: CoefficientField>(c: &F, k: usize, var: &str, coeff_vars: &[&str]) -> String {
    let pow = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if pow.is_empty() {
        return render_factor(c, coeff_vars);
    }
    if *c == F::one() {
        return pow;
    }
    format!("{}*{}", render_factor(c, coeff_vars), pow)
}

/// Wrap a coefficient in parentheses when it would not survive being
/// spliced into a product (any top-level + or -).
pub(crate) fn render_factor<F: CoefficientField>(c: &F, coeff_vars: &[&str]) -> String {
    let s = c.render(coeff_vars);
    let mut depth = 0usize;
    let needs_parens = s.char_indices().any(|(i, ch)| match ch {
        '(' => {
            depth += 1;
            false
        }
        ')' => {
            depth = depth.saturating_sub(1);
            false
        }
        '+' => depth == 0,
        '-' => depth == 0 && i > 0,
        _ => false,
    }) || s.starts_with('-');
    if needs_parens {
        format!("({s})")
    } else {
        s
    }
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate<F: CoefficientField>(points: &[(F, F)]) -> Polynomial<F> {
    let mut acc = Polynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Polynomial::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi.sub(xj);
            let inv = denom.inverse().expect("distinct interpolation nodes");
            basis = basis.mul(&Polynomial::new(vec![xj.neg().mul(&inv), inv]));
        }
        acc = acc.add(&basis);
    }
    acc
}

pub type QPoly = Polynomial<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> QPoly {
        QPoly::from_ints(coeffs)
    }

    #[test]
    fn normalization_trims_trailing_zeros() {
        let q = QPoly::new(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(q.degree(), Some(0));
        assert!(QPoly::new(vec![rat_int(0)]).is_zero());
        assert_eq!(QPoly::zero().degree(), None);
    }

    #[test]
    fn div_rem_basic() {
        // t^2 - 1 = (t - 1)(t + 1)
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_shared_root() {
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1])), p(&[1]));
        assert!(QPoly::zero().gcd(&QPoly::zero()).is_zero());
    }

    #[test]
    fn compose_shift() {
        // (t+1)^2 = t^2 + 2t + 1
        let sq = QPoly::gen().pow(2);
        assert_eq!(sq.compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn render_quadratic() {
        assert_eq!(p(&[1, -2, 1]).render(&["t"]), "t^2 - 2*t + 1");
        assert_eq!(QPoly::zero().render(&["t"]), "0");
        assert_eq!(p(&[0, -1]).render(&["t"]), "-t");
        let half = QPoly::new(vec![rat(1, 2), rat(-3, 2)]);
        assert_eq!(half.render(&["t"]), "-3/2*t + 1/2");
    }

    #[test]
    fn interpolate_parabola() {
        let pts = [
            (rat_int(0), rat_int(1)),
            (rat_int(1), rat_int(2)),
            (rat_int(2), rat_int(5)),
        ];
        assert_eq!(interpolate(&pts), p(&[1, 0, 1]));
    }

    #[test]
    fn multiplicity_counting() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 1]));
        assert_eq!(f.multiplicity_of(&p(&[-1, 1])), 3);
        assert_eq!(f.multiplicity_of(&p(&[1, 1])), 1);
        assert_eq!(f.multiplicity_of(&p(&[2, 1])), 0);
    }
}
