//! Places of the projective line over the coefficient field: monic
//! polynomials in the base variable, plus the point at infinity.

use crate::factor::AlgebraError;
use crate::field::CoefficientField;
use crate::polynomial::Polynomial;
use crate::ratfunc::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePlace<F: CoefficientField> {
    pi: Polynomial<F>,
    asserted_irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place<F: CoefficientField> {
    Finite(FinitePlace<F>),
    Infinite,
}

impl<F: CoefficientField> FinitePlace<F> {
    /// Build a finite place from a monic nonconstant polynomial. Degree-one
    /// places are automatically irreducible; everything else starts out
    /// unasserted and is refused by valuation-taking code until the caller
    /// asserts irreducibility.
    pub fn new(pi: Polynomial<F>) -> Result<Self, AlgebraError> {
        if pi.is_constant() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let pi = pi.monic();
        let asserted_irreducible = pi.degree() == Some(1);
        Ok(FinitePlace {
            pi,
            asserted_irreducible,
        })
    }

    pub fn from_root(root: &F) -> Self {
        FinitePlace {
            pi: Polynomial::linear_from_root(root),
            asserted_irreducible: true,
        }
    }

    pub fn assert_irreducible(&mut self) {
        self.asserted_irreducible = true;
    }

    pub fn is_asserted_irreducible(&self) -> bool {
        self.asserted_irreducible
    }

    pub fn polynomial(&self) -> &Polynomial<F> {
        &self.pi
    }

    pub fn degree(&self) -> usize {
        self.pi.degree().expect("places are nonconstant")
    }

    /// For a linear place t - r, the point r.
    pub fn linear_root(&self) -> Option<F> {
        if self.degree() == 1 {
            Some(self.pi.coeff(0).neg())
        } else {
            None
        }
    }
}

impl<F: CoefficientField> Place<F> {
    pub fn finite(pi: Polynomial<F>) -> Result<Self, AlgebraError> {
        Ok(Place::Finite(FinitePlace::new(pi)?))
    }

    pub fn at_root(root: &F) -> Self {
        Place::Finite(FinitePlace::from_root(root))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree(),
            Place::Infinite => 1,
        }
    }

    /// Finite places sorted canonically, infinite place last.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.pi.canonical_cmp(&b.pi),
            (Place::Finite(_), Place::Infinite) => Ordering::Less,
            (Place::Infinite, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
        }
    }

    pub fn render(&self, vars: &[&str]) -> String {
        match self {
            Place::Finite(p) => p.pi.render(vars),
            Place::Infinite => "infinity".to_string(),
        }
    }
}

/// Valuation value: finite order or +infinity (only for the zero function).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinity => None,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            Valuation::Finite(n) => n > 0,
            Valuation::Infinity => true,
        }
    }
}

/// Order of a nonzero polynomial at a finite place.
fn poly_order<F: CoefficientField>(p: &Polynomial<F>, pi: &Polynomial<F>) -> i64 {
    p.multiplicity_of(pi) as i64
}

/// The pi-adic (or infinite-place) valuation of a rational function.
/// Finite places must be asserted irreducible.
pub fn valuation_at<F: CoefficientField>(
    f: &RationalFunction<F>,
    place: &Place<F>,
) -> Result<Valuation, AlgebraError> {
    if f.is_zero() {
        return Ok(Valuation::Infinity);
    }
    match place {
        Place::Finite(p) => {
            if !p.asserted_irreducible {
                return Err(AlgebraError::UnverifiedPlace);
            }
            Ok(Valuation::Finite(
                poly_order(f.numerator(), &p.pi) - poly_order(f.denominator(), &p.pi),
            ))
        }
        Place::Infinite => {
            let n = f.numerator().degree().unwrap() as i64;
            let d = f.denominator().degree().unwrap() as i64;
            Ok(Valuation::Finite(d - n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::QPoly;
    use crate::rational::{rat_int, Rational};
    use crate::ratfunc::ParamRat;

    type QT = RationalFunction<Rational>;

    #[test]
    fn basic_valuations() {
        // v_t(t^3/(t-1)) = 3
        let f = QT::new(QPoly::from_ints(&[0, 0, 0, 1]), QPoly::from_ints(&[-1, 1]));
        let at_zero = Place::at_root(&rat_int(0));
        assert_eq!(valuation_at(&f, &at_zero), Ok(Valuation::Finite(3)));

        // v_inf(t^2 + 1) = -2
        let g = QT::from_poly(QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(valuation_at(&g, &Place::Infinite), Ok(Valuation::Finite(-2)));

        // zero function
        assert_eq!(
            valuation_at(&QT::zero(), &Place::Infinite),
            Ok(Valuation::Infinity)
        );
    }

    #[test]
    fn valuation_over_parameter_field() {
        // v_{t-a}((t-a)^2 t) = 2 over Q(a)
        let a = ParamRat::gen();
        let t_minus_a: Polynomial<ParamRat> = Polynomial::linear_from_root(&a);
        let f = RationalFunction::from_poly(
            t_minus_a.pow(2).mul(&Polynomial::gen()),
        );
        let place = Place::at_root(&a);
        assert_eq!(valuation_at(&f, &place), Ok(Valuation::Finite(2)));
    }

    #[test]
    fn unverified_place_refused() {
        let quad = FinitePlace::new(QPoly::from_ints(&[1, 0, 1])).unwrap();
        assert!(!quad.is_asserted_irreducible());
        let f = QT::from_poly(QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(
            valuation_at(&f, &Place::Finite(quad.clone())),
            Err(AlgebraError::UnverifiedPlace)
        );
        let mut quad = quad;
        quad.assert_irreducible();
        assert_eq!(
            valuation_at(&f, &Place::Finite(quad)),
            Ok(Valuation::Finite(1))
        );
    }

    #[test]
    fn valuation_additive_under_multiplication() {
        let f = QT::new(QPoly::from_ints(&[0, 1]), QPoly::from_ints(&[-1, 1]));
        let g = QT::new(QPoly::from_ints(&[0, 0, 3]), QPoly::from_ints(&[2, 1]));
        for place in [
            Place::at_root(&rat_int(0)),
            Place::at_root(&rat_int(1)),
            Place::Infinite,
        ] {
            let vf = valuation_at(&f, &place).unwrap().finite().unwrap();
            let vg = valuation_at(&g, &place).unwrap().finite().unwrap();
            let vfg = valuation_at(&CoefficientField::mul(&f, &g), &place)
                .unwrap()
                .finite()
                .unwrap();
            assert_eq!(vfg, vf + vg);
        }
    }
}
