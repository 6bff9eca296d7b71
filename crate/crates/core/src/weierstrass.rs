//! Weierstrass models over F(t), their standard invariants, admissible
//! coordinate changes, quartic-to-Weierstrass conversion, and the coordinate
//! flip to the infinite place.
//!
//! Long form (a1, a3 nonzero) is accepted on input and immediately
//! completed-square away; the characteristic is zero throughout, so nothing
//! is lost and every downstream computation sees y^2 = x^3 + a2 x^2 + a4 x
//! + a6.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{AlgebraError, LinearFactorField};
use crate::field::CoefficientField;
use crate::polynomial::Polynomial;
use crate::ratfunc::RationalFunction;

pub type Coeff<F> = RationalFunction<F>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WeierstrassError {
    #[error("quartic must have degree exactly 4")]
    QuarticDegree,
    #[error("marked point does not satisfy the quartic equation")]
    BadMarkedPoint,
    #[error("no marked point and no function-field root found; cannot convert")]
    NoRationalPoint,
    #[error("admissible transform requires u != 0")]
    ZeroScaling,
    #[error("jacobian j-invariant cross-check failed")]
    JacobianCrossCheck,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A Weierstrass model y^2 = x^3 + a2 x^2 + a4 x + a6 with coefficients in
/// F(t). May be degenerate (zero discriminant); fibration-level code checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel<F: CoefficientField> {
    a2: Coeff<F>,
    a4: Coeff<F>,
    a6: Coeff<F>,
}

/// The standard quantities attached to a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSet<F: CoefficientField> {
    pub b2: Coeff<F>,
    pub b4: Coeff<F>,
    pub b6: Coeff<F>,
    pub b8: Coeff<F>,
    pub c4: Coeff<F>,
    pub c6: Coeff<F>,
    pub delta: Coeff<F>,
}

impl<F: CoefficientField> InvariantSet<F> {
    /// c4^3 / delta; `None` when the model is degenerate. Computed on
    /// demand: the reduction to lowest terms is the most expensive step of
    /// the whole invariant set.
    pub fn j(&self) -> Option<Coeff<F>> {
        self.delta
            .inverse()
            .map(|dinv| self.c4.mul(&self.c4).mul(&self.c4).mul(&dinv))
    }

    /// Equality of j-invariants without reducing either side: compares
    /// c4^3 * delta' against c4'^3 * delta.
    pub fn same_j(&self, other: &InvariantSet<F>) -> bool {
        match (self.delta.is_zero(), other.delta.is_zero()) {
            (true, true) => return true,
            (false, false) => {}
            _ => return false,
        }
        let lhs = self
            .c4
            .mul(&self.c4)
            .mul(&self.c4)
            .mul(&other.delta);
        let rhs = other
            .c4
            .mul(&other.c4)
            .mul(&other.c4)
            .mul(&self.delta);
        lhs == rhs
    }
}

fn k<F: CoefficientField>(n: i64) -> Coeff<F> {
    Coeff::constant(F::from_int(n))
}

impl<F: CoefficientField> WeierstrassModel<F> {
    pub fn new_short(a2: Coeff<F>, a4: Coeff<F>, a6: Coeff<F>) -> Self {
        WeierstrassModel { a2, a4, a6 }
    }

    /// Accept a long model and complete the square:
    /// y -> y - (a1 x + a3)/2.
    pub fn from_long(
        a1: Coeff<F>,
        a2: Coeff<F>,
        a3: Coeff<F>,
        a4: Coeff<F>,
        a6: Coeff<F>,
    ) -> Self {
        let quarter = Coeff::constant(
            F::from_rational(&crate::rational::rat(1, 4)),
        );
        let half = Coeff::constant(F::from_rational(&crate::rational::rat(1, 2)));
        let a2n = a2.add(&a1.mul(&a1).mul(&quarter));
        let a4n = a4.add(&a1.mul(&a3).mul(&half));
        let a6n = a6.add(&a3.mul(&a3).mul(&quarter));
        WeierstrassModel {
            a2: a2n,
            a4: a4n,
            a6: a6n,
        }
    }

    pub fn a2(&self) -> &Coeff<F> {
        &self.a2
    }

    pub fn a4(&self) -> &Coeff<F> {
        &self.a4
    }

    pub fn a6(&self) -> &Coeff<F> {
        &self.a6
    }

    pub fn coefficients(&self) -> [&Coeff<F>; 3] {
        [&self.a2, &self.a4, &self.a6]
    }

    /// Standard b-, c-invariants, discriminant and j.
    pub fn invariants(&self) -> InvariantSet<F> {
        let (a2, a4, a6) = (&self.a2, &self.a4, &self.a6);
        let b2 = a2.mul(&k(4));
        let b4 = a4.mul(&k(2));
        let b6 = a6.mul(&k(4));
        let b8 = a2.mul(a6).mul(&k(4)).sub(&a4.mul(a4));
        let c4 = b2.mul(&b2).sub(&b4.mul(&k(24)));
        let c6 = b2
            .mul(&b2)
            .mul(&b2)
            .neg()
            .add(&b2.mul(&b4).mul(&k(36)))
            .sub(&b6.mul(&k(216)));
        let delta = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&b4.mul(&b4).mul(&b4).mul(&k(8)))
            .sub(&b6.mul(&b6).mul(&k(27)))
            .add(&b2.mul(&b4).mul(&b6).mul(&k(9)));
        InvariantSet {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            delta,
        }
    }

    pub fn discriminant(&self) -> Coeff<F> {
        self.invariants().delta
    }

    /// The (A, B) of y^2 = x^3 + A x + B after x -> x - a2/3.
    pub fn reduced_ab(&self) -> (Coeff<F>, Coeff<F>) {
        let third = Coeff::constant(F::from_rational(&crate::rational::rat(1, 3)));
        let a2sq = self.a2.mul(&self.a2);
        let a = self.a4.sub(&a2sq.mul(&third));
        let b = self
            .a6
            .sub(&self.a2.mul(&self.a4).mul(&third))
            .add(&a2sq.mul(&self.a2).mul(&Coeff::constant(F::from_rational(
                &crate::rational::rat(2, 27),
            ))));
        (a, b)
    }

    /// Standard change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
    /// The result is re-completed to short form.
    pub fn admissible_transform(
        &self,
        u: &Coeff<F>,
        r: &Coeff<F>,
        s: &Coeff<F>,
        t_shift: &Coeff<F>,
    ) -> Result<Self, WeierstrassError> {
        let uinv = u.inverse().ok_or(WeierstrassError::ZeroScaling)?;
        let (a1, a2, a3, a4, a6) = (
            Coeff::zero(),
            self.a2.clone(),
            Coeff::zero(),
            self.a4.clone(),
            self.a6.clone(),
        );
        let t = t_shift;
        let na1 = a1.add(&s.mul(&k(2))).mul(&uinv);
        let u2 = uinv.mul(&uinv);
        let na2 = a2
            .sub(&s.mul(&a1))
            .add(&r.mul(&k(3)))
            .sub(&s.mul(s))
            .mul(&u2);
        let u3 = u2.mul(&uinv);
        let na3 = a3.add(&r.mul(&a1)).add(&t.mul(&k(2))).mul(&u3);
        let u4 = u3.mul(&uinv);
        let na4 = a4
            .sub(&s.mul(&a3))
            .add(&r.mul(&a2).mul(&k(2)))
            .sub(&t.add(&r.mul(s)).mul(&a1))
            .add(&r.mul(r).mul(&k(3)))
            .sub(&s.mul(t).mul(&k(2)))
            .mul(&u4);
        let u6 = u4.mul(&u2);
        let na6 = a6
            .add(&r.mul(&a4))
            .add(&r.mul(r).mul(&a2))
            .add(&r.mul(r).mul(r))
            .sub(&t.mul(&a3))
            .sub(&t.mul(t))
            .sub(&r.mul(t).mul(&a1))
            .mul(&u6);
        Ok(Self::from_long(na1, na2, na3, na4, na6))
    }

    /// Pure rescaling by u.
    pub fn rescale(&self, u: &Coeff<F>) -> Result<Self, WeierstrassError> {
        self.admissible_transform(u, &Coeff::zero(), &Coeff::zero(), &Coeff::zero())
    }

    /// True when every coefficient is a polynomial in t.
    pub fn has_polynomial_coefficients(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_poly())
    }

    /// Rescale by 1/h for the least common denominator h, making all
    /// coefficients polynomial. The j-invariant is unchanged.
    pub fn clear_denominators(&self) -> Self {
        let mut h = Polynomial::one();
        for c in self.coefficients() {
            let den = c.denominator();
            let g = h.gcd(den);
            h = h.mul(&den.exact_div(&g).expect("gcd divides"));
        }
        if h.is_constant() {
            return self.clone();
        }
        let u = Coeff::new(Polynomial::one(), h);
        self.rescale(&u).expect("h is nonzero")
    }

    /// Substitute t = 1/tau and clear with u = tau^d for the minimal d, so
    /// the fiber at t = infinity becomes the fiber at tau = 0.
    pub fn localize_at_infinity(&self) -> (Self, i64) {
        let model = self.clear_denominators();
        let mut d = 0i64;
        for (c, weight) in model.coefficients().into_iter().zip([2i64, 4, 6]) {
            let deg = c
                .numerator()
                .degree()
                .map(|n| n as i64)
                .unwrap_or(0);
            d = d.max((deg + weight - 1) / weight);
        }
        let flip = |c: &Coeff<F>, weight: i64| -> Coeff<F> {
            let inv = c.invert_variable();
            let power = Coeff::from_poly(Polynomial::gen().pow((weight * d) as u32));
            inv.mul(&power)
        };
        let out = WeierstrassModel {
            a2: flip(&model.a2, 2),
            a4: flip(&model.a4, 4),
            a6: flip(&model.a6, 6),
        };
        debug_assert!(out.has_polynomial_coefficients());
        (out, d)
    }
}

/// A genus-one quartic v^2 = q(x) over F(t), with an optional marked point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticModel<F: CoefficientField> {
    q: Polynomial<Coeff<F>>,
    marked_point: Option<(Coeff<F>, Coeff<F>)>,
}

impl<F: CoefficientField> QuarticModel<F> {
    pub fn new(
        q: Polynomial<Coeff<F>>,
        marked_point: Option<(Coeff<F>, Coeff<F>)>,
    ) -> Result<Self, WeierstrassError> {
        if q.degree() != Some(4) {
            return Err(WeierstrassError::QuarticDegree);
        }
        if let Some((u0, v0)) = &marked_point {
            if q.eval(u0) != v0.mul(v0) {
                return Err(WeierstrassError::BadMarkedPoint);
            }
        }
        Ok(QuarticModel { q, marked_point })
    }

    pub fn quartic(&self) -> &Polynomial<Coeff<F>> {
        &self.q
    }

    pub fn marked_point(&self) -> Option<&(Coeff<F>, Coeff<F>)> {
        self.marked_point.as_ref()
    }

    /// Classical binary-quartic invariants I, J of
    /// a x^4 + b x^3 + c x^2 + d x + e.
    pub fn classical_invariants(&self) -> (Coeff<F>, Coeff<F>) {
        let [e, d, c, b, a] = [
            self.q.coeff(0),
            self.q.coeff(1),
            self.q.coeff(2),
            self.q.coeff(3),
            self.q.coeff(4),
        ];
        let i = a
            .mul(&e)
            .mul(&k(12))
            .sub(&b.mul(&d).mul(&k(3)))
            .add(&c.mul(&c));
        let j = a
            .mul(&c)
            .mul(&e)
            .mul(&k(72))
            .sub(&a.mul(&d).mul(&d).mul(&k(27)))
            .sub(&b.mul(&b).mul(&e).mul(&k(27)))
            .add(&b.mul(&c).mul(&d).mul(&k(9)))
            .sub(&c.mul(&c).mul(&c).mul(&k(2)));
        (i, j)
    }

    /// The Jacobian y^2 = x^3 - 27 I x - 27 J, used as the independent
    /// j-invariant oracle for the conversion below.
    pub fn jacobian(&self) -> WeierstrassModel<F> {
        let (i, j) = self.classical_invariants();
        WeierstrassModel::new_short(Coeff::zero(), i.mul(&k(-27)), j.mul(&k(-27)))
    }
}

impl<F: LinearFactorField> QuarticModel<F> {
    /// Convert to a Weierstrass model by the root-shift method: translate
    /// the marked point (or a function-field root) to x = 0, invert, clear
    /// to a cubic. The result's j-invariant is cross-checked against the
    /// Jacobian computed from the classical I, J invariants.
    pub fn to_weierstrass(&self) -> Result<WeierstrassModel<F>, WeierstrassError> {
        let (u0, v0) = match &self.marked_point {
            Some(p) => p.clone(),
            None => {
                let split = Coeff::<F>::linear_split(&self.q)?;
                let root = split
                    .roots
                    .first()
                    .map(|(r, _)| r.clone())
                    .ok_or(WeierstrassError::NoRationalPoint)?;
                (root, Coeff::zero())
            }
        };
        // shift the point to x = 0
        let shifted = self
            .q
            .compose(&Polynomial::new(vec![u0, Coeff::one()]));
        let [e, d, c, b, a] = [
            shifted.coeff(0),
            shifted.coeff(1),
            shifted.coeff(2),
            shifted.coeff(3),
            shifted.coeff(4),
        ];
        let model = if v0.is_zero() {
            // v^2 = x (a x^3 + b x^2 + c x + d); invert and clear:
            // Y^2 = X^3 + c X^2 + (b d) X + a d^2
            debug_assert!(e.is_zero());
            WeierstrassModel::new_short(c, b.mul(&d), a.mul(&d).mul(&d))
        } else {
            // v^2 = a x^4 + b x^3 + c x^2 + d x + q^2 with point (0, q):
            // long model with a1 = d/q, a2 = c - d^2/(4 q^2), a3 = 2 q b,
            // a4 = -4 q^2 a, a6 = a2 a4.
            let q = v0;
            let qinv = q.inverse().expect("v0 nonzero");
            let a1 = d.mul(&qinv);
            let a2 = c.sub(
                &d.mul(&d)
                    .mul(&qinv)
                    .mul(&qinv)
                    .mul(&Coeff::constant(F::from_rational(&crate::rational::rat(1, 4)))),
            );
            let a3 = q.mul(&b).mul(&k(2));
            let a4 = q.mul(&q).mul(&a).mul(&k(-4));
            let a6 = a2.mul(&a4);
            WeierstrassModel::from_long(a1, a2, a3, a4, a6)
        };

        // Independent route: the classical invariants.
        let jac = self.jacobian();
        if !model.invariants().same_j(&jac.invariants()) {
            return Err(WeierstrassError::JacobianCrossCheck);
        }
        Ok(model)
    }
}

/// JSON description of a single model: either Weierstrass coefficients or a
/// quartic with an optional marked point. Expression fields use the parser
/// grammar; `parameter` switches the coefficient field from Q to Q(a).
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ModelInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a3: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a4: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[String; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::QPoly;
    use crate::rational::{rat_int, Rational};

    type QT = RationalFunction<Rational>;

    fn t() -> QT {
        QT::gen()
    }

    fn c(n: i64) -> QT {
        k(n)
    }

    /// y^2 = x^3 + x^2 + t (the local nodal model with c(s) = s).
    fn nodal_model() -> WeierstrassModel<Rational> {
        WeierstrassModel::new_short(c(1), c(0), t())
    }

    #[test]
    fn invariants_of_nodal_model() {
        let inv = nodal_model().invariants();
        assert_eq!(inv.c4, c(16));
        // c6 = -64 - 864 t
        assert_eq!(inv.c6, QT::from_poly(QPoly::from_ints(&[-64, -864])));
        // delta = -16 t (27 t + 4) = -64 t - 432 t^2
        assert_eq!(inv.delta, QT::from_poly(QPoly::from_ints(&[0, -64, -432])));
        // b8 consistency: 4 b8 = b2 b6 - b4^2
        assert_eq!(inv.b8.mul(&c(4)), inv.b2.mul(&inv.b6).sub(&inv.b4.mul(&inv.b4)));
    }

    #[test]
    fn degenerate_cusp() {
        let w = WeierstrassModel::<Rational>::new_short(c(0), c(0), c(0));
        let inv = w.invariants();
        assert!(inv.delta.is_zero());
        assert!(inv.j().is_none());
    }

    #[test]
    fn c4_cubed_minus_c6_squared_is_1728_delta() {
        let models = [
            nodal_model(),
            WeierstrassModel::new_short(t(), c(3), t().mul(&t())),
            WeierstrassModel::from_long(t(), c(1), c(2), t(), c(7)),
        ];
        for w in models {
            let inv = w.invariants();
            let lhs = inv.c4.mul(&inv.c4).mul(&inv.c4).sub(&inv.c6.mul(&inv.c6));
            assert_eq!(lhs, inv.delta.mul(&c(1728)));
        }
    }

    #[test]
    fn transform_laws() {
        let w = nodal_model();
        let id = w
            .admissible_transform(&c(1), &c(0), &c(0), &c(0))
            .unwrap();
        assert_eq!(id, w);

        let scaled = w.rescale(&c(2)).unwrap();
        let d0 = w.discriminant();
        let d1 = scaled.discriminant();
        assert_eq!(d1.mul(&c(4096)), d0);

        let translated = w
            .admissible_transform(&c(1), &t(), &c(0), &c(0))
            .unwrap();
        assert_eq!(translated.discriminant(), d0);

        // composition of pure scalings
        let twice = scaled.rescale(&c(3)).unwrap();
        let once = w.rescale(&c(6)).unwrap();
        assert_eq!(twice, once);

        assert_eq!(
            w.rescale(&QT::zero()),
            Err(WeierstrassError::ZeroScaling)
        );
    }

    #[test]
    fn quartic_with_marked_point_j_1728() {
        // v^2 = x^4 + 1 with point (0, 1)
        let q: Polynomial<QT> = Polynomial::new(vec![c(1), c(0), c(0), c(0), c(1)]);
        let quartic = QuarticModel::new(q, Some((c(0), c(1)))).unwrap();
        let w = quartic.to_weierstrass().unwrap();
        let inv = w.invariants();
        assert!(inv.c6.is_zero());
        assert_eq!(inv.j(), Some(c(1728)));
    }

    #[test]
    fn quartic_without_point_errors() {
        // v^2 = x^4 + x + 2: no marked point, no root in Q(t)
        let q: Polynomial<QT> = Polynomial::new(vec![c(2), c(1), c(0), c(0), c(1)]);
        let quartic = QuarticModel::new(q, None).unwrap();
        assert_eq!(
            quartic.to_weierstrass(),
            Err(WeierstrassError::NoRationalPoint)
        );
    }

    #[test]
    fn quartic_with_root_converts() {
        // v^2 = x (x - 1) (x - 2) (x - 3): root route via x = 0
        let mut q: Polynomial<QT> = Polynomial::one();
        for r in 0..4 {
            q = q.mul(&Polynomial::linear_from_root(&c(r)));
        }
        let quartic = QuarticModel::new(q, Some((c(0), c(0)))).unwrap();
        let w = quartic.to_weierstrass().unwrap();
        assert!(!w.discriminant().is_zero());
    }

    #[test]
    fn bad_marked_point_rejected() {
        let q: Polynomial<QT> = Polynomial::new(vec![c(1), c(0), c(0), c(0), c(1)]);
        assert_eq!(
            QuarticModel::new(q, Some((c(0), c(2)))).unwrap_err(),
            WeierstrassError::BadMarkedPoint
        );
    }

    #[test]
    fn localize_simple_cusp_family() {
        // y^2 = x^3 + t: tau-model y^2 = x^3 + tau^5
        let w = WeierstrassModel::<Rational>::new_short(c(0), c(0), t());
        let (flip, d) = w.localize_at_infinity();
        assert_eq!(d, 1);
        assert_eq!(
            flip.a6(),
            &QT::from_poly(QPoly::from_ints(&[0, 0, 0, 0, 0, 1]))
        );
        // v_{tau=0}(delta) = 10
        let delta = flip.discriminant();
        let tau = QPoly::from_ints(&[0, 1]);
        assert_eq!(delta.numerator().multiplicity_of(&tau), 10);

        // constant model untouched
        let w = WeierstrassModel::<Rational>::new_short(c(0), c(0), c(1));
        let (flip, d) = w.localize_at_infinity();
        assert_eq!(d, 0);
        assert_eq!(flip, w);
    }

    #[test]
    fn localize_j_round_trip() {
        let w = WeierstrassModel::new_short(t(), c(5), t().mul(&t()).add(&c(1)));
        let (flip, _) = w.localize_at_infinity();
        let j_t = w.invariants().j().unwrap();
        let j_tau = flip.invariants().j().unwrap();
        assert_eq!(j_tau, j_t.invert_variable());
    }
}
