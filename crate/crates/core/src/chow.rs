//! Higher Chow cycles on Neron polygons: tame symbols on the projective
//! line, Weil reciprocity, the winding (circulation) invariant, and the
//! explicit local cycle on the nodal fiber of y^2 = x^3 + x^2 + c(s).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{AlgebraError, LinearFactorField};
use crate::field::CoefficientField;
use crate::polynomial::QPoly;
use crate::rational::{parse_rational, render_rational, Rational};
use crate::ratfunc::RationalFunction;

type QFunc = RationalFunction<Rational>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChowError {
    #[error("rational function must be nonzero")]
    ZeroFunction,
    #[error("marked points on a component must be distinct")]
    DegenerateMarkedPoints,
    #[error("component count must match the polygon")]
    ComponentMismatch,
    #[error("divisor of a component function is not supported on the marked points")]
    DivisorNotSupported,
    #[error("cocycle condition fails at a node: orders do not cancel")]
    CocycleViolation,
    #[error("zero or irrational zero/pole detected; reciprocity needs a rational divisor")]
    IrrationalDivisor,
    #[error("local cycle input must be a nonzero polynomial with c(0) = 0")]
    BadLocalInput,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A cycle of n projective lines, each carrying the two marked points lying
/// over the nodes shared with its neighbours. For n = 1 the single
/// component has both marked points over the unique node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeronPolygon {
    marked: Vec<(Rational, Rational)>,
}

impl NeronPolygon {
    /// `marked[i] = (p_minus, p_plus)` for component i; `p_plus` of
    /// component i glues to `p_minus` of component i+1 (cyclically).
    pub fn new(marked: Vec<(Rational, Rational)>) -> Result<Self, ChowError> {
        if marked.is_empty() {
            return Err(ChowError::ComponentMismatch);
        }
        if marked.iter().any(|(a, b)| a == b) {
            return Err(ChowError::DegenerateMarkedPoints);
        }
        Ok(NeronPolygon { marked })
    }

    pub fn components(&self) -> usize {
        self.marked.len()
    }

    pub fn marked_points(&self, i: usize) -> &(Rational, Rational) {
        &self.marked[i]
    }
}

/// An element of CH^1(D, 1) on the polygon: one nonzero rational function
/// per component whose divisors cancel at the nodes. Such a function is
/// necessarily c * ((u - p_plus)/(u - p_minus))^w with a common w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonCycle {
    polygon: NeronPolygon,
    functions: Vec<QFunc>,
    winding: i64,
}

fn order_at(f: &QFunc, p: &Rational) -> i64 {
    let lin = QPoly::linear_from_root(p);
    let vn = if f.numerator().is_zero() {
        0
    } else {
        f.numerator().multiplicity_of(&lin) as i64
    };
    let vd = f.denominator().multiplicity_of(&lin) as i64;
    vn - vd
}

impl PolygonCycle {
    pub fn new(polygon: NeronPolygon, functions: Vec<QFunc>) -> Result<Self, ChowError> {
        let n = polygon.components();
        if functions.len() != n {
            return Err(ChowError::ComponentMismatch);
        }
        let mut orders_plus = Vec::with_capacity(n);
        let mut orders_minus = Vec::with_capacity(n);
        for (i, f) in functions.iter().enumerate() {
            if f.is_zero() {
                return Err(ChowError::ZeroFunction);
            }
            let (p_minus, p_plus) = polygon.marked_points(i);
            let a = order_at(f, p_plus);
            let b = order_at(f, p_minus);
            // degree of div on P^1 is zero including infinity; supported on
            // the marked points means everything else (incl. infinity) is
            // order zero
            let lin_p = QPoly::linear_from_root(p_plus).pow(a.unsigned_abs() as u32);
            let lin_m = QPoly::linear_from_root(p_minus).pow(b.unsigned_abs() as u32);
            let mut num = f.numerator().clone();
            let mut den = f.denominator().clone();
            for (ord, lin) in [(a, lin_p), (b, lin_m)] {
                if ord >= 0 {
                    num = num.exact_div(&lin).ok_or(ChowError::DivisorNotSupported)?;
                } else {
                    den = den.exact_div(&lin).ok_or(ChowError::DivisorNotSupported)?;
                }
            }
            if !num.is_constant() || !den.is_constant() {
                return Err(ChowError::DivisorNotSupported);
            }
            if a + b != 0 {
                // nonzero order at infinity
                return Err(ChowError::DivisorNotSupported);
            }
            orders_plus.push(a);
            orders_minus.push(b);
        }
        // cocycle at the node between components i and i+1
        for i in 0..n {
            let j = (i + 1) % n;
            if orders_plus[i] + orders_minus[j] != 0 {
                return Err(ChowError::CocycleViolation);
            }
        }
        let winding = orders_plus[0];
        debug_assert!(orders_plus.iter().all(|&w| w == winding));
        Ok(PolygonCycle {
            polygon,
            functions,
            winding,
        })
    }

    pub fn polygon(&self) -> &NeronPolygon {
        &self.polygon
    }

    pub fn functions(&self) -> &[QFunc] {
        &self.functions
    }

    /// Pointwise product of two cycles on the same polygon.
    pub fn combine(&self, other: &PolygonCycle) -> Result<PolygonCycle, ChowError> {
        if self.polygon != other.polygon {
            return Err(ChowError::ComponentMismatch);
        }
        let functions = self
            .functions
            .iter()
            .zip(&other.functions)
            .map(|(f, g)| f.mul(g))
            .collect();
        PolygonCycle::new(self.polygon.clone(), functions)
    }
}

/// The circulation integer w with div(f_i) = w([p_i_plus] - [p_i_minus]).
pub fn winding_number(cycle: &PolygonCycle) -> i64 {
    cycle.winding
}

/// A point of the projective line over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePoint {
    Finite(Rational),
    Infinity,
}

fn valuation_and_unit(f: &QFunc, p: &LinePoint) -> (i64, Rational) {
    match p {
        LinePoint::Finite(x) => {
            let lin = QPoly::linear_from_root(x);
            let vn = f.numerator().multiplicity_of(&lin) as i64;
            let vd = f.denominator().multiplicity_of(&lin) as i64;
            let num_unit = f
                .numerator()
                .exact_div(&lin.pow(vn as u32))
                .expect("multiplicity")
                .eval(x);
            let den_unit = f
                .denominator()
                .exact_div(&lin.pow(vd as u32))
                .expect("multiplicity")
                .eval(x);
            (vn - vd, num_unit / den_unit)
        }
        LinePoint::Infinity => {
            let dn = f.numerator().degree().expect("nonzero") as i64;
            let dd = f.denominator().degree().expect("nonzero") as i64;
            let unit = f.numerator().leading() / f.denominator().leading();
            (dd - dn, unit)
        }
    }
}

/// Tame symbol (-1)^{v(f)v(g)} (f^{v(g)} / g^{v(f)})(p), evaluated exactly.
pub fn tame_symbol(f: &QFunc, g: &QFunc, p: &LinePoint) -> Result<Rational, ChowError> {
    if f.is_zero() || g.is_zero() {
        return Err(ChowError::ZeroFunction);
    }
    let (vf, uf) = valuation_and_unit(f, p);
    let (vg, ug) = valuation_and_unit(g, p);
    let sign = if (vf * vg) % 2 == 0 { 1 } else { -1 };
    let pow = |base: &Rational, e: i64| -> Rational {
        let mag = base.pow(i32::try_from(e.abs()).expect("small exponent"));
        if e >= 0 {
            mag
        } else {
            mag.recip()
        }
    };
    Ok(Rational::from_integer(sign.into()) * pow(&uf, vg) / pow(&ug, vf))
}

/// All finite points where f or g has a zero or pole. Errors when the
/// divisor is not entirely rational.
fn rational_support(f: &QFunc, g: &QFunc) -> Result<Vec<Rational>, ChowError> {
    let mut points: Vec<Rational> = Vec::new();
    for poly in [
        f.numerator(),
        f.denominator(),
        g.numerator(),
        g.denominator(),
    ] {
        if poly.is_constant() {
            continue;
        }
        let split = Rational::linear_split(poly)?;
        if !split.residual.is_constant() {
            return Err(ChowError::IrrationalDivisor);
        }
        for (root, _) in split.roots {
            if !points.contains(&root) {
                points.push(root);
            }
        }
    }
    points.sort();
    Ok(points)
}

/// Product of the tame symbols of (f, g) over all zeros/poles and infinity;
/// equal to 1 by Weil reciprocity.
pub fn weil_reciprocity_check(f: &QFunc, g: &QFunc) -> Result<bool, ChowError> {
    if f.is_zero() || g.is_zero() {
        return Err(ChowError::ZeroFunction);
    }
    let mut product = Rational::from_integer(1.into());
    for p in rational_support(f, g)? {
        product *= tame_symbol(f, g, &LinePoint::Finite(p))?;
    }
    product *= tame_symbol(f, g, &LinePoint::Infinity)?;
    Ok(product == Rational::from_integer(1.into()))
}

/// The local cycle on the nodal special fiber of y^2 = x^3 + x^2 + c(s),
/// c in s Q[s] nonzero: the boundary of the symbol
/// {(y - x)/(y + x), -c/x^3} restricted along the fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCycle {
    pub cycle: PolygonCycle,
    /// ord_s of c, which is the order of the second symbol entry along the
    /// fiber (x is a unit there).
    pub vanishing_order: usize,
}

/// Parametrize the nodal cubic y^2 = x^3 + x^2 by x = u^2 - 1,
/// y = u(u^2 - 1) and restrict (y - x)/(y + x).
pub fn nodal_restriction() -> QFunc {
    let x = QPoly::from_ints(&[-1, 0, 1]); // u^2 - 1
    let y = QPoly::from_ints(&[0, -1, 0, 1]); // u^3 - u
    let num = y.sub(&x);
    let den = y.add(&x);
    QFunc::new(num, den)
}

pub fn construct_local_cycle(c: &QPoly) -> Result<LocalCycle, ChowError> {
    if c.is_zero() {
        return Err(ChowError::BadLocalInput);
    }
    let ord = c.order_at_origin().expect("nonzero");
    if ord == 0 {
        return Err(ChowError::BadLocalInput);
    }
    // Tame symbol along the fiber component: the first entry restricts to a
    // unit-valued function, the second has order ord_s(c), so the boundary
    // is the restriction raised to that order.
    let f = nodal_restriction();
    let lifted = QFunc::new(
        f.numerator().pow(ord as u32),
        f.denominator().pow(ord as u32),
    );
    // node preimages u = -1 (minus branch) and u = +1 (plus branch)
    let polygon = NeronPolygon::new(vec![(
        Rational::from_integer((-1).into()),
        Rational::from_integer(1.into()),
    )])?;
    let cycle = PolygonCycle::new(polygon, vec![lifted])?;
    debug_assert_eq!(winding_number(&cycle).unsigned_abs() as usize, ord);
    Ok(LocalCycle {
        cycle,
        vanishing_order: ord,
    })
}

/// JSON form of a polygon cycle: component functions as canonical
/// expression strings in u, marked points as rationals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonCycleJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub components: Vec<CycleComponentJson>,
    pub winding: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycleComponentJson {
    pub function: String,
    pub marked_minus: String,
    pub marked_plus: String,
}

impl PolygonCycleJson {
    pub fn from_cycle(cycle: &PolygonCycle) -> Self {
        let components = cycle
            .functions()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let (m, p) = cycle.polygon().marked_points(i);
                CycleComponentJson {
                    function: f.render_compact(&["u"]),
                    marked_minus: render_rational(m),
                    marked_plus: render_rational(p),
                }
            })
            .collect();
        PolygonCycleJson {
            schema: Some("1".to_string()),
            components,
            winding: winding_number(cycle),
        }
    }

    pub fn into_cycle(self) -> Result<PolygonCycle, ChowError> {
        let mut marked = Vec::new();
        let mut functions = Vec::new();
        for comp in &self.components {
            let m = parse_rational(&comp.marked_minus).ok_or(ChowError::BadLocalInput)?;
            let p = parse_rational(&comp.marked_plus).ok_or(ChowError::BadLocalInput)?;
            let f = crate::expr::parse_tower1(&comp.function, "u")
                .map_err(|_| ChowError::BadLocalInput)?;
            marked.push((m, p));
            functions.push(f);
        }
        PolygonCycle::new(NeronPolygon::new(marked)?, functions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn f(num: &[i64], den: &[i64]) -> QFunc {
        QFunc::new(QPoly::from_ints(num), QPoly::from_ints(den))
    }

    #[test]
    fn tame_symbol_steinberg() {
        // {u, 1 - u} at u = 0 -> 1
        let u = f(&[0, 1], &[1]);
        let one_minus_u = f(&[1, -1], &[1]);
        assert_eq!(
            tame_symbol(&u, &one_minus_u, &LinePoint::Finite(rat_int(0))).unwrap(),
            rat_int(1)
        );
        // {u, u} at 0 -> -1
        assert_eq!(
            tame_symbol(&u, &u, &LinePoint::Finite(rat_int(0))).unwrap(),
            rat_int(-1)
        );
        // {u, u - 1} at 1 -> 1
        let u_minus_one = f(&[-1, 1], &[1]);
        assert_eq!(
            tame_symbol(&u, &u_minus_one, &LinePoint::Finite(rat_int(1))).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn reciprocity_basic_pairs() {
        let u = f(&[0, 1], &[1]);
        let u_minus_one = f(&[-1, 1], &[1]);
        // symbols at 0, 1, infinity are -1, 1, -1
        assert_eq!(
            tame_symbol(&u, &u_minus_one, &LinePoint::Finite(rat_int(0))).unwrap(),
            rat_int(-1)
        );
        assert_eq!(
            tame_symbol(&u, &u_minus_one, &LinePoint::Infinity).unwrap(),
            rat_int(-1)
        );
        assert!(weil_reciprocity_check(&u, &u_minus_one).unwrap());
        assert!(weil_reciprocity_check(&u, &u).unwrap());
    }

    #[test]
    fn reciprocity_rejects_irrational_divisor() {
        let u2_plus_one = f(&[1, 0, 1], &[1]);
        let u = f(&[0, 1], &[1]);
        assert_eq!(
            weil_reciprocity_check(&u2_plus_one, &u),
            Err(ChowError::IrrationalDivisor)
        );
    }

    #[test]
    fn winding_of_basic_loop() {
        // n = 1, f = (u - 1)/(u + 1), marked -1, +1
        let polygon = NeronPolygon::new(vec![(rat_int(-1), rat_int(1))]).unwrap();
        let loop_f = f(&[-1, 1], &[1, 1]);
        let cycle = PolygonCycle::new(polygon.clone(), vec![loop_f.clone()]).unwrap();
        assert_eq!(winding_number(&cycle), 1);

        // constants wind zero
        let const_cycle =
            PolygonCycle::new(polygon.clone(), vec![f(&[5], &[1])]).unwrap();
        assert_eq!(winding_number(&const_cycle), 0);

        // squaring doubles
        let squared = cycle.combine(&cycle).unwrap();
        assert_eq!(winding_number(&squared), 2);
        // additivity against the constant
        assert_eq!(
            winding_number(&cycle.combine(&const_cycle).unwrap()),
            1
        );
    }

    #[test]
    fn cocycle_violation_detected() {
        // two components: orders at the shared nodes must cancel
        let polygon =
            NeronPolygon::new(vec![(rat_int(0), rat_int(1)), (rat_int(0), rat_int(1))])
                .unwrap();
        // f1 winds +1, f2 winds -1: cocycle fails at the node
        let f1 = f(&[-1, 1], &[0, 1]);
        let f2 = f(&[0, 1], &[-1, 1]);
        assert_eq!(
            PolygonCycle::new(polygon.clone(), vec![f1.clone(), f2]),
            Err(ChowError::CocycleViolation)
        );
        // matching windings are fine
        let ok = PolygonCycle::new(polygon, vec![f1.clone(), f1]).unwrap();
        assert_eq!(winding_number(&ok), 1);
    }

    #[test]
    fn divisor_support_enforced() {
        let polygon = NeronPolygon::new(vec![(rat_int(-1), rat_int(1))]).unwrap();
        // zero/pole at u = 2 is off the marked points
        let bad = f(&[-2, 1], &[1, 1]);
        assert_eq!(
            PolygonCycle::new(polygon, vec![bad]),
            Err(ChowError::DivisorNotSupported)
        );
    }

    #[test]
    fn nodal_restriction_simplifies() {
        // (y - x)/(y + x) on x = u^2 - 1, y = u^3 - u reduces to
        // (u - 1)/(u + 1)
        assert_eq!(nodal_restriction(), f(&[-1, 1], &[1, 1]));
    }

    #[test]
    fn local_cycle_windings() {
        // c = s
        let c = QPoly::from_ints(&[0, 1]);
        let z = construct_local_cycle(&c).unwrap();
        assert_eq!(winding_number(&z.cycle).abs(), 1);
        // c = s^3
        let c = QPoly::from_ints(&[0, 0, 0, 1]);
        let z = construct_local_cycle(&c).unwrap();
        assert_eq!(winding_number(&z.cycle).abs(), 3);
        // c = s^2 + s has order 1
        let c = QPoly::from_ints(&[0, 1, 1]);
        let z = construct_local_cycle(&c).unwrap();
        assert_eq!(winding_number(&z.cycle).abs(), 1);
        // c with c(0) != 0 rejected, c = 0 rejected
        assert_eq!(
            construct_local_cycle(&QPoly::from_ints(&[1, 1])),
            Err(ChowError::BadLocalInput)
        );
        assert_eq!(
            construct_local_cycle(&QPoly::zero()),
            Err(ChowError::BadLocalInput)
        );
    }

    #[test]
    fn cycle_json_round_trip() {
        let z = construct_local_cycle(&QPoly::from_ints(&[0, 0, 1])).unwrap();
        let json = PolygonCycleJson::from_cycle(&z.cycle);
        let text = serde_json::to_string(&json).unwrap();
        let back: PolygonCycleJson = serde_json::from_str(&text).unwrap();
        let cycle = back.into_cycle().unwrap();
        assert_eq!(cycle, z.cycle);
        assert_eq!(json.winding, 2);
        let _ = rat(1, 2);
    }
}
