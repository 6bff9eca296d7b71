//! Per-place minimal models and Kodaira reduction types in residue
//! characteristic zero.
//!
//! Because every residue field here has characteristic zero, the full Tate
//! recursion collapses to a table lookup on the valuations of c4 and the
//! minimal discriminant. The genuine first steps of the recursion are kept
//! alive in the test suite as an independent oracle for the
//! multiplicative/additive decision.

use std::cmp::Ordering;

use thiserror::Error;

use crate::factor::{squarefree_decomposition, AlgebraError, LinearFactorField};
use crate::field::{CoefficientField, SquareClass};
use crate::places::{valuation_at, Place, Valuation};
use crate::polynomial::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::weierstrass::{WeierstrassError, WeierstrassModel};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TateError {
    #[error("degenerate discriminant: the model is not an elliptic fibration")]
    DegenerateDiscriminant,
    #[error("configuration has unresolved places; assert irreducibility to proceed")]
    UnresolvedPlaces,
    #[error("fiber is not multiplicative")]
    NotMultiplicative,
    #[error("valuations inconsistent with a minimal model in characteristic zero")]
    InconsistentValuations,
    #[error("the fibral rank formula requires a section")]
    NoSection,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
}

/// Kodaira reduction types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberType {
    /// I0 is good reduction; In for n >= 1 is multiplicative.
    I(u32),
    II,
    III,
    IV,
    /// I0* .. In*.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl FiberType {
    /// Number of irreducible components m_v.
    pub fn components(self) -> u32 {
        match self {
            FiberType::I(0) => 1,
            FiberType::I(n) => n,
            FiberType::II => 1,
            FiberType::III => 2,
            FiberType::IV => 3,
            FiberType::IStar(n) => n + 5,
            FiberType::IVStar => 7,
            FiberType::IIIStar => 8,
            FiberType::IIStar => 9,
        }
    }

    /// Euler number e_v.
    pub fn euler(self) -> u32 {
        match self {
            FiberType::I(n) => n,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IStar(n) => n + 6,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, FiberType::I(n) if n >= 1)
    }

    pub fn label(self) -> String {
        match self {
            FiberType::I(n) => format!("I{n}"),
            FiberType::II => "II".to_string(),
            FiberType::III => "III".to_string(),
            FiberType::IV => "IV".to_string(),
            FiberType::IStar(n) => format!("I{n}*"),
            FiberType::IVStar => "IV*".to_string(),
            FiberType::IIIStar => "III*".to_string(),
            FiberType::IIStar => "II*".to_string(),
        }
    }

    pub fn parse_label(s: &str) -> Option<FiberType> {
        match s {
            "II" => return Some(FiberType::II),
            "III" => return Some(FiberType::III),
            "IV" => return Some(FiberType::IV),
            "IV*" => return Some(FiberType::IVStar),
            "III*" => return Some(FiberType::IIIStar),
            "II*" => return Some(FiberType::IIStar),
            _ => {}
        }
        let body = s.strip_prefix('I')?;
        if let Some(n) = body.strip_suffix('*') {
            return n.parse().ok().map(FiberType::IStar);
        }
        body.parse().ok().map(FiberType::I)
    }
}

/// Split / non-split verdict for multiplicative fibers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitClass {
    Yes,
    No,
    Unknown,
    NotApplicable,
}

impl From<SquareClass> for SplitClass {
    fn from(s: SquareClass) -> Self {
        match s {
            SquareClass::Yes => SplitClass::Yes,
            SquareClass::No => SplitClass::No,
            SquareClass::Unknown => SplitClass::Unknown,
        }
    }
}

/// The classified fiber over one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KodairaFiber<F: CoefficientField> {
    pub fiber_type: FiberType,
    pub components: u32,
    pub euler: u32,
    pub split: SplitClass,
    pub delta_valuation: i64,
    pub place: Place<F>,
}

impl<F: CoefficientField> KodairaFiber<F> {
    fn new(fiber_type: FiberType, split: SplitClass, delta_valuation: i64, place: Place<F>) -> Self {
        debug_assert_eq!(
            fiber_type.is_multiplicative(),
            split != SplitClass::NotApplicable
        );
        KodairaFiber {
            fiber_type,
            components: fiber_type.components(),
            euler: fiber_type.euler(),
            split,
            delta_valuation,
            place,
        }
    }
}

/// A place whose irreducibility the toolkit cannot certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedPlace<F: CoefficientField> {
    pub factor: Polynomial<F>,
    pub delta_valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberConfiguration<F: CoefficientField> {
    pub fibers: Vec<KodairaFiber<F>>,
    pub unresolved: Vec<UnresolvedPlace<F>>,
    pub model: WeierstrassModel<F>,
}

fn val_or_inf<F: CoefficientField>(
    f: &RationalFunction<F>,
    place: &Place<F>,
) -> Result<Valuation, TateError> {
    Ok(valuation_at(f, place)?)
}

/// Discriminant from the short (A, B) data: -16 (4 A^3 + 27 B^2).
pub(crate) fn delta_from_ab<F: CoefficientField>(
    a: &RationalFunction<F>,
    b: &RationalFunction<F>,
) -> RationalFunction<F> {
    let four = RationalFunction::constant(F::from_int(4));
    let twenty_seven = RationalFunction::constant(F::from_int(27));
    a.mul(a)
        .mul(a)
        .mul(&four)
        .add(&b.mul(b).mul(&twenty_seven))
        .mul(&RationalFunction::constant(F::from_int(-16)))
}

/// Valuation bookkeeping of the minimal integral model at a place:
/// everything is integer arithmetic on the input valuations; the minimal
/// model itself equals the u = pi^exponent rescaling of the input.
struct MinimalValuations {
    vd_min: i64,
    /// v(A) of the minimal model; `None` when A = 0.
    va_min: Option<i64>,
    exponent: i64,
}

fn minimal_valuations<F: CoefficientField>(
    a: &RationalFunction<F>,
    b: &RationalFunction<F>,
    delta: &RationalFunction<F>,
    place: &Place<F>,
) -> Result<MinimalValuations, TateError> {
    let vd = match val_or_inf(delta, place)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => return Err(TateError::DegenerateDiscriminant),
    };
    let va = val_or_inf(a, place)?;
    let vb = val_or_inf(b, place)?;
    // integralize: m >= 0 with v(A) + 4m >= 0 and v(B) + 6m >= 0
    let mut m = 0i64;
    if let Valuation::Finite(v) = va {
        if v < 0 {
            m = m.max((-v + 3) / 4);
        }
    }
    if let Valuation::Finite(v) = vb {
        if v < 0 {
            m = m.max((-v + 5) / 6);
        }
    }
    // minimality: strip u = pi^k while v(A) >= 4k and v(B) >= 6k
    let ka = va.finite().map(|v| (v + 4 * m) / 4);
    let kb = vb.finite().map(|v| (v + 6 * m) / 6);
    let k = match (ka, kb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => return Err(TateError::DegenerateDiscriminant),
    };
    let exponent = k - m;
    Ok(MinimalValuations {
        vd_min: vd - 12 * exponent,
        va_min: va.finite().map(|v| v - 4 * exponent),
        exponent,
    })
}

/// Minimal integral (A, B) of the model at a finite place: the u = pi^e
/// rescaling with e from `minimal_valuations`.
fn minimal_ab_at<F: CoefficientField>(
    w: &WeierstrassModel<F>,
    place: &Place<F>,
    pi: &Polynomial<F>,
) -> Result<(RationalFunction<F>, RationalFunction<F>, i64), TateError> {
    let (a, b) = w.reduced_ab();
    let delta = delta_from_ab(&a, &b);
    if delta.is_zero() {
        return Err(TateError::DegenerateDiscriminant);
    }
    let mv = minimal_valuations(&a, &b, &delta, place)?;
    let (a_min, b_min) = scale_ab(&a, &b, pi, mv.exponent);
    Ok((a_min, b_min, mv.exponent))
}

fn scale_ab<F: CoefficientField>(
    a: &RationalFunction<F>,
    b: &RationalFunction<F>,
    pi: &Polynomial<F>,
    exponent: i64,
) -> (RationalFunction<F>, RationalFunction<F>) {
    if exponent == 0 {
        return (a.clone(), b.clone());
    }
    let pi_rf = RationalFunction::from_poly(pi.clone());
    (
        a.mul(&pi_rf.pow_int((-4 * exponent) as i32)),
        b.mul(&pi_rf.pow_int((-6 * exponent) as i32)),
    )
}

/// Minimal model of w at a place. The infinite place is handled through the
/// coordinate flip, so the returned model is then in the tau coordinate.
pub fn minimal_model_at<F: CoefficientField>(
    w: &WeierstrassModel<F>,
    place: &Place<F>,
) -> Result<(WeierstrassModel<F>, i64), TateError> {
    match place {
        Place::Infinite => {
            let (flip, _) = w.localize_at_infinity();
            let origin = Place::at_root(&F::zero());
            let pi = Polynomial::gen();
            let (a, b, e) = minimal_ab_at(&flip, &origin, &pi)?;
            Ok((
                WeierstrassModel::new_short(RationalFunction::zero(), a, b),
                e,
            ))
        }
        Place::Finite(fp) => {
            if !fp.is_asserted_irreducible() {
                return Err(TateError::Algebra(AlgebraError::UnverifiedPlace));
            }
            let (a, b, e) = minimal_ab_at(w, place, fp.polynomial())?;
            Ok((
                WeierstrassModel::new_short(RationalFunction::zero(), a, b),
                e,
            ))
        }
    }
}

/// Split test on the minimal integral short model y^2 = x^3 + Ax + B at a
/// degree-one place: reduce, locate the node, and test whether the tangent
/// cone y^2 - beta x^2 has square beta.
fn split_at_linear_place<F: CoefficientField>(
    a_min: &RationalFunction<F>,
    b_min: &RationalFunction<F>,
    root: &F,
) -> Result<SplitClass, TateError> {
    let abar = a_min.eval_at(root).ok_or(TateError::InconsistentValuations)?;
    let bbar = b_min.eval_at(root).ok_or(TateError::InconsistentValuations)?;
    // f = x^3 + abar x + bbar; the node is the double root of f.
    let f: Polynomial<F> = Polynomial::new(vec![bbar, abar, F::zero(), F::one()]);
    let g = f.gcd(&f.derivative());
    if g.degree() != Some(1) {
        return Err(TateError::NotMultiplicative);
    }
    let x0 = g.coeff(0).neg();
    let beta = x0.mul(&F::from_int(3));
    Ok(SplitClass::from(beta.split_square_class()))
}

/// Classification from the (A, B, delta) data of a not-necessarily-minimal
/// model: the type table runs on the minimal valuations, and only the split
/// test for multiplicative fibers touches the actual minimal coefficients.
fn classify_with<F: CoefficientField>(
    a: &RationalFunction<F>,
    b: &RationalFunction<F>,
    delta: &RationalFunction<F>,
    place: &Place<F>,
    pi: &Polynomial<F>,
    out_place: Place<F>,
) -> Result<KodairaFiber<F>, TateError> {
    let mv = minimal_valuations(a, b, delta, place)?;
    let vd = mv.vd_min;
    debug_assert!(vd >= 0);
    if vd == 0 {
        return Ok(KodairaFiber::new(
            FiberType::I(0),
            SplitClass::NotApplicable,
            0,
            out_place,
        ));
    }
    if mv.va_min == Some(0) {
        let split = match place {
            Place::Finite(fp) => match fp.linear_root() {
                Some(root) => {
                    let (a_min, b_min) = scale_ab(a, b, pi, mv.exponent);
                    split_at_linear_place(&a_min, &b_min, &root)?
                }
                None => SplitClass::Unknown,
            },
            Place::Infinite => unreachable!("infinite place is classified via the flip"),
        };
        return Ok(KodairaFiber::new(
            FiberType::I(vd as u32),
            split,
            vd,
            out_place,
        ));
    }
    let fiber_type = match vd {
        2 => FiberType::II,
        3 => FiberType::III,
        4 => FiberType::IV,
        6 => FiberType::IStar(0),
        n if n >= 7 && mv.va_min == Some(2) => FiberType::IStar(n as u32 - 6),
        8 => FiberType::IVStar,
        9 => FiberType::IIIStar,
        10 => FiberType::IIStar,
        _ => return Err(TateError::InconsistentValuations),
    };
    Ok(KodairaFiber::new(
        fiber_type,
        SplitClass::NotApplicable,
        vd,
        out_place,
    ))
}

/// Classify the Kodaira type of the fiber at a place. The place must be
/// degree one or asserted irreducible; the infinite place goes through the
/// coordinate flip first.
pub fn classify_fiber<F: CoefficientField>(
    w: &WeierstrassModel<F>,
    place: &Place<F>,
) -> Result<KodairaFiber<F>, TateError> {
    match place {
        Place::Infinite => {
            let (flip, _) = w.localize_at_infinity();
            let (a, b) = flip.reduced_ab();
            let delta = delta_from_ab(&a, &b);
            if delta.is_zero() {
                return Err(TateError::DegenerateDiscriminant);
            }
            let origin = Place::at_root(&F::zero());
            classify_with(&a, &b, &delta, &origin, &Polynomial::gen(), Place::Infinite)
        }
        Place::Finite(fp) => {
            if !fp.is_asserted_irreducible() {
                return Err(TateError::Algebra(AlgebraError::UnverifiedPlace));
            }
            let (a, b) = w.reduced_ab();
            let delta = delta_from_ab(&a, &b);
            if delta.is_zero() {
                return Err(TateError::DegenerateDiscriminant);
            }
            classify_with(&a, &b, &delta, place, fp.polynomial(), place.clone())
        }
    }
}

/// Split/non-split determination for a multiplicative fiber.
pub fn split_test<F: CoefficientField>(
    w: &WeierstrassModel<F>,
    place: &Place<F>,
) -> Result<SplitClass, TateError> {
    let fiber = classify_fiber(w, place)?;
    if !fiber.fiber_type.is_multiplicative() {
        return Err(TateError::NotMultiplicative);
    }
    Ok(fiber.split)
}

/// The whole-surface fiber configuration: classify every place in the
/// support of the discriminant divisor and of the coefficient denominators,
/// plus the infinite place.
pub fn fiber_configuration<F: LinearFactorField>(
    w: &WeierstrassModel<F>,
) -> Result<FiberConfiguration<F>, TateError> {
    let (a, b) = w.reduced_ab();
    let delta = delta_from_ab(&a, &b);
    if delta.is_zero() {
        return Err(TateError::DegenerateDiscriminant);
    }
    // support polynomial: numerator and denominator of delta plus all
    // coefficient denominators
    let mut support = delta.numerator().mul(delta.denominator());
    for c in w.coefficients() {
        support = support.mul(c.denominator());
    }
    let decomp = squarefree_decomposition(&support)?;

    let mut fibers: Vec<KodairaFiber<F>> = Vec::new();
    let mut unresolved: Vec<UnresolvedPlace<F>> = Vec::new();
    for (factor, _) in &decomp.factors {
        let split = F::linear_split(factor)?;
        for (root, _) in &split.roots {
            let place = Place::at_root(root);
            let pi = Polynomial::linear_from_root(root);
            let fiber = classify_with(&a, &b, &delta, &place, &pi, place.clone())?;
            if fiber.fiber_type != FiberType::I(0) {
                fibers.push(fiber);
            }
        }
        if !split.residual.is_constant() {
            let g = &split.residual;
            let vnum = delta.numerator().multiplicity_of(g) as i64;
            let vden = delta.denominator().multiplicity_of(g) as i64;
            unresolved.push(UnresolvedPlace {
                factor: g.clone(),
                delta_valuation: vnum - vden,
            });
        }
    }
    let fiber_at_infinity = classify_fiber(w, &Place::Infinite)?;
    if fiber_at_infinity.fiber_type != FiberType::I(0) {
        fibers.push(fiber_at_infinity);
    }
    fibers.sort_by(|x, y| x.place.canonical_cmp(&y.place));
    fibers.dedup_by(|x, y| x.place == y.place);
    unresolved.sort_by(|x, y| x.factor.canonical_cmp(&y.factor));
    Ok(FiberConfiguration {
        fibers,
        unresolved,
        model: w.clone(),
    })
}

impl<F: CoefficientField> FiberConfiguration<F> {
    pub fn find_fiber(&self, place: &Place<F>) -> Option<&KodairaFiber<F>> {
        self.fibers.iter().find(|f| &f.place == place)
    }
}

/// Sum of Euler numbers weighted by place degree. Divisible by 12 for an
/// elliptic surface over the projective line.
pub fn euler_number<F: CoefficientField>(cfg: &FiberConfiguration<F>) -> Result<i64, TateError> {
    if !cfg.unresolved.is_empty() {
        return Err(TateError::UnresolvedPlaces);
    }
    Ok(cfg
        .fibers
        .iter()
        .map(|f| f.euler as i64 * f.place.degree() as i64)
        .sum())
}

/// Shioda-Tate fibral rank: 2 + sum over places of (m_v - 1), weighted by
/// place degree (geometric component count).
pub fn shioda_tate_rank<F: CoefficientField>(
    cfg: &FiberConfiguration<F>,
    has_section: bool,
) -> Result<i64, TateError> {
    if !has_section {
        return Err(TateError::NoSection);
    }
    if !cfg.unresolved.is_empty() {
        return Err(TateError::UnresolvedPlaces);
    }
    Ok(2 + cfg
        .fibers
        .iter()
        .map(|f| (f.components as i64 - 1) * f.place.degree() as i64)
        .sum::<i64>())
}

/// Deterministic ordering helper for reports.
pub fn place_sorted<F: CoefficientField>(mut places: Vec<Place<F>>) -> Vec<Place<F>> {
    places.sort_by(|a, b| a.canonical_cmp(b));
    places
}

#[allow(dead_code)]
fn cmp_by_canonical<F: CoefficientField>(a: &Place<F>, b: &Place<F>) -> Ordering {
    a.canonical_cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rational};

    type QT = RationalFunction<Rational>;

    fn c(n: i64) -> QT {
        RationalFunction::constant(Rational::from_integer(n.into()))
    }

    fn t() -> QT {
        QT::gen()
    }

    fn origin() -> Place<Rational> {
        Place::at_root(&rat_int(0))
    }

    #[test]
    fn nodal_family_is_i1_split() {
        // y^2 = x^3 + x^2 + t at t = 0
        let w = WeierstrassModel::new_short(c(1), c(0), t());
        let fiber = classify_fiber(&w, &origin()).unwrap();
        assert_eq!(fiber.fiber_type, FiberType::I(1));
        assert_eq!(fiber.split, SplitClass::Yes);
        assert_eq!(fiber.delta_valuation, 1);
        assert_eq!((fiber.components, fiber.euler), (1, 1));
    }

    #[test]
    fn nonsplit_node() {
        // y^2 = x^3 - x^2 + t: tangent cone beta = -1, not a square
        let w = WeierstrassModel::new_short(c(-1), c(0), t());
        let fiber = classify_fiber(&w, &origin()).unwrap();
        assert_eq!(fiber.fiber_type, FiberType::I(1));
        assert_eq!(fiber.split, SplitClass::No);
    }

    #[test]
    fn cusp_family_types_and_euler() {
        // y^2 = x^3 + t: II at the origin, II* at infinity
        let w = WeierstrassModel::new_short(c(0), c(0), t());
        let at0 = classify_fiber(&w, &origin()).unwrap();
        assert_eq!(at0.fiber_type, FiberType::II);
        let atinf = classify_fiber(&w, &Place::Infinite).unwrap();
        assert_eq!(atinf.fiber_type, FiberType::IIStar);

        let cfg = fiber_configuration(&w).unwrap();
        assert_eq!(cfg.fibers.len(), 2);
        assert_eq!(euler_number(&cfg).unwrap(), 12);
        assert_eq!(shioda_tate_rank(&cfg, true).unwrap(), 2 + 8);
    }

    #[test]
    fn type_iv_at_origin() {
        let w = WeierstrassModel::new_short(c(0), c(0), t().mul(&t()));
        let fiber = classify_fiber(&w, &origin()).unwrap();
        assert_eq!(fiber.fiber_type, FiberType::IV);
    }

    #[test]
    fn minimality_strips_twelfth_powers() {
        // y^2 = x^3 + t^12: v(delta) = 24 at the origin, strips to I0
        let w = WeierstrassModel::new_short(
            c(0),
            c(0),
            QT::from_poly(crate::polynomial::Polynomial::gen().pow(12)),
        );
        let (min, e) = minimal_model_at(&w, &origin()).unwrap();
        assert_eq!(e, 2);
        assert_eq!(min.a4(), &c(0));
        assert_eq!(min.a6(), &c(1));
        let fiber = classify_fiber(&w, &origin()).unwrap();
        assert_eq!(fiber.fiber_type, FiberType::I(0));

        // idempotence
        let (min2, e2) = minimal_model_at(&min, &origin()).unwrap();
        assert_eq!(e2, 0);
        assert_eq!(min2, min);
    }

    #[test]
    fn nodal_model_already_minimal() {
        let w = WeierstrassModel::new_short(c(1), c(0), t());
        let (_, e) = minimal_model_at(&w, &origin()).unwrap();
        assert_eq!(e, 0);
    }

    #[test]
    fn degenerate_is_hard_error() {
        let w = WeierstrassModel::<Rational>::new_short(c(0), c(0), c(0));
        assert_eq!(
            fiber_configuration(&w),
            Err(TateError::DegenerateDiscriminant)
        );
    }

    #[test]
    fn split_invariant_under_translation() {
        let w = WeierstrassModel::new_short(c(1), c(0), t());
        let moved = w
            .admissible_transform(&c(1), &t(), &c(2), &c(5))
            .unwrap();
        let f0 = classify_fiber(&w, &origin()).unwrap();
        let f1 = classify_fiber(&moved, &origin()).unwrap();
        assert_eq!(f0.fiber_type, f1.fiber_type);
        assert_eq!(f0.split, f1.split);
    }

    #[test]
    fn classification_invariant_under_rescaling() {
        let w = WeierstrassModel::new_short(c(1), t(), t());
        let scaled = w.rescale(&t()).unwrap();
        for place in [origin(), Place::at_root(&rat_int(1)), Place::Infinite] {
            let f0 = classify_fiber(&w, &place).unwrap();
            let f1 = classify_fiber(&scaled, &place).unwrap();
            assert_eq!(f0.fiber_type, f1.fiber_type, "at {place:?}");
        }
    }

    #[test]
    fn fiber_labels_round_trip() {
        let types = [
            FiberType::I(0),
            FiberType::I(5),
            FiberType::II,
            FiberType::III,
            FiberType::IV,
            FiberType::IStar(0),
            FiberType::IStar(3),
            FiberType::IVStar,
            FiberType::IIIStar,
            FiberType::IIStar,
        ];
        for ty in types {
            assert_eq!(FiberType::parse_label(&ty.label()), Some(ty));
        }
    }
}
