//! One-parameter families of elliptic surfaces over the a-line:
//! specialization, place matching, degeneration detection, and the
//! hypothesis checker for the indecomposability criterion.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{expect_poly, parse_tower2, parse_tower3, ParseError};
use crate::factor::{rational_roots, AlgebraError};
use crate::field::CoefficientField;
use crate::places::Place;
use crate::polynomial::{Polynomial, QPoly};
use crate::rational::{parse_rational, render_rational, Rational};
use crate::ratfunc::{ParamRat, RationalFunction};
use crate::tate::{
    classify_fiber, euler_number, fiber_configuration, shioda_tate_rank, FiberConfiguration,
    FiberType, SplitClass, TateError,
};
use crate::weierstrass::{ModelInput, QuarticModel, WeierstrassError, WeierstrassModel};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter value {} is excluded", render_rational(.0))]
    ExcludedParameter(Rational),
    #[error("specialization degenerates; the parameter value should be excluded")]
    DegenerateSpecialization,
    #[error("place not found in the generic configuration")]
    UnknownPlace,
    #[error("generic configuration has unresolved places")]
    UnresolvedPlaces,
    #[error("model input must give either Weierstrass coefficients or a quartic")]
    AmbiguousModelInput,
    #[error("quartic point must have two coordinates")]
    BadPoint,
    #[error("expression error in field '{field}': {source}")]
    Expr {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A Weierstrass model over Q(a)(t) with bookkeeping of bad parameter
/// values and of the quartic it came from.
#[derive(Debug, Clone)]
pub struct EllipticFamily {
    model: WeierstrassModel<ParamRat>,
    excluded: BTreeSet<Rational>,
    provenance: Option<QuarticModel<ParamRat>>,
    parameter: String,
}

type ParamCoeff = RationalFunction<ParamRat>;

fn expr_err(field: &str) -> impl Fn(ParseError) -> FamilyError + '_ {
    move |source| FamilyError::Expr {
        field: field.to_string(),
        source,
    }
}

/// Parameter values where some coefficient of the numerators fails to stay
/// meaningful: poles of the a-coefficients, or common zeros making a
/// required polynomial vanish identically.
fn collect_bad_parameters(
    coeff: &ParamCoeff,
    excluded: &mut BTreeSet<Rational>,
) -> Result<(), FamilyError> {
    for poly in [coeff.numerator(), coeff.denominator()] {
        for c in poly.coeffs() {
            let den = c.denominator();
            if !den.is_constant() {
                for (root, _) in rational_roots(den)? {
                    excluded.insert(root);
                }
            }
        }
    }
    Ok(())
}

/// Roots of the gcd of the numerators of the a-coefficients: exactly the
/// parameter values where the whole t-polynomial vanishes identically.
fn common_vanishing(poly: &Polynomial<ParamRat>) -> Result<Vec<Rational>, FamilyError> {
    let mut g = QPoly::zero();
    for c in poly.coeffs() {
        g = g.gcd(c.numerator());
        if g.degree() == Some(0) {
            return Ok(vec![]);
        }
    }
    if g.is_zero() || g.is_constant() {
        return Ok(vec![]);
    }
    Ok(rational_roots(&g)?.into_iter().map(|(r, _)| r).collect())
}

impl EllipticFamily {
    pub fn new(
        model: WeierstrassModel<ParamRat>,
        user_excluded: BTreeSet<Rational>,
        provenance: Option<QuarticModel<ParamRat>>,
        parameter: String,
    ) -> Result<Self, FamilyError> {
        let mut excluded = user_excluded;
        for c in model.coefficients() {
            collect_bad_parameters(c, &mut excluded)?;
        }
        // values where the discriminant vanishes identically
        let (a, b) = model.reduced_ab();
        let delta = crate::tate::delta_from_ab(&a, &b);
        if delta.is_zero() {
            return Err(FamilyError::Tate(TateError::DegenerateDiscriminant));
        }
        for root in common_vanishing(delta.numerator())? {
            excluded.insert(root);
        }
        if let Some(q) = &provenance {
            let lead = q.quartic().leading();
            collect_bad_parameters(&lead, &mut excluded)?;
            for root in common_vanishing(lead.numerator())? {
                excluded.insert(root);
            }
        }
        Ok(EllipticFamily {
            model,
            excluded,
            provenance,
            parameter,
        })
    }

    pub fn model(&self) -> &WeierstrassModel<ParamRat> {
        &self.model
    }

    pub fn excluded(&self) -> &BTreeSet<Rational> {
        &self.excluded
    }

    pub fn provenance(&self) -> Option<&QuarticModel<ParamRat>> {
        self.provenance.as_ref()
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    fn check_excluded(&self, a0: &Rational) -> Result<(), FamilyError> {
        if self.excluded.contains(a0) {
            return Err(FamilyError::ExcludedParameter(a0.clone()));
        }
        Ok(())
    }

    /// Substitute a = a0 exactly.
    pub fn specialize(&self, a0: &Rational) -> Result<WeierstrassModel<Rational>, FamilyError> {
        self.check_excluded(a0)?;
        let spec_coeff = |c: &ParamCoeff| -> Result<RationalFunction<Rational>, FamilyError> {
            let eval = |q: &ParamRat| -> Result<Rational, FamilyError> {
                q.eval_at(a0)
                    .ok_or_else(|| FamilyError::ExcludedParameter(a0.clone()))
            };
            let num = c.numerator().try_map_coeffs(|q| eval(q))?;
            let den = c.denominator().try_map_coeffs(|q| eval(q))?;
            if den.is_zero() {
                return Err(FamilyError::DegenerateSpecialization);
            }
            Ok(RationalFunction::new(num, den))
        };
        let model = WeierstrassModel::new_short(
            spec_coeff(self.model.a2())?,
            spec_coeff(self.model.a4())?,
            spec_coeff(self.model.a6())?,
        );
        if model.discriminant().is_zero() {
            return Err(FamilyError::DegenerateSpecialization);
        }
        Ok(model)
    }

    /// The fiber configuration over Q(a).
    pub fn generic_configuration(&self) -> Result<FiberConfiguration<ParamRat>, FamilyError> {
        Ok(fiber_configuration(&self.model)?)
    }

    /// Specialize each generic place at a = a0 and group collisions.
    pub fn match_places(&self, a0: &Rational) -> Result<SpecializationMap, FamilyError> {
        self.check_excluded(a0)?;
        let generic = self.generic_configuration()?;
        if !generic.unresolved.is_empty() {
            return Err(FamilyError::UnresolvedPlaces);
        }
        let special_model = self.specialize(a0)?;
        let special_cfg = fiber_configuration(&special_model)?;

        let mut entries: Vec<MatchEntry> = Vec::new();
        let mut push = |special: Place<Rational>, generic_ref: Option<GenericFiberRef>| {
            match entries
                .iter_mut()
                .find(|e| e.special_place == special)
            {
                Some(e) => {
                    if let Some(g) = generic_ref {
                        e.generic.push(g);
                    }
                }
                None => entries.push(MatchEntry {
                    special_place: special,
                    generic: generic_ref.into_iter().collect(),
                    special_fiber: None,
                }),
            }
        };

        for fiber in &generic.fibers {
            let special_place = match &fiber.place {
                Place::Infinite => Place::Infinite,
                Place::Finite(fp) => {
                    let root = fp
                        .linear_root()
                        .ok_or(FamilyError::UnresolvedPlaces)?;
                    let value = root
                        .eval_at(a0)
                        .ok_or_else(|| FamilyError::ExcludedParameter(a0.clone()))?;
                    Place::at_root(&value)
                }
            };
            push(
                special_place,
                Some(GenericFiberRef {
                    place: fiber.place.clone(),
                    fiber_type: fiber.fiber_type,
                    split: fiber.split,
                    delta_valuation: fiber.delta_valuation,
                }),
            );
        }
        for fiber in &special_cfg.fibers {
            push(fiber.place.clone(), None);
        }
        for entry in &mut entries {
            entry.special_fiber = special_cfg
                .find_fiber(&entry.special_place)
                .map(|f| SpecialFiberRef {
                    fiber_type: f.fiber_type,
                    split: f.split,
                    delta_valuation: f.delta_valuation,
                });
        }
        entries.sort_by(|x, y| x.special_place.canonical_cmp(&y.special_place));
        Ok(SpecializationMap {
            a0: a0.clone(),
            entries,
            generic_euler: euler_number(&generic)?,
            special_euler: euler_number(&special_cfg)?,
        })
    }

    /// Classify the specialized model at every matched place and flag the
    /// strict degenerations I_n -> I_m with m > n.
    pub fn detect_degenerations(&self, a0: &Rational) -> Result<DegenerationReport, FamilyError> {
        let map = self.match_places(a0)?;
        let mut matches = Vec::new();
        for entry in &map.entries {
            let all_multiplicative = !entry.generic.is_empty()
                && entry
                    .generic
                    .iter()
                    .all(|g| g.fiber_type.is_multiplicative());
            let any_split = entry.generic.iter().any(|g| g.split == SplitClass::Yes);
            let max_generic_n = entry
                .generic
                .iter()
                .filter_map(|g| match g.fiber_type {
                    FiberType::I(n) if n >= 1 => Some(n),
                    _ => None,
                })
                .max();
            let special_m = entry.special_fiber.as_ref().and_then(|s| match s.fiber_type {
                FiberType::I(m) if m >= 1 => Some(m),
                _ => None,
            });
            let strict = match (all_multiplicative, any_split, max_generic_n, special_m) {
                (true, true, Some(n), Some(m)) => m > n,
                _ => false,
            };
            let generic_delta: i64 = entry.generic.iter().map(|g| g.delta_valuation).sum();
            let special_delta = entry
                .special_fiber
                .as_ref()
                .map(|s| s.delta_valuation)
                .unwrap_or(0);
            matches.push(DegenerationMatch {
                entry: entry.clone(),
                strict,
                delta_valuation_conserved: generic_delta == special_delta,
            });
        }
        Ok(DegenerationReport {
            a0: a0.clone(),
            matches,
            generic_euler: map.generic_euler,
            special_euler: map.special_euler,
        })
    }

    /// Check the two hypotheses of the indecomposability criterion at a
    /// chosen generic place and special parameter.
    pub fn check_theorem_hypotheses(
        &self,
        generic_place: &Place<ParamRat>,
        a0: &Rational,
        external_ns_rank: Option<i64>,
    ) -> Result<TheoremVerdict, FamilyError> {
        self.check_excluded(a0)?;
        let generic = self.generic_configuration()?;
        let fiber = generic
            .find_fiber(generic_place)
            .ok_or(FamilyError::UnknownPlace)?;
        let nf_rank = shioda_tate_rank(&generic, true)?;

        let n = match fiber.fiber_type {
            FiberType::I(n) if n >= 1 => Some(n),
            _ => None,
        };
        let mut obstruction = None;
        let condition1_pass = match (n, fiber.split) {
            (Some(_), SplitClass::Yes) => true,
            (Some(_), SplitClass::Unknown) => {
                obstruction =
                    Some("split test undecidable at this place".to_string());
                false
            }
            _ => false,
        };

        // condition 2: the matched special fiber
        let special_model = self.specialize(a0)?;
        let special_place = match generic_place {
            Place::Infinite => Place::Infinite,
            Place::Finite(fp) => {
                let root = fp.linear_root().ok_or(FamilyError::UnresolvedPlaces)?;
                let value = root
                    .eval_at(a0)
                    .ok_or_else(|| FamilyError::ExcludedParameter(a0.clone()))?;
                Place::at_root(&value)
            }
        };
        let special_fiber = classify_fiber(&special_model, &special_place)?;
        let m = match special_fiber.fiber_type {
            FiberType::I(m) if m >= 1 => Some(m),
            _ => None,
        };
        let condition2_pass = match (n, m) {
            (Some(n), Some(m)) => m > n,
            _ => false,
        };

        let ns_caveat = match external_ns_rank {
            None => "Neron-Severi rank not supplied; it cannot be computed here and \
                     must come from an external source"
                .to_string(),
            Some(ns) if ns == nf_rank => {
                "supplied Neron-Severi rank equals the fibral rank".to_string()
            }
            Some(_) => "supplied Neron-Severi rank differs from the fibral rank; the \
                        criterion certifies indecomposability only modulo the fibral \
                        subgroup"
                .to_string(),
        };
        let verdict = if condition1_pass && condition2_pass {
            match external_ns_rank {
                Some(ns) if ns == nf_rank => Verdict::IndecomposableCycleExists,
                _ => Verdict::ConditionalOnNS,
            }
        } else {
            Verdict::Fails
        };
        Ok(TheoremVerdict {
            condition1: Condition {
                pass: condition1_pass,
                order: n,
                split: fiber.split,
            },
            condition2: Condition {
                pass: condition2_pass,
                order: m,
                split: special_fiber.split,
            },
            special_type: special_fiber.fiber_type,
            generic_type: fiber.fiber_type,
            nf_rank,
            external_ns_rank,
            ns_caveat,
            obstruction,
            verdict,
        })
    }
}

/// A generic fiber participating in a specialization collision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericFiberRef {
    pub place: Place<ParamRat>,
    pub fiber_type: FiberType,
    pub split: SplitClass,
    pub delta_valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFiberRef {
    pub fiber_type: FiberType,
    pub split: SplitClass,
    pub delta_valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchEntry {
    pub special_place: Place<Rational>,
    pub generic: Vec<GenericFiberRef>,
    pub special_fiber: Option<SpecialFiberRef>,
}

/// How the generic places fall together under a = a0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationMap {
    pub a0: Rational,
    pub entries: Vec<MatchEntry>,
    pub generic_euler: i64,
    pub special_euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationMatch {
    pub entry: MatchEntry,
    /// Multiplicative fibers merged into a strictly larger multiplicative
    /// fiber, with a split generic member.
    pub strict: bool,
    pub delta_valuation_conserved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationReport {
    pub a0: Rational,
    pub matches: Vec<DegenerationMatch>,
    pub generic_euler: i64,
    pub special_euler: i64,
}

impl DegenerationReport {
    pub fn strict_degenerations(&self) -> impl Iterator<Item = &DegenerationMatch> {
        self.matches.iter().filter(|m| m.strict)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    IndecomposableCycleExists,
    Fails,
    ConditionalOnNS,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub pass: bool,
    /// n for I_n, when multiplicative.
    pub order: Option<u32>,
    pub split: SplitClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub condition1: Condition,
    pub condition2: Condition,
    pub generic_type: FiberType,
    pub special_type: FiberType,
    pub nf_rank: i64,
    pub external_ns_rank: Option<i64>,
    pub ns_caveat: String,
    pub obstruction: Option<String>,
    pub verdict: Verdict,
}

/// JSON description of a family:
/// { "model": {...}, "parameter": "a", "excluded": ["0","1"], "ns_rank": 19 }.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub model: ModelInput,
    #[serde(default = "default_parameter")]
    pub parameter: String,
    #[serde(default)]
    pub excluded: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ns_rank: Option<i64>,
}

fn default_parameter() -> String {
    "a".to_string()
}

/// Build the family from its JSON description.
pub fn family_from_input(input: &FamilyInput) -> Result<EllipticFamily, FamilyError> {
    let param = input.parameter.as_str();
    let mut excluded = BTreeSet::new();
    for e in &input.excluded {
        let v = parse_rational(e).ok_or_else(|| FamilyError::Expr {
            field: "excluded".to_string(),
            source: ParseError::Syntax {
                span: crate::expr::Span { line: 1, col: 1 },
                message: format!("'{e}' is not a rational number"),
            },
        })?;
        excluded.insert(v);
    }
    let m = &input.model;
    let has_quartic = m.quartic.is_some();
    let has_coeffs =
        m.a1.is_some() || m.a2.is_some() || m.a3.is_some() || m.a4.is_some() || m.a6.is_some();
    if has_quartic == has_coeffs {
        return Err(FamilyError::AmbiguousModelInput);
    }
    if has_quartic {
        let text = m.quartic.as_ref().unwrap();
        let rf = parse_tower3(text, [param, "t", "x"]).map_err(expr_err("quartic"))?;
        let q = expect_poly(&rf, "quartic").map_err(expr_err("quartic"))?;
        let point = match &m.point {
            None => None,
            Some([u, v]) => {
                let u = parse_tower2(u, [param, "t"]).map_err(expr_err("point[0]"))?;
                let v = parse_tower2(v, [param, "t"]).map_err(expr_err("point[1]"))?;
                Some((u, v))
            }
        };
        let quartic = QuarticModel::new(q, point)?;
        let model = quartic.to_weierstrass()?;
        EllipticFamily::new(model, excluded, Some(quartic), param.to_string())
    } else {
        let coeff = |text: &Option<String>, name: &str| -> Result<ParamCoeff, FamilyError> {
            match text {
                None => Ok(ParamCoeff::zero()),
                Some(t) => parse_tower2(t, [param, "t"]).map_err(expr_err(name)),
            }
        };
        let model = WeierstrassModel::from_long(
            coeff(&m.a1, "a1")?,
            coeff(&m.a2, "a2")?,
            coeff(&m.a3, "a3")?,
            coeff(&m.a4, "a4")?,
            coeff(&m.a6, "a6")?,
        );
        EllipticFamily::new(model, excluded, None, param.to_string())
    }
}

/// Build a plain Q(t)-model from the same JSON shape (no parameter).
pub fn model_from_input(
    input: &ModelInput,
) -> Result<
    (
        WeierstrassModel<Rational>,
        Option<QuarticModel<Rational>>,
    ),
    FamilyError,
> {
    let has_quartic = input.quartic.is_some();
    let has_coeffs = input.a1.is_some()
        || input.a2.is_some()
        || input.a3.is_some()
        || input.a4.is_some()
        || input.a6.is_some();
    if has_quartic == has_coeffs {
        return Err(FamilyError::AmbiguousModelInput);
    }
    if has_quartic {
        let text = input.quartic.as_ref().unwrap();
        let rf = parse_tower2(text, ["t", "x"]).map_err(expr_err("quartic"))?;
        let q = expect_poly(&rf, "quartic").map_err(expr_err("quartic"))?;
        let point = match &input.point {
            None => None,
            Some([u, v]) => {
                let u = crate::expr::parse_tower1(u, "t").map_err(expr_err("point[0]"))?;
                let v = crate::expr::parse_tower1(v, "t").map_err(expr_err("point[1]"))?;
                Some((u, v))
            }
        };
        let quartic = QuarticModel::new(q, point)?;
        let model = quartic.to_weierstrass()?;
        Ok((model, Some(quartic)))
    } else {
        let coeff = |text: &Option<String>,
                     name: &str|
         -> Result<RationalFunction<Rational>, FamilyError> {
            match text {
                None => Ok(RationalFunction::zero()),
                Some(t) => crate::expr::parse_tower1(t, "t").map_err(expr_err(name)),
            }
        };
        let model = WeierstrassModel::from_long(
            coeff(&input.a1, "a1")?,
            coeff(&input.a2, "a2")?,
            coeff(&input.a3, "a3")?,
            coeff(&input.a4, "a4")?,
            coeff(&input.a6, "a6")?,
        );
        Ok((model, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    pub(crate) fn kummer_family() -> EllipticFamily {
        let input = FamilyInput {
            schema: Some("1".to_string()),
            model: ModelInput {
                quartic: Some("t*(x - 1)*(x - t)*(x - a)*(a*x - t)".to_string()),
                point: Some(["1".to_string(), "0".to_string()]),
                ..Default::default()
            },
            parameter: "a".to_string(),
            excluded: vec!["0".to_string(), "1".to_string()],
            ns_rank: Some(19),
        };
        family_from_input(&input).unwrap()
    }

    #[test]
    fn excluded_bookkeeping() {
        let fam = kummer_family();
        assert!(fam.excluded().contains(&rat_int(0)));
        assert!(fam.excluded().contains(&rat_int(1)));
        assert!(matches!(
            fam.specialize(&rat_int(0)),
            Err(FamilyError::ExcludedParameter(_))
        ));
    }

    #[test]
    fn specialization_at_minus_one() {
        let fam = kummer_family();
        let model = fam.specialize(&rat_int(-1)).unwrap();
        let cfg = fiber_configuration(&model).unwrap();
        let types: Vec<(String, String)> = cfg
            .fibers
            .iter()
            .map(|f| (f.place.render(&["t"]), f.fiber_type.label()))
            .collect();
        assert_eq!(cfg.fibers.len(), 4);
        assert_eq!(euler_number(&cfg).unwrap(), 24);
        assert_eq!(shioda_tate_rank(&cfg, true).unwrap(), 20);
        let find = |place: &str| -> String {
            types
                .iter()
                .find(|(p, _)| p == place)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| panic!("no fiber at {place}; have {types:?}"))
        };
        assert_eq!(find("t - 1"), "I4");
        assert_eq!(find("t + 1"), "I4");
        assert_eq!(find("t"), "I2*");
        assert_eq!(find("infinity"), "I2*");
    }

    #[test]
    fn specialization_at_two_keeps_five_places() {
        let fam = kummer_family();
        let model = fam.specialize(&rat_int(2)).unwrap();
        let cfg = fiber_configuration(&model).unwrap();
        assert_eq!(cfg.fibers.len(), 5);
        assert_eq!(euler_number(&cfg).unwrap(), 24);
        assert_eq!(shioda_tate_rank(&cfg, true).unwrap(), 19);
    }

    #[test]
    fn match_places_merges_collisions() {
        let fam = kummer_family();
        let map = fam.match_places(&rat_int(-1)).unwrap();
        assert_eq!(map.generic_euler, 24);
        assert_eq!(map.special_euler, 24);
        // t - 1 receives both t - 1 and t - a^2
        let at_one = map
            .entries
            .iter()
            .find(|e| e.special_place == Place::at_root(&rat_int(1)))
            .unwrap();
        assert_eq!(at_one.generic.len(), 2);
        // all 4 special places accounted for, each exactly once
        assert_eq!(map.entries.len(), 4);
        let total_generic: usize = map.entries.iter().map(|e| e.generic.len()).sum();
        assert_eq!(total_generic, 5);
    }

    #[test]
    fn strict_degeneration_detected_at_minus_one() {
        let fam = kummer_family();
        let report = fam.detect_degenerations(&rat_int(-1)).unwrap();
        let strict: Vec<&DegenerationMatch> = report.strict_degenerations().collect();
        assert_eq!(strict.len(), 1);
        let m = strict[0];
        assert_eq!(m.entry.special_place, Place::at_root(&rat_int(1)));
        assert_eq!(
            m.entry.special_fiber.as_ref().unwrap().fiber_type,
            FiberType::I(4)
        );
        assert!(m.delta_valuation_conserved);
        // at a0 = 2 nothing is strict
        let report = fam.detect_degenerations(&rat_int(2)).unwrap();
        assert_eq!(report.strict_degenerations().count(), 0);
    }

    #[test]
    fn theorem_checker_kummer() {
        let fam = kummer_family();
        let place_one = Place::at_root(&ParamRat::one());
        let verdict = fam
            .check_theorem_hypotheses(&place_one, &rat_int(-1), Some(19))
            .unwrap();
        assert!(verdict.condition1.pass);
        assert_eq!(verdict.condition1.order, Some(2));
        assert!(verdict.condition2.pass);
        assert_eq!(verdict.condition2.order, Some(4));
        assert_eq!(verdict.nf_rank, 19);
        assert_eq!(verdict.verdict, Verdict::IndecomposableCycleExists);

        // at t - a both fibers are I4: condition 2 fails
        let place_a = Place::at_root(&ParamRat::gen());
        let verdict = fam
            .check_theorem_hypotheses(&place_a, &rat_int(-1), Some(19))
            .unwrap();
        assert!(!verdict.condition2.pass);
        assert_eq!(verdict.condition1.order, Some(4));
        assert_eq!(verdict.condition2.order, Some(4));
        assert_eq!(verdict.verdict, Verdict::Fails);

        // without the NS rank the verdict is conditional
        let verdict = fam
            .check_theorem_hypotheses(&place_one, &rat_int(-1), None)
            .unwrap();
        assert_eq!(verdict.verdict, Verdict::ConditionalOnNS);
        assert_eq!(verdict.nf_rank, 19);
    }

    #[test]
    fn unknown_place_rejected() {
        let fam = kummer_family();
        let bogus = Place::at_root(&ParamRat::from_rational(&rat_int(7)));
        assert!(matches!(
            fam.check_theorem_hypotheses(&bogus, &rat_int(-1), None),
            Err(FamilyError::UnknownPlace)
        ));
    }
}
