//! Squarefree decomposition, rational roots, and linear-factor extraction
//! over the field tower.
//!
//! Full factorization over Q or Q(a) is out of scope. What the fiber
//! classifier actually needs is: (a) squarefree decomposition (Yun, valid
//! in characteristic zero), (b) roots in Q (rational-root theorem on the
//! primitive integer model), and (c) roots in Q(a) and deeper levels, found
//! by a specialize-and-interpolate heuristic and then *proved* by exact
//! symbolic division. Whatever the heuristic cannot certify stays in the
//! residual, never silently classified.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::CoefficientField;
use crate::intfactor;
use crate::polynomial::{interpolate, Polynomial, QPoly};
use crate::rational::{rational_sqrt, Rational};
use crate::ratfunc::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("integer coefficients too large to certify rational roots")]
    FactorLimit,
    #[error("squareness test undefined for zero")]
    ZeroValue,
    #[error("place must be asserted irreducible before use")]
    UnverifiedPlace,
    #[error("not enough valid specialization samples for the root heuristic")]
    NoSamples,
}

/// p = content * prod factor_i^mult_i, factors monic squarefree pairwise
/// coprime, canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition<F: CoefficientField> {
    pub content: F,
    pub factors: Vec<(Polynomial<F>, u32)>,
}

impl<F: CoefficientField> SquarefreeDecomposition<F> {
    /// Reassemble the original polynomial.
    pub fn reconstruct(&self) -> Polynomial<F> {
        let mut p = Polynomial::constant(self.content.clone());
        for (f, m) in &self.factors {
            p = p.mul(&f.pow(*m));
        }
        p
    }
}

/// Yun's algorithm. Errors on the zero polynomial; constants decompose as
/// pure content.
pub fn squarefree_decomposition<F: CoefficientField>(
    p: &Polynomial<F>,
) -> Result<SquarefreeDecomposition<F>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let content = p.leading();
    let mut factors: Vec<(Polynomial<F>, u32)> = Vec::new();
    let a = p.monic();
    if !a.is_constant() {
        let da = a.derivative();
        let g = a.gcd(&da);
        let mut c = a.exact_div(&g).expect("gcd divides");
        let mut d = da.exact_div(&g).expect("gcd divides").sub(&c.derivative());
        let mut i = 1u32;
        while !c.is_constant() {
            let f = c.gcd(&d);
            if !f.is_constant() {
                factors.push((f.clone(), i));
            }
            c = c.exact_div(&f).expect("gcd divides");
            d = d.exact_div(&f).expect("gcd divides").sub(&c.derivative());
            i += 1;
        }
    }
    factors.sort_by(|(f, m), (g, n)| f.canonical_cmp(g).then(m.cmp(n)));
    Ok(SquarefreeDecomposition { content, factors })
}

/// The squarefree part: product of the distinct monic factors.
pub fn squarefree_part<F: CoefficientField>(
    p: &Polynomial<F>,
) -> Result<Polynomial<F>, AlgebraError> {
    let d = squarefree_decomposition(p)?;
    let mut out = Polynomial::one();
    for (f, _) in &d.factors {
        out = out.mul(f);
    }
    Ok(out)
}

/// All roots in Q with multiplicities, canonically sorted. Exact: either the
/// complete answer or an error when coefficient factorization is infeasible.
pub fn rational_roots(p: &QPoly) -> Result<Vec<(Rational, usize)>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let k0 = p.order_at_origin().unwrap();
    if k0 > 0 {
        roots.push((Rational::from_integer(0.into()), k0));
    }
    let reduced = QPoly::new(p.coeffs()[k0..].to_vec());
    for root in root_candidates(&reduced)? {
        let m = count_root(&reduced, &root);
        if m > 0 {
            roots.push((root, m));
        }
    }
    roots.sort_by(|(a, _), (b, _)| a.cmp(b));
    Ok(roots)
}

fn count_root(p: &QPoly, r: &Rational) -> usize {
    if !CoefficientField::is_zero(&p.eval(r)) {
        return 0;
    }
    p.multiplicity_of(&QPoly::linear_from_root(r))
}

/// Candidate rational roots of a polynomial with nonzero constant term.
fn root_candidates(p: &QPoly) -> Result<Vec<Rational>, AlgebraError> {
    let deg = p.degree().unwrap();
    match deg {
        0 => Ok(vec![]),
        1 => {
            let r = -p.coeff(0) / p.coeff(1);
            Ok(vec![r])
        }
        2 => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
            Ok(match rational_sqrt(&disc) {
                None => vec![],
                Some(s) => {
                    let two_a = Rational::from_integer(2.into()) * &a;
                    vec![(-&b + &s) / &two_a, (-&b - &s) / &two_a]
                }
            })
        }
        _ => {
            // Rational-root theorem on the primitive integer model.
            let (c0, clead) = integer_model_ends(p);
            let nums = intfactor::divisors(&c0).map_err(|_| AlgebraError::FactorLimit)?;
            let dens = intfactor::divisors(&clead).map_err(|_| AlgebraError::FactorLimit)?;
            if nums.len().saturating_mul(dens.len()) > 200_000 {
                return Err(AlgebraError::FactorLimit);
            }
            let mut out = Vec::new();
            for n in &nums {
                for d in &dens {
                    if !n.gcd(d).is_one() {
                        continue;
                    }
                    out.push(Rational::new(n.clone(), d.clone()));
                    out.push(Rational::new(-n.clone(), d.clone()));
                }
            }
            Ok(out)
        }
    }
}

/// Constant and leading coefficients after clearing denominators and content.
fn integer_model_ends(p: &QPoly) -> (BigInt, BigInt) {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    let mut gcd = BigInt::zero();
    for c in &ints {
        gcd = gcd.gcd(c);
    }
    (
        ints.first().unwrap() / &gcd,
        ints.last().unwrap() / &gcd,
    )
}

/// Result of extracting monic linear factors over the field itself:
/// p = content * prod (x - root)^mult * residual, residual monic with no
/// discoverable roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSplit<F: CoefficientField> {
    pub roots: Vec<(F, usize)>,
    pub residual: Polynomial<F>,
    pub content: F,
}

impl<F: CoefficientField> LinearSplit<F> {
    pub fn reconstruct(&self) -> Polynomial<F> {
        let mut p = Polynomial::constant(self.content.clone());
        for (r, m) in &self.roots {
            p = p.mul(&Polynomial::linear_from_root(r).pow(*m as u32));
        }
        p.mul(&self.residual)
    }
}

/// Fields over which linear factors of polynomials can be searched for.
pub trait LinearFactorField: CoefficientField {
    /// For Q the answer is exact; for fraction-field levels it is the
    /// specialize-and-interpolate heuristic, with every reported factor
    /// verified by exact division.
    fn linear_split(p: &Polynomial<Self>) -> Result<LinearSplit<Self>, AlgebraError>;
}

impl LinearFactorField for Rational {
    fn linear_split(p: &Polynomial<Self>) -> Result<LinearSplit<Self>, AlgebraError> {
        let roots = rational_roots(p)?;
        let mut residual = p.monic();
        for (r, m) in &roots {
            let lin = QPoly::linear_from_root(r).pow(*m as u32);
            residual = residual.exact_div(&lin).expect("verified root divides");
        }
        Ok(LinearSplit {
            roots,
            residual,
            content: p.leading(),
        })
    }
}

const SAMPLE_POOL: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const SAMPLES_NEEDED: usize = 5;
const MAX_ROOT_COMBINATIONS: usize = 4096;
const MAX_INTERPOLATION_DEGREE: usize = 4;

impl<F: LinearFactorField> LinearFactorField for RationalFunction<F> {
    fn linear_split(p: &Polynomial<Self>) -> Result<LinearSplit<Self>, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let content = p.leading();
        if p.is_constant() {
            return Ok(LinearSplit {
                roots: vec![],
                residual: Polynomial::one(),
                content,
            });
        }

        // Specialize the coefficient variable at sample rationals where the
        // polynomial keeps its degree and has no coefficient poles.
        let mut sample_data: Vec<(F, Vec<F>)> = Vec::new();
        for s in SAMPLE_POOL {
            let point = F::from_int(s);
            let specialized: Option<Vec<F>> =
                p.coeffs().iter().map(|c| c.eval_at(&point)).collect();
            let Some(coeffs) = specialized else { continue };
            let q = Polynomial::new(coeffs);
            if q.degree() != p.degree() {
                continue;
            }
            let roots = F::linear_split(&q)?
                .roots
                .into_iter()
                .map(|(r, _)| r)
                .collect();
            sample_data.push((point, roots));
            if sample_data.len() == SAMPLES_NEEDED {
                break;
            }
        }
        if sample_data.len() < SAMPLES_NEEDED {
            return Err(AlgebraError::NoSamples);
        }

        // Interpolate candidate roots through every combination of one root
        // per sample (bounded), keeping only candidates of small degree.
        let mut candidates: Vec<Polynomial<F>> = Vec::new();
        let counts: Vec<usize> = sample_data.iter().map(|(_, r)| r.len()).collect();
        if counts.iter().any(|&c| c == 0) {
            return Ok(LinearSplit {
                roots: vec![],
                residual: p.monic(),
                content,
            });
        }
        let total: usize = counts.iter().product();
        let mut index = vec![0usize; sample_data.len()];
        for _ in 0..total.min(MAX_ROOT_COMBINATIONS) {
            let points: Vec<(F, F)> = sample_data
                .iter()
                .zip(&index)
                .map(|((x, roots), &i)| (x.clone(), roots[i].clone()))
                .collect();
            let cand = interpolate(&points);
            if cand.degree().is_none_or(|d| d <= MAX_INTERPOLATION_DEGREE)
                && !candidates.iter().any(|c| c == &cand)
            {
                candidates.push(cand);
            }
            // odometer
            for pos in 0..index.len() {
                index[pos] += 1;
                if index[pos] < counts[pos] {
                    break;
                }
                index[pos] = 0;
            }
        }

        // Verify candidates by exact division.
        let mut residual = p.monic();
        let mut roots: Vec<(Self, usize)> = Vec::new();
        for cand in candidates {
            let root = Self::from_poly(cand);
            let lin = Polynomial::linear_from_root(&root);
            let mut m = 0usize;
            while let Some(q) = residual.exact_div(&lin) {
                residual = q;
                m += 1;
            }
            if m > 0 {
                roots.push((root, m));
            }
        }
        roots.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        Ok(LinearSplit {
            roots,
            residual,
            content,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::ratfunc::ParamRat;

    fn p(coeffs: &[i64]) -> QPoly {
        QPoly::from_ints(coeffs)
    }

    #[test]
    fn squarefree_examples() {
        // t^3 (t-1)^2
        let f = p(&[0, 0, 0, 1]).mul(&p(&[1, -2, 1]));
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d.content, rat_int(1));
        assert_eq!(d.factors, vec![(p(&[-1, 1]), 2), (p(&[0, 1]), 3)]);
        assert_eq!(d.reconstruct(), f);

        let c = squarefree_decomposition(&p(&[5])).unwrap();
        assert_eq!(c.content, rat_int(5));
        assert!(c.factors.is_empty());

        // (t^2+1)^2 t
        let g = p(&[1, 0, 1]).pow(2).mul(&p(&[0, 1]));
        let d = squarefree_decomposition(&g).unwrap();
        assert_eq!(d.factors, vec![(p(&[0, 1]), 1), (p(&[1, 0, 1]), 2)]);

        assert_eq!(
            squarefree_decomposition(&QPoly::zero()),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn rational_roots_examples() {
        // 2t^2 - 3t + 1 = (2t - 1)(t - 1)
        let roots = rational_roots(&p(&[1, -3, 2])).unwrap();
        assert_eq!(roots, vec![(rat(1, 2), 1), (rat_int(1), 1)]);
        assert!(rational_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        // 6t^3 - 11t^2 + 6t - 1 = (t-1)(2t-1)(3t-1)
        let roots = rational_roots(&p(&[-1, 6, -11, 6])).unwrap();
        assert_eq!(
            roots,
            vec![(rat(1, 3), 1), (rat(1, 2), 1), (rat_int(1), 1)]
        );
    }

    #[test]
    fn linear_split_over_parameter() {
        // t^2 - a^2 over Q(a): roots a and -a
        let a = ParamRat::gen();
        let f: Polynomial<ParamRat> = Polynomial::new(vec![
            CoefficientField::mul(&a, &a).neg(),
            ParamRat::zero(),
            ParamRat::one(),
        ]);
        let split = ParamRat::linear_split(&f).unwrap();
        assert_eq!(split.roots.len(), 2);
        assert!(split.residual.is_constant());
        assert_eq!(split.reconstruct(), f);
        let roots: Vec<ParamRat> = split.roots.iter().map(|(r, _)| r.clone()).collect();
        assert!(roots.contains(&a));
        assert!(roots.contains(&a.neg()));

        // t - a^2: single root a^2
        let f: Polynomial<ParamRat> =
            Polynomial::new(vec![CoefficientField::mul(&a, &a).neg(), ParamRat::one()]);
        let split = ParamRat::linear_split(&f).unwrap();
        assert_eq!(split.roots, vec![(CoefficientField::mul(&a, &a), 1)]);
    }

    #[test]
    fn linear_split_irreducible_residual() {
        // t^2 + a has no root in Q(a); oracle: specializations at squares of
        // samples would have rational roots only if -a were a square.
        let a = ParamRat::gen();
        let f: Polynomial<ParamRat> =
            Polynomial::new(vec![a.clone(), ParamRat::zero(), ParamRat::one()]);
        let split = ParamRat::linear_split(&f).unwrap();
        assert!(split.roots.is_empty());
        assert_eq!(split.residual, f);
    }
}
