//! Fraction-free polynomial gcd for fraction-field coefficients.
//!
//! Naive Euclidean remainders over Q(a) blow up the degrees of the
//! coefficient fractions. For Polynomial<RationalFunction<F>> we instead
//! clear denominators and run a primitive pseudo-remainder sequence over
//! F[a][t], taking contents out at every step.

use crate::field::CoefficientField;
use crate::polynomial::Polynomial;
use crate::ratfunc::RationalFunction;

type Cleared<F> = Vec<Polynomial<F>>;

fn deg<F: CoefficientField>(p: &Cleared<F>) -> Option<usize> {
    p.len().checked_sub(1)
}

fn trim<F: CoefficientField>(mut p: Cleared<F>) -> Cleared<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Clear denominators: coefficients become polynomials over F.
fn clear<F: CoefficientField>(p: &Polynomial<RationalFunction<F>>) -> Cleared<F> {
    let mut lcm = Polynomial::<F>::one();
    for c in p.coeffs() {
        let den = c.denominator();
        let g = lcm.gcd(den);
        lcm = lcm.mul(&den.exact_div(&g).expect("gcd divides"));
    }
    p.coeffs()
        .iter()
        .map(|c| {
            let cofactor = lcm.exact_div(c.denominator()).expect("lcm");
            c.numerator().mul(&cofactor)
        })
        .collect()
}

fn content<F: CoefficientField>(p: &Cleared<F>) -> Polynomial<F> {
    let mut g = Polynomial::<F>::zero();
    for c in p {
        g = g.gcd(c);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn primitive<F: CoefficientField>(p: Cleared<F>) -> Cleared<F> {
    let p = trim(p);
    if p.is_empty() {
        return p;
    }
    let c = content(&p);
    if c.degree() == Some(0) && c.is_monic() {
        return p;
    }
    p.iter()
        .map(|x| x.exact_div(&c).expect("content divides"))
        .collect()
}

/// Pseudo-remainder of a by b (deg a >= deg b >= 0, b nonzero); the exact
/// leading-coefficient power is irrelevant because the caller re-primitivizes.
fn pseudo_rem<F: CoefficientField>(a: &Cleared<F>, b: &Cleared<F>) -> Cleared<F> {
    let m = deg(b).expect("b nonzero");
    let lcb = b.last().unwrap().clone();
    let mut r = a.clone();
    while let Some(n) = deg(&r) {
        if n < m {
            break;
        }
        let lcr = r.last().unwrap().clone();
        let shift = n - m;
        // r = lcb * r - lcr * x^shift * b
        let mut next: Cleared<F> = vec![Polynomial::zero(); n];
        for (i, c) in r.iter().enumerate().take(n) {
            next[i] = c.mul(&lcb);
        }
        for (i, c) in b.iter().enumerate().take(m) {
            next[i + shift] = next[i + shift].sub(&c.mul(&lcr));
        }
        r = trim(next);
    }
    r
}

/// Monic gcd over the fraction field via a primitive PRS over F[..][t].
pub(crate) fn fraction_free_gcd<F: CoefficientField>(
    p: &Polynomial<RationalFunction<F>>,
    q: &Polynomial<RationalFunction<F>>,
) -> Polynomial<RationalFunction<F>> {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let mut a = primitive(clear(p));
    let mut b = primitive(clear(q));
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        match deg(&b) {
            None => break,
            Some(0) => {
                // coprime up to content
                a = vec![Polynomial::one()];
                break;
            }
            Some(_) => {
                let r = primitive(pseudo_rem(&a, &b));
                a = b;
                b = r;
            }
        }
    }
    Polynomial::new(
        a.into_iter()
            .map(RationalFunction::from_poly)
            .collect::<Vec<_>>(),
    )
    .monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::QPoly;
    use crate::rational::Rational;
    use crate::ratfunc::ParamRat;

    type K = RationalFunction<Rational>;

    fn lin(c0: i64, c1: i64) -> Polynomial<K> {
        Polynomial::new(vec![
            K::constant(Rational::from_integer(c0.into())),
            K::constant(Rational::from_integer(c1.into())),
        ])
    }

    #[test]
    fn agrees_with_direct_euclid_on_q_coefficients() {
        // (t - 1)^2 (t + 2) vs (t - 1)(t + 3)
        let p = lin(-1, 1).pow(2).mul(&lin(2, 1));
        let q = lin(-1, 1).mul(&lin(3, 1));
        let g = fraction_free_gcd(&p, &q);
        assert_eq!(g, lin(-1, 1));
    }

    #[test]
    fn gcd_with_parameter_coefficients() {
        // over Q(a): gcd(t^2 - a^2, t - a) = t - a
        let a = ParamRat::gen();
        let t_minus_a: Polynomial<ParamRat> = Polynomial::linear_from_root(&a);
        let t_plus_a: Polynomial<ParamRat> = Polynomial::linear_from_root(&a.neg());
        let p = t_minus_a.mul(&t_plus_a);
        let g = fraction_free_gcd(&p, &t_minus_a);
        assert_eq!(g, t_minus_a);
    }

    #[test]
    fn coprime_gives_one() {
        let a = ParamRat::gen();
        let p: Polynomial<ParamRat> = Polynomial::new(vec![a.clone(), ParamRat::one()]);
        let q: Polynomial<ParamRat> =
            Polynomial::new(vec![ParamRat::one(), a, ParamRat::one()]);
        let g = fraction_free_gcd(&p, &q);
        assert_eq!(g, Polynomial::one());
    }

    #[test]
    fn fractional_inputs_cleared() {
        // p = (t - 1/a)(t - a), q = (t - a): denominators must clear
        let a = ParamRat::gen();
        let ainv = a.inverse().unwrap();
        let p = Polynomial::linear_from_root(&ainv).mul(&Polynomial::linear_from_root(&a));
        let q = Polynomial::linear_from_root(&a);
        assert_eq!(fraction_free_gcd(&p, &q), q);
        let _ = QPoly::one();
    }
}
