//! Intersection lattices of reducible fibers, Zariski-lemma verification,
//! and the exact boundary linear system with its nonvanishing certificate.
//!
//! All linear algebra here is exact: fraction-free Bareiss elimination over
//! the integers for determinants, Cramer solves on top of it, and a pivoted
//! symmetric elimination over the rationals for semidefiniteness.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;
use crate::tate::FiberType;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be square and symmetric, with matching r and labels")]
    BadShape,
    #[error("multiplicities r must be positive")]
    BadMultiplicities,
    #[error("fiber type {0} is irreducible and has no intersection lattice")]
    IrreducibleType(String),
    #[error("zariski verification failed; the boundary system needs a fiber lattice")]
    ZariskiFailed,
    #[error("touched and normalized indices must differ and be in range")]
    BadIndices,
    #[error("component hit by a section must be reduced (r = 1)")]
    NonReducedComponent,
    #[error("boundary system is singular")]
    SingularSystem,
}

/// Gram matrix of fiber components with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    gram: Vec<Vec<i64>>,
    r: Vec<i64>,
    labels: Vec<String>,
}

impl IntersectionLattice {
    pub fn new(
        gram: Vec<Vec<i64>>,
        r: Vec<i64>,
        labels: Vec<String>,
    ) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 || r.len() != n || labels.len() != n {
            return Err(LatticeError::BadShape);
        }
        for row in &gram {
            if row.len() != n {
                return Err(LatticeError::BadShape);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::BadShape);
                }
            }
        }
        if r.iter().any(|&m| m <= 0) {
            return Err(LatticeError::BadMultiplicities);
        }
        Ok(IntersectionLattice { gram, r, labels })
    }

    pub fn size(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.r
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// gram . r, which is zero exactly when the fiber class lies in the
    /// radical.
    pub fn gram_times_r(&self) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(&self.r).map(|(g, m)| g * m).sum())
            .collect()
    }

    /// Conjugate by a permutation (relabeling of components).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, LatticeError> {
        let n = self.size();
        if perm.len() != n {
            return Err(LatticeError::BadShape);
        }
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[perm[i]][perm[j]];
            }
        }
        let r = perm.iter().map(|&i| self.r[i]).collect();
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        IntersectionLattice::new(gram, r, labels)
    }
}

/// Standard configurations of reducible Kodaira fibers.
pub fn kodaira_gram(fiber_type: FiberType) -> Result<IntersectionLattice, LatticeError> {
    let m = fiber_type.components();
    if m < 2 {
        return Err(LatticeError::IrreducibleType(fiber_type.label()));
    }
    // adjacency with intersection numbers; diagonal filled with -2 below
    let (edges, r): (Vec<(usize, usize, i64)>, Vec<i64>) = match fiber_type {
        FiberType::I(2) | FiberType::III => (vec![(0, 1, 2)], vec![1, 1]),
        FiberType::I(n) => {
            let n = n as usize;
            let mut e: Vec<(usize, usize, i64)> =
                (0..n - 1).map(|i| (i, i + 1, 1)).collect();
            e.push((n - 1, 0, 1));
            (e, vec![1; n])
        }
        FiberType::IV => (vec![(0, 1, 1), (0, 2, 1), (1, 2, 1)], vec![1, 1, 1]),
        FiberType::IStar(n) => {
            // central chain c_0 .. c_n of multiplicity 2, two reduced tails
            // at each end
            let n = n as usize;
            let mut e = Vec::new();
            for i in 0..n {
                e.push((i, i + 1, 1));
            }
            let t = n + 1;
            e.push((0, t, 1));
            e.push((0, t + 1, 1));
            e.push((n, t + 2, 1));
            e.push((n, t + 3, 1));
            let mut mult = vec![2; n + 1];
            mult.extend([1, 1, 1, 1]);
            (e, mult)
        }
        FiberType::IVStar => {
            // center of multiplicity 3 with three arms 2 - 1
            let e = vec![
                (0, 1, 1),
                (1, 2, 1),
                (0, 3, 1),
                (3, 4, 1),
                (0, 5, 1),
                (5, 6, 1),
            ];
            (e, vec![3, 2, 1, 2, 1, 2, 1])
        }
        FiberType::IIIStar => {
            // chain 1-2-3-4-3-2-1 with a 2 attached to the central 4
            let e = vec![
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 6, 1),
                (3, 7, 1),
            ];
            (e, vec![1, 2, 3, 4, 3, 2, 1, 2])
        }
        FiberType::IIStar => {
            // chain 1-2-3-4-5-6-4-2 with a 3 attached to the 6
            let e = vec![
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 6, 1),
                (6, 7, 1),
                (5, 8, 1),
            ];
            (e, vec![1, 2, 3, 4, 5, 6, 4, 2, 3])
        }
        FiberType::II => unreachable!("m = 1 handled above"),
    };
    let n = r.len();
    debug_assert_eq!(n as u32, m);
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        gram[i][i] = -2;
    }
    for (i, j, w) in edges {
        gram[i][j] = w;
        gram[j][i] = w;
    }
    let labels = (1..=n).map(|i| format!("C{i}")).collect();
    let lattice = IntersectionLattice::new(gram, r, labels)?;
    debug_assert!(lattice.gram_times_r().iter().all(|&x| x == 0));
    Ok(lattice)
}

/// Fraction-free Bareiss determinant of an integer matrix.
pub fn bareiss_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

fn minor_matrix(m: &[Vec<i64>], drop: &[usize]) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| !drop.contains(j))
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Negative definite iff the leading principal minors alternate in sign:
/// (-1)^k det_k > 0.
fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    for k in 1..=n {
        let lead: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let det = bareiss_determinant(&lead);
        let want_positive = k % 2 == 0;
        if det.is_zero() {
            return false;
        }
        if det.is_positive() != want_positive {
            return false;
        }
    }
    true
}

/// Exact positive-semidefiniteness of -G by pivoted symmetric elimination
/// over the rationals.
fn is_negative_semidefinite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    // work on -G
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer((-m[i][j]).into()))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // find a positive diagonal pivot
        let pivot = active
            .iter()
            .copied()
            .find(|&i| a[i][i].is_positive());
        match pivot {
            Some(p) => {
                let d = a[p][p].clone();
                let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
                for &i in &others {
                    for &j in &others {
                        let adj = &a[i][p] * &a[p][j] / &d;
                        let v = &a[i][j] - &adj;
                        a[i][j] = v;
                    }
                }
                active.retain(|&i| i != p);
            }
            None => {
                // all remaining diagonal entries are <= 0; PSD requires the
                // whole remaining block to vanish
                for &i in &active {
                    for &j in &active {
                        if !a[i][j].is_zero() {
                            return false;
                        }
                    }
                }
                return true;
            }
        }
    }
    true
}

/// Exact rank over Q.
fn rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&i| !a[i][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for j in col..cols {
            let v = &a[row][j] * &inv;
            a[row][j] = v;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let v = &a[i][j] - &f * &a[row][j];
                    a[i][j] = v;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Result of checking the Zariski-lemma properties of a fiber lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZariskiReport {
    pub negative_semidefinite: bool,
    pub fiber_class_in_radical: bool,
    pub radical_rank_one: bool,
    pub deleted_submatrices_negative_definite: bool,
    /// Sign of det of the full one-deleted submatrix, per deleted index:
    /// +1, -1, or 0. Recorded, not enforced.
    pub deleted_det_signs: Vec<i8>,
}

impl ZariskiReport {
    pub fn all_hold(&self) -> bool {
        self.negative_semidefinite
            && self.fiber_class_in_radical
            && self.radical_rank_one
            && self.deleted_submatrices_negative_definite
    }
}

/// Verify negative semidefiniteness, that the radical is spanned by the
/// fiber class, and that deleting any single component leaves a negative
/// definite lattice.
pub fn verify_zariski(lattice: &IntersectionLattice) -> ZariskiReport {
    let g = lattice.gram();
    let n = lattice.size();
    let negative_semidefinite = is_negative_semidefinite(g);
    let fiber_class_in_radical = lattice.gram_times_r().iter().all(|&x| x == 0);
    let radical_rank_one = rank(g) == n - 1;
    let mut deleted_ok = true;
    let mut signs = Vec::with_capacity(n);
    for i in 0..n {
        let sub = minor_matrix(g, &[i]);
        if !is_negative_definite(&sub) {
            deleted_ok = false;
        }
        let det = bareiss_determinant(&sub);
        signs.push(if det.is_zero() {
            0
        } else if det.is_positive() {
            1
        } else {
            -1
        });
    }
    ZariskiReport {
        negative_semidefinite,
        fiber_class_in_radical,
        radical_rank_one,
        deleted_submatrices_negative_definite: deleted_ok,
        deleted_det_signs: signs,
    }
}

/// Exact solution of the boundary system: gram with the `normalized` row
/// and column removed, right-hand side -1 in the `touched` position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySolution {
    /// Full-length coefficient vector with a[normalized] = 0.
    pub a: Vec<Rational>,
    pub det_a: BigInt,
    pub det_a11: BigInt,
    pub touched: usize,
    pub normalized: usize,
    /// a[touched] != a[normalized]
    pub certificate: bool,
}

/// Solve A x = -e_touched by Cramer's rule with Bareiss determinants.
pub fn solve_boundary_system(
    lattice: &IntersectionLattice,
    touched: usize,
    normalized: usize,
) -> Result<BoundarySolution, LatticeError> {
    let n = lattice.size();
    if touched >= n || normalized >= n || touched == normalized {
        return Err(LatticeError::BadIndices);
    }
    if !verify_zariski(lattice).all_hold() {
        return Err(LatticeError::ZariskiFailed);
    }
    let sub = minor_matrix(lattice.gram(), &[normalized]);
    let kept: Vec<usize> = (0..n).filter(|&i| i != normalized).collect();
    let touched_in_sub = kept.iter().position(|&i| i == touched).expect("touched kept");
    let det_a = bareiss_determinant(&sub);
    if det_a.is_zero() {
        return Err(LatticeError::SingularSystem);
    }
    let dim = sub.len();
    // rhs = -1 at touched_in_sub
    let mut x_sub: Vec<Rational> = Vec::with_capacity(dim);
    for col in 0..dim {
        let mut replaced = sub.clone();
        for (i, row) in replaced.iter_mut().enumerate() {
            row[col] = if i == touched_in_sub { -1 } else { 0 };
        }
        let det_col = bareiss_determinant(&replaced);
        x_sub.push(Rational::new(det_col, det_a.clone()));
    }
    // exact residual check
    for (i, row) in sub.iter().enumerate() {
        let mut acc = Rational::from_integer(0.into());
        for (j, &g) in row.iter().enumerate() {
            acc += Rational::from_integer(g.into()) * &x_sub[j];
        }
        let want = if i == touched_in_sub {
            Rational::from_integer((-1).into())
        } else {
            Rational::from_integer(0.into())
        };
        if acc != want {
            return Err(LatticeError::SingularSystem);
        }
    }
    let det_a11 = bareiss_determinant(&minor_matrix(&sub, &[touched_in_sub]));
    let mut a = vec![Rational::from_integer(0.into()); n];
    for (slot, value) in kept.iter().zip(x_sub) {
        a[*slot] = value;
    }
    let certificate = a[touched] != a[normalized];
    Ok(BoundarySolution {
        a,
        det_a,
        det_a11,
        touched,
        normalized,
        certificate,
    })
}

/// The boundary divisor bookkeeping: solved coefficients at the two marked
/// components plus the terms that stay symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDivisor {
    pub solution: BoundarySolution,
    /// Terms of the boundary that are reported, never computed.
    pub symbolic_terms: Vec<String>,
    /// a[t1] != a[t2]: the non-torsion certificate.
    pub non_torsion: bool,
}

pub fn boundary_divisor(
    lattice: &IntersectionLattice,
    t1_index: usize,
    t2_index: usize,
) -> Result<BoundaryDivisor, LatticeError> {
    let n = lattice.size();
    if t1_index >= n || t2_index >= n || t1_index == t2_index {
        return Err(LatticeError::BadIndices);
    }
    let r = lattice.multiplicities();
    if r[t1_index] != 1 || r[t2_index] != 1 {
        return Err(LatticeError::NonReducedComponent);
    }
    let solution = solve_boundary_system(lattice, t1_index, t2_index)?;
    let non_torsion = solution.certificate;
    Ok(BoundaryDivisor {
        solution,
        symbolic_terms: vec![
            "N * [special fiber of the normalized component], N an undetermined integer"
                .to_string(),
            "components of the special fiber not meeting the chosen chain".to_string(),
        ],
        non_torsion,
    })
}

/// JSON form of a lattice: { "gram": [[..]], "r": [..], "labels": [..] }.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub gram: Vec<Vec<i64>>,
    pub r: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl LatticeJson {
    pub fn into_lattice(self) -> Result<IntersectionLattice, LatticeError> {
        let labels = self
            .labels
            .unwrap_or_else(|| (1..=self.gram.len()).map(|i| format!("C{i}")).collect());
        IntersectionLattice::new(self.gram, self.r, labels)
    }

    pub fn from_lattice(lattice: &IntersectionLattice) -> Self {
        LatticeJson {
            schema: Some("1".to_string()),
            gram: lattice.gram().to_vec(),
            r: lattice.multiplicities().to_vec(),
            labels: Some(lattice.labels().to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn lat(gram: Vec<Vec<i64>>, r: Vec<i64>) -> IntersectionLattice {
        let labels = (1..=r.len()).map(|i| format!("C{i}")).collect();
        IntersectionLattice::new(gram, r, labels).unwrap()
    }

    #[test]
    fn i2_gram() {
        let l = kodaira_gram(FiberType::I(2)).unwrap();
        assert_eq!(l.gram(), &[vec![-2, 2], vec![2, -2]]);
        assert_eq!(l.multiplicities(), &[1, 1]);
    }

    #[test]
    fn i3_cyclic() {
        let l = kodaira_gram(FiberType::I(3)).unwrap();
        assert_eq!(
            l.gram(),
            &[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]
        );
    }

    #[test]
    fn i0_star_is_extended_d4() {
        let l = kodaira_gram(FiberType::IStar(0)).unwrap();
        assert_eq!(l.multiplicities(), &[2, 1, 1, 1, 1]);
        assert_eq!(l.gram()[0], vec![-2, 1, 1, 1, 1]);
        assert!(l.gram_times_r().iter().all(|&x| x == 0));
    }

    #[test]
    fn all_reducible_types_satisfy_zariski() {
        let mut types: Vec<FiberType> = (2..=9).map(FiberType::I).collect();
        types.extend((0..=4).map(FiberType::IStar));
        types.extend([
            FiberType::III,
            FiberType::IV,
            FiberType::IVStar,
            FiberType::IIIStar,
            FiberType::IIStar,
        ]);
        for ty in types {
            let l = kodaira_gram(ty).unwrap();
            assert_eq!(l.size() as u32, ty.components(), "{}", ty.label());
            let report = verify_zariski(&l);
            assert!(report.all_hold(), "{}: {report:?}", ty.label());
        }
    }

    #[test]
    fn irreducible_types_rejected() {
        for ty in [FiberType::I(0), FiberType::I(1), FiberType::II] {
            assert!(matches!(
                kodaira_gram(ty),
                Err(LatticeError::IrreducibleType(_))
            ));
        }
    }

    #[test]
    fn positive_curve_fails_zariski() {
        let l = lat(vec![vec![1]], vec![1]);
        let report = verify_zariski(&l);
        assert!(!report.negative_semidefinite);
        assert!(!report.all_hold());
    }

    #[test]
    fn boundary_solution_ruled_degeneration() {
        // two lines meeting once
        let l = lat(vec![vec![-1, 1], vec![1, -1]], vec![1, 1]);
        let sol = solve_boundary_system(&l, 0, 1).unwrap();
        assert_eq!(sol.a, vec![rat(1, 1), rat(0, 1)]);
        assert!(sol.certificate);
        assert_eq!(sol.det_a, BigInt::from(-1));
        assert_eq!(sol.det_a11, BigInt::from(1));
    }

    #[test]
    fn boundary_solution_i2() {
        let l = kodaira_gram(FiberType::I(2)).unwrap();
        let sol = solve_boundary_system(&l, 0, 1).unwrap();
        assert_eq!(sol.a, vec![rat(1, 2), rat(0, 1)]);
        assert!(sol.certificate);
    }

    #[test]
    fn boundary_solution_degeneration_chain() {
        // chain C1 + 2 C2 + C3 from a ruled degeneration
        let l = lat(
            vec![vec![-2, 1, 0], vec![1, -1, 1], vec![0, 1, -2]],
            vec![1, 2, 1],
        );
        let sol = solve_boundary_system(&l, 0, 2).unwrap();
        assert_eq!(sol.a, vec![rat(1, 1), rat(1, 1), rat(0, 1)]);
        assert!(sol.certificate);
        // a1 = -det A11 / det A
        let a1 = Rational::new(-sol.det_a11.clone(), sol.det_a.clone());
        assert_eq!(sol.a[0], a1);
    }

    #[test]
    fn boundary_divisor_demands_reduced_components() {
        let l = lat(
            vec![vec![-2, 1, 0], vec![1, -1, 1], vec![0, 1, -2]],
            vec![1, 2, 1],
        );
        assert!(matches!(
            boundary_divisor(&l, 1, 2),
            Err(LatticeError::NonReducedComponent)
        ));
        let bd = boundary_divisor(&l, 0, 2).unwrap();
        assert!(bd.non_torsion);
        assert_eq!(bd.symbolic_terms.len(), 2);
    }

    #[test]
    fn same_indices_rejected() {
        let l = kodaira_gram(FiberType::I(2)).unwrap();
        assert!(matches!(
            solve_boundary_system(&l, 1, 1),
            Err(LatticeError::BadIndices)
        ));
    }

    #[test]
    fn json_round_trip() {
        let l = kodaira_gram(FiberType::IVStar).unwrap();
        let json = LatticeJson::from_lattice(&l);
        let text = serde_json::to_string(&json).unwrap();
        let back: LatticeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_lattice().unwrap(), l);
    }

    #[test]
    fn permutation_invariance_of_certificate() {
        let l = kodaira_gram(FiberType::I(5)).unwrap();
        let sol = solve_boundary_system(&l, 0, 4).unwrap();
        // relabel via rotation fixing nothing; track indices
        let perm = vec![2, 3, 4, 0, 1];
        let lp = l.permuted(&perm).unwrap();
        // touched 0 moved to position 3, normalized 4 to position 2
        let sol_p = solve_boundary_system(&lp, 3, 2).unwrap();
        assert_eq!(sol.certificate, sol_p.certificate);
        assert_eq!(sol.a[0], sol_p.a[3]);
        assert_eq!(sol.det_a.abs(), sol_p.det_a.abs());
    }
}
