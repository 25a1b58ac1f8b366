//! Finite-dimensional graded algebras given by structure constants.

use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A finite graded algebra presented by an ordered basis with integer
/// degrees and a full table of structure constants
/// `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGradedAlgebra {
    pub basis_names: Vec<String>,
    pub degrees: Vec<i64>,
    pub structure_constants: Vec<Vec<Vec<Rational>>>,
    pub unit_index: usize,
}

impl FiniteGradedAlgebra {
    pub fn new(
        basis_names: Vec<String>,
        degrees: Vec<i64>,
        structure_constants: Vec<Vec<Vec<Rational>>>,
        unit_index: usize,
    ) -> Result<Self> {
        let n = basis_names.len();
        if degrees.len() != n {
            return Err(Error::Invalid("one degree per basis element".into()));
        }
        if unit_index >= n {
            return Err(Error::Invalid("unit index out of range".into()));
        }
        if structure_constants.len() != n
            || structure_constants.iter().any(|row| row.len() != n)
            || structure_constants
                .iter()
                .any(|row| row.iter().any(|entry| entry.len() != n))
        {
            return Err(Error::Invalid(alloc::format!(
                "structure constants must form an {n}x{n}x{n} table"
            )));
        }
        Ok(FiniteGradedAlgebra { basis_names, degrees, structure_constants, unit_index })
    }

    /// The base field alone.
    pub fn scalar_field() -> Self {
        FiniteGradedAlgebra {
            basis_names: alloc::vec![String::from("1")],
            degrees: alloc::vec![0],
            structure_constants: alloc::vec![alloc::vec![alloc::vec![Rational::one()]]],
            unit_index: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn dim_at(&self, degree: i64) -> usize {
        self.degrees.iter().filter(|&&d| d == degree).count()
    }

    pub fn degrees_present(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.degrees.clone();
        out.sort();
        out.dedup();
        out
    }

    pub fn product_coords(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure_constants[i][j]
    }

    /// Product of two coordinate vectors.
    pub fn multiply_vecs(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = alloc::vec![Rational::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let scale = &a[i] * &b[j];
                for k in 0..n {
                    let c = &self.structure_constants[i][j][k];
                    if !c.is_zero() {
                        out[k] += c * &scale;
                    }
                }
            }
        }
        out
    }

    /// Check grading compatibility, associativity over all basis triples,
    /// and the unit law.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.structure_constants[i][j][k].is_zero()
                        && self.degrees[k] != self.degrees[i] + self.degrees[j]
                    {
                        return Err(Error::GradingViolation { i, j, k });
                    }
                }
            }
        }
        let u = self.unit_index;
        for i in 0..n {
            for k in 0..n {
                let left_ok = self.structure_constants[u][i][k].is_one() == (k == i)
                    && (self.structure_constants[u][i][k].is_zero() || k == i);
                let right_ok = self.structure_constants[i][u][k].is_one() == (k == i)
                    && (self.structure_constants[i][u][k].is_zero() || k == i);
                if !left_ok || !right_ok {
                    return Err(Error::UnitViolation { i });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_coords(i, j).to_vec();
                for k in 0..n {
                    let jk = self.product_coords(j, k).to_vec();
                    let mut unit_i = alloc::vec![Rational::zero(); n];
                    unit_i[i] = Rational::one();
                    let mut unit_k = alloc::vec![Rational::zero(); n];
                    unit_k[k] = Rational::one();
                    let lhs = self.multiply_vecs(&ij, &unit_k);
                    let rhs = self.multiply_vecs(&unit_i, &jk);
                    if lhs != rhs {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| self.structure_constants[i][j] == self.structure_constants[j][i])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    /// k[x]/(x^m) with |x| = deg.
    pub fn truncated_poly(m: usize, deg: i64) -> FiniteGradedAlgebra {
        let n = m;
        let mut sc = alloc::vec![alloc::vec![alloc::vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    sc[i][j][i + j] = Rational::one();
                }
            }
        }
        FiniteGradedAlgebra::new(
            (0..n).map(|i| alloc::format!("x{i}")).collect(),
            (0..n).map(|i| deg * i as i64).collect(),
            sc,
            0,
        )
        .unwrap()
    }

    #[test]
    fn scalar_field_validates() {
        FiniteGradedAlgebra::scalar_field().validate().unwrap();
    }

    #[test]
    fn truncated_poly_validates() {
        truncated_poly(4, 0).validate().unwrap();
        truncated_poly(2, -1).validate().unwrap();
    }

    #[test]
    fn grading_violation_detected() {
        let mut bad = truncated_poly(2, -1);
        // x*x = 1 would violate |x|+|x| = -2 != 0
        bad.structure_constants[1][1][0] = q(1);
        assert!(matches!(bad.validate(), Err(Error::GradingViolation { i: 1, j: 1, k: 0 })));
    }

    #[test]
    fn associativity_violation_detected() {
        let mut bad = truncated_poly(3, 0);
        bad.structure_constants[1][1][2] = q(2);
        assert!(matches!(bad.validate(), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn unit_violation_detected() {
        let mut bad = truncated_poly(2, 0);
        bad.structure_constants[0][1][1] = q(3);
        assert!(matches!(bad.validate(), Err(Error::UnitViolation { .. })));
    }
}
