//! Multivariate polynomials over the rationals, just enough for the
//! indeterminate-functional Gram determinants of the Frobenius tests.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Rational};

/// A polynomial in a fixed ordered set of variables; terms map exponent
/// vectors to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut expo = vec![0u32; nvars];
        expo[idx] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(expo, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, expo: Vec<u32>, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&expo) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(&expo);
                }
            }
            None => {
                self.terms.insert(expo, coef);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(expo, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Render with the given variable names, e.g. `l0*l1 - 2*l2^2`.
    pub fn format(&self, names: &[String]) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (expo, coef)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (v, &p) in expo.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if p == 1 {
                    mono.push_str(&names[v]);
                } else {
                    let _ = write!(mono, "{}^{}", names[v], p);
                }
            }
            let coef_str = format_rational(coef);
            let (sign, abs) = match coef_str.strip_prefix('-') {
                Some(a) => ("-", String::from(a)),
                None => ("+", coef_str),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            if mono.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Default dimension bound for [`symbolic_det`].
pub const SYMBOLIC_DET_BOUND: usize = 16;

/// Exact determinant of a square matrix of polynomials, by cofactor
/// expansion over column subsets with memoization.  The caller tests
/// "identically zero" by term inspection of the result.
///
/// Errors with [`Error::DimensionExceeded`] above `bound`, in which case the
/// caller is expected to fall back to randomized evaluation.
pub fn symbolic_det(m: &[Vec<MultiPoly>], bound: usize) -> Result<MultiPoly> {
    let n = m.len();
    if n > bound || n > 32 {
        return Err(Error::DimensionExceeded { dim: n, bound: bound.min(32) });
    }
    let nvars = if n == 0 { 0 } else { m[0][0].nvars };
    for row in m {
        assert_eq!(row.len(), n, "determinant of non-square matrix");
    }
    if n == 0 {
        return Ok(MultiPoly::constant(0, Rational::one()));
    }
    // minor(row, mask): determinant of rows row.. on the columns present in
    // mask.  Expanding always along the topmost remaining row keeps the memo
    // keyed by the column mask alone.
    fn minor(
        m: &[Vec<MultiPoly>],
        row: usize,
        mask: u32,
        nvars: usize,
        memo: &mut BTreeMap<u32, MultiPoly>,
    ) -> MultiPoly {
        if mask == 0 {
            return MultiPoly::constant(nvars, Rational::one());
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let mut acc = MultiPoly::zero(nvars);
        let mut sign_positive = true;
        for col in 0..m.len() {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                let sub = minor(m, row + 1, mask & !(1 << col), nvars, memo);
                let contrib = entry.mul(&sub);
                acc = if sign_positive { acc.add(&contrib) } else { acc.sub(&contrib) };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo = BTreeMap::new();
    Ok(minor(m, 0, full, nvars, &mut memo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn var(i: usize) -> MultiPoly {
        MultiPoly::variable(2, i)
    }

    #[test]
    fn det_diagonal() {
        let zero = MultiPoly::zero(2);
        let m = vec![vec![var(0), zero.clone()], vec![zero.clone(), var(1)]];
        let det = symbolic_det(&m, 16).unwrap();
        assert_eq!(det, var(0).mul(&var(1)));
    }

    #[test]
    fn det_antidiagonal() {
        // Cofactor expansion by hand: det [[0, l], [l, 0]] = -l^2.
        let l = MultiPoly::variable(1, 0);
        let zero = MultiPoly::zero(1);
        let m = vec![vec![zero.clone(), l.clone()], vec![l.clone(), zero.clone()]];
        let det = symbolic_det(&m, 16).unwrap();
        assert_eq!(det, l.mul(&l).neg());
    }

    #[test]
    fn det_rank_deficient() {
        let l = MultiPoly::variable(1, 0);
        let m = vec![vec![l.clone(), l.clone()], vec![l.clone(), l.clone()]];
        assert!(symbolic_det(&m, 16).unwrap().is_zero());
    }

    #[test]
    fn det_dimension_bound() {
        let m: Vec<Vec<MultiPoly>> =
            (0..3).map(|_| (0..3).map(|_| MultiPoly::zero(1)).collect()).collect();
        match symbolic_det(&m, 2) {
            Err(Error::DimensionExceeded { dim: 3, bound: 2 }) => {}
            other => panic!("expected DimensionExceeded, got {other:?}"),
        }
    }

    #[test]
    fn det_matches_rational_at_random_points() {
        // symbolic det vs dense rational det at 50 pseudo-random points.
        use crate::linalg::QMatrix;
        let l0 = MultiPoly::variable(2, 0);
        let l1 = MultiPoly::variable(2, 1);
        let one = MultiPoly::constant(2, q(1));
        let m = vec![
            vec![l0.clone().add(&one), l1.clone()],
            vec![l1.clone(), l0.mul(&l1).sub(&one)],
        ];
        let det = symbolic_det(&m, 16).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state % 21) as i64) - 10
        };
        for _ in 0..50 {
            let point = vec![q(next()), q(next())];
            let dense = QMatrix::from_rows(vec![
                vec![m[0][0].eval(&point), m[0][1].eval(&point)],
                vec![m[1][0].eval(&point), m[1][1].eval(&point)],
            ]);
            assert_eq!(det.eval(&point), dense.det().unwrap());
        }
    }

    #[test]
    fn format_readable() {
        let names = vec![String::from("l0"), String::from("l1")];
        let p = MultiPoly::variable(2, 0)
            .mul(&MultiPoly::variable(2, 1))
            .sub(&MultiPoly::constant(2, q(2)));
        assert_eq!(p.format(&names), "-2 + l0*l1");
    }
}
