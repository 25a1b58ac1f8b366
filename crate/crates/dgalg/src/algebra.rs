//! Degree-truncated normal forms in a quotient of a free algebra by a
//! two-sided ideal of homogeneous relations.
//!
//! No Groebner machinery: since every relation is homogeneous and every
//! degree component is finite dimensional, the degree-n ideal span is plain
//! linear algebra.  Normal words of degree n are the non-pivot columns of
//! the row-reduced span under the deglex column order, so "later" monomials
//! survive as normal words and all normal forms are deterministic.

use alloc::sync::Arc;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{echelonize, Rational, RowSpace, SparseVec};
use crate::ncpoly::NcPoly;
use crate::word::{GeneratorSet, Word};

/// A presentation `k<x_1,..,x_n> / (relations)` with homogeneous relations
/// of degree at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub gens: GeneratorSet,
    pub relations: Vec<NcPoly>,
}

impl Presentation {
    pub fn new(gens: GeneratorSet, relations: Vec<NcPoly>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            match r.homogeneous_degree(&gens)? {
                None => {
                    return Err(Error::Invalid(alloc::format!("relation {i} is zero")));
                }
                Some(d) if d < 2 => {
                    return Err(Error::Invalid(alloc::format!(
                        "relation {i} has degree {d}; relations must have degree >= 2"
                    )));
                }
                Some(_) => {}
            }
        }
        Ok(Presentation { gens, relations })
    }

    /// Free algebra on the given generators.
    pub fn free(gens: GeneratorSet) -> Self {
        Presentation { gens, relations: Vec::new() }
    }

    pub fn max_relation_degree(&self) -> Option<usize> {
        self.relations
            .iter()
            .map(|r| self.gens.word_degree(r.terms.keys().next().unwrap()))
            .max()
    }
}

/// The degree-n component of a presented algebra: the free words of that
/// degree, the echelonized ideal span, and the surviving normal words.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    pub degree: usize,
    /// All free words of this degree in deglex (letter-lexicographic) order.
    pub words: Vec<Word>,
    /// Echelonized span of `u * r * v` over the free degree-n coordinates.
    reducer: RowSpace,
    /// Indices into `words` of the normal words, strictly increasing.
    pub normal: Vec<usize>,
    /// free word index -> slot in `normal`, or `None` for pivot words.
    normal_slot: Vec<Option<usize>>,
}

impl DegreeBasis {
    fn build(pres: &Presentation, degree: usize) -> DegreeBasis {
        let words = pres.gens.words_of_degree(degree);
        let index_of = |w: &Word| -> u32 {
            words.binary_search(w).expect("word of wrong degree") as u32
        };
        let mut span_rows = Vec::new();
        for r in &pres.relations {
            let d_r = pres.gens.word_degree(r.terms.keys().next().unwrap());
            if d_r > degree {
                continue;
            }
            for left_deg in 0..=(degree - d_r) {
                let right_deg = degree - d_r - left_deg;
                for u in pres.gens.words_of_degree(left_deg) {
                    for v in pres.gens.words_of_degree(right_deg) {
                        let entries = r
                            .terms
                            .iter()
                            .map(|(w, c)| (index_of(&u.concat(w).concat(&v)), c.clone()))
                            .collect();
                        span_rows.push(SparseVec::from_pairs(entries));
                    }
                }
            }
        }
        let reducer = echelonize(span_rows);
        let mut normal = Vec::new();
        let mut normal_slot = alloc::vec![None; words.len()];
        for i in 0..words.len() {
            if !reducer.has_pivot(i as u32) {
                normal_slot[i] = Some(normal.len());
                normal.push(i);
            }
        }
        DegreeBasis { degree, words, reducer, normal, normal_slot }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn free_dim(&self) -> usize {
        self.words.len()
    }

    pub fn rank_of_ideal(&self) -> usize {
        self.reducer.rank()
    }

    pub fn normal_words(&self) -> impl Iterator<Item = &Word> {
        self.normal.iter().map(|&i| &self.words[i])
    }

    pub fn normal_word(&self, slot: usize) -> &Word {
        &self.words[self.normal[slot]]
    }

    /// Slot of a word that is already normal.
    pub fn slot_of(&self, w: &Word) -> Option<usize> {
        let idx = self.words.binary_search(w).ok()?;
        self.normal_slot[idx]
    }

    /// Reduce a sparse vector over free-word coordinates modulo the ideal
    /// span; the result is supported on normal words only.
    fn reduce_free_vec(&self, v: &mut SparseVec) {
        self.reducer.reduce_full(v);
    }

    /// The projection matrix from free degree-n coordinates onto normal-word
    /// coordinates; composed with the inclusion of normal words it is the
    /// identity.
    pub fn projection(&self) -> crate::linalg::QMatrix {
        let mut m = crate::linalg::QMatrix::zero(self.normal.len(), self.words.len());
        for (free_idx, _) in self.words.iter().enumerate() {
            let mut v = SparseVec::from_pairs(alloc::vec![(
                free_idx as u32,
                num_traits::One::one()
            )]);
            self.reduce_free_vec(&mut v);
            for (c, a) in &v.entries {
                let slot = self.normal_slot[*c as usize].expect("reduced vector hit pivot word");
                *m.at_mut(slot, free_idx) = a.clone();
            }
        }
        m
    }
}

/// All degree components of a presented algebra up to a hard cutoff,
/// computed eagerly so the tables are immutable afterwards and safe to share
/// across threads.
#[derive(Debug, Clone)]
pub struct AlgebraTables {
    pres: Presentation,
    cutoff: usize,
    bases: Vec<Arc<DegreeBasis>>,
}

impl AlgebraTables {
    pub fn new(pres: Presentation, cutoff: usize) -> Self {
        let bases = (0..=cutoff).map(|n| Arc::new(DegreeBasis::build(&pres, n))).collect();
        AlgebraTables { pres, cutoff, bases }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.pres.gens
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// The degree-n component; errors past the cutoff rather than silently
    /// truncating.
    pub fn basis(&self, n: usize) -> Result<&DegreeBasis> {
        self.bases
            .get(n)
            .map(|b| b.as_ref())
            .ok_or(Error::WindowExceeded { needed: n, cutoff: self.cutoff })
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.basis(n)?.dim())
    }

    /// Normal form of a polynomial modulo the ideal; linear, idempotent, and
    /// zero exactly on ideal members.  Non-homogeneous input is reduced
    /// component-wise.
    pub fn reduce(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (degree, component) in p.components(self.gens()) {
            let basis = self.basis(degree)?;
            let mut v = self.poly_to_free_vec(basis, &component);
            basis.reduce_free_vec(&mut v);
            for (c, a) in v.entries {
                out.add_term(basis.words[c as usize].clone(), a);
            }
        }
        Ok(out)
    }

    /// Product in the quotient: free concatenation followed by reduction.
    pub fn multiply(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.reduce(&a.mul_free(b))
    }

    /// Two-sided ideal membership, for homogeneous (or any) input.
    pub fn ideal_contains(&self, p: &NcPoly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    fn poly_to_free_vec(&self, basis: &DegreeBasis, p: &NcPoly) -> SparseVec {
        SparseVec::from_pairs(
            p.terms
                .iter()
                .map(|(w, c)| {
                    (basis.words.binary_search(w).expect("degree mismatch") as u32, c.clone())
                })
                .collect(),
        )
    }

    /// Coordinates of a reduced homogeneous polynomial in the normal basis
    /// of its degree.
    pub fn poly_to_normal_vec(&self, degree: usize, p: &NcPoly) -> Result<SparseVec> {
        let basis = self.basis(degree)?;
        let mut entries = Vec::with_capacity(p.terms.len());
        for (w, c) in &p.terms {
            match basis.slot_of(w) {
                Some(slot) => entries.push((slot as u32, c.clone())),
                None => {
                    return Err(Error::Internal(alloc::format!(
                        "word `{}` is not normal at degree {degree}",
                        w.format(self.gens())
                    )))
                }
            }
        }
        Ok(SparseVec::from_pairs(entries))
    }

    /// Inverse of [`AlgebraTables::poly_to_normal_vec`].
    pub fn normal_vec_to_poly(&self, degree: usize, v: &SparseVec) -> Result<NcPoly> {
        let basis = self.basis(degree)?;
        let mut p = NcPoly::zero();
        for (slot, c) in &v.entries {
            p.add_term(basis.normal_word(*slot as usize).clone(), c.clone());
        }
        Ok(p)
    }

    /// All normal words of a degree as polynomials (the monomial basis).
    pub fn normal_basis_polys(&self, degree: usize) -> Result<Vec<NcPoly>> {
        Ok(self.basis(degree)?.normal_words().cloned().map(NcPoly::from_word).collect())
    }

    /// A deterministic pseudo-random homogeneous reduced element of the
    /// given degree, for property tests.  `state` evolves splitmix64-style.
    pub fn random_element(&self, degree: usize, state: &mut u64) -> Result<NcPoly> {
        let basis = self.basis(degree)?;
        let mut p = NcPoly::zero();
        for slot in 0..basis.dim() {
            *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let r = (*state >> 33) % 7;
            if r < 3 {
                let coef = Rational::from_integer(((r as i64) - 1).into());
                if !coef.is_zero() {
                    p.add_term(basis.normal_word(slot).clone(), coef);
                }
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn down_up() -> AlgebraTables {
        let gens = GeneratorSet::degree_one(&["x", "y"]).unwrap();
        let r1 = NcPoly::parse(&gens, "x*x*y - y*x*x").unwrap();
        let r2 = NcPoly::parse(&gens, "x*y*y - y*y*x").unwrap();
        AlgebraTables::new(Presentation::new(gens, alloc::vec![r1, r2]).unwrap(), 8)
    }

    #[test]
    fn free_algebra_dimensions() {
        let gens = GeneratorSet::degree_one(&["x1", "x2", "x3"]).unwrap();
        let alg = AlgebraTables::new(Presentation::free(gens), 4);
        assert_eq!(alg.dim(2).unwrap(), 9);
        assert_eq!(alg.dim(0).unwrap(), 1);
        // For the free presentation, reduce is the identity.
        let p = NcPoly::parse(alg.gens(), "x1*x2 - 2*x3*x1").unwrap();
        assert_eq!(alg.reduce(&p).unwrap(), p);
    }

    #[test]
    fn down_up_degree_three_dimension() {
        // Brute-force span oracle: 8 free words minus the rank-2 span of the
        // two relations leaves dimension 6.
        let alg = down_up();
        let basis = alg.basis(3).unwrap();
        assert_eq!(basis.free_dim(), 8);
        assert_eq!(basis.rank_of_ideal(), 2);
        assert_eq!(basis.dim(), 6);
    }

    #[test]
    fn relations_reduce_to_zero() {
        let alg = down_up();
        for r in &alg.presentation().relations.clone() {
            assert!(alg.ideal_contains(r).unwrap());
        }
        // x^2*y - y*x^2 is literally the first relation.
        let p = NcPoly::parse(alg.gens(), "x*x*y - y*x*x").unwrap();
        assert!(alg.ideal_contains(&p).unwrap());
        assert!(!alg.ideal_contains(&NcPoly::one()).unwrap());
    }

    #[test]
    fn reduce_is_linear_and_idempotent() {
        let alg = down_up();
        let p = NcPoly::parse(alg.gens(), "x*y*y").unwrap();
        let q1 = NcPoly::parse(alg.gens(), "y*y*x").unwrap();
        let rp = alg.reduce(&p).unwrap();
        let rq = alg.reduce(&q1).unwrap();
        // Membership oracle: the two sides of the relation get the same
        // normal form.
        assert_eq!(rp, rq);
        assert_eq!(alg.reduce(&rp).unwrap(), rp);
    }

    #[test]
    fn unit_is_normal() {
        let alg = down_up();
        assert_eq!(alg.reduce(&NcPoly::one()).unwrap(), NcPoly::one());
    }

    #[test]
    fn ab_quotient_dimension_is_linear() {
        // k<a,b>/(ab) has dim n+1 in degree n: the words b^i a^j survive.
        let gens = GeneratorSet::degree_one(&["a", "b"]).unwrap();
        let rel = NcPoly::parse(&gens, "a*b").unwrap();
        let alg = AlgebraTables::new(Presentation::new(gens, alloc::vec![rel]).unwrap(), 8);
        for n in 0..=8 {
            assert_eq!(alg.dim(n).unwrap(), n + 1, "degree {n}");
        }
    }

    #[test]
    fn multiply_is_associative_and_unital() {
        let alg = down_up();
        let mut state = 42u64;
        for _ in 0..20 {
            let a = alg.random_element(2, &mut state).unwrap();
            let b = alg.random_element(1, &mut state).unwrap();
            let c = alg.random_element(2, &mut state).unwrap();
            let ab_c = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert_eq!(alg.multiply(&a, &NcPoly::one()).unwrap(), alg.reduce(&a).unwrap());
        }
    }

    #[test]
    fn reduce_compatible_with_product() {
        let alg = down_up();
        let mut state = 7u64;
        for _ in 0..20 {
            let a = alg.random_element(3, &mut state).unwrap();
            let b = alg.random_element(3, &mut state).unwrap();
            let lhs = alg.reduce(&a.mul_free(&b)).unwrap();
            let rhs = alg
                .multiply(&alg.reduce(&a).unwrap(), &alg.reduce(&b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_section_is_identity() {
        let alg = down_up();
        let basis = alg.basis(3).unwrap();
        let proj = basis.projection();
        // Columns of the inclusion are the normal words themselves.
        for (slot, &free_idx) in basis.normal.iter().enumerate() {
            for row in 0..basis.dim() {
                let expected = if row == slot { q(1) } else { q(0) };
                assert_eq!(*proj.at(row, free_idx), expected);
            }
        }
    }

    #[test]
    fn cutoff_is_hard() {
        let alg = down_up();
        let p = NcPoly::parse(alg.gens(), "x*x*x*x*x*x*x*x*x").unwrap();
        assert!(matches!(alg.reduce(&p), Err(Error::WindowExceeded { needed: 9, cutoff: 8 })));
    }
}
