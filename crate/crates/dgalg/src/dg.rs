//! The DG-algebra layer: Leibniz differential, degree-wise cocycles,
//! coboundaries and cohomology, and the cohomology algebra up to a window.
//!
//! Sign convention: for a word `w = a.b` the differential expands as
//! `d(w) = d(a).b + (-1)^{deg a} a.d(b)`, extended linearly; this is the
//! convention under which every worked computation in the source material
//! comes out right.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraTables, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{echelonize, left_kernel, Rational, RowSpace, SparseVec};
use crate::ncpoly::NcPoly;
use crate::word::Word;

/// A connected cochain DG algebra: a presentation plus one homogeneous
/// differential image per generator, with `deg d(x) = deg x + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgAlgebra {
    pub pres: Presentation,
    pub diff_images: Vec<NcPoly>,
}

impl DgAlgebra {
    pub fn new(pres: Presentation, diff_images: Vec<NcPoly>) -> Result<Self> {
        if diff_images.len() != pres.gens.len() {
            return Err(Error::Invalid(alloc::format!(
                "expected {} differential images, got {}",
                pres.gens.len(),
                diff_images.len()
            )));
        }
        for (i, img) in diff_images.iter().enumerate() {
            let expected = pres.gens.degree(i) + 1;
            match img.homogeneous_degree(&pres.gens)? {
                None => {}
                Some(d) if d == expected => {}
                Some(d) => {
                    return Err(Error::Invalid(alloc::format!(
                        "d({}) has degree {d}, expected {expected}",
                        pres.gens.name(i)
                    )));
                }
            }
        }
        Ok(DgAlgebra { pres, diff_images })
    }

    /// A graded algebra viewed as a DG algebra with zero differential.
    pub fn with_zero_differential(pres: Presentation) -> Self {
        let n = pres.gens.len();
        DgAlgebra { pres, diff_images: alloc::vec![NcPoly::zero(); n] }
    }
}

/// Cohomology of one degree: dimension, canonical cocycle representatives,
/// and the dimension of the coboundary space.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<NcPoly>,
    pub coboundary_dim: usize,
}

/// Canonical spaces at one degree of a complex, in normal coordinates.
///
/// Representatives of cohomology classes are the rows of the cocycle RREF
/// whose pivot is not a coboundary pivot (the coboundary RREF extended to
/// the cocycle space, keeping the appended rows).  For expressing classes,
/// the basis of the cocycle space is assembled from actual coboundary rows
/// at boundary pivots plus the representative rows, so the coboundary part
/// of a cocycle really is discarded into the boundary space.
#[derive(Debug, Clone)]
pub struct ClassBasis {
    /// Echelon basis of the cocycle space: RREF(B) rows at boundary pivots,
    /// representative rows elsewhere, sorted by pivot column.
    rows: Vec<SparseVec>,
    pub pivots: Vec<u32>,
    pub is_rep: Vec<bool>,
    pivot_map: BTreeMap<u32, usize>,
}

impl ClassBasis {
    /// Build from a spanning set of the cocycle space and the echelonized
    /// coboundary space it contains.
    pub fn new(cocycle_span: Vec<SparseVec>, boundaries: &RowSpace) -> ClassBasis {
        let z_rref = echelonize(cocycle_span).to_rref();
        let b_rref = boundaries.to_rref();
        let b_by_pivot: BTreeMap<u32, SparseVec> =
            b_rref.into_iter().map(|r| (r.leading().unwrap().0, r)).collect();
        let mut rows = Vec::with_capacity(z_rref.len());
        let mut pivots = Vec::with_capacity(z_rref.len());
        let mut is_rep = Vec::with_capacity(z_rref.len());
        for row in z_rref {
            let pivot = row.leading().unwrap().0;
            match b_by_pivot.get(&pivot) {
                Some(b_row) => {
                    rows.push(b_row.clone());
                    is_rep.push(false);
                }
                None => {
                    rows.push(row);
                    is_rep.push(true);
                }
            }
            pivots.push(pivot);
        }
        debug_assert_eq!(
            b_by_pivot.len() + is_rep.iter().filter(|r| **r).count(),
            rows.len()
        );
        let pivot_map = pivots.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        ClassBasis { rows, pivots, is_rep, pivot_map }
    }

    pub fn class_dim(&self) -> usize {
        self.is_rep.iter().filter(|r| **r).count()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().zip(&self.is_rep).filter(|(_, rep)| **rep).map(|(r, _)| r)
    }

    /// Coordinates of a cocycle in the representative basis, discarding its
    /// coboundary part.  Errors if the vector is not in the cocycle span.
    pub fn express(&self, v: &SparseVec) -> Result<Vec<Rational>> {
        let mut coords = alloc::vec![Rational::zero(); self.class_dim()];
        let mut w = v.clone();
        while let Some((col, _)) = w.leading() {
            match self.pivot_map.get(&col) {
                Some(&row) => {
                    let factor = w.entries[0].1.clone();
                    if self.is_rep[row] {
                        let rep_idx = self.is_rep[..row].iter().filter(|r| **r).count();
                        coords[rep_idx] = factor.clone();
                    }
                    w.sub_scaled(&factor, &self.rows[row]);
                }
                None => {
                    return Err(Error::Internal(String::from(
                        "vector is not a cocycle of this degree",
                    )))
                }
            }
        }
        Ok(coords)
    }
}

/// A DG algebra with all degree tables and differential matrices built up to
/// a window.  Degrees `0..=max_degree` of cohomology are available; the
/// underlying algebra tables extend one degree further so every kernel and
/// image in the window is exactly computable.  Immutable once built.
#[derive(Debug, Clone)]
pub struct DgTables {
    alg: AlgebraTables,
    dg: DgAlgebra,
    max_degree: usize,
    /// `diff_rows[n][slot]`: the differential of the slot-th normal word of
    /// degree n, in normal coordinates of degree n+1.
    diff_rows: Vec<Vec<SparseVec>>,
    /// Rank of the differential out of each degree `0..=max_degree`.
    diff_ranks: Vec<usize>,
}

impl DgTables {
    pub fn new(dg: DgAlgebra, max_degree: usize) -> Result<Self> {
        let alg = AlgebraTables::new(dg.pres.clone(), max_degree + 1);
        let diff_images: Vec<NcPoly> =
            dg.diff_images.iter().map(|p| alg.reduce(p)).collect::<Result<_>>()?;
        let dg = DgAlgebra { pres: dg.pres, diff_images };
        let mut tables =
            DgTables { alg, dg, max_degree, diff_rows: Vec::new(), diff_ranks: Vec::new() };
        for n in 0..=max_degree {
            let basis = tables.alg.basis(n)?;
            let words: Vec<Word> = basis.normal_words().cloned().collect();
            let mut rows = Vec::with_capacity(words.len());
            for w in &words {
                let image = tables.alg.reduce(&tables.diff_word_free(w))?;
                rows.push(tables.alg.poly_to_normal_vec(n + 1, &image)?);
            }
            tables.diff_rows.push(rows);
        }
        tables.diff_ranks =
            tables.diff_rows.iter().map(|rows| crate::linalg::rank_of_rows(rows.clone())).collect();
        Ok(tables)
    }

    pub fn algebra(&self) -> &AlgebraTables {
        &self.alg
    }

    pub fn dg(&self) -> &DgAlgebra {
        &self.dg
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Leibniz expansion of the differential of a word, in the free algebra.
    fn diff_word_free(&self, w: &Word) -> NcPoly {
        let mut acc = NcPoly::zero();
        let letters = w.letters();
        let mut prefix_degree = 0usize;
        for (j, &letter) in letters.iter().enumerate() {
            let image = &self.dg.diff_images[letter as usize];
            if !image.is_zero() {
                let prefix = NcPoly::from_word(Word(letters[..j].to_vec()));
                let suffix = NcPoly::from_word(Word(letters[j + 1..].to_vec()));
                let sign = if prefix_degree % 2 == 0 { Rational::one() } else { -Rational::one() };
                acc = acc.add(&prefix.mul_free(image).mul_free(&suffix).scale(&sign));
            }
            prefix_degree += self.alg.gens().degree(letter as usize);
        }
        acc
    }

    /// The differential of any polynomial, reduced.  `d(1) = 0`.
    pub fn diff(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        for (w, c) in &p.terms {
            acc = acc.add(&self.diff_word_free(w).scale(c));
        }
        self.alg.reduce(&acc)
    }

    /// Verify that the differential descends to the quotient and squares to
    /// zero: `d(r)` must lie in the ideal for every relation `r` (computed
    /// in the free algebra), and `d(d(x))` must reduce to zero for every
    /// generator.
    pub fn check_well_defined(&self) -> Result<()> {
        for (i, r) in self.dg.pres.relations.iter().enumerate() {
            let mut dr = NcPoly::zero();
            for (w, c) in &r.terms {
                dr = dr.add(&self.diff_word_free(w).scale(c));
            }
            if !self.alg.ideal_contains(&dr)? {
                return Err(Error::IllDefinedDifferential {
                    witness: alloc::format!("relation {i}: {}", r.format(self.alg.gens())),
                    residue: self.alg.reduce(&dr)?.format(self.alg.gens()),
                });
            }
        }
        for i in 0..self.alg.gens().len() {
            let ddx = self.diff(&self.dg.diff_images[i])?;
            if !ddx.is_zero() {
                return Err(Error::IllDefinedDifferential {
                    witness: alloc::format!("generator {}", self.alg.gens().name(i)),
                    residue: ddx.format(self.alg.gens()),
                });
            }
        }
        Ok(())
    }

    /// Differential of the slot-th normal word of degree n, in normal
    /// coordinates of degree n+1 (precomputed).
    pub fn diff_row(&self, n: usize, slot: usize) -> Result<&SparseVec> {
        self.diff_rows
            .get(n)
            .map(|rows| &rows[slot])
            .ok_or(Error::WindowExceeded { needed: n, cutoff: self.max_degree })
    }

    fn rank_out_of(&self, n: usize) -> Result<usize> {
        self.diff_ranks
            .get(n)
            .copied()
            .ok_or(Error::WindowExceeded { needed: n, cutoff: self.max_degree })
    }

    /// `dim H^n` for all `n` in `0..=max_degree`, by rank counting.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        (0..=self.max_degree).map(|n| self.cohomology_dim(n)).collect()
    }

    pub fn cohomology_dim(&self, n: usize) -> Result<usize> {
        let dim_n = self.alg.dim(n)?;
        let rank_out = self.rank_out_of(n)?;
        let rank_in = if n == 0 { 0 } else { self.rank_out_of(n - 1)? };
        Ok(dim_n - rank_out - rank_in)
    }

    /// Echelonized coboundary space `B^n` in degree-n normal coordinates.
    pub fn boundary_space(&self, n: usize) -> Result<RowSpace> {
        if n == 0 {
            return Ok(RowSpace::new());
        }
        let rows = self
            .diff_rows
            .get(n - 1)
            .ok_or(Error::WindowExceeded { needed: n - 1, cutoff: self.max_degree })?;
        Ok(echelonize(rows.clone()))
    }

    /// Canonical cocycle/class data at degree n.
    pub fn class_basis(&self, n: usize) -> Result<ClassBasis> {
        let rows = self
            .diff_rows
            .get(n)
            .ok_or(Error::WindowExceeded { needed: n, cutoff: self.max_degree })?;
        let kernel = left_kernel(rows, self.alg.dim(n + 1)?);
        debug_assert_eq!(kernel.len(), self.alg.dim(n)? - self.rank_out_of(n)?);
        let boundaries = self.boundary_space(n)?;
        Ok(ClassBasis::new(kernel, &boundaries))
    }

    /// Full cohomology at one degree, with canonical representatives: the
    /// coboundary RREF basis extended to the cocycle space, keeping the
    /// appended rows.
    pub fn cohomology(&self, n: usize) -> Result<CohomologyResult> {
        let class_basis = self.class_basis(n)?;
        let representatives = class_basis
            .representatives()
            .map(|v| self.alg.normal_vec_to_poly(n, v))
            .collect::<Result<Vec<_>>>()?;
        let coboundary_dim = if n == 0 { 0 } else { self.rank_out_of(n - 1)? };
        Ok(CohomologyResult {
            degree: n,
            dim: representatives.len(),
            representatives,
            coboundary_dim,
        })
    }

    /// The cohomology algebra on canonical representatives for degrees
    /// `0..=window`.  Products landing above the window are marked
    /// out-of-window (`None`), never silently zero.
    pub fn cohomology_algebra(&self, window: usize) -> Result<CohomologyAlgebra> {
        if window > self.max_degree {
            return Err(Error::WindowExceeded { needed: window, cutoff: self.max_degree });
        }
        let mut degrees = Vec::new();
        let mut reps = Vec::new();
        let mut class_bases = Vec::new();
        for n in 0..=window {
            let cb = self.class_basis(n)?;
            for rep in cb.representatives() {
                degrees.push(n);
                reps.push(self.alg.normal_vec_to_poly(n, rep)?);
            }
            class_bases.push(cb);
        }
        let offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::with_capacity(window + 2);
            for cb in &class_bases {
                out.push(acc);
                acc += cb.class_dim();
            }
            out.push(acc);
            out
        };
        let dim = reps.len();
        let mut products: Vec<Vec<Option<Vec<(usize, Rational)>>>> =
            alloc::vec![alloc::vec![None; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let d = degrees[i] + degrees[j];
                if d > window {
                    continue;
                }
                let prod = self.alg.multiply(&reps[i], &reps[j])?;
                let v = self.alg.poly_to_normal_vec(d, &prod)?;
                let coords = class_bases[d].express(&v)?;
                let entry: Vec<(usize, Rational)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (offsets[d] + k, c))
                    .collect();
                products[i][j] = Some(entry);
            }
        }
        Ok(CohomologyAlgebra { window, degrees, representatives: reps, products })
    }

    /// Check a claimed presentation of the cohomology algebra, degree by
    /// degree up to the window: representatives must be cocycles, candidate
    /// relations must land in coboundaries, dimensions must match, and the
    /// induced map must be surjective in each degree.
    pub fn verify_presentation(
        &self,
        candidate: &PresentationCandidate,
        window: usize,
    ) -> Result<()> {
        if window > self.max_degree {
            return Err(Error::WindowExceeded { needed: window, cutoff: self.max_degree });
        }
        let cand_gens = &candidate.pres.gens;
        if candidate.reps.len() != cand_gens.len() {
            return Err(Error::Invalid(String::from(
                "candidate needs one representative per generator",
            )));
        }
        // (a) representatives are cocycles of the declared degrees
        for (i, rep) in candidate.reps.iter().enumerate() {
            let declared = cand_gens.degree(i);
            match rep.homogeneous_degree(self.alg.gens())? {
                Some(d) if d == declared => {}
                other => {
                    return Err(Error::Invalid(alloc::format!(
                        "representative of `{}` has degree {:?}, declared {declared}",
                        cand_gens.name(i),
                        other
                    )))
                }
            }
            if !self.diff(rep)?.is_zero() {
                return Err(Error::Invalid(alloc::format!(
                    "representative of `{}` is not a cocycle",
                    cand_gens.name(i)
                )));
            }
        }
        // (c) dimension match per degree, reported first so a wrong
        // candidate names the degree where it dies
        let cand_tables = AlgebraTables::new(candidate.pres.clone(), window);
        for n in 0..=window {
            let h_dim = self.cohomology_dim(n)?;
            let c_dim = cand_tables.dim(n)?;
            if h_dim != c_dim {
                return Err(Error::MismatchAt { degree: n, expected: h_dim, found: c_dim });
            }
        }
        // (b) candidate relations evaluate to coboundaries
        for (k, rel) in candidate.pres.relations.iter().enumerate() {
            let image = self.eval_candidate_poly(candidate, rel)?;
            if image.is_zero() {
                continue;
            }
            let d = image.homogeneous_degree(self.alg.gens())?.unwrap();
            let v = self.alg.poly_to_normal_vec(d, &image)?;
            if !self.boundary_space(d)?.contains(&v) {
                return Err(Error::Invalid(alloc::format!(
                    "candidate relation {k} does not evaluate to a coboundary"
                )));
            }
        }
        // (d) surjectivity per degree
        for n in 0..=window {
            // images of candidate normal words together with the
            // coboundaries must span the cocycles.
            let z_dim = self.alg.dim(n)? - self.rank_out_of(n)?;
            let mut span = self.boundary_space(n)?;
            for w in cand_tables.basis(n)?.normal_words() {
                let image = self.eval_candidate_word(candidate, w)?;
                if image.is_zero() {
                    continue;
                }
                span.insert(self.alg.poly_to_normal_vec(n, &image)?);
            }
            if span.rank() != z_dim {
                return Err(Error::MismatchAt { degree: n, expected: z_dim, found: span.rank() });
            }
        }
        Ok(())
    }

    fn eval_candidate_word(&self, candidate: &PresentationCandidate, w: &Word) -> Result<NcPoly> {
        let mut acc = NcPoly::one();
        for &letter in w.letters() {
            acc = self.alg.multiply(&acc, &candidate.reps[letter as usize])?;
        }
        Ok(acc)
    }

    fn eval_candidate_poly(&self, candidate: &PresentationCandidate, p: &NcPoly) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        for (w, c) in &p.terms {
            acc = acc.add(&self.eval_candidate_word(candidate, w)?.scale(c));
        }
        self.alg.reduce(&acc)
    }
}

/// A claimed presentation of the cohomology algebra: generators tagged with
/// cocycle representatives in the DG algebra.
#[derive(Debug, Clone)]
pub struct PresentationCandidate {
    pub pres: Presentation,
    pub reps: Vec<NcPoly>,
}

/// The cohomology algebra truncated to a window: canonical representatives
/// with their degrees, and products in class coordinates.  `None` marks a
/// product whose degree exceeds the window.
#[derive(Debug, Clone)]
pub struct CohomologyAlgebra {
    pub window: usize,
    pub degrees: Vec<usize>,
    pub representatives: Vec<NcPoly>,
    pub products: Vec<Vec<Option<Vec<(usize, Rational)>>>>,
}

impl CohomologyAlgebra {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn dim_at(&self, degree: usize) -> usize {
        self.degrees.iter().filter(|&&d| d == degree).count()
    }
}
