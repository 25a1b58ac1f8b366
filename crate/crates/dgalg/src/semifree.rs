//! Semi-free DG modules over a DG algebra: validation, the minimal
//! resolution of the trivial module by iterative cocycle-killing, and the
//! Koszul / smoothness verdicts read off the semi-basis.

use alloc::string::String;
use alloc::vec::Vec;
use num_traits::One;

use crate::dg::{ClassBasis, DgTables};
use crate::error::{Error, Result};
use crate::linalg::{echelonize, left_kernel, rank_of_rows, Rational, SparseVec};
use crate::ncpoly::NcPoly;

/// A semi-free DG module with a finite ordered basis: `rows[j]` lists the
/// differential `d(e_j) = sum coeff * e_i` with `i < j` in filtration order,
/// coefficients homogeneous in the algebra of degree `deg(e_j) + 1 -
/// deg(e_i)`.  One degree-0 basis element is marked as the augmentation,
/// mapping to the unit of the trivial module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiFreeModule {
    pub basis: Vec<(String, usize)>,
    pub rows: Vec<Vec<(usize, NcPoly)>>,
    pub augmentation: usize,
}

impl SemiFreeModule {
    /// The one-generator module `A e0` with `eps(e0) = 1`.
    pub fn trivial_start() -> Self {
        SemiFreeModule {
            basis: alloc::vec![(String::from("e0"), 0)],
            rows: alloc::vec![Vec::new()],
            augmentation: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.basis.iter().map(|(_, d)| *d).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.basis.iter().map(|(_, d)| *d).max().unwrap_or(0)
    }

    /// True when the whole semi-basis sits in cohomological degree 0.
    pub fn is_koszul(&self) -> bool {
        self.basis.iter().all(|(_, d)| *d == 0)
    }
}

/// The total degree-n component of a semi-free module: one block of
/// algebra-normal-word coordinates per basis element of degree at most n.
#[derive(Debug, Clone)]
pub struct FBlocks {
    pub n: usize,
    /// (basis index, algebra degree, offset, block dimension)
    pub blocks: Vec<(usize, usize, usize, usize)>,
    pub dim: usize,
}

/// Degree-wise view of a semi-free module over a fixed DG algebra.
pub struct FComplex<'a> {
    pub tables: &'a DgTables,
    pub module: &'a SemiFreeModule,
}

impl<'a> FComplex<'a> {
    pub fn new(tables: &'a DgTables, module: &'a SemiFreeModule) -> Self {
        FComplex { tables, module }
    }

    pub fn blocks(&self, n: usize) -> Result<FBlocks> {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (j, (_, d)) in self.module.basis.iter().enumerate() {
            if *d > n {
                continue;
            }
            let a_deg = n - d;
            let dim = self.tables.algebra().dim(a_deg)?;
            blocks.push((j, a_deg, offset, dim));
            offset += dim;
        }
        Ok(FBlocks { n, blocks, dim: offset })
    }

    /// The differential `F^n -> F^{n+1}` as sparse rows over the block
    /// coordinates of both sides.
    pub fn diff_rows(&self, n: usize) -> Result<Vec<SparseVec>> {
        let source = self.blocks(n)?;
        let target = self.blocks(n + 1)?;
        let target_offset: alloc::collections::BTreeMap<usize, usize> =
            target.blocks.iter().map(|&(j, _, off, _)| (j, off)).collect();
        let alg = self.tables.algebra();
        let mut rows = Vec::with_capacity(source.dim);
        for &(j, a_deg, _, dim) in &source.blocks {
            let sign = if a_deg % 2 == 0 { Rational::one() } else { -Rational::one() };
            for slot in 0..dim {
                let mut entries: Vec<(u32, Rational)> = Vec::new();
                // d(w) e_j, from the precomputed algebra differential
                {
                    let dw = self.tables.diff_row(a_deg, slot)?;
                    let off = target_offset[&j];
                    for (c, a) in &dw.entries {
                        entries.push((c + off as u32, a.clone()));
                    }
                }
                // (-1)^{deg w} w * d(e_j)
                if !self.module.rows[j].is_empty() {
                    let word = alg.basis(a_deg)?.normal_word(slot).clone();
                    for (i, coeff) in &self.module.rows[j] {
                        let prod = alg.multiply(&NcPoly::from_word(word.clone()), coeff)?;
                        if prod.is_zero() {
                            continue;
                        }
                        let d_i = self.module.basis[*i].1;
                        let off = target_offset[i];
                        let v = alg.poly_to_normal_vec(n + 1 - d_i, &prod)?;
                        for (c, a) in v.entries {
                            entries.push((c + off as u32, &a * &sign));
                        }
                    }
                }
                rows.push(SparseVec::from_pairs(entries));
            }
        }
        Ok(rows)
    }

    /// `dim H^n(F)` by rank counting.
    pub fn cohomology_dim(&self, n: usize) -> Result<usize> {
        let dim_n = self.blocks(n)?.dim;
        let rank_out = rank_of_rows(self.diff_rows(n)?);
        let rank_in = if n == 0 { 0 } else { rank_of_rows(self.diff_rows(n - 1)?) };
        Ok(dim_n - rank_out - rank_in)
    }

    /// First degree in `from..=to` with nonzero cohomology, sharing one rank
    /// computation per degree across the scan.
    pub fn first_nonzero_dim(&self, from: usize, to: usize) -> Result<Option<usize>> {
        if from > to {
            return Ok(None);
        }
        let mut rank_in =
            if from == 0 { 0 } else { rank_of_rows(self.diff_rows(from - 1)?) };
        for n in from..=to {
            let rank_out = rank_of_rows(self.diff_rows(n)?);
            let dim_n = self.blocks(n)?.dim;
            if dim_n - rank_out - rank_in != 0 {
                return Ok(Some(n));
            }
            rank_in = rank_out;
        }
        Ok(None)
    }

    /// Canonical class data at degree n (cocycle RREF with boundary pivots
    /// marked), plus the block layout for decoding vectors.
    pub fn class_basis(&self, n: usize) -> Result<(ClassBasis, FBlocks)> {
        let rows = self.diff_rows(n)?;
        let target_dim = self.blocks(n + 1)?.dim;
        let kernel = left_kernel(&rows, target_dim);
        let boundaries = if n == 0 {
            echelonize(Vec::new())
        } else {
            echelonize(self.diff_rows(n - 1)?)
        };
        Ok((ClassBasis::new(kernel, &boundaries), self.blocks(n)?))
    }

    /// Decode a coordinate vector into per-basis-element coefficients.
    pub fn decode(&self, blocks: &FBlocks, v: &SparseVec) -> Result<Vec<(usize, NcPoly)>> {
        let alg = self.tables.algebra();
        let mut per_block: Vec<(usize, NcPoly)> = Vec::new();
        for &(j, a_deg, offset, dim) in &blocks.blocks {
            let mut p = NcPoly::zero();
            for (c, a) in &v.entries {
                let c = *c as usize;
                if c >= offset && c < offset + dim {
                    p.add_term(alg.basis(a_deg)?.normal_word(c - offset).clone(), a.clone());
                }
            }
            if !p.is_zero() {
                per_block.push((j, p));
            }
        }
        Ok(per_block)
    }
}

/// Check the semi-free invariants: strict triangularity, coefficient
/// degrees, square-zero differential, and minimality (all coefficients in
/// the augmentation ideal).
pub fn check_semifree(tables: &DgTables, module: &SemiFreeModule) -> Result<()> {
    let gens = tables.algebra().gens();
    if module.rows.len() != module.basis.len() {
        return Err(Error::Invalid(String::from("one differential row per basis element")));
    }
    let aug = module.augmentation;
    if aug >= module.basis.len() || module.basis[aug].1 != 0 {
        return Err(Error::Invalid(String::from("augmentation must mark a degree-0 generator")));
    }
    if !module.rows[aug].is_empty() {
        return Err(Error::Invalid(String::from("augmentation generator must be a cocycle")));
    }
    for (j, row) in module.rows.iter().enumerate() {
        let d_j = module.basis[j].1;
        for (i, coeff) in row {
            if *i >= j {
                return Err(Error::NotTriangular(alloc::format!(
                    "d({}) references {} which does not precede it",
                    module.basis[j].0, module.basis[*i].0
                )));
            }
            let d_i = module.basis[*i].1;
            let expected = (d_j + 1).checked_sub(d_i);
            match (coeff.homogeneous_degree(gens)?, expected) {
                (None, _) => {
                    return Err(Error::Invalid(alloc::format!(
                        "zero coefficient stored in d({})",
                        module.basis[j].0
                    )))
                }
                (Some(d), Some(e)) if d == e => {}
                (Some(d), _) => {
                    return Err(Error::DegreeMismatch(alloc::format!(
                        "coefficient of {} in d({}) has degree {d}, expected {:?}",
                        module.basis[*i].0, module.basis[j].0, expected
                    )));
                }
            }
            if coeff.terms.keys().any(|w| w.is_unit()) {
                return Err(Error::NotMinimal(alloc::format!(
                    "coefficient of {} in d({}) has a constant term",
                    module.basis[*i].0, module.basis[j].0
                )));
            }
        }
    }
    // d^2 = 0, expanded over module coefficients with the Leibniz sign on
    // the module part.
    for j in 0..module.len() {
        let mut acc: Vec<NcPoly> = alloc::vec![NcPoly::zero(); module.len()];
        for (i, coeff) in &module.rows[j] {
            let dc = tables.diff(coeff)?;
            acc[*i] = acc[*i].add(&dc);
            let deg_c = module.basis[j].1 + 1 - module.basis[*i].1;
            let sign = if deg_c % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (l, inner) in &module.rows[*i] {
                let prod = tables.algebra().multiply(coeff, inner)?.scale(&sign);
                acc[*l] = acc[*l].add(&prod);
            }
        }
        for (l, p) in acc.iter().enumerate() {
            if !p.is_zero() {
                return Err(Error::DifferentialNotSquareZero(alloc::format!(
                    "d(d({})) has component {} on {}",
                    module.basis[j].0,
                    p.format(gens),
                    module.basis[l].0
                )));
            }
        }
    }
    Ok(())
}

/// True when `H^0(F) = k` via the augmentation and `H^n(F) = 0` for
/// `1 <= n <= window`.
pub fn check_resolution(tables: &DgTables, module: &SemiFreeModule, window: usize) -> Result<bool> {
    let complex = FComplex::new(tables, module);
    if complex.cohomology_dim(0)? != 1 {
        return Ok(false);
    }
    Ok(complex.first_nonzero_dim(1, window)?.is_none())
}

/// Minimal semi-free resolution of the trivial module by iterative
/// cocycle-killing, valid up to the window.
///
/// Starting from `A e0`, while some total degree `1 <= n <= window` has
/// nonzero cohomology, the least such degree is cleared by appending one
/// generator of cohomological degree `n - 1` per canonical representative,
/// with the representative as its differential.  Generators are named
/// `g{stage}_{index}` in insertion order.
pub fn resolve_trivial(tables: &DgTables, window: usize) -> Result<SemiFreeModule> {
    if window > tables.max_degree() {
        return Err(Error::WindowExceeded { needed: window, cutoff: tables.max_degree() });
    }
    let mut module = SemiFreeModule::trivial_start();
    let mut stage = 0usize;
    // Degrees below the last kill are already clean and stay clean.
    let mut clean_below = 1usize;
    loop {
        let next_dirty =
            FComplex::new(tables, &module).first_nonzero_dim(clean_below, window)?;
        let n = match next_dirty {
            Some(n) => n,
            None => break,
        };
        stage += 1;
        if stage > 64 || module.len() > 4096 {
            return Err(Error::CutoffTooSmall(alloc::format!(
                "resolution did not stabilize within the window (stage {stage}, {} generators)",
                module.len()
            )));
        }
        let complex = FComplex::new(tables, &module);
        let (class_basis, blocks) = complex.class_basis(n)?;
        let reps: Vec<SparseVec> = class_basis.representatives().cloned().collect();
        let decoded: Vec<Vec<(usize, NcPoly)>> =
            reps.iter().map(|r| complex.decode(&blocks, r)).collect::<Result<_>>()?;
        for (idx, row) in decoded.into_iter().enumerate() {
            module.basis.push((alloc::format!("g{stage}_{idx}"), n - 1));
            module.rows.push(row);
        }
        clean_below = n;
    }
    check_semifree(tables, &module)?;
    Ok(module)
}

/// Bounded smoothness certificate data; the verdict is always "verified up
/// to the window", never absolute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub finite_basis_found: bool,
    pub basis_size: usize,
    pub certified_to: usize,
    pub stability_margin: usize,
    pub max_kill_degree: usize,
}

/// Run the resolution and certify finiteness of the semi-basis up to the
/// window: no generator may have been added in the top `margin` degrees,
/// where `margin` is the maximal relation degree (2 for a free algebra,
/// the scale of the quadratic differential images) plus one.
pub fn smoothness_report(
    tables: &DgTables,
    window: usize,
) -> Result<(SmoothnessReport, SemiFreeModule)> {
    let module = resolve_trivial(tables, window)?;
    let margin = tables.algebra().presentation().max_relation_degree().unwrap_or(2) + 1;
    let max_kill_degree =
        module.basis.iter().skip(1).map(|(_, d)| d + 1).max().unwrap_or(0);
    let finite_basis_found = window >= margin && max_kill_degree + margin <= window;
    Ok((
        SmoothnessReport {
            finite_basis_found,
            basis_size: module.len(),
            certified_to: window,
            stability_margin: margin,
            max_kill_degree,
        },
        module,
    ))
}
