//! Exact linear algebra over the rationals.
//!
//! Two views of the same engine: a dense [`QMatrix`] with canonical reduced
//! row-echelon form and null-space bases for small problems, and sparse
//! [`SparseVec`]/[`RowSpace`] machinery for the large, very sparse
//! differential matrices that show up in degree-wise cohomology.  Both agree
//! on pivots and canonical forms; the dense entry points delegate to the
//! sparse engine.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field: arbitrary-precision rationals, always reduced, positive
/// denominator.  Ranks, kernels and determinant vanishing over any field of
/// characteristic zero agree with the answers computed here.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for a rational fraction `n/d`.
pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A sparse row vector: strictly increasing column indices, no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub entries: Vec<(u32, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Build from (column, coefficient) pairs in any order; merges duplicates
    /// and drops zeros.
    pub fn from_pairs(mut pairs: Vec<(u32, Rational)>) -> Self {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(u32, Rational)> = Vec::with_capacity(pairs.len());
        for (c, a) in pairs {
            match entries.last_mut() {
                Some((lc, la)) if *lc == c => *la += a,
                _ => entries.push((c, a)),
            }
        }
        entries.retain(|(_, a)| !a.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(row: &[Rational]) -> Self {
        SparseVec {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(c, a)| (c as u32, a.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, cols: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); cols];
        for (c, a) in &self.entries {
            out[*c as usize] = a.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(u32, &Rational)> {
        self.entries.first().map(|(c, a)| (*c, a))
    }

    pub fn get(&self, col: u32) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// self -= factor * other, merging sorted entry lists.
    pub fn sub_scaled(&mut self, factor: &Rational, other: &SparseVec) {
        if factor.is_zero() || other.entries.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut na = a.next();
        let mut nb = b.next();
        loop {
            match (na, nb) {
                (Some((ca, va)), Some((cb, vb))) => {
                    if ca < cb {
                        out.push((*ca, va.clone()));
                        na = a.next();
                    } else if cb < ca {
                        out.push((*cb, -(factor * vb)));
                        nb = b.next();
                    } else {
                        let v = va - factor * vb;
                        if !v.is_zero() {
                            out.push((*ca, v));
                        }
                        na = a.next();
                        nb = b.next();
                    }
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    na = a.next();
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, -(factor * vb)));
                    nb = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, a) in &mut self.entries {
            *a *= factor;
        }
    }

    /// Divide every entry by the leading coefficient so the row starts with 1.
    pub fn normalize(&mut self) {
        if let Some((_, lead)) = self.entries.first().cloned() {
            if !lead.is_one() {
                let inv = lead.recip();
                for (_, a) in &mut self.entries {
                    *a *= &inv;
                }
            }
        }
    }

    /// Shift all column indices by `offset`.
    pub fn shifted(&self, offset: u32) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(c, a)| (c + offset, a.clone())).collect(),
        }
    }
}

/// An echelonized row space: each stored row is normalized (leading 1) and
/// filed under its pivot column.  Insertion keeps the span; the pivot set and
/// the rank are canonical even though the stored rows are only in echelon
/// (not reduced) form until [`RowSpace::to_rref`] is called.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<u32, usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<u32> {
        self.pivots.keys().copied().collect()
    }

    pub fn has_pivot(&self, col: u32) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduce `v` against the stored rows until its leading column is not a
    /// pivot (or it vanishes).  This is enough for membership and rank.
    pub fn reduce_leading(&self, v: &mut SparseVec) {
        while let Some((col, _)) = v.leading() {
            match self.pivots.get(&col) {
                Some(&row) => {
                    let factor = v.entries[0].1.clone();
                    v.sub_scaled(&factor, &self.rows[row]);
                }
                None => break,
            }
        }
    }

    /// Fully reduce `v`: clear every pivot column, not just the leading one.
    /// The result is the canonical remainder of `v` modulo the row space,
    /// supported on non-pivot columns only.
    pub fn reduce_full(&self, v: &mut SparseVec) {
        let mut i = 0;
        while i < v.entries.len() {
            let col = v.entries[i].0;
            match self.pivots.get(&col) {
                Some(&row) => {
                    let factor = v.entries[i].1.clone();
                    v.sub_scaled(&factor, &self.rows[row]);
                    // entries before position i are untouched: pivot rows
                    // start at their pivot column.
                }
                None => i += 1,
            }
        }
    }

    /// Insert a row; returns its pivot column if it increased the rank.
    pub fn insert(&mut self, mut v: SparseVec) -> Option<u32> {
        self.reduce_leading(&mut v);
        match v.leading() {
            None => None,
            Some((col, _)) => {
                v.normalize();
                self.pivots.insert(col, self.rows.len());
                self.rows.push(v);
                Some(col)
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        self.reduce_leading(&mut w);
        w.is_zero()
    }

    /// The canonical reduced row-echelon basis of this row space, sorted by
    /// pivot column.
    pub fn to_rref(&self) -> Vec<SparseVec> {
        let mut order: Vec<(u32, usize)> = self.pivots.iter().map(|(c, r)| (*c, *r)).collect();
        // Back-substitute from the last pivot upwards.
        let mut reduced: BTreeMap<u32, SparseVec> = BTreeMap::new();
        for &(col, row) in order.iter().rev() {
            let mut v = self.rows[row].clone();
            let mut i = 1;
            while i < v.entries.len() {
                let c = v.entries[i].0;
                if let Some(done) = reduced.get(&c) {
                    let factor = v.entries[i].1.clone();
                    v.sub_scaled(&factor, done);
                } else {
                    i += 1;
                }
            }
            reduced.insert(col, v);
        }
        order.sort();
        order.into_iter().map(|(c, _)| reduced.remove(&c).unwrap()).collect()
    }
}

/// Echelonize a batch of rows.  Rows are inserted in order of their leading
/// column, which keeps fill-in low on differential-style matrices.
pub fn echelonize(rows: Vec<SparseVec>) -> RowSpace {
    let mut rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    rows.sort_by(|a, b| {
        let la = a.entries[0].0;
        let lb = b.entries[0].0;
        la.cmp(&lb).then(a.entries.len().cmp(&b.entries.len()))
    });
    let mut space = RowSpace::new();
    for row in rows {
        space.insert(row);
    }
    space
}

/// Rank of a batch of sparse rows.
pub fn rank_of_rows(rows: Vec<SparseVec>) -> usize {
    echelonize(rows).rank()
}

/// Basis of the left kernel of a batch of rows: all coefficient vectors
/// `u` with `sum_i u_i row_i = 0`.  Returned vectors are indexed by row
/// number, each normalized with a leading 1 on a distinct row index, sorted
/// by that index.
pub fn left_kernel(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    // Every row rides along with a tracking vector recording the combination
    // of input rows it is; eliminating only on the original columns, rows
    // that collapse to zero expose kernel vectors in the tracking block.
    let width = cols as u32;
    let mut pivots: BTreeMap<u32, usize> = BTreeMap::new();
    let mut stored: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut kernel = Vec::new();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| {
        (rows[i].leading().map(|(c, _)| c).unwrap_or(width), rows[i].entries.len())
    });
    for i in order {
        let mut v = rows[i].clone();
        let mut track = SparseVec { entries: vec![(i as u32, Rational::one())] };
        loop {
            match v.leading() {
                None => {
                    track.normalize();
                    kernel.push(track);
                    break;
                }
                Some((col, _)) => {
                    if let Some(&r) = pivots.get(&col) {
                        let factor = v.entries[0].1.clone();
                        v.sub_scaled(&factor, &stored[r].0);
                        track.sub_scaled(&factor, &stored[r].1);
                    } else {
                        let lead = v.entries[0].1.clone();
                        if !lead.is_one() {
                            let inv = lead.recip();
                            v.scale(&inv);
                            track.scale(&inv);
                        }
                        pivots.insert(col, stored.len());
                        stored.push((v, track));
                        break;
                    }
                }
            }
        }
    }
    kernel.sort_by_key(|k| k.leading().map(|(c, _)| c).unwrap_or(u32::MAX));
    kernel
}

/// A dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&n| q(n)).collect()).collect())
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Canonical reduced row-echelon form.
    ///
    /// Returns `(rank, pivot_columns, reduced)`; pivot columns are strictly
    /// increasing, pivot entries are 1, and pivot columns are cleared
    /// elsewhere.  Rows of the result are the RREF basis padded with zero
    /// rows to the original height.
    pub fn rref(&self) -> (usize, Vec<usize>, QMatrix) {
        let space = echelonize((0..self.rows).map(|r| SparseVec::from_dense(self.row(r))).collect());
        let rref_rows = space.to_rref();
        let rank = rref_rows.len();
        let pivots: Vec<usize> = space.pivot_cols().into_iter().map(|c| c as usize).collect();
        let mut out = QMatrix::zero(self.rows, self.cols);
        for (i, row) in rref_rows.iter().enumerate() {
            for (c, a) in &row.entries {
                *out.at_mut(i, *c as usize) = a.clone();
            }
        }
        (rank, pivots, out)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows((0..self.rows).map(|r| SparseVec::from_dense(self.row(r))).collect())
    }

    /// Canonical basis of the right null space `{v : M v = 0}`.
    ///
    /// One vector per non-pivot column of the RREF, normalized so the free
    /// coordinate is 1; in each vector the pivot-column slots carry the
    /// negated RREF column above the free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (_, pivots, red) = self.rref();
        let pivot_of_col: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (&pc, &pr) in &pivot_of_col {
                let a = red.at(pr, free);
                if !a.is_zero() {
                    v[pc] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by fraction-free elimination; `None` for non-square.
    pub fn det(&self) -> Option<Rational> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let pr = match pivot {
                Some(p) => p,
                None => return Some(Rational::zero()),
            };
            if pr != col {
                for c in 0..n {
                    let tmp = m.at(pr, c).clone();
                    *m.at_mut(pr, c) = m.at(col, c).clone();
                    *m.at_mut(col, c) = tmp;
                }
                det = -det;
            }
            let p = m.at(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                let factor = m.at(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &factor * m.at(col, c);
                    *m.at_mut(r, c) -= sub;
                }
            }
        }
        Some(det)
    }

    /// Inverse via Gauss-Jordan on `[M | I]`; errors on singular input.
    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::Invalid("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rational::one();
        }
        let (rank, pivots, red) = aug.rref();
        if rank != n || pivots.iter().take(n).copied().ne(0..n) {
            return Err(Error::Invalid("matrix is singular".into()));
        }
        let mut inv = QMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = red.at(r, n + c).clone();
            }
        }
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }
}

/// Render a rational without a denominator when integral.
pub fn format_rational(x: &Rational) -> alloc::string::String {
    use alloc::string::ToString;
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        let mut s = x.numer().to_string();
        s.push('/');
        s.push_str(&x.denom().to_string());
        s
    }
}

/// Parse "n" or "n/d" with an optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: num_bigint::BigInt =
        num.parse().map_err(|_| Error::Invalid(alloc::format!("bad rational `{s}`")))?;
    let d: num_bigint::BigInt = match den {
        Some(d) => d.parse().map_err(|_| Error::Invalid(alloc::format!("bad rational `{s}`")))?,
        None => One::one(),
    };
    if d.is_zero() {
        return Err(Error::Invalid(alloc::format!("zero denominator in `{s}`")));
    }
    let mut r = Rational::new(n, d);
    if r.denom().is_negative() {
        r = Rational::new(-r.numer().clone(), -r.denom().clone());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity() {
        let m = QMatrix::identity(3);
        let (rank, pivots, red) = m.rref();
        assert_eq!(rank, 3);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert!(red.is_identity());
    }

    #[test]
    fn rref_zero() {
        let m = QMatrix::zero(2, 2);
        let (rank, pivots, _) = m.rref();
        assert_eq!(rank, 0);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        // Hand row-reduction: second row is twice the first.
        let m = QMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let (rank, pivots, red) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
        assert_eq!(red.row(0), &[q(1), q(2), q(3)]);
        assert!(red.row(1).iter().all(|a| a.is_zero()));
    }

    #[test]
    fn rref_idempotent() {
        let m = QMatrix::from_int_rows(&[&[2, 4, 1], &[0, 3, 5], &[2, 7, 6]]);
        let (_, _, red) = m.rref();
        let (_, _, red2) = red.rref();
        assert_eq!(red, red2);
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(QMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_zero_matrix() {
        let basis = QMatrix::zero(2, 3).kernel_basis();
        assert_eq!(basis.len(), 3);
        for (i, v) in basis.iter().enumerate() {
            for (j, a) in v.iter().enumerate() {
                assert_eq!(a.is_one(), i == j);
            }
        }
    }

    #[test]
    fn kernel_one_relation() {
        // Solved by hand: kernel of [1 1] is spanned by (-1, 1); with the
        // free coordinate normalized to 1 the canonical vector is (-1, 1).
        let m = QMatrix::from_int_rows(&[&[1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn rank_plus_nullity() {
        let m = QMatrix::from_int_rows(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let (rank, _, _) = m.rref();
        assert_eq!(rank + m.kernel_basis().len(), m.cols);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn det_small() {
        let m = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det().unwrap(), q(1));
        let s = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det().unwrap(), q(0));
    }

    #[test]
    fn left_kernel_tracks_combinations() {
        // rows: r0 = (1,1), r1 = (2,2), r2 = (0,1): kernel spanned by
        // (2, -1, 0) up to normalization.
        let rows = vec![
            SparseVec::from_pairs(vec![(0, q(1)), (1, q(1))]),
            SparseVec::from_pairs(vec![(0, q(2)), (1, q(2))]),
            SparseVec::from_pairs(vec![(1, q(1))]),
        ];
        let ker = left_kernel(&rows, 2);
        assert_eq!(ker.len(), 1);
        let v = ker[0].to_dense(3);
        // check sum v_i row_i = 0
        let mut acc = SparseVec::new();
        for (i, r) in rows.iter().enumerate() {
            let mut t = r.clone();
            t.scale(&v[i]);
            acc.sub_scaled(&-q(1), &t);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), qr(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
        assert_eq!(format_rational(&qr(-3, 2)), "-3/2");
        assert_eq!(format_rational(&q(5)), "5");
        assert!(parse_rational("1/0").is_err());
    }
}
