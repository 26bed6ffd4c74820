//! Exact rational linear algebra: sparse matrices, rank and kernel over Q,
//! and cohomology dimensions of chain complex slices.

use crate::{CoreError, Result};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational p/q.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Sparse rational matrix. Entries are sorted by (row, col), contain no
/// duplicates and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rat)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, Rat)>) -> Result<Self> {
        entries.retain(|(_, _, v)| !v.is_zero());
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(CoreError::Schema(format!(
                    "duplicate entry at ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        if let Some((r, c, _)) = entries.iter().find(|(r, c, _)| *r >= rows || *c >= cols) {
            return Err(CoreError::Schema(format!(
                "entry ({r}, {c}) out of bounds for {rows}x{cols} matrix"
            )));
        }
        Ok(SparseMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Rat::one())).collect(),
        }
    }

    pub fn from_dense(dense: &[Vec<Rat>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let entries = dense
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, v)| (i, j, v.clone()))
            })
            .collect();
        SparseMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Rat)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut dense = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            dense[*r][*c] = v.clone();
        }
        dense
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rat::zero(); self.rows];
        for (r, c, x) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] += x * &v[*c];
            }
        }
        out
    }

    /// Composition other ∘ self as linear maps (other * self as matrices).
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(other.cols, self.rows);
        let mut acc: std::collections::BTreeMap<(usize, usize), Rat> = Default::default();
        // index self entries by row
        let mut by_row: Vec<Vec<(usize, &Rat)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            by_row[*r].push((*c, v));
        }
        for (r, c, v) in &other.entries {
            for (c2, v2) in &by_row[*c] {
                let e = acc.entry((*r, *c2)).or_insert_with(Rat::zero);
                *e += v * *v2;
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix { rows: other.rows, cols: self.cols, entries }
    }

    /// Rank over Q via exact Gaussian elimination with largest-pivot-free
    /// column choice replaced by sparsity-friendly row ordering.
    pub fn rank(&self) -> usize {
        rref_dense(&mut self.to_dense()).len()
    }

    /// Basis of the right null space, one vector per free column of the
    /// reduced row echelon form. Canonical and deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut dense = self.to_dense();
        let pivots = rref_dense(&mut dense);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set.contains(&j) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[j] = Rat::one();
            for (i, pc) in pivots.iter().enumerate() {
                v[*pc] = -dense[i][j].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref_dense(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // pick the structurally simplest nonzero pivot in this column
        let mut best: Option<usize> = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                let better = match best {
                    None => true,
                    Some(b) => pivot_cost(&m[i][c]) < pivot_cost(&m[b][c]),
                };
                if better {
                    best = Some(i);
                }
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn pivot_cost(v: &Rat) -> u64 {
    (v.numer().abs().bits() + v.denom().bits()) as u64
}

/// Inverse of a square dense matrix, if it exists.
pub fn invert_dense(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref_dense(&mut aug);
    if pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Express `target` in the span of `basis` (vectors of equal length);
/// returns the coordinates if the system is consistent.
pub fn coords_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = target.len();
    if basis.is_empty() {
        return target.iter().all(|v| v.is_zero()).then(Vec::new);
    }
    // columns are basis vectors, augmented with the target
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref_dense(&mut m);
    if pivots.contains(&basis.len()) {
        return None; // inconsistent
    }
    let mut coords = vec![Rat::zero(); basis.len()];
    for (i, pc) in pivots.iter().enumerate() {
        coords[*pc] = m[i][basis.len()].clone();
    }
    Some(coords)
}

/// Determinant by cofactor expansion; intended for the small matrices of
/// the multilinear evaluation paths.
pub fn det_dense(m: &[Vec<Rat>]) -> Rat {
    expand_minor(m, &mut (0..m.len()).collect::<Vec<_>>(), 0, false)
}

/// Permanent by the same expansion without signs.
pub fn perm_dense(m: &[Vec<Rat>]) -> Rat {
    expand_minor(m, &mut (0..m.len()).collect::<Vec<_>>(), 0, true)
}

fn expand_minor(m: &[Vec<Rat>], cols: &mut Vec<usize>, row: usize, permanent: bool) -> Rat {
    if row == m.len() {
        return rat(1);
    }
    let mut acc = Rat::zero();
    for i in 0..cols.len() {
        let c = cols.remove(i);
        if !m[row][c].is_zero() {
            let sub = expand_minor(m, cols, row + 1, permanent);
            let sign = if permanent || i % 2 == 0 { 1 } else { -1 };
            acc += &m[row][c] * sub * rat(sign);
        }
        cols.insert(i, c);
    }
    acc
}

/// Cohomology degree entry: computed rank, or not determined by the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BettiEntry {
    Known(usize),
    Unknown,
}

/// Cohomology ranks per degree. Degrees past the computed window are
/// reported as unknown, never as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn new(entries: Vec<BettiEntry>) -> Self {
        BettiTable { entries }
    }

    pub fn from_known(ranks: Vec<usize>) -> Self {
        BettiTable { entries: ranks.into_iter().map(BettiEntry::Known).collect() }
    }

    pub fn entries(&self) -> &[BettiEntry] {
        &self.entries
    }

    pub fn get(&self, degree: usize) -> BettiEntry {
        self.entries.get(degree).copied().unwrap_or(BettiEntry::Unknown)
    }

    /// Known ranks for degrees 0..=max_degree; None if any is unknown.
    pub fn known_prefix(&self, max_degree: usize) -> Option<Vec<usize>> {
        (0..=max_degree)
            .map(|q| match self.get(q) {
                BettiEntry::Known(r) => Some(r),
                BettiEntry::Unknown => None,
            })
            .collect()
    }

    pub fn first_unknown(&self) -> usize {
        self.entries
            .iter()
            .position(|e| matches!(e, BettiEntry::Unknown))
            .unwrap_or(self.entries.len())
    }

    /// Tables agree on all degrees where both are known, up to max_degree.
    pub fn agrees_with(&self, other: &BettiTable, max_degree: usize) -> bool {
        (0..=max_degree).all(|q| match (self.get(q), other.get(q)) {
            (BettiEntry::Known(a), BettiEntry::Known(b)) => a == b,
            _ => true,
        })
    }
}

/// A finite slice of a cochain complex: space dimensions for degrees 0..=D
/// and the differentials d_q : degree q -> degree q+1 for q < D.
#[derive(Debug, Clone)]
pub struct ChainComplexSlice {
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl ChainComplexSlice {
    pub fn new(dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(CoreError::Schema("complex needs at least degree 0".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(CoreError::Schema(format!(
                "{} dims require {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (q, d) in diffs.iter().enumerate() {
            if d.cols() != dims[q] || d.rows() != dims[q + 1] {
                return Err(CoreError::Schema(format!(
                    "differential d_{q} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[q + 1],
                    dims[q]
                )));
            }
        }
        for q in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[q].compose(&diffs[q + 1]);
            if !dd.entries().is_empty() {
                return Err(CoreError::Invariant(format!("d_{} ∘ d_{} != 0", q + 1, q)));
            }
        }
        Ok(ChainComplexSlice { dims, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, q: usize) -> &SparseMatrix {
        &self.diffs[q]
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Betti numbers: dim ker d_q − rank d_{q−1} for q < D; unknown at D.
    pub fn cohomology_dims(&self) -> BettiTable {
        let ranks: Vec<usize> = self.diffs.par_iter().map(|d| d.rank()).collect();
        let mut entries = Vec::with_capacity(self.dims.len());
        for q in 0..self.dims.len() {
            if q + 1 == self.dims.len() {
                entries.push(BettiEntry::Unknown);
            } else {
                let ker = self.dims[q] - ranks[q];
                let im = if q == 0 { 0 } else { ranks[q - 1] };
                entries.push(BettiEntry::Known(ker - im));
            }
        }
        BettiTable::new(entries)
    }

    /// Representatives of a basis of H^q, as coordinate vectors in degree q.
    pub fn cohomology_representatives(&self, q: usize) -> Vec<Vec<Rat>> {
        assert!(q + 1 < self.dims.len(), "degree {q} outside computed window");
        let kernel = self.diffs[q].kernel_basis();
        // image of d_{q-1}: reduce kernel vectors against it
        let mut span: Vec<Vec<Rat>> = Vec::new();
        if q > 0 {
            let prev = &self.diffs[q - 1];
            for j in 0..prev.cols() {
                let mut e = vec![Rat::zero(); prev.cols()];
                e[j] = Rat::one();
                span.push(prev.mul_vec(&e));
            }
        }
        let mut reps = Vec::new();
        let mut rank = SparseMatrix::from_dense(&span).rank();
        for k in kernel {
            span.push(k.clone());
            let r = SparseMatrix::from_dense(&span).rank();
            if r > rank {
                rank = r;
                reps.push(k);
            } else {
                span.pop();
            }
        }
        reps
    }
}

/// Assemble a BettiTable for a complex given per-degree dimensions and
/// differential matrices; convenience wrapper used by the algebra engines.
pub fn cohomology_dims(complex: &ChainComplexSlice) -> BettiTable {
    complex.cohomology_dims()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_zero() {
        assert_eq!(SparseMatrix::zero(2, 2).rank(), 0);
    }

    #[test]
    fn rank_proportional_rows() {
        let m = SparseMatrix::from_dense(&[
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(SparseMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_difference() {
        let m = SparseMatrix::from_dense(&[vec![rat(1), rat(-1)]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![rat(1), rat(1)]]);
    }

    #[test]
    fn kernel_zero_full() {
        let k = SparseMatrix::zero(2, 2).kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(SparseMatrix::from_dense(&k).rank(), 2);
    }

    #[test]
    fn betti_two_point_complexes() {
        // dims (1,1), d0 = [0] -> betti (1, unknown at top reported after window)
        let c = ChainComplexSlice::new(vec![1, 1], vec![SparseMatrix::zero(1, 1)]).unwrap();
        let b = c.cohomology_dims();
        assert_eq!(b.get(0), BettiEntry::Known(1));
        assert_eq!(b.get(1), BettiEntry::Unknown);

        // an exact complex: d0 = [1]
        let c = ChainComplexSlice::new(vec![1, 1], vec![SparseMatrix::identity(1)]).unwrap();
        let b = c.cohomology_dims();
        assert_eq!(b.get(0), BettiEntry::Known(0));
        assert_eq!(b.get(1), BettiEntry::Unknown);
    }

    #[test]
    fn rejects_non_complex() {
        // d1 ∘ d0 != 0
        let d0 = SparseMatrix::identity(1);
        let d1 = SparseMatrix::identity(1);
        assert!(ChainComplexSlice::new(vec![1, 1, 1], vec![d0, d1]).is_err());
    }

    #[test]
    fn hand_built_weil_gl1_complex() {
        // the 4-dimensional complex on monomials 1, y1, c1, y1c1 with dy1 = c1
        let d0 = SparseMatrix::zero(1, 1);
        let d1 = SparseMatrix::identity(1); // y1 -> c1
        let d2 = SparseMatrix::zero(1, 1); // c1 -> 0 (y1c1 target dim 1)
        let c = ChainComplexSlice::new(vec![1, 1, 1, 1], vec![d0, d1, d2]).unwrap();
        let b = c.cohomology_dims();
        assert_eq!(b.known_prefix(2).unwrap(), vec![1, 0, 0]);
        // top degree of the window is unknown by policy
        assert_eq!(b.get(3), BettiEntry::Unknown);
    }

    #[test]
    fn representatives_modulo_image() {
        // 0 -> Q^2 -> Q with d0 = 0, d1 = [1, -1]: H^1 has rank 1
        let d0 = SparseMatrix::zero(2, 1);
        let d1 = SparseMatrix::from_dense(&[vec![rat(1), rat(-1)]]);
        let c = ChainComplexSlice::new(vec![1, 2, 1], vec![d0, d1.clone()]).unwrap();
        let reps = c.cohomology_representatives(1);
        assert_eq!(reps.len(), 1);
        assert!(d1.mul_vec(&reps[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn coords_in_span_roundtrip() {
        let basis = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        let t = vec![rat(2), rat(3), rat(5)];
        let c = coords_in_span(&basis, &t).unwrap();
        assert_eq!(c, vec![rat(2), rat(3)]);
        assert!(coords_in_span(&basis, &[rat(0), rat(0), rat(1)]).is_none());
    }

    #[test]
    fn invert_dense_small() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = invert_dense(&m).unwrap();
        assert_eq!(inv[0], vec![rat(1), rat(-1)]);
        assert_eq!(inv[1], vec![rat(-1), rat(2)]);
        assert!(invert_dense(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }
}
