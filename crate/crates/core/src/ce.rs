//! Chevalley-Eilenberg cohomology, including the weight-zero subcomplex of
//! weighted (graded) Lie algebras presented through a finite weight window.
//!
//! The main client is the Lie algebra of formal vector fields on V0 with
//! coefficients in polynomial matrix functions: its cohomology is computed
//! by the weight-zero subcomplex, and a finite weight window suffices
//! because a weight-zero q-cochain only ever contracts brackets of weight
//! at most q - 1 when all basis weights are >= -1.

use crate::lie::FiniteLieAlgebra;
use crate::linalg::{rat, BettiTable, ChainComplexSlice, Rat, SparseMatrix};
use crate::{CoreError, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Hard cap on the dimension of any single cochain space; beyond this the
/// exact elimination is not practical and the computation is refused.
pub const MAX_COCHAIN_DIM: usize = 4000;

/// A Lie algebra with integer weights, presented on the window of basis
/// elements of weight <= max_weight. Brackets whose weight exceeds the
/// window are dropped; consistency (antisymmetry, weight additivity, and
/// Jacobi for triples that stay inside the window) is checked at
/// construction.
#[derive(Debug, Clone)]
pub struct WeightedLieAlgebra {
    names: Vec<String>,
    weights: Vec<i64>,
    max_weight: i64,
    /// brackets for i < j only; [e_j, e_i] is implied
    bracket: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl WeightedLieAlgebra {
    pub fn new(
        names: Vec<String>,
        weights: Vec<i64>,
        max_weight: i64,
        bracket: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    ) -> Result<Self> {
        let n = names.len();
        if weights.len() != n {
            return Err(CoreError::Schema("one weight per basis element required".into()));
        }
        if weights.iter().any(|w| *w > max_weight) {
            return Err(CoreError::Schema("basis element outside the weight window".into()));
        }
        for ((i, j), terms) in &bracket {
            if *i >= *j || *j >= n {
                return Err(CoreError::Schema("bracket keys must satisfy i < j < dim".into()));
            }
            let w = weights[*i] + weights[*j];
            if w > max_weight && !terms.is_empty() {
                return Err(CoreError::Schema("bracket above the weight window must be dropped".into()));
            }
            for (k, c) in terms {
                if *k >= n || c.is_zero() {
                    return Err(CoreError::Schema("malformed bracket term".into()));
                }
                if weights[*k] != w {
                    return Err(CoreError::Invariant(format!(
                        "bracket of {} and {} is not weight homogeneous",
                        names[*i], names[*j]
                    )));
                }
            }
        }
        let a = WeightedLieAlgebra { names, weights, max_weight, bracket };
        a.check_jacobi()?;
        Ok(a)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.names.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (wi, wj, wk) = (self.weights[i], self.weights[j], self.weights[k]);
                    // only triples whose intermediate and final weights stay
                    // inside the window can be checked
                    let inside = wi + wj + wk <= self.max_weight
                        && wi + wj <= self.max_weight
                        && wi + wk <= self.max_weight
                        && wj + wk <= self.max_weight;
                    if !inside {
                        continue;
                    }
                    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, coef) in self.bracket_pair(a, b) {
                            for (t, coef2) in self.bracket_pair(m, c) {
                                let e = acc.entry(t).or_insert_with(Rat::zero);
                                *e += &coef * &coef2;
                            }
                        }
                    }
                    if acc.values().any(|c| !c.is_zero()) {
                        return Err(CoreError::Invariant(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    /// [e_i, e_j] for arbitrary i, j.
    pub fn bracket_pair(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.bracket.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.bracket
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        }
    }

    /// A finite Lie algebra viewed as weighted with all weights zero.
    pub fn from_finite(g: &FiniteLieAlgebra) -> Self {
        let n = g.dim();
        let mut bracket = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, Rat)> = g
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    bracket.insert((i, j), terms);
                }
            }
        }
        WeightedLieAlgebra {
            names: g.names().to_vec(),
            weights: vec![0; n],
            max_weight: i64::MAX / 4,
            bracket,
        }
    }
}

/// All strictly increasing index q-tuples with total weight `target`,
/// refusing to enumerate more than the cochain cap.
fn weight_subsets(weights: &[i64], q: usize, target: i64) -> Result<Vec<Vec<usize>>> {
    let min_w = weights.iter().copied().min().unwrap_or(0);
    let max_w = weights.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        weights: &[i64],
        q: usize,
        target: i64,
        from: usize,
        acc: i64,
        min_w: i64,
        max_w: i64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if cur.len() == q {
            if acc == target {
                if out.len() >= MAX_COCHAIN_DIM {
                    return Err(CoreError::Infeasible(format!(
                        "cochain space exceeds {MAX_COCHAIN_DIM} dimensions"
                    )));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let need = (q - cur.len()) as i64;
        if weights.len() - from < (q - cur.len())
            || acc + need * min_w > target
            || acc + need * max_w < target
        {
            return Ok(());
        }
        for i in from..weights.len() {
            cur.push(i);
            rec(weights, q, target, i + 1, acc + weights[i], min_w, max_w, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(weights, q, target, 0, 0, min_w, max_w, &mut cur, &mut out)?;
    Ok(out)
}

/// The weight-zero Chevalley-Eilenberg subcomplex in degrees
/// 0..=max_degree, with the top degree of the resulting table unknown.
/// Requires max_weight >= max_degree and weights >= -1, which together
/// guarantee every contracted bracket stays inside the window.
pub fn weight_zero_cohomology(g: &WeightedLieAlgebra, max_degree: u32) -> Result<BettiTable> {
    Ok(weight_zero_complex(g, max_degree)?.1.cohomology_dims())
}

/// The underlying complex together with its subset bases.
pub fn weight_zero_complex(
    g: &WeightedLieAlgebra,
    max_degree: u32,
) -> Result<(Vec<Vec<Vec<usize>>>, ChainComplexSlice)> {
    if g.max_weight() < max_degree as i64 {
        return Err(CoreError::Schema(format!(
            "weight window {} is too small for degree {}; need max_weight >= max_degree",
            g.max_weight(),
            max_degree
        )));
    }
    if g.weights().iter().any(|w| *w < -1) {
        return Err(CoreError::Schema(
            "weights below -1 are not supported by the window bound".into(),
        ));
    }
    let window = max_degree as usize + 1;
    let mut bases = Vec::with_capacity(window + 1);
    for q in 0..=window {
        bases.push(weight_subsets(g.weights(), q, 0)?);
    }
    let mut diffs = Vec::new();
    for q in 0..window {
        diffs.push(ce_matrix(g, &bases[q], &bases[q + 1])?);
    }
    let dims = bases.iter().map(|b| b.len()).collect();
    Ok((bases, ChainComplexSlice::new(dims, diffs)?))
}

/// Matrix of the Chevalley-Eilenberg differential from the span of
/// `source` q-subsets to the span of `target` (q+1)-subsets:
/// (dφ)(x_1..x_{q+1}) = Σ_{a<b} (-1)^{a+b} φ([x_a,x_b], .., x̂_a, .., x̂_b, ..).
fn ce_matrix(
    g: &WeightedLieAlgebra,
    source: &[Vec<usize>],
    target: &[Vec<usize>],
) -> Result<SparseMatrix> {
    let source_index: BTreeMap<&[usize], usize> =
        source.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut entries: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for (row, t) in target.iter().enumerate() {
        for pa in 0..t.len() {
            for pb in pa + 1..t.len() {
                let pair_sign = if (pa + pb) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != pa && *p != pb)
                    .map(|(_, x)| *x)
                    .collect();
                for (k, c) in g.bracket_pair(t[pa], t[pb]) {
                    if rest.binary_search(&k).is_ok() {
                        continue;
                    }
                    let pos = rest.partition_point(|x| *x < k);
                    let mut s = rest.clone();
                    s.insert(pos, k);
                    let col = match source_index.get(s.as_slice()) {
                        Some(c) => *c,
                        None => {
                            return Err(CoreError::Invariant(
                                "differential hit a subset outside the source basis".into(),
                            ))
                        }
                    };
                    let insert_sign = if pos % 2 == 0 { 1 } else { -1 };
                    let e = entries.entry((row, col)).or_insert_with(Rat::zero);
                    *e += c * rat(pair_sign * insert_sign);
                }
            }
        }
    }
    SparseMatrix::new(
        target.len(),
        source.len(),
        entries
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect(),
    )
}

/// Chevalley-Eilenberg cohomology of a finite dimensional Lie algebra with
/// trivial coefficients, exact in all degrees up to max_degree.
pub fn ce_cohomology(g: &FiniteLieAlgebra, max_degree: u32) -> Result<BettiTable> {
    let w = WeightedLieAlgebra::from_finite(g);
    // the full exterior algebra is finite: past dim(g) everything vanishes,
    // so the table is exact once the window covers it
    let eff = max_degree.min(g.dim() as u32);
    let betti = weight_zero_cohomology(&w, eff + 1)?;
    let mut entries = Vec::new();
    for q in 0..=max_degree as usize {
        if q <= eff as usize {
            entries.push(betti.get(q));
        } else {
            entries.push(crate::linalg::BettiEntry::Known(0));
        }
    }
    Ok(BettiTable::new(entries))
}

/// Multi-index over `vars` variables, stored as exponents.
pub type MultiIndex = Vec<u32>;

/// Multi-indices with total degree <= max_total, ordered by total degree
/// and then lexicographically.
fn multi_indices(vars: usize, max_total: i64) -> Vec<MultiIndex> {
    fn of_total(vars: usize, pos: usize, left: u32, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if pos + 1 == vars {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            of_total(vars, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if max_total < 0 {
        return out;
    }
    if vars == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = vec![0u32; vars];
    for t in 0..=max_total as u32 {
        of_total(vars, 0, t, &mut cur, &mut out);
    }
    out
}

fn total(a: &MultiIndex) -> i64 {
    a.iter().map(|e| *e as i64).sum()
}

fn mi_name(a: &MultiIndex) -> String {
    a.iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| if *e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect::<Vec<_>>()
        .join("")
}

/// Formal vector fields on dim_v0 variables with values in the trivial
/// extension by polynomial functions into the given matrix Lie algebras,
/// presented on the weight window [-1, max_weight].
///
/// Basis: x^a ∂_i with weight |a| - 1, and x^a ⊗ E with weight |a| for E a
/// basis element of a matrix factor. Brackets:
///   [x^a ∂_i, x^b ∂_j] = b_i x^{a+b-e_i} ∂_j - a_j x^{a+b-e_j} ∂_i
///   [x^a ∂_i, x^b ⊗ E] = b_i x^{a+b-e_i} ⊗ E
///   [x^a ⊗ E, x^b ⊗ F] = x^{a+b} ⊗ [E, F]
pub fn formal_vector_fields(
    dim_v0: usize,
    matrix_factors: &[FiniteLieAlgebra],
    max_weight: i64,
) -> Result<WeightedLieAlgebra> {
    if max_weight < 0 {
        return Err(CoreError::Schema("weight window must be nonnegative".into()));
    }
    // vector field part: |a| <= max_weight + 1
    let vf_mis = multi_indices(dim_v0, max_weight + 1);
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut basis: Vec<(Option<usize>, MultiIndex, usize)> = Vec::new();
    // (factor: None = vector field with direction idx, Some(f) = factor f
    //  with matrix basis idx)
    for a in &vf_mis {
        for i in 0..dim_v0 {
            let prefix = mi_name(a);
            names.push(if prefix.is_empty() {
                format!("∂{}", i + 1)
            } else {
                format!("{prefix}∂{}", i + 1)
            });
            weights.push(total(a) - 1);
            basis.push((None, a.clone(), i));
        }
    }
    let poly_mis = multi_indices(dim_v0, max_weight);
    for (f, alg) in matrix_factors.iter().enumerate() {
        for a in &poly_mis {
            for (e, name) in alg.names().iter().enumerate() {
                let prefix = mi_name(a);
                names.push(if prefix.is_empty() {
                    format!("{name}#{}", f + 1)
                } else {
                    format!("{prefix}{name}#{}", f + 1)
                });
                weights.push(total(a));
                basis.push((Some(f), a.clone(), e));
            }
        }
    }
    let n = basis.len();
    let index: BTreeMap<(Option<usize>, MultiIndex, usize), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let lookup = |f: Option<usize>, a: &MultiIndex, e: usize| -> Option<usize> {
        index.get(&(f, a.clone(), e)).copied()
    };
    let mut bracket: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if weights[i] + weights[j] > max_weight {
                continue;
            }
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            match (&basis[i], &basis[j]) {
                ((None, a, p), (None, b, q)) => {
                    if b[*p] > 0 {
                        let mut m = add_mi(a, b);
                        m[*p] -= 1;
                        let k = lookup(None, &m, *q).expect("window closed under bracket");
                        *acc.entry(k).or_insert_with(Rat::zero) += rat(b[*p] as i64);
                    }
                    if a[*q] > 0 {
                        let mut m = add_mi(a, b);
                        m[*q] -= 1;
                        let k = lookup(None, &m, *p).expect("window closed under bracket");
                        *acc.entry(k).or_insert_with(Rat::zero) -= rat(a[*q] as i64);
                    }
                }
                ((None, a, p), (Some(f), b, e)) => {
                    if b[*p] > 0 {
                        let mut m = add_mi(a, b);
                        m[*p] -= 1;
                        let k = lookup(Some(*f), &m, *e).expect("window closed under bracket");
                        *acc.entry(k).or_insert_with(Rat::zero) += rat(b[*p] as i64);
                    }
                }
                ((Some(_), _, _), (None, _, _)) => {
                    unreachable!("vector fields are listed before matrix parts")
                }
                ((Some(f), a, e1), (Some(g2), b, e2)) => {
                    if f == g2 {
                        let m = add_mi(a, b);
                        for (k, c) in matrix_factors[*f].bracket_basis(*e1, *e2).iter().enumerate() {
                            if !c.is_zero() {
                                let t = lookup(Some(*f), &m, k).expect("window closed under bracket");
                                *acc.entry(t).or_insert_with(Rat::zero) += c;
                            }
                        }
                    }
                }
            }
            let terms: Vec<(usize, Rat)> =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                bracket.insert((i, j), terms);
            }
        }
    }
    WeightedLieAlgebra::new(names, weights, max_weight, bracket)
}

fn add_mi(a: &MultiIndex, b: &MultiIndex) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
