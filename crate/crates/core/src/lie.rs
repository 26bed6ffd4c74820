//! Finite dimensional Lie algebras over Q, given by structure constants,
//! with the factor constructors used by the characteristic class rings:
//! gl(n), the real form bgl(m) of the complexified endomorphism algebra of
//! a complex isotypic summand, and the compact subalgebras so(n) and u(m).

use crate::linalg::{coords_in_span, invert_dense, rat, Rat};
use crate::{CoreError, Result};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLieAlgebra {
    names: Vec<String>,
    /// bracket[a][b] = coordinates of [e_a, e_b]
    bracket: Vec<Vec<Vec<Rat>>>,
}

impl FiniteLieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(names: Vec<String>, bracket: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        let n = names.len();
        if bracket.len() != n || bracket.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(CoreError::Schema("structure constant table has wrong shape".into()));
        }
        let a = FiniteLieAlgebra { names, bracket };
        for i in 0..n {
            for j in 0..=i {
                for c in 0..n {
                    if a.bracket[i][j][c] != -&a.bracket[j][i][c] {
                        return Err(CoreError::Invariant(format!(
                            "bracket not antisymmetric on ({}, {})",
                            a.names[i], a.names[j]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = a.bracket_of(&a.bracket[j][k], &unit(n, i));
                    add_in(&mut s, &a.bracket_of(&a.bracket[k][i], &unit(n, j)));
                    add_in(&mut s, &a.bracket_of(&a.bracket[i][j], &unit(n, k)));
                    if s.iter().any(|c| !c.is_zero()) {
                        return Err(CoreError::Invariant(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            a.names[i], a.names[j], a.names[k]
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> &Rat {
        &self.bracket[a][b][c]
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Rat] {
        &self.bracket[a][b]
    }

    pub fn bracket_of(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let f = &self.bracket[a][b][c];
                    if !f.is_zero() {
                        out[c] += xa * yb * f;
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(x) acting on the algebra, rows/cols in the basis order.
    pub fn ad_matrix(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let n = self.dim();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for b in 0..n {
            let col = self.bracket_of(x, &unit(n, b));
            for (r, row) in m.iter_mut().enumerate() {
                row[b] = col[r].clone();
            }
        }
        m
    }

    /// Structure constants in a new basis. `basis[i]` is the i-th new basis
    /// vector in old coordinates; must be invertible.
    pub fn change_basis(&self, basis: &[Vec<Rat>], names: Vec<String>) -> Result<FiniteLieAlgebra> {
        let n = self.dim();
        if basis.len() != n {
            return Err(CoreError::Schema("change of basis must be square".into()));
        }
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|r| basis.iter().map(|v| v[r].clone()).collect())
            .collect();
        if invert_dense(&cols).is_none() {
            return Err(CoreError::Schema("change of basis is singular".into()));
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket_of(&basis[a], &basis[b]);
                table[a][b] = coords_in_span(basis, &br).ok_or_else(|| {
                    CoreError::Invariant("bracket left the span during basis change".into())
                })?;
            }
        }
        FiniteLieAlgebra::new(names, table)
    }

    /// Checks that the matrix a (acting on basis coordinates) is a Lie
    /// algebra automorphism.
    pub fn is_automorphism(&self, a: &[Vec<Rat>]) -> bool {
        let n = self.dim();
        let apply = |v: &[Rat]| -> Vec<Rat> {
            (0..n)
                .map(|r| (0..n).map(|c| &a[r][c] * &v[c]).sum())
                .collect()
        };
        for i in 0..n {
            for j in i + 1..n {
                let lhs = apply(&self.bracket[i][j]);
                let rhs = self.bracket_of(&apply(&unit(n, i)), &apply(&unit(n, j)));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Direct sum of the given algebras; `names` must list all basis names in
/// order.
pub fn direct_sum(parts: &[FiniteLieAlgebra], names: Vec<String>) -> Result<FiniteLieAlgebra> {
    let d: usize = parts.iter().map(|p| p.dim()).sum();
    if names.len() != d {
        return Err(CoreError::Schema("direct sum needs one name per basis element".into()));
    }
    let mut table = vec![vec![vec![Rat::zero(); d]; d]; d];
    let mut o = 0;
    for part in parts {
        for a in 0..part.dim() {
            for b in 0..part.dim() {
                for c in 0..part.dim() {
                    let f = part.structure_constant(a, b, c);
                    if !f.is_zero() {
                        table[o + a][o + b][o + c] = f.clone();
                    }
                }
            }
        }
        o += part.dim();
    }
    FiniteLieAlgebra::new(names, table)
}

/// The subalgebra spanned by the given independent vectors, with its
/// structure constants in that spanning basis. Fails if the span is not
/// closed under the bracket.
pub fn subalgebra(
    ambient: &FiniteLieAlgebra,
    vecs: &[Vec<Rat>],
    names: Vec<String>,
) -> Result<FiniteLieAlgebra> {
    let k = vecs.len();
    if names.len() != k {
        return Err(CoreError::Schema("subalgebra needs one name per vector".into()));
    }
    let mut table = vec![vec![Vec::new(); k]; k];
    for a in 0..k {
        for b in 0..k {
            let br = ambient.bracket_of(&vecs[a], &vecs[b]);
            table[a][b] = coords_in_span(vecs, &br).ok_or_else(|| {
                CoreError::Schema("vectors do not span a subalgebra".into())
            })?;
        }
    }
    FiniteLieAlgebra::new(names, table)
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = rat(1);
    v
}

fn add_in(x: &mut [Rat], y: &[Rat]) {
    for (a, b) in x.iter_mut().zip(y) {
        *a += b;
    }
}

/// gl(n): basis E_ij in row-major order, [E_ij, E_kl] = δ_jk E_il − δ_li E_kj.
pub fn gl(n: usize) -> FiniteLieAlgebra {
    let d = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    let mut table = vec![vec![vec![Rat::zero(); d]; d]; d];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let (a, b) = (idx(i, j), idx(k, l));
                    if j == k {
                        table[a][b][idx(i, l)] += rat(1);
                    }
                    if l == i {
                        table[a][b][idx(k, j)] -= rat(1);
                    }
                }
            }
        }
    }
    FiniteLieAlgebra::new(names, table).expect("gl structure constants")
}

/// bgl(m): gl(m, C) as a real Lie algebra. Basis A_ij = E_ij followed by
/// B_ij = iE_ij, each block in row-major order; dimension 2m^2.
pub fn bgl(m: usize) -> FiniteLieAlgebra {
    let d = 2 * m * m;
    let a_idx = |i: usize, j: usize| i * m + j;
    let b_idx = |i: usize, j: usize| m * m + i * m + j;
    let mut names: Vec<String> = (0..m)
        .flat_map(|i| (0..m).map(move |j| format!("A{}{}", i + 1, j + 1)))
        .collect();
    names.extend((0..m).flat_map(|i| (0..m).map(move |j| format!("B{}{}", i + 1, j + 1))));
    let mut table = vec![vec![vec![Rat::zero(); d]; d]; d];
    // gl bracket on indices, dispatched to the A or B block with the sign
    // of i^2 when both arguments are imaginary
    let mut put = |a: usize, b: usize, i: usize, j: usize, k: usize, l: usize, out_b: bool, sign: i64| {
        let target = |p: usize, q: usize| if out_b { b_idx(p, q) } else { a_idx(p, q) };
        if j == k {
            table[a][b][target(i, l)] += rat(sign);
        }
        if l == i {
            table[a][b][target(k, j)] -= rat(sign);
        }
    };
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    put(a_idx(i, j), a_idx(k, l), i, j, k, l, false, 1);
                    put(a_idx(i, j), b_idx(k, l), i, j, k, l, true, 1);
                    put(b_idx(i, j), a_idx(k, l), i, j, k, l, true, 1);
                    put(b_idx(i, j), b_idx(k, l), i, j, k, l, false, -1);
                }
            }
        }
    }
    FiniteLieAlgebra::new(names, table).expect("bgl structure constants")
}

/// Spanning vectors of so(n) inside gl(n): E_ij − E_ji for i < j.
pub fn so_in_gl(n: usize) -> Vec<Vec<Rat>> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![Rat::zero(); n * n];
            v[idx(i, j)] = rat(1);
            v[idx(j, i)] = rat(-1);
            out.push(v);
        }
    }
    out
}

/// Spanning vectors of u(m) inside bgl(m): iE_jj, E_jk − E_kj and
/// i(E_jk + E_kj) for j < k. Dimension m^2.
pub fn u_in_bgl(m: usize) -> Vec<Vec<Rat>> {
    let d = 2 * m * m;
    let a_idx = |i: usize, j: usize| i * m + j;
    let b_idx = |i: usize, j: usize| m * m + i * m + j;
    let mut out = Vec::new();
    for j in 0..m {
        let mut v = vec![Rat::zero(); d];
        v[b_idx(j, j)] = rat(1);
        out.push(v);
    }
    for j in 0..m {
        for k in j + 1..m {
            let mut v = vec![Rat::zero(); d];
            v[a_idx(j, k)] = rat(1);
            v[a_idx(k, j)] = rat(-1);
            out.push(v);
            let mut w = vec![Rat::zero(); d];
            w[b_idx(j, k)] = rat(1);
            w[b_idx(k, j)] = rat(1);
            out.push(w);
        }
    }
    out
}

/// Adjoint action on gl(n) of the reflection diag(−1, 1, ..., 1): the
/// diagonal matrix sending E_ij to s_i s_j E_ij.
pub fn gl_reflection_ad(n: usize) -> Vec<Vec<Rat>> {
    let d = n * n;
    let mut m = vec![vec![Rat::zero(); d]; d];
    for i in 0..n {
        for j in 0..n {
            let s = if (i == 0) != (j == 0) { -1 } else { 1 };
            m[i * n + j][i * n + j] = rat(s);
        }
    }
    m
}

/// Direct sum with factor bookkeeping for generator naming.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// gl(n); over Q this also models gl(n, C) since Betti numbers do not
    /// depend on the characteristic zero ground field.
    Gl,
    /// gl(m, C) viewed as a real Lie algebra.
    Bgl,
}

#[derive(Debug, Clone)]
pub struct LieSummand {
    pub kind: FactorKind,
    pub size: usize,
    pub label: String,
}

impl LieSummand {
    pub fn algebra(&self) -> FiniteLieAlgebra {
        match self.kind {
            FactorKind::Gl => gl(self.size),
            FactorKind::Bgl => bgl(self.size),
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            FactorKind::Gl => self.size * self.size,
            FactorKind::Bgl => 2 * self.size * self.size,
        }
    }

    /// Spanning vectors of the maximal compact subalgebra in this factor.
    pub fn compact_vectors(&self) -> Vec<Vec<Rat>> {
        match self.kind {
            FactorKind::Gl => so_in_gl(self.size),
            FactorKind::Bgl => u_in_bgl(self.size),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LieProduct {
    pub summands: Vec<LieSummand>,
}

impl LieProduct {
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.dim()).sum()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.summands.len());
        let mut acc = 0;
        for s in &self.summands {
            out.push(acc);
            acc += s.dim();
        }
        out
    }

    /// The ambient direct sum algebra; basis names get the summand label as
    /// a suffix when there is more than one summand.
    pub fn total(&self) -> FiniteLieAlgebra {
        let parts: Vec<FiniteLieAlgebra> = self.summands.iter().map(|s| s.algebra()).collect();
        let d = self.total_dim();
        let offsets = self.offsets();
        let mut names = Vec::with_capacity(d);
        for (s, part) in self.summands.iter().zip(&parts) {
            for n in part.names() {
                if self.summands.len() == 1 {
                    names.push(n.clone());
                } else {
                    names.push(format!("{}[{}]", n, s.label));
                }
            }
        }
        let mut table = vec![vec![vec![Rat::zero(); d]; d]; d];
        for (k, part) in parts.iter().enumerate() {
            let o = offsets[k];
            for a in 0..part.dim() {
                for b in 0..part.dim() {
                    for c in 0..part.dim() {
                        let f = part.structure_constant(a, b, c);
                        if !f.is_zero() {
                            table[o + a][o + b][o + c] = f.clone();
                        }
                    }
                }
            }
        }
        FiniteLieAlgebra::new(names, table).expect("direct sum structure constants")
    }

    /// Compact subalgebra vectors of every summand, embedded in the sum.
    pub fn compact_vectors(&self) -> Vec<Vec<Rat>> {
        let d = self.total_dim();
        let offsets = self.offsets();
        let mut out = Vec::new();
        for (s, o) in self.summands.iter().zip(offsets) {
            for v in s.compact_vectors() {
                let mut w = vec![Rat::zero(); d];
                w[o..o + v.len()].clone_from_slice(&v);
                out.push(w);
            }
        }
        out
    }

    /// One reflection generator per gl summand, acting as the identity on
    /// the other summands. Empty for products without gl factors.
    pub fn reflection_ads(&self) -> Vec<Vec<Vec<Rat>>> {
        let d = self.total_dim();
        let offsets = self.offsets();
        let mut out = Vec::new();
        for (k, s) in self.summands.iter().enumerate() {
            if s.kind != FactorKind::Gl || s.size == 0 {
                continue;
            }
            let mut m = vec![vec![Rat::zero(); d]; d];
            for i in 0..d {
                m[i][i] = rat(1);
            }
            let block = gl_reflection_ad(s.size);
            let o = offsets[k];
            for (r, row) in block.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    m[o + r][o + c] = v.clone();
                }
            }
            out.push(m);
        }
        out
    }
}
