//! Explicit invariant theory for gl(V0) ⊕ gl(W): the antisymmetrized
//! generators Φ_σ and Ψ_γ, their product ψ_{σ,γ}, the tilde/ev
//! isomorphism pair between symmetric gl(W)-invariants and the wedge
//! picture, and a brute-force invariant-dimension solver against which the
//! partition-count prediction is checked.
//!
//! Conventions: the symmetric square of dual vectors evaluates as
//! e_u*e_v*(x, y) = (u*(x)v*(y) + v*(x)u*(y)) / 2, so that (e_i*)^2 pairs
//! (e_i, e_i) to 1 and the stabilizer-counting evaluation protocol comes
//! out in exact integers.

use crate::linalg::{det_dense, rat, Rat, SparseMatrix};
use crate::{CoreError, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Brute-force invariant solves refuse tensor spaces larger than this.
pub const MAX_TENSOR_DIM: usize = 20_000;

// --- permutations -------------------------------------------------------

/// A permutation of {0, .., r-1} by its images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &i in &images {
            if i >= r || seen[i] {
                return Err(CoreError::Schema("images do not form a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(r: usize) -> Self {
        Permutation((0..r).collect())
    }

    /// The cycle (0 1 ... r-1).
    pub fn full_cycle(r: usize) -> Self {
        Permutation((0..r).map(|i| (i + 1) % r).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// b ∘ self ∘ b⁻¹.
    pub fn conjugate_by(&self, b: &Permutation) -> Permutation {
        b.compose(self).compose(&b.inverse())
    }

    pub fn sign(&self) -> i64 {
        let mut s = 1;
        let n = self.0.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// Disjoint union: self on the first block, other shifted.
    pub fn disjoint_union(&self, other: &Permutation) -> Permutation {
        let r = self.0.len();
        let mut images = self.0.clone();
        images.extend(other.0.iter().map(|&i| i + r));
        Permutation(images)
    }

    pub fn all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..r).collect();
        permute(&mut images, 0, &mut out);
        out.sort();
        out
    }

    /// Order of the centralizer of self in Σ_r.
    pub fn stabilizer_order(&self) -> usize {
        let r = self.0.len();
        Permutation::all(r)
            .iter()
            .filter(|b| self.conjugate_by(b) == *self)
            .count()
    }
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation(v.clone()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

// --- basis bookkeeping --------------------------------------------------

/// Basis of Sym²V0* ⊗ V0: ((u <= v), t).
fn a_basis(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            for t in 0..n {
                out.push((u, v, t));
            }
        }
    }
    out
}

/// Basis of W ⊗ W* ⊗ V0*: (p, q, t).
fn b_basis(n: usize, m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..m {
        for q in 0..m {
            for t in 0..n {
                out.push((p, q, t));
            }
        }
    }
    out
}

/// e_u*e_v* evaluated on (e_c, e_d) with the 1/2 symmetrization.
fn sym2_eval(u: usize, v: usize, c: usize, d: usize) -> Rat {
    let first = if u == c && v == d { 1 } else { 0 };
    let second = if v == c && u == d { 1 } else { 0 };
    crate::linalg::ratio(first + second, 2)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Merge two increasing index lists; None on overlap, else the merged list
/// and the shuffle sign.
fn merge_signed(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut sign = 1i64;
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => return None,
            (Some(&x), Some(&y)) if x < y => {
                out.push(x);
                i += 1;
            }
            (Some(_), Some(&y)) => {
                // y jumps over the remaining a-elements
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some((out, sign))
}

// --- multilinear forms --------------------------------------------------

/// An element of (∧^{r+s}V0 ⊗ ∧^r(Sym²V0*⊗V0) ⊗ ∧^s(W⊗W*⊗V0*))*, stored by
/// its values on increasing wedge-basis keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearForm {
    pub dim_v0: usize,
    pub dim_w: usize,
    pub r: usize,
    pub s: usize,
    coeffs: BTreeMap<(Vec<usize>, Vec<usize>, Vec<usize>), Rat>,
}

impl MultilinearForm {
    fn zero(dim_v0: usize, dim_w: usize, r: usize, s: usize) -> Self {
        MultilinearForm { dim_v0, dim_w, r, s, coeffs: BTreeMap::new() }
    }

    fn set(&mut self, key: (Vec<usize>, Vec<usize>, Vec<usize>), value: Rat) {
        if !value.is_zero() {
            self.coeffs.insert(key, value);
        }
    }

    fn add(&mut self, key: (Vec<usize>, Vec<usize>, Vec<usize>), value: Rat) {
        if value.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Rat::zero);
        *e += value;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn coeff(&self, key: &(Vec<usize>, Vec<usize>, Vec<usize>)) -> Rat {
        self.coeffs.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    /// Wedge (shuffle) product; no factorial normalizations.
    pub fn multiply(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        if self.dim_v0 != other.dim_v0 || self.dim_w != other.dim_w {
            return Err(CoreError::Schema("mismatched dimensions in form product".into()));
        }
        let mut out = MultilinearForm::zero(
            self.dim_v0,
            self.dim_w,
            self.r + other.r,
            self.s + other.s,
        );
        for ((v1, a1, b1), c1) in &self.coeffs {
            for ((v2, a2, b2), c2) in &other.coeffs {
                let Some((vm, sv)) = merge_signed(v1, v2) else { continue };
                let Some((am, sa)) = merge_signed(a1, a2) else { continue };
                let Some((bm, sb)) = merge_signed(b1, b2) else { continue };
                out.add((vm, am, bm), c1 * c2 * rat(sv * sa * sb));
            }
        }
        Ok(out)
    }

    /// Evaluate on arbitrary arguments given by coordinates: v_args in the
    /// V0 basis, a_args in the Sym²V0*⊗V0 basis, b_args in the W⊗W*⊗V0*
    /// basis.
    pub fn eval(&self, v_args: &[Vec<Rat>], a_args: &[Vec<Rat>], b_args: &[Vec<Rat>]) -> Rat {
        let mut acc = Rat::zero();
        if v_args.len() != self.r + self.s || a_args.len() != self.r || b_args.len() != self.s {
            return acc;
        }
        for ((kv, ka, kb), c) in &self.coeffs {
            let dv = minor_det(kv, v_args);
            if dv.is_zero() {
                continue;
            }
            let da = minor_det(ka, a_args);
            if da.is_zero() {
                continue;
            }
            let db = minor_det(kb, b_args);
            acc += c * dv * da * db;
        }
        acc
    }
}

fn minor_det(rows: &[usize], args: &[Vec<Rat>]) -> Rat {
    let m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|&i| args.iter().map(|v| v[i].clone()).collect())
        .collect();
    det_dense(&m)
}

/// Φ_σ: for σ ∈ Σ_r, the gl(V0)-invariant
/// Φ_σ((v_i); (φ_i, v'_i)) = Σ_{ν,β} sgn(ν) Π_i φ_i(v'_{βσβ⁻¹(i)}, v_{ν(i)}).
pub fn phi(sigma: &Permutation, dim_v0: usize) -> MultilinearForm {
    let r = sigma.size();
    let n = dim_v0;
    let ab = a_basis(n);
    let perms = Permutation::all(r);
    let mut out = MultilinearForm::zero(n, 0, r, 0);
    for sv in subsets(n, r) {
        for sa in subsets(ab.len(), r) {
            let mut val = Rat::zero();
            for beta in &perms {
                let conj = sigma.conjugate_by(beta);
                for nu in &perms {
                    let mut term = rat(nu.sign());
                    for i in 0..r {
                        let (u, v, _) = ab[sa[i]];
                        let (_, _, t_src) = ab[sa[conj.apply(i)]];
                        let f = sym2_eval(u, v, t_src, sv[nu.apply(i)]);
                        if f.is_zero() {
                            term = Rat::zero();
                            break;
                        }
                        term *= f;
                    }
                    val += term;
                }
            }
            out.set((sv.clone(), sa.clone(), Vec::new()), val);
        }
    }
    out
}

/// Ψ_γ as a wedge form:
/// Ψ_γ((v_i); (w_i, w*_i, v*_i)) = Σ_{η,ω} sgn(η) Π_j w*_j(w_{ωγω⁻¹(j)}) v*_j(v_{η(j)}).
pub fn psi_form(gamma: &Permutation, dim_v0: usize, dim_w: usize) -> MultilinearForm {
    let s = gamma.size();
    let (n, m) = (dim_v0, dim_w);
    let bb = b_basis(n, m);
    let perms = Permutation::all(s);
    let mut out = MultilinearForm::zero(n, m, 0, s);
    for sv in subsets(n, s) {
        for sb in subsets(bb.len(), s) {
            let mut val = Rat::zero();
            for omega in &perms {
                let conj = gamma.conjugate_by(omega);
                for eta in &perms {
                    let mut ok = true;
                    for j in 0..s {
                        let (_, q, t) = bb[sb[j]];
                        let (p_src, _, _) = bb[sb[conj.apply(j)]];
                        if q != p_src || t != sv[eta.apply(j)] {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        val += rat(eta.sign());
                    }
                }
            }
            out.set((sv.clone(), Vec::new(), sb.clone()), val);
        }
    }
    out
}

/// ψ_{σ,γ} by its direct antisymmetrized definition, used to cross-check
/// the product construction.
pub fn psi_direct(
    sigma: &Permutation,
    gamma: &Permutation,
    dim_v0: usize,
    dim_w: usize,
) -> MultilinearForm {
    let (r, s) = (sigma.size(), gamma.size());
    let (n, m) = (dim_v0, dim_w);
    let ab = a_basis(n);
    let bb = b_basis(n, m);
    let perms_rs = Permutation::all(r + s);
    let perms_r = Permutation::all(r);
    let perms_s = Permutation::all(s);
    let mut out = MultilinearForm::zero(n, m, r, s);
    for sv in subsets(n, r + s) {
        for sa in subsets(ab.len(), r) {
            for sb in subsets(bb.len(), s) {
                let mut val = Rat::zero();
                for beta in &perms_r {
                    let sc = sigma.conjugate_by(beta);
                    for delta in &perms_s {
                        let gc = gamma.conjugate_by(delta);
                        for alpha in &perms_rs {
                            let mut term = rat(alpha.sign());
                            for i in 0..r {
                                let (u, v, _) = ab[sa[i]];
                                let (_, _, t_src) = ab[sa[sc.apply(i)]];
                                let f = sym2_eval(u, v, t_src, sv[alpha.apply(i)]);
                                if f.is_zero() {
                                    term = Rat::zero();
                                    break;
                                }
                                term *= f;
                            }
                            if term.is_zero() {
                                continue;
                            }
                            let mut ok = true;
                            for j in 0..s {
                                let (_, q, t) = bb[sb[j]];
                                let (p_src, _, _) = bb[sb[gc.apply(j)]];
                                if q != p_src || t != sv[alpha.apply(r + j)] {
                                    ok = false;
                                    break;
                                }
                            }
                            if ok {
                                val += term;
                            }
                        }
                    }
                }
                out.set((sv.clone(), sa.clone(), sb.clone()), val);
            }
        }
    }
    out
}

/// ψ_{σ,γ} = Φ_σ · Ψ_γ.
pub fn psi_pair(
    sigma: &Permutation,
    gamma: &Permutation,
    dim_v0: usize,
    dim_w: usize,
) -> Result<MultilinearForm> {
    let mut f = phi(sigma, dim_v0);
    f.dim_w = dim_w; // phi does not touch W
    f.multiply(&psi_form(gamma, dim_v0, dim_w))
}

// --- symmetric invariants and tilde/ev ----------------------------------

/// A gl(W)-invariant of (Sym^s(W⊗W*))*, stored by its values on sorted
/// tuples of basis vectors e_p ⊗ e_q*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymInvariant {
    pub s: usize,
    pub dim_w: usize,
    values: BTreeMap<Vec<(usize, usize)>, Rat>,
}

impl SymInvariant {
    pub fn zero(s: usize, dim_w: usize) -> Self {
        SymInvariant { s, dim_w, values: BTreeMap::new() }
    }

    /// Ψ_γ((w_i, w*_i)) = Σ_ω Π_j w*_j(w_{ωγω⁻¹(j)}).
    pub fn from_permutation(gamma: &Permutation, dim_w: usize) -> Self {
        let s = gamma.size();
        let m = dim_w;
        let mut values = BTreeMap::new();
        for key in multisets_pairs(m, s) {
            let mut val = Rat::zero();
            for omega in &Permutation::all(s) {
                let conj = gamma.conjugate_by(omega);
                let ok = (0..s).all(|j| key[j].1 == key[conj.apply(j)].0);
                if ok {
                    val += rat(1);
                }
            }
            if !val.is_zero() {
                values.insert(key, val);
            }
        }
        SymInvariant { s, dim_w, values }
    }

    pub fn value(&self, key: &[(usize, usize)]) -> Rat {
        let mut sorted = key.to_vec();
        sorted.sort_unstable();
        self.values.get(&sorted).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|c| c.is_zero())
    }

    /// Symmetrized (shuffle) product.
    pub fn multiply(&self, other: &SymInvariant) -> Result<SymInvariant> {
        if self.dim_w != other.dim_w {
            return Err(CoreError::Schema("mismatched W dimensions".into()));
        }
        let mut out = SymInvariant::zero(self.s + other.s, self.dim_w);
        for key in multisets_pairs(self.dim_w, self.s + other.s) {
            let mut val = Rat::zero();
            for split in subsets(key.len(), self.s) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, kv) in key.iter().enumerate() {
                    if split.binary_search(&i).is_ok() {
                        left.push(*kv);
                    } else {
                        right.push(*kv);
                    }
                }
                val += self.value(&left) * other.value(&right);
            }
            if !val.is_zero() {
                out.values.insert(key, val);
            }
        }
        Ok(out)
    }
}

fn multisets_pairs(m: usize, s: usize) -> Vec<Vec<(usize, usize)>> {
    let mut singles = Vec::new();
    for p in 0..m {
        for q in 0..m {
            singles.push((p, q));
        }
    }
    fn rec(
        singles: &[(usize, usize)],
        s: usize,
        from: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in from..singles.len() {
            cur.push(singles[i]);
            rec(singles, s, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&singles, s, 0, &mut Vec::new(), &mut out);
    out
}

/// Ψ ↦ Ψ̃ = Ω_s · Ψ.
pub fn tilde(psi: &SymInvariant, dim_v0: usize) -> MultilinearForm {
    let s = psi.s;
    let n = dim_v0;
    let m = psi.dim_w;
    let bb = b_basis(n, m);
    let mut out = MultilinearForm::zero(n, m, 0, s);
    for sv in subsets(n, s) {
        for sb in subsets(bb.len(), s) {
            // Ω_s((e_i)_{i∈sv}, (e*_{t_j})_j) = det of the incidence matrix
            let omega_m: Vec<Vec<Rat>> = (0..s)
                .map(|j| {
                    let (_, _, t) = bb[sb[j]];
                    sv.iter().map(|&i| if i == t { rat(1) } else { rat(0) }).collect()
                })
                .collect();
            let om = det_dense(&omega_m);
            if om.is_zero() {
                continue;
            }
            let key_pairs: Vec<(usize, usize)> =
                sb.iter().map(|&i| (bb[i].0, bb[i].1)).collect();
            let val = om * psi.value(&key_pairs);
            out.set((sv.clone(), Vec::new(), sb.clone()), val);
        }
    }
    out
}

/// Evaluation on the partial basis (e_1, .., e_s): the inverse of tilde on
/// forms of bidegree (0, s) with s ≤ dim V0.
pub fn ev(f: &MultilinearForm) -> Result<SymInvariant> {
    if f.r != 0 {
        return Err(CoreError::Schema("ev expects a form with no Sym² slots".into()));
    }
    let s = f.s;
    let (n, m) = (f.dim_v0, f.dim_w);
    if s > n {
        return Err(CoreError::Schema("ev needs s ≤ dim V0 for a partial basis".into()));
    }
    let bb = b_basis(n, m);
    let b_index: BTreeMap<(usize, usize, usize), usize> =
        bb.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let v_args: Vec<Vec<Rat>> = (0..s)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect();
    let mut out = SymInvariant::zero(s, m);
    for key in multisets_pairs(m, s) {
        let b_args: Vec<Vec<Rat>> = (0..s)
            .map(|j| {
                let mut v = vec![Rat::zero(); bb.len()];
                v[b_index[&(key[j].0, key[j].1, j)]] = rat(1);
                v
            })
            .collect();
        let val = f.eval(&v_args, &[], &b_args);
        if !val.is_zero() {
            out.values.insert(key, val);
        }
    }
    Ok(out)
}

/// Ψ̃_γ directly through tilde; equals psi_form, which the tests assert.
pub fn psi_tilde(gamma: &Permutation, dim_v0: usize, dim_w: usize) -> MultilinearForm {
    tilde(&SymInvariant::from_permutation(gamma, dim_w), dim_v0)
}

// --- invariant dimensions -----------------------------------------------

/// Number of partitions of n with all parts ≤ max_part.
pub fn partitions_bounded(n: usize, max_part: usize) -> usize {
    fn rec(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|first| rec(n - first, first)).sum()
    }
    rec(n, max_part)
}

/// The partition-product prediction with the r+s ≤ dim V0 cutoff.
pub fn inv_dim_predicted(r: usize, s: usize, dim_v0: usize, dim_w: usize) -> usize {
    if r + s > dim_v0 {
        return 0;
    }
    partitions_bounded(r, dim_v0) * partitions_bounded(s, dim_w)
}

/// Dimension of the gl(V0) ⊕ gl(W) invariants of
/// (∧^{r+s}V0 ⊗ ∧^r(Sym²V0*⊗V0) ⊗ ∧^s(W⊗W*⊗V0*))*, by solving the
/// infinitesimal-invariance system.
pub fn inv_dim_bruteforce(r: usize, s: usize, dim_v0: usize, dim_w: usize) -> Result<usize> {
    let (n, m) = (dim_v0, dim_w);
    let ab = a_basis(n);
    let bb = b_basis(n, m);
    let total = binomial(n, r + s) * binomial(ab.len(), r) * binomial(bb.len(), s);
    if total > MAX_TENSOR_DIM {
        return Err(CoreError::Infeasible(format!(
            "tensor space of dimension {total} exceeds the cap {MAX_TENSOR_DIM}"
        )));
    }
    let sv_list = subsets(n, r + s);
    let sa_list = subsets(ab.len(), r);
    let sb_list = subsets(bb.len(), s);
    if total == 0 {
        return Ok(0);
    }
    let mut keys = Vec::with_capacity(total);
    let mut key_index = BTreeMap::new();
    for sv in &sv_list {
        for sa in &sa_list {
            for sb in &sb_list {
                key_index.insert((sv.clone(), sa.clone(), sb.clone()), keys.len());
                keys.push((sv.clone(), sa.clone(), sb.clone()));
            }
        }
    }

    // infinitesimal action of one E_ab on a single tensor slot, expanded as
    // (replacement basis element, coefficient) pairs
    let act_v = |a: usize, b: usize, i: usize| -> Vec<(usize, Rat)> {
        if i == b { vec![(a, rat(1))] } else { vec![] }
    };
    let a_index: BTreeMap<(usize, usize, usize), usize> =
        ab.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let b_index: BTreeMap<(usize, usize, usize), usize> =
        bb.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let act_a = |a: usize, b: usize, idx: usize| -> Vec<(usize, Rat)> {
        let (u, v, t) = ab[idx];
        let mut out = Vec::new();
        // dual slots: e_u* ↦ -δ_{ua} e_b*
        if u == a {
            let (x, y) = if b <= v { (b, v) } else { (v, b) };
            out.push((a_index[&(x, y, t)], rat(-1)));
        }
        if v == a {
            let (x, y) = if u <= b { (u, b) } else { (b, u) };
            out.push((a_index[&(x, y, t)], rat(-1)));
        }
        if t == b {
            out.push((a_index[&(u, v, a)], rat(1)));
        }
        out
    };
    let act_b_glv = |a: usize, b: usize, idx: usize| -> Vec<(usize, Rat)> {
        let (p, q, t) = bb[idx];
        if t == a { vec![(b_index[&(p, q, b)], rat(-1))] } else { vec![] }
    };
    let act_b_glw = |a: usize, b: usize, idx: usize| -> Vec<(usize, Rat)> {
        let (p, q, t) = bb[idx];
        let mut out = Vec::new();
        if p == b {
            out.push((b_index[&(a, q, t)], rat(1)));
        }
        if q == a {
            out.push((b_index[&(p, b, t)], rat(-1)));
        }
        out
    };

    let mut rows: Vec<(usize, usize, Rat)> = Vec::new();
    let mut row = 0usize;
    let mut add_rows = |slot_kind: u8, a: usize, b: usize| {
        for key in keys.iter() {
            let (kv, ka, kb) = key;
            let mut image: Vec<(usize, Rat)> = Vec::new();
            // derivation over wedge slots of the affected factor
            match slot_kind {
                0 | 1 => {
                    // gl(V0): acts on V-slots, A-slots and the V0* slot of B
                    for (pos, &i) in kv.iter().enumerate() {
                        for (j, c) in act_v(a, b, i) {
                            if let Some((nk, sign)) = replace_sorted(kv, pos, j) {
                                let full = key_index
                                    [&(nk, ka.clone(), kb.clone())];
                                image.push((full, c * rat(sign)));
                            }
                        }
                    }
                    for (pos, &i) in ka.iter().enumerate() {
                        for (j, c) in act_a(a, b, i) {
                            if let Some((nk, sign)) = replace_sorted(ka, pos, j) {
                                let full = key_index
                                    [&(kv.clone(), nk, kb.clone())];
                                image.push((full, c * rat(sign)));
                            }
                        }
                    }
                    for (pos, &i) in kb.iter().enumerate() {
                        for (j, c) in act_b_glv(a, b, i) {
                            if let Some((nk, sign)) = replace_sorted(kb, pos, j) {
                                let full = key_index
                                    [&(kv.clone(), ka.clone(), nk)];
                                image.push((full, c * rat(sign)));
                            }
                        }
                    }
                }
                _ => {
                    // gl(W): acts only on the B factor
                    for (pos, &i) in kb.iter().enumerate() {
                        for (j, c) in act_b_glw(a, b, i) {
                            if let Some((nk, sign)) = replace_sorted(kb, pos, j) {
                                let full = key_index
                                    [&(kv.clone(), ka.clone(), nk)];
                                image.push((full, c * rat(sign)));
                            }
                        }
                    }
                }
            }
            // invariance of the dual: F(X·t) = 0 gives a row per source
            // basis tensor t with entries at the image positions
            for (target, c) in image {
                rows.push((row, target, c));
            }
            row += 1;
        }
    };
    for a in 0..n {
        for b in 0..n {
            add_rows(0, a, b);
        }
    }
    for a in 0..m {
        for b in 0..m {
            add_rows(2, a, b);
        }
    }
    let nrows = row;
    let mut merged: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for (r0, c0, v) in rows {
        *merged.entry((r0, c0)).or_insert_with(Rat::zero) += v;
    }
    let entries: Vec<(usize, usize, Rat)> = merged
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((r0, c0), v)| (r0, c0, v))
        .collect();
    let mat = SparseMatrix::new(nrows, total, entries)?;
    Ok(total - mat.rank())
}

/// Replace position `pos` of the increasing list by `new`, re-sorting with
/// the wedge sign; None if the result has a repeat.
fn replace_sorted(key: &[usize], pos: usize, new: usize) -> Option<(Vec<usize>, i64)> {
    let mut rest: Vec<usize> = key
        .iter()
        .enumerate()
        .filter(|(p, _)| *p != pos)
        .map(|(_, &x)| x)
        .collect();
    if rest.binary_search(&new).is_ok() {
        return None;
    }
    let target = rest.partition_point(|&x| x < new);
    rest.insert(target, new);
    // moving from `pos` to `target` costs one transposition per crossed slot
    let dist = pos.abs_diff(target);
    let sign = if dist % 2 == 0 { 1 } else { -1 };
    Some((rest, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stab_protocol_r1() {
        let id = Permutation::identity(1);
        let f = phi(&id, 1);
        // arguments: v = e_1, a = ((e_1*)², e_1)
        let v = vec![vec![rat(1)]];
        let ab = a_basis(1);
        assert_eq!(ab, vec![(0, 0, 0)]);
        let a = vec![vec![rat(1)]];
        assert_eq!(f.eval(&v, &a, &[]), rat(1));
    }

    fn protocol_value(sigma: &Permutation, tau: &Permutation, n: usize) -> Rat {
        let r = sigma.size();
        let f = phi(sigma, n);
        let ab = a_basis(n);
        let a_index: BTreeMap<(usize, usize, usize), usize> =
            ab.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let v_args: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        let tau_inv = tau.inverse();
        let a_args: Vec<Vec<Rat>> = (0..r)
            .map(|i| {
                let mut v = vec![Rat::zero(); ab.len()];
                v[a_index[&(i, i, tau_inv.apply(i))]] = rat(1);
                v
            })
            .collect();
        f.eval(&v_args, &a_args, &[])
    }

    #[test]
    fn stab_protocol_r_up_to_3() {
        for r in 1..=3usize {
            for sigma in Permutation::all(r) {
                for tau in Permutation::all(r) {
                    let got = protocol_value(&sigma, &tau, r);
                    let expect = if sigma.cycle_type() == tau.cycle_type() {
                        rat(sigma.stabilizer_order() as i64)
                    } else {
                        rat(0)
                    };
                    assert_eq!(got, expect, "σ={sigma:?} τ={tau:?}");
                }
            }
        }
    }

    #[test]
    fn phi_conjugacy_invariance() {
        let c3 = Permutation::full_cycle(3);
        let b = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(phi(&c3, 3), phi(&c3.conjugate_by(&b), 3));
    }

    #[test]
    fn phi_product_rule() {
        let id1 = Permutation::identity(1);
        let id2 = Permutation::identity(2);
        let lhs = phi(&id2, 2);
        let rhs = phi(&id1, 2).multiply(&phi(&id1, 2)).unwrap();
        assert_eq!(lhs, rhs);
        let c2 = Permutation::full_cycle(2);
        let mix = c2.disjoint_union(&id1);
        let lhs = phi(&mix, 3);
        let rhs = phi(&c2, 3).multiply(&phi(&id1, 3)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_tilde_matches_psi_form() {
        for s in 1..=2usize {
            for gamma in Permutation::all(s) {
                assert_eq!(psi_tilde(&gamma, 2, 2), psi_form(&gamma, 2, 2));
            }
        }
    }

    #[test]
    fn psi_tilde_vanishes_beyond_dim_v0() {
        let gamma = Permutation::identity(2);
        assert!(psi_tilde(&gamma, 1, 2).is_zero());
    }

    #[test]
    fn psi_pair_agrees_with_direct() {
        let id1 = Permutation::identity(1);
        let lhs = psi_pair(&id1, &id1, 2, 1).unwrap();
        let rhs = psi_direct(&id1, &id1, 2, 1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_pair_zero_when_overflowing() {
        let id1 = Permutation::identity(1);
        let f = psi_pair(&id1, &id1, 1, 1).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn tilde_is_homomorphism() {
        let a = SymInvariant::from_permutation(&Permutation::identity(1), 1);
        let lhs = tilde(&a, 2).multiply(&tilde(&a, 2)).unwrap();
        let rhs = tilde(&a.multiply(&a).unwrap(), 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ev_tilde_identity() {
        for s in 1..=2usize {
            for gamma in Permutation::all(s) {
                let psi = SymInvariant::from_permutation(&gamma, 2);
                let back = ev(&tilde(&psi, 2)).unwrap();
                assert_eq!(back, psi);
            }
        }
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(inv_dim_predicted(2, 0, 2, 1), 2);
        assert_eq!(inv_dim_predicted(0, 0, 3, 2), 1);
        assert_eq!(inv_dim_predicted(1, 2, 2, 1), 0);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(inv_dim_bruteforce(1, 0, 1, 1).unwrap(), 1);
        assert_eq!(inv_dim_bruteforce(1, 1, 1, 1).unwrap(), 0);
        assert_eq!(inv_dim_bruteforce(1, 1, 2, 2).unwrap(), 1);
    }

    #[test]
    fn bruteforce_matches_prediction_small() {
        for n in 1..=2usize {
            for m in 1..=2usize {
                for r in 0..=2usize {
                    for s in 0..=(2 - r) {
                        assert_eq!(
                            inv_dim_bruteforce(r, s, n, m).unwrap(),
                            inv_dim_predicted(r, s, n, m),
                            "(r,s,n,m)=({r},{s},{n},{m})"
                        );
                    }
                }
            }
        }
    }
}
