//! Truncated Weil algebras W(g)_{2n} and their relative (basic)
//! subcomplexes.
//!
//! W(g) = Λg* ⊗ Sg* with deg(θ) = 1, deg(Ω) = 2 and the decreasing
//! filtration by symmetric degree; the truncation at an even bound 2n is
//! the quotient by monomials of filtration weight > 2n. The differential
//! is given on generators by
//!
//!   dθ^a = Ω^a + Σ_{b<c} f^a_{bc} θ^b θ^c,
//!   dΩ^a = Σ_{b,c} f^a_{bc} θ^b Ω^c,
//!
//! and independently as a sum over insertions and bracket contractions of
//! multilinear arguments; the second form is kept here as a test oracle
//! for the first.

use crate::gca::{Element, FreeGCA, GeneratorSpec, Monomial};
use crate::lie::FiniteLieAlgebra;
use crate::linalg::{coords_in_span, det_dense, invert_dense, perm_dense, rat, rref_dense, BettiTable, ChainComplexSlice, Rat, SparseMatrix};
use crate::{CoreError, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// θ generator index for basis element a.
pub fn theta(a: usize) -> usize {
    a
}

/// Ω generator index for basis element a in an algebra of dimension n.
pub fn omega(n: usize, a: usize) -> usize {
    n + a
}

/// The (possibly truncated) Weil algebra of g. A bound of Some(2n) kills
/// all monomials of symmetric weight above 2n; odd bounds are rejected
/// since the filtration only jumps at even levels.
pub fn weil_algebra(g: &FiniteLieAlgebra, bound: Option<u32>) -> Result<FreeGCA> {
    if let Some(b) = bound {
        if b % 2 != 0 {
            return Err(CoreError::Schema(format!(
                "truncation bound must be even, got {b}"
            )));
        }
    }
    let n = g.dim();
    let mut gens = Vec::with_capacity(2 * n);
    for name in g.names() {
        gens.push(GeneratorSpec::new(format!("θ({name})"), 1, 0));
    }
    for name in g.names() {
        gens.push(GeneratorSpec::new(format!("Ω({name})"), 2, 2));
    }
    let mut diffs = Vec::with_capacity(2 * n);
    for a in 0..n {
        let mut d = Element::monomial(vec![(omega(n, a), 1)]);
        for b in 0..n {
            for c in b + 1..n {
                d.add_term(vec![(theta(b), 1), (theta(c), 1)], g.structure_constant(b, c, a).clone());
            }
        }
        diffs.push(d);
    }
    for a in 0..n {
        let mut d = Element::zero();
        for b in 0..n {
            for c in 0..n {
                d.add_term(vec![(theta(b), 1), (omega(n, c), 1)], g.structure_constant(b, c, a).clone());
            }
        }
        diffs.push(d);
    }
    FreeGCA::new(gens, bound, diffs)
}

/// Evaluate a Weil element, viewed as a multilinear form, on exterior
/// arguments gs and symmetric arguments hs (coordinates in the Lie algebra
/// basis). The θ part evaluates as a determinant, the Ω part as a
/// permanent.
pub fn eval_weil_element(n: usize, e: &Element, gs: &[Vec<Rat>], hs: &[Vec<Rat>]) -> Rat {
    let mut acc = Rat::zero();
    'terms: for (m, c) in e.terms() {
        let mut thetas = Vec::new();
        let mut omegas = Vec::new();
        for (g, exp) in m {
            if *g < n {
                thetas.push(*g);
            } else {
                for _ in 0..*exp {
                    omegas.push(*g - n);
                }
            }
        }
        if thetas.len() != gs.len() || omegas.len() != hs.len() {
            continue 'terms;
        }
        let tm: Vec<Vec<Rat>> = thetas
            .iter()
            .map(|a| gs.iter().map(|v| v[*a].clone()).collect())
            .collect();
        let om: Vec<Vec<Rat>> = omegas
            .iter()
            .map(|a| hs.iter().map(|v| v[*a].clone()).collect())
            .collect();
        acc += c * det_dense(&tm) * perm_dense(&om);
    }
    acc
}

/// The Weil differential evaluated directly from its multilinear
/// description: insert each symmetric argument into the exterior slots,
/// contract exterior against symmetric arguments through the bracket, and
/// contract pairs of exterior arguments. Used as an independent oracle for
/// the generator-level differential.
pub fn formula_differential(
    g: &FiniteLieAlgebra,
    psi: &Element,
    gs: &[Vec<Rat>],
    hs: &[Vec<Rat>],
) -> Rat {
    let n = g.dim();
    let i = gs.len();
    let j = hs.len();
    let mut acc = Rat::zero();
    for t in 0..j {
        // the symmetric argument joins the exterior slots at the front,
        // like the bracket insertions below
        let mut egs = vec![hs[t].clone()];
        egs.extend(gs.iter().cloned());
        let ehs: Vec<Vec<Rat>> = hs
            .iter()
            .enumerate()
            .filter(|(u, _)| *u != t)
            .map(|(_, v)| v.clone())
            .collect();
        acc += eval_weil_element(n, psi, &egs, &ehs);
    }
    for s in 0..i {
        for t in 0..j {
            let egs: Vec<Vec<Rat>> = gs
                .iter()
                .enumerate()
                .filter(|(u, _)| *u != s)
                .map(|(_, v)| v.clone())
                .collect();
            let mut ehs = vec![g.bracket_of(&gs[s], &hs[t])];
            ehs.extend(hs.iter().enumerate().filter(|(u, _)| *u != t).map(|(_, v)| v.clone()));
            let sign = if s % 2 == 0 { 1 } else { -1 };
            acc += eval_weil_element(n, psi, &egs, &ehs) * rat(sign);
        }
    }
    for s1 in 0..i {
        for s2 in s1 + 1..i {
            let mut egs = vec![g.bracket_of(&gs[s1], &gs[s2])];
            egs.extend(
                gs.iter()
                    .enumerate()
                    .filter(|(u, _)| *u != s1 && *u != s2)
                    .map(|(_, v)| v.clone()),
            );
            let sign = if (s1 + s2 + 1) % 2 == 0 { 1 } else { -1 };
            acc += eval_weil_element(n, psi, &egs, hs) * rat(sign);
        }
    }
    acc
}

/// Even derivation extending the generator images (no Koszul signs beyond
/// the reordering inside products).
fn apply_derivation(alg: &FreeGCA, images: &[Element], m: &Monomial) -> Element {
    let mut out = Element::zero();
    for i in 0..m.len() {
        let (g, e) = m[i];
        let prefix = Element::monomial(m[..i].to_vec());
        let mut tail: Monomial = Vec::new();
        if e > 1 {
            tail.push((g, e - 1));
        }
        tail.extend_from_slice(&m[i + 1..]);
        let term = alg.multiply(
            &alg.multiply(&prefix, &images[g].scale(&rat(e as i64))),
            &Element::monomial(tail),
        );
        out = out.add(&term);
    }
    out
}

/// Multiplicative substitution of generator images.
fn apply_substitution(alg: &FreeGCA, images: &[Element], m: &Monomial) -> Element {
    let mut out = Element::one();
    for (g, e) in m {
        for _ in 0..*e {
            out = alg.multiply(&out, &images[*g]);
        }
    }
    out
}

/// A relative truncated Weil complex: the subcomplex of horizontal,
/// subalgebra-invariant, component-group-fixed elements, over degrees
/// 0..=max_degree+1.
#[derive(Debug, Clone)]
pub struct RelativeComplex {
    pub algebra: FreeGCA,
    /// dimension of the subalgebra inside the adapted basis
    pub subalgebra_dim: usize,
    /// horizontal monomials per degree
    pub bases: Vec<Vec<Monomial>>,
    /// invariant (and fixed) vectors per degree, coordinates in `bases`
    pub invariant: Vec<Vec<Vec<Rat>>>,
    pub slice: ChainComplexSlice,
}

impl RelativeComplex {
    pub fn betti(&self) -> BettiTable {
        self.slice.cohomology_dims()
    }

    pub fn invariant_dims(&self) -> Vec<usize> {
        self.invariant.iter().map(|v| v.len()).collect()
    }

    /// Representative cocycles in degree q as Weil elements.
    pub fn representatives(&self, q: usize) -> Vec<Element> {
        self.slice
            .cohomology_representatives(q)
            .into_iter()
            .map(|v| self.element_from_invariant_coords(q, &v))
            .collect()
    }

    pub fn element_from_invariant_coords(&self, q: usize, coords: &[Rat]) -> Element {
        let mut e = Element::zero();
        for (c, vec) in coords.iter().zip(&self.invariant[q]) {
            for (i, x) in vec.iter().enumerate() {
                e.add_term(self.bases[q][i].clone(), c * x);
            }
        }
        e
    }
}

/// Adapted basis: the subalgebra vectors first, completed greedily by
/// standard basis vectors. Names are kept when a basis vector is a
/// standard one.
fn adapted_basis(g: &FiniteLieAlgebra, k_vecs: &[Vec<Rat>]) -> Result<(Vec<Vec<Rat>>, Vec<String>)> {
    let n = g.dim();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut names = Vec::new();
    let rank_of = |rows: &[Vec<Rat>]| {
        let mut m: Vec<Vec<Rat>> = rows.to_vec();
        rref_dense(&mut m).len()
    };
    for (i, v) in k_vecs.iter().enumerate() {
        if v.len() != n {
            return Err(CoreError::Schema("subalgebra vector has wrong length".into()));
        }
        basis.push(v.clone());
        if rank_of(&basis) != basis.len() {
            return Err(CoreError::Schema("subalgebra vectors are dependent".into()));
        }
        let standard = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect::<Vec<_>>();
        if standard.len() == 1 && *standard[0].1 == rat(1) {
            names.push(g.names()[standard[0].0].clone());
        } else {
            names.push(format!("k{i}"));
        }
    }
    for a in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[a] = rat(1);
        basis.push(e);
        if rank_of(&basis) == basis.len() {
            names.push(g.names()[a].clone());
        } else {
            basis.pop();
        }
    }
    Ok((basis, names))
}

/// Build the basic subcomplex of W(g)_{bound} relative to the subalgebra
/// spanned by `k_vecs`, additionally taking fixed points of the
/// automorphisms `autos` (matrices on g in the original basis).
pub fn relative_weil(
    g: &FiniteLieAlgebra,
    k_vecs: &[Vec<Rat>],
    autos: &[Vec<Vec<Rat>>],
    bound: Option<u32>,
    max_degree: u32,
) -> Result<RelativeComplex> {
    let n = g.dim();
    let dim_k = k_vecs.len();
    let (basis, names) = adapted_basis(g, k_vecs)?;
    let g2 = g.change_basis(&basis, names)?;
    let alg = weil_algebra(&g2, bound)?;

    // closure of the subalgebra: [k, k] must have no component outside k
    for a in 0..dim_k {
        for b in 0..dim_k {
            let br = g2.bracket_basis(a, b);
            if br[dim_k..].iter().any(|c| !c.is_zero()) {
                return Err(CoreError::Schema(
                    "the given vectors do not span a subalgebra".into(),
                ));
            }
        }
    }

    // automorphisms expressed in the adapted basis
    let p_cols: Vec<Vec<Rat>> = (0..n)
        .map(|r| basis.iter().map(|v| v[r].clone()).collect())
        .collect();
    let p_inv = invert_dense(&p_cols).expect("adapted basis is invertible");
    let mat_mul = |x: &[Vec<Rat>], y: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| &x[r][k] * &y[k][c]).sum())
                    .collect()
            })
            .collect()
    };
    let mut adapted_autos = Vec::new();
    for a in autos {
        if !g.is_automorphism(a) {
            return Err(CoreError::Schema("component group matrix is not an automorphism".into()));
        }
        let a2 = mat_mul(&mat_mul(&p_inv, a), &p_cols);
        for (r, row) in a2.iter().enumerate().skip(dim_k) {
            if row[..dim_k].iter().any(|c| !c.is_zero()) {
                let _ = r;
                return Err(CoreError::Schema(
                    "component group does not preserve the subalgebra".into(),
                ));
            }
        }
        adapted_autos.push(a2);
    }

    // horizontal monomial bases
    let window = max_degree as usize + 1;
    let horizontal = |m: &Monomial| m.iter().all(|(gen, _)| *gen >= dim_k);
    let bases: Vec<Vec<Monomial>> = (0..=window)
        .map(|d| {
            alg.monomial_basis(d as u32)
                .into_iter()
                .filter(|m| horizontal(m))
                .collect()
        })
        .collect();

    // generator images for the Lie derivatives L_x, x in k, and for the
    // automorphisms
    let mut lie_images: Vec<Vec<Element>> = Vec::new();
    for a in 0..dim_k {
        let mut images = Vec::with_capacity(2 * n);
        // L_x θ^b = -θ^b([x, ·]): the θ^c coefficient is the e_b component
        // of [e_a, e_c], and likewise on the curvature copy of g*
        for b in 0..n {
            let mut e = Element::zero();
            for c in 0..n {
                e.add_term(vec![(theta(c), 1)], -g2.structure_constant(a, c, b));
            }
            images.push(e);
        }
        for b in 0..n {
            let mut e = Element::zero();
            for c in 0..n {
                e.add_term(vec![(omega(n, c), 1)], -g2.structure_constant(a, c, b));
            }
            images.push(e);
        }
        lie_images.push(images);
    }
    let mut auto_images: Vec<Vec<Element>> = Vec::new();
    for a2 in &adapted_autos {
        let mut images = Vec::with_capacity(2 * n);
        for b in 0..n {
            let mut e = Element::zero();
            for c in 0..n {
                e.add_term(vec![(theta(c), 1)], a2[b][c].clone());
            }
            images.push(e);
        }
        for b in 0..n {
            let mut e = Element::zero();
            for c in 0..n {
                e.add_term(vec![(omega(n, c), 1)], a2[b][c].clone());
            }
            images.push(e);
        }
        auto_images.push(images);
    }

    // invariant subspaces: joint kernel of the Lie derivatives and of
    // (automorphism - identity) on each horizontal degree
    let mut invariant: Vec<Vec<Vec<Rat>>> = Vec::new();
    for q in 0..=window {
        let basis_q = &bases[q];
        let index: BTreeMap<&Monomial, usize> =
            basis_q.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis_q.len();
        let mut stacked: Vec<Vec<Rat>> = Vec::new();
        let mut push_operator = |op: &dyn Fn(&Monomial) -> Element, subtract_identity: bool| -> Result<()> {
            let mut rows = vec![vec![Rat::zero(); dim]; dim];
            for (col, m) in basis_q.iter().enumerate() {
                let img = op(m);
                for (tm, c) in img.terms() {
                    let row = *index.get(tm).ok_or_else(|| {
                        CoreError::Invariant("operator left the horizontal subspace".into())
                    })?;
                    rows[row][col] += c;
                }
                if subtract_identity {
                    rows[col][col] -= rat(1);
                }
            }
            stacked.extend(rows);
            Ok(())
        };
        for images in &lie_images {
            push_operator(&|m| apply_derivation(&alg, images, m), false)?;
        }
        for images in &auto_images {
            push_operator(&|m| apply_substitution(&alg, images, m), true)?;
        }
        if stacked.is_empty() {
            invariant.push((0..dim).map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = rat(1);
                v
            }).collect());
        } else {
            let mat = SparseMatrix::from_dense(&stacked);
            invariant.push(mat.kernel_basis());
        }
    }

    // induced differential
    let mut diffs = Vec::new();
    for q in 0..window {
        let index: BTreeMap<&Monomial, usize> =
            bases[q + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut entries = Vec::new();
        for (col, v) in invariant[q].iter().enumerate() {
            let mut e = Element::zero();
            for (i, c) in v.iter().enumerate() {
                e.add_term(bases[q][i].clone(), c.clone());
            }
            let de = alg.apply_differential(&e);
            let mut coords = vec![Rat::zero(); bases[q + 1].len()];
            for (tm, c) in de.terms() {
                let row = *index.get(tm).ok_or_else(|| {
                    CoreError::Invariant("differential left the horizontal subspace".into())
                })?;
                coords[row] += c;
            }
            let rel = coords_in_span(&invariant[q + 1], &coords).ok_or_else(|| {
                CoreError::Invariant("differential left the invariant subspace".into())
            })?;
            for (row, c) in rel.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((row, col, c));
                }
            }
        }
        diffs.push(SparseMatrix::new(invariant[q + 1].len(), invariant[q].len(), entries)?);
    }
    let dims: Vec<usize> = invariant.iter().map(|v| v.len()).collect();
    let slice = ChainComplexSlice::new(dims, diffs)?;
    Ok(RelativeComplex { algebra: alg, subalgebra_dim: dim_k, bases, invariant, slice })
}

/// The basic subcomplex relative to the whole algebra: invariant
/// polynomials on g, truncated, with zero differential.
pub fn invariant_polynomials(
    g: &FiniteLieAlgebra,
    bound: Option<u32>,
    max_degree: u32,
) -> Result<RelativeComplex> {
    let n = g.dim();
    let identity: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = rat(1);
            v
        })
        .collect();
    relative_weil(g, &identity, &[], bound, max_degree)
}

/// The E2 page of the filtration spectral sequence of W(g)_{bound}:
/// E2^{p,q} = H^q(g; S^{p/2} g*) for even p <= bound, zero otherwise.
/// Returns, for each even p, the dimensions over q = 0..=max_q. All
/// entries are exact (the coefficient complexes are finite in q).
pub fn e2_page(g: &FiniteLieAlgebra, bound: u32, max_q: u32) -> Result<Vec<(u32, Vec<usize>)>> {
    if bound % 2 != 0 {
        return Err(CoreError::Schema(format!("truncation bound must be even, got {bound}")));
    }
    let n = g.dim() as u32;
    let alg = weil_algebra(g, None)?;
    let omega_weight = |m: &Monomial| -> u32 {
        m.iter()
            .filter(|(gen, _)| *gen >= g.dim())
            .map(|(_, e)| e)
            .sum()
    };
    let mut out = Vec::new();
    for j in 0..=bound / 2 {
        let bases: Vec<Vec<Monomial>> = (0..=n + 1)
            .map(|q| {
                alg.monomial_basis(q + 2 * j)
                    .into_iter()
                    .filter(|m| omega_weight(m) == j)
                    .collect()
            })
            .collect();
        let mut diffs = Vec::new();
        for q in 0..=n as usize {
            let index: BTreeMap<&Monomial, usize> =
                bases[q + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut entries = Vec::new();
            for (col, m) in bases[q].iter().enumerate() {
                let dm = alg.apply_differential(&Element::monomial(m.clone()));
                for (tm, c) in dm.terms() {
                    // project onto the associated graded piece
                    if omega_weight(tm) != j {
                        continue;
                    }
                    let row = *index.get(tm).ok_or_else(|| {
                        CoreError::Invariant("graded differential left the basis".into())
                    })?;
                    entries.push((row, col, c.clone()));
                }
            }
            diffs.push(SparseMatrix::new(bases[q + 1].len(), bases[q].len(), entries)?);
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let slice = ChainComplexSlice::new(dims, diffs)?;
        let betti = slice.cohomology_dims();
        let mut row = Vec::new();
        for q in 0..=max_q {
            let d = if q <= n {
                match betti.get(q as usize) {
                    crate::linalg::BettiEntry::Known(k) => k,
                    crate::linalg::BettiEntry::Unknown => {
                        return Err(CoreError::Invariant("E2 entry unexpectedly unknown".into()))
                    }
                }
            } else {
                0
            };
            row.push(d);
        }
        out.push((2 * j, row));
    }
    Ok(out)
}

/// Degree-wise totals of the E2 page: an upper bound for the Betti numbers
/// of the truncated Weil algebra.
pub fn e2_totals(page: &[(u32, Vec<usize>)], max_degree: u32) -> Vec<usize> {
    let mut out = vec![0usize; max_degree as usize + 1];
    for (p, row) in page {
        for (q, d) in row.iter().enumerate() {
            let total = *p as usize + q;
            if total <= max_degree as usize {
                out[total] += d;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;

    #[test]
    fn rejects_odd_bound() {
        assert!(weil_algebra(&lie::gl(1), Some(3)).is_err());
    }

    #[test]
    fn w_gl1_truncated_betti() {
        let alg = weil_algebra(&lie::gl(1), Some(2)).unwrap();
        let b = alg.cdga_cohomology(3).unwrap();
        assert_eq!(b.known_prefix(3).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn untruncated_w_gl2_acyclic_low_degrees() {
        let alg = weil_algebra(&lie::gl(2), None).unwrap();
        let b = alg.cdga_cohomology(3).unwrap();
        assert_eq!(b.known_prefix(3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn generator_differential_matches_formula() {
        let g = lie::gl(2);
        let n = g.dim();
        let alg = weil_algebra(&g, None).unwrap();
        let std_basis: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = rat(1);
                v
            })
            .collect();
        for deg in 1..=3u32 {
            for m in alg.monomial_basis(deg) {
                let psi = Element::monomial(m.clone());
                let dpsi = alg.apply_differential(&psi);
                // compare on every basis tuple of the right total degree
                for i in 0..=(deg + 1) as usize {
                    if (deg as usize + 1 - i) % 2 != 0 {
                        continue;
                    }
                    let j = (deg as usize + 1 - i) / 2;
                    for gs in subsets(n, i) {
                        for hs in multisets(n, j) {
                            let gv: Vec<Vec<Rat>> =
                                gs.iter().map(|a| std_basis[*a].clone()).collect();
                            let hv: Vec<Vec<Rat>> =
                                hs.iter().map(|a| std_basis[*a].clone()).collect();
                            let lhs = eval_weil_element(n, &dpsi, &gv, &hv);
                            let rhs = formula_differential(&g, &psi, &gv, &hv);
                            assert_eq!(lhs, rhs, "mismatch on {m:?} at ({gs:?}; {hs:?})");
                        }
                    }
                }
            }
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for a in from..n {
                cur.push(a);
                rec(n, k, a + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }

    fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for a in from..n {
                cur.push(a);
                rec(n, k, a, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }

    #[test]
    fn bgl1_chevalley_eilenberg() {
        // bound 0 reduces the Weil algebra to the exterior complex
        let alg = weil_algebra(&lie::bgl(1), Some(0)).unwrap();
        let b = alg.cdga_cohomology(2).unwrap();
        assert_eq!(b.known_prefix(2).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn bgl1_relative_u1() {
        let g = lie::bgl(1);
        let k = lie::u_in_bgl(1);
        let rc = relative_weil(&g, &k, &[], Some(0), 2).unwrap();
        let b = rc.betti();
        assert_eq!(b.known_prefix(2).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn relative_with_trivial_subalgebra_is_absolute() {
        let g = lie::gl(1);
        let rc = relative_weil(&g, &[], &[], Some(2), 3).unwrap();
        assert_eq!(rc.betti().known_prefix(3).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn invariant_polynomials_gl1() {
        let rc = invariant_polynomials(&lie::gl(1), Some(2), 3).unwrap();
        assert_eq!(rc.invariant_dims(), vec![1, 0, 1, 0, 0]);
        assert_eq!(rc.betti().known_prefix(3).unwrap(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn invariant_polynomials_two_gl1_factors() {
        let p = lie::LieProduct {
            summands: vec![
                lie::LieSummand { kind: lie::FactorKind::Gl, size: 1, label: "a".into() },
                lie::LieSummand { kind: lie::FactorKind::Gl, size: 1, label: "b".into() },
            ],
        };
        let rc = invariant_polynomials(&p.total(), Some(2), 2).unwrap();
        assert_eq!(rc.betti().known_prefix(2).unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn e2_page_gl1() {
        let page = e2_page(&lie::gl(1), 2, 3).unwrap();
        assert_eq!(page.len(), 2);
        assert_eq!(page[0], (0, vec![1, 1, 0, 0]));
        assert_eq!(page[1], (2, vec![1, 1, 0, 0]));
        assert_eq!(e2_totals(&page, 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn so2_relative_fixed_points_shrink() {
        let g = lie::gl(2);
        let k = lie::so_in_gl(2);
        let so = relative_weil(&g, &k, &[], Some(4), 4).unwrap();
        let o = relative_weil(&g, &k, &[lie::gl_reflection_ad(2)], Some(4), 4).unwrap();
        for (a, b) in o.invariant_dims().iter().zip(so.invariant_dims()) {
            assert!(*a <= b);
        }
    }
}
