//! Characteristic-class source rings per inertia component: the truncated
//! Weil model of the block product attached to an isotypic decomposition,
//! with primary (Pontryagin and Chern-pair) and secondary (fiber)
//! generators labeled, the equivariant vanishing bound, and the CE oracle
//! comparison.

use crate::ce::{formal_vector_fields, weight_zero_cohomology};
use crate::gca::Element;
use crate::lie::{FactorKind, LieProduct, LieSummand};
use crate::linalg::{BettiTable, Rat, SparseMatrix};
use crate::repdecomp::{inertia_components, Decomposition, Field, InertiaComponent};
use crate::weil::{relative_weil, weil_algebra, RelativeComplex};
use crate::{CoreError, Result};
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

/// Relativity mode of the Weil model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Absolute,
    /// Basic subcomplex relative to the whole block product: the truncated
    /// invariant polynomial ring.
    RelativeGl,
    /// Relative to the maximal compact subalgebra (so per real block, u
    /// per complex block).
    RelativeSo,
    /// As RelativeSo, additionally fixed under the component group of the
    /// orthogonal blocks.
    RelativeO,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Absolute => "absolute",
            Mode::RelativeGl => "relative-gl",
            Mode::RelativeSo => "relative-so",
            Mode::RelativeO => "relative-o",
        };
        f.write_str(s)
    }
}

impl FromStr for Mode {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "absolute" => Ok(Mode::Absolute),
            "relative-gl" => Ok(Mode::RelativeGl),
            "relative-so" => Ok(Mode::RelativeSo),
            "relative-o" => Ok(Mode::RelativeO),
            other => Err(CoreError::Schema(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Pontryagin,
    ChernPair,
    Secondary,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassKind::Pontryagin => "pontryagin",
            ClassKind::ChernPair => "chern-pair",
            ClassKind::Secondary => "secondary",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabel {
    pub name: String,
    pub degree: u32,
    /// The block the generator comes from, or "fiber" for secondary ones.
    pub block: String,
    pub kind: ClassKind,
    /// True when the class sits at the maximal filtration weight, the
    /// survivor position of the truncation.
    pub corner: bool,
}

#[derive(Debug, Clone)]
pub struct RingReport {
    pub inertia_label: String,
    pub decomposition: Decomposition,
    pub mode: Mode,
    pub truncation_bound: u32,
    pub generators: Vec<ClassLabel>,
    pub betti: BettiTable,
}

#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub bound: u32,
    /// Names of the base monomials checked, all of weight bound + 2; every
    /// higher monomial is a multiple of one of these.
    pub checked: Vec<String>,
    pub all_vanish: bool,
}

/// The block Lie algebra product dictated by a decomposition: gl(V0) and,
/// over the reals, gl(mMinus1) and one bgl(m) per complex factor; over the
/// complex field one gl(m) per factor. Zero blocks are skipped.
pub fn lie_product(d: &Decomposition) -> Result<LieProduct> {
    d.validate(None)?;
    let mut summands = Vec::new();
    if d.dim_v0 > 0 {
        summands.push(LieSummand {
            kind: FactorKind::Gl,
            size: d.dim_v0,
            label: "V0".into(),
        });
    }
    match d.field {
        Field::Real => {
            if d.m_minus1 > 0 {
                summands.push(LieSummand {
                    kind: FactorKind::Gl,
                    size: d.m_minus1,
                    label: "m-1".into(),
                });
            }
            for f in &d.factors {
                summands.push(LieSummand {
                    kind: FactorKind::Bgl,
                    size: f.multiplicity,
                    label: f.label.clone(),
                });
            }
        }
        Field::Complex => {
            for f in &d.factors {
                summands.push(LieSummand {
                    kind: FactorKind::Gl,
                    size: f.multiplicity,
                    label: f.label.clone(),
                });
            }
        }
    }
    Ok(LieProduct { summands })
}

fn check_mode(d: &Decomposition, mode: Mode) -> Result<()> {
    if d.field == Field::Complex && matches!(mode, Mode::RelativeSo | Mode::RelativeO) {
        return Err(CoreError::Schema(
            "orthogonal relative modes require a real decomposition".into(),
        ));
    }
    Ok(())
}

/// The relative (or absolute) truncated Weil complex for a decomposition
/// and mode. `bound` is None for the untruncated control run.
pub fn build_complex(
    d: &Decomposition,
    mode: Mode,
    bound: Option<u32>,
    max_degree: u32,
) -> Result<RelativeComplex> {
    check_mode(d, mode)?;
    let product = lie_product(d)?;
    let g = product.total();
    let n = g.dim();
    let (k_vecs, autos): (Vec<Vec<Rat>>, Vec<Vec<Vec<Rat>>>) = match mode {
        Mode::Absolute => (Vec::new(), Vec::new()),
        Mode::RelativeGl => {
            let id: Vec<Vec<Rat>> = (0..n)
                .map(|i| {
                    let mut v = vec![Rat::zero(); n];
                    v[i] = crate::linalg::rat(1);
                    v
                })
                .collect();
            (id, Vec::new())
        }
        Mode::RelativeSo => (product.compact_vectors(), Vec::new()),
        Mode::RelativeO => (product.compact_vectors(), product.reflection_ads()),
    };
    relative_weil(&g, &k_vecs, &autos, bound, max_degree)
}

/// Per-degree count of classes admitting a representative with no odd
/// generator. Secondary classes are the remainder.
fn primary_dims(complex: &RelativeComplex, max_degree: u32) -> Vec<usize> {
    let dims = complex.slice.dims();
    let mut out = Vec::new();
    for q in 0..=max_degree as usize {
        let dim_q = dims[q];
        if dim_q == 0 {
            out.push(0);
            continue;
        }
        // rows of the theta-coordinate functionals, in invariant coords
        let theta_rows: Vec<Vec<Rat>> = (0..complex.bases[q].len())
            .filter(|&i| {
                complex.bases[q][i]
                    .iter()
                    .any(|&(g, _)| complex.algebra.generators()[g].is_odd())
            })
            .map(|i| {
                complex.invariant[q]
                    .iter()
                    .map(|v| v[i].clone())
                    .collect()
            })
            .collect();
        let m = SparseMatrix::from_dense(&theta_rows_padded(&theta_rows, dim_q));
        let p_basis = m.kernel_basis();
        let dim_p = p_basis.len();

        // Z ∩ P: theta-free cocycles
        let d_q = complex.slice.differential(q);
        let mut stacked = d_q.to_dense();
        stacked.extend(theta_rows_padded(&theta_rows, dim_q));
        let z_cap_p = SparseMatrix::from_dense(&stacked).kernel_basis().len();

        // B ∩ P via dim B + dim P - dim(B + P)
        let b_cap_p = if q == 0 {
            0
        } else {
            let d_prev = complex.slice.differential(q - 1);
            let dim_b = d_prev.rank();
            // columns of d_prev span B; append the P basis
            let mut cols: Vec<Vec<Rat>> = Vec::new();
            let prev_dense = d_prev.to_dense();
            for j in 0..d_prev.cols() {
                cols.push(prev_dense.iter().map(|r| r[j].clone()).collect());
            }
            cols.extend(p_basis.iter().cloned());
            let dim_sum = SparseMatrix::from_dense(&cols).rank();
            dim_b + dim_p - dim_sum
        };
        out.push(z_cap_p - b_cap_p);
    }
    out
}

fn theta_rows_padded(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        vec![vec![Rat::zero(); cols]]
    } else {
        rows.to_vec()
    }
}

fn primary_generators(product: &LieProduct, field: Field, bound: u32) -> Vec<ClassLabel> {
    let mut out = Vec::new();
    for s in &product.summands {
        match (field, s.kind) {
            (Field::Real, FactorKind::Gl) => {
                for i in 1..=s.size / 2 {
                    let degree = 4 * i as u32;
                    if degree <= bound {
                        out.push(ClassLabel {
                            name: format!("p{i}"),
                            degree,
                            block: s.label.clone(),
                            kind: ClassKind::Pontryagin,
                            corner: degree == bound,
                        });
                    }
                }
            }
            (Field::Real, FactorKind::Bgl) => {
                for i in 1..=s.size {
                    let degree = 2 * i as u32;
                    if degree <= bound {
                        for name in [format!("x{i}"), format!("y{i}")] {
                            out.push(ClassLabel {
                                name,
                                degree,
                                block: s.label.clone(),
                                kind: ClassKind::ChernPair,
                                corner: degree == bound,
                            });
                        }
                    }
                }
            }
            (Field::Complex, _) => {
                let letter = if s.label == "V0" { "ξ" } else { "η" };
                for i in 1..=s.size {
                    let degree = 2 * i as u32;
                    if degree <= bound {
                        out.push(ClassLabel {
                            name: format!("{letter}{i}"),
                            degree,
                            block: s.label.clone(),
                            kind: ClassKind::ChernPair,
                            corner: degree == bound,
                        });
                    }
                }
            }
        }
    }
    out
}

/// True when the representative touches the maximal filtration weight and
/// lives strictly above the bound in total degree.
fn is_corner(complex: &RelativeComplex, rep: &Element, q: usize, bound: u32) -> bool {
    if q as u32 <= bound {
        return false;
    }
    rep.terms()
        .map(|(m, _)| complex.algebra.monomial_weight(m))
        .max()
        .map(|w| w == bound)
        .unwrap_or(false)
}

/// Secondary classes: cohomology classes none of whose representatives is
/// free of odd generators, detected degree by degree.
pub fn secondary_survivors(
    d: &Decomposition,
    mode: Mode,
    max_degree: u32,
) -> Result<Vec<ClassLabel>> {
    let bound = 2 * d.dim_v0 as u32;
    let complex = build_complex(d, mode, Some(bound), max_degree)?;
    Ok(secondary_from_complex(&complex, max_degree, bound))
}

fn secondary_from_complex(
    complex: &RelativeComplex,
    max_degree: u32,
    bound: u32,
) -> Vec<ClassLabel> {
    let betti = complex.betti();
    let primary = primary_dims(complex, max_degree);
    let mut out = Vec::new();
    for q in 1..=max_degree as usize {
        let Some(b) = betti.known_prefix(q).map(|v| v[q]) else { continue };
        let count = b - primary[q].min(b);
        if count == 0 {
            continue;
        }
        let reps = complex.representatives(q);
        let corner = reps
            .iter()
            .any(|r| is_corner(complex, r, q, bound));
        for j in 0..count {
            let name = if count == 1 {
                format!("gv{q}")
            } else {
                format!("gv{q}_{}", j + 1)
            };
            out.push(ClassLabel {
                name,
                degree: q as u32,
                block: "fiber".into(),
                kind: ClassKind::Secondary,
                corner,
            });
        }
    }
    out
}

/// The labeled characteristic-class source ring of one inertia component.
pub fn char_class_ring(d: &Decomposition, mode: Mode, max_degree: u32) -> Result<RingReport> {
    char_class_ring_labeled(d, mode, max_degree, "⟨e⟩".into())
}

fn char_class_ring_labeled(
    d: &Decomposition,
    mode: Mode,
    max_degree: u32,
    inertia_label: String,
) -> Result<RingReport> {
    let bound = 2 * d.dim_v0 as u32;
    let complex = build_complex(d, mode, Some(bound), max_degree)?;
    let product = lie_product(d)?;
    let mut generators = primary_generators(&product, d.field, bound);
    generators.extend(secondary_from_complex(&complex, max_degree, bound));
    Ok(RingReport {
        inertia_label,
        decomposition: d.clone(),
        mode,
        truncation_bound: bound,
        generators,
        betti: complex.betti(),
    })
}

/// The untruncated control run: the absolute Weil algebra, which must be
/// acyclic in positive degree.
pub fn untruncated_control(d: &Decomposition, max_degree: u32) -> Result<BettiTable> {
    let complex = build_complex(d, Mode::Absolute, None, max_degree)?;
    Ok(complex.betti())
}

/// The equivariant vanishing bound 2·dimV0 together with an explicit check
/// that the generating above-bound base monomials die in the truncated
/// model. Every base monomial of weight > bound is divisible by one of
/// weight exactly bound + 2, so checking that slice suffices.
pub fn vanishing_report(d: &Decomposition) -> Result<VanishingReport> {
    let bound = 2 * d.dim_v0 as u32;
    let product = lie_product(d)?;
    let g = product.total();
    let algebra = weil_algebra(&g, Some(bound))?;
    let n = g.dim();
    let target = (bound + 2) / 2;
    let mut checked = Vec::new();
    let mut all_vanish = true;
    for combo in multisets(n, target as usize) {
        let mut prod = Element::one();
        let mut name_parts = Vec::new();
        for &a in &combo {
            let gen = crate::weil::omega(n, a);
            prod = algebra.multiply(&prod, &algebra.generator_element(gen));
            name_parts.push(algebra.generators()[gen].name.clone());
        }
        if !prod.is_zero() {
            all_vanish = false;
        }
        checked.push(name_parts.join("·"));
    }
    Ok(VanishingReport { bound, checked, all_vanish })
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 && k > 0 {
        return out;
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// One ring report per conjugacy class of the given matrix group, using
/// the class representative's decomposition. Reports are per conjugacy
/// class; finer fixed-locus component data would need manifold input.
pub fn inertia_report(
    matrices: &[Vec<Vec<Rat>>],
    mode: Mode,
    max_degree: u32,
) -> Result<Vec<(InertiaComponent, RingReport)>> {
    let components = inertia_components(matrices)?;
    let mut out = Vec::with_capacity(components.len());
    for (i, comp) in components.into_iter().enumerate() {
        let label = format!("⟨γ{}⟩", i + 1);
        let report = char_class_ring_labeled(&comp.decomposition, mode, max_degree, label)?;
        out.push((comp, report));
    }
    Ok(out)
}

/// Run the weight-zero CE pipeline on the invariant formal vector fields
/// and the truncated Weil pipeline on the block product, and compare.
pub fn oracle_compare(
    d: &Decomposition,
    max_degree: u32,
) -> Result<(BettiTable, BettiTable, bool)> {
    d.validate(None)?;
    let mut factors = Vec::new();
    match d.field {
        Field::Real => {
            if d.m_minus1 > 0 {
                factors.push(crate::lie::gl(d.m_minus1));
            }
            for f in &d.factors {
                factors.push(crate::lie::bgl(f.multiplicity));
            }
        }
        Field::Complex => {
            for f in &d.factors {
                factors.push(crate::lie::gl(f.multiplicity));
            }
        }
    }
    let wx = formal_vector_fields(d.dim_v0, &factors, max_degree as i64)?;
    let ce_betti = weight_zero_cohomology(&wx, max_degree)?;
    let bound = 2 * d.dim_v0 as u32;
    let g = lie_product(d)?.total();
    let weil_betti = weil_algebra(&g, Some(bound))?.cdga_cohomology(max_degree)?;
    let matches = ce_betti.agrees_with(&weil_betti, max_degree as usize);
    Ok((ce_betti, weil_betti, matches))
}
