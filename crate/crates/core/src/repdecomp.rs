//! Isotypic decomposition of finite cyclic group actions over C and R,
//! and the per-conjugacy-class (inertia) bookkeeping for explicit finite
//! matrix groups.
//!
//! Real decompositions of rational matrices are computed through
//! cyclotomic polynomials: the multiplicity of the rotation factors of
//! angle 2πk/N with N/gcd(N,k) = d is dim ker Φ_d(g) / φ(d), since Galois
//! conjugate eigenvalues of a rational matrix share multiplicities.

use crate::linalg::{rat, Rat, SparseMatrix};
use crate::{CoreError, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Inertia enumeration cap: groups are enumerated in full.
pub const MAX_GROUP_ORDER: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// One nontrivial isotypic factor. `real_dim` is the real dimension of the
/// irreducible: 2 for both the complex one dimensional representations and
/// the real rotation planes. A value of 4 marks a quaternionic
/// endomorphism algebra and is rejected everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub k: u64,
    pub multiplicity: usize,
    #[serde(rename = "realDim")]
    pub real_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub field: Field,
    #[serde(rename = "dimV0")]
    pub dim_v0: usize,
    #[serde(rename = "mMinus1")]
    pub m_minus1: usize,
    pub factors: Vec<Factor>,
}

impl Decomposition {
    /// Structural checks; `total_dim` is the dimension of the ambient
    /// space over the decomposition's ground field, when known.
    pub fn validate(&self, total_dim: Option<usize>) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for f in &self.factors {
            if f.multiplicity == 0 {
                return Err(CoreError::Schema(format!("factor {} has multiplicity 0", f.label)));
            }
            if f.real_dim == 4 {
                return Err(CoreError::Quaternionic(format!(
                    "factor {} has a four dimensional endomorphism algebra; only cyclic-type \
                     (real or complex) factors are supported",
                    f.label
                )));
            }
            if f.real_dim != 2 {
                return Err(CoreError::Schema(format!(
                    "factor {} has unsupported real dimension {}",
                    f.label, f.real_dim
                )));
            }
            if !seen.insert(f.label.clone()) {
                return Err(CoreError::Schema(format!("duplicate factor label {}", f.label)));
            }
        }
        if self.field == Field::Complex && self.m_minus1 != 0 {
            return Err(CoreError::Schema("mMinus1 must be 0 over the complex field".into()));
        }
        if let Some(n) = total_dim {
            let factor_dim: usize = self
                .factors
                .iter()
                .map(|f| match self.field {
                    Field::Complex => f.multiplicity * f.real_dim / 2,
                    Field::Real => f.multiplicity * f.real_dim,
                })
                .sum();
            if self.dim_v0 + self.m_minus1 + factor_dim != n {
                return Err(CoreError::Schema(format!(
                    "decomposition dimensions do not add up to {n}"
                )));
            }
        }
        Ok(())
    }

    /// Multiplicities of the nontrivial factors, in label order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.multiplicity).collect()
    }
}

fn factor_label(k: u64) -> String {
    format!("k{k}")
}

/// Complex decomposition of the diagonal action of Z/N with the given
/// weight exponents.
pub fn decompose_complex(n_order: u64, exponents: &[u64]) -> Result<Decomposition> {
    if n_order == 0 {
        return Err(CoreError::Schema("group order must be positive".into()));
    }
    let mut dim_v0 = 0;
    let mut mult: BTreeMap<u64, usize> = BTreeMap::new();
    for e in exponents {
        let r = e % n_order;
        if r == 0 {
            dim_v0 += 1;
        } else {
            *mult.entry(r).or_insert(0) += 1;
        }
    }
    let d = Decomposition {
        field: Field::Complex,
        dim_v0,
        m_minus1: 0,
        factors: mult
            .into_iter()
            .map(|(k, m)| Factor { label: factor_label(k), k, multiplicity: m, real_dim: 2 })
            .collect(),
    };
    d.validate(Some(exponents.len()))?;
    Ok(d)
}

/// Real generator data: either explicit eigenvalue blocks or a rational
/// matrix of exact order N.
#[derive(Debug, Clone)]
pub enum RealGenerator {
    Blocks {
        plus1: usize,
        minus1: usize,
        /// rotation planes by angle 2πk/N with multiplicities
        rotations: Vec<(u64, usize)>,
    },
    Matrix(Vec<Vec<Rat>>),
}

/// Real isotypic decomposition of the cyclic action generated by `gen`.
/// Rotation labels are canonicalized to k in [1, ceil(N/2) - 1].
pub fn decompose_real_cyclic(n_order: u64, gen: &RealGenerator) -> Result<Decomposition> {
    if n_order == 0 {
        return Err(CoreError::Schema("group order must be positive".into()));
    }
    let (dim_v0, m_minus1, mult, total) = match gen {
        RealGenerator::Blocks { plus1, minus1, rotations } => {
            let mut dim_v0 = *plus1;
            let mut m_minus1 = *minus1;
            let mut mult: BTreeMap<u64, usize> = BTreeMap::new();
            for (k, m) in rotations {
                let r = k % n_order;
                if r == 0 {
                    dim_v0 += 2 * m; // angle 0: an identity block
                } else if 2 * r == n_order {
                    m_minus1 += 2 * m; // angle π: a -1 block
                } else {
                    let canonical = r.min(n_order - r);
                    *mult.entry(canonical).or_insert(0) += m;
                }
            }
            let total = plus1 + minus1 + 2 * rotations.iter().map(|(_, m)| m).sum::<usize>();
            (dim_v0, m_minus1, mult, total)
        }
        RealGenerator::Matrix(g) => {
            let n = g.len();
            if g.iter().any(|row| row.len() != n) {
                return Err(CoreError::Schema("generator matrix must be square".into()));
            }
            if matrix_order(g, n_order)? != n_order {
                return Err(CoreError::Schema(format!(
                    "generator does not have exact order {n_order}"
                )));
            }
            let dim_v0 = cyclotomic_kernel_dim(g, 1);
            let m_minus1 = if n_order % 2 == 0 { cyclotomic_kernel_dim(g, 2) } else { 0 };
            let mut mult: BTreeMap<u64, usize> = BTreeMap::new();
            for d in divisors(n_order) {
                if d < 3 {
                    continue;
                }
                let ker = cyclotomic_kernel_dim(g, d);
                let phi = euler_phi(d) as usize;
                debug_assert_eq!(ker % phi, 0);
                let m_d = ker / phi;
                if m_d == 0 {
                    continue;
                }
                // one factor per canonical rotation label of exact order d
                for k in 1..=(n_order + 1) / 2 {
                    if k < n_order - k && n_order / gcd(n_order, k) == d {
                        *mult.entry(k).or_insert(0) += m_d;
                    }
                }
            }
            (dim_v0, m_minus1, mult, n)
        }
    };
    let d = Decomposition {
        field: Field::Real,
        dim_v0,
        m_minus1,
        factors: mult
            .into_iter()
            .map(|(k, m)| Factor { label: factor_label(k), k, multiplicity: m, real_dim: 2 })
            .collect(),
    };
    d.validate(Some(total))?;
    Ok(d)
}

/// Complexification of a real cyclic decomposition: each rotation factor
/// (k, m) splits into conjugate complex factors (k, m) and (N-k, m), and
/// the sign part becomes the residue N/2.
pub fn complexify(d: &Decomposition, n_order: u64) -> Result<Decomposition> {
    if d.field != Field::Real {
        return Err(CoreError::Schema("complexify expects a real decomposition".into()));
    }
    let mut mult: BTreeMap<u64, usize> = BTreeMap::new();
    if d.m_minus1 > 0 {
        if n_order % 2 != 0 {
            return Err(CoreError::Schema("sign representation needs even order".into()));
        }
        *mult.entry(n_order / 2).or_insert(0) += d.m_minus1;
    }
    for f in &d.factors {
        *mult.entry(f.k % n_order).or_insert(0) += f.multiplicity;
        *mult.entry((n_order - f.k % n_order) % n_order).or_insert(0) += f.multiplicity;
    }
    Ok(Decomposition {
        field: Field::Complex,
        dim_v0: d.dim_v0,
        m_minus1: 0,
        factors: mult
            .into_iter()
            .map(|(k, m)| Factor { label: factor_label(k), k, multiplicity: m, real_dim: 2 })
            .collect(),
    })
}

// --- rational matrix helpers -------------------------------------------

pub fn mat_identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { Rat::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn is_identity(a: &[Vec<Rat>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
    })
}

/// Order of the matrix, probing powers up to `limit`; errors beyond it.
fn matrix_order(g: &[Vec<Rat>], limit: u64) -> Result<u64> {
    let mut p = g.to_vec();
    for o in 1..=limit {
        if is_identity(&p) {
            return Ok(o);
        }
        p = mat_mul(&p, g);
    }
    Err(CoreError::Schema(format!("matrix order exceeds {limit}")))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| gcd(n, *k) == 1).count() as u64
}

/// Coefficients (low to high) of the d-th cyclotomic polynomial, computed
/// by dividing x^d - 1 by the cyclotomic polynomials of proper divisors.
pub fn cyclotomic(d: u64) -> Vec<Rat> {
    let mut num = vec![Rat::zero(); d as usize + 1];
    num[0] = rat(-1);
    num[d as usize] = rat(1);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        num = poly_div_exact(&num, &cyclotomic(e));
    }
    num
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut quo = vec![Rat::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = &rem[i] / lead;
        if !c.is_zero() {
            quo[i - dd] = c.clone();
            for (j, dc) in den.iter().enumerate() {
                let v = &c * dc;
                rem[i - dd + j] -= v;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quo
}

/// dim ker Φ_d(g) over Q.
fn cyclotomic_kernel_dim(g: &[Vec<Rat>], d: u64) -> usize {
    let n = g.len();
    let poly = cyclotomic(d);
    let mut acc = vec![vec![Rat::zero(); n]; n];
    let mut power = mat_identity(n);
    for (i, c) in poly.iter().enumerate() {
        if !c.is_zero() {
            for r in 0..n {
                for s in 0..n {
                    acc[r][s] += c * &power[r][s];
                }
            }
        }
        if i + 1 < poly.len() {
            power = mat_mul(&power, g);
        }
    }
    n - SparseMatrix::from_dense(&acc).rank()
}

// --- inertia ------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct InertiaComponent {
    pub representative: Vec<Vec<Rat>>,
    pub order: u64,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub fixed_dim: usize,
    pub decomposition: Decomposition,
}

/// One component per conjugacy class of the explicitly listed group, with
/// the class representative's real cyclic decomposition. Components are
/// ordered by (element order, lexicographic representative), which is
/// deterministic.
pub fn inertia_components(matrices: &[Vec<Vec<Rat>>]) -> Result<Vec<InertiaComponent>> {
    if matrices.is_empty() {
        return Err(CoreError::Schema("empty matrix list".into()));
    }
    if matrices.len() > MAX_GROUP_ORDER {
        return Err(CoreError::Infeasible(format!(
            "group enumeration is capped at order {MAX_GROUP_ORDER}"
        )));
    }
    let n = matrices[0].len();
    let mut elements: Vec<Vec<Vec<Rat>>> = matrices.to_vec();
    elements.sort();
    elements.dedup();
    for g in &elements {
        if g.len() != n || g.iter().any(|row| row.len() != n) {
            return Err(CoreError::Schema("matrices must share a square shape".into()));
        }
    }
    let index_of = |m: &Vec<Vec<Rat>>| -> Result<usize> {
        elements
            .binary_search(m)
            .map_err(|_| CoreError::Schema("matrix list is not closed under product".into()))
    };
    let order = elements.len();
    let mut table = vec![vec![0usize; order]; order];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            table[i][j] = index_of(&mat_mul(a, b))?;
        }
    }
    let identity = index_of(&mat_identity(n))?;
    let mut inverse = vec![0usize; order];
    for i in 0..order {
        let inv = (0..order)
            .find(|j| table[i][*j] == identity)
            .ok_or_else(|| CoreError::Schema("element without inverse".into()))?;
        inverse[i] = inv;
    }

    let mut assigned = vec![false; order];
    let mut components = Vec::new();
    for i in 0..order {
        if assigned[i] {
            continue;
        }
        let mut class: Vec<usize> = (0..order)
            .map(|h| table[table[h][i]][inverse[h]])
            .collect();
        class.sort_unstable();
        class.dedup();
        for c in &class {
            assigned[*c] = true;
        }
        // canonical representative: lexicographically smallest matrix
        let rep = *class
            .iter()
            .min_by(|a, b| elements[**a].cmp(&elements[**b]))
            .expect("nonempty class");
        let centralizer = (0..order)
            .filter(|h| table[*h][rep] == table[rep][*h])
            .count();
        if class.len() * centralizer != order {
            return Err(CoreError::Invariant(
                "class size times centralizer order must equal the group order".into(),
            ));
        }
        let g = &elements[rep];
        let elt_order = matrix_order(g, order as u64)?;
        let decomposition = decompose_real_cyclic(elt_order, &RealGenerator::Matrix(g.clone()))?;
        components.push(InertiaComponent {
            representative: g.clone(),
            order: elt_order,
            class_size: class.len(),
            centralizer_order: centralizer,
            fixed_dim: decomposition.dim_v0,
            decomposition,
        });
    }
    if components.iter().map(|c| c.class_size).sum::<usize>() != order {
        return Err(CoreError::Invariant("class equation failed".into()));
    }
    components.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.representative.cmp(&b.representative))
    });
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_examples() {
        let d = decompose_complex(3, &[0, 1]).unwrap();
        assert_eq!(d.dim_v0, 1);
        assert_eq!(d.factors.len(), 1);
        assert_eq!((d.factors[0].k, d.factors[0].multiplicity), (1, 1));

        let d = decompose_complex(7, &[0, 0, 0]).unwrap();
        assert_eq!(d.dim_v0, 3);
        assert!(d.factors.is_empty());

        let d = decompose_complex(5, &[1, 1, 2]).unwrap();
        assert_eq!(d.dim_v0, 0);
        let got: Vec<(u64, usize)> =
            d.factors.iter().map(|f| (f.k, f.multiplicity)).collect();
        assert_eq!(got, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn real_minus_one_dimension_one() {
        let g = RealGenerator::Matrix(vec![vec![rat(-1)]]);
        let d = decompose_real_cyclic(2, &g).unwrap();
        assert_eq!((d.dim_v0, d.m_minus1), (0, 1));
        assert!(d.factors.is_empty());
    }

    #[test]
    fn real_quarter_rotation() {
        let g = RealGenerator::Matrix(vec![
            vec![rat(0), rat(-1)],
            vec![rat(1), rat(0)],
        ]);
        let d = decompose_real_cyclic(4, &g).unwrap();
        assert_eq!((d.dim_v0, d.m_minus1), (0, 0));
        let got: Vec<(u64, usize)> =
            d.factors.iter().map(|f| (f.k, f.multiplicity)).collect();
        assert_eq!(got, vec![(1, 1)]);
    }

    #[test]
    fn real_diagonal_signs() {
        let g = RealGenerator::Blocks { plus1: 1, minus1: 2, rotations: vec![] };
        let d = decompose_real_cyclic(2, &g).unwrap();
        assert_eq!((d.dim_v0, d.m_minus1), (1, 2));
    }

    #[test]
    fn wrong_order_rejected() {
        let g = RealGenerator::Matrix(vec![vec![rat(-1)]]);
        assert!(decompose_real_cyclic(4, &g).is_err());
    }

    #[test]
    fn conjugation_invariance() {
        // rotation of order 3 on R^2, conjugated by a shear
        let g = vec![
            vec![rat(0), rat(-1)],
            vec![rat(1), rat(-1)],
        ];
        // g has characteristic polynomial x^2 + x + 1, order 3
        let h = vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]];
        let h_inv = vec![vec![rat(1), rat(-2)], vec![rat(0), rat(1)]];
        let conj = mat_mul(&mat_mul(&h, &g), &h_inv);
        let d1 = decompose_real_cyclic(3, &RealGenerator::Matrix(g)).unwrap();
        let d2 = decompose_real_cyclic(3, &RealGenerator::Matrix(conj)).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn complexification_refines() {
        let rot = RealGenerator::Blocks { plus1: 0, minus1: 0, rotations: vec![(1, 1)] };
        let real = decompose_real_cyclic(5, &rot).unwrap();
        let complexified = complexify(&real, 5).unwrap();
        let direct = decompose_complex(5, &[1, 4]).unwrap();
        assert_eq!(complexified, direct);
    }

    #[test]
    fn quaternionic_rejected() {
        let d = Decomposition {
            field: Field::Real,
            dim_v0: 0,
            m_minus1: 0,
            factors: vec![Factor {
                label: "q".into(),
                k: 1,
                multiplicity: 1,
                real_dim: 4,
            }],
        };
        let err = d.validate(None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn inertia_plus_minus_identity() {
        let comps = inertia_components(&[mat_identity(2), vec![
            vec![rat(-1), rat(0)],
            vec![rat(0), rat(-1)],
        ]])
        .unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].fixed_dim, 2);
        assert_eq!(comps[1].fixed_dim, 0);
        assert_eq!(comps[1].decomposition.m_minus1, 2);
        for c in &comps {
            assert_eq!(c.class_size * c.centralizer_order, 2);
        }
    }

    #[test]
    fn inertia_rotation_order_three() {
        let r = vec![vec![rat(0), rat(-1)], vec![rat(1), rat(-1)]];
        let r2 = mat_mul(&r, &r);
        let comps = inertia_components(&[mat_identity(2), r, r2]).unwrap();
        assert_eq!(comps.len(), 3);
        let nontrivial: Vec<&InertiaComponent> =
            comps.iter().filter(|c| c.order > 1).collect();
        assert_eq!(nontrivial.len(), 2);
        for c in nontrivial {
            assert_eq!(c.fixed_dim, 0);
            assert_eq!(c.decomposition.factors.len(), 1);
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![rat(-1), rat(1)]);
        assert_eq!(cyclotomic(2), vec![rat(1), rat(1)]);
        assert_eq!(cyclotomic(4), vec![rat(1), rat(0), rat(1)]);
        assert_eq!(cyclotomic(6), vec![rat(1), rat(-1), rat(1)]);
    }
}
