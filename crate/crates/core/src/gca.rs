//! Free graded-commutative algebras with a filtration-weight truncation and
//! a differential given on generators.
//!
//! The truncation is a quotient by the span of monomials whose filtration
//! weight exceeds the bound: multiplication and the differential are
//! computed freely and then reduced. Monomials are words in the generators,
//! sorted by declaration order; odd generators appear with exponent at most
//! one and even generators commute.

use crate::linalg::{rat, BettiTable, ChainComplexSlice, Rat, SparseMatrix};
use crate::{CoreError, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub filtration_weight: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32, filtration_weight: u32) -> Self {
        GeneratorSpec { name: name.into(), degree, filtration_weight }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Sorted (generator index, exponent) word. The empty word is the unit.
pub type Monomial = Vec<(usize, u32)>;

/// Sparse element: canonical monomial -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Rat>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_terms(vec![(Vec::new(), rat(1))])
    }

    pub fn from_terms(terms: Vec<(Monomial, Rat)>) -> Self {
        let mut e = Element::default();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::from_terms(vec![(m, rat(1))])
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<_> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .into_iter()
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }
}

/// Truncation bound on filtration weight; None means untruncated.
pub type TruncationBound = Option<u32>;

#[derive(Debug, Clone)]
pub struct FreeGCA {
    generators: Vec<GeneratorSpec>,
    truncation: TruncationBound,
    differential: Vec<Element>,
}

impl FreeGCA {
    /// Build the algebra and check that the differential raises degree by
    /// one, respects the filtration, and squares to zero on generators
    /// modulo the truncation ideal.
    pub fn new(
        generators: Vec<GeneratorSpec>,
        truncation: TruncationBound,
        differential: Vec<Element>,
    ) -> Result<Self> {
        if differential.len() != generators.len() {
            return Err(CoreError::Schema(
                "differential must be given on every generator".into(),
            ));
        }
        let a = FreeGCA { generators, truncation, differential };
        for (i, g) in a.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(CoreError::Schema(format!("generator {} has degree 0", g.name)));
            }
            let dg = a.reduce(&a.differential[i]);
            for (m, _) in dg.terms() {
                if a.monomial_degree(m) != g.degree + 1 {
                    return Err(CoreError::Invariant(format!(
                        "d({}) is not homogeneous of degree {}",
                        g.name,
                        g.degree + 1
                    )));
                }
                if a.monomial_weight(m) < g.filtration_weight {
                    return Err(CoreError::Invariant(format!(
                        "d({}) lowers the filtration weight",
                        g.name
                    )));
                }
            }
        }
        for (i, g) in a.generators.iter().enumerate() {
            let ddg = a.apply_differential(&a.reduce(&a.differential[i]));
            if !ddg.is_zero() {
                return Err(CoreError::Invariant(format!(
                    "d∘d != 0 on generator {}",
                    g.name
                )));
            }
        }
        Ok(a)
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn truncation(&self) -> TruncationBound {
        self.truncation
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_element(&self, index: usize) -> Element {
        Element::monomial(vec![(index, 1)])
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.iter().map(|(g, e)| self.generators[*g].degree * e).sum()
    }

    pub fn monomial_weight(&self, m: &Monomial) -> u32 {
        m.iter()
            .map(|(g, e)| self.generators[*g].filtration_weight * e)
            .sum()
    }

    fn survives(&self, m: &Monomial) -> bool {
        match self.truncation {
            None => true,
            Some(b) => self.monomial_weight(m) <= b,
        }
    }

    /// Reduce modulo the truncation ideal.
    pub fn reduce(&self, e: &Element) -> Element {
        Element {
            terms: e
                .terms
                .iter()
                .filter(|(m, _)| self.survives(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn monomial_name(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        m.iter()
            .map(|(g, e)| {
                let n = &self.generators[*g].name;
                if *e == 1 { n.clone() } else { format!("{n}^{e}") }
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    /// All monomials of the given total degree surviving truncation, in
    /// canonical order.
    pub fn monomial_basis(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current: Monomial = Vec::new();
        self.enumerate(0, degree, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, from: usize, remaining: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            if self.survives(current) {
                out.push(current.clone());
            }
            return;
        }
        for g in from..self.generators.len() {
            let spec = &self.generators[g];
            if spec.degree > remaining {
                continue;
            }
            let max_exp = if spec.is_odd() { 1 } else { remaining / spec.degree };
            for e in 1..=max_exp {
                current.push((g, e));
                if self.survives(current) {
                    self.enumerate(g + 1, remaining - spec.degree * e, current, out);
                }
                current.pop();
            }
        }
    }

    /// Product of two monomials with the Koszul sign; None if an odd
    /// generator squares.
    fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i64)> {
        let mut sign = 1i64;
        // count transpositions of odd generators needed to interleave b into a
        for (gb, _) in b {
            if !self.generators[*gb].is_odd() {
                continue;
            }
            let later_odds = a
                .iter()
                .filter(|(ga, _)| *ga > *gb && self.generators[*ga].is_odd())
                .count();
            if later_odds % 2 == 1 {
                sign = -sign;
            }
        }
        let mut out: Monomial = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = match (a.get(i), b.get(j)) {
                (Some((ga, _)), Some((gb, _))) => ga <= gb,
                (Some(_), None) => true,
                _ => false,
            };
            if take_a && j < b.len() && a[i].0 == b[j].0 {
                let g = a[i].0;
                if self.generators[g].is_odd() {
                    return None;
                }
                out.push((g, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            } else if take_a {
                out.push(a[i].clone());
                i += 1;
            } else {
                out.push(b[j].clone());
                j += 1;
            }
        }
        Some((out, sign))
    }

    /// Graded-commutative product, reduced modulo truncation.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                if let Some((m, sign)) = self.mono_mul(mx, my) {
                    if self.survives(&m) {
                        out.add_term(m, cx * cy * rat(sign));
                    }
                }
            }
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Element {
        let mut out = Element::zero();
        for i in 0..m.len() {
            let (g, e) = m[i];
            let prefix_degree: u32 = m[..i]
                .iter()
                .map(|(h, f)| self.generators[*h].degree * f)
                .sum();
            let sign = if prefix_degree % 2 == 0 { 1 } else { -1 };
            // prefix · (e · dg) · g^{e-1} · suffix
            let mut rest: Monomial = m[..i].to_vec();
            if e > 1 {
                rest.push((g, e - 1));
            }
            rest.extend_from_slice(&m[i + 1..]);
            let factor = self.differential[g].scale(&rat(sign * e as i64));
            // dg commutes into place via multiply's sign bookkeeping, with the
            // prefix split off first so the (-1)^{|prefix|} above is the only
            // extra sign
            let prefix: Monomial = m[..i].to_vec();
            let mut tail: Monomial = Vec::new();
            if e > 1 {
                tail.push((g, e - 1));
            }
            tail.extend_from_slice(&m[i + 1..]);
            let term = self.multiply(
                &self.multiply(&Element::monomial(prefix), &factor),
                &Element::monomial(tail),
            );
            out = out.add(&term);
        }
        out
    }

    /// Extension of the generator differential by the graded Leibniz rule,
    /// reduced modulo truncation.
    pub fn apply_differential(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out = out.add(&self.d_monomial(m).scale(c));
        }
        self.reduce(&out)
    }

    /// Per-degree monomial bases and the matrices of the differential, as a
    /// chain complex slice over degrees 0..=max_degree+1.
    pub fn complex_slice(&self, max_degree: u32) -> Result<(Vec<Vec<Monomial>>, ChainComplexSlice)> {
        let bases: Vec<Vec<Monomial>> = (0..=max_degree + 1)
            .map(|d| self.monomial_basis(d))
            .collect();
        let mut diffs = Vec::new();
        for q in 0..=max_degree as usize {
            let target_index: BTreeMap<&Monomial, usize> =
                bases[q + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut entries = Vec::new();
            for (col, m) in bases[q].iter().enumerate() {
                let dm = self.apply_differential(&Element::monomial(m.clone()));
                for (tm, c) in dm.terms() {
                    let row = *target_index.get(tm).ok_or_else(|| {
                        CoreError::Invariant(format!(
                            "differential left the monomial basis at degree {q}"
                        ))
                    })?;
                    entries.push((row, col, c.clone()));
                }
            }
            diffs.push(SparseMatrix::new(bases[q + 1].len(), bases[q].len(), entries)?);
        }
        let dims = bases.iter().map(|b| b.len()).collect();
        Ok((bases, ChainComplexSlice::new(dims, diffs)?))
    }

    /// Betti table of the cochain complex in degrees 0..=max_degree.
    pub fn cdga_cohomology(&self, max_degree: u32) -> Result<BettiTable> {
        let (_, slice) = self.complex_slice(max_degree)?;
        Ok(slice.cohomology_dims())
    }

    /// Betti table together with representative cocycles per degree.
    pub fn cdga_cohomology_with_representatives(
        &self,
        max_degree: u32,
    ) -> Result<(BettiTable, Vec<Vec<Element>>)> {
        let (bases, slice) = self.complex_slice(max_degree)?;
        let betti = slice.cohomology_dims();
        let mut reps = Vec::new();
        for q in 0..=max_degree as usize {
            let vectors = slice.cohomology_representatives(q);
            reps.push(
                vectors
                    .into_iter()
                    .map(|v| {
                        Element::from_terms(
                            v.into_iter()
                                .enumerate()
                                .map(|(i, c)| (bases[q][i].clone(), c))
                                .collect(),
                        )
                    })
                    .collect(),
            );
        }
        Ok((betti, reps))
    }
}
