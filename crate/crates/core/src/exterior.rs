//! The exterior algebra on `n` degree-one generators.
//!
//! Monomials are bitsets of generator indices; every graded piece is ordered
//! lexicographically on index sets, so `e_{012} < e_{013} < e_{023} < e_{123}`.

use std::cmp::Ordering;
use std::fmt;

use crate::arrangement::{indices_of, lex_cmp, Bits};
use crate::linalg::SparseVec;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Bits);

impl Monomial {
    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial(crate::arrangement::bits_of(indices))
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        indices_of(self.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(lex_cmp(self.0, other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        let idx = self.indices();
        let sep = if idx.iter().any(|&i| i >= 10) { "," } else { "" };
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Sign and support of `e_S ∧ e_T`, or `None` when they share an index.
pub fn wedge_monomials(s: Bits, t: Bits) -> Option<(i8, Bits)> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (s >> j).count_ones();
        rest &= rest - 1;
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, s | t))
}

/// A homogeneous element of the exterior algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedElement {
    degree: usize,
    coords: Vec<(Monomial, Rational)>,
}

impl GradedElement {
    pub fn zero(degree: usize) -> Self {
        GradedElement { degree, coords: Vec::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        GradedElement { degree: m.degree(), coords: vec![(m, Rational::ONE)] }
    }

    /// Builds an element from terms of the given degree, merging repeats.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut coords: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        assert!(coords.iter().all(|(m, _)| m.degree() == degree), "inhomogeneous terms");
        coords.sort_by_key(|c| c.0);
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(coords.len());
        for (m, c) in coords {
            match merged.last_mut() {
                Some((p, acc)) if *p == m => *acc = &*acc + &c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        GradedElement { degree, coords: merged }
    }

    /// A degree-one element `Σ c_i e_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        Self::from_terms(
            1,
            coeffs.iter().enumerate().map(|(i, &c)| (Monomial(1 << i), Rational::from_int(c))),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Rational {
        self.coords.iter().find(|(p, _)| *p == m).map_or(Rational::ZERO, |(_, c)| c.clone())
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        Self::from_terms(self.degree, self.coords.iter().chain(&other.coords).cloned())
    }

    pub fn scale(&self, c: &Rational) -> GradedElement {
        Self::from_terms(self.degree, self.coords.iter().map(|(m, x)| (*m, x * c)))
    }

    pub fn wedge(&self, other: &GradedElement) -> GradedElement {
        let mut terms = Vec::new();
        for (m, x) in &self.coords {
            for (p, y) in &other.coords {
                if let Some((sign, support)) = wedge_monomials(m.0, p.0) {
                    let c = x * y;
                    terms.push((Monomial(support), if sign > 0 { c } else { -c }));
                }
            }
        }
        Self::from_terms(self.degree + other.degree, terms)
    }

    /// Coordinates in the lexicographic basis of `E_degree`.
    pub fn to_vector(&self, basis: &ExteriorBasis) -> SparseVec {
        SparseVec::from_entries(self.coords.iter().map(|(m, c)| (basis.index(m.0), c.clone())).collect())
    }

    pub fn from_vector(degree: usize, v: &SparseVec, basis: &ExteriorBasis) -> Self {
        Self::from_terms(degree, v.iter().map(|(i, c)| (Monomial(basis.monomial(degree, *i)), c.clone())))
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coords.iter().enumerate() {
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() && m.0 != 0 {
                write!(f, "{m}")?;
            } else if m.0 == 0 {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

/// `∂e_J = Σ_t (-1)^t e_{J \ j_t}`.
pub fn boundary(mon: Monomial) -> GradedElement {
    let idx = mon.indices();
    assert!(!idx.is_empty(), "boundary of the unit");
    GradedElement::from_terms(
        idx.len() - 1,
        idx.iter().enumerate().map(|(t, &j)| {
            let c = if t % 2 == 0 { Rational::ONE } else { -Rational::ONE };
            (Monomial(mon.0 & !(1 << j)), c)
        }),
    )
}

/// `∂` extended linearly.
pub fn boundary_of(x: &GradedElement) -> GradedElement {
    assert!(x.degree() >= 1, "boundary of a degree-zero element");
    let mut terms = Vec::new();
    for (m, c) in x.terms() {
        for (p, d) in boundary(*m).terms() {
            terms.push((*p, c * d));
        }
    }
    GradedElement::from_terms(x.degree() - 1, terms)
}

/// Lexicographic bases of every graded piece `E_0, …, E_n`, with O(1) lookup
/// from a monomial to its position in its own degree.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    by_degree: Vec<Vec<Bits>>,
    position: Vec<u32>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        assert!(n <= crate::arrangement::HARD_MAX_HYPERPLANES, "too many generators");
        let mut by_degree: Vec<Vec<Bits>> = vec![Vec::new(); n + 1];
        for s in 0..(1u32 << n) {
            by_degree[s.count_ones() as usize].push(s);
        }
        let mut position = vec![0u32; 1 << n];
        for level in by_degree.iter_mut() {
            level.sort_by(|&a, &b| lex_cmp(a, b));
            for (i, &s) in level.iter().enumerate() {
                position[s as usize] = i as u32;
            }
        }
        ExteriorBasis { n, by_degree, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.by_degree.get(degree).map_or(0, |l| l.len())
    }

    pub fn monomials(&self, degree: usize) -> &[Bits] {
        self.by_degree.get(degree).map_or(&[], |l| l.as_slice())
    }

    pub fn monomial(&self, degree: usize, index: usize) -> Bits {
        self.by_degree[degree][index]
    }

    pub fn index(&self, m: Bits) -> usize {
        self.position[m as usize] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(idx: &[usize]) -> Monomial {
        Monomial::from_indices(idx)
    }

    #[test]
    fn boundary_sign_convention() {
        assert_eq!(boundary(m(&[0, 1])).to_string(), "-e0 + e1");
        let d = boundary(m(&[0, 1, 2]));
        assert_eq!(d.to_string(), "e01 - e02 + e12");
        assert!(boundary_of(&boundary(m(&[0, 1, 2, 3]))).is_zero());
    }

    #[test]
    fn wedge_anticommutes() {
        let a = GradedElement::monomial(m(&[0]));
        let b = GradedElement::monomial(m(&[1]));
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(&Rational::from_int(-1)));
        assert!(a.wedge(&a).is_zero());
        assert_eq!(wedge_monomials(m(&[0, 2]).0, m(&[1]).0), Some((-1, m(&[0, 1, 2]).0)));
    }

    #[test]
    fn pencil_generator_factors() {
        // ∂e_012 = (e1 - e2) ∧ (e0 - e2) up to sign
        let x = GradedElement::linear(&[0, 1, -1]);
        let y = GradedElement::linear(&[1, 0, -1]);
        let p = x.wedge(&y);
        let d = boundary(m(&[0, 1, 2]));
        assert!(p == d || p == d.scale(&Rational::from_int(-1)));
    }

    #[test]
    fn lex_basis() {
        let b = ExteriorBasis::new(4);
        let names: Vec<String> = b.monomials(3).iter().map(|&s| Monomial(s).to_string()).collect();
        assert_eq!(names, ["e012", "e013", "e023", "e123"]);
        assert_eq!(b.index(m(&[0, 2, 3]).0), 2);
    }
}
