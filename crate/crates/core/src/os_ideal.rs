//! The Orlik-Solomon ideal and its minimal generators.

use crate::arrangement::{binomial, Bits, IntersectionLattice};
use crate::error::{Error, Result};
use crate::exterior::{boundary, wedge_monomials, ExteriorBasis, GradedElement, Monomial};
use crate::linalg::{EchelonSpace, SparseVec};
use crate::rational::Rational;

/// A minimal generator `∂e_C` together with the circuit it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub circuit: Bits,
    pub element: GradedElement,
}

impl Generator {
    pub fn degree(&self) -> usize {
        self.element.degree()
    }
}

#[derive(Clone, Debug)]
pub struct OSIdeal {
    n: usize,
    cutoff: usize,
    /// Whether `I_j = E_j` for every `j > cutoff`.
    full_above: bool,
    basis: ExteriorBasis,
    generators: Vec<Vec<Generator>>,
    spaces: Vec<EchelonSpace>,
    warnings: Vec<String>,
}

/// `E_1 · S` inside `E_{d+1}` for a subspace `S ⊆ E_d`.
fn multiply_up(basis: &ExteriorBasis, space: &EchelonSpace, degree: usize) -> Vec<SparseVec> {
    let n = basis.n();
    let mut out = Vec::with_capacity(space.rank() * n);
    for row in space.rows() {
        for t in 0..n {
            let mut raw = Vec::with_capacity(row.nnz());
            for (i, c) in row.iter() {
                let m = basis.monomial(degree, *i);
                if let Some((sign, p)) = wedge_monomials(1 << t, m) {
                    raw.push((basis.index(p), if sign > 0 { c.clone() } else { -c }));
                }
            }
            let v = SparseVec::from_entries(raw);
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    out
}

impl OSIdeal {
    /// Ideal generated by the given candidates, which are tried in order and
    /// kept only when they are not already in the ideal.
    fn generated_by(
        n: usize,
        cutoff: usize,
        full_above: bool,
        candidates: &[(Bits, GradedElement)],
        warnings: Vec<String>,
    ) -> Self {
        let basis = ExteriorBasis::new(n);
        let mut spaces = vec![EchelonSpace::new(basis.dim(0))];
        let mut generators: Vec<Vec<Generator>> = vec![Vec::new()];
        for j in 1..=cutoff {
            let mut space = EchelonSpace::new(basis.dim(j));
            let lifted = multiply_up(&basis, &spaces[j - 1], j - 1);
            space.extend(lifted.iter());
            let mut gens = Vec::new();
            for (c, f) in candidates.iter().filter(|(_, f)| f.degree() == j) {
                if space.insert(&f.to_vector(&basis)) {
                    gens.push(Generator { circuit: *c, element: f.clone() });
                }
            }
            spaces.push(space);
            generators.push(gens);
        }
        OSIdeal { n, cutoff, full_above, basis, generators, spaces, warnings }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn exterior(&self) -> &ExteriorBasis {
        &self.basis
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Whether the ideal is known to contain all of `E_j` above the cutoff.
    pub fn is_full_above_cutoff(&self) -> bool {
        self.full_above
    }

    pub fn generators(&self, degree: usize) -> &[Generator] {
        self.generators.get(degree).map_or(&[], |g| g.as_slice())
    }

    pub fn all_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().flatten()
    }

    /// `a_j`, the number of minimal generators in degree `j`.
    pub fn a(&self, j: usize) -> u64 {
        self.generators(j).len() as u64
    }

    /// `(a_2, a_3, …, a_cutoff)`.
    pub fn a_vector(&self) -> Vec<u64> {
        (2..=self.cutoff).map(|j| self.a(j)).collect()
    }

    /// `dim I_j`, defined for `j ≤ cutoff`, and beyond it when the ideal is
    /// known to be everything there.
    pub fn graded_dim(&self, j: usize) -> Option<u64> {
        if j <= self.cutoff {
            Some(self.spaces[j].rank() as u64)
        } else if self.full_above {
            Some(binomial(self.n as i64, j as i64) as u64)
        } else {
            None
        }
    }

    /// The subspace `I_j ⊆ E_j`, for `j ≤ cutoff`.
    pub fn space(&self, j: usize) -> Option<&EchelonSpace> {
        self.spaces.get(j)
    }

    pub fn contains(&self, x: &GradedElement) -> bool {
        if x.is_zero() {
            return true;
        }
        match self.spaces.get(x.degree()) {
            Some(s) => s.contains(&x.to_vector(&self.basis)),
            None => self.full_above,
        }
    }
}

/// The Orlik-Solomon ideal through degree `j_max`, clamped to the rank of the
/// lattice (the ideal is all of `E_j` beyond it).
pub fn os_ideal(lattice: &IntersectionLattice, j_max: usize) -> Result<OSIdeal> {
    let n = lattice.n();
    let rank = lattice.rank();
    let mut warnings = Vec::new();
    let cutoff = if j_max > rank {
        warnings.push(format!("degree cutoff {j_max} clamped to the lattice rank {rank}"));
        rank
    } else {
        j_max
    };
    let circuits = lattice.matroid().circuits(cutoff + 1);
    let candidates: Vec<(Bits, GradedElement)> =
        circuits.into_iter().filter(|c| c.count_ones() >= 3).map(|c| (c, boundary(Monomial(c)))).collect();
    let ideal = OSIdeal::generated_by(n, cutoff, cutoff == rank, &candidates, warnings);
    if cutoff >= 1 && ideal.a(1) != 0 {
        return Err(Error::inconsistency("Orlik-Solomon ideal has a degree-one generator"));
    }
    Ok(ideal)
}

/// The ideal generated by the degree-two part only.
pub fn quadratic_closure(ideal: &OSIdeal) -> OSIdeal {
    let candidates: Vec<(Bits, GradedElement)> =
        ideal.generators(2).iter().map(|g| (g.circuit, g.element.clone())).collect();
    let full = ideal.full_above && ideal.generators.iter().skip(3).all(|g| g.is_empty());
    OSIdeal::generated_by(ideal.n, ideal.cutoff, full, &candidates, ideal.warnings.clone())
}

/// `dim A_j = C(n, j) − dim I_j`.
pub fn graded_dim_a(ideal: &OSIdeal, j: usize) -> Option<u64> {
    ideal.graded_dim(j).map(|d| binomial(ideal.n as i64, j as i64) as u64 - d)
}

/// Extends `ideal` to a higher cutoff by multiplying up (no new generators).
pub fn extend_ideal(ideal: &OSIdeal, cutoff: usize) -> OSIdeal {
    if cutoff <= ideal.cutoff {
        return ideal.clone();
    }
    let mut out = ideal.clone();
    for j in ideal.cutoff + 1..=cutoff.min(ideal.n) {
        let mut space = EchelonSpace::new(out.basis.dim(j));
        if ideal.full_above {
            for i in 0..out.basis.dim(j) {
                space.insert(&SparseVec::unit(i));
            }
        } else {
            let lifted = multiply_up(&out.basis, &out.spaces[j - 1], j - 1);
            space.extend(lifted.iter());
        }
        out.spaces.push(space);
        out.generators.push(Vec::new());
    }
    out.cutoff = cutoff.min(ideal.n);
    out.full_above = ideal.full_above || cutoff >= ideal.n;
    out
}

/// Expresses a degree-`d` element of the ideal as a combination of the
/// degree-`d` minimal generators, if that is possible.
pub fn coefficients_in_generators(ideal: &OSIdeal, x: &GradedElement) -> Option<Vec<Rational>> {
    let d = x.degree();
    let gens = ideal.generators(d);
    let mut cols: Vec<SparseVec> = gens.iter().map(|g| g.element.to_vector(&ideal.basis)).collect();
    cols.push(x.to_vector(&ideal.basis));
    let k = crate::linalg::kernel(&cols, ideal.basis.dim(d));
    let v = k.basis.iter().find(|v| !v.get(gens.len()).is_zero())?;
    let last = v.get(gens.len());
    Some((0..gens.len()).map(|p| -(v.get(p).div(&last))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{lattice_from_config, lattice_from_normals, Arrangement, Rank3Configuration};

    #[test]
    fn pencil_has_one_generator() {
        let a = Arrangement::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let l = lattice_from_normals(&a).unwrap();
        let i = os_ideal(&l, 2).unwrap();
        assert_eq!(i.a(2), 1);
        assert_eq!(i.generators(2)[0].element, boundary(Monomial::from_indices(&[0, 1, 2])));
        assert_eq!(graded_dim_a(&i, 2), Some(2));
        assert_eq!(graded_dim_a(&i, 0), Some(1));
    }

    #[test]
    fn x3_generators() {
        let cfg = Rank3Configuration::new(6, vec![vec![0, 2, 3], vec![1, 2, 4], vec![0, 1, 5]]).unwrap();
        let l = lattice_from_config(&cfg).unwrap();
        let i = os_ideal(&l, 3).unwrap();
        assert_eq!(i.a_vector(), vec![3, 1]);
        let q = quadratic_closure(&i);
        assert_eq!(q.a_vector(), vec![3, 0]);
        assert!(q.graded_dim(3).unwrap() <= i.graded_dim(3).unwrap());
    }

    #[test]
    fn boolean_ideal_is_zero() {
        let a = Arrangement::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let i = os_ideal(&lattice_from_normals(&a).unwrap(), 5).unwrap();
        assert_eq!(i.cutoff(), 3);
        assert!(!i.warnings().is_empty());
        assert!(i.a_vector().iter().all(|&x| x == 0));
    }
}
