//! Lower central series ranks and the tests built on them.
//!
//! `φ_1 … φ_4` have closed forms in terms of the lattice and the resolution
//! over `E`; higher ranks are only available by inverting the diagonal of the
//! resolution of the residue field over `A`, or as predictions.

use serde::Serialize;

use crate::arrangement::{binomial, IntersectionLattice};
use crate::error::{Error, Result};
use crate::exterior::GradedElement;
use crate::linalg::{EchelonSpace, SparseVec};
use crate::os_ideal::OSIdeal;
use crate::resolution::{linear_syzygies_among, LinearSyzygies};
use crate::series::IntegerSeries;

fn mobius_number(mut d: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            d /= p;
            if d % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if d > 1 {
        result = -result;
    }
    result
}

/// `φ_k(F_n) = (1/k) Σ_{d | k} μ(d) n^{k/d}`.
pub fn witt(n: u64, k: u64) -> i64 {
    assert!(k >= 1, "witt rank index starts at 1");
    let mut total: i128 = 0;
    for d in 1..=k {
        if k % d == 0 {
            total += mobius_number(d) as i128 * (n as i128).pow((k / d) as u32);
        }
    }
    (total / k as i128) as i64
}

/// `(φ_1, φ_2, φ_3) = (b_1, a_2, b_3 − C(b_1,3) + b_1 a_2 + a_3)`.
pub fn phi_123(lattice: &IntersectionLattice, ideal: &OSIdeal) -> (i64, i64, i64) {
    let b1 = lattice.b(1) as i64;
    let a2 = ideal.a(2) as i64;
    let phi3 = lattice.b(3) as i64 - binomial(b1, 3) + b1 * a2 + ideal.a(3) as i64;
    (b1, a2, phi3)
}

/// `φ_4 = C(a_2, 2) + b'_34 − δ_4`.
pub fn phi4(a2: u64, b34: u64, delta4: u64) -> i64 {
    binomial(a2 as i64, 2) + b34 as i64 - delta4 as i64
}

/// `Σ_{X ∈ L_2} φ_k(F_{μ(X)})`, the local contribution to `φ_k`.
pub fn local_sum(lattice: &IntersectionLattice, k: u64) -> i64 {
    lattice.flats_of_rank(2).iter().map(|x| witt(x.mobius as u64, k)).sum()
}

/// `∏_{k ≤ N} (1 − t^k)^{−φ_k}`, the diagonal series of a group with the
/// given ranks.
pub fn diagonal_from_phi(phi: &[i64], truncation: usize) -> IntegerSeries {
    phi.iter().enumerate().fold(IntegerSeries::one(truncation), |acc, (k, &p)| {
        acc.mul(&IntegerSeries::binomial_factor(1, k + 1, -p, truncation))
    })
}

/// Recovers `φ_1 … φ_N` from `Σ b_ii t^i = ∏ (1 − t^k)^{−φ_k}`.
pub fn lcs_from_diagonal(b_ii: &IntegerSeries) -> Result<Vec<i64>> {
    if b_ii.coeff(0) != 1 {
        return Err(Error::precondition("diagonal series must start with b_00 = 1"));
    }
    let n = b_ii.truncation();
    let target = b_ii.reciprocal()?;
    let mut partial = IntegerSeries::one(n);
    let mut phi = Vec::with_capacity(n);
    for k in 1..=n {
        let p = partial.coeff(k) - target.coeff(k);
        if p < 0 {
            return Err(Error::inconsistency(format!("series inversion produced φ_{k} = {p} < 0")));
        }
        let p = i64::try_from(p).map_err(|_| Error::inconsistency(format!("φ_{k} overflows")))?;
        partial = partial.mul(&IntegerSeries::binomial_factor(1, k, p, n));
        phi.push(p);
    }
    Ok(phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    SeriesInversion,
    Conjectural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulStatus {
    Koszul,
    NotKoszul,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiEntry {
    pub k: usize,
    pub value: i64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LCSReport {
    pub phi: Vec<PhiEntry>,
    pub is_mls: Option<bool>,
    pub is_quadratic: Option<bool>,
    pub koszul_status: KoszulStatus,
}

impl LCSReport {
    /// The first entry for `φ_k` with the given provenance.
    pub fn get(&self, k: usize, provenance: Provenance) -> Option<i64> {
        self.phi.iter().find(|e| e.k == k && e.provenance == provenance).map(|e| e.value)
    }

    /// The most trustworthy value of `φ_k`.
    pub fn best(&self, k: usize) -> Option<i64> {
        self.get(k, Provenance::ClosedForm).or_else(|| self.get(k, Provenance::SeriesInversion))
    }

    /// Values with different provenance that disagree, as `(k, a, b)`.
    pub fn disagreements(&self) -> Vec<(usize, i64, i64)> {
        let mut out = Vec::new();
        for e in &self.phi {
            if e.provenance == Provenance::ClosedForm {
                if let Some(v) = self.get(e.k, Provenance::SeriesInversion) {
                    if v != e.value {
                        out.push((e.k, e.value, v));
                    }
                }
            }
        }
        out
    }
}

/// `b'_23 = 2 Σ_{X ∈ L_2} C(μ(X)+1, 3)`.
pub fn mls_test(lattice: &IntersectionLattice, b23: u64) -> bool {
    b23 == crate::resolution::linear_strand_lower_bound(lattice, 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MlsPrediction {
    /// `(1−t)^{b_1−b_2} ∏_{X ∈ L_2} (1 − μ(X) t)`.
    pub product: IntegerSeries,
    /// `φ_1 = b_1` and `φ_k = Σ_X φ_k(F_{μ(X)})` for `k ≥ 2`.
    pub phi: Vec<i64>,
}

pub fn mls_lcs_prediction(lattice: &IntersectionLattice, k_max: usize) -> Result<MlsPrediction> {
    let b1 = lattice.b(1) as i64;
    let b2 = lattice.b(2) as i64;
    let mut product = IntegerSeries::binomial_factor(1, 1, b1 - b2, k_max);
    for x in lattice.flats_of_rank(2) {
        product = product.mul(&IntegerSeries::binomial_factor(x.mobius, 1, 1, k_max));
    }
    let mut phi = vec![b1];
    phi.extend((2..=k_max as u64).map(|k| local_sum(lattice, k)));
    phi.truncate(k_max);
    let from_sum = diagonal_from_phi(&phi, k_max).reciprocal()?;
    if from_sum != product {
        return Err(Error::inconsistency("local LCS prediction: sum and product forms disagree"));
    }
    Ok(MlsPrediction { product, phi })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticityVerdict {
    /// `C(b_1,3) − b_3 − b_1 a_2 + 2 Σ C(μ(X)+1, 3)`.
    pub criterion: i64,
    pub criterion_certifies: bool,
    pub a3_positive: bool,
}

impl QuadraticityVerdict {
    /// True when non-quadraticity is certified by either route.
    pub fn not_quadratic(&self) -> bool {
        self.criterion_certifies || self.a3_positive
    }
}

pub fn quadraticity_test(lattice: &IntersectionLattice, a2: u64, a3: u64, b3: u64) -> QuadraticityVerdict {
    let b1 = lattice.b(1) as i64;
    let local: i64 = lattice.flats_of_rank(2).iter().map(|x| binomial(x.mobius + 1, 3)).sum();
    let criterion = binomial(b1, 3) - b3 as i64 - b1 * a2 as i64 + 2 * local;
    QuadraticityVerdict { criterion, criterion_certifies: criterion > 0, a3_positive: a3 > 0 }
}

/// Not Koszul when `a_3 > 0` or `b'_24 > δ_4`; Koszul for chordal graphic
/// arrangements; otherwise undetermined.
pub fn koszul_tests(a3: u64, b24: Option<u64>, delta4: Option<u64>, chordal: Option<bool>) -> KoszulStatus {
    if a3 > 0 {
        return KoszulStatus::NotKoszul;
    }
    if let (Some(b), Some(d)) = (b24, delta4) {
        if b > d {
            return KoszulStatus::NotKoszul;
        }
    }
    if chordal == Some(true) {
        KoszulStatus::Koszul
    } else {
        KoszulStatus::Undetermined
    }
}

#[derive(Clone, Debug)]
pub struct Locality {
    pub all_local: bool,
    pub total_dim: usize,
    pub local_dim: usize,
    /// For each multiple point (as a member bitset), the quadratic
    /// generators it contributes.
    pub flats: Vec<(u32, Vec<usize>)>,
    /// Syzygies completing the local ones to a basis.
    pub witnesses: Vec<SparseVec>,
}

/// Decides whether the linear syzygies on the quadratic generators are
/// spanned by syzygies supported on a single multiple point.
pub fn syzygy_locality(ideal: &OSIdeal, lattice: &IntersectionLattice, syz: &LinearSyzygies) -> Locality {
    let matroid = lattice.matroid();
    let mut flats: Vec<(u32, Vec<usize>)> = Vec::new();
    for (p, g) in ideal.generators(2).iter().enumerate() {
        let x = matroid.closure(g.circuit);
        match flats.iter_mut().find(|(f, _)| *f == x) {
            Some((_, v)) => v.push(p),
            None => flats.push((x, vec![p])),
        }
    }
    flats.sort();
    let dim = syz.n * syz.generators;
    let mut local = EchelonSpace::new(dim);
    for (_, gens) in &flats {
        let part = linear_syzygies_among(ideal, gens);
        local.extend(part.basis.iter());
    }
    let local_dim = local.rank();
    let mut span = local.clone();
    let witnesses: Vec<SparseVec> = syz.basis.iter().filter(|v| span.insert(v)).cloned().collect();
    Locality {
        all_local: local_dim == syz.dim(),
        total_dim: syz.dim(),
        local_dim,
        flats,
        witnesses,
    }
}

/// Whether `a ∧ b` is a nonzero element of `I_2`.
pub fn verify_decomposable(a: &GradedElement, b: &GradedElement, ideal: &OSIdeal) -> Result<bool> {
    if a.degree() != 1 || b.degree() != 1 {
        return Err(Error::precondition("decomposable test takes two degree-one elements"));
    }
    let w = a.wedge(b);
    Ok(!w.is_zero() && ideal.contains(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_values() {
        for n in 0..8u64 {
            assert_eq!(witt(n, 2), binomial(n as i64, 2));
            assert_eq!(witt(n, 4) as u64, n * n * (n * n).saturating_sub(1) / 4);
        }
        assert!((2..10).all(|k| witt(1, k) == 0));
        assert_eq!(witt(2, 5), 6);
    }

    #[test]
    fn free_group_round_trip() {
        let n = 3u64;
        let diag = IntegerSeries::new((0..7).map(|i| (n as i128).pow(i)).collect(), 6);
        let phi = lcs_from_diagonal(&diag).unwrap();
        let expect: Vec<i64> = (1..=6).map(|k| witt(n, k)).collect();
        assert_eq!(phi, expect);
    }

    #[test]
    fn bad_series_is_inconsistent() {
        let s = IntegerSeries::new(vec![1, 1, 0], 2);
        assert!(matches!(lcs_from_diagonal(&s), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn koszul_rules() {
        assert_eq!(koszul_tests(1, None, None, None), KoszulStatus::NotKoszul);
        assert_eq!(koszul_tests(0, Some(15), Some(10), None), KoszulStatus::NotKoszul);
        assert_eq!(koszul_tests(0, Some(0), Some(0), Some(true)), KoszulStatus::Koszul);
        assert_eq!(koszul_tests(0, Some(0), Some(0), None), KoszulStatus::Undetermined);
    }
}
