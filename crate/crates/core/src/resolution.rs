//! Minimal graded free resolutions over finite-dimensional graded algebras.
//!
//! Both rings that matter here, the exterior algebra `E` and an Orlik-Solomon
//! algebra `A = E/I`, are finite dimensional in each degree and generated in
//! degree one. A minimal resolution of a cyclic module `R/J` is built one
//! homological step at a time: for every internal degree `j` the differential
//! is expanded into an exact matrix, its kernel is computed, and the minimal
//! generators in degree `j` are a complement of `R_1 · ker_{j-1}` inside
//! `ker_j`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{binomial, Bits, IntersectionLattice};
use crate::error::{Error, Result};
use crate::exterior::{wedge_monomials, ExteriorBasis, GradedElement, Monomial};
use crate::linalg::{self, EchelonSpace, SparseVec};
use crate::os_ideal::{extend_ideal, OSIdeal};
use crate::rational::Rational;

/// Default bound on the number of columns of any single degree matrix.
pub const DEFAULT_COLUMN_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RingTag {
    #[serde(rename = "E")]
    Exterior,
    #[serde(rename = "A")]
    OrlikSolomon,
}

/// A graded algebra generated in degree one with a chosen basis in each
/// degree.
pub trait GradedAlgebra: Sync {
    fn tag(&self) -> RingTag;
    fn ngens(&self) -> usize;
    fn dim(&self, degree: usize) -> usize;
    /// The exterior monomial labelling basis element `index` of `degree`.
    fn label(&self, degree: usize, index: usize) -> Bits;
    /// Appends `c · (x · y)` to `out`, where `x` is basis element `x` of degree
    /// `a` and `y` basis element `y` of degree `b`.
    fn mul_into(&self, a: usize, x: usize, b: usize, y: usize, c: &Rational, out: &mut Vec<(usize, Rational)>);
}

pub struct ExteriorAlgebra {
    basis: ExteriorBasis,
}

impl ExteriorAlgebra {
    pub fn new(n: usize) -> Self {
        ExteriorAlgebra { basis: ExteriorBasis::new(n) }
    }

    pub fn basis(&self) -> &ExteriorBasis {
        &self.basis
    }
}

impl GradedAlgebra for ExteriorAlgebra {
    fn tag(&self) -> RingTag {
        RingTag::Exterior
    }

    fn ngens(&self) -> usize {
        self.basis.n()
    }

    fn dim(&self, degree: usize) -> usize {
        self.basis.dim(degree)
    }

    fn label(&self, degree: usize, index: usize) -> Bits {
        self.basis.monomial(degree, index)
    }

    fn mul_into(&self, a: usize, x: usize, b: usize, y: usize, c: &Rational, out: &mut Vec<(usize, Rational)>) {
        let (s, t) = (self.basis.monomial(a, x), self.basis.monomial(b, y));
        if let Some((sign, p)) = wedge_monomials(s, t) {
            out.push((self.basis.index(p), if sign > 0 { c.clone() } else { -c }));
        }
    }
}

/// `E/I` with the standard monomials (non-pivots of `I_k`) as basis.
pub struct QuotientAlgebra {
    ebasis: ExteriorBasis,
    standard: Vec<Vec<Bits>>,
    normal_form: Vec<Vec<SparseVec>>,
}

impl QuotientAlgebra {
    /// Builds the quotient through degree `top`.
    pub fn new(ideal: &OSIdeal, top: usize) -> Result<Self> {
        let ideal = if top > ideal.cutoff() && !ideal.is_full_above_cutoff() {
            extend_ideal(ideal, top)
        } else {
            ideal.clone()
        };
        let ebasis = ideal.exterior().clone();
        let mut standard = Vec::new();
        let mut normal_form = Vec::new();
        for k in 0..=top {
            let edim = ebasis.dim(k);
            match ideal.space(k) {
                Some(space) if k <= ideal.cutoff() => {
                    let mut position = vec![usize::MAX; edim];
                    let mut std = Vec::new();
                    for (e, pos) in position.iter_mut().enumerate() {
                        if !space.is_pivot(e) {
                            *pos = std.len();
                            std.push(ebasis.monomial(k, e));
                        }
                    }
                    let nf: Vec<SparseVec> = (0..edim)
                        .map(|e| {
                            let r = space.reduce(&SparseVec::unit(e));
                            SparseVec::from_sorted(r.into_entries().into_iter().map(|(i, c)| (position[i], c)).collect())
                        })
                        .collect();
                    standard.push(std);
                    normal_form.push(nf);
                }
                _ => {
                    if !ideal.is_full_above_cutoff() {
                        return Err(Error::inconsistency(format!("quotient requested beyond known degree {k}")));
                    }
                    standard.push(Vec::new());
                    normal_form.push(vec![SparseVec::new(); edim]);
                }
            }
        }
        Ok(QuotientAlgebra { ebasis, standard, normal_form })
    }

    pub fn top(&self) -> usize {
        self.standard.len() - 1
    }
}

impl GradedAlgebra for QuotientAlgebra {
    fn tag(&self) -> RingTag {
        RingTag::OrlikSolomon
    }

    fn ngens(&self) -> usize {
        self.dim(1)
    }

    fn dim(&self, degree: usize) -> usize {
        self.standard.get(degree).map_or(0, |s| s.len())
    }

    fn label(&self, degree: usize, index: usize) -> Bits {
        self.standard[degree][index]
    }

    fn mul_into(&self, a: usize, x: usize, b: usize, y: usize, c: &Rational, out: &mut Vec<(usize, Rational)>) {
        let d = a + b;
        if d >= self.standard.len() {
            return;
        }
        let (s, t) = (self.standard[a][x], self.standard[b][y]);
        if let Some((sign, p)) = wedge_monomials(s, t) {
            let cc = if sign > 0 { c.clone() } else { -c };
            for (i, v) in self.normal_form[d][self.ebasis.index(p)].iter() {
                out.push((*i, &cc * v));
            }
        }
    }
}

/// `⊕ R(−d)` over the listed generator degrees (sorted ascending).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedFreeModule {
    pub ring: RingTag,
    pub degrees: Vec<usize>,
}

impl GradedFreeModule {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

/// A degree-preserving map of free modules. `columns[g]` lists the nonzero
/// entries `(r, x)` of the image of source generator `g`, with `x` in the ring
/// basis of degree `deg(g) − deg(r)`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub columns: Vec<Vec<(usize, SparseVec)>>,
}

impl GradedMap {
    /// The entry `(r, g)` as an exterior element written in the ring's
    /// standard monomials.
    pub fn entry<R: GradedAlgebra>(&self, ring: &R, r: usize, g: usize) -> GradedElement {
        let d = self.source.degrees[g] - self.target.degrees[r];
        match self.columns[g].iter().find(|(t, _)| *t == r) {
            Some((_, x)) => GradedElement::from_terms(d, x.iter().map(|(i, c)| (Monomial(ring.label(d, *i)), c.clone()))),
            None => GradedElement::zero(d),
        }
    }

    /// Whether no entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(g, col)| col.iter().all(|(r, x)| x.is_zero() || self.source.degrees[g] > self.target.degrees[*r]))
    }
}

/// Graded Betti numbers `b_{ij}` with explicit truncation: `None` means not
/// computed, as opposed to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub ring: RingTag,
    pub i_max: usize,
    pub j_max: usize,
    values: Vec<Vec<Option<u64>>>,
}

impl BettiTable {
    pub fn new(ring: RingTag, i_max: usize, j_max: usize) -> Self {
        BettiTable { ring, i_max, j_max, values: vec![vec![None; j_max + 1]; i_max + 1] }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        self.values.get(i).and_then(|row| row.get(j)).copied().flatten()
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.values[i][j] = Some(v);
    }

    /// Shorthand for a value the caller knows was computed.
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.get(i, j).unwrap_or_else(|| panic!("b_{{{i},{j}}} was not computed"))
    }

    pub fn is_computed(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some()
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub table: BettiTable,
    pub modules: Vec<GradedFreeModule>,
    /// `maps[i-1]` is `d_i: F_i → F_{i-1}`. The last homological step is
    /// only counted, so there are `i_max − 1` maps unless requested otherwise.
    pub maps: Vec<GradedMap>,
}

#[derive(Clone, Copy, Debug)]
pub struct ResolutionOptions {
    pub column_cap: usize,
    /// Compute the differential out of the last module as well.
    pub last_map: bool,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions { column_cap: DEFAULT_COLUMN_CAP, last_map: false }
    }
}

struct Layout {
    blocks: Vec<(usize, usize, usize)>,
    offset: Vec<Option<usize>>,
    total: usize,
}

fn layout<R: GradedAlgebra>(ring: &R, degrees: &[usize], j: usize) -> Layout {
    let mut blocks = Vec::new();
    let mut offset = vec![None; degrees.len()];
    let mut total = 0;
    for (g, &d) in degrees.iter().enumerate() {
        if d <= j {
            let len = ring.dim(j - d);
            if len > 0 {
                offset[g] = Some(total);
                blocks.push((g, total, len));
                total += len;
            }
        }
    }
    Layout { blocks, offset, total }
}

/// Splits a vector in the degree-`j` layout into per-generator pieces.
fn split(v: &SparseVec, lay: &Layout) -> Vec<(usize, SparseVec)> {
    let mut out: Vec<(usize, SparseVec)> = Vec::new();
    let mut b = 0;
    let mut cur: Vec<(usize, Rational)> = Vec::new();
    for (i, c) in v.iter() {
        while i >= &(lay.blocks[b].1 + lay.blocks[b].2) {
            if !cur.is_empty() {
                out.push((lay.blocks[b].0, SparseVec::from_sorted(std::mem::take(&mut cur))));
            }
            b += 1;
        }
        cur.push((i - lay.blocks[b].1, c.clone()));
    }
    if !cur.is_empty() {
        out.push((lay.blocks[b].0, SparseVec::from_sorted(cur)));
    }
    out
}

/// Columns of `d` in internal degree `j`.
fn degree_matrix<R: GradedAlgebra>(ring: &R, d: &GradedMap, j: usize) -> (Vec<SparseVec>, usize) {
    let src = layout(ring, &d.source.degrees, j);
    let tgt = layout(ring, &d.target.degrees, j);
    let mut cols = Vec::with_capacity(src.total);
    let mut raw = Vec::new();
    for &(g, _, len) in &src.blocks {
        let a = j - d.source.degrees[g];
        for m in 0..len {
            raw.clear();
            for (r, x) in &d.columns[g] {
                let b = d.source.degrees[g] - d.target.degrees[*r];
                if let Some(off) = tgt.offset[*r] {
                    let start = raw.len();
                    for (y, c) in x.iter() {
                        ring.mul_into(a, m, b, *y, c, &mut raw);
                    }
                    for e in &mut raw[start..] {
                        e.0 += off;
                    }
                }
            }
            cols.push(SparseVec::from_entries(std::mem::take(&mut raw)));
        }
    }
    (cols, tgt.total)
}

/// `R_1 · K` for vectors `K` in the degree-`j−1` layout, written in the
/// degree-`j` layout.
fn multiply_by_linear<R: GradedAlgebra>(ring: &R, degrees: &[usize], kernel: &[SparseVec], j: usize) -> Vec<SparseVec> {
    let lo = layout(ring, degrees, j - 1);
    let hi = layout(ring, degrees, j);
    let n = ring.dim(1);
    let mut out = Vec::with_capacity(kernel.len() * n);
    for v in kernel {
        let pieces = split(v, &lo);
        for t in 0..n {
            let mut raw = Vec::new();
            for (g, x) in &pieces {
                let a = j - 1 - degrees[*g];
                let Some(off) = hi.offset[*g] else { continue };
                let start = raw.len();
                for (m, c) in x.iter() {
                    ring.mul_into(1, t, a, *m, c, &mut raw);
                }
                for e in &mut raw[start..] {
                    e.0 += off;
                }
            }
            let w = SparseVec::from_entries(raw);
            if !w.is_zero() {
                out.push(w);
            }
        }
    }
    out
}

enum DegreeKernel {
    Basis(Vec<SparseVec>),
    Dim(usize),
}

/// Minimal free resolution of `R/J` where `J` is generated by `relations`
/// (degree, element of `R_degree`), which must be minimal and sorted by degree.
pub fn resolve_cyclic<R: GradedAlgebra>(
    ring: &R,
    relations: &[(usize, SparseVec)],
    i_max: usize,
    j_max: usize,
    opts: ResolutionOptions,
) -> Result<Resolution> {
    if i_max < 1 {
        return Err(Error::precondition("i_max must be at least 1"));
    }
    let tag = ring.tag();
    let mut table = BettiTable::new(tag, i_max, j_max);
    for j in 0..=j_max {
        table.set(0, j, (j == 0) as u64);
    }
    let f0 = GradedFreeModule { ring: tag, degrees: vec![0] };
    let f1 = GradedFreeModule { ring: tag, degrees: relations.iter().map(|r| r.0).collect() };
    if f1.degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::precondition("relations must be sorted by degree"));
    }
    for j in 0..=j_max {
        table.set(1, j, f1.degrees.iter().filter(|&&d| d == j).count() as u64);
    }
    let d1 = GradedMap {
        source: f1.clone(),
        target: f0.clone(),
        columns: relations.iter().map(|(_, v)| vec![(0, v.clone())]).collect(),
    };
    let mut modules = vec![f0, f1];
    let mut maps = vec![d1];

    for i in 1..i_max {
        let last = i + 1 == i_max && !opts.last_map;
        let d = &maps[i - 1];
        let degrees = d.source.degrees.clone();
        let lowest = degrees.first().copied().unwrap_or(usize::MAX);
        for j in 0..=j_max {
            let cols = layout(ring, &degrees, j).total;
            if cols > opts.column_cap {
                return Err(Error::resource(
                    format!("resolution step {i}, degree {j}"),
                    format!("{cols} columns exceeds the cap of {}", opts.column_cap),
                ));
            }
        }
        let kernels: Vec<DegreeKernel> = (0..=j_max)
            .into_par_iter()
            .map(|j| {
                if j <= lowest {
                    return DegreeKernel::Basis(Vec::new());
                }
                let (cols, nrows) = degree_matrix(ring, d, j);
                if last && j == j_max {
                    DegreeKernel::Dim(cols.len() - linalg::rank(&cols, nrows))
                } else {
                    DegreeKernel::Basis(linalg::kernel(&cols, nrows).basis)
                }
            })
            .collect();

        let mut new_degrees = Vec::new();
        let mut new_columns = Vec::new();
        for j in 0..=j_max {
            let lay = layout(ring, &degrees, j);
            let mut space = EchelonSpace::new(lay.total);
            if j >= 1 {
                if let DegreeKernel::Basis(prev) = &kernels[j - 1] {
                    let lifted = multiply_by_linear(ring, &degrees, prev, j);
                    space.extend(lifted.iter());
                }
            }
            let count = match &kernels[j] {
                DegreeKernel::Dim(k) => k - space.rank(),
                DegreeKernel::Basis(basis) => {
                    let mut count = 0;
                    for v in basis {
                        if space.insert(v) {
                            let pieces = split(v, &lay);
                            if pieces.iter().any(|(g, _)| degrees[*g] == j) {
                                return Err(Error::inconsistency(format!(
                                    "non-minimal syzygy at step {i}, degree {j}"
                                )));
                            }
                            new_degrees.push(j);
                            new_columns.push(pieces);
                            count += 1;
                        }
                    }
                    count
                }
            };
            table.set(i + 1, j, count as u64);
        }
        let module = GradedFreeModule { ring: tag, degrees: new_degrees };
        modules.push(module.clone());
        if !last {
            maps.push(GradedMap { source: module, target: modules[i].clone(), columns: new_columns });
        }
    }
    Ok(Resolution { table, modules, maps })
}

fn ideal_relations(ideal: &OSIdeal) -> Vec<(usize, SparseVec)> {
    let basis = ideal.exterior();
    ideal.all_generators().map(|g| (g.degree(), g.element.to_vector(basis))).collect()
}

/// Minimal resolution of `A = E/I` over `E`; `b'_{ij} = dim Tor_i^E(A,k)_j`.
pub fn resolve_over_e(ideal: &OSIdeal, i_max: usize, j_max: usize) -> Result<Resolution> {
    resolve_over_e_with(ideal, i_max, j_max, ResolutionOptions::default())
}

pub fn resolve_over_e_with(ideal: &OSIdeal, i_max: usize, j_max: usize, opts: ResolutionOptions) -> Result<Resolution> {
    if j_max < 2 {
        return Err(Error::precondition("j_max must be at least 2"));
    }
    let ring = ExteriorAlgebra::new(ideal.n());
    resolve_cyclic(&ring, &ideal_relations(ideal), i_max, j_max, opts)
}

/// Minimal resolution of the residue field over `E` on `n` generators.
pub fn resolve_k_over_e(n: usize, i_max: usize, j_max: usize) -> Result<Resolution> {
    let ring = ExteriorAlgebra::new(n);
    let rel: Vec<(usize, SparseVec)> = (0..n).map(|t| (1, SparseVec::unit(t))).collect();
    resolve_cyclic(&ring, &rel, i_max, j_max, ResolutionOptions::default())
}

/// Minimal resolution of the residue field over `A = E/I`;
/// `b_{ij} = dim Tor_i^A(k,k)_j`.
pub fn resolve_k_over_a(ideal: &OSIdeal, i_max: usize, j_max: usize) -> Result<BettiTable> {
    resolve_k_over_a_with(ideal, i_max, j_max, ResolutionOptions::default()).map(|r| r.table)
}

pub fn resolve_k_over_a_with(ideal: &OSIdeal, i_max: usize, j_max: usize, opts: ResolutionOptions) -> Result<Resolution> {
    let ring = QuotientAlgebra::new(ideal, j_max.max(1))?;
    let n = ring.dim(1);
    let rel: Vec<(usize, SparseVec)> = (0..n).map(|t| (1, SparseVec::unit(t))).collect();
    resolve_cyclic(&ring, &rel, i_max, j_max, opts)
}

/// Checks that consecutive differentials compose to zero.
pub fn compose_is_zero<R: GradedAlgebra>(ring: &R, upper: &GradedMap, lower: &GradedMap, j_max: usize) -> bool {
    (0..=j_max).all(|j| {
        let (top, _) = degree_matrix(ring, upper, j);
        let (bottom, _) = degree_matrix(ring, lower, j);
        top.iter().all(|c| linalg::apply(&bottom, c).is_zero())
    })
}

/// One coefficient of an identity between truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub degree: usize,
    /// `None` when the truncation is too shallow to decide this coefficient.
    pub holds: Option<bool>,
    pub lhs: Option<i64>,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub coefficients: Vec<CoefficientCheck>,
}

impl IdentityCheck {
    /// True when every conclusive coefficient holds.
    pub fn holds(&self) -> bool {
        self.coefficients.iter().all(|c| c.holds != Some(false))
    }

    pub fn conclusive_through(&self) -> Option<usize> {
        self.coefficients.iter().take_while(|c| c.holds.is_some()).last().map(|c| c.degree)
    }
}

/// `(Σ_{i,j} (−1)^i b'_{ij} t^j)(1+t)^n = Σ b_i t^i`, coefficient by
/// coefficient through `j_max`.
pub fn hilbert_identity_check(table: &BettiTable, lattice: &IntersectionLattice) -> IdentityCheck {
    let n = lattice.n() as i64;
    let conclusive = table.j_max.min(table.i_max + 1);
    let coefficients = (0..=table.j_max)
        .map(|d| {
            let rhs = lattice.b(d) as i64;
            if d > conclusive {
                return CoefficientCheck { degree: d, holds: None, lhs: None, rhs };
            }
            let mut lhs = 0i64;
            for i in 0..=table.i_max.min(d) {
                for j in 0..=d {
                    let b = table.get(i, j).unwrap_or(0) as i64;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    lhs += sign * b * binomial(n, (d - j) as i64);
                }
            }
            CoefficientCheck { degree: d, holds: Some(lhs == rhs), lhs: Some(lhs), rhs }
        })
        .collect();
    IdentityCheck { coefficients }
}

/// `(Σ_{i,j} (−1)^i b_{ij} t^j) · Σ b_i t^i = 1` for the resolution of the
/// residue field over `A`.
pub fn euler_identity_check(table: &BettiTable, lattice: &IntersectionLattice) -> IdentityCheck {
    let conclusive = table.j_max.min(table.i_max);
    let coefficients = (0..=table.j_max)
        .map(|d| {
            let rhs = (d == 0) as i64;
            if d > conclusive {
                return CoefficientCheck { degree: d, holds: None, lhs: None, rhs };
            }
            let mut lhs = 0i64;
            for i in 0..=d.min(table.i_max) {
                for j in i..=d {
                    let b = table.get(i, j).unwrap_or(0) as i64;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    lhs += sign * b * lattice.b(d - j) as i64;
                }
            }
            CoefficientCheck { degree: d, holds: Some(lhs == rhs), lhs: Some(lhs), rhs }
        })
        .collect();
    IdentityCheck { coefficients }
}

/// `i · Σ_{X ∈ L_2} C(μ(X)+i−1, i+1)`.
pub fn linear_strand_lower_bound(lattice: &IntersectionLattice, i: usize) -> u64 {
    let i = i as i64;
    lattice.flats_of_rank(2).iter().map(|x| (i * binomial(x.mobius + i - 1, i + 1)) as u64).sum()
}

/// `Σ_{X ≠ Y ∈ L_2} C(μ(X),2) · C(μ(Y),2)` over unordered pairs.
pub fn delta4_upper_bound(lattice: &IntersectionLattice) -> u64 {
    let w: Vec<i64> = lattice.flats_of_rank(2).iter().map(|x| binomial(x.mobius, 2)).collect();
    let total: i64 = w.iter().sum();
    let squares: i64 = w.iter().map(|x| x * x).sum();
    ((total * total - squares) / 2) as u64
}

/// `b_44 = C(b_1+3,4) + (C(b_1+1,2)+a_2)a_2 + b'_34 + b_1 b'_23 − δ_4`.
pub fn b44_formula(a2: u64, b1: u64, b23: u64, b34: u64, delta4: u64) -> i64 {
    let (a2, b1) = (a2 as i64, b1 as i64);
    binomial(b1 + 3, 4) + (binomial(b1 + 1, 2) + a2) * a2 + b34 as i64 + b1 * b23 as i64 - delta4 as i64
}

/// `b_34 = (b'_24 − δ_4) + b_1 a_3`.
pub fn b34_formula(b24: u64, delta4: u64, b1: u64, a3: u64) -> i64 {
    b24 as i64 - delta4 as i64 + (b1 * a3) as i64
}

/// The degree-three syzygies on the quadratic generators `f_1, …, f_a` of
/// the ideal, as vectors in `E_1^a` with coordinate `p·n + t` for `e_t ε_p`.
#[derive(Clone, Debug)]
pub struct LinearSyzygies {
    pub n: usize,
    pub generators: usize,
    pub basis: Vec<SparseVec>,
}

impl LinearSyzygies {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Generators with a nonzero coefficient in `v`.
    pub fn support(&self, v: &SparseVec) -> Vec<usize> {
        let mut s: Vec<usize> = v.iter().map(|(i, _)| i / self.n).collect();
        s.dedup();
        s
    }

    /// The coefficient of generator `p` in `v`, a degree-one element.
    pub fn component(&self, v: &SparseVec, p: usize) -> GradedElement {
        GradedElement::from_terms(
            1,
            v.iter().filter(|(i, _)| i / self.n == p).map(|(i, c)| (Monomial(1 << (i % self.n)), c.clone())),
        )
    }

    /// Packs degree-one coefficients into a vector of `E_1^a`.
    pub fn pack(&self, components: &[(usize, GradedElement)]) -> SparseVec {
        SparseVec::from_entries(
            components
                .iter()
                .flat_map(|(p, x)| x.terms().iter().map(move |(m, c)| (p * self.n + m.indices()[0], c.clone())))
                .collect(),
        )
    }
}

fn linear_syzygy_columns(ideal: &OSIdeal, gens: &[usize]) -> (Vec<SparseVec>, usize) {
    let basis = ideal.exterior();
    let n = ideal.n();
    let all = ideal.generators(2);
    let mut cols = Vec::with_capacity(gens.len() * n);
    for &p in gens {
        let f = all[p].element.to_vector(basis);
        for t in 0..n {
            let mut raw = Vec::new();
            for (i, c) in f.iter() {
                if let Some((sign, m)) = wedge_monomials(1 << t, basis.monomial(2, *i)) {
                    raw.push((basis.index(m), if sign > 0 { c.clone() } else { -c }));
                }
            }
            cols.push(SparseVec::from_entries(raw));
        }
    }
    (cols, basis.dim(3))
}

pub fn linear_syzygies(ideal: &OSIdeal) -> LinearSyzygies {
    linear_syzygies_among(ideal, &(0..ideal.a(2) as usize).collect::<Vec<_>>())
}

/// Syzygies among a subset of the quadratic generators, written in the
/// coordinates of the full list.
pub fn linear_syzygies_among(ideal: &OSIdeal, gens: &[usize]) -> LinearSyzygies {
    let n = ideal.n();
    let (cols, rows) = linear_syzygy_columns(ideal, gens);
    let k = linalg::kernel(&cols, rows);
    let basis = k
        .basis
        .into_iter()
        .map(|v| SparseVec::from_entries(v.into_entries().into_iter().map(|(i, c)| (gens[i / n] * n + i % n, c)).collect()))
        .collect();
    LinearSyzygies { n, generators: ideal.a(2) as usize, basis }
}

/// Dimension of the span of the Koszul syzygies `f_q ε_p − f_p ε_q` modulo
/// `E_1 · (linear syzygies)`, inside the degree-four syzygies on the
/// quadratic generators.
pub fn delta4(ideal: &OSIdeal) -> u64 {
    let syz = linear_syzygies(ideal);
    delta4_from(ideal, &syz)
}

pub fn delta4_from(ideal: &OSIdeal, syz: &LinearSyzygies) -> u64 {
    let basis = ideal.exterior();
    let n = ideal.n();
    let a = syz.generators;
    let block = basis.dim(2);
    let mut space = EchelonSpace::new(a * block);
    let mut lifted = Vec::with_capacity(syz.dim() * n);
    for v in &syz.basis {
        for u in 0..n {
            let mut raw = Vec::new();
            for (i, c) in v.iter() {
                let (p, t) = (i / n, i % n);
                if let Some((sign, m)) = wedge_monomials(1 << u, 1 << t) {
                    raw.push((p * block + basis.index(m), if sign > 0 { c.clone() } else { -c }));
                }
            }
            let w = SparseVec::from_entries(raw);
            if !w.is_zero() {
                lifted.push(w);
            }
        }
    }
    space.extend(lifted.iter());
    let base = space.rank();
    let gens: Vec<SparseVec> = ideal.generators(2).iter().map(|g| g.element.to_vector(basis)).collect();
    let mut koszul = Vec::new();
    for p in 0..a {
        for q in p + 1..a {
            let mut raw: Vec<(usize, Rational)> = gens[q].iter().map(|(i, c)| (p * block + i, c.clone())).collect();
            raw.extend(gens[p].iter().map(|(i, c)| (q * block + i, -c)));
            koszul.push(SparseVec::from_entries(raw));
        }
    }
    space.extend(koszul.iter());
    (space.rank() - base) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{lattice_from_normals, Arrangement};
    use crate::os_ideal::os_ideal;

    fn pencil(m: usize) -> OSIdeal {
        let mut rows: Vec<Vec<i64>> = vec![vec![0, 1]];
        rows.extend((0..m - 1).map(|i| vec![1, i as i64]));
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let l = lattice_from_normals(&Arrangement::from_integers(&refs).unwrap()).unwrap();
        os_ideal(&l, 2).unwrap()
    }

    #[test]
    fn pencil3_linear_strand() {
        let res = resolve_over_e(&pencil(3), 4, 6).unwrap();
        for i in 1..=4 {
            assert_eq!(res.table.at(i, i + 1), i as u64);
            for j in 0..=6 {
                if j != i + 1 {
                    assert_eq!(res.table.at(i, j), 0, "b'_{i},{j}");
                }
            }
        }
        let ring = ExteriorAlgebra::new(3);
        for w in res.maps.windows(2) {
            assert!(compose_is_zero(&ring, &w[1], &w[0], 6));
        }
        assert!(res.maps.iter().all(|m| m.is_minimal()));
    }

    #[test]
    fn residue_field_over_exterior() {
        let res = resolve_k_over_e(3, 4, 4).unwrap();
        for j in 1..=4 {
            assert_eq!(res.table.at(j, j), binomial(3 + j as i64 - 1, j as i64) as u64);
        }
    }

    #[test]
    fn pencil3_diagonal_over_a() {
        let t = resolve_k_over_a(&pencil(3), 4, 4).unwrap();
        for i in 0..=4 {
            assert_eq!(t.at(i, i), (1u64 << (i + 1)) - 1);
        }
    }

    #[test]
    fn formulas() {
        assert_eq!(b44_formula(5, 7, 10, 15, 10), 450);
        assert_eq!(b44_formula(3, 6, 6, 9, 3), 240);
        assert_eq!(b34_formula(15, 10, 7, 0), 5);
    }
}
