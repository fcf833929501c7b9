//! Arrangements in their input forms and the intersection lattice.
//!
//! Every input form is reduced to a simple matroid stored as a rank table over
//! all subsets of hyperplanes. The lattice, its Möbius function, the Whitney
//! numbers and the circuits used by the Orlik-Solomon ideal are all read off
//! that table, so the three input forms share one code path.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default bound on the number of hyperplanes for lattice enumeration.
pub const DEFAULT_MAX_HYPERPLANES: usize = 16;
/// Hard ceiling: the rank table has `2^n` entries.
pub const HARD_MAX_HYPERPLANES: usize = 22;

pub type Bits = u32;

pub fn bits_of(indices: &[usize]) -> Bits {
    indices.iter().fold(0, |acc, &i| acc | (1 << i))
}

pub fn indices_of(bits: Bits) -> Vec<usize> {
    (0..32).filter(|i| bits >> i & 1 == 1).collect()
}

/// Lexicographic comparison of two index sets given as bitsets.
pub fn lex_cmp(a: Bits, b: Bits) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (mut x, mut y) = (a, b);
    loop {
        match (x == 0, y == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
        if i != j {
            return i.cmp(&j);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

/// A central arrangement given by the normal vectors of its hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    normals: Vec<Vec<Rational>>,
    ambient: usize,
    rank: usize,
}

impl Arrangement {
    /// Validates simplicity (no zero rows, no proportional rows).
    pub fn new(normals: Vec<Vec<Rational>>) -> Result<Self> {
        let ambient = normals.first().map_or(0, |r| r.len());
        if normals.iter().any(|r| r.len() != ambient) {
            return Err(Error::invalid("normal vectors have different lengths"));
        }
        for (i, row) in normals.iter().enumerate() {
            if row.iter().all(|x| x.is_zero()) {
                return Err(Error::invalid(format!("normal {i} is the zero vector")));
            }
        }
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if matrix_rank(&[normals[i].clone(), normals[j].clone()]) < 2 {
                    return Err(Error::invalid(format!(
                        "normals {i} and {j} are proportional (arrangement is not simple)"
                    )));
                }
            }
        }
        let rank = matrix_rank(&normals);
        Ok(Arrangement { normals, ambient, rank })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Rank of the normal matrix: the ℓ of an essential arrangement.
pub fn essential_rank(arr: &Arrangement) -> usize {
    arr.rank()
}

/// Dense row reduction; returns the rank.
pub fn matrix_rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    for row in rows {
        if let Some(b) = reduce_against(&basis, row.clone()) {
            basis.push(b);
        }
    }
    basis.len()
}

fn reduce_against(basis: &[(usize, Vec<Rational>)], mut v: Vec<Rational>) -> Option<(usize, Vec<Rational>)> {
    for (p, b) in basis {
        if !v[*p].is_zero() {
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.sub_mul(&f, y);
                }
            }
        }
    }
    let p = v.iter().position(|x| !x.is_zero())?;
    let inv = v[p].recip();
    for x in v.iter_mut() {
        *x = &*x * &inv;
    }
    Some((p, v))
}

/// A rank-3 matroid given by its multiple points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank3Configuration {
    n: usize,
    flats: Vec<Vec<usize>>,
}

impl Rank3Configuration {
    pub fn new(n: usize, flats: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(flats.len());
        for f in flats {
            let mut f = f;
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("flat {f:?} repeats an index")));
            }
            if f.len() < 3 {
                return Err(Error::invalid(format!("flat {f:?} has fewer than three members")));
            }
            if let Some(&bad) = f.iter().find(|&&i| i >= n) {
                return Err(Error::invalid(format!("flat member {bad} out of range for n = {n}")));
            }
            normalized.push(f);
        }
        for i in 0..normalized.len() {
            for j in i + 1..normalized.len() {
                let shared = normalized[i].iter().filter(|x| normalized[j].contains(x)).count();
                if shared >= 2 {
                    return Err(Error::invalid(format!(
                        "flats {:?} and {:?} share {shared} members",
                        normalized[i], normalized[j]
                    )));
                }
            }
        }
        normalized.sort();
        Ok(Rank3Configuration { n, flats: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[Vec<usize>] {
        &self.flats
    }
}

/// A simple matroid on at most [`HARD_MAX_HYPERPLANES`] elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    ranks: Vec<u8>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_MAX_HYPERPLANES);
    if n > cap {
        return Err(Error::resource("lattice enumeration", format!("{n} hyperplanes exceeds the cap of {cap}")));
    }
    Ok(())
}

impl Matroid {
    pub fn from_vectors(vectors: &[Vec<Rational>], cap: usize) -> Result<Self> {
        let n = vectors.len();
        check_cap(n, cap)?;
        let mut ranks = vec![0u8; 1 << n];
        fn rec(vs: &[Vec<Rational>], mask: usize, start: usize, basis: &[(usize, Vec<Rational>)], ranks: &mut [u8]) {
            for i in start..vs.len() {
                let m = mask | (1 << i);
                match reduce_against(basis, vs[i].clone()) {
                    Some(b) => {
                        let mut next = basis.to_vec();
                        next.push(b);
                        ranks[m] = next.len() as u8;
                        rec(vs, m, i + 1, &next, ranks);
                    }
                    None => {
                        ranks[m] = basis.len() as u8;
                        rec(vs, m, i + 1, basis, ranks);
                    }
                }
            }
        }
        rec(vectors, 0, 0, &[], &mut ranks);
        Ok(Matroid { n, ranks })
    }

    pub fn from_config(cfg: &Rank3Configuration, cap: usize) -> Result<Self> {
        let n = cfg.n;
        check_cap(n, cap)?;
        let flat_bits: Vec<Bits> = cfg.flats.iter().map(|f| bits_of(f)).collect();
        let total = if n <= 2 || flat_bits.iter().any(|&f| f.count_ones() as usize == n) { n.min(2) } else { 3 };
        let mut ranks = vec![0u8; 1 << n];
        for (s, r) in ranks.iter_mut().enumerate() {
            let s = s as Bits;
            let size = s.count_ones() as usize;
            *r = if size <= 2 {
                size as u8
            } else if flat_bits.iter().any(|&f| s & !f == 0) {
                2
            } else {
                3
            }
            .min(total as u8);
        }
        Ok(Matroid { n, ranks })
    }

    /// Cycle matroid of a graph given by its edge list.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        let n = edges.len();
        check_cap(n, cap)?;
        let mut ranks = vec![0u8; 1 << n];
        let mut parent = vec![0usize; vertices];
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (s, r) in ranks.iter_mut().enumerate() {
            for (v, p) in parent.iter_mut().enumerate() {
                *p = v;
            }
            let mut rank = 0;
            for (e, &(u, v)) in edges.iter().enumerate() {
                if s >> e & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a != b {
                        parent[a] = b;
                        rank += 1;
                    }
                }
            }
            *r = rank;
        }
        Ok(Matroid { n, ranks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank_of(&self, s: Bits) -> usize {
        self.ranks[s as usize] as usize
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.full())
    }

    pub fn full(&self) -> Bits {
        if self.n == 0 {
            0
        } else {
            (1u64.wrapping_shl(self.n as u32) - 1) as Bits
        }
    }

    pub fn closure(&self, s: Bits) -> Bits {
        let r = self.rank_of(s);
        (0..self.n).filter(|&h| self.rank_of(s | (1 << h)) == r).fold(s, |acc, h| acc | (1 << h))
    }

    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|i| self.rank_of(1 << i) == 1)
            && (0..self.n).all(|i| (i + 1..self.n).all(|j| self.rank_of((1 << i) | (1 << j)) == 2))
    }

    /// Circuits of size at most `max_size`, ordered by size and then
    /// lexicographically.
    pub fn circuits(&self, max_size: usize) -> Vec<Bits> {
        let mut out: Vec<Bits> = (0..=self.full())
            .filter(|&s| {
                let k = s.count_ones() as usize;
                k >= 1
                    && k <= max_size
                    && self.rank_of(s) + 1 == k
                    && indices_of(s).iter().all(|&i| self.rank_of(s & !(1 << i)) + 1 == k)
            })
            .collect();
        out.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then(lex_cmp(a, b)));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    pub members: Bits,
    pub rank: usize,
    pub mobius: i64,
}

impl Flat {
    pub fn indices(&self) -> Vec<usize> {
        indices_of(self.members)
    }

    pub fn size(&self) -> usize {
        self.members.count_ones() as usize
    }
}

/// The geometric lattice of flats, ranked, with Möbius values and Whitney
/// numbers `b_i = Σ_{X ∈ L_i} |μ(X)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    matroid: Matroid,
    flats: Vec<Flat>,
    rank_starts: Vec<usize>,
    whitney: Vec<u64>,
}

impl IntersectionLattice {
    pub fn from_matroid(matroid: Matroid) -> Result<Self> {
        if !matroid.is_simple() {
            return Err(Error::invalid("matroid is not simple"));
        }
        let top = matroid.rank();
        let mut by_rank: Vec<Vec<Bits>> = vec![vec![0]];
        for r in 0..top {
            let mut next: HashSet<Bits> = HashSet::new();
            for &x in &by_rank[r] {
                for h in 0..matroid.n {
                    if x >> h & 1 == 0 {
                        next.insert(matroid.closure(x | (1 << h)));
                    }
                }
            }
            let mut level: Vec<Bits> = next.into_iter().collect();
            level.sort_unstable();
            by_rank.push(level);
        }

        let mut mobius: HashMap<Bits, i64> = HashMap::new();
        let mut flats = Vec::new();
        let mut rank_starts = Vec::new();
        for (r, level) in by_rank.iter().enumerate() {
            rank_starts.push(flats.len());
            for &x in level {
                let mu = if r == 0 {
                    1
                } else {
                    let size = x.count_ones();
                    let lower: usize = by_rank[..r].iter().map(|l| l.len()).sum();
                    let mut sum = 0i64;
                    if (1usize << size) <= lower {
                        let mut s = x;
                        loop {
                            s = (s.wrapping_sub(1)) & x;
                            if let Some(m) = mobius.get(&s) {
                                if s != x {
                                    sum += m;
                                }
                            }
                            if s == 0 {
                                break;
                            }
                        }
                    } else {
                        for l in &by_rank[..r] {
                            for &y in l {
                                if y & !x == 0 {
                                    sum += mobius[&y];
                                }
                            }
                        }
                    }
                    -sum
                };
                mobius.insert(x, mu);
                flats.push(Flat { members: x, rank: r, mobius: mu });
            }
        }
        rank_starts.push(flats.len());

        let mut whitney = Vec::with_capacity(top + 1);
        for r in 0..=top {
            let mut b = 0u64;
            for f in &flats[rank_starts[r]..rank_starts[r + 1]] {
                let signed = if r % 2 == 0 { f.mobius } else { -f.mobius };
                if signed < 0 {
                    return Err(Error::inconsistency(format!("Möbius sign violated at flat {:?}", f.indices())));
                }
                b += signed as u64;
            }
            whitney.push(b);
        }
        Ok(IntersectionLattice { matroid, flats, rank_starts, whitney })
    }

    pub fn n(&self) -> usize {
        self.matroid.n
    }

    pub fn rank(&self) -> usize {
        self.rank_starts.len() - 2
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flats_of_rank(&self, r: usize) -> &[Flat] {
        if r > self.rank() {
            return &[];
        }
        &self.flats[self.rank_starts[r]..self.rank_starts[r + 1]]
    }

    /// Whitney numbers `b_0, …, b_rank`.
    pub fn whitney(&self) -> &[u64] {
        &self.whitney
    }

    /// `b_i`, zero beyond the rank.
    pub fn b(&self, i: usize) -> u64 {
        self.whitney.get(i).copied().unwrap_or(0)
    }

    /// Rank-two flats with `μ ≥ 2`, i.e. the multiple points.
    pub fn multiple_points(&self) -> Vec<Flat> {
        self.flats_of_rank(2).iter().copied().filter(|f| f.mobius >= 2).collect()
    }

    /// Sorted multiset of `μ(X)` over `X ∈ L_2`.
    pub fn l2_mobius(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.flats_of_rank(2).iter().map(|f| f.mobius).collect();
        v.sort_unstable();
        v
    }

    pub fn mobius(&self, members: Bits) -> Option<i64> {
        self.flats.iter().find(|f| f.members == members).map(|f| f.mobius)
    }

    /// Order relation of the lattice: `x ≤ y` iff the members of `x` are among
    /// those of `y`.
    pub fn le(&self, x: &Flat, y: &Flat) -> bool {
        x.members & !y.members == 0
    }
}

pub fn lattice_from_normals(arr: &Arrangement) -> Result<IntersectionLattice> {
    lattice_from_normals_capped(arr, DEFAULT_MAX_HYPERPLANES)
}

pub fn lattice_from_normals_capped(arr: &Arrangement, cap: usize) -> Result<IntersectionLattice> {
    IntersectionLattice::from_matroid(Matroid::from_vectors(arr.normals(), cap)?)
}

pub fn lattice_from_config(cfg: &Rank3Configuration) -> Result<IntersectionLattice> {
    lattice_from_config_capped(cfg, DEFAULT_MAX_HYPERPLANES)
}

pub fn lattice_from_config_capped(cfg: &Rank3Configuration, cap: usize) -> Result<IntersectionLattice> {
    IntersectionLattice::from_matroid(Matroid::from_config(cfg, cap)?)
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> Arrangement {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| Rational::from_int((i == j) as i64)).collect())
            .collect();
        Arrangement::new(rows).unwrap()
    }

    #[test]
    fn boolean_lattice() {
        let l = lattice_from_normals(&identity(3)).unwrap();
        assert_eq!(l.whitney(), &[1, 3, 3, 1]);
        assert_eq!(essential_rank(&identity(3)), 3);
    }

    #[test]
    fn pencil_of_three() {
        let a = Arrangement::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let l = lattice_from_normals(&a).unwrap();
        assert_eq!(l.whitney(), &[1, 3, 2]);
        assert_eq!(l.flats_of_rank(2).len(), 1);
        assert_eq!(l.flats_of_rank(2)[0].mobius, 2);
        assert_eq!(essential_rank(&a), 2);
    }

    #[test]
    fn rejects_non_simple() {
        assert!(Arrangement::from_integers(&[&[1, 0], &[2, 0]]).is_err());
        assert!(Arrangement::from_integers(&[&[0, 0]]).is_err());
        assert!(Rank3Configuration::new(5, vec![vec![0, 1, 2], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn generic_config() {
        let l = lattice_from_config(&Rank3Configuration::new(4, vec![]).unwrap()).unwrap();
        assert_eq!(l.flats_of_rank(2).len(), 6);
        assert!(l.flats_of_rank(2).iter().all(|f| f.mobius == 1));
        assert_eq!(l.b(2), 6);
    }

    #[test]
    fn x3_lattice() {
        let a = Arrangement::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, -1], &[0, 1, 1], &[2, 1, 0]])
            .unwrap();
        let l = lattice_from_normals(&a).unwrap();
        let count = |mu| l.flats_of_rank(2).iter().filter(|f| f.mobius == mu).count();
        assert_eq!((count(2), count(1)), (3, 6));
        assert_eq!(l.whitney(), &[1, 6, 12, 7]);
        assert_eq!(l.mobius(l.matroid().full()), Some(-7));
    }

    #[test]
    fn cap_is_a_resource_error() {
        let rows: Vec<Vec<Rational>> = (0..17).map(|i| vec![Rational::ONE, Rational::from_int(i)]).collect();
        let a = Arrangement::new(rows).unwrap();
        assert!(matches!(lattice_from_normals(&a), Err(Error::Resource { .. })));
    }

    #[test]
    fn lex_order() {
        use std::cmp::Ordering::*;
        assert_eq!(lex_cmp(bits_of(&[0, 1, 3]), bits_of(&[0, 2, 3])), Less);
        assert_eq!(lex_cmp(bits_of(&[1, 2]), bits_of(&[0, 3])), Greater);
        assert_eq!(lex_cmp(bits_of(&[0]), bits_of(&[0, 1])), Less);
    }
}
