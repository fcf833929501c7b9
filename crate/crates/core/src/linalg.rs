//! Sparse exact linear algebra over the rationals.
//!
//! Everything the resolution engine needs reduces to three primitives: the
//! rank of a family of vectors, membership/reduction modulo a span, and a
//! kernel basis of a matrix given by its columns. Pivots are always taken at
//! the smallest nonzero coordinate, so results depend only on the input order.

use crate::rational::Rational;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from possibly unsorted, possibly repeated entries.
    pub fn from_entries(mut raw: Vec<(usize, Rational)>) -> Self {
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Builds a vector from entries already sorted by index with no zeros.
    pub fn from_sorted(entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec { entries: vec![(index, Rational::ONE)] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn get(&self, index: usize) -> Rational {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x.sub_mul(&-c, y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut d = vec![Rational::ZERO; len];
        for (i, v) in &self.entries {
            d[*i] = v.clone();
        }
        d
    }
}

/// Dense scratch accumulator that remembers which slots it touched.
struct Workspace {
    values: Vec<Rational>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Workspace {
    fn new(len: usize) -> Self {
        Workspace { values: vec![Rational::ZERO; len], touched: Vec::new(), mark: vec![false; len] }
    }

    fn touch(&mut self, i: usize) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
    }

    fn load(&mut self, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.touch(*i);
            self.values[*i] = x.clone();
        }
    }

    fn axpy(&mut self, c: &Rational, v: &SparseVec) {
        for (i, x) in v.iter() {
            self.touch(*i);
            self.values[*i] = self.values[*i].sub_mul(c, x);
        }
    }

    /// Drains the contents into a sparse vector and resets the workspace.
    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = std::mem::take(&mut self.values[i]);
            self.mark[i] = false;
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec { entries: out }
    }

    fn min_touched(&self) -> usize {
        self.touched.iter().copied().min().unwrap_or(self.values.len())
    }
}

/// A subspace kept in (semi-)echelon form: each stored row has a distinct
/// pivot at its leading coordinate, normalized to one.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonSpace {
    pub fn new(dim: usize) -> Self {
        EchelonSpace { dim, rows: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("stored rows are nonzero"))
    }

    pub fn is_pivot(&self, index: usize) -> bool {
        self.pivot_row[index].is_some()
    }

    fn reduce_in(&self, ws: &mut Workspace) {
        let mut i = ws.min_touched();
        while i < self.dim {
            if !ws.values[i].is_zero() {
                if let Some(r) = self.pivot_row[i] {
                    let c = ws.values[i].clone();
                    ws.axpy(&c, &self.rows[r]);
                }
            }
            i += 1;
        }
    }

    /// Canonical remainder of `v` modulo the span: the unique representative
    /// with zero coordinates at every pivot position.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if v.is_zero() || self.rows.is_empty() {
            return v.clone();
        }
        let mut ws = Workspace::new(self.dim);
        ws.load(v);
        self.reduce_in(&mut ws);
        ws.drain()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank went up.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        match r.leading() {
            None => false,
            Some(p) => {
                let lead = r.entries[0].1.recip();
                let row = r.scale(&lead);
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    /// Inserts many vectors, sharing one workspace.
    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a SparseVec>) -> usize {
        let mut ws = Workspace::new(self.dim);
        let mut added = 0;
        for v in vs {
            if v.is_zero() {
                continue;
            }
            ws.load(v);
            self.reduce_in(&mut ws);
            let r = ws.drain();
            if self.push_reduced(r) {
                added += 1;
            }
        }
        added
    }

    /// Fully reduced row-echelon basis (every pivot column cleared in all
    /// other rows), sorted by pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].leading());
        let mut out: Vec<SparseVec> = Vec::with_capacity(order.len());
        // Back-substitute from the largest pivot down.
        let mut done = EchelonSpace::new(self.dim);
        for &r in order.iter().rev() {
            let mut row = self.rows[r].clone();
            let lead = row.leading().unwrap();
            // clear later pivots using already-reduced rows
            let mut entries = Vec::new();
            for (i, v) in row.iter() {
                if *i != lead && done.pivot_row[*i].is_some() {
                    entries.push((*i, v.clone()));
                }
            }
            for (i, v) in entries {
                let k = done.pivot_row[i].unwrap();
                row = row.add_scaled(&-&v, &done.rows[k]);
            }
            done.pivot_row[lead] = Some(done.rows.len());
            done.rows.push(row.clone());
            out.push(row);
        }
        out.reverse();
        out
    }
}

/// Result of a kernel computation for a matrix given by columns.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub rank: usize,
    /// One basis vector per non-pivot column `c`; it has coefficient one at
    /// `c` and is otherwise supported on earlier pivot columns, which makes the
    /// basis canonical (reduced echelon form with pivots at the last entry).
    pub basis: Vec<SparseVec>,
}

/// Kernel of the matrix whose columns are `columns`, each living in a space
/// of dimension `nrows`.
pub fn kernel(columns: &[SparseVec], nrows: usize) -> Kernel {
    let ncols = columns.len();
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut pivot_row: Vec<Option<usize>> = vec![None; nrows];
    let mut ws = Workspace::new(nrows);
    let mut combo = Workspace::new(ncols);
    let mut basis = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        ws.load(col);
        combo.touch(c);
        combo.values[c] = Rational::ONE;
        let mut i = ws.min_touched();
        while i < nrows {
            if !ws.values[i].is_zero() {
                if let Some(r) = pivot_row[i] {
                    let f = ws.values[i].clone();
                    ws.axpy(&f, &rows[r].0);
                    combo.axpy(&f, &rows[r].1);
                }
            }
            i += 1;
        }
        let w = ws.drain();
        let cv = combo.drain();
        match w.leading() {
            None => basis.push(cv),
            Some(p) => {
                let inv = w.entries()[0].1.recip();
                pivot_row[p] = Some(rows.len());
                rows.push((w.scale(&inv), cv.scale(&inv)));
            }
        }
    }
    Kernel { rank: rows.len(), basis }
}

/// Rank of a family of vectors in a space of dimension `dim`.
pub fn rank(vectors: &[SparseVec], dim: usize) -> usize {
    let mut space = EchelonSpace::new(dim);
    space.extend(vectors.iter());
    space.rank()
}

/// Applies the matrix with the given columns to a coefficient vector.
pub fn apply(columns: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut raw = Vec::new();
    for (c, v) in x.iter() {
        for (i, y) in columns[*c].iter() {
            raw.push((*i, v * y));
        }
    }
    SparseVec::from_entries(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, v)| (i, Rational::from_int(v))).collect())
    }

    #[test]
    fn kernel_of_small_matrix() {
        // columns: (1,0), (0,1), (1,1), (2,2)
        let cols = vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(0, 1), (1, 1)]), sv(&[(0, 2), (1, 2)])];
        let k = kernel(&cols, 2);
        assert_eq!(k.rank, 2);
        assert_eq!(k.basis.len(), 2);
        for v in &k.basis {
            assert!(apply(&cols, v).is_zero());
        }
        assert_eq!(k.basis[0], sv(&[(0, -1), (1, -1), (2, 1)]));
        assert_eq!(k.basis[1], sv(&[(0, -2), (1, -2), (3, 1)]));
    }

    #[test]
    fn echelon_reduce_is_canonical() {
        let mut s = EchelonSpace::new(3);
        assert!(s.insert(&sv(&[(0, 2), (1, 4)])));
        assert!(!s.insert(&sv(&[(0, 1), (1, 2)])));
        let r1 = s.reduce(&sv(&[(0, 1), (2, 5)]));
        let r2 = s.reduce(&sv(&[(1, 2), (2, 5)]).add_scaled(&Rational::from_int(-1), &sv(&[(1, 2)])).add_scaled(&Rational::ONE, &sv(&[(0, 1)])));
        assert_eq!(r1, r2);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn reduced_basis_clears_pivots() {
        let mut s = EchelonSpace::new(3);
        s.insert(&sv(&[(0, 1), (1, 1), (2, 1)]));
        s.insert(&sv(&[(1, 1), (2, 2)]));
        let b = s.reduced_basis();
        assert_eq!(b[0], sv(&[(0, 1), (2, -1)]));
        assert_eq!(b[1], sv(&[(1, 1), (2, 2)]));
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[(0, 1), (3, 2)]);
        let b = sv(&[(3, 1), (4, 1)]);
        assert_eq!(a.add_scaled(&Rational::from_int(-2), &b), sv(&[(0, 1), (4, -2)]));
    }
}
