//! Graphic arrangements `A_G = {z_i − z_j : ij ∈ E(G)}`.
//!
//! Everything here is read off the graph: clique counts, the chromatic
//! polynomial, induced cycles and chordality. The lattice route is kept
//! alongside so the two can be compared.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arrangement::{binomial, Arrangement, IntersectionLattice, Matroid, DEFAULT_MAX_HYPERPLANES};
use crate::error::{Error, Result};
use crate::lcs::witt;
use crate::poly::Poly;
use crate::rational::Rational;

pub const DEFAULT_MAX_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored as `(min, max)` in the given order; edge `e` becomes
    /// hyperplane `e`.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices > 32 {
            return Err(Error::resource("graph", format!("{vertices} vertices exceeds the 32-vertex limit")));
        }
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{vertices}")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::invalid(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            normalized.push(e);
        }
        Ok(Graph { vertices, edges: normalized })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { vertices: n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph { vertices: n, edges }
    }

    pub fn path(n: usize) -> Self {
        Graph { vertices: n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.vertices];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = 0u32;
        let mut count = 0;
        for s in 0..self.vertices {
            if seen >> s & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u32 << s;
            while frontier != 0 {
                seen |= frontier;
                let mut next = 0;
                for v in bits(frontier) {
                    next |= adj[v];
                }
                frontier = next & !seen;
            }
        }
        count
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph on {} vertices:", self.vertices)?;
        for (u, v) in &self.edges {
            write!(f, " {u}{}{v}", if self.vertices > 10 { "-" } else { "" })?;
        }
        Ok(())
    }
}

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            i
        })
    })
}

pub fn arrangement_from_graph(g: &Graph) -> Result<Arrangement> {
    let normals = g
        .edges
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![Rational::ZERO; g.vertices];
            row[u] = Rational::ONE;
            row[v] = -Rational::ONE;
            row
        })
        .collect();
    Arrangement::new(normals)
}

pub fn lattice_from_graph(g: &Graph) -> Result<IntersectionLattice> {
    lattice_from_graph_capped(g, DEFAULT_MAX_HYPERPLANES)
}

pub fn lattice_from_graph_capped(g: &Graph, cap: usize) -> Result<IntersectionLattice> {
    IntersectionLattice::from_matroid(Matroid::from_edges(g.vertices, &g.edges, cap)?)
}

/// `κ_s` counts complete subgraphs on `s + 1` vertices, for `0 ≤ s < ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct KappaVector(Vec<u64>);

impl KappaVector {
    pub fn new(values: Vec<u64>) -> Self {
        KappaVector(values)
    }

    pub fn get(&self, s: usize) -> u64 {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent of `(1 − jt)` in the chordal factorization:
    /// `Σ_{s ≥ j} (−1)^{s−j} C(s, j) κ_s`.
    pub fn exponent(&self, j: usize) -> i64 {
        (j..self.0.len())
            .map(|s| {
                let sign = if (s - j) % 2 == 0 { 1 } else { -1 };
                sign * binomial(s as i64, j as i64) * self.0[s] as i64
            })
            .sum()
    }

    /// Largest `j` with `κ_j > 0`, i.e. clique number minus one.
    pub fn top(&self) -> usize {
        self.0.iter().rposition(|&k| k > 0).unwrap_or(0)
    }
}

impl fmt::Display for KappaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn kappa(g: &Graph) -> Result<KappaVector> {
    kappa_capped(g, DEFAULT_MAX_VERTICES)
}

pub fn kappa_capped(g: &Graph, cap: usize) -> Result<KappaVector> {
    if g.vertices > cap {
        return Err(Error::resource("kappa", format!("{} vertices exceeds the cap of {cap}", g.vertices)));
    }
    let adj = g.adjacency();
    let mut counts = vec![0u64; g.vertices];
    fn extend(adj: &[u32], size: usize, candidates: u32, counts: &mut [u64]) {
        for v in bits(candidates) {
            counts[size] += 1;
            // only larger neighbours, so each clique is seen once
            let higher = adj[v] & candidates & !((2u32 << v) - 1);
            extend(adj, size + 1, higher, counts);
        }
    }
    let all = if g.vertices == 32 { u32::MAX } else { (1u32 << g.vertices) - 1 };
    extend(&adj, 0, all, &mut counts);
    Ok(KappaVector(counts))
}

/// Chromatic polynomial by deletion–contraction.
pub fn chromatic_polynomial(g: &Graph) -> Result<Poly> {
    if g.vertices > DEFAULT_MAX_VERTICES {
        return Err(Error::resource(
            "chromatic polynomial",
            format!("{} vertices exceeds the cap of {DEFAULT_MAX_VERTICES}", g.vertices),
        ));
    }
    let mut memo = HashMap::new();
    Ok(chromatic(g.adjacency(), &mut memo))
}

fn falling(n: usize, shift: usize) -> Poly {
    (shift..shift + n).fold(Poly::constant(1), |acc, j| &acc * &Poly::linear_root(j as i128))
}

fn remove_vertex(adj: &[u32], v: usize) -> Vec<u32> {
    let low = (1u32 << v) - 1;
    adj.iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &a)| (a & low) | ((a >> 1) & !low))
        .collect()
}

fn canonical(adj: &[u32]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (adj[v].count_ones(), v));
    let mut position = vec![0usize; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    order.iter().map(|&v| bits(adj[v]).fold(0u32, |acc, u| acc | 1 << position[u])).collect()
}

fn chromatic(adj: Vec<u32>, memo: &mut HashMap<Vec<u32>, Poly>) -> Poly {
    let n = adj.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let edges: u32 = adj.iter().map(|a| a.count_ones()).sum::<u32>() / 2;
    if edges as usize == n * (n - 1) / 2 {
        return falling(n, 0);
    }
    // a simplicial vertex of degree d contributes (t − d)
    for v in 0..n {
        let nb = adj[v];
        if bits(nb).all(|u| (adj[u] | 1 << u) & nb == nb) {
            let d = nb.count_ones() as i128;
            return &Poly::linear_root(d) * &chromatic(remove_vertex(&adj, v), memo);
        }
    }
    let key = canonical(&adj);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let adj = key.clone();
    let u = (0..n).max_by_key(|&v| (adj[v].count_ones(), v)).unwrap();
    let v = bits(adj[u]).next().unwrap();
    let mut deleted = adj.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let mut merged = deleted.clone();
    for w in bits(deleted[v]) {
        merged[u] |= 1 << w;
        merged[w] |= 1 << u;
    }
    let contracted = remove_vertex(&merged, v);
    let p = &chromatic(deleted, memo) - &chromatic(contracted, memo);
    memo.insert(key, p.clone());
    p
}

/// Coefficients of `(−t)^ℓ χ_G(−1/t)`, i.e. `b_i = (−1)^i [t^{ℓ−i}] χ_G`.
pub fn whitney_from_chromatic(chi: &Poly, vertices: usize) -> Vec<i128> {
    let mut b: Vec<i128> = (0..=vertices)
        .map(|i| if i % 2 == 0 { chi.coeff(vertices - i) } else { -chi.coeff(vertices - i) })
        .collect();
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

/// Number of induced cycles of length `m`.
pub fn chordless_cycles(g: &Graph, m: usize) -> Result<u64> {
    if m < 4 {
        return Err(Error::precondition(format!("chordless cycles need length at least 4, got {m}")));
    }
    let adj = g.adjacency();
    let n = g.vertices;
    if m > n {
        return Ok(0);
    }
    let mut count = 0;
    // rooted at the smallest vertex, extended through larger ones only
    for root in 0..n {
        let allowed = !((2u32 << root) - 1);
        let mut path = vec![root];
        count += grow(&adj, allowed, m, &mut path);
    }
    Ok(count / 2)
}

fn grow(adj: &[u32], allowed: u32, m: usize, path: &mut Vec<usize>) -> u64 {
    let root = path[0];
    let last = *path.last().unwrap();
    let inner: u32 = path[1..].iter().take(path.len().saturating_sub(2)).fold(0, |acc, &v| acc | 1 << v);
    if path.len() == m {
        return u64::from(adj[last] >> root & 1 == 1);
    }
    let mut total = 0;
    for w in bits(adj[last] & allowed) {
        if path.contains(&w) || adj[w] & inner != 0 {
            continue;
        }
        if path.len() > 1 && adj[w] >> root & 1 == 1 && path.len() + 1 < m {
            continue;
        }
        path.push(w);
        total += grow(adj, allowed, m, path);
        path.pop();
    }
    total
}

/// Maximum cardinality search followed by a perfect-elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let adj = g.adjacency();
    let n = g.vertices;
    let mut weight = vec![0usize; n];
    let mut numbered = 0u32;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| numbered >> v & 1 == 0).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).unwrap();
        numbered |= 1 << v;
        order.push(v);
        for u in bits(adj[v] & !numbered) {
            weight[u] += 1;
        }
    }
    // reverse MCS order is a perfect elimination ordering iff G is chordal
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let earlier: Vec<usize> = bits(adj[v]).filter(|&u| position[u] < position[v]).collect();
        if let Some(&parent) = earlier.iter().max_by_key(|&&u| position[u]) {
            for &u in &earlier {
                if u != parent && adj[parent] >> u & 1 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn graphic_phi123(kv: &KappaVector) -> (i64, i64, i64) {
    let (k1, k2, k3) = (kv.get(1) as i64, kv.get(2) as i64, kv.get(3) as i64);
    (k1, k2, 2 * (k2 + k3))
}

/// `b'_{i,i+1} = i(κ_2 + κ_3)` for `i ≥ 2`.
pub fn graphic_linear_strand(kv: &KappaVector, i: usize) -> Result<u64> {
    if i < 2 {
        return Err(Error::precondition(format!("linear strand formula needs i ≥ 2, got {i}")));
    }
    Ok(i as u64 * (kv.get(2) + kv.get(3)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Delta4Bound {
    pub raw: i64,
    pub value: u64,
    /// The raw bound was negative and says nothing.
    pub clamped: bool,
}

/// `δ_4 ≤ C(κ_2, 2) − 6(κ_3 + κ_4)`.
pub fn graphic_delta4_bound(kv: &KappaVector) -> Delta4Bound {
    let raw = binomial(kv.get(2) as i64, 2) - 6 * (kv.get(3) + kv.get(4)) as i64;
    Delta4Bound { raw, value: raw.max(0) as u64, clamped: raw < 0 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Phi4Estimate {
    pub lower_bound: i64,
    pub exact: Option<i64>,
}

/// `φ_4 ≥ 3κ_2 + 9κ_3 + 6κ_4`, with equality when `κ_3 = 0`. A value
/// computed from the resolution settles the question outright.
pub fn graphic_phi4(kv: &KappaVector, direct: Option<i64>) -> Result<Phi4Estimate> {
    let lower_bound = (3 * kv.get(2) + 9 * kv.get(3) + 6 * kv.get(4)) as i64;
    if let Some(d) = direct {
        if d < lower_bound {
            return Err(Error::inconsistency(format!("φ_4 = {d} is below the graphic lower bound {lower_bound}")));
        }
        if kv.get(3) == 0 && d != lower_bound {
            return Err(Error::inconsistency(format!("κ_3 = 0 but φ_4 = {d} differs from 3κ_2 = {lower_bound}")));
        }
    }
    let exact = direct.or((kv.get(3) == 0).then_some(lower_bound));
    Ok(Phi4Estimate { lower_bound, exact })
}

/// Predicted `φ_1 … φ_{k_max}` from `∏(1−t^k)^{φ_k} = ∏_j (1−jt)^{e_j}`.
pub fn graphic_lcs_expansion(kv: &KappaVector, k_max: usize) -> Vec<i64> {
    (1..=k_max as u64)
        .map(|k| (1..kv.len()).map(|j| kv.exponent(j) * witt(j as u64, k)).sum())
        .collect()
}

/// `θ_k = (k − 1)(κ_2 + κ_3)` for `k ≥ 3`.
pub fn chen_ranks_prediction(kv: &KappaVector, k: usize) -> Result<i64> {
    if k < 3 {
        return Err(Error::precondition(format!("Chen rank prediction needs k ≥ 3, got {k}")));
    }
    Ok((k as i64 - 1) * (kv.get(2) + kv.get(3)) as i64)
}

/// Checks `χ_G(t) = t^{κ_0 − Σ e_j} ∏_{j ≥ 1} (t − j)^{e_j}` on a chordal graph.
pub fn chordal_chromatic_check(g: &Graph) -> Result<bool> {
    if !is_chordal(g) {
        return Err(Error::precondition("chordal factorization requested for a non-chordal graph"));
    }
    let kv = kappa(g)?;
    let chi = chromatic_polynomial(g)?;
    let mut product = Poly::constant(1);
    let mut total = 0i64;
    for j in 1..kv.len() {
        let e = kv.exponent(j);
        if e < 0 {
            return Ok(false);
        }
        total += e;
        product = &product * &Poly::linear_root(j as i128).pow(e as u32);
    }
    let shift = kv.get(0) as i64 - total;
    if shift < 0 {
        return Ok(false);
    }
    Ok(&Poly::monomial(shift as usize) * &product == chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig5() -> Graph {
        Graph::new(5, vec![(0, 1), (0, 2), (2, 3), (1, 2), (0, 3), (3, 4), (1, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn k4_invariants() {
        let g = Graph::complete(4);
        let kv = kappa(&g).unwrap();
        assert_eq!(kv.values(), &[4, 6, 4, 1]);
        assert_eq!(graphic_phi123(&kv), (6, 4, 10));
        assert_eq!(graphic_linear_strand(&kv, 2).unwrap(), 10);
        assert_eq!(graphic_linear_strand(&kv, 3).unwrap(), 15);
        assert_eq!(graphic_delta4_bound(&kv).value, 0);
        assert_eq!(chen_ranks_prediction(&kv, 3).unwrap(), 10);
        assert_eq!(graphic_lcs_expansion(&kv, 4), vec![6, 4, 10, 21]);
        let chi = chromatic_polynomial(&g).unwrap();
        assert_eq!(chi.coeffs(), &[0, -6, 11, -6, 1]);
        assert_eq!(whitney_from_chromatic(&chi, 4), vec![1, 6, 11, 6]);
        assert!(chordal_chromatic_check(&g).unwrap());
        let arr = arrangement_from_graph(&g).unwrap();
        assert_eq!((arr.n(), arr.rank()), (6, 3));
    }

    #[test]
    fn cycles() {
        let c4 = Graph::cycle(4);
        assert_eq!(chromatic_polynomial(&c4).unwrap(), &Poly::linear_root(1).pow(4) + &Poly::linear_root(1));
        assert_eq!(chordless_cycles(&c4, 4).unwrap(), 1);
        assert!(!is_chordal(&c4));
        assert!(chordal_chromatic_check(&c4).is_err());
        let c5 = Graph::cycle(5);
        assert_eq!(chordless_cycles(&c5, 5).unwrap(), 1);
        assert_eq!(chordless_cycles(&c5, 4).unwrap(), 0);
        assert_eq!(chordless_cycles(&Graph::complete(5), 4).unwrap(), 0);
    }

    #[test]
    fn wheel_on_five_vertices() {
        let g = fig5();
        let kv = kappa(&g).unwrap();
        assert_eq!((kv.get(2), kv.get(3)), (4, 0));
        assert!(!is_chordal(&g));
        assert!(chordless_cycles(&g, 4).unwrap() >= 1);
        assert_eq!(graphic_phi123(&kv), (8, 4, 8));
        assert_eq!(graphic_delta4_bound(&kv).value, 6);
        assert_eq!(graphic_phi4(&kv, None).unwrap().exact, Some(12));
        assert_eq!(chen_ranks_prediction(&kv, 4).unwrap(), 12);
    }

    #[test]
    fn k5_bound() {
        let kv = kappa(&Graph::complete(5)).unwrap();
        let b = graphic_delta4_bound(&kv);
        assert_eq!(kv.values(), &[5, 10, 10, 5, 1]);
        assert_eq!((b.raw, b.value, b.clamped), (9, 9, false));
        assert!(chordal_chromatic_check(&Graph::complete(5)).unwrap());
    }

    #[test]
    fn trees() {
        let g = Graph::path(5);
        let chi = chromatic_polynomial(&g).unwrap();
        assert_eq!(chi, &Poly::monomial(1) * &Poly::linear_root(1).pow(4));
        assert!(is_chordal(&g));
        assert!(chordal_chromatic_check(&g).unwrap());
        assert_eq!(graphic_lcs_expansion(&kappa(&g).unwrap(), 3), vec![4, 0, 0]);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::new(3, vec![(0, 0)]).is_err());
        assert!(Graph::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, vec![(0, 3)]).is_err());
    }
}
