//! Batch comparison of exact LCS ranks with the local and graphic
//! predictions, over every small graph or every small line configuration.
//!
//! Exact values exist only for `k ≤ 4`; rows beyond that are labelled
//! prediction-only and never count as matches.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{lattice_from_config, IntersectionLattice, Rank3Configuration};
use crate::error::{Error, Result};
use crate::graphic::{self, Graph};
use crate::lcs;
use crate::os_ideal::os_ideal;
use crate::resolution::{delta4, resolve_over_e};

pub const MAX_GRAPH_VERTICES: usize = 7;
pub const MAX_CONFIG_POINTS: usize = 9;
/// Largest `k` with an exact route.
pub const EXACT_K: usize = 4;

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            i
        })
    })
}

fn relabel(block: u32, position: &[usize]) -> u32 {
    bits(block).fold(0, |acc, p| acc | 1 << position[p])
}

/// Stable colouring of the points of an incidence structure.
fn refine(n: usize, blocks: &[u32]) -> Vec<usize> {
    let mut colour = vec![0usize; n];
    loop {
        let signatures: Vec<Vec<(u32, Vec<usize>)>> = (0..n)
            .map(|p| {
                let mut sig: Vec<(u32, Vec<usize>)> = blocks
                    .iter()
                    .filter(|b| *b >> p & 1 == 1)
                    .map(|&b| {
                        let mut others: Vec<usize> = bits(b).filter(|&q| q != p).map(|q| colour[q]).collect();
                        others.sort_unstable();
                        (b.count_ones(), others)
                    })
                    .collect();
                sig.sort();
                sig
            })
            .collect();
        let mut keyed: Vec<_> = (0..n).map(|p| (colour[p], &signatures[p])).collect();
        keyed.sort();
        keyed.dedup();
        let next: Vec<usize> = (0..n).map(|p| keyed.binary_search(&(colour[p], &signatures[p])).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Lexicographically least sorted block list over all relabellings that
/// respect the refined colouring.
pub fn canonical_form(n: usize, blocks: &[u32]) -> Vec<u32> {
    let colour = refine(n, blocks);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (colour[p], p));
    // end of the colour class containing each slot
    let mut class_end = vec![n; n];
    for k in (0..n.saturating_sub(1)).rev() {
        class_end[k] = if colour[order[k]] == colour[order[k + 1]] { class_end[k + 1] } else { k + 1 };
    }
    let mut search = Search { blocks, order, class_end, position: vec![0; n], best: None };
    search.run(0);
    search.best.unwrap_or_default()
}

struct Search<'a> {
    blocks: &'a [u32],
    order: Vec<usize>,
    class_end: Vec<usize>,
    position: Vec<usize>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    fn run(&mut self, slot: usize) {
        if slot == self.order.len() {
            for (k, &p) in self.order.iter().enumerate() {
                self.position[p] = k;
            }
            let mut code: Vec<u32> = self.blocks.iter().map(|&b| relabel(b, &self.position)).collect();
            code.sort_unstable();
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        }
        for k in slot..self.class_end[slot] {
            self.order.swap(slot, k);
            self.run(slot + 1);
            self.order.swap(slot, k);
        }
    }
}

/// One graph from each isomorphism class on `1..=max_vertices` vertices.
pub fn graph_classes(max_vertices: usize) -> Result<Vec<Graph>> {
    if max_vertices > MAX_GRAPH_VERTICES {
        return Err(Error::resource("harness", format!("graphs up to {max_vertices} vertices exceeds the cap of {MAX_GRAPH_VERTICES}")));
    }
    let mut out = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![vec![]];
    for n in 1..=max_vertices {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for edges in &level {
            for nb in 0..1u32 << (n - 1) {
                let mut e = edges.clone();
                e.extend(bits(nb).map(|u| 1 << u | 1 << (n - 1)));
                let c = canonical_form(n, &e);
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        next.sort_by_key(|e| (e.len(), e.clone()));
        for e in &next {
            let pairs = e.iter().map(|&b| (b.trailing_zeros() as usize, 31 - b.leading_zeros() as usize)).collect();
            out.push(Graph::new(n, pairs)?);
        }
        level = next;
    }
    Ok(out)
}

/// One configuration from each isomorphism class of linear spaces on
/// `3..=max_points` points (lines of size at least three).
pub fn config_classes(max_points: usize) -> Result<Vec<Rank3Configuration>> {
    if max_points > MAX_CONFIG_POINTS {
        return Err(Error::resource("harness", format!("configurations on {max_points} points exceeds the cap of {MAX_CONFIG_POINTS}")));
    }
    let mut out = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![vec![]];
    for n in 1..=max_points {
        let p = n - 1;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for lines in &level {
            let covered = |a: usize, b: usize| lines.iter().any(|&l| l >> a & 1 == 1 && l >> b & 1 == 1);
            // blocks through the new point: an old line, or an uncovered pair
            let mut candidates: Vec<(u32, Option<usize>)> = lines.iter().enumerate().map(|(i, &l)| (l, Some(i))).collect();
            for a in 0..p {
                for b in a + 1..p {
                    if !covered(a, b) {
                        candidates.push((1 << a | 1 << b, None));
                    }
                }
            }
            let mut chosen = Vec::new();
            extend(&candidates, 0, 0, &mut chosen, &mut |chosen: &[usize]| {
                let mut new_lines = lines.clone();
                for &c in chosen {
                    match candidates[c] {
                        (l, Some(i)) => new_lines[i] = l | 1 << p,
                        (pair, None) => new_lines.push(pair | 1 << p),
                    }
                }
                let c = canonical_form(n, &new_lines);
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            });
        }
        next.sort_by_key(|l| (l.len(), l.clone()));
        if n >= 3 {
            for l in &next {
                let flats = l.iter().map(|&b| bits(b).collect()).collect();
                out.push(Rank3Configuration::new(n, flats)?);
            }
        }
        level = next;
    }
    Ok(out)
}

fn extend(candidates: &[(u32, Option<usize>)], from: usize, used: u32, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    visit(chosen);
    for c in from..candidates.len() {
        if candidates[c].0 & used == 0 {
            chosen.push(c);
            extend(candidates, c + 1, used | candidates[c].0, chosen, visit);
            chosen.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    NotApplicable,
    PredictionOnly,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceRow {
    pub label: String,
    pub classes: Vec<String>,
    pub exact: Vec<Option<i64>>,
    pub predicted: Vec<Option<i64>>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub class: String,
    pub k: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub not_applicable: usize,
    pub prediction_only: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub scope: String,
    pub k_max: usize,
    pub instances: Vec<InstanceRow>,
    pub summary: Vec<SummaryRow>,
}

/// `φ_1 … φ_min(k_max, 4)` by the closed forms.
pub fn exact_phi(lattice: &IntersectionLattice, k_max: usize) -> Result<Vec<i64>> {
    Ok(exact_with_b23(lattice, k_max)?.0)
}

fn exact_with_b23(lattice: &IntersectionLattice, k_max: usize) -> Result<(Vec<i64>, u64)> {
    let ideal = os_ideal(lattice, 4)?;
    let table = resolve_over_e(&ideal, 3, 4)?.table;
    let (p1, p2, p3) = lcs::phi_123(lattice, &ideal);
    let mut phi = vec![p1, p2, p3];
    if k_max >= 4 {
        phi.push(lcs::phi4(ideal.a(2), table.at(3, 4), delta4(&ideal)));
    }
    phi.truncate(k_max.min(EXACT_K));
    Ok((phi, table.at(2, 3)))
}

fn row(label: String, classes: Vec<String>, k_max: usize, exact: Result<Vec<i64>>, predicted: Option<Vec<i64>>) -> InstanceRow {
    match exact {
        Err(e) => InstanceRow {
            label,
            classes,
            exact: vec![None; k_max],
            predicted: predicted.map_or(vec![None; k_max], |p| p.into_iter().map(Some).collect()),
            verdicts: vec![Verdict::Error; k_max],
            error: Some(e.to_string()),
        },
        Ok(exact) => {
            let verdicts = (0..k_max)
                .map(|i| match (exact.get(i), predicted.as_ref().map(|p| p[i])) {
                    (_, None) => Verdict::NotApplicable,
                    (None, Some(_)) => Verdict::PredictionOnly,
                    (Some(e), Some(p)) if *e == p => Verdict::Match,
                    _ => Verdict::Mismatch,
                })
                .collect();
            InstanceRow {
                label,
                classes,
                exact: (0..k_max).map(|i| exact.get(i).copied()).collect(),
                predicted: predicted.map_or(vec![None; k_max], |p| p.into_iter().map(Some).collect()),
                verdicts,
                error: None,
            }
        }
    }
}

fn evaluate_graph(g: &Graph, k_max: usize) -> InstanceRow {
    let label = g.to_string();
    let kv = match graphic::kappa(g) {
        Ok(kv) => kv,
        Err(e) => return row(label, vec!["all".into()], k_max, Err(e), None),
    };
    let mut classes = vec!["all".to_string()];
    if graphic::is_chordal(g) {
        classes.push("chordal".into());
    }
    if kv.get(3) == 0 {
        classes.push("kappa3=0".into());
    }
    let exact = graphic::lattice_from_graph_capped(g, 21).and_then(|l| exact_phi(&l, k_max));
    row(label, classes, k_max, exact, Some(graphic::graphic_lcs_expansion(&kv, k_max)))
}

fn evaluate_config(c: &Rank3Configuration, k_max: usize) -> InstanceRow {
    let flats: Vec<String> = c.flats().iter().map(|f| f.iter().map(usize::to_string).collect::<Vec<_>>().join("")).collect();
    let label = format!("{} points: [{}]", c.n(), flats.join(" "));
    let lattice = match lattice_from_config(c) {
        Ok(l) => l,
        Err(e) => return row(label, vec!["all".into()], k_max, Err(e), None),
    };
    let mut classes = vec!["all".to_string()];
    let (exact, predicted) = match exact_with_b23(&lattice, k_max) {
        Ok((phi, b23)) if lcs::mls_test(&lattice, b23) => {
            classes.push("mls".into());
            match lcs::mls_lcs_prediction(&lattice, k_max) {
                Ok(p) => (Ok(phi), Some(p.phi)),
                Err(e) => (Err(e), None),
            }
        }
        Ok((phi, _)) => (Ok(phi), None),
        Err(e) => (Err(e), None),
    };
    row(label, classes, k_max, exact, predicted)
}

fn summarize(instances: &[InstanceRow], classes: &[&str], k_max: usize) -> Vec<SummaryRow> {
    let mut out = Vec::new();
    for class in classes {
        for k in 1..=k_max {
            let mut s = SummaryRow {
                class: class.to_string(),
                k,
                matches: 0,
                mismatches: 0,
                not_applicable: 0,
                prediction_only: 0,
                errors: 0,
            };
            for r in instances.iter().filter(|r| r.classes.iter().any(|c| c == class)) {
                match r.verdicts[k - 1] {
                    Verdict::Match => s.matches += 1,
                    Verdict::Mismatch => s.mismatches += 1,
                    Verdict::NotApplicable => s.not_applicable += 1,
                    Verdict::PredictionOnly => s.prediction_only += 1,
                    Verdict::Error => s.errors += 1,
                }
            }
            out.push(s);
        }
    }
    out
}

/// Every graph on at most `max_vertices` vertices against the graphic
/// LCS expansion.
pub fn graph_harness(max_vertices: usize, k_max: usize) -> Result<HarnessReport> {
    if k_max == 0 {
        return Err(Error::invalid("--kmax must be positive"));
    }
    let graphs = graph_classes(max_vertices)?;
    let instances: Vec<InstanceRow> = graphs.par_iter().map(|g| evaluate_graph(g, k_max)).collect();
    let summary = summarize(&instances, &["all", "chordal", "kappa3=0"], k_max);
    Ok(HarnessReport { scope: format!("graphs on at most {max_vertices} vertices"), k_max, instances, summary })
}

/// Every linear space on at most `max_points` points against the local
/// prediction, which applies to MLS configurations only.
pub fn config_harness(max_points: usize, k_max: usize) -> Result<HarnessReport> {
    if k_max == 0 {
        return Err(Error::invalid("--kmax must be positive"));
    }
    let configs = config_classes(max_points)?;
    let instances: Vec<InstanceRow> = configs.par_iter().map(|c| evaluate_config(c, k_max)).collect();
    let summary = summarize(&instances, &["all", "mls"], k_max);
    Ok(HarnessReport { scope: format!("line configurations on at most {max_points} points"), k_max, instances, summary })
}

/// Classes in which the prediction is a theorem for `k ≤ 4`.
pub const PROVEN_CLASSES: [&str; 3] = ["chordal", "kappa3=0", "mls"];

impl HarnessReport {
    /// Mismatches inside a proven class: these indicate a defect rather
    /// than a counterexample.
    pub fn violations(&self) -> Vec<&InstanceRow> {
        self.instances
            .iter()
            .filter(|r| r.classes.iter().any(|c| PROVEN_CLASSES.contains(&c.as_str())))
            .filter(|r| r.verdicts.contains(&Verdict::Mismatch))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("harness reports serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {} instances, k ≤ {}", self.scope, self.instances.len(), self.k_max);
        let _ = writeln!(out, "{:<10} {:>2} {:>7} {:>9} {:>5} {:>16} {:>6}", "class", "k", "match", "mismatch", "n/a", "prediction-only", "error");
        for s in &self.summary {
            let _ = writeln!(
                out,
                "{:<10} {:>2} {:>7} {:>9} {:>5} {:>16} {:>6}",
                s.class, s.k, s.matches, s.mismatches, s.not_applicable, s.prediction_only, s.errors
            );
        }
        let flagged: Vec<&InstanceRow> =
            self.instances.iter().filter(|r| r.verdicts.iter().any(|v| matches!(v, Verdict::Mismatch | Verdict::Error))).collect();
        if !flagged.is_empty() {
            let _ = writeln!(out, "\nmismatches and errors:");
            for r in flagged {
                let show = |v: &[Option<i64>]| v.iter().map(|x| x.map_or("-".into(), |x| x.to_string())).collect::<Vec<_>>().join(", ");
                let _ = writeln!(out, "  {}", r.label);
                let _ = writeln!(out, "    exact ({})  predicted ({})", show(&r.exact), show(&r.predicted));
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "    error: {e}");
                }
            }
        }
        if self.k_max > EXACT_K {
            let _ = writeln!(out, "\nrows with k > {EXACT_K} are prediction-only: no exact value is computed there.");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let per_size = |v: &[Graph]| (1..=5).map(|n| v.iter().filter(|g| g.vertices() == n).count()).collect::<Vec<_>>();
        assert_eq!(per_size(&graph_classes(5).unwrap()), vec![1, 2, 4, 11, 34]);
        let configs = config_classes(7).unwrap();
        let per_points: Vec<usize> = (3..=7).map(|n| configs.iter().filter(|c| c.n() == n).count()).collect();
        assert_eq!(per_points, vec![2, 3, 5, 10, 24]);
    }

    #[test]
    fn canonical_forms_agree_on_relabellings() {
        let square = [0b0011, 0b0110, 0b1100, 0b1001];
        let relabelled = [0b0101, 0b0110, 0b1010, 0b1001];
        assert_eq!(canonical_form(4, &square), canonical_form(4, &relabelled));
        let path = [0b0011, 0b0110, 0b1100];
        assert_ne!(canonical_form(4, &square), canonical_form(4, &path));
    }
}
