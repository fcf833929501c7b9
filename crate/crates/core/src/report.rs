//! Analysis requests and the reports they produce.
//!
//! A report is a single versioned document. Every cross-check runs on every
//! request that computes its inputs; a failed check makes [`run`] return an
//! inconsistency error rather than a report with a warning in it.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::arrangement::{binomial, lattice_from_config, lattice_from_normals, IntersectionLattice};
use crate::document::{parse_document, Input};
use crate::error::{Error, Result};
use crate::fixtures::{fixture, Fixture, GoldenValue};
use crate::graphic::{self, Delta4Bound, Graph, KappaVector, Phi4Estimate};
use crate::lcs::{self, KoszulStatus, LCSReport, PhiEntry, Provenance, QuadraticityVerdict};
use crate::os_ideal::{extend_ideal, os_ideal, quadratic_closure, OSIdeal};
use crate::resolution::{
    b34_formula, b44_formula, delta4_from, delta4_upper_bound, hilbert_identity_check, linear_strand_lower_bound,
    linear_syzygies, resolve_k_over_a, resolve_over_e, euler_identity_check, BettiTable, RingTag,
};
use crate::series::IntegerSeries;

pub const SCHEMA: &str = "arrangement-report/v1";
pub const DEFAULT_I_MAX: usize = 4;
pub const DEFAULT_K_MAX: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    Builtin(String),
    File(PathBuf),
    Text(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sections {
    pub lattice: bool,
    pub resolution: bool,
    pub lcs: bool,
    pub graphic: bool,
}

impl Sections {
    pub const ALL: Sections = Sections { lattice: true, resolution: true, lcs: true, graphic: true };
    pub const NONE: Sections = Sections { lattice: false, resolution: false, lcs: false, graphic: false };

    fn is_all(&self) -> bool {
        *self == Sections::ALL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Doc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub source: InputSource,
    pub sections: Sections,
    pub i_max: Option<usize>,
    pub j_max: Option<usize>,
    pub k_max: Option<usize>,
    pub format: Format,
}

impl AnalysisRequest {
    pub fn builtin(name: &str) -> Self {
        AnalysisRequest {
            source: InputSource::Builtin(name.into()),
            sections: Sections::ALL,
            i_max: None,
            j_max: None,
            k_max: None,
            format: Format::Doc,
        }
    }

    pub fn text(text: &str) -> Self {
        AnalysisRequest { source: InputSource::Text(text.into()), ..Self::builtin("") }
    }

    pub fn bounds(mut self, i_max: usize, j_max: usize, k_max: usize) -> Self {
        self.i_max = Some(i_max);
        self.j_max = Some(j_max);
        self.k_max = Some(k_max);
        self
    }

    pub fn sections(mut self, sections: Sections) -> Self {
        self.sections = sections;
        self
    }

    fn resolved_bounds(&self) -> Result<Bounds> {
        let i_max = self.i_max.unwrap_or(DEFAULT_I_MAX);
        let j_max = self.j_max.unwrap_or(i_max + 1);
        let k_max = self.k_max.unwrap_or(DEFAULT_K_MAX);
        if i_max == 0 || k_max == 0 {
            return Err(Error::invalid("truncation bounds must be positive"));
        }
        if j_max < 2 {
            return Err(Error::invalid("--jmax must be at least 2"));
        }
        Ok(Bounds { i_max, j_max, k_max })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub i_max: usize,
    pub j_max: usize,
    pub k_max: usize,
}

/// How a number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Exact linear algebra on the arrangement.
    Computed,
    /// A closed formula in computed quantities.
    ClosedForm,
    /// Inverting the diagonal of the residue-field resolution.
    SeriesInversion,
    /// A bound, not a value.
    Bound,
    /// A conjectural prediction.
    Conjectural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Tag,
}

fn tagged<T>(value: T, provenance: Tag) -> Tagged<T> {
    Tagged { value, provenance }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputEcho {
    Normals { rows: Vec<Vec<String>> },
    Config { n: usize, flats: Vec<Vec<usize>> },
    Graph { vertices: usize, edges: Vec<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputSummary {
    pub name: Option<String>,
    #[serde(flatten)]
    pub echo: InputEcho,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplePoint {
    pub members: Vec<usize>,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub provenance: Tag,
    pub hyperplanes: usize,
    pub rank: usize,
    pub whitney: Vec<u64>,
    pub flats_per_rank: Vec<usize>,
    pub l2_mobius: Vec<i64>,
    pub multiple_points: Vec<MultiplePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub provenance: Tag,
    pub cutoff: usize,
    pub complete: bool,
    /// `(a_2, a_3, …, a_cutoff)`.
    pub a: Vec<u64>,
    pub warnings: Vec<String>,
}

/// Rows are homological degree `i`, columns `j − i`; `None` is "not computed".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiDiagram {
    pub ring: RingTag,
    pub provenance: Tag,
    pub i_max: usize,
    pub j_max: usize,
    pub rows: Vec<Vec<Option<u64>>>,
}

impl BettiDiagram {
    fn from_table(table: &BettiTable, columns: usize) -> Self {
        let rows = (0..=table.i_max).map(|i| (0..columns).map(|c| table.get(i, i + c)).collect()).collect();
        BettiDiagram { ring: table.ring, provenance: Tag::Computed, i_max: table.i_max, j_max: table.j_max, rows }
    }

    /// `b_{ij}`, if computed.
    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        j.checked_sub(i).and_then(|c| self.rows.get(i)?.get(c).copied().flatten())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSection {
    pub over_e: BettiDiagram,
    pub over_a: Option<BettiDiagram>,
    pub linear_strand_bound: Vec<Tagged<u64>>,
    pub delta4: Option<Tagged<u64>>,
    pub delta4_upper_bound: Tagged<u64>,
    /// `dim Tor_2^E(Ā, k)_4` for the quadratic closure `Ā`.
    pub closure_tor2_4: Option<Tagged<u64>>,
    pub b34_formula: Option<Tagged<i64>>,
    pub b44_formula: Option<Tagged<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcsSection {
    #[serde(flatten)]
    pub report: LCSReport,
    pub local_sums: Vec<Tagged<i64>>,
    pub mls_prediction: Option<Tagged<Vec<i64>>>,
    pub mls_series: Option<String>,
    pub quadraticity: QuadraticityVerdict,
    pub syzygies: Option<SyzygySummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygySummary {
    pub total: usize,
    pub local: usize,
    pub all_local: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphicSection {
    pub kappa: KappaVector,
    pub chromatic_polynomial: String,
    pub whitney_from_chromatic: Vec<i64>,
    pub chordal: bool,
    /// `(m, number of induced m-cycles)`.
    pub chordless_cycles: Vec<(usize, u64)>,
    pub phi123: Tagged<(i64, i64, i64)>,
    /// `(i, i(κ_2 + κ_3))`.
    pub linear_strand: Vec<(usize, u64)>,
    pub delta4_bound: Delta4Bound,
    pub phi4: Phi4Estimate,
    pub lcs_expansion: Tagged<Vec<i64>>,
    pub chen_ranks: Tagged<Vec<(usize, i64)>>,
    pub chordal_factorization: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub mls: Option<bool>,
    pub quadratic: Option<bool>,
    pub koszul: KoszulStatus,
    pub all_local: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub input: InputSummary,
    pub bounds: Bounds,
    pub sections: Sections,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcs: Option<LcsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graphic: Option<GraphicSection>,
    pub flags: Flags,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

struct Loaded {
    name: Option<String>,
    input: Input,
    fixture: Option<Fixture>,
}

fn load(source: &InputSource) -> Result<Loaded> {
    match source {
        InputSource::Builtin(name) => {
            let f = fixture(name)?;
            Ok(Loaded { name: Some(f.name.clone()), input: f.input.clone(), fixture: Some(f) })
        }
        InputSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
            let doc = parse_document(&text)?;
            Ok(Loaded { name: doc.name, input: doc.input, fixture: None })
        }
        InputSource::Text(text) => {
            let doc = parse_document(text)?;
            Ok(Loaded { name: doc.name, input: doc.input, fixture: None })
        }
    }
}

fn echo(input: &Input) -> InputEcho {
    match input {
        Input::Normals(a) => InputEcho::Normals {
            rows: a.normals().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        },
        Input::Config(c) => InputEcho::Config { n: c.n(), flats: c.flats().to_vec() },
        Input::Graph(g) => InputEcho::Graph { vertices: g.vertices(), edges: g.edges().to_vec() },
    }
}

pub fn lattice_of(input: &Input) -> Result<IntersectionLattice> {
    match input {
        Input::Normals(a) => lattice_from_normals(a),
        Input::Config(c) => lattice_from_config(c),
        Input::Graph(g) => graphic::lattice_from_graph(g),
    }
}

fn check(checks: &mut Vec<Check>, name: &str, ok: bool, detail: impl Into<String>) {
    let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
    checks.push(Check { name: name.into(), status, detail: detail.into() });
}

fn inconclusive(checks: &mut Vec<Check>, name: &str, detail: impl Into<String>) {
    checks.push(Check { name: name.into(), status: CheckStatus::Inconclusive, detail: detail.into() });
}

/// `dim Tor_2^E(Ā, k)_4` for the quadratic closure of the ideal.
pub fn closure_tor2_degree4(ideal: &OSIdeal) -> Result<u64> {
    let closure = extend_ideal(&quadratic_closure(ideal), 4);
    Ok(resolve_over_e(&closure, 2, 4)?.table.at(2, 4))
}

/// Runs the analysis and fails with an inconsistency error if any
/// cross-check fails.
pub fn run(request: &AnalysisRequest) -> Result<Report> {
    let report = run_unchecked(request)?;
    report.ensure_consistent()?;
    Ok(report)
}

/// Runs the analysis and returns the report whatever its checks say.
pub fn run_unchecked(request: &AnalysisRequest) -> Result<Report> {
    let bounds = request.resolved_bounds()?;
    let sections = request.sections;
    let loaded = load(&request.source)?;
    let graph: Option<&Graph> = match &loaded.input {
        Input::Graph(g) => Some(g),
        _ => None,
    };
    if sections.graphic && graph.is_none() && !sections.is_all() {
        return Err(Error::precondition("graphic analysis needs a graph input"));
    }
    let want_graphic = sections.graphic && graph.is_some();
    let want_resolution = sections.resolution || sections.lcs || want_graphic;
    let want_oracle = sections.resolution || sections.lcs;

    let mut checks = Vec::new();
    let mut notes: Vec<String> = loaded.fixture.iter().flat_map(|f| f.notes.clone()).collect();
    let lattice = lattice_of(&loaded.input)?;
    let rank = lattice.rank();
    let n = lattice.n();
    let b1 = lattice.b(1);

    let cutoff = rank.min(bounds.j_max.max(bounds.k_max).max(3));
    let ideal = os_ideal(&lattice, cutoff)?;
    let a = |j: usize| ideal.a(j);
    let quadratic = if (3..=ideal.cutoff()).any(|j| a(j) > 0) {
        Some(false)
    } else if ideal.cutoff() >= rank {
        Some(true)
    } else {
        None
    };

    let mut over_e = None;
    let mut resolution = None;
    let mut delta4 = None;
    let mut syz = None;
    let mut over_a: Option<BettiTable> = None;
    if want_resolution {
        let r = resolve_over_e(&ideal, bounds.i_max, bounds.j_max)?;
        let table = r.table;
        // Hilbert series identity over E
        let hc = hilbert_identity_check(&table, &lattice);
        let through = hc.conclusive_through().unwrap_or(0);
        check(&mut checks, "hilbert-identity-E", hc.holds(), format!("coefficients through t^{through}"));
        let vanish: Vec<String> = (0..=table.i_max)
            .flat_map(|i| (i + rank.max(1)..=table.j_max).map(move |j| (i, j)))
            .filter(|&(i, j)| table.get(i, j).is_some_and(|v| v > 0))
            .map(|(i, j)| format!("b'_{i},{j}"))
            .collect();
        check(&mut checks, "tor-vanishing", vanish.is_empty(), if vanish.is_empty() { "b'_ij = 0 for j ≥ i + rank".to_string() } else { format!("nonzero: {}", vanish.join(", ")) });
        let gens: Vec<String> = (2..=table.j_max.min(ideal.cutoff()))
            .filter(|&j| table.get(1, j) != Some(a(j)))
            .map(|j| format!("j={j}: b'_1j = {:?}, a_j = {}", table.get(1, j), a(j)))
            .collect();
        check(&mut checks, "generators-b1j", gens.is_empty(), if gens.is_empty() { "b'_1j = a_j".to_string() } else { gens.join("; ") });
        let mut strand_bound = Vec::new();
        let mut strand_ok = true;
        let mut detail = String::new();
        let equal_at_2 = table.get(2, 3).map(|v| v == linear_strand_lower_bound(&lattice, 2));
        for i in 1..=bounds.i_max {
            let lb = linear_strand_lower_bound(&lattice, i);
            strand_bound.push(tagged(lb, Tag::Bound));
            if let Some(v) = table.get(i, i + 1) {
                if v < lb || (i >= 2 && equal_at_2 == Some(true) && v != lb) {
                    strand_ok = false;
                    let _ = write!(detail, "b'_{i},{} = {v} vs bound {lb}; ", i + 1);
                }
            }
        }
        check(&mut checks, "linear-strand-bound", strand_ok, if strand_ok { "b'_{i,i+1} ≥ local bound, with equality propagating".into() } else { detail });

        let d4 = if ideal.generators(2).is_empty() {
            0
        } else {
            let s = linear_syzygies(&ideal);
            let d = delta4_from(&ideal, &s);
            syz = Some(s);
            d
        };
        delta4 = Some(d4);
        let ub = delta4_upper_bound(&lattice);
        let mls = table.get(2, 3).map(|v| lcs::mls_test(&lattice, v));
        let ok = d4 <= ub && (mls != Some(true) || d4 == ub);
        check(&mut checks, "delta4-upper-bound", ok, format!("δ_4 = {d4}, pair bound {ub}"));

        let closure = if sections.resolution { Some(closure_tor2_degree4(&ideal)?) } else { None };
        if want_oracle {
            let t = resolve_k_over_a(&ideal, bounds.k_max, bounds.k_max)?;
            let ec = euler_identity_check(&t, &lattice);
            check(&mut checks, "euler-identity-A", ec.holds(), format!("coefficients through t^{}", ec.conclusive_through().unwrap_or(0)));
            if let Some(b22) = t.get(2, 2) {
                let want = binomial(b1 as i64 + 1, 2) as u64 + a(2);
                check(&mut checks, "b22", b22 == want, format!("b_22 = {b22}, C(b_1+1,2) + a_2 = {want}"));
            }
            let mism: Vec<String> = (3..=t.j_max.min(ideal.cutoff()))
                .filter(|&j| t.get(2, j).is_some_and(|v| v != a(j)))
                .map(|j| format!("b_2{j} = {:?} but a_{j} = {}", t.get(2, j), a(j)))
                .collect();
            check(&mut checks, "b2j-equals-aj", mism.is_empty(), if mism.is_empty() { "b_2j = a_j for j ≥ 3".to_string() } else { mism.join("; ") });
            over_a = Some(t);
        }
        let b34f = table.get(2, 4).map(|b24| tagged(b34_formula(b24, d4, b1, a(3)), Tag::ClosedForm));
        let b44f = match (table.get(2, 3), table.get(3, 4)) {
            (Some(b23), Some(b34)) => Some(tagged(b44_formula(a(2), b1, b23, b34, d4), Tag::ClosedForm)),
            _ => None,
        };
        if let Some(t) = &over_a {
            for (name, formula, got) in [("b34-formula", &b34f, t.get(3, 4)), ("b44-formula", &b44f, t.get(4, 4))] {
                if let (Some(f), Some(g)) = (formula, got) {
                    check(&mut checks, name, f.value == g as i64, format!("formula {}, resolution {g}", f.value));
                }
            }
        }
        let columns_e = rank.max(2).min(bounds.j_max + 1);
        resolution = Some(ResolutionSection {
            over_e: BettiDiagram::from_table(&table, columns_e),
            over_a: over_a.as_ref().map(|t| BettiDiagram::from_table(t, t.j_max.max(1))),
            linear_strand_bound: strand_bound,
            delta4: Some(tagged(d4, Tag::Computed)),
            delta4_upper_bound: tagged(ub, Tag::Bound),
            closure_tor2_4: closure.map(|v| tagged(v, Tag::Computed)),
            b34_formula: b34f,
            b44_formula: b44f,
        });
        over_e = Some(table);
    }

    let b_e = |i: usize, j: usize| over_e.as_ref().and_then(|t| t.get(i, j));
    let mls = b_e(2, 3).map(|v| lcs::mls_test(&lattice, v));
    let chordal = graph.map(graphic::is_chordal);
    let koszul = match lcs::koszul_tests(a(3), b_e(2, 4), delta4, chordal) {
        // a Koszul algebra is quadratic
        _ if quadratic == Some(false) => KoszulStatus::NotKoszul,
        k => k,
    };
    if let (Some(true), Some(false)) = (chordal, quadratic) {
        check(&mut checks, "chordal-quadratic", false, "chordal graph with a non-quadratic ideal");
    }

    // LCS ranks
    let mut lcs_section = None;
    let mut all_local = None;
    let mut phi_entries: Vec<PhiEntry> = Vec::new();
    if sections.lcs || want_graphic {
        let (p1, p2, p3) = lcs::phi_123(&lattice, &ideal);
        for (k, v) in [(1, p1), (2, p2), (3, p3)] {
            phi_entries.push(PhiEntry { k, value: v, provenance: Provenance::ClosedForm });
        }
        if let (Some(b34), Some(d4)) = (b_e(3, 4), delta4) {
            phi_entries.push(PhiEntry { k: 4, value: lcs::phi4(a(2), b34, d4), provenance: Provenance::ClosedForm });
        }
        phi_entries.retain(|e| e.k <= bounds.k_max);
        if let Some(t) = &over_a {
            let diag = IntegerSeries::new((0..=bounds.k_max).map(|i| t.get(i, i).unwrap_or(0) as i128).collect(), bounds.k_max);
            for (k, v) in lcs::lcs_from_diagonal(&diag)?.into_iter().enumerate() {
                phi_entries.push(PhiEntry { k: k + 1, value: v, provenance: Provenance::SeriesInversion });
            }
        }
    }
    if sections.lcs {
        let known = phi_entries.iter().map(|e| e.k).max().unwrap_or(0);
        let mls_prediction = if mls == Some(true) { Some(lcs::mls_lcs_prediction(&lattice, bounds.k_max)?) } else { None };
        let conjectural: Option<Vec<i64>> = match (graph, &mls_prediction) {
            (Some(g), _) => Some(graphic::graphic_lcs_expansion(&graphic::kappa(g)?, bounds.k_max)),
            (None, Some(p)) => Some(p.phi.clone()),
            _ => None,
        };
        if let Some(c) = conjectural {
            for k in known + 1..=bounds.k_max {
                phi_entries.push(PhiEntry { k, value: c[k - 1], provenance: Provenance::Conjectural });
            }
        }
        let report = LCSReport { phi: phi_entries.clone(), is_mls: mls, is_quadratic: quadratic, koszul_status: koszul };
        let dis = report.disagreements();
        check(
            &mut checks,
            "phi-dual-route",
            dis.is_empty(),
            if dis.is_empty() {
                "closed forms agree with series inversion".to_string()
            } else {
                dis.iter().map(|(k, x, y)| format!("φ_{k}: {x} vs {y}")).collect::<Vec<_>>().join("; ")
            },
        );
        let mut local_sums = Vec::new();
        let mut falk = Vec::new();
        for k in 3..=bounds.k_max.min(4) {
            let s = lcs::local_sum(&lattice, k as u64);
            local_sums.push(tagged(s, Tag::Bound));
            if let Some(v) = report.best(k) {
                if v < s {
                    falk.push(format!("φ_{k} = {v} < {s}"));
                }
                if k == 4 && mls == Some(true) && v != s {
                    falk.push(format!("MLS but φ_4 = {v} ≠ local sum {s}"));
                }
            }
        }
        check(&mut checks, "falk-bound", falk.is_empty(), if falk.is_empty() { "φ_k ≥ local sums".to_string() } else { falk.join("; ") });
        let quadraticity = lcs::quadraticity_test(&lattice, a(2), a(3), lattice.b(3));
        if quadraticity.criterion_certifies && quadratic == Some(true) {
            check(&mut checks, "quadraticity-criterion", false, "criterion certifies non-quadratic but a_j = 0 for j ≥ 3");
        }
        let syzygies = syz.as_ref().map(|s| {
            let loc = lcs::syzygy_locality(&ideal, &lattice, s);
            SyzygySummary { total: loc.total_dim, local: loc.local_dim, all_local: loc.all_local }
        });
        all_local = syzygies.as_ref().map(|s| s.all_local);
        lcs_section = Some(LcsSection {
            report,
            local_sums,
            mls_series: mls_prediction.as_ref().map(|p| p.product.to_string()),
            mls_prediction: mls_prediction.map(|p| tagged(p.phi, Tag::Conjectural)),
            quadraticity,
            syzygies,
        });
    }

    // graphic
    let mut graphic_section = None;
    if let (true, Some(g)) = (want_graphic, graph) {
        let kv = graphic::kappa(g)?;
        let chi = graphic::chromatic_polynomial(g)?;
        let wc: Vec<i64> = graphic::whitney_from_chromatic(&chi, g.vertices()).iter().map(|&x| x as i64).collect();
        let wl: Vec<i64> = lattice.whitney().iter().map(|&x| x as i64).collect();
        check(&mut checks, "graphic-whitney", wc == wl, format!("chromatic {wc:?}, lattice {wl:?}"));
        check(&mut checks, "graphic-a2", a(2) == kv.get(2), format!("a_2 = {}, κ_2 = {}", a(2), kv.get(2)));
        let mut cycles = Vec::new();
        let mut bad = Vec::new();
        for j in 3..=ideal.cutoff() {
            let c = graphic::chordless_cycles(g, j + 1)?;
            cycles.push((j + 1, c));
            if c != a(j) {
                bad.push(format!("a_{j} = {} but {c} induced {}-cycles", a(j), j + 1));
            }
        }
        check(&mut checks, "graphic-chordless-cycles", bad.is_empty(), if bad.is_empty() { "a_j = induced (j+1)-cycles".to_string() } else { bad.join("; ") });
        let chordal = graphic::is_chordal(g);
        if ideal.cutoff() >= rank {
            let q = (3..=rank).all(|j| a(j) == 0);
            check(&mut checks, "graphic-chordal-quadratic", q == chordal, format!("chordal {chordal}, quadratic {q}"));
        }
        let phi123 = graphic::graphic_phi123(&kv);
        let (c1, c2, c3) = lcs::phi_123(&lattice, &ideal);
        check(&mut checks, "graphic-phi123", phi123 == (c1, c2, c3), format!("κ-formula {phi123:?}, lattice {:?}", (c1, c2, c3)));
        let mut strand = Vec::new();
        let mut bad = Vec::new();
        for i in 2..=bounds.i_max {
            let v = graphic::graphic_linear_strand(&kv, i)?;
            strand.push((i, v));
            if let Some(got) = b_e(i, i + 1) {
                if got != v {
                    bad.push(format!("b'_{i},{} = {got}, formula {v}", i + 1));
                }
            }
        }
        check(&mut checks, "graphic-linear-strand", bad.is_empty(), if bad.is_empty() { "b'_{i,i+1} = i(κ_2+κ_3)".to_string() } else { bad.join("; ") });
        let bound = graphic::graphic_delta4_bound(&kv);
        if let Some(d4) = delta4 {
            check(&mut checks, "graphic-delta4-bound", bound.clamped || d4 <= bound.value, format!("δ_4 = {d4}, bound {}", bound.raw));
        }
        let direct = phi_entries.iter().find(|e| e.k == 4 && e.provenance == Provenance::ClosedForm).map(|e| e.value);
        let phi4 = match graphic::graphic_phi4(&kv, direct) {
            Ok(p) => p,
            Err(Error::Inconsistency(m)) => {
                check(&mut checks, "graphic-phi4", false, m);
                graphic::graphic_phi4(&kv, None)?
            }
            Err(e) => return Err(e),
        };
        let expansion = graphic::graphic_lcs_expansion(&kv, bounds.k_max);
        let factorization = if chordal {
            let ok = graphic::chordal_chromatic_check(g)?;
            check(&mut checks, "graphic-chordal-factorization", ok, "χ_G = t^{κ_0−Σe_j} ∏ (t − j)^{e_j}");
            let exact: Vec<(usize, i64)> = phi_entries
                .iter()
                .filter(|e| e.provenance != Provenance::Conjectural)
                .map(|e| (e.k, e.value))
                .collect();
            let bad: Vec<String> = exact
                .iter()
                .filter(|&&(k, v)| expansion[k - 1] != v)
                .map(|(k, v)| format!("φ_{k} = {v}, expansion {}", expansion[k - 1]))
                .collect();
            check(&mut checks, "graphic-chordal-lcs", bad.is_empty(), if bad.is_empty() { "expansion equals exact φ".to_string() } else { bad.join("; ") });
            Some(ok)
        } else {
            None
        };
        let chen: Vec<(usize, i64)> =
            (3..=bounds.k_max.max(3)).map(|k| Ok((k, graphic::chen_ranks_prediction(&kv, k)?))).collect::<Result<_>>()?;
        graphic_section = Some(GraphicSection {
            kappa: kv,
            chromatic_polynomial: chi.to_string(),
            whitney_from_chromatic: wc,
            chordal,
            chordless_cycles: cycles,
            phi123: tagged(phi123, Tag::ClosedForm),
            linear_strand: strand,
            delta4_bound: bound,
            phi4,
            lcs_expansion: tagged(expansion, Tag::Conjectural),
            chen_ranks: tagged(chen, Tag::Conjectural),
            chordal_factorization: factorization,
        });
    }

    notes.extend(ideal.warnings().iter().cloned());
    let lattice_summary = sections.lattice.then(|| LatticeSummary {
        provenance: Tag::Computed,
        hyperplanes: n,
        rank,
        whitney: lattice.whitney().to_vec(),
        flats_per_rank: (0..=rank).map(|r| lattice.flats_of_rank(r).len()).collect(),
        l2_mobius: lattice.l2_mobius(),
        multiple_points: lattice.multiple_points().iter().map(|f| MultiplePoint { members: f.indices(), mu: f.mobius }).collect(),
    });
    let ideal_summary = (sections.lattice || sections.resolution).then(|| IdealSummary {
        provenance: Tag::Computed,
        cutoff: ideal.cutoff(),
        complete: ideal.cutoff() >= rank,
        a: ideal.a_vector(),
        warnings: ideal.warnings().to_vec(),
    });
    let mut report = Report {
        schema: SCHEMA,
        input: InputSummary { name: loaded.name, echo: echo(&loaded.input) },
        bounds,
        sections,
        lattice: lattice_summary,
        ideal: ideal_summary,
        resolution: resolution.filter(|_| sections.resolution),
        lcs: lcs_section,
        graphic: graphic_section,
        flags: Flags { mls, quadratic, koszul, all_local },
        checks,
        notes,
    };
    if let Some(f) = &loaded.fixture {
        report.check_golden(f);
    }
    Ok(report)
}

impl Report {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect()
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        let f = self.failures();
        if f.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = f.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        Err(Error::inconsistency(format!("cross-checks failed: {}", parts.join(" | "))))
    }

    /// `b'_{ij}` over `E`.
    pub fn betti_e(&self, i: usize, j: usize) -> Option<u64> {
        self.resolution.as_ref()?.over_e.get(i, j)
    }

    /// `b_{ij}` over `A`.
    pub fn betti_a(&self, i: usize, j: usize) -> Option<u64> {
        self.resolution.as_ref()?.over_a.as_ref()?.get(i, j)
    }

    pub fn phi(&self, k: usize) -> Option<i64> {
        self.lcs.as_ref()?.report.best(k)
    }

    pub fn delta4(&self) -> Option<u64> {
        self.resolution.as_ref()?.delta4.as_ref().map(|t| t.value)
    }

    /// Looks up a value by the keys used in fixture golden data.
    pub fn lookup(&self, key: &str) -> Option<GoldenValue> {
        let ints = |v: Vec<i64>| Some(GoldenValue::Ints(v));
        let int = |v: i64| Some(GoldenValue::Int(v));
        let two_digits = |s: &str| -> Option<(usize, usize)> {
            let s = s.trim_start_matches('{').trim_end_matches('}');
            let (i, j) = match s.split_once(',') {
                Some((i, j)) => (i.parse().ok()?, j.parse().ok()?),
                None if s.len() == 2 => (s[..1].parse().ok()?, s[1..].parse().ok()?),
                None => return None,
            };
            Some((i, j))
        };
        if let Some(rest) = key.strip_prefix("b'_") {
            let (i, j) = two_digits(rest)?;
            return int(self.betti_e(i, j)? as i64);
        }
        if let Some(rest) = key.strip_prefix("b_") {
            let (i, j) = two_digits(rest)?;
            return int(self.betti_a(i, j)? as i64);
        }
        match key {
            "b" => ints(self.lattice.as_ref()?.whitney.iter().map(|&x| x as i64).collect()),
            "a" => ints(self.ideal.as_ref()?.a.iter().map(|&x| x as i64).collect()),
            "mu-l2'" => ints(self.lattice.as_ref()?.multiple_points.iter().map(|p| p.mu).collect::<Vec<_>>()).map(|v| match v {
                GoldenValue::Ints(mut x) => {
                    x.sort_unstable();
                    GoldenValue::Ints(x)
                }
                other => other,
            }),
            "delta4" => int(self.delta4()? as i64),
            "phi" => ints((1..=4).map(|k| self.phi(k)).collect::<Option<Vec<_>>>()?),
            "phi-mls" => ints(self.lcs.as_ref()?.mls_prediction.as_ref()?.value.clone()),
            "mls" => Some(GoldenValue::Flag(self.flags.mls?)),
            "quadratic" => Some(GoldenValue::Flag(self.flags.quadratic?)),
            "koszul" => Some(GoldenValue::Label(
                serde_json::to_value(self.flags.koszul).ok()?.as_str()?.to_string(),
            )),
            "chordal" => Some(GoldenValue::Flag(self.graphic.as_ref()?.chordal)),
            "kappa" => ints(self.graphic.as_ref()?.kappa.values().iter().map(|&x| x as i64).collect()),
            "tor2-closure-4" => int(self.resolution.as_ref()?.closure_tor2_4.as_ref()?.value as i64),
            _ => {
                if let Some(k) = key.strip_prefix("phi").and_then(|s| s.parse::<usize>().ok()) {
                    return int(self.phi(k)?);
                }
                if let Some(s) = key.strip_prefix("kappa").and_then(|s| s.parse::<usize>().ok()) {
                    return int(self.graphic.as_ref()?.kappa.get(s) as i64);
                }
                if let Some(j) = key.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
                    let ideal = self.ideal.as_ref()?;
                    return (2..=ideal.cutoff).contains(&j).then(|| GoldenValue::Int(ideal.a[j - 2] as i64));
                }
                None
            }
        }
    }

    fn check_golden(&mut self, f: &Fixture) {
        for g in &f.golden {
            match self.lookup(&g.quantity) {
                Some(v) => {
                    let ok = v == g.value;
                    let detail = format!("expected {}, got {v}", g.value);
                    check(&mut self.checks, &format!("fixture:{}", g.quantity), ok, detail);
                }
                None => inconclusive(&mut self.checks, &format!("fixture:{}", g.quantity), "not computed under these bounds or sections"),
            }
        }
    }

    /// Canonical JSON rendering.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Doc => self.to_json() + "\n",
            Format::Table => self.to_table(),
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let name = self.input.name.as_deref().unwrap_or("(unnamed)");
        let kind = match &self.input.echo {
            InputEcho::Normals { rows } => format!("{} normals", rows.len()),
            InputEcho::Config { n, flats } => format!("configuration of {n} lines, {} multiple points", flats.len()),
            InputEcho::Graph { vertices, edges } => format!("graph on {vertices} vertices, {} edges", edges.len()),
        };
        let _ = writeln!(out, "{name}: {kind}");
        let b = self.bounds;
        let _ = writeln!(out, "bounds: i ≤ {}, j ≤ {}, k ≤ {}", b.i_max, b.j_max, b.k_max);
        if let Some(l) = &self.lattice {
            let _ = writeln!(out, "\nlattice: {} hyperplanes, rank {}", l.hyperplanes, l.rank);
            let _ = writeln!(out, "  Whitney numbers b = {}", list(&l.whitney));
            let _ = writeln!(out, "  flats per rank   = {}", list(&l.flats_per_rank));
            let mps: Vec<String> = l.multiple_points.iter().map(|p| format!("{}:{}", braces(&p.members), p.mu)).collect();
            let _ = writeln!(out, "  multiple points (members:μ) = [{}]", mps.join(" "));
        }
        if let Some(i) = &self.ideal {
            let _ = writeln!(out, "\nOrlik-Solomon ideal through degree {}{}", i.cutoff, if i.complete { "" } else { " (truncated)" });
            let _ = writeln!(out, "  a = (a_2, a_3, …) = {}", list(&i.a));
        }
        if let Some(r) = &self.resolution {
            out.push('\n');
            out.push_str(&diagram(&r.over_e, "Tor^E_i(A,k)_j"));
            let strand: Vec<u64> = r.linear_strand_bound.iter().map(|t| t.value).collect();
            let _ = writeln!(out, "  local bound on b'_{{i,i+1}} (i = 1..) = {}", list(&strand));
            if let Some(d) = &r.delta4 {
                let _ = writeln!(out, "  δ_4 = {}  (pair bound {})", d.value, r.delta4_upper_bound.value);
            }
            if let Some(c) = &r.closure_tor2_4 {
                let _ = writeln!(out, "  dim Tor_2^E(Ā,k)_4 of the quadratic closure = {}", c.value);
            }
            if let Some(a) = &r.over_a {
                out.push('\n');
                out.push_str(&diagram(a, "Tor^A_i(k,k)_j"));
            }
            if let Some(f) = &r.b34_formula {
                let _ = writeln!(out, "  b_34 by formula = {}", f.value);
            }
            if let Some(f) = &r.b44_formula {
                let _ = writeln!(out, "  b_44 by formula = {}", f.value);
            }
        }
        if let Some(l) = &self.lcs {
            let _ = writeln!(out, "\nLCS ranks");
            for e in &l.report.phi {
                let tag = serde_json::to_value(e.provenance).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let _ = writeln!(out, "  φ_{} = {:<8} [{tag}]", e.k, e.value);
            }
            let sums: Vec<i64> = l.local_sums.iter().map(|t| t.value).collect();
            let _ = writeln!(out, "  local sums (k = 3..) = {}", list(&sums));
            if let Some(p) = &l.mls_prediction {
                let _ = writeln!(out, "  local prediction φ = {}  from {}", list(&p.value), l.mls_series.as_deref().unwrap_or(""));
            }
            let q = &l.quadraticity;
            let _ = writeln!(out, "  quadraticity criterion = {} ({})", q.criterion, if q.criterion_certifies { "certifies non-quadratic" } else { "inconclusive" });
            if let Some(s) = &l.syzygies {
                let _ = writeln!(out, "  linear syzygies on I_2: {} total, {} local", s.total, s.local);
            }
        }
        if let Some(g) = &self.graphic {
            let _ = writeln!(out, "\ngraphic");
            let _ = writeln!(out, "  κ = {}", g.kappa);
            let _ = writeln!(out, "  χ_G(t) = {}", g.chromatic_polynomial);
            let _ = writeln!(out, "  chordal = {}", g.chordal);
            let cyc: Vec<String> = g.chordless_cycles.iter().map(|(m, c)| format!("{m}:{c}")).collect();
            let _ = writeln!(out, "  induced cycles (length:count) = [{}]", cyc.join(" "));
            let (p1, p2, p3) = g.phi123.value;
            let _ = writeln!(out, "  (φ_1, φ_2, φ_3) from κ = ({p1}, {p2}, {p3})");
            let _ = writeln!(out, "  δ_4 ≤ {}{}", g.delta4_bound.raw, if g.delta4_bound.clamped { " (vacuous)" } else { "" });
            let _ = writeln!(
                out,
                "  φ_4 ≥ {}{}",
                g.phi4.lower_bound,
                g.phi4.exact.map(|e| format!(", exact {e}")).unwrap_or_default()
            );
            let _ = writeln!(out, "  conjectural φ = {}", list(&g.lcs_expansion.value));
            let chen: Vec<String> = g.chen_ranks.value.iter().map(|(k, v)| format!("θ_{k}={v}")).collect();
            let _ = writeln!(out, "  conjectural Chen ranks: {}", chen.join(" "));
        }
        let f = &self.flags;
        let _ = writeln!(
            out,
            "\nflags: MLS {}, quadratic {}, Koszul {}, all local {}",
            opt(f.mls),
            opt(f.quadratic),
            serde_json::to_value(f.koszul).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            opt(f.all_local)
        );
        let _ = writeln!(out, "\nchecks");
        for c in &self.checks {
            let s = match c.status {
                CheckStatus::Pass => "ok  ",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Inconclusive => "--  ",
            };
            let _ = writeln!(out, "  {s} {:<32} {}", c.name, c.detail);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

fn opt(b: Option<bool>) -> String {
    b.map_or("?".into(), |b| b.to_string())
}

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

fn braces(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn diagram(d: &BettiDiagram, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}: rows i, columns j − i ('.' zero, '?' not computed)");
    let cells: Vec<Vec<String>> = d
        .rows
        .iter()
        .map(|r| r.iter().map(|c| c.map_or("?".into(), |v| if v == 0 { ".".into() } else { v.to_string() })).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(2);
    let columns = d.rows.first().map_or(0, Vec::len);
    let _ = write!(out, "      ");
    for c in 0..columns {
        let _ = write!(out, " {c:>width$}");
    }
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        let _ = write!(out, "  {i:>2}: ");
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x3_report() {
        let r = run(&AnalysisRequest::builtin("x3")).unwrap();
        assert_eq!(r.lookup("a"), Some(GoldenValue::Ints(vec![3, 1])));
        assert_eq!(r.lookup("b'_23"), Some(GoldenValue::Int(6)));
        assert_eq!(r.lookup("phi"), Some(GoldenValue::Ints(vec![6, 3, 6, 9])));
        assert_eq!(r.flags.mls, Some(true));
        assert!(r.checks.iter().all(|c| c.status != CheckStatus::Fail));
    }

    #[test]
    fn deterministic_output() {
        let req = AnalysisRequest::builtin("k4-braid");
        assert_eq!(run(&req).unwrap().to_json(), run(&req).unwrap().to_json());
    }

    #[test]
    fn tree_document() {
        let r = run(&AnalysisRequest::text("graph: {vertices: 4, edges: [[0,1],[1,2],[1,3]]}")).unwrap();
        assert_eq!(r.lookup("phi"), Some(GoldenValue::Ints(vec![3, 0, 0, 0])));
        assert_eq!(r.flags.koszul, KoszulStatus::Koszul);
        assert_eq!(r.graphic.as_ref().unwrap().chordal, true);
    }
}
