//! One PASS/FAIL line per acceptance criterion, written straight to stdout
//! so the lines survive output capture. The test fails if any criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use hyperplane_lcs::arrangement::{binomial, IntersectionLattice};
use hyperplane_lcs::exterior::GradedElement;
use hyperplane_lcs::fixtures::fixture;
use hyperplane_lcs::graphic::{
    chordless_cycles, graphic_lcs_expansion, is_chordal, kappa, lattice_from_graph, Graph, KappaVector,
};
use hyperplane_lcs::harness::graph_classes;
use hyperplane_lcs::lcs::{
    diagonal_from_phi, koszul_tests, lcs_from_diagonal, local_sum, mls_lcs_prediction, mls_test, phi4, phi_123,
    quadraticity_test, syzygy_locality, verify_decomposable, KoszulStatus,
};
use hyperplane_lcs::os_ideal::{os_ideal, OSIdeal};
use hyperplane_lcs::report::{closure_tor2_degree4, lattice_of};
use hyperplane_lcs::resolution::{
    b34_formula, b44_formula, compose_is_zero, delta4, hilbert_identity_check, linear_strand_lower_bound,
    linear_syzygies, resolve_k_over_a, resolve_k_over_a_with, resolve_k_over_e, resolve_over_e,
    resolve_over_e_with, BettiTable, ExteriorAlgebra, QuotientAlgebra, ResolutionOptions,
};
use hyperplane_lcs::series::IntegerSeries;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! expect_eq {
    ($what:expr, $got:expr, $want:expr) => {{
        let (got, want) = ($got, $want);
        if got != want {
            return Err(format!("{}: expected {:?}, got {:?}", $what, want, got));
        }
    }};
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Setup {
    lattice: IntersectionLattice,
    ideal: OSIdeal,
}

fn setup(name: &str, cutoff: usize) -> Result<Setup, String> {
    let f = fixture(name).map_err(err)?;
    let lattice = lattice_of(&f.input).map_err(err)?;
    let ideal = os_ideal(&lattice, cutoff).map_err(err)?;
    Ok(Setup { lattice, ideal })
}

fn e_table(s: &Setup, i: usize, j: usize) -> Result<BettiTable, String> {
    Ok(resolve_over_e(&s.ideal, i, j).map_err(err)?.table)
}

fn oracle_phi(s: &Setup, k: usize) -> Result<Vec<i64>, String> {
    let table = resolve_k_over_a(&s.ideal, k, k).map_err(err)?;
    let diag = IntegerSeries::new((0..=k).map(|i| table.at(i, i) as i128).collect(), k);
    lcs_from_diagonal(&diag).map_err(err)
}

fn closed_phi(s: &Setup) -> Result<Vec<i64>, String> {
    let t = e_table(s, 3, 4)?;
    let (p1, p2, p3) = phi_123(&s.lattice, &s.ideal);
    Ok(vec![p1, p2, p3, phi4(s.ideal.a(2), t.at(3, 4), delta4(&s.ideal))])
}

fn criterion_1() -> Outcome {
    let s = setup("pencil3", 3)?;
    let t = e_table(&s, 4, 5)?;
    for i in 1..=4 {
        expect_eq!(format!("pencil3 b'_{i},{}", i + 1), t.at(i, i + 1), i as u64);
    }
    for m in 3..=7 {
        let s = setup(&format!("pencil({m})"), 3)?;
        let t = e_table(&s, 3, 4)?;
        let n = (m - 1) as i64;
        for i in 1..=3i64 {
            let want = (i * binomial(n + i - 1, i + 1)) as u64;
            expect_eq!(format!("pencil({m}) b'_{i},{}", i + 1), t.at(i as usize, i as usize + 1), want);
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let s = setup("x3", 4)?;
    expect_eq!("a_2", s.ideal.a(2), 3);
    expect_eq!("a_3", s.ideal.a(3), 1);
    let t = e_table(&s, 3, 5)?;
    for i in 1..=3u64 {
        let iu = i as usize;
        expect_eq!(format!("b'_{i},{}", i + 1), t.at(iu, iu + 1), 3 * i);
        expect_eq!(format!("b'_{i},{}", i + 2), t.at(iu, iu + 2), i * (i + 1) * (i * i + 5 * i - 2) / 8);
    }
    expect_eq!("MLS", mls_test(&s.lattice, t.at(2, 3)), true);
    let q = quadraticity_test(&s.lattice, s.ideal.a(2), s.ideal.a(3), s.lattice.b(3));
    expect_eq!("quadraticity certificate", q.criterion_certifies, true);
    let closed = closed_phi(&s)?;
    expect_eq!("φ by closed forms", closed.clone(), vec![6, 3, 6, 9]);
    expect_eq!("φ_4 as a local sum", local_sum(&s.lattice, 4), 9);
    expect_eq!("φ by series inversion", oracle_phi(&s, 4)?, closed);
    Ok(())
}

fn criterion_3() -> Outcome {
    let s = setup("k4-braid", 4)?;
    let t = e_table(&s, 3, 4)?;
    expect_eq!("b'_23", t.at(2, 3), 10);
    expect_eq!("b'_24", t.at(2, 4), 0);
    expect_eq!("b'_12 = a_2", t.at(1, 2), 4);
    for i in 2..=3u64 {
        expect_eq!(format!("b'_{i},{}", i + 1), t.at(i as usize, i as usize + 1), 5 * i);
    }
    expect_eq!("δ_4", delta4(&s.ideal), 0);
    let phi = closed_phi(&s)?;
    expect_eq!("φ_3", phi[2], 10);
    expect_eq!("φ_4", phi[3], 21);
    let g = Graph::complete(4);
    let chordal = is_chordal(&g);
    expect_eq!("chordal", chordal, true);
    expect_eq!("koszul", koszul_tests(s.ideal.a(3), Some(t.at(2, 4)), Some(0), Some(chordal)), KoszulStatus::Koszul);
    let syz = linear_syzygies(&s.ideal);
    let loc = syzygy_locality(&s.ideal, &s.lattice, &syz);
    expect_eq!("non-local linear syzygies", loc.total_dim - loc.local_dim, 2);
    let eta1 = GradedElement::linear(&[1, -1, 0, -1, 0, 1]);
    let eta2 = GradedElement::linear(&[1, 0, -1, 0, -1, 1]);
    expect_eq!("η_1 ∧ η_2 in I_2", verify_decomposable(&eta1, &eta2, &s.ideal).map_err(err)?, true);
    Ok(())
}

fn criterion_4() -> Outcome {
    let s = setup("x2", 4)?;
    expect_eq!("b", s.lattice.whitney().to_vec(), vec![1, 7, 16, 10]);
    expect_eq!("a_3", s.ideal.a(3), 0);
    let t = e_table(&s, 3, 4)?;
    expect_eq!("b'_24", t.at(2, 4), 15);
    let d4 = delta4(&s.ideal);
    expect_eq!("δ_4", d4, 10);
    let a = resolve_k_over_a(&s.ideal, 4, 4).map_err(err)?;
    expect_eq!("oracle b_34", a.at(3, 4), 5);
    expect_eq!("koszul", koszul_tests(0, Some(t.at(2, 4)), Some(d4), None), KoszulStatus::NotKoszul);
    let formula = b44_formula(s.ideal.a(2), 7, t.at(2, 3), t.at(3, 4), d4);
    expect_eq!("b_44 by formula", formula, 450);
    expect_eq!("oracle b_44", a.at(4, 4) as i64, formula);
    expect_eq!("φ_3", closed_phi(&s)?[2], 10);
    let f = fixture("x2").map_err(err)?;
    if !f.notes.iter().chain(f.golden.iter().filter_map(|g| g.note.as_ref())).any(|n| n.contains('6')) {
        return Err("x2 fixture carries no note on the printed φ_3".into());
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let a = setup("fan-a", 4)?;
    let b = setup("fan-b", 4)?;
    expect_eq!("fan-a Tor_2(Ā)_4", closure_tor2_degree4(&a.ideal).map_err(err)?, 3);
    expect_eq!("fan-b Tor_2(Ā)_4", closure_tor2_degree4(&b.ideal).map_err(err)?, 4);
    let n = 4;
    let product = IntegerSeries::new(vec![1, -1], n).mul(&IntegerSeries::binomial_factor(2, 1, 3, n));
    expect_eq!("(1−t)(1−2t)^3", product.coeffs().to_vec(), vec![1, -7, 18, -20, 8]);
    for s in [&a, &b] {
        let p = mls_lcs_prediction(&s.lattice, n).map_err(err)?;
        expect_eq!("local product", p.product.coeffs().to_vec(), product.coeffs().to_vec());
        expect_eq!("φ_1..4", closed_phi(s)?, p.phi.clone());
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (name, a3, mls) in [("pappus-93-1", 4, false), ("pappus-93-2", 2, true)] {
        let s = setup(name, 3)?;
        expect_eq!(format!("{name} a_3"), s.ideal.a(3), a3);
        let t = e_table(&s, 2, 3)?;
        expect_eq!(format!("{name} MLS"), mls_test(&s.lattice, t.at(2, 3)), mls);
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let graphs = graph_classes(6).map_err(err)?;
    expect_eq!("graphs on ≤ 6 vertices", graphs.len(), 1 + 2 + 4 + 11 + 34 + 156);
    for g in &graphs {
        let kv = kappa(g).map_err(err)?;
        let (k2, k3) = (kv.get(2) as i64, kv.get(3) as i64);
        let lattice = lattice_from_graph(g).map_err(err)?;
        let ideal = os_ideal(&lattice, 4).map_err(err)?;
        let at = |what: &str| format!("{g}: {what}");
        expect_eq!(at("a_2"), ideal.a(2), kv.get(2));
        for j in 3..=4 {
            let want = if j <= ideal.cutoff() { chordless_cycles(g, j + 1).map_err(err)? } else { 0 };
            expect_eq!(at(&format!("a_{j}")), ideal.a(j), want);
        }
        let (_, _, p3) = phi_123(&lattice, &ideal);
        expect_eq!(at("φ_3"), p3, 2 * (k2 + k3));
        let t = resolve_over_e(&ideal, 3, 4).map_err(err)?.table;
        for i in 2..=3 {
            expect_eq!(at(&format!("b'_{i},{}", i + 1)), t.at(i, i + 1) as i64, i as i64 * (k2 + k3));
        }
        if k3 == 0 {
            let p4 = phi4(ideal.a(2), t.at(3, 4), delta4(&ideal));
            expect_eq!(at("φ_4"), p4, 3 * k2);
            let s = Setup { lattice, ideal };
            expect_eq!(at("oracle φ_4"), oracle_phi(&s, 4)?[3], 3 * k2);
        }
    }
    let s = setup("fig5-graph", 4)?;
    expect_eq!("fig5 φ_4", closed_phi(&s)?[3], 12);
    Ok(())
}

fn criterion_8() -> Outcome {
    // (κ_2, κ_3, κ_4, κ_5, κ_6) → (φ_3, φ_4, φ_5, φ_6)
    let listed = |k: [i64; 5]| {
        [
            2 * (k[0] + k[1]),
            3 * (k[0] + 3 * k[1] + 2 * k[2]),
            6 * (k[0] + 5 * k[1] + 8 * k[2] + 4 * k[3]),
            9 * k[0] + 89 * k[1] + 260 * k[2] + 300 * k[3] + 120 * k[4],
        ]
    };
    for s in 0..5 {
        let mut basis = [0i64; 5];
        basis[s] = 1;
        let mut values = vec![0u64; 7];
        values[s + 2] = 1;
        let expansion = graphic_lcs_expansion(&KappaVector::new(values), 6);
        expect_eq!(format!("coefficient of κ_{}", s + 2), expansion[2..6].to_vec(), listed(basis).to_vec());
    }
    Ok(())
}

fn property_checks(name: &str, s: &Setup) -> Outcome {
    let n = s.lattice.n();
    let rank = s.lattice.rank();
    let opts = ResolutionOptions { last_map: true, ..ResolutionOptions::default() };
    let res = resolve_over_e_with(&s.ideal, 3, 4, opts).map_err(err)?;
    let ring = ExteriorAlgebra::new(n);
    for (i, w) in res.maps.windows(2).enumerate() {
        expect_eq!(format!("{name}: d_{} d_{} = 0 over E", i + 1, i + 2), compose_is_zero(&ring, &w[1], &w[0], 4), true);
    }
    expect_eq!(format!("{name}: minimal over E"), res.maps.iter().all(|m| m.is_minimal()), true);
    expect_eq!(format!("{name}: Hilbert identity"), hilbert_identity_check(&res.table, &s.lattice).holds(), true);
    for i in 1..=3 {
        for j in i + rank.max(1)..=4 {
            expect_eq!(format!("{name}: b'_{i}{j} vanishes"), res.table.at(i, j), 0);
        }
    }
    let bounds: Vec<u64> = (1..=3).map(|i| linear_strand_lower_bound(&s.lattice, i)).collect();
    for i in 1..=3 {
        if res.table.at(i, i + 1) < bounds[i - 1] {
            return Err(format!("{name}: b'_{i},{} below the local bound", i + 1));
        }
    }
    if res.table.at(2, 3) == bounds[1] && res.table.at(3, 4) != bounds[2] {
        return Err(format!("{name}: equality at i = 2 does not propagate"));
    }
    let phi = closed_phi(s)?;
    for k in 3..=4 {
        if phi[k - 1] < local_sum(&s.lattice, k as u64) {
            return Err(format!("{name}: φ_{k} below the local sum"));
        }
    }
    if n <= 7 {
        let a = resolve_k_over_a_with(&s.ideal, 3, 3, opts).map_err(err)?;
        let quotient = QuotientAlgebra::new(&s.ideal, 3).map_err(err)?;
        for (i, w) in a.maps.windows(2).enumerate() {
            expect_eq!(format!("{name}: d_{} d_{} = 0 over A", i + 1, i + 2), compose_is_zero(&quotient, &w[1], &w[0], 3), true);
        }
        expect_eq!(format!("{name}: minimal over A"), a.maps.iter().all(|m| m.is_minimal()), true);
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for name in ["pencil3", "pencil5", "generic-4-lines", "x3", "x2", "fan-a", "fan-b", "k4-braid", "fig5-graph", "c4-graph", "c5-graph"] {
        property_checks(name, &setup(name, 4)?)?;
    }
    for n in 1..=5 {
        let t = resolve_k_over_e(n, 4, 4).map_err(err)?.table;
        for j in 1..=4 {
            expect_eq!(format!("Tor_{j}^E(k,k)_{j} on {n} generators"), t.at(j, j) as i64, binomial((n + j - 1) as i64, j as i64));
        }
    }
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for _ in 0..200 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let len = 1 + (state % 6) as usize;
        let phi: Vec<i64> = (0..len).map(|k| ((state >> (8 * k + 3)) % 12) as i64).collect();
        let back = lcs_from_diagonal(&diagonal_from_phi(&phi, len)).map_err(err)?;
        expect_eq!("φ round trip", back, phi);
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for name in ["pencil3", "pencil4", "generic-4-lines", "x3", "x2", "k4-braid", "c4-graph"] {
        let s = setup(name, 4)?;
        let b1 = s.lattice.b(1);
        let e = e_table(&s, 3, 4)?;
        let a = resolve_k_over_a(&s.ideal, 4, 4).map_err(err)?;
        let d4 = delta4(&s.ideal);
        expect_eq!(format!("{name} b_22"), a.at(2, 2) as i64, binomial(b1 as i64 + 1, 2) + s.ideal.a(2) as i64);
        for j in 3..=4 {
            expect_eq!(format!("{name} b_2{j}"), a.at(2, j), s.ideal.a(j));
        }
        expect_eq!(format!("{name} b_34"), a.at(3, 4) as i64, b34_formula(e.at(2, 4), d4, b1, s.ideal.a(3)));
        expect_eq!(format!("{name} b_44"), a.at(4, 4) as i64, b44_formula(s.ideal.a(2), b1, e.at(2, 3), e.at(3, 4), d4));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("pencil resolutions", criterion_1),
        ("X_3 suite", criterion_2),
        ("K_4 braid suite", criterion_3),
        ("X_2 suite", criterion_4),
        ("Fan discrimination", criterion_5),
        ("9_3 discrimination", criterion_6),
        ("graphic formulas on graphs with at most 6 vertices", criterion_7),
        ("graphic expansion coefficients", criterion_8),
        ("property suites", criterion_9),
        ("oracle equivalence", criterion_10),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => writeln!(out, "PASS {:>2} {title} ({secs:.1}s)", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "FAIL {:>2} {title}: {why}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
