//! Built-in arrangements with their known invariants.

use serde::Serialize;

use crate::arrangement::{binomial, Arrangement, Rank3Configuration};
use crate::document::Input;
use crate::error::{Error, Result};
use crate::graphic::Graph;
use crate::lcs::witt;

/// Where a golden value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Stated in the literature for this example.
    Published,
    /// Follows from published data by a short computation.
    Derived,
    /// Immediate from definitions.
    Elementary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GoldenValue {
    Int(i64),
    Ints(Vec<i64>),
    Flag(bool),
    Label(String),
}

impl std::fmt::Display for GoldenValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GoldenValue::Int(v) => write!(f, "{v}"),
            GoldenValue::Ints(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
            GoldenValue::Flag(b) => write!(f, "{b}"),
            GoldenValue::Label(s) => write!(f, "{s}"),
        }
    }
}

/// One expected value. `quantity` is a report key such as `a3`, `b'_23`,
/// `b_34`, `phi`, `delta4` or `koszul`; see [`crate::report::Report::lookup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Golden {
    pub quantity: String,
    pub value: GoldenValue,
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn golden(quantity: &str, value: GoldenValue, source: Source) -> Golden {
    Golden { quantity: quantity.into(), value, source, note: None }
}

fn int(q: &str, v: i64, s: Source) -> Golden {
    golden(q, GoldenValue::Int(v), s)
}

fn ints(q: &str, v: &[i64], s: Source) -> Golden {
    golden(q, GoldenValue::Ints(v.to_vec()), s)
}

fn flag(q: &str, v: bool, s: Source) -> Golden {
    golden(q, GoldenValue::Flag(v), s)
}

fn label(q: &str, v: &str, s: Source) -> Golden {
    golden(q, GoldenValue::Label(v.into()), s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub summary: String,
    pub input: Input,
    pub golden: Vec<Golden>,
    pub notes: Vec<String>,
}

use Source::*;

fn normals(rows: &[&[i64]]) -> Input {
    Input::Normals(Arrangement::from_integers(rows).expect("fixture normals are valid"))
}

fn config(n: usize, flats: &[&[usize]]) -> Input {
    Input::Config(Rank3Configuration::new(n, flats.iter().map(|f| f.to_vec()).collect()).expect("fixture configuration is valid"))
}

fn graph(vertices: usize, edges: &[(usize, usize)]) -> Input {
    Input::Graph(Graph::new(vertices, edges.to_vec()).expect("fixture graph is valid"))
}

/// `m` concurrent lines in `C^2`.
pub fn pencil(m: usize) -> Result<Fixture> {
    if !(3..=22).contains(&m) {
        return Err(Error::invalid(format!("pencil(m) needs 3 ≤ m ≤ 22, got {m}")));
    }
    let rows: Vec<Vec<i64>> = std::iter::once(vec![0, 1]).chain((0..m as i64 - 1).map(|i| vec![1, i])).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let n = m as i64 - 1;
    let mut golden = vec![
        ints("b", &[1, m as i64, n], Elementary),
        int("a2", binomial(n, 2), Derived),
    ];
    for i in 1..=4 {
        golden.push(int(&format!("b'_{}{}", i, i + 1), i * binomial(n + i - 1, i + 1), Published));
    }
    let phi: Vec<i64> = (1..=4).map(|k| if k == 1 { m as i64 } else { witt(n as u64, k) }).collect();
    golden.push(Golden { note: Some("group Z × F_{m−1}".into()), ..ints("phi", &phi, Derived) });
    Ok(Fixture {
        name: format!("pencil{m}"),
        summary: format!("{m} lines through one point"),
        input: normals(&refs),
        golden,
        notes: vec![],
    })
}

/// `xyz(x−z)(y+z)(y+2x)⋯(y+(n−4)x)`; `n = 6` is X_3.
pub fn x3_family(n: usize) -> Result<Fixture> {
    if !(6..=22).contains(&n) {
        return Err(Error::invalid(format!("x3-family(n) needs 6 ≤ n ≤ 22, got {n}")));
    }
    let mut rows: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, -1], vec![0, 1, 1]];
    rows.extend((2..=n as i64 - 4).map(|k| vec![k, 1, 0]));
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let mut mu = vec![n as i64 - 4, 2, 2];
    mu.sort_unstable();
    Ok(Fixture {
        name: format!("x3-family({n})"),
        summary: format!("X_3 with the pencil through x = y = 0 grown to {} lines", n - 4),
        input: normals(&refs),
        golden: vec![
            ints("mu-l2'", &mu, Published),
            int("a3", n as i64 - 5, Published),
            flag("quadratic", false, Published),
        ],
        notes: vec![],
    })
}

fn x3() -> Fixture {
    let mut f = x3_family(6).unwrap();
    f.name = "x3".into();
    f.summary = "X_3: xyz(x−z)(y+z)(y+2x)".into();
    f.golden = vec![
        ints("b", &[1, 6, 12, 7], Derived),
        ints("a", &[3, 1], Published),
        ints("mu-l2'", &[2, 2, 2], Published),
        int("b'_12", 3, Published),
        int("b'_23", 6, Published),
        int("b'_34", 9, Published),
        int("b'_45", 12, Published),
        int("b'_13", 1, Published),
        int("b'_24", 9, Published),
        int("b'_35", 33, Published),
        int("delta4", 3, Derived),
        ints("phi", &[6, 3, 6, 9], Derived),
        flag("mls", true, Published),
        flag("quadratic", false, Published),
        label("koszul", "not-koszul", Derived),
    ];
    f
}

fn x2() -> Fixture {
    Fixture {
        name: "x2".into(),
        summary: "Kohno's X_2: quadratic but not Koszul".into(),
        input: config(7, &[&[1, 4, 5], &[0, 2, 5], &[3, 5, 6], &[2, 3, 4], &[0, 1, 6]]),
        golden: vec![
            ints("b", &[1, 7, 16, 10], Published),
            ints("a", &[5, 0], Published),
            flag("quadratic", true, Published),
            int("b'_24", 15, Published),
            int("delta4", 10, Published),
            int("b_34", 5, Published),
            int("b_44", 450, Derived),
            Golden {
                note: Some("printed elsewhere as 6; the closed form gives 10 = 2·a2, as the predicted series (1−2t)^5/(1−t)^3 also requires".into()),
                ..int("phi3", 10, Derived)
            },
            label("koszul", "not-koszul", Published),
        ],
        notes: vec!["φ_3: closed form 10 versus a printed value of 6".into()],
    }
}

fn fan(left: bool) -> Fixture {
    let (name, flats, tor, group): (&str, &[&[usize]], i64, &str) = if left {
        ("fan-a", &[&[1, 4, 5], &[0, 2, 5], &[3, 5, 6]], 3, "F_1 × F_2 × F_2 × F_2")
    } else {
        ("fan-b", &[&[0, 2, 5], &[3, 5, 6], &[2, 3, 4]], 4, "F_1 × G(X_3)")
    };
    let phi: Vec<i64> = (1..=4).map(|k| witt(1, k) + 3 * witt(2, k)).collect();
    Fixture {
        name: name.into(),
        summary: format!("Fan's pair, group {group}"),
        input: config(7, flats),
        golden: vec![
            int("tor2-closure-4", tor, Published),
            Golden { note: Some("(1−t)(1−2t)^3".into()), ..ints("phi-mls", &phi, Published) },
            flag("mls", true, Published),
        ],
        notes: vec![format!("group {group}; predicted series (1−t)(1−2t)^3")],
    }
}

fn pappus(first: bool) -> Fixture {
    let (name, flats, a3): (&str, Vec<Vec<usize>>, i64) = if first {
        (
            "pappus-93-1",
            vec![
                vec![0, 1, 2],
                vec![3, 4, 5],
                vec![6, 7, 8],
                vec![1, 5, 6],
                vec![2, 4, 6],
                vec![0, 5, 7],
                vec![2, 3, 7],
                vec![0, 4, 8],
                vec![1, 3, 8],
            ],
            4,
        )
    } else {
        ("pappus-93-2", (0..9).map(|i| vec![i, (i + 1) % 9, (i + 3) % 9]).collect(), 2)
    };
    Fixture {
        name: name.into(),
        summary: if first { "the (9_3)_1 (Pappus) configuration".into() } else { "the (9_3)_2 configuration".into() },
        input: Input::Config(Rank3Configuration::new(9, flats).expect("fixture configuration is valid")),
        golden: vec![
            ints("b", &[1, 9, 27, 19], Published),
            int("a3", a3, Published),
            flag("mls", !first, Published),
        ],
        notes: vec![],
    }
}

const K4_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];

fn k4() -> Fixture {
    Fixture {
        name: "k4-braid".into(),
        summary: "braid arrangement z_i − z_j in C^4 (graph K_4)".into(),
        input: graph(4, &K4_EDGES),
        golden: vec![
            ints("b", &[1, 6, 11, 6], Derived),
            ints("kappa", &[4, 6, 4, 1], Elementary),
            int("b'_23", 10, Published),
            int("b'_24", 0, Published),
            int("b'_34", 15, Published),
            int("delta4", 0, Published),
            int("phi3", 10, Published),
            int("phi4", 21, Derived),
            flag("chordal", true, Elementary),
            label("koszul", "koszul", Published),
        ],
        notes: vec!["edge order fixes hyperplane order: 01, 12, 02, 03, 13, 23".into()],
    }
}

fn fig5() -> Fixture {
    Fixture {
        name: "fig5-graph".into(),
        summary: "wheel W_4: a non-hypersolvable graphic arrangement with κ_3 = 0".into(),
        input: graph(5, &[(0, 1), (0, 2), (2, 3), (1, 2), (0, 3), (3, 4), (1, 4), (2, 4)]),
        golden: vec![
            int("kappa2", 4, Derived),
            int("kappa3", 0, Derived),
            int("phi3", 8, Derived),
            int("phi4", 12, Published),
            flag("chordal", false, Published),
        ],
        notes: vec!["transcribed from a drawing; validated by κ_2 = 4, κ_3 = 0 and an induced 4-cycle".into()],
    }
}

fn cycle_graph(m: usize) -> Fixture {
    let g = Graph::cycle(m);
    let mut golden = vec![flag("chordal", false, Elementary)];
    for j in 3..m - 1 {
        golden.push(int(&format!("a{j}"), 0, Elementary));
    }
    golden.push(int(&format!("a{}", m - 1), 1, Derived));
    Fixture {
        name: format!("c{m}-graph"),
        summary: format!("the {m}-cycle"),
        input: Input::Graph(g),
        golden,
        notes: vec![],
    }
}

fn generic4() -> Fixture {
    Fixture {
        name: "generic-4-lines".into(),
        summary: "four planes in general position in C^3".into(),
        input: normals(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        golden: vec![
            ints("b", &[1, 4, 6, 3], Elementary),
            ints("a", &[0, 1], Derived),
            ints("phi", &[4, 0, 0, 0], Derived),
        ],
        notes: vec![],
    }
}

/// Every registered fixture, in listing order.
pub fn registry() -> Vec<Fixture> {
    let mut all: Vec<Fixture> = (3..=7).map(|m| pencil(m).unwrap()).collect();
    all.push(generic4());
    all.push(x3());
    all.push(x3_family(7).unwrap());
    all.push(x2());
    all.push(fan(true));
    all.push(fan(false));
    all.push(pappus(true));
    all.push(pappus(false));
    all.push(k4());
    all.push(fig5());
    all.push(cycle_graph(4));
    all.push(cycle_graph(5));
    all
}

fn parametrized(name: &str, prefix: &str) -> Option<Result<usize>> {
    let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.trim().parse().map_err(|_| Error::invalid(format!("'{name}': expected an integer parameter"))))
}

/// Looks up a fixture by name; `pencil(m)` and `x3-family(n)` take a parameter.
pub fn fixture(name: &str) -> Result<Fixture> {
    if let Some(m) = parametrized(name, "pencil") {
        return pencil(m?);
    }
    if let Some(n) = parametrized(name, "x3-family") {
        return x3_family(n?);
    }
    let name = match name {
        "c4" | "C4-graph" => "c4-graph",
        "c5" | "C5-graph" => "c5-graph",
        "k4" => "k4-braid",
        other => other,
    };
    registry()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::invalid(format!("no fixture named '{name}'; try `fixtures list`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(fixture("pencil(9)").unwrap().name, "pencil9");
        assert_eq!(fixture("x3-family(8)").unwrap().name, "x3-family(8)");
        assert!(fixture("pencil(2)").is_err());
        assert!(fixture("nonesuch").is_err());
        let names: Vec<String> = registry().into_iter().map(|f| f.name).collect();
        let mut dedup = names.clone();
        dedup.dedup();
        assert_eq!(names, dedup);
    }

    #[test]
    fn pencil_strand() {
        let f = fixture("pencil3").unwrap();
        let strand: Vec<&GoldenValue> = f.golden.iter().filter(|g| g.quantity.starts_with("b'_")).map(|g| &g.value).collect();
        assert_eq!(strand, vec![&GoldenValue::Int(1), &GoldenValue::Int(2), &GoldenValue::Int(3), &GoldenValue::Int(4)]);
    }
}
