//! Input documents.
//!
//! ```text
//! name: x3                      # optional
//! normals: [[1,0,0], [0,1,0], [0,0,1], [1,0,-1], [0,1,1], [2,1,0]]
//! ```
//!
//! or `config: {n: 6, flats: [[0,2,3],[1,2,4],[0,1,5]]}`, or
//! `graph: {vertices: 4, edges: [[0,1],[1,2],[2,3],[0,3]]}`. JSON with the
//! same keys is accepted too, as are plain edge lists (`u v` per line,
//! 0-based) and DIMACS graph files (`p edge N M`, `e u v`, 1-based).

use std::str::FromStr;

use crate::arrangement::{Arrangement, Rank3Configuration};
use crate::error::{Error, Result};
use crate::graphic::Graph;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Normals(Arrangement),
    Config(Rank3Configuration),
    Graph(Graph),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Normals(_) => "normals",
            Input::Config(_) => "config",
            Input::Graph(_) => "graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: Option<String>,
    pub input: Input,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(String, Pos),
    List(Vec<Value>, Pos),
    Map(Vec<(String, Value, Pos)>, Pos),
}

impl Value {
    fn pos(&self) -> Pos {
        match self {
            Value::Scalar(_, p) | Value::List(_, p) | Value::Map(_, p) => *p,
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            Value::Scalar(..) => "a scalar",
            Value::List(..) => "a list",
            Value::Map(..) => "a mapping",
        }
    }
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse { line: pos.line, col: pos.col, message: message.into() }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), pos: Pos { line: 1, col: 1 } }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    /// Skips blanks and comments; newlines are skipped only when asked.
    fn skip(&mut self, newlines: bool) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip(true);
        let pos = self.pos;
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(err(pos, format!("expected '{want}', found '{c}'"))),
            None => Err(err(pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn key(&mut self) -> Result<(String, Pos)> {
        self.skip(true);
        let pos = self.pos;
        let key = match self.peek() {
            Some('"') | Some('\'') => self.quoted()?,
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_' || *c == '-') {
                    s.push(c);
                    self.bump();
                }
                s
            }
            Some(c) => return Err(err(pos, format!("expected a key, found '{c}'"))),
            None => return Err(err(pos, "expected a key, found end of input")),
        };
        self.expect(':')?;
        Ok((key, pos))
    }

    fn quoted(&mut self) -> Result<String> {
        let pos = self.pos;
        let quote = self.bump().unwrap();
        let mut s = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => return Ok(s),
                Some('\n') | None => return Err(err(pos, "unterminated string")),
                Some(c) => s.push(c),
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        self.skip(true);
        let pos = self.pos;
        match self.peek() {
            Some('[') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip(true);
                    if self.peek() == Some(']') {
                        self.bump();
                        return Ok(Value::List(items, pos));
                    }
                    if !items.is_empty() {
                        self.expect(',')?;
                        self.skip(true);
                        if self.peek() == Some(']') {
                            self.bump();
                            return Ok(Value::List(items, pos));
                        }
                    }
                    items.push(self.value()?);
                }
            }
            Some('{') => {
                self.bump();
                let mut entries = Vec::new();
                loop {
                    self.skip(true);
                    if self.peek() == Some('}') {
                        self.bump();
                        return Ok(Value::Map(entries, pos));
                    }
                    if !entries.is_empty() {
                        self.expect(',')?;
                    }
                    let (k, kp) = self.key()?;
                    entries.push((k, self.value()?, kp));
                }
            }
            Some('"') | Some('\'') => Ok(Value::Scalar(self.quoted()?, pos)),
            Some(c) if c.is_alphanumeric() || c == '-' || c == '+' || c == '_' => {
                let mut s = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || "-+_/.()".contains(*c)) {
                    s.push(c);
                    self.bump();
                }
                Ok(Value::Scalar(s, pos))
            }
            Some(c) => Err(err(pos, format!("unexpected character '{c}'"))),
            None => Err(err(pos, "expected a value, found end of input")),
        }
    }

    fn top_level(&mut self) -> Result<Vec<(String, Value, Pos)>> {
        self.skip(true);
        if self.peek() == Some('{') {
            let v = self.value()?;
            self.skip(true);
            if let Some(c) = self.peek() {
                return Err(err(self.pos, format!("trailing content starting with '{c}'")));
            }
            return match v {
                Value::Map(entries, _) => Ok(entries),
                _ => unreachable!(),
            };
        }
        let mut entries = Vec::new();
        loop {
            self.skip(true);
            if self.peek().is_none() {
                return Ok(entries);
            }
            let (k, kp) = self.key()?;
            let v = self.value()?;
            entries.push((k, v, kp));
            self.skip(false);
            match self.peek() {
                None | Some('\n') => {}
                Some(',') => {
                    self.bump();
                }
                Some(c) => return Err(err(self.pos, format!("expected a newline after the value, found '{c}'"))),
            }
        }
    }
}

fn as_list(v: &Value) -> Result<&[Value]> {
    match v {
        Value::List(items, _) => Ok(items),
        other => Err(err(other.pos(), format!("expected a list, found {}", other.describe()))),
    }
}

fn as_scalar(v: &Value) -> Result<&str> {
    match v {
        Value::Scalar(s, _) => Ok(s),
        other => Err(err(other.pos(), format!("expected a scalar, found {}", other.describe()))),
    }
}

fn as_usize(v: &Value) -> Result<usize> {
    let s = as_scalar(v)?;
    s.parse().map_err(|_| err(v.pos(), format!("expected a nonnegative integer, found '{s}'")))
}

fn as_rational(v: &Value) -> Result<Rational> {
    let s = as_scalar(v)?;
    Rational::from_str(s).map_err(|_| err(v.pos(), format!("expected an exact rational p/q, found '{s}'")))
}

fn field<'v>(entries: &'v [(String, Value, Pos)], key: &str, at: Pos) -> Result<&'v Value> {
    entries
        .iter()
        .find(|(k, _, _)| k == key)
        .map(|(_, v, _)| v)
        .ok_or_else(|| err(at, format!("missing key '{key}'")))
}

fn as_map(v: &Value) -> Result<&[(String, Value, Pos)]> {
    match v {
        Value::Map(entries, _) => {
            for (i, (k, _, p)) in entries.iter().enumerate() {
                if entries[..i].iter().any(|(k2, _, _)| k2 == k) {
                    return Err(err(*p, format!("duplicate key '{k}'")));
                }
            }
            Ok(entries)
        }
        other => Err(err(other.pos(), format!("expected a mapping, found {}", other.describe()))),
    }
}

fn pair(v: &Value) -> Result<(usize, usize)> {
    let items = as_list(v)?;
    if items.len() != 2 {
        return Err(err(v.pos(), format!("an edge needs two endpoints, found {}", items.len())));
    }
    Ok((as_usize(&items[0])?, as_usize(&items[1])?))
}

/// Attaches a position to errors raised while validating a parsed value.
fn located<T>(pos: Pos, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Invalid(m) => err(pos, m),
        other => other,
    })
}

fn interpret(key: &str, v: &Value) -> Result<Input> {
    match key {
        "normals" => {
            let rows = as_list(v)?
                .iter()
                .map(|row| as_list(row)?.iter().map(as_rational).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Input::Normals(located(v.pos(), Arrangement::new(rows))?))
        }
        "config" => {
            let m = as_map(v)?;
            let n = as_usize(field(m, "n", v.pos())?)?;
            let flats = match m.iter().find(|(k, _, _)| k == "flats") {
                Some((_, f, _)) => as_list(f)?
                    .iter()
                    .map(|flat| as_list(flat)?.iter().map(as_usize).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            if let Some((k, _, p)) = m.iter().find(|(k, _, _)| k != "n" && k != "flats") {
                return Err(err(*p, format!("unknown key '{k}' in config")));
            }
            Ok(Input::Config(located(v.pos(), Rank3Configuration::new(n, flats))?))
        }
        "graph" => {
            let m = as_map(v)?;
            let vertices = as_usize(field(m, "vertices", v.pos())?)?;
            let edges = match m.iter().find(|(k, _, _)| k == "edges") {
                Some((_, e, _)) => as_list(e)?.iter().map(pair).collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            if let Some((k, _, p)) = m.iter().find(|(k, _, _)| k != "vertices" && k != "edges") {
                return Err(err(*p, format!("unknown key '{k}' in graph")));
            }
            Ok(Input::Graph(located(v.pos(), Graph::new(vertices, edges))?))
        }
        _ => unreachable!(),
    }
}

fn looks_like_edge_list(text: &str) -> bool {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c "));
    match lines.next() {
        Some(first) => {
            first.starts_with("p ")
                || first.split_whitespace().all(|t| t.parse::<usize>().is_ok()) && !first.contains(':')
        }
        None => false,
    }
}

/// `u v` lines (0-based), or DIMACS `p edge N M` / `e u v` (1-based).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut dimacs = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        let pos = Pos { line: i + 1, col: raw.len() - raw.trim_start().len() + 1 };
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let number = |t: &str| t.parse::<usize>().map_err(|_| err(pos, format!("expected an integer, found '{t}'")));
        match tokens.as_slice() {
            ["p", kind, n, _m] => {
                if *kind != "edge" && *kind != "col" {
                    return Err(err(pos, format!("unsupported DIMACS problem type '{kind}'")));
                }
                if declared.is_some() {
                    return Err(err(pos, "second problem line"));
                }
                declared = Some(number(n)?);
                dimacs = true;
            }
            ["e", u, v] => {
                if !dimacs {
                    return Err(err(pos, "edge line before the 'p edge' problem line"));
                }
                let (u, v) = (number(u)?, number(v)?);
                if u == 0 || v == 0 {
                    return Err(err(pos, "DIMACS vertices are numbered from 1"));
                }
                edges.push((u - 1, v - 1));
            }
            [u, v] if !dimacs => edges.push((number(u)?, number(v)?)),
            [n] if !dimacs && edges.is_empty() && declared.is_none() => declared = Some(number(n)?),
            _ => return Err(err(pos, format!("cannot read '{line}' as an edge"))),
        }
    }
    let vertices = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::new(vertices, edges)
}

pub fn parse_document(text: &str) -> Result<Document> {
    if looks_like_edge_list(text) {
        return Ok(Document { name: None, input: Input::Graph(parse_edge_list(text)?) });
    }
    let mut lexer = Lexer::new(text);
    let entries = lexer.top_level()?;
    let mut name = None;
    let mut input: Option<Input> = None;
    for (i, (key, value, pos)) in entries.iter().enumerate() {
        if entries[..i].iter().any(|(k, _, _)| k == key) {
            return Err(err(*pos, format!("duplicate key '{key}'")));
        }
        match key.as_str() {
            "name" => name = Some(as_scalar(value)?.to_string()),
            "normals" | "config" | "graph" => {
                if let Some(prev) = &input {
                    return Err(err(*pos, format!("'{key}' given after '{}'; a document holds one input", prev.kind())));
                }
                input = Some(interpret(key, value)?);
            }
            other => return Err(err(*pos, format!("unknown key '{other}'"))),
        }
    }
    let input = input.ok_or_else(|| err(lexer.pos, "document has none of 'normals', 'config' or 'graph'"))?;
    Ok(Document { name, input })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flow_documents() {
        let d = parse_document("name: x3\nnormals: [[1,0,0],[0,1,0],[0,0,1],[1,0,-1],[0,1,1],[2,1,0]]  # X3\n").unwrap();
        assert_eq!(d.name.as_deref(), Some("x3"));
        match d.input {
            Input::Normals(a) => assert_eq!((a.n(), a.rank()), (6, 3)),
            _ => panic!(),
        }
        let d = parse_document("config: {n: 6, flats: [[0,2,3],\n  [1,2,4], [0,1,5]]}").unwrap();
        assert!(matches!(d.input, Input::Config(ref c) if c.flats().len() == 3));
        let d = parse_document(r#"{"graph": {"vertices": 3, "edges": [[0,1],[1,2],[0,2]]}}"#).unwrap();
        assert!(matches!(d.input, Input::Graph(ref g) if g.edges().len() == 3));
        let d = parse_document("normals: [[1/2, 0], [0, -3/4], [1, 1]]").unwrap();
        assert!(matches!(d.input, Input::Normals(ref a) if a.n() == 3));
    }

    #[test]
    fn edge_lists() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!((g.vertices(), g.edges().len()), (4, 4));
        let d = parse_document("c square\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n").unwrap();
        assert!(matches!(d.input, Input::Graph(ref g) if g == &Graph::cycle(4) || g.edges().len() == 4));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_document("normals: [[1,0],\n [0,x]]").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, col: 5, message: "expected an exact rational p/q, found 'x'".into() });
        let e = parse_document("normals: [[1,0], [2,0]]").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 10, .. }));
        assert!(matches!(parse_document("name: a\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_document("normals: [[1,0]]\ngraph: {vertices: 1}"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_document("config: {n: 4, flats: [[0,1,2],[0,1,3]]}"), Err(Error::Parse { .. })));
        assert!(matches!(parse_document("normals: [[1,0]"), Err(Error::Parse { .. })));
    }
}
