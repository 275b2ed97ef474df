use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cocom_cli::document::{complex_json, family_json, parse_complex, parse_family};
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn cocom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cocom-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn fixtures_round_trip() {
    let mut seen = 0;
    for entry in fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        if name.ends_with(".family.json") {
            let a = parse_family(&doc).unwrap();
            let b = parse_family(&family_json(&a)).unwrap();
            assert_eq!(a, b, "{name}");
            assert_eq!(family_json(&a), family_json(&b), "{name}");
        } else if name.ends_with(".complex.json") {
            let a = parse_complex(&doc).unwrap();
            let b = parse_complex(&complex_json(&a)).unwrap();
            assert_eq!(a, b, "{name}");
            assert_eq!(complex_json(&a), complex_json(&b), "{name}");
        } else {
            continue;
        }
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn poset_examples() {
    let o = cocom(&["poset", "--dims", "1,1,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().filter(|r| r["maximal"] == true).count(), 2);

    let o = cocom(&["poset", "--dims", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 rank vectors, 1 maximal"));
    assert!(stdout(&o).contains("()"));
}

#[test]
fn hasse_diagram_parses_as_dot() {
    let path = scratch("g.dot");
    let o = cocom(&["poset", "--dims", "1,2,1", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let graph = dot::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(graph.directed);
    assert_eq!(graph.nodes.len(), 4);
    assert_eq!(graph.edges.len(), 4);

    let path = scratch("g4.dot");
    let o = cocom(&[
        "poset",
        "--dims",
        "2,3,3,2",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let graph = dot::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    for (a, b) in &graph.edges {
        assert!(graph.nodes.contains(a) && graph.nodes.contains(b));
    }
}

#[test]
fn dot_grammar_rejects_garbage() {
    assert!(dot::parse("digraph { a -> }").is_err());
    assert!(dot::parse("digraph { a [label=\"x\" ").is_err());
    assert!(dot::parse("graph { a -> b }").is_err());
    assert!(dot::parse("strict digraph G { a; b -> c [x=1, y=\"2\"]; node [shape=box] }").is_ok());
}

#[test]
fn limit_examples() {
    let o = cocom(&["limit", &fixture("diag_1_t.family.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("pages: D0 rank 1; D1 rank 1"), "{s}");
    assert!(s.contains("label: {(1)} -> (2)"), "{s}");
    assert!(s.contains("reduced: true"), "{s}");

    let o = cocom(&["limit", &fixture("zero_111.family.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reduced: false"));

    let o = cocom(&["limit", &fixture("tilted_121.family.json"), "--oracle", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle: agree"));
}

#[test]
fn limit_json_output() {
    let out = scratch("limit.json");
    let o = cocom(&[
        "limit",
        &fixture("collineation_4.family.json"),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["pages"].as_array().unwrap().len(), 4);
    assert_eq!(v["final"], serde_json::json!([0, 0]));
    assert_eq!(v["reduced"], true);
    let exps: BTreeSet<u64> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["exponent"].as_u64().unwrap())
        .collect();
    assert_eq!(exps, BTreeSet::from([0, 1, 2, 3]));
    for page in v["pages"].as_array().unwrap() {
        parse_complex(page).unwrap();
    }
}

#[test]
fn oracle_agrees_on_every_shipped_family() {
    for entry in fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if !path.to_string_lossy().ends_with(".family.json") {
            continue;
        }
        let o = cocom(&["limit", path.to_str().unwrap(), "--oracle"]);
        assert_eq!(o.status.code(), Some(0), "{}", path.display());
        assert!(stdout(&o).contains("oracle: agree"));
    }
}

#[test]
fn analyze_examples() {
    let o = cocom(&["analyze", &fixture("rank1_22.complex.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("r=(1) h=(1,1) tangent=4 orbit=3 normal=1: OK"));

    let o = cocom(&["analyze", &fixture("zero_22.complex.json"), "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tangent"], 4);
    assert_eq!(v["orbit"], 0);

    let o = cocom(&["analyze", &fixture("canonical_121.complex.json")]);
    let s = stdout(&o);
    assert!(s.contains("h=(0,0,0)") && s.contains("normal=0"), "{s}");
}

#[test]
fn verify_examples() {
    let o = cocom(&["verify", "--suite", "census", "--dims", "1,1,1", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = cocom(&["verify", "--suite", "random", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = cocom(&["verify", "--suite", "degeneration", "--seed", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.complex.json");
    fs::write(&bad, r#"{"dims": [1, 1, 1], "diffs": [[["1"]], [["1"]]]}"#).unwrap();
    let o = cocom(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.diffs[1]"));

    let pole = scratch("pole.family.json");
    fs::write(
        &pole,
        r#"{"dims": [1, 1], "diffs": [[[{"num": [1], "den": [0, 1]}]]]}"#,
    )
    .unwrap();
    assert_eq!(
        cocom(&["limit", pole.to_str().unwrap()]).status.code(),
        Some(2)
    );

    assert_eq!(cocom(&["poset", "--dims", "1,x"]).status.code(), Some(2));
    assert_eq!(cocom(&["poset", "--dims", "0,0"]).status.code(), Some(2));
    assert_eq!(
        cocom(&["analyze", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(cocom(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        cocom(&["verify", "--suite", "census"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cocom(&["verify", "--suite", "census", "--dims", "1,1", "--p", "4"])
            .status
            .code(),
        Some(2)
    );
    // A truncation too short to see the last page is a failed check.
    let o = cocom(&[
        "limit",
        &fixture("collineation_4.family.json"),
        "--oracle",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("oracle: disagree"));
    let o = cocom(&["limit", &fixture("diag_1_t.family.json"), "--oracle", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

/// A recognizer for the Graphviz DOT language, enough of it to cover
/// statements, attribute lists, quoted and bare identifiers, and edge
/// chains. Subgraphs and ports are out of scope.
mod dot {
    use std::collections::BTreeSet;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Id(String),
        Sym(&'static str),
    }

    pub struct Graph {
        pub directed: bool,
        pub nodes: BTreeSet<String>,
        pub edges: Vec<(String, String)>,
    }

    fn lex(s: &str) -> Result<Vec<Tok>, String> {
        let mut out = Vec::new();
        let cs: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() {
                i += 1;
            } else if c == '/' && cs.get(i + 1) == Some(&'/') {
                while i < cs.len() && cs[i] != '\n' {
                    i += 1;
                }
            } else if c == '"' {
                let mut v = String::new();
                i += 1;
                loop {
                    match cs.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') if i + 1 < cs.len() => {
                            v.push(cs[i + 1]);
                            i += 2;
                        }
                        Some(&ch) => {
                            v.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(v));
            } else if c == '-' && cs.get(i + 1) == Some(&'>') {
                out.push(Tok::Sym("->"));
                i += 2;
            } else if c == '-' && cs.get(i + 1) == Some(&'-') {
                out.push(Tok::Sym("--"));
                i += 2;
            } else if let Some(sym) = ["{", "}", "[", "]", ";", ",", "="]
                .into_iter()
                .find(|x| x.starts_with(c))
            {
                out.push(Tok::Sym(sym));
                i += 1;
            } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
                let start = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '.') {
                    i += 1;
                }
                if i == start {
                    return Err(format!("stray {c:?}"));
                }
                out.push(Tok::Id(cs[start..i].iter().collect()));
            } else {
                return Err(format!("unexpected {c:?}"));
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn sym(&mut self, s: &str) -> bool {
            if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, s: &str) -> Result<(), String> {
            if self.sym(s) {
                Ok(())
            } else {
                Err(format!("expected {s} at token {}", self.pos))
            }
        }

        fn id(&mut self) -> Option<String> {
            match self.peek() {
                Some(Tok::Id(v)) => {
                    let v = v.clone();
                    self.pos += 1;
                    Some(v)
                }
                _ => None,
            }
        }

        fn keyword(&mut self, k: &str) -> bool {
            match self.peek() {
                Some(Tok::Id(v)) if v.eq_ignore_ascii_case(k) => {
                    self.pos += 1;
                    true
                }
                _ => false,
            }
        }

        fn attr_lists(&mut self) -> Result<(), String> {
            while self.sym("[") {
                while let Some(_key) = self.id() {
                    self.expect("=")?;
                    self.id().ok_or("attribute without value")?;
                    if !self.sym(",") {
                        self.sym(";");
                    }
                }
                self.expect("]")?;
            }
            Ok(())
        }
    }

    pub fn parse(src: &str) -> Result<Graph, String> {
        let mut p = Parser {
            toks: lex(src)?,
            pos: 0,
        };
        p.keyword("strict");
        let directed = if p.keyword("digraph") {
            true
        } else if p.keyword("graph") {
            false
        } else {
            return Err("expected graph or digraph".into());
        };
        let edge_op = if directed { "->" } else { "--" };
        if !matches!(p.peek(), Some(Tok::Sym("{"))) {
            p.id().ok_or("expected graph name")?;
        }
        p.expect("{")?;
        let mut g = Graph {
            directed,
            nodes: BTreeSet::new(),
            edges: Vec::new(),
        };
        while !p.sym("}") {
            if p.keyword("node") || p.keyword("edge") || p.keyword("graph") {
                p.attr_lists()?;
            } else {
                let first = p
                    .id()
                    .ok_or(format!("expected statement at token {}", p.pos))?;
                if p.sym("=") {
                    p.id().ok_or("assignment without value")?;
                } else {
                    g.nodes.insert(first.clone());
                    let mut prev = first;
                    while p.sym(edge_op) {
                        let next = p.id().ok_or("edge without target")?;
                        g.nodes.insert(next.clone());
                        g.edges.push((prev, next.clone()));
                        prev = next;
                    }
                    if matches!(p.peek(), Some(Tok::Sym("->" | "--"))) {
                        return Err("wrong edge operator".into());
                    }
                    p.attr_lists()?;
                }
            }
            p.sym(";");
        }
        if p.pos != p.toks.len() {
            return Err("trailing tokens".into());
        }
        Ok(g)
    }
}
