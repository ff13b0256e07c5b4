//! Line-oriented instance and solution files, with JSON mirrors.
//!
//! Instance grammar (ASCII, one directive per line):
//!
//! ```text
//! c <comment>            ignored
//! p dce <n> <m> <d> <k>  exactly once, before any v/e line
//! v <id> <delta>         target degree override (default is d)
//! e <u> <v>              edge
//! ```
//!
//! Vertex ids run 1..=n; exactly m edge lines must follow the header. The
//! writer renumbers vertices to 1..=n in ascending id order (instances
//! produced by the kernelizer use sparse ids), omits `v` lines equal to the
//! default, and sorts edge lines, so `parse(write(inst))` is the identity on
//! canonical instances.
//!
//! Solution grammar: `s YES` or `s NO` first, then `d <u> <v>` deletion and
//! `a <u> <v>` addition lines (a NO carries none).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::graph::{Edge, Graph};
use crate::instance::{EditInstance, EditSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing 'p dce <n> <m> <d> <k>' header")]
    MissingHeader,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, col: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("column {col}: expected integer, got '{tok}'")))
}

/// Parse an instance file. Errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<EditInstance, ParseError> {
    let mut header: Option<(u32, usize, u32, u32)> = None;
    let mut graph = Graph::new();
    let mut overrides: BTreeMap<u32, u32> = BTreeMap::new();
    let mut edge_lines = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(line, "duplicate 'p' line"));
                }
                if toks.len() != 6 || toks[1] != "dce" {
                    return Err(syntax(line, "expected 'p dce <n> <m> <d> <k>'"));
                }
                let n: u32 = parse_num(line, 3, toks[2])?;
                let m: usize = parse_num(line, 4, toks[3])?;
                let d: u32 = parse_num(line, 5, toks[4])?;
                let k: u32 = parse_num(line, 6, toks[5])?;
                if n == 0 {
                    return Err(syntax(line, "instances need at least one vertex"));
                }
                for v in 1..=n {
                    graph.add_vertex(v);
                }
                header = Some((n, m, d, k));
            }
            Some("v") => {
                let (n, _, d, _) = header.ok_or(ParseError::MissingHeader)?;
                if toks.len() != 3 {
                    return Err(syntax(line, "expected 'v <id> <delta>'"));
                }
                let id: u32 = parse_num(line, 2, toks[1])?;
                let delta: u32 = parse_num(line, 3, toks[2])?;
                if id == 0 || id > n {
                    return Err(syntax(line, format!("vertex {id} out of range 1..={n}")));
                }
                if delta > d {
                    return Err(syntax(
                        line,
                        format!("target degree {delta} exceeds d = {d}"),
                    ));
                }
                if overrides.insert(id, delta).is_some() {
                    return Err(syntax(line, format!("duplicate 'v' line for vertex {id}")));
                }
            }
            Some("e") => {
                let (n, _, _, _) = header.ok_or(ParseError::MissingHeader)?;
                if toks.len() != 3 {
                    return Err(syntax(line, "expected 'e <u> <v>'"));
                }
                let u: u32 = parse_num(line, 2, toks[1])?;
                let v: u32 = parse_num(line, 3, toks[2])?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(syntax(line, format!("vertex {x} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(syntax(line, format!("loop edge {u}-{u}")));
                }
                if graph.has_edge(u, v) {
                    return Err(syntax(line, format!("duplicate edge {u}-{v}")));
                }
                graph.add_edge(u, v);
                edge_lines += 1;
            }
            Some(other) => {
                return Err(syntax(line, format!("unknown directive '{other}'")));
            }
        }
    }

    let (_, m, d, k) = header.ok_or(ParseError::MissingHeader)?;
    if edge_lines != m {
        return Err(syntax(
            text.lines().count().max(1),
            format!("header announces {m} edges, file has {edge_lines}"),
        ));
    }
    let mut delta: BTreeMap<u32, u32> = graph.vertices().map(|v| (v, d)).collect();
    for (v, t) in overrides {
        delta.insert(v, t);
    }
    EditInstance::new(graph, delta, d, k)
        .map_err(|e| syntax(text.lines().count().max(1), e.to_string()))
}

/// Ascending-id renumbering of the instance's vertices to 1..=n.
fn canonical_ids(inst: &EditInstance) -> BTreeMap<u32, u32> {
    inst.graph
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i as u32 + 1))
        .collect()
}

/// Canonical text form: header, non-default `v` lines ascending, sorted `e`
/// lines, vertices renumbered to 1..=n.
pub fn write_instance(inst: &EditInstance) -> String {
    let ids = canonical_ids(inst);
    let n = ids.len();
    let mut edges: Vec<Edge> = inst
        .graph
        .edges()
        .into_iter()
        .map(|e| Edge::new(ids[&e.u], ids[&e.v]))
        .collect();
    edges.sort();
    let mut out = format!("p dce {} {} {} {}\n", n, edges.len(), inst.d, inst.k);
    for (&v, &new) in &ids {
        let t = inst.delta[&v];
        if t != inst.d {
            out.push_str(&format!("v {new} {t}\n"));
        }
    }
    for e in &edges {
        out.push_str(&format!("e {} {}\n", e.u, e.v));
    }
    out
}

/// A parsed solution file: the claim and, for YES, the edits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionFile {
    pub yes: bool,
    pub edits: EditSet,
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut answer: Option<bool> = None;
    let mut edits = EditSet::empty();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => continue,
            Some("s") => {
                if answer.is_some() {
                    return Err(syntax(line, "duplicate 's' line"));
                }
                match toks.get(1).copied() {
                    Some("YES") => answer = Some(true),
                    Some("NO") => answer = Some(false),
                    _ => return Err(syntax(line, "expected 's YES' or 's NO'")),
                }
            }
            Some(kind @ ("d" | "a")) => {
                match answer {
                    None => return Err(syntax(line, "edit line before the 's' line")),
                    Some(false) => {
                        return Err(syntax(line, "a NO solution carries no edits"));
                    }
                    Some(true) => {}
                }
                if toks.len() != 3 {
                    return Err(syntax(line, format!("expected '{kind} <u> <v>'")));
                }
                let u: u32 = parse_num(line, 2, toks[1])?;
                let v: u32 = parse_num(line, 3, toks[2])?;
                if u == v {
                    return Err(syntax(line, format!("loop edge {u}-{u}")));
                }
                let e = Edge::new(u, v);
                let fresh = if kind == "d" {
                    edits.added.get(&e).is_none() && edits.deleted.insert(e)
                } else {
                    edits.deleted.get(&e).is_none() && edits.added.insert(e)
                };
                if !fresh {
                    return Err(syntax(line, format!("pair {}-{} listed twice", e.u, e.v)));
                }
            }
            Some(other) => {
                return Err(syntax(line, format!("unknown directive '{other}'")));
            }
        }
    }
    let yes = answer.ok_or_else(|| syntax(text.lines().count().max(1), "missing 's' line"))?;
    Ok(SolutionFile { yes, edits })
}

/// Canonical solution text: deletions then additions, each sorted.
pub fn write_solution(sol: Option<&EditSet>) -> String {
    match sol {
        None => "s NO\n".to_string(),
        Some(edits) => {
            let mut out = "s YES\n".to_string();
            for e in &edits.deleted {
                out.push_str(&format!("d {} {}\n", e.u, e.v));
            }
            for e in &edits.added {
                out.push_str(&format!("a {} {}\n", e.u, e.v));
            }
            out
        }
    }
}

/// JSON mirror of the canonical instance text.
pub fn instance_to_json(inst: &EditInstance) -> Value {
    let ids = canonical_ids(inst);
    let mut edges: Vec<(u32, u32)> = inst
        .graph
        .edges()
        .into_iter()
        .map(|e| {
            let e = Edge::new(ids[&e.u], ids[&e.v]);
            (e.u, e.v)
        })
        .collect();
    edges.sort();
    let delta: serde_json::Map<String, Value> = ids
        .iter()
        .filter(|&(v, _)| inst.delta[v] != inst.d)
        .map(|(v, &new)| (new.to_string(), json!(inst.delta[v])))
        .collect();
    json!({
        "n": ids.len(),
        "m": edges.len(),
        "d": inst.d,
        "k": inst.k,
        "delta": delta,
        "edges": edges.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
    })
}

/// JSON mirror of the solution text.
pub fn solution_to_json(sol: Option<&EditSet>) -> Value {
    match sol {
        None => json!({ "answer": "NO" }),
        Some(edits) => json!({
            "answer": "YES",
            "deleted": edits.deleted.iter().map(|e| json!([e.u, e.v])).collect::<Vec<_>>(),
            "added": edits.added.iter().map(|e| json!([e.u, e.v])).collect::<Vec<_>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_p3_instance() {
        let inst = parse_instance("p dce 3 2 2 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.d, 2);
        assert_eq!(inst.k, 1);
        assert!(inst.delta.values().all(|&t| t == 2));
        assert!(inst.graph.has_edge(1, 2) && inst.graph.has_edge(2, 3));
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        let cases = [
            ("p dce 3 1 2 1\ne 1 1\n", 2, "loop"),
            ("p dce 3 2 2 1\ne 1 2\ne 1 2\n", 3, "duplicate edge"),
            ("p dce 3 1 2 1\ne 1 4\n", 2, "out of range"),
            ("p dce 3 0 2 1\nv 2 7\n", 2, "exceeds d"),
            ("p dce 3 0 2 1\nv 2 1\nv 2 1\n", 3, "duplicate 'v'"),
            ("p dce 3 2 2 1\ne 1 2\n", 2, "announces 2 edges"),
            ("e 1 2\n", 1, "missing"),
            ("p dce 2 0 2 1\np dce 2 0 2 1\n", 2, "duplicate 'p'"),
            ("p dce 0 0 2 1\n", 1, "at least one vertex"),
            ("x 1 2\n", 1, "unknown directive"),
            ("p dce 3 1 2 1\ne 1 x\n", 2, "column 3"),
        ];
        for (text, line, frag) in cases {
            match parse_instance(text) {
                Err(ParseError::Syntax { line: l, msg }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(msg.contains(frag), "{text:?}: {msg}");
                }
                Err(ParseError::MissingHeader) => {
                    assert!("missing" == frag, "{text:?}");
                }
                Ok(_) => panic!("{text:?} should not parse"),
            }
        }
    }

    #[test]
    fn write_then_parse_is_identity() {
        let text = "p dce 4 3 3 2\nv 1 1\nv 4 0\ne 1 2\ne 1 3\ne 2 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(write_instance(&inst), text);
        let again = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn writer_renumbers_sparse_ids() {
        let mut g = Graph::new();
        for v in [3, 7, 9] {
            g.add_vertex(v);
        }
        g.add_edge(3, 9);
        let delta: BTreeMap<u32, u32> = [(3, 2), (7, 1), (9, 2)].into_iter().collect();
        let inst = EditInstance::new(g, delta, 2, 1).unwrap();
        assert_eq!(write_instance(&inst), "p dce 3 1 2 1\nv 2 1\ne 1 3\n");
    }

    #[test]
    fn solution_round_trip_and_errors() {
        let mut edits = EditSet::empty();
        edits.deleted.insert(Edge::new(2, 1));
        edits.added.insert(Edge::new(1, 3));
        let text = write_solution(Some(&edits));
        assert_eq!(text, "s YES\nd 1 2\na 1 3\n");
        let parsed = parse_solution(&text).unwrap();
        assert!(parsed.yes);
        assert_eq!(parsed.edits, edits);
        assert_eq!(
            parse_solution("s NO\n").unwrap(),
            SolutionFile {
                yes: false,
                edits: EditSet::empty()
            }
        );
        assert!(parse_solution("s NO\na 1 2\n").is_err());
        assert!(parse_solution("a 1 2\n").is_err());
        assert!(parse_solution("s YES\na 1 2\nd 1 2\n").is_err());
        assert!(parse_solution("c nothing\n").is_err());
    }

    #[test]
    fn json_mirrors_match_text() {
        let inst = parse_instance("p dce 3 2 2 1\nv 3 1\ne 1 2\ne 2 3\n").unwrap();
        let j = instance_to_json(&inst);
        assert_eq!(j["n"], 3);
        assert_eq!(j["m"], 2);
        assert_eq!(j["delta"]["3"], 1);
        assert_eq!(j["edges"][0][0], 1);
        let mut edits = EditSet::empty();
        edits.added.insert(Edge::new(1, 3));
        let j = solution_to_json(Some(&edits));
        assert_eq!(j["answer"], "YES");
        assert_eq!(j["added"][0][1], 3);
        assert_eq!(solution_to_json(None)["answer"], "NO");
    }
}
