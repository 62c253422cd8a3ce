//! Shared helpers for the integration tests: a small Graphviz grammar
//! checker used to validate DOT output, and the location of the
//! checked-in reference posets.

#![allow(dead_code)]

use std::path::PathBuf;

use costrata::wposet::WeightedPoset;

/// Repository directory holding the reference catalog files.
pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[derive(Debug, PartialEq, Eq, Clone)]
enum DotToken {
    Ident(String),
    Quoted(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
    Semi,
    Arrow,
}

fn tokenize(text: &str) -> Result<Vec<DotToken>, String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '{' => {
                chars.next();
                tokens.push(DotToken::LBrace);
            }
            '}' => {
                chars.next();
                tokens.push(DotToken::RBrace);
            }
            '[' => {
                chars.next();
                tokens.push(DotToken::LBracket);
            }
            ']' => {
                chars.next();
                tokens.push(DotToken::RBracket);
            }
            '=' => {
                chars.next();
                tokens.push(DotToken::Equals);
            }
            ';' => {
                chars.next();
                tokens.push(DotToken::Semi);
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some('>') => tokens.push(DotToken::Arrow),
                    other => return Err(format!("expected '>' after '-', got {other:?}")),
                }
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => return Err("escape sequences are not expected".into()),
                        Some(c) => s.push(c),
                        None => return Err("unterminated string".into()),
                    }
                }
                tokens.push(DotToken::Quoted(s));
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(DotToken::Ident(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(tokens)
}

/// Parsed digraph: graph attributes, node statements with attribute
/// lists, and directed edges.
#[derive(Debug, Default)]
pub struct DotGraph {
    pub name: String,
    pub graph_attrs: Vec<(String, String)>,
    pub nodes: Vec<(String, Vec<(String, String)>)>,
    pub edges: Vec<(String, String)>,
}

/// Recursive-descent parse of the digraph subset of the DOT grammar:
///
///   graph     := 'digraph' ID '{' stmt* '}'
///   stmt      := ID '=' ID ';' | ID attr_list? ';' | ID '->' ID ';'
///   attr_list := '[' ID '=' QUOTED ']'
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let tokens = tokenize(text)?;
    let mut pos = 0usize;
    let mut next = || -> Option<DotToken> {
        let t = tokens.get(pos).cloned();
        pos += 1;
        t
    };

    let mut graph = DotGraph::default();
    match next() {
        Some(DotToken::Ident(k)) if k == "digraph" => {}
        other => return Err(format!("expected 'digraph', got {other:?}")),
    }
    match next() {
        Some(DotToken::Ident(name)) => graph.name = name,
        other => return Err(format!("expected graph name, got {other:?}")),
    }
    match next() {
        Some(DotToken::LBrace) => {}
        other => return Err(format!("expected '{{', got {other:?}")),
    }
    loop {
        match next() {
            Some(DotToken::RBrace) => break,
            Some(DotToken::Ident(head)) => match next() {
                Some(DotToken::Equals) => {
                    let value = match next() {
                        Some(DotToken::Ident(v)) => v,
                        Some(DotToken::Quoted(v)) => v,
                        other => return Err(format!("expected attribute value, got {other:?}")),
                    };
                    match next() {
                        Some(DotToken::Semi) => graph.graph_attrs.push((head, value)),
                        other => return Err(format!("expected ';', got {other:?}")),
                    }
                }
                Some(DotToken::Semi) => graph.nodes.push((head, Vec::new())),
                Some(DotToken::LBracket) => {
                    let mut attrs = Vec::new();
                    let key = match next() {
                        Some(DotToken::Ident(k)) => k,
                        other => return Err(format!("expected attribute key, got {other:?}")),
                    };
                    match next() {
                        Some(DotToken::Equals) => {}
                        other => return Err(format!("expected '=', got {other:?}")),
                    }
                    let value = match next() {
                        Some(DotToken::Quoted(v)) => v,
                        other => return Err(format!("expected quoted value, got {other:?}")),
                    };
                    attrs.push((key, value));
                    match next() {
                        Some(DotToken::RBracket) => {}
                        other => return Err(format!("expected ']', got {other:?}")),
                    }
                    match next() {
                        Some(DotToken::Semi) => graph.nodes.push((head, attrs)),
                        other => return Err(format!("expected ';', got {other:?}")),
                    }
                }
                Some(DotToken::Arrow) => {
                    let to = match next() {
                        Some(DotToken::Ident(t)) => t,
                        other => return Err(format!("expected edge target, got {other:?}")),
                    };
                    match next() {
                        Some(DotToken::Semi) => graph.edges.push((head, to)),
                        other => return Err(format!("expected ';', got {other:?}")),
                    }
                }
                other => return Err(format!("unexpected token after identifier: {other:?}")),
            },
            other => return Err(format!("unexpected statement head: {other:?}")),
        }
    }
    if pos != tokens.len() {
        return Err("trailing tokens after closing brace".into());
    }
    Ok(graph)
}

/// Parses the DOT rendering of `poset` and checks it describes exactly
/// the same weighted poset: one labeled node per vertex, one edge per
/// cover pair, upward rank direction.
pub fn check_poset_dot(poset: &WeightedPoset) -> Result<(), String> {
    let graph = parse_dot(&poset.to_dot())?;
    if graph.name != "poset" {
        return Err(format!("graph name {}", graph.name));
    }
    if graph.graph_attrs != vec![("rankdir".to_string(), "BT".to_string())] {
        return Err(format!("graph attributes {:?}", graph.graph_attrs));
    }
    if graph.nodes.len() != poset.size() {
        return Err(format!("{} nodes for {} vertices", graph.nodes.len(), poset.size()));
    }
    let mut names = std::collections::BTreeSet::new();
    for (name, attrs) in &graph.nodes {
        let idx: usize = name
            .strip_prefix('n')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("node name {name}"))?;
        if idx >= poset.size() || !names.insert(idx) {
            return Err(format!("node index {idx} out of range or repeated"));
        }
        let expect = vec![("label".to_string(), poset.weights()[idx].to_string())];
        if *attrs != expect {
            return Err(format!("node {name} attributes {attrs:?}"));
        }
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (from, to) in &graph.edges {
        let f: u32 = from
            .strip_prefix('n')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("edge source {from}"))?;
        let t: u32 = to
            .strip_prefix('n')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("edge target {to}"))?;
        edges.push((f, t));
    }
    edges.sort_unstable();
    let mut covers: Vec<(u32, u32)> = poset.order().covers().to_vec();
    covers.sort_unstable();
    if edges != covers {
        return Err(format!("edges {edges:?} differ from covers {covers:?}"));
    }
    Ok(())
}
