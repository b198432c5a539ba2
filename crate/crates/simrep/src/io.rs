//! Text formats.
//!
//! * graph: `n m`, then `n` vertex ids, then `m` lines `id id`;
//! * orientation / partial orientation: lines `tail head`;
//! * permutation diagram: two lines, top then bottom;
//! * circular diagram: three lines, outer, inner, wrapped set;
//! * manifest: lines `shared PATH`, `input PATH` or `graph PATH`, relative
//!   to the manifest's directory;
//! * TotalOrdering: the element ids on line 1, then one triple `x y z` per line.
//!
//! Graph, orientation, manifest and TotalOrdering files ignore blank lines
//! and `#` comments. Diagram files are positional: an empty line is an empty
//! sequence.

use std::fs;
use std::path::{Path, PathBuf};

use crate::cperm::CPermDiagram;
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, PartialOrientation, SunflowerInstance};
use crate::perm::PermDiagram;
use crate::reductions::TotalOrderingInstance;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let [n, m] = header[..] else {
        return Err(parse_err(ln, "expected `n m`"));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(ln, format!("`{s}` is not a count")));
    let (n, m) = (num(n)?, num(m)?);
    let mut ids = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, f) = lines.next().ok_or_else(|| parse_err(ln, format!("expected {n} vertex ids, got {k}")))?;
        if f.len() != 1 {
            return Err(parse_err(ln, "expected one vertex id"));
        }
        ids.push(f[0].to_string());
    }
    let mut edges = Vec::with_capacity(m);
    let mut last = ln;
    for k in 0..m {
        let (ln, f) = lines.next().ok_or_else(|| parse_err(last, format!("expected {m} edges, got {k}")))?;
        if f.len() != 2 {
            return Err(parse_err(ln, "expected `id id`"));
        }
        edges.push((ln, f[0], f[1]));
        last = ln;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the edge list"));
    }
    let g0 = at_line(1, Graph::new(&ids, &[]))?;
    let mut idx = Vec::with_capacity(m);
    for (ln, a, b) in edges {
        let u = at_line(ln, g0.vertex(a))?;
        let v = at_line(ln, g0.vertex(b))?;
        if u == v {
            return Err(parse_err(ln, Error::SelfLoop(a.to_string()).to_string()));
        }
        idx.push((ln, u, v));
    }
    let mut seen = std::collections::HashSet::new();
    for &(ln, u, v) in &idx {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(ln, Error::ParallelEdge(ids[u].clone(), ids[v].clone()).to_string()));
        }
    }
    let pairs: Vec<(usize, usize)> = idx.iter().map(|&(_, u, v)| (u, v)).collect();
    Graph::from_indices(ids, &pairs)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for id in g.ids() {
        s.push_str(id);
        s.push('\n');
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", g.id(u), g.id(v)));
    }
    s
}

fn parse_arcs(g: &Graph, text: &str) -> Result<PartialOrientation> {
    let mut w = PartialOrientation::empty();
    for (ln, f) in content_lines(text) {
        if f.len() != 2 {
            return Err(parse_err(ln, "expected `tail head`"));
        }
        let u = at_line(ln, g.vertex(f[0]))?;
        let v = at_line(ln, g.vertex(f[1]))?;
        at_line(ln, w.insert(g, u, v))?;
    }
    Ok(w)
}

pub fn parse_partial_orientation(g: &Graph, text: &str) -> Result<PartialOrientation> {
    parse_arcs(g, text)
}

/// A total orientation: every edge exactly once.
pub fn parse_orientation(g: &Graph, text: &str) -> Result<Orientation> {
    let w = parse_arcs(g, text)?;
    if w.len() != g.m() {
        return Err(Error::Invalid(format!("orientation covers {} of {} edges", w.len(), g.m())));
    }
    let forward = (0..g.m()).map(|e| w.get(e).expect("covered")).collect();
    Ok(Orientation::from_forward(forward))
}

pub fn write_orientation(g: &Graph, o: &Orientation) -> String {
    o.arcs(g).iter().map(|&(u, v)| format!("{} {}\n", g.id(u), g.id(v))).collect()
}

fn positional(text: &str, k: usize) -> Result<Vec<Vec<&str>>> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() > k && lines[k..].iter().any(|l| !l.trim().is_empty()) {
        return Err(parse_err(k + 1, format!("expected {k} lines")));
    }
    Ok((0..k).map(|i| lines.get(i).map_or(Vec::new(), |l| l.split_whitespace().collect())).collect())
}

fn ids_to_indices(g: &Graph, line: usize, ids: &[&str]) -> Result<Vec<usize>> {
    ids.iter().map(|s| at_line(line, g.vertex(s))).collect()
}

pub fn parse_perm_diagram(g: &Graph, text: &str) -> Result<PermDiagram> {
    let l = positional(text, 2)?;
    let top = ids_to_indices(g, 1, &l[0])?;
    let bottom = ids_to_indices(g, 2, &l[1])?;
    at_line(1, PermDiagram::new(g.n(), top, bottom))
}

pub fn write_perm_diagram(g: &Graph, d: &PermDiagram) -> String {
    d.to_text(g.ids())
}

pub fn parse_cperm_diagram(g: &Graph, text: &str) -> Result<CPermDiagram> {
    let l = positional(text, 3)?;
    let outer = ids_to_indices(g, 1, &l[0])?;
    let inner = ids_to_indices(g, 2, &l[1])?;
    let wrapped = ids_to_indices(g, 3, &l[2])?;
    at_line(1, CPermDiagram::new(g.n(), outer, inner, &wrapped))
}

pub fn write_cperm_diagram(g: &Graph, c: &CPermDiagram) -> String {
    c.to_text(g.ids())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub shared: Option<PathBuf>,
    pub inputs: Vec<PathBuf>,
    pub graphs: Vec<PathBuf>,
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Manifest> {
    let mut m = Manifest::default();
    for (ln, f) in content_lines(text) {
        let [kind, path] = f[..] else {
            return Err(parse_err(ln, "expected `shared|input|graph PATH`"));
        };
        let p = base.join(path);
        match kind {
            "shared" if m.shared.is_none() => m.shared = Some(p),
            "shared" => return Err(parse_err(ln, "second `shared` entry")),
            "input" => m.inputs.push(p),
            "graph" => m.graphs.push(p),
            other => return Err(parse_err(ln, format!("unknown entry kind `{other}`"))),
        }
    }
    Ok(m)
}

pub fn write_manifest(m: &Manifest) -> String {
    let mut s = String::new();
    if let Some(p) = &m.shared {
        s.push_str(&format!("shared {}\n", p.display()));
    }
    for p in &m.inputs {
        s.push_str(&format!("input {}\n", p.display()));
    }
    for p in &m.graphs {
        s.push_str(&format!("graph {}\n", p.display()));
    }
    s
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    with_path(path, parse_graph(&read(path)?))
}

fn load_manifest(path: &Path) -> Result<Manifest> {
    let base = path.parent().unwrap_or(Path::new("."));
    with_path(path, parse_manifest(&read(path)?, base))
}

/// A sunflower instance from a manifest with one `shared` entry and at least one `input`.
pub fn load_sunflower(path: &Path) -> Result<SunflowerInstance> {
    let m = load_manifest(path)?;
    let shared = m.shared.ok_or_else(|| Error::Invalid(format!("{}: no `shared` entry", path.display())))?;
    if m.inputs.is_empty() {
        return Err(Error::Invalid(format!("{}: no `input` entries", path.display())));
    }
    let h = load_graph(&shared)?;
    let inputs = m.inputs.iter().map(|p| load_graph(p)).collect::<Result<Vec<_>>>()?;
    let inst = SunflowerInstance::new(h, inputs);
    inst.validate().map_err(Error::NotSunflower)?;
    Ok(inst)
}

/// Every graph listed in a manifest, in order.
pub fn load_graphs(path: &Path) -> Result<Vec<Graph>> {
    let m = load_manifest(path)?;
    m.shared.iter().chain(&m.inputs).chain(&m.graphs).map(|p| load_graph(p)).collect()
}

pub fn parse_total_ordering(text: &str) -> Result<TotalOrderingInstance> {
    let mut lines = content_lines(text);
    let (ln0, elements) = lines.next().ok_or_else(|| parse_err(1, "missing element line"))?;
    let mut triples = Vec::new();
    for (ln, f) in lines {
        let [x, y, z] = f[..] else {
            return Err(parse_err(ln, "expected `x y z`"));
        };
        triples.push((ln, (x, y, z)));
    }
    let just: Vec<(&str, &str, &str)> = triples.iter().map(|&(_, t)| t).collect();
    TotalOrderingInstance::new(&elements, &just).map_err(|e| {
        let ln = match &e {
            Error::UnknownVertex(v) | Error::Invalid(v) => triples
                .iter()
                .find(|(_, (x, y, z))| v.contains(x) || v.contains(y) || v.contains(z))
                .map_or(ln0, |&(ln, _)| ln),
            _ => ln0,
        };
        parse_err(ln, e.to_string())
    })
}

pub fn write_total_ordering(inst: &TotalOrderingInstance) -> String {
    let mut s = inst.elements().join(" ");
    s.push('\n');
    for (x, y, z) in inst.triples() {
        s.push_str(&format!("{x} {y} {z}\n"));
    }
    s
}
