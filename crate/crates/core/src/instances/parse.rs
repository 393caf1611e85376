use std::str::FromStr;

use super::{IlpSystem, Instance, InstanceError, ProblemKind, StringSet, Tournament, UndirectedGraph};

/// Upper limit on declared vertex counts, so a hostile header cannot make the
/// parser allocate unbounded memory.
const MAX_VERTICES: usize = 1 << 20;
const MAX_VARIABLES: usize = 1 << 12;

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        if lines.last() == Some(&"") {
            lines.pop();
        }
        Lines { lines, pos: 0 }
    }

    /// Line number (1-based) of the most recently returned line.
    fn lineno(&self) -> usize {
        self.pos
    }

    fn skip_blank(&mut self) {
        while self.pos < self.lines.len() {
            let l = self.lines[self.pos].trim();
            if l.is_empty() || l.starts_with('#') {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next_content(&mut self) -> Option<&'a str> {
        self.skip_blank();
        let l = self.lines.get(self.pos).copied()?;
        self.pos += 1;
        Some(l.trim())
    }

    fn next_raw(&mut self) -> Option<&'a str> {
        let l = self.lines.get(self.pos).copied()?;
        self.pos += 1;
        Some(l)
    }

    fn remaining(&self) -> usize {
        self.lines.len() - self.pos
    }

    fn expect(&mut self, what: &str) -> Result<&'a str, InstanceError> {
        self.next_content()
            .ok_or_else(|| InstanceError::parse(self.lines.len() + 1, format!("unexpected end of input, expected {what}")))
    }

    fn finish(&mut self) -> Result<(), InstanceError> {
        match self.next_content() {
            None => Ok(()),
            Some(l) => Err(InstanceError::parse(self.lineno(), format!("unexpected trailing content `{}`", truncate(l)))),
        }
    }
}

fn truncate(s: &str) -> String {
    s.chars().take(40).collect()
}

fn number<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, InstanceError> {
    tok.parse()
        .map_err(|_| InstanceError::parse(line, format!("expected {what}, found `{}`", truncate(tok))))
}

fn fields<'a>(line: &'a str, expected: usize, lineno: usize, what: &str) -> Result<Vec<&'a str>, InstanceError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != expected {
        return Err(InstanceError::parse(
            lineno,
            format!("expected {expected} fields for {what}, found {}", toks.len()),
        ));
    }
    Ok(toks)
}

fn vertex(tok: &str, n: usize, line: usize) -> Result<usize, InstanceError> {
    let v: usize = number(tok, line, "vertex id")?;
    if v == 0 || v > n {
        return Err(InstanceError::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses an instance in the text format expected by `kind`.
///
/// Blank lines and lines starting with `#` are ignored, except inside the
/// body of a `strings` block where every line is a word.
pub fn parse_instance(text: &[u8], kind: ProblemKind) -> Result<Instance, InstanceError> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let line = text[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        InstanceError::parse(line, "input is not valid UTF-8")
    })?;
    let mut lines = Lines::new(text);
    let header = lines.expect("a header line")?;
    let lineno = lines.lineno();
    let word = header.split_whitespace().next().unwrap_or_default();
    let instance = match (kind, word) {
        (ProblemKind::Fvst, "tournament") => Instance::Tournament(tournament(header, lineno, &mut lines)?),
        (ProblemKind::ClosestString, "strings") => Instance::Strings(strings(header, lineno, &mut lines)?),
        (ProblemKind::Ilp, "ilp") => Instance::Ilp(ilp(header, lineno, &mut lines)?),
        (ProblemKind::LongestPath | ProblemKind::VertexCover | ProblemKind::Steiner, "graph" | "wgraph") => {
            let g = graph(header, lineno, &mut lines)?;
            if kind == ProblemKind::Steiner && g.terminals().is_none() {
                return Err(InstanceError::invariant("steiner instances need a `terminals` block"));
            }
            Instance::Graph(g)
        }
        _ => {
            let expected = match kind {
                ProblemKind::Fvst => "tournament",
                ProblemKind::ClosestString => "strings",
                ProblemKind::Ilp => "ilp",
                _ => "graph or wgraph",
            };
            return Err(InstanceError::parse(
                lineno,
                format!("expected a `{expected}` header for {kind}, found `{}`", truncate(word)),
            ));
        }
    };
    lines.finish()?;
    Ok(instance)
}

fn tournament(header: &str, lineno: usize, lines: &mut Lines) -> Result<Tournament, InstanceError> {
    let h = fields(header, 2, lineno, "the tournament header")?;
    let n: usize = number(h[1], lineno, "vertex count")?;
    if n > MAX_VERTICES {
        return Err(InstanceError::parse(lineno, format!("vertex count {n} too large")));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs > lines.remaining() {
        // Parse what is there so the error names the first missing pair.
        let mut arcs = Vec::new();
        while let Some(line) = lines.next_content() {
            let t = fields(line, 2, lines.lineno(), "an arc")?;
            arcs.push((vertex(t[0], n, lines.lineno())?, vertex(t[1], n, lines.lineno())?));
        }
        Tournament::from_arcs(n, &arcs)?;
        return Err(InstanceError::invariant(format!("{} arcs for {pairs} pairs", arcs.len())));
    }
    let mut arcs = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let Some(line) = lines.next_content() else {
            break;
        };
        let ln = lines.lineno();
        let t = fields(line, 2, ln, "an arc")?;
        arcs.push((vertex(t[0], n, ln)?, vertex(t[1], n, ln)?));
    }
    Tournament::from_arcs(n, &arcs)
}

fn graph(header: &str, lineno: usize, lines: &mut Lines) -> Result<UndirectedGraph, InstanceError> {
    let h = fields(header, 3, lineno, "the graph header")?;
    let weighted = h[0] == "wgraph";
    let n: usize = number(h[1], lineno, "vertex count")?;
    let m: usize = number(h[2], lineno, "edge count")?;
    if n > MAX_VERTICES {
        return Err(InstanceError::parse(lineno, format!("vertex count {n} too large")));
    }
    if m > lines.remaining() {
        return Err(InstanceError::parse(lineno, format!("header announces {m} edges, input is shorter")));
    }
    let mut edges = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(if weighted { m } else { 0 });
    for _ in 0..m {
        let line = lines.expect("an edge")?;
        let ln = lines.lineno();
        let t = fields(line, if weighted { 3 } else { 2 }, ln, "an edge")?;
        edges.push((vertex(t[0], n, ln)?, vertex(t[1], n, ln)?));
        if weighted {
            let w: u64 = number(t[2], ln, "edge weight")?;
            if w == 0 {
                return Err(InstanceError::invariant(format!("edge {} {} has nonpositive weight", t[0], t[1])));
            }
            weights.push(w);
        }
    }
    let g = if weighted { UndirectedGraph::weighted(n, &edges, weights)? } else { UndirectedGraph::new(n, &edges)? };
    lines.skip_blank();
    let Some(next) = lines.lines.get(lines.pos).map(|l| l.trim()) else {
        return Ok(g);
    };
    if !next.starts_with("terminals") {
        return Ok(g);
    }
    let line = lines.expect("terminals")?;
    let ln = lines.lineno();
    let t = fields(line, 2, ln, "the terminals header")?;
    if t[0] != "terminals" {
        return Err(InstanceError::parse(ln, format!("expected `terminals`, found `{}`", truncate(t[0]))));
    }
    let count: usize = number(t[1], ln, "terminal count")?;
    if count > n {
        return Err(InstanceError::parse(ln, format!("{count} terminals in a graph on {n} vertices")));
    }
    let mut terminals = Vec::with_capacity(count);
    if count > 0 {
        let line = lines.expect("terminal ids")?;
        let ln = lines.lineno();
        for tok in fields(line, count, ln, "terminal ids")? {
            terminals.push(vertex(tok, n, ln)?);
        }
    }
    g.with_terminals(terminals)
}

fn strings(header: &str, lineno: usize, lines: &mut Lines) -> Result<StringSet, InstanceError> {
    let h = fields(header, 4, lineno, "the strings header")?;
    let n: usize = number(h[1], lineno, "string count")?;
    let len: usize = number(h[2], lineno, "string length")?;
    let alphabet: Vec<char> = h[3].chars().collect();
    if n > lines.remaining() {
        return Err(InstanceError::parse(lineno, format!("header announces {n} strings, input is shorter")));
    }
    let mut words = Vec::with_capacity(n);
    for _ in 0..n {
        let w = lines.next_raw().expect("remaining lines checked");
        let ln = lines.lineno();
        if w.chars().count() != len {
            return Err(InstanceError::parse(ln, format!("string has length {}, expected {len}", w.chars().count())));
        }
        words.push(w);
    }
    StringSet::new(alphabet, len, &words)
}

fn ilp(header: &str, lineno: usize, lines: &mut Lines) -> Result<IlpSystem, InstanceError> {
    let h = fields(header, 3, lineno, "the ilp header")?;
    let k: usize = number(h[1], lineno, "variable count")?;
    let m: usize = number(h[2], lineno, "row count")?;
    if k > MAX_VARIABLES {
        return Err(InstanceError::parse(lineno, format!("variable count {k} too large")));
    }
    if m > lines.remaining() {
        return Err(InstanceError::parse(lineno, format!("header announces {m} rows, input is shorter")));
    }
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.expect("a constraint row")?;
        let ln = lines.lineno();
        let t = fields(line, k + 1, ln, "a constraint row")?;
        let nums = t.iter().map(|tok| number::<i64>(tok, ln, "integer")).collect::<Result<Vec<_>, _>>()?;
        let (a, b) = nums.split_at(k);
        rows.push((a.to_vec(), b[0]));
    }
    let mut bounds: Vec<Option<(i64, i64)>> = vec![None; k];
    while let Some(line) = lines.next_content() {
        let ln = lines.lineno();
        let t = fields(line, 4, ln, "a box line")?;
        if t[0] != "box" {
            return Err(InstanceError::parse(ln, format!("expected `box`, found `{}`", truncate(t[0]))));
        }
        let i: usize = number(t[1], ln, "variable index")?;
        if i == 0 || i > k {
            return Err(InstanceError::parse(ln, format!("variable {i} outside 1..={k}")));
        }
        if bounds[i - 1].is_some() {
            return Err(InstanceError::parse(ln, format!("variable {i} boxed twice")));
        }
        bounds[i - 1] = Some((number(t[2], ln, "lower bound")?, number(t[3], ln, "upper bound")?));
    }
    IlpSystem::new(k, rows, bounds)
}
