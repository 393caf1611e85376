use std::fmt::Write;

use super::Instance;

/// Serialises an instance in the format [`super::parse_instance`] reads.
pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    match instance {
        Instance::Tournament(t) => {
            writeln!(out, "tournament {}", t.n()).unwrap();
            for (u, v) in t.arcs() {
                writeln!(out, "{} {}", u + 1, v + 1).unwrap();
            }
        }
        Instance::Graph(g) => {
            let tag = if g.is_weighted() { "wgraph" } else { "graph" };
            writeln!(out, "{tag} {} {}", g.n(), g.edges().len()).unwrap();
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                if g.is_weighted() {
                    writeln!(out, "{} {} {}", u + 1, v + 1, g.weight(i)).unwrap();
                } else {
                    writeln!(out, "{} {}", u + 1, v + 1).unwrap();
                }
            }
            if let Some(ts) = g.terminals() {
                writeln!(out, "terminals {}", ts.len()).unwrap();
                if !ts.is_empty() {
                    let ids: Vec<String> = ts.iter().map(|t| (t + 1).to_string()).collect();
                    writeln!(out, "{}", ids.join(" ")).unwrap();
                }
            }
        }
        Instance::Strings(s) => {
            let alphabet: String = s.alphabet().iter().collect();
            writeln!(out, "strings {} {} {alphabet}", s.count(), s.len()).unwrap();
            for w in s.strings() {
                writeln!(out, "{}", s.render(w)).unwrap();
            }
        }
        Instance::Ilp(sys) => {
            writeln!(out, "ilp {} {}", sys.k(), sys.rows().len()).unwrap();
            for (a, b) in sys.rows() {
                let mut line: Vec<String> = a.iter().map(|c| c.to_string()).collect();
                line.push(b.to_string());
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
            for (i, (lo, hi)) in sys.bounds().iter().enumerate() {
                writeln!(out, "box {} {lo} {hi}", i + 1).unwrap();
            }
        }
    }
    out
}
