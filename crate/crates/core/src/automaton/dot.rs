use std::fmt::Write;

use super::PomsetAutomaton;

impl PomsetAutomaton {
    /// Graphviz rendering. The sink and every edge into it are left out.
    /// A fork `γ(q, {r, s}) = t` is drawn as a small junction node joined to
    /// `q`, `r` and `s` by plain lines, with a dashed arrow to `t`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph pa {\n  rankdir=LR;\n  node [shape=circle];\n");
        let id = |q: usize| format!("\"{}\"", escape(self.name(q)));
        for q in self.states().filter(|&q| q != self.sink()) {
            let shape = if self.is_final(q) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {} [shape={shape}];", id(q));
        }
        for q in self.states().filter(|&q| q != self.sink()) {
            for (a, &t) in self.alphabet().iter().zip(self.delta_row(q)) {
                if t != self.sink() {
                    let _ = writeln!(out, "  {} -> {} [label=\"{a}\"];", id(q), id(t));
                }
            }
        }
        let mut forks = 0;
        for q in self.states() {
            for fork in self.support(q) {
                let t = self.gamma(q, &fork);
                let j = format!("fork{forks}");
                forks += 1;
                let _ = writeln!(out, "  {j} [shape=point];");
                let _ = writeln!(out, "  {} -> {j} [arrowhead=none];", id(q));
                for c in [fork.lo(), fork.hi()] {
                    let _ = writeln!(out, "  {j} -> {} [arrowhead=none];", id(*c));
                }
                let _ = writeln!(out, "  {j} -> {} [style=dashed];", id(t));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
