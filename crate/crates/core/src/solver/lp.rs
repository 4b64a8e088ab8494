//! Integer program export in CPLEX LP format.

use std::fmt::Write;

use super::SolveConfig;
use crate::wheelgeom::{combinatorial_cross, EdgeId, WheelModel};

const TERMS_PER_LINE: usize = 8;

fn var(e: EdgeId, c: usize) -> String {
    format!("x_e{}_{}_c{c}", e.a, e.b)
}

fn row(out: &mut String, name: &str, terms: &[String], rel: &str) {
    let _ = write!(out, " {name}:");
    for (i, chunk) in terms.chunks(TERMS_PER_LINE).enumerate() {
        if i > 0 {
            out.push_str("\n   ");
        }
        for (j, t) in chunk.iter().enumerate() {
            if i == 0 && j == 0 {
                let _ = write!(out, " {t}");
            } else {
                let _ = write!(out, " + {t}");
            }
        }
    }
    let _ = writeln!(out, " {rel}");
}

/// Binary program over `x_{e,c}` with `m = n` colors. Blocks `c1_*` (one color
/// per edge) and `c2_*` (crossing edges differ) are always emitted; `c3_*`
/// (class size `2n - 1`) and `c4_*` (no monochromatic triangle) follow the
/// config flags.
pub fn export_lp(model: &WheelModel, cfg: &SolveConfig) -> String {
    let m = model.n();
    let edges: Vec<EdgeId> = model.edges().collect();
    let points = model.point_count();
    let mut out = String::new();
    out.push_str("Minimize\n");
    let _ = writeln!(out, " obj: 0 {}", var(edges[0], 0));
    out.push_str("Subject To\n");

    for &e in &edges {
        let terms: Vec<String> = (0..m).map(|c| var(e, c)).collect();
        row(&mut out, &format!("c1_e{}_{}", e.a, e.b), &terms, "= 1");
    }
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if combinatorial_cross(model, e, f) {
                for c in 0..m {
                    let name = format!("c2_e{}_{}_e{}_{}_c{c}", e.a, e.b, f.a, f.b);
                    row(&mut out, &name, &[var(e, c), var(f, c)], "<= 1");
                }
            }
        }
    }
    if cfg.enforce_class_size || cfg.mode != crate::partition::Mode::Subgraph {
        for c in 0..m {
            let terms: Vec<String> = edges.iter().map(|&e| var(e, c)).collect();
            row(&mut out, &format!("c3_c{c}"), &terms, &format!("= {}", points - 1));
        }
    }
    if cfg.enforce_triangle {
        for a in 0..points {
            for b in a + 1..points {
                for d in b + 1..points {
                    for c in 0..m {
                        let terms = [var(EdgeId::new(a, b), c), var(EdgeId::new(b, d), c), var(EdgeId::new(a, d), c)];
                        row(&mut out, &format!("c4_t{a}_{b}_{d}_c{c}"), &terms, "<= 2");
                    }
                }
            }
        }
    }
    out.push_str("Binaries\n");
    for &e in &edges {
        for c in 0..m {
            let _ = writeln!(out, " {}", var(e, c));
        }
    }
    out.push_str("End\n");
    out
}
