//! SVG and DOT emitters for snake graphs and fence posets.

use std::fmt::Write;

use crate::fence::{FencePoset, OrderIdeal};
use crate::snake::{Matching, SnakeGraph};

const UNIT: i64 = 40;
const PAD: i64 = 20;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Draws `G(w)` with `𝔟` dashed and, when given, the matching `m` solid, the
/// cells enclosed by `m Δ 𝔟` shaded.
pub fn snake_svg(g: &SnakeGraph, m: Option<&Matching>) -> String {
    let max_x = g.vertices().iter().map(|v| v.0).max().unwrap_or(1);
    let max_y = g.vertices().iter().map(|v| v.1).max().unwrap_or(1);
    let (w, h) = (max_x * UNIT + 2 * PAD, max_y * UNIT + 2 * PAD);
    // y grows upwards in the lattice, downwards on screen
    let sx = |x: i64| x * UNIT + PAD;
    let sy = |y: i64| (max_y - y) * UNIT + PAD;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, "<title>snake graph of {}</title>", escape(&g.word().to_string()));
    if let Some(m) = m {
        let _ = writeln!(out, r##"<g class="enclosed" fill="#f2c14e" fill-opacity="0.6">"##);
        for i in g.enclosed_cells(m) {
            let (x, y) = g.cells()[i];
            let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{UNIT}" height="{UNIT}"/>"#, sx(x), sy(y + 1));
        }
        out.push_str("</g>\n");
    }
    out.push_str(r##"<g class="grid" stroke="#bbb" stroke-width="1">"##);
    out.push('\n');
    for e in g.edges() {
        let _ =
            writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, sx(e.0 .0), sy(e.0 .1), sx(e.1 .0), sy(e.1 .1));
    }
    out.push_str("</g>\n");
    out.push_str(r##"<g class="basic" stroke="#1f5fa8" stroke-width="3" stroke-dasharray="6 4">"##);
    out.push('\n');
    for e in g.basic_matching().edges() {
        let _ =
            writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, sx(e.0 .0), sy(e.0 .1), sx(e.1 .0), sy(e.1 .1));
    }
    out.push_str("</g>\n");
    if let Some(m) = m {
        out.push_str(r##"<g class="matching" stroke="#c0392b" stroke-width="5" stroke-linecap="round">"##);
        out.push('\n');
        for e in m.edges() {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                sx(e.0 .0),
                sy(e.0 .1),
                sx(e.1 .0),
                sy(e.1 .1)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Draws `F(w)` as a mountain range; elements of `ideal` are filled.
pub fn fence_svg(f: &FencePoset, ideal: Option<&OrderIdeal>) -> String {
    let heights = f.heights();
    let (lo, hi) = (*heights.iter().min().unwrap(), *heights.iter().max().unwrap());
    let w = (f.size() as i64 - 1) * UNIT + 2 * PAD;
    let h = (hi - lo) * UNIT + 2 * PAD + 16;
    let px = |i: usize| i as i64 * UNIT + PAD;
    let py = |i: usize| (hi - heights[i]) * UNIT + PAD;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, "<title>fence poset of {}</title>", escape(&f.word().to_string()));
    out.push_str(r##"<g class="covers" stroke="#333" stroke-width="2">"##);
    out.push('\n');
    for i in 1..f.size() {
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(i - 1), py(i - 1), px(i), py(i));
    }
    out.push_str("</g>\n<g class=\"elements\" stroke=\"#333\" stroke-width=\"2\">\n");
    for i in 0..f.size() {
        let filled = ideal.is_some_and(|j| j.contains(i));
        let fill = if filled { "#333" } else { "#fff" };
        let _ =
            writeln!(out, r#"<circle cx="{}" cy="{}" r="7" fill="{fill}"><title>y{i}</title></circle>"#, px(i), py(i));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Hasse diagram in DOT, bottom-to-top; elements of `ideal` are filled.
pub fn fence_dot(f: &FencePoset, ideal: Option<&OrderIdeal>) -> String {
    let mut out = String::from("digraph fence {\n  rankdir=BT;\n  node [shape=circle, label=\"\"];\n");
    for (i, h) in f.heights().iter().enumerate() {
        let filled = ideal.is_some_and(|j| j.contains(i));
        let style = if filled { ", style=filled, fillcolor=black" } else { "" };
        let _ = writeln!(out, "  y{i} [xlabel=\"y{i}\", comment=\"height {h}\"{style}];");
    }
    for (lo, up) in f.covers() {
        let _ = writeln!(out, "  y{lo} -> y{up} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

/// The snake graph in DOT with neato positions; basic edges dashed, matching edges bold.
pub fn snake_dot(g: &SnakeGraph, m: Option<&Matching>) -> String {
    let name = |v: (i64, i64)| format!("\"{},{}\"", v.0, v.1);
    let mut out = String::from("graph snake {\n  node [shape=point];\n");
    for &v in g.vertices() {
        let _ = writeln!(out, "  {} [pos=\"{},{}!\"];", name(v), v.0, v.1);
    }
    for e in g.edges() {
        let mut attrs = Vec::new();
        if g.basic_matching().contains(e) {
            attrs.push("style=dashed");
        }
        if m.is_some_and(|m| m.contains(e)) {
            attrs.push("penwidth=3");
        }
        let attrs = if attrs.is_empty() { String::new() } else { format!(" [{}]", attrs.join(", ")) };
        let _ = writeln!(out, "  {} -- {}{attrs};", name(e.0), name(e.1));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fence::fence_of_word;

    fn parses(svg: &str) -> roxmltree::Document<'_> {
        roxmltree::Document::parse(svg).expect("well-formed XML")
    }

    #[test]
    fn snake_svg_structure() {
        let g = SnakeGraph::new(&"0010".parse().unwrap());
        let ms = g.enumerate_matchings().unwrap();
        for m in &ms {
            let svg = snake_svg(&g, Some(m));
            let doc = parses(&svg);
            let count = |class: &str| {
                doc.descendants()
                    .find(|n| n.attribute("class") == Some(class))
                    .map_or(0, |n| n.children().filter(|c| c.is_element()).count())
            };
            assert_eq!(count("grid"), g.edges().len());
            assert_eq!(count("basic"), g.basic_matching().edges().len());
            assert_eq!(count("matching"), m.edges().len());
            assert_eq!(count("enclosed"), g.area(m));
        }
        parses(&snake_svg(&g, None));
    }

    #[test]
    fn fence_svg_structure() {
        let f = fence_of_word(&"0111".parse().unwrap());
        for i in f.enumerate_ideals().unwrap() {
            let svg = fence_svg(&f, Some(&i));
            let doc = parses(&svg);
            let filled =
                doc.descendants().filter(|n| n.has_tag_name("circle") && n.attribute("fill") == Some("#333")).count();
            assert_eq!(filled, i.len());
        }
        parses(&fence_svg(&fence_of_word(&"".parse().unwrap()), None));
    }

    #[test]
    fn dot_output() {
        let f = fence_of_word(&"01".parse().unwrap());
        let dot = fence_dot(&f, Some(&OrderIdeal::from_indices([1])));
        assert!(dot.contains("y1 -> y0") && dot.contains("y1 -> y2"));
        assert!(dot.contains("y1 [xlabel=\"y1\", comment=\"height -1\", style=filled"));
        let g = SnakeGraph::new(&"0".parse().unwrap());
        let dot = snake_dot(&g, None);
        assert_eq!(dot.matches(" -- ").count(), g.edges().len());
        assert_eq!(dot.matches("dashed").count(), 3);
    }
}
