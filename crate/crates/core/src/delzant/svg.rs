//! SVG drawings of planar polytopes.

use num_traits::ToPrimitive;

use super::RationalPolytope;

/// Draws 2-dimensional polytopes, each with a label at its centroid; polytopes
/// of other dimensions are skipped.
pub fn render_svg(items: &[(&RationalPolytope, String)]) -> String {
    render_svg_marked(items, &[])
}

/// Like [`render_svg`], with extra segments drawn thick and red on top.
pub fn render_svg_marked(
    items: &[(&RationalPolytope, String)],
    marks: &[[(f64, f64); 2]],
) -> String {
    let polys: Vec<(Vec<(f64, f64)>, &str)> = items
        .iter()
        .filter(|(p, _)| p.dim == 2)
        .map(|(p, label)| {
            let pts = p
                .polygon_order()
                .into_iter()
                .map(|v| {
                    let c = &p.vertices[v];
                    (c[0].to_f64().unwrap_or(0.0), c[1].to_f64().unwrap_or(0.0))
                })
                .collect();
            (pts, label.as_str())
        })
        .collect();
    let all = polys.iter().flat_map(|(p, _)| p.iter().copied());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (x, y) in all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let size = 400.0;
    let margin = 20.0;
    let s = (size - 2.0 * margin) / span;
    let map = |(x, y): (f64, f64)| (margin + (x - x0) * s, size - margin - (y - y0) * s);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    );
    for (k, (pts, label)) in polys.iter().enumerate() {
        let hue = (k * 67) % 360;
        let path: Vec<String> = pts
            .iter()
            .map(|&p| map(p))
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        out.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"hsl({hue},60%,75%)\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
            path.join(" ")
        ));
        let n = pts.len() as f64;
        let c = pts
            .iter()
            .fold((0.0, 0.0), |a, p| (a.0 + p.0 / n, a.1 + p.1 / n));
        let (cx, cy) = map(c);
        out.push_str(&format!(
            "  <text x=\"{cx:.2}\" y=\"{cy:.2}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
            label.replace('&', "&amp;").replace('<', "&lt;")
        ));
    }
    for [a, b] in marks {
        let ((ax, ay), (bx, by)) = (map(*a), map(*b));
        out.push_str(&format!(
            "  <line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" stroke=\"red\" stroke-width=\"4\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}
