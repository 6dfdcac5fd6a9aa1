use std::fmt::Write;

use super::format_pct;
use crate::model::Layout;

const MARGIN: f64 = 10.0;
const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Draws the bed and every placement in millimeter user units, origin at
/// the top-left corner with Y pointing down.
pub fn render_svg(layout: &Layout) -> String {
    let plat = layout.platform();
    let (len, wid) = (plat.length(), plat.width());
    let label_size = (len.min(wid) / 25.0).max(1.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}mm" height="{}mm">"#,
        -MARGIN,
        -MARGIN,
        len + 2.0 * MARGIN,
        wid + 2.0 * MARGIN,
        len + 2.0 * MARGIN,
        wid + 2.0 * MARGIN,
    );
    let _ = writeln!(
        s,
        "  <title>{}: {}% covered, {} mm3</title>",
        escape(plat.name()),
        format_pct(layout.coverage_pct()),
        layout.total_mass()
    );
    let _ = writeln!(
        s,
        r##"  <rect class="platform" x="0" y="0" width="{len}" height="{wid}" fill="#f4f4f4" stroke="#000" stroke-width="0.8"/>"##
    );
    for (i, p) in layout.placements().iter().enumerate() {
        let (l, w) = (p.placed_length(), p.placed_width());
        let name = escape(p.part().name());
        let _ = writeln!(
            s,
            r##"  <g class="placement" data-part="{name}" data-rotated="{}">"##,
            p.rotated()
        );
        let _ = writeln!(
            s,
            r##"    <rect x="{}" y="{}" width="{l}" height="{w}" fill="{}" stroke="#333" stroke-width="0.5"/>"##,
            p.x(),
            p.y(),
            PALETTE[i % PALETTE.len()]
        );
        let _ = writeln!(
            s,
            r#"    <text x="{}" y="{}" font-size="{label_size}" text-anchor="middle" dominant-baseline="central">{name}</text>"#,
            p.x() + l / 2.0,
            p.y() + w / 2.0
        );
        let _ = writeln!(s, "  </g>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Part, Placement, Platform};

    fn plat() -> Platform {
        Platform::new("A1", 200.0, 100.0, 100.0).unwrap()
    }

    #[test]
    fn empty_layout_draws_only_platform() {
        let svg = render_svg(&Layout::empty(plat()));
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(svg.contains(r#"class="platform" x="0" y="0" width="200" height="100""#));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn full_bed_part_is_congruent() {
        let part = Part::new("all", 200.0, 100.0, 10.0, 1.0).unwrap();
        let svg = render_svg(&Layout::new(
            plat(),
            vec![Placement::new(part, 0.0, 0.0, false)],
            vec![],
        ));
        assert_eq!(svg.matches("<rect").count(), 2);
        assert!(svg.contains(r#"<rect x="0" y="0" width="200" height="100""#));
        assert!(svg.contains(">all</text>"));
    }

    #[test]
    fn names_are_escaped() {
        let part = Part::new("a<b&c", 10.0, 10.0, 10.0, 1.0).unwrap();
        let svg = render_svg(&Layout::new(
            plat(),
            vec![Placement::new(part, 0.0, 0.0, false)],
            vec![],
        ));
        assert!(svg.contains("a&lt;b&amp;c"));
        assert!(!svg.contains("a<b"));
    }
}
