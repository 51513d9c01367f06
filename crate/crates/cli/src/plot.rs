//! Static SVG rendering of an instance and, optionally, a hitting set.

use std::fmt::Write;

use hitset::solution::HitRole;
use hitset::{GeomObject, HittingSet, Instance, Point, Rational};
use num_traits::ToPrimitive;

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn xy(p: &Point) -> (f64, f64) {
    (f(&p.x), f(&p.y))
}

struct Frame {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn around(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for (x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let pad = 1.0 + 0.1 * (x1 - x0).max(y1 - y0);
        let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
        let scale = (CANVAS - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
        Frame { x0, y0, x1, y1, scale }
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, CANVAS - MARGIN - (y - self.y0) * self.scale)
    }

    /// Parameter range of `p + t d` inside the frame, intersected with `[lo, hi]`.
    fn clip(&self, p: (f64, f64), d: (f64, f64), mut lo: f64, mut hi: f64) -> Option<(f64, f64)> {
        for (pos, dir, min, max) in [(p.0, d.0, self.x0, self.x1), (p.1, d.1, self.y0, self.y1)] {
            if dir == 0.0 {
                if pos < min || pos > max {
                    return None;
                }
                continue;
            }
            let (a, b) = ((min - pos) / dir, (max - pos) / dir);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        (lo <= hi).then_some((lo, hi))
    }
}

fn class(obj: &GeomObject) -> &'static str {
    let dir = obj.orientation();
    if dir.is_horizontal() {
        "h"
    } else if dir.is_vertical() {
        "v"
    } else {
        "s"
    }
}

pub fn render(inst: &Instance, set: Option<&HittingSet>) -> String {
    let mut anchors: Vec<(f64, f64)> = inst.members().flat_map(|o| o.endpoints()).map(|p| xy(&p)).collect();
    anchors.extend(inst.members().filter(|o| o.endpoints().is_empty()).map(|o| xy(o.anchor())));
    if let Some(set) = set {
        anchors.extend(set.points.iter().map(|h| xy(&h.point)));
    }
    let frame = Frame::around(anchors.into_iter());

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    out.push_str(concat!(
        "<style>line{stroke-width:2;stroke-linecap:round}",
        ".h{stroke:#1f77b4}.v{stroke:#2ca02c}.s{stroke:#9467bd}",
        "circle.hit{fill:#222}circle.triple{fill:#d62728;stroke:#222;stroke-width:1.5}</style>\n"
    ));
    writeln!(out, r##"<rect width="{CANVAS}" height="{CANVAS}" fill="#fff"/>"##).unwrap();
    for (i, u) in inst.unions.iter().enumerate() {
        writeln!(out, r#"<g id="u{i}">"#).unwrap();
        for obj in &u.members {
            let (dx, dy) = obj.direction_vector();
            let (d, p) = ((f(&dx), f(&dy)), xy(obj.anchor()));
            let (lo, hi) = match obj {
                GeomObject::Segment { .. } => (0.0, 1.0),
                GeomObject::Ray { .. } => (0.0, f64::INFINITY),
                GeomObject::Line { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            };
            let Some((lo, hi)) = frame.clip(p, d, lo, hi) else { continue };
            let (a, b) = (frame.px((p.0 + lo * d.0, p.1 + lo * d.1)), frame.px((p.0 + hi * d.0, p.1 + hi * d.1)));
            writeln!(out, r#"<line class="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, class(obj), a.0, a.1, b.0, b.1)
                .unwrap();
        }
        out.push_str("</g>\n");
    }
    for h in set.iter().flat_map(|s| &s.points) {
        let (x, y) = frame.px(xy(&h.point));
        let (class, r) = if h.role == HitRole::Triple { ("triple", 6) } else { ("hit", 4) };
        writeln!(out, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="{r}"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hitset::geom::rat;

    #[test]
    fn empty_canvas() {
        let svg = render(&Instance::default(), None);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<line") && !svg.contains("<circle"));
    }

    #[test]
    fn infinite_objects_are_clipped() {
        let line = GeomObject::line(Point::from_ints(3, 0), rat(0), rat(1)).unwrap();
        let ray = GeomObject::ray(Point::from_ints(0, 2), rat(1), rat(0)).unwrap();
        let inst = Instance::from_objects([line, ray]);
        let mut set = HittingSet::new();
        set.push_triple(Point::from_ints(3, 2));
        let svg = render(&inst, Some(&set));
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches(r#"class="triple""#).count(), 1);
        assert!(!svg.contains("inf") && !svg.contains("NaN"));
    }
}
