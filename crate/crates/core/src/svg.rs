//! SVG pictures of arrangements. Coordinates are converted to floats for
//! display only.

use std::fmt::Write;

use crate::arrangement::Arrangement;
use crate::faces::{build_subdivision, default_clip_box};
use crate::geom::{ClipBox, PieceKind, Point};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default)]
pub struct RenderOptions<T> {
    /// Extra boxes to outline, e.g. the two boxes of a projectivization.
    pub boxes: Vec<ClipBox<T>>,
}

const SIZE: f64 = 600.0;
const PALETTE: [&str; 6] = ["#dbe9f6", "#f6e3db", "#e2f3dc", "#efe0f5", "#f7f1d5", "#dcf2f1"];
const INK: [&str; 6] = ["#1f4e79", "#a33b20", "#2e6b30", "#6a2c83", "#8a6d00", "#1c6f6b"];

pub fn render_svg<T: Scalar>(arr: &Arrangement<T>, opts: &RenderOptions<T>) -> String {
    let sub = build_subdivision(arr);
    let mut view = default_clip_box(arr);
    for b in &opts.boxes {
        view = ClipBox::new(
            Point::new(
                view.min.x.clone().min(b.min.x.clone()),
                view.min.y.clone().min(b.min.y.clone()),
            ),
            Point::new(
                view.max.x.clone().max(b.max.x.clone()),
                view.max.y.clone().max(b.max.y.clone()),
            ),
        );
    }
    let (x0, y1) = (view.min.x.to_f64_lossy(), view.max.y.to_f64_lossy());
    let scale = SIZE / view.width().to_f64_lossy().max(view.height().to_f64_lossy());
    let w = view.width().to_f64_lossy() * scale;
    let h = view.height().to_f64_lossy() * scale;
    let xy = |p: &Point<T>| {
        format!(
            "{:.3},{:.3}",
            (p.x.to_f64_lossy() - x0) * scale,
            (y1 - p.y.to_f64_lossy()) * scale
        )
    };

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    writeln!(s, r#"<g id="faces" stroke="none">"#).unwrap();
    for (i, f) in sub.interior_faces().enumerate() {
        let pts: Vec<String> = sub.face_polygon(f).iter().map(&xy).collect();
        writeln!(
            s,
            r#"<polygon points="{}" fill="{}"/>"#,
            pts.join(" "),
            PALETTE[i % PALETTE.len()]
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    for b in &opts.boxes {
        let c: Vec<String> = b.corners().iter().map(&xy).collect();
        writeln!(
            s,
            r##"<polygon class="box" points="{}" fill="none" stroke="#888" stroke-dasharray="6 4"/>"##,
            c.join(" ")
        )
        .unwrap();
    }

    writeln!(s, r#"<g id="lines" fill="none" stroke-width="2">"#).unwrap();
    for (i, line) in arr.lines().iter().enumerate() {
        let mut pts = Vec::new();
        for (k, piece) in line.pieces().into_iter().enumerate() {
            let far = match piece.kind {
                PieceKind::Segment => piece.end().expect("segment"),
                PieceKind::Ray => view.ray_exit(&piece.origin, &piece.dir),
            };
            // The start ray is parametrised away from the curve.
            pts.push(far);
            if k == 0 {
                pts.push(piece.origin.clone());
            }
        }
        let d: Vec<String> = pts.iter().map(&xy).collect();
        writeln!(
            s,
            r#"<path id="line-{}" d="M {}" stroke="{}"><title>{}</title></path>"#,
            escape(line.id.as_str()),
            d.join(" L "),
            INK[i % INK.len()],
            escape(line.id.as_str())
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r#"<g id="points" fill="black">"#).unwrap();
    for p in arr.points() {
        let c = xy(&p.location);
        let (cx, cy) = c.split_once(',').expect("pair");
        writeln!(
            s,
            r#"<circle cx="{cx}" cy="{cy}" r="4"><title>{}</title></circle>"#,
            p.location
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
