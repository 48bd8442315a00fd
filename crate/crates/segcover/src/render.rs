//! Deterministic SVG output: one unit = one pixel, y pointing up.

use crate::geom::Segment;
use crate::instance::{Instance, Placement};

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn capsule_path(s: &Segment, rho: f64) -> String {
    let dx = s.b.x - s.a.x;
    let dy = s.b.y - s.a.y;
    let len = (dx * dx + dy * dy).sqrt();
    let (nx, ny) = (-dy / len * rho, dx / len * rho);
    format!(
        "M {} {} L {} {} A {} {} 0 0 0 {} {} L {} {} A {} {} 0 0 0 {} {} Z",
        num(s.a.x + nx),
        num(s.a.y + ny),
        num(s.b.x + nx),
        num(s.b.y + ny),
        num(rho),
        num(rho),
        num(s.b.x - nx),
        num(s.b.y - ny),
        num(s.a.x - nx),
        num(s.a.y - ny),
        num(rho),
        num(rho),
        num(s.a.x + nx),
        num(s.a.y + ny),
    )
}

/// Renders the region, its segments, optionally the hippodrome outlines,
/// and the sensors of a placement as disks of radius `rho`. Output is a
/// well-formed standalone SVG document, byte-identical for equal inputs.
pub fn render_svg(inst: &Instance, placement: Option<&Placement>, hippodromes: bool) -> String {
    let w = inst.width();
    let h = inst.height();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        num(w), num(h), num(w), num(h)
    ));
    out.push_str(&format!("<g transform=\"translate(0,{}) scale(1,-1)\">\n", num(h)));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n",
        num(w), num(h)
    ));
    if hippodromes {
        for s in &inst.segments {
            if s.is_point() {
                out.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.25\"/>\n",
                    num(s.a.x), num(s.a.y), num(inst.rho)
                ));
            } else {
                out.push_str(&format!(
                    "<path d=\"{}\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.25\"/>\n",
                    capsule_path(s, inst.rho)
                ));
            }
        }
    }
    for s in &inst.segments {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"blue\" stroke-width=\"0.5\" stroke-linecap=\"round\"/>\n",
            num(s.a.x), num(s.a.y), num(s.b.x), num(s.b.y)
        ));
    }
    if let Some(pl) = placement {
        for p in &pl.sensors {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"red\" fill-opacity=\"0.15\" stroke=\"red\" stroke-width=\"0.5\"/>\n",
                num(p.x), num(p.y), num(inst.rho)
            ));
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
