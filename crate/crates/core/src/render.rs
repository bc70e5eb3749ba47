//! SVG 1.1 pictures of arrangements and of the six regions around a pair.
//!
//! Geometry is exact up to the final coordinate formatting, which rounds to
//! three decimals.

use std::fmt::Write;

use num_traits::{Signed, Zero};

use crate::arrange::{Arrangement, Point};
use crate::error::{Error, Result};
use crate::mutate::swap;
use crate::rational::{int, to_fixed, Q};
use crate::regions::{region_constraints, HalfPlane, Region};

/// Pixels per unit before scaling.
const UNIT: i64 = 40;
const LABEL_BAND: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    pub pair: Option<(usize, usize)>,
    pub regions: bool,
    pub dashed_target: bool,
    pub x_scale: Q,
    pub y_scale: Q,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            pair: None,
            regions: false,
            dashed_target: true,
            x_scale: int(1),
            y_scale: int(1),
        }
    }
}

fn color(r: Region) -> &'static str {
    match r {
        Region::Red => "red",
        Region::Purple => "purple",
        Region::Olive => "olive",
        Region::Blue => "blue",
        Region::Green => "green",
        Region::Yellow => "yellow",
    }
}

struct Frame {
    xmin: Q,
    xmax: Q,
    ymin: Q,
    ymax: Q,
    sx: Q,
    sy: Q,
}

impl Frame {
    fn around(points: &[Point], x_scale: &Q, y_scale: &Q) -> Frame {
        let xs = points.iter().map(|p| &p.x);
        let ys = points.iter().map(|p| &p.y);
        let (xlo, xhi) = (xs.clone().min().expect("points").clone(), xs.max().expect("points").clone());
        let (ylo, yhi) = (ys.clone().min().expect("points").clone(), ys.max().expect("points").clone());
        let span = std::cmp::max(&xhi - &xlo, &yhi - &ylo);
        let pad = int(1) + span / int(3);
        Frame {
            xmin: xlo - &pad,
            xmax: xhi + &pad,
            ymin: ylo - &pad,
            ymax: yhi + &pad,
            sx: x_scale * int(UNIT),
            sy: y_scale * int(UNIT),
        }
    }

    fn px(&self, x: &Q) -> String {
        to_fixed(&((x - &self.xmin) * &self.sx), 3)
    }

    fn py(&self, y: &Q) -> String {
        to_fixed(&((&self.ymax - y) * &self.sy), 3)
    }

    fn width(&self) -> Q {
        (&self.xmax - &self.xmin) * &self.sx
    }

    fn height(&self) -> Q {
        (&self.ymax - &self.ymin) * &self.sy
    }

    fn corners(&self) -> Vec<Point> {
        vec![
            Point::new(self.xmin.clone(), self.ymin.clone()),
            Point::new(self.xmax.clone(), self.ymin.clone()),
            Point::new(self.xmax.clone(), self.ymax.clone()),
            Point::new(self.xmin.clone(), self.ymax.clone()),
        ]
    }

    /// Endpoints of the three rays from `apex`, clipped to the frame.
    fn rays(&self, apex: &Point) -> [Point; 3] {
        let t = std::cmp::min(&self.xmax - &apex.x, &self.ymax - &apex.y);
        [
            Point::new(self.xmin.clone(), apex.y.clone()),
            Point::new(apex.x.clone(), self.ymin.clone()),
            Point::new(&apex.x + &t, &apex.y + &t),
        ]
    }
}

/// Clips a convex polygon to the closure of `h`.
fn clip(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let mut out = Vec::new();
    for (k, p) in poly.iter().enumerate() {
        let q = &poly[(k + 1) % poly.len()];
        let (sp, sq) = (h.slack(p), h.slack(q));
        if !sp.is_negative() {
            out.push(p.clone());
        }
        if (sp.is_negative() && sq.is_positive()) || (sp.is_positive() && sq.is_negative()) {
            let t = &sp / (&sp - &sq);
            out.push(Point::new(&p.x + &t * (&q.x - &p.x), &p.y + &t * (&q.y - &p.y)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn polygon_area2(poly: &[Point]) -> Q {
    let mut s = Q::zero();
    for (k, p) in poly.iter().enumerate() {
        let q = &poly[(k + 1) % poly.len()];
        s += &p.x * &q.y - &q.x * &p.y;
    }
    s
}

fn write_line_group(out: &mut String, frame: &Frame, index: usize, apex: &Point, class: &str, style: &str) {
    let ax = frame.px(&apex.x);
    let ay = frame.py(&apex.y);
    let _ = writeln!(out, "  <g class=\"{class}\" id=\"{class}-{index}\" {style}>");
    let ray_class = if class == "line" { "ray" } else { "target-ray" };
    for end in frame.rays(apex) {
        let _ = writeln!(
            out,
            "    <line class=\"{ray_class}\" x1=\"{ax}\" y1=\"{ay}\" x2=\"{}\" y2=\"{}\"/>",
            frame.px(&end.x),
            frame.py(&end.y)
        );
    }
    let label = if class == "line" { index.to_string() } else { format!("{index}'") };
    let _ = writeln!(
        out,
        "    <text x=\"{ax}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\" stroke=\"none\" fill=\"black\">{label}</text>",
        to_fixed(&(frame.height() + int(14)), 3)
    );
    let _ = writeln!(out, "  </g>");
}

pub fn render(arr: &Arrangement, opts: &RenderOptions) -> Result<String> {
    if !opts.x_scale.is_positive() || !opts.y_scale.is_positive() {
        return Err(Error::BadSize("scale factors must be positive".to_string()));
    }
    arr.source().induce()?;
    let mut points: Vec<Point> = arr.lines().iter().map(|l| l.apex.clone()).collect();

    let mut target = None;
    if let Some((i, j)) = opts.pair {
        arr.line(i)?;
        arr.line(j)?;
        if opts.dashed_target {
            if let Ok(sw) = swap(arr.source(), i, j) {
                let p = Point::new(&arr.apex(j).x + &sw.epsilon, arr.apex(i).y.clone());
                points.push(p.clone());
                target = Some((i, p));
            }
        }
    }
    let frame = Frame::around(&points, &opts.x_scale, &opts.y_scale);

    let mut out = String::new();
    let w = to_fixed(&frame.width(), 3);
    let h = to_fixed(&(frame.height() + int(LABEL_BAND)), 3);
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "  <rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>");

    if let (Some((i, j)), true) = (opts.pair, opts.regions) {
        let (_, table) = region_constraints(arr.apex(i), arr.apex(j))?;
        let _ = writeln!(out, "  <g id=\"regions\" stroke=\"none\" fill-opacity=\"0.3\">");
        for (region, planes) in table {
            let poly = planes.iter().fold(frame.corners(), |p, h| clip(&p, h));
            if poly.len() < 3 || polygon_area2(&poly).is_zero() {
                continue;
            }
            let pts: Vec<String> = poly.iter().map(|p| format!("{},{}", frame.px(&p.x), frame.py(&p.y))).collect();
            let _ = writeln!(
                out,
                "    <polygon class=\"region\" id=\"region-{}\" fill=\"{}\" points=\"{}\"/>",
                region.name().to_lowercase(),
                color(region),
                pts.join(" ")
            );
        }
        let _ = writeln!(out, "  </g>");
    }

    for line in arr.lines() {
        let highlighted = opts.pair.is_some_and(|(i, j)| line.index == i || line.index == j);
        let style = if highlighted {
            "stroke=\"black\" stroke-width=\"2.5\" fill=\"none\""
        } else {
            "stroke=\"black\" stroke-width=\"1\" fill=\"none\""
        };
        write_line_group(&mut out, &frame, line.index, &line.apex, "line", style);
    }
    if let Some((i, p)) = target {
        write_line_group(
            &mut out,
            &frame,
            i,
            &p,
            "target",
            "stroke=\"gray\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" fill=\"none\"",
        );
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
