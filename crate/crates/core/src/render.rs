//! Deterministic SVG rendering of worlds, roadmaps, and planned paths.
//!
//! All coordinates are emitted in pixel space with three decimals, and every
//! element is written in a fixed order, so the same inputs always produce
//! byte-identical output.

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::plan::Algorithm;
use crate::roadmap::{EdgeZone, RefinedRoadmap};
use crate::world::{World, ZoneLabel};
use std::fmt::Write;

const COLOR_SAFE_FILL: &str = "#f2f5ee";
const COLOR_RISK_FILL: &str = "#cfe0f5";
const COLOR_OBSTACLE_FILL: &str = "#474a4f";
const COLOR_EDGE: &str = "#c9c9c9";
const COLOR_BORDER_VERTEX: &str = "#5b7fb0";
const COLOR_PATH_SAFE: &str = "#2f8f3b";
const COLOR_PATH_RISK: &str = "#d03a2f";
const COLOR_START: &str = "#1a7f2e";
const COLOR_GOAL: &str = "#b3261e";
const COLOR_TEXT: &str = "#222222";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStyle {
    Solid,
    Dashed,
    Dotted,
}

impl PathStyle {
    pub fn for_algorithm(algorithm: Algorithm) -> PathStyle {
        match algorithm {
            Algorithm::Dijkstra => PathStyle::Dashed,
            Algorithm::MinRisk => PathStyle::Dotted,
            _ => PathStyle::Solid,
        }
    }

    fn dash(self) -> Option<&'static str> {
        match self {
            PathStyle::Solid => None,
            PathStyle::Dashed => Some("7 4"),
            PathStyle::Dotted => Some("1.5 3.5"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenderPath {
    pub label: String,
    pub vertices: Vec<u32>,
    pub style: PathStyle,
}

#[derive(Clone, Copy, Debug)]
pub struct RenderOptions {
    /// Target image width in pixels (content scales to fit).
    pub width_px: f64,
    /// Draw roadmap edges and vertices under the paths.
    pub show_roadmap: bool,
    pub legend: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { width_px: 800.0, show_roadmap: false, legend: true }
    }
}

struct Frame {
    min: Point,
    scale: f64,
    margin: f64,
}

impl Frame {
    fn x(&self, p: Point) -> f64 {
        self.margin + (p.x - self.min.x) * self.scale
    }

    fn y(&self, p: Point) -> f64 {
        self.margin + (p.y - self.min.y) * self.scale
    }
}

fn px(v: f64) -> String {
    format!("{v:.3}")
}

/// Render a scene to SVG. `world` may be absent (explicit-graph scenarios),
/// in which case the frame is fitted to the roadmap.
pub fn render_svg(
    world: Option<&World>,
    roadmap: &RefinedRoadmap,
    paths: &[RenderPath],
    start: Option<u32>,
    goal: Option<u32>,
    options: &RenderOptions,
) -> Result<String> {
    let (min, max) = match world {
        Some(w) => w.bounds(),
        None => roadmap_bounds(roadmap)?,
    };
    let dx = (max.x - min.x).max(1e-9);
    let dy = (max.y - min.y).max(1e-9);
    let margin = 24.0;
    let scale = (options.width_px - 2.0 * margin).max(10.0) / dx;
    let frame = Frame { min, scale, margin };
    let width = options.width_px;
    let height = dy * scale + 2.0 * margin;

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\">",
        px(width),
        px(height),
        px(width),
        px(height)
    )?;
    writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>")?;

    match world {
        Some(World::Grid(grid)) => {
            writeln!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                px(frame.x(min)),
                px(frame.y(min)),
                px(dx * scale),
                px(dy * scale),
                COLOR_SAFE_FILL
            )?;
            let s = grid.cell_size();
            for r in 0..grid.rows() {
                // Merge each row into runs of equal label; Safe uses the
                // backdrop fill and is skipped.
                let mut c = 0;
                while c < grid.cols() {
                    let label = grid.cell(r, c);
                    let mut end = c + 1;
                    while end < grid.cols() && grid.cell(r, end) == label {
                        end += 1;
                    }
                    if label != ZoneLabel::Safe {
                        let fill = if label == ZoneLabel::Obstacle {
                            COLOR_OBSTACLE_FILL
                        } else {
                            COLOR_RISK_FILL
                        };
                        writeln!(
                            svg,
                            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                            px(frame.x(Point::new(c as f64 * s, r as f64 * s))),
                            px(frame.y(Point::new(c as f64 * s, r as f64 * s))),
                            px((end - c) as f64 * s * scale),
                            px(s * scale),
                            fill
                        )?;
                    }
                    c = end;
                }
            }
        }
        Some(World::Polygons(w)) => {
            writeln!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                px(frame.x(min)),
                px(frame.y(min)),
                px(dx * scale),
                px(dy * scale),
                COLOR_SAFE_FILL
            )?;
            for poly in &w.risk {
                write_polygon(&mut svg, &frame, poly, COLOR_RISK_FILL)?;
            }
            for poly in &w.obstacles {
                write_polygon(&mut svg, &frame, poly, COLOR_OBSTACLE_FILL)?;
            }
        }
        None => {}
    }

    if options.show_roadmap {
        writeln!(svg, "<g stroke=\"{COLOR_EDGE}\" stroke-width=\"0.6\">")?;
        for u in 0..roadmap.n_vertices() as u32 {
            for edge in roadmap.neighbors(u) {
                if edge.to > u {
                    let a = roadmap.position(u);
                    let b = roadmap.position(edge.to);
                    writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        px(frame.x(a)),
                        px(frame.y(a)),
                        px(frame.x(b)),
                        px(frame.y(b))
                    )?;
                }
            }
        }
        writeln!(svg, "</g>")?;
        writeln!(svg, "<g fill=\"{COLOR_BORDER_VERTEX}\">")?;
        for &b in roadmap.border_vertices() {
            let p = roadmap.position(b);
            writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"1.8\"/>",
                px(frame.x(p)),
                px(frame.y(p))
            )?;
        }
        writeln!(svg, "</g>")?;
    }

    for path in paths {
        write_path(&mut svg, &frame, roadmap, path)?;
    }

    let marker = |v: Option<u32>, color: &str, tag: &str, svg: &mut String| -> Result<()> {
        if let Some(v) = v {
            if (v as usize) >= roadmap.n_vertices() {
                return Err(Error::InvalidQuery(format!(
                    "marker vertex {v} out of range"
                )));
            }
            let p = roadmap.position(v);
            writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{}\" stroke=\"#ffffff\" \
                 stroke-width=\"1.5\"/>",
                px(frame.x(p)),
                px(frame.y(p)),
                color
            )?;
            writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
                 fill=\"{}\">{}</text>",
                px(frame.x(p) + 7.0),
                px(frame.y(p) - 7.0),
                COLOR_TEXT,
                tag
            )?;
        }
        Ok(())
    };
    marker(start, COLOR_START, "S", &mut svg)?;
    marker(goal, COLOR_GOAL, "G", &mut svg)?;

    if options.legend && !paths.is_empty() {
        let rows = paths.len();
        let box_h = 14.0 * rows as f64 + 10.0;
        writeln!(
            svg,
            "<rect x=\"8\" y=\"8\" width=\"190\" height=\"{}\" fill=\"#ffffff\" \
             fill-opacity=\"0.85\" stroke=\"#999999\" stroke-width=\"0.5\"/>",
            px(box_h)
        )?;
        for (i, path) in paths.iter().enumerate() {
            let y = 18.0 + 14.0 * i as f64;
            let dash = match path.style.dash() {
                Some(d) => format!(" stroke-dasharray=\"{d}\""),
                None => String::new(),
            };
            writeln!(
                svg,
                "<line x1=\"14\" y1=\"{}\" x2=\"46\" y2=\"{}\" stroke=\"{}\" \
                 stroke-width=\"2.5\"{}/>",
                px(y),
                px(y),
                COLOR_PATH_SAFE,
                dash
            )?;
            writeln!(
                svg,
                "<text x=\"52\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
                 fill=\"{}\">{}</text>",
                px(y + 3.5),
                COLOR_TEXT,
                escape(&path.label)
            )?;
        }
    }

    writeln!(svg, "</svg>")?;
    Ok(svg)
}

fn roadmap_bounds(roadmap: &RefinedRoadmap) -> Result<(Point, Point)> {
    if roadmap.n_vertices() == 0 {
        return Err(Error::EmptyRoadmap);
    }
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in 0..roadmap.n_vertices() as u32 {
        let p = roadmap.position(v);
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    let pad = 0.05 * ((max.x - min.x) + (max.y - min.y)).max(1.0);
    Ok((
        Point::new(min.x - pad, min.y - pad),
        Point::new(max.x + pad, max.y + pad),
    ))
}

fn write_polygon(svg: &mut String, frame: &Frame, poly: &[Point], fill: &str) -> Result<()> {
    let mut d = String::new();
    for (i, &p) in poly.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{} {} ", px(frame.x(p)), px(frame.y(p)))?;
    }
    writeln!(svg, "<path d=\"{}Z\" fill=\"{fill}\"/>", d)?;
    Ok(())
}

/// A path is drawn as one polyline per maximal run of same-zone edges, so
/// risk excursions read in a different color than safe travel.
fn write_path(
    svg: &mut String,
    frame: &Frame,
    roadmap: &RefinedRoadmap,
    path: &RenderPath,
) -> Result<()> {
    if path.vertices.len() < 2 {
        // Degenerate start == goal plans still get their start marker.
        return Ok(());
    }
    let dash = match path.style.dash() {
        Some(d) => format!(" stroke-dasharray=\"{d}\""),
        None => String::new(),
    };
    writeln!(
        svg,
        "<g fill=\"none\" stroke-width=\"2.5\" stroke-linecap=\"round\" \
         stroke-linejoin=\"round\"{dash}>"
    )?;
    let mut run: Vec<u32> = vec![path.vertices[0]];
    let mut run_zone: Option<EdgeZone> = None;
    let flush = |svg: &mut String, run: &[u32], zone: EdgeZone| -> Result<()> {
        let color = match zone {
            EdgeZone::Safe => COLOR_PATH_SAFE,
            EdgeZone::Risk => COLOR_PATH_RISK,
        };
        let mut points = String::new();
        for &v in run {
            let p = roadmap.position(v);
            write!(points, "{},{} ", px(frame.x(p)), px(frame.y(p)))?;
        }
        writeln!(
            svg,
            "<polyline stroke=\"{}\" points=\"{}\"/>",
            color,
            points.trim_end()
        )?;
        Ok(())
    };
    for pair in path.vertices.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let edge = roadmap.edge_between(u, v).ok_or(Error::NotAnEdge {
            from: u as usize,
            to: v as usize,
        })?;
        if run_zone != Some(edge.zone) {
            if let Some(zone) = run_zone {
                flush(svg, &run, zone)?;
            }
            run.clear();
            run.push(u);
            run_zone = Some(edge.zone);
        }
        run.push(v);
    }
    if let Some(zone) = run_zone {
        flush(svg, &run, zone)?;
    }
    writeln!(svg, "</g>")?;
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
