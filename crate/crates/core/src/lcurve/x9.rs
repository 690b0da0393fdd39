//! Zero set of the perturbed `X₉` model
//! `f(x, y) = (x² + y² − 4ε)(x² + 2y² − ε) − δ` on a square window.
//!
//! The set is traced by marching squares: `f` is sampled on a regular grid,
//! each sign change along a grid edge becomes a polyline vertex placed by
//! linear interpolation, and vertices are chained cell by cell. Saddle
//! cells are split using the cell-center average. Each chain visits a grid
//! edge at most once, so closed chains are simple polygons at grid scale.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Smallest accepted grid resolution (cells per side).
pub const MIN_RESOLUTION: usize = 64;

/// `δ / ε²` must not exceed this.
pub const DELTA_RATIO: f64 = 0.01;

/// Sub-cell grid offsets tried, in order, when a node lands exactly on the
/// zero set.
const GRID_OFFSETS: [f64; 4] = [0.0, 0.3141592653589793, 0.2718281828459045, 0.1618033988749895];

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum OvalError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),
    #[error("zero set meets grid nodes exactly after {retries} grid offsets")]
    DegenerateLevelSet { retries: usize },
    #[error("{open} zero-set chain(s) leave the window; enlarge it")]
    CurveLeavesWindow { open: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    /// `[lo, hi]²`.
    pub fn square(lo: f64, hi: f64) -> Self {
        Self { x_min: lo, x_max: hi, y_min: lo, y_max: hi }
    }
}

pub fn x9_value(epsilon: f64, delta: f64, x: f64, y: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    (x2 + y2 - 4.0 * epsilon) * (x2 + 2.0 * y2 - epsilon) - delta
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OvalComponent {
    /// Closed polyline; the last vertex connects back to the first.
    pub points: Vec<[f64; 2]>,
    /// Signed shoelace area.
    pub area: f64,
    /// Number of other components containing this one.
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OvalReport {
    pub epsilon: f64,
    pub delta: f64,
    pub delta_threshold: f64,
    pub window: Window,
    pub resolution: usize,
    /// Grid shift as a fraction of the cell size (nonzero only after a
    /// degenerate sample).
    pub grid_offset: f64,
    pub component_count: usize,
    /// Components sorted by decreasing enclosed area.
    pub components: Vec<OvalComponent>,
    /// `[outer, inner]` index pairs.
    pub containment: Vec<[usize; 2]>,
    /// Exactly two components, one inside the other.
    pub nested_pair: bool,
}

/// Extracts the closed components of the zero set of the perturbed model.
pub fn x9_ovals(epsilon: f64, delta: f64, window: Window, resolution: usize) -> Result<OvalReport, OvalError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(OvalError::Precondition(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    let threshold = DELTA_RATIO * epsilon * epsilon;
    if !(delta > 0.0 && delta <= threshold) {
        return Err(OvalError::Precondition(format!("delta = {delta} must lie in (0, {threshold:e}]")));
    }
    if !(window.x_min < window.x_max && window.y_min < window.y_max) {
        return Err(OvalError::Precondition("empty window".into()));
    }
    if resolution < MIN_RESOLUTION {
        return Err(OvalError::ResolutionTooCoarse(format!("{resolution} < {MIN_RESOLUTION} cells per side")));
    }

    let f = |x: f64, y: f64| x9_value(epsilon, delta, x, y);
    for &offset in &GRID_OFFSETS {
        let grid = Grid::sample(&f, window, resolution, offset);
        if grid.values.contains(&0.0) {
            continue;
        }
        let mut components = grid.trace()?;
        components.sort_by(|a, b| b.area.abs().total_cmp(&a.area.abs()));
        let containment = nesting(&mut components);
        let nested_pair = components.len() == 2 && containment == [[0, 1]];
        return Ok(OvalReport {
            epsilon,
            delta,
            delta_threshold: threshold,
            window,
            resolution,
            grid_offset: offset,
            component_count: components.len(),
            components,
            containment,
            nested_pair,
        });
    }
    Err(OvalError::DegenerateLevelSet { retries: GRID_OFFSETS.len() })
}

struct Grid {
    n: usize,
    x0: f64,
    y0: f64,
    hx: f64,
    hy: f64,
    /// `(n + 1)²` samples, row-major in `y`.
    values: Vec<f64>,
}

const NONE: u32 = u32::MAX;

impl Grid {
    fn sample(f: &impl Fn(f64, f64) -> f64, w: Window, n: usize, offset: f64) -> Self {
        let hx = (w.x_max - w.x_min) / n as f64;
        let hy = (w.y_max - w.y_min) / n as f64;
        let x0 = w.x_min + offset * hx;
        let y0 = w.y_min + offset * hy;
        let mut values = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            let y = y0 + j as f64 * hy;
            for i in 0..=n {
                values.push(f(x0 + i as f64 * hx, y));
            }
        }
        Self { n, x0, y0, hx, hy, values }
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    fn horizontal_edges(&self) -> usize {
        self.n * (self.n + 1)
    }

    /// Edge from node `(i, j)` to `(i + 1, j)`.
    fn h_edge(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    /// Edge from node `(i, j)` to `(i, j + 1)`.
    fn v_edge(&self, i: usize, j: usize) -> usize {
        self.horizontal_edges() + j * (self.n + 1) + i
    }

    fn edge_nodes(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        if e < self.horizontal_edges() {
            let (j, i) = (e / self.n, e % self.n);
            ((i, j), (i + 1, j))
        } else {
            let r = e - self.horizontal_edges();
            let (j, i) = (r / (self.n + 1), r % (self.n + 1));
            ((i, j), (i, j + 1))
        }
    }

    fn crossing(&self, e: usize) -> [f64; 2] {
        let ((ia, ja), (ib, jb)) = self.edge_nodes(e);
        let (fa, fb) = (self.value(ia, ja), self.value(ib, jb));
        let s = fa / (fa - fb);
        let xa = self.x0 + ia as f64 * self.hx;
        let ya = self.y0 + ja as f64 * self.hy;
        let xb = self.x0 + ib as f64 * self.hx;
        let yb = self.y0 + jb as f64 * self.hy;
        [xa + s * (xb - xa), ya + s * (yb - ya)]
    }

    fn trace(&self) -> Result<Vec<OvalComponent>, OvalError> {
        let n = self.n;
        let total = self.horizontal_edges() + n * (n + 1);
        let mut links = vec![[NONE; 2]; total];
        let mut link = |a: usize, b: usize| {
            for (from, to) in [(a, b), (b, a)] {
                let slot = &mut links[from];
                if slot[0] == NONE {
                    slot[0] = to as u32;
                } else {
                    slot[1] = to as u32;
                }
            }
        };

        for j in 0..n {
            for i in 0..n {
                let v = [self.value(i, j), self.value(i + 1, j), self.value(i + 1, j + 1), self.value(i, j + 1)];
                let pos = v.map(|x| x > 0.0);
                // bottom, right, top, left
                let edges = [self.h_edge(i, j), self.v_edge(i + 1, j), self.h_edge(i, j + 1), self.v_edge(i, j)];
                let crossed: Vec<usize> = (0..4).filter(|&k| pos[k] != pos[(k + 1) % 4]).collect();
                match crossed.len() {
                    0 => {}
                    2 => link(edges[crossed[0]], edges[crossed[1]]),
                    4 => {
                        let center = (v[0] + v[1] + v[2] + v[3]) / 4.0 > 0.0;
                        if center == pos[0] {
                            // corners 1 and 3 are cut off
                            link(edges[0], edges[1]);
                            link(edges[2], edges[3]);
                        } else {
                            link(edges[3], edges[0]);
                            link(edges[1], edges[2]);
                        }
                    }
                    _ => unreachable!("a square has an even number of sign changes"),
                }
            }
        }

        let mut visited = vec![false; total];
        let mut components = Vec::new();
        let mut open = 0;
        for start in 0..total {
            if visited[start] || links[start][0] == NONE {
                continue;
            }
            let mut chain = vec![start];
            visited[start] = true;
            let (mut prev, mut cur) = (start, links[start][0] as usize);
            let closed = loop {
                if cur == start {
                    break true;
                }
                if visited[cur] {
                    break false;
                }
                visited[cur] = true;
                chain.push(cur);
                let [a, b] = links[cur];
                let next = if a as usize == prev { b } else { a };
                if next == NONE {
                    break false;
                }
                prev = cur;
                cur = next as usize;
            };
            if !closed || links[start][1] == NONE {
                open += 1;
                // mark the other direction too so the chain is counted once
                let mut cur = links[start][1];
                while cur != NONE && !visited[cur as usize] {
                    visited[cur as usize] = true;
                    let [a, b] = links[cur as usize];
                    cur = if a != NONE && !visited[a as usize] { a } else { b };
                }
                continue;
            }
            let points: Vec<[f64; 2]> = chain.iter().map(|&e| self.crossing(e)).collect();
            if points.len() < 3 {
                return Err(OvalError::ResolutionTooCoarse(format!(
                    "degenerate component with {} vertices",
                    points.len()
                )));
            }
            let area = shoelace(&points);
            components.push(OvalComponent { points, area, depth: 0 });
        }
        if open > 0 {
            return Err(OvalError::CurveLeavesWindow { open });
        }
        Ok(components)
    }
}

fn shoelace(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|k| {
            let [x1, y1] = points[k];
            let [x2, y2] = points[(k + 1) % n];
            x1 * y2 - x2 * y1
        })
        .sum::<f64>()
        / 2.0
}

/// Even-odd ray casting along `+x`.
fn contains(polygon: &[[f64; 2]], p: [f64; 2]) -> bool {
    let n = polygon.len();
    let mut inside = false;
    for k in 0..n {
        let [xi, yi] = polygon[k];
        let [xj, yj] = polygon[(k + n - 1) % n];
        if (yi > p[1]) != (yj > p[1]) {
            let x_cross = xi + (p[1] - yi) * (xj - xi) / (yj - yi);
            if p[0] < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Fills `depth` and returns `[outer, inner]` pairs. Components are
/// disjoint, so one representative vertex decides containment.
fn nesting(components: &mut [OvalComponent]) -> Vec<[usize; 2]> {
    let mut pairs = Vec::new();
    for inner in 0..components.len() {
        let p = components[inner].points[0];
        for (outer, c) in components.iter().enumerate() {
            if outer != inner && contains(&c.points, p) {
                pairs.push([outer, inner]);
            }
        }
    }
    for &[_, inner] in &pairs {
        components[inner].depth += 1;
    }
    pairs.sort();
    pairs
}

impl OvalReport {
    /// SVG rendering of the extracted polylines.
    pub fn to_svg(&self, size_px: u32) -> String {
        let w = self.window;
        let sx = size_px as f64 / (w.x_max - w.x_min);
        let sy = size_px as f64 / (w.y_max - w.y_min);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size_px}" height="{size_px}" viewBox="0 0 {size_px} {size_px}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
        for (k, c) in self.components.iter().enumerate() {
            let pts: Vec<String> =
                c.points.iter().map(|[x, y]| format!("{:.2},{:.2}", (x - w.x_min) * sx, (w.y_max - y) * sy)).collect();
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="1"/>"#,
                pts.join(" "),
                palette[k % palette.len()]
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 0.01;
    const DELTA: f64 = 1e-7;

    /// Independent oracle: 4-connected regions of constant sign on the node
    /// grid. With closed, disjoint curves inside the window the number of
    /// curves is one less than the number of regions.
    fn sign_regions(w: Window, n: usize) -> usize {
        let h = (w.x_max - w.x_min) / n as f64;
        let sign = |i: usize, j: usize| x9_value(EPS, DELTA, w.x_min + i as f64 * h, w.y_min + j as f64 * h) > 0.0;
        let mut label = vec![usize::MAX; (n + 1) * (n + 1)];
        let mut regions = 0;
        for start in 0..label.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let s = sign(start % (n + 1), start / (n + 1));
            let mut stack = vec![start];
            label[start] = regions;
            while let Some(c) = stack.pop() {
                let (i, j) = (c % (n + 1), c / (n + 1));
                let mut nbrs = Vec::with_capacity(4);
                if i > 0 {
                    nbrs.push(c - 1);
                }
                if i < n {
                    nbrs.push(c + 1);
                }
                if j > 0 {
                    nbrs.push(c - (n + 1));
                }
                if j < n {
                    nbrs.push(c + n + 1);
                }
                for d in nbrs {
                    if label[d] == usize::MAX && sign(d % (n + 1), d / (n + 1)) == s {
                        label[d] = regions;
                        stack.push(d);
                    }
                }
            }
            regions += 1;
        }
        regions
    }

    #[test]
    fn default_case_has_two_nested_ovals() {
        let w = Window::square(-0.3, 0.3);
        let r = x9_ovals(EPS, DELTA, w, 512).unwrap();
        assert_eq!(r.component_count, 2);
        assert!(r.nested_pair);
        assert_eq!(sign_regions(w, 512) - 1, r.component_count);
        // outer oval hugs x² + y² = 4ε, inner oval hugs x² + 2y² = ε
        for &[x, y] in &r.components[0].points {
            assert!((x * x + y * y - 4.0 * EPS).abs() < 2e-3, "outer point {x},{y}");
        }
        for &[x, y] in &r.components[1].points {
            assert!((x * x + 2.0 * y * y - EPS).abs() < 2e-3, "inner point {x},{y}");
        }
        assert_eq!(r.components[1].depth, 1);
        assert_eq!(r.components[0].depth, 0);
    }

    #[test]
    fn far_window_is_empty() {
        let r = x9_ovals(EPS, DELTA, Window::square(0.5, 0.6), 128).unwrap();
        assert_eq!(r.component_count, 0);
        assert!(!r.nested_pair);
    }

    #[test]
    fn preconditions() {
        let w = Window::square(-0.3, 0.3);
        assert!(matches!(x9_ovals(EPS, 0.0, w, 512), Err(OvalError::Precondition(_))));
        assert!(matches!(x9_ovals(EPS, 1e-5, w, 512), Err(OvalError::Precondition(_))));
        assert!(matches!(x9_ovals(0.0, DELTA, w, 512), Err(OvalError::Precondition(_))));
        assert!(matches!(x9_ovals(EPS, DELTA, w, 16), Err(OvalError::ResolutionTooCoarse(_))));
        assert!(matches!(x9_ovals(EPS, DELTA, Window::square(0.1, 0.1), 128), Err(OvalError::Precondition(_))));
    }

    #[test]
    fn window_cutting_the_curve() {
        assert!(matches!(
            x9_ovals(EPS, DELTA, Window::square(0.0, 0.3), 128),
            Err(OvalError::CurveLeavesWindow { .. })
        ));
    }

    #[test]
    fn stable_under_refinement() {
        let w = Window::square(-0.3, 0.3);
        let reports: Vec<OvalReport> = [128, 256, 512].iter().map(|&n| x9_ovals(EPS, DELTA, w, n).unwrap()).collect();
        for r in &reports {
            assert_eq!(r.component_count, 2);
            assert_eq!(r.containment, vec![[0, 1]]);
        }
    }

    #[test]
    fn svg_mentions_every_component() {
        let r = x9_ovals(EPS, DELTA, Window::square(-0.3, 0.3), 128).unwrap();
        let svg = r.to_svg(400);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 2);
    }

    #[test]
    fn ray_casting() {
        let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(contains(&square, [0.5, 0.5]));
        assert!(!contains(&square, [1.5, 0.5]));
        assert!((shoelace(&square) - 1.0).abs() < 1e-12);
    }
}
