//! Chord-length profile `l(h)` of a normalized body.

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Vec2};

/// Heights within this distance of the slab boundary are snapped onto it.
const SNAP: f64 = 1e-12;
/// Relative tolerance for treating a breakpoint as part of the maximum plateau.
const PLATEAU_TOL: f64 = 1e-12;

/// A chain of boundary points `(x, y)` with strictly increasing `y`.
#[derive(Debug, Clone)]
struct Chain(Vec<Vec2>);

impl Chain {
    fn x_at(&self, y: f64) -> f64 {
        let pts = &self.0;
        let k = pts.partition_point(|p| p.y < y);
        if k == 0 {
            return pts[0].x;
        }
        if k >= pts.len() {
            return pts[pts.len() - 1].x;
        }
        let (a, b) = (pts[k - 1], pts[k]);
        if b.y == a.y {
            return a.x;
        }
        a.x + (b.x - a.x) * ((y - a.y) / (b.y - a.y))
    }
}

/// The horizontal-chord profile of a body normalized to the unit slab.
///
/// `l` is concave on `[0, 1]`: it rises to its maximum `m`, stays there on
/// the plateau `[h_a, h_b]`, and falls again. When the bottom (top) support
/// set is an edge, `l(0)` (`l(1)`) is that edge's length; chords shorter
/// than it are realized as sub-segments of the edge flush with its right
/// (left) end, which is where the tilt cut of [`eps_shave`] converges as
/// `ε → 0`.
#[derive(Debug, Clone)]
pub struct ChordProfile {
    poly: ConvexPolygon,
    left: Chain,
    right: Chain,
    heights: Vec<f64>,
    lengths: Vec<f64>,
    max: f64,
    plateau: (usize, usize),
    bottom: (f64, f64),
    top: (f64, f64),
}

/// Which branch produced a chord, and where.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordPlacement {
    pub height: f64,
    pub x_left: f64,
    /// The chord is a proper sub-segment of a supporting edge.
    pub on_support_edge: bool,
}

fn snap(y: f64) -> f64 {
    if y <= SNAP {
        0.0
    } else if y >= 1.0 - SNAP {
        1.0
    } else {
        y
    }
}

/// Build the profile of a normalized polygon (y-range `[0, 1]`).
pub fn build_chord_profile(poly: &ConvexPolygon) -> Result<ChordProfile> {
    let (ylo, yhi) = poly.extent(Vec2::new(0.0, 1.0));
    if ylo.abs() > 1e-9 || (yhi - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInstance(format!(
            "profile needs a body normalized to the unit slab, got y in [{ylo}, {yhi}]"
        )));
    }
    let v: Vec<Vec2> = poly.vertices().iter().map(|p| Vec2::new(p.x, snap(p.y))).collect();
    let n = v.len();
    let next = |i: usize| (i + 1) % n;
    let prev = |i: usize| (i + n - 1) % n;
    let is_bottom = |i: usize| v[i].y == 0.0;
    let is_top = |i: usize| v[i].y == 1.0;
    let find = |pred: &dyn Fn(usize) -> bool, nb: &dyn Fn(usize) -> usize| {
        (0..n).find(|&i| pred(i) && !pred(nb(i)))
    };
    let not_found = || Error::InvalidInstance("normalized polygon lacks a support vertex".into());
    let bottom_left = find(&is_bottom, &prev).ok_or_else(not_found)?;
    let bottom_right = find(&is_bottom, &next).ok_or_else(not_found)?;
    let top_right = find(&is_top, &prev).ok_or_else(not_found)?;
    let top_left = find(&is_top, &next).ok_or_else(not_found)?;

    let mut right = vec![v[bottom_right]];
    let mut i = bottom_right;
    while i != top_right {
        i = next(i);
        right.push(v[i]);
    }
    let mut left = vec![v[bottom_left]];
    let mut i = bottom_left;
    while i != top_left {
        i = prev(i);
        left.push(v[i]);
    }
    let (left, right) = (Chain(left), Chain(right));

    let mut heights: Vec<f64> = left.0.iter().chain(right.0.iter()).map(|p| p.y).collect();
    heights.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    heights.dedup();
    let lengths: Vec<f64> = heights.iter().map(|&h| right.x_at(h) - left.x_at(h)).collect();
    let max = lengths.iter().cloned().fold(0.0, f64::max);
    if max.is_nan() || max <= 0.0 {
        return Err(Error::DegenerateBody { width: max });
    }
    let cut = max - PLATEAU_TOL * max.max(1.0);
    let ia = lengths.iter().position(|&l| l >= cut).unwrap_or(0);
    let ib = lengths.iter().rposition(|&l| l >= cut).unwrap_or(ia);
    Ok(ChordProfile {
        poly: poly.clone(),
        bottom: (v[bottom_left].x, v[bottom_right].x),
        top: (v[top_left].x, v[top_right].x),
        left,
        right,
        heights,
        lengths,
        max,
        plateau: (ia, ib),
    })
}

impl ChordProfile {
    pub fn poly(&self) -> &ConvexPolygon {
        &self.poly
    }

    /// Maximum chord length `m`.
    pub fn max_length(&self) -> f64 {
        self.max
    }

    /// Heights `[h_a, h_b]` attaining `m`.
    pub fn plateau(&self) -> (f64, f64) {
        (self.heights[self.plateau.0], self.heights[self.plateau.1])
    }

    /// `l(0)`: length of the bottom support set (zero for a vertex).
    pub fn bottom_length(&self) -> f64 {
        self.bottom.1 - self.bottom.0
    }

    /// `l(1)`: length of the top support set.
    pub fn top_length(&self) -> f64 {
        self.top.1 - self.top.0
    }

    /// True when both supports parallel to the chords are single vertices.
    pub fn vertex_supported(&self) -> bool {
        self.bottom_length() <= 1e-9 && self.top_length() <= 1e-9
    }

    /// Chord length `l(h)` for `h ∈ [0, 1]`.
    pub fn length_at(&self, h: f64) -> f64 {
        let h = h.clamp(0.0, 1.0);
        self.right.x_at(h) - self.left.x_at(h)
    }

    /// Chord endpoints `(x_left, x_right)` at height `h`.
    pub fn chord(&self, h: f64) -> (f64, f64) {
        let h = h.clamp(0.0, 1.0);
        (self.left.x_at(h), self.right.x_at(h))
    }

    /// Breakpoints `(h, l(h))` of the piecewise-linear profile.
    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.heights.iter().copied().zip(self.lengths.iter().copied())
    }

    /// Lower solution `h1(l) ∈ [0, h_a]` of `l(h) = l`, or the flush
    /// bottom sub-chord when `l` does not exceed `l(0)`.
    pub fn lower(&self, l: f64) -> ChordPlacement {
        if l <= self.bottom_length() {
            return ChordPlacement {
                height: 0.0,
                x_left: self.bottom.1 - l,
                on_support_edge: l < self.bottom_length(),
            };
        }
        let ia = self.plateau.0;
        let k = self.lengths[..=ia].partition_point(|&v| v < l);
        let h = if k == 0 {
            0.0
        } else if k > ia {
            self.heights[ia]
        } else {
            let (y0, y1) = (self.heights[k - 1], self.heights[k]);
            let (l0, l1) = (self.lengths[k - 1], self.lengths[k]);
            let h = if l1 > l0 { y0 + (l - l0) / (l1 - l0) * (y1 - y0) } else { y1 };
            h.clamp(y0, y1.min(self.heights[ia]))
        };
        ChordPlacement {
            height: h,
            x_left: self.left.x_at(h),
            on_support_edge: false,
        }
    }

    /// Upper solution `h2(l) ∈ [h_b, 1]`, or the flush top sub-chord.
    pub fn upper(&self, l: f64) -> ChordPlacement {
        if l <= self.top_length() {
            return ChordPlacement {
                height: 1.0,
                x_left: self.top.0,
                on_support_edge: l < self.top_length(),
            };
        }
        let ib = self.plateau.1;
        let tail = &self.lengths[ib..];
        // tail is non-increasing; count entries >= l
        let k = tail.partition_point(|&v| v >= l);
        let h = if k == 0 {
            self.heights[ib]
        } else if k >= tail.len() {
            1.0
        } else {
            let (j0, j1) = (ib + k - 1, ib + k);
            let (y0, y1) = (self.heights[j0], self.heights[j1]);
            let (l0, l1) = (self.lengths[j0], self.lengths[j1]);
            let h = if l0 > l1 { y0 + (l0 - l) / (l0 - l1) * (y1 - y0) } else { y0 };
            h.clamp(y0.max(self.heights[ib]), y1)
        };
        ChordPlacement {
            height: h,
            x_left: self.left.x_at(h),
            on_support_edge: false,
        }
    }
}

/// Tilt-cut a normalized body so both supports parallel to the x-axis
/// become single vertices.
///
/// A bottom support edge `[p, q]` (p left) is cut by the line through `q`
/// and `p + (0, ε)`; a top support edge `[p', q']` by the line through `p'`
/// and `q' − (0, ε)`. The kept vertices sit on `y = 0` and `y = 1`, so the
/// result is still normalized. Vertex-supported bodies are returned unchanged.
pub fn eps_shave(poly: &ConvexPolygon, eps: f64) -> ConvexPolygon {
    const EDGE_TOL: f64 = 1e-9;
    let v = poly.vertices();
    let n = v.len();
    let mut pts = v.to_vec();
    let centroid = poly.centroid();
    let cut = |pts: Vec<Vec2>, keep: Vec2, moved: Vec2| -> Vec<Vec2> {
        let d = moved - keep;
        let mut nrm = Vec2::new(d.y, -d.x);
        if nrm.dot(centroid - keep) > 0.0 {
            nrm = -nrm;
        }
        crate::geom::clip_points(&pts, nrm, nrm.dot(keep))
    };
    let run = |target: f64| -> Option<(Vec2, Vec2)> {
        let on = |i: usize| (v[i].y - target).abs() <= EDGE_TOL;
        let first = (0..n).find(|&i| on(i) && !on((i + n - 1) % n))?;
        let last = (0..n).find(|&i| on(i) && !on((i + 1) % n))?;
        (first != last).then(|| (v[first], v[last]))
    };
    // CCW order: the bottom run goes left to right, the top run right to left.
    if let Some((p, q)) = run(0.0) {
        pts = cut(pts, q, p + Vec2::new(0.0, eps));
    }
    if let Some((q, p)) = run(1.0) {
        pts = cut(pts, p, q - Vec2::new(0.0, eps));
    }
    ConvexPolygon::new(pts).unwrap_or_else(|_| poly.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::normalize_to_unit_slab;
    use crate::geom::Direction;

    fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).unwrap()
    }

    fn disk(n: usize) -> ConvexPolygon {
        let pts = (0..n)
            .map(|i| {
                let a = (i as f64 + 0.5) * std::f64::consts::TAU / n as f64;
                Vec2::new(0.5 + 0.5 * a.cos(), 0.5 + 0.5 * a.sin())
            })
            .collect();
        let p = ConvexPolygon::new(pts).unwrap();
        normalize_to_unit_slab(&p, Direction::HORIZONTAL).unwrap().poly
    }

    #[test]
    fn triangle_profile_after_shave() {
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let eps = 1e-3;
        let shaved = eps_shave(&tri, eps);
        let prof = build_chord_profile(&shaved).unwrap();
        assert_eq!(prof.bottom_length(), 0.0);
        // bottom support kept at the original right base vertex
        assert_eq!(prof.chord(0.0), (1.0, 1.0));
        let (ha, hb) = prof.plateau();
        assert_eq!(ha, hb);
        assert!(ha <= eps + 1e-15);
        assert!((prof.max_length() - (1.0 - ha)).abs() < 1e-12);
        assert!(prof.max_length() > 1.0 - 2.0 * eps);
    }

    #[test]
    fn disk_profile_peak() {
        let prof = build_chord_profile(&disk(256)).unwrap();
        let (ha, hb) = prof.plateau();
        assert!((prof.max_length() - 1.0).abs() < 2e-4);
        // vertical edges straddle the equator
        let half = 0.5 * (std::f64::consts::PI / 256.0).sin();
        assert!((ha - (0.5 - half)).abs() < 1e-4 && (hb - (0.5 + half)).abs() < 1e-4);
        // circle chord closed form 2 sqrt(h (1 - h)), within polygon error
        for k in 1..20 {
            let h = k as f64 / 20.0;
            let exact = 2.0 * (h * (1.0 - h)).sqrt();
            assert!((prof.length_at(h) - exact).abs() < 1e-3, "h={h}");
        }
    }

    #[test]
    fn inverse_solvers_are_exact() {
        let hexish = poly(&[(0.0, 0.0), (1.0, 0.5), (1.0, 0.75), (0.2, 1.0), (-1.0, 0.75), (-1.0, 0.5)]);
        let prof = build_chord_profile(&hexish).unwrap();
        let m = prof.max_length();
        assert_eq!(prof.plateau(), (0.5, 0.75));
        for k in 1..100 {
            let l = m * k as f64 / 100.0;
            let lo = prof.lower(l);
            let hi = prof.upper(l);
            assert!(lo.height < hi.height);
            assert!((prof.length_at(lo.height) - l).abs() < 1e-12);
            assert!((prof.length_at(hi.height) - l).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_supports_use_flush_subchords() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let prof = build_chord_profile(&sq).unwrap();
        assert_eq!(prof.bottom_length(), 1.0);
        assert_eq!(prof.top_length(), 1.0);
        assert_eq!(prof.plateau(), (0.0, 1.0));
        let lo = prof.lower(0.25);
        assert_eq!((lo.height, lo.x_left, lo.on_support_edge), (0.0, 0.75, true));
        let hi = prof.upper(0.25);
        assert_eq!((hi.height, hi.x_left, hi.on_support_edge), (1.0, 0.0, true));
    }

    #[test]
    fn shave_examples() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let s = eps_shave(&sq, 1e-3);
        let prof = build_chord_profile(&s).unwrap();
        assert_eq!(prof.length_at(0.0), 0.0);
        assert_eq!(prof.length_at(1.0), 0.0);
        assert!(sq.contains_polygon(&s, 1e-15));
        // Hausdorff distance: every original vertex is within eps of the cut body
        for &v in sq.vertices() {
            assert!(s.signed_distance(v) <= 1e-3 + 1e-15);
        }
        let kite = poly(&[(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)]);
        assert_eq!(eps_shave(&kite, 1e-3), kite);
    }

    #[test]
    fn shave_triangle_tilts_base() {
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let s = eps_shave(&tri, 1e-3);
        let bottom: Vec<_> = s.vertices().iter().filter(|v| v.y == 0.0).collect();
        assert_eq!(bottom, vec![&Vec2::new(1.0, 0.0)]);
        assert!(s.vertices().iter().any(|v| (v.x).abs() < 1e-15 && (v.y - 1e-3).abs() < 1e-15));
    }

    #[test]
    fn unnormalized_input_rejected() {
        let sq = poly(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)]);
        assert!(build_chord_profile(&sq).is_err());
    }
}
