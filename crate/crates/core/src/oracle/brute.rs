use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point2, Vec2, CONTAINMENT_TOL};
use crate::transversal::Interval;

/// Largest polygon count accepted by [`brute_force_piercing`]; hit sets are `u64` masks.
pub const MAX_POLYS: usize = 64;
/// Largest `k_max` accepted by [`brute_force_piercing`].
pub const MAX_K: usize = 4;

/// Minimum piercing set of intervals: sweep by right endpoint.
pub fn greedy_interval_piercing(intervals: &[Interval]) -> Vec<f64> {
    let mut sorted = intervals.to_vec();
    sorted.sort_by(|a, b| a.hi.total_cmp(&b.hi));
    let mut points: Vec<f64> = Vec::new();
    for iv in sorted {
        if points.last().is_none_or(|&p| iv.lo > p) {
            points.push(iv.hi);
        }
    }
    points
}

/// Minimum piercing number by exhaustive search over right endpoints.
/// Exponential; for cross-checking small inputs only.
pub fn exhaustive_interval_piercing(intervals: &[Interval]) -> usize {
    let cands: Vec<f64> = intervals.iter().map(|i| i.hi).collect();
    let n = cands.len();
    assert!(n <= 20, "exhaustive search limited to 20 intervals");
    let hits: Vec<u32> = cands
        .iter()
        .map(|&c| {
            intervals
                .iter()
                .enumerate()
                .filter(|(_, iv)| iv.contains(c))
                .fold(0u32, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    (0u32..(1u32 << n))
        .filter(|&s| {
            let mut m = 0u32;
            for (i, &h) in hits.iter().enumerate() {
                if s & (1 << i) != 0 {
                    m |= h;
                }
            }
            m == full
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

struct Bbox {
    lo: Vec2,
    hi: Vec2,
}

impl Bbox {
    fn of(p: &ConvexPolygon, pad: f64) -> Self {
        let (xl, xh) = p.extent(Vec2::new(1.0, 0.0));
        let (yl, yh) = p.extent(Vec2::new(0.0, 1.0));
        Bbox {
            lo: Vec2::new(xl - pad, yl - pad),
            hi: Vec2::new(xh + pad, yh + pad),
        }
    }

    fn contains(&self, p: Point2) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    fn overlaps(&self, o: &Bbox) -> bool {
        self.lo.x <= o.hi.x && o.lo.x <= self.hi.x && self.lo.y <= o.hi.y && o.lo.y <= self.hi.y
    }
}

/// Candidate points with pairwise distinct, maximal hit sets.
fn maximal_candidates(polys: &[ConvexPolygon], tol: f64) -> Vec<(u64, Point2)> {
    let boxes: Vec<Bbox> = polys.iter().map(|p| Bbox::of(p, tol)).collect();
    let mask_of = |q: Point2| -> u64 {
        polys
            .iter()
            .zip(&boxes)
            .enumerate()
            .filter(|(_, (p, b))| b.contains(q) && p.contains_point(q, tol))
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    };
    let mut by_mask: HashMap<u64, Point2> = HashMap::new();
    let mut add = |q: Point2| {
        let m = mask_of(q);
        if m != 0 {
            by_mask.entry(m).or_insert(q);
        }
    };
    for p in polys {
        for &v in p.vertices() {
            add(v);
        }
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if boxes[i].overlaps(&boxes[j]) {
                for q in polys[i].boundary_intersections(&polys[j]) {
                    add(q);
                }
            }
        }
    }
    let mut all: Vec<(u64, Point2)> = by_mask.into_iter().collect();
    // deterministic order: larger hit sets first, then by mask value
    all.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));
    let mut kept: Vec<(u64, Point2)> = Vec::new();
    for (m, q) in all {
        if !kept.iter().any(|&(k, _)| m & !k == 0) {
            kept.push((m, q));
        }
    }
    kept
}

fn search(cands: &[(u64, Point2)], per_poly: &[Vec<usize>], uncovered: u64, k: usize, chosen: &mut Vec<usize>) -> bool {
    if uncovered == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let best_gain = cands.iter().map(|c| (c.0 & uncovered).count_ones()).max().unwrap_or(0);
    if (best_gain as usize) * k < uncovered.count_ones() as usize {
        return false;
    }
    let target = (0..per_poly.len())
        .filter(|&i| uncovered & (1 << i) != 0)
        .min_by_key(|&i| per_poly[i].len())
        .expect("uncovered set is non-empty");
    for &c in &per_poly[target] {
        chosen.push(c);
        if search(cands, per_poly, uncovered & !cands[c].0, k - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Minimum piercing set of at most `k_max` points for a small family of
/// convex polygons, or `None` if more are needed. Candidates are polygon
/// vertices and pairwise boundary crossings; containment uses a tolerance
/// of `1e-9` relative to the largest diameter.
pub fn brute_force_piercing(polys: &[ConvexPolygon], k_max: usize) -> Result<Option<(usize, Vec<Point2>)>> {
    if polys.len() > MAX_POLYS || k_max > MAX_K {
        return Err(Error::TooLarge {
            polys: polys.len(),
            k: k_max,
            max_polys: MAX_POLYS,
            max_k: MAX_K,
        });
    }
    if polys.is_empty() {
        return Ok(Some((0, Vec::new())));
    }
    let scale = polys.iter().map(|p| p.diameter()).fold(0.0, f64::max);
    let cands = maximal_candidates(polys, CONTAINMENT_TOL * scale);
    let mut per_poly = vec![Vec::new(); polys.len()];
    for (ci, &(m, _)) in cands.iter().enumerate() {
        for (i, list) in per_poly.iter_mut().enumerate() {
            if m & (1 << i) != 0 {
                list.push(ci);
            }
        }
    }
    let full = if polys.len() == 64 { u64::MAX } else { (1u64 << polys.len()) - 1 };
    let mut chosen = Vec::new();
    for k in 1..=k_max {
        if search(&cands, &per_poly, full, k, &mut chosen) {
            return Ok(Some((k, chosen.iter().map(|&c| cands[c].1).collect())));
        }
    }
    Ok(None)
}

/// Smallest `k <= k_max` piercing set drawn from an `res × res` grid over
/// the common bounding box. An upper-bound oracle for cross-checking.
pub fn grid_piercing(polys: &[ConvexPolygon], res: usize, k_max: usize) -> Option<usize> {
    if polys.is_empty() {
        return Some(0);
    }
    assert!(polys.len() <= 64 && k_max <= 3 && res >= 2);
    let boxes: Vec<Bbox> = polys.iter().map(|p| Bbox::of(p, 0.0)).collect();
    let lo = boxes.iter().fold(Vec2::new(f64::INFINITY, f64::INFINITY), |a, b| {
        Vec2::new(a.x.min(b.lo.x), a.y.min(b.lo.y))
    });
    let hi = boxes.iter().fold(Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |a, b| {
        Vec2::new(a.x.max(b.hi.x), a.y.max(b.hi.y))
    });
    let mut masks: Vec<u64> = Vec::new();
    for ix in 0..res {
        for iy in 0..res {
            let q = Vec2::new(
                lo.x + (hi.x - lo.x) * ix as f64 / (res - 1) as f64,
                lo.y + (hi.y - lo.y) * iy as f64 / (res - 1) as f64,
            );
            let m = polys
                .iter()
                .zip(&boxes)
                .enumerate()
                .filter(|(_, (p, b))| b.contains(q) && p.contains_point(q, 0.0))
                .fold(0u64, |m, (i, _)| m | (1u64 << i));
            if m != 0 {
                masks.push(m);
            }
        }
    }
    masks.sort_unstable();
    masks.dedup();
    let full = if polys.len() == 64 { u64::MAX } else { (1u64 << polys.len()) - 1 };
    if k_max >= 1 && masks.contains(&full) {
        return Some(1);
    }
    if k_max >= 2 {
        for (i, &a) in masks.iter().enumerate() {
            if masks[i..].iter().any(|&b| a | b == full) {
                return Some(2);
            }
        }
    }
    if k_max >= 3 {
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate().skip(i) {
                if masks[j..].iter().any(|&c| a | b | c == full) {
                    return Some(3);
                }
            }
        }
    }
    None
}
