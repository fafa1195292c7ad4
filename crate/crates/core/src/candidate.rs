//! The candidate set `U`: the eight cube vertices `T_i`, the maximizers
//! `M_i` of the auxiliary functions `g_i` over the cube and the maximizers
//! `F_k` of `h_k` over faces, with their coordinate projections.
//!
//! Each auxiliary function is `f` minus `f` evaluated at projections of the
//! argument onto edges `l_1..l_6` (the six edges avoiding `(0,0,0)` and
//! `(1,1,1)`). The same projections reconstruct the negative points of a
//! catalog cycle, so they are kept in one table, [`AuxiliaryId::edges`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{uniform_axis, FunctionSource};
use crate::golden::golden_max;
use crate::point::{cluster_coords, snap, Axis, Point3, PointKey};

/// `T_1..T_8`.
pub const CORNERS: [Point3; 8] = [
    Point3::raw(0.0, 0.0, 0.0),
    Point3::raw(0.0, 0.0, 1.0),
    Point3::raw(1.0, 0.0, 1.0),
    Point3::raw(1.0, 0.0, 0.0),
    Point3::raw(1.0, 1.0, 0.0),
    Point3::raw(0.0, 1.0, 0.0),
    Point3::raw(0.0, 1.0, 1.0),
    Point3::raw(1.0, 1.0, 1.0),
];

/// Tolerance for merging coincident candidate points.
pub const MERGE_TOL: f64 = 1e-9;

/// The edges `l_1..l_6`, each with one free coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Edge {
    /// `(ξ, 0, 1)`
    L1,
    /// `(1, 0, ζ)`
    L2,
    /// `(1, γ, 0)`
    L3,
    /// `(ξ, 1, 0)`
    L4,
    /// `(0, 1, ζ)`
    L5,
    /// `(0, γ, 1)`
    L6,
}

impl Edge {
    pub const ALL: [Edge; 6] = [Edge::L1, Edge::L2, Edge::L3, Edge::L4, Edge::L5, Edge::L6];

    /// Projection of `p` onto the edge along the fixed coordinates.
    pub fn project(self, p: &Point3) -> Point3 {
        match self {
            Edge::L1 => Point3::raw(p.x, 0.0, 1.0),
            Edge::L2 => Point3::raw(1.0, 0.0, p.z),
            Edge::L3 => Point3::raw(1.0, p.y, 0.0),
            Edge::L4 => Point3::raw(p.x, 1.0, 0.0),
            Edge::L5 => Point3::raw(0.0, 1.0, p.z),
            Edge::L6 => Point3::raw(0.0, p.y, 1.0),
        }
    }

    pub fn free_axis(self) -> Axis {
        match self {
            Edge::L1 | Edge::L4 => Axis::X,
            Edge::L3 | Edge::L6 => Axis::Y,
            Edge::L2 | Edge::L5 => Axis::Z,
        }
    }

    pub fn contains(self, p: &Point3) -> bool {
        self.project(p) == *p
    }
}

/// A face of the cube: `axis = value` with `value ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Face {
    pub axis: Axis,
    pub value: f64,
}

impl Face {
    pub fn contains(&self, p: &Point3) -> bool {
        p.coord(self.axis) == self.value
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AuxiliaryId {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
}

impl AuxiliaryId {
    /// `g_1..g_8` then `h_1..h_6`.
    pub const ALL: [AuxiliaryId; 14] = [
        AuxiliaryId::G1,
        AuxiliaryId::G2,
        AuxiliaryId::G3,
        AuxiliaryId::G4,
        AuxiliaryId::G5,
        AuxiliaryId::G6,
        AuxiliaryId::G7,
        AuxiliaryId::G8,
        AuxiliaryId::H1,
        AuxiliaryId::H2,
        AuxiliaryId::H3,
        AuxiliaryId::H4,
        AuxiliaryId::H5,
        AuxiliaryId::H6,
    ];

    /// `g_i` for `i` in `1..=8`.
    pub fn g(i: usize) -> AuxiliaryId {
        assert!((1..=8).contains(&i), "g index {i}");
        Self::ALL[i - 1]
    }

    /// `h_k` for `k` in `1..=6`.
    pub fn h(k: usize) -> AuxiliaryId {
        assert!((1..=6).contains(&k), "h index {k}");
        Self::ALL[7 + k]
    }

    pub fn name(self) -> String {
        let i = self as usize;
        if i < 8 {
            format!("g{}", i + 1)
        } else {
            format!("h{}", i - 7)
        }
    }

    /// Edges whose projections are subtracted from `f`.
    pub fn edges(self) -> &'static [Edge] {
        use Edge::*;
        match self {
            AuxiliaryId::G1 => &[L1, L3, L5],
            AuxiliaryId::G2 => &[L2, L4, L6],
            AuxiliaryId::G3 => &[L1, L2, L3],
            AuxiliaryId::G4 => &[L2, L3, L4],
            AuxiliaryId::G5 => &[L3, L4, L5],
            AuxiliaryId::G6 => &[L4, L5, L6],
            AuxiliaryId::G7 => &[L5, L6, L1],
            AuxiliaryId::G8 => &[L6, L1, L2],
            AuxiliaryId::H1 => &[L6, L1],
            AuxiliaryId::H2 => &[L3, L4],
            AuxiliaryId::H3 => &[L5, L4],
            AuxiliaryId::H4 => &[L2, L1],
            AuxiliaryId::H5 => &[L2, L3],
            AuxiliaryId::H6 => &[L5, L6],
        }
    }

    /// The face of an `h` function; `None` for the `g` functions.
    pub fn face(self) -> Option<Face> {
        let (axis, value) = match self {
            AuxiliaryId::H1 => (Axis::Z, 0.0),
            AuxiliaryId::H2 => (Axis::Z, 1.0),
            AuxiliaryId::H3 => (Axis::Y, 0.0),
            AuxiliaryId::H4 => (Axis::Y, 1.0),
            AuxiliaryId::H5 => (Axis::X, 0.0),
            AuxiliaryId::H6 => (Axis::X, 1.0),
            _ => return None,
        };
        Some(Face { axis, value })
    }

    /// Edge projections of `p`, in table order.
    pub fn projections(self, p: &Point3) -> Vec<Point3> {
        self.edges().iter().map(|e| e.project(p)).collect()
    }
}

/// Value of the auxiliary function at `p`.
pub fn eval_auxiliary(id: AuxiliaryId, f: &FunctionSource, p: &Point3) -> Result<f64> {
    if !p.in_cube() {
        return Err(Error::Domain {
            x: p.x,
            y: p.y,
            z: p.z,
        });
    }
    if let Some(face) = id.face() {
        if !face.contains(p) {
            return Err(Error::OffFace(format!("{} at {p}", id.name())));
        }
    }
    Ok(aux_value(id, f, p))
}

fn aux_value(id: AuxiliaryId, f: &FunctionSource, p: &Point3) -> f64 {
    id.edges().iter().fold(f.value(p), |acc, e| acc - f.value(&e.project(p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    /// Grid points per active axis in the initial scan.
    pub scan: usize,
    /// Golden-section bracket length at which refinement stops.
    pub refine_tol: f64,
    /// Values within this of each other are ties.
    pub tie_tol: f64,
    /// Number of best scan nodes refined.
    pub starts: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            scan: 33,
            refine_tol: 1e-7,
            tie_tol: 1e-10,
            starts: 4,
        }
    }
}

fn better(cand: (Point3, f64), best: (Point3, f64), tie: f64) -> bool {
    cand.1 > best.1 + tie || ((cand.1 - best.1).abs() <= tie && cand.0.lex_cmp(&best.0).is_lt())
}

/// Coordinate-wise golden-section ascent within one scan cell of `start`.
fn refine(id: AuxiliaryId, f: &FunctionSource, start: (Point3, f64), axes: &[Axis], h: f64, cfg: &OptimizerConfig) -> (Point3, f64) {
    let mut cur = start;
    for _sweep in 0..64 {
        let mut moved = false;
        for &axis in axes {
            let c = cur.0.coord(axis);
            let (lo, hi) = ((c - h).max(0.0), (c + h).min(1.0));
            let p0 = cur.0;
            let (x, v) = golden_max(|t| aux_value(id, f, &p0.with(axis, t)), lo, hi, cfg.refine_tol);
            if v > cur.1 + cfg.tie_tol {
                cur = (p0.with(axis, x), v);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    cur
}

/// Snaps coordinates within [`MERGE_TOL`] of 0 or 1 onto them.
fn snap_point(p: Point3) -> Point3 {
    let c = p.coords().map(|v| snap(v, &[0.0, 1.0], MERGE_TOL));
    Point3::from_coords(c)
}

/// Approximate argmax of an auxiliary function over its domain: dense scan,
/// then golden-section refinement of the best nodes; near-ties go to the
/// lexicographically smallest point.
pub fn maximize_auxiliary(id: AuxiliaryId, f: &FunctionSource, cfg: &OptimizerConfig) -> (Point3, f64) {
    let n = cfg.scan.max(2);
    let grid = uniform_axis(n);
    let fixed = id.face();
    let axes: Vec<Axis> = Axis::ALL
        .into_iter()
        .filter(|a| fixed.is_none_or(|face| face.axis != *a))
        .collect();
    let axis_values = |a: Axis| -> Vec<f64> {
        match fixed {
            Some(face) if face.axis == a => vec![face.value],
            _ => grid.clone(),
        }
    };
    let (xs, ys, zs) = (axis_values(Axis::X), axis_values(Axis::Y), axis_values(Axis::Z));
    let mut nodes: Vec<(Point3, f64)> = Vec::with_capacity(xs.len() * ys.len() * zs.len());
    for &x in &xs {
        for &y in &ys {
            for &z in &zs {
                let p = Point3::raw(x, y, z);
                nodes.push((p, aux_value(id, f, &p)));
            }
        }
    }
    // Stable sort keeps lexicographic order among equal values.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes[b].1.total_cmp(&nodes[a].1));
    let mut best = nodes[order[0]];
    for &k in &order {
        if nodes[k].1 < best.1 - cfg.tie_tol {
            break;
        }
        if better(nodes[k], best, cfg.tie_tol) {
            best = nodes[k];
        }
    }
    let h = 1.0 / (n - 1) as f64;
    let mut starts = vec![best];
    starts.extend(order.iter().map(|&k| nodes[k]).filter(|s| s.0 != best.0).take(cfg.starts.saturating_sub(1)));
    for s in starts {
        let (p, _) = refine(id, f, s, &axes, h, cfg);
        let p = snap_point(p);
        let cand = (p, aux_value(id, f, &p));
        if better(cand, best, cfg.tie_tol) {
            best = cand;
        }
    }
    best
}

/// The candidate set with its maximizers and coordinate projections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateSet {
    #[serde(rename = "T")]
    pub t: [Point3; 8],
    #[serde(rename = "M")]
    pub m: [Point3; 8],
    #[serde(rename = "F")]
    pub f: [Point3; 6],
    #[serde(rename = "Ux")]
    pub ux: Vec<f64>,
    #[serde(rename = "Uy")]
    pub uy: Vec<f64>,
    #[serde(rename = "Uz")]
    pub uz: Vec<f64>,
    /// `max g_i`, audit only.
    pub g_max: [f64; 8],
    /// `max h_k`, audit only.
    pub h_max: [f64; 6],
}

impl CandidateSet {
    /// Builds a candidate set from given maximizers; coordinates within
    /// [`MERGE_TOL`] of each other are merged.
    pub fn from_points(m: [Point3; 8], f: [Point3; 6], g_max: [f64; 8], h_max: [f64; 6]) -> Result<Self> {
        for (k, p) in f.iter().enumerate() {
            let id = AuxiliaryId::h(k + 1);
            let face = id.face().expect("h has a face");
            if (p.coord(face.axis) - face.value).abs() > MERGE_TOL {
                return Err(Error::OffFace(format!("F{} = {p}", k + 1)));
            }
        }
        if let Some(p) = m.iter().chain(&f).find(|p| !p.in_cube()) {
            return Err(Error::Domain {
                x: p.x,
                y: p.y,
                z: p.z,
            });
        }
        let all: Vec<Point3> = m.iter().chain(&f).copied().collect();
        let reps: Vec<Vec<f64>> = Axis::ALL
            .iter()
            .map(|&a| cluster_coords(all.iter().map(|p| p.coord(a)), MERGE_TOL))
            .collect();
        let snap3 = |p: &Point3| {
            let c = p.coords();
            Point3::raw(snap(c[0], &reps[0], MERGE_TOL), snap(c[1], &reps[1], MERGE_TOL), snap(c[2], &reps[2], MERGE_TOL))
        };
        let m = m.map(|p| snap3(&p));
        let f = f.map(|p| snap3(&p));
        let [ux, uy, uz]: [Vec<f64>; 3] = reps.try_into().expect("three axes");
        Ok(CandidateSet {
            t: CORNERS,
            m,
            f,
            ux,
            uy,
            uz,
            g_max,
            h_max,
        })
    }

    /// `T_i`, 1-based.
    pub fn corner(&self, i: usize) -> Point3 {
        self.t[i - 1]
    }

    /// The distinct points of `U`.
    pub fn points(&self) -> Vec<Point3> {
        let mut v: Vec<PointKey> = self.t.iter().chain(&self.m).chain(&self.f).map(|p| PointKey(*p)).collect();
        v.sort();
        v.dedup();
        v.into_iter().map(|k| k.0).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("candidate set serializes")
    }
}

/// Runs the fourteen maximizations (in parallel, results in table order)
/// and assembles `U`.
pub fn build_candidate_set(f: &FunctionSource, cfg: &OptimizerConfig) -> CandidateSet {
    let found: Vec<(Point3, f64)> = AuxiliaryId::ALL
        .par_iter()
        .map(|&id| maximize_auxiliary(id, f, cfg))
        .collect();
    let m: [Point3; 8] = std::array::from_fn(|i| found[i].0);
    let fp: [Point3; 6] = std::array::from_fn(|k| found[8 + k].0);
    let g_max: [f64; 8] = std::array::from_fn(|i| found[i].1);
    let h_max: [f64; 6] = std::array::from_fn(|k| found[8 + k].1);
    CandidateSet::from_points(m, fp, g_max, h_max).expect("maximizers lie in their domains")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::builtin;

    fn b(name: &str) -> FunctionSource {
        builtin(name, None).unwrap()
    }

    #[test]
    fn corner_naming() {
        let want = [
            (0., 0., 0.),
            (0., 0., 1.),
            (1., 0., 1.),
            (1., 0., 0.),
            (1., 1., 0.),
            (0., 1., 0.),
            (0., 1., 1.),
            (1., 1., 1.),
        ];
        for (t, (x, y, z)) in CORNERS.iter().zip(want) {
            assert_eq!(*t, Point3::raw(x, y, z));
        }
    }

    #[test]
    fn edges_avoid_anchor_vertices() {
        let p = Point3::raw(0.3, 0.6, 0.8);
        for e in Edge::ALL {
            let q = e.project(&p);
            assert!(q.on_antipodal_free_edge());
            assert!(e.contains(&q));
            assert_eq!(q.coord(e.free_axis()), p.coord(e.free_axis()));
        }
    }

    #[test]
    fn aux_examples() {
        let xz = b("product_xz");
        assert_eq!(eval_auxiliary(AuxiliaryId::G1, &xz, &Point3::raw(0., 0., 1.)).unwrap(), 0.0);
        assert_eq!(eval_auxiliary(AuxiliaryId::H1, &xz, &Point3::raw(1., 1., 0.)).unwrap(), -1.0);
        assert!(matches!(
            eval_auxiliary(AuxiliaryId::H1, &xz, &Point3::raw(1., 1., 0.5)),
            Err(Error::OffFace(_))
        ));
        let zero = b("zero");
        assert_eq!(eval_auxiliary(AuxiliaryId::G4, &zero, &Point3::raw(0.2, 0.4, 0.9)).unwrap(), 0.0);
    }

    #[test]
    fn aux_matches_written_definitions() {
        let f = b("bilinear_sum");
        let (x, y, z) = (0.3, 0.7, 0.45);
        let p = Point3::raw(x, y, z);
        let v = |a, b, c| f.value(&Point3::raw(a, b, c));
        let g1 = v(x, y, z) - v(x, 0., 1.) - v(1., y, 0.) - v(0., 1., z);
        let g2 = v(x, y, z) - v(1., 0., z) - v(x, 1., 0.) - v(0., y, 1.);
        assert_eq!(eval_auxiliary(AuxiliaryId::G1, &f, &p).unwrap(), g1);
        assert_eq!(eval_auxiliary(AuxiliaryId::G2, &f, &p).unwrap(), g2);
        let q = Point3::raw(x, y, 0.);
        let h1 = v(x, y, 0.) - v(0., y, 1.) - v(x, 0., 1.);
        assert_eq!(eval_auxiliary(AuxiliaryId::H1, &f, &q).unwrap(), h1);
    }

    #[test]
    fn maximize_examples() {
        let cfg = OptimizerConfig::default();
        for id in AuxiliaryId::ALL {
            let (p, v) = maximize_auxiliary(id, &b("zero"), &cfg);
            assert_eq!(v, 0.0);
            let want = id.face().map_or(Point3::ORIGIN, |face| Point3::ORIGIN.with(face.axis, face.value));
            assert_eq!(p, want, "{}", id.name());
        }
        let (p, v) = maximize_auxiliary(AuxiliaryId::H3, &b("product_xz"), &cfg);
        assert_eq!((p, v), (Point3::raw(1., 0., 1.), 1.0));
    }

    #[test]
    fn zero_function_gives_corners_only() {
        let u = build_candidate_set(&b("zero"), &OptimizerConfig::default());
        assert!(u.points().iter().all(Point3::is_vertex));
        assert_eq!(u.ux, vec![0.0, 1.0]);
    }

    #[test]
    fn projections_cover_u() {
        let u = build_candidate_set(&b("remark41_piecewise"), &OptimizerConfig::default());
        for p in u.points() {
            assert!(u.ux.contains(&p.x) && u.uy.contains(&p.y) && u.uz.contains(&p.z));
        }
        assert!(u.ux.len() <= 16 && u.uy.len() <= 16 && u.uz.len() <= 16);
        for (k, p) in u.f.iter().enumerate() {
            assert!(AuxiliaryId::h(k + 1).face().unwrap().contains(p));
        }
    }
}
