use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of the closed unit cube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3::raw(0.0, 0.0, 0.0);
    pub const ONES: Point3 = Point3::raw(1.0, 1.0, 1.0);

    /// Checked constructor: every coordinate must lie in `[0, 1]`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let p = Self::raw(x, y, z);
        if p.in_cube() {
            Ok(p)
        } else {
            Err(Error::Domain { x, y, z })
        }
    }

    /// Unchecked constructor for points known to lie in the cube.
    pub const fn raw(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn in_cube(&self) -> bool {
        self.coords().iter().all(|c| (0.0..=1.0).contains(c))
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn coord(&self, axis: Axis) -> f64 {
        self.coords()[axis.index()]
    }

    pub fn with(mut self, axis: Axis, value: f64) -> Self {
        match axis {
            Axis::X => self.x = value,
            Axis::Y => self.y = value,
            Axis::Z => self.z = value,
        }
        self
    }

    pub fn from_coords(c: [f64; 3]) -> Self {
        Self::raw(c[0], c[1], c[2])
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Point3) -> Point3 {
        Point3::raw(self.x.min(other.x), self.y.min(other.y), self.z.min(other.z))
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Point3) -> Point3 {
        Point3::raw(self.x.max(other.x), self.y.max(other.y), self.z.max(other.z))
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Point3) -> bool {
        self.x <= other.x && self.y <= other.y && self.z <= other.z
    }

    /// Comparable in the componentwise partial order.
    pub fn well_ordered(&self, other: &Point3) -> bool {
        self.le(other) || other.le(self)
    }

    pub fn max_dist(&self, other: &Point3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// Total lexicographic order on coordinates.
    pub fn lex_cmp(&self, other: &Point3) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then(self.y.total_cmp(&other.y))
            .then(self.z.total_cmp(&other.z))
    }

    /// Number of coordinates equal to 0 or 1.
    pub fn boundary_count(&self) -> usize {
        self.coords().iter().filter(|&&c| c == 0.0 || c == 1.0).count()
    }

    /// On one of the twelve edges of the cube (vertices included).
    pub fn on_cube_edge(&self) -> bool {
        self.boundary_count() >= 2
    }

    pub fn is_vertex(&self) -> bool {
        self.boundary_count() == 3
    }

    /// On one of the six edges touching neither `(0,0,0)` nor `(1,1,1)`.
    ///
    /// Those are the edges where exactly one coordinate is free while the
    /// two fixed coordinates are one `0` and one `1`.
    pub fn on_antipodal_free_edge(&self) -> bool {
        let c = self.coords();
        (0..3).any(|free| {
            let fixed: Vec<f64> = (0..3).filter(|&i| i != free).map(|i| c[i]).collect();
            (fixed[0] == 0.0 && fixed[1] == 1.0) || (fixed[0] == 1.0 && fixed[1] == 0.0)
        })
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.coords()
    }
}

impl TryFrom<[f64; 3]> for Point3 {
    type Error = Error;

    fn try_from(c: [f64; 3]) -> Result<Self> {
        Point3::new(c[0], c[1], c[2])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Totally ordered key for a coordinate value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coord(pub f64);

impl Eq for Coord {}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Totally ordered key for a point (lexicographic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointKey(pub Point3);

impl Eq for PointKey {}

impl PartialOrd for PointKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PointKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.lex_cmp(&other.0)
    }
}

/// Clusters coordinate values lying within `tol` of each other.
///
/// Returns the sorted representatives; a cluster containing `0` or `1`
/// is represented by that endpoint, any other by its smallest member.
pub fn cluster_coords(values: impl IntoIterator<Item = f64>, tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().chain([0.0, 1.0]).collect();
    v.sort_by(|a, b| a.total_cmp(b));
    let mut reps: Vec<f64> = Vec::new();
    let mut cluster: Vec<f64> = Vec::new();
    let flush = |cluster: &mut Vec<f64>, reps: &mut Vec<f64>| {
        if cluster.is_empty() {
            return;
        }
        let rep = if cluster.contains(&0.0) {
            0.0
        } else if cluster.contains(&1.0) {
            1.0
        } else {
            cluster[0]
        };
        reps.push(rep);
        cluster.clear();
    };
    for x in v {
        if let Some(&last) = cluster.last() {
            if x - last > tol {
                flush(&mut cluster, &mut reps);
            }
        }
        cluster.push(x);
    }
    flush(&mut cluster, &mut reps);
    reps
}

/// Replaces `x` by the representative within `tol`, if any.
pub fn snap(x: f64, reps: &[f64], tol: f64) -> f64 {
    reps.iter()
        .copied()
        .find(|r| (r - x).abs() <= tol)
        .unwrap_or(x)
}
