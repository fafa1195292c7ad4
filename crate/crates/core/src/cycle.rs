//! Weighted point sets and projection cycle-vectors.
//!
//! A weighted point set is a *weak projection cycle* when, for every axis
//! and every coordinate value on that axis, the weights of the points in
//! the corresponding plane sum to zero. A [`CycleVector`] additionally has
//! only nonzero weights.

use std::collections::BTreeMap;
use std::ops::Deref;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FunctionSource;
use crate::linalg::{primitive_integer_vector, Matrix};
use crate::point::{cluster_coords, snap, Axis, Coord, Point3, PointKey};
use crate::scalar::Scalar;

/// Plane-sum tolerance for floating-point weights.
pub const FLOAT_PLANE_TOL: f64 = 1e-9;

/// Upper bound on the number of subsets [`enumerate_minimal_cycles`] tests.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPointSet<W> {
    points: Vec<Point3>,
    weights: Vec<W>,
}

impl<W: Scalar> Default for WeightedPointSet<W> {
    fn default() -> Self {
        WeightedPointSet {
            points: Vec::new(),
            weights: Vec::new(),
        }
    }
}

impl<W: Scalar> WeightedPointSet<W> {
    /// Rejects mismatched lengths, points outside the cube and duplicates.
    pub fn new(points: Vec<Point3>, weights: Vec<W>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InvalidCycle(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| !p.in_cube()) {
            return Err(Error::Domain {
                x: p.x,
                y: p.y,
                z: p.z,
            });
        }
        let mut seen = BTreeMap::new();
        for p in &points {
            if seen.insert(PointKey(*p), ()).is_some() {
                return Err(Error::InvalidCycle(format!("duplicate point {p}")));
            }
        }
        Ok(WeightedPointSet { points, weights })
    }

    /// Builds a set from terms, summing the weights of repeated points.
    /// Points keep the order of their first occurrence.
    pub fn from_terms(terms: impl IntoIterator<Item = (Point3, W)>) -> Self {
        let mut index: BTreeMap<PointKey, usize> = BTreeMap::new();
        let mut set = Self::default();
        for (p, w) in terms {
            match index.get(&PointKey(p)) {
                Some(&i) => set.weights[i] = set.weights[i].clone() + w,
                None => {
                    index.insert(PointKey(p), set.points.len());
                    set.points.push(p);
                    set.weights.push(w);
                }
            }
        }
        set
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point3, &W)> {
        self.points.iter().zip(&self.weights)
    }

    pub fn weight_at(&self, p: &Point3) -> Option<&W> {
        self.points.iter().position(|q| q == p).map(|i| &self.weights[i])
    }

    /// Sum of weights in every plane `axis = value` attained by a point.
    pub fn plane_sums(&self) -> BTreeMap<(Axis, Coord), W> {
        let mut sums: BTreeMap<(Axis, Coord), W> = BTreeMap::new();
        for (p, w) in self.iter() {
            for axis in Axis::ALL {
                let e = sums.entry((axis, Coord(p.coord(axis)))).or_insert_with(W::zero);
                *e = e.clone() + w.clone();
            }
        }
        sums
    }

    /// Plane sums that are not zero at tolerance `eps`.
    pub fn nonzero_plane_sums(&self, eps: f64) -> Vec<(Axis, f64, W)> {
        self.plane_sums()
            .into_iter()
            .filter(|(_, s)| !s.near_zero(eps))
            .map(|((a, c), s)| (a, c.0, s))
            .collect()
    }

    /// All plane sums vanish and at least one weight is nonzero.
    pub fn is_weak_cycle(&self, eps: f64) -> bool {
        self.weights.iter().any(|w| !w.near_zero(eps)) && self.nonzero_plane_sums(eps).is_empty()
    }

    /// Drops points whose weight is zero at tolerance `eps`.
    pub fn strip_zeros(self, eps: f64) -> Self {
        let (points, weights) = self
            .points
            .into_iter()
            .zip(self.weights)
            .filter(|(_, w)| !w.near_zero(eps))
            .unzip();
        WeightedPointSet { points, weights }
    }

    /// Snaps coordinates lying within `tol` of each other onto a common
    /// value (preferring 0 and 1) and merges coincident points.
    ///
    /// Whole planes are merged, so plane sums that were zero stay zero.
    pub fn merge_close(self, tol: f64) -> Self {
        let reps: Vec<Vec<f64>> = Axis::ALL
            .iter()
            .map(|&a| cluster_coords(self.points.iter().map(|p| p.coord(a)), tol))
            .collect();
        let terms = self.points.into_iter().zip(self.weights).map(|(p, w)| {
            let c = p.coords();
            let q = Point3::raw(snap(c[0], &reps[0], tol), snap(c[1], &reps[1], tol), snap(c[2], &reps[2], tol));
            (q, w)
        });
        Self::from_terms(terms)
    }

    /// Pointwise sum; common points add their weights, zeros are kept.
    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.iter().chain(other.iter()).map(|(p, w)| (*p, w.clone())))
    }

    pub fn scale(&self, c: &W) -> Self {
        WeightedPointSet {
            points: self.points.clone(),
            weights: self.weights.iter().map(|w| w.clone() * c.clone()).collect(),
        }
    }

    /// `Σ|λ|`
    pub fn mass(&self) -> W {
        self.weights.iter().fold(W::zero(), |acc, w| acc + w.abs())
    }

    /// `Σ λ f(p)`, weights converted to `f64`.
    pub fn weighted_sum(&self, f: &FunctionSource) -> f64 {
        self.iter().map(|(p, w)| w.to_f64() * f.value(p)).sum()
    }

    /// `Σ λ f(p) / Σ |λ|`; zero for an empty or all-zero set.
    pub fn golomb_ratio(&self, f: &FunctionSource) -> f64 {
        let mass = self.mass().to_f64();
        if mass == 0.0 {
            return 0.0;
        }
        self.weighted_sum(f) / mass
    }

    pub fn map_weights<U: Scalar>(&self, g: impl Fn(&W) -> U) -> WeightedPointSet<U> {
        WeightedPointSet {
            points: self.points.clone(),
            weights: self.weights.iter().map(g).collect(),
        }
    }

    /// Points sorted lexicographically.
    pub fn sorted(mut self) -> Self {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.points[a].lex_cmp(&self.points[b]));
        self.points = idx.iter().map(|&i| self.points[i]).collect();
        self.weights = idx.iter().map(|&i| self.weights[i].clone()).collect();
        self
    }

    /// Whether the support is a minimal projection cycle: every weight is
    /// nonzero, all plane sums vanish, and the constraint matrix restricted
    /// to the support has nullity one.
    pub fn is_minimal(&self, eps: f64) -> bool {
        if self.is_empty() || self.weights.iter().any(|w| w.near_zero(eps)) || !self.is_weak_cycle(eps) {
            return false;
        }
        let a = build_constraint_matrix(&self.points);
        a.matrix.rank(0.0) + 1 == self.len()
    }
}

impl WeightedPointSet<BigRational> {
    pub fn to_f64(&self) -> WeightedPointSet<f64> {
        self.map_weights(Scalar::to_f64)
    }
}

/// A weighted point set with nonzero weights and vanishing plane sums.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleVector<W>(WeightedPointSet<W>);

impl<W> Deref for CycleVector<W> {
    type Target = WeightedPointSet<W>;

    fn deref(&self) -> &WeightedPointSet<W> {
        &self.0
    }
}

impl<W: Scalar> CycleVector<W> {
    pub fn new(points: Vec<Point3>, weights: Vec<W>) -> Result<Self> {
        Self::from_set(WeightedPointSet::new(points, weights)?)
    }

    /// Validates exactly (or at [`FLOAT_PLANE_TOL`] for float weights).
    pub fn from_set(set: WeightedPointSet<W>) -> Result<Self> {
        let eps = if W::EXACT { 0.0 } else { FLOAT_PLANE_TOL };
        if set.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        if let Some((p, _)) = set.iter().find(|(_, w)| w.near_zero(eps)) {
            return Err(Error::InvalidCycle(format!("zero weight at {p}")));
        }
        let bad = set.nonzero_plane_sums(eps);
        if !bad.is_empty() {
            let listed: Vec<String> = bad
                .iter()
                .map(|(a, c, s)| format!("{}={} sums to {}", a.name(), c, s))
                .collect();
            return Err(Error::NotACycle(listed.join("; ")));
        }
        Ok(CycleVector(set))
    }

    pub fn as_set(&self) -> &WeightedPointSet<W> {
        &self.0
    }

    pub fn into_set(self) -> WeightedPointSet<W> {
        self.0
    }

    pub fn is_minimal(&self) -> bool {
        self.0.is_minimal(if W::EXACT { 0.0 } else { FLOAT_PLANE_TOL })
    }

    pub fn structure_check(&self) -> Vec<StructureViolation> {
        structure_check(&self.0)
    }
}

/// Pointwise sum of two cycle-vectors; zero-weight points are retained.
pub fn add_cycle_vectors<W: Scalar>(a: &CycleVector<W>, b: &CycleVector<W>) -> WeightedPointSet<W> {
    a.0.add(&b.0)
}

/// `f(p ∧ q) + f(p ∨ q) − f(p) − f(q)`.
pub fn lattice_inequality_gap(f: &FunctionSource, p: &Point3, q: &Point3) -> f64 {
    f.value(&p.meet(q)) + f.value(&p.join(q)) - f.value(p) - f.value(q)
}

/// Plane-incidence matrix: one row per (axis, attained coordinate), one
/// column per point, entry 1 when the point lies in the plane.
#[derive(Debug, Clone)]
pub struct ConstraintMatrix {
    pub rows: Vec<(Axis, f64)>,
    pub matrix: Matrix<BigRational>,
}

pub fn build_constraint_matrix(points: &[Point3]) -> ConstraintMatrix {
    let mut planes: BTreeMap<(Axis, Coord), usize> = BTreeMap::new();
    for p in points {
        for axis in Axis::ALL {
            planes.insert((axis, Coord(p.coord(axis))), 0);
        }
    }
    for (i, v) in planes.values_mut().enumerate() {
        *v = i;
    }
    let mut m = Matrix::zeros(planes.len(), points.len());
    for (j, p) in points.iter().enumerate() {
        for axis in Axis::ALL {
            m[(planes[&(axis, Coord(p.coord(axis)))], j)] = BigRational::one();
        }
    }
    ConstraintMatrix {
        rows: planes.keys().map(|(a, c)| (*a, c.0)).collect(),
        matrix: m,
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `visit` on every `k`-subset of `from..n`, in lexicographic order,
/// prefixed by `prefix`.
fn for_each_subset(prefix: &mut Vec<usize>, from: usize, n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == 0 {
        visit(prefix);
        return;
    }
    for i in from..n {
        if n - i < k {
            break;
        }
        prefix.push(i);
        for_each_subset(prefix, i + 1, n, k - 1, visit);
        prefix.pop();
    }
}

/// The unique (up to scale) kernel vector of `a` restricted to `cols` when
/// those columns form a circuit, as coprime integers.
fn circuit_vector(a: &Matrix<BigRational>, cols: &[usize]) -> Option<Vec<BigInt>> {
    let sub = a.select_columns(cols);
    let ns = sub.nullspace(0.0);
    if ns.len() != 1 || ns[0].iter().any(Zero::is_zero) {
        return None;
    }
    Some(primitive_integer_vector(&ns[0]))
}

/// All circuits of the column matroid of `a` with at most `max_support`
/// columns that contain every column in `required`.
///
/// Each circuit is returned once, as sorted column indices with a coprime
/// integer kernel vector whose first entry is positive. Results are ordered
/// by size, then lexicographically by columns.
pub fn matrix_circuits(
    a: &Matrix<BigRational>,
    max_support: usize,
    required: &[usize],
) -> Result<Vec<(Vec<usize>, Vec<BigInt>)>> {
    let n = a.cols();
    let mut req: Vec<usize> = required.to_vec();
    req.sort_unstable();
    req.dedup();
    if req.iter().any(|&c| c >= n) {
        return Err(Error::Precondition("required column out of range".into()));
    }
    let free: Vec<usize> = (0..n).filter(|c| !req.contains(c)).collect();
    let max_support = max_support.min(n);
    let extra_max = max_support.saturating_sub(req.len());
    let work = (0..=extra_max)
        .map(|k| binomial(free.len(), k))
        .max()
        .unwrap_or(0);
    if work > ENUMERATION_GUARD {
        return Err(Error::SizeGuard {
            what: "subsets to enumerate",
            actual: work,
            limit: ENUMERATION_GUARD,
        });
    }
    let mut out = Vec::new();
    for k in 0..=extra_max {
        if req.len() + k < 2 {
            continue;
        }
        // Parallel over the first free column; concatenation keeps the order.
        let firsts: Vec<usize> = if k == 0 { vec![usize::MAX] } else { (0..free.len()).collect() };
        let found: Vec<Vec<(Vec<usize>, Vec<BigInt>)>> = firsts
            .par_iter()
            .map(|&first| {
                let mut local = Vec::new();
                let mut test = |chosen: &[usize]| {
                    let mut cols: Vec<usize> = req.iter().copied().chain(chosen.iter().map(|&i| free[i])).collect();
                    cols.sort_unstable();
                    if let Some(mut v) = circuit_vector(a, &cols) {
                        if v[0].is_negative() {
                            v.iter_mut().for_each(|x| *x = -x.clone());
                        }
                        local.push((cols, v));
                    }
                };
                if first == usize::MAX {
                    test(&[]);
                } else {
                    let mut prefix = vec![first];
                    for_each_subset(&mut prefix, first + 1, free.len(), k - 1, &mut test);
                }
                local
            })
            .collect();
        let mut batch: Vec<_> = found.into_iter().flatten().collect();
        batch.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(batch);
    }
    Ok(out)
}

/// All minimal projection cycles supported on at most `max_support` of the
/// given points, with coprime integer weights and the lexicographically
/// smallest support point positive.
pub fn enumerate_minimal_cycles(points: &[Point3], max_support: usize) -> Result<Vec<CycleVector<BigRational>>> {
    let _ = WeightedPointSet::<BigRational>::new(points.to_vec(), vec![BigRational::zero(); points.len()])?;
    let a = build_constraint_matrix(points);
    let circuits = matrix_circuits(&a.matrix, max_support, &[])?;
    circuits
        .into_iter()
        .map(|(cols, v)| {
            let pts: Vec<Point3> = cols.iter().map(|&c| points[c]).collect();
            let smallest = (0..pts.len())
                .min_by(|&i, &j| pts[i].lex_cmp(&pts[j]))
                .expect("nonempty circuit");
            let sign = if v[smallest].is_negative() { -BigInt::one() } else { BigInt::one() };
            let weights = v.into_iter().map(|x| BigRational::from_integer(x * &sign)).collect();
            CycleVector::new(pts, weights)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructurePart {
    A,
    B,
    C,
    D,
    E,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureViolation {
    pub part: StructurePart,
    pub points: Vec<Point3>,
    pub detail: String,
}

/// Structural properties of optimal cycles for strictly supermodular `f`:
///
/// * (a) positive points are pairwise well-ordered;
/// * (b) a well-ordered pair on a common interior plane is positive;
/// * (c) negative points lie on the six edges avoiding `T1` and `T8`;
/// * (d) edge points other than `T1`, `T8` are negative;
/// * (e) `T1` and `T8` are present with positive weight.
pub fn structure_check<W: Scalar>(c: &WeightedPointSet<W>) -> Vec<StructureViolation> {
    let mut out = Vec::new();
    let pts = c.points();
    let ws = c.weights();
    let n = pts.len();
    let v = |part, points: Vec<Point3>, detail: String| StructureViolation { part, points, detail };
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (pts[i], pts[j]);
            let ordered = p.well_ordered(&q);
            if ws[i].is_positive() && ws[j].is_positive() && !ordered {
                out.push(v(StructurePart::A, vec![p, q], "positive points not well-ordered".into()));
            }
            let shares_interior = Axis::ALL.iter().any(|&a| {
                let t = p.coord(a);
                t == q.coord(a) && t > 0.0 && t < 1.0
            });
            if ordered && shares_interior && !(ws[i].is_positive() && ws[j].is_positive()) {
                out.push(v(
                    StructurePart::B,
                    vec![p, q],
                    "well-ordered pair on an interior plane is not positive".into(),
                ));
            }
        }
    }
    for (p, w) in c.iter() {
        if w.is_negative() && !p.on_antipodal_free_edge() {
            out.push(v(StructurePart::C, vec![*p], "negative point off the edges l1..l6".into()));
        }
        let anchor = *p == Point3::ORIGIN || *p == Point3::ONES;
        if !anchor && p.on_cube_edge() && !w.is_negative() {
            out.push(v(StructurePart::D, vec![*p], "edge point without negative weight".into()));
        }
    }
    for anchor in [Point3::ORIGIN, Point3::ONES] {
        if !c.weight_at(&anchor).is_some_and(|w| w.is_positive()) {
            out.push(v(StructurePart::E, vec![anchor], "missing or non-positive anchor vertex".into()));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Fraction {
    num: i64,
    den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CycleFile {
    points: Vec<[f64; 3]>,
    weights: Vec<Fraction>,
}

/// Parses a cycle file without checking plane sums.
pub fn parse_cycle_json(text: &str) -> Result<WeightedPointSet<BigRational>> {
    let file: CycleFile = serde_json::from_str(text)?;
    let points = file
        .points
        .into_iter()
        .map(Point3::try_from)
        .collect::<Result<Vec<_>>>()?;
    let weights = file
        .weights
        .into_iter()
        .map(|f| {
            if f.den <= 0 {
                Err(Error::InvalidCycle(format!("denominator {} must be positive", f.den)))
            } else {
                Ok(BigRational::new(f.num.into(), f.den.into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedPointSet::new(points, weights)
}

pub fn read_cycle_file(path: impl AsRef<Path>) -> Result<WeightedPointSet<BigRational>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cycle_json(&text)
}

/// Reads a cycle file and validates it as a cycle-vector.
pub fn load_cycle(path: impl AsRef<Path>) -> Result<CycleVector<BigRational>> {
    CycleVector::from_set(read_cycle_file(path)?)
}

pub fn cycle_to_json(set: &WeightedPointSet<BigRational>) -> Result<serde_json::Value> {
    let weights = set
        .weights()
        .iter()
        .map(|w| {
            let num = w.numer().to_i64();
            let den = w.denom().to_i64();
            match (num, den) {
                (Some(num), Some(den)) => Ok(Fraction { num, den }),
                _ => Err(Error::Consistency(format!("weight {w} does not fit in i64"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let file = CycleFile {
        points: set.points().iter().map(|p| p.coords()).collect(),
        weights,
    };
    Ok(serde_json::to_value(file)?)
}

/// JSON for float-weighted sets: `{"points": [...], "weights": [...]}`.
pub fn float_set_to_json(set: &WeightedPointSet<f64>) -> serde_json::Value {
    serde_json::json!({
        "points": set.points().iter().map(|p| p.coords()).collect::<Vec<_>>(),
        "weights": set.weights(),
    })
}
