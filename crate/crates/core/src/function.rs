//! The function `f` to be approximated: builtin analytic functions, gridded
//! data with trilinear interpolation, and the mixed-difference sign check.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{Axis, Point3};

/// Default tolerance of the mixed-difference check for analytic functions.
pub const ANALYTIC_DELTA_TOL: f64 = 1e-12;
/// Default tolerance of the mixed-difference check for grid data.
pub const GRID_DELTA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Separable {
    pub sx: f64,
    pub fx: f64,
    pub sy: f64,
    pub fy: f64,
    pub sz: f64,
    pub fz: f64,
}

impl Separable {
    pub const NONE: Separable = Separable {
        sx: 0.0,
        fx: 1.0,
        sy: 0.0,
        fy: 1.0,
        sz: 0.0,
        fz: 1.0,
    };

    /// `sx·sin(fx·x) + sy·cos(fy·y) + sz·exp(fz·z)`
    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        self.sx * (self.fx * x).sin() + self.sy * (self.fy * y).cos() + self.sz * (self.fz * z).exp()
    }
}

/// One monomial pair term `coef · u^p · v^q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairTerm {
    pub coef: f64,
    pub p: f64,
    pub q: f64,
}

impl PairTerm {
    fn eval(&self, u: f64, v: f64) -> f64 {
        if self.coef == 0.0 {
            0.0
        } else {
            self.coef * u.powf(self.p) * v.powf(self.q)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Builtin {
    Zero,
    ProductXz,
    ProductXy,
    ProductXyz,
    BilinearSum,
    NegXy,
    Remark41Piecewise,
    /// `sx·sin(fx·x) + sy·cos(fy·y) + sz·exp(fz·z)`
    Separable(Separable),
    /// `cxy·x^a·y^b + cyz·y^a·z^b + cxz·x^a·z^b` plus a separable part.
    MixedProducts {
        xy: PairTerm,
        yz: PairTerm,
        xz: PairTerm,
        noise: Separable,
    },
}

impl Builtin {
    pub const NAMES: &'static [&'static str] = &[
        "zero",
        "product_xz",
        "product_xy",
        "product_xyz",
        "bilinear_sum",
        "neg_xy",
        "remark41_piecewise",
        "separable",
        "mixed_products",
    ];

    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        match self {
            Builtin::Zero => 0.0,
            Builtin::ProductXz => x * z,
            Builtin::ProductXy => x * y,
            Builtin::ProductXyz => x * y * z,
            Builtin::BilinearSum => x * y + x * z + y * z,
            Builtin::NegXy => -(x * y),
            Builtin::Remark41Piecewise => remark41(x, y, z),
            Builtin::Separable(s) => s.eval(x, y, z),
            Builtin::MixedProducts { xy, yz, xz, noise } => {
                xy.eval(x, y) + yz.eval(y, z) + xz.eval(x, z) + noise.eval(x, y, z)
            }
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Builtin::Zero => "zero",
            Builtin::ProductXz => "product_xz",
            Builtin::ProductXy => "product_xy",
            Builtin::ProductXyz => "product_xyz",
            Builtin::BilinearSum => "bilinear_sum",
            Builtin::NegXy => "neg_xy",
            Builtin::Remark41Piecewise => "remark41_piecewise",
            Builtin::Separable(_) => "separable",
            Builtin::MixedProducts { .. } => "mixed_products",
        }
    }
}

/// Four-branch piecewise function; branches agree on `x = 1/2` and `z = 1/2`,
/// the first matching closed branch wins.
fn remark41(x: f64, y: f64, z: f64) -> f64 {
    if x <= 0.5 && z <= 0.5 {
        x * z
    } else if x >= 0.5 && z <= 0.5 {
        z / 2.0 + (2.0 * x - 1.0) * y / 4.0
    } else if x <= 0.5 && z >= 0.5 {
        x / 2.0 + (2.0 * z - 1.0) * y / 4.0
    } else {
        0.25 + (2.0 * x - 1.0) * y / 4.0 + (2.0 * z - 1.0) * y / 4.0
    }
}

/// Coefficients of `a·f + b·x + c·y + d·z + e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 0.0,
        e: 0.0,
    };
}

type Closure = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// An evaluable function on the unit cube.
#[derive(Clone)]
pub enum FunctionSource {
    Builtin(Builtin),
    Grid(Arc<GridData>),
    Affine {
        inner: Box<FunctionSource>,
        coef: Affine,
    },
    /// Arbitrary closure, used for programmatic callers and tests.
    Custom { name: String, f: Closure },
}

impl fmt::Debug for FunctionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FunctionSource {
    pub fn custom(name: impl Into<String>, f: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        FunctionSource::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn affine(self, coef: Affine) -> Self {
        if coef == Affine::IDENTITY {
            return self;
        }
        FunctionSource::Affine {
            inner: Box::new(self),
            coef,
        }
    }

    /// Evaluates `f` at `p`, rejecting points outside the cube.
    pub fn evaluate(&self, p: &Point3) -> Result<f64> {
        if !p.in_cube() {
            return Err(Error::Domain {
                x: p.x,
                y: p.y,
                z: p.z,
            });
        }
        Ok(self.value(p))
    }

    /// Unchecked evaluation for points already known to lie in the cube.
    pub fn value(&self, p: &Point3) -> f64 {
        self.value_xyz(p.x, p.y, p.z)
    }

    pub fn value_xyz(&self, x: f64, y: f64, z: f64) -> f64 {
        match self {
            FunctionSource::Builtin(b) => b.eval(x, y, z),
            FunctionSource::Grid(g) => g.interpolate(x, y, z),
            FunctionSource::Affine { inner, coef } => {
                coef.a * inner.value_xyz(x, y, z) + coef.b * x + coef.c * y + coef.d * z + coef.e
            }
            FunctionSource::Custom { f, .. } => f(x, y, z),
        }
    }

    /// Short human-readable description, stable across runs.
    pub fn descriptor(&self) -> String {
        match self {
            FunctionSource::Builtin(b) => match b {
                Builtin::Separable(_) | Builtin::MixedProducts { .. } => {
                    format!("builtin:{}{}", b.name(), serde_json::to_string(b).unwrap_or_default())
                }
                _ => format!("builtin:{}", b.name()),
            },
            FunctionSource::Grid(g) => format!("grid:{}x{}x{}", g.nx, g.ny, g.nz),
            FunctionSource::Affine { inner, coef } => format!(
                "{}*({}) + {}*x + {}*y + {}*z + {}",
                coef.a,
                inner.descriptor(),
                coef.b,
                coef.c,
                coef.d,
                coef.e
            ),
            FunctionSource::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    pub fn is_grid(&self) -> bool {
        match self {
            FunctionSource::Grid(_) => true,
            FunctionSource::Affine { inner, .. } => inner.is_grid(),
            _ => false,
        }
    }

    /// Node coordinates of the underlying grid data, if any.
    pub fn grid_nodes(&self) -> Option<[Vec<f64>; 3]> {
        match self {
            FunctionSource::Grid(g) => Some([g.xs.clone(), g.ys.clone(), g.zs.clone()]),
            FunctionSource::Affine { inner, .. } => inner.grid_nodes(),
            _ => None,
        }
    }
}

fn parse_params(name: &str, raw: Option<&str>) -> Result<BTreeMap<String, f64>> {
    let mut params = BTreeMap::new();
    let Some(raw) = raw.filter(|r| !r.is_empty()) else {
        return Ok(params);
    };
    for kv in raw.split(',') {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::BadParameter {
            name: name.to_string(),
            reason: format!("expected k=v, got `{kv}`"),
        })?;
        let value: f64 = v.trim().parse().map_err(|_| Error::BadParameter {
            name: name.to_string(),
            reason: format!("`{v}` is not a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::BadParameter {
                name: name.to_string(),
                reason: format!("`{k}` must be finite"),
            });
        }
        params.insert(k.trim().to_string(), value);
    }
    Ok(params)
}

struct Params {
    name: String,
    map: BTreeMap<String, f64>,
}

impl Params {
    fn take(&mut self, key: &str, default: f64) -> f64 {
        self.map.remove(key).unwrap_or(default)
    }

    fn separable(&mut self, default_amp: f64) -> Separable {
        Separable {
            sx: self.take("sx", default_amp),
            fx: self.take("fx", 1.0),
            sy: self.take("sy", default_amp),
            fy: self.take("fy", 1.0),
            sz: self.take("sz", default_amp),
            fz: self.take("fz", 1.0),
        }
    }

    fn pair(&mut self, tag: &str) -> PairTerm {
        PairTerm {
            coef: self.take(&format!("c{tag}"), 0.0),
            p: self.take(&format!("p{tag}"), 1.0),
            q: self.take(&format!("q{tag}"), 1.0),
        }
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            None => Ok(()),
            Some(k) => Err(Error::BadParameter {
                name: self.name,
                reason: format!("unknown parameter `{k}`"),
            }),
        }
    }
}

/// Builds a builtin by name. `params` is the optional `k=v,...` list.
///
/// Every builtin accepts the affine wrapper keys `a,b,c,d,e`
/// (`a·f + b·x + c·y + d·z + e`). `separable` takes `sx,fx,sy,fy,sz,fz`;
/// `mixed_products` takes `cxy,pxy,qxy` (and likewise `yz`, `xz`) plus the
/// separable keys for its noise part.
pub fn builtin(name: &str, params: Option<&str>) -> Result<FunctionSource> {
    let mut p = Params {
        name: name.to_string(),
        map: parse_params(name, params)?,
    };
    let b = match name {
        "zero" => Builtin::Zero,
        "product_xz" => Builtin::ProductXz,
        "product_xy" => Builtin::ProductXy,
        "product_xyz" => Builtin::ProductXyz,
        "bilinear_sum" => Builtin::BilinearSum,
        "neg_xy" => Builtin::NegXy,
        "remark41_piecewise" => Builtin::Remark41Piecewise,
        "separable" => Builtin::Separable(p.separable(1.0)),
        "mixed_products" => Builtin::MixedProducts {
            xy: p.pair("xy"),
            yz: p.pair("yz"),
            xz: p.pair("xz"),
            noise: p.separable(0.0),
        },
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    let coef = Affine {
        a: p.take("a", 1.0),
        b: p.take("b", 0.0),
        c: p.take("c", 0.0),
        d: p.take("d", 0.0),
        e: p.take("e", 0.0),
    };
    p.finish()?;
    Ok(FunctionSource::Builtin(b).affine(coef))
}

/// Parses `builtin:NAME[:k=v,...]` or `grid:PATH`.
pub fn parse_spec(spec: &str) -> Result<FunctionSource> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let (name, params) = match rest.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (rest, None),
        };
        builtin(name, params)
    } else if let Some(path) = spec.strip_prefix("grid:") {
        load_grid(path)
    } else {
        Err(Error::BadSpec(spec.to_string()))
    }
}

/// Values on a rectilinear grid, `x` index outermost and `z` innermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridData {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub zs: Vec<f64>,
    pub values: Vec<f64>,
}

impl GridData {
    pub fn validate(&self) -> Result<()> {
        for (name, n, axis) in [("x", self.nx, &self.xs), ("y", self.ny, &self.ys), ("z", self.nz, &self.zs)] {
            if n < 2 {
                return Err(Error::InvalidGrid(format!("n{name} = {n} < 2")));
            }
            if axis.len() != n {
                return Err(Error::InvalidGrid(format!(
                    "{name}s has {} entries, n{name} = {n}",
                    axis.len()
                )));
            }
            if axis[0] != 0.0 || axis[n - 1] != 1.0 {
                return Err(Error::InvalidGrid(format!("{name}s must start at 0 and end at 1")));
            }
            if axis.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::InvalidGrid(format!("{name}s is not strictly increasing")));
            }
        }
        let expected = self.nx * self.ny * self.nz;
        if self.values.len() != expected {
            return Err(Error::InvalidGrid(format!(
                "values has {} entries, expected {expected}",
                self.values.len()
            )));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("values must be finite".into()));
        }
        Ok(())
    }

    /// Samples `f` on the given axes.
    pub fn sample(f: &FunctionSource, xs: Vec<f64>, ys: Vec<f64>, zs: Vec<f64>) -> Result<Self> {
        let mut values = Vec::with_capacity(xs.len() * ys.len() * zs.len());
        for &x in &xs {
            for &y in &ys {
                for &z in &zs {
                    values.push(f.evaluate(&Point3::raw(x, y, z))?);
                }
            }
        }
        let g = GridData {
            nx: xs.len(),
            ny: ys.len(),
            nz: zs.len(),
            xs,
            ys,
            zs,
            values,
        };
        g.validate()?;
        Ok(g)
    }

    fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[(i * self.ny + j) * self.nz + k]
    }

    /// Trilinear interpolation; exact at nodes.
    pub fn interpolate(&self, x: f64, y: f64, z: f64) -> f64 {
        let (i, tx) = locate(&self.xs, x);
        let (j, ty) = locate(&self.ys, y);
        let (k, tz) = locate(&self.zs, z);
        let mut acc = 0.0;
        for (di, wx) in [(0, 1.0 - tx), (1, tx)] {
            if wx == 0.0 {
                continue;
            }
            for (dj, wy) in [(0, 1.0 - ty), (1, ty)] {
                if wy == 0.0 {
                    continue;
                }
                for (dk, wz) in [(0, 1.0 - tz), (1, tz)] {
                    if wz == 0.0 {
                        continue;
                    }
                    acc += wx * wy * wz * self.at(i + di, j + dj, k + dk);
                }
            }
        }
        acc
    }
}

/// Cell index `i` with `axis[i] <= t <= axis[i+1]` and the local coordinate.
fn locate(axis: &[f64], t: f64) -> (usize, f64) {
    let n = axis.len();
    let upper = axis.partition_point(|&a| a <= t).clamp(1, n - 1);
    let i = upper - 1;
    if axis[i] == t {
        return (i, 0.0);
    }
    let s = ((t - axis[i]) / (axis[i + 1] - axis[i])).clamp(0.0, 1.0);
    (i, s)
}

pub fn load_grid(path: impl AsRef<Path>) -> Result<FunctionSource> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let grid: GridData = serde_json::from_str(&text)?;
    grid.validate()?;
    Ok(FunctionSource::Grid(Arc::new(grid)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaLocation {
    pub axes: [Axis; 2],
    /// Lower corner of the cell where the worst difference was found.
    pub point: Point3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub satisfied_weak: bool,
    pub satisfied_strict: bool,
    /// Smallest mixed second difference found; negative means a violation.
    pub worst_violation: f64,
    pub worst_location: DeltaLocation,
    pub differences_checked: usize,
    pub tol: f64,
}

impl DeltaReport {
    /// Conjunction of two reports on different grids.
    pub fn combine(self, other: DeltaReport) -> DeltaReport {
        let (worst, loc) = if other.worst_violation < self.worst_violation {
            (other.worst_violation, other.worst_location)
        } else {
            (self.worst_violation, self.worst_location)
        };
        DeltaReport {
            satisfied_weak: self.satisfied_weak && other.satisfied_weak,
            satisfied_strict: self.satisfied_strict && other.satisfied_strict,
            worst_violation: worst,
            worst_location: loc,
            differences_checked: self.differences_checked + other.differences_checked,
            tol: self.tol.max(other.tol),
        }
    }
}

/// Uniform axis with `n` points from 0 to 1.
pub fn uniform_axis(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| if i + 1 == n { 1.0 } else { i as f64 / (n - 1) as f64 })
        .collect()
}

/// Checks the three mixed second differences on the uniform `n³` grid.
pub fn check_delta_conditions(f: &FunctionSource, n: usize, tol: f64) -> Result<DeltaReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("grid resolution {n} < 2")));
    }
    let axis = uniform_axis(n);
    check_delta_on_axes(f, [&axis, &axis, &axis], tol)
}

/// Checks `Δ_aΔ_b f` over all adjacent cell pairs of a rectilinear grid.
///
/// Differences over longer steps are sums of adjacent ones, so checking
/// adjacent cells covers every node pair of the grid.
pub fn check_delta_on_axes(f: &FunctionSource, axes: [&[f64]; 3], tol: f64) -> Result<DeltaReport> {
    let [xs, ys, zs] = axes;
    let (nx, ny, nz) = (xs.len(), ys.len(), zs.len());
    if nx < 2 || ny < 2 || nz < 2 {
        return Err(Error::Precondition("every axis needs at least 2 points".into()));
    }
    let mut v = Vec::with_capacity(nx * ny * nz);
    for &x in xs {
        for &y in ys {
            for &z in zs {
                v.push(f.evaluate(&Point3::raw(x, y, z))?);
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| v[(i * ny + j) * nz + k];
    let mut worst = f64::INFINITY;
    let mut loc = DeltaLocation {
        axes: [Axis::X, Axis::Y],
        point: Point3::ORIGIN,
    };
    let mut all_weak = true;
    let mut all_strict = true;
    let mut count = 0;
    let mut visit = |d: f64, axes: [Axis; 2], i: usize, j: usize, k: usize| {
        count += 1;
        all_weak &= d >= -tol;
        all_strict &= d > tol;
        if d < worst {
            worst = d;
            loc = DeltaLocation {
                axes,
                point: Point3::raw(xs[i], ys[j], zs[k]),
            };
        }
    };
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                if i + 1 < nx && j + 1 < ny {
                    let d = at(i + 1, j + 1, k) - at(i + 1, j, k) - at(i, j + 1, k) + at(i, j, k);
                    visit(d, [Axis::X, Axis::Y], i, j, k);
                }
                if i + 1 < nx && k + 1 < nz {
                    let d = at(i + 1, j, k + 1) - at(i + 1, j, k) - at(i, j, k + 1) + at(i, j, k);
                    visit(d, [Axis::X, Axis::Z], i, j, k);
                }
                if j + 1 < ny && k + 1 < nz {
                    let d = at(i, j + 1, k + 1) - at(i, j + 1, k) - at(i, j, k + 1) + at(i, j, k);
                    visit(d, [Axis::Y, Axis::Z], i, j, k);
                }
            }
        }
    }
    Ok(DeltaReport {
        satisfied_weak: all_weak,
        satisfied_strict: all_strict,
        worst_violation: worst,
        worst_location: loc,
        differences_checked: count,
        tol,
    })
}

/// Condition check appropriate to the source: the uniform `n³` grid, and
/// for gridded data additionally the refinement of the native node grid by
/// the uniform one.
pub fn check_source(f: &FunctionSource, n: usize, tol: Option<f64>) -> Result<DeltaReport> {
    let tol = tol.unwrap_or(if f.is_grid() { GRID_DELTA_TOL } else { ANALYTIC_DELTA_TOL });
    let uniform = check_delta_conditions(f, n, tol)?;
    let Some(nodes) = f.grid_nodes() else {
        return Ok(uniform);
    };
    let u = uniform_axis(n);
    let refine = |axis: &Vec<f64>| -> Vec<f64> {
        let mut all: Vec<f64> = axis.iter().chain(&u).copied().collect();
        all.sort_by(|a, b| a.total_cmp(b));
        all.dedup();
        all
    };
    let [xs, ys, zs] = nodes.each_ref().map(refine);
    let refined = check_delta_on_axes(f, [&xs, &ys, &zs], tol)?;
    Ok(uniform.combine(refined))
}
