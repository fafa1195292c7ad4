//! Chebyshev approximation on a finite grid `A × B × C` by linear
//! programming.
//!
//! The primal is `min t` subject to `|f(a,b,c) − φ_a − ψ_b − ω_c| ≤ t` with
//! `φ(0) = ψ(0) = 0`. It has few variables but `2|A||B||C|` constraints,
//! so the solver works on its dual, whose columns are grid points: a point
//! `k` contributes `u_k` (constraint `f − g ≤ t`) and `v_k` (`g − f ≤ t`),
//! and a feasible dual is a weak projection cycle `λ = u − v` with
//! `Σ|λ| = 1`. Columns are generated lazily: solve on the active points,
//! read `φ, ψ, ω, t` off the row duals, add the grid point with the
//! largest residual, repeat until no residual exceeds `t`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::candidate::CandidateSet;
use crate::cycle::{float_set_to_json, WeightedPointSet};
use crate::error::{Error, Result};
use crate::function::{uniform_axis, FunctionSource};
use crate::point::Point3;
use crate::scalar::Scalar;
use crate::simplex::{Simplex, SimplexOptions, SimplexStats, Status};

/// Largest grid [`grid_error`] accepts.
pub const GRID_GUARD: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub zs: Vec<f64>,
}

impl GridSpec {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, zs: Vec<f64>) -> Result<Self> {
        let g = GridSpec { xs, ys, zs };
        g.validate()?;
        Ok(g)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform3(n, n, n)
    }

    pub fn uniform3(nx: usize, ny: usize, nz: usize) -> Result<Self> {
        if nx.min(ny).min(nz) < 2 {
            return Err(Error::InvalidGrid("every axis needs at least 2 points".into()));
        }
        Self::new(uniform_axis(nx), uniform_axis(ny), uniform_axis(nz))
    }

    /// The grid `U_x × U_y × U_z` of a candidate set.
    pub fn from_candidates(u: &CandidateSet) -> Result<Self> {
        Self::new(u.ux.clone(), u.uy.clone(), u.uz.clone())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, axis) in [("A", &self.xs), ("B", &self.ys), ("C", &self.zs)] {
            if axis.len() < 2 {
                return Err(Error::InvalidGrid(format!("{name} has fewer than 2 points")));
            }
            if axis.first() != Some(&0.0) || axis.last() != Some(&1.0) {
                return Err(Error::InvalidGrid(format!("{name} must contain 0 and 1")));
            }
            if axis.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::InvalidGrid(format!("{name} is not strictly increasing")));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> u128 {
        self.xs.len() as u128 * self.ys.len() as u128 * self.zs.len() as u128
    }

    /// Every axis of `other` is a subset of the corresponding axis here.
    pub fn contains(&self, other: &GridSpec) -> bool {
        let sub = |small: &[f64], big: &[f64]| small.iter().all(|v| big.contains(v));
        sub(&other.xs, &self.xs) && sub(&other.ys, &self.ys) && sub(&other.zs, &self.zs)
    }

    fn point(&self, flat: usize) -> Point3 {
        let (ny, nz) = (self.ys.len(), self.zs.len());
        Point3::raw(self.xs[flat / (ny * nz)], self.ys[flat / nz % ny], self.zs[flat % nz])
    }

    fn index(&self, flat: usize) -> [usize; 3] {
        let (ny, nz) = (self.ys.len(), self.zs.len());
        [flat / (ny * nz), flat / nz % ny, flat % nz]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    /// Column generation stops once no residual exceeds `t` by more.
    pub violation_tol: f64,
    pub simplex: SimplexOptions,
    pub max_rounds: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            violation_tol: 1e-10,
            simplex: SimplexOptions::default(),
            max_rounds: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct LpStats {
    pub grid_points: usize,
    pub rounds: usize,
    pub active_points: usize,
    pub simplex: SimplexStats,
    /// `max |f − φ − ψ − ω|` over the whole grid, recomputed at the end.
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct LpSolution<T = f64> {
    pub t: T,
    pub grid: GridSpec,
    pub phi: Vec<T>,
    pub psi: Vec<T>,
    pub omega: Vec<T>,
    /// Signed dual multipliers on the active points, `Σ|λ| = 1`.
    pub dual: WeightedPointSet<T>,
    pub stats: LpStats,
}

struct Layout {
    na: usize,
    nb: usize,
    nc: usize,
}

impl Layout {
    fn rows(&self) -> usize {
        self.na + self.nb + self.nc - 1
    }

    fn norm_row(&self) -> usize {
        self.rows() - 1
    }

    /// Plane rows of a grid point; the gauge-fixed planes `x = 0` and
    /// `y = 0` have none.
    fn plane_rows(&self, [i, j, k]: [usize; 3]) -> Vec<usize> {
        let mut r = Vec::with_capacity(3);
        if i > 0 {
            r.push(i - 1);
        }
        if j > 0 {
            r.push(self.na - 1 + j - 1);
        }
        r.push(self.na - 1 + self.nb - 1 + k);
        r
    }
}

fn sample_grid(f: &FunctionSource, g: &GridSpec) -> Result<Vec<f64>> {
    let n = g.size() as usize;
    (0..n)
        .into_par_iter()
        .map(|k| f.evaluate(&g.point(k)))
        .collect()
}

/// Grid index with the largest value of `score`, lowest index on ties.
fn argmax_first<T: Scalar>(n: usize, score: impl Fn(usize) -> T + Sync) -> Option<(usize, T)> {
    const CHUNK: usize = 4096;
    let chunks: Vec<Option<(usize, T)>> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut best: Option<(usize, T)> = None;
            for k in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let s = score(k);
                if best.as_ref().is_none_or(|(_, b)| s > *b) {
                    best = Some((k, s));
                }
            }
            best
        })
        .collect();
    chunks.into_iter().flatten().fold(None, |acc, (k, s)| match acc {
        Some((bk, bs)) if s <= bs => Some((bk, bs)),
        _ => Some((k, s)),
    })
}

/// Column generation in scalar type `T`.
pub fn grid_error_in<T: Scalar>(f: &FunctionSource, g: &GridSpec, opts: &LpOptions) -> Result<LpSolution<T>> {
    g.validate()?;
    if g.size() > GRID_GUARD {
        return Err(Error::SizeGuard {
            what: "grid points",
            actual: g.size(),
            limit: GRID_GUARD,
        });
    }
    let values = sample_grid(f, g)?;
    let fv: Vec<T> = values.iter().map(|&v| T::from_f64(v)).collect();
    let layout = Layout {
        na: g.xs.len(),
        nb: g.ys.len(),
        nc: g.zs.len(),
    };
    let m = layout.rows();
    let mut b = vec![T::zero(); m];
    b[layout.norm_row()] = T::one();
    let mut lp = Simplex::<T>::new(b, opts.simplex);
    let mut active: Vec<usize> = Vec::new();
    let mut is_active = vec![false; values.len()];
    let add_point = |lp: &mut Simplex<T>, active: &mut Vec<usize>, is_active: &mut Vec<bool>, k: usize| {
        let rows = layout.plane_rows(g.index(k));
        let mut u: Vec<(usize, T)> = rows.iter().map(|&r| (r, T::one())).collect();
        let mut v: Vec<(usize, T)> = rows.iter().map(|&r| (r, -T::one())).collect();
        u.push((layout.norm_row(), T::one()));
        v.push((layout.norm_row(), T::one()));
        lp.add_column(u, -fv[k].clone());
        lp.add_column(v, fv[k].clone());
        active.push(k);
        is_active[k] = true;
    };
    let (na, nb, nc) = (layout.na, layout.nb, layout.nc);
    for i in [0, na - 1] {
        for j in [0, nb - 1] {
            for k in [0, nc - 1] {
                add_point(&mut lp, &mut active, &mut is_active, (i * nb + j) * nc + k);
            }
        }
    }
    let tol = T::from_f64(if T::EXACT { 0.0 } else { opts.violation_tol });
    let mut rounds = 0;
    let (phi, psi, omega, t) = loop {
        rounds += 1;
        if rounds > opts.max_rounds {
            return Err(Error::Solver(format!("no convergence after {} rounds", opts.max_rounds)));
        }
        match lp.solve()? {
            Status::Optimal => {}
            s => return Err(Error::Solver(format!("restricted dual is {s:?}"))),
        }
        let y = lp.duals();
        let mut phi = vec![T::zero(); na];
        let mut psi = vec![T::zero(); nb];
        let mut omega = vec![T::zero(); nc];
        for i in 1..na {
            phi[i] = -y[i - 1].clone();
        }
        for j in 1..nb {
            psi[j] = -y[na - 1 + j - 1].clone();
        }
        for k in 0..nc {
            omega[k] = -y[na - 1 + nb - 1 + k].clone();
        }
        let t = -y[layout.norm_row()].clone();
        let residual = |k: usize| {
            let [i, j, l] = g.index(k);
            (fv[k].clone() - phi[i].clone() - psi[j].clone() - omega[l].clone()).abs()
        };
        let (worst, excess) = argmax_first(values.len(), |k| residual(k) - t.clone()).expect("nonempty grid");
        if excess <= tol {
            break (phi, psi, omega, t);
        }
        if is_active[worst] {
            return Err(Error::Solver(format!(
                "stalled: active point {} still violated by {:e}",
                g.point(worst),
                excess.to_f64()
            )));
        }
        add_point(&mut lp, &mut active, &mut is_active, worst);
    };
    let x = lp.primal();
    let mut terms = Vec::new();
    for (n, &k) in active.iter().enumerate() {
        let lam = x[2 * n].clone() - x[2 * n + 1].clone();
        if !lam.near_zero(if T::EXACT { 0.0 } else { 1e-13 }) {
            terms.push((g.point(k), lam));
        }
    }
    let mut dual = WeightedPointSet::from_terms(terms);
    let mass = dual.mass();
    if t.near_zero(if T::EXACT { 0.0 } else { 1e-12 }) || mass.is_zero() {
        dual = WeightedPointSet::default();
    } else {
        dual = dual.scale(&(T::one() / mass));
    }
    let max_residual = (0..values.len())
        .map(|k| {
            let [i, j, l] = g.index(k);
            (values[k] - phi[i].to_f64() - psi[j].to_f64() - omega[l].to_f64()).abs()
        })
        .fold(0.0, f64::max);
    Ok(LpSolution {
        t,
        grid: g.clone(),
        phi,
        psi,
        omega,
        dual,
        stats: LpStats {
            grid_points: values.len(),
            rounds,
            active_points: active.len(),
            simplex: lp.stats(),
            max_residual,
        },
    })
}

/// Best approximation error of `f` on the grid, in floating point.
pub fn grid_error(f: &FunctionSource, g: &GridSpec) -> Result<LpSolution> {
    grid_error_in::<f64>(f, g, &LpOptions::default())
}

/// The optimal dual as a weak projection cycle with `Σ|λ| = 1`; empty when
/// `t* = 0`.
pub fn extract_dual_cycle<T: Scalar>(sol: &LpSolution<T>) -> WeightedPointSet<T> {
    sol.dual.clone()
}

/// Grid errors on a nested sequence of grids: a nondecreasing sequence of
/// lower bounds on the error over the cube.
pub fn refine_and_bound(f: &FunctionSource, grids: &[GridSpec]) -> Result<Vec<f64>> {
    if let Some(w) = grids.windows(2).position(|w| !w[1].contains(&w[0])) {
        return Err(Error::Precondition(format!(
            "grid {} does not contain grid {}",
            w + 1,
            w
        )));
    }
    grids.iter().map(|g| grid_error(f, g).map(|s| s.t)).collect()
}

fn table(axis: &[f64], values: &[f64]) -> serde_json::Map<String, serde_json::Value> {
    let sorted: BTreeMap<String, f64> = axis.iter().zip(values).map(|(a, v)| (a.to_string(), *v)).collect();
    sorted.into_iter().map(|(k, v)| (k, v.into())).collect()
}

impl LpSolution<f64> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "t": self.t,
            "grid": self.grid,
            "phi": table(&self.grid.xs, &self.phi),
            "psi": table(&self.grid.ys, &self.psi),
            "omega": table(&self.grid.zs, &self.omega),
            "dual_cycle": float_set_to_json(&self.dual),
            "stats": self.stats,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::builtin;
    use crate::scalar::ratio;
    use crate::Rational;

    fn b(name: &str) -> FunctionSource {
        builtin(name, None).unwrap()
    }

    #[test]
    fn corner_grids() {
        let g = GridSpec::uniform(2).unwrap();
        assert!((grid_error(&b("product_xz"), &g).unwrap().t - 0.25).abs() < 1e-12);
        assert!((grid_error(&b("product_xyz"), &g).unwrap().t - 1.0 / 3.0).abs() < 1e-12);
        let exact = grid_error_in::<Rational>(&b("product_xyz"), &g, &LpOptions::default()).unwrap();
        assert_eq!(exact.t, ratio(1, 3));
    }

    #[test]
    fn dual_is_a_weak_cycle_with_ratio_t() {
        let f = b("product_xz");
        let sol = grid_error(&f, &GridSpec::uniform(2).unwrap()).unwrap();
        let d = extract_dual_cycle(&sol);
        assert!(d.is_weak_cycle(1e-9));
        assert!((d.mass() - 1.0).abs() < 1e-12);
        assert!((d.golomb_ratio(&f) - sol.t).abs() < 1e-9);
        assert!((sol.stats.max_residual - sol.t).abs() < 1e-9);
    }

    #[test]
    fn separable_is_zero() {
        let f = builtin("separable", Some("sx=1.5,fy=2")).unwrap();
        let sol = grid_error(&f, &GridSpec::uniform(4).unwrap()).unwrap();
        assert!(sol.t.abs() < 1e-9);
        assert!(sol.dual.is_empty());
    }

    #[test]
    fn exact_and_float_agree_on_small_grid() {
        let f = b("remark41_piecewise");
        let g = GridSpec::uniform(3).unwrap();
        let fl = grid_error(&f, &g).unwrap();
        let ex = grid_error_in::<Rational>(&f, &g, &LpOptions::default()).unwrap();
        assert!((fl.t - Scalar::to_f64(&ex.t)).abs() < 1e-12);
        assert!(ex.dual.is_weak_cycle(0.0));
    }

    #[test]
    fn nesting_and_guards() {
        let f = b("product_xz");
        let grids = [
            GridSpec::uniform(2).unwrap(),
            GridSpec::uniform(3).unwrap(),
            GridSpec::uniform(5).unwrap(),
        ];
        let ts = refine_and_bound(&f, &grids).unwrap();
        assert!(ts.iter().all(|t| (t - 0.25).abs() < 1e-12));
        let bad = [GridSpec::uniform(3).unwrap(), GridSpec::uniform(4).unwrap()];
        assert!(matches!(refine_and_bound(&f, &bad), Err(Error::Precondition(_))));
        let big = GridSpec::uniform(101).unwrap();
        assert!(matches!(grid_error(&f, &big), Err(Error::SizeGuard { .. })));
        assert!(GridSpec::new(vec![0.0, 0.5], vec![0.0, 1.0], vec![0.0, 1.0]).is_err());
    }
}
