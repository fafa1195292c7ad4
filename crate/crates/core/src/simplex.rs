//! Revised primal simplex with an explicit basis inverse, built for column
//! generation: columns can be appended between solves and the previous
//! basis is reused.
//!
//! Solves `min cᵀx` subject to `Ax = b`, `x ≥ 0`. Artificial columns occupy
//! internal indices `0..m` and start as the basis; phase one drives them
//! out, and in phase two any artificial still basic (at level zero, on a
//! redundant or empty row) is pivoted out as soon as an entering column
//! touches its row, so it never becomes positive.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Entries of `B⁻¹a` at or below this magnitude are not pivots.
    pub pivot_tol: f64,
    /// Reduced costs must be below `-opt_tol` to enter.
    pub opt_tol: f64,
    pub max_iterations: usize,
    /// Recompute `B⁻¹` from scratch after this many pivots.
    pub refactor_every: usize,
    /// Switch from Dantzig to Bland pricing after this many consecutive
    /// degenerate pivots.
    pub bland_after: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            pivot_tol: 1e-10,
            opt_tol: 1e-11,
            max_iterations: 200_000,
            refactor_every: 64,
            bland_after: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SimplexStats {
    pub pivots: usize,
    pub degenerate_pivots: usize,
    pub bland_pivots: usize,
    pub refactorizations: usize,
}

type SparseColumn<T> = Vec<(usize, T)>;

#[derive(Debug, Clone)]
pub struct Simplex<T> {
    m: usize,
    b: Vec<T>,
    columns: Vec<SparseColumn<T>>,
    costs: Vec<T>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Matrix<T>,
    x_b: Vec<T>,
    feasible: bool,
    since_refactor: usize,
    opts: SimplexOptions,
    stats: SimplexStats,
}

impl<T: Scalar> Simplex<T> {
    pub fn new(b: Vec<T>, opts: SimplexOptions) -> Self {
        let m = b.len();
        let mut columns = Vec::with_capacity(m);
        let mut binv = Matrix::zeros(m, m);
        for (i, bi) in b.iter().enumerate() {
            let s = if bi.is_negative() { -T::one() } else { T::one() };
            binv[(i, i)] = s.clone();
            columns.push(vec![(i, s)]);
        }
        Simplex {
            m,
            x_b: b.iter().map(|v| v.abs()).collect(),
            b,
            columns,
            costs: vec![T::zero(); m],
            basis: (0..m).collect(),
            is_basic: vec![true; m],
            binv,
            feasible: false,
            since_refactor: 0,
            opts,
            stats: SimplexStats::default(),
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    /// Number of structural (non-artificial) columns.
    pub fn num_columns(&self) -> usize {
        self.columns.len() - self.m
    }

    pub fn stats(&self) -> SimplexStats {
        self.stats
    }

    /// Appends a structural column given by its nonzero entries; returns
    /// its structural index.
    pub fn add_column(&mut self, entries: Vec<(usize, T)>, cost: T) -> usize {
        debug_assert!(entries.iter().all(|(i, _)| *i < self.m));
        self.columns.push(entries);
        self.costs.push(cost);
        self.is_basic.push(false);
        self.num_columns() - 1
    }

    fn cost(&self, j: usize, phase1: bool) -> T {
        match (phase1, j < self.m) {
            (true, true) => T::one(),
            (true, false) | (false, true) => T::zero(),
            (false, false) => self.costs[j].clone(),
        }
    }

    /// `c_Bᵀ B⁻¹`
    fn prices(&self, phase1: bool) -> Vec<T> {
        let mut y = vec![T::zero(); self.m];
        for (k, &bk) in self.basis.iter().enumerate() {
            let c = self.cost(bk, phase1);
            if c.is_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = yi.clone() + c.clone() * self.binv[(k, i)].clone();
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, y: &[T], phase1: bool) -> T {
        self.columns[j]
            .iter()
            .fold(self.cost(j, phase1), |acc, (i, a)| acc - y[*i].clone() * a.clone())
    }

    /// `B⁻¹ a_j`
    fn ftran(&self, j: usize) -> Vec<T> {
        let mut d = vec![T::zero(); self.m];
        for (i, a) in &self.columns[j] {
            for (k, dk) in d.iter_mut().enumerate() {
                let v = &self.binv[(k, *i)];
                if !v.is_zero() {
                    *dk = dk.clone() + v.clone() * a.clone();
                }
            }
        }
        d
    }

    fn refactor(&mut self) -> Result<()> {
        let mut bm = Matrix::zeros(self.m, self.m);
        for (k, &j) in self.basis.iter().enumerate() {
            for (i, a) in &self.columns[j] {
                bm[(*i, k)] = a.clone();
            }
        }
        let inv = bm
            .inverse(1e-13)
            .ok_or_else(|| Error::Solver("basis matrix became singular".into()))?;
        self.x_b = inv
            .mul_vec(&self.b)
            .into_iter()
            .map(|v| if v.is_negative() && v.near_zero(self.opts.pivot_tol) { T::zero() } else { v })
            .collect();
        self.binv = inv;
        self.since_refactor = 0;
        self.stats.refactorizations += 1;
        Ok(())
    }

    fn pivot(&mut self, r: usize, q: usize, d: &[T]) -> Result<()> {
        let theta = self.x_b[r].clone() / d[r].clone();
        for i in 0..self.m {
            if i != r && !d[i].is_zero() {
                let v = self.x_b[i].clone() - theta.clone() * d[i].clone();
                self.x_b[i] = if v.is_negative() && v.near_zero(self.opts.pivot_tol) { T::zero() } else { v };
            }
        }
        self.x_b[r] = theta;
        let inv_p = T::one() / d[r].clone();
        for c in 0..self.m {
            let v = self.binv[(r, c)].clone() * inv_p.clone();
            self.binv[(r, c)] = v;
        }
        for i in 0..self.m {
            if i == r || d[i].is_zero() {
                continue;
            }
            let factor = d[i].clone();
            for c in 0..self.m {
                let pr = self.binv[(r, c)].clone();
                if !pr.is_zero() {
                    let v = self.binv[(i, c)].clone() - factor.clone() * pr;
                    self.binv[(i, c)] = v;
                }
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
        self.stats.pivots += 1;
        self.since_refactor += 1;
        if self.since_refactor >= self.opts.refactor_every {
            self.refactor()?;
        }
        Ok(())
    }

    /// Lexicographic minimum-ratio test: ties in `x_B[i] / d[i]` are broken
    /// by comparing the rows of `B⁻¹` scaled by `1 / d[i]`, which is the
    /// exact form of perturbing `b` and prevents cycling under any pricing.
    fn ratio_test(&self, d: &[T], phase1: bool) -> Option<(usize, T)> {
        let ptol = self.opts.pivot_tol;
        let mut leave: Option<(usize, T)> = None;
        for i in 0..self.m {
            let ratio = if !phase1 && self.basis[i] < self.m && !d[i].near_zero(ptol) {
                // artificial kept at zero: leaves immediately
                T::zero()
            } else if d[i].is_positive() && !d[i].near_zero(ptol) {
                self.x_b[i].clone() / d[i].clone()
            } else {
                continue;
            };
            let better = match &leave {
                None => true,
                Some((r, best)) => {
                    let diff = ratio.clone() - best.clone();
                    if !diff.near_zero(ptol * 1e-2) {
                        diff.is_negative()
                    } else {
                        self.lex_less(i, d, *r)
                    }
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        leave
    }

    /// Whether row `i` of `B⁻¹ / d_i` is lexicographically smaller than row
    /// `r` of `B⁻¹ / d_r`; exact ties fall back to the smaller basic index.
    fn lex_less(&self, i: usize, d: &[T], r: usize) -> bool {
        let (di, dr) = (d[i].clone(), d[r].clone());
        for c in 0..self.m {
            let a = self.binv[(i, c)].clone() / di.clone();
            let b = self.binv[(r, c)].clone() / dr.clone();
            let diff = a - b;
            if !diff.near_zero(self.opts.pivot_tol) {
                return diff.is_negative();
            }
        }
        self.basis[i] < self.basis[r]
    }

    /// Pivots zero-level artificials out of the basis wherever a structural
    /// column has a usable entry in their row. The step length is zero, so
    /// the primal point does not move.
    fn drive_out_artificials(&mut self) -> Result<()> {
        for r in 0..self.m {
            if self.basis[r] >= self.m || !self.x_b[r].near_zero(self.opts.pivot_tol) {
                continue;
            }
            let mut best: Option<(usize, T)> = None;
            for j in self.m..self.columns.len() {
                if self.is_basic[j] {
                    continue;
                }
                let alpha = self.columns[j]
                    .iter()
                    .fold(T::zero(), |acc, (i, a)| acc + self.binv[(r, *i)].clone() * a.clone());
                if alpha.near_zero(1e-7) {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| alpha.abs() > b.abs()) {
                    best = Some((j, alpha));
                }
            }
            if let Some((j, _)) = best {
                let d = self.ftran(j);
                self.x_b[r] = T::zero();
                self.pivot(r, j, &d)?;
            }
        }
        Ok(())
    }

    fn run(&mut self, phase1: bool) -> Result<Status> {
        let tol = self.opts.opt_tol;
        let ptol = self.opts.pivot_tol;
        let mut degenerate_run = 0;
        loop {
            if self.stats.pivots >= self.opts.max_iterations {
                return Err(Error::Solver(format!(
                    "no convergence after {} pivots",
                    self.stats.pivots
                )));
            }
            let y = self.prices(phase1);
            let bland = degenerate_run >= self.opts.bland_after;
            let start = if phase1 { 0 } else { self.m };
            let mut entering: Option<(usize, T)> = None;
            for j in start..self.columns.len() {
                if self.is_basic[j] {
                    continue;
                }
                let r = self.reduced_cost(j, &y, phase1);
                if !(r.is_negative() && !r.near_zero(tol)) {
                    continue;
                }
                if bland {
                    entering = Some((j, r));
                    break;
                }
                if entering.as_ref().is_none_or(|(_, best)| r < *best) {
                    entering = Some((j, r));
                }
            }
            let Some((q, _)) = entering else {
                return Ok(Status::Optimal);
            };
            let d = self.ftran(q);
            let leave = self.ratio_test(&d, phase1);
            let Some((r, ratio)) = leave else {
                return Ok(Status::Unbounded);
            };
            if ratio.near_zero(ptol) {
                degenerate_run += 1;
                self.stats.degenerate_pivots += 1;
            } else {
                degenerate_run = 0;
            }
            if bland {
                self.stats.bland_pivots += 1;
            }
            self.pivot(r, q, &d)?;
        }
    }

    /// Solves from the current basis. The first call runs phase one.
    pub fn solve(&mut self) -> Result<Status> {
        if !self.feasible {
            if self.run(true)? == Status::Unbounded {
                return Err(Error::Solver("phase one reported unbounded".into()));
            }
            let infeasibility = self
                .basis
                .iter()
                .zip(&self.x_b)
                .filter(|(&j, _)| j < self.m)
                .fold(T::zero(), |acc, (_, v)| acc + v.clone());
            if !infeasibility.near_zero(1e-9) {
                return Ok(Status::Infeasible);
            }
            self.feasible = true;
        }
        self.drive_out_artificials()?;
        self.run(false)
    }

    pub fn objective(&self) -> T {
        self.basis
            .iter()
            .zip(&self.x_b)
            .fold(T::zero(), |acc, (&j, v)| acc + self.cost(j, false) * v.clone())
    }

    /// Row duals `y` with `Aᵀy ≤ c` at optimality.
    pub fn duals(&self) -> Vec<T> {
        self.prices(false)
    }

    /// Values of the structural columns.
    pub fn primal(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.num_columns()];
        for (&j, v) in self.basis.iter().zip(&self.x_b) {
            if j >= self.m {
                x[j - self.m] = v.clone();
            }
        }
        x
    }
}
