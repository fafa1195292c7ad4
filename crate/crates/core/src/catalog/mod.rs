//! The catalog of minimal projection-cycle families anchored at `T_1` and
//! `T_8`.
//!
//! An entry lists integer weights on corners `T_j`, maximizers `M_i` and
//! face maximizers `F_k`. Only the positive points and the corner weights
//! are stored; each `M_i` (or `F_k`) of weight `w` also places `−w` at each
//! of its edge projections, which is what makes every plane sum vanish.
//!
//! In the 6 × 22 face-incidence matrix of the symbolic configuration
//! (rows `x=0, x=1, y=0, y=1, z=0, z=1`; columns `T_1, T_8, M_1..M_8,
//! T_2..T_7, F_1..F_6`) each entry is a circuit through the first two
//! columns; [`verify_catalog_against_matrix`] regenerates the catalog from
//! that matrix.

mod entries;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::candidate::{AuxiliaryId, CandidateSet, MERGE_TOL};
use crate::cycle::{cycle_to_json, matrix_circuits, CycleVector, WeightedPointSet};
use crate::error::{Error, Result};
use crate::function::FunctionSource;
use crate::linalg::Matrix;
use crate::point::Point3;

/// A column of the symbolic configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    /// Corner `T_j`, `j ∈ 1..=8`.
    T(u8),
    /// Maximizer `M_i` of `g_i`, `i ∈ 1..=8`.
    M(u8),
    /// Face maximizer `F_k` of `h_k`, `k ∈ 1..=6`.
    F(u8),
}

impl Slot {
    /// Column order of the printed matrix.
    pub const COLUMNS: [Slot; 22] = [
        Slot::T(1),
        Slot::T(8),
        Slot::M(1),
        Slot::M(2),
        Slot::M(3),
        Slot::M(4),
        Slot::M(5),
        Slot::M(6),
        Slot::M(7),
        Slot::M(8),
        Slot::T(2),
        Slot::T(3),
        Slot::T(4),
        Slot::T(5),
        Slot::T(6),
        Slot::T(7),
        Slot::F(1),
        Slot::F(2),
        Slot::F(3),
        Slot::F(4),
        Slot::F(5),
        Slot::F(6),
    ];

    pub fn column(self) -> usize {
        Self::COLUMNS.iter().position(|&s| s == self).expect("valid slot")
    }

    fn valid(self) -> bool {
        match self {
            Slot::T(j) | Slot::M(j) => (1..=8).contains(&j),
            Slot::F(k) => (1..=6).contains(&k),
        }
    }

    /// The point of `U` this slot refers to.
    pub fn point(self, u: &CandidateSet) -> Point3 {
        match self {
            Slot::T(j) => u.corner(j as usize),
            Slot::M(i) => u.m[i as usize - 1],
            Slot::F(k) => u.f[k as usize - 1],
        }
    }

    fn auxiliary(self) -> Option<AuxiliaryId> {
        match self {
            Slot::T(_) => None,
            Slot::M(i) => Some(AuxiliaryId::g(i as usize)),
            Slot::F(k) => Some(AuxiliaryId::h(k as usize)),
        }
    }

    /// Weighted points this slot contributes with weight `w`: the point
    /// itself and, for `M`/`F`, `−w` at each edge projection.
    pub fn expand(self, u: &CandidateSet, w: i64) -> Vec<(Point3, i64)> {
        let p = self.point(u);
        let mut out = vec![(p, w)];
        if let Some(id) = self.auxiliary() {
            out.extend(id.projections(&p).into_iter().map(|q| (q, -w)));
        }
        out
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::T(j) => write!(f, "T{j}"),
            Slot::M(i) => write!(f, "M{i}"),
            Slot::F(k) => write!(f, "F{k}"),
        }
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadSpec(format!("bad slot `{s}`"));
        let (kind, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: u8 = idx.parse().map_err(|_| bad())?;
        let slot = match kind {
            "T" => Slot::T(idx),
            "M" => Slot::M(idx),
            "F" => Slot::F(idx),
            _ => return Err(bad()),
        };
        if slot.valid() {
            Ok(slot)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Slot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub terms: Vec<(Slot, i64)>,
}

impl CatalogEntry {
    pub fn group(&self) -> u32 {
        self.id.split('.').next().and_then(|g| g.parse().ok()).unwrap_or(0)
    }

    pub fn weight(&self, slot: Slot) -> i64 {
        self.terms.iter().find(|(s, _)| *s == slot).map_or(0, |(_, w)| *w)
    }

    /// Sign pattern: `T_1, T_8 > 0`, `M, F ≥ 0`, `T_2..T_7 ≤ 0`, and no two
    /// `F`s whose indices differ by an even number.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::Consistency(format!("entry {}: {why}", self.id)));
        let mut seen = Vec::new();
        for &(slot, w) in &self.terms {
            if !slot.valid() {
                return bad(format!("invalid slot {slot}"));
            }
            if seen.contains(&slot) {
                return bad(format!("{slot} listed twice"));
            }
            seen.push(slot);
            let ok = match slot {
                Slot::T(1) | Slot::T(8) => w > 0,
                Slot::T(_) => w < 0,
                Slot::M(_) | Slot::F(_) => w > 0,
            };
            if !ok {
                return bad(format!("weight {w} on {slot} violates the sign pattern"));
            }
        }
        if self.weight(Slot::T(1)) <= 0 || self.weight(Slot::T(8)) <= 0 {
            return bad("T1 and T8 must be present".into());
        }
        if !f_parity_ok(self.terms.iter().map(|(s, _)| *s)) {
            return bad("two F with indices of equal parity".into());
        }
        Ok(())
    }

    fn weight_map(&self) -> BTreeMap<Slot, i64> {
        self.terms.iter().copied().collect()
    }
}

fn f_parity_ok(slots: impl Iterator<Item = Slot>) -> bool {
    let fs: Vec<u8> = slots.filter_map(|s| if let Slot::F(k) = s { Some(k) } else { None }).collect();
    fs.iter().enumerate().all(|(a, &i)| fs[a + 1..].iter().all(|&j| (i as i32 - j as i32) % 2 != 0))
}

/// The built-in catalog, in listing order.
pub fn catalog() -> Vec<CatalogEntry> {
    entries::ENTRIES
        .iter()
        .map(|(id, terms)| CatalogEntry {
            id: id.to_string(),
            terms: terms.to_vec(),
        })
        .collect()
}

pub fn catalog_to_json(entries: &[CatalogEntry]) -> serde_json::Value {
    serde_json::to_value(entries).expect("catalog serializes")
}

/// Reads a catalog fixture (same JSON shape as [`catalog_to_json`]).
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

/// The cycle of an entry over a concrete candidate set.
///
/// Coincident points are merged and zero weights dropped; a nonzero plane
/// sum afterwards means the projection table or the corner naming is
/// wrong, and is reported as a consistency error.
pub fn instantiate(entry: &CatalogEntry, u: &CandidateSet) -> Result<CycleVector<BigRational>> {
    let terms = entry
        .terms
        .iter()
        .flat_map(|&(slot, w)| slot.expand(u, w))
        .map(|(p, w)| (p, BigRational::from_integer(BigInt::from(w))));
    let set = WeightedPointSet::from_terms(terms).merge_close(MERGE_TOL).strip_zeros(0.0);
    CycleVector::from_set(set).map_err(|e| Error::Consistency(format!("entry {}: {e}", entry.id)))
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub id: String,
    pub ratio: f64,
    #[serde(skip)]
    pub cycle: CycleVector<BigRational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEvaluation {
    pub best_id: String,
    pub best_ratio: f64,
    /// In catalog order.
    pub entries: Vec<EntryResult>,
}

/// Ratios closer than this count as ties; ties go to the earlier entry.
pub const RATIO_TIE_TOL: f64 = 1e-12;

/// Instantiates and scores every entry; the best ratio is the formula value
/// of the approximation error.
pub fn evaluate_catalog(f: &FunctionSource, u: &CandidateSet, entries: &[CatalogEntry]) -> Result<CatalogEvaluation> {
    if entries.is_empty() {
        return Err(Error::Precondition("empty catalog".into()));
    }
    let results: Vec<EntryResult> = entries
        .par_iter()
        .map(|e| {
            let cycle = instantiate(e, u)?;
            Ok(EntryResult {
                id: e.id.clone(),
                ratio: cycle.golomb_ratio(f),
                cycle,
            })
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.ratio > results[best].ratio + RATIO_TIE_TOL {
            best = i;
        }
    }
    Ok(CatalogEvaluation {
        best_id: results[best].id.clone(),
        best_ratio: results[best].ratio,
        entries: results,
    })
}

impl CatalogEvaluation {
    pub fn get(&self, id: &str) -> Option<&EntryResult> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// `[{"id","ratio","points","weights"}]` by descending ratio.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_by(|&a, &b| self.entries[b].ratio.total_cmp(&self.entries[a].ratio));
        let rows = order
            .into_iter()
            .map(|i| {
                let e = &self.entries[i];
                let mut v = cycle_to_json(e.cycle.as_set())?;
                v["id"] = e.id.clone().into();
                v["ratio"] = e.ratio.into();
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::Value::Array(rows))
    }
}

/// The 6 × 22 matrix as printed, rows `x=0, x=1, y=0, y=1, z=0, z=1`.
pub const PRINTED_MATRIX: [[i64; 22]; 6] = [
    [1, 0, -1, -1, 0, 0, -1, -2, -2, -1, 1, 0, 0, 0, 1, 1, -1, 0, -1, 0, 1, -2],
    [0, 1, -1, -1, -2, -2, -1, 0, 0, -1, 0, 1, 1, 1, 0, 0, 0, -1, 0, -1, -2, 1],
    [1, 0, -1, -1, -2, -1, 0, 0, -1, -2, 1, 1, 1, 0, 0, 0, -1, 0, 1, -2, -1, 0],
    [0, 1, -1, -1, 0, -1, -2, -2, -1, 0, 0, 0, 0, 1, 1, 1, 0, -1, -2, 1, 0, -1],
    [1, 0, -1, -1, -1, -2, -2, -1, 0, 0, 0, 0, 1, 1, 1, 0, 1, -2, -1, 0, -1, 0],
    [0, 1, -1, -1, -1, 0, 0, -1, -2, -2, 1, 1, 0, 0, 0, 1, -2, 1, 0, -1, 0, -1],
];

fn printed_matrix() -> Matrix<BigRational> {
    let rows: Vec<&[i64]> = PRINTED_MATRIX.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64_rows(&rows)
}

/// Recomputes the face-incidence matrix from the projection table, using a
/// generic candidate set (interior `M_i`, face-interior `F_k`).
pub fn regenerate_matrix() -> [[i64; 22]; 6] {
    let m: [Point3; 8] = std::array::from_fn(|i| {
        let s = 0.1 + 0.1 * i as f64;
        Point3::raw(s, 0.95 - s, 0.5 + 0.03 * i as f64)
    });
    let f: [Point3; 6] = std::array::from_fn(|k| {
        let face = AuxiliaryId::h(k + 1).face().expect("h has a face");
        Point3::raw(0.21 + 0.07 * k as f64, 0.33 + 0.05 * k as f64, 0.47 + 0.03 * k as f64).with(face.axis, face.value)
    });
    let u = CandidateSet::from_points(m, f, [0.0; 8], [0.0; 6]).expect("generic candidate set");
    let mut out = [[0i64; 22]; 6];
    for (c, slot) in Slot::COLUMNS.iter().enumerate() {
        for (p, w) in slot.expand(&u, 1) {
            for (a, coord) in p.coords().iter().enumerate() {
                if *coord == 0.0 {
                    out[2 * a][c] += w;
                } else if *coord == 1.0 {
                    out[2 * a + 1][c] += w;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    /// Catalog entry involved, if any.
    pub id: Option<String>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub circuit_count: usize,
    pub catalog_size: usize,
    pub rank: usize,
    pub echelon_zero_rows: usize,
    /// The printed matrix agrees with the projection table.
    pub matrix_matches_projection_rules: bool,
    pub matched: usize,
    pub mismatches: Vec<Mismatch>,
}

impl MatrixReport {
    pub fn ok(&self) -> bool {
        self.matrix_matches_projection_rules
            && self.mismatches.is_empty()
            && self.matched == self.circuit_count
            && self.catalog_size == self.circuit_count
    }
}

/// Enumerates the circuits of the printed matrix through `T_1` and `T_8`
/// that obey the catalog sign pattern, and compares them with `entries`.
pub fn verify_catalog_against_matrix(entries: &[CatalogEntry]) -> Result<MatrixReport> {
    let a = printed_matrix();
    let rank = a.rank(0.0);
    let circuits = matrix_circuits(&a, 6, &[0, 1])?;
    let mut found: Vec<BTreeMap<Slot, i64>> = Vec::new();
    for (cols, v) in circuits {
        let map: BTreeMap<Slot, i64> = cols
            .iter()
            .zip(&v)
            .map(|(&c, w)| (Slot::COLUMNS[c], w.to_i64().expect("small weight")))
            .collect();
        let signs_ok = map.iter().all(|(&slot, &w)| match slot {
            Slot::T(1) | Slot::T(8) | Slot::M(_) | Slot::F(_) => w > 0,
            Slot::T(_) => w < 0,
        });
        if signs_ok && f_parity_ok(map.keys().copied()) {
            found.push(map);
        }
    }
    let mut mismatches = Vec::new();
    let mut matched = 0;
    let mut used = vec![false; found.len()];
    for e in entries {
        if let Err(err) = e.validate() {
            mismatches.push(Mismatch {
                id: Some(e.id.clone()),
                reason: err.to_string(),
            });
            continue;
        }
        let want = e.weight_map();
        let same_support = found
            .iter()
            .position(|c| c.keys().eq(want.keys()));
        match same_support {
            Some(i) if found[i] == want => {
                if used[i] {
                    mismatches.push(Mismatch {
                        id: Some(e.id.clone()),
                        reason: "duplicate of an earlier entry".into(),
                    });
                } else {
                    used[i] = true;
                    matched += 1;
                }
            }
            Some(i) => mismatches.push(Mismatch {
                id: Some(e.id.clone()),
                reason: format!("weights differ: catalog {}, matrix {}", describe(&want), describe(&found[i])),
            }),
            None => mismatches.push(Mismatch {
                id: Some(e.id.clone()),
                reason: format!("{} is not an admissible circuit", describe(&want)),
            }),
        }
    }
    for (c, u) in found.iter().zip(&used) {
        if !u {
            mismatches.push(Mismatch {
                id: None,
                reason: format!("circuit {} is missing from the catalog", describe(c)),
            });
        }
    }
    Ok(MatrixReport {
        circuit_count: found.len(),
        catalog_size: entries.len(),
        rank,
        echelon_zero_rows: a.rows() - rank,
        matrix_matches_projection_rules: regenerate_matrix() == PRINTED_MATRIX,
        matched,
        mismatches,
    })
}

fn describe(m: &BTreeMap<Slot, i64>) -> String {
    let parts: Vec<String> = Slot::COLUMNS
        .iter()
        .filter_map(|s| m.get(s).map(|w| format!("{s}:{w}")))
        .collect();
    format!("[{}]", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidate::{build_candidate_set, OptimizerConfig, CORNERS};
    use crate::function::builtin;

    fn generic_u() -> CandidateSet {
        let m: [Point3; 8] = std::array::from_fn(|i| Point3::raw(0.11 + 0.1 * i as f64, 0.23 + 0.07 * i as f64, 0.37 + 0.05 * i as f64));
        let f: [Point3; 6] = std::array::from_fn(|k| {
            let face = AuxiliaryId::h(k + 1).face().unwrap();
            Point3::raw(0.13 + 0.1 * k as f64, 0.29 + 0.1 * k as f64, 0.41 + 0.08 * k as f64).with(face.axis, face.value)
        });
        CandidateSet::from_points(m, f, [0.0; 8], [0.0; 6]).unwrap()
    }

    #[test]
    fn catalog_shape() {
        let c = catalog();
        assert_eq!(c.len(), 123);
        for e in &c {
            e.validate().unwrap();
        }
        let e411 = c.iter().find(|e| e.id == "4.1").unwrap();
        assert_eq!(
            e411.terms,
            vec![(Slot::T(1), 3), (Slot::T(8), 3), (Slot::M(3), 1), (Slot::M(5), 1), (Slot::M(7), 1)]
        );
    }

    #[test]
    fn printed_matrix_matches_projection_rules() {
        assert_eq!(regenerate_matrix(), PRINTED_MATRIX);
        assert_eq!(printed_matrix().rank(0.0), 4);
    }

    #[test]
    fn entry_11_instantiates_to_four_corners() {
        let c = catalog();
        let cyc = instantiate(&c[0], &generic_u()).unwrap();
        assert_eq!(cyc.len(), 4);
        assert_eq!(cyc.points(), &[CORNERS[0], CORNERS[7], CORNERS[1], CORNERS[4]]);
    }

    #[test]
    fn entry_23_generic() {
        let u = generic_u();
        let e = catalog().into_iter().find(|e| e.id == "2.3").unwrap();
        let cyc = instantiate(&e, &u).unwrap();
        assert_eq!(cyc.len(), 8);
        let m3 = u.m[2];
        let w = |p: Point3| cyc.weight_at(&p).unwrap().to_integer().to_i64().unwrap();
        assert_eq!(w(CORNERS[0]), 3);
        assert_eq!(w(CORNERS[7]), 2);
        assert_eq!(w(m3), 1);
        assert_eq!(w(CORNERS[1]), -1);
        assert_eq!(w(CORNERS[5]), -2);
        assert_eq!(w(Point3::raw(m3.x, 0., 1.)), -1);
        assert_eq!(w(Point3::raw(1., 0., m3.z)), -1);
        assert_eq!(w(Point3::raw(1., m3.y, 0.)), -1);
    }

    #[test]
    fn all_entries_are_minimal_and_structured_on_generic_u() {
        let u = generic_u();
        for e in catalog() {
            let cyc = instantiate(&e, &u).unwrap();
            assert!(cyc.is_minimal(), "{}", e.id);
            assert!(cyc.weights().iter().all(|w| w.is_integer()));
        }
    }

    #[test]
    fn golden_values() {
        let cfg = OptimizerConfig::default();
        for (name, want, id) in [("product_xz", 0.25, "1.1"), ("product_xyz", 1.0 / 3.0, "1.5")] {
            let f = builtin(name, None).unwrap();
            let u = build_candidate_set(&f, &cfg);
            let ev = evaluate_catalog(&f, &u, &catalog()).unwrap();
            assert!((ev.best_ratio - want).abs() < 1e-12, "{name}: {}", ev.best_ratio);
            assert_eq!(ev.best_id, id);
        }
    }

    #[test]
    fn matrix_verification() {
        let r = verify_catalog_against_matrix(&catalog()).unwrap();
        assert_eq!(r.circuit_count, 123);
        assert_eq!(r.rank, 4);
        assert_eq!(r.echelon_zero_rows, 2);
        assert!(r.ok(), "{:?}", r.mismatches);
        let mut bad = catalog();
        bad[40].terms[0].1 += 1;
        let r = verify_catalog_against_matrix(&bad).unwrap();
        assert!(!r.ok());
        assert!(r.mismatches.iter().any(|m| m.id.as_deref() == Some(bad[40].id.as_str())));
    }

    #[test]
    fn slot_parsing() {
        assert_eq!("M5".parse::<Slot>().unwrap(), Slot::M(5));
        assert!("F7".parse::<Slot>().is_err());
        assert!("X1".parse::<Slot>().is_err());
        let json = catalog_to_json(&catalog()[..2]);
        let back: Vec<CatalogEntry> = serde_json::from_value(json).unwrap();
        assert_eq!(back, catalog()[..2].to_vec());
    }
}
