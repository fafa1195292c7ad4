use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use seplinf::candidate::{build_candidate_set, eval_auxiliary, AuxiliaryId, OptimizerConfig};
use seplinf::function::{builtin, FunctionSource};
use seplinf::{formula_error, Point3};

fn random_point_for(id: AuxiliaryId, rng: &mut impl Rng) -> Point3 {
    let mut c = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
    if let Some(face) = id.face() {
        c[face.axis.index()] = face.value;
    }
    Point3::from_coords(c)
}

fn audit(f: &FunctionSource, seed: u64) {
    let u = build_candidate_set(f, &OptimizerConfig::default());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (k, id) in AuxiliaryId::ALL.into_iter().enumerate() {
        let (best, at) = if k < 8 { (u.g_max[k], u.m[k]) } else { (u.h_max[k - 8], u.f[k - 8]) };
        let v = eval_auxiliary(id, f, &at).unwrap();
        assert!((v - best).abs() <= 1e-7, "{}: stored {best}, recomputed {v}", id.name());
        for _ in 0..10_000 {
            let p = random_point_for(id, &mut rng);
            let w = eval_auxiliary(id, f, &p).unwrap();
            assert!(w <= best + 1e-9, "{} at {p}: {w} > {best}", id.name());
        }
    }
}

#[test]
fn maximizers_dominate_random_points() {
    for (i, (name, params)) in [
        ("remark41_piecewise", None),
        ("bilinear_sum", None),
        ("product_xyz", None),
        ("mixed_products", Some("cxy=1,pxy=2,qxy=0.5,cyz=0.7,pyz=1,qyz=3,cxz=1.3,pxz=1.5,qxz=1.5,sx=0.3,fz=1.1")),
    ]
    .into_iter()
    .enumerate()
    {
        audit(&builtin(name, params).unwrap(), 1000 + i as u64);
    }
}

#[test]
fn remark41_maxima_match_dense_scan() {
    let f = builtin("remark41_piecewise", None).unwrap();
    let u = build_candidate_set(&f, &OptimizerConfig::default());
    let n = 201;
    let t = |i: usize| i as f64 / (n - 1) as f64;
    for (k, id) in AuxiliaryId::ALL.into_iter().enumerate() {
        let scan = match id.face() {
            None => (0..n * n * n)
                .into_par_iter()
                .map(|i| eval_auxiliary(id, &f, &Point3::raw(t(i / (n * n)), t(i / n % n), t(i % n))).unwrap())
                .reduce(|| f64::NEG_INFINITY, f64::max),
            Some(face) => (0..n * n)
                .into_par_iter()
                .map(|i| {
                    let mut c = [0.0; 3];
                    let free: Vec<usize> = (0..3).filter(|&a| a != face.axis.index()).collect();
                    c[face.axis.index()] = face.value;
                    c[free[0]] = t(i / n);
                    c[free[1]] = t(i % n);
                    eval_auxiliary(id, &f, &Point3::from_coords(c)).unwrap()
                })
                .reduce(|| f64::NEG_INFINITY, f64::max),
        };
        let found = if k < 8 { u.g_max[k] } else { u.h_max[k - 8] };
        assert!((found - scan).abs() <= 1e-4, "{}: {found} vs scan {scan}", id.name());
    }
}

#[test]
fn remark41_error_is_five_thirty_seconds() {
    let f = builtin("remark41_piecewise", None).unwrap();
    let r = formula_error(&f, &OptimizerConfig::default()).unwrap();
    assert!((r.error() - 5.0 / 32.0).abs() <= 1e-9, "{}", r.error());
    assert_eq!(r.best_entry(), "5.2");
    let u = &r.candidates;
    assert_eq!(u.m[4], Point3::raw(0.5, 0.0, 0.5));
    assert_eq!(u.m[5], Point3::raw(0.5, 0.0, 0.5));
    assert!((r.evaluation.get("2.11").unwrap().ratio - 7.0 / 48.0).abs() <= 1e-9);
}

#[test]
fn candidate_set_is_deterministic_across_thread_counts() {
    let f = builtin("mixed_products", Some("cxy=1,pxy=1.5,cyz=2,pyz=1,qyz=2,cxz=0.4,sy=0.2")).unwrap();
    let cfg = OptimizerConfig::default();
    let a = build_candidate_set(&f, &cfg);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| build_candidate_set(&f, &cfg));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
