use std::io::Write;

use proptest::prelude::*;
use seplinf::function::{
    builtin, check_delta_conditions, check_source, load_grid, parse_spec, GridData, FunctionSource,
};
use seplinf::{Error, Point3};

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn corner_grid_of_xz_interpolates_exactly() {
    let file = write_temp(
        r#"{"nx":2,"ny":2,"nz":2,"xs":[0,1],"ys":[0,1],"zs":[0,1],
            "values":[0,0,0,0,0,1,0,1]}"#,
    );
    let f = load_grid(file.path()).unwrap();
    assert_eq!(f.evaluate(&Point3::raw(0.5, 0.0, 0.5)).unwrap(), 0.25);
    let spec = format!("grid:{}", file.path().display());
    assert_eq!(parse_spec(&spec).unwrap().evaluate(&Point3::raw(1.0, 0.3, 1.0)).unwrap(), 1.0);
}

#[test]
fn malformed_grid_files() {
    let cases = [
        r#"{"nx":2,"ny":2,"nz":2,"xs":[0,0.9],"ys":[0,1],"zs":[0,1],"values":[0,0,0,0,0,0,0,0]}"#,
        r#"{"nx":2,"ny":2,"nz":2,"xs":[0,1],"ys":[0,1],"zs":[0,1],"values":[0,0,0]}"#,
        r#"{"nx":3,"ny":2,"nz":2,"xs":[0,0.6,0.5,1],"ys":[0,1],"zs":[0,1],"values":[]}"#,
        r#"{"nx":2,"ny":2}"#,
        "not json",
    ];
    for text in cases {
        let file = write_temp(text);
        assert!(load_grid(file.path()).is_err(), "{text}");
    }
    assert!(matches!(load_grid("/nonexistent/grid.json"), Err(Error::Io { .. })));
}

#[test]
fn remark41_satisfies_weak_condition_on_32_grid() {
    let f = builtin("remark41_piecewise", None).unwrap();
    let r = check_delta_conditions(&f, 32, 1e-12).unwrap();
    assert!(r.satisfied_weak);
    // piecewise bilinear: flat in places, so not strict
    assert!(!r.satisfied_strict);
}

#[test]
fn grid_sources_are_checked_on_a_refinement() {
    let f = builtin("product_xy", None).unwrap();
    let g = GridData::sample(&f, vec![0.0, 0.3, 1.0], vec![0.0, 0.7, 1.0], vec![0.0, 1.0]).unwrap();
    let src = FunctionSource::Grid(std::sync::Arc::new(g));
    let r = check_source(&src, 8, None).unwrap();
    assert!(r.satisfied_weak);
    assert_eq!(r.tol, 1e-9);
    let uniform_only = check_delta_conditions(&src, 8, 1e-9).unwrap();
    assert!(r.differences_checked > uniform_only.differences_checked);
}

#[test]
fn affine_wrapper_preserves_condition_for_positive_scale() {
    let f = builtin("bilinear_sum", Some("a=2,b=-1,c=3,d=0.5,e=7")).unwrap();
    assert!(check_delta_conditions(&f, 16, 1e-12).unwrap().satisfied_strict);
    let g = builtin("bilinear_sum", Some("a=-1")).unwrap();
    assert!(!check_delta_conditions(&g, 16, 1e-12).unwrap().satisfied_weak);
}

proptest! {
    #[test]
    fn evaluation_is_pure(x in 0.0f64..=1.0, y in 0.0f64..=1.0, z in 0.0f64..=1.0) {
        let p = Point3::new(x, y, z).unwrap();
        for name in ["product_xyz", "remark41_piecewise", "separable", "bilinear_sum"] {
            let f = builtin(name, None).unwrap();
            prop_assert_eq!(f.evaluate(&p).unwrap().to_bits(), f.evaluate(&p).unwrap().to_bits());
        }
    }

    #[test]
    fn trilinear_reproduces_xz(
        xs in proptest::collection::btree_set(1u32..99, 0..4),
        x in 0.0f64..=1.0, y in 0.0f64..=1.0, z in 0.0f64..=1.0,
    ) {
        let mut axis: Vec<f64> = vec![0.0];
        axis.extend(xs.iter().map(|&v| v as f64 / 100.0));
        axis.push(1.0);
        let f = builtin("product_xz", None).unwrap();
        let g = GridData::sample(&f, axis.clone(), vec![0.0, 1.0], axis).unwrap();
        prop_assert!((g.interpolate(x, y, z) - x * z).abs() < 1e-14);
    }

    #[test]
    fn outside_cube_is_a_domain_error(x in 1.0001f64..5.0) {
        let f = builtin("zero", None).unwrap();
        prop_assert!(matches!(f.evaluate(&Point3::raw(x, 0.5, 0.5)), Err(Error::Domain { .. })), "x={}", x);
        prop_assert!(Point3::new(0.5, -x, 0.5).is_err());
    }
}
