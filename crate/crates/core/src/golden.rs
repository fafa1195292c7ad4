//! Golden-section search for a maximum on an interval.

use num_traits::Float;

/// Maximizes `f` on `[a, b]` until the bracket is shorter than `tol`.
///
/// Returns the best point seen, which includes both endpoints, so a
/// monotone `f` yields the right endpoint exactly. Ties keep the point seen
/// first (`a`, then `b`, then the interior probes).
pub fn golden_max<T: Float>(mut f: impl FnMut(T) -> T, a: T, b: T, tol: T) -> (T, T) {
    let inv_phi = T::from(0.618_033_988_749_894_9).expect("float constant");
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut best = (lo, f(lo));
    let consider = |x: T, fx: T, best: &mut (T, T)| {
        if fx > best.1 {
            *best = (x, fx);
        }
    };
    let fb = f(hi);
    consider(hi, fb, &mut best);
    if hi - lo <= tol {
        return best;
    }
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    consider(x1, f1, &mut best);
    consider(x2, f2, &mut best);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
            consider(x1, f1, &mut best);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
            consider(x2, f2, &mut best);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_maximum() {
        let (x, fx) = golden_max(|x: f64| -(x - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(fx <= 0.0 && fx > -1e-15);
    }

    #[test]
    fn monotone_hits_endpoint() {
        assert_eq!(golden_max(|x: f64| x, 0.0, 1.0, 1e-7), (1.0, 1.0));
        assert_eq!(golden_max(|x: f64| -x, 0.0, 1.0, 1e-7), (0.0, 0.0));
    }

    #[test]
    fn works_in_f32() {
        let (x, _) = golden_max(|x: f32| -(x - 0.25).abs(), 0.0, 1.0, 1e-5);
        assert!((x - 0.25).abs() < 1e-4);
    }
}
