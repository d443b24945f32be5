mod common;

use bookram_core::analytic::*;
use bookram_core::Error;
use common::Xs;

#[test]
fn grid_minimum_at_centre() {
    for (k, step) in [(3, 0.01), (4, 0.02)] {
        let g = min_f_grid(k, step).unwrap();
        let floor = 2f64.powi(1 - k as i32);
        assert!(g.value >= floor - 1e-12);
        assert!((g.value - floor).abs() < 1e-12);
        assert!(g.argmin.iter().all(|x| (x - 0.5).abs() <= step));
        // Full minimum equals the smaller of the interior value and the faces.
        assert_eq!(g.value, g.value.min(g.boundary_value));
        assert!(g.boundary_value > floor);
    }
    for k in [2, 5, 6] {
        let g = min_f_grid(k, 0.1).unwrap();
        assert!(g.value >= 2f64.powi(1 - k as i32) - 1e-12);
    }
}

#[test]
fn grid_refuses() {
    assert!(matches!(min_f_grid(6, 0.01), Err(Error::CapExceeded { .. })));
    assert!(min_f_grid(3, 0.2).is_err());
    assert!(min_f_grid(3, 0.0).is_err());
    assert!(min_f_grid(1, 0.1).is_err());
}

#[test]
fn psi_critical_point_by_sign_change() {
    for k in 2..=5usize {
        let target = 2f64.powi(-(k as i32));
        let mut z = 1e-4;
        let mut prev = psi_prime(z, k).unwrap();
        let mut crossings = Vec::new();
        while z + 1e-4 < 1.0 {
            let next = psi_prime(z + 1e-4, k).unwrap();
            if prev.signum() != next.signum() {
                crossings.push(z);
            }
            prev = next;
            z += 1e-4;
        }
        if k >= 3 {
            assert!(crossings.iter().any(|c| (c - target).abs() < 2e-4), "k {k}: {crossings:?}");
        }
        assert!((psi(target, k).unwrap() - 2f64.powi(1 - k as i32)).abs() <= 1e-12);
        // Along the diagonal F equals psi.
        let x = target.powf(1.0 / k as f64);
        assert!((f_value(&vec![x; k]).unwrap() - psi(target, k).unwrap()).abs() < 1e-14);
    }
}

#[test]
fn gradient_against_finite_differences() {
    let mut rng = Xs(12345);
    for i in 0..100 {
        let k = 2 + i % 5;
        let x: Vec<f64> = (0..k).map(|_| 0.01 + 0.98 * rng.unit()).collect();
        let g = grad_f(&x).unwrap();
        for j in 0..k {
            let h = 1e-6;
            let mut lo = x.clone();
            let mut hi = x.clone();
            lo[j] -= h;
            hi[j] += h;
            let fd = (f_value(&hi).unwrap() - f_value(&lo).unwrap()) / (2.0 * h);
            assert!((fd - g[j]).abs() < 1e-6, "{x:?} coord {j}: {fd} vs {}", g[j]);
        }
    }
}

#[test]
fn boundary_critical_values_reproduced() {
    let three = boundary_critical_values(3).unwrap();
    assert_eq!(three.len(), 1);
    assert!((three[0].value - 0.303).abs() <= 0.002);
    let golden = (3.0 - 5f64.sqrt()) / 2.0;
    assert!(three[0].point.iter().all(|x| (x - golden).abs() < 1e-6));
    let four = boundary_critical_values(4).unwrap();
    let g = four.iter().find(|c| c.label == "G").unwrap();
    let h = four.iter().find(|c| c.label == "H").unwrap();
    assert!((g.value - 0.159).abs() <= 0.002);
    assert!((h.value - 0.209).abs() <= 0.002);
    assert!(g.point.iter().all(|x| (x - 0.43).abs() < 0.01));
    assert!(h.point.iter().all(|x| (x - 0.32).abs() < 0.01));
    // Stationary on the face: the free partial derivatives vanish.
    for cv in three.iter().chain(&four) {
        let mut x = cv.point.clone();
        x.resize(cv.k, 1.0);
        let grad = grad_f(&x).unwrap();
        assert!(grad[..cv.point.len()].iter().all(|d| d.abs() < 1e-6), "{cv:?}");
    }
}

#[test]
fn stability_gap() {
    let d3 = delta0_estimate(3, 0.1, 0.005).unwrap();
    assert!(d3.value > 1e-6);
    // Golden value of this grid estimate.
    assert!((d3.value - 0.003_124_666_666_666_664_5).abs() < 1e-12, "{}", d3.value);
    let d2 = delta0_estimate(2, 0.1, 0.005).unwrap();
    assert!(d2.value <= 1e-12);
    // Larger eps0 gives a larger gap, roughly quadratically.
    let mut prev = 0.0;
    for e in [0.05, 0.1, 0.2, 0.3] {
        let d = delta0_estimate(3, e, 0.01).unwrap().value;
        assert!(d > prev);
        let ratio = d / (e * e);
        assert!((0.2..0.5).contains(&ratio), "{e}: {ratio}");
        prev = d;
    }
    assert!(delta0_estimate(3, 0.6, 0.01).is_err());
}

#[test]
fn holder_defect() {
    let mut rng = Xs(99);
    for k in 2..=5usize {
        let lo = (1.0 / k as f64).ln();
        let (y0, y1) = (lo * 0.9, lo * 0.1);
        let m = curvature_bound(Phi::ExpPower(k), y0, y1).unwrap();
        assert!(m > 0.0);
        for _ in 0..100 {
            let pts: Vec<f64> = (0..k).map(|_| y0 + (y1 - y0) * rng.unit()).collect();
            // The bound was computed on [y0, y1] and so is valid on any sub-hull.
            let sub_m = curvature_bound(Phi::ExpPower(k), pts.iter().copied().fold(f64::INFINITY, f64::min), pts.iter().copied().fold(f64::NEG_INFINITY, f64::max)).unwrap();
            let r = holder_defect_check(Phi::ExpPower(k), &pts, m.min(sub_m)).unwrap();
            assert!(r.holds, "{pts:?}: {r:?}");
        }
    }
    let r = holder_defect_check(Phi::Square, &[0.0, 1.0, 2.0, 3.0], 2.0).unwrap();
    assert!(r.holds && (r.lhs - r.rhs).abs() < 1e-12);
    assert!(holder_defect_check(Phi::ExpPower(3), &[-0.5, -0.1], 10.0).is_err());
    assert!(holder_defect_check(Phi::ExpPower(3), &[-1.5, -0.1], 0.01).is_err());
    assert!(holder_defect_check(Phi::ExpPower(3), &[0.1, -0.1], 0.01).is_err());
}

#[test]
fn multiplicative_jensen() {
    for k in 2..=5usize {
        for &z in &[0.5f64.powi(k as i32), 0.3, 0.6, 0.9] {
            if z <= (1.0 / k as f64).powi(k as i32) {
                continue;
            }
            let r = mult_jensen_check(k, z, 500, 17).unwrap();
            assert!(r.holds, "k {k} z {z}: {r:?}");
            assert!(r.accepted > 100, "k {k} z {z}: {r:?}");
            assert_eq!(r, mult_jensen_check(k, z, 500, 17).unwrap());
        }
    }
    assert!(mult_jensen_check(3, 1.0, 10, 0).is_err());
    assert!(mult_jensen_check(1, 0.5, 10, 0).is_err());
}
