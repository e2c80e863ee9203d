//! Scalar error tables for the three quadrature families over `λ ≥ 10`.

use fracpow_core::rates::fit_slope;
use fracpow_core::{
    dyadic_gauss_scheme, exponential_scheme, rectangle_scheme, sup_error, Beta, MChoice,
};

const BETAS: [f64; 3] = [0.5, 0.75, 0.25];

fn beta(v: f64) -> Beta {
    Beta::new(v).unwrap()
}

#[test]
fn rectangle_table() {
    let ns = [31usize, 63, 127, 255, 511, 1023];
    let published = [
        [2.86e-3, 1.60e-4, 7.77e-3],
        [1.40e-3, 5.51e-5, 3.82e-3],
        [6.98e-4, 1.93e-5, 1.89e-3],
        [3.45e-4, 6.75e-6, 9.45e-4],
        [1.73e-4, 2.39e-6, 4.71e-4],
        [8.66e-5, 8.38e-7, 2.35e-4],
    ];
    for (col, &b) in BETAS.iter().enumerate() {
        let mut errs = Vec::new();
        for (row, &n) in ns.iter().enumerate() {
            let s = rectangle_scheme(beta(b), n).unwrap();
            let e = sup_error(&s, 10.0).unwrap().sup_error;
            let want = published[row][col];
            println!("rect beta={b} N={n}: {e:.3e} (published {want:.2e})");
            assert!((e - want).abs() <= 0.25 * want);
            errs.push(e);
        }
        let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        let y: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
        let order = fit_slope(&x, &y);
        let limit = if b == 0.75 { -1.4 } else { -0.95 };
        assert!(order <= limit, "beta {b}: order {order}");
    }
}

#[test]
fn gauss_table() {
    let ns = [2usize, 4, 8, 16];
    let published = [
        [1.37e-3, 8.37e-4, 2.55e-3],
        [8.58e-5, 4.16e-5, 1.58e-4],
        [5.36e-6, 4.22e-6, 1.00e-5],
        [3.35e-7, 2.05e-7, 6.22e-7],
    ];
    for (col, &b) in BETAS.iter().enumerate() {
        let mut errs = Vec::new();
        for (row, &n) in ns.iter().enumerate() {
            let s = dyadic_gauss_scheme(beta(b), n, 2, MChoice::Reported).unwrap();
            let e = sup_error(&s, 10.0).unwrap().sup_error;
            let want = published[row][col];
            println!(
                "gauss beta={b} N={n} nsys={}: {e:.3e} (published {want:.2e})",
                s.nsys()
            );
            assert!(e <= 2.0 * want && e >= want / 2.0);
            errs.push(e);
        }
        let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
        let y: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
        assert!(fit_slope(&x, &y) <= -3.7);
    }
}

#[test]
fn exponential_table() {
    let ks = [1.0, 0.5, 1.0 / 3.0, 0.25];
    let published = [
        [2.71e-3, 7.62e-4, 4.77e-3],
        [2.45e-5, 9.15e-6, 3.65e-5],
        [1.80e-7, 1.01e-7, 3.06e-7],
        [1.63e-9, 8.01e-10, 2.29e-9],
    ];
    let nsys = [[11, 15, 15], [41, 55, 55], [91, 120, 120], [159, 212, 212]];
    for (col, &b) in BETAS.iter().enumerate() {
        let mut errs = Vec::new();
        for (row, &k) in ks.iter().enumerate() {
            let s = exponential_scheme(beta(b), k, true).unwrap();
            assert_eq!(s.nsys(), nsys[row][col]);
            let e = sup_error(&s, 10.0).unwrap().sup_error;
            let want = published[row][col];
            println!("exp beta={b} k={k:.4}: {e:.3e} (published {want:.2e})");
            assert!(e <= 2.0 * want && e >= want / 2.0);
            errs.push(e);
        }
        let x: Vec<f64> = ks.iter().map(|k| 1.0 / k).collect();
        let y: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
        let slope = fit_slope(&x, &y);
        let target = -std::f64::consts::PI.powi(2) / 2.0;
        assert!(
            (slope - target).abs() <= 0.15 * target.abs(),
            "slope {slope}"
        );
    }
}
