//! Operator-level checks against the dense spectral oracle.

use fracpow_core::spectral::DEFAULT_DOF_CAP;
use fracpow_core::{
    apply_frac_inverse, assemble, build_mesh, decompose, dyadic_gauss_scheme, eval_scheme,
    exponential_scheme, l2_norm, operator_bound, rectangle_scheme, Beta, Field, MChoice,
    QuadratureScheme, Sequential, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn schemes(b: f64) -> Vec<QuadratureScheme> {
    let beta = Beta::new(b).unwrap();
    vec![
        rectangle_scheme(beta, 63).unwrap(),
        dyadic_gauss_scheme(beta, 4, 2, MChoice::PerIntegral).unwrap(),
        exponential_scheme(beta, 1.0 / 3.0, true).unwrap(),
        exponential_scheme(beta, 0.25, false).unwrap(),
    ]
}

fn random_field(n: usize, dofs: usize, rng: &mut ChaCha8Rng) -> Field {
    Field {
        n,
        values: (0..dofs).map(|_| rng.random_range(-1.0..1.0)).collect(),
    }
}

fn sub(a: &Field, b: &Field) -> Field {
    Field {
        n: a.n,
        values: a.values.iter().zip(&b.values).map(|(x, y)| x - y).collect(),
    }
}

#[test]
fn eigenvectors_are_scaled_by_the_scalar_rule() {
    let mesh = build_mesh(8).unwrap();
    let pair = assemble(&mesh, 1.0).unwrap();
    let eig = decompose(&pair, DEFAULT_DOF_CAP).unwrap();
    let cfg = SolverConfig::default();
    for b in [0.3, 0.5, 0.8] {
        for s in schemes(b) {
            for i in [0, 3, 10, 30, 48] {
                let psi = eig.eigenvector(i);
                let (u, _) = apply_frac_inverse(&mesh, &pair, &s, &psi, &cfg, &Sequential).unwrap();
                let q = eval_scheme(&s, eig.eigenvalues[i]).unwrap();
                let want = psi.scaled(q);
                let err = l2_norm(&pair, &sub(&u, &want));
                assert!(err <= 1e-7 * l2_norm(&pair, &want), "{s} mode {i}: {err}");
            }
        }
    }
}

#[test]
fn quadrature_error_within_operator_bounds() {
    let n = 16;
    let mesh = build_mesh(n).unwrap();
    let pair = assemble(&mesh, 1.0).unwrap();
    let eig = decompose(&pair, DEFAULT_DOF_CAP).unwrap();
    let mu = 1.0 / eig.lambda_min();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for b in [0.25, 0.5, 0.75] {
        let beta = Beta::new(b).unwrap();
        for s in [
            rectangle_scheme(beta, 31).unwrap(),
            exponential_scheme(beta, 0.5, true).unwrap(),
        ] {
            let bound = operator_bound(&s, mu).unwrap().value;
            for _ in 0..3 {
                let f = random_field(n, mesh.dofs(), &mut rng);
                let f = f.scaled(1.0 / l2_norm(&pair, &f));
                let (q, _) = apply_frac_inverse(&mesh, &pair, &s, &f, &cfg, &Sequential).unwrap();
                let exact = eig.apply_power(b, &f).unwrap();
                let err = l2_norm(&pair, &sub(&q, &exact));
                assert!(err <= bound, "{s}: {err:e} > {bound:e}");
            }
        }
    }
}

#[test]
fn linear_symmetric_and_positive() {
    let n = 8;
    let mesh = build_mesh(n).unwrap();
    let pair = assemble(&mesh, 1.0).unwrap();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-8 * a.abs().max(b.abs());
    for s in schemes(0.4) {
        let apply = |f: &Field| {
            apply_frac_inverse(&mesh, &pair, &s, f, &cfg, &Sequential)
                .unwrap()
                .0
        };
        let f = random_field(n, mesh.dofs(), &mut rng);
        let g = random_field(n, mesh.dofs(), &mut rng);
        let alpha: f64 = rng.random_range(-3.0..3.0);
        let combo = Field {
            n,
            values: f
                .values
                .iter()
                .zip(&g.values)
                .map(|(a, b)| alpha * a + b)
                .collect(),
        };
        let (af, ag, ac) = (apply(&f), apply(&g), apply(&combo));
        let scale = l2_norm(&pair, &ac);
        for ((c, x), y) in ac.values.iter().zip(&af.values).zip(&ag.values) {
            assert!((c - (alpha * x + y)).abs() <= 1e-8 * scale);
        }
        let fg = pair.mass.bilinear(&af.values, &g.values);
        let gf = pair.mass.bilinear(&f.values, &ag.values);
        assert!(rel(fg, gf), "{fg} vs {gf}");
        assert!(pair.mass.bilinear(&af.values, &f.values) > 0.0);
    }
}

#[test]
fn first_discrete_eigenvalue_near_continuous() {
    let pair = assemble(&build_mesh(32).unwrap(), 1.0).unwrap();
    let eig = decompose(&pair, DEFAULT_DOF_CAP).unwrap();
    assert_eq!(eig.dofs(), 31 * 31);
    let target = 2.0 * std::f64::consts::PI.powi(2);
    assert!((eig.lambda_min() - target).abs() <= 0.01 * target);
}
