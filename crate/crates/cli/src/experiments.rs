//! The commands behind the binary: scalar error tables, a single fractional
//! solve, the mesh convergence study and the oracle comparison.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use fracpow_core::rates::{aroc, expected_rate, oroc};
use fracpow_core::reference::{checkerboard, SineSeries, DEFAULT_MODES};
use fracpow_core::spectral::DEFAULT_DOF_CAP;
use fracpow_core::{
    apply_frac_inverse, assemble, build_mesh, decompose, dyadic_gauss_scheme, exponential_scheme,
    fem, l2_norm, l2_project, operator_bound, rectangle_scheme, sup_error, ApplyReport, Beta,
    Field, MChoice, NodeExecutor, QuadratureScheme, SchemeKind, SolverConfig, StructuredMesh,
    SupErrorReport,
};

use crate::field_io::load_field;
use crate::output::{write_csv, Cell};

/// Lower end of the `λ` range in the scalar error tables.
pub const TABLE_LAMBDA0: f64 = 10.0;

/// Lower bound for the smallest eigenvalue of the discrete Dirichlet
/// Laplacian on the unit square: conforming Galerkin eigenvalues lie above
/// the continuous ones, the first of which is `2π²`.
pub const LAMBDA_MIN_LOWER: f64 = 2.0 * PI * PI;

/// Which quadrature to build, independent of `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeSpec {
    Rect {
        n: usize,
    },
    Gauss {
        n: usize,
        r: usize,
        m_choice: MChoice,
    },
    Exp {
        k: f64,
        equalize: bool,
    },
}

impl SchemeSpec {
    pub fn build(&self, beta: Beta) -> fracpow_core::Result<QuadratureScheme> {
        match *self {
            SchemeSpec::Rect { n } => rectangle_scheme(beta, n),
            SchemeSpec::Gauss { n, r, m_choice } => dyadic_gauss_scheme(beta, n, r, m_choice),
            SchemeSpec::Exp { k, equalize } => exponential_scheme(beta, k, equalize),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub scheme: SchemeKind,
    pub beta: f64,
    /// `N` or `k`.
    pub param: f64,
    pub sup_error: f64,
    pub nsys: usize,
    pub argmax_lambda: f64,
}

fn table_row(beta: f64, spec: SchemeSpec) -> Result<(TableRow, SupErrorReport)> {
    let scheme = spec.build(Beta::new(beta)?)?;
    let report = sup_error(&scheme, TABLE_LAMBDA0)?;
    Ok((
        TableRow {
            scheme: scheme.kind,
            beta,
            param: scheme.size_param(),
            sup_error: report.sup_error,
            nsys: scheme.nsys(),
            argmax_lambda: report.argmax_lambda,
        },
        report,
    ))
}

fn table(betas: &[f64], specs: &[SchemeSpec]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(betas.len() * specs.len());
    for &b in betas {
        for &spec in specs {
            rows.push(table_row(b, spec)?.0);
        }
    }
    Ok(rows)
}

/// Graded rectangle rule errors.
pub fn table1(betas: &[f64], ns: &[usize]) -> Result<Vec<TableRow>> {
    let specs: Vec<_> = ns.iter().map(|&n| SchemeSpec::Rect { n }).collect();
    table(betas, &specs)
}

/// Dyadic Gauss rule errors.
pub fn table2(betas: &[f64], ns: &[usize], r: usize, m_choice: MChoice) -> Result<Vec<TableRow>> {
    let specs: Vec<_> = ns
        .iter()
        .map(|&n| SchemeSpec::Gauss { n, r, m_choice })
        .collect();
    table(betas, &specs)
}

/// Equalized exponential rule errors.
pub fn table3(betas: &[f64], ks: &[f64]) -> Result<Vec<TableRow>> {
    let specs: Vec<_> = ks
        .iter()
        .map(|&k| SchemeSpec::Exp { k, equalize: true })
        .collect();
    table(betas, &specs)
}

pub fn write_table<W: Write>(out: W, rows: &[TableRow]) -> Result<()> {
    let cells: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            let param = if r.scheme == SchemeKind::Exponential {
                Cell::Float(r.param)
            } else {
                Cell::Int(r.param as u64)
            };
            vec![
                r.scheme.to_string().into(),
                r.beta.into(),
                param,
                r.sup_error.into(),
                r.nsys.into(),
            ]
        })
        .collect();
    write_csv(
        out,
        &["scheme", "beta", "param", "sup_error", "nsys"],
        &cells,
    )?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Checkerboard,
    Zero,
    File(PathBuf),
}

#[derive(Debug)]
pub struct SolveOutput {
    pub mesh: StructuredMesh,
    pub field: Field,
    pub report: ApplyReport,
}

/// `Q_h^β f` on an `n × n` mesh; `f` is the L₂ projection of the
/// checkerboard, zero, or a field read from a file (whose mesh then wins).
pub fn solve<E: NodeExecutor>(
    beta: f64,
    spec: SchemeSpec,
    n: Option<usize>,
    source: &Source,
    config: &SolverConfig,
    exec: &E,
) -> Result<SolveOutput> {
    let beta = Beta::new(beta)?;
    let (mesh, f) = match source {
        Source::File(path) => {
            let (mesh, f) = load_field(path)
                .with_context(|| format!("reading source field {}", path.display()))?;
            if let Some(n) = n {
                ensure!(
                    n == mesh.n,
                    "--mesh {n} does not match the source file (n = {})",
                    mesh.n
                );
            }
            (mesh, f)
        }
        Source::Checkerboard | Source::Zero => {
            let n = n.context("mesh size required")?;
            let mesh = build_mesh(n)?;
            let f = match source {
                Source::Zero => Field::zeros(&mesh),
                _ => {
                    ensure!(
                        n.is_multiple_of(2),
                        "the checkerboard source needs an even mesh size, got {n}"
                    );
                    let pair = assemble(&mesh, 1.0)?;
                    l2_project(&mesh, &pair, checkerboard, config)?
                }
            };
            (mesh, f)
        }
    };
    let pair = assemble(&mesh, 1.0)?;
    let scheme = spec.build(beta)?;
    let start = Instant::now();
    let (field, mut report) = apply_frac_inverse(&mesh, &pair, &scheme, &f, config, exec)?;
    report.wall_time = Some(start.elapsed());
    Ok(SolveOutput {
        mesh,
        field,
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    pub l2_error: f64,
    pub oroc: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub beta: f64,
    /// Step of the equalized exponential rule used for every mesh.
    pub k: f64,
    pub nsys: usize,
    /// Operator quadrature bound for that rule.
    pub quadrature_bound: f64,
    /// Bound on the truncation error of the reference series.
    pub series_tail_bound: f64,
    pub rows: Vec<ConvergenceRow>,
    pub aroc: f64,
    pub expected_rate: f64,
}

/// How far below the predicted finest-mesh error the quadrature bound must lie.
pub const QUADRATURE_MARGIN: f64 = 1e-2;

fn mesh_error<E: NodeExecutor>(
    n: usize,
    scheme: &QuadratureScheme,
    exact: &SineSeries,
    config: &SolverConfig,
    exec: &E,
) -> Result<f64> {
    ensure!(
        n.is_multiple_of(2),
        "convergence meshes must be even, got {n}"
    );
    let mesh = build_mesh(n)?;
    let pair = assemble(&mesh, 1.0)?;
    let f = l2_project(&mesh, &pair, checkerboard, config)?;
    let (u, _) = apply_frac_inverse(&mesh, &pair, scheme, &f, config, exec)?;
    let values = exact.evaluate(&fem::quadrature_points(&mesh));
    Ok(fem::l2_error_with_values(&mesh, &u, &values)?)
}

/// Largest `k = 1/j` whose equalized exponential rule has operator bound at
/// most `target`.
pub fn quadrature_for_target(beta: Beta, target: f64) -> Result<(QuadratureScheme, f64)> {
    for j in 2..=64 {
        let scheme = exponential_scheme(beta, 1.0 / j as f64, true)?;
        let bound = operator_bound(&scheme, 1.0 / LAMBDA_MIN_LOWER)?.value;
        if bound <= target {
            return Ok((scheme, bound));
        }
    }
    bail!("no exponential rule with k ≥ 1/64 reaches the quadrature bound {target:e}")
}

/// L₂ errors of `Q_h^β π_h f` against the sine series solution on each mesh.
///
/// The quadrature is chosen once per `β`: a first pass on the coarsest mesh
/// (with `k = 1/4`) predicts the finest-mesh error through the expected rate,
/// and `k` is then decreased until the quadrature bound is
/// [`QUADRATURE_MARGIN`] times that prediction. `fixed_k` skips the search.
pub fn convergence<E: NodeExecutor>(
    beta: f64,
    meshes: &[usize],
    modes: usize,
    fixed_k: Option<f64>,
    config: &SolverConfig,
    exec: &E,
) -> Result<ConvergenceStudy> {
    ensure!(meshes.len() >= 2, "need at least two meshes");
    ensure!(
        meshes.windows(2).all(|w| w[0] < w[1]),
        "meshes must be ascending"
    );
    let b = Beta::new(beta)?;
    let exact = SineSeries::exact_solution(b, modes)?;
    let h = |n: usize| 2f64.sqrt() / n as f64;

    let (scheme, quadrature_bound) = match fixed_k {
        Some(k) => {
            let s = exponential_scheme(b, k, true)?;
            let bound = operator_bound(&s, 1.0 / LAMBDA_MIN_LOWER)?.value;
            (s, bound)
        }
        None => {
            let probe = exponential_scheme(b, 0.25, true)?;
            let coarse = meshes[0];
            let fine = *meshes.last().expect("nonempty");
            let e0 = mesh_error(coarse, &probe, &exact, config, exec)?;
            let predicted = e0 * (h(fine) / h(coarse)).powf(expected_rate(beta));
            quadrature_for_target(b, QUADRATURE_MARGIN * predicted)?
        }
    };

    let mut errors = Vec::with_capacity(meshes.len());
    for &n in meshes {
        errors.push(mesh_error(n, &scheme, &exact, config, exec)?);
    }
    let hs: Vec<f64> = meshes.iter().map(|&n| h(n)).collect();
    let rates = oroc(&errors, &hs);
    let rows = meshes
        .iter()
        .enumerate()
        .map(|(i, &n)| ConvergenceRow {
            n,
            h: hs[i],
            l2_error: errors[i],
            oroc: i.checked_sub(1).map(|j| rates[j]),
        })
        .collect();
    let k = match scheme.params {
        fracpow_core::quad::SchemeParams::Exponential { k, .. } => k,
        _ => unreachable!("convergence uses the exponential rule"),
    };
    Ok(ConvergenceStudy {
        beta,
        k,
        nsys: scheme.nsys(),
        quadrature_bound,
        series_tail_bound: exact.tail_bound(),
        rows,
        aroc: aroc(&rates),
        expected_rate: expected_rate(beta),
    })
}

pub fn write_convergence<W: Write>(out: W, studies: &[ConvergenceStudy]) -> Result<()> {
    let mut cells = Vec::new();
    for s in studies {
        for r in &s.rows {
            cells.push(vec![
                s.beta.into(),
                r.n.into(),
                r.h.into(),
                r.l2_error.into(),
                r.oroc.into(),
                s.aroc.into(),
                s.expected_rate.into(),
                s.k.into(),
                s.nsys.into(),
            ]);
        }
    }
    write_csv(
        out,
        &[
            "beta",
            "n",
            "h",
            "l2_error",
            "oroc",
            "aroc",
            "expected_rate",
            "k",
            "nsys",
        ],
        &cells,
    )?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub scheme: String,
    pub dofs: usize,
    pub lambda_min: f64,
    /// `‖Q_h^β f − T_h^β f‖_M / ‖f‖_M` for the projected checkerboard.
    pub relative_error: f64,
    /// Operator bound with `μ = 1/λ_min`.
    pub bound: f64,
    /// The bound is a rate only (its constant is unknown).
    pub rate_only: bool,
}

impl OracleCheck {
    pub fn within_bound(&self) -> bool {
        self.rate_only || self.relative_error <= self.bound
    }
}

/// Compares the quadrature operator against the dense eigendecomposition on
/// the projected checkerboard.
pub fn oracle_check<E: NodeExecutor>(
    beta: f64,
    n: usize,
    spec: SchemeSpec,
    config: &SolverConfig,
    exec: &E,
) -> Result<OracleCheck> {
    let b = Beta::new(beta)?;
    ensure!(
        n.is_multiple_of(2),
        "the checkerboard source needs an even mesh size, got {n}"
    );
    let mesh = build_mesh(n)?;
    let pair = assemble(&mesh, 1.0)?;
    let eig = decompose(&pair, DEFAULT_DOF_CAP)?;
    let scheme = spec.build(b)?;
    let f = l2_project(&mesh, &pair, checkerboard, config)?;
    let (q, _) = apply_frac_inverse(&mesh, &pair, &scheme, &f, config, exec)?;
    let exact = eig.apply_power(beta, &f)?;
    let diff = Field {
        n,
        values: q
            .values
            .iter()
            .zip(&exact.values)
            .map(|(a, b)| a - b)
            .collect(),
    };
    let bound = operator_bound(&scheme, 1.0 / eig.lambda_min())?;
    Ok(OracleCheck {
        scheme: scheme.to_string(),
        dofs: mesh.dofs(),
        lambda_min: eig.lambda_min(),
        relative_error: l2_norm(&pair, &diff) / l2_norm(&pair, &f),
        bound: bound.value,
        rate_only: bound.constant_implicit,
    })
}

/// Default sizes of the published sweeps.
pub mod defaults {
    pub const BETAS: [f64; 3] = [0.5, 0.75, 0.25];
    pub const TABLE1_N: [usize; 6] = [31, 63, 127, 255, 511, 1023];
    pub const TABLE2_N: [usize; 4] = [2, 4, 8, 16];
    pub const TABLE3_K: [f64; 4] = [1.0, 0.5, 1.0 / 3.0, 0.25];
    pub const CONVERGENCE_BETAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
    pub const CONVERGENCE_MESHES: [usize; 4] = [8, 16, 32, 64];
    pub const MODES: usize = super::DEFAULT_MODES;
}
