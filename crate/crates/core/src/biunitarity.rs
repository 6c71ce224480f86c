//! Verification reports and the rotation form of each structure's
//! biunitarity conditions.
//!
//! Every structure is checked twice in this crate: once through its
//! entrywise defining equations (the `verify_*` functions in
//! [`crate::structures`]) and once here, by rotating the structure into an
//! ordinary matrix and asking whether that matrix is unitary up to a positive
//! scalar `λ`. The vertical conditions are plain unitarity, the horizontal
//! ones carry the scalar: `λ = n` for Hadamard matrices and unitary error
//! bases, `λ = 1` for quantum Latin squares.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{dagger, regroup, scalar_fit, CMatrix, Tolerance, C64};
use crate::structures::QlsGrid;

/// Outcome of a structure check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiunitaryReport {
    pub kind: String,
    pub dimension: usize,
    pub vertical_ok: bool,
    pub horizontal_ok: bool,
    /// Horizontal scalar, present only when the horizontal conditions hold.
    pub lambda: Option<f64>,
    pub worst_residual: f64,
    /// Residual per checked axiom.
    pub detail: BTreeMap<String, f64>,
    /// Set when the input does not even have the right shape.
    pub structural_error: Option<String>,
    /// Offending item positions (controlled families only).
    pub failed_items: Vec<usize>,
}

impl BiunitaryReport {
    pub(crate) fn new(kind: &str, dimension: usize) -> Self {
        Self {
            kind: kind.to_string(),
            dimension,
            vertical_ok: false,
            horizontal_ok: false,
            lambda: None,
            worst_residual: 0.0,
            detail: BTreeMap::new(),
            structural_error: None,
            failed_items: Vec::new(),
        }
    }

    pub(crate) fn structural(kind: &str, message: impl Into<String>) -> Self {
        let mut r = Self::new(kind, 0);
        r.structural_error = Some(message.into());
        r.worst_residual = f64::INFINITY;
        r
    }

    pub(crate) fn record(&mut self, axiom: &str, residual: f64) {
        self.worst_residual = self.worst_residual.max(residual);
        self.detail.insert(axiom.to_string(), residual);
    }

    pub fn passed(&self) -> bool {
        self.structural_error.is_none() && self.vertical_ok && self.horizontal_ok
    }

    /// One-line human summary, e.g. `pass, λ=2`.
    pub fn summary(&self) -> String {
        if let Some(msg) = &self.structural_error {
            return format!("fail (structure: {msg})");
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        let mut s = match self.lambda {
            Some(l) => format!("{verdict}, λ={}", format_scalar(l)),
            None => verdict.to_string(),
        };
        if !self.passed() {
            let failing: Vec<&str> = [("vertical", self.vertical_ok), ("horizontal", self.horizontal_ok)]
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| name)
                .collect();
            s.push_str(&format!(" ({} failed", failing.join(" and ")));
            if !self.failed_items.is_empty() {
                let items: Vec<String> = self.failed_items.iter().map(|i| (i + 1).to_string()).collect();
                s.push_str(&format!(" at item {}", items.join(",")));
            }
            s.push(')');
        }
        s
    }
}

/// Prints integral values without a fractional part.
pub(crate) fn format_scalar(x: f64) -> String {
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-9 * x.abs().max(1.0) {
        format!("{}", rounded as i64)
    } else {
        format!("{x:.12}")
    }
}

/// Fits `A†A ≈ λI` and checks `λ` against `expected`.
fn scalar_law(a: &CMatrix, expected: f64, tol: &Tolerance) -> (bool, Option<f64>, f64) {
    match scalar_fit(a) {
        Some((lambda, residual)) => {
            let ok = residual <= tol.verify_tol * lambda
                && (lambda - expected).abs() <= tol.verify_tol * expected;
            (ok, Some(lambda), residual.max((lambda - expected).abs()))
        }
        None => (false, None, f64::INFINITY),
    }
}

/// Vertical: unimodular entries. Horizontal: `H†H` and `HH†` both `λI` with
/// `λ = n`.
pub fn hadamard_rotation_check(h: &CMatrix, tol: &Tolerance) -> BiunitaryReport {
    const KIND: &str = "hadamard";
    if !h.is_square() || h.rows() == 0 {
        return BiunitaryReport::structural(KIND, format!("expected a non-empty square matrix, got {}x{}", h.rows(), h.cols()));
    }
    let n = h.rows();
    let mut report = BiunitaryReport::new(KIND, n);
    let modulus = h.as_slice().iter().map(|z| (z.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
    report.record("unimodular", modulus);
    report.vertical_ok = modulus <= tol.verify_tol;

    let (cols_ok, _, cols_res) = scalar_law(h, n as f64, tol);
    let (rows_ok, rows_lambda, rows_res) = scalar_law(&dagger(h), n as f64, tol);
    report.record("columns_scaled_unitary", cols_res);
    report.record("rows_scaled_unitary", rows_res);
    report.horizontal_ok = cols_ok && rows_ok;
    if report.horizontal_ok {
        report.lambda = rows_lambda;
    }
    report
}

/// Vertical: each row `{Q_{a,b} | b}`, stacked as matrix columns, is a
/// unitary. Horizontal: the same for each column `{Q_{a,b} | a}`, giving
/// `λ = 1`.
pub fn qls_rotation_check(grid: &QlsGrid, tol: &Tolerance) -> BiunitaryReport {
    const KIND: &str = "qls";
    let n = match crate::structures::qls_grid_dimension(grid) {
        Ok(n) => n,
        Err(msg) => return BiunitaryReport::structural(KIND, msg),
    };
    let mut report = BiunitaryReport::new(KIND, n);

    let mut vertical_ok = true;
    let mut row_res: f64 = 0.0;
    for a in 0..n {
        let m = CMatrix::from_fn(n, n, |i, b| grid[a][b][i]);
        let (ok, _, res) = scalar_law(&m, 1.0, tol);
        vertical_ok &= ok;
        row_res = row_res.max(res);
    }
    report.record("rows_orthonormal", row_res);
    report.vertical_ok = vertical_ok;

    let mut horizontal_ok = true;
    let mut col_res: f64 = 0.0;
    let mut lambda_sum = 0.0;
    for b in 0..n {
        let m = CMatrix::from_fn(n, n, |i, a| grid[a][b][i]);
        let (ok, lambda, res) = scalar_law(&m, 1.0, tol);
        horizontal_ok &= ok;
        col_res = col_res.max(res);
        lambda_sum += lambda.unwrap_or(0.0);
    }
    report.record("columns_orthonormal", col_res);
    report.horizontal_ok = horizontal_ok;
    if horizontal_ok {
        report.lambda = Some(lambda_sum / n as f64);
    }
    report
}

/// Vertical: every element unitary. Horizontal: the `n²×n²` matrix whose
/// row `a` is the flattened element `U_a` is `√n` times a unitary, so
/// `λ = n`.
pub fn ueb_rotation_check(elements: &[CMatrix], tol: &Tolerance) -> BiunitaryReport {
    const KIND: &str = "ueb";
    let n = match crate::structures::ueb_dimension(elements) {
        Ok(n) => n,
        Err(msg) => return BiunitaryReport::structural(KIND, msg),
    };
    let mut report = BiunitaryReport::new(KIND, n);

    let mut vertical_ok = true;
    let mut unit_res: f64 = 0.0;
    for u in elements {
        let (ok_a, _, res_a) = scalar_law(u, 1.0, tol);
        let (ok_b, _, res_b) = scalar_law(&dagger(u), 1.0, tol);
        vertical_ok &= ok_a && ok_b;
        unit_res = unit_res.max(res_a).max(res_b);
    }
    report.record("elements_unitary", unit_res);
    report.vertical_ok = vertical_ok;

    // Stack the elements as an (n²·n)×n block column, then view the
    // (a, i, j) tensor as an n²×n² matrix.
    let stacked: Vec<C64> = elements.iter().flat_map(|u| u.as_slice().iter().copied()).collect();
    let stacked = CMatrix::new(n * n * n, n, stacked).expect("element shapes checked");
    let rotated = regroup(&stacked, &[n * n, n, n], &[0, 1, 2], (n * n, n * n)).expect("consistent axes");

    let (ok_cols, _, res_cols) = scalar_law(&rotated, n as f64, tol);
    let (ok_rows, lambda, res_rows) = scalar_law(&dagger(&rotated), n as f64, tol);
    report.record("rotation_columns_scaled_unitary", res_cols);
    report.record("rotation_rows_scaled_unitary", res_rows);
    report.horizontal_ok = ok_cols && ok_rows;
    if report.horizontal_ok {
        report.lambda = lambda;
    }
    report
}
