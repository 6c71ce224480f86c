//! Hadamard matrices, quantum Latin squares, unitary error bases, controlled
//! families, and their verifiers.
//!
//! The typed wrappers can only be built from data that passes the matching
//! verifier. The verifiers themselves take raw data, so that failing inputs
//! can be diagnosed.

use std::fmt;

use crate::biunitarity::BiunitaryReport;
use crate::error::{Error, Result};
use crate::linalg::{dagger, deviation_from_scalar, gram, inner, root_of_unity, CMatrix, Tolerance, C64, ONE, ZERO};

/// Raw quantum Latin square data: `grid[a][b][i]` is component `i` of the
/// vector in row `a`, column `b`.
pub type QlsGrid = Vec<Vec<Vec<C64>>>;

/// Kind of a base structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Hadamard,
    Qls,
    Ueb,
}

impl BaseKind {
    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Hadamard => "hadamard",
            BaseKind::Qls => "qls",
            BaseKind::Ueb => "ueb",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hadamard" => Some(BaseKind::Hadamard),
            "qls" => Some(BaseKind::Qls),
            "ueb" => Some(BaseKind::Ueb),
            _ => None,
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

/// Checks `|H_ij| = 1`, `Σ_k H_ik conj(H_jk) = n δ_ij` and
/// `Σ_k conj(H_ki) H_kj = n δ_ij`.
pub fn verify_hadamard(h: &CMatrix, tol: &Tolerance) -> BiunitaryReport {
    const KIND: &str = "hadamard";
    if !h.is_square() || h.rows() == 0 {
        return BiunitaryReport::structural(
            KIND,
            format!("expected a non-empty square matrix, got {}x{}", h.rows(), h.cols()),
        );
    }
    let n = h.rows();
    let nf = n as f64;
    let mut report = BiunitaryReport::new(KIND, n);

    let modulus = h.as_slice().iter().map(|z| (z * z.conj() - ONE).norm()).fold(0.0, f64::max);

    let mut rows: f64 = 0.0;
    let mut cols: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { nf } else { 0.0 };
            let r: C64 = (0..n).map(|k| h[(i, k)] * h[(j, k)].conj()).sum();
            let c: C64 = (0..n).map(|k| h[(k, i)].conj() * h[(k, j)]).sum();
            rows = rows.max((r - target).norm());
            cols = cols.max((c - target).norm());
        }
    }
    report.record("unimodular_entries", modulus);
    report.record("rows_orthogonal", rows);
    report.record("columns_orthogonal", cols);
    report.vertical_ok = modulus <= tol.verify_tol;
    report.horizontal_ok = rows <= tol.verify_tol && cols <= tol.verify_tol;
    if report.horizontal_ok {
        report.lambda = Some(nf);
    }
    report
}

/// Dimension of a well-shaped grid, or a description of the defect.
pub(crate) fn qls_grid_dimension(grid: &QlsGrid) -> std::result::Result<usize, String> {
    let n = grid.len();
    if n == 0 {
        return Err("empty grid".into());
    }
    for (a, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(format!("row {} has {} cells, expected {n}", a + 1, row.len()));
        }
        for (b, v) in row.iter().enumerate() {
            if v.len() != n {
                return Err(format!("cell ({},{}) has {} components, expected {n}", a + 1, b + 1, v.len()));
            }
        }
    }
    Ok(n)
}

fn qls_report<'a>(n: usize, cell: impl Fn(usize, usize) -> &'a [C64], tol: &Tolerance) -> BiunitaryReport {
    let mut report = BiunitaryReport::new("qls", n);
    let mut rows: f64 = 0.0;
    let mut cols: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let target = if b == c { ONE } else { ZERO };
                rows = rows.max((inner(cell(a, b), cell(a, c)) - target).norm());
                cols = cols.max((inner(cell(b, a), cell(c, a)) - target).norm());
            }
        }
    }
    report.record("rows_orthonormal", rows);
    report.record("columns_orthonormal", cols);
    report.vertical_ok = rows <= tol.verify_tol;
    report.horizontal_ok = cols <= tol.verify_tol;
    if report.horizontal_ok {
        report.lambda = Some(1.0);
    }
    report
}

/// Checks that each row `{Q_{a,b} | b}` and each column `{Q_{a,b} | a}` is an
/// orthonormal basis.
pub fn verify_qls(grid: &QlsGrid, tol: &Tolerance) -> BiunitaryReport {
    match qls_grid_dimension(grid) {
        Ok(n) => qls_report(n, |a, b| &grid[a][b], tol),
        Err(msg) => BiunitaryReport::structural("qls", msg),
    }
}

/// Dimension of a well-shaped element list, or a description of the defect.
pub(crate) fn ueb_dimension(elements: &[CMatrix]) -> std::result::Result<usize, String> {
    let first = elements.first().ok_or_else(|| "no elements".to_string())?;
    let n = first.rows();
    if n == 0 {
        return Err("zero-dimensional elements".into());
    }
    if let Some((k, u)) = elements.iter().enumerate().find(|(_, u)| u.shape() != (n, n)) {
        return Err(format!("element {} is {}x{}, expected {n}x{n}", k + 1, u.rows(), u.cols()));
    }
    if elements.len() != n * n {
        return Err(format!("{} elements, expected {} for dimension {n}", elements.len(), n * n));
    }
    Ok(n)
}

/// Checks that there are `n²` unitary `n×n` elements with
/// `Tr(U_a†U_b) = n δ_ab`.
pub fn verify_ueb(elements: &[CMatrix], tol: &Tolerance) -> BiunitaryReport {
    const KIND: &str = "ueb";
    let n = match ueb_dimension(elements) {
        Ok(n) => n,
        Err(msg) => return BiunitaryReport::structural(KIND, msg),
    };
    let mut report = BiunitaryReport::new(KIND, n);

    let unitary = elements
        .iter()
        .map(|u| deviation_from_scalar(&gram(u), 1.0).max(deviation_from_scalar(&gram(&dagger(u)), 1.0)))
        .fold(0.0, f64::max);

    let nf = n as f64;
    let mut orth: f64 = 0.0;
    for (a, ua) in elements.iter().enumerate() {
        for (b, ub) in elements.iter().enumerate().skip(a) {
            let target = if a == b { nf } else { 0.0 };
            orth = orth.max((inner(ua.as_slice(), ub.as_slice()) - target).norm());
        }
    }
    report.record("elements_unitary", unitary);
    report.record("trace_orthogonal", orth);
    report.vertical_ok = unitary <= tol.verify_tol;
    report.horizontal_ok = orth <= tol.verify_tol;
    if report.horizontal_ok {
        report.lambda = Some(nf);
    }
    report
}

/// Unvalidated base structure, as read from a file or built by hand.
#[derive(Debug, Clone, PartialEq)]
pub enum Candidate {
    Hadamard(CMatrix),
    Qls(QlsGrid),
    Ueb(Vec<CMatrix>),
}

impl Candidate {
    pub fn kind(&self) -> BaseKind {
        match self {
            Candidate::Hadamard(_) => BaseKind::Hadamard,
            Candidate::Qls(_) => BaseKind::Qls,
            Candidate::Ueb(_) => BaseKind::Ueb,
        }
    }

    /// Nominal dimension (`0` for empty data).
    pub fn dimension(&self) -> usize {
        match self {
            Candidate::Hadamard(m) => m.rows(),
            Candidate::Qls(g) => g.len(),
            Candidate::Ueb(els) => els.first().map_or(0, CMatrix::rows),
        }
    }

    pub fn verify(&self, tol: &Tolerance) -> BiunitaryReport {
        match self {
            Candidate::Hadamard(m) => verify_hadamard(m, tol),
            Candidate::Qls(g) => verify_qls(g, tol),
            Candidate::Ueb(els) => verify_ueb(els, tol),
        }
    }
}

/// Applies the base verifier to every item and aggregates.
pub fn verify_family(control_dims: &[usize], items: &[Candidate], tol: &Tolerance) -> BiunitaryReport {
    const KIND: &str = "controlled";
    let expected: usize = control_dims.iter().product();
    if control_dims.is_empty() || expected == 0 {
        return BiunitaryReport::structural(KIND, format!("invalid control dimensions {control_dims:?}"));
    }
    if items.len() != expected {
        return BiunitaryReport::structural(
            KIND,
            format!("{} items for control dimensions {control_dims:?} ({expected} expected)", items.len()),
        );
    }
    let kind = items[0].kind();
    let dim = items[0].dimension();
    if let Some(k) = items.iter().position(|it| it.kind() != kind || it.dimension() != dim) {
        return BiunitaryReport::structural(
            KIND,
            format!("item {} differs in kind or dimension from item 1", k + 1),
        );
    }

    let mut report = BiunitaryReport::new(KIND, dim);
    report.vertical_ok = true;
    report.horizontal_ok = true;
    let mut lambda = None;
    for (k, item) in items.iter().enumerate() {
        let r = item.verify(tol);
        if let Some(msg) = &r.structural_error {
            report.structural_error = Some(format!("item {}: {msg}", k + 1));
        }
        for (axiom, &res) in &r.detail {
            let entry = report.detail.entry(axiom.clone()).or_insert(0.0);
            *entry = entry.max(res);
        }
        report.worst_residual = report.worst_residual.max(r.worst_residual);
        report.vertical_ok &= r.vertical_ok;
        report.horizontal_ok &= r.horizontal_ok;
        if !r.passed() {
            report.failed_items.push(k);
        }
        lambda = lambda.or(r.lambda);
    }
    if report.horizontal_ok {
        report.lambda = lambda;
    }
    report
}

fn require(report: BiunitaryReport) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::VerificationFailed {
            kind: report.kind.clone(),
            summary: format!("{} (worst residual {:.3e})", report.summary(), report.worst_residual),
        })
    }
}

// ---------------------------------------------------------------------------
// Typed structures
// ---------------------------------------------------------------------------

/// Common surface of the validated base structures.
pub trait Structure: Clone {
    const KIND: BaseKind;

    fn dimension(&self) -> usize;

    fn to_candidate(&self) -> Candidate;

    /// Validates a candidate of the matching kind.
    fn from_candidate(candidate: &Candidate, tol: &Tolerance) -> Result<Self>;
}

fn wrong_kind(expected: BaseKind, got: &Candidate) -> Error {
    Error::InvalidInput(format!("expected a {expected} structure, got {}", got.kind()))
}

/// A complex Hadamard matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardMatrix {
    matrix: CMatrix,
}

impl HadamardMatrix {
    pub fn new(matrix: CMatrix, tol: &Tolerance) -> Result<Self> {
        require(verify_hadamard(&matrix, tol))?;
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    pub fn transpose(&self) -> Self {
        Self::new_unchecked(self.matrix.transpose())
    }
}

impl Structure for HadamardMatrix {
    const KIND: BaseKind = BaseKind::Hadamard;

    fn dimension(&self) -> usize {
        self.n()
    }

    fn to_candidate(&self) -> Candidate {
        Candidate::Hadamard(self.matrix.clone())
    }

    fn from_candidate(candidate: &Candidate, tol: &Tolerance) -> Result<Self> {
        match candidate {
            Candidate::Hadamard(m) => Self::new(m.clone(), tol),
            other => Err(wrong_kind(Self::KIND, other)),
        }
    }
}

/// A quantum Latin square, stored flat with `Q_{a,b,i}` at `(a·n + b)·n + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumLatinSquare {
    n: usize,
    data: Vec<C64>,
}

impl QuantumLatinSquare {
    pub fn from_grid(grid: &QlsGrid, tol: &Tolerance) -> Result<Self> {
        require(verify_qls(grid, tol))?;
        let n = grid.len();
        let data = grid.iter().flat_map(|row| row.iter().flat_map(|v| v.iter().copied())).collect();
        Ok(Self { n, data })
    }

    /// Validates flat data laid out as described on the type.
    pub(crate) fn from_flat(n: usize, data: Vec<C64>, tol: &Tolerance) -> Result<Self> {
        debug_assert_eq!(data.len(), n * n * n);
        let q = Self { n, data };
        require(qls_report(n, |a, b| q.vector(a, b), tol))?;
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Q_{a,b,i} = ⟨i|Q_{a,b}⟩`.
    #[inline]
    pub fn entry(&self, a: usize, b: usize, i: usize) -> C64 {
        self.data[(a * self.n + b) * self.n + i]
    }

    pub fn vector(&self, a: usize, b: usize) -> &[C64] {
        let start = (a * self.n + b) * self.n;
        &self.data[start..start + self.n]
    }

    pub fn to_grid(&self) -> QlsGrid {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.vector(a, b).to_vec()).collect())
            .collect()
    }
}

impl Structure for QuantumLatinSquare {
    const KIND: BaseKind = BaseKind::Qls;

    fn dimension(&self) -> usize {
        self.n
    }

    fn to_candidate(&self) -> Candidate {
        Candidate::Qls(self.to_grid())
    }

    fn from_candidate(candidate: &Candidate, tol: &Tolerance) -> Result<Self> {
        match candidate {
            Candidate::Qls(g) => Self::from_grid(g, tol),
            other => Err(wrong_kind(Self::KIND, other)),
        }
    }
}

/// A unitary error basis with `n²` elements.
///
/// `label_dims` records how the element index factors into a composite label
/// (for instance `[4, 4, 4]` for elements named `U_abc`); it defaults to a
/// single axis of size `n²`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryErrorBasis {
    n: usize,
    elements: Vec<CMatrix>,
    label_dims: Vec<usize>,
}

impl UnitaryErrorBasis {
    pub fn new(elements: Vec<CMatrix>, tol: &Tolerance) -> Result<Self> {
        require(verify_ueb(&elements, tol))?;
        let n = elements[0].rows();
        Ok(Self {
            n,
            label_dims: vec![n * n],
            elements,
        })
    }

    pub fn with_label_dims(mut self, label_dims: Vec<usize>) -> Result<Self> {
        if label_dims.is_empty() || label_dims.iter().product::<usize>() != self.elements.len() {
            return Err(Error::DimensionMismatch(format!(
                "label dimensions {label_dims:?} do not index {} elements",
                self.elements.len()
            )));
        }
        self.label_dims = label_dims;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<CMatrix> {
        self.elements
    }

    pub fn element(&self, k: usize) -> &CMatrix {
        &self.elements[k]
    }

    /// `U_{a,i,j} = ⟨i|U_a|j⟩`.
    #[inline]
    pub fn entry(&self, a: usize, i: usize, j: usize) -> C64 {
        self.elements[a].as_slice()[i * self.n + j]
    }

    pub fn label_dims(&self) -> &[usize] {
        &self.label_dims
    }

    /// 1-based composite label of element `k`.
    pub fn label(&self, k: usize) -> Vec<usize> {
        let mut rest = k;
        let mut label = vec![0; self.label_dims.len()];
        for (slot, &d) in label.iter_mut().zip(&self.label_dims).rev() {
            *slot = rest % d + 1;
            rest /= d;
        }
        label
    }

    /// Label as printed: digits run together when every axis is below 10.
    pub fn label_string(&self, k: usize) -> String {
        let label = self.label(k);
        if self.label_dims.iter().all(|&d| d < 10) {
            label.iter().map(usize::to_string).collect()
        } else {
            let parts: Vec<String> = label.iter().map(usize::to_string).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Element position for a 1-based composite label.
    pub fn index_of_label(&self, label: &[usize]) -> Result<usize> {
        if label.len() != self.label_dims.len() {
            return Err(Error::InvalidInput(format!(
                "label {label:?} has {} parts, expected {}",
                label.len(),
                self.label_dims.len()
            )));
        }
        let mut k = 0;
        for (&l, &d) in label.iter().zip(&self.label_dims) {
            if l == 0 || l > d {
                return Err(Error::IndexOutOfRange { index: l, size: d });
            }
            k = k * d + (l - 1);
        }
        Ok(k)
    }
}

impl Structure for UnitaryErrorBasis {
    const KIND: BaseKind = BaseKind::Ueb;

    fn dimension(&self) -> usize {
        self.n
    }

    fn to_candidate(&self) -> Candidate {
        Candidate::Ueb(self.elements.clone())
    }

    fn from_candidate(candidate: &Candidate, tol: &Tolerance) -> Result<Self> {
        match candidate {
            Candidate::Ueb(els) => Self::new(els.clone(), tol),
            other => Err(wrong_kind(Self::KIND, other)),
        }
    }
}

/// A list of structures indexed row-major by one or more control indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledFamily<T> {
    control_dims: Vec<usize>,
    items: Vec<T>,
}

impl<T: Structure> ControlledFamily<T> {
    pub fn new(control_dims: Vec<usize>, items: Vec<T>) -> Result<Self> {
        let expected: usize = control_dims.iter().product();
        if control_dims.is_empty() || expected == 0 {
            return Err(Error::InvalidInput(format!("invalid control dimensions {control_dims:?}")));
        }
        if items.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} items for control dimensions {control_dims:?}",
                items.len()
            )));
        }
        let d = items[0].dimension();
        if let Some(k) = items.iter().position(|it| it.dimension() != d) {
            return Err(Error::DimensionMismatch(format!(
                "item {} has dimension {}, item 1 has {d}",
                k + 1,
                items[k].dimension()
            )));
        }
        Ok(Self { control_dims, items })
    }

    /// Every control position holds a copy of `item`.
    pub fn constant(control_dims: Vec<usize>, item: T) -> Result<Self> {
        let count: usize = control_dims.iter().product();
        Self::new(control_dims, vec![item; count])
    }

    pub fn control_dims(&self) -> &[usize] {
        &self.control_dims
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn base_dimension(&self) -> usize {
        self.items[0].dimension()
    }

    pub fn base_kind(&self) -> BaseKind {
        T::KIND
    }

    /// Item at a 0-based multi-index.
    pub fn item(&self, index: &[usize]) -> &T {
        debug_assert_eq!(index.len(), self.control_dims.len());
        let flat = index
            .iter()
            .zip(&self.control_dims)
            .fold(0, |acc, (&i, &d)| {
                debug_assert!(i < d);
                acc * d + i
            });
        &self.items[flat]
    }

    pub fn verify(&self, tol: &Tolerance) -> BiunitaryReport {
        let items: Vec<Candidate> = self.items.iter().map(Structure::to_candidate).collect();
        verify_family(&self.control_dims, &items, tol)
    }

    /// Fails unless the control shape is exactly `dims` and items have
    /// dimension `base`.
    pub(crate) fn expect_shape(&self, what: &str, dims: &[usize], base: usize) -> Result<()> {
        if self.control_dims != dims || self.base_dimension() != base {
            return Err(Error::DimensionMismatch(format!(
                "{what}: expected a {dims:?}-controlled family of dimension {base}, got {:?}-controlled of dimension {}",
                self.control_dims,
                self.base_dimension()
            )));
        }
        Ok(())
    }
}

/// A classical Latin square on symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Latin square".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("row {} has {} cells, expected {n}", r + 1, rows[r].len())));
        }
        fn is_perm(n: usize, mut it: impl Iterator<Item = usize>) -> bool {
            let mut seen = vec![false; n];
            it.all(|s| s < n && !std::mem::replace(&mut seen[s], true))
        }
        for a in 0..n {
            if !is_perm(n, rows[a].iter().copied()) {
                return Err(Error::InvalidInput(format!("row {} is not a permutation", a + 1)));
            }
            if !is_perm(n, rows.iter().map(|r| r[a])) {
                return Err(Error::InvalidInput(format!("column {} is not a permutation", a + 1)));
            }
        }
        Ok(Self {
            n,
            cells: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(<[usize]>::to_vec).collect()
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// `F_n[j,k] = exp(2πi·jk/n)`.
pub fn fourier(n: usize) -> Result<HadamardMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("Fourier matrix of dimension 0".into()));
    }
    Ok(HadamardMatrix::new_unchecked(CMatrix::from_fn(n, n, |j, k| root_of_unity(j * k, n))))
}

/// `L[a,b] = a + b mod n`.
pub fn cyclic_latin(n: usize) -> Result<LatinSquare> {
    if n == 0 {
        return Err(Error::InvalidInput("Latin square of dimension 0".into()));
    }
    Ok(LatinSquare {
        n,
        cells: (0..n * n).map(|k| (k / n + k % n) % n).collect(),
    })
}

/// `Q_{a,b} = e_{L[a,b]}`.
pub fn qls_from_latin(latin: &LatinSquare) -> QuantumLatinSquare {
    let n = latin.n;
    let mut data = vec![ZERO; n * n * n];
    for a in 0..n {
        for b in 0..n {
            data[(a * n + b) * n + latin.get(a, b)] = ONE;
        }
    }
    QuantumLatinSquare { n, data }
}

/// Shift-and-clock basis `X^a Z^b` at position `a·n + b`, with `X|j⟩ = |j+1⟩`
/// and `Z = diag(exp(2πi·k/n))`.
pub fn pauli_ueb(n: usize) -> Result<UnitaryErrorBasis> {
    if n == 0 {
        return Err(Error::InvalidInput("unitary error basis of dimension 0".into()));
    }
    let mut elements = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            // (X^a Z^b)[i, j] = δ_{i, j+a} ω^{b j}
            elements.push(CMatrix::from_fn(n, n, |i, j| {
                if i == (j + a) % n {
                    root_of_unity(b * j, n)
                } else {
                    ZERO
                }
            }));
        }
    }
    Ok(UnitaryErrorBasis {
        n,
        elements,
        label_dims: vec![n, n],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{proportional, I};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn e(n: usize, k: usize) -> Vec<C64> {
        (0..n).map(|i| if i == k { ONE } else { ZERO }).collect()
    }

    #[test]
    fn fourier_two_is_the_sign_matrix() {
        let f = fourier(2).unwrap();
        assert_eq!(f.matrix(), &CMatrix::from_real(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap());
        assert_eq!(fourier(1).unwrap().matrix(), &CMatrix::identity(1));
        assert!(fourier(0).is_err());
    }

    #[test]
    fn fourier_four_matches_quarter_turn_table() {
        let h = CMatrix::from_rows(&[
            vec![ONE, ONE, ONE, ONE],
            vec![ONE, I, -ONE, -I],
            vec![ONE, -ONE, ONE, -ONE],
            vec![ONE, -I, -ONE, I],
        ])
        .unwrap();
        assert_eq!(fourier(4).unwrap().matrix(), &h);
        let r = verify_hadamard(&h, &tol());
        assert!(r.passed());
        assert_eq!(r.lambda, Some(4.0));
    }

    #[test]
    fn identity_is_not_hadamard() {
        let r = verify_hadamard(&CMatrix::identity(2), &tol());
        assert!(!r.vertical_ok);
        assert!(!r.passed());
        assert!(verify_hadamard(&CMatrix::zeros(2, 3), &tol()).structural_error.is_some());
    }

    #[test]
    fn hadamard_row_and_column_checks_agree() {
        let skew = CMatrix::from_rows(&[vec![ONE, ONE], vec![ONE, I]]).unwrap();
        for m in [fourier(3).unwrap().into_matrix(), skew, CMatrix::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap()] {
            let r = verify_hadamard(&m, &tol());
            assert_eq!(r.detail["rows_orthogonal"] <= 1e-10, r.detail["columns_orthogonal"] <= 1e-10);
        }
    }

    #[test]
    fn repeated_vector_breaks_qls() {
        let n = 4;
        let mut grid = qls_from_latin(&cyclic_latin(n).unwrap()).to_grid();
        grid[0] = vec![e(n, 0), e(n, 0), e(n, 1), e(n, 2)];
        let r = verify_qls(&grid, &tol());
        assert!(!r.vertical_ok);
        assert!(!r.passed());
    }

    #[test]
    fn ragged_grid_is_structural() {
        let mut grid = qls_from_latin(&cyclic_latin(3).unwrap()).to_grid();
        grid[1].pop();
        assert!(verify_qls(&grid, &tol()).structural_error.is_some());
    }

    #[test]
    fn cyclic_qls_entries_are_zero_one() {
        for n in 1..6 {
            let q = qls_from_latin(&cyclic_latin(n).unwrap());
            assert!(verify_qls(&q.to_grid(), &tol()).passed());
            let grid = q.to_grid();
            assert!(grid.iter().flatten().flatten().all(|&z| z == ONE || z == ZERO));
        }
    }

    #[test]
    fn latin_square_validation() {
        assert!(LatinSquare::new(&[vec![0, 1], vec![0, 1]]).is_err());
        assert!(LatinSquare::new(&[vec![0, 1], vec![1, 2]]).is_err());
        assert!(LatinSquare::new(&[vec![0, 1]]).is_err());
        let l = LatinSquare::new(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(l, cyclic_latin(2).unwrap());
    }

    #[test]
    fn pauli_ueb_small_cases() {
        let p1 = pauli_ueb(1).unwrap();
        assert_eq!(p1.elements(), &[CMatrix::identity(1)]);
        let p3 = pauli_ueb(3).unwrap();
        assert_eq!(p3.len(), 9);
        let r = verify_ueb(p3.elements(), &tol());
        assert!(r.passed());
        assert_eq!(r.lambda, Some(3.0));
    }

    #[test]
    fn pauli_two_matches_reference_basis_up_to_phase() {
        let v = [
            CMatrix::identity(2),
            CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap(),
            CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(),
            CMatrix::from_real(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap(),
        ];
        let p = pauli_ueb(2).unwrap();
        for (a, b) in p.elements().iter().zip(&v) {
            assert!(proportional(a, b, &tol()));
        }
        let r = verify_ueb(&v, &tol());
        assert!(r.passed());
        assert_eq!(r.lambda, Some(2.0));
    }

    #[test]
    fn repeated_identity_is_not_a_ueb() {
        let p = pauli_ueb(2).unwrap();
        let els = vec![CMatrix::identity(2), CMatrix::identity(2), p.element(2).clone(), p.element(1).clone()];
        let r = verify_ueb(&els, &tol());
        assert!(r.vertical_ok);
        assert!(!r.horizontal_ok);
        assert!(verify_ueb(&els[..3], &tol()).structural_error.is_some());
    }

    #[test]
    fn family_verification_reports_failing_item() {
        let f2 = Candidate::Hadamard(fourier(2).unwrap().into_matrix());
        let items = vec![f2.clone(), f2.clone(), Candidate::Hadamard(CMatrix::identity(2)), f2.clone()];
        let r = verify_family(&[4], &items, &tol());
        assert!(!r.passed());
        assert_eq!(r.failed_items, vec![2]);
        assert!(verify_family(&[4], &vec![f2.clone(); 4], &tol()).passed());
        assert!(verify_family(&[3], &vec![f2; 4], &tol()).structural_error.is_some());
    }

    #[test]
    fn family_item_addressing_is_row_major() {
        let items: Vec<HadamardMatrix> = (0..6)
            .map(|k| {
                HadamardMatrix::new_unchecked(CMatrix::new(1, 1, vec![root_of_unity(k, 6)]).unwrap())
            })
            .collect();
        let fam = ControlledFamily::new(vec![2, 3], items.clone()).unwrap();
        assert_eq!(fam.item(&[1, 2]), &items[5]);
        assert_eq!(fam.item(&[1, 0]), &items[3]);
        assert!(ControlledFamily::new(vec![2, 2], items).is_err());
    }

    #[test]
    fn ueb_labels_round_trip() {
        let p = pauli_ueb(4).unwrap().with_label_dims(vec![4, 2, 2]).unwrap();
        for k in 0..16 {
            assert_eq!(p.index_of_label(&p.label(k)).unwrap(), k);
        }
        assert_eq!(p.label_string(5), "212");
        assert!(p.index_of_label(&[5, 1, 1]).is_err());
        assert!(p.clone().with_label_dims(vec![3, 5]).is_err());
    }
}
