//! The eight-dimensional basis built by [`quad_a`] from a fixed set of
//! four-dimensional inputs, its comparison with the tabulated matrices in
//! `data/appendix_a.json`, and the two obstruction checks that separate it
//! from nice and shift-and-multiply bases.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::Path;

use serde::Serialize;

use crate::constructions::quad_a;
use crate::equivalence::{adjoint_closed_up_to_phase, max_commuting_subset, ueb_normalize};
use crate::error::{Error, Result};
use crate::io::{from_json_str, load, Document};
use crate::linalg::{proportional, CMatrix, Tolerance, C64, I, ONE, ZERO};
use crate::structures::{ControlledFamily, HadamardMatrix, QuantumLatinSquare, UnitaryErrorBasis};

/// The tabulated 64 matrices, in interchange format with symbolic entries.
pub const APPENDIX_FIXTURE: &str = include_str!("../data/appendix_a.json");

/// Label dimensions of the eight-dimensional basis (`U_abc`, `a, b, c ∈ 1..=4`).
pub const LABEL_DIMS: [usize; 3] = [4, 4, 4];

/// Inputs to the eight-dimensional construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedInputs {
    pub h: HadamardMatrix,
    pub p: QuantumLatinSquare,
    pub q: QuantumLatinSquare,
    pub v: UnitaryErrorBasis,
}

fn basis(k: usize) -> Vec<C64> {
    (0..4).map(|i| if i == k { ONE } else { ZERO }).collect()
}

fn combo(terms: &[(C64, usize)], scale: f64) -> Vec<C64> {
    let mut v = vec![ZERO; 4];
    for &(c, k) in terms {
        v[k] += c * scale;
    }
    v
}

impl TabulatedInputs {
    pub fn new(tol: &Tolerance) -> Result<Self> {
        let h = HadamardMatrix::new(
            CMatrix::from_rows(&[
                vec![ONE, ONE, ONE, ONE],
                vec![ONE, I, -ONE, -I],
                vec![ONE, -ONE, ONE, -ONE],
                vec![ONE, -I, -ONE, I],
            ])?,
            tol,
        )?;

        let r2 = FRAC_1_SQRT_2;
        let r5 = 1.0 / 5f64.sqrt();
        let two = C64::new(2.0, 0.0);
        let p = QuantumLatinSquare::from_grid(
            &vec![
                vec![basis(0), basis(1), basis(2), basis(3)],
                vec![
                    combo(&[(ONE, 1), (-ONE, 2)], r2),
                    combo(&[(I, 0), (two, 3)], r5),
                    combo(&[(two, 0), (I, 3)], r5),
                    combo(&[(ONE, 1), (ONE, 2)], r2),
                ],
                vec![
                    combo(&[(ONE, 1), (ONE, 2)], r2),
                    combo(&[(two, 0), (I, 3)], r5),
                    combo(&[(I, 0), (two, 3)], r5),
                    combo(&[(ONE, 1), (-ONE, 2)], r2),
                ],
                vec![basis(3), basis(2), basis(1), basis(0)],
            ],
            tol,
        )?;

        let q_rows = [[1, 4, 2, 3], [4, 1, 3, 2], [3, 2, 1, 4], [2, 3, 4, 1]];
        let q = QuantumLatinSquare::from_grid(
            &q_rows.iter().map(|row| row.iter().map(|&s| basis(s - 1)).collect()).collect(),
            tol,
        )?;

        let v = UnitaryErrorBasis::new(
            vec![
                CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 1.0]])?,
                CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]])?,
                CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])?,
                CMatrix::from_real(&[&[0.0, 1.0], &[-1.0, 0.0]])?,
            ],
            tol,
        )?;
        Ok(Self { h, p, q, v })
    }
}

/// Runs [`quad_a`] on a constant Hadamard family, then normalizes so that
/// element `111` is the identity.
pub fn build_tabulated_ueb(tol: &Tolerance) -> Result<UnitaryErrorBasis> {
    let inputs = TabulatedInputs::new(tol)?;
    let family = ControlledFamily::constant(vec![4, 4], inputs.h)?;
    let raw = quad_a(&family, &inputs.p, &inputs.q, &inputs.v, tol)?;
    ueb_normalize(&raw, 0, tol)?.with_label_dims(LABEL_DIMS.to_vec())
}

fn fixture_from_document(doc: Document, tol: &Tolerance) -> Result<UnitaryErrorBasis> {
    let u = doc.ueb(tol)?;
    if u.n() != 8 {
        return Err(Error::DimensionMismatch(format!("fixture has dimension {}, expected 8", u.n())));
    }
    u.with_label_dims(LABEL_DIMS.to_vec())
}

/// The embedded fixture, verified as a unitary error basis.
pub fn embedded_fixture(tol: &Tolerance) -> Result<UnitaryErrorBasis> {
    fixture_from_document(from_json_str(APPENDIX_FIXTURE)?, tol)
}

pub fn load_fixture(path: impl AsRef<Path>, tol: &Tolerance) -> Result<UnitaryErrorBasis> {
    fixture_from_document(load(path)?, tol)
}

/// Element-by-element agreement between two bases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureComparison {
    pub matched: usize,
    pub total: usize,
    pub max_deviation: f64,
    /// Labels of elements deviating by more than the comparison tolerance.
    pub mismatched: Vec<String>,
}

impl FixtureComparison {
    pub fn all_match(&self) -> bool {
        self.matched == self.total
    }
}

pub fn compare_with_fixture(
    built: &UnitaryErrorBasis,
    fixture: &UnitaryErrorBasis,
    tol: &Tolerance,
) -> Result<FixtureComparison> {
    if built.len() != fixture.len() || built.n() != fixture.n() {
        return Err(Error::DimensionMismatch(format!(
            "built basis has {} elements of dimension {}, fixture has {} of dimension {}",
            built.len(),
            built.n(),
            fixture.len(),
            fixture.n()
        )));
    }
    let mut cmp = FixtureComparison {
        matched: 0,
        total: built.len(),
        max_deviation: 0.0,
        mismatched: Vec::new(),
    };
    for k in 0..built.len() {
        let dev = built.element(k).max_abs_diff(fixture.element(k)).expect("equal shapes");
        cmp.max_deviation = cmp.max_deviation.max(dev);
        if dev <= tol.compare_tol {
            cmp.matched += 1;
        } else {
            cmp.mismatched.push(built.label_string(k));
        }
    }
    Ok(cmp)
}

fn require_identity(u: &UnitaryErrorBasis, tol: &Tolerance) -> Result<()> {
    let id = CMatrix::identity(u.n());
    if u.elements().iter().any(|e| proportional(e, &id, tol)) {
        Ok(())
    } else {
        Err(Error::Precondition("the basis must contain the identity; normalize it first".into()))
    }
}

/// Adjoint-closure obstruction: a basis containing the identity that is
/// equivalent to a nice basis is closed under adjoints up to phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotNiceReport {
    /// True when the obstruction applies.
    pub not_nice: bool,
    pub witness: Option<usize>,
    pub witness_label: Option<String>,
}

impl NotNiceReport {
    pub fn summary(&self) -> String {
        match &self.witness_label {
            Some(label) if self.not_nice => format!("not nice (witness {label})"),
            _ => "adjoint-closed, niceness inconclusive".to_string(),
        }
    }
}

pub fn check_not_nice(u: &UnitaryErrorBasis, tol: &Tolerance) -> Result<NotNiceReport> {
    require_identity(u, tol)?;
    let closure = adjoint_closed_up_to_phase(u, tol);
    Ok(NotNiceReport {
        not_nice: !closure.closed,
        witness: closure.witness,
        witness_label: closure.witness.map(|k| u.label_string(k)),
    })
}

/// Commuting-set obstruction: an `m`-dimensional basis containing the
/// identity that is equivalent to a shift-and-multiply basis has `m`
/// pairwise-commuting elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotQsmReport {
    pub not_qsm: bool,
    pub max_commuting: usize,
    pub dimension: usize,
    pub members: Vec<String>,
}

impl NotQsmReport {
    pub fn summary(&self) -> String {
        if self.not_qsm {
            format!("not QSM (max commuting {} < {})", self.max_commuting, self.dimension)
        } else {
            format!(
                "shift-and-multiply inconclusive (max commuting {} >= {})",
                self.max_commuting, self.dimension
            )
        }
    }
}

pub fn check_not_qsm(u: &UnitaryErrorBasis, tol: &Tolerance) -> Result<NotQsmReport> {
    require_identity(u, tol)?;
    let best = max_commuting_subset(u, tol)?;
    Ok(NotQsmReport {
        not_qsm: best.size < u.n(),
        max_commuting: best.size,
        dimension: u.n(),
        members: best.labels,
    })
}

/// Full reproduction outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub comparison: FixtureComparison,
    pub not_nice: NotNiceReport,
    pub not_qsm: NotQsmReport,
}

impl ReproductionReport {
    /// Every element matches and both obstructions apply.
    pub fn passed(&self) -> bool {
        self.comparison.all_match() && self.not_nice.not_nice && self.not_qsm.not_qsm
    }

    pub fn summary(&self) -> String {
        format!(
            "{}/{} matrices match; {}; {}",
            self.comparison.matched,
            self.comparison.total,
            self.not_nice.summary(),
            self.not_qsm.summary()
        )
    }
}

/// Builds the basis, compares it with `fixture` and runs both obstruction
/// checks on the built basis.
pub fn reproduce_appendix_a(fixture: &UnitaryErrorBasis, tol: &Tolerance) -> Result<ReproductionReport> {
    let built = build_tabulated_ueb(tol)?;
    Ok(ReproductionReport {
        comparison: compare_with_fixture(&built, fixture, tol)?,
        not_nice: check_not_nice(&built, tol)?,
        not_qsm: check_not_qsm(&built, tol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::pauli_ueb;

    #[test]
    fn inputs_verify() {
        TabulatedInputs::new(&Tolerance::default()).unwrap();
    }

    #[test]
    fn first_element_is_identity() {
        let u = build_tabulated_ueb(&Tolerance::default()).unwrap();
        assert_eq!(u.element(0).max_abs_diff(&CMatrix::identity(8)), Some(0.0));
        assert_eq!(u.label_string(63), "444");
    }

    #[test]
    fn pauli_checks_are_inconclusive() {
        let tol = Tolerance::default();
        let p = pauli_ueb(2).unwrap();
        assert!(!check_not_nice(&p, &tol).unwrap().not_nice);
        let q = check_not_qsm(&p, &tol).unwrap();
        assert!(!q.not_qsm);
        assert_eq!(q.max_commuting, 2);
    }

    #[test]
    fn identity_is_required() {
        let tol = Tolerance::default();
        let p = pauli_ueb(2).unwrap();
        // X·U·diag(1, i) contains no multiple of the identity.
        let twisted: Vec<CMatrix> = p
            .elements()
            .iter()
            .map(|e| &CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap() * &(e * &CMatrix::from_diagonal(&[ONE, I])))
            .collect();
        let twisted = UnitaryErrorBasis::new(twisted, &tol).unwrap();
        assert!(matches!(check_not_qsm(&twisted, &tol), Err(Error::Precondition(_))));
    }
}
