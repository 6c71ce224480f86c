//! Closure sweep: every construction applied to every admissible combination
//! of small standard inputs, with each output re-verified.
//!
//! The input pools per dimension `d` are
//! - Hadamard: `F_d` and a randomly phase-twisted `F_d`;
//! - Hadamard family: constant `F_d`, constant twisted `F_d`, and a family of
//!   independently twisted copies;
//! - QLS: the cyclic Latin square, plus `P` and `Q` of the eight-dimensional
//!   example when `d = 4`; families are constant or cycle through the pool;
//! - UEB and UEB family: the shift-and-clock basis.
//!
//! Parameters `n, m, p` range over `1..=3`, except for [`f_family`] which is
//! swept at `n = 2`, arity `1..=2`.

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::biunitarity::BiunitaryReport;
use crate::constructions::*;
use crate::error::{Error, Result};
use crate::linalg::Tolerance;
use crate::reproduction::TabulatedInputs;
use crate::samples::{twisted_fourier, twisted_fourier_family};
use crate::structures::{
    cyclic_latin, fourier, pauli_ueb, qls_from_latin, ControlledFamily, HadamardMatrix, QuantumLatinSquare, Structure,
    UnitaryErrorBasis,
};

/// Names of the swept constructions.
pub const CONSTRUCTIONS: [&str; 14] = [
    "had_had_to_qls",
    "ueb_ueb_to_qls",
    "hosoya_suzuki",
    "dita",
    "controlled_ueb_tensor",
    "qsm",
    "triple_hadamard_ueb",
    "ternary_a",
    "ternary_b",
    "ternary_c",
    "ternary_d",
    "quad_a",
    "octo_b",
    "f_family",
];

const MAX_PARAM: usize = 3;

/// One construction call and the verification of its output.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureCase {
    pub construction: &'static str,
    pub inputs: String,
    /// Verification report, or the error raised by the construction.
    pub outcome: std::result::Result<BiunitaryReport, String>,
}

impl ClosureCase {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(r) if r.passed())
    }
}

type Labeled<T> = Vec<(String, T)>;

struct Pools {
    rng: StdRng,
    tabulated: TabulatedInputs,
}

impl Pools {
    fn new(seed: u64) -> Self {
        Self {
            rng: StdRng::seed_from_u64(seed),
            tabulated: TabulatedInputs::new(&Tolerance::default()).expect("fixed inputs verify"),
        }
    }

    fn hadamards(&mut self, n: usize) -> Labeled<HadamardMatrix> {
        vec![
            (format!("F{n}"), fourier(n).expect("positive dimension")),
            (format!("twisted F{n}"), twisted_fourier(n, &mut self.rng)),
        ]
    }

    fn hadamard_families(&mut self, dims: &[usize], n: usize) -> Labeled<ControlledFamily<HadamardMatrix>> {
        let constant = |h: HadamardMatrix| ControlledFamily::constant(dims.to_vec(), h).expect("valid dims");
        vec![
            (format!("const F{n}"), constant(fourier(n).expect("positive dimension"))),
            (format!("const twisted F{n}"), constant(twisted_fourier(n, &mut self.rng))),
            (format!("mixed twisted F{n}"), twisted_fourier_family(dims.to_vec(), n, &mut self.rng)),
        ]
    }

    fn qls(&self, n: usize) -> Labeled<QuantumLatinSquare> {
        let mut pool = vec![(format!("L{n}"), qls_from_latin(&cyclic_latin(n).expect("positive dimension")))];
        if n == 4 {
            pool.push(("P".into(), self.tabulated.p.clone()));
            pool.push(("Q".into(), self.tabulated.q.clone()));
        }
        pool
    }

    fn qls_families(&self, dims: &[usize], n: usize) -> Labeled<ControlledFamily<QuantumLatinSquare>> {
        let pool = self.qls(n);
        let mut out: Labeled<_> = pool
            .iter()
            .map(|(name, q)| {
                (format!("const {name}"), ControlledFamily::constant(dims.to_vec(), q.clone()).expect("valid dims"))
            })
            .collect();
        if pool.len() > 1 {
            let count: usize = dims.iter().product();
            let items = (0..count).map(|k| pool[k % pool.len()].1.clone()).collect();
            out.push(("cycled QLS".into(), ControlledFamily::new(dims.to_vec(), items).expect("valid dims")));
        }
        out
    }

    fn uebs(&self, n: usize) -> Labeled<UnitaryErrorBasis> {
        vec![(format!("W{n}"), pauli_ueb(n).expect("positive dimension"))]
    }

    fn ueb_families(&self, dims: &[usize], n: usize) -> Labeled<ControlledFamily<UnitaryErrorBasis>> {
        vec![(
            format!("const W{n}"),
            ControlledFamily::constant(dims.to_vec(), pauli_ueb(n).expect("positive dimension")).expect("valid dims"),
        )]
    }
}

struct Sweep<'a> {
    construction: &'static str,
    tol: &'a Tolerance,
    cases: Vec<ClosureCase>,
}

impl Sweep<'_> {
    fn check<T: Structure>(&mut self, inputs: String, result: Result<T>) {
        let outcome = result
            .map(|out| out.to_candidate().verify(self.tol))
            .map_err(|e| e.to_string());
        self.cases.push(ClosureCase {
            construction: self.construction,
            inputs,
            outcome,
        });
    }
}

fn params() -> std::ops::RangeInclusive<usize> {
    1..=MAX_PARAM
}

/// Runs the sweep for one construction.
pub fn closure_cases(construction: &str, seed: u64, tol: &Tolerance) -> Result<Vec<ClosureCase>> {
    let name = CONSTRUCTIONS
        .iter()
        .copied()
        .find(|c| *c == construction)
        .ok_or_else(|| Error::InvalidInput(format!("unknown construction {construction:?}")))?;
    let mut pools = Pools::new(seed);
    let mut s = Sweep {
        construction: name,
        tol,
        cases: Vec::new(),
    };
    match name {
        "had_had_to_qls" => {
            for n in params() {
                for (hn, h) in pools.hadamards(n) {
                    for (jn, j) in pools.hadamards(n) {
                        s.check(format!("{hn}, {jn}"), had_had_to_qls(&h, &j, tol));
                    }
                }
            }
        }
        "ueb_ueb_to_qls" => {
            for n in params() {
                for (un, u) in pools.uebs(n) {
                    for (vn, v) in pools.uebs(n) {
                        s.check(format!("{un}, {vn}"), ueb_ueb_to_qls(&u, &v, tol));
                    }
                }
            }
        }
        "hosoya_suzuki" => {
            for n in params() {
                for m in params() {
                    for (jn, j) in pools.hadamard_families(&[m], n) {
                        for (kn, k) in pools.hadamard_families(&[n], m) {
                            s.check(format!("n={n} m={m}: {jn}, {kn}"), hosoya_suzuki(&j, &k, tol));
                        }
                    }
                }
            }
        }
        "dita" => {
            for n in params() {
                for m in params() {
                    for (jn, j) in pools.hadamards(n) {
                        for (kn, k) in pools.hadamard_families(&[n], m) {
                            s.check(format!("n={n} m={m}: {jn}, {kn}"), dita(&j, &k, tol));
                        }
                    }
                }
            }
        }
        "controlled_ueb_tensor" => {
            for n in params() {
                for m in params() {
                    for (vn, v) in pools.ueb_families(&[m * m], n) {
                        for (wn, w) in pools.uebs(m) {
                            s.check(format!("n={n} m={m}: {vn}, {wn}"), controlled_ueb_tensor(&v, &w, tol));
                        }
                    }
                }
            }
        }
        "qsm" => {
            for n in params() {
                for (hn, h) in pools.hadamard_families(&[n], n) {
                    for (qn, q) in pools.qls(n) {
                        s.check(format!("{hn}, {qn}"), qsm(&h, &q, tol));
                    }
                }
            }
        }
        "triple_hadamard_ueb" => {
            for n in params() {
                for (hn, h) in pools.hadamard_families(&[n], n) {
                    for (fn_, f) in pools.hadamards(n) {
                        for (gn, g) in pools.hadamards(n) {
                            s.check(format!("{hn}, {fn_}, {gn}"), triple_hadamard_ueb(&h, &f, &g, tol));
                        }
                    }
                }
            }
        }
        "ternary_a" => {
            for n in params() {
                for m in params() {
                    for (hn, h) in pools.hadamard_families(&[m * m, n], n) {
                        for (vn, v) in pools.ueb_families(&[n, n], m) {
                            for (qn, q) in pools.qls(n) {
                                s.check(format!("n={n} m={m}: {hn}, {vn}, {qn}"), ternary_a(&h, &v, &q, tol));
                            }
                        }
                    }
                }
            }
        }
        "ternary_b" => {
            for n in params() {
                for m in params() {
                    for (hn, h) in pools.hadamard_families(&[n, m], n * m) {
                        for (pn, p) in pools.qls_families(&[m, m], n) {
                            for (qn, q) in pools.qls(m) {
                                s.check(format!("n={n} m={m}: {hn}, {pn}, {qn}"), ternary_b(&h, &p, &q, tol));
                            }
                        }
                    }
                }
            }
        }
        "ternary_c" => {
            for n in params() {
                for m in params() {
                    for (hn, h) in pools.hadamard_families(&[n * n * m * m], m * m) {
                        for (vn, v) in pools.uebs(n * m) {
                            for (wn, w) in pools.uebs(m) {
                                s.check(format!("n={n} m={m}: {hn}, {vn}, {wn}"), ternary_c(&h, &v, &w, tol));
                            }
                        }
                    }
                }
            }
        }
        "ternary_d" => {
            for n in params() {
                for m in params() {
                    for p in params() {
                        let Some(root) = (1..=n * p).find(|r| r * r == n * p) else {
                            continue;
                        };
                        for (vn, v) in pools.ueb_families(&[n, p], n * m) {
                            for (qn, q) in pools.qls_families(&[p], n) {
                                for (wn, w) in pools.uebs(root) {
                                    s.check(
                                        format!("n={n} m={m} p={p}: {vn}, {qn}, {wn}"),
                                        ternary_d(&v, &q, &w, tol),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        "quad_a" => {
            for n in params() {
                let nn = n * n;
                for (hn, h) in pools.hadamard_families(&[nn, nn], nn) {
                    for (pn, p) in pools.qls(nn) {
                        for (qn, q) in pools.qls(nn) {
                            for (vn, v) in pools.uebs(n) {
                                s.check(format!("n={n}: {hn}, {pn}, {qn}, {vn}"), quad_a(&h, &p, &q, &v, tol));
                            }
                        }
                    }
                }
            }
        }
        "octo_b" => {
            for n in params() {
                let had = pools.hadamards(n);
                let fams = pools.hadamard_families(&[n], n);
                let qls = pools.qls(n);
                for (an, a) in &had {
                    for (bn, b) in &had {
                        for (cn, c) in &had {
                            for (dn, d) in &had {
                                for (hn, h) in &fams {
                                    for (kn, k) in &fams {
                                        for (qn, q) in &qls {
                                            for (pn, p) in &qls {
                                                s.check(
                                                    format!("n={n}: {an}, {bn}, {cn}, {dn}, {hn}, {kn}, {qn}, {pn}"),
                                                    octo_b(a, b, c, d, h, k, q, p, tol),
                                                );
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        "f_family" => {
            let n: usize = 2;
            let nn = n * n;
            for arity in 1..=2usize {
                let inner = nn.pow(arity as u32);
                let qls = pools.qls(nn);
                let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
                for _ in 0..arity {
                    choices = choices
                        .into_iter()
                        .flat_map(|c| (0..qls.len()).map(move |k| [c.clone(), vec![k]].concat()))
                        .collect();
                }
                for (vn, v) in pools.ueb_families(&[nn], inner) {
                    for (wn, w) in pools.uebs(n) {
                        for choice in &choices {
                            let qs: Vec<QuantumLatinSquare> = choice.iter().map(|&k| qls[k].1.clone()).collect();
                            let qnames: Vec<&str> = choice.iter().map(|&k| qls[k].0.as_str()).collect();
                            s.check(
                                format!("arity={arity}: {vn}, [{}], {wn}", qnames.join(", ")),
                                f_family(&v, &qs, &w, tol),
                            );
                        }
                    }
                }
            }
        }
        _ => unreachable!("construction list is exhaustive"),
    }
    Ok(s.cases)
}

/// Runs the sweep for every construction, one thread per construction.
pub fn closure_suite(seed: u64, tol: &Tolerance) -> Vec<ClosureCase> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = CONSTRUCTIONS
            .iter()
            .map(|name| scope.spawn(move || closure_cases(name, seed, tol).expect("known construction")))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep thread")).collect()
    })
}
