//! Diagonal-composite constructions, each written out as its index formula.
//!
//! Composite labels such as `ab` flatten with the leftmost index major. Rotation
//! scalars (`1/√n`, `1/n`) are applied exactly as they appear in each formula,
//! with the positive square root. Every construction verifies its output
//! against the structure's defining equations before returning it; a failure
//! there is reported as [`Error::VerificationFailed`].

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Tolerance, C64, ZERO};
use crate::structures::{ControlledFamily, HadamardMatrix, QuantumLatinSquare, UnitaryErrorBasis};

fn inv_sqrt(n: usize) -> f64 {
    1.0 / (n as f64).sqrt()
}

fn same_dim(what: &str, a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("{what}: dimensions {a} and {b} differ")));
    }
    Ok(())
}

/// Builds a basis of `count` elements of size `dim` from an entry formula
/// `(element, row, col)` and verifies it.
fn build_ueb(
    dim: usize,
    label_dims: Vec<usize>,
    tol: &Tolerance,
    entry: impl Fn(usize, usize, usize) -> C64,
) -> Result<UnitaryErrorBasis> {
    let count: usize = label_dims.iter().product();
    debug_assert_eq!(count, dim * dim);
    let elements = (0..count)
        .map(|k| CMatrix::from_fn(dim, dim, |i, j| entry(k, i, j)))
        .collect();
    UnitaryErrorBasis::new(elements, tol)?.with_label_dims(label_dims)
}

/// `Q_{a,b,c} = (1/√n) H_{a,c} J_{c,b}`.
pub fn had_had_to_qls(h: &HadamardMatrix, j: &HadamardMatrix, tol: &Tolerance) -> Result<QuantumLatinSquare> {
    let n = h.n();
    same_dim("had_had_to_qls", n, j.n())?;
    let s = inv_sqrt(n);
    let mut data = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                data.push(h.entry(a, c) * s * j.entry(c, b));
            }
        }
    }
    QuantumLatinSquare::from_flat(n, data, tol)
}

/// `Q_{a,b,cd} = (1/√n) Σ_k U_{a,c,k} V_{b,k,d}`, an `n²`-dimensional square.
pub fn ueb_ueb_to_qls(u: &UnitaryErrorBasis, v: &UnitaryErrorBasis, tol: &Tolerance) -> Result<QuantumLatinSquare> {
    let n = u.n();
    same_dim("ueb_ueb_to_qls", n, v.n())?;
    let big = n * n;
    let s = inv_sqrt(n);
    let mut data = Vec::with_capacity(big * big * big);
    for a in 0..big {
        for b in 0..big {
            for c in 0..n {
                for d in 0..n {
                    let sum: C64 = (0..n).map(|k| u.entry(a, c, k) * v.entry(b, k, d)).sum();
                    data.push(sum * s);
                }
            }
        }
    }
    QuantumLatinSquare::from_flat(big, data, tol)
}

/// Generalized tensor product `H_{ab,cd} = J^b_{a,c} K^c_{b,d}` of an
/// `m`-controlled family of `n`-dimensional matrices and an `n`-controlled
/// family of `m`-dimensional ones.
pub fn hosoya_suzuki(
    j: &ControlledFamily<HadamardMatrix>,
    k: &ControlledFamily<HadamardMatrix>,
    tol: &Tolerance,
) -> Result<HadamardMatrix> {
    let n = j.base_dimension();
    let m = k.base_dimension();
    j.expect_shape("hosoya_suzuki J", &[m], n)?;
    k.expect_shape("hosoya_suzuki K", &[n], m)?;
    let out = CMatrix::from_fn(n * m, n * m, |row, col| {
        let (a, b) = (row / m, row % m);
        let (c, d) = (col / m, col % m);
        j.item(&[b]).entry(a, c) * k.item(&[c]).entry(b, d)
    });
    HadamardMatrix::new(out, tol)
}

/// Diţă's product: [`hosoya_suzuki`] with `J` held constant.
pub fn dita(j: &HadamardMatrix, k: &ControlledFamily<HadamardMatrix>, tol: &Tolerance) -> Result<HadamardMatrix> {
    let m = k.base_dimension();
    let lifted = ControlledFamily::constant(vec![m], j.clone())?;
    hosoya_suzuki(&lifted, k, tol)
}

/// `U_{ab,cd,ef} = V^b_{a,d,e} W_{b,c,f}` for an `m²`-controlled family `V` of
/// `n`-dimensional bases and an `m`-dimensional basis `W`.
pub fn controlled_ueb_tensor(
    v: &ControlledFamily<UnitaryErrorBasis>,
    w: &UnitaryErrorBasis,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = v.base_dimension();
    let m = w.n();
    v.expect_shape("controlled_ueb_tensor V", &[m * m], n)?;
    let (nn, mm) = (n * n, m * m);
    build_ueb(n * m, vec![nn, mm], tol, |k, row, col| {
        let (a, b) = (k / mm, k % mm);
        let (c, d) = (row / n, row % n);
        let (e, f) = (col / m, col % m);
        v.item(&[b]).entry(a, d, e) * w.entry(b, c, f)
    })
}

/// Quantum shift-and-multiply: `U_{ab,c,d} = H^b_{a,d} Q_{b,d,c}`.
pub fn qsm(
    h: &ControlledFamily<HadamardMatrix>,
    q: &QuantumLatinSquare,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = q.n();
    h.expect_shape("qsm H", &[n], n)?;
    build_ueb(n, vec![n, n], tol, |k, c, d| {
        let (a, b) = (k / n, k % n);
        h.item(&[b]).entry(a, d) * q.entry(b, d, c)
    })
}

/// `U_{ab,c,d} = (1/√n) H^b_{a,d} F_{b,c} G_{c,d}`; agrees exactly with
/// `qsm(H, had_had_to_qls(F, G))`.
pub fn triple_hadamard_ueb(
    h: &ControlledFamily<HadamardMatrix>,
    f: &HadamardMatrix,
    g: &HadamardMatrix,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = f.n();
    same_dim("triple_hadamard_ueb", n, g.n())?;
    h.expect_shape("triple_hadamard_ueb H", &[n], n)?;
    let s = inv_sqrt(n);
    build_ueb(n, vec![n, n], tol, |k, c, d| {
        let (a, b) = (k / n, k % n);
        h.item(&[b]).entry(a, d) * (f.entry(b, c) * s * g.entry(c, d))
    })
}

/// `U_{abc,de,fg} = H^{b,c}_{a,f} V^{c,f}_{b,e,g} Q_{c,f,d}`, an
/// `nm`-dimensional basis, with `H` an `(m², n)`-controlled family of
/// `n`-dimensional matrices and `V` an `(n, n)`-controlled family of
/// `m`-dimensional bases.
pub fn ternary_a(
    h: &ControlledFamily<HadamardMatrix>,
    v: &ControlledFamily<UnitaryErrorBasis>,
    q: &QuantumLatinSquare,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = q.n();
    let m = v.base_dimension();
    let mm = m * m;
    h.expect_shape("ternary_a H", &[mm, n], n)?;
    v.expect_shape("ternary_a V", &[n, n], m)?;
    build_ueb(n * m, vec![n, mm, n], tol, |k, row, col| {
        let (ab, c) = (k / n, k % n);
        let (a, b) = (ab / mm, ab % mm);
        let (d, e) = (row / m, row % m);
        let (f, g) = (col / m, col % m);
        h.item(&[b, c]).entry(a, f) * v.item(&[c, f]).entry(b, e, g) * q.entry(c, f, d)
    })
}

/// `U_{abc,de,fg} = H^{b,c}_{a,eg} P^{c,g}_{e,b,f} Q_{c,g,d}`, an
/// `nm`-dimensional basis, with `H` an `(n, m)`-controlled family of
/// `nm`-dimensional matrices and `P` an `(m, m)`-controlled family of
/// `n`-dimensional squares.
pub fn ternary_b(
    h: &ControlledFamily<HadamardMatrix>,
    p: &ControlledFamily<QuantumLatinSquare>,
    q: &QuantumLatinSquare,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let m = q.n();
    let n = p.base_dimension();
    h.expect_shape("ternary_b H", &[n, m], n * m)?;
    p.expect_shape("ternary_b P", &[m, m], n)?;
    build_ueb(n * m, vec![n * m, n, m], tol, |k, row, col| {
        let (ab, c) = (k / m, k % m);
        let (a, b) = (ab / n, ab % n);
        let (d, e) = (row / n, row % n);
        let (f, g) = (col / m, col % m);
        h.item(&[b, c]).entry(a, e * m + g) * p.item(&[c, g]).entry(e, b, f) * q.entry(c, g, d)
    })
}

/// `U_{ab,cd,ef} = (1/√m) Σ_r H^b_{a,e} V_{b,c,rf} W_{e,r,d}`, an
/// `nm²`-dimensional basis, with `H` an `n²m²`-controlled family of
/// `m²`-dimensional matrices, `V` an `nm`-dimensional basis and `W` an
/// `m`-dimensional basis.
pub fn ternary_c(
    h: &ControlledFamily<HadamardMatrix>,
    v: &UnitaryErrorBasis,
    w: &UnitaryErrorBasis,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let m = w.n();
    if v.n() % m != 0 {
        return Err(Error::DimensionMismatch(format!(
            "ternary_c: V has dimension {}, not a multiple of {m}",
            v.n()
        )));
    }
    let n = v.n() / m;
    let mm = m * m;
    let controls = n * n * mm;
    h.expect_shape("ternary_c H", &[controls], mm)?;
    let scale = inv_sqrt(m);
    build_ueb(n * mm, vec![mm, controls], tol, |k, row, col| {
        let (a, b) = (k / controls, k % controls);
        let (c, d) = (row / m, row % m);
        let (e, f) = (col / n, col % n);
        let hab = h.item(&[b]).entry(a, e);
        let sum: C64 = (0..m).map(|r| v.entry(b, c, r * n + f) * w.entry(e, r, d)).sum();
        hab * sum * scale
    })
}

/// Integer square root of `x` when `x` is a perfect square.
fn exact_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r * r == x).then_some(r)
}

/// `U_{abc,def,gh} = Σ_r V^{b,c}_{a,rf,g} Q^c_{b,r,d} W_{rc,e,h}`, an
/// `nm√(np)`-dimensional basis, with `V` an `(n, p)`-controlled family of
/// `nm`-dimensional bases, `Q` a `p`-controlled family of `n`-dimensional
/// squares and `W` a `√(np)`-dimensional basis. Rejects `np` that is not a
/// perfect square.
pub fn ternary_d(
    v: &ControlledFamily<UnitaryErrorBasis>,
    q: &ControlledFamily<QuantumLatinSquare>,
    w: &UnitaryErrorBasis,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = q.base_dimension();
    let p = match q.control_dims() {
        [p] => *p,
        other => {
            return Err(Error::DimensionMismatch(format!(
                "ternary_d: Q must have one control index, got {other:?}"
            )))
        }
    };
    let s = exact_sqrt(n * p).ok_or_else(|| {
        Error::InvalidInput(format!("ternary_d: n·p = {} is not a perfect square", n * p))
    })?;
    same_dim("ternary_d W", w.n(), s)?;
    if v.base_dimension() % n != 0 {
        return Err(Error::DimensionMismatch(format!(
            "ternary_d: V has dimension {}, not a multiple of {n}",
            v.base_dimension()
        )));
    }
    let m = v.base_dimension() / n;
    v.expect_shape("ternary_d V", &[n, p], n * m)?;
    let big_a = n * n * m * m;
    build_ueb(n * m * s, vec![big_a, n, p], tol, |k, row, col| {
        let (ab, c) = (k / p, k % p);
        let (a, b) = (ab / n, ab % n);
        let (de, f) = (row / m, row % m);
        let (d, e) = (de / s, de % s);
        let (g, hh) = (col / s, col % s);
        let vf = v.item(&[b, c]);
        let qf = q.item(&[c]);
        (0..n)
            .map(|r| vf.entry(a, r * m + f, g) * qf.entry(b, r, d) * w.entry(r * p + c, e, hh))
            .sum()
    })
}

/// `U_{abc,de,fg} = Σ_{r∈[n²]} H^{b,c}_{a,r} P_{c,r,d} Q_{r,b,f} V_{r,e,g}`, an
/// `n³`-dimensional basis, with `H` an `(n², n²)`-controlled family of
/// `n²`-dimensional matrices.
pub fn quad_a(
    h: &ControlledFamily<HadamardMatrix>,
    p: &QuantumLatinSquare,
    q: &QuantumLatinSquare,
    v: &UnitaryErrorBasis,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = v.n();
    let nn = n * n;
    same_dim("quad_a P", p.n(), nn)?;
    same_dim("quad_a Q", q.n(), nn)?;
    h.expect_shape("quad_a H", &[nn, nn], nn)?;
    build_ueb(nn * n, vec![nn, nn, nn], tol, |k, row, col| {
        let (ab, c) = (k / nn, k % nn);
        let (a, b) = (ab / nn, ab % nn);
        let (d, e) = (row / n, row % n);
        let (f, g) = (col / n, col % n);
        let hf = h.item(&[b, c]);
        (0..nn)
            .map(|r| hf.entry(a, r) * p.entry(c, r, d) * q.entry(r, b, f) * v.entry(r, e, g))
            .sum()
    })
}

/// Eight-input construction of an `n²`-dimensional basis:
/// `U_{abcd,ef,gh} = (1/n) Σ_{r,s} A_{f,h} B_{s,f} C_{r,h} D_{s,r} H^d_{a,s}
/// K^c_{b,r} Q_{d,s,e} P_{r,c,g}`.
#[allow(clippy::too_many_arguments)]
pub fn octo_b(
    a_mat: &HadamardMatrix,
    b_mat: &HadamardMatrix,
    c_mat: &HadamardMatrix,
    d_mat: &HadamardMatrix,
    h: &ControlledFamily<HadamardMatrix>,
    k_fam: &ControlledFamily<HadamardMatrix>,
    q: &QuantumLatinSquare,
    p: &QuantumLatinSquare,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = a_mat.n();
    for (what, dim) in [("B", b_mat.n()), ("C", c_mat.n()), ("D", d_mat.n()), ("Q", q.n()), ("P", p.n())] {
        same_dim(&format!("octo_b {what}"), n, dim)?;
    }
    h.expect_shape("octo_b H", &[n], n)?;
    k_fam.expect_shape("octo_b K", &[n], n)?;
    let scale = 1.0 / n as f64;
    build_ueb(n * n, vec![n, n, n, n], tol, |idx, row, col| {
        let (a, b, c, d) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        let (e, f) = (row / n, row % n);
        let (g, hh) = (col / n, col % n);
        let hd = h.item(&[d]);
        let kc = k_fam.item(&[c]);
        let mut sum = ZERO;
        for r in 0..n {
            for s in 0..n {
                sum += a_mat.entry(f, hh)
                    * b_mat.entry(s, f)
                    * c_mat.entry(r, hh)
                    * d_mat.entry(s, r)
                    * hd.entry(a, s)
                    * kc.entry(b, r)
                    * q.entry(d, s, e)
                    * p.entry(r, c, g);
            }
        }
        sum * scale
    })
}

/// The arity-`m` family producing an `n^{2m+1}`-dimensional basis:
///
/// `U_{ar₀,c₁⋯c_m d,ef} = Σ_{r₁..r_m} V^{r₀}_{a,r₁⋯r_m,e} (Π_i Q⁽ⁱ⁾_{r_{i−1},r_i,c_i}) W_{r_m,d,f}`
///
/// with `V` an `n²`-controlled family of `n^{2m}`-dimensional bases, one
/// `n²`-dimensional square per factor, and `W` an `n`-dimensional basis. For
/// `m = 1` this is the three-input composite
/// `U_{ab,cd,ef} = Σ_r V^b_{a,r,e} Q_{b,r,c} W_{r,d,f}`.
pub fn f_family(
    v: &ControlledFamily<UnitaryErrorBasis>,
    qs: &[QuantumLatinSquare],
    w: &UnitaryErrorBasis,
    tol: &Tolerance,
) -> Result<UnitaryErrorBasis> {
    let arity = qs.len();
    if arity == 0 {
        return Err(Error::InvalidInput("f_family needs at least one quantum Latin square".into()));
    }
    let n = w.n();
    let nn = n * n;
    for (i, q) in qs.iter().enumerate() {
        same_dim(&format!("f_family Q[{}]", i + 1), q.n(), nn)?;
    }
    let inner_dim = nn.pow(arity as u32);
    v.expect_shape("f_family V", &[nn], inner_dim)?;
    let element_dim = inner_dim * inner_dim;
    let dim = inner_dim * n;

    // Depth-first over r₁..r_m, skipping zero partial products.
    #[allow(clippy::too_many_arguments)]
    fn accumulate(
        level: usize,
        prev: usize,
        r_multi: usize,
        partial: C64,
        cs: &[usize],
        qs: &[QuantumLatinSquare],
        tail: &dyn Fn(usize, usize) -> C64,
        sum: &mut C64,
    ) {
        if level == qs.len() {
            *sum += partial * tail(r_multi, prev);
            return;
        }
        let q = &qs[level];
        let nn = q.n();
        for r in 0..nn {
            let z = q.entry(prev, r, cs[level]);
            if z == ZERO {
                continue;
            }
            accumulate(level + 1, r, r_multi * nn + r, partial * z, cs, qs, tail, sum);
        }
    }

    build_ueb(dim, vec![element_dim, nn], tol, |k, row, col| {
        let (a, r0) = (k / nn, k % nn);
        let (c_multi, d) = (row / n, row % n);
        let (e, f) = (col / n, col % n);
        let mut cs = vec![0; arity];
        let mut rest = c_multi;
        for slot in cs.iter_mut().rev() {
            *slot = rest % nn;
            rest /= nn;
        }
        let vf = v.item(&[r0]);
        let tail = |r_multi: usize, r_last: usize| vf.entry(a, r_multi, e) * w.entry(r_last, d, f);
        let mut sum = ZERO;
        accumulate(0, r0, 0, C64::new(1.0, 0.0), &cs, qs, &tail, &mut sum);
        sum
    })
}
