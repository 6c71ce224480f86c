//! Equivalence of Hadamard matrices and unitary error bases, and the two
//! equivalence-invariant obstructions used to separate an error basis from
//! nice and shift-and-multiply bases.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{commutes, dagger, proportional, CMatrix, Tolerance, C64, ONE};
use crate::structures::{verify_hadamard, HadamardMatrix, UnitaryErrorBasis};

/// Largest dimension accepted by [`hadamard_equivalent`].
pub const MAX_HADAMARD_SEARCH_DIM: usize = 6;

/// Largest element count accepted by [`max_commuting_subset`].
pub const MAX_CLIQUE_VERTICES: usize = 256;

/// Multiplies rows and columns by phases so that the first row and column
/// are all ones.
pub fn dephase_hadamard(h: &HadamardMatrix) -> HadamardMatrix {
    let n = h.n();
    let h00 = h.entry(0, 0);
    let out = CMatrix::from_fn(n, n, |a, b| {
        if a == 0 || b == 0 {
            ONE
        } else {
            h.entry(a, b) * h.entry(a, 0).conj() * h.entry(0, b).conj() * h00
        }
    });
    HadamardMatrix::new_unchecked(out)
}

/// Witness for `W_{a,b} = c_a d_b H_{σ(a),τ(b)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HadEquivalenceWitness {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_phases: Vec<C64>,
    pub col_phases: Vec<C64>,
}

impl HadEquivalenceWitness {
    pub fn identity(n: usize) -> Self {
        Self {
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
            row_phases: vec![ONE; n],
            col_phases: vec![ONE; n],
        }
    }

    /// `c_a d_b H_{σ(a),τ(b)}`.
    pub fn apply(&self, h: &CMatrix) -> CMatrix {
        let n = self.row_perm.len();
        CMatrix::from_fn(n, n, |a, b| {
            self.row_phases[a] * self.col_phases[b] * h[(self.row_perm[a], self.col_perm[b])]
        })
    }

    /// Witness mapping `W` back to `H`.
    pub fn inverse(&self) -> Self {
        let n = self.row_perm.len();
        let mut row_perm = vec![0; n];
        let mut col_perm = vec![0; n];
        for a in 0..n {
            row_perm[self.row_perm[a]] = a;
            col_perm[self.col_perm[a]] = a;
        }
        Self {
            row_phases: row_perm.iter().map(|&a| self.row_phases[a].conj()).collect(),
            col_phases: col_perm.iter().map(|&b| self.col_phases[b].conj()).collect(),
            row_perm,
            col_perm,
        }
    }

    pub fn max_phase_defect(&self) -> f64 {
        self.row_phases
            .iter()
            .chain(&self.col_phases)
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Exhaustive search for `σ, τ, c, d` with `W_{a,b} = c_a d_b H_{σ(a),τ(b)}`.
///
/// Both inputs must pass the Hadamard verifier; dimensions above
/// [`MAX_HADAMARD_SEARCH_DIM`] are refused. For each pair of permutations the
/// phases are forced by the first column and first row. The first witness in
/// lexicographic `(σ, τ)` order is returned.
pub fn hadamard_equivalent(h: &CMatrix, w: &CMatrix, tol: &Tolerance) -> Result<Option<HadEquivalenceWitness>> {
    for (name, m) in [("first", h), ("second", w)] {
        let report = verify_hadamard(m, tol);
        if !report.passed() {
            return Err(Error::VerificationFailed {
                kind: "hadamard".into(),
                summary: format!("{name} matrix: {}", report.summary()),
            });
        }
    }
    let n = h.rows();
    if w.rows() != n {
        return Err(Error::DimensionMismatch(format!("dimensions {n} and {}", w.rows())));
    }
    if n > MAX_HADAMARD_SEARCH_DIM {
        return Err(Error::Capability(format!(
            "exhaustive equivalence search is limited to n <= {MAX_HADAMARD_SEARCH_DIM}, got {n}"
        )));
    }

    let perms = permutations(n);
    let eps = tol.compare_tol;
    let mut c = vec![ONE; n];
    let mut d = vec![ONE; n];
    for sigma in &perms {
        for tau in &perms {
            // |H| = 1, so division is multiplication by the conjugate.
            for a in 0..n {
                c[a] = w[(a, 0)] * h[(sigma[a], tau[0])].conj();
            }
            for b in 0..n {
                d[b] = w[(0, b)] * h[(sigma[0], tau[b])].conj() * c[0].conj();
            }
            let fits = (0..n).all(|a| (0..n).all(|b| (c[a] * d[b] * h[(sigma[a], tau[b])] - w[(a, b)]).norm() <= eps));
            if fits {
                return Ok(Some(HadEquivalenceWitness {
                    row_perm: sigma.clone(),
                    col_perm: tau.clone(),
                    row_phases: c,
                    col_phases: d,
                }));
            }
        }
    }
    Ok(None)
}

/// Left-multiplies every element by the adjoint of element `pivot`, which
/// becomes the identity.
pub fn ueb_normalize(u: &UnitaryErrorBasis, pivot: usize, tol: &Tolerance) -> Result<UnitaryErrorBasis> {
    if pivot >= u.len() {
        return Err(Error::IndexOutOfRange {
            index: pivot,
            size: u.len(),
        });
    }
    let p = dagger(u.element(pivot));
    let elements = u.elements().iter().map(|e| &p * e).collect();
    UnitaryErrorBasis::new(elements, tol)?.with_label_dims(u.label_dims().to_vec())
}

/// Result of [`adjoint_closed_up_to_phase`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointClosure {
    pub closed: bool,
    /// First element whose adjoint is proportional to no element.
    pub witness: Option<usize>,
}

/// Whether the adjoint of every element is proportional to some element.
pub fn adjoint_closed_up_to_phase(u: &UnitaryErrorBasis, tol: &Tolerance) -> AdjointClosure {
    let witness = u.elements().iter().position(|e| {
        let adj = dagger(e);
        !u.elements().iter().any(|f| proportional(&adj, f, tol))
    });
    AdjointClosure {
        closed: witness.is_none(),
        witness,
    }
}

/// Graph on basis elements with edges between commuting pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommGraph {
    /// Element position of each vertex.
    pub vertices: Vec<usize>,
    /// Printed label of each vertex (1-based).
    pub labels: Vec<String>,
    pub adjacency: Vec<Vec<bool>>,
    pub identity_excluded: bool,
}

impl CommGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .collect()
    }

    fn vertex_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Whether the vertices carrying these labels are joined.
    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.vertex_of_label(a), self.vertex_of_label(b)) {
            (Some(i), Some(j)) => self.adjacency[i][j],
            _ => false,
        }
    }

    /// Lexicographically least maximum clique, as vertex positions.
    pub fn max_clique(&self) -> Vec<usize> {
        maximum_clique(&self.adjacency)
    }
}

/// Builds the commutativity graph, optionally dropping elements proportional
/// to the identity.
pub fn commutativity_graph(u: &UnitaryErrorBasis, tol: &Tolerance, exclude_identity: bool) -> CommGraph {
    let id = CMatrix::identity(u.n());
    let vertices: Vec<usize> = (0..u.len())
        .filter(|&k| !(exclude_identity && proportional(u.element(k), &id, tol)))
        .collect();
    let m = vertices.len();
    let mut adjacency = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let c = commutes(u.element(vertices[i]), u.element(vertices[j]), tol).expect("equal square shapes");
            adjacency[i][j] = c;
            adjacency[j][i] = c;
        }
    }
    CommGraph {
        labels: vertices.iter().map(|&k| u.label_string(k)).collect(),
        vertices,
        adjacency,
        identity_excluded: exclude_identity,
    }
}

/// Largest set of pairwise-commuting elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxCommuting {
    pub size: usize,
    pub members: Vec<usize>,
    pub labels: Vec<String>,
}

/// Exact maximum pairwise-commuting subset, identity included.
pub fn max_commuting_subset(u: &UnitaryErrorBasis, tol: &Tolerance) -> Result<MaxCommuting> {
    if u.len() > MAX_CLIQUE_VERTICES {
        return Err(Error::Capability(format!(
            "clique search is limited to {MAX_CLIQUE_VERTICES} elements, got {}",
            u.len()
        )));
    }
    let graph = commutativity_graph(u, tol, false);
    let clique = graph.max_clique();
    Ok(MaxCommuting {
        size: clique.len(),
        members: clique.iter().map(|&v| graph.vertices[v]).collect(),
        labels: clique.iter().map(|&v| graph.labels[v].clone()).collect(),
    })
}

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn empty(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

/// Exact maximum clique by depth-first branch and bound.
///
/// Vertices are tried in ascending order and the incumbent is only replaced
/// by a strictly larger clique, so the result is the lexicographically least
/// maximum clique.
pub fn maximum_clique(adjacency: &[Vec<bool>]) -> Vec<usize> {
    let n = adjacency.len();
    let neighbors: Vec<Bitset> = adjacency
        .iter()
        .map(|row| {
            let mut b = Bitset::empty(n);
            for (j, _) in row.iter().enumerate().filter(|(_, &e)| e) {
                b.insert(j);
            }
            b
        })
        .collect();

    fn expand(current: &mut Vec<usize>, mut candidates: Bitset, neighbors: &[Bitset], best: &mut Vec<usize>) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        while let Some(v) = candidates.first() {
            if current.len() + candidates.count() <= best.len() {
                return;
            }
            candidates.remove(v);
            current.push(v);
            expand(current, candidates.and(&neighbors[v]), neighbors, best);
            current.pop();
        }
    }

    let mut all = Bitset::empty(n);
    for v in 0..n {
        all.insert(v);
    }
    let mut best = Vec::new();
    expand(&mut Vec::new(), all, &neighbors, &mut best);
    best
}
