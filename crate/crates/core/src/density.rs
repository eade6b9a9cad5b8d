//! Density matrices of two and three qubits: validation, the Fano (Pauli
//! basis) decomposition, partial traces and von Neumann entropy.
//!
//! Basis ordering is the usual computational one with the first label as
//! the most significant bit: for two qubits `|00>, |01>, |10>, |11>`.

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as zero.
pub const PSD_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix `s_i`, with `s_0` the identity.
pub fn pauli(i: usize) -> Matrix2<Complex64> {
    match i {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {i} out of range"),
    }
}

fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Dense density matrix over 2 or 3 labelled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
    labels: Vec<String>,
}

impl DensityMatrix {
    /// Wraps `entries` without checking the physical invariants; see
    /// [`validate_state`] for those.
    pub fn new(entries: DMatrix<Complex64>, labels: Vec<String>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected square",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dim = entries.nrows();
        if dim != 4 && dim != 8 {
            return Err(Error::Dimension(format!(
                "unsupported dimension {dim}, expected 4 or 8"
            )));
        }
        if 1usize << labels.len() != dim {
            return Err(Error::Dimension(format!(
                "{} labels do not match dimension {dim}",
                labels.len()
            )));
        }
        Ok(Self { entries, labels })
    }

    /// Two-qubit state labelled `["A", "B"]`.
    pub fn two_qubit(entries: DMatrix<Complex64>) -> Result<Self> {
        Self::new(entries, default_labels(2))
    }

    /// Builds a real-valued state from row-major entries.
    pub fn from_real(dim: usize, values: &[f64], labels: &[&str]) -> Result<Self> {
        if values.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} values cannot fill a {dim}x{dim} matrix",
                values.len()
            )));
        }
        let entries = DMatrix::from_row_iterator(dim, dim, values.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(entries, labels.iter().map(|s| s.to_string()).collect())
    }

    /// Projector `|psi><psi|`; `psi` is normalised here.
    pub fn pure(psi: &[Complex64], labels: &[&str]) -> Result<Self> {
        let norm = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Argument("zero state vector".into()));
        }
        let n = psi.len();
        let entries = DMatrix::from_fn(n, n, |r, c| psi[r] * psi[c].conj() / (norm * norm));
        Self::new(entries, labels.iter().map(|s| s.to_string()).collect())
    }

    /// `I / 4` on two qubits.
    pub fn maximally_mixed_two_qubit() -> Self {
        let entries = DMatrix::from_diagonal_element(4, 4, Complex64::new(0.25, 0.0));
        Self::two_qubit(entries).expect("4x4")
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Element `eta_{ij}` with zero-based indices.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `U rho U^dagger`.
    pub fn conjugate_by(&self, unitary: &DMatrix<Complex64>) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::Dimension("unitary does not match state dimension".into()));
        }
        Self::new(unitary * &self.entries * unitary.adjoint(), self.labels.clone())
    }

    /// Returns the state if it passes [`validate_state`], otherwise an
    /// error naming the first violated invariant.
    pub fn validated(self) -> Result<Self> {
        let report = validate_state(&self);
        match report.first_failure() {
            None => Ok(self),
            Some(check) => Err(Error::Domain(format!(
                "{} violated by {:e} (tolerance {:e})",
                check.name, check.violation, check.tolerance
            ))),
        }
    }
}

fn default_labels(n: usize) -> Vec<String> {
    match n {
        3 => vec!["A".into(), "B_I".into(), "B_II".into()],
        _ => vec!["A".into(), "B".into()],
    }
}

/// Outcome of checking one density-matrix invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub violation: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub hermitian: InvariantCheck,
    pub unit_trace: InvariantCheck,
    pub positive_semidefinite: InvariantCheck,
    pub passed: bool,
}

impl ValidationReport {
    pub fn checks(&self) -> [&InvariantCheck; 3] {
        [&self.hermitian, &self.unit_trace, &self.positive_semidefinite]
    }

    pub fn first_failure(&self) -> Option<&InvariantCheck> {
        self.checks().into_iter().find(|c| !c.passed)
    }
}

/// Checks Hermiticity, unit trace and positivity. Violation magnitudes are
/// `max |rho_ij - conj(rho_ji)|`, `|tr rho - 1|` and `max(0, -lambda_min)`.
pub fn validate_state(rho: &DensityMatrix) -> ValidationReport {
    let m = rho.entries();
    let n = rho.dim();
    let mut herm = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            herm = herm.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    let tr = rho.trace();
    let trace_dev = (tr - ONE).norm();
    let min_ev = rho.eigenvalues()[0];
    let psd_dev = (-min_ev).max(0.0);

    let hermitian = InvariantCheck {
        name: "hermiticity",
        passed: herm <= HERMITICITY_TOL,
        violation: herm,
        tolerance: HERMITICITY_TOL,
    };
    let unit_trace = InvariantCheck {
        name: "unit trace",
        passed: trace_dev <= TRACE_TOL,
        violation: trace_dev,
        tolerance: TRACE_TOL,
    };
    let positive_semidefinite = InvariantCheck {
        name: "positive semidefiniteness",
        passed: min_ev >= -PSD_TOL,
        violation: psd_dev,
        tolerance: PSD_TOL,
    };
    let passed = hermitian.passed && unit_trace.passed && positive_semidefinite.passed;
    ValidationReport { dim: n, hermitian, unit_trace, positive_semidefinite, passed }
}

/// Local Bloch vectors and correlation block of a two-qubit state.
///
/// `r_full[i][j] = <s_i (x) s_j>` with the row index on the first qubit:
/// ```text
/// [ 1   w1  w2  w3 ]
/// [ v1  T11 T12 T13 ]
/// [ v2  T21 T22 T23 ]
/// [ v3  T31 T32 T33 ]
/// ```
/// so that a product state gives a rank-one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FanoForm {
    v: Vector3<f64>,
    w: Vector3<f64>,
    theta: Matrix3<f64>,
    r_full: Matrix4<f64>,
}

impl FanoForm {
    pub fn new(v: Vector3<f64>, w: Vector3<f64>, theta: Matrix3<f64>) -> Self {
        let mut r_full = Matrix4::zeros();
        r_full[(0, 0)] = 1.0;
        for k in 0..3 {
            r_full[(k + 1, 0)] = v[k];
            r_full[(0, k + 1)] = w[k];
            for l in 0..3 {
                r_full[(k + 1, l + 1)] = theta[(k, l)];
            }
        }
        Self { v, w, theta, r_full }
    }

    /// First qubit's Bloch vector.
    pub fn v(&self) -> &Vector3<f64> {
        &self.v
    }

    /// Second qubit's Bloch vector.
    pub fn w(&self) -> &Vector3<f64> {
        &self.w
    }

    pub fn theta(&self) -> &Matrix3<f64> {
        &self.theta
    }

    pub fn r_full(&self) -> &Matrix4<f64> {
        &self.r_full
    }
}

fn expectation(rho: &DMatrix<Complex64>, op: &Matrix4<Complex64>) -> Complex64 {
    let mut acc = ZERO;
    for r in 0..4 {
        for c in 0..4 {
            acc += rho[(r, c)] * op[(c, r)];
        }
    }
    acc
}

pub fn bloch_decompose(rho: &DensityMatrix) -> Result<FanoForm> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!(
            "Fano decomposition needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.entries();
    let mut r = [[0.0f64; 4]; 4];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = expectation(m, &kron2(&pauli(i), &pauli(j))).re;
        }
    }
    let v = Vector3::new(r[1][0], r[2][0], r[3][0]);
    let w = Vector3::new(r[0][1], r[0][2], r[0][3]);
    let theta = Matrix3::from_fn(|k, l| r[k + 1][l + 1]);
    Ok(FanoForm::new(v, w, theta))
}

/// `(1/4) sum_ij R_ij s_i (x) s_j`. Positivity is not guaranteed.
pub fn fano_compose(f: &FanoForm) -> DensityMatrix {
    let mut acc = Matrix4::<Complex64>::zeros();
    let mut add = |coef: f64, i: usize, j: usize| {
        if coef != 0.0 {
            acc += kron2(&pauli(i), &pauli(j)) * Complex64::new(coef, 0.0);
        }
    };
    add(1.0, 0, 0);
    for k in 0..3 {
        add(f.v[k], k + 1, 0);
        add(f.w[k], 0, k + 1);
        for l in 0..3 {
            add(f.theta[(k, l)], k + 1, l + 1);
        }
    }
    let entries = DMatrix::from_fn(4, 4, |r, c| acc[(r, c)] * 0.25);
    DensityMatrix::two_qubit(entries).expect("4x4")
}

/// Reduced state over the qubits in `keep`, ordered as given.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    if keep.is_empty() || keep.len() >= n {
        return Err(Error::Argument(format!(
            "keep must be a non-empty strict subset of {n} qubits, got {keep:?}"
        )));
    }
    let mut seen = vec![false; n];
    for &q in keep {
        if q >= n || seen[q] {
            return Err(Error::Argument(format!("invalid keep list {keep:?}")));
        }
        seen[q] = true;
    }
    let traced: Vec<usize> = (0..n).filter(|q| !seen[*q]).collect();

    // qubit q sits at bit (n - 1 - q) of the full index
    let place = |qubits: &[usize], bits: usize| -> usize {
        let k = qubits.len();
        qubits
            .iter()
            .enumerate()
            .fold(0, |acc, (pos, &q)| acc | (((bits >> (k - 1 - pos)) & 1) << (n - 1 - q)))
    };

    let out_dim = 1 << keep.len();
    let m = rho.entries();
    let mut out = DMatrix::<Complex64>::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        let rk = place(keep, r);
        for c in 0..out_dim {
            let ck = place(keep, c);
            let mut acc = ZERO;
            for t in 0..(1 << traced.len()) {
                let tb = place(&traced, t);
                acc += m[(rk | tb, ck | tb)];
            }
            out[(r, c)] = acc;
        }
    }
    let labels = keep.iter().map(|&q| rho.labels[q].clone()).collect();
    build_reduced(out, labels)
}

fn build_reduced(entries: DMatrix<Complex64>, labels: Vec<String>) -> Result<DensityMatrix> {
    // single-qubit marginals are allowed as outputs even though the public
    // constructor only accepts 4 and 8
    if entries.nrows() == 2 {
        return Ok(DensityMatrix { entries, labels });
    }
    DensityMatrix::new(entries, labels)
}

/// `x log2 x` with `0 log 0 = 0`.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of a probability list.
pub fn shannon_bits(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| xlog2x(p)).sum::<f64>()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ev = rho.eigenvalues();
    if ev[0] < -PSD_TOL {
        return Err(Error::Positivity { min_eigenvalue: ev[0] });
    }
    let clamped: Vec<f64> = ev.iter().map(|&l| l.clamp(0.0, 1.0)).collect();
    Ok(shannon_bits(&clamped).max(0.0))
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    dim: usize,
    labels: Vec<String>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl DensityMatrix {
    pub fn to_json(&self) -> String {
        let n = self.dim();
        let doc = DensityMatrixJson {
            dim: n,
            labels: self.labels.clone(),
            re: (0..n).map(|r| (0..n).map(|c| self.entries[(r, c)].re).collect()).collect(),
            im: (0..n).map(|r| (0..n).map(|c| self.entries[(r, c)].im).collect()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DensityMatrixJson = serde_json::from_str(text)?;
        let n = doc.dim;
        let rows_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !rows_ok(&doc.re) || !rows_ok(&doc.im) {
            return Err(Error::Dimension(format!("re/im arrays are not {n}x{n}")));
        }
        let entries = DMatrix::from_fn(n, n, |r, c| Complex64::new(doc.re[r][c], doc.im[r][c]));
        Self::new(entries, doc.labels)
    }
}
