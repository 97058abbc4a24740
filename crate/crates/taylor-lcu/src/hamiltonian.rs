//! Hamiltonians as weighted sums of unitary terms, plus instance I/O.
//!
//! The engine consumes `H = sum_l alpha_l U_l` with strictly positive
//! weights and unitary terms whose weighted sum is Hermitian. That shape is
//! fully general (any Hermitian matrix can be written this way) and is what
//! the segment expansion and the correction operator are built from.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::MATRIX_TOL;
use crate::linalg::ComplexMatrix;

/// Largest accepted system dimension; dense algebra beyond ~2^10 is out of
/// scope for this engine.
pub const MAX_DIM: usize = 1024;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-qubit Pauli matrices in the computational basis.
pub fn pauli_matrix(p: char) -> Option<ComplexMatrix> {
    let m = match p {
        'I' => ComplexMatrix::identity(2),
        'X' => ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
        'Y' => ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]),
        'Z' => ComplexMatrix::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
        _ => return None,
    };
    Some(m)
}

/// How a term was specified, kept so instances serialize back in the same
/// form they were given.
#[derive(Debug, Clone, PartialEq)]
pub enum TermSource {
    Pauli(String),
    Explicit,
}

/// One weighted unitary term.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionTerm {
    pub weight: f64,
    pub unitary: ComplexMatrix,
    pub source: TermSource,
}

/// `H = sum_l weight_l * unitary_l` over a fixed system dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianDecomposition {
    dim: usize,
    terms: Vec<DecompositionTerm>,
}

/// A single violated invariant, with the offending term (when term-local)
/// and the measured residual.
#[derive(Debug, Clone)]
pub struct Violation {
    pub term: Option<usize>,
    pub message: String,
    pub residual: f64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.term {
            Some(i) => write!(f, "term {}: {} (residual {:.3e})", i, self.message, self.residual),
            None => write!(f, "{} (residual {:.3e})", self.message, self.residual),
        }
    }
}

impl HamiltonianDecomposition {
    pub fn new(dim: usize, terms: Vec<DecompositionTerm>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("system dimension must be at least 1"));
        }
        if dim > MAX_DIM {
            return Err(Error::TooLarge(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        if terms.is_empty() {
            return Err(Error::invalid("decomposition needs at least one term"));
        }
        for (i, term) in terms.iter().enumerate() {
            if term.unitary.dim() != dim {
                return Err(Error::invalid(format!(
                    "term {i} has dimension {} but the system has {dim}",
                    term.unitary.dim()
                )));
            }
            if !term.unitary.all_finite() || !term.weight.is_finite() {
                return Err(Error::invalid(format!("term {i} has non-finite entries")));
            }
        }
        Ok(Self { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[DecompositionTerm] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Check every structural invariant; returns the full violation list
    /// rather than stopping at the first.
    pub fn validate(&self) -> Result<Vec<Violation>> {
        let mut violations = Vec::new();
        for (i, term) in self.terms.iter().enumerate() {
            if term.weight <= 0.0 {
                violations.push(Violation {
                    term: Some(i),
                    message: format!("weight {} is not strictly positive", term.weight),
                    residual: term.weight,
                });
            }
            let resid = term.unitary.unitarity_residual();
            if resid > MATRIX_TOL {
                violations.push(Violation {
                    term: Some(i),
                    message: "term is not unitary".into(),
                    residual: resid,
                });
            }
        }
        let sum = self.weighted_sum();
        let herm = sum.hermiticity_residual();
        if herm > MATRIX_TOL {
            violations.push(Violation {
                term: None,
                message: "assembled sum is not Hermitian".into(),
                residual: herm,
            });
        }
        Ok(violations)
    }

    fn weighted_sum(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for term in &self.terms {
            acc = acc.add(&term.unitary.scaled(c(term.weight, 0.0)));
        }
        acc
    }

    /// Assemble the Hamiltonian matrix. Fails if validation does.
    pub fn assemble(&self) -> Result<ComplexMatrix> {
        let violations = self.validate()?;
        if !violations.is_empty() {
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::invalid(format!(
                "decomposition invalid: {}",
                list.join("; ")
            )));
        }
        Ok(self.weighted_sum())
    }

    /// Decomposition strength: `A = sum of weights`, `T = A * t`.
    pub fn strength(&self, t: f64) -> (f64, f64) {
        let a: f64 = self.terms.iter().map(|term| term.weight).sum();
        (a, a * t)
    }

    /// Build from Pauli words over {I, X, Y, Z}.
    pub fn from_pauli_terms(n_qubits: usize, spec: &[(f64, &str)]) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 10 {
            return Err(Error::invalid(format!(
                "n_qubits must be between 1 and 10, got {n_qubits}"
            )));
        }
        let dim = 1usize << n_qubits;
        let mut terms = Vec::with_capacity(spec.len());
        for (i, (weight, word)) in spec.iter().enumerate() {
            let unitary = pauli_word_matrix(n_qubits, word).map_err(|e| match e {
                Error::Parse { path, reason } => Error::Parse {
                    path: format!("terms[{i}].{path}"),
                    reason,
                },
                other => other,
            })?;
            terms.push(DecompositionTerm {
                weight: *weight,
                unitary,
                source: TermSource::Pauli(word.to_string()),
            });
        }
        Self::new(dim, terms)
    }
}

/// Tensor product of single-qubit Paulis, leftmost character acting on the
/// most significant qubit.
pub fn pauli_word_matrix(n_qubits: usize, word: &str) -> Result<ComplexMatrix> {
    if word.chars().count() != n_qubits {
        return Err(Error::Parse {
            path: "pauli".into(),
            reason: format!(
                "word '{word}' has length {} but the system has {n_qubits} qubits",
                word.chars().count()
            ),
        });
    }
    let mut acc = ComplexMatrix::identity(1);
    for ch in word.chars() {
        let factor = pauli_matrix(ch).ok_or_else(|| Error::Parse {
            path: "pauli".into(),
            reason: format!("invalid Pauli character '{ch}' (expected I, X, Y or Z)"),
        })?;
        acc = acc.kron(&factor);
    }
    Ok(acc)
}

/// A simulation problem: the decomposition plus time and accuracy targets.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub decomposition: HamiltonianDecomposition,
    pub t: f64,
    pub epsilon: f64,
    pub delta: f64,
}

/// Default intermediate accuracy: slightly below 1/2 so a single
/// amplification round suffices for the correction stage.
pub const DEFAULT_DELTA: f64 = 0.49;

impl ProblemInstance {
    pub fn new(
        decomposition: HamiltonianDecomposition,
        t: f64,
        epsilon: f64,
        delta: f64,
    ) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::invalid(format!("t must be finite and >= 0, got {t}")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::invalid(format!("delta must lie in (0, 1/2), got {delta}")));
        }
        if epsilon >= delta {
            return Err(Error::invalid(format!(
                "the corrected regime needs epsilon < delta, got epsilon {epsilon} >= delta {delta}"
            )));
        }
        Ok(Self {
            decomposition,
            t,
            epsilon,
            delta,
        })
    }

    /// `(A, T)` for this instance.
    pub fn strength(&self) -> (f64, f64) {
        self.decomposition.strength(self.t)
    }
}

// ---------------------------------------------------------------------------
// Instance documents (JSON)
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct TermDoc {
    alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pauli: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    n_qubits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    terms: Vec<TermDoc>,
    t: f64,
    epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
}

fn parse_err(path: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        reason: reason.into(),
    }
}

/// Parse an instance document.
///
/// Structural schema problems (types, missing fields, inconsistent
/// dimensions, out-of-range scalars) are parse errors carrying the offending
/// field path. Semantic problems (non-unitary terms, non-Hermitian sums) are
/// left for [`HamiltonianDecomposition::validate`] so they can be reported
/// as a violation list.
pub fn parse_instance(document: &str) -> Result<ProblemInstance> {
    let doc: InstanceDoc = serde_json::from_str(document)
        .map_err(|e| parse_err("<document>", e.to_string()))?;

    if doc.terms.is_empty() {
        return Err(parse_err("terms", "at least one term is required"));
    }

    // Resolve the target dimension: n_qubits wins, then dim, then inference
    // from the first term.
    let mut target_dim: Option<usize> = None;
    if let Some(n) = doc.n_qubits {
        if n == 0 || n > 10 {
            return Err(parse_err("n_qubits", format!("must be in 1..=10, got {n}")));
        }
        target_dim = Some(1usize << n);
    }
    if let Some(d) = doc.dim {
        if d == 0 || d > MAX_DIM {
            return Err(parse_err("dim", format!("must be in 1..={MAX_DIM}, got {d}")));
        }
        match target_dim {
            Some(td) if td != d => {
                return Err(parse_err(
                    "dim",
                    format!("dim {d} contradicts n_qubits (2^n = {td})"),
                ));
            }
            _ => target_dim = Some(d),
        }
    }

    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, term) in doc.terms.iter().enumerate() {
        if !term.alpha.is_finite() {
            return Err(parse_err(format!("terms[{i}].alpha"), "must be finite"));
        }
        let (unitary, source) = match (&term.pauli, &term.matrix) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(parse_err(
                    format!("terms[{i}]"),
                    "exactly one of 'pauli' or 'matrix' is required",
                ));
            }
            (Some(word), None) => {
                let n = match target_dim {
                    Some(d) => {
                        if !d.is_power_of_two() {
                            return Err(parse_err(
                                format!("terms[{i}].pauli"),
                                format!("pauli terms need a power-of-two dimension, got {d}"),
                            ));
                        }
                        d.trailing_zeros() as usize
                    }
                    None => {
                        let n = word.chars().count();
                        if n == 0 || n > 10 {
                            return Err(parse_err(
                                format!("terms[{i}].pauli"),
                                "word length must be in 1..=10",
                            ));
                        }
                        target_dim = Some(1usize << n);
                        n
                    }
                };
                let m = pauli_word_matrix(n, word).map_err(|e| match e {
                    Error::Parse { reason, .. } => parse_err(format!("terms[{i}].pauli"), reason),
                    other => other,
                })?;
                (m, TermSource::Pauli(word.clone()))
            }
            (None, Some(rows)) => {
                let d = rows.len();
                if d == 0 || d > MAX_DIM {
                    return Err(parse_err(
                        format!("terms[{i}].matrix"),
                        format!("row count must be in 1..={MAX_DIM}"),
                    ));
                }
                match target_dim {
                    Some(td) if td != d => {
                        return Err(parse_err(
                            format!("terms[{i}].matrix"),
                            format!("matrix is {d}x{d} but the system dimension is {td}"),
                        ));
                    }
                    None => target_dim = Some(d),
                    _ => {}
                }
                let mut data = Vec::with_capacity(d * d);
                for (ri, row) in rows.iter().enumerate() {
                    if row.len() != d {
                        return Err(parse_err(
                            format!("terms[{i}].matrix[{ri}]"),
                            format!("expected {d} entries, got {}", row.len()),
                        ));
                    }
                    for (ci, &[re, im]) in row.iter().enumerate() {
                        if !re.is_finite() || !im.is_finite() {
                            return Err(parse_err(
                                format!("terms[{i}].matrix[{ri}][{ci}]"),
                                "entries must be finite",
                            ));
                        }
                        data.push(c(re, im));
                    }
                }
                (ComplexMatrix::new(d, data), TermSource::Explicit)
            }
        };
        terms.push(DecompositionTerm {
            weight: term.alpha,
            unitary,
            source,
        });
    }

    let dim = target_dim.expect("at least one term fixes the dimension");
    let decomposition = HamiltonianDecomposition::new(dim, terms)?;

    if !doc.t.is_finite() || doc.t < 0.0 {
        return Err(parse_err("t", format!("must be finite and >= 0, got {}", doc.t)));
    }
    if !(doc.epsilon > 0.0 && doc.epsilon < 1.0) {
        return Err(parse_err("epsilon", format!("must lie in (0, 1), got {}", doc.epsilon)));
    }
    let delta = doc.delta.unwrap_or(DEFAULT_DELTA);
    if !(delta > 0.0 && delta < 0.5) {
        return Err(parse_err("delta", format!("must lie in (0, 1/2), got {delta}")));
    }
    if doc.epsilon >= delta {
        return Err(parse_err(
            "epsilon",
            format!("must be below delta ({delta}), got {}", doc.epsilon),
        ));
    }

    ProblemInstance::new(decomposition, doc.t, doc.epsilon, delta)
}

/// Serialize back to the document form; inverse of [`parse_instance`].
pub fn serialize_instance(instance: &ProblemInstance) -> String {
    let d = &instance.decomposition;
    let all_pauli = d
        .terms()
        .iter()
        .all(|t| matches!(t.source, TermSource::Pauli(_)));
    let n_qubits = if all_pauli && d.dim().is_power_of_two() {
        Some(d.dim().trailing_zeros() as usize)
    } else {
        None
    };
    let terms = d
        .terms()
        .iter()
        .map(|term| match &term.source {
            TermSource::Pauli(word) => TermDoc {
                alpha: term.weight,
                pauli: Some(word.clone()),
                matrix: None,
            },
            TermSource::Explicit => {
                let m = &term.unitary;
                let rows = (0..m.dim())
                    .map(|i| {
                        (0..m.dim())
                            .map(|j| {
                                let z = m.get(i, j);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect();
                TermDoc {
                    alpha: term.weight,
                    pauli: None,
                    matrix: Some(rows),
                }
            }
        })
        .collect();
    let doc = InstanceDoc {
        n_qubits,
        dim: if n_qubits.is_none() { Some(d.dim()) } else { None },
        terms,
        t: instance.t,
        epsilon: instance.epsilon,
        delta: Some(instance.delta),
    };
    serde_json::to_string_pretty(&doc).expect("instance documents always serialize")
}

/// Deterministic random Pauli instance, used by the harness `--seed` mode
/// and the certification suites (1-2 qubits, up to 4 terms, `T <= max_t`).
pub fn random_pauli_instance(seed: u64, max_scaled_time: f64, epsilon: f64) -> ProblemInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_qubits = rng.gen_range(1..=2usize);
    let n_terms = rng.gen_range(1..=4usize);
    let alphabet = ['I', 'X', 'Y', 'Z'];
    let spec: Vec<(f64, String)> = (0..n_terms)
        .map(|_| {
            let weight = rng.gen_range(0.05..1.0);
            let word: String = (0..n_qubits)
                .map(|_| alphabet[rng.gen_range(0..4)])
                .collect();
            (weight, word)
        })
        .collect();
    let borrowed: Vec<(f64, &str)> = spec.iter().map(|(w, s)| (*w, s.as_str())).collect();
    let decomposition = HamiltonianDecomposition::from_pauli_terms(n_qubits, &borrowed)
        .expect("generated words are always valid");
    let (a, _) = decomposition.strength(1.0);
    let target_t = rng.gen_range(0.1..max_scaled_time);
    let t = target_t / a;
    ProblemInstance::new(decomposition, t, epsilon, DEFAULT_DELTA)
        .expect("generated instances satisfy the preconditions")
}
