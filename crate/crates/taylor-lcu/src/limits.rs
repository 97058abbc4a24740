//! Tolerances and resource guards, in one place.
//!
//! All arithmetic is IEEE 754 binary64 complex. The engine's own noise floor
//! is well below 1e-13; every tolerance here sits at least an order of
//! magnitude above the rounding it absorbs.

/// Unitarity / Hermiticity tolerance for user-supplied and derived matrices.
/// 100x above the f64 noise floor of the checks that use it.
pub const MATRIX_TOL: f64 = 1e-12;

/// Unitarity tolerance for composite circuit operators (products of several
/// constructed unitaries accumulate a little more rounding).
pub const CIRCUIT_TOL: f64 = 1e-11;

/// Additive floor applied to bound assertions whose mathematical value can
/// sit below what binary64 subtraction of near-unitary matrices resolves.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Hard cap on LCU word-list materialization (sum of L^k over word lengths).
pub const MAX_WORDS: usize = 1_000_000;

/// Circuit-mode refusal threshold on the ancilla register dimension.
pub const MAX_ANCILLA: usize = 4096;

/// Hard cap on the correction truncation order; bounds every series cap and
/// keeps schedule construction O(cap^2) in the worst case.
pub const MAX_ORDER: usize = 20_000;
