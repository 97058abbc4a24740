//! Truncated scalar power series in the anti-Hermitian generator `-iH`.
//!
//! Every operator in the pipeline (the exact segment, its truncation, the
//! amplified segment, the correction) is a function of the single commuting
//! generator, so scalar coefficient sequences capture them exactly. The
//! adjoint acts coefficient-wise as `c_k -> conj(c_k) (-1)^k` because the
//! generator is anti-Hermitian.
//!
//! Products truncate at an explicit cap and never silently extend it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};

/// Compensated (Kahan) accumulator; tails near 1e-16 must be trustworthy.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Finite coefficient sequence `c_0 .. c_cap`; `c_k` multiplies the k-th
/// power of the generator. All slots up to the cap are stored explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Self { coeffs }
    }

    /// Zero series with the given truncation degree.
    pub fn zero(cap: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); cap + 1])
    }

    /// Constant 1 with the given truncation degree.
    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// Exponential series: `c_k = theta^k / k!` up to the cap.
    pub fn exp(theta: f64, cap: usize) -> Self {
        let mut coeffs = Vec::with_capacity(cap + 1);
        let mut c = 1.0f64;
        coeffs.push(Complex64::new(1.0, 0.0));
        for k in 1..=cap {
            c *= theta / k as f64;
            coeffs.push(Complex64::new(c, 0.0));
        }
        Self::new(coeffs)
    }

    /// Truncation degree (highest representable order).
    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of order `k`; zero beyond the cap.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Lowest order with a nonzero coefficient, if any.
    pub fn lowest_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.re != 0.0 || c.im != 0.0)
    }

    /// Zero out all coefficients above order `k`; the cap is unchanged.
    pub fn truncated(&self, k: usize) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().skip(k + 1) {
            *c = Complex64::new(0.0, 0.0);
        }
        out
    }

    /// Adjoint under the anti-Hermitian generator: `c_k -> conj(c_k)(-1)^k`.
    pub fn adjoint(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k % 2 == 0 {
                    c.conj()
                } else {
                    -c.conj()
                }
            })
            .collect();
        Self::new(coeffs)
    }

    /// Coefficient-wise sum; both operands must share a cap.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.cap(), rhs.cap(), "series caps must agree");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(coeffs)
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * z).collect())
    }

    /// Cauchy product truncated at `cap`.
    pub fn mul(&self, rhs: &Self, cap: usize) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > cap || (a.re == 0.0 && a.im == 0.0) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > cap {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Weighted absolute-coefficient sum `sum_k |c_k| y^k`.
    ///
    /// Evaluated at `y = A` this is the LCU normalization weight of the
    /// series; at `y = A x` it is the geometric majorant used by the
    /// truncation-tail certificates.
    pub fn majorant(&self, y: f64) -> f64 {
        debug_assert!(y >= 0.0);
        let mut acc = KahanSum::default();
        let mut power = 1.0f64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power *= y;
            }
            let mag = c.norm();
            if mag == 0.0 {
                continue;
            }
            let term = mag * power;
            if !term.is_finite() {
                return f64::INFINITY;
            }
            acc.add(term);
        }
        acc.value()
    }

    /// Largest coefficient distance to `rhs` (both padded with zeros).
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - rhs.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Evaluate the series on the generator `-iH`.
    pub fn materialize(&self, h: &ComplexMatrix) -> Result<ComplexMatrix> {
        linalg::materialize_series(&self.coeffs, h)
    }
}

/// Dropped tail `remainder = exact - truncated`.
///
/// Requires `truncated` to actually be a truncation of `exact`; the result
/// then has exact zeros through the truncation order.
pub fn remainder(exact: &PowerSeries, truncated: &PowerSeries) -> Result<PowerSeries> {
    if exact.cap() != truncated.cap() {
        return Err(Error::invalid("remainder: series caps must agree"));
    }
    let order = truncated.coeffs.iter().rposition(|c| c.re != 0.0 || c.im != 0.0);
    let order = order.unwrap_or(0);
    for k in 0..=exact.cap() {
        let want = if k <= order {
            exact.coeff(k)
        } else {
            Complex64::new(0.0, 0.0)
        };
        if truncated.coeff(k) != want {
            return Err(Error::invalid(format!(
                "remainder: operand is not a truncation of the exact series (order {k})"
            )));
        }
    }
    let coeffs = exact
        .coeffs
        .iter()
        .zip(&truncated.coeffs)
        .map(|(a, b)| a - b)
        .collect();
    Ok(PowerSeries::new(coeffs))
}

/// Remainder normalized by the exact segment: `adjoint(exact) * remainder`.
///
/// Coefficients vanish through the truncation order and obey
/// `|b_k| <= (2 theta)^k / k!`; the bound is checked, not assumed, and a
/// violation reports a series-arithmetic bug.
pub fn relative_remainder(
    exact: &PowerSeries,
    rem: &PowerSeries,
    cap: usize,
) -> Result<PowerSeries> {
    let vd = exact.adjoint().mul(rem, cap);
    let trunc_order = match rem.lowest_order() {
        Some(low) => low - 1,
        None => return Ok(vd), // zero remainder, nothing to certify
    };
    let theta = exact.coeff(1).re;
    let mut bound = 1.0f64;
    for k in 0..=cap {
        if k > 0 {
            bound *= 2.0 * theta / k as f64;
        }
        let mag = vd.coeff(k).norm();
        if k <= trunc_order {
            if mag != 0.0 {
                return Err(Error::consistency(
                    "relative_remainder",
                    format!("order {k} should vanish, got {mag:.3e}"),
                ));
            }
        } else if mag > bound * (1.0 + 1e-9) {
            return Err(Error::consistency(
                "relative_remainder",
                format!("|b_{k}| = {mag:.6e} exceeds (2 theta)^k/k! = {bound:.6e}"),
            ));
        }
    }
    Ok(vd)
}

/// Per-segment defect series of one amplified segment relative to the exact
/// evolution: the quantity whose inverse `r`-th power the correction expands.
///
/// `defect = d/2 - adj(d)/2 + adj(d) d + d^2/2 - adj(d) d^2 / 2` where `d` is
/// the relative remainder. Its lowest order is one above the truncation
/// order.
pub fn oaa_defect(rel_rem: &PowerSeries, cap: usize) -> PowerSeries {
    let half = Complex64::new(0.5, 0.0);
    let adj = rel_rem.adjoint();
    let sq = rel_rem.mul(rel_rem, cap);
    rel_rem
        .scaled(half)
        .add(&adj.scaled(-half))
        .add(&adj.mul(rel_rem, cap))
        .add(&sq.scaled(half))
        .add(&adj.mul(&sq, cap).scaled(-half))
}

/// The same defect computed two independent ways, used to certify
/// [`oaa_defect`] coefficient-wise.
#[derive(Debug, Clone)]
pub struct DefectForms {
    /// Fully expanded form in the truncated segment and the remainder.
    pub expanded: PowerSeries,
    /// Definitional form `1 - amplified_segment * adjoint(exact)`.
    pub definitional: PowerSeries,
}

/// Alternate constructions of the defect series. Test harnesses compare
/// these against [`oaa_defect`]; the definitional form is authoritative if
/// they ever disagree.
pub fn oaa_defect_forms(
    exact: &PowerSeries,
    truncated: &PowerSeries,
    rem: &PowerSeries,
    cap: usize,
) -> DefectForms {
    let half = Complex64::new(0.5, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let vt = truncated;
    let vt_adj = vt.adjoint();
    let d = rem;
    let d_adj = d.adjoint();
    let d2 = d.mul(d, cap);
    let d_adj2 = d_adj.mul(&d_adj, cap);

    let expanded = vt_adj
        .mul(d, cap)
        .add(&d_adj.mul(vt, cap).scaled(-Complex64::new(1.0, 0.0)))
        .add(&d_adj.mul(d, cap))
        .add(&vt_adj.mul(&vt_adj, cap).mul(&d2, cap))
        .add(&d_adj2.mul(&d2, cap))
        .add(&vt_adj.mul(&d_adj, cap).mul(&d2, cap).scaled(two))
        .add(&vt_adj.mul(vt, cap).mul(&d.mul(&d_adj, cap), cap))
        .add(&vt.mul(d, cap).mul(&d_adj2, cap))
        .scaled(half);

    let amplified = amplified_segment(vt, cap);
    let definitional = PowerSeries::one(cap)
        .add(&amplified.mul(&exact.adjoint(), cap).scaled(-Complex64::new(1.0, 0.0)));

    DefectForms {
        expanded,
        definitional,
    }
}

/// Correction coefficients: the series of `(1 - defect)^(-r)`, truncated at
/// `cap`, via the negative-binomial expansion.
///
/// Binomial weights are folded in incrementally (`* (r+k-1)/k` per power) so
/// intermediate values stay near the magnitude of the final coefficients.
/// The sum is finite because the defect starts strictly above order zero.
pub fn correction_coefficients(
    defect: &PowerSeries,
    segments: usize,
    cap: usize,
) -> Result<PowerSeries> {
    if segments == 0 {
        return Err(Error::invalid("correction_coefficients: need at least one segment"));
    }
    let low = defect.lowest_order();
    if low == Some(0) {
        return Err(Error::invalid(
            "correction_coefficients: defect must vanish at order zero",
        ));
    }
    let mut acc = PowerSeries::one(cap);
    let mut scaled_pow = PowerSeries::one(cap);
    let r = segments as f64;
    for k in 1..=cap {
        let ratio = (r + k as f64 - 1.0) / k as f64;
        scaled_pow = scaled_pow.mul(defect, cap).scaled(Complex64::new(ratio, 0.0));
        if !scaled_pow.is_finite() {
            return Err(Error::Numeric(
                "correction_coefficients: non-finite binomial term".into(),
            ));
        }
        if scaled_pow.is_zero() {
            break;
        }
        acc = acc.add(&scaled_pow);
    }
    if !acc.is_finite() {
        return Err(Error::Numeric("correction_coefficients: non-finite result".into()));
    }
    Ok(acc)
}

/// Series of one segment after a single amplification round:
/// `truncated * (3/2 - adjoint(truncated) * truncated / 2)`.
pub fn amplified_segment(truncated: &PowerSeries, cap: usize) -> PowerSeries {
    let inner = PowerSeries::one(cap)
        .scaled(Complex64::new(1.5, 0.0))
        .add(
            &truncated
                .adjoint()
                .mul(truncated, cap)
                .scaled(Complex64::new(-0.5, 0.0)),
        );
    truncated.mul(&inner, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exact_evolution, operator_distance};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(1.0), c(0.0), c(0.0), c(-1.0)])
    }

    fn random_series(rng: &mut impl Rng, cap: usize) -> PowerSeries {
        PowerSeries::new(
            (0..=cap)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn exp_series_coefficients() {
        let s = PowerSeries::exp(0.2, 2);
        assert!((s.coeff(0) - c(1.0)).norm() < 1e-16);
        assert!((s.coeff(1) - c(0.2)).norm() < 1e-16);
        assert!((s.coeff(2) - c(0.02)).norm() < 1e-17);

        let z = PowerSeries::exp(0.0, 4);
        assert_eq!(z.coeff(0), c(1.0));
        for k in 1..=4 {
            assert_eq!(z.coeff(k), c(0.0));
        }
    }

    #[test]
    fn exp_series_materializes_to_exact_evolution() {
        let h = sigma_z();
        let theta = 0.2;
        let s = PowerSeries::exp(theta, 40);
        let m = s.materialize(&h).unwrap();
        let u = exact_evolution(&h, theta).unwrap();
        assert!(operator_distance(&m, &u).unwrap() < 1e-14);
    }

    #[test]
    fn truncate_zeroes_high_orders() {
        let s = PowerSeries::exp(0.2, 6);
        let t = s.truncated(2);
        assert_eq!(t.coeff(2), s.coeff(2));
        assert_eq!(t.coeff(3), c(0.0));
        assert_eq!(t.cap(), 6);
        // K at or above the cap is the identity operation.
        assert_eq!(s.truncated(6), s);
        assert_eq!(s.truncated(10), s);
    }

    #[test]
    fn adjoint_is_involution_and_flips_exp_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_series(&mut rng, 9);
        assert_eq!(s.adjoint().adjoint(), s);

        let e = PowerSeries::exp(0.7, 12);
        let want = PowerSeries::exp(-0.7, 12);
        assert!(e.adjoint().max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn adjoint_matches_matrix_dagger() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = {
            let m = ComplexMatrix::from_fn(3, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            m.add(&m.dagger()).scaled(c(0.5))
        };
        for _ in 0..10 {
            let s = random_series(&mut rng, 7);
            let lhs = s.adjoint().materialize(&h).unwrap();
            let rhs = s.materialize(&h).unwrap().dagger();
            assert!(operator_distance(&lhs, &rhs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn product_of_exp_and_inverse_is_one() {
        let e = PowerSeries::exp(0.3, 16);
        let p = e.mul(&e.adjoint(), 16);
        assert!(p.max_abs_diff(&PowerSeries::one(16)) < 1e-15);
    }

    #[test]
    fn scale_by_zero_gives_zero() {
        let s = PowerSeries::exp(0.4, 5);
        assert!(s.scaled(c(0.0)).is_zero());
    }

    #[test]
    fn product_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let a = random_series(&mut rng, 6);
            let b = random_series(&mut rng, 6);
            let d = random_series(&mut rng, 6);
            let cap = 18;
            let lhs = a.mul(&b, cap).mul(&d, cap);
            let rhs = a.mul(&b.mul(&d, cap), cap);
            assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        }
    }

    #[test]
    fn majorant_examples() {
        let vt = PowerSeries::exp(0.2, 8).truncated(2);
        assert!((vt.majorant(1.0) - 1.22).abs() < 1e-15);
        assert_eq!(PowerSeries::zero(5).majorant(3.0), 0.0);
    }

    #[test]
    fn majorant_is_invariant_under_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let s = random_series(&mut rng, 8);
            let y = rng.gen_range(0.0..2.0);
            assert_eq!(s.majorant(y), s.adjoint().majorant(y));
        }
    }

    #[test]
    fn remainder_has_factorial_tail() {
        let v = PowerSeries::exp(0.2, 10);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        for k in 0..=2 {
            assert_eq!(d.coeff(k), c(0.0));
        }
        let want = 0.2f64.powi(3) / 6.0;
        assert!((d.coeff(3) - c(want)).norm() < 1e-18);

        // Tail weight agrees with the other route: e^theta minus the
        // partial sum.
        let oracle = 0.2f64.exp() - 1.22;
        assert!((d.majorant(1.0) - oracle).abs() < 1e-15);
        assert!((oracle - 1.4028e-3).abs() < 1e-7);
    }

    #[test]
    fn remainder_rejects_non_truncation() {
        let v = PowerSeries::exp(0.2, 8);
        let mut vt = v.truncated(2);
        vt = vt.add(&PowerSeries::one(8).scaled(c(1e-3)));
        assert!(remainder(&v, &vt).is_err());
    }

    #[test]
    fn relative_remainder_lowest_coefficient() {
        let v = PowerSeries::exp(0.2, 12);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        let vd = relative_remainder(&v, &d, 12).unwrap();
        for k in 0..=2 {
            assert_eq!(vd.coeff(k), c(0.0));
        }
        // Only the (exact order 3) x (constant 1) term reaches order 3.
        assert!((vd.coeff(3) - c(0.2f64.powi(3) / 6.0)).norm() < 1e-18);
        // Order 4 in closed form is -theta^4/8, inside the (2 theta)^4/4!
        // envelope.
        assert!((vd.coeff(4) - c(-0.2f64.powi(4) / 8.0)).norm() < 1e-18);
        assert!(vd.coeff(4).norm() <= 0.4f64.powi(4) / 24.0);
    }

    #[test]
    fn relative_remainder_flags_bound_violation() {
        let v = PowerSeries::exp(0.2, 10);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        let tampered = d.scaled(c(10.0));
        let err = relative_remainder(&v, &tampered, 10).unwrap_err();
        assert!(matches!(err, Error::Consistency { .. }));
    }

    #[test]
    fn defect_starts_one_above_truncation_order() {
        let v = PowerSeries::exp(0.2, 14);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        let vd = relative_remainder(&v, &d, 14).unwrap();
        let w = oaa_defect(&vd, 14);
        assert_eq!(w.lowest_order(), Some(3));
        // Lowest coefficient survives the adjoint antisymmetrization
        // unchanged for a real coefficient at odd order.
        assert!((w.coeff(3) - vd.coeff(3)).norm() < 1e-18);
    }

    #[test]
    fn defect_weight_obeys_quartic_bound() {
        let v = PowerSeries::exp(0.2, 14);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        let vd = relative_remainder(&v, &d, 14).unwrap();
        let w = oaa_defect(&vd, 14);
        let s_delta = d.majorant(1.0);
        let bound = 2.0 * s_delta
            + 9.0 * s_delta.powi(2)
            + 6.0 * s_delta.powi(3)
            + s_delta.powi(4);
        assert!(w.majorant(1.0) <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn defect_forms_agree() {
        let cap = 20;
        let v = PowerSeries::exp(0.2, cap);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        let vd = relative_remainder(&v, &d, cap).unwrap();
        let w = oaa_defect(&vd, cap);
        let forms = oaa_defect_forms(&v, &vt, &d, cap);
        assert!(w.max_abs_diff(&forms.expanded) < 1e-12);
        assert!(w.max_abs_diff(&forms.definitional) < 1e-12);
        for k in 0..=2 {
            assert!(forms.expanded.coeff(k).norm() < 1e-15);
            assert!(forms.definitional.coeff(k).norm() < 1e-15);
        }
        // Through order 2K+1 only the linear-in-remainder part contributes.
        let linear = vd.scaled(c(0.5)).add(&vd.adjoint().scaled(c(-0.5)));
        for k in 3..=5 {
            assert!((w.coeff(k) - linear.coeff(k)).norm() < 1e-16);
        }
    }

    #[test]
    fn correction_coefficients_examples() {
        let cap = 12;
        let v = PowerSeries::exp(0.2, cap);
        let vt = v.truncated(2);
        let d = remainder(&v, &vt).unwrap();
        let vd = relative_remainder(&v, &d, cap).unwrap();
        let w = oaa_defect(&vd, cap);
        let a = correction_coefficients(&w, 5, cap).unwrap();
        assert_eq!(a.coeff(0), c(1.0));
        for k in 1..=2 {
            assert_eq!(a.coeff(k), c(0.0));
        }
        // Only the linear binomial term C(r,1) = r reaches order 3.
        let want = 5.0 * (0.2f64.powi(3) / 6.0);
        assert!((a.coeff(3) - c(want)).norm() < 1e-16);
    }

    #[test]
    fn correction_rejects_order_zero_defect() {
        let w = PowerSeries::one(4);
        assert!(correction_coefficients(&w, 3, 4).is_err());
    }

    #[test]
    fn amplified_segment_fixed_points() {
        // theta = 0: the truncated segment is exactly 1 and amplification
        // leaves it alone.
        let vt = PowerSeries::exp(0.0, 6).truncated(2);
        let amp = amplified_segment(&vt, 6);
        assert!(amp.max_abs_diff(&PowerSeries::one(6)) < 1e-16);

        // Any series with unit constant term keeps it: 3/2 - 1/2 = 1.
        let vt = PowerSeries::exp(0.2, 6).truncated(2);
        let amp = amplified_segment(&vt, 6);
        assert!((amp.coeff(0) - c(1.0)).norm() < 1e-16);
    }

    #[test]
    fn amplified_segment_matches_matrix_formula() {
        let h = {
            let x = ComplexMatrix::new(2, vec![c(0.0), c(1.0), c(1.0), c(0.0)]);
            let z = sigma_z();
            x.add(&z).scaled(c(0.5))
        };
        let cap = 12;
        let vt = PowerSeries::exp(0.2, cap).truncated(2);
        let series_route = amplified_segment(&vt, cap).materialize(&h).unwrap();
        let vt_mat = vt.materialize(&h).unwrap();
        let inner = ComplexMatrix::identity(2)
            .scaled(c(1.5))
            .sub(&vt_mat.dagger().mul(&vt_mat).scaled(c(0.5)));
        let matrix_route = vt_mat.mul(&inner);
        assert!(operator_distance(&series_route, &matrix_route).unwrap() < 1e-13);
    }

    #[test]
    fn majorant_subadditive_and_submultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let cap = rng.gen_range(3..10);
            let a = random_series(&mut rng, cap);
            let b = random_series(&mut rng, cap);
            let y: f64 = rng.gen_range(0.0..2.0f64).max(1e-6);
            let sum = a.add(&b);
            assert!(sum.majorant(y) <= (a.majorant(y) + b.majorant(y)) * (1.0 + 1e-12));
            let prod = a.mul(&b, 2 * cap);
            assert!(prod.majorant(y) <= a.majorant(y) * b.majorant(y) * (1.0 + 1e-12));
        }
    }
}
