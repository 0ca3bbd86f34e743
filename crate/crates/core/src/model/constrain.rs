//! Mapping between unconstrained reals and stationary / invertible polynomials.
//!
//! Each raw value goes through `tanh` to a partial autocorrelation in (-1, 1);
//! the Levinson-type recursion then builds the coefficients of a polynomial
//! `1 - c_1 z - ... - c_k z^k` whose roots all lie outside the unit circle.

/// Partial autocorrelations to polynomial coefficients.
pub(crate) fn from_partials(partials: &[f64]) -> Vec<f64> {
    let mut coeffs: Vec<f64> = Vec::with_capacity(partials.len());
    for (k, &r) in partials.iter().enumerate() {
        let prev = coeffs.clone();
        for j in 0..k {
            coeffs[j] = prev[j] - r * prev[k - 1 - j];
        }
        coeffs.push(r);
    }
    coeffs
}

/// Inverse of [`from_partials`] (the step-down recursion). `None` when some
/// partial autocorrelation reaches the unit circle.
pub(crate) fn to_partials(coeffs: &[f64]) -> Option<Vec<f64>> {
    let mut current = coeffs.to_vec();
    let mut partials = vec![0.0; coeffs.len()];
    for k in (0..coeffs.len()).rev() {
        let r = current[k];
        if !r.is_finite() || r.abs() >= 1.0 {
            return None;
        }
        partials[k] = r;
        let denom = 1.0 - r * r;
        let prev: Vec<f64> = (0..k)
            .map(|j| (current[j] + r * current[k - 1 - j]) / denom)
            .collect();
        current = prev;
    }
    Some(partials)
}

/// Whether `1 - c_1 z - ... - c_k z^k` has all roots strictly outside the unit circle.
pub fn is_stationary(coeffs: &[f64]) -> bool {
    to_partials(coeffs).is_some()
}

/// Maps unconstrained reals onto the coefficients of a stationary (equivalently,
/// invertible) polynomial. Total and bijective onto that region.
pub fn constrain(raw: &[f64]) -> Vec<f64> {
    let partials: Vec<f64> = raw.iter().map(|x| x.tanh()).collect();
    from_partials(&partials)
}

/// Inverse of [`constrain`] for coefficients strictly inside the region.
pub fn unconstrain(coeffs: &[f64]) -> Option<Vec<f64>> {
    to_partials(coeffs).map(|p| p.into_iter().map(f64::atanh).collect())
}
