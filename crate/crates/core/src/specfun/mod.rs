//! Special functions used by the closed-form propagators: Bessel functions of
//! the first kind (integer order) and the terminating Gauss series
//! `₂F₁(−j, −k; −(N−1); x)`.

pub(crate) mod double_double;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest `|n|` accepted by [`bessel_j`].
pub const BESSEL_MAX_ORDER: usize = 200;

const RESCALE_ABOVE: f64 = 1e250;

/// `J_n(x)` for `0 ≤ n ≤ max_order`, by Miller's backward recurrence
/// normalised with `J₀ + 2 Σ J_{2k} = 1`.
pub fn bessel_j_orders(max_order: usize, x: f64) -> Result<Vec<f64>> {
    if max_order > BESSEL_MAX_ORDER {
        return Err(Error::Range {
            order: max_order as i64,
            max: BESSEL_MAX_ORDER,
        });
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be finite, got {x}")));
    }
    let mut out = vec![0.0; max_order + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let ax = x.abs();
    let reach = max_order.max(ax.ceil() as usize);
    // start far enough above the turning point that the seed error has decayed
    let mut start = reach + 20 + (160.0 * reach as f64).sqrt().ceil() as usize;
    start += start % 2;

    let mut above = 0.0_f64; // J_{k+1}
    let mut current = 1e-300_f64; // J_k, arbitrary seed
    let mut norm = 0.0_f64;
    for k in (1..=start).rev() {
        if k <= max_order {
            out[k] = current;
        }
        if k % 2 == 0 {
            norm += 2.0 * current;
        }
        let below = 2.0 * k as f64 / ax * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            current *= s;
            above *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    out[0] = current;
    norm += current;
    for (k, v) in out.iter_mut().enumerate() {
        *v /= norm;
        if x < 0.0 && k % 2 == 1 {
            *v = -*v;
        }
    }
    Ok(out)
}

/// `J_n(x)` for integer `n`, using `J_{−n}(x) = (−1)ⁿ J_n(x)`.
pub fn bessel_j(n: i64, x: f64) -> Result<f64> {
    let order = n.unsigned_abs() as usize;
    if order > BESSEL_MAX_ORDER {
        return Err(Error::Range {
            order: n,
            max: BESSEL_MAX_ORDER,
        });
    }
    let value = bessel_j_orders(order, x)?[order];
    Ok(if n < 0 && order % 2 == 1 { -value } else { value })
}

fn check_hyp_args(j: usize, k: usize, n_cavities: usize) -> Result<()> {
    if n_cavities == 0 || j > n_cavities - 1 || k > n_cavities - 1 {
        return Err(Error::Domain(format!(
            "2F1 numerator parameters -{j}, -{k} must not exceed N-1 = {}",
            n_cavities as i64 - 1
        )));
    }
    Ok(())
}

/// Series coefficients `c_s = (−j)_s (−k)_s / ((−(N−1))_s s!)`, `s = 0..=min(j,k)`.
pub fn hyp2f1_coefficients(j: usize, k: usize, n_cavities: usize) -> Result<Vec<f64>> {
    check_hyp_args(j, k, n_cavities)?;
    let c = (n_cavities - 1) as f64;
    let mut coeffs = Vec::with_capacity(j.min(k) + 1);
    let mut term = 1.0;
    coeffs.push(term);
    for s in 0..j.min(k) {
        let s = s as f64;
        term *= (s - j as f64) * (s - k as f64) / ((s - c) * (s + 1.0));
        coeffs.push(term);
    }
    Ok(coeffs)
}

/// Terminating `₂F₁(−j, −k; −(N−1); x)`.
///
/// The series stops after `min(j, k) + 1` terms; with `j, k ≤ N − 1` the
/// denominator Pochhammer never reaches its zero.
pub fn hyp2f1_terminating(j: usize, k: usize, n_cavities: usize, x: Complex64) -> Result<Complex64> {
    let coeffs = hyp2f1_coefficients(j, k, n_cavities)?;
    // Horner
    Ok(coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c))
}

/// Exact `(−1)^s C(j,s) C(k,s) / C(N−1,s)` in double-double, for the
/// closed-form propagator.
pub(crate) fn hyp2f1_coefficients_dd(
    j: usize,
    k: usize,
    n_cavities: usize,
) -> Vec<double_double::DoubleDouble> {
    use double_double::DoubleDouble;
    (0..=j.min(k))
        .map(|s| {
            let num = binomial_u128(j, s) * binomial_u128(k, s);
            let den = binomial_u128(n_cavities - 1, s);
            let v = DoubleDouble::from_u128(num) * DoubleDouble::from_u128(den).recip();
            if s % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

pub(crate) fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
