//! Krawtchouk polynomials `K_n(x; p, 𝔑) = ₂F₁(−x, −n; −𝔑; 1/p)` and their
//! orthonormal form `K̃_n(x) = √(w(x)/d_n) K_n(x)`.
//!
//! Every finite `f64` is a dyadic rational, so the terminating series is
//! summed in exact rational arithmetic and rounded once at the end. The
//! alternating terms cancel catastrophically in floating point long before
//! `𝔑 = 64`, so a plain double sum is not an option.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest `𝔑` accepted by the evaluators.
pub const MAX_ORDER: usize = 64;

fn check_args(n: usize, x: usize, p: f64, order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::Overflow {
            order,
            max: MAX_ORDER,
        });
    }
    if n > order || x > order {
        return Err(Error::Domain(format!(
            "degree {n} and argument {x} must not exceed {order}"
        )));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    Ok(())
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn exact_p(p: f64) -> BigRational {
    // finite by check_args
    BigRational::from_float(p).expect("finite p")
}

/// Terminating `₂F₁(−x, −n; −𝔑; 1/p)` as an exact rational.
///
/// The series stops at `k = min(n, x)`; the denominator Pochhammer
/// `(−𝔑)_k` is never evaluated at a vanishing factor since `k < min(n, x) ≤ 𝔑`.
fn series_exact(n: usize, x: usize, p: &BigRational, order: usize) -> BigRational {
    let inv_p = p.recip();
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n.min(x) {
        let (k, n, x, order) = (k as i64, n as i64, x as i64, order as i64);
        term = term * ratio(-(x - k) * (n - k), (order - k) * (k + 1)) * &inv_p;
        sum += &term;
    }
    sum
}

fn binomial_exact(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `K_n(x; p, 𝔑)`.
pub fn krawtchouk(n: usize, x: usize, p: f64, order: usize) -> Result<f64> {
    check_args(n, x, p, order)?;
    let value = series_exact(n, x, &exact_p(p), order);
    value
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or(Error::Overflow { order, max: MAX_ORDER })
}

/// Orthonormal `K̃_n(x) = √(w(x)) K_n(x) / √(d_n)` with binomial weight
/// `w(x) = C(𝔑,x) pˣ (1−p)^{𝔑−x}` and `d_n = (1/C(𝔑,n)) ((1−p)/p)ⁿ`.
pub fn normalized_krawtchouk(n: usize, x: usize, p: f64, order: usize) -> Result<f64> {
    check_args(n, x, p, order)?;
    let p = exact_p(p);
    let q = BigRational::one() - &p;
    let k = series_exact(n, x, &p, order);
    if k.is_zero() {
        return Ok(0.0);
    }
    // w/d = C(𝔑,x) C(𝔑,n) p^{x+n} (1−p)^{𝔑−x−n}
    let binomials = BigRational::from_integer(binomial_exact(order, x) * binomial_exact(order, n));
    let weight_ratio = binomials
        * p.pow((x + n) as i32)
        * q.pow(order as i32 - x as i32 - n as i32);
    let squared = &k * &k * weight_ratio;
    // |K̃| ≤ 1 by orthonormality, so the conversion cannot overflow.
    let magnitude = squared.to_f64().ok_or(Error::Overflow { order, max: MAX_ORDER })?.sqrt();
    Ok(if k.is_negative() { -magnitude } else { magnitude })
}

/// All `K̃_n(x; 1/2, 𝔑)` for `n = 0..=𝔑` at fixed `x`, by the three-term
/// recurrence in the degree.
///
/// Independent of the hypergeometric path and used only to cross-check it.
/// The forward recurrence is run to the middle degree and the upper half is
/// filled with `K̃_{𝔑−n}(x) = (−1)^x K̃_n(x)`, which keeps it out of the
/// decaying tail where forward recurrence loses all accuracy.
pub fn normalized_krawtchouk_recurrence(x: usize, order: usize) -> Result<Vec<f64>> {
    if order > MAX_ORDER {
        return Err(Error::Overflow {
            order,
            max: MAX_ORDER,
        });
    }
    if x > order {
        return Err(Error::Domain(format!("argument {x} exceeds order {order}")));
    }
    let mut values = vec![0.0; order + 1];
    // K̃_0(x) = √(w(x)) = √(C(𝔑,x) / 2^𝔑)
    let log_w = ln_binomial(order, x) - order as f64 * std::f64::consts::LN_2;
    values[0] = (0.5 * log_w).exp();
    if order == 0 {
        return Ok(values);
    }
    let centre = (order as f64) - 2.0 * x as f64;
    let half = order / 2;
    values[1] = centre * values[0] / (order as f64).sqrt();
    for n in 1..half {
        let nf = n as f64;
        let down = (nf * (order as f64 - nf + 1.0)).sqrt();
        let up = ((nf + 1.0) * (order as f64 - nf)).sqrt();
        values[n + 1] = (centre * values[n] - down * values[n - 1]) / up;
    }
    let sign = if x % 2 == 0 { 1.0 } else { -1.0 };
    for n in (half + 1)..=order {
        values[n] = sign * values[order - n];
    }
    Ok(values)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

/// Checks both mirror identities of the p = 1/2 polynomials at `(ℓ, j)`:
/// `K̃_j(ℓ) = (−1)^ℓ K̃_{𝔑−j}(ℓ)` and `K̃_ℓ(j) = (−1)^ℓ K̃_ℓ(𝔑−j)`.
pub fn parity_check(l: usize, j: usize, order: usize) -> Result<bool> {
    parity_check_with_sign(l, j, order, 1.0)
}

pub(crate) fn parity_check_with_sign(l: usize, j: usize, order: usize, flip: f64) -> Result<bool> {
    let sign = flip * if l % 2 == 0 { 1.0 } else { -1.0 };
    let degree_mirror = normalized_krawtchouk(j, l, 0.5, order)?
        - sign * normalized_krawtchouk(order - j, l, 0.5, order)?;
    let argument_mirror = normalized_krawtchouk(l, j, 0.5, order)?
        - sign * normalized_krawtchouk(l, order - j, 0.5, order)?;
    Ok(degree_mirror.abs() < crate::UNITARITY_TOL && argument_mirror.abs() < crate::UNITARITY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Binary Krawtchouk sum `Σ (−1)^k C(x,k) C(𝔑−x, n−k)`; at p = 1/2 it equals
    /// `C(𝔑,n) K_n(x)`. Exact in i128 for 𝔑 ≤ 64.
    fn binary_krawtchouk(n: usize, x: usize, order: usize) -> i128 {
        fn c(n: usize, k: usize) -> i128 {
            if k > n {
                return 0;
            }
            let mut acc: i128 = 1;
            for i in 0..k {
                acc = acc * (n - i) as i128 / (i + 1) as i128;
            }
            acc
        }
        (0..=n)
            .map(|k| {
                let s = if k % 2 == 0 { 1 } else { -1 };
                s * c(x, k) * c(order - x, n - k)
            })
            .sum()
    }

    #[test]
    fn trivial_values() {
        for order in [1, 4, 9] {
            for x in 0..=order {
                assert_eq!(krawtchouk(0, x, 0.3, order).unwrap(), 1.0);
            }
            for n in 0..=order {
                assert_eq!(krawtchouk(n, 0, 0.7, order).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn degree_one_at_half() {
        for order in 1..=12 {
            for x in 0..=order {
                let expected = 1.0 - 2.0 * x as f64 / order as f64;
                assert_abs_diff_eq!(krawtchouk(1, x, 0.5, order).unwrap(), expected, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn hand_checked_normalized_values() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(normalized_krawtchouk(0, 0, 0.5, 1).unwrap(), r, epsilon = 1e-15);
        assert_abs_diff_eq!(normalized_krawtchouk(0, 1, 0.5, 1).unwrap(), r, epsilon = 1e-15);
        assert_abs_diff_eq!(normalized_krawtchouk(1, 0, 0.5, 2).unwrap(), r, epsilon = 1e-15);
        assert_abs_diff_eq!(normalized_krawtchouk(1, 1, 0.5, 2).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn matches_binary_integer_form() {
        for order in [3, 12, 31, 64] {
            for n in 0..=order {
                for x in 0..=order {
                    let exact = binary_krawtchouk(n, x, order) as f64
                        / binomial_exact(order, n).to_f64().unwrap();
                    let got = krawtchouk(n, x, 0.5, order).unwrap();
                    assert!(
                        (got - exact).abs() <= 1e-15 * exact.abs().max(1.0),
                        "n={n} x={x} order={order}: {got} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthonormal_at_general_p() {
        let order = 10;
        for p in [0.5, 0.25, 0.8] {
            for n in 0..=order {
                for m in 0..=order {
                    let gram: f64 = (0..=order)
                        .map(|x| {
                            normalized_krawtchouk(n, x, p, order).unwrap()
                                * normalized_krawtchouk(m, x, p, order).unwrap()
                        })
                        .sum();
                    let expected = if n == m { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(gram, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn recurrence_agrees_with_series() {
        for order in [5, 20, 40, 63, 64] {
            for x in 0..=order {
                let rec = normalized_krawtchouk_recurrence(x, order).unwrap();
                for (n, r) in rec.iter().enumerate() {
                    let s = normalized_krawtchouk(n, x, 0.5, order).unwrap();
                    assert!(
                        (r - s).abs() <= 1e-10 * s.abs() + 1e-15,
                        "order={order} n={n} x={x}: {r} vs {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn parity_examples() {
        // K̃_0(1) = −K̃_2(1) at 𝔑 = 2
        let a = normalized_krawtchouk(0, 1, 0.5, 2).unwrap();
        let b = normalized_krawtchouk(2, 1, 0.5, 2).unwrap();
        assert_abs_diff_eq!(a, -b, epsilon = 1e-15);
        assert!(parity_check(1, 0, 2).unwrap());
        for j in 0..=4 {
            assert!(parity_check(0, j, 4).unwrap());
        }
        for l in 0..=6 {
            for j in 0..=6 {
                assert!(parity_check(l, j, 6).unwrap(), "l={l} j={j}");
                assert!(!parity_check_with_sign(l, j, 6, -1.0).unwrap() || {
                    // both sides vanish: the flipped identity holds trivially
                    normalized_krawtchouk(j, l, 0.5, 6).unwrap().abs() < 1e-12
                        && normalized_krawtchouk(l, j, 0.5, 6).unwrap().abs() < 1e-12
                });
            }
        }
    }

    #[test]
    fn domain_and_overflow_errors() {
        assert!(matches!(krawtchouk(3, 1, 0.5, 2), Err(Error::Domain(_))));
        assert!(matches!(krawtchouk(1, 1, 1.0, 2), Err(Error::Domain(_))));
        assert!(matches!(krawtchouk(1, 1, 0.0, 2), Err(Error::Domain(_))));
        assert!(matches!(normalized_krawtchouk(1, 1, 0.5, 65), Err(Error::Overflow { .. })));
    }
}
