//! Physicists' Hermite polynomials.

use crate::error::{Error, Result};

/// `H_k(x)` by the three-term recurrence `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite(k: i64, x: f64) -> Result<f64> {
    let k = u32::try_from(k)
        .map_err(|_| Error::domain("hermite", format!("order must be non-negative, got {k}")))?;
    Ok(hermite_unchecked(k, x))
}

pub(crate) fn hermite_unchecked(k: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for j in 1..k {
        let next = 2.0 * x * cur - 2.0 * f64::from(j) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite(0, 3.7).unwrap(), 1.0);
        assert_eq!(hermite(1, 0.25).unwrap(), 0.5);
        assert_eq!(hermite(2, 1.0).unwrap(), 2.0);
        // 16x^4 - 48x^2 + 12 at x = 1/2 is 1 - 12 + 12
        assert_eq!(hermite(4, 0.5).unwrap(), 1.0);
        assert_eq!(hermite(4, 1.0).unwrap(), -20.0);
    }

    #[test]
    fn negative_order_rejected() {
        assert!(matches!(hermite(-1, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn matches_explicit_polynomials() {
        for i in -20..=20 {
            let x = f64::from(i) * 0.17;
            let h3 = 8.0 * x.powi(3) - 12.0 * x;
            let h6 = 64.0 * x.powi(6) - 480.0 * x.powi(4) + 720.0 * x * x - 120.0;
            assert!((hermite(3, x).unwrap() - h3).abs() <= 1e-12 * h3.abs().max(1.0));
            assert!((hermite(6, x).unwrap() - h6).abs() <= 1e-12 * h6.abs().max(1.0));
        }
    }
}
