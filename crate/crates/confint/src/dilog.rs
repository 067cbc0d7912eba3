use std::f64::consts::PI;
use std::sync::OnceLock;

use scalars::{qi, rational_to_f64, Complex64, Rational};

use crate::ConfintError;

const TERMS: usize = 40;

/// `B_n / (n + 1)!` for `n < TERMS`, from the exact Bernoulli numbers.
fn series_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut bern: Vec<Rational> = vec![qi(1)];
        for m in 1..TERMS {
            // sum_{k=0}^{m} C(m+1, k) B_k = 0
            let mut acc = qi(0);
            let mut binom = qi(1);
            for (k, b) in bern.iter().enumerate() {
                acc += &binom * b;
                binom = binom * qi((m + 1 - k) as i64) / qi(k as i64 + 1);
            }
            bern.push(-acc / qi(m as i64 + 1));
        }
        let mut fact = qi(1);
        bern.iter()
            .enumerate()
            .map(|(n, b)| {
                fact *= qi(n as i64 + 1);
                rational_to_f64(&(b / &fact))
            })
            .collect()
    })
}

/// `Li_2(w)` on the unit disk with `Re w <= 1/2`, where `u = -log(1 - w)`
/// satisfies `|u| < 1.1` and the Bernoulli series converges quickly.
fn dilog_core(w: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - w).ln();
    let mut pow = u;
    let mut sum = Complex64::new(0.0, 0.0);
    for &c in series_coefficients() {
        sum += pow * c;
        pow *= u;
    }
    sum
}

/// The dilogarithm `Li_2(w)` on the principal branch (cut along `[1, ∞)`).
pub fn dilog(w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let zeta2 = PI * PI / 6.0;
    if w == Complex64::new(0.0, 0.0) {
        return w;
    }
    if w == one {
        return Complex64::new(zeta2, 0.0);
    }
    if w.norm_sqr() > 1.0 {
        // Li_2(w) = -Li_2(1/w) - π²/6 - log²(-w)/2
        let l = (-w).ln();
        return -dilog(one / w) - zeta2 - 0.5 * l * l;
    }
    if w.re > 0.5 {
        // Li_2(w) = π²/6 - log(w) log(1 - w) - Li_2(1 - w)
        return zeta2 - w.ln() * (one - w).ln() - dilog_core(one - w);
    }
    dilog_core(w)
}

/// `F(w) = (2/π²) Im(Li_2(w) + log|w| log(1 - w))`.
///
/// `F` is odd under conjugation, so it vanishes on the real axis; real
/// arguments return exactly zero, which also sidesteps the branch cut.
pub fn f_function(w: Complex64) -> Result<f64, ConfintError> {
    if w == Complex64::new(0.0, 0.0) || w == Complex64::new(1.0, 0.0) {
        return Err(ConfintError::Singular(format!("{w}")));
    }
    if w.im == 0.0 {
        return Ok(0.0);
    }
    let one = Complex64::new(1.0, 0.0);
    let v = dilog(w) + w.norm().ln() * (one - w).ln();
    Ok(2.0 / (PI * PI) * v.im)
}

/// `F` without the singular-point check, for use inside integrands that
/// never sample `0` or `1`.
pub(crate) fn f_unchecked(w: Complex64) -> f64 {
    f_function(w).unwrap_or(0.0)
}
