//! Factorials and binomial coefficients as floating values.

const TABLE_LEN: usize = 171;

// n! for n <= 170; 171! overflows f64.
const FACTORIALS: [f64; TABLE_LEN] = {
    let mut t = [1.0; TABLE_LEN];
    let mut i = 1;
    while i < TABLE_LEN {
        t[i] = t[i - 1] * i as f64;
        i += 1;
    }
    t
};

pub(crate) fn ln_factorial(n: usize) -> f64 {
    if n < TABLE_LEN {
        libm::log(FACTORIALS[n])
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// `1 / sqrt(a! b!)`, evaluated in log space once either factorial leaves the table.
pub(crate) fn inv_sqrt_factorial_pair(a: usize, b: usize) -> f64 {
    if a < TABLE_LEN && b < TABLE_LEN {
        let prod = FACTORIALS[a] * FACTORIALS[b];
        if prod.is_finite() {
            return 1.0 / libm::sqrt(prod);
        }
    }
    libm::exp(-0.5 * (ln_factorial(a) + ln_factorial(b)))
}

/// Binomial coefficient `C(n, k)` as a float (0 when `k > n`).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n < TABLE_LEN {
        return libm::round(FACTORIALS[n] / FACTORIALS[k] / FACTORIALS[n - k]);
    }
    libm::exp(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
}

/// Generic symmetric rank `⌈(N+1)/2⌉` of a degree-`N` binary form.
pub fn generic_rank(n: usize) -> usize {
    (n + 2) / 2
}
