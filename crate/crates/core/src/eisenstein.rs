//! Divisor sums, Eisenstein series and the Hecke operator on q-expansions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::exactnum::{bernoulli, int, Rat};
use crate::series::QSeries;
use crate::Error;

/// σ_j(n) = Σ_{d | n} d^j.
pub fn sigma(n: u64, j: u32) -> BigInt {
    assert!(n >= 1, "σ is defined for positive n");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(j);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(j);
            }
        }
        d += 1;
    }
    total
}

/// Σ_{n≥1} σ_{m−1}(n) q^n below q^len.
fn divisor_series(m: u32, len: usize) -> Vec<Rat> {
    // sieve: each d contributes d^{m−1} to every multiple
    let mut v = vec![BigInt::zero(); len];
    for d in 1..len {
        let p = BigInt::from(d).pow(m - 1);
        for mult in (d..len).step_by(d) {
            v[mult] += &p;
        }
    }
    v.into_iter().map(Rat::from_integer).collect()
}

/// G_m = −B_m/(2m) + Σ_{n≥1} σ_{m−1}(n) q^n for any m ≥ 1 (B₁ = −1/2).
pub fn g_series(m: u32, len: usize) -> QSeries<Rat> {
    assert!(m >= 1);
    let mut v = divisor_series(m, len);
    if let Some(c) = v.first_mut() {
        *c = -bernoulli(m as usize) / int(2 * m as i64);
    }
    QSeries::from_coeffs(v)
}

/// E_m = 1 − (2m/B_m) Σ σ_{m−1}(n) q^n for even m ≥ 2.
pub fn e_series(m: u32, len: usize) -> Result<QSeries<Rat>, Error> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::Domain(format!("E_m needs an even index m ≥ 2, got {m}")));
    }
    let factor = -int(2 * m as i64) / bernoulli(m as usize);
    let mut v: Vec<Rat> = divisor_series(m, len).into_iter().map(|c| c * &factor).collect();
    if let Some(c) = v.first_mut() {
        *c = Rat::one();
    }
    Ok(QSeries::from_coeffs(v))
}

/// T_ℓ f = Σ_n (c(ℓn) + ℓ^{weight−1} c(n/ℓ)) q^n, with c(n/ℓ) = 0 when ℓ ∤ n,
/// optionally reduced modulo `modulus`. Known below q^{⌈N/ℓ⌉} when f is
/// known below q^N.
pub fn hecke_t(f: &QSeries<Rat>, ell: u64, weight: u32, modulus: Option<&BigInt>) -> Result<QSeries<Rat>, Error> {
    if !f.prefactor().is_zero() || f.valuation() < 0 {
        return Err(Error::Domain("Hecke operator needs an integral-power series without negative exponents".into()));
    }
    let l = ell as i64;
    let len = (f.precision() + l - 1) / l;
    let lw = Rat::from_integer(BigInt::from(ell).pow(weight - 1));
    let mut v = Vec::with_capacity(len.max(0) as usize);
    for n in 0..len {
        let mut c = f.at(l * n);
        if n % l == 0 {
            c += &lw * f.at(n / l);
        }
        if let Some(m) = modulus {
            if c.is_integer() {
                c = Rat::from_integer(c.to_integer().mod_floor(m));
            } else {
                return Err(Error::Domain("reduction modulo m needs integral coefficients".into()));
            }
        }
        v.push(c);
    }
    Ok(QSeries::from_coeffs(v))
}
