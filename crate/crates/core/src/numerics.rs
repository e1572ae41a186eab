//! Double-precision evaluation of theta functions, the non-holomorphic R,
//! Appell functions and their completions, and the numeric checks on the
//! completed ψ-functions.
//!
//! τ and τ̄ (likewise z and z̄) are independent inputs; v = (τ − τ̄)/(2i) and
//! y = (z − z̄)/(2i) are computed from them, so v and y may be complex.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;

use crate::appell::chi_plus_tilde;
use crate::exactnum::rat_to_f64;
use crate::macmahon::series_b;
use crate::Error;

pub type CPoint = Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
/// Gaussian tails are cut where e^{−x} drops below machine precision.
const TAIL_EXPONENT: f64 = 45.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// e^{2πix}.
fn e(x: Complex64) -> Complex64 {
    (2.0 * PI * I * x).exp()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_tau(tau: Complex64) -> Result<(), Error> {
    if tau.im > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("τ must lie in the upper half plane, got {tau}")))
    }
}

fn finite(x: Complex64, what: &str) -> Result<Complex64, Error> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{what} overflowed")))
    }
}

/// Index range covering a Gaussian e^{−πv(n − center)²} down to e^{−45}:
/// Σ_{|n−center|>M} e^{−πv n²} < e^{−πvM²}/(1 − e^{−2πvM}).
fn gauss_range(center: f64, v: f64) -> (i64, i64) {
    let m = (TAIL_EXPONENT / (PI * v)).sqrt().ceil() + 2.0;
    ((center - m).floor() as i64, (center + m).ceil() as i64)
}

/// E(x) = 2∫₀ˣ e^{−πt²} dt = erf(√π x).
pub fn e_fn(x: f64) -> f64 {
    c(PI.sqrt() * x, 0.0).erf().re
}

/// sgn(n) − E(x) written as s·erfc(s√π x), accurate when E(x) is close to s.
fn sgn_minus_e(s: f64, x: Complex64) -> Complex64 {
    s * (s * PI.sqrt() * x).erfc()
}

/// θ(z;τ) = Σ_{n∈ℤ+1/2} e^{2πin(z+1/2)} q^{n²/2}.
pub fn theta_num(z: CPoint, tau: CPoint) -> Result<CPoint, Error> {
    check_tau(tau)?;
    let (lo, hi) = gauss_range(-z.im / tau.im - 0.5, tau.im);
    let mut s = Complex64::new(0.0, 0.0);
    for k in lo..=hi {
        let n = k as f64 + 0.5;
        s += (2.0 * PI * I * n * (z + 0.5) + PI * I * n * n * tau).exp();
    }
    finite(s, "θ")
}

/// η(τ) = q^{1/24} Π(1 − qⁿ).
pub fn eta_num(tau: CPoint) -> Result<CPoint, Error> {
    check_tau(tau)?;
    let q = e(tau);
    let mut p = e(tau / 24.0);
    let mut qn = q;
    while qn.norm() > 1e-18 {
        p *= 1.0 - qn;
        qn *= q;
    }
    Ok(p)
}

/// T(τ) = Σ_{n≥0} q^{(2n+1)²/8}.
pub fn t_num(tau: CPoint) -> Result<CPoint, Error> {
    check_tau(tau)?;
    let (_, hi) = gauss_range(0.0, tau.im / 4.0);
    Ok((0..=hi.max(1)).map(|n| e(tau * ((2 * n + 1) as f64).powi(2) / 8.0)).sum())
}

/// Θ_{a,b}(τ) = Σ_{n ≡ a (mod b)} q^{n²/(2b²)}.
pub fn theta_congr(a: i64, b: i64, tau: CPoint) -> Result<CPoint, Error> {
    check_tau(tau)?;
    assert!(b >= 1);
    // n = a + bm, exponent (a/b + m)²/2
    let (lo, hi) = gauss_range(-(a as f64) / b as f64, tau.im / 2.0);
    Ok((lo..=hi).map(|m| e(tau * ((a + b * m) as f64).powi(2) / (2.0 * (b * b) as f64))).sum())
}

/// R(z, z̄; τ, τ̄) = Σ_{n∈ℤ+1/2} (sgn(n) − E((n + y/v)√(2v))) (−1)^{n−1/2} q^{−n²/2} e^{−2πinz}.
pub fn r_num(z: CPoint, zb: CPoint, tau: CPoint, taub: CPoint) -> Result<CPoint, Error> {
    let v = (tau - taub) / (2.0 * I);
    let y = (z - zb) / (2.0 * I);
    if v.re <= 0.0 {
        return Err(Error::Domain(format!("effective v = {v} must have positive real part")));
    }
    let shift = y / v;
    let sq = (2.0 * v).sqrt();
    let (lo, hi) = gauss_range(-shift.re, v.re);
    let (lo, hi) = (lo.min(-2 - shift.re.abs().ceil() as i64), hi.max(2 + shift.re.abs().ceil() as i64));
    let mut s = Complex64::new(0.0, 0.0);
    for k in lo..=hi {
        let n = k as f64 + 0.5;
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let w = sgn_minus_e(n.signum(), (n + shift) * sq);
        s += w * sign * (-PI * I * n * n * tau - 2.0 * PI * I * n * z).exp();
    }
    finite(s, "R")
}

/// R with z̄ = conj z and τ̄ = conj τ.
pub fn r_conj(z: CPoint, tau: CPoint) -> Result<CPoint, Error> {
    r_num(z, z.conj(), tau, tau.conj())
}

/// A_ℓ(z₁, z₂; τ) = ζ₁^{ℓ/2} Σ_n (−1)^{ℓn} q^{ℓn(n+1)/2} ζ₂ⁿ/(1 − ζ₁qⁿ).
pub fn appell_num(ell: u32, z1: CPoint, z2: CPoint, tau: CPoint) -> Result<CPoint, Error> {
    check_tau(tau)?;
    let l = ell as f64;
    let (lo, hi) = gauss_range(-0.5 - z2.im / (l * tau.im), l * tau.im);
    let (lo, hi) = (lo.min(-2), hi.max(2));
    let z1e = e(z1);
    let mut s = Complex64::new(0.0, 0.0);
    for n in lo..=hi {
        let nf = n as f64;
        let den = 1.0 - z1e * e(tau * nf);
        if den.norm() < 1e-10 {
            return Err(Error::Domain(format!("z₁ too close to a pole of A_{ell} (n = {n})")));
        }
        let sign = if (ell as i64 * n) % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * e(tau * (l * nf * (nf + 1.0) / 2.0) + z2 * nf) / den;
    }
    finite(e(z1 * l / 2.0) * s, "A")
}

/// Â_ℓ = A_ℓ + (i/2) Σ_{j<ℓ} ζ₁^j θ(z₂ + jτ + (ℓ−1)/2; ℓτ) R(ℓz₁ − z₂ − jτ − (ℓ−1)/2; ℓτ).
pub fn appell_hat_num(
    ell: u32,
    (z1, z2): (CPoint, CPoint),
    (z1b, z2b): (CPoint, CPoint),
    tau: CPoint,
    taub: CPoint,
) -> Result<CPoint, Error> {
    let l = ell as f64;
    let half = (l - 1.0) / 2.0;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..ell {
        let jf = j as f64;
        let th = theta_num(z2 + jf * tau + half, l * tau)?;
        let r = r_num(l * z1 - z2 - jf * tau - half, l * z1b - z2b - jf * taub - half, l * tau, l * taub)?;
        s += e(jf * z1) * th * r;
    }
    Ok(appell_num(ell, z1, z2, tau)? + I / 2.0 * s)
}

/// Â_ℓ with all barred variables the complex conjugates.
pub fn appell_hat_conj(ell: u32, z1: CPoint, z2: CPoint, tau: CPoint) -> Result<CPoint, Error> {
    appell_hat_num(ell, (z1, z2), (z1.conj(), z2.conj()), tau, tau.conj())
}

/// μ(z₁, z₂; τ) = A₁(z₁, z₂; τ)/θ(z₂; τ).
pub fn mu_num(z1: CPoint, z2: CPoint, tau: CPoint) -> Result<CPoint, Error> {
    Ok(appell_num(1, z1, z2, tau)? / theta_num(z2, tau)?)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// An element of SL₂(ℤ) acting by Möbius transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mobius {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!("({a} {b}; {c} {d}) has determinant {}", a * d - b * c)));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub const S: Mobius = Mobius { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Mobius = Mobius { a: 1, b: 1, c: 0, d: 1 };

    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// T·S⁻¹·T.
    pub fn tst() -> Mobius {
        Mobius::T.compose(&Mobius::S.inverse()).compose(&Mobius::T)
    }

    pub fn apply(&self, tau: CPoint) -> CPoint {
        (self.a as f64 * tau + self.b as f64) / (self.c as f64 * tau + self.d as f64)
    }

    /// cτ + d.
    pub fn automorphy(&self, tau: CPoint) -> CPoint {
        self.c as f64 * tau + self.d as f64
    }
}

impl std::str::FromStr for Mobius {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "S" => return Ok(Mobius::S),
            "T" => return Ok(Mobius::T),
            "TST" | "TS^-1T" => return Ok(Mobius::tst()),
            _ => {}
        }
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Domain(format!("bad matrix entry {t:?}"))))
            .collect::<Result<_, _>>()?;
        match v.as_slice() {
            [a, b, c, d] => Mobius::new(*a, *b, *c, *d),
            _ => Err(Error::Domain("a matrix needs four entries a,b,c,d".into())),
        }
    }
}

/// Relative defect of Â_ℓ(z₁/(cτ+d), z₂/(cτ+d); γτ) = (cτ+d) e^{πic(−ℓz₁² + 2z₁z₂)/(cτ+d)} Â_ℓ(z₁, z₂; τ).
pub fn ahat_modular_defect(ell: u32, g: &Mobius, z1: CPoint, z2: CPoint, tau: CPoint) -> Result<f64, Error> {
    let j = g.automorphy(tau);
    let lhs = appell_hat_conj(ell, z1 / j, z2 / j, g.apply(tau))?;
    let l = ell as f64;
    let rhs = j * (PI * I * g.c as f64 / j * (-l * z1 * z1 + 2.0 * z1 * z2)).exp() * appell_hat_conj(ell, z1, z2, tau)?;
    Ok(rel(lhs, rhs))
}

/// Relative defect of Â_ℓ(z₁ + n₁τ + m₁, z₂ + n₂τ + m₂) =
/// (−1)^{ℓ(n₁+m₁)} ζ₁^{ℓn₁−n₂} ζ₂^{−n₁} q^{ℓn₁²/2 − n₁n₂} Â_ℓ(z₁, z₂).
pub fn ahat_elliptic_defect(ell: u32, (n1, m1, n2, m2): (i64, i64, i64, i64), z1: CPoint, z2: CPoint, tau: CPoint) -> Result<f64, Error> {
    let (n1f, m1f, n2f, m2f, l) = (n1 as f64, m1 as f64, n2 as f64, m2 as f64, ell as f64);
    let lhs = appell_hat_conj(ell, z1 + n1f * tau + m1f, z2 + n2f * tau + m2f, tau)?;
    let sign = if (ell as i64 * (n1 + m1)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let factor = sign * e(z1 * (l * n1f - n2f) - z2 * n1f + tau * (l * n1f * n1f / 2.0 - n1f * n2f));
    Ok(rel(lhs, factor * appell_hat_conj(ell, z1, z2, tau)?))
}

/// Relative defect of A_ℓ(z₁, z₂; τ) = (1/ℓ) ζ₁^{(ℓ−1)/2} Σ_{j mod ℓ} A₁(z₁, (z₂+j)/ℓ + (ℓ−1)τ/(2ℓ); τ/ℓ).
pub fn appell_reduction_defect(ell: u32, z1: CPoint, z2: CPoint, tau: CPoint) -> Result<f64, Error> {
    let l = ell as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..ell {
        s += appell_num(1, z1, (z2 + j as f64) / l + (l - 1.0) * tau / (2.0 * l), tau / l)?;
    }
    let rhs = e(z1 * (l - 1.0) / 2.0) * s / l;
    Ok(rel(rhs, appell_num(ell, z1, z2, tau)?))
}

/// Relative defect of the μ shift law for μ(z₁, z₂ − nτ; τ).
pub fn mu_shift_defect(n: i64, z1: CPoint, z2: CPoint, tau: CPoint) -> Result<f64, Error> {
    let nf = n as f64;
    let sg = nf.signum();
    let na = n.abs() as f64;
    let d = z1 - z2;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 1..=n.abs() {
        let jf = j as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * e(jf * sg * d + tau * (-jf * (jf - 1.0) / 2.0 + jf * na));
    }
    let sign_n = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let rhs = sign_n * e(tau * nf * nf / 2.0 + nf * d) * mu_num(z1, z2, tau)?
        + I * (-PI * I * sg * d).exp() * e(tau * (-0.125 - na / 2.0)) * sum;
    Ok(rel(rhs, mu_num(z1, z2 - nf * tau, tau)?))
}

/// Which constant term to use in the elliptic law of R.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftConstant {
    /// 2ζ^{1/2}q^{3/8}.
    Derived,
    /// 2ζ^{1/2}q^{3/4}.
    Printed,
}

/// |R(z + τ) + ζq^{1/2}R(z) − 2ζ^{1/2}q^{c}| relative to |R(z + τ)|.
pub fn r_elliptic_defect(z: CPoint, tau: CPoint, constant: ShiftConstant) -> Result<f64, Error> {
    let pw = match constant {
        ShiftConstant::Derived => 0.375,
        ShiftConstant::Printed => 0.75,
    };
    let lhs = r_conj(z + tau, tau)?;
    let rhs = -e(z + tau / 2.0) * r_conj(z, tau)? + 2.0 * e(z / 2.0 + tau * pw);
    Ok(rel(rhs, lhs))
}

/// n-th derivative at 0 by Cauchy's formula on a circle of the given radius.
/// Non-finite samples halve the radius, up to three attempts.
pub fn cauchy_derivative(f: impl Fn(CPoint) -> Result<CPoint, Error>, n: u32, radius: f64, nodes: usize) -> Result<CPoint, Error> {
    let mut rho = radius;
    for _ in 0..3 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut ok = true;
        for k in 0..nodes {
            let w = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
            let val = f(rho * w)?;
            if !val.is_finite() {
                ok = false;
                break;
            }
            s += val * w.powi(-(n as i32));
        }
        if ok {
            return Ok(s / nodes as f64 / rho.powi(n as i32) * factorial(n));
        }
        rho /= 2.0;
    }
    Err(Error::Domain("contour kept hitting non-finite values".into()))
}

pub const CAUCHY_RADIUS: f64 = 0.2;
pub const CAUCHY_NODES: usize = 64;

/// χ_n^−(τ, τ̄) for K = r: −(i/(2·n!)) Σ_{j<2r} θ((j−r)τ + 1/2; 2rτ)
/// ∂_z^n[ζ^{j−r} R(2rz + (r−j)τ + 1/2; 2rτ, 2rτ̄)]_{z=0}, with z̄ = 0 held fixed.
pub fn chi_minus_num(n: i64, r: i64, tau: CPoint, taub: CPoint) -> Result<CPoint, Error> {
    if n < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    check_tau(tau)?;
    let kk = r as f64;
    let rf = r as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..2 * r {
        let jf = j as f64;
        let th = theta_num((jf - kk) * tau + 0.5, 2.0 * rf * tau)?;
        let ub = (kk - jf) * taub + 0.5;
        let g = |z: CPoint| -> Result<CPoint, Error> {
            let u = 2.0 * rf * z + (kk - jf) * tau + 0.5;
            Ok(e((jf - kk) * z) * r_num(u, ub, 2.0 * rf * tau, 2.0 * rf * taub)?)
        };
        total += th * cauchy_derivative(g, n as u32, CAUCHY_RADIUS, CAUCHY_NODES)?;
    }
    Ok(-I / (2.0 * factorial(n as u32)) * total)
}

type ChiKey = (i64, i64, usize);

fn chi_tilde_coeffs(n: i64, r: i64, len: usize) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<ChiKey, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(n, r, len)) {
        return v.clone();
    }
    let s = chi_plus_tilde(n, r, r, len);
    let v: Arc<Vec<f64>> = Arc::new((0..len as i64).map(|o| rat_to_f64(&s.at(o))).collect());
    cache.lock().unwrap().insert((n, r, len), v.clone());
    v
}

/// Number of q-powers needed for |q|^N below machine precision.
fn q_terms(tau: CPoint) -> usize {
    ((TAIL_EXPONENT / (2.0 * PI * tau.im)).ceil() as usize + 10).min(400)
}

/// χ_n^+(τ) = (2πi)^n Σ χ̃_n(m) q^m with K = r.
pub fn chi_plus_num(n: i64, r: i64, tau: CPoint) -> Result<CPoint, Error> {
    check_tau(tau)?;
    let len = q_terms(tau);
    let coeffs = chi_tilde_coeffs(n, r, len);
    let q = e(tau);
    let s = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| acc * q + x);
    Ok((2.0 * PI * I).powi(n as i32) * s)
}

/// The factor (−απr/v)^j in the ψ-sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// α = 1, from the heat operator of index r; ψ̂ is then modular.
    Modular,
    /// α = 2, the printed factor.
    Printed,
}

impl Scaling {
    fn alpha(self) -> f64 {
        match self {
            Scaling::Modular => 1.0,
            Scaling::Printed => 2.0,
        }
    }
}

/// How v enters the ψ-sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VMode {
    /// v = (τ − τ̄)/(2i).
    Uniform,
    /// v = Im τ whatever τ̄ is.
    FixedIm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiKind {
    Plus,
    Minus,
    Hat,
}

/// ψ_n^±, ψ̂_n = Σ_{j≥0} (−απr/v)^j/j! χ_{n−2j}^{±}, for K = r.
pub fn psi_num(kind: PsiKind, n: i64, r: i64, tau: CPoint, taub: CPoint, scaling: Scaling, vmode: VMode) -> Result<CPoint, Error> {
    let v = match vmode {
        VMode::Uniform => (tau - taub) / (2.0 * I),
        VMode::FixedIm => c(tau.im, 0.0),
    };
    let base = -scaling.alpha() * PI * r as f64 / v;
    let mut s = Complex64::new(0.0, 0.0);
    let mut j = 0;
    while n - 2 * j >= -1 {
        let w = base.powi(j as i32) / factorial(j as u32);
        if kind != PsiKind::Minus {
            s += w * chi_plus_num(n - 2 * j, r, tau)?;
        }
        if kind != PsiKind::Plus {
            s += w * chi_minus_num(n - 2 * j, r, tau, taub)?;
        }
        j += 1;
    }
    finite(s, "ψ")
}

/// ψ̂_n(τ, conj τ).
pub fn psi_hat(n: i64, r: i64, tau: CPoint, scaling: Scaling) -> Result<CPoint, Error> {
    psi_num(PsiKind::Hat, n, r, tau, tau.conj(), scaling, VMode::Uniform)
}

/// |ψ̂_n(γτ) − (cτ+d)^{n+1} ψ̂_n(τ)| / |ψ̂_n(τ)|.
pub fn psi_hat_modularity_defect(g: &Mobius, n: i64, r: i64, tau: CPoint, scaling: Scaling) -> Result<f64, Error> {
    let base = psi_hat(n, r, tau, scaling)?;
    let moved = psi_hat(n, r, g.apply(tau), scaling)?;
    Ok(rel(moved, g.automorphy(tau).powi(n as i32 + 1) * base))
}

/// |ψ̂_n(τ, u − iV) − ψ_n^+(τ)| with v = Im τ held fixed in the ψ-sums.
pub fn psi_hat_limit_defect(n: i64, r: i64, tau: CPoint, big_v: f64, scaling: Scaling) -> Result<f64, Error> {
    let taub = c(tau.re, -big_v);
    let hat = psi_num(PsiKind::Hat, n, r, tau, taub, scaling, VMode::FixedIm)?;
    let plus = psi_num(PsiKind::Plus, n, r, tau, taub, scaling, VMode::FixedIm)?;
    Ok((hat - plus).norm())
}

/// Σ_{j<2r} |Θ_{r−j,2r}(x)|².
fn theta_square_sum(r: i64, x: CPoint) -> Result<f64, Error> {
    let mut s = 0.0;
    for j in 0..2 * r {
        s += theta_congr(r - j, 2 * r, x)?.norm_sqr();
    }
    Ok(s)
}

/// Relative defect of the lowering-operator identity, L = −2iv²∂/∂τ̄ taken by
/// a central difference of step h at τ̄ = conj τ.
///
/// Modular: L(ψ̂_m) = πr ψ̂_{m−2} − [m = 1] (i√(rv)/2) Σ_j |Θ_{r−j,2r}(2rτ)|².
/// Printed: L(ψ̂_m) = 2πrv ψ̂_{m−2} − (i r^{m/2} π^{(m−1)/2}/(2((m−1)/2)! v^{m/2−1})) Σ_j |Θ_{r−j,2r}(2τ)|²
/// with the printed ψ-scaling.
pub fn lowering_defect(m: i64, r: i64, tau: CPoint, h: f64, scaling: Scaling) -> Result<f64, Error> {
    assert!(m >= 1 && m % 2 == 1, "odd m ≥ 1");
    let tb = tau.conj();
    let v = tau.im;
    let at = |d: f64| psi_num(PsiKind::Hat, m, r, tau, tb + d, scaling, VMode::Uniform);
    // five-point stencil: truncation O(h⁴)
    let deriv = (-at(2.0 * h)? + 8.0 * at(h)? - 8.0 * at(-h)? + at(-2.0 * h)?) / (12.0 * h);
    let lowered = -2.0 * I * v * v * deriv;
    let below = psi_num(PsiKind::Hat, m - 2, r, tau, tb, scaling, VMode::Uniform)?;
    let rf = r as f64;
    let rhs = match scaling {
        Scaling::Modular => {
            let theta = if m == 1 { I * (rf * v).sqrt() / 2.0 * theta_square_sum(r, 2.0 * rf * tau)? } else { c(0.0, 0.0) };
            PI * rf * below - theta
        }
        Scaling::Printed => {
            let mf = m as f64;
            let coef = I * rf.powf(mf / 2.0) * PI.powf((mf - 1.0) / 2.0)
                / (2.0 * factorial(((m - 1) / 2) as u32) * v.powf(mf / 2.0 - 1.0));
            2.0 * PI * rf * v * below - coef * theta_square_sum(r, 2.0 * tau)?
        }
    };
    Ok(rel(lowered, rhs))
}

/// Evaluates an exact integral q-series at q = e^{2πiτ}.
fn eval_series(coeffs: &[f64], tau: CPoint) -> CPoint {
    let q = e(tau);
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| acc * q + x)
}

/// Relative defect of 2ℬ_{2,1,1}(q) against the ψ⁺ form.
///
/// Modular: 2ℬ_{2,1,1} = −(π/6 + 1/(2v)) iψ_{−1}^+ + ψ_1^+/(2πi).
/// Printed: 2ℬ_{2,1,1} = (π/6 + 1/v) iψ_{−1}^+ − ψ_1^+/(2πi) with the printed ψ-scaling.
pub fn b211_psi_check(tau: CPoint, scaling: Scaling) -> Result<f64, Error> {
    check_tau(tau)?;
    let len = q_terms(tau);
    let b = series_b(1, 2, 1, 1, len);
    let coeffs: Vec<f64> = (0..len as i64).map(|o| rat_to_f64(&b.at(o))).collect();
    let lhs = 2.0 * eval_series(&coeffs, tau);
    let v = tau.im;
    let plus = |n| psi_num(PsiKind::Plus, n, 1, tau, tau.conj(), scaling, VMode::FixedIm);
    let rhs = match scaling {
        Scaling::Modular => -(PI / 6.0 + 1.0 / (2.0 * v)) * I * plus(-1)? + plus(1)? / (2.0 * PI * I),
        Scaling::Printed => (PI / 6.0 + 1.0 / v) * I * plus(-1)? - plus(1)? / (2.0 * PI * I),
    };
    Ok(rel(rhs, lhs))
}

/// F(z) = (ζ^{−1/2} − ζ^{1/2}) ζ^{−K} A_{2r}(z, −Kτ; τ), evaluated directly.
pub fn appell_combination_num(r: i64, kk: i64, z: CPoint, tau: CPoint) -> Result<CPoint, Error> {
    let pref = e(-z / 2.0) - e(z / 2.0);
    Ok(pref * e(-(kk as f64) * z) * appell_num(2 * r as u32, z, -(kk as f64) * tau, tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_fn_basics() {
        assert_eq!(e_fn(0.0), 0.0);
        assert!((e_fn(0.7) + e_fn(-0.7)).abs() < 1e-15);
        assert!((e_fn(8.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cauchy_self_test() {
        for n in 0..6 {
            let d = cauchy_derivative(|z| Ok(z.exp()), n, CAUCHY_RADIUS, CAUCHY_NODES).unwrap();
            // roundoff grows like n!·ε/ρⁿ
            let tol = 1e-13 * factorial(n) / CAUCHY_RADIUS.powi(n as i32);
            assert!((d - 1.0).norm() < tol.max(1e-12), "n = {n}");
        }
    }

    #[test]
    fn mobius_basics() {
        assert_eq!(Mobius::tst(), Mobius { a: -1, b: 0, c: -1, d: -1 });
        assert!(Mobius::new(1, 1, 1, 1).is_err());
        assert_eq!("0,-1,1,0".parse::<Mobius>().unwrap(), Mobius::S);
        let t = c(0.3, 0.9);
        assert!((Mobius::S.apply(t) + 1.0 / t).norm() < 1e-15);
    }

    #[test]
    fn theta_odd_and_upper_half_plane() {
        assert!(theta_num(c(0.0, 0.0), c(0.0, 1.0)).unwrap().norm() < 1e-15);
        assert!(theta_num(c(0.1, 0.0), c(0.0, -1.0)).is_err());
    }

    #[test]
    fn chi_minus_minus_one() {
        assert_eq!(chi_minus_num(-1, 1, c(0.0, 1.0), c(0.0, -1.0)).unwrap(), c(0.0, 0.0));
    }
}
