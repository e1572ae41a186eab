//! Exact expansions of Jacobi-variable objects: q-series whose coefficients
//! are Laurent polynomials in w = ζ^{1/2} = e^{πiz}.
//!
//! Derivatives in z act on wᵉ as multiplication by πi·e. Every identity below
//! is stated after dividing out the matching power of 2πi, so all
//! coefficients stay rational.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::eisenstein::e_series;
use crate::exactnum::{bernoulli, bernoulli_half, binomial, factorial, int, rat, stirling_alpha, stirling_beta, Rat};
use crate::macmahon::series_a;
use crate::macmahon::series_b;
use crate::series::{eta_product, exp_adic, Coeff, QAlgebra, QSeries};
use crate::Error;

/// Finitely supported Laurent polynomial in w.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentW {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentW {
    pub fn monomial(e: i64, c: Rat) -> Self {
        let mut l = LaurentW::default();
        l.add_term(e, c);
        l
    }

    pub fn from_terms(terms: &[(i64, Rat)]) -> Self {
        let mut l = LaurentW::default();
        for (e, c) in terms {
            l.add_term(*e, c.clone());
        }
        l
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rat> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let x = self.terms.entry(e).or_insert_with(Rat::zero);
        *x += c;
        if x.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// w ↦ w^{−1}, i.e. z ↦ −z.
    pub fn reflect(&self) -> Self {
        LaurentW { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplication by w^d.
    pub fn shift(&self, d: i64) -> Self {
        LaurentW { terms: self.terms.iter().map(|(e, c)| (e + d, c.clone())).collect() }
    }

    /// Σ_e (e/2)^ℓ c_e: the ℓ-th z-derivative at z = 0 divided by (2πi)^ℓ.
    pub fn moment(&self, ell: u32) -> Rat {
        self.terms.iter().map(|(e, c)| rat(*e, 2).pow(ell as i32) * c).sum()
    }
}

impl Zero for LaurentW {
    fn zero() -> Self {
        LaurentW::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentW {
    fn one() -> Self {
        LaurentW::monomial(0, Rat::one())
    }
}

impl std::ops::Add for LaurentW {
    type Output = LaurentW;
    fn add(self, o: LaurentW) -> LaurentW {
        self.add_ref(&o)
    }
}

impl std::ops::Mul for LaurentW {
    type Output = LaurentW;
    fn mul(self, o: LaurentW) -> LaurentW {
        self.mul_ref(&o)
    }
}

impl Coeff for LaurentW {
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = LaurentW::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        LaurentW { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn from_int(n: &BigInt) -> Self {
        LaurentW::monomial(0, Rat::from_integer(n.clone()))
    }
    fn inverse(&self) -> Option<Self> {
        match self.terms.len() {
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                Some(LaurentW::monomial(-e, c.recip()))
            }
            _ => None,
        }
    }
    fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(e, c)| json!({"e": e, "c": c.to_string()})).collect())
    }
}

impl QAlgebra for LaurentW {
    fn scale(&self, r: &Rat) -> Self {
        let mut out = LaurentW::default();
        for (e, c) in &self.terms {
            out.add_term(*e, c * r);
        }
        out
    }
}

/// A q-series in Laurent-polynomial coefficients, possibly carrying an
/// overall factor i that is kept out of the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiSeries {
    pub times_i: bool,
    pub series: QSeries<LaurentW>,
}

impl JacobiSeries {
    /// z ↦ −z.
    pub fn reflect(&self) -> Self {
        JacobiSeries { times_i: self.times_i, series: self.series.map(|c| c.reflect()) }
    }

    /// Setting w = 1 in every coefficient.
    pub fn at_w_one(&self) -> QSeries<Rat> {
        self.series.map(|c| c.moment(0))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "times_i": self.times_i,
            "prefactor": self.series.prefactor().to_string(),
            "valuation": self.series.valuation(),
            "coeffs": self.series.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// θ(z;τ) = i·q^{1/8} Σ_{m∈ℤ} (−1)^m w^{2m+1} q^{m(m+1)/2} below q^{1/8 + n}.
/// The factor i is flagged, so the stored series is −iθ.
pub fn theta_jacobi(n: usize) -> JacobiSeries {
    let mut v = vec![LaurentW::zero(); n];
    // m and −1−m share the exponent m(m+1)/2
    let mut m = 0i64;
    while (m * (m + 1) / 2) < n as i64 {
        let o = (m * (m + 1) / 2) as usize;
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        v[o].add_term(2 * m + 1, sign.clone());
        v[o].add_term(-2 * m - 1, -sign);
        m += 1;
    }
    JacobiSeries { times_i: true, series: QSeries::new(rat(1, 8), 0, v) }
}

/// z ↦ z + τ on a series whose w-exponents and half-exponent shifts pair up:
/// w^e q^o ↦ w^{e+dw} q^{o + (e+dq)/2}. Terms landing at or beyond the input
/// precision are dropped; the caller is responsible for the tail.
fn translate_by_tau(s: &QSeries<LaurentW>, dq: i64, dw: i64) -> Result<QSeries<LaurentW>, Error> {
    let prec = s.precision();
    let mut terms: BTreeMap<i64, LaurentW> = BTreeMap::new();
    for (i, c) in s.coeffs().iter().enumerate() {
        let o = s.valuation() + i as i64;
        for (e, x) in c.terms() {
            if (e + dq) % 2 != 0 {
                return Err(Error::Domain("translation produces half-integral exponents".into()));
            }
            let t = o + (e + dq) / 2;
            if t < prec {
                terms.entry(t).or_default().add_term(e + dw, x.clone());
            }
        }
    }
    let lo = terms.keys().next().copied().unwrap_or(0).min(s.valuation());
    let v = (lo..prec).map(|o| terms.remove(&o).unwrap_or_default()).collect();
    Ok(QSeries::new(s.prefactor().clone(), lo, v))
}

/// Elliptic law θ(z + τ) = −q^{−1/2}ζ^{−1}θ(z) checked as
/// −q^{1/2}ζ·θ(z + τ) = θ(z) below q^{1/8 + n}. Translation moves the term at
/// q^{m(m+1)/2} of w^{−2m−1} down to q^{m(m−1)/2}, so θ is taken to 2n + 6
/// orders, which keeps the lower n exact.
pub fn theta_elliptic_holds(n: usize) -> bool {
    let wide = theta_jacobi(2 * n + 6).series;
    match translate_by_tau(&wide, 1, 2) {
        Ok(t) => t.neg().truncate(n as i64).agrees_with(&theta_jacobi(n).series),
        Err(_) => false,
    }
}

/// F = (ζ^{−1/2} − ζ^{1/2}) ζ^{−K} A_{2r}(z, −Kτ; τ)
///   = (w^{−1} − w) w^{2r−2K} Σ_{n∈ℤ} q^{rn(n+1) − Kn}/(1 − w²qⁿ),
/// with the n = 0 pole cancelled exactly: that term is w^{2r−2K−1}.
pub fn appell_f(r: i64, kk: i64, n: usize) -> JacobiSeries {
    assert!(r >= 1);
    let prec = n as i64;
    let mut terms: BTreeMap<i64, LaurentW> = BTreeMap::new();
    terms.entry(0).or_default().add_term(2 * r - 2 * kk - 1, Rat::one());
    let shift = 2 * r - 2 * kk;
    let mut push = |o: i64, e: i64, c: Rat| {
        if o < prec {
            let t = terms.entry(o).or_default();
            t.add_term(e - 1 + shift, c.clone());
            t.add_term(e + 1 + shift, -c);
        }
    };
    // n > 0: Σ_{m≥0} w^{2m} q^{nm}
    let mut m_n = 1i64;
    loop {
        let base = r * m_n * (m_n + 1) - kk * m_n;
        if base >= prec && m_n * r > kk {
            break;
        }
        let mut m = 0;
        while base + m_n * m < prec {
            push(base + m_n * m, 2 * m, Rat::one());
            m += 1;
        }
        m_n += 1;
    }
    // n = −p < 0: 1/(1 − ζq^{−p}) = −Σ_{m≥1} ζ^{−m} q^{pm}
    let mut p = 1i64;
    loop {
        let base = r * p * (p - 1) + kk * p;
        if base + p >= prec && 2 * r * p + kk + 1 > 0 {
            break;
        }
        let mut m = 1;
        while base + p * m < prec {
            push(base + p * m, -2 * m, -Rat::one());
            m += 1;
        }
        p += 1;
    }
    let lo = terms.keys().next().copied().unwrap_or(0).min(0);
    let v = (lo..prec).map(|o| terms.remove(&o).unwrap_or_default()).collect();
    JacobiSeries { times_i: false, series: QSeries::new(Rat::zero(), lo, v) }
}

/// f̃_{r,K,ℓ} = f_{r,K,ℓ}/(2πi)^ℓ, the ℓ-th z-derivative of F at z = 0.
pub fn f_tilde(r: i64, kk: i64, ell: u32, n: usize) -> QSeries<Rat> {
    appell_f(r, kk, n).series.map(|c| c.moment(ell))
}

/// Outcome of the exact relations between f̃ and the depth-one ℬ-series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthOneReport {
    /// ℬ_{k,r,s} + (−1)^k ℬ_{k,r,k−s} = −(1/k!) Σ_ℓ α_{k−s−1/2}(k,ℓ) f̃_ℓ.
    pub forward: bool,
    /// f̃_ℓ = c^ℓ − Σ_{j=1}^{ℓ} j! β_c(ℓ,j)(ℬ_{j,r,s−k+j} + (−1)^j ℬ_{j,r,k−s}),
    /// c = 1/2 + s − k, for every ℓ ≤ k + 2.
    pub inverse: bool,
    /// Forward relation without the (−1)^k.
    pub printed_forward: bool,
    /// f̃_ℓ = −c^ℓ − Σ_j j! β_c(ℓ,j)(ℬ_{j,r,s−k+j} + ℬ_{j,r,k−s}).
    pub printed_inverse: bool,
}

impl DepthOneReport {
    pub fn holds(&self) -> bool {
        self.forward && self.inverse
    }
}

fn depth_one_b(k: i64, r: i64, s: i64, n: usize) -> QSeries<Rat> {
    series_b(1, k, r, s, n)
}

fn sign(odd: bool) -> Rat {
    if odd {
        int(-1)
    } else {
        int(1)
    }
}

/// Checks both directions between f̃_{r,K,ℓ} (K = k + r − s − 1) and ℬ-series
/// exactly below q^n.
pub fn depth_one_relations(k: i64, r: i64, s: i64, n: usize) -> Result<DepthOneReport, Error> {
    if k < 1 || r < 1 || s < 0 || s > k {
        return Err(Error::Domain(format!("need k, r ≥ 1 and 0 ≤ s ≤ k, got k = {k}, r = {r}, s = {s}")));
    }
    let kk = k + r - s - 1;
    let top = (k + 2) as u32;
    let f = appell_f(r, kk, n).series;
    let ft: Vec<QSeries<Rat>> = (0..=top).map(|l| f.map(|c| c.moment(l))).collect();

    let kfact = Rat::from_integer(factorial(k as u64));
    let alpha_c = rat(2 * (k - s) - 1, 2);
    let mut rhs = QSeries::zero(n);
    for (l, f_l) in ft.iter().enumerate().take(k as usize + 1) {
        rhs = rhs.add(&f_l.scale(&stirling_alpha(k as usize, l as i64, &alpha_c)));
    }
    let rhs = rhs.scale(&(-kfact.recip()));
    let b1 = depth_one_b(k, r, s, n);
    let b2 = depth_one_b(k, r, k - s, n);
    let forward = b1.add(&b2.scale(&sign(k % 2 == 1))).agrees_with(&rhs);
    let printed_forward = b1.add(&b2).agrees_with(&rhs);

    let c = rat(1, 2) + int(s - k);
    let mut inverse = true;
    let mut printed_inverse = true;
    for (l, f_l) in ft.iter().enumerate() {
        let mut corrected = QSeries::monomial(0, c.pow(l as i32), n as i64);
        let mut printed = QSeries::monomial(0, -c.pow(l as i32), n as i64);
        for j in 1..=l as i64 {
            let w = stirling_beta(l, j, &c) * Rat::from_integer(factorial(j as u64));
            let lo = depth_one_b(j, r, s - k + j, n);
            let hi = depth_one_b(j, r, k - s, n);
            corrected = corrected.sub(&lo.add(&hi.scale(&sign(j % 2 == 1))).scale(&w));
            printed = printed.sub(&lo.add(&hi).scale(&w));
        }
        inverse &= corrected.agrees_with(f_l);
        printed_inverse &= printed.agrees_with(f_l);
    }
    Ok(DepthOneReport { forward, inverse, printed_forward, printed_inverse })
}

/// χ̃_n = χ_n^+/(2πi)^n = −(1/(n+1)!) Σ_{j ≡ n+1 (2)} C(n+1, j) B_{n+1−j}(1/2) f̃_{r,K,j}.
///
/// For n = −1 only j = 0 survives and χ̃_{−1} = −f̃_0 = −1, which makes
/// ψ̂_{−1} = χ_{−1}^+ = −1/(2πi).
pub fn chi_plus_tilde(n: i64, r: i64, kk: i64, len: usize) -> QSeries<Rat> {
    assert!(n >= -1);
    let f = appell_f(r, kk, len).series;
    let top = n + 1;
    let mut out = QSeries::zero(len);
    for j in (0..=top).filter(|j| (top - j) % 2 == 0) {
        let w = Rat::from_integer(binomial(top, j)) * bernoulli_half((top - j) as usize);
        out = out.add(&f.map(|c| c.moment(j as u32)).scale(&w));
    }
    out.scale(&(-Rat::from_integer(factorial(top as u64)).recip()))
}

/// f̃_ℓ against −ℓ! Σ_j χ̃_{ℓ−2j−1}/(4^j (2j+1)!), the normalized form of
/// f = 2πi·ℓ!·Σ_j (−1)^j π^{2j}/(2j+1)!·χ^+_{ℓ−2j−1}. With `printed_sign`
/// the leading minus is dropped. Returns the first differing exponent.
pub fn remark_defect(r: i64, kk: i64, ell: i64, n: usize, printed_sign: bool) -> Option<i64> {
    let mut sum = QSeries::zero(n);
    let mut j = 0;
    while ell - 2 * j - 1 >= -1 {
        let w = (int(4).pow(j as i32) * Rat::from_integer(factorial(2 * j as u64 + 1))).recip();
        sum = sum.add(&chi_plus_tilde(ell - 2 * j - 1, r, kk, n).scale(&w));
        j += 1;
    }
    let lead = Rat::from_integer(factorial(ell as u64));
    let rhs = sum.scale(&if printed_sign { lead } else { -lead });
    f_tilde(r, kk, ell as u32, n).first_difference(&rhs)
}

/// 2ℬ_{2,1,1} = 1/12 + χ̃_1 (r = K = 1) below q^n. With `printed_sign` the
/// right side is negated. Returns the first differing exponent.
pub fn b211_defect(n: usize, printed_sign: bool) -> Option<i64> {
    let rhs = QSeries::monomial(0, rat(1, 12), n as i64).add(&chi_plus_tilde(1, 1, 1, n));
    let rhs = if printed_sign { rhs.neg() } else { rhs };
    depth_one_b(2, 1, 1, n).scale(&int(2)).first_difference(&rhs)
}

/// For K = r: F(w^{−1}) − F(w) = (w − w^{−1}) Σ_{n∈ℤ} q^{rn²}.
pub fn appell_reflection_defect(r: i64, n: usize) -> Option<i64> {
    let f = appell_f(r, r, n).series;
    let lhs = f.map(|c| c.reflect()).sub(&f);
    let mut v = vec![LaurentW::zero(); n];
    let odd = LaurentW::from_terms(&[(1, int(1)), (-1, int(-1))]);
    let mut m = 0i64;
    while r * m * m < n as i64 {
        let mult = if m == 0 { 1 } else { 2 };
        v[(r * m * m) as usize] = odd.scale(&int(mult));
        m += 1;
    }
    lhs.first_difference(&QSeries::from_coeffs(v))
}

/// Σ_{a=0}^{a_max} (−1)^a 𝒜_{a,2,1}(q)(w − w^{−1})^{2a+1} = −iθ(z;τ)/η(τ)³
/// below q^n. The tail a > a_max starts at q^{(a_max+1)(a_max+2)/2}.
pub fn rose_jacobi_check(n: usize, a_max: usize) -> Result<bool, Error> {
    if (a_max + 1) * (a_max + 2) / 2 < n {
        return Err(Error::Domain(format!("a_max = {a_max} leaves terms of order below q^{n}")));
    }
    let x = LaurentW::from_terms(&[(1, int(1)), (-1, int(-1))]);
    let x2 = x.mul_ref(&x);
    let mut lhs = QSeries::zero(n);
    let mut xp = x.clone();
    for a in 0..=a_max {
        let s = series_a(a, 2, 1, n).map(|c| LaurentW::monomial(0, c.clone()));
        let sg = if a % 2 == 0 { int(1) } else { int(-1) };
        lhs = lhs.add(&s.scale_by(&xp.scale(&sg)));
        xp = xp.mul_ref(&x2);
    }
    // q^{1/8} of θ cancels against q^{1/8} of η³
    let theta = theta_jacobi(n).series.with_prefactor(&rat(-1, 8));
    let eta3 = eta_product(&[(1, -3)], n, false).map(|c| LaurentW::monomial(0, c.clone()));
    Ok(lhs.agrees_with(&theta.mul(&eta3)))
}

/// Z-expansion check of 2πi·θ(z)/θ′(0) = Z·exp(Σ_{m≥1} B_{2m}/(2m)·E_{2m}·Z^{2m}/(2m)!)
/// with Z = 2πiz and θ′(0) = −2πη³, through Z^m_max and below q^n.
pub fn theta_exp_check(n: usize, m_max: usize) -> Result<bool, Error> {
    // left: Σ_m (−1)^m e^{(2m+1)Z/2} q^{m(m+1)/2} / (q;q)_∞³
    let th = theta_jacobi(n).series;
    let eta3 = eta_product(&[(1, -3)], n, false);
    let mut lhs = Vec::with_capacity(m_max + 1);
    for j in 0..=m_max {
        let jf = Rat::from_integer(factorial(j as u64));
        let s = QSeries::from_coeffs(th.coeffs().iter().map(|c| c.moment(j as u32) / &jf).collect());
        lhs.push(s.mul(&eta3));
    }
    let mut f = vec![QSeries::zero(n); m_max + 1];
    for m in 1..=m_max / 2 {
        let w = bernoulli(2 * m) / int(2 * m as i64) / Rat::from_integer(factorial(2 * m as u64));
        f[2 * m] = e_series(2 * m as u32, n)?.scale(&w);
    }
    let g = exp_adic(&f, n)?;
    let mut rhs = vec![QSeries::zero(n)];
    rhs.extend(g.into_iter().take(m_max));
    Ok(lhs.iter().zip(&rhs).all(|(a, b)| a.agrees_with(b)))
}

/// Direct ℬ_{a,k,r,s} against exponential reconstruction from depth one for
/// every depth up to a_max, below q^n.
pub fn b_polynomiality_check(k: i64, r: i64, s: i64, a_max: usize, n: usize) -> Result<bool, Error> {
    for a in 1..=a_max {
        let rebuilt = crate::quasishuffle::exp_reconstruct(crate::quasishuffle::ExpKind::B, &[k, r, s], a, n)?;
        if !rebuilt.agrees_with(&series_b(a, k, r, s, n)) {
            return Ok(false);
        }
    }
    Ok(true)
}
