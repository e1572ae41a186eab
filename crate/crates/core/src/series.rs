//! Truncated q-series with a rational exponent prefactor, generic over the
//! coefficient ring.
//!
//! A [`QSeries`] stands for `q^ρ · Σ_{m=v₀}^{v₀+N−1} c_m q^m` where every
//! coefficient with exponent below `v₀ + N` is known exactly (those below
//! `v₀` are zero). Binary operations keep only the range on which both
//! inputs are known.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::exactnum::{binomial, int, Poly, Rat, Var};
use crate::Error;

/// Commutative ring of series coefficients.
pub trait Coeff: Zero + One + Clone + PartialEq + Debug + Send + Sync + 'static {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(n: &BigInt) -> Self;
    /// Multiplicative inverse when it exists.
    fn inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;

    fn add_assign(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
    fn sub_assign(&mut self, o: &Self) {
        *self = self.sub_ref(o);
    }
}

/// Coefficient ring that is also a ℚ-algebra.
pub trait QAlgebra: Coeff {
    fn scale(&self, r: &Rat) -> Self;
    fn from_rat(r: &Rat) -> Self {
        Self::one().scale(r)
    }
}

impl Coeff for Rat {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        Rat::from_integer(n.clone())
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
}

impl QAlgebra for Rat {
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Coeff for BigInt {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
    fn inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
}

impl Coeff for Poly {
    fn add_ref(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg_ref(&self) -> Self {
        Poly::neg(self)
    }
    fn from_int(n: &BigInt) -> Self {
        Poly::constant(Var::K, Rat::from_integer(n.clone()))
    }
    fn inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => Some(Poly::constant(self.var, self.coeff(0).recip())),
            _ => None,
        }
    }
    fn to_json(&self) -> Value {
        json!({
            "var": self.var.name(),
            "coeffs": self.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl QAlgebra for Poly {
    fn scale(&self, r: &Rat) -> Self {
        Poly::scale(self, r)
    }
}

/// Truncated q-series `q^prefactor · Σ coeffs[i] q^{valuation + i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    /// Fractional part of the exponent prefactor, in [0, 1).
    prefactor: Rat,
    /// Exponent of `coeffs[0]` (not necessarily a nonzero coefficient).
    valuation: i64,
    coeffs: Vec<C>,
}

fn split_prefactor(rho: &Rat) -> (Rat, i64) {
    let fl = rho.floor();
    let shift = fl.to_integer().to_i64().expect("prefactor out of range");
    (rho - fl, shift)
}

impl<C: Coeff> QSeries<C> {
    /// Builds `q^prefactor · Σ coeffs[i] q^{valuation+i}`, known below
    /// `valuation + coeffs.len()`.
    pub fn new(prefactor: Rat, valuation: i64, coeffs: Vec<C>) -> Self {
        let (frac, shift) = split_prefactor(&prefactor);
        QSeries { prefactor: frac, valuation: valuation + shift, coeffs }
    }

    /// Integral series Σ coeffs[i] q^i known below q^{coeffs.len()}.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        QSeries { prefactor: Rat::zero(), valuation: 0, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_coeffs(vec![C::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(0, C::one(), n as i64)
    }

    /// c·q^e, known below q^precision.
    pub fn monomial(e: i64, c: C, precision: i64) -> Self {
        let len = (precision - e.min(precision)).max(0) as usize;
        let start = e.min(precision);
        let mut v = vec![C::zero(); len];
        if let Some(x) = v.first_mut() {
            *x = c;
        }
        QSeries { prefactor: Rat::zero(), valuation: start, coeffs: v }
    }

    /// A polynomial Σ terms (exponent, coefficient), known below q^precision.
    pub fn from_terms(terms: &[(i64, C)], precision: i64) -> Self {
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0).min(precision);
        let mut s = QSeries { prefactor: Rat::zero(), valuation: lo, coeffs: vec![C::zero(); (precision - lo) as usize] };
        for (e, c) in terms {
            if *e < precision {
                s.coeffs[(e - lo) as usize].add_assign(c);
            }
        }
        s
    }

    pub fn prefactor(&self) -> &Rat {
        &self.prefactor
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First integral exponent (relative to the prefactor) that is not known.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn with_prefactor(mut self, rho: &Rat) -> Self {
        let (frac, shift) = split_prefactor(&(rho + &self.prefactor));
        self.prefactor = frac;
        self.valuation += shift;
        self
    }

    /// Coefficient of q^{prefactor + e}; `None` outside the known range.
    pub fn coeff(&self, e: i64) -> Option<C> {
        if e >= self.precision() {
            None
        } else if e < self.valuation {
            Some(C::zero())
        } else {
            Some(self.coeffs[(e - self.valuation) as usize].clone())
        }
    }

    /// Coefficient, panicking outside the known range.
    pub fn at(&self, e: i64) -> C {
        self.coeff(e).unwrap_or_else(|| panic!("coefficient q^{e} beyond precision {}", self.precision()))
    }

    /// Exponent of the first nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.valuation + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drops everything at or above q^precision.
    pub fn truncate(mut self, precision: i64) -> Self {
        if precision < self.precision() {
            let keep = (precision - self.valuation).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        self
    }

    /// Re-bases so that coeffs[0] is the coefficient of q^lo (lo ≤ valuation).
    pub fn rebase(mut self, lo: i64) -> Self {
        if lo < self.valuation {
            let pad = (self.valuation - lo) as usize;
            let mut v = vec![C::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.valuation = lo;
        }
        self
    }

    /// Strips leading zero coefficients.
    pub fn normalize(mut self) -> Self {
        let z = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..z);
        self.valuation += z as i64;
        self
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        QSeries { prefactor: self.prefactor.clone(), valuation: self.valuation, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_aligned(&self, o: &Self) -> Result<(), Error> {
        if self.prefactor != o.prefactor {
            return Err(Error::Prefactor(Box::new((self.prefactor.clone(), o.prefactor.clone()))));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, Error> {
        self.check_aligned(o)?;
        let lo = self.valuation.min(o.valuation);
        let hi = self.precision().min(o.precision());
        let mut v = Vec::with_capacity((hi - lo).max(0) as usize);
        for e in lo..hi {
            let mut c = self.at(e);
            c.add_assign(&o.at(e));
            v.push(c);
        }
        Ok(QSeries { prefactor: self.prefactor.clone(), valuation: lo, coeffs: v })
    }

    /// Sum; panics on incompatible prefactors (use [`Self::try_add`] to handle that).
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("series with incompatible prefactors")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, Error> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Multiplies by q^e.
    pub fn shift(&self, e: i64) -> Self {
        let mut s = self.clone();
        s.valuation += e;
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (frac, carry) = split_prefactor(&(&self.prefactor + &o.prefactor));
        let n = self.len().min(o.len());
        let mut v = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    v[i + j].add_assign(&a.mul_ref(b));
                }
            }
        }
        QSeries { prefactor: frac, valuation: self.valuation + o.valuation + carry, coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        (1..e).fold(if e == 0 { QSeries::one(self.len()) } else { self.clone() }, |p, _| p.mul(self))
    }

    /// Multiplicative inverse. Errors if every known coefficient vanishes
    /// or the leading one is not a unit of the coefficient ring.
    pub fn invert(&self) -> Result<Self, Error> {
        let v = self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::NotInvertible)?;
        let lead_inv = self.coeffs[v].inverse().ok_or(Error::NotInvertible)?;
        let a = &self.coeffs[v..];
        let n = a.len();
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(lead_inv.clone());
        for m in 1..n {
            let mut s = C::zero();
            for k in 1..=m {
                if !a[k].is_zero() {
                    s.add_assign(&a[k].mul_ref(&b[m - k]));
                }
            }
            b.push(s.mul_ref(&lead_inv).neg_ref());
        }
        let (frac, carry) = split_prefactor(&-&self.prefactor);
        Ok(QSeries { prefactor: frac, valuation: -(self.valuation + v as i64) + carry, coeffs: b })
    }

    /// q ↦ q^m.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mi = m as i64;
        let rho = &self.prefactor * int(mi);
        let mut v = vec![C::zero(); self.len() * m];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * m] = c.clone();
        }
        QSeries::new(rho, self.valuation * mi, v)
    }

    /// Equality on the overlap of both known ranges, after checking prefactors.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }

    /// First exponent in the common known range where the two series differ
    /// (or `Some(i64::MIN)` for incompatible prefactors).
    pub fn first_difference(&self, o: &Self) -> Option<i64> {
        if self.prefactor != o.prefactor {
            return Some(i64::MIN);
        }
        let lo = self.valuation.min(o.valuation);
        let hi = self.precision().min(o.precision());
        (lo..hi).find(|&e| self.at(e) != o.at(e))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prefactor": self.prefactor.to_string(),
            "valuation": self.valuation,
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl<C: QAlgebra> QSeries<C> {
    pub fn scale(&self, r: &Rat) -> Self {
        self.map(|c| c.scale(r))
    }

    /// exp(f) for an integral series f with zero constant term.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.prefactor.is_zero() || self.coeffs.iter().enumerate().any(|(i, c)| self.valuation + (i as i64) <= 0 && !c.is_zero()) {
            return Err(Error::ExpConstantTerm);
        }
        let n = self.precision().max(0) as usize;
        let f: Vec<C> = (0..n as i64).map(|e| self.at(e)).collect();
        // n g_n = Σ_{i=1}^{n} i f_i g_{n−i}
        let mut g = vec![C::zero(); n];
        if n > 0 {
            g[0] = C::one();
        }
        for m in 1..n {
            let mut s = C::zero();
            for i in 1..=m {
                if !f[i].is_zero() {
                    s.add_assign(&f[i].mul_ref(&g[m - i]).scale(&int(i as i64)));
                }
            }
            g[m] = s.scale(&Rat::new(BigInt::one(), BigInt::from(m)));
        }
        Ok(QSeries::from_coeffs(g))
    }
}

/// A truncated power series in an auxiliary nilpotent variable X whose
/// coefficients are q-series: `parts[j]` is the coefficient of X^j.
pub type AdicSeries<C> = Vec<QSeries<C>>;

/// exp(f) modulo X^{f.len()}; requires the X⁰ part of f to vanish.
/// `n` is the q-precision used for the constant 1.
pub fn exp_adic<C: QAlgebra>(f: &AdicSeries<C>, n: usize) -> Result<AdicSeries<C>, Error> {
    if f.first().is_some_and(|c| !c.is_zero()) {
        return Err(Error::ExpConstantTerm);
    }
    let m = f.len();
    let mut g: AdicSeries<C> = Vec::with_capacity(m);
    if m == 0 {
        return Ok(g);
    }
    g.push(QSeries::one(n));
    for j in 1..m {
        // j g_j = Σ_{i=1}^{j} i f_i g_{j−i}
        let mut s: Option<QSeries<C>> = None;
        for i in 1..=j {
            if f[i].is_zero() {
                continue;
            }
            let t = f[i].mul(&g[j - i]).scale(&int(i as i64));
            s = Some(match s {
                None => t,
                Some(acc) => acc.add(&t),
            });
        }
        let gj = match s {
            Some(acc) => acc.scale(&Rat::new(BigInt::one(), BigInt::from(j))),
            None => QSeries::zero(n),
        };
        g.push(gj);
    }
    Ok(g)
}

/// (q^d; q^d)_∞^e as an integral series mod q^n (no η prefactor).
pub fn pochhammer_power(d: usize, e: i64, n: usize) -> QSeries<Rat> {
    let mut v = vec![Rat::zero(); n];
    if n == 0 {
        return QSeries::from_coeffs(v);
    }
    v[0] = Rat::one();
    let mut k = d;
    while k < n {
        if e > 0 {
            for _ in 0..e {
                for i in (k..n).rev() {
                    let t = v[i - k].clone();
                    v[i] -= t;
                }
            }
        } else {
            for _ in 0..(-e) {
                for i in k..n {
                    let t = v[i - k].clone();
                    v[i] += t;
                }
            }
        }
        k += d;
    }
    QSeries::from_coeffs(v)
}

/// Π (q^d; q^d)_∞^{e_d} to q-precision n. With `with_eta_prefactor` the
/// factor q^{Σ d·e/24} of the corresponding η-quotient is attached.
pub fn eta_product(factors: &[(usize, i64)], n: usize, with_eta_prefactor: bool) -> QSeries<Rat> {
    let mut s = QSeries::one(n);
    for &(d, e) in factors {
        s = s.mul(&pochhammer_power(d, e, n));
    }
    if with_eta_prefactor {
        let rho: Rat = factors.iter().map(|&(d, e)| int(d as i64 * e)).sum::<Rat>() / int(24);
        s = s.with_prefactor(&rho);
    }
    s
}

/// (q; q)_n as an exact polynomial.
pub fn qpochhammer_finite(n: usize) -> Vec<Rat> {
    let mut p = vec![Rat::one()];
    for j in 1..=n {
        let mut next = p.clone();
        next.resize(p.len() + j, Rat::zero());
        for (i, c) in p.iter().enumerate() {
            next[i + j] -= c;
        }
        p = next;
    }
    p
}

/// Gaussian binomial [n choose m]_q as an exact polynomial series. Its known
/// range is max(n_prec, degree + 1).
pub fn qbinom(n: usize, m: i64, n_prec: usize) -> Result<QSeries<Rat>, Error> {
    if m < 0 || m as usize > n {
        return Err(Error::Domain(format!("q-binomial lower index {m} outside 0..={n}")));
    }
    let m = m as usize;
    // Build via the q-Pascal rule [n,m] = [n−1,m−1] + q^m [n−1,m].
    let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    for nn in 1..=n {
        let mut next = Vec::with_capacity(nn + 1);
        for mm in 0..=nn {
            let mut p: Vec<Rat> = Vec::new();
            if mm >= 1 {
                p = rows[mm - 1].clone();
            }
            if mm < nn {
                let src = &rows[mm];
                if p.len() < src.len() + mm {
                    p.resize(src.len() + mm, Rat::zero());
                }
                for (i, c) in src.iter().enumerate() {
                    p[i + mm] += c;
                }
            }
            next.push(p);
        }
        rows = next;
    }
    let mut p = rows.swap_remove(m);
    let len = n_prec.max(p.len());
    p.resize(len, Rat::zero());
    Ok(QSeries::from_coeffs(p))
}

/// 1/(1 − q^step)^k applied in place to a coefficient window (k ∈ ℤ).
pub(crate) fn apply_geometric_power<C: Coeff>(v: &mut [C], step: usize, k: i64) {
    if step == 0 || step >= v.len() {
        return;
    }
    if k >= 0 {
        for _ in 0..k {
            for i in step..v.len() {
                let t = v[i - step].clone();
                v[i].add_assign(&t);
            }
        }
    } else {
        for _ in 0..(-k) {
            for i in (step..v.len()).rev() {
                let t = v[i - step].clone();
                v[i].sub_assign(&t);
            }
        }
    }
}

/// Coefficients C(m + k − 1, m), m = 0..len, of 1/(1 − x)^k for integer k.
pub fn geometric_power_coeffs(k: i64, len: usize) -> Vec<BigInt> {
    (0..len as i64).map(|m| binomial(m + k - 1, m)).collect()
}

/// Reduces integral coefficients modulo m (nonnegative residues).
pub fn residues(s: &QSeries<Rat>, m: &BigInt) -> Option<Vec<BigInt>> {
    s.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer().mod_floor(m)))
        .collect()
}
