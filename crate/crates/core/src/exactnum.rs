//! Exact rationals, univariate polynomials, Bernoulli numbers and the
//! generalized Stirling family.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational. Always normalized (positive denominator,
/// reduced), renders as `num/den` with the denominator omitted when it is 1.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial C(n, k) for integer n (possibly negative) and k ≥ 0; zero for k < 0.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= n - i;
    }
    num / factorial(k as u64)
}

/// p-adic valuation of a nonzero integer; `None` for 0.
pub fn valuation(p: u64, n: i64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Bernoulli number B_n with B₁ = −1/2.
pub fn bernoulli(n: usize) -> Rat {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rat::one()]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        let m = b.len();
        // Σ_{j<m+1} C(m+1, j) B_j = 0
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rat::from_integer(binomial(m as i64 + 1, j as i64)) * bj;
        }
        let bm = -s / int(m as i64 + 1);
        b.push(bm);
    }
    b[n].clone()
}

/// B_n(1/2) = (2^{1−n} − 1) B_n.
pub fn bernoulli_half(n: usize) -> Rat {
    let two_pow = Rat::new(BigInt::one(), BigInt::from(2u8).pow(n as u32)) * int(2);
    (two_pow - Rat::one()) * bernoulli(n)
}

/// S_{n,ℓ}(a, b, c) from S_{n+1,ℓ} = (aℓ − bn + c) S_{n,ℓ} + S_{n,ℓ−1}, S_{0,0} = 1.
pub fn stirling_general(n: usize, l: i64, a: &Rat, b: &Rat, c: &Rat) -> Rat {
    if l < 0 || l as usize > n {
        return Rat::zero();
    }
    stirling_row(n, a, b, c)[l as usize].clone()
}

/// The full row S_{n,0..=n}(a, b, c).
pub fn stirling_row(n: usize, a: &Rat, b: &Rat, c: &Rat) -> Vec<Rat> {
    let mut row = vec![Rat::one()];
    for m in 0..n {
        let mut next = vec![Rat::zero(); m + 2];
        for (l, s) in row.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let factor = a * int(l as i64) - b * int(m as i64) + c;
            next[l] += factor * s;
            next[l + 1] += s;
        }
        row = next;
    }
    row
}

/// α_c(n, ℓ) = S_{n,ℓ}(0, 1, c).
pub fn stirling_alpha(n: usize, l: i64, c: &Rat) -> Rat {
    stirling_general(n, l, &Rat::zero(), &Rat::one(), c)
}

/// β_c(n, ℓ) = S_{n,ℓ}(1, 0, c).
pub fn stirling_beta(n: usize, l: i64, c: &Rat) -> Rat {
    stirling_general(n, l, &Rat::one(), &Rat::zero(), c)
}

/// Signed Stirling numbers of the first kind, s(n, ℓ) = S_{n,ℓ}(0, 1, 0).
pub fn stirling_first(n: usize, l: i64) -> Rat {
    stirling_general(n, l, &Rat::zero(), &Rat::one(), &Rat::zero())
}

/// Name of the indeterminate of a [`Poly`]; only used for rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Var {
    #[default]
    K,
    Z,
    X,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::K => "k",
            Var::Z => "z",
            Var::X => "X",
        }
    }
}

/// Univariate polynomial over `Rat`; `coeffs[i]` multiplies `var^i`,
/// no trailing zeros.
#[derive(Clone, Debug, Default)]
pub struct Poly {
    pub var: Var,
    coeffs: Vec<Rat>,
}

impl PartialEq for Poly {
    // The variable tag is cosmetic: constants carry no variable.
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Poly {
    pub fn new(var: Var, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: vec![] }
    }

    pub fn constant(var: Var, c: Rat) -> Self {
        Poly::new(var, vec![c])
    }

    /// The indeterminate itself.
    pub fn var(var: Var) -> Self {
        Poly::new(var, vec![Rat::zero(), Rat::one()])
    }

    pub fn from_ints(var: Var, c: &[i64]) -> Self {
        Poly::new(var, c.iter().map(|&x| int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    fn tag(&self, other: &Poly) -> Var {
        if self.degree().unwrap_or(0) == 0 {
            other.var
        } else {
            self.var
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(self.tag(o), c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.tag(o));
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(self.tag(o), c)
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        Poly::new(self.var, self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + rat_to_f64(c))
    }

    /// Π_{i<d} (var + shift − i) / d!, i.e. C(var + shift, d).
    pub fn binomial_in(var: Var, shift: i64, d: usize) -> Poly {
        let mut p = Poly::constant(var, Rat::one());
        for i in 0..d as i64 {
            p = p.mul(&Poly::from_ints(var, &[shift - i, 1]));
        }
        p.scale(&Rat::new(BigInt::one(), factorial(d as u64)))
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        Poly::add(&self, &o)
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        Poly::mul(&self, &o)
    }
}

impl Zero for Poly {
    fn zero() -> Poly {
        Poly::zero(Var::K)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Poly {
        Poly::constant(Var::K, Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let v = self.var.name();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "{v}")?,
                (1, false) => write!(f, "{a}*{v}")?,
                (_, true) => write!(f, "{v}^{i}")?,
                (_, false) => write!(f, "{a}*{v}^{i}")?,
            }
        }
        Ok(())
    }
}

/// C(m + k − r − 1, m − r) as a polynomial in k: degree m − r for m ≥ r, zero otherwise.
pub fn binom_poly(m: i64, r: i64) -> Poly {
    if m < r {
        return Poly::zero(Var::K);
    }
    // C(k − 1 + d, d) = Π_{i=0}^{d−1} (k + i) / d!
    Poly::binomial_in(Var::K, m - r - 1, (m - r) as usize)
}

/// Least common multiple of denominators, handy for integrality checks.
pub fn denominators_lcm<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_half_values() {
        assert_eq!(bernoulli_half(0), int(1));
        assert_eq!(bernoulli_half(1), int(0));
        assert_eq!(bernoulli_half(2), rat(-1, 12));
        for n in (1..=25).step_by(2) {
            assert!(bernoulli_half(n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_general(0, 0, &int(3), &int(5), &int(7)), int(1));
        assert_eq!(stirling_first(3, 1), int(2));
        assert_eq!(stirling_alpha(2, 1, &rat(1, 2)), int(0));
        assert_eq!(stirling_general(3, 4, &int(1), &int(1), &int(1)), int(0));
        assert_eq!(stirling_general(3, -1, &int(1), &int(1), &int(1)), int(0));
    }

    #[test]
    fn stirling_first_matches_falling_factorials() {
        // x(x−1)...(x−n+1) = Σ s(n, ℓ) x^ℓ
        for n in 0..=12usize {
            let mut p = Poly::constant(Var::X, int(1));
            for i in 0..n as i64 {
                p = p.mul(&Poly::from_ints(Var::X, &[-i, 1]));
            }
            for l in 0..=n {
                assert_eq!(stirling_first(n, l as i64), p.coeff(l), "s({n},{l})");
            }
        }
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(3, 3), Poly::from_ints(Var::K, &[1]));
        assert_eq!(binom_poly(4, 3), Poly::from_ints(Var::K, &[0, 1]));
        assert!(binom_poly(2, 3).is_zero());
        // evaluate against integer binomials
        for m in 1..8 {
            for r in 1..=m {
                for k in 1..6 {
                    let want = binomial(m + k - r - 1, m - r);
                    assert_eq!(binom_poly(m, r).eval(&int(k)), Rat::from_integer(want));
                }
            }
        }
    }

    #[test]
    fn rat_render_and_parse() {
        assert_eq!(rat(6, 4).to_string(), "3/2");
        assert_eq!(int(-5).to_string(), "-5");
        assert_eq!(parse_rat("649/3225600"), Some(rat(649, 3225600)));
        assert_eq!(parse_rat("7"), Some(int(7)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn poly_display() {
        let p = Poly::new(Var::K, vec![int(2), rat(5, 2), rat(1, 2)]);
        assert_eq!(p.to_string(), "1/2*k^2 + 5/2*k + 2");
        assert_eq!(Poly::from_ints(Var::Z, &[1, -1]).to_string(), "-z + 1");
    }
}
