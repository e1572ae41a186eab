//! MacMahon-type nested divisor sums.
//!
//! Every series here has the shape
//!
//! ```text
//! Σ_{1 ≤ n₁ < … < n_a}  Π_j  q^{E_j(n_j)} · P_j(q^{n_j}) / (1 − q^{n_j})^{k_j}
//! ```
//!
//! (or `≤` for the starred variants), where `E_j` is an integer polynomial
//! with positive leading coefficient. One dynamic-programming engine,
//! [`nested_sum`], covers all of them over any coefficient ring, including
//! polynomials in a formal exponent k.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{binom_poly, binomial, factorial, int, Poly, Rat, Var};
use crate::partitions::{hook_sum, Partition};
use crate::series::{apply_geometric_power, eta_product, qbinom, Coeff, QSeries};
use crate::Error;

/// How a level divides by (1 − q^n).
#[derive(Clone, Debug)]
pub enum KPower<C> {
    /// 1/(1 − q^n)^k for an integer k (k < 0 multiplies).
    Int(i64),
    /// 1/(1 − x)^k given by its x-expansion, substituted at x = q^n.
    Expansion(Vec<C>),
}

/// One nesting level: `q^{exponent(n)} · Σ_d c_d q^{d·n} / (1 − q^n)^k`.
#[derive(Clone, Debug)]
pub struct Level<C> {
    /// Integer polynomial in n, lowest degree first.
    pub exponent: Vec<i64>,
    /// Numerator terms (d, c_d).
    pub numerator: Vec<(i64, C)>,
    pub kpow: KPower<C>,
}

impl<C: Coeff> Level<C> {
    pub fn new(exponent: Vec<i64>, kpow: KPower<C>) -> Self {
        Level { exponent, numerator: vec![(0, C::one())], kpow }
    }

    /// Smallest exponent of the level's term at index n.
    fn low(&self, n: i64) -> i64 {
        let dmin = self.numerator.iter().map(|t| t.0).min().unwrap_or(0);
        eval_int_poly(&self.exponent, n) + dmin * n
    }

    /// Exponent polynomial including the lowest numerator shift.
    fn low_poly(&self) -> Vec<i64> {
        let dmin = self.numerator.iter().map(|t| t.0).min().unwrap_or(0);
        let mut p = self.exponent.clone();
        p.resize(p.len().max(2), 0);
        p[1] += dmin;
        while p.len() > 1 && p.last() == Some(&0) {
            p.pop();
        }
        p
    }
}

fn eval_int_poly(p: &[i64], n: i64) -> i64 {
    p.iter().rev().fold(0i64, |acc, &c| acc * n + c)
}

/// An index past which the polynomial is strictly increasing, or an error
/// if it does not tend to +∞.
fn monotone_from(p: &[i64]) -> Result<i64, Error> {
    let deg = p.len().saturating_sub(1);
    let lead = *p.last().unwrap_or(&0);
    if deg == 0 || lead <= 0 {
        return Err(Error::Domain("exponent must grow to +∞ with the summation index".into()));
    }
    // Cauchy bound on the roots of the derivative.
    let d: Vec<f64> = (1..=deg).map(|i| i as f64 * p[i] as f64).collect();
    let dl = *d.last().unwrap();
    let m = d[..d.len() - 1].iter().map(|c| (c / dl).abs()).fold(0.0, f64::max);
    Ok(1 + (1.0 + m).ceil() as i64)
}

/// Summation constraints shared by all levels.
#[derive(Clone, Debug, Default)]
pub struct Range {
    /// Non-strict chain n₁ ≤ … ≤ n_a instead of strict.
    pub star: bool,
    /// Only indices n ≤ limit.
    pub limit: Option<i64>,
    /// Only indices n ≡ ±b (mod m), as (b, m).
    pub residue: Option<(i64, i64)>,
}

impl Range {
    fn admits(&self, n: i64) -> bool {
        match self.residue {
            None => true,
            Some((b, m)) => {
                let x = n.rem_euclid(m);
                x == b.rem_euclid(m) || x == (-b).rem_euclid(m)
            }
        }
    }
}

/// The nested sum over `levels` (level j attached to n_j), exact below q^n.
/// An empty level list gives the constant 1.
pub fn nested_sum<C: Coeff>(levels: &[Level<C>], range: &Range, n: usize) -> Result<QSeries<C>, Error> {
    let depth = levels.len();
    if depth == 0 {
        return Ok(QSeries::one(n));
    }
    if let Some((_, m)) = range.residue {
        if m < 1 {
            return Err(Error::Domain("residue modulus must be positive".into()));
        }
    }
    let n_i = n as i64;
    // Lowest exponent each level can contribute over all indices.
    let mut minlow = Vec::with_capacity(depth);
    let mut mono = Vec::with_capacity(depth);
    for lvl in levels {
        let lp = lvl.low_poly();
        let b = monotone_from(&lp)?;
        minlow.push((1..=b + 1).map(|m| eval_int_poly(&lp, m)).min().unwrap());
        mono.push(b);
    }
    let base: i64 = minlow.iter().map(|&m| m.min(0)).sum();
    let width = (n_i - 2 * base).max(0) as usize;
    let rest: i64 = minlow[..depth - 1].iter().sum();
    let top = &levels[depth - 1];

    let mut cur: Vec<Vec<C>> = vec![vec![C::zero(); width]; depth + 1];
    if width > 0 {
        cur[0][(-base) as usize] = C::one();
    }
    let mut idx: i64 = 1;
    loop {
        if range.limit.is_some_and(|l| idx > l) {
            break;
        }
        if idx > mono[depth - 1] && top.low(idx) + rest >= n_i {
            break;
        }
        if range.admits(idx) {
            let order: Vec<usize> = if range.star { (1..=depth).collect() } else { (1..=depth).rev().collect() };
            for j in order {
                let t = apply_level(&cur[j - 1], &levels[j - 1], idx);
                if let Some(t) = t {
                    for (o, x) in cur[j].iter_mut().zip(t) {
                        if !x.is_zero() {
                            o.add_assign(&x);
                        }
                    }
                }
            }
        }
        idx += 1;
    }
    let mut v = std::mem::take(&mut cur[depth]);
    v.truncate((n_i - base).max(0) as usize);
    let s = QSeries::new(Rat::zero(), base, v);
    Ok(trim_negative(s))
}

/// Drops leading zero coefficients at negative exponents.
fn trim_negative<C: Coeff>(s: QSeries<C>) -> QSeries<C> {
    match s.order() {
        Some(o) if o < 0 => s.normalize(),
        _ if s.valuation() < 0 => {
            let keep = s.precision();
            let lo = 0.min(keep);
            QSeries::new(Rat::zero(), lo, s.coeffs()[(lo - s.valuation()) as usize..].to_vec())
        }
        _ => s,
    }
}

/// `f_level(n) · src` on the common window; `None` when nothing lands inside.
fn apply_level<C: Coeff>(src: &[C], lvl: &Level<C>, n: i64) -> Option<Vec<C>> {
    let w = src.len();
    let first = src.iter().position(|c| !c.is_zero())?;
    let e0 = eval_int_poly(&lvl.exponent, n);
    let mut t = vec![C::zero(); w];
    let mut any = false;
    for (d, c) in &lvl.numerator {
        let shift = e0 + d * n;
        if first as i64 + shift >= w as i64 {
            continue;
        }
        for i in first..w {
            let dst = i as i64 + shift;
            if dst >= w as i64 {
                break;
            }
            if dst < 0 || src[i].is_zero() {
                continue;
            }
            t[dst as usize].add_assign(&src[i].mul_ref(c));
            any = true;
        }
    }
    if !any {
        return None;
    }
    let step = n as usize;
    match &lvl.kpow {
        KPower::Int(k) => apply_geometric_power(&mut t, step, *k),
        KPower::Expansion(g) => {
            assert!(g.len() * step >= w, "expansion of length {} too short for window {w}", g.len());
            let mut out = t.clone();
            for (m, gm) in g.iter().enumerate().skip(1) {
                let off = m * step;
                if off >= w {
                    break;
                }
                if gm.is_zero() {
                    continue;
                }
                for i in 0..w - off {
                    if !t[i].is_zero() {
                        out[i + off].add_assign(&t[i].mul_ref(gm));
                    }
                }
            }
            t = out;
        }
    }
    Some(t)
}

/// Coefficients C(m + k + shift − 1, m), m < len, of 1/(1 − x)^{k+shift}
/// as polynomials in a formal k.
pub fn symbolic_geometric(shift: i64, len: usize) -> Vec<Poly> {
    (0..len as i64).map(|m| Poly::binomial_in(Var::K, m + shift - 1, m as usize)).collect()
}

/// Exponent of a level as a function of n: r·n, or r·n² + s·n.
fn linear(r: i64) -> Vec<i64> {
    vec![0, r]
}

fn quadratic(r: i64, s: i64) -> Vec<i64> {
    vec![0, s, r]
}

fn int_level<C: Coeff>(exp: Vec<i64>, k: i64) -> Level<C> {
    Level::new(exp, KPower::Int(k))
}

fn symbolic_level(exp: Vec<i64>, kshift: i64, n: usize) -> Level<Poly> {
    Level::new(exp, KPower::Expansion(symbolic_geometric(kshift, n + 1)))
}

/// Parameters of a MacMahon-type series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacParams {
    pub a: usize,
    pub k: i64,
    pub r: i64,
    /// Linear exponent weight of the quadratic family.
    pub s: i64,
    /// Strict chain (unstarred) versus non-strict.
    pub strict: bool,
    /// Restrict every index to n ≡ ±b (mod m).
    pub residue: Option<(i64, i64)>,
}

impl MacParams {
    pub fn new(a: usize, k: i64, r: i64) -> Self {
        MacParams { a, k, r, s: 0, strict: true, residue: None }
    }

    pub fn with_s(mut self, s: i64) -> Self {
        self.s = s;
        self
    }

    pub fn star(mut self) -> Self {
        self.strict = false;
        self
    }

    pub fn residue(mut self, b: i64, m: i64) -> Self {
        self.residue = Some((b, m));
        self
    }

    fn range(&self, limit: Option<i64>) -> Range {
        Range { star: !self.strict, limit, residue: self.residue }
    }

    fn check(&self) -> Result<(), Error> {
        if self.r < 1 {
            return Err(Error::Domain(format!("r must be positive, got {}", self.r)));
        }
        Ok(())
    }

    /// Σ q^{r(n₁+…+n_a)} / Π (1 − q^{n_j})^k, exact below q^n.
    pub fn series_a_in<C: Coeff>(&self, n: usize) -> Result<QSeries<C>, Error> {
        self.check()?;
        let levels: Vec<Level<C>> = (0..self.a).map(|_| int_level(linear(self.r), self.k)).collect();
        nested_sum(&levels, &self.range(None), n)
    }

    /// Σ q^{r Σn_j² + s Σn_j} / Π (1 − q^{n_j})^k, exact below q^n.
    pub fn series_b_in<C: Coeff>(&self, n: usize) -> Result<QSeries<C>, Error> {
        self.check()?;
        let levels: Vec<Level<C>> = (0..self.a).map(|_| int_level(quadratic(self.r, self.s), self.k)).collect();
        nested_sum(&levels, &self.range(None), n)
    }

    pub fn series_a(&self, n: usize) -> Result<QSeries<Rat>, Error> {
        self.series_a_in(n)
    }

    pub fn series_b(&self, n: usize) -> Result<QSeries<Rat>, Error> {
        self.series_b_in(n)
    }

    /// The linear family with k formal (the `k` field is ignored).
    pub fn series_a_symbolic(&self, n: usize) -> Result<QSeries<Poly>, Error> {
        self.check()?;
        let levels: Vec<Level<Poly>> = (0..self.a).map(|_| symbolic_level(linear(self.r), 0, n)).collect();
        nested_sum(&levels, &self.range(None), n)
    }

    /// The quadratic family with exponent k + `kshift`, k formal.
    pub fn series_b_symbolic(&self, kshift: i64, n: usize) -> Result<QSeries<Poly>, Error> {
        self.check()?;
        let exp = quadratic(self.r, self.s);
        // window grows by twice the total negative exponent reach
        let dip = (1..=self.s.abs() + 1).map(|m| eval_int_poly(&exp, m)).min().unwrap_or(0).min(0);
        let len = n + 2 * self.a * (-dip) as usize;
        let levels: Vec<Level<Poly>> = (0..self.a).map(|_| symbolic_level(exp.clone(), kshift, len)).collect();
        nested_sum(&levels, &self.range(None), n)
    }

    /// The linear family with all indices at most `upto`.
    pub fn series_finite(&self, upto: i64, n: usize) -> Result<QSeries<Rat>, Error> {
        self.check()?;
        let levels: Vec<Level<Rat>> = (0..self.a).map(|_| int_level(linear(self.r), self.k)).collect();
        nested_sum(&levels, &self.range(Some(upto)), n)
    }
}

/// Shorthand for the strict linear family over ℚ.
pub fn series_a(a: usize, k: i64, r: i64, n: usize) -> QSeries<Rat> {
    MacParams::new(a, k, r).series_a(n).expect("valid parameters")
}

/// Shorthand for the starred linear family over ℚ.
pub fn series_a_star(a: usize, k: i64, r: i64, n: usize) -> QSeries<Rat> {
    MacParams::new(a, k, r).star().series_a(n).expect("valid parameters")
}

/// Shorthand for the strict quadratic family over ℚ.
pub fn series_b(a: usize, k: i64, r: i64, s: i64, n: usize) -> QSeries<Rat> {
    MacParams::new(a, k, r).with_s(s).series_b(n).expect("valid parameters")
}

/// Σ_{n₁<…<n_a} q^{Σ P(n_j)} / Π (1 − q^{n_j})^k for P ∈ ℕ₀[x] non-constant
/// (coefficients lowest degree first).
pub fn series_c(a: usize, k: i64, p: &[i64], n: usize) -> Result<QSeries<Rat>, Error> {
    if p.iter().any(|&c| c < 0) {
        return Err(Error::Domain("polynomial coefficients must be nonnegative".into()));
    }
    let levels: Vec<Level<Rat>> = (0..a).map(|_| int_level(p.to_vec(), k)).collect();
    nested_sum(&levels, &Range::default(), n)
}

/// g_{k₁..k_a; r₁..r_a} = Σ_{n₁<…<n_a} Π q^{r_j n_j}/(1 − q^{n_j})^{k_j}.
pub fn g_mzv(ks: &[i64], rs: &[i64], n: usize) -> Result<QSeries<Rat>, Error> {
    if ks.len() != rs.len() {
        return Err(Error::Domain("index lists differ in length".into()));
    }
    let levels: Vec<Level<Rat>> = ks.iter().zip(rs).map(|(&k, &r)| int_level(linear(r), k)).collect();
    nested_sum(&levels, &Range::default(), n)
}

/// g_{k₁..k_a; P₁..P_a} = Σ_{n₁<…<n_a} Π P_j(q^{n_j})/(1 − q^{n_j})^{k_j}
/// with P_j ∈ xℚ[x] of degree at most k_j (coefficients lowest degree first).
pub fn g_poly(ks: &[i64], ps: &[Vec<Rat>], n: usize) -> Result<QSeries<Rat>, Error> {
    if ks.len() != ps.len() {
        return Err(Error::Domain("index lists differ in length".into()));
    }
    let mut levels = Vec::with_capacity(ks.len());
    for (&k, p) in ks.iter().zip(ps) {
        let deg = p.iter().rposition(|c| !c.is_zero());
        match deg {
            None => return Err(Error::Domain("numerator polynomial is zero".into())),
            Some(d) if d as i64 > k => {
                return Err(Error::Domain(format!("numerator degree {d} exceeds denominator exponent {k}")))
            }
            _ => {}
        }
        if !p[0].is_zero() {
            return Err(Error::Domain("numerator polynomial must vanish at 0".into()));
        }
        let numerator = p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| (d as i64, c.clone())).collect();
        levels.push(Level { exponent: vec![0], numerator, kpow: KPower::Int(k) });
    }
    nested_sum(&levels, &Range::default(), n)
}

/// 1/(1 − q^step)^k as a series (integer k).
pub fn geometric(step: usize, k: i64, n: usize) -> QSeries<Rat> {
    let mut v = vec![Rat::zero(); n];
    if n > 0 {
        v[0] = Rat::one();
    }
    apply_geometric_power(&mut v, step, k);
    QSeries::from_coeffs(v)
}

/// W_{a,m} = Σ_{j=1}^{m} (−1)^{j+1} q^{j(j+1)/2 + (a−1)j} (1 − q^j)^{−a} [m choose j]_q.
pub fn dilcher_w(a: i64, m: usize, n: usize) -> QSeries<Rat> {
    let mut acc = QSeries::zero(n);
    for j in 1..=m {
        let ji = j as i64;
        let e = ji * (ji + 1) / 2 + (a - 1) * ji;
        let sign = if j % 2 == 1 { int(1) } else { int(-1) };
        let term = QSeries::monomial(e, sign, n as i64)
            .mul(&geometric(j, a, n))
            .mul(&qbinom(m, ji, n).expect("index in range").truncate(n as i64));
        acc = acc.add(&term);
    }
    acc
}

/// Valuation of the linear family: r·a(a+1)/2.
pub fn shift_a(a: usize, r: i64) -> i64 {
    let a = a as i64;
    r * a * (a + 1) / 2
}

/// Valuation of the quadratic family: a(a+1)(r + 2ar + 3s)/6.
pub fn shift_b(a: usize, r: i64, s: i64) -> i64 {
    let a = a as i64;
    a * (a + 1) * (r + 2 * a * r + 3 * s) / 6
}

/// Which family a limit check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
}

/// Compares the normalized series q^{−shift}·(family) with its limiting eta
/// quotient below q^{window}; returns the first exponent where they differ.
///
/// The limit is 1/((q^r; q^r)_∞ (q; q)_∞^k) for the linear family and
/// 1/(q; q)_∞^k for the quadratic one; agreement holds below q^{a+1}.
pub fn limit_defect(family: Family, a: usize, k: i64, r: i64, s: i64, window: usize) -> Result<Option<i64>, Error> {
    let p = MacParams::new(a, k, r).with_s(s);
    let (shift, series, quotient) = match family {
        Family::A => {
            let sh = shift_a(a, r);
            let ser = p.series_a(window + sh as usize)?;
            (sh, ser, eta_product(&[(r as usize, -1), (1, -k)], window, false))
        }
        Family::B => {
            let sh = shift_b(a, r, s);
            let ser = p.series_b((window as i64 + sh).max(1) as usize)?;
            (sh, ser, eta_product(&[(1, -k)], window, false))
        }
    };
    let normalized = series.shift(-shift).truncate(window as i64);
    Ok(normalized.rebase(0).first_difference(&quotient))
}

/// Σ_{m ≤ ⌊n/r⌋} p(m) · Σ_{λ ⊢ n − rm} Π_h (1 + (k − 1)/h²), symbolic in k.
pub fn hook_prediction_a(n: usize, r: usize) -> Poly {
    let parts = crate::partitions::enumerate;
    let mut total = Poly::zero(Var::K);
    for m in 0..=n / r {
        let pm = int(parts(m).len() as i64);
        total = total.add(&hook_sum(n - r * m, Var::K, -1).scale(&pm));
    }
    total
}

/// Coefficients of q^{shift}, …, q^{shift+window−1} of
/// Σ_{n₁<…<n_a} q^{Σ exp(n_j)} / Π (1 − q^{n_j})^{k+kshift}, symbolic in k,
/// where shift = Σ_{j≤a} exp(j). Only chains within `window` of the minimum
/// are visited, so this stays cheap when the shift is large.
/// `exp` must be strictly increasing on the positive integers.
fn symbolic_window(a: usize, exp: &dyn Fn(i64) -> i64, kshift: i64, window: usize) -> Vec<Poly> {
    let base: i64 = (1..=a as i64).map(exp).sum();
    let geo = symbolic_geometric(kshift, window);
    let mut out = vec![Poly::zero(Var::K); window];
    let mut chain = Vec::with_capacity(a);
    fn rec(a: usize, exp: &dyn Fn(i64) -> i64, base: i64, window: usize, geo: &[Poly], chain: &mut Vec<i64>, sum: i64, out: &mut [Poly]) {
        if chain.len() == a {
            let excess = (sum - base) as usize;
            let w = window - excess;
            let mut prod = vec![Poly::zero(Var::K); w];
            prod[0] = Poly::constant(Var::K, Rat::one());
            for &n in chain.iter() {
                let n = n as usize;
                let mut next = vec![Poly::zero(Var::K); w];
                for (i, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (m, g) in geo.iter().enumerate().take_while(|(m, _)| i + m * n < w) {
                        next[i + m * n] = next[i + m * n].add(&c.mul(g));
                    }
                }
                prod = next;
            }
            for (i, c) in prod.into_iter().enumerate() {
                out[excess + i] = out[excess + i].add(&c);
            }
            return;
        }
        let mut n = chain.last().map_or(1, |&l| l + 1);
        loop {
            let rest = a - chain.len();
            let least: i64 = (n..n + rest as i64).map(exp).sum();
            if sum + least - base >= window as i64 {
                break;
            }
            chain.push(n);
            rec(a, exp, base, window, geo, chain, sum + exp(n), out);
            chain.pop();
            n += 1;
        }
    }
    rec(a, exp, base, window, &geo, &mut chain, 0, &mut out);
    out
}

/// First n ≤ a where c_{a,k,r}(n + ra(a+1)/2), symbolic in k, differs from
/// the partition-weighted hook sum.
pub fn hook_prediction_defect(a: usize, r: i64) -> Result<Option<usize>, Error> {
    if r < 1 {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let w = symbolic_window(a, &|n| r * n, 0, a + 1);
    Ok((0..=a).find(|&n| w[n] != hook_prediction_a(n, r as usize)))
}

/// First n ≤ a where c_{a,k,1}(n + a(a+1)/2), d_{a,k+1,r,s}(n + shift) and
/// Σ_λ Π_h (1 + k/h²) fail to coincide as polynomials in k.
pub fn hook_rhs_defect(a: usize, r: i64, s: i64) -> Result<Option<usize>, Error> {
    if r < 1 || s < 0 {
        return Err(Error::Domain(format!("need r ≥ 1 and s ≥ 0, got r = {r}, s = {s}")));
    }
    let lin = symbolic_window(a, &|n| n, 0, a + 1);
    let quad = symbolic_window(a, &|n| r * n * n + s * n, 1, a + 1);
    Ok((0..=a).find(|&n| {
        let want = crate::partitions::hook_rhs(n);
        lin[n] != want || quad[n] != want
    }))
}

/// 𝒫_{a,r,n}(k) = Σ Π_j C(m_j + k − r − 1, m_j − r) over n₁ < … < n_a and
/// m_j ≥ 1 with Σ m_j n_j = n, enumerated directly.
pub fn coeff_poly(a: usize, r: i64, n: i64) -> Poly {
    fn rec(a: usize, r: i64, lo: i64, remaining: i64, acc: &Poly, total: &mut Poly) {
        if a == 0 {
            if remaining == 0 {
                *total = total.add(acc);
            }
            return;
        }
        let mut nj = lo;
        loop {
            // the later indices are at least nj+1, nj+2, … with multiplicity 1
            let rest_min: i64 = (1..a as i64).map(|i| nj + i).sum();
            if nj + rest_min > remaining {
                break;
            }
            let mut mj = 1;
            while mj * nj + rest_min <= remaining {
                let b = binom_poly(mj, r);
                if !b.is_zero() {
                    rec(a - 1, r, nj + 1, remaining - mj * nj, &acc.mul(&b), total);
                }
                mj += 1;
            }
            nj += 1;
        }
    }
    let mut total = Poly::zero(Var::K);
    rec(a, r, 1, n, &Poly::constant(Var::K, Rat::one()), &mut total);
    total
}

/// Strictly increasing chains n₁ < … < n_a with Σ n_j = total.
fn chains(a: usize, lo: i64, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if a == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let mut nj = lo;
    // the remaining a − 1 indices exceed nj
    while nj * a as i64 + (a as i64 * (a as i64 - 1)) / 2 <= total {
        prefix.push(nj);
        chains(a - 1, nj + 1, total - nj, prefix, out);
        prefix.pop();
        nj += 1;
    }
}

/// Σ over e_j ≥ 0 with Σ e_j n_j = ell of Π C(e_j + k − 1, e_j), in k.
fn excess_weight(ns: &[i64], ell: i64) -> Poly {
    match ns.split_first() {
        None => {
            if ell == 0 {
                Poly::constant(Var::K, Rat::one())
            } else {
                Poly::zero(Var::K)
            }
        }
        Some((&n0, rest)) => {
            let mut total = Poly::zero(Var::K);
            let mut e = 0;
            while e * n0 <= ell {
                let w = binom_poly(e + 1, 1);
                total = total.add(&w.mul(&excess_weight(rest, ell - e * n0)));
                e += 1;
            }
            total
        }
    }
}

/// Block polynomial of the linear family: 𝒜_{a,k,r} = Σ_{n,ℓ} P(k) q^{nr+ℓ}
/// with q^r treated as independent of q. Sums over n₁ < … < n_a with
/// Σ n_j = n and m_j ≥ 1 with Σ m_j n_j = n + ℓ.
pub fn block_poly_a(a: usize, ell: i64, n: i64) -> Poly {
    let mut cs = Vec::new();
    chains(a, 1, n, &mut Vec::new(), &mut cs);
    cs.iter().fold(Poly::zero(Var::K), |acc, c| acc.add(&excess_weight(c, ell)))
}

/// Block polynomial of the quadratic family: coefficient of q^{mr + ns + ℓ}
/// with q^r, q^s and q independent; chains additionally satisfy Σ n_j² = m.
pub fn block_poly_b(a: usize, ell: i64, m: i64, n: i64) -> Poly {
    let mut cs = Vec::new();
    chains(a, 1, n, &mut Vec::new(), &mut cs);
    cs.iter()
        .filter(|c| c.iter().map(|x| x * x).sum::<i64>() == m)
        .fold(Poly::zero(Var::K), |acc, c| acc.add(&excess_weight(c, ell)))
}

/// Reassembles Σ_{n,ℓ} block_poly_a(a, ℓ, n) q^{nr+ℓ} below q^len.
pub fn series_a_from_blocks(a: usize, r: i64, len: usize) -> QSeries<Poly> {
    let mut v = vec![Poly::zero(Var::K); len];
    let mut n = shift_a(a, 1);
    while n * r < len as i64 {
        for ell in 0..len as i64 - n * r {
            v[(n * r + ell) as usize] = v[(n * r + ell) as usize].add(&block_poly_a(a, ell, n));
        }
        n += 1;
    }
    QSeries::from_coeffs(v)
}

/// Leading coefficient 1/(n − ra(a+1)/2)! predicted for 𝒫_{a,r,n}.
pub fn coeff_poly_leading(a: usize, r: i64, n: i64) -> Option<(usize, Rat)> {
    let d = n - shift_a(a, r);
    (d >= 0).then(|| (d as usize, Rat::new(BigInt::one(), factorial(d as u64))))
}

/// p₃ generating function versus q^{−κ(κ+1)/2} Σ_{m=κ}^{M} C(2m+1, m+κ+1) 𝒜_{m,2,1}
/// below q^n. Errors when the cutoff M leaves a visible tail.
pub fn ono_singh_defect(kappa: usize, m_max: usize, n: usize) -> Result<Option<i64>, Error> {
    let shift = (kappa * (kappa + 1) / 2) as i64;
    let need = n as i64 + shift;
    if ((m_max * (m_max + 1) / 2) as i64) <= need {
        return Err(Error::Domain(format!("cutoff {m_max} too small for order {n} (tail from depth {} is visible)", m_max + 1)));
    }
    let lhs = eta_product(&[(1, -3)], n, false);
    let mut rhs = QSeries::<Rat>::zero(need as usize);
    for m in kappa..=m_max {
        let c = binomial(2 * m as i64 + 1, (m + kappa + 1) as i64);
        if c.is_zero() {
            continue;
        }
        let am = series_a(m, 2, 1, need as usize);
        rhs = rhs.add(&am.scale(&Rat::from_integer(c)));
    }
    let rhs = rhs.shift(-shift).truncate(n as i64).rebase(0);
    Ok(rhs.first_difference(&lhs))
}

/// Reading of the factorial ratio inside the Andrews–Rose formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorialReading {
    /// (n + a)!/(n − a)! with a the depth.
    Depth,
    /// (n + k)!/(n − k)! with k = 2, the denominator exponent.
    Literal,
}

/// 𝒜_{a,2,1} versus ((−1)^a / ((2a+1)! (q;q)_∞³)) Σ_{n≥0} (−1)^n (2n+1) ((n+j)!/(n−j)!) q^{n(n+1)/2}.
pub fn andrews_rose_defect(a: usize, reading: FactorialReading, n: usize) -> Option<i64> {
    let j = match reading {
        FactorialReading::Depth => a as i64,
        FactorialReading::Literal => 2,
    };
    let mut v = vec![Rat::zero(); n];
    let mut m = 0i64;
    while (m * (m + 1) / 2) < n as i64 {
        if m >= j {
            let ratio = (m - j + 1..=m + j).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
            let sign = if m % 2 == 0 { 1 } else { -1 };
            v[(m * (m + 1) / 2) as usize] += Rat::from_integer(ratio * BigInt::from(sign * (2 * m + 1)));
        }
        m += 1;
    }
    let sign = if a % 2 == 0 { int(1) } else { int(-1) };
    let pref = sign / Rat::from_integer(factorial(2 * a as u64 + 1));
    let rhs = QSeries::from_coeffs(v).mul(&eta_product(&[(1, -3)], n, false)).scale(&pref);
    series_a(a, 2, 1, n).rebase(0).first_difference(&rhs)
}

/// The eta quotient multiplying −k q^{a+1} in the conjectured next-order
/// correction to the limit of 𝒜_{a,k,r}, r ∈ {2,3,4,5}.
pub fn correction_quotient(k: i64, r: i64, n: usize) -> Result<QSeries<Rat>, Error> {
    let f: Vec<(usize, i64)> = match r {
        2 => vec![(2, 3), (1, -(k + 2))],
        3 => vec![(3, 2), (1, -(k + 1))],
        4 => vec![(2, 1), (4, 1), (1, -(k + 1))],
        5 => vec![(2, 1), (3, 1), (5, 2), (1, -(k + 1)), (4, -1)],
        _ => return Err(Error::Domain(format!("no correction display for r = {r}"))),
    };
    Ok(eta_product(&f, n, false))
}

/// q^{−r a(a+1)/2} 𝒜_{a,k,r} − 1/((q^r;q^r)(q;q)^k) versus −k q^{a+1}·quotient,
/// compared below q^{window}.
pub fn leading_correction_defect(a: usize, k: i64, r: i64, window: usize) -> Result<Option<i64>, Error> {
    let sh = shift_a(a, r);
    let lhs = series_a(a, k, r, window + sh as usize)
        .shift(-sh)
        .truncate(window as i64)
        .rebase(0)
        .sub(&eta_product(&[(r as usize, -1), (1, -k)], window, false));
    let rhs = correction_quotient(k, r, window)?.shift(a as i64 + 1).scale(&int(-k)).truncate(window as i64);
    Ok(lhs.first_difference(&rhs.rebase(0)))
}

/// Finite-sum recurrence residual for the strict (`star = false`) or
/// starred recurrence at depth a, index m, below q^n:
///
/// strict: 𝒜_a(m) − 𝒜_a(m−1) = q^{rm}(1 − q^m)^{−k} 𝒜_{a−1}(m−1)
/// starred: 𝒜*_a(m) − 𝒜*_a(m−1) = q^{rm}(1 − q^m)^{−k} 𝒜*_{a−1}(m)
pub fn finite_recurrence_defect(a: usize, k: i64, r: i64, m: i64, star: bool, n: usize) -> Option<i64> {
    let p = |depth: usize| {
        let q = MacParams::new(depth, k, r);
        if star {
            q.star()
        } else {
            q
        }
    };
    let fa = |depth: usize, upto: i64| p(depth).series_finite(upto, n).expect("valid");
    let lhs = fa(a, m).sub(&fa(a, m - 1));
    let factor = QSeries::monomial(r * m, int(1), n as i64).mul(&geometric(m as usize, k, n));
    let inner = if star { fa(a - 1, m) } else { fa(a - 1, m - 1) };
    lhs.first_difference(&factor.mul(&inner))
}

/// Dilcher's finite identity 𝒜*_{a,1,1}(m; q) = W_{a,m}.
pub fn dilcher_finite_defect(a: usize, m: i64, n: usize) -> Option<i64> {
    let lhs = MacParams::new(a, 1, 1).star().series_finite(m, n).expect("valid");
    lhs.first_difference(&dilcher_w(a as i64, m as usize, n))
}

/// W_{a,m} − W_{a,m−1} = q^m/(1 − q^m) W_{a−1,m}.
pub fn dilcher_w_recurrence_defect(a: i64, m: usize, n: usize) -> Option<i64> {
    let lhs = dilcher_w(a, m, n).sub(&dilcher_w(a, m - 1, n));
    let rhs = QSeries::monomial(m as i64, int(1), n as i64).mul(&geometric(m, 1, n)).mul(&dilcher_w(a - 1, m, n));
    lhs.first_difference(&rhs)
}

/// 𝒜*_{a,1,1} = Σ_{m≥a} C(m, a) q^m (q^{m+1}; q)_∞.
pub fn dilcher_infinite_defect(a: usize, n: usize) -> Option<i64> {
    let mut rhs = QSeries::<Rat>::zero(n);
    for m in a.max(1)..n {
        let mut tail = QSeries::monomial(m as i64, Rat::from_integer(binomial(m as i64, a as i64)), n as i64);
        for j in m + 1..n {
            tail = tail.mul(&QSeries::from_terms(&[(0, int(1)), (j as i64, int(-1))], n as i64));
        }
        rhs = rhs.add(&tail);
    }
    series_a_star(a, 1, 1, n).rebase(0).first_difference(&rhs)
}

/// 𝒜*_{a,2,1} = Σ_{m≥1} (−1)^{m+1} (1 + q^m) q^{m(m+1)/2 + (a−1)m} / (1 − q^m)^{2a}.
pub fn aat_defect(a: usize, n: usize) -> Option<i64> {
    let ai = a as i64;
    let mut rhs = QSeries::<Rat>::zero(n);
    let mut m = 1i64;
    while m * (m + 1) / 2 + (ai - 1) * m < n as i64 {
        let sign = if m % 2 == 1 { int(1) } else { int(-1) };
        let t = QSeries::from_terms(&[(0, int(1)), (m, int(1))], n as i64)
            .mul(&QSeries::monomial(m * (m + 1) / 2 + (ai - 1) * m, sign, n as i64))
            .mul(&geometric(m as usize, 2 * ai, n));
        rhs = rhs.add(&t);
        m += 1;
    }
    series_a_star(a, 2, 1, n).rebase(0).first_difference(&rhs)
}

/// Integer coefficients of the linear family, for congruence scans.
pub fn c_coeffs(a: usize, k: i64, r: i64, n: usize) -> Result<QSeries<BigInt>, Error> {
    MacParams::new(a, k, r).series_a_in(n)
}

/// Integer coefficients of the quadratic family, for congruence scans.
pub fn d_coeffs(a: usize, k: i64, r: i64, s: i64, n: usize) -> Result<QSeries<BigInt>, Error> {
    MacParams::new(a, k, r).with_s(s).series_b_in(n)
}

/// ⟨H_{k₁..;r₁..}⟩_q, which should reproduce g_{k₁..;r₁..}.
pub fn h_bracket(ks: &[i64], rs: &[i64], n: usize) -> QSeries<Rat> {
    crate::partitions::q_bracket(|lam: &Partition| crate::partitions::h_statistic(lam, ks, rs), n)
}
