//! Words over ℕ^d with the quasi-shuffle product, the Hoffman–Ihara
//! exponential, exponential reconstruction of depth-a series from depth one,
//! and expansion of 𝒜_{a,k,r} in Eisenstein symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::eisenstein::g_series;
use crate::exactnum::{bernoulli, int, stirling_first, factorial, binomial, Poly, Rat, Var};
use crate::macmahon::{nested_sum, series_a, series_b, KPower, Level, Range};
use crate::series::{exp_adic, QSeries};
use crate::Error;

/// A letter of ℕ^d, e.g. (k, r) or (k, r, s).
pub type Letter = Vec<i64>;

/// A monic monomial in the letters; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Sum of first components.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(|l| l[0]).sum()
    }

    /// Common letter dimension, or None for the empty word.
    pub fn dim(&self) -> Option<usize> {
        self.0.first().map(|l| l.len())
    }

    /// The n-fold concatenation of a letter.
    pub fn power(l: &Letter, n: usize) -> Self {
        Word(vec![l.clone(); n])
    }

    /// q-series of the word: a nested sum over n₁ < … < n_a of
    /// q^{r n + s n²}/(1 − q^n)^k for letters (k, r) or (k, r, s).
    pub fn eval(&self, n: usize) -> Result<QSeries<Rat>, Error> {
        let levels = self
            .0
            .iter()
            .map(|l| match l.as_slice() {
                [k, r] => Ok(Level::new(vec![0, *r], KPower::Int(*k))),
                [k, r, s] => Ok(Level::new(vec![0, *s, *r], KPower::Int(*k))),
                _ => Err(Error::Domain(format!("letters must have 2 or 3 components, got {}", l.len()))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        nested_sum(&levels, &Range::default(), n)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let s: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

fn diamond(a: &Letter, b: &Letter) -> Letter {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Rational linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, Rat>,
}

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn one() -> Self {
        WordSum::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        let mut s = WordSum::zero();
        s.add_term(w, Rat::one());
        s
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> WordSum {
        let mut out = WordSum::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Letter dimension shared by all nonempty words.
    fn dim(&self) -> Result<Option<usize>, Error> {
        let mut d = None;
        for w in self.terms.keys() {
            if let Some(e) = w.dim() {
                if w.0.iter().any(|l| l.len() != e) || d.is_some_and(|d| d != e) {
                    return Err(Error::Domain("letters of different dimensions".into()));
                }
                d = Some(e);
            }
        }
        Ok(d)
    }

    pub fn eval(&self, n: usize) -> Result<QSeries<Rat>, Error> {
        let mut out = QSeries::zero(n);
        for (w, c) in &self.terms {
            out = out.add(&w.eval(n)?.scale(c));
        }
        Ok(out)
    }
}

/// Quasi-shuffle of two words with componentwise addition as the diamond.
fn qsh_words(u: &[Letter], v: &[Letter], memo: &mut BTreeMap<(Vec<Letter>, Vec<Letter>), WordSum>) -> WordSum {
    if u.is_empty() {
        return WordSum::word(Word(v.to_vec()));
    }
    if v.is_empty() {
        return WordSum::word(Word(u.to_vec()));
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let (a, w) = (&u[0], &u[1..]);
    let (b, t) = (&v[0], &v[1..]);
    let mut out = WordSum::zero();
    let mut prepend = |first: &Letter, rest: WordSum| {
        for (word, c) in rest.terms {
            let mut letters = Vec::with_capacity(word.0.len() + 1);
            letters.push(first.clone());
            letters.extend(word.0);
            out.add_term(Word(letters), c);
        }
    };
    prepend(a, qsh_words(w, v, memo));
    prepend(b, qsh_words(u, t, memo));
    prepend(&diamond(a, b), qsh_words(w, t, memo));
    memo.insert(key, out.clone());
    out
}

/// The quasi-shuffle product, extended bilinearly.
pub fn qsh(x: &WordSum, y: &WordSum) -> Result<WordSum, Error> {
    if let (Some(d), Some(e)) = (x.dim()?, y.dim()?) {
        if d != e {
            return Err(Error::Domain(format!("cannot quasi-shuffle letters of dimension {d} and {e}")));
        }
    }
    let mut memo = BTreeMap::new();
    let mut out = WordSum::zero();
    for (u, c) in &x.terms {
        for (v, e) in &y.terms {
            out = out.add(&qsh_words(&u.0, &v.0, &mut memo).scale(&(c * e)));
        }
    }
    Ok(out)
}

/// Coefficient of X^j in exp_*(Σ_{n≥1} (−1)^{n+1}/n · X^n · a^{⋄n}), computed
/// in the word algebra. The Hoffman–Ihara identity says this is the word a^j.
pub fn qsh_exp_coeff(a: &Letter, j: usize) -> WordSum {
    // f_n = (−1)^{n+1}/n · a^{⋄n};  exp via m g_m = Σ_{i=1}^m i f_i g_{m−i}
    let f: Vec<WordSum> = (0..=j)
        .map(|n| {
            if n == 0 {
                return WordSum::zero();
            }
            let letter: Letter = a.iter().map(|x| x * n as i64).collect();
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            WordSum::word(Word::letter(letter)).scale(&(sign / int(n as i64)))
        })
        .collect();
    let mut g = vec![WordSum::one()];
    for m in 1..=j {
        let mut s = WordSum::zero();
        for i in 1..=m {
            let p = qsh(&f[i], &g[m - i]).expect("single dimension");
            s = s.add(&p.scale(&int(i as i64)));
        }
        g.push(s.scale(&Rat::new(One::one(), (m as i64).into())));
    }
    g.swap_remove(j)
}

/// Which nested sum to rebuild from depth one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpKind {
    /// 𝒜_{a,k,r}: strict, base (k, r).
    A,
    /// 𝒜*_{a,k,r}: weakly increasing, base (k, r).
    AStar,
    /// ℬ_{a,k,r,s}: strict, base (k, r, s).
    B,
}

/// Coefficient of X^a in the exponential of the depth-one series
/// 𝒜_{nk,nr} (or ℬ_{nk,nr,ns}) weighted by (−1)^{n+1}/n, or by 1/n for 𝒜*.
pub fn exp_reconstruct(kind: ExpKind, base: &[i64], a: usize, n: usize) -> Result<QSeries<Rat>, Error> {
    let expect = if kind == ExpKind::B { 3 } else { 2 };
    if base.len() != expect {
        return Err(Error::Domain(format!("base needs {expect} components")));
    }
    let mut f = vec![QSeries::zero(n)];
    for m in 1..=a as i64 {
        let depth_one = match kind {
            ExpKind::A | ExpKind::AStar => series_a(1, m * base[0], m * base[1], n),
            ExpKind::B => series_b(1, m * base[0], m * base[1], m * base[2], n),
        };
        let sign = if kind == ExpKind::AStar || m % 2 == 1 { 1 } else { -1 };
        f.push(depth_one.scale(&(int(sign) / int(m))));
    }
    let mut g = exp_adic(&f, n)?;
    Ok(g.swap_remove(a))
}

/// C_{k,r,j}: the coefficient of m^j in C(m + k − r − 1, m − r) viewed as a
/// polynomial of degree k − 1 in m.
pub fn c_coeff(k: i64, r: i64, j: i64) -> Rat {
    assert!(k >= 1);
    if j < 0 || j > k - 1 {
        return Rat::zero();
    }
    let km1 = (k - 1) as usize;
    let base = int(k - r - 1);
    let mut total = Rat::zero();
    for l in 0..=(k - 1 - j) {
        let term = Rat::from_integer(binomial(j + l, j)) * base.pow(l as i32) * stirling_first(km1, j + l);
        total += term;
    }
    total / Rat::from_integer(factorial(km1 as u64))
}

/// Polynomial in Eisenstein symbols G_j. A monomial is the sorted list of its
/// indices; the empty list is the constant term.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EisExpr {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl EisExpr {
    pub fn zero() -> Self {
        EisExpr::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut e = EisExpr::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn symbol(j: u32) -> Self {
        let mut e = EisExpr::zero();
        e.add_term(vec![j], Rat::one());
        e
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn coeff(&self, mono: &[u32]) -> Rat {
        let mut key = mono.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[])
    }

    fn add_term(&mut self, mut mono: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, o: &EisExpr) -> EisExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> EisExpr {
        let mut out = EisExpr::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, o: &EisExpr) -> EisExpr {
        let mut out = EisExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Number of symbols in the longest monomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Largest index sum over all monomials.
    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Whether some monomial uses an odd-index symbol.
    pub fn has_odd_symbol(&self) -> bool {
        self.terms.keys().any(|m| m.iter().any(|j| j % 2 == 1))
    }

    pub fn to_json(&self) -> Value {
        let monomials: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!({"sym": m, "coeff": c.to_string()}))
            .collect();
        json!({ "monomials": monomials })
    }
}

impl fmt::Display for EisExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher-degree, higher-index monomials first
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
        for (i, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}", c.abs())?;
            let mut j = 0;
            while j < m.len() {
                let run = m[j..].iter().take_while(|&&x| x == m[j]).count();
                if run > 1 {
                    write!(f, " * G{}^{}", m[j], run)?;
                } else {
                    write!(f, " * G{}", m[j])?;
                }
                j += run;
            }
        }
        Ok(())
    }
}

/// 𝒜_{k,r} = Σ_j C_{k,r,j} (B_{j+1}/(2(j+1)) + G_{j+1}).
fn depth_one_symbols(k: i64, r: i64) -> EisExpr {
    let mut e = EisExpr::zero();
    for j in 0..k {
        let c = c_coeff(k, r, j);
        if c.is_zero() {
            continue;
        }
        let constant = bernoulli(j as usize + 1) / int(2 * (j + 1));
        e = e.add(&EisExpr::constant(constant).add(&EisExpr::symbol(j as u32 + 1)).scale(&c));
    }
    e
}

/// 𝒜_{a,k,r} as a polynomial in Eisenstein symbols, for 1 ≤ r ≤ k, with
/// even-index symbols of weight ≥ 8 rewritten in G₄ and G₆.
pub fn eis_decompose(a: usize, k: i64, r: i64) -> Result<EisExpr, Error> {
    Ok(reduce_modular(&eis_decompose_raw(a, k, r)?))
}

/// The expansion straight from the exponential, before any modular relation
/// is applied; it may contain G₈, G₁₀, … .
pub fn eis_decompose_raw(a: usize, k: i64, r: i64) -> Result<EisExpr, Error> {
    if r < 1 || r > k {
        return Err(Error::Domain(format!("decomposition needs 1 ≤ r ≤ k, got r = {r}, k = {k}")));
    }
    let f: Vec<EisExpr> = (0..=a as i64)
        .map(|m| {
            if m == 0 {
                return EisExpr::zero();
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            depth_one_symbols(m * k, m * r).scale(&(int(sign) / int(m)))
        })
        .collect();
    let mut g = vec![EisExpr::constant(Rat::one())];
    for m in 1..=a {
        let mut s = EisExpr::zero();
        for i in 1..=m {
            s = s.add(&f[i].mul(&g[m - i]).scale(&int(i as i64)));
        }
        g.push(s.scale(&(Rat::one() / int(m as i64))));
    }
    Ok(g.swap_remove(a))
}

/// G_j for even j ≥ 4 as Σ c_{p,t} G₄^p G₆^t over 4p + 6t = j.
fn modular_basis_expansion(j: u32) -> Vec<((usize, usize), Rat)> {
    let monos: Vec<(usize, usize)> =
        (0..=j as usize / 4).filter_map(|p| (j as usize - 4 * p).is_multiple_of(6).then(|| (p, (j as usize - 4 * p) / 6))).collect();
    let rows = monos.len() + 4;
    let (g4, g6) = (g_series(4, rows), g_series(6, rows));
    let columns: Vec<QSeries<Rat>> = monos.iter().map(|&(p, t)| g4.pow(p as u32).mul(&g6.pow(t as u32))).collect();
    let target = g_series(j, rows);
    // augmented system, one row per q-power
    let mut m: Vec<Vec<Rat>> =
        (0..rows as i64).map(|e| columns.iter().map(|c| c.at(e)).chain(std::iter::once(target.at(e))).collect()).collect();
    let width = monos.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        let Some(p) = (pivot_row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != pivot_row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..=width {
                    let d = &m[pivot_row][c] * &f;
                    m[i][c] -= d;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    assert!(pivots.len() == width && m[width..].iter().all(|row| row[width].is_zero()), "G{j} is not in the span of G4, G6");
    monos.into_iter().zip(m).map(|(mono, row)| (mono, row[width].clone())).collect()
}

/// Rewrites every even-index symbol of weight ≥ 8 through the relations among
/// modular forms of level one; odd indices and G₂ are left alone.
pub fn reduce_modular(e: &EisExpr) -> EisExpr {
    let mut cache: BTreeMap<u32, EisExpr> = BTreeMap::new();
    let mut out = EisExpr::zero();
    for (mono, c) in &e.terms {
        let mut t = EisExpr::constant(c.clone());
        for &j in mono {
            let factor = if j >= 8 && j % 2 == 0 {
                cache
                    .entry(j)
                    .or_insert_with(|| {
                        let mut p = EisExpr::zero();
                        for ((a, b), x) in modular_basis_expansion(j) {
                            let mut m = vec![4; a];
                            m.extend(std::iter::repeat(6).take(b));
                            p.add_term(m, x);
                        }
                        p
                    })
                    .clone()
            } else {
                EisExpr::symbol(j)
            };
            t = t.mul(&factor);
        }
        out = out.add(&t);
    }
    out
}

/// Substitutes the q-expansions of the G_j.
pub fn eis_eval(e: &EisExpr, n: usize) -> QSeries<Rat> {
    let mut cache: BTreeMap<u32, QSeries<Rat>> = BTreeMap::new();
    let mut out = QSeries::zero(n);
    for (mono, c) in &e.terms {
        let mut t = QSeries::monomial(0, c.clone(), n as i64);
        for &j in mono {
            let g = cache.entry(j).or_insert_with(|| g_series(j, n));
            t = t.mul(g);
        }
        out = out.add(&t);
    }
    out
}

/// The polynomial Σ_j C_{k,r,j} m^j, for comparison against the binomial.
pub fn c_poly(k: i64, r: i64) -> Poly {
    Poly::new(Var::X, (0..k).map(|j| c_coeff(k, r, j)).collect())
}
