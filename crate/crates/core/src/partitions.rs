//! Integer partitions, hook lengths, part multiplicities and the q-bracket.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::eisenstein::sigma;
use crate::exactnum::{binomial, int, Poly, Rat, Var};
use crate::series::{eta_product, QSeries};
use crate::Error;

/// Largest size kept in the enumeration cache; larger sizes are computed
/// on demand and not retained.
pub const CACHE_CEILING: usize = 60;

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into weakly decreasing order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Number of parts equal to s.
    pub fn multiplicity(&self, s: u32) -> usize {
        self.parts.iter().filter(|&&p| p == s).count()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=w).map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32).collect();
        Partition { parts }
    }

    /// Hook lengths, row by row, left to right.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts[j] as usize - i - 1;
                out.push((arm + leg + 1) as u32);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Domain(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) {
            return Err(Error::Domain("parts must be positive".into()));
        }
        Ok(Partition::new(parts))
    }
}

fn generate(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition { parts: prefix.clone() });
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        generate(n - p, p, prefix, out);
        prefix.pop();
    }
}

fn cache() -> &'static Mutex<Vec<Option<Arc<Vec<Partition>>>>> {
    static C: OnceLock<Mutex<Vec<Option<Arc<Vec<Partition>>>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(vec![None; CACHE_CEILING + 1]))
}

/// All partitions of n in reverse lexicographic order, starting with (n).
pub fn enumerate(n: usize) -> Arc<Vec<Partition>> {
    if n <= CACHE_CEILING {
        if let Some(v) = &cache().lock().unwrap()[n] {
            return v.clone();
        }
    }
    let mut out = Vec::new();
    generate(n as u32, n as u32, &mut Vec::new(), &mut out);
    let v = Arc::new(out);
    if n <= CACHE_CEILING {
        cache().lock().unwrap()[n] = Some(v.clone());
    }
    v
}

/// Σ_{λ ⊢ n} Π_{h ∈ hooks(λ)} (1 + (var + shift)/h²) as a polynomial in var.
pub fn hook_sum(n: usize, var: Var, shift: i64) -> Poly {
    let x = Poly::from_ints(var, &[shift, 1]);
    let mut total = Poly::zero(var);
    for lam in enumerate(n).iter() {
        let mut prod = Poly::constant(var, Rat::one());
        for h in lam.hooks() {
            let hh = int(h as i64 * h as i64);
            prod = prod.mul(&Poly::constant(var, Rat::one()).add(&x.scale(&hh.recip())));
        }
        total = total.add(&prod);
    }
    total
}

/// Σ_{λ ⊢ n} Π_{h} (1 − z/h²), a polynomial in z.
pub fn no_sum(n: usize) -> Poly {
    // 1 − z/h² = 1 + (−z)/h²: substitute z ↦ −z in the hook sum.
    let p = hook_sum(n, Var::Z, 0);
    let c = p.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    Poly::new(Var::Z, c)
}

/// Σ_{λ ⊢ n} Π_{h} (1 + k/h²), a polynomial in k.
pub fn hook_rhs(n: usize) -> Poly {
    hook_sum(n, Var::K, 0)
}

/// First exponent below q^n where Σ_m no_sum(m) q^m and Π(1 − q^m)^{z−1}
/// differ as polynomials in z. The product is exp((z − 1)·log(q; q)_∞) with
/// log(q; q)_∞ = −Σ σ(m)/m q^m.
pub fn nekrasov_okounkov_defect(n: usize) -> Result<Option<i64>, Error> {
    let lhs = QSeries::from_coeffs((0..n).map(no_sum).collect::<Vec<_>>());
    let z_minus_one = Poly::from_ints(Var::Z, &[-1, 1]);
    let log: Vec<Poly> = (0..n)
        .map(|m| match m {
            0 => Poly::zero(Var::Z),
            _ => z_minus_one.scale(&-(Rat::from_integer(sigma(m as u64, 1)) / int(m as i64))),
        })
        .collect();
    let rhs = QSeries::from_coeffs(log).exp()?;
    Ok(lhs.first_difference(&rhs))
}

/// Σ_{λ ⊢ n} Π_{s=1}^{n} (m_s + 1)(m_s + 2)/2.
///
/// Each factor counts the ways to colour the m_s copies of s with three
/// colours, so the total is the number of 3-coloured partitions of n.
pub fn multiplicity_rhs(n: usize) -> BigInt {
    enumerate(n)
        .iter()
        .map(|lam| {
            (1..=n as u32)
                .map(|s| {
                    let m = lam.multiplicity(s) as i64;
                    BigInt::from((m + 1) * (m + 2) / 2)
                })
                .product::<BigInt>()
        })
        .sum()
}

/// H_{k₁..k_a; r₁..r_a}(λ) = Σ_{n₁<…<n_a} Π_j C(m_{n_j} + k_j − r_j, m_{n_j} − r_j).
///
/// Only part sizes with m ≥ r_j contribute, so the sum is finite.
pub fn h_statistic(lam: &Partition, ks: &[i64], rs: &[i64]) -> Rat {
    assert_eq!(ks.len(), rs.len());
    let top = lam.parts.first().copied().unwrap_or(0) as usize;
    // weights[j][n] for part size n = 1..=top
    let w: Vec<Vec<BigInt>> = ks
        .iter()
        .zip(rs)
        .map(|(&k, &r)| {
            (1..=top as u32)
                .map(|n| {
                    let m = lam.multiplicity(n) as i64;
                    binomial(m + k - r, m - r)
                })
                .collect()
        })
        .collect();
    // strict nested sum: acc[n] = Σ over chains ending at or before n
    let mut acc = vec![BigInt::one(); top + 1];
    for wj in &w {
        let mut next = vec![BigInt::zero(); top + 1];
        for n in 1..=top {
            next[n] = &next[n - 1] + &acc[n - 1] * &wj[n - 1];
        }
        acc = next;
    }
    Rat::from_integer(acc[top].clone())
}

/// ⟨f⟩_q = (Σ_λ f(λ) q^{|λ|}) · (q; q)_∞ modulo q^n.
pub fn q_bracket(f: impl Fn(&Partition) -> Rat, n: usize) -> QSeries<Rat> {
    let num: Vec<Rat> = (0..n).map(|m| enumerate(m).iter().map(&f).sum()).collect();
    QSeries::from_coeffs(num).mul(&eta_product(&[(1, 1)], n, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn figure_hooks() {
        let lam: Partition = "4,3,2".parse().unwrap();
        assert_eq!(lam.hooks(), vec![6, 5, 3, 1, 4, 3, 1, 2, 1]);
        assert_eq!(lam.to_string(), "4,3,2");
        assert_eq!(Partition::new(vec![1]).hooks(), vec![1]);
        assert_eq!(Partition::new(vec![5]).hooks(), vec![5, 4, 3, 2, 1]);
    }

    #[test]
    fn enumeration() {
        assert_eq!(*enumerate(0), vec![Partition::default()]);
        assert_eq!(enumerate(5).len(), 7);
        assert!(enumerate(4).contains(&Partition::new(vec![2, 1, 1])));
        assert_eq!(enumerate(4)[0], Partition::new(vec![4]));
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn no_examples() {
        assert_eq!(no_sum(0), Poly::from_ints(Var::Z, &[1]));
        assert_eq!(no_sum(1), Poly::from_ints(Var::Z, &[1, -1]));
        assert_eq!(no_sum(2).eval(&int(-2)), int(9));
    }

    #[test]
    fn hook_rhs_examples() {
        assert_eq!(hook_rhs(0), Poly::from_ints(Var::K, &[1]));
        assert_eq!(hook_rhs(1), Poly::from_ints(Var::K, &[1, 1]));
        // 2(1 + k/4)(1 + k)
        assert_eq!(hook_rhs(2), Poly::new(Var::K, vec![int(2), rat(5, 2), rat(1, 2)]));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_rhs(0), BigInt::from(1));
        assert_eq!(multiplicity_rhs(1), BigInt::from(3));
        assert_eq!(multiplicity_rhs(2), BigInt::from(9));
    }

    #[test]
    fn bracket_of_one() {
        assert!(q_bracket(|_| Rat::one(), 12).agrees_with(&QSeries::one(12)));
        assert!(h_statistic(&Partition::default(), &[2], &[1]).is_zero());
    }
}
