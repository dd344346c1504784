//! Exact counting: Euler φ, Möbius μ, q-polynomials, q-multinomials and
//! the closed formulas for the number of words with given letter counts
//! and given `N` residue.
//!
//! Residue convention: [`count_by_residue`] entry `n` is the number of
//! words with `N ≡ −n (mod m)`. [`closed_count`] and
//! [`component_character`] take the residue `s` of `N` itself. The
//! counts are symmetric under `s ↦ −s`, but the code keeps the two apart.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::affine::Window;
use crate::letters::{enumerate_words, WordFilter};
use crate::rat::Rat;
use crate::{Error, Result};

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(d: u64) -> u64 {
    assert!(d >= 1, "euler_phi needs d ≥ 1");
    factorize(d)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn moebius(d: u64) -> i64 {
    assert!(d >= 1, "moebius needs d ≥ 1");
    let f = factorize(d);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `φ_r(d) = φ(d) μ(d/g) / φ(d/g)` with `g = gcd(d, r)`.
pub fn phi_r(d: u64, r: i64) -> i64 {
    assert!(d >= 1, "phi_r needs d ≥ 1");
    let g = (d as i64).gcd(&r) as u64;
    let h = d / g;
    let num = euler_phi(d) as i64 * moebius(h);
    let den = euler_phi(h) as i64;
    assert_eq!(num % den, 0, "phi_r quotient not integral");
    num / den
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Dense polynomial in `q`, lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<BigInt>;
pub type RatPoly = Poly<Rat>;

pub trait Coef:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coef for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

impl<T: Coef> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c q^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<U: Coef>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Division with remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        assert!(d.coeffs[dd].is_one(), "divisor must be monic");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dj.clone();
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (Poly::new(quot), Poly::new(r))
    }
}

impl<T: Coef> Add<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Coef> Sub<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Coef> Mul<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Coef + fmt::Display + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map(|c| Rat::from_integer(c.clone()))
    }
}

/// `[n] = 1 + q + ⋯ + q^{n−1}`.
pub fn q_int(n: usize) -> QPoly {
    q_int_in(n, 1)
}

/// `[n]_{q^r} = 1 + q^r + ⋯ + q^{r(n−1)}`.
pub fn q_int_in(n: usize, r: usize) -> QPoly {
    let mut v = vec![BigInt::zero(); if n == 0 { 0 } else { r * (n - 1) + 1 }];
    for k in 0..n {
        v[k * r] = BigInt::one();
    }
    Poly::new(v)
}

pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, k| &acc * &q_int(k))
}

/// `[m]! / Π [k_i]!`, zero when the parts do not sum to `m`.
pub fn q_multinomial(m: usize, parts: &[u32]) -> QPoly {
    if parts.iter().map(|&k| k as usize).sum::<usize>() != m {
        return QPoly::zero();
    }
    let mut p = q_factorial(m);
    for &k in parts {
        let (quot, rem) = p.div_rem_monic(&q_factorial(k as usize));
        assert!(rem.is_zero(), "q-multinomial division left a remainder");
        p = quot;
    }
    p
}

/// Folds degrees modulo `m`: the remainder modulo `q^m − 1`.
pub fn reduce_mod_qm1<T: Coef>(p: &Poly<T>, m: usize) -> Poly<T> {
    assert!(m >= 1);
    let mut v = vec![T::zero(); m];
    for (k, c) in p.coeffs().iter().enumerate() {
        v[k % m] = v[k % m].clone() + c.clone();
    }
    Poly::new(v)
}

/// Ordinary multinomial `m! / Π k_i!`; zero unless the parts sum to `m`.
pub fn multinomial(m: u64, parts: &[u64]) -> BigInt {
    if parts.iter().sum::<u64>() != m {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    let mut n = 0u64;
    for &k in parts {
        for j in 1..=k {
            n += 1;
            out = out * BigInt::from(n) / BigInt::from(j);
        }
    }
    out
}

/// `multinomial(m/d; k/d)`, zero when `d` does not divide every argument.
fn scaled_multinomial(m: u64, parts: &[u32], d: u64) -> BigInt {
    if m % d != 0 || parts.iter().any(|&k| k as u64 % d != 0) {
        return BigInt::zero();
    }
    let scaled: Vec<u64> = parts.iter().map(|&k| k as u64 / d).collect();
    multinomial(m / d, &scaled)
}

fn check_tuple(ell: usize, m: usize, tuple: &[u32]) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if tuple.len() != ell + 1 {
        return Err(Error::InvalidInput(format!("tuple needs {} entries, got {}", ell + 1, tuple.len())));
    }
    if tuple.iter().map(|&k| k as usize).sum::<usize>() != m {
        return Err(Error::InvalidInput(format!("tuple {tuple:?} does not sum to m = {m}")));
    }
    Ok(())
}

/// Entry `n`: number of words with letter counts `tuple` and `N ≡ −n (mod m)`,
/// read off the reduced q-multinomial.
pub fn count_by_residue(ell: usize, m: usize, tuple: &[u32]) -> Result<Vec<BigInt>> {
    check_tuple(ell, m, tuple)?;
    let p = reduce_mod_qm1(&q_multinomial(m, tuple), m);
    Ok((0..m).map(|n| p.coeff(n)).collect())
}

/// `C(k; n) = (1/m) Σ_{d | gcd} φ_n(d) multinomial(m/d; k/d)`: the number
/// of words with letter counts `tuple` and `N ≡ −n (mod m)`.
pub fn c_func(ell: usize, m: usize, tuple: &[u32], n: i64) -> Result<BigInt> {
    check_tuple(ell, m, tuple)?;
    let g = tuple.iter().fold(m as u64, |g, &k| g.gcd(&(k as u64)));
    let total: BigInt = divisors(g)
        .into_iter()
        .map(|d| BigInt::from(phi_r(d, n)) * scaled_multinomial(m as u64, tuple, d))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(m));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::CrossCheck(format!(
            "closed count for {tuple:?}, n={n} is {total}/{m}, not a non-negative integer"
        )));
    }
    Ok(q)
}

/// Number of words with letter counts `tuple` and `N ≡ s (mod m)`:
/// `(1/m) Σ_{d | gcd} φ_{−s}(d) multinomial(m/d; k/d)`.
pub fn closed_count(ell: usize, m: usize, tuple: &[u32], s: i64) -> Result<BigInt> {
    c_func(ell, m, tuple, -s)
}

/// `C̃(k; d) = (d/m) Σ_{d' : dd' | m} μ(d') multinomial(m/(dd'); k/(dd'))`.
pub fn c_tilde(ell: usize, m: usize, tuple: &[u32], d: u64) -> Result<Rat> {
    check_tuple(ell, m, tuple)?;
    let m64 = m as u64;
    if d == 0 || m64 % d != 0 {
        return Err(Error::Precondition(format!("{d} does not divide m = {m}")));
    }
    let sum: BigInt = divisors(m64 / d)
        .into_iter()
        .map(|dp| BigInt::from(moebius(dp)) * scaled_multinomial(m64, tuple, d * dp))
        .sum();
    Ok(Rat::new(sum * BigInt::from(d), BigInt::from(m64)))
}

/// `Φ_d`, by dividing `q^d − 1` by the lower cyclotomic factors.
pub fn cyclotomic(d: usize) -> QPoly {
    assert!(d >= 1);
    let mut p = &QPoly::monomial(BigInt::one(), d) - &QPoly::one();
    for dp in divisors(d as u64) {
        if (dp as usize) < d {
            let (q, r) = p.div_rem_monic(&cyclotomic(dp as usize));
            assert!(r.is_zero(), "cyclotomic division left a remainder");
            p = q;
        }
    }
    p
}

/// Remainder modulo `Φ_d`, as a rational polynomial.
pub fn project_cyclotomic<T: Coef>(p: &Poly<T>, d: usize, to_rat: impl Fn(&T) -> Rat) -> RatPoly {
    let p = p.map(to_rat);
    p.div_rem_monic(&cyclotomic(d).to_rat()).1
}

/// All tuples `(k_0, …, k_ℓ)` of non-negative integers summing to `m`,
/// in lexicographic order.
pub fn compositions(ell: usize, m: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=rest {
            cur.push(k as u32);
            go(rest - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, ell + 1, &mut Vec::new(), &mut out);
    out
}

/// Which computation produces the character counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Closed,
    QPoly,
    /// Enumerate all words; subject to the node budget.
    Brute,
}

impl std::str::FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(CountMethod::Closed),
            "qpoly" => Ok(CountMethod::QPoly),
            "brute" => Ok(CountMethod::Brute),
            _ => Err(Error::InvalidInput(format!("unknown method {s:?} (closed|qpoly|brute)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterEntry {
    pub tuple: Vec<u32>,
    pub z: i64,
    pub count: u64,
}

/// Weight multiplicities of one component of `B̂_ℓ(m)` on a `z` window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterWindow {
    pub l: usize,
    pub m: usize,
    pub component: u64,
    pub window: [i64; 2],
    pub entries: Vec<CharacterEntry>,
}

impl CharacterWindow {
    pub fn count(&self, tuple: &[u32], z: i64) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.tuple == tuple && e.z == z)
            .map(|e| e.count)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// One row per tuple, one column per `z`.
    pub fn to_table(&self) -> String {
        let zs: Vec<i64> = (self.window[0]..=self.window[1]).collect();
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["tuple".to_string()];
        header.extend(zs.iter().map(|z| format!("z={z}")));
        rows.push(header);
        for tuple in compositions(self.l, self.m) {
            let mut row = vec![format!("{tuple:?}")];
            row.extend(zs.iter().map(|&z| {
                self.count(&tuple, z).map_or_else(|| "-".to_string(), |c| c.to_string())
            }));
            rows.push(row);
        }
        let ncol = rows[0].len();
        let widths: Vec<usize> = (0..ncol)
            .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = format!("ℓ={} m={} component={}\n", self.l, self.m, self.component);
        for r in rows {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let pad = widths[j] - c.chars().count();
                    if j == 0 {
                        format!("{c}{}", " ".repeat(pad))
                    } else {
                        format!("{}{c}", " ".repeat(pad))
                    }
                })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn to_u64(b: &BigInt) -> Result<u64> {
    b.to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("count {b} does not fit in 64 bits")))
}

/// Counts of component `n` of `B̂_ℓ(m)` at every `(tuple, z)` with `z` in
/// the window: the number of words with that tuple and `N ≡ n − z`.
///
/// The closed form and the q-multinomial are always both evaluated and
/// must agree; `Brute` additionally enumerates every word.
pub fn component_character(
    ell: usize,
    m: usize,
    n: u64,
    window: Window,
    method: CountMethod,
    budget: usize,
) -> Result<CharacterWindow> {
    if ell == 0 || m == 0 {
        return Err(Error::InvalidInput("need ℓ ≥ 1 and m ≥ 1".into()));
    }
    let tuples = compositions(ell, m);
    if tuples.len().saturating_mul(window.len()) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let m_i = m as i64;
    let brute: Option<std::collections::BTreeMap<(Vec<u32>, i64), u64>> = match method {
        CountMethod::Brute => {
            let mut tally = std::collections::BTreeMap::new();
            for w in enumerate_words(ell, m, &WordFilter::default(), budget)? {
                *tally.entry((w.tuple(), w.stats().n.rem_euclid(m_i))).or_insert(0u64) += 1;
            }
            Some(tally)
        }
        _ => None,
    };
    let mut entries = Vec::new();
    for tuple in &tuples {
        let by_residue = count_by_residue(ell, m, tuple)?;
        let closed: Vec<BigInt> = (0..m_i).map(|s| closed_count(ell, m, tuple, s)).collect::<Result<_>>()?;
        for z in window.iter() {
            let s = (n as i64 - z).rem_euclid(m_i);
            let from_closed = to_u64(&closed[s as usize])?;
            let from_qpoly = to_u64(&by_residue[((-s).rem_euclid(m_i)) as usize])?;
            if from_closed != from_qpoly {
                return Err(Error::CrossCheck(format!(
                    "closed form {from_closed} vs q-multinomial {from_qpoly} at {tuple:?}, z={z}"
                )));
            }
            let count = match &brute {
                Some(tally) => {
                    let b = tally.get(&(tuple.clone(), s)).copied().unwrap_or(0);
                    if b != from_closed {
                        return Err(Error::CrossCheck(format!(
                            "enumeration {b} vs closed form {from_closed} at {tuple:?}, z={z}"
                        )));
                    }
                    b
                }
                None => from_closed,
            };
            entries.push(CharacterEntry { tuple: tuple.clone(), z, count });
        }
    }
    Ok(CharacterWindow {
        l: ell,
        m,
        component: n % m as u64,
        window: [window.lo, window.hi],
        entries,
    })
}

/// The rational identity `Σ_{r | m} C̃(k; r) ψ_d([m/r]_{q^r})`.
pub fn lemma_projection_sum(ell: usize, m: usize, tuple: &[u32], d: usize) -> Result<RatPoly> {
    let mut acc = RatPoly::zero();
    for r in divisors(m as u64) {
        let c = c_tilde(ell, m, tuple, r)?;
        let proj = project_cyclotomic(&q_int_in(m / r as usize, r as usize), d, |x| Rat::from_integer(x.clone()));
        acc = &acc + &proj.scale(&c);
    }
    Ok(acc)
}

/// `Σ_{d | m} C̃(k; d) [m/d]_{q^d}`, which reduces to the counting polynomial.
pub fn c_tilde_expansion(ell: usize, m: usize, tuple: &[u32]) -> Result<RatPoly> {
    let mut acc = RatPoly::zero();
    for d in divisors(m as u64) {
        let c = c_tilde(ell, m, tuple, d)?;
        acc = &acc + &q_int_in(m / d as usize, d as usize).to_rat().scale(&c);
    }
    Ok(acc)
}

pub fn rat_of(b: &BigInt) -> Rat {
    Rat::from_integer(b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn number_theory() {
        assert_eq!((euler_phi(1), moebius(1)), (1, 1));
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(euler_phi(12), 4);
        for d in 1..30 {
            assert_eq!(phi_r(d, 0), euler_phi(d) as i64);
            assert_eq!(phi_r(1, d as i64), 1);
        }
        assert_eq!(phi_r(2, 1), -1);
    }

    #[test]
    fn q_multinomials() {
        assert_eq!(q_multinomial(2, &[1, 1]), QPoly::from_ints(&[1, 1]));
        assert_eq!(q_multinomial(4, &[2, 2]), QPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert!(q_multinomial(3, &[1, 1]).is_zero());
        assert_eq!(q_multinomial(4, &[2, 2]).to_string(), "1+q+2q^2+q^3+q^4");
    }

    #[test]
    fn reduction() {
        let p = QPoly::from_ints(&[1, 1, 2, 1, 1]);
        assert_eq!(reduce_mod_qm1(&p, 4), QPoly::from_ints(&[2, 1, 2, 1]));
        assert_eq!(reduce_mod_qm1(&QPoly::from_ints(&[1, 1]), 2), QPoly::from_ints(&[1, 1]));
        assert_eq!(reduce_mod_qm1(&p, 3).eval(&BigInt::one()), p.eval(&BigInt::one()));
    }

    #[test]
    fn residue_counts() {
        assert_eq!(count_by_residue(1, 2, &[1, 1]).unwrap(), big(&[1, 1]));
        assert_eq!(count_by_residue(1, 4, &[2, 2]).unwrap(), big(&[2, 1, 2, 1]));
        assert_eq!(closed_count(1, 2, &[1, 1], 0).unwrap(), BigInt::from(1));
        assert_eq!(closed_count(1, 4, &[2, 2], 0).unwrap(), BigInt::from(2));
        assert_eq!(closed_count(1, 2, &[2, 0], 1).unwrap(), BigInt::zero());
        assert!(closed_count(1, 2, &[1, 0], 0).is_err());
    }

    #[test]
    fn c_tilde_values() {
        assert_eq!(c_tilde(1, 2, &[1, 1], 1).unwrap(), rat::int(1));
        assert_eq!(c_tilde(2, 3, &[3, 0, 0], 3).unwrap(), rat::int(1));
        assert!(c_tilde(1, 4, &[2, 2], 3).is_err());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_ints(&[1, -1, 1]));
        let r = project_cyclotomic(&q_multinomial(4, &[2, 2]), 2, rat_of);
        assert_eq!(r, RatPoly::constant(rat::int(2)));
    }

    #[test]
    fn composition_list() {
        assert_eq!(compositions(1, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(2, 3).len(), 10);
    }

    #[test]
    fn small_character() {
        let ch = component_character(1, 2, 0, Window::new(-2, 2), CountMethod::Brute, 10_000).unwrap();
        for z in -2..=2 {
            assert_eq!(ch.count(&[1, 1], z), Some(1));
            assert_eq!(ch.count(&[2, 0], z), Some(u64::from(z % 2 == 0)));
        }
        assert_eq!(ch.total(), 11);
        let json = serde_json::to_value(&ch).unwrap();
        assert_eq!(json["window"], serde_json::json!([-2, 2]));
        assert!(ch.to_table().contains("[1, 1]"));
    }
}
