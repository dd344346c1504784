//! Independent reference implementations used by the integration tests.
//!
//! Words are plain `Vec<u8>`, left-to-right. Nothing here calls into the
//! library except for converting results at the comparison boundary.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub fn all_words(ell: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=ell as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// `⟨h_i, wt b_j⟩` with `wt b_j = Λ_{j+1} − Λ_j`.
pub fn letter_pair(ell: usize, i: usize, j: usize) -> i64 {
    i64::from(i == (j + 1) % (ell + 1)) - i64::from(i == j)
}

/// Signature values `r_k = ε_i(c_k) − Σ_{j<k} ⟨h_i, wt c_j⟩`.
fn signature(ell: usize, w: &[u8], i: usize) -> Vec<i64> {
    let mut acc = 0;
    w.iter()
        .map(|&c| {
            let r = i64::from(c as usize == i) - acc;
            acc += letter_pair(ell, i, c as usize);
            r
        })
        .collect()
}

pub fn eps(ell: usize, w: &[u8], i: usize) -> i64 {
    signature(ell, w, i).into_iter().max().unwrap_or(0).max(0)
}

pub fn pair_wt(ell: usize, w: &[u8], i: usize) -> i64 {
    w.iter().map(|&c| letter_pair(ell, i, c as usize)).sum()
}

pub fn phi(ell: usize, w: &[u8], i: usize) -> i64 {
    eps(ell, w, i) + pair_wt(ell, w, i)
}

pub fn e(ell: usize, w: &[u8], i: usize) -> Option<Vec<u8>> {
    let r = signature(ell, w, i);
    let top = *r.iter().max()?;
    if top <= 0 {
        return None;
    }
    let k = r.iter().position(|&x| x == top).unwrap();
    debug_assert_eq!(w[k] as usize, i);
    let mut v = w.to_vec();
    v[k] = ((i + ell) % (ell + 1)) as u8;
    Some(v)
}

pub fn f(ell: usize, w: &[u8], i: usize) -> Option<Vec<u8>> {
    if phi(ell, w, i) == 0 {
        return None;
    }
    let r = signature(ell, w, i);
    let top = *r.iter().max()?;
    let k = r.iter().rposition(|&x| x == top).unwrap();
    let mut v = w.to_vec();
    if (v[k] as usize + 1) % (ell + 1) != i {
        return None;
    }
    v[k] = i as u8;
    Some(v)
}

/// Reading word `i_r = c_{m−r+1}`.
fn reading(w: &[u8]) -> Vec<u8> {
    w.iter().rev().copied().collect()
}

pub fn descents(w: &[u8]) -> Vec<usize> {
    let i = reading(w);
    (1..w.len()).filter(|&r| i[r - 1] > i[r]).collect()
}

pub fn maj(w: &[u8]) -> i64 {
    descents(w).iter().map(|&r| r as i64).sum()
}

fn breakpoints(w: &[u8]) -> Vec<usize> {
    let mut n = vec![0];
    n.extend(descents(w));
    n.push(w.len());
    n
}

pub fn n_stat(w: &[u8]) -> i64 {
    let n = breakpoints(w);
    (1..n.len()).map(|r| r as i64 * (n[r] - n[r - 1]) as i64).sum()
}

/// `ρ_s`: the `r` with `n_{r−1} < m − s + 1 ≤ n_r`.
pub fn rho(w: &[u8], s: usize) -> usize {
    let n = breakpoints(w);
    let target = w.len() - s + 1;
    (1..n.len()).find(|&r| n[r - 1] < target && target <= n[r]).unwrap()
}

pub fn component(w: &[u8], z: i64) -> i64 {
    (n_stat(w) + z).rem_euclid(w.len() as i64)
}

pub fn tuple(ell: usize, w: &[u8]) -> Vec<u32> {
    let mut t = vec![0u32; ell + 1];
    for &c in w {
        t[c as usize] += 1;
    }
    t
}

pub fn compositions(ell: usize, m: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = all_words(ell, m).iter().map(|w| tuple(ell, w)).collect();
    out.sort();
    out.dedup();
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * k)
}

pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    parts.iter().fold(factorial(total), |a, &k| a / factorial(k))
}

/// Number of words with the given letter counts and `N ≡ s (mod m)`, by the
/// Euler/Möbius closed form.
pub fn closed_form(m: usize, t: &[u32], s: i64) -> BigInt {
    let g = t.iter().fold(0u64, |g, &k| gcd(g, k as u64));
    let mut sum = BigInt::zero();
    for d in 1..=g {
        if g % d != 0 {
            continue;
        }
        let h = gcd(d, s.unsigned_abs());
        let phi_s = totient(d) as i64 * mobius(d / h) / totient(d / h) as i64;
        let parts: Vec<u64> = t.iter().map(|&k| k as u64 / d).collect();
        sum += multinomial(&parts) * phi_s;
    }
    assert!((&sum % m).is_zero(), "closed form not divisible by m");
    sum / m
}

/// `q`-binomial coefficients by the `q`-Pascal rule.
pub fn q_binomial(n: usize, k: usize) -> Vec<BigInt> {
    if k > n {
        return vec![];
    }
    let mut rows: Vec<Vec<Vec<BigInt>>> = vec![vec![vec![BigInt::from(1)]]];
    for a in 1..=n {
        let mut row = Vec::with_capacity(a + 1);
        for b in 0..=a {
            if b == 0 || b == a {
                row.push(vec![BigInt::from(1)]);
                continue;
            }
            // [a, b] = [a−1, b−1] + q^b [a−1, b]
            let x = &rows[a - 1][b - 1];
            let y = &rows[a - 1][b];
            let mut c = vec![BigInt::zero(); (x.len()).max(y.len() + b)];
            for (j, v) in x.iter().enumerate() {
                c[j] += v;
            }
            for (j, v) in y.iter().enumerate() {
                c[j + b] += v;
            }
            row.push(c);
        }
        rows.push(row);
    }
    rows[n][k].clone()
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Coefficients of the `q`-multinomial reduced modulo `q^m − 1`.
pub fn reduced_q_multinomial(m: usize, t: &[u32]) -> Vec<BigInt> {
    let mut left = m;
    let mut p = vec![BigInt::from(1)];
    for &k in t {
        p = poly_mul(&p, &q_binomial(left, k as usize));
        left -= k as usize;
    }
    let mut out = vec![BigInt::zero(); m];
    for (j, c) in p.into_iter().enumerate() {
        out[j % m] += c;
    }
    out
}

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `κ_0, …, κ_m` for `w ⊗ z^n`.
pub fn kappa(w: &[u8], z: i64) -> Vec<Q> {
    let m = w.len() as i64;
    let shift = Q::new(BigInt::from(n_stat(w) + z - m), BigInt::from(m));
    let mut out = vec![q(0)];
    for s in 1..=w.len() {
        let prev = out[s - 1].clone();
        out.push(prev - q(rho(w, s) as i64 - 1) + shift.clone());
    }
    out
}

/// A point of the weight space: `Λ`-coefficients and `δ`-coefficient.
pub type Point = (Vec<Q>, Q);

fn letter_point(ell: usize, c: u8) -> Vec<Q> {
    (0..=ell).map(|i| q(letter_pair(ell, i, c as usize))).collect()
}

/// Vertices of the image of `w ⊗ z^n` in the path model, before any
/// simplification.
pub fn psi_vertices(ell: usize, w: &[u8], z: i64) -> Vec<Point> {
    let k = kappa(w, z);
    let mut lam = vec![q(0); ell + 1];
    let mut out = vec![(lam.clone(), q(0))];
    for (s, &c) in w.iter().enumerate() {
        for (a, b) in lam.iter_mut().zip(letter_point(ell, c)) {
            *a += b;
        }
        out.push((lam.clone(), k[s + 1].clone()));
    }
    out
}

fn diff(a: &Point, b: &Point) -> Point {
    (a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect(), &a.1 - &b.1)
}

fn same_ray(u: &Point, v: &Point) -> bool {
    let cu: Vec<&Q> = u.0.iter().chain(std::iter::once(&u.1)).collect();
    let cv: Vec<&Q> = v.0.iter().chain(std::iter::once(&v.1)).collect();
    let k = cu.iter().position(|x| !x.is_zero()).unwrap();
    if cv[k].is_zero() {
        return false;
    }
    let c = cv[k] / cu[k];
    c.is_positive() && cu.iter().zip(&cv).all(|(a, b)| &(*a * &c) == *b)
}

/// Drops repeated vertices and merges consecutive segments pointing the
/// same way.
pub fn simplify(vs: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = vec![vs[0].clone()];
    for v in &vs[1..] {
        if v == out.last().unwrap() {
            continue;
        }
        if out.len() >= 2 {
            let n = out.len();
            let d1 = diff(&out[n - 1], &out[n - 2]);
            let d2 = diff(v, &out[n - 1]);
            if same_ray(&d1, &d2) {
                out.pop();
            }
        }
        out.push(v.clone());
    }
    out
}

/// `ε_i` of a path through the given vertices: the largest integer below
/// the maximum of `−⟨h_i, ·⟩`, attained at a vertex.
pub fn path_eps_at_vertices(vs: &[Point], i: usize) -> i64 {
    let top = vs.iter().map(|(lam, _)| -lam[i].clone()).max().unwrap();
    top.floor().to_integer().try_into().unwrap()
}
