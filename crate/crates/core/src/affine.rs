//! The affinization `B̂_ℓ(m) = B_ℓ(m) × Z` and its components.
//!
//! `e_0` raises the `z` coordinate by one and `f_0` lowers it; the other
//! operators leave `z` alone. The element `(w, z)` lies in component
//! `(N(w) + z) mod m`.

use serde::Serialize;
use serde_json::Value;

use crate::crystal::{Crystal, Gen, Monomial};
use crate::letters::{enumerate_words, Word, WordFilter};
use crate::weight::Weight;
use crate::{rat, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineElement {
    pub z: i64,
    pub word: Word,
}

impl AffineElement {
    pub fn new(word: Word, z: i64) -> Self {
        AffineElement { z, word }
    }

    pub fn from_json(v: &Value, ell: usize) -> Result<Self> {
        let word = v
            .get("word")
            .ok_or_else(|| Error::InvalidInput("affine element needs \"word\"".into()))?;
        let z = v
            .get("z")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::InvalidInput("affine element needs integer \"z\"".into()))?;
        Ok(AffineElement::new(Word::from_json(word, ell)?, z))
    }

    pub fn m(&self) -> usize {
        self.word.len()
    }

    pub fn e(&self, i: usize) -> Option<Self> {
        let word = self.word.e(i)?;
        Some(AffineElement::new(word, self.z + i64::from(i == 0)))
    }

    pub fn f(&self, i: usize) -> Option<Self> {
        let word = self.word.f(i)?;
        Some(AffineElement::new(word, self.z - i64::from(i == 0)))
    }

    /// `wt(w) + z δ`.
    pub fn wt(&self) -> Weight {
        let mut w = self.word.wt();
        w.dlt += rat::int(self.z);
        w
    }

    pub fn component(&self) -> u64 {
        (self.word.stats().n + self.z).rem_euclid(self.m() as i64) as u64
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "word": self.word, "z": self.z })
    }
}

pub fn component_of(x: &AffineElement) -> u64 {
    x.component()
}

/// `B̂_ℓ(m)` as a crystal.
#[derive(Clone, Copy, Debug)]
pub struct AffineCrystal {
    pub ell: usize,
    pub m: usize,
}

impl Crystal for AffineCrystal {
    type Elem = AffineElement;

    fn ell(&self) -> usize {
        self.ell
    }

    fn e(&self, i: usize, x: &AffineElement) -> Option<AffineElement> {
        x.e(i)
    }

    fn f(&self, i: usize, x: &AffineElement) -> Option<AffineElement> {
        x.f(i)
    }

    fn eps(&self, i: usize, x: &AffineElement) -> i64 {
        x.word.eps(i)
    }

    fn wt(&self, x: &AffineElement) -> Weight {
        x.wt()
    }

    fn pair_wt(&self, i: usize, x: &AffineElement) -> i64 {
        x.word.pair_wt(i)
    }

    fn encode(&self, x: &AffineElement) -> Value {
        x.to_json()
    }
}

/// Closed interval of `z` values; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn contains(&self, z: i64) -> bool {
        self.lo <= z && z <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn pad(&self, k: i64) -> Window {
        Window::new(self.lo - k, self.hi + k)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Parses `"lo:hi"` or `"lo..hi"`.
    pub fn parse(s: &str) -> Result<Window> {
        let bad = || Error::InvalidInput(format!("window must look like lo:hi, got {s:?}"));
        let (a, b) = s.split_once(':').or_else(|| s.split_once("..")).ok_or_else(bad)?;
        let lo = a.trim().parse().map_err(|_| bad())?;
        let hi = b.trim().parse().map_err(|_| bad())?;
        Ok(Window::new(lo, hi))
    }
}

/// All elements of component `n` with `z` in the window, sorted by `(z, word)`.
pub fn enumerate_component(ell: usize, m: usize, n: u64, window: Window, budget: usize) -> Result<Vec<AffineElement>> {
    let words = enumerate_words(ell, m, &WordFilter::default(), budget)?;
    if words.len().saturating_mul(window.len()) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let n = (n % m as u64) as i64;
    let with_n: Vec<(Word, i64)> = words.into_iter().map(|w| {
        let k = w.stats().n;
        (w, k)
    }).collect();
    let mut out = Vec::new();
    for z in window.iter() {
        for (w, k) in &with_n {
            if (k + z - n).rem_euclid(m as i64) == 0 {
                out.push(AffineElement::new(w.clone(), z));
            }
        }
    }
    Ok(out)
}

/// Every element of `B̂_ℓ(m)` with `z` in the window, sorted by `(z, word)`.
pub fn enumerate_all(ell: usize, m: usize, window: Window, budget: usize) -> Result<Vec<AffineElement>> {
    let words = enumerate_words(ell, m, &WordFilter::default(), budget)?;
    if words.len().saturating_mul(window.len()) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(window
        .iter()
        .flat_map(|z| words.iter().map(move |w| AffineElement::new(w.clone(), z)))
        .collect())
}

/// `e_1^m ⋯ e_ℓ^m e_0^m`: moves `b_0^{⊗m} ⊗ z^k` to `z^{k+m}`.
pub fn ladder_up(ell: usize, m: usize) -> Monomial {
    let m = m as u32;
    let mut terms: Vec<(Gen, u32)> = (1..=ell).map(|i| (Gen::e(i), m)).collect();
    terms.push((Gen::e(0), m));
    Monomial::from_terms(terms)
}

/// `f_0^m f_ℓ^m ⋯ f_1^m`: moves `b_0^{⊗m} ⊗ z^k` to `z^{k−m}`.
pub fn ladder_down(ell: usize, m: usize) -> Monomial {
    let m = m as u32;
    let mut terms = vec![(Gen::f(0), m)];
    terms.extend((1..=ell).rev().map(|i| (Gen::f(i), m)));
    Monomial::from_terms(terms)
}
