//! The letter crystal `B_ℓ`, its tensor powers `B_ℓ(m)` and word statistics.
//!
//! A [`Word`] stores letters in left-to-right tensor order: `c_1` is the
//! leftmost factor. The descent statistics are defined on the reversed
//! reading `i_1 … i_m` with `i_r = c_{m−r+1}`; that conversion happens in
//! [`Word::stats`] and [`Word::rho`] and nowhere else.

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::Value;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::crystal::{kashiwara_signature, Crystal, Gen, Kind, Monomial, DEFAULT_NODE_BUDGET};
use crate::weight::{cyc, Weight};
use crate::{Error, Result};

/// `e_i b_j = b_{j−1}` if `i = j`, else absent.
pub fn letter_e(ell: usize, i: usize, j: usize) -> Option<usize> {
    (i == j).then(|| cyc(j as i64 - 1, ell))
}

/// `f_i b_j = b_i` if `j = i − 1`, else absent.
pub fn letter_f(ell: usize, i: usize, j: usize) -> Option<usize> {
    (j == cyc(i as i64 - 1, ell)).then_some(i)
}

pub fn letter_eps(i: usize, j: usize) -> i64 {
    i64::from(i == j)
}

pub fn letter_phi(ell: usize, i: usize, j: usize) -> i64 {
    i64::from(j == cyc(i as i64 - 1, ell))
}

/// `α_i^∨(wt b_j) = δ_{i,j+1} − δ_{i,j}`.
pub fn letter_pair(ell: usize, i: usize, j: usize) -> i64 {
    i64::from(i == cyc(j as i64 + 1, ell)) - i64::from(i == j)
}

/// `wt b_j = Λ_{j+1} − Λ_j`.
pub fn letter_wt(ell: usize, j: usize) -> Weight {
    &Weight::fundamental(ell, cyc(j as i64 + 1, ell)) - &Weight::fundamental(ell, j)
}

/// The `(ℓ+1)`-element crystal `B_ℓ`.
#[derive(Clone, Copy, Debug)]
pub struct LetterCrystal {
    pub ell: usize,
}

impl Crystal for LetterCrystal {
    type Elem = usize;

    fn ell(&self) -> usize {
        self.ell
    }

    fn e(&self, i: usize, x: &usize) -> Option<usize> {
        letter_e(self.ell, i, *x)
    }

    fn f(&self, i: usize, x: &usize) -> Option<usize> {
        letter_f(self.ell, i, *x)
    }

    fn eps(&self, i: usize, x: &usize) -> i64 {
        letter_eps(i, *x)
    }

    fn wt(&self, x: &usize) -> Weight {
        letter_wt(self.ell, *x)
    }

    fn pair_wt(&self, i: usize, x: &usize) -> i64 {
        letter_pair(self.ell, i, *x)
    }

    fn encode(&self, x: &usize) -> Value {
        Value::from(*x)
    }
}

/// An element of `B_ℓ(m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    ell: usize,
    letters: Vec<u8>,
}

/// Descent data of a word.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WordStats {
    pub desc: Vec<usize>,
    #[serde(skip)]
    pub maj_tilde: Vec<usize>,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "Maj")]
    pub maj: i64,
}

impl Word {
    pub fn new(ell: usize, letters: Vec<u8>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidInput("ℓ must be at least 1".into()));
        }
        if letters.is_empty() {
            return Err(Error::InvalidInput("a word needs at least one letter".into()));
        }
        if let Some(&c) = letters.iter().find(|&&c| c as usize > ell) {
            return Err(Error::InvalidInput(format!("letter {c} exceeds ℓ = {ell}")));
        }
        Ok(Word { ell, letters })
    }

    /// `b_j^{⊗m}`.
    pub fn constant(ell: usize, j: usize, m: usize) -> Self {
        Word::new(ell, vec![j as u8; m]).expect("valid constant word")
    }

    pub fn from_json(v: &Value, ell: usize) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("word JSON must be an array".into()))?;
        let letters = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&c| c <= u8::MAX as u64)
                    .map(|c| c as u8)
                    .ok_or_else(|| Error::InvalidInput(format!("bad letter {x}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(ell, letters)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn letter(&self, k: usize) -> usize {
        self.letters[k] as usize
    }

    /// `w ⊗ b_j`.
    pub fn push(&self, j: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.push(j as u8);
        Word { ell: self.ell, letters }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            ell: self.ell,
            letters: self.letters[..len].to_vec(),
        }
    }

    fn signature(&self, i: usize) -> crate::crystal::Signature {
        kashiwara_signature(
            self.letters
                .iter()
                .map(|&c| (letter_eps(i, c as usize), letter_pair(self.ell, i, c as usize))),
        )
        .expect("words are non-empty")
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.signature(i).eps
    }

    pub fn phi(&self, i: usize) -> i64 {
        self.eps(i) + self.pair_wt(i)
    }

    pub fn pair_wt(&self, i: usize) -> i64 {
        self.letters.iter().map(|&c| letter_pair(self.ell, i, c as usize)).sum()
    }

    pub fn e(&self, i: usize) -> Option<Word> {
        let k = self.signature(i).leftmost;
        let new = letter_e(self.ell, i, self.letter(k))?;
        let mut letters = self.letters.clone();
        letters[k] = new as u8;
        Some(Word { ell: self.ell, letters })
    }

    pub fn f(&self, i: usize) -> Option<Word> {
        let k = self.signature(i).rightmost;
        let new = letter_f(self.ell, i, self.letter(k))?;
        let mut letters = self.letters.clone();
        letters[k] = new as u8;
        Some(Word { ell: self.ell, letters })
    }

    /// `Σ wt c_k` (no δ part).
    pub fn wt(&self) -> Weight {
        let mut w = Weight::zero(self.ell);
        for t in self.tuple().iter().enumerate() {
            let (j, &k) = t;
            if k > 0 {
                w += &letter_wt(self.ell, j).scale(&crate::rat::int(k as i64));
            }
        }
        w
    }

    /// Letter counts `(k_0, …, k_ℓ)`.
    pub fn tuple(&self) -> Vec<u32> {
        let mut k = vec![0u32; self.ell + 1];
        for &c in &self.letters {
            k[c as usize] += 1;
        }
        k
    }

    /// The reversed reading `i_1 … i_m`, `i_r = c_{m−r+1}`.
    fn reading(&self) -> impl Iterator<Item = u8> + '_ {
        self.letters.iter().rev().copied()
    }

    pub fn stats(&self) -> WordStats {
        let m = self.len();
        let reading: Vec<u8> = self.reading().collect();
        // positions r (1-based) with i_r > i_{r+1}
        let desc: Vec<usize> = (1..m).filter(|&r| reading[r - 1] > reading[r]).collect();
        let mut maj_tilde = Vec::with_capacity(desc.len() + 2);
        maj_tilde.push(0);
        maj_tilde.extend(&desc);
        maj_tilde.push(m);
        let n = maj_tilde
            .windows(2)
            .enumerate()
            .map(|(r, w)| (r as i64 + 1) * (w[1] - w[0]) as i64)
            .sum();
        let maj = desc.iter().map(|&d| d as i64).sum();
        WordStats { desc, maj_tilde, n, maj }
    }

    /// `ρ_s`: the `r` with `n_{r−1} < m − s + 1 ≤ n_r`.
    pub fn rho(&self, s: usize) -> usize {
        let m = self.len();
        assert!((1..=m).contains(&s), "rho needs 1 ≤ s ≤ m");
        let target = m - s + 1;
        let stats = self.stats();
        stats
            .maj_tilde
            .windows(2)
            .position(|w| w[0] < target && target <= w[1])
            .map(|r| r + 1)
            .expect("maj_tilde covers (0, m]")
    }

    /// `N(w) mod m` as an element of `0..m`.
    pub fn n_residue(&self) -> u64 {
        self.stats().n.rem_euclid(self.len() as i64) as u64
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.letters.len()))?;
        for c in &self.letters {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// `B_ℓ(m) = B_ℓ^{⊗m}`.
#[derive(Clone, Copy, Debug)]
pub struct WordCrystal {
    pub ell: usize,
    pub m: usize,
}

impl Crystal for WordCrystal {
    type Elem = Word;

    fn ell(&self) -> usize {
        self.ell
    }

    fn e(&self, i: usize, x: &Word) -> Option<Word> {
        x.e(i)
    }

    fn f(&self, i: usize, x: &Word) -> Option<Word> {
        x.f(i)
    }

    fn eps(&self, i: usize, x: &Word) -> i64 {
        x.eps(i)
    }

    fn wt(&self, x: &Word) -> Weight {
        x.wt()
    }

    fn pair_wt(&self, i: usize, x: &Word) -> i64 {
        x.pair_wt(i)
    }

    fn encode(&self, x: &Word) -> Value {
        serde_json::to_value(x).expect("word serializes")
    }
}

/// Optional filters for [`enumerate_words`].
#[derive(Clone, Debug, Default)]
pub struct WordFilter {
    pub tuple: Option<Vec<u32>>,
    /// Keep words with `N(w) ≡ residue (mod m)`.
    pub residue: Option<u64>,
}

/// All of `B_ℓ(m)` in lexicographic order, optionally filtered.
pub fn enumerate_words(ell: usize, m: usize, filter: &WordFilter, budget: usize) -> Result<Vec<Word>> {
    if ell == 0 || m == 0 {
        return Err(Error::InvalidInput("need ℓ ≥ 1 and m ≥ 1".into()));
    }
    let total = (ell as u128 + 1).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    if let Some(t) = &filter.tuple {
        if t.len() != ell + 1 {
            return Err(Error::InvalidInput(format!("tuple needs {} entries", ell + 1)));
        }
    }
    let mut out = Vec::new();
    let mut letters = vec![0u8; m];
    loop {
        let w = Word { ell, letters: letters.clone() };
        let keep = filter.tuple.as_ref().is_none_or(|t| w.tuple() == *t)
            && filter.residue.is_none_or(|r| w.n_residue() == r % m as u64);
        if keep {
            out.push(w);
        }
        // odometer, last letter fastest
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if (letters[k] as usize) < ell {
                letters[k] += 1;
                break;
            }
            letters[k] = 0;
        }
    }
}

/// `B_ℓ(m)^λ = { b : ε_i(b) ≤ α_i^∨(λ) ∀i }`.
pub fn dominant_subset(ell: usize, m: usize, lambda: &Weight) -> Result<Vec<Word>> {
    if !lambda.is_lattice() || lambda.ell() != ell {
        return Err(Error::Precondition("λ must be a lattice weight of rank ℓ".into()));
    }
    let bounds: Vec<i64> = (0..=ell).map(|i| lambda.pair_int(i)).collect();
    Ok(enumerate_words(ell, m, &WordFilter::default(), DEFAULT_NODE_BUDGET)?
        .into_iter()
        .filter(|w| (0..=ell).all(|i| w.eps(i) <= bounds[i]))
        .collect())
}

/// `b(i, m) = b_i ⊗ b_{i+1} ⊗ ⋯ ⊗ b_{i+m−1}`.
pub fn b_im(ell: usize, i: usize, m: usize) -> Word {
    let letters = (0..m).map(|k| cyc((i + k) as i64, ell) as u8).collect();
    Word::new(ell, letters).expect("valid cyclic word")
}

/// One factor `e_i^{m_r}` of a raising monomial together with the data
/// that determines its exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaiseStep {
    pub index: usize,
    pub exponent: u32,
    /// `ε_{i_r}(u_{r−1})`
    pub eps_before: i64,
    /// `α_{i_r}^∨(λ)`
    pub bound: i64,
    /// `u_{r−1}`
    pub before: Word,
}

#[derive(Clone, Debug)]
pub struct RaiseResult {
    pub monomial: Monomial,
    pub steps: Vec<RaiseStep>,
    pub result: Word,
}

fn check_raising_weight(lambda: &Weight, ell: usize) -> Result<Vec<i64>> {
    if lambda.ell() != ell || !lambda.is_lattice() || !lambda.is_dominant() {
        return Err(Error::Precondition("λ must be a dominant lattice weight of rank ℓ".into()));
    }
    if lambda.is_delta_multiple() {
        return Err(Error::Precondition("λ must not be a multiple of δ".into()));
    }
    Ok((0..=ell).map(|i| lambda.pair_int(i)).collect())
}

/// Moves `w` into `B_ℓ(m)^λ` with a monomial `e_{i_k}^{m_k} ⋯ e_{i_1}^{m_1}`
/// where `m_r = ε_{i_r}(u_{r−1}) − α_{i_r}^∨(λ) > 0`.
///
/// Each round takes the longest prefix `b'` with `ε_j(b') ≤ α_j^∨(λ)` for all
/// `j`, reads the letter `i` right after it and applies `e_i^{m_r}`. The
/// letter after `b'` then drops to `i − 1`, and the round repeats until the
/// prefix grows; the prefix length strictly increases over the whole run.
pub fn raise_to_dominant(w: &Word, lambda: &Weight) -> Result<RaiseResult> {
    let ell = w.ell();
    let bounds = check_raising_weight(lambda, ell)?;
    let fits = |u: &Word| (0..=ell).all(|j| u.eps(j) <= bounds[j]);
    let m = w.len();
    let mut u = w.clone();
    let mut steps = Vec::new();
    let mut monomial = Monomial::identity();
    // at most (ℓ+1) rounds per prefix extension
    let max_rounds = (ell + 1) * (m + 1);
    for _ in 0..=max_rounds {
        // ε of prefixes is monotone in the prefix length
        let s = (1..=m).take_while(|&s| fits(&u.prefix(s))).last().unwrap_or(0);
        if s == m {
            return Ok(RaiseResult { monomial, steps, result: u });
        }
        let i = u.letter(s);
        let eps_before = u.eps(i);
        let exponent = eps_before - bounds[i];
        if exponent <= 0 {
            return Err(Error::CrossCheck(format!(
                "raising exponent {exponent} at {u:?} for e_{i} is not positive"
            )));
        }
        let before = u.clone();
        for _ in 0..exponent {
            u = u.e(i).ok_or_else(|| Error::CrossCheck(format!("e_{i} vanished on {u:?}")))?;
        }
        monomial.then(Gen::e(i), exponent as u32);
        steps.push(RaiseStep {
            index: i,
            exponent: exponent as u32,
            eps_before,
            bound: bounds[i],
            before,
        });
    }
    Err(Error::CrossCheck(format!("raising {w:?} did not terminate")))
}

/// A shortest `f`-monomial sending `b_0^{⊗m}` to `w`, found by BFS with
/// generators tried in the order `f_0, …, f_ℓ`. Also returns
/// `n_f`, the total exponent on `f_0`.
pub fn f_monomial_from_source(w: &Word, budget: usize) -> Result<(Monomial, u32)> {
    let ell = w.ell();
    let source = Word::constant(ell, 0, w.len());
    let mut parent: BTreeMap<Word, Option<(Word, usize)>> = BTreeMap::from([(source.clone(), None)]);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        if x == *w {
            break;
        }
        for i in 0..=ell {
            if let Some(y) = x.f(i) {
                if !parent.contains_key(&y) {
                    parent.insert(y.clone(), Some((x.clone(), i)));
                    if parent.len() > budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    if !parent.contains_key(w) {
        return Err(Error::CrossCheck(format!("{w:?} not reachable from b_0^m over F")));
    }
    // walk back: the last generator applied is the leftmost factor
    let mut applied = Vec::new();
    let mut cur = w.clone();
    while let Some(Some((prev, i))) = parent.get(&cur) {
        applied.push(*i);
        cur = prev.clone();
    }
    let monomial = Monomial::from_terms(applied.iter().map(|&i| (Gen::f(i), 1)));
    let n_f = applied.iter().filter(|&&i| i == 0).count() as u32;
    debug_assert!(monomial.is_kind(Kind::F));
    Ok((monomial, n_f))
}

/// `f_0^{m−1} f_ℓ^{m−1} ⋯ f_2^{m−1} f_1^m`, sending `b_0^{⊗m}` to
/// `b_0^{⊗m−1} ⊗ b_1`.
pub fn monomial_to_last_one(ell: usize, m: usize) -> Monomial {
    let k = m as u32 - 1;
    let mut terms = vec![(Gen::f(0), k)];
    terms.extend((2..=ell).rev().map(|i| (Gen::f(i), k)));
    terms.push((Gen::f(1), m as u32));
    Monomial::from_terms(terms)
}

/// `e_1^{m−1} ⋯ e_ℓ^{m−1} e_0^m`, sending `b_0^{⊗m}` to `b_ℓ ⊗ b_0^{⊗m−1}`.
pub fn monomial_to_first_ell(ell: usize, m: usize) -> Monomial {
    let k = m as u32 - 1;
    let mut terms: Vec<(Gen, u32)> = (1..=ell).map(|i| (Gen::e(i), k)).collect();
    terms.push((Gen::e(0), m as u32));
    Monomial::from_terms(terms)
}
