//! The affine type-A weight lattice.
//!
//! Weights are stored in the basis `Λ_0, …, Λ_ℓ, δ`, so pairing with a simple
//! coroot is a coordinate read. The simple roots carry the δ-components fixed
//! by `α_i = 2Λ_i − Λ_{i−1} − Λ_{i+1} + δ_{i,0}δ`, which makes
//! `α_0 + ⋯ + α_ℓ = δ`. Exported data is tied to this basis.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::rat::{self, Rat};
use crate::{Error, Result};

/// A residue modulo `ℓ + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicIndex {
    value: usize,
    modulus: usize,
}

impl CyclicIndex {
    pub fn new(i: i64, ell: usize) -> Self {
        let modulus = ell + 1;
        let value = i.rem_euclid(modulus as i64) as usize;
        CyclicIndex { value, modulus }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn ell(self) -> usize {
        self.modulus - 1
    }

    pub fn shift(self, k: i64) -> Self {
        CyclicIndex::new(self.value as i64 + k, self.ell())
    }
}

impl fmt::Display for CyclicIndex {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Reduces `i` modulo `ℓ + 1`.
pub fn cyc(i: i64, ell: usize) -> usize {
    CyclicIndex::new(i, ell).value()
}

/// An element of `Q ⊗ P(π)`: coefficients on `Λ_0 … Λ_ℓ` and on `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "crate::rat::json_vec")]
    pub lam: Vec<Rat>,
    #[serde(with = "crate::rat::json")]
    pub dlt: Rat,
}

impl Weight {
    pub fn zero(ell: usize) -> Self {
        Weight {
            lam: vec![Rat::zero(); ell + 1],
            dlt: Rat::zero(),
        }
    }

    /// The fundamental weight `Λ_i`.
    pub fn fundamental(ell: usize, i: usize) -> Self {
        let mut w = Weight::zero(ell);
        w.lam[cyc(i as i64, ell)] = rat::one();
        w
    }

    /// The null root `δ`.
    pub fn delta(ell: usize) -> Self {
        let mut w = Weight::zero(ell);
        w.dlt = rat::one();
        w
    }

    pub fn from_ints(lam: &[i64], dlt: i64) -> Self {
        Weight {
            lam: lam.iter().map(|&c| rat::int(c)).collect(),
            dlt: rat::int(dlt),
        }
    }

    pub fn ell(&self) -> usize {
        self.lam.len() - 1
    }

    /// `α_i^∨(w)`: the coefficient of `Λ_i`.
    pub fn pair(&self, i: usize) -> &Rat {
        &self.lam[i]
    }

    /// Integer pairing; panics if the coefficient is not an integer.
    pub fn pair_int(&self, i: usize) -> i64 {
        rat::to_i64(&self.lam[i]).expect("pairing of a non-lattice weight")
    }

    pub fn is_lattice(&self) -> bool {
        self.lam.iter().all(|c| c.is_integer()) && self.dlt.is_integer()
    }

    pub fn is_dominant(&self) -> bool {
        self.lam.iter().all(|c| !c.is_negative())
    }

    /// True when the weight lies in `Zδ` (or `Qδ`): every `Λ`-coefficient vanishes.
    pub fn is_delta_multiple(&self) -> bool {
        self.lam.iter().all(|c| c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.is_delta_multiple() && self.dlt.is_zero()
    }

    /// Part without δ.
    pub fn classical(&self) -> Weight {
        Weight {
            lam: self.lam.clone(),
            dlt: Rat::zero(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight {
            lam: self.lam.iter().map(|x| x * c).collect(),
            dlt: &self.dlt * c,
        }
    }

    /// Sum of absolute values of all coordinates.
    pub fn l1_norm(&self) -> Rat {
        self.lam
            .iter()
            .chain(std::iter::once(&self.dlt))
            .fold(Rat::zero(), |acc, c| acc + c.abs())
    }

    fn coords(&self) -> impl Iterator<Item = &Rat> {
        self.lam.iter().chain(std::iter::once(&self.dlt))
    }

    /// If `other = c · self` with `c > 0`, returns `c`.
    pub fn positive_ratio(&self, other: &Weight) -> Option<Rat> {
        let (a, b) = self.coords().zip(other.coords()).find(|(a, _)| !a.is_zero())?;
        let c = b / a;
        if !c.is_positive() {
            return None;
        }
        if self.scale(&c) == *other {
            Some(c)
        } else {
            None
        }
    }

    /// Parses the compact grammar `L0+2L1-1d` (`Λ_0 + 2Λ_1 − δ`).
    ///
    /// Terms are `[coef]L<i>` or `[coef]d`, joined by `+`/`-`; coefficients
    /// may be rationals like `1/2`. A bare `0` is the zero weight.
    pub fn parse_spec(s: &str, ell: usize) -> Result<Weight> {
        let bad = |why: &str| Error::InvalidInput(format!("weight {s:?}: {why}"));
        let mut w = Weight::zero(ell);
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        if text == "0" {
            return Ok(w);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (pos, ch) in text.char_indices() {
            if (ch == '+' || ch == '-') && pos > 0 {
                terms.push(&text[start..pos]);
                start = pos;
            }
        }
        terms.push(&text[start..]);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let split = body
                .find(['L', 'd'])
                .ok_or_else(|| bad("term without L<i> or d"))?;
            let coef = if split == 0 {
                rat::one()
            } else {
                rat::parse(&body[..split])?
            };
            let coef = coef * rat::int(sign);
            let sym = &body[split..];
            if sym == "d" {
                w.dlt += coef;
            } else {
                let idx: usize = sym[1..]
                    .parse()
                    .map_err(|_| bad("bad fundamental weight index"))?;
                if idx > ell {
                    return Err(bad("fundamental weight index exceeds ℓ"));
                }
                w.lam[idx] += coef;
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let mut parts = Vec::new();
        let mut term = |c: &Rat, sym: String| {
            if c.is_zero() {
                return;
            }
            let coef = if *c == rat::one() {
                String::new()
            } else if *c == -rat::one() {
                "-".to_string()
            } else if c.is_integer() {
                rat::display(c)
            } else {
                format!("({})", rat::display(c))
            };
            parts.push(format!("{coef}{sym}"));
        };
        for (i, c) in self.lam.iter().enumerate() {
            term(c, format!("L{i}"));
        }
        term(&self.dlt, "d".to_string());
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push('-');
                out.push_str(rest);
            } else {
                out.push('+');
                out.push_str(p);
            }
        }
        f.write_str(&out)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight {
            lam: self.lam.iter().zip(&rhs.lam).map(|(a, b)| a + b).collect(),
            dlt: &self.dlt + &rhs.dlt,
        }
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight {
            lam: self.lam.iter().zip(&rhs.lam).map(|(a, b)| a - b).collect(),
            dlt: &self.dlt - &rhs.dlt,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.lam.iter_mut().zip(&rhs.lam) {
            *a += b;
        }
        self.dlt += &rhs.dlt;
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.lam.iter_mut().zip(&rhs.lam) {
            *a -= b;
        }
        self.dlt -= &rhs.dlt;
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            lam: self.lam.iter().map(|a| -a).collect(),
            dlt: -&self.dlt,
        }
    }
}

impl Mul<&Rat> for &Weight {
    type Output = Weight;
    fn mul(self, c: &Rat) -> Weight {
        self.scale(c)
    }
}

/// Cartan data of `\hat{sl}_{ℓ+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub ell: usize,
    pub a: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidInput("ℓ must be at least 1".into()));
        }
        let n = ell + 1;
        let kd = |a: usize, b: usize| i64::from(a == b);
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| 2 * kd(i, j) - kd(i, cyc(j as i64 - 1, ell)) - kd(cyc(i as i64 - 1, ell), j))
                    .collect()
            })
            .collect();
        Ok(CartanData { ell, a })
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }
}

pub fn pair(i: usize, w: &Weight) -> &Rat {
    w.pair(i)
}

/// `α_i = 2Λ_i − Λ_{i−1} − Λ_{i+1} + δ_{i,0}δ`.
pub fn simple_root(ell: usize, i: usize) -> Weight {
    let mut w = Weight::zero(ell);
    w.lam[i] += rat::int(2);
    w.lam[cyc(i as i64 - 1, ell)] -= rat::one();
    w.lam[cyc(i as i64 + 1, ell)] -= rat::one();
    if i == 0 {
        w.dlt = rat::one();
    }
    w
}

/// `s_i w = w − α_i^∨(w) α_i`.
pub fn reflect(i: usize, w: &Weight) -> Weight {
    let root = simple_root(w.ell(), i);
    w - &root.scale(w.pair(i))
}

/// `Σ k_i (Λ_{i+1} − Λ_i)`, the weight of any word with letter counts `k`.
pub fn tuple_to_weight(k: &[u32]) -> Weight {
    let ell = k.len() - 1;
    let mut w = Weight::zero(ell);
    for (i, &c) in k.iter().enumerate() {
        let c = rat::int(c as i64);
        w.lam[cyc(i as i64 + 1, ell)] += &c;
        w.lam[i] -= &c;
    }
    w
}

/// Solves `α_i^∨(ν) = k_{i−1} − k_i`, `Σ k_i = m` for the letter counts.
///
/// Returns `Ok(None)` when the solution is non-integral or has a negative
/// entry, i.e. `ν` is not a weight of `B_ℓ(m)`.
pub fn weight_to_tuple(nu: &Weight, m: u32) -> Result<Option<Vec<u32>>> {
    if !nu.dlt.is_zero() {
        return Err(Error::InvalidInput(
            "weight_to_tuple needs a weight with zero δ coefficient".into(),
        ));
    }
    let ell = nu.ell();
    // (ℓ+1) k_ℓ = m − Σ_{j≥1} j α_j^∨(ν)
    let mut acc = rat::int(m as i64);
    for j in 1..=ell {
        acc -= rat::int(j as i64) * nu.pair(j);
    }
    let k_ell = acc / rat::int(ell as i64 + 1);
    // k_i = k_ℓ + Σ_{j>i} α_j^∨(ν)
    let mut out = vec![Rat::zero(); ell + 1];
    out[ell] = k_ell;
    for i in (0..ell).rev() {
        out[i] = &out[i + 1] + nu.pair(i + 1);
    }
    let mut tuple = Vec::with_capacity(ell + 1);
    for k in &out {
        match rat::to_i64(k) {
            Some(v) if v >= 0 => tuple.push(v as u32),
            _ => return Ok(None),
        }
    }
    // the α_0 equation is implied by the others only for genuine weights
    if tuple_to_weight(&tuple) != *nu {
        return Ok(None);
    }
    Ok(Some(tuple))
}
