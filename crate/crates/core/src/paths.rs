//! Littelmann's path crystal with exact rational arithmetic, and the
//! embedding `ψ` of `B̂_ℓ(m)` into it.
//!
//! Paths are stored in canonical form: zero-length segments removed,
//! consecutive segments with the same velocity ray merged, and time
//! rescaled to cumulative L1 length. Two paths are reparametrizations of
//! each other exactly when their canonical forms are equal.
//!
//! Sign convention: `h^i(τ) = −α_i^∨(b(τ))`, `ε_i = ⌊max h^i⌋`. `e_i`
//! reflects the piece where `h^i` climbs from `ε − 1` to its first
//! maximum; `f_i` the piece after the last maximum down to `ε − 1`.

use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::Value;
use std::fmt;

use crate::affine::AffineElement;
use crate::crystal::Crystal;
use crate::letters::letter_wt;
use crate::rat::{self, Rat};
use crate::weight::{simple_root, Weight};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLPath {
    breaks: Vec<(Rat, Weight)>,
}

impl PLPath {
    /// Builds a path from raw breakpoints and canonicalizes it.
    pub fn from_breaks(raw: Vec<(Rat, Weight)>) -> Result<PLPath> {
        let Some((t0, v0)) = raw.first() else {
            return Err(Error::InvalidInput("a path needs breakpoints".into()));
        };
        let (t1, v1) = raw.last().expect("non-empty");
        if raw.len() < 2 || !t0.is_zero() || *t1 != rat::one() {
            return Err(Error::InvalidInput("path times must run from 0 to 1".into()));
        }
        if !v0.is_zero() {
            return Err(Error::InvalidInput("a path must start at 0".into()));
        }
        if !v1.is_lattice() {
            return Err(Error::InvalidInput(format!("endpoint {v1} is not a lattice weight")));
        }
        if raw.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidInput("path times must increase strictly".into()));
        }
        let ell = v0.ell();
        if raw.iter().any(|(_, v)| v.ell() != ell) {
            return Err(Error::InvalidInput("breakpoints of mixed rank".into()));
        }
        Ok(canonicalize(raw.into_iter().map(|(_, v)| v).collect()))
    }

    /// Path through the given vertices (starting after 0), uniform times.
    pub fn from_vertices(ell: usize, vertices: impl IntoIterator<Item = Weight>) -> Result<PLPath> {
        let mut vs = vec![Weight::zero(ell)];
        vs.extend(vertices);
        let n = vs.len() as i64 - 1;
        if n < 1 {
            return Err(Error::InvalidInput("a path needs at least one vertex".into()));
        }
        PLPath::from_breaks(
            vs.into_iter()
                .enumerate()
                .map(|(k, v)| (rat::frac(k as i64, n), v))
                .collect(),
        )
    }

    pub fn trivial(ell: usize) -> PLPath {
        PLPath {
            breaks: vec![(rat::zero(), Weight::zero(ell)), (rat::one(), Weight::zero(ell))],
        }
    }

    pub fn breaks(&self) -> &[(Rat, Weight)] {
        &self.breaks
    }

    pub fn ell(&self) -> usize {
        self.breaks[0].1.ell()
    }

    /// `b(1)`.
    pub fn wt(&self) -> Weight {
        self.breaks.last().expect("non-empty").1.clone()
    }

    pub fn segments(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("path serializes")
    }
}

impl Serialize for PLPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Break<'a> {
            #[serde(with = "crate::rat::json")]
            t: Rat,
            v: &'a Weight,
        }
        let breaks: Vec<Break> = self
            .breaks
            .iter()
            .map(|(t, v)| Break { t: t.clone(), v })
            .collect();
        let mut st = s.serialize_struct("PLPath", 1)?;
        st.serialize_field("breaks", &breaks)?;
        st.end()
    }
}

impl fmt::Debug for PLPath {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PLPath {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self
            .breaks
            .iter()
            .map(|(t, v)| format!("{}@{}", v, rat::display(t)))
            .collect();
        write!(f, "{}", parts.join(" -> "))
    }
}

/// Canonical form of the path through `vertices` (the first must be 0).
pub fn canonicalize(vertices: Vec<Weight>) -> PLPath {
    let ell = vertices[0].ell();
    let mut pts: Vec<Weight> = vec![vertices[0].clone()];
    let mut dirs: Vec<Weight> = Vec::new();
    for v in vertices.into_iter().skip(1) {
        let last = pts.last().expect("non-empty");
        let d = &v - last;
        if d.is_zero() {
            continue;
        }
        if let Some(prev) = dirs.last() {
            if prev.positive_ratio(&d).is_some() {
                let k = pts.len() - 1;
                let new_dir = &d + prev;
                pts[k] = v;
                *dirs.last_mut().expect("non-empty") = new_dir;
                continue;
            }
        }
        dirs.push(d);
        pts.push(v);
    }
    if dirs.is_empty() {
        return PLPath::trivial(ell);
    }
    let lengths: Vec<Rat> = dirs.iter().map(Weight::l1_norm).collect();
    let total: Rat = lengths.iter().fold(Rat::zero(), |a, b| a + b);
    let mut acc = Rat::zero();
    let mut breaks = vec![(Rat::zero(), pts[0].clone())];
    for (k, len) in lengths.iter().enumerate() {
        acc += len;
        let t = if k + 1 == lengths.len() { rat::one() } else { &acc / &total };
        breaks.push((t, pts[k + 1].clone()));
    }
    PLPath { breaks }
}

/// Values of `h^i = −α_i^∨(b(τ))` at the breakpoints, paired with times.
pub fn h_func(p: &PLPath, i: usize) -> Vec<(Rat, Rat)> {
    p.breaks.iter().map(|(t, v)| (t.clone(), -v.pair(i).clone())).collect()
}

fn h_values(p: &PLPath, i: usize) -> Vec<Rat> {
    p.breaks.iter().map(|(_, v)| -v.pair(i).clone()).collect()
}

/// `⌊max h^i⌋`. Since `h^i(0) = 0` and `h^i` is continuous, every integer
/// between 0 and the maximum is attained.
pub fn path_eps(p: &PLPath, i: usize) -> i64 {
    let max = h_values(p, i).into_iter().max().expect("non-empty");
    rat::floor_i64(&max)
}

pub fn path_phi(p: &PLPath, i: usize) -> i64 {
    path_eps(p, i) + rat::floor_i64(p.wt().pair(i))
}

/// True when `max h^i` is an integer for every `i`.
pub fn integrality_check(p: &PLPath) -> bool {
    (0..=p.ell()).all(|i| h_values(p, i).into_iter().max().expect("non-empty").is_integer())
}

/// Time where the segment from `(t0, h0)` to `(t1, h1)` hits `level`.
fn hit_time(t0: &Rat, h0: &Rat, t1: &Rat, h1: &Rat, level: &Rat) -> Rat {
    if h0 == level {
        return t0.clone();
    }
    t0 + (level - h0) / (h1 - h0) * (t1 - t0)
}

/// Vertices of `p` with extra breakpoints at the given times, each paired
/// with its time and `h^i` value.
fn refine(p: &PLPath, i: usize, cuts: &[&Rat]) -> Vec<(Rat, Weight, Rat)> {
    let mut out: Vec<(Rat, Weight, Rat)> = Vec::new();
    for (k, (t, v)) in p.breaks.iter().enumerate() {
        if k > 0 {
            let (t0, v0) = &p.breaks[k - 1];
            let mut inner: Vec<&Rat> = cuts.iter().copied().filter(|c| *c > t0 && *c < t).collect();
            inner.sort();
            inner.dedup();
            for c in inner {
                let s = (c - t0) / (t - t0);
                let w = v0 + &(v - v0).scale(&s);
                let h = -w.pair(i).clone();
                out.push((c.clone(), w, h));
            }
        }
        out.push((t.clone(), v.clone(), -v.pair(i).clone()));
    }
    out
}

/// `e_i` on paths; absent when `ε_i = 0`.
pub fn path_e(p: &PLPath, i: usize) -> Option<PLPath> {
    let eps = path_eps(p, i);
    if eps == 0 {
        return None;
    }
    let (top, low) = (rat::int(eps), rat::int(eps - 1));
    let ts: Vec<&Rat> = p.breaks.iter().map(|(t, _)| t).collect();
    let hs = h_values(p, i);
    // e_+: h(0) = 0 < ε, so the first segment ending at or above ε holds it
    let k = (0..hs.len() - 1).find(|&k| hs[k + 1] >= top)?;
    let plus = hit_time(ts[k], &hs[k], ts[k + 1], &hs[k + 1], &top);
    // e_-: walk back from e_+ to the last time h equals ε − 1
    let minus = if hs[k] <= low {
        hit_time(ts[k], &hs[k], &plus, &top, &low)
    } else {
        let j = (0..k).rev().find(|&j| hs[j] <= low)?;
        hit_time(ts[j], &hs[j], ts[j + 1], &hs[j + 1], &low)
    };
    let alpha = simple_root(p.ell(), i);
    let verts = refine(p, i, &[&minus, &plus])
        .into_iter()
        .map(|(t, v, h)| {
            if t < minus {
                v
            } else if t <= plus {
                &v + &alpha.scale(&(h - &low))
            } else {
                &v + &alpha
            }
        })
        .collect();
    Some(canonicalize(verts))
}

/// `f_i` on paths; absent when `h^i(1) > ε_i − 1`.
pub fn path_f(p: &PLPath, i: usize) -> Option<PLPath> {
    let eps = path_eps(p, i);
    let (top, low) = (rat::int(eps), rat::int(eps - 1));
    let ts: Vec<&Rat> = p.breaks.iter().map(|(t, _)| t).collect();
    let hs = h_values(p, i);
    let n = hs.len();
    if hs[n - 1] > low {
        return None;
    }
    // f_+: the last segment starting at or above ε
    let k = (0..n - 1).rev().find(|&k| hs[k] >= top)?;
    let plus = if hs[k] == top {
        ts[k].clone()
    } else {
        hit_time(ts[k], &hs[k], ts[k + 1], &hs[k + 1], &top)
    };
    // f_-: first time after f_+ where h equals ε − 1
    let minus = if hs[k + 1] <= low {
        hit_time(&plus, &top, ts[k + 1], &hs[k + 1], &low)
    } else {
        let j = (k + 1..n - 1).find(|&j| hs[j + 1] <= low)?;
        hit_time(ts[j], &hs[j], ts[j + 1], &hs[j + 1], &low)
    };
    let alpha = simple_root(p.ell(), i);
    let verts = refine(p, i, &[&plus, &minus])
        .into_iter()
        .map(|(t, v, h)| {
            if t < plus {
                v
            } else if t <= minus {
                &v + &alpha.scale(&(h - &top))
            } else {
                &v - &alpha
            }
        })
        .collect();
    Some(canonicalize(verts))
}

/// `p1` followed by `p2` translated to start at `wt p1`.
pub fn concat(p1: &PLPath, p2: &PLPath) -> PLPath {
    let end = p1.wt();
    let mut verts: Vec<Weight> = p1.breaks.iter().map(|(_, v)| v.clone()).collect();
    verts.extend(p2.breaks.iter().skip(1).map(|(_, v)| &end + v));
    canonicalize(verts)
}

/// `τ ↦ μτ`.
pub fn straight_path(mu: &Weight) -> Result<PLPath> {
    if !mu.is_lattice() {
        return Err(Error::InvalidInput(format!("{mu} is not a lattice weight")));
    }
    Ok(canonicalize(vec![Weight::zero(mu.ell()), mu.clone()]))
}

/// `κ_0, …, κ_m` with `κ_s = κ_{s−1} − (ρ_s − 1) + (N + z − m)/m`.
pub fn kappa_seq(x: &AffineElement) -> Result<Vec<Rat>> {
    let m = x.m() as i64;
    let n = x.word.stats().n;
    let step = rat::frac(n + x.z - m, m);
    let mut out = vec![Rat::zero()];
    for s in 1..=x.m() {
        let prev = out.last().expect("non-empty");
        let rho = x.word.rho(s) as i64;
        out.push(prev - rat::int(rho - 1) + &step);
    }
    if out[x.m()] != rat::int(x.z) {
        return Err(Error::CrossCheck(format!(
            "κ_m = {} differs from z = {} for {:?}",
            rat::display(&out[x.m()]),
            x.z,
            x
        )));
    }
    Ok(out)
}

/// `ψ(w ⊗ z)`: the path through `λ_s = Σ_{t ≤ s} wt(c_t) + κ_s δ` at
/// times `s/m`.
pub fn psi_embed(x: &AffineElement) -> Result<PLPath> {
    let ell = x.word.ell();
    let kappa = kappa_seq(x)?;
    let mut acc = Weight::zero(ell);
    let mut verts = Vec::with_capacity(x.m());
    for s in 1..=x.m() {
        acc += &letter_wt(ell, x.word.letter(s - 1));
        let mut v = acc.clone();
        v.dlt = kappa[s].clone();
        verts.push(v);
    }
    PLPath::from_vertices(ell, verts)
}

/// `α_i^∨(λ + b(τ)) ≥ 0` for all `τ` and `i`.
pub fn is_lambda_dominant(p: &PLPath, lambda: &Weight) -> bool {
    p.breaks
        .iter()
        .all(|(_, v)| (0..=p.ell()).all(|i| !(lambda.pair(i) + v.pair(i)).is_negative()))
}

/// Littelmann's path crystal of rank `ℓ`.
#[derive(Clone, Copy, Debug)]
pub struct PathCrystal {
    pub ell: usize,
}

impl Crystal for PathCrystal {
    type Elem = PLPath;

    fn ell(&self) -> usize {
        self.ell
    }

    fn e(&self, i: usize, x: &PLPath) -> Option<PLPath> {
        path_e(x, i)
    }

    fn f(&self, i: usize, x: &PLPath) -> Option<PLPath> {
        path_f(x, i)
    }

    fn eps(&self, i: usize, x: &PLPath) -> i64 {
        path_eps(x, i)
    }

    fn wt(&self, x: &PLPath) -> Weight {
        x.wt()
    }

    fn encode(&self, x: &PLPath) -> Value {
        x.to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letters::Word;

    fn aff(ell: usize, letters: &[u8], z: i64) -> AffineElement {
        AffineElement::new(Word::new(ell, letters.to_vec()).unwrap(), z)
    }

    fn wt(lam: &[i64], dlt: Rat) -> Weight {
        let mut w = Weight::from_ints(lam, 0);
        w.dlt = dlt;
        w
    }

    #[test]
    fn canonical_merging() {
        let mu = Weight::from_ints(&[1, 2], 3);
        let split = PLPath::from_breaks(vec![
            (rat::zero(), Weight::zero(1)),
            (rat::frac(1, 3), mu.scale(&rat::frac(1, 5))),
            (rat::frac(1, 2), mu.scale(&rat::frac(1, 2))),
            (rat::one(), mu.clone()),
        ])
        .unwrap();
        assert_eq!(split, straight_path(&mu).unwrap());
        assert_eq!(split.segments(), 1);
        assert!(PLPath::from_breaks(vec![(rat::zero(), Weight::zero(1)), (rat::one(), wt(&[1, 0], rat::frac(1, 2)))]).is_err());
        assert!(PLPath::from_breaks(vec![
            (rat::zero(), Weight::zero(1)),
            (rat::frac(1, 2), mu.clone()),
            (rat::frac(1, 2), mu.clone()),
            (rat::one(), mu.clone())
        ])
        .is_err());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_seq(&aff(1, &[0, 1], 0)).unwrap(), vec![rat::zero(), rat::frac(-1, 2), rat::zero()]);
        assert_eq!(kappa_seq(&aff(1, &[0, 0], 1)).unwrap(), vec![rat::zero(), rat::frac(1, 2), rat::one()]);
        let k = kappa_seq(&aff(2, &[0, 0, 0], 2)).unwrap();
        assert_eq!(k, vec![rat::zero(), rat::frac(2, 3), rat::frac(4, 3), rat::int(2)]);
    }

    #[test]
    fn psi_examples() {
        let p = psi_embed(&aff(1, &[0, 0], 1)).unwrap();
        assert_eq!(p, straight_path(&Weight::from_ints(&[-2, 2], 1)).unwrap());
        let corner = psi_embed(&aff(1, &[0, 1], 0)).unwrap();
        assert_eq!(corner.breaks().len(), 3);
        assert_eq!(corner.breaks()[1].1, wt(&[-1, 1], rat::frac(-1, 2)));
        assert_eq!(corner.wt(), Weight::zero(1));
        let h: Vec<Rat> = h_func(&corner, 0).into_iter().map(|(_, h)| h).collect();
        assert_eq!(h, vec![rat::zero(), rat::one(), rat::zero()]);
        assert_eq!(path_eps(&corner, 0), 1);
        assert!(integrality_check(&corner));
    }

    #[test]
    fn root_operator_examples() {
        let corner = psi_embed(&aff(1, &[0, 1], 0)).unwrap();
        let up = path_e(&corner, 0).unwrap();
        assert_eq!(up, psi_embed(&aff(1, &[1, 1], 1)).unwrap());
        assert_eq!(up, straight_path(&Weight::from_ints(&[2, -2], 1)).unwrap());
        assert_eq!(path_f(&up, 0), Some(corner.clone()));
        let l0 = straight_path(&Weight::fundamental(1, 0)).unwrap();
        assert!((0..=1).all(|i| path_e(&l0, i).is_none()));
        assert_eq!(path_eps(&l0, 0), 0);
        assert!(integrality_check(&l0));
        let h: Vec<Rat> = h_func(&l0, 0).into_iter().map(|(_, h)| h).collect();
        assert_eq!(h, vec![rat::zero(), rat::int(-1)]);
    }

    #[test]
    fn weight_law() {
        let ell = 2;
        let p = psi_embed(&aff(ell, &[2, 0, 1], -1)).unwrap();
        for i in 0..=ell {
            if let Some(q) = path_e(&p, i) {
                assert_eq!(q.wt(), &p.wt() + &simple_root(ell, i));
                assert_eq!(path_f(&q, i), Some(p.clone()));
            }
            if let Some(q) = path_f(&p, i) {
                assert_eq!(q.wt(), &p.wt() - &simple_root(ell, i));
                assert_eq!(path_e(&q, i), Some(p.clone()));
            }
        }
    }

    #[test]
    fn concatenation() {
        let p = psi_embed(&aff(1, &[0, 1], 0)).unwrap();
        assert_eq!(concat(&p, &PLPath::trivial(1)), p);
        assert_eq!(concat(&PLPath::trivial(1), &p), p);
        let q = straight_path(&Weight::fundamental(1, 0)).unwrap();
        for i in 0..=1 {
            let lhs = path_eps(&concat(&q, &p), i);
            let rhs = path_eps(&q, i).max(path_eps(&p, i) - q.wt().pair_int(i));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dominance() {
        let p = psi_embed(&aff(1, &[0, 1], 0)).unwrap();
        assert!(is_lambda_dominant(&p, &Weight::fundamental(1, 0)));
        assert!(!is_lambda_dominant(&p, &Weight::zero(1)));
    }

    #[test]
    fn json_shape() {
        let p = psi_embed(&aff(1, &[0, 1], 0)).unwrap();
        let v = p.to_json();
        assert_eq!(v["breaks"][1]["t"], serde_json::json!("1/2"));
        assert_eq!(v["breaks"][1]["v"]["dlt"], serde_json::json!("-1/2"));
        assert_eq!(v["breaks"][2]["t"], serde_json::json!(1));
    }
}
