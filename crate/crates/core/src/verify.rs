//! Named invariant suites, run exhaustively over small parameter ranges.
//!
//! Every suite reports the number of checked items and the first
//! counterexample in a fixed enumeration order, so reports are
//! reproducible regardless of how many threads run them. Setting
//! [`SuiteConfig::mutate`] corrupts one observed value in the first case
//! of the suite; a correct checker must then fail.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

use crate::affine::{enumerate_all, enumerate_component, ladder_down, ladder_up, AffineCrystal, AffineElement, Window};
use crate::charfun::{
    c_func, c_tilde_expansion, closed_count, compositions, component_character, count_by_residue, cyclotomic,
    divisors, lemma_projection_sum, multinomial, project_cyclotomic, q_multinomial, rat_of, CountMethod, QPoly,
    RatPoly,
};
use crate::crystal::{apply_monomial, orbit_bfs, GeneratorSet, Region, DEFAULT_NODE_BUDGET};
use crate::decomp::{decompose, dominance_views, verify_decomposition};
use crate::letters::{b_im, dominant_subset, enumerate_words, raise_to_dominant, Word, WordFilter};
use crate::paths::{kappa_seq, path_e, path_eps, path_f, psi_embed, straight_path};
use crate::weight::Weight;
use crate::{Error, Result};

pub const SUITES: &[&str] = &[
    "maj-n",
    "psi-morphism",
    "counting",
    "components",
    "dominance",
    "decomposition",
    "appendix",
    "no-extremal",
];

/// Parameter bounds for a suite. `l` and `m` are upper limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub l: usize,
    pub m: usize,
    pub zmin: i64,
    pub zmax: i64,
    pub depth: usize,
}

impl Bounds {
    pub fn default_for(suite: &str) -> Option<Bounds> {
        let b = |l, m, zmin, zmax, depth| Some(Bounds { l, m, zmin, zmax, depth });
        match suite {
            "maj-n" => b(3, 6, 0, 0, 0),
            "psi-morphism" => b(2, 4, -2, 2, 0),
            "counting" => b(3, 6, 0, 0, 0),
            "components" => b(3, 4, 0, 0, 0),
            "dominance" => b(3, 5, 0, 0, 0),
            "decomposition" => b(2, 3, -1, 1, 4),
            "appendix" => b(0, 8, 0, 0, 0),
            "no-extremal" => b(3, 5, 0, 0, 0),
            _ => None,
        }
    }

    pub fn window(&self) -> Window {
        Window::new(self.zmin, self.zmax)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub bounds: Bounds,
    pub mutate: bool,
    pub budget: usize,
}

impl SuiteConfig {
    pub fn defaults(suite: &str) -> Result<SuiteConfig> {
        let bounds = Bounds::default_for(suite).ok_or_else(|| unknown_suite(suite))?;
        Ok(SuiteConfig {
            bounds,
            mutate: false,
            budget: DEFAULT_NODE_BUDGET,
        })
    }
}

fn unknown_suite(s: &str) -> Error {
    Error::InvalidInput(format!("unknown suite {s:?}; known: {}", SUITES.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
    pub bounds: Bounds,
    pub mutated: bool,
}

/// Outcome of one case: number of checked items, first failure.
type Case = (u64, Option<String>);

fn fail(checked: u64, msg: String) -> Result<Case> {
    Ok((checked, Some(msg)))
}

/// Runs cases in parallel and keeps the first failure in case order.
fn run_cases<T: Sync>(cases: &[T], f: impl Fn(usize, &T) -> Result<Case> + Sync) -> Result<Case> {
    let results: Vec<Result<Case>> = cases.par_iter().enumerate().map(|(k, c)| f(k, c)).collect();
    let mut total = 0;
    for r in results {
        let (n, bad) = r?;
        total += n;
        if bad.is_some() {
            return Ok((total, bad));
        }
    }
    Ok((total, None))
}

/// The mutated case: `ℓ = 1` and the smallest `m ≥ 2` in range, since
/// everything is trivially congruent when `m = 1`.
fn tampered(cfg: &SuiteConfig, ell: usize, m: usize) -> bool {
    cfg.mutate && ell == 1 && m == cfg.bounds.m.min(2)
}

fn grid(lmax: usize, mmax: usize) -> Vec<(usize, usize)> {
    (1..=lmax).flat_map(|l| (1..=mmax).map(move |m| (l, m))).collect()
}

fn all_words(ell: usize, m: usize, budget: usize) -> Result<Vec<Word>> {
    enumerate_words(ell, m, &WordFilter::default(), budget)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (checked, counterexample) = match name {
        "maj-n" => maj_n(cfg)?,
        "psi-morphism" => psi_morphism(cfg)?,
        "counting" => counting(cfg)?,
        "components" => components(cfg)?,
        "dominance" => dominance(cfg)?,
        "decomposition" => decomposition(cfg)?,
        "appendix" => appendix(cfg)?,
        "no-extremal" => no_extremal(cfg)?,
        _ => return Err(unknown_suite(name)),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        passed: counterexample.is_none(),
        checked,
        counterexample,
        bounds: cfg.bounds,
        mutated: cfg.mutate,
    })
}

/// `Maj ≡ −N (mod m)`, and `e_i`, `f_i` move `N` by `∓δ_{i,0}` modulo `m`.
fn maj_n(cfg: &SuiteConfig) -> Result<Case> {
    run_cases(&grid(cfg.bounds.l, cfg.bounds.m), |_, &(ell, m)| {
        let mi = m as i64;
        let mut checked = 0;
        for (j, w) in all_words(ell, m, cfg.budget)?.iter().enumerate() {
            let st = w.stats();
            let n = st.n + i64::from(tampered(cfg, ell, m) && j == 0);
            checked += 1;
            if (st.maj + n).rem_euclid(mi) != 0 {
                return fail(checked, format!("{w:?}: Maj={} N={n} (m={m})", st.maj));
            }
            for i in 0..=ell {
                let d = i64::from(i == 0);
                if let Some(v) = w.e(i) {
                    if (v.stats().n - n + d).rem_euclid(mi) != 0 {
                        return fail(checked, format!("N(e_{i} {w:?}) = {} vs N = {n}", v.stats().n));
                    }
                }
                if let Some(v) = w.f(i) {
                    if (v.stats().n - n - d).rem_euclid(mi) != 0 {
                        return fail(checked, format!("N(f_{i} {w:?}) = {} vs N = {n}", v.stats().n));
                    }
                }
            }
        }
        Ok((checked, None))
    })
}

/// `ψ` commutes with `ε`, `wt`, `e_i`, `f_i`, is injective, `κ_m = z`,
/// and sends `b_0^{⊗m} ⊗ z^n` to the straight path.
fn psi_morphism(cfg: &SuiteConfig) -> Result<Case> {
    let window = cfg.bounds.window();
    run_cases(&grid(cfg.bounds.l, cfg.bounds.m), |_, &(ell, m)| {
        let mut checked = 0;
        let mut images = BTreeSet::new();
        let elems = enumerate_all(ell, m, window, cfg.budget)?;
        for (j, x) in elems.iter().enumerate() {
            checked += 1;
            let kappa = match kappa_seq(x) {
                Ok(k) => k,
                Err(e) => return fail(checked, e.to_string()),
            };
            debug_assert_eq!(kappa.len(), m + 1);
            let p = psi_embed(x)?;
            let shown = if tampered(cfg, ell, m) && j == 0 {
                psi_embed(&AffineElement::new(x.word.clone(), x.z + 1))?
            } else {
                p.clone()
            };
            if shown.wt() != x.wt() {
                return fail(checked, format!("wt ψ{x:?} = {} vs {}", shown.wt(), x.wt()));
            }
            for i in 0..=ell {
                if path_eps(&shown, i) != x.word.eps(i) {
                    return fail(checked, format!("ε_{i} ψ{x:?} = {} vs {}", path_eps(&shown, i), x.word.eps(i)));
                }
                let lhs = x.e(i).map(|y| psi_embed(&y)).transpose()?;
                if lhs != path_e(&shown, i) {
                    return fail(checked, format!("ψ e_{i} ≠ e_{i} ψ at {x:?}"));
                }
                let lhs = x.f(i).map(|y| psi_embed(&y)).transpose()?;
                if lhs != path_f(&shown, i) {
                    return fail(checked, format!("ψ f_{i} ≠ f_{i} ψ at {x:?}"));
                }
            }
            if !images.insert(p) {
                return fail(checked, format!("ψ is not injective at {x:?}"));
            }
        }
        for z in window.iter() {
            let x = AffineElement::new(Word::constant(ell, 0, m), z);
            let mut mu = x.word.wt();
            mu.dlt = crate::rat::int(z);
            checked += 1;
            if psi_embed(&x)? != straight_path(&mu)? {
                return fail(checked, format!("ψ{x:?} is not straight"));
            }
        }
        Ok((checked, None))
    })
}

/// Brute force, reduced q-multinomial and closed form agree on every
/// tuple and residue.
fn counting(cfg: &SuiteConfig) -> Result<Case> {
    run_cases(&grid(cfg.bounds.l, cfg.bounds.m), |_, &(ell, m)| {
        let mi = m as i64;
        let mut tally = std::collections::BTreeMap::<(Vec<u32>, i64), u64>::new();
        for w in all_words(ell, m, cfg.budget)? {
            *tally.entry((w.tuple(), w.stats().n.rem_euclid(mi))).or_default() += 1;
        }
        let mut checked = 0;
        for (j, t) in compositions(ell, m).iter().enumerate() {
            let poly = count_by_residue(ell, m, t)?;
            for n in 0..mi {
                checked += 1;
                let mut brute = BigInt::from(*tally.get(&(t.clone(), (-n).rem_euclid(mi))).unwrap_or(&0));
                if tampered(cfg, ell, m) && j == 0 && n == 0 {
                    brute += 1;
                }
                let closed = c_func(ell, m, t, n)?;
                let by_s = closed_count(ell, m, t, (-n).rem_euclid(mi))?;
                if brute != poly[n as usize] || brute != closed || closed != by_s {
                    return fail(
                        checked,
                        format!("{t:?}, n={n}: brute {brute}, q-multinomial {}, closed {closed}", poly[n as usize]),
                    );
                }
            }
        }
        Ok((checked, None))
    })
}

/// Residue classes are stable, generated by `b_0^{⊗m} ⊗ z^n` inside a
/// padded window, ladders move `z` by `±rm`, and the character table
/// matches enumeration.
fn components(cfg: &SuiteConfig) -> Result<Case> {
    run_cases(&grid(cfg.bounds.l, cfg.bounds.m), |_, &(ell, m)| {
        let mi = m as i64;
        let inner = Window::new(0, 4 * mi - 1);
        let outer = inner.pad(2 * mi);
        let c = AffineCrystal { ell, m };
        let mut checked = 0;
        for x in enumerate_all(ell, m, inner, cfg.budget)? {
            for i in 0..=ell {
                for y in [x.e(i), x.f(i)].into_iter().flatten() {
                    checked += 1;
                    if y.component() != x.component() {
                        return fail(checked, format!("{x:?} and {y:?} lie in different components"));
                    }
                }
            }
        }
        let region = Region::new(format!("z in [{}, {}]", outer.lo, outer.hi), move |x: &AffineElement| {
            outer.contains(x.z)
        });
        for n in 0..m as u64 {
            let seed = AffineElement::new(Word::constant(ell, 0, m), n as i64);
            let g = orbit_bfs(&c, &[seed], &GeneratorSet::all(ell), None, Some(&region), cfg.budget)?;
            let reached: BTreeSet<&AffineElement> = g.interior().filter(|x| inner.contains(x.z)).collect();
            let mut expected: BTreeSet<AffineElement> =
                enumerate_component(ell, m, n, inner, cfg.budget)?.into_iter().collect();
            if tampered(cfg, ell, m) && n == 0 {
                expected.insert(AffineElement::new(Word::constant(ell, 0, m), 1));
            }
            checked += expected.len() as u64;
            let reached: BTreeSet<AffineElement> = reached.into_iter().cloned().collect();
            if reached != expected {
                let missing = expected.difference(&reached).next().cloned();
                let extra = reached.difference(&expected).next().cloned();
                return fail(checked, format!("component {n}: missing {missing:?}, unexpected {extra:?}"));
            }
            let ch = component_character(ell, m, n, inner, CountMethod::QPoly, cfg.budget)?;
            let mut tally = std::collections::BTreeMap::<(Vec<u32>, i64), u64>::new();
            for x in &expected {
                *tally.entry((x.word.tuple(), x.z)).or_default() += 1;
            }
            for e in &ch.entries {
                checked += 1;
                let got = tally.get(&(e.tuple.clone(), e.z)).copied().unwrap_or(0);
                if got != e.count {
                    return fail(checked, format!("character at {:?}, z={}: {} vs enumeration {got}", e.tuple, e.z, e.count));
                }
            }
        }
        for r in 1..=2u32 {
            let x = AffineElement::new(Word::constant(ell, 0, m), 0);
            let step = r as i64 * mi;
            checked += 2;
            let up = apply_monomial(&c, &x, &ladder_up(ell, m).pow(r));
            let down = apply_monomial(&c, &x, &ladder_down(ell, m).pow(r));
            if up != Some(AffineElement::new(x.word.clone(), step))
                || down != Some(AffineElement::new(x.word.clone(), -step))
            {
                return fail(checked, format!("ladder of length {r} misbehaves: {up:?}, {down:?}"));
            }
        }
        Ok((checked, None))
    })
}

/// The four descriptions of λ-dominance agree, `B_ℓ(m)^{Λ_i} = {b(i, m)}`,
/// and raising reaches the dominant set with the predicted exponents.
fn dominance(cfg: &SuiteConfig) -> Result<Case> {
    run_cases(&grid(cfg.bounds.l, cfg.bounds.m), |_, &(ell, m)| {
        let mut checked = 0;
        for i in 0..=ell {
            checked += 1;
            let got = dominant_subset(ell, m, &Weight::fundamental(ell, i))?;
            let mut want = vec![b_im(ell, i, m)];
            if tampered(cfg, ell, m) && i == 0 {
                want.push(Word::constant(ell, 0, m));
            }
            if got != want {
                return fail(checked, format!("dominant set for Λ_{i}: {got:?}, expected {want:?}"));
            }
        }
        let words = all_words(ell, m, cfg.budget)?;
        for lambda in small_lambdas(ell, 2) {
            for w in &words {
                if ell <= 2 && m <= 3 {
                    checked += 1;
                    let views = dominance_views(&lambda, &AffineElement::new(w.clone(), 0))?;
                    if views.iter().any(|&v| v != views[0]) {
                        return fail(checked, format!("λ={lambda}, {w:?}: views {views:?}"));
                    }
                }
                checked += 1;
                let r = raise_to_dominant(w, &lambda)?;
                let ok = (0..=ell).all(|j| r.result.eps(j) <= lambda.pair_int(j))
                    && r.steps.iter().all(|s| s.exponent > 0 && s.exponent as i64 == s.before.eps(s.index) - s.bound)
                    && apply_monomial(&crate::letters::WordCrystal { ell, m }, w, &r.monomial).as_ref() == Some(&r.result);
                if !ok {
                    return fail(checked, format!("raising {w:?} to λ={lambda} gave {:?} via {}", r.result, r.monomial));
                }
            }
        }
        Ok((checked, None))
    })
}

/// Dominant weights `Σ a_i Λ_i` with `0 ≤ a_i ≤ max`, excluding 0.
pub fn small_lambdas(ell: usize, max: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut a = vec![0i64; ell + 1];
    loop {
        if a.iter().any(|&x| x != 0) {
            out.push(Weight::from_ints(&a, 0));
        }
        let mut k = 0;
        loop {
            if k > ell {
                return out;
            }
            if a[k] < max {
                a[k] += 1;
                break;
            }
            a[k] = 0;
            k += 1;
        }
    }
}

/// The λ-dominant prediction against truncated scans for
/// `λ ∈ {Λ_0, Λ_1, Λ_0 + Λ_1}`.
fn decomposition(cfg: &SuiteConfig) -> Result<Case> {
    let mut cases = Vec::new();
    for (ell, m) in grid(cfg.bounds.l, cfg.bounds.m) {
        for lambda in [
            Weight::fundamental(ell, 0),
            Weight::fundamental(ell, 1),
            &Weight::fundamental(ell, 0) + &Weight::fundamental(ell, 1),
        ] {
            cases.push((ell, m, lambda));
        }
    }
    let window = cfg.bounds.window();
    let depth = cfg.bounds.depth;
    run_cases(&cases, |k, (ell, m, lambda)| {
        let mut report = decompose(lambda, *ell, *m, window)?;
        if cfg.mutate && k == 0 {
            report.summands.pop();
        }
        let check = verify_decomposition(&report, depth, depth.min(3), cfg.budget)?;
        let checked = 1 + check.isomorphic.len() as u64 + check.raised as u64;
        if !check.passed() {
            let mut why = check.failures.clone();
            why.extend(check.raise_failures.iter().take(3).cloned());
            if check.isomorphic.iter().any(|b| !b) {
                why.push("a summand orbit is not isomorphic to its model".into());
            }
            return fail(checked, format!("λ={lambda}, ℓ={ell}, m={m}: {}", why.join("; ")));
        }
        Ok((checked, None))
    })
}

/// Polynomial identities behind the closed counting formula.
fn appendix(cfg: &SuiteConfig) -> Result<Case> {
    let mmax = cfg.bounds.m;
    let mut checked = 0;
    // Σ_n C(k; n) q^n = Σ_{d | m} C̃(k; d) [m/d]_{q^d}
    for m in 1..=mmax {
        for ell in 1..=3usize {
            if compositions(ell, m).len() > 2000 {
                continue;
            }
            for t in compositions(ell, m) {
                checked += 1;
                let lhs = RatPoly::new(
                    (0..m as i64)
                        .map(|n| c_func(ell, m, &t, n).map(|c| rat_of(&c)))
                        .collect::<Result<Vec<_>>>()?,
                );
                let mut rhs = c_tilde_expansion(ell, m, &t)?;
                if cfg.mutate && checked == 1 {
                    rhs = &rhs + &RatPoly::one();
                }
                if lhs != rhs {
                    return Ok((checked, Some(format!("expansion identity fails for {t:?}"))));
                }
            }
        }
    }
    // projections onto Φ_d for m ≤ 12
    for m in 1..=12usize {
        for ell in 1..=2usize {
            for t in compositions(ell, m) {
                for d in divisors(m as u64) {
                    checked += 1;
                    let lhs = lemma_projection_sum(ell, m, &t, d as usize)?;
                    let want = if t.iter().all(|&k| k as u64 % d == 0) {
                        let scaled: Vec<u64> = t.iter().map(|&k| k as u64 / d).collect();
                        multinomial(m as u64 / d, &scaled)
                    } else {
                        BigInt::zero()
                    };
                    if lhs != RatPoly::constant(rat_of(&want)) {
                        return Ok((checked, Some(format!("projection identity fails for {t:?}, d={d}"))));
                    }
                }
            }
        }
    }
    // ψ_d of q-multinomials with md ≤ 12, d ≤ 4
    for d in 1..=4usize {
        for md in (d..=12).step_by(d) {
            for parts in 2..=3usize {
                for t in compositions(parts - 1, md) {
                    checked += 1;
                    let proj = project_cyclotomic(&q_multinomial(md, &t), d, rat_of);
                    let divisible = t.iter().all(|&k| k as usize % d == 0);
                    let want = if divisible {
                        let scaled: Vec<u64> = t.iter().map(|&k| k as u64 / d as u64).collect();
                        RatPoly::constant(rat_of(&multinomial((md / d) as u64, &scaled)))
                    } else {
                        RatPoly::zero()
                    };
                    if proj != want {
                        return Ok((checked, Some(format!("ψ_{d} of q-multinomial {md}; {t:?} is {proj}"))));
                    }
                }
            }
        }
    }
    // Π_{d | m} Φ_d = q^m − 1
    for m in 1..=24usize {
        checked += 1;
        let prod = divisors(m as u64)
            .into_iter()
            .fold(QPoly::one(), |acc, d| &acc * &cyclotomic(d as usize));
        let want = &QPoly::monomial(BigInt::one(), m) - &QPoly::one();
        if prod != want {
            return Ok((checked, Some(format!("cyclotomic product for m={m} is {prod}"))));
        }
    }
    Ok((checked, None))
}

/// No element of `B_ℓ(m)` has all `ε_i = 0`, none has all `φ_i = 0`.
fn no_extremal(cfg: &SuiteConfig) -> Result<Case> {
    run_cases(&grid(cfg.bounds.l, cfg.bounds.m), |_, &(ell, m)| {
        let mut checked = 0;
        for (j, w) in all_words(ell, m, cfg.budget)?.iter().enumerate() {
            checked += 1;
            let tamper = tampered(cfg, ell, m) && j == 0;
            if tamper || (0..=ell).all(|i| w.eps(i) == 0) {
                return fail(checked, format!("{w:?} is a highest weight element"));
            }
            if (0..=ell).all(|i| w.phi(i) == 0) {
                return fail(checked, format!("{w:?} is a lowest weight element"));
            }
        }
        Ok((checked, None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(name: &str) -> SuiteConfig {
        let mut cfg = SuiteConfig::defaults(name).unwrap();
        cfg.bounds.l = cfg.bounds.l.min(2);
        cfg.bounds.m = cfg.bounds.m.min(3);
        cfg.bounds.depth = cfg.bounds.depth.min(2);
        cfg
    }

    #[test]
    fn suites_pass_and_detect_mutations() {
        for name in SUITES {
            let mut cfg = small(name);
            let r = run_suite(name, &cfg).unwrap();
            assert!(r.passed, "{name}: {:?}", r.counterexample);
            assert!(r.checked > 0);
            cfg.mutate = true;
            let r = run_suite(name, &cfg).unwrap();
            assert!(!r.passed, "{name} did not notice the mutation");
            assert!(r.counterexample.is_some());
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(SuiteConfig::defaults("nope").is_err());
        let cfg = SuiteConfig::defaults("maj-n").unwrap();
        assert!(run_suite("nope", &cfg).is_err());
    }

    #[test]
    fn lambda_grid() {
        assert_eq!(small_lambdas(1, 1).len(), 3);
        assert_eq!(small_lambdas(2, 2).len(), 26);
    }
}
