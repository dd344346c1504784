//! Highest weight path crystals `B(λ)` and the decomposition of
//! `B(λ) ⊗ B̂_ℓ(m)` into them.
//!
//! Tensor elements are pairs `(b, x)` with `b` a path in `B(λ)` and `x` an
//! element of `B̂_ℓ(m)` standing for its image `ψ(x)`. Because `ψ` is a
//! strict morphism, the tensor rule on such pairs agrees with the root
//! operators on the concatenated path; [`dominance_views`] compares the two
//! where path geometry matters.
//!
//! The crystals involved are infinite, so every check is scoped by a BFS
//! depth on `B(λ)` and a `z` window on `B̂_ℓ(m)`. An element of weight
//! `λ − β` is reached from `b_λ` after exactly `ht(β)` applications of
//! `f` operators, so a depth-`D` orbit contains every element of height at
//! most `D`.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

use crate::affine::{AffineCrystal, AffineElement, Window};
use crate::crystal::{
    apply_monomial, orbit_bfs, graphs_isomorphic, Crystal, CrystalGraph, Gen, GeneratorSet, Monomial,
    TensorPair,
};
use crate::letters::{b_im, dominant_subset, raise_to_dominant, Word};
use crate::paths::{concat, is_lambda_dominant, psi_embed, straight_path, PLPath, PathCrystal};
use crate::weight::Weight;
use crate::{Error, Result};

pub type TensorCrystal = TensorPair<PathCrystal, AffineCrystal>;
pub type TensorElem = (PLPath, AffineElement);

pub fn tensor_crystal(ell: usize, m: usize) -> TensorCrystal {
    TensorPair {
        left: PathCrystal { ell },
        right: AffineCrystal { ell, m },
    }
}

/// Rejects λ that is not a dominant lattice weight of rank ℓ, or lies in `Zδ`.
pub fn check_lambda(lambda: &Weight, ell: usize) -> Result<()> {
    if lambda.ell() != ell {
        return Err(Error::InvalidInput(format!("λ has rank {}, expected ℓ = {ell}", lambda.ell())));
    }
    if !lambda.is_lattice() || !lambda.is_dominant() {
        return Err(Error::Precondition(format!("λ = {lambda} is not a dominant lattice weight")));
    }
    if lambda.is_delta_multiple() {
        return Err(Error::Precondition(format!("λ = {lambda} is a multiple of δ")));
    }
    Ok(())
}

/// The `F`-orbit of the straight path to `λ`, to the given depth.
pub fn highest_path_crystal(lambda: &Weight, depth: usize, budget: usize) -> Result<CrystalGraph<PLPath>> {
    let ell = lambda.ell();
    check_lambda(lambda, ell)?;
    let c = PathCrystal { ell };
    orbit_bfs(&c, &[straight_path(lambda)?], &GeneratorSet::f_only(ell), Some(depth), None, budget)
}

/// `{(w, z) : w ∈ B_ℓ(m)^λ, z ∈ window}`, sorted by `(z, w)`. Each
/// `ψ`-image is checked to be λ-dominant.
pub fn lambda_dominant_affine(lambda: &Weight, ell: usize, m: usize, window: Window) -> Result<Vec<AffineElement>> {
    check_lambda(lambda, ell)?;
    let words = dominant_subset(ell, m, lambda)?;
    let mut out = Vec::new();
    for z in window.iter() {
        for w in &words {
            let x = AffineElement::new(w.clone(), z);
            if !is_lambda_dominant(&psi_embed(&x)?, lambda) {
                return Err(Error::CrossCheck(format!("ψ{x:?} is not λ-dominant")));
            }
            out.push(x);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub word: Word,
    pub z: i64,
    /// `λ + wt(word) + zδ`
    pub highest: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub lambda: Weight,
    pub l: usize,
    pub m: usize,
    pub window: [i64; 2],
    pub summands: Vec<Summand>,
    /// Set once the truncated checks of [`verify_decomposition`] have passed.
    pub verified: bool,
    pub verify_depth: Option<usize>,
}

impl DecompositionReport {
    pub fn highest_weights(&self) -> Vec<Weight> {
        self.summands.iter().map(|s| s.highest.clone()).collect()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "λ = {}  ℓ={} m={} z∈[{},{}]  verified={}\n",
            self.lambda, self.l, self.m, self.window[0], self.window[1], self.verified
        );
        for s in &self.summands {
            out.push_str(&format!("B({})  from {} ⊗ z^{}\n", s.highest, s.word, s.z));
        }
        out
    }
}

/// One summand `B(λ + wt x)` per λ-dominant `x` with `z` in the window.
pub fn decompose(lambda: &Weight, ell: usize, m: usize, window: Window) -> Result<DecompositionReport> {
    let summands: Vec<Summand> = lambda_dominant_affine(lambda, ell, m, window)?
        .into_iter()
        .map(|x| Summand {
            highest: lambda + &x.wt(),
            word: x.word,
            z: x.z,
        })
        .collect();
    if !window.is_empty() && summands.is_empty() {
        return Err(Error::CrossCheck(format!("no λ-dominant elements for λ = {lambda}")));
    }
    Ok(DecompositionReport {
        lambda: lambda.clone(),
        l: ell,
        m,
        window: [window.lo, window.hi],
        summands,
        verified: false,
        verify_depth: None,
    })
}

/// `B(Λ_i) ⊗ B̂_ℓ(m) = ⊔_k B(Λ_{i+m} + kδ)`, cross-checked against
/// [`decompose`].
pub fn fundamental_decompose(i: usize, ell: usize, m: usize, window: Window) -> Result<DecompositionReport> {
    if i > ell {
        return Err(Error::InvalidInput(format!("index {i} exceeds ℓ = {ell}")));
    }
    let lambda = Weight::fundamental(ell, i);
    let word = b_im(ell, i, m);
    let target = Weight::fundamental(ell, (i + m) % (ell + 1));
    let summands: Vec<Summand> = window
        .iter()
        .map(|z| {
            let mut highest = target.clone();
            highest.dlt += crate::rat::int(z);
            Summand { word: word.clone(), z, highest }
        })
        .collect();
    let general = decompose(&lambda, ell, m, window)?;
    if general.summands != summands {
        return Err(Error::CrossCheck(format!(
            "fundamental decomposition disagrees with the general one for Λ_{i}"
        )));
    }
    Ok(general)
}

/// Pairs `(b, x)` with `b` in the depth-limited `B(λ)` orbit and `z(x)` in
/// the window whose tensor `ε_i` all vanish.
pub fn tensor_highest_elements(
    lambda: &Weight,
    ell: usize,
    m: usize,
    window: Window,
    depth: usize,
    budget: usize,
) -> Result<Vec<TensorElem>> {
    let graph = highest_path_crystal(lambda, depth, budget)?;
    let all = crate::affine::enumerate_all(ell, m, window, budget)?;
    let tc = tensor_crystal(ell, m);
    let found: Vec<TensorElem> = graph
        .nodes
        .par_iter()
        .flat_map_iter(|b| {
            let tc = &tc;
            all.iter().filter_map(move |x| {
                let pair = (b.clone(), x.clone());
                tc.indices().all(|i| tc.eps(i, &pair) == 0).then_some(pair)
            })
        })
        .collect();
    Ok(found)
}

/// Outcome of raising a tensor pair to a highest element.
#[derive(Clone, Debug)]
pub struct TensorRaise {
    /// Written left to right, last-applied first.
    pub monomial: Monomial,
    pub result: TensorElem,
}

/// Raises `(b, x)` to a highest element of `B(λ) ⊗ B̂_ℓ(m)`.
///
/// First `b` is moved to `b_λ`: with `j` the first index having
/// `ε_j(b) > 0`, the tensor `e_j` is applied `max(0, ε_j(x) − φ_j(b)) + 1`
/// times, the last of which acts on `b`. Then with `b = b_λ` the word of
/// `x` is raised to `B_ℓ(m)^λ`; each `e_i^{m_r}` acts on the right factor
/// because `φ_i(b_λ) = α_i^∨(λ) < ε_i(x)` until the exponent is used up.
pub fn raise_tensor(pair: &TensorElem, lambda: &Weight, max_steps: usize) -> Result<TensorRaise> {
    let ell = lambda.ell();
    check_lambda(lambda, ell)?;
    let b_lambda = straight_path(lambda)?;
    let tc = tensor_crystal(ell, pair.1.m());
    let mut cur = pair.clone();
    let mut monomial = Monomial::identity();
    let mut steps = 0;
    while cur.0 != b_lambda {
        let j = tc
            .indices()
            .find(|&j| tc.left.eps(j, &cur.0) > 0)
            .ok_or_else(|| Error::CrossCheck(format!("{:?} is highest but not b_λ", cur.0)))?;
        let k = (tc.right.eps(j, &cur.1) - tc.left.phi(j, &cur.0)).max(0) + 1;
        for _ in 0..k {
            cur = tc
                .e(j, &cur)
                .ok_or_else(|| Error::CrossCheck(format!("e_{j} vanished while raising")))?;
        }
        monomial.then(Gen::e(j), k as u32);
        steps += 1;
        if steps > max_steps {
            return Err(Error::BudgetExceeded { budget: max_steps });
        }
    }
    let raised = raise_to_dominant(&cur.1.word, lambda)?;
    let mut x = cur.1.clone();
    for &(g, n) in raised.monomial.terms().iter().rev() {
        for _ in 0..n {
            let before = (cur.0.clone(), x.clone());
            let after = tc
                .e(g.index, &before)
                .ok_or_else(|| Error::CrossCheck(format!("{g} vanished while raising")))?;
            if after.0 != b_lambda {
                return Err(Error::CrossCheck(format!("{g} acted on b_λ during the dominant phase")));
            }
            x = after.1;
        }
    }
    let monomial = monomial.followed_by(&raised.monomial);
    Ok(TensorRaise {
        monomial,
        result: (b_lambda, x),
    })
}

/// The four descriptions of "λ-dominant" for `ψ(x)`, computed separately:
/// tensor `ε` of `b_λ ⊗ x`, `ε_i(x) ≤ α_i^∨(λ)`, breakpoint dominance of
/// `ψ(x)`, and dominance of every breakpoint of the concatenation `b_λ * ψ(x)`.
pub fn dominance_views(lambda: &Weight, x: &AffineElement) -> Result<[bool; 4]> {
    let ell = lambda.ell();
    let b_lambda = straight_path(lambda)?;
    let tc = tensor_crystal(ell, x.m());
    let pair = (b_lambda.clone(), x.clone());
    let tensor = tc.indices().all(|i| tc.eps(i, &pair) == 0);
    let bounded = (0..=ell).all(|i| x.word.eps(i) <= lambda.pair_int(i));
    let p = psi_embed(x)?;
    let breakpoints = is_lambda_dominant(&p, lambda);
    let joined = concat(&b_lambda, &p);
    let zero = Weight::zero(ell);
    let concat_dominant = is_lambda_dominant(&joined, &zero);
    Ok([tensor, bounded, breakpoints, concat_dominant])
}

/// Result of the truncated verification of a decomposition.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DecompositionCheck {
    pub highest_match: bool,
    pub isomorphic: Vec<bool>,
    pub raised: usize,
    pub raise_failures: Vec<String>,
    pub failures: Vec<String>,
}

impl DecompositionCheck {
    pub fn passed(&self) -> bool {
        self.highest_match && self.isomorphic.iter().all(|&b| b) && self.raise_failures.is_empty() && self.failures.is_empty()
    }
}

/// Truncated checks of a decomposition report at depth `depth`:
///
/// * the highest pairs found by scanning the depth-limited `B(λ)` against
///   the window equal the predicted λ-dominant set;
/// * the depth-`depth` `F`-orbit of every `b_λ ⊗ x` is isomorphic to the
///   one of the straight path to `λ + wt x`;
/// * every element within `raise_depth` steps below a highest pair raises
///   back to it.
pub fn verify_decomposition(
    report: &DecompositionReport,
    depth: usize,
    raise_depth: usize,
    budget: usize,
) -> Result<DecompositionCheck> {
    let (ell, m) = (report.l, report.m);
    let lambda = &report.lambda;
    let window = Window::new(report.window[0], report.window[1]);
    let mut check = DecompositionCheck::default();

    let predicted: BTreeSet<TensorElem> = report
        .summands
        .iter()
        .map(|s| Ok((straight_path(lambda)?, AffineElement::new(s.word.clone(), s.z))))
        .collect::<Result<_>>()?;
    let found: BTreeSet<TensorElem> = tensor_highest_elements(lambda, ell, m, window, depth, budget)?
        .into_iter()
        .collect();
    check.highest_match = predicted == found;
    if !check.highest_match {
        check.failures.push(format!(
            "highest pairs: predicted {} found {}",
            predicted.len(),
            found.len()
        ));
    }

    let tc = tensor_crystal(ell, m);
    let pc = PathCrystal { ell };
    let gens = GeneratorSet::f_only(ell);
    let per_summand: Vec<Result<(bool, usize, Vec<String>)>> = predicted
        .par_iter()
        .map(|root| {
            let g1 = orbit_bfs(&tc, std::slice::from_ref(root), &gens, Some(depth), None, budget)?;
            let top = straight_path(&(lambda + &root.1.wt()))?;
            let g2 = orbit_bfs(&pc, std::slice::from_ref(&top), &gens, Some(depth), None, budget)?;
            let iso = graphs_isomorphic(&g1, &g2, root, &top)?;
            let mut raised = 0;
            let mut fails = Vec::new();
            for (k, x) in g1.nodes.iter().enumerate() {
                if g1.depth[k] > raise_depth {
                    continue;
                }
                raised += 1;
                match raise_tensor(x, lambda, budget) {
                    Ok(r) if r.result == *root => {
                        if apply_monomial(&tc, x, &r.monomial).as_ref() != Some(root) {
                            fails.push(format!("monomial {} does not replay from {x:?}", r.monomial));
                        }
                    }
                    Ok(r) => fails.push(format!("{x:?} raised to {:?}, expected {root:?}", r.result)),
                    Err(e) => fails.push(format!("{x:?}: {e}")),
                }
            }
            Ok((iso, raised, fails))
        })
        .collect();
    for r in per_summand {
        let (iso, raised, fails) = r?;
        check.isomorphic.push(iso);
        check.raised += raised;
        check.raise_failures.extend(fails);
    }
    Ok(check)
}

/// Runs [`verify_decomposition`] and records the outcome on the report.
pub fn verify_report(report: &mut DecompositionReport, depth: usize, budget: usize) -> Result<DecompositionCheck> {
    let check = verify_decomposition(report, depth, depth.min(3), budget)?;
    report.verified = check.passed();
    report.verify_depth = Some(depth);
    Ok(check)
}
