//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Each criterion compares the library against the
//! independent oracles in `common` and, where one exists, runs the matching
//! named suite at its default bounds.

mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use affcrystal::affine::{enumerate_component, ladder_down, ladder_up, AffineCrystal, AffineElement, Window};
use affcrystal::charfun::{closed_count, component_character, count_by_residue, c_func, cyclotomic, divisors, CountMethod, QPoly};
use affcrystal::crystal::{apply_monomial, DEFAULT_NODE_BUDGET};
use affcrystal::decomp::{decompose, fundamental_decompose, verify_decomposition};
use affcrystal::letters::{b_im, dominant_subset, enumerate_words, raise_to_dominant, Word, WordFilter};
use affcrystal::paths::{kappa_seq, path_eps, psi_embed, straight_path};
use affcrystal::verify::{run_suite, SuiteConfig};
use affcrystal::weight::Weight;

use common as oracle;

type Outcome = Result<u64, String>;

fn suite(name: &str) -> Outcome {
    let r = run_suite(name, &SuiteConfig::defaults(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(r.checked)
    } else {
        Err(format!("suite {name}: {}", r.counterexample.unwrap_or_default()))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn word(ell: usize, w: &[u8]) -> Word {
    Word::new(ell, w.to_vec()).unwrap()
}

fn lib_words(ell: usize, m: usize) -> Vec<Word> {
    enumerate_words(ell, m, &WordFilter::default(), DEFAULT_NODE_BUDGET).unwrap()
}

/// Brute force, reduced q-multinomial and closed form agree for ℓ ≤ 3, m ≤ 6.
fn counting() -> Outcome {
    let mut checked = suite("counting")?;
    for ell in 1..=3 {
        for m in 1..=6usize {
            let mi = m as i64;
            let mut brute = BTreeMap::<(Vec<u32>, i64), u64>::new();
            for w in oracle::all_words(ell, m) {
                *brute.entry((oracle::tuple(ell, &w), oracle::n_stat(&w).rem_euclid(mi))).or_default() += 1;
            }
            for t in oracle::compositions(ell, m) {
                let qm = oracle::reduced_q_multinomial(m, &t);
                let lib = count_by_residue(ell, m, &t).map_err(|e| e.to_string())?;
                for s in 0..mi {
                    checked += 1;
                    let n = (-s).rem_euclid(mi) as usize;
                    let b = BigInt::from(*brute.get(&(t.clone(), s)).unwrap_or(&0));
                    let closed = oracle::closed_form(m, &t, s);
                    let values = [
                        &qm[n],
                        &closed,
                        &lib[n],
                        &c_func(ell, m, &t, n as i64).unwrap(),
                        &closed_count(ell, m, &t, s).unwrap(),
                    ];
                    ensure(values.iter().all(|v| **v == b), || {
                        format!("ℓ={ell} m={m} {t:?} N≡{s}: brute {b}, oracle q-mult/closed, lib {values:?}")
                    })?;
                }
            }
        }
    }
    Ok(checked)
}

/// `Maj ≡ −N` and `N` moves by `∓δ_{i,0}` under `e_i`/`f_i`, ℓ ≤ 3, m ≤ 5.
fn maj_n() -> Outcome {
    let mut checked = suite("maj-n")?;
    for ell in 1..=3 {
        for m in 1..=5usize {
            let mi = m as i64;
            for (w, lw) in oracle::all_words(ell, m).iter().zip(lib_words(ell, m)) {
                checked += 1;
                ensure(lw.letters() == &w[..], || format!("enumeration order differs at {w:?}"))?;
                let st = lw.stats();
                let descents: Vec<usize> = st.desc.iter().map(|&d| d as usize).collect();
                ensure(st.n == oracle::n_stat(w) && st.maj == oracle::maj(w) && descents == oracle::descents(w), || {
                    format!("statistics of {w:?}: lib {st:?}")
                })?;
                ensure((st.maj + st.n).rem_euclid(mi) == 0, || format!("Maj ≢ −N at {w:?}"))?;
                for i in 0..=ell {
                    let d = i64::from(i == 0);
                    let le = lw.e(i);
                    let lf = lw.f(i);
                    ensure(le.as_ref().map(|x| x.letters().to_vec()) == oracle::e(ell, w, i), || {
                        format!("e_{i} {w:?}: lib {le:?}")
                    })?;
                    ensure(lf.as_ref().map(|x| x.letters().to_vec()) == oracle::f(ell, w, i), || {
                        format!("f_{i} {w:?}: lib {lf:?}")
                    })?;
                    if let Some(v) = le {
                        ensure((v.stats().n - st.n + d).rem_euclid(mi) == 0, || format!("N after e_{i} {w:?}"))?;
                    }
                    if let Some(v) = lf {
                        ensure((v.stats().n - st.n - d).rem_euclid(mi) == 0, || format!("N after f_{i} {w:?}"))?;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn oracle_affine_step(ell: usize, (w, z): &(Vec<u8>, i64), i: usize, raise: bool) -> Option<(Vec<u8>, i64)> {
    let d = i64::from(i == 0);
    if raise {
        oracle::e(ell, w, i).map(|v| (v, z + d))
    } else {
        oracle::f(ell, w, i).map(|v| (v, z - d))
    }
}

/// Residue classes are stable and generated from `b_0^{⊗m} ⊗ z^n` in a
/// padded window; ladders move `z` by `±rm`. ℓ ≤ 3, m ≤ 4, width 4m.
fn components() -> Outcome {
    let mut checked = suite("components")?;
    for ell in 1..=3 {
        for m in 1..=4usize {
            let mi = m as i64;
            let (lo, hi) = (0, 4 * mi - 1);
            let (plo, phi) = (lo - 2 * mi, hi + 2 * mi);
            let words = oracle::all_words(ell, m);
            for n in 0..mi {
                let seed = (vec![0u8; m], n);
                let mut seen = BTreeSet::from([seed.clone()]);
                let mut queue = VecDeque::from([seed]);
                while let Some(x) = queue.pop_front() {
                    for i in 0..=ell {
                        for raise in [true, false] {
                            if let Some(y) = oracle_affine_step(ell, &x, i, raise) {
                                checked += 1;
                                ensure(oracle::component(&y.0, y.1) == n, || format!("{x:?} → {y:?} leaves component {n}"))?;
                                if (plo..=phi).contains(&y.1) && seen.insert(y.clone()) {
                                    queue.push_back(y);
                                }
                            }
                        }
                    }
                }
                let reached: BTreeSet<(Vec<u8>, i64)> = seen.into_iter().filter(|(_, z)| (lo..=hi).contains(z)).collect();
                let expected: BTreeSet<(Vec<u8>, i64)> = (lo..=hi)
                    .flat_map(|z| words.iter().map(move |w| (w.clone(), z)))
                    .filter(|(w, z)| oracle::component(w, *z) == n)
                    .collect();
                ensure(reached == expected, || format!("ℓ={ell} m={m}: orbit of component {n} differs from its residue class"))?;
                let lib: BTreeSet<(Vec<u8>, i64)> = enumerate_component(ell, m, n as u64, Window::new(lo, hi), DEFAULT_NODE_BUDGET)
                    .unwrap()
                    .into_iter()
                    .map(|x| (x.word.letters().to_vec(), x.z))
                    .collect();
                ensure(lib == expected, || format!("ℓ={ell} m={m}: enumerate_component({n}) differs"))?;
            }
            let c = AffineCrystal { ell, m };
            for z in [-mi, 0, 3] {
                let x = AffineElement::new(Word::constant(ell, 0, m), z);
                for r in 1..=3u32 {
                    checked += 2;
                    let step = r as i64 * mi;
                    let up = apply_monomial(&c, &x, &ladder_up(ell, m).pow(r));
                    let down = apply_monomial(&c, &x, &ladder_down(ell, m).pow(r));
                    ensure(up == Some(AffineElement::new(x.word.clone(), z + step)), || format!("ladder up {r} from z={z}"))?;
                    ensure(down == Some(AffineElement::new(x.word.clone(), z - step)), || format!("ladder down {r} from z={z}"))?;
                }
            }
        }
    }
    Ok(checked)
}

/// ψ commutes with the crystal structure, is injective, `κ_m = z`, and the
/// constant words go to straight paths. ℓ ≤ 2, m ≤ 4, z ∈ [−2, 2].
fn psi() -> Outcome {
    let mut checked = suite("psi-morphism")?;
    for ell in 1..=2 {
        for m in 1..=4usize {
            for z in -2..=2i64 {
                for w in oracle::all_words(ell, m) {
                    checked += 1;
                    let x = AffineElement::new(word(ell, &w), z);
                    let kappa = oracle::kappa(&w, z);
                    ensure(kappa[m] == oracle::q(z), || format!("oracle κ_m ≠ z at {w:?}, {z}"))?;
                    ensure(kappa_seq(&x).map_err(|e| e.to_string())? == kappa, || format!("κ differs at {w:?}, {z}"))?;
                    let p = psi_embed(&x).map_err(|e| e.to_string())?;
                    let want = oracle::simplify(&oracle::psi_vertices(ell, &w, z));
                    let got: Vec<oracle::Point> = p.breaks().iter().map(|(_, v)| (v.lam.clone(), v.dlt.clone())).collect();
                    ensure(got == want, || format!("vertices of ψ({w:?}, {z}) differ"))?;
                    for i in 0..=ell {
                        let eps = oracle::eps(ell, &w, i);
                        ensure(path_eps(&p, i) == eps && oracle::path_eps_at_vertices(&want, i) == eps, || {
                            format!("ε_{i} of ψ({w:?}, {z})")
                        })?;
                    }
                }
            }
            for z in -2..=2i64 {
                checked += 1;
                let x = AffineElement::new(Word::constant(ell, 0, m), z);
                let mu = x.wt();
                ensure(psi_embed(&x).unwrap() == straight_path(&mu).unwrap(), || format!("ψ(b_0^{m}, {z}) not straight"))?;
            }
        }
    }
    Ok(checked)
}

/// The character of every component agrees with enumeration on the
/// windows of the component check, by all three counting methods.
fn characters() -> Outcome {
    let mut checked = 0;
    for ell in 1..=3 {
        for m in 1..=4usize {
            let mi = m as i64;
            let window = Window::new(0, 4 * mi - 1);
            let words = oracle::all_words(ell, m);
            for n in 0..mi {
                let mut tally = BTreeMap::<(Vec<u32>, i64), u64>::new();
                for z in window.iter() {
                    for w in &words {
                        if oracle::component(w, z) == n {
                            *tally.entry((oracle::tuple(ell, w), z)).or_default() += 1;
                        }
                    }
                }
                for method in [CountMethod::Closed, CountMethod::QPoly, CountMethod::Brute] {
                    let ch = component_character(ell, m, n as u64, window, method, DEFAULT_NODE_BUDGET)
                        .map_err(|e| e.to_string())?;
                    for t in oracle::compositions(ell, m) {
                        for z in window.iter() {
                            checked += 1;
                            let want = tally.get(&(t.clone(), z)).copied().unwrap_or(0);
                            ensure(ch.count(&t, z) == Some(want), || {
                                format!("ℓ={ell} m={m} n={n} {t:?} z={z}: {:?} vs {want} ({method:?})", ch.count(&t, z))
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn random_lambda(rng: &mut StdRng, ell: usize) -> Weight {
    loop {
        let a: Vec<i64> = (0..=ell).map(|_| rng.gen_range(0..=3)).collect();
        if a.iter().any(|&x| x != 0) {
            return Weight::from_ints(&a, rng.gen_range(-2..=2));
        }
    }
}

/// Dominance views agree, `B_ℓ(m)^{Λ_i} = {b(i, m)}`, and raising follows
/// the exponent formula on 200 random cases.
fn dominance() -> Outcome {
    let mut checked = suite("dominance")?;
    for ell in 1..=3 {
        for m in 1..=5usize {
            let words = oracle::all_words(ell, m);
            for i in 0..=ell {
                checked += 1;
                let fits: Vec<Word> = words
                    .iter()
                    .filter(|w| (0..=ell).all(|j| oracle::eps(ell, w, j) <= i64::from(j == i)))
                    .map(|w| word(ell, w))
                    .collect();
                let lib = dominant_subset(ell, m, &Weight::fundamental(ell, i)).unwrap();
                ensure(fits == vec![b_im(ell, i, m)] && lib == fits, || {
                    format!("ℓ={ell} m={m}: Λ_{i}-dominant words {fits:?}, library {lib:?}")
                })?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..200 {
        checked += 1;
        let ell = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=5);
        let w: Vec<u8> = (0..m).map(|_| rng.gen_range(0..=ell as u8)).collect();
        let lambda = random_lambda(&mut rng, ell);
        let bound = |j: usize| lambda.pair_int(j);
        let r = raise_to_dominant(&word(ell, &w), &lambda).map_err(|e| format!("case {case}: {e}"))?;
        let mut u = w.clone();
        for (k, step) in r.steps.iter().enumerate() {
            let i = step.index;
            let want = oracle::eps(ell, &u, i) - bound(i);
            ensure(step.before.letters() == &u[..], || format!("case {case} step {k}: chain broken"))?;
            ensure(want > 0 && step.exponent as i64 == want, || {
                format!("case {case} step {k}: exponent {} on e_{i}, formula gives {want}", step.exponent)
            })?;
            for _ in 0..step.exponent {
                u = oracle::e(ell, &u, i).ok_or_else(|| format!("case {case}: e_{i} absent on {u:?}"))?;
            }
        }
        ensure(r.result.letters() == &u[..], || format!("case {case}: result mismatch"))?;
        ensure((0..=ell).all(|j| oracle::eps(ell, &u, j) <= bound(j)), || {
            format!("case {case}: {u:?} is not {lambda}-dominant")
        })?;
    }
    Ok(checked)
}

/// Highest tensor pairs, truncated isomorphism and raising for
/// λ ∈ {Λ_0, Λ_1, Λ_0 + Λ_1}, ℓ ≤ 2, m ≤ 3, z ∈ [−1, 1], depth 4.
fn decomposition() -> Outcome {
    let mut checked = suite("decomposition")?;
    let window = Window::new(-1, 1);
    for ell in 1..=2 {
        for m in 1..=3usize {
            let fundamentals = [Weight::fundamental(ell, 0), Weight::fundamental(ell, 1)];
            let both = &fundamentals[0] + &fundamentals[1];
            for (k, lambda) in fundamentals.iter().chain([&both]).enumerate() {
                let predicted: BTreeSet<(Vec<u8>, i64)> = oracle::all_words(ell, m)
                    .into_iter()
                    .filter(|w| (0..=ell).all(|i| oracle::eps(ell, w, i) <= lambda.pair_int(i)))
                    .flat_map(|w| window.iter().map(move |z| (w.clone(), z)))
                    .collect();
                let report = decompose(lambda, ell, m, window).map_err(|e| e.to_string())?;
                let got: BTreeSet<(Vec<u8>, i64)> =
                    report.summands.iter().map(|s| (s.word.letters().to_vec(), s.z)).collect();
                ensure(got == predicted, || format!("λ={lambda} ℓ={ell} m={m}: summands {got:?}, predicted {predicted:?}"))?;
                for s in &report.summands {
                    let mut want = lambda + &s.word.wt();
                    want.dlt += affcrystal::rat::int(s.z);
                    ensure(s.highest == want, || format!("highest weight of summand {:?}", s.word))?;
                }
                if k < 2 {
                    // B(Λ_i) ⊗ B̂ ≅ ⊔_z B(Λ_{i+m} + zδ)
                    let fund = fundamental_decompose(k, ell, m, window).map_err(|e| e.to_string())?;
                    let target = Weight::fundamental(ell, (k + m) % (ell + 1));
                    ensure(
                        fund.highest_weights().iter().zip(window.iter()).all(|(h, z)| {
                            let mut t = target.clone();
                            t.dlt = affcrystal::rat::int(z);
                            *h == t
                        }) && fund.summands.len() == window.len(),
                        || format!("fundamental decomposition for Λ_{k}, ℓ={ell}, m={m}"),
                    )?;
                }
                let check = verify_decomposition(&report, 4, 3, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
                checked += 1 + check.isomorphic.len() as u64 + check.raised as u64;
                ensure(check.passed(), || format!("λ={lambda} ℓ={ell} m={m}: {check:?}"))?;
            }
        }
    }
    Ok(checked)
}

/// Appendix identities, plus an independent cyclotomic recursion.
fn appendix() -> Outcome {
    let mut checked = suite("appendix")?;
    let mut cyc: Vec<QPoly> = vec![QPoly::one()];
    for d in 1..=24usize {
        checked += 1;
        // Φ_d = (q^d − 1) / Π_{e | d, e < d} Φ_e
        let num = &QPoly::monomial(BigInt::from(1), d) - &QPoly::one();
        let den = divisors(d as u64)
            .into_iter()
            .filter(|&e| e < d as u64)
            .fold(QPoly::one(), |a, e| &a * &cyc[e as usize]);
        let (quot, rem) = num.div_rem_monic(&den);
        ensure(rem.is_zero() && quot == cyclotomic(d), || format!("Φ_{d} = {}, recursion gives {quot}", cyclotomic(d)))?;
        cyc.push(quot);
    }
    Ok(checked)
}

/// `B_ℓ(m)` has neither highest nor lowest weight elements, ℓ ≤ 3, m ≤ 5.
fn no_extremal() -> Outcome {
    let mut checked = suite("no-extremal")?;
    for ell in 1..=3 {
        for m in 1..=5usize {
            for w in oracle::all_words(ell, m) {
                checked += 1;
                ensure((0..=ell).any(|i| oracle::eps(ell, &w, i) > 0), || format!("{w:?} is highest"))?;
                ensure((0..=ell).any(|i| oracle::phi(ell, &w, i) > 0), || format!("{w:?} is lowest"))?;
                ensure((0..=ell).map(|i| oracle::pair_wt(ell, &w, i)).sum::<i64>() == 0, || format!("level of {w:?}"))?;
            }
        }
    }
    Ok(checked)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, f64); 9] = [
        ("counting identity", counting, 30.0),
        ("Maj/N law", maj_n, 10.0),
        ("component structure", components, 60.0),
        ("path embedding is a strict morphism", psi, 60.0),
        ("character identity", characters, f64::INFINITY),
        ("dominance and raising", dominance, 30.0),
        ("decomposition at truncation", decomposition, 120.0),
        ("appendix polynomial identities", appendix, 10.0),
        ("no highest or lowest weight words", no_extremal, f64::INFINITY),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(checked) => {
                let note = if secs > *limit { format!(" (over the {limit} s target)") } else { String::new() };
                println!("PASS {}: {name}, {checked} checks in {secs:.2} s{note}", k + 1);
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
