//! `affcrystal`: enumerate, count, embed and decompose affine type-A
//! letter crystals from the command line.
//!
//! Exit codes: 0 ok, 1 a verification failed, 2 usage or invalid input,
//! 3 node budget exceeded, 4 internal cross-check disagreement.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::process::ExitCode;

use affcrystal::affine::{AffineCrystal, AffineElement, Window};
use affcrystal::charfun::{component_character, CountMethod};
use affcrystal::crystal::{orbit_bfs, Crystal, CrystalGraph, GeneratorSet, Region, DEFAULT_NODE_BUDGET};
use affcrystal::decomp::{decompose, fundamental_decompose, verify_report};
use affcrystal::letters::{enumerate_words, Word, WordCrystal, WordFilter};
use affcrystal::paths::{kappa_seq, psi_embed};
use affcrystal::verify::{run_suite, SuiteConfig};
use affcrystal::weight::Weight;
use affcrystal::{rat, Error};

#[derive(Parser, Debug)]
#[command(name = "affcrystal", version, about = "Affine type-A letter crystals, exactly")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for parallel checks (output never depends on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Maximum number of nodes any enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List words of B_l(m) with their descent statistics.
    Words(WordsArgs),
    /// Weight multiplicities of one component on a z window.
    Char(CharArgs),
    /// The piecewise-linear path of an element w ⊗ z^n.
    Embed(EmbedArgs),
    /// Crystal graph reachable from seeds.
    Orbit(OrbitArgs),
    /// Highest weight summands of B(λ) ⊗ B̂_l(m) on a z window.
    Decompose(DecomposeArgs),
    /// Run a named invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct WordsArgs {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    m: usize,
    /// Letter counts k0,…,kl.
    #[arg(long, value_delimiter = ',')]
    tuple: Option<Vec<u32>>,
    /// Keep words with N ≡ residue (mod m).
    #[arg(long, allow_hyphen_values = true)]
    residue: Option<i64>,
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    component: i64,
    #[arg(long, allow_hyphen_values = true)]
    zmin: i64,
    #[arg(long, allow_hyphen_values = true)]
    zmax: i64,
    #[arg(long, default_value = "closed")]
    method: String,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    /// Letters c1,…,cm, leftmost tensor factor first.
    #[arg(long, value_delimiter = ',')]
    word: Vec<u8>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    z: i64,
    /// Rank; defaults to the largest letter (at least 1).
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long)]
    l: usize,
    /// `c1,…,cm@z` for an element of B̂_l(m), or `c1,…,cm` for B_l(m).
    /// May be repeated; all seeds must be of the same kind and length.
    #[arg(long, required = true, allow_hyphen_values = true)]
    seed: Vec<String>,
    /// Generators: ef, e or f.
    #[arg(long, default_value = "ef")]
    gens: String,
    #[arg(long)]
    depth: Option<usize>,
    /// Restrict to z in [a, b] (affine seeds only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    zwin: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// λ in the grammar `L0+2L1-1d`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, allow_hyphen_values = true)]
    zmin: i64,
    #[arg(long, allow_hyphen_values = true)]
    zmax: i64,
    /// Run the truncated isomorphism checks to this depth.
    #[arg(long)]
    verify_depth: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Upper bound on ℓ.
    #[arg(long)]
    l: Option<usize>,
    /// Upper bound on m.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, hide = true)]
    inject_mutation: bool,
}

/// A command failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Precondition(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            Error::TruncationMismatch(..) | Error::CrossCheck(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

/// Text written to stdout plus the exit code.
type Outcome = Result<(String, u8), Failure>;

fn check_lm(l: usize, m: usize) -> Result<(), Failure> {
    if l == 0 || m == 0 {
        return Err(usage("--l and --m must be at least 1"));
    }
    Ok(())
}

fn check_window(zmin: i64, zmax: i64) -> Result<Window, Failure> {
    if zmin > zmax {
        return Err(usage(format!("empty window: zmin {zmin} > zmax {zmax}")));
    }
    Ok(Window::new(zmin, zmax))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> Failure {
    usage(format!("--format dot is only available for orbit, not {cmd}"))
}

fn cmd_words(a: &WordsArgs, fmt: Format, budget: usize) -> Outcome {
    check_lm(a.l, a.m)?;
    if let Some(t) = &a.tuple {
        if t.len() != a.l + 1 {
            return Err(usage(format!("--tuple needs {} entries", a.l + 1)));
        }
        if t.iter().map(|&k| k as usize).sum::<usize>() != a.m {
            return Err(usage(format!("--tuple must sum to m = {}", a.m)));
        }
    }
    let filter = WordFilter {
        tuple: a.tuple.clone(),
        residue: a.residue.map(|r| r.rem_euclid(a.m as i64) as u64),
    };
    let words = enumerate_words(a.l, a.m, &filter, budget)?;
    let rows: Vec<(Word, affcrystal::letters::WordStats, u64)> = words
        .into_iter()
        .map(|w| {
            let st = w.stats();
            let c = w.n_residue();
            (w, st, c)
        })
        .collect();
    let out = match fmt {
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(w, st, c)| json!({"word": w, "desc": st.desc, "N": st.n, "Maj": st.maj, "component": c}))
                .collect(),
        )),
        Format::Table => {
            let cells: Vec<[String; 5]> = rows
                .iter()
                .map(|(w, st, c)| {
                    [
                        w.to_string(),
                        format!("{:?}", st.desc),
                        st.n.to_string(),
                        st.maj.to_string(),
                        c.to_string(),
                    ]
                })
                .collect();
            table(&["word", "desc", "N", "Maj", "component"], &cells)
        }
        Format::Dot => return Err(no_dot("words")),
    };
    Ok((out, 0))
}

fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (j, c) in r.iter().enumerate() {
            widths[j] = widths[j].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{c}{}", " ".repeat(widths[j] - c.chars().count())))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn cmd_char(a: &CharArgs, fmt: Format, budget: usize) -> Outcome {
    check_lm(a.l, a.m)?;
    let window = check_window(a.zmin, a.zmax)?;
    if a.component < 0 || a.component >= a.m as i64 {
        return Err(usage(format!("--component must lie in 0..{}", a.m)));
    }
    let method: CountMethod = a.method.parse()?;
    let ch = component_character(a.l, a.m, a.component as u64, window, method, budget)?;
    let out = match fmt {
        Format::Json => pretty(&serde_json::to_value(&ch).expect("json")),
        Format::Table => ch.to_table(),
        Format::Dot => return Err(no_dot("char")),
    };
    Ok((out, 0))
}

fn cmd_embed(a: &EmbedArgs, fmt: Format) -> Outcome {
    if a.word.is_empty() {
        return Err(usage("--word needs at least one letter"));
    }
    let top = *a.word.iter().max().expect("non-empty") as usize;
    let ell = a.l.unwrap_or(top.max(1));
    let word = Word::new(ell, a.word.clone())?;
    let x = AffineElement::new(word, a.z);
    let kappa = kappa_seq(&x)?;
    let path = psi_embed(&x)?;
    let out = match fmt {
        Format::Json => {
            let mut v = path.to_json();
            let obj = v.as_object_mut().expect("object");
            obj.insert("l".into(), json!(ell));
            obj.insert("word".into(), json!(x.word));
            obj.insert("z".into(), json!(x.z));
            obj.insert("kappa".into(), Value::Array(kappa.iter().map(rat::to_json).collect()));
            pretty(&v)
        }
        Format::Table => {
            let rows: Vec<[String; 2]> = path
                .breaks()
                .iter()
                .map(|(t, v)| [rat::display(t), v.to_string()])
                .collect();
            let kap: Vec<String> = kappa.iter().map(rat::display).collect();
            format!("kappa: {}\n{}", kap.join(" "), table(&["t", "b(t)"], &rows))
        }
        Format::Dot => return Err(no_dot("embed")),
    };
    Ok((out, 0))
}

enum Seeds {
    Words(Vec<Word>),
    Affine(Vec<AffineElement>),
}

fn parse_letters(s: &str, ell: usize) -> Result<Word, Failure> {
    let letters = s
        .split(',')
        .map(|c| c.trim().parse::<u8>().map_err(|_| usage(format!("bad letter {c:?} in seed {s:?}"))))
        .collect::<Result<Vec<u8>, Failure>>()?;
    Ok(Word::new(ell, letters)?)
}

fn parse_seeds(raw: &[String], ell: usize) -> Result<Seeds, Failure> {
    let affine = raw[0].contains('@');
    if raw.iter().any(|s| s.contains('@') != affine) {
        return Err(usage("seeds mix affine (with @z) and plain words"));
    }
    let seeds = if affine {
        let xs = raw
            .iter()
            .map(|s| {
                let (w, z) = s.split_once('@').expect("checked");
                let z: i64 = z.trim().parse().map_err(|_| usage(format!("bad z in seed {s:?}")))?;
                Ok(AffineElement::new(parse_letters(w, ell)?, z))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        Seeds::Affine(xs)
    } else {
        Seeds::Words(raw.iter().map(|s| parse_letters(s, ell)).collect::<Result<_, _>>()?)
    };
    let lens: Vec<usize> = match &seeds {
        Seeds::Words(ws) => ws.iter().map(Word::len).collect(),
        Seeds::Affine(xs) => xs.iter().map(AffineElement::m).collect(),
    };
    if lens.iter().any(|&n| n != lens[0]) {
        return Err(usage("all seeds must have the same length"));
    }
    Ok(seeds)
}

fn render_graph<C: Crystal>(c: &C, g: &CrystalGraph<C::Elem>, fmt: Format) -> Result<String, Failure> {
    match fmt {
        Format::Json => Ok(pretty(&g.to_json(|x| c.encode(x)))),
        Format::Dot => Ok(g.to_dot(|x| c.encode(x))),
        Format::Table => Err(usage("--format table is not available for orbit")),
    }
}

fn cmd_orbit(a: &OrbitArgs, fmt: Format, budget: usize) -> Outcome {
    check_lm(a.l, 1)?;
    let gens = GeneratorSet::parse(&a.gens, a.l)?;
    let out = match parse_seeds(&a.seed, a.l)? {
        Seeds::Words(ws) => {
            if a.zwin.is_some() {
                return Err(usage("--zwin needs affine seeds (c1,…,cm@z)"));
            }
            let c = WordCrystal { ell: a.l, m: ws[0].len() };
            let g = orbit_bfs(&c, &ws, &gens, a.depth, None, budget)?;
            render_graph(&c, &g, fmt)?
        }
        Seeds::Affine(xs) => {
            let c = AffineCrystal { ell: a.l, m: xs[0].m() };
            let region = match &a.zwin {
                Some(z) if z.len() == 2 => {
                    let w = check_window(z[0], z[1])?;
                    Some(Region::new(format!("z in [{}, {}]", w.lo, w.hi), move |x: &AffineElement| {
                        w.contains(x.z)
                    }))
                }
                Some(_) => return Err(usage("--zwin takes two values a,b")),
                None => None,
            };
            if region.is_none() && a.depth.is_none() {
                return Err(usage("an affine orbit needs --depth or --zwin to be finite"));
            }
            let g = orbit_bfs(&c, &xs, &gens, a.depth, region.as_ref(), budget)?;
            render_graph(&c, &g, fmt)?
        }
    };
    Ok((out, 0))
}

fn fundamental_index(lambda: &Weight) -> Option<usize> {
    if lambda.dlt != rat::zero() {
        return None;
    }
    let ones: Vec<usize> = (0..=lambda.ell())
        .filter(|&i| *lambda.pair(i) == rat::one())
        .collect();
    let zeros = (0..=lambda.ell()).filter(|&i| lambda.pair(i) == &rat::zero()).count();
    (ones.len() == 1 && zeros == lambda.ell()).then(|| ones[0])
}

fn cmd_decompose(a: &DecomposeArgs, fmt: Format, budget: usize) -> Outcome {
    check_lm(a.l, a.m)?;
    let window = check_window(a.zmin, a.zmax)?;
    let lambda = Weight::parse_spec(&a.lambda, a.l)?;
    let mut report = match fundamental_index(&lambda) {
        Some(i) => fundamental_decompose(i, a.l, a.m, window)?,
        None => decompose(&lambda, a.l, a.m, window)?,
    };
    let mut code = 0;
    let mut failure = None;
    if let Some(depth) = a.verify_depth {
        let check = verify_report(&mut report, depth, budget)?;
        if !check.passed() {
            code = 4;
            failure = Some(serde_json::to_value(&check).expect("json"));
        }
    }
    let out = match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("json");
            if let Some(f) = failure {
                v.as_object_mut().expect("object").insert("failure".into(), f);
            }
            pretty(&v)
        }
        Format::Table => report.to_table(),
        Format::Dot => return Err(no_dot("decompose")),
    };
    Ok((out, code))
}

fn cmd_verify(a: &VerifyArgs, fmt: Format, budget: usize) -> Outcome {
    let mut cfg = SuiteConfig::defaults(&a.suite)?;
    if let Some(l) = a.l {
        cfg.bounds.l = l;
    }
    if let Some(m) = a.m {
        cfg.bounds.m = m;
    }
    if cfg.bounds.m == 0 || (cfg.bounds.l == 0 && a.suite != "appendix") {
        return Err(usage("--l and --m must be at least 1"));
    }
    cfg.mutate = a.inject_mutation;
    cfg.budget = budget;
    let report = run_suite(&a.suite, &cfg)?;
    let code = if report.passed { 0 } else { 1 };
    let out = match fmt {
        Format::Json => pretty(&serde_json::to_value(&report).expect("json")),
        Format::Table => {
            let status = if report.passed { "PASS" } else { "FAIL" };
            let mut s = format!("{status} {} ({} checks)\n", report.suite, report.checked);
            if let Some(c) = &report.counterexample {
                s.push_str(&format!("counterexample: {c}\n"));
            }
            s
        }
        Format::Dot => return Err(no_dot("verify")),
    };
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = match &cli.command {
        Command::Words(a) => cmd_words(a, cli.format, cli.budget),
        Command::Char(a) => cmd_char(a, cli.format, cli.budget),
        Command::Embed(a) => cmd_embed(a, cli.format),
        Command::Orbit(a) => cmd_orbit(a, cli.format, cli.budget),
        Command::Decompose(a) => cmd_decompose(a, cli.format, cli.budget),
        Command::Verify(a) => cmd_verify(a, cli.format, cli.budget),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
