//! Command-line surface over the subshift library: languages,
//! synchronizing-word classification, diagram builds and exports, exact
//! K-theoretic summaries, Perron data, and the named verification
//! identities.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::io::Write;
use std::process::ExitCode;
use subshift::bratteli::{
    build_lc_diagram, build_lcs_diagram, build_lcu_diagram, export_dot, export_json,
    restrict_sync, BratteliDiagram,
};
use subshift::contexts::{is_synchronizing_bounded, is_synchronizing_exact, SyncVerdict};
use subshift::ktheory::{k_summary, sync_rank_growth, tensor_factor_check};
use subshift::presentations::ShiftPresentation;
use subshift::spectra;
use subshift::words::Word;
use subshift::zoo;

#[derive(Parser)]
#[command(
    name = "subshift",
    about = "Invariants of synchronizing shift spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Selector {
    /// Built-in shift name (see `verify --list` for the zoo)
    #[arg(long)]
    shift: Option<String>,
    /// Path to a subshift/v1 JSON document
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

impl Selector {
    fn resolve(&self) -> Result<(String, ShiftPresentation, zoo::ZooFacts), String> {
        match (&self.shift, &self.file) {
            (Some(name), None) => {
                let entry = zoo::get_shift(name).map_err(|e| e.to_string())?;
                Ok((entry.name, entry.presentation, entry.facts))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let p = ShiftPresentation::from_json(&text).map_err(|e| e.to_string())?;
                Ok((path.display().to_string(), p, zoo::ZooFacts::default()))
            }
            _ => Err("exactly one of --shift or --file is required".into()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramKindArg {
    Lc,
    Lcs,
    Lcu,
    Sync,
}

#[derive(Subcommand)]
enum Command {
    /// List the words of a given length
    Language {
        #[command(flatten)]
        selector: Selector,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify words as synchronizing
    Classify {
        #[command(flatten)]
        selector: Selector,
        /// A single word to classify
        #[arg(long, conflicts_with = "all_up_to")]
        word: Option<String>,
        /// Classify every word of length 1..=N
        #[arg(long)]
        all_up_to: Option<usize>,
        /// Bounded extension length (default 2|w|+4)
        #[arg(long)]
        ext_len: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a diagram and print or export it
    Bratteli {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_enum)]
        kind: DiagramKindArg,
        #[arg(long)]
        depth: usize,
        /// Period word of the anchoring periodic point (lcs/lcu)
        #[arg(long)]
        period: Option<String>,
        /// Phase of the periodic point
        #[arg(long, default_value = "0")]
        offset: i64,
        /// Ray offset N
        #[arg(long, default_value = "0")]
        ray: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Exact integer summary of a diagram's transition data
    Ktheory {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, value_enum)]
        kind: DiagramKindArg,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        period: Option<String>,
        #[arg(long, default_value = "0")]
        offset: i64,
        #[arg(long, default_value = "0")]
        ray: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Perron data for the staircase family or an entropy report
    Spectra {
        #[command(flatten)]
        selector: Selector,
        /// Staircase family index (char poly, determinant, Perron bracket)
        #[arg(long, conflicts_with_all = ["shift", "file"])]
        family_n: Option<usize>,
        /// Certified bracket width
        #[arg(long, default_value = "1e-9")]
        tol: String,
        /// Longest word length in the entropy report
        #[arg(long, default_value = "10")]
        entropy_max: usize,
    },
    /// Run a named verification identity (or --all)
    Verify {
        /// Identity name
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// List the available identities
        #[arg(long)]
        list: bool,
    },
}

const IDENTITIES: &[&str] = &[
    "even-tensor",
    "anbn-detminus1",
    "anbn-rank-growth",
    "gicar-pascal",
    "gicar-dequiv",
    "charge-nonsync",
    "minimal-nonsync",
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Language { selector, n, format } => {
            let (_, p, _) = selector.resolve()?;
            let alphabet = p.alphabet();
            let slice = p.language(n).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let words: Vec<String> =
                        slice.words.iter().map(|w| alphabet.display_word(w)).collect();
                    let doc = serde_json::json!({
                        "schema": "language/v1",
                        "n": n,
                        "complete": slice.complete,
                        "words": words,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                _ => {
                    for w in &slice.words {
                        println!("{}", alphabet.display_word(w));
                    }
                    if !slice.complete {
                        eprintln!("note: truncation levels disagreed; list may be incomplete");
                    }
                }
            }
            Ok(true)
        }
        Command::Classify { selector, word, all_up_to, ext_len, format } => {
            let (_, p, _) = selector.resolve()?;
            let alphabet = p.alphabet();
            let mut words = Vec::new();
            if let Some(text) = word {
                words.push(alphabet.parse_word(&text).map_err(|e| e.to_string())?);
            } else if let Some(n) = all_up_to {
                for len in 1..=n {
                    words.extend(p.language(len).map_err(|e| e.to_string())?.words);
                }
            } else {
                return Err("one of --word or --all-up-to is required".into());
            }
            let exact = p.as_sofic_graph().is_ok();
            let mut out = Vec::new();
            for w in &words {
                let verdict = if exact {
                    let sync = is_synchronizing_exact(p.as_sofic_graph().unwrap(), w)
                        .map_err(|e| e.to_string())?;
                    serde_json::json!({ "word": alphabet.display_word(w), "sync": sync })
                } else {
                    let k = ext_len.unwrap_or(2 * w.len() + 4);
                    match is_synchronizing_bounded(&p, w, k).map_err(|e| e.to_string())? {
                        SyncVerdict::Refuted { at } => serde_json::json!({
                            "word": alphabet.display_word(w),
                            "sync": false,
                            "refuted_at": at,
                        }),
                        SyncVerdict::ConsistentUpTo(k) => serde_json::json!({
                            "word": alphabet.display_word(w),
                            "sync": format!("consistent-up-to-{k}"),
                        }),
                    }
                };
                out.push(verdict);
            }
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "schema": "classification/v1",
                        "results": out,
                    }))
                    .unwrap()
                ),
                _ => {
                    for v in &out {
                        let word = v["word"].as_str().unwrap();
                        match (&v["sync"], &v["refuted_at"]) {
                            (serde_json::Value::Bool(false), serde_json::Value::Number(k)) => {
                                println!("{word}  sync=false (refuted at {k})")
                            }
                            (serde_json::Value::Bool(s), _) => println!("{word}  sync={s}"),
                            (serde_json::Value::String(s), _) => println!("{word}  sync={s}"),
                            _ => unreachable!(),
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Bratteli { selector, kind, depth, period, offset, ray, format, out } => {
            let (_, p, facts) = selector.resolve()?;
            let d = build_diagram(&p, &facts, kind, depth, period.as_deref(), offset, ray)?;
            let text = match format {
                Format::Dot => export_dot(&d),
                Format::Json => export_json(&d),
                Format::Text => {
                    let mut s = String::new();
                    s.push_str(&format!("level sizes: {:?}\n", d.level_sizes()));
                    for (i, m) in d.matrices().iter().enumerate() {
                        s.push_str(&format!("matrix {i} ({}x{}):\n{m}", m.rows(), m.cols()));
                    }
                    s
                }
            };
            match out {
                Some(path) => {
                    let mut f = std::fs::File::create(&path).map_err(|e| e.to_string())?;
                    f.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Ktheory { selector, kind, depth, period, offset, ray, format } => {
            let (_, p, facts) = selector.resolve()?;
            let d = build_diagram(&p, &facts, kind, depth, period.as_deref(), offset, ray)?;
            let summary = k_summary(&d);
            match format {
                Format::Json => println!("{}", summary.to_json()),
                _ => {
                    println!("level sizes:   {:?}", summary.level_sizes);
                    println!("rank sequence: {:?}", summary.rank_sequence);
                    match summary.eventual_rank {
                        Some(er) => {
                            println!("eventual rank: {} (from level {})", er.rank, er.level)
                        }
                        None => println!("eventual rank: none (no square tail; growth evidence above)"),
                    }
                    match &summary.stationary {
                        Some(st) => {
                            println!(
                                "stationary matrix (det {}, invertible over Z: {}):",
                                st.determinant, st.invertible_over_z
                            );
                            print!("{}", st.matrix);
                        }
                        None => println!("stationary matrix: none detected"),
                    }
                    println!("torsion note:  {:?}", summary.torsion_note);
                }
            }
            Ok(true)
        }
        Command::Spectra { selector, family_n, tol, entropy_max } => {
            let tol = parse_tolerance(&tol)?;
            if let Some(n) = family_n {
                let m = spectra::family_matrix(n).map_err(|e| e.to_string())?;
                let det = m.det().map_err(|e| e.to_string())?;
                let cp = spectra::char_poly_family(n).map_err(|e| e.to_string())?;
                let est = spectra::perron_family(n, &tol).map_err(|e| e.to_string())?;
                println!("family index:   {n} ({}x{})", m.rows(), m.cols());
                println!("char poly:      {cp}");
                println!("determinant:    {det}");
                println!("perron bracket: [{}, {}]", est.lower, est.upper);
                println!(
                    "         approx  [{:.9}, {:.9}]",
                    rational_to_f64(&est.lower),
                    rational_to_f64(&est.upper)
                );
                return Ok(true);
            }
            let (_, p, _) = selector.resolve()?;
            if let Ok(g) = p.as_sofic_graph() {
                let adj = spectra::adjacency_matrix(g);
                match spectra::perron_power(&adj, &tol) {
                    Ok(est) => {
                        println!("adjacency perron bracket: [{}, {}]", est.lower, est.upper);
                        println!(
                            "                   approx  [{:.9}, {:.9}]",
                            rational_to_f64(&est.lower),
                            rational_to_f64(&est.upper)
                        );
                    }
                    Err(e) => println!("adjacency perron bracket: unavailable ({e})"),
                }
            }
            println!("n  |L_n|  log|L_n|/n");
            for row in spectra::entropy_report(&p, entropy_max).map_err(|e| e.to_string())? {
                println!("{:<2} {:<6} {:.6}", row.n, row.count, row.normalized);
            }
            println!("note: {}", spectra::ENTROPY_NOTE);
            Ok(true)
        }
        Command::Verify { name, all, list } => {
            if list {
                for id in IDENTITIES {
                    println!("{id}");
                }
                return Ok(true);
            }
            let targets: Vec<&str> = if all {
                IDENTITIES.to_vec()
            } else {
                match &name {
                    Some(n) if IDENTITIES.contains(&n.as_str()) => vec![n.as_str()],
                    Some(n) => return Err(format!("unknown identity {n:?}; try --list")),
                    None => return Err("identity name or --all required".into()),
                }
            };
            let mut ok = true;
            for id in targets {
                let pass = verify_identity(id)?;
                println!("{}: {id}", if pass { "PASS" } else { "FAIL" });
                ok &= pass;
            }
            Ok(ok)
        }
    }
}

fn build_diagram(
    p: &ShiftPresentation,
    facts: &zoo::ZooFacts,
    kind: DiagramKindArg,
    depth: usize,
    period: Option<&str>,
    offset: i64,
    ray: usize,
) -> Result<BratteliDiagram, String> {
    let period_word = |period: Option<&str>| -> Result<(Word, i64), String> {
        match period {
            Some(text) => {
                let w = p.alphabet().parse_word(text).map_err(|e| e.to_string())?;
                Ok((w, offset))
            }
            None => facts
                .default_period
                .clone()
                .ok_or_else(|| "no default periodic point; pass --period".to_string()),
        }
    };
    match kind {
        DiagramKindArg::Lc => build_lc_diagram(p, depth).map_err(|e| e.to_string()),
        DiagramKindArg::Sync => {
            let d = build_lc_diagram(p, depth).map_err(|e| e.to_string())?;
            restrict_sync(&d).map_err(|e| e.to_string())
        }
        DiagramKindArg::Lcs => {
            let (w, f) = period_word(period)?;
            build_lcs_diagram(p, &w, f, ray, depth).map_err(|e| e.to_string())
        }
        DiagramKindArg::Lcu => {
            let (w, f) = period_word(period)?;
            build_lcu_diagram(p, &w, f, ray, depth).map_err(|e| e.to_string())
        }
    }
}

/// Parse "1e-9", "0.0001", or "p/q" into an exact rational.
fn parse_tolerance(text: &str) -> Result<BigRational, String> {
    let bad = || format!("cannot parse tolerance {text:?}");
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let value: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(value * ten.pow(shift as u32))
    } else {
        BigRational::new(value, ten.pow((-shift) as u32))
    })
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// named verification identities
// ---------------------------------------------------------------------------

fn verify_identity(id: &str) -> Result<bool, String> {
    match id {
        "even-tensor" => verify_even_tensor(),
        "anbn-detminus1" => verify_anbn_det(),
        "anbn-rank-growth" => verify_anbn_rank_growth(),
        "gicar-pascal" => verify_gicar_pascal(),
        "gicar-dequiv" => verify_gicar_dequiv(),
        "charge-nonsync" => verify_charge_nonsync(),
        "minimal-nonsync" => verify_minimal_nonsync(),
        _ => Err(format!("unknown identity {id:?}")),
    }
}

fn verify_even_tensor() -> Result<bool, String> {
    let even = zoo::get_shift("even").map_err(|e| e.to_string())?;
    let (period, phase) = even.facts.default_period.clone().unwrap();
    let lc = build_lc_diagram(&even.presentation, 4).map_err(|e| e.to_string())?;
    let sync = restrict_sync(&lc).map_err(|e| e.to_string())?;
    let lcs =
        build_lcs_diagram(&even.presentation, &period, phase, 0, 4).map_err(|e| e.to_string())?;
    let lcu =
        build_lcu_diagram(&even.presentation, &period, phase, 0, 4).map_err(|e| e.to_string())?;
    let verdict = tensor_factor_check(&even.presentation, &sync, &lcs, &lcu)
        .map_err(|e| e.to_string())?;
    let a_sync = sync.matrices().last().unwrap();
    println!("stable (x) unstable =");
    print!("{a_sync}");
    println!("verdict: {verdict:?}");
    Ok(verdict.holds())
}

fn verify_anbn_det() -> Result<bool, String> {
    let minus_one = BigInt::from(-1);
    let mut ok = true;
    for n in 1..=12 {
        let det = spectra::family_matrix(n)
            .and_then(|m| m.det())
            .map_err(|e| e.to_string())?;
        println!("det(level {n}) = {det}");
        ok &= det == minus_one;
    }
    Ok(ok)
}

fn verify_anbn_rank_growth() -> Result<bool, String> {
    let anbn = zoo::get_shift("anbn").map_err(|e| e.to_string())?;
    let rows = sync_rank_growth(&anbn.presentation, 4).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut prev = 0usize;
    for r in &rows {
        println!(
            "window {}: {} sync classes, rank {} (full: {})",
            r.window, r.sync_classes, r.rank, r.full_rank
        );
        ok &= r.full_rank && r.sync_classes > prev;
        prev = r.sync_classes;
    }
    Ok(ok)
}

fn verify_gicar_pascal() -> Result<bool, String> {
    use num_traits::Zero;
    let gicar = zoo::get_shift("gicar").map_err(|e| e.to_string())?;
    let (period, phase) = gicar.facts.default_period.clone().unwrap();
    let d =
        build_lcs_diagram(&gicar.presentation, &period, phase, 0, 7).map_err(|e| e.to_string())?;
    let sizes = d.level_sizes();
    println!("level sizes: {sizes:?}");
    let mut ok = sizes == vec![1, 2, 3, 4, 5, 6, 7, 8];
    for m in d.matrices().iter().skip(1) {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = i.abs_diff(j) == 1 || (i == 0 && j == 0);
                ok &= !m.get(i, j).is_zero() == expect;
            }
        }
    }
    println!("bidiagonal shape: {}", if ok { "yes" } else { "no" });
    Ok(ok)
}

fn verify_gicar_dequiv() -> Result<bool, String> {
    let gicar = zoo::get_shift("gicar").map_err(|e| e.to_string())?;
    let p = &gicar.presentation;
    let alphabet = p.alphabet();
    let b = alphabet.index_of("b").unwrap();
    let c = alphabet.index_of("c").unwrap();
    let mut ok = true;
    let mut checked = 0usize;
    for n in 1..=8 {
        let words: Vec<Word> = p
            .language(n)
            .map_err(|e| e.to_string())?
            .words
            .into_iter()
            .filter(|w| w.ids().iter().all(|&s| s == b || s == c))
            .collect();
        let k = n + 4;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let d_eq = zoo::d_equivalent(&alphabet, &words[i], &words[j])
                    .map_err(|e| e.to_string())?;
                let ctx_eq =
                    subshift::contexts::context_equivalent_bounded(p, &words[i], &words[j], k)
                        .map_err(|e| e.to_string())?;
                if d_eq != ctx_eq {
                    println!(
                        "mismatch: {} vs {}: d-equivalent {} but context-equal {}",
                        alphabet.display_word(&words[i]),
                        alphabet.display_word(&words[j]),
                        d_eq,
                        ctx_eq
                    );
                    ok = false;
                }
                checked += 1;
            }
        }
    }
    println!("checked {checked} pairs of {{b,c}} words up to length 8");
    Ok(ok)
}

fn verify_charge_nonsync() -> Result<bool, String> {
    let outer = zoo::get_shift("charge_3").map_err(|e| e.to_string())?;
    let g = outer.presentation.as_sofic_graph().map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut total = 0usize;
    for n in 0..=8 {
        let words = zoo::embedded_subshift_words(3, n).map_err(|e| e.to_string())?;
        for w in &words {
            if is_synchronizing_exact(g, w).map_err(|e| e.to_string())? {
                println!(
                    "unexpected synchronizing embedded word: {}",
                    outer.presentation.alphabet().display_word(w)
                );
                ok = false;
            }
            total += 1;
        }
    }
    println!("verified {total} embedded words non-synchronizing");
    Ok(ok)
}

fn verify_minimal_nonsync() -> Result<bool, String> {
    let min = zoo::get_shift("minimal_fibonacci").map_err(|e| e.to_string())?;
    let p = &min.presentation;
    let alphabet = p.alphabet();
    let e_sym = alphabet.index_of("e").unwrap();
    let mut ok = true;
    let mut hub_words = 0usize;
    for n in 1..=8 {
        for w in p.language(n).map_err(|e| e.to_string())?.words {
            if !w.ids().contains(&e_sym) {
                continue;
            }
            let v = is_synchronizing_bounded(p, &w, 8).map_err(|e| e.to_string())?;
            if v.is_refuted() {
                println!("hub word refuted unexpectedly: {}", alphabet.display_word(&w));
                ok = false;
            }
            hub_words += 1;
        }
    }
    let mut factor_words = 0usize;
    for n in 1..=6 {
        for w in p.language(n).map_err(|e| e.to_string())?.words {
            if w.ids().contains(&e_sym) {
                continue;
            }
            let v = is_synchronizing_bounded(p, &w, 10).map_err(|e| e.to_string())?;
            if !v.is_refuted() {
                println!("factor word not refuted: {}", alphabet.display_word(&w));
                ok = false;
            }
            factor_words += 1;
        }
    }
    println!("{hub_words} hub words consistent at 8; {factor_words} factor words refuted by 10");
    Ok(ok)
}
