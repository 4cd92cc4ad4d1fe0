//! Built-in constructions of the shift spaces the rest of the crate is
//! exercised on, plus the charge/d-equivalence machinery and substitution
//! word generators.

use crate::graph::LabeledGraph;
use crate::presentations::{GraphFamily, ShiftPresentation, SubstitutionSystem};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

/// A named shift space with its presentation and the machine-readable
/// facts the verification suite leans on.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub presentation: ShiftPresentation,
    pub facts: ZooFacts,
}

/// Documented expectations attached to a zoo entry.
#[derive(Clone, Debug, Default)]
pub struct ZooFacts {
    /// When set: a word is synchronizing iff it contains this word.
    pub sync_iff_contains: Option<Word>,
    /// Default periodic point for heteroclinic diagrams (period, phase).
    pub default_period: Option<(Word, i64)>,
    pub notes: &'static str,
}

/// Resolve a stable zoo name: `full_<n>`, `golden_mean`, `even`,
/// `charge_<c>`, `anbn`, `anbn_c_loop`, `gicar`, `minimal_fibonacci`,
/// `minimal_thue_morse`.
pub fn get_shift(name: &str) -> Result<ZooEntry> {
    if let Some(n) = name.strip_prefix("full_") {
        let n: usize = n.parse().map_err(|_| Error::UnknownShift(name.into()))?;
        return full_shift(n);
    }
    if let Some(c) = name.strip_prefix("charge_") {
        let c: usize = c.parse().map_err(|_| Error::UnknownShift(name.into()))?;
        return charge_constrained(c);
    }
    match name {
        "golden_mean" => Ok(golden_mean()),
        "even" => Ok(even_shift()),
        "anbn" => Ok(anbn_shift()),
        "anbn_c_loop" => Ok(anbn_c_loop_shift()),
        "gicar" => Ok(gicar_shift()),
        "minimal_fibonacci" => minimal_shift(Substitution::fibonacci(), "a"),
        "minimal_thue_morse" => minimal_shift(Substitution::thue_morse(), "a"),
        _ => Err(Error::UnknownShift(name.into())),
    }
}

/// All stable zoo names with default parameters, for `--all` style runs.
pub fn zoo_names() -> Vec<&'static str> {
    vec![
        "full_2",
        "golden_mean",
        "even",
        "charge_3",
        "anbn",
        "anbn_c_loop",
        "gicar",
        "minimal_fibonacci",
    ]
}

pub fn full_shift(n: usize) -> Result<ZooEntry> {
    if n < 1 {
        return Err(Error::ParamOutOfRange("full shift needs n >= 1".into()));
    }
    let symbols: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let alphabet = Alphabet::new(symbols)?;
    let edges = (0..n).map(|i| (0usize, 0usize, i as u16)).collect();
    let g = LabeledGraph::from_indexed(alphabet.clone(), vec!["*".into()], edges)?;
    Ok(ZooEntry {
        name: format!("full_{n}"),
        presentation: ShiftPresentation::SoficGraph(g),
        facts: ZooFacts {
            sync_iff_contains: Some(Word::empty()),
            default_period: Some((Word::single(0), 0)),
            notes: "every word is synchronizing",
        },
    })
}

/// The memory-one binary shift forbidding `11`, via its higher-block
/// graph: a `0`-loop, and a `0`/`1` two-cycle.
pub fn golden_mean() -> ZooEntry {
    let alphabet = Alphabet::binary();
    let g = LabeledGraph::new(
        alphabet,
        ["0", "1"],
        [
            ("0".into(), "0".into(), "0".into()),
            ("0".into(), "1".into(), "1".into()),
            ("1".into(), "0".into(), "0".into()),
        ],
    )
    .unwrap();
    ZooEntry {
        name: "golden_mean".into(),
        presentation: ShiftPresentation::SoficGraph(g),
        facts: ZooFacts {
            sync_iff_contains: None,
            default_period: Some((Word::single(0), 0)),
            notes: "every non-empty word is synchronizing",
        },
    }
}

/// Binary sequences with an even number of zeros between ones.
pub fn even_shift() -> ZooEntry {
    let alphabet = Alphabet::binary();
    let g = LabeledGraph::new(
        alphabet.clone(),
        ["l", "r"],
        [
            ("l".into(), "l".into(), "1".into()),
            ("l".into(), "r".into(), "0".into()),
            ("r".into(), "l".into(), "0".into()),
        ],
    )
    .unwrap();
    ZooEntry {
        name: "even".into(),
        presentation: ShiftPresentation::SoficGraph(g),
        facts: ZooFacts {
            sync_iff_contains: Some(alphabet.parse_word("1").unwrap()),
            default_period: Some((alphabet.parse_word("1").unwrap(), 0)),
            notes: "synchronizing iff the word contains a 1",
        },
    }
}

/// Sequences over {+1, -1} whose every finite partial sum stays within
/// [-c, c]; presented on the path graph with c+1 vertices.
pub fn charge_constrained(c: usize) -> Result<ZooEntry> {
    if c < 1 {
        return Err(Error::ParamOutOfRange("charge bound needs c >= 1".into()));
    }
    let alphabet = Alphabet::new(["+1", "-1"])?;
    let vertices: Vec<String> = (0..=c).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..c {
        edges.push((i, i + 1, 0u16)); // +1
        edges.push((i + 1, i, 1u16)); // -1
    }
    let g = LabeledGraph::from_indexed(alphabet.clone(), vertices, edges)?;
    let period = alphabet.parse_word("+1 -1")?;
    Ok(ZooEntry {
        name: format!("charge_{c}"),
        presentation: ShiftPresentation::SoficGraph(g),
        facts: ZooFacts {
            sync_iff_contains: None,
            default_period: Some((period, 0)),
            notes: "words of the embedded lower-charge shift are never synchronizing",
        },
    })
}

/// The staircase shift: blocks of `a`s must be matched by equally long
/// blocks of `b`s.  Presented by the right-resolving staircase labeling.
pub fn anbn_shift() -> ZooEntry {
    let alphabet = GraphFamily::AnbnRight.alphabet();
    ZooEntry {
        name: "anbn".into(),
        presentation: ShiftPresentation::TruncatedFamily(GraphFamily::AnbnRight),
        facts: ZooFacts {
            sync_iff_contains: Some(alphabet.parse_word("ba").unwrap()),
            default_period: Some((alphabet.parse_word("ab").unwrap(), 0)),
            notes: "synchronizing iff the word contains ba",
        },
    }
}

/// The staircase shift with an extra c-loop at the bottom-left vertex,
/// making it mixing.
pub fn anbn_c_loop_shift() -> ZooEntry {
    ZooEntry {
        name: "anbn_c_loop".into(),
        presentation: ShiftPresentation::TruncatedFamily(GraphFamily::AnbnCLoop),
        facts: ZooFacts {
            sync_iff_contains: None,
            default_period: None,
            notes: "staircase with a c-loop; stable/unstable window classes force length 2N+5",
        },
    }
}

/// Spine graph over {a, b, c} with an `a`-loop at the first vertex; the
/// non-synchronizing words are exactly the {b, c} words.
pub fn gicar_shift() -> ZooEntry {
    let alphabet = GraphFamily::GicarSpine.alphabet();
    ZooEntry {
        name: "gicar".into(),
        presentation: ShiftPresentation::TruncatedFamily(GraphFamily::GicarSpine),
        facts: ZooFacts {
            sync_iff_contains: Some(alphabet.parse_word("a").unwrap()),
            default_period: Some((alphabet.parse_word("a").unwrap(), 0)),
            notes: "synchronizing iff the word contains an a",
        },
    }
}

/// Hub-graph shift generated by a substitution fixed point; the hub symbol
/// `e` is adjoined to the substitution's alphabet.
pub fn minimal_shift(s: Substitution, seed: &str) -> Result<ZooEntry> {
    let seed_id = s.alphabet.index_of(seed)?;
    let name = format!("minimal_{}", s.name);
    let system = SubstitutionSystem::new(s.alphabet.clone(), s.rules.clone(), seed_id, 64)?;
    let extended = system.extended_alphabet();
    Ok(ZooEntry {
        name,
        presentation: ShiftPresentation::SubstitutionGraph(system),
        facts: ZooFacts {
            sync_iff_contains: Some(extended.parse_word("e").unwrap()),
            default_period: None,
            notes: "synchronizing iff the word contains the hub symbol e",
        },
    })
}

// ---------------------------------------------------------------------------
// substitutions
// ---------------------------------------------------------------------------

/// A symbol-to-word substitution over a finite alphabet.
#[derive(Clone, Debug)]
pub struct Substitution {
    name: String,
    alphabet: Alphabet,
    rules: Vec<Word>,
}

impl Substitution {
    pub fn new(name: &str, alphabet: Alphabet, rules: Vec<Word>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::ParamOutOfRange("one rule per symbol required".into()));
        }
        if rules.iter().any(Word::is_empty) {
            return Err(Error::ErasingSubstitution);
        }
        for r in &rules {
            r.check_alphabet(&alphabet)?;
        }
        Ok(Substitution { name: name.into(), alphabet, rules })
    }

    pub fn fibonacci() -> Substitution {
        let a = Alphabet::new(["a", "b"]).unwrap();
        Substitution::new(
            "fibonacci",
            a.clone(),
            vec![a.parse_word("ab").unwrap(), a.parse_word("a").unwrap()],
        )
        .unwrap()
    }

    pub fn thue_morse() -> Substitution {
        let a = Alphabet::new(["a", "b"]).unwrap();
        Substitution::new(
            "thue_morse",
            a.clone(),
            vec![a.parse_word("ab").unwrap(), a.parse_word("ba").unwrap()],
        )
        .unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &id in w.ids() {
            out.extend_from_slice(self.rules[id as usize].ids());
        }
        Word::from_ids(out)
    }

    /// Some iterate of the substitution sends every symbol to a word
    /// containing every symbol.
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.len();
        // occurs[i][j]: symbol j appears in the image of symbol i
        let mut occurs = vec![vec![false; n]; n];
        for (i, r) in self.rules.iter().enumerate() {
            for &id in r.ids() {
                occurs[i][id as usize] = true;
            }
        }
        let mut reach = occurs.clone();
        for _ in 0..n {
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if reach[i][k] {
                        for (j, cell) in next[i].iter_mut().enumerate() {
                            *cell |= occurs[k][j];
                        }
                    }
                }
            }
            reach = next;
        }
        reach.iter().all(|row| row.iter().all(|&x| x))
    }
}

/// Length-`len` prefix of the one-sided fixed point of `s` grown from
/// `seed`; errors unless `s(seed)` begins with `seed`.
pub fn substitution_fixed_prefix(s: &Substitution, seed: &str, len: usize) -> Result<Word> {
    if len < 1 {
        return Err(Error::ParamOutOfRange("length must be >= 1".into()));
    }
    let seed_id = s.alphabet.index_of(seed)?;
    if s.rules[seed_id as usize].ids().first() != Some(&seed_id) {
        return Err(Error::SeedNotProlongable(seed.to_string()));
    }
    let mut cur = Word::single(seed_id);
    while cur.len() < len {
        cur = s.apply(&cur);
    }
    Ok(cur.prefix(len))
}

// ---------------------------------------------------------------------------
// charge and d-equivalence over {b, c}
// ---------------------------------------------------------------------------

/// `d(w)`: the number of `b`s minus the number of `c`s.  Errors on any
/// other symbol.
pub fn charge(alphabet: &Alphabet, w: &Word) -> Result<i64> {
    let b = alphabet.index_of("b")?;
    let c = alphabet.index_of("c")?;
    let mut d = 0i64;
    for &id in w.ids() {
        if id == b {
            d += 1;
        } else if id == c {
            d -= 1;
        } else {
            return Err(Error::UnknownSymbol(alphabet.symbol_name(id).to_string()));
        }
    }
    Ok(d)
}

/// Equal lengths and equal charges.
pub fn d_equivalent(alphabet: &Alphabet, w: &Word, v: &Word) -> Result<bool> {
    Ok(w.len() == v.len() && charge(alphabet, w)? == charge(alphabet, v)?)
}

/// The length-`n` words of the charge-`(c-1)` shift, each verified to be a
/// word of the charge-`c` shift.
pub fn embedded_subshift_words(c: usize, n: usize) -> Result<Vec<Word>> {
    if c < 2 {
        return Err(Error::ParamOutOfRange("embedding needs c >= 2".into()));
    }
    let inner = charge_constrained(c - 1)?;
    let outer = charge_constrained(c)?;
    let words = inner.presentation.language(n)?.words;
    for w in &words {
        if !outer.presentation.contains_word(w)? {
            return Err(Error::WordNotInLanguage(
                outer.presentation.alphabet().display_word(w),
            ));
        }
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_names_resolve_and_validate() {
        for name in zoo_names() {
            let entry = get_shift(name).unwrap();
            assert_eq!(entry.name, name);
            // every entry has a non-empty length-1 language
            assert!(!entry.presentation.language(1).unwrap().words.is_empty());
        }
        assert!(matches!(get_shift("nope"), Err(Error::UnknownShift(_))));
        assert!(get_shift("full_0").is_err());
        assert!(get_shift("charge_0").is_err());
    }

    #[test]
    fn charge_graph_shape() {
        let e = charge_constrained(2).unwrap();
        let g = e.presentation.as_sofic_graph().unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 4);
        assert!(e.presentation.is_irreducible().unwrap());
        let e3 = charge_constrained(3).unwrap();
        assert!(e3.presentation.is_irreducible().unwrap());
    }

    #[test]
    fn gicar_graph_has_a_loop_at_first_vertex() {
        let e = gicar_shift();
        let a = e.presentation.alphabet();
        assert_eq!(a.symbols(), &["a", "b", "c"]);
        let w = a.parse_word("abcbca").unwrap();
        assert!(e.presentation.contains_word(&w).unwrap());
        // c from the bottom vertex is impossible
        assert!(!e.presentation.contains_word(&a.parse_word("ac").unwrap()).unwrap());
    }

    #[test]
    fn anbn_c_loop_accepts_c_runs() {
        let e = anbn_c_loop_shift();
        let a = e.presentation.alphabet();
        assert!(e.presentation.contains_word(&a.parse_word("bcca").unwrap()).unwrap());
        // the loop vertex has no out-edge labeled b, and c is reachable
        // only at that vertex
        assert!(!e.presentation.contains_word(&a.parse_word("cb").unwrap()).unwrap());
        assert!(!e.presentation.contains_word(&a.parse_word("ac").unwrap()).unwrap());
        assert!(e.presentation.contains_word(&a.parse_word("ccc").unwrap()).unwrap());
    }

    #[test]
    fn substitution_examples() {
        let fib = Substitution::fibonacci();
        let a = fib.alphabet().clone();
        assert_eq!(
            a.display_word(&substitution_fixed_prefix(&fib, "a", 8).unwrap()),
            "abaababa"
        );
        let tm = Substitution::thue_morse();
        assert_eq!(
            a.display_word(&substitution_fixed_prefix(&tm, "a", 8).unwrap()),
            "abbabaab"
        );
        assert_eq!(
            a.display_word(&substitution_fixed_prefix(&fib, "a", 1).unwrap()),
            "a"
        );
        assert!(fib.is_primitive());
        assert!(tm.is_primitive());
        // b -> a is not self-prolongable
        assert!(matches!(
            substitution_fixed_prefix(&fib, "b", 4),
            Err(Error::SeedNotProlongable(_))
        ));
    }

    #[test]
    fn non_primitive_substitution_detected() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let s = Substitution::new(
            "split",
            a.clone(),
            vec![a.parse_word("aa").unwrap(), a.parse_word("bb").unwrap()],
        )
        .unwrap();
        assert!(!s.is_primitive());
    }

    #[test]
    fn charge_and_d_equivalence() {
        let a = gicar_shift().presentation.alphabet();
        let w = |t: &str| a.parse_word(t).unwrap();
        assert_eq!(charge(&a, &w("bbc")).unwrap(), 1);
        assert_eq!(charge(&a, &w("bc")).unwrap(), 0);
        assert!(d_equivalent(&a, &w("bc"), &w("cb")).unwrap());
        assert!(!d_equivalent(&a, &w("bb"), &w("bc")).unwrap());
        assert!(!d_equivalent(&a, &w("bc"), &w("bcbc")).unwrap());
        assert!(charge(&a, &w("abc")).is_err());
    }

    #[test]
    fn embedded_words_examples() {
        let a = Alphabet::new(["+1", "-1"]).unwrap();
        let l2 = embedded_subshift_words(2, 2).unwrap();
        let shown: Vec<String> = l2.iter().map(|w| a.display_word(w)).collect();
        assert_eq!(shown, vec!["+1 -1", "-1 +1"]);
        assert_eq!(embedded_subshift_words(3, 0).unwrap(), vec![Word::empty()]);
        for w in embedded_subshift_words(3, 4).unwrap() {
            assert!(charge_constrained(3)
                .unwrap()
                .presentation
                .contains_word(&w)
                .unwrap());
        }
    }

    #[test]
    fn minimal_fibonacci_language_embeds_factor_words() {
        let e = get_shift("minimal_fibonacci").unwrap();
        let a = e.presentation.alphabet();
        // factors of the fixed point are words; e-transitions too
        assert!(e.presentation.contains_word(&a.parse_word("abaab").unwrap()).unwrap());
        assert!(e.presentation.contains_word(&a.parse_word("ee").unwrap()).unwrap());
        assert!(e.presentation.contains_word(&a.parse_word("abae").unwrap()).unwrap());
        // bb never occurs in the fibonacci word
        assert!(!e.presentation.contains_word(&a.parse_word("bb").unwrap()).unwrap());
        // after e the spine restarts at the hub
        assert!(e.presentation.contains_word(&a.parse_word("eab").unwrap()).unwrap());
        assert!(!e.presentation.contains_word(&a.parse_word("eb").unwrap()).unwrap());
    }
}
