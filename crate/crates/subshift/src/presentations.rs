//! Shift-space presentations and their languages.
//!
//! A shift space enters the crate in one of four forms: a finite forbidden
//! word set, a finite labeled graph, a truncated member of one of the
//! built-in infinite graph families, or a substitution-generated hub graph.
//! The first two are language-exact.  For the last two, the language is
//! defined as path labels on a finite truncation and every answer carries a
//! completeness flag obtained by comparing two successive truncation levels
//! (for families) or prefix doublings (for substitution graphs).

use crate::bits::Bits;
use crate::graph::{LabeledGraph, Transfer};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default truncation rule: every path of total length `word_len +
/// 2*ext_len` on the infinite graph lies inside this truncation level.
pub fn truncation_radius(word_len: usize, ext_len: usize) -> usize {
    word_len + 2 * ext_len + 2
}

/// The infinite-graph families built into the crate, by name.
///
/// `graph_at(level)` instantiates the finite truncation; truncations are
/// monotone (the level-`n` graph embeds in the level-`n+1` graph on a
/// vertex-name-preserving map).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    /// Two-row staircase, right-resolving labeling (`a` along the top row,
    /// `b` down and along the bottom row, return edge `a` at column 1).
    AnbnRight,
    /// Two-row staircase, left-resolving labeling.
    AnbnLeft,
    /// `AnbnRight` with an extra `c`-loop at the bottom-left vertex.
    AnbnCLoop,
    /// Single spine with an `a`-loop at the first vertex, `b` edges up and
    /// `c` edges back down.
    GicarSpine,
}

impl GraphFamily {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            GraphFamily::AnbnRight | GraphFamily::AnbnLeft => {
                Alphabet::new(["a", "b"]).unwrap()
            }
            GraphFamily::AnbnCLoop | GraphFamily::GicarSpine => {
                Alphabet::new(["a", "b", "c"]).unwrap()
            }
        }
    }

    /// The staircase families interleave columns as v1,w1,v2,w2,... so that
    /// the truncation's adjacency matrix matches the recursive block form
    /// used in `spectra`.
    pub fn graph_at(&self, level: usize) -> LabeledGraph {
        let level = level.max(1);
        let alphabet = self.alphabet();
        match self {
            GraphFamily::AnbnRight | GraphFamily::AnbnLeft | GraphFamily::AnbnCLoop => {
                let a = 0u16;
                let b = 1u16;
                let mut vertices = Vec::with_capacity(2 * level);
                for i in 1..=level {
                    vertices.push(format!("v{i}"));
                    vertices.push(format!("w{i}"));
                }
                let v = |i: usize| 2 * (i - 1);
                let w = |i: usize| 2 * (i - 1) + 1;
                let mut edges = Vec::new();
                for i in 1..level {
                    // top row to the right
                    edges.push((v(i), v(i + 1), a));
                }
                for i in 1..=level {
                    // top to bottom in the same column
                    let label = if *self == GraphFamily::AnbnLeft { a } else { b };
                    edges.push((v(i), w(i), label));
                }
                // return edge at column 1
                let ret = if *self == GraphFamily::AnbnLeft { b } else { a };
                edges.push((w(1), v(1), ret));
                for i in 1..level {
                    // bottom row to the left
                    edges.push((w(i + 1), w(i), b));
                }
                if *self == GraphFamily::AnbnCLoop {
                    edges.push((w(1), w(1), 2));
                }
                LabeledGraph::from_indexed(alphabet, vertices, edges).unwrap()
            }
            GraphFamily::GicarSpine => {
                let vertices: Vec<String> = (1..=level).map(|i| format!("v{i}")).collect();
                let mut edges = vec![(0, 0, 0u16)]; // a-loop at v1
                for i in 0..level - 1 {
                    edges.push((i, i + 1, 1)); // b up
                    edges.push((i + 1, i, 2)); // c down
                }
                LabeledGraph::from_indexed(alphabet, vertices, edges).unwrap()
            }
        }
    }
}

/// Substitution data driving a hub-graph presentation: a non-erasing map on
/// the base alphabet plus a self-prolongable seed symbol.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubstitutionSystem {
    base_alphabet: Alphabet,
    /// Image word per symbol id of the base alphabet.
    rules: Vec<Word>,
    seed: u16,
    /// Starting point for the prefix-doubling stabilization.
    base_prefix: usize,
}

impl SubstitutionSystem {
    pub fn new(base_alphabet: Alphabet, rules: Vec<Word>, seed: u16, base_prefix: usize) -> Result<Self> {
        if rules.len() != base_alphabet.len() {
            return Err(Error::InvalidDocument("one rule per symbol required".into()));
        }
        if rules.iter().any(|r| r.is_empty()) {
            return Err(Error::ErasingSubstitution);
        }
        for r in &rules {
            r.check_alphabet(&base_alphabet)?;
        }
        let seed_image = &rules[seed as usize];
        if seed_image.ids().first() != Some(&seed) {
            return Err(Error::SeedNotProlongable(
                base_alphabet.symbol_name(seed).to_string(),
            ));
        }
        Ok(SubstitutionSystem { base_alphabet, rules, seed, base_prefix: base_prefix.max(8) })
    }

    pub fn base_alphabet(&self) -> &Alphabet {
        &self.base_alphabet
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn seed(&self) -> u16 {
        self.seed
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &id in w.ids() {
            out.extend_from_slice(self.rules[id as usize].ids());
        }
        Word::from_ids(out)
    }

    /// Length-`len` prefix of the one-sided fixed point grown from the seed.
    pub fn fixed_prefix(&self, len: usize) -> Word {
        let mut cur = Word::single(self.seed);
        while cur.len() < len {
            cur = self.apply(&cur);
        }
        cur.prefix(len)
    }

    /// Alphabet of the presented shift: the base alphabet plus the hub
    /// symbol `e` appended last.
    pub fn extended_alphabet(&self) -> Alphabet {
        let mut symbols: Vec<String> = self.base_alphabet.symbols().to_vec();
        symbols.push("e".to_string());
        Alphabet::new(symbols).unwrap()
    }

    pub fn hub_symbol(&self) -> u16 {
        self.base_alphabet.len() as u16
    }

    /// Hub graph over the length-`prefix` generated prefix: spine edges read
    /// the prefix, every spine vertex returns to the hub on `e`, and the hub
    /// carries an `e`-loop.
    pub fn hub_graph(&self, prefix: usize) -> LabeledGraph {
        let m = self.fixed_prefix(prefix);
        let alphabet = self.extended_alphabet();
        let e = self.hub_symbol();
        let vertices: Vec<String> = (0..=prefix).map(|i| format!("s{i}")).collect();
        let mut edges = vec![(0, 0, e)];
        for (i, &sym) in m.ids().iter().enumerate() {
            edges.push((i, i + 1, sym));
        }
        for i in 1..=prefix {
            edges.push((i, 0, e));
        }
        LabeledGraph::from_indexed(alphabet, vertices, edges).unwrap()
    }
}

/// A shift space in one of the four supported presentations.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum ShiftPresentation {
    ForbiddenWords { alphabet: Alphabet, forbidden: Vec<Word> },
    SoficGraph(LabeledGraph),
    TruncatedFamily(GraphFamily),
    SubstitutionGraph(SubstitutionSystem),
}

/// Result of a language enumeration: the words plus a completeness flag.
/// For language-exact presentations the flag is always true; for truncated
/// presentations it reports whether two successive truncations agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageSlice {
    pub words: Vec<Word>,
    pub complete: bool,
}

/// A finite graph realizing the presentation for bounded-length questions.
pub struct Compiled {
    pub graph: LabeledGraph,
    pub transfer: Transfer,
    /// True when answers about words of the requested total length are
    /// exact rather than truncation-limited.
    pub exact: bool,
}

impl ShiftPresentation {
    pub fn forbidden(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        if forbidden.is_empty() {
            return Err(Error::EmptyForbiddenSet);
        }
        for w in &forbidden {
            w.check_alphabet(&alphabet)?;
        }
        let n = forbidden.iter().map(Word::len).max().unwrap_or(0);
        if n < 2 {
            return Err(Error::ForbiddenWordsTooShort(n));
        }
        Ok(ShiftPresentation::ForbiddenWords { alphabet, forbidden })
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            ShiftPresentation::ForbiddenWords { alphabet, .. } => alphabet.clone(),
            ShiftPresentation::SoficGraph(g) => g.alphabet().clone(),
            ShiftPresentation::TruncatedFamily(f) => f.alphabet(),
            ShiftPresentation::SubstitutionGraph(s) => s.extended_alphabet(),
        }
    }

    pub fn as_sofic_graph(&self) -> Result<&LabeledGraph> {
        match self {
            ShiftPresentation::SoficGraph(g) => Ok(g),
            _ => Err(Error::NotSofic),
        }
    }

    /// Realize the presentation as a finite graph adequate for questions
    /// about words of length `word_len` with two-sided extensions of length
    /// up to `ext_len`.
    pub fn compile(&self, word_len: usize, ext_len: usize) -> Result<Compiled> {
        match self {
            ShiftPresentation::ForbiddenWords { alphabet, forbidden } => {
                let graph = edge_shift_from_forbidden(forbidden, alphabet)?;
                let transfer = graph.transfer();
                Ok(Compiled { graph, transfer, exact: true })
            }
            ShiftPresentation::SoficGraph(g) => {
                Ok(Compiled { graph: g.clone(), transfer: g.transfer(), exact: true })
            }
            ShiftPresentation::TruncatedFamily(f) => {
                let level = truncation_radius(word_len, ext_len);
                let graph = f.graph_at(level);
                let transfer = graph.transfer();
                Ok(Compiled { graph, transfer, exact: true })
            }
            ShiftPresentation::SubstitutionGraph(s) => {
                let total = word_len + 2 * ext_len;
                let (prefix, exact) = stabilized_prefix(s, total);
                let graph = s.hub_graph(prefix);
                let transfer = graph.transfer();
                Ok(Compiled { graph, transfer, exact })
            }
        }
    }

    /// Exactly the length-`n` words of the presented language, in
    /// lexicographic order of the alphabet.  `n = 0` yields the empty word.
    pub fn language(&self, n: usize) -> Result<LanguageSlice> {
        match self {
            ShiftPresentation::ForbiddenWords { .. } | ShiftPresentation::SoficGraph(_) => {
                let compiled = self.compile(n, 0)?;
                Ok(LanguageSlice {
                    words: enumerate_on(&compiled.transfer, self.alphabet().len(), n),
                    complete: true,
                })
            }
            ShiftPresentation::TruncatedFamily(f) => {
                let level = truncation_radius(n, 0);
                let at = |l: usize| {
                    let g = f.graph_at(l);
                    enumerate_on(&g.transfer(), f.alphabet().len(), n)
                };
                let words = at(level + 1);
                let complete = at(level) == words;
                Ok(LanguageSlice { words, complete })
            }
            ShiftPresentation::SubstitutionGraph(s) => {
                let (prefix, complete) = stabilized_prefix(s, n);
                let g = s.hub_graph(prefix);
                let words = enumerate_on(&g.transfer(), s.extended_alphabet().len(), n);
                Ok(LanguageSlice { words, complete })
            }
        }
    }

    /// Membership of `w` in the presented language (truncation-exact for
    /// the infinite presentations, see the module notes).
    pub fn contains_word(&self, w: &Word) -> Result<bool> {
        w.check_alphabet(&self.alphabet())?;
        let compiled = self.compile(w.len(), 0)?;
        Ok(compiled.transfer.accepts(w))
    }

    /// Strong connectivity of a graph presentation.
    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.as_sofic_graph()?.is_irreducible())
    }

    pub fn to_document(&self) -> ShiftDocument {
        ShiftDocument::from_presentation(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ShiftDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDocument(e.to_string()))?;
        doc.into_presentation()
    }
}

/// Grow the generated prefix by doubling until the number of distinct
/// length-`n` factors of the prefix stabilizes across one doubling.  Gives
/// (chosen prefix, stabilized?).  Every spine segment of a hub-graph path
/// other than the first reads the base word from its start, so language
/// questions at total length `n` only need the prefix to exhibit all
/// length-`n` factors of the base word.
fn stabilized_prefix(s: &SubstitutionSystem, n: usize) -> (usize, bool) {
    if n == 0 {
        return (s.base_prefix, true);
    }
    let mut p = s.base_prefix.max(2 * n);
    let cap = 1 << 14;
    let count_at = |prefix: usize| {
        let m = s.fixed_prefix(prefix);
        let mut seen = std::collections::BTreeSet::new();
        for window in m.ids().windows(n.min(m.len())) {
            seen.insert(window.to_vec());
        }
        seen.len()
    };
    let mut here = count_at(p);
    while p < cap {
        let next = count_at(2 * p);
        if next == here {
            return (2 * p, true);
        }
        here = next;
        p *= 2;
    }
    (p, false)
}

/// All length-`n` label words of paths on `t`, lexicographically ordered.
pub(crate) fn enumerate_on(t: &Transfer, alphabet_len: usize, n: usize) -> Vec<Word> {
    let mut frontier: Vec<(Word, Bits)> = vec![(Word::empty(), Bits::full(t.vertex_count()))];
    for _ in 0..n {
        let mut next = Vec::new();
        for (w, set) in &frontier {
            for label in 0..alphabet_len as u16 {
                let stepped = t.step_forward(set, label);
                if !stepped.is_empty() {
                    next.push((w.push(label), stepped));
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().map(|(w, _)| w).collect()
}

/// Higher-block graph of the shift of finite type with forbidden set `F`.
///
/// With `N` the maximum forbidden length, vertices are the length-`N-1`
/// words of the shift, edges its length-`N` words, and each edge is labeled
/// by the last symbol of its word.  Vertices that cannot lie on a
/// bi-infinite path are trimmed, so vertex and edge sets are exactly the
/// language slices of the shift.
pub fn edge_shift_from_forbidden(forbidden: &[Word], alphabet: &Alphabet) -> Result<LabeledGraph> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    if forbidden.is_empty() {
        return Err(Error::EmptyForbiddenSet);
    }
    for w in forbidden {
        w.check_alphabet(alphabet)?;
    }
    let n = forbidden.iter().map(Word::len).max().unwrap();
    if n < 2 {
        return Err(Error::ForbiddenWordsTooShort(n));
    }

    let avoids = |w: &Word| forbidden.iter().all(|f| !f.is_subword_of(w));
    let mut vertices: Vec<Word> = all_words(alphabet.len(), n - 1).into_iter().filter(|w| avoids(w)).collect();
    let mut edges: Vec<Word> = all_words(alphabet.len(), n).into_iter().filter(|w| avoids(w)).collect();

    // keep only the recurrent part: every vertex needs an in- and out-edge
    loop {
        let has_out: Vec<bool> = vertices
            .iter()
            .map(|v| edges.iter().any(|e| e.prefix(n - 1) == *v))
            .collect();
        let has_in: Vec<bool> = vertices
            .iter()
            .map(|v| edges.iter().any(|e| e.suffix(n - 1) == *v))
            .collect();
        let keep: Vec<Word> = vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| has_out[i] && has_in[i])
            .map(|(_, v)| v.clone())
            .collect();
        if keep.len() == vertices.len() {
            break;
        }
        vertices = keep;
        edges.retain(|e| {
            vertices.contains(&e.prefix(n - 1)) && vertices.contains(&e.suffix(n - 1))
        });
    }
    if vertices.is_empty() {
        return Err(Error::EmptyLanguage);
    }

    let names: Vec<String> = vertices.iter().map(|v| alphabet.display_word(v)).collect();
    let index = |w: &Word| vertices.iter().position(|v| v == w).unwrap();
    let built: Vec<(usize, usize, u16)> = edges
        .iter()
        .map(|e| {
            let label = *e.ids().last().unwrap();
            (index(&e.prefix(n - 1)), index(&e.suffix(n - 1)), label)
        })
        .collect();
    LabeledGraph::from_indexed(alphabet.clone(), names, built)
}

fn all_words(alphabet_len: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * alphabet_len);
        for w in &out {
            for s in 0..alphabet_len as u16 {
                next.push(w.push(s));
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------------
// versioned JSON documents ("subshift/v1")
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct ShiftDocument {
    pub schema: String,
    pub alphabet: Vec<String>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<GraphFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub substitution: Option<SubstitutionDocument>,
}

#[derive(Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

#[derive(Serialize, Deserialize)]
pub struct SubstitutionDocument {
    pub rules: BTreeMap<String, String>,
    pub seed: String,
    pub prefix: usize,
}

impl ShiftDocument {
    fn from_presentation(p: &ShiftPresentation) -> Self {
        let alphabet = p.alphabet();
        let mut doc = ShiftDocument {
            schema: "subshift/v1".to_string(),
            alphabet: alphabet.symbols().to_vec(),
            kind: String::new(),
            forbidden: None,
            graph: None,
            family: None,
            substitution: None,
        };
        match p {
            ShiftPresentation::ForbiddenWords { alphabet, forbidden } => {
                doc.kind = "forbidden".into();
                doc.forbidden =
                    Some(forbidden.iter().map(|w| alphabet.display_word(w)).collect());
            }
            ShiftPresentation::SoficGraph(g) => {
                doc.kind = "graph".into();
                doc.graph = Some(GraphDocument {
                    vertices: g.vertex_names().to_vec(),
                    edges: g
                        .edges()
                        .iter()
                        .map(|&(s, t, l)| {
                            (
                                g.vertex_names()[s].clone(),
                                g.vertex_names()[t].clone(),
                                g.alphabet().symbol_name(l).to_string(),
                            )
                        })
                        .collect(),
                });
            }
            ShiftPresentation::TruncatedFamily(f) => {
                doc.kind = "family".into();
                doc.family = Some(*f);
            }
            ShiftPresentation::SubstitutionGraph(s) => {
                doc.kind = "substitution".into();
                doc.alphabet = s.base_alphabet().symbols().to_vec();
                let mut rules = BTreeMap::new();
                for (i, r) in s.rules().iter().enumerate() {
                    rules.insert(
                        s.base_alphabet().symbol_name(i as u16).to_string(),
                        s.base_alphabet().display_word(r),
                    );
                }
                doc.substitution = Some(SubstitutionDocument {
                    rules,
                    seed: s.base_alphabet().symbol_name(s.seed()).to_string(),
                    prefix: s.base_prefix,
                });
            }
        }
        doc
    }

    pub fn into_presentation(self) -> Result<ShiftPresentation> {
        let alphabet = Alphabet::new(self.alphabet.clone())?;
        match self.kind.as_str() {
            "forbidden" => {
                let raw = self
                    .forbidden
                    .ok_or_else(|| Error::InvalidDocument("missing forbidden list".into()))?;
                let mut words = Vec::new();
                for t in raw {
                    words.push(alphabet.parse_word(&t)?);
                }
                ShiftPresentation::forbidden(alphabet, words)
            }
            "graph" => {
                let g = self
                    .graph
                    .ok_or_else(|| Error::InvalidDocument("missing graph".into()))?;
                Ok(ShiftPresentation::SoficGraph(LabeledGraph::new(
                    alphabet,
                    g.vertices,
                    g.edges,
                )?))
            }
            "family" => Ok(ShiftPresentation::TruncatedFamily(self.family.ok_or_else(
                || Error::InvalidDocument("missing family name".into()),
            )?)),
            "substitution" => {
                let s = self
                    .substitution
                    .ok_or_else(|| Error::InvalidDocument("missing substitution".into()))?;
                let mut rules = vec![Word::empty(); alphabet.len()];
                for (sym, image) in &s.rules {
                    let id = alphabet.index_of(sym)?;
                    rules[id as usize] = alphabet.parse_word(image)?;
                }
                let seed = alphabet.index_of(&s.seed)?;
                Ok(ShiftPresentation::SubstitutionGraph(SubstitutionSystem::new(
                    alphabet, rules, seed, s.prefix,
                )?))
            }
            other => Err(Error::InvalidDocument(format!("unknown kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::binary()
    }

    #[test]
    fn golden_mean_higher_block_graph() {
        let a = binary();
        let f = vec![a.parse_word("11").unwrap()];
        let g = edge_shift_from_forbidden(&f, &a).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().len(), 3);
        assert!(g.is_right_resolving());
    }

    #[test]
    fn forbidden_set_must_be_nonempty() {
        let a = binary();
        assert!(matches!(
            edge_shift_from_forbidden(&[], &a),
            Err(Error::EmptyForbiddenSet)
        ));
    }

    #[test]
    fn forbidden_symbols_checked() {
        let a = binary();
        let w = Word::from_ids(vec![0, 7]);
        assert!(edge_shift_from_forbidden(&[w], &a).is_err());
    }

    #[test]
    fn full_shift_language() {
        let a = binary();
        let g = LabeledGraph::new(
            a,
            ["*"],
            [
                ("*".into(), "*".into(), "0".into()),
                ("*".into(), "*".into(), "1".into()),
            ],
        )
        .unwrap();
        let p = ShiftPresentation::SoficGraph(g);
        let l3 = p.language(3).unwrap();
        assert_eq!(l3.words.len(), 8);
        assert!(l3.complete);
        assert_eq!(p.language(0).unwrap().words, vec![Word::empty()]);
    }

    #[test]
    fn truncation_radius_rule() {
        assert_eq!(truncation_radius(5, 3), 13);
        assert_eq!(truncation_radius(0, 0), 2);
        assert_eq!(truncation_radius(4, 4), 14);
    }

    #[test]
    fn anbn_language_small() {
        let p = ShiftPresentation::TruncatedFamily(GraphFamily::AnbnRight);
        let a = p.alphabet();
        let l2 = p.language(2).unwrap();
        let words: Vec<String> = l2.words.iter().map(|w| a.display_word(w)).collect();
        assert_eq!(words, vec!["aa", "ab", "ba", "bb"]);
        assert!(l2.complete);
    }

    #[test]
    fn anbn_internal_run_mismatch_rejected() {
        let p = ShiftPresentation::TruncatedFamily(GraphFamily::AnbnRight);
        let a = p.alphabet();
        assert!(!p.contains_word(&a.parse_word("aaba").unwrap()).unwrap());
        assert!(p.contains_word(&a.parse_word("abba").unwrap()).unwrap());
        assert!(!p.contains_word(&a.parse_word("babba").unwrap()).unwrap());
        assert!(p.contains_word(&a.parse_word("baabba").unwrap()).unwrap());
    }

    #[test]
    fn anbn_left_and_right_labelings_agree() {
        let l = ShiftPresentation::TruncatedFamily(GraphFamily::AnbnLeft);
        let r = ShiftPresentation::TruncatedFamily(GraphFamily::AnbnRight);
        for n in 0..=7 {
            assert_eq!(l.language(n).unwrap().words, r.language(n).unwrap().words, "n={n}");
        }
    }

    #[test]
    fn substitution_fixed_prefixes() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let fib = SubstitutionSystem::new(
            a.clone(),
            vec![a.parse_word("ab").unwrap(), a.parse_word("a").unwrap()],
            0,
            8,
        )
        .unwrap();
        assert_eq!(a.display_word(&fib.fixed_prefix(8)), "abaababa");

        let tm = SubstitutionSystem::new(
            a.clone(),
            vec![a.parse_word("ab").unwrap(), a.parse_word("ba").unwrap()],
            0,
            8,
        )
        .unwrap();
        assert_eq!(a.display_word(&tm.fixed_prefix(8)), "abbabaab");
        assert_eq!(a.display_word(&tm.fixed_prefix(1)), "a");
    }

    #[test]
    fn substitution_seed_must_prolong() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let bad = SubstitutionSystem::new(
            a.clone(),
            vec![a.parse_word("ba").unwrap(), a.parse_word("a").unwrap()],
            0,
            8,
        );
        assert!(matches!(bad, Err(Error::SeedNotProlongable(_))));
    }

    #[test]
    fn json_document_roundtrip() {
        let p = ShiftPresentation::TruncatedFamily(GraphFamily::GicarSpine);
        let json = p.to_json();
        let q = ShiftPresentation::from_json(&json).unwrap();
        assert_eq!(p, q);
    }
}
