//! Leveled diagrams of context classes and their transition matrices.
//!
//! Three builders are provided.  The homoclinic diagram has a singleton
//! root, level `n` the context classes of the window-`(2n+1)` language, and
//! an edge per single-symbol extension pair.  The stable (respectively
//! unstable) diagrams are anchored at a synchronizing periodic point: level
//! `n` holds the one-sided context classes of the length-`n` right
//! (respectively left) extensions of the point's ray, with an edge per
//! single-symbol extension.  Multiplicities are stored as integer matrix
//! entries, never parallel edge lists, so the K-theoretic analysis stays
//! exact.
//!
//! Vertex order within a level is deterministic and is chosen so that the
//! emitted matrices are reproducible: homoclinic levels are ordered by
//! descending greatest class member, heteroclinic levels place the class of
//! the periodic point's own tail first and order the rest by ascending
//! least member.  Both rules are recorded here and mirrored by the exports.

use crate::bits::Bits;
use crate::contexts::{partition_with, Engine, ExtLenRule, Interner};
use crate::graph::Transfer;
use crate::ktheory::IntMatrix;
use crate::presentations::ShiftPresentation;
use crate::words::{Alphabet, Word};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A context class shown as one diagram vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVertex {
    /// Lexicographically least member of the class.
    pub rep: Word,
    pub sync: bool,
    /// Full class membership; empty for the root vertex.
    pub words: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub vertices: Vec<LevelVertex>,
    /// Bounded extension length used for the context decisions at this
    /// level; `None` when the decisions were exact.
    pub ext_len: Option<usize>,
}

impl Level {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    Homoclinic,
    SyncRestricted,
    Stable { period: Word, phase: i64, ray: usize },
    Unstable { period: Word, phase: i64, ray: usize },
}

/// A leveled diagram with multiplicity-labeled edges stored as integer
/// transition matrices: `matrices[n]` is `|V_{n+1}| x |V_n|`.
#[derive(Clone, Debug, PartialEq)]
pub struct BratteliDiagram {
    alphabet: Alphabet,
    kind: DiagramKind,
    levels: Vec<Level>,
    matrices: Vec<IntMatrix>,
}

impl BratteliDiagram {
    pub fn from_parts(
        alphabet: Alphabet,
        kind: DiagramKind,
        levels: Vec<Level>,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self> {
        let d = BratteliDiagram { alphabet, kind, levels, matrices };
        d.validate()?;
        Ok(d)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> &DiagramKind {
        &self.kind
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Level::size).collect()
    }

    pub fn transition_matrix(&self, n: usize) -> Result<IntMatrix> {
        self.matrices
            .get(n)
            .cloned()
            .ok_or(Error::LevelOutOfRange(n, self.levels.len()))
    }

    /// Structural invariants: matrix dimensions match the level sizes, all
    /// entries are nonnegative, and edges out of synchronizing vertices
    /// land on synchronizing vertices.
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() || self.matrices.len() + 1 != self.levels.len() {
            return Err(Error::DimensionMismatch(
                "need one matrix between consecutive levels".into(),
            ));
        }
        for (n, m) in self.matrices.iter().enumerate() {
            if m.rows() != self.levels[n + 1].size() || m.cols() != self.levels[n].size() {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {n} is {}x{}, levels are {} and {}",
                    m.rows(),
                    m.cols(),
                    self.levels[n + 1].size(),
                    self.levels[n].size()
                )));
            }
            if !m.is_nonnegative() {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {n} has a negative entry"
                )));
            }
            for j in 0..m.cols() {
                if !self.levels[n].vertices[j].sync {
                    continue;
                }
                for i in 0..m.rows() {
                    use num_traits::Zero;
                    if !m.get(i, j).is_zero() && !self.levels[n + 1].vertices[i].sync {
                        return Err(Error::DimensionMismatch(format!(
                            "sync vertex {j} at level {n} reaches non-sync vertex {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Root-to-vertex path counts at each level, edges counted with
    /// multiplicity.
    pub fn path_counts(&self, level: usize) -> Result<Vec<num_bigint::BigInt>> {
        if level >= self.levels.len() {
            return Err(Error::LevelOutOfRange(level, self.levels.len()));
        }
        let mut v = IntMatrix::identity(self.levels[0].size());
        for m in &self.matrices[..level] {
            v = m.mul(&v).expect("validated dims");
        }
        Ok((0..v.rows()).map(|i| v.get(i, 0).clone()).collect())
    }
}

// ---------------------------------------------------------------------------
// homoclinic diagram
// ---------------------------------------------------------------------------

/// A built level together with its classifier, so extensions can be routed
/// to their target class.
struct ClassifiedLevel {
    level: Level,
    engine: Engine,
    intern: Interner,
    sig_to_idx: HashMap<Vec<u32>, usize>,
}

fn is_language_exact(p: &ShiftPresentation) -> bool {
    matches!(
        p,
        ShiftPresentation::SoficGraph(_) | ShiftPresentation::ForbiddenWords { .. }
    )
}

fn classified_level(
    p: &ShiftPresentation,
    window: usize,
    rule: ExtLenRule,
) -> Result<ClassifiedLevel> {
    let exact = is_language_exact(p);
    let words = p.language(window)?.words;
    if words.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let k = rule.for_len(window);
    let (engine, ext_len) = if exact {
        (Engine::exact(&p.compile(window, 0)?.graph)?, None)
    } else {
        (Engine::bounded(&p.compile(window, k)?.graph, k)?, Some(k))
    };
    let mut classes = partition_with(&engine, &words, exact);
    // descending greatest member; members arrive lex-sorted
    classes.sort_by(|a, b| b.words.last().cmp(&a.words.last()));
    let mut intern = Interner::default();
    let mut sig_to_idx = HashMap::new();
    let mut vertices = Vec::with_capacity(classes.len());
    for (i, c) in classes.iter().enumerate() {
        let d = engine.word_data(&c.rep);
        sig_to_idx.insert(engine.signature(&d, &mut intern), i);
        vertices.push(LevelVertex { rep: c.rep.clone(), sync: c.sync, words: c.words.clone() });
    }
    Ok(ClassifiedLevel { level: Level { vertices, ext_len }, engine, intern, sig_to_idx })
}

/// Build the homoclinic diagram to `depth` word levels: a singleton root,
/// then the context classes of the window `1, 3, ..., 2*depth - 1`
/// languages, with one edge per single-symbol extension pair.
pub fn build_lc_diagram(p: &ShiftPresentation, depth: usize) -> Result<BratteliDiagram> {
    build_lc_diagram_with(p, depth, ExtLenRule::TwiceLenPlus4)
}

/// As [`build_lc_diagram`] with an explicit bounded-extension rule for
/// non-sofic presentations.
pub fn build_lc_diagram_with(
    p: &ShiftPresentation,
    depth: usize,
    rule: ExtLenRule,
) -> Result<BratteliDiagram> {
    if depth == 0 {
        return Err(Error::ParamOutOfRange("depth must be >= 1".into()));
    }
    let alphabet = p.alphabet();
    let mut built: Vec<ClassifiedLevel> = Vec::with_capacity(depth);
    for n in 0..depth {
        built.push(classified_level(p, 2 * n + 1, rule)?);
    }

    let root = Level {
        vertices: vec![LevelVertex { rep: Word::empty(), sync: false, words: vec![] }],
        ext_len: None,
    };
    let mut matrices = Vec::with_capacity(depth);
    let mut m0 = IntMatrix::zeros(built[0].level.size(), 1);
    for (i, v) in built[0].level.vertices.iter().enumerate() {
        m0.add_to(i, 0, v.words.len() as i64);
    }
    matrices.push(m0);

    for n in 0..depth - 1 {
        let (src_slice, tgt_slice) = built.split_at_mut(n + 1);
        let src = &src_slice[n];
        let tgt = &mut tgt_slice[0];
        let mut m = IntMatrix::zeros(tgt.level.size(), src.level.size());
        for (ci, v) in src.level.vertices.iter().enumerate() {
            for a in alphabet.ids() {
                for b in alphabet.ids() {
                    let ext = v.rep.prepend(a).push(b);
                    let data = tgt.engine.word_data(&ext);
                    if !tgt.engine.in_language(&data) {
                        continue;
                    }
                    let sig = tgt.engine.signature(&data, &mut tgt.intern);
                    let ti = *tgt.sig_to_idx.get(&sig).ok_or_else(|| {
                        Error::DimensionMismatch("extension escaped the level partition".into())
                    })?;
                    m.add_to(ti, ci, 1);
                }
            }
        }
        matrices.push(m);
    }

    let mut levels = vec![root];
    levels.extend(built.into_iter().map(|b| b.level));
    BratteliDiagram::from_parts(alphabet, DiagramKind::Homoclinic, levels, matrices)
}

/// Restrict a diagram to its synchronizing vertices.  Leading levels
/// without synchronizing vertices are dropped; errors when no level has
/// any.
pub fn restrict_sync(d: &BratteliDiagram) -> Result<BratteliDiagram> {
    let first = d
        .levels
        .iter()
        .position(|l| l.vertices.iter().any(|v| v.sync))
        .ok_or(Error::NoSyncVertices)?;
    let keep: Vec<Vec<usize>> = d.levels[first..]
        .iter()
        .map(|l| {
            l.vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.sync)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    if keep.iter().any(Vec::is_empty) {
        // sync vertices are upward closed, so this indicates a broken input
        return Err(Error::NoSyncVertices);
    }
    let levels: Vec<Level> = d.levels[first..]
        .iter()
        .zip(&keep)
        .map(|(l, idx)| Level {
            vertices: idx.iter().map(|&i| l.vertices[i].clone()).collect(),
            ext_len: l.ext_len,
        })
        .collect();
    let matrices: Vec<IntMatrix> = (0..levels.len() - 1)
        .map(|n| d.matrices[first + n].submatrix(&keep[n + 1], &keep[n]))
        .collect();
    BratteliDiagram::from_parts(d.alphabet.clone(), DiagramKind::SyncRestricted, levels, matrices)
}

// ---------------------------------------------------------------------------
// heteroclinic diagrams
// ---------------------------------------------------------------------------

/// Which side of the periodic point a heteroclinic diagram grows on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Stable,
    Unstable,
}

/// A periodic point given by its period word and phase; the symbol at
/// position `i` of the point is `period[(i + phase) mod |period|]`.
fn point_symbol(period: &Word, phase: i64, i: i64) -> u16 {
    let len = period.len() as i64;
    let idx = ((i + phase) % len + len) % len;
    period.ids()[idx as usize]
}

fn point_word(period: &Word, phase: i64, from: i64, to_inclusive: i64) -> Word {
    Word::from_ids((from..=to_inclusive).map(|i| point_symbol(period, phase, i)).collect())
}

/// Verify periodicity and locate a synchronizing window of the ray: the
/// shortest suffix of whole periods that the presentation certifies
/// synchronizing (exactly for sofic presentations, by non-refutation at
/// `k = 2|s| + 4` otherwise).
fn sync_window(
    p: &ShiftPresentation,
    period: &Word,
    phase: i64,
    ray: usize,
    side: Side,
    depth: usize,
) -> Result<Word> {
    let alphabet = p.alphabet();
    period.check_alphabet(&alphabet)?;
    if period.is_empty() {
        return Err(Error::ParamOutOfRange("period word must be non-empty".into()));
    }
    let repeats = (2 * (depth + ray) + 8).div_ceil(period.len()) + 1;
    if !p.contains_word(&period.repeated(repeats))? {
        return Err(Error::NotPeriodic(alphabet.display_word(period)));
    }
    for multiple in 1..=4 {
        let j = multiple * period.len();
        let s = match side {
            Side::Stable => {
                let hi = -(ray as i64);
                point_word(period, phase, hi - j as i64 + 1, hi)
            }
            Side::Unstable => {
                let lo = ray as i64;
                point_word(period, phase, lo, lo + j as i64 - 1)
            }
        };
        if !p.contains_word(&s)? {
            continue;
        }
        let verdict = if is_language_exact(p) {
            crate::contexts::is_synchronizing_exact(p.as_sofic_graph()?, &s)?
        } else {
            !crate::contexts::is_synchronizing_bounded(p, &s, 2 * s.len() + 4)?.is_refuted()
        };
        if verdict {
            return Ok(s);
        }
    }
    Err(Error::NotSynchronizing(alphabet.display_word(period)))
}

struct OneSidedLevel {
    level: Level,
    engine: Engine,
    mask_to_idx: HashMap<Bits, usize>,
}

fn forward_extensions(t: &Transfer, alphabet_len: usize, start: &Bits, n: usize) -> Vec<Word> {
    let mut frontier = vec![(Word::empty(), start.clone())];
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

fn backward_extensions(t: &Transfer, alphabet_len: usize, start: &Bits, n: usize) -> Vec<Word> {
    let mut frontier = vec![(Word::empty(), start.clone())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (w, set) in &frontier {
            for label in 0..alphabet_len as u16 {
                let stepped = t.step_backward(set, label);
                if !stepped.is_empty() {
                    next.push((w.prepend(label), stepped));
                }
            }
        }
        frontier = next;
    }
    let mut words: Vec<Word> = frontier.into_iter().map(|(w, _)| w).collect();
    words.sort();
    words
}

fn one_sided_level(
    p: &ShiftPresentation,
    window: &Word,
    side: Side,
    n: usize,
    p_tail: &Word,
    rule: ExtLenRule,
) -> Result<OneSidedLevel> {
    let exact = is_language_exact(p);
    let k = rule.for_len(n);
    let total = window.len() + n;
    let compiled = if exact { p.compile(total, 0)? } else { p.compile(total, k)? };
    let engine = if exact {
        Engine::exact(&compiled.graph)?
    } else {
        Engine::bounded(&compiled.graph, k)?
    };
    let alphabet_len = p.alphabet().len();

    let words = match side {
        Side::Stable => {
            let start = engine.transfer.word_targets(window);
            forward_extensions(&engine.transfer, alphabet_len, &start, n)
        }
        Side::Unstable => {
            let start = engine.transfer.word_sources(window);
            backward_extensions(&engine.transfer, alphabet_len, &start, n)
        }
    };
    if words.is_empty() {
        return Err(Error::EmptyLanguage);
    }

    let mask_of = |w: &Word| -> Bits {
        let full = match side {
            Side::Stable => window.concat(w),
            Side::Unstable => w.concat(window),
        };
        let data = engine.word_data(&full);
        match side {
            Side::Stable => engine.right_mask(&data),
            Side::Unstable => engine.left_mask(&data),
        }
    };

    // group by one-sided mask; insertion order = ascending least member
    let mut classes: Vec<(Bits, Vec<Word>)> = Vec::new();
    for w in &words {
        let mask = mask_of(w);
        match classes.iter_mut().find(|(m, _)| *m == mask) {
            Some((_, members)) => members.push(w.clone()),
            None => classes.push((mask, vec![w.clone()])),
        }
    }
    // the class of the periodic point's own tail comes first
    let tail_pos = classes
        .iter()
        .position(|(_, members)| members.contains(p_tail))
        .ok_or_else(|| Error::NotPeriodic(p.alphabet().display_word(p_tail)))?;
    let tail_class = classes.remove(tail_pos);
    classes.insert(0, tail_class);

    let mut mask_to_idx = HashMap::new();
    let mut vertices = Vec::with_capacity(classes.len());
    for (i, (mask, members)) in classes.into_iter().enumerate() {
        mask_to_idx.insert(mask, i);
        vertices.push(LevelVertex { rep: members[0].clone(), sync: true, words: members });
    }
    Ok(OneSidedLevel {
        level: Level { vertices, ext_len: if exact { None } else { Some(k) } },
        engine,
        mask_to_idx,
    })
}

fn build_heteroclinic(
    p: &ShiftPresentation,
    period: &Word,
    phase: i64,
    ray: usize,
    depth: usize,
    side: Side,
) -> Result<BratteliDiagram> {
    if depth == 0 {
        return Err(Error::ParamOutOfRange("depth must be >= 1".into()));
    }
    let alphabet = p.alphabet();
    let window = sync_window(p, period, phase, ray, side, depth)?;
    let rule = ExtLenRule::LenPlus(4);

    let mut built: Vec<OneSidedLevel> = Vec::with_capacity(depth);
    for n in 1..=depth {
        let p_tail = match side {
            Side::Stable => {
                let lo = -(ray as i64) + 1;
                point_word(period, phase, lo, lo + n as i64 - 1)
            }
            Side::Unstable => {
                let hi = ray as i64 - 1;
                point_word(period, phase, hi - n as i64 + 1, hi)
            }
        };
        built.push(one_sided_level(p, &window, side, n, &p_tail, rule)?);
    }

    let root = Level {
        vertices: vec![LevelVertex { rep: Word::empty(), sync: true, words: vec![] }],
        ext_len: None,
    };
    let mut matrices = Vec::with_capacity(depth);
    let mut m0 = IntMatrix::zeros(built[0].level.size(), 1);
    for (i, v) in built[0].level.vertices.iter().enumerate() {
        m0.add_to(i, 0, v.words.len() as i64);
    }
    matrices.push(m0);

    for n in 0..depth - 1 {
        let (src_slice, tgt_slice) = built.split_at_mut(n + 1);
        let src = &src_slice[n];
        let tgt = &tgt_slice[0];
        let mut m = IntMatrix::zeros(tgt.level.size(), src.level.size());
        for (ci, v) in src.level.vertices.iter().enumerate() {
            for label in alphabet.ids() {
                let ext = match side {
                    Side::Stable => v.rep.push(label),
                    Side::Unstable => v.rep.prepend(label),
                };
                let full = match side {
                    Side::Stable => window.concat(&ext),
                    Side::Unstable => ext.concat(&window),
                };
                let data = tgt.engine.word_data(&full);
                if !tgt.engine.in_language(&data) {
                    continue;
                }
                let mask = match side {
                    Side::Stable => tgt.engine.right_mask(&data),
                    Side::Unstable => tgt.engine.left_mask(&data),
                };
                let ti = *tgt.mask_to_idx.get(&mask).ok_or_else(|| {
                    Error::DimensionMismatch("extension escaped the level partition".into())
                })?;
                m.add_to(ti, ci, 1);
            }
        }
        matrices.push(m);
    }

    let mut levels = vec![root];
    levels.extend(built.into_iter().map(|b| b.level));
    let kind = match side {
        Side::Stable => DiagramKind::Stable { period: period.clone(), phase, ray },
        Side::Unstable => DiagramKind::Unstable { period: period.clone(), phase, ray },
    };
    BratteliDiagram::from_parts(alphabet, kind, levels, matrices)
}

/// Stable diagram at ray offset `ray` for the periodic point
/// `(period, phase)`: level `n` classifies the length-`n` right extensions
/// of the left-infinite ray by one-sided context equality.
pub fn build_lcs_diagram(
    p: &ShiftPresentation,
    period: &Word,
    phase: i64,
    ray: usize,
    depth: usize,
) -> Result<BratteliDiagram> {
    build_heteroclinic(p, period, phase, ray, depth, Side::Stable)
}

/// Left/right mirror of [`build_lcs_diagram`].
pub fn build_lcu_diagram(
    p: &ShiftPresentation,
    period: &Word,
    phase: i64,
    ray: usize,
    depth: usize,
) -> Result<BratteliDiagram> {
    build_heteroclinic(p, period, phase, ray, depth, Side::Unstable)
}

/// Inclusion of the ray-`N` diagram into the ray-`N+1` diagram built from
/// the same periodic point: level-`n` vertices map injectively into
/// level-`n+1` vertices, consistently with the edges.  `maps[l][i]` is the
/// index at level `l + 1` of `other` of vertex `i` at level `l` of `this`.
pub fn level_inclusion(
    this: &BratteliDiagram,
    other: &BratteliDiagram,
) -> Result<Vec<Vec<usize>>> {
    // identity when the ray offset is unchanged
    if this.kind == other.kind && this.level_sizes() == other.level_sizes() {
        return Ok(this
            .levels
            .iter()
            .map(|l| (0..l.size()).collect())
            .collect());
    }
    let (period, phase, ray, stable) = match (&this.kind, &other.kind) {
        (
            DiagramKind::Stable { period: p1, phase: f1, ray: r1 },
            DiagramKind::Stable { period: p2, phase: f2, ray: r2 },
        ) if p1 == p2 && f1 == f2 && *r2 == r1 + 1 => (p1, *f1, *r1, true),
        (
            DiagramKind::Unstable { period: p1, phase: f1, ray: r1 },
            DiagramKind::Unstable { period: p2, phase: f2, ray: r2 },
        ) if p1 == p2 && f1 == f2 && *r2 == r1 + 1 => (p1, *f1, *r1, false),
        _ => return Err(Error::PeriodicPointMismatch),
    };
    // the ray-N level-n word w is identified with the ray-(N+1) word that
    // prepends (stable) or appends (unstable) the point's symbol at the
    // freed position
    let mut maps = Vec::new();
    for l in 0..this.levels.len() - 1 {
        if l + 2 >= other.levels.len() + 1 {
            break;
        }
        let tgt_level = &other.levels[l + 1];
        let mut map = Vec::with_capacity(this.levels[l].size());
        for v in &this.levels[l].vertices {
            let image = if l == 0 {
                // root maps to the class of the point's own first extension
                let sym = if stable {
                    point_symbol(period, phase, -(ray as i64))
                } else {
                    point_symbol(period, phase, ray as i64)
                };
                Word::single(sym)
            } else if stable {
                v.rep.prepend(point_symbol(period, phase, -(ray as i64)))
            } else {
                v.rep.push(point_symbol(period, phase, ray as i64))
            };
            let ti = tgt_level
                .vertices
                .iter()
                .position(|tv| tv.words.contains(&image))
                .ok_or(Error::PeriodicPointMismatch)?;
            map.push(ti);
        }
        // injectivity
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != map.len() {
            return Err(Error::PeriodicPointMismatch);
        }
        maps.push(map);
    }
    // edge consistency
    use num_traits::Zero;
    for l in 0..maps.len().saturating_sub(1) {
        let m_this = &this.matrices[l];
        let m_other = &other.matrices[l + 1];
        for j in 0..m_this.cols() {
            for i in 0..m_this.rows() {
                if !m_this.get(i, j).is_zero() && m_other.get(maps[l + 1][i], maps[l][j]).is_zero()
                {
                    return Err(Error::PeriodicPointMismatch);
                }
            }
        }
    }
    Ok(maps)
}

// ---------------------------------------------------------------------------
// exports ("bratteli/v1" and DOT)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct BratteliDocument {
    pub schema: String,
    pub alphabet: Vec<String>,
    pub kind: KindDocument,
    pub levels: Vec<LevelDocument>,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize, PartialEq)]
pub struct KindDocument {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct LevelDocument {
    pub vertices: Vec<VertexDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext_len: Option<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct VertexDocument {
    pub id: usize,
    pub rep: String,
    pub sync: bool,
}

/// JSON export mirroring the internal model (class membership beyond the
/// representative is not exported).
pub fn export_json(d: &BratteliDiagram) -> String {
    let kind = match &d.kind {
        DiagramKind::Homoclinic => KindDocument {
            name: "homoclinic".into(),
            period: None,
            phase: None,
            ray: None,
        },
        DiagramKind::SyncRestricted => KindDocument {
            name: "sync-restricted".into(),
            period: None,
            phase: None,
            ray: None,
        },
        DiagramKind::Stable { period, phase, ray } => KindDocument {
            name: "stable".into(),
            period: Some(d.alphabet.display_word(period)),
            phase: Some(*phase),
            ray: Some(*ray),
        },
        DiagramKind::Unstable { period, phase, ray } => KindDocument {
            name: "unstable".into(),
            period: Some(d.alphabet.display_word(period)),
            phase: Some(*phase),
            ray: Some(*ray),
        },
    };
    let doc = BratteliDocument {
        schema: "bratteli/v1".into(),
        alphabet: d.alphabet.symbols().to_vec(),
        kind,
        levels: d
            .levels
            .iter()
            .map(|l| LevelDocument {
                vertices: l
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| VertexDocument {
                        id: i,
                        rep: d.alphabet.display_word(&v.rep),
                        sync: v.sync,
                    })
                    .collect(),
                ext_len: l.ext_len,
            })
            .collect(),
        matrices: d
            .matrices
            .iter()
            .map(|m| m.to_i64_rows().expect("multiplicities fit in i64"))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

/// Rebuild a diagram from its JSON export.  Class membership lists are not
/// part of the document, so each vertex carries only its representative.
pub fn import_json(text: &str) -> Result<BratteliDiagram> {
    let doc: BratteliDocument =
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))?;
    if doc.schema != "bratteli/v1" {
        return Err(Error::InvalidDocument(format!("unknown schema {:?}", doc.schema)));
    }
    let alphabet = Alphabet::new(doc.alphabet.clone())?;
    let kind = match doc.kind.name.as_str() {
        "homoclinic" => DiagramKind::Homoclinic,
        "sync-restricted" => DiagramKind::SyncRestricted,
        "stable" | "unstable" => {
            let period = alphabet.parse_word(
                doc.kind
                    .period
                    .as_deref()
                    .ok_or_else(|| Error::InvalidDocument("missing period".into()))?,
            )?;
            let phase = doc.kind.phase.unwrap_or(0);
            let ray = doc.kind.ray.unwrap_or(0);
            if doc.kind.name == "stable" {
                DiagramKind::Stable { period, phase, ray }
            } else {
                DiagramKind::Unstable { period, phase, ray }
            }
        }
        other => return Err(Error::InvalidDocument(format!("unknown kind {other:?}"))),
    };
    let mut levels = Vec::new();
    for (li, l) in doc.levels.iter().enumerate() {
        let mut vertices = Vec::new();
        for v in &l.vertices {
            let rep = alphabet.parse_word(&v.rep)?;
            let words = if li == 0 && rep.is_empty() { vec![] } else { vec![rep.clone()] };
            vertices.push(LevelVertex { rep, sync: v.sync, words });
        }
        levels.push(Level { vertices, ext_len: l.ext_len });
    }
    let matrices = doc
        .matrices
        .iter()
        .map(|rows| IntMatrix::from_i64(rows))
        .collect();
    BratteliDiagram::from_parts(alphabet, kind, levels, matrices)
}

/// Graphviz DOT export: one rank per level, multiplicities as parallel
/// edges, synchronizing vertices drawn with doubled borders.
pub fn export_dot(d: &BratteliDiagram) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "digraph bratteli {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [shape=box];");
    for (n, level) in d.levels.iter().enumerate() {
        let _ = write!(out, "  {{ rank=same;");
        for (i, v) in level.vertices.iter().enumerate() {
            let label = if n == 0 && v.rep.is_empty() {
                match &d.kind {
                    DiagramKind::Stable { .. } => "...p".to_string(),
                    DiagramKind::Unstable { .. } => "p...".to_string(),
                    _ => "*".to_string(),
                }
            } else {
                d.alphabet.display_word(&v.rep)
            };
            let style = if v.sync { " peripheries=2" } else { "" };
            let _ = write!(out, " \"L{n}_{i}\" [label=\"{label}\"{style}];");
        }
        let _ = writeln!(out, " }}");
    }
    for (n, m) in d.matrices.iter().enumerate() {
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                let count = m.get(i, j);
                let mut c = num_bigint::BigInt::from(0u8);
                while &c < count {
                    let _ = writeln!(out, "  \"L{n}_{j}\" -> \"L{}_{i}\";", n + 1);
                    c += 1;
                }
            }
        }
    }
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    fn even_p() -> ShiftPresentation {
        ShiftPresentation::SoficGraph(
            LabeledGraph::new(
                Alphabet::binary(),
                ["l", "r"],
                [
                    ("l".into(), "l".into(), "1".into()),
                    ("l".into(), "r".into(), "0".into()),
                    ("r".into(), "l".into(), "0".into()),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn even_lc_diagram_shape_and_matrices() {
        let d = build_lc_diagram(&even_p(), 3).unwrap();
        assert_eq!(d.level_sizes(), vec![1, 2, 5, 5]);
        let a = d.alphabet().clone();
        // level V_0 ordered [1], [0]
        assert_eq!(a.display_word(&d.levels()[1].vertices[0].rep), "1");
        assert_eq!(a.display_word(&d.levels()[1].vertices[1].rep), "0");
        // root edges
        assert_eq!(d.matrices()[0], IntMatrix::from_i64(&[vec![1], vec![1]]));
        // the column out of [0] carries the double edge
        let m0 = &d.matrices()[1];
        let col0: Vec<i64> = (0..5).map(|i| i64::try_from(m0.get(i, 1)).unwrap()).collect();
        assert_eq!(col0, vec![2, 0, 0, 0, 1]);
        let col1: Vec<i64> = (0..5).map(|i| i64::try_from(m0.get(i, 0)).unwrap()).collect();
        assert_eq!(col1, vec![1, 1, 1, 1, 0]);
        // the level-1 to level-2 matrix is the stationary one
        let expected = IntMatrix::from_i64(&[
            vec![1, 1, 1, 1, 2],
            vec![1, 0, 1, 0, 0],
            vec![1, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1],
        ]);
        assert_eq!(d.matrices()[2], expected);
        d.validate().unwrap();
    }

    #[test]
    fn even_sync_restriction() {
        let d = build_lc_diagram(&even_p(), 3).unwrap();
        let s = restrict_sync(&d).unwrap();
        assert_eq!(s.level_sizes(), vec![1, 4, 4]);
        let expected = IntMatrix::from_i64(&[
            vec![1, 1, 1, 1],
            vec![1, 0, 1, 0],
            vec![1, 1, 0, 0],
            vec![1, 0, 0, 0],
        ]);
        assert_eq!(s.matrices()[1], expected);
    }

    #[test]
    fn full_shift_lc_diagram() {
        let g = LabeledGraph::new(
            Alphabet::binary(),
            ["*"],
            [
                ("*".into(), "*".into(), "0".into()),
                ("*".into(), "*".into(), "1".into()),
            ],
        )
        .unwrap();
        let d = build_lc_diagram(&ShiftPresentation::SoficGraph(g), 3).unwrap();
        assert_eq!(d.level_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(d.matrices()[1], IntMatrix::from_i64(&[vec![4]]));
        assert_eq!(d.matrices()[2], IntMatrix::from_i64(&[vec![4]]));
        // every vertex is synchronizing, so restriction is a no-op on sizes
        let s = restrict_sync(&d).unwrap();
        assert_eq!(s.level_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn even_stable_diagram_is_stationary() {
        let p = even_p();
        let one = p.alphabet().parse_word("1").unwrap();
        let d = build_lcs_diagram(&p, &one, 0, 0, 4).unwrap();
        assert_eq!(d.level_sizes(), vec![1, 2, 2, 2, 2]);
        let h = IntMatrix::from_i64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(d.matrices()[1], h);
        assert_eq!(d.matrices()[2], h);
        assert_eq!(d.matrices()[3], h);
        // root has one edge per symbol
        assert_eq!(d.matrices()[0], IntMatrix::from_i64(&[vec![1], vec![1]]));
        let u = build_lcu_diagram(&p, &one, 0, 0, 4).unwrap();
        assert_eq!(u.matrices()[1], h);
        assert_eq!(u.matrices()[3], h);
    }

    #[test]
    fn even_stable_unstable_mirror_by_reversal() {
        let p = even_p();
        let one = p.alphabet().parse_word("1").unwrap();
        let s = build_lcs_diagram(&p, &one, 0, 0, 4).unwrap();
        let u = build_lcu_diagram(&p, &one, 0, 0, 4).unwrap();
        assert_eq!(s.matrices(), u.matrices());
        for (ls, lu) in s.levels().iter().zip(u.levels()).skip(1) {
            for (vs, vu) in ls.vertices.iter().zip(&lu.vertices) {
                let mut reversed: Vec<Word> = vu.words.iter().map(Word::reversed).collect();
                reversed.sort();
                assert_eq!(vs.words, reversed);
            }
        }
    }

    #[test]
    fn even_level_inclusion() {
        let p = even_p();
        let one = p.alphabet().parse_word("1").unwrap();
        let d0 = build_lcs_diagram(&p, &one, 0, 0, 3).unwrap();
        let d1 = build_lcs_diagram(&p, &one, 0, 1, 4).unwrap();
        let maps = level_inclusion(&d0, &d1).unwrap();
        // [1;0] -> [11;1]: the class of "11" is the tail class, index 0
        let a = p.alphabet();
        let lvl1 = &d0.levels()[1];
        let i_one = lvl1.vertices.iter().position(|v| a.display_word(&v.rep) == "1").unwrap();
        let image = &d1.levels()[2].vertices[maps[1][i_one]];
        assert!(image.words.contains(&a.parse_word("11").unwrap()));
        // identity when the ray offset is unchanged
        let id = level_inclusion(&d0, &d0).unwrap();
        assert_eq!(id[1], vec![0, 1]);
    }

    #[test]
    fn export_json_roundtrips() {
        let d = build_lc_diagram(&even_p(), 2).unwrap();
        let json = export_json(&d);
        let d2 = import_json(&json).unwrap();
        assert_eq!(export_json(&d2), json);
        assert_eq!(d2.matrices(), d.matrices());
    }

    #[test]
    fn dot_export_has_ranks_and_parallel_edges() {
        let d = build_lc_diagram(&even_p(), 2).unwrap();
        let dot = export_dot(&d);
        assert_eq!(dot.matches("rank=same").count(), 3);
        // the double edge from [0] appears twice
        assert_eq!(dot.matches("\"L1_1\" -> \"L2_0\"").count(), 2);
    }

    #[test]
    fn transition_matrix_bounds() {
        let d = build_lc_diagram(&even_p(), 2).unwrap();
        assert!(d.transition_matrix(1).is_ok());
        assert!(matches!(d.transition_matrix(2), Err(Error::LevelOutOfRange(2, 3))));
    }

    #[test]
    fn gicar_stable_levels_grow_with_pascal_shape() {
        let entry = crate::zoo::gicar_shift();
        let (period, phase) = entry.facts.default_period.clone().unwrap();
        let d = build_lcs_diagram(&entry.presentation, &period, phase, 0, 4).unwrap();
        assert_eq!(d.level_sizes(), vec![1, 2, 3, 4, 5]);
        let a = d.alphabet().clone();
        // level 1 classes per the spine heights: {aa, bc}, {ab}, {bb}
        let lvl = &d.levels()[2];
        assert_eq!(a.display_word(&lvl.vertices[0].rep), "aa");
        assert!(lvl.vertices[0].words.contains(&a.parse_word("bc").unwrap()));
        assert_eq!(a.display_word(&lvl.vertices[1].rep), "ab");
        assert_eq!(a.display_word(&lvl.vertices[2].rep), "bb");
        // bidiagonal: nonzero exactly at |i-j| = 1 and at (0,0)
        use num_traits::Zero;
        for (li, m) in d.matrices().iter().enumerate().skip(1) {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let expect = i.abs_diff(j) == 1 || (i == 0 && j == 0);
                    assert_eq!(!m.get(i, j).is_zero(), expect, "matrix {li} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn gicar_level_inclusion_prepends_period_symbol() {
        let entry = crate::zoo::gicar_shift();
        let (period, phase) = entry.facts.default_period.clone().unwrap();
        let d0 = build_lcs_diagram(&entry.presentation, &period, phase, 0, 3).unwrap();
        let d1 = build_lcs_diagram(&entry.presentation, &period, phase, 1, 4).unwrap();
        let maps = level_inclusion(&d0, &d1).unwrap();
        // the root [eps; 0] lands on the class of "a" at level 1 of the
        // ray-1 diagram
        let a = entry.presentation.alphabet();
        let img = &d1.levels()[1].vertices[maps[0][0]];
        assert!(img.words.contains(&a.parse_word("a").unwrap()));
        for m in &maps {
            let mut s = m.clone();
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), m.len(), "injective");
        }
    }

    #[test]
    fn anbn_restriction_drops_syncless_prefix_and_grows() {
        let entry = crate::zoo::anbn_shift();
        let d = build_lc_diagram(&entry.presentation, 3).unwrap();
        // level 0 (single symbols) has no synchronizing class
        assert!(d.levels()[1].vertices.iter().all(|v| !v.sync));
        let s = restrict_sync(&d).unwrap();
        assert_eq!(s.levels().len(), 2);
        let sizes = s.level_sizes();
        assert!(sizes[0] < sizes[1], "sync classes strictly increase: {sizes:?}");
        // depth 1 has no sync vertices anywhere
        let d1 = build_lc_diagram(&entry.presentation, 1).unwrap();
        assert!(matches!(restrict_sync(&d1), Err(Error::NoSyncVertices)));
    }
}
