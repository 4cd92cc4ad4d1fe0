//! Independent oracles shared by the integration suites.  Everything here
//! recomputes from definitions with its own data structures, so the main
//! code paths are checked against genuinely separate routes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use subshift::ktheory::IntMatrix;

/// Division-free characteristic polynomial (Berkowitz), coefficients in
/// descending degree order with leading 1: `det(tI - A)`.
pub fn berkowitz_char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    assert!(a.is_square() && n >= 1);
    let mut poly = vec![BigInt::one(), -a.get(0, 0).clone()];
    for r in 1..n {
        // leading block M = a[..r][..r], row = a[r][..r], col = a[..r][r]
        let mut column = Vec::with_capacity(r + 2);
        column.push(BigInt::one());
        column.push(-a.get(r, r).clone());
        let mut vec_s: Vec<BigInt> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for k in 0..r {
            if k > 0 {
                let next: Vec<BigInt> = (0..r)
                    .map(|i| (0..r).map(|j| a.get(i, j) * &vec_s[j]).sum())
                    .collect();
                vec_s = next;
            }
            let dot: BigInt = (0..r).map(|j| a.get(r, j) * &vec_s[j]).sum();
            column.push(-dot);
        }
        // poly <- Toeplitz(column) * poly
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, cell) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && i - j < column.len() {
                    *cell += &column[i - j] * p;
                }
            }
        }
        poly = next;
    }
    poly
}

/// Word-level refutation oracle for the hub-graph shift over the base word
/// `m`: enumerates the actual extension words at each budget and tests the
/// Cartesian property directly from its definition.
pub mod hub {
    use std::collections::BTreeSet;

    pub const A: u8 = 0;
    pub const B: u8 = 1;
    pub const E: u8 = 2;

    /// Length-`len` prefix of the golden-ratio substitution fixed point,
    /// computed locally.
    pub fn fibonacci_word(len: usize) -> Vec<u8> {
        let mut cur = vec![A];
        while cur.len() < len {
            let mut next = Vec::with_capacity(2 * cur.len());
            for &s in &cur {
                match s {
                    A => next.extend_from_slice(&[A, B]),
                    _ => next.push(A),
                }
            }
            cur = next;
        }
        cur.truncate(len);
        cur
    }

    /// States are 0 (hub) and 1..=p (spine positions after reading
    /// `m[..i]`).
    pub struct HubOracle {
        pub m: Vec<u8>,
        pub p: usize,
    }

    type StateSet = BTreeSet<usize>;

    impl HubOracle {
        pub fn fibonacci(p: usize) -> Self {
            HubOracle { m: fibonacci_word(p), p }
        }

        pub fn all_states(&self) -> StateSet {
            (0..=self.p).collect()
        }

        pub fn step(&self, set: &StateSet, sym: u8) -> StateSet {
            let mut out = StateSet::new();
            for &i in set {
                if sym == E {
                    out.insert(0);
                } else if i < self.p && self.m[i] == sym {
                    out.insert(i + 1);
                }
            }
            out
        }

        pub fn back_step(&self, set: &StateSet, sym: u8) -> StateSet {
            let mut out = StateSet::new();
            for &i in set {
                if sym == E && i == 0 {
                    out.extend(0..=self.p);
                } else if sym != E && i >= 1 && self.m[i - 1] == sym {
                    out.insert(i - 1);
                }
            }
            out
        }

        pub fn ends(&self, w: &[u8]) -> StateSet {
            let mut s = self.all_states();
            for &sym in w {
                s = self.step(&s, sym);
            }
            s
        }

        pub fn starts(&self, w: &[u8]) -> StateSet {
            let mut s = self.all_states();
            for &sym in w.iter().rev() {
                s = self.back_step(&s, sym);
            }
            s
        }
    }

    /// All end-state sets of valid words of length <= k (deduplicated).
    fn end_sets_up_to(h: &HubOracle, k: usize) -> Vec<StateSet> {
        let mut frontier = vec![h.all_states()];
        let mut seen: BTreeSet<StateSet> = frontier.iter().cloned().collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for set in &frontier {
                for sym in [A, B, E] {
                    let stepped = h.step(set, sym);
                    if !stepped.is_empty() && seen.insert(stepped.clone()) {
                        next.push(stepped);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    fn start_sets_up_to(h: &HubOracle, k: usize) -> Vec<StateSet> {
        let mut frontier = vec![h.all_states()];
        let mut seen: BTreeSet<StateSet> = frontier.iter().cloned().collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for set in &frontier {
                for sym in [A, B, E] {
                    let stepped = h.back_step(set, sym);
                    if !stepped.is_empty() && seen.insert(stepped.clone()) {
                        next.push(stepped);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    /// Least extension budget at which the context of `w` stops being a
    /// Cartesian product: there are (a,b) and (a',b') in the bounded
    /// context with (a,b') outside it.  None if no refutation up to kmax.
    pub fn least_refuting_k(h: &HubOracle, w: &[u8], kmax: usize) -> Option<usize> {
        // path relation of w, per start state
        let rel: Vec<StateSet> = (0..=h.p)
            .map(|i| {
                let mut s = StateSet::from([i]);
                for &sym in w {
                    s = h.step(&s, sym);
                }
                s
            })
            .collect();
        let sources: StateSet =
            (0..=h.p).filter(|&i| !rel[i].is_empty()).collect();
        assert!(!sources.is_empty(), "oracle word not in language");
        let targets: StateSet = rel.iter().flatten().copied().collect();

        for budget in 1..=kmax {
            let lefts = end_sets_up_to(h, budget);
            let rights = start_sets_up_to(h, budget);
            for ends in &lefts {
                let hit: Vec<usize> =
                    ends.intersection(&sources).copied().collect();
                if hit.is_empty() {
                    continue; // aw not in the language
                }
                let image: StateSet =
                    hit.iter().flat_map(|&u| rel[u].iter().copied()).collect();
                for starts in &rights {
                    if starts.is_disjoint(&targets) {
                        continue; // wb' not in the language
                    }
                    if starts.is_disjoint(&image) {
                        return Some(budget); // awb' fails while aw, wb' hold
                    }
                }
            }
        }
        None
    }
}
