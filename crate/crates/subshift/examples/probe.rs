//! Scratch probe used during development; superseded by the test suites.

use subshift::contexts::context_equivalent_bounded;
use subshift::words::Word;
use subshift::zoo;

fn main() {
    let gicar = zoo::get_shift("gicar").unwrap();
    let p = &gicar.presentation;
    let alphabet = p.alphabet();
    let b = alphabet.index_of("b").unwrap();
    let c = alphabet.index_of("c").unwrap();

    // hypothesis: for {b,c} words of equal length, bounded context equality
    // at k = n + 4 coincides with equality of (charge, min prefix sum)
    let invariants = |w: &Word| -> (i64, i64) {
        let mut sum = 0i64;
        let mut min = 0i64;
        for &s in w.ids() {
            sum += if s == b { 1 } else { -1 };
            min = min.min(sum);
        }
        (sum, min)
    };

    for n in 1..=8usize {
        let words: Vec<Word> = p
            .language(n)
            .unwrap()
            .words
            .into_iter()
            .filter(|w| w.ids().iter().all(|&s| s == b || s == c))
            .collect();
        let k = n + 4;
        let mut mismatch = 0usize;
        let mut checked = 0usize;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let ctx = context_equivalent_bounded(p, &words[i], &words[j], k).unwrap();
                let inv = invariants(&words[i]) == invariants(&words[j]);
                if ctx != inv {
                    mismatch += 1;
                    if mismatch < 4 {
                        println!(
                            "n={n}: {} vs {}: ctx={} inv={}",
                            alphabet.display_word(&words[i]),
                            alphabet.display_word(&words[j]),
                            ctx,
                            inv
                        );
                    }
                }
                checked += 1;
            }
        }
        println!("n={n}: {checked} pairs, {mismatch} (charge,minprefix) mismatches");
    }
}
