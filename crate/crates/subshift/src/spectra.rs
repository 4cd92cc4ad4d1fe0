//! Characteristic polynomials and certified Perron-eigenvalue brackets for
//! the staircase matrix family, plus general power-iteration bounds and the
//! entropy-proxy report.
//!
//! Bracket endpoints are rationals throughout.  Irrational reference points
//! (square roots) enter only as dyadic over/under-approximations certified
//! by squaring; no floating point touches a certified bound.

use crate::graph::LabeledGraph;
use crate::ktheory::IntMatrix;
use crate::presentations::ShiftPresentation;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A polynomial with arbitrary-precision integer coefficients, ascending
/// degree order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// self * t^2 (degree shift by two).
    fn shift2(&self) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(), BigInt::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial::new(coeffs)
    }

    fn sub_const(&self, c: i64) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] -= BigInt::from(c);
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = mag != BigInt::one() || d == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

/// A rational bracket around a Perron eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronEstimate {
    /// Family index when produced by [`perron_family`].
    pub level: Option<usize>,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl PerronEstimate {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower <= *x && *x <= self.upper
    }
}

/// Adjacency matrix of the underlying digraph, column-to-row convention.
pub fn adjacency_matrix(g: &LabeledGraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertex_count(), g.vertex_count());
    for &(s, t, _) in g.edges() {
        m.add_to(t, s, 1);
    }
    m
}

/// The `2n x 2n` adjacency matrix of the level-`n` staircase truncation, in
/// the interleaved vertex order v1, w1, v2, w2, ...; the level-`n` matrix
/// is the leading principal block of the level-`n+1` one.
pub fn family_matrix(n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("family index must be >= 1".into()));
    }
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    m.add_to(0, 1, 1); // w1 -> v1
    for i in 1..=n {
        m.add_to(2 * i - 1, 2 * i - 2, 1); // vi -> wi
    }
    for i in 1..n {
        m.add_to(2 * i, 2 * i - 2, 1); // vi -> v(i+1)
        m.add_to(2 * i - 1, 2 * i + 1, 1); // w(i+1) -> wi
    }
    Ok(m)
}

/// Characteristic polynomial of [`family_matrix`]`(n)` by the two-step
/// recursion `p_{n+1}(t) = t^2 p_n(t) - 1` from `p_1(t) = t^2 - 1`.
pub fn char_poly_family(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("family index must be >= 1".into()));
    }
    let mut p = IntPolynomial::from_i64(&[-1, 0, 1]);
    for _ in 1..n {
        p = p.shift2().sub_const(1);
    }
    Ok(p)
}

/// `q_n(t) = (t^2 - 1) p_n(t) = t^{2n+2} - 2 t^{2n} + 1`, whose largest
/// real root is the family's Perron value.
pub fn bracket_poly_family(n: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); 2 * n + 3];
    coeffs[0] = BigInt::one();
    coeffs[2 * n] = BigInt::from(-2);
    coeffs[2 * n + 2] = BigInt::one();
    IntPolynomial::new(coeffs)
}

const SQRT_BITS: u32 = 64;

/// Dyadic `r` with `r^2 >= x`, within `2^-bits` of `sqrt(x)`.
fn dyadic_sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << (2 * bits);
    let scaled = x.numer() * &scale;
    let t = scaled.div_ceil(x.denom());
    let mut r = t.sqrt();
    if &r * &r < t {
        r += 1;
    }
    BigRational::new(r, BigInt::one() << bits)
}

/// Dyadic `r` with `r^2 <= x`, within `2^-bits` of `sqrt(x)`.
fn dyadic_sqrt_lower(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << (2 * bits);
    let t = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(t.sqrt(), BigInt::one() << bits)
}

/// Certified bracket around the largest real root of `q_n`, bisected to
/// width at most `tol` inside `[sqrt(2n/(n+1)), sqrt(2))`.
pub fn perron_family(n: usize, tol: &BigRational) -> Result<PerronEstimate> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("family index must be >= 1".into()));
    }
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    if n == 1 {
        // q_1 = (t^2 - 1)^2: double root, the bracket is exact
        let one = BigRational::one();
        return Ok(PerronEstimate { level: Some(1), lower: one.clone(), upper: one });
    }
    let q = bracket_poly_family(n);
    let floor_bound = BigRational::new(BigInt::from(2 * n), BigInt::from(n + 1));
    let mut lo = dyadic_sqrt_upper(&floor_bound, SQRT_BITS);
    let mut hi = dyadic_sqrt_lower(&BigRational::from_integer(BigInt::from(2)), SQRT_BITS);
    debug_assert!(&lo * &lo >= floor_bound);
    debug_assert!(&hi * &hi <= BigRational::from_integer(BigInt::from(2)));
    if q.eval(&lo).is_positive() || !q.eval(&hi).is_positive() {
        return Err(Error::ConvergenceFailure);
    }
    while &hi - &lo > *tol {
        let mid = (&hi + &lo) / BigRational::from_integer(BigInt::from(2));
        if q.eval(&mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(PerronEstimate { level: Some(n), lower: lo, upper: hi })
}

/// Power iteration with rational two-sided bounds
/// `min_i (Mv)_i / v_i <= lambda <= max_i (Mv)_i / v_i`.
///
/// The iteration runs on `M + I` so periodic irreducible matrices converge
/// too; the reported bounds are always evaluated against `M` itself.
pub fn perron_power(m: &IntMatrix, tol: &BigRational) -> Result<PerronEstimate> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "power iteration on {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_nonnegative() {
        return Err(Error::ParamOutOfRange("matrix must be nonnegative".into()));
    }
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let n = m.rows();
    if n > 1 && !strongly_connected(m) {
        return Err(Error::ReducibleMatrix);
    }

    let mut v: Vec<BigInt> = vec![BigInt::one(); n];
    let mut best_lo: Option<BigRational> = None;
    let mut best_hi: Option<BigRational> = None;
    for _ in 0..100_000 {
        let mv: Vec<BigInt> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j) * &v[j]).sum())
            .collect();
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for i in 0..n {
            let r = BigRational::new(mv[i].clone(), v[i].clone());
            if lo.as_ref().is_none_or(|x| r < *x) {
                lo = Some(r.clone());
            }
            if hi.as_ref().is_none_or(|x| r > *x) {
                hi = Some(r);
            }
        }
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        if best_lo.as_ref().is_none_or(|b| lo > *b) {
            best_lo = Some(lo);
        }
        if best_hi.as_ref().is_none_or(|b| hi < *b) {
            best_hi = Some(hi);
        }
        let (blo, bhi) = (best_lo.clone().unwrap(), best_hi.clone().unwrap());
        if &bhi - &blo <= *tol {
            return Ok(PerronEstimate { level: None, lower: blo, upper: bhi });
        }
        // v <- (M + I) v, reduced by the common gcd
        let mut next: Vec<BigInt> = mv.into_iter().zip(&v).map(|(a, b)| a + b).collect();
        let mut g = next[0].clone();
        for x in &next[1..] {
            g = g.gcd(x);
        }
        if g > BigInt::one() {
            for x in next.iter_mut() {
                *x /= &g;
            }
        }
        v = next;
    }
    Err(Error::ConvergenceFailure)
}

fn strongly_connected(m: &IntMatrix) -> bool {
    let n = m.rows();
    let reach = |transpose: bool| -> usize {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for w in 0..n {
                let edge = if transpose { m.get(u, w) } else { m.get(w, u) };
                if !edge.is_zero() && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    };
    reach(false) == n && reach(true) == n
}

/// One row of the entropy proxy: word count and normalized log-count.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EntropyRow {
    pub n: usize,
    pub count: usize,
    pub normalized: f64,
}

/// No limit is asserted anywhere in this report; it pairs raw counts with
/// their normalized logs for side-by-side inspection against a Perron
/// value.
pub const ENTROPY_NOTE: &str =
    "normalized log word counts; agreement with the log Perron value is conjectural and is not asserted";

pub fn entropy_report(p: &ShiftPresentation, n_max: usize) -> Result<Vec<EntropyRow>> {
    if n_max == 0 {
        return Err(Error::ParamOutOfRange("n_max must be >= 1".into()));
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let count = p.language(n)?.words.len();
        rows.push(EntropyRow { n, count, normalized: (count as f64).ln() / n as f64 });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn family_matrix_small_cases() {
        let a1 = family_matrix(1).unwrap();
        assert_eq!(a1, IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));
        let a2 = family_matrix(2).unwrap();
        let nonzero: usize = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !a2.get(i, j).is_zero())
            .count();
        assert_eq!(nonzero, 5);
        // leading principal block embedding
        for n in 1..=5 {
            let small = family_matrix(n).unwrap();
            let big = family_matrix(n + 1).unwrap();
            for i in 0..2 * n {
                for j in 0..2 * n {
                    assert_eq!(small.get(i, j), big.get(i, j));
                }
            }
        }
    }

    #[test]
    fn family_matrix_matches_staircase_adjacency() {
        use crate::presentations::GraphFamily;
        for n in 1..=6 {
            let g = GraphFamily::AnbnRight.graph_at(n);
            assert_eq!(adjacency_matrix(&g), family_matrix(n).unwrap());
        }
    }

    #[test]
    fn char_poly_recursion_values() {
        assert_eq!(char_poly_family(1).unwrap(), IntPolynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(
            char_poly_family(2).unwrap(),
            IntPolynomial::from_i64(&[-1, 0, -1, 0, 1])
        );
        // closed form: t^{2n} - sum_{k<n} t^{2k}
        for n in 1..=8 {
            let p = char_poly_family(n).unwrap();
            assert_eq!(p.degree(), 2 * n);
            assert_eq!(*p.constant_term(), BigInt::from(-1));
        }
    }

    #[test]
    fn char_poly_constant_term_is_family_determinant() {
        for n in 1..=6 {
            let det = family_matrix(n).unwrap().det().unwrap();
            // even dimension: det(-A) = det(A) = p_n(0)
            assert_eq!(det, *char_poly_family(n).unwrap().constant_term());
        }
    }

    #[test]
    fn perron_family_level_one_is_exact() {
        let e = perron_family(1, &rat(1, 1_000_000)).unwrap();
        assert_eq!(e.lower, BigRational::one());
        assert_eq!(e.upper, BigRational::one());
    }

    #[test]
    fn perron_family_bracket_certification() {
        let tol = rat(1, 10_000_000);
        for n in 2..=10 {
            let e = perron_family(n, &tol).unwrap();
            assert!(e.width() <= tol);
            let two = BigRational::from_integer(BigInt::from(2));
            assert!(&e.upper * &e.upper < two, "upper below sqrt(2)");
            let fb = rat(2 * n as i64, n as i64 + 1);
            assert!(&e.lower * &e.lower >= fb, "lower above sqrt(2n/(n+1))");
        }
        // monotone lower bounds
        let mut prev = BigRational::zero();
        for n in 1..=10 {
            let e = perron_family(n, &tol).unwrap();
            assert!(e.lower >= prev);
            prev = e.lower;
        }
    }

    #[test]
    fn perron_power_golden_ratio() {
        let m = IntMatrix::from_i64(&[vec![1, 1], vec![1, 0]]);
        let e = perron_power(&m, &rat(1, 1_000_000)).unwrap();
        // x^2 - x - 1 changes sign inside the bracket
        let f = |x: &BigRational| x * x - x - BigRational::one();
        assert!(!f(&e.lower).is_positive());
        assert!(!f(&e.upper).is_negative());
        assert!(e.width() <= rat(1, 1_000_000));
    }

    #[test]
    fn perron_power_trivial_and_reducible() {
        let one = IntMatrix::identity(1);
        let e = perron_power(&one, &rat(1, 1000)).unwrap();
        assert_eq!(e.lower, BigRational::one());
        assert_eq!(e.upper, BigRational::one());
        let id2 = IntMatrix::identity(2);
        assert!(matches!(perron_power(&id2, &rat(1, 1000)), Err(Error::ReducibleMatrix)));
    }

    #[test]
    fn perron_methods_agree_on_family_six() {
        let tol = rat(1, 1_000_000);
        let fam = perron_family(6, &tol).unwrap();
        let pow = perron_power(&family_matrix(6).unwrap(), &tol).unwrap();
        // brackets intersect
        assert!(fam.lower <= pow.upper && pow.lower <= fam.upper);
    }

    #[test]
    fn entropy_of_full_shift_is_log2() {
        use crate::graph::LabeledGraph;
        use crate::words::Alphabet;
        let g = LabeledGraph::new(
            Alphabet::binary(),
            ["*"],
            [
                ("*".into(), "*".into(), "0".into()),
                ("*".into(), "*".into(), "1".into()),
            ],
        )
        .unwrap();
        let rows = entropy_report(&ShiftPresentation::SoficGraph(g), 5).unwrap();
        for r in rows {
            assert_eq!(r.count, 1 << r.n);
            assert!((r.normalized - std::f64::consts::LN_2).abs() < 1e-12);
        }
    }

    #[test]
    fn dyadic_sqrt_bounds() {
        let two = BigRational::from_f64(2.0).unwrap();
        let up = dyadic_sqrt_upper(&two, 40);
        let lo = dyadic_sqrt_lower(&two, 40);
        assert!(&up * &up >= two);
        assert!(&lo * &lo <= two);
        assert!(&up - &lo < rat(1, 1 << 30));
    }
}
