//! Young diagram combinatorics: partitions, standard tableaux, hook-length
//! dimensions, the eigenvalue polynomial of a partition and its inversion,
//! and the genus-dependent invariant-dimension count.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::PolyG;

/// A partition: weakly decreasing positive parts. The empty partition is
/// allowed and acts as the recursion base everywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.last().is_some_and(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |λ|, the sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// h(λ), the number of parts.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// λ_1, or 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// 2λ: every part doubled.
    pub fn double(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| 2 * p).collect(),
        }
    }

    /// λ^δ: every part repeated twice.
    pub fn delta(&self) -> Partition {
        let mut parts = Vec::with_capacity(2 * self.parts.len());
        for &p in &self.parts {
            parts.push(p);
            parts.push(p);
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"4,3,1"` (or `"[4,3,1]"`); the empty string is the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransformKind {
    Conjugate,
    Double,
    Delta,
}

pub fn transform(lambda: &Partition, kind: TransformKind) -> Partition {
    match kind {
        TransformKind::Conjugate => lambda.conjugate(),
        TransformKind::Double => lambda.double(),
        TransformKind::Delta => lambda.delta(),
    }
}

/// All partitions of `k` in reverse-lexicographic order ([k] first, [1^k]
/// last). `k = 0` yields the single empty partition.
pub fn enumerate_partitions(k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(remaining: usize, max: usize, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            stack.push(p as u32);
            rec(remaining - p, p, stack, out);
            stack.pop();
        }
    }
    rec(k, k, &mut stack, &mut out);
    out
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Hook lengths of every box, row-major.
fn hook_lengths(mu: &Partition) -> Vec<usize> {
    let conj = mu.conjugate();
    let mut hooks = Vec::with_capacity(mu.weight());
    for (r, &len) in mu.parts.iter().enumerate() {
        for c in 0..len as usize {
            let arm = len as usize - c - 1;
            let leg = conj.parts[c] as usize - r - 1;
            hooks.push(arm + leg + 1);
        }
    }
    hooks
}

/// Dimension of the irreducible symmetric-group representation of shape
/// `mu`, by the hook length formula, in exact integer arithmetic.
pub fn hook_dim(mu: &Partition) -> BigUint {
    let n = mu.weight();
    let mut denom = BigUint::one();
    for h in hook_lengths(mu) {
        denom *= BigUint::from(h as u64);
    }
    let num = factorial(n);
    debug_assert!((&num % &denom).is_zero());
    num / denom
}

/// hook_dim as usize; panics only if the dimension exceeds the platform
/// word, which cannot happen for the sizes this crate enumerates.
pub fn hook_dim_usize(mu: &Partition) -> usize {
    hook_dim(mu).to_usize().expect("hook dimension overflows usize")
}

/// A filling of a Young diagram by 1..n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u16>>,
}

impl Tableau {
    pub fn new(shape: Partition, rows: Vec<Vec<u16>>) -> Result<Self> {
        if rows.len() != shape.height() {
            return Err(Error::InvalidTableau(format!(
                "{} rows for shape {shape}",
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != shape.parts()[r] as usize {
                return Err(Error::InvalidTableau(format!(
                    "row {r} has {} entries for shape {shape}",
                    row.len()
                )));
            }
        }
        let n = shape.weight();
        let mut seen = vec![false; n + 1];
        for &e in rows.iter().flatten() {
            if e == 0 || e as usize > n || seen[e as usize] {
                return Err(Error::InvalidTableau(format!(
                    "entries are not a bijection onto 1..{n}"
                )));
            }
            seen[e as usize] = true;
        }
        Ok(Tableau { shape, rows })
    }

    /// The tableau filling rows left to right, top to bottom: row 0 gets
    /// 1..λ_1, row 1 continues, and so on. Always standard.
    pub fn row_filling(shape: Partition) -> Self {
        let mut next = 1u16;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                (0..len)
                    .map(|_| {
                        let e = next;
                        next += 1;
                        e
                    })
                    .collect()
            })
            .collect();
        Tableau { shape, rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    /// Entries of each column, top to bottom.
    pub fn columns(&self) -> Vec<Vec<u16>> {
        let ncols = self.shape.first() as usize;
        let mut cols = vec![Vec::new(); ncols];
        for row in &self.rows {
            for (c, &e) in row.iter().enumerate() {
                cols[c].push(e);
            }
        }
        cols
    }

    pub fn n(&self) -> usize {
        self.shape.weight()
    }

    pub fn is_standard(&self) -> bool {
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        self.columns()
            .iter()
            .all(|col| col.windows(2).all(|w| w[0] < w[1]))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All standard tableaux of shape `mu`, by backtracking over placements of
/// 1..n; the count equals `hook_dim(mu)`.
pub fn standard_tableaux(mu: &Partition) -> Vec<Tableau> {
    let n = mu.weight();
    let shape: Vec<usize> = mu.parts().iter().map(|&p| p as usize).collect();
    let mut rows: Vec<Vec<u16>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut filled = vec![0usize; shape.len()];
    let mut out = Vec::new();
    fn rec(
        t: u16,
        n: usize,
        shape: &[usize],
        rows: &mut Vec<Vec<u16>>,
        filled: &mut Vec<usize>,
        out: &mut Vec<Tableau>,
        mu: &Partition,
    ) {
        if t as usize > n {
            out.push(Tableau {
                shape: mu.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for r in 0..shape.len() {
            if filled[r] < shape[r] && (r == 0 || filled[r] < filled[r - 1]) {
                rows[r][filled[r]] = t;
                filled[r] += 1;
                rec(t + 1, n, shape, rows, filled, out, mu);
                filled[r] -= 1;
                rows[r][filled[r]] = 0;
            }
        }
    }
    rec(1, n, &shape, &mut rows, &mut filled, &mut out, mu);
    out
}

/// The eigenvalue polynomial of λ: the product over boxes b of
/// (2g - 2s_b + t_b), where s_b counts columns strictly left of b and t_b
/// counts rows strictly above b. Degree |λ|; the empty partition gives 1.
pub fn eigenvalue_mu(lambda: &Partition) -> PolyG {
    let mut acc = PolyG::one();
    for (t, &len) in lambda.parts().iter().enumerate() {
        for s in 0..len as i64 {
            acc = &acc * &PolyG::two_g_plus(t as i64 - 2 * s);
        }
    }
    acc
}

/// Inverts `eigenvalue_mu`: factors `p` into linear factors 2g + c by trial
/// division, then peels the first row and first column repeatedly. Every
/// step is verified; the final candidate is checked by recomputing its
/// eigenvalue polynomial, so a wrong or ambiguous input is reported as an
/// error rather than guessed at.
pub fn mu_to_partition(p: &PolyG) -> Result<Partition> {
    let fail = |msg: &str| Err(Error::NotEigenvalue(format!("{msg}: {p}")));
    if p.is_zero() {
        return fail("zero polynomial");
    }
    let k = p.degree().unwrap();
    if k == 0 {
        return if p.is_one() {
            Ok(Partition::empty())
        } else {
            fail("nonzero constant other than 1")
        };
    }

    // Factor multiset: offsets c with factor (2g + c), with multiplicity.
    // The candidate range covers every box factor of a degree-k eigenvalue
    // polynomial: c = t - 2s with 0 <= t <= k-1 and 0 <= s <= k-1.
    let mut offsets: Vec<i64> = Vec::with_capacity(k);
    let mut rest = p.clone();
    for c in (2 - 2 * (k as i64))..=(k as i64 - 1) {
        let factor = PolyG::two_g_plus(c);
        while let Some(q) = rest.exact_div(&factor) {
            offsets.push(c);
            rest = q;
            if rest.is_one() {
                break;
            }
        }
    }
    if !rest.is_one() || offsets.len() != k {
        return fail("does not factor into linear terms 2g + c");
    }

    // Peel: the smallest offset -2(λ1-1) fixes the first row, the largest
    // offset h-1 fixes the height; remove the first row and column and
    // recurse on the remaining offsets shifted by +1.
    fn peel(mut offsets: Vec<i64>) -> Option<Vec<u32>> {
        if offsets.is_empty() {
            return Some(Vec::new());
        }
        let &min = offsets.iter().min().unwrap();
        let &max = offsets.iter().max().unwrap();
        if min > 0 || min % 2 != 0 || max < 0 {
            return None;
        }
        let lambda1 = (1 - min / 2) as u32;
        let height = (max + 1) as usize;
        let mut remove = |c: i64| -> bool {
            match offsets.iter().position(|&x| x == c) {
                Some(i) => {
                    offsets.swap_remove(i);
                    true
                }
                None => false,
            }
        };
        for s in 0..lambda1 as i64 {
            if !remove(-2 * s) {
                return None;
            }
        }
        for t in 1..height as i64 {
            if !remove(t) {
                return None;
            }
        }
        let inner = peel(offsets.into_iter().map(|c| c + 1).collect())?;
        if inner.len() > height - 1 {
            return None;
        }
        let mut parts = vec![lambda1];
        for r in 0..height - 1 {
            parts.push(inner.get(r).copied().unwrap_or(0) + 1);
        }
        Some(parts)
    }

    let Some(parts) = peel(offsets) else {
        return fail("peeling failed");
    };
    let Ok(lambda) = Partition::new(parts) else {
        return fail("peeling produced a non-partition");
    };
    if &eigenvalue_mu(&lambda) != p {
        return fail("reconstruction does not verify");
    }
    Ok(lambda)
}

/// Dimension of the genus-g invariant subspace of the 2k-th tensor power:
/// the sum of hook_dim(λ^δ) over partitions λ of k with height at most g.
pub fn invariant_dim(g: u32, k: usize) -> BigUint {
    enumerate_partitions(k)
        .iter()
        .filter(|lam| lam.height() <= g as usize)
        .map(|lam| hook_dim(&lam.delta()))
        .fold(BigUint::zero(), |a, b| a + b)
}

/// k-th Catalan number, used as a cross-check oracle in tests and reports.
pub fn catalan(k: usize) -> BigUint {
    let num = factorial(2 * k);
    let den = factorial(k) * factorial(k + 1);
    num / den
}

/// One row of the eigenspace summary table for a fixed point count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableRow {
    pub lambda: Partition,
    /// Eigenvalue polynomial of the eigenspace indexed by the conjugate.
    pub eigenvalue: PolyG,
    /// Dimension of the tensor image U_λ.
    pub dimension: usize,
    /// Smallest genus at which the eigenvalue is nonzero.
    pub min_genus: u32,
}

/// Summary table over partitions of k = points/2 in ascending
/// lexicographic order: eigenvalue of E_{λ'}, dim U_λ = hook_dim(2λ'),
/// and the minimal genus h(λ).
pub fn eigen_table(points: usize) -> Result<Vec<TableRow>> {
    if points == 0 || points % 2 != 0 {
        return Err(Error::OddPoints {
            what: "eigenvalue table",
            got: points,
        });
    }
    let mut rows: Vec<TableRow> = enumerate_partitions(points / 2)
        .into_iter()
        .map(|lambda| {
            let conj = lambda.conjugate();
            TableRow {
                eigenvalue: eigenvalue_mu(&conj),
                dimension: hook_dim_usize(&conj.double()),
                min_genus: lambda.height() as u32,
                lambda,
            }
        })
        .collect();
    rows.reverse();
    Ok(rows)
}

/// 2^k · ∏ λ_i! · ∏ λ'_j! as a signed integer, the closed form that the
/// symmetrizer's directly computed leading coefficient must match.
pub fn c0_coefficient_formula(lambda: &Partition) -> BigInt {
    let k = lambda.weight();
    let mut acc = BigUint::one() << k;
    for &p in lambda.parts() {
        acc *= factorial(p as usize);
    }
    for &q in lambda.conjugate().parts() {
        acc *= factorial(q as usize);
    }
    BigInt::from(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_is_reverse_lexicographic() {
        assert_eq!(enumerate_partitions(2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(
            enumerate_partitions(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn table_rows_for_eight_points() {
        let rows = eigen_table(8).unwrap();
        let lambdas: Vec<Partition> = rows.iter().map(|r| r.lambda.clone()).collect();
        assert_eq!(
            lambdas,
            vec![
                p(&[1, 1, 1, 1]),
                p(&[2, 1, 1]),
                p(&[2, 2]),
                p(&[3, 1]),
                p(&[4])
            ]
        );
        let dims: Vec<usize> = rows.iter().map(|r| r.dimension).collect();
        assert_eq!(dims, vec![1, 20, 14, 56, 14]);
        assert_eq!(dims.iter().sum::<usize>(), 105);
        let genera: Vec<u32> = rows.iter().map(|r| r.min_genus).collect();
        assert_eq!(genera, vec![4, 3, 2, 2, 1]);
        // first and last eigenvalue polynomials, as printed factorizations
        let prod = |cs: &[i64]| {
            cs.iter()
                .map(|&c| PolyG::two_g_plus(c))
                .fold(PolyG::one(), |a, b| &a * &b)
        };
        assert_eq!(rows[0].eigenvalue, prod(&[-6, -4, -2, 0]));
        assert_eq!(rows[4].eigenvalue, prod(&[0, 1, 2, 3]));
        assert!(eigen_table(7).is_err());
        assert_eq!(eigen_table(2).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_counts_match_euler_recurrence() {
        // Independent oracle: p(n) via the pentagonal-number recurrence.
        let mut pn = vec![1i64];
        for n in 1..=12usize {
            let mut total = 0i64;
            let mut j = 1i64;
            loop {
                let g1 = j * (3 * j - 1) / 2;
                let g2 = j * (3 * j + 1) / 2;
                if g1 as usize > n {
                    break;
                }
                let sign = if j % 2 == 0 { -1 } else { 1 };
                total += sign * pn[n - g1 as usize];
                if g2 as usize <= n {
                    total += sign * pn[n - g2 as usize];
                }
                j += 1;
            }
            pn.push(total);
        }
        for k in 0..=12usize {
            let parts = enumerate_partitions(k);
            assert_eq!(parts.len() as i64, pn[k], "p({k})");
            // each exactly once, all valid, strictly descending rev-lex
            for w in parts.windows(2) {
                assert!(w[0].parts() > w[1].parts());
            }
            for lam in &parts {
                assert_eq!(lam.weight(), k);
            }
        }
        assert_eq!(enumerate_partitions(6).len(), 11);
    }

    #[test]
    fn transforms_match_hand_values() {
        assert_eq!(transform(&p(&[4, 3, 1]), TransformKind::Double), p(&[8, 6, 2]));
        assert_eq!(
            transform(&p(&[4, 3, 1]), TransformKind::Delta),
            p(&[4, 4, 3, 3, 1, 1])
        );
        assert_eq!(
            transform(&p(&[3, 1]), TransformKind::Conjugate),
            p(&[2, 1, 1])
        );
        assert_eq!(p(&[2, 1, 1]).conjugate(), p(&[3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn hook_dims_match_known_values() {
        assert_eq!(hook_dim(&p(&[4, 4])), BigUint::from(14u32));
        assert_eq!(hook_dim(&p(&[8])), BigUint::from(1u32));
        assert_eq!(hook_dim(&p(&[3, 3, 1, 1])), BigUint::from(56u32));
        assert_eq!(hook_dim(&p(&[2, 2, 1, 1, 1, 1])), BigUint::from(20u32));
        assert_eq!(hook_dim(&Partition::empty()), BigUint::one());
    }

    #[test]
    fn hook_dim_is_transpose_symmetric_through_weight_10() {
        for k in 0..=10 {
            for lam in enumerate_partitions(k) {
                assert_eq!(hook_dim(&lam), hook_dim(&lam.conjugate()), "{lam}");
            }
        }
    }

    #[test]
    fn hook_dim_of_two_row_rectangles_is_catalan() {
        for k in 1..=8usize {
            assert_eq!(hook_dim(&p(&[k as u32, k as u32])), catalan(k), "k={k}");
        }
    }

    #[test]
    fn doubled_partition_dims_sum_to_double_factorial() {
        for k in 1..=5usize {
            let total: BigUint = enumerate_partitions(k)
                .iter()
                .map(|lam| hook_dim(&lam.double()))
                .fold(BigUint::zero(), |a, b| a + b);
            let dfact: u64 = (1..=2 * k as u64).filter(|x| x % 2 == 1).product();
            assert_eq!(total, BigUint::from(dfact), "k={k}");
        }
    }

    #[test]
    fn standard_tableaux_small_shapes() {
        assert_eq!(standard_tableaux(&p(&[2])).len(), 1);
        let t22 = standard_tableaux(&p(&[2, 2]));
        assert_eq!(t22.len(), 2);
        assert!(t22.iter().all(|t| t.is_standard()));
        assert_eq!(standard_tableaux(&p(&[4, 4])).len(), 14);
    }

    #[test]
    fn standard_tableaux_exhaustive_oracle() {
        // Independent oracle: filter all fillings for standardness.
        use itertools::Itertools;
        for lam in [p(&[3, 1]), p(&[2, 2, 1]), p(&[2, 1, 1])] {
            let n = lam.weight();
            let mut count = 0usize;
            for perm in (1..=n as u16).permutations(n) {
                let mut it = perm.into_iter();
                let rows: Vec<Vec<u16>> = lam
                    .parts()
                    .iter()
                    .map(|&len| (&mut it).take(len as usize).collect())
                    .collect();
                if Tableau::new(lam.clone(), rows).unwrap().is_standard() {
                    count += 1;
                }
            }
            assert_eq!(count, standard_tableaux(&lam).len(), "{lam}");
        }
    }

    #[test]
    fn tableaux_counts_equal_hook_dims_through_weight_8() {
        for k in 0..=8 {
            for lam in enumerate_partitions(k) {
                assert_eq!(
                    BigUint::from(standard_tableaux(&lam).len() as u64),
                    hook_dim(&lam),
                    "{lam}"
                );
            }
        }
    }

    #[test]
    fn row_filling_is_standard() {
        let t = Tableau::row_filling(p(&[3, 2]));
        assert_eq!(t.rows(), &[vec![1, 2, 3], vec![4, 5]]);
        assert!(t.is_standard());
        assert_eq!(t.columns(), vec![vec![1, 4], vec![2, 5], vec![3]]);
    }

    #[test]
    fn eigenvalue_polynomials_match_examples() {
        // one row: 2g(2g-2)...(2g-2k+2)
        for k in 1..=5i64 {
            let expect = PolyG::product((0..k).map(|s| PolyG::two_g_plus(-2 * s)));
            assert_eq!(eigenvalue_mu(&p(&[k as u32])), expect);
        }
        // one column: 2g(2g+1)...(2g+k-1)
        for k in 1..=5i64 {
            let expect = PolyG::product((0..k).map(PolyG::two_g_plus));
            assert_eq!(eigenvalue_mu(&p(&vec![1; k as usize])), expect);
        }
        let expect = PolyG::product(
            [0, -2, 1, -1].into_iter().map(PolyG::two_g_plus),
        );
        assert_eq!(eigenvalue_mu(&p(&[2, 2])), expect);
        assert_eq!(eigenvalue_mu(&Partition::empty()), PolyG::one());
    }

    #[test]
    fn eigenvalue_sign_law() {
        // For every integer g >= 1, the value is nonnegative and vanishes
        // exactly when λ_1 > g.
        for g in 1..=10i64 {
            for k in 1..=8usize {
                for lam in enumerate_partitions(k) {
                    let v = eigenvalue_mu(&lam).eval_int(g);
                    if lam.first() as i64 > g {
                        assert!(v.is_zero(), "{lam} at g={g}");
                    } else {
                        assert!(v > num_rational::BigRational::zero(), "{lam} at g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn mu_inversion_examples() {
        let col2 = &PolyG::two_g_plus(0) * &PolyG::two_g_plus(1);
        assert_eq!(mu_to_partition(&col2).unwrap(), p(&[1, 1]));
        let row2 = &PolyG::two_g_plus(0) * &PolyG::two_g_plus(-2);
        assert_eq!(mu_to_partition(&row2).unwrap(), p(&[2]));
        assert_eq!(mu_to_partition(&PolyG::one()).unwrap(), Partition::empty());
    }

    #[test]
    fn mu_inversion_round_trips_through_weight_8() {
        for k in 0..=8 {
            for lam in enumerate_partitions(k) {
                let poly = eigenvalue_mu(&lam);
                assert_eq!(mu_to_partition(&poly).unwrap(), lam, "{lam}");
            }
        }
    }

    #[test]
    fn mu_inversion_rejects_non_eigenvalue_inputs() {
        assert!(mu_to_partition(&PolyG::zero()).is_err());
        assert!(mu_to_partition(&PolyG::from_ints(&[2])).is_err());
        // (2g+1)^2 lacks the mandatory 2g factor
        let sq = &PolyG::two_g_plus(1) * &PolyG::two_g_plus(1);
        assert!(mu_to_partition(&sq).is_err());
        // 2g(2g+5): height 6 would need column factors 2g+1..2g+4
        let gap = &PolyG::two_g_plus(0) * &PolyG::two_g_plus(5);
        assert!(mu_to_partition(&gap).is_err());
        // not a product of (2g + c) factors at all
        assert!(mu_to_partition(&PolyG::from_ints(&[1, 3])).is_err());
        // right factors, wrong multiset: 2g(2g)(2g+1) cannot be peeled
        let dup = PolyG::product([0, 0, 1].into_iter().map(PolyG::two_g_plus));
        assert!(mu_to_partition(&dup).is_err());
    }

    #[test]
    fn eigenvalue_map_is_injective_per_weight() {
        use std::collections::BTreeSet;
        for k in 1..=6 {
            let polys: BTreeSet<Vec<String>> = enumerate_partitions(k)
                .iter()
                .map(|lam| eigenvalue_mu(lam).coeff_strings())
                .collect();
            assert_eq!(polys.len(), enumerate_partitions(k).len(), "k={k}");
        }
    }

    #[test]
    fn invariant_dims_match_table_values() {
        assert_eq!(invariant_dim(1, 4), BigUint::from(14u32));
        assert_eq!(invariant_dim(2, 4), BigUint::from(84u32));
        assert_eq!(invariant_dim(3, 4), BigUint::from(104u32));
        for g in 4..=6 {
            assert_eq!(invariant_dim(g, 4), BigUint::from(105u32));
        }
        // genus 1 gives the Catalan numbers
        for k in 1..=8 {
            assert_eq!(invariant_dim(1, k), catalan(k), "k={k}");
        }
    }

    #[test]
    fn c0_formula_small_values() {
        assert_eq!(c0_coefficient_formula(&p(&[2, 1])), BigInt::from(32));
        for k in 1..=4usize {
            let expect = BigInt::from(factorial(k)) << k;
            assert_eq!(c0_coefficient_formula(&p(&[k as u32])), expect);
            assert_eq!(c0_coefficient_formula(&p(&vec![1; k])), expect);
        }
    }

    #[test]
    fn partition_parsing() {
        assert_eq!("4,3,1".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("[2,2]".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[4, 3, 1]).to_string(), "[4,3,1]");
    }
}
