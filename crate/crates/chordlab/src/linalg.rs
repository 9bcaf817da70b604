//! Exact linear algebra: fraction-free integer rank (Bareiss), modular
//! rank as a fast lower bound, and greedy independent-subset selection
//! over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Default prime for modular rank checks; large enough that accidental
/// rank drop is rare, and full modular rank already proves rational
/// independence.
pub const DEFAULT_PRIME: u64 = 1_000_000_007;

/// Rank over Q of an integer matrix, by fraction-free Gaussian
/// elimination. All intermediate divisions are exact.
pub fn rank_bigint(rows: &[Vec<BigInt>]) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pivot) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        for i in r + 1..m {
            for j in c + 1..n {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

/// Clears denominators row by row, then ranks exactly.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    rank_bigint(&clear_denominators(rows))
}

/// Scales each row by the lcm of its denominators.
pub fn clear_denominators(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

fn mod_reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue below u64 prime"),
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a as u128;
    let mut exp = p - 2;
    let mut acc: u128 = 1;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

/// Rank of the reduction mod `p` (prime). Always a lower bound for the
/// rank over Q, so a full modular rank certifies independence.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| row.iter().map(|x| mod_reduce(x, p)).collect())
        .collect();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pivot) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pivot);
        let inv = mod_inv(a[r][c], p) as u128;
        for i in r + 1..m {
            if a[i][c] == 0 {
                continue;
            }
            let factor = a[i][c] as u128 * inv % p as u128;
            for j in c..n {
                let sub = factor * a[r][j] as u128 % p as u128;
                a[i][j] = ((a[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

/// Indices of a maximal independent subset of the rows, scanned greedily
/// in order, using exact rational elimination.
pub fn independent_subset(rows: &[Vec<BigRational>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (lead, b) in &basis {
            if !v[*lead].is_zero() {
                let factor = v[*lead].clone();
                for (x, y) in v.iter_mut().zip(b.iter()) {
                    *x -= &factor * y;
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[lead].clone();
            for x in v.iter_mut() {
                *x /= &inv;
            }
            basis.push((lead, v));
            kept.push(idx);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_i64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_simple_matrices() {
        assert_eq!(rank_bigint(&big(&[vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(rank_bigint(&big(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank_bigint(&big(&[vec![0, 0], vec![0, 0]])), 0);
        assert_eq!(
            rank_bigint(&big(&[vec![1, 2, 3], vec![4, 5, 6], vec![5, 7, 9]])),
            2
        );
        assert_eq!(rank_bigint(&[]), 0);
    }

    #[test]
    fn hilbert_matrices_have_full_rank() {
        for n in 1..=6usize {
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            BigRational::new(BigInt::one(), BigInt::from((i + j + 1) as i64))
                        })
                        .collect()
                })
                .collect();
            assert_eq!(rank_rational(&rows), n);
        }
    }

    #[test]
    fn constructed_low_rank_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let (m, n) = (rng.gen_range(3..7), rng.gen_range(3..7));
            let r = rng.gen_range(1..=m.min(n));
            // A = B * C with B m-by-r and C r-by-n, so rank(A) <= r.
            let b: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..r).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            let c: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            let a: Vec<Vec<i64>> = (0..m)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..r).map(|t| b[i][t] * c[t][j]).sum())
                        .collect()
                })
                .collect();
            let rank = rank_bigint(&big(&a));
            assert!(rank <= r);
            assert_eq!(rank_mod_p(&big(&a), DEFAULT_PRIME), rank);
        }
    }

    #[test]
    fn modular_rank_agrees_on_random_small_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let (m, n) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let a: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            assert_eq!(
                rank_mod_p(&big(&a), DEFAULT_PRIME),
                rank_bigint(&big(&a))
            );
        }
    }

    #[test]
    fn modular_rank_can_drop_below_exact() {
        // multiples of p vanish mod p
        let p = 101u64;
        let rows = big(&[vec![101, 0], vec![0, 1]]);
        assert_eq!(rank_bigint(&rows), 2);
        assert_eq!(rank_mod_p(&rows, p), 1);
    }

    #[test]
    fn denominator_clearing_preserves_row_spans() {
        let rows = vec![
            vec![
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::new(BigInt::from(1), BigInt::from(3)),
            ],
            vec![rat_i64(3), rat_i64(2)],
        ];
        let cleared = clear_denominators(&rows);
        assert_eq!(cleared[0], vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(rank_rational(&rows), 1);
    }

    #[test]
    fn independent_subset_picks_first_spanning_rows() {
        let rows = vec![
            vec![rat_i64(1), rat_i64(0)],
            vec![rat_i64(2), rat_i64(0)],
            vec![rat_i64(0), rat_i64(1)],
        ];
        assert_eq!(independent_subset(&rows), vec![0, 2]);

        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let (m, n) = (rng.gen_range(2..7), rng.gen_range(2..5));
            let rows: Vec<Vec<BigRational>> = (0..m)
                .map(|_| (0..n).map(|_| rat_i64(rng.gen_range(-3..=3))).collect())
                .collect();
            let kept = independent_subset(&rows);
            let subset: Vec<Vec<BigRational>> =
                kept.iter().map(|&i| rows[i].clone()).collect();
            assert_eq!(rank_rational(&subset), kept.len());
            assert_eq!(rank_rational(&rows), kept.len());
        }
    }
}
