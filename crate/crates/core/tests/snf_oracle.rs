//! Smith normal form against determinantal divisors computed by brute force:
//! `d_1 ... d_k` is the gcd of all `k x k` minors.

use num_bigint::BigInt;
use proptest::prelude::*;
use qbs_core::snf::smith_normal_form;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Leibniz expansion over all permutations, with the sign from inversions.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let term: i128 = (0..n).map(|i| m[i][perm[i]]).product();
        total += if inversions % 2 == 0 { term } else { -term };
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `D_k`: gcd of all k-minors, for k = 1..=min(rows, cols).
pub fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = 0;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Vec<Vec<i128>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect()).collect();
                    g = gcd(g, det(&minor));
                }
            }
            g
        })
        .collect()
}

fn invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    smith_normal_form(m).invariants
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=6usize, 1..=6usize).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

fn check_against_minors(m: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let inv = invariants(m);
    let divisors = determinantal_divisors(m);
    let mut product = BigInt::from(1);
    for (k, d) in divisors.iter().enumerate() {
        if k < inv.len() {
            product *= &inv[k];
            prop_assert_eq!(&product, &BigInt::from(*d), "k = {}", k + 1);
        } else {
            prop_assert_eq!(*d, 0, "rank exceeded at k = {}", k + 1);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn invariants_match_minor_gcds(m in matrix()) {
        check_against_minors(&m)?;
    }

    #[test]
    fn invariants_divide_in_chain(m in matrix()) {
        let inv = invariants(&m);
        for w in inv.windows(2) {
            prop_assert!(&w[1] % &w[0] == BigInt::from(0));
        }
        prop_assert!(inv.iter().all(|d| *d > BigInt::from(0)));
    }

    #[test]
    fn transpose_has_same_invariants(m in matrix()) {
        let t: Vec<Vec<i64>> = (0..m[0].len()).map(|j| m.iter().map(|row| row[j]).collect()).collect();
        prop_assert_eq!(invariants(&m), invariants(&t));
    }
}

#[test]
fn oracle_sanity() {
    assert_eq!(det(&[vec![1, 2], vec![3, 4]]), -2);
    assert_eq!(det(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]), 24);
    assert_eq!(determinantal_divisors(&[vec![2, 4], vec![6, 8]]), vec![2, 8]);
}
