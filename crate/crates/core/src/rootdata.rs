//! Good and pretty-good primes for root data.
//!
//! A prime is good for a root system by the classical case list (type A:
//! always; B, C, D: p > 2; E6, E7, F4, G2: p > 3; E8: p > 5). It is pretty
//! good for a root datum (X, Φ, Y, Φ∨) when X/ℤΦ′ and Y/ℤΦ′∨ are p-torsion
//! free for every subset Φ′ of Φ, decided here by exact Smith normal forms
//! over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, MAX_PRIME};

/// Root datum in coordinates: X and Y are both ℤ^rank, paired by the dot
/// product; roots live in X, the matched coroots in Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(rank: usize, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>) -> Result<RootDatum> {
        if roots.len() != coroots.len() {
            return Err(Error::InvalidInput(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        for (alpha, alpha_check) in roots.iter().zip(&coroots) {
            if alpha.len() != rank || alpha_check.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "root/coroot coordinates must have length {rank}"
                )));
            }
            let pairing: i64 = alpha
                .iter()
                .zip(alpha_check)
                .map(|(a, b)| a * b)
                .sum();
            if pairing != 2 {
                return Err(Error::InvalidInput(format!(
                    "⟨{alpha:?}, {alpha_check:?}⟩ = {pairing}, expected 2"
                )));
            }
        }
        Ok(RootDatum { rank, roots, coroots })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }
}

/// Invariant factors d_1 | d_2 | ... (absolute values, zero factors
/// dropped) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn has_p_torsion(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.factors.iter().any(|d| (d % &p).is_zero())
    }
}

/// Smith normal form by exact integer reduction: repeatedly move a
/// minimal-magnitude entry to the pivot, clear its row and column by
/// division with remainder, and absorb any entry the pivot fails to divide.
pub fn smith_normal_form(rows: &[Vec<BigInt>]) -> SnfResult {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut factors = Vec::new();

    for t in 0..m.min(n) {
        // Pivot: nonzero entry of minimal magnitude in the submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            // Clear column t by division; a nonzero remainder is strictly
            // smaller than the pivot, so looping terminates.
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Clear row t.
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility chain: the pivot must divide every remaining
            // entry; folding an offending row into row t shrinks the pivot.
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..n {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    SnfResult { factors }
}

pub fn smith_normal_form_i64(rows: &[Vec<i64>]) -> SnfResult {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    smith_normal_form(&big)
}

fn validate_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// The classical good-prime case list, conjunctively over the listed
/// irreducible component labels (e.g. "A2", "C2", "G2").
pub fn is_good_prime(component_types: &[&str], p: u64) -> Result<bool> {
    validate_prime(p)?;
    let mut good = true;
    for label in component_types {
        let (family, rank) = label.split_at(1);
        let rank: u32 = rank
            .parse()
            .map_err(|_| Error::UnknownType(label.to_string()))?;
        let bound = match (family, rank) {
            ("A", r) if r >= 1 => 1,
            ("B" | "C", r) if r >= 2 => 2,
            ("D", r) if r >= 3 => 2,
            ("E", 6 | 7) => 3,
            ("E", 8) => 5,
            ("F", 4) => 3,
            ("G", 2) => 3,
            _ => return Err(Error::UnknownType(label.to_string())),
        };
        good &= p > bound;
    }
    Ok(good)
}

/// Largest root count for which the 2^|Φ| subset enumeration is attempted.
pub const MAX_ROOTS_FOR_SUBSETS: usize = 16;

/// Herpel's condition: no p-torsion in X/ℤΦ′ or Y/ℤΦ′∨ for any subset Φ′
/// of the roots, checked literally over all 2^|Φ| subsets.
pub fn is_pretty_good(datum: &RootDatum, p: u64) -> Result<bool> {
    validate_prime(p)?;
    let count = datum.roots().len();
    if count > MAX_ROOTS_FOR_SUBSETS {
        return Err(Error::Capacity(format!(
            "{count} roots would need 2^{count} subset checks (limit 2^{MAX_ROOTS_FOR_SUBSETS})"
        )));
    }
    for mask in 0u32..1 << count {
        let mut root_rows = Vec::new();
        let mut coroot_rows = Vec::new();
        for i in 0..count {
            if mask >> i & 1 == 1 {
                root_rows.push(datum.roots()[i].clone());
                coroot_rows.push(datum.coroots()[i].clone());
            }
        }
        if root_rows.is_empty() {
            continue;
        }
        if smith_normal_form_i64(&root_rows).has_p_torsion(p)
            || smith_normal_form_i64(&coroot_rows).has_p_torsion(p)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

pub const BUILTIN_NAMES: [&str; 9] = [
    "GL1", "GL2", "GL3", "GL4", "SL2", "SL3", "SL4", "Sp4", "G2",
];

/// Irreducible component type labels of a builtin datum, for the good-prime
/// case list.
pub fn builtin_component_types(name: &str) -> Result<Vec<String>> {
    match name {
        "GL1" => Ok(vec![]),
        "GL2" | "SL2" => Ok(vec!["A1".into()]),
        "GL3" | "SL3" => Ok(vec!["A2".into()]),
        "GL4" | "SL4" => Ok(vec!["A3".into()]),
        "Sp4" => Ok(vec!["C2".into()]),
        "G2" => Ok(vec!["G2".into()]),
        _ => Err(Error::UnknownDatum(name.to_string())),
    }
}

fn gl_datum(n: usize) -> RootDatum {
    // X = Y = ℤ^n; roots and coroots are the vectors e_i - e_j.
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[j] = -1;
                roots.push(v);
            }
        }
    }
    RootDatum::new(n, roots.clone(), roots).expect("GL datum is valid")
}

fn sl_datum(n: usize) -> RootDatum {
    // X = ℤ^{n-1} in the fundamental-weight basis. The positive root
    // e_i - e_{j+1} (consecutive simple-root sum) has coordinates equal to
    // the sum of Cartan rows i..=j, and its coroot has 1s in positions
    // i..=j of the dual basis.
    let rank = n - 1;
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    };
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 0..rank {
        for j in i..rank {
            let mut alpha = vec![0i64; rank];
            let mut alpha_check = vec![0i64; rank];
            for k in i..=j {
                for (l, a) in alpha.iter_mut().enumerate() {
                    *a += cartan(k, l);
                }
                alpha_check[k] = 1;
            }
            roots.push(alpha.clone());
            coroots.push(alpha_check.clone());
            roots.push(alpha.iter().map(|v| -v).collect());
            coroots.push(alpha_check.iter().map(|v| -v).collect());
        }
    }
    RootDatum::new(rank, roots, coroots).expect("SL datum is valid")
}

fn sp4_datum() -> RootDatum {
    // X = ℤ^2 in the standard symplectic basis: long roots ±2e_i with
    // coroots ±e_i, short roots ±(e_1 ± e_2) with coroots equal to
    // themselves.
    let roots: Vec<Vec<i64>> = vec![
        vec![2, 0],
        vec![-2, 0],
        vec![0, 2],
        vec![0, -2],
        vec![1, 1],
        vec![-1, -1],
        vec![1, -1],
        vec![-1, 1],
    ];
    let coroots: Vec<Vec<i64>> = vec![
        vec![1, 0],
        vec![-1, 0],
        vec![0, 1],
        vec![0, -1],
        vec![1, 1],
        vec![-1, -1],
        vec![1, -1],
        vec![-1, 1],
    ];
    RootDatum::new(2, roots, coroots).expect("Sp4 datum is valid")
}

fn g2_datum() -> RootDatum {
    // X = ℤ^2 in the simple-root basis (α_1 short, α_2 long); Y carries the
    // dual basis. Coroot coordinates are the pairings with the simple
    // roots, computed from the G2 inner products.
    let positive: [([i64; 2], [i64; 2]); 6] = [
        ([1, 0], [2, -3]),
        ([0, 1], [-1, 2]),
        ([1, 1], [-1, 3]),
        ([2, 1], [1, 0]),
        ([3, 1], [1, -1]),
        ([3, 2], [0, 1]),
    ];
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for (alpha, alpha_check) in positive {
        roots.push(alpha.to_vec());
        coroots.push(alpha_check.to_vec());
        roots.push(alpha.iter().map(|v| -v).collect());
        coroots.push(alpha_check.iter().map(|v| -v).collect());
    }
    RootDatum::new(2, roots, coroots).expect("G2 datum is valid")
}

pub fn builtin_datum(name: &str) -> Result<RootDatum> {
    match name {
        "GL1" => Ok(gl_datum(1)),
        "GL2" => Ok(gl_datum(2)),
        "GL3" => Ok(gl_datum(3)),
        "GL4" => Ok(gl_datum(4)),
        "SL2" => Ok(sl_datum(2)),
        "SL3" => Ok(sl_datum(3)),
        "SL4" => Ok(sl_datum(4)),
        "Sp4" => Ok(sp4_datum()),
        "G2" => Ok(g2_datum()),
        _ => Err(Error::UnknownDatum(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn factors_u64(snf: &SnfResult) -> Vec<u64> {
        snf.factors()
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn snf_examples() {
        let id = smith_normal_form_i64(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(factors_u64(&id), vec![1, 1]);
        let twos = smith_normal_form_i64(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(factors_u64(&twos), vec![2, 2]);
        let mixed = smith_normal_form_i64(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(factors_u64(&mixed), vec![2, 4]);
        // Rank-deficient and empty cases.
        let rank1 = smith_normal_form_i64(&[vec![2, 4], vec![4, 8]]);
        assert_eq!(factors_u64(&rank1), vec![2]);
        let empty: [Vec<i64>; 0] = [];
        assert_eq!(smith_normal_form_i64(&empty).rank(), 0);
        // Cartan matrix of A2: factors (1, 3).
        let a2 = smith_normal_form_i64(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(factors_u64(&a2), vec![1, 3]);
    }

    #[test]
    fn snf_divisibility_chain_and_unimodular_invariance() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..30 {
            let rows = 2 + (rng.next_below(3) as usize);
            let cols = 2 + (rng.next_below(3) as usize);
            let a: Vec<Vec<i64>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| rng.next_below(21) as i64 - 10)
                        .collect()
                })
                .collect();
            let snf = smith_normal_form_i64(&a);
            for w in snf.factors().windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {snf:?}");
            }
            // Random row/column operations preserve the factors.
            let mut b = a.clone();
            for _ in 0..6 {
                let i = rng.next_below(rows as u64) as usize;
                let j = rng.next_below(rows as u64) as usize;
                let c = rng.next_below(7) as i64 - 3;
                if i != j {
                    for k in 0..cols {
                        b[i][k] += c * b[j][k];
                    }
                }
                let i = rng.next_below(cols as u64) as usize;
                let j = rng.next_below(cols as u64) as usize;
                if i != j {
                    for row in b.iter_mut() {
                        row[i] += c * row[j];
                    }
                }
            }
            assert_eq!(smith_normal_form_i64(&b), snf);
        }
    }

    #[test]
    fn snf_product_matches_gcd_of_minors() {
        // d_1 = gcd of entries; d_1 d_2 = gcd of 2x2 minors.
        let a = vec![vec![6i64, 10, 4], vec![2, 8, 6]];
        let snf = smith_normal_form_i64(&a);
        let entry_gcd = a
            .iter()
            .flatten()
            .fold(0i64, |acc, &v| num_integer::gcd(acc, v));
        assert_eq!(snf.factors()[0], BigInt::from(entry_gcd));
        let mut minor_gcd = 0i64;
        for c1 in 0..3 {
            for c2 in c1 + 1..3 {
                let det = a[0][c1] * a[1][c2] - a[0][c2] * a[1][c1];
                minor_gcd = num_integer::gcd(minor_gcd, det);
            }
        }
        assert_eq!(
            &snf.factors()[0] * &snf.factors()[1],
            BigInt::from(minor_gcd)
        );
    }

    #[test]
    fn good_prime_case_list() {
        assert!(is_good_prime(&["A1"], 2).unwrap());
        assert!(is_good_prime(&["A7"], 2).unwrap());
        assert!(!is_good_prime(&["B2"], 2).unwrap());
        assert!(is_good_prime(&["B2"], 3).unwrap());
        assert!(!is_good_prime(&["G2"], 3).unwrap());
        assert!(is_good_prime(&["G2"], 5).unwrap());
        assert!(!is_good_prime(&["E8"], 5).unwrap());
        assert!(is_good_prime(&["E8"], 7).unwrap());
        assert!(!is_good_prime(&["E6"], 3).unwrap());
        // Conjunction over components.
        assert!(!is_good_prime(&["A1", "G2"], 3).unwrap());
        assert!(is_good_prime(&["A1", "G2"], 5).unwrap());
        assert!(is_good_prime(&[], 2).unwrap());
        assert!(matches!(
            is_good_prime(&["H4"], 3),
            Err(Error::UnknownType(_))
        ));
        assert!(matches!(is_good_prime(&["A1"], 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn builtin_data_are_valid_and_paired() {
        for name in BUILTIN_NAMES {
            let datum = builtin_datum(name).unwrap();
            assert_eq!(datum.roots().len(), datum.coroots().len());
            builtin_component_types(name).unwrap();
        }
        assert_eq!(builtin_datum("GL2").unwrap().roots().len(), 2);
        assert_eq!(builtin_datum("SL2").unwrap().roots(), &[vec![2], vec![-2]]);
        assert_eq!(builtin_datum("G2").unwrap().roots().len(), 12);
        assert_eq!(builtin_datum("Sp4").unwrap().roots().len(), 8);
        assert!(builtin_datum("E8").is_err());
    }

    #[test]
    fn g2_cartan_matrix() {
        // C_ij = ⟨α_j, α_i∨⟩ for the simple pairs (first two positives).
        let datum = builtin_datum("G2").unwrap();
        let alpha = [&datum.roots()[0], &datum.roots()[2]];
        let alpha_check = [&datum.coroots()[0], &datum.coroots()[2]];
        let pair = |a: &[i64], b: &[i64]| -> i64 {
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        };
        let cartan: Vec<Vec<i64>> = (0..2)
            .map(|i| (0..2).map(|j| pair(alpha[j], alpha_check[i])).collect())
            .collect();
        assert_eq!(cartan, vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn pretty_good_examples() {
        for p in [2u64, 3, 5, 7] {
            for n in ["GL1", "GL2", "GL3"] {
                assert!(
                    is_pretty_good(&builtin_datum(n).unwrap(), p).unwrap(),
                    "{n} at {p}"
                );
            }
        }
        let sl2 = builtin_datum("SL2").unwrap();
        assert!(!is_pretty_good(&sl2, 2).unwrap());
        assert!(is_pretty_good(&sl2, 3).unwrap());
        let sl3 = builtin_datum("SL3").unwrap();
        assert!(!is_pretty_good(&sl3, 3).unwrap());
        assert!(is_pretty_good(&sl3, 2).unwrap());
        let sl4 = builtin_datum("SL4").unwrap();
        assert!(!is_pretty_good(&sl4, 2).unwrap());
        assert!(is_pretty_good(&sl4, 3).unwrap());
        // G2 has 2- and 3-torsion in root sublattices, nothing else.
        let g2 = builtin_datum("G2").unwrap();
        assert!(!is_pretty_good(&g2, 2).unwrap());
        assert!(!is_pretty_good(&g2, 3).unwrap());
        assert!(is_pretty_good(&g2, 5).unwrap());
        let sp4 = builtin_datum("Sp4").unwrap();
        assert!(!is_pretty_good(&sp4, 2).unwrap());
        assert!(is_pretty_good(&sp4, 3).unwrap());
    }

    #[test]
    fn pretty_good_implies_good_for_builtins() {
        for name in BUILTIN_NAMES {
            let datum = builtin_datum(name).unwrap();
            let types = builtin_component_types(name).unwrap();
            let labels: Vec<&str> = types.iter().map(String::as_str).collect();
            for p in [2u64, 3, 5, 7] {
                if is_pretty_good(&datum, p).unwrap() {
                    assert!(
                        is_good_prime(&labels, p).unwrap(),
                        "{name} at {p}: pretty good but not good"
                    );
                }
            }
        }
    }

    #[test]
    fn full_root_set_torsion_is_covered_by_subsets() {
        for name in BUILTIN_NAMES {
            let datum = builtin_datum(name).unwrap();
            let full = smith_normal_form_i64(datum.roots());
            for p in [2u64, 3, 5, 7] {
                if full.has_p_torsion(p) {
                    assert!(!is_pretty_good(&datum, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn capacity_limit() {
        // 24 roots (GL5) exceeds the subset cap.
        let gl5 = gl_datum(5);
        assert!(matches!(
            is_pretty_good(&gl5, 3),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn datum_validation_rejects_bad_pairing() {
        assert!(RootDatum::new(1, vec![vec![2]], vec![vec![2]]).is_err());
        assert!(RootDatum::new(1, vec![vec![2]], vec![]).is_err());
        assert!(RootDatum::new(2, vec![vec![2]], vec![vec![1]]).is_err());
        assert!(RootDatum::new(1, vec![vec![2]], vec![vec![1]]).is_ok());
    }
}
