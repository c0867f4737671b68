//! Integer helpers: gcd/lcm of finite sets and Chinese-remainder encodings.
//!
//! Conventions: `gcd(∅) = 0` and `lcm(∅) = 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of nonnegative integers, iterated in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NatSet(BTreeSet<u64>);

impl NatSet {
    pub fn new() -> Self {
        NatSet(BTreeSet::new())
    }

    pub fn insert(&mut self, x: u64) -> bool {
        self.0.insert(x)
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// `[[n]] \ self`.
    pub fn complement_in(&self, n: u64) -> NatSet {
        (0..n).filter(|x| !self.contains(*x)).collect()
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl FromIterator<u64> for NatSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        NatSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[u64; N]> for NatSet {
    fn from(xs: [u64; N]) -> Self {
        xs.into_iter().collect()
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

pub fn gcd_set(set: &NatSet) -> u64 {
    gcd_all(set.iter())
}

pub fn lcm_set(set: &NatSet) -> Result<BigUint> {
    lcm_all(set.iter())
}

/// Fold-based gcd; 0 for an empty sequence.
pub fn gcd_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(0, |acc, x| acc.gcd(&x))
}

/// Fold-based lcm over arbitrary precision; 1 for an empty sequence.
pub fn lcm_all(xs: impl IntoIterator<Item = u64>) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for x in xs {
        if x == 0 {
            return Err(Error::invalid("lcm of a set containing 0 is undefined"));
        }
        acc = acc.lcm(&BigUint::from(x));
    }
    Ok(acc)
}

/// Residues of an integer modulo an ordered list of pairwise-coprime moduli.
///
/// The moduli order is the caller's order and is never normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrtIndex {
    moduli: Vec<u64>,
    residues: Vec<u64>,
}

impl CrtIndex {
    pub fn new(moduli: Vec<u64>, residues: Vec<u64>) -> Result<Self> {
        check_moduli(&moduli)?;
        if moduli.len() != residues.len() {
            return Err(Error::invalid(format!(
                "{} moduli but {} residues",
                moduli.len(),
                residues.len()
            )));
        }
        if let Some((m, r)) = moduli.iter().zip(&residues).find(|(m, r)| r >= m) {
            return Err(Error::invalid(format!("residue {r} not reduced modulo {m}")));
        }
        Ok(CrtIndex { moduli, residues })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

fn check_moduli(moduli: &[u64]) -> Result<()> {
    if let Some(pos) = moduli.iter().position(|&m| m == 0) {
        return Err(Error::invalid(format!("modulus at position {pos} is zero")));
    }
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if moduli[i].gcd(&moduli[j]) != 1 {
                return Err(Error::invalid(format!(
                    "moduli {} and {} are not coprime",
                    moduli[i], moduli[j]
                )));
            }
        }
    }
    Ok(())
}

pub fn crt_decode(k: &BigUint, moduli: &[u64]) -> Result<CrtIndex> {
    check_moduli(moduli)?;
    let product: BigUint = moduli.iter().map(|&m| BigUint::from(m)).product();
    if k >= &product {
        return Err(Error::invalid(format!("{k} is not below the modulus product {product}")));
    }
    let residues = moduli
        .iter()
        .map(|&m| (k % m).to_u64().expect("residue below a u64 modulus"))
        .collect();
    Ok(CrtIndex {
        moduli: moduli.to_vec(),
        residues,
    })
}

pub fn crt_encode(index: &CrtIndex) -> BigUint {
    let mut value = BigUint::zero();
    let mut modulus = BigUint::one();
    for (&m, &r) in index.moduli.iter().zip(&index.residues) {
        // Solve value + modulus * s ≡ r (mod m).
        let big_m = BigInt::from(m);
        let step = BigInt::from(&modulus % m);
        let inv = step.extended_gcd(&big_m).x.mod_floor(&big_m);
        let gap = (BigInt::from(r) - BigInt::from(&value % m)).mod_floor(&big_m);
        let s = (gap * inv).mod_floor(&big_m);
        value += &modulus * s.to_biguint().expect("nonnegative after mod_floor");
        modulus *= m;
    }
    value
}

/// `crt_encode` for two small moduli; used in tight loops over `[[a]] × [[b]]`.
pub(crate) fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    (0..m2)
        .map(|s| r1 + m1 * s)
        .find(|x| x % m2 == r2)
        .expect("coprime moduli admit a solution")
}

/// Prime factorization by trial division, as `(p, e)` pairs in ascending `p`.
pub(crate) fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= x {
        if x.is_multiple_of(p) {
            let mut e = 0;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_set(&NatSet::new()), 0);
        assert_eq!(gcd_set(&NatSet::from([6, 10, 15])), 1);
        assert_eq!(gcd_set(&NatSet::from([6, 10])), 2);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_set(&NatSet::new()).unwrap(), big(1));
        assert_eq!(lcm_set(&NatSet::from([6, 10, 15])).unwrap(), big(30));
        assert_eq!(lcm_set(&NatSet::from([10, 18, 45])).unwrap(), big(90));
        assert!(matches!(lcm_set(&NatSet::from([0, 3])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn lcm_does_not_overflow() {
        let primes = [
            1_000_000_007u64,
            998_244_353,
            1_000_000_009,
            2_147_483_647,
        ];
        let l = lcm_all(primes).unwrap();
        let expected: BigUint = primes.iter().map(|&p| big(p)).product();
        assert_eq!(l, expected);
        assert!(l.to_u64().is_none());
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn crt_examples() {
        let moduli = [2, 3, 5];
        for (k, res) in [(0u64, [0u64, 0, 0]), (7, [1, 1, 2]), (29, [1, 2, 4])] {
            let idx = crt_decode(&big(k), &moduli).unwrap();
            assert_eq!(idx.residues(), &res);
            assert_eq!(crt_encode(&CrtIndex::new(moduli.to_vec(), res.to_vec()).unwrap()), big(k));
        }
    }

    #[test]
    fn crt_rejects_bad_moduli() {
        assert!(crt_decode(&big(1), &[2, 4]).is_err());
        assert!(crt_decode(&big(30), &[2, 3, 5]).is_err());
        assert!(CrtIndex::new(vec![2, 3], vec![1, 3]).is_err());
    }

    #[test]
    fn crt_moduli_order_is_preserved() {
        let idx = crt_decode(&big(7), &[5, 2, 3]).unwrap();
        assert_eq!(idx.moduli(), &[5, 2, 3]);
        assert_eq!(idx.residues(), &[2, 1, 1]);
    }

    fn coprime_lists() -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let cands: Vec<u64> = (1..=40).collect();
        for &a in &cands {
            out.push(vec![a]);
            for &b in &cands {
                if a.gcd(&b) == 1 && a * b <= 10_000 {
                    out.push(vec![a, b]);
                    for &c in &[3u64, 7, 11, 13] {
                        if a.gcd(&c) == 1 && b.gcd(&c) == 1 && a * b * c <= 10_000 {
                            out.push(vec![a, b, c]);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn crt_roundtrip_exhaustive_small_products() {
        for moduli in coprime_lists().into_iter().filter(|m| m.iter().product::<u64>() <= 1500) {
            let product: u64 = moduli.iter().product();
            for k in 0..product {
                let idx = crt_decode(&big(k), &moduli).unwrap();
                assert_eq!(crt_encode(&idx), big(k), "moduli {moduli:?}");
            }
        }
    }

    #[test]
    fn crt_pair_matches_general_encoding() {
        for (a, b) in [(2u64, 3u64), (3, 5), (5, 7), (4, 9)] {
            for i in 0..a {
                for j in 0..b {
                    let idx = CrtIndex::new(vec![a, b], vec![i, j]).unwrap();
                    assert_eq!(big(crt_pair(i, a, j, b)), crt_encode(&idx));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn crt_roundtrip(ms in proptest::sample::select(coprime_lists()), seed in any::<u64>()) {
            let product: u64 = ms.iter().product();
            let k = seed % product;
            let idx = crt_decode(&big(k), &ms).unwrap();
            prop_assert_eq!(crt_encode(&idx), big(k));
        }

        #[test]
        fn gcd_lcm_agree_with_folds(xs in proptest::collection::btree_set(1u64..500, 1..6)) {
            let set: NatSet = xs.iter().copied().collect();
            let g = xs.iter().copied().reduce(|a, b| a.gcd(&b)).unwrap();
            let l = xs.iter().copied().map(BigUint::from).reduce(|a, b| a.lcm(&b)).unwrap();
            prop_assert_eq!(gcd_set(&set), g);
            prop_assert_eq!(lcm_set(&set).unwrap(), l);
        }

        #[test]
        fn gcd_times_lcm_for_pairs(a in 1u64..10_000, b in 1u64..10_000) {
            prop_assume!(a != b);
            let set = NatSet::from([a, b]);
            prop_assert_eq!(big(gcd_set(&set)) * lcm_set(&set).unwrap(), big(a) * big(b));
        }
    }
}
