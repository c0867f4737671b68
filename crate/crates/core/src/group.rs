//! The cyclic group `G = <g>` as arithmetic on exponents.
//!
//! `g` is a product of disjoint cycles of lengths `ℓ_1, …, ℓ_t`; the group has
//! order `d = lcm(ℓ_i)` and `g^k` is identified with its exponent `k ∈ [[d]]`.
//! Cycles are addressed by 1-based index, never by length, so repeated lengths
//! are fine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factorize, lcm_all, NatSet};
use crate::error::{Error, Result};

/// Largest group order for which operations enumerate all of `[[d]]`.
pub const MAX_ENUMERATED_ORDER: u64 = 50_000_000;

/// Largest number of cycles for subset searches over `2^[t]`.
pub const MAX_SUBSET_CYCLES: usize = 24;

/// Largest number of cycles accepted by [`vertex_degree_sieve`].
pub const MAX_SIEVE_CYCLES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleType {
    input: Vec<u64>,
    lengths: Vec<u64>,
    #[serde(with = "crate::serde_num::int")]
    order: BigUint,
    n_points: u64,
}

impl CycleType {
    /// Builds a cycle type, dropping fixed points (length 1) unless nothing
    /// else remains.
    pub fn new(input: Vec<u64>) -> Result<Self> {
        if input.is_empty() {
            return Err(Error::invalid("a cycle type needs at least one length"));
        }
        if let Some(pos) = input.iter().position(|&l| l == 0) {
            return Err(Error::invalid(format!("cycle length at position {pos} is zero")));
        }
        let mut lengths: Vec<u64> = input.iter().copied().filter(|&l| l > 1).collect();
        if lengths.is_empty() {
            lengths.push(1);
        }
        let order = lcm_all(lengths.iter().copied())?;
        let n_points = lengths
            .iter()
            .try_fold(0u64, |acc, &l| acc.checked_add(l))
            .ok_or_else(|| Error::invalid("total number of points overflows u64"))?;
        Ok(CycleType {
            input,
            lengths,
            order,
            n_points,
        })
    }

    pub fn from_lengths(lengths: &[u64]) -> Result<Self> {
        Self::new(lengths.to_vec())
    }

    /// Lengths as given, including fixed points.
    pub fn input(&self) -> &[u64] {
        &self.input
    }

    /// Normalized lengths `ℓ_1, …, ℓ_t`.
    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn t(&self) -> usize {
        self.lengths.len()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `d` as a machine word, or a resource-limit error when it is too large
    /// to enumerate.
    pub fn order_enumerable(&self) -> Result<u64> {
        match self.order.to_u64() {
            Some(d) if d <= MAX_ENUMERATED_ORDER => Ok(d),
            _ => Err(Error::limit(
                format!("group order ≤ {MAX_ENUMERATED_ORDER}"),
                format!("d = {}", self.order),
            )),
        }
    }

    pub fn n_points(&self) -> u64 {
        self.n_points
    }

    /// Validates an exponent against this group.
    pub fn index(&self, k: u64) -> Result<GroupIndex> {
        if BigUint::from(k) >= self.order {
            return Err(Error::invalid(format!("exponent {k} is not below d = {}", self.order)));
        }
        Ok(GroupIndex(k))
    }

    /// `d_I` for a 0-based bitmask over cycles.
    fn d_mask(&self, mask: u64) -> BigUint {
        self.lengths
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(BigUint::one(), |acc, (_, &l)| acc.lcm(&BigUint::from(l)))
    }

    fn check_subset_cycles(&self) -> Result<()> {
        if self.t() > MAX_SUBSET_CYCLES {
            return Err(Error::limit(
                format!("at most {MAX_SUBSET_CYCLES} cycles"),
                format!("t = {}", self.t()),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// An exponent `k` with `0 ≤ k < d`, obtained from [`CycleType::index`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupIndex(u64);

impl GroupIndex {
    pub fn k(self) -> u64 {
        self.0
    }
}

/// A proper nonempty subset `I ⊊ [t]` of 1-based cycle indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IndexPartition {
    indices: NatSet,
    t: usize,
}

impl IndexPartition {
    pub fn new(ct: &CycleType, indices: NatSet) -> Result<Self> {
        let t = ct.t();
        if indices.is_empty() || indices.len() >= t {
            return Err(Error::invalid(format!("{indices} is not a proper nonempty subset of [{t}]")));
        }
        if indices.iter().any(|i| i == 0 || i as usize > t) {
            return Err(Error::invalid(format!("{indices} is not contained in [{t}]")));
        }
        Ok(IndexPartition { indices, t })
    }

    pub fn indices(&self) -> &NatSet {
        &self.indices
    }

    pub fn complement(&self) -> NatSet {
        (1..=self.t as u64).filter(|i| !self.indices.contains(*i)).collect()
    }

    fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, i| m | 1 << (i - 1))
    }
}

/// Cycle structure of a power `g^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PowerCycles {
    /// Nontrivial cycle length → number of such cycles.
    pub cycles: BTreeMap<u64, u64>,
    pub fixed_points: u64,
}

impl PowerCycles {
    /// The nontrivial cycle lengths as a multiset, ascending.
    pub fn nontrivial_lengths(&self) -> Vec<u64> {
        self.cycles
            .iter()
            .flat_map(|(&len, &mult)| std::iter::repeat_n(len, mult as usize))
            .collect()
    }
}

pub fn power_cycle_lengths(ct: &CycleType, k: GroupIndex) -> PowerCycles {
    let mut out = PowerCycles::default();
    for &l in ct.lengths() {
        let g = l.gcd(&k.0);
        let len = l / g;
        if len == 1 {
            out.fixed_points += l;
        } else {
            *out.cycles.entry(len).or_default() += g;
        }
    }
    out
}

pub fn d_i(ct: &CycleType, part: &IndexPartition) -> BigUint {
    ct.d_mask(part.mask())
}

/// Decides whether `g^k` is decomposable; on success returns the
/// lexicographically smallest witnessing index set `I`.
pub fn is_decomposable(ct: &CycleType, k: GroupIndex) -> Result<Option<IndexPartition>> {
    if k.0 == 0 {
        return Err(Error::invalid("the identity is neither decomposable nor indecomposable"));
    }
    ct.check_subset_cycles()?;
    let t = ct.t();
    let full = (1u64 << t) - 1;
    let k_big = BigUint::from(k.0);
    let witnesses = |mask: u64| {
        let d_in = ct.d_mask(mask);
        let d_out = ct.d_mask(full & !mask);
        let g = d_in.gcd(&d_out);
        (&k_big % &g).is_zero() && !(&k_big % &d_in).is_zero() && !(&k_big % &d_out).is_zero()
    };
    // Preorder DFS over sorted index sequences starting at 1 is lexicographic
    // order; complements are also witnesses, so some witness contains 1.
    let mut stack = vec![(1u64, 0usize)];
    while let Some((mask, last)) = stack.pop() {
        if mask != full && witnesses(mask) {
            let indices = (0..t).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect();
            return Ok(Some(IndexPartition::new(ct, indices)?));
        }
        for next in (last + 1..t).rev() {
            stack.push((mask | 1 << next, next));
        }
    }
    Ok(None)
}

/// Polynomial-time decomposability: after reducing each cycle length to
/// `ℓ_i / gcd(ℓ_i, k)`, the nontrivial cycles split into two coprime groups.
fn decomposable_by_components(ct: &CycleType, k: u64) -> bool {
    let reduced: Vec<u64> = ct
        .lengths()
        .iter()
        .map(|&l| l / l.gcd(&k))
        .filter(|&l| l > 1)
        .collect();
    is_decomposable_intrinsic(&reduced)
}

/// Decomposability from the nontrivial cycle lengths of `z` alone: true iff
/// the lengths split into two nonempty groups that are coprime across.
///
/// An empty multiset (the identity) is not decomposable.
pub fn is_decomposable_intrinsic(lengths: &[u64]) -> bool {
    let mut distinct: Vec<u64> = lengths.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    // Equal lengths ≥ 2 share a factor, so components are determined by the
    // distinct values.
    if distinct.len() <= 1 {
        return false;
    }
    let n = distinct.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && distinct[i].gcd(&distinct[j]) > 1 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().any(|s| !s)
}

/// `{ m ∈ [[d]] : ∀i, m ≡ 0 or m ≡ k (mod ℓ_i) }`, the exponents of the
/// subelements of `g^k`.
pub fn subelement_indices(ct: &CycleType, k: GroupIndex) -> Result<NatSet> {
    let d = ct.order_enumerable()?;
    let k = k.0;
    Ok((0..d)
        .filter(|&m| ct.lengths().iter().all(|&l| m % l == 0 || m % l == k % l))
        .collect())
}

/// Number of indecomposable non-identity elements, which is the degree of
/// every vertex of `P(G)`.
pub fn vertex_degree(ct: &CycleType) -> Result<u64> {
    let d = ct.order_enumerable()?;
    Ok((1..d).filter(|&k| !decomposable_by_components(ct, k)).count() as u64)
}

/// Closed-form sieve for the vertex degree over complement pairs
/// `{I, I^c}`; limited to `t ≤ 4`.
pub fn vertex_degree_sieve(ct: &CycleType) -> Result<BigInt> {
    let t = ct.t();
    if t > MAX_SIEVE_CYCLES {
        return Err(Error::limit(
            format!("sieve needs t ≤ {MAX_SIEVE_CYCLES}"),
            format!("t = {t}"),
        ));
    }
    let full = (1u64 << t) - 1;
    // One representative per pair: the masks containing cycle 1, excluding [t].
    let pairs: Vec<(BigUint, BigUint)> = (1..full)
        .filter(|m| m & 1 == 1)
        .map(|m| (ct.d_mask(m), ct.d_mask(full & !m)))
        .collect();
    let s = pairs.len();
    let d = ct.order();
    let mut total = BigInt::zero();
    for m_set in 0u32..1 << s {
        let y = (0..s)
            .filter(|i| m_set >> i & 1 == 1)
            .fold(BigUint::one(), |acc, i| acc.lcm(&pairs[i].0.gcd(&pairs[i].1)));
        // N ⊆ M and T ⊆ N, enumerated as submasks.
        let mut n_set = m_set;
        loop {
            let sign = if (m_set.count_ones() + n_set.count_ones()) % 2 == 0 { 1 } else { -1 };
            let mut t_set = n_set;
            loop {
                let z = (0..s).filter(|i| n_set >> i & 1 == 1).fold(BigUint::one(), |acc, i| {
                    let term = if t_set >> i & 1 == 1 { &pairs[i].0 } else { &pairs[i].1 };
                    acc.lcm(term)
                });
                let quotient = d / y.lcm(&z);
                total += BigInt::from(sign) * (BigInt::from(quotient) - 1);
                if t_set == 0 {
                    break;
                }
                t_set = (t_set - 1) & n_set;
            }
            if n_set == 0 {
                break;
            }
            n_set = (n_set - 1) & m_set;
        }
    }
    Ok(total)
}

/// True iff the vertex-edge graph of `P(G)` is complete, i.e. `d_I = d` or
/// `d_{I^c} = d` for every `I ⊆ [t]`.
///
/// Evaluated without enumerating subsets: for each prime power `p^e ∥ d` let
/// `A_p` be the cycles whose length is divisible by `p^e`. Some `I` has both
/// `d_I < d` and `d_{I^c} < d` exactly when two of the `A_p` are disjoint.
pub fn graph_is_complete(ct: &CycleType) -> bool {
    let mut top: BTreeMap<u64, u32> = BTreeMap::new();
    let factored: Vec<Vec<(u64, u32)>> = ct.lengths().iter().map(|&l| factorize(l)).collect();
    for f in &factored {
        for &(p, e) in f {
            let slot = top.entry(p).or_default();
            *slot = (*slot).max(e);
        }
    }
    let holders: Vec<Vec<bool>> = top
        .iter()
        .map(|(&p, &e)| factored.iter().map(|f| f.contains(&(p, e))).collect())
        .collect();
    holders.iter().enumerate().all(|(i, a)| {
        holders[i + 1..]
            .iter()
            .all(|b| a.iter().zip(b).any(|(&x, &y)| x && y))
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn ct(lengths: &[u64]) -> CycleType {
        CycleType::from_lengths(lengths).unwrap()
    }

    /// Explicit permutation of `g^k` on `n` points, cycles laid out
    /// consecutively.
    fn explicit_power(lengths: &[u64], k: u64) -> Vec<usize> {
        let mut perm = Vec::new();
        let mut offset = 0usize;
        for &l in lengths {
            let l = l as usize;
            for j in 0..l {
                perm.push(offset + (j + k as usize) % l);
            }
            offset += l;
        }
        perm
    }

    fn cycle_lengths_of(perm: &[usize]) -> Vec<u64> {
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// Brute force over all 2-splits of a multiset.
    fn split_oracle(lengths: &[u64]) -> bool {
        let r = lengths.len();
        (1..(1u64 << r) - 1).any(|mask| {
            (0..r).all(|i| {
                (0..r).all(|j| {
                    (mask >> i & 1 == 0) || (mask >> j & 1 == 1) || lengths[i].gcd(&lengths[j]) == 1
                })
            })
        })
    }

    #[test]
    fn normalization_drops_fixed_points() {
        let c = ct(&[4, 1]);
        assert_eq!(c.lengths(), &[4]);
        assert_eq!(c.input(), &[4, 1]);
        assert_eq!(ct(&[1, 1]).lengths(), &[1]);
        assert_eq!(ct(&[10, 18, 45]).order(), &BigUint::from(90u32));
        assert!(CycleType::new(vec![2, 0, 3]).is_err());
        assert!(CycleType::new(vec![]).is_err());
        assert!(ct(&[6]).index(6).is_err());
    }

    #[test]
    fn power_cycle_examples() {
        let c = ct(&[6, 10, 15]);
        let id = power_cycle_lengths(&c, c.index(0).unwrap());
        assert!(id.cycles.is_empty());
        assert_eq!(id.fixed_points, 31);

        let c4 = ct(&[4]);
        let sq = power_cycle_lengths(&c4, c4.index(2).unwrap());
        assert_eq!(sq.cycles, BTreeMap::from([(2, 2)]));

        let p3 = power_cycle_lengths(&c, c.index(3).unwrap());
        assert_eq!(p3.cycles, BTreeMap::from([(2, 3), (5, 3), (10, 1)]));
        assert_eq!(p3.fixed_points, 0);
        let mut oracle = cycle_lengths_of(&explicit_power(&[6, 10, 15], 3));
        oracle.retain(|&l| l > 1);
        assert_eq!(p3.nontrivial_lengths(), oracle);
    }

    #[test]
    fn d_i_examples() {
        let c = ct(&[6, 10, 15]);
        let part = |xs: &[u64]| IndexPartition::new(&c, xs.iter().copied().collect()).unwrap();
        assert_eq!(d_i(&c, &part(&[1])), BigUint::from(6u32));
        assert_eq!(d_i(&c, &part(&[1, 2])), BigUint::from(30u32));
        let c2 = ct(&[2, 3]);
        let i2 = IndexPartition::new(&c2, NatSet::from([2])).unwrap();
        assert_eq!(d_i(&c2, &i2), BigUint::from(3u32));
        assert!(IndexPartition::new(&c2, NatSet::from([1, 2])).is_err());
        assert!(IndexPartition::new(&c2, NatSet::new()).is_err());
    }

    #[test]
    fn decomposability_examples() {
        let c = ct(&[2, 3]);
        let w = is_decomposable(&c, c.index(1).unwrap()).unwrap().unwrap();
        assert_eq!(w.indices(), &NatSet::from([1]));
        assert!(is_decomposable(&c, c.index(2).unwrap()).unwrap().is_none());
        assert!(matches!(is_decomposable(&c, c.index(0).unwrap()), Err(Error::InvalidInput(_))));

        let big = ct(&[6, 10, 15]);
        for k in 1..30 {
            assert!(is_decomposable(&big, big.index(k).unwrap()).unwrap().is_none(), "k = {k}");
        }
    }

    #[test]
    fn decomposability_against_factor_search() {
        // g^k decomposes iff it is a product of two non-identity elements of G
        // with disjoint support.
        for lengths in [vec![2, 3], vec![2, 4], vec![4, 6], vec![2, 3, 4], vec![6, 10, 15], vec![2, 2, 3]] {
            let c = ct(&lengths);
            let d = c.order().to_u64().unwrap();
            let perms: Vec<Vec<usize>> = (0..d).map(|k| explicit_power(&lengths, k)).collect();
            let support = |p: &Vec<usize>| -> Vec<bool> { p.iter().enumerate().map(|(i, &x)| i != x).collect() };
            for k in 1..d {
                let target = &perms[k as usize];
                let oracle = (1..d).any(|r| {
                    let s = (k + d - r) % d;
                    s != 0
                        && support(&perms[r as usize])
                            .iter()
                            .zip(support(&perms[s as usize]))
                            .all(|(a, b)| !(*a && b))
                        && (0..target.len()).all(|i| perms[r as usize][perms[s as usize][i]] == target[i])
                });
                let got = is_decomposable(&c, c.index(k).unwrap()).unwrap().is_some();
                assert_eq!(got, oracle, "{lengths:?} k={k}");
            }
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let c = ct(&[2, 3, 5]);
        // g^1 = (12)(345)(6789 10): {1} already splits off the transposition.
        let w = is_decomposable(&c, c.index(1).unwrap()).unwrap().unwrap();
        assert_eq!(w.indices(), &NatSet::from([1]));
        let c = ct(&[2, 4, 3]);
        // Cycles 1 and 2 share the factor 2 for odd k, so {1} fails and {1,2} wins.
        let w = is_decomposable(&c, c.index(1).unwrap()).unwrap().unwrap();
        assert_eq!(w.indices(), &NatSet::from([1, 2]));
    }

    #[test]
    fn intrinsic_examples() {
        assert!(is_decomposable_intrinsic(&[2, 3]));
        assert!(!is_decomposable_intrinsic(&[2, 4]));
        assert!(!is_decomposable_intrinsic(&[]));
        let c = ct(&[6, 10, 15]);
        let lens = power_cycle_lengths(&c, c.index(3).unwrap()).nontrivial_lengths();
        assert_eq!(is_decomposable_intrinsic(&lens), split_oracle(&lens));
        assert!(!is_decomposable_intrinsic(&lens));
        assert!(is_decomposable_intrinsic(&[2, 2, 3, 5, 5]) == split_oracle(&[2, 2, 3, 5, 5]));
    }

    #[test]
    fn subelement_examples() {
        let c = ct(&[2, 3]);
        assert_eq!(subelement_indices(&c, c.index(1).unwrap()).unwrap(), NatSet::from([0, 1, 3, 4]));
        assert_eq!(subelement_indices(&c, c.index(0).unwrap()).unwrap(), NatSet::from([0]));
        let c4 = ct(&[4]);
        assert_eq!(subelement_indices(&c4, c4.index(2).unwrap()).unwrap(), NatSet::from([0, 2]));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(vertex_degree(&ct(&[2, 3])).unwrap(), 3);
        assert_eq!(vertex_degree(&ct(&[7])).unwrap(), 6);
        assert_eq!(vertex_degree(&ct(&[6, 10, 15])).unwrap(), 29);
        assert_eq!(vertex_degree(&ct(&[10, 18, 45])).unwrap(), 89);
        assert_eq!(vertex_degree_sieve(&ct(&[2, 3])).unwrap(), BigInt::from(3));
        assert_eq!(vertex_degree_sieve(&ct(&[6, 10, 15])).unwrap(), BigInt::from(29));
        assert_eq!(vertex_degree_sieve(&ct(&[10, 18, 45])).unwrap(), BigInt::from(89));
        assert_eq!(vertex_degree_sieve(&ct(&[12])).unwrap(), BigInt::from(11));
        assert!(matches!(vertex_degree_sieve(&ct(&[2, 3, 5, 7, 11])), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn completeness_examples() {
        assert!(graph_is_complete(&ct(&[6, 10, 15])));
        assert!(!graph_is_complete(&ct(&[2, 3])));
        assert!(graph_is_complete(&ct(&[5])));
    }

    fn literal_completeness(c: &CycleType) -> bool {
        let full = (1u64 << c.t()) - 1;
        (0..=full).all(|m| &c.d_mask(m) == c.order() || &c.d_mask(full & !m) == c.order())
    }

    fn small_type() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(2u64..=24, 1..=4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn completeness_matches_subset_definition(lengths in small_type()) {
            let c = ct(&lengths);
            prop_assert_eq!(graph_is_complete(&c), literal_completeness(&c));
        }

        #[test]
        fn criteria_agree(lengths in small_type()) {
            let c = ct(&lengths);
            prop_assume!(c.order().to_u64().unwrap() <= 2000);
            let d = c.order().to_u64().unwrap();
            for k in 1..d {
                let idx = c.index(k).unwrap();
                let dec = is_decomposable(&c, idx).unwrap().is_some();
                let intrinsic = is_decomposable_intrinsic(&power_cycle_lengths(&c, idx).nontrivial_lengths());
                prop_assert_eq!(dec, intrinsic);
                let subs = subelement_indices(&c, idx).unwrap();
                prop_assert_eq!(dec, subs.len() > 2);
                prop_assert!(subs.contains(0) && subs.contains(k));
                for m in subs.iter() {
                    prop_assert!(subs.contains((k + d - m) % d));
                }
            }
            let deg = vertex_degree(&c).unwrap();
            prop_assert_eq!(graph_is_complete(&c), deg == d - 1);
            if c.t() <= 4 {
                prop_assert_eq!(vertex_degree_sieve(&c).unwrap(), BigInt::from(deg));
            }
        }
    }
}
