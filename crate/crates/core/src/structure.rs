//! Dimension formulas and structural classification of `P(G)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::group::CycleType;

/// Largest `t` for the `2^t`-term inclusion–exclusion formula.
pub const MAX_INCLUSION_EXCLUSION_CYCLES: usize = 20;

/// `|{ k ∈ [d-1] : (d/ℓ_i) | k for some i }|`.
pub fn dimension_divisibility(ct: &CycleType) -> Result<u64> {
    let d = ct.order_enumerable()?;
    let steps: Vec<u64> = ct.lengths().iter().map(|&l| d / l).collect();
    Ok((1..d).filter(|k| steps.iter().any(|s| k % s == 0)).count() as u64)
}

/// Number of distinct nontrivial `ℓ_i`-th roots of unity, counted as reduced
/// fractions `j/ℓ_i` in `(0, 1)`.
pub fn dimension_roots_of_unity(ct: &CycleType) -> u64 {
    let mut roots = BTreeSet::new();
    for &l in ct.lengths() {
        for j in 1..l {
            let g = j.gcd(&l);
            roots.insert((j / g, l / g));
        }
    }
    roots.len() as u64
}

/// `-1 + Σ_{∅≠I⊆[t]} (-1)^{|I|+1} gcd(ℓ_i : i ∈ I)`.
pub fn dimension_inclusion_exclusion(ct: &CycleType) -> Result<u64> {
    let t = ct.t();
    if t > MAX_INCLUSION_EXCLUSION_CYCLES {
        return Err(Error::limit(
            format!("inclusion-exclusion needs t ≤ {MAX_INCLUSION_EXCLUSION_CYCLES}"),
            format!("t = {t}"),
        ));
    }
    let lengths = ct.lengths();
    let mut total: i128 = -1;
    for mask in 1u32..1 << t {
        let g = gcd_all((0..t).filter(|i| mask >> i & 1 == 1).map(|i| lengths[i]));
        if mask.count_ones() % 2 == 1 {
            total += g as i128;
        } else {
            total -= g as i128;
        }
    }
    Ok(u64::try_from(total).expect("dimension is nonnegative"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Simplex,
    ProductOfSimplices,
    JoinOfTwoOrbit,
    General,
}

/// Every label that applies; `classification` reports the strongest one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub simplex: bool,
    pub product_of_simplices: bool,
    pub two_orbit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownCounts {
    #[serde(with = "crate::serde_num::int")]
    pub vertex_count: BigUint,
    pub facet_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub dim: u64,
    /// `q = gcd(ℓ_i)`: `P(G)` is the `q`-fold lattice join of `P(H)` for the
    /// group generated by a product of cycles of lengths `ℓ_i / q`.
    pub q_join_multiplicity: u64,
    pub reduced_type: CycleType,
    pub classification: Classification,
    pub flags: StructureFlags,
    /// For two orbits, the simplex dimensions `(ℓ_1/q - 1, ℓ_2/q - 1)` of
    /// the joined product.
    pub join_factors: Option<(u64, u64)>,
    pub facts: Option<KnownCounts>,
}

pub fn classify(ct: &CycleType) -> StructureReport {
    let lengths = ct.lengths();
    let d = ct.order();
    let q = gcd_all(lengths.iter().copied());
    let reduced_type = CycleType::new(lengths.iter().map(|&l| l / q).collect())
        .expect("dividing by the gcd keeps lengths positive");
    let simplex = lengths.iter().any(|&l| &BigUint::from(l) == d);
    let coprime = lengths.len() >= 2
        && (0..lengths.len()).all(|i| (i + 1..lengths.len()).all(|j| lengths[i].gcd(&lengths[j]) == 1));
    let two_orbit = lengths.len() == 2;
    let flags = StructureFlags {
        simplex,
        product_of_simplices: coprime,
        two_orbit,
    };

    let classification = if simplex {
        Classification::Simplex
    } else if coprime {
        Classification::ProductOfSimplices
    } else if two_orbit {
        Classification::JoinOfTwoOrbit
    } else {
        Classification::General
    };

    let join_factors = two_orbit.then(|| (lengths[0] / q - 1, lengths[1] / q - 1));
    let facts = match classification {
        Classification::Simplex => Some(KnownCounts {
            vertex_count: d.clone(),
            facet_count: if lengths == [1] { 0 } else { lengths.iter().copied().max().unwrap_or(1) },
        }),
        Classification::ProductOfSimplices | Classification::JoinOfTwoOrbit => Some(KnownCounts {
            vertex_count: d.clone(),
            facet_count: lengths.iter().sum(),
        }),
        Classification::General => None,
    };

    StructureReport {
        dim: dimension_roots_of_unity(ct),
        q_join_multiplicity: q,
        reduced_type,
        classification,
        flags,
        join_factors,
        facts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{affine_rank, all_vertices};
    use crate::group::tests::ct;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn divisibility_examples() {
        assert_eq!(dimension_divisibility(&ct(&[2, 4, 8])).unwrap(), 7);
        assert_eq!(dimension_divisibility(&ct(&[11])).unwrap(), 10);
        assert_eq!(dimension_divisibility(&ct(&[6, 10, 15])).unwrap(), 21);
    }

    #[test]
    fn roots_examples() {
        assert_eq!(dimension_roots_of_unity(&ct(&[2, 4, 8])), 7);
        assert_eq!(dimension_roots_of_unity(&ct(&[2, 3])), 3);
        assert_eq!(dimension_roots_of_unity(&ct(&[1])), 0);
    }

    #[test]
    fn inclusion_exclusion_examples() {
        assert_eq!(dimension_inclusion_exclusion(&ct(&[6, 10, 15])).unwrap(), 21);
        assert_eq!(dimension_inclusion_exclusion(&ct(&[9])).unwrap(), 8);
        assert_eq!(dimension_inclusion_exclusion(&ct(&[6, 10])).unwrap(), 13);
        let many: Vec<u64> = (2..=22).collect();
        assert!(matches!(
            dimension_inclusion_exclusion(&ct(&many)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let r = classify(&ct(&[9]));
        assert_eq!(r.classification, Classification::Simplex);
        assert_eq!(r.dim, 8);

        let r = classify(&ct(&[4, 6]));
        assert_eq!(r.classification, Classification::JoinOfTwoOrbit);
        assert_eq!(r.q_join_multiplicity, 2);
        assert_eq!(r.dim, 7);
        assert_eq!(r.join_factors, Some((1, 2)));
        let facts = r.facts.unwrap();
        assert_eq!(facts.vertex_count, BigUint::from(12u32));
        assert_eq!(facts.facet_count, 10);
        assert_eq!(r.reduced_type.input(), &[2, 3]);

        let r = classify(&ct(&[2, 3, 5]));
        assert_eq!(r.classification, Classification::ProductOfSimplices);
        assert_eq!(r.dim, 7);

        let r = classify(&ct(&[6, 10, 15]));
        assert_eq!(r.classification, Classification::General);
        assert_eq!(r.dim, 21);
        assert!(r.facts.is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn dimension_routes_agree(lengths in proptest::collection::vec(1u64..=30, 1..=4)) {
            let c = ct(&lengths);
            let roots = dimension_roots_of_unity(&c);
            prop_assert_eq!(dimension_divisibility(&c).unwrap(), roots);
            prop_assert_eq!(dimension_inclusion_exclusion(&c).unwrap(), roots);
            let d = c.order().to_u64().unwrap();
            let max_len = *c.lengths().iter().max().unwrap();
            prop_assert!(max_len - 1 <= roots && roots < d.max(1));
            let r = classify(&c);
            prop_assert_eq!(r.classification == Classification::Simplex, roots + 1 == d);
            let q = r.q_join_multiplicity;
            let expected: Vec<u64> = c.lengths().iter().map(|&l| l / q).collect();
            prop_assert_eq!(r.reduced_type.input(), expected.as_slice());
            if c.t() == 2 {
                let (l1, l2) = (c.lengths()[0], c.lengths()[1]);
                prop_assert_eq!(roots, l1 + l2 - l1.gcd(&l2) - 1);
            }
            if d <= 500 {
                prop_assert_eq!(affine_rank(&all_vertices(&c).unwrap()) as u64, roots);
            }
        }
    }
}
