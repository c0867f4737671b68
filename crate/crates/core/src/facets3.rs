//! The three-orbit family `P(a,b,c)`, generated by disjoint cycles of
//! lengths `ab`, `ac`, `bc` for pairwise coprime `a, b, c`.
//!
//! Vertex `k ∈ [[abc]]` is identified with `(k mod a, k mod b, k mod c)`.
//! Coordinates come in three blocks `x ∈ R^{ab}`, `y ∈ R^{ac}`,
//! `z ∈ R^{bc}`, and `π_x(k) = k mod ab` etc. picks the 1 in each block.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{crt_pair, NatSet};
use crate::embed::{vertex_vector, VertexVector};
use crate::error::{Error, Result};
use crate::group::CycleType;
use crate::hull::Functional;
use crate::linalg;
use crate::rational::Rational;

/// Default cap on the number of checkerboard facets produced in one call.
pub const DEFAULT_CHECKERBOARD_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbcSpec {
    a: u64,
    b: u64,
    c: u64,
}

impl AbcSpec {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a < 2 || b < 2 || c < 2 {
            return Err(Error::invalid(format!("a, b, c must be at least 2, got ({a},{b},{c})")));
        }
        for (x, y) in [(a, b), (a, c), (b, c)] {
            if x.gcd(&y) != 1 {
                return Err(Error::invalid(format!("{x} and {y} are not coprime")));
            }
        }
        let abc = a.checked_mul(b).and_then(|ab| ab.checked_mul(c));
        if abc.is_none_or(|v| v > u32::MAX as u64) {
            return Err(Error::invalid(format!("abc too large for ({a},{b},{c})")));
        }
        Ok(AbcSpec { a, b, c })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn ab(&self) -> u64 {
        self.a * self.b
    }

    pub fn ac(&self) -> u64 {
        self.a * self.c
    }

    pub fn bc(&self) -> u64 {
        self.b * self.c
    }

    /// Cycle type `(ab, ac, bc)`.
    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(vec![self.ab(), self.ac(), self.bc()]).expect("lengths are at least 6")
    }

    pub fn vertex_count(&self) -> u64 {
        self.a * self.b * self.c
    }

    /// Ambient dimension `ab + ac + bc`.
    pub fn n(&self) -> u64 {
        self.ab() + self.ac() + self.bc()
    }

    pub fn dim(&self) -> u64 {
        self.n() - self.a - self.b - self.c
    }

    fn vertices(&self) -> Vec<VertexVector> {
        (0..self.vertex_count()).map(|k| abc_vertex(self, k)).collect()
    }

    fn block_sizes(&self) -> [u64; 3] {
        [self.ab(), self.ac(), self.bc()]
    }
}

/// Ones at `x_{k mod ab}`, `y_{k mod ac}`, `z_{k mod bc}`.
pub fn abc_vertex(spec: &AbcSpec, k: u64) -> VertexVector {
    let ct = spec.cycle_type();
    vertex_vector(&ct, ct.index(k).expect("k < abc"))
}

/// Which coordinate block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    X,
    Y,
    Z,
}

impl Block {
    const ALL: [Block; 3] = [Block::X, Block::Y, Block::Z];

    fn index(self) -> usize {
        self as usize
    }
}

/// `S_x ⊊ [[ab]]`, `S_y ⊊ [[ac]]`, `S_z ⊊ [[bc]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    sets: [NatSet; 3],
}

impl FaceSpec {
    pub fn new(spec: &AbcSpec, s_x: NatSet, s_y: NatSet, s_z: NatSet) -> Result<Self> {
        let sets = [s_x, s_y, s_z];
        for (set, size) in sets.iter().zip(spec.block_sizes()) {
            if set.iter().any(|i| i >= size) || set.len() as u64 == size {
                return Err(Error::invalid(format!("{set} is not a proper subset of [[{size}]]")));
            }
        }
        Ok(FaceSpec { sets })
    }

    pub fn set(&self, block: Block) -> &NatSet {
        &self.sets[block.index()]
    }
}

fn projection(spec: &AbcSpec, block: Block, k: u64) -> u64 {
    k % spec.block_sizes()[block.index()]
}

/// `F_i(S_i) = π_i^{-1}(S_i)` as a membership table over `[[abc]]`.
fn preimage(spec: &AbcSpec, block: Block, set: &NatSet) -> Vec<bool> {
    (0..spec.vertex_count())
        .map(|k| set.contains(projection(spec, block, k)))
        .collect()
}

fn preimages(spec: &AbcSpec, f: &FaceSpec) -> [Vec<bool>; 3] {
    Block::ALL.map(|b| preimage(spec, b, f.set(b)))
}

/// Both hypotheses of the face criterion: `F_x ∩ F_y ∩ F_z = ∅`, and for every
/// permutation `(i,j,k)` of the blocks
/// `F_i ∩ π_k^{-1}(π_k(F_i ∩ F_j)) ⊆ F_j`.
pub fn face_criterion_holds(spec: &AbcSpec, f: &FaceSpec) -> bool {
    let fs = preimages(spec, f);
    let abc = spec.vertex_count() as usize;
    if (0..abc).any(|v| fs[0][v] && fs[1][v] && fs[2][v]) {
        return false;
    }
    for i in Block::ALL {
        for j in Block::ALL {
            if i == j {
                continue;
            }
            let k = Block::ALL.into_iter().find(|&b| b != i && b != j).expect("three blocks");
            let (fi, fj) = (&fs[i.index()], &fs[j.index()]);
            let shadow: NatSet = (0..abc)
                .filter(|&v| fi[v] && fj[v])
                .map(|v| projection(spec, k, v as u64))
                .collect();
            let violated = (0..abc).any(|v| fi[v] && shadow.contains(projection(spec, k, v as u64)) && !fj[v]);
            if violated {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    VerifiedFacet,
    VerifiedFaceOnly,
    Failed,
}

/// A claimed valid inequality `λ·v ≥ offset` with its claimed tight set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetCertificate {
    #[serde(with = "crate::serde_num::int_vec")]
    pub lambda: Vec<BigInt>,
    #[serde(with = "crate::serde_num::rational")]
    pub offset: Rational,
    pub tight: NatSet,
    pub status: CertStatus,
}

impl FacetCertificate {
    /// The inequality as a functional `−offset + λ·x ≥ 0`, scaled to integers.
    pub fn functional(&self) -> Functional {
        let den = self.offset.denom();
        let offset = -(self.offset.numer());
        Functional::new(offset, self.lambda.iter().map(|x| x * &den).collect())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::invalid(format!("bad certificate: {e}")))
    }
}

/// Re-derives the status of a claimed inequality against a point set of
/// dimension `dim`: `failed` unless `λ·v ≥ offset` everywhere with equality
/// exactly on `tight` (nonempty, proper); then `verified_facet` iff the tight
/// points have affine rank `dim − 1`.
pub fn certify(points: &[VertexVector], dim: usize, lambda: &[BigInt], offset: &Rational, tight: &NatSet) -> CertStatus {
    if points.first().is_some_and(|p| p.len() != lambda.len()) {
        return CertStatus::Failed;
    }
    let mut found = NatSet::new();
    for (k, p) in points.iter().enumerate() {
        let value: BigInt = lambda.iter().zip(p.iter()).filter(|(_, &x)| x != 0).map(|(l, &x)| l * x).sum();
        let value = Rational::from_bigint(value);
        if value < *offset {
            return CertStatus::Failed;
        }
        if value == *offset {
            found.insert(k as u64);
        }
    }
    if &found != tight || found.is_empty() || found.len() == points.len() {
        return CertStatus::Failed;
    }
    let rows: Vec<Vec<i64>> = found.iter().map(|k| points[k as usize].to_vec()).collect();
    if dim >= 1 && linalg::affine_rank(&rows) == dim - 1 {
        CertStatus::VerifiedFacet
    } else {
        CertStatus::VerifiedFaceOnly
    }
}

/// Certificate for `λ·v ≥ offset` on `P(a,b,c)`, status filled in.
pub fn certify_abc(spec: &AbcSpec, lambda: Vec<BigInt>, offset: Rational, tight: NatSet) -> FacetCertificate {
    certify_with(&spec.vertices(), spec.dim() as usize, lambda, offset, tight)
}

fn certify_with(points: &[VertexVector], dim: usize, lambda: Vec<BigInt>, offset: Rational, tight: NatSet) -> FacetCertificate {
    let status = certify(points, dim, &lambda, &offset, &tight);
    FacetCertificate {
        lambda,
        offset,
        tight,
        status,
    }
}

/// The `n` coordinate facets `x_i ≥ 0`, `y_j ≥ 0`, `z_k ≥ 0`, in that order.
pub fn nonessential_facets(spec: &AbcSpec) -> Vec<FacetCertificate> {
    let points = spec.vertices();
    let dim = spec.dim() as usize;
    let n = spec.n() as usize;
    let mut jobs = Vec::with_capacity(n);
    let mut start = 0usize;
    for block in Block::ALL {
        let size = spec.block_sizes()[block.index()];
        for i in 0..size {
            jobs.push((block, i, start + i as usize));
        }
        start += size as usize;
    }
    jobs.into_par_iter()
        .map(|(block, i, position)| {
            let mut lambda = vec![BigInt::zero(); n];
            lambda[position] = BigInt::from(1);
            let tight = (0..spec.vertex_count()).filter(|&k| projection(spec, block, k) != i).collect();
            certify_with(&points, dim, lambda, Rational::zero(), tight)
        })
        .collect()
}

/// The face-criterion functional: on block `i`, `−1` on `S_i`, `+1` on
/// `π_i(F_j ∩ F_k)`, `0` elsewhere; offset `−1`; claimed tight set
/// `F_x ∪ F_y ∪ F_z`.
pub fn face_criterion_functional(spec: &AbcSpec, f: &FaceSpec) -> Result<FacetCertificate> {
    face_criterion_functional_with(spec, f, &spec.vertices())
}

fn face_criterion_functional_with(spec: &AbcSpec, f: &FaceSpec, points: &[VertexVector]) -> Result<FacetCertificate> {
    if !face_criterion_holds(spec, f) {
        return Err(Error::invalid("the face criterion hypotheses do not hold"));
    }
    let fs = preimages(spec, f);
    let abc = spec.vertex_count() as usize;
    let mut lambda = Vec::with_capacity(spec.n() as usize);
    for i in Block::ALL {
        let [j, k] = match i {
            Block::X => [Block::Y, Block::Z],
            Block::Y => [Block::X, Block::Z],
            Block::Z => [Block::X, Block::Y],
        };
        let others: NatSet = (0..abc)
            .filter(|&v| fs[j.index()][v] && fs[k.index()][v])
            .map(|v| projection(spec, i, v as u64))
            .collect();
        for m in 0..spec.block_sizes()[i.index()] {
            let entry = if f.set(i).contains(m) {
                -1
            } else if others.contains(m) {
                1
            } else {
                0
            };
            lambda.push(BigInt::from(entry));
        }
    }
    let tight = (0..abc).filter(|&v| fs.iter().any(|f| f[v])).map(|v| v as u64).collect();
    Ok(certify_with(points, spec.dim() as usize, lambda, Rational::from_int(-1), tight))
}

/// `∅ ≠ I ⊊ [[a]]`, `∅ ≠ J ⊊ [[b]]`, `∅ ≠ K ⊊ [[c]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CheckerboardTriple {
    i: NatSet,
    j: NatSet,
    k: NatSet,
}

impl CheckerboardTriple {
    pub fn new(spec: &AbcSpec, i: NatSet, j: NatSet, k: NatSet) -> Result<Self> {
        for (set, size) in [(&i, spec.a), (&j, spec.b), (&k, spec.c)] {
            if set.is_empty() || set.len() as u64 >= size || set.iter().any(|x| x >= size) {
                return Err(Error::invalid(format!("{set} is not a nonempty proper subset of [[{size}]]")));
            }
        }
        Ok(CheckerboardTriple { i, j, k })
    }

    pub fn i(&self) -> &NatSet {
        &self.i
    }

    pub fn j(&self) -> &NatSet {
        &self.j
    }

    pub fn k(&self) -> &NatSet {
        &self.k
    }

    pub fn complement(&self, spec: &AbcSpec) -> Self {
        CheckerboardTriple {
            i: self.i.complement_in(spec.a),
            j: self.j.complement_in(spec.b),
            k: self.k.complement_in(spec.c),
        }
    }

    /// The representative with `0 ∈ I`.
    pub fn canonical(&self, spec: &AbcSpec) -> Self {
        if self.i.contains(0) {
            self.clone()
        } else {
            self.complement(spec)
        }
    }
}

/// `A × B^c ∪ A^c × B` inside `[[p]] × [[q]] ≅ [[pq]]`.
fn mixed_product(a: &NatSet, p: u64, b: &NatSet, q: u64) -> NatSet {
    let mut out = NatSet::new();
    for x in 0..p {
        for y in 0..q {
            if a.contains(x) != b.contains(y) {
                out.insert(crt_pair(x, p, y, q));
            }
        }
    }
    out
}

pub fn checkerboard_face_spec(spec: &AbcSpec, t: &CheckerboardTriple) -> FaceSpec {
    FaceSpec {
        sets: [
            mixed_product(&t.i, spec.a, &t.j, spec.b),
            mixed_product(&t.i, spec.a, &t.k, spec.c),
            mixed_product(&t.j, spec.b, &t.k, spec.c),
        ],
    }
}

/// All vertices except `I × J × K` and `I^c × J^c × K^c`.
pub fn checkerboard_vertex_set(spec: &AbcSpec, t: &CheckerboardTriple) -> NatSet {
    (0..spec.vertex_count())
        .filter(|&v| {
            let inside = [
                t.i.contains(v % spec.a),
                t.j.contains(v % spec.b),
                t.k.contains(v % spec.c),
            ];
            !(inside == [true; 3] || inside == [false; 3])
        })
        .collect()
}

/// `(2^a − 2)(2^b − 2)(2^c − 2) / 2`, or `None` on overflow.
pub fn checkerboard_count(spec: &AbcSpec) -> Option<u128> {
    let term = |x: u64| -> Option<u128> { 1u128.checked_shl(x as u32).filter(|_| x < 127).map(|v| v - 2) };
    term(spec.a)?.checked_mul(term(spec.b)?)?.checked_mul(term(spec.c)?).map(|v| v / 2)
}

/// `½(2^a − 2)(2^b − 2)(2^c − 2) + ab + ac + bc`, or `None` on overflow.
pub fn facet_lower_bound(spec: &AbcSpec) -> Option<u128> {
    checkerboard_count(spec)?.checked_add(spec.n() as u128)
}

fn nonempty_proper_subsets(size: u64, containing_zero: bool) -> Vec<NatSet> {
    (1u64..(1 << size) - 1)
        .filter(|mask| !containing_zero || mask & 1 == 1)
        .map(|mask| (0..size).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Canonical triples (`0 ∈ I`), ordered by `(I, J, K)` bitmask.
pub fn canonical_triples(spec: &AbcSpec, max_count: u64) -> Result<Vec<CheckerboardTriple>> {
    let count = checkerboard_count(spec);
    if count.is_none_or(|c| c > max_count as u128) {
        let shown = count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string());
        return Err(Error::limit(format!("max checkerboard facets {max_count}"), format!("would produce {shown}")));
    }
    let is = nonempty_proper_subsets(spec.a, true);
    let js = nonempty_proper_subsets(spec.b, false);
    let ks = nonempty_proper_subsets(spec.c, false);
    let mut out = Vec::with_capacity(count.unwrap_or(0) as usize);
    for i in &is {
        for j in &js {
            for k in &ks {
                out.push(CheckerboardTriple {
                    i: i.clone(),
                    j: j.clone(),
                    k: k.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Certified checkerboard facets, one per canonical triple, in the order of
/// [`canonical_triples`]. Fails if two triples give the same vertex set or
/// any certificate does not verify as a facet.
pub fn enumerate_checkerboard_facets(spec: &AbcSpec, max_count: u64) -> Result<Vec<FacetCertificate>> {
    let triples = canonical_triples(spec, max_count)?;
    let points = spec.vertices();
    let certs: Vec<FacetCertificate> = triples
        .par_iter()
        .map(|t| {
            let cert = face_criterion_functional_with(spec, &checkerboard_face_spec(spec, t), &points)?;
            if cert.status != CertStatus::VerifiedFacet || cert.tight != checkerboard_vertex_set(spec, t) {
                return Err(Error::invalid(format!(
                    "checkerboard triple I={} J={} K={} did not certify as a facet",
                    t.i, t.j, t.k
                )));
            }
            Ok(cert)
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::with_capacity(certs.len());
    for (cert, t) in certs.iter().zip(&triples) {
        if !seen.insert(&cert.tight) {
            return Err(Error::invalid(format!(
                "triple I={} J={} K={} repeats an earlier vertex set",
                t.i, t.j, t.k
            )));
        }
    }
    Ok(certs)
}
