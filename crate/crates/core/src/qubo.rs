//! Pair-selection QUBO for the postman matching step.
//!
//! For `d` odd nodes there is one binary variable `x_ij` per ordered pair
//! `i != j`, laid out lexicographically (`x01, x02, …, x10, x12, …`). The
//! objective is
//!
//! ```text
//! Q(x) = Σ_{i≠j} W_ij x_ij + p·P1(x) + p·P2(x)
//! P1(x) = Σ_i (1 − Σ_{j≠i} (x_ij + x_ji))²
//! P2(x) = Σ_k Σ_{i≠k, j≠k, i≠j} (x_ik x_jk + x_ki x_kj)
//! ```
//!
//! Expanded, this gives offset `p·d`, linear terms `W_ij − 2p`, and pairwise
//! terms `4p` for reversed pairs and pairs sharing a node in the same slot,
//! `2p` for pairs sharing a node across slots, `0` otherwise. `P1` and `P2`
//! vanish exactly on assignments that encode a perfect matching with one
//! orientation per pair, so for `p >= d` the minimum of `Q` is `M_min`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cpp::{Matching, OddPairDistances};
use crate::error::Violation;
use crate::ising::IsingModel;
use crate::rational::{self, int};
use crate::{Error, Rational, Result};

/// Index map between ordered odd-node pairs and QUBO variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEncoding {
    pub d: usize,
}

impl PairEncoding {
    pub fn new(d: usize) -> Self {
        PairEncoding { d }
    }

    pub fn dim(&self) -> usize {
        self.d * self.d.saturating_sub(1)
    }

    /// Variable index of `x_ij`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j && i < self.d && j < self.d);
        i * (self.d - 1) + if j < i { j } else { j - 1 }
    }

    /// Ordered pair `(i, j)` of variable `k`.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        let i = k / (self.d - 1);
        let r = k % (self.d - 1);
        (i, if r < i { r } else { r + 1 })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(|k| self.pair(k))
    }
}

/// Number of variable pairs that share at least one odd node.
///
/// This is the count of nonzero pairwise terms of the built model.
pub fn shared_pair_count(d: usize) -> usize {
    if d < 2 {
        return 0;
    }
    let n = d * (d - 1);
    n * (4 * d - 7) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuboModel {
    linear: Vec<Rational>,
    /// Upper-triangular pairwise terms, keyed `(k, l)` with `k < l`; zeros are not stored.
    quadratic: BTreeMap<(usize, usize), Rational>,
    offset: Rational,
    encoding: Option<PairEncoding>,
    penalty: Option<Rational>,
}

impl QuboModel {
    pub fn new(dim: usize) -> Self {
        QuboModel {
            linear: vec![Rational::zero(); dim],
            quadratic: BTreeMap::new(),
            offset: Rational::zero(),
            encoding: None,
            penalty: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[Rational] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.quadratic
    }

    pub fn offset(&self) -> Rational {
        self.offset
    }

    pub fn encoding(&self) -> Option<PairEncoding> {
        self.encoding
    }

    pub fn penalty(&self) -> Option<Rational> {
        self.penalty
    }

    pub fn set_encoding(&mut self, encoding: Option<PairEncoding>, penalty: Option<Rational>) {
        self.encoding = encoding;
        self.penalty = penalty;
    }

    pub fn add_offset(&mut self, c: Rational) {
        self.offset += c;
    }

    pub fn add_linear(&mut self, k: usize, a: Rational) {
        self.linear[k] += a;
    }

    /// Adds `b · x_k x_l`; `k == l` folds into the linear term since `x² = x`.
    pub fn add_quadratic(&mut self, k: usize, l: usize, b: Rational) {
        if k == l {
            self.add_linear(k, b);
            return;
        }
        let key = if k < l { (k, l) } else { (l, k) };
        let entry = self.quadratic.entry(key).or_insert_with(Rational::zero);
        *entry += b;
        if entry.is_zero() {
            self.quadratic.remove(&key);
        }
    }

    pub fn coupling(&self, k: usize, l: usize) -> Rational {
        let key = if k < l { (k, l) } else { (l, k) };
        self.quadratic
            .get(&key)
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    /// Number of nonzero pairwise terms.
    pub fn interaction_count(&self) -> usize {
        self.quadratic.len()
    }

    pub fn nonzero_linear_count(&self) -> usize {
        self.linear.iter().filter(|a| !a.is_zero()).count()
    }

    /// `Q(x)` including the constant offset.
    pub fn energy(&self, x: &[bool]) -> Result<Rational> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.energy_unchecked(x))
    }

    pub(crate) fn energy_unchecked(&self, x: &[bool]) -> Rational {
        let mut e = self.offset;
        for (k, a) in self.linear.iter().enumerate() {
            if x[k] {
                e += a;
            }
        }
        for (&(k, l), b) in &self.quadratic {
            if x[k] && x[l] {
                e += b;
            }
        }
        e
    }

    /// Spin-form twin under `s = 2x − 1`; energies agree exactly.
    pub fn to_ising(&self) -> IsingModel {
        let half = Rational::new(1, 2);
        let quarter = Rational::new(1, 4);
        let mut ising = IsingModel::new(self.dim());
        let mut offset = self.offset;
        for (k, &a) in self.linear.iter().enumerate() {
            ising.add_field(k, a * half);
            offset += a * half;
        }
        for (&(k, l), &b) in &self.quadratic {
            ising.add_coupling(k, l, b * quarter);
            ising.add_field(k, b * quarter);
            ising.add_field(l, b * quarter);
            offset += b * quarter;
        }
        ising.add_offset(offset);
        ising
    }

    /// Largest absolute linear or pairwise coefficient.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Builds the pair-selection QUBO for a distance table and penalty `p`.
pub fn build_qubo(dist: &OddPairDistances, penalty: Rational) -> Result<QuboModel> {
    let d = dist.d();
    if d % 2 == 1 {
        return Err(Error::OddCountNotEven(d));
    }
    if d == 0 {
        return Err(Error::DegenerateD0);
    }
    if penalty < int(d as i64) {
        return Err(Error::PenaltyTooSmall {
            penalty: rational::format(penalty),
            d,
        });
    }
    let enc = PairEncoding::new(d);
    let p = penalty;
    let mut q = QuboModel::new(enc.dim());
    q.offset = p * int(d as i64);
    for k in 0..enc.dim() {
        let (i, j) = enc.pair(k);
        q.linear[k] = Rational::new(dist.w[i][j], dist.denominator) - p * int(2);
    }
    for k in 0..enc.dim() {
        let (i, j) = enc.pair(k);
        for l in (k + 1)..enc.dim() {
            let (a, b) = enc.pair(l);
            let reversed = i == b && j == a;
            let same_slot = i == a || j == b;
            let cross_slot = i == b || j == a;
            let coeff = if reversed || same_slot {
                int(4)
            } else if cross_slot {
                int(2)
            } else {
                continue;
            };
            q.quadratic.insert((k, l), coeff * p);
        }
    }
    q.encoding = Some(enc);
    q.penalty = Some(p);
    Ok(q)
}

/// Default penalty `p = d`.
pub fn default_penalty(dist: &OddPairDistances) -> Rational {
    int(dist.d() as i64)
}

fn check_len(x: &[bool], d: usize) -> Result<()> {
    let dim = PairEncoding::new(d).dim();
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    Ok(())
}

/// Per-node coverage `Σ_j (x_ij + x_ji)`.
fn coverage(x: &[bool], d: usize) -> Vec<usize> {
    let enc = PairEncoding::new(d);
    let mut cover = vec![0usize; d];
    for (k, &bit) in x.iter().enumerate() {
        if bit {
            let (i, j) = enc.pair(k);
            cover[i] += 1;
            cover[j] += 1;
        }
    }
    cover
}

/// Penalty values `(P1, P2)` of an assignment.
pub fn penalties(x: &[bool], d: usize) -> Result<(u64, u64)> {
    check_len(x, d)?;
    let enc = PairEncoding::new(d);
    let p1 = coverage(x, d)
        .iter()
        .map(|&c| {
            let diff = 1 - c as i64;
            (diff * diff) as u64
        })
        .sum();
    let bit = |i: usize, j: usize| x[enc.index(i, j)] as u64;
    let mut p2 = 0u64;
    for k in 0..d {
        for i in (0..d).filter(|&i| i != k) {
            for j in (0..d).filter(|&j| j != k && j != i) {
                p2 += bit(i, k) * bit(j, k) + bit(k, i) * bit(k, j);
            }
        }
    }
    Ok((p1, p2))
}

/// True iff both penalty terms vanish.
pub fn is_legal(x: &[bool], d: usize) -> Result<bool> {
    Ok(penalties(x, d)? == (0, 0))
}

/// Decodes a legal assignment into unordered odd-node position pairs, sorted.
pub fn decode(x: &[bool], d: usize) -> Result<Vec<(usize, usize)>> {
    check_len(x, d)?;
    let enc = PairEncoding::new(d);
    let mut violations = Vec::new();
    for k in 0..enc.dim() {
        let (i, j) = enc.pair(k);
        if i < j && x[k] && x[enc.index(j, i)] {
            violations.push(Violation::BothOrientations { i, j });
        }
    }
    for (node, &count) in coverage(x, d).iter().enumerate() {
        if count != 1 {
            violations.push(Violation::NodeCoverage { node, count });
        }
    }
    if !violations.is_empty() {
        return Err(Error::IllegalAssignment(violations));
    }
    let mut pairs: Vec<(usize, usize)> = (0..enc.dim())
        .filter(|&k| x[k])
        .map(|k| {
            let (i, j) = enc.pair(k);
            (i.min(j), i.max(j))
        })
        .collect();
    pairs.sort_unstable();
    Ok(pairs)
}

/// Decodes into a graph-level [`Matching`] using the distance table.
pub fn decode_matching(x: &[bool], dist: &OddPairDistances) -> Result<Matching> {
    let pairs = decode(x, dist.d())?;
    Ok(Matching::from_pairing(dist, &pairs))
}

/// Assignment selecting `x_ij` for each `(i, j)` in `pairs`.
pub fn encode(pairs: &[(usize, usize)], d: usize) -> Vec<bool> {
    let enc = PairEncoding::new(d);
    let mut x = vec![false; enc.dim()];
    for &(i, j) in pairs {
        x[enc.index(i, j)] = true;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpp::odd_pair_distances;
    use crate::graph::Graph;

    fn fig1_dist() -> OddPairDistances {
        let g = Graph::new(
            6,
            [
                (4, 0, 3),
                (4, 1, 1),
                (0, 2, 5),
                (1, 3, 5),
                (0, 1, 2),
                (2, 3, 6),
                (2, 5, 2),
                (3, 5, 1),
            ],
        )
        .unwrap();
        odd_pair_distances(&g).unwrap()
    }

    #[test]
    fn index_map_is_lexicographic() {
        let enc = PairEncoding::new(4);
        let pairs: Vec<_> = enc.pairs().collect();
        assert_eq!(
            pairs,
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 0),
                (1, 2),
                (1, 3),
                (2, 0),
                (2, 1),
                (2, 3),
                (3, 0),
                (3, 1),
                (3, 2)
            ]
        );
        for k in 0..enc.dim() {
            let (i, j) = enc.pair(k);
            assert_eq!(enc.index(i, j), k);
        }
    }

    #[test]
    fn fig1_model_shape() {
        let q = build_qubo(&fig1_dist(), int(8)).unwrap();
        assert_eq!(q.dim(), 12);
        assert_eq!(q.offset(), int(32));
        assert_eq!(q.linear()[0], int(-14));
        assert_eq!(q.interaction_count(), 54);
        // x01 and x10 are reversed
        assert_eq!(q.coupling(0, 3), int(32));
    }

    #[test]
    fn fig1_energies() {
        let q = build_qubo(&fig1_dist(), int(8)).unwrap();
        // x_* = (1,0,0,0,0,0,0,0,1,0,0,0)
        let mut x = vec![false; 12];
        x[0] = true;
        x[8] = true;
        assert_eq!(q.energy(&x).unwrap(), int(5));
        assert_eq!(q.energy(&[false; 12]).unwrap(), int(32));
        let mut both = vec![false; 12];
        both[0] = true;
        both[3] = true;
        assert_eq!(q.energy(&both).unwrap(), int(36));
        assert!(matches!(
            q.energy(&[false; 3]),
            Err(Error::DimensionMismatch {
                expected: 12,
                got: 3
            })
        ));
    }

    #[test]
    fn build_preconditions() {
        let dist = fig1_dist();
        assert!(matches!(
            build_qubo(&dist, int(3)),
            Err(Error::PenaltyTooSmall { d: 4, .. })
        ));
        let empty = OddPairDistances::from_matrix(Vec::new()).unwrap();
        assert_eq!(build_qubo(&empty, int(1)), Err(Error::DegenerateD0));
        let odd = OddPairDistances::from_matrix(vec![vec![0; 3]; 3]).unwrap();
        assert_eq!(build_qubo(&odd, int(3)), Err(Error::OddCountNotEven(3)));
    }

    #[test]
    fn penalty_examples() {
        let x_star = encode(&[(0, 1), (2, 3)], 4);
        assert_eq!(penalties(&x_star, 4).unwrap(), (0, 0));
        assert!(is_legal(&x_star, 4).unwrap());
        assert_eq!(penalties(&[false; 12], 4).unwrap(), (4, 0));
        let bad = encode(&[(0, 1), (2, 1)], 4);
        assert_eq!(penalties(&bad, 4).unwrap(), (2, 2));
        assert!(!is_legal(&bad, 4).unwrap());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            decode(&encode(&[(0, 1), (2, 3)], 4), 4).unwrap(),
            vec![(0, 1), (2, 3)]
        );
        assert_eq!(
            decode(&encode(&[(1, 0), (2, 3)], 4), 4).unwrap(),
            vec![(0, 1), (2, 3)]
        );
        match decode(&encode(&[(0, 1), (2, 1)], 4), 4) {
            Err(Error::IllegalAssignment(v)) => {
                assert!(v.contains(&Violation::NodeCoverage { node: 1, count: 2 }));
            }
            other => panic!("unexpected {other:?}"),
        }
        match decode(&encode(&[(0, 1), (1, 0)], 4), 4) {
            Err(Error::IllegalAssignment(v)) => {
                assert!(v.contains(&Violation::BothOrientations { i: 0, j: 1 }));
            }
            other => panic!("unexpected {other:?}"),
        }
        let m = decode_matching(&encode(&[(1, 0), (3, 2)], 4), &fig1_dist()).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(m.weight, 5);
    }

    #[test]
    fn pair_counts() {
        assert_eq!(shared_pair_count(2), 1);
        assert_eq!(shared_pair_count(4), 54);
        assert_eq!(shared_pair_count(6), 255);
        assert_eq!(shared_pair_count(8), 700);
    }

    #[test]
    fn single_variable_ising() {
        let mut q = QuboModel::new(1);
        q.add_linear(0, int(3));
        let ising = q.to_ising();
        assert_eq!(ising.fields()[0], Rational::new(3, 2));
        assert_eq!(ising.offset(), Rational::new(3, 2));
    }
}
