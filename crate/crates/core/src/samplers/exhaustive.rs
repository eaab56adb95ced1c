use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{IntegerQubo, SampleInfo, SampleSet, Vartype};
use crate::ising::IsingModel;
use crate::qubo::QuboModel;
use crate::{Error, Rational, Result};

pub const MAX_BRUTE_FORCE_DIM: usize = 26;

/// Ground states beyond this many are counted but not stored.
const MAX_STORED_GROUND_STATES: usize = 1 << 16;

/// Head of an exact energy spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    /// Lowest distinct energy levels with their degeneracies, ascending.
    pub levels: Vec<(Rational, u64)>,
    /// Stored ground configurations, ascending.
    pub ground_states: Vec<Vec<bool>>,
}

impl Spectrum {
    pub fn ground_energy(&self) -> Rational {
        self.levels[0].0
    }

    pub fn ground_degeneracy(&self) -> u64 {
        self.levels[0].1
    }

    /// `(E0, E1, E1 − E0)`.
    pub fn gap(&self) -> Result<(Rational, Rational, Rational)> {
        match self.levels.as_slice() {
            [(e0, _), (e1, _), ..] => Ok((*e0, *e1, e1 - e0)),
            _ => Err(Error::NoGap),
        }
    }

    pub fn to_sample_set(&self, vartype: Vartype) -> SampleSet {
        let e0 = self.ground_energy();
        SampleSet::from_reads(
            vartype,
            self.ground_states.iter().cloned(),
            |_| e0,
            SampleInfo {
                sampler: "exhaustive".into(),
                reads: self.ground_states.len() as u64,
                ..SampleInfo::default()
            },
        )
    }
}

/// Exhaustive scan of all `2^dim` assignments in Gray-code order.
///
/// Returns every ground configuration and the lowest `keep` distinct levels.
pub fn brute_force(model: &QuboModel, keep: usize) -> Result<Spectrum> {
    let n = model.dim();
    if n > MAX_BRUTE_FORCE_DIM {
        return Err(Error::TooLarge {
            what: "brute-force dimension",
            size: n,
            limit: MAX_BRUTE_FORCE_DIM,
        });
    }
    let keep = keep.max(1);
    let q = IntegerQubo::new(model);
    let mut x = vec![false; n];
    let mut field = q.linear.clone();
    let mut energy = q.offset;
    let mut levels: BTreeMap<i64, u64> = BTreeMap::new();
    let mut ground = energy;
    let mut ground_states: Vec<Vec<bool>> = Vec::new();

    let mut record = |e: i64, x: &[bool], levels: &mut BTreeMap<i64, u64>| {
        if e < ground || ground_states.is_empty() {
            ground = e;
            ground_states.clear();
            ground_states.push(x.to_vec());
        } else if e == ground && ground_states.len() < MAX_STORED_GROUND_STATES {
            ground_states.push(x.to_vec());
        }
        if levels.len() < keep || levels.contains_key(&e) {
            *levels.entry(e).or_insert(0) += 1;
        } else if let Some((&top, _)) = levels.last_key_value() {
            if e < top {
                levels.pop_last();
                levels.insert(e, 1);
            }
        }
    };

    record(energy, &x, &mut levels);
    let total: u64 = 1u64 << n;
    for step in 1..total {
        let k = step.trailing_zeros() as usize;
        let sign = if x[k] { -1 } else { 1 };
        energy += sign * field[k];
        x[k] = !x[k];
        for &(l, b) in &q.adjacency[k] {
            field[l] += sign * b;
        }
        record(energy, &x, &mut levels);
    }
    ground_states.sort();
    Ok(Spectrum {
        levels: levels
            .into_iter()
            .map(|(e, c)| (q.to_rational(e), c))
            .collect(),
        ground_states,
    })
}

/// Exhaustive scan of an Ising model; states are spins (`true` = +1).
pub fn brute_force_ising(model: &IsingModel, keep: usize) -> Result<Spectrum> {
    brute_force(&model.to_qubo(), keep)
}

/// `(E0, E1, gap)` of a model by exhaustive scan.
pub fn spectral_gap(model: &QuboModel) -> Result<(Rational, Rational, Rational)> {
    brute_force(model, 2)?.gap()
}

/// Exact ground energy and all ground states by depth-first branch and bound.
///
/// The bound on the unassigned tail is `Σ_k min(0, f_k + Σ_{l>k} min(0, b_kl))`
/// with `f_k` the field from assigned variables, so pruning never discards a
/// minimiser. Works beyond the brute-force limit when penalties are strong.
pub fn exact_ground_states(model: &QuboModel) -> (Rational, Vec<Vec<bool>>) {
    let q = IntegerQubo::new(model);
    let n = q.dim();
    let neg_tail: Vec<i64> = (0..n)
        .map(|k| {
            q.adjacency[k]
                .iter()
                .filter(|&&(l, b)| l > k && b < 0)
                .map(|&(_, b)| b)
                .sum()
        })
        .collect();
    let mut search = BranchAndBound {
        q: &q,
        neg_tail,
        x: vec![false; n],
        field: q.linear.clone(),
        best: i64::MAX,
        best_states: Vec::new(),
    };
    search.descend(0, q.offset);
    let mut states = search.best_states;
    states.sort();
    (q.to_rational(search.best), states)
}

struct BranchAndBound<'a> {
    q: &'a IntegerQubo,
    neg_tail: Vec<i64>,
    x: Vec<bool>,
    field: Vec<i64>,
    best: i64,
    best_states: Vec<Vec<bool>>,
}

impl BranchAndBound<'_> {
    fn bound(&self, depth: usize) -> i64 {
        (depth..self.q.dim())
            .map(|k| (self.field[k] + self.neg_tail[k]).min(0))
            .sum()
    }

    fn descend(&mut self, depth: usize, partial: i64) {
        if depth == self.q.dim() {
            if partial < self.best {
                self.best = partial;
                self.best_states.clear();
            }
            if partial == self.best && self.best_states.len() < MAX_STORED_GROUND_STATES {
                self.best_states.push(self.x.clone());
            }
            return;
        }
        if self.best != i64::MAX && partial + self.bound(depth) > self.best {
            return;
        }
        let on_first = self.field[depth] < 0;
        for on in [on_first, !on_first] {
            if on {
                self.set(depth, true);
                let e = partial + self.field[depth];
                self.descend(depth + 1, e);
                self.set(depth, false);
            } else {
                self.descend(depth + 1, partial);
            }
        }
    }

    fn set(&mut self, k: usize, on: bool) {
        let sign = if on { 1 } else { -1 };
        self.x[k] = on;
        for &(l, b) in &self.q.adjacency[k] {
            self.field[l] += sign * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn single_variable_gap() {
        let mut q = QuboModel::new(1);
        q.add_linear(0, int(3));
        assert_eq!(spectral_gap(&q).unwrap(), (int(0), int(3), int(3)));
        let flat = QuboModel::new(1);
        assert_eq!(spectral_gap(&flat), Err(Error::NoGap));
    }

    #[test]
    fn guard_on_dimension() {
        let q = QuboModel::new(MAX_BRUTE_FORCE_DIM + 1);
        assert!(matches!(brute_force(&q, 1), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn levels_and_degeneracy() {
        // E = x0 + x1: levels 0 (x1), 1 (x2), 2 (x1)
        let mut q = QuboModel::new(2);
        q.add_linear(0, int(1));
        q.add_linear(1, int(1));
        let s = brute_force(&q, 5).unwrap();
        assert_eq!(s.levels, vec![(int(0), 1), (int(1), 2), (int(2), 1)]);
        let s = brute_force(&q, 2).unwrap();
        assert_eq!(s.levels, vec![(int(0), 1), (int(1), 2)]);
        assert_eq!(s.ground_states, vec![vec![false, false]]);
    }

    #[test]
    fn branch_and_bound_matches_scan() {
        let mut q = QuboModel::new(5);
        let coeffs = [3, -4, 2, -1, -2];
        for (k, c) in coeffs.iter().enumerate() {
            q.add_linear(k, int(*c));
        }
        q.add_quadratic(0, 1, int(-3));
        q.add_quadratic(1, 2, int(5));
        q.add_quadratic(2, 4, int(-6));
        q.add_quadratic(3, 4, int(2));
        q.add_quadratic(0, 3, Rational::new(1, 2));
        let scan = brute_force(&q, 1).unwrap();
        let (e0, states) = exact_ground_states(&q);
        assert_eq!(e0, scan.ground_energy());
        assert_eq!(states, scan.ground_states);
    }
}
