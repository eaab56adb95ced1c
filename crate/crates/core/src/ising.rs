//! Spin-form models `E(s) = offset + Σ h_i s_i + Σ_{i<j} J_ij s_i s_j`, `s ∈ {−1, +1}`.
//!
//! Spin configurations are `bool` slices with `true` meaning `+1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::qubo::QuboModel;
use crate::rational::{self, int};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsingModel {
    h: Vec<Rational>,
    /// Couplings keyed `(i, j)` with `i < j`; zeros are not stored.
    j: BTreeMap<(usize, usize), Rational>,
    offset: Rational,
}

#[inline]
pub fn spin(s: bool) -> i64 {
    if s {
        1
    } else {
        -1
    }
}

impl IsingModel {
    pub fn new(n: usize) -> Self {
        IsingModel {
            h: vec![Rational::zero(); n],
            j: BTreeMap::new(),
            offset: Rational::zero(),
        }
    }

    pub fn num_spins(&self) -> usize {
        self.h.len()
    }

    pub fn fields(&self) -> &[Rational] {
        &self.h
    }

    pub fn couplings(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.j
    }

    pub fn offset(&self) -> Rational {
        self.offset
    }

    pub fn add_field(&mut self, i: usize, v: Rational) {
        self.h[i] += v;
    }

    pub fn add_offset(&mut self, v: Rational) {
        self.offset += v;
    }

    pub fn add_coupling(&mut self, a: usize, b: usize, v: Rational) {
        assert_ne!(a, b, "self-coupling on spin {a}");
        let key = (a.min(b), a.max(b));
        let entry = self.j.entry(key).or_insert_with(Rational::zero);
        *entry += v;
        if entry.is_zero() {
            self.j.remove(&key);
        }
    }

    pub fn coupling(&self, a: usize, b: usize) -> Rational {
        self.j
            .get(&(a.min(b), a.max(b)))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    pub fn energy(&self, s: &[bool]) -> Result<Rational> {
        if s.len() != self.num_spins() {
            return Err(Error::DimensionMismatch {
                expected: self.num_spins(),
                got: s.len(),
            });
        }
        Ok(self.energy_unchecked(s))
    }

    pub(crate) fn energy_unchecked(&self, s: &[bool]) -> Rational {
        let mut e = self.offset;
        for (i, h) in self.h.iter().enumerate() {
            if s[i] {
                e += h;
            } else {
                e -= h;
            }
        }
        for (&(a, b), jv) in &self.j {
            if s[a] == s[b] {
                e += jv;
            } else {
                e -= jv;
            }
        }
        e
    }

    /// Binary twin under `x = (s + 1) / 2`.
    pub fn to_qubo(&self) -> QuboModel {
        let mut q = QuboModel::new(self.num_spins());
        let mut offset = self.offset;
        for (i, &h) in self.h.iter().enumerate() {
            q.add_linear(i, h * int(2));
            offset -= h;
        }
        for (&(a, b), &jv) in &self.j {
            q.add_quadratic(a, b, jv * int(4));
            q.add_linear(a, -jv * int(2));
            q.add_linear(b, -jv * int(2));
            offset += jv;
        }
        q.add_offset(offset);
        q
    }

    pub fn max_abs_field(&self) -> Rational {
        self.h
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn max_abs_coupling(&self) -> Rational {
        self.j
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest `|h|` or `|J|`.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.max_abs_field().max(self.max_abs_coupling())
    }

    /// Divides every coefficient (and the offset) by `factor`.
    pub fn scaled_down(&self, factor: Rational) -> IsingModel {
        assert!(factor > Rational::zero(), "scale factor must be positive");
        IsingModel {
            h: self.h.iter().map(|v| v / factor).collect(),
            j: self.j.iter().map(|(&k, v)| (k, v / factor)).collect(),
            offset: self.offset / factor,
        }
    }

    /// Neighbour lists in `f64` for the annealing inner loop.
    pub(crate) fn float_adjacency(&self) -> (Vec<f64>, Vec<Vec<(usize, f64)>>) {
        let h = self.h.iter().map(|&v| rational::to_f64(v)).collect();
        let mut adj = vec![Vec::new(); self.num_spins()];
        for (&(a, b), &v) in &self.j {
            let v = rational::to_f64(v);
            adj[a].push((b, v));
            adj[b].push((a, v));
        }
        (h, adj)
    }
}
