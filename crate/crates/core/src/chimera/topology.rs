use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Qubits per shore of a unit cell.
pub const SHORE_SIZE: usize = 4;

/// Chimera hardware graph `C_m`: an `m × m` grid of `K_{4,4}` cells.
///
/// Qubit `((row·m + col)·2 + shore)·4 + k`. Shore 0 qubits couple to the same
/// position in the cell below, shore 1 qubits to the cell on the right.
/// Faulty qubits keep their ids but have no couplers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChimeraTopology {
    m: usize,
    faulty: BTreeSet<usize>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitCoord {
    pub row: usize,
    pub col: usize,
    pub shore: usize,
    pub k: usize,
}

impl ChimeraTopology {
    pub fn new(m: usize, faulty: &[usize]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "Chimera grid size must be at least 1".into(),
            ));
        }
        let count = 8 * m * m;
        let mut bad = BTreeSet::new();
        for &q in faulty {
            if q >= count {
                return Err(Error::FaultOutOfRange { qubit: q, count });
            }
            bad.insert(q);
        }
        let mut topo = ChimeraTopology {
            m,
            faulty: bad,
            adjacency: vec![Vec::new(); count],
        };
        for (a, b) in topo.all_couplers() {
            if topo.is_enabled(a) && topo.is_enabled(b) {
                topo.adjacency[a].push(b);
                topo.adjacency[b].push(a);
            }
        }
        for list in &mut topo.adjacency {
            list.sort_unstable();
        }
        Ok(topo)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn faulty(&self) -> &BTreeSet<usize> {
        &self.faulty
    }

    /// Qubit ids including faulty ones.
    pub fn qubit_slots(&self) -> usize {
        8 * self.m * self.m
    }

    pub fn enabled_qubit_count(&self) -> usize {
        self.qubit_slots() - self.faulty.len()
    }

    pub fn is_enabled(&self, q: usize) -> bool {
        q < self.qubit_slots() && !self.faulty.contains(&q)
    }

    pub fn qubit(&self, row: usize, col: usize, shore: usize, k: usize) -> usize {
        ((row * self.m + col) * 2 + shore) * SHORE_SIZE + k
    }

    pub fn coord(&self, q: usize) -> QubitCoord {
        let k = q % SHORE_SIZE;
        let rest = q / SHORE_SIZE;
        let shore = rest % 2;
        let cell = rest / 2;
        QubitCoord {
            row: cell / self.m,
            col: cell % self.m,
            shore,
            k,
        }
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn has_coupler(&self, a: usize, b: usize) -> bool {
        a < self.adjacency.len() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Enabled couplers `(a, b)` with `a < b`, ascending.
    pub fn couplers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    fn all_couplers(&self) -> Vec<(usize, usize)> {
        let m = self.m;
        let mut out = Vec::new();
        for row in 0..m {
            for col in 0..m {
                for i in 0..SHORE_SIZE {
                    for j in 0..SHORE_SIZE {
                        out.push((self.qubit(row, col, 0, i), self.qubit(row, col, 1, j)));
                    }
                    if row + 1 < m {
                        out.push((self.qubit(row, col, 0, i), self.qubit(row + 1, col, 0, i)));
                    }
                    if col + 1 < m {
                        out.push((self.qubit(row, col, 1, i), self.qubit(row, col + 1, 1, i)));
                    }
                }
            }
        }
        out
    }
}

/// Convenience wrapper matching the `chimera_graph(m, faulty)` entry point.
pub fn chimera_graph(m: usize, faulty: &[usize]) -> Result<ChimeraTopology> {
    ChimeraTopology::new(m, faulty)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c1 = chimera_graph(1, &[]).unwrap();
        assert_eq!(c1.enabled_qubit_count(), 8);
        assert_eq!(c1.couplers().len(), 16);
        let c12 = chimera_graph(12, &[]).unwrap();
        assert_eq!(c12.enabled_qubit_count(), 1152);
        assert_eq!(c12.couplers().len(), 16 * 144 + 2 * 4 * 12 * 11);
        assert!((0..1152).all(|q| c12.neighbors(q).len() <= 6));
        let faults: Vec<usize> = (0..54).map(|i| i * 21).collect();
        let broken = chimera_graph(12, &faults).unwrap();
        assert_eq!(broken.enabled_qubit_count(), 1098);
        for (a, b) in broken.couplers() {
            assert!(broken.is_enabled(a) && broken.is_enabled(b));
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let t = chimera_graph(3, &[]).unwrap();
        for q in 0..t.qubit_slots() {
            let c = t.coord(q);
            assert_eq!(t.qubit(c.row, c.col, c.shore, c.k), q);
        }
    }

    #[test]
    fn fault_range_checked() {
        assert_eq!(
            chimera_graph(1, &[8]),
            Err(Error::FaultOutOfRange { qubit: 8, count: 8 })
        );
        assert!(chimera_graph(0, &[]).is_err());
    }
}
