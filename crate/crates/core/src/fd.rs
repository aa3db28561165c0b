//! Inclusions of finite-dimensional C*-algebras, encoded by the multiplicity
//! matrix of the embedding. Ideals are sets of simple summands, so both
//! ideal lattices are boolean; only the support pattern of the matrix
//! matters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{GaloisConnection, MonotoneMap};
use crate::lattice::SetLattice;
use crate::points::PointSet;
use crate::quasiorbit::InclusionData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityInclusion {
    /// `mult[i][j]` copies of summand `i` of `A` sit in summand `j` of `B`.
    mult: Vec<Vec<u32>>,
    b_summands: usize,
    /// Matrix sizes of the summands; metadata only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<(Vec<usize>, Vec<usize>)>,
}

/// Largest summand count on either side: the boolean ideal lattice must stay
/// under the default lattice size cap.
pub const MAX_SUMMANDS: usize = 12;

impl MultiplicityInclusion {
    pub fn new(mult: Vec<Vec<u32>>) -> Result<Self> {
        let b_summands = mult.first().map_or(0, Vec::len);
        Self::with_columns(mult, b_summands)
    }

    /// Allows `k × 0` matrices, whose column count cannot be read off the rows.
    pub fn with_columns(mult: Vec<Vec<u32>>, b_summands: usize) -> Result<Self> {
        if let Some((i, row)) = mult.iter().enumerate().find(|(_, r)| r.len() != b_summands) {
            return Err(Error::ShapeMismatch(format!(
                "row {i} has {} entries, expected {b_summands}",
                row.len()
            )));
        }
        for (what, size) in [("A-summand count", mult.len()), ("B-summand count", b_summands)] {
            if size > MAX_SUMMANDS {
                return Err(Error::TooLarge {
                    what,
                    size,
                    limit: MAX_SUMMANDS,
                });
            }
        }
        Ok(MultiplicityInclusion {
            mult,
            b_summands,
            dims: None,
        })
    }

    pub fn with_dims(mut self, a_dims: Vec<usize>, b_dims: Vec<usize>) -> Result<Self> {
        if a_dims.len() != self.a_summands() || b_dims.len() != self.b_summands() {
            return Err(Error::ShapeMismatch(
                "dimension lists do not match the summand counts".into(),
            ));
        }
        self.dims = Some((a_dims, b_dims));
        Ok(self)
    }

    pub fn a_summands(&self) -> usize {
        self.mult.len()
    }

    pub fn b_summands(&self) -> usize {
        self.b_summands
    }

    pub fn mult(&self) -> &[Vec<u32>] {
        &self.mult
    }

    pub fn dims(&self) -> Option<(&[usize], &[usize])> {
        self.dims.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    /// Every row is nonzero, i.e. the embedding is injective.
    pub fn is_injective(&self) -> bool {
        self.mult.iter().all(|row| row.iter().any(|&m| m > 0))
    }

    /// The same matrix with every positive entry replaced by 1.
    pub fn support(&self) -> MultiplicityInclusion {
        let mult = self
            .mult
            .iter()
            .map(|row| row.iter().map(|&m| u32::from(m > 0)).collect())
            .collect();
        MultiplicityInclusion {
            mult,
            b_summands: self.b_summands,
            dims: None,
        }
    }

    fn row(&self, i: usize) -> PointSet {
        (0..self.b_summands).filter(|&j| self.mult[i][j] > 0).collect()
    }

    fn column(&self, j: usize) -> PointSet {
        (0..self.a_summands()).filter(|&i| self.mult[i][j] > 0).collect()
    }

    /// Columns receiving some summand of `s`.
    pub fn induce(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, i| acc | self.row(i))
    }

    /// Rows all of whose columns lie in `t`.
    pub fn restrict(&self, t: PointSet) -> PointSet {
        (0..self.a_summands())
            .filter(|&i| self.row(i).is_subset(t))
            .collect()
    }

    /// Every column touched by `s` receives only summands of `s`.
    pub fn is_symmetric(&self, s: PointSet) -> bool {
        self.induce(s).iter().all(|j| self.column(j).is_subset(s))
    }

    pub fn a_lattice(&self) -> Result<SetLattice> {
        SetLattice::powerset(self.a_summands())
    }

    pub fn b_lattice(&self) -> Result<SetLattice> {
        SetLattice::powerset(self.b_summands())
    }

    pub fn galois_connection(&self) -> Result<GaloisConnection> {
        let (a, b) = (self.a_lattice()?, self.b_lattice()?);
        let lower = MonotoneMap::from_fn(a.lattice().clone(), b.lattice().clone(), |e| {
            b.elem(self.induce(a.set(e))).expect("powerset member")
        })?;
        let upper = MonotoneMap::from_fn(b.lattice().clone(), a.lattice().clone(), |e| {
            a.elem(self.restrict(b.set(e))).expect("powerset member")
        })?;
        GaloisConnection::new(lower, upper)
    }

    pub fn to_inclusion_data(&self) -> Result<InclusionData> {
        InclusionData::new(self.galois_connection()?)
    }
}

/// Named matrices used throughout the tests and by the command line.
pub mod fixtures {
    use super::MultiplicityInclusion;

    /// One summand split diagonally into two: `[[1,1]]`.
    pub fn split_row() -> MultiplicityInclusion {
        MultiplicityInclusion::new(vec![vec![1, 1]]).unwrap()
    }

    /// Two summands merged into one: `[[1],[1]]`.
    pub fn merge_column() -> MultiplicityInclusion {
        MultiplicityInclusion::new(vec![vec![1], vec![1]]).unwrap()
    }

    /// `[[1,0],[0,1],[1,1]]`: separates ideals but fails JR.
    pub fn three_into_two() -> MultiplicityInclusion {
        MultiplicityInclusion::new(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    /// `[[1,0,1,1],[0,1,1,1]]`: every ideal restricted, only ∅ and the
    /// whole algebra symmetric, and induced ideals not closed under meets.
    pub fn two_into_four() -> MultiplicityInclusion {
        MultiplicityInclusion::new(vec![vec![1, 0, 1, 1], vec![0, 1, 1, 1]]).unwrap()
    }

    pub const NAMES: [&str; 4] = ["split-row", "merge-column", "three-into-two", "two-into-four"];

    pub fn by_name(name: &str) -> Option<MultiplicityInclusion> {
        match name {
            "split-row" => Some(split_row()),
            "merge-column" => Some(merge_column()),
            "three-into-two" => Some(three_into_two()),
            "two-into-four" => Some(two_into_four()),
            _ => None,
        }
    }
}

/// Every 0/1 matrix of the given shape without zero rows.
pub fn injective_01_matrices(k: usize, l: usize) -> impl Iterator<Item = MultiplicityInclusion> {
    let rows: Vec<u64> = (1..1u64 << l).collect();
    let total = rows.len().pow(k as u32);
    (0..total).map(move |mut code| {
        let mut mult = Vec::with_capacity(k);
        for _ in 0..k {
            let bits = rows[code % rows.len()];
            code /= rows.len();
            mult.push((0..l).map(|j| ((bits >> j) & 1) as u32).collect());
        }
        MultiplicityInclusion::with_columns(mult, l).expect("shape is consistent")
    })
}
