//! `K_0(L(E))` and the class of the unit.
//!
//! For a finite graph with adjacency matrix `A` (vertex basis in file order)
//! the group is `coker(I - A^T)` on `Z^{E^0}`, and `[1]` is the class of the
//! all-ones vector, since `1 = sum_v v` in `L(E)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::group::{FGAbelianGroup, GroupElement, OrderValue};
use crate::linalg::{smith_normal_form, IntMatrix};

/// `Z^m / im(A)` together with the coordinate map into invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    group: FGAbelianGroup,
    /// Left Smith transform `U`; `U v` gives coordinates before dropping units.
    left: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl Cokernel {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn left_transform(&self) -> &IntMatrix {
        &self.left
    }

    pub fn smith_diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    /// Class of `v` in the cokernel. Positions whose Smith entry is 1 are
    /// dropped; the rest are reduced mod `d_i` (torsion) or kept (free).
    pub fn coordinates(&self, v: &[BigInt]) -> Result<GroupElement> {
        if v.len() != self.left.cols() {
            return Err(Error::InvalidArgument(format!(
                "vector has {} entries, expected {}",
                v.len(),
                self.left.cols()
            )));
        }
        let uv = self.left.apply(v);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (c, d) in uv.into_iter().zip(&self.diagonal) {
            if d.is_zero() {
                free.push(c);
            } else if !d.is_one() {
                torsion.push(c.mod_floor(d));
            }
        }
        self.group.element(torsion, free)
    }
}

/// Cokernel of a square integer matrix.
pub fn cokernel(a: &IntMatrix) -> Result<Cokernel> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let snf = smith_normal_form(a)?;
    let factors: Vec<BigInt> = snf
        .diagonal
        .iter()
        .filter(|d| **d > BigInt::one())
        .cloned()
        .collect();
    let free_rank = snf.diagonal.iter().filter(|d| d.is_zero()).count();
    let group = FGAbelianGroup::new(factors, free_rank)?;
    Ok(Cokernel {
        group,
        left: snf.left,
        diagonal: snf.diagonal,
    })
}

/// `(K_0(L(E)), [1])` with the order of the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Data {
    pub group: FGAbelianGroup,
    pub unit: GroupElement,
    pub unit_order: OrderValue,
    pub coordinate_map: Cokernel,
}

impl K0Data {
    /// Class of the vertex projection `v` (by vertex index).
    pub fn vertex_class(&self, v: usize) -> Result<GroupElement> {
        let n = self.coordinate_map.left.cols();
        if v >= n {
            return Err(Error::InvalidArgument(format!(
                "vertex index {v} out of range"
            )));
        }
        let mut e = vec![BigInt::zero(); n];
        e[v] = BigInt::one();
        self.coordinate_map.coordinates(&e)
    }
}

/// `I - A^T` for the adjacency matrix of `g`.
pub fn k0_relation_matrix(g: &DirectedGraph) -> IntMatrix {
    let at = g.adjacency_matrix().transpose();
    let n = at.rows();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= &at[(i, j)];
        }
    }
    m
}

pub fn k0_of_graph(g: &DirectedGraph) -> K0Data {
    let coordinate_map =
        cokernel(&k0_relation_matrix(g)).expect("relation matrix is square and nonempty");
    let ones = vec![BigInt::one(); g.vertex_count()];
    let unit = coordinate_map
        .coordinates(&ones)
        .expect("all-ones vector has graph dimension");
    let group = coordinate_map.group.clone();
    let unit_order = group.element_order(&unit).expect("unit lies in the group");
    K0Data {
        group,
        unit,
        unit_order,
        coordinate_map,
    }
}
