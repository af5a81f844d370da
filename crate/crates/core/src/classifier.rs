//! Matrix type of a purely infinite simple unital `L(E)`, the `M_m E`
//! construction, and comparison of pointed `K_0` groups.
//!
//! When `[1]` has finite order `n`, `M_c(L(E)) ~ M_d(L(E))` iff
//! `gcd(c, n) == gcd(d, n)`. When it has infinite order, `L(E)` has Invariant
//! Matrix Number and only `c == d` works.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, PisReport};
use crate::group::{lemma1_criterion, FGAbelianGroup, GroupElement, OrderValue};
use crate::ktheory::K0Data;
use crate::linalg::content;
use crate::oracle::{Automorphism, FiniteGroup, OrbitSolver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixTypeVerdict {
    /// `[1]` has order `n`; `M_c ~ M_d` iff `gcd(c, n) == gcd(d, n)`.
    FiniteOrder(BigInt),
    /// Every class is a singleton.
    InfiniteOrder,
}

impl MatrixTypeVerdict {
    /// Refuses unless the graph conditions for pure infinite simplicity hold.
    pub fn new(k: &K0Data, pis: &PisReport) -> Result<Self> {
        if !pis.purely_infinite_simple {
            return Err(Error::NotPurelyInfiniteSimple);
        }
        Ok(match &k.unit_order {
            OrderValue::Finite(n) => MatrixTypeVerdict::FiniteOrder(n.clone()),
            OrderValue::Infinite => MatrixTypeVerdict::InfiniteOrder,
        })
    }

    pub fn equal(&self, c: u64, d: u64) -> Result<bool> {
        positive(c)?;
        positive(d)?;
        match self {
            MatrixTypeVerdict::FiniteOrder(n) => {
                lemma1_criterion(n, &BigInt::from(c), &BigInt::from(d))
            }
            MatrixTypeVerdict::InfiniteOrder => Ok(c == d),
        }
    }

    /// Class label of `c`: `gcd(c, n)` in the finite regime, `c` itself otherwise.
    pub fn class_label(&self, c: u64) -> BigInt {
        match self {
            MatrixTypeVerdict::FiniteOrder(n) => BigInt::from(c).gcd(n),
            MatrixTypeVerdict::InfiniteOrder => BigInt::from(c),
        }
    }

    /// Partition of `{1..max}` into isomorphism classes, blocks sorted by
    /// least element.
    pub fn classes(&self, max: u64) -> Vec<Vec<u64>> {
        let mut blocks: BTreeMap<BigInt, Vec<u64>> = BTreeMap::new();
        for c in 1..=max {
            blocks.entry(self.class_label(c)).or_default().push(c);
        }
        let mut out: Vec<Vec<u64>> = blocks.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }

    pub fn order(&self) -> Option<&BigInt> {
        match self {
            MatrixTypeVerdict::FiniteOrder(n) => Some(n),
            MatrixTypeVerdict::InfiniteOrder => None,
        }
    }
}

fn positive(c: u64) -> Result<()> {
    if c == 0 {
        return Err(Error::NonPositiveScalar("0".into()));
    }
    Ok(())
}

/// Decides `M_c(L(E)) ~ M_d(L(E))`.
pub fn matrix_type_equal(k: &K0Data, pis: &PisReport, c: u64, d: u64) -> Result<bool> {
    MatrixTypeVerdict::new(k, pis)?.equal(c, d)
}

pub fn matrix_type_classes(k: &K0Data, pis: &PisReport, max: u64) -> Result<Vec<Vec<u64>>> {
    positive(max)?;
    Ok(MatrixTypeVerdict::new(k, pis)?.classes(max))
}

/// `M_m E`: every vertex `v` gets a head `w_{v,1} -> ... -> w_{v,m-1} -> v`
/// of fresh vertices, so `L(M_m E) ~ M_m(L(E))` and `[1]` scales by `m`.
pub fn m_graph(g: &DirectedGraph, m: u64) -> Result<DirectedGraph> {
    positive(m)?;
    let mut out = g.clone();
    for v in 0..g.vertex_count() {
        let base = &g.vertices()[v];
        let mut head = Vec::new();
        for i in 1..m {
            let mut name = format!("{base}~{i}");
            while out.vertex_index(&name).is_some() {
                name.push('\'');
            }
            head.push(out.push_vertex(name));
        }
        head.push(v);
        for pair in head.windows(2) {
            out.add_edges(pair[0], pair[1], 1);
        }
    }
    Ok(out)
}

/// Evidence that an isomorphism of pointed groups exists: `alpha` acts on the
/// torsion part, and `y_T - alpha(x_T)` lies in `c T` where `c` is the content
/// of the free coordinates of the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    pub torsion_images: Vec<GroupElement>,
    pub free_content: BigInt,
    pub torsion_offset: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoReason {
    GroupMismatch,
    UnitOrbitMismatch,
    UnitOrbitMatch { witness: OrbitWitness },
    UndecidedBoundExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub reason: IsoReason,
}

impl IsoVerdict {
    fn from_reason(reason: IsoReason) -> Self {
        Self {
            isomorphic: matches!(reason, IsoReason::UnitOrbitMatch { .. }),
            reason,
        }
    }
}

/// Is there an isomorphism `K_0(L(E)) -> K_0(L(F))` carrying `[1]` to `[1]`?
pub fn kp_invariant_compare(k_e: &K0Data, k_f: &K0Data, size_bound: u64) -> IsoVerdict {
    if k_e.group != k_f.group {
        return IsoVerdict::from_reason(IsoReason::GroupMismatch);
    }
    unit_orbit_decision(&k_e.group, &k_e.unit, &k_f.unit, size_bound)
        .expect("units lie in a common group")
}

/// Whether some automorphism of `G = T + Z^t` maps `x` to `y`.
///
/// `Hom(T, Z^t) = 0`, so every automorphism has the block form
/// `(x_T, x_F) -> (alpha x_T + beta x_F, delta x_F)`. The `delta x_F` range
/// over vectors of the same content `c`, and `beta x_F` ranges over `c T`.
/// Hence `x ~ y` iff the contents agree and `y_T - alpha(x_T)` lies in `c T`
/// for some `alpha` in `Aut(T)`.
pub fn unit_orbit_decision(
    g: &FGAbelianGroup,
    x: &GroupElement,
    y: &GroupElement,
    size_bound: u64,
) -> Result<IsoVerdict> {
    UnitOrbitDecider::new(g.clone(), size_bound).decide(x, y)
}

/// [`unit_orbit_decision`] for many pairs in one group; torsion orbits are
/// computed once per source element and reused.
pub struct UnitOrbitDecider {
    group: FGAbelianGroup,
    torsion: FGAbelianGroup,
    size_bound: u64,
    /// `None` until first needed, then `Err` if the torsion part is too large.
    solver: Option<std::result::Result<OrbitSolver, ()>>,
    orbits: HashMap<usize, BTreeMap<usize, Automorphism>>,
}

impl UnitOrbitDecider {
    pub fn new(group: FGAbelianGroup, size_bound: u64) -> Self {
        let torsion = group.torsion_part();
        Self {
            group,
            torsion,
            size_bound,
            solver: None,
            orbits: HashMap::new(),
        }
    }

    pub fn decide(&mut self, x: &GroupElement, y: &GroupElement) -> Result<IsoVerdict> {
        self.group.element_order(x)?;
        self.group.element_order(y)?;
        let c = content(x.free());
        if content(y.free()) != c {
            return Ok(IsoVerdict::from_reason(IsoReason::UnitOrbitMismatch));
        }
        let torsion = &self.torsion;
        let x_t = torsion.element(x.torsion().to_vec(), Vec::new())?;
        let y_t = torsion.element(y.torsion().to_vec(), Vec::new())?;

        let offset = torsion.sub(&y_t, &x_t)?;
        if torsion.torsion_in_multiple(&c, offset.torsion()) {
            let images = (0..torsion.torsion_rank())
                .map(|i| {
                    let mut e = vec![BigInt::zero(); torsion.torsion_rank()];
                    e[i] = BigInt::from(1);
                    torsion.element(e, Vec::new())
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(IsoVerdict::from_reason(IsoReason::UnitOrbitMatch {
                witness: OrbitWitness {
                    torsion_images: images,
                    free_content: c,
                    torsion_offset: offset,
                },
            }));
        }

        if self.solver.is_none() {
            self.solver = Some(match FiniteGroup::new(torsion, self.size_bound) {
                Ok(fg) => Ok(OrbitSolver::new(fg)),
                Err(Error::BoundExceeded { .. }) => Err(()),
                Err(e) => return Err(e),
            });
        }
        let Some(Ok(solver)) = self.solver.as_mut() else {
            return Ok(IsoVerdict::from_reason(IsoReason::UndecidedBoundExceeded));
        };
        let fg = solver.group().clone();
        let (xi, yi) = (fg.encode(&x_t), fg.encode(&y_t));
        let orbit = self.orbits.entry(xi).or_insert_with(|| solver.orbit(xi));
        let hit = orbit.iter().find_map(|(&z, alpha)| {
            let offset = fg.decode(torsion, fg.add(yi, fg.neg(z)));
            torsion
                .torsion_in_multiple(&c, offset.torsion())
                .then(|| (alpha.clone(), offset))
        });
        Ok(IsoVerdict::from_reason(match hit {
            Some((alpha, offset)) => IsoReason::UnitOrbitMatch {
                witness: OrbitWitness {
                    torsion_images: alpha.to_elements(&fg, torsion),
                    free_content: c,
                    torsion_offset: offset,
                },
            },
            None => IsoReason::UnitOrbitMismatch,
        }))
    }
}
