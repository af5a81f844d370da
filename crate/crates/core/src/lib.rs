//! Classification invariants of purely infinite simple unital Leavitt path
//! algebras `L(E)` of finite graphs, and the matrix-type question
//! `M_c(L(E)) ~ M_d(L(E))`.
//!
//! The pipeline is graph -> adjacency matrix -> `coker(I - A^T)` via the
//! Smith normal form -> `(K_0, [1], ord [1])` -> verdict. The [`oracle`]
//! module holds exhaustive searches that check the closed-form decisions on
//! small groups.
//!
//! ```
//! use leavitt::{k0_of_graph, matrix_type_equal, purely_infinite_simple, DirectedGraph};
//!
//! let rose = DirectedGraph::rose(5);
//! let k = k0_of_graph(&rose);
//! let pis = purely_infinite_simple(&rose);
//! assert!(matrix_type_equal(&k, &pis, 2, 6).unwrap());
//! assert!(!matrix_type_equal(&k, &pis, 2, 4).unwrap());
//! ```

pub mod classifier;
pub mod cli;
pub mod error;
pub mod graph;
pub mod group;
pub mod ktheory;
pub mod linalg;
pub mod oracle;

pub use classifier::{
    kp_invariant_compare, m_graph, matrix_type_classes, matrix_type_equal, unit_orbit_decision,
    IsoReason, IsoVerdict, MatrixTypeVerdict, OrbitWitness, UnitOrbitDecider,
};
pub use error::{Error, Result};
pub use graph::{
    every_cycle_has_exit, every_vertex_connects_to_cycle, parse_graph, purely_infinite_simple,
    trivial_hereditary_saturated, DirectedGraph, PisReport,
};
pub use group::{lemma1_criterion, FGAbelianGroup, GroupElement, OrderValue};
pub use ktheory::{cokernel, k0_of_graph, Cokernel, K0Data};
pub use linalg::{content, smith_normal_form, unimodular_check, IntMatrix, SmithDecomposition};
pub use oracle::{
    automorphism_maps_x_to_y, eigen_search, enumerate_automorphisms, find_automorphism,
    Automorphism, FiniteGroup, OrbitSolver, DEFAULT_SIZE_BOUND,
};
