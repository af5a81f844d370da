use leavitt::{
    every_cycle_has_exit, every_vertex_connects_to_cycle, k0_of_graph, m_graph,
    purely_infinite_simple, smith_normal_form, trivial_hereditary_saturated, unimodular_check,
    DirectedGraph, FGAbelianGroup, IntMatrix, OrderValue,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn matrix(max_dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(lo..=hi, r * c)
            .prop_map(move |e| IntMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()))
    })
}

fn square(max_dim: usize, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(0..=hi, n * n)
            .prop_map(move |e| IntMatrix::new(n, n, e.into_iter().map(BigInt::from).collect()))
    })
}

fn graph(max_vertices: usize, max_mult: i64) -> impl Strategy<Value = DirectedGraph> {
    square(max_vertices, max_mult).prop_map(|a| DirectedGraph::from_adjacency(&a).unwrap())
}

/// Strongly connected: a Hamiltonian cycle plus random extra edges, and every
/// vertex gets at least two outgoing edges.
fn strongly_connected(max_vertices: usize) -> impl Strategy<Value = DirectedGraph> {
    (1..=max_vertices).prop_flat_map(|n| {
        prop::collection::vec(0..=2i64, n * n).prop_map(move |extra| {
            let mut a = IntMatrix::new(n, n, extra.into_iter().map(BigInt::from).collect());
            for i in 0..n {
                a[(i, (i + 1) % n)] += 1;
                let out: BigInt = a.row(i).iter().sum();
                if out < BigInt::from(2) {
                    a[(i, i)] += 1;
                }
            }
            DirectedGraph::from_adjacency(&a).unwrap()
        })
    })
}

fn permuted(g: &DirectedGraph, perm: &[usize]) -> DirectedGraph {
    let a = g.adjacency_matrix();
    let n = a.rows();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b[(perm[i], perm[j])] = a[(i, j)].clone();
        }
    }
    DirectedGraph::from_adjacency(&b).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn finite_group() -> impl Strategy<Value = FGAbelianGroup> {
    // chains built from multipliers keep the divisibility condition
    prop::collection::vec(1u64..=4, 0..=3).prop_map(|mults| {
        let mut factors = Vec::new();
        let mut d = 1;
        for m in mults {
            d *= m + 1;
            factors.push(d);
        }
        FGAbelianGroup::from_factors(&factors, 0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_contract(a in matrix(6, -9, 9)) {
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(&(&s.left * &a) * &s.right, s.diagonal_matrix.clone());
        prop_assert!(unimodular_check(&s.left).unwrap());
        prop_assert!(unimodular_check(&s.right).unwrap());
    }

    #[test]
    fn snf_is_idempotent(a in matrix(5, -9, 9)) {
        let d = smith_normal_form(&a).unwrap();
        let again = smith_normal_form(&d.diagonal_matrix).unwrap();
        prop_assert_eq!(again.diagonal_matrix, d.diagonal_matrix);
    }

    #[test]
    fn snf_is_relabel_stable(a in matrix(5, -9, 9), seed in any::<u64>()) {
        let (r, c) = (a.rows(), a.cols());
        let rows: Vec<usize> = { let mut v: Vec<usize> = (0..r).collect(); v.rotate_left(seed as usize % r); v };
        let cols: Vec<usize> = { let mut v: Vec<usize> = (0..c).collect(); v.reverse(); v.rotate_left((seed >> 8) as usize % c); v };
        let mut b = IntMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                b[(rows[i], cols[j])] = a[(i, j)].clone();
            }
        }
        prop_assert_eq!(smith_normal_form(&a).unwrap().diagonal, smith_normal_form(&b).unwrap().diagonal);
    }

    #[test]
    fn adjacency_encoding_round_trips(a in square(5, 3)) {
        let g = DirectedGraph::from_adjacency(&a).unwrap();
        prop_assert_eq!(g.adjacency_matrix(), a);
    }

    #[test]
    fn pis_is_the_conjunction(g in graph(5, 2)) {
        let r = purely_infinite_simple(&g);
        prop_assert_eq!(r.every_cycle_has_exit, every_cycle_has_exit(&g));
        prop_assert_eq!(r.trivial_hereditary_saturated, trivial_hereditary_saturated(&g));
        prop_assert_eq!(r.every_vertex_connects_to_cycle, every_vertex_connects_to_cycle(&g));
        prop_assert_eq!(
            r.purely_infinite_simple,
            every_cycle_has_exit(&g) && trivial_hereditary_saturated(&g) && every_vertex_connects_to_cycle(&g)
        );
    }

    #[test]
    fn condition_l_ignores_labels((g, perm) in graph(5, 1).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), permutation(n))
    })) {
        prop_assert_eq!(every_cycle_has_exit(&g), every_cycle_has_exit(&permuted(&g, &perm)));
    }

    #[test]
    fn strongly_connected_with_exits_is_pis(g in strongly_connected(6)) {
        prop_assert!(purely_infinite_simple(&g).purely_infinite_simple);
    }

    #[test]
    fn coordinate_map_is_additive(
        g in graph(4, 3),
        u in prop::collection::vec(-5i64..=5, 4),
        v in prop::collection::vec(-5i64..=5, 4),
    ) {
        let n = g.vertex_count();
        let k = k0_of_graph(&g);
        let u: Vec<BigInt> = u[..n].iter().map(|&x| BigInt::from(x)).collect();
        let v: Vec<BigInt> = v[..n].iter().map(|&x| BigInt::from(x)).collect();
        let sum: Vec<BigInt> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let cu = k.coordinate_map.coordinates(&u).unwrap();
        let cv = k.coordinate_map.coordinates(&v).unwrap();
        prop_assert_eq!(k.coordinate_map.coordinates(&sum).unwrap(), k.group.add(&cu, &cv).unwrap());
    }

    #[test]
    fn k0_ignores_vertex_order((g, perm) in graph(4, 3).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), permutation(n))
    })) {
        let a = k0_of_graph(&g);
        let b = k0_of_graph(&permuted(&g, &perm));
        prop_assert_eq!(a.group, b.group);
        prop_assert_eq!(a.unit_order, b.unit_order);
    }

    #[test]
    fn m_graph_scales_vertices(g in graph(4, 2), m in 1u64..=5) {
        prop_assert_eq!(m_graph(&g, m).unwrap().vertex_count(), m as usize * g.vertex_count());
    }

    #[test]
    fn m_graph_preserves_pis_and_group(g in strongly_connected(4), m in 1u64..=5) {
        let h = m_graph(&g, m).unwrap();
        prop_assert!(purely_infinite_simple(&h).purely_infinite_simple);
        prop_assert_eq!(k0_of_graph(&h).group, k0_of_graph(&g).group);
    }

    #[test]
    fn order_scaling_law(g in finite_group(), coords in prop::collection::vec(0i64..100, 3), c in 1i64..30) {
        let x = g.element_i64(&coords[..g.torsion_rank()], &[]).unwrap();
        let OrderValue::Finite(n) = g.element_order(&x).unwrap() else { unreachable!() };
        let c = BigInt::from(c);
        let scaled = g.scale(&c, &x).unwrap();
        prop_assert_eq!(g.element_order(&scaled).unwrap(), OrderValue::Finite(&n / c.gcd(&n)));
        prop_assert!(g.exponent().is_multiple_of(&n));
    }
}
