//! Which matrix algebras M_c(L(E)) coincide, for a few graphs.

use leavitt::{k0_of_graph, purely_infinite_simple, DirectedGraph, IntMatrix, MatrixTypeVerdict};

fn show(name: &str, g: &DirectedGraph) -> leavitt::Result<()> {
    let verdict = MatrixTypeVerdict::new(&k0_of_graph(g), &purely_infinite_simple(g))?;
    let regime = match verdict.order() {
        Some(n) => format!("ord[1] = {n}"),
        None => "ord[1] infinite".to_string(),
    };
    println!("{name} ({regime})");
    for class in verdict.classes(12) {
        println!("  {class:?}");
    }
    Ok(())
}

fn main() -> leavitt::Result<()> {
    show("R_5", &DirectedGraph::rose(5))?;
    show("R_7", &DirectedGraph::rose(7))?;

    // K0 = Z, and [1] has infinite order, so only c = d
    let a = IntMatrix::from_rows(vec![vec![3i64, 1], vec![2, 2]])?;
    show("[[3,1],[2,2]]", &DirectedGraph::from_adjacency(&a)?)?;

    // rose with one petal is not purely infinite simple
    if let Err(e) = show("R_1", &DirectedGraph::rose(1)) {
        println!("R_1: {e}");
    }
    Ok(())
}
