//! Prints the K-theory data of a graph file, or of the roses R_2..R_8 when no
//! file is given.
//!
//!     cargo run --example analyze_graph -- crates/core/data/three_vertex.json

use leavitt::{k0_of_graph, parse_graph, purely_infinite_simple, DirectedGraph};

fn report(name: &str, g: &DirectedGraph) {
    let k = k0_of_graph(g);
    let pis = purely_infinite_simple(g);
    println!(
        "{name:<12} K0 = {:<14} [1] = ({:<6})  ord[1] = {:<9} pis = {}",
        k.group.to_string(),
        k.unit
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        k.unit_order.to_string(),
        pis.purely_infinite_simple,
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(path) => {
            let g = parse_graph(&std::fs::read_to_string(&path)?)?;
            report(&path, &g);
        }
        None => {
            for q in 2..=8 {
                report(&format!("R_{q}"), &DirectedGraph::rose(q));
            }
        }
    }
    Ok(())
}
