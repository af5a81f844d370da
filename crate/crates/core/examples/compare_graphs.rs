//! Builds the graphs E_m, which scale the unit class by m, and compares them
//! with E through (K0, [1]).

use leavitt::{k0_of_graph, kp_invariant_compare, m_graph, DirectedGraph, IsoReason};

fn main() -> leavitt::Result<()> {
    let e = DirectedGraph::rose(5);
    let k_e = k0_of_graph(&e);
    for m in 1..=8 {
        let f = m_graph(&e, m)?;
        let verdict = kp_invariant_compare(&k_e, &k0_of_graph(&f), 1024);
        let reason = match verdict.reason {
            IsoReason::GroupMismatch => "groups differ",
            IsoReason::UnitOrbitMismatch => "units in different orbits",
            IsoReason::UnitOrbitMatch { .. } => "units in the same orbit",
            IsoReason::UndecidedBoundExceeded => "undecided",
        };
        println!(
            "R_5 vs R_5 with m = {m}: {} vertices, {reason}",
            f.vertex_count()
        );
    }
    println!("\n{}", m_graph(&DirectedGraph::rose(3), 3)?.to_json());
    Ok(())
}
