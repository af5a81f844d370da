//! Compares the gcd criterion for cx ~ dx with exhaustive automorphism
//! search, and runs the integer eigenvector search.

use leavitt::{
    automorphism_maps_x_to_y, eigen_search, lemma1_criterion, FGAbelianGroup, OrderValue,
};
use num_bigint::BigInt;

fn main() -> leavitt::Result<()> {
    let g = FGAbelianGroup::from_factors(&[2, 6], 0)?;
    let x = g.element_i64(&[1, 1], &[])?;
    let OrderValue::Finite(n) = g.element_order(&x)? else {
        unreachable!()
    };
    println!("G = {g}, x = (1, 1), ord x = {n}");
    for c in 1..=6i64 {
        let row: Vec<String> = (1..=6i64)
            .map(|d| {
                let (c, d) = (BigInt::from(c), BigInt::from(d));
                let rule = lemma1_criterion(&n, &c, &d).unwrap();
                let search = automorphism_maps_x_to_y(
                    &g,
                    &g.scale(&c, &x).unwrap(),
                    &g.scale(&d, &x).unwrap(),
                    1024,
                )
                .unwrap();
                assert_eq!(rule, search);
                if rule {
                    "~".into()
                } else {
                    ".".into()
                }
            })
            .collect();
        println!("  c = {c}: {}", row.join(" "));
    }

    let x: Vec<BigInt> = vec![1.into(), 2.into()];
    for (m, n) in [(3, 3), (3, 5)] {
        let w = eigen_search(2, 2, &x, &BigInt::from(m), &BigInt::from(n))?;
        match w {
            Some(t) => println!("T(3x) = {n}x with T =\n{t}"),
            None => println!("no T with entries in [-2, 2] maps 3x to {n}x"),
        }
    }
    Ok(())
}
