//! A relation whose finite shadow has positive entropy potential but
//! which provably admits no turbulence witness: a bijection graph on
//! Cantor approximation points plus a marked column and row that absorb
//! every orbit merge.
//!
//! ```bash
//! cargo run -p mahavier --example cantor_obstruction
//! ```

use mahavier::interval::{cantor_relation, turbulence_obstruction, PermSpec};
use mahavier::rational::rat;

fn main() {
    let (a, b) = (rat("1/2"), rat("5/6"));
    let rel = cantor_relation(3, &a, &b, &PermSpec::Rotate).unwrap();
    println!(
        "depth-3 approximation: {} graph points, column at {a}, row at {b}",
        rel.isolated.len()
    );
    for (x, y) in &rel.isolated {
        println!("  {x} -> {y}");
    }

    println!();
    println!(
        "obstruction holds: {:?}",
        turbulence_obstruction(&rel, &a, &b)
    );
    println!(
        "obstruction holds for the inverse: {:?}",
        turbulence_obstruction(&rel.inverse(), &b, &a)
    );

    // The finite shadow agrees: no witness at any searched level.
    let shadow = rel.discretize();
    println!();
    println!(
        "finite shadow: {} points, {} edges, cr-turbulent = {}",
        shadow.point_count(),
        shadow.edge_count(),
        shadow.cr_turbulence().verdict
    );
    for level in 2..=6 {
        let forward = shadow.brute_force_witness(level, 1).unwrap();
        let backward = shadow.inverse().brute_force_witness(level, 1).unwrap();
        println!(
            "  level {level}: forward witness {:?}, reverse witness {:?}",
            forward.is_some(),
            backward.is_some()
        );
    }
}
