//! Alternation counts of labeled paths, the pigeonhole bound, and the
//! exhaustive cube flip check.
//!
//! ```bash
//! cargo run -p mahavier --example zigzag_bounds
//! ```

use mahavier::rational::{rat, Rational};
use mahavier::zigzag::{
    flip_bound_exhaustive, flip_counts, zigzag_bound, zigzag_number, FlipAssignment, Label,
    LabeledPath,
};

fn main() {
    use Label::{Neither, A, B};
    let labels = vec![A, A, B, Neither, B, A, Neither, B];
    let ts: Vec<Rational> = (0..labels.len() as i64).map(Rational::from_int).collect();
    let path = LabeledPath::new(ts, labels).unwrap();
    println!("labels AAB-BA-B: zigzag number = {}", zigzag_number(&path));
    println!(
        "diameter {} with delta 3/2: bound = {}",
        path.diameter(),
        zigzag_bound(&path.diameter(), &rat("3/2")).unwrap()
    );
    println!();

    // Gray-code orderings spread their flips evenly; the pigeonhole
    // bound says some coordinate always flips at least (2^n - 1) / n
    // times, however the cube is ordered.
    let gray = FlipAssignment::new(3, vec![0, 1, 3, 2, 6, 7, 5, 4]).unwrap();
    println!(
        "gray-code flip counts over 3 coordinates: {:?}",
        flip_counts(&gray)
    );
    for n in 1..=3 {
        println!(
            "every ordering of the {n}-cube respects the bound: {}",
            flip_bound_exhaustive(n).unwrap()
        );
    }
}
