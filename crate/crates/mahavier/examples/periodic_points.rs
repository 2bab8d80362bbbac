//! Periodic-itinerary certification for linear-through-origin branch
//! relations: a word carries nonzero periodic points exactly when its
//! slope product is 1.
//!
//! ```bash
//! cargo run -p mahavier --example periodic_points
//! ```

use mahavier::interval::{linear_pair, periodic_itineraries};
use mahavier::rational::rat;

fn main() {
    // Contraction by 1/3 against expansion by 2: no product of slopes
    // can return to 1, so the only periodic point is the origin.
    let lopsided = linear_pair(&rat("1/3"), &rat("2")).unwrap().relation();
    let found = periodic_itineraries(&lopsided, 20).unwrap();
    println!(
        "slopes 1/3 and 2: {} itineraries with nonzero periodic points up to period 20",
        found.len()
    );

    // Contraction by 1/2 against expansion by 2: the two-step words
    // compose to the identity on their domains.
    let balanced = linear_pair(&rat("1/2"), &rat("2")).unwrap().relation();
    let found = periodic_itineraries(&balanced, 4).unwrap();
    println!("slopes 1/2 and 2, periods up to 4:");
    for itinerary in found {
        let word: Vec<&str> = itinerary
            .word
            .iter()
            .map(|&i| if i == 0 { "expand" } else { "contract" })
            .collect();
        println!(
            "  word [{}] fixes {}",
            word.join(", "),
            itinerary.fixed_points
        );
    }
}
