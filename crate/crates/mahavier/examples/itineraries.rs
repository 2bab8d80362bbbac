//! Realizing binary itineraries through a turbulence witness: every
//! word picks which witness side each block of the tuple visits.
//!
//! ```bash
//! cargo run -p mahavier --example itineraries
//! ```

use mahavier::finite::FiniteRelation;

fn main() {
    let rel = FiniteRelation::from_edges(
        &["0", "1"],
        &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")],
    );
    let witness = rel
        .cr_turbulence()
        .witness
        .expect("full shift is turbulent");
    let n = witness.level;
    println!(
        "witness level {n}: K = {:?}, L = {:?}",
        rel.ids_of(&witness.k[0]).join(""),
        rel.ids_of(&witness.l[0]).join("")
    );
    println!();

    for word in [
        vec![0u8],
        vec![1],
        vec![0, 1],
        vec![1, 0, 0],
        vec![1, 1, 0, 1],
    ] {
        let tuple = rel.realize_itinerary(&witness, &word).unwrap();
        println!(
            "word {word:?} -> tuple {} (length {} = {} blocks x {} + 1)",
            rel.ids_of(&tuple).join(""),
            tuple.len(),
            word.len(),
            n - 1
        );
    }

    // Distinctness forces exponential growth: 2^j tuples at length
    // j (n - 1) + 1, which lower-bounds the entropy by ln 2 / (n - 1).
    let mut seen = std::collections::BTreeSet::new();
    let j = 10;
    for bits in 0u32..(1 << j) {
        let word: Vec<u8> = (0..j).map(|i| ((bits >> i) & 1) as u8).collect();
        seen.insert(rel.realize_itinerary(&witness, &word).unwrap());
    }
    println!();
    println!(
        "distinct realizations for all words of length {j}: {}",
        seen.len()
    );
    println!(
        "entropy {:.6} >= ln 2 / (n - 1) = {:.6}",
        rel.entropy().value,
        2.0_f64.ln() / (n as f64 - 1.0)
    );
}
