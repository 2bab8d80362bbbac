//! Entropy and turbulence decisions for small finite relations.
//!
//! ```bash
//! cargo run -p mahavier --example finite_turbulence
//! ```

use mahavier::finite::FiniteRelation;

fn main() {
    let cases = [
        (
            "golden mean",
            FiniteRelation::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")]),
        ),
        (
            "full shift",
            FiniteRelation::from_edges(
                &["0", "1"],
                &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")],
            ),
        ),
        (
            "two-cycle",
            FiniteRelation::from_edges(&["0", "1"], &[("0", "1"), ("1", "0")]),
        ),
        (
            "three-cycle",
            FiniteRelation::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]),
        ),
    ];

    for (name, rel) in cases {
        let entropy = rel.entropy();
        let growth = rel.entropy_growth(30);
        let decision = rel.cr_turbulence();
        println!("{name}:");
        println!("  entropy (spectral) = {:.12}", entropy.value);
        println!("  entropy (growth, m = 30) = {:.12}", growth.value);
        println!("  cr-turbulent = {}", decision.verdict);
        println!(
            "  reverse cr-turbulent = {}",
            rel.reverse_cr_turbulence().verdict
        );
        println!("  orbit space uncountable = {}", rel.is_uncountable());
        if let Some(w) = decision.witness {
            let k: Vec<_> = w.k.iter().map(|t| rel.ids_of(t).join("")).collect();
            let l: Vec<_> = w.l.iter().map(|t| rel.ids_of(t).join("")).collect();
            println!("  witness at level {}: K = {k:?}, L = {l:?}", w.level);
            println!("  witness verifies: {:?}", rel.verify_witness(&w));
        }
        if let Some(dl) = rel.double_loop_witness() {
            println!(
                "  double loop: x = {:?}, y = {:?}, first difference at {}",
                rel.ids_of(&dl.x),
                rel.ids_of(&dl.y),
                dl.j
            );
        }
        println!();
    }

    // The Mahavier levels themselves.
    let golden = FiniteRelation::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")]);
    for n in 1..=4 {
        let level: Vec<String> = golden
            .level(n)
            .iter()
            .map(|t| golden.ids_of(t).join(""))
            .collect();
        println!("golden-mean level {n}: {level:?}");
    }
}
