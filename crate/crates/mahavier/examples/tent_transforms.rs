//! Classical turbulence on the tent map: verification, separation
//! refinement, nested image chains, and the round trip between function
//! pairs and graph witnesses.
//!
//! ```bash
//! cargo run -p mahavier --example tent_transforms
//! ```

use mahavier::rational::rat;
use mahavier::transforms::{
    chain_check, function_to_graph_witness, graph_to_function_witness, nleg_system,
    separate_turbulent_pair, verify_turbulent, FunctionSystem, GraphWitness, PointSpec, SetSpec,
};
use mahavier::IntervalUnion;

fn seg(lo: &str, hi: &str) -> SetSpec {
    SetSpec::on_leg(1, 0, IntervalUnion::segment(rat(lo), rat(hi)))
}

fn main() {
    let tent = FunctionSystem::Legs(nleg_system(1));

    // The halves form a turbulent pair sharing the peak preimage.
    let k0 = seg("0", "1/2");
    let k1 = seg("1/2", "1");
    println!(
        "halves at m = 1: {:?}",
        verify_turbulent(&tent, &k0, &k1, 1)
    );

    // Intersecting each half with its own preimage separates the pair.
    let (r0, r1) =
        separate_turbulent_pair(&tent, &k0, &k1, &PointSpec::Leg(0, rat("1/2"))).unwrap();
    println!("refined pair: {r0:?} and {r1:?}");
    println!(
        "refined at m = 2: {:?}",
        verify_turbulent(&tent, &r0, &r1, 2)
    );
    println!(
        "image of refined K returns the original: {:?}",
        tent.image(&r0).unwrap()
    );

    // The second iterate satisfies the nested chain for every word.
    let second = tent.iterate_system(2);
    let all_words_hold = (0u32..(1 << 6)).all(|bits| {
        let word: Vec<u8> = (0..6).map(|i| ((bits >> i) & 1) as u8).collect();
        chain_check(&second, &r0, &r1, &word) == Ok(true)
    });
    println!("image chains hold for all 64 words of length 6: {all_words_hold}");

    // A separated pair lifts to a witness over the graph and projects
    // back onto itself.
    let witness = function_to_graph_witness(&tent, &r0, &r1, 2).unwrap();
    if let GraphWitness::Interval(w) = &witness {
        println!(
            "graph witness: level {}, K forced through branches {:?}",
            w.level, w.k.forced
        );
    }
    let (back_k, back_l, m) = graph_to_function_witness(&tent, &witness).unwrap();
    println!("recovered pair at m = {m}: {back_k:?} and {back_l:?}");
}
