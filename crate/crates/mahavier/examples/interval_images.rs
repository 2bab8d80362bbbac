//! Exact images of interval unions under a two-slope relation, and the
//! full-top iteration identity that drives the witness covering.
//!
//! ```bash
//! cargo run -p mahavier --example interval_images
//! ```

use mahavier::interval::linear_pair;
use mahavier::rational::rat;
use mahavier::IntervalUnion;

fn main() {
    // Branch 0 doubles on [0, 1/2]; branch 1 contracts by 1/3 on [0, 1].
    let sys = linear_pair(&rat("1/3"), &rat("2")).unwrap();
    let rel = sys.relation();

    let u = IntervalUnion::segment(rat("1/6"), rat("1"));
    println!("U = {u}");
    for n in 0..=6u32 {
        println!("  image^{n}(U) = {}", rel.iterate_image(&u, n));
    }
    println!();

    // Sets [beta, 1] with beta at or below alpha stay full-top forever:
    // each image is [g(beta), 1] exactly.
    let alpha = sys.alpha();
    println!("alpha = f^-1(g(1)) = {alpha}");
    let beta = rat("1/10");
    assert!(beta <= alpha);
    let mut expected = beta.clone();
    for n in 0..=8u32 {
        let image = rel.iterate_image(&IntervalUnion::segment(beta.clone(), rat("1")), n);
        println!("  image^{n}([{beta}, 1]) = {image}");
        assert_eq!(image, IntervalUnion::segment(expected.clone(), rat("1")));
        expected = sys.g().eval(&expected).unwrap();
    }
    println!();

    // Starting above alpha the images fragment before re-merging.
    let v = IntervalUnion::segment(rat("1/4"), rat("1/3"));
    println!("V = {v}");
    for n in 0..=5u32 {
        println!("  image^{n}(V) = {}", rel.iterate_image(&v, n));
    }
}
