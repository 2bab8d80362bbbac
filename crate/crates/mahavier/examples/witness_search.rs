//! Verified turbulence-witness search for expanding / contracting
//! branch pairs, in both directions.
//!
//! ```bash
//! cargo run -p mahavier --example witness_search
//! ```

use mahavier::interval::{check_witness, linear_pair, verify_cr_witness};
use mahavier::rational::rat;

fn main() {
    for (a, b) in [("1/3", "2"), ("1/2", "2"), ("2/3", "3")] {
        let sys = linear_pair(&rat(a), &rat(b)).unwrap();
        let rel = sys.relation();
        println!("system with contraction {a} and expansion {b}:");

        let (witness, params) = sys.cr_witness_search(&rat("1/2")).unwrap();
        println!(
            "  covering parameters: alpha = {}, beta = {}, gamma = {}, z = {}, m = {}",
            params.alpha, params.beta, params.gamma, params.z, params.m
        );
        println!(
            "  verified witness: level {}, free suffix {} (least n = {:?})",
            witness.level, witness.k.free, params.n
        );
        println!(
            "    K: first {} applying branch {:?}",
            witness.k.first, witness.k.forced
        );
        println!(
            "    L: first {} applying branch {:?}",
            witness.l.first, witness.l.forced
        );
        let detail = check_witness(&rel, &witness).unwrap();
        println!(
            "    projections: sources {} inside {}",
            detail.sources,
            detail.last_k.intersect(&detail.last_l)
        );
        assert!(detail.verdict);

        let (reverse, rev_params) = sys.reverse_cr_witness_search(&rat("1/2")).unwrap();
        println!(
            "  reverse witness: level {}, least n = {:?}, verifies = {:?}",
            reverse.level,
            rev_params.n,
            verify_cr_witness(&rel, &reverse)
        );
        println!();
    }
}
