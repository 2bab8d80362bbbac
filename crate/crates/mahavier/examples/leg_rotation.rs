//! A system that is turbulent only at its rotation period: leg 0 folds
//! onto leg 1 by the tent map, every other leg rotates on identically.
//!
//! ```bash
//! cargo run -p mahavier --example leg_rotation
//! ```

use mahavier::rational::rat;
use mahavier::transforms::{nleg_system, verify_turbulent, FunctionSystem, SetSpec};
use mahavier::IntervalUnion;

fn main() {
    for n in [1usize, 3, 5] {
        let sys = FunctionSystem::Legs(nleg_system(n));
        let k = SetSpec::on_leg(n, 0, IntervalUnion::segment(rat("0"), rat("1/2")));
        let l = SetSpec::on_leg(n, 0, IntervalUnion::segment(rat("1/2"), rat("1")));
        println!("{n}-leg rotation, canonical pair on leg 0:");
        for m in 1..=n as u32 {
            println!(
                "  iterate {m}: {:?}",
                verify_turbulent(&sys, &k, &l, m).unwrap()
            );
        }
        println!();
    }
}
