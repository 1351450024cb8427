// Particle-hole states by level. Their number at level m is the partition number p(m).

use luttinger_ff::states::{count_states, enumerate_level};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in 0..=4 {
        let states = enumerate_level(m)?;
        let shown: Vec<String> = states.iter().map(ToString::to_string).collect();
        println!("level {m}: {}", shown.join(" "));
    }
    println!();
    for m in [10, 20, 24] {
        let n = enumerate_level(m)?.len();
        assert_eq!(n as u64, count_states(m));
        println!("level {m:>2}: {n} states");
    }
    println!("p(100) = {}", count_states(100));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
