// Sum of |F|^2 over a level against Gamma(a^2 + m) / (m! Gamma(a^2)).

use luttinger_ff::series::sum_rule_table;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for a in [-0.5, 1.2] {
        println!("a = {a}");
        println!("  m  states        enumerated       closed form    rel err");
        for row in sum_rule_table(12, a)? {
            println!(
                "{:>3}  {:>6}  {:>16.12}  {:>16.12}  {:.1e}",
                row.level, row.state_count, row.enumerated_sum, row.closed_form, row.rel_err
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
