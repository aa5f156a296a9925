//! Run every property-check suite over a grid of alphabets and print the
//! report. One check is expected to fail: the palindromic factor lengths
//! stop matching |z_n| at m = 4, and the report carries the smallest
//! counterexample.

use closedz::verify::{any_failed, render_text, RunConfig, Suite};

fn main() {
    let mut cfg = RunConfig::new(2, 5);
    cfg.max_n = 14;
    cfg.factor_max_n = 10;
    let checks = closedz::verify::run_suite(Suite::All, &cfg);
    print!("{}", render_text(&checks));
    println!("any failed: {}", any_failed(&checks));
}
