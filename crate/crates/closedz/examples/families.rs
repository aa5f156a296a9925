//! Print the word families for a small alphabet and check a few ladder
//! identities numerically.

use closedz::families::{self, LengthFamily};
use closedz::Result;

fn main() -> Result<()> {
    let m = 3;
    println!("alphabet size m = {m}");

    println!("\nrecurrence words h_n:");
    for n in -1..=5 {
        println!("  h_{n:>2} = {}", families::h(m, n)?);
    }

    println!("\npalindromic prefixes u_n (u_(n+1) = h_(n-1) u_n):");
    for n in 1..=6 {
        println!("  u_{n} = {}", families::u(m, n)?);
    }

    println!("\nclosed z-factors z_n and emitted prefixes P_n = z_0 ... z_(n-1):");
    for n in 0..=6 {
        println!("  z_{n} = {:<22} P_{n} = {}", families::z(m, n)?.to_string(), families::p(m, n)?);
    }

    // |z_n| satisfies the order-m window recurrence once n > m.
    println!("\n|z_n| for n = 0..=12:");
    let lens: Vec<u128> = (0..=12)
        .map(|n| families::lengths(m, LengthFamily::Z, n))
        .collect::<Result<_>>()?;
    println!("  {lens:?}");
    for n in (m as usize + 1)..=12 {
        let window: u128 = (1..=m as usize).map(|k| lens[n - k]).sum();
        assert_eq!(lens[n], window);
    }
    println!("  window recurrence holds from n = {}", m + 1);

    // The fixed point starts with every h_n and u_n.
    let mut stream = families::mbonacci_stream(m)?;
    let h5 = families::h(m, 5)?;
    assert_eq!(stream.prefix_word(h5.len()), *h5);
    println!("\nh_5 is a prefix of the fixed point: {h5}");
    Ok(())
}
