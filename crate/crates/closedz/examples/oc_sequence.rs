//! The oc-sequence marks each prefix of the fixed point as closed (1) or
//! open (0). Its runs of 1s reproduce the h-word lengths after the initial
//! run, and for the Tribonacci word the whole sequence has a block closed
//! form.

use closedz::families::{self, LengthFamily};
use closedz::ocseq::{self, classify_prefix};
use closedz::Result;

fn main() -> Result<()> {
    for m in [2u8, 3, 4] {
        let mut stream = families::mbonacci_stream(m)?;
        let seq = ocseq::oc(&mut stream, 48);
        println!("m = {m}: oc = {}", seq.to_bit_string());
    }

    // Runs of 1s against |h_0|, |h_1|, ... (skipping the leading run of 1).
    let m = 3;
    let mut stream = families::mbonacci_stream(m)?;
    let seq = ocseq::oc(&mut stream, 5_000);
    let mut runs = seq.runs_of_ones();
    runs.pop(); // last run may be cut off by the window
    println!("\nm = {m}: 1-run lengths {:?}", &runs[..8.min(runs.len())]);
    for (i, &r) in runs.iter().enumerate().skip(1) {
        assert_eq!(r as u128, families::lengths(m, LengthFamily::H, i as i64 - 1)?);
    }
    println!("runs 1.. equal |h_0|, |h_1|, ... exactly");

    // The ladder classification agrees with the direct border scan.
    for len in 1..=seq.len() {
        assert_eq!(classify_prefix(m, len as u128)?.is_closed(), seq.bit(len));
    }
    println!("ladder classification matches all {} prefixes", seq.len());

    // Tribonacci in closed form.
    let closed_form = ocseq::tribonacci_oc_closed_form(seq.len());
    assert_eq!(closed_form.bits(), seq.bits());
    println!("Tribonacci closed form reproduces the sequence");
    Ok(())
}
