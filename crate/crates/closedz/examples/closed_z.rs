//! Stream the closed z-factorization of an m-bonacci word and inspect each
//! factor: the next factor is always the shortest closed prefix of the
//! remainder that has not occurred before its own position.

use closedz::factorize::{closed_z_factorize, Budget};
use closedz::families;
use closedz::Result;

fn main() -> Result<()> {
    for m in [2u8, 3, 5] {
        let mut stream = families::mbonacci_stream(m)?;
        let f = closed_z_factorize(&mut stream, Budget::Factors(8))?;
        println!("m = {m}: closed z-factors of the fixed point");
        for (n, factor) in f.factors.iter().enumerate() {
            assert!(factor.is_closed());
            assert_eq!(*factor, *families::z(m, n as i64)?);
            let border = factor
                .closed_border()
                .map(|b| b.to_string())
                .unwrap_or_else(|| "-".to_string());
            println!("  z_{n} = {factor:<24} doubly-occurring border: {border}");
        }
        println!();
    }

    // From n = 2 the border is the frontier built from reversed h words.
    let m = 4;
    for n in 2..=8 {
        let z = families::z(m, n)?;
        assert_eq!(z.closed_border(), Some(families::z_frontier(m, n)?));
    }
    println!("m = 4: closed borders match the reversed-h frontier for n = 2..=8");
    Ok(())
}
