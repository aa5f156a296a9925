//! Return words of the palindromic prefixes: for each occurrence of u_(j+1)
//! in the fixed point, the factor reaching to the next occurrence. They are
//! exactly the mu_j images of the letters.

use std::collections::BTreeSet;

use closedz::families;
use closedz::morphism::mu;
use closedz::Result;

fn main() -> Result<()> {
    let m = 3;
    for j in 1..=4 {
        let target = families::u(m, j + 1)?;
        let prefix = families::mbonacci_stream(m)?.prefix_word(4_000);
        let observed: BTreeSet<String> = prefix
            .return_words(&target)?
            .iter()
            .map(|w| w.to_string())
            .collect();
        let images: BTreeSet<String> =
            mu(m, j as u64)?.images().iter().map(|w| w.to_string()).collect();
        println!("j = {j}, u_{} = {target}", j + 1);
        println!("  return words: {observed:?}");
        assert_eq!(observed, images);
        println!("  equal to the mu_{j} letter images");
    }
    Ok(())
}
