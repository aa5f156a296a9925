//! The five factorization schemes side by side on the same text.

use closedz::factorize::{
    c_factorize, closed_c_factorize, closed_z_factorize, palindromic_z_factorize, z_factorize,
    Budget, CcMode,
};
use closedz::families;
use closedz::{Result, Word};

fn show(label: &str, factors: &[Word]) {
    let parts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    println!("  {label:<20} {}", parts.join(" | "));
}

fn main() -> Result<()> {
    // A Fibonacci prefix long enough to separate the schemes.
    let text = families::mbonacci_stream(2)?.prefix_word(33);
    println!("text = {text}\n");

    let mut src = text.clone();
    show("z", &z_factorize(&mut src, Budget::Letters(text.len()))?.factors);
    let mut src = text.clone();
    show("cz", &closed_z_factorize(&mut src, Budget::Letters(text.len()))?.factors);
    let mut src = text.clone();
    show("pz", &palindromic_z_factorize(&mut src, Budget::Letters(text.len()))?.factors);
    show("c", &c_factorize(&text).factors);
    show("cc (longest-closed)", &closed_c_factorize(&text, CcMode::LongestClosed).factors);
    show("cc (alternative)", &closed_c_factorize(&text, CcMode::Alternative).factors);

    // The same engines run off an infinite stream with a factor budget.
    let mut stream = families::mbonacci_stream(3)?;
    let f = palindromic_z_factorize(&mut stream, Budget::Factors(9))?;
    println!("\npalindromic z-factor lengths of the Tribonacci word: {:?}", f.lengths());
    Ok(())
}
