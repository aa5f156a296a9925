//! The singular words of the Fibonacci word: palindromic, closed, never
//! recurring early, and exactly the factors of its z-factorization.

use closedz::factorize::{z_factorize, Budget};
use closedz::families;
use closedz::{Result, Word};

fn main() -> Result<()> {
    println!("singular words w_n:");
    for n in -2..=6 {
        let w = families::singular(n)?;
        println!(
            "  w_{n:>2} = {:<15} palindrome={} closed={}",
            w.to_string(),
            w.is_palindrome(),
            n >= -1 && w.is_closed()
        );
    }

    // w_n = w_(n-2) w_(n-3) w_(n-2) from n = 1 on.
    for n in 1..=10 {
        let lhs = families::singular(n)?;
        let rhs = Word::concat([
            &*families::singular(n - 2)?,
            &*families::singular(n - 3)?,
            &*families::singular(n - 2)?,
        ]);
        assert_eq!(*lhs, rhs);
    }
    println!("\nw_n = w_(n-2) w_(n-3) w_(n-2) holds for n = 1..=10");

    // The z-factorization of the Fibonacci word is (w_(-1), w_0, w_1, ...).
    let mut fib = families::mbonacci_stream(2)?;
    let f = z_factorize(&mut fib, Budget::Factors(10))?;
    for (j, factor) in f.factors.iter().enumerate() {
        assert_eq!(*factor, *families::singular(j as i64 - 1)?);
    }
    println!("z-factors of the Fibonacci word are the singular words in order");

    // On the two-letter alphabet the z words coincide with the singular words.
    for n in 0..=12 {
        assert_eq!(*families::z(2, n)?, *families::singular(n - 1)?);
    }
    println!("z_n = w_(n-1) on the two-letter alphabet for n = 0..=12");
    Ok(())
}
