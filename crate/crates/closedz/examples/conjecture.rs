//! Closed c-factor lengths of the m-bonacci word against |h_(i-m+1)|, for
//! both candidate definitions of the closed c-factor. The comparison is a
//! report, not an assertion.

use closedz::factorize::CcMode;
use closedz::verify::conjecture_rows;
use closedz::Result;

fn main() -> Result<()> {
    for m in [3u8, 4] {
        for mode in [CcMode::LongestClosed, CcMode::Alternative] {
            let rows = conjecture_rows(m, 16, mode)?;
            let all_equal = rows.iter().all(|r| r.equal);
            println!("m = {m}, mode = {mode}: all_equal = {all_equal}");
            for r in &rows {
                println!(
                    "  i = {:>2}  |c_i| = {:>6}  |h_{}| = {:>6}  {}",
                    r.i,
                    r.factor_len,
                    r.i as i64 - m as i64 + 1,
                    r.h_len,
                    if r.equal { "=" } else { "!" }
                );
            }
        }
    }
    Ok(())
}
