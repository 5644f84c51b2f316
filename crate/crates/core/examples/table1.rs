//! The table of known pairs at m = 2..8, each defined pair verified on the
//! unit circle.
//!
//! cargo run --release --example table1

use niho::survey::verify_table1;
use niho::TowerCtx;

fn main() {
    for m in 2..=8 {
        let rows = verify_table1(&TowerCtx::with_m(m).unwrap()).unwrap();
        let claimed = rows.iter().filter(|r| r.condition_ok).count();
        let held = rows.iter().filter(|r| r.condition_ok && r.claims_hold()).count();
        println!("m = {m}: {} rows, {claimed} with condition met, {held} verified", rows.len());
        for r in rows.iter().filter(|r| !r.source.contains("(k=") || r.source == "F6(k=1)") {
            let pair = r.pair.map(|p| p.to_string()).unwrap_or_else(|| "undefined".into());
            println!("  {:<8} {:<12} {:<10} condition {:<5} pp {:?}", r.source, r.label, pair, r.condition_ok, r.is_pp);
        }
    }
}
