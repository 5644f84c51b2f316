//! Full sweep of pairs at m = 5, orbit grouping, classification against the
//! known table, and the two open-problem scans. Writes the sweep as CSV.
//!
//! cargo run --release --example survey_search [out.csv]

use niho::survey::{inhomogeneous_orbits, rows_to_csv, scan_open_problem_1, scan_open_problem_2, search_pairs};
use niho::TowerCtx;

fn main() {
    let tower = TowerCtx::with_m(5).unwrap();
    let rows = search_pairs(&tower).unwrap();
    let pp = rows.iter().filter(|r| r.is_pp).count();
    let orbits: std::collections::BTreeSet<_> = rows.iter().map(|r| r.representative).collect();
    println!("m = 5: {} pairs in {} orbits, {pp} permutations", rows.len(), orbits.len());
    println!("orbits with mixed verdicts: {}", inhomogeneous_orbits(&rows).len());
    for r in rows.iter().filter(|r| r.is_pp && !r.degenerate) {
        println!("  {:<8} orbit {:<2} {}", r.pair.to_string(), r.orbit.len(), r.covered_by.as_deref().unwrap_or("not in table"));
    }

    let s: Vec<u64> = scan_open_problem_1(&tower).unwrap().iter().map(|h| h.param).collect();
    let k: Vec<u64> = scan_open_problem_2(&tower).unwrap().iter().map(|h| h.param).collect();
    println!("s with (s, 1-s) a permutation: {s:?}");
    println!("k with (2k, -k) a permutation: {k:?}");

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, rows_to_csv(&rows).unwrap()).unwrap();
        println!("wrote {path}");
    }
}
