//! Full (s, t) sweeps at fixed m, orbit grouping under swap and the inverse
//! exponent transforms, classification against the table of known pairs,
//! and the two open-problem scans (s + t = 1 and (2k, -k)).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::niho::{circle_modulus, equivalent_pairs, known_pairs_table1, NihoPair};
use crate::permcheck::unit_circle_check;
use crate::tower::TowerCtx;

/// Largest m accepted by the sweeps.
pub const SWEEP_MAX_M: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub m: u32,
    pub pair: NihoPair,
    /// Lexicographically smallest member of the orbit.
    pub representative: NihoPair,
    pub orbit: Vec<NihoPair>,
    pub is_pp: bool,
    pub covered_by: Option<String>,
    pub flagged_new: bool,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: NihoPair,
    pub members: Vec<NihoPair>,
    /// Worklist rounds until no new member appeared.
    pub iterations: usize,
}

/// Closes {pair} under both transforms until nothing new appears. Members
/// are canonical (s <= t), so the swap is built in.
pub fn canonical_orbit(m: u32, pair: &NihoPair) -> Orbit {
    let start = NihoPair::new(m, pair.s as i128, pair.t as i128);
    let mut members = BTreeSet::from([start]);
    let mut frontier = vec![start];
    let mut iterations = 0;
    while !frontier.is_empty() {
        iterations += 1;
        let mut next = Vec::new();
        for p in frontier {
            for q in equivalent_pairs(m, &p) {
                if members.insert(q) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let members: Vec<NihoPair> = members.into_iter().collect();
    Orbit { representative: members[0], members, iterations }
}

fn check_m(tower: &TowerCtx) -> Result<u32> {
    let m = tower.m();
    if m > SWEEP_MAX_M {
        return Err(Error::RangeTooLarge(m));
    }
    Ok(m)
}

/// Source tags for pairs the table claims at this m: the row tag for the
/// primary pair, `TAG~equiv` for a listed equivalent.
pub fn table_coverage(m: u32) -> BTreeMap<NihoPair, String> {
    let mut covered = BTreeMap::new();
    let entries = known_pairs_table1(m);
    for e in entries.iter().filter(|e| e.condition_ok) {
        if let Some(p) = e.pair {
            covered.entry(p).or_insert_with(|| e.source());
        }
    }
    for e in entries.iter().filter(|e| e.condition_ok) {
        for p in e.equivalents.iter().filter_map(|x| x.pair) {
            covered.entry(p).or_insert_with(|| format!("{}~equiv", e.source()));
        }
    }
    covered
}

/// Verifies every unordered pair 0 <= s <= t <= 2^m on U and classifies it.
/// A pair in the orbit of a covered pair is tagged `orbit:TAG`.
pub fn search_pairs(tower: &TowerCtx) -> Result<Vec<SearchRow>> {
    let m = check_m(tower)?;
    let q = 1u64 << m;
    let pairs: Vec<NihoPair> = (0..=q).flat_map(|s| (s..=q).map(move |t| NihoPair { m, s, t })).collect();
    let verdicts: Vec<bool> = pairs.par_iter().map(|p| unit_circle_check(tower, p).is_permutation).collect();

    let covered = table_coverage(m);
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut orbit_of: HashMap<NihoPair, usize> = HashMap::new();
    let mut rows = Vec::with_capacity(pairs.len());
    for (pair, is_pp) in pairs.into_iter().zip(verdicts) {
        let idx = *orbit_of.entry(pair).or_insert_with(|| {
            orbits.push(canonical_orbit(m, &pair));
            orbits.len() - 1
        });
        let orbit = &orbits[idx];
        for &p in &orbit.members {
            orbit_of.insert(p, idx);
        }
        let covered_by = if is_pp {
            covered.get(&pair).cloned().or_else(|| {
                orbit.members.iter().find_map(|p| covered.get(p)).map(|tag| format!("orbit:{tag}"))
            })
        } else {
            None
        };
        let degenerate = pair.is_degenerate();
        rows.push(SearchRow {
            m,
            pair,
            representative: orbit.representative,
            orbit: orbit.members.clone(),
            is_pp,
            flagged_new: is_pp && covered_by.is_none() && !degenerate,
            covered_by,
            degenerate,
        });
    }
    Ok(rows)
}

/// Representatives of orbits whose members do not share one verdict.
pub fn inhomogeneous_orbits(rows: &[SearchRow]) -> Vec<NihoPair> {
    let mut verdicts: BTreeMap<NihoPair, BTreeSet<bool>> = BTreeMap::new();
    for r in rows {
        verdicts.entry(r.representative).or_default().insert(r.is_pp);
    }
    verdicts.into_iter().filter(|(_, v)| v.len() > 1).map(|(p, _)| p).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    pub param: u64,
    pub pair: NihoPair,
}

/// s in [0, 2^m] with (s, 1 - s) a permutation pair.
pub fn scan_open_problem_1(tower: &TowerCtx) -> Result<Vec<ScanHit>> {
    let m = check_m(tower)?;
    scan(tower, (0..=1u64 << m).map(|s| (s, NihoPair::new(m, s as i128, 1 - s as i128))).collect())
}

/// k in [0, 2^m] with (2k, -k) a permutation pair.
pub fn scan_open_problem_2(tower: &TowerCtx) -> Result<Vec<ScanHit>> {
    let m = check_m(tower)?;
    scan(tower, (0..=1u64 << m).map(|k| (k, NihoPair::new(m, 2 * k as i128, -(k as i128)))).collect())
}

fn scan(tower: &TowerCtx, candidates: Vec<(u64, NihoPair)>) -> Result<Vec<ScanHit>> {
    Ok(candidates
        .into_par_iter()
        .filter(|(_, p)| unit_circle_check(tower, p).is_permutation)
        .map(|(param, pair)| ScanHit { param, pair })
        .collect())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    m: u32,
    s: u64,
    t: u64,
    orbit_size: usize,
    is_pp: bool,
    covered_by: &'a str,
    flagged_new: bool,
    degenerate: bool,
}

/// CSV with columns m,s,t,orbit_size,is_pp,covered_by,flagged_new,degenerate.
pub fn rows_to_csv(rows: &[SearchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(CsvRow {
            m: r.m,
            s: r.pair.s,
            t: r.pair.t,
            orbit_size: r.orbit.len(),
            is_pp: r.is_pp,
            covered_by: r.covered_by.as_deref().unwrap_or(""),
            flagged_new: r.flagged_new,
            degenerate: r.degenerate,
        })
        .map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedEquivalent {
    pub label: String,
    pub pair: Option<NihoPair>,
    pub is_pp: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedTableRow {
    pub m: u32,
    pub source: String,
    pub label: String,
    pub pair: Option<NihoPair>,
    pub condition: String,
    pub condition_ok: bool,
    /// Unit-circle verdict for the primary pair, when it exists at this m.
    pub is_pp: Option<bool>,
    pub equivalents: Vec<VerifiedEquivalent>,
}

impl VerifiedTableRow {
    /// Every pair the row claims (condition holds) verified as a permutation.
    pub fn claims_hold(&self) -> bool {
        !self.condition_ok
            || (self.is_pp == Some(true) && self.equivalents.iter().all(|e| e.pair.is_none() || e.is_pp == Some(true)))
    }
}

/// The table at this m with every defined pair verified on U.
pub fn verify_table1(tower: &TowerCtx) -> Result<Vec<VerifiedTableRow>> {
    let m = check_m(tower)?;
    let entries = known_pairs_table1(m);
    Ok(entries
        .par_iter()
        .map(|e| {
            let verdict = |p: Option<NihoPair>| p.map(|p| unit_circle_check(tower, &p).is_permutation);
            VerifiedTableRow {
                m,
                source: e.source(),
                label: e.label.clone(),
                pair: e.pair,
                condition: e.condition.clone(),
                condition_ok: e.condition_ok,
                is_pp: verdict(e.pair),
                equivalents: e
                    .equivalents
                    .iter()
                    .map(|x| VerifiedEquivalent { label: x.label.clone(), pair: x.pair, is_pp: verdict(x.pair) })
                    .collect(),
            }
        })
        .collect())
}

#[derive(Serialize)]
struct TableCsvRow<'a> {
    m: u32,
    source: &'a str,
    kind: &'a str,
    label: &'a str,
    s: Option<u64>,
    t: Option<u64>,
    condition_ok: bool,
    is_pp: Option<bool>,
}

/// One CSV line per primary or equivalent pair:
/// m,source,kind,label,s,t,condition_ok,is_pp (empty cells for undefined pairs).
pub fn table_to_csv(rows: &[VerifiedTableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        let lines = std::iter::once(("primary", r.label.as_str(), r.pair, r.is_pp))
            .chain(r.equivalents.iter().map(|e| ("equivalent", e.label.as_str(), e.pair, e.is_pp)));
        for (kind, label, pair, is_pp) in lines {
            w.serialize(TableCsvRow {
                m: r.m,
                source: &r.source,
                kind,
                label,
                s: pair.map(|p| p.s),
                t: pair.map(|p| p.t),
                condition_ok: r.condition_ok,
                is_pp,
            })
            .map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Number of unordered pairs the sweep visits: C(2^m+1, 2) + 2^m + 1.
pub fn sweep_size(m: u32) -> u64 {
    let c = circle_modulus(m);
    c * (c + 1) / 2
}
