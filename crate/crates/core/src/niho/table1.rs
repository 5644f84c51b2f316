use serde::Serialize;

use super::{circle_modulus, Fraction, NihoPair};
use crate::modarith;

/// Rows of the table of known (s, t), labelled by the family each row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Table1Row {
    /// (k, -k)
    F6,
    /// (2, -1)
    F5,
    /// (1, -1/2)
    F8,
    /// (-1/3, 4/3)
    T3,
    /// (3, -1)
    T4,
    /// (-2/3, 5/3)
    T5,
    /// (1/5, 4/5)
    T6,
}

impl Table1Row {
    pub const ALL: [Table1Row; 7] = [
        Table1Row::F6,
        Table1Row::F5,
        Table1Row::F8,
        Table1Row::T3,
        Table1Row::T4,
        Table1Row::T5,
        Table1Row::T6,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Table1Row::F6 => "F6",
            Table1Row::F5 => "F5",
            Table1Row::F8 => "F8",
            Table1Row::T3 => "T3",
            Table1Row::T4 => "T4",
            Table1Row::T5 => "T5",
            Table1Row::T6 => "T6",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Table1Row::F6 => "(k,-k)",
            Table1Row::F5 => "(2,-1)",
            Table1Row::F8 => "(1,-1/2)",
            Table1Row::T3 => "(-1/3,4/3)",
            Table1Row::T4 => "(3,-1)",
            Table1Row::T5 => "(-2/3,5/3)",
            Table1Row::T6 => "(1/5,4/5)",
        }
    }

    pub fn condition_text(self) -> &'static str {
        match self {
            Table1Row::F6 => "m even, or exp3(k) >= exp3(2^m+1)",
            Table1Row::F5 => "any m",
            Table1Row::F8 => "m != 0 mod 3",
            Table1Row::T3 | Table1Row::T4 | Table1Row::T5 => "m even",
            Table1Row::T6 => "gcd(5, 2^m+1) = 1",
        }
    }

    /// The row's sufficient condition at `m` (and `k` for the (k,-k) row).
    pub fn condition(self, m: u32, k: Option<u64>) -> bool {
        match self {
            Table1Row::F6 => {
                let k = k.expect("(k,-k) row needs k");
                m % 2 == 0 || k_minus_k_odd_condition(m, k)
            }
            Table1Row::F5 => true,
            Table1Row::F8 => m % 3 != 0,
            Table1Row::T3 | Table1Row::T4 | Table1Row::T5 => m % 2 == 0,
            Table1Row::T6 => modarith::gcd(5, circle_modulus(m)) == 1,
        }
    }

    pub fn pair_fractions(self, k: Option<u64>) -> (Fraction, Fraction) {
        match self {
            Table1Row::F6 => {
                let k = k.expect("(k,-k) row needs k") as i64;
                (Fraction::int(k), Fraction::int(-k))
            }
            Table1Row::F5 => (Fraction::int(2), Fraction::int(-1)),
            Table1Row::F8 => (Fraction::int(1), Fraction::new(-1, 2)),
            Table1Row::T3 => (Fraction::new(-1, 3), Fraction::new(4, 3)),
            Table1Row::T4 => (Fraction::int(3), Fraction::int(-1)),
            Table1Row::T5 => (Fraction::new(-2, 3), Fraction::new(5, 3)),
            Table1Row::T6 => (Fraction::new(1, 5), Fraction::new(4, 5)),
        }
    }

    /// The equivalent pairs listed alongside each row.
    pub fn equivalent_fractions(self, k: Option<u64>) -> Vec<(Fraction, Fraction)> {
        let f = Fraction::new;
        let one = Fraction::int(1);
        match self {
            Table1Row::F6 => {
                let k = k.expect("(k,-k) row needs k") as i64;
                vec![(f(k, 2 * k - 1), f(2 * k, 2 * k - 1)), (f(k, 2 * k + 1), f(2 * k, 2 * k + 1))]
            }
            Table1Row::F5 => vec![(one, f(1, 3)), (one, f(2, 3))],
            Table1Row::F8 => vec![(one, f(3, 2)), (f(1, 4), f(3, 4))],
            Table1Row::T3 => vec![(one, f(1, 5)), (one, f(4, 5))],
            Table1Row::T4 => vec![(f(3, 5), f(4, 5)), (f(1, 3), f(4, 3))],
            Table1Row::T5 => vec![(one, f(2, 7)), (one, f(5, 7))],
            Table1Row::T6 => vec![(one, f(-1, 3)), (one, f(4, 3))],
        }
    }
}

/// exp3(k) >= exp3(2^m + 1).
pub(crate) fn k_minus_k_odd_condition(m: u32, k: u64) -> bool {
    match (modarith::valuation(k, 3), modarith::valuation(circle_modulus(m), 3)) {
        (Some(vk), Some(vq)) => vk >= vq,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalentEntry {
    pub label: String,
    /// `None` when a denominator is not invertible modulo 2^m + 1.
    pub pair: Option<NihoPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Entry {
    pub row: Table1Row,
    pub k: Option<u64>,
    pub label: String,
    /// `None` when the row's fractions do not exist at this m.
    pub pair: Option<NihoPair>,
    pub condition: String,
    pub condition_ok: bool,
    pub equivalents: Vec<EquivalentEntry>,
}

impl Table1Entry {
    pub fn source(&self) -> String {
        match self.k {
            Some(k) => format!("{}(k={k})", self.row.id()),
            None => self.row.id().to_string(),
        }
    }

    /// Pairs this entry claims as permutations: the primary pair and every
    /// defined equivalent, provided the condition holds.
    pub fn claimed_pairs(&self) -> Vec<NihoPair> {
        if !self.condition_ok {
            return Vec::new();
        }
        self.pair
            .into_iter()
            .chain(self.equivalents.iter().filter_map(|e| e.pair))
            .collect()
    }
}

/// Every table row materialized at `m`. The (k,-k) row yields one entry per
/// k in [1, 2^(m-1)], which covers each unordered pair {k, -k} once.
pub fn known_pairs_table1(m: u32) -> Vec<Table1Entry> {
    let mut out = Vec::new();
    for row in Table1Row::ALL {
        let ks: Vec<Option<u64>> = match row {
            Table1Row::F6 => (1..=(1u64 << (m - 1))).map(Some).collect(),
            _ => vec![None],
        };
        for k in ks {
            let (s, t) = row.pair_fractions(k);
            let pair = NihoPair::from_fractions(m, s, t).ok();
            let label = match k {
                Some(_) => format!("({s},{t})"),
                None => row.label().to_string(),
            };
            let equivalents = row
                .equivalent_fractions(k)
                .into_iter()
                .map(|(a, b)| EquivalentEntry {
                    label: format!("({a},{b})"),
                    pair: NihoPair::from_fractions(m, a, b).ok(),
                })
                .collect();
            out.push(Table1Entry {
                row,
                k,
                label,
                condition_ok: pair.is_some() && row.condition(m, k),
                pair,
                condition: row.condition_text().to_string(),
                equivalents,
            });
        }
    }
    out
}
