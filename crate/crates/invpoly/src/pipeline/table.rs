use std::fmt;

use serde::Serialize;

use crate::atoms::{admits_type_any_order, ShapeTag};
use crate::latticecount::{h0, sum_h0_weights};

/// One reference row: dual weights and degree, the primal m3, and the
/// expected counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixtureRow {
    pub weights: [u64; 5],
    pub degree: u64,
    pub m3: u64,
    pub h0: u64,
    pub sum_h0: u64,
    pub mu_real: i64,
}

const fn row(weights: [u64; 5], degree: u64, m3: u64, h0: u64, sum_h0: u64, mu_real: i64) -> FixtureRow {
    FixtureRow { weights, degree, m3, h0, sum_h0, mu_real }
}

pub const TABLE_FIXTURE: [FixtureRow; 7] = [
    row([177, 295, 270, 370, 70], 1180, 118, 5, 5, 0),
    row([52, 663, 867, 1581, 153], 3315, 65, 9, 6, 6),
    row([148, 777, 987, 1911, 63], 3885, 185, 9, 6, 6),
    row([86, 3655, 5185, 595, 1445], 10965, 129, 6, 5, 2),
    row([86, 3655, 4165, 2635, 425], 10965, 129, 6, 5, 2),
    row([438, 4161, 6175, 133, 1577], 12483, 657, 6, 5, 2),
    row([438, 4161, 4693, 3097, 95], 12483, 657, 6, 5, 2),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub row: usize,
    pub column: &'static str,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {} {}: expected {}, got {}", self.row + 1, self.column, self.expected, self.actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRowResult {
    pub fixture: FixtureRow,
    pub h0: u64,
    pub sum_h0: u64,
    pub mu_real: i64,
    /// `a2 a3 a4 + 1` read off the 3-cycle block of a Type II template that
    /// the dual weights admit.
    pub m3: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub rows: Vec<TableRowResult>,
    pub diffs: Vec<CellDiff>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

pub fn reproduce_table() -> TableCheck {
    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    for (i, fx) in TABLE_FIXTURE.iter().enumerate() {
        let hd = h0(&fx.weights, fx.degree as i64);
        let s = sum_h0_weights(&fx.weights);
        let mu_real = 2 * (hd as i64 - s as i64);
        let m3 = admits_type_any_order(&fx.weights, fx.degree, ShapeTag::TypeII).and_then(|sh| sh.cycle_block_m3());
        let mut check = |column, expected: String, actual: String| {
            if expected != actual {
                diffs.push(CellDiff { row: i, column, expected, actual });
            }
        };
        check("h0", fx.h0.to_string(), hd.to_string());
        check("sum", fx.sum_h0.to_string(), s.to_string());
        check("mu_R", fx.mu_real.to_string(), mu_real.to_string());
        check("m3", fx.m3.to_string(), m3.map_or_else(|| "none".into(), |m| m.to_string()));
        rows.push(TableRowResult { fixture: *fx, h0: hd, sum_h0: s, mu_real, m3 });
    }
    TableCheck { rows, diffs }
}
