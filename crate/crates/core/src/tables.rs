//! Parameter columns and rows of the two reference spectrum tables.
//!
//! Each column header quotes a frequency `1, 2, 3, 4`; that is the value of
//! `ω₁` (table 1) or `ω₂` (table 2) at the column's `(λ, β)`.

use crate::error::{Error, Result};
use crate::model::FrequencyMode;

/// Rows `n` reported in both tables.
pub const TABLE_ROWS: [usize; 11] = [0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50];

/// Basis size of the reference program.
pub const TABLE_BASIS: usize = 100;

/// Per-cell tolerance against `−(n+½)`.
pub const TABLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableColumn {
    pub lambda: f64,
    pub beta: f64,
    /// Frequency quoted in the column header.
    pub header_omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableSpec {
    pub id: u8,
    pub mode: FrequencyMode,
    pub columns: [TableColumn; 4],
}

const fn col(lambda: f64, beta: f64, header_omega: f64) -> TableColumn {
    TableColumn { lambda, beta, header_omega }
}

pub const TABLE_1: TableSpec = TableSpec {
    id: 1,
    mode: FrequencyMode::Omega1,
    columns: [col(1.0, 3.0, 1.0), col(2.0, 7.0, 2.0), col(0.5, 5.5, 3.0), col(0.8, 8.2, 4.0)],
};

pub const TABLE_2: TableSpec = TableSpec {
    id: 2,
    mode: FrequencyMode::Omega2,
    columns: [col(3.0, 1.0, 1.0), col(2.0, 1.0, 2.0), col(1.5, 0.5, 3.0), col(1.5, 1.0, 4.0)],
};

pub fn table(id: u8) -> Result<&'static TableSpec> {
    match id {
        1 => Ok(&TABLE_1),
        2 => Ok(&TABLE_2),
        other => Err(Error::Domain(format!("no table {other}; expected 1 or 2"))),
    }
}

/// All eight `(λ, β)` pairs of both tables with their modes.
pub fn all_columns() -> impl Iterator<Item = (FrequencyMode, TableColumn)> {
    [TABLE_1, TABLE_2].into_iter().flat_map(|t| t.columns.into_iter().map(move |c| (t.mode, c)))
}
