//! Twist classes of PQM newforms with good reduction outside {2, 3}, and the bundled
//! coefficient data for them.

use crate::record::{load_records, NewformRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub level: u64,
    /// Discriminant of the inner twist character.
    pub psi: i64,
    pub disc_b: u64,
    /// Galois orbits in the twist class at this level.
    pub num: u32,
    pub labels: &'static [&'static str],
}

const fn row(level: u64, psi: i64, disc_b: u64, num: u32, labels: &'static [&'static str]) -> TableRow {
    TableRow { level, psi, disc_b, num, labels }
}

pub const TABLE1: [TableRow; 16] = [
    row(243, -3, 6, 1, &["243.2.a.d"]),
    row(972, -3, 6, 1, &["972.2.a.e"]),
    row(2592, -4, 6, 2, &["2592.2.a.l", "2592.2.a.p"]),
    row(2592, -4, 6, 2, &["2592.2.a.m", "2592.2.a.r"]),
    row(3888, -3, 6, 2, &["3888.2.a.b", "3888.2.a.t"]),
    row(5184, -4, 6, 2, &["5184.2.a.bl", "5184.2.a.bx"]),
    row(5184, -4, 6, 2, &["5184.2.a.bk", "5184.2.a.bv"]),
    row(15552, -3, 6, 2, &[]),
    row(15552, -3, 6, 2, &[]),
    row(20736, -4, 6, 4, &[]),
    row(20736, -4, 22, 4, &[]),
    row(20736, -8, 10, 4, &[]),
    row(62208, -3, 6, 4, &[]),
    row(62208, -3, 6, 4, &[]),
    row(82944, -24, 6, 4, &[]),
    row(82944, -24, 6, 4, &[]),
];

/// Coefficient data for a selection of rows, plus a split and a CM example.
pub fn builtin_records() -> Vec<NewformRecord> {
    load_records(include_str!("../fixtures/newforms.json")).expect("bundled fixture is valid")
}
