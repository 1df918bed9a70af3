//! Nilpotent elements of nilpotent type in the exceptional simple Lie
//! algebras, with the depth, the action of the centralizer of the
//! sl2-triple on `g_{d−1/2}`, its rank and what kind of quasi-cyclic
//! elements exist. Shipped as a versioned JSON file.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::HalfInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Table1Status {
    SemisimpleExists,
    NonNilpotentExists,
    NilpotentOnly,
    NeverQuasicyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub algebra: String,
    pub nilpotent: String,
    /// Halved Dynkin characteristic, comma separated.
    pub characteristic: String,
    pub depth: HalfInt,
    pub action: String,
    pub rank: u32,
    pub status: Table1Status,
}

#[derive(Deserialize)]
struct Table1File {
    version: u32,
    rows: Vec<Table1Row>,
}

pub const TABLE1_VERSION: u32 = 1;

pub fn table1_rows() -> &'static [Table1Row] {
    static ROWS: OnceLock<Vec<Table1Row>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let file: Table1File =
            serde_json::from_str(include_str!("../../data/table1.json")).expect("embedded table parses");
        assert_eq!(file.version, TABLE1_VERSION, "embedded table version");
        file.rows
    })
}

pub fn table1_lookup(algebra: &str, nilpotent: &str) -> Result<Table1Row> {
    table1_rows()
        .iter()
        .find(|r| r.algebra == algebra && r.nilpotent == nilpotent)
        .cloned()
        .ok_or_else(|| Error::UnknownRow(algebra.to_string(), nilpotent.to_string()))
}
