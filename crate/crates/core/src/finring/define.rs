//! JSON ring definitions.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::construct::RingBuilder;
use super::table::{RingTable, Shape};
use crate::error::{Error, Result};

/// A ring description as read from a definition file, e.g.
/// `{"type":"matrix","base":{"type":"gf","p":2,"k":1},"n":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingDefinition {
    Zmod { m: usize },
    Gf { p: usize, k: u32 },
    Matrix { base: Box<RingDefinition>, n: usize },
    Triangular { base: Box<RingDefinition>, n: usize },
    /// Iterated product of two or more factors.
    Product { factors: Vec<RingDefinition> },
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
        #[serde(default)]
        label: Option<String>,
    },
}

impl RingDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, builder: &RingBuilder) -> Result<RingTable> {
        match self {
            RingDefinition::Zmod { m } => builder.zmod(*m),
            RingDefinition::Gf { p, k } => builder.gf(*p, *k),
            RingDefinition::Matrix { base, n } => {
                builder.matrix(&Arc::new(base.build(builder)?), *n)
            }
            RingDefinition::Triangular { base, n } => {
                builder.triangular(&Arc::new(base.build(builder)?), *n)
            }
            RingDefinition::Product { factors } => {
                let mut parts = factors.iter();
                let first = parts
                    .next()
                    .ok_or_else(|| Error::Definition("product needs at least one factor".into()))?;
                let mut acc = Arc::new(first.build(builder)?);
                for f in parts {
                    acc = Arc::new(builder.product(&acc, &Arc::new(f.build(builder)?))?);
                }
                Ok(Arc::try_unwrap(acc).unwrap_or_else(|a| (*a).clone()))
            }
            RingDefinition::Tables { add, mul, zero, one, label } => {
                let n = add.len();
                if n as u128 > builder.cap as u128 {
                    return Err(Error::CapExceeded { requested: n as u128, cap: builder.cap });
                }
                let flatten = |rows: &[Vec<usize>], name: &str| -> Result<Vec<u32>> {
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        return Err(Error::InvalidTables(format!("{name} table must be {n}x{n}")));
                    }
                    Ok(rows.iter().flatten().map(|&v| v as u32).collect())
                };
                RingTable::from_tables(
                    label.clone().unwrap_or_else(|| format!("tables[{n}]")),
                    n,
                    flatten(add, "add")?,
                    flatten(mul, "mul")?,
                    *zero,
                    *one,
                    Shape::Tables,
                )
            }
        }
    }
}

pub fn parse_ring_definition(path: &Path) -> Result<RingTable> {
    parse_ring_definition_with(path, &RingBuilder::default())
}

pub fn parse_ring_definition_with(path: &Path, builder: &RingBuilder) -> Result<RingTable> {
    let text = std::fs::read_to_string(path)?;
    RingDefinition::from_json(&text)?.build(builder)
}
