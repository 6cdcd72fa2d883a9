//! Diagrams and move pairs shipped with the crate.

use super::moves::MovePair;
use super::{parse_diagram, LinkDiagram};
use crate::{Error, Result};

pub const DIAGRAMS: [&str; 6] = ["unknot0", "unknot_kink_pos", "unknot_kink_neg", "hopf_pos", "trefoil_right", "figure8"];

pub const MOVE_PAIRS: [&str; 5] = ["r1_pos_pair", "r1_neg_pair", "r2_pair", "r2b_pair", "r3_pair"];

/// The diagrams every verification suite runs over. A move pair used as a
/// diagram stands for its post-move side.
pub const MATRIX: [&str; 8] = [
    "unknot0",
    "unknot_kink_pos",
    "unknot_kink_neg",
    "hopf_pos",
    "trefoil_right",
    "figure8",
    "r2_pair",
    "r3_pair",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "unknot0" => include_str!("../../fixtures/unknot0.json"),
        "unknot_kink_pos" => include_str!("../../fixtures/unknot_kink_pos.json"),
        "unknot_kink_neg" => include_str!("../../fixtures/unknot_kink_neg.json"),
        "hopf_pos" => include_str!("../../fixtures/hopf_pos.json"),
        "trefoil_right" => include_str!("../../fixtures/trefoil_right.json"),
        "figure8" => include_str!("../../fixtures/figure8.json"),
        "r1_pos_pair" => include_str!("../../fixtures/r1_pos_pair.json"),
        "r1_neg_pair" => include_str!("../../fixtures/r1_neg_pair.json"),
        "r2_pair" => include_str!("../../fixtures/r2_pair.json"),
        "r2b_pair" => include_str!("../../fixtures/r2b_pair.json"),
        "r3_pair" => include_str!("../../fixtures/r3_pair.json"),
        _ => return None,
    })
}

pub fn fixture_source(name: &str) -> Result<&'static str> {
    source(name).ok_or_else(|| Error::Catalog(format!("unknown fixture '{name}'")))
}

/// A named diagram; move pairs resolve to their post-move diagram.
pub fn fixture(name: &str) -> Result<LinkDiagram> {
    if MOVE_PAIRS.contains(&name) {
        return Ok(move_pair(name)?.after);
    }
    parse_diagram(fixture_source(name)?)
}

pub fn move_pair(name: &str) -> Result<MovePair> {
    if !MOVE_PAIRS.contains(&name) {
        return Err(Error::Catalog(format!("'{name}' is not a move pair")));
    }
    MovePair::parse(name, fixture_source(name)?)
}

pub fn matrix() -> Vec<(&'static str, LinkDiagram)> {
    MATRIX.iter().map(|&n| (n, fixture(n).expect("shipped fixture parses"))).collect()
}
