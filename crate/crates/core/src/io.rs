//! JSON formats for algebras, colorings, cocycles and invariants.
//!
//! - biquandle: `{"n": 3, "under": [[..]], "over": [[..]]}`; quandle: `{"n": 3, "op": [[..]]}`
//! - coloring: `{"kind": "quandle"|"biquandle", "colors": {"<id>": elem}}`. Biquandle
//!   colorings are keyed by semi-arc id. Quandle colorings are keyed by arc, named
//!   by the smallest semi-arc id on it; on input any semi-arc id of the arc works.
//! - cocycle: `{"arity": 2, "A": [m1, ..], "values": {"x,y": [a1, ..]}}`, absent entries zero
//! - invariant: `{"invariant": [{"value": [..], "mult": k}]}` sorted by value

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, FiniteBiquandle, FiniteQuandle};
use crate::catalog::{self, Algebra};
use crate::cocycle::{CocycleTable, FiniteAbelianGroup, GroupRingElement};
use crate::coloring::{BiquandleColoring, QuandleColoring};
use crate::diagram::{parse_diagram, LinkDiagram};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AlgebraJson {
    Biquandle { n: usize, under: Vec<Vec<usize>>, over: Vec<Vec<usize>> },
    Quandle { n: usize, op: Vec<Vec<usize>> },
}

fn check_n(n: usize, rows: &[Vec<usize>]) -> Result<()> {
    if rows.len() != n {
        return Err(Error::Structure(format!("declared n = {n} but table has {} rows", rows.len())));
    }
    Ok(())
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    match serde_json::from_str(text)? {
        AlgebraJson::Biquandle { n, under, over } => {
            check_n(n, &under)?;
            check_n(n, &over)?;
            Ok(Algebra::Biquandle(FiniteBiquandle::new(&under, &over)?))
        }
        AlgebraJson::Quandle { n, op } => {
            check_n(n, &op)?;
            Ok(Algebra::Quandle(FiniteQuandle::new(&op)?))
        }
    }
}

pub fn biquandle_json(x: &FiniteBiquandle) -> serde_json::Value {
    serde_json::to_value(AlgebraJson::Biquandle { n: x.order(), under: x.under_rows(), over: x.over_rows() }).unwrap()
}

pub fn quandle_json(q: &FiniteQuandle) -> serde_json::Value {
    serde_json::to_value(AlgebraJson::Quandle { n: q.order(), op: q.rows() }).unwrap()
}

type Table = Vec<Vec<usize>>;

/// Raw tables of a JSON algebra file, for axiom reporting without construction.
pub fn algebra_tables(text: &str) -> Result<(Table, Option<Table>)> {
    match serde_json::from_str(text)? {
        AlgebraJson::Biquandle { n, under, over } => {
            check_n(n, &under)?;
            check_n(n, &over)?;
            Ok((under, Some(over)))
        }
        AlgebraJson::Quandle { n, op } => {
            check_n(n, &op)?;
            Ok((op, None))
        }
    }
}

/// A path to a JSON file, else a catalog id.
pub fn load_algebra(spec: &str) -> Result<Algebra> {
    if Path::new(spec).is_file() {
        parse_algebra(&std::fs::read_to_string(spec)?)
    } else {
        catalog::algebra(spec)
    }
}

pub fn load_diagram(spec: &str) -> Result<LinkDiagram> {
    if Path::new(spec).is_file() {
        parse_diagram(&std::fs::read_to_string(spec)?)
    } else {
        catalog::diagram(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub kind: String,
    pub colors: BTreeMap<String, Elem>,
}

pub enum Coloring {
    Quandle(QuandleColoring),
    Biquandle(BiquandleColoring),
}

pub fn arc_name(d: &LinkDiagram, arc: usize) -> u64 {
    d.arcs()[arc].iter().map(|&s| d.label(s)).min().expect("arcs are nonempty")
}

pub fn quandle_coloring_json(d: &LinkDiagram, c: &QuandleColoring) -> ColoringJson {
    let colors = c.0.iter().enumerate().map(|(a, &v)| (arc_name(d, a).to_string(), v)).collect();
    ColoringJson { kind: "quandle".into(), colors }
}

pub fn biquandle_coloring_json(d: &LinkDiagram, c: &BiquandleColoring) -> ColoringJson {
    let colors = c.0.iter().enumerate().map(|(s, &v)| (d.label(s).to_string(), v)).collect();
    ColoringJson { kind: "biquandle".into(), colors }
}

pub fn parse_coloring(d: &LinkDiagram, text: &str, order: usize) -> Result<Coloring> {
    let json: ColoringJson = serde_json::from_str(text)?;
    let mut semi = vec![None; d.n_semiarcs()];
    for (k, &v) in &json.colors {
        let id: u64 = k.parse().map_err(|_| Error::Coloring(format!("color key '{k}' is not a semi-arc id")))?;
        let s = d.index_of(id).ok_or_else(|| Error::Coloring(format!("no semi-arc with id {id}")))?;
        if v >= order {
            return Err(Error::Coloring(format!("color {v} outside the carrier 0..{order}")));
        }
        semi[s] = Some(v);
    }
    match json.kind.as_str() {
        "biquandle" => {
            let colors = semi
                .iter()
                .enumerate()
                .map(|(s, v)| v.ok_or_else(|| Error::Coloring(format!("semi-arc {} has no color", d.label(s)))))
                .collect::<Result<_>>()?;
            Ok(Coloring::Biquandle(BiquandleColoring(colors)))
        }
        "quandle" => {
            let mut arcs: Vec<Option<Elem>> = vec![None; d.n_arcs()];
            for (s, v) in semi.iter().enumerate() {
                let Some(v) = *v else { continue };
                let a = d.arc_of(s);
                match arcs[a] {
                    Some(w) if w != v => {
                        return Err(Error::Coloring(format!("arc {} given two colors", arc_name(d, a))))
                    }
                    _ => arcs[a] = Some(v),
                }
            }
            let colors = arcs
                .iter()
                .enumerate()
                .map(|(a, v)| v.ok_or_else(|| Error::Coloring(format!("arc {} has no color", arc_name(d, a)))))
                .collect::<Result<_>>()?;
            Ok(Coloring::Quandle(QuandleColoring(colors)))
        }
        other => Err(Error::Coloring(format!("unknown coloring kind '{other}'"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub arity: usize,
    #[serde(rename = "A")]
    pub group: Vec<u64>,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<u64>>,
}

pub fn parse_cocycle(text: &str, n: usize) -> Result<CocycleTable> {
    let json: CocycleJson = serde_json::from_str(text)?;
    let g = FiniteAbelianGroup::new(json.group.clone())?;
    let mut t = CocycleTable::new(json.arity, n, g.clone(), vec![0; n.pow(json.arity as u32)])?;
    for (k, v) in &json.values {
        let tuple: Vec<Elem> = k
            .split(',')
            .map(|p| p.trim().parse::<Elem>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Cocycle(format!("bad tuple key '{k}'")))?;
        if tuple.len() != json.arity || tuple.iter().any(|&e| e >= n) {
            return Err(Error::Cocycle(format!("tuple key '{k}' does not fit arity {} over {n} elements", json.arity)));
        }
        if v.iter().zip(g.orders()).any(|(&a, &m)| a >= m) {
            return Err(Error::Cocycle(format!("value {v:?} at '{k}' out of range")));
        }
        t.set(&tuple, g.encode(v)?);
    }
    Ok(t)
}

pub fn cocycle_json(t: &CocycleTable) -> CocycleJson {
    let mut values = BTreeMap::new();
    let mut tuple = vec![0; t.arity];
    for (i, &v) in t.values.iter().enumerate() {
        let mut rest = i;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % t.n;
            rest /= t.n;
        }
        if v != 0 {
            let key = tuple.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
            values.insert(key, t.group.decode(v));
        }
    }
    CocycleJson { arity: t.arity, group: t.group.orders().to_vec(), values }
}

#[derive(Serialize)]
struct Term {
    value: Vec<u64>,
    mult: u64,
}

pub fn invariant_json(x: &GroupRingElement) -> serde_json::Value {
    let terms: Vec<Term> = x.decoded().into_iter().map(|(value, mult)| Term { value, mult }).collect();
    serde_json::json!({ "invariant": terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dihedral, shift};
    use crate::coloring::{enumerate_biquandle_colorings, enumerate_quandle_colorings};
    use crate::diagram::fixtures::fixture;

    #[test]
    fn algebra_round_trip() {
        let x = shift(3);
        let back = parse_algebra(&biquandle_json(&x).to_string()).unwrap();
        assert!(matches!(back, Algebra::Biquandle(y) if y == x));
        let q = dihedral(3);
        assert!(matches!(parse_algebra(&quandle_json(&q).to_string()).unwrap(), Algebra::Quandle(_)));
        assert!(parse_algebra(r#"{"n":2,"op":[[0,0]]}"#).is_err());
        assert!(parse_algebra(r#"{"n":1}"#).is_err());
    }

    #[test]
    fn coloring_round_trip() {
        let d = fixture("trefoil_right").unwrap();
        for c in enumerate_quandle_colorings(&dihedral(3), &d) {
            let text = serde_json::to_string(&quandle_coloring_json(&d, &c)).unwrap();
            assert!(matches!(parse_coloring(&d, &text, 3).unwrap(), Coloring::Quandle(b) if b == c));
        }
        let x = shift(3);
        for c in enumerate_biquandle_colorings(&x, &d) {
            let text = serde_json::to_string(&biquandle_coloring_json(&d, &c)).unwrap();
            assert!(matches!(parse_coloring(&d, &text, 3).unwrap(), Coloring::Biquandle(b) if b == c));
        }
        assert!(parse_coloring(&d, r#"{"kind":"quandle","colors":{"1":0}}"#, 3).is_err());
        assert!(parse_coloring(&d, r#"{"kind":"rack","colors":{}}"#, 3).is_err());
    }

    #[test]
    fn cocycle_round_trip() {
        let text = r#"{"arity":2,"A":[3],"values":{"0,1":[2],"2,0":[1]}}"#;
        let t = parse_cocycle(text, 3).unwrap();
        assert_eq!(t.get(&[0, 1]), 2);
        assert_eq!(t.get(&[1, 1]), 0);
        let back = serde_json::to_string(&cocycle_json(&t)).unwrap();
        assert_eq!(parse_cocycle(&back, 3).unwrap(), t);
        assert!(parse_cocycle(r#"{"arity":2,"A":[3],"values":{"0,5":[1]}}"#, 3).is_err());
    }
}
