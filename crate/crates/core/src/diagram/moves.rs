//! Reidemeister move fixtures and coloring transport across them.

use std::collections::HashMap;

use serde::Deserialize;

use super::{DiagramJson, LinkDiagram, SemiArc};
use crate::algebra::{Elem, FiniteBiquandle, FiniteQuandle};
use crate::coloring::{enumerate_biquandle_colorings, enumerate_quandle_colorings, BiquandleColoring, QuandleColoring};
use crate::{Error, Result};

#[derive(Deserialize)]
struct PairJson {
    before: DiagramJson,
    after: DiagramJson,
    boundary: Vec<(u64, u64)>,
}

/// Two diagrams differing inside a disc. `boundary` pairs a semi-arc before the
/// move with a semi-arc after it that carries the same strand outside the disc.
#[derive(Clone, Debug)]
pub struct MovePair {
    pub name: String,
    pub before: LinkDiagram,
    pub after: LinkDiagram,
    pub boundary: Vec<(SemiArc, SemiArc)>,
}

impl MovePair {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let raw: PairJson = serde_json::from_str(text)?;
        let before = LinkDiagram::from_json(&raw.before)?;
        let after = LinkDiagram::from_json(&raw.after)?;
        let boundary = raw
            .boundary
            .iter()
            .map(|&(b, a)| match (before.index_of(b), after.index_of(a)) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(Error::Diagram(format!("{name}: boundary pair ({b}, {a}) names a missing semi-arc"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MovePair { name: name.to_string(), before, after, boundary })
    }

    fn arc_boundary(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.boundary.iter().map(|&(b, a)| (self.before.arc_of(b), self.after.arc_of(a))).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Coloring bijection across a move, tabulated for one algebra.
#[derive(Clone, Debug)]
pub struct Transport<C> {
    pub before: Vec<C>,
    pub after: Vec<C>,
    /// `image[i]` indexes into `after`.
    pub image: Vec<usize>,
}

impl<C: Clone + Ord> Transport<C> {
    pub fn apply(&self, c: &C) -> Option<&C> {
        let i = self.before.binary_search(c).ok()?;
        Some(&self.after[self.image[i]])
    }
}

fn tabulate<C: Clone + Ord>(
    name: &str,
    before: Vec<C>,
    after: Vec<C>,
    pairs: &[(usize, usize)],
    colors: impl Fn(&C) -> &[Elem],
) -> Result<Transport<C>> {
    let key_after = |c: &C| pairs.iter().map(|&(_, a)| colors(c)[a]).collect::<Vec<_>>();
    let mut by_key: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
    for (i, c) in after.iter().enumerate() {
        by_key.entry(key_after(c)).or_default().push(i);
    }
    let mut image = Vec::with_capacity(before.len());
    let mut hit = vec![false; after.len()];
    for c in &before {
        let key: Vec<Elem> = pairs.iter().map(|&(b, _)| colors(c)[b]).collect();
        match by_key.get(&key).map(|v| v.as_slice()) {
            Some([i]) => {
                if std::mem::replace(&mut hit[*i], true) {
                    return Err(Error::Coloring(format!("{name}: transport is not injective")));
                }
                image.push(*i);
            }
            Some(v) => {
                return Err(Error::Coloring(format!("{name}: boundary colors {key:?} extend in {} ways", v.len())))
            }
            None => return Err(Error::Coloring(format!("{name}: boundary colors {key:?} do not extend"))),
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::Coloring(format!("{name}: transport is not surjective")));
    }
    Ok(Transport { before, after, image })
}

pub fn transport_biquandle(pair: &MovePair, x: &FiniteBiquandle) -> Result<Transport<BiquandleColoring>> {
    let before = enumerate_biquandle_colorings(x, &pair.before);
    let after = enumerate_biquandle_colorings(x, &pair.after);
    tabulate(&pair.name, before, after, &pair.boundary, |c| &c.0)
}

pub fn transport_quandle(pair: &MovePair, q: &FiniteQuandle) -> Result<Transport<QuandleColoring>> {
    let before = enumerate_quandle_colorings(q, &pair.before);
    let after = enumerate_quandle_colorings(q, &pair.after);
    tabulate(&pair.name, before, after, &pair.arc_boundary(), |c| &c.0)
}
