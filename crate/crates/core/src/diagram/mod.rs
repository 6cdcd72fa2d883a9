//! Oriented link diagrams given by crossing codes.
//!
//! A crossing lists its four semi-arc ends counterclockwise starting from the
//! incoming under semi-arc, so slot 0 is under-in and slot 2 is under-out. The
//! over strand enters at slot 3 on a positive crossing and at slot 1 on a
//! negative one.
//!
//! Corner `(c, j)` is the sector between slot `j` and slot `j + 1`
//! (counterclockwise). Faces are traced with the face kept on the left of the
//! walk: leaving crossing `c` through slot `j` and arriving at `(c', j')`, the
//! next corner is `(c', j' - 1)`.
//!
//! The specified region of a semi-arc lies on its right: its normal is the
//! tangent rotated counterclockwise and points from the specified region into
//! the other one.

pub mod fixtures;
pub mod moves;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type SemiArc = usize;
pub type RegionId = usize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// The four semi-arcs at a crossing in coloring order.
///
/// `i` and `j` are the under and over semi-arcs bounding the crossing's
/// specified region; `k` is the other under semi-arc and `l` the other over
/// semi-arc. A biquandle coloring satisfies `k = i ⊼ j` and `l = j ⊻ i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Roles {
    pub i: SemiArc,
    pub j: SemiArc,
    pub k: SemiArc,
    pub l: SemiArc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    /// Internal semi-arc indices, counterclockwise from under-in.
    pub slots: [SemiArc; 4],
}

impl Crossing {
    /// Slot positions of `(i, j, k, l)`.
    pub fn role_slots(&self) -> [usize; 4] {
        match self.sign {
            Sign::Positive => [0, 1, 2, 3],
            Sign::Negative => [2, 1, 0, 3],
        }
    }

    pub fn roles(&self) -> Roles {
        let [i, j, k, l] = self.role_slots().map(|s| self.slots[s]);
        Roles { i, j, k, l }
    }

    /// Corner index (within this crossing) of the crossing's specified region.
    pub fn specified_corner(&self) -> usize {
        match self.sign {
            Sign::Positive => 0,
            Sign::Negative => 1,
        }
    }

    fn out_slots(&self) -> [usize; 2] {
        match self.sign {
            Sign::Positive => [2, 1],
            Sign::Negative => [2, 3],
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// The region is the specified region of the semi-arc.
    Specified,
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    /// `(crossing, corner)` pairs in traversal order.
    pub corners: Vec<(usize, usize)>,
    pub boundary: Vec<(SemiArc, Side)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub sign: i64,
    pub slots: [u64; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerJson {
    pub crossing: usize,
    pub slot: usize,
}

/// Wire form: `{"crossings":[{"sign":±1,"slots":[s0,s1,s2,s3]}], "components":[ids], "unbounded":{...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default)]
    pub crossings: Vec<CrossingJson>,
    #[serde(default)]
    pub components: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unbounded: Option<CornerJson>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// External id of each internal semi-arc; internal order is ascending id.
    labels: Vec<u64>,
    free: Vec<SemiArc>,
    /// (crossing, slot) leaving / arriving ends; `None` for crossing-free circles.
    tail: Vec<Option<(usize, usize)>>,
    head: Vec<Option<(usize, usize)>>,
    arc_of: Vec<usize>,
    n_arcs: usize,
    regions: Vec<Region>,
    corner_region: Vec<RegionId>,
    specified: Vec<RegionId>,
    opposite: Vec<RegionId>,
    unbounded: RegionId,
    unbounded_corner: Option<(usize, usize)>,
}

pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let json: DiagramJson = serde_json::from_str(text)?;
    LinkDiagram::from_json(&json)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl LinkDiagram {
    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let bad = |m: String| Error::Diagram(m);
        let mut occurrences: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in json.crossings.iter().enumerate() {
            if x.sign != 1 && x.sign != -1 {
                return Err(bad(format!("crossing {c}: sign must be +1 or -1, got {}", x.sign)));
            }
            for (j, &s) in x.slots.iter().enumerate() {
                occurrences.entry(s).or_default().push((c, j));
            }
        }
        for (id, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(bad(format!("semi-arc {id} occurs {} times in crossing slots, expected 2", occ.len())));
            }
        }
        let mut free_ids = json.components.clone();
        free_ids.sort_unstable();
        for w in free_ids.windows(2) {
            if w[0] == w[1] {
                return Err(bad(format!("component semi-arc {} listed twice", w[0])));
            }
        }
        if let Some(id) = free_ids.iter().find(|id| occurrences.contains_key(id)) {
            return Err(bad(format!("component semi-arc {id} also appears at a crossing")));
        }
        let mut labels: Vec<u64> = occurrences.keys().copied().chain(free_ids.iter().copied()).collect();
        labels.sort_unstable();
        let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        let crossings: Vec<Crossing> = json
            .crossings
            .iter()
            .map(|x| Crossing {
                sign: if x.sign == 1 { Sign::Positive } else { Sign::Negative },
                slots: x.slots.map(|s| index[&s]),
            })
            .collect();
        let ns = labels.len();
        let nc = crossings.len();

        let mut tail = vec![None; ns];
        let mut head = vec![None; ns];
        for (c, x) in crossings.iter().enumerate() {
            let outs = x.out_slots();
            for j in 0..4 {
                let s = x.slots[j];
                let end = if outs.contains(&j) { &mut tail[s] } else { &mut head[s] };
                if end.is_some() {
                    let kind = if outs.contains(&j) { "leaves" } else { "enters" };
                    return Err(bad(format!(
                        "semi-arc {} {kind} crossings twice; declared signs are inconsistent with the orientation (crossing {c})",
                        labels[s]
                    )));
                }
                *end = Some((c, j));
            }
        }
        let free: Vec<SemiArc> = free_ids.iter().map(|id| index[id]).collect();

        // Over strands continue through crossings; arcs break only at under-passes.
        let mut uf = UnionFind::new(ns);
        for x in &crossings {
            uf.union(x.slots[1], x.slots[3]);
        }
        let mut root_arc = BTreeMap::new();
        let arc_of: Vec<usize> = (0..ns)
            .map(|s| {
                let next = root_arc.len();
                *root_arc.entry(uf.find(s)).or_insert(next)
            })
            .collect();
        let n_arcs = root_arc.len();

        if nc > 0 {
            let mut cuf = UnionFind::new(nc);
            for occ in occurrences.values() {
                cuf.union(occ[0].0, occ[1].0);
            }
            if (0..nc).any(|c| cuf.find(c) != cuf.find(0)) {
                return Err(bad("crossings form more than one connected piece; split diagrams are not supported".into()));
            }
        }

        let twin = |c: usize, j: usize| -> (usize, usize) {
            let occ = &occurrences[&labels[crossings[c].slots[j]]];
            if occ[0] == (c, j) {
                occ[1]
            } else {
                occ[0]
            }
        };
        let mut corner_region = vec![usize::MAX; 4 * nc];
        let mut regions = Vec::new();
        for start in 0..4 * nc {
            if corner_region[start] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut corners = Vec::new();
            let mut cur = start;
            loop {
                if corner_region[cur] != usize::MAX {
                    if cur != start {
                        return Err(bad("face traversal does not close; corner structure is not planar".into()));
                    }
                    break;
                }
                corner_region[cur] = id;
                let (c, j) = (cur / 4, cur % 4);
                corners.push((c, j));
                let (c2, j2) = twin(c, j);
                cur = 4 * c2 + (j2 + 3) % 4;
            }
            regions.push(Region { id, corners, boundary: Vec::new() });
        }
        if nc > 0 && regions.len() != nc + 2 {
            return Err(bad(format!(
                "Euler check failed: {nc} crossings, {} semi-arcs, {} faces (expected {})",
                2 * nc,
                regions.len(),
                nc + 2
            )));
        }
        if nc == 0 {
            regions.push(Region { id: 0, corners: Vec::new(), boundary: Vec::new() });
        }

        let unbounded_corner = match (&json.unbounded, nc) {
            (_, 0) => None,
            (Some(u), _) => {
                if u.crossing >= nc || u.slot >= 4 {
                    return Err(bad(format!("unbounded corner ({}, {}) out of range", u.crossing, u.slot)));
                }
                Some((u.crossing, u.slot))
            }
            (None, _) => Some((0, 0)),
        };
        let unbounded = unbounded_corner.map_or(0, |(c, j)| corner_region[4 * c + j]);

        let mut specified = vec![usize::MAX; ns];
        let mut opposite = vec![usize::MAX; ns];
        for s in 0..ns {
            if let Some((c, j)) = tail[s] {
                specified[s] = corner_region[4 * c + (j + 3) % 4];
                opposite[s] = corner_region[4 * c + j];
            }
        }
        // Crossing-free circles sit in the unbounded region, counterclockwise,
        // so the specified side is outside and each bounds a fresh disc.
        for &s in &free {
            let disc = regions.len();
            regions.push(Region { id: disc, corners: Vec::new(), boundary: Vec::new() });
            specified[s] = unbounded;
            opposite[s] = disc;
        }
        for s in 0..ns {
            regions[specified[s]].boundary.push((s, Side::Specified));
            regions[opposite[s]].boundary.push((s, Side::Opposite));
        }

        let d = LinkDiagram {
            crossings,
            labels,
            free,
            tail,
            head,
            arc_of,
            n_arcs,
            regions,
            corner_region,
            specified,
            opposite,
            unbounded,
            unbounded_corner,
        };
        for (c, x) in d.crossings.iter().enumerate() {
            let r0 = d.crossing_region(c);
            let Roles { i, j, .. } = x.roles();
            if d.specified[i] != r0 || d.specified[j] != r0 {
                return Err(bad(format!("crossing {c}: specified region of the crossing is not unique")));
            }
        }
        Ok(d)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            crossings: self
                .crossings
                .iter()
                .map(|x| CrossingJson { sign: x.sign.as_i64(), slots: x.slots.map(|s| self.labels[s]) })
                .collect(),
            components: self.free.iter().map(|&s| self.labels[s]).collect(),
            unbounded: self.unbounded_corner.map(|(crossing, slot)| CornerJson { crossing, slot }),
        }
    }

    /// Same diagram with a different region treated as unbounded.
    pub fn with_unbounded(&self, region: RegionId) -> LinkDiagram {
        assert!(region < self.regions.len(), "region {region} out of range");
        let mut d = self.clone();
        d.unbounded = region;
        d.unbounded_corner = d.regions[region].corners.first().copied();
        d
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_semiarcs(&self) -> usize {
        self.labels.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.n_arcs
    }

    pub fn n_regions(&self) -> usize {
        self.regions.len()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn arc_of(&self, s: SemiArc) -> usize {
        self.arc_of[s]
    }

    /// Semi-arcs of each arc, in ascending internal order.
    pub fn arcs(&self) -> Vec<Vec<SemiArc>> {
        let mut arcs = vec![Vec::new(); self.n_arcs];
        for s in 0..self.n_semiarcs() {
            arcs[self.arc_of[s]].push(s);
        }
        arcs
    }

    pub fn label(&self, s: SemiArc) -> u64 {
        self.labels[s]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<SemiArc> {
        self.labels.binary_search(&label).ok()
    }

    pub fn free_components(&self) -> &[SemiArc] {
        &self.free
    }

    pub fn tail(&self, s: SemiArc) -> Option<(usize, usize)> {
        self.tail[s]
    }

    pub fn head(&self, s: SemiArc) -> Option<(usize, usize)> {
        self.head[s]
    }

    pub fn specified_region(&self, s: SemiArc) -> RegionId {
        self.specified[s]
    }

    pub fn opposite_region(&self, s: SemiArc) -> RegionId {
        self.opposite[s]
    }

    pub fn corner_region(&self, crossing: usize, corner: usize) -> RegionId {
        self.corner_region[4 * crossing + corner]
    }

    /// The region specified for both the under and over semi-arc facing it.
    pub fn crossing_region(&self, c: usize) -> RegionId {
        self.corner_region[4 * c + self.crossings[c].specified_corner()]
    }

    pub fn unbounded(&self) -> RegionId {
        self.unbounded
    }
}

/// Specified region of the semi-arc with external id `label`.
pub fn specified_region(d: &LinkDiagram, label: u64) -> Result<RegionId> {
    d.index_of(label)
        .map(|s| d.specified_region(s))
        .ok_or_else(|| Error::Diagram(format!("no semi-arc with id {label}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(text: &str) -> LinkDiagram {
        parse_diagram(text).unwrap()
    }

    #[test]
    fn zero_crossing_unknot() {
        let d = diagram(r#"{"components":[1]}"#);
        assert_eq!((d.n_arcs(), d.n_semiarcs(), d.n_regions()), (1, 1, 2));
        // Counterclockwise circle: the specified side is outside.
        assert_eq!(d.specified_region(0), d.unbounded());
        assert_ne!(d.opposite_region(0), d.unbounded());
    }

    #[test]
    fn trefoil_counts() {
        let d = fixtures::fixture("trefoil_right").unwrap();
        assert_eq!((d.n_crossings(), d.n_semiarcs(), d.n_arcs(), d.n_regions()), (3, 6, 3, 5));
    }

    #[test]
    fn hopf_counts() {
        let d = fixtures::fixture("hopf_pos").unwrap();
        assert_eq!((d.n_semiarcs(), d.n_arcs(), d.n_regions()), (4, 2, 4));
    }

    #[test]
    fn corners_partition() {
        for name in fixtures::DIAGRAMS {
            let d = fixtures::fixture(name).unwrap();
            let total: usize = d.regions().iter().map(|r| r.corners.len()).sum();
            assert_eq!(total, 4 * d.n_crossings(), "{name}");
            if d.n_crossings() > 0 {
                let v = d.n_crossings() as i64;
                assert_eq!(v - 2 * v + (d.n_regions() - d.free_components().len()) as i64, 2);
            }
        }
    }

    #[test]
    fn trefoil_outer_boundary() {
        let d = fixtures::fixture("trefoil_right").unwrap();
        let outer = &d.regions()[d.unbounded()];
        // Every semi-arc bounding the outer face of the closed braid has it on one side.
        assert!(!outer.boundary.is_empty());
        for &(s, side) in &outer.boundary {
            let r = match side {
                Side::Specified => d.specified_region(s),
                Side::Opposite => d.opposite_region(s),
            };
            assert_eq!(r, d.unbounded());
        }
        assert!(outer.boundary.iter().any(|&(_, side)| side == Side::Specified));
    }

    #[test]
    fn kink_loop_bounds_a_monogon() {
        for name in ["unknot_kink_pos", "unknot_kink_neg"] {
            let d = fixtures::fixture(name).unwrap();
            assert_eq!((d.n_semiarcs(), d.n_arcs(), d.n_regions()), (2, 1, 3));
            // The curl's two sides are distinct, and the outer region touches both semi-arcs.
            let outer = &d.regions()[d.unbounded()];
            assert_eq!(outer.corners.len(), 2);
        }
    }

    #[test]
    fn nugatory_crossing_has_same_region_on_both_sides() {
        // figure-eight curve: the outside touches the crossing twice
        let d = fixtures::fixture("unknot_kink_pos").unwrap();
        let c = &d.crossings()[0];
        let r_left = d.corner_region(0, 1);
        let r_right = d.corner_region(0, 3);
        assert_eq!(r_left, r_right);
        assert_eq!(c.sign, Sign::Positive);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            r#"{"crossings":[{"sign":2,"slots":[1,1,2,2]}]}"#,
            r#"{"crossings":[{"sign":1,"slots":[1,1,2,3]}]}"#,
            r#"{"crossings":[{"sign":1,"slots":[2,2,1,1]}],"components":[1]}"#,
            // Both semi-arcs leave and enter wrongly for a negative crossing.
            r#"{"crossings":[{"sign":-1,"slots":[2,2,1,1]}]}"#,
            r#"{"crossings":[{"sign":1,"slots":[2,2,1,1]}],"unbounded":{"crossing":3,"slot":0}}"#,
        ];
        for text in cases {
            assert!(matches!(parse_diagram(text), Err(Error::Diagram(_))), "{text}");
        }
    }

    #[test]
    fn non_planar_code_is_rejected() {
        // Two crossings glued so that faces do not satisfy Euler's formula.
        let text = r#"{"crossings":[{"sign":1,"slots":[1,2,3,4]},{"sign":1,"slots":[3,2,1,4]}]}"#;
        assert!(parse_diagram(text).is_err());
    }

    #[test]
    fn json_round_trip() {
        for name in fixtures::DIAGRAMS {
            let d = fixtures::fixture(name).unwrap();
            let back = LinkDiagram::from_json(&d.to_json()).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn specified_region_by_label() {
        let d = fixtures::fixture("unknot0").unwrap();
        assert_eq!(specified_region(&d, 1).unwrap(), d.unbounded());
        assert!(specified_region(&d, 99).is_err());
    }
}
