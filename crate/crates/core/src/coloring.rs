//! Colorings of diagrams, and region colorings by associated-group elements.
//!
//! Group elements never appear as words here. A region carries an action
//! state: for colorings by the derived quandle it is the map `a ↦ ψ(p, a)`,
//! for biquandle colorings it is the right ⋄-action permutation of `g`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::algebra::{derived_quandle, Elem, FiniteBiquandle, FiniteQuandle};
use crate::diagram::{LinkDiagram, RegionId, Roles};
use crate::{Error, Result};

/// Colors indexed by internal semi-arc.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BiquandleColoring(pub Vec<Elem>);

/// Colors indexed by arc.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuandleColoring(pub Vec<Elem>);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Quandle,
    Biquandle,
}

/// Largest product space the brute-force oracle will walk.
pub const ORACLE_LIMIT: u128 = 10_000_000;

pub fn biquandle_equations_hold(x: &FiniteBiquandle, d: &LinkDiagram, c: &[Elem]) -> bool {
    d.crossings().iter().all(|cr| {
        let Roles { i, j, k, l } = cr.roles();
        x.under(c[i], c[j]) == c[k] && x.over(c[j], c[i]) == c[l]
    })
}

pub fn quandle_equations_hold(q: &FiniteQuandle, d: &LinkDiagram, c: &[Elem]) -> bool {
    d.crossings().iter().all(|cr| {
        let Roles { i, j, k, .. } = cr.roles();
        q.op(c[d.arc_of(i)], c[d.arc_of(j)]) == c[d.arc_of(k)]
    })
}

// Partial assignment with forced-value propagation. Returns false on conflict.
fn assign(vals: &mut [Option<Elem>], s: usize, v: Elem) -> bool {
    match vals[s] {
        Some(w) => w == v,
        None => {
            vals[s] = Some(v);
            true
        }
    }
}

fn propagate_biquandle(x: &FiniteBiquandle, d: &LinkDiagram, vals: &mut [Option<Elem>]) -> bool {
    loop {
        let mut changed = false;
        for cr in d.crossings() {
            let Roles { i, j, k, l } = cr.roles();
            let before = [vals[i], vals[j], vals[k], vals[l]];
            let ok = match before {
                [Some(a), Some(b), _, _] => assign(vals, k, x.under(a, b)) && assign(vals, l, x.over(b, a)),
                [_, Some(b), Some(c), _] => {
                    let a = x.under_inv(c, b);
                    assign(vals, i, a) && assign(vals, l, x.over(b, a))
                }
                [Some(a), _, _, Some(e)] => {
                    let b = x.over_inv(e, a);
                    assign(vals, j, b) && assign(vals, k, x.under(a, b))
                }
                [_, _, Some(c), Some(e)] => {
                    let (a, b) = x.pair_inv(e, c);
                    assign(vals, i, a) && assign(vals, j, b)
                }
                _ => true,
            };
            if !ok {
                return false;
            }
            if [vals[i], vals[j], vals[k], vals[l]] != before {
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn propagate_quandle(q: &FiniteQuandle, d: &LinkDiagram, vals: &mut [Option<Elem>]) -> bool {
    loop {
        let mut changed = false;
        for cr in d.crossings() {
            let Roles { i, j, k, .. } = cr.roles();
            let (i, j, k) = (d.arc_of(i), d.arc_of(j), d.arc_of(k));
            let before = [vals[i], vals[j], vals[k]];
            let ok = match before {
                [Some(a), Some(b), _] => assign(vals, k, q.op(a, b)),
                [_, Some(b), Some(c)] => assign(vals, i, q.inv_op(c, b)),
                _ => true,
            };
            if !ok {
                return false;
            }
            if [vals[i], vals[j], vals[k]] != before {
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn backtrack(
    n: usize,
    vals: &mut [Option<Elem>],
    propagate: &dyn Fn(&mut [Option<Elem>]) -> bool,
    out: &mut Vec<Vec<Elem>>,
) {
    let Some(next) = vals.iter().position(Option::is_none) else {
        out.push(vals.iter().map(|v| v.unwrap()).collect());
        return;
    };
    for v in 0..n {
        let mut trial = vals.to_vec();
        trial[next] = Some(v);
        if propagate(&mut trial) {
            backtrack(n, &mut trial, propagate, out);
        }
    }
}

pub fn enumerate_biquandle_colorings(x: &FiniteBiquandle, d: &LinkDiagram) -> Vec<BiquandleColoring> {
    let mut out = Vec::new();
    let mut vals = vec![None; d.n_semiarcs()];
    backtrack(x.order(), &mut vals, &|v| propagate_biquandle(x, d, v), &mut out);
    let mut out: Vec<_> = out.into_iter().filter(|c| biquandle_equations_hold(x, d, c)).map(BiquandleColoring).collect();
    out.sort();
    out
}

pub fn enumerate_quandle_colorings(q: &FiniteQuandle, d: &LinkDiagram) -> Vec<QuandleColoring> {
    let mut out = Vec::new();
    let mut vals = vec![None; d.n_arcs()];
    backtrack(q.order(), &mut vals, &|v| propagate_quandle(q, d, v), &mut out);
    let mut out: Vec<_> = out.into_iter().filter(|c| quandle_equations_hold(q, d, c)).map(QuandleColoring).collect();
    out.sort();
    out
}

fn product_space(n: usize, cells: usize) -> Result<()> {
    let size = (n as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if size > ORACLE_LIMIT {
        return Err(Error::Guard(format!("{n}^{cells} assignments exceeds the oracle limit of {ORACLE_LIMIT}")));
    }
    Ok(())
}

fn each_assignment(n: usize, cells: usize, mut f: impl FnMut(&[Elem])) {
    if n == 0 && cells > 0 {
        return;
    }
    let mut c = vec![0; cells];
    loop {
        f(&c);
        let mut pos = cells;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            c[pos] += 1;
            if c[pos] < n {
                break;
            }
            c[pos] = 0;
        }
    }
}

/// Raw product enumeration with no propagation.
pub fn oracle_biquandle_colorings(x: &FiniteBiquandle, d: &LinkDiagram) -> Result<Vec<BiquandleColoring>> {
    product_space(x.order(), d.n_semiarcs())?;
    let mut out = Vec::new();
    each_assignment(x.order(), d.n_semiarcs(), |c| {
        if biquandle_equations_hold(x, d, c) {
            out.push(BiquandleColoring(c.to_vec()));
        }
    });
    Ok(out)
}

pub fn oracle_quandle_colorings(q: &FiniteQuandle, d: &LinkDiagram) -> Result<Vec<QuandleColoring>> {
    product_space(q.order(), d.n_arcs())?;
    let mut out = Vec::new();
    each_assignment(q.order(), d.n_arcs(), |c| {
        if quandle_equations_hold(q, d, c) {
            out.push(QuandleColoring(c.to_vec()));
        }
    });
    Ok(out)
}

/// A letter of an associated-group word: generator and exponent ±1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub gen: Elem,
    pub exp: i8,
}

impl Letter {
    pub fn pos(gen: Elem) -> Self {
        Letter { gen, exp: 1 }
    }
    pub fn neg(gen: Elem) -> Self {
        Letter { gen, exp: -1 }
    }
    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

pub type GroupWord = Vec<Letter>;

/// Something that can stand in for an associated-group element.
pub trait ActionState: Clone + Eq + std::fmt::Debug {
    fn identity(x: &FiniteBiquandle) -> Self;
    fn step(&self, x: &FiniteBiquandle, gen: Elem, exp: i8) -> Self;

    fn fold(x: &FiniteBiquandle, word: &[Letter]) -> Self {
        word.iter().fold(Self::identity(x), |s, l| s.step(x, l.gen, l.exp))
    }
}

/// `a ↦ ψ(p, a)` for `p` in the associated group of the derived quandle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PsiState(pub Vec<Elem>);

impl PsiState {
    pub fn eval(&self, a: Elem) -> Elem {
        self.0[a]
    }
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl ActionState for PsiState {
    fn identity(x: &FiniteBiquandle) -> Self {
        PsiState((0..x.order()).collect())
    }

    fn step(&self, x: &FiniteBiquandle, b: Elem, exp: i8) -> Self {
        let fb = self.0[b];
        PsiState(if exp > 0 {
            self.0.iter().map(|&fa| x.over(fa, fb)).collect()
        } else {
            let kb = x.kink(fb);
            self.0.iter().map(|&fa| x.over_inv(fa, kb)).collect()
        })
    }
}

pub fn psi_state_step(f: &PsiState, b: Elem, exp: i8, x: &FiniteBiquandle) -> PsiState {
    f.step(x, b, exp)
}

/// Right ⋄-action `x ↦ x ⋄ g` of `g` in the associated group of the biquandle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiamondState(pub Vec<Elem>);

impl DiamondState {
    pub fn act(&self, x: Elem) -> Elem {
        self.0[x]
    }

    /// `x ⋄ g⁻¹`.
    pub fn act_inverse(&self, x: Elem) -> Elem {
        self.0.iter().position(|&v| v == x).expect("diamond state is a permutation")
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl ActionState for DiamondState {
    fn identity(x: &FiniteBiquandle) -> Self {
        DiamondState((0..x.order()).collect())
    }

    fn step(&self, x: &FiniteBiquandle, y: Elem, exp: i8) -> Self {
        DiamondState(if exp > 0 {
            self.0.iter().map(|&v| x.over(v, y)).collect()
        } else {
            self.0.iter().map(|&v| x.over_inv(v, y)).collect()
        })
    }
}

/// Region colorings: `state[unbounded] = identity` and crossing a semi-arc
/// from its specified side multiplies by its color.
pub fn region_coloring<S: ActionState>(
    x: &FiniteBiquandle,
    d: &LinkDiagram,
    semiarc_color: impl Fn(usize) -> Elem,
) -> Result<Vec<S>> {
    let nr = d.n_regions();
    let mut adj: Vec<Vec<(RegionId, Elem, i8)>> = vec![Vec::new(); nr];
    for s in 0..d.n_semiarcs() {
        let (a, b, c) = (d.specified_region(s), d.opposite_region(s), semiarc_color(s));
        adj[a].push((b, c, 1));
        adj[b].push((a, c, -1));
    }
    let mut states: Vec<Option<S>> = vec![None; nr];
    states[d.unbounded()] = Some(S::identity(x));
    let mut queue = VecDeque::from([d.unbounded()]);
    while let Some(r) = queue.pop_front() {
        let here = states[r].clone().unwrap();
        for &(to, c, e) in &adj[r] {
            if states[to].is_none() {
                states[to] = Some(here.step(x, c, e));
                queue.push_back(to);
            }
        }
    }
    let states: Vec<S> = states
        .into_iter()
        .enumerate()
        .map(|(r, s)| s.ok_or_else(|| Error::Coloring(format!("region {r} unreachable from the unbounded region"))))
        .collect::<Result<_>>()?;
    for s in 0..d.n_semiarcs() {
        let (a, b) = (d.specified_region(s), d.opposite_region(s));
        if states[a].step(x, semiarc_color(s), 1) != states[b] {
            return Err(Error::Coloring(format!(
                "region coloring inconsistent across semi-arc {} (regions {a} -> {b})",
                d.label(s)
            )));
        }
    }
    Ok(states)
}

/// Quandle mode: regions colored by ψ-states, stepping by arc colors in `Q(X)`.
pub fn psi_region_coloring(x: &FiniteBiquandle, d: &LinkDiagram, c: &QuandleColoring) -> Result<Vec<PsiState>> {
    region_coloring(x, d, |s| c.0[d.arc_of(s)])
}

/// Biquandle mode: regions colored by ⋄-states, stepping by semi-arc colors.
pub fn diamond_region_coloring(
    x: &FiniteBiquandle,
    d: &LinkDiagram,
    c: &BiquandleColoring,
) -> Result<Vec<DiamondState>> {
    region_coloring(x, d, |s| c.0[s])
}

/// Each semi-arc paired with its specified region's state and its own color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowColoring<S> {
    pub regions: Vec<S>,
    pub semiarcs: Vec<(RegionId, Elem)>,
}

impl<S: ActionState> ShadowColoring<S> {
    pub fn state(&self, s: usize) -> &S {
        &self.regions[self.semiarcs[s].0]
    }
    pub fn color(&self, s: usize) -> Elem {
        self.semiarcs[s].1
    }
}

pub fn shadow_coloring_quandle(
    x: &FiniteBiquandle,
    d: &LinkDiagram,
    c: &QuandleColoring,
) -> Result<ShadowColoring<PsiState>> {
    let regions = psi_region_coloring(x, d, c)?;
    let semiarcs = (0..d.n_semiarcs()).map(|s| (d.specified_region(s), c.0[d.arc_of(s)])).collect();
    Ok(ShadowColoring { regions, semiarcs })
}

pub fn shadow_coloring_biquandle(
    x: &FiniteBiquandle,
    d: &LinkDiagram,
    c: &BiquandleColoring,
) -> Result<ShadowColoring<DiamondState>> {
    let regions = diamond_region_coloring(x, d, c)?;
    let semiarcs = (0..d.n_semiarcs()).map(|s| (d.specified_region(s), c.0[s])).collect();
    Ok(ShadowColoring { regions, semiarcs })
}

/// Counts in both modes, for convenience.
pub fn coloring_counts(x: &FiniteBiquandle, d: &LinkDiagram) -> (usize, usize) {
    let q = derived_quandle(x);
    (enumerate_biquandle_colorings(x, d).len(), enumerate_quandle_colorings(&q, d).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{census, dihedral, quandle_as_biquandle, shift};
    use crate::diagram::fixtures::{fixture, matrix};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn d3() -> FiniteBiquandle {
        quandle_as_biquandle(&dihedral(3))
    }

    #[test]
    fn spot_counts() {
        let x = d3();
        let q = dihedral(3);
        for (name, n) in [("trefoil_right", 9), ("figure8", 3), ("hopf_pos", 3), ("unknot0", 3)] {
            let d = fixture(name).unwrap();
            assert_eq!(enumerate_quandle_colorings(&q, &d).len(), n, "{name}");
            assert_eq!(enumerate_biquandle_colorings(&x, &d).len(), n, "{name}");
        }
        let k = fixture("unknot_kink_pos").unwrap();
        assert_eq!(enumerate_biquandle_colorings(&shift(2), &k).len(), 2);
    }

    #[test]
    fn backtracking_matches_oracle() {
        let algebras: Vec<_> = census(3).into_iter().chain([d3(), shift(3)]).collect();
        for (name, d) in matrix() {
            for x in &algebras {
                let q = derived_quandle(x);
                assert_eq!(enumerate_biquandle_colorings(x, &d), oracle_biquandle_colorings(x, &d).unwrap(), "{name}");
                assert_eq!(enumerate_quandle_colorings(&q, &d), oracle_quandle_colorings(&q, &d).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn oracle_guard() {
        let x = shift(40);
        let d = fixture("figure8").unwrap();
        assert!(matches!(oracle_biquandle_colorings(&x, &d), Err(Error::Guard(_))));
    }

    #[test]
    fn psi_identity_step() {
        let x = shift(5);
        let f = PsiState::identity(&x).step(&x, 2, 1);
        for a in 0..5 {
            assert_eq!(f.eval(a), x.over(a, 2));
        }
        let y = d3();
        let mut f = PsiState::identity(&y);
        for b in [0, 1, 2, 1] {
            f = f.step(&y, b, 1).step(&y, b, -1).step(&y, b, -1);
            assert!(f.is_identity());
        }
    }

    #[test]
    fn unknot_regions() {
        let x = shift(4);
        let d = fixture("unknot0").unwrap();
        let c = QuandleColoring(vec![2]);
        let states = psi_region_coloring(&x, &d, &c).unwrap();
        assert!(states[d.unbounded()].is_identity());
        let inner = d.opposite_region(0);
        assert_eq!(states[inner], PsiState::identity(&x).step(&x, 2, 1));
        let sh = shadow_coloring_quandle(&x, &d, &c).unwrap();
        assert!(sh.state(0).is_identity());
        assert_eq!(sh.color(0), 2);
    }

    #[test]
    fn trefoil_monochrome_regions_are_generator_powers() {
        let x = shift(3);
        let d = fixture("trefoil_right").unwrap();
        let c = QuandleColoring(vec![0; 3]);
        let states = psi_region_coloring(&x, &d, &c).unwrap();
        let powers: Vec<PsiState> = (-3i32..=3)
            .map(|k| {
                let l = if k >= 0 { Letter::pos(0) } else { Letter::neg(0) };
                PsiState::fold(&x, &vec![l; k.unsigned_abs() as usize])
            })
            .collect();
        assert!(states.iter().all(|s| powers.contains(s)));
    }

    #[test]
    fn region_colorings_consistent_everywhere() {
        for (name, d) in matrix() {
            for x in census(3) {
                let q = derived_quandle(&x);
                for c in enumerate_quandle_colorings(&q, &d) {
                    psi_region_coloring(&x, &d, &c).unwrap_or_else(|e| panic!("{name}: {e}"));
                }
                for c in enumerate_biquandle_colorings(&x, &d) {
                    let sh = shadow_coloring_biquandle(&x, &d, &c).unwrap_or_else(|e| panic!("{name}: {e}"));
                    assert_eq!(sh.color(0), c.0[0]);
                }
            }
        }
    }

    #[test]
    fn counts_do_not_depend_on_outer_region() {
        let algebras: Vec<_> = census(3).into_iter().take(8).chain([d3()]).collect();
        for (_, d) in matrix() {
            for x in &algebras {
                let base = coloring_counts(x, &d);
                for r in 0..d.n_regions() {
                    let e = d.with_unbounded(r);
                    assert_eq!(coloring_counts(x, &e), base);
                    let q = derived_quandle(x);
                    for c in enumerate_quandle_colorings(&q, &e) {
                        psi_region_coloring(x, &e, &c).unwrap();
                    }
                }
            }
        }
    }

    fn relator(a: Elem, b: Elem, q: &FiniteQuandle) -> (GroupWord, GroupWord) {
        (vec![Letter::pos(b), Letter::pos(q.op(a, b))], vec![Letter::pos(a), Letter::pos(b)])
    }

    #[test]
    fn psi_states_respect_relators() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for x in census(3) {
            let q = derived_quandle(&x);
            let n = x.order();
            for _ in 0..200 {
                let len = rng.gen_range(0..6);
                let w: GroupWord = (0..len)
                    .map(|_| Letter { gen: rng.gen_range(0..n), exp: if rng.gen() { 1 } else { -1 } })
                    .collect();
                let (lhs, rhs) = relator(rng.gen_range(0..n), rng.gen_range(0..n), &q);
                let at = rng.gen_range(0..=w.len());
                let mut w1 = w.clone();
                let mut w2 = w.clone();
                w1.splice(at..at, lhs);
                w2.splice(at..at, rhs);
                assert_eq!(PsiState::fold(&x, &w1), PsiState::fold(&x, &w2));
            }
        }
    }

    proptest! {
        #[test]
        fn eq_us_on_random_states(idx in 0usize..100, word in proptest::collection::vec((0usize..3, any::<bool>()), 0..6)) {
            let all = census(3);
            let x = &all[idx % all.len()];
            let q = derived_quandle(x);
            let w: GroupWord = word.iter().map(|&(g, p)| Letter { gen: g, exp: if p { 1 } else { -1 } }).collect();
            let f = PsiState::fold(x, &w);
            for a in 0..3 {
                for b in 0..3 {
                    prop_assert_eq!(x.under(f.eval(a), f.eval(b)), f.step(x, b, 1).eval(q.op(a, b)));
                }
            }
        }

        #[test]
        fn relabeling_preserves_counts(seed in any::<u64>(), which in 0usize..8) {
            let (_, d) = matrix().swap_remove(which);
            let mut json = d.to_json();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<u64> = (1..=d.n_semiarcs() as u64 * 3).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
            let relabel = |id: u64| perm[d.index_of(id).unwrap()] ;
            for c in &mut json.crossings {
                c.slots = c.slots.map(relabel);
            }
            json.components = json.components.iter().map(|&s| relabel(s)).collect();
            let e = LinkDiagram::from_json(&json).unwrap();
            prop_assert_eq!(e.n_arcs(), d.n_arcs());
            prop_assert_eq!(e.n_regions(), d.n_regions());
            let mut sizes_d: Vec<usize> = d.arcs().iter().map(Vec::len).collect();
            let mut sizes_e: Vec<usize> = e.arcs().iter().map(Vec::len).collect();
            sizes_d.sort();
            sizes_e.sort();
            prop_assert_eq!(sizes_d, sizes_e);
            let x = d3();
            prop_assert_eq!(coloring_counts(&x, &e), coloring_counts(&x, &d));
        }
    }
}
