//! Biquandle cocycles, their pullbacks to shadow quandle cocycles, and the
//! two state-sum invariants.

mod enumerate;
mod group;

pub use enumerate::{is_prime, CocycleSpace};
pub use group::{FiniteAbelianGroup, GroupRingElement};

use std::collections::{HashSet, VecDeque};

use crate::algebra::{derived_quandle, Axiom, AxiomReport, Elem, FiniteBiquandle, Witnesses};
use crate::coloring::{
    enumerate_biquandle_colorings, enumerate_quandle_colorings, psi_region_coloring, ActionState, BiquandleColoring,
    PsiState, QuandleColoring,
};
use crate::diagram::{LinkDiagram, Roles};
use crate::{Error, Result};

/// Dense map `X^arity → A`, not yet known to be a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    pub arity: usize,
    pub n: usize,
    pub group: FiniteAbelianGroup,
    /// Encoded group elements, tuples in lexicographic order.
    pub values: Vec<u64>,
}

impl CocycleTable {
    pub fn new(arity: usize, n: usize, group: FiniteAbelianGroup, values: Vec<u64>) -> Result<Self> {
        if !(2..=3).contains(&arity) {
            return Err(Error::Cocycle(format!("arity {arity} unsupported (use 2 or 3)")));
        }
        if values.len() != n.pow(arity as u32) {
            return Err(Error::Cocycle(format!("expected {} values, got {}", n.pow(arity as u32), values.len())));
        }
        if let Some(v) = values.iter().find(|&&v| v >= group.size()) {
            return Err(Error::Cocycle(format!("value code {v} out of range for the group")));
        }
        Ok(CocycleTable { arity, n, group, values })
    }

    pub fn zero(arity: usize, n: usize, group: FiniteAbelianGroup) -> Self {
        Self::new(arity, n, group, vec![0; n.pow(arity as u32)]).expect("zero table")
    }

    pub fn index(&self, t: &[Elem]) -> usize {
        t.iter().fold(0, |acc, &e| acc * self.n + e)
    }

    pub fn get(&self, t: &[Elem]) -> u64 {
        self.values[self.index(t)]
    }

    pub fn set(&mut self, t: &[Elem], v: u64) {
        let i = self.index(t);
        self.values[i] = v % self.group.size();
    }
}

fn each_tuple(n: usize, len: usize, mut f: impl FnMut(&[Elem])) {
    let mut t = vec![0; len];
    if n == 0 {
        return;
    }
    loop {
        f(&t);
        let mut p = len;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            t[p] += 1;
            if t[p] < n {
                break;
            }
            t[p] = 0;
        }
    }
}

// θ(x without i) − θ(x_1 ⊼ x_i, …, x_{i−1} ⊼ x_i, x_{i+1} ⊻ x_i, …), alternating in i.
fn biquandle_boundary(table: &CocycleTable, x: &FiniteBiquandle, t: &[Elem]) -> u64 {
    let g = &table.group;
    let mut total = 0;
    for i in 0..t.len() {
        let face: Vec<Elem> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &e)| e).collect();
        let moved: Vec<Elem> = t
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(k, &e)| if k < i { x.under(e, t[i]) } else { x.over(e, t[i]) })
            .collect();
        let term = g.sub(table.get(&face), table.get(&moved));
        total = if i % 2 == 0 { g.add(total, term) } else { g.sub(total, term) };
    }
    total
}

pub fn check_biquandle_cocycle(table: &CocycleTable, x: &FiniteBiquandle) -> Result<AxiomReport> {
    if table.n != x.order() {
        return Err(Error::Cocycle(format!("table over {} elements, algebra has {}", table.n, x.order())));
    }
    let mut w = Witnesses::default();
    each_tuple(x.order(), table.arity, |t| {
        for j in 0..t.len() - 1 {
            if t[j] == t[j + 1] && table.get(t) != 0 {
                w.record(Axiom::Degeneracy, &format!("equal entries at {j},{}", j + 1), t);
            }
        }
    });
    each_tuple(x.order(), table.arity + 1, |t| {
        if biquandle_boundary(table, x, t) != 0 {
            w.record(Axiom::Cocycle, "alternating sum", t);
        }
    });
    Ok(AxiomReport::exhaustive(w.into_vec()))
}

/// A table that passed the cocycle and degeneracy conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquandleCocycle {
    table: CocycleTable,
}

impl BiquandleCocycle {
    pub fn new(table: CocycleTable, x: &FiniteBiquandle) -> Result<Self> {
        let report = check_biquandle_cocycle(&table, x)?;
        if !report.passed {
            return Err(Error::Cocycle(format!("not a biquandle cocycle: {report}")));
        }
        Ok(BiquandleCocycle { table })
    }

    pub fn table(&self) -> &CocycleTable {
        &self.table
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.table.group
    }

    pub fn get(&self, t: &[Elem]) -> u64 {
        self.table.get(t)
    }
}

/// `(δη)(x₁, x₂) = η(x₂) − η(x₂ ⊻ x₁) − η(x₁) + η(x₁ ⊼ x₂)`.
pub fn coboundary(eta: &[u64], x: &FiniteBiquandle, group: &FiniteAbelianGroup) -> Result<BiquandleCocycle> {
    let n = x.order();
    if eta.len() != n {
        return Err(Error::Cocycle(format!("eta has {} values, algebra has {n} elements", eta.len())));
    }
    let g = group;
    let mut t = CocycleTable::zero(2, n, g.clone());
    for a in 0..n {
        for b in 0..n {
            let v = g.add(g.sub(g.sub(eta[b], eta[x.over(b, a)]), eta[a]), eta[x.under(a, b)]);
            t.set(&[a, b], v);
        }
    }
    BiquandleCocycle::new(t, x)
}

/// Signed weight sum of one biquandle coloring.
pub fn biquandle_weight(theta: &BiquandleCocycle, d: &LinkDiagram, c: &BiquandleColoring) -> u64 {
    let g = theta.group();
    d.crossings().iter().fold(0, |acc, cr| {
        let Roles { i, j, .. } = cr.roles();
        g.add(acc, g.signed(cr.sign.as_i64(), theta.get(&[c.0[i], c.0[j]])))
    })
}

fn require_arity_two(theta: &CocycleTable) -> Result<()> {
    if theta.arity != 2 {
        return Err(Error::Cocycle("state sums over link diagrams need a 2-cocycle".into()));
    }
    Ok(())
}

pub fn biquandle_cocycle_invariant(
    x: &FiniteBiquandle,
    theta: &BiquandleCocycle,
    d: &LinkDiagram,
) -> Result<GroupRingElement> {
    require_arity_two(theta.table())?;
    let mut out = GroupRingElement::new(theta.group().clone());
    for c in enumerate_biquandle_colorings(x, d) {
        out.add_term(biquandle_weight(theta, d, &c), 1);
    }
    Ok(out)
}

/// `(ψ*θ)(p, a₁, …, aₙ) = θ(ψ(p, a₁), …, ψ(p, aₙ))`.
#[derive(Clone, Debug)]
pub struct ShadowCocycleEvaluator {
    pub table: CocycleTable,
}

impl ShadowCocycleEvaluator {
    pub fn new(table: CocycleTable) -> Self {
        ShadowCocycleEvaluator { table }
    }

    pub fn from_cocycle(theta: &BiquandleCocycle) -> Self {
        Self::new(theta.table().clone())
    }

    pub fn eval(&self, p: &PsiState, a: &[Elem]) -> u64 {
        let img: Vec<Elem> = a.iter().map(|&e| p.eval(e)).collect();
        self.table.get(&img)
    }
}

/// Signed weight sum of one derived-quandle coloring under `ψ*θ`, taking at each
/// crossing the state of the region both incoming-side semi-arcs face.
pub fn shadow_weight(
    x: &FiniteBiquandle,
    ev: &ShadowCocycleEvaluator,
    d: &LinkDiagram,
    c: &QuandleColoring,
) -> Result<u64> {
    let states = psi_region_coloring(x, d, c)?;
    let g = &ev.table.group;
    Ok(d.crossings().iter().enumerate().fold(0, |acc, (k, cr)| {
        let Roles { i, j, .. } = cr.roles();
        let p = &states[d.crossing_region(k)];
        let w = ev.eval(p, &[c.0[d.arc_of(i)], c.0[d.arc_of(j)]]);
        g.add(acc, g.signed(cr.sign.as_i64(), w))
    }))
}

pub fn shadow_cocycle_invariant(
    x: &FiniteBiquandle,
    theta: &BiquandleCocycle,
    d: &LinkDiagram,
) -> Result<GroupRingElement> {
    require_arity_two(theta.table())?;
    let ev = ShadowCocycleEvaluator::from_cocycle(theta);
    let q = derived_quandle(x);
    let mut out = GroupRingElement::new(theta.group().clone());
    for c in enumerate_quandle_colorings(&q, d) {
        out.add_term(shadow_weight(x, &ev, d, &c)?, 1);
    }
    Ok(out)
}

/// ψ-states reachable by words of length at most `bound`.
pub fn reachable_psi_states(x: &FiniteBiquandle, bound: usize) -> Vec<PsiState> {
    let start = PsiState::identity(x);
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((s, depth)) = queue.pop_front() {
        if depth == bound {
            continue;
        }
        for b in 0..x.order() {
            for e in [1, -1] {
                let t = s.step(x, b, e);
                if seen.insert(t.clone()) {
                    order.push(t.clone());
                    queue.push_back((t, depth + 1));
                }
            }
        }
    }
    order
}

/// The shadow cocycle condition for `ψ*θ`, over every reachable state up to
/// `bound` and every tuple of derived-quandle elements.
pub fn check_shadow_cocycle_sampled(ev: &ShadowCocycleEvaluator, x: &FiniteBiquandle, bound: usize) -> AxiomReport {
    let q = derived_quandle(x);
    let g = &ev.table.group;
    let n = x.order();
    let arity = ev.table.arity;
    let mut w = Witnesses::default();
    for (si, p) in reachable_psi_states(x, bound).iter().enumerate() {
        let tag = |t: &[Elem]| std::iter::once(si as i64).chain(t.iter().map(|&e| e as i64)).collect::<Vec<_>>();
        each_tuple(n, arity, |t| {
            for j in 0..arity - 1 {
                if t[j] == t[j + 1] && ev.eval(p, t) != 0 {
                    w.record_raw(Axiom::ShadowDegeneracy, &format!("equal entries at {j},{}", j + 1), tag(t));
                }
            }
        });
        each_tuple(n, arity + 1, |t| {
            let mut total = 0;
            for i in 0..t.len() {
                let face: Vec<Elem> = t.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &e)| e).collect();
                let moved: Vec<Elem> = t
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(k, &e)| if k < i { q.op(e, t[i]) } else { e })
                    .collect();
                let term = g.sub(ev.eval(p, &face), ev.eval(&p.step(x, t[i], 1), &moved));
                total = if i % 2 == 0 { g.add(total, term) } else { g.sub(total, term) };
            }
            if total != 0 {
                w.record_raw(Axiom::ShadowCocycle, "alternating sum", tag(t));
            }
        });
    }
    AxiomReport::exhaustive(w.into_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{census, dihedral, quandle_as_biquandle, shift};
    use crate::correspondence::psi;
    use crate::diagram::fixtures::{fixture, matrix};
    use crate::coloring::oracle_biquandle_colorings;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn d3() -> FiniteBiquandle {
        quandle_as_biquandle(&dihedral(3))
    }

    #[test]
    fn zero_is_a_cocycle() {
        let x = d3();
        for arity in [2, 3] {
            let t = CocycleTable::zero(arity, 3, FiniteAbelianGroup::cyclic(2));
            assert!(check_biquandle_cocycle(&t, &x).unwrap().passed);
        }
        let z = BiquandleCocycle::new(CocycleTable::zero(2, 3, FiniteAbelianGroup::cyclic(3)), &x).unwrap();
        let d = fixture("trefoil_right").unwrap();
        assert!(biquandle_cocycle_invariant(&x, &z, &d).unwrap().is_trivial_with(9));
        assert!(shadow_cocycle_invariant(&x, &z, &d).unwrap().is_trivial_with(9));
    }

    #[test]
    fn coboundaries_on_quandle_embedding() {
        let x = d3();
        let g = FiniteAbelianGroup::cyclic(3);
        let eta = [1, 0, 2];
        let t = coboundary(&eta, &x, &g).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.get(&[a, b]), g.sub(eta[x.under(a, b)], eta[a]));
            }
        }
        assert!(coboundary(&[0, 0, 0], &x, &g).unwrap().table().values.iter().all(|&v| v == 0));
    }

    #[test]
    fn perturbation_is_caught() {
        let x = d3();
        let g = FiniteAbelianGroup::cyclic(3);
        let mut t = coboundary(&[1, 0, 2], &x, &g).unwrap().table().clone();
        let v = t.get(&[0, 1]);
        t.set(&[0, 1], g.add(v, 1));
        let r = check_biquandle_cocycle(&t, &x).unwrap();
        assert!(r.violates(Axiom::Cocycle));
        assert!(!r.violates(Axiom::Degeneracy));
        t.set(&[2, 2], 1);
        assert!(check_biquandle_cocycle(&t, &x).unwrap().first(Axiom::Degeneracy).unwrap().witness == vec![2, 2]);
        assert!(BiquandleCocycle::new(t.clone(), &x).is_err());
        let ev = ShadowCocycleEvaluator::new(t);
        assert!(!check_shadow_cocycle_sampled(&ev, &x, 1).passed);
    }

    #[test]
    fn coboundaries_give_trivial_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = FiniteAbelianGroup::cyclic(3);
        for x in census(3).into_iter().chain([d3(), shift(3)]) {
            let eta: Vec<u64> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let theta = coboundary(&eta, &x, &g).unwrap();
            for (name, d) in matrix() {
                let n = enumerate_biquandle_colorings(&x, &d).len() as u64;
                assert!(biquandle_cocycle_invariant(&x, &theta, &d).unwrap().is_trivial_with(n), "{name}");
                assert!(shadow_cocycle_invariant(&x, &theta, &d).unwrap().is_trivial_with(n), "{name}");
            }
        }
    }

    #[test]
    fn invariant_matches_product_oracle() {
        let x = d3();
        let d = fixture("trefoil_right").unwrap();
        let space = CocycleSpace::new(&x, 3).unwrap();
        for theta in space.select(200) {
            let mut expected = GroupRingElement::new(theta.group().clone());
            for c in oracle_biquandle_colorings(&x, &d).unwrap() {
                let mut w = 0;
                for cr in d.crossings() {
                    let r = cr.roles();
                    let v = theta.get(&[c.0[r.i], c.0[r.j]]);
                    w = (w + if cr.sign.as_i64() > 0 { v } else { 3 - v }) % 3;
                }
                expected.add_term(w, 1);
            }
            assert_eq!(expected.total(), 9);
            assert_eq!(biquandle_cocycle_invariant(&x, &theta, &d).unwrap(), expected);
        }
    }

    #[test]
    fn shadow_sum_equals_biquandle_sum_per_coloring() {
        for x in census(3).into_iter().step_by(5).chain([shift(3)]) {
            for p in [2, 3] {
                for theta in CocycleSpace::new(&x, p).unwrap().select(20) {
                    let ev = ShadowCocycleEvaluator::from_cocycle(&theta);
                    for (name, d) in matrix() {
                        assert_eq!(
                            biquandle_cocycle_invariant(&x, &theta, &d).unwrap(),
                            shadow_cocycle_invariant(&x, &theta, &d).unwrap(),
                            "{name}"
                        );
                        let q = derived_quandle(&x);
                        for c in enumerate_quandle_colorings(&q, &d) {
                            let b = psi(&x, &d, &c).unwrap();
                            assert_eq!(biquandle_weight(&theta, &d, &b), shadow_weight(&x, &ev, &d, &c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullbacks_are_shadow_cocycles() {
        for x in [d3(), shift(3)] {
            for theta in CocycleSpace::new(&x, 2).unwrap().select(8) {
                let ev = ShadowCocycleEvaluator::from_cocycle(&theta);
                let r = check_shadow_cocycle_sampled(&ev, &x, 3);
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn identity_state_only_for_quandle() {
        let x = d3();
        assert_eq!(reachable_psi_states(&x, 4).len(), 1);
        let theta = CocycleSpace::new(&x, 3).unwrap().select(1).remove(0);
        assert!(check_shadow_cocycle_sampled(&ShadowCocycleEvaluator::from_cocycle(&theta), &x, 0).passed);
    }

    #[test]
    fn arity_three_checks() {
        let x = shift(3);
        let g = FiniteAbelianGroup::cyclic(2);
        let mut t = CocycleTable::zero(3, 3, g);
        assert!(check_biquandle_cocycle(&t, &x).unwrap().passed);
        t.set(&[0, 1, 2], 1);
        assert!(!check_biquandle_cocycle(&t, &x).unwrap().passed);
        assert!(CocycleTable::new(4, 3, FiniteAbelianGroup::cyclic(2), vec![0; 81]).is_err());
    }
}
