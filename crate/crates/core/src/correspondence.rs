//! The bijection between biquandle colorings and colorings by the derived
//! quandle, computed through region states rather than diagram surgery.

use serde::Serialize;

use crate::algebra::{derived_quandle, Elem, FiniteBiquandle, FiniteQuandle};
use crate::coloring::{
    biquandle_equations_hold, diamond_region_coloring, enumerate_biquandle_colorings, enumerate_quandle_colorings,
    psi_region_coloring, quandle_equations_hold, ActionState, BiquandleColoring, DiamondState, GroupWord, Letter,
    PsiState, QuandleColoring,
};
use crate::diagram::fixtures::move_pair;
use crate::diagram::moves::{transport_biquandle, transport_quandle, MovePair};
use crate::diagram::LinkDiagram;
use crate::{Error, Result};

/// `Ψ(C)(σ) = ψ(p_σ, C(arc σ))` with `p_σ` the state of σ's specified region.
pub fn psi(x: &FiniteBiquandle, d: &LinkDiagram, c: &QuandleColoring) -> Result<BiquandleColoring> {
    let states = psi_region_coloring(x, d, c)?;
    let out: Vec<Elem> = (0..d.n_semiarcs()).map(|s| states[d.specified_region(s)].eval(c.0[d.arc_of(s)])).collect();
    if !biquandle_equations_hold(x, d, &out) {
        return Err(Error::Coloring(format!("Psi image {out:?} is not a biquandle coloring")));
    }
    Ok(BiquandleColoring(out))
}

/// `Φ(C)(arc σ) = C(σ) ⋄ g_σ⁻¹`; the value must not depend on which semi-arc
/// of the arc is used.
pub fn phi(x: &FiniteBiquandle, d: &LinkDiagram, c: &BiquandleColoring) -> Result<QuandleColoring> {
    let states = diamond_region_coloring(x, d, c)?;
    let mut out: Vec<Option<Elem>> = vec![None; d.n_arcs()];
    for s in 0..d.n_semiarcs() {
        let v = states[d.specified_region(s)].act_inverse(c.0[s]);
        let a = d.arc_of(s);
        match out[a] {
            None => out[a] = Some(v),
            Some(w) if w == v => {}
            Some(w) => {
                return Err(Error::Coloring(format!(
                    "Phi is not constant on arc {a}: {w} vs {v} at semi-arc {}",
                    d.label(s)
                )))
            }
        }
    }
    let out: Vec<Elem> = out.into_iter().map(|v| v.expect("every arc has a semi-arc")).collect();
    let q = derived_quandle(x);
    if !quandle_equations_hold(&q, d, &out) {
        return Err(Error::Coloring(format!("Phi image {out:?} is not a quandle coloring")));
    }
    Ok(QuandleColoring(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub biquandle_colorings: usize,
    pub quandle_colorings: usize,
    pub counts_equal: bool,
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.counts_equal && self.phi_psi_identity && self.psi_phi_identity
    }
}

pub fn verify_bijection(x: &FiniteBiquandle, d: &LinkDiagram) -> BijectionReport {
    let q = derived_quandle(x);
    let qc = enumerate_quandle_colorings(&q, d);
    let bc = enumerate_biquandle_colorings(x, d);
    let mut witness = None;
    let mut note = |w: String| {
        witness.get_or_insert(w);
    };
    let phi_psi_identity = qc.iter().all(|c| match psi(x, d, c).and_then(|b| phi(x, d, &b)) {
        Ok(back) if &back == c => true,
        Ok(back) => {
            note(format!("Phi(Psi({:?})) = {:?}", c.0, back.0));
            false
        }
        Err(e) => {
            note(e.to_string());
            false
        }
    });
    let psi_phi_identity = bc.iter().all(|c| match phi(x, d, c).and_then(|q| psi(x, d, &q)) {
        Ok(back) if &back == c => true,
        Ok(back) => {
            note(format!("Psi(Phi({:?})) = {:?}", c.0, back.0));
            false
        }
        Err(e) => {
            note(e.to_string());
            false
        }
    });
    BijectionReport {
        biquandle_colorings: bc.len(),
        quandle_colorings: qc.len(),
        counts_equal: bc.len() == qc.len(),
        phi_psi_identity,
        psi_phi_identity,
        witness,
    }
}

/// A word over the derived quandle, its ψ-state and its image word over X.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiTilde {
    pub word: GroupWord,
    pub state: PsiState,
    pub as_image_word: GroupWord,
}

/// A word over X, its ⋄-state and its image word over the derived quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiTilde {
    pub word: GroupWord,
    pub state: DiamondState,
    pub as_image_word: GroupWord,
}

pub fn psi_as_word(x: &FiniteBiquandle, word: &[Letter]) -> PsiTilde {
    let mut p = PsiState::identity(x);
    let mut image = Vec::with_capacity(word.len());
    for &l in word {
        if l.exp > 0 {
            image.push(Letter::pos(p.eval(l.gen)));
            p = p.step(x, l.gen, 1);
        } else {
            p = p.step(x, l.gen, -1);
            image.push(Letter::neg(p.eval(l.gen)));
        }
    }
    PsiTilde { word: word.to_vec(), state: p, as_image_word: image }
}

pub fn phi_as_word(x: &FiniteBiquandle, word: &[Letter]) -> PhiTilde {
    let mut g = DiamondState::identity(x);
    let mut image = Vec::with_capacity(word.len());
    for &l in word {
        if l.exp > 0 {
            image.push(Letter::pos(g.act_inverse(l.gen)));
            g = g.step(x, l.gen, 1);
        } else {
            g = g.step(x, l.gen, -1);
            image.push(Letter::neg(g.act_inverse(l.gen)));
        }
    }
    PhiTilde { word: word.to_vec(), state: g, as_image_word: image }
}

/// `φ̃ ∘ ψ̃` at state level: the image of `word` acts like `ψ(p, ·)`, and
/// mapping it back recovers the ψ-state of `word`.
pub fn psi_roundtrip_holds(x: &FiniteBiquandle, word: &[Letter]) -> bool {
    let there = psi_as_word(x, word);
    let back = phi_as_word(x, &there.as_image_word);
    (0..x.order()).all(|a| back.state.act_inverse(there.state.eval(a)) == a)
        && PsiState::fold(x, &back.as_image_word) == there.state
}

/// `ψ̃ ∘ φ̃` at state level.
pub fn phi_roundtrip_holds(x: &FiniteBiquandle, word: &[Letter]) -> bool {
    let there = phi_as_word(x, word);
    let back = psi_as_word(x, &there.as_image_word);
    (0..x.order()).all(|y| back.state.eval(there.state.act_inverse(y)) == y)
        && DiamondState::fold(x, &back.as_image_word) == there.state
}

/// Every word of length `len` over `n` generators with exponents ±1.
pub fn all_words(n: usize, len: usize) -> impl Iterator<Item = GroupWord> {
    let letters = 2 * n;
    let total = letters.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut w = Vec::with_capacity(len);
        for _ in 0..len {
            let l = code % letters;
            code /= letters;
            w.push(Letter { gen: l / 2, exp: if l.is_multiple_of(2) { 1 } else { -1 } });
        }
        w
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    /// Words checked on each side (bounded length, not the whole group).
    pub words: usize,
    pub max_len: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Both roundtrips for every word up to `max_len`, sharing prefixes: the
/// lifts are folds, so one depth-first walk carries all the states.
pub fn bounded_roundtrip(x: &FiniteBiquandle, max_len: usize) -> RoundtripReport {
    let mut words = 0;
    let mut witness = None;

    // word over Q(X): (ψ-state, ⋄-state of the ψ_As image, ψ-state of φ_As of that image)
    #[allow(clippy::too_many_arguments)]
    fn walk_psi(
        x: &FiniteBiquandle,
        word: &mut GroupWord,
        p: PsiState,
        g: DiamondState,
        back: PsiState,
        max_len: usize,
        words: &mut usize,
        witness: &mut Option<String>,
    ) {
        *words += 1;
        let n = x.order();
        if back != p || (0..n).any(|a| g.act_inverse(p.eval(a)) != a) {
            witness.get_or_insert(format!("psi side, word {word:?}"));
            return;
        }
        if word.len() == max_len {
            return;
        }
        for gen in 0..n {
            for exp in [1, -1] {
                let (p2, y) = if exp > 0 {
                    (p.step(x, gen, 1), p.eval(gen))
                } else {
                    let p2 = p.step(x, gen, -1);
                    let y = p2.eval(gen);
                    (p2, y)
                };
                // φ_As applied to the appended image letter y^exp
                let (g2, z) = if exp > 0 {
                    (g.step(x, y, 1), g.act_inverse(y))
                } else {
                    let g2 = g.step(x, y, -1);
                    let z = g2.act_inverse(y);
                    (g2, z)
                };
                let back2 = back.step(x, z, exp);
                word.push(Letter { gen, exp });
                walk_psi(x, word, p2, g2, back2, max_len, words, witness);
                word.pop();
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_phi(
        x: &FiniteBiquandle,
        word: &mut GroupWord,
        g: DiamondState,
        p: PsiState,
        back: DiamondState,
        max_len: usize,
        words: &mut usize,
        witness: &mut Option<String>,
    ) {
        *words += 1;
        let n = x.order();
        if back != g || (0..n).any(|y| p.eval(g.act_inverse(y)) != y) {
            witness.get_or_insert(format!("phi side, word {word:?}"));
            return;
        }
        if word.len() == max_len {
            return;
        }
        for gen in 0..n {
            for exp in [1, -1] {
                let (g2, a) = if exp > 0 {
                    (g.step(x, gen, 1), g.act_inverse(gen))
                } else {
                    let g2 = g.step(x, gen, -1);
                    let a = g2.act_inverse(gen);
                    (g2, a)
                };
                let (p2, z) = if exp > 0 {
                    (p.step(x, a, 1), p.eval(a))
                } else {
                    let p2 = p.step(x, a, -1);
                    let z = p2.eval(a);
                    (p2, z)
                };
                let back2 = back.step(x, z, exp);
                word.push(Letter { gen, exp });
                walk_phi(x, word, g2, p2, back2, max_len, words, witness);
                word.pop();
            }
        }
    }

    walk_psi(
        x,
        &mut Vec::new(),
        PsiState::identity(x),
        DiamondState::identity(x),
        PsiState::identity(x),
        max_len,
        &mut words,
        &mut witness,
    );
    walk_phi(
        x,
        &mut Vec::new(),
        DiamondState::identity(x),
        PsiState::identity(x),
        DiamondState::identity(x),
        max_len,
        &mut words,
        &mut witness,
    );
    RoundtripReport { words: words / 2, max_len, passed: witness.is_none(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub pair: String,
    pub colorings: usize,
    pub commutes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Transport then Ψ against Ψ then transport, over every quandle coloring.
pub fn verify_naturality(x: &FiniteBiquandle, pair: &MovePair) -> Result<NaturalityReport> {
    let q: FiniteQuandle = derived_quandle(x);
    let tq = transport_quandle(pair, &q)?;
    let tb = transport_biquandle(pair, x)?;
    let mut witness = None;
    for c in &tq.before {
        let moved = tq.apply(c).expect("coloring of the source diagram");
        let lhs = psi(x, &pair.after, moved)?;
        let rhs = tb.apply(&psi(x, &pair.before, c)?).cloned();
        if rhs.as_ref() != Some(&lhs) {
            witness = Some(format!("quandle coloring {:?}: {:?} vs {:?}", c.0, lhs.0, rhs.map(|r| r.0)));
            break;
        }
    }
    Ok(NaturalityReport { pair: pair.name.clone(), colorings: tq.before.len(), commutes: witness.is_none(), witness })
}

pub fn verify_naturality_named(x: &FiniteBiquandle, pair: &str) -> Result<NaturalityReport> {
    verify_naturality(x, &move_pair(pair)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{census, dihedral, quandle_as_biquandle, shift};
    use crate::diagram::fixtures::{fixture, matrix, MOVE_PAIRS};

    #[test]
    fn quandle_embedding_reinterprets() {
        let x = quandle_as_biquandle(&dihedral(3));
        let d = fixture("trefoil_right").unwrap();
        let cs = enumerate_quandle_colorings(&dihedral(3), &d);
        assert_eq!(cs.len(), 9);
        let mut images = Vec::new();
        for c in &cs {
            let b = psi(&x, &d, c).unwrap();
            for s in 0..d.n_semiarcs() {
                assert_eq!(b.0[s], c.0[d.arc_of(s)]);
            }
            assert_eq!(&phi(&x, &d, &b).unwrap(), c);
            images.push(b);
        }
        images.dedup();
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn unknot_inner_side() {
        let x = shift(4);
        // A clockwise circle: the disc is on the specified side.
        let e = fixture("unknot0").unwrap();
        let d = e.with_unbounded(e.opposite_region(0));
        let c = QuandleColoring(vec![1]);
        let b = psi(&x, &d, &c).unwrap();
        let f = PsiState::identity(&x).step(&x, 1, -1);
        assert_eq!(b.0[0], f.eval(1));
        assert_eq!(phi(&x, &d, &b).unwrap(), c);
    }

    #[test]
    fn shift_kink_depends_on_depth() {
        let x = shift(5);
        let d = fixture("unknot_kink_pos").unwrap();
        for c in enumerate_biquandle_colorings(&x, &d) {
            let q = phi(&x, &d, &c).unwrap();
            // the main strand borders the outer region, so its value is unshifted
            let outer_side = (0..d.n_semiarcs()).find(|&s| d.specified_region(s) == d.unbounded()).unwrap();
            assert_eq!(q.0[d.arc_of(outer_side)], c.0[outer_side]);
        }
    }

    #[test]
    fn bijection_on_matrix() {
        let algebras: Vec<_> = census(3).into_iter().chain([quandle_as_biquandle(&dihedral(3)), shift(4)]).collect();
        for (name, d) in matrix() {
            for x in &algebras {
                let r = verify_bijection(x, &d);
                assert!(r.passed(), "{name}: {r:?}");
            }
        }
        let r = verify_bijection(&quandle_as_biquandle(&dihedral(3)), &fixture("trefoil_right").unwrap());
        assert_eq!((r.biquandle_colorings, r.quandle_colorings), (9, 9));
    }

    #[test]
    fn word_lifts() {
        let x = shift(3);
        assert!(psi_as_word(&x, &[]).as_image_word.is_empty());
        assert!(psi_as_word(&x, &[]).state.is_identity());
        assert_eq!(psi_as_word(&x, &[Letter::pos(2)]).as_image_word, vec![Letter::pos(2)]);
        assert_eq!(phi_as_word(&x, &[Letter::pos(1)]).as_image_word, vec![Letter::pos(1)]);
        assert!(phi_as_word(&x, &[]).state.is_identity());
    }

    #[test]
    fn relator_images_agree() {
        for x in census(3) {
            let q = derived_quandle(&x);
            for p in all_words(3, 2) {
                for a in 0..3 {
                    for b in 0..3 {
                        let mut w1 = p.clone();
                        w1.extend([Letter::pos(b), Letter::pos(q.op(a, b))]);
                        let mut w2 = p.clone();
                        w2.extend([Letter::pos(a), Letter::pos(b)]);
                        let i1 = psi_as_word(&x, &w1).as_image_word;
                        let i2 = psi_as_word(&x, &w2).as_image_word;
                        assert_eq!(DiamondState::fold(&x, &i1), DiamondState::fold(&x, &i2));
                    }
                }
            }
        }
    }

    #[test]
    fn short_roundtrips() {
        for x in census(3) {
            for len in 0..=3 {
                for w in all_words(3, len) {
                    assert!(psi_roundtrip_holds(&x, &w), "{w:?}");
                    assert!(phi_roundtrip_holds(&x, &w), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn dfs_roundtrip_agrees_with_folds() {
        for x in census(3).into_iter().take(6) {
            let r = bounded_roundtrip(&x, 3);
            assert!(r.passed, "{r:?}");
            assert_eq!(r.words, 1 + 6 + 36 + 216);
        }
    }

    #[test]
    fn naturality_on_pairs() {
        let algebras: Vec<_> = census(3).into_iter().chain([quandle_as_biquandle(&dihedral(3)), shift(3)]).collect();
        for name in MOVE_PAIRS {
            for x in &algebras {
                let r = verify_naturality_named(x, name).unwrap();
                assert!(r.commutes, "{r:?}");
            }
        }
    }
}
