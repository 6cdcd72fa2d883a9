//! Verification suites over a fixed matrix of algebras and diagrams.
//!
//! Each suite returns a [`VerificationMatrix`] of named cells; the matrix
//! passes only if every cell does. All randomness is seeded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::functional::{
    integer_pair_shift, integer_shift, right_translation_witness, sampled_axiom_check, topological_biquandle_ops,
    AsImage, DEFAULT_SAMPLES,
};
use crate::algebra::{
    census, check_biquandle_axioms, check_quandle_axioms, derived_quandle, dihedral, Axiom, FiniteBiquandle,
};
use crate::catalog::extra_algebras;
use crate::cocycle::{
    biquandle_cocycle_invariant, biquandle_weight, coboundary, shadow_cocycle_invariant, shadow_weight, CocycleSpace,
    FiniteAbelianGroup, ShadowCocycleEvaluator,
};
use crate::coloring::{enumerate_biquandle_colorings, enumerate_quandle_colorings, ActionState, GroupWord, Letter, PsiState};
use crate::correspondence::{bounded_roundtrip, psi, verify_bijection, verify_naturality};
use crate::cocycle::reachable_psi_states;
use crate::diagram::fixtures::{matrix, move_pair, MOVE_PAIRS};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 0;
pub const COCYCLE_CAP: usize = 200;
pub const RELATOR_PAIRS: usize = 1000;
pub const EQ_US_DEPTH: usize = 4;
pub const ROUNDTRIP_LEN: usize = 6;
pub const COBOUNDARY_SAMPLES: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    Main,
    Naturality,
    Cocycle,
    States,
    Appendix,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "main" => Suite::Main,
            "naturality" => Suite::Naturality,
            "cocycle" => Suite::Cocycle,
            "states" => Suite::States,
            "appendix" => Suite::Appendix,
            "all" => Suite::All,
            _ => return Err(Error::Catalog(format!("unknown suite '{s}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub algebra: String,
    pub diagram: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationMatrix {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub cells: Vec<Cell>,
}

impl VerificationMatrix {
    fn new(suite: &str, seed: u64) -> Self {
        VerificationMatrix { suite: suite.into(), seed, passed: true, cells: Vec::new() }
    }

    fn push(&mut self, algebra: &str, diagram: &str, check: &str, outcome: std::result::Result<(), String>) {
        let passed = outcome.is_ok();
        self.passed &= passed;
        self.cells.push(Cell {
            algebra: algebra.into(),
            diagram: diagram.into(),
            check: check.into(),
            passed,
            detail: outcome.err(),
        });
    }

    fn absorb(&mut self, other: VerificationMatrix) {
        self.passed &= other.passed;
        self.cells.extend(other.cells);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.passed)
    }
}

fn census_named() -> Vec<(String, FiniteBiquandle)> {
    census(3).into_iter().enumerate().map(|(i, x)| (format!("census3:{i}"), x)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Axioms of the dihedral quandles, the census and single-entry perturbations.
pub fn axioms_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("axioms", seed);
    for n in [3, 5] {
        let q = dihedral(n);
        let r = check_quandle_axioms(&q.rows()).map_err(|e| e.to_string());
        m.push(&format!("dihedral{n}"), "-", "quandle axioms", r.and_then(|r| ensure(r.passed, || r.to_string())));
    }
    let all = census(3);
    m.push("census3", "-", "nonempty", ensure(!all.is_empty(), || "census is empty".into()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, x) in all.iter().enumerate() {
        let name = format!("census3:{i}");
        let (u, o) = (x.under_rows(), x.over_rows());
        let r = check_biquandle_axioms(&u, &o).map_err(|e| e.to_string());
        m.push(&name, "-", "biquandle axioms", r.and_then(|r| ensure(r.passed, || r.to_string())));
        let q = derived_quandle(x);
        let r = check_quandle_axioms(&q.rows()).map_err(|e| e.to_string());
        m.push(&name, "-", "derived quandle axioms", r.and_then(|r| ensure(r.passed, || r.to_string())));

        // change one entry of one table; the checker must object
        let (a, b) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let mut bad = u.clone();
        bad[a][b] = (bad[a][b] + 1 + rng.gen_range(0..2)) % 3;
        let r = check_biquandle_axioms(&bad, &o).map_err(|e| e.to_string());
        m.push(
            &name,
            "-",
            "perturbed table rejected",
            r.and_then(|r| {
                ensure(!r.passed, || format!("perturbing under[{a}][{b}] went unnoticed"))?;
                let bq1 = a == b;
                ensure(!bq1 || r.first(Axiom::BQ1).map(|v| v.witness.clone()) == Some(vec![a as i64]), || {
                    format!("diagonal perturbation at {a} not reported as BQ1 there: {r}")
                })
            }),
        );
    }
    m
}

/// Backtracking enumeration against the product-space oracle.
pub fn oracle_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("oracle", seed);
    for (name, x) in census_named() {
        let q = derived_quandle(&x);
        for (dname, d) in matrix() {
            let r = crate::coloring::oracle_biquandle_colorings(&x, &d)
                .and_then(|o| Ok((o, crate::coloring::oracle_quandle_colorings(&q, &d)?)))
                .map_err(|e| e.to_string())
                .and_then(|(ob, oq)| {
                    let (b, qq) = (enumerate_biquandle_colorings(&x, &d), enumerate_quandle_colorings(&q, &d));
                    ensure(b == ob && qq == oq, || {
                        format!("backtracking ({}, {}) vs oracle ({}, {})", b.len(), qq.len(), ob.len(), oq.len())
                    })
                });
            m.push(&name, dname, "backtracking = oracle", r);
        }
    }
    m
}

/// Counts, `Φ∘Ψ = id` and `Ψ∘Φ = id` on every cell.
pub fn main_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("main", seed);
    let algebras: Vec<_> = census_named().into_iter().chain(extra_algebras()).collect();
    for (name, x) in &algebras {
        for (dname, d) in matrix() {
            let r = verify_bijection(x, &d);
            m.push(
                name,
                dname,
                "one-to-one correspondence",
                ensure(r.passed(), || {
                    format!(
                        "counts ({}, {}), phi.psi {}, psi.phi {}, {}",
                        r.biquandle_colorings,
                        r.quandle_colorings,
                        r.phi_psi_identity,
                        r.psi_phi_identity,
                        r.witness.clone().unwrap_or_default()
                    )
                }),
            );
        }
    }
    m
}

pub fn naturality_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("naturality", seed);
    let pairs: Vec<_> = MOVE_PAIRS.iter().map(|p| move_pair(p).expect("shipped pair")).collect();
    for (name, x) in census_named() {
        for pair in &pairs {
            let r = verify_naturality(&x, pair)
                .map_err(|e| e.to_string())
                .and_then(|r| ensure(r.commutes, || r.witness.clone().unwrap_or_default()));
            m.push(&name, &pair.name, "transport commutes with Psi", r);
        }
    }
    m
}

/// Equality of the two state sums on every diagram, and per coloring.
pub fn state_sum_suite(seed: u64, cap: usize) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("state sums", seed);
    let diagrams = matrix();
    for (name, x) in census_named() {
        let q = derived_quandle(&x);
        for p in [2u64, 3] {
            let space = match CocycleSpace::new(&x, p) {
                Ok(s) => s,
                Err(e) => {
                    m.push(&name, "-", &format!("cocycles over Z/{p}"), Err(e.to_string()));
                    continue;
                }
            };
            let thetas = space.select(cap);
            for (dname, d) in &diagrams {
                let qcs = enumerate_quandle_colorings(&q, d);
                let outcome = (|| {
                    for (t, theta) in thetas.iter().enumerate() {
                        let lhs = biquandle_cocycle_invariant(&x, theta, d).map_err(|e| e.to_string())?;
                        let rhs = shadow_cocycle_invariant(&x, theta, d).map_err(|e| e.to_string())?;
                        ensure(lhs == rhs, || format!("cocycle #{t}: {:?} vs {:?}", lhs.decoded(), rhs.decoded()))?;
                        let ev = ShadowCocycleEvaluator::from_cocycle(theta);
                        for c in &qcs {
                            let b = psi(&x, d, c).map_err(|e| e.to_string())?;
                            let (wb, ws) = (biquandle_weight(theta, d, &b), shadow_weight(&x, &ev, d, c).map_err(|e| e.to_string())?);
                            ensure(wb == ws, || format!("cocycle #{t}, coloring {:?}: weights {wb} vs {ws}", c.0))?;
                        }
                    }
                    Ok(())
                })();
                m.push(&name, dname, &format!("state sums agree over Z/{p} ({} cocycles)", thetas.len()), outcome);
            }
        }
    }
    m
}

/// Move invariance of the biquandle state sum and triviality on coboundaries.
pub fn invariance_suite(seed: u64, cap: usize) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("invariance", seed);
    let diagrams = matrix();
    let pairs: Vec<_> = MOVE_PAIRS.iter().map(|p| move_pair(p).expect("shipped pair")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, x) in census_named() {
        for p in [2u64, 3] {
            let thetas = match CocycleSpace::new(&x, p) {
                Ok(s) => s.select(cap),
                Err(e) => {
                    m.push(&name, "-", &format!("cocycles over Z/{p}"), Err(e.to_string()));
                    continue;
                }
            };
            for pair in &pairs {
                let outcome = (|| {
                    for (t, theta) in thetas.iter().enumerate() {
                        let a = biquandle_cocycle_invariant(&x, theta, &pair.before).map_err(|e| e.to_string())?;
                        let b = biquandle_cocycle_invariant(&x, theta, &pair.after).map_err(|e| e.to_string())?;
                        ensure(a == b, || format!("cocycle #{t}: {:?} vs {:?}", a.decoded(), b.decoded()))?;
                    }
                    Ok(())
                })();
                m.push(&name, &pair.name, &format!("invariant under the move over Z/{p}"), outcome);
            }
        }
        let g = FiniteAbelianGroup::cyclic(3);
        let outcome = (|| {
            for k in 0..COBOUNDARY_SAMPLES {
                let eta: Vec<u64> = (0..x.order()).map(|_| rng.gen_range(0..3)).collect();
                let theta = coboundary(&eta, &x, &g).map_err(|e| e.to_string())?;
                for (dname, d) in &diagrams {
                    let n = enumerate_biquandle_colorings(&x, d).len() as u64;
                    let v = biquandle_cocycle_invariant(&x, &theta, d).map_err(|e| e.to_string())?;
                    ensure(v.is_trivial_with(n), || format!("eta #{k} = {eta:?} on {dname}: {:?}", v.decoded()))?;
                }
            }
            Ok(())
        })();
        m.push(&name, "all", "coboundaries are trivial", outcome);
    }
    m
}

pub fn cocycle_suite(seed: u64, cap: usize) -> VerificationMatrix {
    let mut m = state_sum_suite(seed, cap);
    m.suite = "cocycle".into();
    m.absorb(invariance_suite(seed, cap));
    m
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter { gen: rng.gen_range(0..n), exp: if rng.gen() { 1 } else { -1 } }).collect()
}

pub fn states_suite(seed: u64) -> VerificationMatrix {
    let mut m = well_definedness_suite(seed);
    m.suite = "states".into();
    m.absorb(roundtrip_suite(seed));
    m
}

/// Relator invariance and the under-operation identity for ψ-states.
pub fn well_definedness_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("well-definedness", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, x) in census_named() {
        let q = derived_quandle(&x);
        let n = x.order();
        let outcome = (|| {
            for t in 0..RELATOR_PAIRS {
                let w = random_word(&mut rng, n, 8);
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let at = rng.gen_range(0..=w.len());
                let long = [Letter::pos(b), Letter::pos(q.op(a, b))];
                let short = [Letter::pos(a), Letter::pos(b)];
                // insert one side of the relator, or swap an inserted side for the other
                let mut w1 = w.clone();
                let mut w2 = w.clone();
                if rng.gen() {
                    w1.splice(at..at, long);
                    w2.splice(at..at, short);
                } else {
                    // insert r·r'⁻¹ against nothing
                    let inv: Vec<Letter> = short.iter().rev().map(|l| l.inverse()).collect();
                    w1.splice(at..at, long.into_iter().chain(inv));
                }
                ensure(PsiState::fold(&x, &w1) == PsiState::fold(&x, &w2), || {
                    format!("pair #{t}: {w1:?} vs {w2:?}")
                })?;
            }
            Ok(())
        })();
        m.push(&name, "-", &format!("psi states respect relators ({RELATOR_PAIRS} pairs)"), outcome);

        let states = reachable_psi_states(&x, EQ_US_DEPTH);
        let outcome = (|| {
            for f in &states {
                for a in 0..n {
                    for b in 0..n {
                        ensure(x.under(f.eval(a), f.eval(b)) == f.step(&x, b, 1).eval(q.op(a, b)), || {
                            format!("state {:?}, a = {a}, b = {b}", f.0)
                        })?;
                    }
                }
            }
            Ok(())
        })();
        m.push(&name, "-", &format!("under identity on {} reachable states", states.len()), outcome);
    }
    m
}

/// Word-level lifts composed both ways, for every short word.
pub fn roundtrip_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("roundtrip", seed);
    for (name, x) in census_named() {
        let r = bounded_roundtrip(&x, ROUNDTRIP_LEN);
        m.push(
            &name,
            "-",
            &format!("word lifts roundtrip, length <= {ROUNDTRIP_LEN} (bounded)"),
            ensure(r.passed, || r.witness.clone().unwrap_or_default()),
        );
    }
    m
}

pub fn appendix_suite(seed: u64) -> VerificationMatrix {
    let mut m = VerificationMatrix::new("appendix", seed);
    for x in [integer_shift(), integer_pair_shift(1)] {
        let r = sampled_axiom_check(&x, DEFAULT_SAMPLES, seed);
        m.push(&x.name, "-", "sampled axioms", ensure(r.passed && r.sampled, || r.to_string()));
    }
    let bad = integer_pair_shift(2);
    let r = sampled_axiom_check(&bad, 1, seed);
    m.push(&bad.name, "-", "BQ1 failure detected", ensure(r.violates(Axiom::BQ1), || r.to_string()));

    let z2 = integer_pair_shift(1);
    let w = right_translation_witness(&z2, &[0, 0], &[0, 0], &[1, 0]);
    m.push(
        &z2.name,
        "-",
        "right translations differ",
        ensure(w == Some((vec![1, 0], vec![1, 1])), || format!("got {w:?}")),
    );

    let q = dihedral(3);
    for (label, g) in [("Z/3", AsImage::cyclic(&q, 3)), ("Inn", AsImage::inner(&q))] {
        let x = topological_biquandle_ops(&g, &q);
        let r = sampled_axiom_check(&x, DEFAULT_SAMPLES, seed);
        m.push(&format!("{label} x dihedral3"), "-", "sampled axioms", ensure(r.passed, || r.to_string()));
    }
    m
}

pub fn run(suite: Suite, seed: u64) -> VerificationMatrix {
    match suite {
        Suite::Main => main_suite(seed),
        Suite::Naturality => naturality_suite(seed),
        Suite::Cocycle => cocycle_suite(seed, COCYCLE_CAP),
        Suite::States => states_suite(seed),
        Suite::Appendix => appendix_suite(seed),
        Suite::All => {
            let mut m = VerificationMatrix::new("all", seed);
            for part in [
                axioms_suite(seed),
                oracle_suite(seed),
                main_suite(seed),
                naturality_suite(seed),
                cocycle_suite(seed, COCYCLE_CAP),
                states_suite(seed),
                appendix_suite(seed),
            ] {
                m.absorb(part);
            }
            m
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for m in [axioms_suite(0), appendix_suite(0)] {
            assert!(m.passed, "{:?}", m.failures().collect::<Vec<_>>());
        }
        assert!("bogus".parse::<Suite>().is_err());
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
    }

    #[test]
    fn deterministic() {
        assert_eq!(axioms_suite(7), axioms_suite(7));
    }
}
