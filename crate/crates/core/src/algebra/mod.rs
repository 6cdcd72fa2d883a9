//! Finite quandles and biquandles on the carrier `0..n`.
//!
//! Tables are row-major with the row index as the left operand, so
//! `under[x * n + y] = x ⊼ y`. Inverse tables are filled in at construction:
//! `(x ⊼ y) ⊼⁻¹ y = x` and `(x ⊼⁻¹ y) ⊼ y = x`, likewise for `⊻` and `∗`.

mod census;
pub mod functional;

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

pub use census::census;

/// Carrier element. Carriers are always `0..n`.
pub type Elem = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    Q1,
    Q2,
    Q3,
    BQ1,
    BQ2,
    BQ3,
    Cocycle,
    Degeneracy,
    ShadowCocycle,
    ShadowDegeneracy,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Q1 => "Q1",
            Axiom::Q2 => "Q2",
            Axiom::Q3 => "Q3",
            Axiom::BQ1 => "BQ1",
            Axiom::BQ2 => "BQ2",
            Axiom::BQ3 => "BQ3",
            Axiom::Cocycle => "cocycle",
            Axiom::Degeneracy => "degeneracy",
            Axiom::ShadowCocycle => "shadow cocycle",
            Axiom::ShadowDegeneracy => "shadow degeneracy",
        };
        f.write_str(s)
    }
}

/// One failed condition together with the smallest tuple witnessing it.
///
/// `condition` names the sub-condition (e.g. `"under column bijective"` or the
/// index of a BQ3 equation). Witness entries are carrier elements; functional
/// biquandles flatten their coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub condition: String,
    pub witness: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    /// True when only a sample of tuples was checked.
    pub sampled: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub(crate) fn exhaustive(violations: Vec<Violation>) -> Self {
        AxiomReport { passed: violations.is_empty(), sampled: false, violations }
    }

    pub(crate) fn sampled(violations: Vec<Violation>) -> Self {
        AxiomReport { passed: violations.is_empty(), sampled: true, violations }
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "all axioms hold{}", if self.sampled { " (sampled)" } else { "" });
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} [{}] at {:?}", v.axiom, v.condition, v.witness))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Collects the first witness of each named condition; callers iterate tuples
/// in lexicographic order so the first witness is the minimal one.
#[derive(Default)]
pub(crate) struct Witnesses {
    found: Vec<Violation>,
}

impl Witnesses {
    pub(crate) fn record(&mut self, axiom: Axiom, condition: &str, witness: &[usize]) {
        let witness = witness.iter().map(|&e| e as i64).collect();
        self.record_raw(axiom, condition, witness);
    }

    pub(crate) fn record_raw(&mut self, axiom: Axiom, condition: &str, witness: Vec<i64>) {
        if !self.found.iter().any(|v| v.axiom == axiom && v.condition == condition) {
            self.found.push(Violation { axiom, condition: condition.to_string(), witness });
        }
    }

    pub(crate) fn into_vec(self) -> Vec<Violation> {
        self.found
    }
}

/// Flattens a square table, rejecting ragged rows and out-of-range entries.
pub(crate) fn flatten_table(rows: &[Vec<usize>], what: &str) -> Result<(usize, Vec<Elem>)> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Structure(format!("{what}: empty table")));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Structure(format!(
                "{what}: row {r} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::Structure(format!("{what}: entry [{r}][{c}] = {v} out of range 0..{n}")));
            }
            flat.push(v);
        }
    }
    Ok((n, flat))
}

/// Inverse of every column map `• op y`, or the first column that is not a bijection.
fn column_inverses(n: usize, table: &[Elem]) -> std::result::Result<Vec<Elem>, (usize, usize, usize)> {
    let mut inv = vec![usize::MAX; n * n];
    for y in 0..n {
        for x in 0..n {
            let z = table[x * n + y];
            let slot = &mut inv[z * n + y];
            if *slot != usize::MAX {
                // (first preimage, second preimage, column)
                return Err((*slot, x, y));
            }
            *slot = x;
        }
    }
    Ok(inv)
}

fn op_rows(n: usize, flat: &[Elem]) -> Vec<Vec<usize>> {
    flat.chunks(n).map(|r| r.to_vec()).collect()
}

/// Exhaustive check of Q1–Q3 on a square table.
pub fn check_quandle_axioms(rows: &[Vec<usize>]) -> Result<AxiomReport> {
    let (n, op) = flatten_table(rows, "op")?;
    Ok(quandle_report(n, &op))
}

fn quandle_report(n: usize, op: &[Elem]) -> AxiomReport {
    let at = |a: usize, b: usize| op[a * n + b];
    let mut w = Witnesses::default();
    for a in 0..n {
        if at(a, a) != a {
            w.record(Axiom::Q1, "a * a = a", &[a]);
        }
    }
    if let Err((a, a2, b)) = column_inverses(n, op) {
        w.record(Axiom::Q2, "column map bijective", &[a, a2, b]);
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(at(a, b), c) != at(at(a, c), at(b, c)) {
                    w.record(Axiom::Q3, "(a*b)*c = (a*c)*(b*c)", &[a, b, c]);
                }
            }
        }
    }
    AxiomReport::exhaustive(w.into_vec())
}

/// Exhaustive check of BQ1–BQ3, including bijectivity of `H(x, y) = (y ⊻ x, x ⊼ y)`.
pub fn check_biquandle_axioms(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<AxiomReport> {
    let (n, u) = flatten_table(under, "under")?;
    let (m, o) = flatten_table(over, "over")?;
    if n != m {
        return Err(Error::Structure(format!("under has size {n}, over has size {m}")));
    }
    Ok(biquandle_report(n, &u, &o))
}

fn biquandle_report(n: usize, u: &[Elem], o: &[Elem]) -> AxiomReport {
    let un = |x: usize, y: usize| u[x * n + y];
    let ov = |x: usize, y: usize| o[x * n + y];
    let mut w = Witnesses::default();
    for x in 0..n {
        if un(x, x) != ov(x, x) {
            w.record(Axiom::BQ1, "x under x = x over x", &[x]);
        }
    }
    if let Err((x, x2, y)) = column_inverses(n, u) {
        w.record(Axiom::BQ2, "under column bijective", &[x, x2, y]);
    }
    if let Err((x, x2, y)) = column_inverses(n, o) {
        w.record(Axiom::BQ2, "over column bijective", &[x, x2, y]);
    }
    if let Err((p, q)) = pair_map_inverse(n, u, o) {
        let (x, y, x2, y2) = (p / n, p % n, q / n, q % n);
        w.record(Axiom::BQ2, "H bijective", &[x, y, x2, y2]);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if un(un(x, y), un(z, y)) != un(un(x, z), ov(y, z)) {
                    w.record(Axiom::BQ3, "under-under", &[x, y, z]);
                }
                if ov(ov(x, y), ov(z, y)) != ov(ov(x, z), un(y, z)) {
                    w.record(Axiom::BQ3, "over-over", &[x, y, z]);
                }
                if ov(un(x, y), un(z, y)) != un(ov(x, z), ov(y, z)) {
                    w.record(Axiom::BQ3, "mixed", &[x, y, z]);
                }
            }
        }
    }
    AxiomReport::exhaustive(w.into_vec())
}

/// Inverse of `H` as a table indexed by `(y ⊻ x) * n + (x ⊼ y)`, holding `x * n + y`.
fn pair_map_inverse(n: usize, u: &[Elem], o: &[Elem]) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let mut inv = vec![usize::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            let img = o[y * n + x] * n + u[x * n + y];
            if inv[img] != usize::MAX {
                return Err((inv[img], x * n + y));
            }
            inv[img] = x * n + y;
        }
    }
    Ok(inv)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    n: usize,
    op: Vec<Elem>,
    inv: Vec<Elem>,
}

impl FiniteQuandle {
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let (n, op) = flatten_table(rows, "op")?;
        Self::from_flat(n, op)
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let op = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::from_flat(n, op)
    }

    pub(crate) fn from_flat(n: usize, op: Vec<Elem>) -> Result<Self> {
        if op.len() != n * n || op.iter().any(|&v| v >= n) {
            return Err(Error::Structure("quandle table has wrong size or range".into()));
        }
        let report = quandle_report(n, &op);
        if !report.passed {
            return Err(Error::Axioms(report));
        }
        let inv = column_inverses(n, &op).expect("Q2 checked");
        Ok(FiniteQuandle { n, op, inv })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.op[a * self.n + b]
    }

    #[inline]
    pub fn inv_op(&self, a: Elem, b: Elem) -> Elem {
        self.inv[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        op_rows(self.n, &self.op)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBiquandle {
    n: usize,
    under: Vec<Elem>,
    over: Vec<Elem>,
    under_inv: Vec<Elem>,
    over_inv: Vec<Elem>,
    pair_inv: Vec<usize>,
    kink: Vec<Elem>,
}

impl FiniteBiquandle {
    pub fn new(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Self> {
        let (n, u) = flatten_table(under, "under")?;
        let (m, o) = flatten_table(over, "over")?;
        if n != m {
            return Err(Error::Structure(format!("under has size {n}, over has size {m}")));
        }
        Self::from_flat(n, u, o)
    }

    pub fn from_fns(
        n: usize,
        under: impl Fn(Elem, Elem) -> Elem,
        over: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let u = (0..n * n).map(|i| under(i / n, i % n)).collect();
        let o = (0..n * n).map(|i| over(i / n, i % n)).collect();
        Self::from_flat(n, u, o)
    }

    pub(crate) fn from_flat(n: usize, under: Vec<Elem>, over: Vec<Elem>) -> Result<Self> {
        if n == 0 || under.len() != n * n || over.len() != n * n {
            return Err(Error::Structure("biquandle tables have wrong size".into()));
        }
        if under.iter().chain(over.iter()).any(|&v| v >= n) {
            return Err(Error::Structure("biquandle table entry out of range".into()));
        }
        let report = biquandle_report(n, &under, &over);
        if !report.passed {
            return Err(Error::Axioms(report));
        }
        Ok(Self::assemble(n, under, over))
    }

    /// Builds the derived tables; the caller has already checked the axioms.
    pub(crate) fn assemble(n: usize, under: Vec<Elem>, over: Vec<Elem>) -> Self {
        let under_inv = column_inverses(n, &under).expect("BQ2 checked");
        let over_inv = column_inverses(n, &over).expect("BQ2 checked");
        let pair_inv = pair_map_inverse(n, &under, &over).expect("BQ2 checked");
        let kink = kink_table(n, &over).expect("diagonal of a biquandle is a bijection");
        FiniteBiquandle { n, under, over, under_inv, over_inv, pair_inv, kink }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn under(&self, x: Elem, y: Elem) -> Elem {
        self.under[x * self.n + y]
    }

    #[inline]
    pub fn over(&self, x: Elem, y: Elem) -> Elem {
        self.over[x * self.n + y]
    }

    #[inline]
    pub fn under_inv(&self, x: Elem, y: Elem) -> Elem {
        self.under_inv[x * self.n + y]
    }

    #[inline]
    pub fn over_inv(&self, x: Elem, y: Elem) -> Elem {
        self.over_inv[x * self.n + y]
    }

    /// `H⁻¹`: recovers `(x, y)` from `(y ⊻ x, x ⊼ y)`.
    #[inline]
    pub fn pair_inv(&self, over_image: Elem, under_image: Elem) -> (Elem, Elem) {
        let p = self.pair_inv[over_image * self.n + under_image];
        (p / self.n, p % self.n)
    }

    /// The kink map `k`, the unique bijection with `k(x) ⊻ k(x) = x`.
    #[inline]
    pub fn kink(&self, x: Elem) -> Elem {
        self.kink[x]
    }

    /// True when `x ⊻ y = x` everywhere, i.e. the biquandle is a quandle.
    pub fn is_quandle(&self) -> bool {
        (0..self.n * self.n).all(|i| self.over[i] == i / self.n)
    }

    pub fn under_rows(&self) -> Vec<Vec<usize>> {
        op_rows(self.n, &self.under)
    }

    pub fn over_rows(&self) -> Vec<Vec<usize>> {
        op_rows(self.n, &self.over)
    }

    /// Row-major `(under, over)` encoding, used for census ordering.
    pub fn encoding(&self) -> (&[Elem], &[Elem]) {
        (&self.under, &self.over)
    }
}

fn kink_table(n: usize, over: &[Elem]) -> Option<Vec<Elem>> {
    let mut k = vec![usize::MAX; n];
    for y in 0..n {
        let d = over[y * n + y];
        if k[d] != usize::MAX {
            return None;
        }
        k[d] = y;
    }
    Some(k)
}

/// The derived quandle `Q(X)`: `x ∗ y = (x ⊼ y) ⊻⁻¹ y` on the same carrier.
///
/// The quandle axioms are re-verified on every call.
pub fn derived_quandle(x: &FiniteBiquandle) -> FiniteQuandle {
    let n = x.order();
    let op = (0..n * n).map(|i| x.over_inv(x.under(i / n, i % n), i % n)).collect();
    match FiniteQuandle::from_flat(n, op) {
        Ok(q) => q,
        Err(e) => panic!("derived quandle of a biquandle fails the quandle axioms: {e}"),
    }
}

/// The kink map as a permutation vector, with uniqueness asserted by
/// searching every diagonal preimage.
pub fn kink_map(x: &FiniteBiquandle) -> Vec<Elem> {
    let n = x.order();
    (0..n)
        .map(|target| {
            let pre: Vec<Elem> = (0..n).filter(|&y| x.over(y, y) == target).collect();
            assert_eq!(pre.len(), 1, "diagonal map is not a bijection at {target}");
            debug_assert_eq!(x.under(pre[0], pre[0]), target);
            pre[0]
        })
        .collect()
}

/// A quandle viewed as a biquandle with `x ⊻ y = x`.
pub fn quandle_as_biquandle(q: &FiniteQuandle) -> FiniteBiquandle {
    let n = q.order();
    let over = (0..n * n).map(|i| i / n).collect();
    FiniteBiquandle::from_flat(n, q.op.clone(), over).expect("a quandle is a biquandle")
}

pub fn trivial_quandle(n: usize) -> FiniteQuandle {
    FiniteQuandle::from_fn(n, |a, _| a).expect("trivial quandle")
}

/// Dihedral quandle `a ∗ b = 2b − a mod n`.
pub fn dihedral(n: usize) -> FiniteQuandle {
    FiniteQuandle::from_fn(n, |a, b| (2 * b + n - a) % n).expect("dihedral quandle")
}

/// Alexander biquandle over `Z/m`: `x ⊼ y = t·x + (s − t)·y`, `x ⊻ y = s·x`.
pub fn alexander(m: usize, s: usize, t: usize) -> Result<FiniteBiquandle> {
    let unit = |v: usize| m > 0 && gcd(v % m, m) == 1;
    if !unit(s) || !unit(t) {
        return Err(Error::Structure(format!("alexander({m},{s},{t}): s and t must be units mod {m}")));
    }
    let (s, t) = (s % m, t % m);
    FiniteBiquandle::from_fns(m, |x, y| (t * x + (s + m - t) * y) % m, |x, _| (s * x) % m)
}

/// Both operations `x ↦ x + 1 mod n`; the finite reduction of the integer example.
pub fn shift(n: usize) -> FiniteBiquandle {
    FiniteBiquandle::from_fns(n, |x, _| (x + 1) % n, |x, _| (x + 1) % n).expect("shift biquandle")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
