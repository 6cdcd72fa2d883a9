//! Biquandles whose operations are computable maps rather than tables.
//!
//! Infinite carriers admit no exhaustive check, so [`sampled_axiom_check`]
//! evaluates BQ1–BQ3 on seeded pseudo-random tuples and marks its report as
//! sampled.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Axiom, AxiomReport, Elem, FiniteBiquandle, FiniteQuandle, Witnesses};
use crate::{Error, Result};

pub type Point = Vec<i64>;
type BinOp = Box<dyn Fn(&[i64], &[i64]) -> Point + Send + Sync>;
type PairOp = Box<dyn Fn(&[i64], &[i64]) -> (Point, Point) + Send + Sync>;

pub const DEFAULT_SAMPLES: usize = 10_000;
/// Integer coordinates are drawn from `-SAMPLE_RADIUS..=SAMPLE_RADIUS`.
pub const SAMPLE_RADIUS: i64 = 1_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Integers,
    IntegerPairs,
    /// Mixed-radix finite carrier; coordinate `i` ranges over `0..sizes[i]`.
    Finite(Vec<usize>),
}

impl Carrier {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Point {
        match self {
            Carrier::Integers => vec![rng.gen_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS)],
            Carrier::IntegerPairs => (0..2).map(|_| rng.gen_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS)).collect(),
            Carrier::Finite(sizes) => sizes.iter().map(|&s| rng.gen_range(0..s as i64)).collect(),
        }
    }
}

pub struct FunctionalBiquandle {
    pub name: String,
    pub carrier: Carrier,
    under: BinOp,
    over: BinOp,
    under_inv: BinOp,
    over_inv: BinOp,
    /// Inverse of `H(x, y) = (y ⊻ x, x ⊼ y)`.
    pair_inv: PairOp,
}

impl std::fmt::Debug for FunctionalBiquandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionalBiquandle").field("name", &self.name).field("carrier", &self.carrier).finish()
    }
}

impl FunctionalBiquandle {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        carrier: Carrier,
        under: impl Fn(&[i64], &[i64]) -> Point + Send + Sync + 'static,
        over: impl Fn(&[i64], &[i64]) -> Point + Send + Sync + 'static,
        under_inv: impl Fn(&[i64], &[i64]) -> Point + Send + Sync + 'static,
        over_inv: impl Fn(&[i64], &[i64]) -> Point + Send + Sync + 'static,
        pair_inv: impl Fn(&[i64], &[i64]) -> (Point, Point) + Send + Sync + 'static,
    ) -> Self {
        FunctionalBiquandle {
            name: name.into(),
            carrier,
            under: Box::new(under),
            over: Box::new(over),
            under_inv: Box::new(under_inv),
            over_inv: Box::new(over_inv),
            pair_inv: Box::new(pair_inv),
        }
    }

    pub fn under(&self, x: &[i64], y: &[i64]) -> Point {
        (self.under)(x, y)
    }

    pub fn over(&self, x: &[i64], y: &[i64]) -> Point {
        (self.over)(x, y)
    }

    /// Materializes a finite carrier as tables, encoding points in mixed radix.
    pub fn to_finite(&self) -> Option<Result<FiniteBiquandle>> {
        let Carrier::Finite(sizes) = &self.carrier else { return None };
        let n: usize = sizes.iter().product();
        let decode = |mut i: usize| -> Point {
            let mut p = vec![0; sizes.len()];
            for (c, &s) in sizes.iter().enumerate().rev() {
                p[c] = (i % s) as i64;
                i /= s;
            }
            p
        };
        let encode = |p: &[i64]| p.iter().zip(sizes).fold(0usize, |acc, (&v, &s)| acc * s + v as usize);
        let table = |op: &BinOp| -> Vec<Elem> {
            (0..n * n).map(|i| encode(&op(&decode(i / n), &decode(i % n)))).collect()
        };
        Some(FiniteBiquandle::from_flat(n, table(&self.under), table(&self.over)))
    }
}

/// Evaluates BQ1–BQ3 (and the supplied inverses) on `samples` seeded triples.
pub fn sampled_axiom_check(x: &FunctionalBiquandle, samples: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Witnesses::default();
    let flat = |ps: &[&Point]| ps.iter().flat_map(|p| p.iter().copied()).collect::<Vec<i64>>();
    for _ in 0..samples.max(1) {
        let a = x.carrier.sample(&mut rng);
        let b = x.carrier.sample(&mut rng);
        let c = x.carrier.sample(&mut rng);
        let (un, ov) = (|p: &[i64], q: &[i64]| x.under(p, q), |p: &[i64], q: &[i64]| x.over(p, q));

        if un(&a, &a) != ov(&a, &a) {
            w.record_raw(Axiom::BQ1, "x under x = x over x", flat(&[&a]));
        }
        if (x.under_inv)(&un(&a, &b), &b) != a || un(&(x.under_inv)(&a, &b), &b) != a {
            w.record_raw(Axiom::BQ2, "under column bijective", flat(&[&a, &b]));
        }
        if (x.over_inv)(&ov(&a, &b), &b) != a || ov(&(x.over_inv)(&a, &b), &b) != a {
            w.record_raw(Axiom::BQ2, "over column bijective", flat(&[&a, &b]));
        }
        let back = (x.pair_inv)(&ov(&b, &a), &un(&a, &b));
        let (p, q) = (x.pair_inv)(&a, &b);
        if back != (a.clone(), b.clone()) || (ov(&q, &p), un(&p, &q)) != (a.clone(), b.clone()) {
            w.record_raw(Axiom::BQ2, "H bijective", flat(&[&a, &b]));
        }
        if un(&un(&a, &b), &un(&c, &b)) != un(&un(&a, &c), &ov(&b, &c)) {
            w.record_raw(Axiom::BQ3, "under-under", flat(&[&a, &b, &c]));
        }
        if ov(&ov(&a, &b), &ov(&c, &b)) != ov(&ov(&a, &c), &un(&b, &c)) {
            w.record_raw(Axiom::BQ3, "over-over", flat(&[&a, &b, &c]));
        }
        if ov(&un(&a, &b), &un(&c, &b)) != un(&ov(&a, &c), &ov(&b, &c)) {
            w.record_raw(Axiom::BQ3, "mixed", flat(&[&a, &b, &c]));
        }
    }
    AxiomReport::sampled(w.into_vec())
}

/// `Z` with `x ⊼ y = x ⊻ y = x + 1`.
pub fn integer_shift() -> FunctionalBiquandle {
    FunctionalBiquandle::new(
        "Z shift",
        Carrier::Integers,
        |x, _| vec![x[0] + 1],
        |x, _| vec![x[0] + 1],
        |x, _| vec![x[0] - 1],
        |x, _| vec![x[0] - 1],
        |p, q| (vec![q[0] - 1], vec![p[0] - 1]),
    )
}

/// `Z²` with `(x, a) ⊼ (y, b) = (x + step, a + y)` and `(x, a) ⊻ (y, b) = (x + 1, a + y)`.
///
/// `step = 1` is the biquandle generated by `(0, 0)`; other steps break BQ1.
pub fn integer_pair_shift(step: i64) -> FunctionalBiquandle {
    let by = |s: i64| move |p: &[i64], q: &[i64]| vec![p[0] + s, p[1] + q[0]];
    let back = |s: i64| move |p: &[i64], q: &[i64]| vec![p[0] - s, p[1] - q[0]];
    FunctionalBiquandle::new(
        if step == 1 { "Z^2 shift".to_string() } else { format!("Z^2 with under step {step}") },
        Carrier::IntegerPairs,
        by(step),
        by(1),
        back(step),
        back(1),
        // H((x,a),(y,b)) = ((y+1, b+x), (x+step, a+y))
        move |u, v| {
            let x = v[0] - step;
            let y = u[0] - 1;
            (vec![x, v[1] - y], vec![y, u[1] - x])
        },
    )
}

/// Whether right translation by `q` and by `r` differ at `p`: returns
/// `(p ⊼ q, p ⊼ r)` when they differ.
pub fn right_translation_witness(x: &FunctionalBiquandle, p: &[i64], q: &[i64], r: &[i64]) -> Option<(Point, Point)> {
    let (a, b) = (x.under(p, q), x.under(p, r));
    (a != b).then_some((a, b))
}

/// A finite permutation group together with the image of each quandle
/// element, standing in for a quotient of the associated group `As(Q)`.
///
/// Products are right actions: `(g·h)(i) = h(g(i))`.
#[derive(Clone, Debug)]
pub struct AsImage {
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    images: Vec<usize>,
    identity: usize,
}

impl AsImage {
    /// Closes the generated group and checks `ρ(x)ρ(y) = ρ(y)ρ(x∗y)`.
    pub fn new(q: &FiniteQuandle, degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if generators.len() != q.order() {
            return Err(Error::Structure(format!(
                "need one permutation per quandle element ({}), got {}",
                q.order(),
                generators.len()
            )));
        }
        for g in &generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::Structure(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            let g = elements[frontier].clone();
            frontier += 1;
            for s in &generators {
                let p = compose(&g, s);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
        }
        let images = generators.iter().map(|g| index[g]).collect();
        let image = AsImage { elements, index, images, identity: 0 };
        for x in 0..q.order() {
            for y in 0..q.order() {
                let lhs = image.mul(image.images[x], image.images[y]);
                let rhs = image.mul(image.images[y], image.images[q.op(x, y)]);
                if lhs != rhs {
                    return Err(Error::Structure(format!(
                        "generator images violate the associated-group relation at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(image)
    }

    /// Inner automorphism group: `ρ(b)` is the column map `a ↦ a ∗ b`.
    pub fn inner(q: &FiniteQuandle) -> Self {
        let n = q.order();
        let gens = (0..n).map(|b| (0..n).map(|a| q.op(a, b)).collect()).collect();
        AsImage::new(q, n, gens).expect("column maps satisfy the relation by Q3")
    }

    /// The degree map onto `Z/m`, every generator mapped to rotation by one.
    pub fn cyclic(q: &FiniteQuandle, m: usize) -> Self {
        let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        AsImage::new(q, m, vec![rot; q.order()]).expect("abelian constant image")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.index[&compose(&self.elements[g], &self.elements[h])]
    }

    pub fn inv(&self, g: usize) -> usize {
        let p = &self.elements[g];
        let mut q = vec![0; p.len()];
        for (i, &j) in p.iter().enumerate() {
            q[j] = i;
        }
        self.index[&q]
    }

    pub fn generator(&self, b: Elem) -> usize {
        self.images[b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    g.iter().map(|&i| h[i]).collect()
}

/// Operations on `G × Q`: `(g, a) ⊼ (h, b) = (g·b, a ∗ b)` and
/// `(g, a) ⊻ (h, b) = ((h·b·h⁻¹)·g, a)`.
pub fn topological_biquandle_ops(group: &AsImage, q: &FiniteQuandle) -> FunctionalBiquandle {
    let g = std::sync::Arc::new(group.clone());
    let q = std::sync::Arc::new(q.clone());
    let sizes = vec![g.order(), q.order()];
    let u = |p: &[i64]| (p[0] as usize, p[1] as usize);
    let pt = |g: usize, a: usize| vec![g as i64, a as i64];

    let (g1, q1) = (g.clone(), q.clone());
    let under = move |p: &[i64], r: &[i64]| {
        let ((gp, a), (_, b)) = (u(p), u(r));
        pt(g1.mul(gp, g1.generator(b)), q1.op(a, b))
    };
    let g2 = g.clone();
    let over = move |p: &[i64], r: &[i64]| {
        let ((gp, a), (h, b)) = (u(p), u(r));
        let conj = g2.mul(g2.mul(h, g2.generator(b)), g2.inv(h));
        pt(g2.mul(conj, gp), a)
    };
    let (g3, q3) = (g.clone(), q.clone());
    let under_inv = move |p: &[i64], r: &[i64]| {
        let ((gp, a), (_, b)) = (u(p), u(r));
        pt(g3.mul(gp, g3.inv(g3.generator(b))), q3.inv_op(a, b))
    };
    let g4 = g.clone();
    let over_inv = move |p: &[i64], r: &[i64]| {
        let ((gp, a), (h, b)) = (u(p), u(r));
        let conj = g4.mul(g4.mul(h, g4.inv(g4.generator(b))), g4.inv(h));
        pt(g4.mul(conj, gp), a)
    };
    let (g5, q5) = (g, q);
    // H((g,a),(h,b)) = ((g·a·g⁻¹·h, b), (g·b, a∗b))
    let pair_inv = move |first: &[i64], second: &[i64]| {
        let ((h1, b), (g1, c)) = (u(first), u(second));
        let gp = g5.mul(g1, g5.inv(g5.generator(b)));
        let a = q5.inv_op(c, b);
        let conj_inv = g5.mul(g5.mul(gp, g5.inv(g5.generator(a))), g5.inv(gp));
        (pt(gp, a), pt(g5.mul(conj_inv, h1), b))
    };
    FunctionalBiquandle::new("As-image x Q", Carrier::Finite(sizes), under, over, under_inv, over_inv, pair_inv)
}
