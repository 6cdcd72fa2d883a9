//! Named algebras and diagrams.
//!
//! Algebra ids: `trivial_q{n}`, `dihedral{n}`, `alexander_{m}_{s}_{t}`,
//! `shift{n}`, `census3:{i}`. `census3` alone names the whole census.

use crate::algebra::{alexander, census, dihedral, quandle_as_biquandle, shift, trivial_quandle, FiniteBiquandle, FiniteQuandle};
use crate::diagram::fixtures::{self, DIAGRAMS, MOVE_PAIRS};
use crate::diagram::LinkDiagram;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum Algebra {
    Quandle(FiniteQuandle),
    Biquandle(FiniteBiquandle),
}

impl Algebra {
    pub fn to_biquandle(&self) -> FiniteBiquandle {
        match self {
            Algebra::Quandle(q) => quandle_as_biquandle(q),
            Algebra::Biquandle(x) => x.clone(),
        }
    }
}

fn number(s: &str, id: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Catalog(format!("bad number in algebra id '{id}'")))
}

pub fn algebra(id: &str) -> Result<Algebra> {
    let unknown = || Error::Catalog(format!("unknown algebra '{id}'"));
    if let Some(n) = id.strip_prefix("trivial_q") {
        let n = number(n, id)?;
        return if n == 0 { Err(unknown()) } else { Ok(Algebra::Quandle(trivial_quandle(n))) };
    }
    if let Some(n) = id.strip_prefix("dihedral") {
        let n = number(n, id)?;
        return if n == 0 { Err(unknown()) } else { Ok(Algebra::Quandle(dihedral(n))) };
    }
    if let Some(n) = id.strip_prefix("shift") {
        let n = number(n, id)?;
        return if n == 0 { Err(unknown()) } else { Ok(Algebra::Biquandle(shift(n))) };
    }
    if let Some(rest) = id.strip_prefix("alexander_") {
        let parts: Vec<&str> = rest.split('_').collect();
        let [m, s, t] = parts.as_slice() else { return Err(unknown()) };
        return Ok(Algebra::Biquandle(
            alexander(number(m, id)?, number(s, id)?, number(t, id)?).map_err(|e| Error::Catalog(e.to_string()))?,
        ));
    }
    if let Some(i) = id.strip_prefix("census3:") {
        let i = number(i, id)?;
        let all = census(3);
        let len = all.len();
        return all
            .into_iter()
            .nth(i)
            .map(Algebra::Biquandle)
            .ok_or_else(|| Error::Catalog(format!("census3 has {len} entries, index {i} out of range")));
    }
    Err(unknown())
}

pub fn biquandle(id: &str) -> Result<FiniteBiquandle> {
    algebra(id).map(|a| a.to_biquandle())
}

/// One id or the expanded `census3` family.
pub fn algebras(id: &str) -> Result<Vec<(String, FiniteBiquandle)>> {
    if id == "census3" {
        return Ok(census(3).into_iter().enumerate().map(|(i, x)| (format!("census3:{i}"), x)).collect());
    }
    Ok(vec![(id.to_string(), biquandle(id)?)])
}

pub fn diagram(id: &str) -> Result<LinkDiagram> {
    fixtures::fixture(id)
}

/// Units of `Z/m`.
pub fn units(m: usize) -> Vec<usize> {
    (1..m).filter(|&u| gcd(u, m) == 1).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The algebras the correspondence suite runs over beyond the census.
pub fn extra_algebras() -> Vec<(String, FiniteBiquandle)> {
    let mut v = vec![
        ("dihedral3".to_string(), quandle_as_biquandle(&dihedral(3))),
        ("dihedral5".to_string(), quandle_as_biquandle(&dihedral(5))),
    ];
    for s in units(3) {
        for t in units(3) {
            v.push((format!("alexander_3_{s}_{t}"), alexander(3, s, t).expect("units")));
        }
    }
    v
}

pub fn listing() -> Vec<String> {
    let mut v = vec![
        "trivial_q{n}".to_string(),
        "dihedral{n}".to_string(),
        "alexander_{m}_{s}_{t}".to_string(),
        "shift{n}".to_string(),
        format!("census3 (census3:0 .. census3:{})", census(3).len() - 1),
    ];
    v.extend(DIAGRAMS.iter().map(|d| format!("diagram {d}")));
    v.extend(MOVE_PAIRS.iter().map(|d| format!("move pair {d}")));
    v
}
