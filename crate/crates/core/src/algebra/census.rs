use super::{biquandle_report, Elem, FiniteBiquandle};

/// Every biquandle of order `n`, as raw tables without isomorphism reduction.
///
/// Tables whose columns are not all permutations fail BQ2 and are skipped
/// before the full check. Output is lexicographic in the row-major
/// `(under, over)` encoding.
pub fn census(n: usize) -> Vec<FiniteBiquandle> {
    let tables = column_permutation_tables(n);
    let mut out = Vec::new();
    for u in &tables {
        // BQ1 forces diag(under) = diag(over); cheap filter before the cubic check.
        for o in &tables {
            if (0..n).any(|x| u[x * n + x] != o[x * n + x]) {
                continue;
            }
            if biquandle_report(n, u, o).passed {
                out.push(FiniteBiquandle::assemble(n, u.clone(), o.clone()));
            }
        }
    }
    out
}

/// All `n × n` tables whose columns are permutations, in lexicographic row-major order.
fn column_permutation_tables(n: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut table = vec![0; n * n];
    fill(n, 0, &mut table, &mut out);
    out
}

fn fill(n: usize, cell: usize, table: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
    if cell == n * n {
        out.push(table.clone());
        return;
    }
    let (row, col) = (cell / n, cell % n);
    for v in 0..n {
        if (0..row).any(|r| table[r * n + col] == v) {
            continue;
        }
        table[cell] = v;
        fill(n, cell + 1, table, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses() {
        assert_eq!(census(1).len(), 1);
        let c2 = census(2);
        assert!(!c2.is_empty());
        for x in census(3) {
            assert!(biquandle_report(3, x.encoding().0, x.encoding().1).passed);
        }
    }

    #[test]
    fn census_is_sorted() {
        let c = census(3);
        assert!(!c.is_empty());
        for w in c.windows(2) {
            assert!(w[0].encoding() < w[1].encoding());
        }
    }

    #[test]
    fn census_contains_known_instances() {
        let c = census(3);
        let d3 = crate::algebra::quandle_as_biquandle(&crate::algebra::dihedral(3));
        assert!(c.contains(&d3));
        assert!(c.contains(&crate::algebra::shift(3)));
    }
}
