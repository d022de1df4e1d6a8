//! Brute-force feasibility by basic-solution enumeration.
//!
//! Shares no code with the simplex: the system is put in equality form, columns
//! forced to zero by nonnegative zero-right-hand-side rows are pruned, and every
//! set of `rank` remaining columns is tried as a basis.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::lp::{ConstraintSystem, FeasibilityResult, Relation, Status};
use crate::error::{Error, Result};

/// Upper bound on the number of candidate bases examined.
pub const ORACLE_CAP: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Solve `B z = b` exactly; `None` if `B` is singular.
fn solve_square(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let k = m.len();
    for c in 0..k {
        let p = (c..k).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let pv = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v /= &pv;
        }
        for r in 0..k {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let (src, dst) = if r < c {
                    let (lo, hi) = m.split_at_mut(c);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = m.split_at_mut(r);
                    (&lo[c], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= &f * s;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[k].clone()).collect())
}

struct Reduced {
    n: usize,
    /// Surviving column ids (original variables first, then slacks).
    cols: Vec<usize>,
    /// Independent rows over `cols`, right-hand side last.
    red: Vec<Vec<BigRational>>,
}

enum Prepared {
    Infeasible,
    Reduced(Reduced),
}

fn prepare(cs: &ConstraintSystem) -> Result<Prepared> {
    let n = cs.num_variables();
    // Equality form: original variables, then one slack per inequality.
    let slacks = cs.rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let width = n + slacks;
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::with_capacity(cs.rows.len());
    let mut k = n;
    for r in &cs.rows {
        let mut a = vec![BigRational::zero(); width];
        for (j, c) in &r.coeffs {
            if *j >= n {
                return Err(Error::Precondition(format!("row `{}` out of range", r.provenance)));
            }
            a[*j] += c;
        }
        match r.relation {
            Relation::Eq => {}
            Relation::Le => {
                a[k] = BigRational::one();
                k += 1;
            }
            Relation::Ge => {
                a[k] = -BigRational::one();
                k += 1;
            }
        }
        let mut b = r.rhs.clone();
        if b.is_negative() {
            a.iter_mut().for_each(|v| *v = -v.clone());
            b = -b;
        }
        rows.push((a, b));
    }

    // Prune columns that a single-signed row with zero rhs forces to zero.
    let mut alive = vec![true; width];
    loop {
        let mut changed = false;
        for (a, b) in &rows {
            let active: Vec<usize> = (0..width).filter(|&j| alive[j] && !a[j].is_zero()).collect();
            let nonneg = active.iter().all(|&j| a[j].is_positive());
            let nonpos = active.iter().all(|&j| a[j].is_negative());
            if b.is_zero() && (nonneg || nonpos) {
                for j in active {
                    alive[j] = false;
                    changed = true;
                }
            } else if b.is_positive() && nonpos {
                return Ok(Prepared::Infeasible);
            }
        }
        if !changed {
            break;
        }
    }
    let cols: Vec<usize> = (0..width).filter(|&j| alive[j]).collect();

    // Row-reduce on the surviving columns to find the rank and check consistency.
    let mut red: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(a, b)| cols.iter().map(|&j| a[j].clone()).chain([b.clone()]).collect())
        .collect();
    let nc = cols.len();
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..red.len()).find(|&r| !red[r][c].is_zero()) else {
            continue;
        };
        red.swap(rank, p);
        let pv = red[rank][c].clone();
        for v in red[rank].iter_mut() {
            *v /= &pv;
        }
        let pivot = red[rank].clone();
        for (r, row) in red.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
        rank += 1;
    }
    if red[rank..].iter().any(|row| !row[nc].is_zero()) {
        return Ok(Prepared::Infeasible);
    }
    red.truncate(rank);
    Ok(Prepared::Reduced(Reduced { n, cols, red }))
}

impl Reduced {
    /// Visit every basic feasible solution (projected onto the original
    /// variables) until `visit` returns `false`.
    fn for_each_vertex(&self, mut visit: impl FnMut(Vec<BigRational>) -> bool) -> Result<()> {
        let rank = self.red.len();
        let nc = self.cols.len();
        if rank == 0 {
            visit(vec![BigRational::zero(); self.n]);
            return Ok(());
        }
        let count = binomial(nc, rank);
        if count > ORACLE_CAP {
            return Err(Error::SizeCap(format!(
                "{count} candidate bases ({nc} columns, rank {rank}) exceed {ORACLE_CAP}"
            )));
        }
        for basis in (0..nc).combinations(rank) {
            let square = self
                .red
                .iter()
                .map(|row| basis.iter().map(|&c| row[c].clone()).chain([row[nc].clone()]).collect())
                .collect();
            let Some(z) = solve_square(square) else {
                continue;
            };
            if z.iter().any(|v| v.is_negative()) {
                continue;
            }
            let mut x = vec![BigRational::zero(); self.n];
            for (&c, v) in basis.iter().zip(z) {
                if self.cols[c] < self.n {
                    x[self.cols[c]] = v;
                }
            }
            if !visit(x) {
                break;
            }
        }
        Ok(())
    }
}

/// Exact feasibility decision, independent of [`super::solve`]. Ignores the
/// objective. Feasible results carry a verified witness; no certificate.
pub fn enumerate_oracle(cs: &ConstraintSystem) -> Result<FeasibilityResult> {
    let mut found = None;
    if let Prepared::Reduced(r) = prepare(cs)? {
        r.for_each_vertex(|x| {
            found = Some(x);
            false
        })?;
    }
    let Some(x) = found else {
        return Ok(FeasibilityResult {
            status: Status::Infeasible,
            witness: None,
            certificate: None,
            objective_value: None,
        });
    };
    let mut probe = cs.clone();
    probe.objective = None;
    probe
        .check_witness(&x)
        .map_err(|e| Error::Internal(format!("oracle witness failed verification: {e}")))?;
    Ok(FeasibilityResult {
        status: Status::Feasible,
        witness: Some(x),
        certificate: None,
        objective_value: None,
    })
}

/// Every basic feasible solution of the system. For a bounded feasible region
/// these are its vertices, so a variable can be positive at some feasible point
/// exactly when it is positive at one of them.
pub fn enumerate_vertices(cs: &ConstraintSystem) -> Result<Vec<Vec<BigRational>>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    if let Prepared::Reduced(r) = prepare(cs)? {
        r.for_each_vertex(|x| {
            if !out.contains(&x) {
                out.push(x);
            }
            true
        })?;
    }
    Ok(out)
}

/// Variables that are positive at some feasible point of a bounded system.
pub fn possible_support(cs: &ConstraintSystem) -> Result<Vec<usize>> {
    let vertices = enumerate_vertices(cs)?;
    Ok((0..cs.num_variables())
        .filter(|&j| vertices.iter().any(|x| x[j].is_positive()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nogo::lp::Row;
    use crate::rational::rat;

    #[test]
    fn one_context_one_outcome() {
        let mut cs = ConstraintSystem::new(vec!["w".into()]);
        cs.push(Row::sum([0], Relation::Eq, rat(1, 1), "born"));
        let r = enumerate_oracle(&cs).unwrap();
        assert_eq!(r.status, Status::Feasible);
        assert_eq!(r.witness.unwrap(), vec![rat(1, 1)]);
    }

    #[test]
    fn zero_row_prunes() {
        let mut cs = ConstraintSystem::new(vec!["a".into(), "b".into()]);
        cs.push(Row::sum([0, 1], Relation::Eq, rat(1, 1), "norm"));
        cs.push(Row::sum([0], Relation::Eq, rat(0, 1), "tie"));
        cs.push(Row::sum([1], Relation::Le, rat(1, 2), "cap"));
        assert_eq!(enumerate_oracle(&cs).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn inequality_feasible() {
        let mut cs = ConstraintSystem::new(vec!["x".into(), "y".into()]);
        cs.push(Row::sum([0, 1], Relation::Ge, rat(2, 1), "floor"));
        cs.push(Row::sum([0], Relation::Le, rat(1, 1), "x cap"));
        let r = enumerate_oracle(&cs).unwrap();
        assert_eq!(r.status, Status::Feasible);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 0), 1);
    }
}
