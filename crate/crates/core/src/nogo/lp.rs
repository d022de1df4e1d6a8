//! Exact linear feasibility over nonnegative variables.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::format_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// `Σ coeffs · x  (relation)  rhs`, tagged with where it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
    pub provenance: String,
}

impl Row {
    pub fn new(
        coeffs: Vec<(usize, BigRational)>,
        relation: Relation,
        rhs: BigRational,
        provenance: impl Into<String>,
    ) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
            provenance: provenance.into(),
        }
    }

    /// Sum of the listed variables with coefficient 1.
    pub fn sum(vars: impl IntoIterator<Item = usize>, relation: Relation, rhs: BigRational, provenance: impl Into<String>) -> Self {
        Self::new(
            vars.into_iter().map(|v| (v, BigRational::one())).collect(),
            relation,
            rhs,
            provenance,
        )
    }

    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().map(|(j, c)| c * &x[*j]).sum()
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let l = self.lhs(x);
        match self.relation {
            Relation::Eq => l == self.rhs,
            Relation::Le => l <= self.rhs,
            Relation::Ge => l >= self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub sense: Sense,
    pub coeffs: Vec<(usize, BigRational)>,
    pub label: String,
}

impl Objective {
    pub fn value(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().map(|(j, c)| c * &x[*j]).sum()
    }
}

/// Variables are nonnegative; every row carries a provenance tag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub variables: Vec<String>,
    pub rows: Vec<Row>,
    pub objective: Option<Objective>,
}

impl ConstraintSystem {
    pub fn new(variables: Vec<String>) -> Self {
        Self {
            variables,
            rows: Vec::new(),
            objective: None,
        }
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> usize {
        self.variables.push(name.into());
        self.variables.len() - 1
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// A copy without the rows whose provenance satisfies `drop`.
    pub fn without_rows(&self, drop: impl Fn(&str) -> bool) -> Self {
        Self {
            variables: self.variables.clone(),
            rows: self.rows.iter().filter(|r| !drop(&r.provenance)).cloned().collect(),
            objective: self.objective.clone(),
        }
    }

    pub fn rows_tagged(&self, prefix: &str) -> impl Iterator<Item = &Row> {
        let prefix = prefix.to_string();
        self.rows.iter().filter(move |r| r.provenance.starts_with(&prefix))
    }

    fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        for r in &self.rows {
            if let Some((j, _)) = r.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(Error::Precondition(format!(
                    "row `{}` references variable {j} of {n}",
                    r.provenance
                )));
            }
        }
        if let Some(obj) = &self.objective {
            if obj.coeffs.iter().any(|(j, _)| *j >= n) {
                return Err(Error::Precondition("objective references a missing variable".into()));
            }
        }
        Ok(())
    }

    /// Rows violated by `x`, or a negative entry.
    pub fn check_witness(&self, x: &[BigRational]) -> std::result::Result<(), String> {
        if x.len() != self.variables.len() {
            return Err(format!("{} values for {} variables", x.len(), self.variables.len()));
        }
        if let Some(j) = x.iter().position(|v| v.is_negative()) {
            return Err(format!("variable `{}` is negative", self.variables[j]));
        }
        match self.rows.iter().find(|r| !r.holds(x)) {
            Some(r) => Err(format!(
                "row `{}` fails: lhs {} {} {}",
                r.provenance,
                format_rational(&r.lhs(x)),
                r.relation,
                format_rational(&r.rhs)
            )),
            None => Ok(()),
        }
    }
}

/// Row multipliers `y` proving infeasibility.
///
/// Sign convention: `y` is free on `=` rows, `y ≥ 0` on `<=` rows and `y ≤ 0`
/// on `>=` rows. Then every feasible `x ≥ 0` satisfies
/// `0 ≤ (yᵀA)·x ≤ yᵀb`, so `yᵀA ≥ 0` together with `yᵀb < 0` is a contradiction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<BigRational>,
}

impl FarkasCertificate {
    /// `(yᵀA, yᵀb)`.
    pub fn combination(&self, cs: &ConstraintSystem) -> (Vec<BigRational>, BigRational) {
        let mut combo = vec![BigRational::zero(); cs.variables.len()];
        let mut rhs = BigRational::zero();
        for (y, r) in self.multipliers.iter().zip(&cs.rows) {
            if y.is_zero() {
                continue;
            }
            for (j, c) in &r.coeffs {
                combo[*j] += y * c;
            }
            rhs += y * &r.rhs;
        }
        (combo, rhs)
    }

    pub fn verify(&self, cs: &ConstraintSystem) -> std::result::Result<(), String> {
        if self.multipliers.len() != cs.rows.len() {
            return Err(format!(
                "{} multipliers for {} rows",
                self.multipliers.len(),
                cs.rows.len()
            ));
        }
        for (y, r) in self.multipliers.iter().zip(&cs.rows) {
            let bad = match r.relation {
                Relation::Eq => false,
                Relation::Le => y.is_negative(),
                Relation::Ge => y.is_positive(),
            };
            if bad {
                return Err(format!("multiplier of `{}` has the wrong sign", r.provenance));
            }
        }
        let (combo, rhs) = self.combination(cs);
        if let Some(j) = combo.iter().position(|c| c.is_negative()) {
            return Err(format!("combined coefficient of `{}` is negative", cs.variables[j]));
        }
        if !rhs.is_negative() {
            return Err(format!("combined right-hand side {} is not negative", format_rational(&rhs)));
        }
        Ok(())
    }

    /// Rows with a nonzero multiplier.
    pub fn support<'a>(&'a self, cs: &'a ConstraintSystem) -> impl Iterator<Item = (&'a Row, &'a BigRational)> {
        cs.rows
            .iter()
            .zip(&self.multipliers)
            .filter(|(_, y)| !y.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub status: Status,
    pub witness: Option<Vec<BigRational>>,
    pub certificate: Option<FarkasCertificate>,
    /// Optimal objective value when an objective is set and the system is feasible.
    pub objective_value: Option<BigRational>,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status != Status::Infeasible
    }
}

struct Tableau {
    /// `m` rows of `ncols` coefficients followed by the right-hand side.
    a: Vec<Vec<BigRational>>,
    /// Reduced costs followed by minus the objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimize with Bland's rule over columns `< allowed`. `false` if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let rhs = self.ncols;
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn value(&self, j: usize) -> BigRational {
        self.basis
            .iter()
            .position(|&b| b == j)
            .map(|r| self.a[r][self.ncols].clone())
            .unwrap_or_else(BigRational::zero)
    }
}

/// Two-phase exact simplex. Infeasible results carry a Farkas certificate and
/// feasible ones a witness; both are re-verified before returning.
pub fn solve(cs: &ConstraintSystem) -> Result<FeasibilityResult> {
    cs.validate()?;
    let n = cs.variables.len();
    let m = cs.rows.len();
    let slack_rows: Vec<usize> = (0..m).filter(|&i| cs.rows[i].relation != Relation::Eq).collect();
    let ns = slack_rows.len();
    let art0 = n + ns;
    let ncols = art0 + m;

    let mut sign = vec![BigRational::one(); m];
    let mut a = vec![vec![BigRational::zero(); ncols + 1]; m];
    for (i, r) in cs.rows.iter().enumerate() {
        for (j, c) in &r.coeffs {
            a[i][*j] += c;
        }
        a[i][ncols] = r.rhs.clone();
    }
    for (k, &i) in slack_rows.iter().enumerate() {
        a[i][n + k] = match cs.rows[i].relation {
            Relation::Le => BigRational::one(),
            _ => -BigRational::one(),
        };
    }
    for i in 0..m {
        if a[i][ncols].is_negative() {
            sign[i] = -BigRational::one();
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
        }
        a[i][art0 + i] = BigRational::one();
    }

    let mut obj = vec![BigRational::zero(); ncols + 1];
    for row in &a {
        for j in 0..art0 {
            obj[j] -= &row[j];
        }
        obj[ncols] -= &row[ncols];
    }
    let mut t = Tableau {
        a,
        obj,
        basis: (art0..ncols).collect(),
        ncols,
    };
    t.optimize(ncols);
    let phase1 = -t.obj[ncols].clone();

    if phase1.is_positive() {
        // Phase-1 duals u_i = 1 − (reduced cost of artificial i) satisfy
        // uᵀA' ≤ 0 and uᵀb' > 0 on the sign-normalized system.
        let multipliers = (0..m)
            .map(|i| {
                let u = BigRational::one() - &t.obj[art0 + i];
                -(u * &sign[i])
            })
            .collect();
        let cert = FarkasCertificate { multipliers };
        cert.verify(cs)
            .map_err(|e| Error::Internal(format!("Farkas certificate failed verification: {e}")))?;
        return Ok(FeasibilityResult {
            status: Status::Infeasible,
            witness: None,
            certificate: Some(cert),
            objective_value: None,
        });
    }

    // Drive zero-level artificials out where possible; rows where that fails
    // are redundant and stay inert.
    for r in 0..m {
        if t.basis[r] >= art0 {
            if let Some(c) = (0..art0).find(|&j| !t.a[r][j].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    let mut objective_value = None;
    if let Some(o) = &cs.objective {
        let mut c = vec![BigRational::zero(); ncols];
        for (j, v) in &o.coeffs {
            c[*j] += match o.sense {
                Sense::Minimize => v.clone(),
                Sense::Maximize => -v.clone(),
            };
        }
        let mut obj = vec![BigRational::zero(); ncols + 1];
        obj[..ncols].clone_from_slice(&c);
        for (r, &b) in t.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (v, av) in obj.iter_mut().zip(&t.a[r]) {
                *v -= &c[b] * av;
            }
        }
        t.obj = obj;
        if !t.optimize(art0) {
            return Ok(FeasibilityResult {
                status: Status::Unbounded,
                witness: None,
                certificate: None,
                objective_value: None,
            });
        }
    }

    let x: Vec<BigRational> = (0..n).map(|j| t.value(j)).collect();
    cs.check_witness(&x)
        .map_err(|e| Error::Internal(format!("simplex witness failed verification: {e}")))?;
    if let Some(o) = &cs.objective {
        objective_value = Some(o.value(&x));
    }
    Ok(FeasibilityResult {
        status: Status::Feasible,
        witness: Some(x),
        certificate: None,
        objective_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn one_var(rhs: i64) -> ConstraintSystem {
        let mut cs = ConstraintSystem::new(vec!["x".into()]);
        cs.push(Row::sum([0], Relation::Eq, rat(rhs, 1), "x"));
        cs
    }

    #[test]
    fn trivial_feasible() {
        let r = solve(&one_var(1)).unwrap();
        assert_eq!(r.status, Status::Feasible);
        assert_eq!(r.witness.unwrap(), vec![rat(1, 1)]);
    }

    #[test]
    fn trivial_infeasible() {
        let cs = one_var(-1);
        let r = solve(&cs).unwrap();
        assert_eq!(r.status, Status::Infeasible);
        r.certificate.unwrap().verify(&cs).unwrap();
    }

    #[test]
    fn mixed_relations() {
        // x + y <= 1, x >= 2: infeasible
        let mut cs = ConstraintSystem::new(vec!["x".into(), "y".into()]);
        cs.push(Row::sum([0, 1], Relation::Le, rat(1, 1), "cap"));
        cs.push(Row::sum([0], Relation::Ge, rat(2, 1), "floor"));
        let r = solve(&cs).unwrap();
        assert_eq!(r.status, Status::Infeasible);
        let cert = r.certificate.unwrap();
        cert.verify(&cs).unwrap();
        assert!(cert.multipliers[0].is_positive());
        assert!(cert.multipliers[1].is_negative());
    }

    #[test]
    fn optimization_and_unbounded() {
        let mut cs = ConstraintSystem::new(vec!["x".into(), "y".into()]);
        cs.push(Row::new(
            vec![(0, rat(1, 1)), (1, rat(2, 1))],
            Relation::Le,
            rat(4, 1),
            "budget",
        ));
        cs.push(Row::sum([0], Relation::Le, rat(3, 1), "x cap"));
        cs.objective = Some(Objective {
            sense: Sense::Maximize,
            coeffs: vec![(0, rat(1, 1)), (1, rat(1, 1))],
            label: "x+y".into(),
        });
        let r = solve(&cs).unwrap();
        assert_eq!(r.objective_value, Some(rat(7, 2)));

        let mut open = ConstraintSystem::new(vec!["x".into()]);
        open.push(Row::sum([0], Relation::Ge, rat(1, 1), "floor"));
        open.objective = Some(Objective {
            sense: Sense::Maximize,
            coeffs: vec![(0, rat(1, 1))],
            label: "x".into(),
        });
        assert_eq!(solve(&open).unwrap().status, Status::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut cs = ConstraintSystem::new(vec!["x".into(), "y".into()]);
        cs.push(Row::sum([0, 1], Relation::Eq, rat(1, 1), "a"));
        cs.push(Row::sum([0, 1], Relation::Eq, rat(1, 1), "a again"));
        cs.push(Row::sum([0], Relation::Eq, rat(1, 3), "x"));
        let r = solve(&cs).unwrap();
        assert_eq!(r.witness.unwrap(), vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn tampered_certificate_rejected() {
        let cs = one_var(-1);
        let mut cert = solve(&cs).unwrap().certificate.unwrap();
        cert.multipliers[0] = -cert.multipliers[0].clone();
        assert!(cert.verify(&cs).is_err());
    }
}
