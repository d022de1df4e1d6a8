use super::amplitude::Amplitude;
use super::space::Space;
use super::state::StateVector;
use crate::error::{Error, Result};

/// A unitary on a labeled space. `matrix[i][j] = ⟨i|U|j⟩`.
#[derive(Clone, Debug)]
pub struct UnitaryOp {
    name: String,
    space: Space,
    matrix: Vec<Vec<Amplitude>>,
}

impl UnitaryOp {
    /// Checks `U†U = I`: identically for exact entries, within
    /// [`FLOAT_TOL`](super::FLOAT_TOL) entrywise otherwise.
    pub fn new(name: impl Into<String>, space: Space, matrix: Vec<Vec<Amplitude>>) -> Result<Self> {
        let n = space.dim();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::SpaceMismatch(format!(
                "matrix shape does not match {n}-mode space"
            )));
        }
        let op = Self {
            name: name.into(),
            space,
            matrix,
        };
        if let Some((i, j)) = op.unitarity_defect() {
            return Err(Error::NotUnitary(format!("{}: (U†U)[{i}][{j}] off", op.name)));
        }
        Ok(op)
    }

    pub fn identity(space: &Space) -> Self {
        let n = space.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Amplitude::one() } else { Amplitude::zero() })
                    .collect()
            })
            .collect();
        Self {
            name: "identity".into(),
            space: space.clone(),
            matrix,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn entry(&self, row: usize, col: usize) -> &Amplitude {
        &self.matrix[row][col]
    }

    pub fn is_exact(&self) -> bool {
        self.matrix.iter().flatten().all(Amplitude::is_exact)
    }

    /// First `(i, j)` where `U†U` differs from the identity.
    pub fn unitarity_defect(&self) -> Option<(usize, usize)> {
        let n = self.space.dim();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Amplitude::zero();
                for k in 0..n {
                    acc = &acc + &(&self.matrix[k][i].conj() * &self.matrix[k][j]);
                }
                let target = if i == j { Amplitude::one() } else { Amplitude::zero() };
                if !acc.approx_eq(&target) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect().is_none()
    }

    pub fn adjoint(&self) -> UnitaryOp {
        let n = self.space.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i].conj()).collect())
            .collect();
        UnitaryOp {
            name: format!("{}†", self.name),
            space: self.space.clone(),
            matrix,
        }
    }

    /// `next · self`: apply `self` first, then `next`.
    pub fn then(&self, next: &UnitaryOp) -> Result<UnitaryOp> {
        self.space.ensure_same(&next.space, "composition")?;
        let n = self.space.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Amplitude::zero(), |acc, k| {
                            &acc + &(&next.matrix[i][k] * &self.matrix[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(UnitaryOp {
            name: format!("{}·{}", next.name, self.name),
            space: self.space.clone(),
            matrix,
        })
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        self.space.ensure_same(v.space(), "apply")?;
        let amps = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.amplitudes())
                    .fold(Amplitude::zero(), |acc, (u, a)| &acc + &(u * a))
            })
            .collect();
        Ok(v.with_amplitudes(amps))
    }
}
