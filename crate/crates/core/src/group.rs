//! Finitely generated matrix groups given by generators.

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::sw::SwField;

#[derive(Clone, Debug)]
pub struct GroupInput<F: SwField> {
    pub field: F,
    pub n: usize,
    pub gens: Vec<Matrix<F::Elem>>,
    pub inverses: Vec<Matrix<F::Elem>>,
    pub mu: F::Mu,
}

impl<F: SwField> GroupInput<F> {
    /// Validates the generators, inverts them exactly and computes `μ`.
    pub fn new(field: F, n: usize, gens: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.n != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} has degree {} instead of {n}",
                    i + 1,
                    g.n
                )));
            }
            let inv = matrix::inverse(&field, g).map_err(|e| match e {
                Error::Singular => {
                    Error::InvalidInput(format!("generator {} is not invertible", i + 1))
                }
                other => other,
            })?;
            inverses.push(inv);
        }
        let mu = field.compute_mu(gens.iter().chain(&inverses))?;
        Ok(GroupInput {
            field,
            n,
            gens,
            inverses,
            mu,
        })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// The group generated by these generators and `extra`.
    pub fn extended(&self, extra: Matrix<F::Elem>) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(extra);
        Self::new(self.field.clone(), self.n, gens)
    }

    pub fn with_gens(&self, gens: Vec<Matrix<F::Elem>>) -> Result<Self> {
        Self::new(self.field.clone(), self.n, gens)
    }

    pub fn identity(&self) -> Matrix<F::Elem> {
        matrix::identity(&self.field, self.n)
    }

    pub fn format_gens(&self) -> Vec<Vec<Vec<String>>> {
        self.gens.iter().map(|g| matrix::format(&self.field, g)).collect()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn one(&self) -> F::Elem {
        self.field.one()
    }
}
