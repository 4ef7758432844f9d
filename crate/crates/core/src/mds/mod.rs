//! The double series `Z(s1, s2)`: direct and coefficient evaluation, the
//! character decomposition, the residue identities and the per-`n`
//! functional equation.

pub mod decomposition;
pub mod fe;
pub mod residue;
pub mod series;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{rel_err, C64};

pub use decomposition::{
    decomposition_identity, decomposition_sides, squarefree_prime_to_six, z_star, z_star_all, DecompositionSides,
};
pub use fe::{functional_equation_check, functional_equation_check_primitive, z_star_termwise_fe, FeNormalization};
pub use residue::{residue_identity_check, residue_product, residue_product_tail_corrected, ResidueProduct};
pub use series::{
    coefficient_row, odd_squarefree_up_to, z_coeff, z_direct, z_n_euler_product, z_n_oracle, z_n_oracle_batch,
    CoefficientSieve, PowerTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub m_cutoff: u64,
    pub n_cutoff: u64,
    pub local_order: u32,
    pub tolerance: f64,
}

impl TruncationSpec {
    pub fn new(m_cutoff: u64, n_cutoff: u64, local_order: u32, tolerance: f64) -> Result<Self> {
        if m_cutoff == 0 || n_cutoff == 0 || local_order == 0 {
            return Err(Error::domain("cutoffs and local order must be >= 1"));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::domain(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(Self { m_cutoff, n_cutoff, local_order, tolerance })
    }

    /// For comparisons between closed-form values; the cutoffs are all 1.
    pub fn exact(tolerance: f64) -> Self {
        Self { m_cutoff: 1, n_cutoff: 1, local_order: 1, tolerance }
    }
}

/// Two evaluations of the same quantity, flattened for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesComparison {
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub spec: TruncationSpec,
}

impl SeriesComparison {
    pub fn new(lhs: C64, rhs: C64, spec: TruncationSpec) -> Self {
        Self {
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err: (lhs - rhs).norm(),
            rel_err: rel_err(lhs, rhs),
            spec,
        }
    }

    pub fn lhs(&self) -> C64 {
        C64::new(self.lhs_re, self.lhs_im)
    }

    pub fn rhs(&self) -> C64 {
        C64::new(self.rhs_re, self.rhs_im)
    }

    pub fn passed(&self) -> bool {
        self.rel_err <= self.spec.tolerance
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_fields() {
        let c = SeriesComparison::new(C64::new(1.0, 0.0), C64::new(1.0, 1e-9), TruncationSpec::exact(1e-8));
        assert!((c.abs_err - 1e-9).abs() < 1e-24);
        assert!(c.passed());
        let z = SeriesComparison::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), TruncationSpec::exact(1e-8));
        assert_eq!(z.rel_err, 0.0);
        assert!(TruncationSpec::new(0, 1, 1, 1.0).is_err());
        assert!(TruncationSpec::new(1, 1, 1, 0.0).is_err());
    }
}
