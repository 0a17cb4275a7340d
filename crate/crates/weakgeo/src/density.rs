//! Mixed pre-selections: positive trace-1 operators with an explicit
//! two-projector eigendecomposition.

use crate::error::{Error, Result};
use crate::hermitian::HermitianOp;
use crate::ket::Ket;
use crate::tolerances::{EPS_HERM, EPS_NORM};

/// A qubit density operator ρ = (1−p)|φ⟩⟨φ| + p|φ⊥⟩⟨φ⊥| with p ≤ 1/2
/// by convention.
#[derive(Debug, Clone)]
pub struct DensityOp {
    op: HermitianOp,
    p: f64,
    phi: Ket,
    phi_perp: Ket,
}

impl DensityOp {
    /// Validate a matrix (Hermitian, trace 1, positive) and eigendecompose it.
    pub fn from_op(op: HermitianOp) -> Result<DensityOp> {
        let (t, bloch) = op.bloch_view()?;
        if (t - 1.0).abs() > EPS_HERM {
            return Err(Error::NotTraceZero(t - 1.0));
        }
        let r = (bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]).sqrt();
        let min_eig = (1.0 - r) / 2.0;
        if min_eig < -EPS_NORM {
            return Err(Error::NotPositive(min_eig));
        }
        let (p, phi) = if r < 1e-12 {
            // Maximally mixed: any eigenbasis works; pick the computational one.
            (0.5, Ket::zero())
        } else {
            ((1.0 - r) / 2.0, Ket::from_bloch(bloch)?)
        };
        let phi_perp = phi.orthogonal_complement()?;
        Ok(DensityOp {
            op,
            p: p.clamp(0.0, 0.5),
            phi,
            phi_perp,
        })
    }

    /// (1−p)|φ⟩⟨φ| + p|φ⊥⟩⟨φ⊥| for p ∈ [0, 1]; stored with p ≤ 1/2.
    pub fn from_mixture(p: f64, phi: &Ket) -> Result<DensityOp> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                p,
                lo: 0.0,
                hi: 1.0,
            });
        }
        let phi_perp = phi.orthogonal_complement()?;
        let op = HermitianOp::projector(phi)
            .scale(1.0 - p)
            .add(&HermitianOp::projector(&phi_perp).scale(p))?;
        if p <= 0.5 {
            Ok(DensityOp {
                op,
                p,
                phi: phi.clone(),
                phi_perp,
            })
        } else {
            Ok(DensityOp {
                op,
                p: 1.0 - p,
                phi: phi_perp.clone(),
                phi_perp: phi.clone(),
            })
        }
    }

    pub fn op(&self) -> &HermitianOp {
        &self.op
    }

    /// Mixing weight of the minor eigenprojector, in [0, 1/2].
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Major eigenstate |φ⟩.
    pub fn phi(&self) -> &Ket {
        &self.phi
    }

    /// Minor eigenstate |φ⊥⟩.
    pub fn phi_perp(&self) -> &Ket {
        &self.phi_perp
    }

    /// Rebuild the operator from the eigendecomposition.
    pub fn reconstruct(&self) -> HermitianOp {
        HermitianOp::projector(&self.phi)
            .scale(1.0 - self.p)
            .add(&HermitianOp::projector(&self.phi_perp).scale(self.p))
            .unwrap()
    }
}
