//! Closed-form extremal observables: the state projectors that maximize
//! or minimize the real and imaginary parts of the weak value.

use num_complex::Complex64;

use crate::error::Result;
use crate::hermitian::HermitianOp;
use crate::weak::PPSEnsemble;

/// The projectors attaining the extreme real weak values, their weak
/// values, and the half-width of the attainable real range.
#[derive(Debug, Clone)]
pub struct ExtremalReport {
    pub h_plus: HermitianOp,
    pub h_minus: HermitianOp,
    pub w_plus: Complex64,
    pub w_minus: Complex64,
    pub bound: f64,
}

/// H± = ((1−s)/2)𝕀 + (s/2)(|φ⟩⟨φ| + |ψ⟩⟨ψ|) with s = ±1/|⟨φ|ψ⟩|.
/// W(H±) = (1/2)(1 ± 1/|⟨φ|ψ⟩|), both strictly real.
pub fn extremal_real_projectors(e: &PPSEnsemble) -> Result<ExtremalReport> {
    let overlap = e.overlap().norm();
    let sum = HermitianOp::projector(e.pre()).add(&HermitianOp::projector(e.post()))?;
    let build = |s: f64| -> Result<HermitianOp> {
        HermitianOp::identity(2)
            .scale((1.0 - s) / 2.0)
            .add(&sum.scale(s / 2.0))
    };
    let s = 1.0 / overlap;
    let h_plus = build(s)?;
    let h_minus = build(-s)?;
    let w_plus = e.weak_value(&h_plus)?;
    let w_minus = e.weak_value(&h_minus)?;
    Ok(ExtremalReport {
        h_plus,
        h_minus,
        w_plus,
        w_minus,
        bound: 1.0 / (2.0 * overlap),
    })
}

/// (|γ⟩⟨γ|, |γ⊥⟩⟨γ⊥|, W(|γ⟩⟨γ|), W(|γ⊥⟩⟨γ⊥|)). The two weak values are
/// complex conjugates, with imaginary parts ±(1/2)tan(ω/2).
pub fn extremal_imag_projectors(
    e: &PPSEnsemble,
) -> Result<(HermitianOp, HermitianOp, Complex64, Complex64)> {
    let g = HermitianOp::projector(e.gamma());
    let gp = HermitianOp::projector(e.gamma_perp());
    let wg = e.weak_value(&g)?;
    let wgp = e.weak_value(&gp)?;
    Ok((g, gp, wg, wgp))
}

/// Half-width 1/(2|⟨φ|ψ⟩|) of the attainable real weak values over
/// state projectors; diverges as the pair approaches orthogonality.
pub fn real_bound(e: &PPSEnsemble) -> f64 {
    1.0 / (2.0 * e.overlap().norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ket::Ket;

    fn idempotency_residual(h: &HermitianOp) -> f64 {
        // max |(H² − H)_{ij}|
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let sq: Complex64 = (0..2).map(|k| h.entry(i, k) * h.entry(k, j)).sum();
                worst = worst.max((sq - h.entry(i, j)).norm());
            }
        }
        worst
    }

    #[test]
    fn real_extremes_mub_instance() {
        let e = PPSEnsemble::new(&Ket::plus(), &Ket::zero()).unwrap();
        let r = extremal_real_projectors(&e).unwrap();
        let root2 = 2.0_f64.sqrt();
        assert!((r.w_plus.re - (1.0 + root2) / 2.0).abs() < 1e-12);
        assert!((r.w_minus.re - (1.0 - root2) / 2.0).abs() < 1e-12);
        assert!(r.w_plus.im.abs() < 1e-12 && r.w_minus.im.abs() < 1e-12);
        assert!((r.bound - root2 / 2.0).abs() < 1e-12);
        assert!(idempotency_residual(&r.h_plus) < 1e-10);
        assert!(idempotency_residual(&r.h_minus) < 1e-10);
        // Antipodal: H+ + H− has the same eigenprojectors, and the two
        // projected states are orthogonal, so Tr(H+ H−) = 0.
        assert!(r.h_plus.trace_product(&r.h_minus).unwrap().abs() < 1e-10);
    }

    #[test]
    fn real_extremes_half_overlap() {
        // Bloch angle 2π/3 gives |⟨φ|ψ⟩| = cos(π/3) = 1/2.
        let angle = 2.0 * std::f64::consts::PI / 3.0;
        let phi = Ket::from_bloch([angle.sin(), 0.0, angle.cos()]).unwrap();
        let e = PPSEnsemble::new(&phi, &Ket::zero()).unwrap();
        assert!((e.overlap().norm() - 0.5).abs() < 1e-12);
        let r = extremal_real_projectors(&e).unwrap();
        assert!((r.w_plus.re - 1.5).abs() < 1e-12);
    }

    #[test]
    fn imag_extremes_mub_instance() {
        let e = PPSEnsemble::new(&Ket::plus(), &Ket::zero()).unwrap();
        let (_, _, wg, wgp) = extremal_imag_projectors(&e).unwrap();
        assert!((wg.im - 0.5).abs() < 1e-12);
        assert!((wgp.im + 0.5).abs() < 1e-12);
        assert!((wg - wgp.conj()).norm() < 1e-12);
    }

    #[test]
    fn real_bound_values() {
        let e = PPSEnsemble::new(&Ket::plus(), &Ket::zero()).unwrap();
        assert!((real_bound(&e) - 2.0_f64.sqrt() / 2.0).abs() < 1e-12);
        // |⟨φ|ψ⟩| = 0.1 → bound 5.
        let c = 0.1_f64;
        let theta = 2.0 * c.acos();
        let phi = Ket::from_bloch([theta.sin(), 0.0, theta.cos()]).unwrap();
        let e = PPSEnsemble::new(&phi, &Ket::zero()).unwrap();
        assert!((real_bound(&e) - 5.0).abs() < 1e-9);
    }
}
