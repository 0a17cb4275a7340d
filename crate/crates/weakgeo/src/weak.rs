//! Weak-value functionals for pure and mixed pre-selection, the plane
//! spanned by the two state images, invariant lines, and the full
//! geometric decomposition of a weak value.

use num_complex::Complex64;

use crate::density::DensityOp;
use crate::error::{Error, Result};
use crate::hermitian::{HermitianOp, SPoint};
use crate::ket::Ket;
use crate::tolerances::EPS_DIST;

/// A validated pre/post pair with its cached overlap, the signed phase
/// angle ω, and the canonical mutually unbiased partner γ.
///
/// ω satisfies |⟨ψ|φ⟩| = |cos(ω/2)|, and its sign is fixed so that
/// W(|γ⟩⟨γ|) = (1/2)(1 + i·tan(ω/2)) with the cross-product γ.
#[derive(Debug, Clone)]
pub struct PPSEnsemble {
    pre: Ket,
    post: Ket,
    overlap: Complex64,
    omega: f64,
    gamma: Ket,
    gamma_perp: Ket,
}

impl PPSEnsemble {
    pub fn new(pre: &Ket, post: &Ket) -> Result<PPSEnsemble> {
        if pre.dim() != 2 || post.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: pre.dim().max(post.dim()),
            });
        }
        let overlap = post.inner(pre)?;
        let m = overlap.norm();
        if m <= EPS_DIST || m >= 1.0 - EPS_DIST {
            return Err(Error::DegenerateEnsemble(m));
        }
        let (gamma, gamma_perp) = crate::hermitian::mub_partner(pre, post)?;
        let omega_abs = 2.0 * m.clamp(-1.0, 1.0).acos();
        // Im W(|γ⟩⟨γ|) = tan(ω/2)/2 fixes the sign of ω.
        let num = HermitianOp::projector(&gamma).matrix_element(post, pre)?;
        let w_gamma = num / overlap;
        let omega = if w_gamma.im >= 0.0 { omega_abs } else { -omega_abs };
        Ok(PPSEnsemble {
            pre: pre.clone(),
            post: post.clone(),
            overlap,
            omega,
            gamma,
            gamma_perp,
        })
    }

    pub fn pre(&self) -> &Ket {
        &self.pre
    }

    pub fn post(&self) -> &Ket {
        &self.post
    }

    /// ⟨ψ|φ⟩ of the canonical representatives.
    pub fn overlap(&self) -> Complex64 {
        self.overlap
    }

    /// Signed phase angle ω ∈ (−π, π)\{0}.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> &Ket {
        &self.gamma
    }

    pub fn gamma_perp(&self) -> &Ket {
        &self.gamma_perp
    }

    /// ⟨ψ|M|φ⟩ / ⟨ψ|φ⟩.
    pub fn weak_value(&self, m: &HermitianOp) -> Result<Complex64> {
        Ok(m.matrix_element(&self.post, &self.pre)? / self.overlap)
    }

    /// The plane spanned by the two state images, with its normal and
    /// the midpoint generating the invariant-line family.
    pub fn pps_plane(&self) -> PPSPlane {
        let phi_img = SPoint::from_ket(&self.pre).unwrap();
        let psi_img = SPoint::from_ket(&self.post).unwrap();
        let e1 = phi_img.normalized();
        let residual = psi_img.sub(e1.scale(psi_img.dot(e1)));
        let e2 = residual.normalized();
        // γ's Bloch vector is already unit length.
        let normal = SPoint::from_ket(&self.gamma).unwrap();
        let p_point = phi_img.add(psi_img).scale(0.5);
        PPSPlane {
            e1,
            e2,
            normal,
            p_point,
        }
    }

    /// The affine line whose points all share the weak value
    /// (1/2)(s + i·a·tan(ω/2)).
    pub fn k_line(&self, s: f64, a: f64) -> KLine {
        let plane = self.pps_plane();
        let gamma_img = SPoint::from_ket(&self.gamma).unwrap();
        let base = plane.p_point.scale(s).add(gamma_img.scale(a));
        let phi_img = SPoint::from_ket(&self.pre).unwrap();
        let psi_img = SPoint::from_ket(&self.post).unwrap();
        let direction = psi_img.sub(phi_img).normalized();
        KLine {
            s,
            a,
            base,
            direction,
        }
    }

    /// Geometric coordinates (trace, s, a, ω) of a weak value: the
    /// trace split plus orthogonal projection of the traceless part
    /// onto the midpoint direction and the plane normal.
    pub fn decompose(&self, n: &HermitianOp) -> Result<WeakDecomposition> {
        if n.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: n.dim(),
            });
        }
        let trace = n.trace();
        let m = n.sub(&HermitianOp::identity(2).scale(trace / 2.0))?;
        let image = m.s_image()?;
        let plane = self.pps_plane();
        let p = plane.p_point;
        let s = image.dot(p) / p.dot(p);
        let gamma_img = SPoint::from_ket(&self.gamma)?;
        let a = image.dot(gamma_img) / gamma_img.dot(gamma_img);
        Ok(WeakDecomposition {
            trace,
            s,
            a,
            omega: self.omega,
        })
    }

    /// True iff the off-plane coordinate of a traceless operator is
    /// within tol; equivalent to a real weak value.
    pub fn is_in_pps_plane(&self, m: &HermitianOp, tol: f64) -> Result<bool> {
        let image = m.s_image()?;
        let gamma_img = SPoint::from_ket(&self.gamma)?;
        let a = image.dot(gamma_img) / gamma_img.dot(gamma_img);
        Ok(a.abs() <= tol)
    }
}

/// Orthonormal frame of the plane of real weak values.
#[derive(Debug, Clone, Copy)]
pub struct PPSPlane {
    pub e1: SPoint,
    pub e2: SPoint,
    pub normal: SPoint,
    pub p_point: SPoint,
}

impl PPSPlane {
    /// Residual of a point after projection onto the plane.
    pub fn residual(&self, point: SPoint) -> f64 {
        let proj = self
            .e1
            .scale(point.dot(self.e1))
            .add(self.e2.scale(point.dot(self.e2)));
        point.sub(proj).norm()
    }
}

/// An affine weak-value-invariant line: base s·P + a·γ-image, direction
/// along the difference of the state images.
#[derive(Debug, Clone, Copy)]
pub struct KLine {
    pub s: f64,
    pub a: f64,
    pub base: SPoint,
    pub direction: SPoint,
}

impl KLine {
    pub fn point_at(&self, t: f64) -> SPoint {
        self.base.add(self.direction.scale(t))
    }
}

/// The quadruple (trace, s, a, ω) that fully determines a weak value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakDecomposition {
    pub trace: f64,
    pub s: f64,
    pub a: f64,
    pub omega: f64,
}

impl WeakDecomposition {
    /// (1/2)(trace + s + i·a·tan(ω/2)).
    pub fn reconstruct(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.trace + self.s),
            0.5 * self.a * (self.omega / 2.0).tan(),
        )
    }
}

/// Tr(|ψ⟩⟨ψ| M ρ) / Tr(|ψ⟩⟨ψ| ρ) for a mixed pre-selection.
pub fn generalized_weak_value(
    rho: &DensityOp,
    psi: &Ket,
    m: &HermitianOp,
) -> Result<Complex64> {
    if m.dim() != 2 || psi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: m.dim().max(psi.dim()),
        });
    }
    let den = rho.op().matrix_element(psi, psi)?.re;
    if den <= EPS_DIST {
        return Err(Error::DegenerateGeneralizedEnsemble(den));
    }
    // Tr(Pψ M ρ) = ⟨ψ| M ρ |ψ⟩.
    let p = rho.p();
    let term = |state: &Ket, weight: f64| -> Result<Complex64> {
        let amp = m.matrix_element(psi, state)?;
        Ok(amp * state.inner(psi)? * weight)
    };
    let num = term(rho.phi(), 1.0 - p)? + term(rho.phi_perp(), p)?;
    Ok(num / den)
}

/// The two pure-ensemble weak values and statistical weights whose
/// mixture recombines to the generalized weak value.
#[derive(Debug, Clone, Copy)]
pub struct MixtureDecomposition {
    pub w1: f64,
    pub v1: Complex64,
    pub w2: f64,
    pub v2: Complex64,
}

impl MixtureDecomposition {
    pub fn recombine(&self) -> Complex64 {
        self.v1 * self.w1 + self.v2 * self.w2
    }
}

/// Expand the generalized weak value as a convex mixture of the pure
/// weak values taken from ρ's eigenstates.
pub fn mixture_decomposition(
    rho: &DensityOp,
    psi: &Ket,
    m: &HermitianOp,
) -> Result<MixtureDecomposition> {
    let den = rho.op().matrix_element(psi, psi)?.re;
    if den <= EPS_DIST {
        return Err(Error::DegenerateGeneralizedEnsemble(den));
    }
    let o1 = psi.inner(rho.phi())?;
    if o1.norm() <= EPS_DIST || o1.norm() >= 1.0 - EPS_DIST {
        return Err(Error::EigenbasisContainsPost);
    }
    let o2 = psi.inner(rho.phi_perp())?;
    let p = rho.p();
    let v1 = m.matrix_element(psi, rho.phi())? / o1;
    let v2 = m.matrix_element(psi, rho.phi_perp())? / o2;
    Ok(MixtureDecomposition {
        w1: (1.0 - p) * o1.norm_sqr() / den,
        v1,
        w2: p * o2.norm_sqr() / den,
        v2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus_zero() -> PPSEnsemble {
        PPSEnsemble::new(&Ket::plus(), &Ket::zero()).unwrap()
    }

    #[test]
    fn ensemble_construction() {
        let e = plus_zero();
        assert!((e.overlap().norm() - 1.0 / 2.0_f64.sqrt()).abs() < 1e-14);
        assert!((e.omega() - PI / 2.0).abs() < 1e-12);
        assert!((e.gamma().inner(&Ket::minus_i()).unwrap().norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn ensemble_degenerate_cases() {
        assert!(matches!(
            PPSEnsemble::new(&Ket::zero(), &Ket::one()),
            Err(Error::DegenerateEnsemble(_))
        ));
        assert!(matches!(
            PPSEnsemble::new(&Ket::zero(), &Ket::zero()),
            Err(Error::DegenerateEnsemble(_))
        ));
    }

    #[test]
    fn weak_value_examples() {
        let e = plus_zero();
        let one = e.weak_value(&HermitianOp::identity(2)).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-14);
        let wz = e.weak_value(&HermitianOp::sigma_z()).unwrap();
        assert!((wz - c(1.0, 0.0)).norm() < 1e-14);
        let wy = e.weak_value(&HermitianOp::sigma_y()).unwrap();
        assert!((wy - c(0.0, -1.0)).norm() < 1e-14);
        let wg = e
            .weak_value(&HermitianOp::projector(e.gamma()))
            .unwrap();
        assert!((wg - c(0.5, 0.5)).norm() < 1e-13);
    }

    #[test]
    fn plane_geometry() {
        let e = plus_zero();
        let plane = e.pps_plane();
        assert!((plane.p_point.bloch[0] - 0.5).abs() < 1e-14);
        assert!(plane.p_point.bloch[1].abs() < 1e-14);
        assert!((plane.p_point.bloch[2] - 0.5).abs() < 1e-14);
        assert!((plane.normal.bloch[1] + 1.0).abs() < 1e-13);
        // Orthonormality and span membership.
        assert!(plane.e1.dot(plane.e2).abs() < 1e-12);
        assert!(plane.e1.dot(plane.normal).abs() < 1e-12);
        assert!(plane.e2.dot(plane.normal).abs() < 1e-12);
        let phi_img = SPoint::from_ket(e.pre()).unwrap();
        let psi_img = SPoint::from_ket(e.post()).unwrap();
        assert!(plane.residual(phi_img) < 1e-12);
        assert!(plane.residual(psi_img) < 1e-12);
    }

    #[test]
    fn k_line_preimage() {
        let e = plus_zero();
        let line = e.k_line(2.0, 0.0);
        for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let m = line.point_at(t).to_op();
            let w = e.weak_value(&m).unwrap();
            assert!((w - c(1.0, 0.0)).norm() < 1e-12);
        }
        // K(0, 0) passes through the origin.
        let origin_line = e.k_line(0.0, 0.0);
        assert!(origin_line.base.norm() < 1e-14);
    }

    #[test]
    fn decomposition_examples() {
        let e = plus_zero();
        let d = e.decompose(&HermitianOp::identity(2)).unwrap();
        assert!((d.trace - 2.0).abs() < 1e-14 && d.s.abs() < 1e-13 && d.a.abs() < 1e-13);
        assert!((d.reconstruct() - c(1.0, 0.0)).norm() < 1e-13);

        let d = e.decompose(&HermitianOp::sigma_z()).unwrap();
        assert!(d.trace.abs() < 1e-14);
        assert!((d.s - 2.0).abs() < 1e-12 && d.a.abs() < 1e-12);

        let d = e.decompose(&HermitianOp::sigma_y()).unwrap();
        assert!(d.trace.abs() < 1e-14);
        assert!(d.s.abs() < 1e-12 && (d.a + 2.0).abs() < 1e-12);
        assert!((d.reconstruct() - c(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn plane_membership() {
        let e = plus_zero();
        let phi_img = HermitianOp::projector(e.pre())
            .sub(&HermitianOp::identity(2).scale(0.5))
            .unwrap();
        assert!(e.is_in_pps_plane(&phi_img, 1e-10).unwrap());
        let gamma_img = HermitianOp::projector(e.gamma())
            .sub(&HermitianOp::identity(2).scale(0.5))
            .unwrap();
        assert!(!e.is_in_pps_plane(&gamma_img, 1e-10).unwrap());
    }

    #[test]
    fn generalized_reduces_to_pure() {
        let rho = DensityOp::from_mixture(0.0, &Ket::plus()).unwrap();
        let w = generalized_weak_value(&rho, &Ket::zero(), &HermitianOp::sigma_y()).unwrap();
        assert!((w - c(0.0, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn generalized_noisy_instance() {
        let e = plus_zero();
        let rho = DensityOp::from_mixture(0.2, &Ket::plus()).unwrap();
        let m = HermitianOp::projector(e.gamma());
        let w = generalized_weak_value(&rho, &Ket::zero(), &m).unwrap();
        assert!((w - c(0.5, 0.3)).norm() < 1e-13);
    }

    #[test]
    fn generalized_maximally_mixed() {
        // Independent dense-trace oracle: explicit entrywise sums.
        let rho = DensityOp::from_op(HermitianOp::identity(2).scale(0.5)).unwrap();
        let psi = Ket::zero();
        let m = HermitianOp::projector(&Ket::zero());
        let w = generalized_weak_value(&rho, &psi, &m).unwrap();
        let p_psi = HermitianOp::projector(&psi);
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    num += p_psi.entry(i, j) * m.entry(j, k) * rho.op().entry(k, i);
                }
                den += p_psi.entry(i, j) * rho.op().entry(j, i);
            }
        }
        assert!((w - num / den).norm() < 1e-14);
    }

    #[test]
    fn mixture_pure_reduction() {
        let rho = DensityOp::from_mixture(0.0, &Ket::plus()).unwrap();
        let d = mixture_decomposition(&rho, &Ket::zero(), &HermitianOp::sigma_y()).unwrap();
        assert!((d.w1 - 1.0).abs() < 1e-14 && d.w2.abs() < 1e-14);
        assert!((d.v1 - c(0.0, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn mixture_mub_weights() {
        let rho = DensityOp::from_mixture(0.2, &Ket::plus()).unwrap();
        let d = mixture_decomposition(&rho, &Ket::zero(), &HermitianOp::sigma_x()).unwrap();
        assert!((d.w1 - 0.8).abs() < 1e-13 && (d.w2 - 0.2).abs() < 1e-13);
        let direct = generalized_weak_value(&rho, &Ket::zero(), &HermitianOp::sigma_x()).unwrap();
        assert!((d.recombine() - direct).norm() < 1e-12);
    }

    #[test]
    fn mixture_rejects_aligned_eigenbasis() {
        let rho = DensityOp::from_mixture(0.2, &Ket::zero()).unwrap();
        assert!(matches!(
            mixture_decomposition(&rho, &Ket::zero(), &HermitianOp::sigma_x()),
            Err(Error::EigenbasisContainsPost)
        ));
    }
}
