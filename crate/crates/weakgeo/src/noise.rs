//! Noise channels acting on the pre-selected state and closed-form
//! inversion of observed generalized weak values to the channel
//! parameter p.

use num_complex::Complex64;

use crate::density::DensityOp;
use crate::error::{Error, Result};
use crate::extremal::extremal_real_projectors;
use crate::hermitian::HermitianOp;
use crate::ket::Ket;
use crate::tolerances::EPS_DIST;
use crate::weak::{generalized_weak_value, PPSEnsemble};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// |φ⟩⟨φ| ↦ (1−p)|φ⟩⟨φ| + p|φ⊥⟩⟨φ⊥|, Bloch shrink factor 1−2p.
    Depolarizing,
    /// |φ⟩⟨φ| ↦ (1−p)|φ⟩⟨φ| + p|0⟩⟨0|.
    AmplitudeDamping,
}

impl ChannelKind {
    /// Upper end of the legal parameter interval [0, hi).
    pub fn p_sup(self) -> f64 {
        match self {
            ChannelKind::Depolarizing => 0.5,
            ChannelKind::AmplitudeDamping => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::AmplitudeDamping => "amplitude_damping",
        }
    }
}

/// A single-parameter noise channel with a validated parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseChannel {
    pub kind: ChannelKind,
    pub p: f64,
}

impl NoiseChannel {
    pub fn new(kind: ChannelKind, p: f64) -> Result<NoiseChannel> {
        if !(0.0..kind.p_sup()).contains(&p) {
            return Err(Error::InvalidParameter {
                p,
                lo: 0.0,
                hi: kind.p_sup(),
            });
        }
        Ok(NoiseChannel { kind, p })
    }

    /// Channel output on a pure pre-selection.
    pub fn apply(&self, phi: &Ket) -> Result<DensityOp> {
        match self.kind {
            ChannelKind::Depolarizing => DensityOp::from_mixture(self.p, phi),
            ChannelKind::AmplitudeDamping => {
                let op = HermitianOp::projector(phi)
                    .scale(1.0 - self.p)
                    .add(&HermitianOp::projector(&Ket::zero()).scale(self.p))?;
                DensityOp::from_op(op)
            }
        }
    }
}

/// Which part of the complex weak value is observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Real,
    Imag,
    Full,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::Real => "real",
            Component::Imag => "imag",
            Component::Full => "full",
        }
    }
}

/// Closed-form parameter estimate with its fit residual.
#[derive(Debug, Clone)]
pub struct NoiseEstimate {
    pub p_hat: f64,
    pub residual: f64,
    pub observable_used: HermitianOp,
    pub component: Component,
}

/// W_{ρ,ψ}(M) for ρ the channel output on φ.
pub fn expected_noisy_weak(
    ch: &NoiseChannel,
    phi: &Ket,
    psi: &Ket,
    m: &HermitianOp,
) -> Result<Complex64> {
    let rho = ch.apply(phi)?;
    generalized_weak_value(&rho, psi, m)
}

/// ρ(p) = (1−p)·A + p·B endpoints for a channel family on φ.
fn channel_endpoints(kind: ChannelKind, phi: &Ket) -> Result<(Ket, Ket)> {
    let tail = match kind {
        ChannelKind::Depolarizing => phi.orthogonal_complement()?,
        ChannelKind::AmplitudeDamping => Ket::zero(),
    };
    Ok((phi.clone(), tail))
}

/// Numerator and denominator of the generalized weak value are both
/// affine in p; return their endpoint values (p = 0 value and slope).
fn affine_data(
    kind: ChannelKind,
    phi: &Ket,
    psi: &Ket,
    m: &HermitianOp,
) -> Result<(Complex64, Complex64, f64, f64)> {
    let (a, b) = channel_endpoints(kind, phi)?;
    let term = |state: &Ket| -> Result<(Complex64, f64)> {
        let n = m.matrix_element(psi, state)? * state.inner(psi)?;
        let d = psi.inner(state)?.norm_sqr();
        Ok((n, d))
    };
    let (na, da) = term(&a)?;
    let (nb, db) = term(&b)?;
    Ok((na, nb - na, da, db - da))
}

/// Solve component(W_ρ(p)(M)) = component(observed) for p in closed form.
///
/// Both numerator and denominator of the generalized weak value are
/// affine in p, so the equation reduces to a single linear equation
/// (least-squares along the line for the full complex component). The
/// estimate is clamped to the channel's legal interval.
pub fn infer_p(
    kind: ChannelKind,
    phi: &Ket,
    psi: &Ket,
    m: &HermitianOp,
    observed: Complex64,
    component: Component,
) -> Result<NoiseEstimate> {
    let (n0, dn, d0, dd) = affine_data(kind, phi, psi, m)?;
    if d0 <= EPS_DIST {
        return Err(Error::DegenerateGeneralizedEnsemble(d0));
    }
    // Sensitivity of the chosen component at p = 0.
    let deriv = (dn * d0 - n0 * dd) / (d0 * d0);
    let sensitivity = match component {
        Component::Real => deriv.re.abs(),
        Component::Imag => deriv.im.abs(),
        Component::Full => deriv.norm(),
    };
    if sensitivity < 1e-10 {
        return Err(Error::InsensitiveObservable(sensitivity));
    }
    // g(p) = component(n(p) − observed·d(p)) is affine with root p_hat.
    let g0 = n0 - observed * d0;
    let dg = dn - observed * dd;
    let raw = match component {
        Component::Real => -g0.re / dg.re,
        Component::Imag => -g0.im / dg.im,
        Component::Full => -(dg.conj() * g0).re / dg.norm_sqr(),
    };
    let p_hat = raw.clamp(0.0, kind.p_sup());
    let den = d0 + dd * p_hat;
    if den <= EPS_DIST {
        return Err(Error::DegenerateGeneralizedEnsemble(den));
    }
    let expected = (n0 + dn * p_hat) / den;
    let residual = match component {
        Component::Real => (expected.re - observed.re).abs(),
        Component::Imag => (expected.im - observed.im).abs(),
        Component::Full => (expected - observed).norm(),
    };
    Ok(NoiseEstimate {
        p_hat,
        residual,
        observable_used: m.clone(),
        component,
    })
}

/// Depolarizing-parameter sensitivities (slopes at p = 0) of the three
/// candidate probes.
#[derive(Debug, Clone, Copy)]
pub struct ProbeSensitivities {
    pub re_slope_h_plus: f64,
    pub re_slope_h_minus: f64,
    pub im_slope_gamma: f64,
}

/// The probe projector whose observed component moves fastest with the
/// depolarizing parameter, together with all candidate slopes. The
/// imaginary component at |γ⟩⟨γ| dominates the real component at H±.
pub fn optimal_noise_probe(
    phi: &Ket,
    psi: &Ket,
) -> Result<(HermitianOp, ProbeSensitivities)> {
    let e = PPSEnsemble::new(phi, psi)?;
    let real = extremal_real_projectors(&e)?;
    let gamma_proj = HermitianOp::projector(e.gamma());

    let slope = |m: &HermitianOp| -> Result<Complex64> {
        let (n0, dn, d0, dd) = affine_data(ChannelKind::Depolarizing, phi, psi, m)?;
        Ok((dn * d0 - n0 * dd) / (d0 * d0))
    };
    let s = ProbeSensitivities {
        re_slope_h_plus: slope(&real.h_plus)?.re.abs(),
        re_slope_h_minus: slope(&real.h_minus)?.re.abs(),
        im_slope_gamma: slope(&gamma_proj)?.im.abs(),
    };
    let probe = if s.im_slope_gamma >= s.re_slope_h_plus.max(s.re_slope_h_minus) {
        gamma_proj
    } else if s.re_slope_h_plus >= s.re_slope_h_minus {
        real.h_plus
    } else {
        real.h_minus
    };
    Ok((probe, s))
}
