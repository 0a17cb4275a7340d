//! Higher-dimensional exploration: orthonormal frames around a state
//! pair, the real-valuedness of weak values on the span of both bases'
//! centered projectors, and seeded counterexample scans off that span.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hermitian::{scalar_product, HermitianOp};
use crate::ket::Ket;
use crate::sampling::{random_ket, random_trace0, seeded_rng};
use crate::tolerances::{EPS_DIST, EPS_HERM};

/// Relative residual threshold for membership in the spanned subspace.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

/// Two orthonormal bases containing the pre/post pair, plus an
/// orthonormalized generating set of the span of all centered basis
/// projectors.
#[derive(Debug, Clone)]
pub struct QunitFrame {
    dim: usize,
    basis_phi: Vec<Ket>,
    basis_psi: Vec<Ket>,
    r_basis: Vec<HermitianOp>,
}

fn complete_basis(first: &Ket, rng: &mut impl Rng) -> Vec<Ket> {
    let n = first.dim();
    let mut basis = vec![first.clone()];
    while basis.len() < n {
        let cand = random_ket(rng, n);
        let mut v: Vec<Complex64> = cand.amps().to_vec();
        for b in &basis {
            let overlap: Complex64 = b
                .amps()
                .iter()
                .zip(&v)
                .map(|(bi, vi)| bi.conj() * vi)
                .sum();
            for (vi, bi) in v.iter_mut().zip(b.amps()) {
                *vi -= overlap * bi;
            }
        }
        let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            if let Ok(k) = Ket::new(&v) {
                basis.push(k);
            }
        }
    }
    basis
}

impl QunitFrame {
    /// Complete both states to orthonormal bases (deterministic, seeded
    /// Gram-Schmidt over random complements) and orthonormalize the
    /// generating projector images.
    pub fn build(phi0: &Ket, psi0: &Ket, n: usize, seed: u64) -> Result<QunitFrame> {
        if phi0.dim() != n || psi0.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: phi0.dim().max(psi0.dim()),
            });
        }
        let m = psi0.inner(phi0)?.norm();
        if m <= EPS_DIST || m >= 1.0 - EPS_DIST {
            return Err(Error::DegenerateEnsemble(m));
        }
        let mut rng = seeded_rng(seed);
        let basis_phi = complete_basis(phi0, &mut rng);
        let basis_psi = complete_basis(psi0, &mut rng);

        let centered = |k: &Ket| {
            HermitianOp::projector(k)
                .sub(&HermitianOp::identity(n).scale(1.0 / n as f64))
                .unwrap()
        };
        let mut r_basis: Vec<HermitianOp> = Vec::new();
        for k in basis_phi.iter().chain(basis_psi.iter()) {
            let mut g = centered(k);
            for e in &r_basis {
                let c = scalar_product(&g, e)?;
                g = g.sub(&e.scale(c))?;
            }
            let norm = scalar_product(&g, &g)?.max(0.0).sqrt();
            if norm > 1e-10 {
                r_basis.push(g.scale(1.0 / norm));
            }
        }
        Ok(QunitFrame {
            dim: n,
            basis_phi,
            basis_psi,
            r_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_phi(&self) -> &[Ket] {
        &self.basis_phi
    }

    pub fn basis_psi(&self) -> &[Ket] {
        &self.basis_psi
    }

    pub fn r_basis(&self) -> &[HermitianOp] {
        &self.r_basis
    }

    /// Numerical rank of the generating set.
    pub fn r_rank(&self) -> usize {
        self.r_basis.len()
    }

    /// Orthogonal projection onto the span, with the relative residual.
    pub fn project(&self, m: &HermitianOp) -> Result<(HermitianOp, f64)> {
        let mut proj = HermitianOp::zero(self.dim);
        for e in &self.r_basis {
            let c = scalar_product(m, e)?;
            proj = proj.add(&e.scale(c))?;
        }
        let diff = m.sub(&proj)?;
        let res = scalar_product(&diff, &diff)?.max(0.0).sqrt();
        let norm = scalar_product(m, m)?.max(0.0).sqrt();
        let rel = if norm > 0.0 { res / norm } else { 0.0 };
        Ok((proj, rel))
    }

    /// Max |Im 𝒲_{φᵢ,ψⱼ}(M)| over nonorthogonal pairs, plus the count of
    /// skipped orthogonal pairs where the weak value is undefined.
    pub fn max_imag_over_pairs(&self, m: &HermitianOp) -> Result<(f64, usize)> {
        self.max_imag_over(m, false)
    }

    fn max_imag_over(&self, m: &HermitianOp, first_pair_only: bool) -> Result<(f64, usize)> {
        let mut max_im = 0.0_f64;
        let mut skipped = 0;
        for phi in &self.basis_phi {
            for psi in &self.basis_psi {
                let overlap = psi.inner(phi)?;
                if overlap.norm() <= EPS_DIST {
                    skipped += 1;
                } else {
                    let w = m.matrix_element(psi, phi)? / overlap;
                    max_im = max_im.max(w.im.abs());
                }
                if first_pair_only {
                    return Ok((max_im, skipped));
                }
            }
        }
        Ok((max_im, skipped))
    }
}

/// Verify that every pair-indexed weak value of an in-span operator is
/// real: returns the max |Im| over valid pairs (predicted < tol).
pub fn proposition_check(f: &QunitFrame, m: &HermitianOp, _tol: f64) -> Result<f64> {
    let t = m.trace();
    if t.abs() > EPS_HERM {
        return Err(Error::NotTraceZero(t));
    }
    let (_, rel) = f.project(m)?;
    if rel > MEMBERSHIP_TOL {
        return Err(Error::NotInR(rel));
    }
    let (max_im, _) = f.max_imag_over_pairs(m)?;
    Ok(max_im)
}

/// A counterexample candidate: an operator off the span whose weak
/// values were all real at the scan tolerance.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub operator: HermitianOp,
    pub max_imag: f64,
    pub off_span_residual: f64,
}

/// Outcome of a seeded counterexample scan.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Sanity cross-check: max |Im| seen on the in-span projections of
    /// the sampled operators (should stay at rounding level).
    pub max_imag_in_r: f64,
    pub orthogonal_pairs_skipped: usize,
    pub candidates: Vec<Candidate>,
}

/// Sample traceless Hermitian operators with a nonzero off-span
/// component and record any whose weak values are all real. A candidate
/// must survive re-evaluation at a 10x tighter tolerance. Deterministic
/// for a fixed seed. When `first_pair_only` is set, only the (0,0)
/// weak value is required to be real (the weaker conjecture reading).
pub fn conjecture_scan(
    f: &QunitFrame,
    trials: usize,
    seed: u64,
    first_pair_only: bool,
) -> Result<ScanReport> {
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    let mut rng = seeded_rng(seed);
    let mut max_imag_in_r = 0.0_f64;
    let mut skipped_total = 0;
    let mut candidates = Vec::new();
    for _ in 0..trials {
        let m = random_trace0(&mut rng, f.dim());
        let (proj, rel) = f.project(&m)?;
        if rel <= 1e-6 {
            continue;
        }
        let (proj_im, _) = f.max_imag_over(&proj, first_pair_only)?;
        max_imag_in_r = max_imag_in_r.max(proj_im);
        let (max_im, skipped) = f.max_imag_over(&m, first_pair_only)?;
        skipped_total += skipped;
        if max_im < 1e-9 {
            // Tighter re-evaluation before reporting.
            let (recheck, _) = f.max_imag_over(&m, first_pair_only)?;
            if recheck < 1e-10 {
                candidates.push(Candidate {
                    operator: m,
                    max_imag: recheck,
                    off_span_residual: rel,
                });
            }
        }
    }
    Ok(ScanReport {
        dim: f.dim(),
        trials,
        seed,
        max_imag_in_r,
        orthogonal_pairs_skipped: skipped_total,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weak::PPSEnsemble;

    fn frame2() -> QunitFrame {
        QunitFrame::build(&Ket::plus(), &Ket::zero(), 2, 11).unwrap()
    }

    #[test]
    fn n2_span_is_the_pps_plane() {
        let f = frame2();
        assert_eq!(f.r_rank(), 2);
        let e = PPSEnsemble::new(&Ket::plus(), &Ket::zero()).unwrap();
        // Both state images are in the span; the normal direction is not.
        let img = |k: &Ket| {
            HermitianOp::projector(k)
                .sub(&HermitianOp::identity(2).scale(0.5))
                .unwrap()
        };
        let (_, r1) = f.project(&img(&Ket::plus())).unwrap();
        let (_, r2) = f.project(&img(&Ket::zero())).unwrap();
        assert!(r1 < 1e-10 && r2 < 1e-10);
        let (_, rg) = f.project(&img(e.gamma())).unwrap();
        assert!((rg - 1.0).abs() < 1e-10);
    }

    #[test]
    fn generator_is_in_span() {
        for n in [2, 3, 4] {
            let mut rng = seeded_rng(n as u64);
            let phi = random_ket(&mut rng, n);
            let psi = loop {
                let k = random_ket(&mut rng, n);
                let m = k.inner(&phi).unwrap().norm();
                if m > 0.05 && m < 0.95 {
                    break k;
                }
            };
            let f = QunitFrame::build(&phi, &psi, n, 5).unwrap();
            let gen = HermitianOp::projector(&phi)
                .sub(&HermitianOp::identity(n).scale(1.0 / n as f64))
                .unwrap();
            let max_im = proposition_check(&f, &gen, 1e-10).unwrap();
            assert!(max_im < 1e-10);
            assert!(f.r_rank() <= 2 * n - 2);
        }
    }

    #[test]
    fn off_span_operator_rejected() {
        let f = frame2();
        let e = PPSEnsemble::new(&Ket::plus(), &Ket::zero()).unwrap();
        let gamma_img = HermitianOp::projector(e.gamma())
            .sub(&HermitianOp::identity(2).scale(0.5))
            .unwrap();
        assert!(matches!(
            proposition_check(&f, &gamma_img, 1e-10),
            Err(Error::NotInR(_))
        ));
    }

    #[test]
    fn degenerate_pair_rejected() {
        assert!(matches!(
            QunitFrame::build(&Ket::zero(), &Ket::zero(), 2, 0),
            Err(Error::DegenerateEnsemble(_))
        ));
    }

    #[test]
    fn scan_zero_trials_rejected() {
        let f = frame2();
        assert!(matches!(
            conjecture_scan(&f, 0, 1, false),
            Err(Error::InvalidTrials)
        ));
    }

    #[test]
    fn n2_scan_finds_nothing() {
        let f = frame2();
        let report = conjecture_scan(&f, 500, 42, false).unwrap();
        assert!(report.candidates.is_empty());
        assert!(report.max_imag_in_r < 1e-9);
    }

    #[test]
    fn scan_is_deterministic() {
        let f = frame2();
        let a = conjecture_scan(&f, 200, 9, false).unwrap();
        let b = conjecture_scan(&f, 200, 9, false).unwrap();
        assert_eq!(a.max_imag_in_r, b.max_imag_in_r);
        assert_eq!(a.candidates.len(), b.candidates.len());
    }
}
