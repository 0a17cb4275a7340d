//! Hermitian operators, the Euclidean structure on the trace-0 subspace,
//! the Bloch-ball mapping, and mutual-unbiasedness constructions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ket::Ket;
use crate::tolerances::{EPS_DIST, EPS_HERM, EPS_MUB};

/// An n×n Hermitian operator, stored row-major. For n = 2 a
/// (trace, Bloch 3-vector) view is available.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianOp {
    /// Validate conjugate symmetry and build the operator. Tiny
    /// asymmetries below the tolerance are symmetrized away.
    pub fn from_matrix(rows: &[Vec<Complex64>]) -> Result<HermitianOp> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((rows[i][j] - rows[j][i].conj()).norm());
            }
        }
        if worst > EPS_HERM {
            return Err(Error::NotHermitian(worst));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (rows[i][j] + rows[j][i].conj()) / 2.0;
            }
        }
        Ok(HermitianOp { dim: n, entries })
    }

    pub fn identity(n: usize) -> HermitianOp {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        HermitianOp { dim: n, entries }
    }

    pub fn zero(n: usize) -> HermitianOp {
        HermitianOp {
            dim: n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn sigma_x() -> HermitianOp {
        HermitianOp::from_trace_bloch(0.0, [2.0, 0.0, 0.0])
    }

    pub fn sigma_y() -> HermitianOp {
        HermitianOp::from_trace_bloch(0.0, [0.0, 2.0, 0.0])
    }

    pub fn sigma_z() -> HermitianOp {
        HermitianOp::from_trace_bloch(0.0, [0.0, 0.0, 2.0])
    }

    /// M = (t/2)·𝕀 + (1/2)(x·σx + y·σy + z·σz).
    pub fn from_trace_bloch(trace: f64, bloch: [f64; 3]) -> HermitianOp {
        let [x, y, z] = bloch;
        let h = trace / 2.0;
        HermitianOp {
            dim: 2,
            entries: vec![
                Complex64::new(h + z / 2.0, 0.0),
                Complex64::new(x / 2.0, -y / 2.0),
                Complex64::new(x / 2.0, y / 2.0),
                Complex64::new(h - z / 2.0, 0.0),
            ],
        }
    }

    /// |k⟩⟨k|.
    pub fn projector(k: &Ket) -> HermitianOp {
        let n = k.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = k.amp(i) * k.amp(j).conj();
            }
        }
        HermitianOp { dim: n, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i).re).sum()
    }

    pub fn add(&self, other: &HermitianOp) -> Result<HermitianOp> {
        self.check_dim(other)?;
        Ok(HermitianOp {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &HermitianOp) -> Result<HermitianOp> {
        self.check_dim(other)?;
        Ok(HermitianOp {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: f64) -> HermitianOp {
        HermitianOp {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Tr(AB). Real for Hermitian A, B up to rounding; the real part is returned.
    pub fn trace_product(&self, other: &HermitianOp) -> Result<f64> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                t += self.entry(i, j) * other.entry(j, i);
            }
        }
        Ok(t.re)
    }

    /// M|k⟩.
    pub fn apply(&self, k: &Ket) -> Result<Vec<Complex64>> {
        if k.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: k.dim(),
            });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j) * k.amp(j)).sum())
            .collect())
    }

    /// ⟨bra|M|ket⟩.
    pub fn matrix_element(&self, bra: &Ket, ket: &Ket) -> Result<Complex64> {
        let mk = self.apply(ket)?;
        if bra.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: bra.dim(),
            });
        }
        Ok(bra
            .amps()
            .iter()
            .zip(&mk)
            .map(|(b, v)| b.conj() * v)
            .sum())
    }

    /// (trace, Bloch vector) view; qubits only.
    pub fn bloch_view(&self) -> Result<(f64, [f64; 3])> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim,
            });
        }
        let t = self.trace();
        let x = 2.0 * self.entry(0, 1).re;
        let y = -2.0 * self.entry(0, 1).im;
        let z = self.entry(0, 0).re - self.entry(1, 1).re;
        Ok((t, [x, y, z]))
    }

    /// Image of a trace-0 qubit operator in the Euclidean space 𝒮.
    pub fn s_image(&self) -> Result<SPoint> {
        let (t, bloch) = self.bloch_view()?;
        if t.abs() > EPS_HERM {
            return Err(Error::NotTraceZero(t));
        }
        Ok(SPoint { bloch })
    }

    fn check_dim(&self, other: &HermitianOp) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    fn check_trace_zero(&self) -> Result<()> {
        let t = self.trace();
        if t.abs() > EPS_HERM {
            return Err(Error::NotTraceZero(t));
        }
        Ok(())
    }
}

/// A point of 𝒮, the Euclidean space of traceless qubit Hermitian
/// operators, in Bloch coordinates. Density-operator images fill the
/// radius-1/2 ball around the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SPoint {
    pub bloch: [f64; 3],
}

impl SPoint {
    pub fn new(bloch: [f64; 3]) -> SPoint {
        SPoint { bloch }
    }

    pub fn origin() -> SPoint {
        SPoint { bloch: [0.0; 3] }
    }

    /// Image of |k⟩⟨k| − 𝕀/2 for a qubit ket.
    pub fn from_ket(k: &Ket) -> Result<SPoint> {
        Ok(SPoint {
            bloch: k.bloch()?,
        })
    }

    pub fn to_op(self) -> HermitianOp {
        HermitianOp::from_trace_bloch(0.0, self.bloch)
    }

    /// The scalar product (A, B) = (1/2)Tr(AB) in Bloch coordinates.
    pub fn dot(self, other: SPoint) -> f64 {
        0.25 * (self.bloch[0] * other.bloch[0]
            + self.bloch[1] * other.bloch[1]
            + self.bloch[2] * other.bloch[2])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add(self, other: SPoint) -> SPoint {
        SPoint {
            bloch: [
                self.bloch[0] + other.bloch[0],
                self.bloch[1] + other.bloch[1],
                self.bloch[2] + other.bloch[2],
            ],
        }
    }

    pub fn sub(self, other: SPoint) -> SPoint {
        SPoint {
            bloch: [
                self.bloch[0] - other.bloch[0],
                self.bloch[1] - other.bloch[1],
                self.bloch[2] - other.bloch[2],
            ],
        }
    }

    pub fn scale(self, c: f64) -> SPoint {
        SPoint {
            bloch: [self.bloch[0] * c, self.bloch[1] * c, self.bloch[2] * c],
        }
    }

    pub fn normalized(self) -> SPoint {
        self.scale(1.0 / self.norm())
    }

    /// Membership in the Bloch ball of density-operator images.
    pub fn in_bloch_ball(self, tol: f64) -> bool {
        self.dot(self) <= 0.25 + tol
    }
}

/// (A, B) = (1/2)Tr(AB) on the trace-0 subspace (any dimension).
pub fn scalar_product(a: &HermitianOp, b: &HermitianOp) -> Result<f64> {
    a.check_trace_zero()?;
    b.check_trace_zero()?;
    Ok(0.5 * a.trace_product(b)?)
}

/// Euclidean distance √((1/2)Tr(A−B)²) on the trace-0 subspace.
pub fn distance(a: &HermitianOp, b: &HermitianOp) -> Result<f64> {
    a.check_trace_zero()?;
    b.check_trace_zero()?;
    let d = a.sub(b)?;
    Ok((0.5 * d.trace_product(&d)?).max(0.0).sqrt())
}

/// True iff | |⟨φ|ψ⟩|² − 1/2 | ≤ tol.
pub fn is_mutually_unbiased(phi: &Ket, psi: &Ket, tol: f64) -> Result<bool> {
    let overlap = phi.inner(psi)?;
    Ok((overlap.norm_sqr() - 0.5).abs() <= tol)
}

/// The pair (γ, γ⊥) mutually unbiased to both inputs. The Bloch vector
/// of γ is normalize(r_φ × r_ψ), the right-hand-rule orientation; γ⊥ is
/// antipodal.
pub fn mub_partner(phi: &Ket, psi: &Ket) -> Result<(Ket, Ket)> {
    let m = phi.inner(psi)?.norm();
    if m <= EPS_DIST || m >= 1.0 - EPS_DIST {
        return Err(Error::DegenerateEnsemble(m));
    }
    let a = phi.bloch()?;
    let b = psi.bloch()?;
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let gamma = Ket::from_bloch(cross)?;
    let gamma_perp = gamma.orthogonal_complement()?;
    Ok((gamma, gamma_perp))
}

/// Coefficients (a, b, c) of the unique expansion
/// M = a|φ⟩⟨φ| + b|ψ⟩⟨ψ| + c|γ⟩⟨γ| − ((a+b+c)/2)𝕀
/// over a pairwise mutually unbiased triple.
pub fn decompose_in_mub_basis(
    m: &HermitianOp,
    triple: (&Ket, &Ket, &Ket),
) -> Result<(f64, f64, f64)> {
    let (phi, psi, gamma) = triple;
    let mut worst = 0.0_f64;
    for (u, v) in [(phi, psi), (phi, gamma), (psi, gamma)] {
        worst = worst.max((u.inner(v)?.norm_sqr() - 0.5).abs());
    }
    if worst > EPS_MUB {
        return Err(Error::NotMubTriple(worst));
    }
    let image = m.s_image()?;
    // MUB images are orthonormal after scaling by 2, so the coefficients
    // are orthogonal-projection coordinates.
    let coeff = |k: &Ket| -> Result<f64> {
        Ok(image.dot(SPoint::from_ket(k)?) / 0.25)
    };
    Ok((coeff(phi)?, coeff(psi)?, coeff(gamma)?))
}
