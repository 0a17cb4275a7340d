//! Pure states with a canonical global phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::{EPS_DIST, EPS_NORM};

/// A normalized pure state with a canonical global phase: the first
/// component of largest modulus is real and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: Vec<Complex64>,
}

impl Ket {
    /// Normalize and phase-canonicalize a tuple of amplitudes.
    pub fn new(amplitudes: &[Complex64]) -> Result<Ket> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq.sqrt() < EPS_NORM {
            return Err(Error::ZeroVector);
        }
        let norm = norm_sq.sqrt();
        let mut amps: Vec<Complex64> = amplitudes.iter().map(|a| a / norm).collect();
        // First component attaining the maximum modulus fixes the phase.
        let mut pivot = 0;
        let mut best = 0.0;
        for (i, a) in amps.iter().enumerate() {
            let m = a.norm();
            if m > best + EPS_NORM {
                best = m;
                pivot = i;
            }
        }
        let phase = amps[pivot] / amps[pivot].norm();
        for a in amps.iter_mut() {
            *a /= phase;
        }
        // Kill the rounding residue on the pivot's imaginary part.
        amps[pivot] = Complex64::new(amps[pivot].re, 0.0);
        Ok(Ket { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Ket) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |0⟩
    pub fn zero() -> Ket {
        Ket::new(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap()
    }

    /// |1⟩
    pub fn one() -> Ket {
        Ket::new(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap()
    }

    /// |+⟩ = (|0⟩ + |1⟩)/√2
    pub fn plus() -> Ket {
        Ket::new(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap()
    }

    /// |−⟩ = (|0⟩ − |1⟩)/√2
    pub fn minus() -> Ket {
        Ket::new(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]).unwrap()
    }

    /// |+i⟩ = (|0⟩ + i|1⟩)/√2
    pub fn plus_i() -> Ket {
        Ket::new(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap()
    }

    /// |−i⟩ = (|0⟩ − i|1⟩)/√2
    pub fn minus_i() -> Ket {
        Ket::new(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)]).unwrap()
    }

    /// Qubit ket for a unit Bloch direction.
    pub fn from_bloch(dir: [f64; 3]) -> Result<Ket> {
        let [x, y, z] = dir;
        let r = (x * x + y * y + z * z).sqrt();
        if r < EPS_NORM {
            return Err(Error::ZeroVector);
        }
        let theta = (z / r).clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x);
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        Ket::new(&[
            Complex64::new(c, 0.0),
            Complex64::from_polar(s, phi),
        ])
    }

    /// Bloch unit vector of a qubit ket.
    pub fn bloch(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        let a = self.amps[0];
        let b = self.amps[1];
        let cross = a.conj() * b;
        Ok([2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()])
    }

    /// The state orthogonal to a qubit ket, phase-canonicalized.
    pub fn orthogonal_complement(&self) -> Result<Ket> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        Ket::new(&[-self.amps[1].conj(), self.amps[0].conj()])
    }

    /// Phase-free distinctness test on projector overlap.
    pub fn is_distinct_nonorthogonal(&self, other: &Ket) -> Result<bool> {
        let m = self.inner(other)?.norm();
        Ok(m > EPS_DIST && m < 1.0 - EPS_DIST)
    }
}
