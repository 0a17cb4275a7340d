//! Deterministic samplers for sweeps, scans, and property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::hermitian::HermitianOp;
use crate::ket::Ket;
use crate::weak::PPSEnsemble;

pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Deterministic near-uniform grid of `count` points on the unit sphere
/// (golden-angle spiral).
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden * i as f64;
            [r * t.cos(), r * t.sin(), z]
        })
        .collect()
}

fn gauss(rng: &mut impl Rng) -> f64 {
    // Box-Muller; two uniforms per normal keeps the stream simple.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Haar-ish random ket via normalized complex Gaussian amplitudes.
pub fn random_ket(rng: &mut impl Rng, dim: usize) -> Ket {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(gauss(rng), gauss(rng)))
            .collect();
        if let Ok(k) = Ket::new(&amps) {
            return k;
        }
    }
}

/// Random traceless Hermitian operator with Gaussian coefficients.
pub fn random_trace0(rng: &mut impl Rng, dim: usize) -> HermitianOp {
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        rows[i][i] = Complex64::new(gauss(rng), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(gauss(rng), gauss(rng)) / 2.0_f64.sqrt();
            rows[i][j] = z;
            rows[j][i] = z.conj();
        }
    }
    let op = HermitianOp::from_matrix(&rows).unwrap();
    let t = op.trace();
    op.sub(&HermitianOp::identity(dim).scale(t / dim as f64))
        .unwrap()
}

/// Random valid ensemble with an overlap margin wide enough for
/// 1e-9-level closed-form checks.
pub fn random_ensemble(rng: &mut impl Rng) -> PPSEnsemble {
    loop {
        let pre = random_ket(rng, 2);
        let post = random_ket(rng, 2);
        if let Ok(o) = post.inner(&pre) {
            let m = o.norm();
            if m > 1e-3 && m < 1.0 - 1e-3 {
                if let Ok(e) = PPSEnsemble::new(&pre, &post) {
                    return e;
                }
            }
        }
    }
}

/// Random mutually unbiased pre/post pair.
pub fn random_mub_ensemble(rng: &mut impl Rng) -> PPSEnsemble {
    loop {
        let pre = random_ket(rng, 2);
        let r = pre.bloch().unwrap();
        // Random direction orthogonal to the pre-state's Bloch vector.
        let v = [gauss(rng), gauss(rng), gauss(rng)];
        let dot = v[0] * r[0] + v[1] * r[1] + v[2] * r[2];
        let w = [v[0] - dot * r[0], v[1] - dot * r[1], v[2] - dot * r[2]];
        let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if n < 1e-6 {
            continue;
        }
        let post = Ket::from_bloch([w[0] / n, w[1] / n, w[2] / n]).unwrap();
        if let Ok(e) = PPSEnsemble::new(&pre, &post) {
            return e;
        }
    }
}
