//! Noisy image-patch extraction: pick random square patches, flatten
//! them row-major into observation vectors, and inject seeded Gaussian
//! noise of a known level.
//!
//! Noise is added to real-valued intensities without clipping or
//! re-quantization, so the injected level is exactly the ground truth
//! (a deliberate deviation from camera-realistic pipelines).

use serde::{Deserialize, Serialize};

use crate::io::pgm::GrayImage;
use crate::matrix::Matrix;
use crate::rng::CounterRng;
use crate::spectrum::SampleMatrix;
use crate::{Error, Result};

mod stream {
    pub const POSITIONS: u64 = 10;
    pub const NOISE: u64 = 11;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatchConfig {
    /// Side length of each square patch; the observation dimension is
    /// its square.
    pub patch_side: usize,
    /// Number of patches (the sample count).
    pub count: usize,
    /// Injected Gaussian noise standard deviation, >= 0.
    pub noise_sigma: f64,
    pub seed: u64,
}

impl PatchConfig {
    pub fn n_dim(&self) -> usize {
        self.patch_side * self.patch_side
    }
}

/// Extract `count` patches at uniform random top-left corners (fully
/// inside the image), flatten row-major, and add seeded noise.
pub fn extract_noisy_patches(image: &GrayImage, cfg: &PatchConfig) -> Result<SampleMatrix> {
    if cfg.patch_side == 0 {
        return Err(Error::InvalidArgument("patch_side must be >= 1".into()));
    }
    if cfg.count < 2 {
        return Err(Error::InsufficientSamples(format!(
            "{} patch(es) requested, need at least 2",
            cfg.count
        )));
    }
    if !cfg.noise_sigma.is_finite() || cfg.noise_sigma < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "noise_sigma must be >= 0, got {}",
            cfg.noise_sigma
        )));
    }
    if image.width < cfg.patch_side || image.height < cfg.patch_side {
        return Err(Error::InvalidArgument(format!(
            "image {}x{} is smaller than patch side {}",
            image.width, image.height, cfg.patch_side
        )));
    }
    let side = cfg.patch_side;
    let n_dim = cfg.n_dim();
    let x_range = (image.width - side + 1) as u64;
    let y_range = (image.height - side + 1) as u64;
    let pos_rng = CounterRng::new(cfg.seed, stream::POSITIONS, 0);
    let noise_rng = CounterRng::new(cfg.seed, stream::NOISE, 0);

    let mut data = Matrix::zeros(cfg.count, n_dim);
    for p in 0..cfg.count {
        let x0 = pos_rng.index_at(2 * p as u64, x_range) as usize;
        let y0 = pos_rng.index_at(2 * p as u64 + 1, y_range) as usize;
        let row = data.row_mut(p);
        for dy in 0..side {
            for dx in 0..side {
                let idx = dy * side + dx;
                let noise = cfg.noise_sigma * noise_rng.normal_at((p * n_dim + idx) as u64);
                row[idx] = image.at(x0 + dx, y0 + dy) + noise;
            }
        }
    }
    SampleMatrix::from_matrix(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient_image(w: usize, h: usize) -> GrayImage {
        GrayImage {
            width: w,
            height: h,
            pixels: (0..w * h).map(|i| (i % 251) as f64).collect(),
        }
    }

    #[test]
    fn shapes_and_determinism() {
        let img = gradient_image(40, 30);
        let cfg = PatchConfig {
            patch_side: 8,
            count: 12,
            noise_sigma: 2.0,
            seed: 99,
        };
        let a = extract_noisy_patches(&img, &cfg).unwrap();
        assert_eq!(a.n_samples(), 12);
        assert_eq!(a.n_dim(), 64);
        let b = extract_noisy_patches(&img, &cfg).unwrap();
        assert_eq!(a, b);
        let c = extract_noisy_patches(
            &img,
            &PatchConfig {
                seed: 100,
                ..cfg
            },
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_noise_on_constant_image_gives_identical_patches() {
        let img = GrayImage {
            width: 20,
            height: 20,
            pixels: vec![128.0; 400],
        };
        let cfg = PatchConfig {
            patch_side: 4,
            count: 5,
            noise_sigma: 0.0,
            seed: 1,
        };
        let m = extract_noisy_patches(&img, &cfg).unwrap();
        for i in 1..5 {
            assert_eq!(m.row(i), m.row(0));
        }
    }

    #[test]
    fn patches_stay_inside_bounds() {
        // a patch reading out of bounds would panic on the pixel index
        let img = gradient_image(9, 17);
        let cfg = PatchConfig {
            patch_side: 9,
            count: 50,
            noise_sigma: 0.5,
            seed: 7,
        };
        let m = extract_noisy_patches(&img, &cfg).unwrap();
        assert_eq!(m.n_dim(), 81);
    }

    #[test]
    fn oversized_patches_are_rejected() {
        let img = gradient_image(8, 8);
        let cfg = PatchConfig {
            patch_side: 9,
            count: 5,
            noise_sigma: 0.0,
            seed: 1,
        };
        assert!(matches!(
            extract_noisy_patches(&img, &cfg),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn negative_sigma_is_rejected() {
        let img = gradient_image(16, 16);
        let cfg = PatchConfig {
            patch_side: 4,
            count: 5,
            noise_sigma: -1.0,
            seed: 1,
        };
        assert!(extract_noisy_patches(&img, &cfg).is_err());
    }
}
