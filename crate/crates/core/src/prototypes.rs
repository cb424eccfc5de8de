//! Unit-norm class prototypes with moving-average updates.
//!
//! One prototype row per class (IND classes first, then OOD). Prototypes
//! receive no gradients; they change only through [`PrototypeBank::ema_update`].

use ndarray::{Array2, ArrayView1, ArrayView2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

const UNIT_NORM_TOL: f64 = 1e-6;

/// Which prototype rows a nearest-prototype query may consider.
#[derive(Debug, Clone, Copy)]
pub enum Restrict {
    All,
    /// Only the OOD rows, i.e. indices `n_ind..`.
    OodOnly { n_ind: usize },
}

#[derive(Debug, Clone)]
pub struct PrototypeBank {
    prototypes: Array2<f64>,
    gamma: f64,
}

impl PrototypeBank {
    /// Draws each prototype from an isotropic Gaussian and normalizes it.
    /// Deterministic under `seed`. The moving-average coefficient defaults
    /// to 0.9 and can be overridden with [`PrototypeBank::with_gamma`].
    pub fn init_random(n_classes: usize, dim: usize, seed: u64) -> Result<PrototypeBank> {
        if dim < 2 {
            return Err(Error::Config(format!("prototype dim must be >= 2, got {dim}")));
        }
        if n_classes == 0 {
            return Err(Error::Config("prototype bank needs at least one class".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = StandardNormal;
        let mut prototypes = Array2::zeros((n_classes, dim));
        for mut row in prototypes.outer_iter_mut() {
            for v in row.iter_mut() {
                *v = normal.sample(&mut rng);
            }
            let norm = row.dot(&row).sqrt();
            row /= norm;
        }
        Ok(PrototypeBank {
            prototypes,
            gamma: 0.9,
        })
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<PrototypeBank> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::Config(format!("gamma must lie in [0,1), got {gamma}")));
        }
        self.gamma = gamma;
        Ok(self)
    }

    /// Rebuilds a bank from raw rows (checkpoint loading). Rows must already
    /// be unit-norm.
    pub fn from_parts(prototypes: Array2<f64>, gamma: f64) -> Result<PrototypeBank> {
        for row in prototypes.outer_iter() {
            let norm = row.dot(&row).sqrt();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::InvalidInput(format!(
                    "prototype row has norm {norm}, expected 1"
                )));
            }
        }
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::Config(format!("gamma must lie in [0,1), got {gamma}")));
        }
        Ok(PrototypeBank { prototypes, gamma })
    }

    pub fn n_classes(&self) -> usize {
        self.prototypes.nrows()
    }

    pub fn dim(&self) -> usize {
        self.prototypes.ncols()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn rows(&self) -> ArrayView2<'_, f64> {
        self.prototypes.view()
    }

    pub fn row(&self, class: usize) -> ArrayView1<'_, f64> {
        self.prototypes.row(class)
    }

    /// Moving-average update of the prototype for `class`:
    /// `mu_c <- Normalize(gamma * mu_c + (1 - gamma) * z)`.
    /// `z` must be unit-norm. Only row `class` changes.
    pub fn ema_update(&mut self, z: ArrayView1<'_, f64>, class: usize) -> Result<()> {
        if class >= self.n_classes() {
            return Err(Error::InvalidInput(format!(
                "class {class} out of range for {} prototypes",
                self.n_classes()
            )));
        }
        if z.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: z.len(),
            });
        }
        let z_norm = z.dot(&z).sqrt();
        if (z_norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "ema_update requires unit-norm z, got norm {z_norm}"
            )));
        }
        let mut row = self.prototypes.row_mut(class);
        for (m, &zi) in row.iter_mut().zip(z.iter()) {
            *m = self.gamma * *m + (1.0 - self.gamma) * zi;
        }
        let norm = row.dot(&row).sqrt();
        if norm < 1e-12 {
            return Err(Error::Divergence(
                "prototype update collapsed to the zero vector".into(),
            ));
        }
        row /= norm;
        debug_assert!((row.dot(&row).sqrt() - 1.0).abs() < 1e-9);
        Ok(())
    }
}

/// Index of the prototype with the highest cosine similarity to `z` among
/// the permitted rows. Ties break toward the lowest index.
pub fn nearest_prototype(
    bank: &PrototypeBank,
    z: ArrayView1<'_, f64>,
    restrict: Restrict,
) -> Result<usize> {
    let start = match restrict {
        Restrict::All => 0,
        Restrict::OodOnly { n_ind } => n_ind,
    };
    if start >= bank.n_classes() {
        return Err(Error::InvalidInput(
            "nearest_prototype: permitted prototype set is empty".into(),
        ));
    }
    let mut best_idx = start;
    let mut best_sim = f64::NEG_INFINITY;
    for c in start..bank.n_classes() {
        let sim = bank.row(c).dot(&z);
        if sim > best_sim {
            best_sim = sim;
            best_idx = c;
        }
    }
    Ok(best_idx)
}
