//! Generalized Heron problem: find a point of a ball minimizing the sum of distances
//! to a family of hypercubes.
//!
//! As a monotone inclusion, `A_i = ∂d_{Ω_i}` for the cubes and `A_r = N_{Ω_r}` for the
//! ball, so `J_{γA_i} = prox_{γ d_{Ω_i}}` and `J_{γA_r} = P_{Ω_r}`.

use std::f64::consts::SQRT_2;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{check_dim, Result, SplitError};
use crate::resolvent::{DistanceSubdifferential, NormalCone, Operator};
use crate::sets::{BallSet, BoxSet, Projector};
use crate::vector::Vector;

pub const CUBE_HALF_SIDE: f64 = SQRT_2 / 2.0;
pub const BALL_RADIUS: f64 = 10.0;
/// Every generated center has at least this norm.
pub const MIN_CENTER_NORM: f64 = 12.0;

/// How cube centers are drawn. Either way a draw is rejected unless its norm is at least
/// [`MIN_CENTER_NORM`] and its cube stays outside the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CenterModel {
    /// Coordinates i.i.d. uniform in `[-half_width, half_width]`.
    UniformCube { half_width: f64 },
    /// Direction uniform on the sphere, norm uniform in `[min_norm, max_norm]`.
    Sphere { min_norm: f64, max_norm: f64 },
}

impl Default for CenterModel {
    fn default() -> Self {
        CenterModel::UniformCube { half_width: 10.0 }
    }
}

impl CenterModel {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CenterModel::UniformCube { half_width } => half_width.is_finite() && half_width > 0.0,
            CenterModel::Sphere { min_norm, max_norm } => {
                min_norm.is_finite()
                    && max_norm.is_finite()
                    && 0.0 < min_norm
                    && min_norm <= max_norm
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SplitError::InvalidParameter {
                name: "center model",
                reason: format!("{self:?} has an empty or non-finite range"),
            })
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
        match *self {
            CenterModel::UniformCube { half_width } => (0..dim)
                .map(|_| rng.random_range(-half_width..=half_width))
                .collect(),
            CenterModel::Sphere { min_norm, max_norm } => loop {
                let dir: Vec<f64> = (0..dim)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect();
                let n = crate::vector::norm(&dir);
                if n > 1e-12 {
                    let radius = rng.random_range(min_norm..=max_norm);
                    break dir.into_iter().map(|d| d * radius / n).collect();
                }
            },
        }
    }
}

const MAX_REJECTIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct HeronInstance {
    dim: usize,
    centers: Vec<Vector>,
    seed: u64,
}

impl HeronInstance {
    /// Builds an instance from explicit cube centers (`r = centers.len() + 1`).
    pub fn from_centers(centers: Vec<Vector>, seed: u64) -> Result<Self> {
        let dim = centers
            .first()
            .ok_or(SplitError::Empty("cube centers"))?
            .dim();
        for c in &centers {
            check_dim(dim, c.dim())?;
        }
        Ok(HeronInstance { dim, centers, seed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total number of sets `r` (cubes plus the ball).
    pub fn num_sets(&self) -> usize {
        self.centers.len() + 1
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn centers(&self) -> &[Vector] {
        &self.centers
    }

    pub fn cubes(&self) -> Vec<BoxSet> {
        self.centers
            .iter()
            .map(|c| BoxSet::cube(c, CUBE_HALF_SIDE).expect("finite center"))
            .collect()
    }

    pub fn ball(&self) -> BallSet {
        BallSet::centered(self.dim, BALL_RADIUS).expect("positive radius")
    }

    /// `Σ_i d_{Ω_i}(x)` over the cubes.
    pub fn objective(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim, x.dim())?;
        Ok(self.cubes().iter().map(|c| c.distance_to(x)).sum())
    }

    /// `[∂d_{Ω_1}, ..., ∂d_{Ω_{r-1}}, N_{Ω_r}]`, the ball last.
    pub fn operators(&self) -> Vec<Operator> {
        let mut ops: Vec<Operator> = self
            .cubes()
            .into_iter()
            .map(|c| Arc::new(DistanceSubdifferential(c)) as Operator)
            .collect();
        ops.push(Arc::new(NormalCone(self.ball())));
        ops
    }
}

/// Draws `r - 1` cube centers with the default [`CenterModel`].
pub fn generate_heron(seed: u64, dim: usize, r: usize) -> Result<HeronInstance> {
    generate_heron_with(seed, dim, r, CenterModel::default())
}

pub fn generate_heron_with(
    seed: u64,
    dim: usize,
    r: usize,
    model: CenterModel,
) -> Result<HeronInstance> {
    if dim == 0 {
        return Err(SplitError::InvalidParameter {
            name: "dim",
            reason: "must be positive".into(),
        });
    }
    if r < 3 {
        return Err(SplitError::InvalidParameter {
            name: "r",
            reason: format!("need at least 3 sets, got {r}"),
        });
    }
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = vec![0.0; dim];
    let mut centers = Vec::with_capacity(r - 1);
    for _ in 0..r - 1 {
        let mut attempts = 0;
        let center = loop {
            let c = Vector::from_raw(model.sample(&mut rng, dim));
            if c.norm() >= MIN_CENTER_NORM
                && BoxSet::cube(&c, CUBE_HALF_SIDE)?.distance_to(&origin) > BALL_RADIUS
            {
                break c;
            }
            attempts += 1;
            if attempts >= MAX_REJECTIONS {
                return Err(SplitError::InvalidParameter {
                    name: "dim",
                    reason: format!(
                        "could not place a cube outside the ball in R^{dim} with {model:?}"
                    ),
                });
            }
        };
        centers.push(center);
    }
    HeronInstance::from_centers(centers, seed)
}
