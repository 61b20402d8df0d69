use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Potential ladder used by the ray tracers.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RaySchedule {
    /// Rungs per halving of the potential.
    pub rungs_per_halving: u32,
    /// `|z|` beyond which `phi(z) = z` is used.
    pub escape_radius: f64,
    /// Potential at which landing estimates are taken.
    pub target_potential: f64,
    /// Deepest potential the parameter tracer will descend to.
    pub floor_potential: f64,
    pub max_newton: u32,
    /// Smallest rung ratio reached by step halving before giving up.
    pub min_ratio_step: f64,
}

impl Default for RaySchedule {
    fn default() -> Self {
        RaySchedule {
            rungs_per_halving: 8,
            escape_radius: 1e6,
            target_potential: 1e-12,
            floor_potential: 1e-250,
            max_newton: 60,
            min_ratio_step: 1e-7,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Relative residual accepted for periodic points.
    pub residual_tol: f64,
    /// Agreement required between landing estimates.
    pub landing_tol: f64,
    /// Orbit splitting clusters within `cluster_factor * sqrt(r)`.
    pub cluster_factor: f64,
    /// Poles closer than this are merged.
    pub merge_tol: f64,
    /// Poles closer than this but not mergeable abort.
    pub collision_tol: f64,
    pub ray: RaySchedule,
    /// Largest `d^n` enumerated by the combinatorial engine.
    pub enumeration_budget: u64,
    /// Largest c-degree of a resultant computed exactly.
    pub resultant_degree_budget: usize,
    /// Radius of monodromy loops.
    pub loop_radius: f64,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            residual_tol: 1e-10,
            landing_tol: 1e-4,
            cluster_factor: 10.0,
            merge_tol: 1e-9,
            collision_tol: 1e-6,
            ray: RaySchedule::default(),
            enumeration_budget: 1 << 24,
            resultant_degree_budget: 256,
            loop_radius: 1e-2,
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        let cfg: Config = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("residual_tol", self.residual_tol),
            ("landing_tol", self.landing_tol),
            ("cluster_factor", self.cluster_factor),
            ("merge_tol", self.merge_tol),
            ("collision_tol", self.collision_tol),
            ("loop_radius", self.loop_radius),
            ("ray.escape_radius", self.ray.escape_radius),
            ("ray.target_potential", self.ray.target_potential),
            ("ray.floor_potential", self.ray.floor_potential),
            ("ray.min_ratio_step", self.ray.min_ratio_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.merge_tol >= self.collision_tol {
            return Err(Error::Config("merge_tol must be below collision_tol".into()));
        }
        if self.ray.rungs_per_halving == 0 || self.ray.max_newton == 0 {
            return Err(Error::Config("ray schedule counts must be positive".into()));
        }
        Ok(())
    }
}
