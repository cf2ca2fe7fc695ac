//! Tunable constants of the general pipeline.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expander::ratio_from_f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    /// Expansion parameter `s = expansion_coeff * n^expansion_exponent`.
    pub expansion_coeff: f64,
    pub expansion_exponent: f64,
    /// Connector size `u = connector_coeff * n^connector_exponent`.
    pub connector_coeff: f64,
    pub connector_exponent: f64,
    /// Route length bound `n^route_length_exponent + 2`.
    pub route_length_exponent: f64,
    /// Strip length `L = d / strip_divisor`.
    pub strip_divisor: f64,
    /// Degree reduction stops below this average degree.
    pub degree_floor: f64,
    /// Leftover budget exponents `2 - a` for the expander and dense stages.
    pub leftover_exponents: (f64, f64),
    /// Connector resamples before giving up.
    pub connector_attempts: usize,
    /// Random pairs routed when self-testing a connector.
    pub self_test_pairs: usize,
    /// `u` never exceeds this fraction of `n`.
    pub max_connector_fraction: f64,
    pub min_route_length: usize,
}

impl PipelineParams {
    /// The constants as stated for the asymptotic regime.
    pub fn asymptotic() -> Self {
        PipelineParams {
            expansion_coeff: 3.0,
            expansion_exponent: 8.0 / 9.0,
            connector_coeff: 3.0,
            connector_exponent: 8.0 / 9.0,
            route_length_exponent: 2.0 / 9.0,
            strip_divisor: 30.0,
            degree_floor: 30.0,
            leftover_exponents: (1.0 / 9.0, 1.0 / 10.0),
            connector_attempts: 5,
            self_test_pairs: 8,
            max_connector_fraction: 0.5,
            min_route_length: 3,
        }
    }

    pub fn expansion_s(&self, n: usize) -> Ratio<usize> {
        ratio_from_f64(self.expansion_coeff * (n as f64).powf(self.expansion_exponent))
    }

    pub fn connector_size(&self, n: usize) -> usize {
        let u = (self.connector_coeff * (n as f64).powf(self.connector_exponent)).round() as usize;
        let cap = (self.max_connector_fraction * n as f64).floor() as usize;
        u.min(cap).max(1).min(n)
    }

    pub fn route_limit(&self, n: usize) -> usize {
        let l = (n as f64).powf(self.route_length_exponent).ceil() as usize + 2;
        l.max(self.min_route_length)
    }

    pub fn strip_length(&self, d: f64) -> usize {
        ((d / self.strip_divisor).floor() as usize).max(3)
    }

    /// `4 n^(2 - a)` for the expander stage.
    pub fn expander_leftover_budget(&self, n: usize) -> f64 {
        4.0 * (n as f64).powf(2.0 - self.leftover_exponents.0)
    }

    /// `n^(2 - b)` for the dense stage.
    pub fn dense_leftover_budget(&self, n: usize) -> f64 {
        (n as f64).powf(2.0 - self.leftover_exponents.1)
    }

    /// Sets one field from a `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Precondition(format!("invalid value for {key}: {value:?}"));
        let f = || value.parse::<f64>().map_err(|_| bad());
        let u = || value.parse::<usize>().map_err(|_| bad());
        match key {
            "expansion_coeff" => self.expansion_coeff = f()?,
            "expansion_exponent" => self.expansion_exponent = f()?,
            "connector_coeff" => self.connector_coeff = f()?,
            "connector_exponent" => self.connector_exponent = f()?,
            "route_length_exponent" => self.route_length_exponent = f()?,
            "strip_divisor" => self.strip_divisor = f()?,
            "degree_floor" => self.degree_floor = f()?,
            "connector_attempts" => self.connector_attempts = u()?,
            "self_test_pairs" => self.self_test_pairs = u()?,
            "max_connector_fraction" => self.max_connector_fraction = f()?,
            "min_route_length" => self.min_route_length = u()?,
            _ => return Err(Error::Precondition(format!("unknown parameter {key}"))),
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.expansion_coeff,
            self.connector_coeff,
            self.route_length_exponent,
            self.strip_divisor,
            self.degree_floor,
            self.max_connector_fraction,
        ];
        if positive.iter().any(|&x| !(x > 0.0 && x.is_finite())) || self.connector_attempts == 0 {
            return Err(Error::Precondition("pipeline parameters must be positive".into()));
        }
        if self.max_connector_fraction > 1.0 {
            return Err(Error::Precondition("connector fraction above 1".into()));
        }
        Ok(())
    }
}

impl Default for PipelineParams {
    /// Desk-scale calibration; see the README for how these were chosen.
    fn default() -> Self {
        PipelineParams {
            expansion_coeff: 0.5,
            expansion_exponent: 0.5,
            connector_coeff: 1.0,
            connector_exponent: 0.5,
            strip_divisor: 2.0,
            degree_floor: 6.0,
            ..Self::asymptotic()
        }
    }
}
