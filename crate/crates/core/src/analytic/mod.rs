//! Limiting distributions of the optimal cycle and the quantities used to
//! bound it. All logarithms are natural.

mod gamma;
mod laws;
pub mod quadrature;
mod supercritical;
mod tree;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instances::Orientation;

pub use gamma::ln_gamma_p;
pub use laws::{
    expected_light_count_exact, expected_light_count_limit, expected_light_count_limit_or_inf,
    length_pmf, limit_cdf, pmf_sum, tail_asymptote, tail_constant, PmfEvaluator,
};
pub use supercritical::{
    brownian_band_probability, expected_uniform_light_count, supercritical_bounds,
    uniform_light_probability_estimate, variance_ratio_bound, SupercriticalBounds,
    SupercriticalParams, VarianceBound,
};
pub use tree::{tree_function, CRITICAL};

/// Which optimum a limit law describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Mean,
    Max,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Mean => "mean",
            Objective::Max => "max",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Objective::Mean),
            "max" => Ok(Objective::Max),
            _ => Err(Error::Parse(format!("unknown objective '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitLaw {
    UndirectedMax,
    DirectedMax,
    UndirectedMean,
    DirectedMean,
}

impl LimitLaw {
    pub const ALL: [LimitLaw; 4] = [
        LimitLaw::UndirectedMax,
        LimitLaw::DirectedMax,
        LimitLaw::UndirectedMean,
        LimitLaw::DirectedMean,
    ];

    pub fn new(orientation: Orientation, objective: Objective) -> Self {
        match (orientation, objective) {
            (Orientation::Undirected, Objective::Max) => LimitLaw::UndirectedMax,
            (Orientation::Directed, Objective::Max) => LimitLaw::DirectedMax,
            (Orientation::Undirected, Objective::Mean) => LimitLaw::UndirectedMean,
            (Orientation::Directed, Objective::Mean) => LimitLaw::DirectedMean,
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            LimitLaw::UndirectedMax | LimitLaw::UndirectedMean => Orientation::Undirected,
            LimitLaw::DirectedMax | LimitLaw::DirectedMean => Orientation::Directed,
        }
    }

    pub fn objective(self) -> Objective {
        match self {
            LimitLaw::UndirectedMax | LimitLaw::DirectedMax => Objective::Max,
            LimitLaw::UndirectedMean | LimitLaw::DirectedMean => Objective::Mean,
        }
    }

    /// Shortest cycle length: 3 undirected, 2 directed.
    pub fn k_min(self) -> usize {
        self.orientation().min_cycle_len()
    }

    /// Scaled weight beyond which the limiting CDF is 1.
    pub fn threshold(self) -> f64 {
        match self.objective() {
            Objective::Mean => CRITICAL,
            Objective::Max => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LimitLaw::UndirectedMax => "undirected_max",
            LimitLaw::DirectedMax => "directed_max",
            LimitLaw::UndirectedMean => "undirected_mean",
            LimitLaw::DirectedMean => "directed_mean",
        }
    }
}

impl fmt::Display for LimitLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LimitLaw {
    type Err = Error;

    /// Accepts `directed_mean` and `directed-mean` spellings.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        LimitLaw::ALL
            .into_iter()
            .find(|v| v.as_str() == key)
            .ok_or_else(|| Error::Parse(format!("unknown variant '{s}'")))
    }
}
