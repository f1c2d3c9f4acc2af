use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Validate,
    Hypersurface,
    Blowup,
    Chow,
    Pipeline,
    Sample,
    Regress,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: u32,
    pub input_path: Option<String>,
    pub seed: u64,
    pub trials: u32,
    pub coeff_bound: u32,
    pub spair_budget: usize,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            n: 2,
            input_path: None,
            seed: 0,
            trials: 20,
            coeff_bound: 3,
            spair_budget: pblab_core::GbOptions::DEFAULT_BUDGET,
            output: OutputFormat::Text,
        }
    }

    pub fn check(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::Config(format!("n must be at least 2 (got {})", self.n)));
        }
        if self.trials < 1 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        if self.coeff_bound < 1 {
            return Err(CliError::Config("coefficient bound must be at least 1".into()));
        }
        Ok(())
    }

    pub fn gb_options(&self) -> pblab_core::GbOptions {
        pblab_core::GbOptions::with_budget(self.spair_budget)
    }
}
