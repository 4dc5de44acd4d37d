//! Scriptable checks over lattice simplices with one interior lattice point.
//!
//! Each check implements [`Check`] and is looked up by name in a
//! [`Registry`]. [`run`] executes one check and maps its result to an exit
//! status: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or parse errors, 3 when an enumeration would exceed the cap.

pub mod checks;
pub mod error;
pub mod input;

use std::path::PathBuf;

use onepoint::report::{render_human, Report};

pub use error::{CliError, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_USAGE};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_RADIUS: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    /// Pretty-printed JSON; every number is an integer or fraction string.
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub check: String,
    pub inputs: Vec<PathBuf>,
    pub cap: u64,
    pub format: Format,
    pub seed: u64,
    pub radius: i64,
    pub dim: Option<usize>,
    pub point: Option<String>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(check: &str) -> Self {
        RunConfig {
            check: check.to_string(),
            inputs: Vec::new(),
            cap: onepoint::DEFAULT_CAP,
            format: Format::Human,
            seed: DEFAULT_SEED,
            radius: DEFAULT_RADIUS,
            dim: None,
            point: None,
            out: None,
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError>;
}

/// Checks keyed by name, kept in registration order.
#[derive(Default)]
pub struct Registry {
    checks: Vec<Box<dyn Check>>,
}

impl Registry {
    pub fn register(&mut self, check: Box<dyn Check>) {
        assert!(
            self.get(check.name()).is_none(),
            "check `{}` registered twice",
            check.name()
        );
        self.checks.push(check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.iter().map(|c| c.as_ref())
    }

    pub fn standard() -> Self {
        let mut r = Registry::default();
        checks::register_all(&mut r);
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Human => render_human(reports),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

pub fn run_with(registry: &Registry, config: &RunConfig) -> Outcome {
    let Some(check) = registry.get(&config.check) else {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!(
                "unknown check `{}`; available: {}\n",
                config.check,
                registry.names().join(", ")
            ),
        };
    };
    match check.run(config) {
        Ok(reports) => {
            let failed: Vec<String> = reports
                .iter()
                .flat_map(|r| {
                    r.failures()
                        .map(move |e| format!("{}: {} = {}", r.check, e.label, e.value))
                })
                .collect();
            let pass = reports.iter().all(|r| r.pass);
            Outcome {
                code: if pass { EXIT_PASS } else { EXIT_CHECK_FAILED },
                stdout: render(&reports, config.format),
                stderr: failed.iter().map(|f| format!("failed: {f}\n")).collect(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    run_with(&Registry::standard(), config)
}
