use std::fs;
use std::path::PathBuf;

use clap::Args;
use dyckx::identities::Triplet;
use dyckx::{IntMatrix, SpecFile, SubshiftSpec};

use crate::CliError;

/// Either a spec file or an inline two-class triplet.
#[derive(Args, Debug, Clone, Default)]
pub struct SpecArgs {
    /// JSON spec file: {"N", "M", "Aminus", "A", "Aplus", optional "subsets"}
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Inline A⁻ as JSON rows, e.g. '[[1,1],[1,0]]'
    #[arg(long, value_name = "ROWS", allow_hyphen_values = true)]
    pub aminus: Option<String>,
    /// Inline A as JSON rows
    #[arg(long = "a", value_name = "ROWS", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Inline A⁺ as JSON rows
    #[arg(long, value_name = "ROWS", allow_hyphen_values = true)]
    pub aplus: Option<String>,
    /// Copy count for inline triplets (M₀ = M₁ = m)
    #[arg(long, default_value_t = 1)]
    pub m: usize,
}

fn parse_matrix(name: &str, text: &str) -> Result<IntMatrix, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

impl SpecArgs {
    pub fn triplet(&self) -> Result<Option<Triplet>, CliError> {
        if let Some(path) = &self.spec {
            let spec = self.load_file(path)?;
            if spec.classes() != 2 {
                return Err(CliError::Input(format!("{} has N = {}, a two-class spec is needed", path.display(), spec.classes())));
            }
            return Ok(Some(Triplet::new(spec.a_minus().clone(), spec.a().clone(), spec.a_plus().clone())));
        }
        match (&self.aminus, &self.a, &self.aplus) {
            (None, None, None) => Ok(None),
            (Some(am), Some(a), Some(ap)) => {
                let t = [("aminus", am), ("a", a), ("aplus", ap)]
                    .into_iter()
                    .map(|(n, s)| parse_matrix(n, s))
                    .collect::<Result<Vec<_>, _>>()?;
                if t.iter().any(|m| m.dim() != 2) {
                    return Err(CliError::Input("inline matrices must be 2x2; use --spec for other sizes".into()));
                }
                let [am, a, ap]: [IntMatrix; 3] = t.try_into().expect("three matrices");
                Ok(Some(Triplet::new(am, a, ap)))
            }
            _ => Err(CliError::Input("--aminus, --a and --aplus must be given together".into())),
        }
    }

    fn load_file(&self, path: &PathBuf) -> Result<SubshiftSpec, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let file = SpecFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        file.to_spec().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn spec_opt(&self) -> Result<Option<SubshiftSpec>, CliError> {
        if let Some(path) = &self.spec {
            return self.load_file(path).map(Some);
        }
        match self.triplet()? {
            None => Ok(None),
            Some(t) => t.to_spec(self.m).map(Some).map_err(|e| CliError::Input(e.to_string())),
        }
    }

    pub fn spec(&self) -> Result<SubshiftSpec, CliError> {
        self.spec_opt()?
            .ok_or_else(|| CliError::Input("no spec given; use --spec FILE or --aminus/--a/--aplus".into()))
    }
}
