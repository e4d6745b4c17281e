//! CSV files with a `#` metadata block: tool version, units, run notes and
//! the resolved config, followed by a plain header row.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::{RunConfig, Section, ECHO_BEGIN, ECHO_END};
use crate::error::{CliError, Result};

pub const UNITS_NOTE: &str =
    "units: frequencies and energies MHz (cyclic), fields V/cm, times us, lengths um";

pub struct CsvFile {
    text: String,
}

impl CsvFile {
    pub fn new(config: &RunConfig, section: Section, notes: &[String], columns: &[&str]) -> Self {
        let mut text = format!(
            "# flzs {} {}\n# {UNITS_NOTE}\n",
            env!("CARGO_PKG_VERSION"),
            section.name()
        );
        for n in notes {
            let _ = writeln!(text, "# {n}");
        }
        let _ = writeln!(text, "{ECHO_BEGIN}");
        for line in config.echo(section).lines() {
            if line.is_empty() {
                text.push_str("#\n");
            } else {
                let _ = writeln!(text, "# {line}");
            }
        }
        let _ = writeln!(text, "{ECHO_END}");
        text.push_str(&columns.join(","));
        text.push('\n');
        Self { text }
    }

    /// Appends one row. Floats use `Debug`: shortest round-trip digits,
    /// switching to exponent form for very small or large magnitudes.
    pub fn row(&mut self, fields: &[&dyn std::fmt::Debug]) {
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            let _ = write!(self.text, "{f:?}");
        }
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn write(&self, dir: &Path, name: &str) -> Result<PathBuf> {
        let path = dir.join(name);
        std::fs::write(&path, &self.text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        Ok(path)
    }
}

/// Joins numbers for a note line.
pub fn list(values: impl IntoIterator<Item = f64>) -> String {
    values
        .into_iter()
        .map(|v| format!("{v:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::extract_echo;

    #[test]
    fn header_layout_and_echo() {
        let cfg = RunConfig::default().resolve().unwrap();
        let mut f = CsvFile::new(
            &cfg,
            Section::Evolve,
            &["norm_drift: 0".into()],
            &["t_us", "pop1", "pop2"],
        );
        f.row(&[&0.0, &1.0, &0.1]);
        let text = f.as_str();
        assert!(text.starts_with("# flzs "));
        assert!(text.ends_with("t_us,pop1,pop2\n0.0,1.0,0.1\n"));
        let back = RunConfig::parse(&extract_echo(text).unwrap())
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(back.evolve, cfg.evolve);
        assert_eq!(back.model, cfg.model);
    }
}
