//! Optional key=value configuration file.
//!
//! Keys mirror the long flag names of the subcommands (without the leading
//! dashes), one `key = value` pair per line; `#` starts a comment line.
//! Explicit flags always win over config entries. Keys that do not mirror
//! any flag are rejected so typos cannot silently change a run.

use crate::errors::CliError;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

/// Union of the long flag names across all subcommands.
const KNOWN_KEYS: &[&str] = &[
    "a-squared",
    "delta-phi",
    "format",
    "grid",
    "insertion-scale",
    "mass",
    "max-mass",
    "methods",
    "offset",
    "order",
    "output",
    "seed",
    "suppression",
    "tau",
];

/// Parsed config entries; an empty table when no file was given.
pub struct ConfigTable {
    entries: BTreeMap<String, String>,
}

impl ConfigTable {
    pub fn empty() -> Self {
        ConfigTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|error| {
            CliError::usage(format!(
                "cannot read config file {}: {error}",
                path.display()
            ))
        })?;
        let mut entries = BTreeMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "config line {}: expected `key = value`, got '{raw}'",
                    index + 1
                )));
            };
            let key = key.trim();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::usage(format!(
                    "config line {}: key '{key}' does not mirror any flag (known keys: {})",
                    index + 1,
                    KNOWN_KEYS.join(", ")
                )));
            }
            if entries.insert(key.to_string(), value).is_some() {
                return Err(CliError::usage(format!(
                    "config line {}: duplicate key '{key}'",
                    index + 1
                )));
            }
        }
        Ok(ConfigTable { entries })
    }

    /// The flag value when given, otherwise the parsed config value,
    /// otherwise None; config parse failures name the key.
    pub fn merge<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.entries.get(key) {
            None => Ok(None),
            Some(text) => text.parse::<T>().map(Some).map_err(|error| {
                CliError::usage(format!(
                    "config value for '{key}' ('{text}') is invalid: {error}"
                ))
            }),
        }
    }

    /// Boolean switch: a flag that was set wins; otherwise the config value
    /// (`true`/`false`), defaulting to off.
    pub fn merge_switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        Ok(self.merge::<bool>(None, key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn table(text: &str) -> Result<ConfigTable, CliError> {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        ConfigTable::load(file.path())
    }

    #[test]
    fn parses_pairs_and_comments() {
        let t = table("# a comment\nmass = 4\n\n  tau=0:1:5  \n").unwrap();
        assert_eq!(t.merge::<u32>(None, "mass").unwrap(), Some(4));
        assert_eq!(
            t.merge::<String>(None, "tau").unwrap().as_deref(),
            Some("0:1:5")
        );
        assert_eq!(t.merge::<u64>(None, "seed").unwrap(), None);
    }

    #[test]
    fn flags_win_over_config() {
        let t = table("mass = 4\n").unwrap();
        assert_eq!(t.merge::<u32>(Some(9), "mass").unwrap(), Some(9));
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed_keys() {
        assert!(matches!(table("masss = 4\n"), Err(CliError::Usage(_))));
        assert!(matches!(
            table("mass = 4\nmass = 5\n"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(table("just words\n"), Err(CliError::Usage(_))));
    }

    #[test]
    fn reports_bad_values_with_the_key_name() {
        let t = table("mass = not-a-number\n").unwrap();
        let err = t.merge::<u32>(None, "mass").unwrap_err();
        assert!(err.message().contains("mass"));
        assert_eq!(err.exit_code(), 2);
    }
}
