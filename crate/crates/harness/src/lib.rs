//! Diagram files, generators, oracles and verification campaigns for
//! `lambek-core`, plus the `lambek-chase` command-line tool.

pub mod campaign;
pub mod checks;
pub mod diagram;
pub mod duality;
pub mod enumerate;
pub mod generate;
pub mod oracle;
pub mod report;

use std::sync::OnceLock;

use lambek_core::PSetCategory;

/// Overrides the pointed-set enumeration cap.
pub const ENUM_CAP_VAR: &str = "LAMBEK_CHASE_ENUM_CAP";

/// The cap set in [`ENUM_CAP_VAR`], if any.
pub fn enum_cap_from_env() -> Result<Option<u128>, String> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("{ENUM_CAP_VAR} must be a non-negative integer, got '{v}'")),
        Err(_) => Ok(None),
    }
}

/// Pointed-set category honouring [`ENUM_CAP_VAR`]; an unparsable value
/// leaves the default cap.
pub fn pset_category() -> PSetCategory {
    static CAP: OnceLock<Option<u128>> = OnceLock::new();
    match CAP.get_or_init(|| enum_cap_from_env().ok().flatten()) {
        Some(cap) => PSetCategory::with_enum_cap(*cap),
        None => PSetCategory::new(),
    }
}
