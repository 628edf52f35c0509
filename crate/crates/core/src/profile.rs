//! Subject profiles: record filter, publication threshold and indicator
//! weights for one ranked subject.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming a default profile configuration file.
pub const CONFIG_ENV: &str = "CITERANK_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Indicator {
    Pub,
    Cnci,
    Ic,
    Top,
    #[serde(alias = "AWARD")]
    Awd,
}

impl Indicator {
    pub const ALL: [Indicator; 5] = [Self::Pub, Self::Cnci, Self::Ic, Self::Top, Self::Awd];

    pub fn name(self) -> &'static str {
        match self {
            Self::Pub => "PUB",
            Self::Cnci => "CNCI",
            Self::Ic => "IC",
            Self::Top => "TOP",
            Self::Awd => "AWD",
        }
    }

    /// Name of the compressed-score column for this indicator.
    pub fn score_column(self) -> String {
        format!("{}_score", self.name())
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PUB" => Ok(Self::Pub),
            "CNCI" => Ok(Self::Cnci),
            "IC" => Ok(Self::Ic),
            "TOP" => Ok(Self::Top),
            "AWD" | "AWARD" => Ok(Self::Awd),
            other => Err(Error::InvalidConfig(format!("unknown indicator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectProfile {
    pub name: String,
    pub category: String,
    pub publication_threshold: u32,
    pub year_range: (i32, i32),
    pub indicator_weights: BTreeMap<Indicator, u32>,
}

impl SubjectProfile {
    pub fn validate(&self) -> Result<()> {
        if self.publication_threshold < 1 {
            return Err(Error::InvalidConfig(format!(
                "{}: publication_threshold must be >= 1",
                self.name
            )));
        }
        if self.year_range.0 > self.year_range.1 {
            return Err(Error::InvalidConfig(format!(
                "{}: year range {}-{} is reversed",
                self.name, self.year_range.0, self.year_range.1
            )));
        }
        if self.total_weight() == 0 {
            return Err(Error::InvalidConfig(format!("{}: all indicator weights are zero", self.name)));
        }
        Ok(())
    }

    pub fn weight(&self, ind: Indicator) -> u32 {
        self.indicator_weights.get(&ind).copied().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u32 {
        self.indicator_weights.values().sum()
    }

    /// Whether a record with this category and year falls inside the profile.
    pub fn admits(&self, category: &str, year: i32) -> bool {
        category.trim() == self.category.trim()
            && (self.year_range.0..=self.year_range.1).contains(&year)
    }
}

fn table_profile(name: &str, category: &str, w: [u32; 5]) -> SubjectProfile {
    SubjectProfile {
        name: name.to_string(),
        category: category.to_string(),
        publication_threshold: 1,
        year_range: (2010, 2014),
        indicator_weights: Indicator::ALL.into_iter().zip(w).collect(),
    }
}

/// The five shipped subjects with their PUB/CNCI/IC/TOP/AWD weights.
///
/// Publication thresholds default to 1; real thresholds come from a
/// configuration file or the command line.
pub fn default_profiles() -> Vec<SubjectProfile> {
    vec![
        table_profile("DEN", "Dentistry, Oral Surgery & Medicine", [100, 100, 20, 100, 100]),
        table_profile("FIN", "Business, Finance", [150, 50, 10, 100, 0]),
        table_profile("LIB", "Information Science & Library Science", [150, 50, 10, 100, 0]),
        table_profile("TEL", "Telecommunications", [100, 100, 20, 100, 0]),
        table_profile("VET", "Veterinary Sciences", [100, 100, 20, 200, 0]),
    ]
}

#[derive(Debug, Deserialize)]
struct ProfileFile {
    #[serde(rename = "subject")]
    subjects: Vec<SubjectProfile>,
}

/// Parses a TOML file holding `[[subject]]` tables.
pub fn parse_profiles(text: &str) -> Result<Vec<SubjectProfile>> {
    let file: ProfileFile = toml::from_str(text)?;
    for p in &file.subjects {
        p.validate()?;
    }
    Ok(file.subjects)
}

pub fn load_profiles(path: &Path) -> Result<Vec<SubjectProfile>> {
    parse_profiles(&std::fs::read_to_string(path)?)
}

/// Looks up a profile by name (case-insensitive).
pub fn find_profile(profiles: &[SubjectProfile], name: &str) -> Result<SubjectProfile> {
    profiles
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| Error::UnknownSubject(name.to_string()))
}
