//! Publication records in, institution citation networks out.
//!
//! Records arrive as JSON Lines:
//!
//! ```text
//! {"pub_id": "P1", "year": 2012, "category": "Business, Finance",
//!  "affiliations": ["Univ A"],
//!  "references": [{"pub_id": "P0", "affiliations": ["Univ B"]}]}
//! ```
//!
//! Institution identity is the affiliation string after trimming and
//! lower-casing. Counting is full: every (citing institution, cited
//! institution) pair of a reference adds one citation.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::citegraph::CitationNetwork;
use crate::error::{Error, Result};
use crate::profile::SubjectProfile;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub pub_id: Option<String>,
    pub affiliations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub pub_id: String,
    pub year: i32,
    pub category: String,
    /// Normalized, deduplicated institution ids of the authors.
    pub affiliations: Vec<String>,
    pub references: Vec<Reference>,
}

impl PublicationRecord {
    /// Institutions of each reference, one list per reference.
    pub fn cited_affiliations(&self) -> impl Iterator<Item = &[String]> {
        self.references.iter().map(|r| r.affiliations.as_slice())
    }
}

/// A line that failed validation and was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineIssue {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub records: Vec<PublicationRecord>,
    pub issues: Vec<LineIssue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    pub_id: Option<String>,
    affiliations: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    pub_id: String,
    year: i32,
    category: String,
    affiliations: Vec<String>,
    #[serde(default)]
    references: Vec<RawReference>,
}

/// Canonical institution id: trimmed and lower-cased.
pub fn normalize_affiliation(raw: &str) -> String {
    raw.trim().to_lowercase()
}

fn normalize_set(raw: Vec<String>) -> Vec<String> {
    raw.iter()
        .map(|a| normalize_affiliation(a))
        .filter(|a| !a.is_empty())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn validate(raw: RawRecord) -> std::result::Result<PublicationRecord, String> {
    let pub_id = raw.pub_id.trim().to_string();
    if pub_id.is_empty() {
        return Err("empty pub_id".into());
    }
    let affiliations = normalize_set(raw.affiliations);
    if affiliations.is_empty() {
        return Err(format!("record `{pub_id}` has no affiliations"));
    }
    let references = raw
        .references
        .into_iter()
        .map(|r| Reference {
            pub_id: r.pub_id.map(|p| p.trim().to_string()).filter(|p| !p.is_empty()),
            affiliations: normalize_set(r.affiliations),
        })
        .collect();
    Ok(PublicationRecord {
        pub_id,
        year: raw.year,
        category: raw.category.trim().to_string(),
        affiliations,
        references,
    })
}

/// Parses JSON Lines records. Blank lines are ignored.
///
/// Malformed lines are skipped and reported in [`ParseOutcome::issues`];
/// with `strict` the first one aborts the parse. A repeated `pub_id` is
/// always fatal.
pub fn parse_records<R: BufRead>(reader: R, strict: bool) -> Result<ParseOutcome> {
    let mut out = ParseOutcome::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<RawRecord>(&line)
            .map_err(|e| e.to_string())
            .and_then(validate);
        match parsed {
            Ok(rec) => {
                if let Some(&first_line) = seen.get(&rec.pub_id) {
                    return Err(Error::DuplicatePubId {
                        pub_id: rec.pub_id,
                        first_line,
                        second_line: line_no,
                    });
                }
                seen.insert(rec.pub_id.clone(), line_no);
                out.records.push(rec);
            }
            Err(message) if strict => {
                return Err(Error::MalformedRecord { line: line_no, message });
            }
            Err(message) => out.issues.push(LineIssue { line: line_no, message }),
        }
    }
    Ok(out)
}

/// Records inside the profile's category and year window.
pub fn filter_records<'a>(
    records: &'a [PublicationRecord],
    profile: &'a SubjectProfile,
) -> impl Iterator<Item = &'a PublicationRecord> + 'a {
    records.iter().filter(|r| profile.admits(&r.category, r.year))
}

/// Publications per institution over the profile's records.
pub fn publication_counts(
    records: &[PublicationRecord],
    profile: &SubjectProfile,
) -> BTreeMap<String, u32> {
    let mut counts = BTreeMap::new();
    for rec in filter_records(records, profile) {
        for a in &rec.affiliations {
            *counts.entry(a.clone()).or_insert(0) += 1;
        }
    }
    counts
}

/// Institutions with at least `profile.publication_threshold` publications.
pub fn apply_threshold(records: &[PublicationRecord], profile: &SubjectProfile) -> BTreeSet<String> {
    publication_counts(records, profile)
        .into_iter()
        .filter(|&(_, c)| c >= profile.publication_threshold)
        .map(|(a, _)| a)
        .collect()
}

/// Aggregates cross-citations among retained institutions.
///
/// Only references to publications of the retained set (in-scope records
/// with at least one retained affiliation) count. Nodes are all retained
/// institutions in sorted order.
pub fn build_network(
    records: &[PublicationRecord],
    retained: &BTreeSet<String>,
    profile: &SubjectProfile,
    self_loops: bool,
) -> Result<CitationNetwork> {
    if retained.is_empty() {
        return Err(Error::EmptyRetainedSet);
    }
    let in_scope: Vec<&PublicationRecord> = filter_records(records, profile)
        .filter(|r| r.affiliations.iter().any(|a| retained.contains(a)))
        .collect();
    let retained_pubs: HashSet<&str> = in_scope.iter().map(|r| r.pub_id.as_str()).collect();

    let ids: Vec<String> = retained.iter().cloned().collect();
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();

    let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for rec in in_scope {
        let citing: Vec<usize> = rec.affiliations.iter().filter_map(|a| index.get(a.as_str()).copied()).collect();
        for reference in &rec.references {
            let Some(cited_pub) = reference.pub_id.as_deref() else { continue };
            if !retained_pubs.contains(cited_pub) {
                continue;
            }
            for b in reference.affiliations.iter().filter_map(|a| index.get(a.as_str()).copied()) {
                for &a in &citing {
                    if a != b || self_loops {
                        *weights.entry((a, b)).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    CitationNetwork::new(
        ids,
        weights.into_iter().map(|((a, b), w)| (a, b, w)),
        profile.name.clone(),
        self_loops,
    )
}

/// Writes `institution,publications,in_degree` rows for every node.
pub fn write_node_csv<W: Write>(
    net: &CitationNetwork,
    counts: &BTreeMap<String, u32>,
    writer: W,
) -> Result<()> {
    let in_deg = crate::citegraph::in_degree(net);
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["institution", "publications", "in_degree"])?;
    for (i, id) in net.node_ids().iter().enumerate() {
        let pubs = counts.get(id).copied().unwrap_or(0);
        w.write_record([id.as_str(), &pubs.to_string(), &in_deg[i].to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the `institution` column of a node-list CSV.
pub fn read_node_csv<R: std::io::Read>(reader: R) -> Result<Vec<String>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let pos = rdr
        .headers()?
        .iter()
        .position(|h| h.trim() == "institution")
        .ok_or_else(|| Error::MissingColumn("institution".into()))?;
    let mut ids = Vec::new();
    for rec in rdr.records() {
        ids.push(rec?[pos].trim().to_string());
    }
    Ok(ids)
}
