//! Weighted directed institution networks and their degree statistics.
//!
//! A weight `ω(i, j)` counts citations *from* institution `i` *to*
//! institution `j`. Zero weights are never stored, so the adjacency of an
//! ordered pair is simply whether the pair has an entry.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::fmt_num;

#[derive(Debug, Clone, PartialEq)]
pub struct CitationNetwork {
    node_ids: Vec<String>,
    index: HashMap<String, usize>,
    weights: BTreeMap<(usize, usize), u64>,
    subject: String,
    self_loops_included: bool,
}

impl CitationNetwork {
    /// Builds a network from node ids and `(source, target, weight)` triples.
    ///
    /// Weights on repeated pairs are summed and zero weights are skipped.
    /// Self-loops are dropped unless `self_loops` is set.
    pub fn new<I>(
        node_ids: Vec<String>,
        edges: I,
        subject: impl Into<String>,
        self_loops: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut index = HashMap::with_capacity(node_ids.len());
        for (i, id) in node_ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateNode(id.clone()));
            }
        }
        let n = node_ids.len();
        let mut weights = BTreeMap::new();
        for (source, target, w) in edges {
            if source >= n || target >= n {
                return Err(Error::NodeOutOfRange { from: source, to: target, n });
            }
            if w == 0 || (source == target && !self_loops) {
                continue;
            }
            *weights.entry((source, target)).or_insert(0) += w;
        }
        Ok(Self {
            node_ids,
            index,
            weights,
            subject: subject.into(),
            self_loops_included: self_loops,
        })
    }

    /// Builds a network from labelled edges. Nodes are the sorted union of
    /// `extra_nodes` and every edge endpoint.
    pub fn from_labelled_edges<'a, I>(
        edges: I,
        extra_nodes: &[String],
        subject: impl Into<String>,
        self_loops: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, u64)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut ids: Vec<String> = extra_nodes.to_vec();
        for (s, t, _) in &edges {
            ids.push((*s).to_string());
            ids.push((*t).to_string());
        }
        ids.sort();
        ids.dedup();
        let lookup: HashMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let triples: Vec<_> = edges
            .iter()
            .map(|(s, t, w)| (lookup[s], lookup[t], *w))
            .collect();
        Self::new(ids, triples, subject, self_loops)
    }

    pub fn len(&self) -> usize {
        self.node_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_ids.is_empty()
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn self_loops_included(&self) -> bool {
        self.self_loops_included
    }

    pub fn weight(&self, source: usize, target: usize) -> u64 {
        self.weights.get(&(source, target)).copied().unwrap_or(0)
    }

    /// `A(i, j)`: 1 if `i` cites `j`, else 0.
    pub fn adjacency(&self, source: usize, target: usize) -> u8 {
        u8::from(self.weights.contains_key(&(source, target)))
    }

    /// Stored edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.weights.iter().map(|(&(s, t), &w)| (s, t, w))
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Total citations received by each node (self-loops excluded).
    pub fn in_weight(&self) -> Vec<u64> {
        let mut out = vec![0; self.len()];
        for (s, t, w) in self.edges() {
            if s != t {
                out[t] += w;
            }
        }
        out
    }

    /// Returns a copy with nodes relabelled: node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidConfig("not a permutation".into()));
        }
        let mut ids = vec![String::new(); n];
        for (i, id) in self.node_ids.iter().enumerate() {
            ids[perm[i]] = id.clone();
        }
        let edges = self.edges().map(|(s, t, w)| (perm[s], perm[t], w));
        Self::new(ids, edges, self.subject.clone(), self.self_loops_included)
    }

    /// Writes `source,target,weight` rows using institution ids.
    pub fn write_edge_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["source", "target", "weight"])?;
        for (s, t, weight) in self.edges() {
            w.write_record([&self.node_ids[s], &self.node_ids[t], &weight.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a `source,target,weight` CSV. Nodes listed in `extra_nodes`
    /// are kept even without incident edges.
    pub fn read_edge_csv<R: Read>(
        reader: R,
        extra_nodes: &[String],
        subject: impl Into<String>,
        self_loops: bool,
    ) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))
        };
        let (si, ti, wi) = (col("source")?, col("target")?, col("weight")?);
        let mut rows = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let weight: u64 = rec[wi].trim().parse().map_err(|_| {
                Error::Table(format!("row {}: weight `{}` is not a non-negative integer", line + 2, &rec[wi]))
            })?;
            rows.push((rec[si].trim().to_string(), rec[ti].trim().to_string(), weight));
        }
        Self::from_labelled_edges(
            rows.iter().map(|(s, t, w)| (s.as_str(), t.as_str(), *w)),
            extra_nodes,
            subject,
            self_loops,
        )
    }
}

/// Counts of the network as reported in a data summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub nodes: usize,
    pub citations: u64,
    pub edges: usize,
    pub self_loops_included: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub in_degree: Vec<usize>,
    pub degree_centrality: Vec<f64>,
    pub centrality_distribution: Vec<(f64, f64)>,
}

/// Number of distinct institutions citing each node, ignoring self-citation.
pub fn in_degree(net: &CitationNetwork) -> Vec<usize> {
    let mut k = vec![0; net.len()];
    for (s, t, _) in net.edges() {
        if s != t {
            k[t] += 1;
        }
    }
    k
}

pub fn degree_centrality(net: &CitationNetwork) -> Result<Vec<f64>> {
    let n = net.len();
    if n < 2 {
        return Err(Error::DegenerateNetwork { n });
    }
    let denom = (n - 1) as f64;
    Ok(in_degree(net).into_iter().map(|k| k as f64 / denom).collect())
}

/// Empirical distribution of degree centrality, sorted by value.
///
/// Values are grouped on the exact integer in-degree, so no binning takes
/// place.
pub fn centrality_distribution(net: &CitationNetwork) -> Result<Vec<(f64, f64)>> {
    let n = net.len();
    if n < 2 {
        return Err(Error::DegenerateNetwork { n });
    }
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for k in in_degree(net) {
        *tally.entry(k).or_insert(0) += 1;
    }
    Ok(tally
        .into_iter()
        .map(|(k, count)| (k as f64 / (n - 1) as f64, count as f64 / n as f64))
        .collect())
}

pub fn network_summary(net: &CitationNetwork) -> NetworkSummary {
    NetworkSummary {
        nodes: net.len(),
        citations: net.total_weight(),
        edges: net.edge_count(),
        self_loops_included: net.self_loops_included(),
    }
}

pub fn degree_report(net: &CitationNetwork) -> Result<DegreeReport> {
    Ok(DegreeReport {
        in_degree: in_degree(net),
        degree_centrality: degree_centrality(net)?,
        centrality_distribution: centrality_distribution(net)?,
    })
}

/// Writes a `value,probability` CSV.
pub fn write_distribution_csv<W: Write>(dist: &[(f64, f64)], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["value", "probability"])?;
    for (v, p) in dist {
        w.write_record([fmt_num(*v), fmt_num(*p)])?;
    }
    w.flush()?;
    Ok(())
}
