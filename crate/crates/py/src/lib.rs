//! Python bindings for the citerank core.
//!
//! Core errors surface as `citerank_py.CiterankError`, a `ValueError`
//! subclass.

use citerank::citegraph::{degree_centrality, in_degree, network_summary};
use citerank::pagerank::{pagerank as solve, pagerank_oracle, DanglingPolicy, PageRankConfig};
use citerank::rankstats::{self, CorrelationMatrix};
use citerank::scoring;
use citerank::synthnet::{self, CartelSpec, SynthConfig};
use citerank::CitationNetwork;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(citerank_py, CiterankError, PyValueError);

fn err(e: citerank::Error) -> PyErr {
    CiterankError::new_err(e.to_string())
}

/// Directed, weighted institution citation network.
#[pyclass(name = "Network", module = "citerank_py")]
pub struct PyNetwork {
    inner: CitationNetwork,
}

#[pymethods]
impl PyNetwork {
    /// `edges` holds `(citing, cited, weight)` triples; `nodes` adds
    /// institutions without edges.
    #[new]
    #[pyo3(signature = (edges, nodes = Vec::new(), subject = String::new(), self_loops = false))]
    fn new(edges: Vec<(String, String, u64)>, nodes: Vec<String>, subject: String, self_loops: bool) -> PyResult<Self> {
        let inner = CitationNetwork::from_labelled_edges(
            edges.iter().map(|(s, t, w)| (s.as_str(), t.as_str(), *w)),
            &nodes,
            subject,
            self_loops,
        )
        .map_err(err)?;
        Ok(Self { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let s = network_summary(&self.inner);
        format!("Network(nodes={}, edges={}, citations={})", s.nodes, s.edges, s.citations)
    }

    #[getter]
    fn node_ids(&self) -> Vec<String> {
        self.inner.node_ids().to_vec()
    }

    fn edges(&self) -> Vec<(String, String, u64)> {
        let ids = self.inner.node_ids();
        self.inner.edges().map(|(s, t, w)| (ids[s].clone(), ids[t].clone(), w)).collect()
    }

    fn total_weight(&self) -> u64 {
        self.inner.total_weight()
    }

    fn in_degree(&self) -> Vec<usize> {
        in_degree(&self.inner)
    }

    fn degree_centrality(&self) -> PyResult<Vec<f64>> {
        degree_centrality(&self.inner).map_err(err)
    }

    /// Iterative PageRank; `dangling` is `"uniform"` or `"teleport"`.
    #[pyo3(signature = (damping = 0.85, tol = 1e-12, max_iter = 1000, dangling = "uniform"))]
    fn pagerank(&self, damping: f64, tol: f64, max_iter: usize, dangling: &str) -> PyResult<PageRank> {
        let cfg = config(damping, tol, max_iter, dangling)?;
        let r = solve(&self.inner, &cfg).map_err(err)?;
        Ok(PageRank {
            normalized: scoring::normalize_pagerank(&r),
            scores: r.scores,
            iterations: r.iterations_used,
            converged: r.converged,
            final_delta: r.final_delta,
        })
    }

    /// Dense direct solve, for networks of at most 200 nodes.
    #[pyo3(signature = (damping = 0.85, dangling = "uniform"))]
    fn pagerank_exact(&self, damping: f64, dangling: &str) -> PyResult<Vec<f64>> {
        pagerank_oracle(&self.inner, &config(damping, 1e-12, 1000, dangling)?).map_err(err)
    }
}

fn config(damping: f64, tol: f64, max_iter: usize, dangling: &str) -> PyResult<PageRankConfig> {
    let dangling_policy: DanglingPolicy = dangling.parse().map_err(err)?;
    Ok(PageRankConfig { damping, tolerance: tol, max_iterations: max_iter, dangling_policy })
}

#[pyclass(get_all, frozen, module = "citerank_py")]
pub struct PageRank {
    scores: Vec<f64>,
    /// Scores rescaled so the top institution gets 100.
    normalized: Vec<f64>,
    iterations: usize,
    converged: bool,
    final_delta: f64,
}

#[pyclass(get_all, frozen, module = "citerank_py")]
pub struct Displacement {
    n: usize,
    mean: f64,
    std: f64,
    p50: f64,
    p75: f64,
    p90: f64,
}

#[pyclass(get_all, frozen, module = "citerank_py")]
pub struct Pca {
    variables: Vec<String>,
    eigenvalues: Vec<f64>,
    explained_share: Vec<f64>,
    loadings: Vec<Vec<f64>>,
    rotated_loadings: Vec<Vec<f64>>,
    rotated_variance_share: Vec<f64>,
}

/// Square-root compression onto [0, 100].
#[pyfunction]
fn compress(raw: Vec<f64>) -> PyResult<Vec<f64>> {
    scoring::compress(&raw).map_err(err)
}

/// Rescales PageRank scores so the maximum maps to 100.
#[pyfunction]
fn normalize(scores: Vec<f64>) -> Vec<f64> {
    scoring::normalize_scores(&scores)
}

/// Returns `(r, p)`.
#[pyfunction]
fn pearson(x: Vec<f64>, y: Vec<f64>) -> PyResult<(f64, f64)> {
    rankstats::pearson(&x, &y).map(|c| (c.r, c.p)).map_err(err)
}

/// Returns `(rho, p)`.
#[pyfunction]
fn spearman(x: Vec<f64>, y: Vec<f64>) -> PyResult<(f64, f64)> {
    rankstats::spearman(&x, &y).map(|c| (c.r, c.p)).map_err(err)
}

/// Kendall's W over rankings given as rows (one row per rater).
#[pyfunction]
fn kendall_w(rows: Vec<Vec<f64>>) -> PyResult<f64> {
    rankstats::kendall_w(&rows).map_err(err)
}

/// Correlation of `x` and `y` controlling for `z`; returns `(r, p)`.
#[pyfunction]
fn partial_correlation(x: Vec<f64>, y: Vec<f64>, z: Vec<f64>) -> PyResult<(f64, f64)> {
    rankstats::partial_correlation(&x, &y, &z).map(|c| (c.r, c.p)).map_err(err)
}

#[pyfunction]
fn rank_displacement(a: Vec<f64>, b: Vec<f64>) -> PyResult<Displacement> {
    let d = rankstats::rank_displacement(&a, &b).map_err(err)?;
    Ok(Displacement { n: d.n, mean: d.mean, std: d.std, p50: d.p50, p75: d.p75, p90: d.p90 })
}

/// PCA with varimax on a correlation matrix given as nested lists.
#[pyfunction]
#[pyo3(signature = (variables, matrix, retain = 2))]
fn pca(variables: Vec<String>, matrix: Vec<Vec<f64>>, retain: usize) -> PyResult<Pca> {
    let corr = CorrelationMatrix::new(variables, matrix).map_err(err)?;
    let r = rankstats::pca(&corr, retain).map_err(err)?;
    Ok(Pca {
        variables: r.variables,
        eigenvalues: r.eigenvalues,
        explained_share: r.explained_share,
        loadings: r.loadings,
        rotated_loadings: r.rotated_loadings,
        rotated_variance_share: r.rotated_variance_share,
    })
}

/// Seeded synthetic network, optionally with a citation cartel.
#[pyfunction]
#[pyo3(signature = (n_nodes, seed, exponent = 1.0, mean_out = 10.0, cartel_size = None, cartel_boost = 20.0))]
fn synth(
    n_nodes: usize,
    seed: u64,
    exponent: f64,
    mean_out: f64,
    cartel_size: Option<usize>,
    cartel_boost: f64,
) -> PyResult<PyNetwork> {
    let cfg = SynthConfig {
        n_nodes,
        attachment_exponent: exponent,
        mean_out_citations: mean_out,
        cartel: cartel_size.map(|member_count| CartelSpec { member_count, internal_weight_boost: cartel_boost }),
        seed,
    };
    Ok(PyNetwork { inner: synthnet::generate(&cfg).map_err(err)? })
}

#[pymodule]
fn citerank_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CiterankError", m.py().get_type::<CiterankError>())?;
    m.add_class::<PyNetwork>()?;
    m.add_class::<PageRank>()?;
    m.add_class::<Displacement>()?;
    m.add_class::<Pca>()?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(spearman, m)?)?;
    m.add_function(wrap_pyfunction!(kendall_w, m)?)?;
    m.add_function(wrap_pyfunction!(partial_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(rank_displacement, m)?)?;
    m.add_function(wrap_pyfunction!(pca, m)?)?;
    m.add_function(wrap_pyfunction!(synth, m)?)?;
    Ok(())
}
