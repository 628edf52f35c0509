"""Smoke test for the citerank_py extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import math

import citerank_py as cr


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok    {what}")


net = cr.Network([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
check(len(net) == 3 and net.in_degree() == [1, 1, 1], "network construction")
check(net.degree_centrality() == [0.5, 0.5, 0.5], "degree centrality")

pr = net.pagerank()
check(pr.converged and all(s == 1 / 3 for s in pr.scores), "pagerank on a 3-cycle")
check(pr.normalized == [100.0, 100.0, 100.0], "normalized scores")

syn = cr.synth(80, seed=3, cartel_size=4)
it, exact = syn.pagerank().scores, syn.pagerank_exact()
check(sum(abs(a - b) for a, b in zip(it, exact)) < 1e-10, "iterative matches exact solve")
check(abs(sum(it) - 1) < 1e-12, "scores sum to one")

check(cr.compress([0, 25, 100]) == [0.0, 50.0, 100.0], "compress")
check(cr.normalize([0.25, 1.0])[1] == 100.0, "normalize")

r, p = cr.pearson([1, 2, 3, 4], [2, 4, 6, 8.5])
check(0.99 < r <= 1 and 0 <= p < 0.05, "pearson")
rho, _ = cr.spearman([1, 2, 3, 4], [10, 20, 30, 40])
check(rho == 1.0, "spearman")
check(cr.kendall_w([[1, 2, 3, 4], [2, 1, 3, 4]]) == 0.9, "kendall W")
r, _ = cr.partial_correlation([1, 2, 3, 4, 5], [2, 1, 4, 3, 5], [1, 1, 2, 2, 3])
check(-1 <= r <= 1, "partial correlation")
d = cr.rank_displacement([5, 4, 3, 2, 1], [1, 2, 3, 4, 5])
check(d.n == 5 and d.mean == 2.4 and d.p90 == 4, "rank displacement")

res = cr.pca(["x", "y", "z"], [[1, 0.8, 0.3], [0.8, 1, 0.2], [0.3, 0.2, 1]], retain=2)
check(math.isclose(sum(res.eigenvalues), 3.0) and len(res.rotated_variance_share) == 2, "pca")

try:
    cr.pca(["x"], [[1.0]], retain=2)
except cr.CiterankError as e:
    check(isinstance(e, ValueError), "errors raise CiterankError")
else:
    raise SystemExit("FAIL: expected CiterankError")

print("all smoke checks passed")
