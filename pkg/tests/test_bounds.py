"""Inequality ledger: coverage, gating, determinism, norm inequalities."""

import json

import numpy as np

from edgewalk import build_instance, path_edges, verify_all, verify_random_suite
from edgewalk.bounds import _entry, random_instance

BASE_NAMES = {
    "gershgorin",
    "lambda1_bracket",
    "adjacency_max",
    "lambda2_Y",
    "lambda2_Z",
    "gap_T",
    "bipartite_iff",
    "overlap_generic",
    "lmax_upper_Y",
    "lmax_upper_Z",
    "cor_T",
    "norm_l1",
    "pq_spectra",
    "cor_P",
    "ratio",
    "beta_close",
    "norm_l2",
    "beta_minus_close",
    "beta_plus_mass",
    "fp_lower",
    "qtime_order",
    "tc_near_resolvent",
    "tc_bracket",
}


def test_checklist_coverage():
    ledger = verify_all(build_instance(20, [(0, 1)]))
    names = {e.name.split(".")[0] for e in ledger.entries}
    assert names == BASE_NAMES


def test_all_pass_at_large_n():
    # 66*2 <= 263 and 64*2 <= 261: every hypothesis holds
    ledger = verify_all(build_instance(260, [(0, 1)]))
    assert not ledger.skipped
    assert ledger.all_passed


def test_spanning_bipartite_skips_quantum_entries():
    ledger = verify_all(build_instance(2, path_edges(2)))
    iff = ledger.entry("bipartite_iff")
    assert iff.passed and iff.lhs == 1.0 and iff.rhs == 1.0
    for name in ("beta_close", "fp_lower", "ratio"):
        for e in ledger.entries_for(name):
            assert e.passed is None
    # ungated spectral entries still pass
    for name in ("gershgorin", "lambda1_bracket", "lambda2_Y", "gap_T"):
        assert all(e.passed for e in ledger.entries_for(name))


def test_k5_gating():
    ledger = verify_all(build_instance(4, [(0, 1), (1, 2), (2, 3)]))
    assert all(e.passed for e in ledger.entries_for("gershgorin"))
    assert all(e.passed for e in ledger.entries_for("lambda1_bracket"))
    # 66*4 > 7: the small-subgraph entries are skipped, not failed
    for name in ("ratio", "beta_plus_mass", "fp_lower", "qtime_order"):
        for e in ledger.entries_for(name):
            assert e.passed is None
    assert not ledger.failures


def test_ledger_json_roundtrip_and_determinism():
    g = build_instance(30, [(0, 1), (2, 3)])
    first = json.dumps(verify_all(g).to_json_entries())
    second = json.dumps(verify_all(g).to_json_entries())
    assert first == second
    entries = json.loads(first)
    assert {
        "name",
        "lhs",
        "rhs",
        "relation",
        "hypothesis_description",
        "hypothesis_holds",
        "passed",
        "slack",
    } == set(entries[0])


def test_entry_slack_conventions():
    e = _entry("x", "<=", 1.0, 3.0)
    assert e.slack == 2.0 and e.passed
    e = _entry("x", ">=", 1.0, 3.0)
    assert e.slack == -2.0 and not e.passed
    e = _entry("x", "==", 1.0, 1.0)
    assert e.passed
    e = _entry("x", "<=", 5.0, 1.0, hypothesis="h", holds=False)
    assert e.passed is None and not e.hypothesis_holds


def test_entry_tolerance_is_relative():
    assert _entry("x", "<=", 1.0 + 1e-10, 1.0).passed
    assert not _entry("x", "<=", 1.0 + 1e-6, 1.0).passed


def test_random_suite_small_unrestricted():
    report = verify_random_suite(
        50, (4, 20), ("random",), seed=77, max_gamma_vertices=4
    )
    assert report.ok
    assert report.instances == 50
    assert report.entries_checked == report.entries_passed + report.entries_skipped


def test_random_suite_deterministic():
    kwargs = dict(n_range=(10, 30), families=("path", "star"), seed=5)
    a = verify_random_suite(3, **kwargs)
    b = verify_random_suite(3, **kwargs)
    assert a == b


def test_random_instance_respects_vertex_cap():
    rng = np.random.default_rng(0)
    for _ in range(100):
        g = random_instance(rng, (10, 40), ("path", "matching", "star", "cycle", "random"))
        assert g.s <= 4


def test_bipartite_iff_agreement_random():
    rng = np.random.default_rng(123)
    for _ in range(60):
        g = random_instance(rng, (4, 9), ("random", "path", "cycle"), max_gamma_vertices=5)
        entry = verify_all(g).entry("bipartite_iff")
        assert entry.passed


def test_norm_l1_inequality_random_vectors():
    # len(h) * ||h||_2^2 >= ||h||_1^2 for arbitrary vectors
    rng = np.random.default_rng(2718)
    for _ in range(10_000):
        m = int(rng.integers(1, 101))
        h = rng.normal(size=m) * rng.choice([0.1, 1.0, 50.0])
        assert m * np.sum(h * h) >= np.sum(np.abs(h)) ** 2 - 1e-9


def test_norm_l2_inequality_random_vectors():
    # ||h||_2^2 <= n ||h||_1 for entries in [0, n]
    rng = np.random.default_rng(3141)
    for _ in range(10_000):
        n = float(rng.integers(1, 101))
        m = int(rng.integers(1, 101))
        h = rng.uniform(0.0, n, size=m)
        assert np.sum(h * h) <= n * np.sum(h) + 1e-9
