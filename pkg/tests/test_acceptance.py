"""Acceptance suite: one test per criterion, each printing a pass/fail line
with its runtime (run with ``pytest -s tests/test_acceptance.py`` to see the
lines as they complete).  Every tolerance and budget is pinned here."""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from edgewalk import (
    apply_U,
    build_instance,
    build_T,
    build_U_dense,
    complete_bipartite_edges,
    hitting_time,
    mc_hitting_time,
    path_edges,
    principal_pair,
    quantum_time,
    run_series,
    spectral_mapping_check,
    verify_random_suite,
)
from edgewalk.errors import DegenerateSpectrum

K5_EDGES = [(0, 1), (1, 2), (2, 3)]

# K_100 path benchmark: searching times, finding probability attained at
# step t_f or t_f - 1 (1e-6), and the probability after one step (1e-9).
FIG2_REFERENCE = {
    1: (55, 0.9777214768, 0.0009857786106),
    2: (39, 0.9663637014, 0.001963559686),
    3: (32, 0.9638438771, 0.002941340762),
}


@contextmanager
def criterion(number: int, label: str, budget_seconds: float):
    start = time.perf_counter()
    failed = False
    try:
        yield
    except BaseException:
        failed = True
        raise
    finally:
        elapsed = time.perf_counter() - start
        status = "FAIL" if failed else "PASS"
        print(f"criterion {number} ({label}): {status} in {elapsed:.2f}s "
              f"(budget {budget_seconds:.0f}s)")
    assert elapsed < budget_seconds, f"criterion {number} exceeded its budget"


def test_criterion_1_example_fixture():
    with criterion(1, "K5 fixture: T matrix and walk entries", 1.0):
        g = build_instance(4, K5_EDGES)
        expected = (
            np.array(
                [
                    [0, -1, 1, 1, 1],
                    [-1, 0, -1, 1, 1],
                    [1, -1, 0, -1, 1],
                    [1, 1, -1, 0, 1],
                    [1, 1, 1, 1, 0],
                ]
            )
            / 4.0
        )
        assert np.abs(build_T(g).matrix - expected).max() <= 1e-15
        U = build_U_dense(g)
        a = g.arcs
        assert U[a.index(1, 2), a.index(2, 1)] == -0.5
        assert U[a.index(1, 2), a.index(0, 1)] == -0.5
        assert U[a.index(1, 2), a.index(4, 1)] == 0.5
        assert U[a.index(1, 2), a.index(4, 2)] == 0.0


def test_criterion_2_k100_benchmark_regression():
    with criterion(2, "K100 path series regression", 5.0):
        for k, (t_f_expected, fp_expected, step1_expected) in FIG2_REFERENCE.items():
            g = build_instance(99, path_edges(k))
            t_f = quantum_time(principal_pair(build_T(g)))
            assert t_f == t_f_expected
            series = run_series(g, 100)
            attained = min(
                abs(series.fp[t_f] - fp_expected),
                abs(series.fp[t_f - 1] - fp_expected),
            )
            assert attained <= 1e-6
            assert abs(series.fp[1] - step1_expected) <= 1e-9


def test_criterion_3_spectral_mapping_oracle():
    with criterion(3, "spectral mapping inclusion", 30.0):
        rng = np.random.default_rng(42)
        for n in range(2, 7):
            pairs = [(u, v) for u in range(n + 1) for v in range(u + 1, n + 1)]
            for _ in range(25):
                count = int(rng.integers(1, len(pairs) + 1))
                chosen = rng.choice(len(pairs), size=count, replace=False)
                g = build_instance(n, [pairs[i] for i in chosen])
                report = spectral_mapping_check(g)
                assert report.max_residual <= 1e-8


def test_criterion_4_unitarity_and_dense_agreement():
    with criterion(4, "unitarity and dense agreement", 60.0):
        rng = np.random.default_rng(7)
        sizes = [2, 3, 5, 8, 10, 20, 50, 100, 200]
        per_size = 1000 // len(sizes) + 1
        for n in sizes:
            g = build_instance(n, [(0, 1)])
            dense = build_U_dense(g) if n <= 10 else None
            for _ in range(per_size):
                psi = rng.normal(size=g.num_arcs) + 1j * rng.normal(size=g.num_arcs)
                psi /= np.linalg.norm(psi)
                image = apply_U(g, psi)
                assert abs(np.linalg.norm(image) - 1.0) <= 1e-12
                if dense is not None:
                    assert np.abs(dense @ psi - image).max() <= 1e-12


def test_criterion_5_bounds_ledger_random_suite():
    with criterion(5, "bounds ledger, 200 instances n in [260, 400]", 600.0):
        report = verify_random_suite(
            200,
            (260, 400),
            ("edge", "path", "matching", "star"),
            seed=20240809,
            max_gamma_vertices=4,
        )
        assert report.instances == 200
        assert report.failures == ()


def test_criterion_6_classical_exact_and_mc():
    with criterion(6, "classical exact values and Monte-Carlo", 120.0):
        exact = {2: 2.0, 3: 26 / 5}
        for n, value in exact.items():
            g = build_instance(n, [(0, 1)])
            result = hitting_time(g)
            assert abs(result.t_c - value) <= 1e-12
            mean, stderr = mc_hitting_time(g, 100_000, seed=4660 + n)
            assert abs(mean - value) <= 3 * stderr


def test_criterion_7_quadratic_speedup_scaling():
    with criterion(7, "quadratic speedup scaling", 120.0):
        rows = []
        for n in (64, 128, 256):
            g = build_instance(n, [(0, 1)])
            t_f = quantum_time(principal_pair(build_T(g)))
            t_c = hitting_time(g).t_c
            rows.append((n, t_f, t_c))
            assert 0.45 <= t_c * 1 / n**2 <= 1.1
        normalized_tf = [t_f * 1.0 / n for n, t_f, _ in rows]
        assert max(normalized_tf) / min(normalized_tf) <= 1.6
        ratios = [t_c / t_f for _, t_f, t_c in rows]
        for previous, doubled in zip(ratios, ratios[1:]):
            assert doubled >= 1.8 * previous


def test_criterion_8_degeneracy_handling():
    with criterion(8, "degenerate spectrum detection", 60.0):
        # every spanning complete bipartite subgraph on at most 8 vertices
        for order in range(3, 9):
            n = order - 1
            for a in range(1, order // 2 + 1):
                g = build_instance(n, complete_bipartite_edges(a, order - a))
                assert g.is_spanning_complete_bipartite()
                with pytest.raises(DegenerateSpectrum):
                    principal_pair(build_T(g))
        # scattered part labels behave the same
        for n, parts in ((4, ({0, 2}, {1, 3, 4})), (5, ({1, 4, 5}, {0, 2, 3}))):
            edges = [(u, v) for u in parts[0] for v in parts[1]]
            g = build_instance(n, edges)
            assert g.is_spanning_complete_bipartite()
            with pytest.raises(DegenerateSpectrum):
                principal_pair(build_T(g))
        # no false positives on random non-bipartite-spanning subgraphs
        rng = np.random.default_rng(88)
        checked = 0
        while checked < 100:
            n = int(rng.integers(2, 7))
            pairs = [(u, v) for u in range(n + 1) for v in range(u + 1, n + 1)]
            count = int(rng.integers(1, len(pairs) + 1))
            chosen = rng.choice(len(pairs), size=count, replace=False)
            g = build_instance(n, [pairs[i] for i in chosen])
            if g.is_spanning_complete_bipartite():
                continue
            checked += 1
            summary = principal_pair(build_T(g))  # must not raise
            assert summary.lambda_max < 1 - 1e-10
