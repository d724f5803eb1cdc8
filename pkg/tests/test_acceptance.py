"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the report: it prints one PASS/FAIL line per
criterion.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import PENTAGON, degenerate_instances, random_angles, triangle_lengths
from hyperpolygon.developing import closure_residual, jacobian
from hyperpolygon.incircle import criticality_residual, solve, theta
from hyperpolygon.lorentz import signed_distance
from hyperpolygon.optimizer import boundary_direction, verify_theorem
from hyperpolygon.polygon import interior_angles, perimeter, project, sample, tangent_basis


def _note(record_property, text):
    record_property("detail", text)
    print(text)


@pytest.mark.acceptance(1, "Jacobian columns match central finite differences")
def test_jacobian_finite_differences(record_property):
    rng = np.random.default_rng(1)
    worst = 0.0
    for k in range(50):
        n = int(rng.integers(3, 9))
        angles = random_angles(rng, n)
        p = sample(angles, k, float(rng.uniform(0.05, 0.4)))
        a = jacobian(angles, p.lengths)
        h = 1e-6
        for i in range(n):
            e = np.zeros(n)
            e[i] = h
            fd = (closure_residual(angles, p.lengths + e) - closure_residual(angles, p.lengths - e)) / (2 * h)
            worst = max(worst, float(np.abs(a[:, i] - fd).max()))
    _note(record_property, f"max abs error {worst:.2e} over 50 polygons")
    assert worst < 1e-6


@pytest.mark.acceptance(2, "incircle polygons close, keep their angles and touch the circle")
def test_incircle_closure(record_property):
    rng = np.random.default_rng(2)
    specs = [random_angles(rng, int(rng.integers(3, 13))) for _ in range(100)]
    start = time.perf_counter()
    sols = [solve(s) for s in specs]
    elapsed = time.perf_counter() - start
    res = ang = dist = 0.0
    for sol in sols:
        p = sol.polygon
        res = max(res, float(np.linalg.norm(closure_residual(p.angles, p.lengths))))
        ang = max(ang, float(np.abs(interior_angles(p) - p.angles.array).max()))
        d = np.array([signed_distance(sol.center, e) for e in p.duals])
        dist = max(dist, float(np.abs(d + sol.radius).max()))
    _note(record_property, f"closure {res:.1e}, angles {ang:.1e}, distance {dist:.1e}, {elapsed:.2f} s")
    assert res < 1e-9 and ang < 1e-8 and dist < 1e-9
    assert elapsed < 5.0


@pytest.mark.acceptance(3, "criticality residual separates incircle polygons from samples")
def test_criticality(record_property):
    rng = np.random.default_rng(3)
    critical, sampled = [], []
    for k in range(100):
        angles = random_angles(rng, int(rng.integers(4, 9)))
        best = solve(angles).polygon
        critical.append(criticality_residual(best))
        sampled.append(criticality_residual(sample(angles, k, 0.3, start=best)))
    _note(record_property, f"incircle max {max(critical):.1e}, samples min {min(sampled):.1e}")
    assert max(critical) < 1e-8
    assert min(sampled) > 1e-4


@pytest.mark.acceptance(4, "incircle polygon minimizes the perimeter")
def test_theorem(record_property):
    rng = np.random.default_rng(4)
    reports = []
    for k in range(10):
        angles = random_angles(rng, int(rng.integers(4, 9)))
        reports.append(verify_theorem(angles, 50, k))
    failures = [v for r in reports for v in r.violations]
    min_gap = min(r.min_gap for r in reports)
    err = max(r.max_length_error for r in reports)
    _note(record_property, f"min gap {min_gap:.1e}, max length error {err:.1e}, {len(failures)} violations")
    assert not failures, failures[:5]


@pytest.mark.acceptance(5, "right-angled pentagon and dual law of cosines")
def test_classical_oracles(record_property):
    p = solve(PENTAGON).polygon
    pent = float(np.abs(np.cosh(p.lengths) - (1 + np.sqrt(5)) / 2).max())
    rng = np.random.default_rng(5)
    tri = 0.0
    for _ in range(100):
        beta = random_angles(rng, 3).array
        tri = max(tri, float(np.abs(solve(beta).polygon.lengths - triangle_lengths(beta)).max()))
    _note(record_property, f"pentagon {pent:.1e}, triangles {tri:.1e}")
    assert pent < 1e-9 and tri < 1e-9


@pytest.mark.acceptance(6, "theta endpoint values and monotonicity")
def test_theta_identities(record_property):
    beta = np.linspace(1e-3, np.pi - 1e-3, 1000)
    start = float(np.abs(theta(0.0, beta) - (np.pi - beta)).max())
    r = np.linspace(0.0, 10.0, 100)[:, None]
    grid = theta(r, np.linspace(0.01, np.pi - 0.01, 100)[None, :])
    decreasing = bool(np.all(np.diff(grid, axis=0) < 0))
    tail = float(theta(10.0, beta).max())
    _note(record_property, f"theta(0) error {start:.1e}, decreasing {decreasing}, theta(10) max {tail:.1e}")
    assert start <= 4 * np.finfo(float).eps
    assert decreasing
    assert tail < 1e-3


@pytest.mark.acceptance(7, "boundary deformation enters the interior and lowers the perimeter")
def test_boundary_descent(record_property):
    worst_drift, worst_sum = 0.0, -np.inf
    for p in degenerate_instances(np.random.default_rng(7), 10):
        v, coefficients = boundary_direction(p, details=True)
        for _, a, b in coefficients:
            assert a > 0 and b > 0 and a + b > 1
        worst_sum = max(worst_sum, float(v.sum()))
        worst_drift = max(worst_drift, float(np.linalg.norm(p.centered[1].T @ v)))
        q = project(p.angles, p.lengths + 1e-3 * v)
        assert np.all(q.lengths > 0)
        assert perimeter(q) < perimeter(p)
    _note(record_property, f"largest perimeter rate {worst_sum:.3f}, tangency defect {worst_drift:.1e}")
    assert worst_sum < 0 and worst_drift < 1e-9


@pytest.mark.acceptance(8, "tangent space has dimension n - 3")
def test_tangent_dimension(record_property):
    rng = np.random.default_rng(8)
    worst_gap = np.inf
    for k in range(500):
        n = int(rng.integers(4, 11))
        angles = random_angles(rng, n)
        p = sample(angles, k, float(rng.uniform(0.0, 0.4)))
        a = p.centered[1].T
        b = tangent_basis(p)
        assert b.shape == (n, n - 3)
        smallest = np.linalg.svd(a, compute_uv=False)[2]
        null = max(float(np.linalg.norm(a @ b, axis=0).max()), np.finfo(float).tiny)
        worst_gap = min(worst_gap, smallest / null)
    _note(record_property, f"smallest singular value gap {worst_gap:.1e} over 500 polygons")
    assert worst_gap > 1e6


@pytest.mark.acceptance(9, "minimize --seed 7 reports are byte-identical")
def test_determinism(record_property):
    argv = [sys.executable, "-m", "hyperpolygon", "minimize", "90", "100", "80", "95", "85", "--seed", "7"]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout
    _note(record_property, f"exit codes {runs[0].returncode}/{runs[1].returncode}, identical {same}")
    assert runs[0].returncode == 0 and same
