import numpy as np
import pytest

from hyperpolygon.angles import AngleSpec


def random_angles(rng, n, margin=0.3, low=0.25):
    """Admissible angles with exterior sum at least ``2 pi + margin``.

    Angles stay in ``[low, pi - low]`` so that polygons are neither huge nor
    nearly degenerate; triangles draw from a narrower range so that the
    rejection loop terminates quickly.
    """
    high = 1.2 if n == 3 else np.pi - low
    while True:
        beta = rng.uniform(low if n > 3 else 0.1, high, n)
        if np.sum(np.pi - beta) > 2 * np.pi + margin:
            return AngleSpec(beta)


def random_frame(rng):
    """A random element of SO_0(2,1): boost composed with a rotation."""
    from hyperpolygon.developing import frame_at
    from hyperpolygon.lorentz import hyperboloid_point

    p = hyperboloid_point(*rng.uniform(-1.5, 1.5, 2))
    phi = rng.uniform(0, 2 * np.pi)
    return frame_at(p, np.array([0.0, np.cos(phi), np.sin(phi)]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


PENTAGON = AngleSpec([np.pi / 2] * 5)
# right-angled regular pentagon: cosh(edge) = golden ratio
PENTAGON_EDGE = float(np.arccosh((1 + np.sqrt(5)) / 2))
PENTAGON_RADIUS = float(np.arccosh(np.cos(np.pi / 4) / np.sin(np.pi / 5)))


def triangle_sides(alpha, beta, gamma):
    """Side opposite each angle from the dual law of cosines."""
    a = np.arccosh((np.cos(alpha) + np.cos(beta) * np.cos(gamma)) / (np.sin(beta) * np.sin(gamma)))
    b = np.arccosh((np.cos(beta) + np.cos(alpha) * np.cos(gamma)) / (np.sin(alpha) * np.sin(gamma)))
    c = np.arccosh((np.cos(gamma) + np.cos(alpha) * np.cos(beta)) / (np.sin(alpha) * np.sin(beta)))
    return a, b, c


def triangle_lengths(beta):
    """Edge lengths in the package convention for a triangle with angles ``beta``.

    Edge ``i`` joins vertex ``i - 1`` to vertex ``i``, so it is opposite
    vertex ``i + 1``.
    """
    opposite = triangle_sides(*beta)
    return np.array([opposite[(i + 1) % 3] for i in range(3)])


def degenerate_instances(rng, count):
    """Closed convex quadrilaterals and pentagons with one collapsed edge.

    Collapsing edge ``k`` merges vertices ``k - 1`` and ``k`` into one of
    angle ``beta[k-1] + beta[k] - pi``, so only angle vectors making that
    positive are kept.
    """
    from hyperpolygon.optimizer import boundary_polygon

    out = []
    while len(out) < count:
        n = int(rng.integers(4, 6))
        angles = random_angles(rng, n)
        k = int(rng.integers(n))
        if angles.array[k - 1] + angles.array[k] < np.pi + 0.1:
            continue
        out.append(boundary_polygon(angles, [k], seed=len(out)))
    return out


# one summary line per acceptance criterion -------------------------------------

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    previous = _ACCEPTANCE.get(number)
    passed = report.passed and (previous is None or previous[1])
    _ACCEPTANCE[number] = (title, passed, detail or (previous[2] if previous else ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, detail = _ACCEPTANCE[number]
        line = f"criterion {number} {'PASS' if passed else 'FAIL'}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
