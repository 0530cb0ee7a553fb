import pytest

from knds import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run a test once per available kernel backend, restoring the default after."""
    previous = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


def random_four_real_root_params(rng, n, min_gap=1e-3, static=False):
    """``n`` random SourceParams whose horizon quartic has four simple real roots.

    Selection uses numpy's companion-matrix roots, independent of the package solver.
    """
    import numpy as np

    from knds.core import SourceParams

    out = []
    while len(out) < n:
        lam = 10 ** rng.uniform(-3, -0.5)
        m = rng.uniform(0.2, 1.0) / np.sqrt(lam)
        a = 0.0 if static else rng.uniform(0, 1.2) * m
        q_sq = rng.uniform(0, 1.2) * m * m
        p = SourceParams(lam=lam, m=m, a=a, q_sq=q_sq)
        roots = np.roots([-lam / 3, 0.0, p.delta, -2 * m, p.eta])
        if np.max(np.abs(roots.imag)) > 0:
            continue
        rs = np.sort(roots.real)
        scale = max(1.0, np.max(np.abs(rs)))
        if np.min(np.diff(rs)) < min_gap * scale:
            continue
        out.append(p)
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
