"""Shared fixtures: seeded rng, Haar unitaries, independent oracles.

The acceptance module is forced to run last so its total-runtime check covers
the whole session, and its per-criterion results are echoed in the terminal
summary.
"""
from __future__ import annotations

import time

import numpy as np
import pytest

SEED = 20260814


def pytest_configure(config):
    config._suite_t0 = time.perf_counter()
    config._acceptance_lines = []


def pytest_collection_modifyitems(config, items):
    # stable sort: keep in-file order, move the acceptance gate to the end
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
    elapsed = time.perf_counter() - config._suite_t0
    terminalreporter.write_line(f"suite wall time: {elapsed:.2f} s")


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def suite_elapsed(request):
    t0 = request.config._suite_t0

    def elapsed() -> float:
        return time.perf_counter() - t0

    return elapsed


@pytest.fixture
def record_criterion(request):
    lines = request.config._acceptance_lines

    def record(number: int, ok: bool, detail: str) -> None:
        status = "PASS" if ok else "FAIL"
        lines.append(f"criterion {number}: {status} ({detail})")

    return record


@pytest.fixture
def random_unitary():
    def make(rng: np.random.Generator, n: int) -> np.ndarray:
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        q, r = np.linalg.qr(m)
        d = np.diagonal(r)
        return q * (d / np.abs(d))

    return make


@pytest.fixture
def ptrace_oracle():
    """Independent partial trace: full density matrix, axis-pair contraction."""

    def oracle(amps: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
        keep = tuple(sorted(keep))
        rest = tuple(ax for ax in range(len(dims)) if ax not in keep)
        out = np.outer(amps, np.conj(amps)).reshape(tuple(dims) * 2)
        for ax in sorted(rest, reverse=True):
            out = np.trace(out, axis1=ax, axis2=ax + out.ndim // 2)
        dk = int(np.prod([dims[a] for a in keep], dtype=np.int64))
        return out.reshape(dk, dk)

    return oracle


@pytest.fixture
def charpoly_eigs():
    """Independent eigenvalues: Faddeev-LeVerrier coefficients, then np.roots.

    Companion-matrix roots lose digits quickly, so callers should compare at
    coarse tolerance and keep n small.
    """

    def eigs(h: np.ndarray) -> np.ndarray:
        n = h.shape[0]
        c = np.zeros(n + 1, dtype=np.complex128)
        c[0] = 1.0
        m = np.zeros_like(h, dtype=np.complex128)
        eye = np.eye(n)
        for k in range(1, n + 1):
            m = h @ m + c[k - 1] * eye
            c[k] = -np.trace(h @ m) / k
        roots = np.roots(c)
        return np.sort(roots.real)[::-1]

    return eigs
