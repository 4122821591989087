"""Randomized verification suites.

Each suite checks one identity on a seeded stream of random graphs and
returns a SuiteReport; the CLI `verify` verb and the acceptance tests are
both thin wrappers over these functions. Every suite is deterministic for
a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .balance import det_exact, forest_det, is_balanced_switching
from .core import SignedGraph, WeightedSignedGraph, generate, switch
from .distance import distance_table, is_compatible
from .matrices import (
    distance_laplacian_from_table,
    incidence_matrix,
    weighted_laplacian,
)
from .spectra import sym_eig, transmission_regular_shift_check

SUITES = (
    "forest-theorem",
    "balance-equivalence",
    "cospectrality",
    "transmission-shift",
    "incidence-factorization",
)

_MAX_FAILURES_KEPT = 10


@dataclass
class SuiteReport:
    suite: str
    passed: bool
    instances: int
    details: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record_failure(self, message: str) -> None:
        self.passed = False
        if len(self.failures) < _MAX_FAILURES_KEPT:
            self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extras = ", ".join(f"{k}={v}" for k, v in self.details.items())
        line = f"{status} {self.suite}: {self.instances} instances"
        if extras:
            line += f", {extras}"
        if self.failures:
            line += f" ({self.failures[0]}"
            if len(self.failures) > 1:
                line += f" and {len(self.failures) - 1} more"
            line += ")"
        return line

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "details": self.details,
            "failures": self.failures,
        }


def _random_connected(rng: random.Random, n_min: int, n_max: int) -> SignedGraph:
    """Mixed stream of balanced and unbalanced connected signed graphs."""
    n = rng.randint(n_min, n_max)
    p = 1.0 if n <= 2 else rng.uniform(0.3, 0.95)
    seed = rng.getrandbits(32)
    if rng.random() < 0.25:
        # balanced by construction: a switched all-positive graph
        g = generate("random", n, signs="allpos", seed=seed, p=p)
        zeta = [rng.choice((1, -1)) for _ in range(n)]
        return switch(g, zeta)
    sign_p = rng.choice((0.15, 0.3, 0.5, 0.7, 1.0))
    return generate("random", n, signs=sign_p, seed=seed, p=p)


def _random_integer_weights(rng: random.Random, m: int,
                            low: int = 1, high: int = 5) -> tuple[float, ...]:
    return tuple(float(rng.randint(low, high)) for _ in range(m))


def _min_eigenvalue(matrix) -> float:
    values = sym_eig(matrix).eigenvalues
    return min(values) if values else 0.0


def forest_theorem_suite(count: int = 200, n_max: int = 6, seed: int = 1) -> SuiteReport:
    """det_exact(weighted Laplacian) == forest_det, exactly, on random
    connected graphs with integer weights."""
    rng = random.Random(seed)
    report = SuiteReport("forest-theorem", True, count)
    max_diff = 0
    for i in range(count):
        g = _random_connected(rng, 2, n_max)
        wg = WeightedSignedGraph(g, _random_integer_weights(rng, g.m))
        lhs = det_exact(weighted_laplacian(wg))
        rhs = forest_det(wg)
        diff = abs(lhs - rhs)
        max_diff = max(max_diff, diff)
        if diff != 0:
            report.record_failure(f"instance {i}: det {lhs} != forest sum {rhs}")
    report.details["max_abs_difference"] = max_diff
    return report


def balance_equivalence_suite(count: int = 500, n_max: int = 8, seed: int = 1) -> SuiteReport:
    """The four balance verdicts agree on every instance: switching,
    det L^max == 0, det L^min == 0, and (compatible and det L^pm == 0).

    Also tracks the smallest eigenvalue seen across both distance
    Laplacians (they must be positive semidefinite) and verifies every
    certificate.
    """
    rng = random.Random(seed)
    report = SuiteReport("balance-equivalence", True, count)
    balanced_count = 0
    min_eig = float("inf")
    for i in range(count):
        g = _random_connected(rng, 2, n_max)
        sw = is_balanced_switching(g)
        if not sw.verify(g):
            report.record_failure(f"instance {i}: certificate failed to verify")
        table = distance_table(g)
        lmax = distance_laplacian_from_table(table, "max")
        lmin = distance_laplacian_from_table(table, "min")
        det_max = det_exact(lmax)
        det_min = det_exact(lmin)
        compatible, _ = is_compatible(table)
        pm_verdict = compatible and det_exact(
            distance_laplacian_from_table(table, "pm")
        ) == 0
        verdicts = (sw.balanced, det_max == 0, det_min == 0, pm_verdict)
        if len(set(verdicts)) != 1:
            report.record_failure(
                f"instance {i}: verdicts {verdicts} disagree "
                f"(det_max={det_max}, det_min={det_min}, compatible={compatible})"
            )
        if det_max < 0 or det_min < 0:
            report.record_failure(f"instance {i}: negative determinant")
        balanced_count += sw.balanced
        min_eig = min(min_eig, _min_eigenvalue(lmax), _min_eigenvalue(lmin))
    report.details["balanced"] = balanced_count
    report.details["unbalanced"] = count - balanced_count
    report.details["min_eigenvalue"] = min_eig
    return report


def cospectrality_suite(count: int = 100, n_max: int = 8, seed: int = 1,
                        tol: float = 1e-8) -> SuiteReport:
    """Balanced graphs share the distance Laplacian spectrum of their
    all-positive switch within tol."""
    rng = random.Random(seed)
    report = SuiteReport("cospectrality", True, count)
    max_dev = 0.0
    min_eig = float("inf")
    for i in range(count):
        n = rng.randint(2, n_max)
        p = 1.0 if n <= 2 else rng.uniform(0.3, 0.95)
        g_pos = generate("random", n, signs="allpos", seed=rng.getrandbits(32), p=p)
        zeta = [rng.choice((1, -1)) for _ in range(n)]
        g = switch(g_pos, zeta)
        lap_signed = distance_laplacian_from_table(distance_table(g), "pm")
        lap_plain = distance_laplacian_from_table(distance_table(g_pos), "pm")
        ev_signed = sym_eig(lap_signed).eigenvalues
        ev_plain = sym_eig(lap_plain).eigenvalues
        dev = max(abs(x - y) for x, y in zip(ev_signed, ev_plain))
        max_dev = max(max_dev, dev)
        if dev > tol:
            report.record_failure(f"instance {i}: eigenvalue deviation {dev:g}")
        min_eig = min(min_eig, min(ev_signed))
    report.details["max_deviation"] = max_dev
    report.details["min_eigenvalue"] = min_eig
    return report


def transmission_shift_suite(n_min: int = 3, n_max: int = 12,
                             tol: float = 1e-8) -> SuiteReport:
    """On cycles of both uniform signatures, the distance Laplacian
    spectrum is the transmission minus the distance spectrum; the
    transmission itself must be k(k+1) for odd n = 2k+1 and k^2 for even
    n = 2k."""
    report = SuiteReport("transmission-shift", True, 0)
    max_dev = 0.0
    min_eig = float("inf")
    instances = 0
    for n in range(n_min, n_max + 1):
        expected_t = (n // 2) * (n // 2 + 1) if n % 2 else (n // 2) ** 2
        for signs in ("allpos", "allneg"):
            g = generate("cycle", n, signs)
            for kind in ("max", "min"):
                instances += 1
                result = transmission_regular_shift_check(g, kind)
                label = f"C{n} {signs} {kind}"
                if not result.is_transmission_regular:
                    report.record_failure(f"{label}: not transmission-regular")
                    continue
                if result.t != expected_t:
                    report.record_failure(
                        f"{label}: transmission {result.t} != {expected_t}"
                    )
                if result.max_deviation > tol:
                    report.record_failure(
                        f"{label}: shift deviation {result.max_deviation:g}"
                    )
                max_dev = max(max_dev, result.max_deviation)
                lap = distance_laplacian_from_table(distance_table(g), kind)
                min_eig = min(min_eig, _min_eigenvalue(lap))
    report.instances = instances
    report.details["max_deviation"] = max_dev
    report.details["min_eigenvalue"] = min_eig
    return report


def incidence_factorization_suite(count: int = 500, n_max: int = 8, seed: int = 1,
                                  orientations_per_graph: int = 3) -> SuiteReport:
    """H @ H.T reproduces the weighted Laplacian exactly (integer weights)
    for several random orientations of each random graph."""
    rng = random.Random(seed)
    report = SuiteReport("incidence-factorization", True, count)
    max_dev = 0.0
    for i in range(count):
        g = _random_connected(rng, 2, n_max)
        wg = WeightedSignedGraph(g, _random_integer_weights(rng, g.m))
        lap = weighted_laplacian(wg).entries
        for _ in range(orientations_per_graph):
            orientation = tuple(
                (u, v) if rng.random() < 0.5 else (v, u) for u, v, _ in wg.edges
            )
            h = incidence_matrix(wg, orientation).entries
            product = h @ h.T
            dev = float(np.abs(product - lap).max()) if lap.size else 0.0
            max_dev = max(max_dev, dev)
            if dev >= 1e-9 or not np.array_equal(np.rint(product).astype(np.int64), lap):
                report.record_failure(f"instance {i}: factorization deviation {dev:g}")
    report.details["max_deviation"] = max_dev
    return report


def run_suite(name: str, count: int | None = None, n_max: int | None = None,
              seed: int = 1) -> SuiteReport:
    """Run one named suite with its default sizes unless overridden."""
    if name == "forest-theorem":
        return forest_theorem_suite(count or 200, n_max or 6, seed)
    if name == "balance-equivalence":
        return balance_equivalence_suite(count or 500, n_max or 8, seed)
    if name == "cospectrality":
        return cospectrality_suite(count or 100, n_max or 8, seed)
    if name == "transmission-shift":
        return transmission_shift_suite(3, n_max or 12)
    if name == "incidence-factorization":
        return incidence_factorization_suite(count or 500, n_max or 8, seed)
    raise ValueError(f"unknown suite {name!r}")


def run_all(count: int | None = None, n_max: int | None = None,
            seed: int = 1) -> list[SuiteReport]:
    return [run_suite(name, count, n_max, seed) for name in SUITES]
