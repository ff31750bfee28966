"""Batch runner: scenario configs, the suite registry and JSON run reports."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .grassmann import REGISTRY
from .modes import ModeSet, ModeSetError
from .report import Check, Report
from .rings import RATIONAL_SQRT2, RINGS, Exact, get_ring

SCHEMA = "fermiwig.run-report/1"
WORKERS_ENV = "FERMIWIG_WORKERS"
EXACT_RINGS = ("rational", "rational-sqrt2", "laurent-eps")


class ScenarioError(ValueError):
    """Invalid configuration: parse error, memory guard, or ring/suite mismatch."""


# ------------------------------------------------------------------ suites ---

def _merge(name: str, *reports: Report) -> Report:
    out = Report(name)
    for rep in reports:
        if rep.suite != name:
            for c in rep.checks:
                c.id = f"{rep.suite}: {c.id}"
        out.extend(rep)
    return out


def _run_car(modes, seed):
    from .bogoliubov import verify_car
    return verify_car(modes)


def _run_bogoliubov(modes, seed):
    from .bogoliubov import majorana_anticommutator, verify_bogoliubov_table, verify_fermionic_adjoint
    from .fock import FockOperator, operators_equal
    rep = _merge("bogoliubov", verify_bogoliubov_table(modes), verify_fermionic_adjoint(modes))
    one = FockOperator.identity(modes, modes.ring)
    for i in range(modes.size):
        ok = operators_equal(majorana_anticommutator(modes, i), one)
        rep.add(f"{{m,m}}[{i}] = 1", "Majorana operators do not anticommute to zero", ok)
    return rep


def _run_commutators(modes, seed):
    from .bogoliubov import verify_commutator_table
    from .samples import random_parameter
    rep = Report("commutators")
    for s in range(seed, seed + 20):
        A = random_parameter(modes, "Ac", 2 * s + 1)
        B = random_parameter(modes, "Bc", 2 * s + 2)
        for c in verify_commutator_table(modes, A, B):
            c.id = f"seed={s} {c.id}"
            rep.checks.append(c)
    return rep


def _run_exp_conjugations(modes, seed):
    from .bogoliubov import verify_exp_conjugations
    rep = Report("exp-conjugations")
    for c in (Exact(1), Exact(1, 0, 0, 0, 2), Exact(-2)):
        rep.extend(verify_exp_conjugations(modes, c))
    return rep


def _run_eigenstates(modes, seed):
    from .eigenstates import (spin_transform_relations, verify_adjoint_relations,
                              verify_eigen_equations, verify_generic_solution, verify_wrong_sign)
    reports = [verify_eigen_equations(modes), verify_wrong_sign(modes),
               verify_adjoint_relations(modes), spin_transform_relations(modes)]
    # (a1, a2, b1, b2, c0): the first meets both right conditions, the second both left ones
    for params in ((1, -1, 1, -1, 1), (1, 1, 2, 2, 1), (1, 2, 3, -3, -1)):
        gen = verify_generic_solution(*params, modes)
        for c in gen.checks:
            c.id = f"{c.id} {params}"
        reports.append(gen)
    return _merge("eigenstates", *reports)


def _run_majorana(modes, seed):
    from .eigenstates import majorana_demo
    from .rings import HALF
    rep = Report("majorana")
    res = majorana_demo(modes.k_points)
    for key, r in res.eigen_residuals.items():
        rep.add(f"eigenpair {key}", "single-mode eigenvalues are +-1/sqrt2", r == 0, f"{r:.3g}")
    for key, v in res.unbiasedness.items():
        rep.add(f"|{key}|^2", "mutually unbiased single-mode bases", v == HALF, v.to_text())
    for c0, r in res.obstruction_residual.items():
        rep.add(f"obstruction c0={c0:+d}", "no multimode eigenstates of the rendered form", r > 0,
                f"{r:.3g}", "residual must be nonzero")
    rep.add("symmetric mismatch", "the two-particle tensor would need a symmetric part",
            bool(res.symmetric_mismatch), detail=f"{len(res.symmetric_mismatch)} nonzero entries")
    return rep


def _run_h_odes(modes, seed):
    from .overlaps import h_ode_check
    rep = Report("h-odes")
    for c1 in (1, -1):
        for c2 in (1, -1):
            out = h_ode_check(c1, c2)
            rep.add(f"c1={c1:+d} c2={c2:+d} residual", "h-function differential equations",
                    out["residual"] < 1e-10, f"{out['residual']:.3e}", "tolerance 1e-10")
            rep.add(f"c1={c1:+d} c2={c2:+d} rk4", "independent RK4 integration endpoint",
                    out["rk4_gap"] < 1e-8, f"{out['rk4_gap']:.3e}", "tolerance 1e-8")
    return rep


def _run_disentanglement(modes, seed):
    from .overlaps import verify_disentanglement
    return verify_disentanglement(modes)


def _run_overlap_formula(modes, seed):
    from .overlaps import verify_overlap_formula
    return verify_overlap_formula(modes, seeds=range(seed, seed + 20))


def _run_named_overlaps(modes, seed):
    from .overlaps import named_overlaps
    return named_overlaps(modes)


def _run_delta_overlaps(modes, seed):
    from .overlaps import verify_delta_overlaps
    return verify_delta_overlaps(modes)


def _run_sifting(modes, seed):
    from .overlaps import verify_sifting
    return verify_sifting(modes, seed=seed)


def _run_fourier_delta(modes, seed):
    from .overlaps import fourier_delta
    return fourier_delta(modes)


def _run_quadratures(modes, seed):
    from .wigner import verify_quadratures
    return verify_quadratures(modes)


def _run_completeness(modes, seed):
    from .wigner import verify_completeness
    return verify_completeness(modes)


def _run_fourier(modes, seed):
    from .wigner import verify_fourier
    return verify_fourier(modes, seed)


def _run_wigner(modes, seed):
    from .wigner import verify_wigner
    return verify_wigner(modes, seed, roundtrip_units=modes.size <= 2)


def _run_star(modes, seed):
    from .wigner import verify_star
    return verify_star(modes, seed)


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable
    rings: tuple = ("rational-sqrt2",)
    needs_pairing: bool = True
    max_modes: int = 12


SUITES = {s.name: s for s in (
    Suite("car", _run_car, ("rational", "rational-sqrt2"), needs_pairing=False),
    Suite("bogoliubov", _run_bogoliubov),
    Suite("commutators", _run_commutators),
    Suite("exp-conjugations", _run_exp_conjugations, max_modes=4),
    Suite("eigenstates", _run_eigenstates, max_modes=6),
    Suite("majorana", _run_majorana, needs_pairing=False, max_modes=6),
    Suite("h-odes", _run_h_odes, tuple(RINGS), needs_pairing=False),
    Suite("disentanglement", _run_disentanglement, max_modes=4),
    Suite("overlap-formula", _run_overlap_formula, max_modes=6),
    Suite("named-overlaps", _run_named_overlaps, max_modes=6),
    Suite("delta-overlaps", _run_delta_overlaps, ("laurent-eps",), max_modes=4),
    Suite("sifting", _run_sifting, ("rational", "rational-sqrt2"), needs_pairing=False),
    Suite("fourier-delta", _run_fourier_delta, ("rational", "rational-sqrt2"), needs_pairing=False),
    Suite("quadratures", _run_quadratures, max_modes=6),
    Suite("completeness", _run_completeness, max_modes=4),
    Suite("fourier", _run_fourier, max_modes=6),
    Suite("wigner", _run_wigner, max_modes=4),
    Suite("star", _run_star, max_modes=2),
)}


def _unfit(suite: Suite, ring: str, modes: ModeSet):
    """Reason ``suite`` cannot run on ``modes`` in ``ring``, or None."""
    if ring not in suite.rings:
        return f"needs ring {' or '.join(suite.rings)}, not {ring!r}"
    if suite.needs_pairing and not modes.has_pairing:
        return "needs a spin pairing (spins=2 or an explicit epsilon)"
    if suite.needs_pairing and not modes.unit_weights():
        return "needs unit weights"
    if modes.size > suite.max_modes:
        return f"is limited to {suite.max_modes} modes"
    return None


def default_suites(ring: str, modes: ModeSet) -> list[str]:
    """Every registered suite that runs on ``modes`` in ``ring``."""
    return [name for name, s in SUITES.items() if _unfit(s, ring, modes) is None]


# ---------------------------------------------------------------- scenario ---

@dataclass
class Scenario:
    k_points: int = 1
    spins: int = 2
    weights: tuple = None
    epsilon: tuple = None
    ring: str = "rational-sqrt2"
    suites: list = None
    seed: int = 0
    output: str = None
    workers: int = None
    timing: bool = True
    modes: ModeSet = field(init=False, repr=False)

    def __post_init__(self):
        try:
            ring = get_ring(self.ring)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ScenarioError("seed must be an integer")
        try:
            self.modes = ModeSet(self.k_points, self.spins, self.weights, self.epsilon,
                                 ring if ring.name in EXACT_RINGS[:2] else RATIONAL_SQRT2)
        except ModeSetError as exc:
            raise ScenarioError(f"invalid modes: {exc}") from None
        if self.suites is None:
            self.suites = default_suites(self.ring, self.modes)
        self.suites = list(self.suites)
        for name in self.suites:
            suite = SUITES.get(name)
            if suite is None:
                raise ScenarioError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
            reason = _unfit(suite, self.ring, self.modes)
            if reason:
                raise ScenarioError(f"suite {name!r} {reason}")
        if self.workers is not None and self.workers < 1:
            raise ScenarioError("workers must be positive")

    def as_dict(self) -> dict:
        return {
            "modes": {"k_points": self.k_points, "spins": self.spins,
                      "weights": None if self.modes.unit_weights()
                      else [w.to_text() for w in self.modes.weights],
                      "epsilon": None if self.epsilon is None
                      else [[e.to_text() for e in row] for row in self.modes.epsilon]},
            "ring": self.ring, "suites": self.suites, "seed": self.seed,
        }


_CONFIG_KEYS = {"modes", "ring", "suites", "seed", "output", "workers", "timing"}
_MODE_KEYS = {"k_points", "spins", "weights", "epsilon"}


def _scalar(text) -> Exact:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return Exact.coerce(Fraction(text))
    if isinstance(text, str):
        text = text.strip()
        if text.startswith("("):
            return RATIONAL_SQRT2.from_text(text)
        return Exact.coerce(Fraction(text))
    raise TypeError(f"not a number: {text!r}")


def scenario_from_dict(data: dict) -> Scenario:
    """Build a :class:`Scenario` from the JSON config layout."""
    if not isinstance(data, dict):
        raise ScenarioError("config must be a JSON object")
    extra = set(data) - _CONFIG_KEYS
    if extra:
        raise ScenarioError(f"unknown config keys {sorted(extra)}")
    modes = data.get("modes", {})
    if not isinstance(modes, dict) or set(modes) - _MODE_KEYS:
        raise ScenarioError(f"modes must be an object with keys from {sorted(_MODE_KEYS)}")
    try:
        weights = modes.get("weights")
        weights = None if weights is None else tuple(_scalar(w) for w in weights)
        eps = modes.get("epsilon")
        eps = None if eps is None else tuple(tuple(_scalar(x) for x in row) for row in eps)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"bad number in modes: {exc}") from None
    return Scenario(k_points=modes.get("k_points", 1), spins=modes.get("spins", 2),
                    weights=weights, epsilon=eps, ring=data.get("ring", "rational-sqrt2"),
                    suites=data.get("suites"), seed=data.get("seed", 0),
                    output=data.get("output"), workers=data.get("workers"),
                    timing=data.get("timing", True))


def load_scenario(path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror}") from None
    return scenario_from_dict(data)


# ------------------------------------------------------------------ report ---

@dataclass
class RunReport:
    scenario: dict
    checks: list
    notes: dict
    suite_seconds: dict
    timing: bool = True

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> dict:
        per = {}
        for c in self.checks:
            entry = per.setdefault(c.suite, {"passed": 0, "failed": 0})
            entry["passed" if c.passed else "failed"] += 1
        for name, secs in self.suite_seconds.items():
            per.setdefault(name, {"passed": 0, "failed": 0})
            per[name]["seconds"] = round(secs, 3) if self.timing else 0.0
        bad = len(self.failures)
        return {"checks": len(self.checks), "passed": len(self.checks) - bad, "failed": bad,
                "suites": per}

    def as_dict(self) -> dict:
        from . import __version__
        rows = []
        for c in self.checks:
            row = c.as_dict()
            row["status"] = "pass" if row.pop("passed") else "fail"
            row["seconds"] = round(row["seconds"], 4) if self.timing else 0.0
            rows.append(row)
        return {"schema": SCHEMA, "engine": {"name": "fermiwig", "version": __version__},
                "scenario": self.scenario, "summary": self.summary(), "notes": self.notes,
                "checks": rows}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def lines(self) -> list[str]:
        out = []
        for name, entry in self.summary()["suites"].items():
            total = entry["passed"] + entry["failed"]
            mark = "ok  " if entry["failed"] == 0 else "FAIL"
            out.append(f"{mark} {name:<18} {entry['passed']}/{total}")
        for c in self.failures:
            out.append(f"     failed {c.suite}: {c.id} (residual {c.residual})")
        return out


def run_suite(name: str, modes: ModeSet, seed: int) -> tuple[Report, float]:
    """One suite in a fresh label scope, so its report text never depends on earlier work."""
    t0 = time.perf_counter()
    with REGISTRY.scope():
        try:
            rep = SUITES[name].run(modes, seed)
        except Exception as exc:  # a crash is a failed check, not a lost report
            rep = Report(name)
            rep.add("suite raised", "suite completes", False, type(exc).__name__, str(exc)[:300])
    for c in rep.checks:
        c.suite = name
    return rep, time.perf_counter() - t0


def worker_count(requested: int = None, jobs: int = 1) -> int:
    """Requested workers, capped by the environment variable and the job count."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(WORKERS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ScenarioError(f"{WORKERS_ENV} must be an integer, got {cap!r}") from None
    return max(1, min(n, jobs))


def run_scenario(config: Scenario) -> RunReport:
    """Run every suite of ``config``; the report lists suites in config order."""
    names = config.suites
    workers = worker_count(config.workers, len(names))
    if workers == 1:
        results = [run_suite(n, config.modes, config.seed) for n in names]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_suite, n, config.modes, config.seed) for n in names]
            results = [f.result() for f in futures]
    checks, notes, seconds = [], {}, {}
    for name, (rep, secs) in zip(names, results):
        checks.extend(rep.checks)
        if rep.notes:
            notes[name] = rep.notes
        seconds[name] = secs
    report = RunReport(config.as_dict(), checks, notes, seconds, config.timing)
    if config.output:
        Path(config.output).write_text(report.to_json())
    return report
