"""Classify a one-parameter family as U(1)-like with the spiral criterion.

For each membership mode a surrogate group element is formed from the
family's Jacobian: its modulus ``m(theta)`` is ``|det J|`` (det mode), the
spectral radius (spectral mode) or ``||J||_F / sqrt(n)`` (orbit_bound mode),
and its phase is ``theta``. The element is then deformed by the logarithmic
spiral factor ``exp(eps * theta)``. A mode is ``U1_LIKE`` iff

(a) every undeformed element is in the group
    (``membership_defect <= tol_membership`` for every tested theta),
(b) every finite deformed element escapes
    (``deformed_defect > finite_escape_factor * tol_membership``), and
(c) every infinitesimal deformed element stays, to first order
    (``deformed_defect <= first_order_c * eps * theta``).

Verdicts are a pure function of the recorded numbers and the config, see
:func:`derive_verdict`, so they can be re-derived from a serialised report.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

import numpy as np

from ._linalg import eigenvalues, lu_det
from .coordgroups import TransformFamily, jacobian_matrix
from .exceptions import DomainError, NumericError, RangeError
from .serialize import to_csv, to_json
from .spiral import SpiralDeformation, deform, deformed_defect
from .u1core import GroupElement, unitarity_defect

MODES = ("det", "spectral", "orbit_bound")
U1_LIKE = "U1_LIKE"
NOT_U1_LIKE = "NOT_U1_LIKE"
INCONCLUSIVE = "INCONCLUSIVE"

SURROGATES = {
    "det": "surrogate element: modulus |det J(theta)|, phase theta",
    "spectral": "surrogate element: modulus max |eigenvalue of J(theta)|, phase theta",
    "orbit_bound": "surrogate element: modulus ||J(theta)||_F / sqrt(n), phase theta; "
                   "membership requires max_{k<=N} ||J(k theta)||_F / sqrt(n) <= B",
}

LIMITATIONS = {
    ("translation2d", "det"): "Jacobian-blind to translations: J = I for every theta",
    ("translation2d", "spectral"): "Jacobian-blind to translations: J = I for every theta",
    ("translation2d", "orbit_bound"): "Jacobian-blind to translations: J = I for every theta",
    ("boost1p1", "det"): "det test alone cannot distinguish boosts from rotations: "
                         "det J = cosh^2 - sinh^2 = 1",
    ("shear2d", "det"): "det test alone cannot distinguish shears from rotations: det J = 1",
    ("shear2d", "spectral"): "spectral test cannot see a unipotent shear: spectrum {1, 1}",
    ("shear2d", "orbit_bound"): "shear growth is linear in theta; the orbit bound only "
                                "trips once N*theta is of order B",
}

CSV_HEADER = ("mode", "theta", "regime", "membership_defect", "deformed_defect",
              "analytic_reference")


@dataclass(frozen=True)
class CriterionConfig:
    epsilon: float = 0.01
    finite_thetas: tuple[float, ...] = (0.5, 1.0, 2.0, 2.0 * math.pi)
    infinitesimal_thetas: tuple[float, ...] = (1e-4, 1e-5, 1e-6, 1e-7, 1e-8)
    tol_membership: float = 1e-9
    finite_escape_factor: float = 10.0
    first_order_c: float = 3.0
    modes: tuple[str, ...] = MODES
    orbit_bound_steps: int = 64
    orbit_bound_B: float = 1e3

    def __post_init__(self):
        for name in ("finite_thetas", "infinitesimal_thetas", "modes"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        SpiralDeformation(self.epsilon)
        for name in ("tol_membership", "finite_escape_factor", "first_order_c",
                     "orbit_bound_B"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive, got {v!r}")
        if int(self.orbit_bound_steps) != self.orbit_bound_steps or self.orbit_bound_steps < 1:
            raise DomainError("orbit_bound_steps must be a positive integer")
        if any(not (math.isfinite(t) and t >= 0.1) for t in self.finite_thetas):
            raise DomainError("finite_thetas must all be >= 0.1")
        if any(not (t > 0 and t <= 1e-3) for t in self.infinitesimal_thetas):
            raise DomainError("infinitesimal_thetas must all lie in (0, 1e-3]")
        thetas = self.thetas
        if len(set(thetas)) != len(thetas):
            raise DomainError("thetas must not repeat")
        unknown = set(self.modes) - set(MODES)
        if unknown:
            raise DomainError(f"unknown modes {sorted(unknown)}; expected a subset of {MODES}")
        if len(set(self.modes)) != len(self.modes):
            raise DomainError("modes must not repeat")

    @property
    def thetas(self) -> tuple[float, ...]:
        return self.finite_thetas + self.infinitesimal_thetas

    @property
    def regimes(self) -> tuple[str, ...]:
        return (("finite",) * len(self.finite_thetas)
                + ("infinitesimal",) * len(self.infinitesimal_thetas))

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CriterionConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise DomainError(f"unknown config keys {sorted(extra)}")
        return cls(**d)


@dataclass(frozen=True)
class SweepRecord:
    mode: str
    thetas: tuple[float, ...]
    regimes: tuple[str, ...]
    surrogate_moduli: tuple[float, ...]
    deformed_defects: tuple[float, ...]
    analytic_reference: tuple[float, ...]


@dataclass(frozen=True)
class ModeResult:
    mode: str
    thetas: tuple[float, ...]
    regimes: tuple[str, ...]
    membership_defects: tuple[float | None, ...]
    deformed_defects: tuple[float | None, ...]
    analytic_reference: tuple[float | None, ...]
    verdict: str
    failed_clause: str | None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ClassificationReport:
    family: TransformFamily
    config: CriterionConfig
    modes: dict[str, ModeResult] = field(default_factory=dict)

    @property
    def verdicts(self) -> dict[str, str]:
        return {m: r.verdict for m, r in self.modes.items()}

    @property
    def notes(self) -> list[str]:
        return [n for r in self.modes.values() for n in r.notes]

    @property
    def inconclusive(self) -> bool:
        return any(v == INCONCLUSIVE for v in self.verdicts.values())

    def verdict_line(self) -> str:
        parts = " ".join(f"{m}={v}" for m, v in self.verdicts.items())
        return f"{self.family.id}: {parts}".rstrip()


def _frobenius_ratio(j: np.ndarray) -> float:
    # scaled so squaring entries near 1e174 does not overflow
    scale = float(np.max(np.abs(j)))
    if scale == 0.0 or not math.isfinite(scale):
        return scale
    return scale * float(np.linalg.norm(j / scale, "fro")) / math.sqrt(j.shape[0])


def _spectral_radius(j: np.ndarray) -> float:
    return max(abs(z) for z in eigenvalues(j))


def membership_defect(f: TransformFamily, theta: float, mode: str, *,
                      steps: int = 64, bound: float = 1e3) -> float:
    """How far the undeformed surrogate at ``theta`` sits from the unit circle.

    * det: ``| |det J| - 1 |``
    * spectral: ``max | |lambda| - 1 |`` over the eigenvalues
    * orbit_bound: ``0`` if ``max_{0<=k<=steps} ||J(k theta)||_F / sqrt(n) <= bound``,
      otherwise the excess of that maximum over ``bound``
    """
    if mode == "det":
        return abs(abs(lu_det(jacobian_matrix(f, theta))) - 1.0)
    if mode == "spectral":
        return max(abs(abs(z) - 1.0) for z in eigenvalues(jacobian_matrix(f, theta)))
    if mode == "orbit_bound":
        try:
            peak = max(_frobenius_ratio(jacobian_matrix(f, k * theta))
                       for k in range(steps + 1))
        except OverflowError as exc:
            raise RangeError(f"orbit of {f.id} overflows at theta={theta:g}") from exc
        if not math.isfinite(peak):
            raise RangeError(f"orbit of {f.id} overflows at theta={theta:g}")
        return 0.0 if peak <= bound else peak - bound
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


def surrogate_modulus(f: TransformFamily, theta: float, mode: str) -> float:
    j = jacobian_matrix(f, theta)
    if mode == "det":
        return abs(lu_det(j))
    if mode == "spectral":
        return _spectral_radius(j)
    if mode == "orbit_bound":
        return _frobenius_ratio(j)
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


def _deformed_cell(f: TransformFamily, theta: float, mode: str,
                   d: SpiralDeformation) -> tuple[float, float]:
    m = surrogate_modulus(f, theta, mode)
    if m == 0.0:
        deformed = 1.0
    else:
        element = GroupElement(theta=theta, log_modulus=math.log(m))
        deformed = unitarity_defect(deform(element, d))
    return deformed, deformed_defect(theta, d)[1]


def spiral_sweep(f: TransformFamily, cfg: CriterionConfig, mode: str) -> SweepRecord:
    """Deformed defects ``|exp(2 eps theta) m(theta)^2 - 1|`` over the config thetas.

    Each entry comes with the pure-U(1) reference ``|exp(2 eps theta) - 1|``.
    """
    d = SpiralDeformation(cfg.epsilon)
    moduli, deformed, analytic = [], [], []
    for theta in cfg.thetas:
        moduli.append(surrogate_modulus(f, theta, mode))
        dd, ref = _deformed_cell(f, theta, mode, d)
        deformed.append(dd)
        analytic.append(ref)
    return SweepRecord(mode=mode, thetas=cfg.thetas, regimes=cfg.regimes,
                       surrogate_moduli=tuple(moduli), deformed_defects=tuple(deformed),
                       analytic_reference=tuple(analytic))


def derive_verdict(thetas: Sequence[float], regimes: Sequence[str],
                   membership: Sequence[float | None], deformed: Sequence[float | None],
                   cfg: CriterionConfig) -> tuple[str, str | None]:
    """Apply clauses (a)-(c) to recorded numbers; returns ``(verdict, failed_clause)``."""
    if any(v is None for v in membership) or any(v is None for v in deformed):
        return INCONCLUSIVE, None
    if any(v > cfg.tol_membership for v in membership):
        return NOT_U1_LIKE, "a"
    escape = cfg.finite_escape_factor * cfg.tol_membership
    for regime, dd in zip(regimes, deformed):
        if regime == "finite" and not dd > escape:
            return NOT_U1_LIKE, "b"
    for theta, regime, dd in zip(thetas, regimes, deformed):
        if regime == "infinitesimal" and dd > cfg.first_order_c * cfg.epsilon * abs(theta):
            return NOT_U1_LIKE, "c"
    return U1_LIKE, None


def _cell(f: TransformFamily, mode: str, theta: float, cfg: CriterionConfig):
    d = SpiralDeformation(cfg.epsilon)
    try:
        member = membership_defect(f, theta, mode, steps=cfg.orbit_bound_steps,
                                   bound=cfg.orbit_bound_B)
        deformed, ref = _deformed_cell(f, theta, mode, d)
    except (NumericError, RangeError) as exc:
        return None, None, deformed_defect(theta, d)[1], str(exc)
    return member, deformed, ref, None


def classify(f: TransformFamily, cfg: CriterionConfig | None = None,
             n_jobs: int = 1) -> ClassificationReport:
    """Run the criterion in every configured mode.

    ``(mode, theta)`` cells are independent; with ``n_jobs > 1`` they run on a
    thread pool and are reassembled in config order.
    """
    cfg = cfg or CriterionConfig()
    keys = [(mode, i) for mode in cfg.modes for i in range(len(cfg.thetas))]

    def run(key):
        mode, i = key
        return key, _cell(f, mode, cfg.thetas[i], cfg)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            cells = dict(pool.map(run, keys))
    else:
        cells = dict(map(run, keys))

    modes = {}
    for mode in cfg.modes:
        rows = [cells[(mode, i)] for i in range(len(cfg.thetas))]
        member = tuple(r[0] for r in rows)
        deformed = tuple(r[1] for r in rows)
        verdict, clause = derive_verdict(cfg.thetas, cfg.regimes, member, deformed, cfg)
        notes = [SURROGATES[mode]]
        if (f.id, mode) in LIMITATIONS:
            notes.append(LIMITATIONS[(f.id, mode)])
        notes.extend(f"numeric failure at theta={cfg.thetas[i]!r}: {r[3]}"
                     for i, r in enumerate(rows) if r[3] is not None)
        modes[mode] = ModeResult(mode=mode, thetas=cfg.thetas, regimes=cfg.regimes,
                                 membership_defects=member, deformed_defects=deformed,
                                 analytic_reference=tuple(r[2] for r in rows),
                                 verdict=verdict, failed_clause=clause, notes=tuple(notes))
    return ClassificationReport(family=f, config=cfg, modes=modes)


def report_to_dict(r: ClassificationReport) -> dict[str, Any]:
    out: dict[str, Any] = {"family": r.family.id}
    if r.family.generator is not None:
        out["generator"] = r.family.generator.tolist()
    out["config"] = r.config.to_dict()
    out["modes"] = {
        m: {
            "thetas": list(res.thetas),
            "membership_defects": list(res.membership_defects),
            "deformed_defects": list(res.deformed_defects),
            "analytic_reference": list(res.analytic_reference),
            "verdict": res.verdict,
            "failed_clause": res.failed_clause,
            "notes": list(res.notes),
        }
        for m, res in r.modes.items()
    }
    return out


def render_report(r: ClassificationReport, format: str = "json") -> bytes:
    """Serialise a report as JSON (one object) or CSV (one row per mode and theta)."""
    if format == "json":
        return (to_json(report_to_dict(r)) + "\n").encode("utf-8")
    if format == "csv":
        rows = [(m, theta, regime, mem, dd, ref)
                for m, res in r.modes.items()
                for theta, regime, mem, dd, ref in zip(
                    res.thetas, res.regimes, res.membership_defects,
                    res.deformed_defects, res.analytic_reference)]
        return to_csv(CSV_HEADER, rows).encode("utf-8")
    raise DomainError(f"unknown format {format!r}; expected 'json' or 'csv'")


def rederive_verdicts(report: bytes | str | dict) -> dict[str, tuple[str, str | None]]:
    """Recompute ``(verdict, failed_clause)`` per mode from a serialised JSON report."""
    data = json.loads(report) if isinstance(report, (bytes, str)) else report
    cfg = CriterionConfig.from_dict(data["config"])
    out = {}
    for mode, res in data["modes"].items():
        out[mode] = derive_verdict(res["thetas"], cfg.regimes, res["membership_defects"],
                                   res["deformed_defects"], cfg)
    return out
