"""Parallel sweep over diagonal unimodular 3D algebras [e_i, e_j] = λ_k e_k."""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from distributions.distribution import from_direction, is_integrable, is_umbilical
from flags.cotton_york import eigenflag_find_3d
from liealg.algebra import diagonal_3d
from liealg.curvature import cotton_york_closed_form_3d
from ratmath.rational import format_rational, parse_rational
from utils.config import WORKERS
from utils.errors import ValidationError
from utils.logging import logger

PREDICATES = ("detCY-zero", "eigenflag-exists", "eigenflag-without-LCW")

# contiguous chunks per worker; more chunks than workers keeps the pool busy
CHUNKS_PER_WORKER = 4


@dataclass(frozen=True)
class ParamRange:
    lo: Fraction
    hi: Fraction
    step: Fraction

    def values(self):
        count = int((self.hi - self.lo) / self.step) + 1 if self.hi >= self.lo else 0
        return tuple(self.lo + i * self.step for i in range(count))

    def __str__(self):
        return f"{format_rational(self.lo)}:{format_rational(self.hi)}:{format_rational(self.step)}"


def parse_range(text, field="range"):
    """Parse "lo:hi:step" (or a single value) into a closed rational range."""
    parts = str(text).split(":")
    if len(parts) == 1:
        value = parse_rational(parts[0], field)
        return ParamRange(value, value, Fraction(1))
    if len(parts) != 3:
        raise ValidationError(f"{field}: expected lo:hi:step, got {text!r}")
    lo, hi, step = (parse_rational(p, field) for p in parts)
    if step <= 0:
        raise ValidationError(f"{field}: step must be positive, got {format_rational(step)}")
    return ParamRange(lo, hi, step)


@dataclass(frozen=True)
class SweepSpec:
    l1: ParamRange
    l2: ParamRange
    l3: ParamRange
    predicate: str = "eigenflag-without-LCW"
    workers: int = WORKERS

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise ValidationError(f"Unknown predicate {self.predicate!r}; expected one of {PREDICATES}")
        if self.workers < 1:
            raise ValidationError("workers must be at least 1")

    def grid(self):
        """Grid points in index order, λ3 varying fastest."""
        return list(itertools.product(self.l1.values(), self.l2.values(), self.l3.values()))


def _vector(v):
    return [format_rational(a) for a in v]


def evaluate_point(predicate, lambdas):
    """Return the finding for one grid point, or None when the predicate fails."""
    cy = cotton_york_closed_form_3d(*lambdas)
    det = cy[0] * cy[1] * cy[2]
    if det != 0:
        return None
    finding = {"lambda": _vector(lambdas), "cy_diagonal": _vector(cy)}
    if predicate == "detCY-zero":
        return finding

    diag = tuple(tuple(cy[i] if i == j else Fraction(0) for j in range(3)) for i in range(3))
    flags = eigenflag_find_3d(diag)
    if flags.all_directions:
        if predicate == "eigenflag-exists":
            finding["flags"] = "all"
            return finding
        return None
    if not flags.certificates:
        return None
    finding["flags"] = [
        _vector(c.direction) if c.exact else [float(a) for a in c.direction] for c in flags.certificates
    ]
    if predicate == "eigenflag-exists":
        return finding

    if not all(c.exact for c in flags.certificates):
        return None
    L = diagonal_3d(*lambdas)
    distributions = []
    for cert in flags.certificates:
        D = from_direction(cert.direction)
        integrable = is_integrable(L, D)
        umbilical = is_umbilical(L, D).umbilical
        if integrable.integrable and umbilical:
            return None
        item = {"direction": _vector(cert.direction), "integrable": integrable.integrable, "umbilical": umbilical}
        if integrable.witness is not None:
            item["witness_bracket"] = _vector(integrable.witness.bracket)
        distributions.append(item)
    finding["distributions"] = distributions
    return finding


def _evaluate_chunk(job):
    predicate, start, points = job
    findings = []
    for offset, lambdas in enumerate(points):
        finding = evaluate_point(predicate, lambdas)
        if finding is not None:
            findings.append({"index": start + offset, **finding})
    return findings


def _chunks(points, count):
    size = max(1, -(-len(points) // count))
    return [(start, points[start:start + size]) for start in range(0, len(points), size)]


def sweep(spec):
    """Evaluate the predicate over the grid; findings are ordered by grid index for any worker count."""
    points = spec.grid()
    if not points:
        raise ValidationError(f"Empty sweep grid: l1={spec.l1} l2={spec.l2} l3={spec.l3}")
    jobs = [(spec.predicate, start, chunk) for start, chunk in _chunks(points, spec.workers * CHUNKS_PER_WORKER)]
    logger.info(f"Sweeping {len(points)} point(s) in {len(jobs)} chunk(s) on {spec.workers} worker(s)")
    if spec.workers <= 1:
        results = [_evaluate_chunk(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(_evaluate_chunk, jobs))
    findings = sorted((f for chunk in results for f in chunk), key=lambda f: f["index"])
    logger.info(f"Predicate {spec.predicate}: {len(findings)} finding(s)")
    return {
        "predicate": spec.predicate,
        "grid": {"l1": str(spec.l1), "l2": str(spec.l2), "l3": str(spec.l3)},
        "points": len(points),
        "findings": findings,
    }


def dumps(result):
    return json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
