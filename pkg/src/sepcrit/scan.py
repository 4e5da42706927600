"""Parameter scans: Table-1 style gamma ranges by bisection, SO(3)
parameter-space region grids, single-state checks, and Choi dumps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import maps
from .criteria import (
    CriterionResult,
    Kind,
    alpha_beta_inequality,
    entropic_inequality,
    limit_witness,
    ppt_check,
)
from .errors import InvalidParameters, ParameterOutOfRange
from .formats import format_float
from .linalg import DEFAULT_TOL
from .maps import CPDecomposition
from .states import DensityMatrix, horodecki_state, so3_state

# Verdict tolerance used when locating interval boundaries.  The default
# criterion tolerance (1e-9, relative) is meant to suppress false
# positives on single verdicts; for root bracketing it would bias the
# located boundary wherever margins are small (large alpha), so the
# bisection uses an essentially-zero threshold instead.
BISECTION_CRITERION_TOL = 1e-13


def route_kind(beta: float) -> Kind:
    """Default inequality kind for a given beta."""
    if beta > 1:
        return Kind.I
    if beta >= 0:
        return Kind.II
    if beta >= -1:
        return Kind.III
    raise ParameterOutOfRange(f"beta={beta} < -1")


# ---------------------------------------------------------------------------
# map-spec strings, e.g. "reduction d=3", "theta a=2 c=1,1,1"

def _parse_value(text: str):
    if "," in text:
        return [float(t) for t in text.split(",")]
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_map_spec(spec: str) -> CPDecomposition:
    """Build a catalog decomposition from a 'family key=value ...' string."""
    tokens = spec.split()
    if not tokens:
        raise InvalidParameters("empty map spec")
    family, kv = tokens[0], {}
    for token in tokens[1:]:
        if "=" not in token:
            raise InvalidParameters(f"bad map parameter {token!r}")
        key, value = token.split("=", 1)
        kv[key] = _parse_value(value)
    if family == "tau_u":
        kv.setdefault("d", 4)
        kv = {"U": maps.default_breuer_unitary(int(kv["d"]))}
    if family == "kossakowski":
        flat = np.asarray(kv.pop("a"), dtype=float)
        d = int(round(math.sqrt(flat.size)))
        if d * d != flat.size:
            raise InvalidParameters("kossakowski a must have d^2 entries")
        kv["a_matrix"] = flat.reshape(d, d)
    return maps.make_decomposition(family, **kv)


# ---------------------------------------------------------------------------
# Table-1 style gamma intervals

@dataclass(frozen=True)
class GammaInterval:
    lower: float = math.nan
    upper: float = math.nan
    lower_open: bool = True
    upper_open: bool = True
    empty: bool = False

    def __str__(self) -> str:
        if self.empty:
            return "--"
        lo = "(" if self.lower_open else "["
        hi = ")" if self.upper_open else "]"
        return f"{lo}{self.lower:.4f}, {self.upper:.4f}{hi}"


def _bisect(predicate, false_side: float, true_side: float,
            tol: float) -> float:
    """Boundary between a non-violating and a violating gamma."""
    while abs(true_side - false_side) > tol:
        mid = 0.5 * (false_side + true_side)
        if predicate(mid):
            true_side = mid
        else:
            false_side = mid
    return 0.5 * (false_side + true_side)


def table1(alpha: float, beta: float = 1.0,
           map_spec: str = "phi_dk d=3 k=1",
           kind: Optional[Kind] = None,
           bisect_tol: float = 1e-4,
           grid_step: float = 0.01) -> GammaInterval:
    """Gamma range in [2, 5] where the (alpha, beta)-inequality derived
    from the given map is violated on the 3x3 test family.

    alpha = inf routes to the limit witness.  Boundaries are located on
    a 0.01 grid and refined by bisection to bisect_tol.
    """
    if bisect_tol < 1e-6:
        raise InvalidParameters("bisect_tol must be >= 1e-6")
    dec = parse_map_spec(map_spec)

    if math.isinf(alpha):
        full = dec.map

        def violated(gamma: float) -> bool:
            return limit_witness(horodecki_state(gamma), full) < 0
    else:
        used_kind = kind or route_kind(beta)

        def violated(gamma: float) -> bool:
            return alpha_beta_inequality(
                horodecki_state(gamma), dec, alpha, beta, used_kind,
                tol=BISECTION_CRITERION_TOL,
            ).violated

    grid = np.arange(2.0, 5.0 + grid_step / 2, grid_step)
    grid[-1] = 5.0
    mask = [violated(g) for g in grid]
    if not any(mask):
        return GammaInterval(empty=True)
    i0 = mask.index(True)
    i1 = len(mask) - 1 - mask[::-1].index(True)

    if i0 == 0:
        lower, lower_open = 2.0, False
    else:
        lower = _bisect(violated, grid[i0 - 1], grid[i0], bisect_tol)
        lower_open = True
    if i1 == len(grid) - 1:
        upper, upper_open = 5.0, False
    else:
        upper = _bisect(violated, grid[i1 + 1], grid[i1], bisect_tol)
        upper_open = True
    return GammaInterval(lower, upper, lower_open, upper_open)


# ---------------------------------------------------------------------------
# SO(3) region scans

@dataclass(frozen=True)
class RegionCriterion:
    """One labeled criterion evaluated at each grid point."""

    label: str
    dec: Optional[CPDecomposition]  # None means the entropic inequality
    alpha: float
    beta: float = 1.0
    kind: Optional[Kind] = None
    tol: float = DEFAULT_TOL

    def evaluate(self, rho: DensityMatrix) -> CriterionResult:
        if self.dec is None:
            return entropic_inequality(rho, self.alpha, tol=self.tol)
        kind = self.kind or route_kind(self.beta)
        return alpha_beta_inequality(
            rho, self.dec, self.alpha, self.beta, kind, self.tol
        )


@dataclass(frozen=True)
class ScanRow:
    q: float
    r: float
    s: float
    ppt: bool
    results: dict = field(default_factory=dict)  # label -> CriterionResult


def so3_grid_count(p: float, resolution: int) -> int:
    """Closed-form count of admissible (q, r) grid points."""
    n = 0
    for i in range(resolution + 1):
        for j in range(resolution + 1):
            if 1.0 - p - i / resolution - j / resolution >= -1e-12:
                n += 1
    return n


def so3_region(p: float, criteria: list[RegionCriterion], resolution: int,
               tol: float = DEFAULT_TOL) -> Iterator[ScanRow]:
    """Scan the admissible (q, r) simplex at fixed p on a uniform grid.

    Emits rows in row-major (q outer, r inner) order; each row carries
    the PPT flag and every criterion's verdict.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidParameters(f"p={p} outside [0,1]")
    if resolution < 2:
        raise InvalidParameters("resolution must be >= 2")
    labels = [c.label for c in criteria]
    if len(set(labels)) != len(labels):
        raise InvalidParameters(f"duplicate criterion labels in {labels}")
    for i in range(resolution + 1):
        q = i / resolution
        for j in range(resolution + 1):
            r = j / resolution
            s = 1.0 - p - q - r
            if s < -1e-12:
                continue
            rho = so3_state(p, q, r)
            ppt = ppt_check(rho) >= -tol
            results = {c.label: c.evaluate(rho) for c in criteria}
            yield ScanRow(q, r, max(s, 0.0), ppt, results)


def region_csv_header(labels: list[str]) -> str:
    cols = ["q", "r", "s", "ppt"]
    for label in labels:
        cols += [f"{label}_violated", f"{label}_margin"]
    return ",".join(cols)


def region_csv_row(row: ScanRow, labels: list[str]) -> str:
    cols = [
        format_float(row.q, 9),
        format_float(row.r, 9),
        format_float(row.s, 9),
        str(int(row.ppt)),
    ]
    for label in labels:
        res = row.results[label]
        cols += [str(int(res.violated)), format_float(res.margin, 9)]
    return ",".join(cols)


# ---------------------------------------------------------------------------
# single-state checks and Choi dumps

def check_state(rho: DensityMatrix,
                criteria: list[RegionCriterion],
                include_ppt: bool = False,
                tol: float = DEFAULT_TOL) -> list[tuple[str, CriterionResult]]:
    """Evaluate criteria on one state; returns (label, result) pairs."""
    rows = []
    if include_ppt:
        val = ppt_check(rho, tol)
        rows.append((
            "ppt",
            CriterionResult(val, 0.0, val, bool(val < -tol), Kind.STRUCTURAL,
                            tol),
        ))
    for crit in criteria:
        rows.append((crit.label, crit.evaluate(rho)))
    return rows


def choi_dump(map_spec: str, part: str = "map") -> tuple[np.ndarray, int, bool, float]:
    """Choi matrix of a catalog map (or of one CP half) plus CP verdict.

    Returns (choi, d, is_cp, min_eigenvalue).
    """
    dec = parse_map_spec(map_spec)
    m = {"map": dec.map, "1": dec.lambda1, "2": dec.lambda2}.get(part)
    if m is None:
        raise InvalidParameters(f"part must be 'map', '1' or '2', not {part!r}")
    from . import linalg

    min_eig = linalg.min_eigenvalue(m.choi)
    cp = maps.is_cp(m)
    return np.asarray(m.choi), dec.d, cp, min_eig
