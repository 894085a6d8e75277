"""Numeric analytic continuation of linear ODEs by Taylor stepping.

Coordinates are Taylor frames (y, y', y''/2!, ..., y^(r-1)/(r-1)!) at a point.
One step from c to c + h expands a basis of solutions at c to N terms via the
coefficient recurrence of the operator shifted to c, then re-expands at c + h.
Steps stay within half the distance to the nearest singularity.  Accuracy is
checked by recomputing at higher precision and doubled truncation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .diffop.operator import as_diffop
from .exact.bigcomplex import to_mpc
from .exact.numberfield import numeric_roots
from .frobenius import PRINCIPAL, BranchSpec, LocalBasis, LocalSolution


class ClearanceError(ValueError):
    """A path passes too close to a singular point."""


class ConvergenceError(ArithmeticError):
    """Precision escalation did not reach the requested accuracy."""


class ConditioningError(ArithmeticError):
    pass


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class Path:
    """Polygonal path through the given complex waypoints."""

    waypoints: tuple

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple(to_mpc(w) for w in self.waypoints))

    @classmethod
    def of(cls, *pts) -> "Path":
        return cls(tuple(pts))

    @property
    def start(self):
        return self.waypoints[0]

    @property
    def end(self):
        return self.waypoints[-1]

    def reverse(self) -> "Path":
        return Path(tuple(reversed(self.waypoints)))

    def conjugate(self) -> "Path":
        return Path(tuple(mpmath.conj(w) for w in self.waypoints))

    def __add__(self, other: "Path") -> "Path":
        if abs(self.end - other.start) > mpmath.mpf(10) ** -30:
            raise ValueError("paths do not connect")
        return Path(self.waypoints + other.waypoints[1:])

    def is_closed(self) -> bool:
        return abs(self.start - self.end) < mpmath.mpf(10) ** -30

    def segments(self):
        w = self.waypoints
        return [(w[i], w[i + 1]) for i in range(len(w) - 1)]

    def winding_number(self, z) -> int:
        """Winding number about z (closed paths)."""
        total = mpmath.mpf(0)
        for a, b in self.segments():
            total += mpmath.arg((b - z) / (a - z))
        return int(mpmath.nint(total / (2 * mpmath.pi)))

    def __str__(self) -> str:
        return " -> ".join(mpmath.nstr(w, 8) for w in self.waypoints)

    @classmethod
    def parse(cls, s: str) -> "Path":
        """"(0.01) (0.5+0.1j) (1)" -> Path."""
        import re

        items = re.findall(r"\(([^()]*)\)", s)
        if not items:
            items = s.split()
        return cls(tuple(mpmath.mpc(complex(t.replace(" ", "").replace("i", "j"))) for t in items))


def _segment_distance(a, b, z):
    ab = b - a
    if ab == 0:
        return abs(z - a)
    u = ((z - a) * mpmath.conj(ab)).real / abs(ab) ** 2
    u = min(max(u, 0), 1)
    return abs(a + u * ab - z)


def auto_path(a, b, singularities, side: int = 1, rel: float = 1e-2) -> Path:
    """Straight path from a to b with detours around singular points it grazes.

    A singular point s closer than rel * scale(s) to the segment (scale being
    the distance from s to the nearest other singular point or endpoint) gets
    a waypoint at s + side * i * scale(s) / 2, i.e. above it for side = +1.
    """
    a, b = to_mpc(a), to_mpc(b)
    pts = [a]
    cur = a
    todo = sorted(singularities, key=lambda s: float(abs(s - a)))
    for s in todo:
        others = [abs(s - t) for t in singularities if t is not s and abs(s - t) > 0]
        scale = min(others + [abs(s - a), abs(s - b)])
        if scale == 0:
            raise ClearanceError("endpoint is a singular point")
        if _segment_distance(cur, b, s) < rel * scale:
            # detour: go past s on the chosen side
            along = (b - cur) / abs(b - cur)
            off = side * 1j * along * scale / 2
            pts.append(s - along * scale / 2 + off)
            pts.append(s + along * scale / 2 + off)
            cur = pts[-1]
    pts.append(b)
    return Path(tuple(pts))


def circle_path(center, radius, start_angle=0.0, n: int = 16, clockwise: bool = False) -> Path:
    """Closed regular polygon approximating a circle."""
    pts = []
    sgn = -1 if clockwise else 1
    for k in range(n + 1):
        th = mpmath.mpf(start_angle) + sgn * 2 * mpmath.pi * k / n
        pts.append(to_mpc(center) + to_mpc(radius) * mpmath.expjpi(th / mpmath.pi))
    pts[-1] = pts[0]
    return Path(tuple(pts))


# ------------------------------------------------------ numeric operator


class NumericOperator:
    """An operator with its finite singular points, prepared for stepping."""

    def __init__(self, L, prec: int = 128):
        self.L = as_diffop(L)
        self.order = self.L.order
        self.prec = prec
        self._sing_cache: dict[int, list] = {}
        self.singularities = self.singular_values(prec)

    def singular_values(self, prec: int):
        if prec not in self._sing_cache:
            lead = self.L.leading
            if all(isinstance(c, Fraction) for c in lead.coeffs):
                from .exact.factor import squarefree_decomposition

                vals = []
                for f, _ in squarefree_decomposition(lead):
                    vals.extend(numeric_roots(f, prec))
            else:
                with mpmath.workprec(prec + 20):
                    cs = [to_mpc(c) for c in reversed(lead.coeffs)]
                    vals = list(mpmath.polyroots(cs, maxsteps=400, extraprec=2 * prec))
            self._sing_cache[prec] = vals
        return self._sing_cache[prec]

    def radius(self, c):
        if not self.singularities:
            return mpmath.inf
        return min(abs(c - s) for s in self.singularities)

    def shifted(self, c, prec: int):
        """p_i(c + t) as lists of mpc coefficients, normalized by p_r(c)."""
        out = []
        for p in self.L.coeffs:
            cs = [to_mpc(v, prec) for v in p.coeffs]
            n = len(cs)
            for i in range(n):
                for j in range(n - 2, i - 1, -1):
                    cs[j] = cs[j] + c * cs[j + 1]
            out.append(cs)
        lead = out[-1][0]
        if abs(lead) == 0:
            raise ClearanceError("step centered at a singular point")
        return [[v / lead for v in cs] for cs in out]

    def check_clearance(self, path: Path, clearance):
        for a, b in path.segments():
            for s in self.singularities:
                if _segment_distance(a, b, s) <= clearance:
                    raise ClearanceError(
                        f"segment {mpmath.nstr(a, 6)} -> {mpmath.nstr(b, 6)} passes within "
                        f"{mpmath.nstr(clearance, 3)} of singular point {mpmath.nstr(s, 8)}"
                    )


def _truncation(rate, prec: int, order: int) -> int:
    """Terms needed when coefficients decay like rate^-m (rate > 1)."""
    return int(mpmath.ceil((prec + 24) / mpmath.log(rate, 2))) + 2 * order + 8


def step_matrix(op: NumericOperator, c, h, N: int, prec: int):
    """Transition matrix (Taylor frames) for one step from c to c + h."""
    r = op.order
    with mpmath.workprec(prec):
        P = op.shifted(c, prec)
        # nonzero operator coefficients other than the leading one at t^0
        terms = [(i, k, v) for i, cs in enumerate(P) for k, v in enumerate(cs) if v != 0 and not (i == r and k == 0)]
        a = [[mpmath.mpc(int(m == j)) for j in range(r)] for m in range(r)]
        for m in range(0, N - r):
            acc = [mpmath.mpc(0)] * r
            for i, k, v in terms:
                idx = m - k + i
                if idx < 0:
                    continue
                ff = 1
                for q in range(i):
                    ff *= idx - q
                if ff == 0:
                    continue
                w = v * ff
                row = a[idx]
                for j in range(r):
                    acc[j] += w * row[j]
            den = 1
            for q in range(r):
                den *= m + r - q
            a.append([-x / den for x in acc])
        # re-expand at h: new_i = sum_m C(m, i) a_m h^(m - i)
        hp = [mpmath.mpc(1)]
        for _ in range(N):
            hp.append(hp[-1] * h)
        M = mpmath.matrix(r, r)
        for i in range(r):
            for j in range(r):
                s = mpmath.mpc(0)
                for m in range(i, len(a)):
                    if a[m][j] != 0:
                        s += comb(m, i) * a[m][j] * hp[m - i]
                M[i, j] = s
    return M


@dataclass
class StepRecord:
    center: object
    h: object
    radius: object
    N: int
    seconds: float


@dataclass
class TransitionMatrix:
    """Matrix mapping Taylor-frame coordinates at path.start to path.end."""

    matrix: object  # mpmath.matrix
    path: Path
    prec: int
    error: object = None  # max entrywise estimate
    from_basis: str = "taylor"
    to_basis: str = "taylor"
    steps: list = field(default_factory=list)

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        """self after other (other's path first)."""
        err = None
        if self.error is not None and other.error is not None:
            err = self.error * mpmath.mnorm(other.matrix, 1) + other.error * mpmath.mnorm(self.matrix, 1)
        return TransitionMatrix(self.matrix * other.matrix, other.path + self.path, min(self.prec, other.prec), err)

    def det(self):
        with mpmath.workprec(self.prec + 20):
            return mpmath.det(self.matrix)

    def entries(self):
        M = self.matrix
        return [[M[i, j] for j in range(M.cols)] for i in range(M.rows)]

    def to_json(self, digits: int = 30) -> dict:
        from .exact.bigcomplex import mpc_to_json

        return {
            "matrix": [[mpc_to_json(v, digits) for v in row] for row in self.entries()],
            "prec": self.prec,
            "error": mpmath.nstr(self.error, 5) if self.error is not None else None,
            "path": [mpc_to_json(w, 20) for w in self.path.waypoints],
            "from": self.from_basis,
            "to": self.to_basis,
        }


def _transition_once(op: NumericOperator, path: Path, prec: int, trunc_scale: float, ratio: float, records):
    r = op.order
    with mpmath.workprec(prec):
        M = mpmath.eye(r)
        for a, b in path.segments():
            c = mpmath.mpc(a)
            b = mpmath.mpc(b)
            while abs(b - c) > 0:
                R = op.radius(c)
                dist = abs(b - c)
                if dist <= ratio * R:
                    h = b - c
                else:
                    h = (b - c) / dist * ratio * R
                rate = R / abs(h) if R != mpmath.inf else mpmath.mpf(2) ** 20
                N = int(_truncation(rate, prec, r) * trunc_scale)
                t0 = time.perf_counter()
                S = step_matrix(op, c, h, N, prec)
                if records is not None:
                    records.append(StepRecord(c, h, R, N, time.perf_counter() - t0))
                M = S * M
                c = b if h == b - c else c + h
    return M


def transition(L, path: Path, prec: int = 128, clearance=None, ratio: float = 0.5, escalations: int = 3,
               tol_bits: int | None = None, record_steps: bool = False) -> TransitionMatrix:
    """Transition matrix along ``path`` with an empirical error estimate.

    The estimate is the max entrywise difference with a recomputation at
    prec + 32 bits and doubled truncation; if it exceeds 2^-(tol_bits)
    (default prec/2) the whole computation is escalated (up to 3 times).
    """
    op = L if isinstance(L, NumericOperator) else NumericOperator(L, prec)
    if clearance is None:
        clearance = mpmath.mpf(2) ** (-prec // 4)
    op.check_clearance(path, clearance)
    tol = mpmath.mpf(2) ** (-(tol_bits if tol_bits is not None else prec // 2))
    p = prec
    for _ in range(escalations + 1):
        records = [] if record_steps else None
        M1 = _transition_once(op, path, p, 1.0, ratio, records)
        M2 = _transition_once(op, path, p + 32, 2.0, ratio, None)
        with mpmath.workprec(p + 32):
            err = max(abs(M1[i, j] - M2[i, j]) for i in range(M1.rows) for j in range(M1.cols))
            scale = max(mpmath.mpf(1), mpmath.mnorm(M2, 1))
        if err <= tol * scale:
            with mpmath.workprec(prec):
                return TransitionMatrix(M2, path, prec, err, steps=records or [])
        p += 64
    raise ConvergenceError(f"transition error estimate {mpmath.nstr(err, 5)} above tolerance after escalation")


# ------------------------------------------------------ local <-> numeric


def seed_from_local(L, s: LocalSolution, x1, prec: int = 128, branch: BranchSpec = PRINCIPAL, trust: float = 0.5):
    """(y, y', ..., y^(r-1)) of a local solution at x1 on the given branch."""
    L = as_diffop(L)
    op = NumericOperator(L, prec)
    x1 = to_mpc(x1)
    _check_trust(op, s, x1, trust)
    out = []
    d = s
    with mpmath.workprec(prec + 20):
        for _ in range(L.order):
            out.append(d.evaluate(x1, branch, prec + 20)[0])
            d = d.derivative()
    return out


def _check_trust(op: NumericOperator, s: LocalSolution, x1, trust: float):
    from .frobenius import TrustRadiusError

    if s.point.is_infinite:
        others = [abs(v) for v in op.singularities if abs(v) > 0]
        # t = 1/x; nearest finite singularity in t-plane is 1/max|s|
        R = 1 / max(others) if others else mpmath.inf
        if abs(1 / x1) > trust * R:
            raise TrustRadiusError("evaluation point outside the trust radius at infinity")
        return
    x0 = s.point.to_mpc(op.prec)
    eps = mpmath.mpf(2) ** (-op.prec // 2) * max(1, abs(x0))
    others = [abs(v - x0) for v in op.singularities if abs(v - x0) > eps]
    R = min(others) if others else mpmath.inf
    if abs(x1 - x0) > trust * R:
        raise TrustRadiusError(
            f"|x - x0| = {mpmath.nstr(abs(x1 - x0), 5)} exceeds {trust} * {mpmath.nstr(R, 5)}"
        )


def to_taylor_frame(derivs):
    return [v / factorial(i) for i, v in enumerate(derivs)]


@dataclass
class ConnectionCoefficients:
    values: list
    error: object
    path: Path
    branch: BranchSpec
    condition: object = None

    def to_json(self) -> dict:
        from .exact.bigcomplex import mpc_to_json

        return {
            "coefficients": [mpc_to_json(v, 25) for v in self.values],
            "error": mpmath.nstr(self.error, 5),
            "path": [mpc_to_json(w, 20) for w in self.path.waypoints],
            "branch_center": self.branch.center,
        }


def connect_to_local(L, s: LocalSolution, path: Path, target: LocalBasis, prec: int = 128,
                     start_branch: BranchSpec = PRINCIPAL, end_branch: BranchSpec = PRINCIPAL,
                     trust: float = 0.5) -> ConnectionCoefficients:
    """Coefficients of the continuation of s along path in the target basis."""
    L = as_diffop(L)
    op = NumericOperator(L, prec)
    with mpmath.workprec(prec + 20):
        y0 = mpmath.matrix(to_taylor_frame(seed_from_local(L, s, path.start, prec, start_branch, trust)))
        if len(path.waypoints) > 1:
            T = transition(op, path, prec)
            y1 = T.matrix * y0
            terr = T.error
        else:
            y1, terr = y0, mpmath.mpf(0)
        end = path.end
        for sol in target.solutions:
            _check_trust(op, sol, end, trust)
        W = target.frame_matrix(end, end_branch, prec + 20)
        cond = mpmath.mnorm(W, 1) * mpmath.mnorm(W**-1, 1)
        if cond > mpmath.mpf(2) ** (prec / 4):
            raise ConditioningError(f"matching matrix condition number {mpmath.nstr(cond, 5)}")
        c = mpmath.lu_solve(W, y1)
        err = terr * cond * max(mpmath.mpf(1), mpmath.norm(c))
    return ConnectionCoefficients([c[i] for i in range(len(c))], err, path, end_branch, cond)


def connection_matrix(L, source: LocalBasis, path: Path, target: LocalBasis, prec: int = 128,
                      start_branch: BranchSpec = PRINCIPAL, end_branch: BranchSpec = PRINCIPAL,
                      trust: float = 0.5) -> TransitionMatrix:
    """Matrix whose column j holds the target-basis coordinates of the
    continuation of source basis element j along path."""
    L = as_diffop(L)
    op = NumericOperator(L, prec)
    for sol in source.solutions:
        _check_trust(op, sol, path.start, trust)
    for sol in target.solutions:
        _check_trust(op, sol, path.end, trust)
    T = transition(op, path, prec)
    with mpmath.workprec(prec + 20):
        W0 = source.frame_matrix(path.start, start_branch, prec + 20)
        W1 = target.frame_matrix(path.end, end_branch, prec + 20)
        W1inv = W1**-1
        cond = mpmath.mnorm(W1, 1) * mpmath.mnorm(W1inv, 1)
        if cond > mpmath.mpf(2) ** (prec / 4):
            raise ConditioningError(f"matching matrix condition number {mpmath.nstr(cond, 5)}")
        C = W1inv * T.matrix * W0
        err = T.error * cond * mpmath.mnorm(W0, 1)
    return TransitionMatrix(C, path, prec, err, "local", "local", T.steps)


def monodromy(L, loop: Path, basis: LocalBasis | None = None, prec: int = 128,
              branch: BranchSpec = PRINCIPAL) -> TransitionMatrix:
    """Monodromy along a closed loop, in the Taylor frame at its base point or
    in the given local basis (evaluated at the base point on ``branch``).

    Column j holds the coordinates of the continuation of basis element j.
    """
    if not loop.is_closed():
        raise ValueError("monodromy needs a closed path")
    T = transition(L, loop, prec)
    if basis is None:
        return T
    with mpmath.workprec(prec + 20):
        W = basis.frame_matrix(loop.start, branch, prec + 20)
        Winv = W**-1
        M = Winv * T.matrix * W
        cond = mpmath.mnorm(W, 1) * mpmath.mnorm(Winv, 1)
    return TransitionMatrix(M, loop, prec, T.error * cond, "local", "local", T.steps)


def lasso(base, anchor, loop_center, n: int = 24, clockwise: bool = False, via=None) -> Path:
    """base -> (via) -> anchor, once around the circle about loop_center through
    anchor, then back along the same stem."""
    stem = [base] + (list(via) if via else []) + [anchor]
    anchor, loop_center = to_mpc(anchor), to_mpc(loop_center)
    circ = circle_path(loop_center, abs(anchor - loop_center), mpmath.arg(anchor - loop_center), n, clockwise)
    # the circle must pass through the anchor
    circ = Path((mpmath.mpc(anchor),) + circ.waypoints[1:-1] + (mpmath.mpc(anchor),))
    return Path(tuple(stem)) + circ + Path(tuple(reversed(stem)))
