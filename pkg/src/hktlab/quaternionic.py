"""Constant hypercomplex structures and quaternionic Hermitian metrics.

Structures are constant rational matrices over the chart, acting on
tangent vectors (columns are images of basis vectors), so integrability
is automatic and every identity below is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .report import SAMPLED, CheckReport, failed_report, passed_report
from .sampling import SamplingPlan
from .scalars import PoleError, RationalFunction

Matrix = Tuple[Tuple[Fraction, ...], ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_identity(n) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_neg(a) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_mul(a, b) -> Matrix:
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def mat_transpose(a) -> Matrix:
    return tuple(zip(*a))


def mat_vec(a, v):
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(a)))


@dataclass(frozen=True)
class HypercomplexStructure:
    """Triple of constant matrices (I, J, K) obeying the quaternion relations."""

    n: int
    I: Matrix
    J: Matrix
    K: Matrix

    @property
    def num_vars(self):
        return 4 * self.n

    def matrices(self):
        return (("I", self.I), ("J", self.J), ("K", self.K))

    def matrix(self, tag):
        return {"I": self.I, "J": self.J, "K": self.K}[tag]


# Action of left multiplication by i, j, k on one quaternionic block with
# basis (e0, e1, e2, e3) identified with (1, i, j, k).
_BLOCK_I = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
_BLOCK_J = ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0))
_BLOCK_K = ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0))


def _block_diagonal(block, n) -> Matrix:
    dim = 4 * n
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for b in range(n):
        for i in range(4):
            for j in range(4):
                rows[4 * b + i][4 * b + j] = Fraction(block[i][j])
    return tuple(tuple(row) for row in rows)


def standard_structure(n: int) -> HypercomplexStructure:
    """Left quaternion multiplication on n blocks of R^4."""
    if n < 1:
        raise ValueError("quaternionic dimension must be at least 1")
    return HypercomplexStructure(
        n=n,
        I=_block_diagonal(_BLOCK_I, n),
        J=_block_diagonal(_BLOCK_J, n),
        K=_block_diagonal(_BLOCK_K, n),
    )


def structure_from_matrices(I, J, K) -> HypercomplexStructure:
    I, J, K = _freeze(I), _freeze(J), _freeze(K)
    dim = len(I)
    for name, m in (("I", I), ("J", J), ("K", K)):
        if any(len(row) != dim for row in m) or len(m) != dim:
            raise ValueError(f"{name} is not a square matrix of size {dim}")
    if dim % 4:
        raise ValueError(f"dimension {dim} is not divisible by 4")
    return HypercomplexStructure(n=dim // 4, I=I, J=J, K=K)


def _first_mismatch(a, b):
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return {"entry": [i, j], "got": str(x), "expected": str(y)}
    return None


def verify_structure(H: HypercomplexStructure) -> CheckReport:
    """Exact check of every quaternion relation on the triple."""
    dim = 4 * H.n
    neg_id = mat_neg(mat_identity(dim))
    relations = [
        ("I*I = -Id", mat_mul(H.I, H.I), neg_id),
        ("J*J = -Id", mat_mul(H.J, H.J), neg_id),
        ("K*K = -Id", mat_mul(H.K, H.K), neg_id),
        ("I*J = K", mat_mul(H.I, H.J), H.K),
        ("J*I = -K", mat_mul(H.J, H.I), mat_neg(H.K)),
        ("J*K = I", mat_mul(H.J, H.K), H.I),
        ("K*J = -I", mat_mul(H.K, H.J), mat_neg(H.I)),
        ("K*I = J", mat_mul(H.K, H.I), H.J),
        ("I*K = -J", mat_mul(H.I, H.K), mat_neg(H.J)),
    ]
    outcomes = {}
    witness = None
    for name, got, expected in relations:
        mismatch = _first_mismatch(got, expected)
        outcomes[name] = "pass" if mismatch is None else "fail"
        if mismatch is not None and witness is None:
            witness = {"relation": name, **mismatch}
    if witness is None:
        return passed_report("structure", details=outcomes)
    return failed_report("structure", witness=witness, details=outcomes)


class Metric:
    """Symmetric bilinear form with exact rational-function coefficients."""

    __slots__ = ("num_vars", "g")

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise ValueError("metric matrix must be square")
        num_vars = rows[0][0].num_vars if dim else 0
        for a in range(dim):
            for b in range(dim):
                entry = rows[a][b]
                if not isinstance(entry, RationalFunction):
                    raise TypeError("metric entries must be RationalFunction values")
                if entry.num_vars != num_vars:
                    raise ValueError("metric entries disagree on variable count")
        for a in range(dim):
            for b in range(a + 1, dim):
                if not rows[a][b] == rows[b][a]:
                    raise ValueError(f"metric is not symmetric at entry ({a}, {b})")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "g", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Metric is immutable")

    @property
    def dim(self):
        return len(self.g)

    @classmethod
    def euclidean(cls, dim):
        one = RationalFunction.one(dim)
        zero = RationalFunction.zero(dim)
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)])

    @classmethod
    def diagonal(cls, values, num_vars=None):
        dim = len(values)
        if num_vars is None:
            num_vars = dim
        zero = RationalFunction.zero(num_vars)
        rows = [
            [
                RationalFunction.constant(values[i], num_vars) if i == j else zero
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        return cls(rows)

    def scale(self, factor: RationalFunction):
        return Metric([[entry * factor for entry in row] for row in self.g])

    def __add__(self, other):
        return Metric(
            [
                [self.g[a][b] + other.g[a][b] for b in range(self.dim)]
                for a in range(self.dim)
            ]
        )

    def __eq__(self, other):
        if not isinstance(other, Metric):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(
            self.g[a][b] == other.g[a][b]
            for a in range(self.dim)
            for b in range(self.dim)
        )

    __hash__ = None

    def pullback(self, S: Matrix):
        """Pullback S^T g S, i.e. (x, y) -> g(Sx, Sy), with S constant."""
        dim = self.dim
        zero = RationalFunction.zero(self.num_vars)
        gS = [[zero] * dim for _ in range(dim)]
        for c in range(dim):
            for b in range(dim):
                acc = zero
                for d in range(dim):
                    if S[d][b]:
                        acc = acc + self.g[c][d] * S[d][b]
                gS[c][b] = acc
        out = [[zero] * dim for _ in range(dim)]
        for a in range(dim):
            for b in range(dim):
                acc = zero
                for c in range(dim):
                    if S[c][a]:
                        acc = acc + gS[c][b] * S[c][a]
                out[a][b] = acc
        return Metric(out)

    def eval_exact(self, point):
        """Exact real matrix of the metric at a chart point."""
        values = []
        for row in self.g:
            out_row = []
            for entry in row:
                v = entry.eval_exact(point)
                if not v.is_real():
                    raise ValueError("metric entry evaluates to a non-real value")
                out_row.append(v.re)
            values.append(tuple(out_row))
        return tuple(values)

    def __repr__(self):
        return f"Metric(dim={self.dim})"


def quaternion_group_average(g: Metric, H: HypercomplexStructure) -> Metric:
    """Average g over the quaternion group {±1, ±I, ±J, ±K}.

    The result is exactly invariant under I, J and K, hence quaternionic
    Hermitian, and is positive definite wherever g is.
    """
    if g.dim != 4 * H.n:
        raise ValueError(f"metric dimension {g.dim} does not match structure dim {4 * H.n}")
    quarter = RationalFunction.constant(Fraction(1, 4), g.num_vars)
    total = g + g.pullback(H.I) + g.pullback(H.J) + g.pullback(H.K)
    return total.scale(quarter)


def is_quaternionic_hermitian(g: Metric, H: HypercomplexStructure) -> CheckReport:
    """Exact coefficient-level check of g(Sx, Sy) = g(x, y) for S in {I, J, K}."""
    if g.dim != 4 * H.n:
        raise ValueError(f"metric dimension {g.dim} does not match structure dim {4 * H.n}")
    outcomes = {}
    witness = None
    for name, S in H.matrices():
        pulled = g.pullback(S)
        entry = None
        for a in range(g.dim):
            for b in range(a, g.dim):
                if not pulled.g[a][b] == g.g[a][b]:
                    entry = (a, b)
                    break
            if entry:
                break
        outcomes[name] = "pass" if entry is None else "fail"
        if entry is not None and witness is None:
            a, b = entry
            witness = {
                "structure": name,
                "entry": [a, b],
                "pulled_back": str(pulled.g[a][b]),
                "original": str(g.g[a][b]),
            }
    if witness is None:
        return passed_report("quaternionic_hermitian", details=outcomes)
    return failed_report("quaternionic_hermitian", witness=witness, details=outcomes)


def _leading_principal_minors(matrix):
    """Exact leading principal minors of a rational symmetric matrix."""
    dim = len(matrix)
    minors = []
    rows = [list(row) for row in matrix]
    # Fraction-exact Gaussian elimination, restarted per minor size for
    # clarity; dimensions here are tiny (4n <= 16).
    for k in range(1, dim + 1):
        sub = [row[:k] for row in rows[:k]]
        det = Fraction(1)
        for col in range(k):
            pivot_row = next((r for r in range(col, k) if sub[r][col]), None)
            if pivot_row is None:
                det = Fraction(0)
                break
            if pivot_row != col:
                sub[col], sub[pivot_row] = sub[pivot_row], sub[col]
                det = -det
            pivot = sub[col][col]
            det *= pivot
            for r in range(col + 1, k):
                factor = sub[r][col] / pivot
                if factor:
                    sub[r] = [x - factor * y for x, y in zip(sub[r], sub[col])]
        minors.append(det)
    return minors


def positive_definite_report(g: Metric, plan: SamplingPlan) -> CheckReport:
    """Sampled positive-definiteness via exact leading principal minors."""
    skipped = []
    tested = 0
    for point in plan.chart_points(g.num_vars):
        try:
            values = g.eval_exact(point)
        except PoleError:
            skipped.append([str(c) for c in point])
            continue
        tested += 1
        minors = _leading_principal_minors(values)
        for k, minor in enumerate(minors, start=1):
            if minor <= 0:
                return failed_report(
                    "positive_definite",
                    witness={
                        "point": [str(c) for c in point],
                        "minor_order": k,
                        "minor": str(minor),
                    },
                    mode=SAMPLED,
                )
    details = {"points_tested": tested}
    if skipped:
        details["points_skipped_at_poles"] = skipped
    if tested == 0:
        return CheckReport(
            check="positive_definite",
            verdict="indeterminate",
            mode=SAMPLED,
            details=details,
        )
    return passed_report("positive_definite", mode=SAMPLED, details=details)
