"""Complex-valued differential forms with exact coefficients on a chart.

Components are stored on strictly increasing index tuples in the dx basis
with the determinant evaluation convention ``(dx_a ^ dx_b)(e_a, e_b) = 1``.
Bidegree decomposition works for any constant matrix S with S^2 = -Id;
for constant structures the induced del / delbar are the full Dolbeault
operators and all operator identities below are exact.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .quaternionic import HypercomplexStructure, Matrix, mat_identity, mat_mul, mat_neg
from .scalars import (
    CONE,
    ComplexRational,
    IMAG_UNIT,
    RationalFunction,
    as_complex_rational,
)


class BidegreeError(ValueError):
    """Operator applied to a form that is not of the required pure bidegree."""


def _insert_sorted(indices: Tuple[int, ...], b: int):
    """Wedge dx^indices with dx^b on the right: (new tuple, sign) or None."""
    pos = bisect_left(indices, b)
    if pos < len(indices) and indices[pos] == b:
        return None
    sign = -1 if (len(indices) - pos) % 2 else 1
    return indices[:pos] + (b,) + indices[pos:], sign


def _insert_left(indices: Tuple[int, ...], b: int):
    """Wedge dx^b on the left of dx^indices: (new tuple, sign) or None."""
    pos = bisect_left(indices, b)
    if pos < len(indices) and indices[pos] == b:
        return None
    sign = -1 if pos % 2 else 1
    return indices[:pos] + (b,) + indices[pos:], sign


def _merge_sign(left: Tuple[int, ...], right: Tuple[int, ...]):
    """Sign and merged tuple for dx^left ^ dx^right; None if they overlap."""
    if set(left) & set(right):
        return None
    inversions = 0
    for t in right:
        pos = bisect_left(left, t)
        inversions += len(left) - pos
    merged = tuple(sorted(left + right))
    return merged, (-1 if inversions % 2 else 1)


class Form:
    """Alternating k-form with complex rational-function coefficients."""

    __slots__ = ("num_vars", "degree", "components")

    def __init__(self, components, num_vars, degree):
        clean = {}
        for indices, coeff in components.items():
            indices = tuple(int(i) for i in indices)
            if len(indices) != degree:
                raise ValueError(f"index tuple {indices} has length != degree {degree}")
            if any(not 0 <= i < num_vars for i in indices):
                raise ValueError(f"index tuple {indices} out of range for {num_vars} variables")
            if any(indices[i] >= indices[i + 1] for i in range(len(indices) - 1)):
                raise ValueError(f"index tuple {indices} is not strictly increasing")
            if not isinstance(coeff, RationalFunction):
                raise TypeError("form coefficients must be RationalFunction values")
            if coeff.num_vars != num_vars:
                raise ValueError("form coefficient disagrees on variable count")
            if not coeff.is_zero():
                clean[indices] = coeff
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, components, num_vars, degree):
        obj = object.__new__(cls)
        object.__setattr__(obj, "num_vars", num_vars)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "components", components)
        return obj

    @classmethod
    def zero(cls, num_vars, degree):
        return cls._raw({}, num_vars, degree)

    @classmethod
    def dx(cls, index, num_vars):
        if not 0 <= index < num_vars:
            raise ValueError(f"index {index} out of range for {num_vars} variables")
        return cls._raw({(index,): RationalFunction.one(num_vars)}, num_vars, 1)

    @classmethod
    def from_scalar(cls, f: RationalFunction):
        if f.is_zero():
            return cls.zero(f.num_vars, 0)
        return cls._raw({(): f}, f.num_vars, 0)

    # -- algebra -------------------------------------------------------

    def _check_compat(self, other, same_degree=True):
        if self.num_vars != other.num_vars:
            raise ValueError("forms live on charts with different variable counts")
        if same_degree and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check_compat(other)
        out = dict(self.components)
        for indices, coeff in other.components.items():
            cur = out.get(indices)
            total = coeff if cur is None else cur + coeff
            if total.is_zero():
                out.pop(indices, None)
            else:
                out[indices] = total
        return Form._raw(out, self.num_vars, self.degree)

    def __neg__(self):
        return Form._raw(
            {indices: -coeff for indices, coeff in self.components.items()},
            self.num_vars,
            self.degree,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        """Multiply by an exact scalar or scalar field."""
        if isinstance(scalar, RationalFunction):
            factor = scalar
        else:
            factor = RationalFunction.constant(as_complex_rational(scalar), self.num_vars)
        out = {}
        for indices, coeff in self.components.items():
            product = coeff * factor
            if not product.is_zero():
                out[indices] = product
        return Form._raw(out, self.num_vars, self.degree)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.degree == other.degree
            and self.components == other.components
        )

    __hash__ = None

    def conjugate(self):
        return Form._raw(
            {indices: coeff.conjugate() for indices, coeff in self.components.items()},
            self.num_vars,
            self.degree,
        )

    def is_zero(self):
        return not self.components

    # -- evaluation -----------------------------------------------------

    def eval_components(self, point) -> Dict[Tuple[int, ...], ComplexRational]:
        return {
            indices: coeff.eval_exact(point)
            for indices, coeff in self.components.items()
        }

    def value(self, vectors, point) -> ComplexRational:
        """Exact value on k tangent vectors at a chart point.

        Vectors may have exact complex entries; the full antisymmetrized
        (determinant) convention is used.
        """
        if len(vectors) != self.degree:
            raise ValueError(f"expected {self.degree} vectors, got {len(vectors)}")
        vecs = [tuple(as_complex_rational(c) for c in v) for v in vectors]
        total = ComplexRational(Fraction(0), Fraction(0))
        values = self.eval_components(point)
        for indices, coeff in values.items():
            det = ComplexRational(Fraction(0), Fraction(0))
            for perm in itertools.permutations(range(self.degree)):
                prod = CONE
                for row, col in enumerate(perm):
                    prod = prod * vecs[col][indices[row]]
                det = det + prod if _perm_sign(perm) > 0 else det - prod
            total = total + coeff * det
        return total

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for indices in sorted(self.components):
            basis = "∧".join(f"dx{i}" for i in indices) if indices else "1"
            parts.append(f"({self.components[indices]}) {basis}".strip())
        return " + ".join(parts)

    def __repr__(self):
        return f"Form(degree={self.degree}, num_vars={self.num_vars}, {self})"


def _perm_sign(perm):
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def wedge(a: Form, b: Form) -> Form:
    """Graded-commutative exact wedge product."""
    a._check_compat(b, same_degree=False)
    degree = a.degree + b.degree
    out = {}
    for left, ca in a.components.items():
        for right, cb in b.components.items():
            merged = _merge_sign(left, right)
            if merged is None:
                continue
            indices, sign = merged
            product = ca * cb
            if sign < 0:
                product = -product
            cur = out.get(indices)
            total = product if cur is None else cur + product
            if total.is_zero():
                out.pop(indices, None)
            else:
                out[indices] = total
    return Form._raw(out, a.num_vars, degree)


def exterior_derivative(a: Form) -> Form:
    """d(f dx^T) = sum_b (df/dx_b) dx^b ^ dx^T, computed symbolically."""
    out = {}
    for indices, coeff in a.components.items():
        for var in range(a.num_vars):
            dc = coeff.diff(var)
            if dc.is_zero():
                continue
            inserted = _insert_left(indices, var)
            if inserted is None:
                continue
            new_indices, sign = inserted
            if sign < 0:
                dc = -dc
            cur = out.get(new_indices)
            total = dc if cur is None else cur + dc
            if total.is_zero():
                out.pop(new_indices, None)
            else:
                out[new_indices] = total
    return Form._raw(out, a.num_vars, a.degree + 1)


# -- bidegree machinery ----------------------------------------------------


@lru_cache(maxsize=64)
def _check_acs(S: Matrix):
    dim = len(S)
    if any(len(row) != dim for row in S):
        raise ValueError("complex structure matrix must be square")
    if mat_mul(S, S) != mat_neg(mat_identity(dim)):
        raise ValueError("matrix does not square to -Id; not an almost complex structure")
    return True


@lru_cache(maxsize=64)
def _projector_rows(S: Matrix):
    """Rows of the (1,0) and (0,1) projectors on 1-forms.

    dx^a composed with S is the row a of S, so the projected 1-forms are
    pi^{1,0} dx^a = sum_b (delta_ab - i S[a][b])/2 dx^b and its conjugate.
    """
    half = Fraction(1, 2)
    dim = len(S)
    hol = []
    anti = []
    for a in range(dim):
        hrow = {}
        arow = {}
        for b in range(dim):
            delta = Fraction(1) if a == b else Fraction(0)
            s = S[a][b]
            h = ComplexRational(half * delta, -half * s)
            t = ComplexRational(half * delta, half * s)
            if not h.is_zero():
                hrow[b] = h
            if not t.is_zero():
                arow[b] = t
        hol.append(hrow)
        anti.append(arow)
    return tuple(hol), tuple(anti)


@lru_cache(maxsize=None)
def _decompose_tuple(S: Matrix, indices: Tuple[int, ...]):
    """Expand dx^indices into eigencomponents of S.

    Returns a map (index tuple, holomorphic factor count) -> constant
    complex coefficient.
    """
    hol, anti = _projector_rows(S)
    state = {((), 0): CONE}
    for a in indices:
        new_state = {}
        for (current, h), weight in state.items():
            for rows, dh in ((hol[a], 1), (anti[a], 0)):
                for b, entry in rows.items():
                    inserted = _insert_sorted(current, b)
                    if inserted is None:
                        continue
                    merged, sign = inserted
                    value = weight * entry
                    if sign < 0:
                        value = -value
                    key = (merged, h + dh)
                    cur = new_state.get(key)
                    total = value if cur is None else cur + value
                    if total.is_zero():
                        new_state.pop(key, None)
                    else:
                        new_state[key] = total
        state = new_state
    return state


@lru_cache(maxsize=None)
def _conjugate_tuple(S: Matrix, indices: Tuple[int, ...]):
    """Expand dx^indices pulled back through S (each dx^a becomes row a of S)."""
    state = {(): CONE}
    for a in indices:
        new_state = {}
        for current, weight in state.items():
            for b, s in enumerate(S[a]):
                if not s:
                    continue
                inserted = _insert_sorted(current, b)
                if inserted is None:
                    continue
                merged, sign = inserted
                value = weight * ComplexRational(s, Fraction(0))
                if sign < 0:
                    value = -value
                cur = new_state.get(merged)
                total = value if cur is None else cur + value
                if total.is_zero():
                    new_state.pop(merged, None)
                else:
                    new_state[merged] = total
        state = new_state
    return state


def _accumulate(bucket, indices, value):
    cur = bucket.get(indices)
    total = value if cur is None else cur + value
    if total.is_zero():
        bucket.pop(indices, None)
    else:
        bucket[indices] = total


def bidegree_decompose(a: Form, S: Matrix) -> Dict[Tuple[int, int], Form]:
    """All (p, q) components of a with respect to S; parts sum back to a."""
    _check_acs(S)
    if len(S) != a.num_vars:
        raise ValueError("structure matrix size does not match the chart")
    k = a.degree
    buckets = {(p, k - p): {} for p in range(k + 1)}
    for indices, coeff in a.components.items():
        for (new_indices, h), weight in _decompose_tuple(S, indices).items():
            _accumulate(buckets[(h, k - h)], new_indices, coeff * weight)
    return {
        pq: Form._raw(components, a.num_vars, k) for pq, components in buckets.items()
    }


def bidegree_project(a: Form, S: Matrix, p: int, q: int) -> Form:
    """The (p, q) component of a with respect to S."""
    if p < 0 or q < 0 or p + q != a.degree:
        raise ValueError(f"(p, q) = ({p}, {q}) incompatible with degree {a.degree}")
    return bidegree_decompose(a, S)[(p, q)]


def pure_bidegree(a: Form, S: Matrix):
    """The (p, q) of a pure-bidegree form; raises BidegreeError if mixed.

    The zero form is reported as (degree, 0).
    """
    parts = {pq: part for pq, part in bidegree_decompose(a, S).items() if not part.is_zero()}
    if not parts:
        return (a.degree, 0)
    if len(parts) > 1:
        raise BidegreeError(
            f"form has mixed bidegree components {sorted(parts)} with respect to S"
        )
    return next(iter(parts))


def j_conjugate(a: Form, S: Matrix) -> Form:
    """(S.a)(v1,...,vk) = a(S v1,...,S vk); coefficients extended complex-linearly."""
    _check_acs(S)
    if len(S) != a.num_vars:
        raise ValueError("structure matrix size does not match the chart")
    out = {}
    for indices, coeff in a.components.items():
        for new_indices, weight in _conjugate_tuple(S, indices).items():
            _accumulate(out, new_indices, coeff * weight)
    return Form._raw(out, a.num_vars, a.degree)


# -- Dolbeault-type operators ------------------------------------------------


def dolbeault_del(a: Form, S: Matrix) -> Form:
    """del a: the (p+1, q) part of d a, for a of pure bidegree (p, q)."""
    p, q = pure_bidegree(a, S)
    return bidegree_project(exterior_derivative(a), S, p + 1, q)


def dolbeault_delbar(a: Form, S: Matrix) -> Form:
    """delbar a: the (p, q+1) part of d a, for a of pure bidegree (p, q)."""
    p, q = pure_bidegree(a, S)
    return bidegree_project(exterior_derivative(a), S, p, q + 1)


def del_J(a: Form, H: HypercomplexStructure) -> Form:
    """del_J = -J o delbar o J; maps (p, q) wrt I to (p+1, q)."""
    inner = j_conjugate(a, H.J)
    middle = dolbeault_delbar(inner, H.I)
    return -j_conjugate(middle, H.J)


# -- coordinate coframes ------------------------------------------------------


def holomorphic_coframe(n: int):
    """The 2n holomorphic coordinate 1-forms of the standard structure.

    Block b contributes dz_{2b+1} = dx_{4b} + i dx_{4b+1} and
    dz_{2b+2} = dx_{4b+2} + i dx_{4b+3} (1-based names, 0-based list).
    """
    num_vars = 4 * n
    one = RationalFunction.one(num_vars)
    i_unit = RationalFunction.constant(IMAG_UNIT, num_vars)
    frame = []
    for b in range(n):
        for first in (4 * b, 4 * b + 2):
            frame.append(
                Form(
                    {(first,): one, (first + 1,): i_unit},
                    num_vars,
                    1,
                )
            )
    return frame


def antiholomorphic_coframe(n: int):
    return [dz.conjugate() for dz in holomorphic_coframe(n)]


@dataclass(frozen=True)
class BigradedForm:
    """A form together with its full bidegree decomposition."""

    base: Form
    structure_tag: str
    parts: Dict[Tuple[int, int], Form]

    @classmethod
    def compute(cls, form: Form, H: HypercomplexStructure, tag: str):
        if tag not in ("I", "J", "K"):
            raise ValueError("structure tag must be 'I', 'J' or 'K'")
        parts = bidegree_decompose(form, H.matrix(tag))
        return cls(base=form, structure_tag=tag, parts=parts)

    def part(self, p, q):
        return self.parts.get(
            (p, q), Form.zero(self.base.num_vars, self.base.degree)
        )
