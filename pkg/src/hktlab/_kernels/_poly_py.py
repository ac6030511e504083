"""Pure-Python kernel for sparse polynomial term maps.

A term map is a dict sending an exponent tuple (one non-negative int per
variable) to a coefficient pair ``(re, im)`` of ``fractions.Fraction``.
Zero coefficients are never stored.  The compiled kernel in
``_poly_cy.pyx`` implements the same functions with identical semantics;
``hktlab._kernels`` picks one at import time.
"""

from fractions import Fraction

_ZERO = Fraction(0)


def add_terms(a, b):
    out = dict(a)
    for exps, (bre, bim) in b.items():
        cur = out.get(exps)
        if cur is None:
            out[exps] = (bre, bim)
        else:
            re = cur[0] + bre
            im = cur[1] + bim
            if re or im:
                out[exps] = (re, im)
            else:
                del out[exps]
    return out


def neg_terms(a):
    return {exps: (-re, -im) for exps, (re, im) in a.items()}


def scale_terms(a, cre, cim):
    if not cre and not cim:
        return {}
    out = {}
    for exps, (re, im) in a.items():
        nre = re * cre - im * cim
        nim = re * cim + im * cre
        if nre or nim:
            out[exps] = (nre, nim)
    return out


def mul_terms(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, (are, aim) in a.items():
        for eb, (bre, bim) in b.items():
            re = are * bre - aim * bim
            im = are * bim + aim * bre
            if not re and not im:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            cur = out.get(key)
            if cur is None:
                out[key] = (re, im)
            else:
                re += cur[0]
                im += cur[1]
                if re or im:
                    out[key] = (re, im)
                else:
                    del out[key]
    return out


def diff_terms(a, var):
    out = {}
    for exps, (re, im) in a.items():
        k = exps[var]
        if k == 0:
            continue
        key = exps[:var] + (k - 1,) + exps[var + 1 :]
        cur = out.get(key)
        if cur is None:
            out[key] = (re * k, im * k)
        else:
            out[key] = (cur[0] + re * k, cur[1] + im * k)
    return out


def _power_table(a, point, zero, one):
    nvars = len(point)
    maxexp = [0] * nvars
    for exps in a:
        for i in range(nvars):
            if exps[i] > maxexp[i]:
                maxexp[i] = exps[i]
    table = []
    for i in range(nvars):
        powers = [one]
        v = point[i]
        for _ in range(maxexp[i]):
            powers.append(powers[-1] * v)
        table.append(powers)
    return table


def eval_terms(a, point):
    """Exact evaluation at a tuple of Fractions; returns (re, im)."""
    if not a:
        return (_ZERO, _ZERO)
    table = _power_table(a, point, _ZERO, Fraction(1))
    re = _ZERO
    im = _ZERO
    for exps, (cre, cim) in a.items():
        m = Fraction(1)
        for i, k in enumerate(exps):
            if k:
                m *= table[i][k]
        re += cre * m
        im += cim * m
    return (re, im)


def eval_terms_float(a, point):
    """Double-precision evaluation at a tuple of floats; returns complex."""
    if not a:
        return complex(0.0)
    table = _power_table(a, point, 0.0, 1.0)
    acc = complex(0.0)
    for exps, (cre, cim) in a.items():
        m = 1.0
        for i, k in enumerate(exps):
            if k:
                m *= table[i][k]
        acc += complex(cre, cim) * m
    return acc
