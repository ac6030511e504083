# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernel for sparse polynomial term maps.

Same data layout and semantics as ``_poly_py``: dicts from exponent
tuples to (re, im) Fraction pairs, no zero coefficients stored.  The
coefficients stay arbitrary-precision Python Fractions; the speedup
comes from compiled dict/tuple traffic in the inner loops.
"""

from fractions import Fraction

cdef object _FRACTION = Fraction
cdef object _F0 = Fraction(0)
cdef object _F1 = Fraction(1)


cpdef dict add_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple exps, cur, val
    cdef object re, im
    for exps, val in b.items():
        cur = <tuple> out.get(exps)
        if cur is None:
            out[exps] = val
        else:
            re = cur[0] + val[0]
            im = cur[1] + val[1]
            if re or im:
                out[exps] = (re, im)
            else:
                del out[exps]
    return out


cpdef dict neg_terms(dict a):
    cdef dict out = {}
    cdef tuple exps, val
    for exps, val in a.items():
        out[exps] = (-val[0], -val[1])
    return out


cpdef dict scale_terms(dict a, object cre, object cim):
    cdef dict out = {}
    cdef tuple exps, val
    cdef object re, im, nre, nim
    if not cre and not cim:
        return out
    for exps, val in a.items():
        re = val[0]
        im = val[1]
        nre = re * cre - im * cim
        nim = re * cim + im * cre
        if nre or nim:
            out[exps] = (nre, nim)
    return out


cdef inline tuple _tuple_add(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list items = [0] * n
    for i in range(n):
        items[i] = <object> ea[i] + <object> eb[i]
    return tuple(items)


cpdef dict mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, key, va, vb, cur
    cdef object are, aim, bre, bim, re, im
    if len(a) > len(b):
        a, b = b, a
    for ea, va in a.items():
        are = va[0]
        aim = va[1]
        for eb, vb in b.items():
            bre = vb[0]
            bim = vb[1]
            re = are * bre - aim * bim
            im = are * bim + aim * bre
            if not re and not im:
                continue
            key = _tuple_add(ea, eb)
            cur = <tuple> out.get(key)
            if cur is None:
                out[key] = (re, im)
            else:
                re = re + cur[0]
                im = im + cur[1]
                if re or im:
                    out[key] = (re, im)
                else:
                    del out[key]
    return out


cpdef dict diff_terms(dict a, Py_ssize_t var):
    cdef dict out = {}
    cdef tuple exps, val, key, cur
    cdef object k, re, im
    for exps, val in a.items():
        k = exps[var]
        if not k:
            continue
        key = exps[:var] + (k - 1,) + exps[var + 1:]
        re = val[0] * k
        im = val[1] * k
        cur = <tuple> out.get(key)
        if cur is None:
            out[key] = (re, im)
        else:
            out[key] = (cur[0] + re, cur[1] + im)
    return out


cdef list _power_table(dict a, tuple point, object zero, object one):
    cdef Py_ssize_t nvars = len(point)
    cdef list maxexp = [0] * nvars
    cdef tuple exps
    cdef Py_ssize_t i, e
    for exps in a:
        for i in range(nvars):
            e = <Py_ssize_t> exps[i]
            if e > <Py_ssize_t> maxexp[i]:
                maxexp[i] = e
    cdef list table = []
    cdef list powers
    cdef object v
    for i in range(nvars):
        powers = [one]
        v = point[i]
        for e in range(<Py_ssize_t> maxexp[i]):
            powers.append(powers[len(powers) - 1] * v)
        table.append(powers)
    return table


cpdef tuple eval_terms(dict a, tuple point):
    """Exact evaluation at a tuple of Fractions; returns (re, im)."""
    if not a:
        return (_F0, _F0)
    cdef list table = _power_table(a, point, _F0, _F1)
    cdef object re = _F0
    cdef object im = _F0
    cdef object m
    cdef tuple exps, val
    cdef Py_ssize_t i, k
    for exps, val in a.items():
        m = _F1
        for i in range(len(exps)):
            k = <Py_ssize_t> exps[i]
            if k:
                m = m * (<list> table[i])[k]
        re = re + val[0] * m
        im = im + val[1] * m
    return (re, im)


cpdef object eval_terms_float(dict a, tuple point):
    """Double-precision evaluation at a tuple of floats; returns complex."""
    if not a:
        return complex(0.0)
    cdef list table = _power_table(a, point, 0.0, 1.0)
    cdef double complex acc = 0.0
    cdef double m
    cdef tuple exps, val
    cdef Py_ssize_t i, k
    for exps, val in a.items():
        m = 1.0
        for i in range(len(exps)):
            k = <Py_ssize_t> exps[i]
            if k:
                m *= <double> (<list> table[i])[k]
        acc = acc + (<double> val[0] + 1j * <double> val[1]) * m
    return acc
