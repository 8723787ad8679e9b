"""Shared test helpers: exact array builders and a sympy oracle."""

import numpy as np
import sympy
from gmpy2 import mpq
from hypothesis import strategies as st

from linrel.numkernel import as_exact
from linrel.scalars import GaussianRational, gauss


def E(rows):
    """Exact object array from nested ints/strings/complex-free values."""
    return as_exact(np.array(rows, dtype=object))


def to_sympy(M):
    def conv(z):
        if isinstance(z, GaussianRational):
            return sympy.Rational(int(z.re.numerator), int(z.re.denominator)) + sympy.I * sympy.Rational(
                int(z.im.numerator), int(z.im.denominator)
            )
        z = mpq(z)
        return sympy.Rational(int(z.numerator), int(z.denominator))

    return sympy.Matrix(M.shape[0], M.shape[1], [conv(z) for z in M.flat])


def gaussian_ints(bound=3, complex_=True):
    re = st.integers(-bound, bound)
    if not complex_:
        return re.map(mpq)
    return st.tuples(re, st.integers(-bound, bound)).map(lambda t: gauss(mpq(t[0]), mpq(t[1])))


@st.composite
def exact_matrices(draw, max_rows=5, max_cols=5, complex_=True, min_rows=1, min_cols=1):
    r = draw(st.integers(min_rows, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    entries = draw(st.lists(gaussian_ints(complex_=complex_), min_size=r * c, max_size=r * c))
    M = np.empty((r, c), dtype=object)
    M.flat[:] = entries
    return M
