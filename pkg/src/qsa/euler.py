"""Homological bilinear form of an acyclic monomial presentation.

The Cartan matrix counts relation-free paths between vertices.  Its
inverse transpose gives the bilinear form on dimension vectors whose
value at (x, x) is the alternating sum of Hom and Ext dimensions.  For
acyclic monomial presentations that sum is finite, the matrix has
integer entries only after clearing the inverse, so entries are kept as
exact fractions throughout.
"""

from fractions import Fraction
from typing import NamedTuple

from ._linalg import (
    frac_matrix, fr, inverse, transpose, mat_vec, vec_dot,
    psd_flags, negative_vector,
)
from .presentation import QsaError, path_basis, _has_directed_cycle


# --- matrices ----------------------------------------------------------------


class CartanMatrix(NamedTuple):
    vertices: tuple           # row/column labels, in canonical order
    entries: tuple            # entries[i][j] = number of paths j -> i


class EulerData(NamedTuple):
    vertices: tuple
    entries: tuple            # rows of Fractions; the form is x^T E x

    def symmetric_part(self):
        n = len(self.vertices)
        e = self.entries
        half = Fraction(1, 2)
        return tuple(
            tuple((e[i][j] + e[j][i]) * half for j in range(n))
            for i in range(n)
        )


class NonnegativityReport(NamedTuple):
    nonnegative: bool
    positive_definite: bool
    witness: tuple            # integer vector with negative value, or ()
    value: object             # Fraction value at the witness, or None

    def __bool__(self):
        return self.nonnegative


# --- construction ------------------------------------------------------------


def cartan_matrix(a):
    """Count relation-free paths between all vertex pairs.

    Requires a monomial presentation on an acyclic quiver; those are the
    presentations whose path counts are finite and whose bilinear form
    is an invariant of the derived category.
    """
    if not a.is_monomial:
        raise QsaError("Cartan matrix requires a monomial presentation")
    if _has_directed_cycle(a.quiver):
        raise QsaError("Cartan matrix requires an acyclic quiver")
    vs = a.quiver.vertices
    entries = tuple(
        tuple(len(path_basis(a, vj, vi)) for vj in vs)
        for vi in vs
    )
    return CartanMatrix(vs, entries)


def euler_matrix(a):
    """Inverse transpose of the Cartan matrix, as exact fractions."""
    c = cartan_matrix(a)
    inv = inverse(frac_matrix(c.entries))
    if inv is None:
        raise QsaError("Cartan matrix is singular")
    rows = tuple(tuple(row) for row in transpose(inv))
    return EulerData(c.vertices, rows)


def euler_eval(e, x):
    """Value of the form at an integer (or rational) vector x."""
    if len(x) != len(e.vertices):
        raise QsaError(
            f"vector has {len(x)} entries, form has {len(e.vertices)}")
    vec = [fr(t) for t in x]
    return vec_dot(vec, mat_vec(e.entries, vec))


# --- nonnegativity -----------------------------------------------------------


def is_nonnegative_form(e):
    """Decide whether x^T E x >= 0 for all real x, exactly.

    The answer depends only on the symmetric part M of E.  M is positive
    semidefinite exactly when every coefficient of its characteristic
    polynomial has the alternating sign pattern; when that fails, a
    congruence elimination on M produces an explicit integer vector with
    negative value.
    """
    m = e.symmetric_part()
    psd, pd = psd_flags(m)
    if psd:
        return NonnegativityReport(True, pd, (), None)
    w = negative_vector(m)
    if w is None:
        raise QsaError("form is not semidefinite but no witness was found")
    val = euler_eval(e, w)
    if val >= 0:
        raise QsaError("internal error: witness value is not negative")
    return NonnegativityReport(False, False, tuple(w), val)
