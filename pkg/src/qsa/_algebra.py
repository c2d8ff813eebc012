"""Exact arithmetic in a finite-dimensional graded quotient of a path algebra.

Elements live in blocks e_u A e_v, one block per ordered vertex pair,
coordinatized by the paths from u to v that avoid every monomial
relation.  Non-monomial relations are handled linearly: the degree-d
component of the ideal inside a block is spanned by the products
(left path) * (relation) * (right path), and vectors are kept reduced
against an echelon basis of those spans.  This only works when every
relation is length-homogeneous and the algebra is certified
finite-dimensional; the constructor refuses anything else.
"""

from fractions import Fraction

from ._linalg import ZERO, ONE, fr, rref, reduce_vec
from .presentation import QsaError, validate


def _contains_factor(path, monomials):
    for m in monomials:
        k = len(m)
        if k <= len(path):
            for i in range(len(path) - k + 1):
                if path[i:i + k] == m:
                    return True
    return False


class TruncatedAlgebra:
    """Basis, normal forms and products for a certified quotient algebra."""

    def __init__(self, a):
        rep = validate(a)
        if not rep.certified:
            raise QsaError(
                "algebra could not be certified finite-dimensional: "
                + "; ".join(rep.problems))
        if not rep.admissible:
            raise QsaError("relation ideal is not admissible")
        self.presentation = a
        self.quiver = a.quiver
        self.bound = rep.nilpotency_bound
        self._build()

    # --- construction ---------------------------------------------------

    def _build(self):
        a = self.presentation
        q = self.quiver
        monomials = a.monomials
        m = self.bound

        # pruned paths, grouped by (source, target), ordered by degree
        per_block = {(u, v): [] for u in q.vertices for v in q.vertices}
        for v in q.vertices:
            per_block[(v, v)].append(())
        # breadth-first extension by out-arrows, dropping monomial factors
        level = [(v, v, ()) for v in q.vertices]
        for _ in range(1, m):
            nxt = []
            for src, tgt, path in level:
                for ar in q.out_arrows(tgt):
                    new = path + (ar.name,)
                    if _contains_factor(new, monomials):
                        continue
                    per_block[(src, ar.target)].append(new)
                    nxt.append((src, ar.target, new))
            if not nxt:
                break
            level = nxt

        self._paths = {}
        self._index = {}
        for key, paths in per_block.items():
            paths.sort(key=lambda p: (len(p), p))
            self._paths[key] = tuple(paths)
            self._index[key] = {p: i for i, p in enumerate(paths)}

        # echelon bases of the ideal inside each block
        combos = [r for r in a.relations if not r.is_monomial]
        self._rows = {}
        self._pivots = {}
        for (u, v), paths in self._paths.items():
            rows = []
            n = len(paths)
            if n and combos:
                for rel in combos:
                    rs, rt = rel.source, rel.target
                    rlen = len(rel.terms[0][1])
                    for left in self._paths.get((u, rs), ()):
                        for right in self._paths.get((rt, v), ()):
                            if len(left) + rlen + len(right) >= self.bound:
                                continue
                            row = [ZERO] * n
                            hit = False
                            for coef, term in rel.terms:
                                full = left + tuple(term) + right
                                i = self._index[(u, v)].get(full)
                                if i is not None:
                                    row[i] += fr(coef)
                                    hit = True
                            if hit and any(row):
                                rows.append(row)
            basis, pivots = rref(rows) if rows else ([], [])
            self._rows[(u, v)] = basis
            self._pivots[(u, v)] = pivots

        self._free = {}
        for key, paths in self._paths.items():
            piv = set(self._pivots[key])
            self._free[key] = tuple(
                i for i in range(len(paths)) if i not in piv)

    # --- inspection -------------------------------------------------------

    def paths(self, u, v):
        return self._paths[(u, v)]

    def dim_block(self, u, v):
        return len(self._free[(u, v)])

    def dimension(self):
        return sum(len(f) for f in self._free.values())

    def free_positions(self, u, v):
        return self._free[(u, v)]

    # --- elements ---------------------------------------------------------

    def zero(self, u, v):
        return [ZERO] * len(self._paths[(u, v)])

    def normal(self, u, v, vec):
        return reduce_vec(list(vec), self._rows[(u, v)],
                          self._pivots[(u, v)])

    def unit(self, v):
        vec = self.zero(v, v)
        vec[self._index[(v, v)][()]] = ONE
        return self.normal(v, v, vec)

    def path_vec(self, u, v, arrows):
        """Normal form of a single path given as a tuple of arrow names."""
        arrows = tuple(arrows)
        vec = self.zero(u, v)
        i = self._index[(u, v)].get(arrows)
        if i is not None:
            vec[i] = ONE
        return self.normal(u, v, vec)

    def mult(self, u, v, w, p, q):
        """Product of p in e_u A e_v with q in e_v A e_w, reduced."""
        pu = self._paths[(u, v)]
        pw = self._paths[(v, w)]
        idx = self._index[(u, w)]
        out = self.zero(u, w)
        for i, ci in enumerate(p):
            if not ci:
                continue
            left = pu[i]
            for j, cj in enumerate(q):
                if not cj:
                    continue
                full = left + pw[j]
                k = idx.get(full)
                if k is not None:
                    out[k] += ci * cj
        return self.normal(u, w, out)

    def basis_vectors(self, u, v):
        """Normal-form unit vectors at the free positions."""
        out = []
        n = len(self._paths[(u, v)])
        for i in self._free[(u, v)]:
            vec = [ZERO] * n
            vec[i] = ONE
            out.append(vec)
        return out

    def coords(self, u, v, vec):
        """Coordinates of a normal-form vector at the free positions."""
        return [vec[i] for i in self._free[(u, v)]]
