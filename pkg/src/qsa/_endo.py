"""Sink mutation via endomorphisms of a two-term tilting complex.

At a sink x the complex T is the direct sum of the stalks P_u (u != x)
and R_x = [P_x in degree -1 mapped into the sum of P_{s(a)} over the
arrows a into x].  Morphism spaces between the summands are computed as
chain maps modulo homotopy in exact arithmetic, the radical of the
resulting endomorphism algebra is split off with the trace form, and a
quiver presentation is read back off arrow representatives.  The final
dimension count is compared against the abstract endomorphism algebra;
a mismatch is reported rather than papered over.
"""

from ._linalg import ZERO, ONE, rref, reduce_vec, nullspace
from ._algebra import TruncatedAlgebra
from .presentation import (
    QsaError, Arrow, Quiver, AlgebraPresentation, natural_key,
)


# --- chain-map hom spaces -----------------------------------------------------


class _HomSpace:
    """Hom(O_v, O_u) for two summands, as coordinates modulo homotopy."""

    def __init__(self, engine, u, v):
        self.engine = engine
        self.u = u
        self.v = v
        alg = engine.alg
        self.neg = [(d_u, d_v) for d_u in engine.degneg(u)
                    for d_v in engine.degneg(v)]
        self.pos = [(z_u, z_v) for z_u in engine.degzero(u)
                    for z_v in engine.degzero(v)]
        self.blocks = [("neg",) + b for b in self.neg] + \
                      [("pos",) + b for b in self.pos]
        self.offsets = []
        total = 0
        for _, bu, bv in self.blocks:
            self.offsets.append(total)
            total += alg.dim_block(bu, bv)
        self.ambient_dim = total
        self._solve()

    # ambient <-> per-block full vectors

    def split(self, flat):
        alg = self.engine.alg
        out = []
        for (kind, bu, bv), off in zip(self.blocks, self.offsets):
            free = alg.free_positions(bu, bv)
            full = alg.zero(bu, bv)
            for i, p in enumerate(free):
                full[p] = flat[off + i]
            out.append(full)
        return out

    def join(self, fulls):
        alg = self.engine.alg
        flat = [ZERO] * self.ambient_dim
        for (kind, bu, bv), off, full in zip(self.blocks, self.offsets, fulls):
            for i, p in enumerate(alg.free_positions(bu, bv)):
                flat[off + i] = full[p]
        return flat

    def block_index(self, kind, bu_i, bv_j):
        nneg = len(self.neg)
        if kind == "neg":
            return 0
        return nneg + bu_i * len(self.engine.degzero(self.v)) + bv_j

    def _solve(self):
        eng = self.engine
        alg = eng.alg
        u, v = self.u, self.v
        zu, zv = eng.degzero(u), eng.degzero(v)
        has_du = bool(eng.degneg(u))
        has_dv = bool(eng.degneg(v))

        # chain condition: for each degree-0 summand i of O_u, the two
        # routes from the degree -1 part of O_v into it must agree
        rows = []
        if has_dv:
            for k in range(self.ambient_dim):
                unit = [ZERO] * self.ambient_dim
                unit[k] = ONE
                fulls = self.split(unit)
                for i in range(len(zu)):
                    acc = alg.zero(zu[i], eng.x)
                    for j in range(len(zv)):
                        blk = self.block_index("pos", i, j)
                        comp = alg.mult(zu[i], zv[j], eng.x,
                                        fulls[blk], eng.diff[j])
                        acc = [a + b for a, b in zip(acc, comp)]
                    if has_du:
                        comp = alg.mult(zu[i], eng.x, eng.x,
                                        eng.diff[i], fulls[0])
                        acc = [a - b for a, b in zip(acc, comp)]
                    rows.append((i, acc, k))
        mat = []
        if rows:
            per_eq = {}
            for i, acc, k in rows:
                per_eq.setdefault(i, {})[k] = acc
            for i, cols in per_eq.items():
                ncoords = len(cols[0])
                for r in range(ncoords):
                    mat.append([cols[k][r] for k in range(self.ambient_dim)])
        if mat:
            sol = nullspace(mat)
        else:
            sol = []
            for k in range(self.ambient_dim):
                unit = [ZERO] * self.ambient_dim
                unit[k] = ONE
                sol.append(unit)

        # homotopies: maps from the degree-0 part of O_v into the
        # degree -1 part of O_u
        images = []
        if has_du:
            for j in range(len(zv)):
                for hvec in alg.basis_vectors(eng.x, zv[j]):
                    fulls = [alg.zero(bu, bv) for _, bu, bv in self.blocks]
                    if has_dv:
                        contrib = alg.mult(eng.x, zv[j], eng.x,
                                           hvec, eng.diff[j])
                        fulls[0] = [a + b for a, b
                                    in zip(fulls[0], contrib)]
                    for i in range(len(zu)):
                        blk = self.block_index("pos", i, j)
                        contrib = alg.mult(zu[i], eng.x, zv[j],
                                           eng.diff[i], hvec)
                        fulls[blk] = [a + b for a, b
                                      in zip(fulls[blk], contrib)]
                    images.append(self.join(fulls))
        self.hrows, self.hpivots = rref(images) if images else ([], [])

        reduced = []
        for s in sol:
            r = reduce_vec(list(s), self.hrows, self.hpivots)
            if any(r):
                reduced.append(r)
        self.qrows, self.qpivots = rref(reduced) if reduced else ([], [])
        self.dim = len(self.qrows)

    def nf(self, ambient):
        """Coordinates of an ambient vector in the chosen basis."""
        r = reduce_vec(list(ambient), self.hrows, self.hpivots)
        coords = [r[p] for p in self.qpivots]
        for c, row in zip(coords, self.qrows):
            if c:
                r = [a - c * b for a, b in zip(r, row)]
        if any(r):
            raise QsaError("internal error: morphism outside the hom space")
        return coords

    def rep(self, coords):
        amb = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.qrows):
            if c:
                amb = [a + c * b for a, b in zip(amb, row)]
        return amb


class _Engine:
    """All hom spaces and compositions for the mutated tilting complex."""

    def __init__(self, a, x):
        self.pres = a
        self.alg = TruncatedAlgebra(a)
        q = a.quiver
        self.x = x
        self.ins = list(q.in_arrows(x))
        self.sources = [ar.source for ar in self.ins]
        # differential components: left multiplication by each in-arrow
        self.diff = [self.alg.path_vec(ar.source, x, (ar.name,))
                     for ar in self.ins]
        self.homs = {}
        for u in q.vertices:
            for v in q.vertices:
                self.homs[(u, v)] = _HomSpace(self, u, v)

    def degneg(self, u):
        return [self.x] if u == self.x else []

    def degzero(self, u):
        return self.sources if u == self.x else [u]

    def compose(self, u, v, w, amb_p, amb_q):
        """Ambient composite of p: O_v -> O_u with q: O_w -> O_v."""
        alg = self.alg
        hp, hq = self.homs[(u, v)], self.homs[(v, w)]
        hr = self.homs[(u, w)]
        fp, fq = hp.split(amb_p), hq.split(amb_q)
        fulls = [alg.zero(bu, bv) for _, bu, bv in hr.blocks]
        zu, zv, zw = self.degzero(u), self.degzero(v), self.degzero(w)
        if self.degneg(u) and self.degneg(v) and self.degneg(w):
            prod = alg.mult(self.x, self.x, self.x, fp[0], fq[0])
            fulls[0] = [a + b for a, b in zip(fulls[0], prod)]
        for i in range(len(zu)):
            for k in range(len(zw)):
                blk_r = hr.block_index("pos", i, k)
                acc = fulls[blk_r]
                for j in range(len(zv)):
                    blk_p = hp.block_index("pos", i, j)
                    blk_q = hq.block_index("pos", j, k)
                    prod = alg.mult(zu[i], zv[j], zw[k], fp[blk_p], fq[blk_q])
                    acc = [a + b for a, b in zip(acc, prod)]
                fulls[blk_r] = acc
        return hr.join(fulls)

    def identity(self, u):
        alg = self.alg
        h = self.homs[(u, u)]
        fulls = [alg.zero(bu, bv) for _, bu, bv in h.blocks]
        if u == self.x:
            fulls[0] = alg.unit(self.x)
            for i, s in enumerate(self.sources):
                blk = h.block_index("pos", i, i)
                fulls[blk] = [a + b
                              for a, b in zip(fulls[blk], alg.unit(s))]
        else:
            fulls[0] = alg.unit(u)
        return h.join(fulls)


# --- presentation extraction ----------------------------------------------


def _local_radical(engine, u):
    """Radical of End(O_u) via the trace form of left multiplication."""
    h = engine.homs[(u, u)]
    n = h.dim
    reps = [h.rep([ONE if i == t else ZERO for i in range(n)])
            for t in range(n)]
    table = [[h.nf(engine.compose(u, u, u, reps[i], reps[j]))
              for j in range(n)] for i in range(n)]
    tau = [sum(table[t][k][k] for k in range(n)) for t in range(n)]
    gram = [[sum(table[i][j][t] * tau[t] for t in range(n))
             for j in range(n)] for i in range(n)]
    rad = nullspace(gram) if n else []
    if n - len(rad) != 1:
        raise QsaError(
            f"endomorphism ring at {u!r} does not have scalar quotient; "
            "the summand is not indecomposable over this field")
    return rad, table


def mutate_minus(a, x):
    """Mutate the presentation at the sink x.

    Builds the two-term complex at x, computes all morphism spaces of
    the tilt, and reads a quiver with relations (of length two or
    three) off its radical filtration.
    """
    q = a.quiver
    if not q.has_vertex(x):
        raise QsaError(f"unknown vertex {x!r}")
    if q.out_arrows(x):
        raise QsaError(f"minus mutation needs a sink, {x!r} has out-arrows")
    if not q.in_arrows(x):
        raise QsaError(f"minus mutation needs at least one arrow into {x!r}")

    eng = _Engine(a, x)
    vs = q.vertices

    # radical: everything between distinct summands, trace-form radical
    # on the endomorphism rings
    rad = {}
    for u in vs:
        for v in vs:
            h = eng.homs[(u, v)]
            if u != v:
                rad[(u, v)] = [[ONE if i == t else ZERO
                                for i in range(h.dim)]
                               for t in range(h.dim)]
            else:
                rad[(u, v)] = _local_radical(eng, u)[0]

    rad_reps = {
        key: [eng.homs[key].rep(c) for c in coords]
        for key, coords in rad.items()
    }

    # radical squared, blockwise
    rad2 = {}
    for u in vs:
        for v in vs:
            rows = []
            for k in vs:
                for p in rad_reps[(u, k)]:
                    for w in rad_reps[(k, v)]:
                        comp = eng.homs[(u, v)].nf(eng.compose(u, k, v, p, w))
                        if any(comp):
                            rows.append(comp)
            rad2[(u, v)] = rref(rows) if rows else ([], [])

    # arrows: a complement of rad^2 inside rad
    arrows = []
    arrow_reps = {}
    for u in vs:
        for v in vs:
            rrows, rpiv = rad2[(u, v)]
            kept = []
            for coords in rad[(u, v)]:
                red = reduce_vec(list(coords), rrows, rpiv)
                if any(red):
                    kept.append(red)
            basis, _ = rref(kept)
            base = f"{u}~{v}"
            for idx, coords in enumerate(basis):
                name = base if len(basis) == 1 else f"{base}.{idx + 1}"
                arrows.append(Arrow(name, u, v))
                arrow_reps[name] = eng.homs[(u, v)].rep(coords)

    new_q = Quiver(a.name, vs, arrows)

    # relations: kernels of path evaluation in lengths two and three
    def eval_path(path):
        u = new_q.arrow(path[0]).source
        amb = arrow_reps[path[0]]
        cur = new_q.arrow(path[0]).target
        for nm in path[1:]:
            ar = new_q.arrow(nm)
            amb = eng.compose(u, cur, ar.target, amb, arrow_reps[nm])
            cur = ar.target
        return eng.homs[(u, cur)].nf(amb)

    def paths_between(u, v, length):
        out = []
        stack = [(u, ())]
        for _ in range(length):
            nxt = []
            for cur, path in stack:
                for ar in new_q.out_arrows(cur):
                    nxt.append((ar.target, path + (ar.name,)))
            stack = nxt
        return [p for cur, p in stack if cur == v]

    relations = []
    rel2 = {}
    for u in vs:
        for v in vs:
            paths = paths_between(u, v, 2)
            if not paths:
                rel2[(u, v)] = ([], paths)
                continue
            cols = [eval_path(p) for p in paths]
            ncoords = eng.homs[(u, v)].dim
            mat = [[cols[j][r] for j in range(len(paths))]
                   for r in range(ncoords)]
            kernel = nullspace(mat) if mat else [
                [ONE if i == t else ZERO for i in range(len(paths))]
                for t in range(len(paths))]
            rel2[(u, v)] = (kernel, paths)
            for lam in kernel:
                combo = [(c, list(p)) for c, p in zip(lam, paths) if c]
                relations.append(combo)

    for u in vs:
        for v in vs:
            paths3 = paths_between(u, v, 3)
            if not paths3:
                continue
            index3 = {p: i for i, p in enumerate(paths3)}
            shifts = []
            for k in vs:
                kern, paths2 = rel2[(u, k)]
                for lam in kern:
                    for ar in new_q.out_arrows(k):
                        if ar.target != v:
                            continue
                        row = [ZERO] * len(paths3)
                        for c, p in zip(lam, paths2):
                            row[index3[p + (ar.name,)]] += c
                        shifts.append(row)
                kern, paths2 = rel2[(k, v)]
                for lam in kern:
                    for ar in new_q.in_arrows(k):
                        if ar.source != u:
                            continue
                        row = [ZERO] * len(paths3)
                        for c, p in zip(lam, paths2):
                            row[index3[(ar.name,) + p]] += c
                        shifts.append(row)
            srows, spiv = rref(shifts) if shifts else ([], [])
            cols = [eval_path(p) for p in paths3]
            ncoords = eng.homs[(u, v)].dim
            mat = [[cols[j][r] for j in range(len(paths3))]
                   for r in range(ncoords)]
            kernel = nullspace(mat) if mat else [
                [ONE if i == t else ZERO for i in range(len(paths3))]
                for t in range(len(paths3))]
            for lam in kernel:
                red = reduce_vec(list(lam), srows, spiv)
                if any(red):
                    combo = [(c, list(p))
                             for c, p in zip(red, paths3) if c]
                    relations.append(combo)
                    srows, spiv = rref(srows + [red])

    result = AlgebraPresentation(new_q, relations)
    expected = sum(eng.homs[(u, v)].dim for u in vs for v in vs)
    found = TruncatedAlgebra(result).dimension()
    if found != expected:
        raise QsaError(
            f"relation search exceeds length bound: presentation has "
            f"dimension {found}, endomorphism algebra {expected}")
    return result
