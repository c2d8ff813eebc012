"""Cover balls, graph-shape recognition, and wildness witnesses.

The universal cover of a connected monomial presentation is a tree; this
module materializes bounded balls of it, classifies underlying graphs as
Dynkin / Euclidean / Other, and searches balls for a wildness certificate:
a vertex subset whose full subcategory is radical-square-zero over a graph
that is neither Dynkin nor Euclidean.  Two purely local wild configurations
are matched directly on the base presentation.
"""

import os
from fractions import Fraction
from itertools import combinations

from .presentation import (
    QsaError, Arrow, Quiver, AlgebraPresentation, natural_key,
    presentations_isomorphic, serialize_presentation, validate,
)
from ._linalg import psd_flags

__all__ = [
    "GraphType", "CoverBall", "WildWitness", "PatternReport",
    "graph_type", "truncated_cover", "find_wild_witness",
    "detect_local_wild_pattern",
    "DEFAULT_WITNESS_RADIUS", "DEFAULT_WITNESS_SIZE", "DEFAULT_WITNESS_BUDGET",
]

DEFAULT_WITNESS_RADIUS = 8
DEFAULT_WITNESS_SIZE = 10
DEFAULT_WITNESS_BUDGET = 400000


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise QsaError(f"environment variable {name} must be an integer, got {raw!r}") from None


# --- graph shape recognition --------------------------------------------------


class GraphType:
    """Shape of a connected multigraph: Dynkin, Euclidean, or Other."""

    def __init__(self, kind, family=None, index=None):
        self.kind = kind        # "Dynkin" | "Euclidean" | "Other"
        self.family = family    # "A" | "D" | "E" | None
        self.index = index      # diagram subscript, None for Other

    @property
    def label(self):
        if self.kind == "Dynkin":
            return f"{self.family}{self.index}"
        if self.kind == "Euclidean":
            return f"~{self.family}{self.index}"
        return "Other"

    def _key(self):
        return (self.kind, self.family, self.index)

    def __eq__(self, other):
        return isinstance(other, GraphType) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GraphType({self.label})"


def _arm_lengths(center, mult, deg, n):
    # walk away from the unique branch vertex until each arm ends in a leaf
    arms = []
    for j in range(n):
        if not mult[center][j]:
            continue
        length = 1
        prev, cur = center, j
        while deg[cur] == 2:
            nxt = next(k for k in range(n) if mult[cur][k] and k != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    return sorted(arms)


def _structural_shape(n, m, loops, mult, deg):
    if sum(loops):
        if n == 1 and m == 1:
            return GraphType("Euclidean", "A", 0)
        return GraphType("Other")
    if any(mult[i][j] >= 2 for i in range(n) for j in range(i + 1, n)):
        if n == 2 and m == 2:
            return GraphType("Euclidean", "A", 1)
        return GraphType("Other")
    if m >= n:
        if m == n and all(d == 2 for d in deg):
            return GraphType("Euclidean", "A", n - 1)
        return GraphType("Other")
    # connected with m == n - 1: a tree
    branch = [i for i in range(n) if deg[i] >= 3]
    if not branch:
        return GraphType("Dynkin", "A", n)
    if len(branch) == 1:
        c = branch[0]
        arms = _arm_lengths(c, mult, deg, n)
        if deg[c] == 3:
            if arms[0] == 1 and arms[1] == 1:
                return GraphType("Dynkin", "D", n)
            if arms == [1, 2, 2]:
                return GraphType("Dynkin", "E", 6)
            if arms == [1, 2, 3]:
                return GraphType("Dynkin", "E", 7)
            if arms == [1, 2, 4]:
                return GraphType("Dynkin", "E", 8)
            if arms == [2, 2, 2]:
                return GraphType("Euclidean", "E", 6)
            if arms == [1, 3, 3]:
                return GraphType("Euclidean", "E", 7)
            if arms == [1, 2, 5]:
                return GraphType("Euclidean", "E", 8)
            return GraphType("Other")
        if deg[c] == 4 and arms == [1, 1, 1, 1]:
            return GraphType("Euclidean", "D", 4)
        return GraphType("Other")
    if len(branch) == 2 and all(deg[i] == 3 for i in branch):
        u, w = branch
        leaves = [i for i in range(n) if deg[i] == 1]
        near_u = sum(1 for i in leaves if mult[u][i])
        near_w = sum(1 for i in leaves if mult[w][i])
        if len(leaves) == 4 and near_u == 2 and near_w == 2:
            return GraphType("Euclidean", "D", n - 1)
    return GraphType("Other")


def graph_type(vertices, edges):
    """Classify a connected multigraph; edges are unordered endpoint pairs.

    Loops repeat their vertex.  The structural verdict is cross-checked
    against the sign behaviour of the associated quadratic form (positive
    definite for Dynkin, semidefinite with radical for Euclidean, indefinite
    otherwise); a disagreement raises QsaError.
    """
    verts = list(dict.fromkeys(vertices))
    if not verts:
        raise QsaError("graph shape needs at least one vertex")
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    loops = [0] * n
    mult = [[0] * n for _ in range(n)]
    deg = [0] * n
    m = 0
    for e in edges:
        u, w = e
        if u not in idx or w not in idx:
            raise QsaError(f"edge {e!r} has an endpoint outside the vertex list")
        m += 1
        if u == w:
            loops[idx[u]] += 1
            deg[idx[u]] += 2
        else:
            mult[idx[u]][idx[w]] += 1
            mult[idx[w]][idx[u]] += 1
            deg[idx[u]] += 1
            deg[idx[w]] += 1
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and mult[i][j]:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        raise QsaError("graph shape recognition needs a connected graph")

    shape = _structural_shape(n, m, loops, mult, deg)

    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = Fraction(1 - loops[i])
        for j in range(n):
            if i != j and mult[i][j]:
                gram[i][j] = Fraction(-mult[i][j], 2)
    psd, pd = psd_flags(gram)
    expected = "Dynkin" if pd else ("Euclidean" if psd else "Other")
    if shape.kind != expected:
        raise QsaError(
            f"graph shape {shape.label} disagrees with the form sign test ({expected})")
    return shape


# --- cover balls ---------------------------------------------------------------


class CoverBall:
    """A radius-r ball of the universal cover around a basepoint.

    Cover vertices are reduced walks from the basepoint, named by their step
    sequence (a trailing ' marks a reversed step); cover arrows are named
    base_arrow@source_vertex.  The underlying graph is a tree, and the
    projection maps send the ball back onto the base presentation.
    """

    def __init__(self, base, basepoint, radius, cover, vertex_map, arrow_map, level):
        self.base = base
        self.basepoint = basepoint
        self.radius = radius
        self.cover = cover
        self.vertex_map = dict(vertex_map)   # cover vertex -> base vertex
        self.arrow_map = dict(arrow_map)     # cover arrow  -> base arrow
        self.level = dict(level)             # cover vertex -> walk length

    def interior_vertices(self):
        return tuple(v for v in self.cover.quiver.vertices
                     if self.level[v] < self.radius)

    def __repr__(self):
        return (f"CoverBall({self.base.name!r} at {self.basepoint!r}, "
                f"radius {self.radius}, {len(self.level)} vertices)")


def _claim(taken, name):
    while name in taken:
        name += "~"
    taken.add(name)
    return name


def truncated_cover(a, base, radius):
    """Materialize the radius-r ball of the universal cover at a basepoint."""
    if not isinstance(a, AlgebraPresentation):
        raise QsaError("truncated_cover needs an AlgebraPresentation")
    if not a.is_monomial:
        raise QsaError("covers are only built for monomial presentations")
    if radius < 0:
        raise QsaError("cover radius must be >= 0")
    q = a.quiver
    if not q.has_vertex(base):
        raise QsaError(f"unknown basepoint {base!r}")
    report = validate(a)
    if not report.connected:
        raise QsaError("cover construction needs a connected quiver")
    if not (report.certified and report.admissible):
        raise QsaError("cover construction needs a certified admissible ideal")

    taken_v, taken_a = set(), set()
    root = ()
    ids = {root: _claim(taken_v, base)}
    endpoint = {root: base}
    level = {ids[root]: 0}
    vertex_map = {ids[root]: base}
    arrows = []
    arrow_map = {}
    frontier = [root]
    for depth in range(radius):
        nxt = []
        for w in frontier:
            u = endpoint[w]
            for ar in q.out_arrows(u):
                if w and w[-1] == (ar.name, -1):
                    continue
                w2 = w + ((ar.name, 1),)
                vid = _claim(taken_v, ids[w] + "." + ar.name)
                ids[w2] = vid
                endpoint[w2] = ar.target
                level[vid] = depth + 1
                vertex_map[vid] = ar.target
                aname = _claim(taken_a, ar.name + "@" + ids[w])
                arrows.append(Arrow(aname, ids[w], vid))
                arrow_map[aname] = ar.name
                nxt.append(w2)
            for ar in q.in_arrows(u):
                if w and w[-1] == (ar.name, 1):
                    continue
                w2 = w + ((ar.name, -1),)
                vid = _claim(taken_v, ids[w] + "." + ar.name + "'")
                ids[w2] = vid
                endpoint[w2] = ar.source
                level[vid] = depth + 1
                vertex_map[vid] = ar.source
                aname = _claim(taken_a, ar.name + "@" + vid)
                arrows.append(Arrow(aname, vid, ids[w]))
                arrow_map[aname] = ar.name
                nxt.append(w2)
        frontier = nxt

    # lift every relation generator whose whole path fits inside the ball
    out_by = {(ar.source, arrow_map[ar.name]): ar for ar in arrows}
    relations = []
    for mono in sorted(a.monomials):
        for v0 in level:
            v = v0
            chain = []
            for name in mono:
                ar = out_by.get((v, name))
                if ar is None:
                    chain = None
                    break
                chain.append(ar.name)
                v = ar.target
            if chain is not None:
                relations.append([(1, chain)])

    cname = f"{q.name}@{base}.r{radius}"
    cover = AlgebraPresentation(Quiver(cname, list(level), arrows), relations)
    return CoverBall(a, base, radius, cover, vertex_map, arrow_map, level)


# --- wildness witness search ----------------------------------------------------


class WildWitness:
    """A wildness certificate extracted from a cover ball.

    The chosen ball vertices span a full subcategory whose nonzero morphisms
    are the recorded relation-free directed cover paths; every composable
    pair of those dies against a lifted relation, so the subcategory is
    radical-square-zero over a graph that is neither Dynkin nor Euclidean.
    """

    def __init__(self, ball, vertices, presentation, shape, pairs, note):
        self.ball = ball
        self.vertices = tuple(vertices)
        self.presentation = presentation
        self.shape = shape
        self.pairs = tuple(pairs)     # (from, to, cover arrow names) per arrow
        self.note = note

    def __repr__(self):
        return (f"WildWitness({len(self.vertices)} vertices, "
                f"shape {self.shape.label})")

    def to_payload(self):
        """Plain-data dict for JSON output."""
        return {
            "basepoint": self.ball.basepoint,
            "radius": self.ball.radius,
            "vertices": list(self.vertices),
            "shape": self.shape.label,
            "presentation": serialize_presentation(self.presentation),
            "paths": [[u, v, list(names)] for u, v, names in self.pairs],
            "note": self.note,
        }


class _Budget(Exception):
    pass


def find_wild_witness(a, radius=None, max_size=None, like=None):
    """Search cover balls for a wildness witness; None when none is found.

    Basepoints are tried in vertex order, ball vertices in name order (the
    names encode the walks, so this is a depth-first sweep of the tree), and
    subsets grown by rooted expansion, so the first hit is deterministic.
    A against-the-ideal certificate can be non-unique; passing a target
    presentation as `like` keeps the same enumeration but only accepts
    witnesses isomorphic to the target.  Absence within the bounds proves
    nothing; a returned witness is a complete certificate.
    QSA_WITNESS_RADIUS, QSA_WITNESS_SIZE and QSA_WITNESS_BUDGET override the
    defaults.
    """
    if radius is None:
        radius = _env_int("QSA_WITNESS_RADIUS", DEFAULT_WITNESS_RADIUS)
    if max_size is None:
        max_size = _env_int("QSA_WITNESS_SIZE", DEFAULT_WITNESS_SIZE)
    budget = _env_int("QSA_WITNESS_BUDGET", DEFAULT_WITNESS_BUDGET)
    if not a.is_monomial:
        raise QsaError("the wildness witness search needs a monomial presentation")
    if like is not None and not isinstance(like, AlgebraPresentation):
        raise QsaError("the witness target must be an AlgebraPresentation")
    if max_size < 2:
        return None
    for base in a.quiver.vertices:
        ball = truncated_cover(a, base, radius)
        try:
            found = _search_ball(ball, max_size, budget, like)
        except _Budget:
            found = None
        if found is not None:
            return found
    return None


def _survival(ball, budget):
    """All ordered pairs joined by a relation-free directed cover path.

    Returns (order, index, pairs) where pairs maps (i, j) to (interior mask,
    arrow name tuple).  Paths in a tree are geodesics, so each pair carries
    exactly one path and a path between ball vertices never leaves the ball.
    """
    cov = ball.cover
    q = cov.quiver
    order = sorted(q.vertices, key=natural_key)
    index = {v: i for i, v in enumerate(order)}
    gens = cov.monomials
    glens = sorted({len(g) for g in gens})

    def extendable(names):
        for k in glens:
            if k <= len(names) and names[-k:] in gens:
                return False
        return True

    pairs = {}
    steps = 0
    for u in order:
        stack = [(u, (), 0)]
        while stack:
            v, names, imask = stack.pop()
            for ar in q.out_arrows(v):
                names2 = names + (ar.name,)
                if not extendable(names2):
                    continue
                steps += 1
                if steps > budget:
                    raise _Budget()
                imask2 = imask | (1 << index[v] if v != u else 0)
                pairs[(index[u], index[ar.target])] = (imask2, names2)
                stack.append((ar.target, names2, imask2))
    return order, index, pairs, steps


def _assemble(ball, order, members, arcs, shape):
    taken = set()
    arrows = []
    realized = []
    for i, j, names in sorted(arcs, key=lambda t: (t[0], t[1])):
        label = _claim(taken, "*".join(ball.arrow_map[c] for c in names))
        arrows.append(Arrow(label, order[i], order[j]))
        realized.append((order[i], order[j], names))
    verts = [order[i] for i in sorted(members)]
    quiver = Quiver(f"{ball.base.quiver.name}.witness@{ball.basepoint}", verts, arrows)
    rels = [[(1, [p.name, r.name])]
            for p in arrows for r in arrows if p.target == r.source]
    pres = AlgebraPresentation(quiver, rels)
    note = (f"ball around {ball.basepoint!r} at radius {ball.radius}: "
            f"{len(verts)} vertices whose surviving directed paths avoid the "
            f"set in their interiors; every composite of two such paths dies "
            f"against a lifted relation, giving a radical-square-zero full "
            f"subcategory over a graph that is neither Dynkin nor Euclidean")
    return WildWitness(ball, verts, pres, shape, realized, note)


def _search_ball(ball, max_size, budget, like=None):
    order, _, pairs, used = _survival(ball, budget)
    n = len(order)
    adj = [0] * n
    for (i, j) in pairs:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    want = None if like is None else len(like.quiver.vertices)

    remaining = budget - used
    result = None

    def bits(mask):
        out = []
        while mask:
            b = mask & -mask
            out.append(b.bit_length() - 1)
            mask ^= b
        return out

    def inspect(mask, members):
        # valid <=> no surviving pair's geodesic interior meets the subset;
        # then the subset's full subcategory is radical-square-zero with one
        # arrow per surviving pair, and it is a witness when the underlying
        # graph is neither Dynkin nor Euclidean
        arcs = []
        for i in members:
            for j in members:
                if i == j:
                    continue
                hit = pairs.get((i, j))
                if hit is None:
                    continue
                if hit[0] & mask:
                    return None, False
                arcs.append((i, j, hit[1]))
        if len(members) < 2:
            return None, True
        if want is not None and len(members) != want:
            return None, True
        shape = graph_type([order[i] for i in members],
                           [(order[i], order[j]) for i, j, _ in arcs])
        if shape.kind != "Other":
            return None, True
        wit = _assemble(ball, order, members, arcs, shape)
        if like is not None and presentations_isomorphic(wit.presentation, like) is None:
            return None, True   # a certificate, but not the requested shape
        return wit, True

    def enum(mask, cand, ban, size):
        nonlocal remaining, result
        while cand:
            if result is not None:
                return
            b = cand & -cand
            cand ^= b
            i = b.bit_length() - 1
            remaining -= 1
            if remaining <= 0:
                raise _Budget()
            nm = mask | b
            wit, valid = inspect(nm, bits(nm))
            if wit is not None:
                result = wit
                return
            if valid and size + 1 < max_size:
                grow = adj[i] & ~nm & ~ban & ~cand & allowed
                enum(nm, cand | grow, ban, size + 1)
            ban |= b

    for root in range(n):
        if result is not None:
            break
        allowed = ~((1 << (root + 1)) - 1)   # strictly above the root index
        _, valid = inspect(1 << root, [root])
        if not valid:
            continue
        enum(1 << root, adj[root] & allowed, 0, 1)

    return result


# --- local wild patterns ---------------------------------------------------------


class PatternReport:
    """A matched local configuration that forces derived wildness."""

    def __init__(self, kind, vertices, arrows, note):
        self.kind = kind            # "two-cycle" | "fork-tail"
        self.vertices = tuple(vertices)
        self.arrows = dict(arrows)
        self.note = note

    def __repr__(self):
        return f"PatternReport({self.kind} at {self.vertices})"

    def to_payload(self):
        """Plain-data dict for JSON output."""
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "arrows": {k: list(v) if isinstance(v, tuple) else v
                       for k, v in self.arrows.items()},
            "note": self.note,
        }


def _two_cycle_pattern(a):
    q = a.quiver
    mono = a.monomials
    for alpha in q.arrows:
        for gamma in q.arrows:
            if gamma.source != alpha.target or gamma.target != alpha.source:
                continue
            if (alpha.name, gamma.name) not in mono:
                continue
            if (gamma.name, alpha.name) not in mono:
                continue
            for beta in q.arrows:
                if beta.name == alpha.name:
                    continue
                if beta.target == alpha.target and (beta.name, gamma.name) in mono:
                    return PatternReport(
                        "two-cycle",
                        (alpha.source, alpha.target, beta.source),
                        {"forward": alpha.name, "backward": gamma.name,
                         "extra": beta.name, "side": "in"},
                        f"two-cycle {alpha.name}/{gamma.name} with both "
                        f"composites dead and a third arrow {beta.name} into "
                        f"{alpha.target!r} whose composite with {gamma.name} dies")
                if beta.source == alpha.source and (gamma.name, beta.name) in mono:
                    return PatternReport(
                        "two-cycle",
                        (alpha.source, alpha.target, beta.target),
                        {"forward": alpha.name, "backward": gamma.name,
                         "extra": beta.name, "side": "out"},
                        f"two-cycle {alpha.name}/{gamma.name} with both "
                        f"composites dead and a third arrow {beta.name} out of "
                        f"{alpha.source!r} whose composite after {gamma.name} dies")
    return None


def _grow_tail(q, mono, fork_arrows, fork_verts, start, length):
    # depth-first search for an injective undirected walk with every
    # composable pair among the patch arrows dead
    def dead_pairs(arrs):
        for p in arrs:
            for r in arrs:
                if p.target == r.source and (p.name, r.name) not in mono:
                    return False
        return True

    best = None

    def dfs(v, used, tail):
        nonlocal best
        if best is not None:
            return
        if len(tail) == length:
            if dead_pairs(fork_arrows + [t[0] for t in tail]):
                best = tuple(tail)
            return
        for ar in q.out_arrows(v):
            if ar.target not in used:
                dfs(ar.target, used | {ar.target}, tail + [(ar, 1)])
        for ar in q.in_arrows(v):
            if ar.source not in used:
                dfs(ar.source, used | {ar.source}, tail + [(ar, -1)])

    dfs(start, set(fork_verts), [])
    return best


def _fork_tail_pattern(a):
    q = a.quiver
    mono = a.monomials
    for x in q.vertices:
        ins = q.in_arrows(x)
        outs = q.out_arrows(x)
        if len(ins) < 2 or len(outs) < 2:
            continue
        for alpha, beta in combinations(ins, 2):
            for gamma, delta in combinations(outs, 2):
                needed = [(alpha.name, gamma.name), (alpha.name, delta.name),
                          (beta.name, gamma.name), (beta.name, delta.name)]
                if not all(p in mono for p in needed):
                    continue
                fork = [alpha.source, beta.source, x, gamma.target, delta.target]
                if len(set(fork)) != 5:
                    continue
                fork_arrows = [alpha, beta, gamma, delta]
                for outer in (alpha.source, beta.source, gamma.target, delta.target):
                    tail = _grow_tail(q, mono, fork_arrows, set(fork), outer, 5)
                    if tail is None:
                        continue
                    walk = [outer]
                    for ar, sgn in tail:
                        walk.append(ar.target if sgn > 0 else ar.source)
                    return PatternReport(
                        "fork-tail",
                        tuple(fork) + tuple(walk[1:]),
                        {"fork_in": (alpha.name, beta.name),
                         "fork_out": (gamma.name, delta.name),
                         "attach": outer,
                         "tail": tuple((ar.name, sgn) for ar, sgn in tail)},
                        f"fork at {x!r} with all four composites dead and an "
                        f"injective length-5 tail at {outer!r}; every "
                        f"composable pair among the nine patch arrows dies, "
                        f"so the patch lifts to a radical-square-zero tree "
                        f"subcategory of the cover")
    return None


def detect_local_wild_pattern(a):
    """Scan for the two local configurations that force derived wildness.

    Pattern "two-cycle": arrows f: u -> v and g: v -> u with fg and gf dead,
    plus a third arrow at u or v whose composite with g dies.  Pattern
    "fork-tail": a vertex with two in- and two out-arrows, all four
    composites dead, carrying an injective radical-square-zero tail of
    length 5 at one of its four outer vertices.  Returns the first match in
    deterministic order, or None.
    """
    if not a.is_monomial:
        raise QsaError("local wildness patterns are defined for monomial presentations")
    report = validate(a)
    if not (report.certified and report.admissible):
        raise QsaError("local wildness patterns need a certified admissible ideal")
    return _two_cycle_pattern(a) or _fork_tail_pattern(a)
