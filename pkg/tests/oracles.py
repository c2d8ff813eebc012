"""Independent oracles and input generators for the test suite.

Everything here recomputes expected values by a different route than the
library: Ext groups between simples come from relation chains, sign tests
come from sympy's exact rational arithmetic, and the tree/multigraph
generators are plain combinatorics.
"""

from fractions import Fraction

import sympy

from qsa.presentation import Arrow, Quiver, AlgebraPresentation, natural_key
from qsa.classify import special_vertices


# --- Ext oracle for acyclic quadratic monomial presentations -----------------


def chain_chi(a):
    """Alternating Ext dimension sums between simples, by chain counting.

    For a quadratic monomial presentation the minimal projective resolution
    of the simple at i is indexed by paths a1..ak from i whose consecutive
    products all lie in the ideal, so dim Ext^k(S_i, S_j) counts those
    chains ending at j.  Returns (vertex order, matrix of column sums).
    """
    q = a.quiver
    dead = {r.terms[0][1] for r in a.relations}
    verts = list(q.vertices)
    idx = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    chi = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        chi[k][k] = Fraction(1)

    sign = -1
    frontier = {(ar.name,): (ar.source, ar.target) for ar in q.arrows}
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > 2 * (n + len(q.arrows)) + 2:
            raise AssertionError("chain extension did not terminate")
        for names, (s, t) in frontier.items():
            chi[idx[s]][idx[t]] += sign
        grown = {}
        for names, (s, t) in frontier.items():
            last = names[-1]
            for ar in q.out_arrows(t):
                if (last, ar.name) in dead:
                    grown[names + (ar.name,)] = (s, ar.target)
        frontier = grown
        sign = -sign
    return verts, chi


def chi_form_value(a, order, x):
    """Quadratic form value at x from the Ext oracle, x ordered by `order`."""
    verts, chi = chain_chi(a)
    pos = {v: k for k, v in enumerate(verts)}
    total = Fraction(0)
    for i, u in enumerate(order):
        for j, w in enumerate(order):
            total += Fraction(x[i]) * Fraction(x[j]) * chi[pos[u]][pos[w]]
    return total


# --- exact sign tests via sympy -----------------------------------------------


def sympy_matrix(rows):
    return sympy.Matrix([
        [sympy.Rational(x.numerator, x.denominator) for x in row]
        for row in rows
    ])


def sympy_psd(rows):
    """(positive semidefinite, positive definite) for a rational symmetric matrix."""
    m = sympy_matrix(rows)
    pd = bool(m.is_positive_definite)
    psd = pd or bool(m.is_positive_semidefinite)
    return psd, pd


def tits_gram(vertices, edges):
    """Gram matrix of the graph form: 1 on the diagonal, -1/2 per edge side,
    loops subtract a full unit from their diagonal entry."""
    idx = {v: k for k, v in enumerate(vertices)}
    n = len(vertices)
    g = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        g[k][k] = Fraction(1)
    for u, v in edges:
        i, j = idx[u], idx[v]
        if i == j:
            g[i][i] -= 1
        else:
            g[i][j] -= Fraction(1, 2)
            g[j][i] -= Fraction(1, 2)
    return g


def sympy_graph_kind(vertices, edges):
    psd, pd = sympy_psd(tits_gram(vertices, edges))
    if pd:
        return "Dynkin"
    if psd:
        return "Euclidean"
    return "Other"


# --- tree and multigraph generators --------------------------------------------

TREE_SHAPES = [
    [],
    [(0, 1)],
    [(0, 1), (1, 2)],
    [(0, 1), (1, 2), (2, 3)],
    [(0, 1), (0, 2), (0, 3)],
    [(0, 1), (1, 2), (2, 3), (3, 4)],
    [(0, 1), (0, 2), (0, 3), (3, 4)],
    [(0, 1), (0, 2), (0, 3), (0, 4)],
]


def oriented_trees():
    """Every unlabeled tree on at most 5 vertices, every arrow orientation."""
    out = []
    for edges in TREE_SHAPES:
        n = max((max(e) for e in edges), default=0) + 1
        verts = [str(i + 1) for i in range(n)]
        for mask in range(1 << len(edges)):
            arrows = []
            for k, (u, v) in enumerate(edges):
                s, t = ((u, v), (v, u))[(mask >> k) & 1]
                arrows.append(Arrow(f"e{k + 1}", verts[s], verts[t]))
            out.append(Quiver(f"tree{len(out)}", verts, arrows))
    return out


def quadratic_ideals(q, max_relations=2):
    """All sets of at most max_relations composable arrow pairs of q."""
    pairs = [(a.name, b.name) for a in q.arrows for b in q.arrows
             if a.target == b.source]
    yield ()
    for i, p in enumerate(pairs):
        yield (p,)
        if max_relations >= 2:
            for r in pairs[i + 1:]:
                yield (p, r)


def tree_presentations():
    """Every monomial tree presentation: <= 5 vertices, <= 2 quadratic relations."""
    for q in oriented_trees():
        for ideal in quadratic_ideals(q):
            rels = [[(1, list(p))] for p in ideal]
            yield AlgebraPresentation(q, rels)


def random_multigraph(rng, max_vertices=9, max_edges=10):
    """A connected multigraph: random attachment tree plus extra edges,
    parallel edges and the occasional loop allowed."""
    n = rng.randint(1, max_vertices)
    verts = [str(i + 1) for i in range(n)]
    edges = []
    for k in range(1, n):
        edges.append((verts[rng.randrange(k)], verts[k]))
    room = max(0, max_edges - len(edges))
    for _ in range(rng.randint(0, rng.choice((0, 1, 2, room)))):
        u = verts[rng.randrange(n)]
        if rng.random() < 0.08:
            edges.append((u, u))
        else:
            edges.append((u, verts[rng.randrange(n)]))
    return verts, edges


# --- presentation rebuilding ----------------------------------------------------


def relabel(a, vmap, amap=None, name=None):
    """The same presentation with vertices (and optionally arrows) renamed."""
    q = a.quiver
    amap = amap or {ar.name: ar.name for ar in q.arrows}
    quiver = Quiver(name or q.name,
                    [vmap[v] for v in q.vertices],
                    [Arrow(amap[ar.name], vmap[ar.source], vmap[ar.target])
                     for ar in q.arrows])
    rels = [[(c, [amap[x] for x in path]) for c, path in r.terms]
            for r in a.relations]
    return AlgebraPresentation(quiver, rels)


# --- blow-up / mutation commutation cases ----------------------------------------

_COMMUTE_BASES = [
    """quiver chain4
vertices: 1 2 3 4
arrow a: 1 -> 2
arrow b: 2 -> 3
arrow c: 3 -> 4
""",
    """quiver chain4r
vertices: 1 2 3 4
arrow a: 1 -> 2
arrow b: 2 -> 3
arrow c: 3 -> 4
relations:
b c
""",
    """quiver outstar
vertices: c x y
arrow p: c -> x
arrow q: c -> y
""",
    """quiver instar
vertices: c x y
arrow p: x -> c
arrow q: y -> c
""",
    """quiver join
vertices: 1 2 3 4
arrow a: 1 -> 3
arrow b: 2 -> 3
arrow c: 3 -> 4
relations:
a c
b c
""",
    """quiver chain5
vertices: 1 2 3 4 5
arrow a: 1 -> 2
arrow b: 2 -> 3
arrow c: 3 -> 4
arrow d: 4 -> 5
relations:
b c
""",
    """quiver fork
vertices: 1 2 3 4
arrow a: 1 -> 2
arrow b: 2 -> 3
arrow c: 2 -> 4
""",
]


def _subsets(pool, max_size=2):
    pool = sorted(pool, key=natural_key)
    for i, v in enumerate(pool):
        yield (v,)
        if max_size >= 2:
            for w in pool[i + 1:]:
                yield (v, w)


def commuting_mutation_cases(extra_bases=()):
    """(presentation, blown vertices, mutation vertex, sign) quadruples.

    The side condition for the commutation law: the mutation vertex is a
    sink (sign minus) or source (plus) outside the blown set, and no blown
    vertex sends an arrow into a minus vertex or receives one from a plus
    vertex.  Mutations that leave the monomial quadratic world are skipped,
    since blowing up the mutated presentation is then out of scope.
    """
    from qsa.presentation import parse_presentation
    from qsa.transform import mutate_at
    bases = [parse_presentation(t) for t in _COMMUTE_BASES]
    bases.extend(extra_bases)
    cases = []
    for a in bases:
        q = a.quiver
        sp = set(special_vertices(a).special)
        for x in q.vertices:
            ins, outs = q.in_arrows(x), q.out_arrows(x)
            if ins and not outs:
                sign, banned = "minus", {ar.source for ar in ins}
            elif outs and not ins:
                sign, banned = "plus", {ar.target for ar in outs}
            else:
                continue
            m = mutate_at(a, x, sign)
            if not (m.is_monomial and m.is_quadratic):
                continue
            for blown in _subsets(sp - {x} - banned):
                cases.append((a, blown, x, sign))
    return cases
