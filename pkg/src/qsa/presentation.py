"""Bounded quiver presentations KQ/I and their basic combinatorics.

A presentation is a finite quiver plus a list of relations; every relation is
a linear combination of parallel paths of length >= 2 with rational
coefficients (a single path being the monomial case). Values are immutable
and canonically ordered, so equal presentations compare and serialize
identically.

Path composition is written left to right: the path (a, b) means "a then b"
and requires target(a) == source(b).
"""

from fractions import Fraction
from itertools import permutations, product
import re
from typing import NamedTuple

from . import _linalg

__all__ = [
    "QsaError", "Arrow", "Path", "Walk", "RelationTerm", "Quiver",
    "AlgebraPresentation", "ValidationReport", "parse_presentation",
    "serialize_presentation", "validate", "underlying_graph", "is_tree",
    "path_basis", "presentations_isomorphic", "opposite", "natural_key",
]


class QsaError(Exception):
    """Malformed or out-of-scope input."""


_ID_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_+\-~*.'@]*\Z")


def natural_key(s):
    """Sort key treating digit runs numerically, so v2 sorts before v10."""
    parts = re.split(r"(\d+)", s)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)


def _check_id(kind, name):
    if not isinstance(name, str) or not _ID_RE.match(name):
        raise QsaError(f"invalid {kind} identifier {name!r}")


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    source: str
    target: str
    arrows: tuple  # arrow names, left to right; empty for a trivial path

    def __len__(self):
        return len(self.arrows)


class Walk(NamedTuple):
    """A reduced walk in the underlying graph: signed arrow steps."""
    source: str
    target: str
    steps: tuple  # of (arrow_name, +1 | -1)

    def __len__(self):
        return len(self.steps)


# --- quiver ----------------------------------------------------------------


class Quiver:
    """Finite quiver with canonically sorted vertex and arrow lists."""

    def __init__(self, name, vertices, arrows):
        _check_id("quiver name", name)
        vertices = list(vertices)
        if not vertices:
            raise QsaError("quiver needs at least one vertex")
        for v in vertices:
            _check_id("vertex", v)
        if len(set(vertices)) != len(vertices):
            raise QsaError("duplicate vertex identifier")
        arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        seen = set()
        vset = set(vertices)
        for a in arrows:
            _check_id("arrow", a.name)
            if a.name in seen:
                raise QsaError(f"duplicate arrow identifier {a.name!r}")
            seen.add(a.name)
            if a.source not in vset or a.target not in vset:
                raise QsaError(f"arrow {a.name!r} has an endpoint outside the vertex list")
        self.name = name
        self.vertices = tuple(sorted(vertices, key=natural_key))
        self.arrows = tuple(sorted(arrows, key=lambda a: natural_key(a.name)))
        self._by_name = {a.name: a for a in self.arrows}
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise QsaError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name):
        return name in self._by_name

    def out_arrows(self, v):
        return tuple(self._out[v])

    def in_arrows(self, v):
        return tuple(self._in[v])

    def has_vertex(self, v):
        return v in self._out

    def path(self, arrow_names):
        """Build a Path from composable arrow names."""
        names = tuple(arrow_names)
        if not names:
            raise QsaError("empty path needs an explicit vertex; use trivial_path")
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise QsaError(f"arrows {a.name!r} and {b.name!r} do not compose")
        return Path(arrows[0].source, arrows[-1].target, names)

    def trivial_path(self, v):
        if not self.has_vertex(v):
            raise QsaError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.name == other.name
                and self.vertices == other.vertices and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.name, self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({self.name!r}, {len(self.vertices)} vertices, {len(self.arrows)} arrows)"


# --- relations -------------------------------------------------------------


def _path_sort_key(arrows):
    return (len(arrows),) + tuple(natural_key(x) for x in arrows)


class RelationTerm:
    """One relation: a canonical combination of parallel paths.

    Terms are merged, sorted, and scaled so the first coefficient is 1;
    monomial relations are combinations with a single path.
    """

    def __init__(self, quiver, combination):
        merged = {}
        endpoints = None
        for coef, arrows in combination:
            coef = Fraction(coef)
            p = quiver.path(arrows)
            if len(p.arrows) < 2:
                raise QsaError("relation paths must have length >= 2")
            if endpoints is None:
                endpoints = (p.source, p.target)
            elif endpoints != (p.source, p.target):
                raise QsaError("relation mixes non-parallel paths")
            merged[p.arrows] = merged.get(p.arrows, Fraction(0)) + coef
        merged = {k: v for k, v in merged.items() if v}
        if not merged:
            raise QsaError("relation cancels to zero")
        ordered = sorted(merged, key=_path_sort_key)
        lead = merged[ordered[0]]
        self.source, self.target = endpoints
        self.terms = tuple((merged[p] / lead, p) for p in ordered)

    @property
    def is_monomial(self):
        return len(self.terms) == 1

    def paths(self):
        return tuple(p for _, p in self.terms)

    def sort_key(self):
        return tuple((_path_sort_key(p), c) for c, p in self.terms)

    def __eq__(self, other):
        return isinstance(other, RelationTerm) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"RelationTerm({self.terms!r})"


class AlgebraPresentation:
    """A quiver with relations; the value is canonical on construction."""

    def __init__(self, quiver, relations):
        rels = []
        for r in relations:
            if not isinstance(r, RelationTerm):
                r = RelationTerm(quiver, r)
            else:
                # revalidate against this quiver (terms may come from another)
                r = RelationTerm(quiver, [(c, p) for c, p in r.terms])
            rels.append(r)
        rels = sorted(set(rels), key=lambda r: r.sort_key())
        self.quiver = quiver
        self.relations = tuple(rels)
        self.monomials = frozenset(r.terms[0][1] for r in rels if r.is_monomial)

    @property
    def name(self):
        return self.quiver.name

    @property
    def is_monomial(self):
        return all(r.is_monomial for r in self.relations)

    @property
    def is_quadratic(self):
        return all(len(p) == 2 for r in self.relations for p in r.paths())

    def max_relation_length(self):
        return max((len(p) for r in self.relations for p in r.paths()), default=2)

    def relation_free(self, arrows):
        """True when no monomial relation occurs as a contiguous factor."""
        n = len(arrows)
        for m in self.monomials:
            k = len(m)
            if k <= n and any(arrows[i:i + k] == m for i in range(n - k + 1)):
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, AlgebraPresentation)
                and self.quiver == other.quiver and self.relations == other.relations)

    def __hash__(self):
        return hash((self.quiver, self.relations))

    def __repr__(self):
        return (f"AlgebraPresentation({self.name!r}, |Q0|={len(self.quiver.vertices)}, "
                f"|Q1|={len(self.quiver.arrows)}, {len(self.relations)} relations)")


def opposite(a, name=None):
    """The opposite presentation: arrows reversed, every path read backwards."""
    q = a.quiver
    qop = Quiver(name or q.name, q.vertices,
                 [Arrow(x.name, x.target, x.source) for x in q.arrows])
    rels = [[(c, tuple(reversed(p))) for c, p in r.terms] for r in a.relations]
    return AlgebraPresentation(qop, rels)


# --- parsing and serialization --------------------------------------------


def _tokenize(line):
    for ch in ("(", ")"):
        line = line.replace(ch, f" {ch} ")
    line = line.replace("->", " -> ")
    return line.split()


_COEF_RE = re.compile(r"-?\d+(/\d+)?\Z")


def _parse_combination(tokens, where):
    """Parse `coef? ( path ) (+|-) coef? ( path ) ...` into (coef, arrows) pairs."""
    out = []
    i = 0
    sign = Fraction(1)
    first = True
    while i < len(tokens):
        if not first:
            if tokens[i] == "+":
                sign = Fraction(1)
            elif tokens[i] == "-":
                sign = Fraction(-1)
            else:
                raise QsaError(f"{where}: expected '+' or '-', got {tokens[i]!r}")
            i += 1
        elif tokens[i] == "-":
            sign = Fraction(-1)
            i += 1
        coef = Fraction(1)
        if i < len(tokens) and _COEF_RE.match(tokens[i]):
            coef = Fraction(tokens[i])
            i += 1
        if i >= len(tokens) or tokens[i] != "(":
            raise QsaError(f"{where}: expected '(' before a path")
        i += 1
        arrows = []
        while i < len(tokens) and tokens[i] != ")":
            arrows.append(tokens[i])
            i += 1
        if i >= len(tokens):
            raise QsaError(f"{where}: unclosed '(' in relation")
        i += 1
        if not arrows:
            raise QsaError(f"{where}: empty path in relation")
        out.append((sign * coef, tuple(arrows)))
        first = False
        sign = Fraction(1)
    return out


def parse_presentation(text):
    """Parse the presentation file format; errors carry 1-based line numbers."""
    lines = []
    for num, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((num, body))
    if not lines:
        raise QsaError("empty presentation")

    idx = 0
    num, body = lines[idx]
    tokens = _tokenize(body)
    if len(tokens) != 2 or tokens[0] != "quiver":
        raise QsaError(f"line {num}: expected 'quiver <name>'")
    name = tokens[1]
    idx += 1

    if idx >= len(lines):
        raise QsaError(f"line {num}: missing 'vertices:' line")
    num, body = lines[idx]
    if not body.startswith("vertices:"):
        raise QsaError(f"line {num}: expected 'vertices:' line")
    vertices = body[len("vertices:"):].split()
    if not vertices:
        raise QsaError(f"line {num}: at least one vertex is required")
    idx += 1

    arrows = []
    relation_lines = []
    in_relations = False
    for num, body in lines[idx:]:
        if body == "relations:":
            if in_relations:
                raise QsaError(f"line {num}: duplicate 'relations:' header")
            in_relations = True
            continue
        tokens = _tokenize(body)
        if not in_relations:
            if tokens[0] != "arrow":
                raise QsaError(f"line {num}: expected an 'arrow' line or 'relations:'")
            # arrow NAME: SRC -> TGT  (the colon may touch the name)
            rest = tokens[1:]
            if rest and rest[0].endswith(":") and len(rest[0]) > 1:
                aname = rest[0][:-1]
                rest = rest[1:]
            elif len(rest) >= 2 and rest[1] == ":":
                aname = rest[0]
                rest = rest[2:]
            else:
                raise QsaError(f"line {num}: expected 'arrow <name>:'")
            if len(rest) != 3 or rest[1] != "->":
                raise QsaError(f"line {num}: expected '<source> -> <target>'")
            arrows.append((num, Arrow(aname, rest[0], rest[2])))
        else:
            relation_lines.append((num, tokens))

    try:
        quiver = Quiver(name, vertices, [a for _, a in arrows])
    except QsaError as e:
        raise QsaError(str(e)) from None

    relations = []
    for num, tokens in relation_lines:
        where = f"line {num}"
        if "(" in tokens:
            combo = _parse_combination(tokens, where)
        else:
            if len(tokens) < 2:
                raise QsaError(f"{where}: relation paths must have length >= 2")
            combo = [(Fraction(1), tuple(tokens))]
        try:
            relations.append(RelationTerm(quiver, combo))
        except QsaError as e:
            raise QsaError(f"{where}: {e}") from None
    return AlgebraPresentation(quiver, relations)


def _fmt_coef(c):
    return str(c) if c.denominator != 1 else str(c.numerator)


def serialize_presentation(a):
    """Canonical text form; parsing it back gives an equal presentation."""
    q = a.quiver
    out = [f"quiver {q.name}", "vertices: " + " ".join(q.vertices)]
    for ar in q.arrows:
        out.append(f"arrow {ar.name}: {ar.source} -> {ar.target}")
    if a.relations:
        out.append("relations:")
        for r in a.relations:
            if r.is_monomial:
                out.append(" ".join(r.terms[0][1]))
            else:
                bits = []
                for k, (c, p) in enumerate(r.terms):
                    mag = abs(c)
                    coef = "" if mag == 1 else _fmt_coef(mag) + " "
                    body = f"{coef}( " + " ".join(p) + " )"
                    if k == 0:
                        bits.append(body if c > 0 else f"- {body}")
                    else:
                        bits.append(("+ " if c > 0 else "- ") + body)
                out.append(" ".join(bits))
    return "\n".join(out) + "\n"


# --- validation ------------------------------------------------------------


class ValidationReport(NamedTuple):
    connected: bool
    monomial: bool
    quadratic_monomial: bool
    admissible: bool          # meaningful only when certified
    certified: bool
    nilpotency_bound: int     # m with rad^m = 0, when certified; else 0
    loop_free_vertices: tuple
    problems: tuple

    @property
    def ok(self):
        return not self.problems


def _is_connected(q):
    if not q.vertices:
        return True
    adj = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {q.vertices[0]}
    stack = [q.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(q.vertices)


def _has_directed_cycle(q):
    color = {v: 0 for v in q.vertices}

    def dfs(v):
        color[v] = 1
        for a in q.out_arrows(v):
            if color[a.target] == 1:
                return True
            if color[a.target] == 0 and dfs(a.target):
                return True
        color[v] = 2
        return False

    return any(color[v] == 0 and dfs(v) for v in q.vertices)


def _monomial_admissibility(a):
    """(admissible, bound m) via the forbidden-factor window automaton."""
    q = a.quiver
    gens = a.monomials
    k = max((len(m) for m in gens), default=2)

    def extension_survives(window, arrow_name):
        arrows = window + (arrow_name,)
        for m in gens:
            if len(m) <= len(arrows) and arrows[-len(m):] == m:
                return False
        return True

    # All surviving paths of length < k-1, grown to the automaton states.
    windows = set()
    shorter_max = 0
    frontier = [((), v) for v in q.vertices]
    length = 0
    while frontier and length < k - 1:
        nxt = []
        for window, at in frontier:
            for ar in q.out_arrows(at):
                if extension_survives(window, ar.name):
                    nxt.append((window + (ar.name,), ar.target))
        length += 1
        if nxt:
            shorter_max = length
        frontier = nxt
    for window, _ in frontier:
        windows.add(window)

    edges = {w: [] for w in windows}
    for window in windows:
        at = q.arrow(window[-1]).target
        for ar in q.out_arrows(at):
            if extension_survives(window, ar.name):
                nxt = (window + (ar.name,))[-(k - 1):]
                edges[window].append(nxt)

    color = {w: 0 for w in windows}
    depth = {}

    def dfs(w):
        color[w] = 1
        best = 0
        for nx in edges[w]:
            if color[nx] == 1:
                return None
            if color[nx] == 0:
                d = dfs(nx)
                if d is None:
                    return None
                best = max(best, 1 + d)
            else:
                best = max(best, 1 + depth[nx])
        color[w] = 2
        depth[w] = best
        return best

    longest_walk = 0
    for w in sorted(windows):
        if color[w] == 0:
            d = dfs(w)
            if d is None:
                return False, 0
            longest_walk = max(longest_walk, d)
        else:
            longest_walk = max(longest_walk, depth[w])
    if windows:
        longest = (k - 1) + longest_walk
    else:
        longest = shorter_max
    return True, longest + 1


def _graded_dimensions(a, cutoff):
    """Dimensions of the graded components, for length-homogeneous ideals.

    Returns (dims, certified_bound) where certified_bound is the first degree
    with dimension zero, or None when the scan hits the cutoff first.
    """
    q = a.quiver
    hom_gens = []
    for r in a.relations:
        lens = {len(p) for p in r.paths()}
        if len(lens) != 1:
            raise QsaError("graded scan needs length-homogeneous relations")
        if not r.is_monomial:
            hom_gens.append((r, lens.pop()))
    dims = {1: len(q.arrows)}
    for d in range(2, cutoff + 1):
        paths = _pruned_paths_of_length(a, d)
        index = {p: i for i, p in enumerate(paths)}
        span = []
        for r, glen in hom_gens:
            for u in _pruned_paths_up_to(a, d - glen):
                src_ok = (not u) or q.arrow(u[-1]).target == r.source
                if not src_ok:
                    continue
                remainder = d - glen - len(u)
                for v in _pruned_paths_from(a, r.target, remainder):
                    vec = [Fraction(0)] * len(paths)
                    nonzero = False
                    for c, p in r.terms:
                        w = u + p + v
                        if a.relation_free(w):
                            vec[index[w]] += c
                            nonzero = True
                    if nonzero:
                        span.append(vec)
        dim = len(paths) - (_linalg.rank(span) if span else 0)
        dims[d] = dim
        if dim == 0:
            return dims, d
    return dims, None


def _pruned_paths_of_length(a, d, start=None):
    q = a.quiver
    out = []

    def grow(arrows, at):
        if len(arrows) == d:
            out.append(arrows)
            return
        for ar in q.out_arrows(at):
            nxt = arrows + (ar.name,)
            if a.relation_free(nxt):
                grow(nxt, ar.target)

    starts = [start] if start is not None else list(q.vertices)
    for v in starts:
        grow((), v)
    return out


def _pruned_paths_up_to(a, dmax):
    out = []
    for d in range(dmax + 1):
        out.extend(_pruned_paths_of_length(a, d))
    # length-0 paths appear once per vertex via the start loop; for d = 0 the
    # empty tuple is repeated, so dedupe while keeping order stable
    if dmax >= 0:
        seen = set()
        deduped = []
        for p in out:
            if p == () and p in seen:
                continue
            seen.add(p)
            deduped.append(p)
        return deduped
    return out


def _pruned_paths_from(a, v, d):
    q = a.quiver
    out = []

    def grow(arrows, at):
        if len(arrows) == d:
            out.append(arrows)
            return
        for ar in q.out_arrows(at):
            nxt = arrows + (ar.name,)
            if a.relation_free(nxt):
                grow(nxt, ar.target)

    grow((), v)
    return out


def validate(a):
    """Structural report: connectivity, relation shape, admissibility bound."""
    q = a.quiver
    problems = []
    connected = _is_connected(q)
    if not connected:
        problems.append("quiver is not connected")
    monomial = a.is_monomial
    quadratic_monomial = monomial and a.is_quadratic
    loops = {ar.source for ar in q.arrows if ar.source == ar.target}
    loop_free = tuple(v for v in q.vertices if v not in loops)

    certified = True
    admissible = True
    bound = 0
    if monomial:
        admissible, bound = _monomial_admissibility(a)
        if not admissible:
            problems.append("ideal is not admissible: arbitrarily long relation-free paths")
    elif not _has_directed_cycle(q):
        admissible = True
        longest = _longest_raw_path(q)
        bound = longest + 1
    else:
        cutoff = max(16, 2 * len(q.arrows) + 2)
        try:
            _, stop = _graded_dimensions(a, cutoff)
        except QsaError as e:
            problems.append(str(e))
            stop = None
        if stop is None:
            certified = False
            admissible = False
            problems.append("admissibility not certified for this cyclic non-monomial ideal")
        else:
            bound = stop
    return ValidationReport(connected, monomial, quadratic_monomial,
                            admissible, certified, bound, loop_free, tuple(problems))


def _longest_raw_path(q):
    memo = {}

    def dfs(v):
        if v in memo:
            return memo[v]
        memo[v] = 0
        best = 0
        for ar in q.out_arrows(v):
            best = max(best, 1 + dfs(ar.target))
        memo[v] = best
        return best

    return max((dfs(v) for v in q.vertices), default=0)


# --- graphs and path bases -------------------------------------------------


def underlying_graph(a):
    """(vertices, edges) of the underlying multigraph; one edge per arrow."""
    q = a.quiver if isinstance(a, AlgebraPresentation) else a
    edges = tuple(tuple(sorted((ar.source, ar.target), key=natural_key)) for ar in q.arrows)
    return q.vertices, edges


def is_tree(a):
    """True when the underlying multigraph is a tree (connected, acyclic)."""
    vertices, edges = underlying_graph(a)
    if len(edges) != len(vertices) - 1:
        return False
    q = a.quiver if isinstance(a, AlgebraPresentation) else a
    return _is_connected(q)


def path_basis(a, i, j, max_len=None):
    """Ordered basis of relation-free paths from i to j (monomial input)."""
    if not a.is_monomial:
        raise QsaError("path_basis needs a monomial presentation")
    q = a.quiver
    if not q.has_vertex(i) or not q.has_vertex(j):
        raise QsaError("path_basis: unknown vertex")
    if max_len is None:
        admissible, bound = _monomial_admissibility(a)
        if not admissible:
            raise QsaError("path_basis needs an admissible ideal (or an explicit max_len)")
        max_len = bound - 1
    out = []

    def grow(arrows, at):
        if at == j:
            out.append(Path(i, j, arrows))
        if len(arrows) == max_len:
            return
        for ar in q.out_arrows(at):
            nxt = arrows + (ar.name,)
            if a.relation_free(nxt):
                grow(nxt, ar.target)

    grow((), i)
    out.sort(key=lambda p: _path_sort_key(p.arrows))
    return tuple(out)


# --- isomorphism -----------------------------------------------------------


def _signature(q, v):
    loops = sum(1 for a in q.out_arrows(v) if a.target == v)
    return (len(q.out_arrows(v)), len(q.in_arrows(v)), loops)


def _parallel_counts(q):
    counts = {}
    for a in q.arrows:
        counts[(a.source, a.target)] = counts.get((a.source, a.target), 0) + 1
    return counts


def _paths_from_of_length(q, v, d):
    out = []

    def grow(arrows, at):
        if len(arrows) == d:
            out.append(arrows)
            return
        for ar in q.out_arrows(at):
            grow(arrows + (ar.name,), ar.target)

    grow((), v)
    return out


def _paths_into_of_length(q, v, d):
    out = []

    def grow(arrows, at):
        if len(arrows) == d:
            out.append(arrows)
            return
        for ar in q.in_arrows(at):
            grow((ar.name,) + arrows, ar.source)

    grow((), v)
    return out


def _monomial_ideal_upto(a, cap):
    """All paths of length 2..cap that contain a monomial generator."""
    q = a.quiver
    out = set()
    for d in range(2, cap + 1):
        for v in q.vertices:
            for p in _paths_from_of_length(q, v, d):
                if not a.relation_free(p):
                    out.add(p)
    return out


def _ideal_spans(a, vertex_map, arrow_map, degree_cap):
    """Graded ideal spans of `a` in renamed coordinates.

    Returns {(mapped src, mapped tgt, d): (rref rows, pivots)} over the sorted
    list of renamed paths. Needs length-homogeneous relation terms.
    """
    for r in a.relations:
        if len({len(p) for p in r.paths()}) != 1:
            raise QsaError("isomorphism check needs length-homogeneous relations")
    q = a.quiver
    spans = {}
    for d in range(2, degree_cap + 1):
        grouped = {}
        for v in q.vertices:
            for p in _paths_from_of_length(q, v, d):
                tgt = q.arrow(p[-1]).target
                grouped.setdefault((v, tgt), []).append(p)
        for (src, tgt), plist in grouped.items():
            mapped = sorted(tuple(arrow_map[x] for x in p) for p in plist)
            index = {m: k for k, m in enumerate(mapped)}
            rows = []
            for r in a.relations:
                glen = len(r.paths()[0])
                if glen > d:
                    continue
                for ulen in range(d - glen + 1):
                    for u in _paths_into_of_length(q, r.source, ulen):
                        head = q.arrow(u[0]).source if u else r.source
                        if head != src:
                            continue
                        for tail_path in _paths_from_of_length(q, r.target, d - glen - ulen):
                            tail = q.arrow(tail_path[-1]).target if tail_path else r.target
                            if tail != tgt:
                                continue
                            vec = [Fraction(0)] * len(mapped)
                            for c, p in r.terms:
                                w = u + p + tail_path
                                vec[index[tuple(arrow_map[x] for x in w)]] += c
                            if any(vec):
                                rows.append(vec)
            if rows:
                basis, piv = _linalg.rref(rows)
                spans[(vertex_map[src], vertex_map[tgt], d)] = (
                    tuple(tuple(row) for row in basis), tuple(piv))
    return spans


def presentations_isomorphic(a, b, max_vertices=14):
    """Search for an isomorphism of presentations; returns the maps or None.

    An isomorphism is a vertex bijection plus an arrow bijection carrying the
    ideal of `a` onto the ideal of `b`; generator lists may differ as long as
    the generated ideals agree, which is compared degree by degree up to the
    longest generator length.
    """
    qa, qb = a.quiver, b.quiver
    if len(qa.vertices) > max_vertices or len(qb.vertices) > max_vertices:
        raise QsaError("isomorphism search bound exceeded; raise max_vertices to override")
    if len(qa.vertices) != len(qb.vertices) or len(qa.arrows) != len(qb.arrows):
        return None
    if sorted(_signature(qa, v) for v in qa.vertices) != \
       sorted(_signature(qb, v) for v in qb.vertices):
        return None

    counts_a = _parallel_counts(qa)
    counts_b = _parallel_counts(qb)
    by_sig_b = {}
    for v in qb.vertices:
        by_sig_b.setdefault(_signature(qb, v), []).append(v)
    order = sorted(qa.vertices,
                   key=lambda v: (len(by_sig_b.get(_signature(qa, v), [])), natural_key(v)))
    degree_cap = max(a.max_relation_length(), b.max_relation_length())
    both_monomial = a.is_monomial and b.is_monomial
    if both_monomial:
        ideal_b = _monomial_ideal_upto(b, degree_cap)
        ideal_a = _monomial_ideal_upto(a, degree_cap)
    else:
        spans_b = _ideal_spans(b, {v: v for v in qb.vertices},
                               {x.name: x.name for x in qb.arrows}, degree_cap)

    def relations_match(vmap, amap):
        if both_monomial:
            return {tuple(amap[x] for x in m) for m in ideal_a} == ideal_b
        return _ideal_spans(a, vmap, amap, degree_cap) == spans_b

    def arrow_bijections(vmap):
        options = []
        for (u, v), n in counts_a.items():
            image = (vmap[u], vmap[v])
            la = sorted((x.name for x in qa.arrows if (x.source, x.target) == (u, v)),
                        key=natural_key)
            lb = sorted((x.name for x in qb.arrows if (x.source, x.target) == image),
                        key=natural_key)
            if len(la) > 4:
                raise QsaError("too many parallel arrows for isomorphism search")
            options.append([dict(zip(la, perm)) for perm in permutations(lb)])
        for combo in product(*options):
            amap = {}
            for piece in combo:
                amap.update(piece)
            yield amap

    assignment = {}
    used = set()

    def backtrack(k):
        if k == len(order):
            vmap = dict(assignment)
            for amap in arrow_bijections(vmap):
                if relations_match(vmap, amap):
                    return {"vertices": vmap, "arrows": amap}
            return None
        v = order[k]
        for w in by_sig_b.get(_signature(qa, v), []):
            if w in used:
                continue
            if counts_a.get((v, v), 0) != counts_b.get((w, w), 0):
                continue
            if any(counts_a.get((v, u), 0) != counts_b.get((w, img), 0)
                   or counts_a.get((u, v), 0) != counts_b.get((img, w), 0)
                   for u, img in assignment.items()):
                continue
            assignment[v] = w
            used.add(w)
            found = backtrack(k + 1)
            if found:
                return found
            del assignment[v]
            used.discard(w)
        return None

    return backtrack(0)
