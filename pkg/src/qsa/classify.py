"""Vertex classification for quadratic monomial presentations.

Every vertex is tested for gentleness (at each vertex the in-arrows and
out-arrows whose composite lies in the ideal form a partial matching) and,
failing that, against the six local exceptional configurations that keep a
cyclic algebra derived tame. A presentation is "gqs" when it is a quadratic
string algebra and every vertex is gentle or exceptional.
"""

from typing import NamedTuple

from .presentation import QsaError, natural_key, validate

__all__ = [
    "VertexClass", "VertexClassification", "QuadraticStringReport",
    "SpecialVertices", "is_quadratic_string", "classify_vertices", "is_gqs",
    "special_vertices",
]

GENTLE = "gentle"
EXCEPTIONAL = "exceptional"
OTHER = "non-gentle-non-exceptional"


class VertexClass(NamedTuple):
    vertex: str
    kind: str                 # GENTLE | EXCEPTIONAL | OTHER
    exceptional_class: int    # 1..6, or 0
    witness: dict             # role -> arrow name (in1/in2/out1/out2)
    ordinary_in: tuple        # class indices whose marking made this vertex ordinary


class VertexClassification(NamedTuple):
    classes: dict             # vertex -> VertexClass
    exceptional: dict         # i -> tuple of vertices in class i
    ordinary: dict            # i -> tuple of vertices marked ordinary by class i
    is_quadratic_string: bool
    violations: tuple
    diagnostics: tuple

    @property
    def is_gentle_presentation(self):
        return all(c.kind == GENTLE for c in self.classes.values())

    @property
    def exceptional_vertices(self):
        out = [v for v, c in self.classes.items() if c.kind == EXCEPTIONAL]
        return tuple(sorted(out, key=natural_key))

    @property
    def gqs(self):
        return self.is_quadratic_string and all(
            c.kind in (GENTLE, EXCEPTIONAL) for c in self.classes.values())


class QuadraticStringReport:
    """Outcome of the quadratic-string test; truthy iff it holds."""

    def __init__(self, ok, violations):
        self.ok = ok
        self.violations = tuple(violations)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"QuadraticStringReport(ok={self.ok}, violations={self.violations!r})"


class SpecialVertices(NamedTuple):
    special: tuple
    ordinary: tuple            # ordinary vertices (union over all classes)
    special_not_ordinary: tuple


# --- quadratic string test --------------------------------------------------


def _quadratic_pairs(a):
    """The ideal as a set of composable arrow pairs; errors otherwise."""
    if not a.is_monomial:
        raise QsaError("classification needs a monomial presentation")
    if not a.is_quadratic:
        raise QsaError("classification needs quadratic relations")
    return {(m[0], m[1]) for m in a.monomials}


def is_quadratic_string(a):
    """Check the quadratic string conditions, reporting every violation."""
    violations = []
    q = a.quiver
    if not a.is_monomial or not a.is_quadratic:
        violations.append("the ideal is not generated by paths of length two")
        return QuadraticStringReport(False, violations)
    rel = _quadratic_pairs(a)
    for v in q.vertices:
        if len(q.out_arrows(v)) > 2:
            violations.append(f"vertex {v} is the source of {len(q.out_arrows(v))} arrows")
        if len(q.in_arrows(v)) > 2:
            violations.append(f"vertex {v} is the target of {len(q.in_arrows(v))} arrows")
    for ar in q.arrows:
        cont = [b.name for b in q.out_arrows(ar.target) if (ar.name, b.name) not in rel]
        if len(cont) > 1:
            violations.append(
                f"arrow {ar.name} has {len(cont)} relation-free continuations: "
                + ", ".join(sorted(cont, key=natural_key)))
        pre = [b.name for b in q.in_arrows(ar.source) if (b.name, ar.name) not in rel]
        if len(pre) > 1:
            violations.append(
                f"arrow {ar.name} has {len(pre)} relation-free predecessors: "
                + ", ".join(sorted(pre, key=natural_key)))
    return QuadraticStringReport(not violations, violations)


# --- gentleness and the exceptional classes ---------------------------------


def _is_gentle_vertex(q, rel, x):
    for b in q.out_arrows(x):
        partners = [a for a in q.in_arrows(x) if (a.name, b.name) in rel]
        if len(partners) > 1:
            return False
    for a in q.in_arrows(x):
        partners = [b for b in q.out_arrows(x) if (a.name, b.name) in rel]
        if len(partners) > 1:
            return False
    return True


def _single_source(q, v, arrow):
    """v emits exactly the given arrow and receives nothing."""
    outs = q.out_arrows(v)
    return len(outs) == 1 and outs[0].name == arrow and not q.in_arrows(v)


def _single_sink(q, v, arrow):
    ins = q.in_arrows(v)
    return len(ins) == 1 and ins[0].name == arrow and not q.out_arrows(v)


def _ordered_pairs(arrows):
    out = []
    names = sorted((a.name for a in arrows), key=natural_key)
    for x in names:
        for y in names:
            if x != y:
                out.append((x, y))
    return out


def _class_witness(a, rel, x, j):
    """Witness for exceptional class j at x, or (0, None, None).

    Returns (j, witness dict, pair of vertices marked ordinary) on success.
    Candidate arrows are scanned in name order, so the witness is the
    lexicographically first one.
    """
    q = a.quiver
    ins = q.in_arrows(x)
    outs = q.out_arrows(x)
    src = {ar.name: ar.source for ar in q.arrows}
    tgt = {ar.name: ar.target for ar in q.arrows}

    def distinct(*vs):
        return len(set(vs)) == len(vs)

    # classes 1 and 2: two in, two out; in1 comes from a single-arrow source
    # and out1 lands on a single-arrow sink; of the four composites only
    # in2*out2 survives. Class 2 additionally closes out2 back into in2's
    # source with the back composite in the ideal.
    if j in (1, 2) and len(ins) == 2 and len(outs) == 2:
        for al, be in _ordered_pairs(ins):
            for ga, de in _ordered_pairs(outs):
                if not _single_source(q, src[al], al):
                    continue
                if not _single_sink(q, tgt[ga], ga):
                    continue
                if not ((al, ga) in rel and (be, ga) in rel and (al, de) in rel
                        and (be, de) not in rel):
                    continue
                witness = {"in1": al, "in2": be, "out1": ga, "out2": de}
                if j == 1 and distinct(src[al], src[be], x, tgt[ga], tgt[de]):
                    return 1, witness, (src[al], tgt[ga])
                if j == 2 and tgt[de] == src[be] and (de, be) in rel \
                        and distinct(src[al], src[be], x, tgt[ga]):
                    return 2, witness, (src[al], tgt[ga])

    # classes 3 and 4: two in, a single out, both composites in the ideal;
    # in1 comes from a single-arrow source. Class 3 also has in2 from a
    # single-arrow source; class 4 instead has the out-arrow landing on a
    # single-arrow sink.
    if j in (3, 4) and len(ins) == 2 and len(outs) == 1:
        ga = outs[0].name
        for al, be in _ordered_pairs(ins):
            if not distinct(src[al], src[be], x, tgt[ga]):
                continue
            if not _single_source(q, src[al], al):
                continue
            if (al, ga) not in rel or (be, ga) not in rel:
                continue
            witness = {"in1": al, "in2": be, "out1": ga}
            if j == 3 and _single_source(q, src[be], be):
                return 3, witness, (src[al], src[be])
            if j == 4 and _single_sink(q, tgt[ga], ga):
                return 4, witness, (src[al], tgt[ga])

    # classes 5 and 6: a single in, two out, both composites in the ideal;
    # out1 lands on a single-arrow sink. Class 5 also has out2 landing on
    # a single-arrow sink; class 6 instead has the in-arrow coming from a
    # single-arrow source.
    if j in (5, 6) and len(ins) == 1 and len(outs) == 2:
        al = ins[0].name
        for ga, de in _ordered_pairs(outs):
            if not distinct(src[al], x, tgt[ga], tgt[de]):
                continue
            if not _single_sink(q, tgt[ga], ga):
                continue
            if (al, ga) not in rel or (al, de) not in rel:
                continue
            witness = {"in1": al, "out1": ga, "out2": de}
            if j == 5 and _single_sink(q, tgt[de], de):
                return 5, witness, (tgt[de], tgt[ga])
            if j == 6 and _single_source(q, src[al], al):
                return 6, witness, (src[al], tgt[ga])

    return 0, None, None


def _exceptional_witness(a, rel, x):
    """Smallest exceptional class at x with its witness, or (0, None, None)."""
    for j in range(1, 7):
        idx, witness, marked = _class_witness(a, rel, x, j)
        if idx:
            return idx, witness, marked
    return 0, None, None


def classify_vertices(a):
    """Classify every vertex as gentle, exceptional (class 1..6), or neither."""
    rep = validate(a)
    if not rep.connected:
        raise QsaError("classification needs a connected quiver")
    rel = _quadratic_pairs(a)
    q = a.quiver
    qs = is_quadratic_string(a)

    classes = {}
    exceptional = {i: [] for i in range(1, 7)}
    ordinary = {i: [] for i in range(1, 7)}
    ordinary_by_vertex = {}
    diagnostics = []

    for x in q.vertices:
        if _is_gentle_vertex(q, rel, x):
            classes[x] = VertexClass(x, GENTLE, 0, None, ())
            continue
        idx, witness, marked = _exceptional_witness(a, rel, x)
        if idx:
            classes[x] = VertexClass(x, EXCEPTIONAL, idx, witness, ())
            exceptional[idx].append(x)
            for v in marked:
                ordinary[idx].append(v)
                ordinary_by_vertex.setdefault(v, set()).add(idx)
            higher = [j for j in range(idx + 1, 7)
                      if _class_witness(a, rel, x, j)[0] == j]
            if higher:
                diagnostics.append(
                    f"vertex {x} also fits exceptional class(es) "
                    f"{', '.join(map(str, higher))}; class {idx} retained")
        else:
            classes[x] = VertexClass(x, OTHER, 0, None, ())

    for v, idxs in ordinary_by_vertex.items():
        c = classes[v]
        classes[v] = c._replace(ordinary_in=tuple(sorted(idxs)))

    return VertexClassification(
        classes=classes,
        exceptional={i: tuple(sorted(vs, key=natural_key)) for i, vs in exceptional.items()},
        ordinary={i: tuple(sorted(set(vs), key=natural_key)) for i, vs in ordinary.items()},
        is_quadratic_string=qs.ok,
        violations=qs.violations,
        diagnostics=tuple(diagnostics),
    )


def is_gqs(a):
    """Quadratic string and every vertex gentle or exceptional."""
    return classify_vertices(a).gqs


def special_vertices(a):
    """Vertices with at most one arrow in, at most one out, composite surviving."""
    rel = _quadratic_pairs(a)
    q = a.quiver
    special = []
    for v in q.vertices:
        ins = q.in_arrows(v)
        outs = q.out_arrows(v)
        if len(ins) > 1 or len(outs) > 1:
            continue
        if ins and outs and (ins[0].name, outs[0].name) in rel:
            continue
        special.append(v)
    cls = classify_vertices(a)
    ordinary = sorted({v for vs in cls.ordinary.values() for v in vs}, key=natural_key)
    special_not_ordinary = [v for v in special if v not in set(ordinary)]
    return SpecialVertices(tuple(special), tuple(ordinary), tuple(special_not_ordinary))
