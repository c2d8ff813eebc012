"""Blow-ups, vertex mutations, and reduction to a skewed-gentle form.

A blow-up doubles a set of special vertices and lifts arrows and
relations along the folding map; the kernel of the fold contributes one
binomial for each special vertex whose two arrows survive.

The reduction removes exceptional vertices one at a time.  Each move
either recognizes the algebra outright as a blow-up of a smaller one
(classes 3 and 5) or rewrites the neighbourhood of the exceptional
vertex the way a sink mutation followed by a source mutation would
(classes 1, 2, 4, 6), recording which vertex becomes special.  Classes
5 and 6 are handled by passing to the opposite algebra.
"""

import json
from typing import NamedTuple

from .presentation import (
    QsaError, Arrow, Quiver, RelationTerm, AlgebraPresentation,
    opposite, serialize_presentation, natural_key,
)
from .classify import classify_vertices, OTHER


# --- step kinds ---------------------------------------------------------------

CASE_REWRITE = "CaseRewrite"
DIRECT_BLOWUP = "DirectBlowupRecognition"
SINK_MUTATION = "SinkMutation"
SOURCE_MUTATION = "SourceMutation"


class BlowupSpec(NamedTuple):
    presentation: object
    blown: tuple
    vertex_map: dict          # vertex -> (plus copy, minus copy)
    arrow_map: dict           # arrow -> tuple of lifted arrow names


class ReductionStep(NamedTuple):
    kind: str
    case: int                 # exceptional class handled (1..6)
    vertex: str               # the exceptional vertex
    witness: dict
    removed_vertex: str
    removed_arrows: tuple
    new_arrows: tuple         # ((name, source, target), ...)
    special_added: str
    before: str               # serialized presentations
    after: str


class ReductionCertificate(NamedTuple):
    initial: object
    final: object
    steps: tuple
    special: tuple


# --- blow-up ------------------------------------------------------------------


def _is_special(a, v):
    """At most one arrow in, one out, and their composite not a relation."""
    q = a.quiver
    if not q.has_vertex(v):
        return False
    ins = q.in_arrows(v)
    outs = q.out_arrows(v)
    if len(ins) > 1 or len(outs) > 1:
        return False
    if ins and outs and (ins[0].name, outs[0].name) in a.monomials:
        return False
    return True


def _ordinary_vertices(classification):
    out = set()
    for vs in classification.ordinary.values():
        out.update(vs)
    return out


def blow_up(a, blown, name=None):
    """Double each vertex in `blown`, lifting arrows and relations.

    Every blown vertex must be special.  Requires a monomial quadratic
    presentation; returns a BlowupSpec whose presentation has one
    binomial relation per blown vertex with both an arrow in and out.
    """
    if not (a.is_monomial and a.is_quadratic):
        raise QsaError("blow-up requires a monomial quadratic presentation")
    q = a.quiver
    blown = sorted(set(blown), key=natural_key)
    for d in blown:
        if not q.has_vertex(d):
            raise QsaError(f"unknown vertex {d!r}")
        if not _is_special(a, d):
            raise QsaError(f"vertex {d!r} is not special, cannot blow up")

    bset = set(blown)
    vertex_map = {}
    taken = set(q.vertices)
    for d in blown:
        plus, minus = d + "+", d + "-"
        while plus in taken or minus in taken:
            plus += "+"
            minus += "-"
        vertex_map[d] = (plus, minus)
        taken.update((plus, minus))
    vertices = [v for v in q.vertices if v not in bset]
    for d in blown:
        vertices.extend(vertex_map[d])

    def end_signs(v):
        return ("+", "-") if v in bset else ("",)

    def lift_name(arrow, ssign, tsign):
        return arrow.name + ssign + tsign

    def lift_end(v, sign):
        if v in bset:
            return vertex_map[v][0 if sign == "+" else 1]
        return v

    arrows = []
    arrow_map = {}
    names = set()
    for ar in q.arrows:
        lifts = []
        for ss in end_signs(ar.source):
            for ts in end_signs(ar.target):
                nm = lift_name(ar, ss, ts)
                if nm in names:
                    raise QsaError(f"arrow name collision {nm!r} in blow-up")
                names.add(nm)
                lifts.append(nm)
                arrows.append(Arrow(nm, lift_end(ar.source, ss),
                                    lift_end(ar.target, ts)))
        arrow_map[ar.name] = tuple(lifts)

    # monomial relation lifts: every sign choice at the outer endpoints
    monomials = set()
    for r in a.relations:
        p, w = r.terms[0][1]
        pa, wa = q.arrow(p), q.arrow(w)
        for ss in end_signs(pa.source):
            for ts in end_signs(wa.target):
                monomials.add((lift_name(pa, ss, ""), lift_name(wa, "", ts)))

    # fold-kernel binomials: one matched-sign difference per blown vertex
    # with both an arrow in and an arrow out, for every outer sign choice
    combos = []
    for d in blown:
        ins, outs = q.in_arrows(d), q.out_arrows(d)
        if not (ins and outs):
            continue
        u, w = ins[0], outs[0]
        for ss in end_signs(u.source):
            for ts in end_signs(w.target):
                plus = (lift_name(u, ss, "+"), lift_name(w, "+", ts))
                minus = (lift_name(u, ss, "-"), lift_name(w, "-", ts))
                combos.append([(1, plus), (-1, minus)])

    # cleanup: drop terms that contain a known monomial, promote singletons
    changed = True
    while changed:
        changed = False
        kept = []
        for combo in combos:
            terms = [t for t in combo if t[1] not in monomials]
            if len(terms) != len(combo):
                changed = True
            if len(terms) == 1:
                monomials.add(terms[0][1])
                changed = True
            elif terms:
                kept.append(terms)
        combos = kept

    quiver = Quiver(name or a.name, vertices, arrows)
    relations = [[(1, list(mpath))] for mpath in sorted(monomials)]
    relations += combos
    pres = AlgebraPresentation(quiver, relations)
    return BlowupSpec(pres, tuple(blown), vertex_map, arrow_map)


# --- reduction moves ----------------------------------------------------------


def _fresh_name(base, taken):
    name = base + "~"
    while name in taken:
        name += "~"
    return name


def _survivor_relations(a, removed_arrows):
    out = []
    for r in a.relations:
        if all(ar not in removed_arrows for ar in r.terms[0][1]):
            out.append([(c, list(p)) for c, p in r.terms])
    return out


def _case_one_two(a, x, case, witness):
    """Classes 1 and 2: drop the marked source, rewire through the sink."""
    q = a.quiver
    in1, in2 = witness["in1"], witness["in2"]
    out1, out2 = witness["out1"], witness["out2"]
    v1 = q.arrow(in1).source
    v2 = q.arrow(in2).source
    v4 = q.arrow(out1).target
    v5 = q.arrow(out2).target
    removed = {in1, in2, out1, out2}
    survivors = [ar for ar in q.arrows if ar.name not in removed]
    taken = {ar.name for ar in survivors}

    in2t = _fresh_name(in2, taken)
    taken.add(in2t)
    out1t = _fresh_name(out1, taken)
    taken.add(out1t)
    out2t = _fresh_name(out2, taken)
    new_arrows = (
        Arrow(in2t, v2, v4),
        Arrow(out1t, v4, x),
        Arrow(out2t, x, v5),
    )

    relations = _survivor_relations(a, removed)
    for r in a.relations:
        p, w = r.terms[0][1]
        if w == in2 and p not in removed:
            relations.append([(1, [p, in2t])])
        if p == out2 and w not in removed:
            relations.append([(1, [out2t, w])])
    if case == 2:
        relations.append([(1, [out2t, in2t])])

    vertices = [v for v in q.vertices if v != v1]
    quiver = Quiver(a.name, vertices, survivors + list(new_arrows))
    b = AlgebraPresentation(quiver, relations)
    step = dict(kind=CASE_REWRITE, case=case, vertex=x, witness=witness,
                removed_vertex=v1, removed_arrows=tuple(sorted(removed)),
                new_arrows=tuple((ar.name, ar.source, ar.target)
                                 for ar in new_arrows),
                special_added=x)
    return b, step


def _case_four(a, x, witness):
    """Class 4: drop the marked source, reattach the sink behind x."""
    q = a.quiver
    in1, in2, out1 = witness["in1"], witness["in2"], witness["out1"]
    v1 = q.arrow(in1).source
    v2 = q.arrow(in2).source
    v4 = q.arrow(out1).target
    removed = {in1, in2, out1}
    survivors = [ar for ar in q.arrows if ar.name not in removed]
    taken = {ar.name for ar in survivors}

    in2t = _fresh_name(in2, taken)
    taken.add(in2t)
    out1t = _fresh_name(out1, taken)
    new_arrows = (Arrow(in2t, v2, v4), Arrow(out1t, v4, x))

    relations = _survivor_relations(a, removed)
    for r in a.relations:
        p, w = r.terms[0][1]
        if w == in2 and p not in removed:
            relations.append([(1, [p, in2t])])

    vertices = [v for v in q.vertices if v != v1]
    quiver = Quiver(a.name, vertices, survivors + list(new_arrows))
    b = AlgebraPresentation(quiver, relations)
    step = dict(kind=CASE_REWRITE, case=4, vertex=x, witness=witness,
                removed_vertex=v1, removed_arrows=tuple(sorted(removed)),
                new_arrows=tuple((ar.name, ar.source, ar.target)
                                 for ar in new_arrows),
                special_added=x)
    return b, step


def _case_three(a, x, witness):
    """Class 3: the algebra is already a blow-up; peel the second source."""
    q = a.quiver
    in1, in2 = witness["in1"], witness["in2"]
    v1 = q.arrow(in1).source
    v2 = q.arrow(in2).source
    removed = {in2}
    survivors = [ar for ar in q.arrows if ar.name != in2]
    relations = _survivor_relations(a, removed)
    vertices = [v for v in q.vertices if v != v2]
    quiver = Quiver(a.name, vertices, survivors)
    b = AlgebraPresentation(quiver, relations)
    step = dict(kind=DIRECT_BLOWUP, case=3, vertex=x, witness=witness,
                removed_vertex=v2, removed_arrows=(in2,),
                new_arrows=(), special_added=v1)
    return b, step


def _case_dual(a, x, case, witness):
    """Classes 5 and 6 via the opposite algebra (duals of 3 and 4)."""
    b_op = opposite(a)
    c_op = classify_vertices(b_op)
    vc = c_op.classes[x]
    if vc.exceptional_class != case - 2:
        raise QsaError(
            f"vertex {x} is class {case} but its opposite is class "
            f"{vc.exceptional_class}, expected {case - 2}")
    if case == 5:
        res_op, step = _case_three(b_op, x, vc.witness)
    else:
        res_op, step = _case_four(b_op, x, vc.witness)
    b = opposite(res_op)
    q = b.quiver
    step = dict(step)
    step.update(
        case=case, witness=witness,
        new_arrows=tuple((nm, q.arrow(nm).source, q.arrow(nm).target)
                         for nm, _s, _t in step["new_arrows"]),
    )
    return b, step


def _check_special(a, ds, classification=None):
    c = classification or classify_vertices(a)
    ordinary = _ordinary_vertices(c)
    for d in ds:
        if not _is_special(a, d):
            raise QsaError(f"vertex {d!r} is not special")
        if d in ordinary:
            raise QsaError(f"vertex {d!r} is special but ordinary")


def reduce_step(a, special=()):
    """One reduction move at the smallest exceptional vertex.

    Returns (smaller presentation, ReductionStep).  `special` is the set
    of vertices already carried along; it is revalidated before and
    after the move.
    """
    c = classify_vertices(a)
    if not c.is_quadratic_string:
        raise QsaError("not a quadratic string algebra: "
                       + "; ".join(c.violations))
    if not c.gqs:
        bad = [v for v, vc in c.classes.items() if vc.kind == OTHER]
        raise QsaError("vertices neither gentle nor exceptional: "
                       + ", ".join(sorted(bad, key=natural_key)))
    exc = c.exceptional_vertices
    if not exc:
        raise QsaError("no exceptional vertex to reduce")
    _check_special(a, special, c)

    x = exc[0]
    vc = c.classes[x]
    case = vc.exceptional_class
    if case in (1, 2):
        b, meta = _case_one_two(a, x, case, vc.witness)
    elif case == 3:
        b, meta = _case_three(a, x, vc.witness)
    elif case == 4:
        b, meta = _case_four(a, x, vc.witness)
    else:
        b, meta = _case_dual(a, x, case, vc.witness)

    cb = classify_vertices(b)
    if not cb.is_quadratic_string or not cb.gqs:
        raise QsaError("reduction move left the quadratic string class")
    if len(cb.exceptional_vertices) != len(exc) - 1:
        raise QsaError("reduction move did not remove one exceptional vertex")
    new_special = tuple(sorted(set(special) | {meta["special_added"]},
                               key=natural_key))
    _check_special(b, new_special, cb)

    step = ReductionStep(before=serialize_presentation(a),
                         after=serialize_presentation(b), **meta)
    return b, step


def reduce_to_skewed_gentle(a, special=()):
    """Iterate reduction moves until no exceptional vertex remains.

    Returns a ReductionCertificate whose final presentation is gentle
    and carries the accumulated special vertices; blowing the final
    algebra up at them recovers something derived equivalent to the
    input.
    """
    c = classify_vertices(a)
    if not c.is_quadratic_string:
        raise QsaError("not a quadratic string algebra: "
                       + "; ".join(c.violations))
    if not c.gqs:
        bad = [v for v, vc in c.classes.items() if vc.kind == OTHER]
        raise QsaError("vertices neither gentle nor exceptional: "
                       + ", ".join(sorted(bad, key=natural_key)))

    cur = a
    ds = tuple(sorted(set(special), key=natural_key))
    steps = []
    while True:
        cc = classify_vertices(cur)
        if not cc.exceptional_vertices:
            break
        cur, step = reduce_step(cur, ds)
        ds = tuple(sorted(set(ds) | {step.special_added}, key=natural_key))
        steps.append(step)
    return ReductionCertificate(initial=a, final=cur,
                                steps=tuple(steps), special=ds)


def certificate_payload(cert):
    """Plain-data dict form of a ReductionCertificate."""
    return {
        "initial": serialize_presentation(cert.initial),
        "final": serialize_presentation(cert.final),
        "special": list(cert.special),
        "steps": [
            {
                "kind": s.kind,
                "case": s.case,
                "vertex": s.vertex,
                "witness": s.witness,
                "removed_vertex": s.removed_vertex,
                "removed_arrows": list(s.removed_arrows),
                "new_arrows": [list(t) for t in s.new_arrows],
                "special_added": s.special_added,
                "before": s.before,
                "after": s.after,
            }
            for s in cert.steps
        ],
    }


def certificate_to_json(cert):
    """Serialize a ReductionCertificate to a JSON string."""
    return json.dumps(certificate_payload(cert), indent=2)


# --- mutations ----------------------------------------------------------------


def mutate_at(a, x, direction):
    """Tilt at a sink (`direction="minus"`) or a source (`"plus"`).

    The result is extracted from the endomorphisms of the two-term
    tilting complex; the plus direction is computed on the opposite
    algebra.
    """
    from ._endo import mutate_minus
    if direction in ("minus", "-"):
        return mutate_minus(a, x)
    if direction in ("plus", "+"):
        if not a.quiver.has_vertex(x):
            raise QsaError(f"unknown vertex {x!r}")
        if a.quiver.in_arrows(x):
            raise QsaError(f"plus mutation needs a source, {x!r} has in-arrows")
        return opposite(mutate_minus(opposite(a), x))
    raise QsaError(f"unknown mutation direction {direction!r}")
