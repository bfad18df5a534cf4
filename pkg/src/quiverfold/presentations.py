"""Relation sets presenting preprojective-type algebras.

Relations are elements of the path algebra of a carrier quiver.  In JSON a
path lists its arrow ids in application order (first applied first); a
trivial path carries an explicit ``vertex`` entry instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidPresentation, NotAcyclic
from .linalg import Field, PrimeField
from .paths import AlgebraElement, Path, path_from_arrow_names
from .quiver import (
    CartanTriple,
    CartanQuiver,
    Quiver,
    double_quiver,
    quiver_of_cartan,
    quiver_from_json,
    quiver_to_json,
)


@dataclass(frozen=True, eq=False)
class Presentation:
    """A carrier quiver together with a finite set of path-algebra relations."""

    quiver: Quiver
    relations: tuple[AlgebraElement, ...]
    field: Field
    base_quiver: Optional[Quiver] = None  # original quiver when carrier is a double
    star: Optional[dict] = None  # arrow pairing of the double, when present
    cartan: Optional[CartanQuiver] = None  # loop/arrow bookkeeping for Cartan carriers

    def __post_init__(self):
        for r in self.relations:
            if r.is_zero():
                raise InvalidPresentation("zero relation")
            if r.quiver != self.quiver:
                raise InvalidPresentation("relation lives on a different quiver")


def preprojective_presentation(q: Quiver, field: Field) -> Presentation:
    """Mesh relations of the double quiver, split into vertex components.

    The single relation sums, over the arrows of ``q``, the difference of the
    two loops an arrow and its reverse form; its projections to the trivial
    paths generate the same two-sided ideal and are attached per vertex.
    """
    if not q.is_acyclic:
        raise NotAcyclic("preprojective relations need a finite acyclic quiver")
    dq, star = double_quiver(q)
    per_vertex: dict[int, dict[Path, int]] = {}
    for a in q.arrows:
        ai = dq.arrow_index[a.name]
        si = dq.arrow_index[star[a.name]]
        s = dq.vertex_index[a.source]
        t = dq.vertex_index[a.target]
        # a a* : loop at the target, applied reverse-then-forward
        fwd = Path(t, t, (si, ai))
        per_vertex.setdefault(t, {})[fwd] = per_vertex.setdefault(t, {}).get(fwd, 0) + 1
        # a* a : loop at the source, with the opposite sign
        bwd = Path(s, s, (ai, si))
        per_vertex.setdefault(s, {})[bwd] = per_vertex.setdefault(s, {}).get(bwd, 0) - 1
    relations = []
    for v in sorted(per_vertex):
        el = AlgebraElement(dq, field, per_vertex[v])
        if not el.is_zero():
            relations.append(el)
    return Presentation(dq, tuple(relations), field, base_quiver=q, star=star)


def _loop_power(gq: CartanQuiver, vertex: str, n: int) -> tuple[int, ...]:
    idx = gq.quiver.arrow_index[gq.loops[vertex]]
    return (idx,) * n


def weighted_path_presentation(triple: CartanTriple, field: Field) -> Presentation:
    """Nilpotency and commutativity relations over the oriented Cartan quiver."""
    gq = quiver_of_cartan(triple, tilde=False)
    q = gq.quiver
    vi = q.vertex_index
    relations = []
    for k in triple.index:
        loop = Path(vi[k], vi[k], _loop_power(gq, k, triple.d(k)))
        relations.append(AlgebraElement(q, field, {loop: 1}))
    for (i, j) in triple.omega:
        e_i = triple.d(i) // triple.gcd_d(i, j)
        e_j = triple.d(j) // triple.gcd_d(i, j)
        for g in range(1, triple.gcd_c(i, j) + 1):
            a = q.arrow_index[gq.arrow_names[(i, j, g)]]
            left = Path(vi[j], vi[i], (a,) + _loop_power(gq, i, e_i))
            right = Path(vi[j], vi[i], _loop_power(gq, j, e_j) + (a,))
            relations.append(AlgebraElement(q, field, {left: 1, right: -1}))
    return Presentation(q, tuple(relations), field, cartan=gq)


def generalized_preprojective_presentation(triple: CartanTriple, field: Field) -> Presentation:
    """Nilpotency, commutativity and mesh relations over the doubled Cartan quiver.

    The mesh at a vertex signs each oriented pair +1 and each opposite pair -1
    and spreads the loop across the two sides in all ways.
    """
    gq = quiver_of_cartan(triple, tilde=True)
    q = gq.quiver
    vi = q.vertex_index
    both = list(triple.omega) + [(j, i) for (i, j) in triple.omega]
    relations = []
    for k in triple.index:
        loop = Path(vi[k], vi[k], _loop_power(gq, k, triple.d(k)))
        relations.append(AlgebraElement(q, field, {loop: 1}))
    for (i, j) in both:
        e_i = triple.d(i) // triple.gcd_d(i, j)
        e_j = triple.d(j) // triple.gcd_d(i, j)
        for g in range(1, triple.gcd_c(i, j) + 1):
            a = q.arrow_index[gq.arrow_names[(i, j, g)]]
            left = Path(vi[j], vi[i], (a,) + _loop_power(gq, i, e_i))
            right = Path(vi[j], vi[i], _loop_power(gq, j, e_j) + (a,))
            relations.append(AlgebraElement(q, field, {left: 1, right: -1}))
    omega_set = set(triple.omega)
    for i in triple.index:
        terms: dict[Path, int] = {}
        for j in triple.index:
            if (i, j) not in omega_set and (j, i) not in omega_set:
                continue
            sgn = 1 if (i, j) in omega_set else -1
            reps = triple.d(i) // triple.gcd_d(i, j)
            for g in range(1, triple.gcd_c(i, j) + 1):
                a_ij = q.arrow_index[gq.arrow_names[(i, j, g)]]
                a_ji = q.arrow_index[gq.arrow_names[(j, i, g)]]
                for l in range(reps):
                    arrows = (
                        _loop_power(gq, i, reps - 1 - l)
                        + (a_ji, a_ij)
                        + _loop_power(gq, i, l)
                    )
                    p = Path(vi[i], vi[i], arrows)
                    terms[p] = terms.get(p, 0) + sgn
        el = AlgebraElement(q, field, terms)
        if not el.is_zero():
            relations.append(el)
    return Presentation(q, tuple(relations), field, cartan=gq)


# -- JSON interchange ---------------------------------------------------------


def _coeff_from_json(raw, field: Field):
    if isinstance(raw, str):
        return field.normalize(Fraction(raw))
    return field.normalize(raw)


def presentation_from_json(data: dict, field: Field) -> Presentation:
    quiver, _ = quiver_from_json(data["quiver"])
    relations = []
    for rel in data["relations"]:
        terms: dict[Path, object] = {}
        for term in rel:
            path = path_from_arrow_names(quiver, term.get("path", ()), term.get("vertex"))
            c = _coeff_from_json(term.get("coeff", 1), field)
            if path in terms:
                terms[path] = field.add(terms[path], c)
            else:
                terms[path] = c
        el = AlgebraElement(quiver, field, terms)
        if el.is_zero():
            raise InvalidPresentation("relation collapses to zero")
        relations.append(el)
    return Presentation(quiver, tuple(relations), field)


def presentation_to_json(p: Presentation) -> dict:
    rels = []
    for rel in p.relations:
        terms = []
        for path, coeff in rel.sorted_terms():
            entry: dict = {
                "coeff": int(coeff) if isinstance(p.field, PrimeField) else str(coeff)
            }
            if path.arrows:
                entry["path"] = [p.quiver.arrows[i].name for i in path.arrows]
            else:
                entry["path"] = []
                entry["vertex"] = p.quiver.vertices[path.source]
            terms.append(entry)
        rels.append(terms)
    return {"quiver": quiver_to_json(p.quiver), "relations": rels}
