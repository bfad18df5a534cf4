"""Degreewise span oracle for quotients by length-homogeneous relations.

This computes the dimension of a path algebra quotient one path length at a
time: the span of all products (left path) * (relation) * (right path) of a
given total length is ranked inside the space of paths of that length.  It
shares only the row reduction primitive with the rewriting engine and serves
as its cross-check.
"""

from __future__ import annotations

from .errors import DimensionCapExceeded, InvalidPresentation
from .linalg import rref
from .paths import Path, trivial_path
from .presentations import Presentation


def _homogeneous_components(presentation: Presentation) -> list[tuple[int, int, int, dict]]:
    """Split relations into endpoint components; each must be length-homogeneous.

    Returns (degree, source, target, terms) tuples.
    """
    comps = []
    for rel in presentation.relations:
        grouped: dict[tuple[int, int], dict[Path, object]] = {}
        for p, c in rel.terms.items():
            grouped.setdefault((p.source, p.target), {})[p] = c
        for (s, t), terms in grouped.items():
            degrees = {p.degree for p in terms}
            if len(degrees) != 1:
                raise InvalidPresentation(
                    "span oracle needs length-homogeneous relations"
                )
            comps.append((degrees.pop(), s, t, terms))
    return comps


def graded_dimension_oracle(presentation: Presentation, dim_cap: int = 100_000) -> int:
    """Total dimension of the quotient, summed over path lengths.

    Stops at the first length with no surviving classes; since the algebra is
    generated in lengths 0 and 1, everything beyond is zero as well.
    """
    q = presentation.quiver
    field = presentation.field
    comps = _homogeneous_components(presentation)
    by_source: dict[int, list[int]] = {}
    for idx, a in enumerate(q.arrows):
        by_source.setdefault(q.vertex_index[a.source], []).append(idx)

    def target(ai: int) -> int:
        return q.vertex_index[q.arrows[ai].target]

    paths_by_deg: list[list[Path]] = [[trivial_path(v) for v in range(len(q.vertices))]]
    total = len(q.vertices)
    degree = 0
    while True:
        degree += 1
        prev = paths_by_deg[degree - 1]
        current = [
            Path(w.source, target(a), w.arrows + (a,))
            for w in prev
            for a in by_source.get(w.target, ())
        ]
        if not current:
            break
        paths_by_deg.append(current)
        index = {p: i for i, p in enumerate(current)}
        span_rows = []
        for rel_deg, s, t, terms in comps:
            if rel_deg > degree:
                continue
            for du in range(degree - rel_deg + 1):
                dv = degree - rel_deg - du
                lefts = [u for u in paths_by_deg[du] if u.source == t]
                rights = [v for v in paths_by_deg[dv] if v.target == s]
                for u in lefts:
                    for v in rights:
                        row = [field.zero] * len(current)
                        for p, c in terms.items():
                            full = Path(v.source, u.target, v.arrows + p.arrows + u.arrows)
                            row[index[full]] = field.add(row[index[full]], c)
                        span_rows.append(row)
        rank = rref(span_rows, len(current), field).dim if span_rows else 0
        alive = len(current) - rank
        total += alive
        if alive == 0:
            break
        if total > dim_cap:
            raise DimensionCapExceeded(f"span oracle passed cap {dim_cap}")
    return total
