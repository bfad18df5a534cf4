"""Paths of a quiver and formal linear combinations of them.

A path stores its arrows in application order: ``arrows[0]`` is applied
first.  The algebra product ``x * y`` applies ``y`` first, matching the usual
right-to-left composition of arrows, so ``e_i * p = p`` exactly when ``p``
ends at ``i``.

The global path order is degree first, then lexicographic on the arrow index
sequence (trivial paths tie-break on their vertex).  Leading terms, the
rewriting engine and normal-word bases all refer to this single order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidPresentation
from .linalg import Field
from .quiver import Quiver


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.arrows)

    def order_key(self):
        return (len(self.arrows), self.arrows, self.source)


def trivial_path(vertex: int) -> Path:
    return Path(vertex, vertex, ())


def compose(p: Path, q: Path) -> Optional[Path]:
    """The product p*q (q applied first), or None if endpoints do not match."""
    if q.target != p.source:
        return None
    return Path(q.source, p.target, q.arrows + p.arrows)


def path_from_arrow_names(quiver: Quiver, names: Iterable[str], source: Optional[str] = None) -> Path:
    """Build a path from arrow ids listed in application order.

    ``source`` is only needed for the trivial path of a vertex.
    """
    names = list(names)
    if not names:
        if source is None:
            raise InvalidPresentation("trivial path needs an explicit vertex")
        return trivial_path(quiver.vertex_index[source])
    idxs = []
    at = None
    for n in names:
        if n not in quiver.arrow_index:
            raise InvalidPresentation(f"unknown arrow id {n!r}")
        a = quiver.arrows[quiver.arrow_index[n]]
        if at is not None and a.source != at:
            raise InvalidPresentation(f"arrows {names} are not consecutive at {n!r}")
        at = a.target
        idxs.append(quiver.arrow_index[n])
    first = quiver.arrows[idxs[0]]
    last = quiver.arrows[idxs[-1]]
    return Path(quiver.vertex_index[first.source], quiver.vertex_index[last.target], tuple(idxs))


def path_arrow_names(quiver: Quiver, p: Path) -> list[str]:
    return [quiver.arrows[i].name for i in p.arrows]


class AlgebraElement:
    """A K-linear combination of paths of a fixed quiver.

    Zero coefficients are dropped; terms iterate in increasing path order.
    """

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: Quiver, field: Field, terms: Optional[dict[Path, object]] = None):
        self.quiver = quiver
        self.field = field
        clean: dict[Path, object] = {}
        for path, coeff in (terms or {}).items():
            c = field.normalize(coeff)
            if c != field.zero:
                clean[path] = c
        self.terms = clean

    @classmethod
    def zero(cls, quiver: Quiver, field: Field) -> "AlgebraElement":
        return cls(quiver, field, {})

    @classmethod
    def from_path(cls, quiver: Quiver, field: Field, path: Path, coeff=1) -> "AlgebraElement":
        return cls(quiver, field, {path: coeff})

    def sorted_terms(self) -> list[tuple[Path, object]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].order_key())

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[Path, object]:
        if not self.terms:
            raise ValueError("zero element has no leading term")
        path = max(self.terms, key=Path.order_key)
        return path, self.terms[path]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = self.field.add(out.get(p, self.field.zero), c)
        return AlgebraElement(self.quiver, self.field, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = self.field.sub(out.get(p, self.field.zero), c)
        return AlgebraElement(self.quiver, self.field, out)

    def scale(self, coeff) -> "AlgebraElement":
        c = self.field.normalize(coeff)
        return AlgebraElement(
            self.quiver, self.field, {p: self.field.mul(c, v) for p, v in self.terms.items()}
        )

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: dict[Path, object] = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                pq = compose(p, q)
                if pq is None:
                    continue
                c = self.field.mul(cp, cq)
                prev = out.get(pq, self.field.zero)
                out[pq] = self.field.add(prev, c)
        return AlgebraElement(self.quiver, self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.quiver == other.quiver
            and self.field == other.field
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for path, coeff in self.sorted_terms():
            word = "*".join(reversed(path_arrow_names(self.quiver, path))) or f"e_{self.quiver.vertices[path.source]}"
            bits.append(f"{coeff}·{word}")
        return " + ".join(bits)
