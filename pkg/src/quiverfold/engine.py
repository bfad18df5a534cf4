"""Completion-based normal form engine for path algebra quotients.

Relations are completed into a confluent rewriting system under the
degree-first, arrow-lexicographic path order; the quotient algebra is then
realized on the finite set of irreducible words.  Non-finite-dimensional
quotients escape through the degree or dimension caps.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .algebra import FiniteDimAlgebra
from .errors import (
    DegreeCapExceeded,
    DimensionCapExceeded,
    InvalidPresentation,
    RelationNotPreserved,
)
from .linalg import PrimeField, rref
from .paths import AlgebraElement, Path, path_arrow_names, trivial_path
from .presentations import Presentation
from .quiver import Quiver, QuiverAutomorphism

DEFAULT_DEGREE_CAP = 40
DEFAULT_DIM_CAP = 5000


@dataclass
class Rule:
    """A rewriting rule: the lead word equals the replacement polynomial."""

    lead: Path
    rhs: dict[Path, object]


def path_str(quiver: Quiver, p: Path) -> str:
    if not p.arrows:
        return f"e_{quiver.vertices[p.source]}"
    return ".".join(path_arrow_names(quiver, p))


def _split_endpoint_components(el: AlgebraElement) -> list[dict[Path, object]]:
    comps: dict[tuple[int, int], dict[Path, object]] = {}
    for p, c in el.terms.items():
        comps.setdefault((p.source, p.target), {})[p] = c
    return list(comps.values())


class _Rewriter:
    def __init__(self, quiver: Quiver, field, priority: Sequence[int]):
        self.quiver = quiver
        self.field = field
        self.priority = tuple(priority)
        self.rules: list[Rule] = []

    def key(self, p: Path):
        return (len(p.arrows), tuple(self.priority[a] for a in p.arrows), p.source)

    def find_occurrence(self, m: Path) -> Optional[tuple[int, int]]:
        arrows = m.arrows
        n = len(arrows)
        for ridx, rule in enumerate(self.rules):
            la = rule.lead.arrows
            L = len(la)
            if L > n:
                continue
            for pos in range(n - L + 1):
                if arrows[pos : pos + L] == la:
                    return ridx, pos
        return None

    def normal_form(self, poly: dict[Path, object]) -> dict[Path, object]:
        f = self.field
        out: dict[Path, object] = {}
        work = {p: f.normalize(c) for p, c in poly.items()}
        while work:
            m = max(work, key=self.key)
            c = work.pop(m)
            if c == f.zero:
                continue
            hit = self.find_occurrence(m)
            if hit is None:
                prev = out.get(m, f.zero)
                s = f.add(prev, c)
                if s == f.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
                continue
            ridx, pos = hit
            rule = self.rules[ridx]
            L = len(rule.lead.arrows)
            pre = m.arrows[:pos]
            post = m.arrows[pos + L :]
            for t, ct in rule.rhs.items():
                arrows = pre + t.arrows + post
                nm = Path(m.source, m.target, arrows)
                prev = work.get(nm, f.zero)
                s = f.add(prev, f.mul(c, ct))
                if s == f.zero:
                    work.pop(nm, None)
                else:
                    work[nm] = s
        return out

    def make_rule(self, poly: dict[Path, object]) -> Rule:
        f = self.field
        lead = max(poly, key=self.key)
        if not lead.arrows:
            raise InvalidPresentation("relations collapse a trivial path")
        inv = f.inv(poly[lead])
        rhs = {t: f.mul(inv, f.neg(c)) for t, c in poly.items() if t != lead}
        return Rule(lead, rhs)


def _ambiguities(r1: Rule, r2: Rule, i1: int, i2: int):
    """Overlap and inclusion ambiguities of two lead words.

    Yields (word_path, kind, data) where resolving the word two ways gives an
    S-polynomial.
    """
    w1, w2 = r1.lead.arrows, r2.lead.arrows
    L1, L2 = len(w1), len(w2)
    # tail of w1 meets head of w2
    for k in range(1, min(L1, L2)):
        if w1[L1 - k :] == w2[:k]:
            yield ("overlap", k)
    # w2 strictly inside w1
    if L2 < L1:
        for pos in range(L1 - L2 + 1):
            if w1[pos : pos + L2] == w2:
                yield ("inclusion", pos)
    elif L1 == L2 and i1 != i2 and w1 == w2:
        yield ("inclusion", 0)


def _complete(rw: _Rewriter, components: list[dict[Path, object]], degree_cap: int):
    counter = itertools.count()
    heap: list = []

    def queue_obstructions(new_idx: int):
        rn = rw.rules[new_idx]
        for idx, other in enumerate(rw.rules):
            for kind, pos in _ambiguities(rn, other, new_idx, idx):
                deg = _ambiguity_degree(rn, other, kind, pos)
                heapq.heappush(heap, (deg, next(counter), new_idx, idx, kind, pos))
            if idx != new_idx:
                for kind, pos in _ambiguities(other, rn, idx, new_idx):
                    deg = _ambiguity_degree(other, rn, kind, pos)
                    heapq.heappush(heap, (deg, next(counter), idx, new_idx, kind, pos))

    def add_poly(poly: dict[Path, object]):
        nf = rw.normal_form(poly)
        if not nf:
            return
        rule = rw.make_rule(nf)
        if len(rule.lead.arrows) > degree_cap:
            raise DegreeCapExceeded(
                f"completion reached degree {len(rule.lead.arrows)} > cap {degree_cap}"
            )
        rw.rules.append(rule)
        queue_obstructions(len(rw.rules) - 1)

    for comp in sorted(components, key=lambda c: rw.key(max(c, key=rw.key))):
        add_poly(comp)
    while heap:
        deg, _, i1, i2, kind, pos = heapq.heappop(heap)
        if deg > degree_cap:
            raise DegreeCapExceeded(
                f"ambiguity of degree {deg} exceeds cap {degree_cap}"
            )
        s_poly = _s_polynomial(rw, rw.rules[i1], rw.rules[i2], kind, pos)
        add_poly(s_poly)


def _ambiguity_degree(r1: Rule, r2: Rule, kind: str, pos: int) -> int:
    if kind == "overlap":
        return len(r1.lead.arrows) + len(r2.lead.arrows) - pos
    return len(r1.lead.arrows)


def _s_polynomial(rw: _Rewriter, r1: Rule, r2: Rule, kind: str, pos: int) -> dict[Path, object]:
    f = rw.field
    w1 = r1.lead.arrows
    w2 = r2.lead.arrows
    if kind == "overlap":
        k = pos
        word = w1 + w2[k:]
        src = r1.lead.source
        tgt = _arrow_target(rw.quiver, word[-1])
        res1 = {
            Path(src, tgt, t.arrows + w2[k:]): c for t, c in r1.rhs.items()
        }
        res2: dict[Path, object] = {}
        head = w1[: len(w1) - k]
        for t, c in r2.rhs.items():
            p = Path(src, tgt, head + t.arrows)
            res2[p] = f.add(res2.get(p, f.zero), c)
    else:
        word = w1
        src, tgt = r1.lead.source, r1.lead.target
        res1 = dict(r1.rhs)
        res2 = {}
        L2 = len(w2)
        for t, c in r2.rhs.items():
            p = Path(src, tgt, word[:pos] + t.arrows + word[pos + L2 :])
            res2[p] = f.add(res2.get(p, f.zero), c)
    out = dict(res1)
    for p, c in res2.items():
        out[p] = f.sub(out.get(p, f.zero), c)
    return {p: c for p, c in out.items() if c != f.zero}


def _arrow_target(quiver: Quiver, arrow_idx: int) -> int:
    return quiver.vertex_index[quiver.arrows[arrow_idx].target]


def _reduce_system(rw: _Rewriter):
    """Minimal leads, fully reduced tails: the canonical rewriting system."""
    # drop rules whose lead strictly contains another rule's lead (all leads
    # are pairwise distinct words by construction)
    keep: list[Rule] = []
    leads = [r.lead.arrows for r in rw.rules]
    for i, rule in enumerate(rw.rules):
        wi = rule.lead.arrows
        redundant = False
        for j, wj in enumerate(leads):
            if i == j or len(wj) >= len(wi):
                continue
            if any(
                wi[pos : pos + len(wj)] == wj for pos in range(len(wi) - len(wj) + 1)
            ):
                redundant = True
                break
        if not redundant:
            keep.append(rule)
    rw.rules = keep
    # a rule's replacement words are smaller than its lead and so never
    # contain it; reducing tails against the full system is safe
    for idx, rule in enumerate(rw.rules):
        rw.rules[idx] = Rule(rule.lead, rw.normal_form(rule.rhs))


class QuotientAlgebra(FiniteDimAlgebra):
    """Finite-dimensional quotient of a path algebra on its normal words."""

    def __init__(self, presentation: Presentation, rewriter: _Rewriter, basis: list[Path], validate: bool = True):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.rewriter = rewriter
        self.basis_paths = tuple(basis)
        self.path_index = {p: i for i, p in enumerate(self.basis_paths)}
        field = presentation.field
        mult: dict[tuple[int, int], tuple[tuple[int, object], ...]] = {}
        for i, bi in enumerate(self.basis_paths):
            for j, bj in enumerate(self.basis_paths):
                if bj.target != bi.source:
                    continue
                prod = Path(bj.source, bi.target, bj.arrows + bi.arrows)
                nf = rewriter.normal_form({prod: field.one})
                entries = tuple(
                    sorted((self.path_index[p], c) for p, c in nf.items())
                )
                if entries:
                    mult[(i, j)] = entries
        idem = [self.path_index[trivial_path(v)] for v in range(len(self.quiver.vertices))]
        super().__init__(
            field,
            [path_str(self.quiver, p) for p in self.basis_paths],
            mult,
            idem,
            self.quiver.vertices,
            validate=validate,
        )

    def reduce(self, element) -> object:
        """Normal form of a path algebra element as a coordinate vector."""
        if isinstance(element, AlgebraElement):
            terms = element.terms
        else:
            terms = element
        nf = self.rewriter.normal_form(terms)
        coords = {}
        for p, c in nf.items():
            idx = self.path_index.get(p)
            if idx is None:
                raise InvalidPresentation(f"normal form left a non-basis word {p}")
            coords[idx] = c
        return self.vector(coords)

    @property
    def rules(self) -> list[Rule]:
        return self.rewriter.rules


def normal_form_engine(
    presentation: Presentation,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    dim_cap: int = DEFAULT_DIM_CAP,
    arrow_priority: Optional[Sequence[int]] = None,
    validate: bool = True,
) -> QuotientAlgebra:
    """Complete the relations and realize the quotient on its normal words.

    Raises DegreeCapExceeded when completion climbs past ``degree_cap`` and
    DimensionCapExceeded when the irreducible-word count passes ``dim_cap``
    (infinite-dimensional quotients end up in one of the two).
    """
    if degree_cap <= 0 or dim_cap <= 0:
        raise InvalidPresentation("caps must be positive")
    q = presentation.quiver
    priority = tuple(arrow_priority) if arrow_priority is not None else tuple(range(len(q.arrows)))
    if sorted(priority) != list(range(len(q.arrows))):
        raise InvalidPresentation("arrow priority must be a permutation")
    rw = _Rewriter(q, presentation.field, priority)
    comps: list[dict[Path, object]] = []
    for rel in presentation.relations:
        comps.extend(_split_endpoint_components(rel))
    _complete(rw, comps, degree_cap)
    _reduce_system(rw)

    # normal words by breadth-first one-arrow extension
    by_source: dict[int, list[int]] = {}
    for idx, a in enumerate(q.arrows):
        by_source.setdefault(q.vertex_index[a.source], []).append(idx)
    suffixes: dict[int, list[Rule]] = {}
    for rule in rw.rules:
        suffixes.setdefault(rule.lead.arrows[-1], []).append(rule)
    words: list[Path] = [trivial_path(v) for v in range(len(q.vertices))]
    level = list(words)
    while level:
        nxt = []
        for w in level:
            for a in by_source.get(w.target, ()):
                arrows = w.arrows + (a,)
                bad = False
                for rule in suffixes.get(a, ()):
                    la = rule.lead.arrows
                    if len(la) <= len(arrows) and arrows[len(arrows) - len(la) :] == la:
                        bad = True
                        break
                if not bad:
                    nxt.append(Path(w.source, _arrow_target(q, a), arrows))
        if len(words) + len(nxt) > dim_cap:
            raise DimensionCapExceeded(
                f"normal words exceed cap {dim_cap}; quotient looks infinite-dimensional"
            )
        words.extend(nxt)
        level = nxt
    words.sort(key=Path.order_key)
    alg = QuotientAlgebra(presentation, rw, words, validate=validate)
    if validate:
        for rel in presentation.relations:
            if rw.normal_form(rel.terms):
                raise InvalidPresentation("a defining relation fails to reduce to zero")
    return alg


def induced_automorphism(alg: QuotientAlgebra, g: QuiverAutomorphism):
    """Matrix (row i = image of basis i) of the automorphism g induces on the quotient.

    Requires g to map the relation ideal into itself; multiplicativity is
    verified on all basis pairs.
    """
    q = alg.quiver
    if g.quiver != q:
        raise RelationNotPreserved("automorphism lives on a different carrier quiver")
    vperm = {q.vertex_index[v]: q.vertex_index[w] for v, w in g.vertex_map.items()}
    aperm = {q.arrow_index[a]: q.arrow_index[b] for a, b in g.arrow_map.items()}

    def map_path(p: Path) -> Path:
        return Path(vperm[p.source], vperm[p.target], tuple(aperm[a] for a in p.arrows))

    field = alg.field
    for rel in alg.presentation.relations:
        image = {}
        for p, c in rel.terms.items():
            mp = map_path(p)
            image[mp] = field.add(image.get(mp, field.zero), c)
        if alg.rewriter.normal_form(image):
            raise RelationNotPreserved(
                "arrow permutation does not preserve the relation ideal"
            )
    rows = [alg.reduce({map_path(p): field.one}) for p in alg.basis_paths]
    if isinstance(field, PrimeField):
        mat = np.vstack([np.asarray(r, dtype=np.int64) for r in rows])
        n = alg.dim
        table = alg.dense_table
        lhs = _kernels.pair_products_mod(mat, mat, table, field.p)
        rhs = _kernels.matmul_mod(table.reshape(n * n, n), mat, field.p)
        if not np.array_equal(lhs, rhs):
            raise RelationNotPreserved("induced map is not multiplicative")
        if rref(mat, n, field).dim != n:
            raise RelationNotPreserved("induced map is singular")
        mat.flags.writeable = False
        return mat
    # generic field: exhaustive bilinear check
    n = alg.dim
    for i in range(n):
        for j in range(n):
            left = alg.multiply(rows[i], rows[j])
            right = alg.zero_vector()
            for k, c in alg.mult.get((i, j), ()):
                for m in range(n):
                    right[m] = field.add(right[m], field.mul(c, rows[k][m]))
            if list(left) != list(right):
                raise RelationNotPreserved("induced map is not multiplicative")
    if rref(rows, n, field).dim != n:
        raise RelationNotPreserved("induced map is singular")
    return [tuple(r) for r in rows]
