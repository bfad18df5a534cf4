"""Quivers, quiver automorphism groups, folding, and Cartan triples."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    ActionInvalid,
    InvalidTriple,
    MixedOrientation,
    NonIntegralFold,
    NotAcyclic,
)

GROUP_CLOSURE_CAP = 10_000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with string vertex and arrow ids."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ActionInvalid("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ActionInvalid("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ActionInvalid(f"arrow {a.name} has undeclared endpoint")

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        outs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
            outs[a.source].append(a.target)
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in outs[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == len(self.vertices)

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]


def make_quiver(vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]) -> Quiver:
    """Build a quiver from (name, source, target) triples."""
    return Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))


def double_quiver(q: Quiver) -> tuple[Quiver, dict[str, str]]:
    """Add a reverse arrow ``a*`` per arrow ``a``; the map pairs both ways."""
    star: dict[str, str] = {}
    arrows = list(q.arrows)
    for a in q.arrows:
        rev = Arrow(a.name + "*", a.target, a.source)
        arrows.append(rev)
        star[a.name] = rev.name
        star[rev.name] = a.name
    return Quiver(q.vertices, tuple(arrows)), star


class QuiverAutomorphism:
    """A pair of compatible permutations of vertices and arrows."""

    def __init__(self, quiver: Quiver, vertex_map: Mapping[str, str], arrow_map: Mapping[str, str]):
        self.quiver = quiver
        self.vertex_map = dict(vertex_map)
        self.arrow_map = dict(arrow_map)
        self._validate()
        self.key = (
            tuple(self.vertex_map[v] for v in quiver.vertices),
            tuple(self.arrow_map[a.name] for a in quiver.arrows),
        )

    def _validate(self):
        q = self.quiver
        if sorted(self.vertex_map) != sorted(q.vertices) or sorted(
            self.vertex_map.values()
        ) != sorted(q.vertices):
            raise ActionInvalid("vertex map is not a permutation of the vertices")
        names = sorted(a.name for a in q.arrows)
        if sorted(self.arrow_map) != names or sorted(self.arrow_map.values()) != names:
            raise ActionInvalid("arrow map is not a permutation of the arrows")
        by_name = {a.name: a for a in q.arrows}
        for a in q.arrows:
            img = by_name[self.arrow_map[a.name]]
            if img.source != self.vertex_map[a.source] or img.target != self.vertex_map[a.target]:
                raise ActionInvalid(
                    f"arrow map breaks incidence on {a.name}: "
                    f"g(s), g(t) = {self.vertex_map[a.source]}, {self.vertex_map[a.target]}"
                )

    @classmethod
    def identity(cls, quiver: Quiver) -> "QuiverAutomorphism":
        return cls(quiver, {v: v for v in quiver.vertices}, {a.name: a.name for a in quiver.arrows})

    def compose(self, other: "QuiverAutomorphism") -> "QuiverAutomorphism":
        """self applied after other."""
        return QuiverAutomorphism(
            self.quiver,
            {v: self.vertex_map[other.vertex_map[v]] for v in self.quiver.vertices},
            {a.name: self.arrow_map[other.arrow_map[a.name]] for a in self.quiver.arrows},
        )

    def is_identity(self) -> bool:
        return all(v == w for v, w in self.vertex_map.items()) and all(
            a == b for a, b in self.arrow_map.items()
        )

    def __eq__(self, other):
        return isinstance(other, QuiverAutomorphism) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def extend_to_double(g: QuiverAutomorphism, dq: Quiver, star: dict[str, str]) -> QuiverAutomorphism:
    """Extend an automorphism of Q to its double by g(a*) = g(a)*."""
    arrow_map = dict(g.arrow_map)
    for a, rev in star.items():
        if a in g.arrow_map:
            arrow_map[star[a]] = star[g.arrow_map[a]]
    return QuiverAutomorphism(dq, g.vertex_map, arrow_map)


class GroupAction:
    """A finite group acting on a quiver by automorphisms.

    The default constructor closes a generating set of automorphisms under
    composition (a faithful action); :meth:`cyclic` builds a cyclic group of
    prescribed order whose generator may act with a kernel.  ``elements[k]``
    is the automorphism of abstract element ``k`` (repeats allowed when the
    action is not faithful), and ``mult``/``inverse`` give the abstract group
    structure on indices, with the identity at index 0.
    """

    def __init__(self, quiver: Quiver, generators: Sequence[QuiverAutomorphism], cap: int = GROUP_CLOSURE_CAP):
        self.quiver = quiver
        self.generators = list(generators)
        for g in self.generators:
            if g.quiver is not quiver and g.quiver != quiver:
                raise ActionInvalid("generator defined on a different quiver")
        ident = QuiverAutomorphism.identity(quiver)
        elements = [ident]
        index = {ident.key: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for el in frontier:
                for g in self.generators:
                    comp = g.compose(el)
                    if comp.key not in index:
                        if len(elements) >= cap:
                            raise ActionInvalid(f"group closure exceeded cap {cap}")
                        index[comp.key] = len(elements)
                        elements.append(comp)
                        nxt.append(comp)
            frontier = nxt
        self.elements: list[QuiverAutomorphism] = elements
        self.order = len(elements)
        # finite closure of bijections under composition always contains inverses
        for el in elements:
            inv_v = {w: v for v, w in el.vertex_map.items()}
            inv_a = {b: a for a, b in el.arrow_map.items()}
            if QuiverAutomorphism(quiver, inv_v, inv_a).key not in index:
                raise ActionInvalid("closure is not a group")
        o = self.order
        self.mult = [[index[elements[i].compose(elements[j]).key] for j in range(o)] for i in range(o)]
        self.inverse = [next(j for j in range(o) if self.mult[i][j] == 0) for i in range(o)]
        self.cyclic_generator = self._find_cyclic_generator()
        self.is_cyclic = self.cyclic_generator is not None

    @classmethod
    def cyclic(cls, quiver: Quiver, sigma: QuiverAutomorphism, order: int) -> "GroupAction":
        """Cyclic group of the given order acting through powers of ``sigma``.

        The automorphism order of ``sigma`` must divide ``order``; when it
        divides properly the action is not faithful.
        """
        if order < 1:
            raise ActionInvalid("group order must be positive")
        powers = [QuiverAutomorphism.identity(quiver)]
        for _ in range(order - 1):
            powers.append(sigma.compose(powers[-1]))
        if not sigma.compose(powers[-1]).is_identity():
            raise ActionInvalid(f"generator order does not divide {order}")
        obj = cls.__new__(cls)
        obj.quiver = quiver
        obj.generators = [sigma]
        obj.elements = powers
        obj.order = order
        obj.mult = [[(i + j) % order for j in range(order)] for i in range(order)]
        obj.inverse = [(-i) % order for i in range(order)]
        obj.cyclic_generator = sigma
        obj.is_cyclic = True
        return obj

    def _find_cyclic_generator(self) -> Optional[QuiverAutomorphism]:
        for el in self.elements:
            power = el
            count = 1
            while not power.is_identity():
                power = el.compose(power)
                count += 1
                if count > self.order:
                    break
            if count == self.order:
                return el
        return None

    def element_order(self, g: QuiverAutomorphism) -> int:
        power = g
        count = 1
        while not power.is_identity():
            power = g.compose(power)
            count += 1
        return count


@dataclass(frozen=True)
class Orbits:
    vertex_orbits: tuple[tuple[str, ...], ...]
    arrow_orbits: tuple[tuple[str, ...], ...]
    orbit_of_vertex: Mapping[str, int]
    orbit_of_arrow: Mapping[str, int]
    vertex_stabilizers: Mapping[str, tuple[int, ...]]
    arrow_stabilizers: Mapping[str, tuple[int, ...]]


def orbits_and_stabilizers(action: GroupAction) -> Orbits:
    """G-orbits on vertices and arrows, with elementwise stabilizers."""
    q = action.quiver
    vorbit_of: dict[str, int] = {}
    vorbits: list[tuple[str, ...]] = []
    for v in q.vertices:
        if v in vorbit_of:
            continue
        members = sorted({g.vertex_map[v] for g in action.elements}, key=q.vertex_index.__getitem__)
        oid = len(vorbits)
        vorbits.append(tuple(members))
        for m in members:
            vorbit_of[m] = oid
    aorbit_of: dict[str, int] = {}
    aorbits: list[tuple[str, ...]] = []
    for a in q.arrows:
        if a.name in aorbit_of:
            continue
        members = sorted({g.arrow_map[a.name] for g in action.elements}, key=q.arrow_index.__getitem__)
        oid = len(aorbits)
        aorbits.append(tuple(members))
        for m in members:
            aorbit_of[m] = oid
    vstab = {
        v: tuple(i for i, g in enumerate(action.elements) if g.vertex_map[v] == v)
        for v in q.vertices
    }
    astab = {
        a.name: tuple(i for i, g in enumerate(action.elements) if g.arrow_map[a.name] == a.name)
        for a in q.arrows
    }
    return Orbits(tuple(vorbits), tuple(aorbits), vorbit_of, aorbit_of, vstab, astab)


def check_star_condition(action: GroupAction) -> bool:
    """True iff every arrow stabilizer equals the intersection of its endpoint stabilizers."""
    orb = orbits_and_stabilizers(action)
    for a in action.quiver.arrows:
        endpoint = set(orb.vertex_stabilizers[a.source]) & set(orb.vertex_stabilizers[a.target])
        if set(orb.arrow_stabilizers[a.name]) != endpoint:
            return False
    return True


@dataclass(frozen=True)
class CartanTriple:
    """A symmetrizable generalized Cartan matrix with symmetrizer and orientation."""

    index: tuple[str, ...]
    C: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]
    omega: tuple[tuple[str, str], ...]

    def __post_init__(self):
        self.validate()

    @cached_property
    def position(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.index)}

    @property
    def rank(self) -> int:
        return len(self.index)

    def c(self, i: str, j: str) -> int:
        return self.C[self.position[i]][self.position[j]]

    def d(self, i: str) -> int:
        return self.D[self.position[i]]

    @cached_property
    def c_matrix(self) -> np.ndarray:
        m = np.array(self.C, dtype=np.int64)
        m.flags.writeable = False
        return m

    def validate(self):
        n = len(self.index)
        if len(self.C) != n or any(len(row) != n for row in self.C):
            raise InvalidTriple("C is not square over the index set")
        if len(self.D) != n:
            raise InvalidTriple("D length does not match the index set")
        for i in range(n):
            if self.C[i][i] != 2:
                raise InvalidTriple(f"diagonal entry C[{i}][{i}] != 2")
            if self.D[i] <= 0:
                raise InvalidTriple("symmetrizer entries must be positive")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if self.C[i][j] > 0:
                    raise InvalidTriple(f"positive off-diagonal entry at ({i},{j})")
                if (self.C[i][j] < 0) != (self.C[j][i] < 0):
                    raise InvalidTriple(f"zero pattern of C not symmetric at ({i},{j})")
                if self.D[i] * self.C[i][j] != self.D[j] * self.C[j][i]:
                    raise InvalidTriple("DC is not symmetric")
        names = set(self.index)
        seen_pairs = set()
        for (i, j) in self.omega:
            if i not in names or j not in names or i == j:
                raise InvalidTriple(f"bad orientation pair ({i},{j})")
            if (i, j) in seen_pairs:
                raise InvalidTriple(f"duplicate orientation pair ({i},{j})")
            seen_pairs.add((i, j))
            if self.c(i, j) >= 0:
                raise InvalidTriple(f"oriented pair ({i},{j}) with c_ij >= 0")
        for i in self.index:
            for j in self.index:
                if i < j and self.c(i, j) < 0:
                    if ((i, j) in seen_pairs) == ((j, i) in seen_pairs):
                        raise InvalidTriple(
                            f"exactly one of ({i},{j}),({j},{i}) must be oriented"
                        )
        # orientation must admit no directed cycle
        outs: dict[str, list[str]] = {v: [] for v in self.index}
        for (i, j) in self.omega:
            outs[i].append(j)
        state: dict[str, int] = {}

        def dfs(v: str):
            state[v] = 1
            for w in outs[v]:
                if state.get(w, 0) == 1:
                    raise InvalidTriple("orientation contains a directed cycle")
                if state.get(w, 0) == 0:
                    dfs(w)
            state[v] = 2

        for v in self.index:
            if state.get(v, 0) == 0:
                dfs(v)

    def gcd_c(self, i: str, j: str) -> int:
        return math.gcd(abs(self.c(i, j)), abs(self.c(j, i)))

    def gcd_d(self, i: str, j: str) -> int:
        return math.gcd(self.d(i), self.d(j))


def symmetric_triple_of_quiver(q: Quiver) -> CartanTriple:
    """The symmetric Cartan matrix of a quiver, identity symmetrizer, arrows as orientation."""
    if not q.is_acyclic:
        raise NotAcyclic("quiver has a directed cycle")
    n = len(q.vertices)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    omega = set()
    vi = q.vertex_index
    for a in q.arrows:
        i, j = vi[a.source], vi[a.target]
        C[i][j] -= 1 if i != j else 0
        C[j][i] -= 1 if i != j else 0
        omega.add((a.target, a.source))
    return CartanTriple(
        tuple(q.vertices),
        tuple(tuple(row) for row in C),
        tuple([1] * n),
        tuple(sorted(omega)),
    )


@dataclass(frozen=True)
class FoldResult:
    triple: CartanTriple
    orbit_members: Mapping[str, tuple[str, ...]]
    orbit_of: Mapping[str, str]
    orbits: Orbits = field(repr=False)


def fold(q: Quiver, action: GroupAction) -> FoldResult:
    """Cartan triple of a group action on a finite acyclic quiver.

    Orbits are named ``o_<least member>``; the off-diagonal entries count
    arrows between orbits scaled by the column orbit size, and the symmetrizer
    entry of an orbit is |G| divided by the orbit size.
    """
    if not q.is_acyclic:
        raise NotAcyclic("folding requires a finite acyclic quiver")
    orb = orbits_and_stabilizers(action)
    names = ["o_" + min(members) for members in orb.vertex_orbits]
    if len(set(names)) != len(names):
        raise ActionInvalid("orbit naming collision")
    size = {names[k]: len(members) for k, members in enumerate(orb.vertex_orbits)}
    orbit_of = {v: names[orb.orbit_of_vertex[v]] for v in q.vertices}
    directed: dict[tuple[str, str], int] = {}
    for a in q.arrows:
        oi, oj = orbit_of[a.source], orbit_of[a.target]
        if oi == oj:
            raise ActionInvalid(f"arrow {a.name} connects vertices in one orbit")
        directed[(oi, oj)] = directed.get((oi, oj), 0) + 1
    for (oi, oj) in directed:
        if (oj, oi) in directed and oi < oj:
            raise MixedOrientation(f"arrows run both ways between {oi} and {oj}")
    n = len(names)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    pos = {name: k for k, name in enumerate(names)}
    totals: dict[frozenset, int] = {}
    for (oi, oj), cnt in directed.items():
        totals[frozenset((oi, oj))] = totals.get(frozenset((oi, oj)), 0) + cnt
    for pair, total in totals.items():
        a, b = sorted(pair, key=pos.__getitem__)
        for (x, y) in ((a, b), (b, a)):
            if total % size[y] != 0:
                raise NonIntegralFold(
                    f"{total} arrows between {a} and {b} not divisible by |{y}| = {size[y]}"
                )
            C[pos[x]][pos[y]] = -(total // size[y])
    D = tuple(action.order // size[name] for name in names)
    omega = tuple(sorted((oj, oi) for (oi, oj) in directed))
    triple = CartanTriple(tuple(names), tuple(tuple(r) for r in C), D, omega)
    members = {names[k]: orb.vertex_orbits[k] for k in range(n)}
    return FoldResult(triple, members, orbit_of, orb)


@dataclass(frozen=True)
class CartanQuiver:
    """Quiver of a Cartan triple, with loop and arrow bookkeeping."""

    quiver: Quiver
    loops: Mapping[str, str]  # vertex -> loop arrow name
    arrow_names: Mapping[tuple[str, str, int], str]  # (i, j, g) -> name
    tilde: bool


def quiver_of_cartan(triple: CartanTriple, tilde: bool = False) -> CartanQuiver:
    """The quiver with one loop per vertex and gcd(c_ij, c_ji) arrows per oriented pair.

    With ``tilde=True`` each arrow gets a companion in the opposite direction;
    loops are never doubled.
    """
    arrows: list[tuple[str, str, str]] = []
    loops: dict[str, str] = {}
    names: dict[tuple[str, str, int], str] = {}
    for v in triple.index:
        loop = f"eps_{v}"
        loops[v] = loop
        arrows.append((loop, v, v))
    for (i, j) in triple.omega:
        for g in range(1, triple.gcd_c(i, j) + 1):
            name = f"a_{i}_{j}_{g}"
            names[(i, j, g)] = name
            arrows.append((name, j, i))
            if tilde:
                rev = f"a_{j}_{i}_{g}"
                names[(j, i, g)] = rev
                arrows.append((rev, i, j))
    return CartanQuiver(make_quiver(triple.index, arrows), loops, names, tilde)


# -- JSON interchange ---------------------------------------------------------


def quiver_from_json(data: dict) -> tuple[Quiver, Optional[GroupAction]]:
    try:
        q = make_quiver(
            [str(v) for v in data["vertices"]],
            [(str(a["id"]), str(a["from"]), str(a["to"])) for a in data["arrows"]],
        )
    except (KeyError, TypeError) as exc:
        raise ActionInvalid(f"malformed quiver JSON: {exc}") from exc
    action = None
    if "action" in data and data["action"] is not None:
        try:
            gens = [
                QuiverAutomorphism(q, g["vertex_map"], g["arrow_map"])
                for g in data["action"]["generators"]
            ]
        except (KeyError, TypeError) as exc:
            raise ActionInvalid(f"malformed action JSON: {exc}") from exc
        action = GroupAction(q, gens)
    return q, action


def quiver_to_json(q: Quiver, action: Optional[GroupAction] = None) -> dict:
    data: dict = {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.name, "from": a.source, "to": a.target} for a in q.arrows],
    }
    if action is not None:
        data["action"] = {
            "generators": [
                {"vertex_map": dict(g.vertex_map), "arrow_map": dict(g.arrow_map)}
                for g in action.generators
            ]
        }
    return data


def triple_from_json(data: dict) -> CartanTriple:
    try:
        return CartanTriple(
            tuple(str(i) for i in data["index"]),
            tuple(tuple(int(x) for x in row) for row in data["C"]),
            tuple(int(x) for x in data["D"]),
            tuple(sorted((str(i), str(j)) for i, j in data["Omega"])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidTriple(f"malformed Cartan JSON: {exc}") from exc


def triple_to_json(t: CartanTriple) -> dict:
    return {
        "index": list(t.index),
        "C": [list(row) for row in t.C],
        "D": list(t.D),
        "Omega": [list(pair) for pair in t.omega],
    }
