"""Weyl groups on the root lattice, Demazure products, and folding maps.

Elements are integer matrices acting on coordinate columns in the simple
root basis, with the reflection convention r_i(alpha_j) = alpha_j - c_ij
alpha_i.  The transpose convention would give an isomorphic group; only the
abstract structure is consumed downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import CapExceeded, InvalidCartan, NotReduced
from .quiver import CartanTriple, Quiver, symmetric_triple_of_quiver

DEFAULT_ELEMENT_CAP = 100_000
_ENTRY_GUARD = 2**40

# order of r_i r_j as a function of c_ij * c_ji (None = infinite)
_BRAID_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


def validate_cartan(C) -> tuple[int, ...]:
    """Check (C1)-(C3) for an integer matrix; returns a minimal symmetrizer."""
    M = np.asarray(C, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidCartan("Cartan matrix must be square")
    n = M.shape[0]
    for i in range(n):
        if M[i, i] != 2:
            raise InvalidCartan(f"diagonal entry {M[i, i]} at {i} (must be 2)")
        for j in range(n):
            if i == j:
                continue
            if M[i, j] > 0:
                raise InvalidCartan(f"positive off-diagonal entry at ({i},{j})")
            if (M[i, j] < 0) != (M[j, i] < 0):
                raise InvalidCartan(f"asymmetric zero pattern at ({i},{j})")
    # symmetrizability: propagate weights along the nonzero pattern
    weights: list[Optional[Fraction]] = [None] * n
    for start in range(n):
        if weights[start] is not None:
            continue
        weights[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if M[i, j] == 0 or i == j:
                    continue
                w = weights[i] * Fraction(int(M[i, j]), int(M[j, i]))
                if weights[j] is None:
                    weights[j] = w
                    stack.append(j)
                elif weights[j] != w:
                    raise InvalidCartan("matrix is not symmetrizable")
    denom = math.lcm(*(w.denominator for w in weights)) if n else 1
    d = [int(w * denom) for w in weights]
    g = math.gcd(*d) if d else 1
    d = [x // g for x in d]
    if any(x <= 0 for x in d):
        raise InvalidCartan("symmetrizer is not positive")
    return tuple(d)


def simple_reflection_matrix(C, i: int) -> np.ndarray:
    """Matrix of the i-th simple reflection in the simple root basis."""
    validate_cartan(C)
    M = np.asarray(C, dtype=np.int64)
    n = M.shape[0]
    R = np.eye(n, dtype=np.int64)
    R[i, :] -= M[i, :]
    return R


@dataclass
class WeylGroup:
    """A fully enumerated Weyl group with length and multiplication tables."""

    cartan: np.ndarray
    rank: int
    matrices: list[np.ndarray]
    index: dict[bytes, int]
    lengths: np.ndarray
    right: np.ndarray  # right[w, i] = index of w * r_i
    left: np.ndarray  # left[w, i] = index of r_i * w
    _reduced_cache: dict[int, list[list[int]]] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.matrices)

    @property
    def identity(self) -> int:
        return 0

    @property
    def longest(self) -> int:
        top = int(np.argmax(self.lengths))
        if int(np.sum(self.lengths == self.lengths[top])) != 1:
            raise InvalidCartan("longest element is not unique")
        return top

    def index_of(self, matrix: np.ndarray) -> int:
        return self.index[np.ascontiguousarray(matrix, dtype=np.int64).tobytes()]

    def left_descents(self, w: int) -> list[int]:
        lw = self.lengths[w]
        return [i for i in range(self.rank) if self.lengths[self.left[w, i]] < lw]

    def right_descents(self, w: int) -> list[int]:
        lw = self.lengths[w]
        return [i for i in range(self.rank) if self.lengths[self.right[w, i]] < lw]

    def multiply(self, u: int, v: int) -> int:
        w = u
        for i in reduced_word(self, v):
            w = int(self.right[w, i])
        return w

    def inverse(self, w: int) -> int:
        u = self.identity
        for i in reversed(reduced_word(self, w)):
            u = int(self.right[u, i])
        return u


def enumerate_weyl(C, element_cap: int = DEFAULT_ELEMENT_CAP) -> WeylGroup:
    """Breadth-first enumeration from the identity; lengths are BFS depths."""
    M = np.asarray(C, dtype=np.int64)
    validate_cartan(M)
    n = M.shape[0]
    gens = [simple_reflection_matrix(M, i) for i in range(n)]
    ident = np.eye(n, dtype=np.int64)
    matrices = [ident]
    index = {ident.tobytes(): 0}
    lengths = [0]
    right_rows: list[list[int]] = [[-1] * n]
    frontier = [0]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n):
                m = matrices[w] @ gens[i]
                if np.abs(m).max() > _ENTRY_GUARD:
                    raise CapExceeded(
                        "matrix entries grew past the safe range; the group looks infinite"
                    )
                key = m.tobytes()
                at = index.get(key)
                if at is None:
                    if len(matrices) >= element_cap:
                        raise CapExceeded(
                            f"group enumeration exceeded cap {element_cap}"
                        )
                    at = len(matrices)
                    index[key] = at
                    matrices.append(m)
                    lengths.append(lengths[w] + 1)
                    right_rows.append([-1] * n)
                    nxt.append(at)
                right_rows[w][i] = at
        frontier = nxt
    right = np.array(right_rows, dtype=np.int64)
    left = np.empty_like(right)
    for w, mat in enumerate(matrices):
        for i in range(n):
            left[w, i] = index[(gens[i] @ mat).tobytes()]
    return WeylGroup(M, n, matrices, index, np.array(lengths, dtype=np.int64), right, left)


def weyl_of_triple(triple: CartanTriple, element_cap: int = DEFAULT_ELEMENT_CAP) -> WeylGroup:
    return enumerate_weyl(triple.c_matrix, element_cap)


def weyl_of_quiver(q: Quiver, element_cap: int = DEFAULT_ELEMENT_CAP) -> WeylGroup:
    return enumerate_weyl(symmetric_triple_of_quiver(q).c_matrix, element_cap)


def reduced_word(W: WeylGroup, w: int) -> list[int]:
    """A reduced word for w by greedy left-descent stripping."""
    word = []
    while w != W.identity:
        i = W.left_descents(w)[0]
        word.append(i)
        w = int(W.left[w, i])
    return word


def all_reduced_words(W: WeylGroup, w: int) -> list[list[int]]:
    """Every reduced word of w, via left descents (memoized per group)."""
    cached = W._reduced_cache.get(w)
    if cached is not None:
        return cached
    if w == W.identity:
        out = [[]]
    else:
        out = []
        for i in W.left_descents(w):
            for rest in all_reduced_words(W, int(W.left[w, i])):
                out.append([i] + rest)
    W._reduced_cache[w] = out
    return out


def demazure_step(W: WeylGroup, u: int, i: int) -> int:
    """u * r_i when the length goes up, else u."""
    v = int(W.right[u, i])
    return v if W.lengths[v] > W.lengths[u] else u


def demazure_fold(W: WeylGroup, word: Sequence[int], start: Optional[int] = None) -> int:
    u = W.identity if start is None else start
    for i in word:
        u = demazure_step(W, u, i)
    return u


def demazure_product(W: WeylGroup, u: int, v: int) -> int:
    """Monoid product: fold a reduced word of v into u."""
    return demazure_fold(W, reduced_word(W, v), start=u)


@dataclass(frozen=True)
class WeylElement:
    group: WeylGroup
    idx: int

    @property
    def matrix(self) -> np.ndarray:
        return self.group.matrices[self.idx]

    @property
    def length(self) -> int:
        return int(self.group.lengths[self.idx])


@dataclass(frozen=True)
class WeylMonoidElement:
    """An element of the 0-Hecke realization of the Weyl monoid."""

    element: WeylElement

    def __mul__(self, other: "WeylMonoidElement") -> "WeylMonoidElement":
        W = self.element.group
        return WeylMonoidElement(
            WeylElement(W, demazure_product(W, self.element.idx, other.element.idx))
        )


def rho(W: WeylGroup, word: Sequence[int]) -> WeylMonoidElement:
    """Left-to-right Demazure fold of an arbitrary word from the identity."""
    return WeylMonoidElement(WeylElement(W, demazure_fold(W, word)))


def weyl_relation_report(W: WeylGroup) -> dict:
    """Check the defining relations on the generator matrices."""
    n = W.rank
    ident = np.eye(n, dtype=np.int64)
    gens = [W.matrices[W.right[W.identity, i]] for i in range(n)]
    involutions = [bool(np.array_equal(g @ g, ident)) for g in gens]
    braid = []
    for i in range(n):
        for j in range(i + 1, n):
            prod = int(W.cartan[i, j] * W.cartan[j, i])
            expected = _BRAID_ORDER.get(prod)
            if expected is None:
                braid.append({"pair": [i, j], "order": None, "ok": True})
                continue
            m = gens[i] @ gens[j]
            power = np.linalg.matrix_power(m, expected)
            ok = bool(np.array_equal(power, ident))
            # the order must be exactly the expected value, not a divisor
            for k in range(1, expected):
                if np.array_equal(np.linalg.matrix_power(m, k), ident):
                    ok = False
            braid.append({"pair": [i, j], "order": expected, "ok": ok})
    return {"involutions": involutions, "braid": braid}


# -- folding ------------------------------------------------------------------


@dataclass
class FoldingMap:
    """Expansion of folded generators into commuting products of unfolded ones."""

    source: WeylGroup  # Weyl group of the folded Cartan matrix
    target: WeylGroup  # Weyl group of the unfolded quiver
    orbit_positions: tuple[tuple[int, ...], ...]  # source index -> target indices

    def expand_word(self, word: Sequence[int]) -> list[int]:
        out: list[int] = []
        for letter in word:
            out.extend(self.orbit_positions[letter])
        return out

    def psi(self, w: int) -> int:
        """Image of a source element under the generator expansion."""
        u = self.target.identity
        for i in self.expand_word(reduced_word(self.source, w)):
            u = int(self.target.right[u, i])
        return u

    def check_reduced_image(self, word: Sequence[int]) -> bool:
        """A reduced source word must expand to a reduced target word."""
        w = self.source.identity
        for i in word:
            w = int(self.source.right[w, i])
        if int(self.source.lengths[w]) != len(word):
            raise NotReduced(f"{list(word)} is not reduced")
        expanded = self.expand_word(word)
        u = self.target.identity
        for i in expanded:
            u = int(self.target.right[u, i])
        return int(self.target.lengths[u]) == len(expanded)

    def psi_prime(self, m: WeylMonoidElement) -> WeylMonoidElement:
        """Monoid-side expansion: Demazure-fold the expanded reduced word."""
        word = reduced_word(self.source, m.element.idx)
        folded = demazure_fold(self.target, self.expand_word(word))
        return WeylMonoidElement(WeylElement(self.target, folded))


def folding_map(
    source: WeylGroup,
    target: WeylGroup,
    orbit_positions: Sequence[Sequence[int]],
) -> FoldingMap:
    """Build the map after checking that each orbit's generators commute."""
    for members in orbit_positions:
        for a in members:
            for b in members:
                if a != b and target.cartan[a, b] != 0:
                    raise InvalidCartan(
                        "orbit contains non-commuting simple reflections"
                    )
    return FoldingMap(source, target, tuple(tuple(m) for m in orbit_positions))


def fixed_subgroup(W: WeylGroup, vertex_perms: Sequence[Sequence[int]]) -> list[int]:
    """Indices of elements fixed by every simultaneous row/column permutation."""
    perms = [np.asarray(p, dtype=np.int64) for p in vertex_perms]
    invs = []
    for p in perms:
        inv = np.empty_like(p)
        inv[p] = np.arange(len(p))
        invs.append(inv)
    out = []
    for w, mat in enumerate(W.matrices):
        if all(np.array_equal(mat[np.ix_(inv, inv)], mat) for inv in invs):
            out.append(w)
    return out


def weyl_report_json(W: WeylGroup) -> dict:
    hist: dict[int, int] = {}
    for l in W.lengths:
        hist[int(l)] = hist.get(int(l), 0) + 1
    return {
        "order": W.order,
        "rank": W.rank,
        "length_histogram": {str(k): v for k, v in sorted(hist.items())},
        "longest_reduced_word": reduced_word(W, W.longest),
        "relations": weyl_relation_report(W),
    }
