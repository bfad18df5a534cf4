"""Two-sided ideals as canonical row spaces, and the monoids they generate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .algebra import FiniteDimAlgebra
from .errors import (
    CapExceeded,
    NonCommutingFactors,
    ParentMismatch,
    UnknownLabel,
)
from .linalg import PrimeField, RowSpace, full_space, rref, rref_matrix, zero_space


class Ideal:
    """A two-sided ideal of a finite-dimensional algebra.

    Canonical: the row space is in reduced echelon form, so two ideals of the
    same algebra are equal exactly when their row lists coincide.  Closure
    under multiplication by every basis element is checked on construction.
    """

    __slots__ = ("algebra", "space")

    def __init__(self, algebra: FiniteDimAlgebra, space: RowSpace, validate: bool = True):
        if space.ambient != algebra.dim or space.field != algebra.field:
            raise ParentMismatch("row space does not match the algebra")
        self.algebra = algebra
        self.space = space
        if validate and not _is_two_sided(algebra, space):
            raise ParentMismatch("subspace is not a two-sided ideal")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def is_zero(self) -> bool:
        return self.space.dim == 0

    @property
    def is_unit(self) -> bool:
        return self.space.dim == self.algebra.dim

    @property
    def key(self):
        return self.space.key

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.algebra is other.algebra
            and self.space == other.space
        )

    def __hash__(self):
        return hash(self.space.key)

    def __repr__(self):
        return f"Ideal(dim={self.dim} of {self.algebra.dim})"


def _closure_candidates_prime(algebra: FiniteDimAlgebra, rows: np.ndarray) -> np.ndarray:
    n = algebra.dim
    p = algebra.field.p
    table = algebra.dense_table
    # b_k * x for every basis k: sum_j x_j c[k, j, m], laid out as (k*m) columns
    left = _kernels.matmul_mod(rows, table.transpose(1, 0, 2).reshape(n, n * n), p)
    # x * b_k: sum_j x_j c[j, k, m]
    right = _kernels.matmul_mod(rows, table.reshape(n, n * n), p)
    return np.vstack([left.reshape(-1, n), right.reshape(-1, n)])


def _is_two_sided(algebra: FiniteDimAlgebra, space: RowSpace) -> bool:
    if space.dim == 0:
        return True
    if isinstance(algebra.field, PrimeField):
        cand = _closure_candidates_prime(algebra, space.matrix)
        res = _kernels.residual_mod(
            space.matrix, np.asarray(space.pivots, dtype=np.int64), cand, algebra.field.p
        )
        return not res.any()
    f = algebra.field
    for row in space.rows:
        for k in range(algebra.dim):
            ek = algebra.vector({k: 1})
            for prod in (algebra.multiply(ek, row), algebra.multiply(row, ek)):
                if not space.contains(prod):
                    return False
    return True


def _span_of_vectors(algebra: FiniteDimAlgebra, vectors) -> RowSpace:
    if isinstance(algebra.field, PrimeField):
        if not len(vectors):
            return zero_space(algebra.dim, algebra.field)
        mat = np.asarray(vectors, dtype=np.int64) % algebra.field.p
        return rref_matrix(mat, algebra.field)
    return rref(list(vectors), algebra.dim, algebra.field)


def _one_sided_closure(algebra: FiniteDimAlgebra, space: RowSpace, side: str) -> RowSpace:
    """Span of all products (basis * row) or (row * basis)."""
    if space.dim == 0:
        return space
    if isinstance(algebra.field, PrimeField):
        n = algebra.dim
        p = algebra.field.p
        table = algebra.dense_table
        flat = (
            table.transpose(1, 0, 2).reshape(n, n * n)
            if side == "left"
            else table.reshape(n, n * n)
        )
        prods = _kernels.matmul_mod(space.matrix, flat, p).reshape(-1, n)
        return rref_matrix(prods, algebra.field)
    f = algebra.field
    out = []
    for row in space.rows:
        for k in range(algebra.dim):
            ek = algebra.vector({k: 1})
            out.append(
                algebra.multiply(ek, row) if side == "left" else algebra.multiply(row, ek)
            )
    return rref(out, algebra.dim, f)


def ideal_generated(algebra: FiniteDimAlgebra, generators) -> Ideal:
    """Two-sided ideal generated by coordinate vectors.

    One left pass and one right pass suffice: the unit lies in the span of the
    basis, so the staged closure already contains the generators.
    """
    span = _span_of_vectors(algebra, list(generators))
    span = _one_sided_closure(algebra, span, "left")
    span = _one_sided_closure(algebra, span, "right")
    return Ideal(algebra, span)


def unit_ideal(algebra: FiniteDimAlgebra) -> Ideal:
    return Ideal(algebra, full_space(algebra.dim, algebra.field), validate=False)


def zero_ideal(algebra: FiniteDimAlgebra) -> Ideal:
    return Ideal(algebra, zero_space(algebra.dim, algebra.field), validate=False)


def vertex_ideal(algebra: FiniteDimAlgebra, label: str) -> Ideal:
    """The ideal generated by 1 - e_label."""
    one = algebra.unit_vector
    e = algebra.idempotent_vector(label)
    if isinstance(algebra.field, PrimeField):
        gen = (one - e) % algebra.field.p
    else:
        gen = [algebra.field.sub(a, b) for a, b in zip(one, e)]
    return ideal_generated(algebra, [gen])


def _product_space(i: Ideal, j: Ideal) -> RowSpace:
    algebra = i.algebra
    if algebra.field != j.algebra.field or i.algebra is not j.algebra:
        raise ParentMismatch("ideals live in different algebras")
    if i.space.dim == 0 or j.space.dim == 0:
        return zero_space(algebra.dim, algebra.field)
    if isinstance(algebra.field, PrimeField):
        prods = _kernels.pair_products_mod(
            i.space.matrix, j.space.matrix, algebra.dense_table, algebra.field.p
        )
        return rref_matrix(prods, algebra.field)
    rows = [
        algebra.multiply(x, y) for x in i.space.rows for y in j.space.rows
    ]
    return rref(rows, algebra.dim, algebra.field)


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    """Product ideal; the span of pairwise products is already two-sided."""
    return Ideal(i.algebra, _product_space(i, j))


@dataclass
class IdealMonoid:
    """A finite monoid of ideals with its full multiplication table."""

    algebra: FiniteDimAlgebra
    labels: tuple[str, ...]
    generator_indices: Mapping[str, int]
    elements: tuple[Ideal, ...]
    table: np.ndarray  # table[i, j] = index of elements[i] * elements[j]
    identity: int = 0

    @property
    def size(self) -> int:
        return len(self.elements)

    def generator(self, label: str) -> Ideal:
        if label not in self.generator_indices:
            raise UnknownLabel(f"unknown generator {label!r}")
        return self.elements[self.generator_indices[label]]

    def index_of(self, ideal: Ideal) -> int:
        for i, el in enumerate(self.elements):
            if el == ideal:
                return i
        raise UnknownLabel("ideal is not a monoid element")

    def check_associativity(self) -> bool:
        t = self.table
        # t[t[i, j], k] vs t[i, t[j, k]] over all triples, via table gathers
        left = t[t, :]  # [i, j, k] = t[t[i, j], k]
        right = t[:, t]  # [i, j, k] = t[i, t[j, k]]
        return bool(np.array_equal(left, right))

    def to_json(self) -> dict:
        return {
            "count": self.size,
            "generators": {label: int(i) for label, i in self.generator_indices.items()},
            "identity": self.identity,
            "elements": [
                {
                    "dimension": el.dim,
                    "is_zero_ideal": el.is_zero,
                    "is_unit": el.is_unit,
                }
                for el in self.elements
            ],
            "table": self.table.tolist(),
        }


def monoid_closure(
    algebra: FiniteDimAlgebra,
    generators: Sequence[tuple[str, Ideal]],
    element_cap: int = 100_000,
    build_table: bool = True,
) -> IdealMonoid:
    """Breadth-first closure under ideal products, starting from the unit ideal.

    Elements are deduplicated by the canonical row space key; new ideals are
    validated once when first registered.
    """
    unit = unit_ideal(algebra)
    elements: list[Ideal] = [unit]
    index: dict = {unit.key: 0}

    def register(space: RowSpace) -> int:
        at = index.get(space.key)
        if at is None:
            if len(elements) >= element_cap:
                raise CapExceeded(f"monoid closure exceeded cap {element_cap}")
            at = len(elements)
            index[space.key] = at
            elements.append(Ideal(algebra, space))
        return at

    gen_indices: dict[str, int] = {}
    for label, ideal in generators:
        if ideal.algebra is not algebra:
            raise ParentMismatch(f"generator {label!r} lives in a different algebra")
        gen_indices[label] = register(ideal.space)

    work = list(range(len(elements)))
    while work:
        at = work.pop()
        for label in gen_indices:
            gen = elements[gen_indices[label]]
            before = len(elements)
            res = register(_product_space(elements[at], gen))
            if res >= before:
                work.append(res)
    size = len(elements)
    table = np.full((size, size), -1, dtype=np.int64)
    if build_table:
        for i in range(size):
            for j in range(size):
                space = _product_space(elements[i], elements[j])
                at = index.get(space.key)
                if at is None:
                    raise CapExceeded("product escaped the generated monoid")
                table[i, j] = at
    return IdealMonoid(
        algebra, tuple(gen_indices), gen_indices, tuple(elements), table
    )


def theta_prime(generators: Mapping[str, Ideal], word: Sequence[str], algebra: FiniteDimAlgebra) -> Ideal:
    """Left-to-right product of labeled generator ideals; empty word gives the unit."""
    out = unit_ideal(algebra)
    for label in word:
        if label not in generators:
            raise UnknownLabel(f"unknown generator label {label!r}")
        out = Ideal(algebra, _product_space(out, generators[label]), validate=False)
    return Ideal(algebra, out.space)


def orbit_ideal(algebra: FiniteDimAlgebra, orbit: Sequence[str]) -> Ideal:
    """Product of the vertex ideals over an orbit, in any order.

    The factors must commute pairwise (no arrows inside the orbit); the check
    is asserted before returning.
    """
    factors = [(v, vertex_ideal(algebra, v)) for v in sorted(orbit)]
    for a, ia in factors:
        for b, ib in factors:
            if a < b and _product_space(ia, ib) != _product_space(ib, ia):
                raise NonCommutingFactors(f"ideals of {a} and {b} do not commute")
    out = unit_ideal(algebra)
    for _, f in factors:
        out = Ideal(algebra, _product_space(out, f), validate=False)
    return Ideal(algebra, out.space)


def invariant_submonoid(monoid: IdealMonoid, matrices: Sequence) -> IdealMonoid:
    """Elements fixed setwise by every automorphism matrix (row convention)."""
    fixed = [
        i
        for i, el in enumerate(monoid.elements)
        if all(_space_stable(el.space, m) for m in matrices)
    ]
    pos = {old: new for new, old in enumerate(fixed)}
    size = len(fixed)
    table = np.full((size, size), -1, dtype=np.int64)
    for a, i in enumerate(fixed):
        for b, j in enumerate(fixed):
            target = int(monoid.table[i, j])
            if target not in pos:
                raise CapExceeded("invariant elements fail to close under products")
            table[a, b] = pos[target]
    gen_indices = {
        label: pos[idx]
        for label, idx in monoid.generator_indices.items()
        if idx in pos
    }
    return IdealMonoid(
        monoid.algebra,
        tuple(gen_indices),
        gen_indices,
        tuple(monoid.elements[i] for i in fixed),
        table,
        identity=pos[monoid.identity],
    )


def _space_stable(space: RowSpace, matrix) -> bool:
    if space.dim == 0:
        return True
    field = space.field
    if isinstance(field, PrimeField):
        image = _kernels.matmul_mod(space.matrix, np.asarray(matrix, dtype=np.int64), field.p)
        res = _kernels.residual_mod(
            space.matrix, np.asarray(space.pivots, dtype=np.int64), image, field.p
        )
        return not res.any()
    rows = []
    for r in space.rows:
        img = [field.zero] * space.ambient
        for i, c in enumerate(r):
            if c == field.zero:
                continue
            for j in range(space.ambient):
                img[j] = field.add(img[j], field.mul(c, matrix[i][j]))
        rows.append(img)
    return all(space.contains(r) for r in rows)


def quotient_dimension(ideal: Ideal) -> int:
    return ideal.algebra.dim - ideal.dim
