"""Exact coefficient fields and canonical subspace arithmetic.

Two coefficient fields are supported: prime fields F_p (p prime, p < 2**31),
where vectors are int64 numpy arrays and the hot loops live in
:mod:`quiverfold._kernels`, and the rationals, where entries are
:class:`fractions.Fraction` and everything runs in pure Python.

A :class:`RowSpace` is always stored in reduced row echelon form, which is a
canonical representative: two row spaces describe the same subspace exactly
when their row lists coincide.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, FieldMismatch


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Descriptor of the active coefficient field."""

    characteristic: int

    def key(self) -> str:
        raise NotImplementedError

    def normalize(self, value):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.key()!r})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class PrimeField(Field):
    """F_p with plain modular reduction; p must be prime and below 2**31."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldMismatch(f"{p} is not prime")
        if p >= 2**31:
            raise FieldMismatch(f"prime {p} too large for 64-bit products")
        self.p = p
        self.characteristic = p

    def key(self) -> str:
        return f"f{self.p}"

    def normalize(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise FieldMismatch(f"non-integer scalar {value} over {self.key()}")
            value = value.numerator
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.p)

    zero = 0
    one = 1


class RationalField(Field):
    """Arbitrary-precision rationals in lowest terms."""

    characteristic = 0

    def key(self) -> str:
        return "q"

    def normalize(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    zero = Fraction(0)
    one = Fraction(1)


def parse_field(name: str) -> Field:
    """Parse a field tag such as ``f2``, ``f3`` or ``q``."""
    name = name.strip().lower()
    if name == "q":
        return RationalField()
    if name.startswith("f"):
        try:
            return PrimeField(int(name[1:]))
        except ValueError:
            pass
    raise FieldMismatch(f"unknown field tag {name!r}")


class RowSpace:
    """A subspace of K^n held as a canonical reduced row echelon basis.

    Invariants: pivot columns strictly increase, pivots equal 1, pivot columns
    vanish in all other rows, and there are no zero rows.  Instances are
    immutable and hashable; equality is literal row-list equality.
    """

    __slots__ = ("field", "ambient", "_mat", "_rows", "pivots", "_key")

    def __init__(self, field: Field, ambient: int, mat, pivots):
        # internal constructor: callers must already be in canonical form
        self.field = field
        self.ambient = ambient
        if isinstance(field, PrimeField):
            m = np.ascontiguousarray(mat, dtype=np.int64)
            m.flags.writeable = False
            self._mat = m
            self._rows = None
            self._key = (field.key(), ambient, m.shape[0], m.tobytes())
        else:
            self._mat = None
            self._rows = tuple(tuple(r) for r in mat)
            self._key = (field.key(), ambient, self._rows)
        self.pivots = tuple(int(c) for c in pivots)

    @property
    def rows(self) -> tuple:
        """Canonical basis rows as tuples of field elements."""
        if self._rows is None:
            self._rows = tuple(tuple(int(v) for v in row) for row in self._mat)
        return self._rows

    @property
    def matrix(self) -> np.ndarray:
        if self._mat is None:
            raise FieldMismatch("dense matrix view requires a prime field")
        return self._mat

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def key(self):
        return self._key

    def contains(self, vector) -> bool:
        """True iff ``vector`` reduces to zero against the echelon rows."""
        if len(vector) != self.ambient:
            raise DimensionMismatch(
                f"vector length {len(vector)} != ambient {self.ambient}"
            )
        if isinstance(self.field, PrimeField):
            v = np.asarray(
                [self.field.normalize(x) for x in vector], dtype=np.int64
            ).reshape(1, -1)
            res = _kernels.residual_mod(
                self._mat, np.asarray(self.pivots, dtype=np.int64), v, self.field.p
            )
            return not res.any()
        res = _reduce_generic(self.field, list(map(self.field.normalize, vector)), self.rows, self.pivots)
        return all(x == 0 for x in res)

    def __eq__(self, other):
        return isinstance(other, RowSpace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RowSpace(dim={self.dim}, ambient={self.ambient}, field={self.field.key()})"


def _check_compatible(a: RowSpace, b: RowSpace):
    if a.field != b.field:
        raise FieldMismatch(f"mixed fields {a.field.key()} and {b.field.key()}")
    if a.ambient != b.ambient:
        raise DimensionMismatch(f"ambient {a.ambient} != {b.ambient}")


def _reduce_generic(field: Field, vec: list, rows, pivots) -> list:
    for r, pc in zip(rows, pivots):
        f = vec[pc]
        if f != 0:
            vec = [field.sub(v, field.mul(f, rv)) for v, rv in zip(vec, r)]
    return vec


def _rref_generic(field: Field, vectors: list[list]) -> tuple[list[list], list[int]]:
    rows: list[list] = []
    pivots: list[int] = []
    for vec in vectors:
        vec = _reduce_generic(field, vec, rows, pivots)
        pc = next((i for i, v in enumerate(vec) if v != 0), None)
        if pc is None:
            continue
        inv = field.inv(vec[pc])
        vec = [field.mul(inv, v) for v in vec]
        # eliminate the new pivot from existing rows and insert in order
        rows = [
            [field.sub(rv, field.mul(r[pc], vv)) for rv, vv in zip(r, vec)]
            if r[pc] != 0
            else r
            for r in rows
        ]
        at = next((i for i, q in enumerate(pivots) if q > pc), len(pivots))
        rows.insert(at, vec)
        pivots.insert(at, pc)
    return rows, pivots


def rref(vectors: Iterable[Sequence], ambient: int, field: Field) -> RowSpace:
    """Canonical reduced row echelon basis of the span of ``vectors``."""
    vecs = list(vectors)
    for v in vecs:
        if len(v) != ambient:
            raise DimensionMismatch(f"vector length {len(v)} != ambient {ambient}")
    if isinstance(field, PrimeField):
        if not vecs:
            mat = np.zeros((0, ambient), dtype=np.int64)
            return RowSpace(field, ambient, mat, ())
        arr = np.asarray(
            [[field.normalize(x) for x in v] for v in vecs], dtype=np.int64
        )
        rows, piv = _kernels.rref_mod(arr, field.p)
        return RowSpace(field, ambient, rows, piv)
    norm = [[field.normalize(x) for x in v] for v in vecs]
    rows, piv = _rref_generic(field, norm)
    return RowSpace(field, ambient, rows, piv)


def rref_matrix(mat: np.ndarray, field: PrimeField) -> RowSpace:
    """Fast-path rref for an int64 matrix already reduced mod p."""
    ambient = mat.shape[1]
    rows, piv = _kernels.rref_mod(mat, field.p)
    return RowSpace(field, ambient, rows, piv)


def zero_space(ambient: int, field: Field) -> RowSpace:
    return rref([], ambient, field)


def full_space(ambient: int, field: Field) -> RowSpace:
    if isinstance(field, PrimeField):
        return RowSpace(field, ambient, np.eye(ambient, dtype=np.int64), range(ambient))
    eye = [[field.one if i == j else field.zero for j in range(ambient)] for i in range(ambient)]
    return RowSpace(field, ambient, eye, range(ambient))


def subspace_sum(a: RowSpace, b: RowSpace) -> RowSpace:
    """Canonical basis of a + b."""
    _check_compatible(a, b)
    if isinstance(a.field, PrimeField):
        stacked = np.vstack([a.matrix, b.matrix])
        return rref_matrix(stacked, a.field)
    return rref(list(a.rows) + list(b.rows), a.ambient, a.field)


def contains(space: RowSpace, vector) -> bool:
    return space.contains(vector)


def coordinate_section(space: RowSpace, cols: Sequence[int]) -> RowSpace:
    """Subspace of vectors in ``space`` supported on ``cols``, restricted to them.

    Returns the canonical basis of { v|_cols : v in space, v zero off cols }.
    """
    cols = list(cols)
    other = [c for c in range(space.ambient) if c not in set(cols)]
    perm = other + cols
    if isinstance(space.field, PrimeField):
        if space.dim == 0:
            return zero_space(len(cols), space.field)
        permuted = space.matrix[:, perm]
        rows, piv = _kernels.rref_mod(permuted, space.field.p)
        keep = [i for i in range(rows.shape[0]) if piv[i] >= len(other)]
        section = rows[keep][:, len(other):] if keep else np.zeros((0, len(cols)), dtype=np.int64)
        return rref_matrix(np.asarray(section, dtype=np.int64), space.field)
    permuted = [[r[c] for c in perm] for r in space.rows]
    rows, piv = _rref_generic(space.field, permuted)
    section = [r[len(other):] for r, pc in zip(rows, piv) if pc >= len(other)]
    return rref(section, len(cols), space.field)
