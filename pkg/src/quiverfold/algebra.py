"""Finite-dimensional algebras given by a basis and structure constants."""

from __future__ import annotations

import random
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import FieldMismatch, InvalidPresentation
from .linalg import Field, PrimeField

DENSE_TABLE_LIMIT = 200


class FiniteDimAlgebra:
    """An associative unital algebra with a distinguished basis.

    ``mult[(i, j)]`` lists the nonzero coordinates of (basis i) * (basis j).
    The unit is the sum of the pairwise-orthogonal idempotents, whose basis
    positions are recorded in ``idempotents`` (aligned with
    ``idempotent_labels``).  Instances are immutable once built.
    """

    def __init__(
        self,
        field: Field,
        basis_labels: Sequence,
        mult: dict[tuple[int, int], tuple[tuple[int, object], ...]],
        idempotents: Sequence[int],
        idempotent_labels: Sequence[str],
        validate: bool = True,
        rng_seed: int = 0,
    ):
        self.field = field
        self.basis_labels = tuple(basis_labels)
        self.dim = len(self.basis_labels)
        self.mult = mult
        self.idempotents = tuple(idempotents)
        self.idempotent_labels = tuple(idempotent_labels)
        self._dense: Optional[np.ndarray] = None
        if validate:
            self._check_unit()
            self.check_associativity(rng_seed=rng_seed)

    # -- vectors ------------------------------------------------------------

    def zero_vector(self):
        if isinstance(self.field, PrimeField):
            return np.zeros(self.dim, dtype=np.int64)
        return [self.field.zero] * self.dim

    def vector(self, coords: dict[int, object]):
        v = self.zero_vector()
        for i, c in coords.items():
            v[i] = self.field.normalize(c)
        if isinstance(self.field, PrimeField):
            return v
        return v

    @property
    def unit_vector(self):
        return self.vector({i: 1 for i in self.idempotents})

    def idempotent_vector(self, label: str):
        pos = self.idempotent_labels.index(label)
        return self.vector({self.idempotents[pos]: 1})

    # -- multiplication -----------------------------------------------------

    @property
    def dense_table(self) -> np.ndarray:
        """Dense structure constants c[i, j, m]; prime fields only."""
        if not isinstance(self.field, PrimeField):
            raise FieldMismatch("dense table requires a prime field")
        if self._dense is None:
            if self.dim > DENSE_TABLE_LIMIT:
                raise InvalidPresentation(
                    f"dimension {self.dim} exceeds dense table limit {DENSE_TABLE_LIMIT}"
                )
            t = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
            for (i, j), entries in self.mult.items():
                for k, c in entries:
                    t[i, j, k] = c
            t.flags.writeable = False
            self._dense = t
        return self._dense

    def multiply(self, x, y):
        """Product of two coordinate vectors via the structure constants."""
        if isinstance(self.field, PrimeField):
            xa = np.asarray(x, dtype=np.int64).reshape(1, -1) % self.field.p
            ya = np.asarray(y, dtype=np.int64).reshape(1, -1) % self.field.p
            if xa.shape[1] != self.dim or ya.shape[1] != self.dim:
                raise FieldMismatch("vector length does not match the algebra dimension")
            out = _kernels.pair_products_mod(xa, ya, self.dense_table, self.field.p)
            return out[0]
        out = self.zero_vector()
        f = self.field
        for i, cx in enumerate(x):
            if cx == f.zero:
                continue
            for j, cy in enumerate(y):
                if cy == f.zero:
                    continue
                for k, c in self.mult.get((i, j), ()):
                    out[k] = f.add(out[k], f.mul(f.mul(cx, cy), c))
        return out

    def basis_product(self, i: int, j: int):
        v = self.zero_vector()
        for k, c in self.mult.get((i, j), ()):
            v[k] = c
        return v

    # -- validation ---------------------------------------------------------

    def _check_unit(self):
        f = self.field
        for a, i in enumerate(self.idempotents):
            for b, j in enumerate(self.idempotents):
                expected = ((i, f.one),) if i == j else ()
                got = self.mult.get((i, j), ())
                if tuple(got) != expected:
                    raise InvalidPresentation(
                        f"idempotent law fails for e_{self.idempotent_labels[a]}"
                        f" * e_{self.idempotent_labels[b]}"
                    )
        one = self.unit_vector
        for i in range(self.dim):
            ei = self.vector({i: 1})
            left = self.multiply(one, ei)
            right = self.multiply(ei, one)
            if not self._vec_eq(left, ei) or not self._vec_eq(right, ei):
                raise InvalidPresentation(f"unit law fails on basis element {i}")

    def _vec_eq(self, a, b) -> bool:
        if isinstance(self.field, PrimeField):
            return bool(np.array_equal(np.asarray(a), np.asarray(b)))
        return list(a) == list(b)

    def check_associativity(self, exhaustive_limit: int = DENSE_TABLE_LIMIT, samples: int = 2000, rng_seed: int = 0):
        """(ab)c == a(bc) on basis triples: exhaustive up to the limit, sampled above."""
        n = self.dim
        if isinstance(self.field, PrimeField) and n <= exhaustive_limit:
            p = self.field.p
            t = self.dense_table
            flat = t.reshape(n * n, n)
            for i in range(n):
                left = _kernels.matmul_mod(t[i], flat.reshape(n, n * n), p)
                right = _kernels.matmul_mod(flat, t[i], p)
                if not np.array_equal(left.reshape(n, n, n), right.reshape(n, n, n)):
                    raise InvalidPresentation(f"associativity fails with left factor {i}")
            return
        triples = None
        if n <= 40:
            triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
        else:
            rng = random.Random(rng_seed)
            triples = [
                (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)
            ]
        for (i, j, k) in triples:
            ab_c = self.multiply(self.basis_product(i, j), self.vector({k: 1}))
            a_bc = self.multiply(self.vector({i: 1}), self.basis_product(j, k))
            if not self._vec_eq(ab_c, a_bc):
                raise InvalidPresentation(f"associativity fails on triple {(i, j, k)}")

    # -- export -------------------------------------------------------------

    def to_json(self) -> dict:
        def coeff_out(c):
            return int(c) if isinstance(self.field, PrimeField) else str(c)

        return {
            "field": self.field.key(),
            "dimension": self.dim,
            "basis": [self.describe_basis_element(i) for i in range(self.dim)],
            "idempotents": {
                lab: int(idx) for lab, idx in zip(self.idempotent_labels, self.idempotents)
            },
            "structure_constants": [
                [i, j, k, coeff_out(c)]
                for (i, j), entries in sorted(self.mult.items())
                for k, c in entries
            ],
        }

    def describe_basis_element(self, i: int):
        label = self.basis_labels[i]
        if isinstance(label, str):
            return label
        return str(label)
