"""Skew group algebras, induced ideals, and the graded-ideal correspondence."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .algebra import FiniteDimAlgebra
from .engine import QuotientAlgebra, induced_automorphism
from .errors import ActionInvalid, NotInvariant, RelationNotPreserved
from .ideals import Ideal, IdealMonoid, _product_space, _space_stable
from .linalg import PrimeField, coordinate_section, rref, rref_matrix
from .quiver import GroupAction, extend_to_double


def induced_action_matrices(base: QuotientAlgebra, action: GroupAction) -> list:
    """Automorphism matrix of every group element on the quotient algebra.

    When the carrier is a double quiver the action is extended arrow-wise by
    sending each reverse arrow to the reverse of the image arrow.
    """
    carrier = base.presentation.quiver
    matrices = []
    for el in action.elements:
        if base.presentation.star is not None and el.quiver != carrier:
            el = extend_to_double(el, carrier, base.presentation.star)
        try:
            matrices.append(induced_automorphism(base, el))
        except RelationNotPreserved as exc:
            raise ActionInvalid(f"group element does not act on the algebra: {exc}") from exc
    return matrices


class SkewGroupAlgebra(FiniteDimAlgebra):
    """The algebra on basis pairs (base element, group element).

    Basis order is base-major, group-minor; the product twists the right
    factor by the left group element before concatenating in the group.
    """

    def __init__(self, base: FiniteDimAlgebra, action: GroupAction, matrices: Optional[list] = None):
        if matrices is None:
            matrices = induced_action_matrices(base, action)
        if len(matrices) != action.order:
            raise ActionInvalid("need one automorphism matrix per group element")
        self.base = base
        self.action = action
        self.matrices = matrices
        o = action.order
        n = base.dim
        self.group_names = [f"g{k}" for k in range(o)]
        gm = np.asarray(action.mult, dtype=np.int64)
        self.group_mult = gm
        self.group_inverse = np.asarray(action.inverse, dtype=np.int64)

        field = base.field
        mult: dict[tuple[int, int], tuple[tuple[int, object], ...]] = {}
        for gi in range(o):
            mg = matrices[gi]
            for j in range(n):
                # coordinates of g_i(b_j) in the base
                img = mg[j]
                # products b_i * g_i(b_j) for every i
                for i in range(n):
                    acc: dict[int, object] = {}
                    for k in range(n):
                        c_jk = img[k] if not isinstance(field, PrimeField) else int(img[k])
                        if c_jk == field.zero:
                            continue
                        for m, c in base.mult.get((i, k), ()):
                            prev = acc.get(m, field.zero)
                            s = field.add(prev, field.mul(c_jk, c))
                            if s == field.zero:
                                acc.pop(m, None)
                            else:
                                acc[m] = s
                    if not acc:
                        continue
                    for gj in range(o):
                        gh = int(gm[gi, gj])
                        mult[(i * o + gi, j * o + gj)] = tuple(
                            sorted((m * o + gh, c) for m, c in acc.items())
                        )
        labels = [
            f"{base.basis_labels[i]}#{self.group_names[g]}"
            for i in range(n)
            for g in range(o)
        ]
        idem = [idx * o + 0 for idx in base.idempotents]
        super().__init__(field, labels, mult, idem, base.idempotent_labels)
        if not self.check_conjugation():
            raise ActionInvalid("conjugation identity fails on a basis element")

    # -- coordinates ----------------------------------------------------------

    def skew_index(self, base_index: int, group_index: int) -> int:
        return base_index * self.action.order + group_index

    def block_columns(self, group_index: int) -> list[int]:
        o = self.action.order
        return [i * o + group_index for i in range(self.base.dim)]

    def embed_vector(self, base_vector, group_index: int = 0):
        """Coordinates of (a # g) for a base coordinate vector a."""
        v = self.zero_vector()
        for i, c in enumerate(base_vector):
            if c != self.field.zero:
                v[self.skew_index(i, group_index)] = c
        return v

    def one_hash(self, group_index: int):
        """Coordinates of 1_A # g."""
        return self.embed_vector(self.base.unit_vector, group_index)

    def check_conjugation(self) -> bool:
        """(1#g)(b#1)(1#g^{-1}) must equal g(b)#1 for every basis b and g."""
        for gi in range(self.action.order):
            left = self.one_hash(gi)
            right = self.one_hash(int(self.group_inverse[gi]))
            for b in range(self.base.dim):
                mid = self.embed_vector(self.base.vector({b: 1}), 0)
                got = self.multiply(self.multiply(left, mid), right)
                expected = self.embed_vector(self.matrices[gi][b], 0)
                if not self._vec_eq(got, expected):
                    return False
        return True

    def to_json(self) -> dict:
        data = super().to_json()
        data["group"] = {
            "order": self.action.order,
            "names": list(self.group_names),
            "cyclic": self.action.is_cyclic,
        }
        return data


def skew_group_algebra(base: FiniteDimAlgebra, action: GroupAction, matrices: Optional[list] = None) -> SkewGroupAlgebra:
    return SkewGroupAlgebra(base, action, matrices)


def is_g_invariant(ideal: Ideal, matrices: Sequence) -> bool:
    """True iff every automorphism maps the ideal's row space into itself."""
    return all(_space_stable(ideal.space, m) for m in matrices)


def induced_ideal(ideal: Ideal, skew: SkewGroupAlgebra) -> Ideal:
    """The ideal {sums of a_g # g with a_g in I} of the skew algebra."""
    if ideal.algebra is not skew.base:
        raise NotInvariant("ideal does not live in the base algebra")
    if not is_g_invariant(ideal, skew.matrices):
        raise NotInvariant("ideal is not invariant under the group action")
    o = skew.action.order
    rows = []
    for r in ideal.space.rows:
        for g in range(o):
            rows.append(skew.embed_vector(r, g))
    if isinstance(skew.field, PrimeField):
        mat = (
            np.asarray(rows, dtype=np.int64)
            if rows
            else np.zeros((0, skew.dim), dtype=np.int64)
        )
        space = rref_matrix(mat, skew.field)
    else:
        space = rref(rows, skew.dim, skew.field)
    out = Ideal(skew, space)
    assert out.dim == ideal.dim * o
    return out


def graded_part(j: Ideal) -> tuple[bool, Ideal]:
    """Degree-one slice of an ideal of a skew algebra.

    Returns (is_graded, base ideal {a : a#1 in J}); the ideal is graded exactly
    when inducing the base ideal back up reproduces it.
    """
    skew = j.algebra
    if not isinstance(skew, SkewGroupAlgebra):
        raise NotInvariant("graded parts only exist over skew group algebras")
    section = coordinate_section(j.space, skew.block_columns(0))
    base_ideal = Ideal(skew.base, section)
    if not is_g_invariant(base_ideal, skew.matrices):
        raise NotInvariant("identity-block slice is unexpectedly not invariant")
    graded = induced_ideal(base_ideal, skew).space == j.space
    return graded, base_ideal


def induced_monoid_map(monoid: IdealMonoid, skew: SkewGroupAlgebra) -> IdealMonoid:
    """Push a monoid of invariant ideals into the skew algebra elementwise.

    Verifies that the induced map is a monoid isomorphism onto its image:
    images are pairwise distinct and products match the source table.
    """
    for el in monoid.elements:
        if not is_g_invariant(el, skew.matrices):
            raise NotInvariant("monoid contains a non-invariant ideal")
    images = tuple(induced_ideal(el, skew) for el in monoid.elements)
    keys = {im.key for im in images}
    if len(keys) != len(images):
        raise NotInvariant("induced map is not injective")
    for i in range(monoid.size):
        for j in range(monoid.size):
            prod = _product_space(images[i], images[j])
            if prod != images[int(monoid.table[i, j])].space:
                raise NotInvariant("induced map is not multiplicative")
    return IdealMonoid(
        skew,
        monoid.labels,
        dict(monoid.generator_indices),
        images,
        monoid.table.copy(),
        identity=monoid.identity,
    )
