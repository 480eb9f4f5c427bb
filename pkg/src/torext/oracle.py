"""Brute-force ground truth for extensions of finite groups.

Extensions of a finite C by a finite A correspond to symmetric
normalized 2-cocycle tables f: C x C -> A modulo coboundaries
delta g(x, y) = g(x) + g(y) - g(x + y).  Every condition is linear in
the table entries, so instead of enumerating all |A|^(|C|^2) tables the
module solves the cocycle conditions once per base group C via Smith
reduction and quotients by the coboundary lattice per invariant factor
of A.  Class representatives are the lexicographically minimal tables,
obtained by Hermite reduction of any member of the class.

Everything downstream (class counts, t-classes, equivalence by explicit
isomorphism search) is decided by exhaustion over these finite objects,
independently of the closed-form Ext computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from ._kernels import snf_diagonalize
from .extcalc import ExtElement
from .extensions import Extension, classify, extension_from_lift_data, is_t_extension
from .fgabelian import Element, FgGroup, Morphism, _canonicalize, canonical_from_orders
from .intmat import (
    IntMatrix,
    InvalidInputError,
    ResourceLimitError,
    hermite_normal_form,
    hnf_reduce,
    hstack,
    unimodular_inverse,
)

__all__ = [
    "Cocycle",
    "DEFAULT_CAP",
    "EQUIV_MIDDLE_CAP",
    "enumerate_classes",
    "class_count",
    "class_group",
    "cocycle_to_extension",
    "class_of_table",
    "oracle_t_classes",
    "oracle_equivalent",
]

DEFAULT_CAP = 8
EQUIV_MIDDLE_CAP = 64


@dataclass(frozen=True)
class Cocycle:
    """A symmetric normalized 2-cocycle table on C with values in A."""

    C: FgGroup
    A: FgGroup
    table: dict

    def __call__(self, x: Element, y: Element) -> Element:
        return self.table[(x, y)]

    def validate(self) -> None:
        """Check normalization, symmetry and the cocycle identity exhaustively."""
        elems = list(self.C.elements())
        zero_a = self.A.zero()
        for c in elems:
            if self.table[(self.C.zero(), c)] != zero_a or self.table[(c, self.C.zero())] != zero_a:
                raise InvalidInputError("cocycle is not normalized")
        for x in elems:
            for y in elems:
                if self.table[(x, y)] != self.table[(y, x)]:
                    raise InvalidInputError("cocycle is not symmetric")
        for x in elems:
            for y in elems:
                for z in elems:
                    lhs = self.table[(x, y)] + self.table[(x + y, z)]
                    rhs = self.table[(y, z)] + self.table[(x, y + z)]
                    if lhs != rhs:
                        raise InvalidInputError("cocycle identity fails")

    def add(self, other: "Cocycle") -> "Cocycle":
        """Pointwise sum; cocycle conditions are linear so the result is one too."""
        if self.C != other.C or self.A != other.A:
            raise InvalidInputError("cocycle sum needs matching groups")
        table = {k: v + other.table[k] for k, v in self.table.items()}
        return Cocycle(self.C, self.A, table)


def _check_caps(C: FgGroup, A: FgGroup, cap: int) -> None:
    for g, name in ((C, "base"), (A, "coefficient")):
        order = g.order()
        if order is None or order > cap:
            raise ResourceLimitError(
                f"{name} group exceeds the oracle cap of {cap} elements"
            )


class _BaseContext:
    """Everything about cocycles on C that does not depend on A."""

    def __init__(self, C: FgGroup):
        self.C = C
        elems = list(C.elements())
        self.elems = elems
        nonzero = elems[1:]
        self.nonzero = nonzero
        k = len(nonzero)
        # Unknowns: one per unordered pair of nonzero elements, ordered so
        # that reading a full table row-major meets them in this order.
        pairs = [(i, j) for i in range(k) for j in range(i, k)]
        self.pairs = pairs
        self.pair_pos = {p: t for t, p in enumerate(pairs)}
        self.n_unknowns = len(pairs)
        index_of = {el: i for i, el in enumerate(nonzero)}

        def pos(x: Element, y: Element) -> int | None:
            if x.is_zero() or y.is_zero():
                return None
            i, j = index_of[x], index_of[y]
            return self.pair_pos[(i, j) if i <= j else (j, i)]

        self.pos = pos
        # Cocycle identity rows over all nonzero triples; terms touching
        # the zero element vanish by normalization.
        rows = []
        for x in nonzero:
            for y in nonzero:
                for z in nonzero:
                    row = [0] * self.n_unknowns
                    for sgn, (u, v) in (
                        (1, (x, y)),
                        (1, (x + y, z)),
                        (-1, (y, z)),
                        (-1, (x, y + z)),
                    ):
                        t = pos(u, v)
                        if t is not None:
                            row[t] += sgn
                    if any(row):
                        rows.append(row)
        self.constraints = IntMatrix.from_rows(rows, self.n_unknowns)
        # Coboundary lattice: one generator per nonzero element u, from
        # g = (u -> 1, elsewhere 0): entry at pair {x, y} counts
        # [x == u] + [y == u] - [x + y == u].
        cb_cols = []
        for u in nonzero:
            col = [0] * self.n_unknowns
            for t, (i, j) in enumerate(pairs):
                x, y = nonzero[i], nonzero[j]
                col[t] = (x == u) + (y == u) - ((x + y) == u)
            cb_cols.append(col)
        if cb_cols:
            self.coboundaries = IntMatrix.from_rows(list(zip(*cb_cols)), k)
        else:
            self.coboundaries = IntMatrix.zeros(self.n_unknowns, 0)
        # Smith data of the constraint matrix, shared by every coefficient
        # group: solutions mod e are V * diag(e / gcd(d_i, e)) * Z^N.
        n = self.n_unknowns
        d = [list(r) for r in self.constraints.entries]
        v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        snf_diagonalize(d, None, v)
        diag = [d[i][i] for i in range(min(len(d), n))] if d else []
        diag += [0] * (n - len(diag))
        self.diag = diag
        self.v = IntMatrix.from_rows(v, n)
        self.v_inv = unimodular_inverse(self.v)


@lru_cache(maxsize=None)
def _base_context(C: FgGroup) -> _BaseContext:
    return _BaseContext(C)


class _CoordinateClasses:
    """Cocycle classes of C with values in one cyclic factor Z/e."""

    def __init__(self, ctx: _BaseContext, e: int):
        n = ctx.n_unknowns
        scales = [e // gcd(d, e) if d else 1 for d in ctx.diag]
        w_cols = []
        for j in range(n):
            w_cols.append([ctx.v.entries[i][j] * scales[j] for i in range(n)])
        self.w_basis = (
            IntMatrix.from_rows(list(zip(*w_cols)), n) if n else IntMatrix.zeros(0, 0)
        )
        shifts = hstack(ctx.coboundaries, IntMatrix.identity(n).scale(e))
        # Coset lattice expressed in the solution basis; divisions are
        # exact because coboundaries and e-multiples are cocycles mod e.
        raw = ctx.v_inv @ shifts
        x_rows = []
        for i in range(n):
            s = scales[i]
            row = []
            for j in range(raw.cols):
                q, r = divmod(raw.entries[i][j], s)
                if r:
                    raise AssertionError("coboundary escaped the solution lattice")
                row.append(q)
            x_rows.append(row)
        x = IntMatrix.from_rows(x_rows, shifts.cols) if n else IntMatrix.zeros(0, 0)
        self.group, self.proj, self.sect = _canonicalize(n, x)
        self.hnf = hermite_normal_form(shifts) if n else IntMatrix.zeros(0, 0)
        self.n = n

    def representatives(self) -> list[tuple[int, ...]]:
        """One lexicographically minimal integer vector per class, in a
        deterministic order."""
        reps = []
        for q in self.group.elements():
            t = self.sect.mul_vec(q.coords())
            vec = self.w_basis.mul_vec(t)
            reps.append(hnf_reduce(self.hnf, vec))
        return reps


@lru_cache(maxsize=None)
def _coordinate_classes(C: FgGroup, e: int) -> _CoordinateClasses:
    return _CoordinateClasses(_base_context(C), e)


def _assemble_table(ctx: _BaseContext, A: FgGroup, coord_vecs: tuple) -> Cocycle:
    zero_a = A.zero()
    table = {}
    for c in ctx.elems:
        table[(ctx.elems[0], c)] = zero_a
        table[(c, ctx.elems[0])] = zero_a
    for t, (i, j) in enumerate(ctx.pairs):
        torsion = tuple(vec[t] for vec in coord_vecs)
        value = Element(A, torsion, ())
        x, y = ctx.nonzero[i], ctx.nonzero[j]
        table[(x, y)] = value
        table[(y, x)] = value
    return Cocycle(ctx.C, A, table)


def enumerate_classes(C: FgGroup, A: FgGroup, cap: int = DEFAULT_CAP) -> list[tuple[Cocycle, int]]:
    """One lexicographically minimal cocycle per class, with class indices.

    >>> from .fgabelian import parse_group
    >>> len(enumerate_classes(parse_group("Z/2"), parse_group("Z/2")))
    2
    >>> len(enumerate_classes(parse_group("Z/2"), parse_group("Z/3")))
    1
    >>> len(enumerate_classes(FgGroup(0, ()), parse_group("Z/8")))
    1
    """
    _check_caps(C, A, cap)
    ctx = _base_context(C)
    per_coord = [
        _coordinate_classes(C, e).representatives() for e in A.invariant_factors
    ]
    out = []
    for idx, combo in enumerate(itertools.product(*per_coord)):
        out.append((_assemble_table(ctx, A, combo), idx))
    return out


def class_count(C: FgGroup, A: FgGroup, cap: int = DEFAULT_CAP) -> int:
    """Number of cocycle classes, computed without building tables."""
    _check_caps(C, A, cap)
    count = 1
    for e in A.invariant_factors:
        order = _coordinate_classes(C, e).group.order()
        assert order is not None
        count *= order
    return count


def class_group(C: FgGroup, A: FgGroup, cap: int = DEFAULT_CAP) -> FgGroup:
    """The group formed by cocycle classes under pointwise addition."""
    _check_caps(C, A, cap)
    orders: list[int] = []
    for e in A.invariant_factors:
        orders.extend(_coordinate_classes(C, e).group.invariant_factors)
    return canonical_from_orders(orders)


def cocycle_to_extension(f: Cocycle) -> Extension:
    """The extension with middle set A x C and twisted addition
    (a, c) + (a', c') = (a + a' + f(c, c'), c + c').

    Presented on A's generators plus one lift per generator of C; the
    lift of a generator g of order d satisfies
    d * x = sum of f(m * g, g) for m = 1 .. d - 1, which is the value the
    twisted addition assigns to d * (0, g).
    """
    A, C = f.A, f.C
    targets = []
    for i, d in enumerate(C.invariant_factors):
        g = C.generator(i)
        acc = A.zero()
        power = g
        for _ in range(1, d):
            acc = acc + f(power, g)
            power = power + g
        targets.append(acc)
    return extension_from_lift_data(A, C, targets)


def class_of_table(f: Cocycle) -> ExtElement:
    """Ext coordinates of a cocycle's extension class."""
    return classify(cocycle_to_extension(f))


def oracle_t_classes(C: FgGroup, A: FgGroup, cap: int = DEFAULT_CAP) -> set[int]:
    """Indices of the classes whose extensions restrict exactly to torsion."""
    out = set()
    for f, idx in enumerate_classes(C, A, cap):
        if is_t_extension(cocycle_to_extension(f)):
            out.add(idx)
    return out


def oracle_equivalent(e1: Extension, e2: Extension, cap: int = EQUIV_MIDDLE_CAP) -> bool:
    """Equivalence decided by exhaustive search for an isomorphism beta
    with beta . phi1 == phi2 and psi2 . beta == psi1.

    Candidate images for each middle-group generator are found by
    scanning the second middle group; the search is capped by the size
    of the middle groups.
    """
    if e1.A != e2.A or e1.C != e2.C:
        raise InvalidInputError("equivalence requires matching end groups")
    for e in (e1, e2):
        order = e.B.order()
        if order is None or order > cap:
            raise ResourceLimitError(
                f"middle group exceeds the search cap of {cap} elements"
            )
    if e1.B != e2.B:
        return False
    b1, b2 = e1.B, e2.B
    b2_elems = list(b2.elements())
    candidates = []
    for t in range(b1.ngens):
        g = b1.generator(t)
        d = b1.invariant_factors[t]
        target = e1.psi(g)
        zs = [z for z in b2_elems if e2.psi(z) == target and z.scale(d).is_zero()]
        if not zs:
            return False
        candidates.append(zs)
    a_gens = [e1.A.generator(j) for j in range(e1.A.ngens)]
    phi1_cols = [e1.phi.matrix.col(j) for j in range(e1.A.ngens)]
    phi2_imgs = [e2.phi(a) for a in a_gens]
    for combo in itertools.product(*candidates):
        ok = True
        for j in range(len(a_gens)):
            acc = b2.zero()
            for t, coef in enumerate(phi1_cols[j]):
                if coef:
                    acc = acc + combo[t].scale(coef)
            if acc != phi2_imgs[j]:
                ok = False
                break
        if not ok:
            continue
        cols = [z.coords() for z in combo]
        mat = (
            IntMatrix.from_rows(list(zip(*cols)), b1.ngens)
            if cols
            else IntMatrix.zeros(b2.ngens, 0)
        )
        beta = Morphism(b1, b2, mat)
        if beta.is_isomorphism():
            return True
    return False
