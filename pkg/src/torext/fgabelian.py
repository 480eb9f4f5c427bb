"""Finitely generated abelian groups in canonical form.

A group is ``Z^free_rank + Z/d_1 + ... + Z/d_k`` with each d_i >= 2 and
d_i | d_{i+1}.  Generator order everywhere: torsion generators first (in
factor order), then free generators.  Morphisms are integer matrices in
that generator basis, normalized modulo the codomain's torsion orders.

Every structural computation (kernel, image, cokernel, direct sum)
reduces to Smith normal form on an integer presentation, so results are
exact and deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterator, NamedTuple, Sequence

from .intmat import (
    GroupParseError,
    IntMatrix,
    InvalidInputError,
    block_diag,
    hstack,
    kernel_basis,
    lattice_intersection,
    lattice_member,
    smith_normal_form,
    solve_integer,
    unimodular_inverse,
)

__all__ = [
    "FgGroup",
    "Element",
    "Morphism",
    "DirectSum",
    "canonicalize",
    "canonical_from_orders",
    "torsion_subgroup",
    "restrict_to_torsion",
    "kernel",
    "image",
    "cokernel",
    "direct_sum",
    "left_inverse",
    "morphism_inverse",
    "is_pure",
    "pure_witness",
    "parse_group",
    "format_group",
]


@dataclass(frozen=True)
class FgGroup:
    """Canonical finitely generated abelian group.

    >>> FgGroup(2, (2, 12))
    FgGroup(free_rank=2, invariant_factors=(2, 12))
    >>> FgGroup(0, (4, 6))
    Traceback (most recent call last):
        ...
    torext.intmat.InvalidInputError: invariant factors must form a divisibility chain
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise InvalidInputError("free rank must be nonnegative")
        fs = self.invariant_factors
        if any(d < 2 for d in fs):
            raise InvalidInputError("invariant factors must be at least 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise InvalidInputError("invariant factors must form a divisibility chain")

    # -- structure -------------------------------------------------

    @property
    def torsion_count(self) -> int:
        return len(self.invariant_factors)

    @property
    def ngens(self) -> int:
        return self.torsion_count + self.free_rank

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_torsion(self) -> bool:
        """Finite, i.e. no free part."""
        return self.free_rank == 0

    def is_torsion_free(self) -> bool:
        return not self.invariant_factors

    def is_free(self) -> bool:
        return self.is_torsion_free()

    def is_divisible(self) -> bool:
        # The only divisible finitely generated group is 0.
        return self.is_trivial()

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors)

    def exponent(self) -> int:
        """Exponent of the torsion part (1 when torsion-free)."""
        return self.invariant_factors[-1] if self.invariant_factors else 1

    # -- elements --------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, (0,) * self.torsion_count, (0,) * self.free_rank)

    def element(self, coords: Sequence[int]) -> "Element":
        if len(coords) != self.ngens:
            raise InvalidInputError("coordinate length does not match generator count")
        k = self.torsion_count
        return Element(self, tuple(coords[:k]), tuple(coords[k:]))

    def generator(self, i: int) -> "Element":
        coords = [0] * self.ngens
        coords[i] = 1
        return self.element(coords)

    def elements(self) -> Iterator["Element"]:
        """All elements in lexicographic coordinate order (finite groups only)."""
        if self.free_rank:
            raise InvalidInputError("cannot enumerate an infinite group")
        for coords in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield Element(self, coords, ())

    def __str__(self):
        return format_group(self)


@dataclass(frozen=True)
class Element:
    """Group element with reduced torsion coordinates."""

    group: FgGroup
    torsion: tuple[int, ...]
    free: tuple[int, ...]

    def __post_init__(self):
        fs = self.group.invariant_factors
        if len(self.torsion) != len(fs) or len(self.free) != self.group.free_rank:
            raise InvalidInputError("element coordinates do not match the group")
        object.__setattr__(self, "torsion", tuple(c % d for c, d in zip(self.torsion, fs)))
        object.__setattr__(self, "free", tuple(int(c) for c in self.free))

    def coords(self) -> tuple[int, ...]:
        return self.torsion + self.free

    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)

    def __add__(self, other: "Element") -> "Element":
        self._same_group(other)
        return Element(
            self.group,
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
            tuple(a + b for a, b in zip(self.free, other.free)),
        )

    def __sub__(self, other: "Element") -> "Element":
        self._same_group(other)
        return Element(
            self.group,
            tuple(a - b for a, b in zip(self.torsion, other.torsion)),
            tuple(a - b for a, b in zip(self.free, other.free)),
        )

    def __neg__(self) -> "Element":
        return Element(self.group, tuple(-a for a in self.torsion), tuple(-a for a in self.free))

    def scale(self, c: int) -> "Element":
        return Element(self.group, tuple(c * a for a in self.torsion), tuple(c * a for a in self.free))

    def order(self) -> int | None:
        """Additive order, or None when infinite."""
        if any(self.free):
            return None
        result = 1
        for c, d in zip(self.torsion, self.group.invariant_factors):
            if c:
                result = lcm(result, d // gcd(d, c))
        return result

    def _same_group(self, other: "Element") -> None:
        if self.group != other.group:
            raise InvalidInputError("elements belong to different groups")


@dataclass(frozen=True)
class Morphism:
    """Homomorphism between canonical groups, as an integer matrix.

    Columns are images of domain generators (torsion first, then free);
    a column for a torsion generator of order d must be killed by d in
    the codomain, otherwise the map is not well defined and the
    constructor raises.
    """

    domain: FgGroup
    codomain: FgGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != self.codomain.ngens or m.cols != self.domain.ngens:
            raise InvalidInputError(
                f"morphism matrix must be {self.codomain.ngens}x{self.domain.ngens}, "
                f"got {m.rows}x{m.cols}"
            )
        kc = self.codomain.torsion_count
        es = self.codomain.invariant_factors
        # Normalize torsion rows into [0, e_j).
        rows = [list(r) for r in m.entries]
        for j in range(kc):
            rows[j] = [x % es[j] for x in rows[j]]
        for i, d in enumerate(self.domain.invariant_factors):
            for j in range(self.codomain.ngens):
                x = rows[j][i]
                if j < kc:
                    if (d * x) % es[j]:
                        raise InvalidInputError(
                            f"not well defined: generator {i} of order {d} maps to an "
                            f"element not killed by {d}"
                        )
                elif x and d:
                    raise InvalidInputError(
                        f"not well defined: torsion generator {i} has a nonzero free image"
                    )
        object.__setattr__(self, "matrix", IntMatrix.from_rows(rows, m.cols))

    # -- constructors ----------------------------------------------

    @classmethod
    def identity(cls, g: FgGroup) -> "Morphism":
        return cls(g, g, IntMatrix.identity(g.ngens))

    @classmethod
    def zero(cls, domain: FgGroup, codomain: FgGroup) -> "Morphism":
        return cls(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens))

    @classmethod
    def multiplication(cls, g: FgGroup, n: int) -> "Morphism":
        return cls(g, g, IntMatrix.identity(g.ngens).scale(n))

    # -- algebra ---------------------------------------------------

    def __call__(self, x: Element) -> Element:
        if x.group != self.domain:
            raise InvalidInputError("element is not in the morphism's domain")
        return self.codomain.element(self.matrix.mul_vec(x.coords()))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.codomain != self.domain:
            raise InvalidInputError("morphism composition domain mismatch")
        return Morphism(other.domain, self.codomain, self.matrix @ other.matrix)

    def __add__(self, other: "Morphism") -> "Morphism":
        self._parallel(other)
        return Morphism(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._parallel(other)
        return Morphism(self.domain, self.codomain, self.matrix - other.matrix)

    def __neg__(self) -> "Morphism":
        return Morphism(self.domain, self.codomain, -self.matrix)

    def _parallel(self, other: "Morphism") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise InvalidInputError("morphisms do not share domain and codomain")

    # -- predicates ------------------------------------------------

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


class DirectSum(NamedTuple):
    group: FgGroup
    inject_left: Morphism
    inject_right: Morphism
    project_left: Morphism
    project_right: Morphism


def relation_matrix(g: FgGroup) -> IntMatrix:
    """Columns generating the relation lattice of g inside Z^ngens."""
    k = g.torsion_count
    return IntMatrix.from_rows(
        [[g.invariant_factors[j] if i == j else 0 for j in range(k)] for i in range(g.ngens)],
        k,
    )


def solve_in_group(m: IntMatrix, codomain: FgGroup, target: Sequence[int]) -> tuple[int, ...] | None:
    """Solve m @ x == target in codomain coordinates (i.e. modulo relations)."""
    stacked = hstack(m, relation_matrix(codomain))
    sol = solve_integer(stacked, target)
    if sol is None:
        return None
    return sol[: m.cols]


def _canonicalize(generators: int, relations: IntMatrix) -> tuple[FgGroup, IntMatrix, IntMatrix]:
    """Canonical quotient Z^generators / column span of relations.

    Returns (group, P, S): P maps old coordinates to canonical
    coordinates (torsion rows first), S is an exact section with
    P @ S == identity.
    """
    snf = smith_normal_form(relations)
    diag = snf.diagonal
    rank = sum(1 for d in diag if d)
    torsion_idx = [i for i, d in enumerate(diag) if d >= 2]
    free_idx = list(range(rank, generators))
    group = FgGroup(len(free_idx), tuple(diag[i] for i in torsion_idx))
    sel = torsion_idx + free_idx
    p = snf.U.take_rows(sel)
    uinv = unimodular_inverse(snf.U)
    s = uinv.take_cols(sel)
    return group, p, s


def canonicalize(generators: int, relations: IntMatrix) -> tuple[FgGroup, Morphism]:
    """Canonical form of a finite presentation.

    ``relations`` has one row per generator; each column is a relator.
    Returns the canonical group and the projection from the free group
    on the given generators.

    >>> g, proj = canonicalize(2, IntMatrix.diagonal([2, 3]))
    >>> g
    FgGroup(free_rank=0, invariant_factors=(6,))
    """
    if relations.rows != generators:
        raise InvalidInputError("relation matrix must have one row per generator")
    group, p, _ = _canonicalize(generators, relations)
    return group, Morphism(FgGroup(generators, ()), group, p)


def canonical_from_orders(orders: Sequence[int], free_rank: int = 0) -> FgGroup:
    """Canonical form of Z^free_rank + sum of Z/order (order 1 allowed, dropped).

    >>> canonical_from_orders([4, 6])
    FgGroup(free_rank=0, invariant_factors=(2, 12))
    """
    orders = [int(d) for d in orders]
    if any(d < 1 for d in orders):
        raise InvalidInputError("cyclic orders must be positive")
    group, _, _ = _canonicalize(len(orders), IntMatrix.diagonal(orders))
    return FgGroup(group.free_rank + free_rank, group.invariant_factors)


def torsion_subgroup(g: FgGroup) -> tuple[FgGroup, Morphism]:
    """The torsion subgroup with its inclusion.

    >>> torsion_subgroup(FgGroup(2, (2, 12)))[0]
    FgGroup(free_rank=0, invariant_factors=(2, 12))
    """
    k = g.torsion_count
    tg = FgGroup(0, g.invariant_factors)
    mat = IntMatrix.from_rows(
        [[1 if i == j else 0 for j in range(k)] for i in range(g.ngens)], k
    )
    return tg, Morphism(tg, g, mat)


def restrict_to_torsion(f: Morphism) -> Morphism:
    """Restriction of f to torsion subgroups (commutes with inclusions)."""
    kd = f.domain.torsion_count
    kc = f.codomain.torsion_count
    sub = f.matrix.submatrix(range(kc), range(kd))
    td = FgGroup(0, f.domain.invariant_factors)
    tc = FgGroup(0, f.codomain.invariant_factors)
    return Morphism(td, tc, sub)


def _preimage_lattice_of_zero(f: Morphism) -> IntMatrix:
    """Generators of {x in Z^n_dom : f(x) == 0 in codomain}."""
    stacked = hstack(f.matrix, relation_matrix(f.codomain))
    ker = kernel_basis(stacked)
    return ker.take_rows(range(f.domain.ngens))


def kernel(f: Morphism) -> tuple[FgGroup, Morphism]:
    """Kernel subgroup with its inclusion into the domain."""
    w = _preimage_lattice_of_zero(f)
    # Present the subgroup on the generating columns of w.
    rel = kernel_basis(hstack(w, relation_matrix(f.domain))).take_rows(range(w.cols))
    kgrp, _, s = _canonicalize(w.cols, rel)
    return kgrp, Morphism(kgrp, f.domain, w @ s)


def image(f: Morphism) -> tuple[FgGroup, Morphism]:
    """Image subgroup with its inclusion into the codomain."""
    w = _preimage_lattice_of_zero(f)  # relations of the image on domain generators
    igrp, _, s = _canonicalize(f.domain.ngens, w)
    return igrp, Morphism(igrp, f.codomain, f.matrix @ s)


def cokernel(f: Morphism) -> tuple[FgGroup, Morphism]:
    """Cokernel with the projection from the codomain."""
    rel = hstack(f.matrix, relation_matrix(f.codomain))
    q, p, _ = _canonicalize(f.codomain.ngens, rel)
    return q, Morphism(f.codomain, q, p)


def direct_sum(g: FgGroup, h: FgGroup) -> DirectSum:
    """Canonical direct sum with injections and projections.

    >>> direct_sum(FgGroup(0, (2,)), FgGroup(0, (3,))).group
    FgGroup(free_rank=0, invariant_factors=(6,))
    """
    n_g, n_h = g.ngens, h.ngens
    rel = block_diag(relation_matrix(g), relation_matrix(h))
    sgrp, p, s = _canonicalize(n_g + n_h, rel)
    i1 = Morphism(g, sgrp, p.take_cols(range(n_g)))
    i2 = Morphism(h, sgrp, p.take_cols(range(n_g, n_g + n_h)))
    p1 = Morphism(sgrp, g, s.take_rows(range(n_g)))
    p2 = Morphism(sgrp, h, s.take_rows(range(n_g, n_g + n_h)))
    return DirectSum(sgrp, i1, i2, p1, p2)


def left_inverse(f: Morphism) -> Morphism | None:
    """A morphism r with r @ f == identity on the domain, or None.

    Existence is decided exactly by one integer linear system whose
    unknowns are the entries of r (plus congruence slacks).
    """
    g, h = f.domain, f.codomain
    n_g, n_h = g.ngens, h.ngens
    k_g, k_h = g.torsion_count, h.torsion_count
    ds = g.invariant_factors
    es = h.invariant_factors
    m = f.matrix
    # Unknown r[i][j]; entries with i free (in g) and j torsion (in h)
    # are forced to zero by well-definedness, so they are not variables.
    var_index: dict[tuple[int, int], int] = {}
    for i in range(n_g):
        for j in range(n_h):
            if i >= k_g and j < k_h:
                continue
            var_index[(i, j)] = len(var_index)
    nvars = len(var_index)
    constraints: list[tuple[dict[int, int], int | None, int]] = []
    # Well-definedness: torsion generator j of h (order e_j) must map to
    # an element killed by e_j.  Free rows of g already forced to zero.
    for j in range(k_h):
        for i in range(k_g):
            constraints.append(({var_index[(i, j)]: es[j]}, ds[i], 0))
    # Composition r @ f == identity in g's coordinates.
    for i in range(n_g):
        for i2 in range(n_g):
            coeffs: dict[int, int] = {}
            for j in range(n_h):
                c = m.entries[j][i2]
                if c and (i, j) in var_index:
                    v = var_index[(i, j)]
                    coeffs[v] = coeffs.get(v, 0) + c
            modulus = ds[i] if i < k_g else None
            constraints.append((coeffs, modulus, 1 if i == i2 else 0))
    nslack = sum(1 for _, modulus, _ in constraints if modulus is not None)
    full_rows: list[list[int]] = []
    rhs: list[int] = []
    next_slack = 0
    for coeffs, modulus, value in constraints:
        row = [0] * (nvars + nslack)
        for c, coef in coeffs.items():
            row[c] = coef
        if modulus is not None:
            row[nvars + next_slack] = modulus
            next_slack += 1
        full_rows.append(row)
        rhs.append(value)
    system = IntMatrix.from_rows(full_rows, nvars + nslack)
    sol = solve_integer(system, rhs)
    if sol is None:
        return None
    entries = [[0] * n_h for _ in range(n_g)]
    for (i, j), c in var_index.items():
        entries[i][j] = sol[c]
    return Morphism(h, g, IntMatrix.from_rows(entries, n_h))


def morphism_inverse(f: Morphism) -> Morphism:
    """Exact inverse of an isomorphism."""
    inv = left_inverse(f)
    if inv is None or not f.is_isomorphism():
        raise InvalidInputError("morphism is not an isomorphism")
    return inv


def is_pure(incl: Morphism) -> bool:
    """Purity of an injective morphism's image, decided by retraction.

    In the finitely generated world a subgroup is pure exactly when it
    is a direct summand, i.e. when a retraction exists.
    """
    if not incl.is_injective():
        raise InvalidInputError("purity test requires an injective morphism")
    return left_inverse(incl) is not None


def pure_witness(incl: Morphism, bound: int | None = None) -> int | None:
    """A modulus n with n*H != H meet n*G, or None if none up to the bound.

    The default bound is the exponent of the torsion of the cokernel,
    beyond which no witness can exist.
    """
    g = incl.codomain
    n_g = g.ngens
    if bound is None:
        coker, _ = cokernel(incl)
        bound = coker.exponent()
    rel = relation_matrix(g)
    h_lat = hstack(incl.matrix, rel)
    for n in range(1, bound + 1):
        ng_lat = hstack(IntMatrix.identity(n_g).scale(n), rel)
        meet = lattice_intersection(h_lat, ng_lat)
        nh_lat = hstack(incl.matrix.scale(n), rel)
        for j in range(meet.cols):
            if not lattice_member(nh_lat, meet.col(j)):
                return n
    return None


# -- group expression parsing -------------------------------------


def parse_group(text: str) -> FgGroup:
    """Parse a group expression like ``Z^2 + Z/4 + Z/6`` to canonical form.

    >>> parse_group("Z^2 + Z/4 + Z/6")
    FgGroup(free_rank=2, invariant_factors=(2, 12))
    >>> parse_group("0")
    FgGroup(free_rank=0, invariant_factors=())
    """
    free_rank = 0
    orders: list[int] = []
    pos = 0
    n = len(text)

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    def read_int(p: int) -> tuple[int, int]:
        p = skip_ws(p)
        start = p
        while p < n and text[p].isdigit():
            p += 1
        if p == start:
            raise GroupParseError("expected an integer", start)
        return int(text[start:p]), p

    pos = skip_ws(pos)
    if pos < n and text[pos] == "0" and skip_ws(pos + 1) == n:
        return FgGroup(0, ())
    first = True
    while True:
        pos = skip_ws(pos)
        if not first:
            if pos >= n:
                break
            if text[pos] != "+":
                raise GroupParseError("expected '+'", pos)
            pos = skip_ws(pos + 1)
        first = False
        if pos >= n or text[pos] != "Z":
            raise GroupParseError("expected 'Z'", pos)
        pos = skip_ws(pos + 1)
        if pos < n and text[pos] == "^":
            r, pos = read_int(pos + 1)
            free_rank += r
        elif pos < n and text[pos] == "/":
            d, pos = read_int(pos + 1)
            if d < 2:
                raise GroupParseError(f"Z/{d} is not a valid cyclic factor", pos - len(str(d)))
            orders.append(d)
        else:
            free_rank += 1
        pos = skip_ws(pos)
        if pos >= n:
            break
    return canonical_from_orders(orders, free_rank)


def format_group(g: FgGroup) -> str:
    """Render canonical form; inverse of parse_group on canonical groups.

    >>> format_group(FgGroup(2, (2, 12)))
    'Z^2 + Z/2 + Z/12'
    >>> format_group(FgGroup(0, ()))
    '0'
    """
    parts: list[str] = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank:
        parts.append(f"Z^{g.free_rank}")
    parts.extend(f"Z/{d}" for d in g.invariant_factors)
    return " + ".join(parts) if parts else "0"
