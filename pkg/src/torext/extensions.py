"""Short exact sequences of finitely generated abelian groups.

An Extension is 0 -> A --phi--> B --psi--> C -> 0, validated at
construction: phi injective, psi surjective, image(phi) == kernel(psi).
A *t-extension* is one whose restriction to torsion subgroups

    0 -> tA -> tB -> tC -> 0

is again exact; only surjectivity of tB -> tC can fail, and deciding it
is exact integer linear algebra.

Classification sends an extension to coordinates in Ext(C, A): lift
each torsion generator c_i of C to b_i in B, divide d_i * b_i back
through phi, and read the result modulo d_i * A.  realize() inverts
this by presenting the middle group on generators of A plus formal
lifts with relations d_i * x_i == a_i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extcalc import (
    ExtElement,
    _coords_from_representatives,
    _representative,
    ext_group,
)
from .fgabelian import (
    DirectSum,
    Element,
    FgGroup,
    Morphism,
    _canonicalize,
    cokernel,
    direct_sum,
    image,
    is_pure,
    kernel,
    left_inverse,
    relation_matrix,
    restrict_to_torsion,
    solve_in_group,
)
from .intmat import (
    ExactnessError,
    IntMatrix,
    InvalidInputError,
    hstack,
    kernel_basis,
    solve_integer,
    vstack,
)

__all__ = [
    "Extension",
    "TorsionSequence",
    "make_extension",
    "split_extension",
    "torsion_sequence",
    "is_t_extension",
    "pushout",
    "pullback",
    "direct_sum_ext",
    "baer_sum",
    "classify",
    "realize",
    "extension_from_lift_data",
    "are_equivalent",
    "splits",
    "find_retraction",
    "is_pure_extension",
]


def _check_exact(phi: Morphism, psi: Morphism) -> None:
    if phi.codomain != psi.domain:
        raise InvalidInputError("phi's codomain must equal psi's domain")
    if not phi.is_injective():
        raise ExactnessError("phi is not injective")
    if not psi.is_surjective():
        raise ExactnessError("psi is not surjective")
    if not (psi @ phi).matrix.is_zero():
        raise ExactnessError("psi composed with phi is nonzero (image exceeds kernel)")
    # kernel(psi) inside image(phi): every preimage-lattice generator of
    # the kernel must be an integer combination of phi columns + relations.
    b = phi.codomain
    ker_lat = kernel_basis(hstack(psi.matrix, relation_matrix(psi.codomain)))
    ker_lat = ker_lat.take_rows(range(b.ngens))
    im_lat = hstack(phi.matrix, relation_matrix(b))
    for j in range(ker_lat.cols):
        if solve_integer(im_lat, ker_lat.col(j)) is None:
            raise ExactnessError("kernel of psi exceeds image of phi")


class Extension:
    """A validated short exact sequence; construct via make_extension."""

    __slots__ = ("A", "B", "C", "phi", "psi")

    def __init__(self, phi: Morphism, psi: Morphism):
        _check_exact(phi, psi)
        self.phi = phi
        self.psi = psi
        self.A = phi.domain
        self.B = phi.codomain
        self.C = psi.codomain

    def __repr__(self):
        return f"Extension(0 -> {self.A} -> {self.B} -> {self.C} -> 0)"


def make_extension(phi: Morphism, psi: Morphism) -> Extension:
    """Validate and build an extension; raises ExactnessError naming the failure."""
    return Extension(phi, psi)


def split_extension(A: FgGroup, C: FgGroup) -> Extension:
    """The direct-sum extension 0 -> A -> A + C -> C -> 0."""
    ds = direct_sum(A, C)
    return Extension(ds.inject_left, ds.project_right)


@dataclass(frozen=True)
class TorsionSequence:
    """The torsion rows of an extension, with restricted maps."""

    tA: FgGroup
    tB: FgGroup
    tC: FgGroup
    phi_t: Morphism
    psi_t: Morphism

    def failed_condition(self) -> str | None:
        """None when exact; otherwise names the first failing condition."""
        if not self.phi_t.is_injective():
            return "restricted phi is not injective"
        if not self.psi_t.is_surjective():
            return "restricted psi is not surjective"
        b = self.tB
        ker_lat = kernel_basis(hstack(self.psi_t.matrix, relation_matrix(self.tC)))
        ker_lat = ker_lat.take_rows(range(b.ngens))
        im_lat = hstack(self.phi_t.matrix, relation_matrix(b))
        for j in range(ker_lat.cols):
            if solve_integer(im_lat, ker_lat.col(j)) is None:
                return "restricted kernel exceeds restricted image"
        return None

    def is_exact(self) -> bool:
        return self.failed_condition() is None


def torsion_sequence(e: Extension) -> TorsionSequence:
    phi_t = restrict_to_torsion(e.phi)
    psi_t = restrict_to_torsion(e.psi)
    return TorsionSequence(phi_t.domain, phi_t.codomain, psi_t.codomain, phi_t, psi_t)


def is_t_extension(e: Extension) -> bool:
    """Does the sequence restrict exactly to torsion subgroups?

    >>> from .fgabelian import parse_group
    >>> is_t_extension(split_extension(parse_group("Z/2"), parse_group("Z/4")))
    True
    """
    return torsion_sequence(e).is_exact()


# -- induced sequences ---------------------------------------------


def _descend(f: Morphism, proj: Morphism) -> Morphism:
    """Factor f through a surjection proj (f must kill the kernel of proj)."""
    cols = []
    q = proj.codomain
    for j in range(q.ngens):
        unit = [1 if i == j else 0 for i in range(q.ngens)]
        pre = solve_in_group(proj.matrix, q, unit)
        if pre is None:
            raise InvalidInputError("projection is not surjective")
        cols.append(f.matrix.mul_vec(pre))
    mat = IntMatrix.from_rows(list(zip(*cols)) if cols else [], q.ngens)
    if not cols:
        mat = IntMatrix.zeros(f.codomain.ngens, 0)
    return Morphism(q, f.codomain, mat)


def _lift(f: Morphism, incl: Morphism) -> Morphism:
    """Factor f through an injection incl (image of f must lie in the image of incl)."""
    cols = []
    b = incl.codomain
    for j in range(f.domain.ngens):
        target = f.matrix.col(j)
        pre = solve_in_group(incl.matrix, b, target)
        if pre is None:
            raise InvalidInputError("map does not land inside the subgroup")
        cols.append(pre)
    if cols:
        mat = IntMatrix.from_rows(list(zip(*cols)), f.domain.ngens)
    else:
        mat = IntMatrix.zeros(incl.domain.ngens, 0)
    return Morphism(f.domain, incl.domain, mat)


def pushout(e: Extension, mu: Morphism) -> Extension:
    """Push the extension forward along mu: A -> A'.

    The new middle group is (A' + B) / {(mu(a), -phi(a))}.
    """
    if mu.domain != e.A:
        raise InvalidInputError("pushout morphism must start at the kernel group")
    a2 = mu.codomain
    ds = direct_sum(a2, e.B)
    h = (ds.inject_left @ mu) - (ds.inject_right @ e.phi)
    q, proj = cokernel(h)
    phi2 = proj @ ds.inject_left
    psi2 = _descend(e.psi @ ds.project_right, proj)
    return Extension(phi2, psi2)


def pullback(e: Extension, gamma: Morphism) -> Extension:
    """Pull the extension back along gamma: C' -> C.

    The new middle group is {(b, c') : psi(b) == gamma(c')} inside B + C'.
    """
    if gamma.codomain != e.C:
        raise InvalidInputError("pullback morphism must end at the quotient group")
    c2 = gamma.domain
    ds = direct_sum(e.B, c2)
    w = (e.psi @ ds.project_left) - (gamma @ ds.project_right)
    _, incl = kernel(w)
    psi2 = ds.project_right @ incl
    phi2 = _lift(ds.inject_left @ e.phi, incl)
    return Extension(phi2, psi2)


def direct_sum_ext(e1: Extension, e2: Extension) -> Extension:
    """Componentwise direct sum of two extensions."""
    ds_a = direct_sum(e1.A, e2.A)
    ds_b = direct_sum(e1.B, e2.B)
    ds_c = direct_sum(e1.C, e2.C)
    phi = (ds_b.inject_left @ e1.phi @ ds_a.project_left) + (
        ds_b.inject_right @ e2.phi @ ds_a.project_right
    )
    psi = (ds_c.inject_left @ e1.psi @ ds_b.project_left) + (
        ds_c.inject_right @ e2.psi @ ds_b.project_right
    )
    return Extension(phi, psi)


def baer_sum(e1: Extension, e2: Extension) -> Extension:
    """Baer sum: pull the direct sum back along the diagonal, then push
    it forward along the codiagonal."""
    if e1.A != e2.A or e1.C != e2.C:
        raise InvalidInputError("Baer sum requires matching end groups")
    both = direct_sum_ext(e1, e2)
    ds_c = direct_sum(e1.C, e1.C)
    diagonal = ds_c.inject_left + ds_c.inject_right
    pulled = pullback(both, diagonal)
    ds_a = direct_sum(e1.A, e1.A)
    codiagonal = ds_a.project_left + ds_a.project_right
    return pushout(pulled, codiagonal)


# -- classification ------------------------------------------------


def classify(e: Extension) -> ExtElement:
    """Coordinates of the class of e in ext_group(C, A).

    For each torsion generator c_i of C (order d_i), any lift b_i has
    d_i * b_i inside phi(A); the unique preimage a_i, read modulo
    d_i * A, is coordinate block i.  The value does not depend on the
    lift, which tests assert separately.
    """
    parent = ext_group(e.C, e.A)
    reps: list[Element] = []
    for i, d in enumerate(e.C.invariant_factors):
        unit = [1 if j == i else 0 for j in range(e.C.ngens)]
        b_coords = solve_in_group(e.psi.matrix, e.C, unit)
        assert b_coords is not None, "psi is surjective by validation"
        b = e.B.element(b_coords)
        w = b.scale(d)
        a_coords = solve_in_group(e.phi.matrix, e.B, w.coords())
        assert a_coords is not None, "d*b lies in ker psi == im phi"
        reps.append(e.A.element(a_coords))
    return _coords_from_representatives(parent, reps)


def extension_from_lift_data(A: FgGroup, C: FgGroup, lift_targets: list[Element]) -> Extension:
    """Build the extension whose i-th formal lift x_i satisfies d_i * x_i == a_i.

    Middle group presentation: generators of A, one x_i per torsion
    generator of C, one free lift per free generator of C; relations are
    A's own relations plus d_i * x_i - a_i.
    """
    n_a = A.ngens
    k_c = C.torsion_count
    r_c = C.free_rank
    if len(lift_targets) != k_c:
        raise InvalidInputError("need one lift target per torsion generator of C")
    m = n_a + k_c + r_c
    rel_cols: list[list[int]] = []
    rel_a = relation_matrix(A)
    for j in range(rel_a.cols):
        col = list(rel_a.col(j)) + [0] * (k_c + r_c)
        rel_cols.append(col)
    for i, d in enumerate(C.invariant_factors):
        a_i = lift_targets[i]
        if a_i.group != A:
            raise InvalidInputError("lift target is not an element of A")
        col = [-x for x in a_i.coords()] + [0] * (k_c + r_c)
        col[n_a + i] = d
        rel_cols.append(col)
    relations = (
        IntMatrix.from_rows(list(zip(*rel_cols)), len(rel_cols))
        if rel_cols
        else IntMatrix.zeros(m, 0)
    )
    b_grp, p, s = _canonicalize(m, relations)
    phi = Morphism(A, b_grp, p.take_cols(range(n_a)))
    # psi on the presentation generators: A -> 0, x_i -> c_i, free lift -> free gen.
    psi_cols: list[list[int]] = []
    for _ in range(n_a):
        psi_cols.append([0] * C.ngens)
    for i in range(k_c):
        col = [0] * C.ngens
        col[i] = 1
        psi_cols.append(col)
    for l in range(r_c):
        col = [0] * C.ngens
        col[k_c + l] = 1
        psi_cols.append(col)
    psi_free = IntMatrix.from_rows(list(zip(*psi_cols)), m)
    psi = Morphism(b_grp, C, psi_free @ s)
    return Extension(phi, psi)


def realize(x: ExtElement) -> Extension:
    """An extension whose classify() equals x.

    >>> from .fgabelian import parse_group
    >>> eg = ext_group(parse_group("Z/2"), parse_group("Z/2"))
    >>> realize(eg.element([1])).B
    FgGroup(free_rank=0, invariant_factors=(4,))
    """
    parent = x.parent
    reps = [
        _representative(parent, x, i) for i in range(parent.C.torsion_count)
    ]
    return extension_from_lift_data(parent.A, parent.C, reps)


def are_equivalent(e1: Extension, e2: Extension, cross_check: bool = False) -> bool:
    """Equivalence over fixed end groups, decided by classification.

    With cross_check=True (finite middles of order <= 64) the answer is
    double-checked against the exhaustive isomorphism search.
    """
    if e1.A != e2.A or e1.C != e2.C:
        raise InvalidInputError("equivalence requires matching end groups")
    answer = classify(e1) == classify(e2)
    if cross_check:
        from .oracle import oracle_equivalent

        brute = oracle_equivalent(e1, e2)
        assert brute == answer, "classification disagrees with exhaustive search"
    return answer


def splits(e: Extension) -> bool:
    """Is e equivalent to the direct-sum extension?"""
    return classify(e).is_zero()


def find_retraction(e: Extension) -> Morphism | None:
    """A retraction r: B -> A with r . phi == id, when one exists."""
    return left_inverse(e.phi)


def is_pure_extension(e: Extension) -> bool:
    """Is phi(A) a pure subgroup of B (decided via retraction existence)?"""
    return is_pure(e.phi)
