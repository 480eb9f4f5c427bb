"""JSON forms for groups, elements, morphisms, extensions and classes.

Field names and their order are part of the CLI contract and are pinned
by golden tests.  Encoders emit plain dicts; decoders go through the
ordinary constructors so every decoded object is re-validated.
"""

from __future__ import annotations

from .extcalc import ExtElement, ext_group
from .extensions import Extension, make_extension
from .fgabelian import Element, FgGroup, Morphism
from .intmat import IntMatrix, InvalidInputError

__all__ = [
    "group_to_json",
    "group_from_json",
    "element_to_json",
    "element_from_json",
    "morphism_to_json",
    "morphism_from_json",
    "extension_to_json",
    "extension_from_json",
    "ext_element_to_json",
    "ext_element_from_json",
]


def group_to_json(g: FgGroup) -> dict:
    return {"free_rank": g.free_rank, "invariant_factors": list(g.invariant_factors)}


def group_from_json(obj: dict) -> FgGroup:
    if not isinstance(obj, dict) or "free_rank" not in obj or "invariant_factors" not in obj:
        raise InvalidInputError("group JSON needs free_rank and invariant_factors")
    return FgGroup(int(obj["free_rank"]), tuple(int(d) for d in obj["invariant_factors"]))


def element_to_json(el: Element) -> dict:
    return {"group": group_to_json(el.group), "coords": list(el.coords())}


def element_from_json(obj: dict) -> Element:
    g = group_from_json(obj["group"])
    return g.element([int(c) for c in obj["coords"]])


def morphism_to_json(f: Morphism) -> dict:
    return {
        "domain": group_to_json(f.domain),
        "codomain": group_to_json(f.codomain),
        "matrix": f.matrix.tolists(),
    }


def morphism_from_json(obj: dict) -> Morphism:
    domain = group_from_json(obj["domain"])
    codomain = group_from_json(obj["codomain"])
    rows = [[int(e) for e in row] for row in obj["matrix"]]
    return Morphism(domain, codomain, IntMatrix.from_rows(rows, domain.ngens))


def extension_to_json(e: Extension) -> dict:
    return {
        "A": group_to_json(e.A),
        "B": group_to_json(e.B),
        "C": group_to_json(e.C),
        "phi": morphism_to_json(e.phi),
        "psi": morphism_to_json(e.psi),
    }


def extension_from_json(obj: dict) -> Extension:
    a = group_from_json(obj["A"])
    b = group_from_json(obj["B"])
    c = group_from_json(obj["C"])
    phi = morphism_from_json(obj["phi"])
    psi = morphism_from_json(obj["psi"])
    if (phi.domain, phi.codomain) != (a, b):
        raise InvalidInputError("phi endpoints disagree with the declared A and B")
    if (psi.domain, psi.codomain) != (b, c):
        raise InvalidInputError("psi endpoints disagree with the declared B and C")
    return make_extension(phi, psi)


def ext_element_to_json(x: ExtElement) -> dict:
    return {
        "base": group_to_json(x.parent.C),
        "coefficients": group_to_json(x.parent.A),
        "coords": list(x.coords),
    }


def ext_element_from_json(obj: dict) -> ExtElement:
    c = group_from_json(obj["base"])
    a = group_from_json(obj["coefficients"])
    return ext_group(c, a).element([int(v) for v in obj["coords"]])
