"""Built-in presentations used by the test suite and ``vncheck examples``."""

from __future__ import annotations

from .exactla import LinMap, identity, scalar
from .tannaka import FunctorStructure, Generator, MonoidalPresentation
from .vncore import cyclic_table, klein_table


def characters(table, names, generators=()) -> tuple[MonoidalPresentation, FunctorStructure]:
    """One-dimensional characters of an abelian group, tensored by the group law.

    Every functor component is the 1x1 identity and ``A* = A^-1``.
    """
    n = len(table)
    unit = next(e for e in range(n) if all(table[e][a] == a for a in range(n)))
    dual = tuple(next(b for b in range(n) if table[a][b] == unit) for a in range(n))
    p = MonoidalPresentation(tuple(names), (1,) * n, unit, tuple(map(tuple, table)), dual,
                             tuple(generators))
    one = identity(1)
    pairs = [(a, b) for a in range(n) for b in range(n)]
    f = FunctorStructure(r={ab: one for ab in pairs}, r0=one, i={ab: one for ab in pairs}, i0=one,
                         u={a: one for a in range(n)}, Ue={a: one for a in range(n)})
    return p, f


def trivial():
    return characters([[0]], ["I"])


def z2_characters():
    return characters(cyclic_table(2), ["I", "s"])


def z3_characters():
    return characters(cyclic_table(3), ["I", "w", "w2"])


def klein_characters():
    return characters(klein_table(), ["I", "a", "b", "ab"])


def z2_copy(whiskered: bool = True):
    """Characters of Z/2 x Z/2 where the second factor acts trivially on U.

    ``t`` is a copy of ``I`` via ``phi: I -> t``.  With ``whiskered`` the
    generator ``phi (x) s: s -> ts`` is present as well and the coend is the
    2-dimensional group algebra of Z/2; without it the coend relations do not
    form an ideal and the multiplication is not well defined.
    """
    one = scalar(1)
    gens = [Generator("phi", 0, 2, one)]
    if whiskered:
        gens.append(Generator("phi_s", 1, 3, one))
    return characters(klein_table(), ["I", "s", "t", "ts"], gens)


def z2_representations(redundant: bool = False) -> MonoidalPresentation:
    """Objects ``I``, ``s`` and ``rho = I + s`` with the two injections and projections.

    Not monoidal: only the coend is computed.  ``redundant`` adds composite
    generators, which must leave the coend unchanged.
    """
    inj_I = LinMap.from_rows([[1], [0]])
    inj_s = LinMap.from_rows([[0], [1]])
    proj_I = LinMap.from_rows([[1, 0]])
    proj_s = LinMap.from_rows([[0, 1]])
    gens = [
        Generator("inj_I", 0, 2, inj_I),
        Generator("inj_s", 1, 2, inj_s),
        Generator("proj_I", 2, 0, proj_I),
        Generator("proj_s", 2, 1, proj_s),
    ]
    if redundant:
        gens += [
            Generator("e_I", 2, 2, inj_I @ proj_I),
            Generator("e_s", 2, 2, inj_s @ proj_s),
            Generator("id_I", 0, 0, proj_I @ inj_I),
            Generator("swap_route", 1, 0, proj_I @ inj_s),
            Generator("twice_inj_I", 0, 2, inj_I.scale(2) @ proj_I @ inj_I),
        ]
    return MonoidalPresentation(("I", "s", "rho"), (1, 1, 2), 0, None, None, tuple(gens))


def perturb_Ue(f: FunctorStructure, a: int) -> FunctorStructure:
    """Flip the sign of ``Ue[a]``."""
    Ue = dict(f.Ue)
    Ue[a] = -Ue[a]
    return FunctorStructure(f.r, f.r0, f.i, f.i0, f.u, Ue)


MONOIDAL = {
    "trivial": trivial,
    "z2_characters": z2_characters,
    "z3_characters": z3_characters,
    "klein_characters": klein_characters,
    "z2_copy": z2_copy,
}
