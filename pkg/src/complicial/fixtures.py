"""A small corpus of finite categories used by the tests and the CLI."""

from __future__ import annotations

from typing import Callable

from .omega import OmegaCat, category, free_category, from_tables


def poset(n: int) -> OmegaCat:
    """The ordinal ``[n]`` as a category; the arrow ``i <= j`` is named ``"ij"``."""
    objs = [str(i) for i in range(n + 1)]
    arrows = {f"{i}{j}": (str(i), str(j)) for i in range(n + 1) for j in range(i + 1, n + 1)}
    comp = {}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                comp[(f"{j}{k}", f"{i}{j}")] = f"{i}{k}"
    return category(objs, arrows, comp, name=f"[{n}]")


def walking_iso() -> OmegaCat:
    return category(["x", "y"], {"f": ("x", "y"), "g": ("y", "x")},
                    {("g", "f"): "x", ("f", "g"): "y"}, name="Iso")


def cyclic_group(order: int) -> OmegaCat:
    """The group ``Z/order`` as a one-object category; ``"*"`` is the object."""
    names = ["*"] + [f"a{i}" for i in range(1, order)]

    def el(i: int) -> str:
        return names[i % order]

    arrows = {el(i): ("*", "*") for i in range(1, order)}
    comp = {(el(i), el(j)): el(i + j) for i in range(1, order) for j in range(1, order)}
    return category(["*"], arrows, comp, name=f"Z{order}")


def parallel_pair() -> OmegaCat:
    return category(["x", "y"], {"f": ("x", "y"), "g": ("x", "y")}, name="Par")


def chain(n: int) -> OmegaCat:
    """The free category on ``0 -> 1 -> ... -> n`` with generators ``e1..en``."""
    return free_category([str(i) for i in range(n + 1)],
                         {f"e{i}": (str(i - 1), str(i)) for i in range(1, n + 1)}, name=f"chain{n}")


def _two_category(cells0, cells1, cells2, comp0=None, comp1=None, name="") -> OmegaCat:
    """A 2-category from its cells.

    ``cells1[f] = (x, y)``; ``cells2[a] = (f, g)`` for ``a: f => g``;
    ``comp0`` and ``comp1`` give the non-unit composites.
    """
    s0, t0, s1, t1 = {}, {}, {}, {}
    for x in cells0:
        s0[x] = t0[x] = s1[x] = t1[x] = x
    for f, (x, y) in cells1.items():
        s0[f], t0[f] = x, y
        s1[f] = t1[f] = f
    for a, (f, g) in cells2.items():
        s0[a], t0[a] = s0[f], t0[f]
        s1[a], t1[a] = f, g
    elems = list(cells0) + list(cells1) + list(cells2)
    return from_tables(elems, [s0, s1], [t0, t1], [dict(comp0 or {}), dict(comp1 or {})], name)


def two_cell() -> OmegaCat:
    """Five elements: objects ``x, y``, arrows ``f, g: x -> y`` and ``alpha: f => g``."""
    return _two_category(["x", "y"], {"f": ("x", "y"), "g": ("x", "y")}, {"alpha": ("f", "g")},
                         name="2cell")


def invertible_two_cell() -> OmegaCat:
    """Like :func:`two_cell` with an inverse ``beta: g => f``."""
    return _two_category(["x", "y"], {"f": ("x", "y"), "g": ("x", "y")},
                         {"alpha": ("f", "g"), "beta": ("g", "f")},
                         comp1={("beta", "alpha"): "f", ("alpha", "beta"): "g"}, name="2iso")


def z2_two_category() -> OmegaCat:
    """One object, its identity, and one invertible 2-cell ``a`` with ``a * a = 1``."""
    return _two_category(["x"], {}, {"a": ("x", "x")},
                         comp0={("a", "a"): "x"}, comp1={("a", "a"): "x"}, name="Z2cell")


def idempotent_two_category() -> OmegaCat:
    """One object and one idempotent, non-invertible 2-cell ``e``."""
    return _two_category(["x"], {}, {"e": ("x", "x")},
                         comp0={("e", "e"): "e"}, comp1={("e", "e"): "e"}, name="Idem2cell")


CATEGORIES: dict[str, Callable[[], OmegaCat]] = {
    "poset2": lambda: poset(2),
    "poset3": lambda: poset(3),
    "iso": walking_iso,
    "z3": lambda: cyclic_group(3),
    "parallel": parallel_pair,
    "chain3": lambda: chain(3),
    "two-cell": two_cell,
    "two-iso": invertible_two_cell,
    "z2-cell": z2_two_category,
    "idempotent-cell": idempotent_two_category,
}


def get(name: str) -> OmegaCat:
    try:
        return CATEGORIES[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(sorted(CATEGORIES))}") from None
