"""Standard simplices, their horns and boundaries, and the stratified
generators used to define complicial, n-trivial and saturated objects.

Vertices of every shape are labelled ``0..n``; a face is named by its vertex
list (``"0124"``), so faces of different shapes built on the same ``[n]``
share identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .simplicial import Inclusion, StratifiedComplex, face_name, make_complex

Face = tuple[int, ...]

FAMILIES = (
    "standard", "flat", "sharp", "boundary", "horn", "admissible", "admissible_horn",
    "primed", "double_primed", "thinness", "thin_top", "delta3_eq", "delta3_sharp", "saturation",
)


def subsets(n: int) -> list[Face]:
    return [S for size in range(1, n + 2) for S in combinations(range(n + 1), size)]


def from_faces(
    n: int,
    keep: Callable[[Face], bool] = lambda S: True,
    marked: Callable[[Face], bool] = lambda S: False,
    name: str = "",
) -> StratifiedComplex:
    """The subcomplex of ``Delta[n]`` on the faces selected by ``keep``."""
    chosen = [S for S in subsets(n) if keep(S)]
    cells: list[list[str]] = [[] for _ in range(n + 1)]
    faces = {}
    for S in chosen:
        cells[len(S) - 1].append(face_name(S))
        if len(S) > 1:
            faces[face_name(S)] = [face_name(S[:i] + S[i + 1:]) for i in range(len(S))]
    marking = [face_name(S) for S in chosen if len(S) > 1 and marked(S)]
    return make_complex(cells, faces, marking, bound=n, name=name)


def standard(n: int, marked: Callable[[Face], bool] = lambda S: False, name: str = "") -> StratifiedComplex:
    return from_faces(n, marked=marked, name=name or f"Delta[{n}]")


def sharp_simplex(n: int) -> StratifiedComplex:
    return standard(n, lambda S: True, f"Delta[{n}]#")


def thin_top(n: int) -> StratifiedComplex:
    return standard(n, lambda S: len(S) == n + 1, f"Delta[{n}]_t")


def boundary(n: int) -> StratifiedComplex:
    return from_faces(n, keep=lambda S: len(S) <= n, name=f"dDelta[{n}]")


def _check_horn(n: int, k: int) -> None:
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"horn parameters out of range: n={n}, k={k}")


def admissible_marked(n: int, k: int) -> Callable[[Face], bool]:
    required = {k - 1, k, k + 1} & set(range(n + 1))
    return lambda S: len(S) > 1 and required <= set(S)


def horn_faces(n: int, k: int) -> Callable[[Face], bool]:
    full = tuple(range(n + 1))
    missing = tuple(v for v in full if v != k)
    return lambda S: S != full and S != missing


def admissible(n: int, k: int) -> StratifiedComplex:
    _check_horn(n, k)
    return standard(n, admissible_marked(n, k), f"Delta^{k}[{n}]")


def admissible_horn(n: int, k: int) -> StratifiedComplex:
    _check_horn(n, k)
    return from_faces(n, horn_faces(n, k), admissible_marked(n, k), f"Lambda^{k}[{n}]")


def horn(n: int, k: int) -> StratifiedComplex:
    _check_horn(n, k)
    return from_faces(n, horn_faces(n, k), name=f"Lambda^{k}[{n}]_flat")


def primed(n: int, k: int) -> StratifiedComplex:
    if n < 2 or not 0 <= k <= n:
        raise ValueError(f"thinness extensions need n >= 2 and 0 <= k <= n (got n={n}, k={k})")
    base = admissible_marked(n, k)
    extra = {tuple(v for v in range(n + 1) if v != j) for j in (k - 1, k + 1) if 0 <= j <= n}
    return standard(n, lambda S: base(S) or S in extra, f"Delta^{k}[{n}]'")


def double_primed(n: int, k: int) -> StratifiedComplex:
    if n < 2 or not 0 <= k <= n:
        raise ValueError(f"thinness extensions need n >= 2 and 0 <= k <= n (got n={n}, k={k})")
    base = admissible_marked(n, k)
    return standard(n, lambda S: base(S) or len(S) >= n, f"Delta^{k}[{n}]''")


def delta3_eq() -> StratifiedComplex:
    return standard(3, lambda S: len(S) >= 3 or S in ((0, 2), (1, 3)), "Delta[3]_eq")


def delta3_sharp() -> StratifiedComplex:
    return sharp_simplex(3)


def saturation_shape(m: int, n: int, sharp_middle: bool) -> StratifiedComplex:
    """``Delta[m] * Delta[3]_eq * Delta[n]`` (or with ``Delta[3]#`` in the middle),
    realised on ``Delta[m+n+5]``."""
    if m < -1 or n < -1:
        raise ValueError("join parameters must be >= -1")
    lo = m + 1

    def marked(S: Face) -> bool:
        mid = tuple(v - lo for v in S if lo <= v < lo + 4)
        if sharp_middle:
            return len(mid) >= 2
        return len(mid) >= 3 or mid in ((0, 2), (1, 3))

    top = m + n + 5
    tag = "#" if sharp_middle else "_eq"
    return standard(top, marked, f"Delta[{m}]*Delta[3]{tag}*Delta[{n}]")


# -- inclusions -----------------------------------------------------------------


def boundary_inclusion(n: int) -> Inclusion:
    return Inclusion.of_subcomplex(boundary(n), standard(n))


def horn_inclusion(n: int, k: int) -> Inclusion:
    return Inclusion.of_subcomplex(horn(n, k), standard(n))


def admissible_horn_inclusion(n: int, k: int) -> Inclusion:
    return Inclusion.of_subcomplex(admissible_horn(n, k), admissible(n, k))


def thinness_inclusion(n: int, k: int) -> Inclusion:
    return Inclusion.of_subcomplex(primed(n, k), double_primed(n, k))


def thin_top_inclusion(n: int) -> Inclusion:
    if n < 1:
        raise ValueError("a 0-simplex cannot be marked")
    return Inclusion.of_subcomplex(standard(n), thin_top(n))


def saturation_inclusion(m: int, n: int) -> Inclusion:
    return Inclusion.of_subcomplex(saturation_shape(m, n, False), saturation_shape(m, n, True))


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int = 0
    k: int = 0
    m: int = -1


def make(spec: GeneratorSpec) -> StratifiedComplex | Inclusion:
    f, n, k, m = spec.family, spec.n, spec.k, spec.m
    if f not in FAMILIES:
        raise ValueError(f"unknown generator family {f!r}")
    if f not in ("delta3_eq", "delta3_sharp", "saturation") and n < 0:
        raise ValueError("n must be non-negative")
    if f in ("standard", "flat"):
        return standard(n)
    if f == "sharp":
        return sharp_simplex(n)
    if f == "boundary":
        return boundary_inclusion(n)
    if f == "horn":
        return horn_inclusion(n, k)
    if f == "admissible":
        return admissible(n, k)
    if f == "admissible_horn":
        return admissible_horn_inclusion(n, k)
    if f == "primed":
        return primed(n, k)
    if f == "double_primed":
        return double_primed(n, k)
    if f == "thinness":
        return thinness_inclusion(n, k)
    if f == "thin_top":
        return thin_top_inclusion(n)
    if f == "delta3_eq":
        return delta3_eq()
    if f == "delta3_sharp":
        return delta3_sharp()
    return saturation_inclusion(m, n)


def family(name: str, bound: int, n: int | None = None) -> list[Inclusion]:
    """Members of a generating family whose shapes have dimension at most ``bound``.

    ``name`` is one of ``I``, ``J``, ``Ktr`` (needs ``n``), ``Ks`` and
    ``Ks_left`` (the one-sided joins ``Delta[3]_eq * Delta[n]``).
    """
    if name == "I":
        return [boundary_inclusion(r) for r in range(bound + 1)] + \
               [thin_top_inclusion(r) for r in range(1, bound + 1)]
    if name == "J":
        horns = [admissible_horn_inclusion(r, k) for r in range(1, bound + 1) for k in range(r + 1)]
        thin = [thinness_inclusion(r, k) for r in range(2, bound + 1) for k in range(r + 1)]
        return horns + thin
    if name == "Ktr":
        if n is None:
            raise ValueError("Ktr needs the triviality level n")
        return [thin_top_inclusion(r) for r in range(max(n + 1, 1), bound + 1)]
    if name == "Ks":
        out = []
        for total in range(3, bound + 1):
            for a in range(-1, total - 3):
                b = total - 5 - a
                if b >= -1:
                    out.append(saturation_inclusion(a, b))
        return out
    if name == "Ks_left":
        return [saturation_inclusion(-1, b) for b in range(-1, bound - 3)]
    raise ValueError(f"unknown family {name!r}")


def vertex_sets(X: StratifiedComplex) -> dict[str, Face]:
    """Vertex set of each face of a shape built by :func:`from_faces`."""
    out = {}
    for x in X.ids:
        out[x] = tuple(int(c) for c in (x.split(".") if "." in x else x))
    return out
