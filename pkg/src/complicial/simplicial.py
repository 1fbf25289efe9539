"""Finite stratified simplicial sets stored in Eilenberg-Zilber normal form.

Only nondegenerate simplices are stored.  Every simplex, degenerate or not,
is addressed by a :class:`SimplexRef`: a nondegenerate target together with a
strictly decreasing word of degeneracy indices.  Internally a degeneracy word
is handled as the monotone surjection ``[m] -> [d]`` it determines, which makes
composition with face and degeneracy operators a matter of composing tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Surjection = tuple[int, ...]

_DIGITS = re.compile(r"(\d+)")


def id_key(ident: str) -> tuple:
    """Natural-order key for simplex identifiers (``"2" < "10"``)."""
    parts = _DIGITS.split(ident)
    chunks = tuple(int(p) if i % 2 else p for i, p in enumerate(parts))
    return chunks, ident


def face_name(vertices: Iterable[int]) -> str:
    vs = list(vertices)
    if all(v < 10 for v in vs):
        return "".join(map(str, vs))
    return ".".join(map(str, vs))


def word_to_surjection(word: Sequence[int], d: int) -> Surjection:
    collapse = set(word)
    m = d + len(word)
    out = []
    seen = 0
    for i in range(m + 1):
        out.append(i - seen)
        if i in collapse:
            seen += 1
    return tuple(out)


def surjection_to_word(surj: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((i for i in range(len(surj) - 1) if surj[i] == surj[i + 1]), reverse=True))


def surjections(p: int, d: int) -> list[Surjection]:
    """All monotone surjections ``[p] -> [d]`` in lexicographic order of collapse sets."""
    if d > p or d < 0:
        return []
    return [word_to_surjection(c, d) for c in combinations(range(p), p - d)]


@dataclass(frozen=True)
class SimplexRef:
    """A simplex in normal form: ``s_{j1} ... s_{jt} target`` with ``j1 > ... > jt``."""

    target: str
    degeneracies: tuple[int, ...] = ()

    def __post_init__(self):
        w = self.degeneracies
        if any(w[i] <= w[i + 1] for i in range(len(w) - 1)):
            raise ValueError(f"degeneracy word {w} is not strictly decreasing")

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degeneracies)

    def __str__(self) -> str:
        if not self.degeneracies:
            return self.target
        return "".join(f"s{j}" for j in self.degeneracies) + f"({self.target})"

    def sort_key(self) -> tuple:
        return id_key(self.target), self.degeneracies


def nd(ident: str) -> SimplexRef:
    return SimplexRef(ident)


@dataclass(frozen=True, eq=False)
class StratifiedComplex:
    """A finite stratified simplicial set, complete up to ``dimension_bound``.

    ``cells[d]`` lists the nondegenerate ``d``-simplices, ``faces[x]`` the
    ``m+1`` faces of a nondegenerate ``m``-simplex ``x`` (``m > 0``), and
    ``marking`` the marked nondegenerate simplices.  Degenerate simplices are
    implicitly thin.  Use :func:`make_complex` to build one.
    """

    cells: tuple[tuple[str, ...], ...]
    faces: Mapping[str, tuple[SimplexRef, ...]]
    marking: frozenset[str]
    dimension_bound: int
    name: str = field(default="", compare=False)

    # -- identity ---------------------------------------------------------

    @cached_property
    def _signature(self):
        return (
            self.dimension_bound,
            tuple(frozenset(c) for c in self.cells),
            frozenset(self.faces.items()),
            self.marking,
        )

    def __eq__(self, other):
        if not isinstance(other, StratifiedComplex):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        counts = [len(c) for c in self.cells]
        label = f"{self.name} " if self.name else ""
        return f"<StratifiedComplex {label}cells={counts} marked={len(self.marking)} bound={self.dimension_bound}>"

    # -- basic queries ----------------------------------------------------

    @cached_property
    def dims(self) -> dict[str, int]:
        return {x: d for d, xs in enumerate(self.cells) for x in xs}

    @property
    def ids(self) -> list[str]:
        return [x for xs in self.cells for x in xs]

    @property
    def top_dimension(self) -> int:
        nonempty = [d for d, xs in enumerate(self.cells) if xs]
        return max(nonempty) if nonempty else -1

    def dim(self, x: str) -> int:
        return self.dims[x]

    def count(self, d: int) -> int:
        return len(self.cells[d]) if d < len(self.cells) else 0

    def ref_dim(self, ref: SimplexRef) -> int:
        return self.dims[ref.target] + len(ref.degeneracies)

    def surjection(self, ref: SimplexRef) -> Surjection:
        return word_to_surjection(ref.degeneracies, self.dims[ref.target])

    @staticmethod
    def ref_from_surjection(target: str, surj: Sequence[int]) -> SimplexRef:
        return SimplexRef(target, surjection_to_word(surj))

    def is_thin(self, ref: SimplexRef | str) -> bool:
        if isinstance(ref, str):
            return ref in self.marking
        return ref.is_degenerate or ref.target in self.marking

    # -- simplicial operators ---------------------------------------------

    def degenerate(self, ref: SimplexRef, surj: Sequence[int]) -> SimplexRef:
        """Precompose ``ref`` with the monotone surjection ``surj``."""
        sigma = self.surjection(ref)
        return self.ref_from_surjection(ref.target, tuple(sigma[j] for j in surj))

    def face(self, ref: SimplexRef, i: int) -> SimplexRef:
        """The ``i``-th face of ``ref``, in normal form."""
        sigma = self.surjection(ref)
        m = len(sigma) - 1
        if m == 0 or not 0 <= i <= m:
            raise IndexError(f"face index {i} out of range for a {m}-simplex")
        tau = sigma[:i] + sigma[i + 1:]
        v = sigma[i]
        if v in tau:
            return self.ref_from_surjection(ref.target, tau)
        lower = self.faces[ref.target][v]
        return self.degenerate(lower, tuple(x if x < v else x - 1 for x in tau))

    def restrict(self, ref: SimplexRef, vertices: Sequence[int]) -> SimplexRef:
        """Pull ``ref`` back along an injective monotone map given by its image."""
        m = self.ref_dim(ref)
        keep = set(vertices)
        for v in range(m, -1, -1):
            if v not in keep:
                ref = self.face(ref, v)
        return ref

    def act(self, ref: SimplexRef, theta: Sequence[int]) -> SimplexRef:
        """Pull ``ref`` back along an arbitrary monotone map ``theta: [q] -> [m]``."""
        image = sorted(set(theta))
        base = self.restrict(ref, image)
        pos = {v: i for i, v in enumerate(image)}
        return self.degenerate(base, tuple(pos[t] for t in theta))

    def vertices_of(self, ref: SimplexRef) -> tuple[str, ...]:
        m = self.ref_dim(ref)
        return tuple(self.act(ref, (i,)).target for i in range(m + 1))

    def simplices(self, p: int) -> list[SimplexRef]:
        """All ``p``-simplices, degenerate ones first, in canonical order."""
        out = []
        for d in range(min(p, len(self.cells) - 1) + 1):
            for surj in surjections(p, d):
                for x in self.cells[d]:
                    out.append(self.ref_from_surjection(x, surj))
        return out

    @cached_property
    def table(self) -> "SimplexTable":
        return SimplexTable(self)


class SimplexTable:
    """Integer-coded index of every simplex up to the bound, used by searches."""

    def __init__(self, X: StratifiedComplex):
        self.complex = X
        self.refs: list[SimplexRef] = []
        self.code: dict[SimplexRef, int] = {}
        self.dim: list[int] = []
        self.thin: list[bool] = []
        self.faces: list[tuple[int, ...]] = []
        self.by_faces: dict[tuple[int, ...], list[int]] = {}
        self.by_dim: list[list[int]] = []
        self._degen: dict[tuple[int, Surjection], int] = {}
        for p in range(X.dimension_bound + 1):
            layer = []
            for ref in X.simplices(p):
                c = len(self.refs)
                self.refs.append(ref)
                self.code[ref] = c
                self.dim.append(p)
                self.thin.append(p > 0 and X.is_thin(ref))
                fs = tuple(self.code[X.face(ref, i)] for i in range(p + 1)) if p else ()
                self.faces.append(fs)
                if p:
                    self.by_faces.setdefault(fs, []).append(c)
                layer.append(c)
            self.by_dim.append(layer)

    @property
    def vertices(self) -> list[int]:
        return self.by_dim[0] if self.by_dim else []

    def degenerate(self, c: int, surj: Surjection) -> int:
        key = (c, surj)
        hit = self._degen.get(key)
        if hit is None:
            if len(surj) == 1 + self.dim[c] and all(surj[i] == i for i in range(len(surj))):
                hit = c
            else:
                hit = self.code[self.complex.degenerate(self.refs[c], surj)]
            self._degen[key] = hit
        return hit


def make_complex(
    cells: Sequence[Iterable[str]],
    faces: Mapping[str, Sequence[SimplexRef | str]],
    marking: Iterable[str] = (),
    bound: int | None = None,
    name: str = "",
) -> StratifiedComplex:
    """Build a complex, sorting identifiers canonically.

    Face entries may be plain identifiers for nondegenerate faces.
    """
    layers = [tuple(sorted(set(c), key=id_key)) for c in cells]
    top = max((d for d, c in enumerate(layers) if c), default=0)
    if bound is None:
        bound = top
    while len(layers) <= bound:
        layers.append(())
    norm = {
        x: tuple(f if isinstance(f, SimplexRef) else SimplexRef(f) for f in fs)
        for x, fs in faces.items()
    }
    return StratifiedComplex(tuple(layers), norm, frozenset(marking), bound, name)


def with_marking(X: StratifiedComplex, marking: Iterable[str], name: str | None = None) -> StratifiedComplex:
    return StratifiedComplex(X.cells, X.faces, frozenset(marking), X.dimension_bound,
                             X.name if name is None else name)


def flat(X: StratifiedComplex) -> StratifiedComplex:
    """Minimal stratification: only degenerate simplices thin."""
    return with_marking(X, ())


def sharp(X: StratifiedComplex) -> StratifiedComplex:
    """Maximal stratification: every positive-dimensional simplex thin."""
    return with_marking(X, [x for d, xs in enumerate(X.cells) if d > 0 for x in xs])


def extend_bound(X: StratifiedComplex, bound: int) -> StratifiedComplex:
    """Raise the bound of a complex that has no nondegenerate simplices above it."""
    if bound < X.dimension_bound:
        raise ValueError("use truncate to lower the bound")
    cells = list(X.cells) + [()] * (bound - X.dimension_bound)
    return StratifiedComplex(tuple(cells), X.faces, X.marking, bound, X.name)


def truncate(X: StratifiedComplex, bound: int) -> StratifiedComplex:
    keep = [x for d, xs in enumerate(X.cells[: bound + 1]) for x in xs]
    return subcomplex(X, keep, bound=bound)


def subcomplex(
    X: StratifiedComplex,
    ids: Iterable[str],
    marking: Iterable[str] | None = None,
    bound: int | None = None,
) -> StratifiedComplex:
    """The subcomplex on ``ids`` (which must be closed under faces).

    The marking defaults to the restriction of ``X``'s marking, giving a
    regular inclusion.
    """
    keep = set(ids)
    for x in keep:
        for f in X.faces.get(x, ()):
            if f.target not in keep:
                raise ValueError(f"{x!r} has face {f} outside the subcomplex")
    bound = X.dimension_bound if bound is None else bound
    cells = [[x for x in xs if x in keep] for xs in X.cells[: bound + 1]]
    if marking is None:
        marking = X.marking & keep
    faces = {x: X.faces[x] for x in keep if x in X.faces}
    return make_complex(cells, faces, marking, bound, X.name)


# -- maps ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComplexMap:
    """A stratified map, given by the images of nondegenerate simplices."""

    domain: StratifiedComplex
    codomain: StratifiedComplex
    assignment: Mapping[str, SimplexRef]

    def __call__(self, ref: SimplexRef | str) -> SimplexRef:
        if isinstance(ref, str):
            return self.assignment[ref]
        image = self.assignment[ref.target]
        if not ref.degeneracies:
            return image
        return self.codomain.degenerate(image, self.domain.surjection(ref))

    @cached_property
    def _signature(self):
        return self.domain, self.codomain, frozenset(self.assignment.items())

    def __eq__(self, other):
        if not isinstance(other, ComplexMap):
            return NotImplemented
        return self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def violations(self) -> list[str]:
        out = []
        X, Y = self.domain, self.codomain
        for x in X.ids:
            if x not in self.assignment:
                out.append(f"{x}: unassigned")
                continue
            y = self.assignment[x]
            if y.target not in Y.dims:
                out.append(f"{x}: image {y} not in codomain")
                continue
            if Y.ref_dim(y) != X.dim(x):
                out.append(f"{x}: image {y} has wrong dimension")
                continue
            if X.dim(x) > 0:
                for i, f in enumerate(X.faces[x]):
                    if f.target not in self.assignment:
                        continue
                    if Y.face(y, i) != self(f):
                        out.append(f"{x}: face {i} does not commute")
            if x in X.marking and not Y.is_thin(y):
                out.append(f"{x}: marked simplex sent to unmarked {y}")
        extra = set(self.assignment) - set(X.dims)
        for x in sorted(extra, key=id_key):
            out.append(f"{x}: assigned but not in domain")
        return out

    def then(self, other: "ComplexMap") -> "ComplexMap":
        """``other`` after ``self``."""
        return ComplexMap(self.domain, other.codomain, {x: other(y) for x, y in self.assignment.items()})

    @property
    def is_injective(self) -> bool:
        images = list(self.assignment.values())
        return all(not y.is_degenerate for y in images) and len(set(images)) == len(images)


def identity_map(X: StratifiedComplex) -> ComplexMap:
    return ComplexMap(X, X, {x: SimplexRef(x) for x in X.ids})


class Inclusion:
    """A monomorphism of stratified sets, classified as regular/entire/mixed."""

    def __init__(self, map: ComplexMap):
        if not map.is_injective:
            raise ValueError("an inclusion must be injective with nondegenerate images")
        self.map = map

    @classmethod
    def of_subcomplex(cls, U: StratifiedComplex, V: StratifiedComplex) -> "Inclusion":
        return cls(ComplexMap(U, V, {x: SimplexRef(x) for x in U.ids}))

    @property
    def domain(self) -> StratifiedComplex:
        return self.map.domain

    @property
    def codomain(self) -> StratifiedComplex:
        return self.map.codomain

    def image(self, x: str) -> str:
        return self.map.assignment[x].target

    @property
    def is_regular(self) -> bool:
        return all((x in self.domain.marking) == (self.image(x) in self.codomain.marking)
                   for x in self.domain.ids)

    @property
    def is_entire(self) -> bool:
        return len(self.domain.ids) == len(self.codomain.ids)

    @property
    def kind(self) -> str:
        if self.is_entire:
            return "entire"
        return "regular" if self.is_regular else "mixed"

    def __eq__(self, other):
        return isinstance(other, Inclusion) and self.map == other.map

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"<Inclusion {self.kind} {self.domain!r} -> {self.codomain!r}>"


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map ``[source] -> [target]``."""

    source: int
    target: int
    values: tuple[int, ...]

    def __post_init__(self):
        v = self.values
        if len(v) != self.source + 1:
            raise ValueError("value list has the wrong length")
        if any(not 0 <= x <= self.target for x in v) or any(v[i] > v[i + 1] for i in range(len(v) - 1)):
            raise ValueError(f"{v} is not a monotone map [{self.source}] -> [{self.target}]")

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @classmethod
    def coface(cls, n: int, i: int) -> "MonotoneMap":
        return cls(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))

    @classmethod
    def codegeneracy(cls, n: int, j: int) -> "MonotoneMap":
        return cls(n + 1, n, tuple(i if i <= j else i - 1 for i in range(n + 2)))

    def __call__(self, i: int) -> int:
        return self.values[i]


# -- validation ----------------------------------------------------------------


def validate_complex(X: StratifiedComplex) -> list[str]:
    """Every violated invariant of ``X``, as human-readable strings."""
    out: list[str] = []
    seen: dict[str, int] = {}
    for d, xs in enumerate(X.cells):
        for x in xs:
            if x in seen:
                out.append(f"{x}: identifier used in dimensions {seen[x]} and {d}")
            seen[x] = d
    if len(X.cells) != X.dimension_bound + 1:
        out.append("cell layers do not match the dimension bound")
    for x, d in seen.items():
        fs = X.faces.get(x, ())
        if d == 0:
            if fs:
                out.append(f"{x}: 0-simplex has faces")
            continue
        if len(fs) != d + 1:
            out.append(f"{x}: expected {d + 1} faces, got {len(fs)}")
            continue
        for i, f in enumerate(fs):
            if f.target not in seen:
                out.append(f"{x}: face {i} refers to unknown simplex {f.target!r}")
            elif seen[f.target] + len(f.degeneracies) != d - 1:
                out.append(f"{x}: face {i} has dimension {seen[f.target] + len(f.degeneracies)}, expected {d - 1}")
            elif f.degeneracies and f.degeneracies[0] >= d - 1:
                # word indices must be < the face dimension
                out.append(f"{x}: face {i} has invalid degeneracy word {f.degeneracies}")
    for x in X.faces:
        if x not in seen:
            out.append(f"{x}: faces given for unknown simplex")
    for x in sorted(X.marking, key=id_key):
        if x not in seen:
            out.append(f"{x}: marked simplex does not exist")
        elif seen[x] == 0:
            out.append(f"{x}: marked 0-simplex")
    if out:
        return out
    for x, d in seen.items():
        if d < 2:
            continue
        ref = SimplexRef(x)
        for j in range(d + 1):
            for i in range(j):
                lhs = X.face(X.face(ref, j), i)
                rhs = X.face(X.face(ref, i), j - 1)
                if lhs != rhs:
                    out.append(f"{x}: simplicial identity d{i}d{j} = d{j - 1}d{i} fails ({lhs} != {rhs})")
    return out


def evaluate_face(X: StratifiedComplex, s: SimplexRef, i: int) -> SimplexRef:
    return X.face(s, i)


def all_faces(X: StratifiedComplex, x: str) -> Iterator[SimplexRef]:
    """Every face ``x . theta`` for injective ``theta``, including ``x`` itself."""
    d = X.dim(x)
    ref = SimplexRef(x)
    for size in range(1, d + 2):
        for vs in combinations(range(d + 1), size):
            yield X.restrict(ref, vs)
