"""Products, joins, slices, trivialization, cores and mono decompositions."""

from itertools import combinations, product as cartesian

import pytest

from complicial import constructions as cons
from complicial import fixtures, nerve, shapes
from complicial.lifting import iter_maps
from complicial.simplicial import (
    ComplexMap,
    Inclusion,
    SimplexRef,
    extend_bound,
    face_name,
    flat,
    identity_map,
    make_complex,
    sharp,
    validate_complex,
)


def chain_counts(p, q):
    """Nondegenerate simplices of Delta[p] x Delta[q]: strict chains in [p] x [q]."""
    points = sorted(cartesian(range(p + 1), range(q + 1)))
    below = lambda a, b: a != b and a[0] <= b[0] and a[1] <= b[1]
    counts = []
    for k in range(p + q + 1):
        counts.append(sum(1 for c in combinations(points, k + 1)
                          if all(below(c[i], c[i + 1]) for i in range(k))))
    return counts


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2)])
def test_product_counts_match_chains(p, q):
    P = cons.product(shapes.standard(p), shapes.standard(q), bound=p + q + 1)
    assert [len(c) for c in P.cells][: p + q + 1] == chain_counts(p, q)
    assert P.count(p + q + 1) == 0
    assert validate_complex(P) == []


def test_prism_marking():
    P = cons.product(shapes.standard(1), shapes.sharp_simplex(1), bound=2)
    assert [len(c) for c in P.cells] == [4, 5, 2]
    pa, pb = cons.projections(shapes.standard(1), shapes.sharp_simplex(1), P)
    assert pa.violations() == [] and pb.violations() == []
    for x in P.ids:
        thin = P.dim(x) > 0 and pa.codomain.is_thin(pa(x)) and pb.codomain.is_thin(pb(x))
        assert (x in P.marking) == thin
    assert "(s0(0),01)" in P.marking and "(01,01)" not in P.marking


def test_marked_edge_times_degenerate():
    P = cons.product(shapes.sharp_simplex(1), shapes.standard(0), bound=1)
    assert P.marking == {"(01,s0(0))"}


def test_product_with_point_is_identity():
    B = nerve.nerve(fixtures.get("iso"), 2, "saturated1")
    P = cons.product(shapes.standard(0), B, bound=2)
    assert cons.find_isomorphism(P, B) is not None


def test_product_ref_normal_form():
    A, B = shapes.standard(1), shapes.standard(1)
    a = SimplexRef("0", (1, 0))
    b = SimplexRef("01", (1,))
    assert cons.product_ref(A, B, a, b) == SimplexRef("(s0(0),01)", (1,))
    assert cons.parse_ref("s1s0(0)") == a


@pytest.mark.parametrize("n,m", [(0, 0), (0, 1), (1, 1), (1, 2), (0, 3)])
def test_join_of_simplices(n, m):
    J = cons.join(shapes.standard(n), shapes.standard(m))
    assert validate_complex(J) == []
    assert cons.find_isomorphism(J, shapes.standard(n + m + 1)) is not None


def test_join_with_empty_is_identity():
    empty = make_complex([[]], {}, (), 0)
    A = shapes.admissible(2, 1)
    for J in (cons.join(A, empty), cons.join(empty, A)):
        assert cons.find_isomorphism(J, extend_bound(A, 3)) is not None


def test_join_associative():
    D0, D1 = shapes.standard(0), shapes.sharp_simplex(1)
    left = cons.join(cons.join(D0, D1), D0)
    right = cons.join(D0, cons.join(D1, D0))
    assert cons.find_isomorphism(left, right) is not None


def test_join_marking():
    J = cons.join(shapes.sharp_simplex(1), shapes.standard(0))
    assert J.marking == {"(01*)", "(01*0)"}
    assert cons.find_isomorphism(cons.join(shapes.standard(1), shapes.standard(1)),
                                 shapes.saturation_shape(-1, -1, False)) is None
    assert cons.find_isomorphism(flat(cons.join(shapes.standard(1), shapes.standard(1))),
                                 flat(shapes.delta3_eq())) is not None


def _join_maps(X, A, sigma, side):
    n = A.ref_dim(sigma)
    D = shapes.standard(n)
    J = cons.join(X, D) if side == "right" else cons.join(D, X)
    fixed = {}
    for S in shapes.subsets(n):
        key = f"(*{face_name(S)})" if side == "right" else f"({face_name(S)}*)"
        fixed[key] = A.restrict(sigma, S)
    return sum(1 for _ in iter_maps(J, A, fixed=fixed))


@pytest.mark.parametrize("side", ["right", "left"])
def test_join_slice_correspondence(side):
    A = nerve.nerve(fixtures.get("poset3"), 4)
    sources = [shapes.standard(0), shapes.standard(1), shapes.thin_top(1),
               shapes.sharp_simplex(1), shapes.thin_top(2)]
    for sigma in (SimplexRef("1"), SimplexRef("12"), SimplexRef("1", (0,))):
        S = cons.slice(A, sigma, side)
        assert validate_complex(S) == []
        for X in sources:
            if X.top_dimension > S.dimension_bound:
                continue
            assert sum(1 for _ in iter_maps(X, S)) == _join_maps(X, A, sigma, side), (sigma, X.name)


def test_slice_of_edge_over_endpoints():
    A = extend_bound(shapes.standard(1), 2)
    S = cons.slice(A, "1")
    assert [set(c) for c in S.cells] == [{"01", "s0(1)"}, {"s1(01)"}]
    assert S.faces["s1(01)"] == (SimplexRef("s0(1)"), SimplexRef("01"))
    assert [len(c) for c in cons.slice(A, "0").cells] == [1, 0]


def test_slice_of_point():
    P = extend_bound(shapes.standard(0), 2)
    assert [len(c) for c in cons.slice(P, "0").cells] == [1, 0]


def test_slice_of_sharp_complex():
    A = sharp(nerve.nerve(fixtures.get("z3"), 3))
    S = cons.slice(A, "*", "left")
    assert all(x in S.marking for d, xs in enumerate(S.cells) if d > 0 for x in xs)


def test_slice_needs_room():
    with pytest.raises(ValueError):
        cons.slice(shapes.standard(1), "01")


def test_trivialize_and_core():
    D = shapes.standard(1)
    assert cons.trivialize(D, 0) == shapes.sharp_simplex(1)
    C = cons.core(D, 0)
    assert [set(c) for c in C.cells] == [{"0", "1"}, set()]
    X = nerve.nerve(fixtures.get("two-cell"), 3)
    for n in (0, 1, 2):
        K = cons.core(X, n)
        assert cons.core(K, n) == K
        T = cons.trivialize(X, n)
        assert cons.trivialize(T, n) == T
        assert cons.core(T, n) == T


def test_core_is_regular_subcomplex():
    X = nerve.nerve(fixtures.get("two-cell"), 3)
    K = cons.core(X, 1)
    inc = Inclusion.of_subcomplex(K, X)
    assert inc.kind == "regular" and inc.map.violations() == []
    assert "alpha" not in K.ids


def test_decompose_boundary_into_thin_simplex():
    inc = Inclusion.of_subcomplex(shapes.boundary(2), shapes.thin_top(2))
    assert [str(s) for s in cons.mono_decomposition(inc)] == [
        "attach 2-simplex 012", "mark 2-simplex 012"]


def test_decompose_identity():
    X = shapes.admissible(3, 1)
    assert cons.mono_decomposition(Inclusion(identity_map(X))) == []


def test_decompose_admissible_horn():
    steps = cons.mono_decomposition(shapes.admissible_horn_inclusion(2, 1))
    assert [(s.kind, s.simplex) for s in steps] == [("attach", "02"), ("attach", "012"), ("mark", "012")]


def test_decompose_rejects_non_stratified_maps():
    bad = ComplexMap(shapes.thin_top(1), shapes.standard(1),
                     {"0": SimplexRef("0"), "1": SimplexRef("1"), "01": SimplexRef("01")})
    with pytest.raises(ValueError):
        cons.mono_decomposition(Inclusion(bad))


def test_recompose_rejects_bad_order():
    inc = shapes.horn_inclusion(2, 1)
    with pytest.raises(ValueError):
        cons.recompose(inc, [cons.Step("attach", "012", 2), cons.Step("attach", "02", 1)])
