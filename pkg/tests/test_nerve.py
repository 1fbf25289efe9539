"""Street nerves and their stratifications."""

from math import comb

import pytest

from complicial import fixtures, nerve, orientals
from complicial.omega import category, identity_functor
from complicial.simplicial import validate_complex


@pytest.mark.parametrize("name", sorted(fixtures.CATEGORIES))
def test_fixture_nerves_are_valid(name):
    assert validate_complex(nerve.nerve(fixtures.get(name), 3)) == []


def test_poset_counts_are_binomial():
    X = nerve.nerve(fixtures.get("poset3"), 4)
    assert [len(c) for c in X.cells] == [comb(4, k + 1) for k in range(5)]


def test_group_counts_are_strings():
    # nondegenerate k-simplices are strings of k non-identity elements
    X = nerve.nerve(fixtures.get("z3"), 4)
    assert [len(c) for c in X.cells] == [2 ** k for k in range(5)]


def test_identity_marking_of_a_poset():
    X = nerve.nerve(fixtures.get("poset2"), 4)
    assert [X.dim(x) for x in X.marking] == [2]


def test_two_simplices_are_cells_into_composites():
    C = fixtures.get("two-cell")
    N = nerve.street_nerve(C, 3)
    twos = [x for ident, x in N.simplices.items() if x.arity == 2]
    assert twos
    for x in twos:
        top = x[(0, 1, 2)]
        assert C.s(1, top) == x[(0, 2)]
        assert C.t(1, top) == C.comp(0, x[(1, 2)], x[(0, 1)])
    assert any(x.top == "alpha" for x in twos)


def test_normal_forms_rebuild_every_simplex():
    N = nerve.street_nerve(fixtures.get("iso"), 3)
    for n, xs in N.all_simplices.items():
        for x in xs:
            ref = N.ref(x)
            assert N.simplex(ref) == x
            assert N.complex.ref_dim(ref) == n


def test_faces_agree_with_the_complex():
    N = nerve.street_nerve(fixtures.get("two-iso"), 3)
    X = N.complex
    for ident, x in N.simplices.items():
        for i in range(x.arity + 1 if x.arity else 0):
            assert N.ref(x.face(i)) == X.faces[ident][i]


def test_saturated_markings():
    iso = nerve.nerve(fixtures.get("iso"), 3, "saturated1")
    assert {x for x in iso.marking if iso.dim(x) == 1} == {"f", "g"}
    z3 = nerve.nerve(fixtures.get("z3"), 3, "saturated1")
    assert {x for x in z3.marking if z3.dim(x) == 1} == {"a1", "a2"}
    par = nerve.nerve(fixtures.get("parallel"), 3, "saturated1")
    assert {x for x in par.marking if par.dim(x) == 1} == set()
    two = nerve.street_nerve(fixtures.get("two-iso"), 3, "saturated2")
    marked2 = {two.simplices[x].top for x in two.complex.marking if two.complex.dim(x) == 2}
    assert {"alpha", "beta"} <= marked2


def test_custom_stratification():
    X = nerve.nerve(fixtures.get("poset2"), 2, lambda C, x: x.arity == 1 and x.top == "01")
    assert X.marking == {"01"}


def test_bad_inputs():
    with pytest.raises(ValueError):
        nerve.nerve(fixtures.get("two-cell"), 3, "saturated1")
    with pytest.raises(ValueError):
        nerve.nerve(fixtures.get("poset2"), 2, "bogus")
    broken = category(["x", "y"], {"f": ("x", "y"), "g": ("y", "x")}, {("g", "f"): "f", ("f", "g"): "y"})
    with pytest.raises(ValueError):
        nerve.nerve(broken, 2)


def test_default_bound():
    assert nerve.default_bound(fixtures.get("two-cell")) == 4
    assert nerve.nerve(fixtures.get("poset2")).dimension_bound == 3


def test_oriental_has_a_universal_simplex():
    O = orientals.build_oriental(2)
    N = nerve.street_nerve(O.category, 2)
    universal = nerve.NerveSimplex(2, tuple(orientals.atom(S) for S in nerve.subsets_of(2)))
    assert universal in N.simplices.values()
    F = nerve.simplex_functor(O.category, universal)
    assert F.violations() == []
    assert F.mapping == identity_functor(O.category).mapping
    # the only 2-simplex on the vertices 0, 1, 2 that picks out the top cell
    spread = [x for x in N.simplices.values() if x.arity == 2 and x.top == O.top
              and [x[(v,)] for v in range(3)] == [orientals.atom((v,)) for v in range(3)]]
    assert spread == [universal]


def test_coskeletality_of_a_poset():
    report = nerve.coskeletality_check(fixtures.get("poset2"), 1, 4)
    assert report.passed
    with pytest.raises(ValueError):
        nerve.coskeletality_check(fixtures.get("two-cell"), 1, 4)
