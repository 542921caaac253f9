import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
import util
from roundideal.errors import MalformedInput, NotACoverError, PreconditionError
from roundideal.lattice import (
    Basis,
    Cover,
    PcdLattice,
    boolean,
    chain,
    downset_lattice,
    full_basis,
    is_compact,
    is_regular,
    pcd_closure,
    pseudocomplement,
    validate,
    well_inside,
)


def pentagon():
    # 0 < a < 1 and 0 < b < c < 1 with a incomparable to b, c
    names = ["0", "a", "b", "c", "1"]
    order = {
        (0, 0), (1, 1), (2, 2), (3, 3), (4, 4),
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 4), (2, 3), (2, 4), (3, 4),
    }
    leq = [[(i, j) in order for j in range(5)] for i in range(5)]
    return PcdLattice(names, leq, name="N5")


class TestValidate:
    def test_one_element_lattice_valid(self):
        assert validate(boolean(0)) == []

    def test_boolean_square_valid(self):
        assert validate(boolean(2)) == []

    def test_pentagon_fails_distributivity(self):
        report = validate(pentagon())
        assert any("distributivity" in line for line in report)

    def test_dimension_mismatch(self):
        with pytest.raises(MalformedInput):
            PcdLattice(["a", "b"], [[True]])

    def test_duplicate_labels(self):
        with pytest.raises(MalformedInput):
            PcdLattice(["a", "a"], [[True, False], [False, True]])

    def test_missing_bound_reported(self):
        # two incomparable points: no bottom, no top, no meets/joins
        leq = [[True, False], [False, True]]
        report = validate(PcdLattice(["a", "b"], leq))
        assert any("bottom" in line for line in report)
        assert any("top" in line for line in report)

    def test_broken_order_reported(self):
        leq = [[False, True], [True, True]]
        report = validate(PcdLattice(["a", "b"], leq))
        assert any("reflexivity" in line for line in report)

    def test_operations_require_validity(self):
        bad = pentagon()
        with pytest.raises(PreconditionError):
            pseudocomplement(bad, 1)


class TestPseudocomplement:
    def test_bottom_goes_to_top(self):
        l = boolean(2)
        assert pseudocomplement(l, l.bottom) == l.top

    def test_top_goes_to_bottom(self):
        l = boolean(2)
        assert pseudocomplement(l, l.top) == l.bottom

    def test_chain_middle_kills_everything(self):
        c = chain(3)
        assert pseudocomplement(c, 1) == c.bottom

    @given(st.integers(0, 500))
    @settings(max_examples=30, deadline=None)
    def test_star_laws(self, seed):
        l = util.downset_instance(seed, 4)
        for x in range(l.n):
            s = l.pstar[x]
            assert l.meet[x][s] == l.bottom
            assert l.leq(x, l.pstar[s])
        for x in range(l.n):
            for y in range(l.n):
                if l.leq(x, y):
                    assert l.leq(l.pstar[y], l.pstar[x])


class TestWellInside:
    def test_bottom_inside_everything(self):
        l = util.downset_instance(3, 4)
        wi = well_inside(l)
        for x in range(l.n):
            assert (l.bottom, x) in wi

    def test_boolean_well_inside_is_order(self):
        l = boolean(3)
        wi = well_inside(l)
        expected = {
            (y, x) for y in range(l.n) for x in range(l.n) if l.leq(y, x)
        }
        assert wi.pairs == expected

    def test_chain_middle_not_inside_itself(self):
        c = chain(3)
        assert (1, 1) not in well_inside(c)

    @given(st.integers(0, 500))
    @settings(max_examples=30, deadline=None)
    def test_strong_inclusion_shaped_properties(self, seed):
        l = util.downset_instance(seed, 4)
        wi = well_inside(l).pairs
        for y, x in wi:
            assert l.leq(y, x)
        items = sorted(wi)
        rng = random.Random(seed)
        sample = items if len(items) <= 40 else rng.sample(items, 40)
        for a, b in sample:
            for x in range(l.n):
                if not l.leq(x, a):
                    continue
                for y in range(l.n):
                    if l.leq(b, y):
                        assert (x, y) in wi
        for x1, y1 in sample:
            for x2, y2 in sample:
                if y1 == y2:
                    assert (l.join[x1][x2], y1) in wi
                if x1 == x2:
                    assert (x1, l.meet[y1][y2]) in wi


class TestIsRegular:
    def test_boolean_regular(self):
        l = boolean(3)
        assert is_regular(l, full_basis(l))

    def test_chain_not_regular(self):
        c = chain(3)
        assert not is_regular(c, full_basis(c))

    def test_one_element_regular(self):
        assert is_regular(boolean(0), full_basis(boolean(0)))


class TestIsCompact:
    def test_top_alone(self):
        l = boolean(2)
        got = is_compact(l, full_basis(l), Cover(l.top, frozenset({l.top})))
        assert got == [l.top]

    def test_complementary_atoms(self):
        l = boolean(2)
        a, b = util.atoms(l)
        got = is_compact(l, full_basis(l), Cover(l.top, frozenset({a, b})))
        assert sorted(got) == sorted([a, b])

    def test_top_beats_atoms(self):
        l = boolean(2)
        a, b = util.atoms(l)
        got = is_compact(l, full_basis(l), Cover(l.top, frozenset({a, b, l.top})))
        assert got == [l.top]

    def test_not_a_cover(self):
        l = boolean(2)
        with pytest.raises(NotACoverError):
            is_compact(l, full_basis(l), Cover(l.top, frozenset({l.bottom})))

    def test_degenerate_lattice_covered_by_empty_family(self):
        l = boolean(0)
        got = is_compact(l, full_basis(l), Cover(l.top, frozenset()))
        assert got == []

    def test_parts_must_be_basic(self):
        l = boolean(2)
        b = Basis(l, frozenset({l.bottom, l.top}))
        with pytest.raises(PreconditionError):
            is_compact(l, b, Cover(l.top, frozenset({1})))

    @given(st.integers(0, 300))
    @settings(max_examples=25, deadline=None)
    def test_witness_is_minimal_and_first(self, seed):
        rng = random.Random(seed)
        l = util.downset_instance(seed, 4)
        parts = {l.top} | {x for x in range(l.n) if rng.random() < 0.5}
        got = is_compact(l, full_basis(l), Cover(l.top, frozenset(parts)))
        oracles.assert_minimal_subcover(l, parts, l.top, got)


class TestPcdClosure:
    def test_empty_seed_gives_bounds(self):
        l = boolean(2)
        assert pcd_closure(l, ()).elements == frozenset({l.bottom, l.top})

    def test_full_seed_fixed(self):
        l = boolean(2)
        assert pcd_closure(l, range(l.n)).elements == frozenset(range(l.n))

    def test_chain_middle(self):
        c = chain(3)
        assert pcd_closure(c, (1,)).elements == frozenset({0, 1, 2})

    @given(st.integers(0, 500))
    @settings(max_examples=25, deadline=None)
    def test_closure_laws(self, seed):
        rng = random.Random(seed)
        l = util.downset_instance(seed, 4)
        small = [x for x in range(l.n) if rng.random() < 0.3]
        big = small + [x for x in range(l.n) if rng.random() < 0.3]
        c_small = pcd_closure(l, small)
        c_big = pcd_closure(l, big)
        assert c_small.elements <= c_big.elements
        assert pcd_closure(l, c_small.elements).elements == c_small.elements
        assert c_small.is_sub_pcd()

    @given(st.integers(0, 500))
    @settings(max_examples=15, deadline=None)
    def test_closure_is_valid_sublattice(self, seed):
        rng = random.Random(seed)
        l = util.downset_instance(seed, 4)
        seeds = [x for x in range(l.n) if rng.random() < 0.4]
        sub = sorted(pcd_closure(l, seeds).elements)
        leq = [[l.leq(a, b) for b in sub] for a in sub]
        sublat = PcdLattice([l.names[a] for a in sub], leq, name="sub")
        assert validate(sublat) == []
        # restricted operations stay inside and agree
        pos = {a: i for i, a in enumerate(sub)}
        for a in sub:
            assert sublat.pstar[pos[a]] == pos[l.pstar[a]]
            for b in sub:
                assert sublat.meet[pos[a]][pos[b]] == pos[l.meet[a][b]]
                assert sublat.join[pos[a]][pos[b]] == pos[l.join[a][b]]


class TestGenerators:
    @given(st.integers(0, 1000))
    @settings(max_examples=40, deadline=None)
    def test_downset_lattices_always_valid(self, seed):
        rng = random.Random(seed)
        l = util.downset_instance(seed, rng.randint(0, 5))
        assert validate(l) == []

    def test_chain_and_boolean_shapes(self):
        assert chain(4).n == 4
        assert boolean(3).n == 8
        assert downset_lattice(["p"], [[True]]).n == 2


class TestBasis:
    def test_full_basis_is_basis(self):
        l = util.downset_instance(11, 4)
        assert full_basis(l).is_basis()

    def test_bounds_only_not_a_basis(self):
        l = boolean(2)
        assert not Basis(l, frozenset({l.bottom, l.top})).is_basis()

    def test_out_of_range_rejected(self):
        with pytest.raises(MalformedInput):
            Basis(boolean(1), frozenset({9}))

    @given(st.integers(0, 500))
    @settings(max_examples=20, deadline=None)
    def test_generating_pcd_sublattice_is_everything(self, seed):
        # join closure absorbs the joins that generation demands, so the
        # only pcd-sublattice that is also a basis is the full element set
        rng = random.Random(seed)
        l = util.downset_instance(seed, rng.randint(0, 4))
        for _ in range(6):
            carrier = pcd_closure(
                l, [x for x in range(l.n) if rng.random() < 0.4]
            )
            assert carrier.is_sub_pcd()
            if carrier.is_basis():
                assert carrier.elements == frozenset(range(l.n))
