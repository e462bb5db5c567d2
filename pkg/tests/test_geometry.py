import itertools
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from _corpus import extreme_examples
from _oracles import brute_admissible, brute_vertices
from multilinear_multipliers.errors import ConfigError, DimensionMismatch, GuardError
from multilinear_multipliers.geometry import (
    ReciprocalExponents, SmoothnessProfile, admissible_region, as_fraction, check_admissible, check_extreme,
    convex_weights, ell_count, enumerate_vertices, expected_vertex_count, hull_membership, interpolation_split,
    nonempty_subsets, reciprocal_sum, split_coordinate, subset_slack,
)


def R(*vals):
    return ReciprocalExponents([F(v) for v in vals])


def P(n, *s):
    return SmoothnessProfile(n, [F(v) for v in s])


# --- strategies ------------------------------------------------------------------

small_fracs = st.fractions(min_value=0, max_value=3, max_denominator=8)


@st.composite
def profiles(draw, max_m=4):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, 3))
    s = [F(n, 2) + draw(st.fractions(min_value=0, max_value=2, max_denominator=6)) for _ in range(m)]
    return SmoothnessProfile(n, s)


@st.composite
def profile_and_point(draw, max_m=4):
    prof = draw(profiles(max_m))
    r = ReciprocalExponents([draw(small_fracs) for _ in range(prof.m)])
    return prof, r


# --- value types -------------------------------------------------------------------


def test_as_fraction_accepts_strings_and_ints():
    assert as_fraction("3/2") == F(3, 2)
    assert as_fraction(2) == F(2)
    assert as_fraction(F(1, 3)) == F(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, "x/y", None])
def test_as_fraction_refuses_inexact(bad):
    with pytest.raises(ConfigError):
        as_fraction(bad)


def test_negative_reciprocal_rejected():
    with pytest.raises(ConfigError):
        R(F(-1, 2), 0)


def test_from_p_encodes_infinity_as_zero():
    r = ReciprocalExponents.from_p(["2", "inf", "1/2"])
    assert tuple(r) == (F(1, 2), F(0), F(2))


def test_profile_requires_half_dimension():
    with pytest.raises(ConfigError):
        P(2, F(1, 2))
    assert P(2, 1).s == (F(1),)
    with pytest.raises(ConfigError):
        SmoothnessProfile.open(2, [1])
    assert SmoothnessProfile.open(2, [F(11, 10)]).s == (F(11, 10),)


def test_nonempty_subsets_count():
    for m in range(1, 6):
        subsets = list(nonempty_subsets(m))
        assert len(subsets) == 2 ** m - 1
        assert len(set(subsets)) == len(subsets)


# --- predicates ---------------------------------------------------------------------


@pytest.mark.parametrize("r, expected", [((F(1, 2), F(1, 2)), F(1)), ((0, 0, 0), F(0)),
                                         ((F(2, 3), F(1, 2), F(1, 3)), F(3, 2))])
def test_reciprocal_sum(r, expected):
    assert reciprocal_sum(R(*r)) == expected


def test_strict_subset_sums_at_half_dimension():
    # every subset sum is 0 > -1/2, but s_i = n/2 fails the strict smoothness hypothesis
    prof, r = P(1, F(1, 2), F(1, 2)), R(F(1, 2), F(1, 2))
    assert all(subset_slack(prof, r, J) - F(1, 2) == 0 for J in nonempty_subsets(2))
    assert check_admissible(prof, r)
    assert not check_admissible(prof, r, strict=True)


def test_closed_rejects_full_subset_violation():
    assert not check_admissible(P(1, F(1, 2), F(1, 2)), R(1, 1))


def test_boundary_is_closed_but_not_strict():
    prof, r = P(1, F(1, 2), F(1, 2)), R(1, 0)
    assert subset_slack(prof, r, (0,)) == 0
    assert check_admissible(prof, r)
    assert not check_admissible(prof, r, strict=True)


def test_strict_inside_open_profile():
    prof = SmoothnessProfile.open(1, [F(3, 4), F(3, 4)])
    assert check_admissible(prof, R(F(1, 2), F(1, 2)), strict=True)


def test_length_mismatch_raises():
    with pytest.raises(DimensionMismatch):
        check_admissible(P(1, 1, 1), R(0))


@given(profile_and_point())
def test_predicate_matches_halfspace_oracle(case):
    prof, r = case
    assert check_admissible(prof, r) == brute_admissible(prof.n, prof.s, tuple(r))


@given(profile_and_point(), st.data())
def test_predicate_monotone(case, data):
    prof, r = case
    assume(check_admissible(prof, r))
    i = data.draw(st.integers(0, prof.m - 1))
    smaller = r.replace(i, r[i] * data.draw(st.fractions(0, 1, max_denominator=5)))
    larger_s = prof.replace(i, prof.s[i] + data.draw(st.fractions(0, 2, max_denominator=5)))
    assert check_admissible(prof, smaller)
    assert check_admissible(larger_s, r)


def test_region_constraint_count_and_bounds():
    for m in range(1, 6):
        region = admissible_region(P(1, *([1] * m)))
        assert region.n_constraints == 2 ** m - 1 + m
        assert all(h.bound > 0 for h in region.halfspaces)


# --- vertices -----------------------------------------------------------------------


def test_vertices_m1_n2():
    vs = enumerate_vertices(P(2, 1))
    assert [tuple(v) for v in vs] == [(F(0),), (F(1),)]


def test_vertices_m2_listing():
    vs = enumerate_vertices(P(1, 1, 1))
    expected = {(0, 0), (F(3, 2), 0), (F(3, 2), 1), (0, F(3, 2)), (1, F(3, 2))}
    assert {tuple(v) for v in vs} == {tuple(F(x) for x in p) for p in expected}


def test_vertices_m3_count():
    assert len(enumerate_vertices(P(2, 1, F(7, 5), 3))) == 13


def test_vertices_sorted_lexicographically():
    vs = [tuple(v) for v in enumerate_vertices(P(1, 2, 1, F(3, 2)))]
    assert vs == sorted(vs)


@pytest.mark.parametrize("n, s", [(1, (1,)), (1, (1, 2)), (2, (1, F(3, 2))), (1, (F(1, 2), 1, F(5, 4))),
                                  (2, (1, 1, 1)), (1, (1, F(2, 3), F(3, 4), 2))])
def test_vertices_match_brute_force(n, s):
    got = sorted(tuple(v) for v in enumerate_vertices(SmoothnessProfile(n, s)))
    assert got == brute_vertices(n, s)


@given(profiles(max_m=5))
def test_vertex_structure(prof):
    vs = enumerate_vertices(prof)
    assert len(vs) == expected_vertex_count(prof.m) == prof.m * 2 ** (prof.m - 1) + 1
    assert tuple(vs.vertices[0]) == (F(0),) * prof.m
    ratios = prof.ratios
    for v in vs.vertices[1:]:
        tops = [i for i in range(prof.m) if v[i] == ratios[i] + F(1, 2)]
        assert len(tops) == 1
        assert all(v[i] in (0, ratios[i]) for i in range(prof.m) if i not in tops)
        assert check_admissible(prof, v)


@pytest.mark.parametrize("s", [(1, 1), (1, F(3, 2), 2)])
def test_every_vertex_is_extreme(s):
    vs = enumerate_vertices(P(1, *s))
    pts = [tuple(v) for v in vs]
    for i, v in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        assert convex_weights(others, v) is None


# --- hull membership -----------------------------------------------------------------


def test_membership_inside_with_exact_weights():
    vs = enumerate_vertices(P(1, 1, 1))
    cert = hull_membership(vs, R(1, 1))
    assert cert.inside and cert.verdict == "inside"
    assert all(w >= 0 for w in cert.weights) and sum(cert.weights) == 1
    assert cert.reconstruct() == (F(1), F(1))


def test_membership_outside_certificate():
    cert = hull_membership(enumerate_vertices(P(1, 1, 1)), R(F(3, 2), F(3, 2)))
    assert not cert.inside and cert.verdict == "outside"
    assert cert.violated == (0, 1)
    assert cert.margin == F(1, 2)


def test_membership_origin():
    vs = enumerate_vertices(P(1, 2, 1, 1))
    cert = hull_membership(vs, R(0, 0, 0))
    assert cert.inside
    assert cert.weights[0] == 1 and all(w == 0 for w in cert.weights[1:])


def test_membership_m3_n2_midpoint():
    vs = enumerate_vertices(P(2, 1, 1, 1))
    cert = hull_membership(vs, R(F(1, 2), F(1, 2), F(1, 2)))
    assert cert.inside and cert.reconstruct() == (F(1, 2),) * 3


@given(profile_and_point(max_m=3))
def test_membership_agrees_with_predicate(case):
    prof, r = case
    cert = hull_membership(enumerate_vertices(prof), r)
    assert cert.inside == check_admissible(prof, r)
    if cert.inside:
        assert cert.reconstruct() == tuple(r)
        assert sum(cert.weights) == 1
    else:
        assert cert.margin > 0


def test_degenerate_hull_guard():
    class Single:
        profile = P(1, 1)
        vertices = [R(0), R(0)]

        def __iter__(self):
            return iter(self.vertices)

        def __len__(self):
            return 2

    with pytest.raises(GuardError):
        hull_membership(Single(), R(0))


# --- interpolation ---------------------------------------------------------------------


@pytest.mark.parametrize("r, expected", [((F(2, 3), F(1, 2), 1), 1), ((0, 0, 0), 0), ((F(3, 5), F(5, 9)), 2)])
def test_ell_count(r, expected):
    assert ell_count(R(*r)) == expected


def test_split_coordinate_single_slot():
    theta, (r1, s1), (r2, s2) = split_coordinate(R(F(2, 3)), P(2, F(4, 3)), 0)
    assert theta == F(2, 3)
    assert (tuple(r1), s1.s) == ((F(1),), (F(2),))
    assert (tuple(r2), s2.s) == ((F(1, 2),), (F(1),))
    assert (1 - theta) * 2 + theta * 1 == F(4, 3)


def test_interpolation_rejects_non_extreme():
    with pytest.raises(ConfigError, match="coordinate"):
        interpolation_split(R(F(2, 3)), P(2, F(4, 3)))


def test_interpolation_two_slot_example():
    prof = SmoothnessProfile(1, [F(3, 4), F(1)])
    root = interpolation_split(R(F(3, 4), F(3, 2)), prof)
    assert root.index == 0 and root.theta == F(1, 2)
    a, b = root.children
    assert tuple(a.r) == (F(1), F(3, 2)) and tuple(b.r) == (F(1, 2), F(3, 2))
    assert root.reconstructs()


def test_interpolation_base_case_is_leaf():
    prof = P(1, 1, 1)
    root = interpolation_split(R(F(3, 2), F(1)), prof)
    assert root.is_leaf and root.depth() == 0 and root.leaves() == [root]


@pytest.mark.parametrize("n, r, s", extreme_examples(40))
def test_interpolation_tree_invariants(n, r, s):
    prof, pt = SmoothnessProfile(n, s), ReciprocalExponents(r)
    root = interpolation_split(pt, prof)
    assert root.depth() <= ell_count(pt)
    for node in root.nodes():
        if not node.is_leaf:
            assert 0 < node.theta < 1
            (a, b), t = node.children, node.theta
            assert all((1 - t) * x + t * y == z for x, y, z in zip(a.r, b.r, node.r))
            assert all((1 - t) * x + t * y == z for x, y, z in zip(a.profile.s, b.profile.s, node.profile.s))
    for leaf in root.leaves():
        assert ell_count(leaf.r) == 0
        check_extreme(leaf.r, leaf.profile)


def test_check_extreme_names_failing_coordinate():
    with pytest.raises(ConfigError, match="coordinate"):
        check_extreme(R(F(3, 4), 0), P(1, 1, 1))


def test_enumeration_and_membership_small_m_exhaustive():
    # every point of a coarse rational lattice, m = 2
    prof = P(1, 1, F(3, 2))
    vs = enumerate_vertices(prof)
    for a, b in itertools.product(range(0, 9), repeat=2):
        r = R(F(a, 4), F(b, 4))
        assert hull_membership(vs, r).inside == check_admissible(prof, r)
