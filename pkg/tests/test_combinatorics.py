"""Vector validation, classification, reduction, and enumeration."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import realquad as rq
from realquad.combinatorics import (
    Combinatorics,
    critical_orbit_periods,
    postcritical_set,
)
from realquad.errors import (
    ChebyshevOrSquareExcluded,
    InadmissibleError,
    IncompatiblePattern,
    NotCoPolynomialError,
    ParseError,
    ReductionInadmissible,
)


def C(text):
    return rq.parse(text)


class TestParse:
    def test_basic(self):
        c = rq.parse("5,6,4,1,0,2,3")
        assert c.m == (5, 6, 4, 1, 0, 2, 3)
        assert c.n == 6

    def test_short(self):
        assert rq.parse("1,0").m == (1, 0)

    def test_wrapped(self):
        assert rq.parse("(1, 2, 0)").m == (1, 2, 0)
        assert rq.parse("<1,0>").m == (1, 0)

    def test_out_of_range(self):
        with pytest.raises(ParseError):
            rq.parse("3,7,1")

    def test_non_integer(self):
        with pytest.raises(ParseError):
            rq.parse("1,x,0")

    def test_too_short(self):
        with pytest.raises(ParseError):
            rq.parse("1")


class TestAdmissibility:
    @pytest.mark.parametrize(
        "text",
        ["5,6,4,1,0,2,3", "1,2,3,2,0", "1,0", "0,1", "1,2,0", "3,2,1,2",
         "1,2,4,5,2,1,0", "2,3,0,1", "1,0,3,2"],
    )
    def test_admissible(self, text):
        assert rq.check_admissible(C(text)).ok

    def test_triple_value(self):
        result = rq.check_admissible(C("2,4,2,0,2"))
        assert not result.ok
        assert "condition 2" in result.reason
        assert "3 times" in result.reason

    def test_case_two_placement_suggests_relabeling(self):
        result = rq.check_admissible(C("1,2,3,2"))
        assert not result.ok
        assert "condition 1" in result.reason
        assert "1,2,1,0" in result.reason

    def test_bad_spread(self):
        result = rq.check_admissible(C("1,2,1"))
        assert not result.ok
        assert "condition 1" in result.reason

    def test_doubled_max_rejected(self):
        assert not rq.check_admissible(C("2,0,2")).ok

    def test_non_mountain(self):
        assert not rq.check_admissible(C("2,0,3,1")).ok


class TestMinimality:
    def test_missing_postcritical(self):
        assert not rq.check_minimal(C("2,3,4,1,0"))

    def test_non_expansive_edge(self):
        assert not rq.check_minimal(C("4,2,1,0,1"))

    def test_single_edge(self):
        assert rq.check_minimal(C("1,0"))

    def test_wittner(self):
        assert rq.check_minimal(C("5,6,4,1,0,2,3"))

    def test_requires_admissible(self):
        with pytest.raises(InadmissibleError):
            rq.check_minimal(C("2,4,2,0,2"))


class TestSimplify:
    def test_vertex_removal(self):
        assert rq.simplify(C("2,3,4,1,0")).m == (1, 2, 0)

    def test_edge_collapse(self):
        assert rq.simplify(C("4,2,1,0,1")).m == (3, 1, 0, 1)

    def test_reduction_fails(self):
        with pytest.raises(ReductionInadmissible) as info:
            rq.simplify(C("3,5,3,2,0,2"))
        assert info.value.reduced.m == (2, 4, 2, 0, 2)

    def test_cascading_reduction(self):
        assert rq.simplify(C("3,5,3,2,1,0")).m == (2, 3, 2, 0)

    def test_collapse_then_removal(self):
        assert rq.simplify(C("3,4,3,2,1,0")).m == (2, 3, 2, 1, 0)

    def test_idempotent_on_minimal(self):
        for text in ("1,0", "1,2,0", "5,6,4,1,0,2,3", "1,3,4,3,1,0"):
            c = C(text)
            assert rq.simplify(c).m == c.m


class TestClassify:
    def test_wittner(self):
        report = rq.classify(C("5,6,4,1,0,2,3"))
        assert report.dynamic_type is rq.DynamicType.D
        assert report.shape is rq.Shape.PLUS_MINUS_PLUS
        assert critical_orbit_periods(C("5,6,4,1,0,2,3")) in ((3, 4), (4, 3))

    def test_airplane_copoly(self):
        report = rq.classify(C("1,2,0"))
        assert report.dynamic_type is rq.DynamicType.B
        assert report.copolynomial_shape
        assert report.shape is rq.Shape.CO_POLYNOMIAL

    def test_totally_non_hyperbolic(self):
        report = rq.classify(C("2,3,2,0"))
        assert report.dynamic_type is rq.DynamicType.TOTALLY_NON_HYPERBOLIC
        assert report.copolynomial_shape

    def test_capture(self):
        report = rq.classify(C("1,2,3,2,0"))
        assert report.dynamic_type is rq.DynamicType.C
        assert report.shape is rq.Shape.UNIMODAL_PLUS_MINUS

    def test_half_hyperbolic(self):
        assert (
            rq.classify(C("2,3,2,1,0")).dynamic_type
            is rq.DynamicType.HALF_HYPERBOLIC
        )

    def test_polynomial(self):
        report = rq.classify(C("0,2,1"))
        assert report.polynomial_shape
        assert report.shape is rq.Shape.POLYNOMIAL
        assert report.dynamic_type is rq.DynamicType.D

    def test_minus_plus_minus(self):
        assert rq.classify(C("1,0,3,2")).shape is rq.Shape.MINUS_PLUS_MINUS

    def test_npc_counts(self):
        # type B or D on minimal vectors marks every point postcritical
        assert rq.classify(C("5,6,4,1,0,2,3")).n_pc == 7
        assert rq.classify(C("1,2,0")).n_pc == 3
        # capture: the outside critical point is never hit
        assert rq.classify(C("1,2,3,2,0")).n_pc == 4
        # the Euclidean totally-non-hyperbolic examples sit at n and n - 1
        assert rq.classify(C("2,3,2,0")).n_pc == 3
        assert rq.classify(C("1,3,4,3,1,0")).n_pc == 4

    def test_three_pl_fixed_points(self):
        assert rq.classify(C("1,0,3,2")).fixed_point_count == 3

    def test_one_pl_fixed_point(self):
        assert rq.classify(C("5,6,4,1,0,2,3")).fixed_point_count == 1

    def test_json_round_trip(self):
        report = rq.classify(C("1,2,0"))
        data = report.to_json_dict()
        assert data["shape"] == "CoPolynomial"
        assert data["chi"] == "-1"


class TestEuler:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1,3,4,3,1,0", Fraction(0)),
            ("1,2,1,0", Fraction(-1, 2)),
            ("1,0", Fraction(0)),
            ("2,3,2,0", Fraction(0)),
            ("5,6,4,1,0,2,3", Fraction(-5)),
        ],
    )
    def test_values(self, text, expected):
        assert rq.euler_characteristic(C(text)) == expected

    def test_euclidean_exceptions_exhaustive(self):
        """chi <= 0 always; chi = 0 exactly on the three known families."""
        euclidean = {
            (1, 0),
            (2, 3, 2, 0),
            (1, 3, 4, 3, 1, 0),
            rq.reverse_orientation(C("2,3,2,0")).m,
            rq.reverse_orientation(C("1,3,4,3,1,0")).m,
        }
        found = set()
        for n in range(1, 7):
            for c in rq.enumerate_admissible(n, minimal=True, nonpolynomial=True):
                chi = rq.euler_characteristic(c)
                assert chi <= 0, c
                if chi == 0:
                    found.add(c.m)
        assert found == euclidean


class TestReverseOrientation:
    def test_formula(self):
        assert rq.reverse_orientation(C("1,2,0")).m == (2, 0, 1)
        assert rq.reverse_orientation(C("1,0")).m == (1, 0)
        assert rq.reverse_orientation(C("5,6,4,1,0,2,3")).m == (3, 4, 6, 5, 2, 0, 1)

    @given(st.integers(1, 5), st.integers(0, 10000))
    @settings(max_examples=60, deadline=None)
    def test_involution_and_admissibility_invariance(self, n, seed):
        vectors = rq.enumerate_admissible(n)
        c = vectors[seed % len(vectors)]
        rc = rq.reverse_orientation(c)
        assert rq.reverse_orientation(rc).m == c.m
        assert rq.check_admissible(rc).ok


class TestMappingPattern:
    def test_self_map_example(self):
        # x0 -> x3 -> x2 <-> x1, criticals x0 and x2, in the given cyclic order
        c = rq.from_mapping_pattern([3, 2, 1, 2], (0, 2))
        assert c.m == (3, 2, 1, 2)

    def test_two_cycle(self):
        assert rq.from_mapping_pattern([1, 0], (0, 1)).m == (1, 0)

    def test_rotated_labels(self):
        # the map of (1,2,1,0) presented with every label shifted by one
        base = (1, 2, 1, 0)
        shift = 1
        mapping = [(base[(j + shift) % 4] - shift) % 4 for j in range(4)]
        criticals = tuple((j - shift) % 4 for j in (1, 3))
        c = rq.from_mapping_pattern(mapping, criticals)
        assert c.m == base

    def test_incompatible(self):
        # critical values x2 and x4 separated by two non-critical points
        with pytest.raises(IncompatiblePattern):
            rq.from_mapping_pattern([2, 4, 1, 1, 3], (0, 1))


class TestFilomPilgrim:
    def test_small(self):
        assert rq.filom_pilgrim(2, 5).m == (2, 3, 4, 0, 1)
        assert rq.filom_pilgrim(2, 7).m == (2, 3, 4, 5, 6, 0, 1)
        assert rq.filom_pilgrim(1, 2).m == (1, 0)

    def test_not_coprime(self):
        with pytest.raises(ParseError):
            rq.filom_pilgrim(2, 4)

    def test_out_of_range(self):
        with pytest.raises(ParseError):
            rq.filom_pilgrim(3, 3)

    @given(st.integers(1, 7), st.integers(2, 8))
    @settings(max_examples=40, deadline=None)
    def test_always_admissible(self, p, q):
        import math

        if not (0 < p < q and math.gcd(p, q) == 1):
            return
        assert rq.check_admissible(rq.filom_pilgrim(p, q)).ok


def _brute_force_admissible(n):
    out = []
    for m in itertools.product(range(n + 1), repeat=n + 1):
        if rq.check_admissible(Combinatorics(m)).ok:
            out.append(m)
    return sorted(out)


class TestEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_brute_force(self, n):
        ours = [c.m for c in rq.enumerate_admissible(n)]
        assert ours == _brute_force_admissible(n)

    def test_n1_filters(self):
        assert [c.m for c in rq.enumerate_admissible(1)] == [(0, 1), (1, 0)]
        assert [
            c.m for c in rq.enumerate_admissible(1, nonpolynomial=True)
        ] == [(1, 0)]

    def test_n2_minimal_nonpoly(self):
        vectors = {
            c.m for c in rq.enumerate_admissible(2, minimal=True, nonpolynomial=True)
        }
        assert vectors == {(1, 2, 0), (2, 0, 1)}

    def test_all_returned_admissible(self):
        for c in rq.enumerate_admissible(4):
            assert rq.check_admissible(c).ok

    def test_bound(self):
        with pytest.raises(rq.RealQuadError):
            rq.enumerate_admissible(9)

    def test_minus_plus_minus_never_type_b(self):
        for n in range(1, 7):
            for c in rq.enumerate_admissible(n):
                report = rq.classify(c)
                if report.shape is rq.Shape.MINUS_PLUS_MINUS:
                    assert report.dynamic_type is not rq.DynamicType.B

    def test_shape_type_constraints(self):
        for n in range(1, 6):
            for c in rq.enumerate_admissible(n):
                report = rq.classify(c)
                if report.copolynomial_shape:
                    assert report.dynamic_type in (
                        rq.DynamicType.B,
                        rq.DynamicType.TOTALLY_NON_HYPERBOLIC,
                    )
                if report.polynomial_shape:
                    assert report.dynamic_type in (
                        rq.DynamicType.D,
                        rq.DynamicType.HALF_HYPERBOLIC,
                    )

    def test_npc_rule_on_minimal(self):
        for n in range(1, 6):
            for c in rq.enumerate_admissible(n, minimal=True):
                report = rq.classify(c)
                if report.dynamic_type in (rq.DynamicType.B, rq.DynamicType.D):
                    assert report.n_pc == c.n + 1
                elif report.dynamic_type in (
                    rq.DynamicType.C,
                    rq.DynamicType.HALF_HYPERBOLIC,
                ):
                    assert report.n_pc == c.n
                else:
                    assert report.n_pc in (c.n, c.n - 1)


class TestPolynomialPair:
    def test_forward(self):
        assert rq.polynomial_from_copolynomial(C("3,2,0,1")).m == (3, 2, 0, 1, 4)
        assert rq.polynomial_from_copolynomial(C("4,3,0,1,3")).m == (4, 3, 0, 1, 3, 5)

    def test_forward_orients(self):
        assert rq.polynomial_from_copolynomial(C("1,2,0")).m == (2, 0, 1, 3)

    def test_forward_rejects_non_copoly(self):
        with pytest.raises(NotCoPolynomialError):
            rq.polynomial_from_copolynomial(C("1,2,1,0"))

    def test_inverse(self):
        assert rq.copolynomial_from_polynomial(C("3,2,0,1,4")).m == (3, 2, 0, 1)
        assert rq.copolynomial_from_polynomial(C("1,0,2")).m == (1, 0)

    def test_inverse_orients(self):
        assert rq.copolynomial_from_polynomial(C("0,2,3,1")).m == (2, 0, 1)

    def test_chebyshev_excluded(self):
        with pytest.raises(ChebyshevOrSquareExcluded):
            rq.copolynomial_from_polynomial(C("2,0,2"))
        with pytest.raises(ChebyshevOrSquareExcluded):
            rq.copolynomial_from_polynomial(C("2,0,2,3"))

    def test_square_excluded(self):
        with pytest.raises(ChebyshevOrSquareExcluded):
            rq.copolynomial_from_polynomial(C("0,1"))

    def test_round_trip(self):
        for n in range(1, 6):
            for c in rq.enumerate_admissible(n):
                if not rq.classify(c).copolynomial_shape:
                    continue
                oriented = rq.orient_minus_plus(c)
                poly = rq.polynomial_from_copolynomial(c)
                assert rq.copolynomial_from_polynomial(poly).m == oriented.m

    def test_wrapper(self):
        assert rq.copolynomial_polynomial_pair(C("3,2,0,1")).m == (3, 2, 0, 1, 4)
        assert rq.copolynomial_polynomial_pair(
            C("3,2,0,1,4"), inverse=True
        ).m == (3, 2, 0, 1)


class TestPostcriticalHelpers:
    def test_postcritical_set(self):
        assert postcritical_set(C("2,3,4,1,0")) == frozenset({0, 2, 4})

    def test_orbit_periods_match_pl_iteration(self):
        for n in range(1, 7):
            for c in rq.enumerate_admissible(n, minimal=True, nonpolynomial=True):
                model = rq.build(c)
                for j, period in zip(c.critical_indices, critical_orbit_periods(c)):
                    if period is None:
                        continue
                    x = Fraction(j)
                    for _ in range(period):
                        x = model.eval(x)
                    assert x == j
