import pytest

from planecremona.errors import ValidationError
from planecremona.exactpoly import HPoly
from planecremona.fixedcurve import (
    FixedCurveInvariant,
    classify_involution,
    fixed_locus,
    invariant_for_kind,
    invariant_of,
    plane_genus,
)
from planecremona.involutions import dj_involution, make_dj_instance
from planecremona.projmaps import ProjPoint, RationalMap
from planecremona.rng import SplitMix64, unimodular_matrix

X, Y, Z = (HPoly.variable(i) for i in range(3))


# -- fixed locus -----------------------------------------------------------------

def test_fixed_locus_of_standard_quadratic():
    sigma = RationalMap(X * Y, X * Z, Y * Z)
    assert fixed_locus(sigma) == (X * Z - Y * Y).canonical()


def test_fixed_locus_identity_rejected():
    with pytest.raises(ValidationError, match="identity"):
        fixed_locus(RationalMap.identity())


def test_fixed_locus_of_validated_dj_is_the_curve(dj_records):
    for d in (3, 5):
        rec = dj_records[d]
        assert fixed_locus(rec.map) == rec.fixed_curve


def test_fixed_locus_constant_when_no_curve_is_fixed():
    sigma = RationalMap.linear(((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    locus = fixed_locus(sigma)
    # the swap fixes the line x = y and the isolated point; divisorial part
    assert locus.degree == 1


# -- genus formula ----------------------------------------------------------------

def test_genus_table():
    assert plane_genus(6, [2] * 7) == 3
    assert plane_genus(9, [3] * 8) == 4
    for d in range(3, 11):
        assert plane_genus(d, [d - 2]) == d - 2


def _lattice_point_genus(d, mults):
    """Independent oracle: (d-1)(d-2)/2 as a count of interior lattice
    points of the degree-d triangle, and m(m-1)/2 as a count of pairs."""
    interior = sum(
        1 for i in range(1, d) for j in range(1, d) if i + j <= d - 1
    )
    deductions = sum(
        sum(1 for a in range(m) for b in range(a + 1, m)) for m in mults
    )
    return interior - deductions


def test_genus_matches_bruteforce_oracle():
    stream = SplitMix64(101)
    for _ in range(40):
        d = stream.next_int(1, 12)
        mults = [stream.next_int(1, max(2, d - 1)) for _ in range(stream.next_int(0, 3))]
        expect = _lattice_point_genus(d, mults)
        if expect < 0:
            with pytest.raises(ValidationError):
                plane_genus(d, mults)
        else:
            assert plane_genus(d, mults) == expect


def test_genus_monotone_in_multiplicities():
    base = plane_genus(8, [3, 2])
    assert plane_genus(8, [4, 2]) <= base
    assert plane_genus(8, [3, 3]) <= base


def test_genus_bad_input():
    with pytest.raises(ValidationError):
        plane_genus(0, [])
    with pytest.raises(ValidationError):
        plane_genus(4, [0])
    with pytest.raises(ValidationError):
        plane_genus(3, [5])  # negative result


# -- invariants -------------------------------------------------------------------

def test_invariant_of_records(dj_records, geiser, bertini):
    assert invariant_of(dj_records[2]) == FixedCurveInvariant("empty", None, "DJ(2)")
    assert invariant_of(dj_records[5]).genus == 3
    assert invariant_of(dj_records[5]).kind == "hyperelliptic"
    assert invariant_of(geiser.record()).kind == "non-hyperelliptic genus 3"
    b = invariant_of(bertini.record())
    assert b.genus == 4 and "singular quadric" in b.kind


def test_elliptic_case_counts_as_hyperelliptic(dj_records):
    inv = invariant_of(dj_records[3])
    assert inv.kind == "hyperelliptic" and inv.genus == 1


def test_invariant_injective_on_labels(dj_records, geiser, bertini):
    records = [dj_records[d] for d in (2, 3, 4, 5, 6)] + [geiser.record(), bertini.record()]
    keys = [invariant_of(r).key() for r in records]
    assert len(set(keys)) == len(keys)


def test_invariant_constant_under_linear_conjugation(dj_records):
    # conjugating the construction data by plane automorphisms must not
    # change the invariant, and the conjugated involution is the one built
    # from the transformed curve and center
    from planecremona.projmaps import compose, conjugate

    stream = SplitMix64(303)
    for d in (3, 4):
        rec = dj_records[d]
        for _ in range(2):
            m = unimodular_matrix(stream)
            from planecremona.involutions import _invert_unimodular

            minv = _invert_unimodular(m)
            phi = RationalMap.linear(m)
            phi_inv = RationalMap.linear(minv)
            curve2 = rec.fixed_curve.apply_matrix(minv)
            center2 = rec.center.apply_matrix(m)
            rec2 = dj_involution(curve2, center2)
            assert invariant_of(rec2).key() == invariant_of(rec).key()
            assert conjugate(rec.map, phi, phi_inv) == rec2.map


# -- classification ---------------------------------------------------------------

def test_classify_records(dj_records, geiser, bertini):
    for d in range(2, 7):
        assert classify_involution(dj_records[d]).label == f"DJ({d})"
    assert classify_involution(geiser.record()).label == "Geiser"
    assert classify_involution(bertini.record()).label == "Bertini"


def test_classify_raw_quadratic():
    result = classify_involution(RationalMap(X * Y, X * Z, Y * Z))
    assert result.label == "DJ(2)"
    assert result.invariant == invariant_for_kind("dj", 2)


def test_classify_raw_dj3(dj_records):
    result = classify_involution(dj_records[3].map)
    assert result.label == "DJ(3)"


def test_classify_raw_geiser_interpolated(geiser):
    result = classify_involution(geiser.interpolated_map)
    assert result.label == "Geiser"


def test_classify_linear_involution():
    result = classify_involution(RationalMap.linear(((1, 0, 0), (0, -1, 0), (0, 0, 1))))
    assert result.label == "DJ(2)"


def test_classify_rejects_non_involution():
    cyc = RationalMap.linear(((0, 1, 0), (0, 0, 1), (1, 0, 0)))
    with pytest.raises(ValidationError, match="not involutive|identity"):
        classify_involution(cyc)
    with pytest.raises(ValidationError):
        classify_involution(RationalMap.identity())
