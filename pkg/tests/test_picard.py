import itertools

import pytest

from planecremona.errors import ValidationError
from planecremona.picard import (
    ConicBundleModel,
    LatticeInvolution,
    anti_reflection_in_k,
    classify_pair,
    elementary_transformation,
    exceptional_classes,
    exceptional_classes_bruteforce,
    fixed_rank,
    fixed_sublattice_basis,
    is_minimal,
    make_lattice,
    quadric_lattice,
    reflection_through,
    swap_involution,
)

EXPECTED_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}

CREMONA_N3 = ((2, 1, 1, 1), (-1, 0, -1, -1), (-1, -1, 0, -1), (-1, -1, -1, 0))


def dj3_conic_bundle_involution():
    """Involution of the 5-point blow-up lattice modeling a degree-3
    de Jonquieres pair: fibres H - E_p are preserved, the four simple base
    points swap with their residual fibre components, the center's class
    goes to the conic through all five points."""
    lat = make_lattice(5)
    cols = [
        (3, -2, -1, -1, -1, -1),   # H
        (2, -1, -1, -1, -1, -1),   # E_p
    ]
    for i in range(4):
        v = [1, -1, 0, 0, 0, 0]
        v[2 + i] -= 1
        cols.append(tuple(v))
    m = tuple(tuple(cols[j][i] for j in range(6)) for i in range(6))
    return lat, LatticeInvolution(lat, m)


# -- lattices -----------------------------------------------------------------------

def test_make_lattice_k_squares():
    assert make_lattice(0).k_square() == 9
    assert make_lattice(7).k_square() == 2
    assert make_lattice(8).k_square() == 1
    assert quadric_lattice().k_square() == 8
    assert quadric_lattice().k_divisible_by_two()


def test_intersection_form_signature_convention():
    lat = make_lattice(3)
    h = (1, 0, 0, 0)
    e1 = (0, 1, 0, 0)
    assert lat.dot(h, h) == 1
    assert lat.dot(e1, e1) == -1
    assert lat.dot(h, e1) == 0
    assert lat.dot(lat.k, e1) == -1


# -- reflections ----------------------------------------------------------------------

def test_reflection_negates_alpha_and_fixes_orthogonal():
    lat = make_lattice(7)
    alpha = lat.k  # K^2 = 2
    m = reflection_through(lat, alpha)
    from planecremona.picard import _mat_vec

    assert _mat_vec(m, alpha) == tuple(-v for v in alpha)
    # orthogonal vector: E_1 - E_2
    v = (0, 1, -1, 0, 0, 0, 0, 0)
    assert lat.dot(alpha, v) == 0
    assert _mat_vec(m, v) == v
    from planecremona.picard import _identity, _mat_mul

    assert _mat_mul(m, m) == _identity(8)


def test_reflection_requires_norm_one_or_two():
    lat = make_lattice(3)
    with pytest.raises(ValidationError):
        reflection_through(lat, (0, 1, -1, 0))  # square -2


@pytest.mark.parametrize("n", [7, 8])
def test_anti_reflection_properties(n):
    lat = make_lattice(n)
    inv = anti_reflection_in_k(lat)   # constructor validates all identities
    assert fixed_rank(inv) == 1
    basis = fixed_sublattice_basis(inv)
    assert len(basis) == 1
    b = basis[0]
    # fixed sublattice is exactly the span of K
    assert any(b == tuple(s * v for v in lat.k) or lat.k == tuple(s * v for v in b)
               for s in (1, -1))
    assert inv.apply(lat.k) == lat.k


def test_anti_reflection_sends_exceptionals_to_exceptionals():
    lat = make_lattice(7)
    inv = anti_reflection_in_k(lat)
    cls = exceptional_classes(lat)
    e1 = (0, 1, 0, 0, 0, 0, 0, 0)
    img = inv.apply(e1)
    assert lat.dot(img, img) == -1 and lat.dot(img, lat.k) == -1
    assert sorted(tuple(inv.apply(e)) for e in cls) == cls


def test_anti_reflection_needs_low_degree():
    with pytest.raises(ValidationError):
        anti_reflection_in_k(make_lattice(5))


# -- exceptional classes ------------------------------------------------------------

@pytest.mark.parametrize("n", list(range(1, 9)))
def test_exceptional_class_counts(n):
    lat = make_lattice(n)
    cls = exceptional_classes(lat)
    assert len(cls) == EXPECTED_COUNTS[n]
    for e in cls:
        assert lat.dot(e, e) == -1
        assert lat.dot(e, lat.k) == -1


@pytest.mark.parametrize("n", list(range(1, 9)))
def test_exceptional_classes_confirmed_by_widened_oracle(n):
    lat = make_lattice(n)
    assert exceptional_classes_bruteforce(lat, widen=2) == exceptional_classes(lat)


def test_small_cases_by_hand():
    lat1 = make_lattice(1)
    assert exceptional_classes(lat1) == [(0, 1)]
    lat3 = make_lattice(3)
    cls = exceptional_classes(lat3)
    # 3 points and 3 lines
    assert (0, 1, 0, 0) in cls and (1, -1, -1, 0) in cls
    assert len(cls) == 6


def test_exceptional_classes_unavailable_beyond_eight():
    with pytest.raises(ValidationError):
        exceptional_classes(make_lattice(9))
    with pytest.raises(ValidationError):
        exceptional_classes(quadric_lattice())


# -- minimality and classification ----------------------------------------------------

def test_geiser_bertini_pairs_minimal_and_labeled():
    for n, label in ((7, "(v)"), (8, "(vi)")):
        lat = make_lattice(n)
        inv = anti_reflection_in_k(lat)
        res = is_minimal(lat, inv)
        assert res.minimal
        assert classify_pair(lat, inv).label == label


def test_f1_identity_not_minimal():
    lat = make_lattice(1)
    ident = LatticeInvolution(lat, ((1, 0), (0, 1)))
    res = is_minimal(lat, ident)
    assert not res.minimal
    assert res.witness == (0, 1) and res.failure == "fixed"
    assert classify_pair(lat, ident).label == "non-minimal"


def test_quadratic_dj_model_not_minimal():
    lat = make_lattice(3)
    inv = LatticeInvolution(lat, CREMONA_N3)
    res = is_minimal(lat, inv)
    assert not res.minimal
    assert res.failure == "disjoint" and res.product == 0
    # the witness maps to a disjoint exceptional class
    assert lat.dot(res.witness, res.image) == 0
    assert classify_pair(lat, inv).label == "non-minimal"


def test_quadric_swap_is_case_iv():
    lat = quadric_lattice()
    inv = swap_involution(lat)
    assert fixed_rank(inv) == 1
    assert classify_pair(lat, inv).label == "(iv)"


def test_plane_is_case_iii():
    lat = make_lattice(0)
    inv = LatticeInvolution(lat, ((1,),))
    assert classify_pair(lat, inv).label == "(iii)"


def test_dj3_model_is_minimal_fibration():
    lat, inv = dj3_conic_bundle_involution()
    assert is_minimal(lat, inv).minimal
    cls = classify_pair(lat, inv)
    assert cls.label == "(i)/(ii) fibration"
    assert cls.fixed_rank == 2


def test_classification_stable_under_basis_permutation():
    lat, inv = dj3_conic_bundle_involution()
    base_label = classify_pair(lat, inv).label
    for perm in itertools.permutations(range(4)):
        # permute E_1..E_4 (indices 2..5)
        idx = [0, 1] + [2 + p for p in perm]
        p_mat = tuple(tuple(1 if j == idx[i] else 0 for j in range(6)) for i in range(6))
        p_inv = tuple(tuple(1 if i == idx[j] else 0 for j in range(6)) for i in range(6))
        from planecremona.picard import _mat_mul

        conj = _mat_mul(p_mat, _mat_mul(inv.matrix, p_inv))
        inv2 = LatticeInvolution(lat, conj)
        assert classify_pair(lat, inv2).label == base_label


def test_involution_validation_rejects_bad_matrices():
    lat = make_lattice(1)
    with pytest.raises(ValidationError, match="isometry|involution|K"):
        LatticeInvolution(lat, ((1, 0), (0, -1)))       # not fixing K
    with pytest.raises(ValidationError):
        LatticeInvolution(lat, ((1, 1), (0, 1)))        # not an isometry
    with pytest.raises(ValidationError):
        LatticeInvolution(make_lattice(2), ((1, 0), (0, 1)))  # wrong size


# -- conic-bundle bookkeeping -----------------------------------------------------------

def test_elementary_transformation_rules():
    assert elementary_transformation(ConicBundleModel(2, 4), False).n == 1
    assert elementary_transformation(ConicBundleModel(0, 4), False).n == 1
    assert elementary_transformation(ConicBundleModel(0, 4), True).n == 1
    assert elementary_transformation(ConicBundleModel(3, 4), True).n == 4


def test_elementary_transformation_chain():
    model = ConicBundleModel(5, 0)
    for _ in range(4):
        model = elementary_transformation(model, False)
    assert model.n == 1


def test_contact_order_bookkeeping():
    model = ConicBundleModel(1, 4, (3, 1))
    moved = elementary_transformation(model, True, contact_index=0)
    assert moved.contact_orders == (2, 1)
    with pytest.raises(ValidationError):
        elementary_transformation(model, True, contact_index=1)  # transverse already
    with pytest.raises(ValidationError):
        elementary_transformation(model, True, contact_index=5)


def test_negative_section_square():
    assert ConicBundleModel(4, 0).negative_section_square() == -4
    with pytest.raises(ValidationError):
        ConicBundleModel(-1, 0)
