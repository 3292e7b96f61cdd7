import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qschub.schubfun import (
    EvaluationMismatch,
    canonical_label,
    conjugate_partition,
    elementary,
    evaluate,
    og_pfaffian,
    og_two_row,
    parse_partition,
    pfaffian,
    quadric_eval,
    schur_eval,
)
from qschub.spaces import HomSpace, UnsupportedSpace
from qschub.spectrum import (
    DualNumber,
    SpectrumError,
    SpectrumPoint,
    build_spectrum,
    conj_permutation,
    euler_values,
    lg_tuple_description,
    lift_j,
    rescale_q,
    spectrum_gw26,
    spectrum_lg,
    spectrum_og,
    spectrum_quadric,
    spectrum_typeA,
    typeA_calibration,
    typeA_fiber_residual,
)

complexes = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


# -- spectra ---------------------------------------------------------------


@pytest.mark.parametrize("d,n", [(1, 2), (2, 4), (2, 5), (3, 6)])
def test_typeA_points_and_fiber(d, n):
    spec = spectrum_typeA(d, n)
    assert len(spec.points) == len(list(itertools.combinations(range(n), d)))
    for p in spec.points:
        assert typeA_fiber_residual(p, 1, d) < 1e-12
        # calibrated coordinates are n-th roots of (-1)^(d-1)
        assert all(abs(z**n - (-1) ** (d - 1)) < 1e-12 for z in p.coords)


def test_typeA_calibration_moves_the_fiber():
    t = typeA_calibration(2, 4)
    assert abs(t**4 - 1) < 1e-12  # (-1)^(n-d) with n - d = 2
    literal = spectrum_typeA(2, 5, convention="literal")
    assert literal.convention["name"] == "literal"
    for p in literal.points:
        assert all(abs(z**5 - 1) < 1e-12 for z in p.coords)
    with pytest.raises(ValueError):
        spectrum_typeA(2, 4, convention="other")


def test_projective_line_euler_values():
    # H^2 = q on P^1: points +-1, Euler class 2x
    spec = spectrum_typeA(1, 2)
    xs = sorted(p.coords[0].real for p in spec.points)
    assert xs == pytest.approx([-1, 1])
    ev = sorted(v.real for v in euler_values(spec))
    assert ev == pytest.approx([-2, 2])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_og_points(n):
    spec = spectrum_og(n)
    assert len(spec.points) == 2**n
    for p in spec.points:
        e = elementary(p.coords)
        # e_1..e_n vanish except e_(n+1) = 0 and e_n^2 = 4 on the sqrt coordinates
        assert abs(p.coords[0]) == 0
        assert abs(e[n] ** 2 - 4) < 1e-9 or abs(e[n + 1]) < 1e-12


@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_quadric_table(m):
    n = m // 2
    spec = spectrum_quadric(m)
    kinds = [p.kind for p in spec.points]
    assert kinds.count("O(zeta)") == 2 * n
    for p in spec.points:
        if p.kind == "O(zeta)":
            assert abs(p.param ** (2 * n) - 4) < 1e-9
            assert p.class_values["P"] == 0
        else:
            assert p.class_values["H"] == 0 and p.class_values["Hn"] == 0
            assert abs(p.class_values["P"] - (2 if p.kind == "O(+)" else -2)) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("sign", ["constant", "chevalley"])
def test_lg_total_length(n, sign):
    spec = spectrum_lg(n, sign=sign)
    assert spec.total_length == 2**n


def test_lg_tuple_description_is_diagnostic_only():
    # the tuple description is reported, it does not define the spectrum
    tuples = lg_tuple_description(3)
    assert all(len(t) == 4 for t in tuples)
    assert "tuple_check" in spectrum_lg(3).convention


def test_gw26_scheme():
    spec = spectrum_gw26()
    assert spec.total_length == 12
    mults = sorted(p.multiplicity for p in spec.points)
    assert mults == [1] * 10 + [2]
    z0 = next(p for p in spec.points if p.multiplicity == 2)
    assert z0.class_values["1|1"] == DualNumber(0, 1)
    assert z0.class_values["2|3"] == DualNumber(-1)
    for p in spec.points:
        if p.kind == "Z1":
            assert abs(p.class_values["2|21"] + 1) < 1e-12
            assert abs(p.param**5 + 1) < 1e-12
        if p.kind == "Z2":
            s = p.param
            assert abs(p.class_values["2|2"] - s**4 / 9) < 1e-12


@pytest.mark.parametrize("tag", ["A:2,4", "A:3,6", "OG:4", "Q:6", "Q:8", "LG:3"])
def test_conj_permutation_is_involution(tag):
    spec = build_spectrum(HomSpace.parse(tag))
    perm = conj_permutation(spec)
    assert sorted(perm) == list(range(len(perm)))
    assert all(perm[perm[i]] == i for i in range(len(perm)))


def test_conj_permutation_rejects_double_points():
    with pytest.raises(SpectrumError):
        conj_permutation(spectrum_gw26())


def test_quadric_conjugation_on_middle_orbits():
    for m, swap in ((8, True), (6, False)):
        spec = spectrum_quadric(m)
        perm = conj_permutation(spec)
        ip = next(i for i, p in enumerate(spec.points) if p.kind == "O(+)")
        im = next(i for i, p in enumerate(spec.points) if p.kind == "O(-)")
        assert (perm[ip] == im) is swap


def test_rescale_and_lift():
    spec = spectrum_typeA(2, 4, convention="literal")
    t = cmath.exp(0.3j)
    moved = rescale_q(spec, t)
    assert abs(moved.convention["q"] - t**4) < 1e-12
    p = SpectrumPoint(coords=(1 + 1j, 2j))
    lifted, q = lift_j(p, 2j, 2)
    assert abs(q - (-0.5j)) < 1e-12
    assert lifted.coords[0] == pytest.approx((1 - 1j) / 2)
    with pytest.raises(ValueError):
        rescale_q(spec, 0)


@given(complexes, complexes, complexes, complexes)
def test_dual_number_ring_laws(a, b, c, d):
    x, y = DualNumber(a, b), DualNumber(c, d)
    prod = x * y
    assert prod.value == pytest.approx(a * c)
    assert prod.eps == pytest.approx(a * d + b * c, abs=1e-9)
    back = (x + y) - y
    assert back.value == pytest.approx(a, abs=1e-9) and back.eps == pytest.approx(b, abs=1e-9)
    if abs(a) > 0.1:
        one = x * x.inverse()
        assert one.value == pytest.approx(1)
        assert abs(one.eps) < 1e-9


def test_dual_number_nilpotent():
    e = DualNumber(0, 1)
    assert e * e == DualNumber(0, 0)
    with pytest.raises(ZeroDivisionError):
        e.inverse()


# -- class evaluation ---------------------------------------------------------


@pytest.mark.parametrize("text,parts", [("", ()), ("0", ()), ("()", ()), ("2,1", (2, 1)), ("(3,1)", (3, 1))])
def test_parse_partition(text, parts):
    assert parse_partition(text) == parts


@pytest.mark.parametrize("bad", ["1,2", "a", "2,-1", "2,0"])
def test_parse_partition_rejects(bad):
    with pytest.raises(ValueError):
        parse_partition(bad)


def test_canonical_labels():
    assert canonical_label(HomSpace("C3P2"), "(0|2)") == "2|0"
    assert canonical_label(HomSpace("Q", (6,)), "pt") == "6"
    assert canonical_label(HomSpace("A", (2, 4)), "(2,1)") == "2,1"
    with pytest.raises(ValueError):
        canonical_label(HomSpace("A", (2, 4)), "3")


@given(st.lists(st.integers(0, 4), min_size=0, max_size=3).map(lambda v: sorted(v, reverse=True)))
def test_conjugate_partition_involution(parts):
    lam = tuple(p for p in parts if p > 0)
    assert conjugate_partition(conjugate_partition(lam)) == lam


@given(st.lists(complexes, min_size=3, max_size=3, unique=True),
       st.sampled_from([(), (1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2, 1)]))
def test_schur_routes_agree(xs, lam):
    # Jacobi-Trudi against the bialternant; raises on disagreement when well conditioned
    p = SpectrumPoint(coords=tuple(xs) + (0j, 0j, 0j))
    try:
        v = schur_eval(lam, p, 3, 6)
    except EvaluationMismatch:
        pytest.fail("bialternant and Jacobi-Trudi disagree")
    if lam == (1,):
        assert v == pytest.approx(sum(xs))


def test_schur_small_values():
    p = SpectrumPoint(coords=(2 + 0j, 3 + 0j, 0j, 0j))
    assert schur_eval((1, 1), p, 2, 4) == pytest.approx(6)
    assert schur_eval((2,), p, 2, 4) == pytest.approx(4 + 6 + 9)
    assert schur_eval((2, 1), p, 2, 4) == pytest.approx(2 * 3 * 5)
    with pytest.raises(ValueError):
        schur_eval((3,), p, 2, 4)


@given(st.integers(1, 4).flatmap(lambda k: st.lists(
    st.integers(-5, 5), min_size=(2 * k) * (2 * k - 1) // 2, max_size=(2 * k) * (2 * k - 1) // 2)
    .map(lambda v, k=k: (2 * k, v))))
def test_pfaffian_squares_to_determinant(data):
    m, vals = data
    a = np.zeros((m, m), dtype=object)
    a[:, :] = 0
    it = iter(vals)
    for i in range(m):
        for j in range(i + 1, m):
            v = next(it)
            a[i, j], a[j, i] = v, -v
    pf = pfaffian(a.tolist())
    det = round(np.linalg.det(a.astype(float)))
    assert pf * pf == det


def test_og_special_classes_and_two_row():
    spec = spectrum_og(4)
    for p in spec.points:
        e = elementary(p.coords)
        assert evaluate(HomSpace("OG", (4,)), "3", p) == pytest.approx(e[3] / 2)
        # sigma(n, j) = sigma(n) sigma(j)
        assert og_two_row(4, 1, p, 4) == pytest.approx(e[4] * e[1] / 4)
        assert og_pfaffian((4, 1), p, 4) == pytest.approx(og_two_row(4, 1, p, 4))


def test_og_alternative_two_row_variant_differs():
    # for i + j > n with i < n the alternative expansion keeps -sigma(n)sigma(i+j-n) with
    # coefficient 1; on OG:4 at (3, 2) it exceeds the classical one by sigma(4)sigma(1)
    worst = 0.0
    for p in spectrum_og(4).points:
        e = elementary(p.coords)
        diff = og_two_row(3, 2, p, 4, variant="alternative") - og_two_row(3, 2, p, 4)
        assert diff == pytest.approx(e[4] * e[1] / 4, abs=1e-12)
        worst = max(worst, abs(diff))
    assert worst > 0.1
    with pytest.raises(ValueError):
        og_two_row(1, 2, spectrum_og(2).points[0], 2)


def test_quadric_eval_formulas():
    spec = spectrum_quadric(6)
    n = 3
    for p in spec.points:
        h = p.class_values["H"]
        assert quadric_eval("2", p, n) == pytest.approx(h**2)
        assert quadric_eval("5", p, n) == pytest.approx(h**5 / 2)
        assert quadric_eval("+", p, n) + quadric_eval("-", p, n) == pytest.approx(p.class_values["Hn"])
        if p.kind == "O(+)":
            assert quadric_eval("+", p, n) == pytest.approx(1)
    with pytest.raises(ValueError):
        quadric_eval("3", spec.points[0], n)


def test_lg_only_special_classes_evaluate():
    p = spectrum_lg(3).points[0]
    with pytest.raises(UnsupportedSpace):
        evaluate(HomSpace("LG", (3,)), "2,1", p)
