import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from bistar import series as ps
from bistar.catalog import gen_koebe
from bistar.errors import ArgumentError, DomainError, NumericError
from bistar.grid import GridSpec, SCHWARZ_GRID
from bistar.membership import check_forward, inverse_pullback, subordination_check
from bistar.quadrature import integrate_segment
from bistar.schwarz import (
    SchwarzFunction,
    certify,
    eval_schwarz,
    generate,
    generate_inverse_starlike,
    generate_starlike,
    generate_V,
    halfplane_map,
    parse_phi,
    random_schwarz,
    schwarz_pick_residual,
)

IDENT = SchwarzFunction.power(1)
ZERO = SchwarzFunction.zero()
SMALL_GRID = GridSpec(24, 64, 0.999)


def series_pre_schwarzian(f, z, order=200):
    d1 = ps.derive(f.taylor(order))
    return ps.evaluate(ps.derive(d1), z) / ps.evaluate(d1, z)


def check_points(n=64, r=0.7):
    rad = r * np.linspace(0.1, 1, 8)[:, None]
    return (rad * np.exp(2j * np.pi * np.arange(n) / n)).ravel()


# --- Schwarz functions ------------------------------------------------------

def test_eval_examples():
    assert_allclose(eval_schwarz(IDENT, 0.3), (0.3, 1.0))
    assert_allclose(eval_schwarz(SchwarzFunction.power(2), 0.5), (0.25, 1.0))
    phi = SchwarzFunction(1, (0.5,))
    assert_allclose(eval_schwarz(phi, 0.0), (0, -0.5))


def test_eval_outside_disc():
    with pytest.raises(DomainError):
        eval_schwarz(IDENT, 1.0)
    with pytest.raises(DomainError):
        schwarz_pick_residual(IDENT, 1.2j)


def test_pick_residual_examples():
    z = np.array([0, 0.3, -0.5j, 0.9 + 0.1j])
    assert_allclose(schwarz_pick_residual(IDENT, z), 0, atol=1e-15)
    assert_allclose(schwarz_pick_residual(SchwarzFunction.power(2), 0.5), 0.25)
    assert_allclose(schwarz_pick_residual(SchwarzFunction(1, (), 0.5), 0.0), 0.5)


def test_halfplane_map_examples():
    assert halfplane_map(0.3, 0) == 1
    assert_allclose(halfplane_map(0, 0.5), 3)
    assert_allclose(halfplane_map(0.5, 0.5j), 0.8 + 0.4j)
    with pytest.raises(DomainError):
        halfplane_map(0.2, 1)


@settings(max_examples=50)
@given(st.floats(0, 0.999), st.complex_numbers(max_magnitude=0.999, allow_nan=False))
def test_halfplane_map_lands_right_of_alpha(alpha, w):
    assert halfplane_map(alpha, w).real > alpha - 1e-12


def test_derivative_matches_series():
    phi = SchwarzFunction(2, (0.3 + 0.2j, -0.5), np.exp(0.4j))
    s = phi.series(60)
    z = check_points(r=0.5)
    assert_allclose(phi(z), ps.evaluate(s, z), atol=1e-14)
    assert_allclose(phi.derivative(z), ps.evaluate(ps.derive(s), z), atol=1e-13)


@pytest.mark.parametrize("text", ["0", "z", "z^3", "blaschke:0.5", "blaschke:0.2,-0.1+0.3j:0.5",
                                  "z^2*blaschke:0.4j"])
def test_parse_round_trip(text):
    phi = parse_phi(text)
    again = parse_phi(phi.spec())
    z = check_points(r=0.9)
    assert_allclose(again(z), phi(z), atol=1e-15)


@pytest.mark.parametrize("bad", ["", "w^2", "z^0", "blaschke:1.5", "blaschke:0.1:2", "blaschke:a",
                                 "blaschke:0.1,0.2,0.3,0.4,0.5"])
def test_parse_errors(bad):
    with pytest.raises(ArgumentError):
        parse_phi(bad)


def test_zero_cap_is_configurable():
    phi = parse_phi("blaschke:0.1,0.2,0.3,0.4,0.5", max_zeros=5)
    assert len(phi.zeros) == 5


def test_zeros_at_origin_fold_into_power():
    phi = SchwarzFunction(1, (0, 0.3))
    assert phi.k == 2 and phi.zeros == (0.3,)


def test_random_schwarz_functions_are_certified():
    rng = np.random.default_rng(7)
    for _ in range(100):
        cert = certify(random_schwarz(rng))
        assert cert["min_pick_residual"] >= -1e-12
        assert cert["max_modulus_excess"] <= 1e-12


def test_identity_attains_equality():
    _, _, z = SCHWARZ_GRID.points()
    assert np.max(np.abs(schwarz_pick_residual(IDENT, z))) < 1e-12
    assert np.max(np.abs(np.abs(IDENT(z)) - np.abs(z))) < 1e-12


# --- quadrature -------------------------------------------------------------

def test_quadrature_polynomial_and_log():
    z = np.array([0.5, 0.9j, -0.7 + 0.2j])
    assert_allclose(integrate_segment(lambda t: 3 * t * t, z), z**3, rtol=1e-14)
    assert_allclose(integrate_segment(lambda t: 1 / (1 - t), z), -np.log(1 - z), rtol=1e-13)


def test_quadrature_near_singularity():
    z = np.array([1 - 1e-6])
    assert_allclose(integrate_segment(lambda t: 1 / (1 - t), z), -np.log(1e-6), rtol=1e-11)


def test_quadrature_reports_nonconvergence():
    with pytest.raises(NumericError) as info, np.errstate(divide="ignore"):
        integrate_segment(lambda t: 1 / np.sqrt(np.abs(t - 0.5)), np.array([1.0 + 0j]), max_depth=3)
    assert "error_estimate" in info.value.diagnostics


# --- generators -------------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 0.9])
def test_starlike_identity_phi_is_gen_koebe(alpha):
    f = generate_starlike(alpha, IDENT)
    z = check_points(r=0.95)
    assert_allclose(f.value(z), gen_koebe(alpha).value(z), rtol=1e-8)
    assert_allclose(f.taylor(30).coeffs, gen_koebe(alpha).taylor(30).coeffs, atol=1e-8, rtol=1e-8)


@pytest.mark.parametrize("cls", ["starlike", "inv-starlike", "v"])
def test_zero_phi_gives_identity(cls):
    f = generate(cls, 0.4, ZERO)
    z = check_points(r=0.99)
    assert_allclose(f.value(z), z, atol=1e-14)
    assert np.max(np.abs(f.pre_schwarzian_fn(z))) < 1e-14


def test_starlike_z_squared():
    c = generate_starlike(0.0, SchwarzFunction.power(2)).taylor(5).coeffs
    assert_allclose(c[:4], [0, 1, 0, 1], atol=1e-14)


def test_inverse_starlike_half_identity_is_z_exp_minus_z():
    f = generate_inverse_starlike(0.5, IDENT)
    z = check_points(r=0.95)
    assert_allclose(f.value(z), z * np.exp(-z), rtol=1e-12)
    # f''/f' of z e^{-z} is (z - 2) / (1 - z)
    assert_allclose(f.pre_schwarzian_fn(0.5), -3.0, rtol=1e-12)


def test_inverse_starlike_two_paths_agree():
    f = generate_inverse_starlike(0.0, IDENT)
    z = check_points(r=0.7)
    assert_allclose(f.value(z), ps.evaluate(f.taylor(160), z), atol=1e-10)


def test_v_z_squared_coefficients():
    f = generate_V(0.0, SchwarzFunction.power(2))
    a = f.taylor(8).coeffs
    assert abs(a[3] - a[2] ** 2 - 2) < 1e-12
    assert f.diagnostics["pole_count"] == 2  # 1/f vanishes near +-0.65


@pytest.mark.parametrize("phi", ["z", "blaschke:0.3", "z*blaschke:0.1,0.2:0.5"])
def test_v_rejects_linear_phi(phi):
    with pytest.raises(DomainError):
        generate_V(0.3, parse_phi(phi))


def test_v_accepts_linear_term_cancelled_by_zero_at_origin():
    f = generate_V(0.3, parse_phi("blaschke:0,0.4"))
    assert f.params["phi"].k == 2


def test_generators_reject_bad_alpha():
    for cls in ("starlike", "inv-starlike", "v"):
        with pytest.raises(ArgumentError):
            generate(cls, 1.0, SchwarzFunction.power(2))
    with pytest.raises(ArgumentError):
        generate("convex", 0.2, IDENT)


@pytest.fixture(scope="module")
def random_pairs():
    rng = np.random.default_rng(11)
    return [(float(rng.uniform(0, 1)), random_schwarz(rng)) for _ in range(50)]


def test_starlike_members(random_pairs):
    for alpha, phi in random_pairs:
        rep = check_forward(generate_starlike(alpha, phi), alpha, "starlike", SMALL_GRID)
        assert rep.empirical_min_re >= alpha - 1e-9


def test_inverse_starlike_subordination(random_pairs):
    for alpha, phi in random_pairs:
        f = generate_inverse_starlike(alpha, phi)
        rep = subordination_check(inverse_pullback(f), alpha, SMALL_GRID)
        assert rep.empirical_min_re >= alpha - 1e-9


@pytest.mark.parametrize("cls", ["starlike", "inv-starlike"])
def test_closed_form_pre_schwarzian_matches_series(cls, random_pairs):
    z = check_points()
    for alpha, phi in random_pairs[:20]:
        f = generate(cls, alpha, phi)
        assert np.max(np.abs(f.pre_schwarzian_fn(z) - series_pre_schwarzian(f, z))) < 1e-8


def test_v_closed_form_pre_schwarzian_matches_series():
    rng = np.random.default_rng(5)
    z = check_points()
    done = 0
    while done < 10:
        alpha, phi = float(rng.uniform(0, 1)), random_schwarz(rng, min_k=2)
        f = generate_V(alpha, phi)
        if f.diagnostics["pole_count"]:
            continue
        done += 1
        assert np.max(np.abs(f.pre_schwarzian_fn(z) - series_pre_schwarzian(f, z))) < 1e-8
        # (z/f)^2 f' = F(phi) has no z^1 term
        s = f.taylor(16)
        q = ps.mul(ps.derive(s), ps.reciprocal(ps.mul(ps.TruncatedSeries(s.coeffs[1:]),
                                                      ps.TruncatedSeries(s.coeffs[1:]))))
        assert abs(q.coeffs[1]) < 1e-10


def test_v_taylor_matches_evaluator():
    f = generate_V(0.6, parse_phi("z^2*blaschke:0.3:0.5"))
    assert f.diagnostics["pole_count"] == 0
    z = check_points(r=0.7)
    assert_allclose(f.value(z), ps.evaluate(f.taylor(200), z), atol=1e-10)
    rep = check_forward(f, 0.6, "V", SMALL_GRID)
    assert rep.verdict == "member"
