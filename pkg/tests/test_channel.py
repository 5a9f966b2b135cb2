import math

import numpy as np
import pytest

from disastersim.channel import (
    SPEED_OF_LIGHT,
    ChannelParams,
    LinkSample,
    compute_sinr,
    db_to_linear,
    dbm_to_watts,
    friis_gain,
    linear_to_db,
    path_gain,
    sample_fading,
    watts_to_dbm,
)


def test_unity_is_zero_db():
    assert linear_to_db(1.0) == 0.0


def test_minus_ten_db_is_one_tenth():
    assert db_to_linear(-10.0) == pytest.approx(0.1, rel=1e-12)


def test_fifty_dbm_is_hundred_watts():
    assert dbm_to_watts(50.0) == pytest.approx(100.0, rel=1e-12)
    assert watts_to_dbm(100.0) == pytest.approx(50.0, abs=1e-12)


def test_db_round_trip_forty_orders():
    for x in np.logspace(-20.0, 20.0, 81):
        assert abs(db_to_linear(linear_to_db(x)) - x) <= 1e-12 * x


def test_db_domain_errors():
    with pytest.raises(ValueError):
        linear_to_db(0.0)
    with pytest.raises(ValueError):
        linear_to_db(-3.0)
    with pytest.raises(ValueError):
        watts_to_dbm(0.0)


def test_path_gain_reference_distance():
    assert path_gain(1.0, ChannelParams()) == 1.0


def test_path_gain_inverse_fourth():
    assert path_gain(2.0, ChannelParams(path_loss_exponent=4.0)) == pytest.approx(0.0625, rel=1e-12)


def test_path_gain_alpha_3_5():
    # 100^-3.5 = 1e-7
    p = ChannelParams(path_loss_exponent=3.5)
    assert path_gain(100.0, p) == pytest.approx(1.0e-7, rel=1e-12)


def test_path_gain_scales_with_reference_gain():
    p = ChannelParams(reference_gain_at_1m=2.5)
    assert path_gain(2.0, p) == pytest.approx(2.5 * 0.0625, rel=1e-12)


def test_path_gain_clamps_below_min_distance():
    p = ChannelParams(min_distance=1.0)
    assert path_gain(0.01, p) == path_gain(1.0, p)


def test_path_gain_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        path_gain(0.0, ChannelParams())
    with pytest.raises(ValueError):
        path_gain(np.array([1.0, -2.0]), ChannelParams())


def test_path_gain_strictly_decreasing():
    p = ChannelParams()
    d = np.linspace(1.0, 5000.0, 200)
    g = path_gain(d, p)
    assert np.all(np.diff(g) < 0.0)


def test_channel_params_validation():
    with pytest.raises(ValueError):
        ChannelParams(path_loss_exponent=2.0)
    with pytest.raises(ValueError):
        ChannelParams(sinr_threshold=0.0)
    with pytest.raises(ValueError):
        ChannelParams(noise_power=-1.0)


def test_friis_unit_gain_distance():
    f = 868e6
    wavelength = SPEED_OF_LIGHT / f
    assert friis_gain(wavelength / (4.0 * math.pi), f) == pytest.approx(1.0, rel=1e-12)


def test_friis_868mhz_200km():
    # Independent oracle in dB form: 20 log10(4 pi d f / c)
    f, d = 868e6, 200e3
    loss_db = 20.0 * math.log10(4.0 * math.pi * d * f / SPEED_OF_LIGHT)
    gain = friis_gain(d, f)
    assert 10.0 * math.log10(gain) == pytest.approx(-loss_db, abs=1e-9)
    assert loss_db == pytest.approx(137.23, abs=0.01)
    assert gain == pytest.approx(1.889e-14, rel=1e-3)


def test_friis_inverse_square_doubling_exact():
    f = 868e6
    assert friis_gain(400e3, f) == friis_gain(200e3, f) / 4.0


def test_friis_domain_errors():
    with pytest.raises(ValueError):
        friis_gain(0.0, 868e6)
    with pytest.raises(ValueError):
        friis_gain(100.0, 0.0)


def test_fading_unit_mean():
    rng = np.random.default_rng(100)
    draws = sample_fading(rng, size=100_000)
    assert abs(draws.mean() - 1.0) < 0.01


def test_fading_unit_variance():
    rng = np.random.default_rng(101)
    draws = sample_fading(rng, size=100_000)
    assert abs(draws.var() - 1.0) < 0.03


def test_fading_exponential_tail():
    # P[X > 2.3026] = exp(-2.3026) = 0.1000 for Exp(1)
    rng = np.random.default_rng(102)
    draws = sample_fading(rng, size=100_000)
    assert abs((draws > 2.3026).mean() - 0.1) < 0.01


def test_sinr_with_noise_only():
    assert compute_sinr(LinkSample(1.0, 0.0, 0.1)) == pytest.approx(10.0, rel=1e-12)


def test_sinr_single_interferer_hand_case():
    # serving at d=1, interferer at d=2, alpha=4, unit fading: 1 / 2^-4 = 16
    p = ChannelParams(path_loss_exponent=4.0)
    link = LinkSample(path_gain(1.0, p), path_gain(2.0, p), 0.0)
    sinr = compute_sinr(link)
    assert sinr == pytest.approx(16.0, rel=1e-12)
    assert 10.0 * math.log10(sinr) == pytest.approx(12.04, abs=0.01)


def test_sinr_interference_and_noise_free_limit():
    assert compute_sinr(LinkSample(1.0, 0.0, 0.0)) == math.inf


def test_sinr_all_zero_is_undefined():
    with pytest.raises(ValueError):
        compute_sinr(LinkSample(0.0, 0.0, 0.0))


def test_sinr_decreasing_in_interference():
    values = [compute_sinr(LinkSample(1.0, i, 0.05)) for i in (0.0, 0.1, 0.5, 2.0)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_link_sample_rejects_negative_power():
    with pytest.raises(ValueError):
        LinkSample(-1.0, 0.0, 0.0)
