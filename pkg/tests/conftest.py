import pytest

from secure_onoff import OutageConstraints, RatePair, SystemConfig, snr_stats

# Reference setup used across the suite: Pb = 10 dB, Pe = 0 dB, alpha = 5,
# rates (2, 1), delta = 0.1, eps = 0.05 (0.4 where the no-feedback scenario
# needs a feasible bound).


@pytest.fixture
def ref_cfg():
    return SystemConfig(p_b=10.0, p_e=1.0, alpha=5.0)


@pytest.fixture
def ref_stats(ref_cfg):
    return snr_stats(ref_cfg)


@pytest.fixture
def ref_rates():
    return RatePair(r_b=2.0, r_s=1.0)


@pytest.fixture
def ref_con():
    return OutageConstraints(eps=0.05, delta=0.1)
