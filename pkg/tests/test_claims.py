import pytest

from collatzlab import (
    Cycle,
    fixture_catalog,
    verify_10_pow2_entry,
    verify_correspondence,
    verify_multiples_of_5,
    verify_odd_digit_pattern,
    verify_pow2_same_cycle,
)
from collatzlab.reference import naive_orbit


def test_pow2_examples():
    # oracle: 13312 halves ten times to 13
    traj = naive_orbit(5, 1, 13 * 2**10).trajectory
    assert traj[:11] == [13 * 2 ** (10 - j) for j in range(11)]
    r = verify_pow2_same_cycle(13, 10)
    assert r.passed and r.tested_instances == 11
    assert verify_pow2_same_cycle(17, 10).passed
    assert verify_pow2_same_cycle(13, 0).passed


def test_pow2_requires_cycle_member():
    with pytest.raises(ValueError):
        verify_pow2_same_cycle(7, 3)


def test_entry_examples():
    # oracle: 10 5 26, and 26 lies on the 13-cycle
    assert naive_orbit(5, 1, 10).trajectory[:3] == [10, 5, 26]
    assert naive_orbit(5, 1, 10).entry_steps == 2
    r = verify_10_pow2_entry(6)
    assert r.passed
    assert r.measured_constants["offset"] == 2
    assert r.measured_constants["entry_steps"][0] == 2
    assert r.measured_constants["entry_steps"][3] == 5
    for rr in range(7):
        assert naive_orbit(5, 1, 10 << rr).entry_steps - rr == 2


def test_digits():
    r = verify_odd_digit_pattern()
    assert r.passed
    assert r.tested_instances == 6  # 13 33 83 / 17 27 43
    fake = list(fixture_catalog("5n+1").cycles) + [Cycle((15, 76, 38))]
    bad = verify_odd_digit_pattern(fake)
    assert not bad.passed
    assert [f["element"] for f in bad.failures] == [15]


def test_mult5():
    r = verify_multiples_of_5(35, extras=())
    assert r.passed and r.tested_instances == 7
    r = verify_multiples_of_5(5, extras=(3698450, 17585))
    assert r.passed and r.tested_instances == 3
    assert not verify_multiples_of_5(5, extras=(23,)).passed
    with pytest.raises(ValueError):
        verify_multiples_of_5(4)


def test_correspondence_examples():
    t1 = naive_orbit(3, 1, 7).trajectory[:5]
    t5 = naive_orbit(3, 5, 35).trajectory[:5]
    assert t1 == [7, 22, 11, 34, 17]
    assert t5 == [35, 110, 55, 170, 85]
    assert verify_correspondence(7, 4).passed
    assert naive_orbit(3, 5, 5, stop_at_one=False).trajectory == [5, 20, 10, 5]
    r = verify_correspondence(200, 300)
    assert r.passed and r.tested_instances == 200
    with pytest.raises(ValueError):
        verify_correspondence(0, 5)


def test_correspondence_detects_break(monkeypatch):
    # swap 3n+5 for 3n+7 behind the verifier's back: identity must fail
    import collatzlab.claims as claims
    from collatzlab import make_map

    real = claims.preset
    monkeypatch.setattr(claims, "preset", lambda n: make_map(3, 7) if n == "3n+5" else real(n))
    r = claims.verify_correspondence(3, 5)
    assert not r.passed
    assert r.failures[0]["k"] == 1 and r.failures[0]["i"] == 1
