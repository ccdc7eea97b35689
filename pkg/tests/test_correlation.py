"""Correlation map: examples, invariants, and the two computation routes."""

import random
from fractions import Fraction

import pytest

from isingdeg import (
    GroupSpec,
    Interaction,
    SpinConfig,
    correlate,
    correlate_fast,
    energy,
    even_projection,
    extended_correlate,
    fourier_power_check,
)
from isingdeg import catalog


def all_configs(spec):
    for bits in range(1 << spec.order):
        yield SpinConfig(spec, bits)


def test_text_round_trip():
    g = GroupSpec((5,))
    for text in ("+++++", "+-+-+", "-----", "+---+"):
        assert SpinConfig.from_text(g, text).to_text() == text
    with pytest.raises(ValueError):
        SpinConfig.from_text(g, "+-")
    with pytest.raises(ValueError):
        SpinConfig.from_text(g, "+-0+-")


def test_correlate_saturated_example():
    g = GroupSpec((7,))
    sigma = SpinConfig.from_text(g, catalog.SATURATED_7)
    assert correlate(sigma).values == (7, -1, -1, -1, -1, -1, -1)


def test_correlate_all_ones():
    for spec in (GroupSpec((5,)), GroupSpec((2, 4))):
        assert correlate(SpinConfig.all_ones(spec)).values == (spec.order,) * spec.order


def test_correlate_alternating_z4():
    g = GroupSpec((4,))
    assert correlate(SpinConfig.from_text(g, "+-+-")).values == (4, -4, 4, -4)


def test_correlate_word21():
    from isingdeg import flatten, word

    sigma = flatten(word(*catalog.WORD_21))
    corr = correlate(sigma)
    assert corr.values[0] == 21
    for f in range(1, 21):
        assert corr.values[f] == (13 if f % 3 == 0 else -7)


def test_fast_equals_naive_exhaustive():
    for spec in (GroupSpec((2,)), GroupSpec((5,)), GroupSpec((8,)), GroupSpec((12,)),
                 GroupSpec((13,)), GroupSpec((2, 3)), GroupSpec((2, 6)), GroupSpec((2, 2, 3))):
        for config in all_configs(spec):
            assert correlate_fast(config).values == correlate(config).values


def test_fast_equals_naive_randomized_large():
    rng = random.Random(123)
    for spec in (GroupSpec((14,)), GroupSpec((15,)), GroupSpec((16,)), GroupSpec((2, 8))):
        for _ in range(200):
            config = SpinConfig(spec, rng.randrange(1 << spec.order))
            assert correlate_fast(config).values == correlate(config).values


def test_singer13_fast_example():
    g = GroupSpec((13,))
    corr = correlate_fast(SpinConfig.from_text(g, catalog.SINGER_13))
    assert corr.values == (13,) + (1,) * 12


def test_flip_invariance_and_lattice():
    for spec in (GroupSpec((9,)), GroupSpec((2, 4))):
        n = spec.order
        for config in all_configs(spec):
            corr = correlate_fast(config)
            assert correlate_fast(-config).values == corr.values
            assert corr.values[0] == n
            assert all(-n <= v <= n and (n - v) % 4 == 0 for v in corr.values)


def test_constant_correlation_only_for_constants():
    for spec in (GroupSpec((9,)), GroupSpec((11,)), GroupSpec((2, 5)), GroupSpec((16,))):
        n = spec.order
        full = (n,) * n
        hits = [c.bits for c in all_configs(spec) if correlate_fast(c).values == full]
        assert hits == [0, (1 << n) - 1]


def test_reversal_preserves_correlation_cyclic():
    rng = random.Random(5)
    for n in (4, 7, 10, 13):
        spec = GroupSpec((n,))
        for _ in range(50):
            config = SpinConfig(spec, rng.randrange(1 << n))
            assert correlate_fast(config.reverse()).values == correlate_fast(config).values


def test_magnetization_identity_exhaustive():
    for spec in (GroupSpec((10,)), GroupSpec((2, 4)), GroupSpec((3, 3))):
        for config in all_configs(spec):
            ext = extended_correlate(config)
            assert ext.magnetization**2 == sum(ext.corr.values)


def test_extended_examples():
    g4 = GroupSpec((4,))
    ext = extended_correlate(SpinConfig.from_text(g4, "+-+-"))
    assert ext.corr.values == (4, -4, 4, -4) and ext.magnetization == 0

    g5 = GroupSpec((5,))
    ext = extended_correlate(SpinConfig.all_ones(g5))
    assert ext.corr.values == (5,) * 5 and ext.magnetization == 5

    g7 = GroupSpec((7,))
    ext = extended_correlate(SpinConfig.from_text(g7, catalog.SATURATED_7))
    assert ext.magnetization in (1, -1)
    assert ext.magnetization**2 == 7 + 6 * (-1)


def test_energy_examples():
    g4 = GroupSpec((4,))
    j = Interaction.delta(g4, 1)
    assert energy(SpinConfig.all_ones(g4), j) == 4
    assert energy(SpinConfig.from_text(g4, "+-+-"), j) == -4
    assert energy(SpinConfig.from_text(g4, "+-++"), Interaction.zero(g4)) == 0


def test_energy_rejects_group_mismatch():
    with pytest.raises(Exception):
        energy(SpinConfig.all_ones(GroupSpec((4,))), Interaction.zero(GroupSpec((5,))))


def test_interaction_rejects_floats():
    g = GroupSpec((3,))
    with pytest.raises(TypeError):
        Interaction(g, (0.5, 0, 0))
    with pytest.raises(TypeError):
        Interaction(g, (True, 0, 0))
    Interaction(g, (Fraction(1, 2), 0, 1))  # exact rationals are fine


def test_even_projection_examples():
    g4 = GroupSpec((4,))
    j = Interaction(g4, (0, 1, 0, 0))
    assert even_projection(j).values == (0, Fraction(1, 2), 0, Fraction(1, 2))

    already = Interaction(g4, (3, 2, 7, 2))
    assert even_projection(already).values == (3, 2, 7, 2)

    g5 = GroupSpec((5,))
    j5 = even_projection(Interaction(g5, (1, 2, 3, 4, 5)))
    assert j5.values == (1, Fraction(7, 2), Fraction(7, 2), Fraction(7, 2), Fraction(7, 2))


def test_even_projection_idempotent_and_energy_preserving():
    rng = random.Random(11)
    for spec in (GroupSpec((6,)), GroupSpec((2, 3))):
        for _ in range(25):
            j = Interaction(spec, tuple(rng.randrange(-9, 10) for _ in range(spec.order)))
            jev = even_projection(j)
            assert even_projection(jev).values == jev.values
            for _ in range(10):
                config = SpinConfig(spec, rng.randrange(1 << spec.order))
                assert energy(config, j) == energy(config, jev)


def test_fourier_positive_examples():
    g4 = GroupSpec((4,))
    mn, mi = fourier_power_check(SpinConfig.all_ones(g4))
    assert mn >= -1e-9 and mi <= 1e-9

    g7 = GroupSpec((7,))
    mn, mi = fourier_power_check(SpinConfig.from_text(g7, catalog.SATURATED_7))
    assert mn >= -1e-9 and mi <= 1e-9


def test_fourier_positive_exhaustive():
    for spec in [GroupSpec((n,)) for n in range(2, 11)] + [GroupSpec((2, 4))]:
        for config in all_configs(spec):
            mn, mi = fourier_power_check(config)
            assert mn >= -1e-9 and mi <= 1e-9
