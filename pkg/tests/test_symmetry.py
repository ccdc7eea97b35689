"""The symmetry action, orbits, stabilizers, and automorphism relabelings."""

import itertools
import random

from isingdeg import (
    Automorphism,
    GroupSpec,
    SpinConfig,
    act_phi,
    act_psi_config,
    act_psi_corr,
    all_sym_elements,
    automorphisms,
    correlate_fast,
    d_sym,
    joint_orbit,
    orbit,
    stabilizer,
)
from isingdeg import catalog
from isingdeg.symmetry import SymElement, phi_orbit_bits


def all_configs(spec):
    for bits in range(1 << spec.order):
        yield SpinConfig(spec, bits)


def test_act_phi_examples():
    g3 = GroupSpec((3,))
    sigma = SpinConfig.from_text(g3, "+--")
    assert act_phi(SymElement(-1, g3.zero(), 1), sigma).to_text() == "-++"
    assert act_phi(SymElement(1, g3.element(1), 1), sigma).to_text() == "--+"

    g4 = GroupSpec((4,))
    # reflection sends f to -f: entries (s0, s3, s2, s1)
    refl = act_phi(SymElement(1, g4.zero(), -1), SpinConfig.from_text(g4, "+-++"))
    assert refl.to_text() == "+++-"


def test_phi_is_group_action():
    for spec in (GroupSpec((5,)), GroupSpec((2, 2)), GroupSpec((6,))):
        els = all_sym_elements(spec)
        assert len(els) == 4 * spec.order
        config = SpinConfig(spec, 0b0110 % (1 << spec.order) or 1)
        ident = SymElement.identity(spec)
        assert act_phi(ident, config).bits == config.bits
        for a, b in itertools.product(els, repeat=2):
            assert act_phi(a, act_phi(b, config)).bits == act_phi(a.compose(b), config).bits
        for a in els:
            assert act_phi(a.inverse(), act_phi(a, config)).bits == config.bits


def test_d_sym_examples():
    assert d_sym(SpinConfig.all_ones(GroupSpec((6,)))) == 2
    assert d_sym(SpinConfig.from_text(GroupSpec((7,)), catalog.SATURATED_7)) == 28
    assert d_sym(SpinConfig.from_text(GroupSpec((13,)), catalog.SINGER_13)) == 52
    assert d_sym(SpinConfig.from_text(GroupSpec((5,)), "+----")) == 10


def test_orbit_stabilizer_relation():
    rng = random.Random(3)
    for spec in (GroupSpec((8,)), GroupSpec((2, 4)), GroupSpec((9,))):
        for _ in range(40):
            config = SpinConfig(spec, rng.randrange(1 << spec.order))
            ob = orbit(config)
            stab = stabilizer(config)
            assert ob.size * len(stab) == 4 * spec.order
            assert ob.size == d_sym(config)
            assert ob.representative.bits == min(phi_orbit_bits(config))
            assert ob.representative.bits <= config.bits


def test_orbit_size_divides_group_order():
    for spec in (GroupSpec((6,)), GroupSpec((2, 2))):
        for config in all_configs(spec):
            assert (4 * spec.order) % d_sym(config) == 0


def test_dsym_bound_on_two_groups():
    for spec in (GroupSpec((2, 2)), GroupSpec((2, 2, 2))):
        for config in all_configs(spec):
            assert d_sym(config) <= 2 * spec.order


def test_phi_orbit_bits_matches_generic_path():
    # the rotation-based fast path must agree with applying every element
    for spec in (GroupSpec((6,)), GroupSpec((9,))):
        for _ in range(30):
            config = SpinConfig(spec, random.Random(spec.order).randrange(1 << spec.order))
            fast = phi_orbit_bits(config)
            slow = {act_phi(g, config).bits for g in all_sym_elements(spec)}
            assert fast == slow


def test_correlation_phi_invariant_exhaustive():
    for spec in (GroupSpec((12,)), GroupSpec((2, 5)), GroupSpec((2, 2, 3))):
        els = all_sym_elements(spec)
        for config in all_configs(spec):
            base = correlate_fast(config).values
            for g in els:
                assert correlate_fast(act_phi(g, config)).values == base


def test_psi_identity():
    g = GroupSpec((9,))
    config = SpinConfig.from_text(g, "+--+-++--")
    ident = Automorphism.from_unit(g, 1)
    assert act_psi_config(ident, config).bits == config.bits
    corr = correlate_fast(config)
    assert act_psi_corr(ident, corr).values == corr.values


def test_psi_examples_on_singer13():
    g = GroupSpec((13,))
    sigma = SpinConfig.from_text(g, catalog.SINGER_13)
    auts = {a.unit: a for a in automorphisms(g)}
    orbit_bits = phi_orbit_bits(sigma)
    assert act_psi_config(auts[3], sigma).bits in orbit_bits
    assert act_psi_config(auts[9], sigma).bits in orbit_bits
    image2 = act_psi_config(auts[2], sigma)
    assert image2.bits not in orbit_bits
    # the published representative of that second orbit is a translate of the image
    listed = SpinConfig.from_text(g, "++--+-+------")
    assert listed.bits in phi_orbit_bits(image2)


def test_equivariance_exhaustive():
    for spec in (GroupSpec((8,)), GroupSpec((10,)), GroupSpec((12,))):
        auts = automorphisms(spec)
        for config in all_configs(spec):
            corr = correlate_fast(config)
            for phi in auts:
                lhs = correlate_fast(act_psi_config(phi, config)).values
                rhs = act_psi_corr(phi, corr).values
                assert lhs == rhs


def test_equivariance_table_automorphism():
    g = GroupSpec((2, 2))
    swap = tuple(g.element(e.residues[1], e.residues[0]).index for e in g.elements())
    phi = Automorphism.from_table(g, swap)
    for config in all_configs(g):
        lhs = correlate_fast(act_psi_config(phi, config)).values
        rhs = act_psi_corr(phi, correlate_fast(config)).values
        assert lhs == rhs


def test_psi_phi_commutation():
    for spec in (GroupSpec((5,)), GroupSpec((6,))):
        auts = automorphisms(spec)
        els = all_sym_elements(spec)
        rng = random.Random(17)
        configs = [SpinConfig(spec, rng.randrange(1 << spec.order)) for _ in range(8)]
        for phi in auts:
            for g in els:
                moved = SymElement(g.s, phi.apply(g.t), g.r)
                for config in configs:
                    lhs = act_psi_config(phi, act_phi(g, config)).bits
                    rhs = act_phi(moved, act_psi_config(phi, config)).bits
                    assert lhs == rhs


def test_joint_orbit_examples():
    assert len(joint_orbit(SpinConfig.all_ones(GroupSpec((9,))))) == 1
    sigma = SpinConfig.from_text(GroupSpec((13,)), catalog.SINGER_13)
    assert len(joint_orbit(sigma)) == 2


def test_aut_images_of_correlation_n16():
    g = GroupSpec((16,))
    sigma = SpinConfig.from_text(g, catalog.TRIPLE_16)
    corr = correlate_fast(sigma)
    images = {act_psi_corr(a, corr).values for a in automorphisms(g)}
    assert len(images) == 4
