"""Command-line surface: exact degeneracy queries, surveys, and verification.

Machine-readable results (JSON or CSV) go to stdout; diagnostics go to
stderr.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .blocks import (
    SignedMultiset,
    blocks_of,
    delta_from_profile,
    laplacian,
    laplacian_multiset,
    reconstruct_from_delta,
    verify_four_block_rigidity,
)
from .constructions import (
    config_from_subset,
    euler_phi,
    legendre_config,
    product_config,
    reduced_difference_sets,
    singer_difference_set,
)
from .correlation import Interaction, SpinConfig, correlate_fast, fourier_power_check
from .degeneracy import (
    EnumerationBoundError,
    d_stab,
    fiber,
    fiber_counts,
    config_fingerprint,
    fingerprint_of_corr,
    generic_j_probe,
    j_degeneracy,
    msd,
    msd_csv,
    survey,
    survey_csv,
)
from .groups import GroupFormatError, GroupSpec, automorphisms, parse_group_spec, quotient_map
from .substitution import flatten, reverse_word, verify_reversal_identity, word
from .symmetry import (
    act_psi_config,
    act_psi_corr,
    d_sym,
    joint_orbit,
    orbit,
    phi_orbit_bits,
)


class UsageError(ValueError):
    pass


def _parse_config(group_text: str, config_text: str) -> SpinConfig:
    group = parse_group_spec(group_text)
    if len(config_text) != group.order:
        raise UsageError(
            f"config string has length {len(config_text)} but |{group}| = {group.order}"
        )
    return SpinConfig.from_text(group, config_text)


def _emit(args, text: str) -> None:
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_correlate(args) -> int:
    config = _parse_config(args.group, args.config)
    print(json.dumps(correlate_fast(config).to_json_dict()))
    return 0


def _cmd_dsym(args) -> int:
    config = _parse_config(args.group, args.config)
    print(d_sym(config))
    return 0


def _cmd_dstab(args) -> int:
    config = _parse_config(args.group, args.config)
    print(d_stab(config, bound=args.bound))
    return 0


def _cmd_fiber(args) -> int:
    config = _parse_config(args.group, args.config)
    members = fiber(config, bound=args.bound)
    print(json.dumps([m.to_text() for m in members]))
    return 0


def _cmd_jdeg(args) -> int:
    config = _parse_config(args.group, args.config)
    if args.j is None and args.probe is None:
        raise UsageError("jdeg needs either --j or --probe")
    if args.j is not None:
        parts = [Fraction(p) for p in args.j.split(",")]
        if len(parts) != config.group.order:
            raise UsageError("interaction must list one value per group element")
        values = tuple(int(v) if v.denominator == 1 else v for v in parts)
        print(j_degeneracy(config, Interaction(config.group, values), bound=args.bound))
        return 0
    result = generic_j_probe(config, args.probe, args.seed, bound=args.bound)
    print(
        json.dumps(
            {"trials": result.trials, "matches": result.matches, "fraction": result.fraction}
        )
    )
    return 0


def _cmd_survey(args) -> int:
    group = parse_group_spec(args.group)
    rows = survey(group, Fraction(args.min_ratio), bound=args.bound, partitions=args.threads)
    _emit(args, survey_csv(group, rows))
    return 0


def _cmd_msd(args) -> int:
    rows = [
        msd(GroupSpec((n,)), bound=args.bound, partitions=args.threads)
        for n in range(args.nmin, args.nmax + 1)
    ]
    _emit(args, msd_csv(rows))
    return 0


def _cmd_legendre(args) -> int:
    sign = 1 if args.sign in ("+", "+1", "1") else -1
    config = legendre_config(args.n, sign)
    print(json.dumps({"group": config.group.to_text(), "config": config.to_text()}))
    return 0


def _cmd_singer(args) -> int:
    cubic = None
    if args.cubic:
        cubic = tuple(int(c) for c in args.cubic.split(","))
        if len(cubic) != 3:
            raise UsageError("--cubic takes three comma-separated coefficient values c2,c1,c0")
    ds = singer_difference_set(args.p, args.n, cubic)
    print(json.dumps({"modulus": ds.modulus, "q": ds.q, "members": list(ds.members)}))
    return 0


def _cmd_pds_reduced(args) -> int:
    sets = reduced_difference_sets(args.q)
    print(json.dumps([list(ds.members) for ds in sets]))
    return 0


def _cmd_substitute(args) -> int:
    w = word(args.word, args.U, args.V)
    report = verify_reversal_identity(w)
    sigma = flatten(w)
    tau = flatten(reverse_word(w))
    print(
        json.dumps(
            {
                "group": sigma.group.to_text(),
                "config": sigma.to_text(),
                "reversed_config": tau.to_text(),
                "correlations_equal": report.equal,
                "same_phi_orbit": report.same_phi_orbit,
            }
        )
    )
    return 0


def _cmd_blocks(args) -> int:
    config = _parse_config(args.group, args.config)
    profile = blocks_of(config)
    delta = laplacian_multiset(correlate_fast(config))
    print(
        json.dumps(
            {
                "profile": list(profile.lengths),
                "multiset": [list(p) for p in profile.multiset()],
                "laplacian": delta.to_json_list(),
            }
        )
    )
    return 0


def _cmd_reconstruct(args) -> int:
    group = parse_group_spec(args.group)
    if not group.is_cyclic:
        raise UsageError("reconstruction is defined on cyclic groups")
    entries = tuple((int(t), int(c)) for t, c in json.loads(args.delta))
    delta = SignedMultiset(group.order, entries)
    profiles = reconstruct_from_delta(delta)
    print(json.dumps([list(p.lengths) for p in profiles]))
    return 0


def _cmd_four_block_verify(args) -> int:
    report = verify_four_block_rigidity(args.n, bound=args.bound)
    print(
        json.dumps(
            {"n": report.n, "checked": report.checked, "rigid": report.rigid,
             "violations": list(report.violations)}
        )
    )
    return 0 if report.rigid else 1


# ---------------------------------------------------------------------------
# verification of the published reference values
# ---------------------------------------------------------------------------

# Expected values for the verification command; tests corrupt entries to
# prove the command actually fails on mismatches.
EXPECTED = {
    "n7_off_corr": -1,
    "n7_d_sym": 28,
    "n7_d_stab": 28,
    "n5_legendre_corr": (5, 1, -3, -3, 1),
    "n13_off_corr": 1,
    "n13_d_sym": 52,
    "n13_d_stab": 104,
    "n13_block_multiset": ((1, 3), (2, 1), (3, 1), (5, 1)),
    "n13_joint_orbits": 2,
    "n13_laplacian_at_0": -6,
    "n12_d_stab": 96,
    "n14_d_stab": 112,
    "n16_d_stab": 192,
    "n16_corr_images": 4,
    "n21_corr_times3": 13,
    "n21_corr_other": -7,
    "n21_block_multiset": ((1, 7), (2, 7)),
    "reduced_counts": {2: 2, 3: 4, 4: 2},
    "singer_q2_members": (0, 1, 3),
    "z4_j1_allones_jdeg": 2,
}


def _check_saturated_7():
    config = legendre_config(7, 1)
    corr = correlate_fast(config)
    ok = all(v == EXPECTED["n7_off_corr"] for v in corr.values[1:])
    ok &= d_sym(config) == EXPECTED["n7_d_sym"]
    ok &= d_stab(config) == EXPECTED["n7_d_stab"]
    listed = SpinConfig.from_text(GroupSpec((7,)), catalog.SATURATED_7)
    ok &= config.bits in phi_orbit_bits(listed)
    mn, mi = fourier_power_check(config)
    ok &= mn >= -1e-9 and mi <= 1e-9
    return ok, f"corr={corr.values} d_sym={d_sym(config)} d_stab={d_stab(config)}"


def _check_legendre_5():
    config = legendre_config(5, 1)
    corr = correlate_fast(config)
    return corr.values == EXPECTED["n5_legendre_corr"], f"corr={corr.values}"


def _check_singer_13():
    group = GroupSpec((13,))
    sigma = SpinConfig.from_text(group, catalog.SINGER_13)
    corr = correlate_fast(sigma)
    ok = all(v == EXPECTED["n13_off_corr"] for v in corr.values[1:])
    ok &= d_sym(sigma) == EXPECTED["n13_d_sym"]
    stab = d_stab(sigma)
    ok &= stab == EXPECTED["n13_d_stab"]
    ok &= blocks_of(sigma).multiset() == EXPECTED["n13_block_multiset"]
    ok &= laplacian(corr)[0] == EXPECTED["n13_laplacian_at_0"]
    auts = {a.unit: a for a in automorphisms(group)}
    orbit_bits = phi_orbit_bits(sigma)
    ok &= act_psi_config(auts[3], sigma).bits in orbit_bits
    ok &= act_psi_config(auts[9], sigma).bits in orbit_bits
    ok &= act_psi_config(auts[2], sigma).bits not in orbit_bits
    ok &= len(joint_orbit(sigma)) == EXPECTED["n13_joint_orbits"]
    bound = 2 * 13 * euler_phi(13) // 3
    ok &= stab >= bound and stab == bound
    return ok, f"d_sym={d_sym(sigma)} d_stab={stab} bound={bound}"


def _check_singer_q2():
    ds = singer_difference_set(2, 1)
    ok = ds.members == EXPECTED["singer_q2_members"]
    config = config_from_subset(GroupSpec((7,)), ds.members)
    corr = correlate_fast(config)
    ok &= all(v == -1 for v in corr.values[1:])
    legendre = legendre_config(7, 1)
    ok &= fingerprint_of_corr(corr) == config_fingerprint(legendre)
    return ok, f"members={ds.members}"


def _check_two_valued_correlations():
    details = []
    ok = True
    for p, n in ((2, 1), (3, 1), (2, 2)):
        ds = singer_difference_set(p, n)
        config = config_from_subset(GroupSpec((ds.modulus,)), ds.members)
        corr = correlate_fast(config)
        q = ds.q
        expected = q * q - 3 * q + 1
        ok &= all(v == expected for v in corr.values[1:])
        details.append(f"q={q}: off-peak {set(corr.values[1:])}")
    return ok, "; ".join(details)


def _check_survey_12():
    ok = True
    for n in range(2, 12):
        rows = survey(GroupSpec((n,)), Fraction(10001, 10000))
        ok &= not rows
    rows = survey(GroupSpec((12,)), 2)
    ok &= any(r.d_stab == EXPECTED["n12_d_stab"] and r.d_stab == 2 * r.d_sym for r in rows)
    return ok, f"N=12 rows at ratio 2: {len(rows)}"


def _check_pair_14():
    group = GroupSpec((14,))
    sigma = SpinConfig.from_text(group, catalog.PAIR_14[0])
    tau = SpinConfig.from_text(group, catalog.PAIR_14[1])
    ok = correlate_fast(sigma).values == correlate_fast(tau).values
    ok &= d_stab(sigma) == EXPECTED["n14_d_stab"]
    reachable = joint_orbit(sigma)
    tau_rep = orbit(tau).representative.bits
    ok &= all(ob.representative.bits != tau_rep for ob in reachable)
    return ok, f"d_stab={d_stab(sigma)} joint orbits of sigma: {len(reachable)}"


def _check_triple_16():
    group = GroupSpec((16,))
    sigma = SpinConfig.from_text(group, catalog.TRIPLE_16)
    ok = d_stab(sigma) == EXPECTED["n16_d_stab"]
    corr = correlate_fast(sigma)
    images = {act_psi_corr(a, corr).values for a in automorphisms(group)}
    ok &= len(images) == EXPECTED["n16_corr_images"]
    return ok, f"d_stab={d_stab(sigma)} corr images={len(images)}"


def _check_word_21():
    w = word(*catalog.WORD_21)
    sigma = flatten(w)
    corr = correlate_fast(sigma)
    ok = corr.values[0] == 21
    for f in range(1, 21):
        expected = EXPECTED["n21_corr_times3"] if f % 3 == 0 else EXPECTED["n21_corr_other"]
        ok &= corr.values[f] == expected
    report = verify_reversal_identity(w)
    ok &= report.equal and not report.same_phi_orbit
    tau = flatten(reverse_word(w))
    auts = {a.unit: a for a in automorphisms(sigma.group)}
    psi10 = act_psi_config(auts[10], sigma)
    translates = {
        ((psi10.bits >> t) | (psi10.bits << (21 - t))) & ((1 << 21) - 1) for t in range(21)
    }
    ok &= tau.bits in translates
    ok &= blocks_of(sigma).multiset() == EXPECTED["n21_block_multiset"]
    ok &= blocks_of(tau).multiset() == EXPECTED["n21_block_multiset"]
    return ok, f"corr ok; reversal outside orbit: {not report.same_phi_orbit}"


def _check_reduced_counts():
    details = []
    ok = True
    for q, expected in EXPECTED["reduced_counts"].items():
        n_deg = {2: 1, 3: 1, 4: 2}[q]
        sets = reduced_difference_sets(q)
        n_mod = q * q + q + 1
        predicted = euler_phi(n_mod) // (3 * n_deg)
        ok &= len(sets) == expected == predicted
        details.append(f"q={q}: {len(sets)}")
    return ok, "; ".join(details)


def _check_convexity_gap_z4():
    from .correlation import CorrelationVector

    group = GroupSpec((4,))
    ones = correlate_fast(SpinConfig.from_text(group, "++++"))
    alt = correlate_fast(SpinConfig.from_text(group, "+-+-"))
    ok = ones.values == (4, 4, 4, 4) and alt.values == (4, -4, 4, -4)
    counts = fiber_counts(group)
    midpoint = CorrelationVector(group, (4, 0, 4, 0))
    ok &= fingerprint_of_corr(midpoint) not in counts
    return ok, "midpoint of the two correlations is not attained"


def _check_nn_example_z4():
    group = GroupSpec((4,))
    config = SpinConfig.all_ones(group)
    j = Interaction.delta(group, 1)
    return (
        j_degeneracy(config, j) == EXPECTED["z4_j1_allones_jdeg"],
        f"jdeg={j_degeneracy(config, j)}",
    )


def _check_singer_13_example_classes():
    group = GroupSpec((13,))
    sigma = SpinConfig.from_text(group, catalog.SINGER_13)
    delta = laplacian_multiset(correlate_fast(sigma))
    profiles = reconstruct_from_delta(delta)
    multisets = {p.multiset() for p in profiles}
    need = {EXPECTED["n13_block_multiset"], ((1, 3), (2, 2), (6, 1))}
    return need <= multisets and len(profiles) >= 2, f"{len(profiles)} classes"


def _check_four_block():
    ok = True
    for n in (7, 13):
        report = verify_four_block_rigidity(n)
        ok &= report.rigid
    return ok, "rigid for N=7, 13"


VERIFY_CHECKS = [
    ("saturated-orbit-N7", _check_saturated_7),
    ("legendre-N5", _check_legendre_5),
    ("singer-config-N13", _check_singer_13),
    ("singer-set-q2", _check_singer_q2),
    ("two-valued-correlations", _check_two_valued_correlations),
    ("survey-threshold-N12", _check_survey_12),
    ("matched-pair-N14", _check_pair_14),
    ("triple-fiber-N16", _check_triple_16),
    ("word-reversal-N21", _check_word_21),
    ("reduced-set-counts", _check_reduced_counts),
    ("convexity-gap-Z4", _check_convexity_gap_z4),
    ("nearest-neighbour-Z4", _check_nn_example_z4),
    ("laplacian-classes-N13", _check_singer_13_example_classes),
    ("four-block-rigidity", _check_four_block),
]


def _cmd_verify_paper(args) -> int:
    failures = 0
    for name, check in VERIFY_CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failed verification, not a usage error
            ok, detail = False, f"error: {exc}"
        status = "PASS" if ok else "FAIL"
        if not ok:
            failures += 1
        print(f"{status} {name}: {detail}")
    print(f"{len(VERIFY_CHECKS) - failures}/{len(VERIFY_CHECKS)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingdeg",
        description="Exact degeneracies of translation-invariant Ising models on finite abelian groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    def with_config(p):
        p.add_argument("--group", required=True, help="group spec, e.g. Z7 or Z2xZ4")
        p.add_argument("--config", required=True, help="configuration as a +/- string")
        return p

    def with_bound(p):
        p.add_argument("--bound", type=int, default=None, help="enumeration bound on |F|")
        return p

    with_config(add("correlate", _cmd_correlate, help="correlation vector as JSON"))
    with_config(add("dsym", _cmd_dsym, help="orbit size under flip/translation/reflection"))
    with_bound(with_config(add("dstab", _cmd_dstab, help="correlation fiber size")))
    with_bound(with_config(add("fiber", _cmd_fiber, help="all configurations in the fiber")))

    p = with_bound(with_config(add("jdeg", _cmd_jdeg, help="degeneracy under an interaction")))
    p.add_argument("--j", help="comma-separated exact couplings, one per element")
    p.add_argument("--probe", type=int, help="number of random integer interactions")
    p.add_argument("--seed", type=int, default=0, help="seed for --probe sampling")

    p = add("survey", _cmd_survey, help="orbit survey as CSV")
    p.add_argument("--group", required=True)
    p.add_argument("--min-ratio", default="1", help="keep orbits with d_stab/d_sym >= this")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = add("msd", _cmd_msd, help="mean stable degeneracy rows as CSV")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--out")

    p = add("legendre", _cmd_legendre, help="quadratic-residue configuration")
    p.add_argument("--n", type=int, required=True, help="odd prime length")
    p.add_argument("--sign", default="+", help="sign stored at index 0")

    p = add("singer", _cmd_singer, help="perfect difference set from PG(2, q)")
    p.add_argument("--p", type=int, required=True, help="field characteristic")
    p.add_argument("--n", type=int, default=1, help="field degree, q = p^n")
    p.add_argument("--cubic", help="coefficient values c2,c1,c0 of the defining cubic")

    p = add("pds-reduced", _cmd_pds_reduced, help="all reduced perfect difference sets")
    p.add_argument("--q", type=int, required=True)

    p = add("substitute", _cmd_substitute, help="flatten a two-letter word and test reversal")
    p.add_argument("--word", required=True, help="letter sequence over U and V")
    p.add_argument("--U", required=True, help="sign string for U")
    p.add_argument("--V", required=True, help="sign string for V")

    with_config(add("blocks", _cmd_blocks, help="run-length profile and correlation Laplacian"))

    p = add("reconstruct", _cmd_reconstruct, help="block profiles matching a Laplacian multiset")
    p.add_argument("--group", required=True)
    p.add_argument("--delta", required=True, help="JSON [[t, c], ...] with t=N carrying -2k")

    p = add("four-block-verify", _cmd_four_block_verify, help="rigidity check for <=4 blocks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)

    add("verify-paper", _cmd_verify_paper, help="re-derive the published reference values")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GroupFormatError, UsageError, EnumerationBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
