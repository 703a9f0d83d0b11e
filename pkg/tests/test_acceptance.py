"""Acceptance gate: eight exact, seeded property suites.

Every check is discrete and zero-tolerance.  Each suite prints one
machine-readable [PASS]/[FAIL] line (shown in the PASSES section of the
pytest report) and stays well under a minute.
"""

import random
from fractions import Fraction

from swo import (
    ChainCertificate,
    Comparison,
    ReachConfig,
    ResidueSelector,
    Schedule,
    audit_order,
    compare_limit,
    compare_prefix,
    compare_sea,
    compatible,
    condition_extends,
    dedekind_lift,
    difference_set,
    embed_all,
    exhaustive_common_extension,
    insert_element,
    interpolate_between,
    is_se,
    lex_value,
    linearize,
    parse_stream,
    replay_cycle,
    replay_violation,
    restrict_condition,
    se_reachable,
    se_witness,
    sign_profile,
    tail_equal,
    ultra_compare,
    ultralimit_schedule,
    validate_condition,
)
from swo.equity import random_stream
from swo.prelinearize import Condition
from swo.streams import NestedStream, UtilityStream, with_coordinates

from helpers_prelin import random_base, random_condition

S = parse_stream


def _verdict_line(ok: bool, number: int, text: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
    assert ok, f"criterion {number}: {text}"


def _prefix_verdicts(x, y, upto: int) -> list[int]:
    """Independent sorted-prefix verdicts for n = 1..upto.

    Keeps the count difference per symbol incrementally; the verdict at each
    n is the sign at the smallest symbol whose multiplicities differ, with
    more copies of that smaller symbol meaning the smaller sorted word.
    """
    k = x.alphabet.size
    diff = [0] * k
    out = []
    for n in range(upto):
        diff[x.value_at(n)] += 1
        diff[y.value_at(n)] -= 1
        verdict = 0
        for s in range(k):
            if diff[s]:
                verdict = -1 if diff[s] > 0 else 1
                break
        out.append(verdict)
    return out


def test_criterion_1_sea_law_suite():
    failures = []
    for order, seeds in (("sea", ((4, 42), (8, 43))), ("sea-nested", ((2, 44),))):
        for alphabet, seed in seeds:
            report = audit_order(order, samples=1000, seed=seed, alphabet=alphabet)
            if not report.passed:
                failures.append((order, alphabet, len(report.violations)))
            counts = report.checks_run
            if counts["totality"] != 5000 or counts["transitivity"] != 5000:
                failures.append((order, alphabet, "triple count"))
            if counts["anonymity"] != 1000 or counts["se_strictness"] != 1000:
                failures.append((order, alphabet, "pair count"))
    _verdict_line(
        not failures,
        1,
        "sea and sea-nested law audits: 5000 triples, 1000 permutation pairs, "
        f"1000 compression pairs per run, zero violations {failures or ''}".rstrip(),
    )


def test_criterion_2_stabilization():
    rng = random.Random(202)
    mismatches = 0
    for _ in range(500):
        x = random_stream(rng, 4)
        y = with_coordinates(
            x,
            {rng.randrange(8): rng.randrange(4) for _ in range(rng.randint(1, 3))},
        )
        want = int(compare_limit(x, y))
        diffs = difference_set(x, y)
        n0 = (max(diffs) + 1 if diffs else 0) + 1
        verdicts = _prefix_verdicts(x, y, n0 + 200)
        if any(v != want for v in verdicts[n0 - 1 :]):
            mismatches += 1
            continue
        # the library's own prefix comparison agrees with the oracle
        for n in rng.sample(range(n0, n0 + 201), 5):
            if int(compare_prefix(x, y, n)) != want:
                mismatches += 1
                break
    _verdict_line(
        mismatches == 0,
        2,
        "500 tail-equivalent pairs stabilize to compare_limit on [N0, N0+200] "
        f"({mismatches} mismatches)",
    )


def test_criterion_3_sign_profile_soundness():
    rng = random.Random(303)
    bad = 0
    for _ in range(500):
        x, y = random_stream(rng, 4), random_stream(rng, 4)
        profile = sign_profile(x, y, 500)
        oracle = _prefix_verdicts(x, y, 500)
        for n in range(profile.preperiod_length + 1, 501):
            if int(profile.verdict_at(n)) != oracle[n - 1]:
                bad += 1
                break
        else:
            for n in rng.sample(range(1, 501), 5):
                if int(compare_prefix(x, y, n)) != oracle[n - 1]:
                    bad += 1
                    break
    frozen = sign_profile(S("2:|01"), S("2:|10"), 40)
    exact = (
        frozen.preperiod_length == 0
        and frozen.period_length == 2
        and [s.label for s in frozen.signs] == ["LESS", "EQUIV"]
        and ultra_compare(S("2:|01"), S("2:|10"), ResidueSelector(2, 1), 40)
        == Comparison.LESS
        and ultra_compare(S("2:|01"), S("2:|10"), ResidueSelector(2, 0), 40)
        == Comparison.EQUIVALENT
    )
    _verdict_line(
        bad == 0 and exact,
        3,
        f"500 sign profiles match direct verdicts up to n=500 ({bad} bad), "
        "frozen profile and selector verdicts exact",
    )


def test_criterion_4_compatibility_oracle():
    rng = random.Random(404)
    disagreements = 0
    verdicts = {True: 0, False: 0}
    pairs = 0
    for _ in range(500):
        base = random_base(rng, max_elements=7)
        for _ in range(4):
            p = random_condition(rng, base)
            q = random_condition(rng, base)
            verdict = compatible(p, q, base)
            witness = exhaustive_common_extension(p, q, base)
            pairs += 1
            verdicts[verdict.compatible] += 1
            if verdict.compatible != (witness is not None):
                disagreements += 1
                continue
            if witness is not None:
                if not (
                    validate_condition(witness, base)
                    and condition_extends(witness, p)
                    and condition_extends(witness, q)
                ):
                    disagreements += 1
            elif not replay_cycle(verdict.cycle, p, q, base):
                disagreements += 1
    _verdict_line(
        disagreements == 0 and pairs == 2000 and verdicts[True] and verdicts[False],
        4,
        f"2000 condition pairs: cycle test vs exhaustive enumeration agree "
        f"({verdicts[True]} compatible, {verdicts[False]} incompatible, "
        f"{disagreements} disagreements)",
    )


def test_criterion_5_extension_suite():
    rng = random.Random(505)
    bad = 0
    for _ in range(1000):
        base = random_base(rng, max_elements=7)
        start = random_condition(rng, base)
        total = linearize(base, start)
        if not (
            validate_condition(total, base)
            and total.domain == frozenset(base.elements)
            and condition_extends(total, start)
            and restrict_condition(total, sorted(start.domain)).blocks == start.blocks
        ):
            bad += 1
    chains_bad = 0
    for _ in range(200):
        base = random_base(rng, max_elements=7)
        labels = sorted(base.elements)
        rng.shuffle(labels)
        condition = Condition([frozenset([labels[0]])])
        chain = [condition]
        for label in labels[1 : rng.randint(2, min(5, len(labels)))]:
            condition = insert_element(condition, base, label, tie_break=labels)
            chain.append(condition)
        union = chain[-1]  # increasing chain: the union is the last entry
        if not validate_condition(union, base):
            chains_bad += 1
        if any(not condition_extends(union, earlier) for earlier in chain):
            chains_bad += 1
    schedule_bad = 0
    for _ in range(150):
        base = random_base(rng, max_elements=6)
        entries = [random_condition(rng, base) for _ in range(rng.randint(1, 4))]
        schedule = Schedule(entries)
        length = len(entries)
        for m in (length, 2 * length):
            for r in range(m):
                got = ultralimit_schedule(schedule, ResidueSelector(m, r), base)
                if not validate_condition(got, base):
                    schedule_bad += 1
    _verdict_line(
        bad == 0 and chains_bad == 0 and schedule_bad == 0,
        5,
        "1000 linearizations extend their starts, chain unions validate, "
        "ultralimits validate for every admissible selector "
        f"({bad}/{chains_bad}/{schedule_bad} failures)",
    )


def test_criterion_6_embedding():
    rng = random.Random(606)
    values = {}
    while len(values) < 300:
        label = f"r{len(values)}"
        candidate = Fraction(rng.randint(0, 10**9), rng.randint(1, 10**9))
        if candidate not in set(values.values()):
            values[label] = candidate
    labels = list(values)

    def comparator(a, b):
        if values[a] == values[b]:
            return Comparison.EQUIVALENT
        return Comparison.LESS if values[a] < values[b] else Comparison.GREATER

    state = embed_all(labels, comparator)
    broken_pairs = 0
    for i, a in enumerate(labels):
        va = state.code(a).value
        for b in labels[i + 1 :]:
            vb = state.code(b).value
            if (values[a] < values[b]) != (va < vb):
                broken_pairs += 1
    checked = len(labels) * (len(labels) - 1) // 2

    lift_bad = 0
    depth = max(len(state.code(l).bits()) for l in labels) + 2
    for label in labels:
        cut = lambda other: comparator(other, label) != Comparison.GREATER
        if dedekind_lift(state, cut, depth) != state.code(label).bits().ljust(depth, "0"):
            lift_bad += 1

    shuffled = list(labels)
    rng.shuffle(shuffled)
    other = embed_all(shuffled, comparator)
    same_order = sorted(labels, key=lambda l: state.code(l).value) == sorted(
        labels, key=lambda l: other.code(l).value
    )
    _verdict_line(
        broken_pairs == 0 and checked == 44850 and lift_bad == 0 and same_order,
        6,
        f"300-element embedding: {checked} pairs order-preserved "
        f"({broken_pairs} broken), completion lift reproduces all codes "
        f"({lift_bad} bad), insertion orders isomorphic: {same_order}",
    )


def test_criterion_7_se_machinery():
    rng = random.Random(707)
    witness_bad = 0
    for _ in range(200):
        carrier = random_stream(rng, 4)
        x = with_coordinates(carrier, {0: 0, 1: 0, 2: 3, 3: 3})
        y = se_witness(x)
        agree_span = len(x.preperiod) + len(x.period) + len(y.preperiod) + len(y.period)
        if (
            tuple(y.value_at(n) for n in range(4)) != (0, 1, 2, 3)
            or not is_se(x, y)
            or any(y.value_at(n) != x.value_at(n) for n in range(4, agree_span + 4))
        ):
            witness_bad += 1

    chain = se_reachable(S("4:0303|0"), S("4:1212|0"), ReachConfig(2, 4))
    chain_ok = (
        isinstance(chain, ChainCertificate)
        and len(chain.steps) == 3
        and chain.holds()
        and se_reachable(S("4:1212|0"), S("4:0303|0"), ReachConfig(4, 4)) is None
    )

    interp_bad = 0
    tail = S("2:|0")
    for _ in range(200):
        coords = sorted(rng.sample(range(6), rng.randint(1, 3)))
        left, right = {}, {}
        for c in coords:
            va = vb = None
            while va == vb:
                a = UtilityStream.of(
                    2, tuple(rng.randrange(2) for _ in range(rng.randint(1, 4))), (0,)
                )
                b = UtilityStream.of(
                    2, tuple(rng.randrange(2) for _ in range(rng.randint(1, 4))), (0,)
                )
                va, vb = lex_value(a), lex_value(b)
            left[c], right[c] = a, b
        cut = max(coords) + 1
        x = NestedStream(tuple(left.get(n, tail) for n in range(cut)), tail)
        y = NestedStream(tuple(right.get(n, tail) for n in range(cut)), tail)
        z = interpolate_between(x, y)
        span = max(len(x.exceptionals), len(y.exceptionals), len(z.exceptionals))
        for n in range(span):
            vx, vy, vz = (s.value_at(n) for s in (x, y, z))
            lo, hi = sorted((lex_value(vx), lex_value(vy)))
            if not lo <= lex_value(vz) <= hi:
                interp_bad += 1
                break
            if vx == vy and vz != vx:
                interp_bad += 1
                break
            if vx != vy and vz.period != (0,):
                interp_bad += 1  # interpolant must have finite support there
                break
    _verdict_line(
        witness_bad == 0 and chain_ok and interp_bad == 0,
        7,
        f"200 cylinder witnesses exact ({witness_bad} bad), frozen chain and "
        f"reverse bounds hold: {chain_ok}, 200 interpolants lie between with "
        f"finite support ({interp_bad} bad)",
    )


def test_criterion_8_negative_control():
    report = audit_order("prefix:3", samples=1000, seed=42)
    violations = report.violations_for("anonymity")
    replayable = bool(violations) and all(
        replay_violation(v, "prefix:3") for v in violations[:25]
    )
    _verdict_line(
        replayable,
        8,
        f"prefix-3 audit reports {len(violations)} finite-anonymity violations, "
        "witnesses replay",
    )
