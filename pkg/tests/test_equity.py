import random

import pytest

from swo import (
    AlphabetMismatch,
    ChainCertificate,
    Comparison,
    InfiniteDifference,
    NestedStream,
    NotInCylinder,
    ReachConfig,
    WindowTooSmall,
    audit_order,
    compare_limit,
    compare_sea,
    interpolate_between,
    is_se,
    lex_value,
    parse_stream,
    render_stream,
    replay_violation,
    se_reachable,
    se_witness,
    tail_equal,
)
from swo.equity import (
    random_nested_se_pair,
    random_se_chain,
    random_se_pair,
    random_stream,
)

S = parse_stream


# --- one-step compression ----------------------------------------------------

def test_is_se_frozen_examples():
    assert is_se(S("4:0033|1"), S("4:0123|1"))
    x = S("4:310|2")
    assert not is_se(x, x)
    assert not is_se(S("4:03|0"), S("4:30|0"))


def test_is_se_needs_exactly_two_moved_coordinates():
    assert not is_se(S("4:0033|1"), S("4:0133|1"))      # one coordinate
    assert not is_se(S("8:000333|1"), S("8:011233|1"))  # three coordinates


def test_is_se_accepts_either_coordinate_orientation():
    # compressed pair may appear with the large value first
    assert is_se(S("4:3300|1"), S("4:2310|1"))


def test_is_se_demands_shared_alphabet():
    with pytest.raises(AlphabetMismatch):
        is_se(S("2:|0"), S("4:|0"))


def test_generated_se_pairs_satisfy_the_definition_and_order_strictly():
    rng = random.Random(1)
    for _ in range(300):
        x, y = random_se_pair(rng, 4)
        assert is_se(x, y)
        assert not is_se(y, x)
        assert tail_equal(x, y)
        assert compare_limit(x, y) == Comparison.LESS
        assert compare_sea(x, y) == Comparison.LESS


# --- the witness map -----------------------------------------------------------

def test_se_witness_frozen_examples():
    assert render_stream(se_witness(S("4:0033|1"))) == "4:0123|1"
    assert render_stream(se_witness(S("4:0033|0"))) == "4:0123|0"
    with pytest.raises(NotInCylinder):
        se_witness(S("4:0123|0"))


def test_se_witness_respects_the_cylinder_and_the_tail():
    rng = random.Random(2)
    for _ in range(200):
        suffix = random_stream(rng, 4)
        from swo.streams import with_coordinates

        x = with_coordinates(suffix, {0: 0, 1: 0, 2: 3, 3: 3})
        y = se_witness(x)
        assert tuple(y[n] for n in range(4)) == (0, 1, 2, 3)
        assert is_se(x, y)
        for n in range(4, 16):
            assert y[n] == x[n]


def test_se_witness_rejects_other_alphabets():
    with pytest.raises(NotInCylinder):
        se_witness(S("8:0033|1"))


# --- bounded chain search --------------------------------------------------------

def test_se_reachable_frozen_chain():
    chain = se_reachable(S("4:0303|0"), S("4:1212|0"), ReachConfig(2, 4))
    assert isinstance(chain, ChainCertificate)
    assert [render_stream(s) for s in chain.steps] == [
        "4:0303|0",
        "4:1203|0",
        "4:1212|0",
    ]
    assert chain.holds()


def test_se_reachable_reverse_is_out_of_reach():
    assert se_reachable(S("4:1212|0"), S("4:0303|0"), ReachConfig(4, 4)) is None


def test_se_reachable_single_step():
    x, y = S("4:0033|1"), S("4:0123|1")
    chain = se_reachable(x, y, ReachConfig(1, 4))
    assert chain is not None and len(chain.steps) == 2


def test_se_reachable_identity_is_the_trivial_chain():
    x = S("4:0303|0")
    chain = se_reachable(x, x, ReachConfig(1, 4))
    assert chain is not None and chain.steps == (x,)


def test_se_reachable_window_guard():
    with pytest.raises(WindowTooSmall):
        se_reachable(S("4:0303|0"), S("4:0312|0"), ReachConfig(2, 3))
    with pytest.raises(WindowTooSmall):
        se_reachable(S("4:|01"), S("4:|10"), ReachConfig(2, 4))


def test_se_chain_certificates_verify_stepwise():
    rng = random.Random(3)
    for _ in range(100):
        chain = random_se_chain(rng, 4)
        for a, b in zip(chain, chain[1:]):
            assert is_se(a, b)


# --- interpolation ----------------------------------------------------------------

def test_interpolant_on_binary_streams_stays_between():
    rng = random.Random(4)
    for _ in range(200):
        x = random_stream(rng, 2)
        from swo.streams import with_coordinates

        y = with_coordinates(
            x, {rng.randrange(6): rng.randrange(2) for _ in range(rng.randint(1, 3))}
        )
        z = interpolate_between(x, y)
        for n in range(12):
            lo, hi = min(x[n], y[n]), max(x[n], y[n])
            assert lo <= z[n] <= hi
        # untouched coordinates keep their value
        for n in range(12):
            if x[n] == y[n]:
                assert z[n] == x[n]


def test_interpolant_nested_frozen_example():
    t = S("2:|0")
    x = NestedStream((S("2:|0"),), t)
    y = NestedStream((S("2:1|0"),), t)
    z = interpolate_between(x, y)
    assert render_stream(z.value_at(0)) == "2:01|0"
    assert z.tail == t


def test_interpolant_identity():
    t = S("2:|0")
    x = NestedStream((S("2:|1"),), t)
    assert interpolate_between(x, x) == x


def test_interpolant_rejects_unequal_tails():
    a = NestedStream((), S("2:|0"))
    b = NestedStream((), S("2:|1"))
    with pytest.raises(InfiniteDifference):
        interpolate_between(a, b)


def test_interpolant_values_sit_between_in_lex_order():
    rng = random.Random(5)
    for _ in range(150):
        x, y = random_nested_se_pair(rng)
        z = interpolate_between(x, y)
        cut = max(len(x.exceptionals), len(y.exceptionals), len(z.exceptionals))
        for n in range(cut):
            vx, vy, vz = (s.value_at(n) for s in (x, y, z))
            lo, hi = sorted((lex_value(vx), lex_value(vy)))
            assert lo <= lex_value(vz) <= hi
            if vx == vy:
                assert vz == vx


# --- the audit harness --------------------------------------------------------------

def test_audit_sea_laws_run_clean():
    report = audit_order("sea", samples=120, seed=42)
    assert report.passed
    assert report.checks_run["totality"] == 5 * 120
    assert report.checks_run["transitivity"] == 5 * 120
    assert report.checks_run["anonymity"] == 120
    assert report.checks_run["se_strictness"] == 120


def test_audit_nested_laws_run_clean():
    report = audit_order("sea-nested", samples=80, seed=42)
    assert report.passed


def test_audit_weak_prelin_runs_clean():
    report = audit_order("sea", mode="weak_prelin", samples=60, seed=7)
    assert report.passed
    assert report.checks_run["chain_strictness"] > 0


def test_audit_is_deterministic():
    a = audit_order("prefix:3", samples=50, seed=11)
    b = audit_order("prefix:3", samples=50, seed=11)
    assert a.to_json_dict() == b.to_json_dict()


def test_audit_flags_prefix_orders_for_anonymity():
    report = audit_order("prefix:3", samples=200, seed=42)
    violations = report.violations_for("anonymity")
    assert violations
    for v in violations[:10]:
        assert replay_violation(v, "prefix:3")


def test_audit_rejects_unknown_modes():
    with pytest.raises(ValueError):
        audit_order("sea", mode="nonsense", samples=1)


def test_replay_rejects_repaired_witnesses():
    report = audit_order("prefix:3", samples=200, seed=42)
    v = report.violations_for("anonymity")[0]
    # the same witness replayed against the full order no longer violates
    assert not replay_violation(v, "sea")
