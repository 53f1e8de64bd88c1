import random

import pytest

from pon_rtt_sim.model import OnuProfile
from pon_rtt_sim.scheduler import (
    BASELINE,
    COMPLEMENT,
    IDEAL,
    SchedulerPolicy,
    SchedulingOriginError,
    default_origin,
    schedule_cycle,
)
from pon_rtt_sim.stochastic import ComplementModel


def profiles_from(rtt_estimates, rtt_trues):
    return [
        OnuProfile(i, est, true, est)
        for i, (est, true) in enumerate(zip(rtt_estimates, rtt_trues))
    ]


def test_ideal_two_onus_hand_trace():
    profs = profiles_from((100, 200), (100, 200))
    sched = schedule_cycle(SchedulerPolicy(IDEAL), profs, [50, 50], [0, 0], 0, 200)
    assert [e.believed_open for e in sched.entries] == [200, 250]
    assert [e.grant_send for e in sched.entries] == [100, 50]
    assert [e.believed_close for e in sched.entries] == [250, 300]


def test_baseline_equals_ideal_when_estimates_exact():
    profs = profiles_from((100, 200), (100, 200))
    ideal = schedule_cycle(SchedulerPolicy(IDEAL), profs, [50, 50], [0, 0], 0, 200)
    base = schedule_cycle(SchedulerPolicy(BASELINE), profs, [50, 50], [0, 0], 0, 200)
    assert ideal == base


def test_complement_constant_pad_hand_trace():
    # independent recomputation: open0 = 210 + 10 = 220, close0 = 270,
    # open1 = 270 + 10 = 280, sends = open - estimate
    profs = profiles_from((100, 200), (100, 200))
    policy = SchedulerPolicy(COMPLEMENT, ComplementModel.constant(10))
    sched = schedule_cycle(policy, profs, [50, 50], [10, 10], 0, 210)
    assert [e.believed_open for e in sched.entries] == [220, 280]
    assert [e.grant_send for e in sched.entries] == [120, 80]
    assert [e.believed_close for e in sched.entries] == [270, 330]


def test_empty_and_misaligned_inputs_rejected():
    with pytest.raises(ValueError):
        schedule_cycle(SchedulerPolicy(BASELINE), [], [], [], 0, 0)
    profs = profiles_from((100,), (100,))
    with pytest.raises(ValueError):
        schedule_cycle(SchedulerPolicy(BASELINE), profs, [50, 50], [0], 0, 100)


def test_negative_grant_send_names_onu():
    profs = profiles_from((100, 500), (100, 500))
    with pytest.raises(SchedulingOriginError) as err:
        schedule_cycle(SchedulerPolicy(BASELINE), profs, [50, 50], [0, 0], 0, 100)
    assert err.value.onu == 1
    assert "ONU 1" in str(err.value)


def test_default_origin_always_suffices():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 16)
        profs = [
            OnuProfile(i, rng.randint(1, 10**6), rng.randint(1, 10**6), 0)
            for i in range(n)
        ]
        policy = SchedulerPolicy(COMPLEMENT, ComplementModel.uniform(5000))
        comps = [rng.randint(0, 5000) for _ in range(n)]
        lengths = [rng.randint(1, 20000) for _ in range(n)]
        origin = default_origin(policy, profs)
        sched = schedule_cycle(policy, profs, lengths, comps, 0, origin)
        assert all(e.grant_send >= 0 for e in sched.entries)


def random_case(rng):
    n = rng.randint(1, 12)
    profs = [
        OnuProfile(i, rng.randint(1000, 10**5), rng.randint(1000, 10**5), 0)
        for i in range(n)
    ]
    lengths = [rng.randint(1, 15000) for _ in range(n)]
    comps = [rng.randint(0, 3000) for _ in range(n)]
    policy = SchedulerPolicy(COMPLEMENT, ComplementModel.uniform(3000))
    return policy, profs, lengths, comps


def test_chaining_exactness_and_length_conservation():
    rng = random.Random(99)
    for _ in range(200):
        policy, profs, lengths, comps = random_case(rng)
        sched = schedule_cycle(policy, profs, lengths, comps, 0, 10**6)
        for i in range(1, len(profs)):
            gap = sched.entries[i].believed_open - sched.entries[i - 1].believed_close
            assert gap == comps[i]
        total = sum(e.believed_close - e.believed_open for e in sched.entries)
        assert total == sum(lengths)


def test_origin_shift_covariance():
    rng = random.Random(7)
    for _ in range(50):
        policy, profs, lengths, comps = random_case(rng)
        shift = rng.randint(1, 10**6)
        a = schedule_cycle(policy, profs, lengths, comps, 0, 10**6)
        b = schedule_cycle(policy, profs, lengths, comps, 0, 10**6 + shift)
        for ea, eb in zip(a.entries, b.entries):
            assert eb.grant_send - ea.grant_send == shift
            assert eb.believed_open - ea.believed_open == shift
            assert eb.believed_close - ea.believed_close == shift


def test_guard_padding_in_schedule():
    profs = profiles_from((100, 100, 100), (100, 100, 100))
    sched = schedule_cycle(
        SchedulerPolicy(BASELINE), profs, [50, 50, 50], [0, 0, 0], 0, 100, guard=7
    )
    opens = [e.believed_open for e in sched.entries]
    closes = [e.believed_close for e in sched.entries]
    assert opens[1] - closes[0] == 7
    assert opens[2] - closes[1] == 7
