import pytest

from asymcomp.composants import (
    PositionedTiling,
    central_patch,
    equal_tilings,
    grow_tiling,
    initial_pairs,
    left_asymptotic_set,
    pair_cycles,
    position_orbit,
    SeedPair,
    signature,
    SplitStep,
    stable_pairs,
    step_pair,
)
from asymcomp.errors import KExhausted, KTooSmall, PositivePosition, ReducibleSpectrum
from asymcomp.invariants import isomorphic_strong, structure_from_table
from asymcomp.rules import inflate, legal_factors, parse_rule, perron_data

FIB = parse_rule("[ab,a]")
FIB_PD = perron_data(FIB)


def test_initial_pairs_fibonacci_k3():
    # baa/bab share their first two letters, so only one pair qualifies
    assert initial_pairs(FIB, 3) == [SeedPair("aab", "aba")]


def test_initial_pairs_tribonacci_k2():
    trib = parse_rule("[c,ca,cb]")
    factors = legal_factors(trib, 2)
    expected = sorted(
        SeedPair(p, q) for p in factors for q in factors if p < q and p[0] == q[0] and p[1] != q[1]
    )
    assert sorted(initial_pairs(trib, 2)) == expected
    assert len(expected) == 3


def test_initial_pairs_degenerate():
    # with k = 1 nothing can disagree on a second letter
    with pytest.raises(ValueError):
        initial_pairs(FIB, 1)


def test_fibonacci_k3_too_small():
    raised = 0
    for pr in initial_pairs(FIB, 3):
        for q in (pr, pr.swapped()):
            with pytest.raises(KTooSmall):
                step_pair(FIB, FIB_PD, q)
            raised += 1
    assert raised == 2


def test_fibonacci_k4_split_is_stable():
    st = stable_pairs(FIB, FIB_PD, k_init=4)
    assert st.k == 4
    assert {frozenset((p.p, p.q)) for p in st.pairs} == {frozenset(("aaba", "abaa"))}
    cycles = pair_cycles(st)
    assert len(cycles) == 1 and len(cycles[0]) == 2
    # the inflation swaps the two members; the split returns to the same place
    s = position_orbit(FIB_PD, cycles[0])
    assert s[0] == s[1]
    for step in cycles[0]:
        assert step.target == step.source.swapped()


def test_escalation_from_three():
    st = stable_pairs(FIB, FIB_PD, k_init=3)
    assert st.history == [3, 4]
    assert st.k == 4
    assert signature(FIB, k_init=3).left_partition == signature(FIB, k_init=4).left_partition


def test_k_exhausted():
    with pytest.raises(KExhausted) as info:
        stable_pairs(FIB, FIB_PD, k_init=2, k_max=3)
    assert info.value.k == 3


def test_step_delta_positive():
    # inflated words share more than the first supertile
    step = step_pair(FIB, FIB_PD, SeedPair("aaba", "abaa"))
    assert step.delta.sign() > 0
    rp, rq = inflate(FIB, "aaba"), inflate(FIB, "abaa")
    assert rp[: step.common] == rq[: step.common]
    assert rp[step.common] != rq[step.common]


def _fake_step(delta):
    pr = SeedPair("ab", "aa")
    return SplitStep(pr, pr, delta, 1, (2, 2))


def test_position_orbit_fixed_pairs():
    assert position_orbit(FIB_PD, [_fake_step(FIB_PD.field.zero)])[0].is_zero()
    d = FIB_PD.lengths["b"]
    s = position_orbit(FIB_PD, [_fake_step(d)])[0]
    assert s == d / (1 - FIB_PD.lam)
    assert s.sign() < 0
    with pytest.raises(PositivePosition):
        position_orbit(FIB_PD, [_fake_step(-d)])


def test_position_orbit_two_cycle():
    cyc = pair_cycles(stable_pairs(FIB, FIB_PD))[0]
    s = position_orbit(FIB_PD, cyc)
    lam = FIB_PD.lam
    d1, d2 = cyc[0].delta, cyc[1].delta
    assert s[0] == lam**2 * s[0] + lam * d1 + d2
    assert s[1] == lam * s[0] + d1


def _fib_point():
    return left_asymptotic_set(FIB, FIB_PD).tilings[0]


def test_grow_tiling():
    t = _fib_point()
    patch = grow_tiling(FIB, FIB_PD, t, 5)
    assert len(patch.word) >= 7
    assert patch.left.sign() < 0 and patch.right(FIB_PD).sign() > 0
    small = grow_tiling(FIB, FIB_PD, t, FIB_PD.field.zero)
    assert small.word == t.seed
    # confluence: growing in two stages agrees with growing once on the common window
    r = FIB_PD.field(3)
    once = grow_tiling(FIB, FIB_PD, t, 9).window(FIB_PD, -r, r)
    twice = grow_tiling(FIB, FIB_PD, PositionedTiling(
        grow_tiling(FIB, FIB_PD, t, 2).word, -grow_tiling(FIB, FIB_PD, t, 2).left, t.period), 9).window(FIB_PD, -r, r)
    assert once == twice


def test_left_sets():
    fib = left_asymptotic_set(FIB, FIB_PD)
    assert len(fib.tilings) == 2 and fib.partition == [(0, 1)] and fib.permutation == [1, 0]

    rule = parse_rule("[aab,ba]")
    pd = perron_data(rule)
    s = left_asymptotic_set(rule, pd)
    around = set()
    for t in s.tilings:
        cp = central_patch(rule, pd, t)
        verts = cp.vertices(pd)
        i = next(i for i, v in enumerate(verts) if v.is_zero())
        around.add(cp.word[i - 1] + "." + cp.word[i])
    assert around == {"a.a", "a.b", "b.a", "b.b"}
    assert len(s.partition) == 2

    trib = left_asymptotic_set(parse_rule("[c,ca,cb]"))
    assert len(trib.tilings) == 3 and trib.partition == [(0, 1, 2)]
    assert sorted(trib.permutation) == [0, 1, 2] and all(trib.permutation[i] != i for i in range(3))


def test_equal_tilings():
    fib = left_asymptotic_set(FIB, FIB_PD).tilings
    assert equal_tilings(FIB, FIB_PD, fib[0], fib[0])
    assert not equal_tilings(FIB, FIB_PD, fib[0], fib[1])
    sig = signature(FIB)
    assert sig.size == 2  # left and right seeds coincide


@pytest.mark.parametrize(
    "text,left,right,perm",
    [
        ("[ab,a]", "[1,2]", "[1,2]", "(1,2)"),
        ("[c,ca,cb]", "[4,5,6]", "[1,2,3]", "(1,2,3)(4,6,5)"),
    ],
)
def test_signature_examples(text, left, right, perm):
    sig = signature(parse_rule(text))
    assert isomorphic_strong(sig, structure_from_table(left, right, perm))


def test_plastic_partitions():
    sig = signature(parse_rule("[bc,a,b]"))
    assert sig.size == 6
    assert sorted(len(b) for b in sig.left_partition) == [2, 2, 2]
    assert sorted(len(b) for b in sig.right_partition) == [3, 3]


def test_out_of_scope_rules():
    with pytest.raises(ReducibleSpectrum):
        signature(parse_rule("[abbba,aba]"))
