import pytest

from asymcomp.composants import PositionedTiling, signature
from asymcomp.invariants import isomorphic_strong
from asymcomp.oracle import fixed_points, is_fixed, oracle_check, verify_signature
from asymcomp.rules import parse_rule, perron_data

from conftest import EXAMPLE_RULES, sig_of


@pytest.mark.parametrize("text", EXAMPLE_RULES)
def test_oracle_agrees_on_examples(text):
    rep, same = verify_signature(sig_of(text))
    assert rep.ok
    assert same, (rep.left_blocks, rep.right_blocks, rep.permutation)


def test_oracle_detects_missing_point():
    sig = sig_of("[aab,ba]")
    rep = oracle_check(sig.rule, sig.points[1:])
    assert not rep.closed and not rep.ok
    assert rep.missing  # the completeness search finds the dropped tiling


def test_oracle_partitions_are_its_own():
    # Tribonacci: the oracle must find one left triple and one right triple,
    # disjoint from each other, without looking at the algorithm's partitions
    sig = sig_of("[c,ca,cb]")
    rep = oracle_check(sig.rule, sig.points)
    assert [len(b) for b in rep.left_blocks] == [3]
    assert [len(b) for b in rep.right_blocks] == [3]
    assert not set(rep.left_blocks[0]) & set(rep.right_blocks[0])


def test_is_fixed_rejects_shifted_seed():
    sig = sig_of("[ab,a]")
    t = sig.points[0]
    assert is_fixed(sig.rule, sig.pd, t)
    moved = PositionedTiling(t.seed, t.origin_offset + sig.pd.lengths["b"] / 3, t.period)
    assert not is_fixed(sig.rule, sig.pd, moved)


def test_fixed_points_fibonacci_square():
    rule = parse_rule("[ab,a]")
    pd = perron_data(rule)
    pts = fixed_points(rule, pd, 2)
    assert all(is_fixed(rule, pd, t) for t in pts)
    # the two asymptotic points of Fibonacci are fixed by rho^2 and vertex-centred
    assert sum(len(t.seed) == 2 for t in pts) >= 2
