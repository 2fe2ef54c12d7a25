"""Generated and corpus-wide checks of the structural properties."""

import itertools

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from asymcomp import parse_rule, power_rule, reverse_rule, signature
from asymcomp.composants import PositionedTiling
from asymcomp.errors import AsymcompError
from asymcomp.field import embed_power
from asymcomp.invariants import (
    as_structure,
    canonicalize,
    isomorphic_strong,
    isomorphic_weak,
    mirror_structure,
    mirror_test,
)
from asymcomp.oracle import grow
from asymcomp.rules import InflationRule, count_matrix, is_primitive, perron_data
from asymcomp.enumeration import is_aperiodic
from conftest import FIBONACCI, KOLAKOSKI, PLASTIC, TRIBONACCI, sig_of

SETTINGS = settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@st.composite
def rules(draw):
    n = draw(st.sampled_from([2, 3]))
    alphabet = "abc"[:n]
    images = tuple(draw(st.text(alphabet=alphabet, min_size=1, max_size=4)) for _ in alphabet)
    rule = InflationRule(alphabet, images)
    assume(is_primitive(count_matrix(rule)) and is_aperiodic(rule))
    try:
        sig = signature(rule)
    except AsymcompError:
        assume(False)
    return rule, sig


# (a) reversal reflects the signature
@SETTINGS
@given(rules())
def test_reverse_is_mirror(case):
    rule, sig = case
    rev = signature(reverse_rule(rule))
    assert canonicalize(rev).encoding == canonicalize(mirror_structure(sig)).encoding


# (b) the square's action is the square of the action, on the same points
def _point_keys(rule, pd, sig, n):
    """Central windows of the points of ``sig`` (a signature of rule**n),
    grown with ``rule`` itself inside Q(lambda)."""
    radius = pd.max_length * 10
    keys = []
    for t in sig.points:
        off = embed_power(t.origin_offset, pd.field, n) if n > 1 else t.origin_offset
        u = PositionedTiling(t.seed, off, n * t.period)
        keys.append(grow(rule, pd, u, float(radius)).window(-radius, radius))
    return keys


def _check_power(rule, n):
    pd = perron_data(rule)
    base, pw = signature(rule), signature(power_rule(rule, n))
    k1 = _point_keys(rule, pd, base, 1)
    kn = _point_keys(rule, pd, pw, n)
    assert len(set(k1)) == len(k1) and sorted(k1) == sorted(kn)
    phi = [k1.index(k) for k in kn]  # index in pw -> index in base
    power = list(range(base.size))
    for _ in range(n):
        power = [base.permutation[i] for i in power]
    for i, j in enumerate(pw.permutation):
        assert phi[j] == power[phi[i]]
    relabel = lambda part: sorted(tuple(sorted(phi[i] for i in b)) for b in part)
    assert relabel(pw.left_partition) == sorted(base.left_partition)
    assert relabel(pw.right_partition) == sorted(base.right_partition)


@pytest.mark.parametrize("text", [FIBONACCI, TRIBONACCI, PLASTIC, KOLAKOSKI])
@pytest.mark.parametrize("n", [2, 3])
def test_power_named_rules(text, n):
    _check_power(parse_rule(text), n)


@SETTINGS
@given(rules())
def test_square_generated(case):
    rule, _ = case
    _check_power(rule, 2)


# (c) blocks go to blocks, (d) splitting points never right of the centre
def test_permutation_preserves_blocks(corpus):
    assert len(corpus) >= 60
    for text, sig in corpus:
        for part in (sig.left_partition, sig.right_partition):
            blocks = {frozenset(b) for b in part}
            for b in part:
                assert frozenset(sig.permutation[i] for i in b) in blocks, text


@SETTINGS
@given(rules())
def test_permutation_preserves_blocks_generated(case):
    _, sig = case
    for part in (sig.left_partition, sig.right_partition):
        blocks = {frozenset(b) for b in part}
        assert all(frozenset(sig.permutation[i] for i in b) in blocks for b in part)


def test_splitting_points_nonpositive(corpus):
    for text, sig in corpus:
        assert all(s.sign() <= 0 for s in sig.positions), text


@SETTINGS
@given(rules())
def test_splitting_points_nonpositive_generated(case):
    _, sig = case
    assert all(s.sign() <= 0 for s in sig.positions)


# (e) strong isomorphism is an equivalence relation on the corpus
def test_strong_isomorphism_is_equivalence(corpus, fixtures):
    structs = [as_structure(sig) for _, sig in corpus] + [r.structure() for t in fixtures for r in t.rows]
    n = len(structs)
    rel = [[bool(isomorphic_strong(a, b)) for b in structs] for a in structs]
    assert n >= 100
    assert all(rel[i][i] for i in range(n))
    assert all(rel[i][j] == rel[j][i] for i in range(n) for j in range(n))
    related = [{j for j in range(n) if rel[i][j]} for i in range(n)]
    for i in range(n):
        for j in related[i]:
            assert related[j] <= related[i]


# (f) canonical encodings decide strong isomorphism within each table
def test_canonical_encoding_decides_isomorphism(fixtures):
    pairs = 0
    for t in fixtures:
        structs = [r.structure() for r in t.rows]
        for r in t.rows:
            try:
                structs.append(as_structure(sig_of(r.repr)))
            except AsymcompError:
                pass
        enc = [canonicalize(s).encoding for s in structs]
        for (a, ea), (b, eb) in itertools.combinations(zip(structs, enc), 2):
            assert (ea == eb) == bool(isomorphic_strong(a, b))
            pairs += 1
    assert pairs >= 100


# the mirror verdict does not depend on which of r, reverse(r) is tested
@SETTINGS
@given(rules())
def test_mirror_test_reversal_invariant(case):
    rule, _ = case
    assert mirror_test(rule).outcome == mirror_test(reverse_rule(rule)).outcome


@SETTINGS
@given(rules(), rules())
def test_strong_implies_weak(c1, c2):
    a, b = c1[1], c2[1]
    if isomorphic_strong(a, b):
        assert isomorphic_weak(a, b)
    assert isomorphic_weak(a, a)
