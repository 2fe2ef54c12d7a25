import itertools
import random

import pytest

from asymcomp.invariants import (
    MIRROR_CAUTION,
    NO_OBSTRUCTION,
    OBSTRUCTION,
    Structure,
    as_structure,
    canonicalize,
    check_witness,
    isomorphic_strong,
    isomorphic_weak,
    mirror_test,
    structure_from_table,
)
from asymcomp.errors import ParseError

from conftest import fixture_row, sig_of


def test_structure_from_table_infers_singletons():
    s = structure_from_table("[4,5,6]", "[1,2,3]", "(1,2,3)(4,6,5)")
    assert s.size == 6
    assert (0, 1, 2) in s.right and (0,) in s.left
    with pytest.raises(ParseError):
        structure_from_table("[1,2", "", "")


def test_canonical_fibonacci():
    assert canonicalize(sig_of("[ab,a]")).encoding == "n=2|L=[1,2]|R=[1,2]|P=(1,2)"


def test_canonical_invariant_under_relabelling():
    s = as_structure(sig_of("[ab,cb,a]"))
    rng = random.Random(7)
    base = canonicalize(s).encoding
    for _ in range(20):
        phi = list(range(s.size))
        rng.shuffle(phi)
        assert canonicalize(s.relabeled(phi)).encoding == base


def test_canonical_table2_row1(fixtures):
    row = fixture_row(fixtures, "2", 1)
    assert row.repr == "[ab,cb,a]"
    c = canonicalize(sig_of(row.repr))
    assert c.size == 8
    assert c.encoding == canonicalize(row.structure()).encoding


def test_strong_examples():
    s = sig_of("[c,ca,cb]")
    v = isomorphic_strong(s, s)
    assert v.outcome == NO_OBSTRUCTION and check_witness(s, s, v.witness) is None
    assert isomorphic_strong(sig_of("[aab,ba]"), sig_of("[baa,ab]")).outcome == OBSTRUCTION
    assert isomorphic_strong(sig_of("[c,ca,cb]"), sig_of("[c,ac,bc]")).outcome == NO_OBSTRUCTION


def test_identity_witness():
    s = as_structure(sig_of("[ab,a]"))
    v = isomorphic_strong(s, s)
    assert check_witness(s, s, list(range(s.size))) is None
    assert v.witness is not None


def test_weak_examples(fixtures):
    v = isomorphic_weak(sig_of("[aac,a,b]"), sig_of("[aca,a,b]"))
    assert v.outcome == OBSTRUCTION
    r4, r5 = fixture_row(fixtures, "1", 4).structure(), fixture_row(fixtures, "1", 5).structure()
    assert isomorphic_weak(r4, r5)
    assert isomorphic_strong(r4, r5).outcome == OBSTRUCTION


def test_failed_condition_names():
    a = structure_from_table("[1,2]", "[1,2]", "(1,2)")
    b = structure_from_table("[1,2]", "[1,2]", "")
    assert isomorphic_strong(a, b).failed == "permutation"
    c = structure_from_table("[1,2],[3,4]", "", "")
    d = structure_from_table("[1,2,3]", "", "")
    assert isomorphic_strong(structure_from_table("[1,2,3]", "", "(4)"), d).failed == "S"
    assert isomorphic_strong(c, structure_from_table("[1,2]", "", "(4)")).failed == "P_L"


def test_check_witness_rejects_bad_map():
    s = as_structure(sig_of("[aab,ba]"))
    bad = None
    for phi in itertools.permutations(range(s.size)):
        if check_witness(s, s, phi) is not None:
            bad = phi
            break
    assert bad is not None


@pytest.mark.parametrize(
    "text,outcome",
    [("[aab,ba]", OBSTRUCTION), ("[c,ca,cb]", NO_OBSTRUCTION), ("[aca,a,b]", NO_OBSTRUCTION),
     ("[bc,a,b]", OBSTRUCTION), ("[aac,a,b]", OBSTRUCTION)],
)
def test_mirror_examples(text, outcome):
    v = mirror_test(text)
    assert v.outcome == outcome
    if outcome == NO_OBSTRUCTION:
        assert MIRROR_CAUTION in v.notes
