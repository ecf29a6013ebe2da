from __future__ import annotations

import numpy as np
import pytest

from src.linear.exact import RationalMatrix
from src.topology.mcg import (
    CurveClass,
    MappingClass,
    TwistWord,
    braid_relator,
    chain_relator,
    exponent_sum,
    is_homologically_trivial,
    random_curve,
    random_word,
    standard_word,
    transvection,
    word_action,
)
from src.utils.errors import DimensionMismatchError, NonPrimitiveClassError, NotSymplecticError


def test_transvections_of_standard_curves():
    assert transvection(CurveClass.meridian(1, 0)).to_int_rows() == [[1, 1], [0, 1]]
    assert transvection(CurveClass.longitude(1, 0)).to_int_rows() == [[1, 0], [-1, 1]]
    assert transvection(CurveClass.zero(1)).is_identity


def test_transvection_ignores_orientation():
    rng = np.random.default_rng(1)
    for _ in range(20):
        c = random_curve(3, rng)
        assert transvection(c) == transvection(c.negated())


def test_non_primitive_classes():
    with pytest.raises(NonPrimitiveClassError):
        CurveClass((2, 0))
    loose = CurveClass((2, 0), permissive=True)
    assert transvection(loose).to_int_rows() == [[1, 4], [0, 1]]


def test_mapping_class_validation():
    with pytest.raises(NotSymplecticError):
        MappingClass.from_rows([[2, 0], [0, 1]])
    with pytest.raises(DimensionMismatchError):
        MappingClass.from_rows([[1]])


def test_braid_relation_on_homology():
    assert word_action(standard_word(1, "mlm")) == word_action(standard_word(1, "lml"))
    assert is_homologically_trivial(braid_relator(2))


def test_braid_relation_for_random_dual_pairs():
    rng = np.random.default_rng(2)
    checked = 0
    while checked < 10:
        a, b = random_curve(2, rng, allow_zero=False), random_curve(2, rng, allow_zero=False)
        pairing = sum(a.vector[i] * b.vector[2 + i] - a.vector[2 + i] * b.vector[i] for i in range(2))
        if abs(pairing) != 1:
            continue
        assert word_action(TwistWord.of(2, a, b, a)) == word_action(TwistWord.of(2, b, a, b))
        checked += 1


def test_chain_relator():
    u = chain_relator(1)
    assert exponent_sum(u) == 11
    assert is_homologically_trivial(u)
    assert exponent_sum(standard_word(1, "ml") ** 3) == 6
    assert word_action(standard_word(1, "ml") ** 3).to_int_rows() == [[-1, 0], [0, -1]]


def test_composition_order():
    # letter 1 is applied last
    m, l = CurveClass.meridian(1, 0), CurveClass.longitude(1, 0)
    assert word_action(TwistWord.of(1, m, l)) == transvection(m) @ transvection(l)
    assert word_action(TwistWord(1)) == MappingClass.identity(1)


def test_word_times_inverse_is_trivial():
    rng = np.random.default_rng(4)
    for _ in range(15):
        w = random_word(int(rng.integers(1, 4)), rng, 10)
        assert is_homologically_trivial(w * w.inverse())
        assert exponent_sum(w.inverse()) == -exponent_sum(w)


def test_word_printing():
    w = TwistWord(2, ((CurveClass.from_coefficients([1, 1], [1, 2]), 1), (CurveClass.longitude(2, 1), -1)))
    assert str(w) == "[1,1;1,2] l2^-1"
    assert str(CurveClass.zero(1)) == "0"


def test_mapping_class_inverse():
    f = word_action(standard_word(2, "mlmll"))
    assert (f @ f.inverse()).is_identity
    assert f.matrix.T @ f.space.form @ f.matrix == f.space.form
    assert isinstance(f.minus_identity(), RationalMatrix)
