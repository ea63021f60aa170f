"""C*-model tests: trace values, traciality, multiplication defect."""

import numpy as np
import pytest

from qheat.cstar_model import (
    AlgebraShape,
    BlockElement,
    delta_form_defect,
    dim_b,
    parse_shape,
    plancherel_trace,
)


def random_element(shape: AlgebraShape, rng) -> BlockElement:
    return BlockElement(
        tuple(rng.normal(size=(b, b)) + 1j * rng.normal(size=(b, b)) for b in shape.blocks)
    )


def test_dim_examples():
    assert dim_b(AlgebraShape((1, 1, 1, 1, 1))) == 5
    assert dim_b(AlgebraShape((2,))) == 4
    assert dim_b(AlgebraShape((2, 1))) == 5


def test_trace_diagonal_mean():
    shape = AlgebraShape((1, 1, 1))
    a = BlockElement((np.array([[2.0]]), np.array([[3.0]]), np.array([[7.0]])))
    assert plancherel_trace(shape, a) == pytest.approx((2 + 3 + 7) / 3)


def test_trace_is_unital():
    for blocks in ((2,), (2, 1), (3, 2, 1)):
        shape = AlgebraShape(blocks)
        assert plancherel_trace(shape, shape.identity()) == pytest.approx(1.0, abs=1e-14)


def test_trace_weighted_block():
    shape = AlgebraShape((2, 1))
    a = BlockElement((np.eye(2), np.zeros((1, 1))))
    assert plancherel_trace(shape, a) == pytest.approx(4.0 / 5.0)


def test_trace_shape_mismatch():
    shape = AlgebraShape((2, 1))
    bad = BlockElement((np.eye(2), np.eye(2)))
    with pytest.raises(ValueError):
        plancherel_trace(shape, bad)


def test_trace_is_tracial():
    rng = np.random.default_rng(3)
    shape = AlgebraShape((2, 3, 1))
    for _ in range(20):
        a, b = random_element(shape, rng), random_element(shape, rng)
        ab = BlockElement(tuple(x @ y for x, y in zip(a.blocks, b.blocks)))
        ba = BlockElement(tuple(y @ x for x, y in zip(a.blocks, b.blocks)))
        assert abs(plancherel_trace(shape, ab) - plancherel_trace(shape, ba)) < 1e-12


def test_trace_is_positive():
    rng = np.random.default_rng(4)
    shape = AlgebraShape((2, 2, 1))
    for _ in range(20):
        a = random_element(shape, rng)
        square = BlockElement(tuple(x.conj().T @ x for x in a.blocks))
        value = plancherel_trace(shape, square)
        assert abs(value.imag) < 1e-12
        assert value.real >= 0


@pytest.mark.parametrize(
    "blocks",
    [(1,), (1, 1), (2,), (2, 1), (1, 1, 1), (2, 2), (3,), (3, 1, 1), (2, 2, 2),
     (3, 2, 1), (1,) * 16],
)
def test_delta_form_defect_vanishes(blocks):
    assert delta_form_defect(AlgebraShape(blocks)) < 1e-12


def test_shape_validation():
    with pytest.raises(ValueError):
        AlgebraShape(())
    with pytest.raises(ValueError):
        AlgebraShape((0, 2))
    assert parse_shape("2,1").blocks == (2, 1)
    with pytest.raises(ValueError):
        parse_shape("2,x")
