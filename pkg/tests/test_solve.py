import json
import random

import numpy as np
import pytest

from gmle.groebner import groebner
from gmle.model import build_model_ring
from gmle.score import score_equations
from gmle.solve import (
    CompiledSystem,
    PositiveDimensionalError,
    SolutionPoint,
    real_solutions,
    solutions_to_json,
    zero_dim_solve,
)
from gmle.symbolic import Polynomial, Var

x, y = Polynomial.var(Var("x")), Polynomial.var(Var("y"))

MIXED_FIRST_REAL = [1.51337, 4.61101, -0.483277, 1.46684, 3.27093, 0.298576, 0.573665, -0.41385]


@pytest.fixture(scope="module")
def mixed_solutions(mixed, mixed_S):
    sys_ = score_equations(build_model_ring(mixed), mixed_S)
    return sys_, zero_dim_solve(sys_.groebner())


def test_square_root_of_two():
    sols = zero_dim_solve(groebner([x**2 - 2], [Var("x")]))
    assert sorted(s.coords[0].real for s in sols) == pytest.approx([-np.sqrt(2), np.sqrt(2)], abs=1e-14)
    assert all(s.is_real for s in sols)


def test_mixed_example(mixed_solutions):
    sys_, sols = mixed_solutions
    assert len(sols) == 5
    reals = real_solutions(sols)
    assert len(reals) == 3
    assert min(np.max(np.abs(r - MIXED_FIRST_REAL)) for r in reals) <= 5e-5
    imag = [np.max(np.abs(s.coords.imag)) for s in sols if not s.is_real]
    assert len(imag) == 2 and min(imag) > 0.1


def test_residuals_and_conjugate_closure(mixed_solutions):
    sys_, sols = mixed_solutions
    assert all(s.residual <= 1e-10 for s in sols)
    comp = CompiledSystem(sys_.polynomials, sys_.vars)
    for s in sols:
        assert comp.residual(s.coords) <= 1e-10
        assert any(np.max(np.abs(np.conj(s.coords) - o.coords)) < 1e-8 for o in sols)


def test_real_solutions_filter():
    assert real_solutions([]) == []
    pair = [SolutionPoint(np.array([1.0 + 0.44j]), 0.0, False), SolutionPoint(np.array([1.0 - 0.44j]), 0.0, False)]
    assert real_solutions(pair, tol=1e-6) == []
    near = SolutionPoint(np.array([2.0 + 1e-12j]), 0.0, True)
    assert np.allclose(real_solutions([near], tol=1e-9), [[2.0]])


def test_positive_dimensional_raises():
    with pytest.raises(PositiveDimensionalError) as exc:
        zero_dim_solve(groebner([x - 1], [Var("x"), Var("y")]))
    assert exc.value.dim == 1 and exc.value.degree == 1
    assert "ML degree is not well-defined" in str(exc.value)


def test_empty_variety():
    assert zero_dim_solve(groebner([x, x - 1], [Var("x")])) == []


def test_seed_independence():
    polys = [x**2 + y**2 - 5, x * y - 2]
    gb = groebner(polys, [Var("x"), Var("y")])
    a = sorted(tuple(np.round(s.coords.real, 10)) for s in zero_dim_solve(gb, seed=0))
    b = sorted(tuple(np.round(s.coords.real, 10)) for s in zero_dim_solve(gb, seed=5))
    assert a == b and len(a) == 4


def test_random_systems_count_equals_degree():
    rng = random.Random(17)
    X, Y = Var("x"), Var("y")
    for _ in range(10):
        polys = []
        for _ in range(2):
            p = Polynomial()
            for mono in [1, x, y, x * x, x * y, y * y]:
                p = p + Polynomial.coerce(mono) * rng.randint(-9, 9)
            polys.append(p)
        gb = groebner(polys, [X, Y])
        sols = zero_dim_solve(gb)
        assert len(sols) == gb.degree()
        assert all(s.residual <= 1e-10 for s in sols)


def test_json_output(mixed_solutions):
    _, sols = mixed_solutions
    data = json.loads(solutions_to_json(sols))
    assert len(data) == 5
    assert set(data[0]) == {"coords", "residual", "isReal"}
    assert set(data[0]["coords"][0]) == {"re", "im"}
