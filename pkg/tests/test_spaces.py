import random
from fractions import Fraction

import pytest

from lineable.builder import BuildContext, RunConfig, vanishing_subspace
from lineable.errors import DependentSeed, StreamExhausted, ZeroVector
from lineable.polynomials import SparseVector, evaluate, parse_hompoly
from lineable.scalars import Field, gauss
from lineable.spaces import (
    SeedSpace,
    decompose,
    direct_complement,
    dual_functionals,
    exact_rank,
    exclude_vector,
    full_space,
    kernel_within,
    refine_vanishing,
)

from oracles import random_vector, solve_exact

G = Field.GAUSSIAN


def e(j):
    return SparseVector.basis(j)


def vec(**kw):
    return SparseVector({int(k[1:]): v for k, v in kw.items()})


def ctx():
    return BuildContext(RunConfig(), max_depth=4)


def vanisher(q, s):
    return vanishing_subspace(q, s, ctx())


# -- full space -------------------------------------------------------------------------

def test_full_space_first_yields():
    assert full_space().take(3) == [e(1), e(2), e(3)]


def test_full_space_hundredth():
    assert full_space().take(100)[-1] == e(100)


def test_full_space_rank():
    assert exact_rank(full_space().take(10)) == 10


def test_next_twice():
    S = full_space()
    assert S.next() == e(1)
    assert S.next() == e(2)
    assert S.history == [e(1), e(2)]


def test_max_index_bound():
    S = full_space(max_index=3)
    S.take(3)
    with pytest.raises(StreamExhausted):
        S.next()


# -- kernels ------------------------------------------------------------------------------

def test_kernel_of_x1():
    assert kernel_within(full_space(), [e(1)]).next() == e(2)


def test_kernel_of_x1_plus_x2():
    phi = e(1) + e(2)
    ys = kernel_within(full_space(), [phi]).take(2)
    assert all(phi.dot(y) == 0 for y in ys)
    assert exact_rank(ys) == 2
    assert ys == [e(2) - e(1), e(3)]


def test_kernel_of_two_coordinates():
    for y in kernel_within(full_space(), [e(1), e(2)]).take(10):
        assert min(y.support()) >= 3


def test_nested_kernels():
    K = kernel_within(kernel_within(full_space(), [e(1) + e(2)]), [e(3)])
    ys = K.take(2)
    assert exact_rank(ys) == 2
    for y in ys:
        assert (e(1) + e(2)).dot(y) == 0 and y[3] == 0
        assert K.node.conditions_hold(y)


def test_kernel_with_gaussian_functional():
    phi = SparseVector({1: 1, 2: gauss(0, 1)})
    K = kernel_within(full_space(), [phi])
    ys = K.take(5)
    assert K.field is G
    assert all(phi.dot(y) == 0 for y in ys)
    assert exact_rank(ys) == 5


def test_stream_independence_fifty():
    rng = random.Random(11)
    fs = [random_vector(rng, 6) for _ in range(3)]
    K = kernel_within(full_space(debug=True), fs)
    ys = K.take(50)
    assert exact_rank(ys) == 50
    assert all(K.node.conditions_hold(y) for y in ys)


# -- exclusion ---------------------------------------------------------------------------

def test_exclude_e1():
    ys = exclude_vector(full_space(), e(1)).take(5)
    assert all(y[1] == 0 for y in ys)
    assert exact_rank(ys + [e(1)]) == 6


def test_exclude_uses_first_support_coordinate():
    S = exclude_vector(full_space(), e(1) + e(2))
    assert S.node.coordinate == 1
    assert all(y[1] == 0 for y in S.take(4))


def test_exclude_inside_kernel():
    S = exclude_vector(kernel_within(full_space(), [e(1)]), e(2))
    ys = S.take(6)
    for y in ys:
        assert y[1] == 0 and y[2] == 0
        assert S.node.conditions_hold(y)
    assert not S.node.conditions_hold(e(2))
    assert exact_rank(ys + [e(2)]) == 7


def test_exclude_zero_vector():
    with pytest.raises(ZeroVector):
        exclude_vector(full_space(), SparseVector({}))


def test_excluded_vector_never_in_prefix_span():
    rng = random.Random(4)
    v = random_vector(rng, 5, density=1.0)
    ys = exclude_vector(full_space(), v).take(20)
    for k in range(1, 21):
        assert exact_rank(ys[:k] + [v]) == k + 1


# -- refinement --------------------------------------------------------------------------

def test_refine_linear_conditions():
    S = refine_vanishing(full_space(), [parse_hompoly("x1"), parse_hompoly("x2")], vanisher)
    assert all(min(y.support()) >= 3 for y in S.take(5))


def test_refine_empty_is_identity():
    S = full_space()
    assert refine_vanishing(S, [], vanisher) is S


def test_refine_mixed_degrees():
    conds = [parse_hompoly("x1*x2", G), parse_hompoly("x3", G)]
    ys = refine_vanishing(full_space(), conds, vanisher).take(5)
    for y in ys:
        for q in conds:
            assert evaluate(q, y) == 0
    assert exact_rank(ys) == 5


def test_refine_order_does_not_affect_soundness():
    conds = [parse_hompoly("x1*x2 + x3^2", G), parse_hompoly("x2 - x4", G)]
    for order in (conds, conds[::-1]):
        ys = refine_vanishing(full_space(), order, vanisher).take(4)
        assert exact_rank(ys) == 4
        assert all(evaluate(q, y) == 0 for y in ys for q in conds)


# -- complements -------------------------------------------------------------------------

def test_complement_of_e1():
    ys = direct_complement(SeedSpace([e(1)])).take(5)
    assert all(y[1] == 0 for y in ys)


def test_complement_of_nothing_is_full():
    assert direct_complement(SeedSpace([])).take(3) == [e(1), e(2), e(3)]


def test_complement_decomposition_e1_plus_e2():
    W = SeedSpace([e(1) + e(2)])
    psi, = dual_functionals(W)
    assert psi.dot(e(1) + e(2)) == 1
    w, y = decompose(W, e(1))
    # oracle: e1 = a*(e1+e2) + y with psi(y) = 0 and psi = e1*, so solve [[1, 1], [1, 0]]
    a, y2 = solve_exact([[1, 0], [1, 1]], [1, 0])
    assert w == (e(1) + e(2)) * a
    assert psi.dot(y) == 0
    assert w + y == e(1)


def test_dependent_seed():
    with pytest.raises(DependentSeed):
        SeedSpace([e(1), e(2), e(1) + e(2)])
    with pytest.raises(ZeroVector):
        SeedSpace([SparseVector({})])


def test_complement_random_decompositions():
    rng = random.Random(9)
    W = SeedSpace([random_vector(rng, 6, density=0.8) for _ in range(3)])
    psis = dual_functionals(W)
    for i, p in enumerate(psis):
        for j, x in enumerate(W.basis):
            assert p.dot(x) == (1 if i == j else 0)
    for _ in range(100):
        z = random_vector(rng, 8)
        w, y = decompose(W, z)
        assert w + y == z
        assert all(p.dot(y) == 0 for p in psis)
        # w is in span(W): appending it does not raise the rank
        assert exact_rank(W.basis + [w]) == W.n
    ys = direct_complement(W).take(10)
    assert exact_rank(W.basis + ys) == 13


# -- rank ---------------------------------------------------------------------------------

def test_rank_examples():
    assert exact_rank([e(1), e(2), e(1) + e(2)]) == 2
    assert exact_rank([]) == 0


def test_rank_of_planted_rank_three():
    rng = random.Random(2)
    base = [random_vector(rng, 8, density=1.0) for _ in range(3)]
    combos = []
    for _ in range(2):
        c = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]
        combos.append(base[0] * c[0] + base[1] * c[1] + base[2] * c[2])
    assert exact_rank(base + combos) == 3


def test_rank_approximate_threshold():
    a = SparseVector({1: 1.0, 2: 1j}, Field.COMPLEX)
    b = SparseVector({1: 1.0 + 1e-14, 2: 1j}, Field.COMPLEX)
    assert exact_rank([a, b]) == 1
    assert exact_rank([a, SparseVector({2: 1.0}, Field.COMPLEX)]) == 2
