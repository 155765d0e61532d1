from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qudit_compiler import linalg
from qudit_compiler.circuit import (
    M,
    P,
    S,
    SUM,
    SUMINV,
    Z,
    Circuit,
    DimensionTooLarge,
    Gate,
    build_ccz_family,
    circuits_equal,
    decompose_linear,
    extract,
    random_circuit,
    simulate_all,
    simulate_basis,
    synthesize,
    synthesize_clifford_diagonal,
    synthesize_cubic,
)
from qudit_compiler.field import inv_mod
from qudit_compiler.optimize import MS, substitute
from qudit_compiler.phasepoly import Implementation, random_implementation, signature_of


def ccz_phase(x, d):
    return x[0] * x[1] * x[2] % d


def test_gate_invariants():
    with pytest.raises(ValueError):
        Circuit(5, 2, (M(0, 0),))
    with pytest.raises(ValueError):
        Circuit(5, 2, (P(0, 5),))
    with pytest.raises(ValueError):
        SUM(1, 1)
    with pytest.raises(ValueError):
        Circuit(5, 2, (Z(2),))
    with pytest.raises(ValueError):
        Gate("H", (0,))


def test_simulate_examples(fig1_circuit):
    x = np.array([2, 0, 0])
    ph, y = simulate_basis(Circuit(5, 3), x)
    assert ph == 0 and np.array_equal(y, x)
    ph, y = simulate_basis(Circuit(5, 3, (Z(0, 1),)), x)
    assert ph == 2 and np.array_equal(y, x)
    ph, y = simulate_basis(fig1_circuit(5), [1, 1, 1])
    assert ph == 1 and list(y) == [1, 1, 1]


def test_gate_semantics_single_qudit():
    d = 7
    for x in range(d):
        assert simulate_basis(Circuit(d, 1, (S(0, 3),)), [x])[0] == 3 * x * x % d
        assert simulate_basis(Circuit(d, 1, (M(0, 2),)), [x])[0] == 2 * x**3 % d
        assert simulate_basis(Circuit(d, 1, (P(0, 3),)), [x])[1][0] == 3 * x % d
    for c, t in product(range(d), repeat=2):
        assert list(simulate_basis(Circuit(d, 2, (SUM(0, 1),)), [c, t])[1]) == [c, (t + c) % d]
        assert list(simulate_basis(Circuit(d, 2, (SUMINV(0, 1),)), [c, t])[1]) == [c, (t - c) % d]


@pytest.mark.parametrize("d", [5, 7, 11])
def test_fig1_is_ccz(fig1_circuit, d):
    circ = fig1_circuit(d)
    assert circ.m_count == 4
    ph, Y = simulate_all(circ)
    X = np.array(list(product(range(d), repeat=3)))
    assert np.array_equal(Y, X)
    assert np.array_equal(ph, X[:, 0] * X[:, 1] * X[:, 2] % d)


def test_extract_examples():
    prof = extract(Circuit(5, 3))
    assert np.array_equal(prof.E, np.eye(3)) and prof.S.is_zero() and not prof.Q.any() and not prof.L.any()
    d = 5
    # SUM then M on the target then d-1 SUMs to undo
    circ = Circuit(d, 2, (SUM(0, 1), M(1, 1)) + (SUM(0, 1),) * (d - 1))
    prof = extract(circ)
    assert prof.S.entries == {(0, 0, 0): 1, (0, 0, 1): 1, (0, 1, 1): 1, (1, 1, 1): 1}
    assert np.array_equal(prof.E, np.eye(2))
    for l in range(1, d):
        E = extract(Circuit(d, 3, (P(1, l),))).E
        expect = np.eye(3, dtype=int)
        expect[1, 1] = l
        assert np.array_equal(E, expect)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3), st.integers(0, 25))
def test_extract_matches_simulation(seed, n, k):
    d = 5
    circ = random_circuit(n, d, k, seed)
    prof = extract(circ)
    X = np.array(list(product(range(d), repeat=n)))
    ph, Y = simulate_all(circ)
    assert np.array_equal(Y, X @ prof.E.T % d)
    assert np.array_equal(ph, prof.phases(X))


def test_synthesize_cubic_examples(ccz4):
    assert len(synthesize_cubic(Implementation.empty(3, 5))) == 0
    circ = synthesize_cubic(ccz4(5))
    assert circ.m_count == 4
    ph, Y = simulate_all(circ)
    X = np.array(list(product(range(5), repeat=3)))
    assert np.array_equal(ph, X[:, 0] * X[:, 1] * X[:, 2] % 5) and np.array_equal(Y, X)
    single = synthesize_cubic(Implementation([[0], [0], [1]], [3], 5))
    assert single.gates == (M(2, 3),)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([5, 7, 11]), st.integers(1, 4), st.integers(0, 6))
def test_synthesize_cubic_round_trip(seed, d, n, m):
    imp = random_implementation(n, m, d, seed)
    circ = synthesize_cubic(imp)
    assert circ.m_count == imp.m
    prof = extract(circ)
    assert prof.is_pure_cubic()
    assert prof.S == signature_of(imp)


def test_decompose_linear_examples():
    d = 5
    assert len(decompose_linear(np.eye(3, dtype=int), d)) == 0
    E = np.eye(3, dtype=int)
    E[1, 0] = 1
    assert decompose_linear(E, d).gates == (SUM(0, 1),)
    assert decompose_linear(np.diag([2, 1, 1]), d).gates == (P(0, 2),)
    with pytest.raises(linalg.SingularMatrixError):
        decompose_linear([[1, 1], [2, 2]], d)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([5, 7]), st.integers(1, 4))
def test_decompose_linear_random(seed, d, n):
    rng = np.random.default_rng(seed)
    E = rng.integers(0, d, size=(n, n))
    if linalg.rank(E, d) < n:
        return
    circ = decompose_linear(E, d)
    assert all(g.name in ("P", "SUM", "SUMINV") for g in circ.gates)
    assert np.array_equal(extract(circ).E, E)


def test_clifford_diagonal_examples():
    d = 5
    assert len(synthesize_clifford_diagonal(np.zeros((2, 2), int), [0, 0], d)) == 0
    assert synthesize_clifford_diagonal(np.zeros((2, 2), int), [1, 0], d).gates == (Z(0, 1),)
    Q = np.zeros((2, 2), int)
    Q[0, 0] = 1
    assert synthesize_clifford_diagonal(Q, [0, 0], d).gates == (S(0, 1),)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([5, 7]), st.integers(1, 3))
def test_clifford_diagonal_random(seed, d, n):
    rng = np.random.default_rng(seed)
    Q = rng.integers(0, d, size=(n, n))
    Q = (Q + Q.T) % d
    L = rng.integers(0, d, size=n)
    circ = synthesize_clifford_diagonal(Q, L, d)
    assert circ.m_count == 0
    prof = extract(circ)
    X = np.array(list(product(range(d), repeat=n)))
    expect = (np.einsum("ka,ab,kb->k", X, Q, X) + X @ L) % d
    assert np.array_equal(prof.phases(X), expect)
    assert prof.S.is_zero() and np.array_equal(prof.E, np.eye(n))


def test_ccz_families():
    S = build_ccz_family("tensor_power", 1, 5)
    assert S.n == 3 and S.entries == {(0, 1, 2): inv_mod(6, 5)}
    assert build_ccz_family("shared_control", 2, 5).n == 5
    assert build_ccz_family("shared_control", 3, 7).n == 7
    assert set(build_ccz_family("shared_control", 3, 7).entries) == {(0, 1, 2), (0, 3, 4), (0, 5, 6)}
    assert set(build_ccz_family("tensor_power", 2, 5).entries) == {(0, 1, 2), (3, 4, 5)}


def test_circuits_equal(fig1_circuit, ccz4):
    c = random_circuit(3, 5, 20, 4)
    assert circuits_equal(c, c)
    assert circuits_equal(fig1_circuit(5), synthesize_cubic(ccz4(5)))
    assert not circuits_equal(Circuit(5, 1, (Z(0, 1),)), Circuit(5, 1, (Z(0, 2),)))
    with pytest.raises(DimensionTooLarge):
        circuits_equal(Circuit(11, 6), Circuit(11, 6))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 30))
def test_full_pipeline(seed, k):
    d, n = 5, 3
    circ = random_circuit(n, d, k, seed)
    prof = extract(circ)
    rebuilt = synthesize(prof, substitute(prof.S, MS))
    assert circuits_equal(circ, rebuilt)


def test_inverse_circuit():
    c = random_circuit(3, 7, 15, 11)
    ident = c + c.inverse()
    assert circuits_equal(ident, Circuit(7, 3))
