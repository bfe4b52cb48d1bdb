import itertools
import random
from fractions import Fraction

import pytest

from principal_yangian.exact_arith import Cyc, root_of_unity
from principal_yangian.linalg import EchelonBasis, rank, solve
from principal_yangian.principal_gl import (
    CycMat,
    CycVec,
    VerificationError,
    apply_sigma,
    bracket,
    expand_in_principal,
    fourier_vec,
    from_principal,
    permutation_P,
    permutation_P_principal,
    principal_A,
    principal_A_full,
    principal_action,
    principal_decompose,
    shift_E,
    standard_vec,
    trace_form,
    unit_E,
    verify_fourier,
    verify_lie,
    verify_permutation,
)


def rand_mat(n, rng, size=None):
    size = size or n
    phi = len(Cyc.zero(n).coeffs)
    return CycMat(
        n,
        [[Cyc(n, [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(phi)])
          for _ in range(size)] for _ in range(size)],
    )


def w(n, k):
    return root_of_unity(n, k)


# -- unit matrices ------------------------------------------------------------

def test_unit_E_examples():
    assert unit_E(3, 1, 1) @ unit_E(3, 1, 2) == unit_E(3, 1, 2)
    assert bracket(unit_E(3, 1, 2), unit_E(3, 2, 1)) == unit_E(3, 1, 1) - unit_E(3, 2, 2)
    assert bracket(unit_E(4, 1, 2), unit_E(4, 3, 4)).is_zero()
    with pytest.raises(IndexError):
        unit_E(3, 0, 1)
    with pytest.raises(IndexError):
        unit_E(3, 1, 4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cartan_weyl_brackets(n):
    r = range(1, n + 1)
    zero = CycMat.zeros(n, n)
    for i, k, l, j in itertools.product(r, repeat=4):
        lhs = bracket(unit_E(n, i, k), unit_E(n, l, j))
        rhs = (unit_E(n, i, j) if k == l else zero) - (unit_E(n, l, k) if i == j else zero)
        assert lhs == rhs


# -- principal basis ----------------------------------------------------------

def test_principal_A_examples():
    assert principal_A(4, 0, 0) == CycMat.identity(4, 4)
    n = 3
    diag = CycMat.from_entries(n, n, n, {(0, 0): w(n, 1), (1, 1): w(n, 2), (2, 2): 1})
    assert principal_A(n, 1, 0) == diag
    by_hand = (
        unit_E(n, 1, 2).scale(w(n, 1)) + unit_E(n, 2, 3).scale(w(n, 2)) + unit_E(n, 3, 1)
    )
    assert principal_A(n, 1, 1) == by_hand


@pytest.mark.parametrize("n", range(2, 7))
def test_principal_components_sum_to_A_i(n):
    for i in range(n):
        total = CycMat.zeros(n, n)
        for j in range(n):
            total = total + principal_A(n, i, j)
        assert total == principal_A_full(n, i)


def test_principal_decompose_examples():
    n = 4
    parts = principal_decompose(CycMat.identity(n, n))
    assert parts[0] == CycMat.identity(n, n)
    assert all(parts[d].is_zero() for d in range(1, n))
    generic = CycMat(n, [[10 * r + c + 1 for c in range(n)] for r in range(n)])
    x1 = parts = principal_decompose(generic)[1]
    support = {(r, c) for r, c, _ in x1.entries()}
    assert support == {(0, 1), (1, 2), (2, 3), (3, 0)}
    for r, c in support:
        assert x1[r, c] == generic[r, c]
    with pytest.raises(ValueError):
        principal_decompose(CycMat.zeros(3, 2, 3))


@pytest.mark.parametrize("n", range(2, 7))
def test_principal_decompose_invariants(n):
    rng = random.Random(n)
    x = rand_mat(n, rng)
    parts = principal_decompose(x)
    assert parts.total() == x
    for d in range(n):
        for r, c, _ in parts[d].entries():
            assert (c - r) % n == d
    for i, j in itertools.product(range(n), repeat=2):
        p = principal_decompose(principal_A(n, i, j))
        assert p[j] == principal_A(n, i, j)
        assert all(p[d].is_zero() for d in range(n) if d != j)


def test_sigma_examples():
    n = 3
    assert apply_sigma(unit_E(n, 1, 2)) == unit_E(n, 1, 2).scale(w(n, 1))
    assert apply_sigma(unit_E(n, 2, 1)) == unit_E(n, 2, 1).scale(w(n, -1))
    assert apply_sigma(CycMat.identity(n, n)) == CycMat.identity(n, n)


@pytest.mark.parametrize("n", range(2, 9))
def test_sigma_eigenvectors_and_automorphism(n):
    for i, j in itertools.product(range(n), repeat=2):
        assert apply_sigma(principal_A(n, i, j)) == principal_A(n, i, j).scale(w(n, j))
    rng = random.Random(100 + n)
    for _ in range(10):
        x, y = rand_mat(n, rng), rand_mat(n, rng)
        assert apply_sigma(x @ y) == apply_sigma(x) @ apply_sigma(y)


@pytest.mark.parametrize("n", range(2, 9))
def test_principal_product_and_commutator_laws(n):
    for i, j, i2, j2 in itertools.product(range(n), repeat=4):
        a, b = principal_A(n, i, j), principal_A(n, i2, j2)
        target = principal_A(n, i + i2, j + j2)
        assert a @ b == target.scale(w(n, j * i2))
        assert bracket(a, b) == target.scale(w(n, j * i2) - w(n, j2 * i))


@pytest.mark.parametrize("n", range(2, 9))
def test_principal_cartan(n):
    E = shift_E(n)
    assert E == principal_A(n, 0, 1)
    powers = [E**k for k in range(n)]
    for k, i, j in itertools.product(range(n), repeat=3):
        assert bracket(powers[k], principal_A(n, i, j)) == principal_A(n, i, j + k).scale(w(n, k * i) - 1)
    for p, q in itertools.product(powers, repeat=2):
        assert bracket(p, q).is_zero()
    assert rank(n, [p.flat() for p in powers]) == n


# -- invariant form -------------------------------------------------------------

def test_trace_form_examples():
    n = 3
    assert trace_form(principal_A(n, 1, 2), principal_A(n, 2, 1)) == w(n, -2) * 3
    assert trace_form(principal_A(n, 1, 2), principal_A(n, 2, 1)) == w(n, 1) * 3
    assert trace_form(principal_A(n, 1, 0), principal_A(n, 1, 0)) == 0
    assert trace_form(unit_E(n, 1, 2), unit_E(n, 2, 1)) == 1
    with pytest.raises(ValueError):
        trace_form(CycMat.identity(3, 3), CycMat.identity(3, 2))


@pytest.mark.parametrize("n", range(2, 9))
def test_trace_form_formula(n):
    for i, j, i2, j2 in itertools.product(range(n), repeat=4):
        expected = w(n, -i * j) * n if (i + i2) % n == 0 and (j + j2) % n == 0 else 0
        assert trace_form(principal_A(n, i, j), principal_A(n, i2, j2)) == expected


# -- permutation operator -------------------------------------------------------

def test_permutation_n2_by_hand():
    P = permutation_P(2)
    v = lambda i, j: CycVec.basis(2, 4, 2 * i + j)
    assert P @ v(0, 1) == v(1, 0)
    assert P @ v(1, 0) == v(0, 1)
    assert P @ v(0, 0) == v(0, 0)
    assert P @ v(1, 1) == v(1, 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_permutation_two_expansions(n):
    P = permutation_P(n, verify=True)
    assert P == permutation_P_principal(n)
    assert P @ P == CycMat.identity(n, n * n)


# -- dual-basis expansion --------------------------------------------------------

def test_expand_E11_against_linear_solve():
    n = 2
    x = unit_E(n, 1, 1)
    coeffs = expand_in_principal(x)
    # oracle: solve sum c_kl A_kl = x as a 4x4 linear system in the entries
    keys = [(k, l) for k in range(n) for l in range(n)]
    cols = [principal_A(n, k, l).flat() for k, l in keys]
    rows = [[cols[c][r] for c in range(len(keys))] for r in range(n * n)]
    sol = solve(n, rows, x.flat())
    assert [coeffs[k] for k in keys] == sol
    assert coeffs[0, 0] == Fraction(1, 2)
    assert coeffs[1, 0] == Fraction(-1, 2)
    assert coeffs[0, 1] == 0 and coeffs[1, 1] == 0


def test_expand_basis_element():
    c = expand_in_principal(principal_A(3, 1, 2))
    assert c[1, 2] == 1
    assert all(v == 0 for k, v in c.items() if k != (1, 2))


@pytest.mark.parametrize("n", range(2, 7))
def test_expand_reconstructs(n):
    rng = random.Random(7 * n)
    for _ in range(10):
        x = rand_mat(n, rng)
        assert from_principal(n, expand_in_principal(x)) == x


# -- Fourier basis ---------------------------------------------------------------

def test_fourier_examples():
    assert fourier_vec(3, 0) == CycVec(3, [1, 1, 1])
    n = 3
    image = principal_A(n, 1, 1) @ fourier_vec(n, 1)
    assert image == CycVec(n, [1, w(n, 2), w(n, 1)])
    assert image == fourier_vec(n, 2) * w(n, 1)
    assert principal_action(1, 1, 1, 3) == (w(3, 1), 2)
    for i in range(n):
        assert principal_A(n, 0, 0) @ fourier_vec(n, i) == fourier_vec(n, i)
        for k in range(n):
            assert principal_action(k, 0, i, n) == (Cyc.one(n), (i + k) % n)


@pytest.mark.parametrize("n", range(2, 9))
def test_fourier_pairing_and_inversion(n):
    phis = [fourier_vec(n, i) for i in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        assert phis[i].dot(phis[j]) == (n if (i + j) % n == 0 else 0)
        assert standard_vec(n, i + 1).dot(standard_vec(n, j + 1)) == (1 if i == j else 0)
    for i in range(1, n + 1):
        acc = CycVec(n, [0] * n)
        for k in range(n):
            acc = acc + phis[k] * w(n, -i * k)
        assert acc == standard_vec(n, i) * n


def test_principal_action_raises_on_mismatch(monkeypatch):
    import principal_yangian.principal_gl as gl

    monkeypatch.setattr(gl, "fourier_vec", lambda n, i: CycVec.basis(n, n, 0))
    with pytest.raises(VerificationError) as info:
        gl.principal_action(1, 1, 1, 3)
    assert info.value.lhs is not None and info.value.rhs is not None


@pytest.mark.parametrize("n", [2, 3, 5])
def test_batch_verifiers(n):
    assert verify_lie(n).passed
    assert verify_fourier(n).passed
    assert verify_permutation(n).passed


# -- matrix plumbing ---------------------------------------------------------------

def test_matrix_json_roundtrip():
    x = rand_mat(5, random.Random(3), size=3)
    data = x.to_json()
    assert (data["rows"], data["cols"], data["order"]) == (3, 3, 5)
    assert CycMat.from_json(data) == x


def test_matrix_associativity_and_kron():
    rng = random.Random(11)
    x, y, z = (rand_mat(4, rng) for _ in range(3))
    assert (x @ y) @ z == x @ (y @ z)
    a, b, c, d = (rand_mat(3, rng, 2) for _ in range(4))
    assert a.kron(b) @ c.kron(d) == (a @ c).kron(b @ d)


def test_echelon_basis():
    n = 3
    eb = EchelonBasis(n, 3)
    assert eb.insert([Cyc.one(n), Cyc.one(n), Cyc.zero(n)])
    assert eb.insert([Cyc.zero(n), root_of_unity(n), Cyc.one(n)])
    assert not eb.insert([Cyc.one(n), Cyc.one(n) + root_of_unity(n), Cyc.one(n)])
    assert eb.rank == 2
    assert eb.contains([Cyc.rational(n, 2), Cyc.rational(n, 2), Cyc.zero(n)])
