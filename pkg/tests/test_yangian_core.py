import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from principal_yangian.exact_arith import root_of_unity
from principal_yangian.principal_gl import CycMat, bracket, permutation_P, principal_A, unit_E
from principal_yangian.yangian_core import (
    BiPolyMat,
    EvaluationVariant,
    ExponentVariant,
    GenTable,
    InverseVariant,
    Presentation,
    TableError,
    embed,
    make_table,
    operator_from_table,
    principal_evaluation_table,
    principal_relation_residual,
    qybe_residual,
    random_table,
    rtt_residual,
    s_from_t,
    survey_exponent_variants,
    t_from_s,
    table_from_operator,
    verify_isomorphism,
    verify_principal_relations,
)


def w(n, k):
    return root_of_unity(n, k)


def cw_table(n, blocks, depth=1):
    """Closed level-one Cartan-Weyl table with T_ij^(1) = blocks(i, j)."""
    return make_table(
        Presentation.CARTAN_WEYL, n, depth, n,
        {(i, j, 1): blocks(i, j) for i in range(1, n + 1) for j in range(1, n + 1)},
        closed=True,
    )


# -- plain integer-matrix oracle for the R-matrix identities ----------------------

def _mm(x, y):
    size = len(x)
    cols = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in x]


def _kron(x, y):
    return [[a * b for a in xr for b in yr] for xr in x for yr in y]


def _eye(d):
    return [[int(r == c) for c in range(d)] for r in range(d)]


def _swap(n):
    d = n * n
    out = [[0] * d for _ in range(d)]
    for i in range(n):
        for j in range(n):
            out[j * n + i][i * n + j] = 1
    return out


def _swap23(n, m):
    """Permutation of (C^m) (x) (C^n) (x) (C^n) exchanging the last two factors."""
    d = m * n * n
    out = [[0] * d for _ in range(d)]
    for a in range(m):
        for i in range(n):
            for j in range(n):
                out[(a * n + j) * n + i][(a * n + i) * n + j] = 1
    return out


def _lin(c, x, P):
    """c*I - P (the cleared R-matrix at parameter c)."""
    return [[c * int(r == s) - P[r][s] for s in range(len(P))] for r in range(len(P))]


def qybe_grid_residuals(n, points):
    P = _swap(n)
    I = _eye(n)
    P12 = _kron(P, I)
    P23 = _kron(I, P)
    S23 = _kron(I, P)
    P13 = _mm(_mm(S23, P12), S23)
    out = []
    for u, v in points:
        r12, r13, r23 = _lin(u, None, P12), _lin(u + v, None, P13), _lin(v, None, P23)
        lhs = _mm(_mm(r12, r13), r23)
        rhs = _mm(_mm(r23, r13), r12)
        out.append(lhs != rhs)
    return out


def rtt_grid_residuals(x, n, points):
    """x: integer matrix on W (x) C^n; checks (u-v)uv [R T1 T2 - T2 T1 R] = 0."""
    m = len(x) // n
    I_w, I_n = _eye(m), _eye(n)
    X1 = _kron(x, I_n)
    S = _swap23(n, m)
    X2 = _mm(_mm(S, X1), S)
    R0 = _kron(I_w, _swap(n))
    d = len(X1)
    out = []
    for u, v in points:
        t1 = [[u * int(r == s) + X1[r][s] for s in range(d)] for r in range(d)]
        t2 = [[v * int(r == s) + X2[r][s] for s in range(d)] for r in range(d)]
        r = _lin(u - v, None, R0)
        out.append(_mm(_mm(r, t1), t2) != _mm(_mm(t2, t1), r))
    return out


GRID = [(u, v) for u in (2, 3, 5, 7) for v in (-1, 4, 6, 11)]


def _int_matrix(m: CycMat):
    return [[int(m[r, c].as_rational()) for c in range(m.cols)] for r in range(m.rows)]


# -- change of presentation ---------------------------------------------------

def test_s_from_t_unit_table_n2():
    n = 2
    s = s_from_t(cw_table(n, lambda i, j: unit_E(n, i, j)))
    half = Fraction(1, 2)
    by_hand = {
        (0, 0): CycMat.identity(n, n).scale(half),
        (0, 1): (unit_E(n, 1, 2) + unit_E(n, 2, 1)).scale(half),
        (1, 0): (unit_E(n, 2, 2) - unit_E(n, 1, 1)).scale(half),
        (1, 1): (unit_E(n, 2, 1) - unit_E(n, 1, 2)).scale(half),
    }
    for (k, l), mat in by_hand.items():
        assert s.get(k, l, 1) == mat


@pytest.mark.parametrize("n", range(2, 6))
def test_s_from_t_closed_forms(n):
    s = s_from_t(cw_table(n, lambda i, j: unit_E(n, i, j)))
    s_t = s_from_t(cw_table(n, lambda i, j: unit_E(n, j, i)))
    for k, l in itertools.product(range(n), repeat=2):
        assert s.get(k, l, 1) == principal_A(n, -k, l).scale(Fraction(1, n))
        assert s_t.get(k, l, 1) == principal_A(n, -k, -l).scale(w(n, k * l) * Fraction(1, n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_derived_evaluation_table(n):
    s = principal_evaluation_table(n, EvaluationVariant.DERIVED_FROM_P)
    for k, l in itertools.product(range(n), repeat=2):
        assert s.get(k, l, 1) == principal_A(n, -k, -l).scale(-w(n, k * l) * Fraction(1, n))
    assert s.get(0, 0, 1) == CycMat.identity(n, n).scale(Fraction(-1, n))
    assert operator_from_table(t_from_s(s)) == -permutation_P(n)


def test_prop41_table():
    s = principal_evaluation_table(3, EvaluationVariant.PAPER_PROP41)
    assert s.get(1, 1, 1) == principal_A(3, 1, 1)
    assert s.get(1, 1, 5).is_zero()
    with pytest.raises(ValueError):
        principal_evaluation_table(1, EvaluationVariant.PAPER_PROP41)


def test_t_from_s_single_generator():
    n = 3
    x = principal_A(n, 1, 2)
    s = make_table(Presentation.PRINCIPAL, n, 1, n, {(1, 2, 1): x})
    t = t_from_s(s)
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        expected = x.scale(w(n, i)) if (j - i) % n == 2 else CycMat.zeros(n, n)
        assert t.get(i, j, 1) == expected


@pytest.mark.parametrize("n", range(2, 7))
def test_round_trip_corrected(n):
    rep = verify_isomorphism(n, depth=3, seed=n)
    assert rep.passed and rep.indices_tested == 5 * 2 * n * n * 3


@pytest.mark.parametrize("n", [3, 4, 5])
def test_round_trip_as_printed_fails(n):
    rep = verify_isomorphism(n, depth=2, seed=1, variant=InverseVariant.AS_PRINTED)
    assert not rep.passed


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 6), depth=st.integers(1, 4), seed=st.integers(0, 10**6))
def test_round_trip_and_linearity_property(n, depth, seed):
    rng = random.Random(seed)
    s = random_table(Presentation.PRINCIPAL, n, depth, 2, rng)
    t = random_table(Presentation.CARTAN_WEYL, n, depth, 2, rng)
    assert s_from_t(t_from_s(s)) == s
    assert t_from_s(s_from_t(t)) == t
    t2 = random_table(Presentation.CARTAN_WEYL, n, depth, 2, rng)
    scale = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
    assert s_from_t(t + t2.scale(scale)) == s_from_t(t) + s_from_t(t2).scale(scale)


def test_table_errors():
    t = random_table(Presentation.CARTAN_WEYL, 2, 2, 2, random.Random(0))
    with pytest.raises(TableError):
        t.get(1, 1, 3)
    with pytest.raises(TableError):
        t_from_s(t)
    with pytest.raises(TableError):
        s_from_t(s_from_t(t))
    with pytest.raises(TableError):
        make_table(Presentation.PRINCIPAL, 2, 1, 2, {(0, 0, 2): CycMat.identity(2, 2)})
    with pytest.raises(TableError):
        t + random_table(Presentation.CARTAN_WEYL, 2, 3, 2, random.Random(0))
    s = s_from_t(t)
    with pytest.raises(TableError):
        principal_relation_residual(s, 2, 0, (0, 0, 0, 0))
    with pytest.raises(TableError):
        table_from_operator(CycMat.identity(3, 5), 3)


def test_level_zero_convention():
    s = make_table(Presentation.PRINCIPAL, 3, 1, 2, {})
    assert s.get(0, 0, 0) == CycMat.identity(3, 2)
    assert s.get(3, 6, 0) == CycMat.identity(3, 2)
    assert s.get(1, 0, 0).is_zero()
    t = make_table(Presentation.CARTAN_WEYL, 3, 1, 2, {})
    assert t.get(2, 2, 0) == CycMat.identity(3, 2)
    assert t.get(1, 2, 0).is_zero()


def test_operator_table_round_trip():
    rng = random.Random(5)
    t = random_table(Presentation.CARTAN_WEYL, 3, 1, 2, rng)
    back = table_from_operator(operator_from_table(t), 3)
    assert back.entries == t.entries


# -- R-matrix identities --------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_qybe_residual_vanishes(n):
    res = qybe_residual(n)
    assert res.is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_qybe_grid_oracle(n):
    assert not any(qybe_grid_residuals(n, GRID))


@pytest.mark.parametrize("n", [2, 3])
def test_qybe_negative_controls(n):
    P = permutation_P(n)
    diag = CycMat.from_entries(n, n * n, n * n, {(r, r): r + 1 for r in range(n * n)})
    assert not qybe_residual(n, flip=P + diag).is_zero()
    assert not qybe_residual(n, flip=P @ diag).is_zero()
    # rescaling P only rescales the spectral parameter, so 2P is still a solution
    assert qybe_residual(n, flip=P.scale(2)).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_rtt_evaluation_module(n):
    x = -permutation_P(n)
    assert rtt_residual(x, n).is_zero()
    assert not any(rtt_grid_residuals(_int_matrix(x), n, GRID))


@pytest.mark.parametrize("n", [2, 3])
def test_rtt_controls(n):
    P = permutation_P(n)
    assert rtt_residual(CycMat.identity(n, n * n), n).is_zero()
    assert not rtt_residual(P, n).is_zero()
    assert any(rtt_grid_residuals(_int_matrix(P), n, GRID))
    diag = CycMat.from_entries(n, n * n, n * n, {(r, r): r for r in range(n * n)})
    assert not rtt_residual(diag, n).is_zero()


def test_bipoly_and_embed_basics():
    n = 2
    one = CycMat.identity(n, 2)
    p = BiPolyMat.linear(one, u=1, v=2)
    assert p.degrees == (1, 1)
    assert (p - p).is_zero()
    sq = p @ p
    assert sq.degrees == (2, 2)
    P = permutation_P(n)
    assert embed(P, (n, n), (1, 0)) == P
    assert embed(P, (n, n), (0, 1)) == P
    assert embed(unit_E(n, 1, 2), (n, n), (0,)) == unit_E(n, 1, 2).kron(CycMat.identity(n, n))


# -- principal relations -----------------------------------------------------------

def molev_residuals(t: GenTable, max_level: int = 2):
    """T-form defining relations of Y(gl(n)), counted over all index tuples.

    [T_ij^(r+1), T_kl^(s)] - [T_ij^(r), T_kl^(s+1)] = T_kj^(r) T_il^(s) - T_kj^(s) T_il^(r)
    """
    bad = 0
    for r, s in itertools.product(range(max_level + 1), repeat=2):
        for i, j, k, l in itertools.product(range(1, t.n + 1), repeat=4):
            lhs = bracket(t.get(i, j, r + 1), t.get(k, l, s)) - bracket(t.get(i, j, r), t.get(k, l, s + 1))
            rhs = t.get(k, j, r) @ t.get(i, l, s) - t.get(k, j, s) @ t.get(i, l, r)
            bad += lhs != rhs
    return bad


@pytest.mark.parametrize("n", [2, 3])
def test_t_form_oracle_on_evaluation_tables(n):
    derived = principal_evaluation_table(n, EvaluationVariant.DERIVED_FROM_P)
    prop41 = principal_evaluation_table(n, EvaluationVariant.PAPER_PROP41)
    assert molev_residuals(t_from_s(derived)) == 0
    assert molev_residuals(cw_table(n, lambda i, j: unit_E(n, i, j))) == 0
    assert molev_residuals(t_from_s(prop41)) > 0
    assert molev_residuals(cw_table(n, lambda i, j: unit_E(n, j, i))) > 0


@pytest.mark.parametrize("n", [2, 3])
def test_survey_on_derived_table(n):
    counts = survey_exponent_variants(principal_evaluation_table(n, EvaluationVariant.DERIVED_FROM_P))
    survivors = [v for v, k in counts.items() if k == 0]
    assert survivors == [ExponentVariant.CORRECTED]


@pytest.mark.parametrize("n", [2, 3])
def test_corrected_relations_agree_with_t_form(n):
    # both evaluation modules of C^n (x and -x^T) satisfy the corrected relations
    s = s_from_t(cw_table(n, lambda i, j: unit_E(n, i, j)))
    assert verify_principal_relations(s).passed
    bad = s_from_t(cw_table(n, lambda i, j: unit_E(n, j, i)))
    assert not verify_principal_relations(bad).passed


@pytest.mark.parametrize("n", [2, 3])
def test_prop41_table_fails_every_variant(n):
    counts = survey_exponent_variants(principal_evaluation_table(n, EvaluationVariant.PAPER_PROP41))
    assert all(k > 0 for k in counts.values())


def test_trivial_table_survey():
    # only level zero is nonzero, so the quadratic terms must cancel on their own
    s = make_table(Presentation.PRINCIPAL, 3, 3, 2, {})
    counts = survey_exponent_variants(s)
    assert counts[ExponentVariant.CORRECTED] == 0
    assert counts[ExponentVariant.AS_PRINTED] > 0
    assert counts[ExponentVariant.THEOREM] > 0


def test_relation_residual_is_exact_matrix():
    s = principal_evaluation_table(3, EvaluationVariant.DERIVED_FROM_P)
    r = principal_relation_residual(s, 0, 0, (1, 2, 2, 1), ExponentVariant.THEOREM)
    assert isinstance(r, CycMat) and r.shape == (3, 3)
    rep = verify_principal_relations(s, ExponentVariant.THEOREM, keep_residuals=True)
    assert rep.failures and all("residual" in f for f in rep.failures)
