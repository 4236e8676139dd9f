import random

import pytest
from hypothesis import given, strategies as st

from glq.gflinear import (BudgetExceeded, DimensionMismatch, FqMatrix, FqPoly,
                          NotPrime, ReduciblePolynomial, SingularInput, WrongField,
                          ZeroConstantTerm, class_representative, companion_matrix,
                          enumerate_all_rows, enumerate_gl, enumerate_unitary,
                          field_of_order, frobenius_conj, gl_order, hermitian_form,
                          kernel_chain, kernel_dim, make_field, mat_mul,
                          monic_irreducibles, prime_power, tilde,
                          unipotent_partition, unitary_order)
from glq.measure import gl_order_formal
from glq.partition import Partition, enumerate_partitions

P = lambda *parts: Partition(tuple(parts))


def z_minus_one(F):
    return FqPoly.z_minus(F, 1)


def brute_gl(n, F):
    return [rows for rows in enumerate_all_rows(n, F) if FqMatrix(F, rows).rank() == n]


def brute_unitary(n, q):
    """Filter every matrix over F_{q^2} by conj(a)^T a == I."""
    F = field_of_order(q * q)
    out = []
    ident = FqMatrix.identity(F, n)
    for rows in enumerate_all_rows(n, F):
        a = FqMatrix(F, rows)
        if a.conj_transpose() @ a == ident:
            out.append(rows)
    return out


@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 2)])
def test_field_axioms(p, e):
    F = make_field(p, e)
    els = list(F.elements())
    sample = els if F.q <= 9 else els[:9]
    for a in sample:
        assert F.add[a][0] == a and F.mul[a][1] == a
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
        for b in sample:
            assert F.add[a][b] == F.add[b][a]
            assert F.mul[a][b] == F.mul[b][a]
            for c in sample:
                assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
                assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]
    nonzero_products = {F.mul[a][b] for a in els[1:] for b in els[1:]}
    assert 0 not in nonzero_products


def test_defining_polynomials():
    assert make_field(2, 2).modulus == (1, 1, 1)        # z^2 + z + 1
    assert make_field(3, 2).modulus == (1, 0, 1)        # z^2 + 1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)     # z^3 + z + 1
    assert make_field(2, 1).q == 2
    with pytest.raises(NotPrime):
        make_field(4, 1)
    assert prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        prime_power(6)


def test_frobenius_conj():
    F4 = make_field(2, 2)
    # omega = packed 2 (the class of z)
    assert frobenius_conj(2, F4) == F4.mul[2][2]
    for x in (0, 1):
        assert frobenius_conj(x, F4) == x
    F9 = make_field(3, 2)
    for x in F9.elements():
        assert frobenius_conj(frobenius_conj(x, F9), F9) == x
        if x < 3:
            assert frobenius_conj(x, F9) == x
    with pytest.raises(WrongField):
        frobenius_conj(1, make_field(2, 3))


def test_tilde_examples():
    for q in (2, 3):
        F = field_of_order(q * q)
        assert tilde(z_minus_one(F)) == z_minus_one(F)
    F9 = field_of_order(9)
    g = F9.generator()
    t = tilde(FqPoly.z_minus(F9, g))
    assert t == FqPoly.z_minus(F9, F9.power(g, 5))
    assert t != FqPoly.z_minus(F9, g)
    with pytest.raises(ZeroConstantTerm):
        tilde(FqPoly(F9, (0, 1)))


@pytest.mark.parametrize("q,max_deg", [(2, 3), (3, 2)])
def test_tilde_involution_and_odd_degree(q, max_deg):
    F = field_of_order(q * q)
    for d in range(1, max_deg + 1):
        irr = [phi for phi in monic_irreducibles(F, d) if phi.coeffs != (0, 1)]
        for phi in irr:
            t = tilde(phi)
            assert t.degree == d and t.is_monic and t.is_irreducible()
            assert tilde(t) == phi
            if t == phi:
                assert d % 2 == 1


def test_irreducible_counts():
    # necklace counts over F_4: 4, 6, 20
    F4 = field_of_order(4)
    assert [len(monic_irreducibles(F4, d)) for d in (1, 2, 3)] == [4, 6, 20]
    assert len(monic_irreducibles(field_of_order(9), 2)) == 36


def test_companion_examples():
    F2, F3 = make_field(2), make_field(3)
    assert companion_matrix(z_minus_one(F2)).rows == ((1,),)
    assert companion_matrix(FqPoly.monic(F2, (1, 0))).rows == ((0, 1), (1, 0))
    assert z_minus_one(F3) ** 2 == FqPoly.monic(F3, (1, 1))
    assert companion_matrix(z_minus_one(F3) ** 2).rows == ((0, 1), (2, 2))


def test_class_representative_examples():
    F = make_field(2)
    one = z_minus_one(F)
    assert class_representative([(one, P(1, 1))]) == FqMatrix.identity(F, 2)
    assert class_representative([(one, P(2))]) == companion_matrix(one ** 2)
    with pytest.raises(DimensionMismatch):
        class_representative([(one, P(2))], n=3)
    with pytest.raises(ReduciblePolynomial):
        class_representative([(one ** 2, P(1))])


@pytest.mark.parametrize("q", [2, 3])
def test_partition_roundtrip(q):
    F = field_of_order(q)
    for lam in enumerate_partitions(5):
        if lam.size == 0:
            continue
        alpha = class_representative([(z_minus_one(F), lam)])
        assert unipotent_partition(alpha) == lam


def test_kernel_and_unipotent_examples():
    F2 = make_field(2)
    assert kernel_dim(FqMatrix.zero(F2, 3)) == 3
    assert kernel_dim(FqMatrix.identity(F2, 3)) == 0
    C = companion_matrix(z_minus_one(F2) ** 2)
    assert kernel_dim(C - FqMatrix.identity(F2, 2)) == 1
    assert unipotent_partition(FqMatrix.identity(F2, 2)) == P(1, 1)
    assert unipotent_partition(C) == P(2)
    assert unipotent_partition(companion_matrix(FqPoly.monic(F2, (1, 1)))) == P()
    with pytest.raises(SingularInput):
        unipotent_partition(FqMatrix.zero(F2, 2))


def test_mixed_class_partition():
    F3 = make_field(3)
    other = FqPoly.monic(F3, (1, 0))   # z^2 + 1, irreducible over F_3
    alpha = class_representative([(z_minus_one(F3), P(2, 1)), (other, P(1))])
    assert alpha.n == 5
    assert unipotent_partition(alpha) == P(2, 1)


def _mat_pow(a, k):
    out = FqMatrix.identity(a.field, a.n)
    while k:
        if k & 1:
            out = out @ a
        a = a @ a
        k >>= 1
    return out


def test_partition_conjugation_invariant():
    rng = random.Random(3)
    for q, n in [(2, 3), (3, 2), (3, 3)]:
        F = field_of_order(q)
        group = list(enumerate_gl(n, F))
        order = gl_order(n, q)
        for lam in enumerate_partitions(n, size=n):
            alpha = class_representative([(z_minus_one(F), lam)])
            for g in rng.sample(group, min(200, len(group))):
                gi = _mat_pow(g, order - 1)
                assert g @ gi == FqMatrix.identity(F, n)
                assert unipotent_partition(g @ alpha @ gi) == lam


def test_kernel_chain_valid_conjugate_everywhere():
    for q, n in [(2, 3), (3, 2)]:
        F = field_of_order(q)
        for a in enumerate_gl(n, F):
            dims = kernel_chain(F, a.rows)
            cols = [b - c for c, b in zip([0] + dims, dims)]
            assert all(x >= y > 0 for x, y in zip(cols, cols[1:]))


def test_orders():
    assert [unitary_order(n, 2) for n in (1, 2, 3)] == [3, 18, 648]
    for n in range(5):
        for q in (2, 3, 4):
            assert abs(gl_order_formal(n, -q)) == unitary_order(n, q)
            assert gl_order(n, q) == gl_order_formal(n, q)


@pytest.mark.parametrize("n,q,expected", [(1, 2, 1), (2, 2, 6), (2, 3, 48), (3, 2, 168)])
def test_gl_enumeration_against_brute_force(n, q, expected):
    F = field_of_order(q)
    got = [a.rows for a in enumerate_gl(n, F)]
    assert got == brute_gl(n, F)
    assert len(got) == expected == gl_order(n, q)


def test_gl_enumeration_large():
    assert sum(1 for _ in enumerate_gl(3, field_of_order(3))) == 11232


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)])
def test_unitary_enumeration_against_brute_force(n, q):
    got = [a.rows for a in enumerate_unitary(n, q)]
    assert sorted(got) == got
    assert got == brute_unitary(n, q)
    assert len(got) == unitary_order(n, q)


def test_shards_partition_the_enumeration():
    F = field_of_order(3)
    full = [a.rows for a in enumerate_gl(2, F)]
    for m in (1, 2, 3, 7):
        merged = [a.rows for i in range(m) for a in enumerate_gl(2, F, shard=(i, m))]
        assert merged == full
    full_u = [a.rows for a in enumerate_unitary(2, 2)]
    assert [a.rows for i in range(4) for a in enumerate_unitary(2, 2, shard=(i, 4))] == full_u


def test_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_gl(3, field_of_order(2), budget=100))
    with pytest.raises(BudgetExceeded):
        list(enumerate_unitary(3, 3))


def test_hermitian_form_sesquilinear():
    F = field_of_order(9)
    rng = random.Random(1)
    for _ in range(50):
        x = [rng.randrange(9) for _ in range(3)]
        y = [rng.randrange(9) for _ in range(3)]
        c = rng.randrange(9)
        assert hermitian_form(F, y, x) == F.conj[hermitian_form(F, x, y)]
        cx = [F.mul[c][a] for a in x]
        assert hermitian_form(F, cx, y) == F.mul[c][hermitian_form(F, x, y)]


def test_matrix_serialization_roundtrip():
    F = field_of_order(4)
    a = class_representative([(z_minus_one(F), P(2, 1))])
    assert FqMatrix.from_vector(F, a.to_vector()) == a
    assert all(0 <= x < 4 for x in a.to_vector())


def test_fields_pickle():
    import pickle
    F = make_field(3, 2)
    assert pickle.loads(pickle.dumps(F)) is F


def _matrix_st(n, Q):
    return st.lists(st.lists(st.integers(0, Q - 1), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(lambda rows: tuple(map(tuple, rows)))


@given(st.sampled_from([2, 3, 4, 9]), st.data())
def test_rank_properties(Q, data):
    F = field_of_order(Q)
    n = data.draw(st.integers(1, 4))
    A = data.draw(_matrix_st(n, Q))
    B = data.draw(_matrix_st(n, Q))
    C = data.draw(_matrix_st(n, Q))
    At = tuple(zip(*A))
    assert FqMatrix(F, A).rank() == FqMatrix(F, At).rank()
    AB = mat_mul(F, A, B)
    assert FqMatrix(F, AB).rank() <= min(FqMatrix(F, A).rank(), FqMatrix(F, B).rank())
    assert mat_mul(F, AB, C) == mat_mul(F, A, mat_mul(F, B, C))
    assert kernel_dim(FqMatrix(F, A)) == n - FqMatrix(F, A).rank()


@given(st.sampled_from([2, 3]), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_kernel_chain_reads_jordan_type(q, parts):
    F = field_of_order(q)
    lam = Partition(tuple(sorted(parts, reverse=True)))
    alpha = class_representative([(z_minus_one(F), lam)])
    dims = kernel_chain(F, alpha.rows)
    assert dims[0] == len(lam) and dims[-1] == lam.size
