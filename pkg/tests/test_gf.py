"""Field arithmetic: axioms, tables, construction errors."""

import pytest

from minicode.gf import FieldSpec, field_arith, field_by_order, is_prime, make_field

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9]


def brute_poly_mul(p, e, modulus, a, b):
    """Independent polynomial multiplication mod (p, modulus)."""
    def digits(v):
        out = []
        for _ in range(e):
            v, r = divmod(v, p)
            out.append(r)
        return out

    da, db = digits(a), digits(b)
    prod = [0] * (2 * e - 1 if e > 1 else 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    # long division by the monic modulus
    mod = list(modulus) if modulus else [0, 1]
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            for j in range(e + 1):
                prod[i - e + j] = (prod[i - e + j] - c * mod[j]) % p
    value = 0
    for c in reversed(prod[:e]):
        value = value * p + c
    return value


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    f = field_by_order(q)
    elems = list(f.elements())
    for a in elems:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0
        assert f.add(a, f.neg(a)) == 0
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_inverse_bijection_and_involution(q):
    f = field_by_order(q)
    seen = set()
    for a in f.nonzero():
        inv = f.inv(a)
        assert f.mul(a, inv) == 1
        assert f.inv(inv) == a
        seen.add(inv)
    assert seen == set(f.nonzero())


def brute_poly_add(p, e, a, b):
    out = 0
    place = 1
    for _ in range(e):
        out += ((a % p + b % p) % p) * place
        a //= p
        b //= p
        place *= p
    return out


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_tables_match_brute_force_polynomials(q):
    f = field_by_order(q)
    for a in f.elements():
        for b in f.elements():
            assert f.mul(a, b) == brute_poly_mul(f.p, f.e, f.modulus, a, b)
            assert f.add(a, b) == brute_poly_add(f.p, f.e, a, b)


def test_prime_field_examples():
    f3 = make_field(3)
    assert f3.add(2, 2) == 1
    assert f3.inv(2) == 2
    f2 = make_field(2)
    assert f2.q == 2 and f2.e == 1


def test_f4_example():
    # x * x reduces to x + 1 under x^2 + x + 1
    f4 = make_field(2, 2, (1, 1, 1))
    assert f4.mul(2, 2) == 3
    assert f4 is make_field(2, 2)  # built-in modulus agrees, construction cached


def test_make_field_errors():
    with pytest.raises(ValueError):
        make_field(6)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        make_field(2, 2, (1, 0, 1))  # x^2 + 1 has the root 1 over F_2
    with pytest.raises(ValueError):
        make_field(3, 4, (1, 0, 0, 0, 1))  # x^4 + 1 = (x^2+x+2)(x^2+2x+2) mod 3
    with pytest.raises(ValueError):
        make_field(2, 7)  # 128 > 64: no built-in modulus
    with pytest.raises(ValueError):
        make_field(2, 3, (1, 1, 1))  # wrong degree


def test_field_arith_dispatch():
    f3 = make_field(3)
    assert field_arith(f3, "add", 2, 2) == 1
    assert field_arith(f3, "sub", 0, 1) == 2
    assert field_arith(f3, "mul", 2, 2) == 1
    assert field_arith(f3, "neg", 1) == 2
    assert field_arith(f3, "inv", 2) == 2
    with pytest.raises(ValueError):
        field_arith(f3, "inv", 0)
    with pytest.raises(ValueError):
        field_arith(f3, "add", 1)
    with pytest.raises(ValueError):
        field_arith(f3, "frobnicate", 1, 1)
    with pytest.raises(ValueError):
        field_arith(f3, "add", 3, 1)  # out of range


def test_is_prime_small():
    assert [p for p in range(2, 20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_field_by_order_rejects_non_prime_powers():
    with pytest.raises(ValueError):
        field_by_order(12)
    with pytest.raises(ValueError):
        field_by_order(1)


def test_pow_zero_convention():
    f3 = make_field(3)
    assert f3.pow(0, 0) == 1
    assert f3.pow(0, 5) == 0
    assert f3.pow(2, 4) == 1
