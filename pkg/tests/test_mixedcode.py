from __future__ import annotations

import json
import random
from itertools import product

import pytest

from chaincode import modmatrix as mm
from chaincode import mixedcode as mc
from chaincode.census import enumerate_codes
from chaincode.mixedcode import CodeType, MixedAmbient, MixedWord

Z27Z9 = MixedAmbient(3, 3, 2, 2)


@pytest.fixture(scope="module")
def codes_z9z3(z9z3):
    return list(enumerate_codes(z9z3))


@pytest.fixture(scope="module")
def codes_z4z2(z4z2):
    return list(enumerate_codes(z4z2))


def span(a, *rows):
    return mc.from_generators(a, rows)


def words(C):
    a = C.ambient
    return {a.unembed(w) for w in mc.codewords(C)}


def brute_dual_words(C):
    """Every ambient word orthogonal to all of C, from the form alone."""
    a = C.ambient
    gens = [MixedWord.of(a, g) for g in C.generators()]
    ranges = [range(a.mod)] * a.n1 + [range(a.lo_mod)] * a.n2
    out = set()
    for w in product(*ranges):
        m = MixedWord.of(a, w)
        if all(mc.inner_product(m, g) == 0 for g in gens):
            out.add(tuple(w))
    return out


def dual_type(t: CodeType, a: MixedAmbient) -> CodeType:
    return CodeType(
        (a.n1 - sum(t.ks),) + tuple(reversed(t.ks[1:])),
        (a.n2 - sum(t.ls),) + tuple(reversed(t.ls[1:])),
    )


def perp(A, B, p):
    return all(sum(x * y for x, y in zip(u, v)) % p == 0 for u in A for v in B)


# -- construction -------------------------------------------------------------


def test_redundant_generator(z9z3):
    assert span(z9z3, (3, 0, 0, 0), (6, 0, 0, 0)) == span(z9z3, (3, 0, 0, 0))


def test_empty_rows_give_zero_code(z9z3):
    C = span(z9z3)
    assert C.is_zero() and mc.cardinality(C) == 1


def test_cyclic_code_cardinality(z9z3):
    C = span(z9z3, (3, 6, 0, 0))
    assert mc.cardinality(C) == 3
    assert words(C) == {(0, 0, 0, 0), (3, 6, 0, 0), (6, 3, 0, 0)}


def test_cardinality_examples(z9z3):
    assert mc.cardinality(mc.full_code(z9z3)) == 729
    assert mc.cardinality(span(z9z3, (3, 0, 0, 0))) == 3


def test_lo_entries_reduced(z9z3):
    assert span(z9z3, (0, 0, 4, 0)) == span(z9z3, (0, 0, 1, 0))


def test_ambient_rejects_degenerate():
    with pytest.raises(ValueError):
        MixedAmbient(3, 1, 2, 2)
    with pytest.raises(ValueError):
        MixedAmbient(3, 2, 0, 0)


# -- inner product and duality -------------------------------------------------


def test_inner_product_examples(z9z3, z4z2):
    w = MixedWord.of(z9z3, (3, 6, 0, 0))
    assert mc.inner_product(w, w) == 0
    u = MixedWord.of(z9z3, (1, 0, 1, 0))
    assert mc.inner_product(u, u) == 4
    v = MixedWord.of(z4z2, (1, 0, 1, 0))
    assert mc.inner_product(v, v) == 3


def test_embedded_form_is_not_the_dot_product(z9z3):
    x = z9z3.embed((0, 0, 1, 0))
    assert mc.embedded_ip(x, x, z9z3) == 3
    assert sum(a * b for a, b in zip(x, x)) % 9 == 0


def test_dual_examples(z9z3):
    assert mc.cardinality(mc.dual(span(z9z3, (3, 0, 0, 0)))) == 243
    assert mc.dual(mc.zero_code(z9z3)) == mc.full_code(z9z3)
    assert mc.dual(mc.full_code(z9z3)).is_zero()


@pytest.mark.parametrize("rows", [[(3, 0, 0, 0)], [(1, 1, 1, 0)], [(3, 6, 1, 2), (0, 3, 0, 1)]])
def test_dual_against_brute_force(z9z3, rows):
    C = span(z9z3, *rows)
    assert words(mc.dual(C)) == brute_dual_words(C)


# -- type, standard form, torsion --------------------------------------------


def test_type_examples(z9z3):
    assert mc.type_of(span(z9z3, (3, 0, 0, 0))) == CodeType((0, 1), (0,))
    assert mc.type_of(span(z9z3, (1, 0, 0, 0), (0, 0, 1, 0))) == CodeType((1, 0), (1,))
    assert mc.type_of(mc.zero_code(z9z3)) == CodeType((0, 0), (0,))


def test_standard_form_examples(z9z3):
    hi, lo, rows = mc.standard_form(span(z9z3, (3, 6, 0, 0)))
    assert (hi, lo, rows) == ((0, 1), (0, 1), [(3, 6, 0, 0)])
    hi, lo, rows = mc.standard_form(mc.full_code(z9z3))
    assert rows == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def test_standard_form_block_shape():
    a = MixedAmbient(3, 3, 3, 2)
    C = span(a, (3, 1, 0, 1, 2), (0, 9, 3, 0, 3), (0, 0, 0, 3, 0))
    hi, lo, rows = mc.standard_form(C)
    assert mc.from_generators(a, [tuple(r[hi.index(j)] for j in range(3)) + tuple(r[3 + lo.index(j)] for j in range(2)) for r in rows]) == C
    t = mc.type_of(C)
    # leading entries sit on the diagonal of the permuted matrix as gamma powers
    hi_rows = sum(t.ks)
    for i, r in enumerate(rows[:hi_rows]):
        assert r[i] in {3**v for v in range(a.mu)}
    for j, r in enumerate(rows[hi_rows:]):
        assert r[3 + j] in {3**v for v in range(a.mu - 1)}


def test_torsion_examples(z9z3):
    Z = mc.zero_code(z9z3)
    assert all(mc.torsion(Z, i, "X") == () for i in (1, 2))
    assert mc.torsion(Z, 1, "Y") == ()
    full = mc.torsion(mc.full_code(z9z3), 1, "X")
    assert len(full) == 2
    with pytest.raises(ValueError):
        mc.torsion(Z, 2, "Y")
    with pytest.raises(ValueError):
        mc.torsion(Z, 1, "Z")


def test_torsion_dims_match_type(codes_z9z3):
    for C in codes_z9z3:
        t = mc.type_of(C)
        for i in range(1, 3):
            assert len(mc.torsion(C, i, "X")) == sum(t.ks[:i])
        assert len(mc.torsion(C, 1, "Y")) == t.ls[0]


def _permute(C: mc.MixedCode, hp, lp) -> mc.MixedCode:
    a = C.ambient
    rows = [tuple(g[hp[j]] for j in range(a.n1)) + tuple(g[a.n1 + lp[j]] for j in range(a.n2)) for g in C.generators()]
    return mc.from_generators(a, rows)


def test_torsion_independent_of_column_permutation():
    rng = random.Random(11)
    a = MixedAmbient(3, 3, 3, 3)
    for _ in range(60):
        rows = [tuple(rng.randrange(27 if j < 3 else 9) for j in range(6)) for _ in range(rng.randint(1, 3))]
        rows = [tuple(x * 3 ** rng.randint(0, 2) for x in r) for r in rows]
        C = span(a, *rows)
        hp = tuple(rng.sample(range(3), 3))
        lp = tuple(rng.sample(range(3), 3))
        D = _permute(C, hp, lp)
        assert mc.type_of(D) == mc.type_of(C)
        for i in range(1, a.mu + 1):
            tc, td = mc.torsion(C, i, "X"), mc.torsion(D, i, "X")
            assert len(tc) == len(td)
            # the torsion code moves with the columns
            assert mm.howell_rows([tuple(r[hp[j]] for j in range(3)) for r in tc], 3, 1) == td
        for i in range(1, a.mu):
            tc, td = mc.torsion(C, i, "Y"), mc.torsion(D, i, "Y")
            assert mm.howell_rows([tuple(r[lp[j]] for j in range(3)) for r in tc], 3, 1) == td


# -- predicates ---------------------------------------------------------------


def test_predicate_examples(z9z3, z4z2):
    assert mc.is_self_orthogonal(span(z9z3, (3, 6, 0, 0)))
    assert mc.is_lcd(span(z4z2, (1, 0, 0, 0), (0, 1, 0, 0)))
    Z = mc.zero_code(z9z3)
    assert mc.is_self_orthogonal(Z) and not mc.is_self_dual(Z) and mc.is_lcd(Z)


def test_sum_and_intersection(z9z3, codes_z9z3):
    C, D = span(z9z3, (3, 0, 0, 0)), span(z9z3, (0, 3, 0, 0))
    assert mc.cardinality(mc.code_sum(C, D)) == 9
    assert mc.code_sum(C, mc.zero_code(z9z3)) == C
    assert mc.intersect(C, mc.full_code(z9z3)) == C
    rng = random.Random(3)
    for _ in range(40):
        A, B = rng.choice(codes_z9z3), rng.choice(codes_z9z3)
        demorgan = mc.dual(mc.code_sum(mc.dual(A), mc.dual(B)))
        assert mc.intersect(A, B) == demorgan
        assert words(mc.intersect(A, B)) == words(A) & words(B)


# -- exhaustive property suites ------------------------------------------------


@pytest.mark.parametrize("which", ["codes_z9z3", "codes_z4z2"])
def test_exhaustive_duality_properties(which, request):
    codes = request.getfixturevalue(which)
    a = codes[0].ambient
    total = a.p**a.log_size
    for C in codes:
        D = mc.dual(C)
        assert mc.dual(D) == C
        assert mc.cardinality(C) * mc.cardinality(D) == total
        assert mc.type_of(D) == dual_type(mc.type_of(C), a)
        assert mc.is_self_orthogonal(C) == mc.contains(D, C)
        assert mc.is_lcd(C) == mc.intersect(C, D).is_zero()


@pytest.mark.parametrize("ambient", [MixedAmbient(3, 2, 2, 2), Z27Z9])
def test_torsion_nesting_for_self_orthogonal(ambient):
    """Tor_i is orthogonal to Tor_j for i + j <= mu + 1 (X) and i + j <= mu (Y)."""
    mu, p = ambient.mu, ambient.p
    seen = 0
    for C in enumerate_codes(ambient, self_orthogonal_only=True):
        seen += 1
        X = {i: mc.torsion(C, i, "X") for i in range(1, mu + 1)}
        Y = {i: mc.torsion(C, i, "Y") for i in range(1, mu)}
        for i in X:
            assert mm.howell_rows(X[i] + (X[i + 1] if i < mu else ()), p, 1) == (X[i + 1] if i < mu else X[i])
            for j in X:
                if i + j <= mu + 1:
                    assert perp(X[i], X[j], p)
        for i in Y:
            for j in Y:
                if i + j <= mu:
                    assert perp(Y[i], Y[j], p)
    assert seen > 1


@pytest.mark.parametrize("ambient", [MixedAmbient(3, 2, 2, 2), MixedAmbient(3, 2, 3, 3), Z27Z9])
def test_type_inequalities_for_self_orthogonal(ambient):
    mu = ambient.mu
    for C in enumerate_codes(ambient, self_orthogonal_only=True):
        t = mc.type_of(C)
        for i in range((mu + 1) // 2, mu):
            assert 2 * sum(t.ks[: mu - i]) + sum(t.ks[mu - i : i + 1]) <= ambient.n1
        for i in range((mu - 1) // 2, mu - 1):
            assert 2 * sum(t.ls[: mu - 1 - i]) + sum(t.ls[mu - 1 - i : i + 1]) <= ambient.n2
        if mc.is_self_dual(C):
            assert all(t.ks[i] == t.ks[mu - i] for i in range(1, mu))
            assert all(t.ls[i] == t.ls[mu - 1 - i] for i in range(1, mu - 1))


# -- homogeneous weight ---------------------------------------------------------


def test_hom_weight_symbols():
    assert mc.hom_weight_symbol(2, 0, 2) == 4
    assert mc.hom_weight_symbol(0, 1, 2) == 2
    assert mc.hom_weight_symbol(0, 0, 2) == 0
    assert mc.hom_weight_symbol(3, 1, 3) == 6


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mean_hom_weight(p):
    total = sum(mc.hom_weight_symbol(a, b, p) for a in range(p * p) for b in range(p))
    assert total == (p - 1) * p * p**3


def test_hom_distance_table_row(z4z2):
    # (2,2,0),(y,y,2) over Z4[y]/<y^2-2,2y> has image rows (2,2,0|0,0,0), (0,0,2|1,1,0)
    a = MixedAmbient(2, 2, 3, 3)
    C = span(a, (2, 2, 0, 0, 0, 0), (0, 0, 2, 1, 1, 0))
    assert mc.min_hom_distance(C) == 8


def test_hom_weight_unsupported():
    with pytest.raises(NotImplementedError):
        mc.min_hom_distance(span(Z27Z9, (1, 0, 0, 0)))
    with pytest.raises(ValueError):
        mc.min_hom_distance(mc.zero_code(MixedAmbient(3, 2, 2, 2)))


# -- files --------------------------------------------------------------------


def test_code_file_roundtrip(tmp_path, z9z3):
    C = span(z9z3, (3, 6, 1, 0), (0, 3, 0, 2))
    f = tmp_path / "c.json"
    f.write_text(json.dumps(mc.code_to_dict(C)))
    assert mc.read_code_file(f) == C
    f.write_text(json.dumps({"p": 3, "e": 2, "n1": 2}))
    with pytest.raises(ValueError):
        mc.read_code_file(f)
