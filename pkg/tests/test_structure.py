import itertools
import random

import pytest
from instances import basis_blades, random_form, random_structure

from nilherm import build_abc_family, build_heisenberg
from nilherm.exterior import (
    Form,
    bidegree_component,
    conjugate_form,
    pair,
    top_coefficient,
    wedge,
)
from nilherm.scalars import ParamSpace
from nilherm.structure import (
    StructureEquations,
    StructureError,
    canonical_form_closed,
    holomorphic_volume,
    is_abelian,
    validate,
)


def heis(n, a):
    return build_heisenberg(n, a)


def test_canonical_bundle_closed_for_heisenberg_type():
    for n in range(3, 7):
        S = heis(n, list(range(1, n - 1)) + [-sum(range(1, n - 1))])
        assert not S.d(holomorphic_volume(n))
        assert canonical_form_closed(S)


def test_abc_family_is_d_squared_closed():
    space = ParamSpace.declare(complex=["A", "B", "C"])
    S = build_abc_family(space.var("A"), space.var("B"), space.var("C"), space)
    assert not S.d(S.dw(4))
    assert S.validate().ok
    assert canonical_form_closed(S)


def test_delbar_and_del_of_last_generator():
    a = [2, -1, 3, -4]
    n = 5
    S = heis(n, a)
    A = sum((pair(n, j, c) for j, c in enumerate(a, 1)), Form.zero(n))
    wn, cwn = Form.generator(n, n), Form.generator(n, n, True)
    assert S.partial_bar(wn) == A
    assert not S.partial(wn)
    assert S.partial(cwn) == -A
    assert S.partial(S.partial_bar(wedge(wn, cwn))) == -wedge(A, A)


def test_validation_examples():
    assert heis(4, [1, 1, -2]).validate().ok
    assert heis(5, [3, -1, 2, 7]).validate().ok
    for abc in [(0, 0, 0), (1, 0, 0), (2, -1, 3)]:
        assert build_abc_family(*abc).validate().ok


def test_non_integrable_counterexample():
    S = StructureEquations(2, {1: Form.monomial(2, [(1, True), (2, True)])})
    rep = validate(S)
    assert not rep.integrable
    assert not rep.ok
    assert any("(0,2)" in f for f in rep.failures)
    with pytest.raises(StructureError):
        S.partial(Form.generator(2, 1))


def test_non_nilpotent_is_rejected():
    S = StructureEquations(2, {1: Form.monomial(2, [(1, False), (2, True)])})
    assert not S.validate().nilpotent


def test_abelian_predicate():
    assert is_abelian(heis(4, [1, 1, -2]))
    assert not is_abelian(build_abc_family(1, 0, 0))
    assert is_abelian(build_abc_family(0, 0, 0))


def test_canonical_form_closed_on_nilpotent_structures():
    # d w^2 = w^{1 3bar} still kills w^{123}: w^1 appears twice
    for barred in (False, True):
        S = StructureEquations(3, {2: Form.monomial(3, [(1, False), (3, barred)])})
        assert S.validate().ok
        assert canonical_form_closed(S)


def test_canonical_form_not_closed_needs_non_nilpotent():
    S = StructureEquations(2, {2: Form.monomial(2, [(2, False), (1, True)])})
    rep = S.validate()
    assert rep.d_squared_zero and rep.integrable and not rep.nilpotent
    assert not canonical_form_closed(S)
    with pytest.raises(StructureError):
        canonical_form_closed(StructureEquations(2, {1: Form.monomial(2, [(1, True), (2, True)])}))


def test_structure_needs_two_forms():
    with pytest.raises(StructureError):
        StructureEquations(3, {3: Form.generator(3, 1)})


def _check_invariants(S, forms):
    for f in forms:
        d, dl, db = S.d(f), S.partial(f), S.partial_bar(f)
        assert not S.d(d)
        assert d == dl + db
        assert not S.partial(dl)
        assert not S.partial_bar(db)
        assert S.partial(db) == -S.partial_bar(dl)
        assert conjugate_form(dl) == S.partial_bar(conjugate_form(f))
    for f, g in zip(forms, forms[1:]):
        p = next(iter(f.degrees())) if len(f.degrees()) == 1 else None
        if p is None:
            continue
        assert S.d(wedge(f, g)) == wedge(S.d(f), g) + wedge(f, S.d(g)).scale((-1) ** p)


def _structures_small():
    yield heis(3, [1, -1])
    yield heis(4, [1, 1, -2])
    yield build_abc_family(1, 2, -1)
    yield StructureEquations(3, {2: Form.monomial(3, [(1, False), (3, True)])})
    rng = random.Random(11)
    for n in (2, 3, 4, 5):
        for _ in range(2):
            yield random_structure(rng, n)


@pytest.mark.parametrize("S", list(_structures_small()), ids=lambda S: f"n{S.n}")
def test_invariants_exhaustive_small(S):
    assert S.validate().ok
    n = S.n
    if n <= 3:
        forms = [f for p in range(2 * n + 1) for f in basis_blades(n, p)]
    else:
        forms = [f for p in (0, 1, 2, 2 * n - 2, 2 * n - 1) for f in basis_blades(n, p)]
    _check_invariants(S, forms)
    for eta in basis_blades(n, 2 * n - 1):
        assert not top_coefficient(S.d(eta))


@pytest.mark.parametrize("seed", range(6))
def test_invariants_random_large(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(6, 8)
    S = random_structure(rng, n)
    assert S.validate().ok
    forms = [random_form(rng, n, degree=rng.randint(0, 2 * n), terms=3) for _ in range(4)]
    _check_invariants(S, forms)
    for eta in itertools.islice(basis_blades(n, 2 * n - 1), 0, None, 3):
        assert not top_coefficient(S.d(eta))


def test_no_zero_two_part_in_heisenberg_equations():
    S = heis(5, [1, 2, 3, -6])
    for j in range(1, 6):
        assert not bidegree_component(S.dw(j), 0, 2)
