import itertools
import math

import pytest

from pfaffbounds import asympbounds as ab
from pfaffbounds.asympbounds import BigO, Exact, Factor, Tower
from pfaffbounds.errors import InvalidFormat, RecursionExhausted
from pfaffbounds.formats import ChainFormat, QuantifierFormat, SetFormat, polynomial_format


def _shape(bound):
    return [(f.base, f.exponent) for f in bound.factors]


def test_exponent_and_factor_basics():
    assert Exact(3).value() == 3 and BigO(3).value(2) == 6
    assert BigO(2).describe() == "O(2)" and ab.Exponent(1, 2).describe() == "1+O(2)"
    assert Factor(8, Exact(2)).log2_value() == pytest.approx(6)
    assert Factor(1, Exact(100)).log2_value() == 0
    assert Factor(8, BigO(2)).log2_value(3) == pytest.approx(18)


def test_tower_log():
    t = Factor(2, Tower(2, Exact(3)))  # 2^(2^3)
    assert t.log2_value() == pytest.approx(8)
    huge = Factor(3, Tower(5, Tower(5, Exact(9))))
    assert huge.log2_value() == math.inf


def test_gv_qf_univariate_polynomial_shape():
    b = ab.gv_qf(polynomial_format(1, 7, 5))
    assert _shape(b) == [(5, Exact(2)), (7, BigO(1))]
    assert b.unknown_constant


def test_gv_qf_monotone_in_s_and_drops_chain_factor():
    vals = [ab.gv_qf(polynomial_format(2, 3, s)).log2_lower() for s in range(1, 8)]
    assert vals == sorted(vals)
    assert all(f.base != 2 or f.exponent != Exact(0) for f in ab.gv_qf(polynomial_format(2, 3, 2)).factors)


def test_existential_parameters():
    b = ab.existential(2, 3, 1, 1, 1, 4, 0)
    assert b.extras["N"] == 5 and b.extras["L"] == 1
    assert b.factors[0].base == 2 and b.factors[0].exponent == Exact(5)
    b = ab.existential(1, 1, 2, 1, 1, 1, 1)
    assert b.extras == {"N": 3, "L": 4}
    lows = [ab.existential(1, 2, 1, 2, 2, 3, k).log2_lower() for k in range(6)]
    assert lows == sorted(lows)


def test_universal_parameters():
    ell = 3
    b = ab.universal(2, 1, ell, 1, 1, 2, 2)
    # N* = n0, L* = 0: no 2^... factor left
    assert b.factors[0].exponent == Exact(2)
    assert _shape(b) == [(2, Exact(2)), (2, BigO(2))]
    assert ab.universal(2, 1, ell, 1, 1, 2, 1).factors[0].exponent == Exact(3)
    with pytest.raises(InvalidFormat):
        ab.universal(1, 1, 1, 1, 1, 1, 2)


def _qf(n0, blocks, ell=1, s=2, M=1):
    n = n0 + sum(blocks)
    return QuantifierFormat(n0, tuple(blocks), SetFormat(ChainFormat(n, ell, 1, 2), 2, s), M)


def test_recursion_step_example():
    qf = _qf(1, (1, 1), ell=3, s=5)
    st = ab.initial_state(qf)
    assert (st.N, st.s, st.M, st.F, st.ell) == (1, 5, 1, 1, 3)
    nxt = ab.recursion_step(st, qf.blocks, 3)
    assert (nxt.i, nxt.N, nxt.s, nxt.M, nxt.F, nxt.ell) == (1, 2, 5, 1, 4, 3)
    with pytest.raises(RecursionExhausted):
        ab.recursion_step(nxt, qf.blocks, 3)


def test_recursion_rules_and_majorant():
    for nu in range(1, 5):
        for blocks in itertools.product(range(1, 4), repeat=nu):
            qf = _qf(2, blocks, ell=2)
            states = ab.run_recursion(qf)
            assert len(states) == nu
            for i, (a, b) in enumerate(zip(states, states[1:])):
                nb = blocks[nu - i - 1]
                assert b.N == (nb + 1) * a.N and b.s == a.N * a.s and b.M == a.N
                assert b.F == a.F * (4 * a.M * a.N) ** a.N and b.F >= a.F
            for i, st in enumerate(states):
                assert st.N <= ab.n_majorant(qf, i)
                # chain length after i steps: l (N_0 + ... + N_{i-1})
                assert st.ell == 2 * sum(s.N for s in states[:i]) or i == 0


def test_nu1_closure_shape():
    qf = _qf(3, (2,), ell=2, s=4, M=5)
    q = ab.quantifier_bound(qf)
    # 2^{n0 l (n0 l - 1)/2} (sM)^{2 n0 (n1+1)} O(n0 n1 (alpha+beta))^{n0 (n1+1+l)}
    assert _shape(q.engine) == [(2, Exact(15)), (20, Exact(18)), (3 * 2 * 3, BigO(3 * 5))]


def test_u_v():
    qf = _qf(1, (1, 1))
    assert ab.u_nu(qf) == 4
    assert ab.v_nu(qf) == 16 * 1 * 1
    qf = _qf(2, (1, 3, 5))
    assert ab.u_nu(qf) == 8 * 2 * 15
    assert ab.v_nu(qf) == 64 * 4 * 25 * 3


def test_engine_within_constant_of_closed_form():
    worst = 1.0
    for nu in range(1, 4):
        for blocks in itertools.product(range(1, 3), repeat=nu):
            for n0 in (1, 2):
                q = ab.quantifier_bound(_qf(n0, blocks, ell=1))
                worst = max(worst, q.dominating_constant())
    assert worst <= 3


def test_algebraic_and_qe_shapes():
    qf = ab.algebraic_qf(1, [1], d=3, s=5)
    assert _shape(ab.algebraic_quantifier(qf)) == [(2 * 3 * 5, BigO(2))]
    qe = ab.qe_comparison(qf)
    assert qe.extras["s_exponent"] == 32
    assert _shape(qe) == [(5, Exact(32)), (3, BigO(1))]
    with pytest.raises(InvalidFormat):
        ab.algebraic_quantifier(_qf(1, (1,), ell=1))


def test_compare_basics():
    a = ab._bound("a", [Factor(10, Exact(2))], {})
    b = ab._bound("b", [Factor(10, Exact(3))], {})
    assert ab.compare(a, a).smaller == "equal"
    assert ab.compare(a, b).smaller == "a"
    assert ab.compare(b, a).smaller == "b"
    assert ab.compare(a, b).indicative_only


def test_compare_recursion_vs_qe_example():
    qf = ab.algebraic_qf(8, [1], d=2, s=2)
    c = ab.compare(ab.algebraic_quantifier(qf), ab.qe_comparison(qf))
    assert c.smaller == "a"


def test_compare_is_total_preorder():
    bounds = [ab.gv_qf(polynomial_format(n, d, s)) for n in (1, 2) for d in (2, 3) for s in (1, 4)]
    for x, y, z in itertools.product(bounds, repeat=3):
        xy = ab.compare(x, y).smaller in ("a", "equal")
        yz = ab.compare(y, z).smaller in ("a", "equal")
        if xy and yz:
            assert ab.compare(x, z).smaller in ("a", "equal")


def test_constant_must_be_at_least_one():
    with pytest.raises(InvalidFormat):
        ab.gv_qf(polynomial_format(1, 2, 2)).log2_value(0.5)


def test_descriptor_json():
    d = ab.frontier_cc(2, 1, 3, 2).to_dict(2.0)
    assert d["factors"][2]["exponent"]["class"] == "Tower"
    assert d["unknown_constant"] is True and "log2_value" in d
    d = ab.hausdorff_asymptotic(SetFormat(ChainFormat(2, 1, 1, 2), 2, 3, d=1), 1).to_dict()
    assert d["formula_id"] == "hausdorff_asymptotic"


@pytest.mark.parametrize("fn, base, key", [
    (lambda v: ab.variety_asymptotic(2, 1, 1, v), 1, "beta"),
    (lambda v: ab.variety_asymptotic(v, 1, 1, 2), 1, "n"),
    (lambda v: ab.pclosed_asymptotic(SetFormat(ChainFormat(3, 1, 1, 2), 2, v, d=2)), 1, "s"),
    (lambda v: ab.bm_asymptotic(SetFormat(ChainFormat(3, v, 1, 2), 2, 3, d=2)), 0, "ell"),
    (lambda v: ab.singular_cc_asymptotic(2, 1, v, 2), 1, "alpha"),
    (lambda v: ab.frontier_cc(2, v, 3, 2), 1, "r"),
])
def test_log2_lower_monotone(fn, base, key):
    vals = [fn(v).log2_lower() for v in range(base, base + 6)]
    assert vals == sorted(vals), key
