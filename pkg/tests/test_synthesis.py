import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quditdicke.circuit import count_by_tag, count_v_operators, macro_sequence
from quditdicke.core import (
    CompositionVector,
    InvalidCompositionError,
    QuditState,
    compositions,
    identity_permutation_state,
)
from quditdicke.gates import circuit_matrix
from quditdicke.reference import append_wire0
from quditdicke.simulator import run
from quditdicke.synthesis import (
    VOperatorSpec,
    boundary_tuples,
    build_i_operator,
    build_ii_operator,
    build_u,
    build_v_operator,
    build_w,
    predicted_built_v_count,
    predicted_v_count,
    predicted_w_count,
    predicted_w_dj_count,
    solve_angles,
)


def theta(l, m):
    return -2 * math.acos(math.sqrt(l / m))


def theta2(m, l1, l2):
    return -2 * math.acos(math.sqrt((l1 - l2) / (m - l2)))


def as_rows(circuit):
    """(target, kind, i, j, theta or None, controls) per gate."""
    rows = []
    for g in circuit.gates:
        p = g.primitive
        rows.append((g.target, p.kind, p.i, p.j, getattr(p, "theta", None), g.controls))
    return rows


def assert_gate_list(circuit, expected):
    got = as_rows(circuit)
    assert len(got) == len(expected)
    for g, e in zip(got, expected):
        assert g[:4] == e[:4]
        assert g[5] == tuple(sorted(e[5]))
        if e[1] == "R":
            assert g[4] == pytest.approx(e[4], abs=1e-12)


def v_fixture(pairs_lo_hi, stages):
    """Build the expected X, R, X triple for each stage."""
    rows = []
    for (lo, hi), (boundary, angle, controls) in zip(pairs_lo_hi, stages):
        flip = (boundary, "X", lo, hi, None, ((0, hi),))
        rows += [flip, (0, "R", lo, hi, angle, tuple(controls)), flip]
    return rows


# qubit I blocks


def test_qubit_i_block_l_equals_1():
    got = build_i_operator(3, 1, 2)
    expected = v_fixture([(0, 1)], [(1, theta(1, 3), [(1, 1)])])
    assert_gate_list(got, expected)


def test_qubit_i_block_generic_l():
    got = build_i_operator(5, 3, 2)
    expected = v_fixture([(0, 1)], [(3, theta(3, 5), [(2, 1), (3, 1)])])
    assert_gate_list(got, expected)


# qutrit two-level V operators


@pytest.mark.parametrize("levels", [(0, 1), (0, 2)])
def test_v_l1_m2_without_upper_control(levels):
    lo, hi = levels
    got = build_v_operator(VOperatorSpec(2, levels, (1,)), 2, 3)
    assert_gate_list(got, v_fixture([levels], [(1, theta(1, 2), [(1, hi)])]))


def test_v_l1_m2_upper_wire_already_controlled():
    # wire m-1 is the boundary wire, so it keeps its single control at i1
    got = build_v_operator(VOperatorSpec(2, (1, 2), (1,)), 2, 3)
    assert_gate_list(got, v_fixture([(1, 2)], [(1, theta(1, 2), [(1, 2)])]))


@pytest.mark.parametrize("levels, extra", [((0, 1), []), ((0, 2), []), ((1, 2), [(3, 1)])])
def test_v_l1_m_gt_2(levels, extra):
    got = build_v_operator(VOperatorSpec(4, levels, (1,)), 4, 3)
    assert_gate_list(got, v_fixture([levels], [(1, theta(1, 4), [(1, levels[1])] + extra)]))


@pytest.mark.parametrize("levels, extra", [((0, 2), []), ((1, 2), [(4, 1)])])
def test_v_generic_l(levels, extra):
    hi = levels[1]
    got = build_v_operator(VOperatorSpec(5, levels, (2,)), 5, 3)
    controls = [(1, hi), (2, hi)] + extra
    assert_gate_list(got, v_fixture([levels], [(2, theta(2, 5), controls)]))


@pytest.mark.parametrize("levels", [(0, 1), (0, 2), (1, 2)])
def test_v_l_equals_m_minus_1(levels):
    hi = levels[1]
    got = build_v_operator(VOperatorSpec(4, levels, (3,)), 4, 3)
    assert_gate_list(got, v_fixture([levels], [(3, theta(3, 4), [(2, hi), (3, hi)])]))


def test_qutrit_i_block_runs_three_v_operators():
    c = build_i_operator(4, 2, 3)
    assert c.size() == 9
    assert count_v_operators(c) == 3
    assert macro_sequence(c) == ["I[4;2]"]
    pairs = [(g.primitive.i, g.primitive.j) for g in c.gates[1::3]]
    assert pairs == [(0, 1), (0, 2), (1, 2)]


# qutrit II blocks


def ii_fixture(m, l1, l2, first_controls, second_controls):
    return v_fixture(
        [(1, 2), (0, 1)],
        [(l2, theta(l2, m), first_controls), (l1, theta2(m, l1, l2), second_controls)],
    )


def test_ii_generic():
    got = build_ii_operator(6, 4, 2)
    expected = ii_fixture(
        6, 4, 2,
        [(1, 2), (2, 2), (3, 1), (4, 0)],
        [(1, 2), (2, 2), (3, 1), (4, 1)],
    )
    assert_gate_list(got, expected)


def test_ii_l2_1_l1_2():
    got = build_ii_operator(3, 2, 1)
    expected = ii_fixture(3, 2, 1, [(1, 2), (2, 0)], [(1, 2), (2, 1)])
    assert_gate_list(got, expected)


def test_ii_l2_1_wide_l1():
    got = build_ii_operator(5, 3, 1)
    expected = ii_fixture(5, 3, 1, [(1, 2), (2, 1), (3, 0)], [(1, 2), (2, 1), (3, 1)])
    assert_gate_list(got, expected)


def test_ii_adjacent_boundaries():
    got = build_ii_operator(5, 3, 2)
    expected = ii_fixture(5, 3, 2, [(1, 2), (2, 2), (3, 0)], [(1, 2), (2, 2), (3, 1)])
    assert_gate_list(got, expected)


def test_general_v_operator_d4():
    spec = VOperatorSpec(6, (0, 1, 3), (4, 2))
    got = build_v_operator(spec, 6, 4)
    t1, t2 = solve_angles(6, (4, 2))
    expected = v_fixture(
        [(1, 3), (0, 1)],
        [
            (2, t1, [(1, 3), (2, 3), (3, 1), (4, 0)]),
            (4, t2, [(1, 3), (2, 3), (3, 1), (4, 1)]),
        ],
    )
    assert_gate_list(got, expected)
    assert set(got.tags) == {"V(3)[6;4,2;0,1,3]"}


def test_i0_control_on_every_rotation():
    spec = VOperatorSpec(6, (1, 2, 3), (4, 2))
    got = build_v_operator(spec, 6, 4)
    for g in got.gates[1::3]:
        assert (5, 1) in g.controls


# angles


def test_angles_match_two_level_closed_forms():
    m, l1, l2 = 7, 5, 2
    t1, t2 = solve_angles(m, (l1, l2))
    assert t1 == pytest.approx(theta(l2, m), abs=1e-14)
    assert t2 == pytest.approx(theta2(m, l1, l2), abs=1e-14)


@given(st.integers(3, 12).flatmap(lambda m: st.tuples(st.just(m), st.integers(2, min(m, 5)))), st.data())
def test_angle_products_give_branch_amplitudes(mj, data):
    m, j = mj
    asc = data.draw(st.lists(st.integers(1, m - 1), min_size=j - 1, max_size=j - 1, unique=True))
    ls = tuple(sorted(asc, reverse=True))
    thetas = solve_angles(m, ls)
    running = 1.0
    bounds = (m,) + ls + (0,)
    # branch r amplitude: prod(-sin) * cos, last branch closes with the sine product
    for s, t in enumerate(thetas, start=1):
        gap = bounds[j - s] - bounds[j - s + 1]
        assert running * math.cos(t / 2) == pytest.approx(math.sqrt(gap / m), abs=1e-12)
        running *= -math.sin(t / 2)
    assert running == pytest.approx(math.sqrt((m - ls[0]) / m), abs=1e-12)


def test_spec_validation():
    with pytest.raises(InvalidCompositionError):
        VOperatorSpec(4, (0,), ())
    with pytest.raises(InvalidCompositionError):
        VOperatorSpec(4, (1, 0), (2,))
    with pytest.raises(InvalidCompositionError):
        VOperatorSpec(4, (0, 1, 2), (1, 2))
    with pytest.raises(InvalidCompositionError):
        VOperatorSpec(4, (0, 1), (4,))
    with pytest.raises(InvalidCompositionError):
        build_v_operator(VOperatorSpec(4, (0, 1), (2,)), 3, 2)


# W contract and U


def w_contract_rhs(k: CompositionVector) -> np.ndarray:
    m = k.n()
    out = np.zeros(k.d**m, dtype=np.complex128)
    for s in range(k.d):
        if k[s]:
            out += math.sqrt(k[s] / m) * append_wire0(identity_permutation_state(k.without(s)), s).amps
    return out


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_w_contract(d, m):
    w = build_w(m, d)
    for k in compositions(m, d):
        out = run(w, identity_permutation_state(k))
        assert np.max(np.abs(out.amps - w_contract_rhs(k))) <= 1e-10


@pytest.mark.parametrize("d, m", [(2, 3), (3, 3), (4, 2)])
def test_w_is_unitary(d, m):
    u = circuit_matrix(build_w(m, d).gates, d, m)
    assert np.allclose(u @ u.conj().T, np.eye(d**m), atol=1e-10)


def test_qubit_u6_execution_order():
    labels = macro_sequence(build_u(6, 2))
    expected = [f"I[{m};{l}]" for m in range(6, 1, -1) for l in range(1, m)]
    assert labels == expected


def test_qutrit_u4_execution_order():
    labels = macro_sequence(build_u(4, 3))
    assert labels == [
        "I[4;1]", "I[4;2]", "I[4;3]", "II[4;2,1]", "II[4;3,1]", "II[4;3,2]",
        "I[3;1]", "I[3;2]", "II[3;2,1]",
        "I[2;1]",
    ]


def test_u_places_w_blocks_on_top_wires():
    c = build_u(4, 2)
    for g, tag in zip(c.gates, c.tags):
        m = int(tag[2])
        assert min(g.wires) >= 4 - m


def test_boundary_tuples_order():
    assert list(boundary_tuples(4, 3)) == [(2, 1), (3, 1), (3, 2)]
    assert list(boundary_tuples(4, 2)) == [(1,), (2,), (3,)]


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_w_counts_include_trivial_terms(d, m):
    w = build_w(m, d)
    assert count_v_operators(w) + d == predicted_w_count(m, d)
    assert predicted_w_count(m, d) == sum(predicted_w_dj_count(m, d, j) for j in range(1, min(d, m) + 1))


def test_count_closed_forms():
    assert predicted_v_count(3, 2) == 7
    assert predicted_v_count(4, 3) == 31
    assert predicted_built_v_count(4, 3) == 22
    assert count_v_operators(build_u(4, 3)) == 22
    for d in range(2, 6):
        for n in range(2, 9):
            assert predicted_v_count(n, d) == sum(predicted_w_count(m, d) for m in range(2, n + 1))


def test_u3_qutrit_summary():
    c = build_u(3, 3)
    assert c.size() == 33
    assert count_v_operators(c) == 10
    assert count_by_tag(c) == {"I": 3, "II": 1}


def test_qutrit_i_block_leaves_generic_states_alone():
    for m in range(3, 6):
        for k in compositions(m, 3):
            if 0 in k.parts:
                continue
            e = identity_permutation_state(k)
            for l in range(1, m):
                out = run(build_i_operator(m, l, 3), e)
                assert np.array_equal(out.amps, e.amps)


def test_ii_block_leaves_special_states_alone():
    # Applying II after a two-level block on a state with one empty level changes nothing.
    for m in range(3, 6):
        for k in compositions(m, 3):
            if k.num_nonzero() != 2:
                continue
            for l in range(1, m):
                state = run(build_i_operator(m, l, 3), identity_permutation_state(k))
                for l1, l2 in [(a, b) for b in range(1, m - 1) for a in range(b + 1, m)]:
                    out = run(build_ii_operator(m, l1, l2), state)
                    assert np.max(np.abs(out.amps - state.amps)) <= 1e-12


def test_u_preserves_norm_on_random_input():
    rng = np.random.default_rng(11)
    amps = rng.normal(size=81) + 1j * rng.normal(size=81)
    state = QuditState(3, 4, amps / np.linalg.norm(amps))
    assert run(build_u(4, 3), state).norm() == pytest.approx(1.0, abs=1e-12)
