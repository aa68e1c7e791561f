from fractions import Fraction

import pytest

from connaug.cover import Star
from connaug.instance import InfeasibleError, Instance, normalize
from connaug.oracle import opt_augment
from connaug.pipeline import _finish, realize_edges, realize_stars, solve_variant_i, solve_variant_ii, verify
from connaug.rooted import TrivialRootedSolver


def complete_unit(inst):
    jset = {tuple(sorted(e)) for e in inst.jedges}
    c = tuple((u, v, 1) for u in range(inst.n) for v in range(u + 1, inst.n) if (u, v) not in jset)
    return Instance(inst.directed, inst.cost_model, inst.n, inst.terminals, inst.k, inst.jedges, c)


def directed_cycle(n=5, k=1):
    j = tuple((i, (i + 1) % n) for i in range(n))
    c = tuple((u, v, 1 + (u * 3 + v) % 4) for u in range(n) for v in range(n) if u != v and (u, v) not in j)
    return Instance(True, "edge", n, tuple(range(n)), k, j, c)


def test_realize_edges(flow_example):
    assert realize_edges(flow_example, []) == ()
    edges = realize_edges(flow_example, [(0, 2)])
    assert edges == (0, 1) and sum(flow_example.cedges[i][2] for i in edges) == 5


def test_realize_stars_union():
    inst = Instance(False, "edge", 4, (0, 1, 2), 0, ((1, 3), (2, 3)), ((0, 3, 5),))
    assert realize_stars(inst, []) == ()
    one = realize_stars(inst, [Star(0, (1, 2), "undirected")])
    two = realize_stars(inst, [Star(0, (1,), "undirected"), Star(0, (2,), "undirected")])
    assert one == two == (0,)


def test_already_feasible():
    inst = Instance(False, "edge", 4, (0, 1), 1, ((0, 2), (2, 1), (0, 3), (3, 1)), ((0, 1, 4),))
    for solve in (solve_variant_i, solve_variant_ii):
        sol = solve(inst)
        assert sol.edges == () and sol.cost == 0


@pytest.mark.parametrize("solve", [solve_variant_i, solve_variant_ii])
def test_cycle_unit_costs(cycle5, solve):
    inst = complete_unit(cycle5)
    sol = solve(inst)
    rep = verify(inst, sol.edges)
    assert rep.feasible and rep.residual_cores == 0
    _, opt = opt_augment(inst)
    bound = Fraction(sol.certificate["bound_value_num"], sol.certificate["bound_value_den"])
    assert opt <= sol.cost <= bound * opt
    assert sol.certificate["repair_used"] is False


def test_directed_two_gadget_calls():
    inst = directed_cycle()
    a = solve_variant_i(inst)
    assert a.certificate["gadget_calls"] == 2 and a.certificate["b"] == 2
    b = solve_variant_ii(inst)
    assert b.certificate["rooted_calls"] >= 2
    assert Fraction(b.certificate["rooted_calls"]) <= Fraction(
        b.certificate["rooted_calls_bound_num"], b.certificate["rooted_calls_bound_den"]
    )


def test_verify_reports(cycle5):
    inst = complete_unit(cycle5)
    rep = verify(inst, [])
    assert not rep.feasible and rep.witness is not None and rep.residual_cores > 0
    opt_edges, opt = opt_augment(inst)
    assert verify(inst, opt_edges).feasible
    broken = [i for i in opt_edges if not verify(inst, [j for j in opt_edges if j != i]).feasible]
    assert broken  # an optimum has an edge whose removal breaks a cut
    assert not verify(inst, [j for j in opt_edges if j != broken[0]]).feasible


def test_infeasible_candidates(cycle5):
    with pytest.raises(InfeasibleError):
        solve_variant_i(cycle5)


def test_repair_loop(cycle5):
    inst = normalize(complete_unit(cycle5))
    bought = set()
    assert _finish(inst, bought) is True
    assert verify(inst, bought).feasible


def test_certificate_fields(cycle5):
    cert = solve_variant_i(complete_unit(cycle5)).certificate
    for key in ("gadget_cost", "phase1_edges", "phase2_edges", "stars", "rooted_calls", "bound_value_num", "bound_value_den", "repair_used"):
        assert key in cert


def test_node_model_solution_cost():
    inst = Instance(
        False, "node", 6, (0, 1, 2), 1,
        ((0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)),
        ((0, 1, 1), (1, 2, 1), (0, 2, 1), (0, 4, 1), (1, 5, 1), (2, 3, 1)),
        (0, 0, 0, 4, 2, 3),
    )
    for solve in (solve_variant_i, solve_variant_ii):
        sol = solve(inst)
        assert verify(inst, sol.edges).feasible
        assert sol.cost == verify(inst, sol.edges).cost
        assert sol.cost >= opt_augment(inst)[1]


def test_solver_interface_rho(cycle10):
    assert TrivialRootedSolver().rho(cycle10) == 5
