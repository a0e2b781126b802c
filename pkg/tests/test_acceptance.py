"""Acceptance suite: one test per criterion, exact equality throughout.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
one PASS/FAIL line per criterion.  ``python tests/test_acceptance.py`` does
the same without pytest.
"""

import random

from chromahom import clear_caches
from chromahom.cocycles import cocycle_report
from chromahom.complete import recursion_check
from chromahom.graphs import (
    OrderedGraph,
    build_graph,
    chromatic_polynomial,
    complete_graph,
    cycle_graph,
    kpartial,
    path_graph,
    random_connected,
)
from chromahom.homology import (
    HomologyGroup,
    graded_euler,
    homology_table,
    shift_table,
    support_region_check,
)
from chromahom.polynomial import evaluate_at_one_plus_q
from chromahom.sequences import (
    gamma_zero_report,
    kpartial_triple,
    make_triple,
    ses_report,
    verify_split,
)
from chromahom.states import chain_complex, format_state, parse_state

RESULTS: dict[int, tuple[bool, str]] = {}


def record(key: int, passed: bool, detail: str) -> None:
    RESULTS[key] = (passed, detail)
    assert passed, detail


def random_corpus():
    out = []
    for seed in range(20):
        rng = random.Random(1000 + seed)
        n = rng.randint(3, 7)
        e = rng.randint(n - 1, min(12, n * (n - 1) // 2))
        out.append((f"random:{n},{e},{seed}", random_connected(n, e, seed)))
    return out


def corpus():
    graphs = [(f"complete:{n}", complete_graph(n)) for n in range(3, 7)]
    graphs += [(f"cycle:{n}", cycle_graph(n)) for n in range(3, 9)]
    graphs += [(f"path:{n}", path_graph(n)) for n in range(2, 9)]
    graphs += [(f"kpartial:{n},{m}", kpartial(n, m)) for n in range(4, 7) for m in range(1, n)]
    return graphs + random_corpus()


CORPUS = corpus()
_TABLES: dict[str, object] = {}


def table_of(name, graph):
    if name not in _TABLES:
        _TABLES[name] = homology_table(graph, max_edges=64)
    return _TABLES[name]


def test_criterion_01_euler_identity():
    bad = []
    for name, g in CORPUS:
        if graded_euler(table_of(name, g)) != evaluate_at_one_plus_q(chromatic_polynomial(g)):
            bad.append(name)
        clear_caches()
    record(1, not bad, f"{len(CORPUS)} graphs" + (f"; mismatches {bad}" if bad else ""))


def test_criterion_02_d_squared_and_order_invariance():
    bad = []
    rng = random.Random(2)
    for name, g in CORPUS:
        cx = chain_complex(g)
        for i in range(g.num_edges - 1):
            for j in range(g.n + 1):
                if not (cx.differential(i + 1, j) @ cx.differential(i, j)).is_zero():
                    bad.append(f"{name} d^2 at ({i},{j})")
        clear_caches()
        reference = table_of(name, g)
        for _ in range(3):
            order = list(range(g.num_edges))
            rng.shuffle(order)
            if not homology_table(g.reordered(order), max_edges=64).same_groups(reference):
                bad.append(f"{name} order {order}")
            clear_caches()
    record(2, not bad, f"{len(CORPUS)} graphs, 3 permutations each" + (f"; {bad}" if bad else ""))


def test_criterion_03_chain_level_ses():
    bad = []
    pairs = 0
    for name, g in CORPUS:
        for k in range(g.num_edges):
            if g.is_loop(k):
                continue
            pairs += 1
            rep = ses_report(make_triple(g, k))
            if not rep.passed:
                bad.append(f"{name} e={g.edges[k]}")
            clear_caches()
    record(3, not bad, f"{pairs} (graph, edge) pairs, all gradings" + (f"; {bad}" if bad else ""))


def test_criterion_04_gamma_vanishing():
    bad = []
    cases = 0
    for n in (4, 5, 6):
        for m in range(2, n):
            rep = gamma_zero_report(n, m)
            cases += len(rep.cases)
            bad += [f"n={n} m={m} ({c.i},{c.j})" for c in rep.failures()]
            clear_caches()
    record(4, not bad, f"{cases} bigradings for n=4,5 and the n=6 stretch" + (f"; {bad}" if bad else ""))


def test_criterion_05_splitting():
    bad = []
    cases = 0
    for n in (4, 5):
        for m in range(2, n):
            rep = verify_split(kpartial_triple(n, m))
            cases += len(rep.cases)
            bad += [f"n={n} m={m} {c.detail}" for c in rep.failures()]
            clear_caches()
    for g in (cycle_graph(4), cycle_graph(5), cycle_graph(6), complete_graph(4)):
        for k in range(g.num_edges):
            rep = verify_split(make_triple(g, k), non_bridge=True)
            cases += len(rep.cases)
            bad += [f"{g} e={g.edges[k]} {c.detail}" for c in rep.failures()]
        clear_caches()
    record(5, not bad, f"{cases} bigraded and j-summed comparisons" + (f"; {bad}" if bad else ""))


def test_criterion_06_cocycle_generators():
    bad = []
    indices = []
    for n in (4, 5):
        for m in range(1, n):
            rep = cocycle_report(n, m)
            bad += [f"n={n} m={m} ({c.i},{c.j}) {c.detail}" for c in rep.failures()]
            for c in rep.cases:
                index = c.detail.rsplit("lattice index ", 1)[-1]
                if index != "1":
                    indices.append(f"{n},{m}@({c.i},{c.j})={index}")
            clear_caches()
    detail = "membership and rational span at every stated grading"
    detail += f"; lattice index != 1 at {len(indices)} gradings (reported, not asserted)"
    record(6, not bad, detail + (f"; {bad}" if bad else ""))


def test_criterion_07_complete_graph_recursion():
    bad = []
    for n in (4, 5, 6):
        rep = recursion_check(n)
        if not rep.passed:
            bad.append(f"n={n}: " + "; ".join(c.detail for c in rep.to_report().failures()))
        table = homology_table(complete_graph(n))
        if table.degree_graded(0) != {n: HomologyGroup(1)}:
            bad.append(f"n={n}: H^0 is not Z at q-degree n")
        if any(i >= n - 1 for i, _ in table.groups):
            bad.append(f"n={n}: nonzero H^i for i >= n-1")
        clear_caches()
    record(7, not bad, "n=4, 5 and the n=6 stretch, bigraded and j-summed" + (f"; {bad}" if bad else ""))


def test_criterion_08_support_region():
    bad = []
    factors = set()
    for name, g in CORPUS:
        rep = support_region_check(table_of(name, g), g.n)
        factors.update(rep.factors_seen)
        if not rep.ok:
            bad.append(f"{name}: {rep.violations}")
    if factors - {2}:
        bad.append(f"invariant factors {sorted(factors)}")
    record(8, not bad, f"{len(CORPUS)} graphs; invariant factors seen {sorted(factors)}" + (f"; {bad}" if bad else ""))


def test_criterion_09_k6_worked_example():
    g = complete_graph(6)
    state = parse_state(g, "x:{1-2,1-3,2-3} | {4-6} | x:{5}")
    terms = chain_complex(g).boundary(state)
    added = {}
    for target, sign in terms.items():
        (e,) = [k for k in target.edge_ids() if not state.s >> k & 1]
        added[g.edges[e]] = sign
    expected = {
        (1, 4): 1, (1, 6): 1, (2, 4): -1, (2, 6): -1,
        (3, 4): -1, (3, 6): -1, (4, 5): -1, (5, 6): 1,
    }
    colors_ok = all(t.j == 2 and format_state(g, t).count("x:") == 2 for t in terms)
    record(9, added == expected and colors_ok, f"{len(terms)} terms with signs {list(added.values())}")


def test_criterion_10_structural_sanity():
    bad = []
    for g in (complete_graph(4), cycle_graph(5)):
        pendant = OrderedGraph(g.n + 1, g.edges + ((1, g.n + 1),))
        if not homology_table(pendant).same_groups(shift_table(homology_table(g), 1)):
            bad.append(f"pendant shift on {g}")
    for g in (cycle_graph(4), complete_graph(4), kpartial(5, 2), path_graph(4)):
        doubled = g.add_edges([g.edges[0], g.edges[len(g.edges) // 2]])
        if not homology_table(doubled).same_groups(homology_table(g)):
            bad.append(f"parallel edges on {g}")
    loops = [
        build_graph(3, [(1, 2), (2, 3)]).add_edges([(2, 2)]),
        complete_graph(3).add_edges([(1, 1)]),
        cycle_graph(4).add_edges([(3, 3), (4, 4)]),
        OrderedGraph(1, ((1, 1),)),
    ]
    for g in loops:
        if homology_table(g).groups:
            bad.append(f"loop graph {g} not acyclic")
    clear_caches()
    record(10, not bad, "pendant shift on 2 graphs, parallel edges on 4, loops on 4" + (f"; {bad}" if bad else ""))


if __name__ == "__main__":
    import sys

    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    for key in sorted(RESULTS):
        passed, detail = RESULTS[key]
        print(f"criterion {key:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
