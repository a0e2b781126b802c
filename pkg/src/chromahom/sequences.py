"""Deletion/contraction chain maps, the connecting map and splitting checks.

For an edge ``e`` the graph is first reordered so that ``e`` is the last
edge.  Then ``alpha: C^{i-1,j}(G/e) -> C^{i,j}(G)`` (add ``e``) and
``beta: C^{i,j}(G) -> C^{i,j}(G-e)`` (forget states containing ``e``) are
chain maps with no sign correction, and ``G/e`` is kept as a multigraph so
that its edges are exactly ``E(G) - e`` in the inherited order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .graphs import (
    GraphError,
    OrderedGraph,
    contract_edge,
    contraction_relabel,
    delete_edge,
    is_bridge,
    kpartial,
)
from .homology import (
    BigradedTable,
    HomologyGroup,
    HomologyPresentation,
    homology_table,
    presentation,
)
from .smith import smith_normal_form
from .sparse import SparseIntegerMatrix
from .states import EnhancedState, chain_complex
from .reports import Case, Report


@dataclass(frozen=True)
class EdgeTriple:
    graph: OrderedGraph
    edge: int
    order: tuple[int, ...]
    reordered: OrderedGraph
    minus: OrderedGraph
    over: OrderedGraph

    @property
    def last(self) -> int:
        return self.reordered.num_edges - 1

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.graph.edges[self.edge]


def make_triple(graph: OrderedGraph, edge: int) -> EdgeTriple:
    graph._check_edge(edge)
    if graph.is_loop(edge):
        raise GraphError("the deletion/contraction triple needs a non-loop edge")
    order = tuple(k for k in range(graph.num_edges) if k != edge) + (edge,)
    reordered = graph.reordered(list(order))
    last = reordered.num_edges - 1
    return EdgeTriple(
        graph=graph,
        edge=edge,
        order=order,
        reordered=reordered,
        minus=delete_edge(reordered, last),
        over=contract_edge(reordered, last, "multigraph"),
    )


def _alpha_state(triple: EdgeTriple, state: EnhancedState) -> EnhancedState:
    g_cx = chain_complex(triple.reordered)
    o_cx = chain_complex(triple.over)
    s = state.s | 1 << triple.last
    g_labels, d = g_cx.partition(s)
    o_labels, _ = o_cx.partition(state.s)
    u, v = triple.endpoints
    relabel = contraction_relabel(triple.graph.n, u, v)
    coloring = 0
    seen = set()
    for w in range(1, triple.graph.n + 1):
        k = g_labels[w]
        if k in seen:
            continue
        seen.add(k)
        if state.coloring >> o_labels[relabel(w)] & 1:
            coloring |= 1 << k
    return EnhancedState(s, coloring)


def alpha_matrix(triple: EdgeTriple, i: int, j: int) -> SparseIntegerMatrix:
    """``alpha^{i-1,j}: C^{i-1,j}(G/e) -> C^{i,j}(G)``."""
    source = chain_complex(triple.over).basis(i - 1, j)
    target = chain_complex(triple.reordered).basis(i, j)
    cols = [{target.index[_alpha_state(triple, st)]: 1} for st in source.states]
    return SparseIntegerMatrix(len(target), len(source), cols)


def beta_matrix(triple: EdgeTriple, i: int, j: int) -> SparseIntegerMatrix:
    """``beta^{i,j}: C^{i,j}(G) -> C^{i,j}(G-e)``."""
    source = chain_complex(triple.reordered).basis(i, j)
    target = chain_complex(triple.minus).basis(i, j)
    bit = 1 << triple.last
    cols = [
        {} if st.s & bit else {target.index[st]: 1}
        for st in source.states
    ]
    return SparseIntegerMatrix(len(target), len(source), cols)


def _diff(graph: OrderedGraph, i: int, j: int) -> SparseIntegerMatrix:
    cx = chain_complex(graph)
    return SparseIntegerMatrix(len(cx.basis(i + 1, j)), len(cx.basis(i, j))) if i < 0 else cx.differential(i, j)


def ses_checks(triple: EdgeTriple, i: int, j: int) -> dict[str, bool]:
    """Each ingredient of exactness of ``0 -> C(G/e) -> C(G) -> C(G-e) -> 0`` at ``(i, j)``."""
    alpha = alpha_matrix(triple, i, j)
    beta = beta_matrix(triple, i, j)
    hit = [next(iter(col)) for col in alpha.columns if len(col) == 1 and next(iter(col.values())) == 1]
    alpha_ok = len(hit) == alpha.cols and len(set(hit)) == len(hit)
    beta_targets = [next(iter(col)) for col in beta.columns if col]
    beta_units = all(
        len(col) == 1 and next(iter(col.values())) == 1 for col in beta.columns if col
    )
    beta_ok = beta_units and sorted(beta_targets) == list(range(beta.rows))
    kernel_beta = {c for c, col in enumerate(beta.columns) if not col}
    exact_ok = kernel_beta == set(hit)
    g, o, m = triple.reordered, triple.over, triple.minus
    alpha_next = alpha_matrix(triple, i + 1, j)
    beta_next = beta_matrix(triple, i + 1, j)
    alpha_chain = (_diff(g, i, j) @ alpha) == (alpha_next @ _diff(o, i - 1, j))
    beta_chain = (beta_next @ _diff(g, i, j)) == (_diff(m, i, j) @ beta)
    return {
        "alpha_injective": alpha_ok,
        "beta_surjective": beta_ok,
        "ker_beta_eq_im_alpha": exact_ok,
        "alpha_chain_map": alpha_chain,
        "beta_chain_map": beta_chain,
    }


def verify_ses(triple: EdgeTriple, i: int, j: int) -> bool:
    return all(ses_checks(triple, i, j).values())


def triple_gradings(triple: EdgeTriple):
    n = triple.graph.n
    for i in range(triple.graph.num_edges + 1):
        for j in range(n + 1):
            yield i, j


def ses_report(triple: EdgeTriple) -> Report:
    cases = []
    for i, j in triple_gradings(triple):
        checks = ses_checks(triple, i, j)
        failed = [k for k, ok in checks.items() if not ok]
        cases.append(Case(i, j, not failed, "ok" if not failed else "failed: " + ",".join(failed)))
    u, v = triple.endpoints
    return Report("ses", {"graph": str(triple.graph), "edge": f"{u},{v}"}, cases)


# -- homology-level maps --------------------------------------------------------


@lru_cache(maxsize=512)
def _presentation(graph: OrderedGraph, i: int, j: int) -> HomologyPresentation:
    return presentation(graph, i, j)


@dataclass
class InducedMap:
    """Integer matrix of a map between homology groups in generator coordinates.

    Column ``k`` holds the coordinates of the image of source generator ``k``;
    entries for a torsion summand of order ``d`` are reduced mod ``d``.
    """

    source_orders: list[int]
    target_orders: list[int]
    matrix: list[list[int]]

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)


def _induced(source: HomologyPresentation, target: HomologyPresentation, push) -> InducedMap:
    columns = [target.coordinates(push(g)) for g in source.generators()]
    rows = len(target.orders)
    matrix = [[columns[k][r] for k in range(len(columns))] for r in range(rows)]
    return InducedMap(source.orders, target.orders, matrix)


def _reindex(vec: dict[int, int], src_states, dst_index) -> dict[int, int]:
    return {dst_index[src_states[k]]: v for k, v in vec.items()}


def connecting_map(triple: EdgeTriple, i: int, j: int) -> InducedMap:
    """``gamma: H^{i,j}(G-e) -> H^{i,j}(G/e)`` evaluated by the snake lemma."""
    g_cx = chain_complex(triple.reordered)
    m_cx = chain_complex(triple.minus)
    o_cx = chain_complex(triple.over)
    source = _presentation(triple.minus, i, j)
    target = _presentation(triple.over, i, j)
    m_states = m_cx.basis(i, j).states
    g_index = g_cx.basis(i, j).index
    g_next = g_cx.basis(i + 1, j).states
    o_index = o_cx.basis(i, j).index
    pre_alpha = {
        _alpha_state(triple, st): k for k, st in enumerate(o_cx.basis(i, j).states)
    }
    bit = 1 << triple.last
    diff = g_cx.differential(i, j) if len(g_next) else None

    def gamma(z: dict[int, int]) -> dict[int, int]:
        lift = _reindex(z, m_states, g_index)
        image = diff.apply(lift) if diff is not None else {}
        u = {}
        for row, v in image.items():
            st = g_next[row]
            if not st.s & bit:
                raise ArithmeticError("boundary of the lift is not in the image of alpha")
            u[pre_alpha[st]] = v
        return u

    if len(o_index) == 0:
        return InducedMap(source.orders, [], [])
    return _induced(source, target, gamma)


def beta_star(triple: EdgeTriple, i: int, j: int) -> InducedMap:
    g_states = chain_complex(triple.reordered).basis(i, j).states
    m_index = chain_complex(triple.minus).basis(i, j).index
    bit = 1 << triple.last

    def push(z):
        return {m_index[g_states[k]]: v for k, v in z.items() if not g_states[k].s & bit}

    return _induced(_presentation(triple.reordered, i, j), _presentation(triple.minus, i, j), push)


def alpha_star(triple: EdgeTriple, i: int, j: int) -> InducedMap:
    """``alpha: H^{i,j}(G/e) -> H^{i+1,j}(G)``."""
    o_states = chain_complex(triple.over).basis(i, j).states
    g_index = chain_complex(triple.reordered).basis(i + 1, j).index

    def push(z):
        return {g_index[_alpha_state(triple, o_states[k])]: v for k, v in z.items()}

    return _induced(_presentation(triple.over, i, j), _presentation(triple.reordered, i + 1, j), push)


# -- integral exactness of the long exact sequence ----------------------------


def _lattice_contains(gens: list[list[int]], dim: int, vec: list[int]) -> bool:
    mat = SparseIntegerMatrix(dim, len(gens), [{r: v for r, v in enumerate(g) if v} for g in gens])
    return smith_normal_form(mat, keep_transforms=True).in_image({r: v for r, v in enumerate(vec) if v})


def _relations(orders: list[int]) -> list[list[int]]:
    k = len(orders)
    return [[d if r == t else 0 for r in range(k)] for t, d in enumerate(orders) if d]


def exact_at(incoming: InducedMap, outgoing: InducedMap) -> bool:
    """``im incoming == ker outgoing`` as subgroups of the middle group."""
    orders = outgoing.source_orders
    k = len(orders)
    rel = _relations(orders)
    image = [[incoming.matrix[r][c] for r in range(k)] for c in range(len(incoming.source_orders))]
    image_lattice = image + rel
    # ker: x with outgoing(x) in the target relations
    target = outgoing.target_orders
    kt = len(target)
    block_cols = [
        {r: outgoing.matrix[r][c] for r in range(kt) if outgoing.matrix[r][c]} for c in range(k)
    ] + [{t: -d} for t, d in enumerate(target) if d]
    snf = smith_normal_form(SparseIntegerMatrix(kt, len(block_cols), block_cols), keep_transforms=True)
    kernel_lattice = [[vec.get(c, 0) for c in range(k)] for vec in snf.kernel_basis()]
    kernel_lattice += rel
    return all(_lattice_contains(kernel_lattice, k, v) for v in image_lattice) and all(
        _lattice_contains(image_lattice, k, v) for v in kernel_lattice
    )


def _zero_map(src: list[int], dst: list[int]) -> InducedMap:
    return InducedMap(src, dst, [[0] * len(src) for _ in dst])


def les_report(triple: EdgeTriple, j: int | None = None) -> Report:
    """Integral exactness at every node of the deletion/contraction long exact sequence."""
    n = triple.graph.n
    js = range(n + 1) if j is None else [j]
    top = triple.graph.num_edges
    cases = []
    for jj in js:
        maps: list[tuple[str, int, InducedMap]] = []
        for i in range(top + 1):
            maps.append(("beta", i, beta_star(triple, i, jj)))
            maps.append(("gamma", i, connecting_map(triple, i, jj)))
            maps.append(("alpha", i, alpha_star(triple, i, jj)))
        first = maps[0][2]
        sequence = [("in", -1, _zero_map([], first.source_orders))] + maps
        ok_all = True
        details = []
        for k in range(1, len(sequence)):
            incoming = sequence[k - 1][2]
            outgoing = sequence[k][2]
            if not exact_at(incoming, outgoing):
                ok_all = False
                details.append(f"not exact before {sequence[k][0]}^{sequence[k][1]}")
        last = sequence[-1][2]
        if last.target_orders and not exact_at(last, _zero_map(last.target_orders, [])):
            ok_all = False
            details.append("not exact at the end")
        cases.append(Case(None, jj, ok_all, "; ".join(details) or "exact at every node"))
    u, v = triple.endpoints
    return Report("les", {"graph": str(triple.graph), "edge": f"{u},{v}"}, cases)


# -- the K_{n-1}^m statements ---------------------------------------------------


def kpartial_triple(n: int, m: int) -> EdgeTriple:
    if n < 4:
        raise GraphError("the K_{n-1}^m statements need n >= 4")
    if not 2 <= m <= n - 1:
        raise GraphError(f"need 2 <= m <= n-1, got m={m}")
    graph = kpartial(n, m)
    return make_triple(graph, graph.find_edge(m, n))


def gamma_zero_report(n: int, m: int) -> Report:
    triple = kpartial_triple(n, m)
    cases = []
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j not in (n - 1, n):
                continue
            gamma = connecting_map(triple, i, j)
            detail = f"H(G-e)={HomologyGroup(gamma.source_orders.count(0), tuple(d for d in gamma.source_orders if d))}"
            cases.append(Case(i, j, gamma.is_zero(), detail + (" map=0" if gamma.is_zero() else f" map={gamma.matrix}")))
    return Report("gamma-zero", {"n": n, "m": m, "edge": f"{m},{n}"}, cases)


@lru_cache(maxsize=64)
def _table(graph: OrderedGraph) -> BigradedTable:
    return homology_table(graph, max_edges=64)


def _split_case(big: HomologyGroup, left: HomologyGroup, right: HomologyGroup) -> tuple[bool, str]:
    expected = left + right
    return big == expected, f"{big} vs {left} (+) {right}"


def verify_split(triple: EdgeTriple, non_bridge: bool = False) -> Report:
    """``H^{i+1,j}(G) = H^{i,j}(G/e) + H^{i+1,j}(G-e)`` by rank and torsion.

    Without ``non_bridge`` the triple must come from ``kpartial(n, m)`` with
    ``e = {m, n}`` and ``2 <= m <= n-1``; every bigrading where one of the
    three groups is nonzero is compared, and the j-summed statement is
    checked for every degree.  With ``non_bridge`` the edge must not be a
    bridge and only ``H^{i,n-i}`` for ``i >= 2`` is compared.
    """
    graph = triple.graph
    n = graph.n
    t_g, t_o, t_m = _table(triple.reordered), _table(triple.over), _table(triple.minus)
    cases = []
    if non_bridge:
        if is_bridge(graph, triple.edge):
            raise GraphError("the i >= 2 splitting statement needs a non-bridge edge")
        for i in range(2, n + 1):
            ok, detail = _split_case(t_g.get(i, n - i), t_o.get(i - 1, n - i), t_m.get(i, n - i))
            cases.append(Case(i, n - i, ok, detail))
        u, v = triple.endpoints
        return Report("split-nonbridge", {"graph": str(graph), "edge": f"{u},{v}"}, cases)

    u, v = triple.endpoints
    m = u
    if graph.canonical() != kpartial(n, m).canonical() or v != n or not 2 <= m <= n - 1:
        raise GraphError("splitting statement applies to kpartial(n, m) with e = {m, n}, 2 <= m <= n-1")
    cells = set(t_g.groups) | {(i + 1, j) for i, j in t_o.groups} | set(t_m.groups)
    for i1, j in sorted(cells):
        i = i1 - 1
        ok, detail = _split_case(t_g.get(i1, j), t_o.get(i, j), t_m.get(i1, j))
        tag = "stated" if i + j in (n - 1, n) else "extra"
        cases.append(Case(i, j, ok, f"[{tag}] " + detail))
    for i in range(-1, graph.num_edges):
        ok, detail = _split_case(t_g.degree(i + 1), t_o.degree(i), t_m.degree(i + 1))
        cases.append(Case(i, None, ok, "summed over j: " + detail))
    return Report("split", {"n": n, "m": m, "edge": f"{m},{n}"}, cases)


# -- the section on H^{1,n-1} ----------------------------------------------------


@dataclass
class SectionCheck:
    kernel_maps_to_kernel: bool
    literal_values: dict[str, int]
    literal_kills_image: bool
    replaced_generators_killed: bool
    section: dict[int, int] = field(default_factory=dict)
    section_exists: bool = False

    @property
    def ok(self) -> bool:
        return self.kernel_maps_to_kernel and self.replaced_generators_killed and self.section_exists


def phi_section_check(triple: EdgeTriple, n: int) -> SectionCheck:
    """Check the splitting at ``(1, n-1)`` through a retraction onto ``H^{0,n-1}(G/e)``.

    The chain-level map sends the one-edge state on ``e`` to the all-x state of
    ``G/e`` and every other one-edge state to 0.  It maps cycles to cycles and
    kills ``w - w'`` and the vertex stars away from ``m`` and ``n``, but not
    ``w'`` itself.  The retraction that does kill the whole image is found by
    solving for an integer functional vanishing on ``im d^{0,n-1}`` and taking
    the value 1 on ``e``; its existence is what makes the sequence split.
    """
    graph = triple.graph
    u, v = triple.endpoints
    m = u
    if graph.n != n or v != n or graph.canonical() != kpartial(n, m).canonical() or not 2 <= m <= n - 1:
        raise GraphError("phi section check needs kpartial(n, m) with e = {m, n}, 2 <= m <= n-1")
    g = triple.reordered
    cx = chain_complex(g)
    o_cx = chain_complex(triple.over)
    c1 = cx.basis(1, n - 1)
    c0 = cx.basis(0, n - 1)
    e_bit = 1 << triple.last
    e_state = next(k for k, st in enumerate(c1.states) if st.s == e_bit)

    def phi(vec: dict[int, int]) -> dict[int, int]:
        coeff = vec.get(e_state, 0)
        return {0: coeff} if coeff else {}

    # kernel of d^{1,n-1} maps into the kernel of d^{0,n-1}(G/e)
    d1 = cx.differential(1, n - 1)
    kernel = smith_normal_form(d1, keep_transforms=True).kernel_basis()
    target_diff = o_cx.differential(0, n - 1)
    kernel_ok = all(not target_diff.apply(phi(z)) for z in kernel)

    d0 = cx.differential(0, n - 1)
    # generator of C^{0,n-1}(G) with vertex t colored 1
    star = {}
    for k, st in enumerate(c0.states):
        hat = next(t for t in range(1, n + 1) if not st.coloring >> (t - 1) & 1)
        star[hat] = d0.columns[k]
    literal = {f"d(hat {t})": phi(star[t]).get(0, 0) for t in sorted(star)}
    w_minus = dict(star[m])
    for r, val in star[n].items():
        w_minus[r] = w_minus.get(r, 0) - val
    w_minus = {r: val for r, val in w_minus.items() if val}
    literal["d(hat m) - d(hat n)"] = phi(w_minus).get(0, 0)
    replaced = all(phi(star[t]).get(0, 0) == 0 for t in star if t not in (m, n)) and not phi(w_minus)
    literal_kills = all(value == 0 for key, value in literal.items() if key.startswith("d(hat"))

    # integer functional r on C^{1,n-1}(G): r . d0 = 0 and r[e] = 1
    left = smith_normal_form(d0.transpose(), keep_transforms=True).kernel_basis()
    section, exists = _combine_to_one(left, e_state)
    if exists:
        exists = all(sum(section.get(r, 0) * val for r, val in col.items()) == 0 for col in d0.columns)
    return SectionCheck(kernel_ok, literal, literal_kills, replaced, section, exists)


def _combine_to_one(basis: list[dict[int, int]], position: int) -> tuple[dict[int, int], bool]:
    """Integer combination of ``basis`` whose ``position`` coordinate is 1, if any."""
    from math import gcd

    combo: dict[int, int] = {}
    g = 0
    for vec in basis:
        a = vec.get(position, 0)
        if not a:
            continue
        if g == 0:
            combo = dict(vec)
            g = a
            continue
        new_g, x, y = _xgcd(g, a)
        merged: dict[int, int] = {}
        for key in set(combo) | set(vec):
            val = x * combo.get(key, 0) + y * vec.get(key, 0)
            if val:
                merged[key] = val
        combo, g = merged, new_g
        assert gcd(g, 1) == 1
    if abs(g) != 1:
        return {}, False
    if g == -1:
        combo = {k: -v for k, v in combo.items()}
    return combo, True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0
