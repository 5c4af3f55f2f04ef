"""
Odd Cycle Transversal (oct) and Edge Bipartization (eb) solvers:
nice tree-decomposition DP, the contraction-aware DP on quotients, the
Baker-style search over (i, Z') pairs and a brute-force oracle.
"""
from __future__ import annotations

import logging
import time
from itertools import combinations, product
from math import isqrt
from typing import Optional

from extensions import pool
from models import (
    BakerPlan,
    ContractionRequest,
    Graph,
    Instance,
    NiceTreeDecomposition,
    QuotientGraph,
    Solution,
    SolveStats,
    edge_key,
)
from utils.contraction import contract_decomposition
from utils.embedding import embed_components
from utils.errors import GraphInputError
from utils.graph_ops import bipartition, induced_subgraph, is_bipartite_after
from utils.layering import layer_components
from utils.treedec import heuristic_decompose, to_nice, validate

log = logging.getLogger(__name__)

DELETED = 2


def trivial_candidate(inst: Instance) -> frozenset:
    return inst.universe


def _better(new: frozenset, old: Optional[frozenset]) -> bool:
    """Smaller first; among equal sizes the set holding min(new ^ old) wins."""
    if old is None:
        return True
    if len(new) != len(old):
        return len(new) < len(old)
    diff = new ^ old
    return bool(diff) and min(diff) in new


def _identity_quotient(g: Graph) -> QuotientGraph:
    return QuotientGraph(g, {v: frozenset((v,)) for v in g.vertex_ids}, frozenset())


# -------------------------
# DYNAMIC PROGRAMMING
# -------------------------
class BipartizationDp:
    """DP over a nice decomposition of a quotient graph.

    A plain vertex is deleted (oct only) or placed on side 0/1. A contracted
    vertex carries an orientation: each member's side is its bipartition
    colour XOR the orientation. Deletions and monochromatic edges are
    charged when a vertex is forgotten; edge feasibility is checked when a
    vertex is introduced.
    """

    def __init__(self, graph: Graph, problem: str, candidate: frozenset, quotient: QuotientGraph,
                 color: dict[int, int], budget: int, apex_sides: Optional[dict[int, int]] = None):
        self.graph = graph
        self.problem = problem
        self.candidate = candidate
        self.quotient = quotient
        self.color = color
        self.budget = budget
        self.apex_sides = apex_sides or {}
        self._cross: dict[tuple[int, int], list[tuple[int, int]]] = {}
        image = quotient.image
        for u, v in graph.edges:
            if u not in image or v not in image:
                continue
            a, b = image[u], image[v]
            if a != b:
                self._cross.setdefault((a, b), []).append((u, v))
                self._cross.setdefault((b, a), []).append((v, u))
        self._pair_cache: dict[tuple, Optional[frozenset]] = {}
        self._unary_cache: dict[tuple, Optional[frozenset]] = {}

    def states(self, a: int) -> tuple[int, ...]:
        if self.quotient.is_contracted(a):
            return (0, 1)
        if self.problem == 'oct' and a in self.candidate:
            return (0, 1, DELETED)
        return (0, 1)

    def side(self, a: int, state: int, u: int) -> int:
        if self.quotient.is_contracted(a):
            return self.color[u] ^ state
        return state

    def _monochromatic(self, pairs, side_of) -> Optional[frozenset]:
        """Edges between same-side endpoints; None when oct forbids them or eb cannot delete one."""
        mono = []
        for (u, v), (su, sv) in zip(pairs, side_of):
            if su is None or sv is None or su != sv:
                continue
            if self.problem == 'oct':
                return None
            key = edge_key(u, v)
            if key not in self.candidate:
                return None
            mono.append(key)
        return frozenset(mono)

    def pair(self, a: int, sa: int, b: int, sb: int) -> Optional[frozenset]:
        """Edges to delete between quotient vertices a and b, None if infeasible."""
        key = (a, sa, b, sb)
        if key not in self._pair_cache:
            edges = self._cross.get((a, b), [])
            sides = [
                (None if sa == DELETED else self.side(a, sa, u), None if sb == DELETED else self.side(b, sb, v))
                for u, v in edges
            ]
            self._pair_cache[key] = self._monochromatic(edges, sides)
        return self._pair_cache[key]

    def unary(self, a: int, sa: int) -> Optional[frozenset]:
        """Edges to delete towards already-placed apices."""
        key = (a, sa)
        if key not in self._unary_cache:
            edges, sides = [], []
            if sa != DELETED:
                for u in self.quotient.preimage[a]:
                    for x in self.graph.adjacency[u]:
                        if x in self.apex_sides:
                            edges.append((u, x))
                            sides.append((self.side(a, sa, u), self.apex_sides[x]))
            self._unary_cache[key] = self._monochromatic(edges, sides)
        return self._unary_cache[key]

    def _keep(self, table: dict, state: tuple, deleted: frozenset):
        if len(deleted) > self.budget:
            return
        if _better(deleted, table.get(state)):
            table[state] = deleted

    def run(self, ntd: NiceTreeDecomposition) -> Optional[frozenset]:
        tables: dict[int, dict[tuple, frozenset]] = {}
        bags: dict[int, tuple[int, ...]] = {}
        for node in ntd.postorder():
            bag = tuple(sorted(node.bag))
            bags[node.id] = bag
            if node.kind == 'leaf':
                table = {(): frozenset()}
            elif node.kind == 'introduce':
                table = self._introduce(tables.pop(node.children[0]), bags[node.children[0]], node.vertex)
            elif node.kind == 'forget':
                table = self._forget(tables.pop(node.children[0]), bags[node.children[0]], node.vertex)
            else:
                table = self._join(tables.pop(node.children[0]), tables.pop(node.children[1]))
            tables[node.id] = table
        root = tables[ntd.root]
        return root.get(())

    def _introduce(self, child: dict, child_bag: tuple, v: int) -> dict:
        idx = sum(1 for u in child_bag if u < v)
        table: dict[tuple, frozenset] = {}
        for sv in self.states(v):
            if self.unary(v, sv) is None:
                continue
            for state, deleted in child.items():
                if all(self.pair(v, sv, b, sb) is not None for b, sb in zip(child_bag, state)):
                    table[state[:idx] + (sv,) + state[idx:]] = deleted
        return table

    def _forget(self, child: dict, child_bag: tuple, v: int) -> dict:
        idx = child_bag.index(v)
        rest = child_bag[:idx] + child_bag[idx + 1:]
        table: dict[tuple, frozenset] = {}
        for state, deleted in child.items():
            sv = state[idx]
            remaining = state[:idx] + state[idx + 1:]
            extra = set(self.unary(v, sv))
            if sv == DELETED:
                extra.add(v)
            for b, sb in zip(rest, remaining):
                extra |= self.pair(v, sv, b, sb)
            self._keep(table, remaining, deleted | extra)
        return table

    def _join(self, left: dict, right: dict) -> dict:
        table: dict[tuple, frozenset] = {}
        for state, deleted in left.items():
            other = right.get(state)
            if other is not None:
                self._keep(table, state, deleted | other)
        return table


def _contracted_run(inst: Instance, planar: Graph, quotient: QuotientGraph, ntd: NiceTreeDecomposition,
                    budget: int) -> Optional[frozenset]:
    """Best deletion set avoiding the contracted part, branching over apex states."""
    contracted = induced_subgraph(planar, quotient.contracted_set)
    color, _ = bipartition(contracted)
    if color is None:
        return None
    candidate = inst.allowed
    g = inst.graph
    apices = sorted(g.apex_set)
    best: Optional[frozenset] = None
    # each apex is deleted (oct candidates only) or placed on side 0 or 1
    for assignment in product(*[
        (0, 1, DELETED) if inst.is_vertex_problem and a in candidate else (0, 1) for a in apices
    ]):
        sides = dict(zip(apices, assignment))
        base = {a for a, s in sides.items() if s == DELETED}
        feasible = True
        # edges between two placed apices must already be bichromatic or deletable
        for a, b in combinations(apices, 2):
            if not g.has_edge(a, b) or DELETED in (sides[a], sides[b]) or sides[a] != sides[b]:
                continue
            if inst.is_vertex_problem or edge_key(a, b) not in candidate:
                feasible = False
                break
            base.add(edge_key(a, b))
        if not feasible or len(base) > budget:
            continue
        # surviving apices constrain their planar neighbours through unary costs
        live = {a: s for a, s in sides.items() if s != DELETED}
        dp = BipartizationDp(g, inst.problem, candidate, quotient, color, budget - len(base), live)
        found = dp.run(ntd)
        if found is None:
            continue
        total = frozenset(base) | found
        if _better(total, best):
            best = total
    return best


def dp_solve_contracted(inst: Instance, q: QuotientGraph, ntd: NiceTreeDecomposition,
                        budget: Optional[int] = None) -> Optional[Solution]:
    """Minimum solution disjoint from q.contracted_set (eb: no edge inside it)."""
    planar = inst.graph.without(inst.graph.apex_set)
    if set(q.image) != planar.vertex_set:
        raise GraphInputError('quotient does not cover the graph without its apices')
    found = _contracted_run(inst, planar, q, ntd, inst.k if budget is None else budget)
    if found is None:
        return None
    return Solution(inst.problem, found)


def dp_solve(inst: Instance, ntd: Optional[NiceTreeDecomposition] = None) -> Optional[Solution]:
    """Plain DP: apices are ordinary vertices here."""
    g = inst.graph
    plain = Instance(Graph(g.vertex_ids, g.adjacency), inst.problem, inst.k, inst.candidate)
    if ntd is None:
        ntd = to_nice(heuristic_decompose(plain.graph))
    else:
        ok, violations = validate(ntd.as_tree_decomposition(), plain.graph)
        if not ok:
            raise GraphInputError('decomposition does not fit the graph: ' + '; '.join(violations[:5]))
    return dp_solve_contracted(plain, _identity_quotient(plain.graph), ntd)


# -------------------------
# BAKER SEARCH
# -------------------------
def baker_plan(inst: Instance, embeddings=None) -> tuple[BakerPlan, Graph]:
    g = inst.graph
    planar = g.without(g.apex_set)
    if embeddings is None:
        embeddings = embed_components(planar) if planar.n else []
    p = max(1, isqrt(inst.k))
    _, _, sets = layer_components(planar, embeddings, p)
    candidate = inst.allowed
    if inst.is_vertex_problem:
        cand_vertices = frozenset(candidate)
    else:
        cand_vertices = frozenset(v for e in candidate for v in e)
    plan = BakerPlan(p, sets, cand_vertices & planar.vertex_set, inst.is_vertex_problem)
    return plan, planar


def _evaluate_pair(inst: Instance, planar: Graph, plan: BakerPlan, pair, budget: int):
    i, z_prime = pair
    quotient = contract_decomposition(planar, plan.sets, ContractionRequest(i, z_prime))
    # an odd cycle inside the contracted part rules the pair out
    if bipartition(induced_subgraph(planar, quotient.contracted_set))[0] is None:
        return None, -1
    td = heuristic_decompose(quotient.graph)
    ntd = to_nice(td)
    found = _contracted_run(inst, planar, quotient, ntd, budget)
    return (Solution(inst.problem, found) if found is not None else None), td.width


def baker_solve(inst: Instance, embeddings=None, threads: Optional[int] = None):
    """Returns (Solution or None, SolveStats).

    Target sizes s = 0..k are tried in turn; at each s the pairs with
    |Z'| <= cap(s) run in order and the first success wins, so the answer
    does not depend on the thread count.
    """
    started = time.perf_counter()
    stats = SolveStats()
    plan, planar = baker_plan(inst, embeddings)
    # ordered chunks keep the first feasible pair identical across thread counts
    chunk = 1 if not threads or threads <= 1 else 4 * threads
    result = None
    for s in range(inst.k + 1):
        pairs = list(plan.pairs(s))
        for start in range(0, len(pairs), chunk):
            batch = pairs[start:start + chunk]
            outcomes = pool.map(lambda pair: _evaluate_pair(inst, planar, plan, pair, s), batch, threads)
            for solution, width in outcomes:
                stats.pairs_tried += 1
                stats.max_width = max(stats.max_width, width)
                if solution is not None:
                    result = solution
                    break
            if result is not None:
                break
        if result is not None:
            break
        log.debug(f'no solution of size {s} after {stats.pairs_tried} pairs')
    stats.wall_ms = (time.perf_counter() - started) * 1000
    log.info(f'baker search: {"found" if result else "no solution"} after {stats.pairs_tried} pairs')
    return result, stats


# -------------------------
# ORACLE
# -------------------------
def brute_force(inst: Instance) -> Optional[Solution]:
    """Least-size, then lexicographically least, deletion set of size <= k."""
    universe = sorted(inst.allowed)
    for size in range(0, min(inst.k, len(universe)) + 1):
        for chosen in combinations(universe, size):
            if inst.is_vertex_problem:
                ok = is_bipartite_after(inst.graph, deleted_vertices=chosen)
            else:
                ok = is_bipartite_after(inst.graph, deleted_edges=chosen)
            if ok:
                return Solution(inst.problem, frozenset(chosen))
    return None


def is_solution(inst: Instance, solution: Solution) -> bool:
    """Deleting the set leaves a bipartite graph and stays inside the candidate set."""
    if not solution.deleted <= inst.allowed or solution.size > inst.k:
        return False
    if inst.is_vertex_problem:
        return is_bipartite_after(inst.graph, deleted_vertices=solution.deleted)
    return is_bipartite_after(inst.graph, deleted_edges=solution.deleted)
