"""
Domain types shared by every stage of the pipeline.
All types are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Mapping, Optional

import networkx as nx

from utils.constants import PROBLEM_CONFIG
from utils.errors import GraphInputError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Undirected edges are always stored with the smaller id first."""
    return (u, v) if u < v else (v, u)


# -------------------------
# GRAPH MODEL
# -------------------------
@dataclass(frozen=True)
class Graph:
    vertex_ids: tuple[int, ...]
    adjacency: Mapping[int, tuple[int, ...]]
    apex_set: frozenset[int] = frozenset()

    def __post_init__(self):
        known = set(self.vertex_ids)
        if len(known) != len(self.vertex_ids):
            raise GraphInputError('duplicate vertex ids')
        for v, nbrs in self.adjacency.items():
            if v not in known:
                raise GraphInputError(f'adjacency lists unknown vertex {v}')
            if v in nbrs:
                raise GraphInputError(f'self-loop at vertex {v}')
            if len(set(nbrs)) != len(nbrs):
                raise GraphInputError(f'parallel edges at vertex {v}')
            for u in nbrs:
                if u not in known:
                    raise GraphInputError(f'edge ({v}, {u}) leaves the vertex set')
                if v not in self.adjacency.get(u, ()):
                    raise GraphInputError(f'adjacency is not symmetric for ({v}, {u})')
        if not self.apex_set <= known:
            raise GraphInputError(f'apex ids {sorted(self.apex_set - known)} are not vertices')

    @classmethod
    def from_edges(cls, vertices, edges, apex_set=()) -> Graph:
        """Build a graph; duplicate edges collapse, self-loops are rejected."""
        vertex_ids = tuple(sorted(set(vertices)))
        known = set(vertex_ids)
        nbrs: dict[int, set[int]] = {v: set() for v in vertex_ids}
        for u, v in edges:
            if u == v:
                raise GraphInputError(f'self-loop at vertex {u}')
            if u not in known or v not in known:
                raise GraphInputError(f'edge ({u}, {v}) references an unknown vertex')
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = {v: tuple(sorted(ns)) for v, ns in nbrs.items()}
        return cls(vertex_ids, adjacency, frozenset(apex_set))

    @classmethod
    def empty(cls) -> Graph:
        return cls((), {})

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertex_ids)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u in self.vertex_ids for v in self.adjacency[u] if u < v)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adjacency and v in self.adjacency[u]

    def __contains__(self, v) -> bool:
        return v in self.vertex_set

    def __len__(self) -> int:
        return len(self.vertex_ids)

    def without(self, vertices) -> Graph:
        """The graph with `vertices` removed (used to split off the apex set)."""
        drop = set(vertices)
        keep = [v for v in self.vertex_ids if v not in drop]
        adjacency = {v: tuple(u for u in self.adjacency[v] if u not in drop) for v in keep}
        return Graph(tuple(keep), adjacency, frozenset(self.apex_set - drop))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertex_ids)
        g.add_edges_from(self.edges)
        return g

    def to_networkx(self) -> nx.Graph:
        return self.nx_graph.copy()


@dataclass(frozen=True)
class QuotientGraph:
    graph: Graph
    preimage: Mapping[int, frozenset[int]]
    contracted_set: frozenset[int]

    @cached_property
    def image(self) -> dict[int, int]:
        """Original vertex id -> quotient vertex id."""
        return {v: q for q, members in self.preimage.items() for v in members}

    def is_contracted(self, q: int) -> bool:
        """True when q stands for a component of the contracted set (even a singleton)."""
        return self.preimage[q] <= self.contracted_set

    def expand(self, quotient_vertices) -> frozenset[int]:
        return frozenset().union(*(self.preimage[q] for q in quotient_vertices))


# -------------------------
# EMBEDDING MODEL
# -------------------------
@dataclass(frozen=True)
class Face:
    id: int
    boundary_vertices: frozenset[int]
    boundary_walk: tuple[Edge, ...]
    marked: bool = False
    # faces of the parent embedding merged into this one (restricted embeddings only)
    parent_faces: frozenset[int] = frozenset()

    @property
    def length(self) -> int:
        return len(self.boundary_walk)


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    rotation: Mapping[int, tuple[int, ...]]
    faces: tuple[Face, ...]
    outer_face: int

    @property
    def outer(self) -> Face:
        return self.faces[self.outer_face]

    def face(self, face_id: int) -> Face:
        return self.faces[face_id]

    @cached_property
    def dart_face(self) -> dict[Edge, int]:
        """Directed edge -> id of the face whose walk uses it."""
        return {dart: f.id for f in self.faces for dart in f.boundary_walk}

    @property
    def marked_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.marked)

    def face_table(self) -> dict:
        return {
            'faces': [
                {'id': f.id, 'boundary': sorted(f.boundary_vertices), 'marked': f.marked}
                for f in self.faces
            ],
            'outer': self.outer_face,
        }


@dataclass(frozen=True)
class VfiGraph:
    """Vertex-face incidence graph. Nodes are ('v', id) and ('f', id)."""
    vertices: frozenset[int]
    faces: frozenset[int]
    incidences: tuple[tuple[int, int], ...]

    @staticmethod
    def vertex_node(v: int) -> tuple[str, int]:
        return ('v', v)

    @staticmethod
    def face_node(f: int) -> tuple[str, int]:
        return ('f', f)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from((self.vertex_node(v), self.face_node(f)) for v, f in self.incidences)
        return g

    @property
    def nodes(self) -> list[tuple[str, int]]:
        vertex_nodes = [self.vertex_node(v) for v in sorted(self.vertices)]
        return vertex_nodes + [self.face_node(f) for f in sorted(self.faces)]


# -------------------------
# LAYERING MODEL
# -------------------------
@dataclass(frozen=True)
class Layering:
    ell: Mapping[int, int]
    layers: tuple[frozenset[int], ...]
    bad_layers: frozenset[int] = frozenset()

    @property
    def m(self) -> int:
        return len(self.layers)

    def layer(self, i: int) -> frozenset[int]:
        """L_i, empty outside [1, m]."""
        if 1 <= i <= self.m:
            return self.layers[i - 1]
        return frozenset()

    def span(self, lo: int, hi: int) -> frozenset[int]:
        return frozenset().union(*(self.layer(i) for i in range(max(lo, 1), min(hi, self.m) + 1)))

    def above(self, i: int) -> frozenset[int]:
        """L_{>i}."""
        return self.span(i + 1, self.m)


@dataclass(frozen=True)
class ResiduePlan:
    p: int
    p_prime: int
    good_residues: tuple[int, ...]
    marked_count: int = 0


@dataclass(frozen=True)
class LayerSets:
    z: tuple[frozenset[int], ...]

    def get(self, i: int) -> frozenset[int]:
        """Z_i with the 1-based index used throughout."""
        return self.z[i - 1]

    @property
    def p(self) -> int:
        return len(self.z)


# -------------------------
# CONTRACTION DIAGNOSTICS MODEL
# -------------------------
@dataclass(frozen=True)
class ContractionRequest:
    i: int
    z_prime: frozenset[int] = frozenset()


@dataclass(frozen=True)
class SupportNode:
    id: int
    level: int
    parent: Optional[int]
    component: frozenset[int]
    vertices: frozenset[int]


@dataclass(frozen=True)
class SupportTree:
    residue: int
    nodes: tuple[SupportNode, ...]

    @property
    def root(self) -> SupportNode:
        return self.nodes[0]

    @property
    def depth(self) -> int:
        return max(node.level for node in self.nodes)

    def children(self, node_id: int) -> list[SupportNode]:
        return [node for node in self.nodes if node.parent == node_id]

    @cached_property
    def owner(self) -> dict[int, int]:
        """Vertex -> id of the node whose V_t holds it."""
        return {v: node.id for node in self.nodes for v in node.vertices}


@dataclass(frozen=True)
class FaceClassification:
    level: int
    i_minus: int
    i_plus: int
    annulus: Embedding
    deep_faces: frozenset[int]
    components: Mapping[int, tuple[frozenset[int], ...]]
    representatives: Mapping[int, frozenset[int]]
    kappa: Mapping[int, frozenset[int]]

    @property
    def shallow_faces(self) -> frozenset[int]:
        return frozenset(f.id for f in self.annulus.faces) - self.deep_faces

    @property
    def w_kappa(self) -> dict[int, int]:
        return {f: len(vs) for f, vs in self.kappa.items()}


# -------------------------
# TREE DECOMPOSITION MODEL
# -------------------------
@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    parent: Mapping[int, Optional[int]]
    root: int

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags.values()), default=0) - 1

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {t: [] for t in self.bags}
        for t, par in sorted(self.parent.items()):
            if par is not None:
                out[par].append(t)
        return out

    @property
    def tree_edges(self) -> list[tuple[int, int]]:
        return [(par, t) for t, par in sorted(self.parent.items()) if par is not None]


@dataclass(frozen=True)
class NiceNode:
    id: int
    kind: str
    bag: frozenset[int]
    vertex: Optional[int] = None
    children: tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: Mapping[int, NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max((len(node.bag) for node in self.nodes.values()), default=0) - 1

    def postorder(self) -> list[NiceNode]:
        order: list[NiceNode] = []
        stack = [(self.root, False)]
        while stack:
            node_id, expanded = stack.pop()
            node = self.nodes[node_id]
            if expanded:
                order.append(node)
                continue
            stack.append((node_id, True))
            for child in reversed(node.children):
                stack.append((child, False))
        return order

    def as_tree_decomposition(self) -> TreeDecomposition:
        parent: dict[int, Optional[int]] = {self.root: None}
        for node in self.nodes.values():
            for child in node.children:
                parent[child] = node.id
        return TreeDecomposition({t: node.bag for t, node in self.nodes.items()}, parent, self.root)


# -------------------------
# SOLVER MODEL
# -------------------------
@dataclass(frozen=True)
class Instance:
    graph: Graph
    problem: str
    k: int
    # None means every vertex (oct) or every edge (eb) may be deleted
    candidate: Optional[frozenset] = None

    def __post_init__(self):
        if self.problem not in PROBLEM_CONFIG:
            raise GraphInputError(f'unknown problem kind {self.problem!r}')
        if self.k < 0:
            raise GraphInputError('budget k must be non-negative')
        if self.candidate is not None and not self.candidate <= self.universe:
            raise GraphInputError('candidate set leaves the graph')

    @property
    def is_vertex_problem(self) -> bool:
        return PROBLEM_CONFIG[self.problem]['vertex_problem']

    @property
    def universe(self) -> frozenset:
        """Every deletable element: vertices for oct, edges for eb."""
        if self.is_vertex_problem:
            return self.graph.vertex_set
        return frozenset(self.graph.edges)

    @property
    def allowed(self) -> frozenset:
        return self.universe if self.candidate is None else self.candidate


@dataclass(frozen=True)
class Solution:
    problem: str
    deleted: frozenset = frozenset()

    @property
    def size(self) -> int:
        return len(self.deleted)

    def sorted_deleted(self) -> list:
        return sorted(self.deleted)

    def as_dict(self) -> dict:
        deleted = self.sorted_deleted()
        if self.problem == 'eb':
            deleted = [list(e) for e in deleted]
        return {'size': self.size, 'deleted': deleted}


@dataclass(frozen=True)
class BakerPlan:
    p: int
    sets: LayerSets
    candidate_vertices: frozenset[int]
    vertex_problem: bool

    def cap(self, budget: int) -> int:
        """Largest |Z'| that can cover a solution of size `budget`."""
        if self.vertex_problem:
            return budget // self.p
        return (2 * budget) // self.p

    def pairs(self, budget: int) -> Iterator[tuple[int, frozenset[int]]]:
        """Pairs (i, Z') in ascending i, then |Z'|, then lexicographic Z'."""
        cap = self.cap(budget)
        for i in range(1, self.p + 1):
            pool = sorted(self.sets.get(i) & self.candidate_vertices)
            for size in range(0, min(cap, len(pool)) + 1):
                for z_prime in combinations(pool, size):
                    yield i, frozenset(z_prime)


@dataclass
class SolveStats:
    pairs_tried: int = 0
    max_width: int = -1
    wall_ms: float = 0.0

    def as_dict(self) -> dict:
        return {'pairs_tried': self.pairs_tried, 'max_width': self.max_width, 'wall_ms': round(self.wall_ms, 3)}


# -------------------------
# RUN CONFIGURATION
# -------------------------
@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    problem: str = 'oct'
    k: int = 0
    p: Optional[int] = None
    seed: int = 7
    threads: int = 1
    deep_face_slope: int = 4
    deep_face_offset: int = 4
    treewidth_cap: int = 12
    diameter_slope_cap: float = 8.0
    max_zprime: int = 6
    output_path: Optional[str] = None

    @classmethod
    def from_config(cls, config: Mapping, command: str, **overrides) -> RunConfig:
        """Merge app config defaults with per-run flags (None means 'not given')."""
        values = {
            'seed': config.get('PLANAR_SEED', 7),
            'threads': config.get('PLANAR_THREADS', 1),
            'deep_face_slope': config.get('DEEP_FACE_SLOPE', 4),
            'deep_face_offset': config.get('DEEP_FACE_OFFSET', 4),
            'treewidth_cap': config.get('TREEWIDTH_CAP', 12),
            'diameter_slope_cap': config.get('DIAMETER_SLOPE_CAP', 8.0),
            'max_zprime': config.get('MAX_ZPRIME', 6),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(command=command, **values)


# -------------------------
# GRAPH FILE DOCUMENT
# -------------------------
@dataclass(frozen=True)
class GraphDocument:
    """A parsed graph file: the graph plus its optional embedding blocks."""
    graph: Graph
    rotation: Optional[Mapping[int, tuple[int, ...]]] = None
    marked_faces: tuple[int, ...] = ()


# -------------------------
# VERIFICATION CORPUS
# -------------------------
@dataclass(frozen=True)
class Corpus:
    name: str
    layering_graphs: int = 0
    layering_max_n: int = 0
    support_graphs: int = 0
    small_graphs: int = 0
    oracle_instances: int = 0
    oracle_max_n: int = 0
    oracle_max_k: int = 0
    grid_sizes: tuple[int, ...] = ()
    random_sizes: tuple[int, ...] = ()
    p_values: tuple[int, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not (
            self.layering_graphs or self.support_graphs or self.small_graphs
            or self.oracle_instances or self.grid_sizes or self.random_sizes
        )

    @classmethod
    def from_config(cls, config: Mapping, name: str) -> Corpus:
        if name == 'empty':
            return cls(name)
        if name == 'full' or config.get('VERIFY_FULL_CORPUS'):
            sizes = config['FULL_CORPUS']
        else:
            sizes = {
                'layering_graphs': config['VERIFY_LAYERING_GRAPHS'],
                'layering_max_n': config['VERIFY_LAYERING_MAX_N'],
                'support_graphs': config['VERIFY_SUPPORT_GRAPHS'],
                'small_graphs': config['VERIFY_SMALL_GRAPHS'],
                'oracle_instances': config['VERIFY_ORACLE_INSTANCES'],
                'oracle_max_n': config['VERIFY_ORACLE_MAX_N'],
                'oracle_max_k': config['VERIFY_ORACLE_MAX_K'],
                'grid_sizes': config['VERIFY_GRID_SIZES'],
                'random_sizes': config['VERIFY_RANDOM_SIZES'],
                'p_values': config['VERIFY_P_VALUES'],
            }
        values = {key: tuple(value) if isinstance(value, list) else value for key, value in sizes.items()}
        return cls(name, **values)
