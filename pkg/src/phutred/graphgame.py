"""The edge-deleting checkpoint game on a directed graph, plus an exact solver.

Rules of the game:

* The existential player moves first; the start vertex is active.
* A move is a simple directed path over live edges from the active vertex
  to a vertex that is either a checkpoint or currently points at a live
  edge.  Interior path vertices must be neither.  The path's edges are
  deleted and the endpoint becomes active.
* Ending a move on a vertex that points at a live edge wins immediately.
  A player with no legal move loses.

Pointer liveness is dynamic: a vertex whose pointed edge has been deleted
behaves like an ordinary vertex and may be traversed.  When a move both
ends on a pointer vertex and deletes edges, the win test uses the live
set as it was when the move began; on instances built here the two
readings never differ because a winning path cannot contain the edge its
endpoint points at.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import IllegalMove, ResourceError
from .qbf import QbfFormula

DEFAULT_NODE_CAP = 5_000_000


class Player(Enum):
    EXISTS = "exists"
    FORALL = "forall"

    @property
    def opponent(self) -> "Player":
        return Player.FORALL if self is Player.EXISTS else Player.EXISTS


@dataclass(frozen=True)
class GraphGameInstance:
    labels: Tuple[str, ...]
    edges: Tuple[Tuple[int, int], ...]
    checkpoints: frozenset
    start: int
    pointing: Tuple[Tuple[int, int], ...]  # (vertex, edge index)
    n: int = 0
    m: int = 0

    # derived, filled in __post_init__
    index: Dict[str, int] = field(default_factory=dict, compare=False)
    out_edges: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)
    pointer_edge: Dict[int, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "index", {label: i for i, label in enumerate(self.labels)}
        )
        out: List[List[int]] = [[] for _ in self.labels]
        for eid, (u, _v) in enumerate(self.edges):
            out[u].append(eid)
        # deterministic: order out-edges by head vertex index
        for lst in out:
            lst.sort(key=lambda eid: self.edges[eid][1])
        object.__setattr__(self, "out_edges", tuple(tuple(lst) for lst in out))
        pe: Dict[int, int] = {}
        for v, eid in self.pointing:
            if v in pe:
                raise ValueError(f"vertex {self.labels[v]} points two edges")
            pe[v] = eid
        object.__setattr__(self, "pointer_edge", pe)

    def v(self, label: str) -> int:
        return self.index[label]

    def edge_id(self, u_label: str, v_label: str) -> int:
        u, v = self.index[u_label], self.index[v_label]
        for eid, (a, b) in enumerate(self.edges):
            if (a, b) == (u, v):
                return eid
        raise KeyError(f"no edge {u_label}->{v_label}")

    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def live_pointer(self, vertex: int, live: int) -> bool:
        eid = self.pointer_edge.get(vertex)
        return eid is not None and bool(live >> eid & 1)

    def to_json(self) -> str:
        payload = {
            "vertices": list(self.labels),
            "edges": [[self.labels[u], self.labels[v]] for u, v in self.edges],
            "checkpoints": sorted(self.labels[v] for v in self.checkpoints),
            "start": self.labels[self.start],
            "pointing": [
                [self.labels[v], [self.labels[self.edges[e][0]], self.labels[self.edges[e][1]]]]
                for v, e in self.pointing
            ],
            "n": self.n,
            "m": self.m,
        }
        return json.dumps(payload, indent=2) + "\n"


@dataclass(frozen=True)
class GraphGameState:
    instance: GraphGameInstance
    live: int
    active: int
    to_move: Player

    @staticmethod
    def initial(instance: GraphGameInstance) -> "GraphGameState":
        return GraphGameState(
            instance, instance.full_mask(), instance.start, Player.EXISTS
        )

    def key(self) -> Tuple[int, int, Player]:
        return (self.live, self.active, self.to_move)


@dataclass(frozen=True)
class GraphMove:
    path: Tuple[int, ...]

    def labels(self, instance: GraphGameInstance) -> List[str]:
        return [instance.labels[v] for v in self.path]


class Outcome(Enum):
    ONGOING = "ongoing"
    WIN_FOR_MOVER = "win_for_mover"


def build_instance(formula: QbfFormula) -> GraphGameInstance:
    """Construct the game graph for a formula.

    Variable component i contributes a_i..g_i with the two-branch diamond;
    the formula component contributes x_i, y_i, z_i and the pointer chain
    w_i1..w_i3 per clause.  Checkpoints are g_0..g_{n-1} and every z_i;
    note g_n is deliberately *not* a checkpoint, so the universal player's
    last branch choice and clause choice happen in one move.
    """
    n, m = formula.n, formula.m
    labels: List[str] = ["g0"]
    for i in range(1, n + 1):
        labels += [f"a{i}", f"b{i}", f"c{i}", f"d{i}", f"e{i}", f"f{i}", f"g{i}"]
    for i in range(1, m + 1):
        labels += [f"x{i}", f"y{i}", f"z{i}", f"w{i}_1", f"w{i}_2", f"w{i}_3"]
    index = {label: i for i, label in enumerate(labels)}

    edges: List[Tuple[int, int]] = []

    def add(u: str, v: str):
        edges.append((index[u], index[v]))

    for i in range(1, n + 1):
        add(f"a{i}", f"b{i}")
        add(f"a{i}", f"c{i}")
        add(f"b{i}", f"e{i}")
        add(f"c{i}", f"f{i}")
        add(f"e{i}", f"d{i}")
        add(f"f{i}", f"d{i}")
        add(f"d{i}", f"g{i}")
    for i in range(1, n):
        add(f"g{i}", f"a{i + 1}")
    add("g0", "a1")
    add(f"g{n}", "x1")
    for i in range(1, m + 1):
        add(f"x{i}", f"y{i}")
        add(f"y{i}", f"z{i}")
        add(f"z{i}", f"w{i}_1")
        add(f"w{i}_1", f"w{i}_2")
        add(f"w{i}_2", f"w{i}_3")
    for i in range(1, m):
        add(f"x{i}", f"x{i + 1}")

    edge_index = {pair: eid for eid, pair in enumerate(edges)}
    pointing: List[Tuple[int, int]] = []
    for ci, clause in enumerate(formula.clauses, start=1):
        for j, lit in enumerate(clause, start=1):
            l = lit.variable
            target = (f"c{l}", f"f{l}") if lit.negated else (f"b{l}", f"e{l}")
            eid = edge_index[(index[target[0]], index[target[1]])]
            pointing.append((index[f"w{ci}_{j}"], eid))

    checkpoints = frozenset(
        [index[f"g{i}"] for i in range(0, n)] + [index[f"z{i}"] for i in range(1, m + 1)]
    )
    return GraphGameInstance(
        labels=tuple(labels),
        edges=tuple(edges),
        checkpoints=checkpoints,
        start=index["g0"],
        pointing=tuple(pointing),
        n=n,
        m=m,
    )


def _stop_set(instance: GraphGameInstance, live: int) -> frozenset:
    stops = set(instance.checkpoints)
    for v, eid in instance.pointing:
        if live >> eid & 1:
            stops.add(v)
    return frozenset(stops)


def legal_moves(state: GraphGameState) -> List[GraphMove]:
    """All legal simple paths from the active vertex, in lexicographic order.

    Endpoints must lie in the stop set (checkpoints plus live pointers);
    interior vertices must not.  The stop set is evaluated against the
    live edges at move start.
    """
    inst = state.instance
    stops = _stop_set(inst, state.live)
    moves: List[Tuple[int, ...]] = []
    path = [state.active]
    on_path = {state.active}

    def dfs(vertex: int):
        for eid in inst.out_edges[vertex]:
            if not state.live >> eid & 1:
                continue
            nxt = inst.edges[eid][1]
            if nxt in on_path:
                continue
            path.append(nxt)
            if nxt in stops:
                moves.append(tuple(path))
            else:
                on_path.add(nxt)
                dfs(nxt)
                on_path.remove(nxt)
            path.pop()

    dfs(state.active)
    moves.sort()
    return [GraphMove(p) for p in moves]


def apply_move(
    state: GraphGameState, move: GraphMove
) -> Tuple[GraphGameState, Outcome]:
    """Delete the path's edges, advance the active vertex, swap the mover.

    The win test for the endpoint uses the pre-move live set.
    """
    inst = state.instance
    if not move.path or move.path[0] != state.active:
        raise IllegalMove("path must start at the active vertex")
    stops = _stop_set(inst, state.live)
    live = state.live
    seen = {move.path[0]}
    for idx in range(len(move.path) - 1):
        u, v = move.path[idx], move.path[idx + 1]
        if v in seen:
            raise IllegalMove("path revisits a vertex")
        seen.add(v)
        interior = idx + 1 < len(move.path) - 1
        if interior and v in stops:
            raise IllegalMove(f"interior vertex {inst.labels[v]} is a stop vertex")
        eid = None
        for cand in inst.out_edges[u]:
            if inst.edges[cand][1] == v and live >> cand & 1:
                eid = cand
                break
        if eid is None:
            raise IllegalMove(f"no live edge {inst.labels[u]}->{inst.labels[v]}")
        live &= ~(1 << eid)
    end = move.path[-1]
    if end not in stops:
        raise IllegalMove(f"endpoint {inst.labels[end]} is not a legal stop")
    won = inst.live_pointer(end, state.live)  # pre-move liveness
    new_state = GraphGameState(inst, live, end, state.to_move.opponent)
    return new_state, Outcome.WIN_FOR_MOVER if won else Outcome.ONGOING


@dataclass
class SolveResult:
    winner: Player
    principal_move: Optional[GraphMove]
    nodes: int


def solve(state: GraphGameState, node_cap: int = DEFAULT_NODE_CAP) -> SolveResult:
    """Exact game value by memoized negamax over (live, active, mover).

    Every move deletes at least one edge, so the game tree is finite with
    depth at most the edge count.  Among winning moves the lexicographic
    least path is reported.
    """
    table: Dict[Tuple[int, int, Player], bool] = {}
    nodes = 0

    def mover_wins(st: GraphGameState) -> bool:
        nonlocal nodes
        key = st.key()
        hit = table.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > node_cap:
            raise ResourceError(f"solver node cap {node_cap} exceeded")
        result = False
        for move in legal_moves(st):
            nxt, outcome = apply_move(st, move)
            if outcome is Outcome.WIN_FOR_MOVER or not mover_wins(nxt):
                result = True
                break
        table[key] = result
        return result

    if mover_wins(state):
        for move in legal_moves(state):
            nxt, outcome = apply_move(state, move)
            if outcome is Outcome.WIN_FOR_MOVER or not mover_wins(nxt):
                return SolveResult(state.to_move, move, nodes)
        raise AssertionError("winning position with no winning move")
    return SolveResult(state.to_move.opponent, None, nodes)


def play_out(
    state: GraphGameState, moves: Sequence[GraphMove]
) -> Tuple[GraphGameState, Optional[Player]]:
    """Apply a move sequence; return the final state and the winner if decided."""
    for move in moves:
        state, outcome = apply_move(state, move)
        if outcome is Outcome.WIN_FOR_MOVER:
            return state, state.to_move.opponent
    if not legal_moves(state):
        return state, state.to_move.opponent
    return state, None
