"""Generalized Phutball rules engine on an arbitrary rectangular board.

Cells hold nothing, a white stone, or the single ball.  A turn is either
one stone placement on an empty cell or a chain of one or more jumps.
A jump moves the ball along one of eight directions over a maximal
contiguous line of white stones that starts in the adjacent cell, landing
on the first position past the line; the jumped stones come off the board
immediately, so later jumps in the same chain see the mutated board.

Goal geometry is fixed: row 0 is the universal player's goal line and the
bottom row the existential player's.  The ball arriving on or beyond a
goal row ends the game in favor of that row's attacker (existential for
the top) regardless of who moved; jumps may carry the ball over the top or
bottom edge but never off the sides.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import IllegalMove, ResourceError
from .graphgame import Player

EMPTY, WHITE, BALL = 0, 1, 2

# Fixed enumeration order: N, NE, E, SE, S, SW, W, NW.
DIRECTIONS: Tuple[Tuple[int, int], ...] = (
    (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1),
)

DEFAULT_MAX_CHAIN = 16
DEFAULT_NODE_CAP = 20_000_000

Point = Tuple[int, int]


@dataclass(frozen=True)
class Place:
    point: Point


@dataclass(frozen=True)
class JumpChain:
    landings: Tuple[Point, ...]


Move = object  # Place | JumpChain


class Board:
    """Mutable board; search code clones and edits in place."""

    __slots__ = ("width", "height", "cells", "ball")

    def __init__(self, width: int, height: int, cells: bytearray, ball: Point):
        self.width = width
        self.height = height
        self.cells = cells
        self.ball = ball

    @staticmethod
    def empty(width: int, height: int, ball: Point) -> "Board":
        cells = bytearray(width * height)
        board = Board(width, height, cells, ball)
        board._set(ball, BALL)
        return board

    @staticmethod
    def standard(size: int = 19) -> "Board":
        return Board.empty(size, size, (size // 2, size // 2))

    def clone(self) -> "Board":
        return Board(self.width, self.height, bytearray(self.cells), self.ball)

    def key(self) -> bytes:
        return bytes(self.cells)

    def in_bounds(self, p: Point) -> bool:
        return 0 <= p[0] < self.height and 0 <= p[1] < self.width

    def get(self, p: Point) -> int:
        return self.cells[p[0] * self.width + p[1]]

    def _set(self, p: Point, value: int):
        self.cells[p[0] * self.width + p[1]] = value

    def place_stone(self, p: Point):
        if not self.in_bounds(p) or self.get(p) != EMPTY:
            raise IllegalMove(f"cannot place at {p}")
        self._set(p, WHITE)

    def remove_stone(self, p: Point):
        if self.get(p) != WHITE:
            raise IllegalMove(f"no stone at {p}")
        self._set(p, EMPTY)

    def white_count(self) -> int:
        return self.cells.count(WHITE)

    def empty_points(self) -> List[Point]:
        return [
            (i // self.width, i % self.width)
            for i, v in enumerate(self.cells)
            if v == EMPTY
        ]

    # -- jumping ----------------------------------------------------------

    def scan_jump(self, direction: Tuple[int, int]) -> Optional[Tuple[Point, List[Point]]]:
        """Landing point and jumped stones for one direction, if legal.

        The landing may lie past the top or bottom edge (goal carry); a
        lateral exit is illegal and yields None.
        """
        dr, dc = direction
        r, c = self.ball
        r += dr
        c += dc
        if not (0 <= c < self.width) or not (0 <= r < self.height):
            return None
        if self.get((r, c)) != WHITE:
            return None
        stones = []
        while 0 <= r < self.height and 0 <= c < self.width and self.get((r, c)) == WHITE:
            stones.append((r, c))
            r += dr
            c += dc
        if not (0 <= c < self.width):
            return None  # lateral exit
        if 0 <= r < self.height and self.get((r, c)) != EMPTY:
            return None  # line runs into the ball cell: impossible, defensive
        return (r, c), stones

    def jump(self, direction: Tuple[int, int]) -> Tuple[Point, List[Point]]:
        """Execute one jump; returns (landing, removed stones).

        Off-board landings (goal carries) leave the ball coordinate out of
        range and the board without a ball cell; the game is over then.
        """
        scan = self.scan_jump(direction)
        if scan is None:
            raise IllegalMove(f"no jump in direction {direction}")
        landing, stones = scan
        for p in stones:
            self._set(p, EMPTY)
        self._set(self.ball, EMPTY)
        if self.in_bounds(landing):
            self._set(landing, BALL)
        self.ball = landing
        return landing, stones

    def unjump(self, origin: Point, landing: Point, stones: Sequence[Point]):
        if self.in_bounds(landing):
            self._set(landing, EMPTY)
        for p in stones:
            self._set(p, WHITE)
        self._set(origin, BALL)
        self.ball = origin

    def goal_winner(self) -> Optional[Player]:
        r = self.ball[0]
        if r <= 0:
            return Player.EXISTS
        if r >= self.height - 1:
            return Player.FORALL
        return None


def direction_of(a: Point, b: Point) -> Tuple[int, int]:
    dr, dc = b[0] - a[0], b[1] - a[1]
    if dr == 0 and dc == 0:
        raise IllegalMove("jump must move the ball")
    if dr != 0 and dc != 0 and abs(dr) != abs(dc):
        raise IllegalMove(f"{a}->{b} is not a straight jump")
    sign = lambda x: (x > 0) - (x < 0)
    return sign(dr), sign(dc)


def legal_placements(board: Board) -> List[Point]:
    return board.empty_points()


def iter_jump_chains(
    board: Board, max_chain: int = DEFAULT_MAX_CHAIN
) -> Iterator[Tuple[Point, ...]]:
    """Depth-first enumeration of legal jump chains, every prefix included.

    The board is mutated during the walk and restored on backtrack; a
    chain ends early when it carries the ball onto or over a goal row.
    """
    landings: List[Point] = []

    def walk(depth: int) -> Iterator[Tuple[Point, ...]]:
        if depth >= max_chain:
            return
        origin = board.ball
        for direction in DIRECTIONS:
            scan = board.scan_jump(direction)
            if scan is None:
                continue
            landing, stones = scan
            board.jump(direction)
            landings.append(landing)
            yield tuple(landings)
            if board.goal_winner() is None:
                yield from walk(depth + 1)
            landings.pop()
            board.unjump(origin, landing, stones)

    yield from walk(0)


def legal_jump_chains(board: Board, max_chain: int = DEFAULT_MAX_CHAIN) -> List[JumpChain]:
    return [JumpChain(c) for c in iter_jump_chains(board, max_chain)]


def exact_max_chain(board: Board) -> int:
    """Chain length can never exceed the stone count."""
    return max(1, board.white_count())


def apply_move(
    board: Board, player: Player, move: Move
) -> Tuple[Board, Optional[Player]]:
    """Apply a move to a copy of the board; winner is None while ongoing."""
    out = board.clone()
    winner = apply_move_inplace(out, player, move)
    return out, winner


def apply_move_inplace(board: Board, player: Player, move: Move) -> Optional[Player]:
    if isinstance(move, Place):
        board.place_stone(move.point)
        return None
    if isinstance(move, JumpChain):
        if not move.landings:
            raise IllegalMove("empty jump chain")
        for target in move.landings:
            if board.goal_winner() is not None:
                raise IllegalMove("chain continues past a decided game")
            direction = direction_of(board.ball, target)
            scan = board.scan_jump(direction)
            if scan is None or scan[0] != target:
                raise IllegalMove(f"no jump from {board.ball} landing at {target}")
            board.jump(direction)
        return board.goal_winner()
    raise IllegalMove(f"unknown move {move!r}")


@dataclass
class ForcedWin:
    winner: Player
    line: List[Move]


@dataclass
class Unknown:
    pass


def _moves_for_search(
    board: Board, candidates: Optional[Sequence[Point]], max_chain: int
) -> List[Move]:
    moves: List[Move] = [JumpChain(c) for c in iter_jump_chains(board, max_chain)]
    if candidates is None:
        points = board.empty_points()
    else:
        points = [p for p in candidates if board.in_bounds(p) and board.get(p) == EMPTY]
    moves.extend(Place(p) for p in points)
    return moves


def bounded_search(
    board: Board,
    player: Player,
    plies: int,
    candidates: Optional[Sequence[Point]] = None,
    max_chain: int = DEFAULT_MAX_CHAIN,
    node_cap: int = DEFAULT_NODE_CAP,
):
    """Exhaustive adversarial search to a ply bound.

    Returns ForcedWin(winner, line) when one side can force a goal within
    the bound no matter what the other does, else Unknown.  Placements are
    restricted to `candidates` (both sides); jump chains are always fully
    enumerated.  Wins are recognized for either player, including
    self-goals, since a goal-row arrival always scores for that row's
    attacker.
    """
    value, line = _search_on(board.clone(), player, plies, candidates, max_chain, node_cap)
    if value == 1:
        return ForcedWin(player, line)
    if value == -1:
        return ForcedWin(player.opponent, line)
    return Unknown()


def _search_on(
    board: Board,
    mover: Player,
    depth: int,
    candidates: Optional[Sequence[Point]],
    max_chain: int,
    node_cap: int,
) -> Tuple[int, List[Move]]:
    nodes = 0

    def search(current: Player, remaining: int) -> Tuple[int, List[Move]]:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise ResourceError(f"bounded search node cap {node_cap} exceeded")
        if remaining == 0:
            return 0, []
        all_lose = True
        for move in _moves_for_search(board, candidates, max_chain):
            undo_cells = bytes(board.cells)
            undo_ball = board.ball
            winner = apply_move_inplace(board, current, move)
            if winner is not None:
                value = 1 if winner is current else -1
                line: List[Move] = []
            else:
                value, line = search(current.opponent, remaining - 1)
                value = -value
            board.cells[:] = undo_cells
            board.ball = undo_ball
            if value == 1:
                return 1, [move] + line
            if value == 0:
                all_lose = False
        # No moves at all also counts as a loss: there is no passing.
        if all_lose:
            return -1, []
        return 0, []

    return search(mover, depth)


# -- serialization --------------------------------------------------------

CELL_CHARS = {EMPTY: ".", WHITE: "O", BALL: "@"}
CHAR_CELLS = {v: k for k, v in CELL_CHARS.items()}


def board_to_ascii(board: Board) -> str:
    lines = [f"phutball {board.width} {board.height}", "# top = forall goal"]
    for r in range(board.height):
        row = board.cells[r * board.width : (r + 1) * board.width]
        lines.append("".join(CELL_CHARS[v] for v in row))
    return "\n".join(lines) + "\n"


def board_from_ascii(text: str) -> Board:
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    head = rows[0].split()
    if len(head) != 3 or head[0] != "phutball":
        raise ValueError("expected `phutball <width> <height>` header")
    width, height = int(head[1]), int(head[2])
    grid = rows[1:]
    if len(grid) != height or any(len(row) != width for row in grid):
        raise ValueError("board body does not match declared dimensions")
    cells = bytearray(width * height)
    ball = None
    for r, row in enumerate(grid):
        for c, ch in enumerate(row):
            value = CHAR_CELLS.get(ch)
            if value is None:
                raise ValueError(f"bad cell character {ch!r}")
            cells[r * width + c] = value
            if value == BALL:
                if ball is not None:
                    raise ValueError("more than one ball")
                ball = (r, c)
    if ball is None:
        raise ValueError("no ball on board")
    return Board(width, height, cells, ball)


def board_to_json(board: Board) -> str:
    payload = {
        "width": board.width,
        "height": board.height,
        "ball": list(board.ball),
        "white": [
            [i // board.width, i % board.width]
            for i, v in enumerate(board.cells)
            if v == WHITE
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def board_from_json(text: str) -> Board:
    payload = json.loads(text)
    board = Board.empty(payload["width"], payload["height"], tuple(payload["ball"]))
    for r, c in payload["white"]:
        board.place_stone((r, c))
    return board


def format_move(move: Move) -> str:
    if isinstance(move, Place):
        return f"P {move.point[0]} {move.point[1]}"
    if isinstance(move, JumpChain):
        return "J " + " ".join(f"{r} {c}" for r, c in move.landings)
    raise ValueError(f"unknown move {move!r}")


def parse_move(text: str) -> Move:
    fields = text.split()
    if fields and fields[0] == "P" and len(fields) == 3:
        return Place((int(fields[1]), int(fields[2])))
    if fields and fields[0] == "J" and len(fields) >= 3 and len(fields) % 2 == 1:
        coords = [int(x) for x in fields[1:]]
        return JumpChain(tuple(zip(coords[::2], coords[1::2])))
    raise ValueError(f"bad move notation {text!r}")
