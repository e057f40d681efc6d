"""Deterministic tick-by-tick market process and exact orbit analysis.

The full dynamical state of the market is the lookback window: the w
most recent realized moves, packed into a w-bit integer (bit i = move
realized i ticks ago, bit 0 = newest).  Each tick the investor's rule
produces an intended move from the window, regulation may override it,
the realized move is appended, and the window slides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _engine
from .ifa import IfaRule, Move, process_window
from .regulation import RegulationPolicy, TrailingRun, apply_policy, trailing_run

MAX_WINDOW_WIDTH = 30  # dense 2**w visit table must fit in memory

# below this many ticks the per-tick path beats building a 2**w table
_TABLE_PATH_MIN_TICKS_FACTOR = 8


class UnsupportedConfigError(ValueError):
    """Configuration outside what exact orbit analysis supports."""


@dataclass(frozen=True)
class WindowState:
    """w most recent realized moves packed as bits (bit 0 = newest)."""

    bits: int
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WINDOW_WIDTH:
            raise ValueError(
                f"window width must be in [1, {MAX_WINDOW_WIDTH}], got {self.width}"
            )
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(
                f"bits {self.bits:#x} do not fit in {self.width} bits"
            )

    @classmethod
    def from_moves(cls, moves: Sequence[Move | int]) -> "WindowState":
        """Pack an oldest-first move sequence."""
        width = len(moves)
        bits = 0
        for age, move in enumerate(reversed(moves)):
            if int(move) not in (0, 1):
                raise ValueError(f"non-binary move {move!r}")
            bits |= int(move) << age
        return cls(bits=bits, width=width)

    def to_moves(self) -> list[Move]:
        """Unpack to an oldest-first move sequence."""
        return [
            Move((self.bits >> age) & 1)
            for age in range(self.width - 1, -1, -1)
        ]

    def slide(self, realized: Move | int) -> "WindowState":
        """Append a realized move as the newest, dropping the oldest."""
        mask = (1 << self.width) - 1
        return WindowState(
            bits=((self.bits << 1) & mask) | int(realized), width=self.width
        )

    def trailing_run_capped(self) -> TrailingRun:
        """Trailing run of the moves inside the window (capped at width)."""
        return trailing_run(self.to_moves())


@dataclass(frozen=True)
class TickSeries:
    """Realized moves plus the configuration that produced them."""

    moves: np.ndarray  # uint8, 0 = DOWN, 1 = UP
    rule_number: int
    w: int
    init: str
    policy: str

    def __len__(self) -> int:
        return int(self.moves.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TickSeries):
            return NotImplemented
        return (
            self.rule_number == other.rule_number
            and self.w == other.w
            and self.init == other.init
            and self.policy == other.policy
            and np.array_equal(self.moves, other.moves)
        )


@dataclass(frozen=True)
class CycleReport:
    """Exact orbit structure: ticks before the cycle, and its length."""

    transient_length: int
    cycle_length: int


def initial_window(
    kind: str, w: int, moves: Optional[Sequence[Move | int]] = None
) -> WindowState:
    """Build a starting window.

    ``alternating_up_first`` is UP, DOWN, UP, ... oldest-first;
    ``all_up`` is w UPs; ``custom`` packs ``moves`` (length must be w).
    """
    if w < 1:
        raise ValueError(f"window width must be >= 1, got {w}")
    if kind == "alternating_up_first":
        seq = [Move.UP if i % 2 == 0 else Move.DOWN for i in range(w)]
        return WindowState.from_moves(seq)
    if kind == "all_up":
        return WindowState(bits=(1 << w) - 1, width=w)
    if kind == "custom":
        if moves is None:
            raise ValueError("custom initial window requires a move sequence")
        if len(moves) != w:
            raise ValueError(
                f"custom initial window has {len(moves)} moves, expected {w}"
            )
        return WindowState.from_moves(moves)
    raise ValueError(
        f"unknown initial-window kind {kind!r}; expected "
        "'alternating_up_first', 'all_up' or 'custom'"
    )


def next_move(rule: IfaRule, window: WindowState) -> Move:
    """Unregulated intended move for a window."""
    return process_window(rule, window.to_moves())


def _policy_state_fits_window(policy: RegulationPolicy, w: int) -> bool:
    return policy.regime == "none" or policy.trend_length <= w


def _simulate_per_tick(
    rule: IfaRule,
    window: WindowState,
    policy: RegulationPolicy,
    num_ticks: int,
) -> np.ndarray:
    moves = np.empty(num_ticks, dtype=np.uint8)
    run = window.trailing_run_capped()
    run_dir = run.direction
    run_len = run.length
    for i in range(num_ticks):
        intended = next_move(rule, window)
        realized = apply_policy(
            policy, TrailingRun(run_dir, run_len), intended
        )
        moves[i] = int(realized)
        window = window.slide(realized)
        if realized is run_dir:
            run_len += 1
        else:
            run_dir = realized
            run_len = 1
    return moves


def simulate(
    rule: IfaRule,
    w: int,
    init: WindowState,
    policy: RegulationPolicy,
    num_ticks: int,
) -> TickSeries:
    """Generate the realized tick series.

    Realized (post-intervention) moves feed back into the window: the
    investor observes the market as regulated.  Trailing runs are
    counted over the whole realized history including the initial
    window.
    """
    if init.width != w:
        raise ValueError(f"initial window width {init.width} != w {w}")
    if num_ticks < 0:
        raise ValueError(f"num_ticks must be >= 0, got {num_ticks}")
    meta = dict(
        rule_number=rule.rule_number,
        w=w,
        init=describe_window(init),
        policy=policy.describe(),
    )
    if num_ticks == 0:
        return TickSeries(moves=np.empty(0, dtype=np.uint8), **meta)

    use_table = (
        _policy_state_fits_window(policy, w)
        and num_ticks * _TABLE_PATH_MIN_TICKS_FACTOR * max(w, 1) >= (1 << w)
    )
    if use_table:
        decisions = _engine.decision_table(rule, w)
        step = _engine.step_table(decisions, w, policy)
        moves = _engine.walk_emit(step, init.bits, num_ticks)
    else:
        moves = _simulate_per_tick(rule, init, policy, num_ticks)
    return TickSeries(moves=moves, **meta)


def find_cycle(
    rule: IfaRule,
    w: int,
    init: WindowState,
    policy: RegulationPolicy,
) -> CycleReport:
    """Exact transient and cycle length of the window-state orbit.

    Uses a dense first-visit table over all 2**w window states (16 MiB
    of 32-bit entries at w = 22).  With regulation the dynamics is a
    function of the window alone only when n <= w; larger n raises
    :class:`UnsupportedConfigError`.
    """
    if init.width != w:
        raise ValueError(f"initial window width {init.width} != w {w}")
    if not _policy_state_fits_window(policy, w):
        raise UnsupportedConfigError(
            f"trend length {policy.trend_length} exceeds w={w}: the trailing "
            "run is no longer determined by the window state"
        )
    decisions = _engine.decision_table(rule, w)
    step = _engine.step_table(decisions, w, policy)
    transient, cycle = _engine.walk_visit(step, init.bits)
    return CycleReport(transient_length=transient, cycle_length=cycle)


def describe_window(init: WindowState) -> str:
    """Compact descriptor used in metadata: e.g. ``UDUD`` oldest-first."""
    if init.width <= 32:
        return "".join(str(m) for m in init.to_moves())
    return f"bits:{init.bits:#x}/w{init.width}"


def window_from_literal(literal: str, w: int) -> WindowState:
    """Parse an initial-window literal: a kind name or a U/D string."""
    text = literal.strip()
    aliases = {
        "alternating": "alternating_up_first",
        "alternating_up_first": "alternating_up_first",
        "all_up": "all_up",
    }
    if text in aliases:
        return initial_window(aliases[text], w)
    if text and set(text) <= {"U", "D"}:
        moves = [Move.UP if ch == "U" else Move.DOWN for ch in text]
        return initial_window("custom", w, moves)
    raise ValueError(
        f"bad initial-window literal {literal!r}; expected 'alternating', "
        "'all_up' or a string of U/D characters of length w"
    )
