"""Vectorized window-state machinery shared by market and survey.

Window states are w-bit integers with bit i holding the move realized i
ticks ago (bit 0 = newest).  The closed-loop dynamics is a map over the
2**w window values: decide, regulate, shift.  Decision tables for all
2**w windows are built with a prefix trie (states shared across windows
that agree on their newest bits), which costs about 2 * 2**w cheap array
operations instead of w * 2**w.

Orbit walks are JIT-compiled with numba when available; pure-Python
fallbacks keep everything correct (just slower) without it.
"""

from __future__ import annotations

import numpy as np

from .ifa import IfaRule
from .regulation import RegulationPolicy

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


_UNSEEN = np.uint32(0xFFFFFFFF)


def decision_table(rule: IfaRule, w: int, initial_state: int = 0) -> np.ndarray:
    """Intended move for every w-bit window value, as a uint8 array.

    The automaton pass consumes the window newest-first, so the trie is
    keyed on the j newest bits: entry p of the j-th level holds the
    automaton state after reading bits 0..j-1 of any window whose low j
    bits equal p.
    """
    # int16 keeps the t0b + s * (t1b - t0b) trick free of uint8 underflow
    nxt = np.array(
        [[rule.next_state(s, b) for b in (0, 1)] for s in (0, 1)], dtype=np.int16
    )
    out = np.array(
        [[rule.output(s, b) for b in (0, 1)] for s in (0, 1)], dtype=np.int16
    )
    states = np.full(1, initial_state, dtype=np.uint8)
    for _ in range(w - 1):
        expanded = np.empty(2 * states.size, dtype=np.uint8)
        # next state for consumed bit 0 / 1; states are 0/1 so a lookup
        # T[s, b] is t0b + s * (t1b - t0b) without fancy indexing
        expanded[: states.size] = nxt[0, 0] + states * (nxt[1, 0] - nxt[0, 0])
        expanded[states.size :] = nxt[0, 1] + states * (nxt[1, 1] - nxt[0, 1])
        states = expanded
    decisions = np.empty(2 * states.size, dtype=np.uint8)
    decisions[: states.size] = out[0, 0] + states * (out[1, 0] - out[0, 0])
    decisions[states.size :] = out[0, 1] + states * (out[1, 1] - out[0, 1])
    return decisions


def step_table(
    decisions: np.ndarray, w: int, policy: RegulationPolicy
) -> np.ndarray:
    """Next-window map over all 2**w states, regulation applied.

    Valid only when the policy is 'none' or its trend length n <= w: the
    trailing realized run (capped at n, which is all the trigger needs)
    is then a function of the window's newest n bits.
    """
    n_states = 1 << w
    mask = np.uint32(n_states - 1)
    values = np.arange(n_states, dtype=np.uint32)
    realized = decisions.astype(np.uint8).copy()
    if policy.regime != "none":
        n = policy.trend_length
        if n > w:
            raise ValueError(
                f"trend length {n} exceeds window width {w}; the window no "
                "longer determines the trailing run"
            )
        run_mask = np.uint32((1 << n) - 1)
        newest = values & run_mask
        if policy.pricks:
            realized[newest == run_mask] = 0
        if policy.props:
            realized[newest == 0] = 1
    return ((values << np.uint32(1)) & mask) | realized.astype(np.uint32)


@njit(cache=True)
def _walk_visit_jit(step: np.ndarray, start: np.uint32):
    visit = np.full(step.size, _UNSEEN, dtype=np.uint32)
    x = start
    t = np.uint32(0)
    while visit[x] == _UNSEEN:
        visit[x] = t
        x = step[x]
        t += np.uint32(1)
    first = visit[x]
    return int(first), int(t - first)


@njit(cache=True)
def _walk_emit_jit(step: np.ndarray, start: np.uint32, num_ticks: np.int64):
    moves = np.empty(num_ticks, dtype=np.uint8)
    x = start
    for i in range(num_ticks):
        x = step[x]
        moves[i] = x & np.uint32(1)
    return moves


def _walk_visit_py(step: np.ndarray, start: int):
    nxt = step.tolist()
    visit = {}
    x = int(start)
    t = 0
    while x not in visit:
        visit[x] = t
        x = nxt[x]
        t += 1
    first = visit[x]
    return first, t - first


def _walk_emit_py(step: np.ndarray, start: int, num_ticks: int):
    nxt = step.tolist()
    moves = np.empty(num_ticks, dtype=np.uint8)
    x = int(start)
    for i in range(num_ticks):
        x = nxt[x]
        moves[i] = x & 1
    return moves


def walk_visit(step: np.ndarray, start: int) -> tuple[int, int]:
    """(transient, cycle length) of the orbit of ``start`` under ``step``."""
    if NUMBA_AVAILABLE:
        return _walk_visit_jit(step, np.uint32(start))
    return _walk_visit_py(step, start)


def walk_emit(step: np.ndarray, start: int, num_ticks: int) -> np.ndarray:
    """Realized moves (newest window bit) along the orbit of ``start``."""
    if num_ticks == 0:
        return np.empty(0, dtype=np.uint8)
    if NUMBA_AVAILABLE:
        return _walk_emit_jit(step, np.uint32(start), np.int64(num_ticks))
    return _walk_emit_py(step, start, num_ticks)


def warm_up() -> None:
    """Trigger JIT compilation on a tiny orbit so timed runs stay honest."""
    step = np.array([1, 0], dtype=np.uint32)
    walk_visit(step, 0)
    walk_emit(step, 0, 2)
