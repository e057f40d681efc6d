"""Government intervention: forced reversal of trends that run too long.

A policy is a regime (none / prick / prop / both) plus a trend length n.
Pricking a bubble forces the next realized move DOWN once the trailing
run of realized UP moves reaches n; propping a crash forces UP once the
trailing DOWN run reaches n.  The trigger fires on run length >= n, so
initial windows already containing longer runs are handled uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ifa import Move

_REGIMES = ("none", "prick", "prop", "both")


@dataclass(frozen=True)
class RegulationPolicy:
    """Intervention regime and trigger trend length."""

    regime: str = "none"
    trend_length: Optional[int] = None

    def __post_init__(self) -> None:
        if self.regime not in _REGIMES:
            raise ValueError(
                f"unknown regime {self.regime!r}; expected one of {_REGIMES}"
            )
        if self.regime == "none":
            if self.trend_length is not None:
                raise ValueError("regime 'none' takes no trend length")
        else:
            n = self.trend_length
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ValueError(
                    f"trend length must be an integer >= 1, got {n!r}"
                )

    @property
    def pricks(self) -> bool:
        return self.regime in ("prick", "both")

    @property
    def props(self) -> bool:
        return self.regime in ("prop", "both")

    def describe(self) -> str:
        """Literal form: ``none``, ``prick:6``, ``prop:17``, ``both:6``."""
        if self.regime == "none":
            return "none"
        return f"{self.regime}:{self.trend_length}"

    @classmethod
    def parse(cls, literal: str) -> "RegulationPolicy":
        """Parse the literal syntax accepted by the CLI and config files."""
        text = literal.strip()
        if text == "none":
            return cls("none")
        regime, sep, tail = text.partition(":")
        if regime not in _REGIMES or regime == "none" or not sep:
            raise ValueError(
                f"bad policy literal {literal!r}; expected 'none' or "
                "'prick:N' / 'prop:N' / 'both:N'"
            )
        try:
            n = int(tail)
        except ValueError:
            raise ValueError(f"bad trend length in policy literal {literal!r}") from None
        return cls(regime, n)


@dataclass(frozen=True)
class TrailingRun:
    """Direction and length of the maximal constant suffix of a history.

    ``direction`` is None only for an empty history (length 0).
    """

    direction: Optional[Move]
    length: int


def trailing_run(history: Sequence[Move | int]) -> TrailingRun:
    """Trailing run of a realized-move history (oldest first)."""
    if len(history) == 0:
        return TrailingRun(direction=None, length=0)
    last = Move(int(history[-1]))
    length = 0
    for move in reversed(history):
        if Move(int(move)) is not last:
            break
        length += 1
    return TrailingRun(direction=last, length=length)


def apply_policy(
    policy: RegulationPolicy, run: TrailingRun, intended: Move
) -> Move:
    """Realized move for one tick, given the trailing realized run.

    The override sets the move to the opposite of the run direction; if
    the investor already intended that direction the reversal is a no-op.
    """
    n = policy.trend_length
    if policy.pricks and run.direction is Move.UP and run.length >= n:
        return Move.DOWN
    if policy.props and run.direction is Move.DOWN and run.length >= n:
        return Move.UP
    return intended
