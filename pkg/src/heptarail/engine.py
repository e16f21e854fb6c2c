"""Sparse synchronous evolution of configurations under a rule table.

A configuration assigns a state to finitely many cells; every other cell is
quiescent (W).  One step updates the active set, which is the support plus
its neighbour shell: cells farther out keep W because a W cell with an all-W
neighbourhood stays W.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rules import MissingRule, QUIESCENT, RuleTable
from .topology import Heptagrid


class SimulationError(Exception):
    def __init__(self, time: int, cell: int, address: str, cause: MissingRule):
        self.time, self.cell, self.address, self.cause = time, cell, address, cause
        super().__init__(f"t={time}: cell {address}: {cause}")


class Configuration:
    """Sparse cell -> state map in normal form (no explicit W entries)."""

    def __init__(self, grid: Heptagrid, cells: dict[int, str] | None = None):
        self.grid = grid
        self.cells = {c: s for c, s in (cells or {}).items() if s != QUIESCENT}

    def get(self, c: int) -> str:
        return self.cells.get(c, QUIESCENT)

    def set(self, c: int, state: str) -> None:
        if state == QUIESCENT:
            self.cells.pop(c, None)
        else:
            self.cells[c] = state

    def copy(self) -> "Configuration":
        return Configuration(self.grid, dict(self.cells))

    def support(self):
        return self.cells.keys()

    def __eq__(self, other):
        return isinstance(other, Configuration) and self.cells == other.cells

    def __len__(self):
        return len(self.cells)

    def word(self, c: int) -> str:
        """Cyclic neighbourhood word of c (ring order)."""
        get = self.cells.get
        return "".join(get(n, QUIESCENT) for n in self.grid.ring(c))

    def to_text(self) -> str:
        lines = [f"{self.grid.address(c)} = {s}"
                 for c, s in sorted(self.cells.items(),
                                    key=lambda kv: self.grid.address(kv[0]))]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, grid: Heptagrid, text: str) -> "Configuration":
        cells = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            addr, _, state = line.partition("=")
            state = state.strip()
            if not state or len(state) != 1:
                raise ValueError(f"line {lineno}: expected '<address> = <state>'")
            cells[grid.cell(addr.strip())] = state
        return cls(grid, cells)


Change = tuple[int, str, str]  # cell, old state, new state


@dataclass
class Trace:
    steps: list[tuple[int, list[Change]]] = field(default_factory=list)

    def append(self, time: int, changes: list[Change]) -> None:
        self.steps.append((time, changes))

    def replay(self, initial: Configuration) -> Configuration:
        config = initial.copy()
        for _, changes in self.steps:
            for c, _, new in changes:
                config.set(c, new)
        return config

    def to_text(self, grid: Heptagrid) -> str:
        out = []
        for t, changes in self.steps:
            for c, old, new in changes:
                out.append(f"t={t}: {grid.address(c)} {old}{new}")
        return "\n".join(out) + ("\n" if out else "")


def _next_state(config: Configuration, table: RuleTable, c: int, time: int) -> str:
    try:
        return table.lookup(config.get(c), config.word(c))
    except MissingRule as e:
        raise SimulationError(time, c, config.grid.address(c), e) from None


def step(config: Configuration, table: RuleTable, *, time: int = 0,
         permissive: bool = False) -> tuple[Configuration, list[Change]]:
    """One synchronous update; returns the new configuration and the change
    list.  With `permissive`, a missing rule keeps the cell state instead of
    raising (for layout debugging only)."""
    grid = config.grid
    active = set(config.cells)
    for c in config.cells:
        active.update(grid.ring(c))
    changes: list[Change] = []
    for c in active:
        old = config.get(c)
        if permissive:
            new = table.get(old, config.word(c))
            if new is None:
                continue
        else:
            new = _next_state(config, table, c, time)
        if new != old:
            changes.append((c, old, new))
    new_config = config.copy()
    for c, _, new in changes:
        new_config.set(c, new)
    return new_config, changes


@dataclass
class Watch:
    cell: int
    state: str


def run(config: Configuration, table: RuleTable, max_steps: int,
        halt: Watch | str | None = "fixed_point", *,
        permissive: bool = False) -> tuple[Configuration, Trace, str]:
    """Iterate `step` up to `max_steps`.

    `halt` is either "fixed_point", a Watch(cell, state), or None (budget
    only).  Returns (final configuration, trace, halt reason); reasons are
    "fixed_point", "watch", or "max_steps".
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    trace = Trace()
    if isinstance(halt, Watch) and config.get(halt.cell) == halt.state:
        return config, trace, "watch"
    for t in range(max_steps):
        config, changes = step(config, table, time=t, permissive=permissive)
        if changes:
            trace.append(t + 1, changes)
        if halt == "fixed_point" and not changes:
            return config, trace, "fixed_point"
        if isinstance(halt, Watch) and config.get(halt.cell) == halt.state:
            return config, trace, "watch"
        if not changes and halt is None:
            return config, trace, "fixed_point"
    return config, trace, "max_steps"


def diff(a: Configuration, b: Configuration) -> list[Change]:
    """Exact symmetric difference of two configurations."""
    out = []
    for c in a.cells.keys() | b.cells.keys():
        sa, sb = a.get(c), b.get(c)
        if sa != sb:
            out.append((c, sa, sb))
    out.sort()
    return out
