"""States, rules, canonical-rotation matching and rule-file handling.

A rule maps a cell state and the cyclic word of its 7 neighbour states to a
next state.  Rules are rotation invariant: the word is stored in canonical
form, the lexicographically smallest of its 7 rotations under the state
order W < B < R < Y < G < O < M.

Rule files are line oriented:

    <num> <cur> <w1..w7> > <next>

where the word may contain one window `:...:` (2..5 letters) and the
metavariable `L`.  `#` starts a comment; `#!` lines carry file directives,
e.g. `#! windows: idle,single,double`, controlling how windows expand when
the file is loaded into a table.  Repeated rules carry the number of their
first occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

STATES = "WBRYGOM"
QUIESCENT = "W"
_ORDER = {s: i for i, s in enumerate(STATES)}

#: locomotive metavariable; stands for G or R, uniformly within one rule
LOCO = "L"


class RuleError(Exception):
    pass


class RotationConflict(RuleError):
    """Two rules share a canonical key but disagree on the next state."""

    def __init__(self, current, word, next_a, prov_a, next_b, prov_b):
        self.current, self.word = current, word
        self.next_a, self.prov_a = next_a, prov_a
        self.next_b, self.prov_b = next_b, prov_b
        super().__init__(
            f"rotation conflict for {current} {word}: "
            f"{next_a} ({prov_a}) vs {next_b} ({prov_b})")


class MissingRule(RuleError):
    def __init__(self, current, word):
        self.current, self.word = current, word
        super().__init__(f"no rule for {current} {word}")


def canonicalize(word: str) -> tuple[str, int]:
    """Smallest rotation of `word` under the state order, and the smallest
    shift achieving it."""
    if len(word) != 7:
        raise ValueError(f"neighbourhood word must have 7 letters: {word!r}")
    best, shift = word, 0
    key = [_ORDER[c] for c in word]
    bestkey = key
    for k in range(1, 7):
        rk = key[k:] + key[:k]
        if rk < bestkey:
            bestkey = rk
            best = word[k:] + word[:k]
            shift = k
    return best, shift


@dataclass(frozen=True)
class Rule:
    """A concrete transition; `word` is kept canonical."""
    current: str
    word: str
    next: str
    provenance: str = ""

    @property
    def key(self):
        return (self.current, self.word)


@dataclass
class MetaRule:
    """One table line: may contain a window `:...:` and/or the L variable."""
    number: int
    current: str
    pattern: str
    next: str
    table: str = ""
    lineno: int = 0

    @property
    def provenance(self) -> str:
        return f"{self.table}:{self.number}" if self.table else str(self.number)

    @property
    def window(self) -> tuple[str, str, str] | None:
        m = re.match(r"^([A-Z]*):([A-Z]+):([A-Z]*)$", self.pattern)
        return (m.group(1), m.group(2), m.group(3)) if m else None

    def content(self) -> tuple[str, str, str]:
        return (self.current, self.pattern, self.next)


_META_RE = re.compile(
    r"^(\d+)\s+([A-Z])\s+((?::?[A-Z]+:?)+)\s*>\s*([A-Z])$")


def parse_meta(line: str, table: str = "", lineno: int = 0) -> MetaRule:
    m = _META_RE.match(line.strip())
    if not m:
        raise RuleError(f"{table}:{lineno}: cannot parse rule line {line!r}")
    number, current, pattern, nxt = int(m.group(1)), m.group(2), m.group(3), m.group(4)
    letters = pattern.replace(":", "")
    bad = set(letters + current + nxt) - set(STATES + LOCO)
    if bad:
        raise RuleError(f"{table}:{lineno}: unknown state letters {sorted(bad)}")
    if len(letters) != 7:
        raise RuleError(f"{table}:{lineno}: word {pattern!r} has {len(letters)} letters")
    if pattern.count(":") not in (0, 2):
        raise RuleError(f"{table}:{lineno}: at most one window is allowed")
    meta = MetaRule(number, current, pattern, nxt, table, lineno)
    win = meta.window
    if win and not 2 <= len(win[1]) <= 5:
        raise RuleError(f"{table}:{lineno}: window width must be 2..5")
    if win and LOCO in pattern:
        raise RuleError(f"{table}:{lineno}: window and L cannot be combined")
    return meta


def expand(meta: MetaRule, *, singles: bool = True, doubles: bool = True,
           idle: bool = False) -> list[Rule]:
    """Concrete rules denoted by a meta-rule.

    A window of width n yields n single-occupant placements plus n-1
    adjacent double-occupant placements (windows never wrap the word
    boundary), each instantiated with L in {G, R}; with `idle` the
    unoccupied window is included as well.  A plain L yields the two
    substitutions.  Results are canonicalised and deduplicated.
    """
    win = meta.window
    words: list[str]
    if win:
        pre, body, post = win
        n = len(body)
        placements = []
        if idle:
            placements.append(body)
        if singles:
            placements += [body[:i] + LOCO + body[i + 1:] for i in range(n)]
        if doubles:
            placements += [body[:i] + LOCO + LOCO + body[i + 2:] for i in range(n - 1)]
        words = [pre + p + post for p in placements]
    else:
        words = [meta.pattern]
    out = []
    seen = set()
    for w in words:
        variants = [(meta.current, w, meta.next)]
        if LOCO in meta.current + w + meta.next:
            variants = [tuple(s.replace(LOCO, v) for s in variants[0]) for v in "GR"]
        for cur, word, nxt in variants:
            canon, _ = canonicalize(word)
            rule = Rule(cur, canon, nxt, meta.provenance)
            if rule.key + (rule.next,) not in seen:
                seen.add(rule.key + (rule.next,))
                out.append(rule)
    return out


class RuleTable:
    """Canonical-rotation-keyed transition function."""

    def __init__(self):
        self._map: dict[tuple[str, str], Rule] = {}

    def __len__(self):
        return len(self._map)

    def __contains__(self, key):
        return key in self._map

    def rules(self):
        return list(self._map.values())

    def insert(self, rule: Rule) -> None:
        """Idempotent for identical rules; raises RotationConflict on a key
        collision with a different next state."""
        old = self._map.get(rule.key)
        if old is None:
            self._map[rule.key] = rule
        elif old.next != rule.next:
            raise RotationConflict(rule.current, rule.word,
                                   old.next, old.provenance,
                                   rule.next, rule.provenance)

    def lookup(self, current: str, word: str) -> str:
        canon, _ = canonicalize(word)
        rule = self._map.get((current, canon))
        if rule is None:
            raise MissingRule(current, canon)
        return rule.next

    def get(self, current: str, word: str) -> str | None:
        canon, _ = canonicalize(word)
        rule = self._map.get((current, canon))
        return None if rule is None else rule.next

    def provenance(self, current: str, word: str) -> str:
        canon, _ = canonicalize(word)
        rule = self._map.get((current, canon))
        return "" if rule is None else rule.provenance


@dataclass
class RuleFile:
    name: str
    metas: list[MetaRule]
    directives: dict[str, str] = field(default_factory=dict)

    @property
    def window_modes(self) -> set[str]:
        modes = self.directives.get("windows", "idle,single,double")
        return {m.strip() for m in modes.split(",") if m.strip()}


def parse_rule_file(text: str, name: str = "") -> RuleFile:
    """Parse one rule file; duplicate numbers must carry identical content."""
    metas: list[MetaRule] = []
    directives: dict[str, str] = {}
    by_number: dict[int, MetaRule] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#!"):
            k, _, v = line[2:].partition(":")
            directives[k.strip()] = v.strip()
            continue
        if not line or line.startswith("#"):
            continue
        line = line.split("#", 1)[0].strip()
        meta = parse_meta(line, name, lineno)
        prev = by_number.get(meta.number)
        if prev is not None and prev.content() != meta.content():
            raise RuleError(
                f"{name}:{lineno}: number {meta.number} already used at line "
                f"{prev.lineno} with different content")
        by_number.setdefault(meta.number, meta)
        metas.append(meta)
    return RuleFile(name, metas, directives)


@dataclass
class CorpusStats:
    meta_count: int            # table lines, repeats included
    distinct_meta_count: int   # distinct lines by content
    expanded_count: int        # concrete rules in the table
    shadowed: list[tuple[str, str, str]]  # window placements overridden by explicit rules


class Corpus:
    """A set of rule files loaded into one conflict-checked table.

    Explicit rules (no window) are inserted first; window expansions then
    fill in around them, so a specific printed rule always overrides the
    generic placement a window would generate for the same neighbourhood.
    """

    def __init__(self, files: list[RuleFile]):
        self.files = files
        self.table = RuleTable()
        shadowed = []
        explicit_keys = set()
        for f in files:
            for meta in f.metas:
                if meta.window:
                    continue
                for rule in expand(meta):
                    self.table.insert(rule)
                    explicit_keys.add(rule.key)
        for f in files:
            modes = f.window_modes
            for meta in f.metas:
                if not meta.window:
                    continue
                for rule in expand(meta, singles="single" in modes,
                                   doubles="double" in modes,
                                   idle="idle" in modes):
                    if rule.key in explicit_keys:
                        old = self.table._map[rule.key]
                        if old.next != rule.next:
                            shadowed.append((rule.provenance, old.provenance,
                                             f"{rule.current} {rule.word}"))
                        continue
                    self.table.insert(rule)
        self._shadowed = shadowed

    def stats(self) -> CorpusStats:
        metas = [m for f in self.files for m in f.metas]
        distinct = {m.content() for m in metas}
        return CorpusStats(len(metas), len(distinct), len(self.table), list(self._shadowed))


def builtin_rule_files() -> list[str]:
    root = resources.files("heptarail.data.rules")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".rules"))


def load_corpus(names: list[str] | None = None) -> Corpus:
    """Load the bundled rule transcription (or a subset by file name)."""
    root = resources.files("heptarail.data.rules")
    files = []
    for fname in (names or builtin_rule_files()):
        text = (root / fname).read_text()
        files.append(parse_rule_file(text, fname.removesuffix(".rules")))
    return Corpus(files)


_CORPUS_CACHE: Corpus | None = None


def full_table() -> RuleTable:
    """The complete transcribed rule table (cached)."""
    global _CORPUS_CACHE
    if _CORPUS_CACHE is None:
        _CORPUS_CACHE = load_corpus()
    return _CORPUS_CACHE.table
