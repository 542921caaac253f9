"""Least and greatest fixpoints of inductive definitions over a finite universe.

An inductive definition is a finite collection of steps ``(conclusion,
premises)``.  The associated one-step consequence operator

    consequences(C) = { conclusion | some step has all its premises inside C }

is monotone on the powerset of the universe, so iterating it from the empty
set (adding conclusions) or from the full universe (discarding unjustified
members) stabilizes after at most ``len(universe)`` rounds.  The limits are
the least closed set and the largest self-justifying set respectively.

Sets of tokens are plain ``frozenset`` values; canonical ordering by
universe position is applied only when presenting results.
"""

from __future__ import annotations

from .errors import MalformedInput


class Universe:
    """A finite ordered collection of distinct, hashable tokens."""

    def __init__(self, items):
        self.items = tuple(items)
        self.index = {}
        for pos, token in enumerate(self.items):
            if token in self.index:
                raise MalformedInput(f"duplicate token {token!r} in universe")
            self.index[token] = pos

    def __len__(self):
        return len(self.items)

    def __contains__(self, token):
        return token in self.index

    def __iter__(self):
        return iter(self.items)

    def sort(self, tokens):
        """Tokens in declaration order."""
        return sorted(tokens, key=self.index.__getitem__)


class InductiveDefinition:
    """A deduplicated, membership-checked list of steps over a universe."""

    def __init__(self, universe, steps):
        self.universe = universe
        canonical = set()
        for conclusion, premises in steps:
            if conclusion not in universe:
                raise MalformedInput(f"conclusion {conclusion!r} outside universe")
            premises = frozenset(premises)
            for token in premises:
                if token not in universe:
                    raise MalformedInput(f"premise {token!r} outside universe")
            canonical.add((conclusion, premises))
        index = universe.index
        self.steps = tuple(
            sorted(
                canonical,
                key=lambda s: (index[s[0]], sorted(index[t] for t in s[1])),
            )
        )

    def __len__(self):
        return len(self.steps)

    def __eq__(self, other):
        if not isinstance(other, InductiveDefinition):
            return NotImplemented
        return self.universe.items == other.universe.items and self.steps == other.steps

    def __hash__(self):
        return hash((self.universe.items, self.steps))


def consequences(defn, c):
    """One-step consequences of ``c``: conclusions whose premises all lie in c."""
    c = frozenset(c)
    for token in c:
        if token not in defn.universe:
            raise MalformedInput(f"token {token!r} outside universe")
    return _consequences(defn, c)


def _consequences(defn, c):
    return frozenset(concl for concl, prem in defn.steps if prem <= c)


def lfp(defn):
    """Least closed set: iterate ``A <- A | consequences(A)`` from the empty set."""
    current = frozenset()
    while True:
        nxt = current | _consequences(defn, current)
        if nxt == current:
            return current
        current = nxt


def gfp(defn):
    """Largest self-justifying set: iterate ``Y <- Y & consequences(Y)`` from the top."""
    current = frozenset(defn.universe.items)
    while True:
        nxt = current & _consequences(defn, current)
        if nxt == current:
            return current
        current = nxt
