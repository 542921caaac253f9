"""Line-oriented text formats, seeded instance generation, DOT export.

Lattice documents::

    lattice <name> <mode>        # mode: lattice | poset-downsets
    elements <label> <label> ...
    le <a> <b>                   # a <= b; closed reflexively/transitively

In ``lattice`` mode the closure of the pairs must validate as a pcd-lattice;
in ``poset-downsets`` mode the pairs describe a poset whose downset lattice
is built (always valid).  Relation documents carry ``pair a b`` lines over a
host lattice; map documents carry ``to b x`` lines (target basis element b,
source element x) plus ``source``/``target`` paths resolved relative to the
document.  ``#`` starts a comment.
"""

from __future__ import annotations

import random
from pathlib import Path

from .errors import MalformedInput, ValidationFailure
from .framemap import ContinuousMap
from .lattice import Basis, PcdLattice, downset_lattice, full_basis
from .relation import Relation

GENERATE_POSET_CAP = 8


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_lattice(text):
    """Build a lattice from a document; raises on parse or axiom failures."""
    name = None
    mode = None
    labels = None
    pairs = []
    for no, tokens in _lines(text):
        head = tokens[0]
        if head == "lattice":
            if len(tokens) != 3:
                raise MalformedInput(f"line {no}: expected 'lattice <name> <mode>'")
            name, mode = tokens[1], tokens[2]
            if mode not in ("lattice", "poset-downsets"):
                raise MalformedInput(f"line {no}: unknown mode {mode!r}")
        elif head == "elements":
            if labels is not None:
                raise MalformedInput(f"line {no}: duplicate elements line")
            labels = tokens[1:]
            if len(set(labels)) != len(labels):
                raise MalformedInput(f"line {no}: element labels must be unique")
        elif head == "le":
            if len(tokens) != 3:
                raise MalformedInput(f"line {no}: expected 'le <a> <b>'")
            if labels is None:
                raise MalformedInput(f"line {no}: 'le' before 'elements'")
            for label in tokens[1:]:
                if label not in labels:
                    raise MalformedInput(f"line {no}: undeclared label {label!r}")
            pairs.append((labels.index(tokens[1]), labels.index(tokens[2])))
        else:
            raise MalformedInput(f"line {no}: unknown directive {head!r}")
    if name is None:
        raise MalformedInput("missing 'lattice <name> <mode>' header")
    if labels is None:
        raise MalformedInput("missing 'elements' line")
    k = len(labels)
    leq = [[i == j for j in range(k)] for i in range(k)]
    for a, b in pairs:
        leq[a][b] = True
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(k):
                if leq[i][j]:
                    for m in range(k):
                        if leq[j][m] and not leq[i][m]:
                            leq[i][m] = True
                            changed = True
    if mode == "poset-downsets":
        bad = next(
            ((i, j) for i in range(k) for j in range(k)
             if i != j and leq[i][j] and leq[j][i]),
            None,
        )
        if bad:
            raise ValidationFailure(
                [f"poset antisymmetry fails at ({labels[bad[0]]}, {labels[bad[1]]})"]
            )
        return downset_lattice(labels, leq, name=name)
    lat = PcdLattice(labels, leq, name=name)
    report = lat.validate()
    if report:
        raise ValidationFailure(report)
    return lat


def serialize_lattice(l):
    """Canonical document: declaration order, Hasse pairs only."""
    out = [f"lattice {l.name} lattice", "elements " + " ".join(l.names)]
    for i, j in sorted(l.covers()):
        out.append(f"le {l.names[i]} {l.names[j]}")
    return "\n".join(out) + "\n"


def parse_relation(text, lattice):
    """Read ``pair`` lines resolved against the given host lattice."""
    pairs = set()
    for no, tokens in _lines(text):
        head = tokens[0]
        if head == "relation":
            continue
        if head == "host":
            if len(tokens) == 2 and tokens[1] != lattice.name:
                raise MalformedInput(
                    f"line {no}: host {tokens[1]!r} does not match lattice "
                    f"{lattice.name!r}"
                )
        elif head == "pair":
            if len(tokens) != 3:
                raise MalformedInput(f"line {no}: expected 'pair <a> <b>'")
            pairs.add((lattice.element(tokens[1]), lattice.element(tokens[2])))
        else:
            raise MalformedInput(f"line {no}: unknown directive {head!r}")
    return Relation(lattice, pairs)


def serialize_relation(rel, name="relation"):
    names = rel.lattice.names
    out = [f"relation {name}", f"host {rel.lattice.name}"]
    for a, b in sorted(rel.pairs):
        out.append(f"pair {names[a]} {names[b]}")
    return "\n".join(out) + "\n"


def parse_map(text, base_dir="."):
    """Read a map document; source and target lattices load from their paths."""
    base = Path(base_dir)
    source = target = None
    basis_labels = None
    lines = []
    for no, tokens in _lines(text):
        head = tokens[0]
        if head == "map":
            continue
        if head in ("source", "target"):
            if len(tokens) != 2:
                raise MalformedInput(f"line {no}: expected '{head} <path>'")
            path = base / tokens[1]
            try:
                lat = parse_lattice(path.read_text())
            except OSError as exc:
                raise MalformedInput(f"line {no}: cannot read {path}: {exc}") from None
            if head == "source":
                source = lat
            else:
                target = lat
        elif head == "basis":
            basis_labels = tokens[1:]
        elif head == "to":
            if len(tokens) != 3:
                raise MalformedInput(f"line {no}: expected 'to <b> <x>'")
            lines.append((no, tokens[1], tokens[2]))
        else:
            raise MalformedInput(f"line {no}: unknown directive {head!r}")
    if source is None or target is None:
        raise MalformedInput("map document needs 'source <path>' and 'target <path>'")
    if basis_labels is None:
        basis = full_basis(target)
    else:
        basis = Basis(target, frozenset(target.element(x) for x in basis_labels))
    assignment = {}
    for no, b_label, x_label in lines:
        b = target.element(b_label)
        if b in assignment:
            raise MalformedInput(f"line {no}: duplicate assignment for {b_label!r}")
        assignment[b] = source.element(x_label)
    if set(assignment) != set(basis.elements):
        raise MalformedInput("assignment must cover exactly the declared target basis")
    return ContinuousMap(source, target, basis, assignment)


def serialize_map(f, name="map", source_path="source.lat", target_path="target.lat"):
    out = [
        f"map {name}",
        f"source {source_path}",
        f"target {target_path}",
        "basis " + " ".join(f.target.names[b] for b in sorted(f.basis.elements)),
    ]
    for b in sorted(f.basis.elements):
        out.append(f"to {f.target.names[b]} {f.source.names[f.assignment[b]]}")
    return "\n".join(out) + "\n"


def generate(seed, size):
    """Deterministic random poset of the given size, then its downset lattice.

    Each pair i < j becomes comparable with probability one half; the result
    is transitively closed before the downsets are enumerated.
    """
    if not 0 <= size <= GENERATE_POSET_CAP:
        raise MalformedInput(f"poset size must be between 0 and {GENERATE_POSET_CAP}")
    rng = random.Random(seed)
    leq = [[i == j for j in range(size)] for i in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < 0.5:
                leq[i][j] = True
    for i in range(size):
        for j in range(size):
            if leq[i][j]:
                for m in range(size):
                    if leq[j][m]:
                        leq[i][m] = True
    labels = [f"p{i}" for i in range(size)]
    return downset_lattice(labels, leq, name=f"gen-s{seed}-k{size}")


def export_dot(obj):
    """Hasse diagram in DOT; frames get their basic ideals highlighted."""
    highlight = frozenset()
    lat = obj
    if hasattr(obj, "ideal_basis"):
        lat = obj.lattice
        highlight = obj.ideal_basis.elements
    safe = "".join(c if c.isalnum() else "_" for c in lat.name)
    out = [f"digraph {safe} {{", "  rankdir=BT;"]
    for i, label in enumerate(lat.names):
        attrs = ""
        if i in highlight:
            attrs = " [style=filled, fillcolor=lightblue]"
        out.append(f'  "{label}"{attrs};')
    for i, j in sorted(lat.covers()):
        out.append(f'  "{lat.names[i]}" -> "{lat.names[j]}";')
    out.append("}")
    return "\n".join(out) + "\n"
