"""Round-ideal compactifications of finite frames.

Round ideals over a pcd-sublattice carrying a strong inclusion form a
compact regular frame; the join map back into the source is a dense map and,
for compatible strong inclusions over a generating carrier, a
compactification.  This module builds those frames, the extension maps that
factor suitable continuous maps through them, the reconstruction of a frame
of round ideals from an arbitrary compactification, and the induced ordering
between compactifications.

Ideals are kept as explicit member sets.  Enumeration rides on the finite
principal characterization (round ideals are the principal downsets of
self-related elements), which the test suite re-proves against exhaustive
subset enumeration before trusting it; the construction still asserts every
frame-level invariant instance by instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .errors import (
    InvariantViolation,
    MalformedInput,
    NotACoverError,
    PreconditionError,
)
from .framemap import (
    ContinuousMap,
    compose,
    extend,
    finer_than,
    is_dense,
    is_embedding,
    maps_equal,
    require_valid_map,
    validate_map,
)
from .lattice import (
    Basis,
    Cover,
    PcdLattice,
    full_basis,
    is_compact,
    is_regular,
    pcd_closure,
)
from .relation import (
    Relation,
    check_strong_inclusion,
    interpolative_core_on_basis,
    is_strongly_regular_basis,
    least_strong_inclusion,
    well_inside_pairs,
)

ENUMERATION_CAP = 24


@dataclass(frozen=True)
class RoundIdeal:
    """A downward- and join-closed subset where every member sits below another."""

    basis: Basis
    members: frozenset

    def violations(self, si):
        lat = self.basis.lattice
        pset = self.basis.elements
        out = []
        if not self.members <= pset:
            out.append("members leave the carrier")
            return out
        if lat.bottom not in self.members:
            out.append("missing the bottom")
        for b in sorted(self.members):
            for c in sorted(pset):
                if lat.leq(c, b) and c not in self.members:
                    out.append(f"not downward closed at {lat.names[c]}")
                    break
        for a in sorted(self.members):
            for b in sorted(self.members):
                if lat.join[a][b] not in self.members:
                    out.append(
                        f"not join closed at ({lat.names[a]}, {lat.names[b]})"
                    )
                    break
        for b in sorted(self.members):
            if not any((b, a) in si.pairs for a in sorted(self.members)):
                out.append(f"not round at {lat.names[b]}")
                break
        return out


class RoundIdealFrame:
    """The frame of all round ideals of (P, <|), ordered by inclusion."""

    def __init__(self, p, si, ideals, lattice, ideal_basis, down_index):
        self.p = p
        self.si = si
        self.ideals = ideals
        self.lattice = lattice
        self.ideal_basis = ideal_basis
        self.down_index = down_index
        self._by_members = {ideal.members: i for i, ideal in enumerate(ideals)}

    def index_of(self, members):
        return self._by_members.get(frozenset(members))

    def down(self, a):
        """Index of the ideal of elements strongly included in ``a``."""
        return self.down_index[a]


@dataclass(frozen=True)
class Compactification:
    """A dense embedding into a compact regular frame."""

    map: ContinuousMap
    frame: RoundIdealFrame | None = None

    @property
    def source(self):
        return self.map.source

    @property
    def codomain(self):
        return self.map.target

    def violations(self):
        out = list(validate_map(self.map))
        if out:
            return out
        if not is_dense(self.map):
            out.append("map is not dense")
        if not is_embedding(self.map):
            out.append("map is not an embedding")
        cod = self.codomain
        if not is_regular(cod, full_basis(cod)):
            out.append("codomain is not regular")
        else:
            try:
                is_compact(cod, full_basis(cod), Cover(cod.top, frozenset(range(cod.n))))
            except NotACoverError:  # pragma: no cover - tops always cover
                out.append("codomain has no finite subcover of the top")
        if self.frame is not None and self.frame.lattice != cod:
            out.append("frame does not match the codomain")
        return out

    def require_valid(self):
        out = self.violations()
        if out:
            raise PreconditionError(f"not a compactification: {out[0]}")


def _require_strong_inclusion(si, p):
    report = check_strong_inclusion(si, p)
    if not report.ok:
        bad = report.failed()[0]
        raise PreconditionError(
            f"not a strong inclusion: condition {bad.number} ({bad.name}) "
            f"fails at {bad.witness}"
        )


def strong_downset(p, si, a):
    """The round ideal of elements strongly included in ``a``."""
    _require_strong_inclusion(si, p)
    if a not in p.elements:
        raise MalformedInput("element outside the carrier")
    members = frozenset(b for b in p.elements if (b, a) in si.pairs)
    ideal = RoundIdeal(p, members)
    bad = ideal.violations(si)
    if bad:
        raise InvariantViolation(f"strong-downset ideal invalid: {bad[0]}")
    return ideal


def enumerate_round_ideals(p, si):
    """All round ideals of (p, si) with their inclusion-ordered frame.

    Round ideals of a finite carrier are the principal downsets of
    self-related elements; each produced ideal is re-validated, the frame is
    validated as a pcd-lattice, and meets/joins are checked against set
    intersection and the covering-family join formula.
    """
    lat = p.lattice
    _require_strong_inclusion(si, p)
    members_sorted = sorted(p.elements)
    if len(members_sorted) > ENUMERATION_CAP:
        raise MalformedInput(
            f"round-ideal enumeration capped at {ENUMERATION_CAP} carrier elements"
        )
    self_related = [t for t in members_sorted if (t, t) in si.pairs]
    seen = {}
    for t in self_related:
        mem = frozenset(b for b in members_sorted if lat.leq(b, t))
        seen[mem] = t
    ordered = sorted(seen, key=lambda m: tuple(sorted(m)))
    ideals = tuple(RoundIdeal(p, mem) for mem in ordered)
    for ideal in ideals:
        bad = ideal.violations(si)
        if bad:
            raise InvariantViolation(f"enumerated ideal invalid: {bad[0]}")
    names = [f"dn({lat.names[seen[mem]]})" for mem in ordered]
    leq = [[a.members <= b.members for b in ideals] for a in ideals]
    frame_lat = PcdLattice(names, leq, name=f"R({lat.name})")
    report = frame_lat.validate()
    if report:
        raise InvariantViolation(f"round-ideal frame invalid: {report[0]}")
    by_members = {ideal.members: i for i, ideal in enumerate(ideals)}
    down_index = {}
    for a in members_sorted:
        mem = frozenset(b for b in members_sorted if (b, a) in si.pairs)
        idx = by_members.get(mem)
        if idx is None:
            raise InvariantViolation(
                f"strong downset of {lat.names[a]} is not among the round ideals"
            )
        down_index[a] = idx
    ideal_basis = Basis(frame_lat, frozenset(down_index.values()))
    fr = RoundIdealFrame(p, si, ideals, frame_lat, ideal_basis, down_index)
    _assert_frame_structure(fr)
    if not ideal_basis.is_basis():
        raise InvariantViolation("basic downset ideals do not generate the frame")
    return fr


def _assert_frame_structure(fr):
    lat = fr.p.lattice
    ideals = fr.ideals
    frame = fr.lattice
    for i, a in enumerate(ideals):
        for j, b in enumerate(ideals):
            inter = a.members & b.members
            if ideals[frame.meet[i][j]].members != inter:
                raise InvariantViolation("frame meet is not set intersection")
            # join formula: everything under the join of some finite
            # sub-family drawn from the union
            u = lat.join_all(sorted(a.members | b.members))
            formula = frozenset(
                x for x in sorted(fr.p.elements) if lat.leq(x, u)
            )
            if ideals[frame.join[i][j]].members != formula:
                raise InvariantViolation("frame join misses the covering formula")


@dataclass(frozen=True)
class CompactRegularReport:
    ok: bool
    problems: tuple
    subcover: tuple

    def __bool__(self):
        return self.ok


def check_compact_regular(fr):
    """Compactness witness extraction plus regularity over the ideal basis."""
    problems = []
    subcover = ()
    frame = fr.lattice
    try:
        witness = is_compact(
            frame, fr.ideal_basis, Cover(frame.top, frozenset(fr.ideal_basis.elements))
        )
        subcover = tuple(witness)
    except NotACoverError:
        problems.append("basic ideals do not cover the top ideal")
    if not is_regular(frame, fr.ideal_basis):
        problems.append("frame is not regular over the ideal basis")
    return CompactRegularReport(not problems, tuple(problems), subcover)


def is_compatible(l, p, si):
    """Every carrier element is the join of elements strongly included in it."""
    l.require_valid()
    for a in sorted(p.elements):
        below = [x for x in sorted(p.elements) if (x, a) in si.pairs]
        if l.join_all(below) != a:
            return False
    return True


def join_map(l, fr):
    """The map from the source into the round-ideal frame: an ideal goes to its join."""
    if fr.p.lattice != l:
        raise MalformedInput("frame was not built over this lattice")
    assignment = {
        idx: l.join_all(sorted(fr.ideals[idx].members))
        for idx in fr.ideal_basis.elements
    }
    m = ContinuousMap(l, fr.lattice, fr.ideal_basis, assignment)
    report = validate_map(m)
    if report:
        raise InvariantViolation(f"join map is not continuous: {report[0]}")
    return m


def extension_map(fr, f, codomain_basis=None):
    """The unique map out of the round-ideal frame with g after join_map equal to f.

    ``f`` must have a regular codomain and the frame's strong inclusion must
    be finer than the well-inside preimages of ``f``; the factorization and
    continuity of the result are asserted before returning.
    """
    lsrc = f.source
    ltgt = f.target
    require_valid_map(f)
    if fr.p.lattice != lsrc:
        raise MalformedInput("frame and map sources do not match")
    if codomain_basis is None:
        codomain_basis = full_basis(ltgt)
    if not codomain_basis.is_sub_pcd() or not codomain_basis.is_basis():
        raise PreconditionError("codomain basis must be a generating pcd-sublattice")
    if not is_regular(ltgt, codomain_basis):
        raise PreconditionError("codomain is not regular")
    tag = finer_than(fr.si, f)
    if not tag.finer:
        y, x = tag.failing
        raise PreconditionError(
            "map is outside the extension class: no sandwich witnesses for "
            f"the well-inside pair ({ltgt.names[y]}, {ltgt.names[x]})"
        )
    wi = well_inside_pairs(ltgt)
    carrier = sorted(fr.p.elements)
    assignment = {}
    for a in sorted(codomain_basis.elements):
        images = [
            extend(f, b) for b in sorted(codomain_basis.elements) if (b, a) in wi
        ]
        members = frozenset(
            c for c in carrier if any(lsrc.leq(c, x) for x in images)
        )
        idx = fr.index_of(members)
        if idx is None:
            raise InvariantViolation(
                f"extension image of {ltgt.names[a]} is not a round ideal"
            )
        assignment[a] = idx
    g = ContinuousMap(fr.lattice, ltgt, codomain_basis, assignment)
    report = validate_map(g)
    if report:
        raise InvariantViolation(f"extension map is not continuous: {report[0]}")
    if not maps_equal(compose(g, join_map(lsrc, fr)), f):
        raise InvariantViolation("extension does not factor the map through join_map")
    return g


def strong_inclusion_from_maps(l, s, maps, target_bases=None):
    """Carrier and least strong inclusion induced by a family of maps.

    The carrier is the pcd-closure of ``s`` together with all basis
    preimages; the strong inclusion is generated by the preimages of
    well-inside pairs of each codomain.
    """
    l.require_valid()
    s_f = set(s)
    seed_pairs = set()
    for i, f in enumerate(maps):
        if f.source != l:
            raise MalformedInput("map source does not match the lattice")
        require_valid_map(f)
        tb = target_bases[i] if target_bases else full_basis(f.target)
        if not tb.is_sub_pcd() or not tb.is_basis():
            raise PreconditionError(
                "codomain basis must be a generating pcd-sublattice"
            )
        if not is_regular(f.target, tb):
            raise PreconditionError("map codomain is not regular")
        wi = well_inside_pairs(f.target)
        images = {b: extend(f, b) for b in sorted(tb.elements)}
        s_f.update(images.values())
        for b, a in sorted(wi):
            if b in images and a in images:
                seed_pairs.add((images[b], images[a]))
    p = pcd_closure(l, s_f)
    seed = Relation(l, seed_pairs, carrier=p.elements)
    return p, least_strong_inclusion(p, seed)


def compactify_extending(l, b, maps, target_bases=None):
    """Compactify over the closure of a strongly regular basis plus map preimages.

    Returns the compactification (through the interpolative core of
    well-inside on the enlarged carrier, which is checked compatible) and the
    unique extension of every supplied map.
    """
    l.require_valid()
    if not b.is_basis():
        raise PreconditionError("not a basis of the lattice")
    if not is_strongly_regular_basis(l, b):
        raise PreconditionError("basis is not strongly regular")
    enlarged = set(b.elements)
    for i, f in enumerate(maps):
        if f.source != l:
            raise MalformedInput("map source does not match the lattice")
        require_valid_map(f)
        tb = target_bases[i] if target_bases else full_basis(f.target)
        if not tb.is_basis():
            raise PreconditionError("codomain basis does not generate the codomain")
        if not is_regular(f.target, full_basis(f.target)):
            raise PreconditionError("map codomain is not regular")
        closed = pcd_closure(f.target, tb.elements)
        enlarged.update(extend(f, x) for x in sorted(closed.elements))
    p = pcd_closure(l, enlarged)
    si = interpolative_core_on_basis(l, p)
    if not is_compatible(l, p, si):
        raise InvariantViolation("core strong inclusion is not compatible")
    fr = enumerate_round_ideals(p, si)
    m = join_map(l, fr)
    comp = Compactification(map=m, frame=fr)
    comp.require_valid()
    extensions = [extension_map(fr, f) for f in maps]
    return comp, extensions


def explicit_strong_inclusion(p, f, codomain_basis=None):
    """Sandwich description of the strong inclusion generated by one map.

    The pair (x, y) is related when x sits under the preimage of some b and y
    sits over the preimage of some a with b well-inside a.  Requires the
    extension of ``f`` to preserve pseudocomplements; the result is checked
    equal to the inductively generated strong inclusion before returning.
    """
    lsrc, ltgt = f.source, f.target
    require_valid_map(f)
    if codomain_basis is None:
        codomain_basis = full_basis(ltgt)
    if not codomain_basis.is_sub_pcd() or not codomain_basis.is_basis():
        raise PreconditionError("codomain basis must be a generating pcd-sublattice")
    for a in range(ltgt.n):
        if extend(f, ltgt.pstar[a]) != lsrc.pstar[extend(f, a)]:
            raise PreconditionError(
                f"extension does not preserve the pseudocomplement of {ltgt.names[a]}"
            )
    if not is_regular(ltgt, codomain_basis):
        raise PreconditionError("codomain is not regular")
    carrier = sorted(p.elements)
    for x in {extend(f, b) for b in codomain_basis.elements}:
        if x not in p.elements:
            raise PreconditionError("carrier does not contain the basis preimages")
    wi = well_inside_pairs(ltgt)
    pairs = set()
    for b, a in sorted(wi):
        if b not in codomain_basis.elements or a not in codomain_basis.elements:
            continue
        fb, fa = extend(f, b), extend(f, a)
        for x in carrier:
            if not lsrc.leq(x, fb):
                continue
            for y in carrier:
                if lsrc.leq(fa, y):
                    pairs.add((x, y))
    rhs = Relation(lsrc, pairs, carrier=p.elements)
    seed = Relation(
        lsrc,
        {
            (extend(f, b), extend(f, a))
            for b, a in wi
            if b in codomain_basis.elements and a in codomain_basis.elements
        },
        carrier=p.elements,
    )
    lhs = least_strong_inclusion(p, seed)
    if lhs != rhs:
        raise InvariantViolation(
            "sandwich description disagrees with the generated strong inclusion"
        )
    return rhs


@dataclass(frozen=True)
class Reconstruction:
    """Round-ideal presentation of an existing compactification."""

    p: Basis
    si: Relation
    iso: ContinuousMap
    frame: RoundIdealFrame


def from_compactification(k, target_basis=None):
    """Recover a carrier, strong inclusion and frame isomorphic to the codomain.

    The carrier is the pcd-closure of the basis preimages, the strong
    inclusion is generated by preimages of well-inside pairs, and the
    isomorphism witness is the extension of the compactification itself; it
    is verified bijective and order-preserving in both directions.
    """
    k.require_valid()
    l = k.source
    klat = k.codomain
    if target_basis is None:
        target_basis = full_basis(klat)
    p, si = strong_inclusion_from_maps(l, (), [k.map], [target_basis])
    if not is_compatible(l, p, si):
        raise InvariantViolation("reconstructed strong inclusion is not compatible")
    fr = enumerate_round_ideals(p, si)
    g = extension_map(fr, k.map, target_basis)
    images = [extend(g, m) for m in range(klat.n)]
    if len(set(images)) != klat.n:
        raise InvariantViolation("reconstruction witness is not one-one")
    if set(images) != set(range(fr.lattice.n)):
        raise InvariantViolation("reconstruction witness is not onto")
    for m1 in range(klat.n):
        for m2 in range(klat.n):
            if klat.leq(m1, m2) != fr.lattice.leq(images[m1], images[m2]):
                raise InvariantViolation(
                    "reconstruction witness does not preserve order both ways"
                )
    return Reconstruction(p=p, si=si, iso=g, frame=fr)


class Ordering(Enum):
    LE = "<="
    GE = ">="
    ISO = "iso"
    INCOMPARABLE = "incomparable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CompareResult:
    verdict: Ordering
    le_witness: ContinuousMap | None = None
    ge_witness: ContinuousMap | None = None


def _inverse_iso(g):
    """Invert a frame isomorphism given as a continuous map."""
    fr_lat, klat = g.source, g.target
    ext = {m: extend(g, m) for m in range(klat.n)}
    inv = {v: m for m, v in ext.items()}
    i = ContinuousMap(
        klat, fr_lat, full_basis(fr_lat), {x: inv[x] for x in range(fr_lat.n)}
    )
    report = validate_map(i)
    if report:
        raise InvariantViolation(f"inverse of an isomorphism not continuous: {report[0]}")
    return i


def _mediating(ka, kb, rb):
    """Map h with ka = h after kb, or None when kb cannot factor ka."""
    tag = finer_than(rb.si, ka.map)
    if not tag.finer:
        return None
    h0 = extension_map(rb.frame, ka.map)
    h = compose(h0, _inverse_iso(rb.iso))
    if not maps_equal(compose(h, kb.map), ka.map):
        raise InvariantViolation("mediating map does not factor the compactification")
    return h


def compare(k1, k2):
    """Order two compactifications of the same source.

    ``k1 <= k2`` holds exactly when the strong inclusion reconstructed from
    ``k2`` is finer than the well-inside preimages of ``k1``; the mediating
    map is then built by extension through the round-ideal frame and checked
    pointwise.
    """
    if k1.source != k2.source:
        raise MalformedInput("compactifications have different sources")
    k1.require_valid()
    k2.require_valid()
    r1 = from_compactification(k1)
    r2 = from_compactification(k2)
    le = _mediating(k1, k2, r2)
    ge = _mediating(k2, k1, r1)
    if le is not None and ge is not None:
        verdict = Ordering.ISO
    elif le is not None:
        verdict = Ordering.LE
    elif ge is not None:
        verdict = Ordering.GE
    else:
        verdict = Ordering.INCOMPARABLE
    return CompareResult(verdict, le, ge)


@dataclass(frozen=True)
class CoverWitness:
    """Interpolating families squeezed between an element and a cover."""

    lower: tuple
    middle: tuple
    upper: tuple


def interpolated_subcover(l, p, b, parts):
    """Interpolated finite subcover under an element well-inside a cover's join.

    For ``b`` well-inside the join of ``parts`` (all within the carrier),
    produce index-deterministic families lower_i <| middle_i <| upper_i with
    upper_i among the parts, b under the join of the lower family, and the
    two family joins well-inside each other and the cover join.  Returns
    None when the minimal subcover shows b is the bottom.
    """
    l.require_valid()
    parts = sorted(set(parts))
    if any(x not in p.elements for x in parts):
        raise PreconditionError("cover parts must lie in the carrier")
    wi = well_inside_pairs(l)
    total = l.join_all(parts)
    if (b, total) not in wi:
        raise PreconditionError("element is not well-inside the join of the cover")
    members = sorted(p.elements)
    candidates = [
        q
        for q in members
        if any(
            (qq, pp) in wi and (q, qq) in wi
            for pp in parts
            for qq in members
        )
    ]
    bstar = l.pstar[b]
    cover_parts = [bstar] + candidates
    if l.join_all(cover_parts) != l.top:
        raise PreconditionError(
            "carrier is not regular enough to refine the cover"
        )
    chosen = _first_minimal_subcover(l, cover_parts)
    lower = sorted(cover_parts[i] for i in chosen if i != 0)
    if not lower:
        if b != l.bottom:
            raise InvariantViolation("empty refinement for a non-bottom element")
        return None
    middle = []
    upper = []
    for q in lower:
        m = next(
            qq
            for qq in members
            if (q, qq) in wi and any((qq, pp) in wi for pp in parts)
        )
        middle.append(m)
        upper.append(next(pp for pp in parts if (m, pp) in wi))
    vee = l.join_all(lower)
    vee_m = l.join_all(middle)
    checks = (
        l.leq(b, vee)
        and (vee, vee_m) in wi
        and (vee_m, total) in wi
        and all((q, m) in wi for q, m in zip(lower, middle))
        and all((m, u) in wi for m, u in zip(middle, upper))
        and all(u in parts for u in upper)
    )
    if not checks:
        raise InvariantViolation("interpolated subcover fails its inequalities")
    return CoverWitness(tuple(lower), tuple(middle), tuple(upper))


def _first_minimal_subcover(l, parts):
    """Positions of the lexicographically first minimal-cardinality subcover."""
    idx = list(range(len(parts)))
    for k in range(len(parts) + 1):
        for combo in combinations(idx, k):
            if l.join_all(parts[i] for i in combo) == l.top:
                return combo
    raise NotACoverError("parts do not cover the top")
