"""Shared instance generators for the test suite."""

from roundideal import io as rio
from roundideal.framemap import ContinuousMap
from roundideal.lattice import boolean, full_basis, pcd_closure
from roundideal.relation import (
    Relation,
    interpolative_core_on_basis,
    largest_interpolative,
    least_strong_inclusion,
)


def downset_instance(seed, size):
    return rio.generate(seed, size)


def atoms(lat):
    return [
        i
        for i in range(lat.n)
        if i != lat.bottom and lat.down_list(i) == sorted({lat.bottom, i})
    ]


def atom_map(src, tgt, phi):
    """Continuous map src -> tgt determined by a function on atoms.

    ``phi[i]`` names the target atom under the i-th source atom; the inverse
    assignment sends a target element to the join of source atoms landing
    under it.  Surjective phi gives a dense map, injective phi an embedding.
    """
    src_atoms = atoms(src)
    tgt_atoms = atoms(tgt)
    assert len(phi) == len(src_atoms)
    assignment = {}
    for t in range(tgt.n):
        images = [src_atoms[i] for i, a in enumerate(phi) if tgt.leq(tgt_atoms[a], t)]
        assignment[t] = src.join_all(images)
    return ContinuousMap(src, tgt, full_basis(tgt), assignment)


def random_phi(rng, n_src, n_tgt, surjective=False, injective=False):
    if injective:
        assert n_src <= n_tgt
        return rng.sample(range(n_tgt), n_src)
    while True:
        phi = [rng.randrange(n_tgt) for _ in range(n_src)]
        if not surjective or set(phi) == set(range(n_tgt)):
            return phi


def random_carrier(lat, rng, k=None):
    if k is None:
        k = rng.randrange(lat.n + 1)
    seed = rng.sample(range(lat.n), k) if k else []
    return pcd_closure(lat, seed)


def random_interpolative_seed(lat, p, rng):
    """An interpolative subrelation of well-inside on the carrier."""
    core = interpolative_core_on_basis(lat, p)
    chosen = [q for q in sorted(core.pairs) if rng.random() < 0.5]
    sub = largest_interpolative(Relation(lat, chosen, p.elements))
    return sub


def random_strong_inclusion(lat, p, rng):
    """One of: the core of well-inside, a generated closure, or the least one."""
    kind = rng.randrange(3)
    if kind == 0:
        return interpolative_core_on_basis(lat, p)
    if kind == 1:
        seed = random_interpolative_seed(lat, p, rng)
        return least_strong_inclusion(p, seed)
    return least_strong_inclusion(p, Relation(lat, (), p.elements))


def relabelled_boolean(k, rng, name="relabelled"):
    """A Boolean algebra with shuffled element order (same abstract frame)."""
    base = boolean(k)
    perm = list(range(base.n))
    rng.shuffle(perm)
    names = [base.names[perm[i]] for i in range(base.n)]
    leq = [
        [base.leq(perm[i], perm[j]) for j in range(base.n)]
        for i in range(base.n)
    ]
    from roundideal.lattice import PcdLattice

    return PcdLattice(names, leq, name=name)


def iso_map(src, tgt, phi):
    """Isomorphism src -> tgt from a bijection on atoms (both Boolean)."""
    return atom_map(src, tgt, phi)
