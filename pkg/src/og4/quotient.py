"""Normal quotients of certified OG(m) pairs and their classification.

A quotient collapses the orbits of a normal subgroup N to single vertices.
For a certified pair the outcome is always one of: the one-vertex graph, an
oriented multicover, or an arc-transitive multicover; for m = 4 this refines
to the five-way split Cover / K1 / K2 / oriented cycle / unoriented cycle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import (
    ConstructionRefuted,
    OGPair,
    OrientedGraph,
    certify_og,
    connectivity,
)
from .perm import (
    DEFAULT_CAP,
    BlockPartition,
    OG4Error,
    PermGroup,
    all_normal_subgroups,
    induced_block_action,
    is_normal_in,
    orbits,
    quasiprimitivity_type,
    transitivity_profile,
)


class InvariantViolation(OG4Error):
    """An internal structural invariant failed; must never happen on valid
    certified input."""


@dataclass(frozen=True)
class QuotientOutcome:
    kind: str  # K1 | Cover | OGMulticover | ArcTransitiveMulticover |
    #            K2 | OrientedCycle | UnorientedCycle
    quotient_graph: Optional[OrientedGraph]
    induced_group: PermGroup
    kernel: PermGroup
    partition: BlockPartition
    multicover_degree: Optional[int]  # ell, with k * ell = m
    quotient_valency: Optional[int]  # k
    cycle_length: Optional[int] = None  # r, for the cycle kinds
    quotient_pair: Optional[OGPair] = None  # certified, Cover case only


def _check_normal(pair: OGPair, n_sub: PermGroup) -> None:
    if n_sub.degree != pair.group.degree:
        raise OG4Error("subgroup degree does not match the pair")
    if not is_normal_in(n_sub, pair.group):
        raise OG4Error("subgroup is not normal in the acting group")


def normal_quotient(pair: OGPair, n_sub: PermGroup, cap: int = DEFAULT_CAP) -> QuotientOutcome:
    """Collapse N-orbits; classify as K1 / oriented / arc-transitive
    multicover and compute the multicover degree."""
    _check_normal(pair, n_sub)
    m = pair.valency
    part = orbits(n_sub)
    image, kernel = induced_block_action(pair.group, part, cap)

    if part.n_blocks == 1:
        return QuotientOutcome("K1", None, image, kernel, part, None, None)

    pb = part.point_block
    arcs = pair.graph.arcs
    qpairs = set()
    out_counts: Counter[tuple[int, int]] = Counter()
    for x, y in arcs.tolist():
        bx, by = int(pb[x]), int(pb[y])
        if bx == by:
            raise InvariantViolation("arc inside a single N-orbit of an intransitive N")
        qpairs.add((bx, by))
        out_counts[(x, by)] += 1

    ells = set(out_counts.values())
    if len(ells) != 1:
        raise InvariantViolation("multicover degree varies across vertices/orbits")
    ell_dir = ells.pop()
    # side-independence: the reverse-direction counts must agree
    in_counts = Counter()
    for x, y in arcs.tolist():
        in_counts[(y, int(pb[x]))] += 1
    if set(in_counts.values()) != {ell_dir}:
        raise InvariantViolation("multicover degree differs between edge sides")

    both_ways = any((b, a) in qpairs for a, b in qpairs)
    if both_ways:
        if not all((b, a) in qpairs for a, b in qpairs):
            raise InvariantViolation("quotient edges mixed one-way and two-way")
        ell = 2 * ell_dir
        kind = "ArcTransitiveMulticover"
    else:
        ell = ell_dir
        kind = "OGMulticover"
    if m % ell != 0:
        raise InvariantViolation("multicover degree does not divide the valency")
    k = m // ell
    qgraph = OrientedGraph(part.n_blocks, sorted(qpairs))
    if not connectivity(qgraph).connected:
        raise InvariantViolation("quotient of a connected pair is disconnected")
    return QuotientOutcome(kind, qgraph, image, kernel, part, ell, k)


def _is_cyclic_of_order(group: PermGroup, r: int) -> bool:
    if group.order != r:
        return False
    return any(group.element(i).order() == r for i in range(group.order))


def _is_dihedral_of_order(group: PermGroup, two_r: int) -> bool:
    r = two_r // 2
    if group.order != two_r or two_r % 2 != 0 or r < 3:
        return False
    rotations = [i for i in range(group.order) if group.element(i).order() == r]
    if not rotations:
        return False
    rot = group.element(rotations[0])
    rot_inv = rot.inverse()
    cyc = {rot.images.tobytes()}
    p = rot
    for _ in range(r - 1):
        p = p * rot
        cyc.add(p.images.tobytes())
    for i in range(group.order):
        t = group.element(i)
        if t.images.tobytes() in cyc:
            continue
        if t.order() == 2 and (t.inverse() * rot * t) == rot_inv:
            return True
    return False


def classify_og4_quotient(pair: OGPair, n_sub: PermGroup, cap: int = DEFAULT_CAP) -> QuotientOutcome:
    """Refine a quotient of an OG(4) pair to one of the five cases:
    K1, Cover, K2, OrientedCycle, UnorientedCycle."""
    if pair.valency != 4:
        raise OG4Error("classification applies to OG(4) pairs")
    if n_sub.order <= 1:
        raise OG4Error("classification applies to nontrivial normal subgroups")
    out = normal_quotient(pair, n_sub, cap)
    if out.kind == "K1":
        return out

    part, image, kernel = out.partition, out.induced_group, out.kernel
    if out.kind == "OGMulticover" and out.quotient_valency == 4:
        # G-normal cover: kernel = N, N semiregular, quotient again in OG(4)
        if not kernel.same_elements(n_sub):
            raise InvariantViolation("cover kernel differs from N")
        if not transitivity_profile(n_sub).semiregular:
            raise InvariantViolation("cover with non-semiregular N")
        if image.order * kernel.order != pair.group.order:
            raise InvariantViolation("cover image/kernel order arithmetic failed")
        qlabels = [pair.labels[b[0]] for b in part.blocks]
        try:
            qpair = certify_og(out.quotient_graph, image, 4, qlabels)
        except ConstructionRefuted as exc:
            raise InvariantViolation(f"cover quotient failed certification: {exc}") from exc
        return QuotientOutcome(
            "Cover", out.quotient_graph, image, kernel, part,
            out.multicover_degree, out.quotient_valency, quotient_pair=qpair,
        )

    if out.kind == "OGMulticover" and out.quotient_valency == 2:
        r = part.n_blocks
        if r < 3 or not _is_cyclic_of_order(image, r):
            raise InvariantViolation("oriented 2-valent quotient is not a cyclic r-cycle")
        if not (out.quotient_graph.out_degrees() == 1).all():
            raise InvariantViolation("oriented cycle quotient has wrong out-valency")
        return QuotientOutcome(
            "OrientedCycle", out.quotient_graph, image, kernel, part,
            out.multicover_degree, out.quotient_valency, cycle_length=r,
        )

    if out.kind == "ArcTransitiveMulticover" and out.quotient_valency == 1:
        if part.n_blocks != 2 or image.order != 2:
            raise InvariantViolation("valency-1 quotient is not K2 with a Z2 action")
        return QuotientOutcome(
            "K2", out.quotient_graph, image, kernel, part,
            out.multicover_degree, out.quotient_valency,
        )

    if out.kind == "ArcTransitiveMulticover" and out.quotient_valency == 2:
        r = part.n_blocks
        if r < 3 or not _is_dihedral_of_order(image, 2 * r):
            raise InvariantViolation("unoriented 2-valent quotient is not a dihedral r-cycle")
        return QuotientOutcome(
            "UnorientedCycle", out.quotient_graph, image, kernel, part,
            out.multicover_degree, out.quotient_valency, cycle_length=r,
        )

    raise InvariantViolation(f"impossible quotient shape: {out.kind} k={out.quotient_valency}")


# ---------------------------------------------------------------------------
# basic type and basic chains


def classify_all_quotients(
    pair: OGPair, cap: int = DEFAULT_CAP
) -> list[tuple[PermGroup, QuotientOutcome]]:
    """Classified quotient for every nontrivial normal subgroup of the
    acting group (the full group included)."""
    results = []
    for n_sub in all_normal_subgroups(pair.group, cap):
        if n_sub.order == 1:
            continue
        results.append((n_sub, classify_og4_quotient(pair, n_sub, cap)))
    return results


def basic_type(pair: OGPair, cap: int = DEFAULT_CAP) -> str:
    """Quasiprimitive | Biquasiprimitive | Cycle | NonBasic."""
    kinds = {out.kind for _, out in classify_all_quotients(pair, cap)}
    result = _basic_type_from_kinds(kinds)
    # cross-check against the group-theoretic characterization
    qp = quasiprimitivity_type(pair.group, cap)
    if result == "Quasiprimitive" and qp != "quasiprimitive":
        raise InvariantViolation("basic type and quasiprimitivity test disagree")
    if result == "Biquasiprimitive" and qp != "biquasiprimitive":
        raise InvariantViolation("basic type and biquasiprimitivity test disagree")
    return result


def _basic_type_from_kinds(kinds: set[str]) -> str:
    if "Cover" in kinds:
        return "NonBasic"
    if kinds & {"OrientedCycle", "UnorientedCycle"}:
        return "Cycle"
    if "K2" in kinds:
        return "Biquasiprimitive"
    return "Quasiprimitive"


def basic_chain(
    pair: OGPair, cap: int = DEFAULT_CAP
) -> tuple[list[tuple[PermGroup, OGPair]], OGPair]:
    """Greedy cover chain 1 < N_1 < ... < N_s ending at a basic quotient.

    Each N_i is a normal subgroup of the *original* group; the paired OGPair
    is the corresponding quotient.  For basic input the chain is empty.
    When several normal subgroups give covers, the largest is taken (fewest
    quotient vertices), ties broken by element-table order.
    """
    group = pair.group
    chain: list[tuple[PermGroup, OGPair]] = []
    current = pair
    current_blocks = BlockPartition.from_labels(np.arange(pair.graph.n_vertices))
    while True:
        covers = [
            (n_sub, out)
            for n_sub, out in classify_all_quotients(current, cap)
            if out.kind == "Cover"
        ]
        if not covers:
            return chain, current
        covers.sort(key=lambda item: (-item[0].order, tuple(map(tuple, item[0].table.tolist()))))
        n_bar, out = covers[0]
        # compose the quotient partition with the current one to express the
        # chain subgroup inside the original group
        composed_labels = out.partition.point_block[current_blocks.point_block]
        current_blocks = BlockPartition.from_labels(composed_labels)
        _, n_orig = induced_block_action(group, current_blocks, cap)
        if chain and n_orig.order <= chain[-1][0].order:
            raise InvariantViolation("basic chain is not strictly increasing")
        current = out.quotient_pair
        chain.append((n_orig, current))


def basic_quotients(pair: OGPair, cap: int = DEFAULT_CAP) -> list[tuple[PermGroup, OGPair]]:
    """All (N, quotient) with the quotient a *basic* OG(4) cover of the pair.

    Exhaustive counterpart to the greedy chain; for basic input this is
    empty.
    """
    out = []
    for n_sub, res in classify_all_quotients(pair, cap):
        if res.kind == "Cover" and basic_type(res.quotient_pair, cap) != "NonBasic":
            out.append((n_sub, res.quotient_pair))
    return out
