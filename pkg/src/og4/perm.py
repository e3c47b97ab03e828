"""Finite permutation groups by exhaustive enumeration.

Everything here works at "desk scale": a group is its complete element table
(int32 image rows, sorted lexicographically), and structural questions
(orbits, stabilizers, normal subgroups, quasiprimitivity) are answered by
direct search over that table.  No stabilizer-chain machinery.

Points are 0-based internally; the cycle-notation parser/printer is 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels

DEFAULT_CAP = 1_000_000
DEFAULT_NORMAL_SUBGROUP_LIMIT = 10_000


class OG4Error(Exception):
    """Base class for library errors."""


class DegreeMismatch(OG4Error):
    pass


class EnumerationCapExceeded(OG4Error):
    def __init__(self, cap: int):
        super().__init__(f"group enumeration exceeded the element cap of {cap}")
        self.cap = cap


class ParseError(OG4Error):
    pass


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """A bijection on {0..n-1}, stored as an image row."""

    __slots__ = ("images",)

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1 or arr.size < 1:
            raise OG4Error("a permutation needs at least one point")
        if sorted(arr.tolist()) != list(range(arr.size)):
            raise OG4Error(f"not a bijection on 0..{arr.size - 1}: {arr.tolist()}")
        arr.setflags(write=False)
        object.__setattr__(self, "images", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return self.images.size

    def apply(self, x: int) -> int:
        return int(self.images[x])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Permutation(inv)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def order(self) -> int:
        k = 1
        p = self
        while not p.is_identity():
            p = compose(p, self)
            k += 1
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def identity(degree: int) -> Permutation:
    return Permutation(np.arange(degree, dtype=np.int32))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p then q: x -> (x^p)^q."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees differ: {p.degree} vs {q.degree}")
    return Permutation(q.images[p.images])


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, by: Permutation) -> Permutation:
    """p^by = by^-1 * p * by."""
    return compose(compose(by.inverse(), p), by)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse 1-based cycle notation, e.g. "(1 2 3)(4 5)" or "(1,2,3)".

    Fixed points may be omitted; "()" is the identity.  If ``degree`` is not
    given it is inferred from the largest point mentioned.
    """
    stripped = re.sub(r"\s+", " ", text.strip())
    if not stripped:
        raise ParseError("empty permutation text")
    body = stripped.replace(" ", "")
    consumed = "".join(_CYCLE_RE.findall(body))
    if _CYCLE_RE.sub("", body) != "":
        raise ParseError(f"malformed cycle notation: {text!r}")
    cycles = []
    maxpt = 0
    for grp in _CYCLE_RE.findall(stripped):
        pts = [tok for tok in re.split(r"[,\s]+", grp.strip()) if tok]
        cyc = []
        for tok in pts:
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(f"bad point {tok!r} in {text!r}")
            cyc.append(int(tok) - 1)
        if len(set(cyc)) != len(cyc):
            raise ParseError(f"repeated point inside a cycle: {text!r}")
        maxpt = max(maxpt, *(c + 1 for c in cyc)) if cyc else maxpt
        if len(cyc) > 1:
            cycles.append(cyc)
    if degree is None:
        degree = max(maxpt, 1)
    elif maxpt > degree:
        raise ParseError(f"point {maxpt} exceeds degree {degree}")
    images = np.arange(degree, dtype=np.int32)
    seen: set[int] = set()
    for cyc in cycles:
        for pt in cyc:
            if pt in seen:
                raise ParseError(f"point {pt + 1} appears in two cycles: {text!r}")
            seen.add(pt)
        for i, pt in enumerate(cyc):
            images[pt] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


def format_cycles(p: Permutation) -> str:
    """Inverse of parse_permutation: 1-based cycles, fixed points omitted."""
    seen = [False] * p.degree
    parts = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        nxt = p.apply(start)
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p.apply(nxt)
        if len(cyc) > 1:
            parts.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A fully enumerated permutation group.

    ``table`` holds every element as an image row, sorted lexicographically;
    that ordering is the canonical element indexing used for all tie-breaks.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], table: np.ndarray):
        self.degree = degree
        self.generators = tuple(generators)
        table = np.ascontiguousarray(table, dtype=np.int32)
        table.setflags(write=False)
        self.table = table
        self.order = table.shape[0]
        self._index: Optional[dict[bytes, int]] = None
        self._classes: Optional[list[np.ndarray]] = None
        self._closures: Optional[list[set[int]]] = None

    # -- element access ----------------------------------------------------

    @property
    def index(self) -> dict[bytes, int]:
        if self._index is None:
            self._index = {self.table[i].tobytes(): i for i in range(self.order)}
        return self._index

    def element(self, i: int) -> Permutation:
        return Permutation(self.table[i])

    def elements(self) -> list[Permutation]:
        return [self.element(i) for i in range(self.order)]

    def index_of(self, p: Permutation) -> int:
        i = self.index.get(p.images.tobytes())
        if i is None:
            raise OG4Error("element not in group")
        return i

    def __contains__(self, p: Permutation) -> bool:
        return p.degree == self.degree and p.images.tobytes() in self.index

    @property
    def identity_index(self) -> int:
        return self.index[np.arange(self.degree, dtype=np.int32).tobytes()]

    def gen_rows(self) -> np.ndarray:
        return np.asarray([g.images for g in self.generators], dtype=np.int32)

    def contains_all(self, other: "PermGroup") -> bool:
        idx = self.index
        return all(other.table[i].tobytes() in idx for i in range(other.order))

    def same_elements(self, other: "PermGroup") -> bool:
        return self.order == other.order and np.array_equal(self.table, other.table)

    def element_indices_in(self, parent: "PermGroup") -> np.ndarray:
        """Indices of this group's elements inside ``parent``'s table."""
        idx = parent.index
        return np.asarray(
            sorted(idx[self.table[i].tobytes()] for i in range(self.order)), dtype=np.int64
        )

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _sorted_table(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def _closure_rows(gen_rows: np.ndarray, cap: int) -> np.ndarray:
    out = _kernels.close_under_products(np.asarray(gen_rows, dtype=np.int32), cap)
    if out is None:
        raise EnumerationCapExceeded(cap)
    return out


def enumerate_group(generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first closure of the generators; raises if the cap is hit."""
    gens = list(generators)
    if not gens:
        raise OG4Error("generator list must be nonempty")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch("generators have mixed degrees")
    rows = _closure_rows(np.asarray([g.images for g in gens]), cap)
    return PermGroup(degree, gens, _sorted_table(rows))


def group_from_table(
    table: np.ndarray, generators: Optional[Sequence[Permutation]] = None
) -> PermGroup:
    """Wrap an element table (must already be closed) as a PermGroup."""
    table = _sorted_table(np.asarray(table, dtype=np.int32))
    degree = table.shape[1]
    if generators is None:
        generators = _small_generating_set(table)
    return PermGroup(degree, generators, table)


def _small_generating_set(table: np.ndarray) -> list[Permutation]:
    """Greedy generating set: add the first element not yet generated."""
    n = table.shape[1]
    if table.shape[0] == 1:
        return [identity(n)]
    gens: list[np.ndarray] = []
    generated = {np.arange(n, dtype=np.int32).tobytes()}
    for row in table:
        if row.tobytes() in generated:
            continue
        gens.append(row)
        rows = _closure_rows(np.asarray(gens), table.shape[0] + 1)
        generated = {r.tobytes() for r in rows}
        if len(generated) == table.shape[0]:
            break
    return [Permutation(g) for g in gens]


def subgroup_from_rows(rows: Iterable[np.ndarray]) -> PermGroup:
    return group_from_table(np.asarray(list(rows), dtype=np.int32))


# ---------------------------------------------------------------------------
# partitions and orbits


@dataclass(frozen=True)
class BlockPartition:
    """Disjoint nonempty blocks covering {0..n-1}, sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]
    point_block: np.ndarray  # point -> block index

    @staticmethod
    def from_labels(labels: np.ndarray) -> "BlockPartition":
        n = labels.size
        raw: dict[int, list[int]] = {}
        for v in range(n):
            raw.setdefault(int(labels[v]), []).append(v)
        blocks = sorted((tuple(b) for b in raw.values()), key=lambda b: b[0])
        point_block = np.empty(n, dtype=np.int32)
        for i, b in enumerate(blocks):
            for v in b:
                point_block[v] = i
        point_block.setflags(write=False)
        return BlockPartition(tuple(blocks), point_block)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def orbits(group: PermGroup) -> BlockPartition:
    labels = _kernels.point_orbit_labels(group.gen_rows(), group.degree)
    return BlockPartition.from_labels(np.asarray(labels))


@dataclass(frozen=True)
class TransitivityProfile:
    transitive: bool
    semiregular: bool
    regular: bool
    orbit_count: int


def transitivity_profile(group: PermGroup) -> TransitivityProfile:
    part = orbits(group)
    transitive = part.n_blocks == 1
    fixes = (group.table == np.arange(group.degree)).any(axis=1)
    # semiregular: only the identity fixes any point
    semiregular = int(fixes.sum()) <= 1
    return TransitivityProfile(
        transitive=transitive,
        semiregular=semiregular,
        regular=transitive and semiregular,
        orbit_count=part.n_blocks,
    )


def point_stabilizer(group: PermGroup, x: int) -> PermGroup:
    if not 0 <= x < group.degree:
        raise OG4Error(f"point {x} out of range for degree {group.degree}")
    mask = group.table[:, x] == x
    return group_from_table(group.table[mask])


# ---------------------------------------------------------------------------
# normal-subgroup machinery


def _generate_in_parent(parent: PermGroup, seed_indices: Iterable[int], cap: int) -> set[int]:
    """Subgroup generated by the given parent elements, as parent indices.

    Seeds already inside the running closure are skipped, so the closure
    kernel only ever sees a small generating set (each kept seed at least
    doubles the subgroup, so at most log2(order) closure passes happen).
    """
    idx = parent.index
    seeds = sorted(set(int(i) for i in seed_indices))
    gens: list[int] = []
    members: set[int] = {parent.identity_index}
    for s in seeds:
        if s in members:
            continue
        gens.append(s)
        rows = _closure_rows(parent.table[gens], min(cap, parent.order + 1))
        members = {idx[r.tobytes()] for r in rows}
    return members


def normal_closure(
    group: PermGroup, seeds: Iterable[Permutation], cap: int = DEFAULT_CAP
) -> PermGroup:
    """Least normal subgroup of ``group`` containing the seeds."""
    seed_idx = {group.index_of(s) for s in seeds}
    return _subgroup(group, _normal_closure_indices(group, seed_idx, cap))


def _normal_closure_indices(group: PermGroup, seed_idx: set[int], cap: int) -> set[int]:
    idx = group.index
    gens = sorted(seed_idx - {group.identity_index})
    if not gens:
        return {group.identity_index}
    gen_rows = [g.images for g in group.generators]
    gen_invs = [g.inverse().images for g in group.generators]
    current = set(gens)
    while True:
        members = _generate_in_parent(group, current, cap)
        new = []
        for s in sorted(current):
            srow = group.table[s]
            for grow, ginv in zip(gen_rows, gen_invs):
                conj = grow[srow[ginv]]
                j = idx[conj.tobytes()]
                if j not in members:
                    new.append(j)
        if not new:
            return members
        current |= set(new)


def _subgroup(parent: PermGroup, indices: set[int]) -> PermGroup:
    rows = parent.table[sorted(indices)]
    return group_from_table(rows)


def conjugacy_classes(group: PermGroup) -> list[np.ndarray]:
    """Classes as sorted index arrays, ordered by least element index."""
    if group._classes is not None:
        return group._classes
    idx = group.index
    gen_rows = [g.images for g in group.generators]
    gen_invs = [g.inverse().images for g in group.generators]
    labels = np.full(group.order, -1, dtype=np.int64)
    classes: list[np.ndarray] = []
    for start in range(group.order):
        if labels[start] >= 0:
            continue
        label = len(classes)
        labels[start] = label
        stack = [start]
        members = [start]
        while stack:
            i = stack.pop()
            row = group.table[i]
            for grow, ginv in zip(gen_rows, gen_invs):
                conj = grow[row[ginv]]
                j = idx[conj.tobytes()]
                if labels[j] < 0:
                    labels[j] = label
                    stack.append(j)
                    members.append(j)
        classes.append(np.asarray(sorted(members), dtype=np.int64))
    group._classes = classes
    return classes


def _class_closures(group: PermGroup, cap: int) -> list[set[int]]:
    """Normal closure of each nontrivial conjugacy class, deduplicated."""
    if group._closures is not None:
        return group._closures
    closures: list[set[int]] = []
    seen_keys: set[tuple[int, ...]] = set()
    ident = group.identity_index
    for cls in conjugacy_classes(group):
        if cls.size == 1 and int(cls[0]) == ident:
            continue
        members = _generate_subgroup_containing_class(group, cls, cap)
        key = tuple(sorted(members))
        if key not in seen_keys:
            seen_keys.add(key)
            closures.append(members)
    group._closures = closures
    return closures


def _generate_subgroup_containing_class(group: PermGroup, cls: np.ndarray, cap: int) -> set[int]:
    # <class> is normal since conjugation permutes the class.  Build it with
    # an incrementally grown generating set instead of all class members.
    gens = [int(cls[0])]
    cls_set = [int(c) for c in cls]
    while True:
        members = _generate_in_parent(group, gens, cap)
        missing = next((c for c in cls_set if c not in members), None)
        if missing is None:
            return members
        gens.append(missing)


def all_normal_subgroups(
    group: PermGroup,
    cap: int = DEFAULT_CAP,
    limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT,
) -> list[PermGroup]:
    """Every normal subgroup, ordered by (order, element index tuple).

    The lattice is generated by closing the normal closures of the conjugacy
    classes under joins; every normal subgroup is the join of the closures of
    the classes it contains, and every such join is normal.
    """
    ident = group.identity_index
    atoms = [frozenset(c) for c in _class_closures(group, cap)]
    found: set[frozenset[int]] = {frozenset({ident})}
    frontier = [frozenset({ident})]
    while frontier:
        nxt = []
        for sub in frontier:
            for atom in atoms:
                if atom <= sub:
                    continue
                joined = frozenset(_generate_in_parent(group, sub | atom, cap))
                if joined not in found:
                    if len(found) >= limit:
                        raise OG4Error(
                            f"normal-subgroup lattice exceeds the limit of {limit} candidates"
                        )
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    subs = sorted(found, key=lambda s: (len(s), tuple(sorted(s))))
    return [_subgroup(group, set(s)) for s in subs]


def minimal_normal_subgroups(group: PermGroup, cap: int = DEFAULT_CAP) -> list[PermGroup]:
    """Minimal nontrivial normal subgroups.

    Every minimal normal subgroup is the normal closure of any of its
    nonidentity elements, so the minimal elements among the class closures
    are exactly the minimal normal subgroups.
    """
    closures = _class_closures(group, cap)
    minimal = []
    for c in closures:
        if not any(other < c for other in closures):
            minimal.append(c)
    minimal.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return [_subgroup(group, c) for c in minimal]


def is_normal_in(sub: PermGroup, group: PermGroup) -> bool:
    if not group.contains_all(sub):
        return False
    idx = {sub.table[i].tobytes() for i in range(sub.order)}
    for g in group.generators:
        ginv = g.inverse().images
        for i in range(sub.order):
            conj = g.images[sub.table[i][ginv]]
            if conj.tobytes() not in idx:
                return False
    return True


def quasiprimitivity_type(group: PermGroup, cap: int = DEFAULT_CAP) -> str:
    """One of "quasiprimitive", "biquasiprimitive", "neither".

    Determined from the minimal normal subgroups: orbit counts of larger
    normal subgroups only ever decrease, so it suffices to look at minimal
    ones.
    """
    if not transitivity_profile(group).transitive:
        raise OG4Error("quasiprimitivity is defined for transitive groups only")
    counts = [orbits(m).n_blocks for m in minimal_normal_subgroups(group, cap)]
    if all(c == 1 for c in counts):
        return "quasiprimitive"
    if all(c <= 2 for c in counts):
        return "biquasiprimitive"
    return "neither"


def is_nonabelian_simple(group: PermGroup, cap: int = DEFAULT_CAP) -> bool:
    """Exhaustive check: nontrivial, nonabelian, no proper nontrivial normals."""
    if group.order == 1:
        return False
    for g in group.generators:
        for h in group.generators:
            if compose(g, h) != compose(h, g):
                break
        else:
            continue
        break
    else:
        return False  # abelian
    for closure in _class_closures(group, cap):
        if len(closure) != group.order:
            return False
    return True


# ---------------------------------------------------------------------------
# induced actions


def induced_block_action(
    group: PermGroup, partition: BlockPartition, cap: int = DEFAULT_CAP
) -> tuple[PermGroup, PermGroup]:
    """(image on block indices, kernel of that action)."""
    pb = partition.point_block
    if pb.size != group.degree:
        raise OG4Error("partition does not cover the group's points")
    for g in group.generators:
        mapped = pb[g.images]
        for block in partition.blocks:
            vals = mapped[list(block)]
            if not (vals == vals[0]).all():
                raise OG4Error("partition is not invariant under the group")
    reps = np.asarray([b[0] for b in partition.blocks], dtype=np.int64)
    induced = pb[group.table[:, reps]]  # (order, n_blocks)
    uniq = np.unique(induced, axis=0)
    gen_images = [Permutation(pb[g.images[reps]]) for g in group.generators]
    image = PermGroup(partition.n_blocks, _dedupe_perms(gen_images), uniq)
    kernel_mask = (induced == np.arange(partition.n_blocks)).all(axis=1)
    kernel = group_from_table(group.table[kernel_mask])
    return image, kernel


def _dedupe_perms(perms: Sequence[Permutation]) -> list[Permutation]:
    seen = set()
    out = []
    for p in perms:
        key = p.images.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# automorphisms given as element-table bijections


class GroupAutomorphism:
    """An automorphism of an enumerated group, as an index bijection."""

    def __init__(self, group: PermGroup, index_map: np.ndarray, check: bool = True):
        index_map = np.asarray(index_map, dtype=np.int64)
        if check:
            _check_automorphism(group, index_map)
        index_map.setflags(write=False)
        self.group = group
        self.index_map = index_map

    @staticmethod
    def from_conjugation(group: PermGroup, c: Permutation) -> "GroupAutomorphism":
        """Conjugation inside a stated supergroup: must normalize ``group``."""
        if c.degree != group.degree:
            raise DegreeMismatch("conjugating permutation has a different degree")
        cinv = c.inverse().images
        conj_rows = c.images[group.table[:, cinv]]
        idx = group.index
        index_map = np.empty(group.order, dtype=np.int64)
        for i in range(group.order):
            j = idx.get(conj_rows[i].tobytes())
            if j is None:
                raise OG4Error("conjugating permutation does not normalize the group")
            index_map[i] = j
        return GroupAutomorphism(group, index_map, check=False)

    @staticmethod
    def from_generator_images(
        group: PermGroup, gens: Sequence[Permutation], images: Sequence[Permutation]
    ) -> Optional["GroupAutomorphism"]:
        """Extend gens -> images to an automorphism, or None if impossible."""
        idx = group.index
        gi = [group.index_of(g) for g in gens]
        im = [group.index_of(h) for h in images]
        fmap = np.full(group.order, -1, dtype=np.int64)
        fmap[group.identity_index] = group.identity_index
        queue = [group.identity_index]
        while queue:
            x = queue.pop()
            for g, h in zip(gi, im):
                y = idx[group.table[g][group.table[x]].tobytes()]  # x * g
                fy = idx[group.table[h][group.table[fmap[x]]].tobytes()]
                if fmap[y] < 0:
                    fmap[y] = fy
                    queue.append(y)
                elif fmap[y] != fy:
                    return None
        if (fmap < 0).any() or len(set(fmap.tolist())) != group.order:
            return None
        return GroupAutomorphism(group, fmap, check=False)

    def apply(self, p: Permutation) -> Permutation:
        return self.group.element(int(self.index_map[self.group.index_of(p)]))

    def apply_index(self, i: int) -> int:
        return int(self.index_map[i])

    def is_involution(self) -> bool:
        sq = self.index_map[self.index_map]
        return bool((sq == np.arange(self.group.order)).all())

    def is_identity(self) -> bool:
        return bool((self.index_map == np.arange(self.group.order)).all())

    def as_point_permutation(self) -> Permutation:
        """The bijection of element indices, as a Permutation of the table."""
        return Permutation(self.index_map.astype(np.int32))


def _check_automorphism(group: PermGroup, index_map: np.ndarray) -> None:
    if sorted(index_map.tolist()) != list(range(group.order)):
        raise OG4Error("index map is not a bijection on the element table")
    idx = group.index
    # f(x*g) = f(x)*f(g) for all x and generating g implies the full
    # homomorphism property by induction on word length.
    for g in group.generators:
        gidx = group.index_of(g)
        fg_row = group.table[index_map[gidx]]
        for x in range(group.order):
            left = idx[g.images[group.table[x]].tobytes()]
            right_row = fg_row[group.table[index_map[x]]]
            if int(index_map[left]) != idx[right_row.tobytes()]:
                raise OG4Error("index map is not a homomorphism")


def all_automorphisms(group: PermGroup, max_candidates: int = 2_000_000) -> list[GroupAutomorphism]:
    """Brute-force automorphism enumeration, for small groups.

    Candidates assign, to each member of a small generating set, an image of
    the same element order; each candidate is extended by closure.
    """
    gens = list(group.generators)
    orders = {}
    for i in range(group.order):
        orders.setdefault(group.element(i).order(), []).append(i)
    pools = [orders[g.order()] for g in gens]
    total = 1
    for p in pools:
        total *= len(p)
    if total > max_candidates:
        raise OG4Error(f"automorphism search space {total} exceeds {max_candidates}")
    out = []
    seen: set[bytes] = set()

    def rec(k: int, chosen: list[int]) -> None:
        if k == len(gens):
            images = [group.element(i) for i in chosen]
            aut = GroupAutomorphism.from_generator_images(group, gens, images)
            if aut is not None:
                key = aut.index_map.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(aut)
            return
        for i in pools[k]:
            rec(k + 1, chosen + [i])

    rec(0, [])
    return out
