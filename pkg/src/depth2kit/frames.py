"""Finite frames, cluster posets, frame conditions, extremal relations.

A frame is a set of worlds 0..n-1 with a binary relation stored as
adjacency bit-rows: bit y of ``rows[x]`` means x relates to y.  On
quasiorders the mutual-reachability classes are called clusters; the
clusters carry a partial order whose longest-chain lengths give levels
and depth.  A depth-two quasiorder is *extremal* when its restriction
to each level is the identity or the universal relation; the four kinds
are named ii, iu, ui, uu by (lower level, upper level) restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .boolean import atom_indices
from .errors import DomainError, PreconditionError, SizeError

MAX_WORLDS = 12
MAX_CANONICAL_WORLDS = 7
MAX_ENUM_QUASIORDER = 5
MAX_ENUM_GENERAL = 4

EXTREMAL_KINDS = ("ii", "iu", "ui", "uu")


@dataclass(frozen=True)
class Frame:
    """Worlds 0..n_worlds-1 with relation bit-rows (successor masks)."""

    n_worlds: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n_worlds <= MAX_WORLDS:
            raise SizeError(
                f"world count must be between 1 and {MAX_WORLDS}, got {self.n_worlds}"
            )
        if len(self.rows) != self.n_worlds:
            raise DomainError("one relation row per world required")
        top = (1 << self.n_worlds) - 1
        for row in self.rows:
            if not 0 <= row <= top:
                raise DomainError(f"relation row {row} out of range")

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def successors(self, x: int) -> int:
        return self.rows[x]

    def edges(self) -> list[tuple[int, int]]:
        return [
            (x, y)
            for x in range(self.n_worlds)
            for y in atom_indices(self.rows[x])
        ]

    def to_dict(self) -> dict:
        return {"worlds": self.n_worlds, "edges": [list(e) for e in self.edges()]}


def frame_from_dict(data: dict) -> Frame:
    try:
        n = data["worlds"]
        edges = [tuple(e) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"bad frame object: {exc}") from exc
    return make_frame(n, edges)


def make_frame(n_worlds: int, edges) -> Frame:
    """Build a frame from an explicit edge list."""
    if not isinstance(n_worlds, int) or n_worlds < 1:
        raise DomainError(f"world count must be a positive integer, got {n_worlds}")
    if n_worlds > MAX_WORLDS:
        raise SizeError(f"world count must be at most {MAX_WORLDS}, got {n_worlds}")
    rows = [0] * n_worlds
    for x, y in edges:
        if not (0 <= x < n_worlds and 0 <= y < n_worlds):
            raise DomainError(f"edge ({x}, {y}) outside 0..{n_worlds - 1}")
        rows[x] |= 1 << y
    return Frame(n_worlds, tuple(rows))


def converse_frame(frame: Frame) -> Frame:
    """Transpose the relation; an involution."""
    n = frame.n_worlds
    rows = [0] * n
    for x in range(n):
        mask = frame.rows[x]
        for y in atom_indices(mask):
            rows[y] |= 1 << x
    return Frame(n, tuple(rows))


# --- Clusters and depth ---


def _cluster_masks(frame: Frame) -> list[int]:
    """Mutual-reachability classes as world masks, ordered by least member.

    Only meaningful when the relation is a quasiorder.
    """
    n = frame.n_worlds
    seen = 0
    clusters = []
    for x in range(n):
        if seen >> x & 1:
            continue
        mask = 0
        for y in atom_indices(frame.rows[x]):
            if frame.rows[y] >> x & 1:
                mask |= 1 << y
        mask |= 1 << x  # reflexivity may be absent on raw input; keep x in
        clusters.append(mask)
        seen |= mask
    return clusters


@dataclass(frozen=True)
class ClusterPoset:
    """Partition of a quasiorder into clusters plus their partial order.

    ``leq[i]`` is the bitmask of cluster indices above cluster i
    (including i); ``levels[i]`` is the longest-chain length ending at
    cluster i, and ``depth`` the maximum level.
    """

    clusters: tuple[tuple[int, ...], ...]
    leq: tuple[int, ...]
    levels: tuple[int, ...]
    depth: int

    def is_simple(self, i: int) -> bool:
        return len(self.clusters[i]) == 1

    def cluster_of(self, world: int) -> int:
        for i, members in enumerate(self.clusters):
            if world in members:
                return i
        raise DomainError(f"world {world} not covered")

    def level_worlds(self, level: int) -> int:
        """Bitmask of the worlds whose cluster sits at ``level``."""
        mask = 0
        for i, members in enumerate(self.clusters):
            if self.levels[i] == level:
                for w in members:
                    mask |= 1 << w
        return mask


def cluster_poset(frame: Frame) -> ClusterPoset:
    """Cluster partition, order, levels and depth of a quasiorder."""
    ok, witness = frame_condition(frame, "quasiorder")
    if not ok:
        raise PreconditionError(f"not a quasiorder, witness {witness}")
    masks = _cluster_masks(frame)
    k = len(masks)
    reps = [min(atom_indices(m)) for m in masks]
    leq = [0] * k
    for i in range(k):
        for j in range(k):
            if frame.rows[reps[i]] >> reps[j] & 1:
                leq[i] |= 1 << j
    levels = [0] * k

    # longest-chain length ending at each cluster, memoized in levels
    def level_of(i: int) -> int:
        if levels[i]:
            return levels[i]
        below = [j for j in range(k) if j != i and leq[j] >> i & 1]
        levels[i] = 1 + max((level_of(j) for j in below), default=0)
        return levels[i]

    for i in range(k):
        level_of(i)
    return ClusterPoset(
        clusters=tuple(tuple(atom_indices(m)) for m in masks),
        leq=tuple(leq),
        levels=tuple(levels),
        depth=max(levels),
    )


# --- First-order frame conditions ---


def _serial(f):
    for x in range(f.n_worlds):
        if not f.rows[x]:
            return False, (x,)
    return True, None


def _reflexive(f):
    for x in range(f.n_worlds):
        if not f.rows[x] >> x & 1:
            return False, (x,)
    return True, None


def _transitive(f):
    for x in range(f.n_worlds):
        for y in atom_indices(f.rows[x]):
            if f.rows[y] & ~f.rows[x]:
                z = min(atom_indices(f.rows[y] & ~f.rows[x]))
                return False, (x, y, z)
    return True, None


def _symmetric(f):
    for x in range(f.n_worlds):
        for y in atom_indices(f.rows[x]):
            if not f.rows[y] >> x & 1:
                return False, (x, y)
    return True, None


def _b2(f):
    # (xRy and yRz) implies (yRx or zRy): no strict three-step descent
    for x in range(f.n_worlds):
        for y in atom_indices(f.rows[x]):
            for z in atom_indices(f.rows[y]):
                if not (f.rows[y] >> x & 1 or f.rows[z] >> y & 1):
                    return False, (x, y, z)
    return True, None


def _convergent(f):
    for x in range(f.n_worlds):
        for y in atom_indices(f.rows[x]):
            for z in atom_indices(f.rows[x]):
                if not f.rows[y] & f.rows[z]:
                    return False, (x, y, z)
    return True, None


def _dot3(f):
    for x in range(f.n_worlds):
        for y in atom_indices(f.rows[x]):
            for z in atom_indices(f.rows[x]):
                if not (f.rows[y] >> z & 1 or f.rows[z] >> y & 1):
                    return False, (x, y, z)
    return True, None


def _r1(f):
    for x in range(f.n_worlds):
        for y in atom_indices(f.rows[x]):
            if y == x:
                continue
            for z in atom_indices(f.rows[x]):
                if not f.rows[z] >> y & 1:
                    return False, (x, y, z)
    return True, None


def _directed(f):
    for x in range(f.n_worlds):
        for y in range(f.n_worlds):
            if not f.rows[x] & f.rows[y]:
                return False, (x, y)
    return True, None


def _quasiorder(f):
    ok, witness = _reflexive(f)
    if not ok:
        return False, witness
    return _transitive(f)


def _m_condition(f):
    # every world sees a world whose only successor is itself
    for x in range(f.n_worlds):
        if not any(f.rows[y] == 1 << y for y in atom_indices(f.rows[x])):
            return False, (x,)
    return True, None


def _grz(f):
    # finite reading: no proper cluster, i.e. the quasiorder is a partial order
    for mask in _cluster_masks(f):
        if mask & (mask - 1):
            members = list(atom_indices(mask))
            return False, (members[0], members[1])
    return True, None


def _dum(f):
    # for every proper cluster D, the set of worlds that can reach D is
    # closed under taking successors (on linear frames this is exactly
    # "every cluster except the last one is simple")
    for mask in _cluster_masks(f):
        if not mask & (mask - 1):
            continue
        seers = 0
        for w in range(f.n_worlds):
            if f.rows[w] & mask:
                seers |= 1 << w
        for w in atom_indices(seers):
            escape = f.rows[w] & ~seers
            if escape:
                return False, (w, min(atom_indices(escape)), min(atom_indices(mask)))
    return True, None


_CONDITIONS = {
    "serial": _serial,
    "reflexive": _reflexive,
    "transitive": _transitive,
    "symmetric": _symmetric,
    "b2": _b2,
    "convergent": _convergent,
    "dot3": _dot3,
    "r1": _r1,
    "directed": _directed,
    "quasiorder": _quasiorder,
    "m": _m_condition,
    "grz": _grz,
    "dum": _dum,
}

_CONDITION_ALIASES = {
    "g2": "convergent", ".2": "convergent", "g": "convergent",
    "h3": "dot3", ".3": "dot3", "h": "dot3",
    ".1": "m",
}

_NEEDS_QUASIORDER = {"m", "grz", "dum"}

CONDITION_NAMES = tuple(_CONDITIONS)


def frame_condition(frame: Frame, name: str):
    """Evaluate a named first-order condition exhaustively.

    Returns ``(holds, witness)`` where the witness is a tuple of worlds
    exhibiting the first failure in scan order, or None.  The m, grz
    and dum conditions only make sense on quasiorders and raise
    PreconditionError otherwise.
    """
    key = name.strip().lower()
    key = _CONDITION_ALIASES.get(key, key)
    if key not in _CONDITIONS:
        raise KeyError(
            f"unknown frame condition {name!r}; known: {', '.join(CONDITION_NAMES)}"
        )
    if key in _NEEDS_QUASIORDER:
        ok, witness = _quasiorder(frame)
        if not ok:
            raise PreconditionError(
                f"condition {key!r} requires a quasiorder, witness {witness}"
            )
    return _CONDITIONS[key](frame)


# --- Extremal relations of depth two ---


def extremal_rows(kind: str, u_mask: int, v_mask: int, n_worlds: int) -> tuple[int, ...]:
    """Relation rows for an extremal kind over levels U (lower), V (upper)."""
    if kind not in EXTREMAL_KINDS:
        raise KeyError(f"unknown extremal kind {kind!r}")
    full = u_mask | v_mask
    rows = []
    for x in range(n_worlds):
        in_u = bool(u_mask >> x & 1)
        if kind == "ii":
            row = (1 << x) | (v_mask if in_u else 0)
        elif kind == "iu":
            row = (1 << x) | v_mask
        elif kind == "ui":
            row = full if in_u else 1 << x
        else:  # uu
            row = full if in_u else v_mask
        rows.append(row)
    return tuple(rows)


def make_extremal(kind: str, u_size: int, v_size: int) -> Frame:
    """Frame on u_size + v_size worlds carrying the kind's relation."""
    if kind not in EXTREMAL_KINDS:
        raise KeyError(f"unknown extremal kind {kind!r}")
    if u_size < 1 or v_size < 1:
        raise DomainError("both levels need at least one world")
    n = u_size + v_size
    if n > MAX_WORLDS:
        raise SizeError(f"{n} worlds exceeds the cap of {MAX_WORLDS}")
    u_mask = (1 << u_size) - 1
    v_mask = ((1 << n) - 1) ^ u_mask
    return Frame(n, extremal_rows(kind, u_mask, v_mask, n))


def classify_extremal(frame: Frame) -> frozenset[tuple[str, int, int]]:
    """All extremal kinds whose relation equals the frame's, with levels.

    Returns (kind, u_mask, v_mask) triples; empty when the frame is not
    a quasiorder of depth exactly two.  Kinds whose defining relations
    coincide on the given level sizes are all reported.
    """
    ok, _ = frame_condition(frame, "quasiorder")
    if not ok:
        return frozenset()
    poset = cluster_poset(frame)
    if poset.depth != 2:
        return frozenset()
    u_mask = poset.level_worlds(1)
    v_mask = poset.level_worlds(2)
    matches = {
        (kind, u_mask, v_mask)
        for kind in EXTREMAL_KINDS
        if extremal_rows(kind, u_mask, v_mask, frame.n_worlds) == frame.rows
    }
    return frozenset(matches)


# --- Isomorphism and enumeration ---


def _apply_permutation(frame_rows: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(frame_rows)
    rows = [0] * n
    for x in range(n):
        row = 0
        mask = frame_rows[x]
        for y in atom_indices(mask):
            row |= 1 << perm[y]
        rows[perm[x]] = row
    return tuple(rows)


def canonical_form(frame: Frame) -> Frame:
    """Lexicographically least relabeling over all world permutations.

    Two frames are isomorphic exactly when their canonical forms agree.
    """
    n = frame.n_worlds
    if n > MAX_CANONICAL_WORLDS:
        raise SizeError(
            f"canonical form is bounded at {MAX_CANONICAL_WORLDS} worlds, got {n}"
        )
    best = min(_apply_permutation(frame.rows, p) for p in permutations(range(n)))
    return Frame(n, best)


def _set_partitions(items: tuple[int, ...]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


@lru_cache(maxsize=None)
def _labeled_posets(k: int) -> tuple[tuple[int, ...], ...]:
    """All partial orders on k labeled points, as up-set bit-rows."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    out = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        rows = [1 << i for i in range(k)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rows[i] |= 1 << j
            elif c == 2:
                rows[j] |= 1 << i
        if all(
            not rows[y] & ~rows[x]
            for x in range(k)
            for y in atom_indices(rows[x])
        ):
            out.append(tuple(rows))
    return tuple(out)


def _quasiorders_up_to_iso(n: int) -> list[Frame]:
    seen = set()
    out = []
    for part in _set_partitions(tuple(range(n))):
        blocks = [sum(1 << w for w in b) for b in part]
        k = len(blocks)
        block_of = {}
        for idx, b in enumerate(part):
            for w in b:
                block_of[w] = idx
        for poset_rows in _labeled_posets(k):
            rows = tuple(
                sum(blocks[j] for j in atom_indices(poset_rows[block_of[x]]))
                for x in range(n)
            )
            canon = canonical_form(Frame(n, rows)).rows
            if canon not in seen:
                seen.add(canon)
                out.append(Frame(n, canon))
    out.sort(key=lambda f: f.rows)
    return out


def _all_frames_up_to_iso(n: int) -> list[Frame]:
    # walk relation masks in ascending order; the first member of each
    # permutation orbit is taken as representative and its orbit marked
    perms = list(permutations(range(n)))
    bit_maps = []
    for p in perms:
        bit_maps.append([p[x] * n + p[y] for x in range(n) for y in range(n)])
    total = 1 << (n * n)
    visited = bytearray(total)
    out = []
    for m in range(total):
        if visited[m]:
            continue
        rows = tuple((m >> (x * n)) & ((1 << n) - 1) for x in range(n))
        out.append(Frame(n, rows))
        for bm in bit_maps:
            image = 0
            rest = m
            while rest:
                low = rest & -rest
                image |= 1 << bm[low.bit_length() - 1]
                rest ^= low
            visited[image] = 1
    return out


def enumerate_frames(n_worlds: int, *, quasiorder: bool = False,
                     max_depth: int | None = None) -> list[Frame]:
    """All frames on n_worlds worlds up to isomorphism, deterministically.

    With ``quasiorder=True`` only reflexive-transitive frames are
    produced (bounded at 5 worlds) and ``max_depth`` filters on cluster
    depth; without it every relation is enumerated (bounded at 4
    worlds).
    """
    if n_worlds < 1:
        raise DomainError("world count must be positive")
    if max_depth is not None and not quasiorder:
        raise DomainError("max_depth filtering requires quasiorder enumeration")
    if quasiorder:
        if n_worlds > MAX_ENUM_QUASIORDER:
            raise SizeError(
                f"quasiorder enumeration is bounded at {MAX_ENUM_QUASIORDER} worlds"
            )
        frames = _quasiorders_up_to_iso(n_worlds)
        if max_depth is not None:
            frames = [f for f in frames if cluster_poset(f).depth <= max_depth]
        return frames
    if n_worlds > MAX_ENUM_GENERAL:
        raise SizeError(
            f"general frame enumeration is bounded at {MAX_ENUM_GENERAL} worlds"
        )
    return _all_frames_up_to_iso(n_worlds)
