"""Canonical labelings of planar order types.

Pipeline: convex layers -> keypoints -> spiral labelings -> radial blocks
(USSR) -> level-numbered blocks (DDR) compressed through a trie -> knob
positions (KGB) -> lexicographic minimum over keypoint labelings.

Spiral labels are 1-based positions in a spiral labeling; everything else
uses the 0-based labels of the input oracle.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from . import tokens as T
from .layers2d import CollinearError, ConvexLayers, between, convex_layers, s_candidates, s_of
from .predicates import (
    DegenerateError,
    Minor,
    OrderTypeError,
    Orientation,
    OrientationOracle,
    PointOracle,
    View,
    find_duplicate_pair,
    make_view,
    sort_parity,
)

__all__ = [
    "SpiralLabeling",
    "RadialBlock",
    "Ussr",
    "Ddr",
    "Kgb",
    "BlockTrie",
    "CompressedDdr",
    "CanonicalForm",
    "IsoResult",
    "spiral_labeling",
    "build_ussr",
    "ussr_to_ddr",
    "compress_ddr",
    "build_kgb",
    "reconstruct_ussr",
    "decode_orientation",
    "canonical_form_2d",
    "isomorphic_2d",
    "verify_witness",
    "parse_canonical_2d",
    "decode_canonical_2d",
]


@dataclass(frozen=True)
class SpiralLabeling:
    order: Tuple[int, ...]  # spiral position (0-based) -> label
    knobs: Tuple[int, ...]  # first spiral vertex on each layer
    origin: int

    @property
    def spiral_label(self) -> Dict[int, int]:
        """label -> 1-based spiral label."""
        return {v: i + 1 for i, v in enumerate(self.order)}


def _walk(cyc, start: int) -> List[int]:
    if cyc.collinear:
        if start == cyc[0]:
            return list(cyc)
        if start == cyc[-1]:
            return list(reversed(cyc))
        raise OrderTypeError(f"knob {start} is not an endpoint of collinear layer {cyc}")
    i = cyc.index(start)
    return list(cyc[i:]) + list(cyc[:i])


def spiral_labeling(layers: ConvexLayers, p: int) -> SpiralLabeling:
    if layers.layer_of[p] != 0:
        raise OrderTypeError(f"spiral origin {p} is not on the convex hull")
    order: List[int] = []
    knobs: List[int] = []
    start = p
    for j, cyc in enumerate(layers.layers):
        knobs.append(start)
        walk = _walk(cyc, start)
        order.extend(walk)
        if j + 1 < layers.m:
            start = layers.tangent[walk[-1]]
    return SpiralLabeling(tuple(order), tuple(knobs), p)


@dataclass
class RadialBlock:
    """Radial order of a point set A around ``center``, started at ``s``."""

    center: int
    s: int
    a0: List[Tuple[int, int]]  # (sign, label)
    groups: List[List[Tuple[int, int]]]
    _pos: Optional[Dict[int, int]] = field(default=None, repr=False)

    def points(self) -> List[int]:
        return [v for _, v in self.a0] + [v for g in self.groups for _, v in g]

    @property
    def position(self) -> Dict[int, int]:
        if self._pos is None:
            self._pos = {v: i for i, v in enumerate(self.points())}
        return self._pos

    def tokens(self, f) -> List[int]:
        return T.block_tokens([(s, f[v]) for s, v in self.a0],
                              [[(s, f[v]) for s, v in g] for g in self.groups])


def _angle_hint(o: OrientationOracle, x: int, sp: int, sig: Dict[int, int]):
    cx, cs = o.coords(x), o.coords(sp)
    if cx is None or cs is None:
        return None
    try:
        dx, dy = float(cs[0] - cx[0]), float(cs[1] - cx[1])
    except OverflowError:
        return None

    def key(q):
        qx, qy = o.coords(q)
        vx, vy = float(qx - cx[0]) * sig[q], float(qy - cx[1]) * sig[q]
        return math.atan2(dx * vy - dy * vx, dx * vx + dy * vy)
    return key


def radial_block(o: OrientationOracle, x: int, sp: int, A: Sequence[int]) -> RadialBlock:
    a0: List[int] = []
    rest: List[int] = []
    sig: Dict[int, int] = {}
    oxs = o.pivot(x)
    for q in A:
        v = 0 if q == sp else oxs(sp, q)
        if v == 0:
            a0.append(q)
        else:
            sig[q] = v
            rest.append(q)
    if not rest:
        raise DegenerateError(f"all points collinear with {x} and {sp}")
    off = rest[0]
    ref = o(off, x, sp)
    a0.sort(key=cmp_to_key(lambda a, b: 0 if a == b else (-1 if o(off, a, b) == ref else 1)))
    a0e = [(1 if q == sp or o(off, q, x) != ref else -1, q) for q in a0]

    ox = oxs

    def cmp(q, r):
        v = ox(q, r)
        return v if sig[q] != sig[r] else -v

    hint = _angle_hint(o, x, sp, sig)
    if hint is not None:
        # approximate presort so the exact sort below runs in near-linear time
        rest.sort(key=hint)
    rest.sort(key=cmp_to_key(cmp))

    def gcmp(a, b):
        if sig[a] != sig[b]:
            return -1 if sig[a] < 0 else 1
        if sig[a] > 0:
            return -1 if between(o, x, a, b, sp) else 1
        return -1 if between(o, x, b, a, sp) else 1

    groups: List[List[Tuple[int, int]]] = []
    cur = [rest[0]]
    for q in rest[1:]:
        if cmp(cur[-1], q) == 0:
            cur.append(q)
        else:
            groups.append(cur)
            cur = [q]
    groups.append(cur)
    out = []
    for g in groups:
        if len(g) > 1:
            g.sort(key=cmp_to_key(gcmp))
        out.append([(sig[q], q) for q in g])
    return RadialBlock(x, sp, a0e, out)


class _BlockSource:
    """Per-point radial blocks, shared by every keypoint labeling.

    Block contents only depend on the labeling for the East Block and for
    interior points of a collinear innermost layer, whose start direction
    has two order-type-equivalent choices.  The choice with the smaller
    level-numbered block wins; on a tie it is resolved per labeling by the
    smaller labelled block.
    """

    def __init__(self, o: OrientationOracle, layers: ConvexLayers):
        self.o = o
        self.layers = layers
        self.level = [j + 1 for j in layers.layer_of]
        prefix: List[List[int]] = []
        acc: List[int] = []
        for c in layers.layers:
            acc = acc + list(c)
            prefix.append(acc)
        self.prefix = prefix
        self.east_point = layers.layers[-1][0] if layers.east else None
        self.options: Dict[int, List[RadialBlock]] = {}
        self._ddr: Dict[int, List[int]] = {}
        for x in range(layers.n):
            if x == self.east_point:
                continue
            self.options[x] = self._candidates(x)

    def area(self, x: int) -> List[int]:
        return [q for q in self.prefix[self.layers.layer_of[x]] if q != x]

    def _candidates(self, x: int) -> List[RadialBlock]:
        L = self.layers
        if L.layer_of[x] == 0:
            return [radial_block(self.o, x, L.pred(x), self.area(x))]
        ss = [s_of(self.o, L, x, sc) for sc in s_candidates(L, x)]
        blocks = [radial_block(self.o, x, s, self.area(x)) for s in dict.fromkeys(ss)]
        if len(blocks) == 1:
            return blocks
        ddr = [b.tokens(self.level) for b in blocks]
        best = min(ddr)
        return [b for b, t in zip(blocks, ddr) if t == best]

    def ddr_tokens(self, x: int) -> List[int]:
        if x not in self._ddr:
            self._ddr[x] = self.options[x][0].tokens(self.level)
        return self._ddr[x]

    def east_block(self, origin: int) -> RadialBlock:
        x = self.east_point
        return radial_block(self.o, x, origin, self.area(x))

    def blocks_for(self, rho: SpiralLabeling) -> List[RadialBlock]:
        lab = rho.spiral_label
        out = []
        for x in rho.order:
            if x == self.east_point:
                out.append(self.east_block(rho.origin))
                continue
            opts = self.options[x]
            if len(opts) == 1:
                out.append(opts[0])
            else:
                out.append(min(opts, key=lambda b: b.tokens(lab)))
        return out


@dataclass
class Ussr:
    blocks: List[List[int]]  # token blocks with spiral labels
    east: bool
    labeling: Optional[SpiralLabeling] = None
    radial: Optional[List[RadialBlock]] = None

    def tokens(self) -> List[int]:
        return [t for b in self.blocks for t in b + [T.SEMI]]

    def __eq__(self, other):
        return isinstance(other, Ussr) and self.blocks == other.blocks and self.east == other.east


@dataclass
class Ddr:
    blocks: List[List[int]]  # token blocks with level numbers
    east: bool

    def tokens(self) -> List[int]:
        return [t for b in self.blocks for t in b + [T.SEMI]]


@dataclass
class Kgb:
    """Per block, one entry per covered layer: (Num,), (STAR, Num) or (STAR,)."""

    blocks: List[List[Tuple[int, ...]]]

    def tokens(self) -> List[int]:
        out: List[int] = []
        for blk in self.blocks:
            for k, e in enumerate(blk):
                if k:
                    out.append(T.COMMA)
                out.extend(e)
            out.append(T.SEMI)
        return out


def build_ussr(o: OrientationOracle, layers: ConvexLayers, rho: SpiralLabeling,
               _source: Optional[_BlockSource] = None) -> Ussr:
    src = _source or _BlockSource(o, layers)
    if sorted(rho.order) != list(range(layers.n)):
        raise OrderTypeError("labeling does not match the layers")
    radial = src.blocks_for(rho)
    lab = rho.spiral_label
    return Ussr([b.tokens(lab) for b in radial], layers.east, rho, radial)


def ussr_to_ddr(u: Ussr, layers: ConvexLayers) -> Ddr:
    if u.labeling is None:
        raise OrderTypeError("USSR carries no labeling")
    level = {i + 1: layers.layer_of[v] + 1 for i, v in enumerate(u.labeling.order)}
    blocks = [[level[T.value(t)] + T.NUM if T.is_num(t) else t for t in b] for b in u.blocks]
    return Ddr(blocks, u.east)


class BlockTrie:
    """Trie over token blocks; in-order traversal gives lexicographic ranks."""

    _END = -1  # terminator sorts before every token

    def __init__(self, blocks: Sequence[Sequence[int]] = ()):
        self.root: Dict[int, dict] = {}
        for b in blocks:
            self.insert(b)

    def insert(self, block: Sequence[int]) -> None:
        # path-compressed: a block hangs off the first node where it is alone
        block = tuple(block)
        node, i = self.root, 0
        while True:
            t = block[i] if i < len(block) else self._END
            child = node.get(t)
            if child is None or t == self._END:
                node[t] = block
                return
            if isinstance(child, tuple):
                if child == block:
                    return
                split: Dict[int, object] = {}
                split[child[i + 1] if i + 1 < len(child) else self._END] = child
                node[t] = split
                child = split
            node, i = child, i + 1

    def sorted_blocks(self) -> List[Tuple[int, ...]]:
        out: List[Tuple[int, ...]] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, tuple):
                out.append(node)
                continue
            stack.extend(node[t] for t in sorted(node, reverse=True))
        return out

    def letters(self) -> Dict[Tuple[int, ...], int]:
        return {b: i for i, b in enumerate(self.sorted_blocks())}


@dataclass(frozen=True)
class CompressedDdr:
    letters: Tuple[int, ...]
    east: Tuple[int, ...]


def compress_ddr(d: Ddr) -> Tuple[BlockTrie, CompressedDdr]:
    body = d.blocks[:-1] if d.east else d.blocks
    trie = BlockTrie(body)
    rank = trie.letters()
    east = tuple(d.blocks[-1]) if d.east else ()
    return trie, CompressedDdr(tuple(rank[tuple(b)] for b in body), east)


def _kgb_block(radial: RadialBlock, x: int, rho: SpiralLabeling, layers: ConvexLayers,
               walk_next: Dict[int, int]) -> List[Tuple[int, ...]]:
    pos = radial.position
    entries: List[Tuple[int, ...]] = []
    for t in range(layers.layer_of[x] + 1):
        knob = rho.knobs[t]
        if len(layers.layers[t]) == 1:
            entries.append((T.STAR,))
        elif knob == x:
            entries.append((T.STAR, T.num(pos[walk_next[x]])))
        else:
            entries.append((T.num(pos[knob]),))
    return entries


def _walk_next(rho: SpiralLabeling, layers: ConvexLayers) -> Dict[int, int]:
    nxt: Dict[int, int] = {}
    i = 0
    for c in layers.layers:
        seg = rho.order[i:i + len(c)]
        for a, b in zip(seg, seg[1:]):
            nxt[a] = b
        i += len(c)
    return nxt


def build_kgb(u: Ussr, rho: SpiralLabeling, layers: ConvexLayers) -> Kgb:
    if u.radial is None:
        raise OrderTypeError("USSR lacks radial blocks; build it with build_ussr")
    nxt = _walk_next(rho, layers)
    return Kgb([_kgb_block(b, x, rho, layers, nxt) for b, x in zip(u.radial, rho.order)])


def _entries(block: Sequence[int]) -> List[Tuple[int, int, int]]:
    a0, groups = T.parse_block(block)
    out = [(s, v, -1) for s, v in a0]
    for gi, g in enumerate(groups):
        out.extend((s, v, gi) for s, v in g)
    return out


def reconstruct_ussr(d: Ddr, g: Kgb, layers: ConvexLayers) -> Ussr:
    """Rebuild spiral labels from level numbers and knob positions."""
    sizes = layers.sizes
    base = [1 + sum(sizes[:t]) for t in range(len(sizes))]
    pos_layer = [t for t, s in enumerate(sizes) for _ in range(s)]
    if len(d.blocks) != len(pos_layer) or len(g.blocks) != len(pos_layer):
        raise OrderTypeError("DDR/KGB block counts do not match the layers")
    P = -1  # marker for the block's own point
    out: List[List[int]] = []
    for i, (dblock, kblock) in enumerate(zip(d.blocks, g.blocks)):
        own_label = i + 1
        j = pos_layer[i]
        ents = _entries(dblock)
        labels: List[Optional[int]] = [None] * len(ents)
        if len(kblock) != j + 1:
            raise OrderTypeError(f"block {own_label}: expected {j + 1} KGB entries")
        for t in range(j + 1):
            occ = [k for k, e in enumerate(ents) if e[1] == t + 1]
            kent = kblock[t]
            size = sizes[t]
            if size == 1:
                if occ or kent != (T.STAR,):
                    raise OrderTypeError(f"block {own_label}: bad singleton layer entry")
                continue
            minus = [k for k in occ if ents[k][0] < 0]
            plus = [k for k in occ if ents[k][0] > 0]

            def knob_index(cyc):
                if kent[0] == T.STAR:
                    if len(kent) != 2 or t != j:
                        raise OrderTypeError(f"block {own_label}: misplaced '*'")
                    return cyc.index(P)
                pos = T.value(kent[0])
                if pos >= len(ents) or pos not in cyc:
                    raise OrderTypeError(f"block {own_label}: knob position {pos} out of range")
                return cyc.index(pos)

            if t < j:
                cyc = plus + minus
                ki = knob_index(cyc)
                seq = [cyc[(ki + r) % len(cyc)] for r in range(len(cyc))]
            elif layers.layers[t].collinear:
                line = minus + [P] + plus
                ki = knob_index(line)
                if ki == 0:
                    seq = line
                elif ki == len(line) - 1:
                    seq = line[::-1]
                else:
                    raise OrderTypeError(f"block {own_label}: knob inside a collinear layer")
            else:
                path = minus + plus
                runs: List[List[int]] = []
                for k in path:
                    key = (ents[k][2], ents[k][0])
                    if runs and (ents[runs[-1][-1]][2], ents[runs[-1][-1]][0]) == key:
                        runs[-1].append(k)
                    else:
                        runs.append([k])
                # points on the two hull edges at the block's own point are
                # listed away from/towards it depending on their sign
                if ents[runs[0][0]][0] < 0:
                    runs[0].reverse()
                if ents[runs[-1][0]][0] > 0:
                    runs[-1].reverse()
                cyc = [k for r in runs for k in r] + [P]
                ki = knob_index(cyc)
                seq = [cyc[(ki + r) % len(cyc)] for r in range(len(cyc))]
            if len(seq) != size - (1 if t == j else 0) + (1 if P in seq else 0):
                raise OrderTypeError(f"block {own_label}: layer {t + 1} occurrence count mismatch")
            for r, k in enumerate(seq):
                if k == P:
                    if base[t] + r != own_label:
                        raise OrderTypeError(f"block {own_label}: inconsistent knob data")
                else:
                    labels[k] = base[t] + r
        if any(v is None for v in labels):
            raise OrderTypeError(f"block {own_label}: unassigned entries")
        a0, groups = T.parse_block(dblock)
        it = iter(labels)
        blk = T.block_tokens([(s, next(it)) for s, _ in a0],
                             [[(s, next(it)) for s, _ in grp] for grp in groups])
        out.append(blk)
    return Ussr(out, d.east)


def decode_orientation(u: Ussr, layers: Optional[ConvexLayers], t: Sequence[int]) -> Orientation:
    """Orientation of a triple of spiral labels, read off the block of the largest label."""
    n = len(u.blocks)
    if len(t) != 3 or len(set(t)) != 3:
        raise OrderTypeError(f"need three distinct labels, got {t}")
    for v in t:
        if not 1 <= v <= n:
            raise OrderTypeError(f"spiral label {v} out of range [1, {n}]")
    i = max(t)
    q, r = [v for v in t if v != i]
    a0, groups = T.parse_block(u.blocks[i - 1])
    info: Dict[int, Tuple[bool, int, int, int]] = {}
    for k, (s, v) in enumerate(a0):
        info[v] = (True, s, k, -1)
    k = 0
    for gi, grp in enumerate(groups):
        for s, v in grp:
            info[v] = (False, s, k, gi)
            k += 1
    iq, ir = info[q], info[r]
    if iq[0] and ir[0]:
        val = 0
    elif iq[0]:
        val = iq[1] * ir[1]
    elif ir[0]:
        val = -ir[1] * iq[1]
    elif iq[3] == ir[3]:
        val = 0
    else:
        gamma = 1 if iq[1] == ir[1] else -1
        val = gamma * (1 if iq[2] < ir[2] else -1)
    _, p1 = sort_parity(tuple(t))
    _, p2 = sort_parity((i, q, r))
    return Orientation(p1 * p2 * val)


@dataclass
class CanonicalForm:
    canonical_string: str
    psi: List[SpiralLabeling]
    automorphisms: List[Tuple[int, ...]]
    n: int
    layers: Optional[ConvexLayers] = None
    group_order: int = 0

    def __post_init__(self):
        if not self.group_order:
            self.group_order = len(self.automorphisms)

    @property
    def labeling(self) -> Tuple[int, ...]:
        """One canonical labeling: canonical position -> input label."""
        return self.psi[0].order


def _automorphisms(psi: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    star = psi[0]
    inv = {v: i for i, v in enumerate(star)}
    return sorted(tuple(rho[inv[x]] for x in range(len(star))) for rho in psi)


def _is_realizable(o: OrientationOracle) -> bool:
    while isinstance(o, View):
        o = o.base
    return isinstance(o, (PointOracle, Minor))


def _degenerate_form(o: OrientationOracle, kind: str) -> CanonicalForm:
    n = o.n
    ident = tuple(range(n))
    group = math.factorial(n)
    if n <= 8:
        perms = [tuple(p) for p in itertools.permutations(range(n))]
    else:
        perms = [ident]
    psi = [SpiralLabeling(p, (), p[0] if p else -1) for p in perms]
    return CanonicalForm(f"{kind} {n}", psi, perms, n, None, group)


def canonical_form_2d(o: OrientationOracle) -> CanonicalForm:
    if o.dim != 2:
        raise OrderTypeError(f"canonical_form_2d needs rank 3, got dim={o.dim}")
    n = o.n
    if n < 3:
        return _degenerate_form(o, "TRIVIAL")
    if not _is_realizable(o) and n <= 64:
        dup = find_duplicate_pair(o)
        if dup is not None:
            raise OrderTypeError(f"labels {dup[0]} and {dup[1]} are duplicates")
    try:
        layers = convex_layers(o)
    except CollinearError:
        return _degenerate_form(o, "COLLINEAR")
    src = _BlockSource(o, layers)
    level = src.level
    body_points = [x for x in range(n) if x != src.east_point]
    trie = BlockTrie(src.ddr_tokens(x) for x in body_points)
    rank = trie.letters()
    letter = {x: rank[tuple(src.ddr_tokens(x))] for x in body_points}
    nbody = n - 1 if layers.east else n

    best_key = None
    best: List[Tuple[SpiralLabeling, List[RadialBlock]]] = []
    for p in layers.keypoints:
        rho = spiral_labeling(layers, p)
        radial = src.blocks_for(rho)
        letters = tuple(letter[x] for x in rho.order[:nbody])
        east = tuple(radial[-1].tokens(level)) if layers.east else ()
        nxt = _walk_next(rho, layers)
        kgb = Kgb([_kgb_block(b, x, rho, layers, nxt) for b, x in zip(radial, rho.order)])
        key = (letters, east, tuple(kgb.tokens()))
        if best_key is None or key < best_key:
            best_key, best = key, [(rho, radial)]
        elif key == best_key:
            best.append((rho, radial))

    rho, radial = best[0]
    nxt = _walk_next(rho, layers)
    kgb = Kgb([_kgb_block(b, x, rho, layers, nxt) for b, x in zip(radial, rho.order)])
    ddr = [t for b in radial for t in b.tokens(level) + [T.SEMI]]
    text = f"OT2 n={n} m={layers.m} | {T.render(ddr)} # {T.render(kgb.tokens())}"
    psi = [r for r, _ in best]
    return CanonicalForm(text, psi, _automorphisms([r.order for r in psi]), n, layers)


@dataclass
class IsoResult:
    same: bool
    witness: Optional[Tuple[int, ...]] = None
    reflected: bool = False

    def __bool__(self) -> bool:
        return self.same


def verify_witness(a: OrientationOracle, b: OrientationOracle, pi: Sequence[int],
                   negate: bool = False, exhaustive_limit: int = 10,
                   samples: int = 1000, seed: int = 0) -> bool:
    """Check a(t) == (+-) b(pi(t)) on all tuples (small n) or on random ones."""
    n, r = a.n, a.rank
    s = -1 if negate else 1
    if n <= exhaustive_limit:
        tuples = itertools.combinations(range(n), r)
    else:
        rng = random.Random(seed)
        tuples = (tuple(rng.sample(range(n), r)) for _ in range(samples))
    return all(a(*t) == s * b(*[pi[x] for x in t]) for t in tuples)


def _witness(fa: CanonicalForm, fb: CanonicalForm) -> Tuple[int, ...]:
    ra, rb = fa.labeling, fb.labeling
    inv = {v: i for i, v in enumerate(ra)}
    return tuple(rb[inv[x]] for x in range(len(ra)))


def isomorphic_2d(a: OrientationOracle, b: OrientationOracle,
                  allow_reflection: bool = False) -> IsoResult:
    if a.n != b.n or a.dim != b.dim:
        return IsoResult(False)
    fa = canonical_form_2d(a)
    fb = canonical_form_2d(b)
    candidates = [(fb, False)]
    if allow_reflection:
        candidates.append((canonical_form_2d(make_view(b, None, True)), True))
    for f, neg in candidates:
        if f.canonical_string != fa.canonical_string:
            continue
        pi = _witness(fa, f)
        if not verify_witness(a, b, pi, negate=neg):
            raise AssertionError("canonical strings agree but the witness fails verification")
        return IsoResult(True, pi, neg)
    return IsoResult(False)


def parse_canonical_2d(text: str) -> Tuple[Ddr, Kgb, ConvexLayers]:
    """Split an ``OT2`` canonical string into DDR, KGB and a layer skeleton.

    The skeleton carries the layer sizes (read off the KGB block lengths)
    and the collinear flag of the innermost layer, which is all
    :func:`reconstruct_ussr` needs.
    """
    head, _, body = text.partition(" | ")
    words = head.split()
    if len(words) != 3 or words[0] != "OT2":
        raise OrderTypeError(f"not an OT2 canonical string: {head!r}")
    n = int(words[1].removeprefix("n="))
    m = int(words[2].removeprefix("m="))
    ddr_text, sep, kgb_text = body.partition(" # ")
    if not sep:
        raise OrderTypeError("missing '#' separator")

    def split_blocks(toks):
        blocks, cur = [], []
        for t in toks:
            if t == T.SEMI:
                blocks.append(cur)
                cur = []
            else:
                cur.append(t)
        if cur:
            raise OrderTypeError("unterminated block")
        return blocks

    dblocks = split_blocks(T.parse(ddr_text))
    kblocks = []
    for blk in split_blocks(T.parse(kgb_text)):
        entries, cur = [], []
        for t in blk:
            if t == T.COMMA:
                entries.append(tuple(cur))
                cur = []
            else:
                cur.append(t)
        entries.append(tuple(cur))
        kblocks.append(entries)
    if len(dblocks) != n or len(kblocks) != n:
        raise OrderTypeError(f"expected {n} blocks")
    layer_of = [len(e) - 1 for e in kblocks]
    sizes = [layer_of.count(j) for j in range(m)]
    cycles: List = []
    base = 0
    for j, s in enumerate(sizes):
        cycles.append(_Skeleton(range(base, base + s)))
        base += s
    last = cycles[-1]
    if len(last) == 2:
        last.collinear = True
    elif len(last) > 2:
        # a chain has every other point of its layer on one line through it
        ents = _entries(dblocks[sum(sizes[:-1])])
        last.collinear = len({e[2] for e in ents if e[1] == m}) == 1
    layers = ConvexLayers(cycles, layer_of, {}, 0, [])
    layers.jstar = min((s, j) for j, s in enumerate(sizes) if s >= 2)[1]
    east = sizes[-1] == 1 and m > 1
    return Ddr(dblocks, east), Kgb(kblocks), layers


class _Skeleton(tuple):
    collinear: bool = False


def decode_canonical_2d(text: str, t: Sequence[int]) -> Orientation:
    """Orientation of canonical labels ``t`` (1-based) encoded by a canonical string."""
    if text.startswith("COLLINEAR"):
        return Orientation.ZERO
    if text.startswith("TRIVIAL"):
        raise OrderTypeError("a trivial order type has no triples")
    d, g, layers = parse_canonical_2d(text)
    return decode_orientation(reconstruct_ussr(d, g, layers), layers, t)
