"""Span-one linked partition ideal automaton over overpartition blocks.

An ideal is given by a finite block alphabet (first block empty), a linking
map saying which blocks may follow which, and a modulus T at least the largest
block part.  Its language is every overpartition assembled by placing a chain
of linked blocks at offsets 0, T, 2T, ...; chains are normalized to end in a
nonempty block, and the empty chain yields the empty overpartition.

The weight of a block is the quinvariate statistic monomial
x^length y1^r2mod4 y2^r0mod4 z^over q^size.  G_k collects the weights of all
language members whose offset-0 block is block k; the vector of G_k satisfies
G = W . A . G(x -> x q^T) with W the diagonal of block weights and A the 0/1
linking incidence, which is how G_series computes them.  F_k = sum of G_j over
the linking set of block k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .partitions import EMPTY, Overpartition, stats, weight_monomial
from .series import Mono, QUIN_VARS, Series, VarSet


class LpiError(ValueError):
    pass


class NotInLanguage(LpiError):
    """The overpartition is not generated by the ideal."""


class UnknownBlock(NotInLanguage):
    """A shifted block does not belong to the alphabet."""


class LinkingViolation(NotInLanguage):
    """Consecutive chain blocks are not linked."""


@dataclass(frozen=True)
class LpiSpec:
    blocks: tuple[Overpartition, ...]
    linking: tuple[frozenset[int], ...]
    modulus: int

    def __post_init__(self) -> None:
        k = len(self.blocks)
        if k == 0 or self.blocks[0] != EMPTY:
            raise LpiError("first block must be the empty overpartition")
        if len(self.linking) != k:
            raise LpiError("one linking set per block required")
        everything = frozenset(range(k))
        if self.linking[0] != everything:
            raise LpiError("the empty block must link to every block")
        for i, link in enumerate(self.linking):
            if not link <= everything:
                raise LpiError(f"linking set {i} mentions unknown blocks")
            if 0 not in link:
                raise LpiError(f"linking set {i} must contain the empty block")
        largest = max((v for b in self.blocks for v, _ in b.parts), default=0)
        if self.modulus < max(largest, 1):
            raise LpiError(f"modulus {self.modulus} smaller than largest block part {largest}")
        if len(set(self.blocks)) != k:
            raise LpiError("blocks must be distinct")

    @property
    def size(self) -> int:
        return len(self.blocks)

    def weights(self, vars: VarSet = QUIN_VARS) -> tuple[Mono, ...]:
        return tuple(weight_monomial(vars, stats(b)) for b in self.blocks)

    def to_json(self) -> str:
        doc = {
            "blocks": [b.to_json() for b in self.blocks],
            "linking": [sorted(i + 1 for i in link) for link in self.linking],
            "modulus": self.modulus,
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "LpiSpec":
        doc = json.loads(text)
        try:
            blocks = tuple(
                Overpartition(tuple((p["value"], bool(p["overlined"])) for p in block))
                for block in doc["blocks"]
            )
            linking = tuple(
                frozenset(i - 1 for i in link) for link in doc["linking"]
            )
            modulus = int(doc["modulus"])
        except (KeyError, TypeError) as exc:
            raise LpiError(f"malformed ideal document: {exc}") from exc
        return cls(blocks, linking, modulus)


def gap4_ideal() -> LpiSpec:
    """The seven-block ideal whose language is the gap-4 overpartition family.

    Blocks: empty, 1, overlined 1, 2, 3, overlined 3, 4 at modulus 4.  A block
    with a part congruent to 1 forbids a following overlined 1; blocks 3 and
    overlined 3 admit only empty, 3, or 4 next; block 4 forces a gap.
    """
    b = (
        EMPTY,
        Overpartition.of(1),
        Overpartition.of((1, True)),
        Overpartition.of(2),
        Overpartition.of(3),
        Overpartition.of((3, True)),
        Overpartition.of(4),
    )
    linking = (
        frozenset(range(7)),
        frozenset({0, 1, 3, 4, 5, 6}),
        frozenset({0, 1, 3, 4, 5, 6}),
        frozenset({0, 3, 4, 5, 6}),
        frozenset({0, 4, 6}),
        frozenset({0, 4, 6}),
        frozenset({0}),
    )
    return LpiSpec(b, linking, 4)


def compose(spec: LpiSpec, chain: tuple[int, ...]) -> Overpartition:
    """Assemble the overpartition of a chain of 0-based block indices."""
    if chain and chain[-1] == 0:
        raise LpiError("chains must end in a nonempty block (trailing empties are implicit)")
    prev = 0
    result = EMPTY
    for depth, k in enumerate(chain):
        if not 0 <= k < spec.size:
            raise LpiError(f"block index {k} out of range")
        if depth > 0 and k not in spec.linking[prev]:
            raise LinkingViolation(f"block {k} may not follow block {prev}")
        result = result.merge(spec.blocks[k].shift(depth * spec.modulus))
        prev = k
    return result


def decompose(spec: LpiSpec, op: Overpartition) -> tuple[int, ...]:
    """The unique chain composing to ``op``; raises if op is outside the language.

    Parts with value in [i*T+1, (i+1)*T] belong to the block at offset i*T.
    """
    t = spec.modulus
    index = {b: i for i, b in enumerate(spec.blocks)}
    if not op.parts:
        return ()
    depth = (op.parts[-1][0] - 1) // t
    buckets: list[list[tuple[int, bool]]] = [[] for _ in range(depth + 1)]
    for v, o in op.parts:
        buckets[(v - 1) // t].append((v, o))
    chain: list[int] = []
    prev = 0
    for i, bucket in enumerate(buckets):
        block = Overpartition(tuple((v - i * t, o) for v, o in bucket))
        k = index.get(block)
        if k is None:
            raise UnknownBlock(f"offset {i * t}: block {block.render() or 'empty'} not in alphabet")
        if i > 0 and k not in spec.linking[prev]:
            raise LinkingViolation(
                f"offset {i * t}: block {k} may not follow block {prev}"
            )
        chain.append(k)
        prev = k
    return tuple(chain)


def language(spec: LpiSpec, max_size: int) -> list[Overpartition]:
    """All language members with size <= max_size (depth-first over chains)."""
    out = [EMPTY]
    t = spec.modulus

    def rec(prev: int, depth: int, acc_size: int, parts: tuple[tuple[int, bool], ...]) -> None:
        # Any nonempty block at offset depth*t adds at least depth*t + 1.
        if acc_size + depth * t + 1 > max_size:
            return
        for k in spec.linking[prev]:
            if k == 0:
                continue
            block = spec.blocks[k]
            added = block.size + depth * t * len(block)
            if acc_size + added <= max_size:
                new_parts = parts + tuple((v + depth * t, o) for v, o in block.parts)
                out.append(Overpartition(new_parts))
                rec(k, depth + 1, acc_size + added, new_parts)
        # An empty block defers everything one offset deeper.
        rec(0, depth + 1, acc_size, parts)

    rec(0, 0, 0, ())
    return out


def g_vector(spec: LpiSpec, order: int, vars: VarSet = QUIN_VARS) -> list[Series]:
    """All G_k at once via the depth-indexed recursion.

    G_k at depth d is G_k with x already shifted to x*q^{T*d}; beyond
    d = ceil(order/T) every nonempty member's weight exceeds the order, so the
    vector degenerates to (1, 0, ..., 0) and the recursion unwinds to depth 0.
    """
    t = spec.modulus
    k = spec.size
    weights = spec.weights(vars)
    xi = vars.index("x")
    q_name = vars.names[vars.trunc_var]
    depth_limit = order // t + 1
    current = [Series.one(vars, order)] + [Series.zero(vars, order) for _ in range(k - 1)]
    for d in range(depth_limit - 1, -1, -1):
        nxt: list[Series] = []
        for i in range(k):
            total = Series.zero(vars, order)
            for j in spec.linking[i]:
                total = total + current[j]
            shift = vars.m(**{q_name: t * d * weights[i][xi]})
            nxt.append(total.mul_monomial(
                tuple(w + s for w, s in zip(weights[i], shift))
            ))
        current = nxt
    return current


def G_series(spec: LpiSpec, k: int, order: int, vars: VarSet = QUIN_VARS) -> Series:
    """Generating function of language members whose offset-0 block is block k (1-based)."""
    if not 1 <= k <= spec.size:
        raise LpiError(f"block index {k} out of range 1..{spec.size}")
    return g_vector(spec, order, vars)[k - 1]


def F_series(spec: LpiSpec, k: int, order: int, vars: VarSet = QUIN_VARS) -> Series:
    """F_k = sum of G_j over the linking set of block k (1-based)."""
    if not 1 <= k <= spec.size:
        raise LpiError(f"block index {k} out of range 1..{spec.size}")
    g = g_vector(spec, order, vars)
    total = Series.zero(vars, order)
    for j in spec.linking[k - 1]:
        total = total + g[j]
    return total


def matrices(spec: LpiSpec, vars: VarSet = QUIN_VARS) -> tuple[tuple[tuple[int, ...], ...], tuple[Mono, ...]]:
    """Linking incidence A (A[k][j] = 1 iff block j may follow block k) and weights W."""
    a = tuple(
        tuple(1 if j in spec.linking[i] else 0 for j in range(spec.size))
        for i in range(spec.size)
    )
    return a, spec.weights(vars)
