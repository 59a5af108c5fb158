"""Ternary-tree ESOP minimization (TT-LITE).

A cube is a string over ``'0'``, ``'-'`` and ``'1'``; character 0 belongs to the
root-level variable.  A cover is an XOR of its cubes.

Two engines run the same passes.  The ``tree`` engine manipulates
:class:`TernaryNode` tries exactly as the merge / append / rotate procedures
describe.  The ``packed`` engine holds each cube as a 2-bit-per-variable word in
a numpy array and applies the equivalent set transformations, which is what
makes images with ~10^5 minterms tractable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

ZERO, DC, ONE = "0", "-", "1"
SYMBOLS = (ZERO, DC, ONE)

#: Widest cube the packed engine can hold in one uint64 word.
MAX_PACKED_VARS = 32

ENGINES = ("auto", "packed", "tree")


class MalformedCoverError(ValueError):
    """A cube has the wrong length, a bad symbol, or is duplicated."""


class TreeStateError(RuntimeError):
    """The tree is mid-way through a rotation cycle."""


@dataclass(frozen=True)
class EsopCover:
    """Ordered XOR-of-products over ``num_vars`` variables."""

    num_vars: int
    cubes: tuple[str, ...] = ()

    def __post_init__(self):
        cubes = tuple(self.cubes)
        object.__setattr__(self, "cubes", cubes)
        if self.num_vars < 0:
            raise MalformedCoverError(f"num_vars must be >= 0, got {self.num_vars}")
        for cube in cubes:
            if len(cube) != self.num_vars:
                raise MalformedCoverError(
                    f"cube {cube!r} has length {len(cube)}, expected {self.num_vars}"
                )
        if cubes and not set("".join(cubes)) <= set(SYMBOLS):
            bad = sorted(set("".join(cubes)) - set(SYMBOLS))
            raise MalformedCoverError(f"illegal cube symbols {bad}")
        if len(set(cubes)) != len(cubes):
            raise MalformedCoverError("cover contains duplicate cubes")

    def __len__(self) -> int:
        return len(self.cubes)

    def __iter__(self) -> Iterator[str]:
        return iter(self.cubes)

    def as_set(self) -> frozenset[str]:
        return frozenset(self.cubes)

    def literal_count(self) -> int:
        return sum(self.num_vars - c.count(DC) for c in self.cubes)


# ---------------------------------------------------------------------------
# PLA-style text


def read_pla(text: str) -> EsopCover:
    """Parse one-cube-per-line text.

    ``#`` lines and blank lines are skipped.  An optional ``.i N`` directive
    fixes the variable count; other dot-directives are ignored.  Anything after
    the first whitespace on a cube line (e.g. an output column) is dropped.
    """
    num_vars = None
    cubes = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("."):
            parts = line.split()
            if parts[0] == ".i":
                if cubes or len(parts) != 2 or not parts[1].isdigit():
                    raise MalformedCoverError(f"bad .i directive: {raw!r}")
                num_vars = int(parts[1])
            continue
        cubes.append(line.split()[0])
    if num_vars is None:
        num_vars = len(cubes[0]) if cubes else 0
    return EsopCover(num_vars, cubes)


def load_pla(path: str | os.PathLike) -> EsopCover:
    with open(path, encoding="ascii") as fh:
        return read_pla(fh.read())


def write_pla(cover: EsopCover) -> str:
    lines = [f".i {cover.num_vars}", *cover.cubes]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Ternary tree


class TernaryNode:
    """Trie node with one optional child per cube symbol."""

    __slots__ = ("lo", "dc", "hi")

    def __init__(self, lo=None, dc=None, hi=None):
        self.lo: Optional[TernaryNode] = lo
        self.dc: Optional[TernaryNode] = dc
        self.hi: Optional[TernaryNode] = hi

    def has_children(self) -> bool:
        return self.lo is not None or self.dc is not None or self.hi is not None

    def __repr__(self):
        return f"TernaryNode(lo={self.lo!r}, dc={self.dc!r}, hi={self.hi!r})"


@dataclass
class TernaryTree:
    """Root node plus the level-to-variable mapping.

    ``var_order[k]`` is the original index of the variable stored at tree level
    ``k``.  ``collisions`` counts identical-path leaves folded together by
    :func:`merge_trees`; a nonzero value means XOR semantics were lost.
    """

    root: TernaryNode
    num_vars: int
    var_order: tuple[int, ...] = ()
    collisions: int = field(default=0)

    def __post_init__(self):
        if not self.var_order:
            self.var_order = tuple(range(self.num_vars))


def _child(node: TernaryNode, symbol: str) -> Optional[TernaryNode]:
    if symbol == ZERO:
        return node.lo
    if symbol == DC:
        return node.dc
    return node.hi


def _ensure_child(node: TernaryNode, symbol: str) -> TernaryNode:
    child = _child(node, symbol)
    if child is None:
        child = TernaryNode()
        if symbol == ZERO:
            node.lo = child
        elif symbol == DC:
            node.dc = child
        else:
            node.hi = child
    return child


def build_tree(cover: EsopCover) -> TernaryTree:
    root = TernaryNode()
    for cube in cover.cubes:
        if len(cube) != cover.num_vars:
            raise MalformedCoverError(f"cube {cube!r} does not have {cover.num_vars} symbols")
        node = root
        for symbol in cube:
            node = _ensure_child(node, symbol)
    return TernaryTree(root, cover.num_vars)


def merge_leaves(tree: TernaryTree) -> int:
    """Apply the complement rule ``a0 ^ a1 = a-`` to every leaf pair.

    One pre-order pass: a node whose ``lo`` and ``hi`` are leaves and whose
    ``dc`` is empty gets a single ``dc`` leaf instead.  Returns the merge count.
    """
    return _merge_leaves(tree.root, 0, tree.num_vars)


def _merge_leaves(node, depth, bound):
    if node is None or depth == bound:
        return 0
    if depth + 1 == bound and node.dc is None and node.lo is not None and node.hi is not None:
        node.lo = node.hi = None
        node.dc = TernaryNode()
        return 1
    return (
        _merge_leaves(node.lo, depth + 1, bound)
        + _merge_leaves(node.dc, depth + 1, bound)
        + _merge_leaves(node.hi, depth + 1, bound)
    )


def append_all(node: Optional[TernaryNode], symbol: str, height: int) -> None:
    """Give every leaf of a detached subtree one child along ``symbol``.

    ``height`` is the distance from ``node`` to its leaves, i.e. ``num_vars - 1``
    for a child cut from the root.  Freshly created children are not revisited.
    """
    if node is None:
        return
    if symbol not in SYMBOLS:
        raise ValueError(f"unknown symbol {symbol!r}")
    if height == 0:
        _ensure_child(node, symbol)
        return
    append_all(node.lo, symbol, height - 1)
    append_all(node.dc, symbol, height - 1)
    append_all(node.hi, symbol, height - 1)


def merge_trees(t1: Optional[TernaryNode], t2: Optional[TernaryNode],
                stats: Optional[TernaryTree] = None) -> Optional[TernaryNode]:
    """Union of two equal-height tries; ``t1`` is reused and returned.

    Two leaves meeting on the same path collapse into one.  That cannot happen
    during rotation, so it is counted on ``stats.collisions`` when given.
    """
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    if not t1.has_children() and not t2.has_children():
        if stats is not None:
            stats.collisions += 1
        return t1
    t1.lo = merge_trees(t1.lo, t2.lo, stats)
    t1.dc = merge_trees(t1.dc, t2.dc, stats)
    t1.hi = merge_trees(t1.hi, t2.hi, stats)
    return t1


def rotate(tree: TernaryTree) -> TernaryTree:
    """Cut the root, push its variable to the bottom, and merge the pieces.

    Every cube ``c`` becomes ``c[1:] + c[0]``.  The input tree's nodes are reused.
    """
    if tree.num_vars < 1:
        raise ValueError("cannot rotate a tree with no variables")
    height = tree.num_vars - 1
    root = tree.root
    lo, dc, hi = root.lo, root.dc, root.hi
    if lo is not None:
        append_all(lo, ZERO, height)
    if dc is not None:
        append_all(dc, DC, height)
    if hi is not None:
        append_all(hi, ONE, height)
    result = TernaryTree(TernaryNode(), tree.num_vars,
                         tree.var_order[1:] + tree.var_order[:1], tree.collisions)
    merged = merge_trees(lo, merge_trees(dc, hi, result), result)
    if merged is not None:
        result.root = merged
    return result


def paths(tree: TernaryTree) -> list[str]:
    """Root-to-leaf paths in tree-level order, visiting children 0, -, 1."""
    out = []
    stack = [(tree.root, "", 0)]
    bound = tree.num_vars
    while stack:
        node, prefix, depth = stack.pop()
        if depth == bound:
            out.append(prefix)
            continue
        # pushed in reverse so lo pops first
        if node.hi is not None:
            stack.append((node.hi, prefix + ONE, depth + 1))
        if node.dc is not None:
            stack.append((node.dc, prefix + DC, depth + 1))
        if node.lo is not None:
            stack.append((node.lo, prefix + ZERO, depth + 1))
    return out


def traverse(tree: TernaryTree) -> EsopCover:
    if tree.var_order != tuple(range(tree.num_vars)):
        raise TreeStateError(
            f"tree levels are permuted {tree.var_order}; finish the rotation cycle first"
        )
    return EsopCover(tree.num_vars, paths(tree))


# ---------------------------------------------------------------------------
# Packed engine

_SYM_TO_CODE = np.full(256, 255, dtype=np.uint64)
_SYM_TO_CODE[ord(ZERO)] = 0
_SYM_TO_CODE[ord(DC)] = 1
_SYM_TO_CODE[ord(ONE)] = 2
_CODE_TO_SYM = np.frombuffer(b"0-1", dtype=np.uint8)


def pack_cubes(cubes: Iterable[str], num_vars: int) -> np.ndarray:
    """Encode cubes as uint64 words, 2 bits per variable, variable 0 highest.

    Symbol codes are 0 -> 0, - -> 1, 1 -> 2, so ascending word order is the
    same as depth-first 0, -, 1 trie order.
    """
    if num_vars > MAX_PACKED_VARS:
        raise ValueError(f"packed cubes hold at most {MAX_PACKED_VARS} variables")
    cubes = list(cubes)
    if not cubes or num_vars == 0:
        return np.zeros(len(cubes), dtype=np.uint64)
    raw = np.frombuffer("".join(cubes).encode("ascii"), dtype=np.uint8)
    sym = _SYM_TO_CODE[raw.reshape(len(cubes), num_vars)]
    codes = np.zeros(len(cubes), dtype=np.uint64)
    two = np.uint64(2)
    for i in range(num_vars):
        codes = (codes << two) | sym[:, i]
    return codes


def unpack_cubes(codes: np.ndarray, num_vars: int) -> list[str]:
    m = len(codes)
    if m == 0:
        return []
    if num_vars == 0:
        return [""] * m
    shifts = np.arange(2 * (num_vars - 1), -1, -2, dtype=np.uint64)
    sym = (codes[:, None] >> shifts[None, :]) & np.uint64(3)
    blob = _CODE_TO_SYM[sym].tobytes().decode("ascii")
    return [blob[i:i + num_vars] for i in range(0, m * num_vars, num_vars)]


def packed_merge_leaves(codes: np.ndarray) -> tuple[np.ndarray, int]:
    """Packed counterpart of :func:`merge_leaves`; returns sorted codes."""
    if len(codes) < 2:
        return np.sort(codes), 0
    codes = np.sort(codes)
    prefix = codes >> np.uint64(2)
    last = codes & np.uint64(3)
    starts = np.flatnonzero(np.r_[True, prefix[1:] != prefix[:-1]])
    seen = np.bitwise_or.reduceat(np.uint64(1) << last, starts)
    mergeable = (seen & np.uint64(0b111)) == np.uint64(0b101)
    n_merges = int(mergeable.sum())
    if n_merges == 0:
        return codes, 0
    group = np.cumsum(np.r_[True, prefix[1:] != prefix[:-1]]) - 1
    kept = codes[~mergeable[group]]
    merged = (prefix[starts[mergeable]] << np.uint64(2)) | np.uint64(1)
    return np.sort(np.concatenate([kept, merged])), n_merges


def packed_rotate(codes: np.ndarray, num_vars: int) -> np.ndarray:
    """Move each cube's first symbol to the end."""
    if num_vars < 1:
        raise ValueError("cannot rotate cubes with no variables")
    top = np.uint64(2 * (num_vars - 1))
    mask = np.uint64((1 << (2 * num_vars)) - 1)
    return ((codes << np.uint64(2)) & mask) | (codes >> top)


# ---------------------------------------------------------------------------


def _minimize_tree(cover):
    tree = build_tree(cover)
    for _ in range(cover.num_vars):
        merge_leaves(tree)
        tree = rotate(tree)
    merge_leaves(tree)
    if tree.collisions:
        raise AssertionError(f"{tree.collisions} leaf collisions during rotation")
    return traverse(tree)


def _minimize_packed(cover):
    n = cover.num_vars
    codes = pack_cubes(cover.cubes, n)
    for _ in range(n):
        codes, _ = packed_merge_leaves(codes)
        codes = packed_rotate(codes, n)
    codes, _ = packed_merge_leaves(codes)
    return EsopCover(n, unpack_cubes(np.sort(codes), n))


def minimize(cover: EsopCover, engine: str = "auto") -> EsopCover:
    """TT-LITE: ``num_vars`` rounds of (merge leaves, rotate), a final merge, traverse.

    The result is XOR-equivalent to ``cover``, never larger, and listed in
    depth-first 0, -, 1 order.  ``engine`` picks ``"tree"`` or ``"packed"``;
    ``"auto"`` uses packed words when the cube fits in 64 bits.
    """
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    if engine == "tree" or (engine == "auto" and cover.num_vars > MAX_PACKED_VARS):
        return _minimize_tree(cover)
    if cover.num_vars > MAX_PACKED_VARS:
        raise ValueError(f"packed engine holds at most {MAX_PACKED_VARS} variables")
    return _minimize_packed(cover)
