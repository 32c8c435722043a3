"""Jumplist nodes, the list container, structural validation and configurations.

Node indices used throughout are 0-based positions in a sublist, with the
sublist head at index 0.  A jump node whose target sits at index ``j`` has a
next-sublist of ``j - 1`` nodes (stored as ``nsize``) and a jump-sublist of
``m - j`` nodes, and ``j`` must lie in ``[2, m - 1]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Union


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    """Sampling size ``k = 2t + 1`` and leaf size ``w``."""

    k: int = 1
    w: int = 2

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1 or self.k % 2 == 0:
            raise InvalidParams(f"k must be a positive odd integer, got {self.k!r}")
        if not isinstance(self.w, int) or self.w < self.k + 1:
            raise InvalidParams(f"w must be >= k + 1 = {self.k + 1}, got {self.w!r}")

    @property
    def t(self) -> int:
        return (self.k - 1) // 2


class Node:
    """Backbone node; ``jump is None`` marks a plain node."""

    __slots__ = ("key", "next", "jump", "nsize")

    def __init__(self, key=None, next=None):
        self.key = key
        self.next = next
        self.jump = None
        self.nsize = 0

    @property
    def is_jump(self) -> bool:
        return self.jump is not None

    @property
    def kind(self) -> str:
        return "jump" if self.jump is not None else "plain"

    def make_plain(self):
        self.jump = None
        self.nsize = 0

    def __repr__(self):
        if self is SENTINEL:
            return "Node(+inf)"
        if self.jump is None:
            return f"Node({self.key!r})"
        return f"Node({self.key!r}, jump={self.jump.key!r}, nsize={self.nsize})"


# Shared end-of-backbone marker.  Acts as +inf; never a jump target.
SENTINEL = Node()


class JumpList:
    """Sorted set of distinct keys stored as a randomized median-of-k jumplist."""

    def __init__(self, params: Params | None = None, rng=None):
        from .rng import RandomSource

        self.params = params if params is not None else Params()
        self.rng = rng if rng is not None else RandomSource()
        self.header = Node(None, SENTINEL)
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[Any]:
        node = self.header.next
        while node is not SENTINEL:
            yield node.key
            node = node.next

    def __contains__(self, x) -> bool:
        from .search import contains

        return contains(self, x)[0]

    def __repr__(self):
        return f"JumpList(k={self.params.k}, w={self.params.w}, n={self.size})"

    def nodes(self) -> list[Node]:
        """All ``n + 1`` backbone nodes, header first."""
        out = []
        node = self.header
        while node is not SENTINEL:
            out.append(node)
            node = node.next
        return out

    def jump_node_count(self) -> int:
        return sum(1 for v in self.nodes() if v.jump is not None)

    def add(self, x, rng=None) -> bool:
        from .update import insert

        return insert(self, x, rng)[0]

    def discard(self, x, rng=None) -> bool:
        from .update import delete

        return delete(self, x, rng)[0]


def new(params: Params | None = None, rng=None) -> JumpList:
    return JumpList(params, rng)


def size(lst: JumpList) -> int:
    return lst.size


def iter_sorted(lst: JumpList) -> list:
    return list(lst)


def from_sorted(keys: Iterable, params: Params | None = None, rng=None) -> JumpList:
    """Build a list on strictly increasing ``keys`` with freshly drawn jumps."""
    from .update import rebalance

    lst = JumpList(params, rng)
    keys = list(keys)
    for a, b in zip(keys, keys[1:]):
        if not a < b:
            raise ValueError(f"keys must be strictly increasing ({a!r} before {b!r})")
    tail = SENTINEL
    for key in reversed(keys):
        tail = Node(key, tail)
    lst.header.next = tail
    lst.size = len(keys)
    rebalance(lst.header, lst.size + 1, lst.params, lst.rng)
    return lst


def from_links(keys: Iterable, jumps: dict[int, int], params: Params,
               nsize: dict[int, int] | None = None) -> JumpList:
    """Assemble a list by hand from backbone keys and explicit jump links.

    ``jumps`` maps node index to target index (header is index 0).  ``nsize``
    defaults to the distance minus one; no checks are applied, so this is the
    way to encode corrupt structures for :func:`validate`.
    """
    lst = JumpList(params)
    keys = list(keys)
    nodes = [lst.header] + [Node(key) for key in keys]
    for a, b in zip(nodes, nodes[1:]):
        a.next = b
    nodes[-1].next = SENTINEL
    for i, j in jumps.items():
        nodes[i].jump = nodes[j] if j < len(nodes) else SENTINEL
        nodes[i].nsize = (nsize or {}).get(i, j - i - 1)
    lst.size = len(keys)
    return lst


def from_config(config: "Config", keys: Iterable, params: Params) -> JumpList:
    """Lay out ``config`` over the sorted ``keys`` deterministically."""
    keys = list(keys)
    if not config_is_legal(config, params):
        raise ValueError(f"{render(config)} is not a legal configuration for {params}")
    if config.m != len(keys) + 1:
        raise ValueError(f"config has {config.m} nodes but {len(keys)} keys were given")
    jumps = {}
    stack = [(0, config)]
    while stack:
        lo, c = stack.pop()
        if isinstance(c, Split):
            jumps[lo] = lo + c.j
            stack.append((lo + 1, c.next))
            stack.append((lo + c.j, c.jump))
    return from_links(keys, jumps, params)


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {rule for rule, _ in self.violations}

    def add(self, rule: str, where: str):
        self.violations.append((rule, where))

    def __bool__(self):
        return self.ok


def validate(lst: JumpList) -> ValidationReport:
    """Check every structural invariant; reports problems, never raises."""
    report = ValidationReport()
    w = lst.params.w

    nodes = []
    index = {}
    node = lst.header
    while node is not SENTINEL:
        if node is None:
            report.add("sentinel", f"backbone ends without sentinel after node {len(nodes) - 1}")
            break
        if id(node) in index:
            report.add("sentinel", f"backbone cycles back to node {index[id(node)]}")
            break
        index[id(node)] = len(nodes)
        nodes.append(node)
        node = node.next

    if len(nodes) != lst.size + 1:
        report.add("size-mismatch", f"size is {lst.size} but backbone holds {len(nodes) - 1} keys")

    for i in range(2, len(nodes)):
        try:
            ordered = nodes[i - 1].key < nodes[i].key
        except TypeError:
            ordered = False
        if not ordered:
            report.add("key-order", f"node {i}")

    targets = {}
    intervals = []
    for i, v in enumerate(nodes):
        if v.jump is None:
            continue
        t = index.get(id(v.jump))
        if t is None:
            what = "sentinel" if v.jump is SENTINEL else "a node outside the backbone"
            report.add("jump-range", f"node {i} jumps to {what}")
            continue
        if t <= i:
            report.add("jump-range", f"node {i} jumps backwards to node {t}")
            continue
        if t == i + 1:
            report.add("non-degeneracy", f"node {i} jumps to its direct successor")
        if t in targets:
            report.add("non-degeneracy", f"node {t} is targeted by nodes {targets[t]} and {i}")
        targets[t] = i
        intervals.append((i, t))

    # intervals arrive sorted by start; an open interval must contain every later one
    open_ends: list[tuple[int, int]] = []
    for a, b in intervals:
        while open_ends and open_ends[-1][1] <= a:
            open_ends.pop()
        if open_ends and b > open_ends[-1][1]:
            report.add("well-nestedness", f"jump {a}->{b} crosses jump {open_ends[-1][0]}->{open_ends[-1][1]}")
            continue
        open_ends.append((a, b))

    stack = [(0, len(nodes))]
    while stack:
        lo, m = stack.pop()
        if m <= w:
            for i in range(lo, lo + m):
                if nodes[i].jump is not None:
                    report.add("node-type", f"node {i} is a jump node in a sublist of {m} nodes")
            continue
        head = nodes[lo]
        if head.jump is None:
            report.add("node-type", f"node {lo} is plain but heads a sublist of {m} nodes")
            continue
        t = index.get(id(head.jump))
        if t is None:
            continue
        j = t - lo
        if not 2 <= j <= m - 1:
            report.add("jump-range", f"node {lo} jumps to index {j} outside [2, {m - 1}] of its sublist")
            continue
        if head.nsize != j - 1:
            report.add("nsize-mismatch", f"node {lo} stores nsize {head.nsize}, next-sublist has {j - 1}")
        stack.append((lo + j, m - j))
        stack.append((lo + 1, j - 1))
    return report


# ---------------------------------------------------------------------------
# configurations

@dataclass(frozen=True)
class Leaf:
    m: int

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Split:
    m: int
    j: int
    next: "Config"
    jump: "Config"

    def __post_init__(self):
        if self.next.m != self.j - 1 or self.jump.m != self.m - self.j:
            raise ValueError(f"inconsistent split sizes in {self!r}")

    def __str__(self):
        return render(self)


Config = Union[Leaf, Split]


def config_is_legal(config: Config, params: Params) -> bool:
    if isinstance(config, Leaf):
        return 1 <= config.m <= params.w
    return (config.m > params.w and 2 <= config.j <= config.m - 1
            and config_is_legal(config.next, params)
            and config_is_legal(config.jump, params))


def extract_config(lst: JumpList) -> Config:
    report = validate(lst)
    if not report.ok:
        raise ValueError(f"cannot extract the configuration of an invalid list: {report.violations[:3]}")
    nodes = lst.nodes()
    index = {id(v): i for i, v in enumerate(nodes)}

    def build(lo, m):
        head = nodes[lo]
        if head.jump is None:
            return Leaf(m)
        j = index[id(head.jump)] - lo
        return Split(m, j, build(lo + 1, j - 1), build(lo + j, m - j))

    return build(0, len(nodes))


def render(config: Config) -> str:
    parts = []

    def emit(c):
        if isinstance(c, Leaf):
            parts.append(f"L{c.m}")
        else:
            parts.append(f"({c.j}:")
            emit(c.next)
            emit(c.jump)
            parts.append(")")

    emit(config)
    return "".join(parts)


_TOKEN = re.compile(r"L(\d+)|\((\d+):|\)")


def parse(text: str) -> Config:
    """Inverse of :func:`render`."""
    pos = 0

    def config():
        nonlocal pos
        match = _TOKEN.match(text, pos)
        if match is None or match.group(0) == ")":
            raise ValueError(f"malformed config string at offset {pos}: {text!r}")
        pos = match.end()
        if match.group(1) is not None:
            return Leaf(int(match.group(1)))
        j = int(match.group(2))
        a = config()
        b = config()
        if not text.startswith(")", pos):
            raise ValueError(f"expected ')' at offset {pos}: {text!r}")
        pos += 1
        return Split(1 + a.m + b.m, j, a, b)

    result = config()
    if pos != len(text):
        raise ValueError(f"trailing characters at offset {pos}: {text!r}")
    return result
