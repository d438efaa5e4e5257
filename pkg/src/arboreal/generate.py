"""Seeded random stack-free arboreal networks.

Generation starts from a root with two leaves and applies one growth move per
extra leaf:

``grow-leaf``
    hang a new leaf off an existing tree vertex, or subdivide an arc with a
    new tree vertex carrying the leaf;
``new-root-hybrid``
    subdivide an arc between two non-hybrids with a new hybrid and give it a
    second parent, a new root whose other child is the leaf;
``extend-hybrid``
    add a new root whose children are an existing hybrid and the leaf.

Leaves are labelled ``"1"``, ``"2"``, ... in creation order. Every move is
checked after it is applied and undone if the network stops being a
stack-free arboreal network.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .network import Network, is_arboreal, is_stack_free, validate_m_network

MASK64 = (1 << 64) - 1

GROW_LEAF = "grow-leaf"
NEW_ROOT_HYBRID = "new-root-hybrid"
EXTEND_HYBRID = "extend-hybrid"
ROOT_CHERRY = "root-cherry"
MOVES = (GROW_LEAF, NEW_ROOT_HYBRID, EXTEND_HYBRID, ROOT_CHERRY)
ROOT_MOVES = (NEW_ROOT_HYBRID, EXTEND_HYBRID)

MAX_RETRIES = 32


class GenerationError(RuntimeError):
    """The configuration cannot be satisfied."""


class XorShift64Star:
    """Marsaglia's xorshift64* generator.

    State update ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` on 64 bits, output
    ``x * 0x2545F4914F6CDD1D mod 2**64``. The seed is first passed through one
    splitmix64 step so that every 64-bit seed, including 0, gives a non-zero
    state.
    """

    def __init__(self, seed: int):
        z = (seed + 0x9E3779B97F4A7C15) & MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        z ^= z >> 31
        self.state = z or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def below(self, k: int) -> int:
        """Uniform integer in ``range(k)``."""
        if k <= 0:
            raise ValueError("k must be positive")
        return self.next_u64() % k

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def weighted(self, options: list, weights: list):
        total = sum(weights)
        x = self.random() * total
        for opt, w in zip(options, weights):
            if x < w:
                return opt
            x -= w
        return options[-1]


def _default_weights() -> dict:
    return {GROW_LEAF: 3.0, NEW_ROOT_HYBRID: 1.0, EXTEND_HYBRID: 1.0, ROOT_CHERRY: 1.0}


@dataclass(frozen=True)
class GenConfig:
    """Generator settings. ``target_roots=None`` leaves the root count to chance.

    The ``root-cherry`` weight is accepted for completeness; the cherry is
    only ever used as the starting network.
    """

    n_leaves: int
    seed: int = 0
    target_roots: int | None = None
    weights: dict = field(default_factory=_default_weights)

    def __post_init__(self):
        if self.n_leaves < 3:
            raise ValueError("n_leaves must be at least 3")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.target_roots is not None and self.target_roots < 1:
            raise ValueError("target_roots must be at least 1")
        unknown = set(self.weights) - set(MOVES)
        if unknown:
            raise ValueError(f"unknown moves {sorted(unknown)}")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("move weights must be non-negative")
        if not any(self.weights.get(m, 0) > 0 for m in MOVES):
            raise ValueError("at least one move weight must be positive")


class _Builder:
    def __init__(self):
        self.children: dict[str, list[str]] = {}
        self.parents: dict[str, list[str]] = {}
        self.labels: dict[str, str] = {}
        self.count = {"r": 0, "t": 0, "h": 0}
        self.n_roots = 0

    def new(self, kind: str) -> str:
        v = f"{kind}{self.count[kind]}"
        self.count[kind] += 1
        self.children[v] = []
        self.parents[v] = []
        return v

    def new_leaf(self) -> str:
        lab = str(len(self.labels) + 1)
        v = "x" + lab
        self.children[v] = []
        self.parents[v] = []
        self.labels[v] = lab
        return v

    def add(self, t, h):
        self.children[t].append(h)
        self.parents[h].append(t)

    def remove(self, t, h):
        self.children[t].remove(h)
        self.parents[h].remove(t)

    def arcs(self) -> list:
        return [(t, h) for t, cs in self.children.items() for h in cs]

    def network(self) -> Network:
        return Network(self.arcs(), self.labels)

    def snapshot(self):
        return (
            {v: list(c) for v, c in self.children.items()},
            {v: list(p) for v, p in self.parents.items()},
            dict(self.labels),
            dict(self.count),
            self.n_roots,
        )

    def restore(self, snap):
        self.children, self.parents, self.labels, self.count, self.n_roots = (
            {v: list(c) for v, c in snap[0].items()},
            {v: list(p) for v, p in snap[1].items()},
            dict(snap[2]),
            dict(snap[3]),
            snap[4],
        )

    def is_hybrid(self, v) -> bool:
        return len(self.parents[v]) >= 2


def _feasible(b: _Builder, move: str) -> bool:
    if move == EXTEND_HYBRID:
        return any(b.is_hybrid(v) for v in b.parents)
    if move == NEW_ROOT_HYBRID:
        return any(not b.is_hybrid(t) and not b.is_hybrid(h) for t, h in b.arcs())
    return move == GROW_LEAF


def _apply(b: _Builder, move: str, rng: XorShift64Star):
    if move == GROW_LEAF:
        tree_vertices = sorted(v for v in b.children if v.startswith("t"))
        if tree_vertices and rng.below(2) == 0:
            b.add(rng.choice(tree_vertices), b.new_leaf())
            return
        u, v = rng.choice(sorted(b.arcs()))
        t = b.new("t")
        b.remove(u, v)
        b.add(u, t)
        b.add(t, v)
        b.add(t, b.new_leaf())
    elif move == NEW_ROOT_HYBRID:
        u, v = rng.choice(sorted(a for a in b.arcs() if not b.is_hybrid(a[0]) and not b.is_hybrid(a[1])))
        h = b.new("h")
        b.remove(u, v)
        b.add(u, h)
        b.add(h, v)
        r = b.new("r")
        b.add(r, h)
        b.add(r, b.new_leaf())
        b.n_roots += 1
    elif move == EXTEND_HYBRID:
        h = rng.choice(sorted(v for v in b.parents if b.is_hybrid(v)))
        r = b.new("r")
        b.add(r, h)
        b.add(r, b.new_leaf())
        b.n_roots += 1
    else:
        raise ValueError(f"not a growth move: {move!r}")


def _structurally_ok(net: Network) -> bool:
    report = validate_m_network(net)
    if any(v.vertex is not None for v in report.violations):
        return False
    return is_arboreal(net) and is_stack_free(net)


def random_network(cfg: GenConfig) -> Network:
    """A stack-free arboreal network with ``cfg.n_leaves`` leaves, fixed by ``cfg``."""
    n = cfg.n_leaves
    target = cfg.target_roots
    if target is not None and target > n - 1:
        raise GenerationError(f"{n} leaves allow at most {n - 1} roots, asked for {target}")
    growth = [m for m in (GROW_LEAF, NEW_ROOT_HYBRID, EXTEND_HYBRID)]
    weight = {m: cfg.weights.get(m, 0.0) for m in growth}
    if target is None and not any(weight[m] > 0 for m in growth):
        raise GenerationError("all growth moves have zero weight")

    rng = XorShift64Star(cfg.seed)
    b = _Builder()
    r = b.new("r")
    b.add(r, b.new_leaf())
    b.add(r, b.new_leaf())
    b.n_roots = 1

    for step in range(n - 2):
        left = n - 2 - step
        if target is None:
            allowed = growth
        else:
            need = target - b.n_roots
            if need == left:
                allowed = list(ROOT_MOVES)
            elif need == 0:
                allowed = [GROW_LEAF]
            else:
                allowed = growth
        snap = b.snapshot()
        for attempt in range(MAX_RETRIES):
            options = [m for m in allowed if _feasible(b, m)]
            if not options:
                break
            ws = [weight[m] for m in options]
            if attempt >= MAX_RETRIES // 2 or sum(ws) == 0:
                # fall back to a uniform pick when the weights keep failing
                ws = [1.0] * len(options)
            move = rng.weighted(options, ws)
            _apply(b, move, rng)
            if _structurally_ok(b.network()):
                break
            b.restore(snap)
        else:
            raise GenerationError(f"no valid move found at leaf {len(b.labels) + 1}")
        if len(b.labels) != n - left + 1:
            raise GenerationError(f"no feasible move at leaf {len(b.labels) + 1}")

    net = b.network()
    if not (validate_m_network(net).ok and is_arboreal(net) and is_stack_free(net)):
        raise GenerationError("generated network failed validation")
    return net
