"""Orbits of rooted trees under subtree permutations.

An orbit is an unordered rooted tree with at most q children per node,
canonically encoded so that key equality is orbit equality.  The module
enumerates orbits, computes orbit sizes, builds the minimal orbits of
binary trees directly from the binary expansion of n+1, evaluates the
orbit-average weight function, computes the orbit carry sequence by three
independent routes (definition, multinomial recursion, coin-configuration
sum), and collapses complete subtrees (reduction).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .arith import ValueTable, finite_difference
from .errors import DomainError, ResourceLimitError
from .weights import EpsilonSequence, WeightFunction, WeightMembershipError

__all__ = [
    "OrbitShape",
    "OrbitEpsilon",
    "CoinConfiguration",
    "enumerate_orbits",
    "orbit_size",
    "minimal_orbits",
    "complete_shape",
    "is_complete_shape",
    "average_weight",
    "epsilon_direct",
    "epsilon_recursive",
    "coin_oracle",
    "enumerate_coin_configurations",
    "reduce_orbit",
    "minimal_parity_sum",
    "DEFAULT_ENUM_CAP",
    "COIN_VERTEX_CAP",
    "COIN_ORDER_CAP",
]

DEFAULT_ENUM_CAP = 16
COIN_VERTEX_CAP = 6
COIN_ORDER_CAP = 4


@lru_cache(maxsize=None)
def _key_count(key) -> int:
    return 1 + sum(_key_count(k) for k in key)


@lru_cache(maxsize=None)
def _key_depth(key) -> int:
    if not key:
        return 1
    return 1 + max(_key_depth(k) for k in key)


@dataclass(frozen=True)
class OrbitShape:
    """Canonical unordered rooted tree with at most q children per node.

    The key lists each node's children sorted by their own keys, so two
    ordered trees lie in the same symmetry orbit exactly when their keys
    agree.  The empty tree has key None.
    """

    q: int
    key: tuple | None

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"branching must be at least 2, got {self.q}")

    @classmethod
    def empty(cls, q: int = 2) -> "OrbitShape":
        return cls(q, None)

    @classmethod
    def leaf(cls, q: int = 2) -> "OrbitShape":
        return cls(q, ())

    @classmethod
    def node(cls, children, q: int | None = None) -> "OrbitShape":
        kids = [c for c in children if not c.is_empty]
        if q is None:
            if not kids:
                raise DomainError("node() needs q when all children are empty")
            q = kids[0].q
        if any(c.q != q for c in kids):
            raise DomainError("children disagree on branching")
        if len(kids) > q:
            raise DomainError(f"a node may have at most {q} children, got {len(kids)}")
        return cls(q, tuple(sorted(c.key for c in kids)))

    @property
    def is_empty(self) -> bool:
        return self.key is None

    @property
    def children(self) -> tuple["OrbitShape", ...]:
        if self.key is None:
            return ()
        return tuple(OrbitShape(self.q, k) for k in self.key)

    @property
    def vertex_count(self) -> int:
        return 0 if self.key is None else _key_count(self.key)

    @property
    def depth(self) -> int:
        return 0 if self.key is None else _key_depth(self.key)

    def to_parens(self) -> str:
        """Nested-parentheses encoding, children in canonical order."""
        if self.key is None:
            return ""
        return _key_parens(self.key)

    @classmethod
    def from_parens(cls, text: str, q: int = 2) -> "OrbitShape":
        stripped = text.strip()
        if not stripped:
            return cls.empty(q)
        key, pos = _parse_parens(stripped, 0, q)
        if pos != len(stripped):
            raise DomainError(f"trailing characters in shape string {text!r}")
        return cls(q, key)

    def __str__(self) -> str:
        return self.to_parens()


def _key_parens(key) -> str:
    return "(" + "".join(_key_parens(k) for k in key) + ")"


def _parse_parens(text: str, pos: int, q: int):
    if pos >= len(text) or text[pos] != "(":
        raise DomainError(f"expected '(' at position {pos} in shape string {text!r}")
    pos += 1
    kids = []
    while pos < len(text) and text[pos] == "(":
        kid, pos = _parse_parens(text, pos, q)
        kids.append(kid)
    if pos >= len(text) or text[pos] != ")":
        raise DomainError(f"expected ')' at position {pos} in shape string {text!r}")
    if len(kids) > q:
        raise DomainError(
            f"shape string {text!r} has a node with {len(kids)} children; at most {q} allowed"
        )
    return tuple(sorted(kids)), pos + 1


@lru_cache(maxsize=None)
def _shape_keys(n: int, q: int) -> tuple:
    """All canonical keys with n >= 1 vertices and branching at most q."""
    if n == 1:
        return ((),)
    out = []
    for kids in _child_multisets(n - 1, q, None, q):
        out.append(tuple(sorted(kids)))
    return tuple(out)


def _child_multisets(total: int, slots: int, bound, q: int):
    """Multisets of child keys, total vertex count `total`, at most `slots` items.

    Children are chosen in nonincreasing (size, key) order so each multiset
    appears exactly once; `bound` caps the next allowed (size, key).
    """
    if total == 0:
        yield ()
        return
    if slots == 0:
        return
    max_size = total if bound is None else min(total, bound[0])
    for size in range(max_size, 0, -1):
        for key in _shape_keys(size, q):
            if bound is not None and size == bound[0] and key > bound[1]:
                continue
            for rest in _child_multisets(total - size, slots - 1, (size, key), q):
                yield (key,) + rest


def enumerate_orbits(n: int, q: int = 2, max_n: int = DEFAULT_ENUM_CAP) -> list[OrbitShape]:
    """All orbits of trees on n vertices, as canonical shapes."""
    if n < 0:
        raise DomainError("vertex count must be nonnegative")
    if n > max_n:
        raise ResourceLimitError(
            f"orbit enumeration capped at {max_n} vertices (requested {n});"
            " raise the cap explicitly to go further"
        )
    if n == 0:
        return [OrbitShape.empty(q)]
    return [OrbitShape(q, k) for k in _shape_keys(n, q)]


def orbit_size(shape: OrbitShape) -> int:
    """Number of ordered trees in the orbit.

    Per node, its children (as a multiset) can occupy the q ordered slots in
    q! / (prod multiplicity! * (q-k)!) distinct ways; empty slots are
    interchangeable.  The orbit size is the product over all nodes.
    """
    if shape.is_empty:
        return 1
    q = shape.q
    qfact = math.factorial(q)

    def rec(key) -> int:
        mults = Counter(key)
        ways = qfact // math.factorial(q - len(key))
        for m in mults.values():
            ways //= math.factorial(m)
        for child in key:
            ways *= rec(child)
        return ways

    return rec(shape.key)


def complete_shape(depth: int, q: int = 2) -> OrbitShape:
    """Fully symmetric tree of the given depth: (q**depth - 1)/(q - 1) vertices."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    key = None
    for _ in range(depth):
        key = (key,) * q if key is not None else ()
    return OrbitShape(q, key)


def _is_complete_key(key, q: int) -> bool:
    if key == ():
        return True
    if len(key) != q:
        return False
    first = key[0]
    return all(k == first for k in key[1:]) and _is_complete_key(first, q)


def is_complete_shape(shape: OrbitShape) -> bool:
    """True for fully symmetric trees; these are exactly the orbits of size 1."""
    return not shape.is_empty and _is_complete_key(shape.key, shape.q)


def _ordered_binary_trees(n: int):
    """All ordered binary trees on n vertices as nested (left, right) pairs."""
    if n == 0:
        yield None
        return
    for left_size in range(n):
        for left in _ordered_binary_trees(left_size):
            for right in _ordered_binary_trees(n - 1 - left_size):
                yield (left, right)


def _complete_ordered(depth: int):
    if depth == 0:
        return None
    sub = _complete_ordered(depth - 1)
    return (sub, sub)


def _attach(tree, depth_iter):
    if tree is None:
        return _complete_ordered(next(depth_iter))
    return (_attach(tree[0], depth_iter), _attach(tree[1], depth_iter))


def _ordered_to_key(tree):
    if tree is None:
        return None
    kids = [k for k in (_ordered_to_key(tree[0]), _ordered_to_key(tree[1])) if k is not None]
    return tuple(sorted(kids))


def minimal_orbits(n: int, q: int = 2) -> list[OrbitShape]:
    """All orbits of minimum size 2**s on n vertices, s = s_2(n+1) - 1.

    Write n+1 = 2^{k_1} + ... + 2^{k_{s+1}}.  Every minimal orbit arises
    from an ordered binary tree on s vertices with fully symmetric trees of
    depths k_1, ..., k_{s+1} attached at its s+1 empty slots (depth 0 is
    the empty tree); the result is deduplicated by canonical key.
    """
    if q != 2:
        raise DomainError("minimal-orbit construction is implemented for binary trees only")
    if n < 1:
        raise DomainError("vertex count must be at least 1")
    depths = [i for i in range((n + 1).bit_length()) if (n + 1) >> i & 1]
    depths.sort(reverse=True)
    s = len(depths) - 1
    keys = set()
    for skeleton in _ordered_binary_trees(s):
        for perm in set(itertools.permutations(depths)):
            keys.add(_ordered_to_key(_attach(skeleton, iter(perm))))
    shapes = [OrbitShape(2, k) for k in sorted(keys)]
    assert all(orbit_size(sh) == 1 << s for sh in shapes)
    return shapes


def average_weight(
    shape: OrbitShape, b: WeightFunction, start: int = 0, length: int = 1
) -> ValueTable:
    """Orbit-average weight values on [start, start + length).

    This is the total weight of the orbit's ordered trees divided by the
    orbit size, computed by the symmetrized product recursion
    r(x) = b(x) * (1/q) * sum_i f_i(x+1) * prod_{j != i} f_j(x) over the
    child averages f_i (empty slots contribute the constant 1).  All
    divisions by q are exact when b lies in F(base q).
    """
    if length < 1:
        raise DomainError("window length must be at least 1")
    if shape.is_empty:
        return ValueTable(start, (1,) * length)
    vals = _avg_values(shape.key, shape.q, b, start, length)
    return ValueTable(start, tuple(vals))


def _avg_values(key, q: int, b: WeightFunction, start: int, length: int) -> list[int]:
    child_vals = [_avg_values(k, q, b, start, length + 1) for k in key]
    ones = [1] * (length + 1)
    fs = child_vals + [ones] * (q - len(key))
    out = []
    for i in range(length):
        x = start + i
        total = 0
        for t in range(q):
            term = fs[t][i + 1]
            for u in range(q):
                if u != t:
                    term *= fs[u][i]
            total += term
        quot, rem = divmod(total, q)
        if rem:
            raise WeightMembershipError(
                f"weight not in F(base {q}): symmetrized combination at x={x}"
                f" is not divisible by {q}"
            )
        out.append(b(x) * quot)
    return out


@dataclass(frozen=True)
class OrbitEpsilon:
    """Carry sequence of an orbit's average weight, tagged with its route."""

    base: int
    bits: tuple[int, ...]
    source: str

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]


def epsilon_direct(shape: OrbitShape, b: WeightFunction, max_m: int) -> OrbitEpsilon:
    """Orbit carry bits straight from the definition.

    Computes the average weight on a window, then reads off
    (diff^m r / q^m) mod q for each m, asserting that the residue is
    constant across the window.
    """
    if max_m < 0:
        raise DomainError("max order must be nonnegative")
    q = shape.q
    table = average_weight(shape, b, 0, max_m + 2)
    bits = []
    for m in range(max_m + 1):
        diff = finite_difference(table, m)
        qm = q**m
        residues = set()
        for i, v in enumerate(diff.values):
            if v % qm:
                raise WeightMembershipError(
                    f"orbit average violates {q}^{m} | diff^{m} at x={i};"
                    " weight outside F"
                )
            residues.add((v // qm) % q)
        if len(residues) != 1:
            raise WeightMembershipError(
                f"order-{m} difference of the orbit average is not constant"
                f" modulo {q}^{m + 1}; weight outside F"
            )
        bits.append(residues.pop())
    return OrbitEpsilon(q, tuple(bits), "direct")


def _eps_entries(eps) -> tuple[int, ...]:
    if isinstance(eps, EpsilonSequence):
        return eps.bits
    if isinstance(eps, OrbitEpsilon):
        return eps.bits
    return tuple(eps)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _multinomial(total: int, parts) -> int:
    out = 1
    rest = total
    for p in parts:
        out *= math.comb(rest, p)
        rest -= p
    return out


def epsilon_recursive(shape: OrbitShape, eps, max_m: int) -> OrbitEpsilon:
    """Orbit carry bits via the root-split multinomial recursion.

    With child orbits O_1..O_q (empty slots have carry (1, 0, 0, ...)),

        e^O_m = sum over i_1+..+i_q+k = m of  C(m; i_1,..,i_q,k) * e_k *
                ( prod_t e^{O_t}_{i_t} + sum_t [one index i_t incremented] )

    all modulo q.  Needs weight carries up to max_m + depth(shape) + 1.
    """
    if max_m < 0:
        raise DomainError("max order must be nonnegative")
    q = shape.q
    bits_b = _eps_entries(eps)
    need = max_m + shape.depth + 1
    if len(bits_b) < need:
        raise DomainError(
            f"need weight carry entries up to order {need - 1}, got {len(bits_b)}"
        )
    memo: dict = {}

    def rec(key, top: int) -> tuple[int, ...]:
        if key is None:
            return tuple([1] + [0] * top)
        ck = (key, top)
        if ck in memo:
            return memo[ck]
        kids = [rec(k, top + 1) for k in key]
        kids += [rec(None, top + 1)] * (q - len(key))
        out = []
        for m in range(top + 1):
            acc = 0
            for combo in _compositions(m, q + 1):
                *idx, k = combo
                coef = _multinomial(m, combo) % q
                if coef == 0:
                    continue
                term = 1
                for t in range(q):
                    term *= kids[t][idx[t]]
                for t in range(q):
                    inc = 1
                    for u in range(q):
                        inc *= kids[u][idx[u] + 1] if u == t else kids[u][idx[u]]
                    term += inc
                acc += coef * bits_b[k] * term
            out.append(acc % q)
        result = tuple(out)
        memo[ck] = result
        return result

    return OrbitEpsilon(q, rec(shape.key, max_m), "recursion")


def _ordered_representative(key):
    """Children lists and subtree vertex lists of the canonical ordered tree."""
    children: list[list[int]] = []
    subtree: list[list[int]] = []

    def build(k) -> int:
        v = len(children)
        children.append([])
        subtree.append([v])
        for ck in k:
            c = build(ck)
            children[v].append(c)
            subtree[v].extend(subtree[c])
        return v

    build(key)
    return children, subtree


def coin_oracle(
    shape: OrbitShape,
    eps,
    m: int,
    *,
    max_vertices: int = COIN_VERTEX_CAP,
    max_order: int = COIN_ORDER_CAP,
) -> int:
    """Orbit carry bit e^O_m as a coin-configuration sum, mod 2 (binary only).

    Sums prod_v eps_{|coins at v|} over all ways to (a) select edges with no
    two siblings and (b) place the labeled coins 1..m anywhere plus one coin
    per selected edge at a descendant of that edge.  Edge selections are
    independent per-node choices; the labeled coins are then distributed by
    multinomial count, so only per-vertex totals are enumerated.
    """
    if shape.q != 2:
        raise DomainError("the coin-configuration oracle is defined for binary orbits only")
    if m < 0:
        raise DomainError("order must be nonnegative")
    if shape.is_empty:
        return 1 if m == 0 else 0
    n_v = shape.vertex_count
    if n_v > max_vertices or m > max_order:
        raise ResourceLimitError(
            f"coin oracle capped at {max_vertices} vertices and order {max_order}"
            f" (requested {n_v} vertices, order {m})"
        )
    bits_b = _eps_entries(eps)
    if len(bits_b) < m + n_v:
        raise DomainError(
            f"need weight carry entries up to order {m + n_v - 1}, got {len(bits_b)}"
        )
    children, subtree = _ordered_representative(shape.key)
    free_terms = [
        (combo, _multinomial(m, combo) % 2)
        for combo in _compositions(m, n_v)
        if _multinomial(m, combo) % 2
    ]
    total = 0
    for picks in itertools.product(*[[None] + children[v] for v in range(n_v)]):
        chosen = [c for c in picks if c is not None]
        for assignment in itertools.product(*[subtree[c] for c in chosen]):
            counts = [0] * n_v
            for vtx in assignment:
                counts[vtx] += 1
            for combo, _ in free_terms:
                w = 1
                for v in range(n_v):
                    w *= bits_b[counts[v] + combo[v]]
                    if w == 0:
                        break
                total += w
    return total % 2


@dataclass(frozen=True)
class CoinConfiguration:
    """One sibling-free edge selection plus a placement of all coins.

    Edges are (parent, child) vertex pairs in the canonical ordered
    representative; placement maps each coin label (ints 1..m for free
    coins, "e<i>" for the coin of the i-th selected edge) to a vertex.
    """

    shape: OrbitShape
    selected_edges: tuple[tuple[int, int], ...]
    placement: tuple[tuple[str, int], ...]

    def counts(self) -> Counter:
        per_vertex = Counter(v for _, v in self.placement)
        for v in range(self.shape.vertex_count):
            per_vertex.setdefault(v, 0)
        return per_vertex

    def count_profile(self) -> Counter:
        """Multiset {coin count -> number of vertices}; determines the weight."""
        return Counter(self.counts().values())

    def weight(self, eps) -> int:
        bits = _eps_entries(eps)
        w = 1
        for _, c in self.counts().items():
            w *= bits[c]
        return w

    def validate(self) -> None:
        children, subtree = _ordered_representative(self.shape.key)
        parents = [e[0] for e in self.selected_edges]
        if len(parents) != len(set(parents)):
            raise DomainError("two selected edges are siblings")
        for parent, child in self.selected_edges:
            if child not in children[parent]:
                raise DomainError(f"({parent}, {child}) is not an edge")
        placed = dict(self.placement)
        expected = {f"e{i}" for i in range(len(self.selected_edges))}
        expected |= {str(i) for i in range(1, self._order() + 1)}
        if set(placed) != expected:
            raise DomainError("placement does not cover exactly the required coins")
        for i, (_, child) in enumerate(self.selected_edges):
            if placed[f"e{i}"] not in subtree[child]:
                raise DomainError(f"coin e{i} is not at a descendant of its edge")

    def _order(self) -> int:
        return sum(1 for label, _ in self.placement if not label.startswith("e"))


def enumerate_coin_configurations(shape: OrbitShape, m: int):
    """All coin-configurations of order m (exponential; tiny shapes only)."""
    if shape.q != 2:
        raise DomainError("coin configurations are defined for binary orbits only")
    if shape.is_empty:
        return
    children, subtree = _ordered_representative(shape.key)
    n_v = shape.vertex_count
    for picks in itertools.product(*[[None] + children[v] for v in range(n_v)]):
        edges = tuple((p, c) for p, c in enumerate(picks) if c is not None)
        edge_domains = [subtree[c] for _, c in edges]
        free_domains = [range(n_v)] * m
        for spots in itertools.product(*edge_domains, *free_domains):
            placement = tuple(
                (f"e{i}", spots[i]) for i in range(len(edges))
            ) + tuple((str(j + 1), spots[len(edges) + j]) for j in range(m))
            yield CoinConfiguration(shape, edges, placement)


def reduce_orbit(shape: OrbitShape) -> tuple[OrbitShape, int]:
    """Collapse every maximal complete subtree of depth >= 1 to a single vertex.

    Returns the reduced shape and the number of vertices removed.  The
    orbit carry sequence transforms as e_m -> e_0**removed * e_m(reduced),
    since each collapsed depth-k subtree contributes (q^k-1)/(q-1) - 1.
    """
    if shape.is_empty:
        return shape, 0
    q = shape.q

    def rec(key):
        if _is_complete_key(key, q):
            return (), _key_count(key) - 1
        kids = []
        removed = 0
        for ck in key:
            rk, r = rec(ck)
            kids.append(rk)
            removed += r
        return tuple(sorted(kids)), removed

    new_key, removed = rec(shape.key)
    return OrbitShape(q, new_key), removed


def minimal_parity_sum(n: int, b: WeightFunction) -> int:
    """Parity of the sum of e^O_0 over all minimal orbits on n vertices.

    Equals 1 whenever b satisfies the relaxed valuation-theorem hypotheses
    (odd b(0), 4 | diff b, 2^n | diff^n b for n >= 2).
    """
    total = 0
    for shape in minimal_orbits(n):
        total += epsilon_direct(shape, b, 0).bits[0]
    return total % 2
