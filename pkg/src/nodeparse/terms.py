"""Exact injective pairing arithmetic and the interned term form of encodings.

The numeric side: a Cantor pair, a symmetric pair, and a 9-ary combiner that
is injective on (unordered pair of 4-tuples) x {0,1}. The term side mirrors
those functions symbolically, because the combiner multiplies bit-lengths by
a large constant per merge and raw naturals stop being practical after a
handful of edges. Injectivity of the numeric functions makes canonical term
equality and numeric equality interchangeable; the auxiliary counters stay
numeric because they only grow linearly in bit-length.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Tuple

# Bit-lengths of y-values gain a factor of up to 64 per merge depth; the worst
# four-edge encodings (all-parallel or all-loop chains) reach about 2^25.3
# bits, so this default keeps every four-edge graph evaluable with margin.
DEFAULT_BIT_BUDGET = 1 << 26


def cantor_pair(i: int, j: int) -> int:
    """(i+j)(i+j+1)/2 + j; injective on pairs of naturals."""
    s = i + j
    return s * (s + 1) // 2 + j


def sym_pair(i: int, j: int) -> Tuple[int, int]:
    """(i+j, i*j); symmetric, injective on unordered pairs of naturals."""
    return (i + j, i * j)


def tuple4_pair(a: int, b: int, c: int, d: int) -> int:
    """Left-nested 4-tuple Cantor pairing."""
    return cantor_pair(cantor_pair(cantor_pair(a, b), c), d)


def r_combine(
    y1: int, h1: int, m1: int, n1: int,
    y2: int, h2: int, m2: int, n2: int,
    b: int,
) -> int:
    """Combine two 4-tuples and an indicator bit into one natural.

    Injective in ({N^4, N^4} unordered) x {0,1}; invariant under swapping the
    two 4-tuples because the inner pair is symmetric.
    """
    s, p = sym_pair(tuple4_pair(y1, h1, m1, n1), tuple4_pair(y2, h2, m2, n2))
    return cantor_pair(cantor_pair(s, p), b)


class EncodingTerm:
    """Interned construction term; equality is identity within one interner."""

    __slots__ = ("_hash", "_ser")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, EncodingTerm):
            return NotImplemented
        return term_compare(self, other) == 0


class LeafTerm(EncodingTerm):
    """Single-vertex encoding; implicit (y, m1, m2) = (0, 0, label + 1)."""

    __slots__ = ("label",)

    def __init__(self, label: int):
        self.label = label
        self._hash = hash(("leaf", label))
        self._ser = None

    def __repr__(self) -> str:
        return f"LeafTerm({self.label})"


class Child(NamedTuple):
    """One side of a merge: the child's y-term plus its numeric companions."""

    y: EncodingTerm
    h: int
    m1: int
    m2: int


class MergeTerm(EncodingTerm):
    """Edge-merge encoding over an unordered pair of child tuples.

    The pair is stored sorted by the total term order, so structurally equal
    merges intern to the same object regardless of argument order.
    """

    __slots__ = ("left", "right", "b")

    def __init__(self, left: Child, right: Child, b: int):
        self.left = left
        self.right = right
        self.b = b
        self._hash = hash(
            ("merge", b,
             left.y._hash, left.h, left.m1, left.m2,
             right.y._hash, right.h, right.m1, right.m2)
        )
        self._ser = None

    def __repr__(self) -> str:
        return f"MergeTerm(b={self.b}, {self.left!r}, {self.right!r})"


def _child_items(a: Child, b: Child):
    yield ("t", a.y, b.y)
    yield ("i", a.h, b.h)
    yield ("i", a.m1, b.m1)
    yield ("i", a.m2, b.m2)


def term_compare(a: EncodingTerm, b: EncodingTerm) -> int:
    """Strict total order: leaves before merges, then structural lexicographic.

    Leaves compare by label; merges by (smaller child, larger child, b) with
    child tuples compared by (y, h, m1, m2). Iterative so deep chains cannot
    hit the recursion limit.
    """
    stack = [("t", a, b)]
    while stack:
        kind, x, y = stack.pop()
        if kind == "i":
            if x != y:
                return -1 if x < y else 1
            continue
        if x is y:
            continue
        x_leaf = isinstance(x, LeafTerm)
        y_leaf = isinstance(y, LeafTerm)
        if x_leaf and y_leaf:
            if x.label != y.label:
                return -1 if x.label < y.label else 1
            continue
        if x_leaf != y_leaf:
            return -1 if x_leaf else 1
        items = list(_child_items(x.left, y.left)) + list(
            _child_items(x.right, y.right)
        ) + [("i", x.b, y.b)]
        stack.extend(reversed(items))
    return 0


def serialize_term(term: EncodingTerm) -> str:
    """Canonical text form: ``L(<label>)`` / ``M(b=..; (y,h,m1,m2), (y,h,m1,m2))``.

    Children appear in canonical order, so the string is a faithful key for
    cross-process comparison. Results are cached on the term.
    """
    if term._ser is not None:
        return term._ser
    # Post-order over the y-term DAG; sharing keeps this linear in distinct terms.
    stack: List[Tuple[EncodingTerm, bool]] = [(term, False)]
    while stack:
        node, ready = stack.pop()
        if node._ser is not None:
            continue
        if isinstance(node, LeafTerm):
            node._ser = f"L({node.label})"
            continue
        if not ready:
            stack.append((node, True))
            stack.append((node.left.y, False))
            stack.append((node.right.y, False))
            continue
        l, r = node.left, node.right
        node._ser = (
            f"M(b={node.b}; ({l.y._ser},{l.h},{l.m1},{l.m2}),"
            f" ({r.y._ser},{r.h},{r.m1},{r.m2}))"
        )
    return term._ser


class CEncoding(NamedTuple):
    """Component encoding: symbolic y plus numeric m1/m2 counters.

    m1 = 0 exactly for edge-free (single-vertex) encodings, which is what lets
    a merge be deconstructed unambiguously; m2 always exceeds every h-value of
    the component it encodes.
    """

    y: EncodingTerm
    m1: int
    m2: int


def serialize_encoding(enc: CEncoding) -> str:
    return f"({serialize_term(enc.y)},{enc.m1},{enc.m2})"


class TermInterner:
    """Hash-consing table; confine one interner to one execution context.

    Structurally equal terms built through the same interner are the same
    object, so equality and hashing are O(1). Cross-context comparison goes
    through the canonical serialization instead of table identity.
    """

    def __init__(self) -> None:
        self._table: Dict[tuple, EncodingTerm] = {}

    def leaf(self, label: int) -> LeafTerm:
        if label < 1:
            raise ValueError(f"leaf label must be >= 1, got {label}")
        key = ("L", label)
        term = self._table.get(key)
        if term is None:
            term = LeafTerm(label)
            self._table[key] = term
        return term

    def merge(self, c1: Child, c2: Child, b: int) -> MergeTerm:
        if b not in (0, 1):
            raise ValueError(f"indicator must be 0 or 1, got {b}")
        cmp = term_compare(c1.y, c2.y) or _tuple_tail_compare(c1, c2)
        if cmp > 0:
            c1, c2 = c2, c1
        key = ("M", b, c1, c2)
        term = self._table.get(key)
        if term is None:
            term = MergeTerm(c1, c2, b)
            self._table[key] = term
        return term

    def __len__(self) -> int:
        return len(self._table)


def _tuple_tail_compare(a: Child, b: Child) -> int:
    for x, y in ((a.h, b.h), (a.m1, b.m1), (a.m2, b.m2)):
        if x != y:
            return -1 if x < y else 1
    return 0


def eval_term_numeric(
    term: EncodingTerm, bit_budget: int = DEFAULT_BIT_BUDGET
) -> Optional[int]:
    """Exact natural-number value of a y-term, or None when it would exceed
    ``bit_budget`` bits at any intermediate step.

    The refusal is a distinguishable outcome, not an error: y-values gain
    roughly a x64 bit-length factor per merge depth, so deep terms are
    legitimately unevaluable and the caller decides what that means.
    """
    memo: Dict[int, Optional[int]] = {}
    stack: List[Tuple[EncodingTerm, bool]] = [(term, False)]
    while stack:
        node, ready = stack.pop()
        if id(node) in memo:
            continue
        if isinstance(node, LeafTerm):
            memo[id(node)] = 0
            continue
        if not ready:
            stack.append((node, True))
            stack.append((node.left.y, False))
            stack.append((node.right.y, False))
            continue
        y1 = memo[id(node.left.y)]
        y2 = memo[id(node.right.y)]
        if y1 is None or y2 is None:
            memo[id(node)] = None
            continue
        t1 = tuple4_pair(y1, node.left.h, node.left.m1, node.left.m2)
        t2 = tuple4_pair(y2, node.right.h, node.right.m1, node.right.m2)
        if t1.bit_length() > bit_budget or t2.bit_length() > bit_budget:
            memo[id(node)] = None
            continue
        s, p = sym_pair(t1, t2)
        if p.bit_length() > bit_budget:
            memo[id(node)] = None
            continue
        inner = cantor_pair(s, p)
        if inner.bit_length() > bit_budget:
            memo[id(node)] = None
            continue
        value = cantor_pair(inner, node.b)
        memo[id(node)] = None if value.bit_length() > bit_budget else value
    return memo[id(term)]
