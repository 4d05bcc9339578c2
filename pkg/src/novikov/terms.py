"""Nonassociative terms over an ordered alphabet.

Text grammar (whitespace is ignored)::

    term := letter | "(" term "*" term ")"

Every product carries its own parentheses; ``∘`` is accepted in place of ``*``.
"""

from __future__ import annotations

import itertools
import string
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    InhomogeneousPolynomial,
    TermSyntaxError,
    UnbalancedParens,
    UnknownLetter,
)

PRODUCT_SYMBOLS = ("*", "∘")
_RESERVED = set("()") | set(PRODUCT_SYMBOLS)


class Alphabet:
    """Ordered set of generator names; position in ``letters`` is the order."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        for name in letters:
            if not isinstance(name, str) or not name:
                raise ValueError(f"invalid letter name {name!r}")
            if any(ch.isspace() or ch in _RESERVED for ch in name):
                raise ValueError(f"letter name {name!r} contains a reserved character")
        if len(set(letters)) != len(letters):
            raise ValueError("letter names must be unique")
        self.letters = letters
        self._index = {name: i for i, name in enumerate(letters)}

    @classmethod
    def default(cls, size: int = 26) -> "Alphabet":
        if size <= 26:
            return cls(string.ascii_lowercase[:size])
        return cls(f"x{i}" for i in range(1, size + 1))

    @classmethod
    def parse(cls, spec: str) -> "Alphabet":
        """Build from a comma-separated list such as ``"a,b,c"``."""
        return cls(part.strip() for part in spec.split(",") if part.strip())

    @classmethod
    def covering(cls, letters: Iterable[str]) -> "Alphabet":
        """Smallest alphabet holding ``letters``, ordered lexicographically."""
        return cls(sorted(set(letters)))

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.letters)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownLetter(f"letter {name!r} is not in the alphabet") from None

    def key(self, name: str) -> int:
        return self.index(name)

    def compare(self, x: str, y: str) -> int:
        i, j = self.index(x), self.index(y)
        return (i > j) - (i < j)

    def first(self, n: int) -> tuple[str, ...]:
        if n > len(self.letters):
            raise ValueError(f"alphabet has only {len(self.letters)} letters")
        return self.letters[:n]


class Term:
    """A nonassociative monomial: either a ``Leaf`` or a ``Node``."""

    __slots__ = ()

    def __mul__(self, other: "Term") -> "Node":
        if not isinstance(other, Term):
            return NotImplemented
        return Node(self, other)

    def __str__(self) -> str:
        return print_term(self)


class Leaf(Term):
    __slots__ = ("letter", "_hash")

    def __init__(self, letter: str):
        object.__setattr__(self, "letter", letter)
        object.__setattr__(self, "_hash", hash(("leaf", letter)))

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Leaf) and other.letter == self.letter

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Leaf({self.letter!r})"

    @property
    def degree(self) -> int:
        return 1


class Node(Term):
    __slots__ = ("left", "right", "degree", "_hash")

    def __init__(self, left: Term, right: Term):
        if not isinstance(left, Term) or not isinstance(right, Term):
            raise TypeError("Node children must be terms")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "degree", left.degree + right.degree)
        object.__setattr__(self, "_hash", hash((left._hash, right._hash)))

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, Node)
            and other._hash == self._hash
            and other.degree == self.degree
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Node({self.left!r}, {self.right!r})"


def leaves(t: Term) -> list[str]:
    """Leaf letters from left to right."""
    out: list[str] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node.letter)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return out


def multidegree(t: Term) -> tuple[str, ...]:
    return tuple(sorted(leaves(t)))


def is_polylinear(t: Term) -> bool:
    word = leaves(t)
    return len(set(word)) == len(word)


def left_normed(letters: Sequence[str]) -> Term:
    """((x1*x2)*x3)*...; a single letter gives a leaf."""
    it = iter(letters)
    try:
        acc: Term = Leaf(next(it))
    except StopIteration:
        raise ValueError("left_normed needs at least one letter") from None
    for name in it:
        acc = Node(acc, Leaf(name))
    return acc


def right_normed(factors: Sequence[Term]) -> Term:
    """f1*(f2*(...*fk)); factors are terms."""
    if not factors:
        raise ValueError("right_normed needs at least one factor")
    acc = factors[-1]
    for f in reversed(factors[:-1]):
        acc = Node(f, acc)
    return acc


# -- text form ---------------------------------------------------------------


def print_term(t: Term) -> str:
    if isinstance(t, Leaf):
        return t.letter
    parts: list[str] = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Leaf):
            parts.append(item.letter)
        else:
            stack.extend((")", item.right, "*", item.left, "("))
    return "".join(parts)


def _tokenize(text: str):
    """Yield (kind, value, byte_offset); kind is one of ( ) * name."""
    i = 0
    byte = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            byte += len(ch.encode())
            i += 1
        elif ch in "()":
            yield ch, ch, byte
            byte += 1
            i += 1
        elif ch in PRODUCT_SYMBOLS:
            yield "*", ch, byte
            byte += len(ch.encode())
            i += 1
        else:
            j = i
            while j < n and not (text[j].isspace() or text[j] in _RESERVED):
                j += 1
            name = text[i:j]
            yield "name", name, byte
            byte += len(name.encode())
            i = j
    yield "end", "", byte


def parse_term(text: str, alphabet: Alphabet | None = None) -> Term:
    """Parse the fully parenthesized grammar.

    With ``alphabet=None`` any well-formed name is accepted.
    """
    tokens = list(_tokenize(text))
    depth = 0
    for kind, _, offset in tokens:
        if kind == "(":
            depth += 1
        elif kind == ")":
            depth -= 1
            if depth < 0:
                raise UnbalancedParens("unmatched ')'", offset)
    if depth > 0:
        raise UnbalancedParens(f"{depth} unclosed '('", tokens[-1][2])

    pos = 0

    def expect(kind):
        nonlocal pos
        k, value, offset = tokens[pos]
        if k != kind:
            shown = value or "end of input"
            raise TermSyntaxError(f"expected {kind!r}, found {shown!r}", offset)
        pos += 1
        return value

    def term() -> Term:
        nonlocal pos
        kind, value, offset = tokens[pos]
        if kind == "name":
            if alphabet is not None and value not in alphabet:
                raise UnknownLetter(f"letter {value!r} is not in the alphabet", offset)
            pos += 1
            return Leaf(value)
        if kind == "(":
            pos += 1
            left = term()
            expect("*")
            right = term()
            expect(")")
            return Node(left, right)
        shown = value or "end of input"
        raise TermSyntaxError(f"expected a letter or '(', found {shown!r}", offset)

    result = term()
    kind, value, offset = tokens[pos]
    if kind != "end":
        raise TermSyntaxError(
            f"trailing input {value!r}; products need outer parentheses", offset
        )
    return result


def term_to_json(t: Term):
    """Nested arrays: a leaf is its name, a product is [left, right]."""
    if isinstance(t, Leaf):
        return t.letter
    return [term_to_json(t.left), term_to_json(t.right)]


def term_from_json(data, alphabet: Alphabet | None = None) -> Term:
    if isinstance(data, str):
        if alphabet is not None and data not in alphabet:
            raise UnknownLetter(f"letter {data!r} is not in the alphabet")
        return Leaf(data)
    if isinstance(data, (list, tuple)) and len(data) == 2:
        return Node(term_from_json(data[0], alphabet), term_from_json(data[1], alphabet))
    raise TermSyntaxError(f"not a JSON-encoded term: {data!r}")


# -- polynomials -------------------------------------------------------------


class TermPolynomial:
    """Homogeneous linear combination of terms with rational coefficients."""

    __slots__ = ("_coeffs", "multidegree")

    def __init__(self, coeffs=None):
        clean: dict[Term, Fraction] = {}
        md = None
        for t, c in dict(coeffs or {}).items():
            if not isinstance(t, Term):
                raise TypeError(f"keys must be terms, got {t!r}")
            c = Fraction(c)
            if c == 0:
                continue
            tmd = multidegree(t)
            if md is None:
                md = tmd
            elif tmd != md:
                raise InhomogeneousPolynomial(
                    f"{print_term(t)} has multidegree {tmd}, expected {md}"
                )
            clean[t] = clean.get(t, 0) + c
        self._coeffs = {t: c for t, c in clean.items() if c != 0}
        self.multidegree = md if self._coeffs else None

    @classmethod
    def monomial(cls, t: Term, coeff=1) -> "TermPolynomial":
        return cls({t: coeff})

    def items(self) -> list[tuple[Term, Fraction]]:
        return sorted(self._coeffs.items(), key=lambda kv: print_term(kv[0]))

    def terms(self) -> list[Term]:
        return [t for t, _ in self.items()]

    def __getitem__(self, t: Term) -> Fraction:
        return self._coeffs.get(t, Fraction(0))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, Term):
            other = TermPolynomial.monomial(other)
        return isinstance(other, TermPolynomial) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def _combine(self, other, sign):
        if isinstance(other, Term):
            other = TermPolynomial.monomial(other)
        if not isinstance(other, TermPolynomial):
            return NotImplemented
        out = dict(self._coeffs)
        for t, c in other._coeffs.items():
            out[t] = out.get(t, 0) + sign * c
        return TermPolynomial(out)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return TermPolynomial({t: -c for t, c in self._coeffs.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return TermPolynomial({t: scalar * c for t, c in self._coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TermPolynomial({format_polynomial(self)})"

    def to_json(self) -> list:
        return [{"term": term_to_json(t), "coeff": str(c)} for t, c in self.items()]


def as_polynomial(x) -> TermPolynomial:
    if isinstance(x, TermPolynomial):
        return x
    if isinstance(x, Term):
        return TermPolynomial.monomial(x)
    raise TypeError(f"expected a Term or TermPolynomial, got {type(x).__name__}")


def format_polynomial(p: TermPolynomial) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for t, c in p.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = print_term(t) if mag == 1 else f"{mag}{print_term(t)}"
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def associator(a: Term, b: Term, c: Term) -> TermPolynomial:
    """(a,b,c) = a*(b*c) - (a*b)*c."""
    return TermPolynomial({Node(a, Node(b, c)): 1}) - TermPolynomial({Node(Node(a, b), c): 1})


def novikov_identity_defects(a: Term, b: Term, c: Term) -> tuple[TermPolynomial, TermPolynomial]:
    """Right-symmetry defect (a,b,c)-(a,c,b) and left-commutativity defect
    a*(b*c) - b*(a*c)."""
    right_symmetry = associator(a, b, c) - associator(a, c, b)
    left_commutativity = TermPolynomial({Node(a, Node(b, c)): 1}) - TermPolynomial(
        {Node(b, Node(a, c)): 1}
    )
    return right_symmetry, left_commutativity


# -- enumeration ---------------------------------------------------------------


@lru_cache(maxsize=None)
def tree_shapes(n: int) -> tuple:
    """All binary bracketings of n leaves as nested tuples; None marks a leaf."""
    if n < 1:
        raise ValueError("a term has at least one leaf")
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for left in tree_shapes(k):
            for right in tree_shapes(n - k):
                out.append((left, right))
    return tuple(out)


def _fill(shape, letters: Iterator[str]) -> Term:
    if shape is None:
        return Leaf(next(letters))
    left = _fill(shape[0], letters)
    return Node(left, _fill(shape[1], letters))


def enumerate_all_polylinear_terms(n: int, letters: Sequence[str] | None = None) -> list[Term]:
    """Every monomial using each of n distinct letters once: n! * Catalan(n-1)."""
    if letters is None:
        letters = Alphabet.default(n).letters
    letters = tuple(letters)
    if len(letters) != n or len(set(letters)) != n:
        raise ValueError("need exactly n distinct letters")
    return [
        _fill(shape, iter(perm))
        for shape in tree_shapes(n)
        for perm in itertools.permutations(letters)
    ]


def random_term(rng, degree: int, letters: Sequence[str]) -> Term:
    """Uniformly split bracketing with letters drawn independently from ``letters``."""
    if degree == 1:
        return Leaf(rng.choice(list(letters)))
    k = rng.randint(1, degree - 1)
    return Node(random_term(rng, k, letters), random_term(rng, degree - k, letters))


def random_polylinear_term(rng, letters: Sequence[str]) -> Term:
    letters = list(letters)
    rng.shuffle(letters)
    it = iter(letters)

    def build(d):
        if d == 1:
            return Leaf(next(it))
        k = rng.randint(1, d - 1)
        return Node(build(k), build(d - k))

    return build(len(letters))
