"""Exhaustive engines: ideal closures, orthogonal complements and idempotent censuses.

Everything here works on index vectors over a finite `Alphabet` whose addition and
multiplication tables are filled from the element arithmetic once. Nothing calls
the constructive code operations (gcd, lcm, reciprocals, idempotent formulas).
"""

import logging
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy

from algebra.gf import FieldSpec, enumerate_field
from algebra.ring_r import RingSpec, iter_subring
from utils.common import MixedParameters, check_limit

logger = logging.getLogger(__name__)


class Alphabet:
    """A finite commutative ring given by its element list and operation tables.

    Attributes:
        name: Text form of the ring, used in reports.
        elements: Elements in index order.
        add: add[i, j] is the index of elements[i] + elements[j].
        mul: mul[i, j] is the index of elements[i] * elements[j].
        zero: Index of the additive identity.
        one: Index of the multiplicative identity.
        characteristic: Additive order of one.
    """

    def __init__(self, name: str, elements: list, zero, one, limit: Optional[int] = None):
        size = len(elements)
        check_limit(size * size, f"operation tables of {name}", limit)
        self.name = name
        self.elements = elements
        self._index = {x: i for i, x in enumerate(elements)}
        self.zero = self._index[zero]
        self.one = self._index[one]
        self.add = numpy.empty((size, size), dtype=numpy.int64)
        self.mul = numpy.empty((size, size), dtype=numpy.int64)
        for i, x in enumerate(elements):
            for j in range(i, size):
                y = elements[j]
                self.add[i, j] = self.add[j, i] = self._index[x + y]
                self.mul[i, j] = self.mul[j, i] = self._index[x * y]
        self.neg = numpy.argmax(self.add == self.zero, axis=1)
        self.characteristic = 1
        acc = self.one
        while acc != self.zero:
            acc = self.add[acc, self.one]
            self.characteristic += 1
        logger.debug(f"Alphabet {name}: {size} elements, characteristic {self.characteristic}")

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise MixedParameters(f"{x} is not an element of {self.name}")

    def encode(self, vector: Sequence) -> numpy.ndarray:
        return numpy.array([self.index(x) for x in vector], dtype=numpy.int64)

    def decode(self, row: numpy.ndarray) -> tuple:
        return tuple(self.elements[i] for i in row)

    def format_row(self, row: numpy.ndarray) -> str:
        return " ".join(str(x) for x in self.decode(row))

    def __repr__(self):
        return f"Alphabet({self.name})"


@lru_cache(maxsize=None)
def field_alphabet(spec: FieldSpec) -> Alphabet:
    return Alphabet(str(spec), enumerate_field(spec), spec.zero, spec.one)


@lru_cache(maxsize=None)
def subring_alphabet(ring: RingSpec, limit: Optional[int] = None) -> Alphabet:
    """The subring e1*F + e2*F + e3*F with tables from the arithmetic of R_r."""
    elements = list(iter_subring(ring, limit))
    return Alphabet(f"subring of {ring}", elements, ring.zero, ring.one, limit)


class CodewordSet:
    """Sorted, deduplicated index vectors of length n over an alphabet."""

    def __init__(self, alphabet: Alphabet, n: int, rows: numpy.ndarray):
        self.alphabet = alphabet
        self.n = n
        rows = numpy.asarray(rows, dtype=numpy.int64).reshape(-1, n)
        self.words = numpy.unique(rows, axis=0) if len(rows) else rows
        self._keys: Optional[numpy.ndarray] = None
        self._basis: Optional[numpy.ndarray] = None

    @classmethod
    def from_vectors(cls, alphabet: Alphabet, n: int, vectors: Iterable[Sequence]) -> "CodewordSet":
        rows = [alphabet.encode(v) for v in vectors]
        for row in rows:
            if len(row) != n:
                raise MixedParameters(f"Vector of length {len(row)} in a set of length {n}")
        return cls(alphabet, n, numpy.array(rows, dtype=numpy.int64).reshape(-1, n))

    def _encode_keys(self, rows: numpy.ndarray) -> numpy.ndarray:
        """Rows as base-|A| integers, first coordinate most significant."""
        weights = self.alphabet.size ** numpy.arange(self.n - 1, -1, -1, dtype=numpy.int64)
        return numpy.asarray(rows, dtype=numpy.int64).reshape(-1, self.n) @ weights

    @property
    def keys(self) -> numpy.ndarray:
        if self._keys is None:
            self._keys = self._encode_keys(self.words)
        return self._keys

    def contains_rows(self, rows: numpy.ndarray) -> numpy.ndarray:
        return numpy.isin(self._encode_keys(rows), self.keys)

    def __len__(self):
        return len(self.words)

    def to_vectors(self) -> list[tuple]:
        return [self.alphabet.decode(row) for row in self.words]


def _check_compatible(a: CodewordSet, b: CodewordSet) -> None:
    if a.alphabet is not b.alphabet or a.n != b.n:
        raise MixedParameters(
            f"Sets over {a.alphabet.name} length {a.n} and {b.alphabet.name} length {b.n}"
        )


def sets_equal(a: CodewordSet, b: CodewordSet) -> bool:
    _check_compatible(a, b)
    return a.words.shape == b.words.shape and bool(numpy.array_equal(a.words, b.words))


def first_difference(a: CodewordSet, b: CodewordSet) -> Optional[numpy.ndarray]:
    """A row in exactly one of the two sets, or None when they are equal."""
    _check_compatible(a, b)
    only_a = a.words[~numpy.isin(a.keys, b.keys)]
    if len(only_a):
        return only_a[0]
    only_b = b.words[~numpy.isin(b.keys, a.keys)]
    return only_b[0] if len(only_b) else None


def zero_set(alphabet: Alphabet, n: int) -> CodewordSet:
    return CodewordSet(alphabet, n, numpy.full((1, n), alphabet.zero))


def all_vectors(alphabet: Alphabet, n: int, limit: Optional[int] = None) -> numpy.ndarray:
    """All |A|^n index vectors in lexicographic order."""
    check_limit(alphabet.size**n, f"the vectors of {alphabet.name}^{n}", limit)
    flat = numpy.arange(alphabet.size**n, dtype=numpy.int64)
    return numpy.stack(numpy.unravel_index(flat, (alphabet.size,) * n), axis=1).reshape(-1, n)


def add_rows(alphabet: Alphabet, a: numpy.ndarray, b: numpy.ndarray) -> numpy.ndarray:
    return alphabet.add[a, b]


def scale_rows(alphabet: Alphabet, scalar: int, rows: numpy.ndarray) -> numpy.ndarray:
    return alphabet.mul[scalar, rows]


def shift_rows(rows: numpy.ndarray) -> numpy.ndarray:
    """sigma on every row: (c_{n-1}, c_0, ..., c_{n-2})."""
    return numpy.roll(rows, 1, axis=-1)


def x_inverse_rows(rows: numpy.ndarray) -> numpy.ndarray:
    """Coefficient j moves to position (n - j) mod n."""
    n = rows.shape[-1]
    return rows[..., [(n - i) % n for i in range(n)]]


def multiply_rows(alphabet: Alphabet, rows: numpy.ndarray, other: numpy.ndarray) -> numpy.ndarray:
    """Cyclic convolution, i.e. products in A[x]/(x^n - 1); broadcasts over leading axes."""
    n = rows.shape[-1]
    rows, other = numpy.broadcast_arrays(rows, other)
    out = numpy.full(rows.shape, alphabet.zero, dtype=numpy.int64)
    for k in range(n):
        acc = numpy.full(rows.shape[:-1], alphabet.zero, dtype=numpy.int64)
        for i in range(n):
            acc = alphabet.add[acc, alphabet.mul[rows[..., i], other[..., (k - i) % n]]]
        out[..., k] = acc
    return out


def inner_products(alphabet: Alphabet, rows: numpy.ndarray, other: numpy.ndarray) -> numpy.ndarray:
    """sum x_i y_i for every row against one vector."""
    products = alphabet.mul[rows, other]
    acc = numpy.full(rows.shape[:-1], alphabet.zero, dtype=numpy.int64)
    for i in range(rows.shape[-1]):
        acc = alphabet.add[acc, products[..., i]]
    return acc


def _multiples(alphabet: Alphabet, row: numpy.ndarray) -> list[numpy.ndarray]:
    multiples = [numpy.full_like(row, alphabet.zero)]
    for _ in range(alphabet.characteristic - 1):
        multiples.append(alphabet.add[multiples[-1], row])
    return multiples


def _extend_span(
    alphabet: Alphabet, span: CodewordSet, row: numpy.ndarray, limit: Optional[int]
) -> CodewordSet:
    check_limit(len(span) * alphabet.characteristic, f"a span in {alphabet.name}^{span.n}", limit)
    shifted = [alphabet.add[span.words, m] for m in _multiples(alphabet, row)]
    return CodewordSet(alphabet, span.n, numpy.concatenate(shifted))


def additive_span(
    alphabet: Alphabet, n: int, rows: numpy.ndarray, limit: Optional[int] = None
) -> CodewordSet:
    """The additive subgroup generated by the rows."""
    span = zero_set(alphabet, n)
    for row in numpy.asarray(rows, dtype=numpy.int64).reshape(-1, n):
        if not span.contains_rows(row)[0]:
            span = _extend_span(alphabet, span, row, limit)
    return span


def additive_basis(s: CodewordSet, limit: Optional[int] = None) -> numpy.ndarray:
    """Rows of s, greedily chosen, whose additive span contains all of s."""
    if s._basis is not None:
        return s._basis
    span = zero_set(s.alphabet, s.n)
    basis = []
    remaining = s.words
    while True:
        remaining = remaining[~span.contains_rows(remaining)]
        if not len(remaining):
            break
        basis.append(remaining[0])
        span = _extend_span(s.alphabet, span, remaining[0], limit)
    s._basis = numpy.array(basis, dtype=numpy.int64).reshape(-1, s.n)
    return s._basis


@lru_cache(maxsize=None)
def _alphabet_basis(alphabet: Alphabet) -> tuple[int, ...]:
    elements = CodewordSet(alphabet, 1, numpy.arange(alphabet.size).reshape(-1, 1))
    return tuple(int(row[0]) for row in additive_basis(elements))


def ideal_closure(
    alphabet: Alphabet, n: int, generators: numpy.ndarray, limit: Optional[int] = None
) -> CodewordSet:
    """Smallest set holding the generators, closed under +, scalars and sigma.

    Worklist fixed point: every vector that enlarges the span queues its shift and
    its products with an additive basis of the alphabet.
    """
    scalars = _alphabet_basis(alphabet)
    span = zero_set(alphabet, n)
    queue = [row for row in numpy.asarray(generators, dtype=numpy.int64).reshape(-1, n)]
    while queue:
        row = queue.pop(0)
        if span.contains_rows(row)[0]:
            continue
        span = _extend_span(alphabet, span, row, limit)
        queue.append(shift_rows(row))
        queue.extend(scale_rows(alphabet, b, row) for b in scalars)
    return span


def exhaustive_dual(s: CodewordSet, limit: Optional[int] = None) -> CodewordSet:
    """{x : sum x_i c_i = 0 for every c in s}, by scanning all of A^n."""
    alphabet = s.alphabet
    candidates = all_vectors(alphabet, s.n, limit)
    keep = numpy.ones(len(candidates), dtype=bool)
    for row in additive_basis(s, limit):
        keep &= inner_products(alphabet, candidates, row) == alphabet.zero
    return CodewordSet(alphabet, s.n, candidates[keep])


def set_intersection(a: CodewordSet, b: CodewordSet) -> CodewordSet:
    _check_compatible(a, b)
    return CodewordSet(a.alphabet, a.n, a.words[numpy.isin(a.keys, b.keys)])


def set_sum(a: CodewordSet, b: CodewordSet, limit: Optional[int] = None) -> CodewordSet:
    """{x + y}, as the additive closure of both sets."""
    _check_compatible(a, b)
    rows = numpy.concatenate([additive_basis(a, limit), additive_basis(b, limit)])
    return additive_span(a.alphabet, a.n, rows, limit)


def product_set(parts: Sequence[CodewordSet], limit: Optional[int] = None) -> CodewordSet:
    """Concatenations (x | y | ...) of one row from each part."""
    alphabet = parts[0].alphabet
    size = 1
    for part in parts:
        size *= len(part)
    check_limit(size, "a product of codeword sets", limit)
    rows = numpy.zeros((1, 0), dtype=numpy.int64)
    for part in parts:
        rows = numpy.concatenate(
            [numpy.repeat(rows, len(part), axis=0), numpy.tile(part.words, (len(rows), 1))],
            axis=1,
        )
    return CodewordSet(alphabet, sum(p.n for p in parts), rows)


def is_shift_closed(s: CodewordSet) -> bool:
    return bool(s.contains_rows(shift_rows(s.words)).all())


def is_unity(s: CodewordSet, e: numpy.ndarray) -> bool:
    """e lies in s and e*c = c for every c in s."""
    if not s.contains_rows(e)[0]:
        return False
    basis = additive_basis(s)
    return bool(numpy.array_equal(multiply_rows(s.alphabet, basis, e), basis))


def idempotent_census(alphabet: Alphabet, n: int, limit: Optional[int] = None) -> CodewordSet:
    """Every e in A[x]/(x^n - 1) with e*e = e."""
    rows = all_vectors(alphabet, n, limit)
    squares = multiply_rows(alphabet, rows, rows)
    found = CodewordSet(alphabet, n, rows[(squares == rows).all(axis=1)])
    logger.debug(f"{len(found)} idempotents in {alphabet.name}[x]/(x^{n}-1)")
    return found
