"""Grid-wide comparison of the constructive code operations with the exhaustive engines.

Each grid point (p, k, r, n) runs a fixed list of checks. A check reports
PASS, FAIL with the first counterexample, or SKIP when an enumeration would pass
the configured ceiling. Report lines read

    THEOREM <id> p=3,k=1,r=2,n=2 PASS
"""

import concurrent.futures
import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from functools import cached_property, reduce
from operator import mul
from typing import Callable, Optional, Sequence

import numpy
from dataclasses_json import DataClassJsonMixin
from tqdm import tqdm

from algebra.gf import FieldSpec, is_prime
from algebra.polyring import QuotientElement, divisors_of_xn_minus_1, factor_xn_minus_1
from algebra.ring_r import (
    RingSpec,
    Triple,
    idempotents,
    iter_ring,
    ring_is_idempotent,
    ring_to_triple,
    triple_to_ring,
)
from codes import cyclic, rcode
from codes.cyclic import CyclicCode
from codes.rcode import RCode, RingPolynomial
from oracle.brute_force import (
    CodewordSet,
    additive_basis,
    exhaustive_dual,
    field_alphabet,
    first_difference,
    ideal_closure,
    idempotent_census,
    is_shift_closed,
    is_unity,
    multiply_rows,
    product_set,
    set_intersection,
    set_sum,
    sets_equal,
    shift_rows,
    subring_alphabet,
    x_inverse_rows,
)
from utils.common import AlgebraError, LimitExceeded, ParseError, enumeration_limit

logger = logging.getLogger(__name__)

DEFAULT_GRID = "p=2,3,5;k=1,2;r=2,3;n=1,2,4"
DEFAULT_MAX_TRIPLES = 64
GROUP_SAMPLES = 20
SUBMODULE_SAMPLES = 4
RING_CENSUS_LIMIT = 2**12
CONSTRUCTIVE_SCAN_LIMIT = 2**12

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

FIELD_CHECKS = (
    "CYCLIC",
    "UNIQUE-IDEMPOTENT",
    "INTERSECT",
    "SUM",
    "DIM-SUM",
    "CYCLIC-DUAL",
    "DUAL-INVOLUTION",
)
RING_CHECKS = (
    "GRAY-PRODUCT",
    "CYCLIC-COMPONENTS",
    "PRESENTATIONS",
    "QUASI-CYCLIC",
    "R-DUAL",
    "DUAL-IDEMPOTENT",
    "SELF-DUAL",
)
SUITE_CHECKS = ("IDEMPOTENTS",) + FIELD_CHECKS + ("COMPONENT-IDEMPOTENTS",) + RING_CHECKS

GRID_KEYS = ("p", "k", "r", "n")


@dataclass(frozen=True)
class GridPoint(DataClassJsonMixin):
    p: int
    k: int
    r: int
    n: int

    @property
    def params(self) -> str:
        return f"p={self.p},k={self.k},r={self.r},n={self.n}"


def parse_grid(text: str) -> list[GridPoint]:
    """Parse `p=2,3,5;k=1,2;r=2,3;n=1,2,4` into grid points, in that nesting order.

    Points with gcd(r, p) != 1 or p | n are dropped. Blank text is the empty grid.
    """
    if not text.strip():
        return []
    values: dict[str, list[int]] = {}
    for part in text.split(";"):
        key, sep, rest = part.partition("=")
        key = key.strip()
        if not sep or key not in GRID_KEYS or key in values:
            raise ParseError(f"Invalid grid component {part!r}; expected one of p=, k=, r=, n=")
        try:
            values[key] = [int(v) for v in rest.split(",") if v.strip()]
        except ValueError:
            raise ParseError(f"Invalid grid values {rest!r}")
        if not values[key]:
            raise ParseError(f"No values given for {key}")
    missing = [key for key in GRID_KEYS if key not in values]
    if missing:
        raise ParseError(f"Grid is missing {', '.join(missing)}")
    if any(not is_prime(p) for p in values["p"]):
        raise ParseError(f"Grid characteristics must be prime: {values['p']}")
    if min(values["k"]) < 1 or min(values["r"]) < 2 or min(values["n"]) < 1:
        raise ParseError("Grid needs k >= 1, r >= 2 and n >= 1")

    points = []
    for p, k, r, n in itertools.product(*(values[key] for key in GRID_KEYS)):
        if math.gcd(r, p) != 1 or n % p == 0:
            logger.debug(f"Dropping grid point p={p},k={k},r={r},n={n}")
            continue
        points.append(GridPoint(p, k, r, n))
    return points


@dataclass
class CheckResult(DataClassJsonMixin):
    theorem: str
    params: str
    status: str = PASS
    counterexample: Optional[str] = None
    detail: Optional[str] = None
    cases: int = 0
    point_index: int = 0

    def to_line(self) -> str:
        line = f"THEOREM {self.theorem} {self.params} {self.status}"
        if self.status == FAIL and self.counterexample:
            line += f" {self.counterexample}"
        return line


@dataclass
class SuiteReport(DataClassJsonMixin):
    grid: str
    seed: int
    max_triples: int
    shard_id: int = 0
    shard_ct: int = 1
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.status != FAIL for result in self.results)

    def count(self, status: str) -> int:
        return sum(1 for result in self.results if result.status == status)

    def to_text(self) -> str:
        return "".join(result.to_line() + "\n" for result in self.results)


@dataclass
class _TripleData:
    code: RCode
    gray: CodewordSet
    words: CodewordSet
    dual: Optional[CodewordSet] = None


class PointVerifier:
    """Runs every check at one grid point; not shared between threads."""

    def __init__(
        self,
        point: GridPoint,
        index: int = 0,
        seed: int = 0,
        max_triples: int = DEFAULT_MAX_TRIPLES,
        limit: Optional[int] = None,
    ):
        self.point = point
        self.n = point.n
        self.rng = random.Random(f"{seed}:{point.params}")
        self.max_triples = max_triples
        self.limit = enumeration_limit(limit)
        self.outcomes = {
            check_id: CheckResult(check_id, point.params, point_index=index)
            for check_id in SUITE_CHECKS
        }
        self._field_duals: dict[int, CodewordSet] = {}
        self._enumerated: dict[CyclicCode, CodewordSet] = {}
        self._current: Optional[tuple[tuple[int, ...], _TripleData]] = None
        self._submodules_checked = 0

    def run(self) -> list[CheckResult]:
        self._run_cases("IDEMPOTENTS", self.check_idempotents, [None])
        q = self.point.p**self.point.k
        if q**self.n > self.limit:
            self._skip(
                FIELD_CHECKS + ("COMPONENT-IDEMPOTENTS",) + RING_CHECKS,
                f"F^n has {q**self.n} vectors, above the limit {self.limit}",
            )
            return self._results()

        codes = range(len(self._cases(FIELD_CHECKS + RING_CHECKS, lambda: self.codes)))
        self._run_cases("CYCLIC", self.check_cyclic, codes)
        self._run_cases("UNIQUE-IDEMPOTENT", self.check_unique_idempotent, codes)
        groups = self._cases(("INTERSECT", "SUM", "DIM-SUM"), lambda: self.groups)
        self._run_cases("INTERSECT", self.check_intersect, groups)
        self._run_cases("SUM", self.check_sum, groups)
        self._run_cases("DIM-SUM", self.check_dim_sum, groups)
        self._run_cases("CYCLIC-DUAL", self.check_cyclic_dual, codes)
        self._run_cases("DUAL-INVOLUTION", self.check_dual_involution, codes)

        if q ** (3 * self.n) > self.limit or q**6 > self.limit:
            self._skip(
                ("COMPONENT-IDEMPOTENTS",) + RING_CHECKS,
                f"R^n has {q ** (3 * self.n)} vectors and R has {q**3} elements; limit {self.limit}",
            )
            return self._results()
        self._run_cases(
            "COMPONENT-IDEMPOTENTS",
            self.check_component_idempotents,
            self._cases(("COMPONENT-IDEMPOTENTS",), lambda: self.component_samples),
        )
        ring_checks: dict[str, Callable] = {
            "GRAY-PRODUCT": self.check_gray_product,
            "CYCLIC-COMPONENTS": self.check_cyclic_components,
            "PRESENTATIONS": self.check_presentations,
            "QUASI-CYCLIC": self.check_quasi_cyclic,
            "R-DUAL": self.check_r_dual,
            "DUAL-IDEMPOTENT": self.check_dual_idempotent,
            "SELF-DUAL": self.check_self_dual,
        }
        for triple in self._cases(RING_CHECKS, lambda: self.triples):
            for check_id, check in ring_checks.items():
                self._run_cases(check_id, check, [triple])
        return self._results()

    def _results(self) -> list[CheckResult]:
        return [self.outcomes[check_id] for check_id in SUITE_CHECKS]

    def _skip(self, check_ids: Sequence[str], reason: str) -> None:
        for check_id in check_ids:
            if self.outcomes[check_id].status == PASS:
                self.outcomes[check_id].status = SKIP
                self.outcomes[check_id].detail = reason

    def _cases(self, check_ids: Sequence[str], getter: Callable) -> list:
        """Case list shared by several checks; a failure to build it is theirs."""
        try:
            return list(getter())
        except LimitExceeded as exc:
            self._skip(check_ids, exc.message)
        except (AlgebraError, AssertionError) as exc:
            for check_id in check_ids:
                outcome = self.outcomes[check_id]
                if outcome.status == PASS:
                    outcome.status = FAIL
                    outcome.counterexample = f"{type(exc).__name__}: {exc}"
        return []

    def _run_cases(self, check_id: str, check: Callable, cases) -> None:
        outcome = self.outcomes[check_id]
        for case in cases:
            if outcome.status != PASS:
                return
            try:
                counterexample = check(case)
            except LimitExceeded as exc:
                outcome.status, outcome.detail = SKIP, exc.message
                return
            except (AlgebraError, AssertionError) as exc:
                counterexample = f"{type(exc).__name__}: {exc}"
            outcome.cases += 1
            if counterexample:
                outcome.status = FAIL
                outcome.counterexample = " ".join(str(counterexample).split())
                logger.info(f"{check_id} {self.point.params} FAIL: {outcome.counterexample}")

    # Shared data

    @cached_property
    def ring(self) -> RingSpec:
        return RingSpec.create(self.point.p, self.point.k, self.point.r)

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @cached_property
    def field_alphabet(self):
        return field_alphabet(self.field)

    @cached_property
    def ring_alphabet(self):
        return subring_alphabet(self.ring, self.limit)

    @cached_property
    def codes(self) -> list[CyclicCode]:
        divisors = divisors_of_xn_minus_1(self.n, self.field, self.limit)
        return [CyclicCode.from_generator(g, self.n) for g in divisors]

    @cached_property
    def closures(self) -> list[CodewordSet]:
        """<g> for every divisor, by ideal closure over F."""
        return [
            ideal_closure(self.field_alphabet, self.n, self._quotient_row(c.generator), self.limit)
            for c in self.codes
        ]

    @cached_property
    def census(self) -> CodewordSet:
        return idempotent_census(self.field_alphabet, self.n, self.limit)

    @cached_property
    def groups(self) -> list[tuple[int, ...]]:
        """Every pair of divisors plus a sample of triples."""
        indices = range(len(self.codes))
        pairs = list(itertools.combinations_with_replacement(indices, 2))
        triples = list(itertools.combinations_with_replacement(indices, 3))
        return pairs + self._sample(triples, GROUP_SAMPLES)

    @cached_property
    def triples(self) -> list[tuple[int, ...]]:
        return self._sample(list(itertools.product(range(len(self.codes)), repeat=3)), self.max_triples)

    @cached_property
    def triple_index(self) -> numpy.ndarray:
        """triple_index[s, t, u] is the subring index of e1*s + e2*t + e3*u."""
        elements = self.field_alphabet.elements
        q = len(elements)
        table = numpy.empty((q, q, q), dtype=numpy.int64)
        for (i, s), (j, t), (l, u) in itertools.product(enumerate(elements), repeat=3):
            table[i, j, l] = self.ring_alphabet.index(triple_to_ring(Triple(s, t, u), self.ring))
        return table

    @cached_property
    def component_index(self) -> numpy.ndarray:
        """component_index[x] holds the field indices of the (s, t, u) of x."""
        return numpy.array(
            [
                [self.field_alphabet.index(c) for c in ring_to_triple(x)]
                for x in self.ring_alphabet.elements
            ],
            dtype=numpy.int64,
        ).reshape(-1, 3)

    @cached_property
    def component_samples(self) -> list[tuple[numpy.ndarray, ...]]:
        """Triples of F[x]/(x^n - 1) elements, each an idempotent or a random vector."""
        q = self.field_alphabet.size
        census = self.census.words
        samples = []
        for _ in range(self.max_triples):
            parts = []
            for _ in range(3):
                if self.rng.random() < 0.5:
                    parts.append(census[self.rng.randrange(len(census))])
                else:
                    parts.append(numpy.array([self.rng.randrange(q) for _ in range(self.n)]))
            samples.append(tuple(parts))
        return samples

    def _sample(self, population: list, count: int) -> list:
        if len(population) <= count:
            return population
        return sorted(self.rng.sample(population, count))

    def _quotient_row(self, poly) -> numpy.ndarray:
        return self.field_alphabet.encode(QuotientElement(self.n, poly).to_vector())

    def _ring_row(self, poly: RingPolynomial) -> numpy.ndarray:
        return self.ring_alphabet.encode(poly.to_vector(self.n))

    def _one_minus(self, alphabet, row: numpy.ndarray) -> numpy.ndarray:
        one = numpy.full(self.n, alphabet.zero)
        one[0] = alphabet.one
        return alphabet.add[one, alphabet.neg[row]]

    def _enumerate(self, code: CyclicCode) -> CodewordSet:
        if code not in self._enumerated:
            self._enumerated[code] = CodewordSet.from_vectors(
                self.field_alphabet, self.n, code.enumerate_codewords(self.limit)
            )
        return self._enumerated[code]

    def _field_dual(self, i: int) -> CodewordSet:
        if i not in self._field_duals:
            self._field_duals[i] = exhaustive_dual(self.closures[i], self.limit)
        return self._field_duals[i]

    def _census_unities(self, s: CodewordSet) -> list[numpy.ndarray]:
        return [row for row in self.census.words if is_unity(s, row)]

    def _dimension(self, s: CodewordSet) -> int:
        q = self.field_alphabet.size
        d = round(math.log(len(s), q))
        assert q**d == len(s), f"Set of size {len(s)} is not a power of {q}"
        return d

    def _describe(self, s: CodewordSet, row: Optional[numpy.ndarray]) -> str:
        return "" if row is None else s.alphabet.format_row(row).replace(" ", ",")

    def _rcode_words(self, code: RCode) -> tuple[CodewordSet, CodewordSet]:
        """phi(C) over F and C over the subring, from the constructive enumeration."""
        n = self.n
        gray_rows = numpy.array(
            [self.field_alphabet.encode(rcode.gray_map(w)) for w in code.enumerate_codewords(self.limit)],
            dtype=numpy.int64,
        ).reshape(-1, 3 * n)
        gray = CodewordSet(self.field_alphabet, 3 * n, gray_rows)
        ring_rows = self.triple_index[gray_rows[:, :n], gray_rows[:, n : 2 * n], gray_rows[:, 2 * n :]]
        return gray, CodewordSet(self.ring_alphabet, n, ring_rows)

    def _triple_data(self, triple: tuple[int, ...]) -> _TripleData:
        if self._current is None or self._current[0] != triple:
            code = rcode.build(self.ring, *(self.codes[i] for i in triple))
            gray, words = self._rcode_words(code)
            self._current = (triple, _TripleData(code, gray, words))
        return self._current[1]

    def _ring_dual(self, data: _TripleData) -> CodewordSet:
        if data.dual is None:
            data.dual = exhaustive_dual(data.words, self.limit)
        return data.dual

    # Checks. Each returns None or a counterexample.

    def check_idempotents(self, _) -> Optional[str]:
        """e_i nonzero idempotents, pairwise orthogonal, summing to 1; census when r = 2."""
        ring = self.ring
        basis = idempotents(ring)
        for i, e in enumerate(basis):
            if e.is_zero or not ring_is_idempotent(e):
                return f"e{i + 1}={e}"
        for i, j in itertools.combinations(range(3), 2):
            product = basis[i] * basis[j]
            if not product.is_zero:
                return f"e{i + 1}*e{j + 1}={product}"
        total = reduce(lambda a, b: a + b, basis)
        if total != ring.one:
            return f"e1+e2+e3={total}"
        if ring.r == 2 and ring.size <= RING_CENSUS_LIMIT:
            found = {x for x in iter_ring(ring, self.limit) if ring_is_idempotent(x)}
            expected = {
                reduce(lambda a, b: a + b, subset, ring.zero)
                for size in range(4)
                for subset in itertools.combinations(basis, size)
            }
            if found != expected:
                odd = min(found ^ expected, key=lambda x: x.sort_key)
                return f"idempotent census of {ring} differs at {odd}"
        return None

    def check_cyclic(self, i: int) -> Optional[str]:
        """The enumerated code equals <g> and is closed under the shift."""
        code = self.codes[i]
        words = self._enumerate(code)
        if not sets_equal(words, self.closures[i]):
            return f"{code} {self._describe(words, first_difference(words, self.closures[i]))}"
        if len(words) != code.cardinality or not is_shift_closed(words):
            return f"{code} has {len(words)} codewords or is not shift-closed"
        return None

    def check_unique_idempotent(self, i: int) -> Optional[str]:
        """Exactly one idempotent of the quotient is a unity of each code."""
        if i == 0:
            m = len(factor_xn_minus_1(self.n, self.field, self.limit))
            if len(self.census) != 2**m:
                return f"{len(self.census)} idempotents modulo x^{self.n}-1, expected 2^{m}"
        code = self.codes[i]
        unities = self._census_unities(self.closures[i])
        expected = self._quotient_row(code.generating_idempotent.poly)
        if len(unities) != 1 or not numpy.array_equal(unities[0], expected):
            found = ";".join(self._describe(self.census, row) for row in unities)
            return f"{code} unities [{found}] generating idempotent {code.generating_idempotent}"
        return None

    def check_intersect(self, group: tuple[int, ...]) -> Optional[str]:
        """lcm generator and product idempotent against the set intersection."""
        codes = [self.codes[i] for i in group]
        result = cyclic.intersect(codes)
        oracle = reduce(set_intersection, (self.closures[i] for i in group))
        words = self._enumerate(result)
        if not sets_equal(words, oracle):
            return f"intersection of {', '.join(map(str, codes))} gave {result}"
        product = reduce(mul, (c.generating_idempotent for c in codes))
        if not is_unity(oracle, self._quotient_row(product.poly)):
            return f"product idempotent {product} is not a unity of {result}"
        return None

    def check_sum(self, group: tuple[int, ...]) -> Optional[str]:
        """gcd generator and inclusion-exclusion idempotent against the set sum."""
        codes = [self.codes[i] for i in group]
        result = cyclic.sum_codes(codes)
        oracle = reduce(lambda a, b: set_sum(a, b, self.limit), (self.closures[i] for i in group))
        words = self._enumerate(result)
        if not sets_equal(words, oracle):
            return f"sum of {', '.join(map(str, codes))} gave {result}"
        combined = cyclic.inclusion_exclusion_idempotent([c.generating_idempotent for c in codes])
        if not is_unity(oracle, self._quotient_row(combined.poly)):
            return f"inclusion-exclusion idempotent {combined} is not a unity of {result}"
        return None

    def check_dim_sum(self, group: tuple[int, ...]) -> Optional[str]:
        codes = [self.codes[i] for i in group]
        if not cyclic.dim_inclusion_exclusion_check(codes):
            return f"dimension inclusion-exclusion fails for {', '.join(map(str, codes))}"
        sets = [self.closures[i] for i in group]
        alternating = 0
        for size in range(1, len(sets) + 1):
            for subset in itertools.combinations(sets, size):
                sign = 1 if size % 2 else -1
                alternating += sign * self._dimension(reduce(set_intersection, subset))
        total = self._dimension(reduce(lambda a, b: set_sum(a, b, self.limit), sets))
        if total != alternating:
            return f"enumerated dim {total} != {alternating} for {', '.join(map(str, codes))}"
        return None

    def check_cyclic_dual(self, i: int) -> Optional[str]:
        """Reciprocal generator and 1 - e(x^-1) against the exhaustive complement."""
        code = self.codes[i]
        result = cyclic.dual(code)
        oracle = self._field_dual(i)
        words = self._enumerate(result)
        if not sets_equal(words, oracle):
            return f"dual of {code} gave {result}, differs at {self._describe(oracle, first_difference(words, oracle))}"
        own = self._census_unities(self.closures[i])
        dual_unities = self._census_unities(oracle)
        if len(own) != 1 or len(dual_unities) != 1:
            return f"{code}: {len(own)} and {len(dual_unities)} unities"
        expected = self._one_minus(self.field_alphabet, x_inverse_rows(own[0]))
        if not numpy.array_equal(dual_unities[0], expected):
            return f"dual idempotent of {code} is {self._describe(oracle, dual_unities[0])}"
        if not numpy.array_equal(self._quotient_row(result.generating_idempotent.poly), expected):
            return f"{result} has generating idempotent {result.generating_idempotent}"
        return None

    def check_dual_involution(self, i: int) -> Optional[str]:
        code = self.codes[i]
        twice = cyclic.dual(cyclic.dual(code))
        if twice != code:
            return f"dual of dual of {code} is {twice}"
        if cyclic.dual(code).dimension + code.dimension != self.n:
            return f"dimensions of {code} and its dual do not add up to {self.n}"
        back = exhaustive_dual(self._field_dual(i), self.limit)
        if not sets_equal(back, self.closures[i]):
            return f"exhaustive double dual of {code} differs"
        return None

    def check_component_idempotents(self, parts: tuple[numpy.ndarray, ...]) -> Optional[str]:
        """e1*f1 + e2*f2 + e3*f3 is idempotent exactly when every f_i is."""
        ring_row = self.triple_index[parts[0], parts[1], parts[2]]
        combined = numpy.array_equal(multiply_rows(self.ring_alphabet, ring_row, ring_row), ring_row)
        each = all(
            numpy.array_equal(multiply_rows(self.field_alphabet, f, f), f) for f in parts
        )
        quotients = [
            QuotientElement.from_vector(self.field, self.field_alphabet.decode(f)) for f in parts
        ]
        constructive = rcode.combined_idempotent_check(self.ring, quotients)
        if combined != each or constructive != (combined, each):
            return f"f=({', '.join(map(str, quotients))}) combined {combined} components {each}"
        return None

    def check_gray_product(self, triple: tuple[int, ...]) -> Optional[str]:
        """phi(C) = C1 (x) C2 (x) C3 and |C| = |C1||C2||C3|."""
        data = self._triple_data(triple)
        parts = [self.closures[i] for i in triple]
        product = product_set(parts, self.limit)
        if not sets_equal(data.gray, product):
            row = first_difference(data.gray, product)
            return f"{data.code} gray image differs at {self._describe(product, row)}"
        sizes = reduce(mul, (len(p) for p in parts))
        if not len(data.words) == data.code.cardinality == sizes:
            return f"{data.code}: {len(data.words)} codewords, cardinality {data.code.cardinality}, components {sizes}"
        return None

    def check_cyclic_components(self, triple: tuple[int, ...]) -> Optional[str]:
        """C is shift-closed; shift-closed submodules split into cyclic components."""
        data = self._triple_data(triple)
        if not is_shift_closed(data.words):
            return f"{data.code} is not shift-closed"
        if self._submodules_checked >= SUBMODULE_SAMPLES:
            return None
        self._submodules_checked += 1
        alphabet = self.ring_alphabet
        seed_row = numpy.array([self.rng.randrange(alphabet.size) for _ in range(self.n)])
        module = ideal_closure(alphabet, self.n, seed_row, self.limit)
        components = self.component_index[module.words]
        sizes = []
        for c in range(3):
            part = CodewordSet(self.field_alphabet, self.n, components[..., c])
            closure = ideal_closure(self.field_alphabet, self.n, additive_basis(part, self.limit), self.limit)
            if not sets_equal(part, closure):
                return f"component {c + 1} of <{self._describe(module, seed_row)}> is not cyclic"
            sizes.append(len(part))
        if len(module) != reduce(mul, sizes):
            return f"<{self._describe(module, seed_row)}> is not the product of its components"
        return None

    def check_presentations(self, triple: tuple[int, ...]) -> Optional[str]:
        """<e_i g_i>, <g> and <e> all enumerate to C, of size q^(3n - sum deg g_i)."""
        data = self._triple_data(triple)
        code = data.code
        presentations = {
            "e_i*g_i": [self._ring_row(g) for g in rcode.generators_over_r(code)],
            "g": [self._ring_row(rcode.single_generator(code))],
            "e": [self._ring_row(rcode.idempotent_over_r(code))],
        }
        for name, rows in presentations.items():
            closure = ideal_closure(self.ring_alphabet, self.n, numpy.array(rows), self.limit)
            if not sets_equal(closure, data.words):
                row = first_difference(closure, data.words)
                return f"<{name}> of {code} differs at {self._describe(closure, row)}"
        degrees = sum(len(c.generator.coeffs) - 1 for c in code.components)
        if len(data.words) != self.field.order ** (3 * self.n - degrees):
            return f"{code} has {len(data.words)} codewords"
        return None

    def check_quasi_cyclic(self, triple: tuple[int, ...]) -> Optional[str]:
        """phi(C) is invariant under shifting its three blocks together."""
        data = self._triple_data(triple)
        n = self.n
        rows = data.gray.words
        shifted = numpy.concatenate(
            [shift_rows(rows[:, b * n : (b + 1) * n]) for b in range(3)], axis=1
        )
        if not data.gray.contains_rows(shifted).all():
            return f"gray image of {data.code} is not block-shift invariant"
        if data.code.cardinality <= CONSTRUCTIVE_SCAN_LIMIT and not rcode.is_quasi_cyclic_order3(data.code):
            return f"{data.code} reported not quasi-cyclic"
        return None

    def check_r_dual(self, triple: tuple[int, ...]) -> Optional[str]:
        """Componentwise dual against the exhaustive complement in R^n; |C||C^perp| = q^3n."""
        data = self._triple_data(triple)
        oracle = self._ring_dual(data)
        result = rcode.dual(data.code)
        _, words = self._rcode_words(result)
        if not sets_equal(words, oracle):
            row = first_difference(words, oracle)
            return f"dual of {data.code} gave {result}, differs at {self._describe(oracle, row)}"
        if len(data.words) * len(oracle) != self.field.order ** (3 * self.n):
            return f"|C||C^perp| = {len(data.words) * len(oracle)} for {data.code}"
        return None

    def check_dual_idempotent(self, triple: tuple[int, ...]) -> Optional[str]:
        data = self._triple_data(triple)
        oracle = self._ring_dual(data)
        e = rcode.dual_idempotent(data.code)
        row = self._ring_row(e)
        if not numpy.array_equal(multiply_rows(self.ring_alphabet, row, row), row):
            return f"dual idempotent {e} of {data.code} is not idempotent"
        if not is_unity(oracle, row):
            return f"dual idempotent {e} is not a unity of the dual of {data.code}"
        expected = rcode.idempotent_over_r(rcode.dual(data.code))
        if e != expected:
            return f"dual idempotent {e} != {expected}"
        return None

    def check_self_dual(self, triple: tuple[int, ...]) -> Optional[str]:
        """C self-dual iff every component is, by enumeration and constructively."""
        data = self._triple_data(triple)
        enumerated = sets_equal(data.words, self._ring_dual(data))
        components = all(sets_equal(self.closures[i], self._field_dual(i)) for i in triple)
        constructive = rcode.is_self_dual(data.code)
        if not enumerated == components == constructive:
            return f"{data.code}: enumerated {enumerated}, components {components}, constructive {constructive}"
        return None


def verify_code(code: RCode, seed: int = 0, limit: Optional[int] = None) -> list[CheckResult]:
    """The suite restricted to one code, its components and their pairwise combinations."""
    point = GridPoint(code.field.p, code.field.k, code.ring.r, code.n)
    verifier = PointVerifier(point, seed=seed, limit=limit)
    verifier.ring = code.ring
    verifier.codes = list(code.components)
    verifier.groups = [(0, 1), (0, 2), (1, 2), (0, 1, 2)]
    verifier.triples = [(0, 1, 2)]
    return verifier.run()


def shard_points(
    points: Sequence[GridPoint], shard_id: int = 0, shard_ct: int = 1
) -> list[tuple[int, GridPoint]]:
    """Every shard_ct-th grid point starting at shard_id, with its grid index."""
    if shard_ct < 1 or not 0 <= shard_id < shard_ct:
        raise ParseError(f"Invalid shard {shard_id} of {shard_ct}")
    return list(enumerate(points))[shard_id::shard_ct]


def verify_theorem_suite(
    points: Sequence[GridPoint],
    seed: int = 0,
    workers: int = 4,
    max_triples: int = DEFAULT_MAX_TRIPLES,
    limit: Optional[int] = None,
    shard_id: int = 0,
    shard_ct: int = 1,
    grid_text: str = "",
    show_progress: bool = False,
) -> SuiteReport:
    """Run every check over the (sharded) grid; results keep grid order."""
    selected = shard_points(points, shard_id, shard_ct)
    report = SuiteReport(
        grid=grid_text, seed=seed, max_triples=max_triples, shard_id=shard_id, shard_ct=shard_ct
    )
    if not selected:
        return report

    def run_point(item: tuple[int, GridPoint]) -> list[CheckResult]:
        index, point = item
        logger.debug(f"Verifying {point.params}")
        return PointVerifier(point, index, seed, max_triples, limit).run()

    effective_workers = max(1, min(workers, len(selected)))
    with concurrent.futures.ThreadPoolExecutor(max_workers=effective_workers) as executor:
        per_point = list(
            tqdm(
                executor.map(run_point, selected),
                total=len(selected),
                desc="Verifying grid points",
                disable=not show_progress,
            )
        )
    for results in per_point:
        report.results.extend(results)
    logger.info(
        f"{len(report.results)} checks: {report.count(PASS)} pass, "
        f"{report.count(FAIL)} fail, {report.count(SKIP)} skip"
    )
    return report
