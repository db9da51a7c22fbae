"""Finite rings as dense Cayley tables.

Rings here are not assumed commutative or unital.  Element indices run
0..order-1 and index 0 is always the additive identity, so arithmetic is
total table lookup.  Every constructor validates the complete set of ring
axioms exhaustively (the O(order^3) associativity/distributivity scans are
vectorised with numpy), which is cheap at the intended scale of orders up
to about 64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteRing",
    "RingInvariants",
    "SubsetMask",
    "Embedding",
    "LocalFactor",
    "AxiomViolation",
    "InvalidEmbedding",
    "UnsupportedStructureError",
    "make_zn",
    "make_quotient",
    "make_product",
    "make_table_ring",
    "make_zero_mul_ring",
    "analyze",
    "validate_ring",
    "local_decomposition",
    "residue_field",
    "embed",
    "identity_embedding",
    "element_additive_order",
    "element_nilpotency_index",
    "multiplicative_order",
    "multiplicative_inverse",
    "invariant_signature",
    "rings_isomorphic",
]


class AxiomViolation(ValueError):
    """A Cayley table failed a ring axiom.

    Carries the axiom name and a witness tuple of element indices that can
    be re-checked directly against the offending tables.
    """

    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"ring axiom {axiom!r} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class InvalidEmbedding(ValueError):
    def __init__(self, reason: str, witness=None):
        msg = reason if witness is None else f"{reason} at {witness}"
        super().__init__(msg)
        self.reason = reason
        self.witness = witness


class UnsupportedStructureError(ValueError):
    """The operation needs structure (unity, commutativity, locality) the ring lacks."""


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite ring given by its addition and multiplication tables.

    Tables are tuples of tuples of element indices.  ``unity`` is None for
    non-unital rings.  Instances compare by identity; use
    :func:`invariant_signature` / :func:`rings_isomorphic` for structural
    comparison.
    """

    order: int
    add_table: tuple
    mul_table: tuple
    neg_table: tuple
    unity: int | None
    label: str
    zero: int = 0

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def pow(self, a: int, k: int) -> int:
        """a^k for k >= 1 (k = 0 needs unity)."""
        if k == 0:
            if self.unity is None:
                raise UnsupportedStructureError("a^0 undefined without unity")
            return self.unity
        if k < 0:
            raise ValueError("negative exponents are not defined")
        result = None
        base = a
        while k:
            if k & 1:
                result = base if result is None else self.mul_table[result][base]
            k >>= 1
            if k:
                base = self.mul_table[base][base]
        return result

    def elements(self) -> range:
        return range(self.order)

    @property
    def is_unital(self) -> bool:
        return self.unity is not None

    def __repr__(self) -> str:
        return f"FiniteRing({self.label!r}, order={self.order})"


@dataclass(frozen=True)
class SubsetMask:
    """A subset of a ring's elements as a bitmask over element indices."""

    ring: FiniteRing
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.ring.order):
            raise ValueError("mask wider than the ring")

    @classmethod
    def from_indices(cls, ring: FiniteRing, ids: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in ids:
            if not 0 <= i < ring.order:
                raise ValueError(f"element index {i} out of range")
            bits |= 1 << i
        return cls(ring, bits)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.ring.order) if self.bits >> i & 1)

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.ring.order and bool(self.bits >> i & 1)

    def __iter__(self):
        return iter(self.indices())

    @property
    def size(self) -> int:
        return self.bits.bit_count()


@dataclass(frozen=True)
class Embedding:
    """A validated injective ring homomorphism small -> big."""

    small: FiniteRing
    big: FiniteRing
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]


@dataclass(frozen=True)
class LocalFactor:
    """One local factor e*R of a decomposition, with the projection x -> e*x."""

    idempotent: int
    ring: FiniteRing
    projection: tuple[int, ...]


@dataclass(frozen=True)
class RingInvariants:
    """Structural invariants computed by exhaustive scans.

    Unit-dependent fields are None for non-unital rings rather than being
    fabricated.  ``zero_dimensional`` is constantly True: every prime ideal
    of a finite ring is maximal, so there is nothing to compute.
    """

    is_commutative: bool
    is_unital: bool
    is_field: bool
    characteristic: int
    idempotents: SubsetMask
    nilpotents: SubsetMask
    nilpotency_index: int
    units: SubsetMask | None
    unit_group_exponent: int | None
    jacobson_radical: SubsetMask | None
    is_local: bool | None
    residue_field_order: int | None
    zero_dimensional: bool = True


# ---------------------------------------------------------------------------
# validation and construction
# ---------------------------------------------------------------------------

def _np_table(table, n: int, what: str) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.shape != (n, n):
        raise ValueError(f"{what} table must be {n}x{n}")
    if arr.min() < 0 or arr.max() >= n:
        raise AxiomViolation(f"{what}-closure", tuple(np.argwhere((arr < 0) | (arr >= n))[0]))
    return arr


def validate_ring(ring: FiniteRing) -> None:
    """Exhaustively re-check every ring axiom; raises AxiomViolation on failure."""
    n = ring.order
    A = _np_table(ring.add_table, n, "addition")
    M = _np_table(ring.mul_table, n, "multiplication")

    if not np.array_equal(A, A.T):
        a, b = np.argwhere(A != A.T)[0]
        raise AxiomViolation("additive-commutativity", (int(a), int(b)))
    idx = np.arange(n)
    if not (np.array_equal(A[0], idx) and np.array_equal(A[:, 0], idx)):
        raise AxiomViolation("additive-identity", (0,))
    neg = np.asarray(ring.neg_table, dtype=np.int64)
    if neg.shape != (n,):
        raise ValueError("neg_table must have one entry per element")
    if not np.array_equal(A[idx, neg], np.zeros(n, dtype=np.int64)):
        raise AxiomViolation("additive-inverse", (int(np.argwhere(A[idx, neg] != 0)[0][0]),))

    # O(n^3) scans, one n^2 slab per leading element.
    for a in range(n):
        left = A[A[a]]            # (b,c) -> (a+b)+c
        right = A[a][A]           # (b,c) -> a+(b+c)
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise AxiomViolation("additive-associativity", (a, int(b), int(c)))
        left = M[M[a]]            # (a*b)*c
        right = M[a][M]           # a*(b*c)
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise AxiomViolation("associativity", (a, int(b), int(c)))
        left = M[a][A]            # a*(b+c)
        right = A[M[a][:, None], M[a][None, :]]   # a*b + a*c
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise AxiomViolation("left-distributivity", (a, int(b), int(c)))
        col = M[:, a]
        left = col[A]             # (b+c)*a
        right = A[col[:, None], col[None, :]]     # b*a + c*a
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise AxiomViolation("right-distributivity", (a, int(b), int(c)))

    if ring.unity is not None:
        u = ring.unity
        if not (np.array_equal(M[u], idx) and np.array_equal(M[:, u], idx)):
            raise AxiomViolation("unity", (u,))


def _detect_unity(mul: Sequence[Sequence[int]], n: int) -> int | None:
    for u in range(n):
        if all(mul[u][x] == x and mul[x][u] == x for x in range(n)):
            return u
    return None


def _freeze(table) -> tuple:
    return tuple(tuple(int(v) for v in row) for row in table)


def _build(add, mul, label: str) -> FiniteRing:
    add = _freeze(add)
    mul = _freeze(mul)
    n = len(add)
    if n < 1 or any(len(row) != n for row in add) or len(mul) != n or any(len(row) != n for row in mul):
        raise ValueError("tables must be square matrices of equal size")
    # Locate the additive identity before anything else; it must sit at index 0.
    identity = None
    for e in range(n):
        if all(add[e][x] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise AxiomViolation("additive-identity", ())
    if identity != 0:
        raise ValueError(f"additive identity must be element 0, found it at index {identity}")
    neg = []
    for a in range(n):
        inv = next((b for b in range(n) if add[a][b] == 0), None)
        if inv is None:
            raise AxiomViolation("additive-inverse", (a,))
        neg.append(inv)
    ring = FiniteRing(
        order=n,
        add_table=add,
        mul_table=mul,
        neg_table=tuple(neg),
        unity=_detect_unity(mul, n),
        label=label,
    )
    validate_ring(ring)
    return ring


def make_zn(n: int, label: str | None = None) -> FiniteRing:
    """The ring of integers modulo n."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {n}")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return _build(add, mul, label or f"Z/{n}")


def make_table_ring(add, mul, label: str = "table-ring") -> FiniteRing:
    """Build a ring from raw Cayley tables; unity is auto-detected."""
    return _build(add, mul, label)


def make_zero_mul_ring(n: int) -> FiniteRing:
    """The non-unital ring on the additive group Z/n whose product is identically zero."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"order must be an integer >= 2, got {n}")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[0] * n for _ in range(n)]
    return _build(add, mul, f"zero-ring-{n}")


def make_product(r1: FiniteRing, r2: FiniteRing, label: str | None = None) -> FiniteRing:
    """Componentwise product ring; element (i, j) is packed as i*|r2| + j."""
    n1, n2 = r1.order, r2.order
    n = n1 * n2
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            a = a1 * n2 + a2
            for b1 in range(n1):
                ra, rm = r1.add_table[a1][b1], r1.mul_table[a1][b1]
                for b2 in range(n2):
                    b = b1 * n2 + b2
                    add[a][b] = ra * n2 + r2.add_table[a2][b2]
                    mul[a][b] = rm * n2 + r2.mul_table[a2][b2]
    return _build(add, mul, label or f"{r1.label} x {r2.label}")


def _modulus_coeffs(base: FiniteRing, modulus) -> tuple[int, ...]:
    coeffs = getattr(modulus, "coeffs", modulus)
    if getattr(modulus, "ring", base) is not base:
        raise ValueError("modulus polynomial is defined over a different ring")
    coeffs = tuple(int(c) for c in coeffs)
    if any(not 0 <= c < base.order for c in coeffs):
        raise ValueError("modulus coefficients must be element indices of the base ring")
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return coeffs


def make_quotient(base: FiniteRing, modulus, label: str | None = None) -> FiniteRing:
    """base[x]/(modulus) with polynomial-remainder arithmetic.

    The base must be commutative and unital and the modulus monic of degree
    >= 1.  Elements are residue polynomials of degree < d, indexed mixed-radix
    with the constant coefficient least significant; a Galois field GF(p^k)
    is the special case of an irreducible modulus over Z/p.
    """
    if not base.is_unital or not analyze(base).is_commutative:
        raise UnsupportedStructureError("quotient base must be commutative and unital")
    coeffs = _modulus_coeffs(base, modulus)
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("modulus must have degree >= 1")
    if coeffs[-1] != base.unity:
        raise ValueError("modulus must be monic")

    n = base.order ** d
    radix = [base.order ** i for i in range(d)]

    def decode(i: int) -> list[int]:
        return [(i // radix[k]) % base.order for k in range(d)]

    def encode(vec: Sequence[int]) -> int:
        return sum(vec[k] * radix[k] for k in range(d))

    def reduce_vec(vec: list[int]) -> list[int]:
        for top in range(len(vec) - 1, d - 1, -1):
            lead = vec[top]
            if lead != 0:
                shift = top - d
                for j in range(d + 1):
                    vec[shift + j] = base.sub(vec[shift + j], base.mul(lead, coeffs[j]))
        return vec[:d]

    elems = [decode(i) for i in range(n)]
    add = [[0] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for i, u in enumerate(elems):
        for j, v in enumerate(elems):
            add[i][j] = encode([base.add(u[k], v[k]) for k in range(d)])
            conv = [0] * (2 * d - 1)
            for k, uk in enumerate(u):
                if uk == 0:
                    continue
                for l, vl in enumerate(v):
                    if vl != 0:
                        conv[k + l] = base.add(conv[k + l], base.mul(uk, vl))
            mul[i][j] = encode(reduce_vec(conv) if len(conv) > d else conv + [0] * (d - len(conv)))
    return _build(add, mul, label or f"{base.label}[x]/({_poly_label(coeffs)})")


def _poly_label(coeffs: Sequence[int]) -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            var = "x" if e == 1 else f"x^{e}"
            terms.append(var if c == 1 else f"{c}{var}")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# element-level helpers
# ---------------------------------------------------------------------------

def element_additive_order(ring: FiniteRing, a: int) -> int:
    acc = a
    k = 1
    while acc != 0:
        acc = ring.add_table[acc][a]
        k += 1
    return k


def element_nilpotency_index(ring: FiniteRing, a: int) -> int | None:
    """Least k >= 1 with a^k = 0, or None if a is not nilpotent."""
    seen = set()
    p = a
    k = 1
    while p not in seen:
        if p == 0:
            return k
        seen.add(p)
        p = ring.mul_table[p][a]
        k += 1
    return None


def multiplicative_order(ring: FiniteRing, u: int) -> int:
    if ring.unity is None:
        raise UnsupportedStructureError("multiplicative order needs unity")
    p = u
    k = 1
    while p != ring.unity:
        p = ring.mul_table[p][u]
        k += 1
        if k > ring.order:
            raise ValueError(f"element {u} is not a unit")
    return k


def multiplicative_inverse(ring: FiniteRing, u: int) -> int | None:
    if ring.unity is None:
        raise UnsupportedStructureError("inverses need unity")
    for v in range(ring.order):
        if ring.mul_table[u][v] == ring.unity and ring.mul_table[v][u] == ring.unity:
            return v
    return None


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def analyze(ring: FiniteRing) -> RingInvariants:
    """Compute all structural invariants by exhaustive scan.

    Deterministic and cached per ring instance.  Locality is decided by
    additive closure of the non-units (for a finite unital ring the
    non-units absorb multiplication automatically), and the Jacobson
    radical as {x : 1 + r*x is a unit for every r}.
    """
    n = ring.order
    mul = ring.mul_table
    is_comm = all(mul[a][b] == mul[b][a] for a in range(n) for b in range(a + 1, n))
    unital = ring.unity is not None

    if unital:
        characteristic = element_additive_order(ring, ring.unity)
    else:
        characteristic = math.lcm(*(element_additive_order(ring, a) for a in range(n))) if n > 1 else 1

    idempotents = SubsetMask.from_indices(ring, (a for a in range(n) if mul[a][a] == a))
    nilp = [a for a in range(n) if element_nilpotency_index(ring, a) is not None]
    nilpotents = SubsetMask.from_indices(ring, nilp)
    nilpotency_index = max(element_nilpotency_index(ring, a) for a in nilp)

    units = unit_exp = radical = is_local = residue_order = None
    is_field = False
    if unital:
        unit_ids = [u for u in range(n) if multiplicative_inverse(ring, u) is not None]
        units = SubsetMask.from_indices(ring, unit_ids)
        unit_exp = math.lcm(*(multiplicative_order(ring, u) for u in unit_ids))
        unit_set = set(unit_ids)
        non_units = [a for a in range(n) if a not in unit_set]
        is_local = all(ring.add_table[a][b] not in unit_set for a in non_units for b in non_units)
        radical = SubsetMask.from_indices(
            ring,
            (x for x in range(n)
             if all(ring.add_table[ring.unity][mul[r][x]] in unit_set for r in range(n))),
        )
        is_field = is_comm and len(unit_ids) == n - 1
        if is_local:
            residue_order = n // len(non_units)

    return RingInvariants(
        is_commutative=is_comm,
        is_unital=unital,
        is_field=is_field,
        characteristic=characteristic,
        idempotents=idempotents,
        nilpotents=nilpotents,
        nilpotency_index=nilpotency_index,
        units=units,
        unit_group_exponent=unit_exp,
        jacobson_radical=radical,
        is_local=is_local,
        residue_field_order=residue_order,
    )


# ---------------------------------------------------------------------------
# decomposition into local factors and residue fields
# ---------------------------------------------------------------------------

def _subring_on(ring: FiniteRing, elems: list[int], label: str) -> tuple[FiniteRing, dict[int, int]]:
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[ring.add_table[a][b]] for b in elems] for a in elems]
    mul = [[index[ring.mul_table[a][b]] for b in elems] for a in elems]
    return _build(add, mul, label), index


@lru_cache(maxsize=None)
def local_decomposition(ring: FiniteRing) -> tuple[LocalFactor, ...]:
    """Split a commutative unital ring into its local factors e_i * R.

    The primitive idempotents are found by exhaustive scan: e is primitive
    when e != 0 and e*f is 0 or e for every idempotent f.  The number of
    factors equals the number of maximal (= prime) ideals.
    """
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_commutative):
        raise UnsupportedStructureError("local decomposition needs a commutative unital ring")
    idem = list(inv.idempotents.indices())
    primitive = [
        e for e in idem
        if e != 0 and all(ring.mul_table[e][f] in (0, e) for f in idem)
    ]
    factors = []
    for e in primitive:
        elems = sorted({ring.mul_table[e][r] for r in range(ring.order)})
        sub, index = _subring_on(ring, elems, f"{ring.label}|e={e}")
        if sub.unity != index[e]:
            raise AssertionError("factor unity must be the defining idempotent")
        projection = tuple(index[ring.mul_table[e][x]] for x in range(ring.order))
        factors.append(LocalFactor(idempotent=e, ring=sub, projection=projection))
    total = math.prod(f.ring.order for f in factors)
    if total != ring.order:
        raise AssertionError("local factor orders do not multiply to the ring order")
    return tuple(factors)


@lru_cache(maxsize=None)
def residue_field(ring: FiniteRing) -> tuple[FiniteRing, tuple[int, ...], tuple[int, ...]]:
    """For a local unital ring, the quotient by its maximal ideal.

    Returns (field, projection, representatives): projection[x] is the field
    index of x's coset, representatives[i] the least element index in coset i.
    """
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_local):
        raise UnsupportedStructureError("residue field needs a local unital ring")
    m = [a for a in range(ring.order) if a not in inv.units]
    rep_of = {}
    for x in range(ring.order):
        rep_of[x] = min(ring.add_table[x][z] for z in m)
    reps = sorted(set(rep_of.values()))
    pos = {r: i for i, r in enumerate(reps)}
    proj = tuple(pos[rep_of[x]] for x in range(ring.order))
    add = [[proj[ring.add_table[reps[i]][reps[j]]] for j in range(len(reps))] for i in range(len(reps))]
    mul = [[proj[ring.mul_table[reps[i]][reps[j]]] for j in range(len(reps))] for i in range(len(reps))]
    field = _build(add, mul, f"{ring.label}/m")
    if not analyze(field).is_field:
        raise AssertionError("residue ring of a local ring must be a field")
    return field, proj, tuple(reps)


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

def embed(small: FiniteRing, big: FiniteRing, mapping: Sequence[int]) -> Embedding:
    """Validate an injective homomorphism small -> big given as an index vector."""
    mp = tuple(int(v) for v in mapping)
    if len(mp) != small.order:
        raise InvalidEmbedding("map must be total on the small ring")
    if any(not 0 <= v < big.order for v in mp):
        raise InvalidEmbedding("map values out of range")
    if len(set(mp)) != small.order:
        raise InvalidEmbedding("not-injective")
    if mp[0] != 0:
        raise InvalidEmbedding("not-homomorphic", (0,))
    for a in range(small.order):
        for b in range(small.order):
            if mp[small.add_table[a][b]] != big.add_table[mp[a]][mp[b]]:
                raise InvalidEmbedding("not-homomorphic", (a, b))
            if mp[small.mul_table[a][b]] != big.mul_table[mp[a]][mp[b]]:
                raise InvalidEmbedding("not-homomorphic", (a, b))
    if small.unity is not None and big.unity is not None and mp[small.unity] != big.unity:
        raise InvalidEmbedding("not-homomorphic", (small.unity,))
    return Embedding(small=small, big=big, map=mp)


def identity_embedding(ring: FiniteRing) -> Embedding:
    return Embedding(small=ring, big=ring, map=tuple(range(ring.order)))


# ---------------------------------------------------------------------------
# structural comparison
# ---------------------------------------------------------------------------

def invariant_signature(ring: FiniteRing) -> tuple:
    """A hashable invariant vector used as an isomorphism heuristic."""
    inv = analyze(ring)
    per_elem = sorted(
        (
            element_additive_order(ring, a),
            a in inv.idempotents,
            a in inv.nilpotents,
            multiplicative_order(ring, a) if inv.units is not None and a in inv.units else 0,
        )
        for a in range(ring.order)
    )
    n_factors = None
    if inv.is_unital and inv.is_commutative:
        n_factors = len(local_decomposition(ring))
    return (
        ring.order,
        inv.is_commutative,
        inv.is_unital,
        inv.is_field,
        inv.characteristic,
        inv.idempotents.size,
        inv.nilpotents.size,
        inv.nilpotency_index,
        inv.units.size if inv.units is not None else -1,
        inv.unit_group_exponent,
        inv.is_local,
        inv.residue_field_order,
        n_factors,
        tuple(per_elem),
    )


def rings_isomorphic(r1: FiniteRing, r2: FiniteRing, search_limit: int = 8) -> bool | None:
    """Invariant comparison plus, for orders <= search_limit, exhaustive bijection search.

    Returns True/False when decided, None when the order exceeds the search
    limit and the invariants agree (full isomorphism testing is out of scope).
    """
    if invariant_signature(r1) != invariant_signature(r2):
        return False
    n = r1.order
    if n > search_limit:
        return None
    rest = [x for x in range(1, n)]
    fixed_unity = r1.unity is not None
    for perm in permutations(rest):
        mp = (0,) + perm
        if fixed_unity and mp[r1.unity] != r2.unity:
            continue
        ok = True
        for a in range(n):
            for b in range(n):
                if (mp[r1.add_table[a][b]] != r2.add_table[mp[a]][mp[b]]
                        or mp[r1.mul_table[a][b]] != r2.mul_table[mp[a]][mp[b]]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False
