"""Executable structural checks on finite rings, one per result code.

Every check returns a :class:`Verdict` whose ``holds`` flag reports whether
the claimed equivalence or bound was confirmed, with a witness payload that
can be re-verified independently (a polynomial to re-evaluate, an element
pair to re-check, a bound with its ingredients).  ``holds=None`` means the
search was inconclusive because a function-set cap was hit; ``vacuous=True``
means a hypothesis or precondition failed, so there was nothing to refute.

Check codes:

====== =====================================================================
L1.1   reachability of every nonzero target from every nonzero point by
       zero-constant polynomials, equivalent to being a field
P1.2   every bijection induced by a polynomial, equivalent to being a field
P1.3   every subset indicator induced by a polynomial (unital rings),
       equivalent to being a field
P2.1   a subring whose nonzero elements are sent to 1 by a polynomial over
       the big ring is a finite field
L2.2   the shift-by-nilpotent power identity (b+c)^(sN) = b^(sN) with the
       exponent N built from the characteristic and the nilpotency index
P2.3i  every unit order divides N*(n-1) for the residue field order n
P2.3ii from the unit-group exponent, a uniform exponent sN killing every
       nilpotent, via the unit/nilpotent coefficient split
L2.4   residue field orders of a subring are bounded by |f(A)| * deg f
L2.5   the number of local factors is bounded by the number of prime
       factors of |f(R)| (with multiplicity)
P2.6fwd raising a polynomial with mixed unit/non-unit values to a power
       yields a nontrivial 0/1-valued function
P2.6lift lifting a residue-field polynomial to the ring without growing its
       image
P2.7   a nontrivial polynomial indicator function exists iff the ring is
       local
R2.8   the support of any polynomial indicator function is a union of
       cosets of the maximal ideal
====== =====================================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Any

from .core import (
    Embedding,
    FiniteRing,
    SubsetMask,
    UnsupportedStructureError,
    analyze,
    element_nilpotency_index,
    local_decomposition,
    multiplicative_order,
    residue_field,
)
from .polyfun import (
    DEFAULT_CAP,
    Polynomial,
    function_table,
    poly_add,
    poly_const,
    poly_eval,
    poly_from,
    poly_mul,
    poly_pow,
    poly_scale,
    poly_sub,
    poly_x,
    polynomial_function_set,
)

__all__ = [
    "RESULT_IDS",
    "Verdict",
    "BinomialExponent",
    "LiftData",
    "TrivialImageError",
    "check_reachability_iff_field",
    "check_bijections_iff_field",
    "check_char_functions_iff_field",
    "verify_subring_char_function",
    "binomial_exponent",
    "verify_nilpotent_shift_power",
    "check_nilpotent_shift_powers",
    "check_unit_order_bound",
    "split_unit_nilpotent",
    "check_unit_exponent_nilpotency",
    "check_residue_field_bound",
    "check_spectrum_bound",
    "char_function_from_image",
    "check_char_from_image",
    "lift_residue_polynomial",
    "check_residue_lift",
    "classify_char_function_existence",
    "check_char_support_cosets",
]

RESULT_IDS = (
    "L1.1", "P1.2", "P1.3", "P2.1", "L2.2", "P2.3i", "P2.3ii",
    "L2.4", "L2.5", "P2.6fwd", "P2.6lift", "P2.7", "R2.8",
)


class TrivialImageError(ValueError):
    """The requested 0/1-valued output would be constant, so it is refused."""


@dataclass
class Verdict:
    result_id: str
    holds: bool | None
    vacuous: bool = False
    witness: dict[str, Any] | None = None
    details: str = ""

    @property
    def status(self) -> str:
        if self.holds is None:
            return "unknown"
        if not self.holds:
            return "fail"
        return "vacuous" if self.vacuous else "pass"


@dataclass(frozen=True)
class BinomialExponent:
    """The exponent N = prod p_i^(e_i + beta_i) for a given characteristic and index.

    ``betas[i]`` is the p_i-adic valuation of (nilp_index - 1)!, so every
    binomial coefficient C(sN, j) with 0 < j < nilp_index is divisible by
    the characteristic.
    """

    char_n: int
    nilp_index: int
    factorization: tuple[tuple[int, int], ...]
    betas: tuple[int, ...]
    exponent: int


@dataclass(frozen=True)
class LiftData:
    """Choices made by the residue lift: coset representatives, lifted values, exponent."""

    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    exponent: int


# ---------------------------------------------------------------------------
# small number-theory helpers
# ---------------------------------------------------------------------------

def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _omega(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(e for _, e in _factorize(n))


def _valuation_factorial(p: int, k: int) -> int:
    """p-adic valuation of k! by Legendre's formula."""
    v = 0
    q = p
    while q <= k:
        v += k // q
        q *= p
    return v


def _subgroup_closure(ring: FiniteRing, generators) -> set[int]:
    """Additive closure of a set of elements (a subgroup of (R, +))."""
    gens = set(generators)
    reached = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ring.add_table[x][g]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return reached


# ---------------------------------------------------------------------------
# L1.1 / P1.2 / P1.3: field characterizations
# ---------------------------------------------------------------------------

def check_reachability_iff_field(ring: FiniteRing) -> Verdict:
    """L1.1: every nonzero s reachable from every nonzero u via zero-constant
    polynomials, if and only if the ring is a field.

    The values of zero-constant polynomials at u form the additive closure of
    {a * u^k : a in R, k >= 1}, which is scanned per u.
    """
    inv = analyze(ring)
    unreachable = None
    for u in range(1, ring.order):
        powers = []
        seen = set()
        p = u
        while p not in seen:
            seen.add(p)
            powers.append(p)
            p = ring.mul_table[p][u]
        gens = {ring.mul_table[a][pk] for a in range(ring.order) for pk in powers}
        reach = _subgroup_closure(ring, gens)
        missing = next((s for s in range(1, ring.order) if s not in reach), None)
        if missing is not None:
            unreachable = (u, missing)
            break
    reachable_all = unreachable is None
    holds = reachable_all == inv.is_field
    witness = None if reachable_all else {"from": unreachable[0], "target": unreachable[1]}
    side = "every nonzero target is reachable" if reachable_all else \
        f"target {unreachable[1]} unreachable from {unreachable[0]}"
    return Verdict(
        "L1.1", holds, witness=witness,
        details=f"{side}; is_field={inv.is_field}",
    )


def check_bijections_iff_field(ring: FiniteRing, max_order: int = 6,
                               cap: int = DEFAULT_CAP) -> Verdict:
    """P1.2: every bijection is induced by a polynomial iff the ring is a field.

    Exhausts all order! bijections; transpositions are tried first so a
    failing witness is a swap whenever one exists.
    """
    if ring.order > max_order:
        return Verdict(
            "P1.2", True, vacuous=True,
            details=f"skipped-with-note: order {ring.order} exceeds bijection cap {max_order}",
        )
    inv = analyze(ring)
    pset = polynomial_function_set(ring, cap)
    n = ring.order
    identity = list(range(n))

    def candidates():
        for i in range(n):
            for j in range(i + 1, n):
                swap = identity.copy()
                swap[i], swap[j] = swap[j], swap[i]
                yield tuple(swap)
        for perm in permutations(range(n)):
            yield perm

    missing = None
    capped = False
    for table in candidates():
        status, _ = pset.lookup(table)
        if status == "absent":
            missing = table
            break
        if status == "unknown":
            capped = True
    if missing is None and capped:
        return Verdict("P1.2", None, details="function set truncated; bijection sweep inconclusive")
    all_bijections = missing is None
    holds = all_bijections == inv.is_field
    witness = None if all_bijections else {"bijection": list(missing)}
    side = "every bijection is polynomial" if all_bijections else \
        f"bijection {list(missing)} is not polynomial"
    return Verdict("P1.2", holds, witness=witness, details=f"{side}; is_field={inv.is_field}")


def check_char_functions_iff_field(ring: FiniteRing, max_order: int = 16,
                                   cap: int = DEFAULT_CAP) -> Verdict:
    """P1.3: every subset indicator is induced by a polynomial iff the ring is a field."""
    if ring.unity is None:
        raise UnsupportedStructureError("indicator functions need a unity")
    if ring.order > max_order:
        return Verdict(
            "P1.3", True, vacuous=True,
            details=f"skipped-with-note: order {ring.order} exceeds subset cap {max_order}",
        )
    inv = analyze(ring)
    pset = polynomial_function_set(ring, cap)
    n, one = ring.order, ring.unity
    missing = None
    capped = False
    for bits in range(1 << n):
        table = tuple(one if bits >> x & 1 else 0 for x in range(n))
        status, _ = pset.lookup(table)
        if status == "absent":
            missing = [x for x in range(n) if bits >> x & 1]
            break
        if status == "unknown":
            capped = True
    if missing is None and capped:
        return Verdict("P1.3", None, details="function set truncated; subset sweep inconclusive")
    all_subsets = missing is None
    holds = all_subsets == inv.is_field
    witness = None if all_subsets else {"subset": missing}
    side = "every subset indicator is polynomial" if all_subsets else \
        f"indicator of {missing} is not polynomial"
    return Verdict("P1.3", holds, witness=witness, details=f"{side}; is_field={inv.is_field}")


# ---------------------------------------------------------------------------
# P2.1: indicator of the nonzero elements over an extension ring
# ---------------------------------------------------------------------------

def verify_subring_char_function(emb: Embedding, f: Polynomial) -> Verdict:
    """P2.1: if f (over the big ring) sends 0 to 0 and every nonzero element of
    the embedded subring to 1, the subring must be a finite field.

    Verified on the given embedding: hypothesis checked by evaluation, and
    when it holds the conclusion is confirmed by direct inspection of the
    small ring.  A failed hypothesis is reported as vacuous.
    """
    big, small = emb.big, emb.small
    if f.ring is not big:
        raise ValueError("polynomial must have coefficients in the big ring")
    for r in (big, small):
        inv_r = analyze(r)
        if not (inv_r.is_unital and inv_r.is_commutative):
            raise UnsupportedStructureError("both rings must be commutative and unital")
    bad = None
    if poly_eval(f, 0, via=emb) != 0:
        bad = 0
    else:
        for a in range(1, small.order):
            if poly_eval(f, a, via=emb) != big.unity:
                bad = a
                break
    if bad is not None:
        return Verdict(
            "P2.1", True, vacuous=True,
            witness={"hypothesis_fails_at": bad},
            details=f"hypothesis fails at element {bad}; implication is vacuous",
        )
    is_field = analyze(small).is_field
    return Verdict(
        "P2.1", is_field,
        witness={"field": is_field},
        details=f"hypothesis holds and is_field={is_field} for {small.label}",
    )


# ---------------------------------------------------------------------------
# L2.2: shift-by-nilpotent power identity
# ---------------------------------------------------------------------------

def binomial_exponent(char_n: int, nilp_index: int) -> BinomialExponent:
    """The exponent N = prod p_i^(e_i + beta_i) with beta_i = v_{p_i}((r-1)!)."""
    if char_n < 2:
        raise ValueError("characteristic must be >= 2")
    if nilp_index < 1:
        raise ValueError("nilpotency index must be >= 1")
    fact = _factorize(char_n)
    betas = tuple(_valuation_factorial(p, nilp_index - 1) for p, _ in fact)
    exponent = math.prod(p ** (e + b) for (p, e), b in zip(fact, betas))
    return BinomialExponent(char_n, nilp_index, fact, betas, exponent)


def verify_nilpotent_shift_power(ring: FiniteRing, b: int, c: int,
                                 s_max: int = 5) -> Verdict:
    """L2.2: with N built from the characteristic and c's own nilpotency index,
    (b + c)^(sN) = b^(sN) for s = 1..s_max."""
    inv = analyze(ring)
    if not inv.is_commutative:
        raise UnsupportedStructureError("the binomial expansion needs a commutative ring")
    idx = element_nilpotency_index(ring, c)
    if idx is None:
        raise ValueError(f"element {c} is not nilpotent")
    params = binomial_exponent(inv.characteristic, idx)
    N = params.exponent
    a = ring.add_table[b][c]
    bad_s = next(
        (s for s in range(1, s_max + 1) if ring.pow(a, s * N) != ring.pow(b, s * N)),
        None,
    )
    holds = bad_s is None
    witness = {"b": b, "c": c, "nilp_index": idx, "exponent": N, "s_max": s_max}
    if bad_s is not None:
        witness["failing_s"] = bad_s
    return Verdict(
        "L2.2", holds, witness=witness,
        details=f"(b+c)^(sN) vs b^(sN) with N={N}, s<=s_max: {'equal' if holds else f'differ at s={bad_s}'}",
    )


def check_nilpotent_shift_powers(ring: FiniteRing, s_max: int = 3) -> Verdict:
    """L2.2 over every (b, nilpotent c) pair of the ring."""
    inv = analyze(ring)
    checked = 0
    for c in inv.nilpotents.indices():
        for b in range(ring.order):
            v = verify_nilpotent_shift_power(ring, b, c, s_max)
            if not v.holds:
                return v
            checked += 1
    return Verdict(
        "L2.2", True,
        witness={"pairs": checked, "s_max": s_max},
        details=f"all {checked} (b, c) pairs agree up to s={s_max}",
    )


# ---------------------------------------------------------------------------
# P2.3: unit orders and the nilpotency/unit-exponent link
# ---------------------------------------------------------------------------

def _prime_power_characteristic(inv) -> tuple[int, int]:
    fact = _factorize(inv.characteristic)
    if len(fact) != 1:
        raise UnsupportedStructureError("a local ring must have prime-power characteristic")
    return fact[0]


def check_unit_order_bound(ring: FiniteRing) -> Verdict:
    """P2.3i: with N = p^e * (r-1)! every unit satisfies u^(N*(n-1)) = 1,
    where p^e is the characteristic, r the nilpotency index and n the
    residue field order.  Cross-checks that the unit-group exponent divides
    N*(n-1)."""
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_local):
        raise UnsupportedStructureError("unit order bound needs a local unital ring")
    _prime_power_characteristic(inv)
    N = inv.characteristic * math.factorial(inv.nilpotency_index - 1)
    E = N * (inv.residue_field_order - 1)
    bad = next((u for u in inv.units.indices() if ring.pow(u, E) != ring.unity), None)
    divides = inv.unit_group_exponent is not None and E % inv.unit_group_exponent == 0
    holds = bad is None and divides
    witness = {"exponent": E, "n_residue": inv.residue_field_order,
               "unit_exponent": inv.unit_group_exponent, "big_n": N}
    if bad is not None:
        witness["failing_unit"] = bad
    return Verdict(
        "P2.3i", holds, witness=witness,
        details=f"u^{E} = 1 for all {inv.units.size} units: {bad is None}; "
                f"unit exponent {inv.unit_group_exponent} divides {E}: {divides}",
    )


def split_unit_nilpotent(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Coefficientwise split f = g + h over a local ring: unit coefficients go
    to g, nilpotent ones to h."""
    ring = f.ring
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_local):
        raise UnsupportedStructureError("the coefficient split needs a local unital ring")
    g = [0] * len(f.coeffs)
    h = [0] * len(f.coeffs)
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        if c in inv.units:
            g[i] = c
        elif c in inv.nilpotents:
            h[i] = c
        else:
            raise AssertionError("local ring element neither unit nor nilpotent")
    return Polynomial(ring, tuple(g)), Polynomial(ring, tuple(h))


def _poly_nilpotency_index(h: Polynomial) -> int:
    """Least k with h^k = 0 for a polynomial with nilpotent coefficients."""
    if h.degree is None:
        return 1
    p = h
    k = 1
    while p.degree is not None:
        p = poly_mul(p, h)
        k += 1
        if k > h.ring.order + 1:
            raise ValueError("polynomial does not appear to be nilpotent")
    return k


def check_unit_exponent_nilpotency(ring: FiniteRing) -> Verdict:
    """P2.3ii, both directions quantitatively.

    (a) Every unit's order divides the N*(n-1) bound of P2.3i.
    (b) Converse: from the unit-group exponent m, form f = (X+1)^m - 1,
    split f = g + h into unit and nilpotent coefficients, take the least s
    with a unit coefficient on X^s, and the exponent N for h's nilpotency
    index in R[X].  Then f^N = g^N in R[X] and c^(sN) = 0 for every
    nilpotent c.
    """
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_commutative and inv.is_local):
        raise UnsupportedStructureError("needs a commutative local unital ring")
    bound = check_unit_order_bound(ring)
    orders_divide = bool(bound.holds) and all(
        bound.witness["exponent"] % multiplicative_order(ring, u) == 0
        for u in inv.units.indices()
    )
    m = inv.unit_group_exponent
    x_plus_1 = poly_from(ring, (ring.unity, ring.unity))
    f = poly_sub(poly_pow(x_plus_1, m), poly_const(ring, ring.unity))
    g, h = split_unit_nilpotent(f)
    s = next(k for k in range(1, len(g.coeffs)) if g.coeffs[k] != 0)
    r_h = _poly_nilpotency_index(h)
    N = binomial_exponent(inv.characteristic, r_h).exponent
    powers_equal = poly_pow(f, N).stripped() == poly_pow(g, N).stripped()
    bad_c = next(
        (c for c in inv.nilpotents.indices() if ring.pow(c, s * N) != 0),
        None,
    )
    holds = orders_divide and powers_equal and bad_c is None
    witness = {"unit_exponent": m, "least_unit_degree": s,
               "exponent": N, "uniform_power": s * N,
               "order_bound": bound.witness["exponent"]}
    if bad_c is not None:
        witness["failing_nilpotent"] = bad_c
    return Verdict(
        "P2.3ii", holds, witness=witness,
        details=f"unit orders divide {bound.witness['exponent']}: {orders_divide}; "
                f"f^N = g^N: {powers_equal}; c^{s * N} = 0 for all "
                f"{inv.nilpotents.size} nilpotents: {bad_c is None}",
    )


# ---------------------------------------------------------------------------
# L2.4 / L2.5: image-size bounds
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _factor_residue_maps(ring: FiniteRing):
    """Per local factor, the composite map ring -> factor -> residue field."""
    out = []
    for factor in local_decomposition(ring):
        k, proj, _ = residue_field(factor.ring)
        chain = tuple(proj[factor.projection[x]] for x in range(ring.order))
        out.append((factor, k, chain))
    return tuple(out)


def check_residue_field_bound(emb: Embedding, f: Polynomial) -> Verdict:
    """L2.4: residue field orders of the small ring are at most |f(A)| * deg f.

    Precondition: for every maximal ideal of the big ring, the residues of
    f's values on the embedded subring are non-constant; otherwise the
    verdict is precondition-failed (vacuous).
    """
    small, big = emb.small, emb.big
    if f.ring is not big:
        raise ValueError("polynomial must have coefficients in the big ring")
    for r in (small, big):
        inv_r = analyze(r)
        if not (inv_r.is_unital and inv_r.is_commutative):
            raise UnsupportedStructureError("both rings must be commutative and unital")
    values = [poly_eval(f, a, via=emb) for a in range(small.order)]
    for factor, k, chain in _factor_residue_maps(big):
        residues = {chain[v] for v in values}
        if len(residues) == 1:
            return Verdict(
                "L2.4", True, vacuous=True,
                witness={"constant_factor_order": factor.ring.order},
                details=f"precondition-failed: values constant modulo the maximal ideal "
                        f"of the factor of order {factor.ring.order}",
            )
    img = len(set(values))
    deg = f.degree
    bound = img * deg
    residue_orders = [analyze(fac.ring).residue_field_order for fac in local_decomposition(small)]
    holds = all(n <= bound for n in residue_orders)
    return Verdict(
        "L2.4", holds,
        witness={"image_size": img, "degree": deg, "bound": bound,
                 "residue_orders": residue_orders},
        details=f"max residue order {max(residue_orders)} <= {img}*{deg} = {bound}: {holds}",
    )


def check_spectrum_bound(ring: FiniteRing, f: Polynomial) -> Verdict:
    """L2.5: the number of local factors is at most Omega(|f(R)|).

    Precondition: f is non-constant as a function modulo every maximal
    ideal; the failing factor is reported as precondition-failed otherwise.
    """
    if f.ring is not ring:
        raise ValueError("polynomial must have coefficients in the ring itself")
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_commutative):
        raise UnsupportedStructureError("needs a commutative unital ring")
    values = [poly_eval(f, x) for x in range(ring.order)]
    for factor, k, chain in _factor_residue_maps(ring):
        residues = {chain[v] for v in values}
        if len(residues) == 1:
            return Verdict(
                "L2.5", True, vacuous=True,
                witness={"constant_factor_order": factor.ring.order},
                details=f"precondition-failed: f is constant modulo the maximal ideal "
                        f"of the factor of order {factor.ring.order}",
            )
    img = len(set(values))
    omega = _omega(img)
    spectrum = len(local_decomposition(ring))
    holds = spectrum <= omega
    return Verdict(
        "L2.5", holds,
        witness={"image_size": img, "omega": omega, "local_factors": spectrum},
        details=f"|Spec| = {spectrum} <= Omega({img}) = {omega}: {holds}",
    )


# ---------------------------------------------------------------------------
# P2.6: building indicator functions and lifting residue polynomials
# ---------------------------------------------------------------------------

def char_function_from_image(ring: FiniteRing, f: Polynomial) -> Polynomial:
    """P2.6 forward step: the least N sending every unit value of f to 1 and
    every nilpotent value to 0 makes f^N a nontrivial 0/1-valued function.

    Refuses (TrivialImageError) when f's values are all units or all
    non-units, since the power would then be the constant 1 or 0.
    """
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_commutative and inv.is_local):
        raise UnsupportedStructureError("needs a commutative local unital ring")
    if f.ring is not ring:
        raise ValueError("polynomial must have coefficients in the ring itself")
    values = set(function_table(f).values)
    unit_vals = [v for v in values if v in inv.units]
    nil_vals = [v for v in values if v not in inv.units]
    if not unit_vals or not nil_vals:
        side = "units" if unit_vals else "non-units"
        raise TrivialImageError(
            f"all values of the polynomial are {side}; the 0/1-valued power would be constant")
    lcm_orders = math.lcm(*(multiplicative_order(ring, v) for v in unit_vals))
    kill = max(element_nilpotency_index(ring, v) for v in nil_vals)
    N = ((kill + lcm_orders - 1) // lcm_orders) * lcm_orders
    result = poly_pow(f, N)
    table = function_table(result).values
    if not (set(table) <= {0, ring.unity} and len(set(table)) == 2):
        raise AssertionError("power of the polynomial is not a nontrivial 0/1 table")
    return result


def check_char_from_image(ring: FiniteRing, f: Polynomial) -> Verdict:
    """P2.6fwd as a verdict: run the construction and confirm its output table."""
    try:
        result = char_function_from_image(ring, f)
    except TrivialImageError as exc:
        return Verdict("P2.6fwd", True, vacuous=True,
                       witness={"refused": str(exc)},
                       details=f"refused: {exc}")
    table = function_table(result).values
    support = [x for x, v in enumerate(table) if v == ring.unity]
    return Verdict(
        "P2.6fwd", True,
        witness={"polynomial": result.stripped(), "support": support},
        details=f"0/1-valued non-constant table with support of size {len(support)}",
    )


@lru_cache(maxsize=None)
def _lift_basis(ring: FiniteRing):
    """Per-ring data reused by every lift: residue field, representatives,
    exponent, and the pre-raised products prod_{j != i} (X - alpha_j)^E."""
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_commutative and inv.is_local):
        raise UnsupportedStructureError("lifting needs a commutative local unital ring")
    k, proj, reps = residue_field(ring)
    e = inv.nilpotency_index
    e_units = inv.unit_group_exponent
    n_big = e // e_units + 1          # least N with N * e_units > e
    exponent = n_big * e_units
    raised = []
    for i in range(len(reps)):
        prod = poly_const(ring, ring.unity)
        for j, alpha in enumerate(reps):
            if j != i:
                prod = poly_mul(prod, poly_from(ring, (ring.neg(alpha), ring.unity)))
        raised.append(poly_pow(prod, exponent))
    return k, proj, reps, exponent, tuple(raised)


def lift_residue_polynomial(ring: FiniteRing, f: Polynomial | None = None
                            ) -> tuple[Polynomial, LiftData]:
    """P2.6 converse: lift a residue-field polynomial f to the ring as
    sum_i beta_i * (prod_{j != i} (X - alpha_j))^(N e'), preserving both the
    residue table and the image size.

    alpha_i are the least coset representatives, beta_i the least lifts of
    f's residue values (equal residues get equal lifts), and N the least
    integer with N e' exceeding the nilpotency index.
    """
    k, proj, reps, exponent, raised = _lift_basis(ring)
    if f is None:
        f = poly_x(k)
    if f.ring is not k:
        raise ValueError("polynomial must be defined over the ring's residue field")
    betas = tuple(reps[poly_eval(f, i)] for i in range(k.order))
    lifted = Polynomial(ring, ())
    for beta, q in zip(betas, raised):
        if beta != 0:
            lifted = poly_add(lifted, poly_scale(beta, q))
    return lifted, LiftData(alphas=reps, betas=betas, exponent=exponent)


def check_residue_lift(ring: FiniteRing, f: Polynomial | None = None) -> Verdict:
    """P2.6lift as a verdict: the lift's image size matches the residue
    polynomial's, and its residues reproduce the residue table."""
    k, proj, reps = residue_field(ring)
    if f is None:
        f = poly_x(k)
    lifted, data = lift_residue_polynomial(ring, f)
    lift_values = [poly_eval(lifted, x) for x in range(ring.order)]
    res_values = [poly_eval(f, i) for i in range(k.order)]
    size_ok = len(set(lift_values)) == len(set(res_values))
    residue_ok = all(proj[lift_values[x]] == res_values[proj[x]] for x in range(ring.order))
    holds = size_ok and residue_ok
    return Verdict(
        "P2.6lift", holds,
        witness={"polynomial": lifted.stripped(), "exponent": data.exponent,
                 "image_size": len(set(lift_values)),
                 "residue_image_size": len(set(res_values))},
        details=f"|lift(R)| = {len(set(lift_values))} vs |f(k)| = {len(set(res_values))}; "
                f"residue tables agree: {residue_ok}",
    )


# ---------------------------------------------------------------------------
# P2.7 / R2.8: classification and coset structure of indicator supports
# ---------------------------------------------------------------------------

def _verify_char_polynomial(ring: FiniteRing, w: Polynomial) -> tuple[bool, list[int]]:
    table = function_table(w).values
    ok = set(table) <= {0, ring.unity} and len(set(table)) == 2
    support = [x for x, v in enumerate(table) if v == ring.unity]
    return ok, support


def classify_char_function_existence(ring: FiniteRing, cap: int = DEFAULT_CAP,
                                     witness_poly: Polynomial | None = None) -> Verdict:
    """P2.7: a nontrivial polynomial indicator function exists iff the ring
    is local.  (For a finite ring the remaining classification conditions,
    zero-dimensionality and finiteness of residue field and nilpotency
    index, hold automatically.)

    With ``witness_poly`` given, verification mode: the supplied polynomial
    is checked to be a nontrivial indicator, instead of searching.
    """
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_commutative):
        raise UnsupportedStructureError("classification needs a commutative unital ring")
    is_local = bool(inv.is_local)

    if witness_poly is not None:
        ok, support = _verify_char_polynomial(ring, witness_poly)
        holds = ok == is_local
        return Verdict(
            "P2.7", holds,
            witness={"polynomial": witness_poly.stripped(), "support": support},
            details=f"supplied polynomial is a nontrivial indicator: {ok}; is_local={is_local}",
        )

    if inv.is_field:
        w = Polynomial(ring, (0,) * (ring.order - 1) + (ring.unity,))
        ok, support = _verify_char_polynomial(ring, w)
        if not ok:
            raise AssertionError("x^(q-1) must be the indicator of the nonzero elements")
        return Verdict(
            "P2.7", True,
            witness={"polynomial": w, "support": support},
            details="field: indicator of the nonzero elements; is_local=True",
        )

    pset = polynomial_function_set(ring, cap)
    found = pset.nontrivial_char_tables()
    if not found and not pset.complete:
        return Verdict("P2.7", None, details="function set truncated; search inconclusive")
    exists = bool(found)
    holds = exists == is_local
    if exists:
        table, w = found[0]
        witness = {"polynomial": w, "support": [x for x, v in enumerate(table) if v == ring.unity]}
        side = "nontrivial indicator exists"
    else:
        witness = {"local_factors": len(local_decomposition(ring))}
        side = "no nontrivial indicator among all polynomial functions"
    return Verdict("P2.7", holds, witness=witness, details=f"{side}; is_local={is_local}")


def check_char_support_cosets(ring: FiniteRing, subset=None,
                              sweep_limit: int = 16, cap: int = DEFAULT_CAP) -> Verdict:
    """R2.8: the support of a polynomial indicator function on a local ring
    is a union of cosets of the maximal ideal.

    Checks the given subset (default: the units) and, when the order is
    within ``sweep_limit``, every 0/1-valued table in the whole function set.
    """
    inv = analyze(ring)
    if not (inv.is_unital and inv.is_local):
        raise UnsupportedStructureError("needs a local unital ring")
    _, proj, _ = residue_field(ring)

    def is_coset_union(support: set[int]) -> bool:
        per_coset: dict[int, bool] = {}
        for x in range(ring.order):
            inside = x in support
            prev = per_coset.setdefault(proj[x], inside)
            if prev != inside:
                return False
        return True

    if subset is None:
        subset_ids = set(inv.units.indices())
    else:
        subset_ids = set(subset.indices() if isinstance(subset, SubsetMask) else subset)

    one = ring.unity
    table = tuple(one if x in subset_ids else 0 for x in range(ring.order))
    pset = polynomial_function_set(ring, cap)
    status, wit = pset.lookup(table)
    if status == "unknown":
        return Verdict("R2.8", None, details="function set truncated; membership undecided")
    subset_report: dict[str, Any] = {"subset": sorted(subset_ids), "polynomial_exists": status == "present"}
    if status == "present":
        union = is_coset_union(subset_ids)
        subset_report["coset_union"] = union
        subset_report["polynomial"] = wit
        if not union:
            return Verdict(
                "R2.8", False, witness=subset_report,
                details="polynomial indicator found whose support is not a coset union",
            )

    swept = 0
    if ring.order <= sweep_limit:
        if inv.is_field:
            # Cosets are singletons, so every support is trivially a union.
            swept = -1
        else:
            for row, w in pset.nontrivial_char_tables():
                support = {x for x, v in enumerate(row) if v == one}
                swept += 1
                if not is_coset_union(support):
                    return Verdict(
                        "R2.8", False,
                        witness={"subset": sorted(support), "polynomial": w},
                        details="swept indicator support is not a coset union",
                    )
            if not pset.complete:
                return Verdict("R2.8", None,
                               details="function set truncated; sweep inconclusive")
    subset_report["swept"] = swept
    note = "all polynomial indicator supports are coset unions" if swept != 0 else \
        "given subset checked"
    return Verdict("R2.8", True, witness=subset_report, details=note)
