# src/semiarith/congruence/local.py
"""Local structure of congruence quotients.

Unramified: SL(2, o/𝔭^r) with o/𝔭^r = Z/p^r for f = 1 (formula mode for f > 1).
Ramified: the norm-one units of the maximal order of the quaternion division
algebra over Q_p, in the pair model (a, b) ↦ [[a, b], [p·b′, a′]] with a, b in
the unramified quadratic extension; O/M^m keeps a mod p^⌈m/2⌉ and b mod p^⌊m/2⌋.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, field_validator
from sympy import factorint

from ..core.errors import BadPrimeError, EnumerationCapExceeded, PreconditionError, UnsupportedError
from ..core.numfield import PrimeIdealData
from ..core.operations.base import Operation
from ..core.operations.models import SemiarithConfig
from ..finite.field import split_prime_power
from ..finite.galois_ring import GaloisRing
from ..finite.psl2 import sl2_elements, sl2_preimage_counts

RamifiedElement = tuple[int, int, int, int]

PSL_CAVEAT = (
    "q is not coprime to 6: we have to replace PSL(2,q) by its composition factors"
)

STEP_ORDER_NOTE = (
    "measured order q² at an odd level: the step is all of F_{q²}, while the stated"
    " order q counts only its trace-zero part"
)


def _odd_prime_power(q: int) -> tuple[int, int]:
    p, f = split_prime_power(q)
    if p == 2:
        raise BadPrimeError(f"q = {q} is even; only odd residue characteristic is supported", prime=p)
    return p, f


def sl2_order(q: int, r: int) -> int:
    """|SL(2, o/𝔭^r)| = q^(3(r-1)) · q(q² − 1)."""
    return q ** (3 * (r - 1)) * q * (q * q - 1)


class PrimePowerRequest(BaseModel):
    q: int = Field(description="Residue field size p^f")
    r: int = Field(1, description="Level exponent")

    @field_validator("q")
    def validate_q(cls, v: int) -> int:
        if v < 3:
            raise ValueError("q must be an odd prime power")
        return v

    @field_validator("r")
    def validate_r(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Level exponent must be positive")
        return v


# unramified


class UnramifiedRequest(PrimePowerRequest):
    enumerate: bool | None = Field(
        None, description="Force enumeration; by default whenever f = 1 and within the cap"
    )


class StepKernel(BaseModel):
    """ker(SL(2, o/𝔭^(level+1)) → SL(2, o/𝔭^level))."""

    level: int
    order: int
    structure: str
    exponent: int | None = None
    trace_zero_bijective: bool | None = Field(
        None, description="[1 + p^level·A] ↦ A mod p is a bijective homomorphism onto trace-zero matrices"
    )
    verified: bool = False


class UnramifiedLocalReport(BaseModel):
    q: int
    p: int
    f: int
    r: int
    order: int = Field(description="Order from the formula q^(3(r-1))·q(q²-1)")
    mode: Literal["enumeration", "formula"]
    enumerated_order: int | None = None
    surjective_reduction: bool | None = Field(
        None, description="Every element of level r-1 has exactly q³ preimages"
    )
    steps: list[StepKernel] = Field(default_factory=list)
    cap: int


def _step_kernel(p: int, s: int, config: SemiarithConfig) -> StepKernel:
    n = p ** (s + 1)
    group = sl2_elements(n, config)
    identity = np.array([1, 0, 0, 1], dtype=np.int64)
    kernel = group[np.all((group - identity) % p**s == 0, axis=1)]
    A = ((kernel - identity) % n) // p**s
    traces = (A[:, 0] + A[:, 3]) % p
    distinct = len(np.unique(A, axis=0))
    # the map is additive: (1 + p^s A)(1 + p^s B) ≡ 1 + p^s (A + B)
    a, b, c, d = (kernel[:, i][:, None] for i in range(4))
    e, f, g, h = (kernel[:, i][None, :] for i in range(4))
    prod = np.stack(
        [(a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n], axis=-1
    )
    prod_A = ((prod - identity) % n) // p**s
    additive = bool(np.all(prod_A == (A[:, None, :] + A[None, :, :]) % p))
    power = np.tile(identity, (len(kernel), 1))
    for _ in range(p):
        x = power
        power = np.stack(
            [
                (x[:, 0] * kernel[:, 0] + x[:, 1] * kernel[:, 2]) % n,
                (x[:, 0] * kernel[:, 1] + x[:, 1] * kernel[:, 3]) % n,
                (x[:, 2] * kernel[:, 0] + x[:, 3] * kernel[:, 2]) % n,
                (x[:, 2] * kernel[:, 1] + x[:, 3] * kernel[:, 3]) % n,
            ],
            axis=1,
        )
    exponent_p = bool(np.all(power == identity))
    bijective = bool(np.all(traces == 0)) and distinct == p**3 and additive
    return StepKernel(
        level=s,
        order=len(kernel),
        structure=f"(Z/{p})^3",
        exponent=p if exponent_p and len(kernel) > 1 else None,
        trace_zero_bijective=bijective,
        verified=bijective and exponent_p and len(kernel) == p**3,
    )


class UnramifiedLocal(Operation[UnramifiedRequest, UnramifiedLocalReport]):
    """SL(2, o/𝔭^r) for 𝔭 unramified of norm q."""

    def _run(self, request: UnramifiedRequest) -> UnramifiedLocalReport:
        q, r = request.q, request.r
        p, f = _odd_prime_power(q)
        order = sl2_order(q, r)
        cap = self.config.enumeration.local_unramified_cap
        fits = f == 1 and order <= cap
        if request.enumerate and not fits:
            if f != 1:
                raise UnsupportedError("enumeration is implemented for f = 1 only")
            raise EnumerationCapExceeded(
                f"|SL(2, Z/{q}^{r})| = {order} exceeds the cap {cap}", size=order, cap=cap
            )
        enumerate = fits if request.enumerate is None else request.enumerate
        if not enumerate:
            steps = [
                StepKernel(level=s, order=q**3, structure=f"(Z/{p})^{3 * f}")
                for s in range(1, r)
            ]
            return UnramifiedLocalReport(
                q=q, p=p, f=f, r=r, order=order, mode="formula", steps=steps, cap=cap
            )
        enumerated = len(sl2_elements(q**r, self.config))
        surjective = None
        if r > 1:
            counts = sl2_preimage_counts(p, r - 1, 1, self.config)
            surjective = len(counts) == sl2_order(q, r - 1) and set(counts.values()) == {q**3}
        steps = [
            _step_kernel(p, s, self.config)
            for s in self.progress(range(1, r), total=r - 1, desc="Step kernels")
        ]
        self.logger.info(f"SL(2, Z/{q}^{r}): {enumerated} elements, formula {order}")
        return UnramifiedLocalReport(
            q=q,
            p=p,
            f=f,
            r=r,
            order=order,
            mode="enumeration",
            enumerated_order=enumerated,
            surjective_reduction=surjective,
            steps=steps,
            cap=cap,
        )


def local_unramified(
    q: int, r: int, enumerate: bool | None = None, config: SemiarithConfig | None = None
) -> UnramifiedLocalReport:
    return UnramifiedLocal(config).execute(UnramifiedRequest(q=q, r=r, enumerate=enumerate))


# ramified


class RamifiedRequest(BaseModel):
    q: int = Field(description="Residue field size of Q_p; only q = p")
    m: int = Field(1, description="Number of levels, O¹/O¹(M^m)")

    @field_validator("m")
    def validate_m(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Level count must be positive")
        return v


class RamifiedStep(BaseModel):
    """O¹(M^level)/O¹(M^(level+1)).

    ``order`` is measured; ``stated_order`` is q, the order usually quoted for
    every step. They differ at odd levels and ``note`` says so.
    """

    level: int
    order: int = Field(description="Measured order of the step quotient")
    stated_order: int = Field(description="q, the order usually quoted for the step")
    exponent: int
    note: str | None = None

    @property
    def matches_stated(self) -> bool:
        return self.order == self.stated_order


class RamifiedLocalReport(BaseModel):
    q: int
    p: int
    m: int
    order: int = Field(description="|O¹/O¹(M^m)|")
    top_order: int = Field(description="|O¹/O¹(M)|, expected q + 1")
    top_cyclic: bool
    steps: list[RamifiedStep] = Field(default_factory=list)
    cap: int


class _PairModel:
    """Multiplication in O/M^m on pairs (a, b), a = (x, y), b = (u, v)."""

    def __init__(self, p: int, m: int) -> None:
        self.p = p
        self.m = m
        self.a_precision = (m + 1) // 2
        self.b_modulus = p ** (m // 2)
        self.ring = GaloisRing(p, self.a_precision)

    def mul(self, x: RamifiedElement, y: RamifiedElement) -> RamifiedElement:
        R, p = self.ring, self.p
        a, b = (x[0], x[1]), (x[2], x[3])
        c, d = (y[0], y[1]), (y[2], y[3])
        first = R.add(R.mul(a, c), R.scale(p, R.mul(b, R.frobenius(d))))
        second = R.add(R.mul(a, d), R.mul(b, R.frobenius(c)))
        return first[0], first[1], second[0] % self.b_modulus, second[1] % self.b_modulus

    def power(self, x: RamifiedElement, n: int) -> RamifiedElement:
        result: RamifiedElement = (1, 0, 0, 0)
        for _ in range(n):
            result = self.mul(result, x)
        return result

    def in_level(self, x: RamifiedElement, r: int) -> bool:
        """x ≡ 1 mod M^r."""
        a_mod, b_mod = self.p ** ((r + 1) // 2), self.p ** (r // 2)
        return (x[0] - 1) % a_mod == 0 and x[1] % a_mod == 0 and x[2] % b_mod == 0 and x[3] % b_mod == 0

    def norm_one(self) -> list[RamifiedElement]:
        R, p = self.ring, self.p
        n = R.modulus
        a_grid = np.arange(n, dtype=np.int64)
        b_grid = np.arange(self.b_modulus, dtype=np.int64)
        ax, ay, bx, by = (
            g.ravel() for g in np.meshgrid(a_grid, a_grid, b_grid, b_grid, indexing="ij")
        )
        nrd = (R.norm_arrays(ax, ay) - p * R.norm_arrays(bx, by)) % n
        keep = nrd == 1 % n
        return [
            (int(w), int(x), int(y), int(z))
            for w, x, y, z in zip(ax[keep], ay[keep], bx[keep], by[keep])
        ]


def _element_order(model: _PairModel, x: RamifiedElement, bound: int) -> int:
    y = x
    for k in range(1, bound + 1):
        if y == (1, 0, 0, 0):
            return k
        y = model.mul(y, x)
    return bound + 1


class RamifiedLocal(Operation[RamifiedRequest, RamifiedLocalReport]):
    """O¹/O¹(M^m) for the maximal order of the division algebra over Q_p."""

    def _run(self, request: RamifiedRequest) -> RamifiedLocalReport:
        q, m = request.q, request.m
        p, f = _odd_prime_power(q)
        if f != 1:
            raise UnsupportedError("the ramified model is implemented for q = p only")
        pairs = p ** (2 * m)
        cap = self.config.enumeration.local_ramified_cap
        if pairs > cap:
            raise EnumerationCapExceeded(
                f"{pairs} pairs at {m} levels exceed the cap {cap}", size=pairs, cap=cap
            )
        model = _PairModel(p, m)
        group = model.norm_one()
        counts = [sum(1 for x in group if model.in_level(x, r)) for r in range(m + 1)]

        top = _PairModel(p, 1)
        top_group = top.norm_one()
        orders = [_element_order(top, x, len(top_group)) for x in top_group]
        top_cyclic = max(orders) == len(top_group)

        steps = []
        for r in self.progress(range(1, m), total=m - 1, desc="Ramified steps"):
            members = [x for x in group if model.in_level(x, r)]
            exponent_p = all(model.in_level(model.power(x, p), r + 1) for x in members)
            if not exponent_p:
                raise PreconditionError(f"step {r} does not have exponent {p}")
            order = counts[r] // counts[r + 1]
            steps.append(
                RamifiedStep(
                    level=r,
                    order=order,
                    stated_order=q,
                    exponent=p,
                    note=None if order == q else STEP_ORDER_NOTE,
                )
            )
        self.logger.info(f"O¹/O¹(M^{m}) over Q_{p}: {len(group)} elements, top {len(top_group)}")
        return RamifiedLocalReport(
            q=q,
            p=p,
            m=m,
            order=len(group),
            top_order=counts[0] // counts[1],
            top_cyclic=top_cyclic,
            steps=steps,
            cap=cap,
        )


def local_ramified(q: int, m: int = 1, config: SemiarithConfig | None = None) -> RamifiedLocalReport:
    return RamifiedLocal(config).execute(RamifiedRequest(q=q, m=m))


# composition factors


class CompositionAccount(BaseModel):
    q: int
    r: int
    ramified: bool
    factors: list[int] = Field(description="Composition-factor orders of O¹/O¹(𝔭^r)")
    psl_factors: list[int] = Field(description="The same for the quotient by ±1")
    group_order: int
    caveat: str | None = None


def _prime_list(n: int) -> list[int]:
    return sorted(p for p, e in factorint(n).items() for _ in range(e))


def composition_account(
    q: int, r: int, ramified: bool = False, config: SemiarithConfig | None = None
) -> CompositionAccount:
    """Composition-factor orders of the local congruence quotient at level 𝔭^r.

    Unramified: Z/2, PSL(2, q) and 3f(r−1) copies of Z/p. Ramified: the
    primes of q + 1 and p, read off the enumerated filtration with 𝔭^r = M^(2r).
    """
    p, f = _odd_prime_power(q)
    caveat = None
    if ramified:
        report = local_ramified(q, 2 * r, config)
        factors = _prime_list(report.top_order)
        for step in report.steps:
            factors += _prime_list(step.order)
        factors.sort()
        psl_factors = list(factors)
        psl_factors.remove(2)
        order = report.order
    else:
        psl = q * (q * q - 1) // 2
        simple = [3, 2, 2] if q == 3 else [psl]
        factors = [2, *simple] + [p] * (3 * f * (r - 1))
        psl_factors = [*simple] + [p] * (3 * f * (r - 1))
        order = sl2_order(q, r)
        if math.gcd(q, 6) != 1:
            caveat = PSL_CAVEAT
    if math.prod(factors) != order:
        raise PreconditionError(f"composition factors multiply to {math.prod(factors)}, not {order}")
    return CompositionAccount(
        q=q,
        r=r,
        ramified=ramified,
        factors=factors,
        psl_factors=psl_factors,
        group_order=order,
        caveat=caveat,
    )


# CRT decomposition


class CRTRequest(BaseModel):
    components: list[int] = Field(description="Prime powers p_i^(r_i) with distinct p_i")

    @field_validator("components")
    def validate_components(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("At least one component is required")
        if any(c < 2 for c in v):
            raise ValueError("Components must exceed 1")
        return v


class CRTReport(BaseModel):
    """SL(2, o/𝔞) → ∏ SL(2, o/𝔭_i^(r_i)) and the kernel at the PSL level."""

    ideals: list[str] = Field(default_factory=list)
    modulus: int
    components: list[int]
    sl_order: int
    component_orders: list[int]
    sl_bijective: bool
    psl_kernel_order: int
    psl_kernel_rank: int
    psl_kernel_elementary: bool
    cap: int


class CRTQuotientCheck(Operation[CRTRequest, CRTReport]):
    """Componentwise reduction of SL(2, Z/N), N = ∏ p_i^(r_i)."""

    def _run(self, request: CRTRequest) -> CRTReport:
        components = request.components
        primes = [split_prime_power(c)[0] for c in components]
        if len(set(primes)) != len(primes):
            raise PreconditionError("the component primes must be distinct")
        if 2 in primes:
            raise BadPrimeError("the prime 2 is not supported", prime=2)
        N = math.prod(components)
        group = sl2_elements(N, self.config)
        component_orders = [
            len(sl2_elements(c, self.config))
            for c in self.progress(components, total=len(components), desc="Components")
        ]
        residues = np.concatenate([group % c for c in components], axis=1)
        injective = len(np.unique(residues, axis=0)) == len(group)
        bijective = injective and len(group) == math.prod(component_orders)

        # x with every component ±I; the PSL kernel is this set modulo ±I
        plus = np.array([1, 0, 0, 1], dtype=np.int64)
        signed = np.ones(len(group), dtype=bool)
        for c in components:
            x = group % c
            signed &= np.all(x == plus % c, axis=1) | np.all(x == (-plus) % c, axis=1)
        kernel = group[signed]
        a, b, c, d = (kernel[:, i] for i in range(4))
        squares_trivial = bool(
            np.all((a * a + b * c) % N == 1)
            and np.all((a * b + b * d) % N == 0)
            and np.all((c * a + d * c) % N == 0)
            and np.all((c * b + d * d) % N == 1)
        )
        kernel_order = len(kernel) // 2
        rank = kernel_order.bit_length() - 1
        elementary = squares_trivial and kernel_order == 1 << rank
        self.logger.info(f"SL(2, Z/{N}): {len(group)} elements; PSL kernel of order {kernel_order}")
        return CRTReport(
            modulus=N,
            components=components,
            sl_order=len(group),
            component_orders=component_orders,
            sl_bijective=bijective,
            psl_kernel_order=kernel_order,
            psl_kernel_rank=rank,
            psl_kernel_elementary=elementary,
            cap=self.config.enumeration.crt_cap,
        )


def crt_quotient_check(
    ideals: Sequence[tuple[PrimeIdealData, int]], config: SemiarithConfig | None = None
) -> CRTReport:
    """Verify the CRT decomposition at level 𝔞 = ∏ 𝔭_i^(r_i).

    Levels are restricted to residue-degree-one primes over distinct rational
    primes, so o/𝔞 = Z/N.

    Raises:
        UnsupportedError: a prime of residue degree > 1
        PreconditionError: repeated rational primes
    """
    for P, r in ideals:
        if P.residue_degree != 1:
            raise UnsupportedError(f"{P} has residue degree {P.residue_degree}; only degree 1 is supported")
        if r < 1:
            raise PreconditionError(f"exponent {r} at {P} must be positive")
    if len({P.p for P, _ in ideals}) != len(ideals):
        raise PreconditionError("the primes must lie over distinct rational primes")
    request = CRTRequest(components=[P.p**r for P, r in ideals])
    report = CRTQuotientCheck(config).execute(request)
    report.ideals = [str(P) if r == 1 else f"{P}^{r}" for P, r in ideals]
    return report
