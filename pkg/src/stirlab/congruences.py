"""Congruence claims about the last digits of the sequences, a sweep verifier,
and an eventual-period detector.

A claim is one of two shapes:

* periodic -- ``a(n + P) = a(n)  (mod M)`` for ``n >= n0``
* constant -- ``a(n) = c  (mod M)`` for ``lo <= n <= hi``

Claims quantified over a parameter (m, r, or a prime p) expand into one
:class:`ClaimInstance` per parameter assignment. Residues are always taken
from exact integers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .errors import InvalidParameterError, UnknownIdError, WindowTooSmallError
from .sequences import Family, FamilySpec, sequence_values

REPORT_SCHEMA = "stirlab.verify/1"
PERIOD_SCHEMA = "stirlab.period/1"

PRIME_SWEEP = (2, 3, 5, 7, 11, 13)


class Status(enum.Enum):
    PROVEN = "proven"
    OBSERVED = "observed"


@dataclass(frozen=True)
class Periodic:
    period: int
    modulus: int
    n_from: int = 0

    def describe(self) -> str:
        return f"a(n+{self.period}) = a(n) mod {self.modulus} for n >= {self.n_from}"


@dataclass(frozen=True)
class Constant:
    residue: int
    modulus: int
    n_from: int = 0
    n_to: Optional[int] = None

    def describe(self) -> str:
        if self.n_to == self.n_from:
            where = f"n = {self.n_from}"
        elif self.n_to is None:
            where = f"n >= {self.n_from}"
        else:
            where = f"{self.n_from} <= n <= {self.n_to}"
        return f"a(n) = {self.residue} mod {self.modulus} for {where}"


@dataclass(frozen=True)
class ClaimInstance:
    params: Dict[str, int]
    spec: FamilySpec
    form: object


@dataclass(frozen=True)
class CongruenceClaim:
    id: str
    group: str
    statement: str
    family: Family
    expand: Callable[[], Iterable[ClaimInstance]]
    status: Status = Status.PROVEN
    note: str = ""
    ranges: Dict[str, str] = field(default_factory=dict)

    def instances(self, **only) -> List[ClaimInstance]:
        out = []
        for inst in self.expand():
            if all(inst.params.get(k) == v for k, v in only.items()):
                out.append(inst)
        return out

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "group": self.group,
            "statement": self.statement,
            "family": self.family.value,
            "status": self.status.value,
            "parameters": dict(self.ranges),
            "note": self.note,
        }


def _over(family: Family, name: Optional[str], values, form_of) -> Callable[[], List[ClaimInstance]]:
    def expand():
        if name is None:
            return [ClaimInstance({}, FamilySpec(family), form_of())]
        return [ClaimInstance({name: v}, FamilySpec(family, v), form_of(v)) for v in values]

    return expand


def _over_primes(family: Family, form_of) -> Callable[[], List[ClaimInstance]]:
    def expand():
        return [
            ClaimInstance({"p": p, "m": m}, FamilySpec(family, m), form_of(p, m))
            for p in PRIME_SWEEP
            for m in range(1, p)
        ]

    return expand


_CLAIMS: List[CongruenceClaim] = [
    CongruenceClaim(
        id="fubini_period4_mod10",
        group="last digit, Fubini",
        statement="F(n+4) = F(n) mod 10, n >= 1",
        family=Family.FUBINI,
        expand=_over(Family.FUBINI, None, (), lambda: Periodic(4, 10, 1)),
    ),
    CongruenceClaim(
        id="rfubini_period4_mod10",
        group="last digit, r-Fubini",
        statement="F(n+4, r) = F(n, r) mod 10, n, r >= 1",
        family=Family.R_FUBINI,
        expand=_over(Family.R_FUBINI, "r", range(1, 8), lambda r: Periodic(4, 10, 1)),
        ranges={"r": "1..inf (swept 1..7; r>5 trivial, 10 | F(n,r))"},
        note="r = 1 is the Fubini sequence shifted by one: F(n,1) = F(n+1)",
    ),
    CongruenceClaim(
        id="restbell_m2_period5_mod10",
        group="last digit, restricted Bell",
        statement="B(n+5, <=2) = B(n, <=2) mod 10, n > 1",
        family=Family.RESTRICTED_BELL,
        expand=_over(Family.RESTRICTED_BELL, "m", (2,), lambda m: Periodic(5, 10, 2)),
        ranges={"m": "2"},
    ),
    CongruenceClaim(
        id="restbell_m3_period5_mod10",
        group="last digit, restricted Bell",
        statement="B(n+5, <=3) = B(n, <=3) mod 10, n > 3",
        family=Family.RESTRICTED_BELL,
        expand=_over(Family.RESTRICTED_BELL, "m", (3,), lambda m: Periodic(5, 10, 4)),
        ranges={"m": "3"},
    ),
    CongruenceClaim(
        id="restfub_m1_zero_mod10",
        group="last digit, restricted Fubini",
        statement="F(n, <=1) = 0 mod 10, n > 4",
        family=Family.RESTRICTED_FUBINI,
        expand=_over(Family.RESTRICTED_FUBINI, "m", (1,), lambda m: Constant(0, 10, 5)),
        ranges={"m": "1"},
        note="trivial: F(n, <=1) = n!",
    ),
    CongruenceClaim(
        id="restfub_zero_mod10",
        group="last digit, restricted Fubini",
        statement="F(n, <=m) = 0 mod 10, n > 4, m = 2, 3, 4",
        family=Family.RESTRICTED_FUBINI,
        expand=_over(Family.RESTRICTED_FUBINI, "m", (2, 3, 4), lambda m: Constant(0, 10, 5)),
        ranges={"m": "2, 3, 4"},
    ),
    CongruenceClaim(
        id="restfub_even",
        group="parity, restricted Fubini",
        statement="F(n, <=m) = 0 mod 2, n > m > 4",
        family=Family.RESTRICTED_FUBINI,
        expand=_over(
            Family.RESTRICTED_FUBINI, "m", range(5, 13), lambda m: Constant(0, 2, m + 1)
        ),
        ranges={"m": "5..inf (swept 5..12)"},
    ),
    CongruenceClaim(
        id="restfact_period5_mod10",
        group="last digit, restricted factorial",
        statement="A(n+5, <=m) = A(n, <=m) mod 10, n > 2, m = 2, 3, 4",
        family=Family.RESTRICTED_FACTORIAL,
        expand=_over(Family.RESTRICTED_FACTORIAL, "m", (2, 3, 4), lambda m: Periodic(5, 10, 3)),
        ranges={"m": "2, 3, 4"},
    ),
    CongruenceClaim(
        id="assocfub_parity",
        group="parity, associated Fubini",
        statement="F(n, >=m) = 1 mod 2, n >= m",
        family=Family.ASSOCIATED_FUBINI,
        expand=_over(Family.ASSOCIATED_FUBINI, "m", range(1, 9), lambda m: Constant(1, 2, m)),
        ranges={"m": "1..inf (swept 1..8)"},
    ),
    CongruenceClaim(
        id="assocfub_period20_mod10",
        group="last digit, associated Fubini",
        statement="F(n+20, >=m) = F(n, >=m) mod 10, n >= 5, m = 2, 3, 4, 5",
        family=Family.ASSOCIATED_FUBINI,
        expand=_over(
            Family.ASSOCIATED_FUBINI, "m", (2, 3, 4, 5), lambda m: Periodic(20, 10, 5)
        ),
        ranges={"m": "2, 3, 4, 5"},
    ),
    CongruenceClaim(
        id="restbell_period_p_modp",
        group="prime modulus, restricted Bell",
        statement="B(n+p, <=m) = B(n, <=m) mod p, p prime, m < p",
        family=Family.RESTRICTED_BELL,
        expand=_over_primes(Family.RESTRICTED_BELL, lambda p, m: Periodic(p, p, 0)),
        ranges={"p": "primes (swept 2, 3, 5, 7, 11, 13)", "m": "1..p-1"},
    ),
    CongruenceClaim(
        id="restbell_period5_mod5",
        group="modulus 5, restricted Bell",
        statement="B(n+5, <=m) = B(n, <=m) mod 5, m = 2, 3, 4",
        family=Family.RESTRICTED_BELL,
        expand=_over(Family.RESTRICTED_BELL, "m", (2, 3, 4), lambda m: Periodic(5, 5, 0)),
        ranges={"m": "2, 3, 4"},
    ),
    CongruenceClaim(
        id="restfact_period_p_modp",
        group="prime modulus, restricted factorial",
        statement="A(n+p, <=m) = A(n, <=m) mod p, p prime, m < p",
        family=Family.RESTRICTED_FACTORIAL,
        expand=_over_primes(Family.RESTRICTED_FACTORIAL, lambda p, m: Periodic(p, p, 0)),
        ranges={"p": "primes (swept 2, 3, 5, 7, 11, 13)", "m": "1..p-1"},
    ),
    CongruenceClaim(
        id="restfact_p_residue1",
        group="prime modulus, restricted factorial",
        statement="A(p, <=m) = 1 mod p, p prime, m < p",
        family=Family.RESTRICTED_FACTORIAL,
        expand=_over_primes(Family.RESTRICTED_FACTORIAL, lambda p, m: Constant(1, p, p, p)),
        ranges={"p": "primes (swept 2, 3, 5, 7, 11, 13)", "m": "1..p-1"},
    ),
    CongruenceClaim(
        id="restfact_zero_mod10",
        group="last digit, restricted factorial",
        statement="A(n, <=m) = 0 mod 10, n > m > 4",
        family=Family.RESTRICTED_FACTORIAL,
        expand=_over(
            Family.RESTRICTED_FACTORIAL, "m", range(5, 13), lambda m: Constant(0, 10, m + 1)
        ),
        ranges={"m": "5..inf (swept 5..12)"},
    ),
    CongruenceClaim(
        id="restfact_first4_zero_mod10",
        group="last digit, restricted factorial",
        statement="A(m+1, <=m) = ... = A(m+4, <=m) = 0 mod 10, m > 4",
        family=Family.RESTRICTED_FACTORIAL,
        expand=_over(
            Family.RESTRICTED_FACTORIAL,
            "m",
            range(5, 13),
            lambda m: Constant(0, 10, m + 1, m + 4),
        ),
        ranges={"m": "5..inf (swept 5..12)"},
    ),
]

REGISTRY: Dict[str, CongruenceClaim] = {c.id: c for c in _CLAIMS}


def list_claims() -> List[CongruenceClaim]:
    return list(_CLAIMS)


def get_claim(claim_id: str) -> CongruenceClaim:
    try:
        return REGISTRY[claim_id]
    except KeyError:
        raise UnknownIdError(f"unknown claim {claim_id!r}") from None


# verification ------------------------------------------------------------


@dataclass
class VerificationReport:
    claim: CongruenceClaim
    n_max: int
    checked: List[dict] = field(default_factory=list)
    counterexamples: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and bool(self.checked)

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "claim": self.claim.id,
            "group": self.claim.group,
            "statement": self.claim.statement,
            "status": self.claim.status.value,
            "n_max": self.n_max,
            "result": "pass" if self.passed else "fail",
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }


def _check_instance(inst: ClaimInstance, n_max: int, report: VerificationReport) -> None:
    form = inst.form
    M = form.modulus
    if isinstance(form, Periodic):
        P = form.period
        lo, hi = form.n_from, n_max - P
        if hi < lo:
            return
        a = sequence_values(inst.spec, n_max)
        for n in range(lo, hi + 1):
            if (a[n + P] - a[n]) % M:
                report.counterexamples.append(
                    {"params": inst.params, "n": n, "residues": [a[n] % M, a[n + P] % M]}
                )
        report.checked.append(
            {"params": inst.params, "predicate": form.describe(), "range": [lo, hi], "count": hi - lo + 1}
        )
        return
    lo = form.n_from
    hi = n_max if form.n_to is None else min(form.n_to, n_max)
    if hi < lo:
        return
    a = sequence_values(inst.spec, hi)
    for n in range(lo, hi + 1):
        if a[n] % M != form.residue % M:
            report.counterexamples.append({"params": inst.params, "n": n, "residue": a[n] % M})
    report.checked.append(
        {"params": inst.params, "predicate": form.describe(), "range": [lo, hi], "count": hi - lo + 1}
    )


def verify_claim(claim_id: str, n_max: int = 1000, **params) -> VerificationReport:
    """Check every instance of a claim for all indices up to ``n_max``.

    For periodic claims the compared pair ``(n, n + P)`` must lie within
    ``0..n_max``. Keyword arguments restrict the parameter sweep, e.g.
    ``verify_claim("assocfub_parity", 60, m=3)``.
    """
    claim = get_claim(claim_id)
    if n_max < 0:
        raise InvalidParameterError("n_max must be >= 0")
    instances = claim.instances(**params)
    if not instances:
        raise InvalidParameterError(f"{claim_id}: no instance matches {params}")
    report = VerificationReport(claim, n_max)
    for inst in instances:
        _check_instance(inst, n_max, report)
    return report


def verify_all(n_max: int = 1000) -> List[VerificationReport]:
    return [verify_claim(c.id, n_max) for c in _CLAIMS]


# period detection --------------------------------------------------------


@dataclass(frozen=True)
class PeriodReport:
    spec: FamilySpec
    modulus: int
    preperiod: Optional[int]
    period: Optional[int]
    verified_up_to: int
    found: bool
    max_period: int
    max_preperiod: int

    def to_dict(self) -> dict:
        return {
            "schema": PERIOD_SCHEMA,
            "family": self.spec.family.value,
            "params": self.spec.params(),
            "modulus": self.modulus,
            "found": self.found,
            "preperiod": self.preperiod,
            "period": self.period,
            "verified_up_to": self.verified_up_to,
            "search": {"max_period": self.max_period, "max_preperiod": self.max_preperiod},
            "basis": "verified on window, not a proof",
        }


def minimal_period(residues: List[int], max_period: int, max_preperiod: int) -> Optional[Tuple[int, int]]:
    """Smallest ``(preperiod, period)`` fitting ``residues``, or None.

    For each period p (ascending) the preperiod is the smallest s with
    ``r[i + p] == r[i]`` for all ``s <= i < len - p``. A candidate counts only
    when ``s <= max_preperiod`` and the stretch ``r[s:]`` spans at least two
    full periods.
    """
    N = len(residues)
    for p in range(1, max_period + 1):
        s = 0
        for i in range(N - p - 1, -1, -1):
            if residues[i] != residues[i + p]:
                s = i + 1
                break
        if s <= max_preperiod and N - s >= 2 * p:
            return s, p
    return None


def detect_period(
    spec: FamilySpec,
    modulus: int,
    n_max: int,
    max_period: int,
    max_preperiod: Optional[int] = None,
) -> PeriodReport:
    """Smallest eventual period of ``a(n) mod modulus`` on ``0..n_max``.

    ``max_preperiod`` defaults to ``max_period``. The window must hold
    ``max_preperiod + 2 * max_period`` terms.
    """
    if modulus < 2:
        raise InvalidParameterError("modulus must be >= 2")
    if max_period < 1:
        raise InvalidParameterError("max_period must be >= 1")
    if max_preperiod is None:
        max_preperiod = max_period
    if max_preperiod < 0:
        raise InvalidParameterError("max_preperiod must be >= 0")
    if n_max < 2 * max_period + max_preperiod:
        raise WindowTooSmallError(
            f"n_max={n_max} < 2*max_period + max_preperiod = {2 * max_period + max_preperiod}"
        )
    residues = [v % modulus for v in sequence_values(spec, n_max)]
    hit = minimal_period(residues, max_period, max_preperiod)
    if hit is None:
        return PeriodReport(spec, modulus, None, None, n_max, False, max_period, max_preperiod)
    s, p = hit
    return PeriodReport(spec, modulus, s, p, n_max, True, max_period, max_preperiod)

