"""Brute-force evaluation of the TI / subnormal / p'-order classifications.

The left-hand sides are universally quantified over the subgroup lattice; the
right-hand sides are structural descriptions (subnormality of the relevant
subgroups, or one of the Frobenius shapes). Each check returns a
:class:`TheoremReport`; nothing here raises on a mismatch, so a corpus group
that contradicts a stated classification shows up as a failing report.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

from .group import GroupTable, prime_divisors, p_part
from .structure import (
    FrobeniusDecomposition,
    acts_irreducibly,
    commutator_nontrivial,
    elementwise_commute,
    frobenius_decomposition,
    is_abelian,
    is_cyclic,
    is_nilpotent,
    q8_odd_cyclic_decomposition,
)
from .subgroups import (
    Subgroup,
    SubgroupLattice,
    is_self_centralizing,
    is_subnormal,
    is_TI,
)


class SubgroupFilter(enum.Enum):
    ALL = "all"
    NON_NILPOTENT = "non_nilpotent"
    NON_ABELIAN = "non_abelian"
    SELF_CENTRALIZING = "self_centralizing"
    SELF_CENTRALIZING_NON_NILPOTENT = "self_centralizing_non_nilpotent"
    SELF_CENTRALIZING_NON_ABELIAN = "self_centralizing_non_abelian"


THEOREMS = ("T1", "T2", "T3", "C1", "T5", "T6", "T7")
BICONDITIONALS = ("T1", "T2", "T3")
EQUIVALENCES = {
    "T5": (SubgroupFilter.SELF_CENTRALIZING, SubgroupFilter.ALL),
    "T6": (SubgroupFilter.SELF_CENTRALIZING_NON_NILPOTENT, SubgroupFilter.NON_NILPOTENT),
    "T7": (SubgroupFilter.SELF_CENTRALIZING_NON_ABELIAN, SubgroupFilter.NON_ABELIAN),
}
LHS_FILTER = {
    "T1": SubgroupFilter.ALL,
    "T2": SubgroupFilter.NON_NILPOTENT,
    "T3": SubgroupFilter.NON_ABELIAN,
}
RHS_CASES = {
    "T1": ("C1_subnormal", "C2", "C3", "C4"),
    "T2": ("C1_subnormal_nn", "C2"),
    "T3": ("C1_subnormal_na", "C2_Q8H", "C3"),
}


@dataclass(frozen=True)
class SubgroupProfile:
    order: int
    normal: bool
    ti: bool
    subnormal: bool
    self_centralizing: bool
    nilpotent: bool
    abelian: bool


def subgroup_profiles(lattice: SubgroupLattice) -> list[SubgroupProfile]:
    """Predicate values for every lattice member (cached on the lattice).

    The predicates are conjugation invariant, so each conjugacy class is
    evaluated once at its first member.
    """
    if "profiles" in lattice.cache:
        return lattice.cache["profiles"]
    G = lattice.group
    profiles: list[SubgroupProfile | None] = [None] * len(lattice)
    for cls in lattice.conjugacy_classes:
        H = lattice.all[cls[0]]
        normal = len(cls) == 1
        prof = SubgroupProfile(
            order=H.order,
            normal=normal,
            ti=True if normal else is_TI(H, G),
            subnormal=True if normal else is_subnormal(H, G),
            self_centralizing=is_self_centralizing(H, G),
            nilpotent=is_nilpotent(H),
            abelian=is_abelian(H),
        )
        for i in cls:
            profiles[i] = prof
    lattice.cache["profiles"] = profiles
    return profiles  # type: ignore[return-value]


def passes_filter(prof: SubgroupProfile, filt: SubgroupFilter) -> bool:
    if filt is SubgroupFilter.ALL:
        return True
    if filt is SubgroupFilter.NON_NILPOTENT:
        return not prof.nilpotent
    if filt is SubgroupFilter.NON_ABELIAN:
        return not prof.abelian
    if filt is SubgroupFilter.SELF_CENTRALIZING:
        return prof.self_centralizing
    if filt is SubgroupFilter.SELF_CENTRALIZING_NON_NILPOTENT:
        return prof.self_centralizing and not prof.nilpotent
    return prof.self_centralizing and not prof.abelian


def _require_prime_divisor(G: GroupTable, p: int) -> None:
    if p not in prime_divisors(G.order):
        raise ValueError(f"{p} is not a prime divisor of |G| = {G.order}")


def lhs_condition(
    G: GroupTable, lattice: SubgroupLattice, p: int, filt: SubgroupFilter = SubgroupFilter.ALL
) -> tuple[bool, Subgroup | None]:
    """Every filtered subgroup is TI, subnormal, or of order prime to ``p``.

    On failure a violator is returned: the first violating Sylow
    ``p``-subgroup in lattice order if there is one, else the first violator.
    """
    _require_prime_divisor(G, p)
    sylow_order = p_part(G.order, p)
    first = None
    for H, prof in zip(lattice.all, subgroup_profiles(lattice)):
        if not passes_filter(prof, filt):
            continue
        if prof.ti or prof.subnormal or H.order % p:
            continue
        if H.order == sylow_order:
            return False, H
        if first is None:
            first = H
    return (first is None), first


def _divisible_subnormal(lattice: SubgroupLattice, p: int, filt: SubgroupFilter) -> tuple[bool, Subgroup | None]:
    for H, prof in zip(lattice.all, subgroup_profiles(lattice)):
        if H.order % p == 0 and passes_filter(prof, filt) and not prof.subnormal:
            return False, H
    return True, None


# -- structural cases --------------------------------------------------------


@dataclass
class CaseCheck:
    label: str
    matched: bool
    notes: list[str] = field(default_factory=list)

    def fail(self, note: str) -> CaseCheck:
        self.notes.append(note)
        self.matched = False
        return self


def frobenius(lattice: SubgroupLattice) -> FrobeniusDecomposition | None:
    if "frobenius" not in lattice.cache:
        lattice.cache["frobenius"] = frobenius_decomposition(lattice.group, lattice)
    return lattice.cache["frobenius"]


def _h_form(H: Subgroup, lattice: SubgroupLattice, allow_cyclic: bool) -> str | None:
    if allow_cyclic and is_cyclic(H):
        return "cyclic"
    dec = q8_odd_cyclic_decomposition(H, lattice)
    if dec is not None:
        return f"Q8 x Z{dec.odd_cyclic_part.order}"
    return None


def _frobenius_prefix(check: CaseCheck, lattice: SubgroupLattice, p: int, rank_gt_1: bool):
    """Shared part of the odd-``p`` Frobenius cases; returns the decomposition or None."""
    if p == 2:
        check.fail("requires p > 2")
        return None
    F = frobenius(lattice)
    if F is None:
        check.fail("G is not a Frobenius group")
        return None
    check.notes.append(f"Frobenius: kernel order {F.kernel.order}, complement order {F.complement.order}")
    if F.kernel_prime is None:
        check.fail("kernel is not elementary abelian")
        return None
    check.notes.append(f"kernel = Z{F.kernel_prime}^{F.kernel_rank}")
    if F.kernel_prime == p:
        check.fail("kernel prime equals p")
        return None
    if rank_gt_1 and F.kernel_rank <= 1:
        check.fail("kernel rank must exceed 1")
        return None
    return F


def case_cyclic_complement(G: GroupTable, lattice: SubgroupLattice, p: int, label: str = "C2") -> CaseCheck:
    """p = 2, Frobenius with kernel of odd prime order and cyclic complement of even order."""
    check = CaseCheck(label, True)
    if p != 2:
        return check.fail("requires p = 2")
    F = frobenius(lattice)
    if F is None:
        return check.fail("G is not a Frobenius group")
    N, M = F.kernel, F.complement
    check.notes.append(f"Frobenius: kernel order {N.order}, complement order {M.order}")
    if not (F.kernel_rank == 1 and F.kernel_prime != 2):
        return check.fail("kernel is not of odd prime order")
    if not is_cyclic(M):
        return check.fail("complement is not cyclic")
    if M.order % 2:
        return check.fail("complement has odd order")
    check.notes.append(f"q = {N.order}, o(a) = {M.order}")
    return check


def case_direct_complement(
    G: GroupTable,
    lattice: SubgroupLattice,
    p: int,
    label: str = "C3",
    rank_gt_1: bool = False,
    allow_cyclic: bool = True,
) -> CaseCheck:
    """Frobenius, complement ``P x H`` with ``P`` a cyclic Sylow ``p``-subgroup
    whose non-identity subgroups all act irreducibly on the kernel."""
    check = CaseCheck(label, True)
    F = _frobenius_prefix(check, lattice, p, rank_gt_1)
    if F is None:
        return check
    N, M = F.kernel, F.complement
    pk = p_part(G.order, p)
    sylows = [P for P in lattice.subgroups_of(M) if P.order == pk]
    if len(sylows) != 1:
        return check.fail("Sylow p-subgroup of the complement is not normal")
    P = sylows[0]
    if not is_cyclic(P):
        return check.fail(f"Sylow {p}-subgroup (order {P.order}) is not cyclic")
    m = M.order // P.order
    Hs = [
        H
        for H in lattice.subgroups_of(M)
        if H.order == m and (H.bits & P.bits) == 1 and elementwise_commute(P, H)
    ]
    if not Hs:
        return check.fail("complement is not P x H")
    H = Hs[0]
    form = _h_form(H, lattice, allow_cyclic)
    if form is None:
        wanted = "cyclic or Q8 x odd-cyclic" if allow_cyclic else "Q8 x odd-cyclic"
        return check.fail(f"H (order {H.order}) is not {wanted}")
    check.notes.append(f"P = Z{P.order}, H = {form} (order {H.order})")
    for P1 in lattice.subgroups_of(P):
        if P1.order > 1 and not acts_irreducibly(P1, N, lattice):
            return check.fail(f"subgroup of order {P1.order} of P acts reducibly on the kernel")
    check.notes.append("every non-identity subgroup of P acts irreducibly")
    return check


def case_semidirect_complement(G: GroupTable, lattice: SubgroupLattice, p: int, label: str = "C4") -> CaseCheck:
    """Frobenius with kernel rank > 1 and complement ``Z_p ⋊ H``, ``[Z_p, H] != 1``,
    ``Z_p`` irreducible on the kernel."""
    check = CaseCheck(label, True)
    F = _frobenius_prefix(check, lattice, p, rank_gt_1=True)
    if F is None:
        return check
    N, M = F.kernel, F.complement
    if p_part(G.order, p) != p:
        return check.fail("Sylow p-subgroup is not of prime order")
    sylows = [P for P in lattice.subgroups_of(M) if P.order == p]
    if len(sylows) != 1:
        return check.fail("Z_p is not normal in the complement")
    Zp = sylows[0]
    if not acts_irreducibly(Zp, N, lattice):
        return check.fail("Z_p acts reducibly on the kernel")
    m = M.order // p
    Hs = [H for H in lattice.subgroups_of(M) if H.order == m and (H.bits & Zp.bits) == 1]
    if not Hs:
        return check.fail("no complement H to Z_p in M")
    reasons = []
    for H in Hs:
        form = _h_form(H, lattice, allow_cyclic=True)
        if form is None:
            reasons.append(f"H (order {H.order}) is not cyclic or Q8 x odd-cyclic")
            continue
        if not commutator_nontrivial(Zp, H):
            reasons.append("[Z_p, H] = 1")
            continue
        check.notes.append(f"Z_p = Z{p}, H = {form} (order {H.order}), [Z_p, H] != 1, Z_p irreducible")
        return check
    return check.fail(reasons[0])


def _subnormal_case(lattice: SubgroupLattice, p: int, filt: SubgroupFilter, label: str) -> CaseCheck:
    ok, bad = _divisible_subnormal(lattice, p, filt)
    check = CaseCheck(label, ok)
    if not ok:
        check.notes.append(f"non-subnormal: {bad.describe()}")
    return check


def rhs_checks(G: GroupTable, lattice: SubgroupLattice, p: int, theorem: str) -> list[CaseCheck]:
    """All case checks of ``theorem`` in the order they are tried."""
    _require_prime_divisor(G, p)
    if theorem == "T1":
        return [
            _subnormal_case(lattice, p, SubgroupFilter.ALL, "C1_subnormal"),
            case_cyclic_complement(G, lattice, p, "C2"),
            case_direct_complement(G, lattice, p, "C3"),
            case_semidirect_complement(G, lattice, p, "C4"),
        ]
    if theorem == "T2":
        return [
            _subnormal_case(lattice, p, SubgroupFilter.NON_NILPOTENT, "C1_subnormal_nn"),
            case_semidirect_complement(G, lattice, p, "C2"),
        ]
    if theorem == "T3":
        return [
            _subnormal_case(lattice, p, SubgroupFilter.NON_ABELIAN, "C1_subnormal_na"),
            case_direct_complement(G, lattice, p, "C2_Q8H", rank_gt_1=True, allow_cyclic=False),
            case_semidirect_complement(G, lattice, p, "C3"),
        ]
    raise ValueError(f"no right-hand side for {theorem}")


def _first_case(G: GroupTable, lattice: SubgroupLattice, p: int, theorem: str) -> str | None:
    _require_prime_divisor(G, p)
    # evaluated lazily: the structural cases are only tried if earlier ones fail
    if theorem == "T1":
        tries = [
            lambda: _subnormal_case(lattice, p, SubgroupFilter.ALL, "C1_subnormal"),
            lambda: case_cyclic_complement(G, lattice, p, "C2"),
            lambda: case_direct_complement(G, lattice, p, "C3"),
            lambda: case_semidirect_complement(G, lattice, p, "C4"),
        ]
    elif theorem == "T2":
        tries = [
            lambda: _subnormal_case(lattice, p, SubgroupFilter.NON_NILPOTENT, "C1_subnormal_nn"),
            lambda: case_semidirect_complement(G, lattice, p, "C2"),
        ]
    elif theorem == "T3":
        tries = [
            lambda: _subnormal_case(lattice, p, SubgroupFilter.NON_ABELIAN, "C1_subnormal_na"),
            lambda: case_direct_complement(G, lattice, p, "C2_Q8H", rank_gt_1=True, allow_cyclic=False),
            lambda: case_semidirect_complement(G, lattice, p, "C3"),
        ]
    else:
        raise ValueError(f"no right-hand side for {theorem}")
    for attempt in tries:
        check = attempt()
        if check.matched:
            return check.label
    return None


def rhs_theorem1(G: GroupTable, lattice: SubgroupLattice, p: int) -> str | None:
    return _first_case(G, lattice, p, "T1")


def rhs_theorem2(G: GroupTable, lattice: SubgroupLattice, p: int) -> str | None:
    return _first_case(G, lattice, p, "T2")


def rhs_theorem3(G: GroupTable, lattice: SubgroupLattice, p: int) -> str | None:
    return _first_case(G, lattice, p, "T3")


# -- reports -----------------------------------------------------------------


@dataclass
class TheoremReport:
    group_name: str
    group_order: int
    prime: int
    theorem_id: str
    lhs: bool
    rhs: bool
    rhs_case: str | None
    biconditional_holds: bool
    falsification_candidate: bool = False
    witness: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> TheoremReport:
        return cls(**data)

    @property
    def sort_key(self) -> tuple:
        return (self.group_name, self.prime, THEOREMS.index(self.theorem_id))


def _violator_text(lattice: SubgroupLattice, H: Subgroup) -> str:
    prof = subgroup_profiles(lattice)[lattice.position(H)]
    return (
        f"subgroup #{lattice.position(H)}: {H.describe()}; "
        f"TI={prof.ti} subnormal={prof.subnormal} self_centralizing={prof.self_centralizing}"
    )


def verify_biconditional(G: GroupTable, lattice: SubgroupLattice, p: int, theorem_id: str) -> TheoremReport:
    if theorem_id not in BICONDITIONALS:
        raise ValueError(f"{theorem_id} is not a classification theorem")
    lhs, bad = lhs_condition(G, lattice, p, LHS_FILTER[theorem_id])
    case = _first_case(G, lattice, p, theorem_id)
    holds = lhs == (case is not None)
    candidate = lhs and case is None
    if candidate:
        witness = "falsification candidate: left side holds but no stated case matches"
    elif bad is not None:
        witness = _violator_text(lattice, bad)
    else:
        witness = None
    return TheoremReport(G.name, G.order, p, theorem_id, lhs, case is not None, case, holds, candidate, witness)


def verify_equivalence(G: GroupTable, lattice: SubgroupLattice, p: int, theorem_id: str) -> TheoremReport:
    if theorem_id not in EQUIVALENCES:
        raise ValueError(f"{theorem_id} is not an equivalence theorem")
    restricted, full = EQUIVALENCES[theorem_id]
    lhs_r, bad_r = lhs_condition(G, lattice, p, restricted)
    lhs_f, bad_f = lhs_condition(G, lattice, p, full)
    holds = lhs_r == lhs_f
    witness = None
    if bad_f is not None:
        witness = _violator_text(lattice, bad_f)
    return TheoremReport(G.name, G.order, p, theorem_id, lhs_r, lhs_f, None, holds, lhs_r and not lhs_f, witness)


def verify_corollary1(G: GroupTable, lattice: SubgroupLattice) -> TheoremReport:
    if G.order == 1:
        raise ValueError("the trivial group has no prime divisor")
    p = prime_divisors(G.order)[0]
    lhs, bad = lhs_condition(G, lattice, p, SubgroupFilter.NON_NILPOTENT)
    rhs, _ = _divisible_subnormal(lattice, p, SubgroupFilter.NON_NILPOTENT)
    holds = lhs == rhs
    witness = _violator_text(lattice, bad) if bad is not None else None
    if lhs and not rhs:
        witness = "falsification candidate: left side holds but case (1) fails"
    return TheoremReport(
        G.name, G.order, p, "C1", lhs, rhs, "C1_subnormal_nn" if rhs else None, holds, lhs and not rhs, witness
    )


def verify(G: GroupTable, lattice: SubgroupLattice, p: int, theorem_id: str) -> TheoremReport:
    """Dispatch on ``theorem_id``; for ``C1`` the prime is fixed by the group."""
    if theorem_id in BICONDITIONALS:
        return verify_biconditional(G, lattice, p, theorem_id)
    if theorem_id in EQUIVALENCES:
        return verify_equivalence(G, lattice, p, theorem_id)
    if theorem_id == "C1":
        return verify_corollary1(G, lattice)
    raise ValueError(f"unknown theorem id {theorem_id!r}")
