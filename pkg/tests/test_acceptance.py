"""Acceptance criteria, zero tolerance. Each test records one pass/fail line
that is printed in the terminal summary under "acceptance criteria"."""

import time

import pytest

import conftest
from conftest import lattice_of, named
from oracles import canonical_form, groups_by_extension, naive_subgroups
from tigroups.cli import RunConfig, render_text, run_sweep
from tigroups.corpus import build, frobenius_recipes
from tigroups.group import prime_divisors
from tigroups.smallgroups import enumerate_all_of_order
from tigroups.structure import frobenius_decomposition, is_nilpotent
from tigroups.subgroups import (
    conjugate_subgroup,
    is_normal,
    is_self_centralizing,
    is_subnormal,
    is_TI,
    sylow_subgroups,
    whole_group,
)
from tigroups.theorems import (
    BICONDITIONALS,
    RHS_CASES,
    SubgroupFilter,
    frobenius,
    lhs_condition,
    rhs_checks,
    verify_biconditional,
    verify_corollary1,
    verify_equivalence,
)


def record(n, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}"
    if detail:
        line += f" ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def sweep():
    start = time.perf_counter()
    result = run_sweep(RunConfig(parallelism=1))
    return result, time.perf_counter() - start


def by_theorem(result, t):
    return [r for r in result.reports if r.theorem_id == t]


def test_criterion_1_theorem1_sweep(corpus, sweep):
    result, elapsed = sweep
    reports = by_theorem(result, "T1")
    expected = sum(len(prime_divisors(G.order)) for G in corpus)
    failures = [r for r in reports if not r.biconditional_holds]
    ok = len(corpus) >= 60 and len(reports) == expected and not failures and not result.skipped and elapsed < 300
    record(1, "T1 biconditional over the default corpus", ok,
           f"{len(corpus)} groups, {len(reports)} (group, prime) pairs, {len(failures)} failures, sweep {elapsed:.1f}s")
    assert ok, failures[:3]


def test_criterion_2_theorems_2_3_and_monotonicity(sweep):
    result, _ = sweep
    failures = [r for t in ("T2", "T3") for r in by_theorem(result, t) if not r.biconditional_holds]
    lhs = {(r.group_name, r.prime, r.theorem_id): r.lhs for r in result.reports}
    pairs = [(g, p) for (g, p, t) in lhs if t == "T1"]
    monotone_bad = [(g, p) for g, p in pairs if lhs[g, p, "T1"] and not (lhs[g, p, "T2"] and lhs[g, p, "T3"])]
    ok = not failures and not monotone_bad and len(by_theorem(result, "T2")) == len(pairs) == len(by_theorem(result, "T3"))
    record(2, "T2/T3 biconditionals and T1 LHS => T2 LHS and T3 LHS", ok,
           f"{2 * len(pairs)} checks, {len(failures)} failures, {len(monotone_bad)} monotonicity violations")
    assert ok


def test_criterion_3_equivalences(corpus_lattices):
    checked = 0
    failures = []
    for G, L in corpus_lattices:
        for p in prime_divisors(G.order):
            for t in ("T5", "T6", "T7"):
                r = verify_equivalence(G, L, p, t)
                checked += 1
                if not r.biconditional_holds or r.lhs != r.rhs:
                    failures.append((G.name, p, t))
    # independent recomputation for T5 straight from the filters
    for G, L in corpus_lattices:
        for p in prime_divisors(G.order):
            a = lhs_condition(G, L, p, SubgroupFilter.SELF_CENTRALIZING)[0]
            b = lhs_condition(G, L, p, SubgroupFilter.ALL)[0]
            if a != b:
                failures.append((G.name, p, "T5 filters"))
    ok = not failures
    record(3, "restricted LHS equals unrestricted LHS (T5, T6, T7)", ok, f"{checked} checks, {len(failures)} failures")
    assert ok, failures[:3]


def test_criterion_4_corollary(corpus_lattices):
    failures = []
    for G, L in corpus_lattices:
        if G.order == 1:
            continue
        r = verify_corollary1(G, L)
        p = prime_divisors(G.order)[0]
        case1 = any(c.matched for c in rhs_checks(G, L, p, "T2") if c.label == "C1_subnormal_nn")
        t2_lhs = lhs_condition(G, L, p, SubgroupFilter.NON_NILPOTENT)[0]
        if not r.biconditional_holds or r.prime != p or t2_lhs != case1:
            failures.append(G.name)
    ok = not failures
    record(4, "smallest prime: T2 LHS <=> case (1)", ok, f"{len(corpus_lattices) - 1} groups, {len(failures)} failures")
    assert ok, failures


def test_criterion_5_named_instances():
    results = {}

    def t1(name, p):
        G = named(name)
        return G, lattice_of(G), verify_biconditional(G, lattice_of(G), p, "T1")

    _, _, r = t1("S3", 2)
    results["S3/2 -> C2"] = r.rhs_case == "C2" and r.lhs and r.biconditional_holds
    _, _, r = t1("A4", 3)
    results["A4/3 -> C3"] = r.rhs_case == "C3" and r.lhs and r.biconditional_holds
    G, L, r = t1("Z7:Z3", 3)
    F = frobenius(L)
    results["Z7:Z3/3 -> C3, r = 1"] = r.rhs_case == "C3" and r.biconditional_holds and F.kernel.order == 7
    G, L, r = t1("S4", 2)
    witness = lhs_condition(G, L, 2)[1]
    results["S4/2 both false, Sylow witness"] = (
        not r.lhs and not r.rhs and r.biconditional_holds and witness in sylow_subgroups(G, L, 2)
    )
    _, _, r = t1("Q8", 2)
    results["Q8/2 -> C1"] = r.rhs_case == "C1_subnormal" and r.biconditional_holds
    G, L, r = t1("Z5:Z4", 2)
    F = frobenius(L)
    c2 = [c for c in rhs_checks(G, L, 2, "T1") if c.label == "C2"][0]
    results["Z5:Z4/2 -> C2, o(a) = 4"] = (
        r.rhs_case == "C2" and r.biconditional_holds and F.kernel.order == 5
        and F.complement.order == 4
        and int(G.element_orders[F.complement.members].max()) == 4 and c2.matched
    )
    bad = [k for k, v in results.items() if not v]
    ok = not bad
    record(5, "named instances", ok, ", ".join(bad) if bad else f"{len(results)} instances")
    assert ok, bad


def test_criterion_6_engine_oracles(corpus, corpus_lattices):
    problems = []
    small = [(G, L) for G, L in corpus_lattices if G.order <= 24]
    for G, L in small:
        if {S.bits for S in L} != {sum(1 << x for x in s) for s in naive_subgroups(G.mul)}:
            problems.append(f"lattice {G.name}")
    oracle = groups_by_extension(12)
    for n in range(1, 13):
        ours = sorted(canonical_form(G.mul) for G in enumerate_all_of_order(n))
        if ours != sorted(canonical_form(T) for T in oracle[n]):
            problems.append(f"small groups n={n}")
    recipes = frobenius_recipes()
    for rec in recipes:
        G = build(rec)
        if frobenius_decomposition(G, lattice_of(G)) is None:
            problems.append(f"frobenius {rec.name}")
    detected = 0
    for G, L in corpus_lattices:
        F = frobenius_decomposition(G, L)
        if F is not None:
            detected += 1
            if (F.kernel.order - 1) % F.complement.order:
                problems.append(f"divisibility {G.name}")
    ok = not problems
    record(6, "engine oracles", ok,
           f"{len(small)} lattices vs subset oracle, orders 1-12 vs extension oracle, "
           f"{len(recipes)} Frobenius recipes, {detected} decompositions; {len(problems)} problems")
    assert ok, problems


def test_criterion_7_predicate_invariants(corpus_lattices):
    violations = []
    checked = 0
    for G, L in corpus_lattices:
        # invariance under a generating set gives invariance under all of G
        gens = list(whole_group(G).gens)
        all_subnormal = True
        for H in L:
            checked += 1
            normal = is_normal(H, G)
            sub = is_subnormal(H, G)
            ti = is_TI(H, G)
            sc = is_self_centralizing(H, G)
            all_subnormal &= sub
            if normal and not (sub and ti):
                violations.append(f"{G.name}: normal subgroup of order {H.order}")
            for g in gens:
                K = conjugate_subgroup(H, g)
                if (is_TI(K, G), is_subnormal(K, G), is_self_centralizing(K, G)) != (ti, sub, sc):
                    violations.append(f"{G.name}: conjugation changes predicates")
        if is_nilpotent(whole_group(G)) != all_subnormal:
            violations.append(f"{G.name}: nilpotent vs all-subnormal")
        for p in prime_divisors(G.order):
            if len(sylow_subgroups(G, L, p)) % p != 1:
                violations.append(f"{G.name}: Sylow {p} count")
    ok = not violations
    record(7, "predicate invariants", ok, f"{checked} subgroups, {len(violations)} violations")
    assert ok, violations[:5]


def test_criterion_8_case_coverage(sweep):
    result, _ = sweep
    cov = result.coverage()
    config = RunConfig()
    text = render_text(result, config)
    problems = []
    for c in ("C1_subnormal", "C2", "C3"):
        if cov["T1"][c] == 0:
            problems.append(f"T1 {c} not hit")
    unexercised = [f"{t} {c}" for t in BICONDITIONALS for c in RHS_CASES[t] if cov[t][c] == 0]
    for item in unexercised:
        if f"NOT EXERCISED: {item}" not in text:
            problems.append(f"{item} unexercised but not reported")
    for t in BICONDITIONALS:
        line = f"  {t}: " + " ".join(f"{c}={cov[t][c]}" for c in RHS_CASES[t])
        if line not in text.splitlines():
            problems.append(f"{t} coverage line missing")
    ok = not problems
    summary = "; ".join(f"{t} " + " ".join(f"{c}={n}" for c, n in cov[t].items()) for t in BICONDITIONALS)
    record(8, "case coverage report", ok,
           f"{summary}; not exercised: {', '.join(unexercised) or 'none'}" + ("; " + "; ".join(problems) if problems else ""))
    assert ok, problems
