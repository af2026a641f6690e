"""Acceptance criteria 1-8, one test each, with pinned tolerances.

Each test records a PASS/FAIL line; the conftest hook prints them at the end
of the run.  Running this file directly prints the same lines.
"""
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from symk.complexify import build_iposet, complexify, expand_to_orbit_diagram, rank_criterion
from symk.diagram import emit_diagram
from symk.field import INFINITE, AlgClosedModel, Finite, PadicModel, QuadExt, Rational, RealModel
from symk.group import (GroupElement, NamedInvolution, conjugate_involution, enumerate_group, fixed_group,
                        tau)
from symk.orbits import IWASAWA_NOTE, enumerate_double_cosets, orbit_count, vk_orbits
from symk.roots import Root, cayley_transform
from symk.tori import (Torus, classify_torus_classes, decompose, is_theta_k_split, rank_krank,
                       subtorus_points, theta_stable_tori)
from symk.weyl import weyl_quotient

GOLDEN = Path(__file__).parent / "golden"
AD, SP = NamedInvolution.antidiag(), NamedInvolution.symplectic()
ONE_SECOND = 1.0
SIXTY_SECONDS = 60.0


def record(number, ok, detail=""):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
    assert ok, detail


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_1_real_antidiag():
    k = RealModel()
    oc, dt = timed(lambda: orbit_count(2, AD, k))
    quotients = [q for _, q in oc.per_class]
    ok = oc.total == 4 and quotients == [2, 2] and dt < ONE_SECOND
    record(1, ok, f"total={oc.total} quotients={quotients} time={dt:.3f}s")


def test_criterion_2_real_symplectic():
    k = RealModel()
    oc, dt = timed(lambda: orbit_count(2, SP, k))
    ok = oc.total == 1 and IWASAWA_NOTE in oc.notes and dt < ONE_SECOND
    record(2, ok, f"total={oc.total} notes={oc.notes} time={dt:.3f}s")


def test_criterion_3_padic():
    def work():
        k = PadicModel(5)
        classes = classify_torus_classes(2, AD, k)
        poset = build_iposet(classes, AD.spec(k), k)
        diagram = expand_to_orbit_diagram(poset, AD, k)
        return classes, poset, diagram, orbit_count(2, AD, k).total

    (classes, poset, diagram, total), dt = timed(work)
    split = sum(1 for c in classes if c.signature == (0, 1))
    fixed = sum(1 for c in classes if c.signature == (1, 0))
    ok = (split, fixed) == (4, 1) and (len(poset.nodes), len(poset.covers)) == (5, 4) \
        and (len(diagram.nodes), len(diagram.edges)) == (6, 8) and total == 6 and dt < ONE_SECOND
    record(3, ok, f"classes={split}+{fixed} poset={len(poset.nodes)}/{len(poset.covers)} "
                  f"diagram={len(diagram.nodes)}/{len(diagram.edges)} orbits={total} time={dt:.3f}s")


def test_criterion_4_oracle_equivalence():
    start = time.perf_counter()
    rows = []
    for q in (3, 5, 7, 11, 13):
        k = Finite(q)
        for inv in (AD, SP):
            brute = enumerate_double_cosets(2, inv, q).count
            formula = orbit_count(2, inv, k).total
            vk = len(vk_orbits(2, inv.spec(k), q))
            rows.append((q, inv.canonical, brute, formula, vk))
    dt = time.perf_counter() - start
    ok = len(rows) == 10 and all(b == f == v for *_, b, f, v in rows) and dt < SIXTY_SECONDS
    record(4, ok, f"{sum(b == f == v for *_, b, f, v in rows)}/10 agree time={dt:.2f}s")


SUPPORTED = [(2, inv, k) for inv in (AD, SP, NamedInvolution.transpose_inverse(2),
                                     NamedInvolution.inner([[1, 0], [0, -1]]))
             for k in (RealModel(), Rational(), PadicModel(5), PadicModel(13), AlgClosedModel(),
                       QuadExt(Rational(), -1), QuadExt(RealModel(), -1),
                       Finite(3), Finite(5), Finite(7), Finite(9), Finite(11), Finite(13))] \
    + [(3, NamedInvolution.block_j(3, 1), Finite(3)), (3, NamedInvolution.transpose_inverse(3), Finite(3))]


def test_criterion_5_surjectivity_equivalence():
    agree, total = 0, 0
    for n, inv, k in SUPPORTED:
        rep = complexify(n, inv, k)
        by_rank = rank_criterion(n, inv, k)[2]
        total += 1
        agree += (not rep.cokernel) == by_rank == rep.surjective
    prediction = [complexify(2, SP, Finite(q)).surjective == (q % 4 == 1) for q in (3, 5, 7, 11, 13)]
    ok = agree == total and all(prediction)
    record(5, ok, f"{agree}/{total} configurations agree; q = 1 mod 4 rule {sum(prediction)}/5")


def _lx_fields():
    out = [(RealModel(), -1), (PadicModel(5), 2), (PadicModel(13), 2)]
    for q in (3, 5, 7, 11, 13):
        k = Finite(q)
        out.append((k, next(a for a in range(2, q) if not k.is_square(k(a)))))
    return out


def test_criterion_6_rank_ledger():
    failures, slowest = [], 0.0

    def check(label, got, expected):
        nonlocal slowest
        value, dt = timed(got)
        slowest = max(slowest, dt)
        if value != expected or dt >= ONE_SECOND:
            failures.append(f"{label}: {value} != {expected}")

    for n in range(2, 7):
        for i in range(1, n // 2 + 1):
            for k in (RealModel(), PadicModel(5), Finite(5), Rational()):
                check(f"BlockJ({n},{i}) {k.spec}",
                      lambda: rank_criterion(n, NamedInvolution.block_j(n, i), k), (n - 1, n - 1, True))
    for k, x in _lx_fields():
        for m in (1, 2, 3):
            inv = NamedInvolution.lx(m, x)
            check(f"Lx({m},{x}) {k.spec}", lambda: rank_criterion(2 * m, inv, k), (2 * m - 1, m - 1, False))
            ext = QuadExt(k, x)
            check(f"Lx({m},{x}) {ext.spec}", lambda: rank_criterion(2 * m, inv, ext), (2 * m - 1, 2 * m - 1, True))
    for n in range(2, 7):
        check(f"TI({n}) R", lambda: rank_criterion(n, NamedInvolution.transpose_inverse(n), RealModel()),
              (n // 2, 0, False))
    record(6, not failures, f"slowest={slowest:.3f}s" + (f" {failures[:3]}" if failures else ""))


def _node_counts(dot):
    """(domain nodes, codomain nodes, hollow nodes) in a complexification DOT."""
    lines = [ln.strip() for ln in dot.splitlines() if "[label=" in ln and "->" not in ln and "more" not in ln]
    return (sum(ln.startswith("k_") for ln in lines), sum(ln.startswith("kbar_") for ln in lines),
            sum("style=dashed" in ln for ln in lines))


def test_criterion_7_complexification_reports():
    reports = {
        "complexify_R_antidiag": complexify(2, AD, RealModel()),
        "complexify_R_symplectic": complexify(2, SP, RealModel()),
        "complexify_Q_antidiag": complexify(2, AD, Rational()),
    }
    golden = all(emit_diagram(r) == (GOLDEN / f"{name}.dot").read_text() for name, r in reports.items())
    a, b, c = reports.values()
    fibers_a = sorted(a.fibers.values())
    nodes = {name: _node_counts(emit_diagram(r)) for name, r in reports.items()}
    ok = golden and fibers_a == [1, 1, 2] and not a.cokernel and len(b.cokernel) == 2 \
        and nodes == {"complexify_R_antidiag": (4, 3, 0), "complexify_R_symplectic": (1, 3, 2),
                      "complexify_Q_antidiag": (10, 3, 0)} \
        and c.domain_poset.truncated and INFINITE in c.fibers.values() and 'more [label="..."' in emit_diagram(c)
    record(7, ok, f"golden={golden} (domain, codomain, hollow)={list(nodes.values())} fibers(a)={fibers_a} cokernel(b)={len(b.cokernel)} "
                  f"truncated(c)={c.domain_poset.truncated}")


def _rational_sl2(rng):
    def r():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    d = r() or Fraction(1)
    u = GroupElement([[1, r()], [0, 1]], Rational())
    lo = GroupElement([[1, 0], [r(), 1]], Rational())
    return u * lo * GroupElement([[d, 0], [0, 1 / d]], Rational())


def test_criterion_8_property_suites():
    checks = {}
    invs = (AD, SP, NamedInvolution.transpose_inverse(2))

    # theta^2 = id, tau right-H-invariant, theta(tau x) = tau(x)^-1: exhaustive over F_3
    ok = True
    k3 = Finite(3)
    G3 = list(enumerate_group(2, k3))
    for inv in invs:
        theta = inv.spec(k3)
        H = fixed_group(theta)
        for x in G3:
            t = tau(theta, x)
            ok &= theta.apply(theta.apply(x)) == x and theta.apply(t) == t.inverse()
            ok &= all(tau(theta, x * h) == t for h in H)
    checks["F3 involution laws"] = ok

    # same laws on 10^3 random rational samples, with random H-elements from the antidiag family
    rng = random.Random(2024)
    ok = True
    Q = Rational()
    for s in range(1000):
        inv = invs[s % 3]
        theta = inv.spec(Q)
        x = _rational_sl2(rng)
        t = tau(theta, x)
        ok &= theta.apply(theta.apply(x)) == x and theta.apply(t) == t.inverse()
        if inv is AD:
            a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            h = GroupElement([[(a + 1 / a) / 2, (a - 1 / a) / 2], [(a - 1 / a) / 2, (a + 1 / a) / 2]], Q)
            ok &= theta.apply(h) == h and tau(theta, x * h) == t
    checks["Q random laws"] = ok

    # dim+ + dim- = n - 1 over every decomposition we can enumerate
    ok = True
    for n, inv, q in [(2, AD, 5), (2, SP, 5), (2, invs[2], 5), (3, NamedInvolution.block_j(3, 1), 3),
                      (3, NamedInvolution.transpose_inverse(3), 3)]:
        theta = inv.spec(Finite(q))
        ok &= all(sum(decompose(T, theta)[:2]) == n - 1 for T in theta_stable_tori(theta))
    checks["dim sum"] = ok

    # T+ and T- meet in 2-torsion, exhaustive over SL(2, F_5)
    ok = True
    k5 = Finite(5)
    one = GroupElement.identity(2, k5)
    for inv in invs:
        theta = inv.spec(k5)
        for T in theta_stable_tori(theta):
            d = decompose(T, theta)
            ok &= all(x * x == one for x in subtorus_points(T, d.plus) & subtorus_points(T, d.minus))
    checks["2-torsion"] = ok

    # Cayley output theta-split on generators, every model
    ok = True
    for k in (RealModel(), Rational(), PadicModel(5), AlgClosedModel(), QuadExt(Rational(), -1),
              QuadExt(Finite(3), -1), Finite(3), Finite(5), Finite(9), Finite(13)):
        theta = AD.spec(k)
        S = Torus.from_frame([[k.one, k.one], [k.one, k.neg(k.one)]], k)
        T = cayley_transform(S, Root.of(0, 1, 2), theta)
        ok &= is_theta_k_split(T, theta) and all(theta.apply(x) == x.inverse() for x in T.generators())
    checks["Cayley split"] = ok

    # orbit count invariant under conjugating theta, 20 random conjugators over F_5
    ok = True
    rng = random.Random(5)
    G5 = list(enumerate_group(2, k5))
    for g in rng.sample(G5, 20):
        for inv, expected in ((AD, 4), (SP, 4)):
            ok &= enumerate_double_cosets(2, conjugate_involution(inv.spec(k5), g), 5).count == expected
    checks["conjugation invariance"] = ok

    failed = [name for name, v in checks.items() if not v]
    record(8, not failed, f"{len(checks) - len(failed)}/{len(checks)} suites" + (f" failed={failed}" if failed else ""))


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(sorted(ACCEPTANCE_LINES)))
