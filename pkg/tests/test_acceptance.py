"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import comb, factorial
from pathlib import Path

import pytest

from branchgraph import catalog
from branchgraph.boyer import BoyerInstance, check_general_boyer, first_entry_identity_check
from branchgraph.cone import ConeElement, cone_compare
from branchgraph.extres import extend, restrict, restriction_from_function
from branchgraph.graph import enumerate_paths, shifted_dim
from branchgraph.harmonic import HarmonicFunction, boundary_sets, check_harmonic, psi_sequence
from branchgraph.multiplicative import forbidding_precondition, ring_theorem_check
from branchgraph.order import is_primitive_coideal, subset_from_predicate
from branchgraph.products import product_dim, recover_components, tensor_harmonic

HERE = Path(__file__).resolve().parent
RESULTS: dict[int, tuple[bool, str]] = {}


def report(number: int, title: str, ok: bool, detail: str = "", capsys=None):
    RESULTS[number] = (ok, detail)
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def hook_length(lam) -> int:
    n = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, r in enumerate(lam):
        for j in range(r):
            prod *= (r - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


# -- criteria -----------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    checked = 0
    for name in ("pascal2", "young", "kingman", "product:chain,chain,chain"):
        g = catalog.build_graph(name, 8)
        verts = list(g.iter_vertices(8))
        for mu in verts:
            m = g.level(mu)
            rows = {k: g.dim_row(mu, k) for k in range(m, 9)}
            for nu in verts:
                n = g.level(nu)
                if n < m:
                    continue
                d = rows[n].get(nu, Fraction(0))
                for k in range(m, n + 1):
                    s = sum((c * g.dim(eta, nu) for eta, c in rows[k].items()), Fraction(0))
                    if s != d:
                        return False, f"{name}: {g.label(mu)} -> {g.label(nu)} via level {k}"
                    checked += 1
    elapsed = time.perf_counter() - start
    return elapsed < 10, f"{checked} identities in {elapsed:.1f}s"


def criterion_2():
    checked = 0
    for name in ("pascal2", "young"):
        g = catalog.build_graph(name, 8)
        verts = list(g.iter_vertices(8))
        for mu in verts:
            for nu in verts:
                gap = g.level(nu) - g.level(mu)
                if not 0 <= gap <= 6:
                    continue
                brute = sum((w for _, w in enumerate_paths(g, mu, nu)), Fraction(0))
                if brute != shifted_dim(g, mu, nu):
                    return False, f"{name}: {g.label(mu)} -> {g.label(nu)}"
                checked += 1
    return True, f"{checked} pairs"


def criterion_3():
    g = catalog.build_graph("young", 8)
    root = g.vertices(0)[0]
    for lam in g.iter_vertices(8):
        count = len(enumerate_paths(g, root, lam))
        if count != hook_length(lam) or shifted_dim(g, root, lam) != count:
            return False, f"{g.label(lam)}: {count} paths"
    ok = shifted_dim(g, root, g.vertex("[2,1]")) == 2
    return ok, f"{sum(1 for _ in g.iter_vertices(8))} shapes, dim([2,1]) = 2"


def criterion_4():
    checked = 0
    for name in ("product:chain,chain", "product:pascal2,chain"):
        g = catalog.build_graph(name, 8)
        verts = list(g.iter_vertices(8))
        for a in verts:
            for b in verts:
                if product_dim(g.factors, a, b) != shifted_dim(g, a, b):
                    return False, f"{name}: {g.label(a)} -> {g.label(b)}"
                checked += 1
    g = catalog.build_graph("product:pascal2,pascal2", 5)
    a, b = g.vertex("((1,0),(0,0))"), g.vertex("((2,1),(1,1))")
    closed, direct = product_dim(g.factors, a, b), shifted_dim(g, a, b)
    brute = sum((w for _, w in enumerate_paths(g, a, b)), Fraction(0))
    ok = closed == direct == brute == 24 == comb(4, 2) * 2 * 2
    return ok, f"{checked} pairs, worked instance = {direct}"


SUBHARMONIC_INPUTS = [
    ("pascal2", "bernoulli:p=1/3"),
    ("pascal2", "bernoulli:p=1/2"),
    ("pascal2", "bernoulli:p=2/3"),
    ("pascal2", "pascal-semifinite"),
    ("pascal2", "axis-infinite"),
    ("young", "schur-spec:k=2"),
    ("young", "schur-spec:k=3"),
    ("young", "schur-mix:k=2,3"),
    ("chain", "unit"),
    ("pascal:3", "tensor:w=1/2,1/3,1/6"),
    ("glued-pascal-demo", "glued-semifinite-demo"),
    ("chain-into-pascal", "chain-into-pascal-finite:p=1/2"),
]


def criterion_5():
    checked = 0
    for gname, fname in SUBHARMONIC_INPUTS:
        depth = 9 if gname == "pascal:3" else 12
        g = catalog.build_graph(gname, depth)
        phi = catalog.build_function(fname, g)
        if not check_harmonic(phi, depth, "subharmonic").ok:
            return False, f"{fname} is not subharmonic"
        for lam in g.iter_vertices(depth):
            psi = psi_sequence(phi, lam, depth)
            if any(x > y for x, y in zip(psi, psi[1:])):
                return False, f"{fname} at {g.label(lam)}"
            checked += 1
    return True, f"{checked} vertex sequences"


def criterion_6():
    checked = 0
    cases = [("pascal2", f"bernoulli:p={p}") for p in ("1/3", "1/2", "2/3")]
    cases += [("young", f"schur-spec:k={k}") for k in (2, 3)]
    for gname, fname in cases:
        g = catalog.build_graph(gname, 10)
        phi = catalog.build_function(fname, g)
        for lam in g.iter_vertices(10):
            psi = psi_sequence(phi, lam, 10)
            if any(x != phi(lam) for x in psi[g.level(lam):]):
                return False, f"{fname} at {g.label(lam)}"
            checked += 1
    return True, f"{checked} vertices"


def criterion_7():
    depth = 10
    g = catalog.build_graph("pascal2", depth)
    phi = catalog.build_function("bernoulli:p=1/2", g)
    I1 = catalog.build_subset("a>=1", g, depth)
    I2 = catalog.build_subset("a>=2", g, depth)
    table = extend(restrict(phi, I1, depth), g, depth)
    for lam in g.iter_vertices(depth):
        if lam in I1.members and any(x != phi(lam) for x in table.sequences[lam]):
            return False, f"not constant at {g.label(lam)}"
    root_seq = table.sequences[g.vertex("(0,0)")]
    if root_seq != [1 - Fraction(1, 2 ** N) for N in range(depth + 1)]:
        return False, "prelimit sums at (0,0)"
    # transitivity: I2 -> I1 -> whole graph against I2 -> whole graph, at every depth
    for D in range(2, depth + 1):
        res1 = restrict(phi, I1, D)
        g1 = res1.graph
        inner_I2 = subset_from_predicate(g1, lambda v: v[0] >= 2, D, kind="ideal", name="a>=2")
        inner = extend(restrict(HarmonicFunction(g1, rule=phi), inner_I2, D), g1, D)
        middle = {v: seq[-1] for v, seq in inner.sequences.items()}
        composite = extend(restriction_from_function(g, I1, middle, D, check=False), g, D)
        direct = extend(restrict(phi, I2, D), g, D)
        for lam in g.iter_vertices(D):
            if composite.sequences[lam][-1] != direct.sequences[lam][-1]:
                return False, f"transitivity at depth {D}, {g.label(lam)}"
    return True, "constant on the ideal, 1 - 2^-N at (0,0), transitivity to depth 10"


def criterion_8():
    g16 = catalog.build_graph("glued-pascal-demo", 16)
    phi = catalog.build_function("glued-semifinite-demo", g16)
    psi = psi_sequence(phi, g16.vertex("root@1"), 16)
    if psi != [Fraction(N) for N in range(17)]:
        return False, f"psi = {[str(x) for x in psi]}"
    g = catalog.build_graph("glued-pascal-demo", 12)
    I = catalog.build_subset("copy2", g, 12)
    lam = g.vertex("(0,0)@1")
    inst = BoyerInstance(g, I, lam, 1, {g.vertex("root@2"): 1})
    result = check_general_boyer(inst, 12)
    if result.status != "Satisfied":
        return False, f"Boyer check {result.status}"
    for N in range(1, 9):
        if cone_compare(g, ConeElement.vertex(g, lam), inst.b.scale(N), 12).status != "ProvenGE":
            return False, f"cone certificate fails at N={N}"
    rng = random.Random(8)
    outside = [v for v in g.iter_vertices(9) if v not in I.members]
    inside = [v for v in g.iter_vertices(10) if v in I.members]
    triples = 0
    while triples < 50:
        a, b = rng.choice(outside), rng.choice(inside)
        if g.level(b) <= g.level(a):
            continue
        rep = first_entry_identity_check(g, I, a, b, 12)
        if not rep.ok:
            return False, f"identity at ({g.label(a)}, {g.label(b)})"
        triples += 1
    return True, f"psi = N to 16, verified_N = {result.verified_N}, {triples} identity triples"


def criterion_9():
    g = catalog.build_graph("chain-into-pascal", 10)
    I = catalog.build_subset("copy2", g, 10)
    inst = BoyerInstance(g, I, g.vertex("0@1"), 1, {g.vertex("root@2"): 1})
    result = check_general_boyer(inst, 10)
    if result.status != "Violated":
        return False, f"status {result.status}"
    l, eta, margin = result.witness
    if (l, g.label(eta), margin) != (1, "(0,1)@2", -1):
        return False, f"witness ({l}, {g.label(eta)}, {margin})"
    phi = catalog.build_function("chain-into-pascal-finite:p=1/2", g)
    positive = all(0 < phi(v) for v in g.iter_vertices(10))
    ok = check_harmonic(phi, 10).ok and phi.is_finite(10) and positive
    return ok, "Violated at l=1, eta=(0,1)@2, margin -1; finite positive function is harmonic"


def criterion_10():
    M = catalog.build_structure("young", 5)
    g = M.graph
    for k in (2, 3):
        phi = catalog.build_function(f"schur-spec:k={k}", g)
        if ring_theorem_check(M, phi, 5).status != "MultiplicativeToDepth":
            return False, f"schur-spec:k={k}"
    phi2 = catalog.build_function("schur-spec:k=2", g)
    if (phi2(g.vertex("[2]")), phi2(g.vertex("[1,1]"))) != (Fraction(3, 4), Fraction(1, 4)):
        return False, "spot values"
    mix = ring_theorem_check(M, catalog.build_function("schur-mix:k=2,3", g), 5)
    ok = mix.status == "Violation" and mix.gap != 0
    return ok, f"mix violated at ({g.label(mix.witness[0])}, {g.label(mix.witness[1])}), gap {mix.gap}"


def criterion_11():
    for name in ("young", "pascal2"):
        v = forbidding_precondition(catalog.build_structure(name, 10), 10)
        if v.status != "AllProductsNonzero":
            return False, name
    # consistency: with nonzero products, a finite multiplicative function
    # cannot vanish at one vertex and be positive at another vertex of the same level
    M = catalog.build_structure("pascal2", 6)
    g = M.graph
    for p in ("0", "1/2", "1"):
        phi = catalog.build_function(f"bernoulli:p={p}", g)
        if ring_theorem_check(M, phi, 6).status != "MultiplicativeToDepth":
            return False, f"bernoulli:p={p}"
        kernel = boundary_sets(phi, 6).kernel.members
        for u in kernel:
            for w in g.iter_vertices(6 - g.level(u)):
                if w not in kernel:
                    prod = M.constants(u, w)
                    if any(phi(nu) != 0 for nu in prod):
                        return False, f"kernel not absorbing at p={p}"
    return True, "young and pascal2 to degree 10; kernels absorb products"


def criterion_12():
    g = catalog.build_graph("pascal:3", 6)
    rng = random.Random(12)
    for _ in range(10):
        while True:
            a, b = Fraction(rng.randint(1, 20), 23), Fraction(rng.randint(1, 20), 23)
            if a + b < 1:
                break
        w = (a, b, 1 - a - b)
        phi = tensor_harmonic(g, [HarmonicFunction(f, rule=lambda v: Fraction(1)) for f in g.factors], w)
        dec = recover_components(phi, 6, series=False)
        if dec.w != w or dec.stratum != (0, 1, 2) or not dec.roundtrip:
            return False, f"w = {[str(x) for x in w]}"
        if any(x != 1 for table in dec.components.values() for x in table.values()):
            return False, "component tables are not the unit"
    phi = catalog.build_function("tensor:w=1/2,1/2,0", g)
    dec = recover_components(phi, 6, series=False)
    ok = dec.stratum == (0, 1) and dec.w == (Fraction(1, 2), Fraction(1, 2), Fraction(0)) and dec.roundtrip
    return ok, "10 interior points and stratum {1,2}"


INDECOMPOSABLE = [
    ("pascal2", "bernoulli:p=1/3"),
    ("pascal2", "bernoulli:p=1/2"),
    ("pascal2", "bernoulli:p=1"),
    ("pascal2", "pascal-semifinite"),
    ("young", "schur-spec:k=2"),
    ("young", "schur-spec:k=3"),
    ("chain", "unit"),
    ("pascal:3", "tensor:w=1/2,1/3,1/6"),
    ("pascal:3", "tensor:w=1/2,1/2,0"),
    ("glued-pascal-demo", "glued-semifinite-demo"),
]


def criterion_13():
    for gname, fname in INDECOMPOSABLE:
        g = catalog.build_graph(gname, 8)
        phi = catalog.build_function(fname, g)
        assert phi.status == "indecomposable"
        support = boundary_sets(phi, 8).support
        verdict = is_primitive_coideal(g, support, 8)
        if verdict.status != "ProvenPrimitiveToDepth":
            return False, f"{fname}: {verdict.status}"
    g = catalog.build_graph("pascal2", 8)
    v = is_primitive_coideal(g, catalog.build_subset("two-axes", g, 8), 8)
    ok = v.status == "RefutedWithWitnessPair" and [g.label(x) for x in v.witness] == ["(1,0)", "(0,1)"]
    return ok, f"{len(INDECOMPOSABLE)} supports primitive; two-axes refuted"


RUNNER = """
import io, sys
sys.path.insert(0, {tests!r})
from cli_cases import CASES
from branchgraph.cli import main
for argv, want in CASES:
    out, err = io.StringIO(), io.StringIO()
    rc = main(argv, stdout=out, stderr=err)
    sys.stdout.write("$ " + " ".join(argv) + "\\n" + "exit " + str(rc) + "\\n" + out.getvalue())
    if rc != want:
        sys.stdout.write("UNEXPECTED EXIT CODE\\n")
"""


def criterion_14():
    outputs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        env.pop("BRANCHGRAPH_CACHE", None)
        proc = subprocess.run(
            [sys.executable, "-c", RUNNER.format(tests=str(HERE))],
            capture_output=True,
            env=env,
            timeout=300,
        )
        if proc.returncode != 0:
            return False, proc.stderr.decode()[-300:]
        outputs.append(proc.stdout)
    if b"UNEXPECTED EXIT CODE" in outputs[0]:
        return False, "a CLI case returned an unexpected exit code"
    same = outputs[0] == outputs[1]
    return same, f"{len(outputs[0])} bytes, identical under two hash seeds" if same else "outputs differ"


CRITERIA = [
    (1, "dimension recursion", criterion_1),
    (2, "shifted_dim equals path enumeration", criterion_2),
    (3, "Young dimensions count standard tableaux", criterion_3),
    (4, "product dimension closed form", criterion_4),
    (5, "prelimit sums are nondecreasing", criterion_5),
    (6, "prelimit sums of finite harmonic functions are exact", criterion_6),
    (7, "restriction and extension roundtrip", criterion_7),
    (8, "semifinite glued demo", criterion_8),
    (9, "negative control on chain-into-Pascal", criterion_9),
    (10, "ring theorem check", criterion_10),
    (11, "forbidding precondition", criterion_11),
    (12, "simplex parametrization roundtrip", criterion_12),
    (13, "supports of indecomposable functions are primitive", criterion_13),
    (14, "CLI determinism", criterion_14),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    report(number, title, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not report(number, title, ok, detail)
    sys.exit(1 if failed else 0)
