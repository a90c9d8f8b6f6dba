"""Exit criteria for the workbench, one test per criterion."""
import json
import random
import subprocess
import sys
import time

import astgen
import oracle
from primaltop.cli import main
from primaltop.dsl import PASS, eval_formula, format, parse
from primaltop.enumeration import (
    brute_force_primals, brute_force_topologies, enumerate_primals, enumerate_spaces,
    enumerate_topologies,
)
from primaltop.operators import ROUTES, OperatorTable
from primaltop.verify import (
    DSL_ENCODINGS, NECESSARY_CONDITION_FORMULAS, REGISTRY, Witness, check_all_spaces, run_check,
    search_counterexample,
)


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "primaltop", *argv],
                          capture_output=True, text=True)


def compute(space_doc, expr, tmp_path, **bindings):
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(space_doc))
    argv = ["compute", str(path), "--expr", expr, "--format", "json"]
    for k, v in bindings.items():
        argv += ["--bind", f"{k}={v}"]
    proc = cli(*argv)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)["value"]


def test_c1_full_battery(criterion):
    psi_items = [n for n in REGISTRY if n.startswith("tpsi-")]
    start = time.perf_counter()
    proc = cli("verify-paper", "--n", "3", "--format", "json")
    t3 = time.perf_counter() - start
    doc3 = json.loads(proc.stdout)
    start = time.perf_counter()
    report2 = check_all_spaces(2)
    t2 = time.perf_counter() - start
    ok = (proc.returncode == 0 and doc3["check_count"] >= 24 and len(psi_items) == 12
          and doc3["space_count"] == 232 and doc3["totals"]["fail"] == 0 and t3 < 60
          and report2.space_count == 16 and report2.fail_count == 0 and t2 < 1)
    criterion("1 full battery", ok,
              f"{doc3['check_count']} checks, n=3: {doc3['space_count']} spaces "
              f"fail={doc3['totals']['fail']} in {t3:.2f}s (CLI); n=2: 16 spaces "
              f"fail={report2.fail_count} in {t2:.3f}s")
    assert ok


def test_c2_primal_topology_routes(criterion):
    spaces = mismatches = 0
    for n in (1, 2, 3):
        for s in enumerate_spaces(n):
            ops = OperatorTable(s)
            fams = [ops.primal_topology(r).tau_star.open for r in ROUTES]
            spaces += 1
            mismatches += len(set(fams)) != 1
    ok = mismatches == 0
    criterion("2 tau_star triple-route agreement", ok, f"{spaces} spaces, {mismatches} mismatches")
    assert ok


def test_c3_enumeration_counts(criterion):
    tops = [len(list(enumerate_topologies(n))) for n in (1, 2, 3, 4)]
    brute = [len(brute_force_topologies(n)) for n in (1, 2, 3)]
    same = all([t.open for t in enumerate_topologies(n)] == brute_force_topologies(n)
               for n in (1, 2, 3))
    primals = [len(list(enumerate_primals(n))) for n in (1, 2, 3, 4)]
    scan = all(sorted(p.sets for p in enumerate_primals(n)) == brute_force_primals(n)
               for n in (1, 2, 3))
    ok = (tops == [1, 4, 29, 355] and brute == [1, 4, 29] and same
          and primals == [2, 4, 8, 16] and scan)
    criterion("3 enumeration counts", ok,
              f"topologies={tops} (brute {brute}, identical={same}); primals={primals} "
              f"(family scan complete={scan})")
    assert ok


def test_c4_oracle_equivalence(criterion):
    checked = bad = 0
    for n in (1, 2, 3):
        X = oracle.ground(n)
        for s in enumerate_spaces(n):
            ops = OperatorTable(s)
            tau = {oracle.decode(u, n) for u in s.topology.open}
            P = {oracle.decode(p, n) for p in s.primal.sets}
            for a in range(1 << n):
                checked += 1
                fast, literal = ops.diamond(a), ops.diamond_literal(a)
                ref = oracle.code(oracle.diamond(X, tau, P, oracle.decode(a, n)))
                psi_def = ops.psi_literal(a)
                psi_id = ops.c(ops.diamond(ops.c(a)))
                bad += not (fast == literal == ref and psi_def == psi_id)
    ok = bad == 0
    criterion("4 diamond/psi oracle equivalence", ok, f"{checked} (space, subset) pairs, {bad} bad")
    assert ok


def _discrete_three(space):
    return space.n == 3 and space.topology.open == tuple(range(8))


def test_c5a_contraction_refuted(criterion, tmp_path):
    w = search_counterexample("forall A: d(A) <= A", 3)
    again = search_counterexample("forall A: d(A) <= A", 3)
    ok = isinstance(w, Witness) and w == again
    if ok:
        a = w.bindings["A"]
        d = compute(w.space.describe(), "d(A)", tmp_path, A=a)
        ok = d & ~a != 0
    criterion("5a witness for d(A) <= A", ok,
              f"{w.space.describe()} A={w.bindings['A']}" if isinstance(w, Witness) else repr(w))
    assert ok


def test_c5b_non_suitable_space(criterion, tmp_path):
    w = search_counterexample("forall A: notinP(~A | d(A))", 3)
    ok = (isinstance(w, Witness) and _discrete_three(w.space)
          and bin(w.space.primal.generator).count("1") == 2 and w.bindings == {"A": 0b111})
    if ok:
        value = compute(w.space.describe(), "~A | d(A)", tmp_path, A=7)
        ok = value in w.space.primal
    detail = (f"{w.space.describe()} A={w.bindings}" if isinstance(w, Witness)
              else f"no non-suitable space exists: {w}")
    criterion("5b non-suitable discrete space", ok, detail)
    assert ok


def test_c5c_conditions_not_sufficient(criterion):
    w = search_counterexample("suitable", 3, where=NECESSARY_CONDITION_FORMULAS)
    ok = isinstance(w, Witness) and _discrete_three(w.space)
    detail = (f"{w.space.describe()}" if isinstance(w, Witness)
              else f"every space meeting the conditions is suitable: {w}")
    criterion("5c necessary conditions without suitability", ok, detail)
    assert ok


def test_c6_meet_equality_observation(criterion):
    proc = cli("check", "--all-n", "3", "--format", "json", "forall A,B: d(A&B) = d(A)&d(B)")
    doc = json.loads(proc.stdout)
    ok = proc.returncode == 0 and doc["verdict"] == "pass" and doc["spaces_scanned"] == 232
    detail = ("PASS on 232 spaces" if ok else
              f"exit {proc.returncode}, witness {doc.get('space')} {doc.get('bindings')}")
    criterion("6 d(A&B) = d(A)&d(B) on all n=3 spaces", ok, detail)
    assert ok


def test_c7_dsl(criterion):
    rng = random.Random(20240101)
    corpus = [astgen.formula(rng, depth=5) for _ in range(1000)]
    roundtrip_bad = sum(parse(format(f)) != f for f in corpus)
    disagreements = comparisons = 0
    for n in (1, 2, 3):
        for s in enumerate_spaces(n):
            ops = OperatorTable(s)
            for name, text in DSL_ENCODINGS.items():
                comparisons += 1
                disagreements += eval_formula(parse(text), ops).status != run_check(name, ops).status
    ok = roundtrip_bad == 0 and len(DSL_ENCODINGS) >= 10 and disagreements == 0
    criterion("7 DSL round-trip and registry agreement", ok,
              f"{len(corpus)} ASTs, {roundtrip_bad} round-trip failures; "
              f"{len(DSL_ENCODINGS)} encoded checks, {comparisons} comparisons, "
              f"{disagreements} disagreements")
    assert ok


def test_c8_determinism(criterion, tmp_path):
    outs = []
    for _ in range(2):
        proc = cli("verify-paper", "--n", "3", "--format", "json")
        outs.append(proc.stdout.encode())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    criterion("8 byte-identical verify-paper reports", ok, f"{len(outs[0])} bytes each")
    assert ok
