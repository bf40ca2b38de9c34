"""End-to-end checks of the ccheck executable: exit codes, JSON schema, explain."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, ROOT = sys.argv[1], sys.argv[2]
CORPUS = os.path.join(ROOT, "corpus")
SCHEMA = json.load(open(os.path.join(ROOT, "docs", "report.schema.json")))
ADT = os.path.join(CORPUS, "stack.adt")
failures = []


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def expect(cond, what):
    print(("ok    " if cond else "FAIL  ") + what)
    if not cond:
        failures.append(what)


def ct(name):
    return os.path.join(CORPUS, name)


def report(name, *extra):
    r = run("check", ADT, ct(name), "--format", "json", *extra)
    j = json.loads(r.stdout)
    try:
        jsonschema.validate(j, SCHEMA)
        expect(True, f"{name} {' '.join(extra)} report validates against the schema".replace("  ", " "))
    except jsonschema.ValidationError as e:
        expect(False, f"{name} report validates against the schema: {e.message}")
    return r, j


# Exit codes, and agreement between the process status and the report.
for name, code in [("stack_model.ct", 0), ("stack_weak.ct", 1), ("stack_malicious.ct", 1),
                   ("stack_model_no_is_empty_def.ct", 1), ("stack_model_prefix_equality.ct", 1)]:
    r, j = report(name)
    expect(r.returncode == code, f"check {name} exits {code} (got {r.returncode})")
    expect(j["exit_code"] == r.returncode, f"{name} report exit_code matches the process")

r, j = report("stack_model.ct")
expect(j["verdict"]["complete"] is True, "model contract is complete")
expect(len(j["drivers"]) == 12, "model report lists 12 drivers")
expect(run("check", ADT, ct("stack_model.ct"), "--format", "json").stdout == r.stdout,
       "JSON output is byte-stable")
env = dict(os.environ, CCHECK_THREADS="1")
serial = subprocess.run([BIN, "check", ADT, ct("stack_weak.ct"), "--format", "json"],
                        capture_output=True, text=True, env=env).stdout
expect(serial == report("stack_weak.ct")[0].stdout, "JSON output does not depend on CCHECK_THREADS")

r, j = report("stack_weak.ct", "--branch-cap", "5")
statuses = {d["status"] for d in j["drivers"]}
expect("resource_limit" in statuses, "a small branch cap yields resource_limit")
expect(r.returncode in (1, 5), "branch cap run exits 1 or 5")
r, j = report("stack_model.ct", "--len", "0")
expect(any(d["vacuous"] for d in j["drivers"]), "fully pruned drivers are reported vacuous")

r = run("check", ADT, ct("stack_model.ct"), "--k", "2", "--len", "3")
expect(r.returncode == 0 and "complete: true" in r.stdout, "text report ends with complete: true")
r = run("check", ADT, ct("stack_weak.ct"))
expect("post s1.is_equal(s2) violated" in r.stdout, "text report prints the A2 trace")

r = run("check", ADT, ct("missing.ct"))
expect(r.returncode == 2 and "file-not-found" in r.stderr, "missing contract exits 2 with file-not-found")
r = run("check", ADT)
expect(r.returncode == 2, "missing argument exits 2")
with tempfile.TemporaryDirectory() as tmp:
    bad = os.path.join(tmp, "bad.ct")
    open(bad, "w").write("class C[G]\ncreate new\ncommand new\n  ensure size = 0\n")
    r = run("check", ADT, bad)
    expect(r.returncode == 2 and "bad.ct:4:" in r.stderr, "contract diagnostics exit 2 with a position")

# drivers
r = run("drivers", ADT, ct("stack_model.ct"))
expect(r.returncode == 0, "drivers exits 0")
golden = open(os.path.join(ROOT, "tests", "golden", "stack_drivers.txt")).read()
expect(r.stdout == golden, "drivers output matches the golden listing")
expect(run("drivers", ADT, ct("stack_weak.ct")).stdout == golden, "weak contract yields the same listing")
noax = os.path.join(CORPUS, "stack_noaxioms.adt")
r = run("drivers", noax, ct("stack_weak.ct"))
expect("equivalence_" not in r.stdout, "no equivalence drivers without is_equal axioms")
r = run("drivers", noax, ct("stack_weak.ct"), "--force-equivalence-drivers")
expect(r.stdout.count("equivalence_") == 3, "forced equivalence drivers are listed")

# explain
with tempfile.TemporaryDirectory() as tmp:
    full = os.path.join(tmp, "weak.json")
    r = run("check", ADT, ct("stack_weak.ct"), "--format", "json", "--out", full)
    expect(r.returncode == 1 and os.path.exists(full), "--out writes the report")
    data = json.load(open(full))
    cex = next(d["counterexample"] for d in data["drivers"] if d["name"] == "axiom_A2")
    trace = os.path.join(tmp, "a2.json")
    json.dump(cex, open(trace, "w"))

    r = run("explain", ADT, ct("stack_weak.ct"), trace)
    expect(r.returncode == 0, "explain of the A2 trace exits 0")
    expect(r.stdout.strip().splitlines()[-1] == "post s1.is_equal(s2) violated",
           "explain narrative ends with the violated post")
    expect("from {item=e0, is_empty=False} to {item=?, is_empty=True}" in r.stdout,
           "explain shows states before and after each call")
    r = run("explain", ADT, ct("stack_weak.ct"), full, "--driver", "axiom_A2")
    expect(r.returncode == 0, "explain accepts a full report with --driver")
    r = run("explain", ADT, ct("stack_model.ct"), trace)
    expect(r.returncode == 4, f"A2 trace against the model contract is stale (got {r.returncode})")

    cex["steps"][1]["post"] = cex["steps"][0]["post"]
    json.dump(cex, open(trace, "w"))
    r = run("explain", ADT, ct("stack_weak.ct"), trace)
    expect(r.returncode == 4, f"a trace that no longer fails exits 4 (got {r.returncode})")

    truncated = os.path.join(tmp, "cut.json")
    open(truncated, "w").write(open(full).read()[:200])
    r = run("explain", ADT, ct("stack_weak.ct"), truncated)
    expect(r.returncode == 2, "truncated trace exits 2")

sys.exit(1 if failures else 0)
