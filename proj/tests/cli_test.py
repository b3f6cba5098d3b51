# Copyright 2026 The wfmemory Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""End-to-end checks of the wfmemory command line.

usage: cli_test.py WFMEMORY_BINARY SCHEMA_PATH
"""

import csv
import hashlib
import io
import json
import math
import os
import subprocess
import sys
import tempfile

import jsonschema

BINARY, SCHEMA_PATH = sys.argv[1], sys.argv[2]
with open(SCHEMA_PATH) as fh:
    SCHEMA = json.load(fh)
VALIDATOR = jsonschema.Draft7Validator(SCHEMA)

FAILURES = []


def run(*args):
    proc = subprocess.run([BINARY, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        FAILURES.append(what)


def report(*args):
    code, out, err = run(*args)
    check(code == 0, f"{' '.join(args)} exits 0 (got {code}: {err.strip()})")
    doc = json.loads(out) if code == 0 else {}
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    check(not errors, f"{args[0]} report validates"
          + (f": {errors[0].message}" if errors else ""))
    return doc


def checksum_ok(doc):
    dumped = json.dumps(doc["payload"], separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(dumped.encode()).hexdigest() == \
        doc["manifest"]["checksums"]["payload"]


ANGLE = "0.3926990817"

# simple
doc = report("simple", "--alpha2", "0.5", "--wigner-angle", ANGLE, "--report", "json")
t2 = doc["payload"]["friend"]["t2"]["p"]
check(abs(t2[0] - 0.25) < 1e-9 and abs(t2[1] - 0.75) < 1e-9, "simple t2 marginal is (1/4, 3/4)")
check(doc["payload"]["friend"]["t1"]["p"] == [0.5, 0.5] or
      max(abs(p - 0.5) for p in doc["payload"]["friend"]["t1"]["p"]) < 1e-15,
      "simple t1 marginal is (1/2, 1/2)")
check(checksum_ok(doc), "payload checksum matches the compact payload dump")

# manifest echo round-trips to the exact payload values
params = doc["manifest"]["parameters"]
cfg = doc["payload"]["config"]
same = all(float(params[f"{k}.magnitude"]) == cfg[k]["magnitude"] and
           float(params[f"{k}.phase"]) == cfg[k]["phase"] for k in cfg)
check(same, "manifest parameters parse back to the exact configuration")

# extended
doc = report("extended", "--alpha2", "0.5", "--wigner-angle", ANGLE,
             "--bob-mu2", str(1 / 3))
joint = doc["payload"]["joint"]["t3"]["p"]
check(abs(joint[0][0] - (7 - 2 * math.sqrt(2)) / 24) < 1e-9, "extended t3 table entry")

# flip-solve
doc = report("flip-solve", "--model", "single", "--alpha2", "0.5", "--wigner-angle", ANGLE)
sol = doc["payload"]["solution"]
check(sol["status"] == "infeasible" and sol["certificate"] is not None,
      "single flip infeasible with certificate")
doc = report("flip-solve", "--model", "joint-two", "--alpha2", "0.5",
             "--wigner-angle", ANGLE, "--bob-angle", "0")
check(abs(doc["payload"]["solution"]["parameters"][0] - 0.25) < 1e-9, "joint-two q = 1/4")
doc = report("flip-solve", "--model", "two", "--alpha2", "0.5",
             "--wigner-angle", str(math.pi / 4), "--tie-break", "min-mass")
check(max(doc["payload"]["solution"]["parameters"]) < 1e-12, "min-mass picks q = 0")
doc = report("flip-solve", "--model", "four", "--alpha2", "0.5",
             "--wigner-angle", ANGLE, "--bob-mu2", str(1 / 3))
check(doc["payload"]["solution"]["effective"] is not None, "four-parameter effective flip")

# protocol
first = report("protocol", "--n", "1000", "--message", "0101", "--seed", "42")
check(first["payload"]["result"]["decoded_message"] == "0101", "protocol decodes 0101")
check(first["manifest"]["seed"] == 42, "seed recorded in the manifest")
_, again, _ = run("protocol", "--n", "1000", "--message", "0101", "--seed", "42")
again = json.loads(again)
check(json.dumps(again["payload"]) == json.dumps(first["payload"]) and
      again["manifest"] == first["manifest"], "protocol payload is reproducible")
doc = report("protocol", "--n", "100", "--reps", "12", "--seed", "7")
check(len(doc["payload"]["message"]) == 12, "--reps alone draws a random message")
doc = report("protocol", "--n", "50", "--message", "01", "--reps", "3")
check(doc["payload"]["message"] == "010101", "--reps repeats --message")

# fig5
doc = report("fig5", "--steps", "200", "--cosdphi", "1")
check(doc["payload"]["any_infeasible"], "fig5 cos=1 has infeasible points")
code, out, _ = run("fig5", "--steps", "2", "--cosdphi", "1", "--report", "csv")
rows = list(csv.reader(io.StringIO(out)))
check(code == 0 and rows[0] == ["x", "q00", "feasible"] and len(rows) == 3,
      "fig5 CSV header and two rows")
check(float(rows[1][1]) == 0.0 and float(rows[2][1]) == 0.0 and
      abs(float(rows[2][0]) - math.pi / 2) < 1e-11, "fig5 endpoints are zero")
code, out, _ = run("fig5", "--steps", "200", "--cosdphi", "0", "--report", "csv")
check(all(r[2] == "true" for r in list(csv.reader(io.StringIO(out)))[1:]),
      "fig5 cos=0 all feasible")

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "fig5.csv")
    code, _, _ = run("fig5", "--steps", "50", "--report", "csv", "--out", path)
    with open(path) as fh:
        text = fh.read()
    with open(path + ".manifest.json") as fh:
        manifest = json.load(fh)
    check(code == 0 and not list(VALIDATOR.iter_errors(manifest)), "CSV sidecar manifest validates")
    check(manifest["manifest"]["checksums"]["csv"] ==
          hashlib.sha256(text.encode()).hexdigest(), "CSV checksum recorded")
    jpath = os.path.join(tmp, "simple.json")
    code, _, _ = run("simple", "--alpha2", "0.2", "--wigner-a2", "0.3", "--out", jpath)
    with open(jpath) as fh:
        check(code == 0 and not list(VALIDATOR.iter_errors(json.load(fh))), "--out JSON validates")

# exit codes
check(run("simple", "--alpha2", "0.5", "--wigner-angle", "0.3", "--wigner-a2", "0.1")[0] == 2,
      "mixed Wigner forms is a usage error")
check(run("extended", "--alpha2", "0.5", "--wigner-angle", "0.3", "--bob-angle", "0.1",
          "--bob-mu2", "0.5")[0] == 2, "mixed Bob forms is a usage error")
check(run("simple", "--nope")[0] == 2, "unknown flag is a usage error")
check(run("simple", "--alpha2", "abc", "--wigner-angle", "0.3")[0] == 2,
      "malformed number is a usage error")
check(run("flip-solve", "--model", "bogus", "--wigner-angle", "0.3")[0] == 2,
      "unknown model is a usage error")
check(run("simple", "--alpha2", "0.5", "--beta2", "0.6", "--wigner-angle", "0.3")[0] == 3,
      "unnormalized amplitudes are a domain error")
check(run("simple", "--alpha2", "1.5", "--wigner-angle", "0.3")[0] == 3,
      "out-of-range magnitude is a domain error")
check(run("fig5", "--steps", "5", "--out", "/nonexistent-dir/a/b.json")[0] == 3,
      "unwritable path is a domain error")
check(run("protocol", "--n", "10", "--message", "01x")[0] == 2, "bad message bits")
check(run()[0] == 2, "missing subcommand is a usage error")

# verify-paper
doc = report("verify-paper", "--report", "json")
check(doc["payload"]["all_passed"] and len(doc["payload"]["criteria"]) == 9,
      "verify-paper passes all nine checks")

print(f"{len(FAILURES)} failure(s)")
sys.exit(1 if FAILURES else 0)
