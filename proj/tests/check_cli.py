#!/usr/bin/env python3
"""Runs the built CLI on the fixtures.

usage: check_cli.py exit-codes BINARY FIXTURES
       check_cli.py schema BINARY FIXTURES SCHEMA
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def cases(fx, tmp):
    bad = tmp / "bad.mg"
    bad.write_text("node A\nedge A => B\n")
    scc = tmp / "scc.grp"
    return [
        (["separate", "--graph", fx / "sigma_cycle.mg", "--kind", "sigma", "--a", "A", "--b", "D", "--given", "B,C"], 1),
        (["separate", "--graph", fx / "sigma_cycle.mg", "--kind", "m", "--a", "A", "--b", "D", "--given", "B,C"], 0),
        (["separate", "--graph", fx / "sigma_cycle.mg", "--a", "A", "--b", "D", "--explain"], 0),
        (["separate", "--graph", fx / "sigma_cycle.mg", "--a", "A", "--b", "D", "--given", "B,C", "--explain"], 1),
        (["coarsen", "--graph", fx / "dsep_ii.mg"], 0),
        (["acyclify", "--graph", fx / "sigma_cycle.mg"], 0),
        (["partition-scc", "--graph", fx / "sigma_cycle.mg"], 0),
        (["check-commute", "--graph", fx / "sigma_cycle.mg", "--partition", scc], 0),
        (["check-commute", "--graph", fx / "commute_break.mg"], 1),
        (["faithfulness", "--graph", fx / "dsep_iv.mg"], 1),
        (["faithfulness", "--graph", fx / "scc_m_violation.mg", "--kind", "sigma"], 0),
        (["faithfulness", "--graph", fx / "scc_m_violation.mg", "--kind", "m"], 1),
        (["criteria", "--graph", fx / "dsep_ii.mg"], 1),
        (["criteria", "--graph", fx / "nonlocal_found.mg"], 1),
        (["causes", "--graph", fx / "dsep_ii.mg"], 1),
        (["discover", "--graph", fx / "meek_cyclic.mg"], 0),
        (["discover", "--graph", fx / "meek_cyclic.mg", "--sigma-aware"], 1),
        (["discover", "--graph", fx / "nonlocal_found.mg", "--sigma-aware"], 1),
        (["search-nonlocal", "--seed", "1"], 0),
        (["search-nonlocal", "--attempts", "2"], 1),
        (["ts", "unroll", "--template", fx / "chain.ts"], 0),
        (["ts", "summary", "--template", fx / "chain.ts"], 0),
        (["ts", "grouped-summary", "--template", fx / "mixing_violation.ts"], 0),
        (["ts", "grouped-ts", "--template", fx / "mixing_violation.ts", "--window", "0:1"], 0),
        (["ts", "mixing", "--template", fx / "mixing_violation.ts"], 0),
        (["ts", "mixing", "--template", fx / "chain.ts"], 0),
        (["ts", "causation", "--template", fx / "mixing_violation.ts"], 0),
        (["ts", "faithfulness", "--template", fx / "mixing_violation.ts"], 1),
        (["ts", "faithfulness", "--template", fx / "chain.ts", "--level", "grouped-ts", "--window", "0:1"], 0),
        (["coarsen", "--graph", bad], 2),
        (["coarsen", "--graph", tmp / "missing.mg"], 2),
        (["separate", "--graph", fx / "sigma_cycle.mg", "--a", "A", "--b", "Q"], 2),
        (["bogus"], 2),
    ]


def run(binary, args):
    return subprocess.run([binary, *map(str, args)], capture_output=True, text=True)


def main():
    mode, binary, fx = sys.argv[1], sys.argv[2], Path(sys.argv[3])
    failures = 0
    with tempfile.TemporaryDirectory() as d:
        tmp = Path(d)
        (tmp / "scc.grp").write_text(run(binary, ["partition-scc", "--graph", fx / "sigma_cycle.mg"]).stdout)
        if mode == "exit-codes":
            for args, want in cases(fx, tmp):
                got = run(binary, args).returncode
                if got != want:
                    failures += 1
                    print(f"FAIL exit {got}, expected {want}: {' '.join(map(str, args))}")
        elif mode == "schema":
            import jsonschema

            schema = json.loads(Path(sys.argv[4]).read_text())
            jsonschema.Draft202012Validator.check_schema(schema)
            validator = jsonschema.Draft202012Validator(schema)
            checked = 0
            for args, want in cases(fx, tmp):
                if want == 2:
                    continue
                r = run(binary, [*args, "--json"])
                doc = json.loads(r.stdout)
                errors = list(validator.iter_errors(doc))
                checked += 1
                if errors or r.returncode != want:
                    failures += 1
                    print(f"FAIL {' '.join(map(str, args))}: exit {r.returncode}; {errors[:1]}")
            # The schema must reject documents that break it.
            good = json.loads(run(binary, ["faithfulness", "--graph", fx / "dsep_iv.mg", "--json"]).stdout)
            for broken in (
                {**good, "schema_version": 2},
                {**good, "violations": [{**good["violations"][0], "class": "GLOBAL"}]},
                {k: v for k, v in good.items() if k != "max_cond"},
            ):
                if validator.is_valid(broken):
                    failures += 1
                    print(f"FAIL schema accepted {broken}")
            print(f"{checked} JSON outputs checked")
        else:
            sys.exit(f"unknown mode {mode}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
