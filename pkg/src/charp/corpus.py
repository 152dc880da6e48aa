"""Runner for the bundled corpus of worked examples.

A case is a directory holding ``case.ring`` (ring and named ideals),
``script.txt`` (one CLI command per line, ``--ring`` implied) and
``expected.json`` (checks on dotted paths into each step's payload).
"""

from __future__ import annotations

import json
import shlex
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

CORPUS_ROOT = Path(__file__).parent / "corpus"


def _root(root):
    return Path(root) if root else CORPUS_ROOT


def list_cases(root=None) -> list:
    r = _root(root)
    return sorted(d.name for d in r.iterdir() if (d / "case.ring").is_file())


def read_script(case_dir: Path) -> list:
    lines = []
    for raw in (case_dir / "script.txt").read_text(encoding="utf-8").splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append(s)
    return lines


def lookup(payload, path: str):
    cur = payload
    for part in path.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        elif isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            raise KeyError(path)
    return cur


def _check(chk, steps):
    step = steps[chk["step"]]
    out = {"step": chk["step"], "path": chk.get("path"), "source": chk.get("source", "")}
    if "exit" in chk:
        out.update(expected=chk["exit"], actual=step["exit"], passed=step["exit"] == chk["exit"])
        return out
    try:
        actual = lookup(step["payload"], chk["path"])
    except (KeyError, IndexError, ValueError):
        out.update(expected=chk.get("equals", chk.get("contains", chk.get("set_equals"))), actual=None, passed=False)
        return out
    if "equals" in chk:
        ok = actual == chk["equals"]
        exp = chk["equals"]
    elif "contains" in chk:
        ok = isinstance(actual, list) and chk["contains"] in actual
        exp = chk["contains"]
    elif "set_equals" in chk:
        ok = isinstance(actual, list) and sorted(map(json.dumps, actual)) == sorted(map(json.dumps, chk["set_equals"]))
        exp = chk["set_equals"]
    else:
        raise ValueError(f"check without a comparator: {chk}")
    out.update(expected=exp, actual=actual, passed=bool(ok))
    return out


def run_case(case_dir) -> dict:
    from .cli import execute

    case_dir = Path(case_dir)
    ring = str(case_dir / "case.ring")
    expected = json.loads((case_dir / "expected.json").read_text(encoding="utf-8"))
    steps = []
    for line in read_script(case_dir):
        code, payload = execute(shlex.split(line), ring_override=ring)
        steps.append({"command": line, "exit": code, "payload": payload})
    checks = [_check(c, steps) for c in expected["checks"]]
    expected_exit = {c["step"]: c["exit"] for c in expected["checks"] if "exit" in c}
    bad_exit = [i for i, s in enumerate(steps) if s["exit"] != expected_exit.get(i, 0)]
    ok = all(c["passed"] for c in checks) and not bad_exit
    return {
        "id": case_dir.name,
        "description": expected.get("description", ""),
        "status": "pass" if ok else "fail",
        "checks": checks,
        "unexpected_exit": bad_exit,
        "steps": [{"command": s["command"], "exit": s["exit"], "payload": s["payload"]} for s in steps],
    }


def run_corpus(selection=None, jobs: int = 1, root=None) -> dict:
    r = _root(root)
    ids = list_cases(r) if selection is None else sorted(selection)
    missing = [i for i in ids if not (r / i / "case.ring").is_file()]
    if missing:
        raise ValueError(f"unknown corpus case(s): {', '.join(missing)}")
    dirs = [r / i for i in ids]
    if jobs > 1 and len(dirs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            cases = list(ex.map(run_case, dirs))
    else:
        cases = [run_case(d) for d in dirs]
    n_pass = sum(c["status"] == "pass" for c in cases)
    n_checks = sum(len(c["checks"]) for c in cases)
    n_ok = sum(ch["passed"] for c in cases for ch in c["checks"])
    return {
        "cases": cases,
        "summary": {"cases": len(cases), "cases_passed": n_pass, "checks": n_checks, "checks_passed": n_ok},
        "status": "pass" if n_pass == len(cases) else "fail",
    }
