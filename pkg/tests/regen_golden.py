"""Rewrite the golden CLI outputs.  Run from anywhere: python3 tests/regen_golden.py

Review the diff before committing; the tests also pin the key values by hand.
"""
import io
import os
from pathlib import Path

from approach_spaces.cli import run

HERE = Path(__file__).resolve().parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"

NAMED = ["one-point", "discrete3", "preorder4", "twopoint-1", "line3"]
METHODS = ["exact", "grid", "classify"]
EXTRA = {
    "replay-twopoint-1": ["replay", "twopoint-1.json", "--z", "p", "--x0", "q",
                          "--u", "1/2", "--v", "1/2", "--json"],
}


def commands():
    for name in NAMED:
        for m in METHODS:
            yield f"{name}.{m}", ["check-exponentiable", f"{name}.json", "--method", m, "--json"]
    yield from EXTRA.items()


def capture(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in commands():
        code, text = capture(argv)
        (GOLDEN / f"{name}.json").write_text(text, encoding="utf-8")
        (GOLDEN / f"{name}.exit").write_text(f"{code}\n", encoding="utf-8")
        print(name, code)
