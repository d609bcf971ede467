"""Command line entry point ``appspace``.

Exit codes: 0 pass, 1 the checked property fails (a witness is printed),
2 unreadable input or an invalid space.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .approach import (ApproachSpace, InvalidSpace, check_axioms, check_reflexive,
                       dist_from_conv, phi_uv, product)
from .expcheck import check as check_exponentiable
from .exponential import (NotAContraction, ProbeFamily, contraction_fn, d_bruteforce,
                          d_principal, replay_theorem)
from .generate import DEFAULT_SEED, random_space
from .io import FormatError, digest, dump_function, dump_space, load_function, load_space
from .quantale import Cost
from .reports import to_jsonable

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


def _table(rows: Sequence[Sequence[str]], out) -> None:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        cells = [str(r[0]).ljust(widths[0])] + [str(c).rjust(w) for c, w in zip(r[1:], widths[1:])]
        print("  ".join(cells).rstrip(), file=out)


def _matrix_rows(space: ApproachSpace):
    labs = space.points.labels()
    return [[""] + labs] + [[z] + [str(c) for c in row]
                            for z, row in zip(labs, space.matrix.entries)]


def _costs(text: str, flag: str) -> list[Cost]:
    try:
        return [Cost(s.strip()) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _cost(text: str, flag: str) -> Cost:
    vals = _costs(text, flag)
    if len(vals) != 1:
        raise UsageError(f"{flag} expects one cost")
    return vals[0]


def _point(space: ApproachSpace, name: str, flag: str):
    if name not in space.points:
        raise UsageError(f"{flag}: {name!r} is not a point ({', '.join(space.points.labels())})")
    return name


class Runner:
    def __init__(self, args: argparse.Namespace, out=None, err=None):
        self.args = args
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.inputs: list[dict] = []

    def load(self, path: str, pseudo: bool | None = None) -> ApproachSpace:
        pseudo = self.args.pseudo if pseudo is None else pseudo
        space = load_space(path, pseudo=pseudo)
        self.inputs.append({"path": path, "digest": digest(path)})
        return space

    def emit(self, payload: dict, human) -> None:
        if self.args.json:
            doc = {"tool": "appspace", "version": __version__,
                   "command": self.args.command, "inputs": self.inputs}
            doc.update(to_jsonable(payload))
            print(json.dumps(doc, indent=2, ensure_ascii=False), file=self.out)
        else:
            human()

    def witness_lines(self, w) -> None:
        for k, v in to_jsonable(w).items():
            if isinstance(v, dict):
                v = ", ".join(f"{a}={b}" for a, b in v.items())
            print(f"  {k}: {v}", file=self.out)

    # -- subcommands ---------------------------------------------------------------

    def cmd_check_axioms(self) -> int:
        space = self.load(self.args.file, pseudo=True)
        rep = check_reflexive(space.matrix) if self.args.pseudo else check_axioms(space.matrix)
        self.inputs[-1]["points"] = len(space)

        def human():
            _table(_matrix_rows(space), self.out)
            print(f"{rep.check}: {'pass' if rep else 'fail'}", file=self.out)
            if not rep:
                self.witness_lines(rep.witness)

        self.emit({"report": rep}, human)
        return EXIT_OK if rep else EXIT_INVALID

    def cmd_dist(self) -> int:
        space = self.load(self.args.file)
        A = [_point(space, a.strip(), "--set") for a in self.args.set.split(",") if a.strip()]
        x = _point(space, self.args.at, "--at")
        val = dist_from_conv(space, A, x)
        self.emit({"set": A, "at": x, "distance": val},
                  lambda: print(f"delta({{{', '.join(A)}}}, {x}) = {val}", file=self.out))
        return EXIT_OK

    def cmd_product(self) -> int:
        S, T = self.load(self.args.file1), self.load(self.args.file2)
        P = product(S, T)
        doc = dump_space(P)
        if self.args.output:
            Path(self.args.output).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")

        def human():
            _table(_matrix_rows(P), self.out)
            if self.args.output:
                print(f"wrote {self.args.output}", file=self.out)

        self.emit({"space": doc, "output": self.args.output}, human)
        return EXIT_OK

    def cmd_phi(self) -> int:
        space = self.load(self.args.file)
        z = _point(space, self.args.z, "--z")
        u, v = _cost(self.args.u, "--u"), _cost(self.args.v, "--v")
        vals = phi_uv(space, z, u, v)
        f = contraction_fn(space, vals, f"phi[{u},{v}]")

        def human():
            _table([["x", "phi(x)"]] + [[x, str(c)] for x, c in zip(space.points.labels(), vals)],
                   self.out)
            print(f"contraction: {'yes' if f.certified else 'no'}", file=self.out)

        self.emit({"z": z, "u": u, "v": v, "phi": dump_function(space.points, vals)["values"],
                   "certificate": f.certificate}, human)
        return EXIT_OK if f.certified else EXIT_FAIL

    def cmd_exp_d(self) -> int:
        space = self.load(self.args.file)
        psi_vals = load_function(self.args.psi, space.points)
        phi_vals = load_function(self.args.phi, space.points)
        for p in (self.args.psi, self.args.phi):
            self.inputs.append({"path": p, "digest": digest(p)})
        psi = contraction_fn(space, psi_vals, "psi")
        phi = contraction_fn(space, phi_vals, "phi")
        d = d_principal(space, psi, phi)
        brute = d_bruteforce(ProbeFamily(space, [psi, phi]), psi, phi)
        if brute != d:
            raise AssertionError(f"closed form {d} and enumeration {brute} disagree")
        self.emit({"d": d, "enumerated": brute},
                  lambda: print(f"d(psi, phi) = {d}", file=self.out))
        return EXIT_OK

    def cmd_replay(self) -> int:
        space = self.load(self.args.file)
        z = _point(space, self.args.z, "--z")
        x0 = _point(space, self.args.x0, "--x0")
        rep = replay_theorem(space, z, x0, _cost(self.args.u, "--u"), _cost(self.args.v, "--v"))

        def human():
            rows = [["step", "lhs", "rel", "rhs", "holds"]]
            rows += [[s.name, str(s.lhs), s.relation, str(s.rhs), "yes" if s.holds else "NO"]
                     for s in rep.steps + [rep.criterion]]
            _table(rows, self.out)
            print(f"break: {rep.break_step or 'none'}", file=self.out)

        self.emit({"replay": rep.to_dict(), "facts_hold": rep.facts_hold}, human)
        return EXIT_OK if rep.break_step is None else EXIT_FAIL

    def cmd_check_exponentiable(self) -> int:
        grid = _costs(self.args.grid, "--grid") if self.args.grid else None
        if grid is not None and self.args.method != "grid":
            raise UsageError("--grid only applies to --method grid")
        code = EXIT_OK
        results = []
        for path in self.args.files:
            space = self.load(path)
            rep = check_exponentiable(space, self.args.method, grid)
            results.append({"file": path, "report": rep})
            if not self.args.json:
                print(f"{path}: {'exponentiable' if rep else 'not exponentiable'}"
                      f" ({self.args.method})", file=self.out)
                if not rep:
                    self.witness_lines(rep.witness)
            if not rep:
                code = EXIT_FAIL
        if self.args.json:
            self.emit({"method": self.args.method,
                       "results": [{"file": r["file"], **r["report"].to_dict()} for r in results]},
                      None)
        return code

    def cmd_gen(self) -> int:
        values = _costs(self.args.values, "--values")
        if self.args.points < 1:
            raise UsageError("--points must be positive")
        if not values:
            raise UsageError("--values is empty")
        rng = random.Random(self.args.seed)
        spaces = [random_space(self.args.points, values, rng) for _ in range(self.args.count)]
        docs = [dump_space(s) for s in spaces]
        if self.args.output:
            base = Path(self.args.output)
            names = [base] if len(docs) == 1 else [
                base.with_name(f"{base.stem}-{i}{base.suffix}") for i in range(len(docs))]
            for name, doc in zip(names, docs):
                name.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
            for name in names:
                print(name, file=self.out)
        else:
            print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2), file=self.out)
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--pseudo", action="store_true",
                        help="only require reflexivity of input spaces")

    ap = argparse.ArgumentParser(prog="appspace", description="Finite approach spaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-axioms", parents=[common], help="validate a space file")
    p.add_argument("file")

    p = sub.add_parser("dist", parents=[common], help="distance from a set to a point")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="comma separated labels (may be empty)")
    p.add_argument("--at", required=True)

    p = sub.add_parser("product", parents=[common], help="product of two spaces")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("-o", "--output")

    p = sub.add_parser("phi", parents=[common], help="the map phi[u,v] at z")
    p.add_argument("file")
    p.add_argument("--z", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)

    p = sub.add_parser("exp-d", parents=[common], help="function-space distance d(psi, phi)")
    p.add_argument("file")
    p.add_argument("--psi", required=True)
    p.add_argument("--phi", required=True)

    p = sub.add_parser("replay", parents=[common], help="replay the necessity argument")
    p.add_argument("file")
    p.add_argument("--z", required=True)
    p.add_argument("--x0", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)

    p = sub.add_parser("check-exponentiable", parents=[common], help="decide the criterion")
    p.add_argument("files", nargs="+")
    p.add_argument("--method", choices=["exact", "grid", "classify"], default="exact")
    p.add_argument("--grid", help="comma separated costs (grid method)")

    p = sub.add_parser("gen", parents=[common], help="random valid spaces")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--values", default="0,1/2,1,inf")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("-o", "--output")
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    args = build_parser().parse_args(argv)
    runner = Runner(args, out, err)
    handler = getattr(runner, "cmd_" + args.command.replace("-", "_"))
    try:
        return handler()
    except FormatError as exc:
        print(f"error: {exc}", file=runner.err)
    except InvalidSpace as exc:
        print(f"error: invalid space: {exc}", file=runner.err)
        if args.json:
            print(json.dumps({"tool": "appspace", "version": __version__,
                              "command": args.command, "error": "invalid space",
                              "witness": to_jsonable(exc.report.witness)}, indent=2),
                  file=runner.out)
    except (UsageError, NotAContraction, OSError) as exc:
        print(f"error: {exc}", file=runner.err)
    return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
