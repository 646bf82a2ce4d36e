"""Command-line front end: JSON in, JSON out.

Exit codes: 0 success, 1 malformed input or usage error, 2 when
``normal-form`` meets a point outside the catalog.  Errors are written
to stderr as a single-line JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import __version__
from .algebra import coadjoint_act
from .classifier import ComponentLabel, OrbitClass, OrbitTag
from .documents import (
    DocumentError,
    dumps,
    element_from_doc,
    invariants_doc,
    point_from_doc,
    point_to_doc,
    report,
)
from .errors import PoincareError
from .minkowski import ToleranceConfig
from .sampling import SamplerConfig, sample_orbit

EXIT_OK, EXIT_MALFORMED, EXIT_OUT_OF_CATALOG = 0, 1, 2

CONVENTIONS = (
    "Vectors are ordered (x, y, z, t) and the metric is G = diag(-1, -1, -1, 1). "
    'A point is {"M": {"l": [3], "g": [3]}, "P": [4]} (or "M_matrix": 4x4 instead of "M").'
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(kind: str, message: str, code: int = EXIT_MALFORMED) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def _sign(text: str) -> int:
    if text not in ("+", "-"):
        raise argparse.ArgumentTypeError("expected + or -")
    return 1 if text == "+" else -1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="poincare-orbits",
        description="Coadjoint orbits of the full Poincare group. " + CONVENTIONS,
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--input", default="-", help="JSON file, or - for stdin (default)")
    common.add_argument("--tol", type=float, default=1e-8, help="classification tolerance (default 1e-8)")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes for batch input")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("classify", parents=[common], help="orbit type, mu, beta and component labels",
                   description=CONVENTIONS)
    sub.add_parser("normal-form", parents=[common], help="classify plus representative and witness",
                   description=CONVENTIONS)
    sub.add_parser("invariants", parents=[common], help="Casimirs C1, C2 and polarization W",
                   description=CONVENTIONS)
    act = sub.add_parser("act", parents=[common], help="apply a group element to points",
                         description=CONVENTIONS)
    act.add_argument(
        "--element",
        required=True,
        help='inline JSON or a file holding {"S": 4x4, "C": [4]} or {"involution": "space|time|spacetime"}',
    )
    sample = sub.add_parser("sample", help="random points on a catalogued orbit component",
                            description=CONVENTIONS)
    sample.add_argument("--class", dest="cls", required=True,
                        choices=[t.value for t in OrbitTag if t is not OrbitTag.OUT_OF_CATALOG])
    sample.add_argument("--mu", type=float)
    sample.add_argument("--beta", type=float)
    sample.add_argument("--energy", type=_sign, default=1, metavar="+|-")
    sample.add_argument("--helicity", type=_sign, metavar="+|-")
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--max-rapidity", type=float, default=2.0)
    sample.add_argument("--max-translation", type=float, default=10.0)
    sample.add_argument("--pretty", action="store_true")
    return parser


def _read_documents(source: str):
    """Return (documents, mode) where mode is 'single', 'array' or 'lines'."""
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {source}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        docs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                docs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise DocumentError(f"line {lineno}: {exc.msg}") from None
        if not docs:
            raise DocumentError("no JSON input") from None
        return docs, "lines"
    if isinstance(doc, list):
        return doc, "array"
    return [doc], "single"


def _load_element(text: str):
    if text.lstrip().startswith("{"):
        raw = text
    else:
        try:
            with open(text, encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {text}: {exc.strerror}") from None
    try:
        return element_from_doc(json.loads(raw))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"element: {exc.msg}") from None


def _process(doc, command: str, tol: ToleranceConfig, element=None) -> dict:
    nu = point_from_doc(doc, tol)
    if command == "classify":
        return report(nu, tol, full=False)
    if command == "normal-form":
        return report(nu, tol, full=True)
    if command == "invariants":
        return invariants_doc(nu)
    return point_to_doc(coadjoint_act(element, nu))


def _emit(results, mode: str, pretty: bool):
    if mode == "single":
        print(dumps(results[0], pretty))
    elif mode == "array":
        print(dumps(results, pretty))
    else:
        for r in results:
            print(dumps(r))


def _run_sample(args) -> int:
    tag = OrbitTag(args.cls)
    try:
        if tag is OrbitTag.MASSIVE_SPINNING:
            cls = OrbitClass.massive_spinning(_required(args.mu, "--mu"), _required(args.beta, "--beta"))
        elif tag is OrbitTag.MASSIVE_SPINLESS:
            cls = OrbitClass.massive_spinless(_required(args.mu, "--mu"))
        else:
            cls = OrbitClass.massless_helicity(_required(args.beta, "--beta"))
        if args.helicity is not None and tag is not OrbitTag.MASSLESS_HELICITY:
            raise PoincareError("--helicity applies to massless-helicity only")
        helicity = (args.helicity or 1) if tag is OrbitTag.MASSLESS_HELICITY else None
        spin = args.energy if tag is OrbitTag.MASSIVE_SPINNING else None
        labels = ComponentLabel(args.energy, helicity_sign=helicity, spin_sign=spin)
        if args.count < 0:
            raise PoincareError("--count must be non-negative")
        cfg = SamplerConfig(args.seed, args.max_rapidity, args.max_translation)
        points = sample_orbit(cls, labels, cfg, args.count)
    except (PoincareError, ValueError) as exc:
        return _fail("invalid-argument", str(exc))
    print(dumps([point_to_doc(p) for p in points], args.pretty))
    return EXIT_OK


def _required(value, flag):
    if value is None:
        raise PoincareError(f"{flag} is required for this class")
    return value


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail("usage", str(exc))

    if args.command == "sample":
        return _run_sample(args)

    try:
        tol = ToleranceConfig(classify=args.tol)
        element = _load_element(args.element) if args.command == "act" else None
        docs, mode = _read_documents(args.input)
        work = partial(_process, command=args.command, tol=tol, element=element)
        if args.parallel > 1 and len(docs) > 1:
            with ProcessPoolExecutor(max_workers=args.parallel) as pool:
                results = list(pool.map(work, docs, chunksize=max(1, len(docs) // (4 * args.parallel))))
        else:
            results = [work(d) for d in docs]
    except PoincareError as exc:
        return _fail("malformed-input", str(exc))
    except ValueError as exc:
        return _fail("invalid-argument", str(exc))

    _emit(results, mode, args.pretty)
    if args.command == "normal-form" and any(r["class"] == OrbitTag.OUT_OF_CATALOG.value for r in results):
        return EXIT_OUT_OF_CATALOG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
