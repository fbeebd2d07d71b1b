"""Command-line front end.

Every command reads a toric datum (``--config`` TOML file or inline
``--rays``) and prints either a text report or, with ``--json``, one JSON
document. Exit status: 0 success, 2 invalid input, 3 enumeration cap hit.
Values starting with a minus sign need the ``=`` form: ``--d=-1,0``.

Config file (TOML)::

    rays = [[1, 0], [-1, 2]]
    p = 5
    e = 1
    d = [0, -1]                  # numerators over q, or "a/b" strings
    box = [[-1, 1], ["-1", "1"]] # one [lo, hi] per coordinate
    e_max = 3
    [[faces]]                    # only for `volume`
    normal = [1, 0]
    bound = "-1"
    relation = ">="
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .cartier import D2Certificate, d2_contains, find_generators, is_diagonally_split, payne_basis
from .fsignature import fsig_sequence, fsig_volume, sig_polytope
from .lattice import CAP_ENV_VAR, CapExceededError, FracVector, FrobeniusLevel, ResidueClass
from .oracle import oracle_check
from .polytope import HalfSpace, HPolytope, exact_volume, is_bounded, vertices
from .toric import ToricDatum, anticanonical, from_rays, gorenstein_shift, is_smooth

SCHEMA = "toricd2/1"
EXIT_OK, EXIT_INVALID, EXIT_CAP = 0, 2, 3

log = logging.getLogger("toricd2")


class ConfigError(ValueError):
    pass


# --- serialization -----------------------------------------------------------

def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def frac_json(v: FracVector) -> dict:
    return {"num": list(v.num), "den": v.den}


def frac_from_json(doc: dict) -> FracVector:
    return FracVector(doc["num"], doc["den"])


def certificate_to_json(cert: D2Certificate) -> dict:
    doc: dict[str, Any] = {
        "verdict": cert.verdict,
        "d": frac_json(cert.d),
        "p": cert.level.p,
        "e": cert.level.e,
    }
    if cert.is_member:
        doc["witnesses"] = [{"class": list(c), "point": frac_json(w)} for c, w in cert.witnesses.items()]
    else:
        doc["missing_class"] = list(cert.missing_class)
    return doc


def certificate_from_json(doc: dict, datum: ToricDatum) -> D2Certificate:
    """Load a certificate and re-check it against a freshly built diagonal polytope."""
    level = FrobeniusLevel(int(doc["p"]), int(doc["e"]))
    d = frac_from_json(doc["d"])
    if doc["verdict"] == "Member":
        wit: dict[ResidueClass, FracVector] = {
            tuple(w["class"]): frac_from_json(w["point"]) for w in doc["witnesses"]
        }
        cert = D2Certificate("Member", d, level, wit)
    elif doc["verdict"] == "NonMember":
        cert = D2Certificate("NonMember", d, level, missing_class=tuple(doc["missing_class"]))
    else:
        raise ConfigError(f"unknown verdict {doc['verdict']!r}")
    if not cert.verify(datum):
        raise ConfigError("certificate does not re-validate against the datum")
    return cert


def show_point(v: FracVector) -> str:
    """Both notations: rational coordinates and the q-scaled integer vector."""
    scaled = ", ".join(str(x) for x in v.num)
    return f"{v}  [({scaled})/{v.den}]"


# --- parsing -----------------------------------------------------------------

def parse_rays(text: str) -> list[list[int]]:
    try:
        return [[int(c) for c in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse rays {text!r}") from exc


def parse_point(items, q: int) -> FracVector:
    """Integers are numerators over ``q``; strings with ``/`` are rational coordinates."""
    if isinstance(items, str):
        items = [s.strip() for s in items.split(",")]
    coords = []
    try:
        for it in items:
            if isinstance(it, str) and "/" in it:
                coords.append(Fraction(it))
            else:
                coords.append(Fraction(int(it), q))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse point {items!r}") from exc
    try:
        return FracVector.from_rationals(coords, q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_box(text) -> list[tuple[Fraction, Fraction]]:
    if isinstance(text, str):
        text = [part.split(":") for part in text.split(",")]
    try:
        out = [(Fraction(str(lo)), Fraction(str(hi))) for lo, hi in text]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"cannot parse box {text!r}") from exc
    if any(lo > hi for lo, hi in out):
        raise ConfigError("box intervals must have lo <= hi")
    return out


def parse_faces(text) -> HPolytope:
    if isinstance(text, str):
        rows = []
        for part in text.split(";"):
            for rel in (">=", "<=", ">", "<"):
                if rel in part:
                    lhs, rhs = part.split(rel)
                    rows.append({"normal": [int(c) for c in lhs.split(",")], "bound": rhs, "relation": rel})
                    break
            else:
                raise ConfigError(f"no relation in face {part!r}")
        text = rows
    try:
        faces = [HalfSpace(tuple(f["normal"]), Fraction(str(f["bound"])), f.get("relation", ">=")) for f in text]
        return HPolytope(len(faces[0].normal), tuple(faces))
    except (KeyError, IndexError, ValueError, TypeError) as exc:
        raise ConfigError(f"cannot parse faces: {exc}") from exc


def load_config(args) -> dict:
    cfg: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                cfg = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    if args.rays:
        rays = parse_rays(args.rays)
        if rays and len(rays[0]) > 3:
            raise ConfigError("--rays is limited to dimension <= 3; use a config file")
        cfg["rays"] = rays
    for key in ("p", "e", "e_max"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in ("d", "box", "faces"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _datum(cfg) -> ToricDatum:
    if "rays" not in cfg:
        raise ConfigError("no rays given (use --config or --rays)")
    return from_rays(cfg["rays"])


def _level(cfg) -> FrobeniusLevel:
    if "p" not in cfg:
        raise ConfigError("no prime p given")
    return FrobeniusLevel(int(cfg["p"]), int(cfg.get("e", 1)))


# --- commands ------------------------------------------------------------------

def cmd_info(cfg):
    datum = _datum(cfg)
    shift = gorenstein_shift(datum)
    result = {
        "dim": datum.dim,
        "rays": [list(r) for r in datum.rays],
        "dual_cone_rays": [list(w) for w in datum.dual_rays],
        "gorenstein_shift": None if shift is None else [rat(c) for c in shift],
        "smooth": is_smooth(datum),
        "anticanonical_faces": [[list(f.normal), f.relation, rat(f.bound)] for f in anticanonical(datum).faces],
    }
    lines = [
        f"dimension {datum.dim}, rays {[list(r) for r in datum.rays]}",
        f"dual cone rays {[list(w) for w in datum.dual_rays]}",
        "Q-Gorenstein shift: " + ("none" if shift is None else "(" + ", ".join(str(c) for c in shift) + ")"),
        f"smooth: {'yes' if result['smooth'] else 'no'}",
    ]
    return result, lines


def cmd_basis(cfg):
    datum, level = _datum(cfg), _level(cfg)
    if "box" not in cfg:
        raise ConfigError("basis needs a box")
    bx = parse_box(cfg["box"])
    maps = payne_basis(datum, level, bx)
    result = {"q": level.q, "box": [[rat(lo), rat(hi)] for lo, hi in bx], "points": [frac_json(m.point) for m in maps]}
    lines = [f"{len(maps)} basis maps pi_a at q = {level.q}:"] + [f"  {show_point(m.point)}" for m in maps]
    return result, lines


def cmd_d2_check(cfg):
    datum, level = _datum(cfg), _level(cfg)
    if "d" not in cfg:
        raise ConfigError("d2 check needs --d")
    d = parse_point(cfg["d"], level.q)
    cert = d2_contains(datum, level, d)
    result = certificate_to_json(cert)
    lines = [f"pi_{d} at p = {level.p}, e = {level.e}: {cert.verdict}"]
    if cert.is_member:
        lines.append(f"{len(cert.witnesses)} witnesses (one per residue class):")
        lines += [f"  class {list(c)}: {show_point(w)}" for c, w in cert.witnesses.items()]
    else:
        cls = FracVector(cert.missing_class, level.q)
        lines.append(f"no point of the class of {show_point(cls)} lies in int(P ∩ (d - P))")
    return result, lines


def cmd_d2_gens(cfg):
    datum, level = _datum(cfg), _level(cfg)
    bx = parse_box(cfg["box"]) if "box" in cfg else None
    search = find_generators(datum, level, bx)
    result = {
        "q": level.q,
        "generators": [frac_json(g) for g in search.generators],
        "box": [[rat(lo), rat(hi)] for lo, hi in search.box],
        "auto_box": search.auto_box,
    }
    lines = [f"{len(search.generators)} minimal generators at p = {level.p}, e = {level.e}:"]
    lines += [f"  {show_point(g)}" for g in search.generators]
    if search.auto_box:
        lines.append("note: search box derived automatically around the Gorenstein shift: "
                     + " x ".join(f"[{lo}, {hi}]" for lo, hi in search.box))
    return result, lines


def cmd_split(cfg):
    datum, level = _datum(cfg), _level(cfg)
    split = is_diagonally_split(datum, level)
    result = {"p": level.p, "diagonally_split": split}
    return result, ["diagonally F-split" if split else "not diagonally F-split"]


def cmd_fsig(cfg):
    datum = _datum(cfg)
    level = _level(cfg)
    e_max = int(cfg.get("e_max", level.e))
    vol = fsig_volume(datum)
    rows = fsig_sequence(datum, level.p, e_max)
    result = {
        "volume": rat(vol),
        "sig_polytope_vertices": [[rat(c) for c in v] for v in vertices(sig_polytope(datum))],
        "sequence": [
            {"e": r.e, "split_count": r.split_count, "d2_count": r.d2_count,
             "split_ratio": rat(r.split_ratio), "d2_ratio": rat(r.d2_ratio)}
            for r in rows
        ],
    }
    lines = [f"F-signature volume: {vol}", "   e  splittings  in D2   split/q^n   d2/q^n"]
    lines += [f"{r.e:4d} {r.split_count:11d} {r.d2_count:6d} {str(r.split_ratio):>11} {str(r.d2_ratio):>8}" for r in rows]
    return result, lines


def cmd_oracle(cfg):
    datum, level = _datum(cfg), _level(cfg)
    if "d" not in cfg:
        raise ConfigError("oracle needs --d")
    d = parse_point(cfg["d"], level.q)
    rep = oracle_check(datum, level, d)
    result = {"d": frac_json(d), "p": level.p, "e": level.e, "verdict": rep.verdict, "transcript": rep.transcript}
    if rep.missing_class is not None:
        result["missing_class"] = list(rep.missing_class)
    lines = [f"oracle verdict for pi_{d}: {'Member' if rep.verdict else 'NonMember'}"] + rep.transcript
    return result, lines


def cmd_volume(cfg):
    if "faces" not in cfg:
        raise ConfigError("volume needs faces")
    P = parse_faces(cfg["faces"])
    if not is_bounded(P):
        raise ConfigError("polytope is unbounded")
    vol = exact_volume(P)
    return {"dim": P.dim, "volume": rat(vol)}, [f"volume: {vol}"]


COMMANDS = {
    "info": cmd_info,
    "basis": cmd_basis,
    "d2 check": cmd_d2_check,
    "d2 gens": cmd_d2_gens,
    "split": cmd_split,
    "fsig": cmd_fsig,
    "oracle": cmd_oracle,
    "volume": cmd_volume,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", help="TOML job file")
    common.add_argument("--rays", help='inline rays for dim <= 3, e.g. "1,0;-1,2"')
    common.add_argument("--p", type=int, help="prime characteristic")
    common.add_argument("--e", type=int, help="Frobenius exponent (default 1)")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--cap", type=int, help=f"enumeration cap (also ${CAP_ENV_VAR})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="toricd2", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="datum summary")
    p = sub.add_parser("basis", parents=[common], help="basis maps pi_a in a box")
    p.add_argument("--box", help='e.g. "-1:0,-1:0"')
    d2 = sub.add_parser("d2", help="diagonal Cartier algebra")
    d2sub = d2.add_subparsers(dest="d2_command", required=True)
    p = d2sub.add_parser("check", parents=[common], help="membership certificate for pi_d")
    p.add_argument("--d", help='numerators over q, e.g. "0,-1", or "0,-1/5"')
    p = d2sub.add_parser("gens", parents=[common], help="minimal generators")
    p.add_argument("--box", help='search box, e.g. "-1:1,-1:1"')
    sub.add_parser("split", parents=[common], help="diagonal F-splitting test")
    p = sub.add_parser("fsig", parents=[common], help="F-signature volume and counts")
    p.add_argument("--e-max", dest="e_max", type=int)
    p = sub.add_parser("oracle", parents=[common], help="torus-level membership oracle")
    p.add_argument("--d")
    p = sub.add_parser("volume", parents=[common], help="exact volume of an H-polytope")
    p.add_argument("--faces", help='e.g. "1,0>=0;1,0<=1;0,1>=0;0,1<=1"')
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    name = args.command + (f" {args.d2_command}" if args.command == "d2" else "")
    saved_cap = os.environ.get(CAP_ENV_VAR)
    if args.cap is not None:
        os.environ[CAP_ENV_VAR] = str(args.cap)
    try:
        cfg = load_config(args)
        result, lines = COMMANDS[name](cfg)
    except CapExceededError as exc:
        _emit_error(args, name, "cap_exceeded", str(exc), stdout)
        return EXIT_CAP
    except (ValueError, KeyError, TypeError) as exc:
        _emit_error(args, name, "invalid_input", str(exc), stdout)
        return EXIT_INVALID
    finally:
        if args.cap is not None:
            if saved_cap is None:
                os.environ.pop(CAP_ENV_VAR, None)
            else:
                os.environ[CAP_ENV_VAR] = saved_cap
    if args.json:
        doc = {"schema": SCHEMA, "command": name, "status": "ok", "result": result}
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _emit_error(args, name, kind, message, stdout):
    if args.json:
        doc = {"schema": SCHEMA, "command": name, "status": "error", "error": {"kind": kind, "message": message}}
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        print(f"error: {message}", file=sys.stderr)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
