"""``toric-ch`` command line."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cone import (
    ConeSpec,
    GoodnessError,
    InvalidCone,
    make_ck,
    make_orthant,
    make_simplex_cone,
    make_square_cone,
    validate_good,
)
from .cz import DegenerateOrbit, DegenerateReeb, NonPositiveGrowth, build_frame, orbit_table
from .exact import Infeasible
from .homology import ModulusError, chain_ranks, compare_tables
from .invariants import RankDeficient, chern_data, fundamental_group
from .reeb import GenerationFailed, check_admissible, generate_generic, generate_near_normal, nondegenerate_up_to

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_GOOD = 2
EXIT_INFEASIBLE = 3
EXIT_DEGENERATE = 4

# screening horizon when only a degree cutoff is given; the per-edge
# multiple actually screened comes from the degree bound
UNBOUNDED = 10**9


class InputError(ValueError):
    pass


class CommandFailed(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


def _int_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of integers")
    for i, x in enumerate(value):
        if type(x) is not int:
            raise InputError(f"{where}[{i}]: expected an integer, got {json.dumps(x)}")
    return value


def cone_from_json(data) -> ConeSpec:
    if not isinstance(data, dict):
        raise InputError("top level: expected an object with 'dimension' and 'normals'")
    extra = set(data) - {"name", "dimension", "normals"}
    if extra:
        raise InputError(f"unknown field(s): {', '.join(sorted(extra))}")
    if "dimension" not in data:
        raise InputError("missing field 'dimension'")
    if "normals" not in data:
        raise InputError("missing field 'normals'")
    dim = data["dimension"]
    if type(dim) is not int:
        raise InputError(f"dimension: expected an integer, got {json.dumps(dim)}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("name: expected a string")
    normals = data["normals"]
    if not isinstance(normals, list) or not normals:
        raise InputError("normals: expected a nonempty list")
    rows = tuple(tuple(_int_list(v, f"normals[{j}]")) for j, v in enumerate(normals))
    try:
        return ConeSpec(dim, rows, name)
    except InvalidCone as e:
        raise InputError(str(e)) from None


def parse_cone_file(path: str) -> ConeSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    try:
        return cone_from_json(data)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def builtin_cone(selector: str) -> ConeSpec:
    name, _, arg = selector.partition(":")
    try:
        if name == "ck":
            return make_ck(int(arg))
        if name == "sphere":
            return make_simplex_cone(int(arg))
        if name == "orthant":
            return make_orthant(int(arg))
        if name == "square" and not arg:
            return make_square_cone()
    except ValueError as e:
        raise InputError(f"builtin {selector!r}: {e}") from None
    raise InputError(f"unknown builtin {selector!r} (use ck:K, sphere:N, square, orthant:M)")


def _rationals(text: str, where: str) -> tuple:
    try:
        return tuple(Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: expected comma-separated rationals, got {text!r}") from None


def _signs(text: str | None):
    if text is None:
        return None
    out = [t.strip() for t in text.split(",")] if "," in text else list(text)
    for s in out:
        if s not in ("+", "-", "*"):
            raise InputError(f"--signs: bad sign {s!r} (use +, - or *)")
    return out


def resolve_reeb(cone, spec, signs, seed, n_max, cutoff, min_prime):
    """Turn a ``--reeb`` value into a screened Reeb vector."""
    horizon = n_max if n_max is not None else UNBOUNDED
    if spec is None:
        spec = "near:" + ",".join(str(sum(col)) for col in zip(*cone.spec.normals))
    kind, _, body = spec.partition(":")
    if kind == "exact":
        nu = _rationals(body, "--reeb exact")
        if len(nu) != cone.spec.ambient_dim:
            raise InputError(f"--reeb: expected {cone.spec.ambient_dim} entries")
        reeb = check_admissible(cone, nu)
        if cutoff is None and n_max is None:
            horizon = 20
        report = nondegenerate_up_to(cone, reeb, horizon, cutoff)
        if not report.clean:
            raise _degenerate_report(report)
        return reeb
    if kind == "near":
        target = _rationals(body, "--reeb near")
        if len(target) != cone.spec.ambient_dim:
            raise InputError(f"--reeb: expected {cone.spec.ambient_dim} entries")
        return generate_generic(cone, target, horizon, seed, signs, min_prime, cutoff)
    if kind == "normal":
        try:
            j = int(body)
        except ValueError:
            raise InputError(f"--reeb normal: expected a facet index, got {body!r}") from None
        if not 0 <= j < cone.d:
            raise InputError(f"--reeb normal: facet index {j} out of range")
        return generate_near_normal(cone, j, horizon, seed, min_prime, cutoff)
    raise InputError(f"--reeb: unknown form {spec!r} (use exact:, near: or normal:)")


def _degenerate_report(report) -> CommandFailed:
    if report.zero_coeffs:
        e, i = report.zero_coeffs[0]
        return CommandFailed(EXIT_DEGENERATE, f"coefficient {i} vanishes on edge {e}", {"edge": e, "i": i})
    e, i, m = report.degenerate_hits[0]
    return CommandFailed(
        EXIT_DEGENERATE,
        f"orbit multiple N={m} on edge {e} is degenerate in coefficient {i}",
        {"edge": e, "i": i, "N": m},
    )


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _load(args, suffix=""):
    path = getattr(args, "input" + suffix)
    builtin = getattr(args, "builtin" + suffix)
    if (path is None) == (builtin is None):
        raise InputError(f"give exactly one of a cone file or --builtin{suffix.replace('_', '-')}")
    spec = parse_cone_file(path) if path is not None else builtin_cone(builtin)
    return validate_good(spec)


def _edge_label(edge) -> str:
    return f"edge {edge.id} {{{','.join(str(j) for j in edge.active)}}}"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    cone = _load(args)
    data = {
        "good": True,
        "name": cone.spec.name,
        "checks": list(cone.validation_report),
        "edges": len(cone.edges),
        "faces": len(cone.faces),
    }
    text = "good cone" + (f" {cone.spec.name}" if cone.spec.name else "") + "\n"
    text += "\n".join(f"  ok: {c}" for c in cone.validation_report)
    return data, text


def cmd_edges(args):
    cone = _load(args)
    data = [{"id": e.id, "active": list(e.active), "generator": list(e.generator)} for e in cone.edges]
    text = "\n".join(f"{_edge_label(e)}  generator {_fmt(e.generator)}" for e in cone.edges)
    return data, text


def cmd_pi1(args):
    cone = _load(args)
    g = fundamental_group(cone)
    data = {"invariant_factors": list(g.invariant_factors), "free_rank": g.free_rank, "trivial": g.is_trivial, "group": str(g)}
    return data, f"pi_1 = {g}"


def cmd_chern(args):
    cone = _load(args)
    k = chern_data(cone)
    data = {
        "kernel_basis": [list(v) for v in k.basis],
        "column_sums": list(k.column_sums),
        "c": k.chern_divisibility,
        "c1_vanishes": k.c1_vanishes,
        "grading_modulus": k.grading_modulus,
    }
    text = f"c = {k.chern_divisibility}" + (" (c_1 = 0, integer grading)" if k.c1_vanishes else f" (grading mod {k.grading_modulus})")
    return data, text


def _reeb_json(reeb) -> dict:
    return {"nu": list(reeb.nu), "witness": list(reeb.witness), "provenance": reeb.provenance.to_json()}


def cmd_reeb_check(args):
    cone = _load(args)
    reeb = resolve_reeb(cone, args.reeb, _signs(args.signs), args.seed, args.n_max, args.cutoff, args.min_prime)
    data = {"admissible": True, **_reeb_json(reeb)}
    text = f"admissible: nu = {_fmt(reeb.nu)}\n  witness a = {_fmt(reeb.witness)}"
    return data, text


def cmd_indices(args):
    cone = _load(args)
    n_max = args.n_max if args.n_max is not None else 20
    reeb = resolve_reeb(cone, args.reeb, _signs(args.signs), args.seed, n_max, None, args.min_prime)
    edges = []
    lines = [f"nu = {_fmt(reeb.nu)}"]
    for edge in cone.edges:
        frame = build_frame(cone, reeb, edge)
        rows = orbit_table(cone, reeb, edge, n_max)
        edges.append(
            {
                "edge": edge.id,
                "active": list(edge.active),
                "eta": list(frame.eta),
                "n_mult": frame.n_mult,
                "eta_lift": list(frame.eta_lift),
                "b_coeffs": list(frame.b_coeffs),
                "b": frame.b,
                "orbits": [
                    {"N": o.multiple, "cz": o.cz, "degree": _deg_json(o.degree), "action": o.action, "good": o.good}
                    for o in rows
                ],
            }
        )
        lines.append(f"{_edge_label(edge)}  eta {_fmt(frame.eta)}  N_l {frame.n_mult}  b {frame.b}")
        lines.append("   N  cz  degree  action")
        for o in rows:
            lines.append(f"  {o.multiple:2d} {o.cz:3d} {str(o.degree):>7}  {o.action}")
    return {"grading_modulus": chern_data(cone).grading_modulus, "reeb": _reeb_json(reeb), "edges": edges}, "\n".join(lines)


def _deg_json(d):
    if isinstance(d, tuple):
        return {"residue": d.value, "modulus": d.modulus}
    return d


def _table_for(cone, args, suffix=""):
    reeb = resolve_reeb(
        cone,
        getattr(args, "reeb" + suffix),
        _signs(getattr(args, "signs" + suffix)),
        getattr(args, "seed" + suffix),
        args.n_max,
        args.cutoff,
        args.min_prime,
    )
    return reeb, chain_ranks(cone, reeb, args.cutoff, args.n_max)


def cmd_homology(args):
    cone = _load(args)
    reeb, table = _table_for(cone, args)
    data = {**table.to_json(), "reeb": _reeb_json(reeb)}
    text = table.render({e.id: _edge_label(e) for e in cone.edges})
    return data, text


def cmd_compare(args):
    c1 = _load(args)
    if args.input_2 is None and args.builtin_2 is None:
        c2 = c1
    else:
        c2 = _load(args, "_2")
    for attr in ("seed", "reeb", "signs"):
        if getattr(args, attr + "_2") is None:
            setattr(args, attr + "_2", getattr(args, attr))
    _, t1 = _table_for(c1, args)
    _, t2 = _table_for(c2, args, "_2")
    diff = compare_tables(t1, t2)
    data = diff.to_json()
    data["same_ranks"] = diff.same_ranks
    if diff.same_ranks:
        text = f"identical ranks up to degree {diff.bound}"
    else:
        text = "rank differences (second - first):\n" + "\n".join(
            f"  degree {d}: {v:+d}" for d, v in sorted(diff.rank_diff.items())
        )
    if diff.contribution_diff:
        text += f"\n{len(diff.contribution_diff)} per-edge contribution(s) differ"
    return data, text


COMMANDS = {
    "validate": cmd_validate,
    "edges": cmd_edges,
    "pi1": cmd_pi1,
    "chern": cmd_chern,
    "reeb-check": cmd_reeb_check,
    "indices": cmd_indices,
    "homology": cmd_homology,
    "compare": cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-ch", description="Contact homology of good toric contact manifolds.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", nargs="?", help="cone JSON file")
        sp.add_argument("--builtin", help="ck:K, sphere:N, square or orthant:M")
        sp.add_argument("--format", choices=("json", "table"), default="json")
        if name in ("validate", "edges", "pi1", "chern"):
            continue
        sp.add_argument("--reeb", help="exact:p/q,...  near:v1,...  normal:J (0-based)")
        sp.add_argument("--signs", help="sign pattern for near:, e.g. -,- or +-*")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n-max", type=int, dest="n_max")
        sp.add_argument("--min-prime", type=int, default=101, dest="min_prime")
        sp.add_argument(
            "--cutoff", type=int, default=20 if name in ("homology", "compare") else None
        )
        if name == "compare":
            sp.add_argument("--input-2", dest="input_2", help="second cone JSON file")
            sp.add_argument("--builtin-2", dest="builtin_2")
            sp.add_argument("--reeb-2", dest="reeb_2")
            sp.add_argument("--signs-2", dest="signs_2")
            sp.add_argument("--seed-2", dest="seed_2", type=int)
    return p


def _check_threads():
    raw = os.environ.get("TORIC_CH_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise InputError(f"TORIC_CH_THREADS must be a positive integer, got {raw!r}")
    # everything runs in-process; the value is only an upper bound
    return n


SIGN_FLAGS = ("--signs", "--signs-2")


def _glue_sign_values(argv: list) -> list:
    """Let ``--signs -,-`` through argparse, which would read ``-,-`` as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in SIGN_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(_glue_sign_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        _check_threads()
        if getattr(args, "cutoff", None) is not None and args.cutoff < 0:
            raise InputError("--cutoff must be nonnegative")
        if getattr(args, "n_max", None) is not None and args.n_max < 1:
            raise InputError("--n-max must be positive")
        data, text = COMMANDS[args.command](args)
    except CommandFailed as e:
        return _fail(e.code, str(e), e.payload, args, out, err)
    except (InputError, ModulusError, RankDeficient) as e:
        return _fail(EXIT_INPUT, str(e), None, args, out, err)
    except GoodnessError as e:
        payload = {"good": False, "clause": e.clause, "message": str(e), "details": e.details}
        return _fail(EXIT_NOT_GOOD, f"not a good cone: {e.clause}: {e}", payload, args, out, err)
    except Infeasible as e:
        payload = {"admissible": False, "certificate": list(e.certificate)}
        msg = f"Reeb vector is not a positive combination of the normals; certificate y = {_fmt(e.certificate)}"
        return _fail(EXIT_INFEASIBLE, msg, payload, args, out, err)
    except DegenerateOrbit as e:
        return _fail(EXIT_DEGENERATE, str(e), {"edge": e.edge, "i": e.i, "N": e.mult}, args, out, err)
    except (DegenerateReeb, NonPositiveGrowth, GenerationFailed) as e:
        return _fail(EXIT_DEGENERATE, str(e), None, args, out, err)
    out.write((dumps(data) if args.format == "json" else text) + "\n")
    return EXIT_OK


def _fail(code, message, payload, args, out, err) -> int:
    err.write(f"toric-ch: {message}\n")
    if payload is not None and args.format == "json":
        out.write(dumps({"error": message, **payload}) + "\n")
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
