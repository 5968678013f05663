"""Command-line frontend.

One subcommand per engine capability; ``--json`` switches every command
to a single JSON document on stdout.  Exit codes: 0 success, 2 input
error (bad flags, unparseable literals, out-of-range requests), 1
internal invariant violation.  Text-mode errors are one-line messages,
never tracebacks.
"""

import argparse
import json
import sys

from . import lgroup, serial, wpl
from .errors import InputError, InternalError, ParseError
from .quiver import Quiver, quiver_to_json_dict, quiver_to_text


def _weights_arg(text: str):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t != ""]
    except ValueError as exc:
        raise ParseError(f"bad --weights value {text!r}") from exc


def _model(args) -> wpl.WplData:
    weights = _weights_arg(args.weights or "")
    ordinary = [t for t in (args.ordinary or "").split(",") if t]
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read weight config {args.config!r}: {exc}") from exc
        if not args.weights:
            weights = data.get("weights", [])
        if not args.ordinary:
            ordinary = data.get("ordinary", [])
    return wpl.WplData(lgroup.Weights(weights), ordinary)


def _add_model_flags(p):
    p.add_argument("--weights", default="", help="comma-separated weights r1,r2,...")
    p.add_argument("--ordinary", default="", help="comma-separated ordinary point labels")
    p.add_argument(
        "--config",
        default="",
        help='JSON weight config {"weights": [...], "ordinary": [...]}; '
        "explicit flags win",
    )


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _quiver_payload(q: Quiver) -> dict:
    return quiver_to_json_dict(q)


def _cmd_hom(args):
    w = _model(args)
    f = wpl.parse_sheaf(w, args.f)
    g = wpl.parse_sheaf(w, args.g)
    he = wpl.hom_ext(w, f, g)
    _emit(args, {"hom": he.hom, "ext1": he.ext1}, f"hom={he.hom} ext1={he.ext1}")


def _cmd_euler(args):
    w = _model(args)
    val = wpl.euler(w, wpl.parse_sheaf(w, args.f), wpl.parse_sheaf(w, args.g))
    _emit(args, {"euler": val}, str(val))


def _cmd_tau(args):
    w = _model(args)
    out = wpl.tau_sheaf(w, wpl.parse_sheaf(w, args.f))
    _emit(args, {"class": str(out)}, str(out))


def _cmd_twist(args):
    w = _model(args)
    f = wpl.parse_sheaf(w, args.f)
    op = wpl.sigma_twist if args.functor == "sigma" else wpl.c_twist
    out = op(w, args.point, f)
    _emit(args, {"class": str(out)}, str(out))


def _cmd_top(args):
    w = _model(args)
    lam = lgroup.parse_element(w.weights, args.element)
    out = wpl.top_m(w, args.point, lam, args.m)
    _emit(args, {"class": str(out)}, str(out))


def _cmd_extquiver(args):
    w = _model(args)
    coll = wpl.Collection([wpl.parse_sheaf(w, t) for t in args.objects])
    q = wpl.ext_quiver_of(w, coll)
    _emit(args, _quiver_payload(q), quiver_to_text(q).rstrip("\n"))


def _cmd_check(args):
    w = _model(args)
    coll = wpl.Collection([wpl.parse_sheaf(w, t) for t in args.objects])
    if args.property == "exceptional":
        ok = wpl.is_exceptional_sequence(w, coll)
    else:
        ok = wpl.is_vertex_like(w, coll)
    _emit(args, {args.property: ok}, "true" if ok else "false")


def _factor_payload(emb: serial.Embedding) -> list:
    return [
        {
            "kind": f.cat.kind,
            "rank": f.cat.rank,
            "simples": [str(a) for a in f.simple_images],
        }
        for f in emb.factors
    ]


def _cmd_perp(args):
    if args.target.lstrip().startswith(("U(", "A(")):
        arc = serial.parse_arc(args.target)
        emb = serial.perp_arc(arc)
        factors = _factor_payload(emb)
        text = " x ".join(
            f"{f['kind']}({f['rank']}): " + (", ".join(f["simples"]) or "-")
            for f in factors
        )
        _emit(args, {"ambient": str(emb.ambient), "factors": factors}, text)
        return
    w = _model(args)
    e = wpl.parse_sheaf(w, args.target)
    res = wpl.perp_exceptional_torsion(w, e)
    payload = {
        "new_weights": list(res.new_weights.r),
        "dropped_point": res.dropped_point,
        "line_factor": [str(f) for f in res.line_generators],
        "tube_factor": [str(f) for f in res.tube_generators],
    }
    text = (
        f"weights={','.join(map(str, res.new_weights.r)) or '-'}"
        f" line_factor={','.join(payload['line_factor']) or '-'}"
    )
    _emit(args, payload, text)


def _enumerate_payload(descs) -> list:
    out = []
    for t in descs:
        has_cycle, lines = serial.shape_of_thick(t)
        out.append(
            {
                "signature": [[a.top, a.length] for a in t.signature],
                "relative_simples": [[a.top, a.length] for a in t.relative_simples()],
                "has_cycle_factor": has_cycle,
                "line_lengths": lines,
            }
        )
    return out


def _cmd_enumerate(args, kind):
    cat = serial.cycle(args.rank) if kind == "cycle" else serial.line(args.rank)
    descs = serial.enumerate_thick(cat)
    if args.count:
        _emit(args, {"category": str(cat), "count": len(descs)}, str(len(descs)))
        return
    payload = {
        "category": str(cat),
        "count": len(descs),
        "subcategories": _enumerate_payload(descs),
    }
    lines = [f"{str(cat)}: {len(descs)} thick subcategories"]
    for entry in payload["subcategories"]:
        sig = " ".join(f"({t},{l})" for t, l in entry["signature"]) or "-"
        shape = ("cycle+" if entry["has_cycle_factor"] else "") + ",".join(
            f"A{n}" for n in entry["line_lengths"]
        )
        lines.append(f"sig={sig} shape={shape or 'zero'}")
    _emit(args, payload, "\n".join(lines))


def _cmd_count_big(args):
    w = _model(args)
    n = wpl.count_big(w)
    _emit(args, {"count": n}, str(n))


def _cmd_classify(args):
    w = _model(args)
    coll = wpl.Collection([wpl.parse_sheaf(w, t) for t in args.objects])
    res = wpl.classify_generated(w, coll)
    payload = {"kind": res.kind.value}
    text = res.kind.value
    if res.witnesses:
        payload["witnesses"] = [str(x) for x in res.witnesses if x is not None]
    if res.quiver is not None:
        payload["quiver"] = _quiver_payload(res.quiver)
        text += "\n" + quiver_to_text(res.quiver).rstrip("\n")
    _emit(args, payload, text)


def _cmd_canonical(args):
    w = _model(args)
    coll = wpl.canonical_collection(w)
    _emit(args, {"objects": list(coll.labels())}, " ".join(coll.labels()))


def _cmd_star(args):
    w = _model(args)
    tops = _weights_arg(args.tops) if args.tops else [0] * w.weights.p
    bundles, dual = wpl.star_collection(w, tops)
    payload = {"line_bundles": list(bundles.labels()), "dual_family": list(dual.labels())}
    _emit(
        args,
        payload,
        "line_bundles: " + " ".join(bundles.labels()) + "\ndual_family: " + " ".join(dual.labels()),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpc",
        description="Hom/Ext tables and thick-subcategory combinatorics for "
        "tubes, linear quivers and weighted projective lines",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        p.set_defaults(fn=fn)
        return p

    p = cmd("hom", _cmd_hom, help="Hom and Ext^1 dimensions between two classes")
    _add_model_flags(p)
    p.add_argument("f")
    p.add_argument("g")

    p = cmd("euler", _cmd_euler, help="Euler pairing hom - ext1")
    _add_model_flags(p)
    p.add_argument("f")
    p.add_argument("g")

    p = cmd("tau", _cmd_tau, help="Serre translate of a class")
    _add_model_flags(p)
    p.add_argument("f")

    p = cmd("twist", _cmd_twist, help="sigma or c twist at a point")
    _add_model_flags(p)
    p.add_argument("functor", choices=["sigma", "c"])
    p.add_argument("point", help="x<i> for a weighted point, else an ordinary label")
    p.add_argument("f")

    p = cmd("top", _cmd_top, help="m-step top of O(<element>) at a point")
    _add_model_flags(p)
    p.add_argument("point")
    p.add_argument("element")
    p.add_argument("m", type=int)

    p = cmd("extquiver", _cmd_extquiver, help="Ext-quiver of a vertex-like collection")
    _add_model_flags(p)
    p.add_argument("objects", nargs="+")

    p = cmd("check", _cmd_check, help="test a collection property")
    _add_model_flags(p)
    p.add_argument("property", choices=["exceptional", "vertexlike"])
    p.add_argument("objects", nargs="+")

    p = cmd("perp", _cmd_perp, help="perpendicular of a serial arc or torsion class")
    _add_model_flags(p)
    p.add_argument("target", help="U(n):arc(top,len), A(n):arc(i,j), or a sheaf literal")

    p = cmd("tube", lambda a: _cmd_enumerate(a, "cycle"), help="tube thick subcategories")
    p.add_argument("action", choices=["enumerate"])
    p.add_argument("rank", type=int)
    p.add_argument("--count", action="store_true", help="print only the count")

    p = cmd("line", lambda a: _cmd_enumerate(a, "line"), help="A_n thick subcategories")
    p.add_argument("action", choices=["enumerate"])
    p.add_argument("rank", type=int)
    p.add_argument("--count", action="store_true", help="print only the count")

    p = cmd("count-big", _cmd_count_big, help="number of big subcategories")
    _add_model_flags(p)

    p = cmd("classify", _cmd_classify, help="classify the subcategory generated by classes")
    _add_model_flags(p)
    p.add_argument("objects", nargs="+")

    p = cmd("canonical", _cmd_canonical, help="the canonical line-bundle collection")
    _add_model_flags(p)

    p = cmd("star", _cmd_star, help="star subcollection and its dual torsion family")
    _add_model_flags(p)
    p.add_argument("--tops", default="", help="comma-separated arm lengths b1,...,bp")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except InputError as exc:
        _report_error(args, exc)
        return 2
    except InternalError as exc:
        _report_error(args, exc)
        return 1
    return 0


def _report_error(args, exc):
    code = type(exc).__name__
    if getattr(args, "json", False):
        print(json.dumps({"error": {"code": code, "message": str(exc)}}))
    else:
        print(f"error [{code}]: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
