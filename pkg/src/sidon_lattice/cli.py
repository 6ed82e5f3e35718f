"""Command-line front end.

Exit codes: 0 ok/found, 2 usage or invalid input, 3 exhaustive-absent,
4 budget exhausted, 5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import channel, codes, geometry, serialize, sets, verify
from .errors import SidonLatticeError
from .geometry import Shape
from .serialize import SCHEMA

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ABSENT = 3
EXIT_BUDGET = 4
EXIT_FAIL = 5


def _frac(x: Fraction):
    return str(x) if x.denominator != 1 else int(x)


def _parse_word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}; expected comma-separated integers")


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_artifact(path: str | None, data: dict):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2)
            fh.write("\n")


def _search_payload(rep: sets.SearchReport) -> dict:
    found = None
    if rep.found is not None:
        found = serialize.set_to_json(
            rep.found
            if isinstance(rep.found, (sets.DifferenceSet, sets.BhSet))
            else rep.found
        )
    return {
        "kind": rep.kind,
        "params": rep.params,
        "found": found,
        "nodes": rep.nodes,
        "exhaustive": rep.exhaustive,
    }


def _bound_payload(rep: verify.BoundReport) -> dict:
    return {
        "formula": rep.formula,
        "inputs": rep.inputs,
        "low": _frac(rep.low),
        "high": _frac(rep.high),
    }


def _table_for(lattice: codes.LatticeCode, finite, r_plus: int, r_minus: int):
    """Build a decoding table from the code's recorded source set."""
    src = lattice.source or {}
    if "elements" not in src or "group" not in src:
        raise ValueError("code artifact carries no source set; cannot build a table")
    group = serialize.group_from_json(src["group"])
    elements = [tuple(int(c) for c in e) for e in src["elements"]]
    bh = sets.bh_set(group, elements, r_plus + r_minus)
    return codes.build_syndrome_table(bh, r_plus, r_minus)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_construct(args):
    kind = args.kind
    if kind == "singer":
        d = sets.singer(args.q)
        data = serialize.set_to_json(d)
        _write_artifact(args.out, data)
        payload = {"set": data, "verification": {"params": [d.v, d.k, d.lam]}}
        human = [
            f"singer q={args.q}: elements {list(d.as_ints())} in Z_{d.v}",
            f"verified parameters: ({d.v}, {d.k}, {d.lam})",
        ]
        return "ok", payload, human, EXIT_OK
    if kind == "bose-chowla":
        b = sets.bose_chowla(args.q, args.h)
        data = serialize.set_to_json(b)
        _write_artifact(args.out, data)
        payload = {"set": data, "verification": {"bh": True, "h": b.h}}
        human = [
            f"bose-chowla q={args.q} h={args.h}: elements {list(b.as_ints())} "
            f"in Z_{b.group.order}",
            f"verified B_{b.h}: true",
        ]
        return "ok", payload, human, EXIT_OK
    if kind == "perfect-a1":
        lat = codes.perfect_code_A1(args.r)
        ok = verify.check_perfect(lat, args.r)
    elif kind == "perfect-a2":
        lat = codes.perfect_code_A2(args.r)
        ok = verify.check_perfect(lat, args.r)
    elif kind == "tiling-s2":
        lat = codes.tiling_lattice_S2(args.r)
        ok = verify.check_tiling(lat, Shape(2, args.r + 1, args.r))
    else:
        raise ValueError(f"unknown construction {kind!r}")
    data = serialize.code_to_json(lat)
    _write_artifact(args.out, data)
    group, _ = lat.quotient()
    payload = {
        "code": data,
        "verification": {"ok": ok, "quotient": serialize.group_to_json(group)},
    }
    human = [
        f"{kind} r={args.r}: basis {[list(r) for r in lat.basis]}, det {lat.det_abs}",
        f"quotient: {list(group.invariant_factors) or 'trivial'}",
        f"verified: {ok}",
    ]
    return "ok", payload, human, EXIT_OK if ok else EXIT_FAIL


def _deadline(args):
    return time.monotonic() + args.timeout_s if args.timeout_s else None


def cmd_search(args):
    if args.kind == "planar":
        rep = sets.search_planar(args.n, args.max_nodes, _deadline(args))
    else:
        rep = sets.search_min_group(args.h, args.k, args.max_v, args.max_nodes, _deadline(args))
    payload = _search_payload(rep)
    if rep.found is not None:
        human = [f"found after {rep.nodes} nodes: "
                 f"{[list(e) for e in rep.found.elements]} in group "
                 f"{list(rep.found.group.invariant_factors) or 'trivial'}"]
        return "ok", payload, human, EXIT_OK
    if rep.exhaustive:
        return "not-found", payload, [f"exhaustive absence ({rep.nodes} nodes)"], EXIT_ABSENT
    return "not-found", payload, [f"budget exhausted after {rep.nodes} nodes"], EXIT_BUDGET


def cmd_verify(args):
    kind = args.kind
    if kind in ("dset", "bh"):
        data = _load_json(args.set)
        serialize._check_schema(data)
        group = serialize.group_from_json(data["group"])
        elements = [tuple(int(c) for c in e) for e in data["elements"]]
        if kind == "dset":
            params = sets.verify_difference_set(group, elements)
            ok = params is not None
            payload = {"valid": ok, "params": list(params) if params else None}
            human = [f"difference set: {'valid ' + str(params) if ok else 'INVALID'}"]
        else:
            h = args.h if args.h is not None else int(data.get("h", 0))
            if h < 1:
                raise ValueError("h must be given via --h or the artifact")
            ok = sets.verify_bh(group, elements, h)
            payload = {"valid": ok, "h": h}
            human = [f"B_{h} set: {'valid' if ok else 'INVALID'}"]
        return ("ok" if ok else "error"), payload, human, EXIT_OK if ok else EXIT_FAIL

    lattice, _ = serialize.code_from_json(_load_json(args.code))
    if kind == "cover":
        rep = verify.check_cover(lattice, args.r)
        payload = {
            "r": rep.r, "i": rep.i, "j": rep.j, "is_cover": rep.is_cover,
            "witness": list(rep.witness) if rep.witness else None,
        }
        human = [f"cover profile: ({rep.r}, {rep.i}, {rep.j}), uniform: {rep.is_cover}"]
        return ("ok" if rep.is_cover else "error"), payload, human, (
            EXIT_OK if rep.is_cover else EXIT_FAIL
        )
    if kind == "perfect":
        ok = verify.check_perfect(lattice, args.r)
        payload = {"perfect": ok, "r": args.r}
        human = [f"perfect at r={args.r}: {ok}"]
    else:  # tiling
        shape = Shape(lattice.n, args.rplus, args.rminus)
        ok = verify.check_tiling(lattice, shape)
        payload = {"tiling": ok, "rplus": args.rplus, "rminus": args.rminus}
        human = [f"tiling by S_{lattice.n}({args.rplus},{args.rminus}): {ok}"]
    return ("ok" if ok else "error"), payload, human, EXIT_OK if ok else EXIT_FAIL


def cmd_code(args):
    if args.kind == "build":
        obj = serialize.set_from_json(_load_json(args.set))
        finite = None
        if isinstance(obj, sets.DifferenceSet):
            if obj.group.is_cyclic:
                obj = sets.normalize_equivalence(obj)
                finite = codes.finite_code(obj)
            lattice = codes.lattice_from_difference_set(obj)
        else:
            lattice = codes.lattice_from_bh_set(obj)
        data = serialize.code_to_json(lattice, finite)
        _write_artifact(args.out, data)
        human = [f"built code: n={lattice.n}, det={lattice.det_abs}"]
        if finite:
            human.append(f"parity row: {list(finite.parity_row)} mod {finite.v}")
        return "ok", {"code": data}, human, EXIT_OK

    # decode
    lattice, finite = serialize.code_from_json(_load_json(args.code))
    word = _parse_word(args.word)
    if args.rplus is not None or args.rminus is not None:
        rp = args.rplus or 0
        rm = args.rminus or 0
        table = _table_for(lattice, finite, rp, rm)
        result = codes.decode_radius_r(table, finite if finite else lattice, word)
        payload = {
            "status": result.status,
            "codeword": list(result.codeword) if result.codeword else None,
            "error": list(result.error) if result.error else None,
        }
        human = [f"decode: {result.status}"
                 + (f", codeword {list(result.codeword)}, error {list(result.error)}"
                    if result.status == "corrected" else "")]
        return "ok", payload, human, EXIT_OK
    if finite is None:
        raise ValueError("radius-1 decode requires a finite code; pass --rplus/--rminus")
    cw = codes.decode_radius1(finite, word)
    err = tuple((y - c) % finite.v for y, c in zip(word, cw))
    payload = {"status": "corrected", "codeword": list(cw), "error": list(err)}
    return "ok", payload, [f"decoded {list(word)} -> {list(cw)} (error {list(err)})"], EXIT_OK


def cmd_simulate(args):
    lattice, finite = serialize.code_from_json(_load_json(args.code))
    if finite is None:
        raise ValueError("simulation requires a finite code artifact")
    mode = "overload" if args.overload else "uniform"
    cfg = channel.ChannelConfig(
        r_plus=args.rplus, r_minus=args.rminus, mode=mode,
        extra=args.overload or 0, seed=args.seed, trials=args.trials,
    )
    table = _table_for(lattice, finite, args.rplus, args.rminus)
    stats = channel.run_simulation(finite, table, cfg)
    payload = dict(stats.as_dict())
    payload["config"] = {
        "r_plus": cfg.r_plus, "r_minus": cfg.r_minus, "mode": cfg.mode,
        "extra": cfg.extra, "seed": cfg.seed, "trials": cfg.trials,
    }
    human = [
        f"trials {stats.trials}: corrected {stats.corrected}, "
        f"detected {stats.detected}, miscorrected {stats.miscorrected}"
    ]
    return "ok", payload, human, EXIT_OK


def cmd_bounds(args):
    reports = []
    if args.h is not None and args.k is not None:
        reports.append(verify.bound_phi_k(args.h, args.k))
        if args.k >= 2 and args.h >= 2 * args.k - 4:
            reports.append(verify.bound_phi_h(args.h, args.k))
    if args.h is not None and args.v is not None:
        reports.append(verify.bound_f_h(args.h, args.v))
    if args.k is not None and args.v is not None:
        reports.append(verify.bound_h_k(args.k, args.v))
    if not reports:
        raise ValueError("give --h with --k, --h with --v, or --k with --v")
    payload = {"bounds": [_bound_payload(r) for r in reports]}
    human = [
        f"{r.formula}{r.inputs}: "
        + (str(_frac(r.low)) if r.low == r.high else f"[{r.low}, {r.high}]")
        for r in reports
    ]
    return "ok", payload, human, EXIT_OK


def cmd_experiment(args):
    if args.kind == "ppc":
        rows = verify.experiment_ppc(args.n_max, args.max_nodes, args.threads)
        payload = {"rows": [
            {"n": r.n, "prime_power": r.prime_power, "found": r.found,
             "exhaustive": r.exhaustive, "nodes": r.nodes,
             "witness": list(r.witness) if r.witness else None}
            for r in rows
        ]}
        human = [f"{'n':>3} {'prime_power':>11} {'found':>6} {'exhaustive':>10} {'nodes':>10}"]
        for r in rows:
            human.append(
                f"{r.n:>3} {str(r.prime_power):>11} {str(r.found):>6} "
                f"{str(r.exhaustive):>10} {r.nodes:>10}"
            )
        return "ok", payload, human, EXIT_OK

    qs = [int(q) for q in args.q.split(",")]
    lattices = [codes.lattice_from_difference_set(sets.singer(q)) for q in qs]
    lattices.append(codes.perfect_code_A1(1))
    lattices.append(codes.tiling_lattice_S2(1))
    rows = verify.experiment_cyclicity(lattices)
    payload = {"rows": [
        {"source": r.source, "det": r.det, "is_perfect1": r.is_perfect1,
         "cyclic": r.cyclic, "period_match": r.period_match}
        for r in rows
    ]}
    human = []
    for r in rows:
        tag = r.source.get("kind", "?")
        if r.is_perfect1:
            human.append(f"{tag} (det {r.det}): cyclic={r.cyclic}, period-match={r.period_match}")
        else:
            human.append(f"{tag} (det {r.det}): not 1-perfect, outside conjecture scope")
    return "ok", payload, human, EXIT_OK


def cmd_shape(args):
    shape = Shape(args.n, args.rplus, args.rminus)
    if args.kind == "size":
        size = geometry.shape_size(shape)
        return "ok", {"size": serialize.enc_int(size)}, [str(size)], EXIT_OK
    points = geometry.shape_points(shape)
    if args.limit is not None:
        points = points[: args.limit]
    payload = {"count": len(points), "points": [list(p) for p in points]}
    human = [",".join(str(c) for c in p) for p in points]
    return "ok", payload, human, EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sidon-lattice",
        description="Difference sets, B_h sequences, and lattice codes: "
                    "construct, search, verify, decode, simulate.",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (simulations)")
    p.add_argument("--threads", type=int, default=1, help="worker count for searches")
    p.add_argument("--max-nodes", type=int, default=None, help="search node budget")
    p.add_argument("--timeout-s", type=float, default=None, help="search time budget")
    p.add_argument("--limit", type=int, default=None, help="cap on emitted items")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named construction")
    cs = c.add_subparsers(dest="kind", required=True)
    for kind in ("singer", "bose-chowla", "perfect-a1", "perfect-a2", "tiling-s2"):
        k = cs.add_parser(kind)
        if kind in ("singer", "bose-chowla"):
            k.add_argument("--q", type=int, required=True)
        if kind == "bose-chowla":
            k.add_argument("--h", type=int, required=True)
        if kind.startswith(("perfect", "tiling")):
            k.add_argument("--r", type=int, required=True)
        k.add_argument("--out", help="write the artifact JSON to this file")
        k.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="exhaustive searches")
    ss = s.add_subparsers(dest="kind", required=True)
    sp = ss.add_parser("planar")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_search)
    sm = ss.add_parser("min-group")
    sm.add_argument("--h", type=int, required=True)
    sm.add_argument("--k", type=int, required=True)
    sm.add_argument("--max-v", type=int, required=True)
    sm.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="verify sets and codes")
    vs = v.add_subparsers(dest="kind", required=True)
    vd = vs.add_parser("dset")
    vd.add_argument("--set", required=True)
    vd.set_defaults(func=cmd_verify)
    vb = vs.add_parser("bh")
    vb.add_argument("--set", required=True)
    vb.add_argument("--h", type=int)
    vb.set_defaults(func=cmd_verify)
    for kind in ("cover", "perfect"):
        vk = vs.add_parser(kind)
        vk.add_argument("--code", required=True)
        vk.add_argument("--r", type=int, required=True)
        vk.set_defaults(func=cmd_verify)
    vt = vs.add_parser("tiling")
    vt.add_argument("--code", required=True)
    vt.add_argument("--rplus", type=int, required=True)
    vt.add_argument("--rminus", type=int, required=True)
    vt.set_defaults(func=cmd_verify)

    co = sub.add_parser("code", help="build codes from sets; decode words")
    cos = co.add_subparsers(dest="kind", required=True)
    cb = cos.add_parser("build")
    cb.add_argument("--set", required=True)
    cb.add_argument("--out")
    cb.set_defaults(func=cmd_code)
    cd = cos.add_parser("decode")
    cd.add_argument("--code", required=True)
    cd.add_argument("--word", required=True)
    cd.add_argument("--rplus", type=int)
    cd.add_argument("--rminus", type=int)
    cd.set_defaults(func=cmd_code)

    si = sub.add_parser("simulate", help="run the insertion/deletion channel")
    si.add_argument("--code", required=True)
    si.add_argument("--trials", type=int, required=True)
    si.add_argument("--rplus", type=int, required=True)
    si.add_argument("--rminus", type=int, required=True)
    si.add_argument("--overload", type=int, help="draw errors from an annulus this wide")
    si.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bounds", help="evaluate the size-bound formulas")
    b.add_argument("--h", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--v", type=int)
    b.set_defaults(func=cmd_bounds)

    e = sub.add_parser("experiment", help="conjecture experiments")
    es = e.add_subparsers(dest="kind", required=True)
    ep = es.add_parser("ppc")
    ep.add_argument("--n-max", type=int, required=True)
    ep.set_defaults(func=cmd_experiment)
    ec = es.add_parser("cyclicity")
    ec.add_argument("--q", default="2,3", help="comma-separated prime powers")
    ec.set_defaults(func=cmd_experiment)

    sh = sub.add_parser("shape", help="ball/shape cardinality and points")
    shs = sh.add_subparsers(dest="kind", required=True)
    for kind in ("size", "points"):
        k = shs.add_parser(kind)
        k.add_argument("--n", type=int, required=True)
        k.add_argument("--rplus", type=int, required=True)
        k.add_argument("--rminus", type=int, required=True)
        k.set_defaults(func=cmd_shape)

    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        status, payload, human, exit_code = args.func(args)
    except (SidonLatticeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        timing = int((time.monotonic() - start) * 1000)
        if args.json:
            print(json.dumps({
                "schema": SCHEMA, "status": "error",
                "error": {"code": getattr(exc, "code", "invalid-input"),
                          "message": str(exc)},
                "timing_ms": timing,
            }))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    timing = int((time.monotonic() - start) * 1000)
    if args.json:
        print(json.dumps({
            "schema": SCHEMA, "status": status, "payload": payload,
            "timing_ms": timing,
        }))
    else:
        for line in human:
            print(line)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
