"""Command-line front end.

Exit codes: 0 success, 1 an obstruction search was inconclusive somewhere
(results are still written), 2 usage error. ``obstruct`` additionally exits
3 when the lattice obstruction holds.
"""
import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from . import changemaker, configuration, farey, lens, smoothing, spheres
from .errors import CapExceeded, LensringError

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_OBSTRUCTED = 0, 1, 2, 3
HARD_MAX_N = 40
SURVEY_MAX_N = 8


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    format: str = "tsv"
    out: str = None
    max_n: int = None
    max_p: int = changemaker.DEFAULT_MAX_P
    node_cap: int = changemaker.DEFAULT_NODE_CAP
    jobs: int = 1

    def check(self):
        if self.format not in ("json", "tsv"):
            raise UsageError(f"format must be json or tsv, got {self.format!r}")
        for name in ("max_n", "max_p", "node_cap", "jobs"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        if self.max_n is not None and self.max_n > HARD_MAX_N:
            raise UsageError(f"max-n is limited to {HARD_MAX_N}")


_CONFIG_KEYS = {"format": str, "out": str, "max-n": int, "max-p": int, "node-cap": int, "jobs": int}


def read_config_file(path):
    """Parse a key=value file whose keys mirror the long flags."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key.replace("-", "_")] = _CONFIG_KEYS[key](value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return values


# ---------------------------------------------------------------- output


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    return str(value)


def render(command, rows, summary, fmt):
    if fmt == "json":
        return json.dumps({"command": command, "rows": rows, "summary": summary}, indent=2) + "\n"
    lines = []
    if rows:
        keys = list(rows[0])
        lines.append("\t".join(keys))
        lines += ["\t".join(_cell(r[k]) for k in keys) for r in rows]
    lines += [f"# {k}\t{_cell(v)}" for k, v in summary.items()]
    return "\n".join(lines) + "\n"


def parse_tsv(text):
    """Read back TSV output as (rows, summary) with every cell as a string."""
    rows, summary, keys = [], {}, None
    for line in text.splitlines():
        if line.startswith("# "):
            k, _, v = line[2:].partition("\t")
            summary[k] = v
        elif keys is None:
            keys = line.split("\t")
        else:
            rows.append(dict(zip(keys, line.split("\t"))))
    return rows, summary


# ---------------------------------------------------------------- commands


def _pmap(fn, items, jobs):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def cmd_paths(n, cfg):
    if n < 1:
        raise UsageError("n must be at least 1")
    paths = farey.enumerate_paths(n, cap=cfg.max_n or farey.DEFAULT_PATH_CAP)
    rows = [{"index": k, "path": str(p)} for k, p in enumerate(paths)]
    return rows, {"n": n, "count": len(rows)}, EXIT_OK


def cmd_config(path_text, cfg):
    config = configuration.build(farey.parse_path(path_text))
    d = config.to_dict()
    rows = [
        {
            "index": j,
            "slope": str(config.path[j]),
            "square": config.squares[j],
            "class": list(config.classes[j]),
            "w": list(config.w[j]),
            "meridian": list(config.meridian_coeffs[j]),
        }
        for j in range(config.n + 2)
    ]
    return rows, {"path": d["path"], "n": config.n, "total_square": sum(config.squares)}, EXIT_OK


def family_path(n):
    return farey.validate_path([farey.ZERO] + [farey.Slope(k, 1) for k in range(1, n + 1)] + [farey.INFINITY])


def family_pairs(n_max):
    """(n, k) with 2 <= k < n <= n_max and gcd(2k - 1, 2n - 1) = 1."""
    return [
        (n, k)
        for n in range(3, n_max + 1)
        for k in range(2, n)
        if gcd(2 * k - 1, 2 * n - 1) == 1
    ]


def family_smoothing(n, k):
    """Smoothed chain of the k/1 family at (k-1, k) and (n-1, n).

    For k = n - 1 the two points are adjacent and three spheres merge.
    """
    config = configuration.build(family_path(n))
    if k == n - 1:
        return smoothing.smooth_adjacent(config, k - 1, 1, 1)
    return smoothing.smooth(config, smoothing.SmoothingSpec(k - 1, 1, n - 1, 1))


def family_row(n, k, max_p=changemaker.DEFAULT_MAX_P, node_cap=changemaker.DEFAULT_NODE_CAP):
    result = family_smoothing(n, k)
    p, q_cf = lens.cf_evaluate(result.chain)
    p_closed, q_closed = lens.family_lens(n, k)
    if p != p_closed or (q_closed * q_cf) % p != 1 % p:
        raise LensringError(f"family row ({n},{k}) disagrees with the closed form")
    verdict = changemaker.surgery_obstruction(result.chain, max_p=max_p, node_cap=node_cap)
    return {
        "n": n,
        "k": k,
        "chain": list(result.chain),
        "p": p,
        "q_closed": q_closed,
        "q_cf": q_cf,
        "sigma": list(result.sigma),
        "is_changemaker": changemaker.is_changemaker(result.sigma),
        "verdict": verdict.verdict,
    }


def _family_job(args):
    return family_row(*args)


def cmd_family(cfg):
    max_n = cfg.max_n or SURVEY_MAX_N
    jobs = [(n, k, cfg.max_p, cfg.node_cap) for n, k in family_pairs(max_n)]
    rows = _pmap(_family_job, jobs, cfg.jobs)
    counts = {v: sum(r["verdict"] == v for r in rows) for v in ("obstructed", "realizable", "inconclusive")}
    summary = {"max_n": max_n, "rows": len(rows), **counts}
    return rows, summary, EXIT_INCONCLUSIVE if counts["inconclusive"] else EXIT_OK


def survey_rows(path):
    config = configuration.build(path)
    rows = []
    for spec in smoothing.enumerate_smoothings(config):
        try:
            result = smoothing.smooth(config, spec)
        except smoothing.DegenerateChainError:
            continue
        if not result.simply_connected:
            continue
        p, q = lens.cf_evaluate(result.chain)
        rows.append(
            {
                "path": str(path),
                "spec": str(spec),
                "chain": list(result.chain),
                "p": p,
                "q": q,
                "sigma": list(result.sigma),
                "sigma_norm": configuration.dot(result.sigma, result.sigma),
                "is_changemaker": changemaker.is_changemaker(result.sigma),
            }
        )
    return rows


def cmd_survey(n, cfg):
    if n < 1:
        raise UsageError("n must be at least 1")
    max_n = cfg.max_n or SURVEY_MAX_N
    if n > max_n:
        raise CapExceeded(f"survey n = {n} exceeds max-n = {max_n}")
    paths = farey.enumerate_paths(n, cap=max_n)
    rows = [r for chunk in _pmap(survey_rows, paths, cfg.jobs) for r in chunk]
    cm = sum(r["is_changemaker"] for r in rows)
    summary = {"n": n, "rows": len(rows), "changemaker": cm, "non_changemaker": len(rows) - cm}
    return rows, summary, EXIT_OK


def cmd_obstruct(chain_text, cfg, reverse=False):
    verdict = changemaker.surgery_obstruction(
        lens.parse_chain(chain_text), max_p=cfg.max_p, node_cap=cfg.node_cap, include_reverse=reverse
    )
    rows = []
    groups = [("given", verdict.searches)]
    if reverse:
        groups.append(("reversed", verdict.reversed_searches))
    for orientation, searches in groups:
        for q, s in sorted(searches.items()):
            cert = s.certificate
            rows.append(
                {
                    "orientation": orientation,
                    "lens": f"L({s.p},{q})",
                    "chain": list(s.chain),
                    "result": s.verdict,
                    "sigma": None if cert is None else list(cert.sigma),
                    "vectors": None if cert is None else ";".join(",".join(map(str, v)) for v in cert.vectors),
                    "changemakers": s.sigmas,
                    "nodes": s.nodes,
                }
            )
    summary = {"chain": lens.format_chain(verdict.chain), "lens": f"L({verdict.p},{verdict.q})", "verdict": verdict.verdict}
    code = {"realizable": EXIT_OK, "obstructed": EXIT_OBSTRUCTED, "inconclusive": EXIT_INCONCLUSIVE}[verdict.verdict]
    return rows, summary, code


def cmd_lens(text, cfg):
    if text.strip().startswith("L"):
        space = lens.parse_lens(text)
    else:
        p, q = lens.cf_evaluate(lens.parse_chain(text))
        if p < 2:
            raise UsageError(f"chain evaluates to {p}/{q}, not a lens space")
        space = lens.lens_canonical(p, q % p)
    rows = [
        {"lens": f"L({space.p},{q})", "chain": list(lens.cf_expand(space.p, q)), "det": lens.LinearLattice(lens.cf_expand(space.p, q)).det}
        for q in sorted(space.q_set)
    ]
    return rows, {"lens": str(space), "q_set": sorted(space.q_set), "reverse": str(space.reverse())}, EXIT_OK


def cmd_spheres(what, value, cfg, count=False):
    if what == "max":
        if value < 1:
            raise UsageError("n must be at least 1")
        configs = [configuration.build(p) for p in farey.enumerate_paths(value, cap=cfg.max_n or farey.DEFAULT_PATH_CAP)]
        values = sorted({v for c in configs for v in spheres.smoothed_squares(c).values()})
        rows = [{"n": value, "max_square": v} for v in values]
        return rows, {"n": value, "configurations": len(configs), "expected": 5 * value - 1}, EXIT_OK
    if what == "twist":
        if value < 0:
            raise UsageError("n must be nonnegative")
        rows = [{"n": m, "square": spheres.twist_concordance_square(m)} for m in range(value + 1)]
        return rows, {"n": value, "square": spheres.twist_concordance_square(value)}, EXIT_OK
    if what == "petersen":
        if value < 1:
            raise UsageError("length must be at least 1")
        g = spheres.subdivided_petersen()
        witness = spheres.find_induced_path(g, value)
        rows = [
            {
                "length": value,
                "found": witness is not None,
                "path": witness,
                "valid": witness is not None and spheres.is_induced_path(g, witness),
            }
        ]
        summary = {
            "vertices": g.n,
            "edges": len(g.edges),
            f"induced_path_{value + 1}_exists": spheres.find_induced_path(g, value + 1) is not None,
        }
        if count:
            summary["count"] = spheres.count_induced_paths(g, value)
        return rows, summary, EXIT_OK
    raise UsageError(f"unknown spheres subcommand {what!r}")


# ---------------------------------------------------------------- argparse


def _common(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("json", "tsv"), default=d)
    parser.add_argument("--out", metavar="PATH", default=d)
    parser.add_argument("--max-n", type=int, default=d)
    parser.add_argument("--max-p", type=int, default=d)
    parser.add_argument("--node-cap", type=int, default=d)
    parser.add_argument("--jobs", type=int, default=d)
    parser.add_argument("--config", metavar="PATH", default=d, help="key=value file; flags take precedence")
    parser.add_argument("--seed-free", action="store_true", default=d, help="reserved; nothing here is random")


def build_parser():
    parser = argparse.ArgumentParser(prog="lensring", description="Farey ring configurations, lens spaces and changemaker obstructions.")
    _common(parser, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("paths", help="enumerate Farey paths with N interior slopes")
    p.add_argument("n", type=int)
    p = sub.add_parser("config", help="ring configuration of a Farey path, e.g. 0/1,1/1,2/1,1/0")
    p.add_argument("path")
    sub.add_parser("family", help="k/1 family table up to --max-n")
    p = sub.add_parser("survey", help="all simply connected smoothings for paths of size N")
    p.add_argument("n", type=int)
    p = sub.add_parser("obstruct", help="changemaker-complement obstruction for a chain, e.g. 6,5,4")
    p.add_argument("chain")
    p.add_argument("--reverse", action="store_true", help="also search the reversed orientation")
    p = sub.add_parser("lens", help="evaluate a chain or expand L(p,q)")
    p.add_argument("value")
    p = sub.add_parser("spheres", help="max N | twist N | petersen LEN")
    p.add_argument("what", choices=("max", "twist", "petersen"))
    p.add_argument("value", type=int)
    p.add_argument("--count", action="store_true", help="petersen: also count induced paths")
    for name, sp in sub.choices.items():
        _common(sp, suppress=True)
    return parser


def resolve_config(args):
    cfg = RunConfig()
    ns = vars(args)
    if ns.get("config"):
        try:
            file_values = read_config_file(ns["config"])
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        for k, v in file_values.items():
            setattr(cfg, k, v)
    for k in ("format", "out", "max_n", "max_p", "node_cap", "jobs"):
        if ns.get(k) is not None:
            setattr(cfg, k, ns[k])
    cfg.check()
    return cfg


def run(argv=None):
    """Parse arguments and execute.

    Returns (exit_code, rendered_text, out_path); the text has already been
    written to out_path when that is set.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), "", None
    try:
        cfg = resolve_config(args)
        cmd = args.command
        if cmd == "paths":
            rows, summary, code = cmd_paths(args.n, cfg)
        elif cmd == "config":
            rows, summary, code = cmd_config(args.path, cfg)
        elif cmd == "family":
            rows, summary, code = cmd_family(cfg)
        elif cmd == "survey":
            rows, summary, code = cmd_survey(args.n, cfg)
        elif cmd == "obstruct":
            rows, summary, code = cmd_obstruct(args.chain, cfg, reverse=args.reverse)
        elif cmd == "lens":
            rows, summary, code = cmd_lens(args.value, cfg)
        else:
            rows, summary, code = cmd_spheres(args.what, args.value, cfg, count=args.count)
    except (UsageError, CapExceeded, LensringError, ValueError) as exc:
        print(f"lensring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, "", None
    text = render(cmd, rows, summary, cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    return code, text, cfg.out


def main(argv=None):
    code, text, out = run(argv)
    if text and not out:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
