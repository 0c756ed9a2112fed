"""Command-line front end with reproducible JSON reporting.

Subcommands cover the whole pipeline: ``hull`` (generation and the three
ideal checks), ``paction`` (partial actions and round trips), ``smashlab``
(exact matrix-unit verification), ``orbits`` (orbit charts), ``ktheory``
(summand expressions and presets) and ``tiling`` (point-set windows).

Reports are deterministic: identical configs serialize byte-identically.
Wall-clock timing therefore goes to stderr only, never into the report.
Exit codes: 0 for a completed run -- a failing mathematical check is data,
not an error -- 2 for configuration problems, 3 for a tripped budget (with
a partial report still written), 1 for unexpected tool errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from . import hull as hull_mod
from . import ktheory as ktheory_mod
from . import orbits as orbits_mod
from . import paction as paction_mod
from . import presentation as presentation_mod
from . import smashlab as smashlab_mod
from . import tiling as tiling_mod
from .smashlab import BudgetExceeded
from .tiling import SizeLimit
from .words import WordError

SCHEMA_VERSION = 1

TIMING_POLICY = ("wall-clock timing is written to stderr; the report omits "
                 "it so that identical configs serialize byte-identically")


class ConfigError(ValueError):
    """A flag or config-file problem the user can fix."""


# ---------------------------------------------------------------------------
# serialization


def _jsonable(x):
    """Coerce report structures into plain JSON values, stringifying leaves
    that have no natural JSON form (hull elements, group members, ...)."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=str)
    if hasattr(x, "as_json"):
        return _jsonable(x.as_json())
    if dataclasses.is_dataclass(x):
        return {f.name: _jsonable(getattr(x, f.name))
                for f in dataclasses.fields(x)}
    return str(x)


def _key(k):
    return k if isinstance(k, str) else str(k)


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def ordered_map(fn, items, threads: int) -> list:
    """Map preserving input order; parallel only when asked to be."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# config files: "directive: value" lines, '#' comments


def parse_directives(text: str) -> dict:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ConfigError(f"cannot parse config line {raw!r}; "
                              "expected 'directive: value'")
        key, value = (part.strip() for part in line.split(":", 1))
        if key in out:
            raise ConfigError(f"duplicate directive {key!r}")
        out[key] = value
    return out


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser):
    """Fill flags the user did not set from the --config file directives."""
    if not getattr(args, "config", None):
        return
    text = _read_file(args.config)
    args.config_text = text
    directives = parse_directives(text)
    actions = {a.dest.replace("_", "-"): a for a in parser._actions
               if a.dest not in ("help", "config", "out")}
    for key, value in directives.items():
        if key not in actions:
            raise ConfigError(
                f"unknown directive {key!r} for this subcommand; "
                f"known: {', '.join(sorted(actions))}")
        act = actions[key]
        if getattr(args, act.dest) is not None:
            continue  # explicit flags win over the config file
        conv = act.type or str
        try:
            setattr(args, act.dest, conv(value))
        except ValueError as exc:
            raise ConfigError(f"directive {key!r}: {exc}") from None
        if act.choices and getattr(args, act.dest) not in act.choices:
            raise ConfigError(f"directive {key!r} must be one of "
                              f"{sorted(act.choices)}")


def _default(args, name, value):
    if getattr(args, name, None) is None:
        setattr(args, name, value)


def _positive(args, *names):
    for name in names:
        v = getattr(args, name)
        if v is not None and v < 1:
            raise ConfigError(f"--{name.replace('_', '-')} must be positive")


# ---------------------------------------------------------------------------
# small parsers for flag values


def _parse_int_tuple(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}")


def _parse_coxeter(text: str) -> dict:
    """Parse "a b 3; b c 4" into {(a, b): 3, (b, c): 4}."""
    out = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = part.split()
        if len(bits) != 3:
            raise ConfigError(
                f"coxeter entry {part!r} is not 'letter letter order'")
        try:
            out[(bits[0], bits[1])] = int(bits[2])
        except ValueError:
            raise ConfigError(f"coxeter order {bits[2]!r} is not an integer")
    if not out:
        raise ConfigError("empty coxeter table")
    return out


def _parse_size(text: str):
    if text.strip().lower() in ("infinite", "inf"):
        return "infinite"
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"--size must be an integer or 'infinite', "
                          f"got {text!r}")


def _match_group_token(group, token: str):
    token = token.strip()
    for g in group.elements:
        if str(g) == token:
            return g
    raise ConfigError(f"{token!r} does not name a group element; "
                      f"elements: {[str(g) for g in group.elements]}")


def _group_tokens_ok(group) -> bool:
    return all("," not in str(g) and ";" not in str(g)
               for g in group.elements)


# ---------------------------------------------------------------------------
# shared builders


def _build_context(args):
    """A monoid context from --preset plus params, or --presentation file."""
    if getattr(args, "presentation", None):
        if args.preset:
            raise ConfigError("give either --preset or --presentation, "
                              "not both")
        text = _read_file(args.presentation)
        try:
            return presentation_mod.parse_config(text)
        except (presentation_mod.PresentationError, WordError) as exc:
            raise ConfigError(str(exc)) from None
    if not args.preset:
        raise ConfigError("a monoid source is required: --preset NAME or "
                          "--presentation FILE")
    params = {}
    for name in ("letters", "u", "v", "n", "k", "l"):
        if getattr(args, name, None) is not None:
            params[name] = getattr(args, name)
    if getattr(args, "generators", None) is not None:
        params["generators"] = _parse_int_tuple(args.generators)
    if getattr(args, "coxeter", None) is not None:
        params["coxeter"] = _parse_coxeter(args.coxeter)
    try:
        return presentation_mod.preset(args.preset, **params)
    except TypeError as exc:
        raise ConfigError(
            f"preset {args.preset!r} rejected the parameters: {exc}") from None
    except (presentation_mod.PresentationError, WordError) as exc:
        raise ConfigError(str(exc)) from None


def _check_seed_order(args, ctx):
    """Validate --seed-order as a total order over the context alphabet."""
    if not getattr(args, "seed_order", None):
        return None
    order = tuple(p.strip() for p in args.seed_order.split(",") if p.strip())
    names = ctx.alphabet.names
    if sorted(order) != sorted(names):
        raise ConfigError(
            f"--seed-order must be a permutation of the alphabet "
            f"{list(names)}, got {list(order)}")
    return order


def _build_action(args, registry=None):
    """A bundled partial action from --example or an action-spec file."""
    registry = registry or paction_mod.ACTION_EXAMPLES
    spec = {}
    if getattr(args, "from_file", None):
        spec = parse_directives(_read_file(args.from_file))
        unknown = set(spec) - {"example", "window"}
        if unknown:
            raise ConfigError(f"unknown action-spec directives: "
                              f"{sorted(unknown)}; known: example, window")
    example = getattr(args, "example", None) or spec.get("example")
    if getattr(args, "from_hull", None):
        if example:
            raise ConfigError("give one action source, not several")
        return _action_from_hull(args)
    if not example:
        raise ConfigError(
            "an action source is required: --example NAME, --from-file "
            "FILE, or --from-hull FILE")
    if example not in registry:
        raise ConfigError(f"unknown action example {example!r}; "
                          f"available: {sorted(registry)}")
    window = getattr(args, "window", None)
    if window is None and "window" in spec:
        try:
            window = int(spec["window"])
        except ValueError:
            raise ConfigError("window directive must be an integer")
    if example == "bicyclic-window":
        return registry[example](window if window is not None else 6)
    if window is not None:
        raise ConfigError(f"example {example!r} takes no window")
    return registry[example]()


def _action_from_hull(args):
    """The windowed ideal action of the hull named by a presentation config.

    Bundled for the rank-one positive cone: its hull idempotents form the
    chain of shifted copies, and the enveloping group shifts them.  Other
    monoids would need their own windowing scheme.
    """
    ctx = presentation_mod.parse_config(_read_file(args.from_hull))
    lane = hull_mod.make_lane(ctx)
    if not (isinstance(lane, hull_mod.VectorLane)
            and len(ctx.alphabet.names) == 1):
        raise ConfigError(
            f"--from-hull supports the rank-one positive cone (preset "
            f"free_abelian n=1); got {ctx.name!r}")
    window = getattr(args, "window", None)
    return paction_mod.bicyclic_window_action(
        window if window is not None else 6)


def _action_table(action) -> dict:
    lat = action.lattice
    return {
        "name": action.name,
        "group": [str(g) for g in action.group.elements],
        "elements": [str(e) for e in lat.nonzero()],
        "theta": {str(g): {str(e): str(f) for e, f in m.items()}
                  for g, m in action.theta.items()},
        "windowed": action.windowed,
        "escapes": len(action.escapes),
    }


# ---------------------------------------------------------------------------
# subcommand runners: args -> (payload, status)


def run_hull(args):
    _default(args, "depth", 2)
    _default(args, "radius", 4)
    _positive(args, "depth", "radius", "word_len")
    ctx = _build_context(args)
    order = _check_seed_order(args, ctx)
    hull = hull_mod.Hull(ctx)
    gen = hull.generate(args.depth, args.word_len)
    idems = gen.idempotents()

    def cset_name(cset):
        if hull.lane is not None:
            form = hull.lane.form_of_cset(cset)
            if form is not None:
                return form.describe(ctx)
        return "E{" + ",".join(sorted(str(c) for c in cset)) + "}"

    sort_key = None
    if order:
        rank = {name: i for i, name in enumerate(order)}
        def sort_key(text):
            return [(0, rank[ch]) if ch in rank else (1, ch) for ch in text]
    forms = sorted({cset_name(s.cset) for s in idems}, key=sort_key)

    def run_check(name):
        if name == "independence":
            v = hull_mod.independence_check(ctx, depth=args.depth)
        elif name == "rlcm":
            v = hull_mod.right_lcm_check(ctx, depth=args.depth,
                                         radius=args.radius)
        elif name == "toeplitz":
            if not args.element:
                raise ConfigError(
                    "--check toeplitz needs --element <group word>")
            v = hull_mod.toeplitz_check(ctx, args.element,
                                        radius=args.radius)
        return name, v

    checks = ordered_map(run_check, args.check or [], args.threads)
    payload = {
        "context": {"name": ctx.name,
                    "alphabet": list(ctx.alphabet.names),
                    "exact_ideals": hull.lane is not None},
        "generation": {"depth": gen.depth, "word_len": gen.word_len,
                       "stats": gen.stats,
                       "idempotent_forms": forms[:64],
                       "idempotent_form_count": len(forms)},
        "laws": {"inverse_semigroup": hull_mod.inverse_semigroup_check(gen),
                 "coordinate": hull_mod.sigma_check(gen)},
        "checks": {name: v for name, v in checks},
    }
    return payload, "completed"


def run_paction(args):
    _positive(args, "window")
    action = _build_action(args)
    payload = {"action": _action_table(action),
               "validation": action.validate()}
    if not action.windowed:
        S, sigma = paction_mod.crossed_system(action)
        payload["crossed_system"] = {
            "size": len(S.elements),
            "nonzero": len(S.nonzero()),
            "coordinate": {str(k): str(v) for k, v in sigma.items()},
        }
    name = (getattr(args, "example", None) or "").replace("-", "_")
    roundtrips = {"trivial": "trivial", "swap": "swap", "z4": "z4",
                  "s3": "s3"}
    key = roundtrips.get(getattr(args, "example", None) or "")
    if key:
        S, sigma, group = paction_mod.ROUNDTRIP_EXAMPLES[key]()
        payload["roundtrip"] = paction_mod.roundtrip_check(S, sigma, group)
    return payload, "completed"


VERIFY_SECTIONS = {
    "closure": "closure", "redundant": "redundant", "phi": "comparison",
    "irho": "comparison", "psi": "isomorphism", "nilpotent": "nilpotency",
    "conjugation": "conjugation", "neumann": "inverse",
}

SECTION_RUNNERS = {
    "closure": smashlab_mod.closure_report,
    "redundant": smashlab_mod.redundant_factor_check,
    "isomorphism": smashlab_mod.psi_report,
    "comparison": smashlab_mod.comparison_report,
    "nilpotency": smashlab_mod.nilpotency_report,
    "conjugation": smashlab_mod.conjugation_report,
    "inverse": smashlab_mod.neumann_report,
}


def run_smashlab(args):
    _positive(args, "cap", "window", "span")
    family = _build_family(args)
    verify = args.verify or ["all"]
    if "all" in verify:
        sections = list(SECTION_RUNNERS)
    else:
        sections = sorted({VERIFY_SECTIONS[v] for v in verify},
                          key=list(SECTION_RUNNERS).index)
    results = ordered_map(
        lambda s: (s, SECTION_RUNNERS[s](family)), sections, args.threads)
    reports = {name: rep for name, rep in results}
    payload = {
        "family": {"name": family.name,
                   "window": [str(z) for z in family.sigma],
                   "units": len(family.unit_basis())},
        "reports": reports,
        "ok": all(rep.get("ok", False) for rep in reports.values()),
    }
    return payload, "completed"


def _build_family(args):
    if getattr(args, "action", None) is None:
        name = args.family or "swap"
        if name not in smashlab_mod.FAMILIES:
            raise ConfigError(f"unknown family {name!r}; available: "
                              f"{sorted(smashlab_mod.FAMILIES)}")
        if name == "shift-window":
            kwargs = {}
            if args.window is not None:
                kwargs["window"] = args.window
            if args.span is not None:
                kwargs["span"] = args.span
            return smashlab_mod.shift_window_family(**kwargs)
        for flag in ("sigma", "subgroup", "seed", "window", "span"):
            if getattr(args, flag, None) is not None:
                raise ConfigError(f"--{flag} customizes --action builds; "
                                  f"bundled --family {name!r} is fixed")
        family = smashlab_mod.FAMILIES[name]()
        if args.cap is not None:
            family = smashlab_mod.build_family(
                family.action, family.sigma, family.seeds,
                subgroup=family.subgroup, cap=args.cap, name=family.name)
        return family
    # custom build on a bundled action
    if args.family:
        raise ConfigError("give either --family or --action, not both")
    registry = paction_mod.ACTION_EXAMPLES
    if args.action not in registry:
        raise ConfigError(f"unknown action {args.action!r}; available: "
                          f"{sorted(registry)}")
    if args.action == "bicyclic-window":
        action = registry[args.action](args.window
                                       if args.window is not None else 6)
    else:
        action = registry[args.action]()
    if not _group_tokens_ok(action.group):
        raise ConfigError(
            f"group elements of {args.action!r} contain separators and "
            "cannot be named in flag values; use the bundled family")
    if args.sigma is None or args.seed is None:
        raise ConfigError("--action builds need both --sigma and --seed")
    sigma = tuple(_match_group_token(action.group, t)
                  for t in args.sigma.split(","))
    subgroup = None
    if args.subgroup is not None:
        subgroup = tuple(_match_group_token(action.group, t)
                         for t in args.subgroup.split(","))
    seeds = {}
    lat_names = {str(e): e for e in action.lattice.nonzero()}
    for entry in args.seed.split(";"):
        entry = entry.strip()
        if not entry:
            continue
        if ":" not in entry:
            raise ConfigError(f"seed entry {entry!r} is not "
                              "'zeta,eta:member|member'")
        place, members = entry.split(":", 1)
        if place.count(",") != 1:
            raise ConfigError(f"seed position {place!r} is not 'zeta,eta'")
        zt, et = place.split(",")
        zeta = _match_group_token(action.group, zt)
        eta = _match_group_token(action.group, et)
        cell = set()
        for m in members.split("|"):
            m = m.strip()
            if m not in lat_names:
                raise ConfigError(f"{m!r} is not a semilattice element; "
                                  f"elements: {sorted(lat_names)}")
            cell.add(lat_names[m])
        seeds[(zeta, eta)] = cell
    cap = args.cap if args.cap is not None else 100000
    return smashlab_mod.build_family(action, sigma, seeds, subgroup=subgroup,
                                     cap=cap, name=f"custom-{args.action}")


def run_orbits(args):
    _positive(args, "window")
    action = _build_action(args, registry=orbits_mod.ORBIT_EXAMPLES)
    if action.windowed:
        raise ConfigError("orbit charts need a total (non-windowed) action; "
                          f"{action.name!r} is windowed")
    return orbits_mod.action_orbit_report(action), "completed"


def run_ktheory(args):
    _positive(args, "depth", "radius", "n")
    sources = [s for s in ("preset", "from_file", "example")
               if getattr(args, s, None)]
    if len(sources) != 1:
        raise ConfigError("exactly one of --preset, --from, --example "
                          "is required")
    if args.example:
        registry = paction_mod.ACTION_EXAMPLES
        if args.example not in registry:
            raise ConfigError(f"unknown action example {args.example!r}; "
                              f"available: {sorted(registry)}")
        if args.example == "bicyclic-window":
            raise ConfigError("the windowed action has no total group "
                              "action; use a total example")
        action = registry[args.example]()
        expr = ktheory_mod.resolve(
            ktheory_mod.expression_from_action(action, name=args.example))
        return {"expression": expr.as_json()}, "completed"
    if args.from_file:
        return _ktheory_from_report(args)
    name = args.preset
    if name not in ktheory_mod.PRESET_REPORTS:
        raise ConfigError(f"unknown preset {name!r}; available: "
                          f"{sorted(ktheory_mod.PRESET_REPORTS)}")
    params = {}
    for p in ("k", "l", "letters", "u", "v", "n", "depth", "radius",
              "route"):
        if getattr(args, p, None) is not None:
            params[p] = getattr(args, p)
    if args.generators is not None:
        params["generators"] = _parse_int_tuple(args.generators)
    if args.coxeter is not None:
        params["coxeter"] = _parse_coxeter(args.coxeter)
    if args.size is not None:
        params["size"] = _parse_size(args.size)
    try:
        expr = ktheory_mod.preset_report(name, **params)
    except TypeError as exc:
        raise ConfigError(
            f"preset {name!r} rejected the parameters: {exc}") from None
    except ktheory_mod.KTheoryError as exc:
        return {"refusal": ktheory_mod.refusal_as_json(exc)}, "completed"
    return {"expression": expr.as_json()}, "completed"


def _ktheory_from_report(args):
    """Rebuild a summand expression from an orbit report file.

    Only what the file records is trusted: single-member stabilizers are
    trivial, anything larger stays opaque (a report stores element names,
    not the multiplication), so such summands stay symbolic.
    """
    try:
        data = json.loads(_read_file(args.from_file))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.from_file} is not JSON: {exc}") from None
    report = data.get("report", data)
    charts = report.get("charts")
    if not isinstance(charts, list) or not charts:
        raise ConfigError(f"{args.from_file} does not look like an orbits "
                          "report (no charts)")
    summands = []
    for chart in charts:
        rep = chart.get("representative", "?")
        stab = chart.get("stabilizer", [])
        if len(stab) <= 1:
            desc = ktheory_mod.GroupDescriptor.trivial()
        else:
            desc = ktheory_mod.GroupDescriptor.opaque(
                f"subgroup of order {len(stab)}",
                generators=tuple(str(s) for s in stab))
        summands.append((str(rep), desc))
    expr = ktheory_mod.formula(
        summands, route="partial-action",
        assumptions=(ktheory_mod.LedgerEntry(
            "orbit decomposition loaded from a report file",
            ktheory_mod.verdicts.assumed(args.from_file)),),
        notes=("stabilizer structure beyond the element count is not "
               "recoverable from a report; rerun in-process for structure "
               "detection",),
        name=str(report.get("name", "orbit report")))
    return {"expression": ktheory_mod.resolve(expr).as_json()}, "completed"


def _parse_adjacency_file(path: str, dim: int) -> list:
    """Each line: two points separated by whitespace, coordinates
    comma-joined ("0 1" in one dimension, "0,0 1,0" in two)."""
    pairs = []
    for raw in _read_file(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        bits = line.split()
        if len(bits) != 2:
            raise ConfigError(f"adjacency line {raw!r} is not two points")
        try:
            pairs.append(tuple(tuple(int(c) for c in b.split(","))
                               for b in bits))
        except ValueError:
            raise ConfigError(f"bad coordinates in adjacency line {raw!r}")
    if not pairs:
        raise ConfigError(f"adjacency file {path} holds no pairs")
    for p, q in pairs:
        if len(p) != dim or len(q) != dim:
            raise ConfigError(f"adjacency pair {p} {q} does not match the "
                              f"window dimension {dim}")
    return pairs


def run_tiling(args):
    _default(args, "cap", 20)
    _positive(args, "cap")
    if not args.points:
        raise ConfigError("--points is required, e.g. --points 0,1,2")
    try:
        D = tiling_mod.PointSet.parse(args.points)
    except (tiling_mod.TilingError, ValueError) as exc:
        raise ConfigError(f"bad --points: {exc}") from None
    adjacency = None
    if args.adjacency:
        adjacency = _parse_adjacency_file(args.adjacency, D.dim)
    classes = tiling_mod.patch_classes(D, adjacency=adjacency, cap=args.cap)
    expr = tiling_mod.gamma_ktheory(D, adjacency=adjacency, cap=args.cap)
    elements = sum(len(c) ** 2 for c in classes)
    if elements <= 200:
        laws = {
            "grading": tiling_mod.grading_check(D, adjacency=adjacency),
            "inverse": tiling_mod.inverse_law_check(D, adjacency=adjacency),
        }
    else:
        laws = {"skipped": f"{elements} triples exceed the exhaustive-law "
                           "budget of 200"}
    payload = {
        "window": {"dim": D.dim,
                   "points": [list(p) for p in D.sorted_points()]},
        "classes": [{"representative": D.describe_patch(c),
                     "points": sorted(list(p) for p in c),
                     "size": len(c)} for c in classes],
        "ktheory": expr.as_json(),
        "laws": laws,
    }
    return payload, "completed"


RUNNERS = {
    "hull": run_hull,
    "paction": run_paction,
    "smashlab": run_smashlab,
    "orbits": run_orbits,
    "ktheory": run_ktheory,
    "tiling": run_tiling,
}


# ---------------------------------------------------------------------------
# argument parsing


def _global_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global flags")
    g.add_argument("--config", metavar="FILE",
                   help="directive file supplying defaults for this "
                        "subcommand's flags ('name: value' lines)")
    g.add_argument("--out", metavar="FILE",
                   help="write the JSON report here instead of stdout")
    g.add_argument("--threads", type=int, default=None,
                   help="worker threads for independent checks (default 1)")
    g.add_argument("--seed-order", metavar="LIST",
                   help="comma-separated total order of the alphabet, used "
                        "for report ordering (must be a permutation)")
    return common


def build_parser():
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="invhull",
        description="left inverse hulls, partial actions, exact "
                    "verification, and symbolic K-theory reports")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    subparsers = {}

    def presentation_flags(p):
        p.add_argument("--preset",
                       help="monoid preset: "
                            + ", ".join(sorted(presentation_mod.PRESETS)))
        p.add_argument("--presentation", metavar="FILE",
                       help="presentation config file (alphabet/relations)")
        p.add_argument("--letters", help="generator names, e.g. 'a b c'")
        p.add_argument("-k", type=int, default=None, help="first exponent")
        p.add_argument("-l", type=int, default=None, help="second exponent")
        p.add_argument("-u", help="left relator word")
        p.add_argument("-v", help="right relator word")
        p.add_argument("--n", type=int, default=None, help="rank")
        p.add_argument("--generators", help="numerical generators, "
                                            "e.g. '2,3'")
        p.add_argument("--coxeter", help="orders table, e.g. 'a b 3; b c 4'")

    p = subs.add_parser("hull", parents=[common],
                        help="generate a hull and run ideal checks")
    presentation_flags(p)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--word-len", type=int, default=None)
    p.add_argument("--check", action="append",
                   choices=["independence", "rlcm", "toeplitz"],
                   help="repeatable")
    p.add_argument("--element", help="group word for the toeplitz check")
    subparsers["hull"] = p

    p = subs.add_parser("paction", parents=[common],
                        help="partial actions: tables, validation, "
                             "round trips")
    p.add_argument("--example",
                   help="bundled action: "
                        + ", ".join(sorted(paction_mod.ACTION_EXAMPLES)))
    p.add_argument("--from-file", metavar="FILE",
                   help="action-spec file ('example: NAME', 'window: N')")
    p.add_argument("--from-hull", metavar="FILE",
                   help="presentation config; windows the hull's ideal "
                        "action (rank-one cone)")
    p.add_argument("--window", type=int, default=None)
    subparsers["paction"] = p

    p = subs.add_parser("smashlab", parents=[common],
                        help="exact matrix-unit verification of a cell "
                             "family")
    p.add_argument("--family",
                   help="bundled family: "
                        + ", ".join(sorted(smashlab_mod.FAMILIES)))
    p.add_argument("--action",
                   help="bundled action for a custom build (needs --sigma "
                        "and --seed)")
    p.add_argument("--sigma", help="window elements, e.g. '0,1'")
    p.add_argument("--subgroup", help="symmetry subgroup, e.g. '0,1'")
    p.add_argument("--seed", help="seed cells 'zeta,eta:member|member;...'")
    p.add_argument("--verify", action="append",
                   choices=sorted(VERIFY_SECTIONS) + ["all"],
                   help="repeatable; default all")
    p.add_argument("--cap", type=int, default=None,
                   help="unit-count safety cap")
    p.add_argument("--window", type=int, default=None,
                   help="shift-window size")
    p.add_argument("--span", type=int, default=None,
                   help="shift-window span")
    subparsers["smashlab"] = p

    p = subs.add_parser("orbits", parents=[common],
                        help="orbit partition and verified charts")
    p.add_argument("--example",
                   help="bundled action: "
                        + ", ".join(sorted(orbits_mod.ORBIT_EXAMPLES)))
    p.add_argument("--from-file", metavar="FILE",
                   help="action-spec file ('example: NAME')")
    p.add_argument("--window", type=int, default=None)
    subparsers["orbits"] = p

    p = subs.add_parser("ktheory", parents=[common],
                        help="summand expressions, presets, refusals")
    p.add_argument("--preset",
                   help="report preset: "
                        + ", ".join(sorted(ktheory_mod.PRESET_REPORTS)))
    p.add_argument("--from", dest="from_file", metavar="FILE",
                   help="orbit report JSON produced by the orbits "
                        "subcommand")
    p.add_argument("--example",
                   help="bundled action: "
                        + ", ".join(sorted(paction_mod.ACTION_EXAMPLES)))
    p.add_argument("-k", type=int, default=None)
    p.add_argument("-l", type=int, default=None)
    p.add_argument("--letters")
    p.add_argument("-u")
    p.add_argument("-v")
    p.add_argument("--size", help="alphabet size for the boundary preset "
                                  "(integer or 'infinite')")
    p.add_argument("--generators", help="numerical generators, e.g. '2,3'")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--coxeter")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--route", choices=sorted(ktheory_mod.ROUTES))
    subparsers["ktheory"] = p

    p = subs.add_parser("tiling", parents=[common],
                        help="point-set windows: patch classes and "
                             "K-theory")
    p.add_argument("--points", help="window points: '0,1,2' or '0,0; 1,0'")
    p.add_argument("--adjacency", metavar="FILE",
                   help="connectivity pairs, one per line: '0 1' or "
                        "'0,0 1,0'")
    p.add_argument("--cap", type=int, default=None,
                   help="patch-enumeration size cap (default 20)")
    subparsers["tiling"] = p

    return parser, subparsers


def _config_echo(args) -> dict:
    """The effective run configuration; excludes the output path (it does
    not influence the computation) so reruns elsewhere compare equal."""
    skip = {"out", "config_text"}
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        echo[key] = _jsonable(value)
    if getattr(args, "config_text", None) is not None:
        echo["config_directives"] = parse_directives(args.config_text)
    return echo


def envelope(args, payload, status) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "invhull", "version": __version__},
        "subcommand": args.subcommand,
        "config": _config_echo(args),
        "status": status,
        "timing_policy": TIMING_POLICY,
        "report": payload,
    }


def _emit(args, doc) -> str:
    text = canonical_json(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return args.out
    sys.stdout.write(text)
    return "stdout"


def run(args) -> int:
    """Dispatch one parsed run; returns the process exit code."""
    start = time.monotonic()
    try:
        payload, status = RUNNERS[args.subcommand](args)
        code = 0
    except (BudgetExceeded, SizeLimit) as exc:
        payload = {"error": type(exc).__name__,
                   "detail": str(exc) or repr(exc.args),
                   "partial": {"note": "the run stopped at the configured "
                                       "cap; results above are absent"}}
        if isinstance(exc, BudgetExceeded):
            payload["partial"]["units_reached"] = exc.units
            payload["partial"]["cap"] = exc.cap
        status, code = "budget-exceeded", 3
    dest = _emit(args, envelope(args, payload, status))
    took = time.monotonic() - start
    print(f"invhull {args.subcommand}: {status} in {took:.2f} s -> {dest}",
          file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser, subparsers = build_parser()
    args = parser.parse_args(argv)
    if not args.subcommand:
        parser.print_help(file=sys.stderr)
        return 2
    args.config_text = None
    try:
        merge_config(args, subparsers[args.subcommand])
        if args.threads is None:
            args.threads = 1
        if args.threads < 1:
            raise ConfigError("--threads must be positive")
        return run(args)
    except ConfigError as exc:
        print(f"invhull: config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # tool failure, not a mathematical verdict
        print(f"invhull: error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
