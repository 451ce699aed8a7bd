"""Command-line front end: validate -> classify -> plan -> simulate -> share.

Exit codes: 0 ok, 1 a check failed, 2 input error, 3 resource cap exceeded.
Structured output is canonical JSON (sorted keys, fixed separators), so
identical inputs and seed produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import classical, code as code_mod, infogroup, oracle, twirl
from .code import CodeFileError, CodeValidationError, StabilizerCode
from .pauli import ResourceLimitError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

CHECK_NAMES = ("all", "concealment", "choi", "infogroup", "duality")


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    size_param: int | None = None
    subset: tuple[int, ...] | None = None
    seed: int | None = None
    fmt: str = "text"
    cap: int | None = None
    check: str = "all"
    detect_tol: float = oracle.DETECTION_TOL
    state_tol: float = oracle.STATE_TOL
    q: int | None = None
    players: int | None = None
    modulus: int | None = None
    key: tuple[int, ...] | None = None
    from_plan: bool = False
    out: str | None = None


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]) -> None:
    if cfg.fmt == "structured":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _load_code(cfg: RunConfig) -> StabilizerCode:
    source = cfg.source
    if source is None:
        raise ValueError("no input source given")
    if source.startswith("catalog:"):
        name = source[len("catalog:"):]
        return code_mod.catalog(name, cfg.size_param)
    return code_mod.load(source)


def _parse_subset(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(v) for v in text.split(",") if v.strip()}))
    except ValueError as exc:
        raise ValueError(f"bad subset {text!r}: expected e.g. 1,3,4") from exc


def _code_label(c: StabilizerCode, delta: int | None) -> str:
    mid = f"[[{c.n},{c.k},{delta}]]" if delta is not None else f"[[{c.n},{c.k}]]"
    return f"{mid}_{c.d}"


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------

def cmd_validate(cfg: RunConfig) -> int:
    c = _load_code(cfg)
    report = code_mod.validate(c)
    delta = None
    if report.is_valid:
        try:
            delta = code_mod.distance(c)
        except ResourceLimitError:
            delta = None
    payload = {"name": c.name, "D": c.d, "n": c.n, "k": c.k,
               "distance": delta, **report.to_dict()}
    lines = []
    if report.is_valid:
        lines.append(f"valid {_code_label(c, delta)} ({c.name})")
    else:
        lines.append(f"INVALID {c.name}:")
        lines.extend(f"  - {v}" for v in report.violations)
    lines.extend(f"note: {t}" for t in report.notes)
    _emit(cfg, payload, lines)
    return EXIT_OK if report.is_valid else EXIT_CHECK_FAILED


def _triplet_summary(triplet: infogroup.SchemeTriplet) -> str:
    q = infogroup.threshold_q(triplet)
    if not triplet.intermediate:
        if q is not None:
            return f"threshold ({q},{triplet.n})"
        return "perfect (non-threshold access structure)"
    sizes = sorted({len(s) for s in triplet.intermediate})
    return (f"ramp: authorized {len(triplet.authorized)}, forbidden "
            f"{len(triplet.forbidden)}, intermediate {len(triplet.intermediate)} "
            f"(sizes {sizes})")


def cmd_classify(cfg: RunConfig) -> int:
    c = _load_code(cfg)
    if cfg.subset is not None:
        g = infogroup.info_group(c, cfg.subset)
        cls = "A" if g.is_full else ("F" if g.is_trivial else "I")
        form = infogroup.canonical_form(g)
        payload = {"code": c.name, "subset": list(cfg.subset), "class": cls,
                   "r": form.r, "s": form.s,
                   "generators": [list(row) for row in g.generators]}
        _emit(cfg, payload, [
            f"{c.name} subset {list(cfg.subset)}: class {cls}, "
            f"r={form.r}, s={form.s}"])
        return EXIT_OK
    triplet = infogroup.classify(c)
    payload = {"code": c.name, "summary": _triplet_summary(triplet),
               **triplet.to_dict()}
    lines = [f"{c.name}: {_triplet_summary(triplet)}"]
    if triplet.records is not None:
        for rec in triplet.records:
            lines.append(
                f"  {list(rec.subset)!s:<24} {rec.cls}  r={rec.r} s={rec.s}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def _plan_text(c: StabilizerCode, plan: twirl.TwirlPlan) -> list[str]:
    if plan.is_empty:
        return [f"{c.name}: no twirl needed (I empty)"]
    gens = ", ".join(str(g) for g in plan.twirl_generators)
    q = plan.prescription.threshold_q
    if q is not None:
        scheme = f"Shamir ({q},{plan.prescription.n})"
    else:
        scheme = "monotone over minimal authorized sets"
    return [f"{c.name}: twirl = <{gens}>, l = {plan.key_length} "
            f"(r={plan.canonical.r}, s={plan.canonical.s}), "
            f"classical scheme: {scheme}"]


def cmd_twirl_plan(cfg: RunConfig) -> int:
    c = _load_code(cfg)
    plan = twirl.twirl_plan(c)
    payload = {"code": c.name, **plan.to_dict()}
    _emit(cfg, payload, _plan_text(c, plan))
    return EXIT_OK


def _simulation_secrets(c: StabilizerCode, seed: int) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    secrets = [oracle.basis_secret(c.d, c.k, j)
               for j in range(min(c.d**c.k, 2))]
    secrets += [oracle.random_secret(c.d, c.k, rng) for _ in range(5)]
    return secrets


def run_checks(c: StabilizerCode, seed: int, which: str,
               cap: int | None = None,
               detect_tol: float = oracle.DETECTION_TOL,
               state_tol: float = oracle.STATE_TOL) -> tuple[bool, list[dict]]:
    """Run the selected oracle verifications; returns (all_passed, records)."""
    results: list[dict] = []

    def add(name, passed, measured=None, detail=None):
        rec = {"check": name, "pass": bool(passed)}
        if measured is not None:
            rec["measured"] = float(measured)
        if detail:
            rec["detail"] = detail
        results.append(rec)

    report = code_mod.validate(c)
    add("validate", report.is_valid,
        detail="; ".join(report.violations) if report.violations else "valid")
    if not report.is_valid:
        return False, results

    triplet = infogroup.classify(c)
    add("duality", True, detail="access/forbidden duality holds")

    if which in ("all", "duality"):
        auth = set(triplet.authorized)
        forb = set(triplet.forbidden)
        ok = True
        for s in auth:
            for extra in range(1, c.n + 1):
                if extra not in s and tuple(sorted(set(s) | {extra})) not in auth:
                    ok = False
        for s in forb:
            for drop in s:
                if tuple(sorted(set(s) - {drop})) not in forb:
                    ok = False
        add("monotonicity", ok)

    if which in ("all", "infogroup"):
        mismatches = []
        for subset in infogroup.subsets_in_order(c.n):
            symbolic = infogroup.info_group(c, subset)
            brute = oracle.info_group_bruteforce(c, subset, cap=cap,
                                                 tol=detect_tol)
            if symbolic.generators != brute.generators:
                mismatches.append(subset)
        add("infogroup", not mismatches,
            detail=f"{2**c.n} subsets compared" if not mismatches
            else f"mismatch at {mismatches[:3]}")

    if which in ("all", "choi"):
        forb = set(triplet.forbidden)
        worst = 0.0
        ok = True
        for subset in infogroup.subsets_in_order(c.n):
            dec = oracle.choi_decoupling(c, subset, cap=cap)
            decoupled = dec <= 1e-9
            if decoupled != (subset in forb):
                ok = False
            if subset in forb:
                worst = max(worst, dec)
        add("choi", ok, measured=worst,
            detail="reference decouples exactly from the forbidden structure")

    plan = twirl.twirl_plan(c, triplet)
    if which in ("all", "concealment") and not plan.is_empty:
        secrets = _simulation_secrets(c, seed)
        worst = 0.0
        for subset in triplet.intermediate:
            worst = max(worst, oracle.verify_concealment(
                c, plan, secrets, subset, cap=cap))
        add("concealment", worst < state_tol, measured=worst,
            detail=f"{len(triplet.intermediate)} intermediate subsets, "
                   f"{len(secrets)} secrets")

    if which == "all":
        secrets = _simulation_secrets(c, seed)
        if triplet.forbidden:
            worst = max(oracle.verify_absence(c, subset, secrets, cap=cap)
                        for subset in triplet.forbidden)
            add("absence", worst < state_tol, measured=worst)
        worst = max(oracle.expansion_consistency(c, secrets[-1], subset, cap=cap)
                    for subset in list(infogroup.subsets_in_order(c.n))[:4])
        add("expansion", worst < state_tol, measured=worst)

        if not plan.is_empty:
            key, operator = twirl.sample_twirl(plan, seed)
            shares = classical.key_transport(plan, triplet, seed)
            target = triplet.minimal_authorized[0]
            recovered = classical.reconstruct(shares, target)
            add("key_reconstruction", recovered == list(key),
                detail=f"authorized set {list(target)} recovers the key")
            # A known twirl key must leave the channel to an authorized set
            # perfect: its complement stays decoupled from the reference.
            rest = infogroup.complement(target, c.n)
            dec = oracle.choi_decoupling(c, rest, pre_operator=operator,
                                         cap=cap)
            purity, defect = oracle.choi_check(
                c, tuple(range(1, c.n + 1)), pre_operator=operator, cap=cap)
            add("keyed_recovery",
                dec <= 1e-9 and abs(purity - 1.0) <= 1e-9 and defect <= 1e-9,
                measured=dec,
                detail="known twirl key leaves the channel perfect")

    return all(r["pass"] for r in results), results


def cmd_simulate(cfg: RunConfig) -> int:
    c = _load_code(cfg)
    passed, results = run_checks(c, cfg.seed, cfg.check, cap=cfg.cap,
                                 detect_tol=cfg.detect_tol,
                                 state_tol=cfg.state_tol)
    payload = {"code": c.name, "seed": cfg.seed, "check": cfg.check,
               "passed": passed, "results": results}
    lines = [f"{c.name} simulate --check {cfg.check} (seed {cfg.seed})"]
    for rec in results:
        status = "pass" if rec["pass"] else "FAIL"
        extra = ""
        if "measured" in rec:
            extra = f" measured={rec['measured']:.3e}"
        if rec.get("detail"):
            extra += f" ({rec['detail']})"
        lines.append(f"  [{status}] {rec['check']}{extra}")
    lines.append("all checks passed" if passed else "SOME CHECKS FAILED")
    _emit(cfg, payload, lines)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def cmd_share_key(cfg: RunConfig) -> int:
    if cfg.from_plan:
        c = _load_code(cfg)
        triplet = infogroup.classify(c)
        plan = twirl.twirl_plan(c, triplet)
        if plan.is_empty:
            raise ValueError(
                f"{c.name} has no intermediate structure; no key to share")
        shares = classical.key_transport(plan, triplet, cfg.seed)
    else:
        missing = [flag for flag, v in
                   (("--q", cfg.q), ("--n", cfg.players), ("--P", cfg.modulus),
                    ("--key", cfg.key)) if v is None]
        if missing:
            raise ValueError(
                "explicit sharing needs " + ", ".join(missing))
        shares = classical.shamir_share(cfg.key, cfg.q, cfg.players,
                                        cfg.modulus, cfg.seed)
    payload = shares.to_dict()
    text = [f"{shares.kind} sharing over Z_{shares.modulus}, "
            f"{shares.key_length} digit(s), {shares.n} players"
            + (f", q={shares.q}" if shares.q else "")]
    for player, values in sorted(shares.shares.items()):
        text.append(f"  player {player}: {list(values)}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True,
                                separators=(",", ":")) + "\n")
        text.append(f"wrote {cfg.out}")
        _emit(cfg, {"written": cfg.out, **payload}, text)
    else:
        _emit(cfg, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabshare",
        description="Secret-sharing structure of qudit stabilizer codes")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_required=False):
        p.add_argument("source", help="code file path or catalog:NAME")
        p.add_argument("--n", type=int, default=None, dest="size_param",
                       help="size parameter for catalog:ghz_n")
        p.add_argument("--format", choices=("text", "structured"),
                       default="text")
        p.add_argument("--cap", type=int, default=None,
                       help="amplitude cap for dense objects")
        p.add_argument("--seed", type=int, required=seed_required,
                       default=None)

    p = sub.add_parser("validate", help="check the stabilizer invariants")
    common(p)

    p = sub.add_parser("classify", help="compute the (A, F, I) triplet")
    common(p)
    p.add_argument("--subset", type=str, default=None,
                   help="report a single subset, e.g. 1,3,4")

    p = sub.add_parser("twirl-plan", help="derive the minimal twirl and key")
    common(p)

    p = sub.add_parser("simulate", help="run oracle verifications end to end")
    common(p, seed_required=True)
    p.add_argument("--check", choices=CHECK_NAMES, default="all")
    p.add_argument("--trace-tol", type=float, default=oracle.DETECTION_TOL,
                   help="nonzero-trace detection tolerance")
    p.add_argument("--state-tol", type=float, default=oracle.STATE_TOL,
                   help="state equality tolerance")

    p = sub.add_parser("share-key", help="share a key classically")
    p.add_argument("--from-plan", type=str, default=None, metavar="SOURCE",
                   help="derive the key and scheme from a code's twirl plan")
    p.add_argument("--n", type=int, default=None,
                   help="player count (explicit mode) or ghz_n size")
    p.add_argument("--q", type=int, default=None, help="threshold")
    p.add_argument("--P", type=int, default=None, help="share field modulus")
    p.add_argument("--key", type=str, default=None,
                   help="comma-separated key digits")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", type=str, default=None,
                   help="write the share bundle to a file")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.fmt = getattr(args, "format", "text")
    cfg.seed = getattr(args, "seed", None)
    cfg.cap = getattr(args, "cap", None)
    if args.command == "share-key":
        cfg.from_plan = args.from_plan is not None
        cfg.source = args.from_plan
        cfg.size_param = args.n
        cfg.players = args.n
        cfg.q = args.q
        cfg.modulus = args.P
        cfg.key = (tuple(int(v) for v in args.key.split(","))
                   if args.key else None)
        cfg.out = args.out
        return cfg
    cfg.source = args.source
    cfg.size_param = args.size_param
    if getattr(args, "subset", None):
        cfg.subset = _parse_subset(args.subset)
    if args.command == "simulate":
        cfg.check = args.check
        cfg.detect_tol = args.trace_tol
        cfg.state_tol = args.state_tol
    return cfg


_DISPATCH = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "twirl-plan": cmd_twirl_plan,
    "simulate": cmd_simulate,
    "share-key": cmd_share_key,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _DISPATCH[args.command](cfg)
    except ResourceLimitError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (CodeFileError, CodeValidationError, FileNotFoundError,
            ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
