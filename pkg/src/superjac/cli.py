"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 family outside the supported regime.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import curve, divisor, modrep, multanalysis, suite
from .errors import InconclusiveError, RegimeError, ValidationError, VerificationError

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_REGIME = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    p: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None
    m: Optional[int] = None
    poly: Optional[str] = None
    galois: Optional[str] = None
    fmt: str = "text"
    seed: int = 0
    q_max: int = suite.DEFAULT_Q_MAX
    n_max: int = suite.DEFAULT_N_MAX
    jobs: int = 1
    n: Optional[int] = None
    group: str = "S"
    r_max: Optional[int] = None


def read_polynomial(path: str) -> list:
    """One line of ascending coefficients, each an integer or a fraction a/b."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        raise ValidationError(f"cannot read polynomial file: {exc}") from exc
    if len(lines) != 1:
        raise ValidationError("polynomial file must contain exactly one line")
    try:
        return [Fraction(tok) for tok in lines[0].split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad coefficient in polynomial file: {exc}") from exc


def family_of(cfg: RunConfig) -> curve.CurveFamily:
    if cfg.poly is not None:
        if cfg.s is not None or cfg.m is not None:
            raise ValidationError("give either --poly or --s/--m, not both")
        if cfg.p is None or cfg.r is None:
            raise ValidationError("--poly needs --p and --r")
        return curve.family_from_polynomial(read_polynomial(cfg.poly), cfg.p, cfg.r)
    missing = [k for k in ("p", "r", "s", "m") if getattr(cfg, k) is None]
    if missing:
        raise ValidationError("missing " + ", ".join("--" + k for k in missing))
    return curve.make_family(cfg.p, cfg.r, cfg.s, cfg.m)


# --------------------------------------------------------------------------
# commands: each returns (report dict, text lines, exit code)


def cmd_invariants(cfg):
    F = family_of(cfg)
    prof = curve.multiplicity_profile(F)
    rep = {
        "family": F.as_dict(),
        "genus": curve.genus(F),
        "infinity_points": F.infinity_count,
        "basis_size": len(curve.differential_basis(F)),
        "profile": {str(i): v for i, v in prof.values},
        "d": curve.d_invariant(F),
    }
    text = [f"family p={F.p} r={F.r} s={F.s} m={F.m} (q={F.q}, n={F.n})",
            f"genus {rep['genus']}",
            f"infinity points {rep['infinity_points']}",
            f"differential basis size {rep['basis_size']}",
            "profile " + " ".join(f"n_{i}={v}" for i, v in prof.values),
            f"d(n,q) {rep['d']}"]
    return rep, text, EXIT_OK


def cmd_decompose(cfg):
    F = family_of(cfg)
    levels = curve.dimension_decomposition(F)
    total = sum(d for _, d in levels)
    rep = {"family": F.as_dict(), "levels": [{"level": i, "q": F.p**i, "dimension": d} for i, d in levels],
           "total": total, "genus": curve.genus(F)}
    text = [f"level {i} (q={F.p**i}): dimension {d}" for i, d in levels]
    text.append(f"total {total}, genus {rep['genus']}")
    return rep, text, EXIT_OK if total == rep["genus"] else EXIT_VERIFY


def cmd_picard(cfg):
    F = family_of(cfg)
    pic = divisor.picard_structure(F)
    rep = {"family": F.as_dict(), "picard": pic.as_dict(), "lattices_agree": divisor.lattices_agree(F)}
    text = [f"Pic^0_B = {pic.group}", f"p-rank {pic.p_rank}",
            f"congruence and explicit-function lattices agree: {rep['lattices_agree']}"]
    ok = rep["lattices_agree"]
    if 0 < F.s < F.r:
        D = divisor.build_D_classes(F)
        pim = divisor.pi_matrix_and_kernel(F)
        rows = []
        for i, Di in enumerate(D, start=1):
            closed = Di == divisor.D_class_closed_form(F, i)
            order_p = divisor.has_order_exactly_p(F, Di)
            ok = ok and closed and order_p
            rows.append({"i": i, "branch_vector": Di.branch_vector(), "closed_form": closed,
                         "order_p": order_p})
            text.append(f"D_{i} = {Di.branch_vector()} closed form {closed}, order p {order_p}")
        rep["D"] = rows
        rep["pi"] = {"rank": pim.rank, "kernel": [list(v) for v in pim.kernel]}
        text.append(f"pi rank {pim.rank}, kernel {[list(v) for v in pim.kernel]}")
        ok = ok and pim.rank == F.n - 1
    return rep, text, EXIT_OK if ok else EXIT_VERIFY


def cmd_commutant(cfg):
    if cfg.n is None or cfg.p is None:
        raise ValidationError("commutant needs --n and --p")
    crep = modrep.verify_scalar_commutant(cfg.n, cfg.p, cfg.group, seed=cfg.seed)
    rep = crep.as_dict()
    text = [f"group {crep.label} on {cfg.n} points over F_{cfg.p}",
            f"commutant dimension of V: {crep.commutant_V}",
            f"commutant dimension of W: {crep.commutant_W}",
            f"W simple: {crep.W_simple}",
            f"doubly transitive: {crep.doubly_transitive}"]
    return rep, text, EXIT_OK if crep.passed else EXIT_VERIFY


def cmd_symmetry(cfg):
    rep, text, ok = {}, [], True
    if cfg.p is not None and cfg.r_max is not None:
        sym = multanalysis.verify_forced_constancy(cfg.p, cfg.r_max)
        rep["constancy"] = sym.as_dict()
        text.append(f"p={cfg.p}, r<={cfg.r_max}: {sym.cases} cases, {sym.fully_constant} fully constant, "
                    f"{len(sym.counterexamples)} failures")
        for q, k, classes in sym.sharp_cases:
            text.append(f"  q={q} k={k}: {len(classes)} constancy classes (witness validated)")
        ok = sym.passed
    if cfg.s is not None or cfg.poly is not None:
        F = family_of(cfg)
        mult = multanalysis.invariant_multipliers(curve.multiplicity_profile(F), F.p)
        rep["family"] = F.as_dict()
        rep["invariant_multipliers"] = sorted(mult)
        text.append(f"invariant multipliers {sorted(mult)}")
    if not rep:
        raise ValidationError("symmetry needs --p with --rmax, or a family")
    return rep, text, EXIT_OK if ok else EXIT_VERIFY


def cmd_verdict(cfg):
    F = family_of(cfg)
    if cfg.galois is None:
        raise ValidationError("verdict needs --galois S|A")
    cert = multanalysis.endomorphism_certificate(F, cfg.galois, seed=cfg.seed)
    rep = cert.as_dict()
    text = [f"family p={F.p} r={F.r} s={F.s} m={F.m}, Galois group {cert.galois_label}"]
    for c in cert.checks:
        lv = f" [level {c.level}]" if c.level is not None else ""
        src = f" ({c.source})" if c.source else ""
        text.append(f"  {c.status:9s} {c.claim}{lv}: {c.detail}{src}")
    for lv in cert.conclusion["levels"]:
        text.append(f"level {lv['level']}: dim {lv['dimension']}, End^0 = {lv['endomorphism_algebra']}, "
                    f"End = {lv['endomorphism_ring']}")
    text.append(f"End^0(J) = {cert.conclusion['algebra']}")
    return rep, text, EXIT_OK


def cmd_verify_all(cfg):
    results = suite.run_all(cfg.q_max, cfg.n_max, seed=cfg.seed, jobs=cfg.jobs)
    passed = sum(r.passed for r in results)
    rep = {"q_max": cfg.q_max, "n_max": cfg.n_max, "seed": cfg.seed,
           "criteria": [r.as_dict() for r in results], "passed": passed, "failed": len(results) - passed}
    text = [f"{'PASS' if r.passed else 'FAIL'} {r.number} {r.name}: {r.checked} checked, {r.detail}"
            for r in results]
    text.append(f"{passed}/{len(results)} criteria passed")
    return rep, text, EXIT_OK if passed == len(results) else EXIT_VERIFY


COMMANDS = {
    "invariants": cmd_invariants,
    "decompose": cmd_decompose,
    "picard": cmd_picard,
    "commutant": cmd_commutant,
    "symmetry": cmd_symmetry,
    "verdict": cmd_verdict,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superjac", description="Invariants and endomorphism "
                                 "certificates for superelliptic Jacobians y^q = f(x).")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    fam = argparse.ArgumentParser(add_help=False)
    for k in ("p", "r", "s", "m"):
        fam.add_argument(f"--{k}", type=int)
    fam.add_argument("--poly", metavar="FILE", help="one line of ascending coefficients a/b")
    for name in ("invariants", "decompose", "picard"):
        sub.add_parser(name, parents=[common, fam])
    v = sub.add_parser("verdict", parents=[common, fam])
    v.add_argument("--galois", choices=("S", "A", modrep.SYMMETRIC, modrep.ALTERNATING))
    c = sub.add_parser("commutant", parents=[common])
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--group", choices=("S", "A", modrep.SYMMETRIC, modrep.ALTERNATING), default="S")
    sy = sub.add_parser("symmetry", parents=[common, fam])
    sy.add_argument("--rmax", dest="r_max", type=int)
    va = sub.add_parser("verify-all", parents=[common])
    va.add_argument("--qmax", dest="q_max", type=int, default=suite.DEFAULT_Q_MAX)
    va.add_argument("--nmax", dest="n_max", type=int, default=suite.DEFAULT_N_MAX)
    va.add_argument("--jobs", type=int, default=1)
    return ap


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    env = os.environ.get("SUPERJAC_SEED")
    if env is not None:
        try:
            cfg.seed = int(env)
        except ValueError as exc:
            raise ValidationError(f"SUPERJAC_SEED must be an integer, got {env!r}") from exc
    for k in ("q_max", "n_max", "jobs"):
        if getattr(cfg, k) < 1:
            raise ValidationError(f"--{k.replace('_', '')} must be positive")
    return cfg


def render(rep: dict, text: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, sort_keys=True, indent=2)
    return "\n".join(text)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code else EXIT_OK
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        rep, text, code = COMMANDS[cfg.command](cfg)
    except RegimeError as exc:
        print(f"regime error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerificationError, InconclusiveError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    print(render(rep, text, cfg.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
