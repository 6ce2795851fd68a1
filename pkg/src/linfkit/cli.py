"""Command line batch driver.

Every subcommand reads JSON, writes a JSON report (stdout or ``--out``) and
exits with 0 on success, 1 on a mathematical failure (the report carries a
witness) and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arith import as_rational, bernoulli, format_rational, phi_coeff
from .coalgebra import lift_to_coderivation, words
from .comoment import (
    ActionData, ComomentCandidate, check_cocycle, comoment_discrepancy, comoment_from_potential,
    comoment_morphism, equivariance_report, euler_potential, gauge_shift_comoment, induced_comoment,
    lie_kernel_comoment, obstruction_cocycle, pentagon_report, verify_comoment,
)
from .linfty import LInftyMorphism, LInftyStructure, check_linfty, check_morphism
from .multisymplectic import MssSpace, phi_morphism, rogers_structure, vinogradov_structure
from .nr import TableMap
from .polyforms import PolyField, PolyForm, volume_form

PASS, FAIL, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


# --- input helpers --------------------------------------------------------------------------

def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _resolve(value, base: Path):
    """Inline objects pass through; strings are paths relative to the referring file."""
    if isinstance(value, str):
        return _load(str(base / value))
    return value


def _instance(cfg: dict, base: Path, poly_degree: int | None) -> MssSpace:
    data = _resolve(cfg["instance"], base) if "instance" in cfg else cfg
    M = MssSpace.from_json(data)
    if poly_degree is not None:
        M.D = poly_degree
    return M


def _phi_overrides(cfg: dict, extra: list[str] | None) -> dict:
    out = {int(k): as_rational(v) for k, v in cfg.get("phi", {}).items()}
    for item in extra or []:
        k, _, v = item.partition("=")
        if not v:
            raise InputError(f"--phi expects K=VALUE, got {item!r}")
        out[int(k)] = as_rational(v)
    return out


def _action(cfg: dict, base: Path) -> ActionData:
    if "action" not in cfg:
        raise InputError("config needs an 'action'")
    return ActionData.from_json(_resolve(cfg["action"], base))


def _comoment(cfg: dict, base: Path, A: ActionData, M: MssSpace) -> ComomentCandidate:
    if "comoment" in cfg:
        return ComomentCandidate.from_json(A, M.n, _resolve(cfg["comoment"], base))
    if "potential" in cfg:
        alpha = PolyForm.from_json(_resolve(cfg["potential"], base))
    elif M.omega == volume_form(M.N):
        alpha = euler_potential(M.N)
    else:
        raise InputError("config needs a 'comoment' or 'potential' unless omega is the volume form")
    return comoment_from_potential(alpha, A, M)


def _form(cfg: dict, key: str, base: Path, M: MssSpace) -> PolyForm:
    if key not in cfg:
        raise InputError(f"config needs {key!r}")
    if cfg[key] == "euler":
        return volume_form(M.N).iota(PolyField.euler(M.N))
    return PolyForm.from_json(_resolve(cfg[key], base))


# --- report helpers -------------------------------------------------------------------------

def _failures(check) -> list:
    f = check.failure
    if not f:
        return []
    return [{"arity": f["arity"], "tuple": f["inputs"], "residual": f["value"]}]


def _check_block(check) -> dict:
    return {"status": "pass" if check.passed else "fail",
            "checked_arities": sorted(int(k) for k in check.checked),
            "checked": {str(k): v for k, v in sorted(check.checked.items())},
            "mode": check.mode, "failures": _failures(check)}


def _config_block(args) -> dict:
    keys = ("max_arity", "trunc", "poly_degree", "samples", "seed")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _emit(report: dict, args) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- subcommands ----------------------------------------------------------------------------

def run_check_linfty(args) -> int:
    cfg = _load(args.input)
    base = Path(args.input).parent
    report = {"command": "check-linfty", "config": _config_block(args)}
    if "brackets" in cfg:
        mu = LInftyStructure.from_json(cfg)
        top = args.max_arity or max(1, 2 * mu.max_arity - 1)
        corpus = None
        report["structure"] = "bundle"
    else:
        M = _instance(cfg, base, args.poly_degree)
        kind = cfg.get("structure", args.structure)
        if kind == "vinogradov":
            mu = vinogradov_structure(M)
            top = args.max_arity or M.n + 2
        else:
            mu = rogers_structure(M)
            top = args.max_arity or M.n + 2
        corpus = M.hamiltonian_corpus()
        report["structure"] = kind
    check = check_linfty(mu, top, corpus, args.samples, args.seed)
    report.update(_check_block(check))
    ok = check.passed
    if args.trunc and "brackets" in cfg:
        ok_q, witness = _coderivation_square(mu, args.trunc)
        report["coderivation"] = {"status": "pass" if ok_q else "fail", "trunc": args.trunc,
                                  "failure": witness}
        ok = ok and ok_q
    report["status"] = "pass" if ok else "fail"
    _emit(report, args)
    return PASS if ok else FAIL


def _coderivation_square(mu: LInftyStructure, trunc: int):
    """``Q o Q = 0`` on all words up to ``trunc`` for the lifted symmetric brackets."""
    sym = mu.to_sym()
    Q = lift_to_coderivation({k: m for k, m in sym.brackets.items() if k <= trunc}, sym.space, trunc)
    for w in words(sym.space, trunc):
        val = Q(Q.on_word(w))
        if val:
            return False, {"word": list(w),
                           "value": [[list(k), format_rational(v)] for k, v in sorted(val.items())]}
    return True, None


def _morphism_bundle(cfg: dict, base: Path) -> LInftyMorphism:
    src = LInftyStructure.from_json(_resolve(cfg["source"], base))
    tgt = LInftyStructure.from_json(_resolve(cfg["target"], base))
    comps = {int(k): TableMap.from_json(v, src.space, tgt.space, name=f"f{k}")
             for k, v in cfg["components"].items()}
    return LInftyMorphism(src, tgt, comps)


def run_check_morphism(args) -> int:
    cfg = _load(args.input)
    base = Path(args.input).parent
    report = {"command": "check-morphism", "config": _config_block(args)}
    if "components" in cfg:
        f = _morphism_bundle(cfg, base)
        top = args.max_arity or max(f.components, default=1) + 1
        corpus = None
        report["morphism"] = "bundle"
    else:
        M = _instance(cfg, base, args.poly_degree)
        overrides = _phi_overrides(cfg, args.phi)
        top = args.max_arity or M.n + 1
        f = phi_morphism(M, max(top, M.n + 1), overrides)
        corpus = M.hamiltonian_corpus()
        report["morphism"] = "phi"
        report["phi"] = {str(k): format_rational(phi_coeff(k) if k not in overrides else overrides[k])
                         for k in range(1, max(top, M.n + 1) + 1)}
    check = check_morphism(f, top, corpus, args.samples, args.seed)
    report.update(_check_block(check))
    _emit(report, args)
    return PASS if check.passed else FAIL


def run_comoment(args) -> int:
    cfg = _load(args.input)
    base = Path(args.input).parent
    M = _instance(cfg, base, args.poly_degree)
    A = _action(cfg, base)
    f = _comoment(cfg, base, A, M)
    report = {"command": "comoment", "config": _config_block(args), "comoment": f.to_json()}
    ok = True

    v = verify_comoment(f, A, M)
    report["verify"] = v.to_json()
    ok &= v.passed
    report["equivariance"] = equivariance_report(f, A).to_json()

    m = check_morphism(comoment_morphism(f, A, M), args.max_arity or M.n + 1, None, args.samples, args.seed)
    report["morphism"] = _check_block(m)
    report["checkers_agree"] = m.passed == v.passed

    if "B" in cfg:
        ft, M2 = gauge_shift_comoment(f, _form(cfg, "B", base, M), A, M)
        g = verify_comoment(ft, A, M2)
        report["gauge"] = {"verify": g.to_json(), "comoment": ft.to_json()}
        ok &= g.passed

    if "induced" in cfg:
        ind = cfg["induced"]
        mode = ind.get("mode")
        data = ind.get("data")
        if mode == "lie-kernel":
            data = {tuple(k.split(",")): as_rational(c) for k, c in data.items()}
            c, act, Mi, alt = lie_kernel_comoment(f, A, M, data)
            extra = {"alternative_discrepancy": {str(k): v for k, v in comoment_discrepancy(c, alt).items()}}
        elif mode == "subalgebra":
            data = {l: {g: as_rational(x) for g, x in el.items()} for l, el in data.items()}
            c, act, Mi = induced_comoment(mode, f, A, M, data)
            extra = {}
        else:
            c, act, Mi = induced_comoment(mode, f, A, M, data)
            extra = {}
        iv = verify_comoment(c, act, Mi)
        report["induced"] = {"mode": mode, "verify": iv.to_json(), "comoment": c.to_json(),
                             "algebra": act.algebra.to_json(), **extra}
        ok &= iv.passed

    if "point" in cfg:
        cocycle = obstruction_cocycle(A, M, cfg["point"])
        cc = check_cocycle(A.algebra, cocycle, M.n + 1)
        report["obstruction"] = {
            "cocycle": {",".join(k): format_rational(v) for k, v in sorted(cocycle.items())},
            "check": cc.to_json()}
        ok &= cc.passed

    report["status"] = "pass" if ok else "fail"
    _emit(report, args)
    return PASS if ok else FAIL


def run_pentagon(args) -> int:
    cfg = _load(args.input)
    base = Path(args.input).parent
    M = _instance(cfg, base, args.poly_degree)
    A = _action(cfg, base)
    f = _comoment(cfg, base, A, M)
    B = _form(cfg, "B", base, M)
    overrides = _phi_overrides(cfg, args.phi)
    top = args.max_arity or M.n + 1
    check = pentagon_report(M, B, f, A, top, overrides)
    report = {"command": "pentagon", "config": _config_block(args), **_check_block(check)}
    if overrides:
        report["phi_overrides"] = {str(k): format_rational(v) for k, v in sorted(overrides.items())}
    _emit(report, args)
    return PASS if check.passed else FAIL


def run_tables(args) -> int:
    K = args.count if args.count is not None else 10
    if K < 0:
        raise InputError("--count must be non-negative")
    bern = [format_rational(bernoulli(k)) for k in range(K + 1)]
    phis = [format_rational(phi_coeff(k)) for k in range(1, max(K, 1) + 1)]
    if args.text:
        lines = ["k  B_k  phi_k"]
        for k in range(max(K + 1, len(phis) + 1)):
            b = bern[k] if k < len(bern) else ""
            p = phis[k - 1] if 1 <= k <= len(phis) else ""
            lines.append(f"{k}  {b}  {p}")
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    else:
        _emit({"command": "tables", "count": K, "bernoulli": bern, "phi": phis}, args)
    return PASS


# --- entry point ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-arity", type=int, help="highest arity to check")
    common.add_argument("--trunc", type=int, help="coalgebra truncation for coderivation checks")
    common.add_argument("--poly-degree", type=int, help="polynomial degree bound D for the corpus")
    common.add_argument("--samples", type=int, help="force seeded sampling with this many tuples")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="linfkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-linfty", parents=[common], help="verify the higher Jacobi identities")
    p.add_argument("input", help="L-infinity bundle or multisymplectic instance (JSON)")
    p.add_argument("--structure", choices=["rogers", "vinogradov"], default="rogers",
                   help="structure built from an instance (default rogers)")
    p.set_defaults(run=run_check_linfty)

    p = sub.add_parser("check-morphism", parents=[common], help="verify an L-infinity morphism")
    p.add_argument("input", help="morphism bundle or instance (checks the embedding Phi)")
    p.add_argument("--phi", action="append", metavar="K=VALUE", help="override a Phi coefficient")
    p.set_defaults(run=run_check_morphism)

    p = sub.add_parser("comoment", parents=[common], help="verify a homotopy comoment map")
    p.add_argument("input", help="comoment job (instance, action, potential or comoment, ...)")
    p.set_defaults(run=run_comoment)

    p = sub.add_parser("pentagon", parents=[common], help="check gauge compatibility of the embedding")
    p.add_argument("input", help="pentagon job (instance, action, B, ...)")
    p.add_argument("--phi", action="append", metavar="K=VALUE", help="override a Phi coefficient")
    p.set_defaults(run=run_pentagon)

    p = sub.add_parser("tables", parents=[common], help="print Bernoulli numbers and Phi coefficients")
    p.add_argument("--count", type=int, help="largest index K (default 10)")
    p.add_argument("--text", action="store_true", help="plain text instead of JSON")
    p.set_defaults(run=run_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("max_arity", "trunc", "poly_degree", "samples"):
        val = getattr(args, name, None)
        if val is not None and val < (0 if name == "poly_degree" else 1):
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.run(args)
    except (InputError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"linfkit {args.command}: input error: {msg}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
