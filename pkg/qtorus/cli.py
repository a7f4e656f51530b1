from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from math import gcd
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from qtorus.config import c_env
from qtorus.lib.conjugator import (
    ConjugationReport,
    analyze,
    cocycle_scalar,
    conj_any,
    det_findings,
    path_model,
    trace_findings,
)
from qtorus.lib.cyclotomic import CycNum, CycParams, is_odd_prime
from qtorus.lib.cycmat import CycMatrix, PowMatrix
from qtorus.lib.logger import get_logger, set_verbosity
from qtorus.lib.rep import (
    RepParams,
    build_generators,
    central_character,
    fixed_order_bound,
    fixed_pairs,
    is_fixed_by,
    matrix_unit_witness,
)
from qtorus.lib.scan import scan
from qtorus.lib.selftest import run_selftest
from qtorus.lib.torus import S, SL2Matrix, T

log = get_logger(__name__)


class CliConfig(BaseModel):
    n: int
    q_exp: int = Field(default_factory=lambda: c_env.DEFAULT_Q_EXP)
    matrix: tuple[int, int, int, int] | None = None
    fmt: Literal["text", "json"] = "text"

    @field_validator("n")
    @classmethod
    def _odd_prime(cls, v: int) -> int:
        if not is_odd_prime(v):
            raise ValueError("n must be an odd prime")
        return v

    @field_validator("matrix", mode="before")
    @classmethod
    def _split(cls, v: Any) -> Any:
        if isinstance(v, str):
            return SL2Matrix.parse(v).entries
        return v

    @model_validator(mode="after")
    def _check(self) -> CliConfig:
        if not 1 <= self.q_exp < self.n or gcd(self.q_exp, self.n) != 1:
            raise ValueError(f"q_exp must lie in [1, {self.n - 1}] and be prime to n")
        if self.matrix is not None:
            a, b, c, d = self.matrix
            if a * d - b * c != 1:
                raise ValueError(f"ad - bc must be 1, got {a * d - b * c}")
        return self

    @property
    def params(self) -> CycParams:
        return CycParams(self.n, self.q_exp)

    @property
    def B(self) -> SL2Matrix:
        if self.matrix is None:
            raise ValueError("--mat is required")
        return SL2Matrix(*self.matrix)


def _config(args: argparse.Namespace, mat: str | None = None) -> CliConfig:
    data: dict[str, Any] = {"n": args.n, "fmt": "json" if getattr(args, "json", False) else "text"}
    q_exp = getattr(args, "q_exp", None)
    if q_exp is not None:
        data["q_exp"] = q_exp
    if mat is not None:
        data["matrix"] = mat
    return CliConfig.model_validate(data)


def _c(z: complex) -> str:
    return f"{z.real:+.9f} {'+' if z.imag >= 0 else '-'} {abs(z.imag):.9f}i"


def _q_power(x: CycNum) -> str:
    """'q^e' for +-zeta powers, '.' for zero, the polynomial otherwise."""
    if x.is_zero():
        return "."
    if x.monomial is None:
        return f"({x})"
    sign, e = x.monomial
    n = x.params.n
    return f"{'-' if sign < 0 else ''}q^{e * pow(x.params.q_exp, -1, n) % n}"


def _render_monomial(m: CycMatrix) -> str:
    cells = [[_q_power(x) for x in row] for row in m.rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  " + " ".join(f"{c:>{width}}" for c in row) for row in cells)


def _render_matrix(m: PowMatrix | CycMatrix) -> str:
    if isinstance(m, PowMatrix):
        return "C = (q^e), e =\n" + "\n".join("  " + line for line in str(m).splitlines())
    return "C =\n" + "\n".join("  " + line for line in str(m).splitlines())


def _print_json(obj: Any) -> None:
    print(json.dumps(obj, indent=2))


def render_report(r: ConjugationReport) -> str:
    lines = [
        f"B = {r.B}  n = {r.params.n}  q = zeta^{r.params.q_exp}",
        f"path: {r.path.kind}" + (f" via {r.path.factors}" if r.path.factors else ""),
        f"nu (C C* = nu I): {r.nu[0]}  [{'ok' if r.cc_star_ok else 'FAILED'}]",
        f"K_B: {'undefined' if r.K_B is None else r.K_B}  legendre: {r.legendre_K}",
        f"trace: {CycNum.from_json(CycParams(r.params.n, r.params.q_exp), r.trace_exact)}",
        f"  numeric {_c(r.trace_numeric.value)}",
    ]
    if r.trace_closed_form is not None:
        lines.append(f"  closed form {_c(r.trace_closed_form.value)}  [{'ok' if r.trace_numeric_ok else 'FAILED'}]")
    lines.append(f"  Gauss-sum identity: {_flag(r.trace_identity_ok)}")
    lines += [
        f"det: {CycNum.from_json(CycParams(r.params.n, r.params.q_exp), r.det_exact)}",
        f"  |det|^2 = nu^n: {_flag(r.det_modulus_ok)}",
        f"  phase {_c(r.det_phase_numeric.value)}  (+-1: {'yes' if r.det_sign_claim_ok else 'no'})",
        f"Tr/det^(1/n): {_c(r.ratio_numeric.value)}",
    ]
    if r.ratio_claim is not None:
        lines.append(f"  +-(K_B/n) G(1)/sqrt(n): {_c(r.ratio_claim.value)}")
    lines.append(f"conjugation: {_flag(r.conjugation_ok)} ({r.orientation})")
    return "\n".join(lines)


def _flag(v: bool | None) -> str:
    return "n/a" if v is None else "ok" if v else "FAILED"


# ------------------------------------------------------------- commands ---


def cmd_conj(cfg: CliConfig) -> int:
    c = conj_any(cfg.B, cfg.params)
    if cfg.fmt == "json":
        _print_json({
            "B": list(cfg.B.entries),
            "path": path_model(c.path).model_dump(),
            "nu": c.nu.to_json(),
            "C": c.matrix.to_json(),
        })
        return 0
    print(f"B = {cfg.B}  n = {cfg.n}  path: {c.path.kind}  nu = {c.nu}")
    print(_render_matrix(c.matrix))
    return 0


def cmd_analyze(cfg: CliConfig) -> int:
    report = analyze(cfg.B, cfg.params)
    print(report.model_dump_json(indent=2) if cfg.fmt == "json" else render_report(report))
    return 0 if report.ok else 1


def cmd_trace(cfg: CliConfig) -> int:
    tf = trace_findings(conj_any(cfg.B, cfg.params), cfg.params)
    if cfg.fmt == "json":
        print(tf.model_dump_json(indent=2))
    else:
        print(f"trace: {CycNum.from_json(cfg.params, tf.trace_exact)}")
        print(f"K_B: {'undefined' if tf.K_B is None else tf.K_B}  legendre: {tf.legendre_K}")
        print(f"Gauss-sum identity: {_flag(tf.trace_identity_ok)}")
        print(f"numeric {_c(tf.trace_numeric.value)}")
        if tf.trace_closed_form is not None:
            print(f"closed form {_c(tf.trace_closed_form.value)}  [{_flag(tf.trace_numeric_ok)}]")
    return 1 if tf.trace_identity_ok is False or tf.trace_numeric_ok is False else 0


def cmd_det(cfg: CliConfig) -> int:
    df = det_findings(conj_any(cfg.B, cfg.params), cfg.params)
    if cfg.fmt == "json":
        print(df.model_dump_json(indent=2))
    else:
        print(f"det: {CycNum.from_json(cfg.params, df.det_exact)}")
        print(f"|det|^2 = nu^n: {_flag(df.det_modulus_ok)}")
        print(f"numeric {_c(df.det_numeric.value)}")
        print(f"phase {_c(df.det_phase_numeric.value)}  (+-1: {'yes' if df.det_sign_claim_ok else 'no'})")
    return 0 if df.det_modulus_ok else 1


def cmd_rep(cfg: CliConfig, alpha: int, rho_exp: int) -> int:
    rp = RepParams(cfg.params, alpha, rho_exp)
    gens = build_generators(rp)
    witness = matrix_unit_witness(rp)
    chi_l, chi_m = central_character(rp)
    table: list[dict[str, Any]] = []
    for name, B in (("S", S), ("T", T)):
        try:
            bound: int | None = fixed_order_bound(B)
        except ValueError:
            bound = None
        table.append({
            "B": name,
            "fixed": is_fixed_by(rp, B),
            "fixed_pairs": len(fixed_pairs(B, cfg.n)),
            "order_bound": bound,
        })
    if cfg.fmt == "json":
        _print_json({
            "n": cfg.n,
            "alpha": rp.alpha,
            "rho_exp": rp.rho_exp,
            "L": gens.L.to_json(),
            "M": gens.M.to_json(),
            "witnessed_units": len(witness),
            "central_character": [chi_l.to_json(), chi_m.to_json()],
            "fixedness": table,
        })
        return 0
    print(f"rho_(a,b) with a = q^{rp.alpha}, b^(1/n) = q^{rp.rho_exp}, n = {cfg.n}")
    print("L =")
    print(_render_monomial(gens.L))
    print("M =")
    print(_render_monomial(gens.M))
    print(f"matrix units witnessed: {len(witness)}/{cfg.n * cfg.n}")
    for w in witness[: min(len(witness), 2 * cfg.n)]:
        print(f"  {w.unit} = {w.expression}")
    print(f"central character: rho(e[n,0]) = {_q_power(chi_l)}, rho(e[0,n]) = {_q_power(chi_m)}")
    print("fixedness:")
    for row in table:
        bound = "n/a" if row["order_bound"] is None else row["order_bound"]
        print(f"  {row['B']}: fixed={row['fixed']}  fixed (alpha,beta) pairs={row['fixed_pairs']}  |det(B-I)|={bound}")
    return 0


def cmd_cocycle(cfg: CliConfig, B1: SL2Matrix, B2: SL2Matrix) -> int:
    lam = cocycle_scalar(B1, B2, cfg.params)
    modulus = lam * lam.conj()
    if cfg.fmt == "json":
        _print_json({"B1": list(B1.entries), "B2": list(B2.entries), "lambda": lam.to_json(), "modulus": modulus.to_json()})
    else:
        print(f"C({B1}) C({B2}) = lambda C({B1 @ B2})")
        print(f"lambda = {lam}  ~ {_c(lam.embed())}")
        print(f"lambda conj(lambda) = {modulus}")
    return 0


def cmd_scan(cfg: CliConfig, count: int, seed: int | None) -> int:
    result = scan(cfg.params, count, seed)
    if cfg.fmt == "json":
        print(result.model_dump_json(indent=2))
        return 0 if result.ok else 1
    print(f"{'#':>4} {'B':<22} {'path':<9} {'K_B':>4} {'conj':<6} {'CC*':<6} {'trace':<6} {'det':<6}")
    for row in result.rows:
        r = row.report
        kb = "-" if r.K_B is None else str(r.K_B)
        print(
            f"{row.index:>4} {str(r.B):<22} {r.path.kind:<9} {kb:>4} {_flag(r.conjugation_ok):<6} "
            f"{_flag(r.cc_star_ok):<6} {_flag(r.trace_identity_ok):<6} {_flag(r.det_modulus_ok):<6}"
        )
    print(f"passed {result.passed}/{len(result.rows)} (n={cfg.n}, seed={result.seed})")
    return 0 if result.ok else 1


def cmd_selftest(as_json: bool) -> int:
    report = run_selftest()
    if as_json:
        print(report.model_dump_json(indent=2))
    else:
        for c in report.checks:
            print(f"n={c.n:<3} {c.name:<22} {'ok' if c.ok else 'FAILED'} {c.detail}")
    return 0 if report.ok else 1


def cmd_serve() -> int:
    from qtorus.run import main as run_http
    run_http()
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser("qtorus", description="Conjugating matrices for SL2(Z) on the noncommutative torus.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v logs INFO, -vv DEBUG to stderr")
    sub = p.add_subparsers(dest="cmd", required=True)

    def with_matrix(name: str, q_exp: bool = True) -> argparse.ArgumentParser:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--mat", required=True, help="a,b,c,d (use --mat=-1,0,0,-1 for a leading minus)")
        if q_exp:
            s.add_argument("--q-exp", type=int)
        s.add_argument("--json", action="store_true")
        return s

    with_matrix("conj")
    with_matrix("analyze")
    with_matrix("trace")
    with_matrix("det")

    s_rep = sub.add_parser("rep")
    s_rep.add_argument("--n", type=int, required=True)
    s_rep.add_argument("--alpha", type=int, default=0)
    s_rep.add_argument("--rho-exp", type=int, default=0)
    s_rep.add_argument("--q-exp", type=int)
    s_rep.add_argument("--json", action="store_true")

    s_co = sub.add_parser("cocycle")
    s_co.add_argument("--n", type=int, required=True)
    s_co.add_argument("--mat1", required=True)
    s_co.add_argument("--mat2", required=True)
    s_co.add_argument("--q-exp", type=int)
    s_co.add_argument("--json", action="store_true")

    s_scan = sub.add_parser("scan")
    s_scan.add_argument("--n", type=int, required=True)
    s_scan.add_argument("--count", type=int, required=True)
    s_scan.add_argument("--seed", type=int)
    s_scan.add_argument("--q-exp", type=int)
    s_scan.add_argument("--json", action="store_true")

    s_self = sub.add_parser("selftest")
    s_self.add_argument("--json", action="store_true")

    sub.add_parser("serve")
    return p


def _dispatch(args: argparse.Namespace) -> int:
    if args.cmd in ("conj", "analyze", "trace", "det"):
        cfg = _config(args, args.mat)
        return {"conj": cmd_conj, "analyze": cmd_analyze, "trace": cmd_trace, "det": cmd_det}[args.cmd](cfg)
    if args.cmd == "rep":
        return cmd_rep(_config(args), args.alpha, args.rho_exp)
    if args.cmd == "cocycle":
        cfg = _config(args)
        return cmd_cocycle(cfg, SL2Matrix.parse(args.mat1), SL2Matrix.parse(args.mat2))
    if args.cmd == "scan":
        if args.count < 0:
            raise ValueError("--count must be non-negative")
        return cmd_scan(_config(args), args.count, args.seed)
    if args.cmd == "selftest":
        return cmd_selftest(args.json)
    return cmd_serve()


def _message(e: ValueError) -> str:
    if isinstance(e, ValidationError):
        return "; ".join(str(err["msg"]).removeprefix("Value error, ") for err in e.errors())
    return str(e)


def run(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    set_verbosity(args.verbose)
    try:
        return _dispatch(args)
    except ValueError as e:
        print(f"error: {_message(e)}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as e:
        log.error(f"{args.cmd} failed: {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())

if __name__ == "__main__":
    main()
