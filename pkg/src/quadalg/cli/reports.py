"""One function per command; each returns a Report with data, text lines and an exit code."""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from ..complexes import ce_complex, chain_homology_dims, cohomology_dims, euler_ok, Representation
from ..errors import ConditionAFailed, NotFiniteDimensional, VerificationFailed
from ..nonhomogeneous import (
    certify_pbw,
    check_conditions,
    curved_dual,
    gr_dims_direct,
    homogeneous,
    verify_cdga,
)
from ..quadratic import (
    frobenius_check,
    gorenstein_check,
    graded_dims,
    graded_model,
    koszul_dual,
    koszul_homology,
)
from ..scalars import format_scalar
from .parser import print_presentation

FORMAT_VERSION = 1


@dataclass
class Report:
    command: str
    digest: str
    cutoff: int
    verdict: str
    exit_code: int = 0
    data: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)

    def as_dict(self):
        out = {"format": FORMAT_VERSION, "command": self.command, "input_sha256": self.digest,
               "cutoff": self.cutoff, "verdict": self.verdict}
        out.update(self.data)
        return to_json_value(out)

    def text(self):
        head = [f"{self.command}: {self.verdict}"]
        return "\n".join(head + self.lines) + "\n"


def to_json_value(x):
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): to_json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    if hasattr(x, "tolist"):
        return to_json_value(x.tolist())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def digest(*texts):
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def _sparse(vec):
    return {str(k): v for k, v in sorted(vec.items())}


def _fmt_dims(dims):
    return "[" + ", ".join(str(x) for x in dims) + "]"


# ----------------------------------------------------------------- commands

def cmd_dual(nh, args, dg):
    q = nh.quad
    dual = koszul_dual(q)
    dual_text = print_presentation(homogeneous(dual))
    rep = Report("dual", dg, args.max, "ok")
    rep.data["presentation"] = dual_text
    rep.data["labels"] = list(dual.labels)
    rep.data["relation_count"] = dual.R.dim
    if not nh.is_homogeneous:
        rep.data["note"] = "dual of the quadratic part"
    rep.lines.append(dual_text.rstrip())
    return rep


def cmd_dims(nh, args, dg):
    dims, growth = graded_dims(nh.quad, args.max)
    rep = Report("dims", dg, args.max, "ok")
    rep.data.update({"dims": dims, "growth_heuristic": growth})
    rep.lines += [f"dims: {_fmt_dims(dims)}", f"growth (heuristic): {growth}"]
    return rep


def cmd_koszul(nh, args, dg):
    k = koszul_homology(nh.quad, args.max)
    ok = k.acyclic_from(1)
    verdict = f"Koszul through degree {args.max}" if ok else "NotKoszul"
    rep = Report("koszul", dg, args.max, verdict, 0 if ok else 1)
    nz = k.nonzero_homology(1)
    rep.data.update({"koszul": ok, "square_zero": k.square_zero, "euler_ok": k.euler_ok,
                     "nonzero_homology": [[n, m, h] for (n, m), h in nz.items()],
                     "table": k.rows()})
    for m in range(args.max + 1):
        row = [k.homology[(n, m)] for n in range(m + 1)]
        rep.lines.append(f"internal degree {m}: H_n = {_fmt_dims(row)}")
    return rep


def cmd_gorenstein(nh, args, dg):
    g = gorenstein_check(nh.quad, args.max)
    code = 0 if g.verdict == "Gorenstein" else 1
    rep = Report("gorenstein", dg, args.max, g.verdict, code)
    coh = {f"{n},{s}": v for (n, s), v in sorted(g.cohomology.items()) if v}
    rep.data.update({"top_degree": g.top_degree, "koszul": g.koszul, "reasons": g.reasons,
                     "nonzero_cohomology": coh, "complete_slices": g.complete_slices,
                     "square_zero": g.square_zero})
    rep.lines.append(f"top degree of dual: {g.top_degree}")
    rep.lines += [f"reason: {r}" for r in g.reasons]
    return rep


def cmd_pbw(nh, args, dg):
    p = certify_pbw(nh, max(args.max, 3))
    dims = gr = None
    stab = None
    if p.conditions_hold:
        n_max = min(args.max, 4)
        gr, stab = gr_dims_direct(nh, n_max, args.margin)
        dims = list(graded_model(nh.quad, n_max).dims)
    rep = Report("pbw", dg, max(args.max, 3), p.verdict, 0 if p.verdict == "CertifiedPBW" else 1)
    rep.data.update({
        "conditions": {"a": p.cond_a, "b": p.cond_b, "c": p.cond_c},
        "w3_dim": p.w3_dim,
        "witnesses": {k: {kk: _sparse(vv) if isinstance(vv, dict) else vv for kk, vv in w.items()}
                      for k, w in p.witnesses.items()},
        "koszul23": {str(m): list(v) for m, v in p.koszul23.items()},
        "note": p.note,
        "gr_heuristic": None if gr is None else {"gr_dims": gr, "quad_dims": dims,
                                                 "stabilized": stab, "margin": args.margin},
    })
    rep.lines.append(f"conditions (a), (b), (c): {p.cond_a}, {p.cond_b}, {p.cond_c}")
    if p.note:
        rep.lines.append(p.note)
    if gr is not None:
        rep.lines.append(f"gr dims (heuristic, margin {args.margin}): {_fmt_dims(gr)}"
                         f" vs quadratic part {_fmt_dims(dims)}; stabilized: {stab}")
    return rep


def cmd_cdga(nh, args, dg):
    cutoff = max(args.max, 3)
    try:
        c = curved_dual(nh, cutoff)
    except ConditionAFailed as e:
        rep = Report("cdga", dg, cutoff, "ConditionAFailed", 1)
        rep.data["witness"] = _sparse(e.witness)
        rep.lines.append(str(e))
        return rep
    v = verify_cdga(c, cutoff, strict=False)
    verdict = "CurvedDGA verified" if v.ok else "VerificationFailed"
    rep = Report("cdga", dg, cutoff, verdict, 0 if v.ok else 1)
    dgen = c.differential_on_generators()
    F = c.model.format(c.F, 2) if c.model.cutoff >= 2 else "0"
    rep.data.update({
        "differential": dict(zip(c.model.presentation.labels, dgen)),
        "curvature": F, "leibniz": v.leibniz_ok, "curvature_identity": v.curvature_ok,
        "bianchi": v.bianchi_ok, "checked_through": v.max_degree,
        "failures": [{"check": f["check"], "degree": f["degree"],
                      "residual": _sparse(f["residual"])} for f in v.failures[:5]],
    })
    for lab, val in zip(c.model.presentation.labels, dgen):
        rep.lines.append(f"d({lab}) = {val}")
    rep.lines.append(f"F = {F}")
    rep.lines.append(f"Leibniz {v.leibniz_ok}, d^2 = [F, .] {v.curvature_ok}, dF = 0 {v.bianchi_ok}")
    return rep


def cmd_frobenius(nh, args, dg):
    q = nh.quad if args.primal else koszul_dual(nh.quad)
    g = graded_model(q, args.max)
    target = "A" if args.primal else "dual"
    try:
        f = frobenius_check(g)
    except NotFiniteDimensional as e:
        rep = Report("frobenius", dg, args.max, "NotFiniteDimensional", 1)
        rep.data.update({"algebra": target, "dims": list(g.dims)})
        rep.lines.append(str(e))
        return rep
    except VerificationFailed as e:
        rep = Report("frobenius", dg, args.max, "VerificationFailed", 3)
        rep.lines.append(str(e))
        return rep
    verdict = "Frobenius" if f.is_frobenius else "NotFrobenius"
    rep = Report("frobenius", dg, args.max, verdict, 0 if f.is_frobenius else 1)
    rep.data.update({"algebra": target, "top_degree": f.top_degree, "dims": list(g.dims),
                     "reason": f.reason})
    if f.is_frobenius:
        sig = f.sigma_on_generators()
        images = [g.format({i: c for i, c in enumerate(col) if c}, 1)
                  for col in zip(*sig.tolist())]
        rep.data["nakayama"] = dict(zip(q.labels, images))
        for lab, img in zip(q.labels, images):
            rep.lines.append(f"sigma({lab}) = {img}")
    else:
        rep.lines.append(f.reason)
    return rep


def classify(nh, cutoff):
    """Return (label, details) following the prealgebra hierarchy."""
    det = {}
    cond = check_conditions(nh)
    det["conditions"] = {"a": cond.cond_a, "b": cond.cond_b, "c": cond.cond_c}
    det["quadratic_linear"] = nh.is_quadratic_linear
    if not nh.is_quadratic_linear or not cond.conditions_hold:
        why = "constant terms present" if not nh.is_quadratic_linear else "conditions fail"
        return f"not a prealgebra ({why})", det
    g = gorenstein_check(nh.quad, cutoff)
    det["koszul"] = g.koszul
    det["gorenstein"] = g.verdict
    B = graded_model(koszul_dual(nh.quad), cutoff)
    try:
        frob = frobenius_check(B).is_frobenius
    except NotFiniteDimensional:
        frob = False
    det["dual_frobenius"] = frob
    pbw = certify_pbw(nh, max(cutoff, 3)).verdict
    det["pbw"] = pbw
    if g.verdict == "Gorenstein" and pbw == "CertifiedPBW":
        return f"Lie prealgebra (certified to degree {cutoff})", det
    base = "weak Lie prealgebra" if frob else "prealgebra"
    parts = [base, "quadratic-linear Koszul" if g.koszul else f"not Koszul (degree <= {cutoff})"]
    if not g.koszul:
        parts.append("NOT Lie prealgebra (fails Koszul)")
    elif g.verdict == "NotGorenstein":
        parts.append("NOT Lie prealgebra (fails Gorenstein)")
    elif pbw != "CertifiedPBW":
        parts.append("Lie prealgebra status inconclusive (PBW not certified)")
    else:
        parts.append("Lie prealgebra status inconclusive (Gorenstein check inconclusive)")
    return ", ".join(parts), det


def cmd_classify(nh, args, dg):
    label, det = classify(nh, args.max)
    code = 1 if label.startswith("not a prealgebra") else 0
    rep = Report("classify", dg, args.max, label, code)
    rep.data["details"] = det
    for k in sorted(det):
        rep.lines.append(f"{k}: {det[k]}")
    return rep


def cmd_cohomology(nh, args, dg, rep_obj=None):
    if rep_obj is None:
        rep_obj = Representation.trivial(nh.dim_e)
    cx = ce_complex(nh, rep_obj, args.max)
    h = cohomology_dims(cx)
    hc = chain_homology_dims(cx)
    eu = euler_ok(cx, h)
    ok = cx.square_zero and cx.module_map_ok and h == hc and eu is not False
    rep = Report("cohomology", dg, args.max, "ok" if ok else "InvariantViolation", 0 if ok else 3)
    rep.data.update({"cohomology": h, "chain_homology": hc, "truncated": cx.truncated,
                     "complex_dims": cx.dims, "square_zero": cx.square_zero,
                     "module_map": cx.module_map_ok, "euler_ok": eu, "side": rep_obj.side,
                     "label": "H of the generalized CE complex", "notes": cx.notes})
    rep.lines.append(f"H^n of the generalized CE complex: {_fmt_dims(h)}"
                     + (" (truncated)" if cx.truncated else ""))
    rep.lines.append(f"dual chain complex H_n: {_fmt_dims(hc)}")
    return rep


COMMANDS = {
    "dual": cmd_dual,
    "dims": cmd_dims,
    "koszul": cmd_koszul,
    "gorenstein": cmd_gorenstein,
    "pbw": cmd_pbw,
    "cdga": cmd_cdga,
    "frobenius": cmd_frobenius,
    "classify": cmd_classify,
    "cohomology": cmd_cohomology,
}
